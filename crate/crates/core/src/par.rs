//! Deterministic fork-join helper: results come back in input order no
//! matter how many workers run.

pub(crate) fn par_map<T, R, F>(items: &[T], workers: usize, f: F) -> Vec<R>
where
    T: Sync,
    R: Send,
    F: Fn(&T) -> R + Sync,
{
    if workers <= 1 || items.len() < 2 {
        return items.iter().map(&f).collect();
    }
    let chunk = items.len().div_ceil(workers);
    let mut results: Vec<Option<R>> = Vec::with_capacity(items.len());
    results.resize_with(items.len(), || None);
    std::thread::scope(|scope| {
        for (input, output) in items.chunks(chunk).zip(results.chunks_mut(chunk)) {
            scope.spawn(|| {
                for (item, slot) in input.iter().zip(output.iter_mut()) {
                    *slot = Some(f(item));
                }
            });
        }
    });
    results.into_iter().map(|r| r.expect("worker filled every slot")).collect()
}
