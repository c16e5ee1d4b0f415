//! Latin-square enumeration and seeded random generation.

use std::ops::ControlFlow;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::Error;
use crate::quasigroup::{Element, Quasigroup, MAX_ORDER};

/// Exhaustive enumeration refuses orders above this without the unbounded
/// entry point; order 6 already means 812 million squares.
pub const MAX_EXHAUSTIVE_ORDER: usize = 6;

/// Visits every n×n Latin square exactly once, in lexicographic order of the
/// flattened table, and returns how many were visited. The visitor can stop
/// the walk early by returning `ControlFlow::Break`.
pub fn enumerate_latin_squares(
    n: usize,
    visitor: impl FnMut(&Quasigroup) -> ControlFlow<()>,
) -> Result<u64, Error> {
    if n > MAX_EXHAUSTIVE_ORDER {
        return Err(Error::OrderTooLarge { order: n, max: MAX_EXHAUSTIVE_ORDER });
    }
    enumerate_latin_squares_unbounded(n, visitor)
}

/// Like `enumerate_latin_squares` but with only the representation limit as
/// a guard. Callers own the cost estimate.
pub fn enumerate_latin_squares_unbounded(
    n: usize,
    mut visitor: impl FnMut(&Quasigroup) -> ControlFlow<()>,
) -> Result<u64, Error> {
    if n == 0 {
        return Err(Error::EmptyTable);
    }
    if n > MAX_ORDER {
        return Err(Error::OrderTooLarge { order: n, max: MAX_ORDER });
    }
    let full: u32 = (1 << n) - 1;
    let mut grid = vec![0 as Element; n * n];
    let mut row_used = vec![0u32; n];
    let mut col_used = vec![0u32; n];
    let mut count = 0u64;

    // Backtracking over cells in row-major order. `cands[i]` holds the
    // symbols still untried at cell i among those free in its row and column.
    let mut cands = vec![0u32; n * n];
    let mut i = 0usize;
    cands[0] = free_at(0, n, &row_used, &col_used, full);
    loop {
        let (r, c) = (i / n, i % n);
        let avail = cands[i];
        if avail == 0 {
            // exhausted this cell: unwind to the previous one
            if i == 0 {
                return Ok(count);
            }
            i -= 1;
            let (pr, pc) = (i / n, i % n);
            let v = grid[i] as u32;
            row_used[pr] &= !(1 << v);
            col_used[pc] &= !(1 << v);
            continue;
        }
        let v = avail.trailing_zeros();
        cands[i] = avail & (avail - 1);
        grid[i] = v as Element;
        row_used[r] |= 1 << v;
        col_used[c] |= 1 << v;
        if i + 1 == n * n {
            count += 1;
            let q = Quasigroup::from_mul_flat_unchecked(n, grid.clone());
            if visitor(&q).is_break() {
                return Ok(count);
            }
            row_used[r] &= !(1 << v);
            col_used[c] &= !(1 << v);
        } else {
            i += 1;
            cands[i] = free_at(i, n, &row_used, &col_used, full);
        }
    }
}

#[inline]
fn free_at(i: usize, n: usize, row_used: &[u32], col_used: &[u32], full: u32) -> u32 {
    full & !(row_used[i / n] | col_used[i % n])
}

pub fn count_latin_squares(n: usize) -> Result<u64, Error> {
    enumerate_latin_squares(n, |_| ControlFlow::Continue(()))
}

/// A Latin square built by backtracking with seed-shuffled candidate order.
/// Deterministic per (n, seed); the distribution over squares is not
/// uniform.
pub fn random_quasigroup(n: usize, seed: u64) -> Result<Quasigroup, Error> {
    if n == 0 {
        return Err(Error::EmptyTable);
    }
    if n > MAX_ORDER {
        return Err(Error::OrderTooLarge { order: n, max: MAX_ORDER });
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let full: u32 = (1 << n) - 1;
    let mut grid = vec![0 as Element; n * n];
    let mut row_used = vec![0u32; n];
    let mut col_used = vec![0u32; n];
    // per-cell shuffled candidate queues, consumed on backtrack
    let mut queues: Vec<Vec<Element>> = vec![Vec::new(); n * n];
    let mut i = 0usize;
    queues[0] = shuffled_candidates(full, &mut rng);
    loop {
        let (r, c) = (i / n, i % n);
        match queues[i].pop() {
            None => {
                assert!(i > 0, "backtracked past the first cell; no square exists?");
                i -= 1;
                let v = grid[i] as u32;
                row_used[i / n] &= !(1 << v);
                col_used[i % n] &= !(1 << v);
            }
            Some(v) => {
                grid[i] = v;
                row_used[r] |= 1 << v;
                col_used[c] |= 1 << v;
                if i + 1 == n * n {
                    return Ok(Quasigroup::from_mul_flat_unchecked(n, grid));
                }
                i += 1;
                let avail = free_at(i, n, &row_used, &col_used, full);
                queues[i] = shuffled_candidates(avail, &mut rng);
            }
        }
    }
}

fn shuffled_candidates(mask: u32, rng: &mut ChaCha8Rng) -> Vec<Element> {
    let mut out: Vec<Element> = (0..32).filter(|b| mask & (1 << b) != 0).map(|b| b as Element).collect();
    for i in (1..out.len()).rev() {
        out.swap(i, rng.gen_range(0..=i));
    }
    out
}
