//! Naive reference implementations used to cross-check the production code.
//!
//! Everything here favors obviousness over speed: exhaustive grid filters,
//! map-based term evaluation, closure by repeated rescanning. None of it
//! shares kernels with the library.

#![allow(dead_code)]

use std::collections::BTreeMap;
use std::ops::ControlFlow;

use qg::{BinOp, Element, Identity, Quasigroup, Term};
use rand::Rng;

/// Counts Latin squares of order `n` by filtering every one of the n^(n*n)
/// grids. Only feasible for n <= 3.
pub fn latin_count_all_grids(n: usize) -> u64 {
    assert!(n >= 1 && n <= 3);
    let cells = n * n;
    let mut count = 0u64;
    let total = (n as u64).pow(cells as u32);
    let mut grid = vec![0u8; cells];
    for code in 0..total {
        let mut c = code;
        for cell in grid.iter_mut() {
            *cell = (c % n as u64) as u8;
            c /= n as u64;
        }
        if grid_is_latin(n, &grid) {
            count += 1;
        }
    }
    count
}

/// Counts Latin squares of order `n` by assembling rows from full-row
/// permutations and filtering on column validity. `fix_first_row` restricts
/// to squares whose first row is 0..n.
pub fn latin_count_perm_rows(n: usize, fix_first_row: bool) -> u64 {
    let perms = permutations(n);
    let mut rows: Vec<usize> = vec![0; n];
    let mut count = 0u64;
    loop {
        let ok = if fix_first_row { perms[rows[0]] == (0..n as u8).collect::<Vec<_>>() } else { true };
        if ok {
            let mut grid = Vec::with_capacity(n * n);
            for &r in &rows {
                grid.extend_from_slice(&perms[r]);
            }
            if grid_is_latin(n, &grid) {
                count += 1;
            }
        }
        // odometer over row choices
        let mut i = 0;
        loop {
            if i == n {
                return count;
            }
            rows[i] += 1;
            if rows[i] < perms.len() {
                break;
            }
            rows[i] = 0;
            i += 1;
        }
    }
}

pub fn grid_is_latin(n: usize, grid: &[u8]) -> bool {
    for i in 0..n {
        let mut row_seen = vec![false; n];
        let mut col_seen = vec![false; n];
        for j in 0..n {
            let r = grid[i * n + j] as usize;
            let c = grid[j * n + i] as usize;
            if r >= n || c >= n || row_seen[r] || col_seen[c] {
                return false;
            }
            row_seen[r] = true;
            col_seen[c] = true;
        }
    }
    true
}

/// All permutations of 0..n in lexicographic order.
pub fn permutations(n: usize) -> Vec<Vec<u8>> {
    let mut out = Vec::new();
    let mut cur = Vec::new();
    let mut used = vec![false; n];
    fn rec(n: usize, cur: &mut Vec<u8>, used: &mut Vec<bool>, out: &mut Vec<Vec<u8>>) {
        if cur.len() == n {
            out.push(cur.clone());
            return;
        }
        for v in 0..n {
            if !used[v] {
                used[v] = true;
                cur.push(v as u8);
                rec(n, cur, used, out);
                cur.pop();
                used[v] = false;
            }
        }
    }
    rec(n, &mut cur, &mut used, &mut out);
    out
}

/// Isomorphism test by trying every relabeling permutation directly on the
/// multiplication tables.
pub fn naive_is_isomorphic(a: &Quasigroup, b: &Quasigroup) -> bool {
    if a.order() != b.order() {
        return false;
    }
    let n = a.order();
    for perm in permutations(n) {
        let mut ok = true;
        'outer: for x in 0..n as u8 {
            for y in 0..n as u8 {
                let lhs = perm[a.mul(x, y) as usize];
                let rhs = b.mul(perm[x as usize], perm[y as usize]);
                if lhs != rhs {
                    ok = false;
                    break 'outer;
                }
            }
        }
        if ok {
            return true;
        }
    }
    false
}

pub fn naive_eval(q: &Quasigroup, t: &Term, asg: &BTreeMap<String, Element>) -> Element {
    match t {
        Term::Var(v) => *asg.get(v).expect("unbound variable in naive_eval"),
        Term::Bin { op, lhs, rhs } => {
            let a = naive_eval(q, lhs, asg);
            let b = naive_eval(q, rhs, asg);
            match op {
                BinOp::Mul => q.mul(a, b),
                BinOp::LDiv => q.ldiv(a, b),
                BinOp::RDiv => q.rdiv(a, b),
            }
        }
    }
}

/// First failing assignment of `id` on `q` in lexicographic order over the
/// identity's variables (first-occurrence order), or None if the identity
/// holds. `descending` flips the iteration order, which must not change
/// whether a witness exists.
pub fn naive_counterexample(
    q: &Quasigroup,
    id: &Identity,
    descending: bool,
) -> Option<(BTreeMap<String, Element>, Element, Element)> {
    let vars = id.vars().to_vec();
    let n = q.order() as u64;
    let total = n.pow(vars.len() as u32);
    for step in 0..total {
        let step = if descending { total - 1 - step } else { step };
        // digit i of `step` in base n, most significant digit = first variable
        let mut asg = BTreeMap::new();
        let mut rem = step;
        for i in (0..vars.len()).rev() {
            asg.insert(vars[i].clone(), (rem % n) as Element);
            rem /= n;
        }
        let l = naive_eval(q, id.lhs(), &asg);
        let r = naive_eval(q, id.rhs(), &asg);
        if l != r {
            return Some((asg, l, r));
        }
    }
    None
}

pub fn naive_holds(q: &Quasigroup, id: &Identity) -> bool {
    naive_counterexample(q, id, false).is_none()
}

/// Subquasigroup closure by rescanning all pairs until nothing new appears.
pub fn naive_closure(q: &Quasigroup, gens: &[Element]) -> Vec<Element> {
    let mut member = vec![false; q.order()];
    for &g in gens {
        member[g as usize] = true;
    }
    loop {
        let mut grew = false;
        let present: Vec<Element> =
            (0..q.order() as u8).filter(|&x| member[x as usize]).collect();
        for &a in &present {
            for &b in &present {
                for v in [q.mul(a, b), q.ldiv(a, b), q.rdiv(a, b)] {
                    if !member[v as usize] {
                        member[v as usize] = true;
                        grew = true;
                    }
                }
            }
        }
        if !grew {
            break;
        }
    }
    (0..q.order() as u8).filter(|&x| member[x as usize]).collect()
}

/// Trimediality the slow way: every ordered generator triple, closure
/// recomputed from scratch, mediality checked over all quadruples.
pub fn naive_is_trimedial(q: &Quasigroup) -> bool {
    let n = q.order() as u8;
    for a in 0..n {
        for b in 0..n {
            for c in 0..n {
                let sub = naive_closure(q, &[a, b, c]);
                for &x in &sub {
                    for &y in &sub {
                        for &u in &sub {
                            for &v in &sub {
                                let lhs = q.mul(q.mul(x, y), q.mul(u, v));
                                let rhs = q.mul(q.mul(x, u), q.mul(y, v));
                                if lhs != rhs {
                                    return false;
                                }
                            }
                        }
                    }
                }
            }
        }
    }
    true
}

/// Symmetric group on three points as a Cayley table; element i is the i-th
/// permutation of 0..3 in lexicographic order, product is composition.
pub fn s3() -> Quasigroup {
    let perms = permutations(3);
    let n = perms.len();
    let mut rows = vec![vec![0usize; n]; n];
    for (i, p) in perms.iter().enumerate() {
        for (j, r) in perms.iter().enumerate() {
            // (p after r)(x) = p[r[x]]
            let composed: Vec<u8> = (0..3).map(|x| p[r[x] as usize]).collect();
            rows[i][j] = perms.iter().position(|s| *s == composed).unwrap();
        }
    }
    Quasigroup::from_mul_table(&rows).unwrap()
}

/// x*y = x - y mod n.
pub fn subtraction_table(n: usize) -> Quasigroup {
    let rows: Vec<Vec<usize>> = (0..n)
        .map(|x| (0..n).map(|y| (n + x - y) % n).collect())
        .collect();
    Quasigroup::from_mul_table(&rows).unwrap()
}

pub fn random_term(rng: &mut impl Rng, depth: usize, vars: &[&str]) -> Term {
    if depth == 0 || rng.gen_range(0..4) == 0 {
        return Term::var(vars[rng.gen_range(0..vars.len())]);
    }
    let op = match rng.gen_range(0..3) {
        0 => BinOp::Mul,
        1 => BinOp::LDiv,
        _ => BinOp::RDiv,
    };
    Term::bin(
        op,
        random_term(rng, depth - 1, vars),
        random_term(rng, depth - 1, vars),
    )
}

pub fn random_identity(rng: &mut impl Rng, depth: usize, vars: &[&str]) -> Identity {
    Identity::new(random_term(rng, depth, vars), random_term(rng, depth, vars))
}

/// Collects every Latin square of the given order as a quasigroup.
pub fn all_models(order: usize) -> Vec<Quasigroup> {
    let mut out = Vec::new();
    qg::enumerate_latin_squares(order, |q| {
        out.push(q.clone());
        ControlFlow::Continue(())
    })
    .unwrap();
    out
}
