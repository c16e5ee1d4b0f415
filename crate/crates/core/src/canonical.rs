//! Isomorphism canonicalization by full permutation scan.

use itertools::Itertools;

use crate::error::Error;
use crate::quasigroup::{Element, Quasigroup};

/// The n! scan is kept honest by refusing orders where it stops being cheap.
pub const MAX_CANONICAL_ORDER: usize = 8;

/// Lexicographically least flattened table over all relabelings of a
/// quasigroup. Two quasigroups get the same form iff they are isomorphic.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct CanonicalForm {
    order: usize,
    bytes: Vec<Element>,
}

impl CanonicalForm {
    pub fn order(&self) -> usize {
        self.order
    }

    /// Flattened row-major canonical multiplication table.
    pub fn bytes(&self) -> &[Element] {
        &self.bytes
    }

    /// The canonical representative as a quasigroup.
    pub fn to_quasigroup(&self) -> Quasigroup {
        Quasigroup::from_mul_flat_unchecked(self.order, self.bytes.clone())
    }
}

/// Applies the permutation π to rows, columns, and symbols at once:
/// result(π(x), π(y)) = π(q(x, y)).
pub fn relabel(q: &Quasigroup, perm: &[Element]) -> Quasigroup {
    let n = q.order();
    assert_eq!(perm.len(), n, "permutation length must match order");
    {
        let mut seen = vec![false; n];
        for &p in perm {
            assert!((p as usize) < n && !seen[p as usize], "not a permutation: {perm:?}");
            seen[p as usize] = true;
        }
    }
    let mut mul = vec![0 as Element; n * n];
    for x in 0..n {
        for y in 0..n {
            mul[perm[x] as usize * n + perm[y] as usize] = perm[q.mul(x as Element, y as Element) as usize];
        }
    }
    Quasigroup::from_mul_flat_unchecked(n, mul)
}

pub fn canonical_form(q: &Quasigroup) -> Result<CanonicalForm, Error> {
    let n = q.order();
    if n > MAX_CANONICAL_ORDER {
        return Err(Error::OrderTooLarge { order: n, max: MAX_CANONICAL_ORDER });
    }
    let mut best: Option<Vec<Element>> = None;
    let mut cand = vec![0 as Element; n * n];
    for perm in (0..n as Element).permutations(n) {
        for x in 0..n {
            for y in 0..n {
                cand[perm[x] as usize * n + perm[y] as usize] =
                    perm[q.mul(x as Element, y as Element) as usize];
            }
        }
        match &best {
            Some(b) if *b <= cand => {}
            _ => best = Some(cand.clone()),
        }
    }
    Ok(CanonicalForm { order: n, bytes: best.expect("order is at least 1") })
}
