//! Finite quasigroups as dense Cayley tables with eagerly derived divisions.

use std::fmt;
use std::str::FromStr;

use crate::error::{Axis, Error};

/// Elements are 0-based indices into the Cayley table.
pub type Element = u8;

/// Widest order the dense kernels accept (bitmask and u8 limits are far
/// higher, but nothing here is meant for big tables).
pub const MAX_ORDER: usize = 16;

/// A quasigroup (Q, ·, \, /) on {0, .., n-1}. The multiplication table is a
/// Latin square; `ldiv[x][y]` is the unique z with x·z = y and `rdiv[x][y]`
/// the unique z with z·y = x. All three tables are stored row-major.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Quasigroup {
    order: usize,
    mul: Vec<Element>,
    ldiv: Vec<Element>,
    rdiv: Vec<Element>,
}

impl fmt::Debug for Quasigroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Quasigroup(order {}, mul {:?})", self.order, self.rows())
    }
}

/// Selector for the three parastrophe constructions.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ParastropheKind {
    /// Multiplication becomes \.
    Left,
    /// Multiplication becomes /.
    Right,
    /// Multiplication becomes x·y ↦ y·x.
    Opposite,
}

impl FromStr for ParastropheKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Error> {
        match s {
            "l" => Ok(ParastropheKind::Left),
            "r" => Ok(ParastropheKind::Right),
            "opp" => Ok(ParastropheKind::Opposite),
            _ => Err(Error::UnknownParastrophe { name: s.to_string() }),
        }
    }
}

impl fmt::Display for ParastropheKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            ParastropheKind::Left => "l",
            ParastropheKind::Right => "r",
            ParastropheKind::Opposite => "opp",
        })
    }
}

/// A total map Q → Q, stored as its image vector.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ElementMap {
    image: Vec<Element>,
}

impl ElementMap {
    pub fn new(image: Vec<Element>) -> Self {
        ElementMap { image }
    }

    pub fn get(&self, x: Element) -> Element {
        self.image[x as usize]
    }

    pub fn len(&self) -> usize {
        self.image.len()
    }

    pub fn is_empty(&self) -> bool {
        self.image.is_empty()
    }

    pub fn as_slice(&self) -> &[Element] {
        &self.image
    }

    /// m ∘ other, i.e. x ↦ m(other(x)).
    pub fn compose(&self, other: &ElementMap) -> ElementMap {
        ElementMap::new(other.image.iter().map(|&x| self.get(x)).collect())
    }

    pub fn identity(n: usize) -> ElementMap {
        ElementMap::new((0..n as Element).collect())
    }
}

impl Quasigroup {
    /// Builds a quasigroup from a multiplication table given as rows.
    pub fn from_mul_table(rows: &[Vec<usize>]) -> Result<Self, Error> {
        let n = rows.len();
        if n == 0 {
            return Err(Error::EmptyTable);
        }
        if n > MAX_ORDER {
            return Err(Error::OrderTooLarge { order: n, max: MAX_ORDER });
        }
        let mut mul = Vec::with_capacity(n * n);
        for (i, row) in rows.iter().enumerate() {
            if row.len() != n {
                return Err(Error::NotSquare { row: i, expected: n, found: row.len() });
            }
            for (j, &v) in row.iter().enumerate() {
                if v >= n {
                    return Err(Error::BadEntry { row: i, col: j, value: v, order: n });
                }
                mul.push(v as Element);
            }
        }
        Self::from_mul_flat(n, mul)
    }

    /// Builds a quasigroup from a flat row-major multiplication table.
    pub fn from_mul_flat(order: usize, mul: Vec<Element>) -> Result<Self, Error> {
        if order == 0 {
            return Err(Error::EmptyTable);
        }
        if order > MAX_ORDER {
            return Err(Error::OrderTooLarge { order, max: MAX_ORDER });
        }
        if mul.len() != order * order {
            return Err(Error::NotSquare {
                row: mul.len() / order,
                expected: order,
                found: mul.len() % order,
            });
        }
        for (i, &v) in mul.iter().enumerate() {
            if v as usize >= order {
                return Err(Error::BadEntry {
                    row: i / order,
                    col: i % order,
                    value: v as usize,
                    order,
                });
            }
        }
        check_latin(order, &mul)?;
        Ok(Self::from_mul_flat_unchecked(order, mul))
    }

    /// Construction path for callers that guarantee the Latin property.
    pub(crate) fn from_mul_flat_unchecked(order: usize, mul: Vec<Element>) -> Self {
        debug_assert!(check_latin(order, &mul).is_ok());
        let n = order;
        let mut ldiv = vec![0; n * n];
        let mut rdiv = vec![0; n * n];
        for x in 0..n {
            for y in 0..n {
                let p = mul[x * n + y] as usize;
                // x·y = p  ⇒  x\p = y and p/y = x
                ldiv[x * n + p] = y as Element;
                rdiv[p * n + y] = x as Element;
            }
        }
        Quasigroup { order, mul, ldiv, rdiv }
    }

    /// The cyclic group Z_n as a Cayley table.
    pub fn cyclic(n: usize) -> Self {
        assert!(n >= 1 && n <= MAX_ORDER);
        let mut mul = Vec::with_capacity(n * n);
        for x in 0..n {
            for y in 0..n {
                mul.push(((x + y) % n) as Element);
            }
        }
        Self::from_mul_flat_unchecked(n, mul)
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn mul(&self, x: Element, y: Element) -> Element {
        self.mul[x as usize * self.order + y as usize]
    }

    /// x\y: the unique z with x·z = y.
    pub fn ldiv(&self, x: Element, y: Element) -> Element {
        self.ldiv[x as usize * self.order + y as usize]
    }

    /// x/y: the unique z with z·y = x.
    pub fn rdiv(&self, x: Element, y: Element) -> Element {
        self.rdiv[x as usize * self.order + y as usize]
    }

    /// Flat row-major multiplication table.
    pub fn mul_flat(&self) -> &[Element] {
        &self.mul
    }

    /// Multiplication table as rows of usize (convenient for I/O).
    pub fn rows(&self) -> Vec<Vec<usize>> {
        (0..self.order)
            .map(|x| self.mul[x * self.order..(x + 1) * self.order].iter().map(|&v| v as usize).collect())
            .collect()
    }

    /// e(x) = x\x, the local right unit of x.
    pub fn e_map(&self) -> ElementMap {
        ElementMap::new((0..self.order as Element).map(|x| self.ldiv(x, x)).collect())
    }

    /// f(x) = x/x, the local left unit of x.
    pub fn f_map(&self) -> ElementMap {
        ElementMap::new((0..self.order as Element).map(|x| self.rdiv(x, x)).collect())
    }

    /// The parastrophe whose multiplication is \ (Left), / (Right), or the
    /// opposite of · (Opposite). Division tables are rebuilt from the new
    /// multiplication, never shuffled from the old ones.
    pub fn parastrophe(&self, kind: ParastropheKind) -> Quasigroup {
        let n = self.order;
        let mut mul = Vec::with_capacity(n * n);
        for x in 0..n as Element {
            for y in 0..n as Element {
                mul.push(match kind {
                    ParastropheKind::Left => self.ldiv(x, y),
                    ParastropheKind::Right => self.rdiv(x, y),
                    ParastropheKind::Opposite => self.mul(y, x),
                });
            }
        }
        Self::from_mul_flat_unchecked(n, mul)
    }

    /// Least subset containing `generators` and closed under ·, \, /,
    /// returned sorted.
    pub fn generated_subquasigroup(&self, generators: &[Element]) -> Result<Vec<Element>, Error> {
        if generators.is_empty() {
            return Err(Error::EmptyGenerators);
        }
        let n = self.order;
        let mut member = vec![false; n];
        let mut items: Vec<Element> = Vec::with_capacity(n);
        for &g in generators {
            assert!((g as usize) < n, "generator out of range");
            if !member[g as usize] {
                member[g as usize] = true;
                items.push(g);
            }
        }
        // worklist over pairs: each newly added element is paired with
        // everything already present, in both argument orders
        let mut next = 0;
        while next < items.len() {
            let a = items[next];
            next += 1;
            let push = |v: Element, member: &mut Vec<bool>, items: &mut Vec<Element>| {
                if !member[v as usize] {
                    member[v as usize] = true;
                    items.push(v);
                }
            };
            for i in 0..items.len() {
                let b = items[i];
                for (u, w) in [(a, b), (b, a)] {
                    push(self.mul(u, w), &mut member, &mut items);
                    push(self.ldiv(u, w), &mut member, &mut items);
                    push(self.rdiv(u, w), &mut member, &mut items);
                }
            }
        }
        items.sort_unstable();
        Ok(items)
    }
}

fn check_latin(n: usize, mul: &[Element]) -> Result<(), Error> {
    for i in 0..n {
        let mut row_seen = 0u32;
        let mut col_seen = 0u32;
        for j in 0..n {
            let r = mul[i * n + j];
            if row_seen & (1 << r) != 0 {
                return Err(Error::NotLatin { axis: Axis::Row, index: i, symbol: r });
            }
            row_seen |= 1 << r;
            let c = mul[j * n + i];
            if col_seen & (1 << c) != 0 {
                return Err(Error::NotLatin { axis: Axis::Column, index: i, symbol: c });
            }
            col_seen |= 1 << c;
        }
    }
    Ok(())
}

/// First pair (x, y) in row-major order where m(x·y) ≠ m(x)·m(y), or None
/// when `m` is an endomorphism.
pub fn endomorphism_witness(q: &Quasigroup, m: &ElementMap) -> Option<(Element, Element)> {
    assert_eq!(m.len(), q.order(), "map length must match order");
    for x in 0..q.order() as Element {
        for y in 0..q.order() as Element {
            if m.get(q.mul(x, y)) != q.mul(m.get(x), m.get(y)) {
                return Some((x, y));
            }
        }
    }
    None
}

pub fn is_endomorphism(q: &Quasigroup, m: &ElementMap) -> bool {
    endomorphism_witness(q, m).is_none()
}

/// True iff f(e(x)) = e(f(x)) for every x.
pub fn maps_commute_ef(q: &Quasigroup) -> bool {
    let e = q.e_map();
    let f = q.f_map();
    (0..q.order() as Element).all(|x| f.get(e.get(x)) == e.get(f.get(x)))
}
