//! Terms over {*, \, /}, identities, and the brute-force universal checker.

use std::collections::BTreeMap;

use crate::error::Error;
use crate::quasigroup::{Element, Quasigroup};
use crate::registry::IdentityKey;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BinOp {
    Mul,
    LDiv,
    RDiv,
}

impl BinOp {
    pub fn symbol(self) -> char {
        match self {
            BinOp::Mul => '*',
            BinOp::LDiv => '\\',
            BinOp::RDiv => '/',
        }
    }

    pub fn apply(self, q: &Quasigroup, a: Element, b: Element) -> Element {
        match self {
            BinOp::Mul => q.mul(a, b),
            BinOp::LDiv => q.ldiv(a, b),
            BinOp::RDiv => q.rdiv(a, b),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Term {
    Var(String),
    Bin { op: BinOp, lhs: Box<Term>, rhs: Box<Term> },
}

impl Term {
    pub fn var(name: impl Into<String>) -> Term {
        Term::Var(name.into())
    }

    pub fn bin(op: BinOp, lhs: Term, rhs: Term) -> Term {
        Term::Bin { op, lhs: Box::new(lhs), rhs: Box::new(rhs) }
    }

    fn collect_vars(&self, out: &mut Vec<String>) {
        match self {
            Term::Var(v) => {
                if !out.iter().any(|x| x == v) {
                    out.push(v.clone());
                }
            }
            Term::Bin { lhs, rhs, .. } => {
                lhs.collect_vars(out);
                rhs.collect_vars(out);
            }
        }
    }
}

/// A universally quantified equation lhs = rhs. `vars` lists every variable
/// in first-occurrence order (lhs first), which fixes the iteration order of
/// `counterexample` and therefore the witness policy.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Identity {
    lhs: Term,
    rhs: Term,
    vars: Vec<String>,
}

impl Identity {
    pub fn new(lhs: Term, rhs: Term) -> Identity {
        let mut vars = Vec::new();
        lhs.collect_vars(&mut vars);
        rhs.collect_vars(&mut vars);
        Identity { lhs, rhs, vars }
    }

    pub fn lhs(&self) -> &Term {
        &self.lhs
    }

    pub fn rhs(&self) -> &Term {
        &self.rhs
    }

    pub fn vars(&self) -> &[String] {
        &self.vars
    }
}

/// The first falsifying assignment, in lexicographic order over `vars`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Witness {
    pub assignment: Vec<(String, Element)>,
    pub lhs_value: Element,
    pub rhs_value: Element,
}

impl std::fmt::Display for Witness {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        for (i, (v, x)) in self.assignment.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{v}={x}")?;
        }
        write!(f, " (lhs={}, rhs={})", self.lhs_value, self.rhs_value)
    }
}

pub fn eval_term(
    q: &Quasigroup,
    t: &Term,
    assignment: &BTreeMap<String, Element>,
) -> Result<Element, Error> {
    match t {
        Term::Var(v) => assignment
            .get(v)
            .copied()
            .ok_or_else(|| Error::UnboundVariable { name: v.clone() }),
        Term::Bin { op, lhs, rhs } => {
            let a = eval_term(q, lhs, assignment)?;
            let b = eval_term(q, rhs, assignment)?;
            Ok(op.apply(q, a, b))
        }
    }
}

/// Term with variables resolved to slots of an assignment array, so the
/// inner evaluation loop does no string work.
enum Compiled {
    Var(usize),
    Bin(BinOp, Box<Compiled>, Box<Compiled>),
}

impl Compiled {
    fn build(t: &Term, vars: &[String]) -> Compiled {
        match t {
            Term::Var(v) => Compiled::Var(vars.iter().position(|x| x == v).unwrap()),
            Term::Bin { op, lhs, rhs } => Compiled::Bin(
                *op,
                Box::new(Compiled::build(lhs, vars)),
                Box::new(Compiled::build(rhs, vars)),
            ),
        }
    }

    fn eval(&self, q: &Quasigroup, values: &[Element]) -> Element {
        match self {
            Compiled::Var(slot) => values[*slot],
            Compiled::Bin(op, lhs, rhs) => {
                op.apply(q, lhs.eval(q, values), rhs.eval(q, values))
            }
        }
    }
}

/// Scans all |vars|-tuples in lexicographic order (first variable most
/// significant) and returns the first assignment where the sides differ.
pub fn counterexample(q: &Quasigroup, id: &Identity) -> Option<Witness> {
    let n = q.order() as Element;
    let k = id.vars.len();
    let lhs = Compiled::build(&id.lhs, &id.vars);
    let rhs = Compiled::build(&id.rhs, &id.vars);
    let mut values = vec![0 as Element; k];
    loop {
        let l = lhs.eval(q, &values);
        let r = rhs.eval(q, &values);
        if l != r {
            return Some(Witness {
                assignment: id.vars.iter().cloned().zip(values.iter().copied()).collect(),
                lhs_value: l,
                rhs_value: r,
            });
        }
        // advance the odometer; last variable is least significant
        let mut i = k;
        loop {
            if i == 0 {
                return None;
            }
            i -= 1;
            values[i] += 1;
            if values[i] < n {
                break;
            }
            values[i] = 0;
        }
    }
}

pub fn holds(q: &Quasigroup, id: &Identity) -> bool {
    counterexample(q, id).is_none()
}

pub fn satisfies_all(q: &Quasigroup, keys: &[IdentityKey]) -> bool {
    keys.iter().all(|&k| holds(q, crate::registry::named(k)))
}
