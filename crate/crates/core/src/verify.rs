//! Trimediality, the statement registry, and corpus-wide verification.

use std::collections::HashMap;
use std::fmt;
use std::ops::ControlFlow;
use std::str::FromStr;
use std::sync::LazyLock;

use crate::canonical::canonical_form;
use crate::enumerate::random_quasigroup;
use crate::error::Error;
use crate::quasigroup::{
    endomorphism_witness, maps_commute_ef, Element, ParastropheKind, Quasigroup,
};
use crate::registry::{self, IdentityKey};
use crate::search::for_each_batched;
use crate::tableio::write_table_text;
use crate::term::{counterexample, holds, Witness};

/// Exhaustive verification sweeps full enumerations, so it shares the
/// enumeration bound minus one order of headroom: order 6 is sampled, never
/// swept.
pub const MAX_VERIFY_ORDER: usize = 5;

/// True iff every subquasigroup generated by three (not necessarily
/// distinct) elements satisfies mediality. Closures repeat heavily across
/// triples, so verdicts are memoized per closed subset.
pub fn is_trimedial(q: &Quasigroup) -> bool {
    trimedial_failure(q).is_none()
}

/// The first generator triple (in lexicographic scan order) whose generated
/// subquasigroup fails mediality, with the offending assignment.
pub fn trimedial_witness(q: &Quasigroup) -> Option<TrimedialWitness> {
    let (generators, x, y, u, v) = trimedial_failure(q)?;
    let assignment = vec![
        ("x".to_string(), x),
        ("y".to_string(), y),
        ("u".to_string(), u),
        ("v".to_string(), v),
    ];
    let lhs = q.mul(q.mul(x, y), q.mul(u, v));
    let rhs = q.mul(q.mul(x, u), q.mul(y, v));
    Some(TrimedialWitness {
        generators,
        witness: Witness { assignment, lhs_value: lhs, rhs_value: rhs },
    })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TrimedialWitness {
    pub generators: [Element; 3],
    pub witness: Witness,
}

fn trimedial_failure(q: &Quasigroup) -> Option<([Element; 3], Element, Element, Element, Element)> {
    let n = q.order() as Element;
    // closure set (sorted) → first medial failure inside it, if any
    let mut memo: HashMap<Vec<Element>, Option<(Element, Element, Element, Element)>> =
        HashMap::new();
    let mut sorted_gens_seen: HashMap<[Element; 3], ()> = HashMap::new();
    for a in 0..n {
        for b in 0..n {
            for c in 0..n {
                let mut key = [a, b, c];
                key.sort_unstable();
                if sorted_gens_seen.insert(key, ()).is_some() {
                    continue;
                }
                let sub = q
                    .generated_subquasigroup(&[a, b, c])
                    .expect("generators are nonempty");
                let fail = memo
                    .entry(sub.clone())
                    .or_insert_with(|| first_medial_failure(q, &sub));
                if let Some((x, y, u, v)) = *fail {
                    return Some(([a, b, c], x, y, u, v));
                }
            }
        }
    }
    None
}

fn first_medial_failure(
    q: &Quasigroup,
    sub: &[Element],
) -> Option<(Element, Element, Element, Element)> {
    for &x in sub {
        for &y in sub {
            for &u in sub {
                for &v in sub {
                    if q.mul(q.mul(x, y), q.mul(u, v)) != q.mul(q.mul(x, u), q.mul(y, v)) {
                        return Some((x, y, u, v));
                    }
                }
            }
        }
    }
    None
}

/// Atomic properties a statement can mention.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Prop {
    /// The named identity holds on Q.
    Holds(IdentityKey),
    /// The named identity holds on the given parastrophe of Q.
    HoldsOn(ParastropheKind, IdentityKey),
    /// e(x) = x\x is an endomorphism.
    EMapEndo,
    /// f(x) = x/x is an endomorphism.
    FMapEndo,
    /// f∘e = e∘f pointwise.
    EfCommute,
    /// Every 3-generated subquasigroup is medial.
    Trimedial,
    All(Vec<Prop>),
    Any(Vec<Prop>),
}

impl fmt::Display for Prop {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Prop::Holds(k) => write!(f, "{k}"),
            Prop::HoldsOn(p, k) => write!(f, "{k} on Q_{p}"),
            Prop::EMapEndo => f.write_str("e endomorphism"),
            Prop::FMapEndo => f.write_str("f endomorphism"),
            Prop::EfCommute => f.write_str("f(e(x)) = e(f(x))"),
            Prop::Trimedial => f.write_str("trimedial"),
            Prop::All(ps) => {
                for (i, p) in ps.iter().enumerate() {
                    if i > 0 {
                        f.write_str(" & ")?;
                    }
                    write!(f, "{p}")?;
                }
                Ok(())
            }
            Prop::Any(ps) => {
                for (i, p) in ps.iter().enumerate() {
                    if i > 0 {
                        f.write_str(" | ")?;
                    }
                    write!(f, "{p}")?;
                }
                Ok(())
            }
        }
    }
}

/// One verifiable claim; statements bundle several.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Claim {
    Implies(Prop, Prop),
    Iff(Prop, Prop),
}

impl fmt::Display for Claim {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Claim::Implies(h, c) => write!(f, "{h} => {c}"),
            Claim::Iff(a, b) => write!(f, "{a} <=> {b}"),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum StatementId {
    Prop1,
    Thm1,
    Thm2,
    Lem1,
    Lem2,
    Lem3,
    Lem4,
    Lem5,
    Lem6,
    Lem7,
    KepkaAxioms,
}

impl StatementId {
    pub const ALL: [StatementId; 11] = [
        StatementId::Prop1,
        StatementId::Thm1,
        StatementId::Thm2,
        StatementId::Lem1,
        StatementId::Lem2,
        StatementId::Lem3,
        StatementId::Lem4,
        StatementId::Lem5,
        StatementId::Lem6,
        StatementId::Lem7,
        StatementId::KepkaAxioms,
    ];

    pub fn name(self) -> &'static str {
        match self {
            StatementId::Prop1 => "prop1",
            StatementId::Thm1 => "thm1",
            StatementId::Thm2 => "thm2",
            StatementId::Lem1 => "lem1",
            StatementId::Lem2 => "lem2",
            StatementId::Lem3 => "lem3",
            StatementId::Lem4 => "lem4",
            StatementId::Lem5 => "lem5",
            StatementId::Lem6 => "lem6",
            StatementId::Lem7 => "lem7",
            StatementId::KepkaAxioms => "kepka_axioms",
        }
    }
}

impl fmt::Display for StatementId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for StatementId {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Error> {
        StatementId::ALL
            .into_iter()
            .find(|id| id.name() == s)
            .ok_or_else(|| Error::UnknownStatement { name: s.to_string() })
    }
}

pub struct Statement {
    pub id: StatementId,
    pub summary: &'static str,
    pub claims: Vec<Claim>,
}

fn all(keys: &[IdentityKey]) -> Prop {
    Prop::All(keys.iter().map(|&k| Prop::Holds(k)).collect())
}

static STATEMENTS: LazyLock<Vec<Statement>> = LazyLock::new(|| {
    use IdentityKey::*;
    use ParastropheKind::*;
    use Prop::*;
    use StatementId::*;
    vec![
        Statement {
            id: Prop1,
            summary: "trimedial = semimedial + either F-law",
            claims: vec![
                Claim::Iff(Trimedial, all(&[Sl, Sr, Fl])),
                Claim::Iff(Trimedial, all(&[Sl, Sr, Fr])),
            ],
        },
        Statement {
            id: Thm1,
            summary: "the two E-laws characterize trimediality",
            claims: vec![Claim::Iff(all(&[El, Er]), Trimedial)],
        },
        Statement {
            id: Thm2,
            summary: "one semimedial law + the opposite F-law suffice",
            claims: vec![
                Claim::Iff(Trimedial, all(&[Sr, Fl])),
                Claim::Iff(Trimedial, all(&[Sl, Fr])),
            ],
        },
        Statement {
            id: Lem1,
            summary: "each left law holds iff its right twin holds opposite",
            claims: vec![
                Claim::Iff(Holds(Fl), HoldsOn(Opposite, Fr)),
                Claim::Iff(Holds(Sl), HoldsOn(Opposite, Sr)),
                Claim::Iff(Holds(El), HoldsOn(Opposite, Er)),
            ],
        },
        Statement {
            id: Lem2,
            summary: "F- and E-laws transfer to division parastrophes",
            claims: vec![
                Claim::Iff(Holds(Fl), HoldsOn(Left, Sl)),
                Claim::Iff(Holds(Fr), HoldsOn(Right, Sr)),
                Claim::Iff(Holds(El), HoldsOn(Left, El)),
                Claim::Iff(Holds(Er), HoldsOn(Right, Er)),
            ],
        },
        Statement {
            id: Lem3,
            summary: "E- and F-laws force a unit map to be an endomorphism",
            claims: vec![
                Claim::Implies(Holds(El), FMapEndo),
                Claim::Implies(Holds(Er), EMapEndo),
                Claim::Implies(Holds(Fl), EMapEndo),
                Claim::Implies(Holds(Fr), FMapEndo),
            ],
        },
        Statement {
            id: Lem4,
            summary: "an endomorphic unit map makes e and f commute",
            claims: vec![Claim::Implies(Any(vec![EMapEndo, FMapEndo]), EfCommute)],
        },
        Statement {
            id: Lem5,
            summary: "under an E-law, the matching F- and semimedial laws agree",
            claims: vec![
                Claim::Implies(all(&[El, Fl]), Holds(Sl)),
                Claim::Implies(all(&[El, Sl]), Holds(Fl)),
                Claim::Implies(all(&[Er, Fr]), Holds(Sr)),
                Claim::Implies(all(&[Er, Sr]), Holds(Fr)),
            ],
        },
        Statement {
            id: Lem6,
            summary: "both E-laws together force both F-laws",
            claims: vec![Claim::Implies(all(&[El, Er]), all(&[Fl, Fr]))],
        },
        Statement {
            id: Lem7,
            summary: "a semimedial law plus the opposite F-law yields an E-law",
            claims: vec![
                Claim::Implies(all(&[Sr, Fl]), Holds(Er)),
                Claim::Implies(all(&[Sl, Fr]), Holds(El)),
            ],
        },
        Statement {
            id: KepkaAxioms,
            summary: "the three-identity axiom set (and its two-identity trim)",
            claims: vec![
                Claim::Iff(all(&[Sl, Sr, K]), Trimedial),
                Claim::Iff(all(&[Sr, K]), Trimedial),
            ],
        },
    ]
});

pub fn statement(id: StatementId) -> &'static Statement {
    STATEMENTS.iter().find(|s| s.id == id).expect("registry covers every id")
}

/// Optional sampling pass appended after the exhaustive orders.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SampleSpec {
    pub order: usize,
    pub count: usize,
    pub seed: u64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum VerificationStatus {
    Verified,
    CounterexampleFound,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OrderCount {
    pub order: usize,
    pub models: u64,
    pub sampled: bool,
}

/// A model falsifying one claim of a statement.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WitnessEntry {
    pub order: usize,
    /// Offending table in the text format.
    pub table: String,
    /// The claim that failed, printed.
    pub claim: String,
    /// Which side failed and how.
    pub detail: String,
    /// Falsifying assignment of the innermost failing property, when one
    /// exists (endomorphism and commutation failures use x/y, trimediality
    /// failures use g1..g3 plus the medial quadruple).
    pub assignment: Vec<(String, Element)>,
}

#[derive(Debug, Clone)]
pub struct VerificationReport {
    pub statement: StatementId,
    pub max_order: usize,
    pub sample: Option<SampleSpec>,
    pub per_order: Vec<OrderCount>,
    pub models_checked: u64,
    pub status: VerificationStatus,
    pub witnesses: Vec<WitnessEntry>,
}

/// Checks every claim of a statement against every model of order 1 to
/// `max_order`, plus an optional sampled batch. At most
/// `WITNESS_CAP` witnesses are kept (earliest per order, sorted by (order,
/// canonical form, assignment)).
pub fn verify_statement(
    id: StatementId,
    max_order: usize,
    sample: Option<SampleSpec>,
    workers: usize,
) -> Result<VerificationReport, Error> {
    verify_claims(statement(id), max_order, sample, workers)
}

fn verify_claims(
    stmt: &Statement,
    max_order: usize,
    sample: Option<SampleSpec>,
    workers: usize,
) -> Result<VerificationReport, Error> {
    if max_order == 0 || max_order > MAX_VERIFY_ORDER {
        return Err(Error::OrderTooLarge { order: max_order, max: MAX_VERIFY_ORDER });
    }
    let mut per_order = Vec::new();
    let mut witnesses: Vec<(Vec<Element>, WitnessEntry)> = Vec::new();
    let mut models_checked = 0u64;
    for order in 1..=max_order {
        let enumerated = for_each_batched(
            order,
            workers,
            |q| check_claims(stmt, q),
            |q, failure| {
                record_failure(&mut witnesses, q, failure);
                ControlFlow::Continue(())
            },
        )?;
        models_checked += enumerated;
        per_order.push(OrderCount { order, models: enumerated, sampled: false });
    }
    if let Some(spec) = sample {
        let tables: Vec<Quasigroup> = (0..spec.count)
            .map(|i| random_quasigroup(spec.order, spec.seed + i as u64))
            .collect::<Result<_, _>>()?;
        let results = crate::par::par_map(&tables, workers, |q| check_claims(stmt, q));
        for (q, failure) in tables.iter().zip(results) {
            record_failure(&mut witnesses, q, failure);
        }
        models_checked += spec.count as u64;
        per_order.push(OrderCount { order: spec.order, models: spec.count as u64, sampled: true });
    }
    witnesses.sort_by(|(fa, wa), (fb, wb)| {
        (wa.order, fa, &wa.assignment).cmp(&(wb.order, fb, &wb.assignment))
    });
    let witnesses: Vec<WitnessEntry> = witnesses.into_iter().map(|(_, w)| w).collect();
    let status = if witnesses.is_empty() {
        VerificationStatus::Verified
    } else {
        VerificationStatus::CounterexampleFound
    };
    Ok(VerificationReport {
        statement: stmt.id,
        max_order,
        sample,
        per_order,
        models_checked,
        status,
        witnesses,
    })
}

const WITNESS_CAP: usize = 8;

fn record_failure(
    witnesses: &mut Vec<(Vec<Element>, WitnessEntry)>,
    q: &Quasigroup,
    failure: Option<ClaimFailure>,
) {
    let Some(failure) = failure else { return };
    if witnesses.len() >= WITNESS_CAP {
        return;
    }
    // canonical form exists for every searchable order; fall back to the raw
    // table if someone verifies beyond the canonicalization bound
    let sort_key = canonical_form(q)
        .map(|f| f.bytes().to_vec())
        .unwrap_or_else(|_| q.mul_flat().to_vec());
    witnesses.push((
        sort_key,
        WitnessEntry {
            order: q.order(),
            table: write_table_text(q),
            claim: failure.claim,
            detail: failure.detail,
            assignment: failure.assignment,
        },
    ));
}

struct ClaimFailure {
    claim: String,
    detail: String,
    assignment: Vec<(String, Element)>,
}

/// Evaluates all claims on one model; atom results are cached because claims
/// share properties (and trimediality repeats closures internally).
fn check_claims(stmt: &Statement, q: &Quasigroup) -> Option<ClaimFailure> {
    let mut ctx = ModelCtx::new(q);
    for claim in &stmt.claims {
        let failed = match claim {
            Claim::Implies(h, c) => ctx.eval(h) && !ctx.eval(c),
            Claim::Iff(a, b) => ctx.eval(a) != ctx.eval(b),
        };
        if failed {
            let (detail, assignment) = ctx.describe_failure(claim);
            return Some(ClaimFailure { claim: claim.to_string(), detail, assignment });
        }
    }
    None
}

struct ModelCtx<'a> {
    q: &'a Quasigroup,
    holds: [Option<bool>; 8],
    para: [Option<(Quasigroup, [Option<bool>; 8])>; 3],
    tri: Option<bool>,
    e_endo: Option<bool>,
    f_endo: Option<bool>,
    ef_commute: Option<bool>,
}

fn key_index(k: IdentityKey) -> usize {
    IdentityKey::ALL.iter().position(|&x| x == k).unwrap()
}

fn para_index(p: ParastropheKind) -> usize {
    match p {
        ParastropheKind::Left => 0,
        ParastropheKind::Right => 1,
        ParastropheKind::Opposite => 2,
    }
}

impl<'a> ModelCtx<'a> {
    fn new(q: &'a Quasigroup) -> Self {
        ModelCtx {
            q,
            holds: [None; 8],
            para: [None, None, None],
            tri: None,
            e_endo: None,
            f_endo: None,
            ef_commute: None,
        }
    }

    fn eval(&mut self, p: &Prop) -> bool {
        match p {
            Prop::Holds(k) => {
                let i = key_index(*k);
                *self.holds[i]
                    .get_or_insert_with(|| holds(self.q, registry::named(*k)))
            }
            Prop::HoldsOn(pk, k) => {
                let slot = &mut self.para[para_index(*pk)];
                let (pq, cache) =
                    slot.get_or_insert_with(|| (self.q.parastrophe(*pk), [None; 8]));
                let i = key_index(*k);
                *cache[i].get_or_insert_with(|| holds(pq, registry::named(*k)))
            }
            Prop::EMapEndo => *self
                .e_endo
                .get_or_insert_with(|| endomorphism_witness(self.q, &self.q.e_map()).is_none()),
            Prop::FMapEndo => *self
                .f_endo
                .get_or_insert_with(|| endomorphism_witness(self.q, &self.q.f_map()).is_none()),
            Prop::EfCommute => {
                *self.ef_commute.get_or_insert_with(|| maps_commute_ef(self.q))
            }
            Prop::Trimedial => *self.tri.get_or_insert_with(|| is_trimedial(self.q)),
            Prop::All(ps) => ps.iter().all(|p| self.eval(p)),
            Prop::Any(ps) => ps.iter().any(|p| self.eval(p)),
        }
    }

    /// Human-readable failure description plus the innermost falsifying
    /// assignment available.
    fn describe_failure(&mut self, claim: &Claim) -> (String, Vec<(String, Element)>) {
        let (side, prop) = match claim {
            Claim::Implies(h, c) => {
                debug_assert!(self.eval(h) && !self.eval(c));
                ("conclusion fails", c.clone())
            }
            Claim::Iff(a, b) => {
                if self.eval(a) && !self.eval(b) {
                    ("right side fails", b.clone())
                } else {
                    ("left side fails", a.clone())
                }
            }
        };
        let assignment = self.falsifying_assignment(&prop);
        (format!("{side}: {prop}"), assignment)
    }

    fn falsifying_assignment(&mut self, p: &Prop) -> Vec<(String, Element)> {
        match p {
            Prop::Holds(k) => counterexample(self.q, registry::named(*k))
                .map(|w| w.assignment)
                .unwrap_or_default(),
            Prop::HoldsOn(pk, k) => {
                let pq = self.q.parastrophe(*pk);
                counterexample(&pq, registry::named(*k))
                    .map(|w| w.assignment)
                    .unwrap_or_default()
            }
            Prop::EMapEndo => endomorphism_witness(self.q, &self.q.e_map())
                .map(|(x, y)| vec![("x".to_string(), x), ("y".to_string(), y)])
                .unwrap_or_default(),
            Prop::FMapEndo => endomorphism_witness(self.q, &self.q.f_map())
                .map(|(x, y)| vec![("x".to_string(), x), ("y".to_string(), y)])
                .unwrap_or_default(),
            Prop::EfCommute => {
                let e = self.q.e_map();
                let f = self.q.f_map();
                (0..self.q.order() as Element)
                    .find(|&x| f.get(e.get(x)) != e.get(f.get(x)))
                    .map(|x| vec![("x".to_string(), x)])
                    .unwrap_or_default()
            }
            Prop::Trimedial => trimedial_witness(self.q)
                .map(|tw| {
                    let mut asg = vec![
                        ("g1".to_string(), tw.generators[0]),
                        ("g2".to_string(), tw.generators[1]),
                        ("g3".to_string(), tw.generators[2]),
                    ];
                    asg.extend(tw.witness.assignment);
                    asg
                })
                .unwrap_or_default(),
            Prop::All(ps) => {
                for sub in ps {
                    if !self.eval(sub) {
                        return self.falsifying_assignment(sub);
                    }
                }
                Vec::new()
            }
            // a failing Any has no single falsifier; leave it empty
            Prop::Any(_) => Vec::new(),
        }
    }
}
