//! Model search over enumerated Latin squares, plus corpus files.

use std::collections::BTreeSet;
use std::fmt;
use std::ops::ControlFlow;
use std::str::FromStr;

use crate::canonical::canonical_form;
use crate::enumerate::{enumerate_latin_squares, random_quasigroup};
use crate::error::Error;
use crate::par::par_map;
use crate::quasigroup::Quasigroup;
use crate::registry::{self, IdentityKey};
use crate::tableio::{read_table_text, write_table_text};
use crate::term::{holds, Identity};

/// Batch size for handing enumerated tables to workers. Large enough to
/// amortize thread startup, small enough to keep memory flat at order 6.
const BATCH: usize = 8192;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DedupPolicy {
    /// Every distinct table is its own entry.
    Raw,
    /// One entry per isomorphism class, represented canonically.
    UpToIsomorphism,
}

impl FromStr for DedupPolicy {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Error> {
        match s {
            "raw" => Ok(DedupPolicy::Raw),
            "iso" => Ok(DedupPolicy::UpToIsomorphism),
            _ => Err(Error::CorpusFormat(format!("unknown dedup policy `{s}` (expected raw or iso)"))),
        }
    }
}

impl fmt::Display for DedupPolicy {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            DedupPolicy::Raw => "raw",
            DedupPolicy::UpToIsomorphism => "iso",
        })
    }
}

/// Where a corpus came from; random corpora record their seed and size.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Provenance {
    Exhaustive,
    RandomSample { seed: u64, count: usize },
}

impl fmt::Display for Provenance {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Provenance::Exhaustive => f.write_str("exhaustive"),
            Provenance::RandomSample { seed, count } => {
                write!(f, "random(seed={seed},count={count})")
            }
        }
    }
}

impl FromStr for Provenance {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Error> {
        if s == "exhaustive" {
            return Ok(Provenance::Exhaustive);
        }
        let body = s
            .strip_prefix("random(")
            .and_then(|r| r.strip_suffix(')'))
            .ok_or_else(|| Error::CorpusFormat(format!("unknown provenance `{s}`")))?;
        let mut seed = None;
        let mut count = None;
        for part in body.split(',') {
            match part.split_once('=') {
                Some(("seed", v)) => seed = v.parse().ok(),
                Some(("count", v)) => count = v.parse().ok(),
                _ => {}
            }
        }
        match (seed, count) {
            (Some(seed), Some(count)) => Ok(Provenance::RandomSample { seed, count }),
            _ => Err(Error::CorpusFormat(format!("unknown provenance `{s}`"))),
        }
    }
}

/// One constraint of a query: a registry key or an ad-hoc equation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum IdentitySpec {
    Named(IdentityKey),
    Custom(Identity),
}

impl IdentitySpec {
    pub fn identity(&self) -> &Identity {
        match self {
            IdentitySpec::Named(k) => registry::named(*k),
            IdentitySpec::Custom(id) => id,
        }
    }
}

impl FromStr for IdentitySpec {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Error> {
        let s = s.trim();
        if let Ok(key) = s.parse::<IdentityKey>() {
            return Ok(IdentitySpec::Named(key));
        }
        if s.contains('=') {
            Ok(IdentitySpec::Custom(crate::parse::parse_identity(s)?))
        } else {
            Err(Error::UnknownIdentityKey { name: s.to_string() })
        }
    }
}

impl fmt::Display for IdentitySpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            IdentitySpec::Named(k) => write!(f, "{k}"),
            IdentitySpec::Custom(id) => write!(f, "{id}"),
        }
    }
}

#[derive(Debug, Clone)]
pub struct SearchQuery {
    pub min_order: usize,
    pub max_order: usize,
    pub satisfy: Vec<IdentitySpec>,
    pub violate: Vec<IdentitySpec>,
    pub dedup: DedupPolicy,
    pub limit: Option<usize>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OrderSummary {
    pub order: usize,
    pub enumerated: u64,
    pub matched: u64,
}

#[derive(Debug, Clone)]
pub struct QueryResult {
    /// Matched models: enumeration order under Raw dedup, canonical
    /// representatives sorted by table under iso dedup.
    pub models: Vec<Quasigroup>,
    pub per_order: Vec<OrderSummary>,
    pub total_matched: u64,
}

/// Enumerates every order in the query range, filters by the satisfy and
/// violate sets, dedups, and stops once `limit` models have been kept.
pub fn run_query(query: &SearchQuery, workers: usize) -> Result<QueryResult, Error> {
    if query.min_order > query.max_order || query.min_order == 0 {
        return Err(Error::InvalidOrderRange { min: query.min_order, max: query.max_order });
    }
    for s in &query.satisfy {
        if query.violate.contains(s) {
            return Err(Error::ConflictingConstraint { spec: s.to_string() });
        }
    }
    let mut models = Vec::new();
    let mut per_order = Vec::new();
    let mut total_matched = 0u64;
    let mut remaining = query.limit.unwrap_or(usize::MAX);
    for order in query.min_order..=query.max_order {
        let mut matched = 0u64;
        let mut seen_forms = BTreeSet::new();
        let mut order_models = Vec::new();
        let enumerated = for_each_batched(order, workers, |q| matches(query, q), |q, keep| {
            if !keep {
                return ControlFlow::Continue(());
            }
            if remaining == 0 {
                // a full batch may deliver results past the cap
                return ControlFlow::Break(());
            }
            match query.dedup {
                DedupPolicy::Raw => {
                    matched += 1;
                    remaining -= 1;
                    order_models.push(q.clone());
                }
                DedupPolicy::UpToIsomorphism => {
                    let form = canonical_form(q).expect("searchable orders are canonicalizable");
                    if seen_forms.insert(form) {
                        matched += 1;
                        remaining -= 1;
                    }
                }
            }
            if remaining == 0 {
                ControlFlow::Break(())
            } else {
                ControlFlow::Continue(())
            }
        })?;
        if query.dedup == DedupPolicy::UpToIsomorphism {
            // BTreeSet iteration yields the forms in sorted order
            order_models = seen_forms.iter().map(|f| f.to_quasigroup()).collect();
        }
        total_matched += matched;
        models.append(&mut order_models);
        per_order.push(OrderSummary { order, enumerated, matched });
        if remaining == 0 {
            break;
        }
    }
    Ok(QueryResult { models, per_order, total_matched })
}

fn matches(query: &SearchQuery, q: &Quasigroup) -> bool {
    query.satisfy.iter().all(|s| holds(q, s.identity()))
        && query.violate.iter().all(|s| !holds(q, s.identity()))
}

/// Streams the order-n enumeration through `check` in deterministic batches
/// (checked in parallel, handled in enumeration order). Returns the number
/// of squares enumerated.
pub(crate) fn for_each_batched<R: Send>(
    order: usize,
    workers: usize,
    check: impl Fn(&Quasigroup) -> R + Sync,
    mut handle: impl FnMut(&Quasigroup, R) -> ControlFlow<()>,
) -> Result<u64, Error> {
    let mut batch: Vec<Quasigroup> = Vec::with_capacity(BATCH);
    let mut stopped = false;
    let mut flush = |batch: &mut Vec<Quasigroup>| -> ControlFlow<()> {
        let results = par_map(batch, workers, &check);
        for (q, r) in batch.iter().zip(results) {
            if handle(q, r).is_break() {
                batch.clear();
                return ControlFlow::Break(());
            }
        }
        batch.clear();
        ControlFlow::Continue(())
    };
    let enumerated = enumerate_latin_squares(order, |q| {
        batch.push(q.clone());
        if batch.len() == BATCH {
            if flush(&mut batch).is_break() {
                stopped = true;
                return ControlFlow::Break(());
            }
        }
        ControlFlow::Continue(())
    })?;
    if !stopped {
        let _ = flush(&mut batch);
    }
    Ok(enumerated)
}

/// A saved collection of same-order tables with its generation recipe.
#[derive(Debug, Clone)]
pub struct Corpus {
    pub order: usize,
    pub dedup: DedupPolicy,
    pub provenance: Provenance,
    pub entries: Vec<Quasigroup>,
}

impl Corpus {
    /// Every Latin square of the given order, or one per isomorphism class.
    pub fn exhaustive(order: usize, dedup: DedupPolicy) -> Result<Corpus, Error> {
        let mut entries = Vec::new();
        let mut forms = BTreeSet::new();
        enumerate_latin_squares(order, |q| {
            match dedup {
                DedupPolicy::Raw => entries.push(q.clone()),
                DedupPolicy::UpToIsomorphism => {
                    forms.insert(canonical_form(q).expect("order bound checked"));
                }
            }
            ControlFlow::Continue(())
        })?;
        if dedup == DedupPolicy::UpToIsomorphism {
            entries = forms.iter().map(|f| f.to_quasigroup()).collect();
        }
        Ok(Corpus { order, dedup, provenance: Provenance::Exhaustive, entries })
    }

    /// `count` seeded random tables (seeds seed, seed+1, ..).
    pub fn sampled(order: usize, seed: u64, count: usize) -> Result<Corpus, Error> {
        let entries = (0..count)
            .map(|i| random_quasigroup(order, seed + i as u64))
            .collect::<Result<_, _>>()?;
        Ok(Corpus {
            order,
            dedup: DedupPolicy::Raw,
            provenance: Provenance::RandomSample { seed, count },
            entries,
        })
    }

    pub fn to_text(&self) -> String {
        let mut out = format!(
            "qcorpus v1 order={} dedup={} provenance={}\n",
            self.order, self.dedup, self.provenance
        );
        for q in &self.entries {
            out.push('\n');
            out.push_str(&write_table_text(q));
        }
        out
    }

    pub fn parse(text: &str) -> Result<Corpus, Error> {
        let (header, body) = text
            .split_once('\n')
            .ok_or_else(|| Error::CorpusFormat("missing header line".into()))?;
        let mut order = None;
        let mut dedup = None;
        let mut provenance = None;
        let mut words = header.split(' ');
        if words.next() != Some("qcorpus") || words.next() != Some("v1") {
            return Err(Error::CorpusFormat(format!("bad header `{header}`")));
        }
        for word in words {
            match word.split_once('=') {
                Some(("order", v)) => {
                    order = Some(v.parse::<usize>().map_err(|_| {
                        Error::CorpusFormat(format!("bad order `{v}`"))
                    })?)
                }
                Some(("dedup", v)) => dedup = Some(v.parse::<DedupPolicy>()?),
                Some(("provenance", v)) => provenance = Some(v.parse::<Provenance>()?),
                _ => return Err(Error::CorpusFormat(format!("bad header field `{word}`"))),
            }
        }
        let (order, dedup, provenance) = match (order, dedup, provenance) {
            (Some(o), Some(d), Some(p)) => (o, d, p),
            _ => return Err(Error::CorpusFormat("header is missing a field".into())),
        };
        let mut entries = Vec::new();
        for block in body.split("\n\n") {
            let block = block.trim_matches('\n');
            if block.is_empty() {
                continue;
            }
            let mut text = block.to_string();
            text.push('\n');
            let q = read_table_text(&text)?;
            if q.order() != order {
                return Err(Error::CorpusFormat(format!(
                    "entry of order {} in an order-{order} corpus",
                    q.order()
                )));
            }
            entries.push(q);
        }
        Ok(Corpus { order, dedup, provenance, entries })
    }
}
