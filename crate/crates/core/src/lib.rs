//! A workbench for finite quasigroups: Cayley tables with their two
//! divisions, a small identity language over `*`, `\`, `/`, exhaustive
//! Latin-square enumeration, and a registry of verifiable statements about
//! trimedial quasigroups.
//!
//! Elements are always `0..n`. Tables are row-major, `mul[x][y]` in row x,
//! column y. Everything downstream (parastrophes, closures, searches) is
//! derived from the multiplication table alone.

pub mod canonical;
pub mod enumerate;
pub mod error;
mod par;
pub mod parse;
pub mod quasigroup;
pub mod registry;
pub mod search;
pub mod tableio;
pub mod term;
pub mod verify;

pub use canonical::{canonical_form, relabel, CanonicalForm, MAX_CANONICAL_ORDER};
pub use enumerate::{
    count_latin_squares, enumerate_latin_squares, enumerate_latin_squares_unbounded,
    random_quasigroup, MAX_EXHAUSTIVE_ORDER,
};
pub use error::{Axis, Error};
pub use parse::{parse_identity, parse_term, print_identity, print_term};
pub use quasigroup::{
    endomorphism_witness, is_endomorphism, maps_commute_ef, Element, ElementMap,
    ParastropheKind, Quasigroup, MAX_ORDER,
};
pub use registry::IdentityKey;
pub use search::{
    run_query, Corpus, DedupPolicy, IdentitySpec, OrderSummary, Provenance, QueryResult,
    SearchQuery,
};
pub use tableio::{
    read_table_auto, read_table_json, read_table_text, write_table_json, write_table_text,
};
pub use term::{
    counterexample, eval_term, holds, satisfies_all, BinOp, Identity, Term, Witness,
};
pub use verify::{
    is_trimedial, statement, trimedial_witness, verify_statement, Claim, OrderCount, Prop,
    SampleSpec, Statement, StatementId, TrimedialWitness, VerificationReport,
    VerificationStatus, WitnessEntry, MAX_VERIFY_ORDER,
};
