//! The eight named identities the rest of the tool is built around.
//!
//! M is mediality; Sl/Sr the left/right semimedial laws; Fl/Fr the two
//! F-quasigroup laws; El/Er the E-laws; K the third axiom of Kepka's
//! axiomatization of trimediality. The source strings below are the
//! canonical printed forms: `named(k)` parses them once, and printing the
//! parsed identity reproduces the string byte for byte.

use std::fmt;
use std::str::FromStr;
use std::sync::LazyLock;

use crate::error::Error;
use crate::parse::parse_identity;
use crate::term::Identity;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum IdentityKey {
    M,
    Sl,
    Sr,
    Fl,
    Fr,
    El,
    Er,
    K,
}

impl IdentityKey {
    pub const ALL: [IdentityKey; 8] = [
        IdentityKey::M,
        IdentityKey::Sl,
        IdentityKey::Sr,
        IdentityKey::Fl,
        IdentityKey::Fr,
        IdentityKey::El,
        IdentityKey::Er,
        IdentityKey::K,
    ];

    pub fn name(self) -> &'static str {
        match self {
            IdentityKey::M => "M",
            IdentityKey::Sl => "Sl",
            IdentityKey::Sr => "Sr",
            IdentityKey::Fl => "Fl",
            IdentityKey::Fr => "Fr",
            IdentityKey::El => "El",
            IdentityKey::Er => "Er",
            IdentityKey::K => "K",
        }
    }
}

impl fmt::Display for IdentityKey {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for IdentityKey {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Error> {
        IdentityKey::ALL
            .into_iter()
            .find(|k| k.name() == s)
            .ok_or_else(|| Error::UnknownIdentityKey { name: s.to_string() })
    }
}

/// Canonical printed form of each registry identity.
pub fn source_text(key: IdentityKey) -> &'static str {
    match key {
        IdentityKey::M => "(x*y)*(u*v) = (x*u)*(y*v)",
        IdentityKey::Sl => "(x*x)*(y*z) = (x*y)*(x*z)",
        IdentityKey::Sr => "(z*y)*(x*x) = (z*x)*(y*x)",
        IdentityKey::Fl => "x*(y*z) = (x*y)*((x\\x)*z)",
        IdentityKey::Fr => "(z*y)*x = (z*(x/x))*(y*x)",
        IdentityKey::El => "x*(y*z) = ((x/x)*y)*(x*z)",
        IdentityKey::Er => "(z*y)*x = (z*x)*(y*(x\\x))",
        IdentityKey::K => "(x*(x*x))*(u*v) = (x*u)*((x*x)*v)",
    }
}

static REGISTRY: LazyLock<[Identity; 8]> = LazyLock::new(|| {
    IdentityKey::ALL.map(|k| {
        parse_identity(source_text(k)).expect("registry identity must parse")
    })
});

pub fn named(key: IdentityKey) -> &'static Identity {
    &REGISTRY[IdentityKey::ALL.iter().position(|&k| k == key).unwrap()]
}
