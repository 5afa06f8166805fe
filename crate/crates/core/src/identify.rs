//! Knot identification by Jones polynomial, up to mirror image. Uses the
//! slice sweep, so large words are fine.

use thiserror::Error;

use crate::invariant::jones_by_slices;
use crate::poly::LaurentPoly;
use crate::table::KnotRecord;
use crate::trace::trace_components;
use crate::word::BooklinkWord;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum IdentifyError {
    #[error("word has {0} components; only knots are identified")]
    MultiComponent(usize),
    #[error("no knot in the table has Jones polynomial {0}")]
    NoMatch(String),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Identification {
    pub jones: LaurentPoly,
    /// Matching names, by crossing number then table order.
    pub candidates: Vec<String>,
}

impl Identification {
    pub fn is_unique(&self) -> bool {
        self.candidates.len() == 1
    }
}

/// Table entries whose Jones polynomial is `v` or its mirror.
pub fn match_jones(v: &LaurentPoly, table: &[KnotRecord]) -> Vec<String> {
    let mirror = v.invert();
    let mut hits: Vec<&KnotRecord> = table
        .iter()
        .filter(|r| r.jones == *v || r.jones == mirror)
        .collect();
    hits.sort_by_key(|r| r.crossings);
    hits.into_iter().map(|r| r.name.clone()).collect()
}

pub fn identify(w: &BooklinkWord, table: &[KnotRecord]) -> Result<Identification, IdentifyError> {
    let c = trace_components(w);
    if c != 1 {
        return Err(IdentifyError::MultiComponent(c));
    }
    let v = jones_by_slices(w);
    let candidates = match_jones(&v, table);
    if candidates.is_empty() {
        return Err(IdentifyError::NoMatch(v.render("t", 4)));
    }
    Ok(Identification {
        jones: v,
        candidates,
    })
}
