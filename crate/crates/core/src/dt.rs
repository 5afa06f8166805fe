//! Dowker–Thistlethwaite codes of single-component words.

use std::fmt;

use crate::trace::{Pass, Trace};
use crate::word::BooklinkWord;

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct DtCode {
    pub pairs: Vec<i64>,
}

impl fmt::Display for DtCode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.pairs.iter().map(i64::to_string).collect();
        f.write_str(&parts.join(" "))
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("word has {0} components; a DT code needs exactly one")]
pub struct MultiComponent(pub usize);

/// Code read from one traversal: the even partner of labels 1, 3, 5, ...
/// negated when the odd-labelled pass goes under.
fn code_from(passes: &[Pass]) -> Vec<i64> {
    let c = passes.len() / 2;
    let mut label_of = vec![[0usize; 2]; passes.iter().map(|p| p.generator + 1).max().unwrap_or(0)];
    let mut seen = vec![0usize; label_of.len()];
    for (k, p) in passes.iter().enumerate() {
        label_of[p.generator][seen[p.generator]] = k + 1;
        seen[p.generator] += 1;
    }
    let mut code = vec![0i64; c];
    for (k, p) in passes.iter().enumerate() {
        let label = k + 1;
        if label % 2 == 0 {
            continue;
        }
        let [a, b] = label_of[p.generator];
        let even = if a == label { b } else { a } as i64;
        code[label / 2] = if p.over { even } else { -even };
    }
    code
}

fn key(code: &[i64]) -> Vec<(i64, bool)> {
    code.iter().map(|&x| (x.abs(), x < 0)).collect()
}

/// Canonical code: minimum over every starting pass and both directions,
/// comparing entries by absolute value and then preferring positive.
pub fn dt_code(w: &BooklinkWord) -> Result<DtCode, MultiComponent> {
    let trace = Trace::new(w);
    if trace.component_count() != 1 {
        return Err(MultiComponent(trace.component_count()));
    }
    let passes = &trace.passes[0];
    let n = passes.len();
    let mut best: Option<Vec<i64>> = None;
    let reversed: Vec<Pass> = passes.iter().rev().copied().collect();
    for seq in [passes.as_slice(), reversed.as_slice()] {
        for s in 0..n {
            let rotated: Vec<Pass> = seq[s..].iter().chain(&seq[..s]).copied().collect();
            let code = code_from(&rotated);
            if best.as_ref().is_none_or(|b| key(&code) < key(b)) {
                best = Some(code);
            }
        }
    }
    Ok(DtCode {
        pairs: best.unwrap_or_default(),
    })
}
