//! Bridge-braid spectra `{b_0, ..., 1, 0}` and how they combine.

use std::fmt;
use std::str::FromStr;

use thiserror::Error;

/// A valid spectrum: strictly decreasing, ending `1, 0` (or just `1, 0`
/// for the unknot). Stored without trailing zeros past the first.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Spectrum {
    values: Vec<u32>,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SpectrumError {
    #[error("NotDecreasing at d={0}")]
    NotDecreasing(usize),
    #[error("MissingPenultimateOne at d={0}")]
    MissingPenultimateOne(usize),
    #[error("NoTerminalZero")]
    NoTerminalZero,
    #[error("BadIndex {0}")]
    BadIndex(u32),
    #[error("cannot parse spectrum `{0}`")]
    Syntax(String),
}

/// Checks a raw sequence and reports every violation found.
pub fn check_spectrum(raw: &[u32]) -> Vec<SpectrumError> {
    let mut errs = Vec::new();
    let Some(zero) = raw.iter().position(|&b| b == 0) else {
        errs.push(SpectrumError::NoTerminalZero);
        return errs;
    };
    for d in 1..=zero {
        if raw[d] >= raw[d - 1] {
            errs.push(SpectrumError::NotDecreasing(d));
        }
    }
    if zero >= 1 && raw[zero - 1] != 1 {
        errs.push(SpectrumError::MissingPenultimateOne(zero - 1));
    }
    if zero == 0 {
        // {0} alone is the empty link; nothing we model has it.
        errs.push(SpectrumError::MissingPenultimateOne(0));
    }
    errs
}

impl Spectrum {
    /// Validates `raw`, trimming zeros after the first. Returns the first
    /// violation; see [`check_spectrum`] for the full list.
    pub fn new(raw: &[u32]) -> Result<Self, SpectrumError> {
        match check_spectrum(raw).into_iter().next() {
            Some(e) => Err(e),
            None => {
                let zero = raw.iter().position(|&b| b == 0).unwrap();
                Ok(Self {
                    values: raw[..=zero].to_vec(),
                })
            }
        }
    }

    pub fn values(&self) -> &[u32] {
        &self.values
    }

    /// The index of the terminal zero.
    pub fn bridge_index(&self) -> usize {
        self.values.len() - 1
    }

    pub fn braid_index(&self) -> u32 {
        self.values[0]
    }

    /// `b_d`, zero past the bridge index.
    pub fn at(&self, d: usize) -> u32 {
        self.values.get(d).copied().unwrap_or(0)
    }

    /// Whether successive drops never increase; returns the first `d` with
    /// `b_{d-1} - b_d < b_d - b_{d+1}` otherwise.
    pub fn is_concave(&self) -> (bool, Option<usize>) {
        let v = &self.values;
        for d in 1..v.len().saturating_sub(1) {
            if (v[d - 1] as i64 - v[d] as i64) < (v[d] as i64 - v[d + 1] as i64) {
                return (false, Some(d));
            }
        }
        (true, None)
    }
}

impl fmt::Display for Spectrum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.values.iter().map(u32::to_string).collect();
        write!(f, "{{{}}}", parts.join(","))
    }
}

/// Parses `{a,b,...}` into raw integers without validating.
pub fn parse_raw(text: &str) -> Result<Vec<u32>, SpectrumError> {
    let bad = || SpectrumError::Syntax(text.to_string());
    let inner = text
        .trim()
        .strip_prefix('{')
        .and_then(|t| t.strip_suffix('}'))
        .ok_or_else(bad)?;
    inner
        .split(',')
        .map(|t| t.trim().parse::<u32>().map_err(|_| bad()))
        .collect()
}

impl FromStr for Spectrum {
    type Err = SpectrumError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Spectrum::new(&parse_raw(s)?)
    }
}

/// `(n, 1, 0)` for a 2-bridge link of braid index `n`.
pub fn two_bridge_spectrum(n: u32) -> Result<Spectrum, SpectrumError> {
    if n < 2 {
        return Err(SpectrumError::BadIndex(n));
    }
    Spectrum::new(&[n, 1, 0])
}

/// `(d, d-1, ..., 1, 0)` for a link whose bridge and braid indices are both `d`.
pub fn bb_spectrum(d: u32) -> Result<Spectrum, SpectrumError> {
    if d < 1 {
        return Err(SpectrumError::BadIndex(d));
    }
    Spectrum::new(&(0..=d).rev().collect::<Vec<_>>())
}

/// Min-plus convolution: the spectrum of a split union.
pub fn split_combine(s1: &Spectrum, s2: &Spectrum) -> Spectrum {
    let (d1, d2) = (s1.bridge_index(), s2.bridge_index());
    let values = (0..=d1 + d2)
        .map(|d| {
            (d.saturating_sub(d2)..=d.min(d1))
                .map(|a| s1.at(a) + s2.at(d - a))
                .min()
                .unwrap()
        })
        .collect::<Vec<_>>();
    Spectrum::new(&values).expect("convolution of valid spectra is valid")
}

/// Spectrum of a connected sum: `b_0 = n1 + n2 - 1`, and for
/// `0 < d < d1 + d2 - 1` the minimum of `b_{a} + b_{d+1-a}` over
/// `1 <= a <= d1`, `1 <= d+1-a <= d2`; zero from `d1 + d2 - 1` on.
pub fn composite_combine(s1: &Spectrum, s2: &Spectrum) -> Spectrum {
    let (d1, d2) = (s1.bridge_index(), s2.bridge_index());
    let top = d1 + d2 - 1;
    let mut values = vec![s1.braid_index() + s2.braid_index() - 1];
    for d in 1..top {
        let lo = 1.max((d + 1).saturating_sub(d2));
        let hi = d1.min(d);
        values.push(
            (lo..=hi)
                .map(|a| s1.at(a) + s2.at(d + 1 - a))
                .min()
                .unwrap(),
        );
    }
    if top > 0 {
        values.push(0);
    }
    Spectrum::new(&values).expect("composite of valid spectra is valid")
}
