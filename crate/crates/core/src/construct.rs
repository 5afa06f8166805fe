//! Whole-word constructions: mirror, rotation, split union and connected sum.

use thiserror::Error;

use crate::trace::trace_components;
use crate::word::{BooklinkWord, Generator, GeneratorKind};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ConstructError {
    #[error("no {kind} number {index} in the word")]
    NoSuchSite { kind: &'static str, index: usize },
    #[error("word has {0} components; expected a knot")]
    MultiComponent(usize),
}

fn rebuild(seam: usize, gens: Vec<Generator>) -> BooklinkWord {
    BooklinkWord::new(seam, gens).expect("construction preserves validity")
}

pub fn mirror(w: &BooklinkWord) -> BooklinkWord {
    rebuild(
        w.seam_strands(),
        w.generators().iter().map(|g| g.mirrored()).collect(),
    )
}

/// Moves the seam `k` generators forward (negative `k` moves it back).
pub fn rotate(w: &BooklinkWord, k: i64) -> BooklinkWord {
    let len = w.len();
    if len == 0 {
        return w.clone();
    }
    let k = k.rem_euclid(len as i64) as usize;
    let seam = w.profile().counts[k];
    let gens = w.generators()[k..]
        .iter()
        .chain(&w.generators()[..k])
        .copied()
        .collect();
    rebuild(seam, gens)
}

/// Rotates the first minimal slice onto the seam.
pub fn align_min_to_seam(w: &BooklinkWord) -> BooklinkWord {
    let counts = w.profile().counts;
    let min = w.braid_count();
    let k = counts.iter().position(|&c| c == min).unwrap_or(0);
    if k == counts.len() - 1 {
        return w.clone();
    }
    rotate(w, k as i64)
}

/// Places `w2` outside `w1`: first all of `w1` with `w2`'s strands idle
/// above it, then all of `w2` shifted past `w1`'s seam strands.
pub fn split_union(w1: &BooklinkWord, w2: &BooklinkWord) -> BooklinkWord {
    let (a, b) = (align_min_to_seam(w1), align_min_to_seam(w2));
    let s1 = a.seam_strands();
    let mut gens = a.generators().to_vec();
    gens.extend(b.generators().iter().map(|g| Generator {
        position: g.position + s1,
        ..*g
    }));
    rebuild(s1 + b.seam_strands(), gens)
}

/// Pushes a band occupying `(p, p + 1)` outward past `strands` strands,
/// over each of them. Returns the crossings in order.
fn band_outward(p: usize, strands: usize) -> Vec<Generator> {
    (p..p + strands)
        .flat_map(|q| [Generator::pos(q + 1), Generator::pos(q)])
        .collect()
}

fn nth_index(w: &BooklinkWord, kind: GeneratorKind, n: usize) -> Option<usize> {
    w.generators()
        .iter()
        .enumerate()
        .filter(|(_, g)| g.kind == kind)
        .nth(n)
        .map(|(k, _)| k)
}

/// Connected sum through the `site1`-th cap of `w1` and the `site2`-th cup
/// of `w2` (both counted from 0).
///
/// The cap is removed and its two legs continue as a parallel band pushed
/// out over the rest of `w1`. The band runs between the two words until the
/// removed cup of `w2`, where it is pushed out over the `w2` strands below
/// that cup and takes the cup's place.
pub fn connected_sum(
    w1: &BooklinkWord,
    w2: &BooklinkWord,
    site1: usize,
    site2: usize,
) -> Result<BooklinkWord, ConstructError> {
    for w in [w1, w2] {
        let c = trace_components(w);
        if c != 1 {
            return Err(ConstructError::MultiComponent(c));
        }
    }
    let cap = nth_index(w1, GeneratorKind::Cap, site1).ok_or(ConstructError::NoSuchSite {
        kind: "cap",
        index: site1,
    })?;
    let cup = nth_index(w2, GeneratorKind::Cup, site2).ok_or(ConstructError::NoSuchSite {
        kind: "cup",
        index: site2,
    })?;

    let s1 = w1.seam_strands();
    let counts1 = w1.profile().counts;
    let counts2 = w2.profile().counts;
    let mut gens = Vec::new();

    for (k, g) in w1.generators().iter().enumerate() {
        if k == cap {
            let m = counts1[k];
            gens.extend(band_outward(g.position, m - g.position - 1));
        } else {
            gens.push(*g);
        }
    }
    for (k, g) in w2.generators().iter().enumerate() {
        if k < cup {
            gens.push(Generator {
                position: g.position + s1 + 2,
                ..*g
            });
        } else if k == cup {
            gens.extend(band_outward(s1 + 1, g.position - 1));
        } else {
            gens.push(Generator {
                position: g.position + s1,
                ..*g
            });
        }
    }
    debug_assert_eq!(counts2[cup] + 2, counts2[cup + 1]);
    Ok(rebuild(s1 + w2.seam_strands(), gens))
}
