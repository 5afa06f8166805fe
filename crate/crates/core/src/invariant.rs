//! Kauffman bracket and Jones polynomial by exact state sum.

use std::collections::BTreeMap;

use rayon::prelude::*;
use thiserror::Error;

use crate::diagram::{to_planar_diagram, PlanarDiagram, UnionFind};
use crate::poly::LaurentPoly;
use crate::word::{BooklinkWord, Generator, GeneratorKind};

pub const DEFAULT_CROSSING_CAP: usize = 24;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum InvariantError {
    #[error("{crossings} crossings exceeds the state-sum cap of {cap}")]
    TooManyCrossings { crossings: usize, cap: usize },
}

/// δ = −A² − A⁻².
pub fn loop_value() -> LaurentPoly {
    LaurentPoly::from_terms([(2, -1), (-2, -1)])
}

/// Number of states with `a` A-smoothings that produce `loops` loops,
/// indexed `[a][loops]`.
fn state_histogram(d: &PlanarDiagram) -> Vec<Vec<u64>> {
    let c = d.crossings.len();
    let max_loops = d.edge_count + 1;
    let pairs: Vec<_> = d.crossings.iter().map(|x| x.smoothings()).collect();
    let edges = d.edge_count;

    let count_range = |lo: u64, hi: u64| {
        let mut hist = vec![vec![0u64; max_loops]; c + 1];
        for state in lo..hi {
            let mut uf = UnionFind::new(edges);
            let mut loops = edges;
            for (j, (a, b)) in pairs.iter().enumerate() {
                let chosen = if state >> j & 1 == 1 { a } else { b };
                for &(x, y) in chosen {
                    if uf.union(x, y) {
                        loops -= 1;
                    }
                }
            }
            hist[state.count_ones() as usize][loops] += 1;
        }
        hist
    };

    let states = 1u64 << c;
    let chunk = 1u64 << 12;
    if states <= chunk {
        return count_range(0, states);
    }
    (0..states / chunk)
        .into_par_iter()
        .map(|k| count_range(k * chunk, (k + 1) * chunk))
        .reduce(
            || vec![vec![0u64; max_loops]; c + 1],
            |mut acc, h| {
                for (ra, rh) in acc.iter_mut().zip(h) {
                    for (x, y) in ra.iter_mut().zip(rh) {
                        *x += y;
                    }
                }
                acc
            },
        )
}

/// Bracket of a diagram, normalized so a single crossingless loop is 1.
pub fn diagram_bracket(d: &PlanarDiagram, cap: usize) -> Result<LaurentPoly, InvariantError> {
    let c = d.crossings.len();
    if c > cap {
        return Err(InvariantError::TooManyCrossings { crossings: c, cap });
    }
    if d.edge_count == 0 {
        // Empty word: no loops at all. Report 1 rather than δ⁻¹.
        return Ok(LaurentPoly::one());
    }
    let hist = state_histogram(d);
    let delta = loop_value();
    let mut powers = vec![LaurentPoly::one()];
    let mut out = LaurentPoly::zero();
    for (a, row) in hist.iter().enumerate() {
        for (loops, &n) in row.iter().enumerate() {
            if n == 0 {
                continue;
            }
            while powers.len() < loops {
                let next = powers.last().unwrap() * &delta;
                powers.push(next);
            }
            let b = c - a;
            let term = LaurentPoly::monomial(a as i64 - b as i64, n as i64);
            out = &out + &(&term * &powers[loops - 1]);
        }
    }
    Ok(out)
}

pub fn kauffman_bracket(w: &BooklinkWord) -> Result<LaurentPoly, InvariantError> {
    kauffman_bracket_capped(w, DEFAULT_CROSSING_CAP)
}

pub fn kauffman_bracket_capped(
    w: &BooklinkWord,
    cap: usize,
) -> Result<LaurentPoly, InvariantError> {
    diagram_bracket(&to_planar_diagram(w), cap)
}

/// Jones polynomial in t with exponents in quarter units (t = A⁻⁴).
pub fn jones(w: &BooklinkWord) -> Result<LaurentPoly, InvariantError> {
    jones_capped(w, DEFAULT_CROSSING_CAP)
}

pub fn jones_capped(w: &BooklinkWord, cap: usize) -> Result<LaurentPoly, InvariantError> {
    let d = to_planar_diagram(w);
    let bracket = diagram_bracket(&d, cap)?;
    let writhe = d.writhe();
    let sign = if writhe % 2 == 0 { 1 } else { -1 };
    let normalized = &LaurentPoly::monomial(-3 * writhe, sign) * &bracket;
    // A^e = t^(-e/4), and quarter units make that exponent -e.
    Ok(normalized.invert())
}

/// Bracket by sweeping the word slice by slice. Each state pairs up the
/// seam endpoints and the endpoints on the current slice; loops closed by a
/// cap contribute δ. Cost depends on strand width, not on crossing count,
/// so there is no cap. Agrees with [`kauffman_bracket`] wherever both run.
pub fn bracket_by_slices(w: &BooklinkWord) -> LaurentPoly {
    // With no strands at the seam every loop would close inside the sweep,
    // leaving an extra δ to divide out; start at a widest slice instead.
    let counts = w.profile().counts;
    let widest = (0..w.len())
        .max_by_key(|&t| (counts[t], std::cmp::Reverse(t)))
        .unwrap_or(0);
    let w = &crate::construct::rotate(w, widest as i64);
    let s = w.seam_strands();
    if s == 0 {
        return LaurentPoly::one();
    }
    let delta = loop_value();
    // partner[k] for endpoints 0..s (seam) then s.. (current slice).
    let mut states: BTreeMap<Vec<u16>, LaurentPoly> = BTreeMap::new();
    let start: Vec<u16> = (0..2 * s).map(|k| ((k + s) % (2 * s)) as u16).collect();
    states.insert(start, LaurentPoly::one());

    fn cup(state: &[u16], s: usize, i: usize) -> Vec<u16> {
        let at = s + i - 1;
        let mut out: Vec<u16> = state
            .iter()
            .map(|&p| if p as usize >= at { p + 2 } else { p })
            .collect();
        out.splice(at..at, [at as u16 + 1, at as u16]);
        out
    }
    // Returns the new state and whether a closed loop was removed.
    fn cap(state: &[u16], s: usize, i: usize) -> (Vec<u16>, bool) {
        let (a, b) = (s + i - 1, s + i);
        let mut st = state.to_vec();
        let closed = st[a] as usize == b;
        if !closed {
            let (pa, pb) = (st[a] as usize, st[b] as usize);
            st[pa] = pb as u16;
            st[pb] = pa as u16;
        }
        st.drain(a..=b);
        for p in st.iter_mut() {
            if *p as usize > b {
                *p -= 2;
            }
        }
        (st, closed)
    }

    for g in w.generators() {
        let i = g.position;
        let mut next: BTreeMap<Vec<u16>, LaurentPoly> = BTreeMap::new();
        let mut put = |k: Vec<u16>, v: LaurentPoly| {
            let e = next.entry(k).or_default();
            *e = &*e + &v;
        };
        for (st, v) in &states {
            match g.kind {
                GeneratorKind::Cup => put(cup(st, s, i), v.clone()),
                GeneratorKind::Cap => {
                    let (n, closed) = cap(st, s, i);
                    put(n, if closed { v * &delta } else { v.clone() });
                }
                kind => {
                    // Horizontal smoothing is a cap followed by a cup.
                    let (capped, closed) = cap(st, s, i);
                    let horizontal = cup(&capped, s, i);
                    let h = if closed { v * &delta } else { v.clone() };
                    let (eh, ev) = if kind == GeneratorKind::CrossingPos {
                        (1, -1)
                    } else {
                        (-1, 1)
                    };
                    put(horizontal, &h * &LaurentPoly::monomial(eh, 1));
                    put(st.clone(), v * &LaurentPoly::monomial(ev, 1));
                }
            }
        }
        next.retain(|_, v| !v.is_zero());
        states = next;
    }

    let mut out = LaurentPoly::zero();
    for (st, v) in &states {
        // Close slice endpoint k onto seam endpoint k and count loops.
        let mut uf = UnionFind::new(2 * s);
        let mut loops = 2 * s;
        for (k, &p) in st.iter().enumerate() {
            if uf.union(k, p as usize) {
                loops -= 1;
            }
        }
        for k in 0..s {
            if uf.union(k, s + k) {
                loops -= 1;
            }
        }
        out = &out + &(v * &delta.pow(loops as u32 - 1));
    }
    out
}

/// Jones polynomial from [`bracket_by_slices`]; no crossing cap.
pub fn jones_by_slices(w: &BooklinkWord) -> LaurentPoly {
    let writhe = to_planar_diagram(w).writhe();
    let sign = if writhe % 2 == 0 { 1 } else { -1 };
    (&LaurentPoly::monomial(-3 * writhe, sign) * &bracket_by_slices(w)).invert()
}

/// Whether two Jones polynomials can come from the same unoriented link.
/// Reversing one component changes the writhe by `-4 lk`, which multiplies
/// V by a power of `t^3`; for a knot the polynomials must be equal.
pub fn same_up_to_reorientation(a: &LaurentPoly, b: &LaurentPoly) -> bool {
    let (Some((ea, _)), Some((eb, _))) = (a.terms().next(), b.terms().next()) else {
        return a == b;
    };
    (ea - eb) % 12 == 0 && *a == b.shift(ea - eb)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Smoothing {
    A,
    B,
}

/// Replaces crossing generator `k` by one of its smoothings, as a word.
/// Returns `None` when generator `k` is not a crossing.
pub fn smooth(w: &BooklinkWord, k: usize, s: Smoothing) -> Option<BooklinkWord> {
    let g = *w.generators().get(k)?;
    if !g.is_crossing() {
        return None;
    }
    let i = g.position;
    let horizontal = (g.kind == GeneratorKind::CrossingPos) == (s == Smoothing::A);
    let mut gens = w.generators().to_vec();
    if horizontal {
        gens.splice(k..=k, [Generator::cap(i), Generator::cup(i)]);
    } else {
        gens.remove(k);
    }
    Some(BooklinkWord::new(w.seam_strands(), gens).expect("smoothing keeps the word valid"))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::word::parse_word;

    fn word(s: &str) -> BooklinkWord {
        parse_word(s).unwrap()
    }

    #[test]
    fn normalization() {
        assert_eq!(
            kauffman_bracket(&word("strands:1\n")).unwrap(),
            LaurentPoly::one()
        );
        assert_eq!(
            kauffman_bracket(&word("strands:2\n")).unwrap(),
            loop_value()
        );
        assert_eq!(jones(&word("strands:1\n")).unwrap(), LaurentPoly::one());
    }

    #[test]
    fn kink_is_minus_a_cubed() {
        let w = word("strands:0\ncup1 x1+ cap1");
        assert_eq!(kauffman_bracket(&w).unwrap(), LaurentPoly::monomial(3, -1));
        assert_eq!(jones(&w).unwrap(), LaurentPoly::one());
    }

    #[test]
    fn trefoil_jones_up_to_mirror() {
        let v = jones(&word("strands:2\nx1+ x1+ x1+")).unwrap();
        let right = LaurentPoly::from_pairs("4:1;12:1;16:-1").unwrap();
        assert!(v == right || v == right.invert(), "{v}");
        let m = jones(&word("strands:2\nx1- x1- x1-")).unwrap();
        assert_eq!(m, v.invert());
    }

    #[test]
    fn hopf_link_has_half_integer_exponents() {
        let v = jones(&word("strands:2\nx1+ x1+")).unwrap();
        assert!(v.terms().all(|(e, _)| e % 2 == 0 && e % 4 != 0));
    }

    #[test]
    fn skein_on_trefoil() {
        let w = word("strands:2\nx1+ x1+ x1+");
        let a = kauffman_bracket(&smooth(&w, 1, Smoothing::A).unwrap()).unwrap();
        let b = kauffman_bracket(&smooth(&w, 1, Smoothing::B).unwrap()).unwrap();
        let rhs = &(&LaurentPoly::monomial(1, 1) * &a) + &(&LaurentPoly::monomial(-1, 1) * &b);
        assert_eq!(kauffman_bracket(&w).unwrap(), rhs);
    }

    #[test]
    fn slice_sweep_matches_state_sum() {
        for text in [
            "strands:1\n",
            "strands:2\n",
            "strands:0\ncup1 x1+ cap1",
            "strands:2\nx1+ x1+ x1+",
            "strands:3\nx1+ x2- x1+ x2-",
            "strands:0\ncup1 cup3 x2+ x2+ x1- x1- cap3 cap1",
            "strands:2\nx1- cup3 x2+ x3- x2+ x1- x2+ x3- x2+ cap3",
            "strands:2\nx1+ x1+",
        ] {
            let w = word(text);
            assert_eq!(
                bracket_by_slices(&w),
                kauffman_bracket(&w).unwrap(),
                "{text}"
            );
            assert_eq!(jones_by_slices(&w), jones(&w).unwrap(), "{text}");
        }
    }

    #[test]
    fn reversing_a_hopf_component() {
        let v = jones(&word("strands:2\nx1+ x1+")).unwrap();
        let w = jones(&word("strands:2\nx1- x1-")).unwrap();
        assert_ne!(v, w);
        assert!(same_up_to_reorientation(&v, &v.shift(12)));
        assert!(!same_up_to_reorientation(&v, &v.shift(4)));
    }

    #[test]
    fn crossing_cap() {
        let w = word("strands:2\nx1+ x1+ x1+");
        assert_eq!(
            kauffman_bracket_capped(&w, 2),
            Err(InvariantError::TooManyCrossings {
                crossings: 3,
                cap: 2
            })
        );
    }
}
