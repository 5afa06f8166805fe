//! Walking strands through a word: component partition, page-angle
//! directions, and the monotone arcs between critical points.

use crate::word::{BooklinkWord, GeneratorKind};

/// A point on a strand as it crosses a slice. `slice` is always in
/// `0..len` (slice `len` is the seam again), except for the empty word
/// where it is 0.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct StrandPoint {
    pub slice: usize,
    pub position: usize,
    /// Travelling in the direction of increasing page angle.
    pub forward: bool,
}

/// One passage of a strand through a crossing generator.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Pass {
    pub generator: usize,
    pub over: bool,
}

/// Slot numbering for (slice, position) pairs over slices `0..len`.
#[derive(Debug, Clone)]
pub(crate) struct Slots {
    offsets: Vec<usize>,
    total: usize,
}

impl Slots {
    pub(crate) fn new(counts: &[usize]) -> Self {
        let slices = counts.len().saturating_sub(1).max(1);
        let mut offsets = Vec::with_capacity(slices);
        let mut total = 0;
        for &c in &counts[..slices] {
            offsets.push(total);
            total += c;
        }
        Self { offsets, total }
    }

    pub(crate) fn index(&self, slice: usize, position: usize) -> usize {
        let slice = if slice == self.offsets.len() {
            0
        } else {
            slice
        };
        self.offsets[slice] + position - 1
    }

    pub(crate) fn total(&self) -> usize {
        self.total
    }
}

/// Moves one step along the strand. Returns the next point and, when a
/// crossing generator was passed, the passage.
pub(crate) fn step(w: &BooklinkWord, at: StrandPoint) -> (StrandPoint, Option<Pass>) {
    let gens = w.generators();
    let len = gens.len();
    if len == 0 {
        return (at, None);
    }
    let p = at.position;
    if at.forward {
        let g = gens[at.slice];
        let next = (at.slice + 1) % len;
        let i = g.position;
        match g.kind {
            GeneratorKind::CrossingPos | GeneratorKind::CrossingNeg => {
                let pos = g.kind == GeneratorKind::CrossingPos;
                let (np, over) = if p == i {
                    (i + 1, pos)
                } else if p == i + 1 {
                    (i, !pos)
                } else {
                    return (
                        StrandPoint {
                            slice: next,
                            position: p,
                            forward: true,
                        },
                        None,
                    );
                };
                (
                    StrandPoint {
                        slice: next,
                        position: np,
                        forward: true,
                    },
                    Some(Pass {
                        generator: at.slice,
                        over,
                    }),
                )
            }
            GeneratorKind::Cup => {
                let np = if p >= i { p + 2 } else { p };
                (
                    StrandPoint {
                        slice: next,
                        position: np,
                        forward: true,
                    },
                    None,
                )
            }
            GeneratorKind::Cap => {
                if p == i || p == i + 1 {
                    let other = if p == i { i + 1 } else { i };
                    (
                        StrandPoint {
                            slice: at.slice,
                            position: other,
                            forward: false,
                        },
                        None,
                    )
                } else {
                    let np = if p > i + 1 { p - 2 } else { p };
                    (
                        StrandPoint {
                            slice: next,
                            position: np,
                            forward: true,
                        },
                        None,
                    )
                }
            }
        }
    } else {
        let top = if at.slice == 0 { len } else { at.slice };
        let gi = top - 1;
        let g = gens[gi];
        let i = g.position;
        match g.kind {
            GeneratorKind::CrossingPos | GeneratorKind::CrossingNeg => {
                let pos = g.kind == GeneratorKind::CrossingPos;
                // Bottom position i+1 is the end of the NW-SE strand.
                let (np, over) = if p == i + 1 {
                    (i, pos)
                } else if p == i {
                    (i + 1, !pos)
                } else {
                    return (
                        StrandPoint {
                            slice: gi,
                            position: p,
                            forward: false,
                        },
                        None,
                    );
                };
                (
                    StrandPoint {
                        slice: gi,
                        position: np,
                        forward: false,
                    },
                    Some(Pass {
                        generator: gi,
                        over,
                    }),
                )
            }
            GeneratorKind::Cup => {
                if p == i || p == i + 1 {
                    let other = if p == i { i + 1 } else { i };
                    (
                        StrandPoint {
                            slice: at.slice,
                            position: other,
                            forward: true,
                        },
                        None,
                    )
                } else {
                    let np = if p > i + 1 { p - 2 } else { p };
                    (
                        StrandPoint {
                            slice: gi,
                            position: np,
                            forward: false,
                        },
                        None,
                    )
                }
            }
            GeneratorKind::Cap => {
                let np = if p >= i { p + 2 } else { p };
                (
                    StrandPoint {
                        slice: gi,
                        position: np,
                        forward: false,
                    },
                    None,
                )
            }
        }
    }
}

/// Result of tracing every strand of a word.
#[derive(Debug, Clone)]
pub struct Trace {
    slots: Slots,
    component: Vec<usize>,
    forward: Vec<bool>,
    /// Crossing passages of each component in traversal order.
    pub passes: Vec<Vec<Pass>>,
    /// First point of each component's traversal.
    pub starts: Vec<StrandPoint>,
}

impl Trace {
    pub fn new(w: &BooklinkWord) -> Self {
        let profile = w.profile();
        let slots = Slots::new(&profile.counts);
        let n = slots.total();
        let mut component = vec![usize::MAX; n];
        let mut forward = vec![false; n];
        let mut passes = Vec::new();
        let mut starts = Vec::new();
        let slices = w.len().max(1);

        for slice in 0..slices {
            for position in 1..=profile.counts[slice] {
                if component[slots.index(slice, position)] != usize::MAX {
                    continue;
                }
                let id = passes.len();
                let start = StrandPoint {
                    slice,
                    position,
                    forward: true,
                };
                let mut seen = Vec::new();
                let mut at = start;
                loop {
                    let k = slots.index(at.slice, at.position);
                    if component[k] != usize::MAX {
                        break;
                    }
                    component[k] = id;
                    forward[k] = at.forward;
                    let (next, pass) = step(w, at);
                    seen.extend(pass);
                    at = next;
                }
                passes.push(seen);
                starts.push(start);
            }
        }
        Self {
            slots,
            component,
            forward,
            passes,
            starts,
        }
    }

    pub fn component_count(&self) -> usize {
        self.passes.len()
    }

    pub fn component_of(&self, slice: usize, position: usize) -> usize {
        self.component[self.slots.index(slice, position)]
    }

    pub fn is_forward(&self, slice: usize, position: usize) -> bool {
        self.forward[self.slots.index(slice, position)]
    }
}

/// Number of closed curves in the word.
pub fn trace_components(w: &BooklinkWord) -> usize {
    Trace::new(w).component_count()
}

/// A maximal monotone arc, read from its cap up to its cup.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Arc {
    /// Generator index of the cap where the arc starts.
    pub cap: usize,
    /// Position (at the slice above the cap) of the leg this arc leaves by.
    pub leg: usize,
    /// Generator index of the cup where the arc ends.
    pub cup: usize,
    /// Points visited going up, starting at the cap leg.
    pub points: Vec<(usize, usize)>,
    /// Crossings met going up, with whether this arc is the over strand.
    pub passes: Vec<Pass>,
    /// For each point, the crossing passed on the way to the next point.
    pub steps: Vec<Option<Pass>>,
}

impl Arc {
    /// Whether every crossing on the arc has the same over/under status.
    pub fn is_pure(&self) -> bool {
        self.passes.windows(2).all(|p| p[0].over == p[1].over)
    }

    pub fn wraps(&self) -> bool {
        let mut seen = std::collections::HashSet::new();
        !self.points.iter().all(|(s, _)| seen.insert(*s))
    }
}

/// Follows the leg of the cap at generator `cap` that sits at `leg`, going
/// against the page angle until the arc turns at a cup.
pub fn arc_from(w: &BooklinkWord, cap: usize, leg: usize) -> Arc {
    debug_assert_eq!(w.generators()[cap].kind, GeneratorKind::Cap);
    let mut at = StrandPoint {
        slice: cap,
        position: leg,
        forward: false,
    };
    let mut points = Vec::new();
    let mut steps = Vec::new();
    loop {
        points.push((at.slice, at.position));
        let (next, pass) = step(w, at);
        if next.forward {
            let top = if at.slice == 0 { w.len() } else { at.slice };
            steps.push(None);
            let passes = steps.iter().flatten().copied().collect();
            return Arc {
                cap,
                leg,
                cup: top - 1,
                points,
                passes,
                steps,
            };
        }
        steps.push(pass);
        at = next;
    }
}

/// Both arcs leaving every cap, ordered by cap then leg position.
pub fn all_arcs(w: &BooklinkWord) -> Vec<Arc> {
    w.generators()
        .iter()
        .enumerate()
        .filter(|(_, g)| g.kind == GeneratorKind::Cap)
        .flat_map(|(k, g)| [arc_from(w, k, g.position), arc_from(w, k, g.position + 1)])
        .collect()
}

/// The arcs traversed against the page angle under the traced orientation,
/// one per cap, ordered by cap.
pub fn backward_arcs(w: &BooklinkWord) -> Vec<Arc> {
    let trace = Trace::new(w);
    w.generators()
        .iter()
        .enumerate()
        .filter(|(_, g)| g.kind == GeneratorKind::Cap)
        .map(|(k, g)| {
            let leg = if trace.is_forward(k, g.position) {
                g.position + 1
            } else {
                g.position
            };
            arc_from(w, k, leg)
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::word::parse_word;

    #[test]
    fn component_counts() {
        let cases = [
            ("strands:2\nx1+ x1+ x1+", 1),
            ("strands:1\ncup1 cap1", 2),
            ("strands:2\n", 2),
            ("strands:2\nx1+ x1+", 2),
            ("strands:0\ncup1 cap1", 1),
            ("strands:0\n", 0),
            ("strands:2\ncap1 cup1", 1),
        ];
        for (text, n) in cases {
            assert_eq!(trace_components(&parse_word(text).unwrap()), n, "{text}");
        }
    }

    #[test]
    fn directions_flip_at_critical_points() {
        let w = parse_word("strands:1\ncup2 cap1").unwrap();
        let t = Trace::new(&w);
        assert_eq!(t.component_count(), 1);
        // Slice 1 holds the zigzag: original strand down, middle leg up, new leg down.
        assert!(t.is_forward(1, 1));
        assert!(!t.is_forward(1, 2));
        assert!(t.is_forward(1, 3));
    }

    #[test]
    fn each_crossing_passed_twice() {
        let w = parse_word("strands:2\nx1+ x1+ x1+").unwrap();
        let t = Trace::new(&w);
        assert_eq!(t.passes[0].len(), 6);
        let overs = t.passes[0].iter().filter(|p| p.over).count();
        assert_eq!(overs, 3);
    }

    #[test]
    fn arcs_of_a_plat() {
        let w = parse_word("strands:0\ncup1 cup3 x2+ x2+ x2+ cap3 cap1").unwrap();
        assert_eq!(all_arcs(&w).len(), 4);
        let back = backward_arcs(&w);
        assert_eq!(back.len(), 2);
        for a in &back {
            assert_eq!(w.generators()[a.cup].kind, GeneratorKind::Cup);
        }
    }

    #[test]
    fn seam_crossing_arc() {
        let w = parse_word("strands:2\ncap1 cup1").unwrap();
        let arcs = backward_arcs(&w);
        assert_eq!(arcs.len(), 1);
        assert_eq!(arcs[0].cup, 1);
        assert!(arcs[0].passes.is_empty());
    }
}
