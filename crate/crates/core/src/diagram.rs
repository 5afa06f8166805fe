//! Crossing-level planar diagrams extracted from words.

use crate::trace::Trace;
use crate::word::{BooklinkWord, GeneratorKind};

#[derive(Debug, Clone)]
pub(crate) struct UnionFind {
    parent: Vec<usize>,
}

impl UnionFind {
    pub(crate) fn new(n: usize) -> Self {
        Self {
            parent: (0..n).collect(),
        }
    }

    pub(crate) fn find(&mut self, mut a: usize) -> usize {
        while self.parent[a] != a {
            self.parent[a] = self.parent[self.parent[a]];
            a = self.parent[a];
        }
        a
    }

    pub(crate) fn union(&mut self, a: usize, b: usize) -> bool {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra == rb {
            return false;
        }
        self.parent[ra] = rb;
        true
    }
}

/// One crossing of a planar diagram.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Crossing {
    /// Index of the source generator in the word.
    pub generator: usize,
    /// Oriented crossing sign (+1 or -1) under the traced orientation.
    pub sign: i8,
    /// Whether the strand from NW to SE is the over strand.
    pub nw_over: bool,
    /// Edge ids at the NW, NE, SE, SW corners, in clockwise order.
    pub ends: [usize; 4],
}

/// The two edge pairs a smoothing joins.
pub type Joins = [(usize, usize); 2];

impl Crossing {
    /// Edge pairs joined by the A- and B-smoothings.
    pub fn smoothings(&self) -> (Joins, Joins) {
        let [nw, ne, se, sw] = self.ends;
        let horizontal = [(nw, ne), (sw, se)];
        let vertical = [(nw, sw), (ne, se)];
        if self.nw_over {
            (horizontal, vertical)
        } else {
            (vertical, horizontal)
        }
    }
}

/// A closed 4-valent diagram. Edges are strand segments between crossing
/// corners; a component without crossings is a single closed edge.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PlanarDiagram {
    pub crossings: Vec<Crossing>,
    pub edge_count: usize,
    pub components: usize,
}

impl PlanarDiagram {
    pub fn writhe(&self) -> i64 {
        self.crossings.iter().map(|c| c.sign as i64).sum()
    }

    /// Edges with no crossing corner on them (crossingless loops).
    pub fn free_loops(&self) -> usize {
        let mut used = vec![false; self.edge_count];
        for c in &self.crossings {
            for &e in &c.ends {
                used[e] = true;
            }
        }
        used.iter().filter(|u| !**u).count()
    }
}

/// Builds the diagram of a word. Slices are glued along strands that pass
/// each generator untouched, caps and cups join their two strands, and the
/// seam closes strand `k` to strand `k`.
pub fn to_planar_diagram(w: &BooklinkWord) -> PlanarDiagram {
    let profile = w.profile();
    let counts = &profile.counts;
    let gens = w.generators();
    let len = gens.len();

    // Slot for (t, p) with t in 0..=len; slice len is glued to slice 0 below.
    let mut offsets = Vec::with_capacity(len + 1);
    let mut total = 0;
    for &c in counts {
        offsets.push(total);
        total += c;
    }
    let slot = |t: usize, p: usize| offsets[t] + p - 1;
    let mut uf = UnionFind::new(total);

    for (k, g) in gens.iter().enumerate() {
        let (t, m, i) = (k + 1, counts[k], g.position);
        match g.kind {
            GeneratorKind::Cup => {
                for p in 1..=m {
                    uf.union(slot(t - 1, p), slot(t, if p >= i { p + 2 } else { p }));
                }
                uf.union(slot(t, i), slot(t, i + 1));
            }
            GeneratorKind::Cap => {
                for p in 1..=m {
                    if p < i {
                        uf.union(slot(t - 1, p), slot(t, p));
                    } else if p > i + 1 {
                        uf.union(slot(t - 1, p), slot(t, p - 2));
                    }
                }
                uf.union(slot(t - 1, i), slot(t - 1, i + 1));
            }
            _ => {
                for p in (1..=m).filter(|&p| p != i && p != i + 1) {
                    uf.union(slot(t - 1, p), slot(t, p));
                }
            }
        }
    }
    for p in 1..=counts[0] {
        uf.union(slot(len, p), slot(0, p));
    }

    let mut edge_of = vec![usize::MAX; total];
    let mut edge_count = 0;
    for s in 0..total {
        let r = uf.find(s);
        if edge_of[r] == usize::MAX {
            edge_of[r] = edge_count;
            edge_count += 1;
        }
        edge_of[s] = edge_of[r];
    }

    let trace = Trace::new(w);
    let mut crossings = Vec::new();
    for (k, g) in gens.iter().enumerate() {
        if !g.is_crossing() {
            continue;
        }
        let i = g.position;
        let nw_over = g.kind == GeneratorKind::CrossingPos;
        // Page angle grows downward; take y up so a forward strand has dy < 0.
        let a = if trace.is_forward(k, i) {
            (1i64, -1i64)
        } else {
            (-1, 1)
        };
        let b = if trace.is_forward(k, i + 1) {
            (-1i64, -1i64)
        } else {
            (1, 1)
        };
        let (o, u) = if nw_over { (a, b) } else { (b, a) };
        let sign = if o.0 * u.1 - o.1 * u.0 > 0 { 1 } else { -1 };
        let e = |t: usize, p: usize| edge_of[slot(t, p)];
        crossings.push(Crossing {
            generator: k,
            sign,
            nw_over,
            ends: [e(k, i), e(k, i + 1), e(k + 1, i + 1), e(k + 1, i)],
        });
    }

    PlanarDiagram {
        crossings,
        edge_count,
        components: trace.component_count(),
    }
}
