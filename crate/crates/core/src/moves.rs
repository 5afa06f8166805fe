//! Rewrites that change a word without changing its link type.
//!
//! Arc resolution follows the classical Alexander trick. An arc that runs
//! against the page angle, and that is entirely over (or entirely under)
//! the rest of the diagram, is lifted off and replaced by an arc running
//! the other way around the axis. The new arc crosses everything with the
//! same over/under status. Mixed or self-overlapping arcs are first cut into
//! such pieces by zigzags.

use std::cmp::Ordering;

use thiserror::Error;

use crate::construct::align_min_to_seam;
use crate::trace::{arc_from, backward_arcs, Arc};
use crate::word::{BooklinkWord, Generator, GeneratorKind};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum MoveError {
    #[error("position {position} is not available at slice {slice}")]
    PositionError { slice: usize, position: usize },
    #[error("invalid word: {0}")]
    InvalidWord(String),
    #[error("the outermost strand cannot be removed")]
    NotDestabilizable,
    #[error("no exchange or cancellation pattern at generator {0}")]
    PatternMismatch(usize),
    #[error("every plat arc meets a crossing")]
    NoFreeStrand,
    #[error("not a plat: the seam carries {0} strands")]
    NotAPlat(usize),
    #[error("word has no caps, so no arc to resolve")]
    NoBackwardArc,
    #[error("invalid choice: {0}")]
    InvalidChoice(String),
    #[error("search budget of {0} resolutions exceeded")]
    BudgetExceeded(usize),
    #[error("braid count is 0; nothing to trade")]
    NotTradeable,
}

fn rebuild(seam: usize, gens: Vec<Generator>) -> BooklinkWord {
    BooklinkWord::new(seam, gens).expect("move preserves validity")
}

/// Inserts a zigzag on the strand at position `i` of slice `t`: a cup just
/// above it and a cap joining it to the cup's inner leg.
pub fn add_critical_pair(w: &BooklinkWord, t: usize, i: usize) -> Result<BooklinkWord, MoveError> {
    let counts = w.profile().counts;
    if t >= counts.len() || i == 0 || i > counts[t] {
        return Err(MoveError::PositionError {
            slice: t,
            position: i,
        });
    }
    let mut gens = w.generators().to_vec();
    gens.splice(t..t, [Generator::cup(i + 1), Generator::cap(i)]);
    Ok(rebuild(w.seam_strands(), gens))
}

/// Removes a zigzag starting at generator `k`.
pub fn cancel_critical_pair(w: &BooklinkWord, k: usize) -> Result<BooklinkWord, MoveError> {
    let gens = w.generators();
    let (Some(a), Some(b)) = (gens.get(k), gens.get(k + 1)) else {
        return Err(MoveError::PatternMismatch(k));
    };
    let zigzag = a.kind == GeneratorKind::Cup
        && b.kind == GeneratorKind::Cap
        && (a.position == b.position + 1 || b.position == a.position + 1);
    if !zigzag {
        return Err(MoveError::PatternMismatch(k));
    }
    let mut gens = gens.to_vec();
    gens.drain(k..k + 2);
    Ok(rebuild(w.seam_strands(), gens))
}

/// Adds an outermost strand that winds once around the axis and crosses
/// its neighbour once. The crossing goes at the seam when the seam has a
/// strand, otherwise at the last slice that has one.
pub fn stabilize(w: &BooklinkWord) -> Result<BooklinkWord, MoveError> {
    let counts = w.profile().counts;
    let t = (0..counts.len())
        .rev()
        .find(|&t| counts[t] >= 1)
        .ok_or_else(|| MoveError::InvalidWord("empty link".into()))?;
    let mut gens = w.generators().to_vec();
    gens.insert(t, Generator::pos(counts[t]));
    Ok(rebuild(w.seam_strands() + 1, gens))
}

/// Whether generator `g`, applied to `m` strands, involves the outermost one.
fn touches_top(g: &Generator, m: usize) -> bool {
    match g.kind {
        GeneratorKind::Cup => g.position == m + 1,
        _ => g.position + 1 == m,
    }
}

fn top_touchers(w: &BooklinkWord) -> Vec<usize> {
    let counts = w.profile().counts;
    w.generators()
        .iter()
        .enumerate()
        .filter(|(k, g)| touches_top(g, counts[*k]))
        .map(|(k, _)| k)
        .collect()
}

/// Inverse of [`stabilize`]: the outermost track meets exactly one
/// generator, a crossing, and is removed along with it.
pub fn destabilize(w: &BooklinkWord) -> Result<BooklinkWord, MoveError> {
    let counts = w.profile().counts;
    if counts.contains(&0) {
        return Err(MoveError::NotDestabilizable);
    }
    let touch = top_touchers(w);
    match touch.as_slice() {
        [k] if w.generators()[*k].is_crossing() => {
            let mut gens = w.generators().to_vec();
            gens.remove(*k);
            Ok(rebuild(w.seam_strands() - 1, gens))
        }
        _ => Err(MoveError::NotDestabilizable),
    }
}

/// Exchange move: the outermost track meets exactly two generators, both
/// crossings of opposite sign, one of them at `site`. Both signs flip.
pub fn exchange_move(w: &BooklinkWord, site: usize) -> Result<BooklinkWord, MoveError> {
    let gens = w.generators();
    let touch = top_touchers(w);
    let [a, b] = touch.as_slice() else {
        return Err(MoveError::PatternMismatch(site));
    };
    let (ga, gb) = (gens[*a], gens[*b]);
    let ok =
        ga.is_crossing() && gb.is_crossing() && ga.kind != gb.kind && (site == *a || site == *b);
    if !ok {
        return Err(MoveError::PatternMismatch(site));
    }
    let mut gens = gens.to_vec();
    gens[*a] = ga.mirrored();
    gens[*b] = gb.mirrored();
    Ok(rebuild(w.seam_strands(), gens))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Routing {
    Innermost,
    Outermost,
}

impl std::str::FromStr for Routing {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "innermost" => Ok(Routing::Innermost),
            "outermost" => Ok(Routing::Outermost),
            _ => Err(format!("routing must be innermost or outermost, not `{s}`")),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Entity {
    Old(usize),
    New,
}

/// Crossings carrying the strand at `from` to `to`, passing over or under
/// every strand in between.
fn transit(from: usize, to: usize, over: bool) -> Vec<Generator> {
    match from.cmp(&to) {
        Ordering::Greater => (to..from)
            .rev()
            .map(|q| {
                if over {
                    Generator::neg(q)
                } else {
                    Generator::pos(q)
                }
            })
            .collect(),
        Ordering::Less => (from..to)
            .map(|q| {
                if over {
                    Generator::pos(q)
                } else {
                    Generator::neg(q)
                }
            })
            .collect(),
        Ordering::Equal => Vec::new(),
    }
}

/// Old generator index to new generator index, for the generators kept.
pub type IndexMap = Vec<Option<usize>>;

/// Resolves the arc leaving the cap at generator `cap` by its leg at
/// `leg`. The arc must be pure and must not revisit a slice.
pub fn resolve_pure(
    w: &BooklinkWord,
    cap: usize,
    leg: usize,
    routing: Routing,
) -> Result<(BooklinkWord, IndexMap), MoveError> {
    let gens = w.generators();
    match gens.get(cap) {
        Some(g) if g.kind == GeneratorKind::Cap && (leg == g.position || leg == g.position + 1) => {
        }
        _ => {
            return Err(MoveError::InvalidChoice(format!(
                "no cap leg {leg} at generator {cap}"
            )))
        }
    }
    let arc = arc_from(w, cap, leg);
    if !arc.is_pure() || arc.wraps() {
        return Err(MoveError::InvalidChoice(format!(
            "arc from generator {cap} is not pure"
        )));
    }
    let over = arc.passes.first().is_none_or(|p| p.over);
    let len = gens.len();
    let counts = w.profile().counts;
    let cup = arc.cup;

    let mut alpha_at = vec![None; len];
    for &(s, p) in &arc.points {
        alpha_at[s] = Some(p);
    }
    let mut has_new = vec![false; len];
    let mut t = (cap + 1) % len;
    loop {
        has_new[t] = true;
        if t == cup {
            break;
        }
        t = (t + 1) % len;
    }
    debug_assert!((0..len).all(|t| has_new[t] != alpha_at[t].is_some()));

    let entities = |t: usize| -> Vec<Entity> {
        let t = t % len;
        let mut v: Vec<Entity> = (1..=counts[t])
            .filter(|&p| alpha_at[t] != Some(p))
            .map(Entity::Old)
            .collect();
        if has_new[t] {
            match routing {
                Routing::Innermost => v.insert(0, Entity::New),
                Routing::Outermost => v.push(Entity::New),
            }
        }
        v
    };
    let index_of = |v: &[Entity], e: Entity| v.iter().position(|x| *x == e).unwrap() + 1;

    let mut out = Vec::with_capacity(len);
    let mut map = vec![None; len];
    for (g, gen) in gens.iter().enumerate() {
        let before = entities(g);
        let after = entities(g + 1);
        let i = gen.position;
        if g == cap {
            let other = if leg == i { i + 1 } else { i };
            let from = index_of(&before, Entity::Old(other));
            let to = match routing {
                Routing::Innermost => 1,
                Routing::Outermost => before.len(),
            };
            out.extend(transit(from, to, over));
        } else if g == cup {
            let beta = if alpha_at[(g + 1) % len] == Some(i) {
                i + 1
            } else {
                i
            };
            let from = index_of(&before, Entity::New);
            let to = index_of(&after, Entity::Old(beta));
            out.extend(transit(from, to, over));
        } else if gen.is_crossing() && matches!(alpha_at[g], Some(p) if p == i || p == i + 1) {
            // The arc's own crossings vanish with it.
        } else {
            let position = match gen.kind {
                GeneratorKind::Cup => index_of(&after, Entity::Old(i)),
                _ => index_of(&before, Entity::Old(i)),
            };
            map[g] = Some(out.len());
            out.push(Generator { position, ..*gen });
        }
    }
    Ok((rebuild(entities(0).len(), out), map))
}

/// Where to cut an arc: the first point after which it either changes
/// over/under status or comes back to a slice it has already visited.
fn split_point(arc: &Arc) -> Option<usize> {
    let mut seen = std::collections::HashSet::from([arc.points[0].0]);
    let mut status = None;
    for k in 0..arc.points.len() - 1 {
        if let Some(p) = arc.steps[k] {
            match status {
                Some(s) if s != p.over => return Some(k),
                _ => status = Some(p.over),
            }
        }
        if !seen.insert(arc.points[k + 1].0) {
            return Some(k);
        }
    }
    None
}

fn check_choice(w: &BooklinkWord, arc: usize) -> Result<Arc, MoveError> {
    let arcs = backward_arcs(w);
    if arcs.is_empty() {
        return Err(MoveError::NoBackwardArc);
    }
    let n = arcs.len();
    arcs.into_iter()
        .nth(arc)
        .ok_or_else(|| MoveError::InvalidChoice(format!("arc {arc} of {n}")))
}

/// Resolves backward arc number `arc` (see [`backward_arcs`]), cutting it
/// into pure pieces first when needed. Lowers the bridge index by one.
pub fn resolve_bridge(
    w: &BooklinkWord,
    arc: usize,
    routing: Routing,
) -> Result<BooklinkWord, MoveError> {
    let first = check_choice(w, arc)?;
    let (mut word, mut cap, mut leg) = (w.clone(), first.cap, first.leg);
    // Each round resolves one piece; the bound only guards against a bug.
    for _ in 0..10 * (w.len() + 2) {
        let a = arc_from(&word, cap, leg);
        let Some(k) = split_point(&a) else {
            return Ok(resolve_pure(&word, cap, leg, routing)?.0);
        };
        let (slice, q) = a.points[k];
        // Choose the zigzag so the resolved piece's new arc does not cross
        // the remaining piece where it leaves the zigzag's cap.
        let zig = match routing {
            Routing::Innermost => [Generator::cup(q), Generator::cap(q + 1)],
            Routing::Outermost => [Generator::cup(q + 1), Generator::cap(q)],
        };
        let mut gens = word.generators().to_vec();
        gens.splice(slice..slice, zig);
        let zz = rebuild(word.seam_strands(), gens);
        let lower_cap = if cap >= slice { cap + 2 } else { cap };
        let (next, map) = resolve_pure(&zz, lower_cap, leg, routing)?;
        cap = map[slice + 1].expect("zigzag cap survives");
        let p = next.generators()[cap].position;
        leg = match routing {
            Routing::Innermost => p + 1,
            Routing::Outermost => p,
        };
        word = next;
    }
    Err(MoveError::InvalidChoice(
        "arc resolution did not terminate".into(),
    ))
}

/// On a plat (no strands at the seam), resolves an arc that meets no
/// crossing. The result has braid count 1.
pub fn plat_free_strand_resolve(w: &BooklinkWord) -> Result<BooklinkWord, MoveError> {
    if w.seam_strands() != 0 || w.is_empty() {
        return Err(MoveError::NotAPlat(w.seam_strands()));
    }
    let free = crate::trace::all_arcs(w)
        .into_iter()
        .find(|a| a.passes.is_empty() && !a.wraps())
        .ok_or(MoveError::NoFreeStrand)?;
    Ok(resolve_pure(w, free.cap, free.leg, Routing::Innermost)?.0)
}

/// Trades a strand for a critical pair: `(d, n)` becomes `(d + 1, n - 1)`.
///
/// With the minimal slice at the seam, the innermost strand runs untouched
/// from the last generator involving position 1, through the seam, to the
/// first such generator. That stretch is swapped for an innermost arc
/// running back the other way, from a new cap after the last generator up
/// to a new cup before the first.
pub fn trade_braid_for_bridge(w: &BooklinkWord) -> Result<BooklinkWord, MoveError> {
    let w = align_min_to_seam(w);
    let s = w.seam_strands();
    if s == 0 {
        return Err(MoveError::NotTradeable);
    }
    let gens = w.generators();
    let touching: Vec<usize> = (0..gens.len()).filter(|&k| gens[k].touches(1)).collect();
    let shift = |g: &Generator, by: isize| Generator {
        position: (g.position as isize + by) as usize,
        ..*g
    };
    let Some((&first, &last)) = touching.first().zip(touching.last()) else {
        // The innermost strand is a loop on its own.
        let mut out: Vec<Generator> = gens.iter().map(|g| shift(g, -1)).collect();
        out.extend([Generator::cup(1), Generator::cap(1)]);
        return Ok(rebuild(s - 1, out));
    };
    let mut out = Vec::with_capacity(gens.len() + 2);
    out.extend(gens[..first].iter().map(|g| shift(g, -1)));
    out.push(Generator::cup(1));
    out.extend(gens[first..=last].iter().map(|g| shift(g, 1)));
    out.push(Generator::cap(1));
    out.extend(gens[last + 1..].iter().map(|g| shift(g, -1)));
    Ok(rebuild(s - 1, out))
}

/// One pass of cyclic free cancellation: removes the first pair `x_i^e`,
/// `x_i^-e` separated only by generators that commute with `x_i`.
fn cancel_pair(gens: &[Generator]) -> Option<Vec<Generator>> {
    let len = gens.len();
    for k in 0..len {
        let g = gens[k];
        for step in 1..len {
            let j = (k + step) % len;
            let h = gens[j];
            if h.position == g.position && h.kind != g.kind {
                let mut out = gens.to_vec();
                let (a, b) = (k.max(j), k.min(j));
                out.remove(a);
                out.remove(b);
                return Some(out);
            }
            if h.position.abs_diff(g.position) < 2 {
                break;
            }
        }
    }
    None
}

/// Shortens a braid word (no caps or cups) without changing its closure:
/// cyclic free cancellation past commuting generators, and Markov
/// destabilization of the outermost or innermost strand when it meets a
/// single crossing. Words with caps are returned unchanged.
pub fn simplify_braid(w: &BooklinkWord) -> BooklinkWord {
    if w.bridge_index() > 0 {
        return w.clone();
    }
    let mut n = w.seam_strands();
    let mut gens = w.generators().to_vec();
    loop {
        if let Some(next) = cancel_pair(&gens) {
            gens = next;
            continue;
        }
        let top: Vec<usize> = (0..gens.len())
            .filter(|&k| gens[k].position + 1 == n)
            .collect();
        if let [k] = top.as_slice() {
            gens.remove(*k);
            n -= 1;
            continue;
        }
        // Conjugating by the half twist turns position 1 into the top.
        let bottom: Vec<usize> = (0..gens.len()).filter(|&k| gens[k].position == 1).collect();
        if let [k] = bottom.as_slice() {
            gens.remove(*k);
            for g in &mut gens {
                g.position -= 1;
            }
            n -= 1;
            continue;
        }
        return rebuild(n, gens);
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Strategy {
    Greedy,
    Exhaustive(usize),
}

fn better(a: &BooklinkWord, b: &BooklinkWord) -> bool {
    (a.braid_count(), a.serialize()) < (b.braid_count(), b.serialize())
}

fn greedy_step(w: &BooklinkWord) -> Result<BooklinkWord, MoveError> {
    let arcs = backward_arcs(w).len();
    let mut best: Option<BooklinkWord> = None;
    for a in 0..arcs {
        for r in [Routing::Innermost, Routing::Outermost] {
            let cand = resolve_bridge(w, a, r)?;
            // Strict comparison keeps the first (lowest arc, innermost) on ties.
            if best
                .as_ref()
                .is_none_or(|b| cand.braid_count() < b.braid_count())
            {
                best = Some(cand);
            }
        }
    }
    best.ok_or(MoveError::NoBackwardArc)
}

fn exhaustive(
    w: &BooklinkWord,
    budget: usize,
    used: &mut usize,
) -> Result<BooklinkWord, MoveError> {
    if w.bridge_index() == 0 {
        return Ok(simplify_braid(w));
    }
    let arcs = backward_arcs(w).len();
    let mut best: Option<BooklinkWord> = None;
    for a in 0..arcs {
        for r in [Routing::Innermost, Routing::Outermost] {
            *used += 1;
            if *used > budget {
                return Err(MoveError::BudgetExceeded(budget));
            }
            let done = exhaustive(&resolve_bridge(w, a, r)?, budget, used)?;
            if best.as_ref().is_none_or(|b| better(&done, b)) {
                best = Some(done);
            }
        }
    }
    best.ok_or(MoveError::NoBackwardArc)
}

/// Resolves arcs until no caps remain, then shortens the braid with
/// [`simplify_braid`].
pub fn to_braid(w: &BooklinkWord, strategy: Strategy) -> Result<BooklinkWord, MoveError> {
    match strategy {
        Strategy::Greedy => {
            let mut w = w.clone();
            while w.bridge_index() > 0 {
                w = greedy_step(&w)?;
            }
            Ok(simplify_braid(&w))
        }
        Strategy::Exhaustive(budget) => exhaustive(w, budget, &mut 0),
    }
}
