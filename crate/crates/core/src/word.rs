//! Booklink words: a seam strand count plus a cyclic sequence of crossing,
//! cap and cup generators.
//!
//! Positions are 1-based and count outward from the binding axis, so
//! position 1 is the innermost strand. A word is read top to bottom in the
//! direction of increasing page angle; after the last generator, strand `k`
//! closes back to strand `k` at the seam.

use std::fmt;
use std::str::FromStr;

use thiserror::Error;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum GeneratorKind {
    /// Strand `i` passes over strand `i + 1`.
    CrossingPos,
    /// Strand `i + 1` passes over strand `i`.
    CrossingNeg,
    /// Joins strands `i` and `i + 1` at a local maximum of the page angle.
    Cap,
    /// Creates strands `i` and `i + 1` at a local minimum of the page angle.
    Cup,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Generator {
    pub kind: GeneratorKind,
    pub position: usize,
}

impl Generator {
    pub fn pos(i: usize) -> Self {
        Self {
            kind: GeneratorKind::CrossingPos,
            position: i,
        }
    }

    pub fn neg(i: usize) -> Self {
        Self {
            kind: GeneratorKind::CrossingNeg,
            position: i,
        }
    }

    pub fn cap(i: usize) -> Self {
        Self {
            kind: GeneratorKind::Cap,
            position: i,
        }
    }

    pub fn cup(i: usize) -> Self {
        Self {
            kind: GeneratorKind::Cup,
            position: i,
        }
    }

    pub fn is_crossing(&self) -> bool {
        matches!(
            self.kind,
            GeneratorKind::CrossingPos | GeneratorKind::CrossingNeg
        )
    }

    /// Crossing with the opposite sign; caps and cups are returned unchanged.
    pub fn mirrored(self) -> Self {
        let kind = match self.kind {
            GeneratorKind::CrossingPos => GeneratorKind::CrossingNeg,
            GeneratorKind::CrossingNeg => GeneratorKind::CrossingPos,
            k => k,
        };
        Self { kind, ..self }
    }

    /// Strand count after this generator, given `m` strands before it.
    pub fn count_after(&self, m: usize) -> usize {
        match self.kind {
            GeneratorKind::Cap => m - 2,
            GeneratorKind::Cup => m + 2,
            _ => m,
        }
    }

    /// Whether the position precondition holds with `m` strands present.
    pub fn fits(&self, m: usize) -> bool {
        let i = self.position;
        match self.kind {
            GeneratorKind::Cup => i >= 1 && i <= m + 1,
            _ => i >= 1 && i < m,
        }
    }

    /// Whether the generator moves or touches the strand at position `p`
    /// (for a cup: whether `p` is shifted or created).
    pub fn touches(&self, p: usize) -> bool {
        let i = self.position;
        match self.kind {
            GeneratorKind::Cup => p >= i,
            _ => p == i || p == i + 1,
        }
    }
}

impl fmt::Display for Generator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let i = self.position;
        match self.kind {
            GeneratorKind::CrossingPos => write!(f, "x{i}+"),
            GeneratorKind::CrossingNeg => write!(f, "x{i}-"),
            GeneratorKind::Cap => write!(f, "cap{i}"),
            GeneratorKind::Cup => write!(f, "cup{i}"),
        }
    }
}

impl FromStr for Generator {
    type Err = ();

    fn from_str(tok: &str) -> Result<Self, ()> {
        fn index(digits: &str) -> Result<usize, ()> {
            if digits.is_empty() || !digits.bytes().all(|b| b.is_ascii_digit()) {
                return Err(());
            }
            match digits.parse::<usize>() {
                Ok(i) if i >= 1 => Ok(i),
                _ => Err(()),
            }
        }
        if let Some(rest) = tok.strip_prefix("cap") {
            return index(rest).map(Generator::cap);
        }
        if let Some(rest) = tok.strip_prefix("cup") {
            return index(rest).map(Generator::cup);
        }
        if let Some(rest) = tok.strip_prefix('x') {
            if let Some(d) = rest.strip_suffix('+') {
                return index(d).map(Generator::pos);
            }
            if let Some(d) = rest.strip_suffix('-') {
                return index(d).map(Generator::neg);
            }
        }
        Err(())
    }
}

/// One broken invariant found by [`validate`].
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Violation {
    #[error("generator {index} ({generator}) does not fit {strands} strands")]
    Position {
        index: usize,
        generator: Generator,
        strands: usize,
    },
    #[error("word ends with {found} strands but the seam has {expected}")]
    Closure { expected: usize, found: usize },
    #[error("{caps} caps but {cups} cups")]
    Parity { caps: usize, cups: usize },
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum WordError {
    #[error("syntax error on line {line}: {message}")]
    Syntax { line: usize, message: String },
    #[error(transparent)]
    Invalid(#[from] Violation),
}

/// Strand count on every page slice: entry 0 is the seam, entry `t` the
/// slice after generator `t`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SliceProfile {
    pub counts: Vec<usize>,
}

impl SliceProfile {
    pub fn min(&self) -> usize {
        self.counts.iter().copied().min().unwrap_or(0)
    }
}

/// Checks every word invariant and reports all violations.
pub fn validate(
    seam_strands: usize,
    generators: &[Generator],
) -> Result<SliceProfile, Vec<Violation>> {
    let mut violations = Vec::new();
    let mut counts = Vec::with_capacity(generators.len() + 1);
    let mut m = seam_strands;
    counts.push(m);
    for (index, g) in generators.iter().enumerate() {
        if !g.fits(m) {
            violations.push(Violation::Position {
                index,
                generator: *g,
                strands: m,
            });
        }
        m = match g.kind {
            GeneratorKind::Cap => m.saturating_sub(2),
            GeneratorKind::Cup => m + 2,
            _ => m,
        };
        counts.push(m);
    }
    if m != seam_strands {
        violations.push(Violation::Closure {
            expected: seam_strands,
            found: m,
        });
    }
    let caps = generators
        .iter()
        .filter(|g| g.kind == GeneratorKind::Cap)
        .count();
    let cups = generators
        .iter()
        .filter(|g| g.kind == GeneratorKind::Cup)
        .count();
    if caps != cups {
        violations.push(Violation::Parity { caps, cups });
    }
    if violations.is_empty() {
        Ok(SliceProfile { counts })
    } else {
        Err(violations)
    }
}

/// A valid booklink word. Construction checks every invariant, so all
/// operations on a `BooklinkWord` may assume a well-formed closed word.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct BooklinkWord {
    seam_strands: usize,
    generators: Vec<Generator>,
}

impl BooklinkWord {
    pub fn new(seam_strands: usize, generators: Vec<Generator>) -> Result<Self, WordError> {
        match validate(seam_strands, &generators) {
            Ok(_) => Ok(Self {
                seam_strands,
                generators,
            }),
            Err(mut v) => Err(WordError::Invalid(v.remove(0))),
        }
    }

    /// Empty word on `n` strands: the closure of the trivial braid.
    pub fn trivial(n: usize) -> Self {
        Self {
            seam_strands: n,
            generators: Vec::new(),
        }
    }

    pub fn seam_strands(&self) -> usize {
        self.seam_strands
    }

    pub fn generators(&self) -> &[Generator] {
        &self.generators
    }

    pub fn len(&self) -> usize {
        self.generators.len()
    }

    pub fn is_empty(&self) -> bool {
        self.generators.is_empty()
    }

    pub fn profile(&self) -> SliceProfile {
        let mut counts = Vec::with_capacity(self.generators.len() + 1);
        let mut m = self.seam_strands;
        counts.push(m);
        for g in &self.generators {
            m = g.count_after(m);
            counts.push(m);
        }
        SliceProfile { counts }
    }

    /// Number of cap generators, which equals the number of cups.
    pub fn bridge_index(&self) -> usize {
        self.generators
            .iter()
            .filter(|g| g.kind == GeneratorKind::Cap)
            .count()
    }

    /// Minimum strand count over all slices, seam included.
    pub fn braid_count(&self) -> usize {
        self.profile().min()
    }

    pub fn crossing_count(&self) -> usize {
        self.generators.iter().filter(|g| g.is_crossing()).count()
    }

    pub fn parse(text: &str) -> Result<Self, WordError> {
        parse_word(text)
    }

    pub fn serialize(&self) -> String {
        serialize_word(self)
    }
}

impl fmt::Display for BooklinkWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&serialize_word(self))
    }
}

impl FromStr for BooklinkWord {
    type Err = WordError;

    fn from_str(s: &str) -> Result<Self, WordError> {
        parse_word(s)
    }
}

/// Parses the word text format: a `strands:<k>` first line followed by
/// whitespace-separated generator tokens, with `#` comments.
pub fn parse_word(text: &str) -> Result<BooklinkWord, WordError> {
    let mut lines = text.split('\n').enumerate().map(|(i, l)| {
        let l = l.strip_suffix('\r').unwrap_or(l);
        let body = match l.find('#') {
            Some(c) => &l[..c],
            None => l,
        };
        (i + 1, body)
    });

    let (line, header) = lines.next().ok_or_else(|| WordError::Syntax {
        line: 1,
        message: "missing strands header".into(),
    })?;
    let seam = header
        .trim()
        .strip_prefix("strands:")
        .and_then(|k| {
            let k = k.trim();
            if !k.is_empty() && k.bytes().all(|b| b.is_ascii_digit()) {
                k.parse::<usize>().ok()
            } else {
                None
            }
        })
        .ok_or_else(|| WordError::Syntax {
            line,
            message: format!("expected `strands:<k>`, found `{}`", header.trim()),
        })?;

    let mut generators = Vec::new();
    for (line, body) in lines {
        for tok in body.split_whitespace() {
            let g = tok.parse::<Generator>().map_err(|_| WordError::Syntax {
                line,
                message: format!("bad token `{tok}`"),
            })?;
            generators.push(g);
        }
    }
    BooklinkWord::new(seam, generators)
}

/// Canonical text: the header line, then all tokens on one line separated
/// by single spaces and terminated by a newline.
pub fn serialize_word(w: &BooklinkWord) -> String {
    let mut out = format!("strands:{}\n", w.seam_strands);
    if !w.generators.is_empty() {
        let toks: Vec<String> = w.generators.iter().map(|g| g.to_string()).collect();
        out.push_str(&toks.join(" "));
        out.push('\n');
    }
    out
}
