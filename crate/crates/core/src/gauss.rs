//! Gauss words of closed curves, their chord diagrams, and planar
//! realizability of double-occurrence words.
//!
//! Realizability is decided two independent ways:
//!
//! * [`realizable`] builds the [quad gadget graph](quad_gadget_graph) of the
//!   word and runs a planarity test on it;
//! * [`brute_force_realizable`] enumerates every transversal rotation system
//!   of the 4-regular curve graph and traces faces, accepting when Euler's
//!   formula gives a sphere.
//!
//! [`interlacement_realizable`] is a third, purely combinatorial test. A
//! positive answer from [`realizable`] carries a rotation-system witness read
//! off an explicit plane embedding of the gadget graph.

use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::graph::{rotation_at, SimpleGraph};
use crate::tables::{adjacent_or_equal, IntersectionTable};

/// Largest word the exhaustive rotation-system oracle accepts.
pub const BRUTE_FORCE_MAX_SYMBOLS: usize = 20;

/// Largest word for which [`realizable`] falls back to exhaustive search
/// when the gadget embedding yields no witness.
pub const WITNESS_MAX_SYMBOLS: usize = 14;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GaussError {
    #[error("symbol {symbol} occurs {count} times (expected exactly 2)")]
    NotDoubleOccurrence { symbol: String, count: usize },
    #[error("crossing {0} joins adjacent or equal edges")]
    AdjacentCrossing(CrossingId),
    #[error("crossing {crossing} occurs in run {run}, which is not one of its edges")]
    WrongRun { crossing: CrossingId, run: usize },
    #[error("word has {symbols} symbols; the exhaustive oracle is limited to {max}")]
    TooLarge { symbols: usize, max: usize },
    #[error("parse error at token {token}: {message}")]
    Parse { token: usize, message: String },
}

/// The crossing of edges `lo` and `hi`, stored with `lo < hi`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct CrossingId {
    lo: usize,
    hi: usize,
}

impl CrossingId {
    pub fn new(a: usize, b: usize) -> Self {
        CrossingId {
            lo: a.min(b),
            hi: a.max(b),
        }
    }

    pub fn edges(self) -> (usize, usize) {
        (self.lo, self.hi)
    }

    pub fn shifted(self, k: i64, n: usize) -> Self {
        use crate::tables::shift_label;
        CrossingId::new(shift_label(self.lo, k, n), shift_label(self.hi, k, n))
    }
}

impl fmt::Display for CrossingId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}-{}", self.lo, self.hi)
    }
}

/// A double-occurrence word with letters renamed to first-occurrence order
/// (`0, 1, 2, ...`). Cyclic: position `len - 1` is followed by position `0`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct DoubleOccurrenceWord {
    letters: Vec<usize>,
}

impl DoubleOccurrenceWord {
    /// Accepts any labels; each must occur exactly twice.
    pub fn new<T: Eq + std::hash::Hash + Clone + fmt::Debug>(
        labels: &[T],
    ) -> Result<Self, GaussError> {
        let mut ids: HashMap<T, (usize, usize)> = HashMap::new();
        let mut letters = Vec::with_capacity(labels.len());
        for label in labels {
            let next = ids.len();
            let entry = ids.entry(label.clone()).or_insert((next, 0));
            entry.1 += 1;
            letters.push(entry.0);
        }
        for (label, &(_, count)) in &ids {
            if count != 2 {
                return Err(GaussError::NotDoubleOccurrence {
                    symbol: format!("{label:?}"),
                    count,
                });
            }
        }
        Ok(DoubleOccurrenceWord { letters })
    }

    pub fn letters(&self) -> &[usize] {
        &self.letters
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    /// Number of distinct symbols (crossings).
    pub fn symbol_count(&self) -> usize {
        self.letters.len() / 2
    }

    /// `(first, second)` position of every symbol.
    pub fn occurrences(&self) -> Vec<(usize, usize)> {
        let mut occ = vec![(usize::MAX, usize::MAX); self.symbol_count()];
        for (p, &x) in self.letters.iter().enumerate() {
            if occ[x].0 == usize::MAX {
                occ[x].0 = p;
            } else {
                occ[x].1 = p;
            }
        }
        occ
    }

    /// `is_first[p]` is true when position `p` holds the first occurrence.
    fn first_flags(&self) -> Vec<bool> {
        let mut seen = vec![false; self.symbol_count()];
        self.letters
            .iter()
            .map(|&x| {
                let first = !seen[x];
                seen[x] = true;
                first
            })
            .collect()
    }
}

impl FromStr for DoubleOccurrenceWord {
    type Err = GaussError;

    /// Whitespace-separated tokens; `|` separators are ignored.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let tokens: Vec<&str> = s.split_whitespace().filter(|t| *t != "|").collect();
        DoubleOccurrenceWord::new(&tokens)
    }
}

impl fmt::Display for DoubleOccurrenceWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.letters.iter().map(|x| (x + 1).to_string()).collect();
        f.write_str(&parts.join(" "))
    }
}

/// The Gauss word of a thrackled `n`-gon: runs `1..=n`, run `i` listing the
/// crossings met along edge `e_i`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct GaussWord {
    n: usize,
    symbols: Vec<CrossingId>,
    boundaries: Vec<usize>,
}

impl GaussWord {
    pub fn from_runs(n: usize, runs: Vec<Vec<CrossingId>>) -> Result<Self, GaussError> {
        let mut counts: HashMap<CrossingId, usize> = HashMap::new();
        let mut symbols = Vec::new();
        let mut boundaries = Vec::with_capacity(runs.len());
        for (r, run) in runs.into_iter().enumerate() {
            let run_label = r + 1;
            boundaries.push(symbols.len());
            for c in run {
                let (lo, hi) = c.edges();
                if lo == 0 || hi > n || adjacent_or_equal(lo, hi, n) {
                    return Err(GaussError::AdjacentCrossing(c));
                }
                if run_label != lo && run_label != hi {
                    return Err(GaussError::WrongRun {
                        crossing: c,
                        run: run_label,
                    });
                }
                *counts.entry(c).or_default() += 1;
                symbols.push(c);
            }
        }
        let mut bad: Vec<_> = counts.iter().filter(|(_, &k)| k != 2).collect();
        bad.sort();
        if let Some((c, &count)) = bad.first() {
            return Err(GaussError::NotDoubleOccurrence {
                symbol: c.to_string(),
                count,
            });
        }
        Ok(GaussWord {
            n,
            symbols,
            boundaries,
        })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn symbols(&self) -> &[CrossingId] {
        &self.symbols
    }

    /// Start position of each edge's run.
    pub fn boundaries(&self) -> &[usize] {
        &self.boundaries
    }

    pub fn runs(&self) -> Vec<&[CrossingId]> {
        let mut out = Vec::with_capacity(self.boundaries.len());
        for (i, &start) in self.boundaries.iter().enumerate() {
            let end = self
                .boundaries
                .get(i + 1)
                .copied()
                .unwrap_or(self.symbols.len());
            out.push(&self.symbols[start..end]);
        }
        out
    }

    pub fn len(&self) -> usize {
        self.symbols.len()
    }

    pub fn is_empty(&self) -> bool {
        self.symbols.is_empty()
    }

    pub fn distinct_symbols(&self) -> usize {
        self.symbols.len() / 2
    }

    pub fn to_double_occurrence(&self) -> DoubleOccurrenceWord {
        DoubleOccurrenceWord::new(&self.symbols).expect("validated on construction")
    }

    /// Relabels `e_i -> e_{i+k}` and moves run `i` to position `i + k`.
    pub fn shifted(&self, k: i64) -> GaussWord {
        let n = self.n;
        let runs = self.runs();
        let new_runs = (1..=n)
            .map(|i| {
                let src = crate::tables::shift_label(i, -k, n);
                runs[src - 1].iter().map(|c| c.shifted(k, n)).collect()
            })
            .collect();
        GaussWord::from_runs(n, new_runs).expect("relabelling preserves validity")
    }

    /// Writes `a-b` tokens separated by spaces, runs separated by ` | `.
    pub fn to_text(&self) -> String {
        self.runs()
            .iter()
            .map(|run| {
                run.iter()
                    .map(|c| c.to_string())
                    .collect::<Vec<_>>()
                    .join(" ")
            })
            .collect::<Vec<_>>()
            .join(" | ")
    }

    pub fn parse(text: &str) -> Result<GaussWord, GaussError> {
        let mut runs = vec![Vec::new()];
        for (idx, token) in text.split_whitespace().enumerate() {
            if token == "|" {
                runs.push(Vec::new());
                continue;
            }
            let parse_err = |message: &str| GaussError::Parse {
                token: idx + 1,
                message: format!("{message}: {token:?}"),
            };
            let (a, b) = token
                .split_once('-')
                .ok_or_else(|| parse_err("expected a crossing like 3-7"))?;
            let a: usize = a.parse().map_err(|_| parse_err("bad edge label"))?;
            let b: usize = b.parse().map_err(|_| parse_err("bad edge label"))?;
            runs.last_mut().unwrap().push(CrossingId::new(a, b));
        }
        let n = runs.len();
        GaussWord::from_runs(n, runs)
    }
}

impl fmt::Display for GaussWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_text())
    }
}

/// Traverses edges `1..=n`; within edge `i` emits `{i, row_i[t]}` in row order.
pub fn gauss_word(table: &IntersectionTable) -> GaussWord {
    let runs = (1..=table.n())
        .map(|i| {
            table
                .row(i)
                .iter()
                .map(|&j| CrossingId::new(i, j))
                .collect()
        })
        .collect();
    GaussWord::from_runs(table.n(), runs).expect("valid tables give valid words")
}

/// Symmetric, irreflexive interlacement relation on the symbols of a word.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct InterlacementGraph {
    size: usize,
    adjacency: Vec<bool>,
}

impl InterlacementGraph {
    pub fn size(&self) -> usize {
        self.size
    }

    pub fn is_adjacent(&self, a: usize, b: usize) -> bool {
        self.adjacency[a * self.size + b]
    }

    pub fn degree(&self, a: usize) -> usize {
        (0..self.size).filter(|&b| self.is_adjacent(a, b)).count()
    }

    pub fn edge_count(&self) -> usize {
        self.adjacency.iter().filter(|&&x| x).count() / 2
    }

    pub fn edges(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for a in 0..self.size {
            for b in a + 1..self.size {
                if self.is_adjacent(a, b) {
                    out.push((a, b));
                }
            }
        }
        out
    }
}

/// `x` and `y` interlace when exactly one occurrence of `y` lies strictly
/// between the two occurrences of `x`.
pub fn interlacement(word: &DoubleOccurrenceWord) -> InterlacementGraph {
    let occ = word.occurrences();
    let size = occ.len();
    let mut adjacency = vec![false; size * size];
    for a in 0..size {
        let (a1, a2) = occ[a];
        for b in a + 1..size {
            let (b1, b2) = occ[b];
            let inside = (a1 < b1 && b1 < a2) as u8 + (a1 < b2 && b2 < a2) as u8;
            if inside == 1 {
                adjacency[a * size + b] = true;
                adjacency[b * size + a] = true;
            }
        }
    }
    InterlacementGraph { size, adjacency }
}

/// Gauss's evenness condition: every symbol interlaces an even number of
/// others.
pub fn parity_check(word: &DoubleOccurrenceWord) -> bool {
    let g = interlacement(word);
    (0..g.size()).all(|a| g.degree(a) % 2 == 0)
}

/// Same condition via positions: the two occurrences of every symbol are an
/// odd distance apart. Used on the search hot path.
pub fn parity_check_fast(word: &DoubleOccurrenceWord) -> bool {
    word.occurrences().iter().all(|&(a, b)| (b - a) % 2 == 1)
}

/// Largest divisor `s` of `n` with `rotate(table, n / s) == table`.
pub fn rotational_symmetry(table: &IntersectionTable) -> usize {
    let n = table.n();
    (1..=n)
        .filter(|d| n % d == 0)
        .find(|&d| table.rotate(d as i64) == *table)
        .map(|d| n / d)
        .expect("rotation by n is the identity")
}

// ---------------------------------------------------------------------------
// Realizability

/// Builds the simple graph whose planarity is equivalent to realizability.
///
/// Each crossing becomes a wheel: hub `5c` and rim `5c+1 .. 5c+4`, whose rim
/// receives, in cyclic order, the first-visit incoming arc, the second-visit
/// incoming arc, the first-visit outgoing arc and the second-visit outgoing
/// arc. Each arc of the curve is subdivided once (vertex `5C + p` for the arc
/// leaving position `p`).
pub fn quad_gadget_graph(word: &DoubleOccurrenceWord) -> SimpleGraph {
    let c = word.symbol_count();
    if c == 0 {
        return SimpleGraph::cycle(3);
    }
    let len = word.len();
    let mut g = SimpleGraph::new(5 * c + len);
    for x in 0..c {
        let hub = 5 * x;
        for r in 1..=4 {
            g.add_edge(hub, hub + r);
            g.add_edge(hub + r, hub + if r == 4 { 1 } else { r + 1 });
        }
    }
    let first = word.first_flags();
    let letters = word.letters();
    for p in 0..len {
        let q = (p + 1) % len;
        let out_end = 5 * letters[p] + if first[p] { 3 } else { 4 };
        let in_end = 5 * letters[q] + if first[q] { 1 } else { 2 };
        let mid = 5 * c + p;
        g.add_edge(out_end, mid);
        g.add_edge(mid, in_end);
    }
    g
}

/// Orientation of the transversal cyclic order at a crossing.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Rotation {
    /// first-in, second-in, first-out, second-out
    Positive,
    /// first-in, second-out, first-out, second-in
    Negative,
}

/// A rotation system of the curve graph that embeds it in the sphere.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct EmbeddingWitness {
    pub vertices: usize,
    pub edges: usize,
    pub faces: usize,
    pub rotations: Vec<Rotation>,
}

impl EmbeddingWitness {
    pub fn euler_characteristic(&self) -> i64 {
        self.vertices as i64 - self.edges as i64 + self.faces as i64
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RealizabilityReport {
    pub parity_ok: bool,
    pub realizable: bool,
    pub witness: Option<EmbeddingWitness>,
}

/// Face count of the 4-regular curve graph under the given rotations.
///
/// Darts at crossing `x`: `4x` first-in, `4x+1` second-in, `4x+2` first-out,
/// `4x+3` second-out. Faces are the cycles of `rotation_successor ∘ twin`.
pub fn count_faces(word: &DoubleOccurrenceWord, rotations: &[Rotation]) -> usize {
    let letters = word.letters();
    let len = letters.len();
    if len == 0 {
        return 2;
    }
    let first = word.first_flags();
    let in_dart = |p: usize| 4 * letters[p] + if first[p] { 0 } else { 1 };
    let out_dart = |p: usize| 4 * letters[p] + if first[p] { 2 } else { 3 };
    let mut twin = vec![0usize; 2 * len];
    for p in 0..len {
        let q = (p + 1) % len;
        twin[out_dart(p)] = in_dart(q);
        twin[in_dart(q)] = out_dart(p);
    }
    const POS: [usize; 4] = [1, 2, 3, 0];
    const NEG: [usize; 4] = [3, 0, 1, 2];
    let succ = |d: usize| {
        let x = d / 4;
        let table = match rotations[x] {
            Rotation::Positive => &POS,
            Rotation::Negative => &NEG,
        };
        4 * x + table[d % 4]
    };
    let mut seen = vec![false; 2 * len];
    let mut faces = 0;
    for start in 0..2 * len {
        if seen[start] {
            continue;
        }
        faces += 1;
        let mut d = start;
        while !seen[d] {
            seen[d] = true;
            d = succ(twin[d]);
        }
    }
    faces
}

fn rotations_from_mask(c: usize, mask: u64) -> Vec<Rotation> {
    (0..c)
        .map(|x| {
            if mask >> x & 1 == 1 {
                Rotation::Negative
            } else {
                Rotation::Positive
            }
        })
        .collect()
}

/// Exhaustive search for a spherical rotation system. Crossing 0 is fixed to
/// [`Rotation::Positive`]: reflecting an embedding flips every rotation.
pub fn find_rotation_system(
    word: &DoubleOccurrenceWord,
) -> Result<Option<EmbeddingWitness>, GaussError> {
    let c = word.symbol_count();
    if c > BRUTE_FORCE_MAX_SYMBOLS {
        return Err(GaussError::TooLarge {
            symbols: c,
            max: BRUTE_FORCE_MAX_SYMBOLS,
        });
    }
    if c == 0 {
        return Ok(Some(EmbeddingWitness {
            vertices: 0,
            edges: 0,
            faces: 2,
            rotations: Vec::new(),
        }));
    }
    for half in 0..1u64 << (c - 1) {
        let rotations = rotations_from_mask(c, half << 1);
        let faces = count_faces(word, &rotations);
        if faces == c + 2 {
            return Ok(Some(EmbeddingWitness {
                vertices: c,
                edges: 2 * c,
                faces,
                rotations,
            }));
        }
    }
    Ok(None)
}

/// Independent oracle: true iff some transversal rotation system gives
/// `V - E + F = 2`. Refuses words with more than
/// [`BRUTE_FORCE_MAX_SYMBOLS`] symbols.
pub fn brute_force_realizable(word: &DoubleOccurrenceWord) -> Result<bool, GaussError> {
    Ok(find_rotation_system(word)?.is_some())
}

/// Realizability via planarity of the quad gadget graph.
pub fn realizable(word: &DoubleOccurrenceWord) -> RealizabilityReport {
    let parity_ok = parity_check(word);
    // Parity is necessary; skipping the planarity test is only a shortcut.
    let realizable = parity_ok && quad_gadget_graph(word).is_planar();
    let witness = if realizable {
        embedding_witness(word).or_else(|| {
            if word.symbol_count() <= WITNESS_MAX_SYMBOLS {
                find_rotation_system(word).ok().flatten()
            } else {
                None
            }
        })
    } else {
        None
    };
    RealizabilityReport {
        parity_ok,
        realizable,
        witness,
    }
}

/// Rotation system read off a plane embedding of the gadget graph, kept
/// only if face tracing confirms a sphere.
pub fn embedding_witness(word: &DoubleOccurrenceWord) -> Option<EmbeddingWitness> {
    let c = word.symbol_count();
    let faces = quad_gadget_graph(word).planar_faces()?;
    let mut rotations = Vec::with_capacity(c);
    for x in 0..c {
        let hub = 5 * x;
        let (_, after_first_in) = rotation_at(&faces, hub)
            .into_iter()
            .find(|&(a, _)| a == hub + 1)?;
        rotations.push(if after_first_in == hub + 2 {
            Rotation::Positive
        } else {
            Rotation::Negative
        });
    }
    let witness = EmbeddingWitness {
        vertices: c,
        edges: 2 * c,
        faces: count_faces(word, &rotations),
        rotations,
    };
    (c == 0 || witness.euler_characteristic() == 2).then_some(witness)
}

/// Purely combinatorial decision on the interlacement graph: every symbol
/// has even degree, every non-interlaced pair has an even number of common
/// neighbours, and the interlaced pairs with an even number of common
/// neighbours form a cocycle.
pub fn interlacement_realizable(word: &DoubleOccurrenceWord) -> bool {
    let g = interlacement(word);
    let c = g.size();
    let common = |a: usize, b: usize| (0..c).filter(|&x| g.is_adjacent(a, x) && g.is_adjacent(b, x)).count();
    if (0..c).any(|a| g.degree(a) % 2 == 1) {
        return false;
    }
    let mut cut = vec![vec![false; c]; c];
    for a in 0..c {
        for b in a + 1..c {
            let even = common(a, b) % 2 == 0;
            if !g.is_adjacent(a, b) && !even {
                return false;
            }
            cut[a][b] = g.is_adjacent(a, b) && even;
            cut[b][a] = cut[a][b];
        }
    }
    // Two-colour so that exactly the marked interlacement edges join colours.
    let mut side: Vec<Option<bool>> = vec![None; c];
    for start in 0..c {
        if side[start].is_some() {
            continue;
        }
        side[start] = Some(false);
        let mut stack = vec![start];
        while let Some(a) = stack.pop() {
            let sa = side[a].expect("coloured");
            for b in (0..c).filter(|&b| g.is_adjacent(a, b)) {
                let want = sa ^ cut[a][b];
                match side[b] {
                    None => {
                        side[b] = Some(want);
                        stack.push(b);
                    }
                    Some(sb) if sb != want => return false,
                    Some(_) => {}
                }
            }
        }
    }
    true
}

/// Planarity-only decision used by the search (no parity pass, no witness).
pub fn gadget_planar(word: &DoubleOccurrenceWord) -> bool {
    quad_gadget_graph(word).is_planar()
}

// ---------------------------------------------------------------------------
// Chord diagrams

/// `2C` points around a circle in word order, one chord per symbol.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ChordDiagram {
    points: usize,
    chords: Vec<(usize, usize)>,
    labels: Vec<String>,
    boundaries: Vec<usize>,
}

impl ChordDiagram {
    pub fn point_count(&self) -> usize {
        self.points
    }

    /// Chord endpoints, `a < b`, indexed by symbol.
    pub fn chords(&self) -> &[(usize, usize)] {
        &self.chords
    }

    /// Label of the symbol at each point.
    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    /// Point indices where an edge run begins (empty for bare words).
    pub fn boundaries(&self) -> &[usize] {
        &self.boundaries
    }

    /// Two chords cross iff their endpoints alternate around the circle.
    pub fn chords_cross(&self, a: usize, b: usize) -> bool {
        let (a1, a2) = self.chords[a];
        let (b1, b2) = self.chords[b];
        let inside = |x: usize| a1 < x && x < a2;
        inside(b1) != inside(b2)
    }

    pub fn crossing_pairs(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for a in 0..self.chords.len() {
            for b in a + 1..self.chords.len() {
                if self.chords_cross(a, b) {
                    out.push((a, b));
                }
            }
        }
        out
    }

    /// True when turning the circle by `steps` points maps the chord set
    /// onto itself.
    pub fn invariant_under_turn(&self, steps: usize) -> bool {
        let mut original: Vec<_> = self.chords.clone();
        original.sort_unstable();
        let mut turned: Vec<_> = self
            .chords
            .iter()
            .map(|&(a, b)| {
                let (x, y) = ((a + steps) % self.points, (b + steps) % self.points);
                (x.min(y), x.max(y))
            })
            .collect();
        turned.sort_unstable();
        original == turned
    }
}

pub fn chord_diagram(word: &DoubleOccurrenceWord) -> ChordDiagram {
    ChordDiagram {
        points: word.len(),
        chords: word.occurrences(),
        labels: word.letters().iter().map(|x| (x + 1).to_string()).collect(),
        boundaries: Vec::new(),
    }
}

pub fn gauss_chord_diagram(word: &GaussWord) -> ChordDiagram {
    let mut d = chord_diagram(&word.to_double_occurrence());
    d.labels = word.symbols().iter().map(|c| c.to_string()).collect();
    d.boundaries = word.boundaries().to_vec();
    d
}
