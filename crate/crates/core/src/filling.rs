//! Combinatorial filling length on one-vertex 2-complexes.
//!
//! Loops in the presentation complex of `P` are cyclic edge words over the
//! generator edges.  An elementary homotopy either inserts/removes a
//! backtrack `e e⁻¹` or slides an arc of the loop across a 2-cell,
//! replacing a boundary arc by the complementary arc.  The filling length
//! of a loop is the minimum over contractions to the constant loop of the
//! maximal intermediate length — a bottleneck shortest path in the state
//! graph, not a step count.

use std::cmp::Reverse;
use std::collections::{BTreeSet, BinaryHeap, HashMap, HashSet};

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::presentations::Presentation;
use crate::words::{invert_letters, Alphabet, Gen, Word};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum FillingError {
    #[error("2-cell boundary must be a nonempty edge cycle")]
    EmptyCell,
    #[error("edge letter {0} refers to no generator of the complex")]
    UnknownEdge(u8),
    #[error("unknown edge character {0:?}")]
    UnknownChar(char),
}

/// A 2-complex with one vertex: a wedge of oriented edge circles (one pair
/// per generator) with 2-cells attached along edge cycles.  Edge letters use
/// the packed encoding `2g` / `2g + 1` shared with [`Word`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TwoComplex {
    alphabet: Alphabet,
    cells: Vec<Vec<u8>>,
}

impl TwoComplex {
    pub fn new(alphabet: Alphabet, cells: Vec<Vec<u8>>) -> Result<Self, FillingError> {
        let max_letter = (alphabet.size() * 2) as u8;
        for cell in &cells {
            if cell.is_empty() {
                return Err(FillingError::EmptyCell);
            }
            if let Some(&l) = cell.iter().find(|&&l| l >= max_letter) {
                return Err(FillingError::UnknownEdge(l));
            }
        }
        Ok(TwoComplex { alphabet, cells })
    }

    pub fn alphabet(&self) -> &Alphabet {
        &self.alphabet
    }

    /// Boundary cycles of the 2-cells, as edge letter words.
    pub fn cells(&self) -> &[Vec<u8>] {
        &self.cells
    }

    /// Number of directed edge pairs (one per generator).
    pub fn edge_pairs(&self) -> usize {
        self.alphabet.size()
    }

    /// χ = 1 − (edge pairs) + (2-cells); equals 1 for a balanced presentation.
    pub fn euler_characteristic(&self) -> i64 {
        1 - self.edge_pairs() as i64 + self.cells.len() as i64
    }
}

/// The presentation 2-complex: one vertex, an edge pair per generator, and
/// one 2-cell per relator whose boundary reads the relator.
pub fn presentation_complex(p: &Presentation) -> Result<TwoComplex, FillingError> {
    let cells: Vec<Vec<u8>> = p.relators.iter().map(Word::to_letter_vec).collect();
    TwoComplex::new(p.alphabet.clone(), cells)
}

/// A free-homotopy state: a cyclic edge word stored in its lexicographically
/// minimal rotation.  Backtracks are genuine states and are not reduced away.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct LoopState {
    letters: Vec<u8>,
}

impl LoopState {
    pub fn new(letters: Vec<u8>) -> Self {
        LoopState { letters: min_rotation(&letters) }
    }

    pub fn empty() -> Self {
        LoopState { letters: Vec::new() }
    }

    /// Parses an edge word letter-for-letter: lowercase traverses the edge
    /// forward, uppercase backward.  No free reduction is applied.
    pub fn parse(ab: &Alphabet, text: &str) -> Result<Self, FillingError> {
        let mut letters = Vec::new();
        for c in text.chars() {
            if c.is_whitespace() {
                continue;
            }
            let lower = c.to_ascii_lowercase();
            let g = ab
                .letters()
                .iter()
                .position(|&l| l == lower)
                .ok_or(FillingError::UnknownChar(c))?;
            letters.push(((g as u8) << 1) | u8::from(c.is_ascii_uppercase()));
        }
        Ok(LoopState::new(letters))
    }

    pub fn letters(&self) -> &[u8] {
        &self.letters
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn inverse(&self) -> Self {
        LoopState::new(invert_letters(&self.letters))
    }

    pub fn display(&self, ab: &Alphabet) -> String {
        self.letters
            .iter()
            .map(|&l| {
                let c = ab.name(Gen(l >> 1));
                if l & 1 == 1 {
                    c.to_ascii_uppercase()
                } else {
                    c
                }
            })
            .collect()
    }
}

fn min_rotation(letters: &[u8]) -> Vec<u8> {
    if letters.len() < 2 {
        return letters.to_vec();
    }
    (0..letters.len())
        .map(|s| {
            let mut rot = letters[s..].to_vec();
            rot.extend_from_slice(&letters[..s]);
            rot
        })
        .min()
        .unwrap()
}

/// All states one elementary homotopy away from `s`, with resulting length
/// at most `max_len`.  The relation is symmetric among states within the
/// cap: backtrack insertion/removal are mutually inverse, and an arc
/// replacement across a cell reverses to the complementary replacement
/// across the same cell.  (In particular a cell boundary may be pushed in
/// whole — the empty loop sees entire boundary cycles as neighbors.)
pub fn neighbors(s: &LoopState, x: &TwoComplex, max_len: usize) -> Vec<LoopState> {
    let mut out: BTreeSet<LoopState> = BTreeSet::new();
    let w = &s.letters;
    let n = w.len();

    // Backtrack insertion: e e⁻¹ at any position.
    if n + 2 <= max_len {
        for e in 0..(x.edge_pairs() * 2) as u8 {
            for p in 0..=n.max(1) - 1 {
                let mut next = Vec::with_capacity(n + 2);
                next.extend_from_slice(&w[..p]);
                next.push(e);
                next.push(e ^ 1);
                next.extend_from_slice(&w[p..]);
                out.insert(LoopState::new(next));
            }
            if n == 0 {
                out.insert(LoopState::new(vec![e, e ^ 1]));
            }
        }
    }

    // Backtrack removal: cyclically adjacent e e⁻¹.
    for p in 0..n {
        let q = (p + 1) % n;
        if q != p && w[p] == (w[q] ^ 1) {
            let mut next: Vec<u8> = Vec::with_capacity(n - 2);
            for (i, &l) in w.iter().enumerate() {
                if i != p && i != q {
                    next.push(l);
                }
            }
            out.insert(LoopState::new(next));
        }
    }

    // Arc replacement: if u·v is a rotation of a cell boundary (either
    // orientation) and u occurs as a cyclic arc, replace u by v⁻¹.
    for cell in &x.cells {
        for oriented in [cell.clone(), invert_letters(cell)] {
            let cl = oriented.len();
            for rot in 0..cl {
                let mut r = oriented[rot..].to_vec();
                r.extend_from_slice(&oriented[..rot]);
                for j in 0..=cl.min(n) {
                    let u = &r[..j];
                    let replacement = invert_letters(&r[j..]);
                    let new_len = n - j + replacement.len();
                    if new_len > max_len {
                        continue;
                    }
                    // Occurrences of u as a cyclic arc of w.
                    let positions: Vec<usize> = if j == 0 {
                        (0..n.max(1)).collect()
                    } else {
                        (0..n)
                            .filter(|&p| (0..j).all(|i| w[(p + i) % n] == u[i]))
                            .collect()
                    };
                    for p in positions {
                        // Linearize w starting at p, swap the arc.
                        let mut next = replacement.clone();
                        for i in j..n {
                            next.push(w[(p + i) % n]);
                        }
                        out.insert(LoopState::new(next));
                    }
                }
            }
        }
    }

    out.remove(s);
    out.into_iter().collect()
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FillingOutcome {
    /// The filling length, when a contraction within the caps exists.
    pub fl: Option<usize>,
    pub explored: usize,
    /// True when `max_states` stopped the search (result unknown).  When
    /// `fl` is `None` with `capped` false, the search was exhaustive and
    /// every contraction must exceed `max_len` in some intermediate loop.
    pub capped: bool,
    /// Valid lower bound on the filling length in every outcome.
    pub lower_bound: usize,
}

/// Minimum over contractions of `γ` to the empty loop of the maximal
/// intermediate length: bottleneck (minimax) Dijkstra over loop states.
pub fn filling_length(
    gamma: &LoopState,
    x: &TwoComplex,
    max_len: usize,
    max_states: usize,
) -> FillingOutcome {
    if gamma.is_empty() {
        return FillingOutcome { fl: Some(0), explored: 1, capped: false, lower_bound: 0 };
    }
    if gamma.len() > max_len {
        return FillingOutcome { fl: None, explored: 0, capped: true, lower_bound: gamma.len() };
    }
    let mut best: HashMap<LoopState, usize> = HashMap::new();
    let mut heap: BinaryHeap<Reverse<(usize, LoopState)>> = BinaryHeap::new();
    best.insert(gamma.clone(), gamma.len());
    heap.push(Reverse((gamma.len(), gamma.clone())));
    let mut settled: HashSet<LoopState> = HashSet::new();
    while let Some(Reverse((bottleneck, state))) = heap.pop() {
        if !settled.insert(state.clone()) {
            continue;
        }
        if state.is_empty() {
            return FillingOutcome {
                fl: Some(bottleneck),
                explored: settled.len(),
                capped: false,
                lower_bound: bottleneck,
            };
        }
        if settled.len() >= max_states {
            return FillingOutcome {
                fl: None,
                explored: settled.len(),
                capped: true,
                lower_bound: gamma.len(),
            };
        }
        for next in neighbors(&state, x, max_len) {
            let cand = bottleneck.max(next.len());
            if best.get(&next).is_none_or(|&b| cand < b) {
                best.insert(next.clone(), cand);
                heap.push(Reverse((cand, next)));
            }
        }
    }
    // Exhausted the ≤ max_len state space without reaching the empty loop:
    // the filling length exceeds max_len.
    FillingOutcome {
        fl: None,
        explored: settled.len(),
        capped: false,
        lower_bound: max_len + 1,
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct RatioOutcome {
    /// Maximal fl(γ)/length(γ) seen, as an exact fraction.
    pub numerator: usize,
    pub denominator: usize,
    /// A loop attaining the maximum.
    pub witness: LoopStateRecord,
    /// Some loop's filling search hit the caps; the ratio is then only a
    /// lower bound over the enumerated loops.
    pub capped: bool,
    pub loops_checked: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct LoopStateRecord {
    pub word: String,
    pub length: usize,
}

/// Maximum of fl(γ)/length(γ) over all cyclically reduced loops of length
/// 1..=`max_loop_len` (one representative per rotation class); a lower
/// bound for the supremum over all loops.
pub fn fl_ratio(
    x: &TwoComplex,
    max_loop_len: usize,
    max_len: usize,
    max_states: usize,
) -> RatioOutcome {
    let mut best: (usize, usize) = (0, 1);
    let mut witness = LoopState::empty();
    let mut capped = false;
    let mut checked = 0usize;
    let mut seen: HashSet<LoopState> = HashSet::new();
    let nletters = (x.edge_pairs() * 2) as u8;
    let mut stack: Vec<Vec<u8>> = (0..nletters).map(|l| vec![l]).collect();
    while let Some(word) = stack.pop() {
        // Extend first so the stack enumerates every length ≤ cap.
        if word.len() < max_loop_len {
            for l in 0..nletters {
                if *word.last().unwrap() != (l ^ 1) {
                    let mut longer = word.clone();
                    longer.push(l);
                    stack.push(longer);
                }
            }
        }
        // Cyclic reduction also forbids cancellation across the wrap.
        if word.len() > 1 && word[0] == (*word.last().unwrap() ^ 1) {
            continue;
        }
        let state = LoopState::new(word);
        if !seen.insert(state.clone()) {
            continue;
        }
        checked += 1;
        let out = filling_length(&state, x, max_len, max_states);
        match out.fl {
            Some(fl) => {
                // fl/len > best.0/best.1  ⇔  fl·best.1 > best.0·len
                if fl * best.1 > best.0 * state.len() {
                    best = (fl, state.len());
                    witness = state;
                }
            }
            None => capped = true,
        }
    }
    RatioOutcome {
        numerator: best.0,
        denominator: best.1,
        witness: LoopStateRecord { word: witness.display(x.alphabet()), length: witness.len() },
        capped,
        loops_checked: checked,
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GrowthRow {
    pub n: u64,
    pub generator: char,
    /// Exact filling length when the search finished within the caps.
    pub fl: Option<usize>,
    pub lower_bound: usize,
    pub states: usize,
    pub capped: bool,
}

impl GrowthRow {
    pub fn csv_header() -> &'static str {
        "n,generator,fl_or_bound,states,capped"
    }

    pub fn to_csv_line(&self) -> String {
        let fl = match self.fl {
            Some(v) => v.to_string(),
            None => format!(">={}", self.lower_bound),
        };
        format!("{},{},{},{},{}", self.n, self.generator, fl, self.states, self.capped)
    }
}

/// Filling lengths of the generator loops of `P_n` for each listed `n`,
/// within the given caps; cap exhaustion is recorded per row.
pub fn growth_probe(
    n_list: &[u64],
    max_len: usize,
    max_states: usize,
) -> Result<Vec<GrowthRow>, crate::presentations::PresentationError> {
    let mut rows = Vec::new();
    for &n in n_list {
        let p = crate::presentations::build_pn(n)?;
        let x = presentation_complex(&p).expect("relators of P_n are nonempty");
        for g in 0..x.edge_pairs() {
            let state = LoopState::new(vec![(g as u8) << 1]);
            let out = filling_length(&state, &x, max_len, max_states);
            rows.push(GrowthRow {
                n,
                generator: x.alphabet().name(Gen(g as u8)),
                fl: out.fl,
                lower_bound: out.lower_bound,
                states: out.explored,
                capped: out.capped,
            });
        }
    }
    Ok(rows)
}
