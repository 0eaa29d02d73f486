//! Finite presentations: the Baumslag-Gersten group, the balanced
//! presentations `P_n` of the trivial group, and Andrews-Curtis moves with a
//! breadth-first trivialization search.

use std::collections::{HashMap, VecDeque};
use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::words::{
    build_vn, commutator, conjugate, invert_letters, reduce_letters, Alphabet, Gen, Word,
    WordError,
};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum PresentationError {
    #[error(transparent)]
    Word(#[from] WordError),
    #[error("relator index {0} out of range")]
    BadIndex(usize),
    #[error("multiply needs two distinct relator indices")]
    SameIndex,
    #[error("empty relator not allowed here")]
    EmptyRelator,
    #[error("parse error at line {line}: {msg}")]
    Parse { line: usize, msg: String },
}

/// A finite presentation: ordered generators plus freely reduced relators.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Presentation {
    pub alphabet: Alphabet,
    pub relators: Vec<Word>,
}

impl Presentation {
    pub fn new(alphabet: Alphabet, relators: Vec<Word>) -> Self {
        Presentation { alphabet, relators }
    }

    pub fn is_balanced(&self) -> bool {
        self.alphabet.size() == self.relators.len()
    }

    /// Line format: `gens: x t` then one `rel: <word>` per relator.
    pub fn to_file_string(&self) -> String {
        let mut out = String::from("gens:");
        for &c in self.alphabet.letters() {
            out.push(' ');
            out.push(c);
        }
        out.push('\n');
        for r in &self.relators {
            out.push_str(&format!("rel: {}\n", r.display(&self.alphabet)));
        }
        out
    }

    pub fn parse_file_string(text: &str) -> Result<Presentation, PresentationError> {
        let mut lines = text.lines().enumerate();
        let (lineno, first) = lines
            .next()
            .ok_or(PresentationError::Parse { line: 1, msg: "empty file".into() })?;
        let rest = first.strip_prefix("gens:").ok_or(PresentationError::Parse {
            line: lineno + 1,
            msg: "expected `gens: ...`".into(),
        })?;
        let letters: Vec<char> = rest
            .split_whitespace()
            .map(|tok| {
                if tok.len() == 1 {
                    Ok(tok.chars().next().unwrap())
                } else {
                    Err(PresentationError::Parse {
                        line: lineno + 1,
                        msg: format!("bad generator name `{tok}`"),
                    })
                }
            })
            .collect::<Result<_, _>>()?;
        let alphabet = Alphabet::new(&letters);
        let mut relators = Vec::new();
        for (lineno, line) in lines {
            if line.trim().is_empty() {
                continue;
            }
            let body = line.strip_prefix("rel:").ok_or(PresentationError::Parse {
                line: lineno + 1,
                msg: "expected `rel: <word>`".into(),
            })?;
            let w = Word::parse(&alphabet, body).map_err(|e| PresentationError::Parse {
                line: lineno + 1,
                msg: e.to_string(),
            })?;
            relators.push(w);
        }
        Ok(Presentation { alphabet, relators })
    }

    /// Canonical key: each relator cyclically reduced and replaced by the
    /// lexicographic minimum among the rotations of itself and its inverse,
    /// then the multiset sorted.
    pub fn canonical_key(&self) -> Vec<Vec<u8>> {
        let mut keys: Vec<Vec<u8>> = self
            .relators
            .iter()
            .map(|r| canonical_cyclic_letters(&r.to_letter_vec()))
            .collect();
        keys.sort();
        keys
    }
}

impl fmt::Display for Presentation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "<")?;
        for (i, &c) in self.alphabet.letters().iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{c}")?;
        }
        write!(f, " | ")?;
        for (i, r) in self.relators.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            if r.is_empty() {
                write!(f, "1")?;
            } else {
                write!(f, "{}", r.display(&self.alphabet))?;
            }
        }
        write!(f, ">")
    }
}

fn cyclic_reduce_letters(w: Vec<u8>) -> Vec<u8> {
    let mut w = reduce_letters(&w);
    while w.len() >= 2 && w[0] == (*w.last().unwrap() ^ 1) {
        w.pop();
        w.remove(0);
    }
    w
}

/// Lex-minimal rotation over a cyclic word and its inverse.
pub fn canonical_cyclic_letters(letters: &[u8]) -> Vec<u8> {
    let w = cyclic_reduce_letters(letters.to_vec());
    if w.is_empty() {
        return w;
    }
    let mut best: Option<Vec<u8>> = None;
    for cand in [w.clone(), invert_letters(&w)] {
        for r in 0..cand.len() {
            let rot: Vec<u8> = cand[r..].iter().chain(&cand[..r]).copied().collect();
            if best.as_ref().is_none_or(|b| rot < *b) {
                best = Some(rot);
            }
        }
    }
    best.unwrap()
}

/// The Baumslag-Gersten group `B = ⟨x,t | x^{x^t} = x²⟩`.
pub fn baumslag_gersten() -> Presentation {
    let ab = Alphabet::xt();
    let x = Word::generator(Gen(0));
    let t = Word::generator(Gen(1));
    // r₁ = (x^t) x (x^t)⁻¹ · x⁻²
    let r1 = conjugate(&x, &conjugate(&x, &t)).concat(&Word::power(Gen(0), -2));
    Presentation::new(ab, vec![r1])
}

/// The balanced presentation `P_n = ⟨x,t | r₁, [v_n,x³][v_n,x⁵][v_n,x⁷]t⁻¹⟩`.
pub fn build_pn(n: u64) -> Result<Presentation, PresentationError> {
    let v = build_vn(n)?;
    let x = |e: i64| Word::power(Gen(0), e);
    let mut r2 = commutator(&v, &x(3));
    r2.extend(&commutator(&v, &x(5)));
    r2.extend(&commutator(&v, &x(7)));
    r2.extend(&Word::power(Gen(1), -1));
    let base = baumslag_gersten();
    if r2.is_empty() {
        return Err(PresentationError::EmptyRelator);
    }
    Ok(Presentation::new(base.alphabet, vec![base.relators[0].clone(), r2]))
}

/// An Andrews-Curtis move: relator inversion, right multiplication by another
/// relator, or conjugation by a single (signed) generator.
#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub enum AcMove {
    Invert { i: usize },
    Multiply { i: usize, j: usize },
    Conjugate { i: usize, gen: u8, inverse: bool },
}

impl fmt::Display for AcMove {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            AcMove::Invert { i } => write!(f, "invert {i}"),
            AcMove::Multiply { i, j } => write!(f, "multiply {i} {j}"),
            AcMove::Conjugate { i, gen, inverse } => {
                write!(f, "conjugate {i} by g{gen}{}", if inverse { "^-1" } else { "" })
            }
        }
    }
}

pub fn ac_move(p: &Presentation, mv: AcMove) -> Result<Presentation, PresentationError> {
    let k = p.relators.len();
    let check = |i: usize| if i < k { Ok(()) } else { Err(PresentationError::BadIndex(i)) };
    let mut out = p.clone();
    match mv {
        AcMove::Invert { i } => {
            check(i)?;
            out.relators[i] = p.relators[i].inverse();
        }
        AcMove::Multiply { i, j } => {
            check(i)?;
            check(j)?;
            if i == j {
                return Err(PresentationError::SameIndex);
            }
            out.relators[i] = p.relators[i].concat(&p.relators[j]);
        }
        AcMove::Conjugate { i, gen, inverse } => {
            check(i)?;
            if usize::from(gen) >= p.alphabet.size() {
                return Err(PresentationError::BadIndex(gen as usize));
            }
            let g = Word::power(Gen(gen), if inverse { -1 } else { 1 });
            out.relators[i] = conjugate(&p.relators[i], &g);
        }
    }
    Ok(out)
}

pub fn apply_ac_moves(
    p: &Presentation,
    moves: &[AcMove],
) -> Result<Presentation, PresentationError> {
    let mut cur = p.clone();
    for &mv in moves {
        cur = ac_move(&cur, mv)?;
    }
    Ok(cur)
}

#[derive(Clone, Debug, Serialize)]
pub struct AcSearchOutcome {
    pub moves: Option<Vec<AcMove>>,
    pub depth_reached: usize,
    pub states_explored: usize,
    pub capped: bool,
}

/// Breadth-first search for an Andrews-Curtis move sequence transforming `p`
/// into `target`. States are the literal freely-reduced relator tuples (so
/// recorded sequences replay exactly); the target is matched up to cyclic
/// rotation, inversion, and relator order. Relators are capped at `max_len`
/// letters; a miss within bounds is not a disproof.
pub fn ac_search(
    p: &Presentation,
    target: &Presentation,
    max_depth: usize,
    max_len: usize,
    max_states: usize,
) -> AcSearchOutcome {
    let target_key = target.canonical_key();
    if p.canonical_key() == target_key {
        return AcSearchOutcome {
            moves: Some(Vec::new()),
            depth_reached: 0,
            states_explored: 1,
            capped: false,
        };
    }
    let nrel = p.relators.len();
    let ngens = p.alphabet.size() as u8;
    let mut moves = Vec::new();
    for i in 0..nrel {
        moves.push(AcMove::Invert { i });
    }
    for i in 0..nrel {
        for j in 0..nrel {
            if i != j {
                moves.push(AcMove::Multiply { i, j });
            }
        }
    }
    for i in 0..nrel {
        for gen in 0..ngens {
            for inverse in [false, true] {
                moves.push(AcMove::Conjugate { i, gen, inverse });
            }
        }
    }

    // state key: the literal relator letter tuple, in order
    let state_key = |q: &Presentation| -> Vec<Vec<u8>> {
        q.relators.iter().map(|r| r.to_letter_vec()).collect()
    };
    let mut parents: HashMap<Vec<Vec<u8>>, (Vec<Vec<u8>>, AcMove)> = HashMap::new();
    let mut queue: VecDeque<(Presentation, usize)> = VecDeque::new();
    let start_key = state_key(p);
    queue.push_back((p.clone(), 0));
    let mut seen = std::collections::HashSet::new();
    seen.insert(start_key.clone());
    let mut explored = 0usize;
    let mut depth_reached = 0usize;
    let mut capped = false;

    while let Some((cur, depth)) = queue.pop_front() {
        explored += 1;
        depth_reached = depth_reached.max(depth);
        if depth == max_depth {
            capped = true;
            continue;
        }
        let cur_key = state_key(&cur);
        for &mv in &moves {
            let next = ac_move(&cur, mv).expect("enumerated moves are valid");
            if next.relators.iter().any(|r| r.len() as usize > max_len) {
                capped = true;
                continue;
            }
            let key = state_key(&next);
            if !seen.insert(key.clone()) {
                continue;
            }
            parents.insert(key.clone(), (cur_key.clone(), mv));
            if next.canonical_key() == target_key {
                // walk parents back to the start
                let mut seq = vec![mv];
                let mut at = cur_key.clone();
                while at != start_key {
                    let (prev, m) = parents.get(&at).expect("parent chain").clone();
                    seq.push(m);
                    at = prev;
                }
                seq.reverse();
                return AcSearchOutcome {
                    moves: Some(seq),
                    depth_reached: depth + 1,
                    states_explored: explored,
                    capped: false,
                };
            }
            if seen.len() >= max_states {
                capped = true;
                break;
            }
            queue.push_back((next, depth + 1));
        }
        if seen.len() >= max_states {
            capped = true;
            break;
        }
    }
    AcSearchOutcome { moves: None, depth_reached, states_explored: explored, capped }
}


#[cfg(test)]
mod ac_search_tests {
    use super::*;
    use crate::words::{Alphabet, Gen, Word};

    #[test]
    fn ac_search_trivializes_p1() {
        let p = build_pn(1).unwrap();
        let target = Presentation::new(
            Alphabet::xt(),
            vec![Word::generator(Gen(0)), Word::generator(Gen(1))],
        );
        let out = ac_search(&p, &target, 12, 16, 500_000);
        let seq = out.moves.clone().expect("trivializing sequence within bounds");
        // actual depth observed: 5 moves suffice
        assert_eq!(seq.len(), 5);
        let end = apply_ac_moves(&p, &seq).unwrap();
        assert_eq!(end.canonical_key(), target.canonical_key());
    }
}
