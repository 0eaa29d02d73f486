//! Triviality certification and relator-application probes.
//!
//! `coset_enumerate` runs a Felsch-style Todd-Coxeter enumeration over the
//! trivial subgroup; one surviving coset certifies the trivial group.
//! `dehn_probe` searches for the minimal number of relator insertions turning
//! a trivial word into the empty word, with a replayable certificate.

use std::collections::HashMap;

use rayon::prelude::*;
use serde::Serialize;

use crate::presentations::{Presentation, PresentationError};
use crate::words::{build_big_power_word, invert_letters, reduce_letters, Gen, Word};

const EMPTY: u32 = u32::MAX;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub enum EnumOutcome {
    /// Enumeration completed; the coset count is the group order.
    Order(usize),
    /// Coset cap exceeded; not a disproof of finiteness or triviality.
    Overflow { live: usize, defined: usize },
}

/// Coset table with one column per signed generator and union-find
/// coincidence handling.
struct CosetTable {
    ncols: usize,
    rows: Vec<u32>,
    rep: Vec<u32>,
    live: usize,
    deductions: Vec<(u32, u8)>,
}

impl CosetTable {
    fn new(ncols: usize) -> Self {
        CosetTable { ncols, rows: vec![EMPTY; ncols], rep: vec![0], live: 1, deductions: Vec::new() }
    }

    fn find(&mut self, mut a: u32) -> u32 {
        while self.rep[a as usize] != a {
            let up = self.rep[self.rep[a as usize] as usize];
            self.rep[a as usize] = up;
            a = up;
        }
        a
    }

    fn cell(&self, a: u32, c: u8) -> u32 {
        self.rows[a as usize * self.ncols + c as usize]
    }

    fn cell_mut(&mut self, a: u32, c: u8) -> &mut u32 {
        &mut self.rows[a as usize * self.ncols + c as usize]
    }

    /// Entry lookup through the union-find, with write-back.
    fn entry(&mut self, a: u32, c: u8) -> Option<u32> {
        let raw = self.cell(a, c);
        if raw == EMPTY {
            return None;
        }
        let f = self.find(raw);
        if f != raw {
            *self.cell_mut(a, c) = f;
        }
        Some(f)
    }

    fn new_coset(&mut self) -> u32 {
        let idx = self.rep.len() as u32;
        self.rep.push(idx);
        self.rows.extend(std::iter::repeat_n(EMPTY, self.ncols));
        self.live += 1;
        idx
    }

    /// Records `a · c = b` for live representatives, folding in any forced
    /// coincidence.
    fn join(&mut self, a: u32, c: u8, b: u32) {
        let a = self.find(a);
        let b = self.find(b);
        if let Some(d) = self.entry(a, c) {
            if d != b {
                self.coincide(d, b);
            }
            return;
        }
        if let Some(e) = self.entry(b, c ^ 1) {
            if e != a {
                self.coincide(e, a);
            }
            return;
        }
        *self.cell_mut(a, c) = b;
        *self.cell_mut(b, (c ^ 1) as u8) = a;
        self.deductions.push((a, c));
        self.deductions.push((b, c ^ 1));
    }

    fn coincide(&mut self, a: u32, b: u32) {
        let mut queue = vec![(a, b)];
        while let Some((a, b)) = queue.pop() {
            let a = self.find(a);
            let b = self.find(b);
            if a == b {
                continue;
            }
            let (keep, dead) = if a < b { (a, b) } else { (b, a) };
            self.rep[dead as usize] = keep;
            self.live -= 1;
            for c in 0..self.ncols as u8 {
                let raw = self.cell(dead, c);
                if raw == EMPTY {
                    continue;
                }
                *self.cell_mut(dead, c) = EMPTY;
                let d = self.find(raw);
                match self.entry(keep, c) {
                    Some(e) => {
                        if e != d {
                            queue.push((e, d));
                        }
                    }
                    None => {
                        *self.cell_mut(keep, c) = d;
                        self.deductions.push((keep, c));
                        // reverse direction
                        match self.entry(d, c ^ 1) {
                            Some(f) => {
                                if f != keep {
                                    queue.push((f, keep));
                                }
                            }
                            None => {
                                *self.cell_mut(d, (c ^ 1) as u8) = keep;
                                self.deductions.push((d, c ^ 1));
                            }
                        }
                    }
                }
            }
        }
    }

    /// Scans relator cycle `w` from coset `a`, filling a single gap or
    /// folding a coincidence.
    fn scan_and_fill(&mut self, a: u32, w: &[u8]) {
        let n = w.len();
        let mut f = a;
        let mut i = 0;
        while i < n {
            match self.entry(f, w[i]) {
                Some(next) => {
                    f = next;
                    i += 1;
                }
                None => break,
            }
        }
        if i == n {
            let a = self.find(a);
            if f != a {
                self.coincide(f, a);
            }
            return;
        }
        let mut b = self.find(a);
        let mut j = n;
        while j > i + 1 {
            match self.entry(b, w[j - 1] ^ 1) {
                Some(prev) => {
                    b = prev;
                    j -= 1;
                }
                None => break,
            }
        }
        if j == i + 1 {
            self.join(f, w[i], b);
        }
        // j == i cannot happen: the forward scan stopped on an empty cell
    }
}

/// Felsch-style coset enumeration of `p` over the trivial subgroup.
/// Deterministic: lowest live coset first, columns in declared generator
/// order.
pub fn coset_enumerate(p: &Presentation, max_cosets: usize) -> Result<EnumOutcome, PresentationError> {
    if p.relators.iter().any(|r| r.is_empty()) {
        return Err(PresentationError::EmptyRelator);
    }
    let ncols = 2 * p.alphabet.size();
    // rotations of each relator cycle and its inverse, grouped by first letter
    let mut by_first: Vec<Vec<Vec<u8>>> = vec![Vec::new(); ncols];
    for r in &p.relators {
        let w = r.cyclically_reduced().to_letter_vec();
        if w.is_empty() {
            continue;
        }
        let mut rots = std::collections::BTreeSet::new();
        for base in [w.clone(), invert_letters(&w)] {
            for k in 0..base.len() {
                let rot: Vec<u8> = base[k..].iter().chain(&base[..k]).copied().collect();
                rots.insert(rot);
            }
        }
        for rot in rots {
            by_first[rot[0] as usize].push(rot);
        }
    }

    let mut t = CosetTable::new(ncols);
    loop {
        // drain deductions
        while let Some((a, c)) = t.deductions.pop() {
            let a = t.find(a);
            if t.entry(a, c).is_none() {
                continue;
            }
            let scans: &[Vec<u8>] = &by_first[c as usize];
            // clone to appease the borrow checker; rotation lists are static
            let scans = scans.to_vec();
            for w in &scans {
                t.scan_and_fill(a, w);
            }
        }
        // next undefined entry in scan order
        let mut next: Option<(u32, u8)> = None;
        for a in 0..t.rep.len() as u32 {
            if t.find(a) != a {
                continue;
            }
            for c in 0..ncols as u8 {
                if t.cell(a, c) == EMPTY {
                    next = Some((a, c));
                    break;
                }
            }
            if next.is_some() {
                break;
            }
        }
        match next {
            None => return Ok(EnumOutcome::Order(t.live)),
            Some((a, c)) => {
                if t.live >= max_cosets {
                    return Ok(EnumOutcome::Overflow { live: t.live, defined: t.rep.len() });
                }
                let b = t.new_coset();
                t.join(a, c, b);
            }
        }
    }
}

/// One relator insertion: splice `rotation` of relator `relator` (inverted
/// first when `inverted`) into the word at `position`, then freely reduce.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct DehnStep {
    pub relator: usize,
    pub inverted: bool,
    pub rotation: usize,
    pub position: usize,
}

#[derive(Clone, Debug, Serialize)]
pub struct DehnProbeResult {
    pub applications: Option<u32>,
    pub steps: Option<Vec<DehnStep>>,
    pub explored: usize,
    pub capped: bool,
}

fn insertion_table(p: &Presentation) -> Vec<(DehnStep, Vec<u8>)> {
    let mut out = Vec::new();
    for (ri, r) in p.relators.iter().enumerate() {
        let w = r.cyclically_reduced().to_letter_vec();
        if w.is_empty() {
            continue;
        }
        for inverted in [false, true] {
            let base = if inverted { invert_letters(&w) } else { w.clone() };
            for k in 0..base.len() {
                let rot: Vec<u8> = base[k..].iter().chain(&base[..k]).copied().collect();
                out.push((
                    DehnStep { relator: ri, inverted, rotation: k, position: 0 },
                    rot,
                ));
            }
        }
    }
    out
}

pub fn apply_dehn_step(p: &Presentation, word: &[u8], step: &DehnStep) -> Option<Vec<u8>> {
    let r = p.relators.get(step.relator)?.cyclically_reduced().to_letter_vec();
    if r.is_empty() || step.rotation >= r.len() || step.position > word.len() {
        return None;
    }
    let base = if step.inverted { invert_letters(&r) } else { r };
    let rot: Vec<u8> = base[step.rotation..]
        .iter()
        .chain(&base[..step.rotation])
        .copied()
        .collect();
    let mut spliced = Vec::with_capacity(word.len() + rot.len());
    spliced.extend_from_slice(&word[..step.position]);
    spliced.extend_from_slice(&rot);
    spliced.extend_from_slice(&word[step.position..]);
    Some(reduce_letters(&spliced))
}

/// Replays a certificate: every step must apply, the end state must be empty.
pub fn verify_dehn_certificate(p: &Presentation, w: &Word, steps: &[DehnStep]) -> bool {
    let mut cur = w.to_letter_vec();
    for step in steps {
        match apply_dehn_step(p, &cur, step) {
            Some(next) => cur = next,
            None => return false,
        }
    }
    cur.is_empty()
}

fn neighbors(
    word: &[u8],
    insertions: &[(DehnStep, Vec<u8>)],
    max_len: usize,
) -> Vec<(Vec<u8>, DehnStep)> {
    let mut out = Vec::new();
    for (proto, rot) in insertions {
        for pos in 0..=word.len() {
            let mut spliced = Vec::with_capacity(word.len() + rot.len());
            spliced.extend_from_slice(&word[..pos]);
            spliced.extend_from_slice(rot);
            spliced.extend_from_slice(&word[pos..]);
            let v = reduce_letters(&spliced);
            if v.len() <= max_len {
                out.push((v, DehnStep { position: pos, ..*proto }));
            }
        }
    }
    out
}

/// Minimal relator-insertion count taking `w` to the empty word, by
/// bidirectional breadth-first search over freely reduced words of length
/// `<= max_len`. Results are independent of `threads`.
pub fn dehn_probe(
    p: &Presentation,
    w: &Word,
    max_len: usize,
    max_states: usize,
    threads: usize,
) -> DehnProbeResult {
    let start = w.to_letter_vec();
    if start.is_empty() {
        return DehnProbeResult {
            applications: Some(0),
            steps: Some(Vec::new()),
            explored: 1,
            capped: false,
        };
    }
    if start.len() > max_len {
        return DehnProbeResult { applications: None, steps: None, explored: 0, capped: true };
    }
    let insertions = insertion_table(p);
    if insertions.is_empty() {
        return DehnProbeResult { applications: None, steps: None, explored: 0, capped: true };
    }

    // forward side: parents point toward `start`; backward side: toward empty
    let mut fwd: HashMap<Vec<u8>, Option<(Vec<u8>, DehnStep)>> = HashMap::new();
    let mut bwd: HashMap<Vec<u8>, Option<(Vec<u8>, DehnStep)>> = HashMap::new();
    fwd.insert(start.clone(), None);
    bwd.insert(Vec::new(), None);
    let mut fwd_frontier = vec![start.clone()];
    let mut bwd_frontier = vec![Vec::new()];
    let mut capped = false;
    let pool = (threads > 1).then(|| {
        rayon::ThreadPoolBuilder::new()
            .num_threads(threads)
            .build()
            .expect("thread pool")
    });

    let meet = 'search: loop {
        if fwd_frontier.is_empty() || bwd_frontier.is_empty() {
            break None;
        }
        if fwd.len() + bwd.len() >= max_states {
            capped = true;
            break None;
        }
        // expand the smaller side; ties go forward
        let expand_fwd = fwd_frontier.len() <= bwd_frontier.len();
        let (frontier, this, other) = if expand_fwd {
            (&mut fwd_frontier, &mut fwd, &mut bwd)
        } else {
            (&mut bwd_frontier, &mut bwd, &mut fwd)
        };
        let expansions: Vec<(Vec<u8>, Vec<(Vec<u8>, DehnStep)>)> = if let Some(pool) = &pool {
            pool.install(|| {
                frontier
                    .par_iter()
                    .map(|u| (u.clone(), neighbors(u, &insertions, max_len)))
                    .collect()
            })
        } else {
            frontier
                .iter()
                .map(|u| (u.clone(), neighbors(u, &insertions, max_len)))
                .collect()
        };
        let mut next_frontier = Vec::new();
        for (u, nbrs) in expansions {
            for (v, step) in nbrs {
                if this.contains_key(&v) {
                    continue;
                }
                this.insert(v.clone(), Some((u.clone(), step)));
                if other.contains_key(&v) {
                    break 'search Some(v);
                }
                next_frontier.push(v);
                if this.len() + other.len() >= max_states {
                    capped = true;
                    break 'search None;
                }
            }
        }
        *frontier = next_frontier;
    };

    let explored = fwd.len() + bwd.len();
    let Some(meet) = meet else {
        return DehnProbeResult { applications: None, steps: None, explored, capped };
    };

    // forward half: start -> meet
    let mut steps: Vec<DehnStep> = Vec::new();
    let mut at = meet.clone();
    while let Some(Some((parent, step))) = fwd.get(&at).cloned() {
        steps.push(step);
        at = parent;
    }
    steps.reverse();
    // backward half: meet -> empty, inverting each recorded edge
    let mut cur = meet;
    while let Some(Some((parent, _))) = bwd.get(&cur).cloned() {
        // find an insertion taking `cur` to `parent`
        let step = neighbors(&cur, &insertions, max_len)
            .into_iter()
            .find(|(v, _)| *v == parent)
            .map(|(_, s)| s)
            .expect("insertion moves are symmetric");
        steps.push(step);
        cur = parent;
    }
    let applications = steps.len() as u32;
    debug_assert!(verify_dehn_certificate(p, w, &steps));
    DehnProbeResult {
        applications: Some(applications),
        steps: Some(steps),
        explored,
        capped: false,
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct PowerCheckReport {
    pub m: u32,
    pub word_len: u64,
    pub probe: DehnProbeResult,
}

/// Certifies `V_m =_B x^{E(m)}` by probing `V_m · x^{-E(m)}` in the
/// Baumslag-Gersten group. Only small `m` (exact `E(m)`, feasible search)
/// makes sense here; `m <= 2` is guaranteed.
pub fn power_check(m: u32, max_len: usize, max_states: usize, threads: usize) -> PowerCheckReport {
    let e_m: i64 = {
        // E(m) for m <= 4 fits easily
        let mut v: i64 = 1;
        for _ in 0..m {
            v = 1i64 << v.min(62);
        }
        v
    };
    let w = build_big_power_word(m).concat(&Word::power(Gen(0), -e_m));
    let b = crate::presentations::baumslag_gersten();
    let probe = dehn_probe(&b, &w, max_len, max_states, threads);
    PowerCheckReport { m, word_len: w.len(), probe }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::presentations::{baumslag_gersten, build_pn};
    use crate::words::Alphabet;

    fn present(gens: &[char], rels: &[&str]) -> Presentation {
        let ab = Alphabet::new(gens);
        let relators = rels.iter().map(|r| Word::parse(&ab, r).unwrap()).collect();
        Presentation::new(ab, relators)
    }

    #[test]
    fn order_of_trivial_one_generator() {
        let p = present(&['x'], &["x"]);
        assert_eq!(coset_enumerate(&p, 100).unwrap(), EnumOutcome::Order(1));
    }

    #[test]
    fn order_of_cyclic_groups() {
        for n in 1..=12u32 {
            let rel = "x".repeat(n as usize);
            let p = present(&['x'], &[&rel]);
            assert_eq!(coset_enumerate(&p, 1000).unwrap(), EnumOutcome::Order(n as usize));
        }
    }

    #[test]
    fn order_of_s3() {
        let p = present(&['a', 'b'], &["aaa", "bb", "abab"]);
        assert_eq!(coset_enumerate(&p, 1000).unwrap(), EnumOutcome::Order(6));
    }

    #[test]
    fn order_of_p1_is_one() {
        let p = build_pn(1).unwrap();
        assert_eq!(coset_enumerate(&p, 10_000).unwrap(), EnumOutcome::Order(1));
    }

    #[test]
    fn overflow_reported_not_asserted() {
        // free group on two generators: can never complete
        let p = present(&['a', 'b'], &["abAB"]);
        match coset_enumerate(&p, 50).unwrap() {
            EnumOutcome::Overflow { live, .. } => assert!(live >= 50),
            other => panic!("expected overflow, got {other:?}"),
        }
    }

    #[test]
    fn empty_relator_rejected() {
        let p = present(&['a'], &[""]);
        assert!(coset_enumerate(&p, 10).is_err());
    }

    #[test]
    fn dehn_probe_relator_itself() {
        let b = baumslag_gersten();
        let r1 = b.relators[0].clone();
        let res = dehn_probe(&b, &r1, 24, 100_000, 1);
        assert_eq!(res.applications, Some(1));
        assert!(verify_dehn_certificate(&b, &r1, res.steps.as_ref().unwrap()));
    }

    #[test]
    fn dehn_probe_v1_power() {
        let b = baumslag_gersten();
        let w = build_big_power_word(1).concat(&Word::power(Gen(0), -2));
        let res = dehn_probe(&b, &w, 24, 100_000, 1);
        assert_eq!(res.applications, Some(1));
    }

    /// Independent oracle: plain unidirectional BFS.
    fn oracle_distance(p: &Presentation, w: &Word, max_len: usize, max_depth: u32) -> Option<u32> {
        let start = w.to_letter_vec();
        if start.is_empty() {
            return Some(0);
        }
        let insertions = insertion_table(p);
        let mut seen = std::collections::HashSet::new();
        seen.insert(start.clone());
        let mut frontier = vec![start];
        for depth in 1..=max_depth {
            let mut next = Vec::new();
            for u in &frontier {
                for (v, _) in neighbors(u, &insertions, max_len) {
                    if v.is_empty() {
                        return Some(depth);
                    }
                    if seen.insert(v.clone()) {
                        next.push(v);
                    }
                }
            }
            frontier = next;
        }
        None
    }

    #[test]
    fn bidirectional_agrees_with_oracle() {
        let b = baumslag_gersten();
        let r1 = b.relators[0].clone();
        let w2 = r1.concat(&crate::words::conjugate(&r1, &Word::generator(Gen(1))));
        for w in [r1, w2] {
            let res = dehn_probe(&b, &w, 30, 200_000, 1);
            let oracle = oracle_distance(&b, &w, 30, 3);
            assert_eq!(res.applications, oracle);
        }
    }

    #[test]
    fn dehn_probe_symmetric_under_inversion() {
        let b = baumslag_gersten();
        let w = build_big_power_word(1).concat(&Word::power(Gen(0), -2));
        let a = dehn_probe(&b, &w, 24, 100_000, 1);
        let bb = dehn_probe(&b, &w.inverse(), 24, 100_000, 1);
        assert_eq!(a.applications, bb.applications);
    }

    #[test]
    fn dehn_probe_capped_when_word_too_long() {
        let b = baumslag_gersten();
        let w = Word::power(Gen(0), 100);
        let res = dehn_probe(&b, &w, 10, 1000, 1);
        assert!(res.capped);
        assert_eq!(res.applications, None);
    }

    #[test]
    fn power_check_small_m() {
        let r0 = power_check(0, 16, 10_000, 1);
        assert_eq!(r0.probe.applications, Some(0));
        let r1 = power_check(1, 24, 100_000, 1);
        assert_eq!(r1.probe.applications, Some(1));
    }

    #[test]
    fn deterministic_across_threads() {
        let b = baumslag_gersten();
        let w = build_big_power_word(1).concat(&Word::power(Gen(0), -2));
        let a = dehn_probe(&b, &w, 24, 100_000, 1);
        let c = dehn_probe(&b, &w, 24, 100_000, 4);
        assert_eq!(a.applications, c.applications);
    }
}
