//! Triangulations of closed PL manifolds (dimension ≤ 4) under bistellar
//! (Pachner) moves.
//!
//! A move is indexed by a face `a` and a simplex `b` on the complementary
//! vertices: it is legal when the link of `a` equals the boundary of `b`,
//! and it exchanges the `|b|` facets of `a ∗ ∂b` for the `|a|` facets of
//! `∂a ∗ b`.  With `|a| + |b| = d + 2` this covers everything from the
//! cone subdivision `1 → d+1` (where `b` is a fresh vertex) to its inverse.

use std::collections::{BTreeMap, BTreeSet, HashMap, HashSet, VecDeque};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum PachnerError {
    #[error("facet {0:?} has a repeated vertex")]
    RepeatedVertex(Vec<u32>),
    #[error("facet {facet:?} has {got} vertices, expected {want}")]
    FacetSize { facet: Vec<u32>, got: usize, want: usize },
    #[error("duplicate facet {0:?}")]
    DuplicateFacet(Vec<u32>),
    #[error("invalid move: {0}")]
    InvalidMove(String),
    #[error("dimension mismatch: {0} vs {1}")]
    DimensionMismatch(usize, usize),
    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },
}

/// A pure simplicial complex given by its top-dimensional simplices.
/// Facets are stored sorted (and the facet list itself sorted), so equality
/// of the structs is equality of labeled complexes.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Triangulation {
    dim: usize,
    facets: Vec<Vec<u32>>,
}

impl Triangulation {
    pub fn new(dim: usize, facets: Vec<Vec<u32>>) -> Result<Self, PachnerError> {
        let mut sorted: Vec<Vec<u32>> = Vec::with_capacity(facets.len());
        for mut f in facets {
            f.sort_unstable();
            if f.len() != dim + 1 {
                return Err(PachnerError::FacetSize { got: f.len(), want: dim + 1, facet: f });
            }
            if f.windows(2).any(|w| w[0] == w[1]) {
                return Err(PachnerError::RepeatedVertex(f));
            }
            sorted.push(f);
        }
        sorted.sort_unstable();
        if let Some(w) = sorted.windows(2).find(|w| w[0] == w[1]) {
            return Err(PachnerError::DuplicateFacet(w[0].clone()));
        }
        Ok(Triangulation { dim, facets: sorted })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn facets(&self) -> &[Vec<u32>] {
        &self.facets
    }

    pub fn vertices(&self) -> BTreeSet<u32> {
        self.facets.iter().flatten().copied().collect()
    }

    pub fn is_face(&self, face: &[u32]) -> bool {
        self.facets.iter().any(|f| is_subset(face, f))
    }

    /// All faces of dimension `k`, as sorted vertex tuples.
    pub fn faces(&self, k: usize) -> BTreeSet<Vec<u32>> {
        let mut out = BTreeSet::new();
        for f in &self.facets {
            for c in combinations(f, k + 1) {
                out.insert(c);
            }
        }
        out
    }

    /// Face counts per dimension, `f[k]` = number of k-faces.
    pub fn f_vector(&self) -> Vec<usize> {
        (0..=self.dim).map(|k| self.faces(k).len()).collect()
    }

    pub fn euler_characteristic(&self) -> i64 {
        self.f_vector()
            .iter()
            .enumerate()
            .map(|(k, &c)| if k % 2 == 0 { c as i64 } else { -(c as i64) })
            .sum()
    }

    /// Facets containing every vertex of `face`.
    pub fn star(&self, face: &[u32]) -> Vec<&Vec<u32>> {
        self.facets.iter().filter(|f| is_subset(face, f)).collect()
    }

    /// The link of `face`: the star facets with the face's vertices removed.
    pub fn link(&self, face: &[u32]) -> Vec<Vec<u32>> {
        self.star(face)
            .into_iter()
            .map(|f| f.iter().copied().filter(|v| !face.contains(v)).collect())
            .collect()
    }

    pub fn to_file_string(&self) -> String {
        let mut s = format!("dim {}\n", self.dim);
        for f in &self.facets {
            let line: Vec<String> = f.iter().map(|v| v.to_string()).collect();
            s.push_str(&line.join(" "));
            s.push('\n');
        }
        s
    }

    pub fn parse_file_string(text: &str) -> Result<Self, PachnerError> {
        let mut dim: Option<usize> = None;
        let mut facets = Vec::new();
        for (i, raw) in text.lines().enumerate() {
            let line = raw.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            if dim.is_none() {
                let rest = line.strip_prefix("dim").ok_or(PachnerError::Parse {
                    line: i + 1,
                    msg: format!("expected `dim <d>`, found {line:?}"),
                })?;
                dim = Some(rest.trim().parse().map_err(|e| PachnerError::Parse {
                    line: i + 1,
                    msg: format!("bad dimension: {e}"),
                })?);
                continue;
            }
            let verts: Result<Vec<u32>, _> = line.split_whitespace().map(str::parse).collect();
            facets.push(verts.map_err(|e| PachnerError::Parse {
                line: i + 1,
                msg: format!("bad vertex id: {e}"),
            })?);
        }
        let dim = dim.ok_or(PachnerError::Parse { line: 1, msg: "missing `dim` header".into() })?;
        Triangulation::new(dim, facets)
    }
}

/// Boundary complex of the `simplex_dim`-simplex: all proper maximal faces
/// on `simplex_dim + 1` vertices.  A closed sphere of dimension
/// `simplex_dim - 1`.
pub fn boundary_of_simplex(simplex_dim: usize) -> Triangulation {
    assert!(simplex_dim >= 2, "need a simplex of dimension at least 2");
    let verts: Vec<u32> = (0..=simplex_dim as u32).collect();
    let facets = combinations(&verts, simplex_dim);
    Triangulation::new(simplex_dim - 1, facets).expect("simplex boundary is a valid complex")
}

/// Bistellar move exchanging the star of `a` (which must be `a ∗ ∂b`)
/// for `∂a ∗ b`.  The inverse move is `(b, a)`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BistellarMove {
    pub a: Vec<u32>,
    pub b: Vec<u32>,
}

impl BistellarMove {
    pub fn new(mut a: Vec<u32>, mut b: Vec<u32>) -> Self {
        a.sort_unstable();
        b.sort_unstable();
        BistellarMove { a, b }
    }

    pub fn inverse(&self) -> Self {
        BistellarMove { a: self.b.clone(), b: self.a.clone() }
    }

    /// Facets of `a ∗ ∂b`, the subcomplex the move deletes.
    pub fn removed_facets(&self) -> Vec<Vec<u32>> {
        self.b
            .iter()
            .map(|skip| {
                let mut f: Vec<u32> =
                    self.a.iter().chain(self.b.iter().filter(|v| *v != skip)).copied().collect();
                f.sort_unstable();
                f
            })
            .collect()
    }

    /// Facets of `∂a ∗ b`, the subcomplex the move glues in.
    pub fn added_facets(&self) -> Vec<Vec<u32>> {
        self.inverse().removed_facets()
    }
}

fn check_move(t: &Triangulation, m: &BistellarMove) -> Result<(), PachnerError> {
    let inv = |msg: String| Err(PachnerError::InvalidMove(msg));
    if m.a.is_empty() || m.b.is_empty() {
        return inv("both faces of a move must be nonempty".into());
    }
    if m.a.len() + m.b.len() != t.dim + 2 {
        return inv(format!(
            "|a| + |b| = {} but dimension {} requires {}",
            m.a.len() + m.b.len(),
            t.dim,
            t.dim + 2
        ));
    }
    if m.a.iter().any(|v| m.b.contains(v)) {
        return inv(format!("faces {:?} and {:?} share a vertex", m.a, m.b));
    }
    if m.b.len() == 1 {
        // Cone subdivision: b must be a fresh vertex over the facet a.
        if !t.facets.iter().any(|f| *f == m.a) {
            return inv(format!("{:?} is not a facet", m.a));
        }
        if t.vertices().contains(&m.b[0]) {
            return inv(format!("subdividing vertex {} already present", m.b[0]));
        }
        return Ok(());
    }
    let star: BTreeSet<Vec<u32>> = t.star(&m.a).into_iter().cloned().collect();
    if star.is_empty() {
        return inv(format!("{:?} is not a face", m.a));
    }
    let removed: BTreeSet<Vec<u32>> = m.removed_facets().into_iter().collect();
    if star != removed {
        return inv(format!("link of {:?} is not the boundary of {:?}", m.a, m.b));
    }
    if t.is_face(&m.b) {
        return inv(format!("{:?} is already a face", m.b));
    }
    Ok(())
}

pub fn apply_move(t: &Triangulation, m: &BistellarMove) -> Result<Triangulation, PachnerError> {
    check_move(t, m)?;
    let removed: BTreeSet<Vec<u32>> = m.removed_facets().into_iter().collect();
    let mut facets: Vec<Vec<u32>> =
        t.facets.iter().filter(|f| !removed.contains(*f)).cloned().collect();
    facets.extend(m.added_facets());
    Triangulation::new(t.dim, facets)
}

/// All bistellar moves legal on `t`, in a deterministic order:
/// by `|a|` ascending, then by the vertex tuple of `a`.
pub fn enumerate_moves(t: &Triangulation) -> Vec<BistellarMove> {
    let mut out = Vec::new();
    for asize in 1..=t.dim + 1 {
        let candidates: BTreeSet<Vec<u32>> = t.faces(asize - 1);
        for a in candidates {
            if asize == t.dim + 1 {
                let fresh = (0..).find(|v| !t.vertices().contains(v)).unwrap();
                out.push(BistellarMove { a, b: vec![fresh] });
                continue;
            }
            let link = t.link(&a);
            // link(a) = ∂b forces exactly |b| link facets covering |b| vertices,
            // each omitting a distinct one.
            let union: BTreeSet<u32> = link.iter().flatten().copied().collect();
            if link.len() != union.len() || union.len() != t.dim + 2 - asize {
                continue;
            }
            let distinct: BTreeSet<&Vec<u32>> = link.iter().collect();
            if distinct.len() != link.len() {
                continue;
            }
            let b: Vec<u32> = union.into_iter().collect();
            if t.is_face(&b) {
                continue;
            }
            out.push(BistellarMove { a, b });
        }
    }
    out
}

/// Lexicographically minimal sorted facet list over all vertex relabelings,
/// found by backtracking over label assignments with a sorted-lower-bound
/// prune.  Isomorphic triangulations map to identical output.
pub fn canonical_form(t: &Triangulation) -> Triangulation {
    let verts: Vec<u32> = t.vertices().into_iter().collect();
    let n = verts.len();
    let facets_idx: Vec<Vec<usize>> = t
        .facets
        .iter()
        .map(|f| f.iter().map(|v| verts.binary_search(v).unwrap()).collect())
        .collect();

    struct Search {
        facets: Vec<Vec<usize>>,
        label: Vec<Option<u32>>,
        used: Vec<bool>,
        n: usize,
        best: Option<Vec<Vec<u32>>>,
    }

    impl Search {
        /// Sorted list of per-facet lower bounds: assigned vertices keep
        /// their labels, the rest take the smallest labels still free.
        /// Every completion relabels each facet to something lex ≥ its
        /// bound, so the sorted list bounds the final facet list from below.
        fn bound(&self, assigned: u32) -> Vec<Vec<u32>> {
            let mut rows: Vec<Vec<u32>> = self
                .facets
                .iter()
                .map(|f| {
                    let mut row: Vec<u32> =
                        f.iter().filter_map(|&v| self.label[v]).collect();
                    let missing = f.len() - row.len();
                    row.extend(assigned..assigned + missing as u32);
                    row.sort_unstable();
                    row
                })
                .collect();
            rows.sort_unstable();
            rows
        }

        fn descend(&mut self, assigned: u32) {
            let lb = self.bound(assigned);
            if let Some(best) = &self.best {
                // A subtree that can at most tie the incumbent is useless.
                if lb >= *best {
                    return;
                }
            }
            if assigned as usize == self.n {
                // Fully assigned: the bound is the exact relabeled list.
                if self.best.as_ref().map_or(true, |b| lb < *b) {
                    self.best = Some(lb);
                }
                return;
            }
            // Try the most promising vertices first so the initial complete
            // assignment is already a strong bound.
            let mut order: Vec<(Vec<Vec<u32>>, usize)> = Vec::new();
            for v in 0..self.n {
                if self.used[v] {
                    continue;
                }
                self.label[v] = Some(assigned);
                order.push((self.bound(assigned + 1), v));
                self.label[v] = None;
            }
            order.sort_unstable();
            for (_, v) in order {
                self.label[v] = Some(assigned);
                self.used[v] = true;
                self.descend(assigned + 1);
                self.label[v] = None;
                self.used[v] = false;
            }
        }
    }

    let mut search = Search {
        facets: facets_idx,
        label: vec![None; n],
        used: vec![false; n],
        n,
        best: None,
    };
    if search.facets.is_empty() {
        return Triangulation::new(t.dim, Vec::new()).expect("empty complex");
    }
    // In the minimal labeling the smallest facet is exactly [0, 1, …, d]
    // (otherwise swapping two labels would shrink it), so the first d+1
    // labels always fill one facet: seed the search with every
    // (facet, vertex order) choice instead of free assignment.
    let facet_count = search.facets.len();
    let width = t.dim + 1;
    let mut order: Vec<usize> = (0..width).collect();
    // Rank the seeds by their lower bound first: descending into the most
    // promising one immediately makes `best` tight, so the rest prune fast.
    let mut seeds: Vec<(Vec<Vec<u32>>, usize, Vec<usize>)> = Vec::new();
    for fi in 0..facet_count {
        permutations(&mut order, 0, &mut |perm| {
            for (slot, &pos) in perm.iter().enumerate() {
                let v = search.facets[fi][pos];
                search.label[v] = Some(slot as u32);
            }
            seeds.push((search.bound(width as u32), fi, perm.to_vec()));
            for &pos in perm {
                search.label[search.facets[fi][pos]] = None;
            }
        });
    }
    seeds.sort_unstable();
    for (bound, fi, perm) in seeds {
        if search.best.as_ref().is_some_and(|b| bound >= *b) {
            break; // sorted: every later seed is at least as bad
        }
        for (slot, &pos) in perm.iter().enumerate() {
            let v = search.facets[fi][pos];
            search.label[v] = Some(slot as u32);
            search.used[v] = true;
        }
        search.descend(width as u32);
        for &pos in &perm {
            let v = search.facets[fi][pos];
            search.label[v] = None;
            search.used[v] = false;
        }
    }
    let facets = search.best.unwrap_or_default();
    Triangulation::new(t.dim, facets).expect("relabeling preserves validity")
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DistanceOutcome {
    /// Exact bistellar distance, or `None` when the caps were exhausted first.
    pub distance: Option<usize>,
    pub explored: usize,
    /// Depth fully searched when the answer is unknown.
    pub radius_searched: usize,
    pub capped: bool,
}

/// Breadth-first bistellar distance between isomorphism classes, restricted
/// to intermediate complexes with at most `max_vertices` vertices and
/// `max_states` explored classes.
pub fn bfs_distance(
    a: &Triangulation,
    b: &Triangulation,
    max_vertices: usize,
    max_states: usize,
) -> Result<DistanceOutcome, PachnerError> {
    if a.dim != b.dim {
        return Err(PachnerError::DimensionMismatch(a.dim, b.dim));
    }
    let target = canonical_form(b);
    let start = canonical_form(a);
    if start == target {
        return Ok(DistanceOutcome { distance: Some(0), explored: 1, radius_searched: 0, capped: false });
    }
    let mut seen: HashSet<Vec<Vec<u32>>> = HashSet::new();
    seen.insert(start.facets.clone());
    let mut frontier = vec![start];
    let mut depth = 0;
    loop {
        depth += 1;
        let mut next = Vec::new();
        for t in &frontier {
            for m in enumerate_moves(t) {
                let nverts = t.vertices().len() + usize::from(m.b.len() == 1)
                    - usize::from(m.a.len() == 1);
                if nverts > max_vertices {
                    continue;
                }
                let image = canonical_form(&apply_move(t, &m)?);
                if image == target {
                    return Ok(DistanceOutcome {
                        distance: Some(depth),
                        explored: seen.len(),
                        radius_searched: depth,
                        capped: false,
                    });
                }
                if seen.insert(image.facets.clone()) {
                    next.push(image);
                }
                if seen.len() > max_states {
                    return Ok(DistanceOutcome {
                        distance: None,
                        explored: seen.len(),
                        radius_searched: depth - 1,
                        capped: true,
                    });
                }
            }
        }
        if next.is_empty() {
            // Ball exhausted under the vertex cap: unreachable in it.
            return Ok(DistanceOutcome {
                distance: None,
                explored: seen.len(),
                radius_searched: depth - 1,
                capped: true,
            });
        }
        frontier = next;
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct WalkStats {
    /// f-vector after every applied step, starting with the initial complex.
    pub f_trace: Vec<Vec<usize>>,
    pub moves_applied: usize,
    /// Number of removed facets per applied move.
    pub k_counts: BTreeMap<usize, usize>,
}

/// Seeded uniform random walk in the bistellar move graph, keeping the
/// vertex count at most `max_vertices`.  Stops early only if no legal move
/// remains under the cap.
pub fn random_walk(
    t: &Triangulation,
    steps: usize,
    seed: u64,
    max_vertices: usize,
) -> (Triangulation, WalkStats) {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut current = t.clone();
    let mut stats = WalkStats {
        f_trace: vec![current.f_vector()],
        moves_applied: 0,
        k_counts: BTreeMap::new(),
    };
    for _ in 0..steps {
        let nverts = current.vertices().len();
        let moves: Vec<BistellarMove> = enumerate_moves(&current)
            .into_iter()
            .filter(|m| {
                nverts + usize::from(m.b.len() == 1) - usize::from(m.a.len() == 1)
                    <= max_vertices
            })
            .collect();
        if moves.is_empty() {
            break;
        }
        let m = &moves[rng.gen_range(0..moves.len())];
        current = apply_move(&current, m).expect("enumerated moves are legal");
        stats.f_trace.push(current.f_vector());
        stats.moves_applied += 1;
        *stats.k_counts.entry(m.b.len()).or_insert(0) += 1;
    }
    (current, stats)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ValidationLevel {
    Pseudomanifold,
    Links,
}

#[derive(Debug, Clone, Serialize)]
pub struct ValidationReport {
    /// Definite violations; empty means the checked level passed.
    pub issues: Vec<String>,
    /// Heuristic observations (never failures), e.g. unrecognized 3-sphere links.
    pub notes: Vec<String>,
}

impl ValidationReport {
    pub fn is_valid(&self) -> bool {
        self.issues.is_empty()
    }
}

/// Is the facet-adjacency graph (facets sharing a ridge) connected?
fn facet_graph_connected(t: &Triangulation) -> bool {
    if t.facets.is_empty() {
        return true;
    }
    let mut by_ridge: HashMap<Vec<u32>, Vec<usize>> = HashMap::new();
    for (i, f) in t.facets.iter().enumerate() {
        for r in combinations(f, f.len() - 1) {
            by_ridge.entry(r).or_default().push(i);
        }
    }
    let mut seen = vec![false; t.facets.len()];
    let mut queue = VecDeque::from([0usize]);
    seen[0] = true;
    while let Some(i) = queue.pop_front() {
        for r in combinations(&t.facets[i], t.facets[i].len() - 1) {
            for &j in &by_ridge[&r] {
                if !seen[j] {
                    seen[j] = true;
                    queue.push_back(j);
                }
            }
        }
    }
    seen.iter().all(|&s| s)
}

fn check_ridges(t: &Triangulation, issues: &mut Vec<String>) {
    let mut counts: BTreeMap<Vec<u32>, usize> = BTreeMap::new();
    for f in &t.facets {
        for r in combinations(f, f.len() - 1) {
            *counts.entry(r).or_insert(0) += 1;
        }
    }
    for (ridge, c) in counts {
        if c != 2 {
            issues.push(format!("ridge {ridge:?} lies in {c} facets, expected 2"));
        }
    }
}

pub fn validate(t: &Triangulation, level: ValidationLevel) -> ValidationReport {
    let mut report = ValidationReport { issues: Vec::new(), notes: Vec::new() };
    check_ridges(t, &mut report.issues);
    if level == ValidationLevel::Pseudomanifold || !report.issues.is_empty() {
        return report;
    }
    for v in t.vertices() {
        let link_facets = t.link(&[v]);
        if t.dim == 1 {
            continue;
        }
        let link = match Triangulation::new(t.dim - 1, link_facets) {
            Ok(l) => l,
            Err(e) => {
                report.issues.push(format!("link of vertex {v} malformed: {e}"));
                continue;
            }
        };
        match t.dim {
            2 => {
                // Link must be a single cycle: connected, every vertex in 2 edges.
                let mut deg: BTreeMap<u32, usize> = BTreeMap::new();
                for e in link.facets() {
                    for &u in e {
                        *deg.entry(u).or_insert(0) += 1;
                    }
                }
                if deg.values().any(|&d| d != 2) || !facet_graph_connected(&link) {
                    report.issues.push(format!("link of vertex {v} is not a circle"));
                }
            }
            3 => {
                let mut sub = Vec::new();
                check_ridges(&link, &mut sub);
                if !sub.is_empty() || !facet_graph_connected(&link) {
                    report.issues.push(format!("link of vertex {v} is not a closed surface"));
                } else if link.euler_characteristic() != 2 {
                    report.issues.push(format!(
                        "link of vertex {v} is a surface with χ = {}, not a 2-sphere",
                        link.euler_characteristic()
                    ));
                }
            }
            4 => {
                let mut sub = Vec::new();
                check_ridges(&link, &mut sub);
                if !sub.is_empty() || !facet_graph_connected(&link) {
                    report.issues.push(format!("link of vertex {v} is not a closed 3-manifold"));
                } else if link.euler_characteristic() != 0 {
                    report.issues.push(format!(
                        "link of vertex {v} has χ = {} ≠ 0",
                        link.euler_characteristic()
                    ));
                } else {
                    // Best-effort 3-sphere recognition: a short bistellar
                    // search toward ∂Δ⁴.  Failure is inconclusive.
                    let target = boundary_of_simplex(4);
                    match bfs_distance(&link, &target, link.vertices().len().max(6), 2_000) {
                        Ok(out) if out.distance.is_some() => {}
                        _ => report.notes.push(format!(
                            "link of vertex {v}: 3-sphere recognition undetermined (heuristic search capped)"
                        )),
                    }
                }
            }
            _ => {}
        }
    }
    report
}

/// JSON export record carrying the derived invariants alongside the facets.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct TriangulationRecord {
    pub dim: usize,
    pub facets: Vec<Vec<u32>>,
    pub f_vector: Vec<usize>,
    pub euler_characteristic: i64,
}

impl From<&Triangulation> for TriangulationRecord {
    fn from(t: &Triangulation) -> Self {
        TriangulationRecord {
            dim: t.dim,
            facets: t.facets.clone(),
            f_vector: t.f_vector(),
            euler_characteristic: t.euler_characteristic(),
        }
    }
}

fn permutations(items: &mut Vec<usize>, k: usize, visit: &mut impl FnMut(&[usize])) {
    if k == items.len() {
        visit(items);
        return;
    }
    for i in k..items.len() {
        items.swap(k, i);
        permutations(items, k + 1, visit);
        items.swap(k, i);
    }
}

fn is_subset(small: &[u32], big: &[u32]) -> bool {
    small.iter().all(|v| big.contains(v))
}

/// All size-`k` subsets of `items` (assumed sorted), in lexicographic order.
fn combinations(items: &[u32], k: usize) -> Vec<Vec<u32>> {
    let mut out = Vec::new();
    let mut current = Vec::with_capacity(k);
    fn rec(items: &[u32], k: usize, start: usize, current: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if current.len() == k {
            out.push(current.clone());
            return;
        }
        for i in start..items.len() {
            current.push(items[i]);
            rec(items, k, i + 1, current, out);
            current.pop();
        }
    }
    rec(items, k, 0, &mut current, &mut out);
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;
    use rand::Rng;

    fn binom(n: usize, k: usize) -> usize {
        if k > n {
            return 0;
        }
        (1..=k).fold(1, |acc, i| acc * (n - k + i) / i)
    }

    #[test]
    fn simplex_boundary_f_vectors() {
        let t3 = boundary_of_simplex(3);
        assert_eq!(t3.f_vector(), vec![4, 6, 4]);
        assert_eq!(t3.euler_characteristic(), 2);
        let t4 = boundary_of_simplex(4);
        assert_eq!(t4.facets().len(), 5);
        let t5 = boundary_of_simplex(5);
        assert_eq!(t5.f_vector(), vec![6, 15, 20, 15, 6]);
        assert_eq!(t5.euler_characteristic(), 2);
        for k in 0..=4 {
            assert_eq!(t5.f_vector()[k], binom(6, k + 1));
        }
    }

    #[test]
    fn validate_passes_on_spheres() {
        for d in 3..=5 {
            let t = boundary_of_simplex(d);
            let rep = validate(&t, ValidationLevel::Links);
            assert!(rep.is_valid(), "∂Δ^{d}: {:?}", rep.issues);
        }
    }

    #[test]
    fn validate_flags_triple_ridge() {
        let t = Triangulation::new(2, vec![vec![0, 1, 2], vec![0, 1, 3], vec![0, 1, 4]]).unwrap();
        let rep = validate(&t, ValidationLevel::Pseudomanifold);
        assert!(!rep.is_valid());
        assert!(rep.issues.iter().any(|m| m.contains("[0, 1]")));
    }

    /// Independent oracle: scan every face, compute its link by filtering
    /// facets, and test the boundary-of-a-simplex shape by explicit
    /// reconstruction.  Includes the fresh-vertex subdivision for each facet.
    fn brute_force_moves(t: &Triangulation) -> BTreeSet<(Vec<u32>, Vec<u32>)> {
        let mut out = BTreeSet::new();
        let fresh = (0..).find(|v| !t.vertices().contains(v)).unwrap();
        for k in 0..=t.dim() {
            for a in t.faces(k) {
                if a.len() == t.dim() + 1 {
                    out.insert((a, vec![fresh]));
                    continue;
                }
                let link: BTreeSet<Vec<u32>> = t.link(&a).into_iter().collect();
                let union: Vec<u32> =
                    link.iter().flatten().copied().collect::<BTreeSet<_>>().into_iter().collect();
                let expected: BTreeSet<Vec<u32>> = combinations(&union, union.len().saturating_sub(1))
                    .into_iter()
                    .collect();
                if union.len() == t.dim() + 2 - a.len()
                    && link == expected
                    && link.len() == union.len()
                    && !t.is_face(&union)
                {
                    out.insert((a, union));
                }
            }
        }
        out
    }

    #[test]
    fn enumerate_matches_brute_force_scan() {
        for t in [boundary_of_simplex(3), boundary_of_simplex(4), boundary_of_simplex(5)] {
            let got: BTreeSet<(Vec<u32>, Vec<u32>)> =
                enumerate_moves(&t).into_iter().map(|m| (m.a, m.b)).collect();
            assert_eq!(got, brute_force_moves(&t));
        }
        // Also on a non-symmetric complex: ∂Δ⁵ after one subdivision.
        let t = boundary_of_simplex(5);
        let m = enumerate_moves(&t).into_iter().find(|m| m.b.len() == 1).unwrap();
        let t = apply_move(&t, &m).unwrap();
        let got: BTreeSet<(Vec<u32>, Vec<u32>)> =
            enumerate_moves(&t).into_iter().map(|m| (m.a, m.b)).collect();
        assert_eq!(got, brute_force_moves(&t));
    }

    #[test]
    fn cone_subdivision_on_sphere() {
        let t = boundary_of_simplex(5);
        let moves = enumerate_moves(&t);
        let subdivisions: Vec<&BistellarMove> =
            moves.iter().filter(|m| m.b.len() == 1).collect();
        assert_eq!(subdivisions.len(), 6, "one per facet");
        let m = subdivisions[0].clone();
        let t2 = apply_move(&t, &m).unwrap();
        assert_eq!(t2.facets().len(), 10);
        assert_eq!(t2.vertices().len(), 7);
        assert_eq!(t2.euler_characteristic(), 2);
        assert!(validate(&t2, ValidationLevel::Links).is_valid());
        // The inverse (vertex removal) is listed on the image and undoes it.
        let inv = m.inverse();
        assert!(enumerate_moves(&t2).contains(&inv));
        let t3 = apply_move(&t2, &inv).unwrap();
        assert_eq!(canonical_form(&t3), canonical_form(&t));
    }

    #[test]
    fn facet_exchange_count_law() {
        // Every legal move on dimension d exchanges |b| facets for |a| with
        // |a| + |b| = d + 2; check the bookkeeping on a short walk.
        let mut t = boundary_of_simplex(5);
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for _ in 0..50 {
            let nverts = t.vertices().len();
            let moves: Vec<BistellarMove> = enumerate_moves(&t)
                .into_iter()
                .filter(|m| {
                    nverts + usize::from(m.b.len() == 1) - usize::from(m.a.len() == 1) <= 9
                })
                .collect();
            let m = moves[rng.gen_range(0..moves.len())].clone();
            let before = t.facets().len() as i64;
            let t2 = apply_move(&t, &m).unwrap();
            let k = m.b.len() as i64;
            assert_eq!(t2.facets().len() as i64 - before, (6 - k) - k);
            assert_eq!(t2.euler_characteristic(), 2);
            t = t2;
        }
    }

    #[test]
    fn invalid_moves_rejected() {
        let t = boundary_of_simplex(4);
        // b already a face.
        let err = apply_move(&t, &BistellarMove::new(vec![0, 1], vec![2, 3, 4])).unwrap_err();
        assert!(matches!(err, PachnerError::InvalidMove(_)));
        // Not a face at all.
        let err = apply_move(&t, &BistellarMove::new(vec![9], vec![0, 1, 2, 3])).unwrap_err();
        assert!(matches!(err, PachnerError::InvalidMove(_)));
        // Subdividing vertex already present.
        let err = apply_move(&t, &BistellarMove::new(vec![0, 1, 2, 3], vec![4])).unwrap_err();
        assert!(matches!(err, PachnerError::InvalidMove(_)));
    }

    /// Oracle: lexicographic minimum over every vertex bijection, computed
    /// by explicit permutation enumeration.
    fn brute_force_canonical(t: &Triangulation) -> Vec<Vec<u32>> {
        let verts: Vec<u32> = t.vertices().into_iter().collect();
        let n = verts.len();
        let mut perm: Vec<u32> = (0..n as u32).collect();
        let mut best: Option<Vec<Vec<u32>>> = None;
        permute(&mut perm, 0, &mut |p| {
            let mut facets: Vec<Vec<u32>> = t
                .facets()
                .iter()
                .map(|f| {
                    let mut row: Vec<u32> = f
                        .iter()
                        .map(|v| p[verts.binary_search(v).unwrap() as usize])
                        .collect();
                    row.sort_unstable();
                    row
                })
                .collect();
            facets.sort_unstable();
            if best.as_ref().map_or(true, |b| facets < *b) {
                best = Some(facets);
            }
        });
        best.unwrap()
    }

    fn permute(items: &mut Vec<u32>, k: usize, visit: &mut impl FnMut(&[u32])) {
        if k == items.len() {
            visit(items);
            return;
        }
        for i in k..items.len() {
            items.swap(k, i);
            permute(items, k + 1, visit);
            items.swap(k, i);
        }
    }

    #[test]
    fn canonical_form_matches_permutation_oracle() {
        let mut samples = vec![boundary_of_simplex(3), boundary_of_simplex(4)];
        // A few random 2-sphere triangulations grown from ∂Δ³.
        let (t, _) = random_walk(&boundary_of_simplex(3), 12, 3, 7);
        samples.push(t);
        let (t, _) = random_walk(&boundary_of_simplex(3), 20, 11, 8);
        samples.push(t);
        for t in samples {
            assert_eq!(canonical_form(&t).facets(), brute_force_canonical(&t).as_slice());
        }
    }

    #[test]
    fn canonical_form_idempotent_and_permutation_invariant() {
        let t = boundary_of_simplex(4);
        let c = canonical_form(&t);
        assert_eq!(canonical_form(&c), c);
        // Relabel vertices arbitrarily; the canonical form must not move.
        let relabeled = Triangulation::new(
            3,
            t.facets()
                .iter()
                .map(|f| f.iter().map(|v| [17u32, 3, 99, 4, 8][*v as usize]).collect())
                .collect(),
        )
        .unwrap();
        assert_eq!(canonical_form(&relabeled), c);
    }

    #[test]
    fn bfs_distance_basics() {
        let t = boundary_of_simplex(4);
        let zero = bfs_distance(&t, &t, 8, 1000).unwrap();
        assert_eq!(zero.distance, Some(0));
        let m = enumerate_moves(&t).into_iter().find(|m| m.b.len() == 1).unwrap();
        let t2 = apply_move(&t, &m).unwrap();
        let one = bfs_distance(&t, &t2, 8, 1000).unwrap();
        assert_eq!(one.distance, Some(1));
        let back = bfs_distance(&t2, &t, 8, 1000).unwrap();
        assert_eq!(back.distance, Some(1));
    }

    #[test]
    fn bfs_distance_reports_caps() {
        let t = boundary_of_simplex(3);
        let (far, _) = random_walk(&t, 30, 5, 9);
        let out = bfs_distance(&t, &far, 9, 3).unwrap();
        if out.distance.is_none() {
            assert!(out.capped);
        }
    }

    #[test]
    fn random_walk_deterministic_and_valid() {
        let t = boundary_of_simplex(5);
        let (a, sa) = random_walk(&t, 40, 42, 9);
        let (b, sb) = random_walk(&t, 40, 42, 9);
        assert_eq!(a, b);
        assert_eq!(sa.f_trace, sb.f_trace);
        assert_eq!(sa.moves_applied, 40);
        assert!(validate(&a, ValidationLevel::Pseudomanifold).is_valid());
        let (same, s0) = random_walk(&t, 0, 1, 9);
        assert_eq!(same, t);
        assert_eq!(s0.f_trace, vec![t.f_vector()]);
    }

    #[test]
    fn file_round_trip_and_errors() {
        let t = boundary_of_simplex(4);
        let text = t.to_file_string();
        assert_eq!(Triangulation::parse_file_string(&text).unwrap(), t);
        let err = Triangulation::parse_file_string("dim 2\n0 1 bad\n").unwrap_err();
        assert!(matches!(err, PachnerError::Parse { line: 2, .. }));
        let err = Triangulation::parse_file_string("0 1 2\n").unwrap_err();
        assert!(matches!(err, PachnerError::Parse { line: 1, .. }));
    }

    #[test]
    fn json_record_round_trip() {
        let t = boundary_of_simplex(5);
        let rec = TriangulationRecord::from(&t);
        let json = serde_json::to_string(&rec).unwrap();
        let back: TriangulationRecord = serde_json::from_str(&json).unwrap();
        assert_eq!(back.f_vector, vec![6, 15, 20, 15, 6]);
        assert_eq!(back.euler_characteristic, 2);
        assert_eq!(Triangulation::new(back.dim, back.facets).unwrap(), t);
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(24))]

        /// Walks keep the Euler characteristic and pseudomanifold property,
        /// and canonical_form is stable under a random relabeling.
        #[test]
        fn walk_preserves_invariants(seed in 0u64..1000, steps in 1usize..25) {
            let t = boundary_of_simplex(3);
            let (end, stats) = random_walk(&t, steps, seed, 8);
            prop_assert_eq!(end.euler_characteristic(), 2);
            prop_assert!(validate(&end, ValidationLevel::Links).is_valid());
            for f in &stats.f_trace {
                prop_assert_eq!(f[0] as i64 - f[1] as i64 + f[2] as i64, 2);
            }
            let c = canonical_form(&end);
            let shuffled = Triangulation::new(
                end.dim(),
                end.facets()
                    .iter()
                    .map(|f| f.iter().map(|v| v + 100).collect())
                    .collect(),
            ).unwrap();
            prop_assert_eq!(canonical_form(&shuffled), c);
        }
    }
}
