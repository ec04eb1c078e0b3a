//! Finite k-graphs presented by a colored skeleton and factorization squares.
//!
//! Paths are stored in color-ordered normal form: all color-1 edges first,
//! then color-2 edges, and so on. Rewriting between representatives uses the
//! squares in either direction.

use std::cmp::Ordering;
use std::collections::{BTreeSet, HashMap};
use std::sync::{Arc, RwLock};

use crate::degree::{join_all, Degree};
use crate::error::{Error, Result};

pub type VertexId = u32;
pub type EdgeId = u32;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Edge {
    pub name: String,
    /// 1-based color.
    pub color: usize,
    pub range: VertexId,
    pub source: VertexId,
}

/// The relation `a·b = c·d` with `color(a) = color(d) < color(b) = color(c)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Square {
    pub a: EdgeId,
    pub b: EdgeId,
    pub c: EdgeId,
    pub d: EdgeId,
}

#[derive(Debug, Clone, Default)]
pub struct Skeleton {
    pub k: usize,
    pub vertices: Vec<String>,
    pub edges: Vec<Edge>,
    pub squares: Vec<Square>,
}

impl Skeleton {
    pub fn new(k: usize) -> Self {
        Skeleton { k, ..Default::default() }
    }

    pub fn add_vertex(&mut self, name: impl Into<String>) -> VertexId {
        self.vertices.push(name.into());
        (self.vertices.len() - 1) as VertexId
    }

    pub fn add_edge(&mut self, name: impl Into<String>, color: usize, range: VertexId, source: VertexId) -> EdgeId {
        self.edges.push(Edge { name: name.into(), color, range, source });
        (self.edges.len() - 1) as EdgeId
    }

    pub fn add_square(&mut self, a: EdgeId, b: EdgeId, c: EdgeId, d: EdgeId) {
        self.squares.push(Square { a, b, c, d });
    }

    pub fn vertex_id(&self, name: &str) -> Option<VertexId> {
        self.vertices.iter().position(|v| v == name).map(|i| i as VertexId)
    }

    pub fn edge_id(&self, name: &str) -> Option<EdgeId> {
        self.edges.iter().position(|e| e.name == name).map(|i| i as EdgeId)
    }
}

/// A morphism of the k-graph in normal form.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Path {
    range: VertexId,
    source: VertexId,
    degree: Degree,
    edges: Vec<EdgeId>,
}

impl Path {
    pub fn range(&self) -> VertexId {
        self.range
    }

    pub fn source(&self) -> VertexId {
        self.source
    }

    pub fn degree(&self) -> &Degree {
        &self.degree
    }

    pub fn edges(&self) -> &[EdgeId] {
        &self.edges
    }

    pub fn is_vertex(&self) -> bool {
        self.edges.is_empty()
    }
}

impl Ord for Path {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree
            .cmp_lex(&other.degree)
            .then(self.range.cmp(&other.range))
            .then_with(|| self.edges.cmp(&other.edges))
            .then(self.source.cmp(&other.source))
    }
}

impl PartialOrd for Path {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

type PathCache = RwLock<HashMap<(VertexId, Degree), Arc<Vec<Path>>>>;
type MceCache = RwLock<HashMap<(Path, Path), Arc<Vec<(Path, Path)>>>>;

/// A validated finite k-graph.
#[derive(Debug)]
pub struct KGraph {
    skel: Skeleton,
    /// (a,b) with color(a) < color(b) ↦ (c,d).
    forward: HashMap<(EdgeId, EdgeId), (EdgeId, EdgeId)>,
    /// (c,d) with color(c) > color(d) ↦ (a,b).
    backward: HashMap<(EdgeId, EdgeId), (EdgeId, EdgeId)>,
    /// `into[v][i]`: edges of color i+1 with range v.
    into: Vec<Vec<Vec<EdgeId>>>,
    /// `out[v][i]`: edges of color i+1 with source v.
    out: Vec<Vec<Vec<EdgeId>>>,
    from_cache: PathCache,
    to_cache: PathCache,
    mce_cache: MceCache,
}

impl KGraph {
    /// Validates the skeleton: complete square bijection and, for k ≥ 3,
    /// the cube condition.
    pub fn new(skel: Skeleton) -> Result<KGraph> {
        let k = skel.k;
        if k == 0 {
            return Err(Error::Malformed("rank must be at least 1".into()));
        }
        let nv = skel.vertices.len();
        let names: BTreeSet<&str> = skel.vertices.iter().map(String::as_str).collect();
        if names.len() != nv {
            return Err(Error::Malformed("duplicate vertex name".into()));
        }
        let edge_names: BTreeSet<&str> = skel.edges.iter().map(|e| e.name.as_str()).collect();
        if edge_names.len() != skel.edges.len() {
            return Err(Error::Malformed("duplicate edge name".into()));
        }
        for e in &skel.edges {
            if e.color == 0 || e.color > k {
                return Err(Error::InvalidColor(e.color));
            }
            if e.range as usize >= nv || e.source as usize >= nv {
                return Err(Error::Malformed(format!("edge {} references an unknown vertex", e.name)));
            }
        }
        let ne = skel.edges.len() as EdgeId;
        let edge = |id: EdgeId| -> Result<&Edge> {
            skel.edges.get(id as usize).ok_or_else(|| Error::Malformed(format!("unknown edge id {id}")))
        };
        let name = |id: EdgeId| skel.edges[id as usize].name.clone();

        let mut forward = HashMap::new();
        let mut backward = HashMap::new();
        let mut hits: HashMap<(EdgeId, EdgeId), usize> = HashMap::new();
        for sq in &skel.squares {
            let (a, b, c, d) = (edge(sq.a)?, edge(sq.b)?, edge(sq.c)?, edge(sq.d)?);
            let colors_ok = a.color < b.color && c.color == b.color && d.color == a.color;
            let shape_ok = a.source == b.range && c.source == d.range && a.range == c.range && b.source == d.source;
            if !colors_ok || !shape_ok {
                return Err(Error::Malformed(format!(
                    "square {} {} = {} {} is not a commuting square of the right colors",
                    a.name, b.name, c.name, d.name
                )));
            }
            if forward.insert((sq.a, sq.b), (sq.c, sq.d)).is_some() {
                return Err(Error::DuplicateSquare(name(sq.a), name(sq.b)));
            }
            *hits.entry((sq.c, sq.d)).or_default() += 1;
            backward.insert((sq.c, sq.d), (sq.a, sq.b));
        }
        for x in 0..ne {
            for y in 0..ne {
                let (ex, ey) = (&skel.edges[x as usize], &skel.edges[y as usize]);
                if ex.source != ey.range || ex.color == ey.color {
                    continue;
                }
                if ex.color < ey.color {
                    if !forward.contains_key(&(x, y)) {
                        return Err(Error::MissingSquare(name(x), name(y)));
                    }
                } else {
                    let h = hits.get(&(x, y)).copied().unwrap_or(0);
                    if h != 1 {
                        return Err(Error::NonBijectiveSquares(name(x), name(y), h));
                    }
                }
            }
        }

        let mut into = vec![vec![Vec::new(); k]; nv];
        let mut out = vec![vec![Vec::new(); k]; nv];
        for (id, e) in skel.edges.iter().enumerate() {
            into[e.range as usize][e.color - 1].push(id as EdgeId);
            out[e.source as usize][e.color - 1].push(id as EdgeId);
        }
        let g = KGraph {
            skel,
            forward,
            backward,
            into,
            out,
            from_cache: RwLock::default(),
            to_cache: RwLock::default(),
            mce_cache: RwLock::default(),
        };
        if k >= 3 {
            g.check_cubes()?;
        }
        Ok(g)
    }

    fn check_cubes(&self) -> Result<()> {
        let ne = self.skel.edges.len() as EdgeId;
        for x in 0..ne {
            for y in self.composable_after(x) {
                if self.color(y) <= self.color(x) {
                    continue;
                }
                for z in self.composable_after(y) {
                    if self.color(z) <= self.color(y) {
                        continue;
                    }
                    let mut ra = vec![x, y, z];
                    for p in [1, 0, 1] {
                        self.swap_at(&mut ra, p);
                    }
                    let mut rb = vec![x, y, z];
                    for p in [0, 1, 0] {
                        self.swap_at(&mut rb, p);
                    }
                    if ra != rb {
                        return Err(Error::CubeConditionFailure(
                            self.edge_name(x).into(),
                            self.edge_name(y).into(),
                            self.edge_name(z).into(),
                            self.word_name(&ra),
                            self.word_name(&rb),
                        ));
                    }
                }
            }
        }
        Ok(())
    }

    fn composable_after(&self, x: EdgeId) -> Vec<EdgeId> {
        let s = self.skel.edges[x as usize].source as usize;
        self.into[s].iter().flatten().copied().collect()
    }

    pub fn skeleton(&self) -> &Skeleton {
        &self.skel
    }

    pub fn rank(&self) -> usize {
        self.skel.k
    }

    pub fn vertex_count(&self) -> usize {
        self.skel.vertices.len()
    }

    pub fn vertices(&self) -> impl Iterator<Item = VertexId> {
        0..self.skel.vertices.len() as VertexId
    }

    pub fn vertex_name(&self, v: VertexId) -> &str {
        &self.skel.vertices[v as usize]
    }

    pub fn edge_name(&self, e: EdgeId) -> &str {
        &self.skel.edges[e as usize].name
    }

    pub fn color(&self, e: EdgeId) -> usize {
        self.skel.edges[e as usize].color
    }

    pub fn zero(&self) -> Degree {
        Degree::zero(self.rank())
    }

    /// Edges of color `color` with range `v` (the set vΛ^{e_i}).
    pub fn edges_into(&self, v: VertexId, color: usize) -> &[EdgeId] {
        &self.into[v as usize][color - 1]
    }

    /// Edges of color `color` with source `v` (the set Λ^{e_i}v).
    pub fn edges_out(&self, v: VertexId, color: usize) -> &[EdgeId] {
        &self.out[v as usize][color - 1]
    }

    /// A vertex with no incoming edge of some color, if any.
    pub fn find_source(&self) -> Option<VertexId> {
        self.vertices().find(|&v| (1..=self.rank()).any(|i| self.edges_into(v, i).is_empty()))
    }

    pub fn vertex(&self, v: VertexId) -> Path {
        Path { range: v, source: v, degree: self.zero(), edges: Vec::new() }
    }

    pub fn edge(&self, e: EdgeId) -> Path {
        let ed = &self.skel.edges[e as usize];
        Path { range: ed.range, source: ed.source, degree: Degree::basis(self.rank(), ed.color), edges: vec![e] }
    }

    /// Builds a path from any composable representative word.
    pub fn path_from_word(&self, word: &[EdgeId]) -> Result<Path> {
        let Some((&first, rest)) = word.split_first() else {
            return Err(Error::Malformed("empty word".into()));
        };
        let mut prev = first;
        for &e in rest {
            if self.skel.edges[prev as usize].source != self.skel.edges[e as usize].range {
                return Err(Error::NotComposable(self.edge_name(prev).into(), self.edge_name(e).into()));
            }
            prev = e;
        }
        Ok(self.normalize(word.to_vec()))
    }

    fn normalize(&self, mut word: Vec<EdgeId>) -> Path {
        // Bubble sort by color; each adjacent inversion is a square.
        let n = word.len();
        for pass in 0..n {
            let mut swapped = false;
            for p in 0..n.saturating_sub(1 + pass) {
                if self.color(word[p]) > self.color(word[p + 1]) {
                    self.swap_at(&mut word, p);
                    swapped = true;
                }
            }
            if !swapped {
                break;
            }
        }
        let mut degree = self.zero();
        let mut coords = degree.coords().to_vec();
        for &e in &word {
            coords[self.color(e) - 1] += 1;
        }
        degree = Degree::from_vec(coords);
        Path {
            range: self.skel.edges[word[0] as usize].range,
            source: self.skel.edges[*word.last().unwrap() as usize].source,
            degree,
            edges: word,
        }
    }

    /// Rewrites positions p, p+1 of a word by the square through them.
    fn swap_at(&self, word: &mut [EdgeId], p: usize) {
        let pair = (word[p], word[p + 1]);
        let (x, y) = if self.color(pair.0) < self.color(pair.1) { self.forward[&pair] } else { self.backward[&pair] };
        word[p] = x;
        word[p + 1] = y;
    }

    /// Rearranges a word so that its colors follow `target`.
    fn rearrange(&self, mut word: Vec<EdgeId>, target: &[usize]) -> Vec<EdgeId> {
        for (p, &t) in target.iter().enumerate() {
            let q = (p..word.len()).find(|&q| self.color(word[q]) == t).expect("target colors match the word");
            for r in (p..q).rev() {
                self.swap_at(&mut word, r);
            }
        }
        word
    }

    fn color_sequence(d: &Degree) -> Vec<usize> {
        let mut out = Vec::with_capacity(d.total() as usize);
        for (i, &c) in d.coords().iter().enumerate() {
            out.extend(std::iter::repeat_n(i + 1, c as usize));
        }
        out
    }

    pub fn compose(&self, lambda: &Path, mu: &Path) -> Result<Path> {
        if lambda.source != mu.range {
            return Err(Error::NotComposable(self.path_name(lambda), self.path_name(mu)));
        }
        Ok(self.compose_unchecked(lambda, mu))
    }

    fn compose_unchecked(&self, lambda: &Path, mu: &Path) -> Path {
        if lambda.is_vertex() {
            return mu.clone();
        }
        if mu.is_vertex() {
            return lambda.clone();
        }
        let mut word = lambda.edges.clone();
        word.extend_from_slice(&mu.edges);
        self.normalize(word)
    }

    /// The factor λ(m,n) of λ = λ(0,m)λ(m,n)λ(n,d(λ)).
    pub fn segment(&self, lambda: &Path, m: &Degree, n: &Degree) -> Result<Path> {
        m.check_rank(self.rank())?;
        n.check_rank(self.rank())?;
        if !m.le(n) || !n.le(&lambda.degree) {
            return Err(Error::DegreeOutOfRange(format!("{m}..{n}"), lambda.degree.to_string()));
        }
        Ok(self.segment_unchecked(lambda, m, n))
    }

    fn segment_unchecked(&self, lambda: &Path, m: &Degree, n: &Degree) -> Path {
        let d = &lambda.degree;
        let (lo, hi) = (m.total() as usize, n.total() as usize);
        if lo == hi {
            let v = if lo == 0 {
                lambda.range
            } else if hi == d.total() as usize {
                lambda.source
            } else {
                let mut target = Self::color_sequence(m);
                target.extend(Self::color_sequence(&d.sub(m)));
                let w = self.rearrange(lambda.edges.clone(), &target);
                self.skel.edges[w[lo] as usize].range
            };
            return self.vertex(v);
        }
        if lo == 0 && hi == d.total() as usize {
            return lambda.clone();
        }
        let mut target = Self::color_sequence(m);
        target.extend(Self::color_sequence(&n.sub(m)));
        target.extend(Self::color_sequence(&d.sub(n)));
        let w = self.rearrange(lambda.edges.clone(), &target);
        self.normalize(w[lo..hi].to_vec())
    }

    /// λ(0,m).
    pub fn prefix(&self, lambda: &Path, m: &Degree) -> Path {
        self.segment_unchecked(lambda, &self.zero(), m)
    }

    /// λ(m,d(λ)).
    pub fn suffix(&self, lambda: &Path, m: &Degree) -> Path {
        self.segment_unchecked(lambda, m, &lambda.degree.clone())
    }

    /// Whether λ(0,d(μ)) = μ.
    pub fn extends(&self, lambda: &Path, mu: &Path) -> bool {
        lambda.range == mu.range && mu.degree.le(&lambda.degree) && self.prefix(lambda, &mu.degree) == *mu
    }

    /// vΛ^n in sorted order.
    pub fn paths_from(&self, v: VertexId, n: &Degree) -> Arc<Vec<Path>> {
        let key = (v, n.clone());
        if let Some(hit) = self.from_cache.read().unwrap().get(&key) {
            return hit.clone();
        }
        let colors = Self::color_sequence(n);
        let mut words: Vec<(VertexId, Vec<EdgeId>)> = vec![(v, Vec::new())];
        for &c in &colors {
            let mut next = Vec::new();
            for (at, w) in &words {
                for &e in self.edges_into(*at, c) {
                    let mut w2 = w.clone();
                    w2.push(e);
                    next.push((self.skel.edges[e as usize].source, w2));
                }
            }
            words = next;
        }
        let mut paths: Vec<Path> =
            words.into_iter().map(|(s, w)| Path { range: v, source: s, degree: n.clone(), edges: w }).collect();
        paths.sort();
        let paths = Arc::new(paths);
        self.from_cache.write().unwrap().insert(key, paths.clone());
        paths
    }

    /// Λ^n w: paths of degree n with source w, sorted.
    pub fn paths_to(&self, w: VertexId, n: &Degree) -> Arc<Vec<Path>> {
        let key = (w, n.clone());
        if let Some(hit) = self.to_cache.read().unwrap().get(&key) {
            return hit.clone();
        }
        let mut colors = Self::color_sequence(n);
        colors.reverse();
        let mut words: Vec<(VertexId, Vec<EdgeId>)> = vec![(w, Vec::new())];
        for &c in &colors {
            let mut next = Vec::new();
            for (at, wd) in &words {
                for &e in self.edges_out(*at, c) {
                    let mut w2 = wd.clone();
                    w2.push(e);
                    next.push((self.skel.edges[e as usize].range, w2));
                }
            }
            words = next;
        }
        let mut paths: Vec<Path> = words
            .into_iter()
            .map(|(r, mut wd)| {
                wd.reverse();
                Path { range: r, source: w, degree: n.clone(), edges: wd }
            })
            .collect();
        paths.sort();
        let paths = Arc::new(paths);
        self.to_cache.write().unwrap().insert(key, paths.clone());
        paths
    }

    /// All paths with range v and degree ≤ cap, sorted.
    pub fn paths_from_upto(&self, v: VertexId, cap: &Degree) -> Vec<Path> {
        let mut out: Vec<Path> =
            cap.below().iter().flat_map(|d| self.paths_from(v, d).iter().cloned().collect::<Vec<_>>()).collect();
        out.sort();
        out
    }

    /// All paths of degree ≤ cap, sorted.
    pub fn all_paths_upto(&self, cap: &Degree) -> Vec<Path> {
        let mut out: Vec<Path> = self.vertices().flat_map(|v| self.paths_from_upto(v, cap)).collect();
        out.sort();
        out
    }

    /// Λ^min(λ,μ): pairs (α,β) with λα = μβ of degree d(λ)∨d(μ).
    pub fn lambda_min(&self, lambda: &Path, mu: &Path) -> Result<Arc<Vec<(Path, Path)>>> {
        if lambda.range != mu.range {
            return Err(Error::RangeMismatch(self.path_name(lambda), self.path_name(mu)));
        }
        Ok(self.mce(lambda, mu))
    }

    pub(crate) fn mce(&self, lambda: &Path, mu: &Path) -> Arc<Vec<(Path, Path)>> {
        if lambda.range != mu.range {
            return Arc::new(Vec::new());
        }
        let key = (lambda.clone(), mu.clone());
        if let Some(hit) = self.mce_cache.read().unwrap().get(&key) {
            return hit.clone();
        }
        let j = lambda.degree.join(&mu.degree);
        let mut out = Vec::new();
        if mu.degree.le(&lambda.degree) {
            // α must be s(λ).
            if self.prefix(lambda, &mu.degree) == *mu {
                out.push((self.vertex(lambda.source), self.suffix(lambda, &mu.degree)));
            }
        } else if lambda.degree.le(&mu.degree) {
            if self.prefix(mu, &lambda.degree) == *lambda {
                out.push((self.suffix(mu, &lambda.degree), self.vertex(mu.source)));
            }
        } else {
            for alpha in self.paths_from(lambda.source, &j.sub(&lambda.degree)).iter() {
                let la = self.compose_unchecked(lambda, alpha);
                if self.prefix(&la, &mu.degree) == *mu {
                    out.push((alpha.clone(), self.suffix(&la, &mu.degree)));
                }
            }
            out.sort();
        }
        let out = Arc::new(out);
        self.mce_cache.write().unwrap().insert(key, out.clone());
        out
    }

    /// Whether Λ^min(λ,μ) ≠ ∅.
    pub fn has_common_extension(&self, lambda: &Path, mu: &Path) -> bool {
        !self.mce(lambda, mu).is_empty()
    }

    /// Ext(λ;E): first components of Λ^min(λ,ν), ν ∈ E.
    pub fn ext<'a>(&self, lambda: &Path, set: impl IntoIterator<Item = &'a Path>) -> Result<BTreeSet<Path>> {
        let mut out = BTreeSet::new();
        for nu in set {
            for (alpha, _) in self.lambda_min(lambda, nu)?.iter() {
                out.insert(alpha.clone());
            }
        }
        Ok(out)
    }

    /// F(λ,μ) = Ext(λ;{μ}), with ranges allowed to differ (then empty).
    pub fn ext_one(&self, lambda: &Path, mu: &Path) -> Vec<Path> {
        self.mce(lambda, mu).iter().map(|(a, _)| a.clone()).collect()
    }

    /// ∨d(E), or zero for empty E.
    pub fn join_degrees<'a>(&self, set: impl IntoIterator<Item = &'a Path>) -> Degree {
        join_all(self.rank(), set.into_iter().map(|p| &p.degree))
    }

    /// Exhaustiveness of E at v, tested on all μ ∈ vΛ with d(μ) ≤ bound.
    /// Returns `None` when exhaustive and `Some(witness)` otherwise.
    pub fn exhaustive_witness(&self, v: VertexId, set: &[Path], bound: &Degree) -> Result<Option<Path>> {
        bound.check_rank(self.rank())?;
        for nu in set {
            if nu.range != v {
                return Err(Error::RangeMismatch(self.vertex_name(v).into(), self.path_name(nu)));
            }
        }
        if set.iter().any(|nu| nu.is_vertex()) {
            return Ok(None);
        }
        let mut degrees = bound.below();
        degrees.sort_by(|a, b| a.total().cmp(&b.total()).then(a.cmp_lex(b)));
        for d in &degrees {
            for mu in self.paths_from(v, d).iter() {
                if !set.iter().any(|nu| self.has_common_extension(nu, mu)) {
                    return Ok(Some(mu.clone()));
                }
            }
        }
        Ok(None)
    }

    /// Exhaustiveness with the default bound ∨d(E).
    pub fn is_exhaustive(&self, v: VertexId, set: &[Path]) -> Result<bool> {
        let bound = self.join_degrees(set);
        Ok(self.exhaustive_witness(v, set, &bound)?.is_none())
    }

    /// Whether every pair of differently colored edges with a common range
    /// has a common extension. Under this condition (and always for k = 1)
    /// a failure of exhaustiveness is witnessed below ∨d(E).
    pub fn corners_complete(&self) -> bool {
        if self.rank() == 1 {
            return true;
        }
        self.vertices().all(|v| {
            (1..=self.rank()).all(|i| {
                (i + 1..=self.rank()).all(|j| {
                    self.edges_into(v, i).iter().all(|&x| {
                        self.edges_into(v, j).iter().all(|&y| self.has_common_extension(&self.edge(x), &self.edge(y)))
                    })
                })
            })
        })
    }

    /// The join of the degrees of all paths, or `None` if the skeleton
    /// has a cycle.
    pub fn max_path_degree(&self) -> Option<Degree> {
        // Longest walk per color by memoized search from each vertex.
        let n = self.vertex_count();
        let mut state = vec![0u8; n];
        let mut best: Vec<Vec<u32>> = vec![vec![0; self.rank()]; n];
        fn visit(g: &KGraph, v: usize, state: &mut [u8], best: &mut [Vec<u32>]) -> bool {
            match state[v] {
                1 => return false,
                2 => return true,
                _ => {}
            }
            state[v] = 1;
            let mut here = vec![0u32; g.rank()];
            for c in 1..=g.rank() {
                for &e in g.edges_into(v as VertexId, c) {
                    let s = g.skel.edges[e as usize].source as usize;
                    if !visit(g, s, state, best) {
                        return false;
                    }
                    for (i, h) in here.iter_mut().enumerate() {
                        let add = u32::from(i + 1 == c);
                        *h = (*h).max(best[s][i] + add);
                    }
                }
            }
            best[v] = here;
            state[v] = 2;
            true
        }
        for v in 0..n {
            if !visit(self, v, &mut state, &mut best) {
                return None;
            }
        }
        let mut out = self.zero();
        for b in &best {
            out = out.join(&Degree::from_vec(b.clone()));
        }
        Some(out)
    }

    pub fn word_name(&self, word: &[EdgeId]) -> String {
        word.iter().map(|&e| self.edge_name(e)).collect::<Vec<_>>().join(".")
    }

    pub fn path_name(&self, p: &Path) -> String {
        if p.is_vertex() {
            self.vertex_name(p.range).to_string()
        } else {
            self.word_name(&p.edges)
        }
    }

    /// Parses `v` or `a.b.c`.
    pub fn parse_path(&self, text: &str) -> Result<Path> {
        let text = text.trim();
        if let Some(v) = self.skel.vertex_id(text) {
            return Ok(self.vertex(v));
        }
        let mut word = Vec::new();
        for part in text.split('.') {
            let e = self
                .skel
                .edge_id(part.trim())
                .ok_or_else(|| Error::Malformed(format!("unknown vertex or edge `{part}`")))?;
            word.push(e);
        }
        self.path_from_word(&word)
    }
}
