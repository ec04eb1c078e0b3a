//! Cylinder subsets of the boundary-path space.
//!
//! A [`BasicSet`] `(λ,F)` denotes `D_λ ∖ ⋃_{ν∈F} D_{λν}`. A [`CylinderSet`]
//! is a list of pairwise disjoint basic sets. All Boolean operations are
//! closed-form; the only decision procedure is emptiness, which reduces to
//! exhaustiveness of `F` at `s(λ)`.

use std::collections::{BTreeSet, HashMap};
use std::sync::RwLock;

use crate::degree::Degree;
use crate::error::{Error, Result};
use crate::faults::Faults;
use crate::graph::{KGraph, Path};

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct BasicSet {
    head: Path,
    avoid: Vec<Path>,
}

impl BasicSet {
    /// `(λ,F)`; `F` is sorted and deduplicated. Ranges are not checked here,
    /// see [`BoundaryAlgebra::basic`].
    pub fn new(head: Path, avoid: impl IntoIterator<Item = Path>) -> BasicSet {
        let avoid: BTreeSet<Path> = avoid.into_iter().collect();
        BasicSet { head, avoid: avoid.into_iter().collect() }
    }

    pub fn cylinder(head: Path) -> BasicSet {
        BasicSet { head, avoid: Vec::new() }
    }

    pub fn head(&self) -> &Path {
        &self.head
    }

    pub fn avoid(&self) -> &[Path] {
        &self.avoid
    }

    pub fn degree(&self) -> &Degree {
        self.head.degree()
    }

    /// Some ν ∈ F has degree zero, so the set is `D_λ ∖ D_λ = ∅`.
    pub fn is_degenerate(&self) -> bool {
        self.avoid.iter().any(Path::is_vertex)
    }

    /// Membership in A^n.
    pub fn in_slice(&self, n: &Degree) -> bool {
        n.le(self.head.degree())
    }
}

/// Pairwise disjoint basic sets in canonical order.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct CylinderSet {
    parts: Vec<BasicSet>,
}

impl CylinderSet {
    pub fn empty() -> CylinderSet {
        CylinderSet::default()
    }

    pub fn parts(&self) -> &[BasicSet] {
        &self.parts
    }

    pub fn into_parts(self) -> Vec<BasicSet> {
        self.parts
    }

    pub fn is_trivially_empty(&self) -> bool {
        self.parts.is_empty()
    }

    fn from_disjoint(mut parts: Vec<BasicSet>) -> CylinderSet {
        parts.retain(|p| !p.is_degenerate());
        parts.sort();
        parts.dedup();
        CylinderSet { parts }
    }
}

/// How far exhaustiveness is tested when deciding emptiness.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum BoundPolicy {
    /// μ ranges over d(μ) ≤ ∨d(F) + slack.
    Join { slack: Degree },
    /// μ ranges over d(μ) ≤ bound ∨ ∨d(F).
    Fixed(Degree),
}

/// The Boolean algebra of cylinder sets of one graph.
pub struct BoundaryAlgebra<'g> {
    graph: &'g KGraph,
    policy: BoundPolicy,
    certified: bool,
    faults: Faults,
    empty_cache: RwLock<HashMap<BasicSet, bool>>,
}

impl<'g> BoundaryAlgebra<'g> {
    /// Chooses a bound that decides emptiness exactly when one is known:
    /// ∨d(F) if every bicolored corner completes (or k = 1), the maximal
    /// path degree if the graph is acyclic, and ∨d(F) otherwise.
    pub fn new(graph: &'g KGraph) -> Self {
        let (policy, certified) = if graph.corners_complete() {
            (BoundPolicy::Join { slack: graph.zero() }, true)
        } else if let Some(top) = graph.max_path_degree() {
            (BoundPolicy::Fixed(top), true)
        } else {
            (BoundPolicy::Join { slack: graph.zero() }, false)
        };
        Self::build(graph, policy, certified)
    }

    pub fn with_policy(graph: &'g KGraph, policy: BoundPolicy) -> Self {
        let certified = match &policy {
            BoundPolicy::Join { .. } => graph.corners_complete(),
            BoundPolicy::Fixed(d) => graph.max_path_degree().is_some_and(|top| top.le(d)),
        };
        Self::build(graph, policy, certified)
    }

    fn build(graph: &'g KGraph, policy: BoundPolicy, certified: bool) -> Self {
        BoundaryAlgebra { graph, policy, certified, faults: Faults::default(), empty_cache: RwLock::default() }
    }

    #[doc(hidden)]
    pub fn with_faults(mut self, faults: Faults) -> Self {
        self.faults = faults;
        self
    }

    pub fn faults(&self) -> &Faults {
        &self.faults
    }

    pub fn graph(&self) -> &'g KGraph {
        self.graph
    }

    pub fn policy(&self) -> &BoundPolicy {
        &self.policy
    }

    /// Whether emptiness answers are known to be exact for this graph.
    pub fn bound_certified(&self) -> bool {
        self.certified
    }

    /// Builds `(λ,F)`, checking that every ν ∈ F lies in s(λ)Λ.
    pub fn basic(&self, head: Path, avoid: impl IntoIterator<Item = Path>) -> Result<BasicSet> {
        let b = BasicSet::new(head, avoid);
        for nu in &b.avoid {
            if nu.range() != b.head.source() {
                return Err(Error::RangeMismatch(self.graph.path_name(&b.head), self.graph.path_name(nu)));
            }
        }
        Ok(b)
    }

    pub fn bound_for(&self, avoid: &[Path]) -> Degree {
        let j = self.graph.join_degrees(avoid);
        match &self.policy {
            BoundPolicy::Join { slack } => j.add(slack),
            BoundPolicy::Fixed(d) => j.join(d),
        }
    }

    /// Whether `D_λ ∖ D_{λF} = ∅`.
    pub fn is_empty(&self, a: &BasicSet) -> bool {
        if a.is_degenerate() {
            return true;
        }
        if a.avoid.is_empty() {
            return false;
        }
        if let Some(&hit) = self.empty_cache.read().unwrap().get(a) {
            return hit;
        }
        let bound = self.bound_for(&a.avoid);
        let empty = self
            .graph
            .exhaustive_witness(a.head.source(), &a.avoid, &bound)
            .expect("avoid set lies in s(λ)Λ")
            .is_none();
        self.empty_cache.write().unwrap().insert(a.clone(), empty);
        empty
    }

    /// Emptiness together with the bound that was used.
    pub fn emptiness(&self, a: &BasicSet) -> (bool, Degree) {
        (self.is_empty(a), self.bound_for(&a.avoid))
    }

    pub fn is_empty_set(&self, x: &CylinderSet) -> bool {
        x.parts.iter().all(|p| self.is_empty(p))
    }

    /// Drops empty parts.
    pub fn prune(&self, x: CylinderSet) -> CylinderSet {
        CylinderSet { parts: x.parts.into_iter().filter(|p| !self.is_empty(p)).collect() }
    }

    pub fn set_of(&self, a: BasicSet) -> CylinderSet {
        self.prune(CylinderSet::from_disjoint(vec![a]))
    }

    fn compose(&self, a: &Path, b: &Path) -> Path {
        self.graph.compose(a, b).expect("composable by construction")
    }

    /// `(λ,F) ∩ (μ,G) = ⊔_{(α,β)∈Λ^min(λ,μ)} (λα, F_α)` with
    /// `F_α = ⋃_{ν∈F} F(λα,λν) ∪ ⋃_{ξ∈G} F(λα,μξ)`.
    pub fn intersect_basic(&self, a: &BasicSet, b: &BasicSet) -> CylinderSet {
        let g = self.graph;
        if a.is_degenerate() || b.is_degenerate() {
            return CylinderSet::empty();
        }
        let mce = g.mce(&a.head, &b.head);
        let mut parts = Vec::with_capacity(mce.len());
        for (alpha, _) in mce.iter() {
            let la = self.compose(&a.head, alpha);
            let mut f_alpha = BTreeSet::new();
            for (k, nu) in a.avoid.iter().enumerate() {
                if self.faults.f_alpha_skip_left && k == 0 {
                    continue;
                }
                f_alpha.extend(g.ext_one(&la, &self.compose(&a.head, nu)));
            }
            for (k, xi) in b.avoid.iter().enumerate() {
                if self.faults.f_alpha_skip_right && k == 0 {
                    continue;
                }
                f_alpha.extend(g.ext_one(&la, &self.compose(&b.head, xi)));
            }
            parts.push(BasicSet { head: la, avoid: f_alpha.into_iter().collect() });
        }
        CylinderSet::from_disjoint(parts)
    }

    /// `⋃_j D_{ρ_j}` as `⊔_j (ρ_j, ⋃_{i<j} F(ρ_j,ρ_i))`.
    pub fn disjointify(&self, paths: &[Path]) -> CylinderSet {
        let mut parts = Vec::new();
        for (j, rho) in paths.iter().enumerate() {
            let mut avoid = BTreeSet::new();
            for earlier in &paths[..j] {
                avoid.extend(self.graph.ext_one(rho, earlier));
            }
            parts.push(BasicSet { head: rho.clone(), avoid: avoid.into_iter().collect() });
        }
        CylinderSet::from_disjoint(parts)
    }

    /// `(λ,F) ∖ (μ,G) = (λ, F ∪ F(λ,μ)) ⊔ ((λ,F) ∩ ⊔_j (μξ_j, …))`.
    pub fn difference_basic(&self, a: &BasicSet, b: &BasicSet) -> CylinderSet {
        if a.is_degenerate() {
            return CylinderSet::empty();
        }
        if b.is_degenerate() || a.head.range() != b.head.range() {
            return CylinderSet::from_disjoint(vec![a.clone()]);
        }
        let mut avoid: BTreeSet<Path> = a.avoid.iter().cloned().collect();
        avoid.extend(self.graph.ext_one(&a.head, &b.head));
        let mut parts = vec![BasicSet { head: a.head.clone(), avoid: avoid.into_iter().collect() }];
        let tails: Vec<Path> = b.avoid.iter().map(|xi| self.compose(&b.head, xi)).collect();
        for piece in self.disjointify(&tails).parts {
            parts.extend(self.intersect_basic(a, &piece).parts);
        }
        self.prune(CylinderSet::from_disjoint(parts))
    }

    pub fn intersect(&self, x: &CylinderSet, y: &CylinderSet) -> CylinderSet {
        let mut parts = Vec::new();
        for a in &x.parts {
            for b in &y.parts {
                parts.extend(self.intersect_basic(a, b).parts);
            }
        }
        self.prune(CylinderSet::from_disjoint(parts))
    }

    pub fn difference(&self, x: &CylinderSet, y: &CylinderSet) -> CylinderSet {
        let mut out = Vec::new();
        for a in &x.parts {
            let mut pieces = vec![a.clone()];
            for b in &y.parts {
                pieces = pieces.iter().flat_map(|p| self.difference_basic(p, b).parts).collect();
                if pieces.is_empty() {
                    break;
                }
            }
            out.extend(pieces);
        }
        self.prune(CylinderSet::from_disjoint(out))
    }

    pub fn union(&self, x: &CylinderSet, y: &CylinderSet) -> CylinderSet {
        let mut parts = x.parts.clone();
        parts.extend(self.difference(y, x).parts);
        self.prune(CylinderSet::from_disjoint(parts))
    }

    pub fn symmetric_difference(&self, x: &CylinderSet, y: &CylinderSet) -> CylinderSet {
        let mut parts = self.difference(x, y).parts;
        parts.extend(self.difference(y, x).parts);
        CylinderSet::from_disjoint(parts)
    }

    /// `ambient ∖ x`, requiring `x ⊆ ambient`.
    pub fn complement_within(&self, x: &CylinderSet, ambient: &BasicSet) -> Result<CylinderSet> {
        let amb = CylinderSet::from_disjoint(vec![ambient.clone()]);
        if !self.difference(x, &amb).parts.is_empty() {
            return Err(Error::NotContained(self.show_basic(ambient)));
        }
        Ok(self.difference(&amb, x))
    }

    pub fn subset(&self, x: &CylinderSet, y: &CylinderSet) -> bool {
        self.difference(x, y).parts.is_empty()
    }

    pub fn set_equal(&self, x: &CylinderSet, y: &CylinderSet) -> bool {
        self.symmetric_difference(x, y).parts.is_empty()
    }

    /// `D_μ ⊆ D_ν`.
    pub fn cylinder_subset(&self, mu: &Path, nu: &Path) -> bool {
        let diff = BasicSet::new(mu.clone(), self.graph.ext_one(mu, nu));
        self.is_empty(&diff)
    }

    /// The same set with F reduced to ⊆-minimal cylinders: ν is dropped
    /// when `D_ν ⊆ D_ν'` for a kept ν'. The raw form stays the default.
    pub fn reduce(&self, a: &BasicSet) -> BasicSet {
        let mut kept: Vec<Path> = Vec::new();
        for nu in &a.avoid {
            if kept.iter().any(|k| self.cylinder_subset(nu, k)) {
                continue;
            }
            kept.retain(|k| !self.cylinder_subset(k, nu));
            kept.push(nu.clone());
        }
        BasicSet::new(a.head.clone(), kept)
    }

    /// Whether `A ⊆ ∂Λ^{≥n}`.
    pub fn slice_contains(&self, a: &BasicSet, n: &Degree) -> bool {
        if n.le(a.degree()) || self.is_empty(a) {
            return true;
        }
        let need = a.degree().join(n).sub(a.degree());
        let mut avoid = a.avoid.clone();
        avoid.extend(self.graph.paths_from(a.head.source(), &need).iter().cloned());
        self.is_empty(&BasicSet::new(a.head.clone(), avoid))
    }

    /// Whether `A ⊆ ∂Λ^{≱e_i}`, decided directly: `A` meets no cylinder
    /// `D_{λμ}` with `μ` a color-i edge.
    pub fn slice_avoids(&self, a: &BasicSet, color: usize) -> Result<bool> {
        self.check_color(color)?;
        if self.is_empty(a) {
            return Ok(true);
        }
        if a.degree().get(color) > 0 {
            return Ok(false);
        }
        let src = a.head.source();
        Ok(self.graph.edges_into(src, color).iter().all(|&e| {
            let mu = self.graph.edge(e);
            let inner = self.graph.ext(&mu, &a.avoid).expect("ranges agree");
            self.is_empty(&BasicSet::new(self.compose(&a.head, &mu), inner))
        }))
    }

    /// Condition K(i): every color-i edge μ at s(λ) has `D_μ ⊆ D_ν` for a
    /// single ν ∈ F.
    pub fn condition_k(&self, a: &BasicSet, color: usize) -> Result<bool> {
        self.check_color(color)?;
        let src = a.head.source();
        Ok(self.graph.edges_into(src, color).iter().all(|&e| {
            let mu = self.graph.edge(e);
            a.avoid.iter().any(|nu| self.cylinder_subset(&mu, nu))
        }))
    }

    /// The criterion `d(λ)_i = 0 ∧ K(i)`.
    pub fn k_criterion(&self, a: &BasicSet, color: usize) -> Result<bool> {
        Ok(a.degree().get(color) == 0 && self.condition_k(a, color)?)
    }

    fn check_color(&self, color: usize) -> Result<()> {
        if color == 0 || color > self.graph.rank() {
            Err(Error::InvalidColor(color))
        } else {
            Ok(())
        }
    }

    /// `⊔_{μ∈s(λ)Λ^{d(λ)∨n−d(λ)}} (λμ, Ext(μ;F))`, for `A ⊆ ∂Λ^{≥n}`.
    pub fn refine_to_slice(&self, a: &BasicSet, n: &Degree) -> Result<CylinderSet> {
        n.check_rank(self.graph.rank())?;
        if !self.slice_contains(a, n) {
            return Err(Error::NotInSlice(self.show_basic(a), n.to_string()));
        }
        Ok(self.refine_unchecked(a, n))
    }

    pub(crate) fn refine_unchecked(&self, a: &BasicSet, n: &Degree) -> CylinderSet {
        if n.le(a.degree()) {
            return CylinderSet::from_disjoint(vec![a.clone()]);
        }
        let need = a.degree().join(n).sub(a.degree());
        let mut parts = Vec::new();
        for mu in self.graph.paths_from(a.head.source(), &need).iter() {
            let inner = self.graph.ext(mu, &a.avoid).expect("ranges agree");
            parts.push(BasicSet::new(self.compose(&a.head, mu), inner));
        }
        CylinderSet::from_disjoint(parts)
    }

    /// `σ_n(A) = (λ(n,d(λ)), F)`.
    pub fn sigma_image(&self, a: &BasicSet, n: &Degree) -> Result<BasicSet> {
        if !n.le(a.degree()) {
            return Err(Error::DegreeTooSmall(self.graph.path_name(&a.head), n.to_string()));
        }
        Ok(BasicSet { head: self.graph.suffix(&a.head, n), avoid: a.avoid.clone() })
    }

    /// `σ_n^{-1}(A) = ⊔_{τ∈Λ^n r(λ)} (τλ, F)`.
    pub fn sigma_preimage(&self, a: &BasicSet, n: &Degree) -> CylinderSet {
        let parts = self
            .graph
            .paths_to(a.head.range(), n)
            .iter()
            .map(|tau| BasicSet { head: self.compose(tau, &a.head), avoid: a.avoid.clone() })
            .collect();
        CylinderSet::from_disjoint(parts)
    }

    pub fn show_basic(&self, a: &BasicSet) -> String {
        let g = self.graph;
        if a.avoid.is_empty() {
            return format!("[{}]", g.path_name(&a.head));
        }
        let avoid: Vec<String> = a.avoid.iter().map(|p| g.path_name(p)).collect();
        format!("[{} - {}]", g.path_name(&a.head), avoid.join(","))
    }

    pub fn show_set(&self, x: &CylinderSet) -> String {
        let parts: Vec<String> = x.parts.iter().map(|p| self.show_basic(p)).collect();
        format!("{{{}}}", parts.join(" | "))
    }

    /// Parses `[λ - ν1,ν2]` or `[λ]`.
    pub fn parse_basic(&self, text: &str) -> Result<BasicSet> {
        let t = text.trim();
        let inner = t
            .strip_prefix('[')
            .and_then(|s| s.strip_suffix(']'))
            .ok_or_else(|| Error::Malformed(format!("expected [lambda - nu,...], got `{t}`")))?;
        let (head, rest) = match inner.split_once(" - ") {
            Some((h, r)) => (h, r),
            None => match inner.trim_end().strip_suffix('-') {
                Some(h) => (h, ""),
                None => (inner, ""),
            },
        };
        let head = self.graph.parse_path(head)?;
        let mut avoid = Vec::new();
        for item in rest.split(',').map(str::trim).filter(|s| !s.is_empty()) {
            avoid.push(self.graph.parse_path(item)?);
        }
        self.basic(head, avoid)
    }

    /// Parses `{A | B | …}` or a single basic set.
    pub fn parse_set(&self, text: &str) -> Result<Vec<BasicSet>> {
        let t = text.trim();
        if let Some(inner) = t.strip_prefix('{').and_then(|s| s.strip_suffix('}')) {
            inner.split('|').map(str::trim).filter(|s| !s.is_empty()).map(|s| self.parse_basic(s)).collect()
        } else {
            Ok(vec![self.parse_basic(t)?])
        }
    }

    /// The union of arbitrary (possibly overlapping) basic sets.
    pub fn union_of(&self, sets: &[BasicSet]) -> CylinderSet {
        sets.iter().fold(CylinderSet::empty(), |acc, b| self.union(&acc, &CylinderSet::from_disjoint(vec![b.clone()])))
    }
}
