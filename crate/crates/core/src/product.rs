//! The boundary-path product system.
//!
//! `X_n` is modelled by cylinder functions supported in `∂Λ^{≥n}`; the right
//! action, inner product, multiplication and compact operators are all
//! computed by closed formulas on basic sets.

use std::collections::BTreeSet;

use num_traits::{One, Signed, Zero};

use crate::boundary::{BasicSet, BoundaryAlgebra};
use crate::degree::Degree;
use crate::error::{Error, Result};
use crate::function::{CompactOp, CylinderFunction, Scalar, TupleElement};
use crate::graph::{KGraph, Path};

/// Bounds for enumerating spanning families: heads with `d(λ) ≤ head`,
/// avoided paths with `d(λν) ≤ tail`, and at most `max_avoid` of them.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SpanCap {
    pub head: Degree,
    pub tail: Degree,
    pub max_avoid: Option<usize>,
}

impl SpanCap {
    pub fn uniform(cap: Degree) -> Self {
        SpanCap { head: cap.clone(), tail: cap, max_avoid: None }
    }

    pub fn with_max_avoid(mut self, m: usize) -> Self {
        self.max_avoid = Some(m);
        self
    }
}

pub struct ProductSystem<'g> {
    alg: BoundaryAlgebra<'g>,
}

impl<'g> ProductSystem<'g> {
    pub fn new(alg: BoundaryAlgebra<'g>) -> Self {
        ProductSystem { alg }
    }

    pub fn for_graph(graph: &'g KGraph) -> Self {
        Self::new(BoundaryAlgebra::new(graph))
    }

    pub fn alg(&self) -> &BoundaryAlgebra<'g> {
        &self.alg
    }

    pub fn graph(&self) -> &'g KGraph {
        self.alg.graph()
    }

    fn zero_deg(&self) -> Degree {
        self.graph().zero()
    }

    /// `χ_A` in slice n, checking `A ∈ A^n`.
    pub fn indicator(&self, slice: &Degree, set: BasicSet) -> Result<CylinderFunction> {
        slice.check_rank(self.graph().rank())?;
        if !set.in_slice(slice) {
            return Err(Error::DegreeTooSmall(self.graph().path_name(set.head()), slice.to_string()));
        }
        Ok(CylinderFunction::indicator(slice.clone(), set))
    }

    fn cylinder(&self, slice: &Degree, path: &Path) -> CylinderFunction {
        CylinderFunction::indicator(slice.clone(), BasicSet::cylinder(path.clone()))
    }

    fn check_slice(&self, f: &CylinderFunction, n: &Degree) -> Result<()> {
        if f.slice() == n {
            Ok(())
        } else {
            Err(Error::SliceMismatch(f.slice().to_string(), n.to_string()))
        }
    }

    /// Pointwise product, tagged with `slice`.
    pub fn pointwise(&self, f: &CylinderFunction, g: &CylinderFunction, slice: &Degree) -> CylinderFunction {
        let mut out = CylinderFunction::zero(slice.clone());
        for (a, c) in f.terms() {
            for (b, d) in g.terms() {
                for part in self.alg.intersect_basic(a, b).into_parts() {
                    out.add_term(part, c * d);
                }
            }
        }
        out
    }

    /// `x ↦ f(x)·g(σ_m(x))` for f in slice m. Only the preimage part under
    /// `τ = λ(0,m)` can meet a term `(λ,F)` of f, since σ_m is injective on
    /// `D_{λ(0,m)}`.
    fn pull_product(&self, f: &CylinderFunction, g: &CylinderFunction, slice: Degree) -> CylinderFunction {
        let gr = self.graph();
        let m = f.slice();
        let mut out = CylinderFunction::zero(slice);
        for (a, c) in f.terms() {
            let tau = gr.prefix(a.head(), m);
            for (b, d) in g.terms() {
                if tau.source() != b.head().range() {
                    continue;
                }
                let lifted =
                    BasicSet::new(gr.compose(&tau, b.head()).expect("ranges agree"), b.avoid().iter().cloned());
                for part in self.alg.intersect_basic(a, &lifted).into_parts() {
                    out.add_term(part, c * d);
                }
            }
        }
        out
    }

    /// `(f·a)(x) = f(x) a(σ_n(x))`.
    pub fn right_action(&self, f: &CylinderFunction, a: &CylinderFunction) -> Result<CylinderFunction> {
        self.check_slice(a, &self.zero_deg())?;
        Ok(self.pull_product(f, a, f.slice().clone()))
    }

    /// `(fg)(x) = f(x) g(σ_m(x))`, landing in slice m+n.
    pub fn multiply(&self, f: &CylinderFunction, g: &CylinderFunction) -> CylinderFunction {
        self.pull_product(f, g, f.slice().add(g.slice()))
    }

    /// `(a·f)(x) = a(x) f(x)`.
    pub fn left_action(&self, a: &CylinderFunction, f: &CylinderFunction) -> Result<CylinderFunction> {
        self.check_slice(a, &self.zero_deg())?;
        Ok(self.pointwise(a, f, f.slice()))
    }

    /// `⟨f,g⟩_n(x) = Σ_{σ_n(y)=x} f(y) g(y)`.
    pub fn inner_product(&self, f: &CylinderFunction, g: &CylinderFunction) -> Result<CylinderFunction> {
        let n = f.slice().clone();
        self.check_slice(g, &n)?;
        let prod = self.pointwise(f, g, &n);
        Ok(self.push_forward(&prod, &n, |_| Scalar::one()))
    }

    /// `Σ_{σ_n(y)=x} w(part) h(y)` for h in slice n.
    pub(crate) fn push_forward(
        &self,
        h: &CylinderFunction,
        n: &Degree,
        weight: impl Fn(&BasicSet) -> Scalar,
    ) -> CylinderFunction {
        let mut out = CylinderFunction::zero(self.zero_deg());
        for (part, c) in h.terms() {
            let img = self.alg.sigma_image(part, n).expect("part lies in slice n");
            out.add_term(img, c * weight(part));
        }
        out
    }

    /// Pairwise disjoint nonempty parts with nonzero coefficients
    /// representing the same function.
    pub fn disjoint_form(&self, f: &CylinderFunction) -> Vec<(BasicSet, Scalar)> {
        let alg = &self.alg;
        let mut parts: Vec<(BasicSet, Scalar)> = Vec::new();
        for (b, c) in f.terms() {
            if alg.is_empty(b) {
                continue;
            }
            let mut next = Vec::new();
            let mut rest = vec![b.clone()];
            for (p, cp) in &parts {
                let both = alg.intersect_basic(p, b);
                if both.parts().iter().all(|q| alg.is_empty(q)) {
                    next.push((p.clone(), cp.clone()));
                    continue;
                }
                for q in both.into_parts() {
                    if !alg.is_empty(&q) {
                        next.push((q, cp + c));
                    }
                }
                for q in alg.difference_basic(p, b).into_parts() {
                    next.push((q, cp.clone()));
                }
                rest = rest.iter().flat_map(|r| alg.difference_basic(r, p).into_parts()).collect();
            }
            for r in rest {
                if !alg.is_empty(&r) {
                    next.push((r, c.clone()));
                }
            }
            next.retain(|(_, v)| !v.is_zero());
            parts = next;
        }
        parts.sort();
        parts
    }

    pub fn is_zero(&self, f: &CylinderFunction) -> bool {
        f.is_empty() || self.disjoint_form(f).is_empty()
    }

    /// Extensional equality of functions on ∂Λ.
    pub fn func_eq(&self, f: &CylinderFunction, g: &CylinderFunction) -> bool {
        let same_terms = f.len() == g.len() && f.terms().zip(g.terms()).all(|(a, b)| a == b);
        same_terms || self.is_zero(&f.reslice(self.zero_deg()).sub(&g.reslice(self.zero_deg())))
    }

    pub fn sup_norm(&self, f: &CylinderFunction) -> Scalar {
        self.disjoint_form(f).into_iter().map(|(_, c)| c.abs()).fold(Scalar::zero(), |m, c| if c > m { c } else { m })
    }

    /// All nonempty `(λ,F) ∈ A^n` within `cap`, in canonical order.
    pub fn spanning_x(&self, n: &Degree, cap: &SpanCap) -> Vec<BasicSet> {
        let g = self.graph();
        let mut out = Vec::new();
        for lambda in g.all_paths_upto(&cap.head) {
            if !n.le(lambda.degree()) {
                continue;
            }
            let candidates: Vec<Path> = match cap.tail.checked_sub(lambda.degree()) {
                Some(room) => {
                    g.paths_from_upto(lambda.source(), &room).into_iter().filter(|p| !p.is_vertex()).collect()
                }
                None => Vec::new(),
            };
            let limit = cap.max_avoid.unwrap_or(candidates.len()).min(candidates.len());
            for avoid in subsets(&candidates, limit) {
                let b = BasicSet::new(lambda.clone(), avoid);
                if !self.alg.is_empty(&b) {
                    out.push(b);
                }
            }
        }
        out.sort();
        out.dedup();
        out
    }

    /// Generators of I_n: nonempty `(λ,F)` with `d(λ)_i = 0` and K(i)
    /// for every i with `n_i > 0`.
    pub fn spanning_i(&self, n: &Degree, cap: &SpanCap) -> Vec<BasicSet> {
        let colors: Vec<usize> = (1..=n.rank()).filter(|&i| n.get(i) > 0).collect();
        self.spanning_x(&self.zero_deg(), cap)
            .into_iter()
            .filter(|b| colors.iter().all(|&i| self.alg.k_criterion(b, i).expect("valid color")))
            .collect()
    }

    /// Generators of X_m·I_{n−m}: `(λ,F) ∈ A^m` with `(λ(m,d(λ)),F) ∈ I(I_{n−m})`.
    pub fn spanning_xi(&self, m: &Degree, n: &Degree, cap: &SpanCap) -> Result<Vec<BasicSet>> {
        let Some(gap) = n.checked_sub(m) else {
            return Err(Error::DegreeOrder(m.to_string(), n.to_string()));
        };
        let colors: Vec<usize> = (1..=n.rank()).filter(|&i| gap.get(i) > 0).collect();
        let g = self.graph();
        Ok(self
            .spanning_x(m, cap)
            .into_iter()
            .filter(|b| {
                let tail = BasicSet::new(g.suffix(b.head(), m), b.avoid().iter().cloned());
                colors.iter().all(|&i| self.alg.k_criterion(&tail, i).expect("valid color"))
            })
            .collect())
    }

    /// `Σ c · ket·⟨bra, f⟩_n`.
    pub fn apply_compact(&self, t: &CompactOp, f: &CylinderFunction) -> Result<CylinderFunction> {
        self.check_slice(f, t.slice())?;
        let n = t.slice();
        let mut out = CylinderFunction::zero(n.clone());
        for (c, ket, bra) in t.terms() {
            let ip = self.inner_product(&CylinderFunction::indicator(n.clone(), bra.clone()), f)?;
            let r = self.right_action(&CylinderFunction::indicator(n.clone(), ket.clone()), &ip)?;
            out = out.add(&r.scale(c));
        }
        Ok(out)
    }

    /// `ι_p^q(S)`, applied to f in slice q; zero when `p ≰ q`.
    pub fn iota(&self, s: &CompactOp, q: &Degree, f: &CylinderFunction) -> Result<CylinderFunction> {
        self.check_slice(f, q)?;
        let p = s.slice();
        let Some(rest) = q.checked_sub(p) else {
            return Ok(CylinderFunction::zero(q.clone()));
        };
        let g = self.graph();
        let mut out = CylinderFunction::zero(q.clone());
        for (a, c) in f.terms() {
            let head = self.cylinder(p, &g.prefix(a.head(), p));
            let tail = CylinderFunction::indicator(
                rest.clone(),
                BasicSet::new(g.suffix(a.head(), p), a.avoid().iter().cloned()),
            );
            let moved = self.apply_compact(s, &head)?;
            out = out.add(&self.multiply(&moved, &tail).scale(c));
        }
        Ok(out)
    }

    /// The multiplier `Σ c · ket·bra` of an operator on X_0.
    pub fn multiplier(&self, s: &CompactOp) -> Result<CylinderFunction> {
        if !s.slice().is_zero() {
            return Err(Error::SliceMismatch(s.slice().to_string(), self.zero_deg().to_string()));
        }
        let z = self.zero_deg();
        let mut out = CylinderFunction::zero(z.clone());
        for (c, ket, bra) in s.terms() {
            let prod = self.pointwise(
                &CylinderFunction::indicator(z.clone(), ket.clone()),
                &CylinderFunction::indicator(z.clone(), bra.clone()),
                &z,
            );
            out = out.add(&prod.scale(c));
        }
        Ok(out)
    }

    /// `(ι̃_p^q(S)x)(r) = ι_p^r(S)x(r)`; for p = 0 each component is
    /// multiplied by the multiplier of S.
    pub fn iota_tilde(&self, s: &CompactOp, x: &TupleElement) -> Result<TupleElement> {
        let mut out = TupleElement::zero(x.bound().clone());
        let mult = if s.slice().is_zero() { Some(self.multiplier(s)?) } else { None };
        for f in x.components() {
            let r = f.slice();
            let image = match &mult {
                Some(m) => self.left_action(m, f)?,
                None => self.iota(s, r, f)?,
            };
            out.set(image);
        }
        Ok(out)
    }

    /// The rank-one expansion of `ι_m^{m∨n}(S) ι_n^{m∨n}(T)`.
    pub fn compact_align(&self, s: &CompactOp, t: &CompactOp) -> CompactOp {
        let (m, n) = (s.slice(), t.slice());
        let mn = m.join(n);
        let mut out = CompactOp::zero(mn);
        for (c1, k1, b1) in s.terms() {
            for (c2, k2, b2) in t.terms() {
                let piece = self.align_generators(m, (k1, b1), n, (k2, b2));
                out = out.add(&piece.scale(&(c1 * c2)));
            }
        }
        out
    }

    fn align_generators(
        &self,
        m: &Degree,
        (ket1, bra1): (&BasicSet, &BasicSet),
        n: &Degree,
        (ket2, bra2): (&BasicSet, &BasicSet),
    ) -> CompactOp {
        let g = self.graph();
        let faults = self.alg.faults();
        let comp = |a: &Path, b: &Path| g.compose(a, b).expect("composable by construction");
        let (l1, f1) = (ket1.head(), ket1.avoid());
        let (l2, f2) = (bra1.head(), bra1.avoid());
        let (m1, g1) = (ket2.head(), ket2.avoid());
        let (m2, g2) = (bra2.head(), bra2.avoid());
        let l1t = g.suffix(l1, m);
        let l2t = g.suffix(l2, m);
        let m1t = g.suffix(m1, n);
        let m2t = g.suffix(m2, n);
        let mut out = CompactOp::zero(m.join(n));
        for (alpha, beta) in g.mce(l2, m1).iter() {
            let l2t_alpha = comp(&l2t, alpha);
            let mut kets = Vec::new();
            for (gamma, delta) in g.mce(&l1t, &l2t_alpha).iter() {
                let kappa = comp(l1, gamma);
                let mut h = BTreeSet::new();
                if !faults.h_skip[0] {
                    for nu in f1 {
                        h.extend(g.ext_one(&kappa, &comp(l1, nu)));
                    }
                }
                if !faults.h_skip[1] {
                    let base = comp(&l2t_alpha, delta);
                    for zeta in f2 {
                        h.extend(g.ext_one(&base, &comp(&l2t, zeta)));
                    }
                }
                if !faults.h_skip[2] {
                    let base = comp(&comp(m1, beta), delta);
                    for eta in g1 {
                        h.extend(g.ext_one(&base, &comp(m1, eta)));
                    }
                }
                kets.push(BasicSet::new(kappa, h));
            }
            let m1t_beta = comp(&m1t, beta);
            let mut bras = Vec::new();
            for (rho, tau) in g.mce(&m2t, &m1t_beta).iter() {
                let omega = comp(m2, rho);
                let mut j = BTreeSet::new();
                if !faults.j_skip[0] {
                    for xi in g2 {
                        j.extend(g.ext_one(&omega, &comp(m2, xi)));
                    }
                }
                if !faults.j_skip[1] {
                    let base = comp(&m1t_beta, tau);
                    for eta in g1 {
                        j.extend(g.ext_one(&base, &comp(&m1t, eta)));
                    }
                }
                if !faults.j_skip[2] {
                    let base = comp(&comp(l2, alpha), tau);
                    for zeta in f2 {
                        j.extend(g.ext_one(&base, &comp(l2, zeta)));
                    }
                }
                bras.push(BasicSet::new(omega, j));
            }
            if faults.h_drop_first && !kets.is_empty() {
                kets.remove(0);
            }
            if faults.j_drop_first && !bras.is_empty() {
                bras.remove(0);
            }
            for k in &kets {
                for b in &bras {
                    out.push(Scalar::one(), k.clone(), b.clone());
                }
            }
        }
        out
    }

    pub fn show_op(&self, op: &CompactOp) -> String {
        let g = self.graph();
        let pair = |b: &BasicSet| {
            let avoid: Vec<String> = b.avoid().iter().map(|p| g.path_name(p)).collect();
            format!("({},{{{}}})", g.path_name(b.head()), avoid.join(","))
        };
        let terms: Vec<String> = op
            .terms()
            .iter()
            .map(|(c, k, b)| {
                let coeff = if c.is_one() { String::new() } else { format!("{c}*") };
                format!("{coeff}Θ[{},{}]", pair(k), pair(b))
            })
            .collect();
        if terms.is_empty() {
            "0".into()
        } else {
            terms.join(" + ")
        }
    }

    pub fn show_function(&self, f: &CylinderFunction) -> String {
        let terms: Vec<String> = f
            .terms()
            .map(|(b, c)| {
                let coeff = if c.is_one() { String::new() } else { format!("{c}*") };
                format!("{coeff}χ{}", self.alg.show_basic(b))
            })
            .collect();
        if terms.is_empty() {
            "0".into()
        } else {
            terms.join(" + ")
        }
    }
}

/// All subsets of `items` with at most `max` elements, smallest first.
pub(crate) fn subsets<T: Clone>(items: &[T], max: usize) -> Vec<Vec<T>> {
    let mut out = vec![Vec::new()];
    let mut frontier: Vec<(usize, Vec<T>)> = vec![(0, Vec::new())];
    for _ in 0..max {
        let mut next = Vec::new();
        for (start, set) in &frontier {
            for (i, item) in items.iter().enumerate().skip(*start) {
                let mut s = set.clone();
                s.push(item.clone());
                out.push(s.clone());
                next.push((i + 1, s));
            }
        }
        frontier = next;
    }
    out
}
