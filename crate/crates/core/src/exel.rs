//! The shift endomorphisms `α_n = · ∘ σ_n` and their transfer operators.

use num_traits::{One, Zero};

use crate::boundary::{BasicSet, CylinderSet};
use crate::degree::Degree;
use crate::error::{Error, Result};
use crate::function::{CylinderFunction, Scalar};
use crate::graph::KGraph;
use crate::product::{ProductSystem, SpanCap};
use crate::report::Report;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum WeightKind {
    Uniform,
    /// Divide by the number of σ_n-preimages.
    Normalized,
    /// `ω(n,·) = Π M_i^{-n_i}`; needs a regular graph with these counts.
    Regular(Vec<u32>),
}

/// `(M_1,…,M_k)` when every vertex is the source of exactly `M_i ≥ 1`
/// edges of color i.
pub fn detect_regularity(g: &KGraph) -> Option<Vec<u32>> {
    let mut out = Vec::with_capacity(g.rank());
    for c in 1..=g.rank() {
        let mut counts = g.vertices().map(|v| g.edges_out(v, c).len());
        let first = counts.next()?;
        if first == 0 || counts.any(|n| n != first) {
            return None;
        }
        out.push(first as u32);
    }
    Some(out)
}

pub struct Dynamics<'a, 'g> {
    ps: &'a ProductSystem<'g>,
    regular: Option<Vec<u32>>,
}

impl<'a, 'g> Dynamics<'a, 'g> {
    pub fn new(ps: &'a ProductSystem<'g>) -> Self {
        Dynamics { ps, regular: detect_regularity(ps.graph()) }
    }

    pub fn regularity(&self) -> Option<&[u32]> {
        self.regular.as_deref()
    }

    fn graph(&self) -> &'g KGraph {
        self.ps.graph()
    }

    /// `α_n(f) = f ∘ σ_n`, in slice n.
    pub fn alpha(&self, n: &Degree, f: &CylinderFunction) -> Result<CylinderFunction> {
        n.check_rank(self.graph().rank())?;
        if !f.slice().is_zero() {
            return Err(Error::SliceMismatch(f.slice().to_string(), self.graph().zero().to_string()));
        }
        let mut out = CylinderFunction::zero(n.clone());
        for (b, c) in f.terms() {
            for part in self.ps.alg().sigma_preimage(b, n).into_parts() {
                out.add_term(part, c.clone());
            }
        }
        Ok(out)
    }

    /// `|σ_n^{-1}(σ_n(x))|` for x in a part with `d(λ) ≥ n`.
    pub fn preimage_count(&self, n: &Degree, part: &BasicSet) -> usize {
        let g = self.graph();
        let w = g.prefix(part.head(), n).source();
        g.paths_to(w, n).len()
    }

    pub fn weight(&self, kind: &WeightKind, n: &Degree, part: &BasicSet) -> Scalar {
        match kind {
            WeightKind::Uniform => Scalar::one(),
            WeightKind::Normalized => Scalar::new(1.into(), self.preimage_count(n, part).into()),
            WeightKind::Regular(m) => omega(m, n),
        }
    }

    /// `L_n(f)(x) = Σ_{σ_n(y)=x} w(n,y) f(y)`.
    pub fn transfer(&self, n: &Degree, f: &CylinderFunction, kind: &WeightKind) -> Result<CylinderFunction> {
        if f.slice() != n {
            return Err(Error::SliceMismatch(f.slice().to_string(), n.to_string()));
        }
        if let WeightKind::Regular(m) = kind {
            if self.regular.as_ref() != Some(m) {
                return Err(Error::RegularityRequired);
            }
        }
        Ok(self.ps.push_forward(f, n, |part| self.weight(kind, n, part)))
    }

    /// `σ_n(∂Λ^{≥n})`: the cylinders `D_w` over vertices w with `Λ^n w ≠ ∅`.
    pub fn image(&self, n: &Degree) -> CylinderSet {
        let g = self.graph();
        let parts: Vec<BasicSet> =
            g.vertices().filter(|&w| !g.paths_to(w, n).is_empty()).map(|w| BasicSet::cylinder(g.vertex(w))).collect();
        self.ps.alg().union_of(&parts)
    }

    /// Spanning indicators of slice n within `cap ∨ n`, at most two avoided
    /// paths each.
    fn vectors(&self, n: &Degree, cap: &Degree) -> Vec<CylinderFunction> {
        self.ps
            .spanning_x(n, &SpanCap::uniform(cap.join(n)).with_max_avoid(2))
            .into_iter()
            .map(|b| CylinderFunction::indicator(n.clone(), b))
            .collect()
    }

    fn show(&self, f: &CylinderFunction) -> String {
        self.ps.show_function(f)
    }

    /// `L_n(α_n(f)g) = f L_n(g)` for all spanning f in slice 0 and g in
    /// slice n.
    pub fn check_transfer_identity(&self, n: &Degree, cap: &Degree, kind: &WeightKind) -> Result<Report> {
        let z = self.graph().zero();
        let fs = self.vectors(&z, cap);
        let gs = self.vectors(n, cap);
        let mut r = Report::new();
        let inst = format!("n={},weights={}", n, kind_name(kind));
        for f in &fs {
            let af = self.alpha(n, f)?;
            for g in &gs {
                let lhs = self.transfer(n, &self.ps.pointwise(&af, g, n), kind)?;
                let rhs = self.ps.pointwise(f, &self.transfer(n, g, kind)?, &z);
                if !self.ps.func_eq(&lhs, &rhs) {
                    r.fail("TRANSFER", &inst, format!("f={} g={}", self.show(f), self.show(g)));
                    return Ok(r);
                }
            }
        }
        r.ok("TRANSFER", &inst);
        Ok(r)
    }

    /// `⟨f,g⟩_n = L_n(f̄g)` with uniform weights.
    pub fn check_inner_product(&self, n: &Degree, cap: &Degree) -> Result<Report> {
        let gs = self.vectors(n, cap);
        let mut r = Report::new();
        let inst = format!("n={n}");
        for f in &gs {
            for g in &gs {
                let lhs = self.ps.inner_product(f, g)?;
                let rhs = self.transfer(n, &self.ps.pointwise(f, g, n), &WeightKind::Uniform)?;
                if !self.ps.func_eq(&lhs, &rhs) {
                    r.fail("INNER-TRANSFER", &inst, format!("f={} g={}", self.show(f), self.show(g)));
                    return Ok(r);
                }
            }
        }
        r.ok("INNER-TRANSFER", &inst);
        Ok(r)
    }

    /// `L_n(α_n(f)) = f·χ_{σ_n(∂Λ^{≥n})}` with normalized weights.
    pub fn check_normalized_inverse(&self, n: &Degree, cap: &Degree) -> Result<Report> {
        let z = self.graph().zero();
        let image = self.image(n);
        let mut chi = CylinderFunction::zero(z.clone());
        for p in image.parts() {
            chi.add_term(p.clone(), Scalar::one());
        }
        let mut r = Report::new();
        let inst = format!("n={n}");
        for f in self.vectors(&z, cap) {
            let lhs = self.transfer(n, &self.alpha(n, &f)?, &WeightKind::Normalized)?;
            let rhs = self.ps.pointwise(&f, &chi, &z);
            if !self.ps.func_eq(&lhs, &rhs) {
                r.fail("NORMALIZED-INVERSE", &inst, format!("f={}", self.show(&f)));
                return Ok(r);
            }
        }
        r.ok("NORMALIZED-INVERSE", &inst);
        Ok(r)
    }

    /// On a regular graph: ω agrees with the reciprocal preimage count on
    /// every part, `Σ_{σ_n(y)=x} ω(n,y) = 1`, and the cocycle identity
    /// `ω(m+n,x) = ω(m,x) ω(n,σ_m(x))` for `m ≤ n ≤ cap`.
    pub fn check_omega(&self, cap: &Degree) -> Result<Report> {
        let m_vec = self.regular.clone().ok_or(Error::RegularityRequired)?;
        let kind = WeightKind::Regular(m_vec.clone());
        let g = self.graph();
        let z = g.zero();
        let mut r = Report::new();
        for n in cap.below() {
            let inst = format!("n={n}");
            let mut bad = None;
            for f in self.vectors(&n, cap) {
                for (part, _) in f.terms() {
                    let count = Scalar::new(1.into(), self.preimage_count(&n, part).into());
                    if count != omega(&m_vec, &n) {
                        bad = Some(format!("part={}", self.ps.alg().show_basic(part)));
                    }
                }
            }
            r.push("OMEGA-COUNT", &inst, bad.map_or(Ok(()), Err));

            let mut bad = None;
            for v in g.vertices() {
                let chi = CylinderFunction::indicator(z.clone(), BasicSet::cylinder(g.vertex(v)));
                let sum = self.transfer(&n, &self.alpha(&n, &chi)?, &kind)?;
                if !self.ps.func_eq(&sum, &chi) {
                    bad = Some(format!("v={} sum={}", g.vertex_name(v), self.show(&sum)));
                    break;
                }
            }
            r.push("OMEGA-SUM", &inst, bad.map_or(Ok(()), Err));

            let vectors = self.vectors(&n, cap);
            for m in n.below() {
                let rest = n.sub(&m);
                let inst = format!("m={m},n={rest}");
                let mut bad = None;
                for f in &vectors {
                    for (part, _) in f.terms() {
                        let shifted = self.ps.alg().sigma_image(part, &m)?;
                        let a = Scalar::new(1.into(), self.preimage_count(&n, part).into());
                        let b = Scalar::new(1.into(), self.preimage_count(&m, part).into())
                            * Scalar::new(1.into(), self.preimage_count(&rest, &shifted).into());
                        if a != b || a != omega(&m_vec, &m) * omega(&m_vec, &rest) {
                            bad = Some(format!("part={}", self.ps.alg().show_basic(part)));
                        }
                    }
                }
                r.push("OMEGA-COCYCLE", &inst, bad.map_or(Ok(()), Err));
            }
        }
        Ok(r)
    }
}

/// `Π M_i^{-n_i}`.
pub fn omega(m: &[u32], n: &Degree) -> Scalar {
    let mut den = Scalar::one();
    for (i, &mi) in m.iter().enumerate() {
        for _ in 0..n.get(i + 1) {
            den *= Scalar::from_integer(mi.into());
        }
    }
    if den.is_zero() {
        den
    } else {
        den.recip()
    }
}

pub fn kind_name(kind: &WeightKind) -> &'static str {
    match kind {
        WeightKind::Uniform => "uniform",
        WeightKind::Normalized => "normalized",
        WeightKind::Regular(_) => "regular",
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog;

    fn d(v: &[u32]) -> Degree {
        Degree::from_vec(v.to_vec())
    }

    #[test]
    fn regularity_examples() {
        assert_eq!(detect_regularity(&catalog::single_square()), Some(vec![1, 1]));
        assert_eq!(detect_regularity(&catalog::grid(&[1, 1])), None);
        assert_eq!(detect_regularity(&catalog::two_by_two()), Some(vec![2, 2]));
    }

    #[test]
    fn alpha_examples() {
        let g = catalog::parallel_edges();
        let ps = ProductSystem::for_graph(&g);
        let dy = Dynamics::new(&ps);
        let v = ps.indicator(&g.zero(), ps.alg().parse_basic("[v]").unwrap()).unwrap();
        let out = dy.alpha(&d(&[1]), &v).unwrap();
        assert_eq!(ps.show_function(&out), "χ[a] + χ[b]");
        assert_eq!(dy.alpha(&d(&[0]), &v).unwrap(), v);
    }

    #[test]
    fn transfer_examples() {
        let g = catalog::single_square();
        let ps = ProductSystem::for_graph(&g);
        let dy = Dynamics::new(&ps);
        let e = ps.indicator(&d(&[1, 0]), ps.alg().parse_basic("[e]").unwrap()).unwrap();
        let out = dy.transfer(&d(&[1, 0]), &e, &WeightKind::Uniform).unwrap();
        assert_eq!(ps.show_function(&out), "χ[v]");

        let g3 = catalog::two_by_two();
        let ps3 = ProductSystem::for_graph(&g3);
        let dy3 = Dynamics::new(&ps3);
        let n = d(&[1, 1]);
        let v = ps3.indicator(&g3.zero(), ps3.alg().parse_basic("[v]").unwrap()).unwrap();
        let pulled = dy3.alpha(&n, &v).unwrap();
        assert_eq!(pulled.len(), 4);
        let back = dy3.transfer(&n, &pulled, &WeightKind::Regular(vec![2, 2])).unwrap();
        assert!(ps3.func_eq(&back, &v));
        assert_eq!(dy.transfer(&d(&[1, 0]), &e, &WeightKind::Regular(vec![2, 2])), Err(Error::RegularityRequired));
    }
}
