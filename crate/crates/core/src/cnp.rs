//! Cuntz–Krieger and covariance checks in the boundary-path representation.
//!
//! `S_λ` acts on slice-0 functions by `S_λ h = χ_{D_λ}·h` (the module
//! product, read back in slice 0) and `S_λ* h (x) = h(λx)` for
//! `r(x) = s(λ)`. Relations are checked by applying both sides to every
//! spanning vector and comparing extensionally.

use std::cell::RefCell;
use std::collections::{BTreeSet, HashMap};
use std::rc::Rc;

use num_traits::One;

use crate::boundary::{BasicSet, BoundaryAlgebra};
use crate::degree::Degree;
use crate::error::{Error, Result};
use crate::function::{CompactOp, CylinderFunction, Scalar, TupleElement};
use crate::graph::{Path, VertexId};
use crate::product::{subsets, ProductSystem, SpanCap};
use crate::report::Report;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Gen {
    S(Path),
    Adj(Path),
}

/// A formal linear combination of words in the generators; a word
/// `[g1, g2, …]` denotes the product `g1 g2 ⋯`.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct OpExpr {
    terms: Vec<(Scalar, Vec<Gen>)>,
}

impl OpExpr {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn word(word: Vec<Gen>) -> Self {
        OpExpr { terms: vec![(Scalar::one(), word)] }
    }

    pub fn s(p: &Path) -> Self {
        Self::word(vec![Gen::S(p.clone())])
    }

    pub fn adj(p: &Path) -> Self {
        Self::word(vec![Gen::Adj(p.clone())])
    }

    /// `S_λ S_λ*`.
    pub fn range_projection(p: &Path) -> Self {
        Self::word(vec![Gen::S(p.clone()), Gen::Adj(p.clone())])
    }

    pub fn terms(&self) -> &[(Scalar, Vec<Gen>)] {
        &self.terms
    }

    pub fn add(&self, other: &OpExpr) -> OpExpr {
        let mut terms = self.terms.clone();
        terms.extend(other.terms.iter().cloned());
        OpExpr { terms }
    }

    pub fn scale(&self, c: &Scalar) -> OpExpr {
        OpExpr { terms: self.terms.iter().map(|(v, w)| (v * c, w.clone())).collect() }
    }

    pub fn sub(&self, other: &OpExpr) -> OpExpr {
        self.add(&other.scale(&-Scalar::one()))
    }

    pub fn mul(&self, other: &OpExpr) -> OpExpr {
        let mut terms = Vec::new();
        for (a, u) in &self.terms {
            for (b, w) in &other.terms {
                let mut word = u.clone();
                word.extend(w.iter().cloned());
                terms.push((a * b, word));
            }
        }
        OpExpr { terms }
    }
}

/// A finite exhaustive set at a vertex, with the pairing that certifies it:
/// every tested μ ∈ vΛ is matched with some λ ∈ E having Λ^min(λ,μ) ≠ ∅.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FeWitness {
    vertex: VertexId,
    set: Vec<Path>,
    pairing: Vec<(Path, Path)>,
}

impl FeWitness {
    pub fn certify(alg: &BoundaryAlgebra, vertex: VertexId, set: Vec<Path>) -> Result<Self> {
        let g = alg.graph();
        let mut set = set;
        set.sort();
        set.dedup();
        let bound = alg.bound_for(&set);
        if let Some(mu) = g.exhaustive_witness(vertex, &set, &bound)? {
            let names: Vec<String> = set.iter().map(|p| g.path_name(p)).collect();
            return Err(Error::NotExhaustive(g.vertex_name(vertex).into(), names.join(","), g.path_name(&mu)));
        }
        let mut pairing = Vec::new();
        for d in bound.below() {
            for mu in g.paths_from(vertex, &d).iter() {
                if let Some(l) = set.iter().find(|l| g.has_common_extension(l, mu)) {
                    pairing.push((mu.clone(), l.clone()));
                }
            }
        }
        Ok(FeWitness { vertex, set, pairing })
    }

    pub fn vertex(&self) -> VertexId {
        self.vertex
    }

    pub fn set(&self) -> &[Path] {
        &self.set
    }

    pub fn pairing(&self) -> &[(Path, Path)] {
        &self.pairing
    }
}

type XiCache = HashMap<(Degree, Degree), Rc<Vec<BasicSet>>>;

pub struct Verifier<'a, 'g> {
    ps: &'a ProductSystem<'g>,
    cap: Degree,
    vectors: Vec<CylinderFunction>,
    q: Degree,
    s_width: u32,
    xi_max_avoid: usize,
    xi_cache: RefCell<XiCache>,
}

impl<'a, 'g> Verifier<'a, 'g> {
    /// Test vectors are all nonempty `χ_{(λ,F)}` in slice 0 within `cap`.
    pub fn new(ps: &'a ProductSystem<'g>, cap: Degree) -> Result<Self> {
        Self::with_span(ps, SpanCap::uniform(cap))
    }

    pub fn with_span(ps: &'a ProductSystem<'g>, span: SpanCap) -> Result<Self> {
        let g = ps.graph();
        span.head.check_rank(g.rank())?;
        span.tail.check_rank(g.rank())?;
        let z = g.zero();
        let vectors = ps.spanning_x(&z, &span).into_iter().map(|b| CylinderFunction::indicator(z.clone(), b)).collect();
        Ok(Verifier { ps, cap: span.head, vectors, q: z, s_width: 1, xi_max_avoid: 1, xi_cache: RefCell::default() })
    }

    /// The X̃ part of CK4 uses `s ∈ r + {0..width}^k`, `r = q ∨ ∨d(E)`.
    pub fn with_s_range(mut self, q: Degree, width: u32) -> Self {
        self.q = q;
        self.s_width = width;
        self
    }

    pub fn vectors(&self) -> &[CylinderFunction] {
        &self.vectors
    }

    pub fn cap(&self) -> &Degree {
        &self.cap
    }

    fn alg(&self) -> &BoundaryAlgebra<'g> {
        self.ps.alg()
    }

    pub fn apply_gen(&self, gen: &Gen, h: &CylinderFunction) -> CylinderFunction {
        let g = self.ps.graph();
        match gen {
            Gen::S(l) => {
                let chi = CylinderFunction::indicator(l.degree().clone(), BasicSet::cylinder(l.clone()));
                self.ps.multiply(&chi, h).reslice(g.zero())
            }
            Gen::Adj(l) => {
                let cyl = BasicSet::cylinder(l.clone());
                let mut out = CylinderFunction::zero(g.zero());
                for (b, c) in h.terms() {
                    for part in self.alg().intersect_basic(&cyl, b).into_parts() {
                        let img = self.alg().sigma_image(&part, l.degree()).expect("part lies in D_λ");
                        out.add_term(img, c.clone());
                    }
                }
                out
            }
        }
    }

    pub fn apply(&self, op: &OpExpr, h: &CylinderFunction) -> CylinderFunction {
        let mut out = CylinderFunction::zero(self.ps.graph().zero());
        for (c, word) in op.terms() {
            let mut v = h.clone();
            for gen in word.iter().rev() {
                if v.is_empty() {
                    break;
                }
                v = self.apply_gen(gen, &v);
            }
            out = out.add(&v.scale(c));
        }
        out
    }

    /// Applies `f_1 f_2 ⋯ f_r` factor by factor.
    pub fn apply_product(&self, factors: &[OpExpr], h: &CylinderFunction) -> CylinderFunction {
        factors.iter().rev().fold(h.clone(), |v, f| self.apply(f, &v))
    }

    fn show(&self, h: &CylinderFunction) -> String {
        self.ps.show_function(h)
    }

    fn name(&self, p: &Path) -> String {
        self.ps.graph().path_name(p)
    }

    fn agree(
        &self,
        lhs: impl Fn(&CylinderFunction) -> CylinderFunction,
        rhs: impl Fn(&CylinderFunction) -> CylinderFunction,
    ) -> std::result::Result<(), String> {
        for h in &self.vectors {
            let (l, r) = (lhs(h), rhs(h));
            if !self.ps.func_eq(&l, &r) {
                return Err(format!("h={} lhs={} rhs={}", self.show(h), self.show(&l), self.show(&r)));
            }
        }
        Ok(())
    }

    fn compare(&self, lhs: &OpExpr, rhs: &OpExpr) -> std::result::Result<(), String> {
        self.agree(|h| self.apply(lhs, h), |h| self.apply(rhs, h))
    }

    fn paths(&self) -> Vec<Path> {
        self.ps.graph().all_paths_upto(&self.cap)
    }

    /// The S_v are mutually orthogonal self-adjoint projections.
    pub fn check_ck1(&self) -> Report {
        let g = self.ps.graph();
        let mut r = Report::new();
        let verts: Vec<Path> = g.vertices().map(|v| g.vertex(v)).collect();
        for u in &verts {
            let su = OpExpr::s(u);
            let inst = format!("v={}", self.name(u));
            r.push("CK1-idempotent", &inst, self.compare(&su.mul(&su), &su));
            r.push("CK1-selfadjoint", &inst, self.compare(&OpExpr::adj(u), &su));
            for w in &verts {
                if u != w {
                    let inst = format!("u={},v={}", self.name(u), self.name(w));
                    r.push("CK1-orthogonal", &inst, self.compare(&su.mul(&OpExpr::s(w)), &OpExpr::zero()));
                }
            }
        }
        r
    }

    /// `S_λ S_μ = S_{λμ}` (zero when not composable) and
    /// `S_λ S_λ* S_λ = S_λ`.
    pub fn check_ck2(&self) -> Report {
        let g = self.ps.graph();
        let mut r = Report::new();
        let paths = self.paths();
        for l in &paths {
            let sl = OpExpr::s(l);
            let inst = format!("λ={}", self.name(l));
            r.push("CK2-partial-isometry", &inst, self.compare(&sl.mul(&OpExpr::adj(l)).mul(&sl), &sl));
            for m in &paths {
                let inst = format!("λ={},μ={}", self.name(l), self.name(m));
                let rhs = match g.compose(l, m) {
                    Ok(lm) => OpExpr::s(&lm),
                    Err(_) => OpExpr::zero(),
                };
                r.push("CK2", &inst, self.compare(&sl.mul(&OpExpr::s(m)), &rhs));
            }
        }
        r
    }

    /// `S_λ* S_μ = Σ_{(α,β)∈Λ^min(λ,μ)} S_α S_β*`.
    pub fn check_ck3(&self) -> Report {
        let g = self.ps.graph();
        let mut r = Report::new();
        let paths = self.paths();
        for l in &paths {
            for m in &paths {
                let lhs = OpExpr::adj(l).mul(&OpExpr::s(m));
                let mut rhs = OpExpr::zero();
                for (a, b) in g.mce(l, m).iter() {
                    rhs = rhs.add(&OpExpr::s(a).mul(&OpExpr::adj(b)));
                }
                let inst = format!("λ={},μ={}", self.name(l), self.name(m));
                r.push("CK3", &inst, self.compare(&lhs, &rhs));
            }
        }
        r
    }

    /// Exhaustive antichains E ⊆ vΛ with every member of degree ≤ cap,
    /// together with the singletons {v}.
    pub fn fe_sets(&self) -> Vec<FeWitness> {
        let g = self.ps.graph();
        let mut out = Vec::new();
        for v in g.vertices() {
            out.push(FeWitness::certify(self.alg(), v, vec![g.vertex(v)]).expect("{v} is exhaustive"));
            let cands: Vec<Path> = g.paths_from_upto(v, &self.cap).into_iter().filter(|p| !p.is_vertex()).collect();
            for set in subsets(&cands, cands.len()) {
                if set.is_empty() {
                    continue;
                }
                let antichain = set.iter().all(|a| set.iter().all(|b| a == b || !g.extends(a, b)));
                if !antichain {
                    continue;
                }
                if let Ok(w) = FeWitness::certify(self.alg(), v, set) {
                    out.push(w);
                }
            }
        }
        out
    }

    fn show_fe(&self, fe: &FeWitness) -> String {
        let g = self.ps.graph();
        let names: Vec<String> = fe.set.iter().map(|p| g.path_name(p)).collect();
        format!("v={},E={{{}}}", g.vertex_name(fe.vertex), names.join(","))
    }

    /// Λ^min(G) for nonempty G: paths of degree ∨d(G) extending every
    /// member of G.
    pub fn lambda_min_set(&self, set: &[Path]) -> Vec<Path> {
        let g = self.ps.graph();
        let Some((first, rest)) = set.split_first() else {
            return Vec::new();
        };
        let mut cur = vec![first.clone()];
        for nu in rest {
            let mut next = BTreeSet::new();
            for l in &cur {
                for (alpha, _) in g.mce(l, nu).iter() {
                    next.insert(g.compose(l, alpha).expect("composable"));
                }
            }
            cur = next.into_iter().collect();
        }
        cur
    }

    /// `Π_{μ∈E}(S_v − S_μ S_μ*) = 0`, checked on the product itself, on its
    /// expansion over `∨E`, and on X̃_s for s in the configured range.
    pub fn check_ck4(&self, fe: &FeWitness) -> Report {
        let g = self.ps.graph();
        let mut r = Report::new();
        let inst = self.show_fe(fe);
        let v = g.vertex(fe.vertex);
        let factors: Vec<OpExpr> = fe.set.iter().map(|mu| OpExpr::s(&v).sub(&OpExpr::range_projection(mu))).collect();
        let zero = CylinderFunction::zero(g.zero());
        r.push("CK4", &inst, self.agree(|h| self.apply_product(&factors, h), |_| zero.clone()));

        let mut expansion = OpExpr::s(&v);
        for sub in subsets(&fe.set, fe.set.len()).into_iter().filter(|s| !s.is_empty()) {
            let sign = if sub.len() % 2 == 0 { Scalar::one() } else { -Scalar::one() };
            for l in self.lambda_min_set(&sub) {
                expansion = expansion.add(&OpExpr::range_projection(&l).scale(&sign));
            }
        }
        r.push("CK4-expansion", &inst, self.compare(&expansion, &OpExpr::zero()));
        r.push("CK4-tilde", &inst, self.ck4_tilde(fe));
        r
    }

    fn xi_generators(&self, t: &Degree, s: &Degree) -> Rc<Vec<BasicSet>> {
        let key = (t.clone(), s.clone());
        if let Some(hit) = self.xi_cache.borrow().get(&key) {
            return hit.clone();
        }
        let span = SpanCap { head: s.clone(), tail: s.clone(), max_avoid: Some(self.xi_max_avoid) };
        let gens = Rc::new(self.ps.spanning_xi(t, s, &span).expect("t ≤ s"));
        self.xi_cache.borrow_mut().insert(key, gens.clone());
        gens
    }

    fn s_range(&self, fe: &FeWitness) -> Vec<Degree> {
        let g = self.ps.graph();
        let r = self.q.join(&g.join_degrees(&fe.set));
        let width = Degree::constant(g.rank(), self.s_width);
        width.below().into_iter().map(|eps| r.add(&eps)).collect()
    }

    fn ck4_tilde(&self, fe: &FeWitness) -> std::result::Result<(), String> {
        let g = self.ps.graph();
        let z = g.zero();
        let cyl = |p: &Path| BasicSet::cylinder(p.clone());
        let pv = CompactOp::theta(z.clone(), cyl(&g.vertex(fe.vertex)), cyl(&g.vertex(fe.vertex)));
        let pmu: Vec<CompactOp> =
            fe.set.iter().map(|mu| CompactOp::theta(mu.degree().clone(), cyl(mu), cyl(mu))).collect();
        for s in self.s_range(fe) {
            for t in s.below() {
                for a in self.xi_generators(&t, &s).iter() {
                    let mut x = TupleElement::single(s.clone(), CylinderFunction::indicator(t.clone(), a.clone()));
                    for p in &pmu {
                        let keep = self.ps.iota_tilde(&pv, &x).map_err(|e| e.to_string())?;
                        let cut = self.ps.iota_tilde(p, &x).map_err(|e| e.to_string())?;
                        x = keep.sub(&cut);
                    }
                    if let Some(f) = x.components().iter().find(|f| !self.ps.is_zero(f)) {
                        return Err(format!(
                            "s={} t={} x={} image={}@{}",
                            s,
                            t,
                            self.alg().show_basic(a),
                            self.show(f),
                            f.slice()
                        ));
                    }
                }
            }
        }
        Ok(())
    }

    /// The X̃-level computation alone, for one FE set.
    pub fn check_cp(&self, fe: &FeWitness) -> Report {
        let mut r = Report::new();
        r.push("CP", &self.show_fe(fe), self.ck4_tilde(fe));
        r
    }

    /// `ι̃_{d(μ)}^n(Θ_{μ,μ})` fixes a single-component tuple built from a
    /// generator `(λ,F)` of `X_m·I_{n−m}` when λ extends μ and kills it
    /// otherwise; checked for all μ and m with `d(μ), m ≤ n`.
    pub fn check_xtilde_dichotomy(&self, n: &Degree) -> Report {
        let g = self.ps.graph();
        let mut r = Report::new();
        let mus: Vec<Path> = g.all_paths_upto(n);
        for m in n.below() {
            let gens = self.xi_generators(&m, n);
            for mu in &mus {
                let theta = CompactOp::theta(
                    mu.degree().clone(),
                    BasicSet::cylinder(mu.clone()),
                    BasicSet::cylinder(mu.clone()),
                );
                let mut bad = None;
                for a in gens.iter() {
                    let x = TupleElement::single(n.clone(), CylinderFunction::indicator(m.clone(), a.clone()));
                    let y = match self.ps.iota_tilde(&theta, &x) {
                        Ok(y) => y,
                        Err(e) => {
                            bad = Some(e.to_string());
                            break;
                        }
                    };
                    let expected = if g.extends(a.head(), mu) { x.clone() } else { TupleElement::zero(n.clone()) };
                    let diff = y.sub(&expected);
                    if diff.components().iter().any(|f| !self.ps.is_zero(f)) {
                        bad = Some(format!("x={}@{}", self.alg().show_basic(a), m));
                        break;
                    }
                }
                let inst = format!("n={},m={},μ={}", n, m, self.name(mu));
                r.push("XTILDE", &inst, bad.map_or(Ok(()), Err));
            }
        }
        r
    }

    /// Test vectors for X_n: nonempty `(λ,F)` with `d(λ) ≥ n` and at most
    /// one avoided path, within `cap ∨ n`.
    pub fn slice_vectors(&self, n: &Degree) -> Vec<CylinderFunction> {
        let top = self.cap.join(n);
        let span = SpanCap::uniform(top).with_max_avoid(1);
        self.ps.spanning_x(n, &span).into_iter().map(|b| CylinderFunction::indicator(n.clone(), b)).collect()
    }

    /// `compact_align(S,T)` against `ι_m^{m∨n}(S) ι_n^{m∨n}(T)` on the
    /// given vectors of `X_{m∨n}`.
    pub fn check_align(
        &self,
        s: &CompactOp,
        t: &CompactOp,
        vectors: &[CylinderFunction],
    ) -> std::result::Result<(), String> {
        let mn = s.slice().join(t.slice());
        let aligned = self.ps.compact_align(s, t);
        for f in vectors {
            let lhs = self.ps.apply_compact(&aligned, f).map_err(|e| e.to_string())?;
            let inner = self.ps.iota(t, &mn, f).map_err(|e| e.to_string())?;
            let rhs = self.ps.iota(s, &mn, &inner).map_err(|e| e.to_string())?;
            if !self.ps.func_eq(&lhs, &rhs) {
                return Err(format!("f={} align={} seq={}", self.show(f), self.show(&lhs), self.show(&rhs)));
            }
        }
        Ok(())
    }

    /// `check_align` over every pair from `ss × ts`, sharing the inner
    /// `ι(T)` images. Returns the number of pairs checked, or the first
    /// failing pair with its witness.
    pub fn align_family(
        &self,
        ss: &[CompactOp],
        ts: &[CompactOp],
        vectors: &[CylinderFunction],
    ) -> std::result::Result<usize, String> {
        let mut count = 0;
        for t in ts {
            let mut inner = Vec::with_capacity(vectors.len());
            for f in vectors {
                let mn = f.slice();
                inner.push(self.ps.iota(t, mn, f).map_err(|e| e.to_string())?);
            }
            for s in ss {
                let aligned = self.ps.compact_align(s, t);
                for (f, tf) in vectors.iter().zip(&inner) {
                    let lhs = self.ps.apply_compact(&aligned, f).map_err(|e| e.to_string())?;
                    let rhs = self.ps.iota(s, f.slice(), tf).map_err(|e| e.to_string())?;
                    if !self.ps.func_eq(&lhs, &rhs) {
                        return Err(format!(
                            "S={} T={} f={} align={} seq={}",
                            self.ps.show_op(s),
                            self.ps.show_op(t),
                            self.show(f),
                            self.show(&lhs),
                            self.show(&rhs)
                        ));
                    }
                }
                count += 1;
            }
        }
        Ok(count)
    }

    /// Nica covariance for the range projections of all pairs to cap, by
    /// the isometry route and by the module route.
    pub fn check_nica(&self) -> Report {
        let g = self.ps.graph();
        let mut r = Report::new();
        let paths = self.paths();
        let mut vec_cache: HashMap<Degree, Vec<CylinderFunction>> = HashMap::new();
        for l in &paths {
            for m in &paths {
                let inst = format!("λ={},μ={}", self.name(l), self.name(m));
                let lhs = OpExpr::range_projection(l).mul(&OpExpr::range_projection(m));
                let mut rhs = OpExpr::zero();
                for (a, _) in g.mce(l, m).iter() {
                    rhs = rhs.add(&OpExpr::range_projection(&g.compose(l, a).expect("composable")));
                }
                r.push("NICA-isometry", &inst, self.compare(&lhs, &rhs));

                let s =
                    CompactOp::theta(l.degree().clone(), BasicSet::cylinder(l.clone()), BasicSet::cylinder(l.clone()));
                let t =
                    CompactOp::theta(m.degree().clone(), BasicSet::cylinder(m.clone()), BasicSet::cylinder(m.clone()));
                let mn = l.degree().join(m.degree());
                let vectors = vec_cache.entry(mn.clone()).or_insert_with(|| self.slice_vectors(&mn));
                r.push("NICA-align", &inst, self.check_align(&s, &t, vectors));
            }
        }
        r
    }

    /// Every generator `(λ,F)` of `X_m·I_{n−m}` with `r(λ) = v` extends a
    /// member of E.
    pub fn check_generator_extension(&self, fe: &FeWitness, n: &Degree, m: &Degree) -> Result<Report> {
        let g = self.ps.graph();
        let join = g.join_degrees(&fe.set);
        if !join.le(n) {
            return Err(Error::DegreeOrder(join.to_string(), n.to_string()));
        }
        let top = self.cap.join(n);
        let span = SpanCap { head: top.clone(), tail: top, max_avoid: Some(self.xi_max_avoid.max(2)) };
        let gens = self.ps.spanning_xi(m, n, &span)?;
        let bad =
            gens.iter().find(|a| a.head().range() == fe.vertex && !fe.set.iter().any(|eta| g.extends(a.head(), eta)));
        let mut r = Report::new();
        let inst = format!("{},n={},m={}", self.show_fe(fe), n, m);
        match bad {
            None => r.ok("GEN-EXTENDS", &inst),
            Some(a) => r.fail("GEN-EXTENDS", &inst, format!("generator={}", self.alg().show_basic(a))),
        }
        Ok(r)
    }

    /// CK1–CK4 for every auto-enumerated FE set, Nica covariance and the
    /// generator extension at `n = ∨d(E)`.
    pub fn check_all(&self) -> Report {
        let mut r = Report::new();
        r.extend(self.check_ck1());
        r.extend(self.check_ck2());
        r.extend(self.check_ck3());
        let fes = self.fe_sets();
        for fe in &fes {
            r.extend(self.check_ck4(fe));
        }
        r.extend(self.check_nica());
        for fe in &fes {
            let n = self.ps.graph().join_degrees(&fe.set);
            for m in n.below() {
                r.extend(self.check_generator_extension(fe, &n, &m).expect("n = ∨d(E)"));
            }
        }
        r
    }
}
