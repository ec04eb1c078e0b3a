//! Brute-force semantics by finite prefixes.
//!
//! On a graph without sources every boundary path is infinite and every path
//! extends, so a point x of ∂Λ can be represented by its prefix x(0,M) as
//! long as M dominates every degree a test looks at. None of the closed-form
//! set or operator formulas are used here: only path composition and
//! factorization.

use num_traits::{One, Zero};

use crate::boundary::{BasicSet, CylinderSet};
use crate::degree::Degree;
use crate::error::{Error, Result};
use crate::function::{CompactOp, CylinderFunction, Scalar};
use crate::graph::{KGraph, Path};
use crate::product::{subsets, ProductSystem, SpanCap};
use crate::report::Report;

pub struct PrefixUniverse<'g> {
    graph: &'g KGraph,
    degree: Degree,
    prefixes: Vec<Path>,
}

impl<'g> PrefixUniverse<'g> {
    pub fn new(graph: &'g KGraph, degree: Degree) -> Result<Self> {
        degree.check_rank(graph.rank())?;
        if let Some(v) = graph.find_source() {
            return Err(Error::SourcePresent(graph.vertex_name(v).into()));
        }
        let mut prefixes: Vec<Path> = graph.vertices().flat_map(|v| graph.paths_from(v, &degree).to_vec()).collect();
        prefixes.sort();
        Ok(PrefixUniverse { graph, degree, prefixes })
    }

    pub fn degree(&self) -> &Degree {
        &self.degree
    }

    pub fn prefixes(&self) -> &[Path] {
        &self.prefixes
    }

    pub fn graph(&self) -> &'g KGraph {
        self.graph
    }

    fn need(&self, p: &Path, d: &Degree) -> Result<()> {
        if d.le(p.degree()) {
            Ok(())
        } else {
            Err(Error::InsufficientDegree(p.degree().to_string(), d.to_string()))
        }
    }

    /// `x ∈ D_λ ∖ D_{λF}` for x with prefix p.
    pub fn membership(&self, p: &Path, a: &BasicSet) -> Result<bool> {
        let g = self.graph;
        let lambda = a.head();
        self.need(p, lambda.degree())?;
        if p.range() != lambda.range() || g.prefix(p, lambda.degree()) != *lambda {
            for nu in a.avoid() {
                self.need(p, &lambda.degree().add(nu.degree()))?;
            }
            return Ok(false);
        }
        for nu in a.avoid() {
            let lnu = g.compose(lambda, nu)?;
            self.need(p, lnu.degree())?;
            if g.prefix(p, lnu.degree()) == lnu {
                return Ok(false);
            }
        }
        Ok(true)
    }

    pub fn in_union(&self, p: &Path, parts: &[BasicSet]) -> Result<bool> {
        for a in parts {
            if self.membership(p, a)? {
                return Ok(true);
            }
        }
        Ok(false)
    }

    /// Compares two unions of basic sets on every prefix; returns the first
    /// prefix where they differ.
    pub fn set_equal(&self, xs: &[BasicSet], ys: &[BasicSet]) -> Result<Option<Path>> {
        for p in &self.prefixes {
            if self.in_union(p, xs)? != self.in_union(p, ys)? {
                return Ok(Some(p.clone()));
            }
        }
        Ok(None)
    }

    /// Number of parts containing the point; used for disjointness checks.
    pub fn multiplicity(&self, p: &Path, parts: &[BasicSet]) -> Result<usize> {
        let mut n = 0;
        for a in parts {
            if self.membership(p, a)? {
                n += 1;
            }
        }
        Ok(n)
    }

    pub fn evaluate(&self, f: &CylinderFunction, p: &Path) -> Result<Scalar> {
        let mut out = Scalar::zero();
        for (a, c) in f.terms() {
            if self.membership(p, a)? {
                out += c;
            }
        }
        Ok(out)
    }

    pub fn function_equal(&self, f: &CylinderFunction, g: &CylinderFunction) -> Result<Option<Path>> {
        for p in &self.prefixes {
            if self.evaluate(f, p)? != self.evaluate(g, p)? {
                return Ok(Some(p.clone()));
            }
        }
        Ok(None)
    }

    /// `Σ_{σ_n(y)=x} w(y) h(y)` evaluated at x with prefix p. The weight
    /// receives the number of preimages.
    pub fn preimage_sum(
        &self,
        n: &Degree,
        p: &Path,
        mut value: impl FnMut(&Path) -> Result<Scalar>,
        weight: impl Fn(usize) -> Scalar,
    ) -> Result<Scalar> {
        let g = self.graph;
        let taus = g.paths_to(p.range(), n);
        let w = weight(taus.len());
        let mut out = Scalar::zero();
        for tau in taus.iter() {
            let y = g.compose(tau, p)?;
            out += &w * value(&y)?;
        }
        Ok(out)
    }

    /// The prefix of σ_n(x), keeping the degree at M by re-extending is not
    /// possible in general; callers must ensure M − n suffices.
    pub fn shift(&self, p: &Path, n: &Degree) -> Path {
        self.graph.suffix(p, n)
    }

    /// `⟨f,g⟩_n(x) = Σ_{σ_n(y)=x} f(y) g(y)`.
    pub fn inner_product_at(&self, f: &CylinderFunction, g: &CylinderFunction, p: &Path) -> Result<Scalar> {
        let n = f.slice();
        self.preimage_sum(n, p, |y| Ok(self.evaluate(f, y)? * self.evaluate(g, y)?), |_| Scalar::one())
    }

    /// `(fg)(x) = f(x) g(σ_m(x))`.
    pub fn multiply_at(&self, f: &CylinderFunction, g: &CylinderFunction, p: &Path) -> Result<Scalar> {
        let a = self.evaluate(f, p)?;
        if a.is_zero() {
            return Ok(a);
        }
        Ok(a * self.evaluate(g, &self.shift(p, f.slice()))?)
    }

    /// `Θ_{a,b}` at level `s.slice()` applied to h and evaluated at x:
    /// `Σ c a(x) Σ_{σ_p(z)=σ_p(x)} b(z) h(z)`. This also computes
    /// `ι_p^q(S)h` for h in any slice q ≥ p.
    pub fn compact_at(&self, s: &CompactOp, p: &Path, h: &mut dyn FnMut(&Path) -> Result<Scalar>) -> Result<Scalar> {
        let lvl = s.slice();
        let y = self.shift(p, lvl);
        let mut out = Scalar::zero();
        for (c, ket, bra) in s.terms() {
            if !self.membership(p, ket)? {
                continue;
            }
            let inner = self.preimage_sum(
                lvl,
                &y,
                |z| {
                    if self.membership(z, bra)? {
                        h(z)
                    } else {
                        Ok(Scalar::zero())
                    }
                },
                |_| Scalar::one(),
            )?;
            out += c * inner;
        }
        Ok(out)
    }
}

/// Cross-checks the closed-form engine against the prefix semantics on all
/// spanning sets within `cap` (at most `max_avoid` avoided paths each).
/// The universe degree must dominate `cap + cap`.
pub fn cross_check(ps: &ProductSystem, u: &PrefixUniverse, cap: &Degree, max_avoid: usize) -> Result<Report> {
    let g = u.graph();
    let alg = ps.alg();
    let need = cap.add(cap);
    if !need.le(u.degree()) {
        return Err(Error::InsufficientDegree(u.degree().to_string(), need.to_string()));
    }
    let span = SpanCap::uniform(cap.clone()).with_max_avoid(max_avoid);
    let sets = all_basic_sets(g, cap, max_avoid);
    let mut r = Report::new();
    let show = |a: &BasicSet| alg.show_basic(a);

    let mut empty_bad = None;
    for a in &sets {
        let occupied = u.prefixes().iter().any(|p| u.membership(p, a).unwrap_or(false));
        if alg.is_empty(a) == occupied {
            empty_bad = Some(show(a));
            break;
        }
    }
    r.push("ORACLE-EMPTY", &format!("sets={}", sets.len()), empty_bad.map_or(Ok(()), Err));

    type Op<'x> = (&'static str, Box<dyn Fn(&BasicSet, &BasicSet) -> CylinderSet + 'x>, fn(bool, bool) -> bool);
    let ops: Vec<Op> = vec![
        ("ORACLE-INTERSECT", Box::new(|a, b| alg.intersect_basic(a, b)), |x, y| x && y),
        ("ORACLE-DIFFERENCE", Box::new(|a, b| alg.difference_basic(a, b)), |x, y| x && !y),
        ("ORACLE-UNION", Box::new(|a, b| alg.union(&alg.set_of(a.clone()), &alg.set_of(b.clone()))), |x, y| x || y),
        (
            "ORACLE-SYMDIFF",
            Box::new(|a, b| alg.symmetric_difference(&alg.set_of(a.clone()), &alg.set_of(b.clone()))),
            |x, y| x != y,
        ),
    ];
    for (name, op, truth) in &ops {
        let mut bad = None;
        'pairs: for a in &sets {
            for b in &sets {
                let out = op(a, b);
                for p in u.prefixes() {
                    let want = truth(u.membership(p, a)?, u.membership(p, b)?);
                    let hits = u.multiplicity(p, out.parts())?;
                    if hits > 1 || (hits == 1) != want {
                        bad = Some(format!(
                            "A={} B={} out={} x={}",
                            show(a),
                            show(b),
                            alg.show_set(&out),
                            g.path_name(p)
                        ));
                        break 'pairs;
                    }
                }
            }
        }
        r.push(name, &format!("pairs={}", sets.len() * sets.len()), bad.map_or(Ok(()), Err));
    }

    let mut bad = None;
    'refine: for a in &sets {
        for n in cap.below() {
            if !alg.slice_contains(a, &n) {
                continue;
            }
            let out = alg.refine_to_slice(a, &n)?;
            let outside = out.parts().iter().find(|q| !q.in_slice(&n));
            if let Some(q) = outside {
                bad = Some(format!("A={} n={} part={}", show(a), n, show(q)));
                break 'refine;
            }
            for p in u.prefixes() {
                let hits = u.multiplicity(p, out.parts())?;
                if hits > 1 || (hits == 1) != u.membership(p, a)? {
                    bad = Some(format!("A={} n={} x={}", show(a), n, g.path_name(p)));
                    break 'refine;
                }
            }
        }
    }
    r.push("ORACLE-REFINE", &format!("sets={}", sets.len()), bad.map_or(Ok(()), Err));

    let mut bad = None;
    'pre: for a in &sets {
        for n in cap.below() {
            let out = alg.sigma_preimage(a, &n);
            for p in u.prefixes() {
                let want = u.membership(&u.shift(p, &n), a)?;
                let hits = u.multiplicity(p, out.parts())?;
                if hits > 1 || (hits == 1) != want {
                    bad = Some(format!("A={} n={} x={}", show(a), n, g.path_name(p)));
                    break 'pre;
                }
            }
        }
    }
    r.push("ORACLE-PREIMAGE", &format!("sets={}", sets.len()), bad.map_or(Ok(()), Err));

    let slice = |n: &Degree| -> Vec<CylinderFunction> {
        ps.spanning_x(n, &span).into_iter().map(|b| CylinderFunction::indicator(n.clone(), b)).collect()
    };
    let showf = |f: &CylinderFunction| ps.show_function(f);

    let mut bad = None;
    let mut count = 0;
    'ip: for n in cap.below() {
        let fs = slice(&n);
        for f in &fs {
            for h in &fs {
                count += 1;
                let ip = ps.inner_product(f, h)?;
                for p in u.prefixes() {
                    if u.evaluate(&ip, p)? != u.inner_product_at(f, h, p)? {
                        bad = Some(format!("f={} g={} x={}", showf(f), showf(h), g.path_name(p)));
                        break 'ip;
                    }
                }
            }
        }
    }
    r.push("ORACLE-INNER", &format!("pairs={count}"), bad.map_or(Ok(()), Err));

    let mut bad = None;
    let mut count = 0;
    'mul: for m in cap.below() {
        let fs = slice(&m);
        for n in cap.below() {
            let hs = slice(&n);
            for f in &fs {
                for h in &hs {
                    count += 1;
                    let prod = ps.multiply(f, h);
                    for p in u.prefixes() {
                        if u.evaluate(&prod, p)? != u.multiply_at(f, h, p)? {
                            bad = Some(format!("f={} g={} x={}", showf(f), showf(h), g.path_name(p)));
                            break 'mul;
                        }
                    }
                }
            }
        }
    }
    r.push("ORACLE-MULTIPLY", &format!("pairs={count}"), bad.map_or(Ok(()), Err));

    let mut bad = None;
    let mut count = 0;
    'cpt: for n in cap.below() {
        let fs = slice(&n);
        let bras = ps.spanning_x(&n, &span);
        let kets = ps.spanning_x(&n, &SpanCap::uniform(cap.clone()).with_max_avoid(0));
        for ket in &kets {
            for bra in &bras {
                let op = CompactOp::theta(n.clone(), ket.clone(), bra.clone());
                for f in &fs {
                    count += 1;
                    let out = ps.apply_compact(&op, f)?;
                    for p in u.prefixes() {
                        let want = u.compact_at(&op, p, &mut |y| u.evaluate(f, y))?;
                        if u.evaluate(&out, p)? != want {
                            bad = Some(format!("T={} f={} x={}", ps.show_op(&op), showf(f), g.path_name(p)));
                            break 'cpt;
                        }
                    }
                }
            }
        }
    }
    r.push("ORACLE-COMPACT", &format!("cases={count}"), bad.map_or(Ok(()), Err));

    r.extend(align_against_oracle(ps, u, cap)?);
    Ok(r)
}

/// `compact_align(Θ_{a,a}, Θ_{c,c})` applied to cylinders of `X_{m∨n}`
/// against the nested preimage sums of the two operators, for all
/// cylinders a, c within `cap`.
pub fn align_against_oracle(ps: &ProductSystem, u: &PrefixUniverse, cap: &Degree) -> Result<Report> {
    let g = u.graph();
    let showf = |f: &CylinderFunction| ps.show_function(f);
    let mut r = Report::new();
    let mut bad = None;
    let mut count = 0;
    let levels = cap.below();
    'align: for m in &levels {
        for n in &levels {
            let mn = m.join(n);
            let lm = ps.spanning_x(m, &SpanCap::uniform(cap.clone()).with_max_avoid(0));
            let ln = ps.spanning_x(n, &SpanCap::uniform(cap.clone()).with_max_avoid(0));
            let targets = ps.spanning_x(&mn, &SpanCap::uniform(cap.join(&mn)).with_max_avoid(0));
            for a in &lm {
                for c in &ln {
                    let s = CompactOp::theta(m.clone(), a.clone(), a.clone());
                    let t = CompactOp::theta(n.clone(), c.clone(), c.clone());
                    let aligned = ps.compact_align(&s, &t);
                    for b in &targets {
                        count += 1;
                        let f = CylinderFunction::indicator(mn.clone(), b.clone());
                        let out = ps.apply_compact(&aligned, &f)?;
                        for p in u.prefixes() {
                            let want = u.compact_at(&s, p, &mut |y| u.compact_at(&t, y, &mut |w| u.evaluate(&f, w)))?;
                            if u.evaluate(&out, p)? != want {
                                bad = Some(format!(
                                    "S={} T={} f={} x={}",
                                    ps.show_op(&s),
                                    ps.show_op(&t),
                                    showf(&f),
                                    g.path_name(p)
                                ));
                                break 'align;
                            }
                        }
                    }
                }
            }
        }
    }
    r.push("ORACLE-ALIGN", &format!("cases={count}"), bad.map_or(Ok(()), Err));
    Ok(r)
}

/// Every `(λ,F)` with `d(λν) ≤ cap` and `|F| ≤ max_avoid`, empty or not.
pub fn all_basic_sets(g: &KGraph, cap: &Degree, max_avoid: usize) -> Vec<BasicSet> {
    let mut out = Vec::new();
    for lambda in g.all_paths_upto(cap) {
        let room = cap.sub(lambda.degree());
        let cands: Vec<Path> =
            g.paths_from_upto(lambda.source(), &room).into_iter().filter(|p| !p.is_vertex()).collect();
        for avoid in subsets(&cands, max_avoid.min(cands.len())) {
            out.push(BasicSet::new(lambda.clone(), avoid));
        }
    }
    out
}
