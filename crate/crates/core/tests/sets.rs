mod common;

use common::*;
use kgraph::oracle::all_basic_sets;
use kgraph::{catalog, BasicSet, BoundaryAlgebra, CylinderSet, KGraph, PrefixUniverse};
use proptest::prelude::*;

fn small_sets(g: &KGraph) -> Vec<BasicSet> {
    all_basic_sets(g, &deg(&[1, 1]), 1)
}

fn set_from(alg: &BoundaryAlgebra, pool: &[BasicSet], picks: &[usize]) -> CylinderSet {
    let parts: Vec<BasicSet> = picks.iter().map(|&i| pick(pool, i).unwrap()).collect();
    alg.union_of(&parts)
}

/// Checks `out` against the pointwise truth `want(x,y,z)` on every prefix
/// and requires disjoint parts.
fn agrees(
    u: &PrefixUniverse,
    inputs: [&CylinderSet; 3],
    out: &CylinderSet,
    want: impl Fn(bool, bool, bool) -> bool,
) -> Result<(), String> {
    for p in u.prefixes() {
        let m = |s: &CylinderSet| u.in_union(p, s.parts()).unwrap();
        let expected = want(m(inputs[0]), m(inputs[1]), m(inputs[2]));
        let mult = u.multiplicity(p, out.parts()).unwrap();
        if mult > 1 || (mult == 1) != expected {
            return Err(format!("prefix {} covered {mult} times, expected {expected}", u.graph().path_name(p)));
        }
    }
    Ok(())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn boolean_operations_match_the_oracle(
        g in one_vertex_graph(),
        xs in prop::collection::vec(0usize..512, 0..3),
        ys in prop::collection::vec(0usize..512, 0..3),
        zs in prop::collection::vec(0usize..512, 0..3),
    ) {
        let u = PrefixUniverse::new(&g, deg(&[2, 2])).unwrap();
        let alg = BoundaryAlgebra::new(&g);
        let pool = small_sets(&g);
        let (x, y, z) = (set_from(&alg, &pool, &xs), set_from(&alg, &pool, &ys), set_from(&alg, &pool, &zs));
        let ins = [&x, &y, &z];
        let check = |out: CylinderSet, f: &dyn Fn(bool, bool, bool) -> bool| agrees(&u, ins, &out, f);
        check(alg.intersect(&x, &y), &|a, b, _| a && b).map_err(TestCaseError::fail)?;
        check(alg.union(&x, &y), &|a, b, _| a || b).map_err(TestCaseError::fail)?;
        check(alg.difference(&x, &y), &|a, b, _| a && !b).map_err(TestCaseError::fail)?;
        check(alg.symmetric_difference(&x, &y), &|a, b, _| a != b).map_err(TestCaseError::fail)?;
        check(alg.intersect(&alg.intersect(&x, &y), &z), &|a, b, c| a && b && c).map_err(TestCaseError::fail)?;
        check(alg.union(&x, &alg.union(&y, &z)), &|a, b, c| a || b || c).map_err(TestCaseError::fail)?;
        check(alg.intersect(&x, &alg.union(&y, &z)), &|a, b, c| a && (b || c)).map_err(TestCaseError::fail)?;
        check(alg.union(&x, &alg.intersect(&x, &y)), &|a, _, _| a).map_err(TestCaseError::fail)?;
        check(alg.intersect(&x, &alg.union(&x, &y)), &|a, _, _| a).map_err(TestCaseError::fail)?;
        prop_assert!(alg.set_equal(&alg.union(&x, &y), &alg.union(&y, &x)));
        prop_assert!(alg.set_equal(&alg.intersect(&x, &y), &alg.intersect(&y, &x)));
        prop_assert!(alg.set_equal(&alg.intersect(&alg.intersect(&x, &y), &z), &alg.intersect(&x, &alg.intersect(&y, &z))));
    }

    #[test]
    fn reduce_keeps_the_set(g in one_vertex_graph(), i in 0usize..512) {
        let u = PrefixUniverse::new(&g, deg(&[2, 2])).unwrap();
        let alg = BoundaryAlgebra::new(&g);
        let a = pick(&all_basic_sets(&g, &deg(&[1, 1]), 3), i).unwrap();
        let r = alg.reduce(&a);
        prop_assert!(r.avoid().iter().all(|p| a.avoid().contains(p)));
        prop_assert_eq!(u.set_equal(std::slice::from_ref(&a), &[r]).unwrap(), None);
    }

    #[test]
    fn sigma_adjunction(g in one_vertex_graph(), i in 0usize..512, n in prop::collection::vec(0u32..2, 2)) {
        let u = PrefixUniverse::new(&g, deg(&[2, 2])).unwrap();
        let alg = BoundaryAlgebra::new(&g);
        let n = kgraph::Degree::from_vec(n);
        let a = pick(&small_sets(&g), i).unwrap();
        prop_assume!(n.le(a.degree()));
        let back = alg.sigma_preimage(&alg.sigma_image(&a, &n).unwrap(), &n);
        let a_set = alg.set_of(a.clone());
        prop_assert!(alg.subset(&a_set, &back));
        let head = BasicSet::cylinder(g.prefix(a.head(), &n));
        let fixed = alg.intersect(&back, &alg.set_of(head));
        prop_assert_eq!(u.set_equal(fixed.parts(), a_set.parts()).unwrap(), None);
    }

    #[test]
    fn refinement_partitions(g in any_graph(), i in 0usize..512, n in prop::collection::vec(0u32..2, 2)) {
        let alg = BoundaryAlgebra::new(&g);
        prop_assume!(alg.bound_certified());
        let n = kgraph::Degree::from_vec(n[..g.rank()].to_vec());
        let a = pick(&all_basic_sets(&g, &uniform_cap(&g, 1), 2), i).unwrap();
        prop_assume!(alg.slice_contains(&a, &n));
        let parts = alg.refine_to_slice(&a, &n).unwrap().into_parts();
        prop_assert!(parts.iter().all(|p| p.in_slice(&n)));
        for (k, p) in parts.iter().enumerate() {
            for q in &parts[k + 1..] {
                prop_assert!(alg.is_empty_set(&alg.intersect_basic(p, q)));
            }
        }
        prop_assert!(alg.set_equal(&alg.union_of(&parts), &alg.set_of(a)));
    }

    #[test]
    fn k_criterion_implies_slice_avoidance(g in any_graph(), i in 0usize..512) {
        let alg = BoundaryAlgebra::new(&g);
        prop_assume!(alg.bound_certified());
        let a = pick(&all_basic_sets(&g, &uniform_cap(&g, 1), 2), i).unwrap();
        for c in 1..=g.rank() {
            if alg.k_criterion(&a, c).unwrap() {
                prop_assert!(alg.slice_avoids(&a, c).unwrap(), "{} color {}", alg.show_basic(&a), c);
            }
        }
    }

    #[test]
    fn no_sources_means_no_avoidance(g in one_vertex_graph(), i in 0usize..512) {
        let alg = BoundaryAlgebra::new(&g);
        let a = pick(&all_basic_sets(&g, &deg(&[1, 1]), 2), i).unwrap();
        prop_assume!(!alg.is_empty(&a));
        for c in 1..=2 {
            prop_assert!(!alg.slice_avoids(&a, c).unwrap());
            prop_assert!(!alg.k_criterion(&a, c).unwrap());
        }
    }
}

#[test]
fn slice_avoidance_without_the_k_condition() {
    let g = catalog::kernel_gap();
    let alg = BoundaryAlgebra::new(&g);
    let a = alg.parse_basic("[v - m.f1,m.f2]").unwrap();
    assert!(!alg.is_empty(&a));
    assert!(alg.slice_avoids(&a, 1).unwrap());
    assert!(!alg.k_criterion(&a, 1).unwrap());
}
