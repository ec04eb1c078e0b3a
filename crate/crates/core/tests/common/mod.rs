#![allow(dead_code)]

use kgraph::{Degree, KGraph, Path, Skeleton};
use proptest::prelude::*;

pub fn deg(c: &[u32]) -> Degree {
    Degree::from_vec(c.to_vec())
}

/// One-vertex 2-graph with `a` color-1 edges, `b` color-2 edges and the
/// square bijection given by `perm` (a permutation of 0..a*b).
pub fn one_vertex(a: usize, b: usize, perm: &[usize]) -> KGraph {
    let mut s = Skeleton::new(2);
    let v = s.add_vertex("v");
    let e: Vec<u32> = (0..a).map(|i| s.add_edge(format!("e{i}"), 1, v, v)).collect();
    let f: Vec<u32> = (0..b).map(|j| s.add_edge(format!("f{j}"), 2, v, v)).collect();
    for i in 0..a {
        for j in 0..b {
            let p = perm[i * b + j];
            s.add_square(e[i], f[j], f[p / a], e[p % a]);
        }
    }
    KGraph::new(s).expect("any bijection gives a 2-graph")
}

pub fn one_vertex_graph() -> impl Strategy<Value = KGraph> {
    (1usize..=2, 1usize..=2)
        .prop_flat_map(|(a, b)| (Just(a), Just(b), Just((0..a * b).collect::<Vec<_>>()).prop_shuffle()))
        .prop_map(|(a, b, perm)| one_vertex(a, b, &perm))
}

/// Edge lists `(range, source)` of a 1-graph on `n` vertices.
pub fn digraph(n: usize, max_edges: usize) -> impl Strategy<Value = Vec<(u32, u32)>> {
    prop::collection::vec((0..n as u32, 0..n as u32), 1..=max_edges)
}

pub fn one_graph(edges: &[(u32, u32)], n: usize) -> KGraph {
    let mut s = Skeleton::new(1);
    for v in 0..n {
        s.add_vertex(format!("v{v}"));
    }
    for (i, &(r, src)) in edges.iter().enumerate() {
        s.add_edge(format!("a{i}"), 1, r, src);
    }
    KGraph::new(s).expect("1-graphs need no squares")
}

/// The cartesian product of two 1-graphs, a 2-graph with vertices
/// `x_y` whose squares are all forced.
pub fn product(left: &[(u32, u32)], n: usize, right: &[(u32, u32)], m: usize) -> KGraph {
    let mut s = Skeleton::new(2);
    let vid = |x: u32, y: u32| x * m as u32 + y;
    for x in 0..n {
        for y in 0..m {
            s.add_vertex(format!("p{x}_{y}"));
        }
    }
    let mut first = vec![vec![0u32; m]; left.len()];
    for (i, &(r, src)) in left.iter().enumerate() {
        for y in 0..m as u32 {
            first[i][y as usize] = s.add_edge(format!("a{i}_{y}"), 1, vid(r, y), vid(src, y));
        }
    }
    let mut second = vec![vec![0u32; n]; right.len()];
    for (j, &(r, src)) in right.iter().enumerate() {
        for x in 0..n as u32 {
            second[j][x as usize] = s.add_edge(format!("b{x}_{j}"), 2, vid(x, r), vid(x, src));
        }
    }
    for (i, &(er, es)) in left.iter().enumerate() {
        for (j, &(fr, fs)) in right.iter().enumerate() {
            let a = first[i][fr as usize];
            let b = second[j][es as usize];
            let c = second[j][er as usize];
            let d = first[i][fs as usize];
            s.add_square(a, b, c, d);
        }
    }
    KGraph::new(s).expect("products of 1-graphs are 2-graphs")
}

pub fn product_graph() -> impl Strategy<Value = KGraph> {
    (1usize..=2, 1usize..=2)
        .prop_flat_map(|(n, m)| (Just(n), digraph(n, 2), Just(m), digraph(m, 2)))
        .prop_map(|(n, l, m, r)| product(&l, n, &r, m))
}

/// Any of the random families above.
pub fn any_graph() -> impl Strategy<Value = KGraph> {
    prop_oneof![
        one_vertex_graph(),
        product_graph(),
        (1usize..=3).prop_flat_map(|n| (Just(n), digraph(n, 4))).prop_map(|(n, e)| one_graph(&e, n)),
    ]
}

/// Picks an element by an index drawn independently of the slice length.
pub fn pick<T: Clone>(items: &[T], idx: usize) -> Option<T> {
    if items.is_empty() {
        None
    } else {
        Some(items[idx % items.len()].clone())
    }
}

pub fn uniform_cap(g: &KGraph, c: u32) -> Degree {
    Degree::constant(g.rank(), c)
}

pub fn names(g: &KGraph, ps: &[Path]) -> Vec<String> {
    ps.iter().map(|p| g.path_name(p)).collect()
}
