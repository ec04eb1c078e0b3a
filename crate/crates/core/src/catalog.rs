//! Small k-graphs used by tests, examples and the CLI `--builtin` flag.

use crate::degree::Degree;
use crate::graph::{KGraph, Skeleton};

fn coord_name(prefix: &str, p: &[u32]) -> String {
    let parts: Vec<String> = p.iter().map(u32::to_string).collect();
    format!("{prefix}{}", parts.join("_"))
}

/// The grid graph Ω_{k,m}: vertices p ≤ m, one edge of color i from p to
/// p + e_i. Vertex `p0_1` is (0,1); edge `e2_0_1` has color 2, range (0,1).
pub fn grid_skeleton(m: &[u32]) -> Skeleton {
    let k = m.len();
    let top = Degree::from_vec(m.to_vec());
    let points = top.below();
    let mut s = Skeleton::new(k);
    for p in &points {
        s.add_vertex(coord_name("p", p.coords()));
    }
    let index = |p: &Degree| points.iter().position(|q| q == p).unwrap() as u32;
    let edge_at = |s: &Skeleton, i: usize, p: &Degree| s.edge_id(&coord_name(&format!("e{i}_"), p.coords())).unwrap();
    for p in &points {
        for i in 1..=k {
            let q = p.add(&Degree::basis(k, i));
            if q.le(&top) {
                let name = coord_name(&format!("e{i}_"), p.coords());
                s.add_edge(name, i, index(p), index(&q));
            }
        }
    }
    for p in &points {
        for i in 1..=k {
            for j in i + 1..=k {
                let (ei, ej) = (Degree::basis(k, i), Degree::basis(k, j));
                if !p.add(&ei).add(&ej).le(&top) {
                    continue;
                }
                let a = edge_at(&s, i, p);
                let b = edge_at(&s, j, &p.add(&ei));
                let c = edge_at(&s, j, p);
                let d = edge_at(&s, i, &p.add(&ej));
                s.add_square(a, b, c, d);
            }
        }
    }
    s
}

pub fn grid(m: &[u32]) -> KGraph {
    KGraph::new(grid_skeleton(m)).expect("grid graphs are valid")
}

/// One vertex `v`, edges `e` (color 1) and `f` (color 2), square ef = fe.
pub fn single_square() -> KGraph {
    let mut s = Skeleton::new(2);
    let v = s.add_vertex("v");
    let e = s.add_edge("e", 1, v, v);
    let f = s.add_edge("f", 2, v, v);
    s.add_square(e, f, f, e);
    KGraph::new(s).unwrap()
}

/// One vertex, color-1 edges `e0,e1`, color-2 edges `f0,f1`, squares
/// e_i f_j = f_{i+j mod 2} e_i.
pub fn two_by_two_skeleton() -> Skeleton {
    let mut s = Skeleton::new(2);
    let v = s.add_vertex("v");
    let e = [s.add_edge("e0", 1, v, v), s.add_edge("e1", 1, v, v)];
    let f = [s.add_edge("f0", 2, v, v), s.add_edge("f1", 2, v, v)];
    for i in 0..2 {
        for j in 0..2 {
            s.add_square(e[i], f[j], f[(i + j) % 2], e[i]);
        }
    }
    s
}

pub fn two_by_two() -> KGraph {
    KGraph::new(two_by_two_skeleton()).unwrap()
}

/// The 1-graph u ← v with a single edge `e`.
pub fn two_vertex() -> KGraph {
    let mut s = Skeleton::new(1);
    let u = s.add_vertex("u");
    let v = s.add_vertex("v");
    s.add_edge("e", 1, u, v);
    KGraph::new(s).unwrap()
}

/// One vertex with one edge of each of three colors, all squares trivial.
pub fn cube_vertex() -> KGraph {
    let mut s = Skeleton::new(3);
    let v = s.add_vertex("v");
    let a = s.add_edge("a", 1, v, v);
    let b = s.add_edge("b", 2, v, v);
    let c = s.add_edge("c", 3, v, v);
    s.add_square(a, b, b, a);
    s.add_square(a, c, c, a);
    s.add_square(b, c, c, b);
    KGraph::new(s).unwrap()
}

/// The 1-graph with one vertex and two loops `a`, `b`.
pub fn parallel_edges() -> KGraph {
    let mut s = Skeleton::new(1);
    let v = s.add_vertex("v");
    s.add_edge("a", 1, v, v);
    s.add_edge("b", 1, v, v);
    KGraph::new(s).unwrap()
}

/// A 2-graph in which `{a0}` passes the exhaustiveness test up to degree
/// (1,0) but fails at (0,len): the color-2 line below is one step longer
/// than the line above.
pub fn ladder(len: u32) -> KGraph {
    assert!(len >= 1);
    let mut s = Skeleton::new(2);
    let v: Vec<u32> = (0..=len).map(|t| s.add_vertex(format!("v{t}"))).collect();
    let w: Vec<u32> = (0..len).map(|t| s.add_vertex(format!("w{t}"))).collect();
    let f: Vec<u32> = (0..len).map(|t| s.add_edge(format!("f{t}"), 2, v[t as usize], v[t as usize + 1])).collect();
    let a: Vec<u32> = (0..len).map(|t| s.add_edge(format!("a{t}"), 1, v[t as usize], w[t as usize])).collect();
    let g: Vec<u32> = (0..len - 1).map(|t| s.add_edge(format!("g{t}"), 2, w[t as usize], w[t as usize + 1])).collect();
    for t in 0..(len - 1) as usize {
        s.add_square(a[t], g[t], f[t], a[t + 1]);
    }
    KGraph::new(s).unwrap()
}

/// A finite 2-graph where `D_m ⊆ D_{m.f1} ∪ D_{m.f2}` without either
/// single inclusion. Here `(v,{m.f1,m.f2})` misses ∂Λ^{≥e_1} although
/// condition K(1) fails for it.
pub fn kernel_gap() -> KGraph {
    let mut s = Skeleton::new(2);
    let v = s.add_vertex("v");
    let w = s.add_vertex("w");
    let w1 = s.add_vertex("w1");
    let w2 = s.add_vertex("w2");
    let u1 = s.add_vertex("u1");
    let u2 = s.add_vertex("u2");
    let u3 = s.add_vertex("u3");
    let m = s.add_edge("m", 1, v, w);
    let f1 = s.add_edge("f1", 2, w, w1);
    let f2 = s.add_edge("f2", 2, w, w2);
    let g1 = s.add_edge("g1", 2, v, u1);
    let g2 = s.add_edge("g2", 2, v, u2);
    s.add_edge("g3", 2, v, u3);
    let b1 = s.add_edge("b1", 1, u1, w1);
    let b2 = s.add_edge("b2", 1, u2, w2);
    s.add_square(m, f1, g1, b1);
    s.add_square(m, f2, g2, b2);
    KGraph::new(s).unwrap()
}

/// Looks up a builtin graph by name.
pub fn builtin(name: &str) -> Option<KGraph> {
    Some(match name {
        "grid22" => grid(&[2, 2]),
        "grid11" => grid(&[1, 1]),
        "square" => single_square(),
        "two-by-two" => two_by_two(),
        "two-vertex" => two_vertex(),
        "cube" => cube_vertex(),
        "parallel" => parallel_edges(),
        "kernel-gap" => kernel_gap(),
        _ => return None,
    })
}

pub const BUILTIN_NAMES: &[&str] =
    &["grid22", "grid11", "square", "two-by-two", "two-vertex", "cube", "parallel", "kernel-gap"];
