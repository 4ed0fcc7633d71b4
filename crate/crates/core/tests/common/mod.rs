#![allow(dead_code)]

use std::collections::BTreeSet;

use rand::seq::SliceRandom;
use rand::Rng;
use reltutte::{ColoredMultigraph, Edge, EdgeKind, VertexId};

pub type Pairs = Vec<(VertexId, VertexId)>;

fn connected_spanning(n: u32, pairs: &[(u32, u32)]) -> bool {
    let mut parent: Vec<u32> = (0..n).collect();
    fn find(p: &mut [u32], x: u32) -> u32 {
        let mut x = x;
        while p[x as usize] != x {
            p[x as usize] = p[p[x as usize] as usize];
            x = p[x as usize];
        }
        x
    }
    let mut comps = n;
    for &(u, v) in pairs {
        let (a, b) = (find(&mut parent, u), find(&mut parent, v));
        if a != b {
            parent[a as usize] = b;
            comps -= 1;
        }
    }
    comps == 1
}

/// Every connected multigraph (loops and parallel edges allowed) with at
/// most `max_edges` edges, on vertex sets `0..n`, as edge lists. Labeled,
/// so isomorphic graphs repeat.
pub fn connected_multigraphs(max_edges: usize) -> Vec<Pairs> {
    let mut out = Vec::new();
    for n in 1..=max_edges as u32 + 1 {
        let types: Vec<(u32, u32)> = (0..n).flat_map(|a| (a..n).map(move |b| (a, b))).collect();
        let min_k = n as usize - 1;
        let mut cur = Vec::new();
        multisets(&types, 0, max_edges, &mut cur, &mut |m| {
            if m.len() >= min_k && connected_spanning(n, m) {
                out.push(m.to_vec());
            }
        });
    }
    out
}

fn multisets(types: &[(u32, u32)], from: usize, left: usize, cur: &mut Pairs, f: &mut impl FnMut(&Pairs)) {
    f(cur);
    if left == 0 {
        return;
    }
    for i in from..types.len() {
        cur.push(types[i]);
        multisets(types, i, left - 1, cur, f);
        cur.pop();
    }
}

/// Same family, deduplicated up to isomorphism (brute force over vertex
/// permutations; only for small vertex counts).
pub fn connected_multigraphs_up_to_iso(max_edges: usize) -> Vec<Pairs> {
    let mut seen = BTreeSet::new();
    connected_multigraphs(max_edges)
        .into_iter()
        .filter(|m| seen.insert(canonical_pairs(m)))
        .collect()
}

fn permutations(n: usize) -> Vec<Vec<u32>> {
    let mut out = Vec::new();
    let mut p: Vec<u32> = (0..n as u32).collect();
    heap(n, &mut p, &mut out);
    out
}

fn heap(k: usize, p: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
    if k <= 1 {
        out.push(p.clone());
        return;
    }
    for i in 0..k {
        heap(k - 1, p, out);
        if k.is_multiple_of(2) {
            p.swap(i, k - 1);
        } else {
            p.swap(0, k - 1);
        }
    }
}

pub fn canonical_pairs(m: &Pairs) -> (u32, Pairs) {
    let n = m.iter().map(|&(a, b)| a.max(b) + 1).max().unwrap_or(1);
    permutations(n as usize)
        .into_iter()
        .map(|p| {
            let mut e: Pairs = m
                .iter()
                .map(|&(a, b)| {
                    let (x, y) = (p[a as usize], p[b as usize]);
                    (x.min(y), x.max(y))
                })
                .collect();
            e.sort();
            e
        })
        .min()
        .map(|e| (n, e))
        .unwrap()
}

pub fn single_color(pairs: &Pairs, color: &str) -> ColoredMultigraph {
    ColoredMultigraph::new(
        [0],
        pairs
            .iter()
            .enumerate()
            .map(|(i, &(u, v))| Edge::regular(&format!("e{i}"), u, v, color)),
    )
    .unwrap()
}

/// Blocks by brute force: two non-loop edges share a block iff some simple
/// cycle (an edge subset that is connected and 2-regular) contains both.
pub fn brute_blocks(g: &ColoredMultigraph) -> Vec<Vec<Edge>> {
    let edges: Vec<&Edge> = g.edges().iter().collect();
    let n = edges.len();
    let mut group: Vec<usize> = (0..n).collect();
    fn root(g: &mut [usize], x: usize) -> usize {
        if g[x] == x {
            x
        } else {
            let r = root(g, g[x]);
            g[x] = r;
            r
        }
    }
    for mask in 1u32..1 << n {
        let chosen: Vec<&Edge> = (0..n).filter(|i| mask >> i & 1 == 1).map(|i| edges[i]).collect();
        if chosen.len() < 2 || chosen.iter().any(|e| e.is_loop()) {
            continue;
        }
        let mut deg = std::collections::BTreeMap::new();
        for e in &chosen {
            *deg.entry(e.tail).or_insert(0) += 1;
            *deg.entry(e.head).or_insert(0) += 1;
        }
        if deg.values().any(|&d| d != 2) {
            continue;
        }
        let sub = ColoredMultigraph::new([], chosen.iter().map(|e| (*e).clone())).unwrap();
        if !sub.is_connected() {
            continue;
        }
        let idx: Vec<usize> = (0..n).filter(|i| mask >> i & 1 == 1).collect();
        for w in idx.windows(2) {
            let (a, b) = (root(&mut group, w[0]), root(&mut group, w[1]));
            group[a] = b;
        }
    }
    let mut blocks: std::collections::BTreeMap<usize, Vec<Edge>> = Default::default();
    for (i, e) in edges.iter().enumerate() {
        let r = root(&mut group, i);
        blocks.entry(r).or_default().push((*e).clone());
    }
    blocks.into_values().collect()
}

/// Isomorphism of two blocks preserving colors, kinds and the tail/head
/// order of marker edges.
pub fn blocks_isomorphic(a: &[Edge], b: &[Edge]) -> bool {
    if a.len() != b.len() {
        return false;
    }
    let verts = |x: &[Edge]| -> Vec<VertexId> {
        let s: BTreeSet<VertexId> = x.iter().flat_map(|e| [e.tail, e.head]).collect();
        s.into_iter().collect()
    };
    let (va, vb) = (verts(a), verts(b));
    if va.len() != vb.len() {
        return false;
    }
    let sig = |x: &[Edge], map: &dyn Fn(VertexId) -> VertexId| -> Vec<(u32, u32, String, EdgeKind)> {
        let mut s: Vec<_> = x
            .iter()
            .map(|e| {
                let (t, h) = (map(e.tail), map(e.head));
                let (t, h) = if e.color.is_marker() {
                    (t, h)
                } else {
                    (t.min(h), t.max(h))
                };
                (t, h, e.color.to_string(), e.kind)
            })
            .collect();
        s.sort();
        s
    };
    let pos = |v: &[VertexId], x: VertexId| v.iter().position(|&y| y == x).unwrap() as u32;
    let target = sig(b, &|x| pos(&vb, x));
    permutations(va.len())
        .into_iter()
        .any(|p| sig(a, &|x| p[pos(&va, x) as usize]) == target)
}

/// Whether the block multisets of `g` and `h` match up to isomorphism.
pub fn same_block_multiset(g: &ColoredMultigraph, h: &ColoredMultigraph) -> bool {
    let (a, mut b) = (brute_blocks(g), brute_blocks(h));
    if a.len() != b.len() {
        return false;
    }
    for x in &a {
        let Some(i) = b.iter().position(|y| blocks_isomorphic(x, y)) else {
            return false;
        };
        b.swap_remove(i);
    }
    true
}

/// A random vertex pivot of `g`, if `g` has a cutpoint.
pub fn random_pivot(g: &ColoredMultigraph, rng: &mut impl Rng) -> Option<ColoredMultigraph> {
    let cuts = g.cutpoints();
    let &c = cuts.choose(rng)?;
    let vs: Vec<VertexId> = g.vertices().iter().copied().collect();
    for _ in 0..200 {
        let (a, b) = (*vs.choose(rng).unwrap(), *vs.choose(rng).unwrap());
        if let Ok(p) = g.vertex_pivot(c, (a, b)) {
            return Some(p);
        }
    }
    None
}
