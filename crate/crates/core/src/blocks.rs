//! Biconnected-component decomposition (Hopcroft–Tarjan with an edge stack).
//! Loops form their own blocks; parallel edges are told apart by edge index.

use std::collections::{BTreeMap, BTreeSet};

use crate::graph::{ColoredMultigraph, VertexId};

struct Dfs<'a> {
    adj: &'a BTreeMap<VertexId, Vec<(VertexId, usize)>>,
    disc: BTreeMap<VertexId, usize>,
    low: BTreeMap<VertexId, usize>,
    stack: Vec<usize>,
    out: Vec<Vec<usize>>,
    time: usize,
}

impl Dfs<'_> {
    fn visit(&mut self, v: VertexId, parent_edge: Option<usize>) {
        self.time += 1;
        self.disc.insert(v, self.time);
        self.low.insert(v, self.time);
        for &(w, ei) in self.adj.get(&v).into_iter().flatten() {
            if Some(ei) == parent_edge {
                continue;
            }
            match self.disc.get(&w).copied() {
                None => {
                    self.stack.push(ei);
                    self.visit(w, Some(ei));
                    let lw = self.low[&w];
                    if lw < self.low[&v] {
                        self.low.insert(v, lw);
                    }
                    if lw >= self.disc[&v] {
                        let mut block = Vec::new();
                        while let Some(top) = self.stack.pop() {
                            block.push(top);
                            if top == ei {
                                break;
                            }
                        }
                        self.out.push(block);
                    }
                }
                Some(dw) if dw < self.disc[&v] => {
                    self.stack.push(ei);
                    if dw < self.low[&v] {
                        self.low.insert(v, dw);
                    }
                }
                Some(_) => {}
            }
        }
    }
}

pub(crate) fn blocks(g: &ColoredMultigraph) -> Vec<ColoredMultigraph> {
    let edges = g.edges();
    let mut groups: Vec<Vec<usize>> = Vec::new();
    let mut adj: BTreeMap<VertexId, Vec<(VertexId, usize)>> = BTreeMap::new();
    for (i, e) in edges.iter().enumerate() {
        if e.is_loop() {
            groups.push(vec![i]);
        } else {
            adj.entry(e.tail).or_default().push((e.head, i));
            adj.entry(e.head).or_default().push((e.tail, i));
        }
    }
    let mut dfs = Dfs {
        adj: &adj,
        disc: BTreeMap::new(),
        low: BTreeMap::new(),
        stack: Vec::new(),
        out: Vec::new(),
        time: 0,
    };
    for &v in adj.keys() {
        if !dfs.disc.contains_key(&v) {
            dfs.visit(v, None);
        }
    }
    groups.extend(dfs.out);
    for group in &mut groups {
        group.sort_unstable();
    }
    groups.sort();
    groups
        .into_iter()
        .map(|group| {
            let block_edges: Vec<_> = group.iter().map(|&i| edges[i].clone()).collect();
            let vertices: BTreeSet<VertexId> = block_edges.iter().flat_map(|e| [e.tail, e.head]).collect();
            ColoredMultigraph::from_parts(vertices, block_edges)
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use crate::graph::{ColoredMultigraph, Edge, EdgeId};
    use std::collections::BTreeSet;

    fn g(edges: &[(&str, u32, u32)]) -> ColoredMultigraph {
        ColoredMultigraph::new([], edges.iter().map(|&(id, u, v)| Edge::zero(id, u, v, "z0"))).unwrap()
    }

    fn ids(b: &ColoredMultigraph) -> Vec<&str> {
        b.edges().iter().map(|e| e.id.as_str()).collect()
    }

    /// Brute force: two distinct non-loop edges share a block iff some
    /// simple cycle contains both.
    fn same_block_brute(gr: &ColoredMultigraph, a: &EdgeId, b: &EdgeId) -> bool {
        if a == b {
            return true;
        }
        let ea = gr.edge(a).unwrap();
        let eb = gr.edge(b).unwrap();
        if ea.is_loop() || eb.is_loop() {
            return false;
        }
        // enumerate edge subsets forming a simple cycle containing both
        let edges = gr.edges();
        let m = edges.len();
        for mask in 0u32..(1 << m) {
            let sub: Vec<_> = (0..m).filter(|i| mask >> i & 1 == 1).map(|i| &edges[i]).collect();
            if !sub.iter().any(|e| &e.id == a) || !sub.iter().any(|e| &e.id == b) {
                continue;
            }
            let mut deg = std::collections::BTreeMap::new();
            for e in &sub {
                *deg.entry(e.tail).or_insert(0) += 1;
                *deg.entry(e.head).or_insert(0) += 1;
            }
            if deg.values().any(|&d| d != 2) {
                continue;
            }
            let h = ColoredMultigraph::new([], sub.into_iter().cloned()).unwrap();
            if h.is_connected() {
                return true;
            }
        }
        false
    }

    #[test]
    fn path_has_two_blocks() {
        let b = g(&[("a", 0, 1), ("b", 1, 2)]).blocks();
        assert_eq!(b.len(), 2);
        assert_eq!(ids(&b[0]), vec!["a"]);
        assert_eq!(ids(&b[1]), vec!["b"]);
    }

    #[test]
    fn triangle_is_one_block() {
        let b = g(&[("a", 0, 1), ("b", 1, 2), ("c", 2, 0)]).blocks();
        assert_eq!(b.len(), 1);
        assert_eq!(b[0].edge_count(), 3);
    }

    #[test]
    fn triangle_with_pendant_matches_brute_force() {
        let gr = g(&[("a", 0, 1), ("b", 1, 2), ("c", 2, 0), ("p", 2, 3)]);
        let blocks = gr.blocks();
        assert_eq!(blocks.len(), 2);
        for x in gr.edges() {
            for y in gr.edges() {
                let together = blocks
                    .iter()
                    .any(|b| b.edge(&x.id).is_some() && b.edge(&y.id).is_some());
                assert_eq!(together, same_block_brute(&gr, &x.id, &y.id), "{} {}", x.id, y.id);
            }
        }
    }

    #[test]
    fn loops_parallels_and_isolated_vertices() {
        let gr = ColoredMultigraph::new(
            [9],
            [
                Edge::zero("l", 0, 0, "z0"),
                Edge::zero("p", 0, 1, "z0"),
                Edge::zero("q", 0, 1, "z0"),
                Edge::zero("r", 1, 2, "z0"),
            ],
        )
        .unwrap();
        let blocks = gr.blocks();
        let sets: BTreeSet<Vec<&str>> = blocks.iter().map(ids).collect();
        let want: BTreeSet<Vec<&str>> = [vec!["l"], vec!["p", "q"], vec!["r"]].into();
        assert_eq!(sets, want);
    }
}
