//! Canonical codes for blocks and the vertex-pivot class key built from them.
//!
//! A block code is a complete isomorphism invariant of a colored block.
//! Marker edges (`ν`, `λ0`) keep their orientation in the code; ordinary
//! edges are unoriented. Three shapes get readable codes:
//!
//! * `loop(c)` and `bridge(c)` for single-edge blocks,
//! * `cycleK(c1,...,cK)` for blocks that are a simple cycle, the color
//!   sequence being the smallest over rotations and reflections (marker
//!   edges carry `>`/`<` for their direction of traversal, except in a
//!   2-cycle with at most one marker edge, where direction is irrelevant),
//!
//! and every other block is written as `gN[...]`, the lexicographically
//! smallest edge list over all vertex orderings compatible with color
//! refinement.

use std::cmp::Ordering;
use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::hash::{Hash, Hasher};

use crate::graph::{Color, ColoredMultigraph, Edge, EdgeId, VertexId};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
struct LocalEdge {
    a: usize,
    b: usize,
    color: usize,
    directed: bool,
}

/// Canonical code of a single block.
pub fn block_code(block: &ColoredMultigraph) -> String {
    let index: BTreeMap<VertexId, usize> = block.vertices().iter().enumerate().map(|(i, &v)| (v, i)).collect();
    let colors: Vec<Color> = block
        .edges()
        .iter()
        .map(|e| e.color.clone())
        .collect::<BTreeSet<_>>()
        .into_iter()
        .collect();
    let edges: Vec<LocalEdge> = block
        .edges()
        .iter()
        .map(|e| LocalEdge {
            a: index[&e.tail],
            b: index[&e.head],
            color: colors.binary_search(&e.color).expect("color present"),
            directed: e.color.is_marker(),
        })
        .collect();
    let n = index.len();
    let m = edges.len();
    if m == 1 {
        let shape = if edges[0].a == edges[0].b { "loop" } else { "bridge" };
        return format!("{shape}({})", colors[edges[0].color]);
    }
    let mut degree = vec![0usize; n];
    for e in &edges {
        degree[e.a] += 1;
        degree[e.b] += 1;
    }
    if n == m && m >= 2 && degree.iter().all(|&d| d == 2) && edges.iter().all(|e| e.a != e.b) {
        return cycle_code(n, &edges, &colors);
    }
    generic_code(n, &edges, &colors)
}

// (color, mark) with mark 0 = none, 1 = traversed tail to head, 2 = reverse
type Token = (usize, u8);

fn cycle_code(n: usize, edges: &[LocalEdge], colors: &[Color]) -> String {
    let m = edges.len();
    let mut incident: Vec<Vec<usize>> = vec![Vec::new(); n];
    for (i, e) in edges.iter().enumerate() {
        incident[e.a].push(i);
        incident[e.b].push(i);
    }
    let suppress = m == 2 && edges.iter().filter(|e| e.directed).count() <= 1;
    let mut seq: Vec<Token> = Vec::with_capacity(m);
    let mut cur = 0usize;
    let mut prev: Option<usize> = None;
    for _ in 0..m {
        let ei = *incident[cur]
            .iter()
            .find(|&&i| Some(i) != prev)
            .expect("cycle vertex has two incident edges");
        let e = edges[ei];
        let next = if e.a == cur { e.b } else { e.a };
        let mark = if !e.directed || suppress {
            0
        } else if e.a == cur {
            1
        } else {
            2
        };
        seq.push((e.color, mark));
        prev = Some(ei);
        cur = next;
    }
    let flip = |(c, k): Token| (c, [0, 2, 1][k as usize]);
    let reversed: Vec<Token> = seq.iter().rev().map(|&t| flip(t)).collect();
    let mut best: Option<Vec<Token>> = None;
    for base in [&seq, &reversed] {
        for r in 0..m {
            let cand: Vec<Token> = base[r..].iter().chain(base[..r].iter()).copied().collect();
            if best.as_ref().is_none_or(|b| cand < *b) {
                best = Some(cand);
            }
        }
    }
    let body: Vec<String> = best
        .expect("non-empty cycle")
        .into_iter()
        .map(|(c, k)| format!("{}{}", colors[c], ["", ">", "<"][k as usize]))
        .collect();
    format!("cycle{m}({})", body.join(","))
}

// incidence entry: (kind, color, neighbour); kind 0 undirected, 1 out, 2 in, 3 loop
type Incidence = Vec<Vec<(u8, usize, usize)>>;

type Encoding = Vec<(usize, usize, u8, usize)>;

fn rank_of<T: Ord + Clone>(sigs: &[T]) -> Vec<usize> {
    let mut sorted: Vec<T> = sigs.to_vec();
    sorted.sort();
    sorted.dedup();
    sigs.iter().map(|s| sorted.binary_search(s).expect("present")).collect()
}

fn distinct(ranks: &[usize]) -> usize {
    ranks.iter().collect::<BTreeSet<_>>().len()
}

/// Vertex signature during refinement: own rank and sorted neighbourhood.
type Signature = (usize, Vec<(u8, usize, usize)>);

fn refine(inc: &Incidence, mut ranks: Vec<usize>) -> Vec<usize> {
    loop {
        let sigs: Vec<Signature> = inc
            .iter()
            .enumerate()
            .map(|(v, list)| {
                let mut nb: Vec<(u8, usize, usize)> = list.iter().map(|&(k, c, w)| (k, c, ranks[w])).collect();
                nb.sort_unstable();
                (ranks[v], nb)
            })
            .collect();
        let next = rank_of(&sigs);
        if distinct(&next) == distinct(&ranks) {
            return next;
        }
        ranks = next;
    }
}

fn encode(edges: &[LocalEdge], pos: &[usize]) -> Encoding {
    let mut out: Encoding = edges
        .iter()
        .map(|e| {
            let (pa, pb) = (pos[e.a], pos[e.b]);
            if e.directed {
                (pa, pb, 1, e.color)
            } else {
                (pa.min(pb), pa.max(pb), 0, e.color)
            }
        })
        .collect();
    out.sort_unstable();
    out
}

fn search(inc: &Incidence, edges: &[LocalEdge], ranks: Vec<usize>, best: &mut Option<Encoding>) {
    let ranks = refine(inc, ranks);
    let n = ranks.len();
    if distinct(&ranks) == n {
        let enc = encode(edges, &ranks);
        if best.as_ref().is_none_or(|b| enc < *b) {
            *best = Some(enc);
        }
        return;
    }
    let mut count: BTreeMap<usize, usize> = BTreeMap::new();
    for &r in &ranks {
        *count.entry(r).or_default() += 1;
    }
    let target = *count
        .iter()
        .find(|(_, &c)| c > 1)
        .map(|(r, _)| r)
        .expect("a non-singleton cell");
    for v in (0..n).filter(|&v| ranks[v] == target) {
        let split: Vec<usize> = (0..n)
            .map(|w| 2 * ranks[w] + usize::from(ranks[w] == target && w != v))
            .collect();
        search(inc, edges, rank_of(&split), best);
    }
}

fn generic_code(n: usize, edges: &[LocalEdge], colors: &[Color]) -> String {
    let mut inc: Incidence = vec![Vec::new(); n];
    for e in edges {
        if e.a == e.b {
            inc[e.a].push((3, e.color, e.a));
        } else if e.directed {
            inc[e.a].push((1, e.color, e.b));
            inc[e.b].push((2, e.color, e.a));
        } else {
            inc[e.a].push((0, e.color, e.b));
            inc[e.b].push((0, e.color, e.a));
        }
    }
    let initial: Vec<Vec<(u8, usize)>> = inc
        .iter()
        .map(|list| {
            let mut s: Vec<(u8, usize)> = list.iter().map(|&(k, c, _)| (k, c)).collect();
            s.sort_unstable();
            s
        })
        .collect();
    let mut best = None;
    search(&inc, edges, rank_of(&initial), &mut best);
    let body: Vec<String> = best
        .expect("at least one leaf")
        .into_iter()
        .map(|(a, b, d, c)| format!("{a}{}{b}:{}", if d == 1 { ">" } else { "-" }, colors[c]))
        .collect();
    format!("g{n}[{}]", body.join(","))
}

/// Status of the unique `ν` edge in a class representative.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PointedStatus {
    Bridge,
    Loop,
    Neither,
}

/// Vertex-pivot class of a graph: the sorted multiset of its block codes,
/// together with a representative graph. Equality, ordering and hashing use
/// the codes only.
#[derive(Clone)]
pub struct PivotClassKey {
    codes: Vec<String>,
    representative: ColoredMultigraph,
}

impl PivotClassKey {
    pub fn of(g: &ColoredMultigraph) -> Self {
        let mut codes: Vec<String> = g.blocks().iter().map(block_code).collect();
        codes.sort();
        PivotClassKey {
            codes,
            representative: normalized(g),
        }
    }

    /// Key of the single-vertex graph, printed `z{}`.
    pub fn point() -> Self {
        PivotClassKey {
            codes: Vec::new(),
            representative: ColoredMultigraph::point(),
        }
    }

    pub fn codes(&self) -> &[String] {
        &self.codes
    }

    pub fn representative(&self) -> &ColoredMultigraph {
        &self.representative
    }

    pub fn is_point(&self) -> bool {
        self.codes.is_empty()
    }

    /// `Some(status)` when the representative has exactly one `ν` edge.
    pub fn pointed_status(&self) -> Option<PointedStatus> {
        let g = &self.representative;
        let mut nu = g.edges().iter().filter(|e| e.color.is_pointed());
        let e = nu.next()?;
        if nu.next().is_some() {
            return None;
        }
        Some(if e.is_loop() {
            PointedStatus::Loop
        } else if g.is_bridge(&e.id).expect("edge exists") {
            PointedStatus::Bridge
        } else {
            PointedStatus::Neither
        })
    }

    /// Multiset union of block codes: the key of any splice of the two
    /// classes.
    pub fn spliced(keys: &[&PivotClassKey]) -> PivotClassKey {
        let graphs: Vec<ColoredMultigraph> = keys.iter().map(|k| k.representative.clone()).collect();
        let spliced = crate::graph::splice_all(&graphs);
        let mut codes: Vec<String> = keys.iter().flat_map(|k| k.codes.iter().cloned()).collect();
        codes.sort();
        debug_assert_eq!(codes, PivotClassKey::of(&spliced).codes);
        PivotClassKey {
            codes,
            representative: normalized(&spliced),
        }
    }
}

/// Compact vertex ids to `0..n` and rename edges `e0, e1, ...` in id order,
/// keeping edge orientation.
fn normalized(g: &ColoredMultigraph) -> ColoredMultigraph {
    let map: BTreeMap<VertexId, VertexId> = g
        .vertices()
        .iter()
        .enumerate()
        .map(|(i, &v)| (v, i as VertexId))
        .collect();
    let width = g.edge_count().to_string().len();
    let edges: Vec<Edge> = g
        .edges()
        .iter()
        .enumerate()
        .map(|(i, e)| Edge {
            id: EdgeId::new(format!("e{i:0width$}")),
            tail: map[&e.tail],
            head: map[&e.head],
            ..e.clone()
        })
        .collect();
    ColoredMultigraph::from_parts(map.values().copied().collect(), edges)
}

impl PartialEq for PivotClassKey {
    fn eq(&self, other: &Self) -> bool {
        self.codes == other.codes
    }
}

impl Eq for PivotClassKey {}

impl PartialOrd for PivotClassKey {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for PivotClassKey {
    fn cmp(&self, other: &Self) -> Ordering {
        self.codes.cmp(&other.codes)
    }
}

impl Hash for PivotClassKey {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.codes.hash(state);
    }
}

impl fmt::Display for PivotClassKey {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "z{{{}}}", self.codes.join(","))
    }
}

impl fmt::Debug for PivotClassKey {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}
