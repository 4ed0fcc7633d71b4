//! Colored multigraphs with zero edges and a single optional pointed edge.
//!
//! Graph values are immutable: every structural operation returns a fresh
//! graph and leaves its input untouched. Edge ids are stable across
//! contraction and deletion. Every edge stores an ordered pair of endpoints
//! `(tail, head)`; constructors normalize input edges to ascending order and
//! structural operations carry the order through vertex renaming, which is
//! what the gluing operations use to decide which endpoints get identified.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::sync::Arc;

use crate::error::GraphError;

pub type VertexId = u32;

/// Stable edge identifier. Ordered lexicographically.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct EdgeId(Arc<str>);

impl EdgeId {
    pub fn new(s: impl AsRef<str>) -> Self {
        EdgeId(Arc::from(s.as_ref()))
    }

    pub fn as_str(&self) -> &str {
        &self.0
    }

    /// Id of an edge copied into a namespace, e.g. `f/h` for edge `h` copied
    /// for `f`.
    pub fn namespaced(&self, ns: &EdgeId) -> EdgeId {
        EdgeId::new(format!("{}/{}", ns.0, self.0))
    }
}

impl fmt::Display for EdgeId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl fmt::Debug for EdgeId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", &*self.0)
    }
}

impl From<&str> for EdgeId {
    fn from(s: &str) -> Self {
        EdgeId::new(s)
    }
}

/// Color token. The two reserved tokens are the pointed color `ν` and the
/// recolor token `λ0`; both sort before every ordinary color.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Color(Arc<str>);

pub const POINTED_COLOR: &str = "ν";
pub const RECOLOR_COLOR: &str = "λ0";

impl Color {
    pub fn new(s: impl AsRef<str>) -> Self {
        Color(Arc::from(s.as_ref()))
    }

    pub fn pointed() -> Self {
        Color::new(POINTED_COLOR)
    }

    pub fn recolor() -> Self {
        Color::new(RECOLOR_COLOR)
    }

    pub fn as_str(&self) -> &str {
        &self.0
    }

    pub fn is_pointed(&self) -> bool {
        &*self.0 == POINTED_COLOR
    }

    pub fn is_recolor(&self) -> bool {
        &*self.0 == RECOLOR_COLOR
    }

    /// Reserved marker colors. Edges with these colors are gluing sites and
    /// keep their orientation inside canonical codes.
    pub fn is_marker(&self) -> bool {
        self.is_pointed() || self.is_recolor()
    }
}

impl PartialOrd for Color {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Color {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        (!self.is_marker(), &*self.0).cmp(&(!other.is_marker(), &*other.0))
    }
}

impl fmt::Display for Color {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl fmt::Debug for Color {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl From<&str> for Color {
    fn from(s: &str) -> Self {
        Color::new(s)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum EdgeKind {
    Regular,
    Zero,
    Pointed,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Edge {
    pub id: EdgeId,
    pub tail: VertexId,
    pub head: VertexId,
    pub color: Color,
    pub kind: EdgeKind,
}

impl Edge {
    /// New edge with endpoints normalized to ascending order.
    pub fn new(id: impl Into<EdgeId>, u: VertexId, v: VertexId, color: impl Into<Color>, kind: EdgeKind) -> Self {
        Edge {
            id: id.into(),
            tail: u.min(v),
            head: u.max(v),
            color: color.into(),
            kind,
        }
    }

    pub fn regular(id: &str, u: VertexId, v: VertexId, color: &str) -> Self {
        Edge::new(id, u, v, color, EdgeKind::Regular)
    }

    pub fn zero(id: &str, u: VertexId, v: VertexId, color: &str) -> Self {
        Edge::new(id, u, v, color, EdgeKind::Zero)
    }

    pub fn pointed(id: &str, u: VertexId, v: VertexId) -> Self {
        Edge::new(id, u, v, Color::pointed(), EdgeKind::Pointed)
    }

    pub fn is_loop(&self) -> bool {
        self.tail == self.head
    }

    pub fn is_zero(&self) -> bool {
        self.kind == EdgeKind::Zero
    }

    pub fn is_pointed(&self) -> bool {
        self.kind == EdgeKind::Pointed
    }

    pub fn is_regular(&self) -> bool {
        self.kind == EdgeKind::Regular
    }

    pub fn touches(&self, v: VertexId) -> bool {
        self.tail == v || self.head == v
    }

    fn renamed(&self, rename: impl Fn(VertexId) -> VertexId) -> Edge {
        Edge {
            tail: rename(self.tail),
            head: rename(self.head),
            ..self.clone()
        }
    }
}

/// Which endpoints a gluing operation identifies.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash)]
pub enum Orientation {
    /// tail with tail, head with head
    #[default]
    Aligned,
    /// tail with head, head with tail
    Flipped,
}

#[derive(Clone, PartialEq, Eq)]
pub struct ColoredMultigraph {
    vertices: BTreeSet<VertexId>,
    // sorted by id
    edges: Vec<Edge>,
}

impl fmt::Debug for ColoredMultigraph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Graph{{V={:?}; ", self.vertices)?;
        for (i, e) in self.edges.iter().enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            let mark = match e.kind {
                EdgeKind::Regular => "",
                EdgeKind::Zero => "*",
                EdgeKind::Pointed => "!",
            };
            write!(f, "{}:{}-{}:{}{}", e.id, e.tail, e.head, e.color, mark)?;
        }
        f.write_str("}")
    }
}

impl ColoredMultigraph {
    /// Builds and validates a graph. Endpoints of edges are added to the
    /// vertex set implicitly.
    pub fn new(
        vertices: impl IntoIterator<Item = VertexId>,
        edges: impl IntoIterator<Item = Edge>,
    ) -> Result<Self, GraphError> {
        let mut vertices: BTreeSet<VertexId> = vertices.into_iter().collect();
        let mut edges: Vec<Edge> = edges.into_iter().collect();
        edges.sort_by(|a, b| a.id.cmp(&b.id));
        for w in edges.windows(2) {
            if w[0].id == w[1].id {
                return Err(GraphError::DuplicateEdgeId(w[0].id.clone()));
            }
        }
        let mut pointed = 0;
        let mut class: BTreeMap<&Color, bool> = BTreeMap::new();
        for e in &edges {
            vertices.insert(e.tail);
            vertices.insert(e.head);
            match e.kind {
                EdgeKind::Pointed => {
                    pointed += 1;
                    if !e.color.is_pointed() {
                        return Err(GraphError::PointedColor(e.id.clone()));
                    }
                }
                EdgeKind::Zero | EdgeKind::Regular if e.color.is_pointed() => {
                    return Err(GraphError::PointedColor(e.id.clone()));
                }
                EdgeKind::Regular if e.color.is_recolor() => {
                    return Err(GraphError::ColorClash(e.color.clone()));
                }
                _ => {}
            }
            if e.kind != EdgeKind::Pointed {
                let zero = e.kind == EdgeKind::Zero;
                if let Some(prev) = class.insert(&e.color, zero) {
                    if prev != zero {
                        return Err(GraphError::ColorClash(e.color.clone()));
                    }
                }
            }
        }
        if pointed > 1 {
            return Err(GraphError::TwoPointedEdges);
        }
        Ok(ColoredMultigraph { vertices, edges })
    }

    /// Internal constructor for graphs derived from valid graphs.
    pub(crate) fn from_parts(vertices: BTreeSet<VertexId>, mut edges: Vec<Edge>) -> Self {
        edges.sort_by(|a, b| a.id.cmp(&b.id));
        debug_assert!(edges.windows(2).all(|w| w[0].id != w[1].id));
        debug_assert!(edges
            .iter()
            .all(|e| vertices.contains(&e.tail) && vertices.contains(&e.head)));
        ColoredMultigraph { vertices, edges }
    }

    /// The graph with a single vertex and no edges.
    pub fn point() -> Self {
        ColoredMultigraph::from_parts([0].into_iter().collect(), Vec::new())
    }

    pub fn vertices(&self) -> &BTreeSet<VertexId> {
        &self.vertices
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn vertex_count(&self) -> usize {
        self.vertices.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn edge(&self, id: &EdgeId) -> Option<&Edge> {
        self.edges
            .binary_search_by(|e| e.id.cmp(id))
            .ok()
            .map(|i| &self.edges[i])
    }

    fn require(&self, id: &EdgeId) -> Result<&Edge, GraphError> {
        self.edge(id).ok_or_else(|| GraphError::UnknownEdge(id.clone()))
    }

    pub fn regular_edges(&self) -> impl Iterator<Item = &Edge> {
        self.edges.iter().filter(|e| e.is_regular())
    }

    pub fn pointed_edge(&self) -> Option<&Edge> {
        self.edges.iter().find(|e| e.is_pointed())
    }

    pub fn edges_of_color<'a>(&'a self, color: &'a Color) -> impl Iterator<Item = &'a Edge> + 'a {
        self.edges.iter().filter(move |e| &e.color == color)
    }

    pub fn max_vertex(&self) -> Option<VertexId> {
        self.vertices.iter().next_back().copied()
    }

    /// Merges the endpoints of a non-loop edge; the merged vertex keeps the
    /// smaller id.
    pub fn contract(&self, id: &EdgeId) -> Result<Self, GraphError> {
        let e = self.require(id)?;
        if e.is_loop() {
            return Err(GraphError::ContractLoop(id.clone()));
        }
        let keep = e.tail.min(e.head);
        let gone = e.tail.max(e.head);
        let rename = |v: VertexId| if v == gone { keep } else { v };
        let vertices = self.vertices.iter().copied().filter(|&v| v != gone).collect();
        let edges = self
            .edges
            .iter()
            .filter(|f| &f.id != id)
            .map(|f| f.renamed(rename))
            .collect();
        Ok(ColoredMultigraph::from_parts(vertices, edges))
    }

    pub fn delete(&self, id: &EdgeId) -> Result<Self, GraphError> {
        self.require(id)?;
        let edges = self.edges.iter().filter(|f| &f.id != id).cloned().collect();
        Ok(ColoredMultigraph::from_parts(self.vertices.clone(), edges))
    }

    pub fn is_loop(&self, id: &EdgeId) -> Result<bool, GraphError> {
        Ok(self.require(id)?.is_loop())
    }

    /// An edge is a bridge iff its removal increases the number of
    /// components.
    pub fn is_bridge(&self, id: &EdgeId) -> Result<bool, GraphError> {
        let e = self.require(id)?;
        if e.is_loop() {
            return Ok(false);
        }
        Ok(!self.connected_avoiding(e.tail, e.head, |f| &f.id == id))
    }

    /// Whether `a` and `b` are joined by a path using edges not rejected by
    /// `skip`.
    pub(crate) fn connected_avoiding(&self, a: VertexId, b: VertexId, skip: impl Fn(&Edge) -> bool) -> bool {
        if a == b {
            return true;
        }
        let adj = self.adjacency(|e| !skip(e));
        let mut seen = BTreeSet::from([a]);
        let mut stack = vec![a];
        while let Some(v) = stack.pop() {
            for &w in adj.get(&v).into_iter().flatten() {
                if w == b {
                    return true;
                }
                if seen.insert(w) {
                    stack.push(w);
                }
            }
        }
        false
    }

    fn adjacency(&self, keep: impl Fn(&Edge) -> bool) -> BTreeMap<VertexId, Vec<VertexId>> {
        let mut adj: BTreeMap<VertexId, Vec<VertexId>> = BTreeMap::new();
        for e in self.edges.iter().filter(|e| keep(e)) {
            adj.entry(e.tail).or_default().push(e.head);
            adj.entry(e.head).or_default().push(e.tail);
        }
        adj
    }

    /// Vertex sets of the connected components, using only edges accepted
    /// by `keep`.
    pub fn components_with(&self, keep: impl Fn(&Edge) -> bool) -> Vec<BTreeSet<VertexId>> {
        let adj = self.adjacency(keep);
        let mut seen = BTreeSet::new();
        let mut out = Vec::new();
        for &s in &self.vertices {
            if !seen.insert(s) {
                continue;
            }
            let mut comp = BTreeSet::from([s]);
            let mut stack = vec![s];
            while let Some(v) = stack.pop() {
                for &w in adj.get(&v).into_iter().flatten() {
                    if seen.insert(w) {
                        comp.insert(w);
                        stack.push(w);
                    }
                }
            }
            out.push(comp);
        }
        out
    }

    pub fn components(&self) -> Vec<BTreeSet<VertexId>> {
        self.components_with(|_| true)
    }

    pub fn component_count(&self) -> usize {
        self.components().len()
    }

    pub fn is_connected(&self) -> bool {
        self.component_count() <= 1
    }

    /// Same graph with every vertex id passed through `rename`. Vertices
    /// that collide are merged.
    pub fn relabel_vertices(&self, rename: impl Fn(VertexId) -> VertexId) -> Self {
        let vertices = self.vertices.iter().map(|&v| rename(v)).collect();
        let edges = self.edges.iter().map(|e| e.renamed(&rename)).collect();
        ColoredMultigraph::from_parts(vertices, edges)
    }

    /// Same graph with edge ids rewritten.
    pub fn relabel_edges(&self, rename: impl Fn(&EdgeId) -> EdgeId) -> Self {
        let edges = self
            .edges
            .iter()
            .map(|e| Edge {
                id: rename(&e.id),
                ..e.clone()
            })
            .collect();
        ColoredMultigraph::from_parts(self.vertices.clone(), edges)
    }

    /// Changes the color of the edges in `s` to `new_color` and turns them
    /// into zero edges.
    pub fn recolor_subset(&self, s: &BTreeSet<EdgeId>, new_color: &Color) -> Result<Self, GraphError> {
        let mut color: Option<&Color> = None;
        for id in s {
            let e = self.require(id)?;
            if !e.is_regular() {
                return Err(GraphError::NotRegular(id.clone()));
            }
            match color {
                None => color = Some(&e.color),
                Some(c) if c != &e.color => return Err(GraphError::MixedColors),
                _ => {}
            }
        }
        let edges: Vec<Edge> = self
            .edges
            .iter()
            .map(|e| {
                if s.contains(&e.id) {
                    Edge {
                        color: new_color.clone(),
                        kind: EdgeKind::Zero,
                        ..e.clone()
                    }
                } else {
                    e.clone()
                }
            })
            .collect();
        ColoredMultigraph::new(self.vertices.iter().copied(), edges)
    }

    /// Cutpoints: vertices whose removal increases the number of components.
    pub fn cutpoints(&self) -> Vec<VertexId> {
        self.vertices
            .iter()
            .copied()
            .filter(|&u| self.sides_at(u).len() >= 2)
            .collect()
    }

    fn without_vertex(&self, u: VertexId) -> Self {
        let vertices = self.vertices.iter().copied().filter(|&v| v != u).collect();
        let edges = self.edges.iter().filter(|e| !e.touches(u)).cloned().collect();
        ColoredMultigraph::from_parts(vertices, edges)
    }

    /// Components of G - u that contain a neighbour of u.
    fn sides_at(&self, u: VertexId) -> Vec<BTreeSet<VertexId>> {
        let neighbours: BTreeSet<VertexId> = self
            .edges
            .iter()
            .filter(|e| e.touches(u) && !e.is_loop())
            .map(|e| if e.tail == u { e.head } else { e.tail })
            .collect();
        self.without_vertex(u)
            .components()
            .into_iter()
            .filter(|c| c.iter().any(|v| neighbours.contains(v)))
            .collect()
    }

    /// Vertex pivot at `cutpoint`: the cutpoint is split into two copies,
    /// the first keeping the side of `G - cutpoint` that contains the
    /// smallest neighbour and the second keeping everything else (loops at
    /// the cutpoint go with the second copy). Then `reattach.0` (a vertex on
    /// the first side, or the cutpoint itself) is identified with
    /// `reattach.1` (a vertex on the second side, or the cutpoint itself).
    pub fn vertex_pivot(&self, cutpoint: VertexId, reattach: (VertexId, VertexId)) -> Result<Self, GraphError> {
        if !self.vertices.contains(&cutpoint) {
            return Err(GraphError::UnknownVertex(cutpoint));
        }
        let sides = self.sides_at(cutpoint);
        if sides.len() < 2 {
            return Err(GraphError::NotACutpoint(cutpoint));
        }
        let first = &sides[0];
        let (v1, v2) = reattach;
        let v1_ok = v1 == cutpoint || first.contains(&v1);
        let v2_ok = v2 == cutpoint || sides[1..].iter().any(|s| s.contains(&v2));
        if !v1_ok || !v2_ok {
            return Err(GraphError::BadReattachChoice);
        }
        let copy = self.max_vertex().unwrap_or(0) + 1;
        // second copy of the cutpoint takes a fresh id
        let split_edges: Vec<Edge> = self
            .edges
            .iter()
            .map(|e| {
                if !e.touches(cutpoint) {
                    return e.clone();
                }
                let other = if e.tail == cutpoint { e.head } else { e.tail };
                if !e.is_loop() && first.contains(&other) {
                    e.clone()
                } else {
                    e.renamed(|v| if v == cutpoint { copy } else { v })
                }
            })
            .collect();
        let mut vertices = self.vertices.clone();
        vertices.insert(copy);
        let split = ColoredMultigraph::from_parts(vertices, split_edges);
        let target = if v2 == cutpoint { copy } else { v2 };
        let (keep, gone) = (v1.min(target), v1.max(target));
        let merged = split.relabel_vertices(|v| if v == gone { keep } else { v });
        Ok(merged)
    }

    /// Blocks of the graph: maximal 2-connected subgraphs, bridges and loops.
    pub fn blocks(&self) -> Vec<ColoredMultigraph> {
        crate::blocks::blocks(self)
    }

    /// Canonical vertex-pivot class key.
    pub fn pivot_class_key(&self) -> crate::canon::PivotClassKey {
        crate::canon::PivotClassKey::of(self)
    }
}

/// Disjoint union of all inputs, then repeated splicing of components until
/// the result is connected. Returns the single-vertex graph when there is no
/// vertex at all. Edge ids are prefixed with the input index.
pub fn splice_all(gs: &[ColoredMultigraph]) -> ColoredMultigraph {
    let mut vertices = BTreeSet::new();
    let mut edges = Vec::new();
    let mut offset: VertexId = 0;
    for (i, g) in gs.iter().enumerate() {
        let base = offset;
        let map: BTreeMap<VertexId, VertexId> = g
            .vertices
            .iter()
            .enumerate()
            .map(|(k, &v)| (v, base + k as VertexId))
            .collect();
        offset += g.vertex_count() as VertexId;
        vertices.extend(map.values().copied());
        for e in &g.edges {
            edges.push(Edge {
                id: EdgeId::new(format!("{i}:{}", e.id)),
                tail: map[&e.tail],
                head: map[&e.head],
                ..e.clone()
            });
        }
    }
    if vertices.is_empty() {
        return ColoredMultigraph::point();
    }
    let joined = ColoredMultigraph::from_parts(vertices, edges);
    let comps = joined.components();
    // every component is spliced onto the smallest vertex of the first one
    let anchor = *comps[0].iter().next().expect("non-empty component");
    let heads: BTreeSet<VertexId> = comps[1..]
        .iter()
        .map(|c| *c.iter().next().expect("non-empty component"))
        .collect();
    joined.relabel_vertices(|v| if heads.contains(&v) { anchor } else { v })
}

/// 2-sum of `base` and `patch` along `base_edge` and `patch_edge` with the
/// default aligned orientation.
pub fn two_sum(
    base: &ColoredMultigraph,
    base_edge: &EdgeId,
    patch: &ColoredMultigraph,
    patch_edge: &EdgeId,
) -> Result<ColoredMultigraph, GraphError> {
    two_sum_oriented(base, base_edge, patch, patch_edge, Orientation::Aligned)
}

/// 2-sum: the endpoints of `base_edge` are identified with the endpoints of
/// `patch_edge` and both edges are removed. Patch vertices are renamed above
/// the largest base vertex; patch edge ids are kept unless they collide with
/// a base id, in which case they are prefixed with `+`.
pub fn two_sum_oriented(
    base: &ColoredMultigraph,
    base_edge: &EdgeId,
    patch: &ColoredMultigraph,
    patch_edge: &EdgeId,
    orientation: Orientation,
) -> Result<ColoredMultigraph, GraphError> {
    let b = base.require(base_edge)?;
    let p = patch.require(patch_edge)?;
    if b.is_loop() {
        return Err(GraphError::LoopTwoSum(base_edge.clone()));
    }
    if p.is_loop() {
        return Err(GraphError::LoopTwoSum(patch_edge.clone()));
    }
    let (to_tail, to_head) = match orientation {
        Orientation::Aligned => (b.tail, b.head),
        Orientation::Flipped => (b.head, b.tail),
    };
    let offset = base.max_vertex().unwrap_or(0) + 1;
    let (pt, ph) = (p.tail, p.head);
    let rename = move |v: VertexId| {
        if v == pt {
            to_tail
        } else if v == ph {
            to_head
        } else {
            v + offset
        }
    };
    Ok(glue(base, base_edge, patch, patch_edge, rename))
}

/// Gluing for a loop base edge: the loop is removed, the patch edge is
/// contracted and its merged endpoint identified with the loop's vertex.
pub fn loop_glue(
    base: &ColoredMultigraph,
    base_edge: &EdgeId,
    patch: &ColoredMultigraph,
    patch_edge: &EdgeId,
) -> Result<ColoredMultigraph, GraphError> {
    let b = base.require(base_edge)?;
    let p = patch.require(patch_edge)?;
    let at = b.tail;
    let offset = base.max_vertex().unwrap_or(0) + 1;
    let (pt, ph) = (p.tail, p.head);
    let rename = move |v: VertexId| if v == pt || v == ph { at } else { v + offset };
    Ok(glue(base, base_edge, patch, patch_edge, rename))
}

fn glue(
    base: &ColoredMultigraph,
    base_edge: &EdgeId,
    patch: &ColoredMultigraph,
    patch_edge: &EdgeId,
    rename: impl Fn(VertexId) -> VertexId,
) -> ColoredMultigraph {
    let mut vertices = base.vertices.clone();
    vertices.extend(patch.vertices.iter().map(|&v| rename(v)));
    let mut edges: Vec<Edge> = base.edges.iter().filter(|e| &e.id != base_edge).cloned().collect();
    let taken: BTreeSet<EdgeId> = edges.iter().map(|e| e.id.clone()).collect();
    for e in patch.edges.iter().filter(|e| &e.id != patch_edge) {
        let mut id = e.id.clone();
        while taken.contains(&id) {
            id = EdgeId::new(format!("+{id}"));
        }
        edges.push(Edge {
            id,
            ..e.renamed(&rename)
        });
    }
    ColoredMultigraph::from_parts(vertices, edges)
}
