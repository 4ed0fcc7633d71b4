//! Contracting sets, activities and the universal relative Tutte polynomial.
//!
//! Regular edges are processed in decreasing label order. An edge that is a
//! bridge at its turn must be contracted and is internally active; a loop
//! must be deleted and is externally active; any other edge may go either
//! way and is inactive. Zero edges (and a pointed edge) are never touched
//! and survive into the terminal graph, which contributes `z_[key]`.

use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::sync::Arc;

use num_bigint::BigInt;
use rand::seq::SliceRandom;
use rand::Rng;

use crate::canon::PivotClassKey;
use crate::error::TutteError;
use crate::graph::{ColoredMultigraph, EdgeId, VertexId};
use crate::poly::{Monomial, RelPolynomial, VarKind, VariableId, ZKey};

/// Edge labels: zero exactly on non-regular edges, injective and positive on
/// regular ones.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ProperLabeling {
    labels: BTreeMap<EdgeId, u64>,
}

impl ProperLabeling {
    /// Regular edges in ascending id order get 1, 2, ...; everything else 0.
    pub fn canonical(g: &ColoredMultigraph) -> Self {
        let mut next = 0;
        let labels = g
            .edges()
            .iter()
            .map(|e| {
                let l = if e.is_regular() {
                    next += 1;
                    next
                } else {
                    0
                };
                (e.id.clone(), l)
            })
            .collect();
        ProperLabeling { labels }
    }

    /// Regular edges get a uniformly random permutation of 1..=k.
    pub fn random(g: &ColoredMultigraph, rng: &mut impl Rng) -> Self {
        let mut values: Vec<u64> = (1..=g.regular_edges().count() as u64).collect();
        values.shuffle(rng);
        let mut it = values.into_iter();
        let labels = g
            .edges()
            .iter()
            .map(|e| {
                let l = if e.is_regular() {
                    it.next().expect("one per edge")
                } else {
                    0
                };
                (e.id.clone(), l)
            })
            .collect();
        ProperLabeling { labels }
    }

    /// Unchecked; see [`ProperLabeling::validate`].
    pub fn from_labels(labels: impl IntoIterator<Item = (EdgeId, u64)>) -> Self {
        ProperLabeling {
            labels: labels.into_iter().collect(),
        }
    }

    pub fn label(&self, id: &EdgeId) -> Option<u64> {
        self.labels.get(id).copied()
    }

    pub fn validate(&self, g: &ColoredMultigraph) -> Result<(), TutteError> {
        let bad = |msg: String| Err(TutteError::ImproperLabeling(msg));
        let mut seen = BTreeSet::new();
        for e in g.edges() {
            let Some(&l) = self.labels.get(&e.id) else {
                return bad(format!("edge {} has no label", e.id));
            };
            if e.is_regular() {
                if l == 0 {
                    return bad(format!("regular edge {} labeled 0", e.id));
                }
                if !seen.insert(l) {
                    return bad(format!("label {l} used twice"));
                }
            } else if l != 0 {
                return bad(format!("zero edge {} labeled {l}", e.id));
            }
        }
        if let Some(id) = self.labels.keys().find(|id| g.edge(id).is_none()) {
            return bad(format!("label for unknown edge {id}"));
        }
        Ok(())
    }

    /// Regular edges, largest label first.
    pub fn decreasing(&self, g: &ColoredMultigraph) -> Vec<EdgeId> {
        let mut ids: Vec<(u64, EdgeId)> = g.regular_edges().map(|e| (self.labels[&e.id], e.id.clone())).collect();
        ids.sort_by(|a, b| b.cmp(a));
        ids.into_iter().map(|(_, id)| id).collect()
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ContractingSet {
    pub c: BTreeSet<EdgeId>,
    pub d: BTreeSet<EdgeId>,
}

impl ContractingSet {
    /// `c` together with the remaining regular edges of `g` as `d`.
    pub fn from_c(g: &ColoredMultigraph, c: BTreeSet<EdgeId>) -> Self {
        let d = g
            .regular_edges()
            .filter(|e| !c.contains(&e.id))
            .map(|e| e.id.clone())
            .collect();
        ContractingSet { c, d }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Activity {
    InternallyActive,
    InternallyInactive,
    ExternallyActive,
    ExternallyInactive,
}

impl Activity {
    pub fn kind(self) -> VarKind {
        match self {
            Activity::InternallyActive => VarKind::BigX,
            Activity::InternallyInactive => VarKind::SmallX,
            Activity::ExternallyActive => VarKind::BigY,
            Activity::ExternallyInactive => VarKind::SmallY,
        }
    }
}

fn count_components(g: &ColoredMultigraph, skip: impl Fn(&EdgeId) -> bool) -> usize {
    g.components_with(|e| !skip(&e.id)).len()
}

/// Whether `c` is a contracting set of `g` when the edges in `zero` are the
/// zero edges: `c` avoids `zero`, has no cycle, and the complement
/// `E - (c ∪ zero)` contains no cocycle.
pub fn is_contracting_set(g: &ColoredMultigraph, c: &BTreeSet<EdgeId>, zero: &BTreeSet<EdgeId>) -> bool {
    if c.iter().any(|id| zero.contains(id) || g.edge(id).is_none()) {
        return false;
    }
    let acyclic = g.components_with(|e| c.contains(&e.id)).len() + c.len() == g.vertex_count();
    if !acyclic {
        return false;
    }
    let base = g.component_count();
    count_components(g, |id| !c.contains(id) && !zero.contains(id)) == base
}

fn non_regular(g: &ColoredMultigraph) -> BTreeSet<EdgeId> {
    g.edges()
        .iter()
        .filter(|e| !e.is_regular())
        .map(|e| e.id.clone())
        .collect()
}

fn check_partition(g: &ColoredMultigraph, cs: &ContractingSet) -> Result<(), TutteError> {
    let regular: BTreeSet<&EdgeId> = g.regular_edges().map(|e| &e.id).collect();
    let covered: BTreeSet<&EdgeId> = cs.c.iter().chain(cs.d.iter()).collect();
    if cs.c.intersection(&cs.d).next().is_some() || covered != regular {
        return Err(TutteError::InvalidContractingSet(
            "C and D must partition the regular edges".into(),
        ));
    }
    Ok(())
}

/// Activities by processing edges in decreasing label order: an edge of C
/// is internally active iff it is a bridge at its turn, an edge of D is
/// externally active iff it is a loop at its turn.
pub fn activities(
    g: &ColoredMultigraph,
    lab: &ProperLabeling,
    cs: &ContractingSet,
) -> Result<BTreeMap<EdgeId, Activity>, TutteError> {
    lab.validate(g)?;
    check_partition(g, cs)?;
    let mut cur = g.clone();
    let mut out = BTreeMap::new();
    for id in lab.decreasing(g) {
        if cs.c.contains(&id) {
            if cur.is_loop(&id)? {
                return Err(TutteError::InvalidContractingSet(format!("{id} closes a cycle in C")));
            }
            let a = if cur.is_bridge(&id)? {
                Activity::InternallyActive
            } else {
                Activity::InternallyInactive
            };
            out.insert(id.clone(), a);
            cur = cur.contract(&id)?;
        } else {
            if cur.is_bridge(&id)? {
                return Err(TutteError::InvalidContractingSet(format!(
                    "{id} completes a cocycle in D"
                )));
            }
            let a = if cur.is_loop(&id)? {
                Activity::ExternallyActive
            } else {
                Activity::ExternallyInactive
            };
            out.insert(id.clone(), a);
            cur = cur.delete(&id)?;
        }
    }
    Ok(out)
}

fn is_bond(g: &ColoredMultigraph, s: &BTreeSet<EdgeId>, base: usize) -> bool {
    if count_components(g, |id| s.contains(id)) <= base {
        return false;
    }
    s.iter()
        .all(|keep| count_components(g, |id| id != keep && s.contains(id)) == base)
}

fn is_cycle(g: &ColoredMultigraph, s: &BTreeSet<EdgeId>) -> bool {
    let edges: Vec<_> = s.iter().map(|id| g.edge(id).expect("edge exists")).collect();
    if edges.len() == 1 {
        return edges[0].is_loop();
    }
    if edges.iter().any(|e| e.is_loop()) {
        return false;
    }
    let mut degree: BTreeMap<VertexId, usize> = BTreeMap::new();
    for e in &edges {
        *degree.entry(e.tail).or_default() += 1;
        *degree.entry(e.head).or_default() += 1;
    }
    if degree.values().any(|&d| d != 2) {
        return false;
    }
    let sub = ColoredMultigraph::from_parts(degree.keys().copied().collect(), edges.into_iter().cloned().collect());
    sub.is_connected()
}

// every subset of `pool` that contains `must`
fn subsets_with<'a>(must: &EdgeId, pool: &'a [EdgeId]) -> impl Iterator<Item = BTreeSet<EdgeId>> + 'a {
    let must = must.clone();
    (0u64..1 << pool.len()).map(move |mask| {
        let mut s: BTreeSet<EdgeId> = pool
            .iter()
            .enumerate()
            .filter(|(i, _)| mask >> i & 1 == 1)
            .map(|(_, id)| id.clone())
            .collect();
        s.insert(must.clone());
        s
    })
}

/// Activities from explicit cycles and cocycles: an edge `e` of C is
/// internally active iff `D ∪ {e}` contains a cocycle whose smallest edge is
/// `e`; an edge `f` of D is externally active iff `C ∪ {f}` contains a cycle
/// whose smallest edge is `f`.
pub fn activities_via_cycles(
    g: &ColoredMultigraph,
    lab: &ProperLabeling,
    cs: &ContractingSet,
) -> Result<BTreeMap<EdgeId, Activity>, TutteError> {
    lab.validate(g)?;
    check_partition(g, cs)?;
    if !is_contracting_set(g, &cs.c, &non_regular(g)) {
        return Err(TutteError::InvalidContractingSet("C has a cycle or D a cocycle".into()));
    }
    let base = g.component_count();
    let larger = |set: &BTreeSet<EdgeId>, l: u64| -> Vec<EdgeId> {
        set.iter().filter(|id| lab.labels[*id] > l).cloned().collect()
    };
    let mut out = BTreeMap::new();
    for id in &cs.c {
        let pool = larger(&cs.d, lab.labels[id]);
        let active = subsets_with(id, &pool).any(|s| is_bond(g, &s, base));
        let a = if active {
            Activity::InternallyActive
        } else {
            Activity::InternallyInactive
        };
        out.insert(id.clone(), a);
    }
    for id in &cs.d {
        let pool = larger(&cs.c, lab.labels[id]);
        let active = subsets_with(id, &pool).any(|s| is_cycle(g, &s));
        let a = if active {
            Activity::ExternallyActive
        } else {
            Activity::ExternallyInactive
        };
        out.insert(id.clone(), a);
    }
    Ok(out)
}

/// The graph left after contracting C and deleting D in decreasing label
/// order; only non-regular edges remain.
pub fn terminal_graph(
    g: &ColoredMultigraph,
    lab: &ProperLabeling,
    cs: &ContractingSet,
) -> Result<ColoredMultigraph, TutteError> {
    lab.validate(g)?;
    check_partition(g, cs)?;
    let mut cur = g.clone();
    for id in lab.decreasing(g) {
        if cs.c.contains(&id) {
            if cur.is_loop(&id)? {
                return Err(TutteError::InvalidContractingSet(format!("{id} closes a cycle in C")));
            }
            cur = cur.contract(&id)?;
        } else {
            if cur.is_bridge(&id)? {
                return Err(TutteError::InvalidContractingSet(format!(
                    "{id} completes a cocycle in D"
                )));
            }
            cur = cur.delete(&id)?;
        }
    }
    Ok(cur)
}

/// Mutable working copy of a graph supporting contraction and deletion
/// with undo. Vertices are dense indices in ascending id order, so keeping
/// the smaller index on contraction matches [`ColoredMultigraph::contract`].
#[derive(Clone)]
struct Minor {
    ids: Vec<VertexId>,
    ends: Vec<(usize, usize)>,
    rep: Vec<usize>,
    alive: Vec<bool>,
    // scratch for bridge tests
    dsu: Vec<usize>,
}

impl Minor {
    fn new(g: &ColoredMultigraph) -> Self {
        let ids: Vec<VertexId> = g.vertices().iter().copied().collect();
        let index: HashMap<VertexId, usize> = ids.iter().enumerate().map(|(i, &v)| (v, i)).collect();
        let ends = g.edges().iter().map(|e| (index[&e.tail], index[&e.head])).collect();
        Minor {
            rep: (0..ids.len()).collect(),
            dsu: vec![0; ids.len()],
            alive: vec![true; g.edge_count()],
            ids,
            ends,
        }
    }

    fn cur(&self, ei: usize) -> (usize, usize) {
        let (a, b) = self.ends[ei];
        (self.rep[a], self.rep[b])
    }

    fn is_loop(&self, ei: usize) -> bool {
        let (a, b) = self.cur(ei);
        a == b
    }

    fn find(dsu: &mut [usize], mut v: usize) -> usize {
        while dsu[v] != v {
            dsu[v] = dsu[dsu[v]];
            v = dsu[v];
        }
        v
    }

    fn is_bridge(&mut self, ei: usize) -> bool {
        let (a, b) = self.cur(ei);
        if a == b {
            return false;
        }
        for (i, p) in self.dsu.iter_mut().enumerate() {
            *p = i;
        }
        for fi in 0..self.ends.len() {
            if fi == ei || !self.alive[fi] {
                continue;
            }
            let (u, v) = self.cur(fi);
            let (ru, rv) = (Self::find(&mut self.dsu, u), Self::find(&mut self.dsu, v));
            if ru != rv {
                self.dsu[ru] = rv;
            }
        }
        Self::find(&mut self.dsu, a) != Self::find(&mut self.dsu, b)
    }

    /// Returns the vertices whose representative changed and the old one.
    fn contract(&mut self, ei: usize) -> (Vec<usize>, usize) {
        let (a, b) = self.cur(ei);
        let (keep, gone) = (a.min(b), a.max(b));
        let mut changed = Vec::new();
        for v in 0..self.rep.len() {
            if self.rep[v] == gone {
                self.rep[v] = keep;
                changed.push(v);
            }
        }
        self.alive[ei] = false;
        (changed, gone)
    }

    fn uncontract(&mut self, ei: usize, changed: &[usize], gone: usize) {
        for &v in changed {
            self.rep[v] = gone;
        }
        self.alive[ei] = true;
    }

    fn signature(&self) -> Vec<(u32, u32)> {
        (0..self.ends.len())
            .filter(|&i| self.alive[i])
            .map(|i| {
                let (a, b) = self.cur(i);
                (a as u32, b as u32)
            })
            .collect()
    }

    fn terminal(&self, g: &ColoredMultigraph) -> ColoredMultigraph {
        let vertices = self.rep.iter().map(|&r| self.ids[r]).collect();
        let edges = g
            .edges()
            .iter()
            .enumerate()
            .filter(|&(i, _)| self.alive[i])
            .map(|(i, e)| {
                let (a, b) = self.cur(i);
                crate::graph::Edge {
                    tail: self.ids[a],
                    head: self.ids[b],
                    ..e.clone()
                }
            })
            .collect();
        ColoredMultigraph::from_parts(vertices, edges)
    }
}

fn edge_order(g: &ColoredMultigraph, lab: &ProperLabeling) -> Vec<usize> {
    let index: HashMap<&EdgeId, usize> = g.edges().iter().enumerate().map(|(i, e)| (&e.id, i)).collect();
    lab.decreasing(g).iter().map(|id| index[id]).collect()
}

struct Frame {
    in_c: bool,
    // D is still to be tried
    alt: bool,
    changed: Vec<usize>,
    gone: usize,
}

/// Stream of all contracting sets, produced by a depth-first walk over the
/// regular edges in decreasing label order on a single working copy with
/// undo. C is tried before D.
pub struct ContractingSets {
    minor: Minor,
    ids: Vec<EdgeId>,
    order: Vec<usize>,
    frames: Vec<Frame>,
    started: bool,
    done: bool,
}

impl ContractingSets {
    fn descend(&mut self) {
        while self.frames.len() < self.order.len() {
            let ei = self.order[self.frames.len()];
            if self.minor.is_loop(ei) {
                self.minor.alive[ei] = false;
                self.frames.push(Frame {
                    in_c: false,
                    alt: false,
                    changed: Vec::new(),
                    gone: 0,
                });
            } else {
                let bridge = self.minor.is_bridge(ei);
                let (changed, gone) = self.minor.contract(ei);
                self.frames.push(Frame {
                    in_c: true,
                    alt: !bridge,
                    changed,
                    gone,
                });
            }
        }
    }

    fn current(&self) -> ContractingSet {
        let mut cs = ContractingSet::default();
        for (f, &ei) in self.frames.iter().zip(&self.order) {
            let id = self.ids[ei].clone();
            if f.in_c {
                cs.c.insert(id);
            } else {
                cs.d.insert(id);
            }
        }
        cs
    }
}

impl Iterator for ContractingSets {
    type Item = ContractingSet;

    fn next(&mut self) -> Option<ContractingSet> {
        if self.done {
            return None;
        }
        if !self.started {
            self.started = true;
            self.descend();
            return Some(self.current());
        }
        loop {
            let Some(frame) = self.frames.pop() else {
                self.done = true;
                return None;
            };
            let ei = self.order[self.frames.len()];
            if frame.in_c {
                self.minor.uncontract(ei, &frame.changed, frame.gone);
            } else {
                self.minor.alive[ei] = true;
            }
            if frame.in_c && frame.alt {
                self.minor.alive[ei] = false;
                self.frames.push(Frame {
                    in_c: false,
                    alt: false,
                    changed: Vec::new(),
                    gone: 0,
                });
                self.descend();
                return Some(self.current());
            }
        }
    }
}

pub fn enumerate_contracting_sets(g: &ColoredMultigraph, lab: &ProperLabeling) -> Result<ContractingSets, TutteError> {
    lab.validate(g)?;
    Ok(ContractingSets {
        minor: Minor::new(g),
        ids: g.edges().iter().map(|e| e.id.clone()).collect(),
        order: edge_order(g, lab),
        frames: Vec::new(),
        started: false,
        done: false,
    })
}

struct StateSum<'g> {
    g: &'g ColoredMultigraph,
    minor: Minor,
    order: Vec<usize>,
    vars: Vec<[VariableId; 4]>,
    stack: Vec<VariableId>,
    keys: HashMap<Vec<(u32, u32)>, ZKey>,
    acc: HashMap<Monomial, u64>,
}

impl StateSum<'_> {
    fn walk(&mut self, depth: usize) {
        if depth == self.order.len() {
            let sig = self.minor.signature();
            let key = match self.keys.get(&sig) {
                Some(k) => k.clone(),
                None => {
                    let k = Arc::new(PivotClassKey::of(&self.minor.terminal(self.g)));
                    self.keys.insert(sig, k.clone());
                    k
                }
            };
            let m = Monomial::new(self.stack.iter().map(|v| (v.clone(), 1)), [key]);
            *self.acc.entry(m).or_default() += 1;
            return;
        }
        let ei = self.order[depth];
        // weights: [X, x, Y, y]
        if self.minor.is_loop(ei) {
            self.minor.alive[ei] = false;
            self.stack.push(self.vars[depth][2].clone());
            self.walk(depth + 1);
            self.stack.pop();
            self.minor.alive[ei] = true;
            return;
        }
        let bridge = self.minor.is_bridge(ei);
        let (changed, gone) = self.minor.contract(ei);
        let w = if bridge { 0 } else { 1 };
        self.stack.push(self.vars[depth][w].clone());
        self.walk(depth + 1);
        self.stack.pop();
        self.minor.uncontract(ei, &changed, gone);
        if !bridge {
            self.minor.alive[ei] = false;
            self.stack.push(self.vars[depth][3].clone());
            self.walk(depth + 1);
            self.stack.pop();
            self.minor.alive[ei] = true;
        }
    }
}

/// Sum over all contracting sets of the product of edge weights times the
/// z-symbol of the terminal graph's pivot class.
pub fn universal_tutte_statesum(g: &ColoredMultigraph, lab: &ProperLabeling) -> Result<RelPolynomial, TutteError> {
    lab.validate(g)?;
    let order = edge_order(g, lab);
    let vars = order
        .iter()
        .map(|&i| {
            let c = &g.edges()[i].color;
            [VarKind::BigX, VarKind::SmallX, VarKind::BigY, VarKind::SmallY].map(|k| VariableId::new(k, c.clone()))
        })
        .collect();
    let mut st = StateSum {
        g,
        minor: Minor::new(g),
        order,
        vars,
        stack: Vec::new(),
        keys: HashMap::new(),
        acc: HashMap::new(),
    };
    st.walk(0);
    Ok(RelPolynomial::from_terms(
        st.acc.into_iter().map(|(m, c)| (m, BigInt::from(c))),
    ))
}

/// Deletion-contraction on the regular edge with the largest id (the
/// largest canonical label).
pub fn tutte_recursive(g: &ColoredMultigraph) -> Result<RelPolynomial, TutteError> {
    let Some(e) = g.regular_edges().last() else {
        return Ok(RelPolynomial::z(g.pivot_class_key()));
    };
    let var = |k| RelPolynomial::var(k, e.color.clone());
    let id = &e.id;
    Ok(if g.is_loop(id)? {
        &var(VarKind::BigY) * &tutte_recursive(&g.delete(id)?)?
    } else if g.is_bridge(id)? {
        &var(VarKind::BigX) * &tutte_recursive(&g.contract(id)?)?
    } else {
        &(&var(VarKind::SmallY) * &tutte_recursive(&g.delete(id)?)?)
            + &(&var(VarKind::SmallX) * &tutte_recursive(&g.contract(id)?)?)
    })
}

/// State sum under the canonical labeling.
pub fn universal_tutte(g: &ColoredMultigraph) -> RelPolynomial {
    universal_tutte_statesum(g, &ProperLabeling::canonical(g)).expect("canonical labeling is proper")
}
