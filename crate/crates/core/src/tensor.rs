//! λ-colored tensor products and the substitution formula for their
//! universal polynomial.
//!
//! Every λ-colored edge `f` of `g1` is replaced by a copy of `g2 - e` glued
//! at the endpoints of `e` (tail to tail, head to head). Copy edges are
//! named `f/<id>`.

use std::collections::{BTreeMap, BTreeSet};
use std::sync::Arc;
use std::time::{Duration, Instant};

use rayon::prelude::*;

use crate::canon::PivotClassKey;
use crate::error::{PolyError, TensorError, TutteError};
use crate::graph::{loop_glue, two_sum_oriented, Color, ColoredMultigraph, Edge, EdgeId, Orientation, VertexId};
use crate::pointed::{classify_pair, pointed_polys, t0_terms, PairType, PointedGraph, PointedPolys};
use crate::poly::{equal_mod_ideal, RelPolynomial, VarKind};
use crate::tutte::{
    enumerate_contracting_sets, is_contracting_set, universal_tutte, universal_tutte_statesum, ContractingSet,
    ProperLabeling,
};

#[derive(Clone, Debug)]
pub struct TensorInstance {
    g1: ColoredMultigraph,
    g2: PointedGraph,
    lambda: Color,
}

impl TensorInstance {
    pub fn new(g1: ColoredMultigraph, g2: PointedGraph, lambda: Color) -> Result<Self, TensorError> {
        let bad = |m: String| Err(TensorError::InstanceInvalid(m));
        if lambda.is_marker() {
            return bad(format!("{lambda} is a reserved color"));
        }
        if !g1.is_connected() {
            return bad("first graph is not connected".into());
        }
        if g1.pointed_edge().is_some() {
            return bad("first graph has a pointed edge".into());
        }
        for (name, g) in [("first", &g1), ("second", g2.graph())] {
            if g.edges().iter().any(|e| e.color.is_recolor()) {
                return bad(format!("{name} graph uses the recolor token"));
            }
        }
        if let Some(e) = g1.edges_of_color(&lambda).find(|e| !e.is_regular()) {
            return bad(format!("λ edge {} is not regular", e.id));
        }
        if let Some(e) = g2.graph().edges_of_color(&lambda).next() {
            return bad(format!("second graph has λ-colored edge {}", e.id));
        }
        let ti = TensorInstance { g1, g2, lambda };
        ti.build().map_err(|e| TensorError::InstanceInvalid(e.to_string()))?;
        Ok(ti)
    }

    pub fn g1(&self) -> &ColoredMultigraph {
        &self.g1
    }

    pub fn g2(&self) -> &PointedGraph {
        &self.g2
    }

    pub fn lambda(&self) -> &Color {
        &self.lambda
    }

    /// λ-colored edges of `g1` in id order.
    pub fn lambda_edges(&self) -> Vec<EdgeId> {
        self.g1.edges_of_color(&self.lambda).map(|e| e.id.clone()).collect()
    }

    fn build(&self) -> Result<ColoredMultigraph, crate::error::GraphError> {
        let e = self.g2.edge();
        let mut next: VertexId = self.g1.max_vertex().map_or(0, |v| v + 1);
        let mut vertices: Vec<VertexId> = self.g1.vertices().iter().copied().collect();
        let mut edges: Vec<Edge> = Vec::new();
        for f in self.g1.edges() {
            if f.color != self.lambda {
                edges.push(f.clone());
                continue;
            }
            let mut map: BTreeMap<VertexId, VertexId> = BTreeMap::new();
            map.insert(e.tail, f.tail);
            map.insert(e.head, f.head);
            for &v in self.g2.graph().vertices() {
                map.entry(v).or_insert_with(|| {
                    next += 1;
                    next - 1
                });
            }
            vertices.extend(map.values().copied());
            for x in self.g2.graph().edges().iter().filter(|x| x.id != e.id) {
                edges.push(Edge {
                    id: x.id.namespaced(&f.id),
                    tail: map[&x.tail],
                    head: map[&x.head],
                    ..x.clone()
                });
            }
        }
        ColoredMultigraph::new(vertices, edges)
    }
}

pub fn tensor_product(ti: &TensorInstance) -> ColoredMultigraph {
    ti.build().expect("validated on construction")
}

/// Labeling of the product: with `M = |E(g2)|`, the k-th regular edge of
/// `g1` in id order gets `k·M` if it survives, and if it is a λ-edge its
/// copy's regular edges get `(k-1)·M + 1, ...` in id order.
pub fn product_labeling(ti: &TensorInstance) -> ProperLabeling {
    let m = ti.g2.graph().edge_count() as u64;
    let copy_regular: Vec<&EdgeId> = ti.g2.graph().regular_edges().map(|e| &e.id).collect();
    let mut labels: Vec<(EdgeId, u64)> = Vec::new();
    for (k, f) in ti.g1.regular_edges().enumerate() {
        let k = k as u64 + 1;
        if f.color == ti.lambda {
            for (j, x) in copy_regular.iter().enumerate() {
                labels.push((x.namespaced(&f.id), (k - 1) * m + j as u64 + 1));
            }
        } else {
            labels.push((f.id.clone(), k * m));
        }
    }
    let product = tensor_product(ti);
    labels.extend(
        product
            .edges()
            .iter()
            .filter(|e| !e.is_regular())
            .map(|e| (e.id.clone(), 0)),
    );
    ProperLabeling::from_labels(labels)
}

/// Partition of the regular edges of `g1` induced by a contracting set of
/// the product; `s` holds the λ-edges whose copy has type zero.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct InducedPartition {
    pub c1: BTreeSet<EdgeId>,
    pub d1: BTreeSet<EdgeId>,
    pub s: BTreeSet<EdgeId>,
}

/// Restriction of a product contracting set to the copy of `g2` at `f`,
/// expressed with `g2` edge ids.
pub fn copy_restriction(ti: &TensorInstance, cs: &ContractingSet, f: &EdgeId) -> ContractingSet {
    let strip = |set: &BTreeSet<EdgeId>| -> BTreeSet<EdgeId> {
        ti.g2
            .graph()
            .regular_edges()
            .filter(|x| set.contains(&x.id.namespaced(f)))
            .map(|x| x.id.clone())
            .collect()
    };
    ContractingSet {
        c: strip(&cs.c),
        d: strip(&cs.d),
    }
}

fn zero_ids(g: &ColoredMultigraph) -> BTreeSet<EdgeId> {
    g.edges()
        .iter()
        .filter(|e| !e.is_regular())
        .map(|e| e.id.clone())
        .collect()
}

pub fn induced_partition(ti: &TensorInstance, cs: &ContractingSet) -> Result<InducedPartition, TensorError> {
    let product = tensor_product(ti);
    let regular: BTreeSet<&EdgeId> = product.regular_edges().map(|e| &e.id).collect();
    let covered: BTreeSet<&EdgeId> = cs.c.iter().chain(cs.d.iter()).collect();
    if covered != regular || !is_contracting_set(&product, &cs.c, &zero_ids(&product)) {
        return Err(TutteError::InvalidContractingSet("not a contracting set of the product".into()).into());
    }
    let mut part = InducedPartition::default();
    for f in ti.g1.regular_edges() {
        let id = f.id.clone();
        if f.color != ti.lambda {
            if cs.c.contains(&id) {
                part.c1.insert(id);
            } else {
                part.d1.insert(id);
            }
            continue;
        }
        match classify_pair(&ti.g2, &copy_restriction(ti, cs, &id))? {
            PairType::TypeC => part.c1.insert(id),
            PairType::TypeD => part.d1.insert(id),
            PairType::TypeZero => part.s.insert(id),
        };
    }
    let mut zero = zero_ids(&ti.g1);
    zero.extend(part.s.iter().cloned());
    if !is_contracting_set(&ti.g1, &part.c1, &zero) {
        return Err(TensorError::InvalidPartition(
            "induced C1 is not a contracting set".into(),
        ));
    }
    Ok(part)
}

/// Inverse of [`induced_partition`]: glues a partition of `g1` and one
/// contracting set of `g2` per λ-edge of the matching type.
pub fn compose_contracting_set(
    ti: &TensorInstance,
    part: &InducedPartition,
    per_copy: &BTreeMap<EdgeId, ContractingSet>,
) -> Result<ContractingSet, TensorError> {
    let bad = |m: &str| Err(TensorError::InvalidPartition(m.into()));
    let lambda: BTreeSet<EdgeId> = ti.lambda_edges().into_iter().collect();
    let regular: BTreeSet<EdgeId> = ti.g1.regular_edges().map(|e| e.id.clone()).collect();
    let all: BTreeSet<EdgeId> = part.c1.iter().chain(&part.d1).chain(&part.s).cloned().collect();
    let sizes = part.c1.len() + part.d1.len() + part.s.len();
    if all != regular || sizes != regular.len() {
        return bad("parts must partition the regular edges of g1");
    }
    if !part.s.is_subset(&lambda) {
        return bad("S may only hold λ-edges");
    }
    let mut zero = zero_ids(&ti.g1);
    zero.extend(part.s.iter().cloned());
    if !is_contracting_set(&ti.g1, &part.c1, &zero) {
        return bad("C1 is not a contracting set of g1");
    }
    let mut cs = ContractingSet::default();
    for id in &regular {
        if !lambda.contains(id) {
            if part.c1.contains(id) {
                cs.c.insert(id.clone());
            } else {
                cs.d.insert(id.clone());
            }
            continue;
        }
        let choice = per_copy
            .get(id)
            .ok_or_else(|| TensorError::InvalidPartition(format!("no choice for copy {id}")))?;
        let want = if part.c1.contains(id) {
            PairType::TypeC
        } else if part.d1.contains(id) {
            PairType::TypeD
        } else {
            PairType::TypeZero
        };
        let got = classify_pair(&ti.g2, choice).map_err(|_| TensorError::TypeMismatch(id.clone()))?;
        if got != want {
            return Err(TensorError::TypeMismatch(id.clone()));
        }
        cs.c.extend(choice.c.iter().map(|x| x.namespaced(id)));
        cs.d.extend(choice.d.iter().map(|x| x.namespaced(id)));
    }
    let product = tensor_product(ti);
    if !is_contracting_set(&product, &cs.c, &zero_ids(&product)) {
        return bad("composed set is not a contracting set of the product");
    }
    Ok(cs)
}

/// Contracting sets of `g2` (pointed edge as a zero edge) grouped by type.
pub fn g2_sets_by_type(g2: &PointedGraph) -> BTreeMap<PairTypeKey, Vec<ContractingSet>> {
    let g = g2.graph();
    let mut out: BTreeMap<PairTypeKey, Vec<ContractingSet>> = BTreeMap::new();
    for cs in enumerate_contracting_sets(g, &ProperLabeling::canonical(g)).expect("canonical") {
        let ty = classify_pair(g2, &cs).expect("enumerated sets are valid");
        out.entry(PairTypeKey(ty)).or_default().push(cs);
    }
    out
}

/// `PairType` with an ordering, for use as a map key.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct PairTypeKey(pub PairType);

impl PairTypeKey {
    fn rank(self) -> u8 {
        match self.0 {
            PairType::TypeC => 0,
            PairType::TypeD => 1,
            PairType::TypeZero => 2,
        }
    }
}

impl PartialOrd for PairTypeKey {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for PairTypeKey {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.rank().cmp(&other.rank())
    }
}

/// Every subset `S` of the λ-edges, in bitmask order.
pub fn lambda_subsets(ti: &TensorInstance) -> Vec<BTreeSet<EdgeId>> {
    let lam = ti.lambda_edges();
    (0u64..1 << lam.len())
        .map(|mask| {
            lam.iter()
                .enumerate()
                .filter(|(i, _)| mask >> i & 1 == 1)
                .map(|(_, id)| id.clone())
                .collect()
        })
        .collect()
}

/// `g1` with the edges of `s` recolored to `λ0` and turned into zero edges.
pub fn recolored(ti: &TensorInstance, s: &BTreeSet<EdgeId>) -> ColoredMultigraph {
    ti.g1
        .recolor_subset(s, &Color::recolor())
        .expect("λ-edges are regular and share a color")
}

/// `Σ_S Σ_{C1} Π_f #(sets of g2 of the type f requires)`; equals the number
/// of contracting sets of the product.
pub fn partition_count(ti: &TensorInstance) -> u128 {
    let by_type = g2_sets_by_type(&ti.g2);
    let count = |t| by_type.get(&PairTypeKey(t)).map_or(0, |v| v.len() as u128);
    let (nc, nd, n0) = (
        count(PairType::TypeC),
        count(PairType::TypeD),
        count(PairType::TypeZero),
    );
    let lam = ti.lambda_edges();
    let mut total = 0;
    for s in lambda_subsets(ti) {
        let g = recolored(ti, &s);
        for cs in enumerate_contracting_sets(&g, &ProperLabeling::canonical(&g)).expect("canonical") {
            let mut prod = 1u128;
            for f in &lam {
                prod *= if s.contains(f) {
                    n0
                } else if cs.c.contains(f) {
                    nc
                } else {
                    nd
                };
            }
            total += prod;
        }
    }
    total
}

/// Regular substitution: `X[λ] -> T_-`, `x[λ] -> T_L`, `Y[λ] -> T_/`,
/// `y[λ] -> T_C`; other variables are fixed.
pub fn beta_lambda(p: &RelPolynomial, pp: &PointedPolys, lambda: &Color) -> RelPolynomial {
    p.substitute(|v| {
        (&v.color == lambda).then(|| match v.kind {
            VarKind::BigX => pp.t_minus.clone(),
            VarKind::SmallX => pp.t_l.clone(),
            VarKind::BigY => pp.t_slash.clone(),
            VarKind::SmallY => pp.t_c.clone(),
        })
    })
}

/// Splicing map: every product of symbols becomes the symbol of the splice
/// of their classes.
pub fn sigma(p: &RelPolynomial) -> RelPolynomial {
    p.map_z_multiset(|keys| {
        if keys.len() == 1 {
            keys[0].clone()
        } else {
            let refs: Vec<&PivotClassKey> = keys.iter().map(|k| &**k).collect();
            Arc::new(PivotClassKey::spliced(&refs))
        }
    })
}

/// Zero substitution: in each symbol, every `λ0` edge is replaced by a
/// 2-sum with a term of `T_0` along its `ν` edge, summed over all ways of
/// assigning terms to edges. A `λ0` loop is glued by contracting the `ν`
/// edge onto the loop's vertex.
pub fn beta_zero(p: &RelPolynomial, t0: &RelPolynomial, orientation: Orientation) -> Result<RelPolynomial, PolyError> {
    beta_zero_ordered(p, t0, orientation, false)
}

fn beta_zero_ordered(
    p: &RelPolynomial,
    t0: &RelPolynomial,
    orientation: Orientation,
    reversed: bool,
) -> Result<RelPolynomial, PolyError> {
    if !t0.is_z_linear() {
        return Err(PolyError::NotLinearInZ);
    }
    let terms = t0_terms(t0);
    p.map_z_linear(|key| {
        let rep = key.representative();
        let mut sites: Vec<EdgeId> = rep
            .edges()
            .iter()
            .filter(|e| e.color.is_recolor())
            .map(|e| e.id.clone())
            .collect();
        if sites.is_empty() {
            return RelPolynomial::z(key.clone());
        }
        if reversed {
            sites.reverse();
        }
        let n = terms.len();
        let k = sites.len() as u32;
        let mut out = RelPolynomial::zero();
        for code in 0..n.pow(k) {
            let mut g = rep.clone();
            let mut coeff = RelPolynomial::one();
            let mut rest = code;
            for site in &sites {
                let (pj, kj) = &terms[rest % n];
                rest /= n;
                coeff = &coeff * pj;
                let patch = kj.representative();
                let nu = &patch.pointed_edge_or_nu().id;
                let loop_site = g.edge(site).expect("site present").is_loop();
                g = if loop_site {
                    loop_glue(&g, site, patch, nu)
                } else {
                    two_sum_oriented(&g, site, patch, nu, orientation)
                }
                .expect("sites and ν edges exist");
            }
            out += &(&coeff * &RelPolynomial::z(Arc::new(g.pivot_class_key())));
        }
        out
    })
}

impl ColoredMultigraph {
    fn pointed_edge_or_nu(&self) -> &Edge {
        self.edges()
            .iter()
            .find(|e| e.color.is_pointed())
            .expect("T_0 symbols carry a ν edge")
    }
}

/// `Σ_S β0(σ(βλ(T(g1 with S recolored))))` with the pointed polynomials of
/// `g2` computed once.
pub fn substitution_rhs(ti: &TensorInstance, orientation: Orientation) -> Result<RelPolynomial, TensorError> {
    let pp = pointed_polys(&ti.g2)?;
    rhs_with(ti, &pp, orientation)
}

fn rhs_with(ti: &TensorInstance, pp: &PointedPolys, orientation: Orientation) -> Result<RelPolynomial, TensorError> {
    let parts: Vec<RelPolynomial> = lambda_subsets(ti)
        .par_iter()
        .map(|s| {
            let u = universal_tutte(&recolored(ti, s));
            let b = sigma(&beta_lambda(&u, pp, &ti.lambda));
            beta_zero(&b, &pp.t_0, orientation)
        })
        .collect::<Result<_, _>>()?;
    Ok(RelPolynomial::sum(&parts))
}

#[derive(Clone, Copy, Debug, Default)]
pub struct VerifyOptions {
    pub orientation: Orientation,
    /// also evaluate the right-hand side under the other orientation
    pub probe_flip: bool,
    /// add a stray term to the right-hand side (negative control)
    pub corrupt: bool,
}

#[derive(Clone, Debug)]
pub struct TensorReport {
    pub lhs: RelPolynomial,
    pub rhs: RelPolynomial,
    pub equal_mod_ideal: bool,
    pub structurally_equal: bool,
    /// outcome under the opposite gluing orientation, if probed
    pub flipped_equal_mod_ideal: Option<bool>,
    pub elapsed: Duration,
}

pub fn verify_tensor_formula(
    ti: &TensorInstance,
    trials: usize,
    seed: u64,
    opts: VerifyOptions,
) -> Result<TensorReport, TensorError> {
    let start = Instant::now();
    let product = tensor_product(ti);
    let lhs = universal_tutte_statesum(&product, &product_labeling(ti))?;
    let pp = pointed_polys(&ti.g2)?;
    let mut rhs = rhs_with(ti, &pp, opts.orientation)?;
    if opts.corrupt {
        rhs += RelPolynomial::z(PivotClassKey::point());
    }
    let flipped_equal_mod_ideal = if opts.probe_flip {
        let other = match opts.orientation {
            Orientation::Aligned => Orientation::Flipped,
            Orientation::Flipped => Orientation::Aligned,
        };
        let r = rhs_with(ti, &pp, other)?;
        Some(equal_mod_ideal(&lhs, &r, trials, seed))
    } else {
        None
    };
    Ok(TensorReport {
        equal_mod_ideal: equal_mod_ideal(&lhs, &rhs, trials, seed),
        structurally_equal: lhs == rhs,
        flipped_equal_mod_ideal,
        lhs,
        rhs,
        elapsed: start.elapsed(),
    })
}
