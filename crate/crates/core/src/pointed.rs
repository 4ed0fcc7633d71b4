//! Pointed graphs: a distinguished edge `e` of color `ν` that is neither a
//! loop nor a bridge. Contracting sets are taken with `e` counted as a zero
//! edge and classified by what happens to `e`; the five projections below
//! split the universal polynomial accordingly.

use std::collections::BTreeSet;
use std::sync::Arc;

use crate::canon::{PivotClassKey, PointedStatus};
use crate::error::{PointedError, PolyError, TutteError};
use crate::graph::{Color, ColoredMultigraph, Edge, EdgeId};
use crate::poly::{RelPolynomial, VarKind, ZKey};
use crate::tutte::{is_contracting_set, universal_tutte, ContractingSet};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PointedGraph {
    graph: ColoredMultigraph,
    edge: EdgeId,
}

impl PointedGraph {
    pub fn new(graph: ColoredMultigraph) -> Result<Self, PointedError> {
        let e = graph.pointed_edge().ok_or(PointedError::NoPointedEdge)?.id.clone();
        if !graph.is_connected() {
            return Err(PointedError::Disconnected);
        }
        if graph.is_loop(&e)? || graph.is_bridge(&e)? {
            return Err(PointedError::PointedIsLoopOrBridge(e));
        }
        Ok(PointedGraph { graph, edge: e })
    }

    pub fn graph(&self) -> &ColoredMultigraph {
        &self.graph
    }

    pub fn edge_id(&self) -> &EdgeId {
        &self.edge
    }

    pub fn edge(&self) -> &Edge {
        self.graph.edge(&self.edge).expect("pointed edge present")
    }

    /// The zero edges other than the pointed edge.
    pub fn zero_set(&self) -> BTreeSet<EdgeId> {
        self.graph
            .edges()
            .iter()
            .filter(|e| e.is_zero())
            .map(|e| e.id.clone())
            .collect()
    }

    pub fn contracted(&self) -> ColoredMultigraph {
        self.graph.contract(&self.edge).expect("pointed edge is not a loop")
    }

    pub fn deleted(&self) -> ColoredMultigraph {
        self.graph.delete(&self.edge).expect("pointed edge present")
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum PairType {
    /// `C ∪ {e}` contains a cycle: `e` ends up a loop.
    TypeC,
    /// `D ∪ {e}` contains a cocycle: `e` ends up a bridge.
    TypeD,
    /// neither
    TypeZero,
}

/// Type of a contracting set taken with the pointed edge as a zero edge.
pub fn classify_pair(pg: &PointedGraph, cs: &ContractingSet) -> Result<PairType, TutteError> {
    let g = &pg.graph;
    let mut zero = pg.zero_set();
    zero.insert(pg.edge.clone());
    let regular: BTreeSet<&EdgeId> = g.regular_edges().map(|e| &e.id).collect();
    let covered: BTreeSet<&EdgeId> = cs.c.iter().chain(cs.d.iter()).collect();
    if covered != regular || cs.c.intersection(&cs.d).next().is_some() {
        return Err(TutteError::InvalidContractingSet(
            "C and D must partition the regular edges".into(),
        ));
    }
    if !is_contracting_set(g, &cs.c, &zero) {
        return Err(TutteError::InvalidContractingSet("C has a cycle or D a cocycle".into()));
    }
    let e = pg.edge();
    let ty = if g.connected_avoiding(e.tail, e.head, |f| !cs.c.contains(&f.id)) {
        PairType::TypeC
    } else {
        let base = g.component_count();
        let cut = g.components_with(|f| f.id != e.id && !cs.d.contains(&f.id)).len();
        if cut > base {
            PairType::TypeD
        } else {
            PairType::TypeZero
        }
    };
    debug_assert_eq!(ty, status_after(pg, cs), "type disagrees with minor status");
    Ok(ty)
}

// status of e after contracting C and deleting D
fn status_after(pg: &PointedGraph, cs: &ContractingSet) -> PairType {
    let mut g = pg.graph.clone();
    for id in &cs.d {
        g = g.delete(id).expect("edge");
    }
    for id in &cs.c {
        g = g.contract(id).expect("C is acyclic");
    }
    if g.is_loop(&pg.edge).expect("edge") {
        PairType::TypeC
    } else if g.is_bridge(&pg.edge).expect("edge") {
        PairType::TypeD
    } else {
        PairType::TypeZero
    }
}

fn keep_if(p: &RelPolynomial, want: PointedStatus) -> Result<RelPolynomial, PolyError> {
    p.map_z_linear(|k| {
        if k.pointed_status() == Some(want) {
            RelPolynomial::z(k.clone())
        } else {
            RelPolynomial::zero()
        }
    })
}

/// Keeps the symbols whose unique `ν` edge is a bridge.
pub fn pi_c(p: &RelPolynomial) -> Result<RelPolynomial, PolyError> {
    keep_if(p, PointedStatus::Bridge)
}

/// Keeps the symbols whose unique `ν` edge is a loop.
pub fn pi_l(p: &RelPolynomial) -> Result<RelPolynomial, PolyError> {
    keep_if(p, PointedStatus::Loop)
}

/// Keeps the symbols whose unique `ν` edge is neither a loop nor a bridge.
pub fn pi_0(p: &RelPolynomial) -> Result<RelPolynomial, PolyError> {
    keep_if(p, PointedStatus::Neither)
}

fn nu_edge(k: &PivotClassKey) -> EdgeId {
    k.representative()
        .edges()
        .iter()
        .find(|e| e.color.is_pointed())
        .expect("status implies a ν edge")
        .id
        .clone()
}

/// `z_[Γ] -> z_[Γ/f]` when `Γ` has exactly one `ν` edge `f` and it is not a
/// loop; other symbols go to zero.
pub fn pi_contract(p: &RelPolynomial) -> Result<RelPolynomial, PolyError> {
    p.map_z_linear(|k| match k.pointed_status() {
        Some(PointedStatus::Bridge | PointedStatus::Neither) => {
            let g = k.representative().contract(&nu_edge(k)).expect("not a loop");
            RelPolynomial::z(Arc::new(g.pivot_class_key()))
        }
        _ => RelPolynomial::zero(),
    })
}

/// `z_[Γ] -> z_[Γ-f]` when `Γ` has exactly one `ν` edge `f` and it is not a
/// bridge; other symbols go to zero.
pub fn pi_delete(p: &RelPolynomial) -> Result<RelPolynomial, PolyError> {
    p.map_z_linear(|k| match k.pointed_status() {
        Some(PointedStatus::Loop | PointedStatus::Neither) => {
            let g = k.representative().delete(&nu_edge(k)).expect("edge present");
            RelPolynomial::z(Arc::new(g.pivot_class_key()))
        }
        _ => RelPolynomial::zero(),
    })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PointedPolys {
    pub t_c: RelPolynomial,
    pub t_l: RelPolynomial,
    pub t_0: RelPolynomial,
    pub t_slash: RelPolynomial,
    pub t_minus: RelPolynomial,
    /// universal polynomial with the pointed edge counted as a zero edge
    pub universal: RelPolynomial,
    pub contracted: RelPolynomial,
    pub deleted: RelPolynomial,
}

impl PointedPolys {
    pub fn named(&self) -> [(&'static str, &RelPolynomial); 5] {
        [
            ("T_C", &self.t_c),
            ("T_L", &self.t_l),
            ("T_0", &self.t_0),
            ("T_/", &self.t_slash),
            ("T_-", &self.t_minus),
        ]
    }
}

pub fn pointed_polys(pg: &PointedGraph) -> Result<PointedPolys, PointedError> {
    let u = universal_tutte(&pg.graph);
    let contracted = universal_tutte(&pg.contracted());
    let deleted = universal_tutte(&pg.deleted());
    let t_0 = pi_0(&u)?;
    Ok(PointedPolys {
        t_c: pi_contract(&pi_c(&u)?)?,
        t_l: pi_delete(&pi_l(&u)?)?,
        t_slash: &contracted - &pi_contract(&t_0)?,
        t_minus: &deleted - &pi_delete(&t_0)?,
        t_0,
        universal: u,
        contracted,
        deleted,
    })
}

/// `π_C(U) + π_L(U) + π_0(U)`; equals `U` term for term.
pub fn partition_sum(u: &RelPolynomial) -> Result<RelPolynomial, PolyError> {
    Ok(&(&pi_c(u)? + &pi_l(u)?) + &pi_0(u)?)
}

/// Named pairs `(lhs, rhs)` that agree modulo the ideal for the color `mu`:
///
/// * `slash`: `x(T_/ - T_C) = (Y - y) T_L`
/// * `minus`: `y(T_- - T_L) = (X - x) T_C`
/// * `sum`: `x T(G/e) + y T(G-e) = X T_C + x π_/(T_0) + Y T_L + y π_-(T_0)`
/// * `det-slash`: `T_L y - T_C x = T_L Y - T_/ x`
/// * `det-minus`: `T_L y - T_C x = T_- y - T_C X`
pub fn pointed_identities(
    pp: &PointedPolys,
    mu: &Color,
) -> Result<Vec<(&'static str, RelPolynomial, RelPolynomial)>, PolyError> {
    let v = |k| RelPolynomial::var(k, mu.as_str());
    let (bx, by, sx, sy) = (
        v(VarKind::BigX),
        v(VarKind::BigY),
        v(VarKind::SmallX),
        v(VarKind::SmallY),
    );
    let slash = (&sx * &(&pp.t_slash - &pp.t_c), &(&by - &sy) * &pp.t_l);
    let minus = (&sy * &(&pp.t_minus - &pp.t_l), &(&bx - &sx) * &pp.t_c);
    let sum_l = &(&sx * &pp.contracted) + &(&sy * &pp.deleted);
    let sum_r = RelPolynomial::sum(&[
        &bx * &pp.t_c,
        &sx * &pi_contract(&pp.t_0)?,
        &by * &pp.t_l,
        &sy * &pi_delete(&pp.t_0)?,
    ]);
    let det = &(&pp.t_l * &sy) - &(&pp.t_c * &sx);
    let det_slash = &(&pp.t_l * &by) - &(&pp.t_slash * &sx);
    let det_minus = &(&pp.t_minus * &sy) - &(&pp.t_c * &bx);
    Ok(vec![
        ("slash", slash.0, slash.1),
        ("minus", minus.0, minus.1),
        ("sum", sum_l, sum_r),
        ("det-slash", det.clone(), det_slash),
        ("det-minus", det, det_minus),
    ])
}

/// Terms of `T_0` grouped by symbol: `(coefficient polynomial, key)`.
pub fn t0_terms(t0: &RelPolynomial) -> Vec<(RelPolynomial, ZKey)> {
    let mut out: Vec<(RelPolynomial, ZKey)> = Vec::new();
    for key in t0.z_keys() {
        let coeff = t0
            .map_z_linear(|k| {
                if *k == key {
                    RelPolynomial::one()
                } else {
                    RelPolynomial::zero()
                }
            })
            .expect("T_0 is linear in z");
        out.push((coeff, key));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::Edge;
    use crate::poly::VarKind;
    use crate::tutte::{enumerate_contracting_sets, ProperLabeling};

    fn pg(edges: Vec<Edge>) -> PointedGraph {
        PointedGraph::new(ColoredMultigraph::new([], edges).unwrap()).unwrap()
    }

    pub(crate) fn left_triangle() -> PointedGraph {
        pg(vec![
            Edge::pointed("e", 0, 1),
            Edge::regular("m", 1, 2, "mu"),
            Edge::zero("h", 2, 0, "z0"),
        ])
    }

    pub(crate) fn right_parallel() -> PointedGraph {
        pg(vec![
            Edge::pointed("e", 0, 1),
            Edge::regular("m", 0, 1, "mu"),
            Edge::zero("h", 0, 1, "z0"),
        ])
    }

    fn ids(xs: &[&str]) -> BTreeSet<EdgeId> {
        xs.iter().map(EdgeId::new).collect()
    }

    #[test]
    fn validation() {
        let no = PointedGraph::new(ColoredMultigraph::new([], [Edge::zero("h", 0, 1, "z0")]).unwrap());
        assert_eq!(no, Err(PointedError::NoPointedEdge));
        let bridge = PointedGraph::new(ColoredMultigraph::new([], [Edge::pointed("e", 0, 1)]).unwrap());
        assert!(matches!(bridge, Err(PointedError::PointedIsLoopOrBridge(_))));
        let lp = PointedGraph::new(
            ColoredMultigraph::new([], [Edge::pointed("e", 0, 0), Edge::zero("h", 0, 1, "z0")]).unwrap(),
        );
        assert!(matches!(lp, Err(PointedError::PointedIsLoopOrBridge(_))));
    }

    #[test]
    fn classification_examples() {
        let g2 = pg(vec![Edge::pointed("e", 0, 1), Edge::zero("h", 0, 1, "z0")]);
        let empty = ContractingSet::default();
        assert_eq!(classify_pair(&g2, &empty), Ok(PairType::TypeZero));

        let t = left_triangle();
        let c = ContractingSet::from_c(t.graph(), ids(&["m"]));
        assert_eq!(classify_pair(&t, &c), Ok(PairType::TypeZero));
        let d = ContractingSet::from_c(t.graph(), ids(&[]));
        assert_eq!(classify_pair(&t, &d), Ok(PairType::TypeD));

        let r = right_parallel();
        let d = ContractingSet::from_c(r.graph(), ids(&[]));
        assert_eq!(classify_pair(&r, &d), Ok(PairType::TypeZero));
    }

    #[test]
    fn triangle_and_parallel_values() {
        let mu = |k| RelPolynomial::var(k, "mu");
        let left = pointed_polys(&left_triangle()).unwrap();
        assert_eq!(left.deleted.to_string(), "X[mu]·z{bridge(z0)}");
        assert_eq!(pi_delete(&left.t_0).unwrap().to_string(), "x[mu]·z{bridge(z0)}");
        assert_eq!(left.t_minus.to_string(), "X[mu]·z{bridge(z0)} - x[mu]·z{bridge(z0)}");
        let zb = RelPolynomial::z(left.t_minus.z_keys().into_iter().next().unwrap());
        assert_eq!(left.t_minus, &(&mu(VarKind::BigX) - &mu(VarKind::SmallX)) * &zb);

        let right = pointed_polys(&right_parallel()).unwrap();
        assert_eq!(right.contracted.to_string(), "Y[mu]·z{loop(z0)}");
        assert_eq!(pi_contract(&right.t_0).unwrap().to_string(), "y[mu]·z{loop(z0)}");
        assert_eq!(right.t_slash.to_string(), "Y[mu]·z{loop(z0)} - y[mu]·z{loop(z0)}");
    }

    #[test]
    fn lone_parallel_pair_only_has_t0() {
        let g2 = pg(vec![Edge::pointed("e", 0, 1), Edge::zero("h", 0, 1, "z0")]);
        let p = pointed_polys(&g2).unwrap();
        assert!(p.t_c.is_zero() && p.t_l.is_zero() && p.t_slash.is_zero() && p.t_minus.is_zero());
        assert_eq!(p.t_0.to_string(), "z{cycle2(ν,z0)}");
    }

    #[test]
    fn projection_examples() {
        let cycle2 = ColoredMultigraph::new([], [Edge::pointed("e", 0, 1), Edge::zero("h", 0, 1, "z0")]).unwrap();
        let z = RelPolynomial::z(cycle2.pivot_class_key());
        assert_eq!(pi_0(&z).unwrap(), z);
        assert_eq!(pi_delete(&z).unwrap().to_string(), "z{bridge(z0)}");
        assert_eq!(pi_contract(&z).unwrap().to_string(), "z{loop(z0)}");

        let nb = ColoredMultigraph::new([], [Edge::pointed("e", 0, 1), Edge::zero("h", 1, 1, "z0")]).unwrap();
        let z = RelPolynomial::z(nb.pivot_class_key());
        assert_eq!(pi_c(&z).unwrap(), z);
        assert!(pi_l(&z).unwrap().is_zero());

        let nl = ColoredMultigraph::new([], [Edge::pointed("e", 0, 0), Edge::zero("h", 0, 1, "z0")]).unwrap();
        assert!(pi_contract(&RelPolynomial::z(nl.pivot_class_key())).unwrap().is_zero());
    }

    #[test]
    fn identities_on_small_graphs() {
        for pg in [left_triangle(), right_parallel()] {
            let pp = pointed_polys(&pg).unwrap();
            assert_eq!(partition_sum(&pp.universal).unwrap(), pp.universal);
            for mu in ["mu", "other"] {
                for (name, l, r) in pointed_identities(&pp, &Color::new(mu)).unwrap() {
                    assert!(crate::poly::equal_mod_ideal(&l, &r, 16, 3), "{name}: {l} vs {r}");
                }
            }
        }
    }

    #[test]
    fn types_match_characterization() {
        let t = left_triangle();
        let g = t.graph();
        let h = t.zero_set();
        for cs in enumerate_contracting_sets(g, &ProperLabeling::canonical(g)).unwrap() {
            let mut with_e = cs.c.clone();
            with_e.insert(t.edge_id().clone());
            let c_ok = is_contracting_set(g, &cs.c, &h);
            let ce_ok = is_contracting_set(g, &with_e, &h);
            let want = match (c_ok, ce_ok) {
                (true, false) => PairType::TypeC,
                (false, true) => PairType::TypeD,
                (true, true) => PairType::TypeZero,
                _ => panic!("neither set is contracting"),
            };
            assert_eq!(classify_pair(&t, &cs).unwrap(), want);
        }
    }
}
