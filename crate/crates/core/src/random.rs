//! Seeded random instances.
//!
//! Every generator draws from a `ChaCha8Rng`. An edge is a loop at a
//! uniform vertex with probability 1/10 (always when `n = 1`), otherwise it
//! joins a uniform pair of distinct vertices (parallel edges allowed); regular edges
//! are named `a0, a1, ...` and colored uniformly from `c0..c{k-1}`, zero
//! edges are named `h0, h1, ...` and colored uniformly from `z0, z1`. A
//! draw that violates a requirement is discarded and redrawn from the same
//! stream. Instance `i` of a run with seed `s` uses the stream seeded with
//! [`instance_seed`]`(s, i)`.

use std::ops::RangeInclusive;

use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::graph::{Color, ColoredMultigraph, Edge, EdgeKind, VertexId};
use crate::pointed::PointedGraph;
use crate::tensor::TensorInstance;

pub const LAMBDA: &str = "c0";
const ZERO_COLORS: [&str; 2] = ["z0", "z1"];

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RandomInstanceSpec {
    pub vertices: RangeInclusive<u32>,
    pub regular_edges: RangeInclusive<usize>,
    pub zero_edges: RangeInclusive<usize>,
    pub colors: usize,
    /// λ-edges among the regular edges (tensor instances only)
    pub lambda_edges: RangeInclusive<usize>,
    pub connected: bool,
}

impl Default for RandomInstanceSpec {
    fn default() -> Self {
        RandomInstanceSpec {
            vertices: 2..=4,
            regular_edges: 1..=5,
            zero_edges: 0..=2,
            colors: 2,
            lambda_edges: 1..=2,
            connected: true,
        }
    }
}

pub fn instance_seed(seed: u64, i: u64) -> u64 {
    seed ^ i.wrapping_add(1).wrapping_mul(0x9E37_79B9_7F4A_7C15)
}

pub fn rng_for(seed: u64, i: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(instance_seed(seed, i))
}

const LOOP_PROBABILITY: f64 = 0.1;

fn endpoints(n: u32, rng: &mut impl Rng) -> (VertexId, VertexId) {
    let u = rng.gen_range(0..n);
    if n < 2 || rng.gen_bool(LOOP_PROBABILITY) {
        return (u, u);
    }
    let v = rng.gen_range(0..n - 1);
    (u, if v >= u { v + 1 } else { v })
}

/// Regular colors are drawn from `colors` (indices into `c0, c1, ...`).
fn draw(spec: &RandomInstanceSpec, colors: &[usize], lambda: usize, rng: &mut impl Rng) -> ColoredMultigraph {
    loop {
        let n = rng.gen_range(spec.vertices.clone()).max(1);
        let r = rng.gen_range(spec.regular_edges.clone());
        let h = rng.gen_range(spec.zero_edges.clone());
        let mut edges = Vec::with_capacity(r + h);
        for i in 0..r {
            let (u, v) = endpoints(n, rng);
            let c = if i < lambda {
                0
            } else {
                colors[rng.gen_range(0..colors.len())]
            };
            edges.push(Edge::new(
                format!("a{i}").as_str(),
                u,
                v,
                Color::new(format!("c{c}")),
                EdgeKind::Regular,
            ));
        }
        for i in 0..h {
            let (u, v) = endpoints(n, rng);
            let z = ZERO_COLORS[rng.gen_range(0..ZERO_COLORS.len())];
            edges.push(Edge::new(format!("h{i}").as_str(), u, v, z, EdgeKind::Zero));
        }
        let g = ColoredMultigraph::new(0..n, edges).expect("generated ids are distinct");
        if !spec.connected || g.is_connected() {
            return g;
        }
    }
}

pub fn random_graph(spec: &RandomInstanceSpec, rng: &mut impl Rng) -> ColoredMultigraph {
    let colors: Vec<usize> = (0..spec.colors.max(1)).collect();
    draw(spec, &colors, 0, rng)
}

/// Connected graph plus a pointed edge `e` that is neither a loop nor a
/// bridge.
pub fn random_pointed(spec: &RandomInstanceSpec, rng: &mut impl Rng) -> PointedGraph {
    loop {
        let g = random_graph(spec, rng);
        let n = g.max_vertex().map_or(1, |v| v + 1);
        let (u, v) = endpoints(n, rng);
        let mut edges = g.edges().to_vec();
        edges.push(Edge::pointed("e", u, v));
        let g = ColoredMultigraph::new(g.vertices().iter().copied(), edges).expect("fresh id");
        if let Ok(pg) = PointedGraph::new(g) {
            return pg;
        }
    }
}

/// Tensor instance with λ = `c0`: the first `k` regular edges of `g1` are
/// λ-edges (`k` from `lambda_edges`, clamped to the edge count) and `g2`
/// only uses the colors `c1, c2, ...`.
pub fn random_tensor_instance(
    spec1: &RandomInstanceSpec,
    spec2: &RandomInstanceSpec,
    rng: &mut impl Rng,
) -> TensorInstance {
    let others: Vec<usize> = (1..spec1.colors.max(2)).collect();
    let others2: Vec<usize> = (1..spec2.colors.max(2)).collect();
    loop {
        let k = rng.gen_range(spec1.lambda_edges.clone());
        let g1 = draw(spec1, &others, k, rng);
        let g2 = loop {
            let g = draw(spec2, &others2, 0, rng);
            let n = g.max_vertex().map_or(1, |v| v + 1);
            let (u, v) = endpoints(n, rng);
            let mut edges = g.edges().to_vec();
            edges.push(Edge::pointed("e", u, v));
            if let Ok(pg) =
                PointedGraph::new(ColoredMultigraph::new(g.vertices().iter().copied(), edges).expect("fresh id"))
            {
                break pg;
            }
        };
        if let Ok(ti) = TensorInstance::new(g1, g2, Color::new(LAMBDA)) {
            return ti;
        }
    }
}
