//! Randomized property suites. Each instance is checked independently (in
//! parallel) and results are reported in instance order, so the output only
//! depends on the configuration.

use std::collections::BTreeMap;
use std::fmt::Write;

use rand::Rng;
use rayon::prelude::*;

use crate::format::print_graph;
use crate::graph::{Color, ColoredMultigraph, Orientation};
use crate::pointed::{classify_pair, partition_sum, pointed_identities, pointed_polys, PairType, PointedGraph};
use crate::poly::{equal_mod_ideal, RelPolynomial};
use crate::random::{random_graph, random_pointed, random_tensor_instance, rng_for, RandomInstanceSpec};
use crate::tensor::{
    compose_contracting_set, copy_restriction, induced_partition, partition_count, tensor_product,
    verify_tensor_formula, TensorInstance, TensorReport, VerifyOptions,
};
use crate::tutte::{enumerate_contracting_sets, is_contracting_set, universal_tutte_statesum, ProperLabeling};
use crate::PivotClassKey;

#[derive(Clone, Debug)]
pub struct SuiteConfig {
    pub instances: usize,
    pub seed: u64,
    pub trials: usize,
    pub spec: RandomInstanceSpec,
    pub orientation: Orientation,
    /// perturb one side of every comparison (negative control)
    pub inject_fault: bool,
}

impl Default for SuiteConfig {
    fn default() -> Self {
        SuiteConfig {
            instances: 20,
            seed: 1,
            trials: 32,
            spec: RandomInstanceSpec::default(),
            orientation: Orientation::Aligned,
            inject_fault: false,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SuiteOutcome {
    pub name: &'static str,
    pub instances: usize,
    pub failures: usize,
    /// first failing instance with the offending graph(s) in text format
    pub counterexample: Option<String>,
    pub notes: Vec<String>,
}

impl SuiteOutcome {
    pub fn passed(&self) -> bool {
        self.failures == 0
    }
}

fn graph_block(title: &str, g: &ColoredMultigraph) -> String {
    format!("# {title}\n{}", print_graph(g))
}

pub fn check_labeling_independence(
    g: &ColoredMultigraph,
    rng: &mut impl Rng,
    trials: usize,
    fault: bool,
) -> Result<(), String> {
    let a = universal_tutte_statesum(g, &ProperLabeling::random(g, rng)).map_err(|e| e.to_string())?;
    let mut b = universal_tutte_statesum(g, &ProperLabeling::random(g, rng)).map_err(|e| e.to_string())?;
    if fault {
        b += RelPolynomial::z(PivotClassKey::point());
    }
    let seed = rng.gen();
    if equal_mod_ideal(&a, &b, trials, seed) {
        Ok(())
    } else {
        Err(format!("labelings disagree:\n  {a}\n  {b}"))
    }
}

/// Regular colors of `g`, or `c0` if it has none.
fn regular_colors(g: &ColoredMultigraph) -> Vec<Color> {
    let mut out: Vec<Color> = g.regular_edges().map(|e| e.color.clone()).collect();
    out.sort();
    out.dedup();
    if out.is_empty() {
        out.push(Color::new("c0"));
    }
    out
}

pub fn check_pointed_identities(pg: &PointedGraph, trials: usize, seed: u64, fault: bool) -> Result<(), String> {
    let pp = pointed_polys(pg).map_err(|e| e.to_string())?;
    for mu in regular_colors(pg.graph()) {
        for (name, l, mut r) in pointed_identities(&pp, &mu).map_err(|e| e.to_string())? {
            if fault {
                r += RelPolynomial::z(PivotClassKey::point());
            }
            if !equal_mod_ideal(&l, &r, trials, seed) {
                return Err(format!("identity {name} fails for color {mu}:\n  {l}\n  {r}"));
            }
        }
    }
    Ok(())
}

/// Projections partition the universal polynomial, and every contracting
/// set's type agrees with the subset characterization.
pub fn check_partition(pg: &PointedGraph, fault: bool) -> Result<(), String> {
    let pp = pointed_polys(pg).map_err(|e| e.to_string())?;
    let mut s = partition_sum(&pp.universal).map_err(|e| e.to_string())?;
    if fault {
        s += RelPolynomial::z(PivotClassKey::point());
    }
    if s != pp.universal {
        return Err(format!("projections do not sum to U:\n  {s}\n  {}", pp.universal));
    }
    let g = pg.graph();
    let h = pg.zero_set();
    for cs in enumerate_contracting_sets(g, &ProperLabeling::canonical(g)).map_err(|e| e.to_string())? {
        let mut with_e = cs.c.clone();
        with_e.insert(pg.edge_id().clone());
        let want = match (is_contracting_set(g, &cs.c, &h), is_contracting_set(g, &with_e, &h)) {
            (true, false) => PairType::TypeC,
            (false, true) => PairType::TypeD,
            (true, true) => PairType::TypeZero,
            (false, false) => return Err(format!("{:?}: neither C nor C+e is contracting", cs.c)),
        };
        let got = classify_pair(pg, &cs).map_err(|e| e.to_string())?;
        if got != want {
            return Err(format!("{:?}: classified {got:?}, expected {want:?}", cs.c));
        }
    }
    Ok(())
}

/// Round trip through the induced partition for every contracting set of
/// the product, and the count identity. Returns the number of sets.
pub fn check_bijection(ti: &TensorInstance) -> Result<u128, String> {
    let product = tensor_product(ti);
    let mut count = 0u128;
    for cs in enumerate_contracting_sets(&product, &ProperLabeling::canonical(&product)).map_err(|e| e.to_string())? {
        count += 1;
        let part = induced_partition(ti, &cs).map_err(|e| format!("{:?}: {e}", cs.c))?;
        let per_copy: BTreeMap<_, _> = ti
            .lambda_edges()
            .into_iter()
            .map(|f| (f.clone(), copy_restriction(ti, &cs, &f)))
            .collect();
        let back = compose_contracting_set(ti, &part, &per_copy).map_err(|e| format!("{:?}: {e}", cs.c))?;
        if back != cs {
            return Err(format!("round trip changed {:?} into {:?}", cs.c, back.c));
        }
    }
    let via = partition_count(ti);
    if via != count {
        return Err(format!("product has {count} contracting sets, partitions give {via}"));
    }
    Ok(count)
}

pub fn check_tensor(
    ti: &TensorInstance,
    trials: usize,
    seed: u64,
    orientation: Orientation,
    fault: bool,
) -> Result<TensorReport, String> {
    let opts = VerifyOptions {
        orientation,
        probe_flip: true,
        corrupt: fault,
    };
    let r = verify_tensor_formula(ti, trials, seed, opts).map_err(|e| e.to_string())?;
    if r.equal_mod_ideal {
        Ok(r)
    } else {
        Err(format!("lhs and rhs differ:\n  lhs = {}\n  rhs = {}", r.lhs, r.rhs))
    }
}

fn tensor_spec2() -> RandomInstanceSpec {
    RandomInstanceSpec {
        vertices: 2..=3,
        regular_edges: 1..=3,
        zero_edges: 0..=2,
        ..Default::default()
    }
}

fn bijection_spec1() -> RandomInstanceSpec {
    RandomInstanceSpec {
        regular_edges: 1..=4,
        zero_edges: 0..=1,
        ..Default::default()
    }
}

type Check = Result<Vec<String>, (String, String)>;

fn run<F>(name: &'static str, salt: u64, cfg: &SuiteConfig, f: F) -> SuiteOutcome
where
    F: Fn(usize, u64) -> Check + Sync,
{
    let seed = cfg.seed ^ salt;
    let results: Vec<Check> = (0..cfg.instances).into_par_iter().map(|i| f(i, seed)).collect();
    let mut out = SuiteOutcome {
        name,
        instances: cfg.instances,
        failures: 0,
        counterexample: None,
        notes: Vec::new(),
    };
    for (i, r) in results.into_iter().enumerate() {
        match r {
            Ok(notes) => out.notes.extend(notes),
            Err((why, graphs)) => {
                out.failures += 1;
                if out.counterexample.is_none() {
                    out.counterexample = Some(format!("instance {i}: {why}\n{graphs}"));
                }
            }
        }
    }
    out
}

pub fn run_suites(cfg: &SuiteConfig) -> Vec<SuiteOutcome> {
    let spec = &cfg.spec;
    let fault = cfg.inject_fault;
    let labeling = run("labeling-independence", 0x11, cfg, |i, seed| {
        let mut rng = rng_for(seed, i as u64);
        let g = random_graph(spec, &mut rng);
        check_labeling_independence(&g, &mut rng, cfg.trials, fault)
            .map(|_| Vec::new())
            .map_err(|e| (e, graph_block("graph", &g)))
    });
    let identities = run("pointed-identities", 0x22, cfg, |i, seed| {
        let pg = random_pointed(spec, &mut rng_for(seed, i as u64));
        check_pointed_identities(&pg, cfg.trials, seed, fault)
            .map(|_| Vec::new())
            .map_err(|e| (e, graph_block("pointed graph", pg.graph())))
    });
    let partition = run("partition", 0x33, cfg, |i, seed| {
        let pg = random_pointed(spec, &mut rng_for(seed, i as u64));
        check_partition(&pg, fault)
            .map(|_| Vec::new())
            .map_err(|e| (e, graph_block("pointed graph", pg.graph())))
    });
    let blocks = |ti: &TensorInstance| format!("{}{}", graph_block("g1", ti.g1()), graph_block("g2", ti.g2().graph()));
    let bijection = run("bijection", 0x44, cfg, |i, seed| {
        let ti = random_tensor_instance(&bijection_spec1(), &tensor_spec2(), &mut rng_for(seed, i as u64));
        match check_bijection(&ti) {
            Ok(_) if fault => Err(("injected fault".into(), blocks(&ti))),
            Ok(_) => Ok(Vec::new()),
            Err(e) => Err((e, blocks(&ti))),
        }
    });
    let tensor = run("tensor", 0x55, cfg, |i, seed| {
        let ti = random_tensor_instance(spec, &tensor_spec2(), &mut rng_for(seed, i as u64));
        match check_tensor(&ti, cfg.trials, seed, cfg.orientation, fault) {
            Ok(r) => Ok(match r.flipped_equal_mod_ideal {
                Some(false) => vec![format!("instance {i}: opposite orientation gives a different value")],
                _ => Vec::new(),
            }),
            Err(e) => Err((e, blocks(&ti))),
        }
    });
    vec![labeling, identities, partition, bijection, tensor]
}

/// Human-readable summary; the seed and trial count are always echoed.
pub fn render_summary(cfg: &SuiteConfig, outcomes: &[SuiteOutcome]) -> String {
    let mut s = String::new();
    let _ = writeln!(s, "seed={} trials={} instances={}", cfg.seed, cfg.trials, cfg.instances);
    if cfg.instances == 0 {
        s.push_str("warning: 0 instances, every suite passes vacuously\n");
    }
    for o in outcomes {
        let status = if o.passed() { "PASS" } else { "FAIL" };
        let _ = writeln!(
            s,
            "{status} {}: {}/{} instances ok",
            o.name,
            o.instances - o.failures,
            o.instances
        );
        for n in &o.notes {
            let _ = writeln!(s, "  note: {n}");
        }
        if let Some(c) = &o.counterexample {
            let _ = writeln!(s, "  first counterexample, {c}");
        }
    }
    s
}
