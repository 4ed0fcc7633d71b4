//! Sparse polynomials over the colored Tutte variables and z-symbols.
//!
//! Coefficients are arbitrary-precision integers. A monomial is a product of
//! colored variables `x[c]`, `X[c]`, `y[c]`, `Y[c]` and a multiset of
//! z-symbols, one per pivot class. The empty class `z{}` is a symbol like any
//! other and is never identified with 1.

use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub};
use std::sync::Arc;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::canon::PivotClassKey;
use crate::error::PolyError;
use crate::graph::Color;

pub type ZKey = Arc<PivotClassKey>;

/// The four weights of a regular edge. Declaration order is the order in
/// which variables are printed inside a monomial.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum VarKind {
    /// `X`: internally active
    BigX,
    /// `Y`: externally active
    BigY,
    /// `x`: internally inactive
    SmallX,
    /// `y`: externally inactive
    SmallY,
}

impl VarKind {
    pub fn symbol(self) -> &'static str {
        match self {
            VarKind::BigX => "X",
            VarKind::BigY => "Y",
            VarKind::SmallX => "x",
            VarKind::SmallY => "y",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct VariableId {
    pub kind: VarKind,
    pub color: Color,
}

impl VariableId {
    pub fn new(kind: VarKind, color: impl Into<Color>) -> Self {
        VariableId {
            kind,
            color: color.into(),
        }
    }
}

impl fmt::Display for VariableId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}[{}]", self.kind.symbol(), self.color)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Monomial {
    // sorted by variable, exponents positive
    vars: Vec<(VariableId, u32)>,
    // sorted
    z: Vec<ZKey>,
}

impl Monomial {
    pub fn new(vars: impl IntoIterator<Item = (VariableId, u32)>, z: impl IntoIterator<Item = ZKey>) -> Self {
        let mut acc: BTreeMap<VariableId, u32> = BTreeMap::new();
        for (v, e) in vars {
            *acc.entry(v).or_default() += e;
        }
        let mut z: Vec<ZKey> = z.into_iter().collect();
        z.sort();
        Monomial {
            vars: acc.into_iter().filter(|&(_, e)| e > 0).collect(),
            z,
        }
    }

    pub fn vars(&self) -> &[(VariableId, u32)] {
        &self.vars
    }

    pub fn z(&self) -> &[ZKey] {
        &self.z
    }

    pub fn degree(&self) -> u32 {
        self.vars.iter().map(|(_, e)| e).sum::<u32>() + self.z.len() as u32
    }

    fn mul(&self, other: &Monomial) -> Monomial {
        let mut vars = Vec::with_capacity(self.vars.len() + other.vars.len());
        let (mut i, mut j) = (0, 0);
        while i < self.vars.len() && j < other.vars.len() {
            let (a, b) = (&self.vars[i], &other.vars[j]);
            match a.0.cmp(&b.0) {
                std::cmp::Ordering::Less => {
                    vars.push(a.clone());
                    i += 1;
                }
                std::cmp::Ordering::Greater => {
                    vars.push(b.clone());
                    j += 1;
                }
                std::cmp::Ordering::Equal => {
                    vars.push((a.0.clone(), a.1 + b.1));
                    i += 1;
                    j += 1;
                }
            }
        }
        vars.extend_from_slice(&self.vars[i..]);
        vars.extend_from_slice(&other.vars[j..]);
        let mut z: Vec<ZKey> = self.z.iter().chain(other.z.iter()).cloned().collect();
        z.sort();
        Monomial { vars, z }
    }

    fn without_z(&self) -> Monomial {
        Monomial {
            vars: self.vars.clone(),
            z: Vec::new(),
        }
    }

    fn vars_string(&self) -> String {
        let parts: Vec<String> = self
            .vars
            .iter()
            .map(|(v, e)| if *e == 1 { v.to_string() } else { format!("{v}^{e}") })
            .collect();
        parts.join("·")
    }

    fn z_string(&self) -> String {
        let parts: Vec<String> = self.z.iter().map(|k| k.to_string()).collect();
        parts.join("·")
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let (v, z) = (self.vars_string(), self.z_string());
        match (v.is_empty(), z.is_empty()) {
            (true, true) => f.write_str("1"),
            (false, true) => f.write_str(&v),
            (true, false) => f.write_str(&z),
            (false, false) => write!(f, "{v}·{z}"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct RelPolynomial {
    terms: BTreeMap<Monomial, BigInt>,
}

impl RelPolynomial {
    pub fn zero() -> Self {
        RelPolynomial::default()
    }

    pub fn one() -> Self {
        RelPolynomial::constant(1)
    }

    pub fn constant(c: impl Into<BigInt>) -> Self {
        RelPolynomial::term(c, Monomial::default())
    }

    pub fn term(c: impl Into<BigInt>, m: Monomial) -> Self {
        let c = c.into();
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(m, c);
        }
        RelPolynomial { terms }
    }

    pub fn var(kind: VarKind, color: impl Into<Color>) -> Self {
        RelPolynomial::term(1, Monomial::new([(VariableId::new(kind, color), 1)], []))
    }

    /// The single symbol `z_[key]`.
    pub fn z(key: impl Into<ZKey>) -> Self {
        RelPolynomial::term(1, Monomial::new([], [key.into()]))
    }

    pub fn from_terms(terms: impl IntoIterator<Item = (Monomial, BigInt)>) -> Self {
        let mut p = RelPolynomial::zero();
        for (m, c) in terms {
            p.add_term(m, c);
        }
        p
    }

    pub fn add_term(&mut self, m: Monomial, c: BigInt) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &BigInt)> {
        self.terms.iter()
    }

    pub fn coefficient(&self, m: &Monomial) -> BigInt {
        self.terms.get(m).cloned().unwrap_or_default()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn max_total_degree(&self) -> u32 {
        self.terms.keys().map(Monomial::degree).max().unwrap_or(0)
    }

    /// True when every monomial carries exactly one z-symbol.
    pub fn is_z_linear(&self) -> bool {
        self.terms.keys().all(|m| m.z.len() == 1)
    }

    pub fn colors(&self) -> BTreeSet<Color> {
        self.terms
            .keys()
            .flat_map(|m| m.vars.iter().map(|(v, _)| v.color.clone()))
            .collect()
    }

    pub fn z_keys(&self) -> BTreeSet<ZKey> {
        self.terms.keys().flat_map(|m| m.z.iter().cloned()).collect()
    }

    pub fn scale(&self, c: &BigInt) -> Self {
        if c.is_zero() {
            return RelPolynomial::zero();
        }
        RelPolynomial {
            terms: self.terms.iter().map(|(m, k)| (m.clone(), k * c)).collect(),
        }
    }

    pub fn pow(&self, n: u32) -> Self {
        let mut acc = RelPolynomial::one();
        for _ in 0..n {
            acc = &acc * self;
        }
        acc
    }

    pub fn sum<'a>(ps: impl IntoIterator<Item = &'a RelPolynomial>) -> Self {
        let mut acc = RelPolynomial::zero();
        for p in ps {
            acc += p;
        }
        acc
    }

    /// Replaces every variable for which `image` returns a polynomial.
    pub fn substitute(&self, image: impl Fn(&VariableId) -> Option<RelPolynomial>) -> Self {
        let mut powers: HashMap<(VariableId, u32), Option<RelPolynomial>> = HashMap::new();
        let mut out = RelPolynomial::zero();
        for (m, c) in &self.terms {
            let mut kept = Vec::new();
            let mut factor = RelPolynomial::one();
            for (v, e) in &m.vars {
                let p = powers
                    .entry((v.clone(), *e))
                    .or_insert_with(|| image(v).map(|p| p.pow(*e)));
                match p {
                    Some(p) => factor = &factor * p,
                    None => kept.push((v.clone(), *e)),
                }
            }
            let rest = RelPolynomial::term(
                c.clone(),
                Monomial {
                    vars: kept,
                    z: m.z.clone(),
                },
            );
            out += &(&rest * &factor);
        }
        out
    }

    /// Applies a linear map on z-symbols: each monomial with exactly one
    /// symbol has it replaced by `image(key)`. Monomials without z pass
    /// through; monomials with several symbols are rejected.
    pub fn map_z_linear(&self, mut image: impl FnMut(&ZKey) -> RelPolynomial) -> Result<Self, PolyError> {
        let mut cache: HashMap<ZKey, RelPolynomial> = HashMap::new();
        let mut out = RelPolynomial::zero();
        for (m, c) in &self.terms {
            match m.z.len() {
                0 => out.add_term(m.clone(), c.clone()),
                1 => {
                    let key = &m.z[0];
                    if !cache.contains_key(key) {
                        let img = image(key);
                        cache.insert(key.clone(), img);
                    }
                    let img = &cache[key];
                    if img.is_zero() {
                        continue;
                    }
                    let rest = RelPolynomial::term(c.clone(), m.without_z());
                    out += &(&rest * img);
                }
                _ => return Err(PolyError::NotLinearInZ),
            }
        }
        Ok(out)
    }

    /// Replaces the z-multiset of every monomial by `merge(multiset)`.
    /// Monomials without z are left alone.
    pub fn map_z_multiset(&self, mut merge: impl FnMut(&[ZKey]) -> ZKey) -> Self {
        let mut cache: HashMap<Vec<ZKey>, ZKey> = HashMap::new();
        let mut out = RelPolynomial::zero();
        for (m, c) in &self.terms {
            if m.z.is_empty() {
                out.add_term(m.clone(), c.clone());
                continue;
            }
            let key = cache.entry(m.z.clone()).or_insert_with(|| merge(&m.z)).clone();
            out.add_term(
                Monomial {
                    vars: m.vars.clone(),
                    z: vec![key],
                },
                c.clone(),
            );
        }
        out
    }

    /// ψ-specialization: every z-symbol is replaced by a z-free image.
    pub fn specialize_psi(&self, psi: impl Fn(&PivotClassKey) -> Option<RelPolynomial>) -> Result<Self, PolyError> {
        if self.terms.keys().any(|m| m.z.len() > 1) {
            return Err(PolyError::NotLinearInZ);
        }
        let mut missing = None;
        let out = self.map_z_linear(|k| match psi(k) {
            Some(p) => p,
            None => {
                missing.get_or_insert_with(|| k.to_string());
                RelPolynomial::zero()
            }
        })?;
        match missing {
            Some(k) => Err(PolyError::MissingKey(k)),
            None => Ok(out),
        }
    }

    /// Terms in canonical print order as `(coefficient, variables, z)`.
    pub fn sorted_terms(&self) -> Vec<(BigInt, String, String)> {
        let mut out: Vec<(BigInt, String, String)> = self
            .terms
            .iter()
            .map(|(m, c)| (c.clone(), m.vars_string(), m.z_string()))
            .collect();
        out.sort_by(|a, b| (&a.1, &a.2).cmp(&(&b.1, &b.2)));
        out
    }
}

impl fmt::Display for RelPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        for (i, (c, v, z)) in self.sorted_terms().into_iter().enumerate() {
            let mono = match (v.is_empty(), z.is_empty()) {
                (true, true) => String::new(),
                (false, true) => v,
                (true, false) => z,
                (false, false) => format!("{v}·{z}"),
            };
            let neg = c.is_negative();
            let a = c.abs();
            let body = if mono.is_empty() {
                a.to_string()
            } else if a.is_one() {
                mono
            } else {
                format!("{a}·{mono}")
            };
            match (i, neg) {
                (0, false) => f.write_str(&body)?,
                (0, true) => write!(f, "-{body}")?,
                (_, false) => write!(f, " + {body}")?,
                (_, true) => write!(f, " - {body}")?,
            }
        }
        Ok(())
    }
}

impl AddAssign<&RelPolynomial> for RelPolynomial {
    fn add_assign(&mut self, rhs: &RelPolynomial) {
        for (m, c) in &rhs.terms {
            self.add_term(m.clone(), c.clone());
        }
    }
}

impl AddAssign for RelPolynomial {
    fn add_assign(&mut self, rhs: RelPolynomial) {
        if self.terms.len() < rhs.terms.len() {
            let lhs = std::mem::replace(self, rhs);
            *self += &lhs;
        } else {
            *self += &rhs;
        }
    }
}

impl Add for &RelPolynomial {
    type Output = RelPolynomial;
    fn add(self, rhs: &RelPolynomial) -> RelPolynomial {
        let mut out = self.clone();
        out += rhs;
        out
    }
}

impl Add for RelPolynomial {
    type Output = RelPolynomial;
    fn add(mut self, rhs: RelPolynomial) -> RelPolynomial {
        self += rhs;
        self
    }
}

impl Neg for &RelPolynomial {
    type Output = RelPolynomial;
    fn neg(self) -> RelPolynomial {
        RelPolynomial {
            terms: self.terms.iter().map(|(m, c)| (m.clone(), -c)).collect(),
        }
    }
}

impl Neg for RelPolynomial {
    type Output = RelPolynomial;
    fn neg(self) -> RelPolynomial {
        -&self
    }
}

impl Sub for &RelPolynomial {
    type Output = RelPolynomial;
    fn sub(self, rhs: &RelPolynomial) -> RelPolynomial {
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(m.clone(), -c);
        }
        out
    }
}

impl Sub for RelPolynomial {
    type Output = RelPolynomial;
    fn sub(self, rhs: RelPolynomial) -> RelPolynomial {
        &self - &rhs
    }
}

impl Mul for &RelPolynomial {
    type Output = RelPolynomial;
    fn mul(self, rhs: &RelPolynomial) -> RelPolynomial {
        let mut out: HashMap<Monomial, BigInt> = HashMap::new();
        for (a, ca) in &self.terms {
            for (b, cb) in &rhs.terms {
                *out.entry(a.mul(b)).or_default() += ca * cb;
            }
        }
        RelPolynomial {
            terms: out.into_iter().filter(|(_, c)| !c.is_zero()).collect(),
        }
    }
}

impl Mul for RelPolynomial {
    type Output = RelPolynomial;
    fn mul(self, rhs: RelPolynomial) -> RelPolynomial {
        &self * &rhs
    }
}

/// Numeric point on which both families of ideal generators vanish:
/// `X[c] = x[c] + β·y[c]` and `Y[c] = y[c] + α·x[c]` for every color.
#[derive(Clone, Debug)]
pub struct EvaluationPoint {
    pub x: BTreeMap<Color, BigInt>,
    pub y: BTreeMap<Color, BigInt>,
    pub alpha: BigInt,
    pub beta: BigInt,
    pub z: HashMap<ZKey, BigInt>,
    /// seed and bound used for values missing from the maps above
    pub fallback_seed: u64,
    pub bound: u64,
}

impl EvaluationPoint {
    pub fn new(alpha: impl Into<BigInt>, beta: impl Into<BigInt>) -> Self {
        EvaluationPoint {
            x: BTreeMap::new(),
            y: BTreeMap::new(),
            alpha: alpha.into(),
            beta: beta.into(),
            z: HashMap::new(),
            fallback_seed: 0,
            bound: 100,
        }
    }

    pub fn with_x(mut self, c: impl Into<Color>, v: impl Into<BigInt>) -> Self {
        self.x.insert(c.into(), v.into());
        self
    }

    pub fn with_y(mut self, c: impl Into<Color>, v: impl Into<BigInt>) -> Self {
        self.y.insert(c.into(), v.into());
        self
    }

    pub fn with_z(mut self, k: impl Into<ZKey>, v: impl Into<BigInt>) -> Self {
        self.z.insert(k.into(), v.into());
        self
    }

    fn fallback(&self, salt: &str, name: &str) -> BigInt {
        // FNV-1a over seed, salt and name, folded into [2, bound]
        let mut h: u64 = 0xcbf2_9ce4_8422_2325;
        let bytes = self
            .fallback_seed
            .to_le_bytes()
            .into_iter()
            .chain(salt.bytes())
            .chain(name.bytes());
        for b in bytes {
            h ^= u64::from(b);
            h = h.wrapping_mul(0x0100_0000_01b3);
        }
        let span = self.bound.max(2) - 1;
        BigInt::from(2 + h % span)
    }

    pub fn value(&self, v: &VariableId) -> BigInt {
        let x = self
            .x
            .get(&v.color)
            .cloned()
            .unwrap_or_else(|| self.fallback("x", v.color.as_str()));
        let y = self
            .y
            .get(&v.color)
            .cloned()
            .unwrap_or_else(|| self.fallback("y", v.color.as_str()));
        match v.kind {
            VarKind::SmallX => x,
            VarKind::SmallY => y,
            VarKind::BigX => x + &self.beta * y,
            VarKind::BigY => y + &self.alpha * x,
        }
    }

    pub fn z_value(&self, k: &ZKey) -> BigInt {
        self.z
            .get(k)
            .cloned()
            .unwrap_or_else(|| self.fallback("z", &k.to_string()))
    }
}

pub fn evaluate(p: &RelPolynomial, pt: &EvaluationPoint) -> BigInt {
    let mut vars: HashMap<&VariableId, BigInt> = HashMap::new();
    let mut zs: HashMap<&ZKey, BigInt> = HashMap::new();
    let mut total = BigInt::zero();
    for (m, c) in &p.terms {
        let mut t = c.clone();
        for (v, e) in &m.vars {
            let val = vars.entry(v).or_insert_with(|| pt.value(v));
            t *= num_traits::pow(val.clone(), *e as usize);
        }
        for k in &m.z {
            t *= &*zs.entry(k).or_insert_with(|| pt.z_value(k));
        }
        total += t;
    }
    total
}

/// Randomized equality test in the quotient by the ideal: `p - q` is
/// evaluated at `trials` seeded points that annihilate every generator.
pub fn equal_mod_ideal(p: &RelPolynomial, q: &RelPolynomial, trials: usize, seed: u64) -> bool {
    if p == q {
        return true;
    }
    let d = p - q;
    let bound = 10 * (1 + u64::from(p.max_total_degree().max(q.max_total_degree())));
    let b = bound as i64;
    let colors = d.colors();
    let keys = d.z_keys();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..trials.max(1) {
        let mut pt = EvaluationPoint::new(rng.gen_range(-b..=b), rng.gen_range(-b..=b));
        pt.fallback_seed = seed;
        pt.bound = bound;
        for c in &colors {
            pt.x.insert(c.clone(), rng.gen_range(-b..=b).into());
            pt.y.insert(c.clone(), rng.gen_range(-b..=b).into());
        }
        for k in &keys {
            pt.z.insert(k.clone(), rng.gen_range(-b..=b).into());
        }
        if !evaluate(&d, &pt).is_zero() {
            return false;
        }
    }
    true
}

#[cfg(test)]
pub(crate) mod tests {
    use super::*;
    use crate::graph::{ColoredMultigraph, Edge};
    use proptest::prelude::{any, prop_assert, prop_assert_eq, proptest};

    pub(crate) fn v(kind: VarKind, c: &str) -> RelPolynomial {
        RelPolynomial::var(kind, c)
    }

    fn zkey(g: ColoredMultigraph) -> ZKey {
        Arc::new(g.pivot_class_key())
    }

    fn bridge_key() -> ZKey {
        zkey(ColoredMultigraph::new([], [Edge::zero("h", 0, 1, "z0")]).unwrap())
    }

    fn point_key() -> ZKey {
        Arc::new(PivotClassKey::point())
    }

    fn generators(l: &str, m: &str) -> [RelPolynomial; 2] {
        use VarKind::*;
        let g1 = &(&(&v(BigX, l) * &v(SmallY, m)) - &(&v(BigX, m) * &v(SmallY, l)))
            - &(&(&v(SmallX, l) * &v(BigY, m)) - &(&v(SmallX, m) * &v(BigY, l)));
        let g2 = &(&(&v(SmallX, l) * &v(BigY, m)) - &(&v(SmallX, m) * &v(BigY, l)))
            - &(&(&v(SmallX, l) * &v(SmallY, m)) - &(&v(SmallX, m) * &v(SmallY, l)));
        [g1, g2]
    }

    #[test]
    fn generator_vanishes_at_worked_point() {
        let pt = EvaluationPoint::new(1, 2)
            .with_x("la", 2)
            .with_y("la", 3)
            .with_x("mu", 5)
            .with_y("mu", 7);
        let big_x = VariableId::new(VarKind::BigX, "la");
        assert_eq!(pt.value(&big_x), BigInt::from(8));
        assert_eq!(pt.value(&VariableId::new(VarKind::BigY, "mu")), BigInt::from(12));
        for g in generators("la", "mu") {
            assert!(evaluate(&g, &pt).is_zero());
        }
    }

    #[test]
    fn generators_vanish_at_random_points() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        let gens = generators("la", "mu");
        for _ in 0..100 {
            let mut pt = EvaluationPoint::new(rng.gen_range(-50..=50), rng.gen_range(-50..=50));
            for c in ["la", "mu"] {
                pt = pt.with_x(c, rng.gen_range(-50..=50)).with_y(c, rng.gen_range(-50..=50));
            }
            for g in &gens {
                assert!(evaluate(g, &pt).is_zero());
            }
        }
    }

    #[test]
    fn evaluation_basics() {
        let pt = EvaluationPoint::new(0, 0).with_x("la", 2).with_z(point_key(), 1);
        assert_eq!(evaluate(&RelPolynomial::constant(5), &pt), BigInt::from(5));
        let p = &v(VarKind::SmallX, "la") * &RelPolynomial::z(point_key());
        assert_eq!(evaluate(&p, &pt), BigInt::from(2));
    }

    #[test]
    fn equality_mod_ideal_examples() {
        use VarKind::*;
        let p = &(&v(BigX, "la") * &v(SmallY, "mu")) - &(&v(BigX, "mu") * &v(SmallY, "la"));
        let q = &(&v(SmallX, "la") * &v(SmallY, "mu")) - &(&v(SmallX, "mu") * &v(SmallY, "la"));
        assert!(equal_mod_ideal(&p, &q, 32, 1));
        assert!(!equal_mod_ideal(&v(SmallX, "la"), &v(SmallY, "la"), 32, 1));
        for seed in 0..5 {
            assert!(equal_mod_ideal(&p, &p, 1, seed));
        }
        for g in generators("a", "b") {
            let r = &p + &(&g * &RelPolynomial::z(bridge_key()));
            assert!(equal_mod_ideal(&p, &r, 8, 3));
        }
    }

    #[test]
    fn multiplication_keeps_all_z_symbols() {
        let a = &v(VarKind::SmallX, "la") * &RelPolynomial::z(point_key());
        let b = &v(VarKind::SmallY, "mu") * &RelPolynomial::z(bridge_key());
        let p = &a * &b;
        assert_eq!(p.to_string(), "x[la]·y[mu]·z{}·z{bridge(z0)}");
        assert!(!p.is_z_linear());
    }

    #[test]
    fn rendering() {
        use VarKind::*;
        let t = &(&v(BigX, "mu") - &v(SmallX, "mu")) * &RelPolynomial::z(bridge_key());
        assert_eq!(t.to_string(), "X[mu]·z{bridge(z0)} - x[mu]·z{bridge(z0)}");
        assert_eq!(RelPolynomial::zero().to_string(), "0");
        assert_eq!(v(BigX, "mu").pow(2).scale(&BigInt::from(-3)).to_string(), "-3·X[mu]^2");
        assert_eq!(RelPolynomial::constant(4).to_string(), "4");
    }

    #[test]
    fn psi_specialization() {
        let p = &(&v(VarKind::SmallX, "la") * &RelPolynomial::z(point_key()))
            + &(&v(VarKind::SmallY, "la") * &RelPolynomial::z(bridge_key()));
        let shadow = p.specialize_psi(|_| Some(RelPolynomial::one())).unwrap();
        assert_eq!(shadow, &v(VarKind::SmallX, "la") + &v(VarKind::SmallY, "la"));
        let only_point = p
            .specialize_psi(|k| Some(RelPolynomial::constant(i32::from(k.is_point()))))
            .unwrap();
        assert_eq!(only_point, v(VarKind::SmallX, "la"));
        assert_eq!(
            p.specialize_psi(|k| k.is_point().then(RelPolynomial::one)),
            Err(PolyError::MissingKey("z{bridge(z0)}".into()))
        );
        let two = &RelPolynomial::z(point_key()) * &RelPolynomial::z(bridge_key());
        assert_eq!(
            two.specialize_psi(|_| Some(RelPolynomial::one())),
            Err(PolyError::NotLinearInZ)
        );
    }

    #[test]
    fn substitution() {
        use VarKind::*;
        let p = &v(BigX, "la") * &v(BigY, "la");
        let q = p.substitute(|var| {
            (var.color.as_str() == "la").then(|| match var.kind {
                BigX => v(SmallX, "a"),
                _ => &v(SmallY, "b") + &RelPolynomial::one(),
            })
        });
        assert_eq!(q, &(&v(SmallX, "a") * &v(SmallY, "b")) + &v(SmallX, "a"));
        let untouched = v(SmallX, "mu").substitute(|var| (var.color.as_str() == "la").then(RelPolynomial::one));
        assert_eq!(untouched, v(SmallX, "mu"));
    }

    #[test]
    fn product_of_powers_identity() {
        // x_mu (prod Y_i - prod y_i) = (Y_mu - y_mu) sum_i x_i prod_{j<i} Y_j prod_{j>i} y_j
        use VarKind::*;
        let colors = ["c1", "c2", "c3", "c4"];
        for k in 1..=4 {
            let cs = &colors[..k];
            let prod = |kind| cs.iter().fold(RelPolynomial::one(), |a, c| &a * &v(kind, c));
            let lhs = &v(SmallX, "mu") * &(&prod(BigY) - &prod(SmallY));
            let mut sum = RelPolynomial::zero();
            for i in 0..k {
                let mut t = v(SmallX, cs[i]);
                for (j, c) in cs.iter().enumerate() {
                    if j < i {
                        t = &t * &v(BigY, c);
                    } else if j > i {
                        t = &t * &v(SmallY, c);
                    }
                }
                sum += &t;
            }
            let rhs = &(&v(BigY, "mu") - &v(SmallY, "mu")) * &sum;
            assert!(equal_mod_ideal(&lhs, &rhs, 32, k as u64), "k = {k}");
            assert_ne!(lhs, rhs);
        }
    }

    #[test]
    fn soundness_gauge() {
        use VarKind::*;
        let mut rng = ChaCha8Rng::seed_from_u64(99);
        let kinds = [BigX, BigY, SmallX, SmallY];
        let colors = ["la", "mu"];
        for _ in 0..50 {
            let [g, _] = generators("la", "mu");
            let base = random_poly(&mut rng);
            let p = &base + &g;
            let mut extra = RelPolynomial::constant(rng.gen_range(1..5));
            for _ in 0..rng.gen_range(1..4) {
                extra = &extra * &v(kinds[rng.gen_range(0..4)], colors[rng.gen_range(0..2)]);
            }
            let q = &base + &extra;
            assert!(!equal_mod_ideal(&p, &q, 32, rng.gen()), "{p} vs {q}");
        }
    }

    fn random_poly(rng: &mut ChaCha8Rng) -> RelPolynomial {
        use VarKind::*;
        let kinds = [BigX, BigY, SmallX, SmallY];
        let mut p = RelPolynomial::zero();
        for _ in 0..rng.gen_range(0..5) {
            let mut t = RelPolynomial::constant(rng.gen_range(-5..=5));
            for _ in 0..rng.gen_range(0..3) {
                t = &t * &v(kinds[rng.gen_range(0..4)], ["la", "mu"][rng.gen_range(0..2)]);
            }
            if rng.gen_bool(0.5) {
                t = &t * &RelPolynomial::z(if rng.gen_bool(0.5) { point_key() } else { bridge_key() });
            }
            p += &t;
        }
        p
    }

    proptest! {
        #[test]
        fn ring_axioms(s1 in any::<u64>(), s2 in any::<u64>(), s3 in any::<u64>()) {
            let a = random_poly(&mut ChaCha8Rng::seed_from_u64(s1));
            let b = random_poly(&mut ChaCha8Rng::seed_from_u64(s2));
            let c = random_poly(&mut ChaCha8Rng::seed_from_u64(s3));
            prop_assert_eq!(&a * &b, &b * &a);
            prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
            prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
            prop_assert_eq!(&(&a + &b) + &c, &a + &(&b + &c));
            prop_assert_eq!(&a + &RelPolynomial::zero(), a.clone());
            prop_assert!((&a - &a).is_zero());
        }
    }
}
