//! Independent reference computations used to check the engine.

use std::collections::{BTreeMap, HashMap};

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::graph::{ColoredMultigraph, VertexId};
use crate::poly::{RelPolynomial, VarKind};

/// Coefficients of a two-variable polynomial, keyed by `(deg x, deg y)`.
pub type Bivariate = BTreeMap<(u32, u32), BigInt>;

/// Number of spanning trees via the matrix-tree theorem (fraction-free
/// Gaussian elimination on a reduced Laplacian). Loops are ignored.
pub fn spanning_tree_count(g: &ColoredMultigraph) -> BigInt {
    if !g.is_connected() {
        return BigInt::zero();
    }
    let index: HashMap<VertexId, usize> = g.vertices().iter().enumerate().map(|(i, &v)| (v, i)).collect();
    let n = index.len();
    if n <= 1 {
        return BigInt::one();
    }
    let mut lap = vec![vec![BigInt::zero(); n]; n];
    for e in g.edges().iter().filter(|e| !e.is_loop()) {
        let (a, b) = (index[&e.tail], index[&e.head]);
        lap[a][a] += 1;
        lap[b][b] += 1;
        lap[a][b] -= 1;
        lap[b][a] -= 1;
    }
    let mut m: Vec<Vec<BigInt>> = lap[1..].iter().map(|row| row[1..].to_vec()).collect();
    bareiss_det(&mut m)
}

fn bareiss_det(m: &mut [Vec<BigInt>]) -> BigInt {
    let n = m.len();
    let mut sign = BigInt::one();
    let mut prev = BigInt::one();
    for k in 0..n {
        if m[k][k].is_zero() {
            let Some(p) = (k + 1..n).find(|&i| !m[i][k].is_zero()) else {
                return BigInt::zero();
            };
            m.swap(k, p);
            sign = -sign;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let v = &m[i][j] * &m[k][k] - &m[i][k] * &m[k][j];
                m[i][j] = v / &prev;
            }
        }
        prev = m[k][k].clone();
    }
    sign * &m[n - 1][n - 1]
}

/// Classical Tutte polynomial by the rank-nullity expansion
/// `T(x, y) = Σ_A (x-1)^(r(E)-r(A)) (y-1)^(|A|-r(A))` over every edge subset.
pub fn classical_tutte(g: &ColoredMultigraph) -> Bivariate {
    let edges = g.edges();
    let n = g.vertex_count() as u32;
    let rank = |mask: u64| -> u32 {
        n - g
            .components_with(|e| {
                let i = edges.iter().position(|f| f.id == e.id).expect("edge");
                mask >> i & 1 == 1
            })
            .len() as u32
    };
    let full = rank((1u64 << edges.len()) - 1);
    // (x-1)^a (y-1)^b accumulated as a sum over binomial expansions
    let mut out: Bivariate = BTreeMap::new();
    for mask in 0u64..1 << edges.len() {
        let r = rank(mask);
        let a = full - r;
        let b = mask.count_ones() - r;
        for i in 0..=a {
            for j in 0..=b {
                let mut c = binomial(a, i) * binomial(b, j);
                if (a - i + b - j) % 2 == 1 {
                    c = -c;
                }
                *out.entry((i, j)).or_default() += c;
            }
        }
    }
    out.retain(|_, c| !c.is_zero());
    out
}

fn binomial(n: u32, k: u32) -> BigInt {
    let mut c = BigInt::one();
    for i in 0..k {
        c = c * (n - i) / (i + 1);
    }
    c
}

/// Specialization `x = y = 1`, `X -> x`, `Y -> y`, `z_[•] -> 1` of a
/// universal polynomial without zero edges. Returns `None` if some other
/// z-symbol occurs.
pub fn classical_from_universal(p: &RelPolynomial) -> Option<Bivariate> {
    let mut out: Bivariate = BTreeMap::new();
    for (m, c) in p.terms() {
        if m.z().iter().any(|k| !k.is_point()) {
            return None;
        }
        let mut deg = (0, 0);
        for (v, e) in m.vars() {
            match v.kind {
                VarKind::BigX => deg.0 += e,
                VarKind::BigY => deg.1 += e,
                _ => {}
            }
        }
        *out.entry(deg).or_default() += c;
    }
    out.retain(|_, c| !c.is_zero());
    Some(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::Edge;

    #[test]
    fn small_tree_counts() {
        let k4 = ColoredMultigraph::new(
            [],
            (0..4u32)
                .flat_map(|a| (a + 1..4).map(move |b| (a, b)))
                .map(|(a, b)| Edge::regular(&format!("{a}{b}"), a, b, "c")),
        )
        .unwrap();
        assert_eq!(spanning_tree_count(&k4), BigInt::from(16));
        let theta = ColoredMultigraph::new(
            [],
            [
                Edge::regular("a", 0, 1, "c"),
                Edge::regular("b", 0, 1, "c"),
                Edge::regular("c", 0, 1, "c"),
                Edge::regular("l", 1, 1, "c"),
            ],
        )
        .unwrap();
        assert_eq!(spanning_tree_count(&theta), BigInt::from(3));
    }

    #[test]
    fn triangle_tutte() {
        let t = ColoredMultigraph::new(
            [],
            [
                Edge::regular("a", 0, 1, "c"),
                Edge::regular("b", 1, 2, "c"),
                Edge::regular("c", 2, 0, "c"),
            ],
        )
        .unwrap();
        // x^2 + x + y
        let want: Bivariate = [((2, 0), 1.into()), ((1, 0), 1.into()), ((0, 1), 1.into())].into();
        assert_eq!(classical_tutte(&t), want);
    }
}
