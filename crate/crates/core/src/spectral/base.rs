use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};

use super::bose_mesner::SpectralData;
use super::spectrum::{poly_apply_i128, poly_from_roots};
use crate::drg::{check_distance_regular, distance_data, DistanceData, Graph, IntersectionNumbers};
use crate::error::{Error, Result};
use crate::ratlinalg::{rat, RatMatrix, Rational, SparseIntMatrix, Subspace};
use crate::report::Report;

/// Everything attached to a base vertex `x`: the shells `Γ_i(x)`, the dual
/// idempotents `E*_i`, the dual distance matrices `A*_i` and `θ*_i`, next to
/// the global `A`, `E_i`, `θ_i`.
///
/// All the diagonal matrices are stored by their value on each shell.
#[derive(Clone, Debug)]
pub struct BaseContext {
    graph: Graph,
    dd: DistanceData,
    pn: IntersectionNumbers,
    sd: SpectralData,
    x: usize,
    adj: SparseIntMatrix,
    shells: Vec<Vec<usize>>,
    /// `dual[i][l] = (A*_i)_{yy}` for `y ∈ Γ_l(x)`.
    dual: Vec<Vec<Rational>>,
    /// `Π_{j≠i}(λ - θ_j)`, low to high, and its value at `θ_i`.
    lagrange: Vec<(Vec<i64>, i64)>,
}

impl BaseContext {
    /// Certifies distance-regularity and the Q-polynomial property, then
    /// builds the context at `x`.
    pub fn from_graph(graph: Graph, x: usize) -> Result<Self> {
        let dd = distance_data(&graph)?;
        let pn =
            check_distance_regular(&dd).map_err(|w| Error::NotDistanceRegular(w.to_string()))?;
        let sd = SpectralData::new(&graph, &dd, &pn)?;
        Self::new(graph, dd, pn, sd, x)
    }

    /// The dual eigenvalues are read from the column of `|X| E_i` at `x`,
    /// which must be constant on each shell, and must be distinct.
    pub fn new(
        graph: Graph,
        dd: DistanceData,
        pn: IntersectionNumbers,
        sd: SpectralData,
        x: usize,
    ) -> Result<Self> {
        let n = graph.order();
        if x >= n {
            return Err(Error::Input(format!("base vertex {x} out of range")));
        }
        if !sd.is_q_polynomial() {
            return Err(Error::NotQPolynomial(
                "no ordering of the idempotents has the Krein pattern".into(),
            ));
        }
        let d = dd.diameter();
        let adj = graph.adjacency().to_sparse();
        let shells: Vec<Vec<usize>> = (0..=d).map(|i| dd.shell(x, i)).collect();
        let lagrange: Vec<(Vec<i64>, i64)> = (0..=d)
            .map(|i| {
                let ti = sd.theta(i);
                let others: Vec<i64> = (0..=d).filter(|&j| j != i).map(|j| sd.theta(j)).collect();
                (
                    poly_from_roots(&others),
                    others.iter().map(|t| ti - t).product(),
                )
            })
            .collect();
        let nr = rat(n as i64);
        let mut dual = Vec::with_capacity(d + 1);
        for (i, (coeffs, c)) in lagrange.iter().enumerate() {
            let mut e = vec![0i128; n];
            e[x] = 1;
            let col = poly_apply_i128(&adj, coeffs, &e)
                .ok_or_else(|| Error::Unsupported("idempotent entries overflow".into()))?;
            let mut row = Vec::with_capacity(d + 1);
            for (l, shell) in shells.iter().enumerate() {
                let v = col[shell[0]];
                if shell.iter().any(|&y| col[y] != v) {
                    return Err(Error::NotQPolynomial(format!(
                        "diagonal of A*_{i} not constant on Γ_{l}(x)"
                    )));
                }
                row.push(Rational::new(BigInt::from(v), BigInt::from(*c)) * &nr);
            }
            dual.push(row);
        }
        if d >= 1 {
            let ts = &dual[1];
            if (0..ts.len()).any(|i| ts[..i].contains(&ts[i])) {
                return Err(Error::NotQPolynomial(
                    "dual eigenvalues are not distinct".into(),
                ));
            }
        }
        Ok(Self {
            graph,
            dd,
            pn,
            sd,
            x,
            adj,
            shells,
            dual,
            lagrange,
        })
    }

    pub fn graph(&self) -> &Graph {
        &self.graph
    }

    pub fn distances(&self) -> &DistanceData {
        &self.dd
    }

    pub fn intersection_numbers(&self) -> &IntersectionNumbers {
        &self.pn
    }

    pub fn spectral(&self) -> &SpectralData {
        &self.sd
    }

    pub fn base(&self) -> usize {
        self.x
    }

    pub fn order(&self) -> usize {
        self.graph.order()
    }

    pub fn diameter(&self) -> usize {
        self.dd.diameter()
    }

    /// `Γ_i(x)` in vertex order.
    pub fn shell(&self, i: usize) -> &[usize] {
        &self.shells[i]
    }

    /// `∂(x, y)`.
    pub fn shell_of(&self, y: usize) -> usize {
        self.dd.dist(self.x, y)
    }

    pub fn theta(&self, i: usize) -> i64 {
        self.sd.theta(i)
    }

    pub fn theta_star(&self, i: usize) -> &Rational {
        &self.dual[1][i]
    }

    pub fn theta_stars(&self) -> &[Rational] {
        &self.dual[1]
    }

    /// `(A*_i)_{yy}` for `y ∈ Γ_l(x)`.
    pub fn dual_diag(&self, i: usize, l: usize) -> &Rational {
        &self.dual[i][l]
    }

    pub fn adjacency(&self) -> &SparseIntMatrix {
        &self.adj
    }

    pub fn apply_a(&self, v: &[Rational]) -> Vec<Rational> {
        self.adj.mul_rat(v)
    }

    pub fn apply_astar(&self, v: &[Rational]) -> Vec<Rational> {
        self.apply_astar_i(1, v)
    }

    pub fn apply_astar_i(&self, i: usize, v: &[Rational]) -> Vec<Rational> {
        v.iter()
            .enumerate()
            .map(|(y, c)| c * &self.dual[i][self.shell_of(y)])
            .collect()
    }

    pub fn apply_estar(&self, i: usize, v: &[Rational]) -> Vec<Rational> {
        v.iter()
            .enumerate()
            .map(|(y, c)| {
                if self.shell_of(y) == i {
                    c.clone()
                } else {
                    Rational::zero()
                }
            })
            .collect()
    }

    /// `A_i v`.
    pub fn apply_a_dist(&self, i: usize, v: &[Rational]) -> Vec<Rational> {
        (0..self.order())
            .map(|y| {
                self.dd
                    .row(y)
                    .iter()
                    .zip(v)
                    .filter(|(&l, c)| l as usize == i && !c.is_zero())
                    .map(|(_, c)| c)
                    .sum()
            })
            .collect()
    }

    /// `p(A) v` with `p` given by integer coefficients low to high.
    pub fn apply_poly(&self, coeffs: &[i64], v: &[Rational]) -> Vec<Rational> {
        if let Some((ints, den)) = clear_denominators(v) {
            if let Some(out) = poly_apply_i128(&self.adj, coeffs, &ints) {
                return out
                    .into_iter()
                    .map(|c| Rational::new(BigInt::from(c), den.clone()))
                    .collect();
            }
        }
        let mut acc = vec![Rational::zero(); v.len()];
        for &c in coeffs.iter().rev() {
            acc = self.adj.mul_rat(&acc);
            let c = rat(c);
            for (a, b) in acc.iter_mut().zip(v) {
                *a += &c * b;
            }
        }
        acc
    }

    /// `E_i v`, by the Lagrange polynomial.
    pub fn apply_e(&self, i: usize, v: &[Rational]) -> Vec<Rational> {
        let (coeffs, c) = &self.lagrange[i];
        let c = rat(*c);
        self.apply_poly(coeffs, v)
            .into_iter()
            .map(|x| x / &c)
            .collect()
    }

    /// `(E_i)_{yz}` scaled by `Π_{j≠i}(θ_i - θ_j)` is an integer matrix;
    /// this returns that polynomial and scale.
    pub fn lagrange_poly(&self, i: usize) -> (&[i64], i64) {
        (&self.lagrange[i].0, self.lagrange[i].1)
    }

    /// `E*_i V` as a coordinate subspace.
    pub fn estar_space(&self, i: usize) -> Subspace {
        Subspace::coordinate(self.order(), self.shells[i].iter().copied())
    }

    pub fn estar_matrix(&self, i: usize) -> RatMatrix {
        self.diag_matrix(|l| {
            if l == i {
                Rational::one()
            } else {
                Rational::zero()
            }
        })
    }

    pub fn astar_matrix(&self, i: usize) -> RatMatrix {
        self.diag_matrix(|l| self.dual[i][l].clone())
    }

    fn diag_matrix(&self, f: impl Fn(usize) -> Rational) -> RatMatrix {
        let n = self.order();
        let mut m = RatMatrix::zeros(n, n);
        for y in 0..n {
            m.set(y, y, f(self.shell_of(y)));
        }
        m
    }
}

/// `v = ints / den` with integer `ints`, when the scaled entries fit `i128`.
fn clear_denominators(v: &[Rational]) -> Option<(Vec<i128>, BigInt)> {
    let den = v.iter().fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
    let ints = v
        .iter()
        .map(|c| (c.numer() * (&den / c.denom())).to_i128())
        .collect::<Option<Vec<_>>>()?;
    Some((ints, den))
}

/// `census[(l*w + a)*w + b] = #{(y,z) : ∂(y,z)=l, ∂(x,y)=a, ∂(x,z)=b}`.
fn triple_census(ctx: &BaseContext) -> Vec<i64> {
    let w = ctx.diameter() + 1;
    let mut t = vec![0i64; w * w * w];
    for y in 0..ctx.order() {
        let a = ctx.shell_of(y);
        for (z, &l) in ctx.dd.row(y).iter().enumerate() {
            t[(l as usize * w + a) * w + ctx.shell_of(z)] += 1;
        }
    }
    t
}

/// The triple-product vanishing patterns, invertibility of `A_D` and `A*_D`,
/// and the dual-side identities for the base vertex.
///
/// A triple product `E*_i M E*_j` with `M = A_l` is zero exactly when no pair
/// at distance `l` straddles `Γ_i(x)`, `Γ_j(x)`. For `E_i M* E_j` the squared
/// Frobenius norm `trace(E_i M* E_j M*)` is summed over the same census.
pub fn verify_algebra_relations(ctx: &BaseContext) -> Report {
    let mut rep = Report::new();
    let d = ctx.diameter();
    let w = d + 1;
    let n = ctx.order();
    let nr = rat(n as i64);
    let census = triple_census(ctx);
    let cen = |l: usize, a: usize, b: usize| census[(l * w + a) * w + b];
    let sd = &ctx.sd;

    let pattern = |name: &str,
                   zero: &dyn Fn(usize, usize) -> bool,
                   expect_zero: &dyn Fn(usize, usize) -> Option<bool>| {
        let mut bad = Vec::new();
        for i in 0..w {
            for j in 0..w {
                if let Some(ez) = expect_zero(i, j) {
                    if zero(i, j) != ez {
                        bad.push(format!("({i},{j})"));
                    }
                }
            }
        }
        (name.to_string(), bad)
    };
    let tridiag = |i: usize, j: usize| (i != j).then_some(i.abs_diff(j) > 1);
    let antidiag = |i: usize, j: usize| match (i + j).cmp(&d) {
        std::cmp::Ordering::Less => Some(true),
        std::cmp::Ordering::Equal => Some(false),
        std::cmp::Ordering::Greater => None,
    };
    let dual_norm = |m: usize, i: usize, j: usize| -> Rational {
        let mut s = Rational::zero();
        for l in 0..w {
            let pij = sd.profile(i, l) * sd.profile(j, l);
            if pij.is_zero() {
                continue;
            }
            for a in 0..w {
                for b in 0..w {
                    let c = cen(l, a, b);
                    if c != 0 {
                        s += &pij * &ctx.dual[m][a] * &ctx.dual[m][b] * rat(c);
                    }
                }
            }
        }
        s
    };
    let checks = [
        pattern(
            "E*_i A E*_j = 0 iff |i-j| > 1",
            &|i, j| cen(1, i, j) == 0,
            &tridiag,
        ),
        pattern(
            "E_i A* E_j = 0 iff |i-j| > 1",
            &|i, j| dual_norm(1, i, j).is_zero(),
            &tridiag,
        ),
        pattern(
            "E*_i A_D E*_j = 0 iff i+j < D",
            &|i, j| cen(d, i, j) == 0,
            &antidiag,
        ),
        pattern(
            "E_i A*_D E_j = 0 iff i+j < D",
            &|i, j| dual_norm(d, i, j).is_zero(),
            &antidiag,
        ),
    ];
    for (name, bad) in checks {
        rep.record(name, bad.is_empty(), bad.join(" "));
    }

    // A_D acts on E_hV as k_D ω_h(D) / ω_h(0).
    let eig: Vec<Rational> = (0..w)
        .map(|h| rat(ctx.pn.k(d)) * sd.profile(h, d) / sd.profile(h, 0))
        .collect();
    rep.record("A_D invertible", eig.iter().all(|e| !e.is_zero()), "");
    if n <= 600 {
        rep.record("A_D full rank", ctx.dd.a_matrix(d).rank() == n, "");
    } else {
        rep.skip("A_D full rank", "more than 600 vertices");
    }
    rep.record(
        "A*_D invertible",
        ctx.dual[d].iter().all(|e| !e.is_zero()),
        "",
    );

    let sum_ok = (0..w).all(|l| {
        let s: Rational = (0..w).map(|i| ctx.dual[i][l].clone()).sum();
        s == if l == 0 { nr.clone() } else { Rational::zero() }
    });
    rep.record("sum A*_i = |X| E*_0", sum_ok, "");
    let mut bad = Vec::new();
    for i in 0..w {
        for j in 0..w {
            for l in 0..w {
                let rhs: Rational = (0..w).map(|h| sd.krein(h, i, j) * &ctx.dual[h][l]).sum();
                if &ctx.dual[i][l] * &ctx.dual[j][l] != rhs {
                    bad.push(format!("({i},{j}) on Γ_{l}"));
                }
            }
        }
    }
    rep.record("A*_i A*_j = Σ q^h_ij A*_h", bad.is_empty(), bad.join(" "));
    rep.record(
        "θ*_0 = m_1",
        d == 0 || ctx.dual[1][0] == rat(sd.mult(1) as i64),
        "",
    );
    if let Some(dp) = ctx.graph.dual_polar() {
        let bad: Vec<String> = (0..w)
            .filter(|&i| ctx.dual[1][i] != dp.params.theta_star(i))
            .map(|i| {
                format!(
                    "θ*_{i} = {}, closed form {}",
                    ctx.dual[1][i],
                    dp.params.theta_star(i)
                )
            })
            .collect();
        rep.record("θ*_i closed form", bad.is_empty(), bad.join("; "));
        let bad: Vec<usize> = (0..w)
            .filter(|&i| sd.theta(i) != dp.params.theta(i))
            .collect();
        rep.require("θ_i closed form", &bad);
    }
    rep
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::drg::{build_family, DualPolarKind, Family};
    use crate::ratlinalg::{frac, ratv};

    fn ctx(f: Family) -> BaseContext {
        BaseContext::from_graph(build_family(&f).unwrap(), 0).unwrap()
    }

    #[test]
    fn dual_eigenvalues() {
        let c = ctx(Family::DualPolar {
            kind: DualPolarKind::C,
            d: 2,
            q: 2,
        });
        assert_eq!(c.theta_stars(), &[rat(9), frac(3, 2), frac(-9, 4)]);
        let rep = verify_algebra_relations(&c);
        assert!(rep.passed(), "{rep:?}");
        let h = ctx(Family::Hypercube { d: 3 });
        assert_eq!(h.theta_stars(), &ratv(&[3, 1, -1, -3])[..]);
        assert!(verify_algebra_relations(&h).passed());
        assert_eq!(h.distances().a_matrix(3).rank(), 8);
    }

    #[test]
    fn vector_ops_match_dense() {
        // Oracle: dense E_i and A*_i against the vector operations.
        let c = ctx(Family::DualPolar {
            kind: DualPolarKind::C,
            d: 2,
            q: 2,
        });
        let v: Vec<Rational> = (0..15).map(|i| frac(i * i - 3, 2)).collect();
        for i in 0..3 {
            let e = c.spectral().idempotent_matrix(i, c.distances());
            assert_eq!(c.apply_e(i, &v), e.mul_vec(&v));
            assert_eq!(c.apply_astar_i(i, &v), c.astar_matrix(i).mul_vec(&v));
            assert_eq!(
                c.apply_a_dist(i, &v),
                c.distances().a_matrix(i).to_rat().mul_vec(&v)
            );
        }
        let mut diag = RatMatrix::zeros(15, 15);
        for i in 0..3 {
            diag = &diag + &c.estar_matrix(i);
        }
        assert_eq!(diag, RatMatrix::identity(15));
    }

    #[test]
    fn non_q_polynomial_is_rejected() {
        // Line graph of the Petersen graph: distance-regular with integral
        // spectrum {4, 2, -1, -2}, but no Q-polynomial ordering.
        let pairs: Vec<(usize, usize)> = (0..5)
            .flat_map(|a| (a + 1..5).map(move |b| (a, b)))
            .collect();
        let petersen: Vec<(usize, usize)> = (0..10)
            .flat_map(|u| (u + 1..10).map(move |v| (u, v)))
            .filter(|&(u, v)| {
                let (a, b) = (pairs[u], pairs[v]);
                a.0 != b.0 && a.0 != b.1 && a.1 != b.0 && a.1 != b.1
            })
            .collect();
        let line: Vec<(usize, usize)> = (0..15)
            .flat_map(|e| (e + 1..15).map(move |f| (e, f)))
            .filter(|&(e, f)| {
                let (a, b) = (petersen[e], petersen[f]);
                a.0 == b.0 || a.0 == b.1 || a.1 == b.0 || a.1 == b.1
            })
            .collect();
        let g = Graph::from_edges(
            Family::Custom {
                name: "L(P)".into(),
            },
            (0..15).map(|i| i.into()).collect(),
            &line,
        )
        .unwrap();
        let dd = distance_data(&g).unwrap();
        let pn = check_distance_regular(&dd).unwrap();
        let sd = SpectralData::new(&g, &dd, &pn).unwrap();
        assert_eq!(sd.orderings().len(), 0);
        assert!(matches!(
            BaseContext::from_graph(g, 0),
            Err(Error::NotQPolynomial(_))
        ));
    }
}
