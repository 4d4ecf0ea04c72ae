use num_traits::{One, Signed, Zero};

use super::spectrum::{integer_spectrum, poly_apply_i128, poly_from_roots, Spectrum};
use crate::drg::{DistanceData, Family, Graph, IntersectionNumbers};
use crate::error::{Error, Result};
use crate::ratlinalg::{rat, IntMatrix, RatMatrix, Rational};
use crate::report::Report;

/// Dense products are used to re-verify the Bose-Mesner identities up to
/// this many vertices; above it only the structure-constant check runs.
pub const DENSE_LIMIT: usize = 400;

/// Primitive idempotents by Lagrange interpolation, as dense matrices.
pub fn primitive_idempotents(a: &IntMatrix, theta: &[i64]) -> Result<Vec<RatMatrix>> {
    for (i, t) in theta.iter().enumerate() {
        if theta[..i].contains(t) {
            return Err(Error::RepeatedEigenvalue(t.to_string()));
        }
    }
    let (numer, denom) = lagrange_numerators(a, theta);
    Ok(numer
        .iter()
        .zip(denom)
        .map(|(p, c)| p.to_rat().scale(&Rational::new(1.into(), c.into())))
        .collect())
}

/// `P_i = Π_{j≠i}(A - θ_j I)` and `c_i = Π_{j≠i}(θ_i - θ_j)`, so `E_i = P_i / c_i`.
fn lagrange_numerators(a: &IntMatrix, theta: &[i64]) -> (Vec<IntMatrix>, Vec<i64>) {
    let n = a.size();
    theta
        .iter()
        .enumerate()
        .map(|(i, &ti)| {
            let mut p = IntMatrix::identity(n);
            let mut c = 1i64;
            for (j, &tj) in theta.iter().enumerate() {
                if j != i {
                    p = p.mul(&a.shift(tj));
                    c *= ti - tj;
                }
            }
            (p, c)
        })
        .unzip()
}

/// The Bose-Mesner data of a distance-regular graph, in a fixed ordering of
/// the eigenvalues (the Q-polynomial one when it exists).
///
/// Each `E_i` lies in the span of the distance matrices, so it is stored by
/// its profile: `profile[i][l] = (E_i)_{yz}` for any `y, z` at distance `l`.
#[derive(Clone, Debug)]
pub struct SpectralData {
    order: usize,
    diameter: usize,
    theta: Vec<i64>,
    mult: Vec<usize>,
    /// `(c_i (E_i)_{yz})` by distance, with `c_i` below; integers.
    numer: Vec<Vec<i64>>,
    denom: Vec<i64>,
    profile: Vec<Vec<Rational>>,
    krein: Vec<Rational>,
    orderings: Vec<Vec<i64>>,
    q_polynomial: bool,
}

impl SpectralData {
    /// Spectrum, idempotent profiles, Krein parameters and Q-polynomial
    /// orderings. The family's canonical ordering is used when the family
    /// provides one; otherwise the first ordering found.
    pub fn new(g: &Graph, dd: &DistanceData, pn: &IntersectionNumbers) -> Result<Self> {
        let n = g.order();
        let d = dd.diameter();
        let a = g.adjacency();
        let Spectrum {
            eigenvalues,
            multiplicities,
        } = integer_spectrum(&a)?;
        if eigenvalues.len() != d + 1 {
            return Err(Error::Certification(format!(
                "{} distinct eigenvalues for diameter {d}",
                eigenvalues.len()
            )));
        }
        let sparse = a.to_sparse();
        let shells: Vec<usize> = (0..n).map(|y| dd.dist(0, y)).collect();
        let mut numer = Vec::new();
        let mut denom = Vec::new();
        for (i, &ti) in eigenvalues.iter().enumerate() {
            let others: Vec<i64> = eigenvalues
                .iter()
                .enumerate()
                .filter(|&(j, _)| j != i)
                .map(|(_, &t)| t)
                .collect();
            let mut e = vec![0i128; n];
            e[0] = 1;
            let col = poly_apply_i128(&sparse, &poly_from_roots(&others), &e)
                .ok_or_else(|| Error::Unsupported("idempotent entries overflow".into()))?;
            let mut prof: Vec<Option<i128>> = vec![None; d + 1];
            for (y, &v) in col.iter().enumerate() {
                match prof[shells[y]] {
                    None => prof[shells[y]] = Some(v),
                    Some(w) if w != v => {
                        return Err(Error::Certification(format!(
                            "idempotent {i} not constant on distance {}",
                            shells[y]
                        )))
                    }
                    _ => {}
                }
            }
            numer.push(
                prof.into_iter()
                    .map(|v| i64::try_from(v.unwrap_or(0)).expect("entry fits"))
                    .collect(),
            );
            denom.push(others.iter().map(|&t| ti - t).product());
        }
        let profile: Vec<Vec<Rational>> = numer
            .iter()
            .zip(&denom)
            .map(|(row, &c): (&Vec<i64>, &i64)| {
                row.iter()
                    .map(|&v| Rational::new(v.into(), c.into()))
                    .collect()
            })
            .collect();
        let valency: Vec<i64> = (0..=d).map(|l| pn.k(l)).collect();
        let krein = krein_parameters(&profile, &valency, n, &multiplicities)?;

        let found = q_poly_orderings(&krein, d);
        let as_theta = |o: &Vec<usize>| o.iter().map(|&i| eigenvalues[i]).collect::<Vec<i64>>();
        let orderings: Vec<Vec<i64>> = found.iter().map(as_theta).collect();
        let chosen = match canonical_theta(g.family(), d) {
            Some(canon) => {
                if !orderings.contains(&canon) {
                    return Err(Error::NotQPolynomial(format!(
                        "canonical ordering {canon:?} fails the Krein pattern"
                    )));
                }
                Some(
                    canon
                        .iter()
                        .map(|t| eigenvalues.iter().position(|e| e == t).expect("eigenvalue"))
                        .collect(),
                )
            }
            None => found.first().cloned(),
        };
        let q_polynomial = chosen.is_some();
        let perm: Vec<usize> = chosen.unwrap_or_else(|| (0..=d).collect());
        let w = d + 1;
        let mut kr = vec![Rational::zero(); w * w * w];
        for h in 0..w {
            for i in 0..w {
                for j in 0..w {
                    kr[(h * w + i) * w + j] = krein[(perm[h] * w + perm[i]) * w + perm[j]].clone();
                }
            }
        }
        Ok(Self {
            order: n,
            diameter: d,
            theta: perm.iter().map(|&i| eigenvalues[i]).collect(),
            mult: perm.iter().map(|&i| multiplicities[i]).collect(),
            numer: perm.iter().map(|&i| numer[i].clone()).collect(),
            denom: perm.iter().map(|&i| denom[i]).collect(),
            profile: perm.iter().map(|&i| profile[i].clone()).collect(),
            krein: kr,
            orderings,
            q_polynomial,
        })
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn diameter(&self) -> usize {
        self.diameter
    }

    pub fn theta(&self, i: usize) -> i64 {
        self.theta[i]
    }

    pub fn thetas(&self) -> &[i64] {
        &self.theta
    }

    pub fn mult(&self, i: usize) -> usize {
        self.mult[i]
    }

    pub fn multiplicities(&self) -> &[usize] {
        &self.mult
    }

    /// `(E_i)_{yz}` for `∂(y,z) = l`.
    pub fn profile(&self, i: usize, l: usize) -> &Rational {
        &self.profile[i][l]
    }

    /// Integer numerator profile of `E_i` and its denominator.
    pub fn lagrange(&self, i: usize) -> (&[i64], i64) {
        (&self.numer[i], self.denom[i])
    }

    pub fn krein(&self, h: usize, i: usize, j: usize) -> &Rational {
        let w = self.diameter + 1;
        &self.krein[(h * w + i) * w + j]
    }

    /// Every valid Q-polynomial ordering, as eigenvalue sequences.
    pub fn orderings(&self) -> &[Vec<i64>] {
        &self.orderings
    }

    pub fn is_q_polynomial(&self) -> bool {
        self.q_polynomial
    }

    /// `zero[h][i][j]` is true when `q^h_{ij} = 0`.
    pub fn krein_zero_pattern(&self) -> Vec<Vec<Vec<bool>>> {
        let w = self.diameter + 1;
        (0..w)
            .map(|h| {
                (0..w)
                    .map(|i| (0..w).map(|j| self.krein(h, i, j).is_zero()).collect())
                    .collect()
            })
            .collect()
    }

    /// Dense `E_i`.
    pub fn idempotent_matrix(&self, i: usize, dd: &DistanceData) -> RatMatrix {
        let n = self.order;
        let mut m = RatMatrix::zeros(n, n);
        for y in 0..n {
            for z in 0..n {
                m.set(y, z, self.profile[i][dd.dist(y, z)].clone());
            }
        }
        m
    }

    /// Dense `c_i E_i` as an integer matrix.
    pub fn lagrange_matrix(&self, i: usize, dd: &DistanceData) -> IntMatrix {
        IntMatrix::from_fn(self.order, |y, z| self.numer[i][dd.dist(y, z)])
    }
}

/// `q^h_{ij} = |X|^2 Σ_l k_l ω_i(l) ω_j(l) ω_h(l) / m_h`, which is
/// `|X| trace((E_i∘E_j)E_h) / m_h` written on profiles. Fails on a negative
/// value.
pub fn krein_parameters(
    profile: &[Vec<Rational>],
    valency: &[i64],
    n: usize,
    mult: &[usize],
) -> Result<Vec<Rational>> {
    let w = profile.len();
    let nn = rat(n as i64) * rat(n as i64);
    let mut out = vec![Rational::zero(); w * w * w];
    for h in 0..w {
        for i in 0..w {
            for j in 0..w {
                let s: Rational = (0..valency.len())
                    .map(|l| &profile[i][l] * &profile[j][l] * &profile[h][l] * rat(valency[l]))
                    .sum();
                let v = s * &nn / rat(mult[h] as i64);
                if v.is_negative() {
                    return Err(Error::NegativeKrein {
                        h,
                        i,
                        j,
                        value: v.to_string(),
                    });
                }
                out[(h * w + i) * w + j] = v;
            }
        }
    }
    Ok(out)
}

fn pattern_holds(zero: impl Fn(usize, usize, usize) -> bool, d: usize) -> bool {
    for h in 0..=d {
        for i in 0..=d {
            for j in 0..=d {
                let max = h.max(i).max(j);
                let rest = h + i + j - max;
                let z = zero(h, i, j);
                if (max > rest && !z) || (max == rest && z) {
                    return false;
                }
            }
        }
    }
    true
}

/// All orderings `E_0, E_1, ..., E_D` (as indices into the input order, with
/// the trivial idempotent at index 0) whose Krein parameters have the
/// Q-polynomial zero pattern.
pub fn q_poly_orderings(krein: &[Rational], d: usize) -> Vec<Vec<usize>> {
    let w = d + 1;
    let k = |h: usize, i: usize, j: usize| &krein[(h * w + i) * w + j];
    let mut out = Vec::new();
    if d == 0 {
        return vec![vec![0]];
    }
    for first in 1..w {
        let mut order = vec![0, first];
        while order.len() < w {
            let last = *order.last().expect("nonempty");
            let next: Vec<usize> = (0..w)
                .filter(|j| !order.contains(j) && !k(*j, first, last).is_zero())
                .collect();
            if next.len() != 1 {
                break;
            }
            order.push(next[0]);
        }
        if order.len() == w && pattern_holds(|h, i, j| k(order[h], order[i], order[j]).is_zero(), d)
        {
            out.push(order);
        }
    }
    out
}

/// The ordering each family's literature fixes.
fn canonical_theta(family: &Family, d: usize) -> Option<Vec<i64>> {
    let di = d as i64;
    let seq = |f: &dyn Fn(i64) -> i64| (0..=di).map(f).collect();
    match family {
        Family::Hypercube { .. } => Some(seq(&|i| di - 2 * i)),
        Family::Hamming { n, .. } => {
            let n = *n as i64;
            Some(seq(&|i| (n - 1) * di - n * i))
        }
        Family::Odd { .. } => Some(seq(&|i| {
            if i % 2 == 0 {
                di + 1 - i
            } else {
                -(di + 1 - i)
            }
        })),
        Family::DualPolar { kind, q, .. } => {
            let p = kind.params(d, *q).ok()?;
            Some(seq(&|i| p.theta(i as usize)))
        }
        Family::Custom { .. } => None,
    }
}

/// Re-derives the Bose-Mesner identities. The structure-constant checks
/// always run; dense products run up to [`DENSE_LIMIT`] vertices.
pub fn verify_bose_mesner(
    sd: &SpectralData,
    dd: &DistanceData,
    pn: &IntersectionNumbers,
) -> Report {
    let mut rep = Report::new();
    let n = sd.order;
    let d = sd.diameter;
    let w = d + 1;
    let one = Rational::one();
    let nr = rat(n as i64);

    let sum_ok = (0..w).all(|l| {
        let s: Rational = (0..w).map(|i| sd.profile[i][l].clone()).sum();
        s == if l == 0 {
            one.clone()
        } else {
            Rational::zero()
        }
    });
    rep.record("sum E_i = I", sum_ok, "");
    rep.record(
        "E_0 = J/|X|",
        sd.profile[0].iter().all(|x| x * &nr == one),
        "",
    );

    // (E_i E_j) at distance h = Σ_{l,m} ω_i(l) ω_j(m) p^h_{lm}.
    let product = |i: usize, j: usize, h: usize| -> Rational {
        let mut s = Rational::zero();
        for l in 0..w {
            for m in 0..w {
                let p = pn.p(h, l, m);
                if p != 0 {
                    s += &sd.profile[i][l] * &sd.profile[j][m] * rat(p);
                }
            }
        }
        s
    };
    let mut bad = Vec::new();
    for i in 0..w {
        for j in 0..w {
            for h in 0..w {
                let expect = if i == j {
                    sd.profile[i][h].clone()
                } else {
                    Rational::zero()
                };
                if product(i, j, h) != expect {
                    bad.push(format!("({i},{j}) at distance {h}"));
                }
            }
        }
    }
    rep.record("E_i E_j = δ_ij E_i", bad.is_empty(), bad.join("; "));

    let a_ok = (0..w).all(|i| {
        (0..w).all(|h| {
            let s: Rational = (0..w).map(|m| &sd.profile[i][m] * rat(pn.p(h, 1, m))).sum();
            s == &sd.profile[i][h] * rat(sd.theta[i])
        })
    });
    rep.record("A E_i = θ_i E_i", a_ok, "");
    rep.record("θ_0 = k", sd.theta[0] == pn.k(1), "");
    rep.record(
        "trace E_i = m_i",
        (0..w).all(|i| &sd.profile[i][0] * &nr == rat(sd.mult[i] as i64)),
        "",
    );
    rep.record("sum m_i = |X|", sd.mult.iter().sum::<usize>() == n, "");

    let hadamard_ok = (0..w).all(|i| {
        (0..w).all(|j| {
            (0..w).all(|l| {
                let lhs = &sd.profile[i][l] * &sd.profile[j][l];
                let rhs: Rational = (0..w)
                    .map(|h| sd.krein(h, i, j) * &sd.profile[h][l])
                    .sum::<Rational>()
                    / &nr;
                lhs == rhs
            })
        })
    });
    rep.record("E_i∘E_j = |X|^-1 Σ q^h_ij E_h", hadamard_ok, "");
    rep.record(
        "Krein nonnegative",
        sd.krein.iter().all(|x| !x.is_negative()),
        "",
    );

    if n <= DENSE_LIMIT {
        let a = IntMatrix::from_fn(n, |y, z| i64::from(dd.dist(y, z) == 1));
        let p: Vec<IntMatrix> = (0..w).map(|i| sd.lagrange_matrix(i, dd)).collect();
        let mut ok = true;
        for i in 0..w {
            ok &= a.mul(&p[i]) == p[i].scale(sd.theta[i]);
            for j in i..w {
                let prod = p[i].mul(&p[j]);
                ok &= if i == j {
                    prod == p[i].scale(sd.denom[i])
                } else {
                    prod.is_zero()
                };
            }
        }
        rep.record("dense idempotent products", ok, "");
    } else {
        rep.skip(
            "dense idempotent products",
            format!("more than {DENSE_LIMIT} vertices"),
        );
    }
    rep
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::drg::{build_family, check_distance_regular, distance_data, DualPolarKind};
    use crate::ratlinalg::frac;

    fn data(f: Family) -> (Graph, DistanceData, IntersectionNumbers, SpectralData) {
        let g = build_family(&f).unwrap();
        let dd = distance_data(&g).unwrap();
        let pn = check_distance_regular(&dd).unwrap();
        let sd = SpectralData::new(&g, &dd, &pn).unwrap();
        (g, dd, pn, sd)
    }

    #[test]
    fn k2_idempotents() {
        let a = IntMatrix::from_fn(2, |i, j| i64::from(i != j));
        let e = primitive_idempotents(&a, &[1, -1]).unwrap();
        let half = frac(1, 2);
        assert_eq!(
            e[0],
            RatMatrix::from_rows(
                2,
                vec![
                    vec![half.clone(), half.clone()],
                    vec![half.clone(), half.clone()]
                ]
            )
        );
        assert_eq!(&e[0] + &e[1], RatMatrix::identity(2));
        assert!(primitive_idempotents(&a, &[1, 1]).is_err());
    }

    #[test]
    fn c22_spectral_data() {
        let (g, dd, pn, sd) = data(Family::DualPolar {
            kind: DualPolarKind::C,
            d: 2,
            q: 2,
        });
        assert_eq!(sd.thetas(), &[6, 1, -3]);
        assert_eq!(sd.multiplicities(), &[1, 9, 5]);
        assert!(!sd.krein(2, 1, 1).is_zero());
        assert!(sd.krein(2, 0, 1).is_zero());
        assert!(verify_bose_mesner(&sd, &dd, &pn).passed());
        // Oracle: the profile-built E_1 equals dense Lagrange interpolation.
        let dense = primitive_idempotents(&g.adjacency(), sd.thetas()).unwrap();
        assert_eq!(sd.idempotent_matrix(1, &dd), dense[1]);
        assert_eq!(dense[1].rank(), 9);
        assert_eq!(
            sd.idempotent_matrix(0, &dd),
            RatMatrix::from_rows(15, vec![vec![frac(1, 15); 15]; 15])
        );
    }

    #[test]
    fn krein_symmetry_and_q0() {
        let (_, _, _, sd) = data(Family::Hypercube { d: 3 });
        for h in 0..4 {
            for i in 0..4 {
                for j in 0..4 {
                    assert_eq!(sd.krein(h, i, j), sd.krein(h, j, i));
                }
                assert_eq!(sd.krein(0, h, i).is_zero(), h != i);
            }
        }
        assert!(sd.orderings().contains(&vec![3, 1, -1, -3]));
    }

    #[test]
    fn odd_graph_ordering() {
        let (_, dd, pn, sd) = data(Family::Odd { d: 3 });
        assert_eq!(sd.thetas(), &[4, -3, 2, -1]);
        assert!(sd.orderings().contains(&vec![4, -3, 2, -1]));
        assert!(verify_bose_mesner(&sd, &dd, &pn).passed());
    }
}
