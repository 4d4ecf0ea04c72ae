use serde_json::{json, Value};

use super::{nonbipartite, PosetP};
use crate::error::{Error, Result};
use crate::nucleus::indicator;
use crate::ratlinalg::{frac, rat_to_string, Rational};
use crate::report::Report;
use crate::spectral::BaseContext;

/// The operator `M` on 𝒫 together with its certification.
#[derive(Clone, Debug)]
pub struct PmainData {
    /// `(ζ, η, M_{ζη})`, column-major in poset order.
    pub entries: Vec<(usize, usize, i64)>,
    /// Column sums of `M + a₁/(q-1) I` per grade.
    pub weighted_degree: Vec<Rational>,
    pub checks: Report,
}

impl PmainData {
    pub fn entry(&self, zeta: usize, eta: usize) -> i64 {
        self.entries
            .iter()
            .find(|e| e.0 == zeta && e.1 == eta)
            .map_or(0, |e| e.2)
    }

    pub fn to_json(&self) -> Value {
        json!({
            "entries": self.entries.iter().map(|&(r, c, w)| json!([r, c, w.to_string()])).collect::<Vec<_>>(),
            "weighted_degree": self.weighted_degree.iter().map(rat_to_string).collect::<Vec<_>>(),
        })
    }
}

/// Builds `M` (diagonal `a₁[i]_q`, `1` toward `𝒫_{i+1}`, `(a₁+1)q^{i-1}`
/// toward `𝒫_{i-1}`) and certifies `A η^N = Σ_ζ M_{ζη} ζ^N`,
/// `A* η^N = θ*_i η^N` and the equitable-partition constants vertex by
/// vertex.
pub fn pmain_operator(ctx: &BaseContext, poset: &PosetP) -> Result<PmainData> {
    let dp = nonbipartite(ctx)?;
    if !poset.checks.passed() {
        return Err(Error::Precondition("poset failed its certification".into()));
    }
    let p = &dp.params;
    let (a1, q) = (p.a1(), p.q());
    let n = ctx.order();
    let m = poset.len();
    let d = ctx.diameter();

    let mut entries = Vec::new();
    for eta in 0..m {
        let i = poset.grade[eta];
        let mut col: Vec<(usize, i64)> = vec![(eta, a1 * p.qint(i))];
        col.extend(poset.up[eta].iter().map(|&z| (z, 1)));
        if i > 0 {
            let down = (a1 + 1) * q.pow(i as u32 - 1);
            col.extend(poset.down[eta].iter().map(|&z| (z, down)));
        }
        col.sort_unstable();
        entries.extend(
            col.into_iter()
                .filter(|c| c.1 != 0)
                .map(|(z, w)| (z, eta, w)),
        );
    }
    let mut dense = vec![0i64; m * m];
    for &(z, e, w) in &entries {
        dense[z * m + e] = w;
    }

    let mut key = vec![usize::MAX; n];
    for (e, set) in poset.eta_n.iter().enumerate() {
        for &y in set {
            key[y] = e;
        }
    }
    // counts[z*m + η] = |Γ(z) ∩ η^N|, the value of A η^N at z.
    let mut counts = vec![0i64; n * m];
    for z in 0..n {
        for &y in ctx.graph().neighbors(z) {
            counts[z * m + key[y]] += 1;
        }
    }

    let mut checks = Report::new();
    let mut bad = Vec::new();
    for eta in 0..m {
        for z in 0..n {
            let zeta = key[z];
            if counts[z * m + eta] != dense[zeta * m + eta] {
                bad.push(format!("(η={eta}, ζ={zeta})"));
                break;
            }
        }
    }
    checks.record("Pmain A η^N = Σ M_{ζη} ζ^N", bad.is_empty(), bad.join(" "));
    let bad: Vec<usize> = (0..m)
        .filter(|&e| {
            let v = indicator(n, &poset.eta_n[e]);
            let th = ctx.theta_star(poset.grade[e]);
            ctx.apply_astar(&v) != v.iter().map(|x| x * th).collect::<Vec<_>>()
        })
        .collect();
    checks.require("Pmain A* η^N = θ*_i η^N", &bad);

    // Equitable: counts depend only on the class of z.
    let mut first: Vec<Option<usize>> = vec![None; m];
    let mut equitable = true;
    for z in 0..n {
        let r = *first[key[z]].get_or_insert(z);
        equitable &= counts[z * m..(z + 1) * m] == counts[r * m..(r + 1) * m];
    }
    checks.record("equit partition equitable", equitable, "");
    let bad: Vec<usize> = (0..n)
        .filter(|&z| counts[z * m + key[z]] != ctx.intersection_numbers().a(ctx.shell_of(z)))
        .collect();
    checks.require("equit1 a_i neighbours in own class", &bad);
    let mut bad = Vec::new();
    for z in 0..n {
        let i = ctx.shell_of(z);
        for e in 0..m {
            let c = counts[z * m + e];
            if c == 0 {
                continue;
            }
            let g = poset.grade[e];
            let ok = if g + 1 == i {
                c == 1
            } else if g == i + 1 {
                c == (a1 + 1) * q.pow(i as u32)
            } else {
                true
            };
            if !ok {
                bad.push(format!("vertex {z} into class {e}: {c}"));
            }
        }
    }
    checks.record(
        "equit2 up 1, down (a₁+1)q^{i-1}",
        bad.is_empty(),
        bad.join("; "),
    );

    let shift = frac(a1, q - 1);
    let weighted_degree: Vec<Rational> = (0..=d)
        .map(|i| {
            let e = poset.grade_range(i).start;
            let sum: i64 = (0..m).map(|z| dense[z * m + e]).sum();
            Rational::from_integer(sum.into()) + &shift
        })
        .collect();
    let constant = (0..=d).all(|i| {
        poset.grade_range(i).all(|e| {
            let sum: i64 = (0..m).map(|z| dense[z * m + e]).sum();
            Rational::from_integer(sum.into()) + &shift == weighted_degree[i]
        })
    });
    checks.record("weighted degree constant per grade", constant, "");
    Ok(PmainData {
        entries,
        weighted_degree,
        checks,
    })
}

#[cfg(test)]
mod tests {
    use super::super::build_poset;
    use super::super::tests::ctx;
    use super::*;
    use crate::drg::DualPolarKind;

    #[test]
    fn c22_operator() {
        let c = ctx(DualPolarKind::C, 2, 2);
        let poset = build_poset(&c).unwrap();
        let pm = pmain_operator(&c, &poset).unwrap();
        assert!(pm.checks.passed(), "{:?}", pm.checks);
        // η a 1-space: diagonal 1, toward the zero space 1, toward x 2.
        assert_eq!(pm.entry(1, 1), 1);
        assert_eq!(pm.entry(4, 1), 1);
        assert_eq!(pm.entry(0, 1), 2);
        assert_eq!(pm.entry(0, 0), 0);
    }

    #[test]
    fn b23_down_coefficient() {
        let c = ctx(DualPolarKind::B, 2, 3);
        let poset = build_poset(&c).unwrap();
        let pm = pmain_operator(&c, &poset).unwrap();
        assert!(pm.checks.passed(), "{:?}", pm.checks);
        let zero = poset.len() - 1;
        assert_eq!(pm.entry(zero, zero), 8);
        assert_eq!(pm.entry(1, zero), 9);
    }
}
