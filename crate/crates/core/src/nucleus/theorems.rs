use super::{estar_nucleus, indicator, shell_components, EstarMethod, NucleusData};
use crate::ratlinalg::{is_direct, Subspace};
use crate::report::Report;
use crate::spectral::BaseContext;
use crate::tmodule::TModuleData;

/// Dimension identities of a decomposed nucleus; the q-binomial formulas
/// and the combinatorial descriptions are asserted only for nonbipartite
/// dual polar graphs.
pub fn verify_nucleus_theorems(ctx: &BaseContext, nd: &NucleusData) -> Report {
    let mut rep = Report::new();
    let d = ctx.diameter();
    let n = ctx.order();
    let dim = Subspace::dim;
    let cumulative = |i: usize| nd.mult.iter().take(i + 1).sum::<usize>();

    let mut bad = Vec::new();
    for i in 0..=d / 2 {
        let six = [
            dim(&nd.e_n[i]),
            dim(&nd.e_n[d - i]),
            dim(&nd.estar_n[i]),
            dim(&nd.estar_n[d - i]),
            dim(&nd.n_i[i]),
            dim(&nd.n_i[d - i]),
        ];
        if six.iter().any(|&x| x != cumulative(i)) {
            bad.push(format!("i={i}: {six:?} vs {}", cumulative(i)));
        }
    }
    rep.record("Six", bad.is_empty(), bad.join("; "));
    rep.record(
        "mult_0 = 1",
        nd.mult.first() == Some(&1),
        format!("{:?}", nd.mult),
    );
    let weighted: usize = nd
        .mult
        .iter()
        .enumerate()
        .map(|(r, m)| m * (d - 2 * r + 1))
        .sum();
    rep.record(
        "Σ mult_r (D-2r+1) = dim N",
        weighted == nd.dim(),
        format!("{weighted} vs {}", nd.dim()),
    );
    let thin_ok = nd
        .modules
        .iter()
        .all(|m: &TModuleData| m.thin && m.displacement == 0 && m.invariants().passed());
    rep.record("Wdata thin displacement 0", thin_ok, "");

    // Orthogonal complement of N: T-invariant and meeting N trivially.
    if n <= 200 {
        let perp = Subspace::full(n)
            .perp_within(&nd.nucleus)
            .expect("same ambient dimension");
        let inv =
            perp.is_invariant(|v| ctx.apply_a(v)) && perp.is_invariant(|v| ctx.apply_astar(v));
        let meets = is_direct(&[perp.clone(), nd.nucleus.clone()]).unwrap_or(false);
        rep.record(
            "N^⊥ T-invariant",
            inv && perp.dim() + nd.dim() == n && meets,
            "",
        );
    } else {
        rep.skip("N^⊥ T-invariant", "more than 200 vertices");
    }

    let components: Vec<Vec<Vec<usize>>> = (0..=d).map(|i| shell_components(ctx, i)).collect();
    let component_basis: Vec<bool> = (0..=d)
        .map(|i| {
            Subspace::span(
                n,
                components[i]
                    .iter()
                    .map(|c| indicator(n, c))
                    .collect::<Vec<_>>(),
            ) == nd.estar_n[i]
        })
        .collect();
    let holds = component_basis.iter().all(|&b| b);

    if !ctx.graph().is_nonbipartite_dual_polar() {
        let why = "only asserted for nonbipartite dual polar graphs";
        for name in ["END", "Ndimf", "mult formula", "multN", "DPNUC", "DPN"] {
            rep.skip(name, why);
        }
        rep.skip(
            "0/1 basis",
            format!(
                "{why}; component basis {}",
                if holds { "holds" } else { "fails" }
            ),
        );
        return rep;
    }
    let p = &ctx.graph().dual_polar().expect("dual polar").params;
    let qb = |i: usize| p.qbinom(i) as usize;
    let bad: Vec<String> = (0..=d)
        .filter(|&i| dim(&nd.estar_n[i]) != qb(i))
        .map(|i| format!("i={i}: {} vs {}", dim(&nd.estar_n[i]), qb(i)))
        .collect();
    rep.record("END", bad.is_empty(), bad.join("; "));
    let total: usize = (0..=d).map(qb).sum();
    rep.record(
        "Ndimf",
        nd.dim() == total,
        format!("{} vs {total}", nd.dim()),
    );
    let formula: Vec<usize> = (0..=d / 2).map(|r| p.mult(r) as usize).collect();
    rep.record(
        "mult formula",
        nd.mult == formula,
        format!("{:?} vs {formula:?}", nd.mult),
    );
    let bad: Vec<usize> = (0..=d / 2)
        .filter(|&i| {
            components[i].len() != cumulative(i) || components[d - i].len() != cumulative(i)
        })
        .collect();
    rep.require("multN", &bad);
    let mut bad = Vec::new();
    for i in 0..=d {
        for method in [EstarMethod::LocalSpectral, EstarMethod::Components] {
            match estar_nucleus(ctx, nd, i, method) {
                Ok(s) if s == nd.estar_n[i] => {}
                _ => bad.push(format!("{} at i={i}", method.name())),
            }
        }
    }
    rep.record("DPNUC", bad.is_empty(), bad.join("; "));
    rep.record("DPN", holds, format!("{component_basis:?}"));
    rep.record("0/1 basis", holds, "");
    rep
}
