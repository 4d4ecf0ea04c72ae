use super::NucleusData;
use crate::error::{Error, Result};
use crate::ratlinalg::{is_direct, Subspace};
use crate::spectral::BaseContext;
use crate::tmodule::{module_profile, t_closure};

/// Splits `N` into thin irreducible modules, endpoint by endpoint.
///
/// At endpoint `r` the unfound part of `E*_r N` is the part orthogonal to the
/// modules already found. Every unfound constituent meeting it is isomorphic,
/// so the closure of any nonzero vector there is irreducible; each one is
/// still certified before it is kept.
pub fn decompose_nucleus(ctx: &BaseContext, nd: &mut NucleusData) -> Result<()> {
    let d = ctx.diameter();
    let mut found = Subspace::zero(ctx.order());
    let mut modules = Vec::new();
    let mut mult = vec![0; d / 2 + 1];
    for (r, count) in mult.iter_mut().enumerate() {
        let mut y = nd.estar_n[r].perp_within(&found)?;
        while !y.is_zero() {
            let v = y.basis()[0].clone();
            let w = t_closure(ctx, &v)?;
            let m = module_profile(ctx, &w)?;
            let ok = m.irreducible_certified
                && m.endpoint == r
                && m.dual_endpoint == r
                && m.diameter == d - 2 * r
                && m.displacement == 0;
            if !ok {
                return Err(Error::Certification(format!(
                    "closure at endpoint {r} gave r={}, t={}, d={}, thin={}, certified={}",
                    m.endpoint, m.dual_endpoint, m.diameter, m.thin, m.irreducible_certified
                )));
            }
            y = y.perp_within(&w)?;
            found = found.sum(&w)?;
            modules.push(m);
            *count += 1;
        }
    }
    let spaces: Vec<Subspace> = modules.iter().map(|m| m.space.clone()).collect();
    let direct = is_direct(&spaces)?;
    nd.checks.record("modules direct", direct, "");
    nd.checks.record(
        "modules span N",
        found == nd.nucleus,
        format!("{} of {}", found.dim(), nd.dim()),
    );
    nd.modules = modules;
    nd.mult = mult;
    Ok(())
}
