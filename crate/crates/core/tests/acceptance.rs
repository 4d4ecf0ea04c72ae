//! Acceptance run: one line per criterion. Exact quantities are compared
//! with `==`; the only tolerances are the wall-clock budgets below.

mod common;

use std::collections::HashMap;
use std::process::ExitCode;
use std::time::{Duration, Instant};

use nucleus_core::drg::{build_family, DualPolarKind, Family, Graph};
use nucleus_core::nucleus::{
    decompose_nucleus, estar_nucleus, nucleus, shell_components, EstarMethod, NucleusData,
};
use nucleus_core::projgeom::{build_poset, pmain_operator, sim_classes, verify_bij};
use nucleus_core::ratlinalg::{frac, rat, unit, Rational, Subspace};
use nucleus_core::report::Status;
use nucleus_core::spectral::BaseContext;
use nucleus_core::suite::{run_suite, GROUPS};
use nucleus_core::tmodule::{t_closure, verify_td_system};
use nucleus_core::Error;

const BUDGET_C22: Duration = Duration::from_secs(1);
const BUDGET_C32: Duration = Duration::from_secs(60);
const BUDGET_B23: Duration = Duration::from_secs(5);
const BUDGET_EXAMPLE: Duration = Duration::from_secs(10);
const PROPERTY_CASES: u32 = 100;

type Outcome = Result<String, String>;

macro_rules! ensure {
    ($cond:expr, $($msg:tt)+) => {
        if !$cond {
            return Err(format!($($msg)+));
        }
    };
}

fn dual_polar(kind: DualPolarKind, d: usize, q: u64) -> Family {
    Family::DualPolar { kind, d, q }
}

struct Instance {
    ctx: BaseContext,
    nd: NucleusData,
    elapsed: Duration,
}

/// Builds the context, the nucleus and its decomposition, timed together.
fn instance(f: &Family) -> Result<Instance, String> {
    let start = Instant::now();
    let g = build_family(f).map_err(|e| e.to_string())?;
    let ctx = BaseContext::from_graph(g, 0).map_err(|e| e.to_string())?;
    let mut nd = nucleus(&ctx).map_err(|e| e.to_string())?;
    decompose_nucleus(&ctx, &mut nd).map_err(|e| e.to_string())?;
    Ok(Instance {
        ctx,
        nd,
        elapsed: start.elapsed(),
    })
}

fn within(elapsed: Duration, budget: Duration) -> Outcome {
    if elapsed <= budget {
        Ok(format!(
            "{:.2} s of {} s",
            elapsed.as_secs_f64(),
            budget.as_secs()
        ))
    } else {
        Err(format!(
            "took {:.2} s, budget {} s",
            elapsed.as_secs_f64(),
            budget.as_secs()
        ))
    }
}

fn estar_dims(nd: &NucleusData) -> Vec<usize> {
    nd.estar_n.iter().map(Subspace::dim).collect()
}

fn criterion_1(c22: &Instance) -> Outcome {
    let ctx = &c22.ctx;
    let pn = ctx.intersection_numbers();
    ensure!(
        pn.intersection_array() == (vec![6, 4], vec![1, 3]),
        "array {:?}",
        pn.intersection_array()
    );
    ensure!(
        ctx.spectral().thetas() == [6, 1, -3],
        "θ = {:?}",
        ctx.spectral().thetas()
    );
    let expect: Vec<Rational> = vec![rat(9), frac(3, 2), frac(-9, 4)];
    ensure!(
        ctx.theta_stars() == expect.as_slice(),
        "θ* = {:?}",
        ctx.theta_stars()
    );
    ensure!(
        estar_dims(&c22.nd) == [1, 3, 1],
        "dim E*_iN = {:?}",
        estar_dims(&c22.nd)
    );
    ensure!(c22.nd.dim() == 5, "dim N = {}", c22.nd.dim());
    ensure!(c22.nd.mult == [1, 2], "mult = {:?}", c22.nd.mult);
    let g1 = shell_components(ctx, 1);
    ensure!(
        g1.len() == 3 && g1.iter().all(|c| c.len() == 2),
        "Γ_1 components {g1:?}"
    );
    let g2 = shell_components(ctx, 2);
    ensure!(g2.len() == 1 && g2[0].len() == 8, "Γ_2 components {g2:?}");
    within(c22.elapsed, BUDGET_C22).map(|t| format!("C_2(2) {t}"))
}

fn criterion_2(c32: &Instance) -> Outcome {
    let ctx = &c32.ctx;
    ensure!(ctx.order() == 135, "|X| = {}", ctx.order());
    ensure!(
        estar_dims(&c32.nd) == [1, 7, 7, 1],
        "dim E*_iN = {:?}",
        estar_dims(&c32.nd)
    );
    ensure!(c32.nd.dim() == 16, "dim N = {}", c32.nd.dim());
    ensure!(c32.nd.mult == [1, 6], "mult = {:?}", c32.nd.mult);
    let mut dims: Vec<usize> = c32.nd.modules.iter().map(|m| m.dim()).collect();
    dims.sort_unstable();
    ensure!(dims == [2, 2, 2, 2, 2, 2, 4], "module dims {dims:?}");
    let start = Instant::now();
    let classes = sim_classes(ctx).map_err(|e| e.to_string())?;
    let sizes: Vec<Vec<usize>> = classes
        .classes
        .iter()
        .map(|c| c.iter().map(|x| x.members.len()).collect())
        .collect();
    let expect = [1, 2, 8, 64];
    ensure!(
        sizes
            .iter()
            .zip(expect)
            .all(|(s, e)| s.iter().all(|&x| x == e)),
        "class sizes {sizes:?}"
    );
    within(c32.elapsed + start.elapsed(), BUDGET_C32).map(|t| format!("C_3(2) {t}"))
}

fn criterion_3(b23: &Instance) -> Outcome {
    let ctx = &b23.ctx;
    ensure!(ctx.order() == 40, "|X| = {}", ctx.order());
    ensure!(
        ctx.intersection_numbers().a(1) == 2,
        "a₁ = {}",
        ctx.intersection_numbers().a(1)
    );
    ensure!(
        estar_dims(&b23.nd) == [1, 4, 1],
        "dim E*_iN = {:?}",
        estar_dims(&b23.nd)
    );
    ensure!(b23.nd.mult == [1, 3], "mult = {:?}", b23.nd.mult);
    let start = Instant::now();
    let poset = build_poset(ctx).map_err(|e| e.to_string())?;
    let pm = pmain_operator(ctx, &poset).map_err(|e| e.to_string())?;
    let zero = poset.grade_range(2).start;
    let downs: Vec<i64> = poset.down[zero]
        .iter()
        .map(|&z| pm.entry(z, zero))
        .collect();
    ensure!(
        downs.len() == 4 && downs.iter().all(|&x| x == 9),
        "down-coefficients at i=2: {downs:?}"
    );
    within(b23.elapsed + start.elapsed(), BUDGET_B23).map(|t| format!("B_2(3) {t}"))
}

fn criterion_4() -> Outcome {
    let mut notes = Vec::new();
    let mut cases: Vec<(Family, usize)> =
        (2..=4).map(|d| (Family::Hypercube { d }, 1 << d)).collect();
    cases.push((Family::Hamming { d: 2, n: 3 }, 4));
    cases.push((Family::Hamming { d: 3, n: 3 }, 8));
    for (f, dim) in cases {
        let inst = instance(&f)?;
        ensure!(
            inst.nd.dim() == dim,
            "{}: dim N = {}, expected {dim}",
            f.label(),
            inst.nd.dim()
        );
        if matches!(f, Family::Hypercube { .. }) {
            ensure!(
                inst.nd.nucleus == Subspace::full(dim),
                "{}: N ≠ V",
                f.label()
            );
        }
        within(inst.elapsed, BUDGET_EXAMPLE).map_err(|e| format!("{}: {e}", f.label()))?;
        notes.push(format!("{} {:.2}s", f.label(), inst.elapsed.as_secs_f64()));
    }
    let odd = instance(&Family::Odd { d: 3 })?;
    let n = odd.ctx.order();
    let primary = t_closure(&odd.ctx, &unit(n, 0)).map_err(|e| e.to_string())?;
    ensure!(
        odd.nd.dim() == 4 && odd.nd.nucleus == primary,
        "O_4: dim N = {}",
        odd.nd.dim()
    );
    within(odd.elapsed, BUDGET_EXAMPLE).map_err(|e| format!("O_4: {e}"))?;
    notes.push(format!("O_4 {:.2}s", odd.elapsed.as_secs_f64()));
    Ok(notes.join(", "))
}

fn criterion_5(dp: &[(&str, &Instance)]) -> Outcome {
    for (name, inst) in dp {
        for i in 0..=inst.ctx.diameter() {
            let get = |m| estar_nucleus(&inst.ctx, &inst.nd, i, m).map_err(|e| e.to_string());
            let p = get(EstarMethod::Projection)?;
            ensure!(
                p == get(EstarMethod::LocalSpectral)?,
                "{name} i={i}: local spectral differs"
            );
            ensure!(
                p == get(EstarMethod::Components)?,
                "{name} i={i}: components differ"
            );
        }
    }
    Ok(format!("{} instances, every i", dp.len()))
}

fn pmain_checks(
    inst: &Instance,
) -> Result<
    (
        nucleus_core::projgeom::PosetP,
        nucleus_core::projgeom::PmainData,
    ),
    String,
> {
    let poset = build_poset(&inst.ctx).map_err(|e| e.to_string())?;
    let pm = pmain_operator(&inst.ctx, &poset).map_err(|e| e.to_string())?;
    Ok((poset, pm))
}

fn criterion_6(dp: &[(&str, &Instance)]) -> Outcome {
    for (name, inst) in dp {
        let (_, pm) = pmain_checks(inst)?;
        for check in ["Pmain A η^N = Σ M_{ζη} ζ^N", "Pmain A* η^N = θ*_i η^N"] {
            let c = pm
                .checks
                .get(check)
                .ok_or_else(|| format!("{name}: missing {check}"))?;
            ensure!(c.status == Status::Pass, "{name}: {check}: {}", c.detail);
        }
    }
    Ok("matrix identity and A* diagonal".into())
}

fn criterion_7(dp: &[(&str, &Instance)]) -> Outcome {
    for (name, inst) in dp {
        let (poset, _) = pmain_checks(inst)?;
        let rep = verify_bij(&inst.ctx, &poset, &inst.nd);
        ensure!(
            rep.passed(),
            "{name}: {:?}",
            rep.failures().collect::<Vec<_>>()
        );
        let c = poset
            .checks
            .get("bij η^N = class vectors")
            .ok_or("missing class comparison")?;
        ensure!(
            c.status == Status::Pass,
            "{name}: η^N differ from the class vectors"
        );
        ensure!(
            poset.len() == inst.nd.dim(),
            "{name}: |𝒫| = {}",
            poset.len()
        );
    }
    Ok("|𝒫| = dim N, η ↦ η^N onto the classes".into())
}

fn criterion_8(all: &[(&str, &Instance)]) -> Outcome {
    let required = [
        "dim U_i = ρ_i",
        "U_0 + ... + U_d direct",
        "R^d : U_0 → U_d bijective",
        "A_D E*_r W = E*_{D-r} W",
        "A*_D E_r W = E_{D-r} W",
    ];
    let mut count = 0;
    for (name, inst) in all {
        let dual_polar = inst.ctx.graph().dual_polar().is_some();
        for (k, m) in inst.nd.modules.iter().enumerate() {
            let td =
                verify_td_system(&inst.ctx, m).map_err(|e| format!("{name} module {k}: {e}"))?;
            ensure!(
                td.passed(),
                "{name} module {k}: {:?}",
                td.checks.failures().collect::<Vec<_>>()
            );
            ensure!(td.leonard, "{name} module {k}: not Leonard");
            let mut names: Vec<&str> = required.to_vec();
            if dual_polar {
                names.push("a_i(W) = a_{r+i}");
            }
            for check in names {
                let c = td
                    .checks
                    .get(check)
                    .ok_or_else(|| format!("{name} module {k}: missing {check}"))?;
                ensure!(c.status == Status::Pass, "{name} module {k}: {check}");
            }
            count += 1;
        }
    }
    Ok(format!("{count} modules"))
}

fn criterion_9(dp: &[(&str, &Instance)]) -> Outcome {
    for (name, inst) in dp {
        let (_, pm) = pmain_checks(inst)?;
        for check in [
            "equit partition equitable",
            "equit1 a_i neighbours in own class",
            "equit2 up 1, down (a₁+1)q^{i-1}",
        ] {
            let c = pm
                .checks
                .get(check)
                .ok_or_else(|| format!("{name}: missing {check}"))?;
            ensure!(c.status == Status::Pass, "{name}: {check}: {}", c.detail);
        }
    }
    Ok("vertex by vertex".into())
}

fn criterion_10() -> Outcome {
    let results = common::run_all(PROPERTY_CASES);
    for (name, r) in &results {
        r.as_ref().map_err(|e| format!("{name}: {e}"))?;
    }
    Ok(format!("{} suites × {PROPERTY_CASES} cases", results.len()))
}

fn criterion_11() -> Outcome {
    let p3 = Graph::from_edges(
        Family::Custom { name: "P_3".into() },
        (0..3).map(serde_json::Value::from).collect(),
        &[(0, 1), (1, 2)],
    )
    .map_err(|e| e.to_string())?;
    match BaseContext::from_graph(p3, 0) {
        Err(Error::NotDistanceRegular(w)) => {
            ensure!(w.contains("vertices"), "witness lacks vertices: {w}")
        }
        other => return Err(format!("P_3 not rejected: {:?}", other.err())),
    }
    let g = build_family(&dual_polar(DualPolarKind::D, 2, 2)).map_err(|e| e.to_string())?;
    let rep = run_suite(g, 0, &GROUPS).map_err(|e| e.to_string())?;
    ensure!(rep.passed(), "D_2(2) suite failed");
    let statuses: HashMap<&str, Status> = rep
        .groups
        .iter()
        .flat_map(|(_, r)| r.checks.iter().map(|c| (c.name.as_str(), c.status)))
        .collect();
    for name in ["END", "Ndimf", "mult formula", "DPN", "Pmain"] {
        ensure!(
            statuses.get(name) == Some(&Status::Skipped),
            "D_2(2): {name} not skipped"
        );
    }
    Ok("P_3 witness; D_2(2) nonbipartite-only checks skipped".into())
}

fn main() -> ExitCode {
    let mut lines: Vec<(usize, Outcome)> = Vec::new();
    let c22 = instance(&dual_polar(DualPolarKind::C, 2, 2));
    let c32 = instance(&dual_polar(DualPolarKind::C, 3, 2));
    let b23 = instance(&dual_polar(DualPolarKind::B, 2, 3));
    match (&c22, &c32, &b23) {
        (Ok(c22), Ok(c32), Ok(b23)) => {
            let dp = [("C_2(2)", c22), ("C_3(2)", c32), ("B_2(3)", b23)];
            lines.push((1, criterion_1(c22)));
            lines.push((2, criterion_2(c32)));
            lines.push((3, criterion_3(b23)));
            lines.push((4, criterion_4()));
            lines.push((5, criterion_5(&dp)));
            lines.push((6, criterion_6(&dp)));
            lines.push((7, criterion_7(&dp)));
            let mut all: Vec<(&str, &Instance)> = dp.to_vec();
            let extra: Vec<(String, Result<Instance, String>)> = [
                Family::Hypercube { d: 3 },
                Family::Hamming { d: 3, n: 3 },
                Family::Odd { d: 3 },
            ]
            .iter()
            .map(|f| (f.label(), instance(f)))
            .collect();
            let mut broken = None;
            for (label, inst) in &extra {
                match inst {
                    Ok(i) => all.push((label.as_str(), i)),
                    Err(e) => broken = Some(format!("{label}: {e}")),
                }
            }
            lines.push((8, broken.map_or_else(|| criterion_8(&all), Err)));
            lines.push((9, criterion_9(&dp[..2])));
        }
        _ => {
            let e = [&c22, &c32, &b23]
                .iter()
                .find_map(|r| r.as_ref().err())
                .cloned()
                .unwrap_or_default();
            for k in [1, 2, 3, 5, 6, 7, 8, 9] {
                lines.push((k, Err(format!("instance construction failed: {e}"))));
            }
            lines.push((4, criterion_4()));
        }
    }
    lines.push((10, criterion_10()));
    lines.push((11, criterion_11()));
    lines.sort_by_key(|l| l.0);

    let mut failed = 0;
    for (k, outcome) in &lines {
        match outcome {
            Ok(note) => println!("criterion {k:>2}: PASS  {note}"),
            Err(why) => {
                failed += 1;
                println!("criterion {k:>2}: FAIL  {why}");
            }
        }
    }
    println!(
        "{} of {} criteria passed",
        lines.len() - failed,
        lines.len()
    );
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
