use nucleus_core::drg::{build_family, DualPolarKind, Family};
use nucleus_core::report::Status;
use nucleus_core::suite::{parse_groups, run_suite, GROUPS};

fn run(f: Family) -> nucleus_core::suite::SuiteReport {
    let rep = run_suite(build_family(&f).unwrap(), 0, &GROUPS).unwrap();
    let failures: Vec<String> = rep
        .groups
        .iter()
        .flat_map(|(g, r)| {
            r.failures()
                .map(move |c| format!("{g}: {} ({})", c.name, c.detail))
        })
        .collect();
    assert!(failures.is_empty(), "{}: {failures:#?}", f.label());
    rep
}

fn skipped(rep: &nucleus_core::suite::SuiteReport) -> Vec<String> {
    rep.groups
        .iter()
        .flat_map(|(_, r)| {
            r.checks
                .iter()
                .filter(|c| c.status == Status::Skipped)
                .map(|c| c.name.clone())
        })
        .collect()
}

#[test]
fn nonbipartite_dual_polar_instances_pass_everything() {
    use DualPolarKind::*;
    for (kind, d, q) in [
        (C, 2, 2),
        (C, 3, 2),
        (B, 2, 2),
        (B, 2, 3),
        (C, 2, 3),
        (TwoAOdd, 2, 2),
        (TwoAEven, 2, 2),
    ] {
        let rep = run(Family::DualPolar { kind, d, q });
        let s = skipped(&rep);
        assert!(
            !s.iter().any(|n| n == "END" || n == "Pmain" || n == "DPN"),
            "{s:?}"
        );
    }
}

#[test]
fn bipartite_and_classical_instances_skip_dual_polar_checks() {
    for f in [
        Family::DualPolar {
            kind: DualPolarKind::D,
            d: 2,
            q: 2,
        },
        Family::DualPolar {
            kind: DualPolarKind::D,
            d: 3,
            q: 2,
        },
        Family::Hypercube { d: 4 },
        Family::Hamming { d: 3, n: 3 },
        Family::Odd { d: 4 },
    ] {
        let rep = run(f);
        let s = skipped(&rep);
        assert!(
            s.iter().any(|n| n == "END") && s.iter().any(|n| n == "Pmain"),
            "{s:?}"
        );
    }
}

#[test]
fn group_selection() {
    assert_eq!(parse_groups(None).unwrap(), GROUPS.to_vec());
    assert_eq!(
        parse_groups(Some("pmain,drg")).unwrap(),
        vec!["drg", "pmain"]
    );
    assert!(parse_groups(Some("nope")).is_err());
    let g = build_family(&Family::Hypercube { d: 2 }).unwrap();
    let rep = run_suite(g, 0, &["spectral"]).unwrap();
    assert_eq!(rep.groups.len(), 1);
    assert_eq!(rep.groups[0].0, "spectral");
}

#[test]
fn other_base_vertices() {
    let g = build_family(&Family::DualPolar {
        kind: DualPolarKind::C,
        d: 2,
        q: 2,
    })
    .unwrap();
    for x in [3, 14] {
        let rep = run_suite(g.clone(), x, &GROUPS).unwrap();
        assert!(rep.passed(), "base vertex {x}");
    }
}
