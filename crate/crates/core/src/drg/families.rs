use rayon::prelude::*;
use serde_json::{json, Value};

use super::dualpolar::DualPolarKind;
use super::{DualPolarData, Family, Graph};
use crate::error::{Error, Result};
use crate::gfspace::{max_isotropic_enumerate, FieldSpec};

/// Largest vertex count a family constructor will produce.
const MAX_VERTICES: usize = 5000;

/// Constructs a family member with canonically ordered vertices.
pub fn build_family(family: &Family) -> Result<Graph> {
    match *family {
        Family::Hypercube { d } => {
            check((1..=12).contains(&d), family)?;
            hamming(family.clone(), d, 2, true)
        }
        Family::Hamming { d, n } => {
            check(
                d >= 1 && n >= 2 && (n as f64).powi(d as i32) <= MAX_VERTICES as f64,
                family,
            )?;
            hamming(family.clone(), d, n, false)
        }
        Family::Odd { d } => {
            check((1..=6).contains(&d), family)?;
            odd(d)
        }
        Family::DualPolar { kind, d, q } => dual_polar(kind, d, q),
        Family::Custom { .. } => Err(Error::Unsupported(
            "custom graphs are imported, not built".into(),
        )),
    }
}

fn check(ok: bool, family: &Family) -> Result<()> {
    if ok {
        Ok(())
    } else {
        Err(Error::Unsupported(format!(
            "{} with {}",
            family.name(),
            family.params_json()
        )))
    }
}

fn hamming(family: Family, d: usize, n: usize, bits: bool) -> Result<Graph> {
    let count = n.pow(d as u32);
    let tuples: Vec<Vec<usize>> = (0..count)
        .map(|mut c| {
            let mut t = vec![0; d];
            for x in t.iter_mut().rev() {
                *x = c % n;
                c /= n;
            }
            t
        })
        .collect();
    let labels = tuples
        .iter()
        .map(|t| {
            if bits {
                Value::String(t.iter().map(|x| x.to_string()).collect())
            } else {
                json!(t)
            }
        })
        .collect();
    let mut edges = Vec::new();
    for (u, a) in tuples.iter().enumerate() {
        for (v, b) in tuples.iter().enumerate().skip(u + 1) {
            if a.iter().zip(b).filter(|(x, y)| x != y).count() == 1 {
                edges.push((u, v));
            }
        }
    }
    Graph::from_edges(family, labels, &edges)
}

fn odd(d: usize) -> Result<Graph> {
    let m = 2 * d + 1;
    let sets: Vec<u32> = (0u32..1 << m)
        .filter(|s| s.count_ones() as usize == d)
        .collect();
    let mut sets: Vec<Vec<usize>> = sets
        .into_iter()
        .map(|s| (0..m).filter(|i| s >> i & 1 == 1).collect())
        .collect();
    sets.sort();
    let masks: Vec<u32> = sets
        .iter()
        .map(|s| s.iter().map(|&i| 1u32 << i).sum())
        .collect();
    let mut edges = Vec::new();
    for u in 0..sets.len() {
        for v in u + 1..sets.len() {
            if masks[u] & masks[v] == 0 {
                edges.push((u, v));
            }
        }
    }
    let labels = sets
        .iter()
        .map(|s| json!(s.iter().map(|i| i + 1).collect::<Vec<_>>()))
        .collect();
    Graph::from_edges(Family::Odd { d }, labels, &edges)
}

fn dual_polar(kind: DualPolarKind, d: usize, q: u64) -> Result<Graph> {
    let family = Family::DualPolar { kind, d, q };
    let base = FieldSpec::of_order(q)?;
    let params = kind.params(d, q)?;
    // Refuse instances far beyond desk scale before enumerating.
    if d == 0 || params.order_estimate() > MAX_VERTICES as f64 {
        return Err(Error::Unsupported(format!(
            "{} is too large",
            family.label()
        )));
    }
    let field = if kind.is_unitary() {
        FieldSpec::new(base.p(), 2 * base.n())?
    } else {
        base
    };
    let form = kind.form(d, field.clone())?;
    let vertices = max_isotropic_enumerate(&form, d)?;
    let edges: Vec<(usize, usize)> = (0..vertices.len())
        .into_par_iter()
        .flat_map_iter(|u| {
            let vs = &vertices;
            let f = &field;
            (u + 1..vs.len())
                .filter(move |&v| vs[u].meet_dim(f, &vs[v]) + 1 == d)
                .map(move |v| (u, v))
        })
        .collect();
    let labels = vertices.iter().map(|s| json!(s.basis())).collect();
    let g = Graph::from_edges(family, labels, &edges)?;
    Ok(g.with_dual_polar(DualPolarData {
        form,
        vertices,
        params,
    }))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_families() {
        let q3 = build_family(&Family::Hypercube { d: 3 }).unwrap();
        assert_eq!(q3.order(), 8);
        assert!((0..8).all(|v| q3.degree(v) == 3));
        assert_eq!(q3.labels()[5], json!("101"));

        let h = build_family(&Family::Hamming { d: 2, n: 3 }).unwrap();
        assert_eq!(h.order(), 9);
        assert!((0..9).all(|v| h.degree(v) == 4));

        let o4 = build_family(&Family::Odd { d: 3 }).unwrap();
        assert_eq!(o4.order(), 35);
        assert!((0..35).all(|v| o4.degree(v) == 4));
    }

    #[test]
    fn dual_polar_c22() {
        let g = build_family(&Family::DualPolar {
            kind: DualPolarKind::C,
            d: 2,
            q: 2,
        })
        .unwrap();
        assert_eq!(g.order(), 15);
        assert!((0..15).all(|v| g.degree(v) == 6));
        assert!(g.is_nonbipartite_dual_polar());
    }

    #[test]
    fn rejects_bad_parameters() {
        assert!(build_family(&Family::DualPolar {
            kind: DualPolarKind::C,
            d: 2,
            q: 6
        })
        .is_err());
        assert!(build_family(&Family::Hamming { d: 2, n: 1 }).is_err());
        assert!(build_family(&Family::Hypercube { d: 0 }).is_err());
    }
}
