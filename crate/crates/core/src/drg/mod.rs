//! Graph families, distances and distance-regularity.

mod distance;
mod dualpolar;
mod families;

use serde_json::{json, Value};

pub use distance::{
    check_distance_regular, distance_data, DistanceData, IntersectionNumbers, Witness,
};
pub use dualpolar::{verify_dual_polar_parameters, DualPolarKind, DualPolarParams};
pub use families::build_family;

use crate::error::{Error, Result};
use crate::gfspace::{FFSubspace, FieldSpec, FormSpec};
use crate::ratlinalg::IntMatrix;

/// Which family a graph came from, with its parameters.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Family {
    Hypercube {
        d: usize,
    },
    Hamming {
        d: usize,
        n: usize,
    },
    /// The Odd graph of diameter `d` (on `d`-subsets of a `2d+1`-set).
    Odd {
        d: usize,
    },
    /// Dual polar graph; `q` is the order of the field the form's
    /// conjugation fixes (so the ²A families live over GF(q²)).
    DualPolar {
        kind: DualPolarKind,
        d: usize,
        q: u64,
    },
    /// Imported from JSON with no family guarantee.
    Custom {
        name: String,
    },
}

impl Family {
    pub fn name(&self) -> String {
        match self {
            Family::Hypercube { .. } => "hypercube".into(),
            Family::Hamming { .. } => "hamming".into(),
            Family::Odd { .. } => "odd".into(),
            Family::DualPolar { kind, .. } => kind.name().into(),
            Family::Custom { name } => name.clone(),
        }
    }

    pub fn params_json(&self) -> Value {
        match self {
            Family::Hypercube { d } | Family::Odd { d } => json!({ "D": d }),
            Family::Hamming { d, n } => json!({ "D": d, "N": n }),
            Family::DualPolar { d, q, .. } => json!({ "D": d, "q": q }),
            Family::Custom { .. } => json!({}),
        }
    }

    /// Short human label such as `C_3(2)` or `H(2,3)`.
    pub fn label(&self) -> String {
        match self {
            Family::Hypercube { d } => format!("Q_{d}"),
            Family::Hamming { d, n } => format!("H({d},{n})"),
            Family::Odd { d } => format!("O_{}", d + 1),
            Family::DualPolar { kind, d, q } => kind.label(*d, *q),
            Family::Custom { name } => name.clone(),
        }
    }
}

/// Dual polar structure carried alongside the graph: the form, and the
/// vertex subspaces in vertex order.
#[derive(Clone, Debug)]
pub struct DualPolarData {
    pub form: FormSpec,
    pub vertices: Vec<FFSubspace>,
    pub params: DualPolarParams,
}

impl DualPolarData {
    pub fn field(&self) -> &FieldSpec {
        self.form.field()
    }
}

/// A simple undirected graph on vertices `0..n` with JSON labels.
#[derive(Clone, Debug)]
pub struct Graph {
    family: Family,
    labels: Vec<Value>,
    neighbors: Vec<Vec<usize>>,
    dual_polar: Option<DualPolarData>,
}

impl Graph {
    /// Builds a graph from an edge list; rejects loops and out-of-range
    /// endpoints, ignores repeated edges.
    pub fn from_edges(
        family: Family,
        labels: Vec<Value>,
        edges: &[(usize, usize)],
    ) -> Result<Self> {
        let n = labels.len();
        let mut neighbors = vec![Vec::new(); n];
        for &(u, v) in edges {
            if u >= n || v >= n {
                return Err(Error::Input(format!(
                    "edge ({u},{v}) out of range for {n} vertices"
                )));
            }
            if u == v {
                return Err(Error::Input(format!("loop at vertex {u}")));
            }
            neighbors[u].push(v);
            neighbors[v].push(u);
        }
        for nb in &mut neighbors {
            nb.sort_unstable();
            nb.dedup();
        }
        Ok(Self {
            family,
            labels,
            neighbors,
            dual_polar: None,
        })
    }

    pub(crate) fn with_dual_polar(mut self, data: DualPolarData) -> Self {
        self.dual_polar = Some(data);
        self
    }

    pub fn family(&self) -> &Family {
        &self.family
    }

    pub fn order(&self) -> usize {
        self.labels.len()
    }

    pub fn labels(&self) -> &[Value] {
        &self.labels
    }

    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.neighbors[v]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.neighbors[v].len()
    }

    pub fn is_adjacent(&self, u: usize, v: usize) -> bool {
        self.neighbors[u].binary_search(&v).is_ok()
    }

    pub fn edges(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for (u, nb) in self.neighbors.iter().enumerate() {
            out.extend(nb.iter().filter(|&&v| v > u).map(|&v| (u, v)));
        }
        out
    }

    pub fn dual_polar(&self) -> Option<&DualPolarData> {
        self.dual_polar.as_ref()
    }

    /// Nonbipartite dual polar graphs are where the combinatorial nucleus
    /// results apply.
    pub fn is_nonbipartite_dual_polar(&self) -> bool {
        self.dual_polar.as_ref().is_some_and(|d| d.params.a1() > 0)
    }

    pub fn adjacency(&self) -> IntMatrix {
        let n = self.order();
        let mut data = vec![0i64; n * n];
        for (u, nb) in self.neighbors.iter().enumerate() {
            for &v in nb {
                data[u * n + v] = 1;
            }
        }
        IntMatrix::from_fn(n, |i, j| data[i * n + j])
    }

    pub fn to_json(&self) -> Value {
        let edges: Vec<[usize; 2]> = self.edges().into_iter().map(|(u, v)| [u, v]).collect();
        json!({
            "family": self.family.name(),
            "params": self.family.params_json(),
            "vertices": self.labels,
            "adjacency": edges,
        })
    }

    /// Reads the graph JSON format. Family metadata is kept as a label only;
    /// imported graphs carry no family structure.
    pub fn from_json(v: &Value) -> Result<Self> {
        let obj = v
            .as_object()
            .ok_or_else(|| Error::Input("graph JSON must be an object".into()))?;
        let labels = obj
            .get("vertices")
            .and_then(Value::as_array)
            .ok_or_else(|| Error::Input("missing \"vertices\" array".into()))?
            .clone();
        let edges = obj
            .get("adjacency")
            .and_then(Value::as_array)
            .ok_or_else(|| Error::Input("missing \"adjacency\" array".into()))?
            .iter()
            .map(|e| {
                let pair = e.as_array().filter(|p| p.len() == 2);
                let idx = |k: usize| pair.and_then(|p| p[k].as_u64()).map(|x| x as usize);
                match (idx(0), idx(1)) {
                    (Some(a), Some(b)) => Ok((a, b)),
                    _ => Err(Error::Input(format!("bad edge {e}"))),
                }
            })
            .collect::<Result<Vec<_>>>()?;
        let name = obj
            .get("family")
            .and_then(Value::as_str)
            .unwrap_or("custom")
            .to_string();
        Self::from_edges(Family::Custom { name }, labels, &edges)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn json_roundtrip_and_validation() {
        let g = build_family(&Family::Hypercube { d: 2 }).unwrap();
        let back = Graph::from_json(&g.to_json()).unwrap();
        assert_eq!(back.edges(), g.edges());
        assert_eq!(back.labels(), g.labels());
        let bad = json!({ "vertices": [0, 1], "adjacency": [[0, 0]] });
        assert!(Graph::from_json(&bad).is_err());
        let bad = json!({ "vertices": [0, 1], "adjacency": [[0, 2]] });
        assert!(Graph::from_json(&bad).is_err());
    }
}
