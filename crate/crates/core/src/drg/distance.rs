use std::collections::VecDeque;
use std::fmt;

use rayon::prelude::*;
use serde::Serialize;

use super::Graph;
use crate::error::{Error, Result};
use crate::ratlinalg::IntMatrix;

/// All-pairs distances of a connected graph.
#[derive(Clone, Debug)]
pub struct DistanceData {
    n: usize,
    diameter: usize,
    dist: Vec<u8>,
}

/// BFS from every vertex.
pub fn distance_data(g: &Graph) -> Result<DistanceData> {
    let n = g.order();
    let rows: Vec<Option<Vec<u8>>> = (0..n)
        .into_par_iter()
        .map(|s| {
            let mut d = vec![u8::MAX; n];
            d[s] = 0;
            let mut queue = VecDeque::from([s]);
            while let Some(u) = queue.pop_front() {
                for &v in g.neighbors(u) {
                    if d[v] == u8::MAX {
                        d[v] = d[u] + 1;
                        queue.push_back(v);
                    }
                }
            }
            d.iter().all(|&x| x != u8::MAX).then_some(d)
        })
        .collect();
    let mut dist = Vec::with_capacity(n * n);
    for r in rows {
        dist.extend(r.ok_or(Error::Disconnected)?);
    }
    let diameter = dist.iter().copied().max().unwrap_or(0) as usize;
    Ok(DistanceData { n, diameter, dist })
}

impl DistanceData {
    pub fn order(&self) -> usize {
        self.n
    }

    pub fn diameter(&self) -> usize {
        self.diameter
    }

    pub fn dist(&self, x: usize, y: usize) -> usize {
        self.dist[x * self.n + y] as usize
    }

    pub fn row(&self, x: usize) -> &[u8] {
        &self.dist[x * self.n..(x + 1) * self.n]
    }

    /// `Γ_i(x)` in vertex order.
    pub fn shell(&self, x: usize, i: usize) -> Vec<usize> {
        (0..self.n).filter(|&y| self.dist(x, y) == i).collect()
    }

    /// The distance-`i` matrix `A_i`.
    pub fn a_matrix(&self, i: usize) -> IntMatrix {
        IntMatrix::from_fn(self.n, |x, y| i64::from(self.dist(x, y) == i))
    }

    /// `T[i][j] = |Γ_i(x) ∩ Γ_j(y)|`.
    fn census(&self, x: usize, y: usize) -> Vec<i64> {
        let w = self.diameter + 1;
        let mut t = vec![0i64; w * w];
        for (&a, &b) in self.row(x).iter().zip(self.row(y)) {
            t[a as usize * w + b as usize] += 1;
        }
        t
    }
}

/// The full tensor `p^h_{ij}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct IntersectionNumbers {
    diameter: usize,
    p: Vec<i64>,
}

impl IntersectionNumbers {
    pub fn diameter(&self) -> usize {
        self.diameter
    }

    pub fn p(&self, h: usize, i: usize, j: usize) -> i64 {
        let w = self.diameter + 1;
        if h >= w || i >= w || j >= w {
            return 0;
        }
        self.p[(h * w + i) * w + j]
    }

    pub fn c(&self, i: usize) -> i64 {
        if i == 0 {
            0
        } else {
            self.p(i, 1, i - 1)
        }
    }

    pub fn a(&self, i: usize) -> i64 {
        self.p(i, 1, i)
    }

    pub fn b(&self, i: usize) -> i64 {
        self.p(i, 1, i + 1)
    }

    pub fn k(&self, i: usize) -> i64 {
        self.p(0, i, i)
    }

    /// `{b_0, ..., b_{D-1}; c_1, ..., c_D}`.
    pub fn intersection_array(&self) -> (Vec<i64>, Vec<i64>) {
        let d = self.diameter;
        (
            (0..d).map(|i| self.b(i)).collect(),
            (1..=d).map(|i| self.c(i)).collect(),
        )
    }
}

/// Why a graph failed the distance-regularity test.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Witness {
    /// `|Γ_i(x) ∩ Γ_j(y)| = found` but an earlier pair at distance `h`
    /// gave `expected`.
    Count {
        x: usize,
        y: usize,
        h: usize,
        i: usize,
        j: usize,
        expected: i64,
        found: i64,
    },
    /// The triangle zero/nonzero pattern fails at `p^h_{ij}`.
    Pattern {
        h: usize,
        i: usize,
        j: usize,
        value: i64,
    },
}

impl fmt::Display for Witness {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Witness::Count { x, y, h, i, j, expected, found } => write!(
                f,
                "vertices {x},{y} at distance {h} have |Γ_{i}(x) ∩ Γ_{j}(y)| = {found}, expected {expected}"
            ),
            Witness::Pattern { h, i, j, value } => write!(f, "p^{h}_{{{i},{j}}} = {value} breaks the triangle pattern"),
        }
    }
}

/// Certifies that `p^h_{ij}` is constant over pairs at distance `h` and has
/// the triangle zero/nonzero pattern.
pub fn check_distance_regular(
    dd: &DistanceData,
) -> std::result::Result<IntersectionNumbers, Witness> {
    let n = dd.n;
    let d = dd.diameter;
    let w = d + 1;
    let mut reference: Vec<Option<(usize, usize)>> = vec![None; w];
    for x in 0..n {
        for y in 0..n {
            let h = dd.dist(x, y);
            if reference[h].is_none() {
                reference[h] = Some((x, y));
            }
        }
    }
    let tables: Vec<Vec<i64>> = reference
        .iter()
        .map(|r| {
            let (x, y) = r.expect("every distance up to the diameter occurs");
            dd.census(x, y)
        })
        .collect();
    let failure = (0..n)
        .into_par_iter()
        .filter_map(|x| {
            (0..n).find_map(|y| {
                let h = dd.dist(x, y);
                let t = dd.census(x, y);
                (t != tables[h]).then(|| {
                    let k = (0..w * w)
                        .find(|&k| t[k] != tables[h][k])
                        .expect("tables differ");
                    Witness::Count {
                        x,
                        y,
                        h,
                        i: k / w,
                        j: k % w,
                        expected: tables[h][k],
                        found: t[k],
                    }
                })
            })
        })
        .min_by_key(|wit| match wit {
            Witness::Count { x, y, .. } => (*x, *y),
            Witness::Pattern { .. } => (usize::MAX, usize::MAX),
        });
    if let Some(wit) = failure {
        return Err(wit);
    }
    let pn = IntersectionNumbers {
        diameter: d,
        p: tables.concat(),
    };
    for h in 0..w {
        for i in 0..w {
            for j in 0..w {
                let v = pn.p(h, i, j);
                let max = h.max(i).max(j);
                let rest = h + i + j - max;
                if (max > rest && v != 0) || (max == rest && v == 0) {
                    return Err(Witness::Pattern { h, i, j, value: v });
                }
            }
        }
    }
    Ok(pn)
}
