//! Finite acyclic quivers and their Euler form.

use crate::error::{Error, Result};
use serde::{Deserialize, Serialize};

pub type DimVector = Vec<i64>;

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Quiver {
    pub vertices: usize,
    pub arrows: Vec<(usize, usize)>,
}

impl Quiver {
    pub fn new(vertices: usize, arrows: Vec<(usize, usize)>) -> Result<Self> {
        if vertices == 0 {
            return Err(Error::MalformedInput("no vertices".into()));
        }
        for &(s, t) in &arrows {
            if s >= vertices || t >= vertices {
                return Err(Error::MalformedInput(format!("arrow {s}->{t} out of range")));
            }
        }
        let q = Quiver { vertices, arrows };
        if q.topological_order().is_none() {
            return Err(Error::CyclicQuiver);
        }
        Ok(q)
    }

    pub fn parse(json: &str) -> Result<Self> {
        let raw: Quiver = serde_json::from_str(json).map_err(|e| Error::MalformedInput(e.to_string()))?;
        Quiver::new(raw.vertices, raw.arrows)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("quiver serializes")
    }

    /// Oriented path on n vertices, arrows i+1 -> i.
    pub fn a_n(n: usize) -> Self {
        Quiver::new(n, (1..n).map(|i| (i, i - 1)).collect()).unwrap()
    }

    /// A2 with arrow 0 -> 1.
    pub fn a2() -> Self {
        Quiver::new(2, vec![(0, 1)]).unwrap()
    }

    /// A3 with arrows 2 -> 1 -> 0.
    pub fn a3() -> Self {
        Quiver::a_n(3)
    }

    pub fn n(&self) -> usize {
        self.vertices
    }

    /// Kahn's algorithm; None if there is an oriented cycle.
    pub fn topological_order(&self) -> Option<Vec<usize>> {
        let mut indeg = vec![0usize; self.vertices];
        for &(_, t) in &self.arrows {
            indeg[t] += 1;
        }
        let mut ready: Vec<usize> = (0..self.vertices).filter(|&v| indeg[v] == 0).collect();
        ready.reverse();
        let mut order = Vec::new();
        while let Some(v) = ready.pop() {
            order.push(v);
            for &(s, t) in &self.arrows {
                if s == v {
                    indeg[t] -= 1;
                    if indeg[t] == 0 {
                        ready.push(t);
                        ready.sort_unstable_by(|a, b| b.cmp(a));
                    }
                }
            }
        }
        (order.len() == self.vertices).then_some(order)
    }

    pub fn is_sink(&self, v: usize) -> bool {
        self.arrows.iter().all(|&(s, _)| s != v)
    }

    pub fn is_source(&self, v: usize) -> bool {
        self.arrows.iter().all(|&(_, t)| t != v)
    }

    /// Reverse every arrow incident to v.
    pub fn reflect_at(&self, v: usize) -> Quiver {
        let arrows = self
            .arrows
            .iter()
            .map(|&(s, t)| if s == v || t == v { (t, s) } else { (s, t) })
            .collect();
        Quiver { vertices: self.vertices, arrows }
    }

    pub fn arrow_count(&self, i: usize, j: usize) -> usize {
        self.arrows.iter().filter(|&&(s, t)| s == i && t == j).count()
    }

    /// Edges of the underlying graph counted with multiplicity.
    pub fn edge_count(&self, i: usize, j: usize) -> usize {
        self.arrow_count(i, j) + if i != j { self.arrow_count(j, i) } else { 0 }
    }

    pub fn is_connected(&self) -> bool {
        let mut seen = vec![false; self.vertices];
        let mut stack = vec![0];
        seen[0] = true;
        while let Some(v) = stack.pop() {
            for &(s, t) in &self.arrows {
                for (a, b) in [(s, t), (t, s)] {
                    if a == v && !seen[b] {
                        seen[b] = true;
                        stack.push(b);
                    }
                }
            }
        }
        seen.into_iter().all(|x| x)
    }

    /// Euler form <d, e> = sum d_i e_i - sum over arrows i->j of d_i e_j.
    pub fn euler_form(&self, d: &[i64], e: &[i64]) -> Result<i64> {
        if d.len() != self.vertices || e.len() != self.vertices {
            return Err(Error::DimensionMismatch);
        }
        let diag: i64 = d.iter().zip(e).map(|(a, b)| a * b).sum();
        let off: i64 = self.arrows.iter().map(|&(s, t)| d[s] * e[t]).sum();
        Ok(diag - off)
    }

    /// Matrix C with C[i][j] = <e_i, e_j>.
    pub fn euler_matrix(&self) -> Vec<Vec<i64>> {
        let n = self.vertices;
        let mut c = vec![vec![0; n]; n];
        for (i, row) in c.iter_mut().enumerate() {
            row[i] = 1;
        }
        for &(s, t) in &self.arrows {
            c[s][t] -= 1;
        }
        c
    }

    /// Number of paths i -> j, i.e. dimension vector entry j of the projective P_i.
    pub fn path_counts(&self) -> Vec<Vec<i64>> {
        let n = self.vertices;
        let order = self.topological_order().expect("acyclic");
        let mut paths = vec![vec![0i64; n]; n];
        for i in 0..n {
            paths[i][i] = 1;
            for &v in &order {
                if paths[i][v] == 0 {
                    continue;
                }
                for &(s, t) in &self.arrows {
                    if s == v {
                        paths[i][t] += paths[i][v];
                    }
                }
            }
        }
        paths
    }

    pub fn projective_dims(&self, i: usize) -> DimVector {
        self.path_counts()[i].clone()
    }

    pub fn injective_dims(&self, i: usize) -> DimVector {
        self.path_counts().iter().map(|row| row[i]).collect()
    }

    pub fn simple_dims(&self, i: usize) -> DimVector {
        let mut d = vec![0; self.vertices];
        d[i] = 1;
        d
    }
}
