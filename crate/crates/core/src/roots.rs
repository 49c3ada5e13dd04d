//! Dynkin classification, positive roots and the Coxeter transformation.

use crate::error::{Error, Result};
use crate::linalg::Matrix;
use crate::quiver::{DimVector, Quiver};
use serde::{Deserialize, Serialize};
use std::collections::{BTreeSet, HashMap};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum DynkinType {
    A(usize),
    D(usize),
    E(usize),
    NonDynkin,
}

impl DynkinType {
    pub fn is_dynkin(self) -> bool {
        self != DynkinType::NonDynkin
    }

    pub fn degrees(self) -> Vec<usize> {
        match self {
            DynkinType::A(n) => (2..=n + 1).collect(),
            DynkinType::D(n) => {
                let mut d: Vec<usize> = (1..n).map(|k| 2 * k).collect();
                d.push(n);
                d.sort_unstable();
                d
            }
            DynkinType::E(6) => vec![2, 5, 6, 8, 9, 12],
            DynkinType::E(7) => vec![2, 6, 8, 10, 12, 14, 18],
            DynkinType::E(8) => vec![2, 8, 12, 14, 18, 20, 24, 30],
            _ => vec![],
        }
    }

    pub fn coxeter_number(self) -> usize {
        self.degrees().into_iter().max().unwrap_or(0)
    }
}

impl std::fmt::Display for DynkinType {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            DynkinType::A(n) => write!(f, "A{n}"),
            DynkinType::D(n) => write!(f, "D{n}"),
            DynkinType::E(n) => write!(f, "E{n}"),
            DynkinType::NonDynkin => write!(f, "non-Dynkin"),
        }
    }
}

/// Classify the underlying graph.
pub fn classify(q: &Quiver) -> DynkinType {
    let n = q.vertices;
    if !q.is_connected() {
        return DynkinType::NonDynkin;
    }
    let mut deg = vec![0usize; n];
    for i in 0..n {
        for j in 0..n {
            if i != j {
                let e = q.edge_count(i, j);
                if e > 1 {
                    return DynkinType::NonDynkin;
                }
                deg[i] += e;
            }
        }
    }
    if q.arrows.iter().any(|&(s, t)| s == t) || q.arrows.len() != n - 1 {
        return DynkinType::NonDynkin;
    }
    // a tree from here on
    let branch: Vec<usize> = (0..n).filter(|&v| deg[v] >= 3).collect();
    match branch.len() {
        0 => DynkinType::A(n),
        1 if deg[branch[0]] == 3 => {
            let c = branch[0];
            let mut arms: Vec<usize> = (0..n)
                .filter(|&v| q.edge_count(c, v) == 1)
                .map(|start| {
                    let (mut prev, mut cur, mut len) = (c, start, 1);
                    loop {
                        let next = (0..n).find(|&w| w != prev && q.edge_count(cur, w) == 1);
                        match next {
                            Some(w) => {
                                prev = cur;
                                cur = w;
                                len += 1;
                            }
                            None => break len,
                        }
                    }
                })
                .collect();
            arms.sort_unstable();
            match (arms[0], arms[1], arms[2]) {
                (1, 1, _) => DynkinType::D(n),
                (1, 2, 2) => DynkinType::E(6),
                (1, 2, 3) => DynkinType::E(7),
                (1, 2, 4) => DynkinType::E(8),
                _ => DynkinType::NonDynkin,
            }
        }
        _ => DynkinType::NonDynkin,
    }
}

#[derive(Clone, Debug)]
pub struct RootData {
    pub kind: DynkinType,
    /// Positive roots in lexicographic order.
    pub roots: Vec<DimVector>,
    pub degrees: Vec<usize>,
    pub coxeter_number: usize,
    /// Coxeter transformation on dimension vectors.
    pub coxeter: Vec<Vec<i64>>,
    pub coxeter_inv: Vec<Vec<i64>>,
    index: HashMap<DimVector, usize>,
}

fn sym_form(q: &Quiver, a: &[i64], b: &[i64]) -> i64 {
    q.euler_form(a, b).unwrap() + q.euler_form(b, a).unwrap()
}

fn apply(m: &[Vec<i64>], v: &[i64]) -> Vec<i64> {
    m.iter().map(|row| row.iter().zip(v).map(|(a, b)| a * b).sum()).collect()
}

/// Phi = -C^{-1} C^T for the Euler matrix C, so that <x, y> = -<y, Phi x>.
pub fn coxeter_matrix(q: &Quiver) -> (Vec<Vec<i64>>, Vec<Vec<i64>>) {
    let n = q.vertices;
    let c = q.euler_matrix();
    let flat: Vec<i64> = c.iter().flatten().copied().collect();
    let cm = Matrix::from_i64(n, n, &flat);
    let cinv = cm.inverse().expect("Euler matrix is unitriangular");
    let phi = cinv.mul(&cm.transpose()).scale(&crate::linalg::q(-1));
    let phi_inv = phi.inverse().expect("Coxeter transformation invertible");
    let to_rows = |m: &Matrix| -> Vec<Vec<i64>> {
        let flat = m.to_i64().expect("integral");
        flat.chunks(n).map(|r| r.to_vec()).collect()
    };
    (to_rows(&phi), to_rows(&phi_inv))
}

impl RootData {
    pub fn new(q: &Quiver) -> Self {
        let kind = classify(q);
        let n = q.vertices;
        let mut found: BTreeSet<DimVector> = BTreeSet::new();
        if kind.is_dynkin() {
            let mut frontier: Vec<DimVector> = (0..n).map(|i| q.simple_dims(i)).collect();
            found.extend(frontier.iter().cloned());
            while let Some(r) = frontier.pop() {
                for i in 0..n {
                    let e = q.simple_dims(i);
                    let c = sym_form(q, &r, &e);
                    let mut s = r.clone();
                    s[i] -= c;
                    if s.iter().all(|&x| x >= 0) && s.iter().any(|&x| x > 0) && found.insert(s.clone()) {
                        frontier.push(s);
                    }
                }
            }
        }
        let roots: Vec<DimVector> = found.into_iter().collect();
        let index = roots.iter().enumerate().map(|(i, r)| (r.clone(), i)).collect();
        let (coxeter, coxeter_inv) = coxeter_matrix(q);
        let degrees = kind.degrees();
        RootData { kind, coxeter_number: kind.coxeter_number(), degrees, roots, coxeter, coxeter_inv, index }
    }

    pub fn index_of(&self, r: &[i64]) -> Option<usize> {
        self.index.get(r).copied()
    }

    pub fn phi(&self, v: &[i64]) -> Vec<i64> {
        apply(&self.coxeter, v)
    }

    pub fn phi_inv(&self, v: &[i64]) -> Vec<i64> {
        apply(&self.coxeter_inv, v)
    }

    /// AR translate on (root, shift); projectives go to injectives one shift down.
    pub fn tau(&self, root: &[i64], shift: i64) -> Result<(DimVector, i64)> {
        self.require_root(root)?;
        let v = self.phi(root);
        Ok(if v.iter().all(|&x| x >= 0) { (v, shift) } else { (v.iter().map(|x| -x).collect(), shift - 1) })
    }

    pub fn tau_inverse(&self, root: &[i64], shift: i64) -> Result<(DimVector, i64)> {
        self.require_root(root)?;
        let v = self.phi_inv(root);
        Ok(if v.iter().all(|&x| x >= 0) { (v, shift) } else { (v.iter().map(|x| -x).collect(), shift + 1) })
    }

    fn require_root(&self, root: &[i64]) -> Result<()> {
        if !self.kind.is_dynkin() {
            return Err(Error::NonDynkinUnsupported);
        }
        if self.index_of(root).is_none() {
            return Err(Error::NotARoot(root.to_vec()));
        }
        Ok(())
    }
}

pub fn root_data(q: &Quiver) -> RootData {
    RootData::new(q)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn a2_roots() {
        let rd = RootData::new(&Quiver::a2());
        assert_eq!(rd.kind, DynkinType::A(2));
        assert_eq!(rd.roots, vec![vec![0, 1], vec![1, 0], vec![1, 1]]);
        assert_eq!(rd.degrees, vec![2, 3]);
        assert_eq!(rd.coxeter_number, 3);
    }

    #[test]
    fn a3_roots() {
        let rd = RootData::new(&Quiver::a3());
        assert_eq!(rd.kind, DynkinType::A(3));
        assert_eq!(rd.roots.len(), 6);
        assert_eq!(rd.degrees, vec![2, 3, 4]);
        assert_eq!(rd.coxeter_number, 4);
    }

    #[test]
    fn double_arrow_is_not_dynkin() {
        let q = Quiver::new(3, vec![(0, 1), (0, 1), (1, 2)]).unwrap();
        assert_eq!(classify(&q), DynkinType::NonDynkin);
        let rd = RootData::new(&q);
        assert!(rd.roots.is_empty());
        assert_eq!(rd.coxeter.len(), 3);
    }

    #[test]
    fn root_counts_match_degrees() {
        let cases = [
            Quiver::a_n(5),
            Quiver::new(4, vec![(0, 1), (2, 1), (3, 1)]).unwrap(),
            Quiver::new(6, vec![(0, 1), (1, 2), (2, 3), (3, 4), (2, 5)]).unwrap(),
            Quiver::new(7, vec![(0, 1), (1, 2), (2, 3), (3, 4), (4, 5), (2, 6)]).unwrap(),
            Quiver::new(8, vec![(0, 1), (1, 2), (2, 3), (3, 4), (4, 5), (5, 6), (2, 7)]).unwrap(),
        ];
        let kinds = [DynkinType::A(5), DynkinType::D(4), DynkinType::E(6), DynkinType::E(7), DynkinType::E(8)];
        for (q, k) in cases.iter().zip(kinds) {
            let rd = RootData::new(q);
            assert_eq!(rd.kind, k);
            assert_eq!(rd.roots.len(), q.vertices * rd.coxeter_number / 2, "{k}");
        }
    }

    #[test]
    fn tau_examples() {
        let rd = RootData::new(&Quiver::a2());
        assert_eq!(rd.tau(&[1, 0], 0).unwrap(), (vec![0, 1], 0));
        assert_eq!(rd.tau(&[1, 1], 0).unwrap(), (vec![1, 0], -1));
        for r in rd.roots.clone() {
            for s in -2..3 {
                let (t, k) = rd.tau(&r, s).unwrap();
                assert_eq!(rd.tau_inverse(&t, k).unwrap(), (r.clone(), s));
            }
        }
        assert_eq!(rd.tau(&[2, 0], 0), Err(Error::NotARoot(vec![2, 0])));
    }

    #[test]
    fn coxeter_order_is_h() {
        let q = Quiver::a3();
        let rd = RootData::new(&q);
        let mut v = vec![1, 0, 0];
        for _ in 0..rd.coxeter_number {
            v = rd.phi(&v);
        }
        assert_eq!(v, vec![1, 0, 0]);
    }
}
