//! Representations of quivers: Hom, Ext^1, extensions, kernels and reflection functors.

use crate::error::{Error, Result};
use crate::linalg::{complement_by_standard, Matrix, Q};
use crate::quiver::{DimVector, Quiver};
use crate::roots::classify;
use num::{One, Zero};

/// A representation: one space per vertex and one matrix (dims[t] x dims[s]) per arrow.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Rep {
    pub dims: Vec<usize>,
    pub maps: Vec<Matrix>,
}

/// A morphism: one matrix per vertex.
pub type RepMap = Vec<Matrix>;

impl Rep {
    pub fn zero(q: &Quiver) -> Rep {
        Rep {
            dims: vec![0; q.vertices],
            maps: q.arrows.iter().map(|_| Matrix::zeros(0, 0)).collect(),
        }
    }

    pub fn simple(q: &Quiver, i: usize) -> Rep {
        let mut dims = vec![0; q.vertices];
        dims[i] = 1;
        let maps = q.arrows.iter().map(|&(s, t)| Matrix::zeros(dims[t], dims[s])).collect();
        Rep { dims, maps }
    }

    pub fn dim_vector(&self) -> DimVector {
        self.dims.iter().map(|&d| d as i64).collect()
    }

    pub fn total_dim(&self) -> usize {
        self.dims.iter().sum()
    }

    pub fn is_zero(&self) -> bool {
        self.total_dim() == 0
    }

    pub fn check(&self, q: &Quiver) -> Result<()> {
        if self.dims.len() != q.vertices || self.maps.len() != q.arrows.len() {
            return Err(Error::QuiverMismatch);
        }
        for (m, &(s, t)) in self.maps.iter().zip(&q.arrows) {
            if m.rows != self.dims[t] || m.cols != self.dims[s] {
                return Err(Error::QuiverMismatch);
            }
        }
        Ok(())
    }

    pub fn direct_sum(&self, other: &Rep, q: &Quiver) -> Rep {
        let dims: Vec<usize> = self.dims.iter().zip(&other.dims).map(|(a, b)| a + b).collect();
        let maps = q
            .arrows
            .iter()
            .enumerate()
            .map(|(k, &(s, t))| {
                let mut m = Matrix::zeros(dims[t], dims[s]);
                m.set_block(0, 0, &self.maps[k]);
                m.set_block(self.dims[t], self.dims[s], &other.maps[k]);
                m
            })
            .collect();
        Rep { dims, maps }
    }

    /// Identity-free check that f is a morphism M -> N.
    pub fn is_morphism(q: &Quiver, m: &Rep, n: &Rep, f: &RepMap) -> bool {
        q.arrows.iter().enumerate().all(|(k, &(s, t))| n.maps[k].mul(&f[s]) == f[t].mul(&m.maps[k]))
    }
}

/// Coordinates of C^0 = sum_i Hom(M_i, N_i): variable (i, r, c) for entry r,c of f_i.
struct Layout {
    offsets: Vec<usize>,
    total: usize,
}

fn layout(shapes: &[(usize, usize)]) -> Layout {
    let mut offsets = Vec::with_capacity(shapes.len());
    let mut total = 0;
    for &(r, c) in shapes {
        offsets.push(total);
        total += r * c;
    }
    Layout { offsets, total }
}

/// The differential C^0 -> C^1, delta(g)_a = N_a g_s - g_t M_a.
fn cochain_differential(q: &Quiver, m: &Rep, n: &Rep) -> (Matrix, Layout, Layout) {
    let c0 = layout(&(0..q.vertices).map(|i| (n.dims[i], m.dims[i])).collect::<Vec<_>>());
    let c1 = layout(&q.arrows.iter().map(|&(s, t)| (n.dims[t], m.dims[s])).collect::<Vec<_>>());
    let mut d = Matrix::zeros(c1.total, c0.total);
    for (k, &(s, t)) in q.arrows.iter().enumerate() {
        let (na, ma) = (&n.maps[k], &m.maps[k]);
        let base = c1.offsets[k];
        let cols_out = m.dims[s];
        // N_a g_s: entry (r, c) = sum_x N_a[r, x] g_s[x, c]
        for r in 0..n.dims[t] {
            for c in 0..m.dims[s] {
                let row = base + r * cols_out + c;
                for x in 0..n.dims[s] {
                    let v = &na[(r, x)];
                    if !v.is_zero() {
                        d[(row, c0.offsets[s] + x * m.dims[s] + c)] += v;
                    }
                }
                // - g_t M_a: entry (r, c) = sum_y g_t[r, y] M_a[y, c]
                for y in 0..m.dims[t] {
                    let v = &ma[(y, c)];
                    if !v.is_zero() {
                        d[(row, c0.offsets[t] + r * m.dims[t] + y)] -= v;
                    }
                }
            }
        }
    }
    (d, c0, c1)
}

fn unpack(v: &[Q], lay: &Layout, shapes: &[(usize, usize)]) -> Vec<Matrix> {
    shapes
        .iter()
        .enumerate()
        .map(|(i, &(r, c))| {
            let mut m = Matrix::zeros(r, c);
            for a in 0..r {
                for b in 0..c {
                    m[(a, b)] = v[lay.offsets[i] + a * c + b].clone();
                }
            }
            m
        })
        .collect()
}

/// Entries of a family of matrices, concatenated row-major.
pub fn flatten(ms: &[Matrix]) -> Vec<Q> {
    let mut v = Vec::new();
    for m in ms {
        for r in 0..m.rows {
            v.extend(m.row(r));
        }
    }
    v
}

/// Spanning vectors of the coboundaries in C^1(M, N), flattened as in `flatten`.
pub fn coboundaries(q: &Quiver, m: &Rep, n: &Rep) -> (Vec<Vec<Q>>, usize) {
    let (d, _, c1) = cochain_differential(q, m, n);
    ((0..d.cols).map(|c| d.col(c)).collect(), c1.total)
}

fn check_pair(q: &Quiver, m: &Rep, n: &Rep) -> Result<()> {
    m.check(q)?;
    n.check(q)
}

/// Basis of Hom(M, N), echelonized.
pub fn hom_space(q: &Quiver, m: &Rep, n: &Rep) -> Result<Vec<RepMap>> {
    check_pair(q, m, n)?;
    let (d, c0, _) = cochain_differential(q, m, n);
    let shapes: Vec<(usize, usize)> = (0..q.vertices).map(|i| (n.dims[i], m.dims[i])).collect();
    Ok(d.nullspace().iter().map(|v| unpack(v, &c0, &shapes)).collect())
}

pub fn hom_dim(q: &Quiver, m: &Rep, n: &Rep) -> Result<usize> {
    check_pair(q, m, n)?;
    let (d, c0, _) = cochain_differential(q, m, n);
    Ok(c0.total - d.rank())
}

pub fn ext1_dim(q: &Quiver, m: &Rep, n: &Rep) -> Result<usize> {
    check_pair(q, m, n)?;
    let (d, _, c1) = cochain_differential(q, m, n);
    Ok(c1.total - d.rank())
}

pub fn end_dim(q: &Quiver, m: &Rep) -> Result<usize> {
    hom_dim(q, m, m)
}

/// Cocycles xi^1..xi^e (one matrix M_s -> N_t per arrow) spanning a complement of the coboundaries.
pub fn ext1_basis(q: &Quiver, m: &Rep, n: &Rep) -> Result<Vec<Vec<Matrix>>> {
    check_pair(q, m, n)?;
    let (d, _, c1) = cochain_differential(q, m, n);
    let image: Vec<Vec<Q>> = (0..d.cols).map(|c| d.col(c)).collect();
    let picks = complement_by_standard(&image, c1.total);
    let shapes: Vec<(usize, usize)> = q.arrows.iter().map(|&(s, t)| (n.dims[t], m.dims[s])).collect();
    Ok(picks
        .into_iter()
        .map(|i| {
            let mut v = vec![Q::zero(); c1.total];
            v[i] = Q::one();
            unpack(&v, &c1, &shapes)
        })
        .collect())
}

/// Universal extension 0 -> S^e -> T -> X -> 0 with e = dim Ext^1(X, S).
pub fn universal_extension(q: &Quiver, x: &Rep, s: &Rep) -> Result<Rep> {
    let xi = ext1_basis(q, x, s)?;
    let e = xi.len();
    if e == 0 {
        return Err(Error::NoExtension);
    }
    let dims: Vec<usize> = (0..q.vertices).map(|i| e * s.dims[i] + x.dims[i]).collect();
    let ie = Matrix::identity(e);
    let maps = q
        .arrows
        .iter()
        .enumerate()
        .map(|(k, &(src, tgt))| {
            let mut m = Matrix::zeros(dims[tgt], dims[src]);
            m.set_block(0, 0, &ie.kron(&s.maps[k]));
            for (l, cocycle) in xi.iter().enumerate() {
                m.set_block(l * s.dims[tgt], e * s.dims[src], &cocycle[k]);
            }
            m.set_block(e * s.dims[tgt], e * s.dims[src], &x.maps[k]);
            m
        })
        .collect();
    Ok(Rep { dims, maps })
}

/// Universal coextension 0 -> X -> T -> S^e -> 0 with e = dim Ext^1(S, X).
pub fn universal_coextension(q: &Quiver, x: &Rep, s: &Rep) -> Result<Rep> {
    let xi = ext1_basis(q, s, x)?;
    let e = xi.len();
    if e == 0 {
        return Err(Error::NoExtension);
    }
    let dims: Vec<usize> = (0..q.vertices).map(|i| x.dims[i] + e * s.dims[i]).collect();
    let ie = Matrix::identity(e);
    let maps = q
        .arrows
        .iter()
        .enumerate()
        .map(|(k, &(src, tgt))| {
            let mut m = Matrix::zeros(dims[tgt], dims[src]);
            m.set_block(0, 0, &x.maps[k]);
            for (l, cocycle) in xi.iter().enumerate() {
                m.set_block(0, x.dims[src] + l * s.dims[src], &cocycle[k]);
            }
            m.set_block(x.dims[tgt], x.dims[src], &ie.kron(&s.maps[k]));
            m
        })
        .collect();
    Ok(Rep { dims, maps })
}

/// Kernel and cokernel of f: M -> N, with the inclusion (columns) and projection (rows).
pub struct KerCoker {
    pub kernel: Rep,
    pub inclusion: RepMap,
    pub cokernel: Rep,
    pub projection: RepMap,
}

fn solve_right(a: &Matrix, b: &Matrix) -> Matrix {
    a.solve(b).expect("induced map exists")
}

pub fn kernel_cokernel(q: &Quiver, m: &Rep, n: &Rep, f: &RepMap) -> KerCoker {
    let nv = q.vertices;
    let inclusion: Vec<Matrix> = (0..nv)
        .map(|i| {
            let basis = f[i].nullspace();
            Matrix::from_cols(&basis, m.dims[i])
        })
        .collect();
    let projection: Vec<Matrix> = (0..nv)
        .map(|i| {
            let basis = f[i].left_nullspace();
            Matrix::from_rows(&basis, n.dims[i])
        })
        .collect();
    let kdims: Vec<usize> = inclusion.iter().map(|k| k.cols).collect();
    let cdims: Vec<usize> = projection.iter().map(|p| p.rows).collect();
    let kmaps = q
        .arrows
        .iter()
        .enumerate()
        .map(|(k, &(s, t))| {
            if kdims[s] == 0 || kdims[t] == 0 {
                return Matrix::zeros(kdims[t], kdims[s]);
            }
            // inclusion_t * K_a = M_a * inclusion_s
            solve_right(&inclusion[t], &m.maps[k].mul(&inclusion[s]))
        })
        .collect();
    let cmaps = q
        .arrows
        .iter()
        .enumerate()
        .map(|(k, &(s, t))| {
            if cdims[s] == 0 || cdims[t] == 0 {
                return Matrix::zeros(cdims[t], cdims[s]);
            }
            // C_a * projection_s = projection_t * N_a
            let rhs = projection[t].mul(&n.maps[k]);
            solve_right(&projection[s].transpose(), &rhs.transpose()).transpose()
        })
        .collect();
    KerCoker {
        kernel: Rep { dims: kdims, maps: kmaps },
        inclusion,
        cokernel: Rep { dims: cdims, maps: cmaps },
        projection,
    }
}

/// Reflection at a sink k: the new space at k is the kernel of the sum map into M_k.
pub fn reflect_plus(q: &Quiver, m: &Rep, k: usize) -> (Quiver, Rep) {
    assert!(q.is_sink(k));
    let incoming: Vec<usize> = (0..q.arrows.len()).filter(|&a| q.arrows[a].1 == k).collect();
    let widths: Vec<usize> = incoming.iter().map(|&a| m.dims[q.arrows[a].0]).collect();
    let total: usize = widths.iter().sum();
    let mut h = Matrix::zeros(m.dims[k], total);
    let mut off = 0;
    for (idx, &a) in incoming.iter().enumerate() {
        h.set_block(0, off, &m.maps[a]);
        off += widths[idx];
    }
    let ker = Matrix::from_cols(&h.nullspace(), total);
    let q2 = q.reflect_at(k);
    let mut dims = m.dims.clone();
    dims[k] = ker.cols;
    let mut maps = m.maps.clone();
    let mut off = 0;
    for (idx, &a) in incoming.iter().enumerate() {
        maps[a] = ker.block(off, 0, widths[idx], ker.cols);
        off += widths[idx];
    }
    (q2, Rep { dims, maps })
}

/// Reflection at a source k: the new space at k is the cokernel of the map out of M_k.
pub fn reflect_minus(q: &Quiver, m: &Rep, k: usize) -> (Quiver, Rep) {
    assert!(q.is_source(k));
    let outgoing: Vec<usize> = (0..q.arrows.len()).filter(|&a| q.arrows[a].0 == k).collect();
    let heights: Vec<usize> = outgoing.iter().map(|&a| m.dims[q.arrows[a].1]).collect();
    let total: usize = heights.iter().sum();
    let mut h = Matrix::zeros(total, m.dims[k]);
    let mut off = 0;
    for (idx, &a) in outgoing.iter().enumerate() {
        h.set_block(off, 0, &m.maps[a]);
        off += heights[idx];
    }
    let proj = Matrix::from_rows(&h.left_nullspace(), total);
    let q2 = q.reflect_at(k);
    let mut dims = m.dims.clone();
    dims[k] = proj.rows;
    let mut maps = m.maps.clone();
    let mut off = 0;
    for (idx, &a) in outgoing.iter().enumerate() {
        maps[a] = proj.block(0, off, proj.rows, heights[idx]);
        off += heights[idx];
    }
    (q2, Rep { dims, maps })
}

fn simple_reflection(q: &Quiver, r: &[i64], k: usize) -> Vec<i64> {
    let e = q.simple_dims(k);
    let c = q.euler_form(r, &e).unwrap() + q.euler_form(&e, r).unwrap();
    let mut s = r.to_vec();
    s[k] -= c;
    s
}

/// The indecomposable with dimension vector r, built by reflecting r down to a simple (sinks first,
/// smallest index) and applying the inverse reflection functors to that simple.
pub fn indecomposable_from_root(q: &Quiver, r: &[i64]) -> Result<Rep> {
    if r.len() != q.vertices {
        return Err(Error::DimensionMismatch);
    }
    if !classify(q).is_dynkin() {
        return Err(Error::NonDynkinUnsupported);
    }
    if r.iter().any(|&x| x < 0) || r.iter().all(|&x| x == 0) {
        return Err(Error::NotARoot(r.to_vec()));
    }
    let mut steps: Vec<(Quiver, usize)> = Vec::new();
    let mut cur_q = q.clone();
    let mut cur_r = r.to_vec();
    let limit = 4 * q.vertices * q.vertices + 16;
    loop {
        if cur_r.iter().sum::<i64>() == 1 {
            break;
        }
        if steps.len() > limit {
            return Err(Error::NotARoot(r.to_vec()));
        }
        let k = (0..q.vertices).find(|&v| cur_q.is_sink(v)).expect("acyclic quiver has a sink");
        let next = simple_reflection(&cur_q, &cur_r, k);
        if next.iter().any(|&x| x < 0) {
            return Err(Error::NotARoot(r.to_vec()));
        }
        steps.push((cur_q.clone(), k));
        cur_q = cur_q.reflect_at(k);
        cur_r = next;
    }
    let j = cur_r.iter().position(|&x| x == 1).unwrap();
    let mut rep = Rep::simple(&cur_q, j);
    for (prev_q, k) in steps.into_iter().rev() {
        let (q_back, rep_back) = reflect_minus(&cur_q, &rep, k);
        debug_assert_eq!(q_back, prev_q);
        cur_q = q_back;
        rep = rep_back;
    }
    if rep.dim_vector() != r {
        return Err(Error::NotARoot(r.to_vec()));
    }
    Ok(rep)
}

/// The map X -> S^h whose components run through a basis of Hom(X, S).
pub fn universal_map_to(q: &Quiver, x: &Rep, s: &Rep) -> Result<(Rep, RepMap)> {
    let basis = hom_space(q, x, s)?;
    let h = basis.len();
    let mut target = Rep::zero(q);
    for _ in 0..h {
        target = target.direct_sum(s, q);
    }
    let f = (0..q.vertices)
        .map(|i| {
            let mut m = Matrix::zeros(h * s.dims[i], x.dims[i]);
            for (l, g) in basis.iter().enumerate() {
                m.set_block(l * s.dims[i], 0, &g[i]);
            }
            m
        })
        .collect();
    Ok((target, f))
}

/// The map S^h -> X whose components run through a basis of Hom(S, X).
pub fn universal_map_from(q: &Quiver, s: &Rep, x: &Rep) -> Result<(Rep, RepMap)> {
    let basis = hom_space(q, s, x)?;
    let h = basis.len();
    let mut source = Rep::zero(q);
    for _ in 0..h {
        source = source.direct_sum(s, q);
    }
    let f = (0..q.vertices)
        .map(|i| {
            let mut m = Matrix::zeros(x.dims[i], h * s.dims[i]);
            for (l, g) in basis.iter().enumerate() {
                m.set_block(0, l * s.dims[i], &g[i]);
            }
            m
        })
        .collect();
    Ok((source, f))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn a3_w() -> Rep {
        indecomposable_from_root(&Quiver::a3(), &[1, 1, 1]).unwrap()
    }

    #[test]
    fn hom_examples() {
        let a2 = Quiver::a2();
        let s0 = Rep::simple(&a2, 0);
        let s1 = Rep::simple(&a2, 1);
        assert_eq!(hom_dim(&a2, &s0, &s0).unwrap(), 1);
        assert_eq!(hom_dim(&a2, &s0, &s1).unwrap(), 0);
        let a3 = Quiver::a3();
        // W = P_2 has top S_2 and socle S_0
        assert_eq!(hom_dim(&a3, &a3_w(), &Rep::simple(&a3, 0)).unwrap(), 0);
        assert_eq!(hom_dim(&a3, &Rep::simple(&a3, 0), &a3_w()).unwrap(), 1);
        assert_eq!(hom_dim(&a3, &a3_w(), &Rep::simple(&a3, 2)).unwrap(), 1);
        assert_eq!(hom_dim(&a2, &s0, &Rep::simple(&a3, 0)), Err(Error::QuiverMismatch));
    }

    #[test]
    fn ext_examples() {
        let a2 = Quiver::a2();
        let s0 = Rep::simple(&a2, 0);
        let s1 = Rep::simple(&a2, 1);
        assert_eq!(ext1_dim(&a2, &s0, &s1).unwrap(), 1);
        let p0 = indecomposable_from_root(&a2, &[1, 1]).unwrap();
        assert_eq!(ext1_dim(&a2, &p0, &p0).unwrap(), 0);
        let a3 = Quiver::a3();
        assert_eq!(ext1_dim(&a3, &Rep::simple(&a3, 2), &Rep::simple(&a3, 0)).unwrap(), 0);
    }

    #[test]
    fn universal_extension_examples() {
        let a2 = Quiver::a2();
        let t = universal_extension(&a2, &Rep::simple(&a2, 0), &Rep::simple(&a2, 1)).unwrap();
        assert_eq!(t.dims, vec![1, 1]);
        assert_eq!(end_dim(&a2, &t).unwrap(), 1);
        let a3 = Quiver::a3();
        let u = universal_extension(&a3, &Rep::simple(&a3, 1), &Rep::simple(&a3, 0)).unwrap();
        assert_eq!(u.dims, vec![1, 1, 0]);
        assert_eq!(end_dim(&a3, &u).unwrap(), 1);
        let v = universal_extension(&a3, &Rep::simple(&a3, 2), &Rep::simple(&a3, 1)).unwrap();
        assert_eq!(v.dims, vec![0, 1, 1]);
        assert_eq!(end_dim(&a3, &v).unwrap(), 1);
        assert_eq!(
            universal_extension(&a3, &Rep::simple(&a3, 0), &Rep::simple(&a3, 1)),
            Err(Error::NoExtension)
        );
        let c = universal_coextension(&a3, &Rep::simple(&a3, 0), &Rep::simple(&a3, 1)).unwrap();
        assert_eq!(c.dims, vec![1, 1, 0]);
        assert_eq!(end_dim(&a3, &c).unwrap(), 1);
    }

    #[test]
    fn kernel_cokernel_examples() {
        let a3 = Quiver::a3();
        let w = a3_w();
        let s2 = Rep::simple(&a3, 2);
        let f = hom_space(&a3, &w, &s2).unwrap().remove(0);
        let kc = kernel_cokernel(&a3, &w, &s2, &f);
        assert_eq!(kc.kernel.dims, vec![1, 1, 0]);
        assert_eq!(end_dim(&a3, &kc.kernel).unwrap(), 1);
        assert!(kc.cokernel.is_zero());
        let s0 = Rep::simple(&a3, 0);
        let g = hom_space(&a3, &s0, &w).unwrap().remove(0);
        let kc = kernel_cokernel(&a3, &s0, &w, &g);
        assert!(kc.kernel.is_zero());
        assert_eq!(kc.cokernel.dims, vec![0, 1, 1]);
        assert!(Rep::is_morphism(&a3, &w, &kc.cokernel, &kc.projection));
        let id: RepMap = w.dims.iter().map(|&d| Matrix::identity(d)).collect();
        let kc = kernel_cokernel(&a3, &w, &w, &id);
        assert!(kc.kernel.is_zero() && kc.cokernel.is_zero());
        let zero: RepMap = (0..3).map(|i| Matrix::zeros(w.dims[i], w.dims[i])).collect();
        let kc = kernel_cokernel(&a3, &w, &w, &zero);
        assert_eq!(kc.kernel.dims, w.dims);
        assert_eq!(kc.cokernel.dims, w.dims);
        assert!(Rep::is_morphism(&a3, &kc.kernel, &w, &kc.inclusion));
    }

    #[test]
    fn indecomposables() {
        let a2 = Quiver::a2();
        assert_eq!(indecomposable_from_root(&a2, &[0, 1]).unwrap(), Rep::simple(&a2, 1));
        let p0 = indecomposable_from_root(&a2, &[1, 1]).unwrap();
        assert_eq!(p0.maps[0].rank(), 1);
        assert_eq!(end_dim(&Quiver::a3(), &a3_w()).unwrap(), 1);
        assert_eq!(indecomposable_from_root(&a2, &[2, 1]), Err(Error::NotARoot(vec![2, 1])));
    }

    #[test]
    fn end_dims() {
        let a2 = Quiver::a2();
        let sum = Rep::simple(&a2, 0).direct_sum(&Rep::simple(&a2, 1), &a2);
        assert_eq!(end_dim(&a2, &Rep::simple(&a2, 0)).unwrap(), 1);
        assert_eq!(end_dim(&a2, &sum).unwrap(), 2);
    }
}
