//! The Calabi-Yau-N category of a Dynkin quiver as twisted complexes over the Ext-algebra of its simples.
//!
//! That algebra is the trivial extension of the radical-square-zero Ext-algebra of the quiver: an
//! idempotent e_v and a degree-N class t_v per vertex, and for each arrow p -> q a class a in
//! Hom^1(S_p, S_q) with its dual a* in Hom^{N-1}(S_q, S_p), where a* a = t_p and a a* = (-1)^{N-1} t_q.
//! All other products of positive-degree classes vanish.
//!
//! Morphism entries between shifted summands are plain algebra elements; a morphism of degree j from
//! S_v[s] to S_w[r] is an element of degree j + r - s.

use crate::derived::{DObject, DerivedCat, GradedHom};
use crate::linalg::{q, Matrix, Q};
use crate::quiver::Quiver;
use num::{One, Signed, Zero};
use std::collections::{BTreeMap, HashMap};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Gen {
    Unit(usize),
    Top(usize),
    Arrow(usize),
    Dual(usize),
}

#[derive(Clone, Debug)]
pub struct ExtAlgebra {
    pub vertices: usize,
    pub arrows: Vec<(usize, usize)>,
    pub n_cy: i64,
    basis: Vec<Vec<Vec<Gen>>>,
}

impl ExtAlgebra {
    pub fn new(q: &Quiver, n_cy: i64) -> Self {
        let n = q.vertices;
        let mut basis = vec![vec![Vec::new(); n]; n];
        for v in 0..n {
            basis[v][v].push(Gen::Unit(v));
            basis[v][v].push(Gen::Top(v));
        }
        for (a, &(p, t)) in q.arrows.iter().enumerate() {
            basis[p][t].push(Gen::Arrow(a));
            basis[t][p].push(Gen::Dual(a));
        }
        ExtAlgebra { vertices: n, arrows: q.arrows.clone(), n_cy, basis }
    }

    pub fn source(&self, g: Gen) -> usize {
        match g {
            Gen::Unit(v) | Gen::Top(v) => v,
            Gen::Arrow(a) => self.arrows[a].0,
            Gen::Dual(a) => self.arrows[a].1,
        }
    }

    pub fn target(&self, g: Gen) -> usize {
        match g {
            Gen::Unit(v) | Gen::Top(v) => v,
            Gen::Arrow(a) => self.arrows[a].1,
            Gen::Dual(a) => self.arrows[a].0,
        }
    }

    pub fn degree(&self, g: Gen) -> i64 {
        match g {
            Gen::Unit(_) => 0,
            Gen::Top(_) => self.n_cy,
            Gen::Arrow(_) => 1,
            Gen::Dual(_) => self.n_cy - 1,
        }
    }

    /// Basis of Hom^*(S_v, S_w).
    pub fn basis(&self, v: usize, w: usize) -> &[Gen] {
        &self.basis[v][w]
    }

    /// x after y, as a signed generator.
    pub fn mul(&self, x: Gen, y: Gen) -> Option<(i64, Gen)> {
        debug_assert_eq!(self.target(y), self.source(x));
        match (x, y) {
            (_, Gen::Unit(_)) => Some((1, x)),
            (Gen::Unit(_), _) => Some((1, y)),
            (Gen::Dual(b), Gen::Arrow(a)) if a == b => Some((1, Gen::Top(self.arrows[a].0))),
            (Gen::Arrow(a), Gen::Dual(b)) if a == b => {
                Some((if (self.n_cy - 1) % 2 == 0 { 1 } else { -1 }, Gen::Top(self.arrows[a].1)))
            }
            _ => None,
        }
    }
}

/// Entries keyed by (target summand, source summand, generator).
pub type Mor = BTreeMap<(usize, usize, Gen), Q>;

/// A one-sided twisted complex: summands S_v[shift] and a degree-one differential with square zero.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Twisted {
    pub summands: Vec<(usize, i64)>,
    pub delta: Mor,
}

fn add_to(m: &mut Mor, key: (usize, usize, Gen), c: Q) {
    if c.is_zero() {
        return;
    }
    let e = m.entry(key).or_insert_with(Q::zero);
    *e += c;
    if e.is_zero() {
        m.remove(&key);
    }
}

pub fn compose(alg: &ExtAlgebra, g: &Mor, f: &Mor) -> Mor {
    let mut by_target: HashMap<usize, Vec<(usize, Gen, &Q)>> = HashMap::new();
    for ((l, k, y), c) in f {
        by_target.entry(*l).or_default().push((*k, *y, c));
    }
    let mut out = Mor::new();
    for ((m, l, x), cg) in g {
        let Some(fs) = by_target.get(l) else { continue };
        for &(k, y, cf) in fs {
            if let Some((sign, z)) = alg.mul(*x, y) {
                add_to(&mut out, (*m, k, z), cg * cf * q(sign));
            }
        }
    }
    out
}

impl Twisted {
    pub fn simple(v: usize) -> Twisted {
        Twisted { summands: vec![(v, 0)], delta: Mor::new() }
    }

    pub fn len(&self) -> usize {
        self.summands.len()
    }

    pub fn is_empty(&self) -> bool {
        self.summands.is_empty()
    }

    pub fn shift(&self, k: i64) -> Twisted {
        let sign = if k.rem_euclid(2) == 0 { Q::one() } else { -Q::one() };
        Twisted {
            summands: self.summands.iter().map(|&(v, s)| (v, s + k)).collect(),
            delta: self.delta.iter().map(|(key, c)| (*key, c * &sign)).collect(),
        }
    }

    /// K-class in the basis of simples.
    pub fn class(&self, vertices: usize) -> Vec<i64> {
        let mut c = vec![0; vertices];
        for &(v, s) in &self.summands {
            c[v] += if s.rem_euclid(2) == 0 { 1 } else { -1 };
        }
        c
    }

    pub fn direct_sum(parts: &[Twisted]) -> Twisted {
        let mut out = Twisted { summands: Vec::new(), delta: Mor::new() };
        for p in parts {
            let off = out.summands.len();
            out.summands.extend(&p.summands);
            for ((l, k, g), c) in &p.delta {
                out.delta.insert((l + off, k + off, *g), c.clone());
            }
        }
        out
    }

    pub fn is_differential(&self, alg: &ExtAlgebra) -> bool {
        let degrees_ok = self.delta.keys().all(|&(l, k, g)| {
            alg.degree(g) - self.summands[l].1 + self.summands[k].1 == 1
                && alg.source(g) == self.summands[k].0
                && alg.target(g) == self.summands[l].0
        });
        degrees_ok && compose(alg, &self.delta, &self.delta).is_empty()
    }
}

/// Cone of a closed degree-zero map f: X -> Y, i.e. X[1] + Y.
pub fn cone(x: &Twisted, y: &Twisted, f: &Mor) -> Twisted {
    let xs = x.shift(1);
    let off = x.len();
    let mut out = Twisted::direct_sum(&[xs, y.clone()]);
    for ((l, k, g), c) in f {
        out.delta.insert((l + off, *k, *g), c.clone());
    }
    out
}

/// Cancel every invertible component of the differential.
pub fn minimize(alg: &ExtAlgebra, x: &Twisted) -> Twisted {
    let mut cur = x.clone();
    loop {
        let Some((l, k, inv)) =
            cur.delta.iter().find(|(key, _)| matches!(key.2, Gen::Unit(_))).map(|(key, c)| (key.0, key.1, c.recip()))
        else {
            break;
        };
        let mut delta = Mor::new();
        let into_l: Vec<(usize, Gen, Q)> =
            cur.delta.iter().filter(|(key, _)| key.0 == l && key.1 != k).map(|(key, c)| (key.1, key.2, c.clone())).collect();
        let out_of_k: Vec<(usize, Gen, Q)> =
            cur.delta.iter().filter(|(key, _)| key.1 == k && key.0 != l).map(|(key, c)| (key.0, key.2, c.clone())).collect();
        for (key, c) in &cur.delta {
            if key.0 != k && key.0 != l && key.1 != k && key.1 != l {
                add_to(&mut delta, *key, c.clone());
            }
        }
        for (a, x, ca) in &out_of_k {
            for (b, y, cb) in &into_l {
                if *a == k || *a == l || *b == k || *b == l {
                    continue;
                }
                if let Some((sign, z)) = alg.mul(*x, *y) {
                    add_to(&mut delta, (*a, *b, z), -(ca * cb * &inv * q(sign)));
                }
            }
        }
        let keep: Vec<usize> = (0..cur.len()).filter(|&i| i != k && i != l).collect();
        let mut index = vec![usize::MAX; cur.len()];
        for (new, &old) in keep.iter().enumerate() {
            index[old] = new;
        }
        cur = Twisted {
            summands: keep.iter().map(|&i| cur.summands[i]).collect(),
            delta: delta.into_iter().map(|((a, b, g), c)| ((index[a], index[b], g), c)).collect(),
        };
    }
    debug_assert!(cur.is_differential(alg));
    cur
}

/// The morphism complex Hom(X, Y) with the differential D f = d_Y f - (-1)^|f| f d_X.
pub struct HomComplex<'a> {
    alg: &'a ExtAlgebra,
    x: &'a Twisted,
    y: &'a Twisted,
    basis: BTreeMap<i64, Vec<(usize, usize, Gen)>>,
}

impl<'a> HomComplex<'a> {
    pub fn new(alg: &'a ExtAlgebra, x: &'a Twisted, y: &'a Twisted) -> Self {
        let mut basis: BTreeMap<i64, Vec<(usize, usize, Gen)>> = BTreeMap::new();
        for (k, &(v, s)) in x.summands.iter().enumerate() {
            for (l, &(w, r)) in y.summands.iter().enumerate() {
                for &g in alg.basis(v, w) {
                    basis.entry(alg.degree(g) - r + s).or_default().push((l, k, g));
                }
            }
        }
        HomComplex { alg, x, y, basis }
    }

    fn dim(&self, j: i64) -> usize {
        self.basis.get(&j).map_or(0, |b| b.len())
    }

    pub fn differential(&self, f: &Mor, j: i64) -> Mor {
        let mut out = compose(self.alg, &self.y.delta, f);
        let sign = if j.rem_euclid(2) == 0 { -Q::one() } else { Q::one() };
        for (key, c) in compose(self.alg, f, &self.x.delta) {
            add_to(&mut out, key, c * &sign);
        }
        out
    }

    /// Matrix of D: C^j -> C^{j+1}.
    pub fn d_matrix(&self, j: i64) -> Matrix {
        let (src, dst) = (self.dim(j), self.dim(j + 1));
        let mut m = Matrix::zeros(dst, src);
        if src == 0 || dst == 0 {
            return m;
        }
        let index: HashMap<(usize, usize, Gen), usize> =
            self.basis[&(j + 1)].iter().enumerate().map(|(i, key)| (*key, i)).collect();
        for (col, key) in self.basis[&j].iter().enumerate() {
            let f = Mor::from([(*key, Q::one())]);
            for (k, c) in self.differential(&f, j) {
                m[(index[&k], col)] = c;
            }
        }
        m
    }

    pub fn cohomology_dim(&self, j: i64) -> usize {
        let c = self.dim(j);
        if c == 0 {
            return 0;
        }
        c - self.d_matrix(j).rank() - self.d_matrix(j - 1).rank()
    }

    pub fn graded(&self) -> GradedHom {
        let mut out = GradedHom::new();
        let mut rank_in = 0;
        let degrees: Vec<i64> = self.basis.keys().copied().collect();
        let (Some(&lo), Some(&hi)) = (degrees.first(), degrees.last()) else { return out };
        for j in lo..=hi {
            let rank_out = self.d_matrix(j).rank();
            let h = self.dim(j) - rank_out - rank_in;
            if h > 0 {
                out.insert(j, h);
            }
            rank_in = rank_out;
        }
        out
    }

    fn to_mor(&self, j: i64, v: &[Q]) -> Mor {
        let mut m = Mor::new();
        for (key, c) in self.basis[&j].iter().zip(v) {
            add_to(&mut m, *key, c.clone());
        }
        m
    }

    fn to_vec(&self, j: i64, f: &Mor) -> Vec<Q> {
        self.basis.get(&j).map_or(Vec::new(), |b| b.iter().map(|key| f.get(key).cloned().unwrap_or_else(Q::zero)).collect())
    }

    fn boundaries(&self, j: i64) -> Vec<Vec<Q>> {
        let d = self.d_matrix(j - 1);
        (0..d.cols).map(|c| d.col(c)).filter(|v| v.iter().any(|x| !x.is_zero())).collect()
    }

    /// Cocycles representing a basis of H^j.
    pub fn cohomology_basis(&self, j: i64) -> Vec<Mor> {
        if self.dim(j) == 0 {
            return Vec::new();
        }
        let cycles = self.d_matrix(j).nullspace();
        let mut span = self.boundaries(j);
        let mut rank = crate::linalg::rank_of(&span, self.dim(j));
        let mut reps = Vec::new();
        for z in cycles {
            span.push(z.clone());
            let r = crate::linalg::rank_of(&span, self.dim(j));
            if r > rank {
                rank = r;
                reps.push(self.to_mor(j, &z));
            } else {
                span.pop();
            }
        }
        reps
    }

    /// Whether a cocycle of degree j is a coboundary.
    pub fn is_exact(&self, j: i64, f: &Mor) -> bool {
        let v = self.to_vec(j, f);
        if v.iter().all(|x| x.is_zero()) {
            return true;
        }
        let mut span = self.boundaries(j);
        let before = crate::linalg::rank_of(&span, self.dim(j));
        span.push(v);
        crate::linalg::rank_of(&span, self.dim(j)) == before
    }
}

pub fn hom_graded(alg: &ExtAlgebra, x: &Twisted, y: &Twisted) -> GradedHom {
    HomComplex::new(alg, x, y).graded()
}

pub fn hom_at(alg: &ExtAlgebra, x: &Twisted, y: &Twisted, j: i64) -> usize {
    HomComplex::new(alg, x, y).cohomology_dim(j)
}

/// Isomorphism test for objects with End^0 = k: some degree-zero f, g with g f not null-homotopic.
pub fn is_iso(alg: &ExtAlgebra, x: &Twisted, y: &Twisted) -> bool {
    if x.class(alg.vertices) != y.class(alg.vertices) {
        return false;
    }
    let xy = HomComplex::new(alg, x, y);
    let yx = HomComplex::new(alg, y, x);
    let fs = xy.cohomology_basis(0);
    if fs.is_empty() {
        return false;
    }
    let gs = yx.cohomology_basis(0);
    let xx = HomComplex::new(alg, x, x);
    debug_assert_eq!(xx.cohomology_dim(0), 1);
    fs.iter().any(|f| gs.iter().any(|g| !xx.is_exact(0, &compose(alg, g, f))))
}

/// Spherical twist along t, or its inverse.
///
/// Forward: cone of the evaluation sum_j Hom^j(t, x) (x) t[-j] -> x. Inverse: the cone of the
/// coevaluation x -> sum_j Hom^j(x, t)^* (x) t[j], shifted by -1.
pub fn twist(alg: &ExtAlgebra, t: &Twisted, x: &Twisted, inverse: bool) -> Twisted {
    if !inverse {
        let hc = HomComplex::new(alg, t, x);
        let mut copies = Vec::new();
        let mut ev = Mor::new();
        for j in hc.basis.keys().copied().collect::<Vec<_>>() {
            for f in hc.cohomology_basis(j) {
                let off = copies.len() * t.len();
                copies.push(t.shift(-j));
                for ((l, k, g), c) in f {
                    ev.insert((l, k + off, g), c);
                }
            }
        }
        let src = Twisted::direct_sum(&copies);
        minimize(alg, &cone(&src, x, &ev))
    } else {
        let hc = HomComplex::new(alg, x, t);
        let mut copies = Vec::new();
        let mut coev = Mor::new();
        for j in hc.basis.keys().copied().collect::<Vec<_>>() {
            for f in hc.cohomology_basis(j) {
                let off = copies.len() * t.len();
                copies.push(t.shift(j));
                for ((l, k, g), c) in f {
                    coev.insert((l + off, k, g), c);
                }
            }
        }
        let dst = Twisted::direct_sum(&copies);
        minimize(alg, &cone(x, &dst, &coev).shift(-1))
    }
}

/// The image of M[k] under the inclusion of D(Q): composition factors glued by the arrow maps of M.
pub fn induced(d: &DerivedCat, x: DObject) -> Twisted {
    let rep = &d.reps[x.root];
    let mut base = Vec::new();
    let mut summands = Vec::new();
    for (v, &dim) in rep.dims.iter().enumerate() {
        base.push(summands.len());
        summands.extend(std::iter::repeat((v, 0)).take(dim));
    }
    let mut delta = Mor::new();
    for (a, (&(p, t), m)) in d.quiver.arrows.iter().zip(&rep.maps).enumerate() {
        for i in 0..m.cols {
            for j in 0..m.rows {
                add_to(&mut delta, (base[t] + j, base[p] + i, Gen::Arrow(a)), m[(j, i)].clone());
            }
        }
    }
    Twisted { summands, delta }.shift(x.shift)
}

/// Largest absolute coefficient; a cheap growth measure.
pub fn height(x: &Twisted) -> Q {
    x.delta.values().map(|c| c.abs()).fold(Q::zero(), |a, b| if b > a { b } else { a })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn a2(n: i64) -> (DerivedCat, ExtAlgebra) {
        let q = Quiver::a2();
        (DerivedCat::new(&q).unwrap(), ExtAlgebra::new(&q, n))
    }

    #[test]
    fn simples_are_spherical() {
        for n in 2..=5 {
            let (_, alg) = a2(n);
            let s = Twisted::simple(0);
            assert_eq!(hom_graded(&alg, &s, &s), GradedHom::from([(0, 1), (n, 1)]));
            let t = Twisted::simple(1);
            assert_eq!(hom_graded(&alg, &s, &t), GradedHom::from([(1, 1)]));
            assert_eq!(hom_graded(&alg, &t, &s), GradedHom::from([(n - 1, 1)]));
        }
    }

    #[test]
    fn twist_of_a_simple_along_itself() {
        let (_, alg) = a2(3);
        let s = Twisted::simple(0);
        let ts = twist(&alg, &s, &s, false);
        assert!(is_iso(&alg, &ts, &s.shift(-2)));
        let back = twist(&alg, &s, &ts, true);
        assert!(is_iso(&alg, &back, &s));
    }

    #[test]
    fn twist_and_inverse_cancel() {
        let (_, alg) = a2(4);
        let x = Twisted::simple(1);
        for (v, inv) in [(0, false), (0, true), (1, false)] {
            let s = Twisted::simple(v);
            let y = twist(&alg, &s, &twist(&alg, &s, &x, inv), !inv);
            assert!(is_iso(&alg, &y, &x));
        }
    }

    #[test]
    fn induced_objects_are_iterated_extensions() {
        let (d, alg) = a2(3);
        let p0 = induced(&d, d.projective(0, 0));
        assert_eq!(p0.len(), 2);
        assert!(p0.is_differential(&alg));
        assert_eq!(hom_graded(&alg, &p0, &p0), GradedHom::from([(0, 1), (3, 1)]));
        assert!(!is_iso(&alg, &p0, &Twisted::simple(0)));
    }

    #[test]
    fn braid_relation_on_objects() {
        let (_, alg) = a2(3);
        let (s0, s1) = (Twisted::simple(0), Twisted::simple(1));
        let x = Twisted::simple(1);
        let aba = twist(&alg, &s0, &twist(&alg, &s1, &twist(&alg, &s0, &x, false), false), false);
        let bab = twist(&alg, &s1, &twist(&alg, &s0, &twist(&alg, &s1, &x, false), false), false);
        assert!(is_iso(&alg, &aba, &bab));
    }
}
