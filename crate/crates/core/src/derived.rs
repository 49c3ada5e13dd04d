//! The bounded derived category of a Dynkin quiver, hearts and simple tilts.
//!
//! Indecomposables are shifted modules M[k]; every Hom space reduces to module Hom or Ext^1.

use crate::error::{Error, Result};
use crate::garside::{ArtinGroup, Braid};
use crate::linalg::{rank_of, Matrix, Q};
use crate::quiver::{DimVector, Quiver};
use crate::rep::{
    coboundaries, ext1_basis, ext1_dim, flatten, hom_dim, hom_space, indecomposable_from_root, kernel_cokernel,
    universal_coextension, universal_extension, universal_map_from, universal_map_to, Rep, RepMap,
};
use crate::report::Report;
use crate::roots::{DynkinType, RootData};
use serde::{Deserialize, Serialize};
use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::sync::{OnceLock, RwLock};

/// M[shift] for the canonical indecomposable M with the given root (index into the sorted root list).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct DObject {
    pub shift: i64,
    pub root: usize,
}

impl DObject {
    pub fn new(root: usize, shift: i64) -> Self {
        DObject { shift, root }
    }

    pub fn shifted(self, k: i64) -> Self {
        DObject { shift: self.shift + k, root: self.root }
    }
}

/// Nonzero graded pieces only.
pub type GradedHom = BTreeMap<i64, usize>;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Direction {
    Forward,
    Backward,
}

impl Direction {
    pub fn opposite(self) -> Self {
        match self {
            Direction::Forward => Direction::Backward,
            Direction::Backward => Direction::Forward,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Heart {
    pub simples: Vec<DObject>,
    pub projectives: Vec<DObject>,
    pub twist_words: Vec<Braid>,
}

/// Sorted simples; determines the heart.
pub type HeartKey = Vec<DObject>;

impl Heart {
    pub fn key(&self) -> HeartKey {
        let mut k = self.simples.clone();
        k.sort();
        k
    }

    pub fn shifted(&self, k: i64) -> Heart {
        Heart {
            simples: self.simples.iter().map(|s| s.shifted(k)).collect(),
            projectives: self.projectives.iter().map(|p| p.shifted(k)).collect(),
            twist_words: self.twist_words.clone(),
        }
    }

    pub fn n(&self) -> usize {
        self.simples.len()
    }
}

/// Graded quiver on heart slots; arrows (source, target, degree, multiplicity).
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct GradedQuiver {
    pub vertices: usize,
    pub arrows: Vec<(usize, usize, i64, usize)>,
}

impl GradedQuiver {
    fn normalized(vertices: usize, raw: Vec<(usize, usize, i64, usize)>) -> Self {
        let mut acc: BTreeMap<(usize, usize, i64), usize> = BTreeMap::new();
        for (s, t, d, m) in raw {
            if m > 0 {
                *acc.entry((s, t, d)).or_default() += m;
            }
        }
        GradedQuiver { vertices, arrows: acc.into_iter().map(|((s, t, d), m)| (s, t, d, m)).collect() }
    }

    /// CY-N double: a reverse arrow of degree N-k for every arrow of degree k, and a degree-N loop per vertex.
    pub fn cy_double(&self, n: i64) -> Result<GradedQuiver> {
        let mut raw = Vec::new();
        for &(s, t, d, m) in &self.arrows {
            if d < 1 || d > n - 1 {
                return Err(Error::DegreeOutOfRange(d));
            }
            raw.push((s, t, d, m));
            raw.push((t, s, n - d, m));
        }
        for v in 0..self.vertices {
            raw.push((v, v, n, 1));
        }
        Ok(GradedQuiver::normalized(self.vertices, raw))
    }
}

#[derive(Clone, Copy, PartialEq, Eq, Hash)]
struct PsiKey {
    x: usize,
    s: usize,
    gap: i64,
    dir: Direction,
}

/// A morphism between shifted modules: a module map (same shift) or an Ext^1 cocycle (shift up by one).
#[derive(Clone, Debug)]
pub enum Morphism {
    Hom(RepMap),
    Ext(Vec<Matrix>),
}

pub struct DerivedCat {
    pub quiver: Quiver,
    pub roots: RootData,
    pub reps: Vec<Rep>,
    pub artin: ArtinGroup,
    simple_root: Vec<usize>,
    proj_root: Vec<usize>,
    pairs: Vec<OnceLock<(usize, usize)>>,
    psi_cache: RwLock<HashMap<PsiKey, Result<DObject>>>,
    names: Vec<String>,
}

impl fmt::Debug for DerivedCat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "DerivedCat({:?})", self.quiver)
    }
}

fn root_name(kind: DynkinType, q: &Quiver, r: &[i64]) -> String {
    if let DynkinType::A(_) = kind {
        let support: Vec<usize> = (0..r.len()).filter(|&i| r[i] != 0).collect();
        let ends: Vec<usize> = support
            .iter()
            .copied()
            .filter(|&v| support.iter().filter(|&&w| q.edge_count(v, w) > 0).count() <= 1)
            .collect();
        return if support.len() == 1 {
            format!("[{}]", support[0])
        } else {
            format!("[{},{}]", ends[0], ends[ends.len() - 1])
        };
    }
    format!("({})", r.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(","))
}

impl DerivedCat {
    pub fn new(q: &Quiver) -> Result<Self> {
        let roots = RootData::new(q);
        if !roots.kind.is_dynkin() {
            return Err(Error::NonDynkinUnsupported);
        }
        let reps = roots
            .roots
            .iter()
            .map(|r| indecomposable_from_root(q, r))
            .collect::<Result<Vec<_>>>()?;
        let artin = ArtinGroup::for_quiver(q)?;
        let simple_root = (0..q.vertices).map(|i| roots.index_of(&q.simple_dims(i)).unwrap()).collect();
        let proj_root = (0..q.vertices).map(|i| roots.index_of(&q.projective_dims(i)).unwrap()).collect();
        let r = roots.roots.len();
        let names = roots.roots.iter().map(|rt| root_name(roots.kind, q, rt)).collect();
        Ok(DerivedCat {
            quiver: q.clone(),
            artin,
            simple_root,
            proj_root,
            pairs: (0..r * r).map(|_| OnceLock::new()).collect(),
            psi_cache: RwLock::new(HashMap::new()),
            names,
            reps,
            roots,
        })
    }

    pub fn n(&self) -> usize {
        self.quiver.vertices
    }

    pub fn root_count(&self) -> usize {
        self.roots.roots.len()
    }

    pub fn root(&self, idx: usize) -> &DimVector {
        &self.roots.roots[idx]
    }

    pub fn root_index(&self, r: &[i64]) -> Result<usize> {
        self.roots.index_of(r).ok_or_else(|| Error::NotARoot(r.to_vec()))
    }

    pub fn object(&self, r: &[i64], shift: i64) -> Result<DObject> {
        Ok(DObject::new(self.root_index(r)?, shift))
    }

    pub fn simple(&self, i: usize, shift: i64) -> DObject {
        DObject::new(self.simple_root[i], shift)
    }

    pub fn projective(&self, i: usize, shift: i64) -> DObject {
        DObject::new(self.proj_root[i], shift)
    }

    pub fn is_projective_root(&self, root: usize) -> bool {
        self.proj_root.contains(&root)
    }

    pub fn simple_root_vertex(&self, root: usize) -> Option<usize> {
        self.simple_root.iter().position(|&r| r == root)
    }

    pub fn set_names(&mut self, names: &[(Vec<i64>, &str)]) {
        for (r, nm) in names {
            if let Some(i) = self.roots.index_of(r) {
                self.names[i] = nm.to_string();
            }
        }
    }

    pub fn name(&self, x: DObject) -> String {
        format!("{}[{}]", self.names[x.root], x.shift)
    }

    pub fn render_heart(&self, h: &Heart) -> String {
        format!("{{{}}}", h.simples.iter().map(|s| self.name(*s)).collect::<Vec<_>>().join(","))
    }

    /// (dim Hom, dim Ext^1) between canonical modules.
    pub fn module_dims(&self, a: usize, b: usize) -> (usize, usize) {
        *self.pairs[a * self.root_count() + b].get_or_init(|| {
            let (m, n) = (&self.reps[a], &self.reps[b]);
            (hom_dim(&self.quiver, m, n).unwrap(), ext1_dim(&self.quiver, m, n).unwrap())
        })
    }

    pub fn hom_k(&self, a: DObject, b: DObject, k: i64) -> usize {
        let (h, e) = self.module_dims(a.root, b.root);
        let d = k - (a.shift - b.shift);
        match d {
            0 => h,
            1 => e,
            _ => 0,
        }
    }

    /// Hom^k(M[i], N[j]) is Hom(M,N) at k = i-j and Ext^1(M,N) at k = i-j+1.
    pub fn hom_graded(&self, a: DObject, b: DObject) -> GradedHom {
        let base = a.shift - b.shift;
        let mut g = GradedHom::new();
        for k in [base, base + 1] {
            let d = self.hom_k(a, b, k);
            if d > 0 {
                g.insert(k, d);
            }
        }
        g
    }

    /// K-class (-1)^shift [M].
    pub fn class(&self, x: DObject) -> Vec<i64> {
        let sign = if x.shift.rem_euclid(2) == 0 { 1 } else { -1 };
        self.root(x.root).iter().map(|v| sign * v).collect()
    }

    /// Degrees k with H_k(x) nonzero; a shifted module has homology in its shift only.
    pub fn homology_degrees(&self, x: DObject) -> Vec<i64> {
        vec![x.shift]
    }

    pub fn tau(&self, x: DObject) -> DObject {
        let (r, s) = self.roots.tau(self.root(x.root), x.shift).expect("root");
        DObject::new(self.roots.index_of(&r).unwrap(), s)
    }

    pub fn tau_inverse(&self, x: DObject) -> DObject {
        let (r, s) = self.roots.tau_inverse(self.root(x.root), x.shift).expect("root");
        DObject::new(self.roots.index_of(&r).unwrap(), s)
    }

    /// H_Q: simples S_i[0], projectives P_i[0], twist words the generators.
    pub fn initial_heart(&self) -> Heart {
        let n = self.n();
        Heart {
            simples: (0..n).map(|i| self.simple(i, 0)).collect(),
            projectives: (0..n).map(|i| self.projective(i, 0)).collect(),
            twist_words: (0..n).map(|i| self.artin.generator(i, 1)).collect(),
        }
    }

    fn module_root(&self, rep: &Rep, what: &str) -> Result<usize> {
        let r = rep.dim_vector();
        let idx = self.roots.index_of(&r).ok_or_else(|| Error::ConeNotIndecomposable(format!("{what}: {r:?}")))?;
        if hom_dim(&self.quiver, rep, rep)? != 1 {
            return Err(Error::ConeNotIndecomposable(format!("{what}: {r:?} not a brick")));
        }
        Ok(idx)
    }

    fn compute_psi(&self, x: DObject, s: DObject, dir: Direction) -> Result<DObject> {
        let q = &self.quiver;
        let (xm, sm) = (&self.reps[x.root], &self.reps[s.root]);
        let p = x.shift;
        match dir {
            Direction::Forward => {
                if s.shift == p {
                    let t = universal_extension(q, xm, sm)?;
                    Ok(DObject::new(self.module_root(&t, "extension")?, p))
                } else if s.shift == p - 1 {
                    let (target, g) = universal_map_to(q, xm, sm)?;
                    let kc = kernel_cokernel(q, xm, &target, &g);
                    match (kc.kernel.is_zero(), kc.cokernel.is_zero()) {
                        (false, true) => Ok(DObject::new(self.module_root(&kc.kernel, "kernel")?, p)),
                        (true, false) => Ok(DObject::new(self.module_root(&kc.cokernel, "cokernel")?, p - 1)),
                        _ => Err(Error::ConeNotIndecomposable(format!("{} -> {}", self.name(x), self.name(s)))),
                    }
                } else {
                    Ok(x)
                }
            }
            Direction::Backward => {
                if s.shift == p {
                    let t = universal_coextension(q, xm, sm)?;
                    Ok(DObject::new(self.module_root(&t, "coextension")?, p))
                } else if s.shift == p + 1 {
                    let (source, g) = universal_map_from(q, sm, xm)?;
                    let kc = kernel_cokernel(q, &source, xm, &g);
                    match (kc.kernel.is_zero(), kc.cokernel.is_zero()) {
                        (true, false) => Ok(DObject::new(self.module_root(&kc.cokernel, "cokernel")?, p)),
                        (false, true) => Ok(DObject::new(self.module_root(&kc.kernel, "kernel")?, p + 1)),
                        _ => Err(Error::ConeNotIndecomposable(format!("{} -> {}", self.name(s), self.name(x)))),
                    }
                } else {
                    Ok(x)
                }
            }
        }
    }

    /// psi at s applied to x, assuming the relevant Hom^1 is nonzero.
    fn psi(&self, x: DObject, s: DObject, dir: Direction) -> Result<DObject> {
        let key = PsiKey { x: x.root, s: s.root, gap: x.shift - s.shift, dir };
        if let Some(r) = self.psi_cache.read().unwrap().get(&key) {
            return r.clone().map(|o| o.shifted(x.shift));
        }
        let base_x = DObject::new(x.root, 0);
        let base_s = DObject::new(s.root, s.shift - x.shift);
        let res = self.compute_psi(base_x, base_s, dir);
        self.psi_cache.write().unwrap().insert(key, res.clone());
        res.map(|o| o.shifted(x.shift))
    }

    /// Simple tilt at slot i.
    pub fn tilt(&self, h: &Heart, i: usize, dir: Direction) -> Result<Heart> {
        let n = h.n();
        let s = h.simples[i];
        let wi = &h.twist_words[i];
        let wi_inv = self.artin.inverse(wi);
        let mut simples = h.simples.clone();
        let mut words = h.twist_words.clone();
        for j in 0..n {
            if j == i {
                continue;
            }
            let x = h.simples[j];
            let ext = match dir {
                Direction::Forward => self.hom_k(x, s, 1),
                Direction::Backward => self.hom_k(s, x, 1),
            };
            if ext == 0 {
                continue;
            }
            simples[j] = self.psi(x, s, dir)?;
            words[j] = match dir {
                Direction::Forward => self.artin.mul(&self.artin.mul(&wi_inv, &h.twist_words[j]), wi),
                Direction::Backward => self.artin.mul(&self.artin.mul(wi, &h.twist_words[j]), &wi_inv),
            };
        }
        simples[i] = match dir {
            Direction::Forward => s.shifted(1),
            Direction::Backward => s.shifted(-1),
        };
        let mut projectives = h.projectives.clone();
        projectives[i] = self.mutate_projective(h, &simples, i, dir)?;
        Ok(Heart { simples, projectives, twist_words: words })
    }

    /// New projective from its K-class and the duality pairing against the new simples.
    fn mutate_projective(&self, h: &Heart, new_simples: &[DObject], i: usize, dir: Direction) -> Result<DObject> {
        let n = h.n();
        let mut class: Vec<i64> = self.class(h.projectives[i]).iter().map(|v| -v).collect();
        for j in 0..n {
            if j == i {
                continue;
            }
            let mult = match dir {
                Direction::Forward => self.hom_k(h.simples[j], h.simples[i], 1),
                Direction::Backward => self.hom_k(h.simples[i], h.simples[j], 1),
            } as i64;
            for (c, v) in class.iter_mut().zip(self.class(h.projectives[j])) {
                *c += mult * v;
            }
        }
        let positive = class.iter().all(|&v| v >= 0);
        let root: Vec<i64> = if positive { class.clone() } else { class.iter().map(|v| -v).collect() };
        let idx = self
            .roots
            .index_of(&root)
            .ok_or_else(|| Error::Invariant(format!("projective class {class:?} is not a root")))?;
        let old = h.projectives[i].shift;
        let candidates: Vec<DObject> = (old - 4..=old + 4)
            .filter(|s| (s.rem_euclid(2) == 0) == positive)
            .map(|s| DObject::new(idx, s))
            .filter(|&p| {
                new_simples.iter().enumerate().all(|(j, &sj)| {
                    let g = self.hom_graded(p, sj);
                    if j == i {
                        g.len() == 1 && g.get(&0) == Some(&1)
                    } else {
                        g.is_empty()
                    }
                })
            })
            .collect();
        match candidates.as_slice() {
            [p] => Ok(*p),
            _ => Err(Error::Invariant(format!("no unique dual projective for class {class:?}"))),
        }
    }

    pub fn tilt_n(&self, h: &Heart, i: usize, dir: Direction, times: usize) -> Result<Heart> {
        let mut cur = h.clone();
        for _ in 0..times {
            cur = self.tilt(&cur, i, dir)?;
        }
        Ok(cur)
    }

    /// Ext-quiver: an arrow S -> T of degree k for every basis element of Hom^k(S, T), k > 0.
    pub fn ext_quiver(&self, h: &Heart) -> GradedQuiver {
        let n = h.n();
        let mut raw = Vec::new();
        for a in 0..n {
            for b in 0..n {
                for (&k, &d) in &self.hom_graded(h.simples[a], h.simples[b]) {
                    if k > 0 {
                        raw.push((a, b, k, d));
                    }
                }
            }
        }
        GradedQuiver::normalized(n, raw)
    }

    /// All heart axioms, duality, rigidity, basis property and strong monochromaticity.
    pub fn verify_heart(&self, h: &Heart) -> Report {
        let n = h.n();
        let mut r = Report::new();
        let label = self.render_heart(h);
        let mut orth = true;
        let mut brick = true;
        let mut mono = true;
        let mut strong = true;
        for a in 0..n {
            for b in 0..n {
                let g = self.hom_graded(h.simples[a], h.simples[b]);
                if a == b {
                    if g.len() != 1 || g.get(&0) != Some(&1) {
                        brick = false;
                    }
                    continue;
                }
                if g.keys().any(|&k| k <= 0) {
                    orth = false;
                }
                if g.len() > 1 || g.values().any(|&d| d == 0) {
                    mono = false;
                }
                if !g.is_empty() && !self.hom_graded(h.simples[b], h.simples[a]).is_empty() {
                    strong = false;
                }
            }
        }
        r.push("simples Hom-orthogonal", orth, label.clone());
        r.push("simples are rigid bricks", brick, label.clone());
        let mut dual = h.projectives.len() == n;
        for (i, &p) in h.projectives.iter().enumerate() {
            for (j, &s) in h.simples.iter().enumerate() {
                let g = self.hom_graded(p, s);
                let ok = if i == j { g.len() == 1 && g.get(&0) == Some(&1) } else { g.is_empty() };
                dual &= ok;
            }
        }
        r.push("projective/simple duality", dual, label.clone());
        let classes: Vec<Vec<Q>> =
            h.simples.iter().map(|&s| self.class(s).into_iter().map(crate::linalg::q).collect()).collect();
        let det_ok = if classes.len() == n {
            Matrix::from_rows(&classes, n)
                .inverse()
                .and_then(|inv| inv.to_i64())
                .is_some()
        } else {
            false
        };
        r.push("simple classes form a Z-basis", det_ok, label.clone());
        r.push("strongly monochromatic", mono && strong, label);
        r
    }

    /// A basis of Hom_D(a, b) as explicit morphisms.
    pub fn morphisms(&self, a: DObject, b: DObject) -> Vec<Morphism> {
        let q = &self.quiver;
        let (m, n) = (&self.reps[a.root], &self.reps[b.root]);
        if a.shift == b.shift {
            hom_space(q, m, n).unwrap().into_iter().map(Morphism::Hom).collect()
        } else if b.shift == a.shift + 1 {
            ext1_basis(q, m, n).unwrap().into_iter().map(Morphism::Ext).collect()
        } else {
            Vec::new()
        }
    }

    /// g after f, flattened; None when the composite lands in a zero group.
    fn compose(&self, f: &Morphism, g: &Morphism) -> Option<Vec<Q>> {
        let q = &self.quiver;
        match (f, g) {
            (Morphism::Hom(f), Morphism::Hom(g)) => {
                Some(flatten(&g.iter().zip(f).map(|(gi, fi)| gi.mul(fi)).collect::<Vec<_>>()))
            }
            (Morphism::Hom(f), Morphism::Ext(xi)) => Some(flatten(
                &q.arrows.iter().enumerate().map(|(k, &(s, _))| xi[k].mul(&f[s])).collect::<Vec<_>>(),
            )),
            (Morphism::Ext(xi), Morphism::Hom(g)) => Some(flatten(
                &q.arrows.iter().enumerate().map(|(k, &(_, t))| g[t].mul(&xi[k])).collect::<Vec<_>>(),
            )),
            (Morphism::Ext(_), Morphism::Ext(_)) => None,
        }
    }

    /// dim Irr(objs[a], objs[b]) in add of the given pairwise non-isomorphic indecomposables, via rad/rad^2.
    pub fn irr_matrix(&self, objs: &[DObject]) -> Vec<Vec<usize>> {
        let n = objs.len();
        let bases: Vec<Vec<Vec<Morphism>>> =
            (0..n).map(|a| (0..n).map(|b| self.morphisms(objs[a], objs[b])).collect()).collect();
        let mut irr = vec![vec![0; n]; n];
        for a in 0..n {
            for b in 0..n {
                if a == b || bases[a][b].is_empty() {
                    continue;
                }
                let dim = bases[a][b].len();
                let mut comps: Vec<Vec<Q>> = Vec::new();
                for c in 0..n {
                    if c == a || c == b {
                        continue;
                    }
                    for f in &bases[a][c] {
                        for g in &bases[c][b] {
                            if let Some(v) = self.compose(f, g) {
                                comps.push(v);
                            }
                        }
                    }
                }
                let (m, nn) = (&self.reps[objs[a].root], &self.reps[objs[b].root]);
                let rank = if objs[a].shift == objs[b].shift {
                    let len: usize = (0..self.n()).map(|i| m.dims[i] * nn.dims[i]).sum();
                    rank_of(&comps, len)
                } else {
                    let (cob, len) = coboundaries(&self.quiver, m, nn);
                    let base = rank_of(&cob, len);
                    let mut all = cob;
                    all.extend(comps);
                    rank_of(&all, len) - base
                };
                irr[a][b] = dim - rank;
            }
        }
        irr
    }
}
