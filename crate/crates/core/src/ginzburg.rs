//! Hearts of the Calabi-Yau-N category as braid-twisted induced hearts.
//!
//! A heart is stored as (w, H) with H in the fundamental domain, and denotes Phi(w)(I(H)). Tilting
//! inside the window acts on H; leaving it wraps around the line and multiplies w by a twist.
//! Objects are materialised as twisted complexes only when Hom spaces are needed.

use crate::cy::{self, ExtAlgebra, Twisted};
use crate::derived::{DObject, DerivedCat, Direction, GradedHom, Heart, HeartKey};
use crate::error::{Error, Result};
use crate::exchange::{in_interval, tiltable_in_interval, ExchangeGraph};
use crate::garside::Braid;
use crate::report::Report;
use serde::{Deserialize, Serialize};
use std::collections::{BTreeSet, HashMap, VecDeque};
use std::sync::{Arc, Mutex};

/// Hom between induced objects: Hom_Q(X,Y) in degree k plus the dual of Hom_Q(Y,X) in degree N-k.
pub fn induced_hom(d: &DerivedCat, x: DObject, y: DObject, n: i64) -> GradedHom {
    let mut out = d.hom_graded(x, y);
    for (k, v) in d.hom_graded(y, x) {
        *out.entry(n - k).or_default() += v;
    }
    out
}

/// Phi(word)(I(base)).
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct SphericalRef {
    pub word: Braid,
    pub base: DObject,
}

impl SphericalRef {
    pub fn shifted(&self, k: i64) -> SphericalRef {
        SphericalRef { word: self.word.clone(), base: self.base.shifted(k) }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GHeart {
    pub word: Braid,
    pub base: Heart,
}

pub type GKey = (Braid, HeartKey);

impl GHeart {
    pub fn key(&self) -> GKey {
        (self.word.clone(), self.base.key())
    }

    pub fn simple(&self, i: usize) -> SphericalRef {
        SphericalRef { word: self.word.clone(), base: self.base.simples[i] }
    }

    pub fn simples(&self) -> Vec<SphericalRef> {
        (0..self.base.n()).map(|i| self.simple(i)).collect()
    }
}

/// Forward tilts between hearts; `slot` indexes the tilted simple in the source.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GEdge {
    pub src: usize,
    pub dst: usize,
    pub slot: usize,
    pub label: SphericalRef,
}

#[derive(Clone, Debug, Default)]
pub struct GGraph {
    pub vertices: Vec<GHeart>,
    pub index: HashMap<GKey, usize>,
    pub edges: Vec<GEdge>,
}

impl GGraph {
    fn add_vertex(&mut self, h: GHeart) -> (usize, bool) {
        let k = h.key();
        if let Some(&i) = self.index.get(&k) {
            return (i, false);
        }
        let i = self.vertices.len();
        self.vertices.push(h);
        self.index.insert(k, i);
        (i, true)
    }

    /// The slot is located by label, since stored hearts keep the slot order of their first visit.
    fn add_edge(&mut self, seen: &mut BTreeSet<(usize, usize)>, src: usize, dst: usize, label: SphericalRef) {
        if seen.insert((src, dst)) {
            let h = &self.vertices[src];
            let slot = (0..h.base.n()).find(|&i| h.simple(i) == label).expect("label is a simple of the source");
            self.edges.push(GEdge { src, dst, slot, label });
        }
    }

    pub fn vertex_count(&self) -> usize {
        self.vertices.len()
    }

    pub fn sources(&self) -> Vec<usize> {
        let has_in: BTreeSet<usize> = self.edges.iter().map(|e| e.dst).collect();
        (0..self.vertices.len()).filter(|v| !has_in.contains(v)).collect()
    }

    pub fn sinks(&self) -> Vec<usize> {
        let has_out: BTreeSet<usize> = self.edges.iter().map(|e| e.src).collect();
        (0..self.vertices.len()).filter(|v| !has_out.contains(v)).collect()
    }

    pub fn key_set(&self) -> BTreeSet<GKey> {
        self.index.keys().cloned().collect()
    }

    pub fn edge_set(&self) -> BTreeSet<(GKey, GKey)> {
        self.edges.iter().map(|e| (self.vertices[e.src].key(), self.vertices[e.dst].key())).collect()
    }

    /// Forget the words: vertices become fundamental-domain hearts.
    pub fn quotient(&self) -> (BTreeSet<HeartKey>, BTreeSet<(HeartKey, HeartKey)>) {
        let v = self.vertices.iter().map(|h| h.base.key()).collect();
        let e = self.edges.iter().map(|e| (self.vertices[e.src].base.key(), self.vertices[e.dst].base.key())).collect();
        (v, e)
    }
}

/// Vertex and edge sets of an exchange graph keyed by hearts.
pub fn graph_sets(g: &ExchangeGraph) -> (BTreeSet<HeartKey>, BTreeSet<(HeartKey, HeartKey)>) {
    (g.vertices.keys().cloned().collect(), g.edges.iter().map(|e| (e.src.clone(), e.dst.clone())).collect())
}

pub struct Ginzburg<'a> {
    pub d: &'a DerivedCat,
    pub n_cy: i64,
    pub alg: ExtAlgebra,
    cache: Mutex<HashMap<(Braid, DObject), Arc<Twisted>>>,
}

impl<'a> Ginzburg<'a> {
    pub fn new(d: &'a DerivedCat, n_cy: i64) -> Result<Self> {
        if n_cy < 2 {
            return Err(Error::DegreeOutOfRange(n_cy));
        }
        Ok(Ginzburg { d, n_cy, alg: ExtAlgebra::new(&d.quiver, n_cy), cache: Mutex::new(HashMap::new()) })
    }

    pub fn induce_heart(&self, h: &Heart) -> Result<GHeart> {
        if !in_interval(h, self.n_cy) {
            return Err(Error::Invariant(format!("{} is outside the fundamental domain", self.d.render_heart(h))));
        }
        Ok(GHeart { word: Braid::identity(), base: h.clone() })
    }

    /// I(H_Q[1]).
    pub fn standard(&self) -> GHeart {
        GHeart { word: Braid::identity(), base: self.d.initial_heart().shifted(1) }
    }

    pub fn g_tilt(&self, gh: &GHeart, i: usize, dir: Direction) -> Result<GHeart> {
        let n = self.n_cy;
        if tiltable_in_interval(&gh.base, i, dir, n) {
            return Ok(GHeart { word: gh.word.clone(), base: self.d.tilt(&gh.base, i, dir)? });
        }
        let artin = &self.d.artin;
        let t = &gh.base.twist_words[i];
        let steps = (n - 2) as usize;
        Ok(match dir {
            Direction::Forward => GHeart {
                word: artin.mul(&gh.word, &artin.inverse(t)),
                base: self.d.tilt_n(&gh.base, i, Direction::Backward, steps)?,
            },
            Direction::Backward => {
                GHeart { word: artin.mul(&gh.word, t), base: self.d.tilt_n(&gh.base, i, Direction::Forward, steps)? }
            }
        })
    }

    /// Apply Phi(w) on the left.
    pub fn act(&self, w: &Braid, gh: &GHeart) -> GHeart {
        GHeart { word: self.d.artin.mul(w, &gh.word), base: gh.base.clone() }
    }

    /// The braid whose image is the twist along the i-th simple of gh.
    pub fn twist_of(&self, gh: &GHeart, i: usize) -> Braid {
        self.d.artin.conjugate(&gh.word, &gh.base.twist_words[i])
    }

    pub fn render(&self, gh: &GHeart) -> String {
        format!("{} ▷ {}", gh.word, self.d.render_heart(&gh.base))
    }

    pub fn render_ref(&self, s: &SphericalRef) -> String {
        if s.word.is_identity() {
            self.d.name(s.base)
        } else {
            format!("{}({})", s.word, self.d.name(s.base))
        }
    }

    /// Phi(w)(I(x)) as a minimal twisted complex, built letter by letter from the right.
    pub fn object(&self, w: &Braid, x: DObject) -> Arc<Twisted> {
        if let Some(t) = self.cache.lock().unwrap().get(&(w.clone(), x)) {
            return t.clone();
        }
        let artin = &self.d.artin;
        let mut suffix = Braid::identity();
        let mut cur = Arc::new(cy::induced(self.d, x));
        for (v, sign) in artin.letters(w).into_iter().rev() {
            suffix = artin.mul(&artin.generator(v, sign), &suffix);
            let cached = self.cache.lock().unwrap().get(&(suffix.clone(), x)).cloned();
            cur = match cached {
                Some(t) => t,
                None => {
                    let t = Arc::new(cy::twist(&self.alg, &Twisted::simple(v), &cur, sign < 0));
                    self.cache.lock().unwrap().insert((suffix.clone(), x), t.clone());
                    t
                }
            };
        }
        cur
    }

    fn pair(&self, a: &SphericalRef, b: &SphericalRef) -> (Arc<Twisted>, Arc<Twisted>) {
        let artin = &self.d.artin;
        let rel = artin.mul(&artin.inverse(&a.word), &b.word);
        (self.object(&Braid::identity(), a.base), self.object(&rel, b.base))
    }

    pub fn hom(&self, a: &SphericalRef, b: &SphericalRef) -> GradedHom {
        let (x, y) = self.pair(a, b);
        cy::hom_graded(&self.alg, &x, &y)
    }

    pub fn hom_at(&self, a: &SphericalRef, b: &SphericalRef, k: i64) -> usize {
        let (x, y) = self.pair(a, b);
        cy::hom_at(&self.alg, &x, &y, k)
    }

    pub fn iso(&self, a: &SphericalRef, b: &SphericalRef) -> bool {
        let (x, y) = self.pair(a, b);
        cy::is_iso(&self.alg, &x, &y)
    }

    /// x lies in the heart iff it has no negative-degree maps to or from its simples.
    pub fn contains(&self, gh: &GHeart, x: &SphericalRef) -> bool {
        gh.simples().iter().all(|s| {
            self.hom(x, s).keys().all(|&k| k >= 0) && self.hom(s, x).keys().all(|&k| k >= 0)
        })
    }

    /// Ball of the given tilt radius around `start`, both directions.
    pub fn explore(&self, start: &GHeart, depth: usize) -> Result<GGraph> {
        let mut g = GGraph::default();
        let mut seen = BTreeSet::new();
        let (s, _) = g.add_vertex(start.clone());
        let mut queue = VecDeque::from([(s, 0usize)]);
        while let Some((v, dist)) = queue.pop_front() {
            if dist >= depth {
                continue;
            }
            let h = g.vertices[v].clone();
            for i in 0..h.base.n() {
                for dir in [Direction::Forward, Direction::Backward] {
                    let next = self.g_tilt(&h, i, dir)?;
                    let label = match dir {
                        Direction::Forward => h.simple(i),
                        Direction::Backward => next.simple(i),
                    };
                    let (u, fresh) = g.add_vertex(next);
                    if fresh {
                        queue.push_back((u, dist + 1));
                    }
                    let (src, dst) = if dir == Direction::Forward { (v, u) } else { (u, v) };
                    g.add_edge(&mut seen, src, dst, label);
                }
            }
        }
        Ok(g)
    }

    /// The interval [B, B[N-2]] above a bottom heart B, i.e. the based exchange graph of B[-1].
    ///
    /// A forward tilt at S stays below B[N-2] iff Hom^{2-N}(S_j, S) = 0 for every simple S_j of B;
    /// a backward tilt at S stays above B iff Hom^0(S, S_j) = 0.
    pub fn relative_interval(&self, bottom: &GHeart) -> Result<GGraph> {
        let n = self.n_cy;
        let floor = bottom.simples();
        let mut g = GGraph::default();
        let mut seen = BTreeSet::new();
        let (s, _) = g.add_vertex(bottom.clone());
        let mut queue = VecDeque::from([s]);
        while let Some(v) = queue.pop_front() {
            let h = g.vertices[v].clone();
            for i in 0..h.base.n() {
                let si = h.simple(i);
                if floor.iter().all(|b| self.hom_at(b, &si, 2 - n) == 0) {
                    let (u, fresh) = g.add_vertex(self.g_tilt(&h, i, Direction::Forward)?);
                    if fresh {
                        queue.push_back(u);
                    }
                    g.add_edge(&mut seen, v, u, si.clone());
                }
                if floor.iter().all(|b| self.hom_at(&si, b, 0) == 0) {
                    let prev = self.g_tilt(&h, i, Direction::Backward)?;
                    let label = prev.simple(i);
                    let (u, fresh) = g.add_vertex(prev);
                    if fresh {
                        queue.push_back(u);
                    }
                    g.add_edge(&mut seen, u, v, label);
                }
            }
        }
        Ok(g)
    }

    /// Pairs of distinct vertices whose simples are isomorphic objects.
    pub fn duplicates(&self, g: &GGraph) -> Vec<(usize, usize)> {
        let classes: Vec<Vec<Vec<i64>>> = g
            .vertices
            .iter()
            .map(|h| {
                let mut c: Vec<Vec<i64>> =
                    h.simples().iter().map(|s| self.object(&s.word, s.base).class(self.alg.vertices)).collect();
                c.sort();
                c
            })
            .collect();
        let mut out = Vec::new();
        for a in 0..g.vertices.len() {
            for b in a + 1..g.vertices.len() {
                if classes[a] != classes[b] {
                    continue;
                }
                let same = g.vertices[a]
                    .simples()
                    .iter()
                    .all(|x| g.vertices[b].simples().iter().any(|y| self.iso(x, y)));
                if same {
                    out.push((a, b));
                }
            }
        }
        out
    }

    /// Twist isometry and Serre duality on the simples of a heart.
    pub fn check_heart(&self, gh: &GHeart) -> Report {
        let mut r = Report::new();
        let simples = gh.simples();
        let mut iso_ok = true;
        let mut serre_ok = true;
        let mut witness = String::new();
        for (i, a) in simples.iter().enumerate() {
            for (j, b) in simples.iter().enumerate() {
                let h = self.hom(a, b);
                let expected = induced_hom(self.d, gh.base.simples[i], gh.base.simples[j], self.n_cy);
                if h != expected {
                    iso_ok = false;
                    witness = format!("{} -> {}: {h:?} vs {expected:?}", self.render_ref(a), self.render_ref(b));
                }
                let back = self.hom(b, a);
                serre_ok &= h.iter().all(|(&k, &v)| back.get(&(self.n_cy - k)) == Some(&v));
            }
        }
        r.push("graded Hom of simples equals induced Hom", iso_ok, witness);
        r.push("Serre duality on simples", serre_ok, "");
        let spherical = simples.iter().all(|s| self.hom(s, s) == GradedHom::from([(0, 1), (self.n_cy, 1)]));
        r.push("simples are N-spherical", spherical, "");
        r
    }

    /// The N = 3 half-twist around the i-th simple T of the bottom heart B.
    ///
    /// The interval over B splits by whether T or T[1] lies in a heart; every edge between the parts
    /// is a tilt at T out of the T-part. Applying the inverse twist along T to that part and
    /// reversing the crossing edges must give the interval over the forward tilt of B at T.
    pub fn half_twist_check(&self, bottom: &GHeart, i: usize) -> Result<Report> {
        if self.n_cy != 3 {
            return Err(Error::DegreeOutOfRange(self.n_cy));
        }
        let mut r = Report::new();
        let g = self.relative_interval(bottom)?;
        let t = bottom.simple(i);
        let t1 = t.shifted(1);
        let minus: Vec<bool> = g.vertices.iter().map(|h| self.contains(h, &t)).collect();
        let plus: Vec<bool> = g.vertices.iter().map(|h| self.contains(h, &t1)).collect();
        let split = minus.iter().zip(&plus).all(|(a, b)| a != b);
        r.push(
            "each heart contains exactly one of T, T[1]",
            split,
            format!("{} + {} of {}", minus.iter().filter(|&&x| x).count(), plus.iter().filter(|&&x| x).count(), g.vertex_count()),
        );
        let crossing: Vec<&GEdge> = g.edges.iter().filter(|e| minus[e.src] != minus[e.dst]).collect();
        let crossing_ok = crossing.iter().all(|e| minus[e.src] && self.iso(&e.label, &t));
        r.push("crossing edges leave the T-part with label T", crossing_ok, format!("{} crossing edges", crossing.len()));

        let artin = &self.d.artin;
        let phi_inv = artin.inverse(&self.twist_of(bottom, i));
        let image = |v: usize| -> GKey {
            let h = &g.vertices[v];
            if minus[v] {
                self.act(&phi_inv, h).key()
            } else {
                h.key()
            }
        };
        let recipe_vertices: BTreeSet<GKey> = (0..g.vertex_count()).map(image).collect();
        let recipe_edges: BTreeSet<(GKey, GKey)> = g
            .edges
            .iter()
            .map(|e| if minus[e.src] != minus[e.dst] { (image(e.dst), image(e.src)) } else { (image(e.src), image(e.dst)) })
            .collect();
        let tilted = self.g_tilt(bottom, i, Direction::Forward)?;
        let direct = self.relative_interval(&tilted)?;
        r.push(
            "half-twist vertices equal the direct interval",
            recipe_vertices == direct.key_set(),
            format!("{} vs {}", recipe_vertices.len(), direct.vertex_count()),
        );
        r.push("half-twist edges equal the direct interval", recipe_edges == direct.edge_set(), format!("{} edges", direct.edges.len()));
        let reversed_ok = direct
            .edges
            .iter()
            .filter(|e| {
                let src_in = recipe_edges.contains(&(direct.vertices[e.src].key(), direct.vertices[e.dst].key()));
                src_in && crossing.iter().any(|c| image(c.dst) == direct.vertices[e.src].key() && image(c.src) == direct.vertices[e.dst].key())
            })
            .all(|e| self.iso(&e.label, &t1));
        r.push("reversed edges are labelled T[1]", reversed_ok, "");
        r.push(
            "unique source and sink in both intervals",
            g.sources().len() == 1 && g.sinks().len() == 1 && direct.sources().len() == 1 && direct.sinks().len() == 1,
            "",
        );
        Ok(r)
    }

    /// (N-1) forward tilts at each simple S against Phi(phi_S^-1), both as GHeart keys and as objects.
    pub fn root_check(&self, gh: &GHeart) -> Result<Report> {
        let mut r = Report::new();
        let artin = &self.d.artin;
        for i in 0..gh.base.n() {
            let mut cur = gh.clone();
            for _ in 0..self.n_cy - 1 {
                cur = self.g_tilt(&cur, i, Direction::Forward)?;
            }
            let twist = self.twist_of(gh, i);
            let expected = self.act(&artin.inverse(&twist), gh);
            r.push(
                format!("{}: tilt^(N-1) at {} is the inverse twist", self.render(gh), self.render_ref(&gh.simple(i))),
                cur.key() == expected.key(),
                self.render(&cur),
            );
            let s = gh.simple(i);
            let t = self.object(&s.word, s.base);
            let objects_ok = gh.simples().iter().all(|x| {
                let image = cy::twist(&self.alg, &t, &self.object(&x.word, x.base), true);
                cur.simples().iter().any(|y| cy::is_iso(&self.alg, &image, &self.object(&y.word, y.base)))
            });
            r.push(format!("{}: simples are twisted by {}", self.render(gh), self.render_ref(&s)), objects_ok, "");
        }
        Ok(r)
    }

    /// Twisting along Phi(w)(S_s) agrees with Phi(w s w^-1) on the object I(x).
    pub fn conjugation_holds(&self, w: &Braid, s: usize, x: DObject) -> bool {
        let t = self.object(w, self.d.simple(s, 0));
        let lhs = cy::twist(&self.alg, &t, &self.object(&Braid::identity(), x), false);
        let rhs = self.object(&self.d.artin.conjugate(w, &self.d.artin.generator(s, 1)), x);
        cy::is_iso(&self.alg, &lhs, &rhs)
    }

    /// Reach Phi(w)(gh) from gh by (N-1)-fold tilts, one run per letter of w.
    pub fn reach_by_tilts(&self, gh: &GHeart, w: &Braid) -> Result<GHeart> {
        let mut cur = gh.clone();
        for (s, dir) in tilt_sequence(self.d, w) {
            for _ in 0..self.n_cy - 1 {
                cur = self.g_tilt(&cur, s, dir)?;
            }
        }
        Ok(cur)
    }

    /// Forgetting words in a ball around I(H_Q[1]) against the completed interval graph.
    pub fn quotient_check(&self, depth: usize) -> Result<Report> {
        let mut r = Report::new();
        let ball = self.explore(&self.standard(), depth)?;
        let completed = crate::exchange::build_interval_graph(self.d, self.n_cy)?.cyclic_completion(self.d)?;
        let (cv, ce) = graph_sets(&completed);
        let (qv, qe) = ball.quotient();
        r.push("quotient vertices lie in the completed graph", qv.is_subset(&cv), format!("{} of {}", qv.len(), cv.len()));
        r.push("quotient edges lie in the completed graph", qe.is_subset(&ce), format!("{} of {}", qe.len(), ce.len()));
        // Every edge of the completed graph is seen once the ball reaches one step past its radius.
        let needed = completed.radius() + 1;
        if depth >= needed {
            r.push("quotient vertices equal the completed graph", qv == cv, format!("{} vs {}", qv.len(), cv.len()));
            r.push("quotient edges equal the completed graph", qe == ce, format!("{} vs {}", qe.len(), ce.len()));
        } else {
            r.push("quotient equality skipped below the radius", true, format!("depth {depth}, needs {needed}"));
        }
        let dups = self.duplicates(&ball);
        r.push("no two words denote the same heart", dups.is_empty(), format!("{} of {} hearts", dups.len(), ball.vertex_count()));
        Ok(r)
    }

    /// The unoriented interval over `bottom` against the unoriented (N-1)-cluster exchange graph.
    pub fn shadow_check(&self, bottom: &GHeart) -> Result<Report> {
        let mut r = Report::new();
        let g = self.relative_interval(bottom)?;
        let c = crate::cluster::ClusterCat::new(self.d, self.n_cy - 1)?;
        let cg = c.build_graph()?;
        let images: Vec<Vec<DObject>> =
            g.vertices.iter().map(|h| c.j_map(&h.base).map(|t| t.key())).collect::<Result<_>>()?;
        let image_set: BTreeSet<Vec<DObject>> = images.iter().cloned().collect();
        let all: BTreeSet<Vec<DObject>> = cg.vertices.keys().cloned().collect();
        r.push(
            "hearts map bijectively to cluster tilting sets",
            image_set.len() == g.vertex_count() && image_set == all,
            format!("{} hearts, {} clusters", g.vertex_count(), all.len()),
        );
        let unordered = |a: &Vec<DObject>, b: &Vec<DObject>| if a < b { (a.clone(), b.clone()) } else { (b.clone(), a.clone()) };
        let ge: BTreeSet<_> = g.edges.iter().map(|e| unordered(&images[e.src], &images[e.dst])).collect();
        let ce: BTreeSet<_> = cg.edges.iter().map(|(a, b, _)| unordered(a, b)).collect();
        // Each almost complete set has an m-cycle of complements; the interval keeps m-1 of its edges.
        let almost: BTreeSet<Vec<DObject>> =
            cg.vertices.values().flat_map(|t| (0..t.objects.len()).map(move |i| t.without(i))).collect();
        r.push(
            "edges map to mutations, one per complement cycle missing",
            ge.is_subset(&ce) && ge.len() == almost.len() * (c.m as usize - 1),
            format!("{} of {} mutation edges, {} almost complete sets", ge.len(), ce.len(), almost.len()),
        );
        Ok(r)
    }

    pub fn to_export(&self, g: &GGraph, quiver_name: &str) -> crate::exchange::GraphExport {
        use crate::exchange::{ExportEdge, ExportMeta, ExportVertex, GraphExport};
        let key = |h: &GHeart| format!("{}|{}", h.word, crate::exchange::key_string(self.d, &h.base.key()));
        GraphExport {
            vertices: g
                .vertices
                .iter()
                .map(|h| ExportVertex { key: key(h), simples: h.simples().iter().map(|s| self.render_ref(s)).collect() })
                .collect(),
            edges: g
                .edges
                .iter()
                .map(|e| ExportEdge {
                    src: key(&g.vertices[e.src]),
                    dst: key(&g.vertices[e.dst]),
                    label: self.render_ref(&e.label),
                    closing: false,
                })
                .collect(),
            meta: ExportMeta { quiver: quiver_name.to_string(), n: self.n_cy },
        }
    }
}

/// Letters of w realised as (N-1)-fold tilts from I(H): (generator, direction) per letter.
pub fn tilt_sequence(d: &DerivedCat, w: &Braid) -> Vec<(usize, Direction)> {
    d.artin.letters(w).into_iter().map(|(s, e)| (s, if e > 0 { Direction::Backward } else { Direction::Forward })).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exchange::build_interval_graph;
    use crate::quiver::Quiver;

    #[test]
    fn induced_hom_examples() {
        let d = DerivedCat::new(&Quiver::a2()).unwrap();
        let (x, y) = (d.simple(0, 0), d.simple(1, 0));
        assert_eq!(induced_hom(&d, x, x, 3), GradedHom::from([(0, 1), (3, 1)]));
        assert_eq!(induced_hom(&d, x, y, 3), GradedHom::from([(1, 1)]));
        assert_eq!(induced_hom(&d, y, x, 3), GradedHom::from([(2, 1)]));
    }

    #[test]
    fn twisted_model_matches_induced_hom() {
        for q in [Quiver::a2(), Quiver::a3()] {
            let d = DerivedCat::new(&q).unwrap();
            for n in [3, 4] {
                let alg = ExtAlgebra::new(&q, n);
                let objs: Vec<DObject> =
                    (0..d.root_count()).flat_map(|r| (0..2).map(move |s| DObject::new(r, s))).collect();
                for &a in &objs {
                    for &b in &objs {
                        let h = cy::hom_graded(&alg, &cy::induced(&d, a), &cy::induced(&d, b));
                        assert_eq!(h, induced_hom(&d, a, b, n), "{} {}", d.name(a), d.name(b));
                    }
                }
            }
        }
    }

    #[test]
    fn two_forward_tilts_give_inverse_twist() {
        let d = DerivedCat::new(&Quiver::a2()).unwrap();
        let g = Ginzburg::new(&d, 3).unwrap();
        let h = g.standard();
        for i in 0..2 {
            let once = g.g_tilt(&h, i, Direction::Forward).unwrap();
            assert!(once.word.is_identity());
            let twice = g.g_tilt(&once, i, Direction::Forward).unwrap();
            assert_eq!(twice.word, d.artin.generator(i, -1));
            assert_eq!(twice.base.key(), h.base.key());
            let back = g.g_tilt(&twice, i, Direction::Backward).unwrap();
            assert_eq!(back.key(), once.key());
        }
    }

    #[test]
    fn relative_interval_over_standard_base() {
        let d = DerivedCat::new(&Quiver::a2()).unwrap();
        for n in [3, 4] {
            let g = Ginzburg::new(&d, n).unwrap();
            let rel = g.relative_interval(&g.standard()).unwrap();
            let eg = build_interval_graph(&d, n).unwrap();
            let (v, e) = graph_sets(&eg);
            let keys: BTreeSet<HeartKey> =
                rel.vertices.iter().map(|h| {
                    assert!(h.word.is_identity());
                    h.base.key()
                }).collect();
            assert_eq!(keys, v);
            let (_, qe) = rel.quotient();
            assert_eq!(qe, e);
        }
    }

    #[test]
    fn hearts_are_spherical_and_dual() {
        let d = DerivedCat::new(&Quiver::a2()).unwrap();
        let g = Ginzburg::new(&d, 3).unwrap();
        let ball = g.explore(&g.standard(), 3).unwrap();
        for h in &ball.vertices {
            let r = g.check_heart(h);
            assert!(r.all_pass(), "{}\n{r}", g.render(h));
        }
    }

    #[test]
    fn tilting_around_a_line_is_the_inverse_twist() {
        let d = DerivedCat::new(&Quiver::a2()).unwrap();
        for n in [3, 4] {
            let g = Ginzburg::new(&d, n).unwrap();
            for h in build_interval_graph(&d, n).unwrap().vertices.values() {
                let r = g.root_check(&g.induce_heart(h).unwrap()).unwrap();
                assert!(r.all_pass(), "{r}");
            }
        }
    }

    #[test]
    fn twist_along_a_conjugate_is_the_conjugate_twist() {
        let d = DerivedCat::new(&Quiver::a3()).unwrap();
        let g = Ginzburg::new(&d, 3).unwrap();
        let words = [vec![(0, 1)], vec![(1, -1), (0, 1)], vec![(2, 1), (1, 1), (0, -1)]];
        for letters in words {
            let w = d.artin.from_letters(&letters);
            for s in 0..3 {
                for x in [d.simple(0, 0), d.simple(2, 1), d.projective(0, 0)] {
                    assert!(g.conjugation_holds(&w, s, x), "{w} {s}");
                }
            }
        }
    }

    #[test]
    fn braid_elements_are_reached_by_line_tilts() {
        let d = DerivedCat::new(&Quiver::a2()).unwrap();
        let g = Ginzburg::new(&d, 3).unwrap();
        let h = g.standard();
        for letters in [vec![(0, 1), (1, -1)], vec![(1, 1), (1, 1), (0, 1)], vec![(0, -1), (1, 1), (0, -1), (1, -1)]] {
            let w = d.artin.from_letters(&letters);
            assert_eq!(g.reach_by_tilts(&h, &w).unwrap().key(), g.act(&w, &h).key());
        }
    }

    #[test]
    fn half_twist_a2() {
        let d = DerivedCat::new(&Quiver::a2()).unwrap();
        let g = Ginzburg::new(&d, 3).unwrap();
        for i in 0..2 {
            let r = g.half_twist_check(&g.standard(), i).unwrap();
            assert!(r.all_pass(), "{r}");
        }
    }

    #[test]
    fn quotient_of_a_ball_is_the_completed_graph() {
        let d = DerivedCat::new(&Quiver::a2()).unwrap();
        let g = Ginzburg::new(&d, 3).unwrap();
        let r = g.quotient_check(4).unwrap();
        assert!(r.all_pass(), "{r}");
    }

    #[test]
    fn tilted_base_interval_has_eleven_hearts() {
        let d = DerivedCat::new(&Quiver::a2()).unwrap();
        let g = Ginzburg::new(&d, 4).unwrap();
        assert_eq!(g.relative_interval(&g.standard()).unwrap().vertex_count(), 12);
        let b = g.g_tilt(&g.standard(), 0, Direction::Forward).unwrap();
        assert_eq!(g.relative_interval(&b).unwrap().vertex_count(), 11);
    }

    #[test]
    fn rendering() {
        let d = DerivedCat::new(&Quiver::a2()).unwrap();
        let g = Ginzburg::new(&d, 3).unwrap();
        let h = g.g_tilt(&g.g_tilt(&g.standard(), 0, Direction::Forward).unwrap(), 0, Direction::Forward).unwrap();
        assert!(g.render(&h).starts_with("Δ^-1 · s0s1 ▷ {"));
    }
}
