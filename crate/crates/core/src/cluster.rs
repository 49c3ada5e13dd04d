//! Cluster categories D(Q)/F with F = tau^{-1}[m-1], on fundamental-domain representatives.

use crate::derived::{DObject, DerivedCat, Direction, GradedQuiver, Heart};
use crate::error::{Error, Result};
use crate::exchange::{ExchangeGraph, ExportEdge, ExportMeta, ExportVertex, GraphExport, LineSegment};
use crate::report::Report;
use serde::{Deserialize, Serialize};
use std::collections::{BTreeMap, BTreeSet, VecDeque};

/// Coloured quiver on slots: (source, target, colour, multiplicity).
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct ColouredQuiver {
    pub vertices: usize,
    pub m: i64,
    pub arrows: Vec<(usize, usize, i64, usize)>,
}

impl ColouredQuiver {
    fn normalized(vertices: usize, m: i64, raw: Vec<(usize, usize, i64, usize)>) -> Self {
        let mut acc: BTreeMap<(usize, usize, i64), usize> = BTreeMap::new();
        for (s, t, c, k) in raw {
            if k > 0 {
                *acc.entry((s, t, c)).or_default() += k;
            }
        }
        ColouredQuiver { vertices, m, arrows: acc.into_iter().map(|((s, t, c), k)| (s, t, c, k)).collect() }
    }

    /// Arrows of colour c become degree c+1; plus a loop of degree m+1 at each vertex.
    pub fn augmented(&self) -> GradedQuiver {
        let mut arrows: Vec<_> = self.arrows.iter().map(|&(s, t, c, k)| (s, t, c + 1, k)).collect();
        arrows.extend((0..self.vertices).map(|v| (v, v, self.m + 1, 1)));
        arrows.sort();
        GradedQuiver { vertices: self.vertices, arrows }
    }

    pub fn check_laws(&self) -> Report {
        let mut r = Report::new();
        let mut colours: BTreeMap<(usize, usize), BTreeSet<i64>> = BTreeMap::new();
        for &(s, t, c, _) in &self.arrows {
            colours.entry((s, t)).or_default().insert(c);
        }
        let mono = colours.values().all(|c| c.len() == 1);
        r.push("coloured quiver monochromatic", mono, format!("{:?}", self.arrows));
        let skew = self.arrows.iter().all(|&(s, t, c, k)| self.arrows.contains(&(t, s, self.m - 1 - c, k)));
        r.push("coloured quiver skew-symmetric", skew, format!("{:?}", self.arrows));
        let loops = self.arrows.iter().all(|&(s, t, c, _)| s != t || c != 0);
        r.push("no colour-0 loops", loops, String::new());
        r
    }

    pub fn render(&self) -> String {
        self.arrows.iter().map(|(s, t, c, k)| format!("{s} -({c})-> {t} ×{k}")).collect::<Vec<_>>().join("\n")
    }
}

/// An m-cluster tilting set; slot order is meaningful for mutation.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct ClusterTiltingSet {
    pub objects: Vec<DObject>,
}

impl ClusterTiltingSet {
    pub fn key(&self) -> Vec<DObject> {
        let mut k = self.objects.clone();
        k.sort();
        k
    }

    pub fn without(&self, i: usize) -> Vec<DObject> {
        let mut k: Vec<DObject> = self.objects.iter().enumerate().filter(|&(j, _)| j != i).map(|(_, o)| *o).collect();
        k.sort();
        k
    }
}

pub struct ClusterCat<'a> {
    pub d: &'a DerivedCat,
    pub m: i64,
}

#[derive(Clone, Debug)]
pub struct ClusterGraph {
    pub m: i64,
    pub vertices: BTreeMap<Vec<DObject>, ClusterTiltingSet>,
    /// Forward mutations (source key, target key, mutated object in the source).
    pub edges: Vec<(Vec<DObject>, Vec<DObject>, DObject)>,
}

impl<'a> ClusterCat<'a> {
    pub fn new(d: &'a DerivedCat, m: i64) -> Result<Self> {
        if m < 1 {
            return Err(Error::MalformedInput(format!("m must be positive, got {m}")));
        }
        Ok(ClusterCat { d, m })
    }

    pub fn f(&self, x: DObject) -> DObject {
        self.d.tau_inverse(x).shifted(self.m - 1)
    }

    pub fn f_inv(&self, x: DObject) -> DObject {
        self.d.tau(x.shifted(1 - self.m))
    }

    pub fn in_domain(&self, x: DObject) -> bool {
        (1..=self.m - 1).contains(&x.shift) || (x.shift == self.m && self.d.is_projective_root(x.root))
    }

    pub fn orbit_rep(&self, x: DObject) -> DObject {
        let mut cur = x;
        for _ in 0..10_000 {
            if self.in_domain(cur) {
                return cur;
            }
            cur = if cur.shift < 1 { self.f(cur) } else { self.f_inv(cur) };
        }
        panic!("orbit of {x:?} misses the fundamental domain");
    }

    fn window(&self) -> i64 {
        if self.m >= 2 {
            self.m + 3
        } else {
            self.m + 3 + self.d.roots.coxeter_number as i64
        }
    }

    /// dim Hom_C(a, b[k]) = sum over t of Hom_D(a, F^t b [k]).
    pub fn hom_cluster(&self, a: DObject, b: DObject, k: i64) -> usize {
        let w = self.window();
        let mut total = 0;
        let mut up = b;
        let mut down = b;
        for t in 0..=w {
            let hu = self.d.hom_k(a, up, k);
            let hd = if t > 0 { self.d.hom_k(a, down, k) } else { 0 };
            if t == w {
                assert!(hu == 0 && hd == 0, "orbit sum window too small for {a:?}, {b:?}");
            }
            total += hu + hd;
            up = self.f(up);
            down = self.f_inv(down);
        }
        total
    }

    pub fn ext_vanishes(&self, a: DObject, b: DObject) -> bool {
        (1..self.m).all(|k| self.hom_cluster(a, b, k) == 0 && self.hom_cluster(b, a, k) == 0)
    }

    pub fn domain_objects(&self) -> Vec<DObject> {
        let r = self.d.root_count();
        let mut out: Vec<DObject> = (1..self.m).flat_map(|s| (0..r).map(move |x| DObject::new(x, s))).collect();
        out.extend((0..r).filter(|&x| self.d.is_projective_root(x)).map(|x| DObject::new(x, self.m)));
        out.sort();
        out
    }

    pub fn is_tilting(&self, t: &ClusterTiltingSet) -> bool {
        t.objects.len() == self.d.n()
            && t.key().windows(2).all(|w| w[0] != w[1])
            && t.objects.iter().all(|&a| t.objects.iter().all(|&b| self.ext_vanishes(a, b)))
    }

    /// All completions of T minus its i-th object, T_i included.
    pub fn completions(&self, t: &ClusterTiltingSet, i: usize) -> Vec<DObject> {
        let rest = t.without(i);
        self.domain_objects()
            .into_iter()
            .filter(|x| !rest.contains(x))
            .filter(|&x| self.ext_vanishes(x, x) && rest.iter().all(|&y| self.ext_vanishes(x, y)))
            .collect()
    }

    /// Forward mutation replaces T_i by the completion X with Ext^1_C(X, T_i) != 0; backward by the one with Ext^1_C(T_i, X) != 0.
    pub fn mutate(&self, t: &ClusterTiltingSet, i: usize, dir: Direction) -> Result<ClusterTiltingSet> {
        let ti = t.objects[i];
        let comps = self.completions(t, i);
        if comps.len() as i64 != self.m {
            return Err(Error::LiftFailure(format!("{} completions, expected {}", comps.len(), self.m)));
        }
        let hits: Vec<DObject> = comps
            .into_iter()
            .filter(|&x| x != ti)
            .filter(|&x| match dir {
                Direction::Forward => self.hom_cluster(x, ti, 1) > 0,
                Direction::Backward => self.hom_cluster(ti, x, 1) > 0,
            })
            .collect();
        match hits.as_slice() {
            [x] => {
                let mut objects = t.objects.clone();
                objects[i] = *x;
                Ok(ClusterTiltingSet { objects })
            }
            [] if self.m == 1 => Ok(t.clone()),
            _ => Err(Error::LiftFailure(format!("{} candidate mutations of slot {i}", hits.len()))),
        }
    }

    pub fn j_map(&self, h: &Heart) -> Result<ClusterTiltingSet> {
        let t = ClusterTiltingSet { objects: h.projectives.iter().map(|&p| self.orbit_rep(p)).collect() };
        if !self.is_tilting(&t) {
            return Err(Error::ExtObstruction(self.d.render_heart(h)));
        }
        Ok(t)
    }

    pub fn initial(&self) -> ClusterTiltingSet {
        ClusterTiltingSet { objects: (0..self.d.n()).map(|i| self.d.projective(i, 1)).collect() }
    }

    pub fn build_graph(&self) -> Result<ClusterGraph> {
        let start = self.initial();
        let mut vertices = BTreeMap::new();
        let mut edges = BTreeSet::new();
        vertices.insert(start.key(), start.clone());
        let mut queue = VecDeque::from([start]);
        while let Some(t) = queue.pop_front() {
            for i in 0..t.objects.len() {
                for dir in [Direction::Forward, Direction::Backward] {
                    let u = self.mutate(&t, i, dir)?;
                    match dir {
                        Direction::Forward => edges.insert((t.key(), u.key(), t.objects[i])),
                        Direction::Backward => edges.insert((u.key(), t.key(), u.objects[i])),
                    };
                    if !vertices.contains_key(&u.key()) {
                        vertices.insert(u.key(), u.clone());
                        queue.push_back(u);
                    }
                }
            }
        }
        Ok(ClusterGraph { m: self.m, vertices, edges: edges.into_iter().collect() })
    }

    /// Coloured quiver read off the heart: CY-(m+1) double of the Ext-quiver, loops dropped, colour = degree - 1.
    pub fn coloured_quiver_of_heart(&self, h: &Heart) -> Result<ColouredQuiver> {
        let dbl = self.d.ext_quiver(h).cy_double(self.m + 1)?;
        let raw = dbl.arrows.into_iter().filter(|&(s, t, _, _)| s != t).map(|(s, t, k, v)| (s, t, k - 1, v)).collect();
        Ok(ColouredQuiver::normalized(h.n(), self.m, raw))
    }

    /// End_D(P) and End_C(pi P) agree dimensionally on the projectives of h.
    pub fn dc_holds(&self, h: &Heart) -> bool {
        h.projectives.iter().all(|&a| {
            h.projectives.iter().all(|&b| self.d.hom_k(a, b, 0) == self.hom_cluster(a, b, 0))
        })
    }

    /// Lifts F^{t_a}(P_a), |t_a| <= 1, on which every Hom_C is the Hom in D(Q).
    ///
    /// Then all maps between the images live in orbit degree 0, so End_C of the image is End_D
    /// of the lifts as an algebra.
    pub fn dc_lift(&self, objs: &[DObject]) -> Option<Vec<DObject>> {
        let n = objs.len();
        let options: Vec<[DObject; 3]> = objs.iter().map(|&p| [p, self.f_inv(p), self.f(p)]).collect();
        let mut choice = vec![0usize; n];
        loop {
            let lift: Vec<DObject> = (0..n).map(|a| options[a][choice[a]]).collect();
            let ok = (0..n).all(|a| {
                (0..n).all(|b| self.d.hom_k(lift[a], lift[b], 0) == self.hom_cluster(lift[a], lift[b], 0))
            });
            if ok {
                return Some(lift);
            }
            // odometer over choices, first slot pinned
            let mut pos = 1;
            loop {
                if pos >= n {
                    return None;
                }
                choice[pos] += 1;
                if choice[pos] < 3 {
                    break;
                }
                choice[pos] = 0;
                pos += 1;
            }
        }
    }

    /// Coloured quiver of J(h) from irreducible maps along lines.
    ///
    /// A colour-0 arrow a -> b counts irreducible maps P_b -> P_a. For slot i, walk the line through
    /// h in the i-th direction from S_i[1] to S_i[m]. Irr of a heart on the line is read in D(Q) on a
    /// lift from `dc_lift`; hearts without one only constrain which colours remain possible. The
    /// colour c of P_j -> P_i in h_0 is the k with Irr(P_i^k, P_j) != 0, or one less than the k with
    /// Irr(P_j, P_i^k) != 0 (mod m); it then drops by one per forward tilt, wrapping from 0 to m-1.
    pub fn coloured_quiver_from_lines(&self, h: &Heart) -> Result<ColouredQuiver> {
        let n = h.n();
        let m = self.m;
        // (j, i) -> candidate (colour of P_j -> P_i in h, multiplicity); None = no arrows
        let mut cands: BTreeMap<(usize, usize), BTreeSet<Option<(i64, Option<usize>)>>> = BTreeMap::new();
        for i in 0..n {
            let hh = h.simples[i].shift - 1;
            let h0 = self.d.tilt_n(h, i, Direction::Backward, hh.max(0) as usize)?;
            let mut line = vec![h0];
            for _ in 1..m {
                let next = self.d.tilt(line.last().unwrap(), i, Direction::Forward)?;
                line.push(next);
            }
            let irrs: Vec<Option<Vec<Vec<usize>>>> =
                line.iter().map(|hk| self.dc_lift(&hk.projectives).map(|l| self.d.irr_matrix(&l))).collect();
            let entry = |k: usize, a: usize, b: usize| -> Option<usize> { irrs[k].as_ref().map(|irr| irr[a][b]) };
            for j in (0..n).filter(|&j| j != i) {
                let mut here = BTreeSet::new();
                let mut exact = None;
                let mut zero_everywhere = true;
                for c in 0..m {
                    let e1 = entry(c as usize, i, j);
                    let e2 = entry(((c + 1) % m) as usize, j, i);
                    let vals: Vec<usize> = [e1, e2].into_iter().flatten().collect();
                    if vals.iter().any(|&v| v > 0) {
                        if exact.is_some() || vals.iter().any(|&v| v == 0) {
                            return Err(Error::Invariant(format!("inconsistent colours between slots {i} and {j}")));
                        }
                        exact = Some((c, vals[0]));
                    } else if vals.len() < 2 {
                        here.insert(Some((c, None)));
                        zero_everywhere = false;
                    }
                }
                let here: BTreeSet<Option<(i64, Option<usize>)>> = match exact {
                    Some((c, v)) => BTreeSet::from([Some((c, Some(v)))]),
                    None if zero_everywhere => BTreeSet::from([None]),
                    None => {
                        let mut h2 = here;
                        h2.insert(None);
                        h2
                    }
                };
                let shift_colour = |c: i64| if hh <= c { c - hh } else { m - hh + c };
                let forward: BTreeSet<_> = here.iter().map(|x| x.map(|(c, v)| (shift_colour(c), v))).collect();
                let reverse: BTreeSet<_> = forward.iter().map(|x| x.map(|(c, v)| (m - 1 - c, v))).collect();
                for (key, set) in [((j, i), forward), ((i, j), reverse)] {
                    let slot = cands.entry(key).or_insert_with(|| set.clone());
                    let merged: BTreeSet<_> = slot
                        .iter()
                        .filter_map(|a| {
                            set.iter().find_map(|b| match (a, b) {
                                (None, None) => Some(None),
                                (Some((c1, v1)), Some((c2, v2))) if c1 == c2 && (v1.is_none() || v2.is_none() || v1 == v2) => {
                                    Some(Some((*c1, v1.or(*v2))))
                                }
                                _ => None,
                            })
                        })
                        .collect();
                    *slot = merged;
                }
            }
        }
        let mut raw = Vec::new();
        for ((a, b), set) in cands {
            let mut it = set.into_iter();
            match (it.next(), it.next()) {
                (Some(None), None) => {}
                (Some(Some((c, Some(v)))), None) => raw.push((a, b, c, v)),
                (x, y) => return Err(Error::Invariant(format!("Irr data does not determine slots {a}, {b}: {x:?} {y:?}"))),
            }
        }
        Ok(ColouredQuiver::normalized(n, m, raw))
    }

    pub fn to_export(&self, g: &ClusterGraph, quiver_name: &str) -> GraphExport {
        let key = |k: &[DObject]| k.iter().map(|&o| self.d.name(o)).collect::<Vec<_>>().join(",");
        GraphExport {
            vertices: g
                .vertices
                .iter()
                .map(|(k, t)| ExportVertex { key: key(k), simples: t.objects.iter().map(|&o| self.d.name(o)).collect() })
                .collect(),
            edges: g
                .edges
                .iter()
                .map(|(a, b, x)| ExportEdge { src: key(a), dst: key(b), label: self.d.name(*x), closing: false })
                .collect(),
            meta: ExportMeta { quiver: quiver_name.to_string(), n: self.m + 1 },
        }
    }

    pub fn render(&self, t: &ClusterTiltingSet) -> String {
        format!("{{{}}}", t.objects.iter().map(|&o| self.d.name(o)).collect::<Vec<_>>().join(","))
    }
}

/// The correspondence between the completed interval graph and the cluster exchange graph.
pub fn verify_j_iso(d: &DerivedCat, completed: &ExchangeGraph) -> Result<Report> {
    let c = ClusterCat::new(d, completed.n_cy - 1)?;
    let cg = c.build_graph()?;
    let mut r = Report::new();
    let mut images = BTreeMap::new();
    for (k, h) in &completed.vertices {
        images.insert(k.clone(), c.j_map(h)?);
    }
    let image_keys: BTreeSet<_> = images.values().map(|t| t.key()).collect();
    let all: BTreeSet<_> = cg.vertices.keys().cloned().collect();
    r.push(
        "J is a bijection on vertices",
        image_keys.len() == completed.vertices.len() && image_keys == all,
        format!("{} hearts, {} clusters", completed.vertices.len(), cg.vertices.len()),
    );
    let mut edges_ok = true;
    let mut witness = String::new();
    for e in &completed.edges {
        let t = &images[&e.src];
        let mu = c.mutate(t, e.slot, Direction::Forward)?;
        if mu.key() != images[&e.dst].key() {
            edges_ok = false;
            witness = format!("{} at {}", c.render(t), d.name(e.label));
        }
    }
    r.push("edges map to forward mutations", edges_ok, witness);
    let segs: Vec<LineSegment> = completed.maximal_segments()?;
    let mut almost: BTreeSet<Vec<DObject>> = BTreeSet::new();
    let mut seg_ok = true;
    for seg in &segs {
        let first = &completed.vertices[&seg.hearts[0]];
        let slot = first.simples.iter().position(|&s| s == seg.direction).unwrap();
        let rest = images[&seg.hearts[0]].without(slot);
        for hk in &seg.hearts {
            let t = &images[hk];
            let common = t.objects.iter().filter(|o| rest.contains(o)).count();
            seg_ok &= common == rest.len();
        }
        almost.insert(rest);
    }
    let cluster_almost: BTreeSet<Vec<DObject>> =
        cg.vertices.values().flat_map(|t| (0..t.objects.len()).map(move |i| t.without(i))).collect();
    r.push(
        "segments correspond to almost complete sets",
        seg_ok && almost.len() == segs.len() && almost == cluster_almost,
        format!("{} segments, {} almost complete sets", segs.len(), cluster_almost.len()),
    );
    Ok(r)
}
