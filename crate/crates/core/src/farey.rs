//! The Farey-graph model of the A2 exchange graph.
//!
//! Rational points index the spherical objects up to shift, Farey triangles index the triples of
//! mutually adjacent ones, and the quotient of the exchange graph by [1] is drawn on top of the
//! Farey tessellation: a 3-cycle inside each triangle and a chain of two-cycles across each edge.

use crate::cy::{self, Twisted};
use crate::error::{Error, Result};
use crate::garside::Braid;
use crate::ginzburg::{GGraph, GHeart, Ginzburg};
use crate::report::Report;
use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use std::collections::{BTreeMap, BTreeSet, HashMap, VecDeque};
use std::fmt;

/// p/q in lowest terms with q >= 0; infinity is 1/0.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Fraction {
    pub p: i64,
    pub q: i64,
}

fn gcd(a: i64, b: i64) -> i64 {
    if b == 0 {
        a.abs()
    } else {
        gcd(b, a % b)
    }
}

impl Fraction {
    pub const INFINITY: Fraction = Fraction { p: 1, q: 0 };

    pub fn new(p: i64, q: i64) -> Result<Fraction> {
        if p == 0 && q == 0 {
            return Err(Error::MalformedInput("0/0 is not a Farey vertex".into()));
        }
        let g = gcd(p, q);
        let (mut p, mut q) = (p / g, q / g);
        if q < 0 || (q == 0 && p < 0) {
            p = -p;
            q = -q;
        }
        Ok(Fraction { p, q })
    }

    pub fn int(p: i64) -> Fraction {
        Fraction { p, q: 1 }
    }

    pub fn is_infinite(&self) -> bool {
        self.q == 0
    }
}

impl fmt::Display for Fraction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.q == 0 {
            write!(f, "∞")
        } else if self.q == 1 {
            write!(f, "{}", self.p)
        } else {
            write!(f, "{}/{}", self.p, self.q)
        }
    }
}

impl Serialize for Fraction {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&format!("{}/{}", self.p, self.q))
    }
}

impl<'de> Deserialize<'de> for Fraction {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        let (p, q) = s.split_once('/').ok_or_else(|| serde::de::Error::custom(format!("bad fraction {s}")))?;
        let p: i64 = p.trim().parse().map_err(serde::de::Error::custom)?;
        let q: i64 = q.trim().parse().map_err(serde::de::Error::custom)?;
        Fraction::new(p, q).map_err(serde::de::Error::custom)
    }
}

/// An integer matrix of determinant 1 modulo sign, normalised so the first nonzero entry is positive.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct PSL2Elem {
    pub m: [[i64; 2]; 2],
}

impl PSL2Elem {
    pub fn new(m: [[i64; 2]; 2]) -> Result<PSL2Elem> {
        if m[0][0] * m[1][1] - m[0][1] * m[1][0] != 1 {
            return Err(Error::MalformedInput(format!("{m:?} has determinant != 1")));
        }
        Ok(Self::normalised(m))
    }

    fn normalised(m: [[i64; 2]; 2]) -> PSL2Elem {
        let first = [m[0][0], m[0][1], m[1][0], m[1][1]].into_iter().find(|&x| x != 0).unwrap_or(1);
        if first < 0 {
            PSL2Elem { m: [[-m[0][0], -m[0][1]], [-m[1][0], -m[1][1]]] }
        } else {
            PSL2Elem { m }
        }
    }

    pub fn identity() -> PSL2Elem {
        PSL2Elem { m: [[1, 0], [0, 1]] }
    }

    pub fn mul(&self, o: &PSL2Elem) -> PSL2Elem {
        let (a, b) = (self.m, o.m);
        Self::normalised([
            [a[0][0] * b[0][0] + a[0][1] * b[1][0], a[0][0] * b[0][1] + a[0][1] * b[1][1]],
            [a[1][0] * b[0][0] + a[1][1] * b[1][0], a[1][0] * b[0][1] + a[1][1] * b[1][1]],
        ])
    }

    pub fn inverse(&self) -> PSL2Elem {
        let m = self.m;
        Self::normalised([[m[1][1], -m[0][1]], [-m[1][0], m[0][0]]])
    }

    pub fn det(&self) -> i64 {
        self.m[0][0] * self.m[1][1] - self.m[0][1] * self.m[1][0]
    }

    /// Trace up to sign.
    pub fn trace(&self) -> i64 {
        (self.m[0][0] + self.m[1][1]).abs()
    }
}

/// The parabolic element fixing p/q.
pub fn psi(a: Fraction) -> PSL2Elem {
    let (p, q) = (a.p, a.q);
    PSL2Elem::normalised([[1 + p * q, -p * p], [q * q, 1 - p * q]])
}

pub fn is_edge(a: Fraction, b: Fraction) -> bool {
    (a.p * b.q - b.p * a.q).abs() == 1
}

pub fn mobius(g: &PSL2Elem, a: Fraction) -> Fraction {
    let m = g.m;
    Fraction::new(m[0][0] * a.p + m[0][1] * a.q, m[1][0] * a.p + m[1][1] * a.q).expect("invertible action")
}

/// A clockwise Farey triangle (a, b, c).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Triangle(pub Fraction, pub Fraction, pub Fraction);

impl Triangle {
    pub fn corners(&self) -> [Fraction; 3] {
        [self.0, self.1, self.2]
    }

    /// Clockwise consecutive pairs (c,a), (a,b), (b,c).
    pub fn pairs(&self) -> [(Fraction, Fraction); 3] {
        [(self.2, self.0), (self.0, self.1), (self.1, self.2)]
    }
}

/// Unordered Farey edge, smaller endpoint first.
pub fn farey_edge(a: Fraction, b: Fraction) -> (Fraction, Fraction) {
    if a <= b {
        (a, b)
    } else {
        (b, a)
    }
}

/// Mediant subdivision from (∞,1,0) and its mirror (0,-1,∞), `depth` levels deep.
///
/// Corners are kept unnormalised while subdividing so that ∞ = -1/0 on the negative side.
pub fn enumerate_triangles(depth: usize) -> (Vec<Triangle>, Vec<(Fraction, Fraction)>) {
    type Raw = (i64, i64);
    let norm = |r: Raw| Fraction::new(r.0, r.1).unwrap();
    let mediant = |x: Raw, y: Raw| (x.0 + y.0, x.1 + y.1);
    let mut level: Vec<[Raw; 3]> = vec![[(1, 0), (1, 1), (0, 1)], [(0, 1), (-1, 1), (-1, 0)]];
    let mut triangles = Vec::new();
    for d in 0..=depth {
        triangles.extend(level.iter().map(|t| Triangle(norm(t[0]), norm(t[1]), norm(t[2]))));
        if d == depth {
            break;
        }
        level = level
            .iter()
            .flat_map(|&[x, y, z]| [[x, mediant(x, y), y], [y, mediant(y, z), z]])
            .collect();
    }
    let edges: BTreeSet<(Fraction, Fraction)> =
        triangles.iter().flat_map(|t| t.pairs().map(|(u, v)| farey_edge(u, v))).collect();
    (triangles, edges.into_iter().collect())
}

/// h(u,v,j): the heart on the Farey edge {u,v} at level j, seen from the triangle in which (u,v)
/// is clockwise. The same heart is h(v,u,N-j) from the other side.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct GVertex {
    pub from: Fraction,
    pub to: Fraction,
    pub level: i64,
}

impl GVertex {
    pub fn canonical(from: Fraction, to: Fraction, level: i64, n: i64) -> GVertex {
        let a = GVertex { from, to, level };
        let b = GVertex { from: to, to: from, level: n - level };
        a.min(b)
    }
}

impl fmt::Display for GVertex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "h({},{};{})", self.from, self.to, self.level)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum EdgeKind {
    Triangle,
    Pair,
}

impl EdgeKind {
    /// Grading in sixths.
    pub fn sixths(self) -> i64 {
        match self {
            EdgeKind::Triangle => 2,
            EdgeKind::Pair => 3,
        }
    }
}

#[derive(Clone, Debug)]
pub struct GNGraph {
    pub n: i64,
    pub depth: usize,
    pub triangles: Vec<Triangle>,
    pub farey_edges: Vec<(Fraction, Fraction)>,
    pub vertices: Vec<GVertex>,
    pub index: HashMap<GVertex, usize>,
    pub edges: Vec<(usize, usize, EdgeKind)>,
}

impl GNGraph {
    fn vertex(&mut self, from: Fraction, to: Fraction, level: i64) -> usize {
        let v = GVertex::canonical(from, to, level, self.n);
        if let Some(&i) = self.index.get(&v) {
            return i;
        }
        self.vertices.push(v);
        self.index.insert(v, self.vertices.len() - 1);
        self.vertices.len() - 1
    }

    pub fn id(&self, from: Fraction, to: Fraction, level: i64) -> Option<usize> {
        self.index.get(&GVertex::canonical(from, to, level, self.n)).copied()
    }

    /// The heart of the base triangle (∞,1,0) on the pair (0,∞) at level 1.
    pub fn base_vertex(&self) -> usize {
        self.id(Fraction::int(0), Fraction::INFINITY, 1).expect("base triangle enumerated")
    }

    pub fn successors(&self, v: usize) -> impl Iterator<Item = &(usize, usize, EdgeKind)> {
        self.edges.iter().filter(move |e| e.0 == v)
    }

    pub fn check(&self) -> Report {
        let mut r = Report::new();
        let n = self.n;
        let edge_set: BTreeSet<(usize, usize, EdgeKind)> = self.edges.iter().copied().collect();
        let three_cycles = self
            .triangles
            .iter()
            .filter(|t| {
                let [x, y, z] = t.pairs().map(|(u, v)| self.id(u, v, 1).unwrap());
                [(x, y), (y, z), (z, x)].iter().all(|&(a, b)| edge_set.contains(&(a, b, EdgeKind::Triangle)))
            })
            .count();
        r.push("one 3-cycle per triangle", three_cycles == self.triangles.len(), format!("{three_cycles} of {}", self.triangles.len()));
        let two_cycles = self
            .edges
            .iter()
            .filter(|e| e.2 == EdgeKind::Pair && e.0 < e.1 && edge_set.contains(&(e.1, e.0, EdgeKind::Pair)))
            .count();
        let expected = self.farey_edges.len() * (n - 2).max(0) as usize;
        r.push("a chain of N-2 two-cycles per Farey edge", two_cycles == expected, format!("{two_cycles} vs {expected}"));
        r.push(
            "vertex count is (N-1) per Farey edge",
            self.vertices.len() == self.farey_edges.len() * (n - 1) as usize,
            format!("{} vertices, {} edges", self.vertices.len(), self.farey_edges.len()),
        );
        let injective = self.triangles.iter().all(|t| {
            let labels: BTreeSet<GVertex> = t
                .pairs()
                .iter()
                .flat_map(|&(u, v)| (1..n).map(move |j| GVertex::canonical(u, v, j, n)))
                .collect();
            labels.len() == 3 * (n - 1) as usize
        });
        r.push("sharing rule is injective on each triangle", injective, "");
        let edges_ok = self.triangles.iter().all(|t| t.pairs().iter().all(|&(u, v)| is_edge(u, v)));
        r.push("triangle sides are Farey edges", edges_ok, "");
        r.push("grading is closed modulo 1", self.offsets().is_ok(), "");
        r
    }

    /// Offsets in sixths modulo 6 making every edge raise height by its grading.
    pub fn offsets(&self) -> Result<Vec<i64>> {
        let mut off: Vec<Option<i64>> = vec![None; self.vertices.len()];
        let mut adj: Vec<Vec<(usize, i64)>> = vec![Vec::new(); self.vertices.len()];
        for &(a, b, k) in &self.edges {
            adj[a].push((b, k.sixths()));
            adj[b].push((a, -k.sixths()));
        }
        for start in 0..self.vertices.len() {
            if off[start].is_some() {
                continue;
            }
            off[start] = Some(0);
            let mut queue = VecDeque::from([start]);
            while let Some(v) = queue.pop_front() {
                let t = off[v].unwrap();
                for &(w, g) in &adj[v] {
                    let want = (t + g).rem_euclid(6);
                    match off[w] {
                        None => {
                            off[w] = Some(want);
                            queue.push_back(w);
                        }
                        Some(x) if x != want => {
                            return Err(Error::Invariant(format!("grading not closed at {}", self.vertices[w])))
                        }
                        _ => {}
                    }
                }
            }
        }
        Ok(off.into_iter().map(Option::unwrap).collect())
    }

    pub fn to_dot(&self) -> String {
        let mut s = format!("digraph G{} {{\n", self.n);
        for (u, v) in &self.farey_edges {
            s += &format!("  \"{u}\" -> \"{v}\" [dir=none, color=gray];\n");
        }
        for v in &self.vertices {
            s += &format!("  \"{v}\" [shape=point];\n");
        }
        for &(a, b, k) in &self.edges {
            let colour = if k == EdgeKind::Triangle { "blue" } else { "red" };
            s += &format!("  \"{}\" -> \"{}\" [color={colour}];\n", self.vertices[a], self.vertices[b]);
        }
        s + "}\n"
    }

    pub fn to_json(&self) -> String {
        #[derive(Serialize)]
        struct Export<'a> {
            n: i64,
            depth: usize,
            triangles: &'a [Triangle],
            farey_edges: &'a [(Fraction, Fraction)],
            vertices: &'a [GVertex],
            edges: Vec<(usize, usize, EdgeKind)>,
        }
        serde_json::to_string_pretty(&Export {
            n: self.n,
            depth: self.depth,
            triangles: &self.triangles,
            farey_edges: &self.farey_edges,
            vertices: &self.vertices,
            edges: self.edges.clone(),
        })
        .expect("serialisable")
    }
}

pub fn build_gn(n: i64, depth: usize) -> Result<GNGraph> {
    if n < 2 {
        return Err(Error::DegreeOutOfRange(n));
    }
    let (triangles, farey_edges) = enumerate_triangles(depth);
    let mut g = GNGraph {
        n,
        depth,
        triangles: triangles.clone(),
        farey_edges: farey_edges.clone(),
        vertices: Vec::new(),
        index: HashMap::new(),
        edges: Vec::new(),
    };
    let mut seen = BTreeSet::new();
    for t in &triangles {
        let [x, y, z] = t.pairs().map(|(u, v)| g.vertex(u, v, 1));
        for (a, b) in [(x, y), (y, z), (z, x)] {
            if seen.insert((a, b)) {
                g.edges.push((a, b, EdgeKind::Triangle));
            }
        }
    }
    for &(u, v) in &farey_edges {
        let chain: Vec<usize> = (1..n).map(|j| g.vertex(u, v, j)).collect();
        for w in chain.windows(2) {
            for (a, b) in [(w[0], w[1]), (w[1], w[0])] {
                if seen.insert((a, b)) {
                    g.edges.push((a, b, EdgeKind::Pair));
                }
            }
        }
    }
    Ok(g)
}

/// A slice of the Z-cover: vertices (v, height in sixths).
#[derive(Clone, Debug, Default)]
pub struct Cover {
    pub vertices: Vec<(usize, i64)>,
    pub index: HashMap<(usize, i64), usize>,
    pub edges: Vec<(usize, usize, EdgeKind)>,
}

/// Lift of G_N to heights in [-window, window], with the base vertex at height 0.
pub fn lift(g: &GNGraph, window: i64) -> Result<Cover> {
    let off = g.offsets()?;
    let shift = off[g.base_vertex()];
    let mut c = Cover::default();
    for (v, &o) in off.iter().enumerate() {
        let base = (o - shift).rem_euclid(6);
        let mut t = base - 6 * ((base + 6 * window) / 6);
        while t <= 6 * window {
            if t >= -6 * window {
                c.index.insert((v, t), c.vertices.len());
                c.vertices.push((v, t));
            }
            t += 6;
        }
    }
    for &(a, b, k) in &g.edges {
        for i in 0..c.vertices.len() {
            let (v, t) = c.vertices[i];
            if v != a {
                continue;
            }
            if let Some(&j) = c.index.get(&(b, t + k.sixths())) {
                c.edges.push((i, j, k));
            }
        }
    }
    Ok(c)
}

/// Two paths from (v,t) to (v,t+1): round the triangle and across the pair.
#[derive(Clone, Debug)]
pub struct Pentagon {
    pub triangle_path: [usize; 4],
    pub pair_path: [usize; 3],
}

impl Pentagon {
    pub fn gradings(&self, c: &Cover) -> (i64, i64) {
        let rise = |p: &[usize]| c.vertices[*p.last().unwrap()].1 - c.vertices[p[0]].1;
        (rise(&self.triangle_path), rise(&self.pair_path))
    }
}

pub fn pentagons(g: &GNGraph, c: &Cover) -> Result<Vec<Pentagon>> {
    if g.n != 3 {
        return Err(Error::DegreeOutOfRange(g.n));
    }
    let edge_set: BTreeSet<(usize, usize)> = c.edges.iter().map(|e| (e.0, e.1)).collect();
    let mut out = Vec::new();
    for t in &g.triangles {
        let ids = t.pairs().map(|(u, v)| g.id(u, v, 1).unwrap());
        for (k, &(u, v)) in t.pairs().iter().enumerate() {
            let across = g.id(u, v, 2).unwrap();
            let round = [ids[k], ids[(k + 1) % 3], ids[(k + 2) % 3], ids[k]];
            for &(x, h) in &c.vertices {
                if x != ids[k] {
                    continue;
                }
                let path: Option<Vec<usize>> =
                    round.iter().zip([0, 2, 4, 6]).map(|(&w, dt)| c.index.get(&(w, h + dt)).copied()).collect();
                let pair: Option<Vec<usize>> =
                    [ids[k], across, ids[k]].iter().zip([0, 3, 6]).map(|(&w, dt)| c.index.get(&(w, h + dt)).copied()).collect();
                let (Some(path), Some(pair)) = (path, pair) else { continue };
                let linked = path.windows(2).chain(pair.windows(2)).all(|w| edge_set.contains(&(w[0], w[1])));
                if linked {
                    out.push(Pentagon { triangle_path: [path[0], path[1], path[2], path[3]], pair_path: [pair[0], pair[1], pair[2]] });
                }
            }
        }
    }
    Ok(out)
}

/// Generators of the modular group as images of the twists along X_0 = S_0 and X_∞ = S_1.
pub const VERTEX_ZERO: usize = 0;
pub const VERTEX_INFINITY: usize = 1;

/// A braid word (letters on vertices 0 and 1) whose image in PSL(2,Z) carries ∞ to a.
pub fn braid_to(a: Fraction) -> Vec<(usize, i8)> {
    // Walk a back to ∞: translate into (0, 1], then apply the inverse of psi(0).
    let (mut p, mut q) = (a.p, a.q);
    let mut steps: Vec<(usize, i8)> = Vec::new();
    while q != 0 {
        let k = (p - 1).div_euclid(q);
        for _ in 0..k.abs() {
            steps.push((VERTEX_INFINITY, if k > 0 { 1 } else { -1 }));
        }
        p -= k * q;
        steps.push((VERTEX_ZERO, -1));
        q -= p;
    }
    steps.iter().map(|&(v, s)| (v, -s)).collect()
}

/// The image of a braid word in PSL(2,Z).
pub fn project(letters: &[(usize, i8)]) -> PSL2Elem {
    letters.iter().fold(PSL2Elem::identity(), |acc, &(v, s)| {
        let g = psi(if v == VERTEX_ZERO { Fraction::int(0) } else { Fraction::INFINITY });
        acc.mul(&if s > 0 { g } else { g.inverse() })
    })
}

/// The spherical-object model of χ(a): Phi(braid_to(a))(X_∞).
pub struct Chi<'g, 'd> {
    pub g: &'g Ginzburg<'d>,
}

impl<'g, 'd> Chi<'g, 'd> {
    pub fn new(g: &'g Ginzburg<'d>) -> Result<Self> {
        if g.d.n() != 2 {
            return Err(Error::MalformedInput("the Farey model is for A2".into()));
        }
        Ok(Chi { g })
    }

    fn word(&self, letters: &[(usize, i8)]) -> Braid {
        self.g.d.artin.from_letters(letters)
    }

    pub fn braid(&self, a: Fraction) -> Braid {
        self.word(&braid_to(a))
    }

    pub fn object(&self, a: Fraction) -> std::sync::Arc<Twisted> {
        self.g.object(&self.braid(a), self.g.d.simple(VERTEX_INFINITY, 0))
    }

    /// The twist along χ(a), as a braid.
    pub fn twist(&self, a: Fraction) -> Braid {
        self.g.d.artin.conjugate(&self.braid(a), &self.g.d.artin.generator(VERTEX_INFINITY, 1))
    }

    /// φ_χ(a)(χ(b)) ≅ χ(c) up to shift, tested after pulling back along Phi(β_c): the relative
    /// braid must fix X_∞ up to shift.
    pub fn twist_maps(&self, a: Fraction, b: Fraction, c: Fraction) -> bool {
        let artin = &self.g.d.artin;
        let rel = artin.mul(&artin.inverse(&self.braid(c)), &artin.mul(&self.twist(a), &self.braid(b)));
        let x_inf = cy::induced(self.g.d, self.g.d.simple(VERTEX_INFINITY, 0));
        self.same_up_to_shift(&x_inf, &self.g.object(&rel, self.g.d.simple(VERTEX_INFINITY, 0)))
    }

    /// x ≅ y[k] for some k.
    pub fn same_up_to_shift(&self, x: &Twisted, y: &Twisted) -> bool {
        let (cx, cy_) = (x.class(2), y.class(2));
        let neg: Vec<i64> = cy_.iter().map(|v| -v).collect();
        (-12..=12).any(|k: i64| {
            let matches = if k % 2 == 0 { cx == cy_ } else { cx == neg };
            matches && cy::is_iso(&self.g.alg, x, &y.shift(k))
        })
    }
}

/// Mediant-generated fraction pairs, deterministic for a seed.
pub fn sample_pairs(depth: usize, count: usize, seed: u64) -> Vec<(Fraction, Fraction)> {
    let (triangles, _) = enumerate_triangles(depth);
    let mut pool: Vec<Fraction> = triangles.iter().flat_map(|t| t.corners()).collect::<BTreeSet<_>>().into_iter().collect();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    pool.shuffle(&mut rng);
    (0..count).map(|_| (*pool.choose(&mut rng).unwrap(), *pool.choose(&mut rng).unwrap())).collect()
}

/// χ(psi_a(b)) against φ_χ(a)(χ(b)), plus the fixed-point and K-class consequences.
pub fn chi_check(g: &Ginzburg, samples: &[(Fraction, Fraction)]) -> Result<Report> {
    let chi = Chi::new(g)?;
    let d = g.d;
    let mut r = Report::new();
    let x1 = cy::twist(&g.alg, &Twisted::simple(VERTEX_ZERO), &cy::induced(d, d.simple(VERTEX_INFINITY, 0)), false);
    r.push("χ(1) is the twist of X_∞ along X_0", chi.same_up_to_shift(&chi.object(Fraction::int(1)), &x1), "");
    let mut psi_ok = true;
    let mut equi_ok = true;
    let mut fixed_ok = true;
    let mut class_ok = true;
    let mut witness = String::new();
    let points: BTreeSet<Fraction> = samples.iter().flat_map(|&(a, b)| [a, b]).collect();
    for &a in &points {
        psi_ok &= project(&braid_to(a)).mul(&project(&[(VERTEX_INFINITY, 1)])).mul(&project(&braid_to(a)).inverse()) == psi(a);
        let x = chi.object(a);
        let own = g.object(&g.d.artin.mul(&chi.twist(a), &chi.braid(a)), d.simple(VERTEX_INFINITY, 0));
        fixed_ok &= chi.same_up_to_shift(&own, &x);
        let c = x.class(2);
        class_ok &= (c[0] == a.q && c[1] == a.p) || (c[0] == -a.q && c[1] == -a.p);
    }
    for &(a, b) in samples {
        if !chi.twist_maps(a, b, mobius(&psi(a), b)) {
            equi_ok = false;
            witness = format!("a = {a}, b = {b}");
        }
    }
    r.push("the twist along χ(a) projects to psi(a)", psi_ok, "");
    r.push("χ(psi_a(b)) = φ_χ(a)(χ(b)) up to shift", equi_ok, format!("{} pairs {witness}", samples.len()));
    r.push("φ_χ(a) fixes χ(a) up to shift", fixed_ok, "");
    // For even N the Euler form is symmetric and twists act on K by reflections instead.
    if g.n_cy % 2 == 1 {
        r.push("χ(p/q) has class ±(q, p)", class_ok, "");
    }
    Ok(r)
}

/// Ball of radius `radius` around the base in the cover against the same ball of hearts in D(Γ_3 A2).
///
/// Edges are labelled by kind: a tilt is a pair edge iff both simples survive up to shift.
pub fn cross_validate(g: &Ginzburg, radius: usize) -> Result<Report> {
    if g.n_cy != 3 || g.d.n() != 2 {
        return Err(Error::MalformedInput("cross-validation is for A2 at N = 3".into()));
    }
    let gn = build_gn(3, radius + 3)?;
    let cover = lift(&gn, radius as i64 + 2)?;
    let root = cover.index[&(gn.base_vertex(), 0)];
    let cov_edges: Vec<(usize, usize, EdgeKind)> = cover.edges.clone();
    let ball = g.explore(&g.standard(), radius + 1)?;
    let kinds = heart_edge_kinds(g, &ball);
    let heart_edges: Vec<(usize, usize, EdgeKind)> =
        ball.edges.iter().zip(&kinds).map(|(e, &k)| (e.src, e.dst, k)).collect();
    let left = restrict(cover.vertices.len(), &cov_edges, root, radius);
    let right = restrict(ball.vertex_count(), &heart_edges, 0, radius);
    let mut r = Report::new();
    match forced_iso(&left, &right, root, 0) {
        Ok(n) => r.push("cover ball is isomorphic to the heart ball", true, format!("{n} vertices")),
        Err(w) => r.push("cover ball is isomorphic to the heart ball", false, w),
    }
    Ok(r)
}

fn heart_edge_kinds(g: &Ginzburg, ball: &GGraph) -> Vec<EdgeKind> {
    let class_set = |h: &GHeart| -> BTreeSet<Vec<i64>> {
        h.simples()
            .iter()
            .map(|s| {
                let c = g.object(&s.word, s.base).class(2);
                let neg: Vec<i64> = c.iter().map(|v| -v).collect();
                c.max(neg)
            })
            .collect()
    };
    ball.edges
        .iter()
        .map(|e| {
            if class_set(&ball.vertices[e.src]) == class_set(&ball.vertices[e.dst]) {
                EdgeKind::Pair
            } else {
                EdgeKind::Triangle
            }
        })
        .collect()
}

struct Ball {
    members: BTreeSet<usize>,
    edges: BTreeSet<(usize, usize, EdgeKind)>,
}

fn restrict(n: usize, edges: &[(usize, usize, EdgeKind)], root: usize, radius: usize) -> Ball {
    let mut adj = vec![Vec::new(); n];
    for &(a, b, _) in edges {
        adj[a].push(b);
        adj[b].push(a);
    }
    let mut dist = vec![usize::MAX; n];
    dist[root] = 0;
    let mut queue = VecDeque::from([root]);
    while let Some(v) = queue.pop_front() {
        for &w in &adj[v] {
            if dist[w] == usize::MAX {
                dist[w] = dist[v] + 1;
                queue.push_back(w);
            }
        }
    }
    let members: BTreeSet<usize> = (0..n).filter(|&v| dist[v] <= radius).collect();
    let edges = edges.iter().copied().filter(|e| members.contains(&e.0) && members.contains(&e.1)).collect();
    Ball { members, edges }
}

/// Every vertex has at most one edge per (direction, kind), so the root pairing forces the rest.
fn forced_iso(a: &Ball, b: &Ball, ra: usize, rb: usize) -> std::result::Result<usize, String> {
    let signature = |ball: &Ball| {
        let mut m: BTreeMap<(usize, bool, EdgeKind), Vec<usize>> = BTreeMap::new();
        for &(x, y, k) in &ball.edges {
            m.entry((x, true, k)).or_default().push(y);
            m.entry((y, false, k)).or_default().push(x);
        }
        m
    };
    let (sa, sb) = (signature(a), signature(b));
    let mut map: BTreeMap<usize, usize> = BTreeMap::from([(ra, rb)]);
    let mut used: BTreeSet<usize> = BTreeSet::from([rb]);
    let mut queue = VecDeque::from([ra]);
    while let Some(x) = queue.pop_front() {
        let y = map[&x];
        for out in [true, false] {
            for k in [EdgeKind::Triangle, EdgeKind::Pair] {
                let na = sa.get(&(x, out, k)).cloned().unwrap_or_default();
                let nb = sb.get(&(y, out, k)).cloned().unwrap_or_default();
                if na.len() != nb.len() || na.len() > 1 {
                    return Err(format!("degree mismatch at {x}: {na:?} vs {nb:?}"));
                }
                if let (Some(&u), Some(&w)) = (na.first(), nb.first()) {
                    match map.get(&u) {
                        Some(&m) if m != w => return Err(format!("inconsistent image of {u}")),
                        Some(_) => {}
                        None => {
                            if !used.insert(w) {
                                return Err(format!("{w} hit twice"));
                            }
                            map.insert(u, w);
                            queue.push_back(u);
                        }
                    }
                }
            }
        }
    }
    if map.len() != a.members.len() || used.len() != b.members.len() {
        return Err(format!("{} mapped of {} and {}", map.len(), a.members.len(), b.members.len()));
    }
    let image: BTreeSet<(usize, usize, EdgeKind)> = a.edges.iter().map(|&(x, y, k)| (map[&x], map[&y], k)).collect();
    if image != b.edges {
        return Err("edge sets differ".into());
    }
    Ok(map.len())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::derived::DerivedCat;
    use crate::quiver::Quiver;

    fn f(p: i64, q: i64) -> Fraction {
        Fraction::new(p, q).unwrap()
    }

    #[test]
    fn psi_examples() {
        assert_eq!(psi(f(0, 1)).m, [[1, 0], [1, 1]]);
        assert!(is_edge(Fraction::INFINITY, f(0, 1)));
        assert_eq!(mobius(&psi(f(0, 1)), Fraction::INFINITY), f(1, 1));
        for a in [f(0, 1), f(1, 1), Fraction::INFINITY, f(-3, 7), f(5, 2)] {
            let g = psi(a);
            assert_eq!(g.det(), 1);
            assert_eq!(g.trace(), 2);
            assert_eq!(mobius(&g, a), a);
        }
    }

    #[test]
    fn fractions_normalise() {
        assert_eq!(f(2, -4), f(-1, 2));
        assert_eq!(f(-3, 0), Fraction::INFINITY);
        assert!(Fraction::new(0, 0).is_err());
        let s = serde_json::to_string(&f(-2, 3)).unwrap();
        assert_eq!(s, "\"-2/3\"");
        assert_eq!(serde_json::from_str::<Fraction>(&s).unwrap(), f(-2, 3));
    }

    /// Brute force: triples of pairwise adjacent fractions with small entries.
    fn all_triangles(bound: i64) -> BTreeSet<BTreeSet<Fraction>> {
        let mut pts: BTreeSet<Fraction> = BTreeSet::from([Fraction::INFINITY]);
        for q in 1..=bound {
            for p in -bound..=bound {
                pts.insert(f(p, q));
            }
        }
        let pts: Vec<Fraction> = pts.into_iter().collect();
        let mut out = BTreeSet::new();
        for (i, &a) in pts.iter().enumerate() {
            for (j, &b) in pts.iter().enumerate().skip(i + 1) {
                if !is_edge(a, b) {
                    continue;
                }
                for &c in &pts[j + 1..] {
                    if is_edge(a, c) && is_edge(b, c) {
                        out.insert(BTreeSet::from([a, b, c]));
                    }
                }
            }
        }
        out
    }

    #[test]
    fn triangles_are_distinct_farey_triangles() {
        let brute = all_triangles(8);
        for depth in 0..4 {
            let (tris, edges) = enumerate_triangles(depth);
            assert_eq!(tris.len(), 2 * ((1 << (depth + 1)) - 1));
            let sets: BTreeSet<BTreeSet<Fraction>> = tris.iter().map(|t| t.corners().into_iter().collect()).collect();
            assert_eq!(sets.len(), tris.len());
            assert!(sets.is_subset(&brute));
            assert!(edges.iter().all(|&(u, v)| is_edge(u, v)));
            // The dual graph is a tree, so T triangles share T - 1 sides.
            assert_eq!(edges.len(), 2 * tris.len() + 1);
        }
        let (tris, _) = enumerate_triangles(0);
        assert_eq!(tris[0], Triangle(Fraction::INFINITY, f(1, 1), f(0, 1)));
    }

    #[test]
    fn clockwise_orientation() {
        // Clockwise on the boundary circle means cyclically decreasing along the real line.
        let key = |a: Fraction| if a.q == 0 { f64::INFINITY } else { a.p as f64 / a.q as f64 };
        for t in enumerate_triangles(3).0 {
            let [a, b, c] = t.corners().map(key);
            let descents = [(a, b), (b, c), (c, a)].iter().filter(|(x, y)| x > y).count();
            assert_eq!(descents, 2, "{t:?}");
        }
    }

    #[test]
    fn chain_shapes() {
        for n in [2, 3, 4, 5] {
            let g = build_gn(n, 3).unwrap();
            let r = g.check();
            assert!(r.all_pass(), "{r}");
            let pair_edges = g.edges.iter().filter(|e| e.2 == EdgeKind::Pair).count();
            assert_eq!(pair_edges, 2 * (n as usize - 2) * g.farey_edges.len());
            assert_eq!(g.edges.len() - pair_edges, 3 * g.triangles.len());
        }
    }

    #[test]
    fn pentagons_rise_by_one() {
        let g = build_gn(3, 3).unwrap();
        let c = lift(&g, 2).unwrap();
        let ps = pentagons(&g, &c).unwrap();
        assert!(!ps.is_empty());
        assert!(ps.iter().all(|p| p.gradings(&c) == (6, 6)));
        assert!(pentagons(&build_gn(4, 1).unwrap(), &c).is_err());
    }

    #[test]
    fn braid_words_reach_their_fractions() {
        for t in &enumerate_triangles(4).0 {
            for a in t.corners() {
                assert_eq!(mobius(&project(&braid_to(a)), Fraction::INFINITY), a);
            }
        }
    }

    #[test]
    fn chi_equivariance() {
        let d = DerivedCat::new(&Quiver::a2()).unwrap();
        let g = Ginzburg::new(&d, 3).unwrap();
        let r = chi_check(&g, &sample_pairs(2, 20, 1)).unwrap();
        assert!(r.all_pass(), "{r}");
        let chi = Chi::new(&g).unwrap();
        let (a, b) = (f(0, 1), Fraction::INFINITY);
        assert!(chi.twist_maps(a, b, f(1, 1)));
        assert!(!chi.twist_maps(a, b, f(-1, 1)));
    }

    #[test]
    fn cover_ball_matches_hearts() {
        let d = DerivedCat::new(&Quiver::a2()).unwrap();
        let g = Ginzburg::new(&d, 3).unwrap();
        let r = cross_validate(&g, 3).unwrap();
        assert!(r.all_pass(), "{r}");
    }
}
