//! Exchange graphs of hearts in the interval [H_Q[1], H_Q[N-1]].

use crate::derived::{DObject, DerivedCat, Direction, Heart, HeartKey};
use crate::error::{Error, Result};
use crate::report::Report;
use serde::{Deserialize, Serialize};
use std::collections::{BTreeMap, BTreeSet, VecDeque};

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct Edge {
    pub src: HeartKey,
    pub dst: HeartKey,
    /// The tilted simple, as it sits in the source heart.
    pub label: DObject,
    pub slot: usize,
    /// Added by cyclic completion.
    pub closing: bool,
}

#[derive(Clone, Debug)]
pub struct ExchangeGraph {
    pub n_cy: i64,
    pub base: Heart,
    pub vertices: BTreeMap<HeartKey, Heart>,
    pub edges: Vec<Edge>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LineSegment {
    pub hearts: Vec<HeartKey>,
    /// The direction simple in the first heart.
    pub direction: DObject,
}

pub fn in_interval(h: &Heart, n: i64) -> bool {
    h.simples.iter().all(|s| (1..=n - 1).contains(&s.shift))
}

pub fn tiltable_in_interval(h: &Heart, i: usize, dir: Direction, n: i64) -> bool {
    match dir {
        Direction::Forward => h.simples[i].shift != n - 1,
        Direction::Backward => h.simples[i].shift != 1,
    }
}

fn thread_count() -> usize {
    std::env::var("TILTLAB_THREADS")
        .ok()
        .and_then(|v| v.parse().ok())
        .unwrap_or_else(|| std::thread::available_parallelism().map(|n| n.get()).unwrap_or(1))
        .max(1)
}

type Expansion = Vec<(Direction, usize, Heart)>;

fn expand(d: &DerivedCat, h: &Heart, n: i64) -> Result<Expansion> {
    let mut out = Vec::new();
    for i in 0..h.n() {
        for dir in [Direction::Forward, Direction::Backward] {
            if !tiltable_in_interval(h, i, dir, n) {
                continue;
            }
            let t = d.tilt(h, i, dir)?;
            if !in_interval(&t, n) {
                return Err(Error::ConvexityViolation(format!(
                    "tilt of {} at slot {i} leaves the interval",
                    d.render_heart(h)
                )));
            }
            out.push((dir, i, t));
        }
    }
    Ok(out)
}

/// Closure of H_Q[1] under in-interval simple tilts.
pub fn build_interval_graph(d: &DerivedCat, n: i64) -> Result<ExchangeGraph> {
    build_interval_graph_threads(d, n, thread_count())
}

pub fn build_interval_graph_threads(d: &DerivedCat, n: i64, threads: usize) -> Result<ExchangeGraph> {
    if n < 2 {
        return Err(Error::MalformedInput(format!("N must be at least 2, got {n}")));
    }
    let base = d.initial_heart().shifted(1);
    let mut vertices = BTreeMap::new();
    let mut edges = BTreeSet::new();
    vertices.insert(base.key(), base.clone());
    let mut frontier = vec![base.clone()];
    while !frontier.is_empty() {
        let results: Vec<Result<Expansion>> = if threads > 1 && frontier.len() > 1 {
            let chunk = frontier.len().div_ceil(threads);
            std::thread::scope(|s| {
                let handles: Vec<_> = frontier
                    .chunks(chunk)
                    .map(|c| s.spawn(move || c.iter().map(|h| expand(d, h, n)).collect::<Vec<_>>()))
                    .collect();
                handles.into_iter().flat_map(|h| h.join().expect("worker panicked")).collect()
            })
        } else {
            frontier.iter().map(|h| expand(d, h, n)).collect()
        };
        let mut next = Vec::new();
        for (h, res) in frontier.iter().zip(results) {
            for (dir, i, t) in res? {
                if !vertices.contains_key(&t.key()) {
                    vertices.insert(t.key(), t.clone());
                    next.push(t.clone());
                }
                let (src, dst, label) = match dir {
                    Direction::Forward => (h.key(), t.key(), h.simples[i]),
                    Direction::Backward => (t.key(), h.key(), t.simples[i]),
                };
                let slot = vertices[&src].simples.iter().position(|&s| s == label).expect("label in source");
                edges.insert(Edge { src, dst, label, slot, closing: false });
            }
        }
        next.sort_by_key(|h| h.key());
        frontier = next;
    }
    Ok(ExchangeGraph { n_cy: n, base, vertices, edges: edges.into_iter().collect() })
}

impl ExchangeGraph {
    pub fn vertex_count(&self) -> usize {
        self.vertices.len()
    }

    pub fn heart(&self, k: &HeartKey) -> &Heart {
        &self.vertices[k]
    }

    pub fn successors(&self, k: &HeartKey) -> Vec<&Edge> {
        self.edges.iter().filter(|e| &e.src == k).collect()
    }

    pub fn sources(&self) -> Vec<HeartKey> {
        let with_in: BTreeSet<&HeartKey> = self.edges.iter().filter(|e| !e.closing).map(|e| &e.dst).collect();
        self.vertices.keys().filter(|k| !with_in.contains(k)).cloned().collect()
    }

    pub fn sinks(&self) -> Vec<HeartKey> {
        let with_out: BTreeSet<&HeartKey> = self.edges.iter().filter(|e| !e.closing).map(|e| &e.src).collect();
        self.vertices.keys().filter(|k| !with_out.contains(k)).cloned().collect()
    }

    /// Largest undirected distance from the source of the interval.
    pub fn radius(&self) -> usize {
        let mut adj: BTreeMap<&HeartKey, Vec<&HeartKey>> = BTreeMap::new();
        for e in &self.edges {
            adj.entry(&e.src).or_default().push(&e.dst);
            adj.entry(&e.dst).or_default().push(&e.src);
        }
        let start = &self.sources()[0];
        let mut dist = BTreeMap::from([(start, 0usize)]);
        let mut queue = VecDeque::from([start]);
        while let Some(v) = queue.pop_front() {
            let dv = dist[v];
            for &w in adj.get(v).into_iter().flatten() {
                if !dist.contains_key(w) {
                    dist.insert(w, dv + 1);
                    queue.push_back(w);
                }
            }
        }
        dist.values().copied().max().unwrap_or(0)
    }

    /// Whether the tilting edges (closing edges ignored) form a DAG.
    pub fn is_acyclic(&self) -> bool {
        let mut indeg: BTreeMap<&HeartKey, usize> = self.vertices.keys().map(|k| (k, 0)).collect();
        let live: Vec<&Edge> = self.edges.iter().filter(|e| !e.closing).collect();
        for e in &live {
            *indeg.get_mut(&e.dst).unwrap() += 1;
        }
        let mut queue: VecDeque<&HeartKey> = indeg.iter().filter(|(_, &v)| v == 0).map(|(k, _)| *k).collect();
        let mut seen = 0;
        while let Some(k) = queue.pop_front() {
            seen += 1;
            for e in live.iter().filter(|e| &e.src == k) {
                let v = indeg.get_mut(&e.dst).unwrap();
                *v -= 1;
                if *v == 0 {
                    queue.push_back(&e.dst);
                }
            }
        }
        seen == self.vertices.len()
    }

    /// The simple of the target heart that the edge's label turns into.
    pub fn arriving(&self, e: &Edge) -> DObject {
        if e.closing {
            e.label.shifted(2 - self.n_cy)
        } else {
            e.label.shifted(1)
        }
    }

    /// Maximal runs of forward tilts along one line.
    pub fn maximal_segments(&self) -> Result<Vec<LineSegment>> {
        let mut segs = Vec::new();
        for (k, h) in &self.vertices {
            for (i, &s) in h.simples.iter().enumerate() {
                if tiltable_in_interval(h, i, Direction::Backward, self.n_cy) {
                    continue;
                }
                let mut hearts = vec![k.clone()];
                let (mut cur, mut lab) = (k.clone(), s);
                while let Some(e) = self.edges.iter().find(|e| !e.closing && e.src == cur && e.label == lab) {
                    cur = e.dst.clone();
                    lab = lab.shifted(1);
                    hearts.push(cur.clone());
                }
                if hearts.len() as i64 != self.n_cy - 1 {
                    return Err(Error::ConvexityViolation(format!(
                        "segment along {} has {} hearts, expected {}",
                        s.root,
                        hearts.len(),
                        self.n_cy - 1
                    )));
                }
                segs.push(LineSegment { hearts, direction: s });
            }
        }
        Ok(segs)
    }

    /// Adds, for each maximal segment, the closing edge from its top back to its bottom.
    pub fn cyclic_completion(&self, d: &DerivedCat) -> Result<ExchangeGraph> {
        let mut g = self.clone();
        for seg in self.maximal_segments()? {
            let top = seg.hearts.last().unwrap();
            let h = &self.vertices[top];
            let label = seg.direction.shifted(self.n_cy - 2);
            let slot = h.simples.iter().position(|&s| s == label).expect("direction simple in top heart");
            let back = d.tilt_n(h, slot, Direction::Backward, (self.n_cy - 2) as usize)?;
            if &back.key() != seg.hearts.first().unwrap() {
                return Err(Error::ConvexityViolation("closing edge does not return to segment start".into()));
            }
            g.edges.push(Edge { src: top.clone(), dst: back.key(), label, slot, closing: true });
        }
        g.edges.sort();
        Ok(g)
    }

    pub fn check_source_sink(&self, d: &DerivedCat) -> Report {
        let mut r = Report::new();
        let src = self.sources();
        let snk = self.sinks();
        let want_src = self.base.key();
        let want_snk = self.base.shifted(self.n_cy - 2).key();
        let show = |ks: &[HeartKey]| {
            ks.iter().map(|k| d.render_heart(&self.vertices[k])).collect::<Vec<_>>().join(" ")
        };
        r.push("unique source is H_Q[1]", src == vec![want_src], show(&src));
        r.push("unique sink is H_Q[N-1]", snk == vec![want_snk], show(&snk));
        r.push("no oriented cycles", self.is_acyclic(), format!("{} vertices", self.vertex_count()));
        r
    }

    /// Per simple, at most one outgoing edge tilting it and one incoming edge producing it;
    /// exactly one of each after completion.
    pub fn check_regularity(&self) -> Report {
        let completed = self.edges.iter().any(|e| e.closing);
        let mut ok = true;
        let mut witness = String::new();
        for (k, h) in &self.vertices {
            for &s in &h.simples {
                let inc = self.edges.iter().filter(|e| &e.dst == k && self.arriving(e) == s).count();
                let out = self.edges.iter().filter(|e| &e.src == k && e.label == s).count();
                let good = if completed { inc == 1 && out == 1 } else { inc <= 1 && out <= 1 };
                if !good {
                    ok = false;
                    witness = format!("in {inc}, out {out}");
                }
            }
        }
        let mut r = Report::new();
        r.push("regular slot degrees", ok, witness);
        r
    }

    /// Full heart checks on every vertex.
    pub fn verify_hearts(&self, d: &DerivedCat) -> Report {
        let mut r = Report::new();
        for h in self.vertices.values() {
            for c in d.verify_heart(h).checks {
                if !c.pass {
                    r.checks.push(c);
                }
            }
        }
        r.push("all hearts valid", r.checks.is_empty(), format!("{} hearts", self.vertex_count()));
        r
    }

    pub fn to_export(&self, d: &DerivedCat, quiver_name: &str) -> GraphExport {
        let id = |k: &HeartKey| key_string(d, k);
        GraphExport {
            vertices: self
                .vertices
                .iter()
                .map(|(k, h)| ExportVertex { key: id(k), simples: h.simples.iter().map(|s| d.name(*s)).collect() })
                .collect(),
            edges: self
                .edges
                .iter()
                .map(|e| ExportEdge { src: id(&e.src), dst: id(&e.dst), label: d.name(e.label), closing: e.closing })
                .collect(),
            meta: ExportMeta { quiver: quiver_name.to_string(), n: self.n_cy },
        }
    }

    pub fn to_json(&self, d: &DerivedCat, quiver_name: &str) -> String {
        self.to_export(d, quiver_name).to_json()
    }

    pub fn to_dot(&self, d: &DerivedCat, quiver_name: &str) -> String {
        self.to_export(d, quiver_name).to_dot()
    }
}

/// Stable identifier of a heart: sorted simples as "root@shift".
pub fn key_string(d: &DerivedCat, k: &HeartKey) -> String {
    k.iter()
        .map(|s| {
            let r = d.root(s.root).iter().map(|v| v.to_string()).collect::<Vec<_>>().join(",");
            format!("({r})@{}", s.shift)
        })
        .collect::<Vec<_>>()
        .join(";")
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ExportVertex {
    pub key: String,
    pub simples: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ExportEdge {
    pub src: String,
    pub dst: String,
    pub label: String,
    #[serde(default, skip_serializing_if = "std::ops::Not::not")]
    pub closing: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ExportMeta {
    pub quiver: String,
    #[serde(rename = "N")]
    pub n: i64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GraphExport {
    pub vertices: Vec<ExportVertex>,
    pub edges: Vec<ExportEdge>,
    pub meta: ExportMeta,
}

impl GraphExport {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("serializable")
    }

    pub fn parse(s: &str) -> Result<Self> {
        serde_json::from_str(s).map_err(|e| Error::MalformedInput(e.to_string()))
    }

    pub fn to_dot(&self) -> String {
        let idx: BTreeMap<&str, usize> = self.vertices.iter().enumerate().map(|(i, v)| (v.key.as_str(), i)).collect();
        let mut s = String::from("digraph G {\n");
        for (i, v) in self.vertices.iter().enumerate() {
            s += &format!("  v{i} [label=\"{{{}}}\"];\n", v.simples.join(","));
        }
        for e in &self.edges {
            let style = if e.closing { ", style=dotted" } else { "" };
            s += &format!("  v{} -> v{} [label=\"{}\"{style}];\n", idx[e.src.as_str()], idx[e.dst.as_str()], e.label);
        }
        s += "}\n";
        s
    }
}
