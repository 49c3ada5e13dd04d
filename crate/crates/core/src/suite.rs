//! The full invariant suite for one quiver and one N, as a single report.

use crate::cluster::ClusterCat;
use crate::derived::{DerivedCat, Direction};
use crate::error::Result;
use crate::exchange::build_interval_graph;
use crate::farey;
use crate::ginzburg::Ginzburg;
use crate::rep;
use crate::report::Report;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

#[derive(Clone, Debug)]
pub struct SuiteConfig {
    pub n: i64,
    /// Radius of the explored ball of Calabi-Yau hearts.
    pub depth: usize,
    pub seed: u64,
}

pub fn verify(d: &DerivedCat, cfg: &SuiteConfig) -> Result<Report> {
    let mut r = Report::new();
    r.extend(modules(d)?);
    r.extend(intervals(d, cfg.n)?);
    r.extend(braids(d, cfg.seed));
    if cfg.n >= 3 {
        r.extend(calabi_yau(d, cfg)?);
    }
    if d.quiver.vertices == 2 && cfg.n >= 3 {
        r.extend(farey_model(d, cfg)?);
    }
    Ok(r)
}

fn modules(d: &DerivedCat) -> Result<Report> {
    let q = &d.quiver;
    let mut r = Report::new();
    let (mut euler, mut ar, mut bricks) = (true, true, true);
    let mut witness = String::new();
    for (a, m) in d.reps.iter().enumerate() {
        bricks &= rep::end_dim(q, m)? == 1 && rep::ext1_dim(q, m, m)? == 0;
        let (t, shift) = d.roots.tau(d.root(a), 0)?;
        for (b, n) in d.reps.iter().enumerate() {
            let h = rep::hom_dim(q, m, n)? as i64;
            let e = rep::ext1_dim(q, m, n)? as i64;
            if h - e != q.euler_form(d.root(a), d.root(b))? {
                euler = false;
                witness = format!("{:?}, {:?}", d.root(a), d.root(b));
            }
            if shift == 0 {
                let tm = &d.reps[d.root_index(&t)?];
                ar &= e as usize == rep::hom_dim(q, n, tm)?;
            }
        }
    }
    r.push("Euler form is dim Hom - dim Ext", euler, witness);
    r.push("Auslander-Reiten duality", ar, format!("{} indecomposables", d.reps.len()));
    r.push("indecomposables are rigid bricks", bricks, "");
    Ok(r)
}

fn intervals(d: &DerivedCat, n: i64) -> Result<Report> {
    let mut r = Report::new();
    let g = build_interval_graph(d, n)?;
    r.push("interval graph is acyclic", g.is_acyclic(), format!("{} hearts", g.vertex_count()));
    r.extend(g.check_source_sink(d));
    r.extend(g.check_regularity());
    r.extend(g.verify_hearts(d));

    let (mut involutive, mut classes) = (true, true);
    for h in g.vertices.values() {
        for i in 0..d.n() {
            for dir in [Direction::Forward, Direction::Backward] {
                let t = d.tilt(h, i, dir)?;
                involutive &= d.tilt(&t, i, dir.opposite())?.key() == h.key();
                let si = d.class(h.simples[i]);
                classes &= d.class(t.simples[i]) == si.iter().map(|v| -v).collect::<Vec<_>>();
                for j in (0..d.n()).filter(|&j| j != i) {
                    let e = match dir {
                        Direction::Forward => d.hom_k(h.simples[j], h.simples[i], 1),
                        Direction::Backward => d.hom_k(h.simples[i], h.simples[j], 1),
                    } as i64;
                    let expected: Vec<i64> = d.class(h.simples[j]).iter().zip(&si).map(|(a, b)| a + e * b).collect();
                    classes &= d.class(t.simples[j]) == expected;
                }
            }
        }
    }
    r.push("simple tilts are involutive", involutive, "");
    r.push("K-classes transform by the tilt law", classes, "");

    if n >= 3 {
        let c = ClusterCat::new(d, n - 1)?;
        let cg = c.build_graph()?;
        r.push(
            "interval graph and mutation closure have equal size",
            cg.vertices.len() == g.vertex_count(),
            format!("{} vs {}", g.vertex_count(), cg.vertices.len()),
        );
        let completed = g.cyclic_completion(d)?;
        r.extend(crate::cluster::verify_j_iso(d, &completed)?);
        let (mut laws, mut qcy, mut lines) = (true, true, true);
        let (mut witness, mut determined) = (String::new(), 0);
        for h in g.vertices.values() {
            let cq = c.coloured_quiver_of_heart(h)?;
            laws &= cq.check_laws().all_pass();
            qcy &= cq.augmented() == d.ext_quiver(h).cy_double(n)?;
            // Lines without liftable hearts can leave a pair of slots open; only determined quivers are compared.
            if let Ok(from_lines) = c.coloured_quiver_from_lines(h) {
                determined += 1;
                if from_lines != cq {
                    lines = false;
                    witness = d.render_heart(h);
                }
            }
        }
        r.push("coloured quivers are monochromatic and skew-symmetric", laws, "");
        r.push("augmented coloured quiver is the CY double of the Ext-quiver", qcy, "");
        r.push(
            "coloured quivers read from lines agree",
            lines,
            format!("{determined} of {} determined {witness}", g.vertex_count()),
        );
    }
    Ok(r)
}

fn braids(d: &DerivedCat, seed: u64) -> Report {
    let artin = &d.artin;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut word = |len: usize| -> Vec<(usize, i8)> {
        (0..len).map(|_| (rng.gen_range(0..d.n()), if rng.gen_bool(0.5) { 1 } else { -1 })).collect()
    };
    let (mut inverse, mut assoc, mut roundtrip) = (true, true, true);
    for _ in 0..32 {
        let (x, y, z) = (artin.from_letters(&word(8)), artin.from_letters(&word(8)), artin.from_letters(&word(8)));
        inverse &= artin.mul(&x, &artin.inverse(&x)).is_identity();
        assoc &= artin.mul(&artin.mul(&x, &y), &z) == artin.mul(&x, &artin.mul(&y, &z));
        roundtrip &= artin.from_letters(&artin.letters(&x)) == x;
    }
    let mut r = Report::new();
    r.push("braid normal forms: inverses", inverse, "");
    r.push("braid normal forms: associativity", assoc, "");
    r.push("braid normal forms: letters round-trip", roundtrip, "");
    r
}

fn calabi_yau(d: &DerivedCat, cfg: &SuiteConfig) -> Result<Report> {
    let g = Ginzburg::new(d, cfg.n)?;
    let mut r = Report::new();
    let interval = build_interval_graph(d, cfg.n)?;
    let (mut hearts, mut roots) = (true, true);
    let mut witness = String::new();
    for h in interval.vertices.values() {
        let gh = g.induce_heart(h)?;
        hearts &= g.check_heart(&gh).all_pass();
        let rc = g.root_check(&gh)?;
        if !rc.all_pass() {
            roots = false;
            witness = rc.failures()[0].name.clone();
        }
    }
    r.push("induced hearts are hearts", hearts, format!("{} hearts", interval.vertex_count()));
    r.push("(N-1)-fold tilts are inverse twists", roots, witness);
    r.extend(g.quotient_check(cfg.depth)?);
    r.extend(g.shadow_check(&g.standard())?);
    if cfg.n == 3 {
        for i in 0..d.n() {
            let mut h = g.half_twist_check(&g.standard(), i)?;
            for c in &mut h.checks {
                c.name = format!("half-twist at slot {i}: {}", c.name);
            }
            r.extend(h);
        }
    }
    Ok(r)
}

fn farey_model(d: &DerivedCat, cfg: &SuiteConfig) -> Result<Report> {
    let g = Ginzburg::new(d, cfg.n)?;
    let mut r = Report::new();
    let gn = farey::build_gn(cfg.n, cfg.depth.max(2))?;
    r.extend(gn.check());
    r.push("grading is consistent around every cycle", gn.offsets().is_ok(), "");
    r.extend(farey::chi_check(&g, &farey::sample_pairs(3, 20, cfg.seed))?);
    if cfg.n == 3 {
        let cover = farey::lift(&gn, 3)?;
        let pentagons = farey::pentagons(&gn, &cover)?;
        let ok = !pentagons.is_empty() && pentagons.iter().all(|p| p.gradings(&cover) == (6, 6));
        r.push("pentagons rise by one on both sides", ok, format!("{} pentagons", pentagons.len()));
        r.extend(farey::cross_validate(&g, 2)?);
    }
    Ok(r)
}
