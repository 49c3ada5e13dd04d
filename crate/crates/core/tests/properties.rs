//! Property suites over randomly chosen modules, hearts, braids and Farey data.

use proptest::prelude::*;
use std::sync::OnceLock;
use tiltlab::cluster::ClusterCat;
use tiltlab::derived::{DerivedCat, Direction, Heart};
use tiltlab::exchange::{build_interval_graph, tiltable_in_interval};
use tiltlab::farey::{self, Fraction, PSL2Elem};
use tiltlab::ginzburg::Ginzburg;
use tiltlab::linalg::{q, Matrix};
use tiltlab::rep::{self, RepMap};
use tiltlab::Quiver;

fn quivers() -> &'static [(Quiver, DerivedCat)] {
    static CATS: OnceLock<Vec<(Quiver, DerivedCat)>> = OnceLock::new();
    CATS.get_or_init(|| {
        [
            Quiver::a2(),
            Quiver::a3(),
            Quiver::new(3, vec![(0, 1), (2, 1)]).unwrap(),
            Quiver::new(4, vec![(1, 0), (2, 0), (3, 0)]).unwrap(),
        ]
        .into_iter()
        .map(|q| {
            let d = DerivedCat::new(&q).unwrap();
            (q, d)
        })
        .collect()
    })
}

/// A random walk of in-window tilts from H_Q[1].
fn walk(d: &DerivedCat, n: i64, steps: &[(usize, bool)]) -> Heart {
    let mut h = d.initial_heart().shifted(1);
    for &(i, fwd) in steps {
        let i = i % d.n();
        let dir = if fwd { Direction::Forward } else { Direction::Backward };
        if tiltable_in_interval(&h, i, dir, n) {
            h = d.tilt(&h, i, dir).unwrap();
        }
    }
    h
}

fn steps() -> impl Strategy<Value = Vec<(usize, bool)>> {
    prop::collection::vec((0usize..4, any::<bool>()), 0..12)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn euler_form_is_hom_minus_ext(k in 0usize..4, a in 0usize..12, b in 0usize..12) {
        let (qv, d) = &quivers()[k];
        let (a, b) = (a % d.root_count(), b % d.root_count());
        let (m, n) = (&d.reps[a], &d.reps[b]);
        let lhs = rep::hom_dim(qv, m, n).unwrap() as i64 - rep::ext1_dim(qv, m, n).unwrap() as i64;
        prop_assert_eq!(lhs, qv.euler_form(d.root(a), d.root(b)).unwrap());
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn universal_extension_kills_ext(k in 0usize..4, a in 0usize..12, b in 0usize..12) {
        let (qv, d) = &quivers()[k];
        let (x, s) = (&d.reps[a % d.root_count()], &d.reps[b % d.root_count()]);
        let e = rep::ext1_dim(qv, x, s).unwrap();
        prop_assume!(e > 0);
        let t = rep::universal_extension(qv, x, s).unwrap();
        t.check(qv).unwrap();
        prop_assert_eq!(rep::ext1_dim(qv, &t, s).unwrap(), 0);
        for i in 0..qv.vertices {
            prop_assert_eq!(t.dims[i], x.dims[i] + e * s.dims[i]);
        }
    }

    #[test]
    fn kernel_and_cokernel_balance(k in 0usize..4, a in 0usize..12, b in 0usize..12, coeffs in prop::collection::vec(-3i64..=3, 4)) {
        let (qv, d) = &quivers()[k];
        let (m, n) = (&d.reps[a % d.root_count()], &d.reps[b % d.root_count()]);
        let basis = rep::hom_space(qv, m, n).unwrap();
        let mut f: RepMap = (0..qv.vertices).map(|i| Matrix::zeros(n.dims[i], m.dims[i])).collect();
        for (g, c) in basis.iter().zip(&coeffs) {
            for i in 0..qv.vertices {
                f[i] = f[i].add(&g[i].scale(&q(*c)));
            }
        }
        prop_assert!(rep::Rep::is_morphism(qv, m, n, &f));
        let kc = rep::kernel_cokernel(qv, m, n, &f);
        kc.kernel.check(qv).unwrap();
        kc.cokernel.check(qv).unwrap();
        prop_assert!(rep::Rep::is_morphism(qv, &kc.kernel, m, &kc.inclusion));
        prop_assert!(rep::Rep::is_morphism(qv, n, &kc.cokernel, &kc.projection));
        for i in 0..qv.vertices {
            prop_assert_eq!(kc.kernel.dims[i] as i64 - kc.cokernel.dims[i] as i64, m.dims[i] as i64 - n.dims[i] as i64);
            prop_assert!(f[i].mul(&kc.inclusion[i]).is_zero());
            prop_assert!(kc.projection[i].mul(&f[i]).is_zero());
        }
    }

    #[test]
    fn forward_tilt_class_law(k in 0usize..4, n in 3i64..5, s in steps(), i in 0usize..4) {
        let d = &quivers()[k].1;
        let h = walk(d, n, &s);
        let i = i % d.n();
        let t = d.tilt(&h, i, Direction::Forward).unwrap();
        let si = d.class(h.simples[i]);
        prop_assert_eq!(d.class(t.simples[i]), si.iter().map(|v| -v).collect::<Vec<_>>());
        for j in (0..d.n()).filter(|&j| j != i) {
            let e = d.hom_k(h.simples[j], h.simples[i], 1) as i64;
            let expected: Vec<i64> = d.class(h.simples[j]).iter().zip(&si).map(|(a, b)| a + e * b).collect();
            prop_assert_eq!(d.class(t.simples[j]), expected);
        }
    }

    #[test]
    fn projective_mutation_and_irreducibles(k in 0usize..4, n in 3i64..5, s in steps(), i in 0usize..4) {
        let d = &quivers()[k].1;
        let h = walk(d, n, &s);
        let irr = d.irr_matrix(&h.projectives);
        for a in 0..d.n() {
            for b in 0..d.n() {
                if a != b {
                    prop_assert_eq!(irr[a][b], d.hom_k(h.simples[b], h.simples[a], 1));
                }
            }
        }
        let i = i % d.n();
        let t = d.tilt(&h, i, Direction::Forward).unwrap();
        let mut expected: Vec<i64> = d.class(h.projectives[i]).iter().map(|v| -v).collect();
        for j in (0..d.n()).filter(|&j| j != i) {
            for (c, v) in expected.iter_mut().zip(d.class(h.projectives[j])) {
                *c += irr[i][j] as i64 * v;
            }
        }
        prop_assert_eq!(d.class(t.projectives[i]), expected);
    }

    #[test]
    fn tilts_are_involutive_and_shift_equivariant(k in 0usize..4, n in 3i64..5, s in steps(), i in 0usize..4, shift in -3i64..=3) {
        let d = &quivers()[k].1;
        let h = walk(d, n, &s);
        let i = i % d.n();
        for dir in [Direction::Forward, Direction::Backward] {
            let t = d.tilt(&h, i, dir).unwrap();
            prop_assert_eq!(d.tilt(&t, i, dir.opposite()).unwrap().key(), h.key());
            let shifted = d.tilt(&h.shifted(shift), i, dir).unwrap();
            prop_assert_eq!(shifted.key(), t.shifted(shift).key());
        }
    }

    #[test]
    fn hearts_keep_their_invariants(k in 0usize..4, n in 3i64..6, s in steps()) {
        let d = &quivers()[k].1;
        let h = walk(d, n, &s);
        let r = d.verify_heart(&h);
        prop_assert!(r.all_pass(), "{}", r);
    }

    #[test]
    fn coloured_quivers_obey_their_laws(k in 0usize..4, n in 3i64..5, s in steps()) {
        let d = &quivers()[k].1;
        let h = walk(d, n, &s);
        for m in [n - 1, n] {
            let c = ClusterCat::new(d, m).unwrap();
            let cq = c.coloured_quiver_of_heart(&h).unwrap();
            prop_assert!(cq.check_laws().all_pass(), "{}", cq.check_laws());
            prop_assert_eq!(cq.augmented(), d.ext_quiver(&h).cy_double(m + 1).unwrap());
            // Lines can leave a pair of slots open for D4; type A is always determined.
            match c.coloured_quiver_from_lines(&h) {
                Ok(from_lines) => prop_assert_eq!(from_lines, cq),
                Err(e) => prop_assert!(k == 3, "{}", e),
            }
        }
    }

    #[test]
    fn cluster_homs_ignore_representatives(k in 0usize..4, m in 1i64..4, a in 0usize..40, b in 0usize..40) {
        let d = &quivers()[k].1;
        let c = ClusterCat::new(d, m).unwrap();
        let objs = c.domain_objects();
        let (x, y) = (objs[a % objs.len()], objs[b % objs.len()]);
        for t in 0..=1 {
            prop_assert_eq!(c.hom_cluster(x, y, t), c.hom_cluster(c.f(x), y, t));
            prop_assert_eq!(c.hom_cluster(x, y, t), c.hom_cluster(x, c.f_inv(y), t));
        }
    }
}

#[test]
fn auslander_reiten_duality() {
    for (qv, d) in quivers() {
        for a in 0..d.root_count() {
            let nroot = d.root(a);
            let (t, shift) = d.roots.tau(nroot, 0).unwrap();
            if shift != 0 {
                continue;
            }
            let tau_n = &d.reps[d.root_index(&t).unwrap()];
            for b in 0..d.root_count() {
                let m = &d.reps[b];
                assert_eq!(rep::ext1_dim(qv, &d.reps[a], m).unwrap(), rep::hom_dim(qv, m, tau_n).unwrap());
            }
        }
    }
}

#[test]
fn indecomposables_are_rigid_bricks() {
    for (qv, d) in quivers() {
        for r in &d.reps {
            assert_eq!(rep::end_dim(qv, r).unwrap(), 1);
            assert_eq!(rep::ext1_dim(qv, r, r).unwrap(), 0);
        }
    }
}

fn braid_letters(n: usize) -> impl Strategy<Value = Vec<(usize, i8)>> {
    prop::collection::vec((0..n, prop_oneof![Just(1i8), Just(-1i8)]), 0..10)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(100))]

    #[test]
    fn normal_forms_respect_the_group_laws(w in braid_letters(3), v in braid_letters(3), i in 0usize..2) {
        let d = &quivers()[1].1;
        let artin = &d.artin;
        let (x, y) = (artin.from_letters(&w), artin.from_letters(&v));
        prop_assert!(artin.mul(&x, &artin.inverse(&x)).is_identity());
        let z = artin.from_letters(&[(2, 1), (0, -1)]);
        prop_assert_eq!(artin.mul(&artin.mul(&x, &y), &z), artin.mul(&x, &artin.mul(&y, &z)));
        prop_assert_eq!(artin.from_letters(&artin.letters(&x)), x.clone());
        // Insert a braid relation in the middle of the word.
        let mut aba = w.clone();
        aba.extend([(i, 1), (i + 1, 1), (i, 1)]);
        aba.extend(v.iter().copied());
        let mut bab = w.clone();
        bab.extend([(i + 1, 1), (i, 1), (i + 1, 1)]);
        bab.extend(v.iter().copied());
        prop_assert_eq!(artin.from_letters(&aba), artin.from_letters(&bab));
        let mut comm = w.clone();
        comm.extend([(0, 1), (2, -1)]);
        let mut comm2 = w;
        comm2.extend([(2, -1), (0, 1)]);
        prop_assert_eq!(artin.from_letters(&comm), artin.from_letters(&comm2));
    }

    #[test]
    fn twists_respect_induced_homs(w in braid_letters(2), n in 3i64..5, steps in prop::collection::vec((0usize..2, any::<bool>()), 0..6)) {
        let d = &quivers()[0].1;
        let g = Ginzburg::new(d, n).unwrap();
        let mut h = g.act(&d.artin.from_letters(&w), &g.standard());
        for (i, fwd) in steps {
            let dir = if fwd { Direction::Forward } else { Direction::Backward };
            let next = g.g_tilt(&h, i, dir).unwrap();
            prop_assert_eq!(g.g_tilt(&next, i, dir.opposite()).unwrap().key(), h.key());
            h = next;
        }
        let r = g.check_heart(&h);
        prop_assert!(r.all_pass(), "{}", r);
    }
}

fn fraction() -> impl Strategy<Value = Fraction> {
    (-30i64..30, 0i64..30).prop_filter_map("nonzero", |(p, q)| Fraction::new(p, q).ok())
}

fn psl2() -> impl Strategy<Value = PSL2Elem> {
    braid_letters(2).prop_map(|w| farey::project(&w))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn farey_edges_are_symmetric(a in fraction(), b in fraction()) {
        prop_assert_eq!(farey::is_edge(a, b), farey::is_edge(b, a));
    }

    #[test]
    fn parabolics_are_equivariant(a in fraction(), g in psl2(), h in psl2()) {
        let p = farey::psi(a);
        prop_assert_eq!(p.det(), 1);
        prop_assert_eq!(p.trace(), 2);
        prop_assert_eq!(farey::mobius(&p, a), a);
        prop_assert_eq!(farey::psi(farey::mobius(&g, a)), g.mul(&p).mul(&g.inverse()));
        prop_assert_eq!(farey::mobius(&g.mul(&h), a), farey::mobius(&g, farey::mobius(&h, a)));
    }

    #[test]
    fn mobius_preserves_edges(a in fraction(), b in fraction(), g in psl2()) {
        prop_assert_eq!(farey::is_edge(a, b), farey::is_edge(farey::mobius(&g, a), farey::mobius(&g, b)));
    }
}

#[test]
fn grading_is_a_cocycle() {
    for n in 2..=6 {
        for depth in 0..4 {
            let g = farey::build_gn(n, depth).unwrap();
            assert!(g.offsets().is_ok());
            let r = g.check();
            assert!(r.all_pass(), "{r}");
        }
    }
}

#[test]
fn interval_hearts_are_all_valid() {
    for (_, d) in quivers() {
        for n in 3..=4 {
            let g = build_interval_graph(d, n).unwrap();
            let r = g.verify_hearts(d);
            assert!(r.all_pass(), "{r}");
            assert!(g.is_acyclic());
        }
    }
}
