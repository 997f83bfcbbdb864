use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use extweyl::extended::ExtRootSystem;
use extweyl::reflection::{check_sym_axioms, conj_reflect, weyl_act_k, AElement, ReflectionLabel, SymSystem};
use extweyl::roots::{FiniteRootSystem, IMat, RootSystemType};
use extweyl::verify::{random_configs, random_k, random_label, random_v, random_z};
use extweyl::weyl::{WElement, WeylGroup};

fn configs() -> Vec<ExtRootSystem> {
    random_configs().into_iter().map(|(_, e)| e).collect()
}

fn systems() -> Vec<FiniteRootSystem> {
    RootSystemType::all_up_to_rank(4)
        .into_iter()
        .map(FiniteRootSystem::build)
        .collect()
}

fn config_and_rng() -> impl Strategy<Value = (usize, u64)> {
    (0..random_configs().len(), any::<u64>())
}

/// Labels `(g, α)` with `g ∈ {0, ±eᵢ}` over every root.
fn probe_labels(ers: &ExtRootSystem) -> Vec<ReflectionLabel> {
    let n = ers.n();
    let mut gs = vec![vec![0; n]];
    for i in 0..n {
        for s in [1, -1] {
            let mut g = vec![0; n];
            g[i] = s;
            gs.push(g);
        }
    }
    let rs = ers.delta();
    let mut out = Vec::new();
    for a in 0..rs.len() {
        for g in &gs {
            if ers.membership(g, a).unwrap() {
                out.push(ReflectionLabel::new(rs, g.clone(), a).unwrap());
            }
        }
    }
    out
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn reflections_are_involutions_permuting_roots(t in 0..systems().len(), a in any::<prop::sample::Index>(), b in any::<prop::sample::Index>()) {
        let rs = &systems()[t];
        let (a, b) = (a.index(rs.len()), b.index(rs.len()));
        let r = rs.reflect_root(a, b);
        prop_assert_eq!(rs.reflect_root(a, r), b);
        prop_assert_eq!(rs.pairing(a, rs.root(a)), 2);
        prop_assert_eq!(rs.negate(rs.negate(a)), a);
        prop_assert_eq!(rs.reflection(a).det(), -1);
        // reflections preserve the pairing
        let v = rs.reflection(a);
        prop_assert_eq!(rs.pair(&v.act_coroot(rs.coroot(b)), &v.act(rs.root(a))), rs.pairing(b, rs.root(a)));
    }

    #[test]
    fn center_of_a_is_trivial((c, seed) in config_and_rng()) {
        let ers = &configs()[c];
        let rs = ers.delta();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let x = AElement { k: random_k(ers, &mut rng), v: random_v(rs, &mut rng) };
        prop_assume!(!x.is_identity());
        let moved = probe_labels(ers).iter().any(|t| {
            let y = AElement::from_label(rs, t);
            x.mul(&y) != y.mul(&x)
        });
        prop_assert!(moved);
    }

    #[test]
    fn k_fix_is_zero(c in 0..6usize, entries in prop::collection::vec(-4i64..=4, 32)) {
        let ers = &configs()[c];
        let rs = ers.delta();
        let k = IMat::from_fn(ers.n(), rs.rank(), |i, j| entries[(i * rs.rank() + j) % entries.len()]);
        prop_assume!(k.iter().any(|x| *x != 0));
        let fixed = rs.simple_reflections().iter().all(|s| weyl_act_k(s, &k) == k);
        prop_assert!(!fixed);
    }

    #[test]
    fn a_separates_reflections((c, seed) in config_and_rng()) {
        let ers = &configs()[c];
        let rs = ers.delta();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let (s, t) = (random_label(ers, &mut rng), random_label(ers, &mut rng));
        prop_assert_eq!(s == t, AElement::from_label(rs, &s) == AElement::from_label(rs, &t));
    }

    #[test]
    fn central_part_commutes_and_is_torsion_free((c, seed) in config_and_rng(), m in 1u32..6) {
        let ers = &configs()[c];
        let w = WeylGroup::of(ers);
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let z = WElement { z: random_z(ers.n(), &mut rng), ..w.identity() };
        let x = WElement { z: random_z(ers.n(), &mut rng), k: random_k(ers, &mut rng), v: random_v(ers.delta(), &mut rng) };
        prop_assert_eq!(w.mul(&z, &x), w.mul(&x, &z));
        prop_assert_eq!(w.pow(&z, m).is_identity(), z.is_identity());
    }

    #[test]
    fn group_law_is_associative((c, seed) in config_and_rng()) {
        let ers = &configs()[c];
        let w = WeylGroup::of(ers);
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut el = || WElement { z: random_z(ers.n(), &mut rng), k: random_k(ers, &mut rng), v: random_v(ers.delta(), &mut rng) };
        let (a, b, c) = (el(), el(), el());
        prop_assert_eq!(w.mul(&w.mul(&a, &b), &c), w.mul(&a, &w.mul(&b, &c)));
        prop_assert!(w.mul(&a, &w.inv(&a)).is_identity());
    }

    #[test]
    fn determinant_tracks_word_length((c, seed) in config_and_rng(), len in 0usize..12) {
        let ers = &configs()[c];
        let w = WeylGroup::of(ers);
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let word: Vec<_> = (0..len).map(|_| random_label(ers, &mut rng)).collect();
        let det = w.evaluate(&word).v.det();
        prop_assert_eq!(det, if len % 2 == 0 { 1 } else { -1 });
    }
}

#[test]
fn generators_square_to_one_and_conjugate() {
    for ers in [
        ExtRootSystem::full("A1".parse().unwrap(), 2),
        ExtRootSystem::full("A2".parse().unwrap(), 1),
        ExtRootSystem::twisted("B2".parse().unwrap(), 1, 1).unwrap(),
        ExtRootSystem::twisted("G2".parse().unwrap(), 1, 1).unwrap(),
    ] {
        let rs = ers.delta();
        let w = WeylGroup::of(&ers);
        let n = ers.n() as u32;
        let mut labels = Vec::new();
        for code in 0..5i64.pow(n) {
            let g: Vec<i64> = (0..n).map(|i| (code / 5i64.pow(i)) % 5 - 2).collect();
            for a in 0..rs.len() {
                if ers.membership(&g, a).unwrap() {
                    labels.push(ReflectionLabel::new(rs, g.clone(), a).unwrap());
                }
            }
        }
        for s in &labels {
            let gs = w.generator(s);
            assert!(w.mul(&gs, &gs).is_identity(), "{s:?}");
            for t in &labels {
                let gt = w.generator(t);
                let conj = w.mul(&w.mul(&gs, &gt), &gs);
                assert_eq!(conj, w.generator(&conj_reflect(rs, s, t)), "{s:?} {t:?}");
            }
        }
    }
}

#[test]
fn root_systems_satisfy_sym_axioms() {
    for rs in systems() {
        let (sys, _) = SymSystem::of_root_system(&rs);
        assert!(check_sym_axioms(&sys).passed(), "{}", rs.rs_type());
    }
}
