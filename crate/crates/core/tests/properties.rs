use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use sepchoose::adversary::{gen_c3_family, gen_path_family, gen_sep_small_ratio, C3Variant, Endpoints, PathVariant};
use sepchoose::certificate::{verify, Certificate};
use sepchoose::colorers::{greedy_cycle, lift_cycle, lift_step, Base};
use sepchoose::formulas::{fsep_cycle, sep_cycle, sep_lower_bound};
use sepchoose::graph::Graph;
use sepchoose::lists::{
    amplitude_sigma, canonicalize, coloring_defect, path_amplitude_violation, ColorSet, ListAssignment,
};
use sepchoose::sampling::{default_palette, sample_lists, sample_precolored};
use sepchoose::solver::{is_colorable, SolveOptions};

fn set(colors: &[u32]) -> ColorSet {
    let mut s = ColorSet::new();
    for &c in colors {
        s.insert(c);
    }
    s
}

fn small_lists(max_n: usize) -> impl Strategy<Value = Vec<Vec<u32>>> {
    prop::collection::vec(prop::collection::vec(0u32..6, 0..5), 1..=max_n)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn path_amplitude_matches_interval_sums(raw in small_lists(7), b in 1usize..3) {
        let n = raw.len();
        let lists: Vec<ColorSet> = raw.iter().map(|v| set(v)).collect();
        let g = Graph::path(n).unwrap();
        let l = ListAssignment::new(g, lists.clone()).unwrap();
        let mut first = None;
        'outer: for len in 1..=n {
            for i in 1..=n + 1 - len {
                let j = i + len - 1;
                let sigma = amplitude_sigma(&l, i, j).unwrap();
                if sigma < b * len {
                    first = Some((i, j, sigma));
                    break 'outer;
                }
            }
        }
        let got = path_amplitude_violation(&lists, b).map(|v| (v.i, v.j, v.sigma));
        prop_assert_eq!(got, first);
    }

    #[test]
    fn sampler_respects_sizes_and_separation(n in 3usize..8, a in 1usize..7, c in 0usize..5, seed: u64) {
        let c = c.min(a);
        let g = Graph::cycle(n).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let l = sample_lists(&g, &vec![a; n], c, default_palette(a), &mut rng).unwrap();
        prop_assert!(l.check_sizes(a, a).is_ok());
        prop_assert!(l.separation() <= c);
    }

    #[test]
    fn greedy_colors_every_low_separation_cycle(n in 3usize..9, b in 1usize..4, extra in 0usize..4, seed: u64) {
        let a = b + extra;
        let g = Graph::cycle(n).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let l = sample_lists(&g, &vec![a; n], a - b, default_palette(a), &mut rng).unwrap();
        let out = greedy_cycle(&l, b).unwrap();
        prop_assert_eq!(coloring_defect(&l, &out.coloring, b), None);
    }

    #[test]
    fn lift_step_keeps_its_invariants(n in 3usize..8, a in 2usize..6, k in 1usize..3, seed: u64) {
        let c = a - 1;
        let g = Graph::cycle(n).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let l = sample_lists(&g, &vec![a + 2 * k; n], c + k, default_palette(a + 2 * k), &mut rng).unwrap();
        let step = lift_step(&l, k).unwrap();
        prop_assert!(step.a >= a);
        prop_assert!(step.reduced.separation() <= step.c);
        let order = g.cycle_order().unwrap();
        for (i, &x) in order.iter().enumerate() {
            let next = order[(i + 1) % n];
            prop_assert_eq!(step.phi[x].len(), k);
            prop_assert!(step.phi[x].is_subset(l.list(x)));
            prop_assert!(step.phi[x].is_disjoint(&step.phi[next]));
            prop_assert!(step.reduced.list(x).is_subset(&l.list(x).difference(&step.phi[x])));
        }
    }

    #[test]
    fn lifted_greedy_colors_cycles(n in 3usize..8, b in 1usize..3, extra in 0usize..3, k in 1usize..3, seed: u64) {
        let a = b + extra;
        let g = Graph::cycle(n).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let size = a + 2 * k;
        let l = sample_lists(&g, &vec![size; n], a - b + k, default_palette(size), &mut rng).unwrap();
        let out = lift_cycle(&l, b, k, &Base::Greedy).unwrap();
        prop_assert_eq!(coloring_defect(&l, &out.coloring, b + k), None);
    }

    #[test]
    fn canonical_form_is_stable_and_keeps_colorability(n in 3usize..6, a in 1usize..4, c in 0usize..3, seed: u64) {
        let c = c.min(a);
        let g = Graph::cycle(n).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let l = sample_lists(&g, &vec![a; n], c, default_palette(a), &mut rng).unwrap();
        let canon = canonicalize(&l).unwrap();
        let back = canon.realize(&g).unwrap();
        prop_assert_eq!(canonicalize(&back).unwrap(), canon);
        prop_assert_eq!(back.separation(), l.separation());
        prop_assert_eq!(is_colorable(&back, 1).unwrap(), is_colorable(&l, 1).unwrap());
    }

    #[test]
    fn formulas_are_ordered(n in 3usize..40, b in 1usize..12, extra in 0usize..30) {
        let a = b + extra;
        let sep = sep_cycle(n, a, b).unwrap().value;
        let lower = sep_lower_bound(a, b).unwrap();
        prop_assert!(sep >= lower);
        prop_assert!(sep <= a);
        if let Ok(fsep) = fsep_cycle(n, a, b) {
            prop_assert!(fsep.value <= sep);
        }
    }

    #[test]
    fn certificates_survive_json(n in 4usize..9, b in 1usize..5, extra in 0usize..20) {
        let a = b + extra;
        let mut certs: Vec<Certificate> = Vec::new();
        if let Ok((variant, _)) = PathVariant::for_params(n, a, b) {
            for endpoints in [Endpoints::Equal, Endpoints::Disjoint] {
                if let Ok(cert) = gen_path_family(n, a, b, variant, endpoints) {
                    certs.push(cert);
                }
            }
        }
        if let Ok((variant, _)) = C3Variant::for_params(a, b) {
            if let Ok(cert) = gen_c3_family(a, b, variant) {
                certs.push(cert);
            }
        }
        certs.extend(gen_sep_small_ratio(n, b, 1).ok());
        for cert in certs {
            let back = Certificate::from_json(&cert.to_json().unwrap()).unwrap();
            prop_assert!(verify(&back).unwrap().passed(), "{}", back.family);
            prop_assert_eq!(back, cert);
        }
    }
}

/// One step above the free threshold the sampler should hit uncolorable
/// instances; at the threshold it never may.
#[test]
fn sampler_finds_counterexamples_above_the_threshold() {
    for n in [4usize, 5] {
        let (a, b) = (9, 4);
        let fsep = fsep_cycle(n, a, b).unwrap().value;
        let g = Graph::cycle(n).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(n as u64);
        let mut bad = [0usize; 2];
        for (slot, c) in [fsep, fsep + 1].into_iter().enumerate() {
            for _ in 0..300 {
                let l = sample_precolored(&g, a, b, c, &[0], default_palette(a), &mut rng).unwrap();
                bad[slot] += usize::from(!is_colorable(&l, b).unwrap());
            }
        }
        assert_eq!(bad[0], 0, "C{n} uncolorable at fsep");
        assert!(bad[1] >= 10, "C{n}: only {} uncolorable draws at fsep + 1", bad[1]);
    }
}

/// The exact solver agrees that every small adversarial family is tight: at
/// the returned `c` there is a counterexample, and one below there is none.
#[test]
fn small_triangle_families_are_tight() {
    let g = Graph::cycle(3).unwrap();
    for b in 1..=3 {
        for a in b..=b + 4 {
            let Ok((variant, _)) = C3Variant::for_params(a, b) else { continue };
            let cert = gen_c3_family(a, b, variant).unwrap();
            let below = sepchoose::solver::decide_choosable(&g, a, b, cert.c - 1, true, SolveOptions::default())
                .unwrap();
            assert!(below.colorable, "a={a} b={b} {variant}");
            assert!(!is_colorable(&cert.lists, b).unwrap());
        }
    }
}
