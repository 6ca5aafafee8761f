//! Acceptance checks, one line per criterion. Exits nonzero if any fails.

use std::process::ExitCode;
use std::time::{Duration, Instant};

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use sepchoose::adversary::{
    fig1_fixture, gen_c3_family, gen_flower, gen_path_cycle, gen_path_family, gen_sep_odd_cycle, gen_sep_small_ratio,
    C3Variant, Endpoints, PathVariant,
};
use sepchoose::certificate::{verify, Certificate, Claim};
use sepchoose::colorers::{cactus_free_color, cycle_color_precolored, lift_cycle, lift_step, Base};
use sepchoose::formulas::{fsep_cactus, fsep_cycle, fsep_min_with_triangle, fsep_monotone_check, sep_cycle};
use sepchoose::graph::Graph;
use sepchoose::lists::{amplitude_condition, is_valid_coloring, ListAssignment};
use sepchoose::sampling::{default_palette, sample_lists, sample_precolored};
use sepchoose::solver::{color_with_lists, compute_sep, enumerate_canonical, is_colorable, SolveOptions};

struct Outcome {
    passed: bool,
    detail: String,
}

fn outcome(passed: bool, detail: impl Into<String>) -> Outcome {
    Outcome {
        passed,
        detail: detail.into(),
    }
}

type Check = fn() -> Outcome;

fn opts() -> SolveOptions {
    SolveOptions::default()
}

/// Criterion 1: sep and fsep of C_3..C_5 from exhaustive search equal the closed forms.
fn grid_equality() -> Outcome {
    let start = Instant::now();
    let mut cells = 0;
    let mut mismatches = Vec::new();
    let mut c4_cell = None;
    for n in 3..=5 {
        let g = Graph::cycle(n).unwrap();
        for b in 1..=2 {
            for a in b..=(3 * b).min(6) {
                for free in [false, true] {
                    cells += 1;
                    let formula = if free { fsep_cycle(n, a, b) } else { sep_cycle(n, a, b) }.unwrap().value;
                    let oracle = match compute_sep(&g, a, b, free, opts()) {
                        Ok(v) => v,
                        Err(e) => return outcome(false, format!("oracle failed at (C{n},{a},{b},free={free}): {e}")),
                    };
                    if (n, a, b, free) == (4, 2, 1, false) {
                        c4_cell = Some((oracle, formula));
                    }
                    if oracle != formula {
                        mismatches.push(format!("(C{n},{a},{b},free={free}) oracle {oracle} formula {formula}"));
                    }
                }
            }
        }
    }
    let elapsed = start.elapsed();
    let (c4_oracle, c4_formula) = c4_cell.expect("grid contains (C4,2,1)");
    // the two values on record for this cell are 1 and 2; the oracle must pick one of them
    let c4_ok = c4_oracle == 1 || c4_oracle == 2;
    let passed = mismatches.is_empty() && c4_ok && elapsed < Duration::from_secs(600);
    outcome(
        passed,
        format!(
            "{cells} cells, {} mismatches{}; sep(C4,2,1): oracle {c4_oracle}, closed form {c4_formula}, competing value {}; {:.1}s",
            mismatches.len(),
            if mismatches.is_empty() { String::new() } else { format!(" [{}]", mismatches.join("; ")) },
            if c4_oracle == 2 { "1 refuted" } else { "2 refuted" },
            elapsed.as_secs_f64()
        ),
    )
}

/// Criterion 2: four odd-cycle separation numbers, both directions.
fn odd_cycle_datapoints() -> Outcome {
    let start = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(2);
    let mut notes = Vec::new();
    let mut passed = true;
    for (n, a, b, expected) in [(3, 5, 2, 4), (3, 7, 3, 5), (5, 7, 3, 6), (5, 9, 4, 7)] {
        let p = (n - 1) / 2;
        let alpha = a - 2 * b;
        let k = b - p * alpha;
        let formula = sep_cycle(n, a, b).unwrap().value;
        let g = Graph::cycle(n).unwrap();
        let mut failures = 0;
        for _ in 0..1000 {
            let l = sample_lists(&g, &vec![a; n], expected, default_palette(a), &mut rng).unwrap();
            let ok = match lift_cycle(&l, p * alpha, k, &Base::Exact) {
                Ok(out) => is_valid_coloring(&l, &out.coloring, b),
                Err(_) => false,
            };
            failures += usize::from(!ok);
        }
        let cert = gen_sep_odd_cycle(p, b, alpha).unwrap();
        let refuted = cert.c == expected + 1 && verify(&cert).map(|r| r.passed()).unwrap_or(false);
        let ok = formula == expected && failures == 0 && refuted;
        passed &= ok;
        notes.push(format!(
            "sep(C{n},{a},{b})={expected}: formula {formula}, {failures}/1000 lift failures, c={} certificate {}",
            expected + 1,
            if refuted { "uncolorable" } else { "NOT confirmed" }
        ));
    }
    let elapsed = start.elapsed();
    passed &= elapsed < Duration::from_secs(300);
    outcome(passed, format!("{}; {:.1}s", notes.join("; "), elapsed.as_secs_f64()))
}

/// Criterion 3: fsep(C_4,9,4) = 3 and fsep(C_5,9,4) = 4.
fn fsep_datapoints() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    let mut notes = Vec::new();
    let mut passed = true;
    for (n, variant, expected) in [(4, PathVariant::Case1, 3), (5, PathVariant::Case2b, 4)] {
        let (a, b) = (9, 4);
        let formula = fsep_cycle(n, a, b).unwrap().value;
        let t = Instant::now();
        let cert = gen_path_cycle(n, a, b, variant).unwrap();
        let uncolorable = cert.c == expected + 1 && verify(&cert).map(|r| r.passed()).unwrap_or(false);
        let oracle_time = t.elapsed();
        let g = Graph::cycle(n).unwrap();
        let mut failures = 0;
        for _ in 0..10_000 {
            let r = rng.gen_range(0..n);
            let l = sample_precolored(&g, a, b, expected, &[r], default_palette(a), &mut rng).unwrap();
            let ok = match cycle_color_precolored(&l, b) {
                Ok(out) => is_valid_coloring(&l, &out.coloring, b),
                Err(_) => false,
            };
            failures += usize::from(!ok);
        }
        let ok = formula == expected && uncolorable && oracle_time < Duration::from_secs(1) && failures == 0;
        passed &= ok;
        notes.push(format!(
            "fsep(C{n},9,4)={expected}: formula {formula}, {variant} certificate at c={} {} in {:.3}s, {failures}/10000 cut failures",
            expected + 1,
            if uncolorable { "uncolorable" } else { "NOT confirmed" },
            oracle_time.as_secs_f64()
        ));
    }
    outcome(passed, notes.join("; "))
}

fn all_certificates() -> Vec<(String, Certificate)> {
    let mut out = Vec::new();
    let mut push = |label: String, cert: sepchoose::Result<Certificate>| match cert {
        Ok(c) => out.push((label, c)),
        Err(e) => panic!("{label}: regime-valid parameters rejected: {e}"),
    };
    for n in 3..=8 {
        for b in 1..=4 {
            for k in 0..b {
                push(format!("small-ratio({n},{b},{k})"), gen_sep_small_ratio(n, b, k));
            }
        }
    }
    for p in 1..=3 {
        for b in 1..=4 {
            for alpha in 0..=(b - 1) / p {
                push(format!("odd-cycle({p},{b},{alpha})"), gen_sep_odd_cycle(p, b, alpha));
            }
        }
    }
    for n in 4..=8 {
        for b in 1..=4 {
            // regime-valid: b <= a < 2(n+1)b/n, and case1 needs a > b
            for a in b..=4 * b {
                if a * n >= 2 * (n + 1) * b {
                    break;
                }
                let Ok((variant, _)) = PathVariant::for_params(n, a, b) else { continue };
                if variant == PathVariant::Case1 && a == b && b == 1 {
                    continue;
                }
                for endpoints in [Endpoints::Equal, Endpoints::Disjoint] {
                    push(format!("path({n},{a},{b},{variant},{endpoints})"), gen_path_family(n, a, b, variant, endpoints));
                }
                push(format!("path-cycle({n},{a},{b},{variant})"), gen_path_cycle(n, a, b, variant));
            }
        }
    }
    for b in 1..=4 {
        for a in b..3 * b {
            let (variant, _) = C3Variant::for_params(a, b).unwrap();
            push(format!("c3({a},{b},{variant})"), gen_c3_family(a, b, variant));
        }
    }
    for p in 3..=8 {
        for b in 1..=4 {
            for a in b..=4 * b {
                let f = fsep_cycle(p, a, b).unwrap().value;
                if f >= a {
                    continue;
                }
                if p >= 4 {
                    if let Ok((PathVariant::Case1, _)) = PathVariant::for_params(p, a, b) {
                        if a == b && b == 1 {
                            continue;
                        }
                    }
                }
                push(format!("flower({p},{a},{b})"), gen_flower(p, a, b));
            }
        }
    }
    out.push(("fig1".into(), fig1_fixture()));
    out
}

/// Criterion 4: every family over the grid passes the verify command with exact separation and Σ.
fn certificate_suite() -> Outcome {
    let start = Instant::now();
    let dir = tempfile::tempdir().expect("temporary directory");
    let certs = all_certificates();
    let mut failures = Vec::new();
    let mut sigma_checked = 0;
    for (i, (label, cert)) in certs.iter().enumerate() {
        let path = dir.path().join(format!("{i}.json"));
        std::fs::write(&path, cert.to_json().unwrap()).unwrap();
        let args = ["sepchoose".into(), "verify".into(), path.clone().into_os_string()];
        let code = sepchoose::cli::run(args, &mut std::io::sink(), &mut std::io::sink());
        if code != 0 {
            failures.push(format!("{label}: verify exit {code}"));
        }
        if cert.lists.separation() != cert.c {
            failures.push(format!("{label}: separation {} != c {}", cert.lists.separation(), cert.c));
        }
        if cert.claim != Claim::Uncolorable {
            failures.push(format!("{label}: claim {:?}", cert.claim));
        }
        sigma_checked += usize::from(cert.sigma.is_some());
    }
    outcome(
        failures.is_empty(),
        format!(
            "{} certificates ({} with a closed-form Sigma), {} failures{}; {:.1}s",
            certs.len(),
            sigma_checked,
            failures.len(),
            if failures.is_empty() { String::new() } else { format!(" [{}]", failures.join("; ")) },
            start.elapsed().as_secs_f64()
        ),
    )
}

/// Criterion 5: on paths the amplitude condition is equivalent to colorability.
fn amplitude_equivalence() -> Outcome {
    let mut exhaustive = 0u64;
    let mut discrepancies = Vec::new();
    for n in 1..=10usize {
        let g = Graph::path(n).unwrap();
        for a in 1..=10 / n {
            for b in 1..=a {
                for t in enumerate_canonical(&g, a, b, a, None).unwrap() {
                    let l = t.realize(&g).unwrap();
                    exhaustive += 1;
                    if amplitude_condition(&l, b).unwrap() != is_colorable(&l, b).unwrap() {
                        discrepancies.push(format!("{:?}", l.lists()));
                    }
                }
            }
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    for _ in 0..10_000 {
        let n = rng.gen_range(4..=9);
        let a = rng.gen_range(2..=6);
        let b = rng.gen_range(1..=a);
        let c = rng.gen_range(0..=a);
        let sizes: Vec<usize> = (0..n).map(|_| rng.gen_range(b..=a)).collect();
        let g = Graph::path(n).unwrap();
        let l = sample_lists(&g, &sizes, c, rng.gen_range(a..=2 * a + 2), &mut rng).unwrap();
        if amplitude_condition(&l, b).unwrap() != is_colorable(&l, b).unwrap() {
            discrepancies.push(format!("{:?}", l.lists()));
        }
    }
    outcome(
        discrepancies.is_empty(),
        format!(
            "{exhaustive} canonical instances with n*a <= 10 plus 10000 random, {} discrepancies{}",
            discrepancies.len(),
            discrepancies.first().map(|d| format!(" (first: {d})")).unwrap_or_default()
        ),
    )
}

/// Criterion 6: monotonicity in n and the min-with-triangle table.
fn min_table() -> Outcome {
    let mut points = 0;
    let mut violations = Vec::new();
    for n in 4..=12 {
        for b in 1..=4 {
            for a in b..=4 * b {
                points += 1;
                if !fsep_monotone_check(n, a, b).unwrap() {
                    violations.push(format!("monotone({n},{a},{b})"));
                }
                let tri = fsep_cycle(3, a, b).unwrap().value;
                let cyc = fsep_cycle(n, a, b).unwrap().value;
                let table = fsep_min_with_triangle(n, a, b).unwrap();
                let branch_value = match table.regime.as_str() {
                    r if r.starts_with("triangle") => tri,
                    r if r.starts_with("cycle") => cyc,
                    _ => a,
                };
                if table.value != tri.min(cyc) || table.value != branch_value {
                    violations.push(format!("min({n},{a},{b}): table {} [{}], triangle {tri}, cycle {cyc}", table.value, table.regime));
                }
            }
        }
    }
    outcome(
        violations.is_empty(),
        format!(
            "{points} grid points, {} violations{}",
            violations.len(),
            if violations.is_empty() { String::new() } else { format!(" [{}]", violations.join("; ")) }
        ),
    )
}

/// Criterion 7: the lift keeps |L'| >= a and separation(L') <= c, and its coloring validates.
fn lift_invariants() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let mut failures = Vec::new();
    for _ in 0..1000 {
        let n = rng.gen_range(3..=8);
        let b = rng.gen_range(1..=3);
        let a = rng.gen_range(b..=2 * b + 1);
        let c = rng.gen_range(0..=sep_cycle(n, a, b).unwrap().value);
        let k = rng.gen_range(1..=2);
        let g = Graph::cycle(n).unwrap();
        let l = sample_lists(&g, &vec![a + 2 * k; n], c + k, default_palette(a + 2 * k), &mut rng).unwrap();
        let label = format!("C{n} (a,b,c,k)=({a},{b},{c},{k})");
        match lift_step(&l, k) {
            Ok(step) => {
                let small = step.reduced.lists().iter().map(|s| s.len()).min().unwrap_or(0);
                if small < a || step.reduced.separation() > c {
                    failures.push(format!("{label}: |L'| >= {small}, separation(L') = {}", step.reduced.separation()));
                    continue;
                }
            }
            Err(e) => {
                failures.push(format!("{label}: {e}"));
                continue;
            }
        }
        match lift_cycle(&l, b, k, &Base::Exact) {
            Ok(out) if is_valid_coloring(&l, &out.coloring, b + k) => {}
            Ok(_) => failures.push(format!("{label}: invalid coloring")),
            Err(e) => failures.push(format!("{label}: {e}")),
        }
    }
    outcome(
        failures.is_empty(),
        format!(
            "1000 random instances on C3..C8, {} failures{}",
            failures.len(),
            failures.first().map(|f| format!(" (first: {f})")).unwrap_or_default()
        ),
    )
}

/// Criterion 8: the two-square cactus end to end.
fn two_square_end_to_end() -> Outcome {
    let fixture = fig1_fixture();
    let fixture_ok = verify(&fixture).map(|r| r.passed()).unwrap_or(false);
    let fsep = fsep_cactus(fixture.graph(), 2, 1).unwrap().value;
    let flower = gen_flower(4, 2, 1).unwrap();
    let flower_uncolorable = !color_with_lists(&flower.lists, 1).unwrap().colorable && verify(&flower).map(|r| r.passed()).unwrap_or(false);
    let g = flower.graph().clone();
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    let mut failures = 0;
    for _ in 0..1000 {
        let r = rng.gen_range(0..g.n());
        let l: ListAssignment = sample_precolored(&g, 2, 1, 0, &[r], default_palette(2), &mut rng).unwrap();
        let ok = match cactus_free_color(&l, 1) {
            Ok(out) => is_valid_coloring(&l, &out.coloring, 1),
            Err(_) => false,
        };
        failures += usize::from(!ok);
    }
    let passed = fixture_ok && fsep == 0 && flower_uncolorable && failures == 0;
    outcome(
        passed,
        format!(
            "fixture {}, fsep_cactus = {fsep}, flower(4,2,1) {}, {failures}/1000 cactus failures at c = 0",
            if fixture_ok { "verifies" } else { "FAILS" },
            if flower_uncolorable { "uncolorable" } else { "NOT confirmed" }
        ),
    )
}

fn main() -> ExitCode {
    let criteria: [(&str, Check); 8] = [
        ("formula-oracle grid equality", grid_equality),
        ("odd-cycle datapoints", odd_cycle_datapoints),
        ("free-separation datapoints", fsep_datapoints),
        ("certificate suite", certificate_suite),
        ("amplitude equivalence on paths", amplitude_equivalence),
        ("min-with-triangle table and monotonicity", min_table),
        ("lift invariants", lift_invariants),
        ("two-square cactus end to end", two_square_end_to_end),
    ];
    let filter: Vec<String> = std::env::args().skip(1).filter(|a| !a.starts_with('-')).collect();
    let mut failed = 0;
    for (i, (name, check)) in criteria.iter().enumerate() {
        let id = (i + 1).to_string();
        if !filter.is_empty() && !filter.contains(&id) {
            continue;
        }
        let result = check();
        println!("criterion {id} {}: {name}: {}", if result.passed { "PASS" } else { "FAIL" }, result.detail);
        failed += usize::from(!result.passed);
    }
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
