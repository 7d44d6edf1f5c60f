//! Acceptance suite: one PASS/FAIL line per criterion, then a nonzero exit
//! if any criterion failed.

use std::process::Command;
use std::time::{Duration, Instant};

use fqdist_cli::config::RunConfig;
use fqdist_cli::report::{Status, VerificationReport};
use fqdist_cli::verify;
use fqdist_core::field::{Field, Fq};
use fqdist_core::spectral::{v0_fourier_bruteforce, v0_fourier_formula};

struct Outcome {
    ok: bool,
    detail: String,
}

fn pass(detail: impl Into<String>) -> Outcome {
    Outcome {
        ok: true,
        detail: detail.into(),
    }
}

fn fail(detail: impl Into<String>) -> Outcome {
    Outcome {
        ok: false,
        detail: detail.into(),
    }
}

/// Folds conditions into an outcome; the first false condition names the
/// failure.
fn all(conds: &[(bool, String)], summary: String) -> Outcome {
    match conds.iter().find(|(ok, _)| !ok) {
        Some((_, why)) => fail(why.clone()),
        None => pass(summary),
    }
}

fn reports_pass(reports: &[&VerificationReport]) -> (bool, String) {
    let bad: Vec<String> = reports
        .iter()
        .filter(|r| r.status != Status::Pass)
        .map(|r| {
            let first = r
                .failures
                .first()
                .map(|f| format!(" first: {} {}", f.label, f.check.name))
                .unwrap_or_default();
            format!("{} {} with {} failed checks;{first}", r.theorem_id, r.status, r.failures.len())
        })
        .collect();
    (bad.is_empty(), bad.join(" "))
}

fn cfg(fields: &[(u32, u32)], dims: &[usize]) -> RunConfig {
    RunConfig::new(fields.to_vec(), dims.to_vec())
}

fn primes(qs: &[u32]) -> Vec<(u32, u32)> {
    qs.iter()
        .map(|&q| {
            let f = Field::from_order(q).unwrap();
            (f.p(), f.ell())
        })
        .collect()
}

fn gauss_sums() -> Outcome {
    let c = cfg(&primes(&[3, 5, 7, 9, 11, 13, 25]), &[2]);
    let r = verify::verify_corm(&c).unwrap();
    let (ok, why) = reports_pass(&[&r]);
    let squares = r.checks_named("g1_squared_re");
    let norms = r.checks_named("abs_g_a_squared");
    all(
        &[
            (ok, why),
            (squares == 7, format!("{squares} G_1^2 checks, expected 7")),
            (norms == 66, format!("{norms} |G_a|^2 checks, expected 66")),
        ],
        format!("G_1^2 = eta(-1)q on 7 fields, |G_a|^2 = q on {norms} (q, a) pairs, tol 1e-6"),
    )
}

fn complete_square() -> Outcome {
    let qs = [3, 5, 7, 9, 11, 13, 17, 19, 23, 25];
    let r = verify::verify_com_squ(&cfg(&primes(&qs), &[2])).unwrap();
    let (ok, why) = reports_pass(&[&r]);
    let expected: usize = qs.iter().map(|&q| (q as usize - 1) * q as usize).sum();
    all(
        &[
            (ok, why),
            (
                r.instances_tested == expected,
                format!("{} (a, b) pairs, expected {expected}", r.instances_tested),
            ),
        ],
        format!("closed form = direct sum on all {expected} pairs (a != 0, b), q <= 25, tol 1e-6"),
    )
}

fn sphere_sizes() -> Outcome {
    let r = verify::verify_sphere_size(&cfg(&primes(&[3, 5, 7, 9, 11, 13]), &[2, 3, 4])).unwrap();
    let (ok, why) = reports_pass(&[&r]);
    let value = |label: &str| {
        r.instances
            .iter()
            .find(|i| i.label == label)
            .map(|i| i.checks[0].rhs)
    };
    let sums = r.checks_named("sizes_sum_to_qd");
    all(
        &[
            (ok, why),
            (value("q=5,d=2,t=1") == Some(4.0), "|S_1| in F_5^2 is not 4".into()),
            (value("q=5,d=2,t=0") == Some(9.0), "|S_0| in F_5^2 is not 9".into()),
            (sums == 18, format!("{sums} sum checks, expected 18")),
        ],
        format!(
            "formula = enumeration for {} (q, d, t), q <= 13, d <= 4; |S_1|=4, |S_0|=9 in F_5^2",
            r.instances_tested
        ),
    )
}

fn v0_transform() -> Outcome {
    let small = verify::verify_def_vft(&cfg(&[(3, 1)], &[2, 3])).unwrap();
    let five = verify::verify_def_vft(&cfg(&[(5, 1)], &[2])).unwrap();
    let (ok, why) = reports_pass(&[&small, &five]);
    let f3 = Field::new(3, 1).unwrap();
    let zero = vec![Fq::ZERO; 4];
    let closed = v0_fourier_formula(&f3, &zero).unwrap();
    let brute = v0_fourier_bruteforce(&f3, &zero).unwrap();
    let n = small.instances_tested + five.instances_tested;
    all(
        &[
            (ok, why),
            (n == 81 + 729 + 625, format!("{n} inputs, expected 1435")),
            ((closed - 11.0 / 27.0).abs() < 1e-12, format!("closed form at M=0 is {closed}")),
            ((brute.re - 11.0 / 27.0).abs() < 1e-12, format!("brute force at M=0 is {brute}")),
        ],
        format!("closed = brute force on all {n} inputs at (3,2), (5,2), (3,3), tol 1e-8; 11/27 at M=0"),
    )
}

fn restriction() -> Outcome {
    let tiny = verify::verify_pro_res(&cfg(&[(3, 1)], &[2])).unwrap();
    let planar = verify::verify_pro_res(&cfg(&[(5, 1), (7, 1)], &[2]).with_samples(1000)).unwrap();
    let solid = verify::verify_pro_res(&cfg(&[(5, 1)], &[3]).with_samples(1000)).unwrap();
    let (ok, why) = reports_pass(&[&tiny, &planar, &solid]);
    let tight = tiny.checks_named("max_r_t_equals_bound");
    all(
        &[
            (ok, why),
            (tiny.instances_tested == 8, format!("{} F_3^2 instances, expected 7 + 1", tiny.instances_tested)),
            (planar.instances_tested == 2000, "expected 1000 sets each at (5,2), (7,2)".into()),
            (solid.instances_tested == 1000, "expected 1000 sets at (5,3)".into()),
            (tight == 1, "tightness instance missing".into()),
        ],
        "max_t R_t <= 2q^{-d-1}|B| on 7 axis subsets of F_3^2 and 3 x 1000 random \
         coordinatable B; full line gives 2/9 = bound"
            .into(),
    )
}

fn dist_formula() -> (Outcome, VerificationReport) {
    let r = verify::verify_dist_formula(
        &cfg(&[(3, 1), (5, 1), (7, 1)], &[2]).with_samples(10_000).with_seed(6),
    )
    .unwrap();
    let r3 = verify::verify_dist_formula(&cfg(&[(5, 1)], &[3]).with_samples(10_000).with_seed(6)).unwrap();
    let (ok, why) = reports_pass(&[&r, &r3]);
    let worked = r.instances.iter().find(|i| i.index == u64::MAX);
    let worked_ok = worked.is_some_and(|i| {
        i.delta_size == Some(3) && i.checks.iter().any(|c| c.name == "worked_bound_is_1.8" && c.holds)
    });
    let mut merged = r;
    merged.instances.extend(r3.instances);
    let out = all(
        &[
            (ok, why),
            (merged.instances.len() == 40_001, format!("{} instances", merged.instances.len())),
            (worked_ok, "worked instance F_3^2 vs x_1-axis is not 1.8 vs 3".into()),
        ],
        "bound <= |Delta(A,B)| on 10^4 random pairs at each of (3,2), (5,2), (7,2), (5,3); \
         F_3^2 vs x_1-axis gives 1.8 vs 3"
            .into(),
    );
    (out, merged)
}

fn mainthm_exhaustive() -> (Outcome, VerificationReport) {
    let r = verify::verify_mainthm(&cfg(&[(3, 1)], &[2])).unwrap();
    let (ok, why) = reports_pass(&[&r]);
    let out = all(
        &[
            (ok, why),
            (r.instances_tested == 4096, format!("{} pairs, expected 4096", r.instances_tested)),
            (r.checks_named("half_q") == r.hypothesis_met, "hypothesis instances unchecked".into()),
        ],
        format!(
            "all 4096 (A, B), B on the x_1-axis of F_3^2; {} with |A||B| >= 18 have |Delta| >= 2",
            r.hypothesis_met
        ),
    );
    (out, r)
}

fn mainthm_random() -> (Outcome, VerificationReport) {
    let c = cfg(&[(5, 1), (7, 1), (3, 2)], &[2, 3]).with_samples(10_000).with_seed(8);
    let r = verify::verify_mainthm(&c).unwrap();
    let (ok, why) = reports_pass(&[&r]);
    let out = all(
        &[
            (ok, why),
            (r.hypothesis_met == 60_000, format!("{} instances meet the hypothesis", r.hypothesis_met)),
        ],
        format!(
            "10^4 seeded instances with |A||B| >= 2q^d at each q in {{5,7,9}}, d in {{2,3}}; \
             {} below-threshold instances logged",
            r.instances_tested - r.hypothesis_met
        ),
    );
    (out, r)
}

fn counterexamples() -> Outcome {
    let deltas = vec![0.3, 0.5, 0.7];
    let odd = verify::verify_p11_odd(&cfg(&[(5, 1), (3, 2)], &[3, 5]).with_deltas(deltas.clone())).unwrap();
    let even = verify::verify_p11_even(&cfg(&[(5, 1), (3, 2)], &[2, 4]).with_deltas(deltas)).unwrap();
    let (ok, why) = reports_pass(&[&odd, &even]);
    let example = odd.instances.iter().find(|i| i.label == "q=5,d=3,delta=0.5");
    let example_ok = example.is_some_and(|i| i.size_a == Some(15) && i.delta_size == Some(3));
    all(
        &[
            (ok, why),
            (odd.instances_tested == 12, format!("{} odd cases", odd.instances_tested)),
            (even.instances_tested == 12, format!("{} even cases", even.instances_tested)),
            (example_ok, "q=5, d=3, delta=0.5 is not (|A|, |Delta_Q|) = (15, 3)".into()),
        ],
        "Delta_Q(A) equals the predicted set for 12 odd and 12 even cases; (q,d,delta)=(5,3,0.5) \
         gives |A|=15, |Delta_Q|=3"
            .into(),
    )
}

fn box_sets() -> Outcome {
    let seven = verify::verify_thm_k(&cfg(&[(7, 1)], &[2])).unwrap();
    let big = verify::verify_thm_k(&cfg(&[(5, 2)], &[2]).with_samples(200).with_seed(10)).unwrap();
    let (ok, why) = reports_pass(&[&seven, &big]);
    let chains: Vec<_> = big
        .instances
        .iter()
        .filter(|i| i.checks.iter().any(|c| c.name == "half_q_box"))
        .collect();
    let at_18 = chains.iter().filter(|i| i.label == "q=25,|E|=18").count();
    all(
        &[
            (ok, why),
            (seven.instances_tested == 112, format!("{} subsets of F_7", seven.instances_tested)),
            (at_18 > 0, "no chain instance with |E| = 18".into()),
        ],
        format!(
            "Box(E) contains Delta(E_1 x E_2, diag E) for all 112 E in F_7, 2 <= |E| <= 5; \
             full chain on {} sampled E in F_25 ({at_18} with |E| = 18)",
            chains.len()
        ),
    )
}

fn shparlinski(reports: &[&VerificationReport]) -> Outcome {
    let mut checked = 0;
    let mut instances_with_delta = 0;
    let mut bad = Vec::new();
    for r in reports {
        for inst in &r.instances {
            if inst.delta_size.is_none() {
                continue;
            }
            instances_with_delta += 1;
            for c in inst.checks.iter().filter(|c| c.name == "shparlinski") {
                checked += 1;
                if !c.holds {
                    bad.push(format!("{} #{}", r.theorem_id, inst.index));
                }
            }
        }
    }
    all(
        &[
            (bad.is_empty(), format!("violations: {}", bad.join(", "))),
            (
                checked == instances_with_delta,
                format!("{checked} checks for {instances_with_delta} instances"),
            ),
        ],
        format!("|Delta| >= (1/2)min{{q, |A||B|/q^d}} on all {checked} nonempty instances of 6-8"),
    )
}

fn determinism() -> Outcome {
    let dir = tempfile::tempdir().unwrap();
    let run = |name: &str| {
        let out = dir.path().join(name);
        let status = Command::new(env!("CARGO_BIN_EXE_fqdist"))
            .args(["verify", "mainthm", "--p", "5,7", "--dim", "2,3", "--samples", "300"])
            .args(["--seed", "42", "--out"])
            .arg(&out)
            .output()
            .unwrap();
        (status.status.code(), std::fs::read(out.join("mainthm.json")).ok())
    };
    let (c1, j1) = run("first");
    let (c2, j2) = run("second");
    match (j1, j2) {
        (Some(a), Some(b)) if c1 == Some(0) && c2 == Some(0) => {
            if a == b {
                pass(format!("two runs of `fqdist verify mainthm --seed 42` wrote identical {}-byte JSON", a.len()))
            } else {
                fail("reports differ between runs")
            }
        }
        _ => fail(format!("runs exited with {c1:?} and {c2:?}")),
    }
}

fn main() {
    let mut failures = 0;
    let mut line = |n: u32, name: &str, limit: Option<Duration>, f: &mut dyn FnMut() -> Outcome| {
        let started = Instant::now();
        let mut out = f();
        let took = started.elapsed();
        if let Some(limit) = limit {
            if took > limit && out.ok {
                out = fail(format!("took {took:.2?}, limit {limit:.0?}"));
            }
        }
        let tag = if out.ok { "PASS" } else { "FAIL" };
        if !out.ok {
            failures += 1;
        }
        println!("[{tag}] {n:>2} {name}: {} ({took:.2?})", out.detail);
    };

    let secs = Duration::from_secs;
    println!("acceptance criteria");
    line(1, "Gauss sums", Some(secs(1)), &mut gauss_sums);
    line(2, "complete square", Some(secs(5)), &mut complete_square);
    line(3, "sphere sizes", Some(secs(30)), &mut sphere_sizes);
    line(4, "V_0 transform", Some(secs(60)), &mut v0_transform);
    line(5, "restriction bound", None, &mut restriction);
    let mut kept = Vec::new();
    line(6, "distance lower bound", None, &mut || {
        let (o, r) = dist_formula();
        kept.push(r);
        o
    });
    line(7, "main theorem, exhaustive", Some(secs(10)), &mut || {
        let (o, r) = mainthm_exhaustive();
        kept.push(r);
        o
    });
    line(8, "main theorem, randomized", Some(secs(300)), &mut || {
        let (o, r) = mainthm_random();
        kept.push(r);
        o
    });
    line(9, "small distance sets", None, &mut counterexamples);
    line(10, "box sets", Some(secs(120)), &mut box_sets);
    let refs: Vec<&VerificationReport> = kept.iter().collect();
    line(11, "Shparlinski floor", None, &mut || shparlinski(&refs));
    line(12, "determinism", None, &mut determinism);

    if failures > 0 {
        println!("{failures} criteria failed");
        std::process::exit(1);
    }
    println!("all 12 criteria passed");
}
