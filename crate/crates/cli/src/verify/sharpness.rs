//! The small-distance-set constructions: the distance set under the
//! canonical form must equal the one predicted from `Omega_delta`.

use std::time::Instant;

use fqdist_core::constructions::{counterexample, Parity};
use fqdist_core::distance::delta;

use crate::config::RunConfig;
use crate::error::Result;
use crate::report::{Check, Instance, Outcome, TheoremId, VerificationReport};

fn verify_p11(cfg: &RunConfig, parity: Parity) -> Result<VerificationReport> {
    let started = Instant::now();
    cfg.validate()?;
    let id = match parity {
        Parity::Odd => TheoremId::P11Odd,
        Parity::Even => TheoremId::P11Even,
    };
    let mut report = VerificationReport::new(id, cfg);
    report.note(match parity {
        Parity::Odd => "A = H x Omega_delta; predicted distances {eps c^2 : c in Omega - Omega}",
        Parity::Even => "A = Lambda x Omega_delta x {0}; predicted distances {(a - b)^2 : a, b in Omega}",
    });
    report.note("sizes are exact; ratios against the nominal size are reported, not judged");
    let mut index = 0u64;
    for field in cfg.build_fields()? {
        for &d in &cfg.dims {
            let fits = match parity {
                Parity::Odd => d >= 3 && d % 2 == 1,
                Parity::Even => d >= 2 && d % 2 == 0,
            };
            if !fits {
                report.note(format!("d={d} has the wrong parity or is too small, skipped"));
                continue;
            }
            for &dl in &cfg.deltas {
                let q = field.q();
                let recipe = counterexample(&field, d, dl)?;
                let actual = delta(&field, &recipe.set, &recipe.set, &recipe.form)?;
                let predicted = recipe.predicted_distances(&field)?;
                let mismatches = actual
                    .values()
                    .iter()
                    .filter(|&&t| !predicted.contains(t))
                    .chain(predicted.values().iter().filter(|&&t| !actual.contains(t)))
                    .count();
                let n = recipe.set.len();
                report.note(format!(
                    "q={q}, d={d}, delta={dl}: |A|={n}, |Delta_Q(A)|={}, |Delta_Q|/q={:.6}, |A|/nominal={:.6}",
                    actual.len(),
                    actual.len() as f64 / q as f64,
                    n as f64 / recipe.nominal_size(),
                ));
                let mut inst = Instance::new(index, format!("q={q},d={d},delta={dl}"), q, d).sizes(n, n);
                inst.delta_size = Some(actual.len());
                inst.checks = vec![
                    Check::exact("identity_mismatches", mismatches as u64, 0),
                    Check::exact("predicted_size", predicted.len() as u64, actual.len() as u64),
                ];
                report.record(Outcome::with_sets(inst, &recipe.set, None));
                index += 1;
            }
        }
    }
    Ok(report.finish(started))
}

pub fn verify_p11_odd(cfg: &RunConfig) -> Result<VerificationReport> {
    verify_p11(cfg, Parity::Odd)
}

pub fn verify_p11_even(cfg: &RunConfig) -> Result<VerificationReport> {
    verify_p11(cfg, Parity::Even)
}
