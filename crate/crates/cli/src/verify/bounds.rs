//! The general lower bounds on `|Delta(A, B)|` on random pairs.

use std::time::Instant;

use fqdist_core::distance::{delta_standard, shparlinski_bound};
use fqdist_core::field::Field;
use fqdist_core::geometry::{random_subset, CoordinatePlane, PointSet};
use fqdist_core::spectral::{cauchy_schwarz_bound, distance_lower_bound, distance_lower_bound_symmetric};
use rand::Rng;

use super::{instance_rng, q_pow, sweep};
use crate::config::RunConfig;
use crate::error::Result;
use crate::report::{Check, Instance, Outcome, TheoremId, VerificationReport};

fn random_pair(field: &Field, d: usize, seed: u64, group: u64, i: u64) -> Result<(PointSet, PointSet)> {
    let mut rng = instance_rng(seed, group, i);
    let qd = q_pow(field, d);
    let na = rng.gen_range(1..=qd);
    let nb = rng.gen_range(1..=qd);
    Ok((
        random_subset(field, d, na, &mut rng)?,
        random_subset(field, d, nb, &mut rng)?,
    ))
}

fn formula_instance(field: &Field, i: u64, label: String, a: &PointSet, b: &PointSet) -> Result<Outcome> {
    let d = a.dim();
    let (na, nb) = (a.len(), b.len());
    let size = delta_standard(field, a, b)?.len() as f64;
    let mut inst = Instance::new(i, label, field.q(), d).sizes(na, nb);
    inst.delta_size = Some(size as usize);
    inst.checks = vec![
        Check::ge("dist_formula", size, distance_lower_bound_symmetric(field, a, b)?),
        Check::ge("cauchy_schwarz", size, cauchy_schwarz_bound(field, a, b)?),
        Check::ge("shparlinski", size, shparlinski_bound(field.q(), d, na, nb)),
    ];
    Ok(Outcome::with_sets(inst, a, Some(b)))
}

/// `|A|^2|B|^2 / (q^{-1}|A|^2|B|^2 + q^{2d}|A| max_t R_t(B)) <= |Delta(A, B)|`.
pub fn verify_dist_formula(cfg: &RunConfig) -> Result<VerificationReport> {
    let started = Instant::now();
    cfg.validate()?;
    let mut report = VerificationReport::new(TheoremId::DistFormula, cfg);
    report.note("the bound is taken with both argument orders and the larger is checked");
    report.note("max_t R_t ranges over all of F_q, t = 0 included");
    let samples = cfg.samples_or(10_000);
    let fields = cfg.build_fields()?;
    for (fi, field) in fields.iter().enumerate() {
        for (di, &d) in cfg.dims.iter().enumerate() {
            let q = field.q();
            if q == 3 && d == 2 {
                let a = PointSet::full(field, 2)?;
                let b = CoordinatePlane::new(2, &[0])?.enumerate(field)?;
                let mut out = formula_instance(field, u64::MAX, "q=3,d=2,full plane vs x_1-axis".into(), &a, &b)?;
                out.instance.checks.push(Check::close(
                    "worked_bound_is_1.8",
                    distance_lower_bound(field, &a, &b)?,
                    1.8,
                    1e-12,
                ));
                report.record(out);
            }
            let group = (fi * cfg.dims.len() + di) as u64;
            report.extend(sweep(samples, |i| {
                let (a, b) = random_pair(field, d, cfg.seed, group, i)?;
                formula_instance(field, i, format!("q={q},d={d}"), &a, &b)
            })?);
        }
    }
    Ok(report.finish(started))
}

/// `|Delta(A, B)| >= (1/2) min{q, |A||B|/q^d}` on random pairs.
pub fn verify_shparlinski(cfg: &RunConfig) -> Result<VerificationReport> {
    let started = Instant::now();
    cfg.validate()?;
    let mut report = VerificationReport::new(TheoremId::Shparlinski, cfg);
    let samples = cfg.samples_or(1000);
    let fields = cfg.build_fields()?;
    for (fi, field) in fields.iter().enumerate() {
        for (di, &d) in cfg.dims.iter().enumerate() {
            let q = field.q();
            let group = (fi * cfg.dims.len() + di) as u64;
            report.extend(sweep(samples, |i| {
                let (a, b) = random_pair(field, d, cfg.seed, group, i)?;
                let size = delta_standard(field, &a, &b)?.len();
                let mut inst = Instance::new(i, format!("q={q},d={d}"), q, d).sizes(a.len(), b.len());
                inst.delta_size = Some(size);
                inst.checks = vec![Check::ge(
                    "shparlinski",
                    size as f64,
                    shparlinski_bound(q, d, a.len(), b.len()),
                )];
                Ok(Outcome::with_sets(inst, &a, Some(&b)))
            })?);
        }
    }
    Ok(report.finish(started))
}
