//! Verifiers: each sweeps a family of instances and records every
//! inequality or identity it evaluates.
//!
//! Instances run in parallel but are drawn from their own RNG stream and
//! collected in index order, so a report depends only on the configuration.

mod bounds;
mod formulas;
mod sharpness;
mod theorems;

use std::str::FromStr;

use clap::ValueEnum;
use fqdist_core::distance::{coordinatable_bound, delta_standard, half_q_ceiling, shparlinski_bound};
use fqdist_core::field::Field;
use fqdist_core::geometry::{CoordinatablePlane, CoordinatePlane, PointSet};
use fqdist_core::spectral::distance_lower_bound_from;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::config::RunConfig;
use crate::error::{HarnessError, Result};
use crate::report::{Check, Instance, Outcome, TheoremId, VerificationReport};

pub use bounds::{verify_dist_formula, verify_shparlinski};
pub use formulas::{
    verify_com_squ, verify_corm, verify_def_vft, verify_formulas, verify_lem_con, verify_pro_res,
    verify_sphere_size,
};
pub use sharpness::{verify_p11_even, verify_p11_odd};
pub use theorems::{verify_maincor, verify_mainthm, verify_mainthm_c, verify_pro_k, verify_thm_k};

/// What `fqdist verify` was asked to run.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Target {
    One(TheoremId),
    /// The six closed-form families together.
    Formulas,
}

impl FromStr for Target {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        if s == "formulas" {
            return Ok(Target::Formulas);
        }
        TheoremId::from_str(s, false).map(Target::One).map_err(|_| {
            let names: Vec<String> = TheoremId::value_variants()
                .iter()
                .map(|v| v.as_str().to_string())
                .collect();
            format!("unknown theorem id `{s}`; expected formulas or one of {}", names.join(", "))
        })
    }
}

pub fn run(id: TheoremId, cfg: &RunConfig) -> Result<VerificationReport> {
    match id {
        TheoremId::MainThm => verify_mainthm(cfg),
        TheoremId::MainThmC => verify_mainthm_c(cfg),
        TheoremId::MainCor => verify_maincor(cfg),
        TheoremId::ProK => verify_pro_k(cfg),
        TheoremId::ProRes => verify_pro_res(cfg),
        TheoremId::ThmK => verify_thm_k(cfg),
        TheoremId::Shparlinski => verify_shparlinski(cfg),
        TheoremId::DistFormula => verify_dist_formula(cfg),
        TheoremId::SphereSize => verify_sphere_size(cfg),
        TheoremId::DefVft => verify_def_vft(cfg),
        TheoremId::LemCon => verify_lem_con(cfg),
        TheoremId::P11Odd => verify_p11_odd(cfg),
        TheoremId::P11Even => verify_p11_even(cfg),
        TheoremId::Corm => verify_corm(cfg),
        TheoremId::ComSqu => verify_com_squ(cfg),
    }
}

pub fn run_target(target: Target, cfg: &RunConfig) -> Result<Vec<VerificationReport>> {
    match target {
        Target::One(id) => Ok(vec![run(id, cfg)?]),
        Target::Formulas => verify_formulas(cfg),
    }
}

/// The RNG for one instance. `group` separates sweeps within a run.
pub fn instance_rng(seed: u64, group: u64, index: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream((group << 32) | index);
    rng
}

/// Evaluates `f` on `0..n` in parallel, keeping index order.
fn sweep<F>(n: usize, f: F) -> Result<Vec<Outcome>>
where
    F: Fn(u64) -> Result<Outcome> + Sync + Send,
{
    (0..n as u64).into_par_iter().map(f).collect()
}

/// `ceil(x)`, treating values within rounding error of an integer as that
/// integer.
fn ceil_robust(x: f64) -> usize {
    let r = x.round();
    if (x - r).abs() < 1e-9 {
        r as usize
    } else {
        x.ceil() as usize
    }
}

/// A size in `[lo, hi]`: half the time within two of `lo`, otherwise uniform.
fn size_near<R: Rng>(rng: &mut R, lo: usize, hi: usize) -> usize {
    debug_assert!(lo <= hi);
    if rng.gen_bool(0.5) {
        lo + rng.gen_range(0..=(hi - lo).min(2))
    } else {
        rng.gen_range(lo..=hi)
    }
}

fn q_pow(field: &Field, d: usize) -> usize {
    (field.q() as usize).pow(d as u32)
}

fn check_dims(cfg: &RunConfig, min: usize, what: &str) -> Result<()> {
    match cfg.dims.iter().find(|&&d| d < min) {
        Some(d) => Err(HarnessError::Config(format!("{what} needs d >= {min}, got {d}"))),
        None => Ok(()),
    }
}

/// A `k`-coordinatable plane: half the time a bare coordinate plane, half the
/// time a rotated and translated one.
fn random_plane<R: Rng>(field: &Field, d: usize, k: usize, rng: &mut R) -> Result<(CoordinatablePlane, &'static str)> {
    if rng.gen_bool(0.5) {
        let mut axes = rand::seq::index::sample(rng, d, k).into_vec();
        axes.sort_unstable();
        let plane = CoordinatePlane::new(d, &axes)?;
        Ok((CoordinatablePlane::coordinate(plane), "coordinate"))
    } else {
        Ok((CoordinatablePlane::random(field, d, k, rng)?, "moved"))
    }
}

/// `|Delta(A, B)|` against the coordinatable-set bounds. The `q/2` check is
/// only made when `|A||B| >= 2 q^d`.
fn coordinatable_pair(
    field: &Field,
    index: u64,
    label: String,
    a: &PointSet,
    b: &PointSet,
) -> Result<Outcome> {
    let d = a.dim();
    let q = field.q();
    let (na, nb) = (a.len(), b.len());
    let mut inst = Instance::new(index, label, q, d).sizes(na, nb);
    let size = delta_standard(field, a, b)?.len();
    inst.delta_size = Some(size);
    let ab = na as f64 * nb as f64;
    inst.hypothesis_met = ab >= 2.0 * (q as f64).powi(d as i32);
    if inst.hypothesis_met {
        inst.checks
            .push(Check::ge("half_q", size as f64, half_q_ceiling(q) as f64));
    }
    let restricted = 2.0 * nb as f64 * (q as f64).powi(-(d as i32) - 1);
    inst.checks.push(Check::ge(
        "formula_with_restriction_bound",
        size as f64,
        distance_lower_bound_from(q, d, na, nb, restricted),
    ));
    inst.checks.push(Check::ge(
        "coordinatable_min_form",
        size as f64,
        coordinatable_bound(q, d, na, nb),
    ));
    inst.checks.push(Check::ge(
        "shparlinski",
        size as f64,
        shparlinski_bound(q, d, na, nb),
    ));
    Ok(Outcome::with_sets(inst, a, Some(b)))
}
