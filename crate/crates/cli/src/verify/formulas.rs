//! Closed forms against direct summation or enumeration.

use std::time::Instant;

use fqdist_core::constructions::{difference_set, make_c_delta, make_omega_delta};
use fqdist_core::field::{Field, Fq};
use fqdist_core::geometry::{
    decode, sphere_cardinality, sphere_sizes_enumerated, CoordinatePlane, PointSet,
};
use fqdist_core::spectral::{v0_fourier_formula, FourierTable, V0Variety};
use num_complex::Complex64;
use rand::Rng;

use super::{check_dims, instance_rng, q_pow, random_plane, sweep};
use crate::config::RunConfig;
use crate::error::Result;
use crate::report::{Check, Instance, Outcome, TheoremId, VerificationReport};

/// Tolerance on Gauss-sum and complete-square identities.
const SUM_TOL: f64 = 1e-6;
/// Tolerance on the `V_0` transform.
const V0_TOL: f64 = 1e-8;

fn field_label(field: &Field) -> String {
    format!("q={}", field.q())
}

pub fn verify_formulas(cfg: &RunConfig) -> Result<Vec<VerificationReport>> {
    Ok(vec![
        verify_corm(cfg)?,
        verify_com_squ(cfg)?,
        verify_def_vft(cfg)?,
        verify_sphere_size(cfg)?,
        verify_lem_con(cfg)?,
        verify_pro_res(cfg)?,
    ])
}

/// `G_1^2 = eta(-1) q` and `|G_a|^2 = q`.
pub fn verify_corm(cfg: &RunConfig) -> Result<VerificationReport> {
    let started = Instant::now();
    cfg.validate()?;
    let mut report = VerificationReport::new(TheoremId::Corm, cfg);
    for field in cfg.build_fields()? {
        let q = field.q() as f64;
        let g1 = field.gauss_sum(Fq::ONE)?;
        let sq = g1 * g1;
        let eta_m1 = field.eta(field.neg(Fq::ONE)) as f64;
        for a in field.nonzero_elements() {
            let g = field.gauss_sum(a)?;
            let by_squares: Complex64 = field
                .elements()
                .map(|s| field.chi(field.mul(a, field.square(s))))
                .sum();
            let mut inst = Instance::new(a.0 as u64, format!("{},a={a}", field_label(&field)), field.q(), 1);
            inst.checks.push(Check::close("abs_g_a_squared", g.norm_sqr(), q, SUM_TOL));
            inst.checks.push(Check::close(
                "g_a_vs_sum_of_chi_a_s2",
                (g - by_squares).norm(),
                0.0,
                SUM_TOL,
            ));
            if a == Fq::ONE {
                inst.checks.push(Check::close("g1_squared_re", sq.re, eta_m1 * q, SUM_TOL));
                inst.checks.push(Check::close("g1_squared_im", sq.im, 0.0, SUM_TOL));
            }
            report.record(Outcome::bare(inst));
        }
    }
    Ok(report.finish(started))
}

/// `sum_s chi(a s^2 + b s)` in closed form against direct summation.
pub fn verify_com_squ(cfg: &RunConfig) -> Result<VerificationReport> {
    let started = Instant::now();
    cfg.validate()?;
    let mut report = VerificationReport::new(TheoremId::ComSqu, cfg);
    for field in cfg.build_fields()? {
        let q = field.q();
        let pairs: Vec<(Fq, Fq)> = field
            .nonzero_elements()
            .flat_map(|a| field.elements().map(move |b| (a, b)))
            .collect();
        report.extend(sweep(pairs.len(), |i| {
            let (a, b) = pairs[i as usize];
            let closed = field.complete_square_closed(a, b)?;
            let direct = field.complete_square_direct(a, b);
            let mut inst = Instance::new(i, format!("q={q},a={a},b={b}"), q, 1);
            inst.checks = vec![
                Check::close("closed_vs_direct_re", closed.re, direct.re, SUM_TOL),
                Check::close("closed_vs_direct_im", closed.im, direct.im, SUM_TOL),
            ];
            Ok(Outcome::bare(inst))
        })?);
    }
    Ok(report.finish(started))
}

/// The `V_0` transform at every `M` in `F_q^{2d}`, plus the same sums under
/// a second nontrivial character.
pub fn verify_def_vft(cfg: &RunConfig) -> Result<VerificationReport> {
    let started = Instant::now();
    cfg.validate()?;
    check_dims(cfg, 1, "defVFT")?;
    let mut report = VerificationReport::new(TheoremId::DefVft, cfg);
    report.note("brute force is q^{-2d} sum_{X in V_0} chi(-M.X) over the enumerated variety");
    report.note("twisted_character repeats the brute force with t -> chi(2t)");
    for field in cfg.build_fields()? {
        for &d in &cfg.dims {
            let q = field.q();
            let n = (q as u128).pow(2 * d as u32);
            field.check_scan(n * n / q as u128)?;
            let v0 = V0Variety::enumerate(&field, d)?;
            let twist = field.from_int(2);
            report.extend(sweep(n as usize, |i| {
                let m = decode(i, q, 2 * d);
                let closed = v0_fourier_formula(&field, &m)?;
                let brute = v0.fourier_at(&field, &m)?;
                let twisted = v0.fourier_at_twisted(&field, &m, twist)?;
                let mut inst = Instance::new(i, format!("q={q},d={d},M={i}"), q, d);
                inst.checks = vec![
                    Check::close("closed_vs_brute_re", closed, brute.re, V0_TOL),
                    Check::close("brute_im", brute.im, 0.0, V0_TOL),
                    Check::close("twisted_character", closed, twisted.re, V0_TOL),
                ];
                Ok(Outcome::bare(inst))
            })?);
        }
    }
    Ok(report.finish(started))
}

/// Sphere sizes in closed form against one enumeration of `F_q^d`.
pub fn verify_sphere_size(cfg: &RunConfig) -> Result<VerificationReport> {
    let started = Instant::now();
    cfg.validate()?;
    check_dims(cfg, 2, "SphereSize")?;
    let mut report = VerificationReport::new(TheoremId::SphereSize, cfg);
    for field in cfg.build_fields()? {
        for &d in &cfg.dims {
            let q = field.q();
            let counts = sphere_sizes_enumerated(&field, d)?;
            for t in field.elements() {
                let mut inst = Instance::new(t.0 as u64, format!("q={q},d={d},t={t}"), q, d);
                inst.checks.push(Check::exact(
                    "formula_vs_enumeration",
                    sphere_cardinality(&field, t, d)?,
                    counts[t.0 as usize],
                ));
                if t.is_zero() {
                    inst.checks.push(Check::exact(
                        "sizes_sum_to_qd",
                        counts.iter().sum(),
                        q_pow(&field, d) as u64,
                    ));
                }
                report.record(Outcome::bare(inst));
            }
        }
    }
    Ok(report.finish(started))
}

/// `|Omega_delta|` and `|Omega_delta - Omega_delta|` against their exact
/// counts, and the doubling ratio against `2^ell`.
pub fn verify_lem_con(cfg: &RunConfig) -> Result<VerificationReport> {
    let started = Instant::now();
    cfg.validate()?;
    let mut report = VerificationReport::new(TheoremId::LemCon, cfg);
    report.note("C - C is an interval of min(2|C| - 1, p) residues, so |Omega - Omega| = min(2|C| - 1, p)^ell");
    for field in cfg.build_fields()? {
        for (j, &delta) in cfg.deltas.iter().enumerate() {
            let c = make_c_delta(&field, delta)?.len() as u64;
            let omega = make_omega_delta(&field, delta)?;
            let diff = difference_set(&field, &omega)?;
            let ell = field.ell();
            let q = field.q();
            let mut inst = Instance::new(j as u64, format!("q={q},delta={delta}"), q, 1)
                .sizes(omega.len(), omega.len());
            inst.checks = vec![
                Check::exact("omega_size", omega.len() as u64, c.pow(ell)),
                Check::exact(
                    "difference_size",
                    diff.len() as u64,
                    (2 * c - 1).min(field.p() as u64).pow(ell),
                ),
                Check::le(
                    "doubling_ratio",
                    diff.len() as f64 / omega.len() as f64,
                    2f64.powi(ell as i32),
                ),
            ];
            report.record(Outcome::with_sets(inst, &omega, Some(&diff)));
        }
    }
    Ok(report.finish(started))
}

fn restriction_instance(field: &Field, i: u64, label: String, b: &PointSet, twisted: bool) -> Result<Outcome> {
    let profile = FourierTable::compute(field, b)?.restriction_profile(field);
    let mut inst = Instance::new(i, label, field.q(), b.dim()).sizes(b.len(), b.len());
    inst.checks = vec![
        Check::le("max_r_t_le_2q^{-d-1}|B|", profile.max(), profile.coordinatable_bound()),
        Check::le("max_r_t_le_q^{-d}|B|", profile.max(), profile.plancherel_bound()),
    ];
    if twisted {
        let other = FourierTable::compute_twisted(field, b, field.from_int(2))?
            .restriction_profile(field);
        inst.checks
            .push(Check::close("max_r_t_twisted", other.max(), profile.max(), 1e-12));
    }
    Ok(Outcome::with_sets(inst, b, None))
}

/// Instances per configuration that also recompute under a second character.
const TWISTED_SPOT_CHECKS: u64 = 10;

/// `max_t R_t(B) <= 2 q^{-d-1} |B|` for coordinatable `B`.
pub fn verify_pro_res(cfg: &RunConfig) -> Result<VerificationReport> {
    let started = Instant::now();
    cfg.validate()?;
    check_dims(cfg, 2, "ProRes")?;
    let mut report = VerificationReport::new(TheoremId::ProRes, cfg);
    report.note("q=3, d=2 is exhaustive over the nonempty subsets of the x_1-axis");
    let samples = cfg.samples_or(1000);
    let fields = cfg.build_fields()?;
    for (fi, field) in fields.iter().enumerate() {
        for (di, &d) in cfg.dims.iter().enumerate() {
            let q = field.q();
            if q == 3 && d == 2 {
                let axis: Vec<[Fq; 2]> = field.elements().map(|x| [x, Fq::ZERO]).collect();
                report.extend(sweep(7, |i| {
                    let mask = i + 1;
                    let b = PointSet::new(
                        field,
                        2,
                        axis.iter().enumerate().filter(|(j, _)| mask >> j & 1 == 1).map(|(_, x)| *x),
                    )?;
                    restriction_instance(field, i, format!("q=3,d=2,mask={mask}"), &b, true)
                })?);
                let line = CoordinatePlane::new(2, &[0])?.enumerate(field)?;
                let profile = FourierTable::compute(field, &line)?.restriction_profile(field);
                let mut inst = Instance::new(7, "q=3,d=2,full line", q, 2).sizes(3, 3);
                inst.checks = vec![
                    Check::close("max_r_t_equals_bound", profile.max(), profile.coordinatable_bound(), 1e-12),
                    Check::close("max_r_t_is_2/9", profile.max(), 2.0 / 9.0, 1e-12),
                ];
                report.record(Outcome::bare(inst));
                continue;
            }
            let group = (fi * cfg.dims.len() + di) as u64;
            report.extend(sweep(samples, |i| {
                let mut rng = instance_rng(cfg.seed, group, i);
                let k = rng.gen_range(1..d);
                let (plane, kind) = random_plane(field, d, k, &mut rng)?;
                let n = rng.gen_range(1..=q_pow(field, k));
                let b = plane.sample_subset(field, n, &mut rng)?;
                let label = format!("q={q},d={d},k={k},{kind}");
                restriction_instance(field, i, label, &b, i < TWISTED_SPOT_CHECKS)
            })?);
        }
    }
    Ok(report.finish(started))
}
