//! The main theorem and its consequences: coordinatable sets, lines of
//! rotatable slope, sets containing a large coordinatable subset, large sets,
//! and box sets.

use std::collections::BTreeSet;
use std::time::Instant;

use fqdist_core::constructions::{box_reduction, slice_extract};
use fqdist_core::distance::{box_set, delta_standard, half_q_ceiling};
use fqdist_core::field::{Field, Fq};
use fqdist_core::geometry::{
    line_l, random_subset, rotatable_slopes, CoordinatablePlane, PointSet,
};
use rand::Rng;

use super::{
    ceil_robust, check_dims, coordinatable_pair, instance_rng, q_pow, random_plane, size_near,
    sweep,
};
use crate::config::RunConfig;
use crate::error::Result;
use crate::report::{Check, Instance, Outcome, TheoremId, VerificationReport};

const HALF_Q_NOTE: &str = "q/2 is checked as ceil(q/2), the least integer at or above it";

fn set_from_mask(field: &Field, d: usize, universe: &[Vec<Fq>], mask: u64) -> Result<PointSet> {
    let pts = universe
        .iter()
        .enumerate()
        .filter(|(i, _)| mask >> i & 1 == 1)
        .map(|(_, x)| x.clone());
    Ok(PointSet::new(field, d, pts)?)
}

pub fn verify_mainthm(cfg: &RunConfig) -> Result<VerificationReport> {
    let started = Instant::now();
    cfg.validate()?;
    check_dims(cfg, 2, "mainthm")?;
    let mut report = VerificationReport::new(TheoremId::MainThm, cfg);
    report.note(HALF_Q_NOTE);
    report.note(
        "every instance also checks (1/2)min{q, |A||B|/(2q^{d-1})} and (1/2)min{q, |A||B|/q^d}, \
         whatever |A||B| is",
    );
    report.note("q=3, d=2 is exhaustive over B in the x_1-axis and all A in F_3^2");
    let samples = cfg.samples_or(10_000);
    let below = samples / 10;
    let fields = cfg.build_fields()?;
    for (fi, field) in fields.iter().enumerate() {
        for (di, &d) in cfg.dims.iter().enumerate() {
            let group = (fi * cfg.dims.len() + di) as u64;
            if field.q() == 3 && d == 2 {
                report.extend(mainthm_exhaustive(field)?);
            } else {
                report.extend(sweep(samples + below, |i| {
                    mainthm_instance(field, d, cfg.seed, group, i, i < samples as u64)
                })?);
            }
        }
    }
    Ok(report.finish(started))
}

/// All `2^3 * 2^9` pairs with `B` on the `x_1`-axis of `F_3^2`.
fn mainthm_exhaustive(field: &Field) -> Result<Vec<Outcome>> {
    let universe: Vec<Vec<Fq>> = (0..9u64)
        .map(|c| fqdist_core::geometry::decode(c, 3, 2))
        .collect();
    let axis: Vec<Vec<Fq>> = field.elements().map(|x| vec![x, Fq::ZERO]).collect();
    sweep(8 * 512, |i| {
        let (bmask, amask) = (i / 512, i % 512);
        let b = set_from_mask(field, 2, &axis, bmask)?;
        let a = set_from_mask(field, 2, &universe, amask)?;
        let label = format!("q=3,d=2,k=1,bmask={bmask},amask={amask}");
        if a.is_empty() || b.is_empty() {
            let mut inst = Instance::new(i, label, 3, 2).sizes(a.len(), b.len());
            inst.hypothesis_met = false;
            return Ok(Outcome::bare(inst));
        }
        coordinatable_pair(field, i, label, &a, &b)
    })
}

fn mainthm_instance(field: &Field, d: usize, seed: u64, group: u64, i: u64, above: bool) -> Result<Outcome> {
    let mut rng = instance_rng(seed, group, i);
    let k = rng.gen_range(1..d);
    let (plane, kind) = random_plane(field, d, k, &mut rng)?;
    let qd = q_pow(field, d);
    let nb = rng.gen_range(2..=q_pow(field, k));
    let na_min = (2 * qd).div_ceil(nb);
    let na = if above {
        size_near(&mut rng, na_min, qd)
    } else {
        na_min.saturating_sub(1 + rng.gen_range(0..3)).max(1)
    };
    let b = plane.sample_subset(field, nb, &mut rng)?;
    let a = random_subset(field, d, na, &mut rng)?;
    let label = format!("q={},d={d},k={k},{kind}", field.q());
    coordinatable_pair(field, i, label, &a, &b)
}

pub fn verify_mainthm_c(cfg: &RunConfig) -> Result<VerificationReport> {
    let started = Instant::now();
    cfg.validate()?;
    let mut report = VerificationReport::new(TheoremId::MainThmC, cfg);
    report.note(HALF_Q_NOTE);
    report.note("planar statement: run at d = 2 whatever dims are configured");
    let samples = cfg.samples_or(200);
    let fields = cfg.build_fields()?;
    for (fi, field) in fields.iter().enumerate() {
        let good = rotatable_slopes(field);
        for lambda in field.elements() {
            if !good.contains(&lambda) {
                let s = field.add(Fq::ONE, field.square(lambda));
                report.note(format!(
                    "q={}, lambda={lambda}: eta(1 + lambda^2) = {}, skipped",
                    field.q(),
                    field.eta(s)
                ));
                continue;
            }
            let group = (fi as u64) << 16 | lambda.0 as u64;
            report.extend(sweep(samples, |i| {
                mainthm_c_instance(field, lambda, cfg.seed, group, i)
            })?);
        }
    }
    Ok(report.finish(started))
}

fn mainthm_c_instance(field: &Field, lambda: Fq, seed: u64, group: u64, i: u64) -> Result<Outcome> {
    let mut rng = instance_rng(seed, group, i);
    let q = field.q();
    let a0 = Fq(rng.gen_range(0..q));
    let b0 = Fq(rng.gen_range(0..q));
    let line = CoordinatablePlane::line(field, lambda, a0, b0)?;
    let witnessed = line.enumerate(field)? == line_l(field, lambda, a0, b0);
    let nb = rng.gen_range(2..=q as usize);
    let qd = q_pow(field, 2);
    let na = size_near(&mut rng, (2 * qd).div_ceil(nb), qd);
    let b = line.sample_subset(field, nb, &mut rng)?;
    let a = random_subset(field, 2, na, &mut rng)?;
    let label = format!("q={q},lambda={lambda},a={a0},b={b0}");
    let mut out = coordinatable_pair(field, i, label, &a, &b)?;
    out.instance
        .checks
        .insert(0, Check::truth("line_rotates_to_axis", witnessed));
    if !witnessed && out.set_a.is_none() {
        out.set_a = Some(a);
        out.set_b = Some(b);
    }
    Ok(out)
}

/// `|B|` forced by `|B| >= |A|^alpha`.
fn forced_b(na: usize, alpha: f64) -> usize {
    ceil_robust((na as f64).powf(alpha))
}

pub fn verify_pro_k(cfg: &RunConfig) -> Result<VerificationReport> {
    let started = Instant::now();
    cfg.validate()?;
    check_dims(cfg, 2, "ProK")?;
    let alpha = cfg.alpha;
    let mut report = VerificationReport::new(TheoremId::ProK, cfg);
    report.note(HALF_Q_NOTE);
    report.note("B is the smallest allowed, ceil(|A|^alpha) points, on a plane of dimension at most d-1");
    let samples = cfg.samples_or(200);
    let fields = cfg.build_fields()?;
    for (fi, field) in fields.iter().enumerate() {
        for (di, &d) in cfg.dims.iter().enumerate() {
            let q = field.q() as f64;
            let qd = q_pow(field, d);
            let cap = q_pow(field, d - 1);
            let threshold = 2f64.powf(1.0 / (alpha + 1.0)) * q.powf(d as f64 / (1.0 + alpha));
            let sizes: Vec<usize> = (ceil_robust(threshold)..=qd)
                .filter(|&na| {
                    let nb = forced_b(na, alpha);
                    nb <= cap && nb <= na
                })
                .collect();
            if sizes.is_empty() {
                report.note(format!(
                    "q={}, d={d}, alpha={alpha}: no instance fits in F_q^d \
                     (|A| >= {threshold:.4} forces |B| > q^(d-1) = {cap}), skipped",
                    field.q()
                ));
                continue;
            }
            let group = (fi * cfg.dims.len() + di) as u64;
            report.extend(sweep(samples, |i| {
                pro_k_instance(field, d, alpha, threshold, &sizes, cfg.seed, group, i)
            })?);
        }
    }
    Ok(report.finish(started))
}

#[allow(clippy::too_many_arguments)]
fn pro_k_instance(
    field: &Field,
    d: usize,
    alpha: f64,
    threshold: f64,
    sizes: &[usize],
    seed: u64,
    group: u64,
    i: u64,
) -> Result<Outcome> {
    let mut rng = instance_rng(seed, group, i);
    let na = sizes[size_near(&mut rng, 0, sizes.len() - 1)];
    let nb = forced_b(na, alpha);
    let q = field.q() as usize;
    let kmin = (1..d).find(|&k| q.pow(k as u32) >= nb).expect("nb fits in q^(d-1)");
    let k = rng.gen_range(kmin..d);
    let (plane, kind) = random_plane(field, d, k, &mut rng)?;
    let b = plane.sample_subset(field, nb, &mut rng)?;
    let qd = q_pow(field, d) as u64;
    let mut codes: BTreeSet<u64> = b.codes().iter().copied().collect();
    while codes.len() < na {
        codes.insert(rng.gen_range(0..qd));
    }
    let a = PointSet::from_codes(field.q(), d, codes.into_iter().collect());
    let size = delta_standard(field, &a, &a)?.len();
    let mut inst = Instance::new(i, format!("q={q},d={d},k={k},{kind},alpha={alpha}"), field.q(), d)
        .sizes(na, nb);
    inst.delta_size = Some(size);
    inst.checks = vec![
        Check::truth("b_subset_of_a", b.is_subset_of(&a)),
        Check::ge("b_ge_a_pow_alpha", nb as f64, (na as f64).powf(alpha)),
        Check::ge("a_ge_threshold", na as f64, threshold),
        Check::ge("ab_ge_2qd", (na * nb) as f64, 2.0 * qd as f64),
        Check::ge("half_q", size as f64, half_q_ceiling(field.q()) as f64),
    ];
    Ok(Outcome::with_sets(inst, &a, Some(&b)))
}

pub fn verify_maincor(cfg: &RunConfig) -> Result<VerificationReport> {
    let started = Instant::now();
    cfg.validate()?;
    check_dims(cfg, 2, "maincor")?;
    let mut report = VerificationReport::new(TheoremId::MainCor, cfg);
    report.note(HALF_Q_NOTE);
    report.note("the coordinatable witness is the most populated slice x_d = j, moved by -j e_d");
    let samples = cfg.samples_or(200);
    let fields = cfg.build_fields()?;
    for (fi, field) in fields.iter().enumerate() {
        for (di, &d) in cfg.dims.iter().enumerate() {
            let q = field.q() as f64;
            let qd = q_pow(field, d);
            let threshold = 2f64.sqrt() * q.powf((d as f64 + 1.0) / 2.0);
            let na_min = ceil_robust(threshold);
            if na_min > qd {
                report.note(format!(
                    "q={}, d={d}: |A| >= {threshold:.4} exceeds q^d = {qd}, skipped",
                    field.q()
                ));
                continue;
            }
            let group = (fi * cfg.dims.len() + di) as u64;
            if field.q() == 3 && d == 2 {
                let masks: Vec<u64> = (0..512u64)
                    .filter(|m| m.count_ones() as usize >= na_min)
                    .collect();
                let universe: Vec<Vec<Fq>> = (0..9u64)
                    .map(|c| fqdist_core::geometry::decode(c, 3, 2))
                    .collect();
                report.extend(sweep(masks.len(), |i| {
                    let a = set_from_mask(field, 2, &universe, masks[i as usize])?;
                    maincor_instance(field, i, format!("q=3,d=2,amask={}", masks[i as usize]), &a)
                })?);
            } else {
                report.extend(sweep(samples + 1, |i| {
                    if i == 0 {
                        let a = PointSet::full(field, d)?;
                        return maincor_instance(field, 0, format!("q={},d={d},full", field.q()), &a);
                    }
                    let mut rng = instance_rng(cfg.seed, group, i);
                    let na = size_near(&mut rng, na_min, qd);
                    let a = random_subset(field, d, na, &mut rng)?;
                    maincor_instance(field, i, format!("q={},d={d}", field.q()), &a)
                })?);
            }
        }
    }
    Ok(report.finish(started))
}

fn maincor_instance(field: &Field, i: u64, label: String, a: &PointSet) -> Result<Outcome> {
    let q = field.q();
    let d = a.dim();
    let slice = slice_extract(field, a)?;
    let moved = slice.witness.apply_set(field, &slice.points)?;
    let on_plane = moved.iter().all(|x| x[d - 1].is_zero());
    let (na, nb) = (a.len(), slice.points.len());
    let size = delta_standard(field, a, a)?.len();
    let mut inst = Instance::new(i, label, q, d).sizes(na, nb);
    inst.delta_size = Some(size);
    inst.checks = vec![
        Check::ge("slice_ge_a_over_q", nb as f64, na as f64 / q as f64),
        Check::truth("slice_moves_to_coordinate_plane", on_plane),
        Check::ge("a_slice_ge_2qd", (na * nb) as f64, 2.0 * (q as f64).powi(d as i32)),
        Check::ge("half_q", size as f64, half_q_ceiling(q) as f64),
    ];
    Ok(Outcome::with_sets(inst, a, Some(&slice.points)))
}

/// Smallest `n` with `n^2 (n - 1) / 4 >= 2 q^2`.
pub fn box_threshold(q: u32) -> usize {
    let target = 8 * (q as u128).pow(2);
    (1..).find(|&n: &u128| n * n * (n - 1) >= target).unwrap() as usize
}

/// All `k`-subsets of `0..n` in lexicographic order.
fn combinations(n: u32, k: usize) -> Vec<Vec<u32>> {
    let mut out = Vec::new();
    if k as u32 > n {
        return out;
    }
    let mut c: Vec<u32> = (0..k as u32).collect();
    loop {
        out.push(c.clone());
        let Some(i) = (0..k).rev().find(|&i| c[i] < n - (k - i) as u32) else {
            return out;
        };
        c[i] += 1;
        for j in i + 1..k {
            c[j] = c[j - 1] + 1;
        }
    }
}

/// Subsets of `F_q` checked link by link when exhaustive.
const LINK_EXHAUSTIVE_LIMIT: usize = 50_000;

pub fn verify_thm_k(cfg: &RunConfig) -> Result<VerificationReport> {
    let started = Instant::now();
    cfg.validate()?;
    let mut report = VerificationReport::new(TheoremId::ThmK, cfg);
    report.note(HALF_Q_NOTE);
    report.note(
        "the size hypothesis is |E|^2(|E|-1)/4 >= 2q^2, which gives |E_1||E_2||E| >= 2q^2 \
         for the alternating split",
    );
    report.note("one-dimensional statement: dims are ignored");
    let samples = cfg.samples_or(100);
    let fields = cfg.build_fields()?;
    for (fi, field) in fields.iter().enumerate() {
        let q = field.q();
        if field.eta(field.from_int(2)) != 1 {
            report.note(format!("q={q}: 2 is not a square, skipped"));
            continue;
        }
        let n_min = box_threshold(q);
        let small: Vec<Vec<u32>> = (2..=5usize.min(q as usize))
            .flat_map(|k| combinations(q, k))
            .take(LINK_EXHAUSTIVE_LIMIT + 1)
            .collect();
        let group = (fi as u64) << 1;
        if small.len() <= LINK_EXHAUSTIVE_LIMIT {
            report.extend(sweep(small.len(), |i| {
                let e = PointSet::new(field, 1, small[i as usize].iter().map(|&x| [Fq(x)]))?;
                box_instance(field, i, n_min, &e, false)
            })?);
        } else {
            report.extend(sweep(samples, |i| {
                let mut rng = instance_rng(cfg.seed, group, i);
                let n = rng.gen_range(2..=5);
                let e = random_subset(field, 1, n, &mut rng)?;
                box_instance(field, i, n_min, &e, false)
            })?);
        }
        if n_min > q as usize {
            report.note(format!(
                "q={q}: the chain needs |E| >= {n_min} > q; inclusion checked link by link only"
            ));
            continue;
        }
        let offset = 1u64 << 31;
        report.extend(sweep(samples, |i| {
            let mut rng = instance_rng(cfg.seed, group | 1, i);
            let n = size_near(&mut rng, n_min, q as usize);
            let e = random_subset(field, 1, n, &mut rng)?;
            box_instance(field, offset + i, n_min, &e, true)
        })?);
    }
    Ok(report.finish(started))
}

fn box_instance(field: &Field, i: u64, n_min: usize, e: &PointSet, chain: bool) -> Result<Outcome> {
    let q = field.q();
    let r = box_reduction(field, e)?;
    let boxed = box_set(field, e)?;
    let reduced = delta_standard(field, &r.a, &r.b)?;
    let missing = reduced.values().iter().filter(|&&t| !boxed.contains(t)).count();
    let mut inst = Instance::new(i, format!("q={q},|E|={}", e.len()), q, 2).sizes(r.a.len(), r.b.len());
    inst.delta_size = Some(reduced.len());
    inst.hypothesis_met = e.len() >= n_min;
    inst.checks = vec![
        Check::truth("split_valid", r.split_is_valid()),
        Check::exact("product_size", r.a.len() as u64, (r.e1.len() * r.e2.len()) as u64),
        Check::exact("reduced_values_missing_from_box", missing as u64, 0),
    ];
    if chain {
        let half = half_q_ceiling(q) as f64;
        inst.checks.extend([
            Check::truth("diagonal_is_coordinatable", rotatable_slopes(field).contains(&Fq::ONE)),
            Check::ge("ab_ge_2q2", (r.a.len() * r.b.len()) as f64, 2.0 * (q as f64).powi(2)),
            Check::ge("half_q_reduced", reduced.len() as f64, half),
            Check::ge("half_q_box", boxed.len() as f64, half),
        ]);
    }
    Ok(Outcome::with_sets(inst, e, None))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn box_thresholds() {
        assert_eq!(box_threshold(25), 18);
        assert_eq!(box_threshold(7), 8);
    }

    #[test]
    fn combination_counts() {
        assert_eq!(combinations(7, 2).len(), 21);
        assert_eq!(combinations(7, 5).len(), 21);
        assert_eq!(combinations(3, 3), vec![vec![0, 1, 2]]);
        assert!(combinations(2, 3).is_empty());
    }
}
