//! Fourier analysis of indicator functions on `F_q^d` and the quantities
//! that feed the distance-set lower bound.
//!
//! Normalization: `E^(m) = q^{-d} sum_{x in E} chi(-m . x)`, so that
//! `sum_m |E^(m)|^2 = q^{-d} |E|` and `1_E(x) = sum_m chi(m . x) E^(m)`.

use num_complex::Complex64;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::field::{char_sum_tolerance, CharacterValue, Field, Fq};
use crate::geometry::{decode, dot, norm, norm_diff, universe_size, PointSet, QuadraticForm};

/// Dense table of Fourier coefficients, indexed by the code of `m`.
#[derive(Debug, Clone)]
pub struct FourierTable {
    dim: usize,
    q: u32,
    values: Vec<Complex64>,
    source_size: usize,
}

impl FourierTable {
    pub fn compute(field: &Field, set: &PointSet) -> Result<Self> {
        Self::compute_twisted(field, set, Fq::ONE)
    }

    /// Same transform with the character `t -> chi(scale * t)`.
    pub fn compute_twisted(field: &Field, set: &PointSet, scale: Fq) -> Result<Self> {
        if scale.is_zero() {
            return Err(Error::InvalidParameter("character twist must be nonzero".into()));
        }
        let (q, dim) = (field.q(), set.dim());
        let n = universe_size(q, dim);
        field.check_scan(n * set.len().max(1) as u128)?;
        let norm_factor = (q as f64).powi(-(dim as i32));
        let values = (0..n as u64)
            .into_par_iter()
            .map(|code| {
                let m = decode(code, q, dim);
                let s: Complex64 = set
                    .iter()
                    .map(|x| field.chi_twisted(scale, field.neg(dot(field, &m, x))))
                    .sum();
                s * norm_factor
            })
            .collect();
        Ok(FourierTable {
            dim,
            q,
            values,
            source_size: set.len(),
        })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn source_size(&self) -> usize {
        self.source_size
    }

    pub fn values(&self) -> &[Complex64] {
        &self.values
    }

    pub fn get(&self, m: &[Fq]) -> Complex64 {
        self.values[crate::geometry::encode(m, self.q) as usize]
    }

    /// `sum_m |E^(m)|^2`.
    pub fn plancherel_sum(&self) -> f64 {
        self.values.iter().map(|v| v.norm_sqr()).sum()
    }

    /// `sum_m chi(m . x) E^(m)`, which reconstructs `1_E(x)`.
    pub fn inverse_at(&self, field: &Field, x: &[Fq]) -> Complex64 {
        self.values
            .iter()
            .enumerate()
            .map(|(code, &v)| {
                let m = decode(code as u64, self.q, self.dim);
                field.chi(dot(field, &m, x)) * v
            })
            .sum()
    }

    /// `R_t` for every radius `t` at once.
    pub fn restriction_profile(&self, field: &Field) -> RestrictionProfile {
        let mut by_radius = vec![0.0f64; self.q as usize];
        for (code, v) in self.values.iter().enumerate() {
            let m = decode(code as u64, self.q, self.dim);
            by_radius[norm(field, &m).0 as usize] += v.norm_sqr();
        }
        RestrictionProfile {
            dim: self.dim,
            q: self.q,
            source_size: self.source_size,
            by_radius,
        }
    }
}

/// `E^` for an indicator set.
pub fn fourier_indicator(field: &Field, set: &PointSet) -> Result<FourierTable> {
    FourierTable::compute(field, set)
}

/// `R_t(B) = sum_{m in S_t} |B^(m)|^2` for each `t`.
#[derive(Debug, Clone, PartialEq)]
pub struct RestrictionProfile {
    dim: usize,
    q: u32,
    source_size: usize,
    by_radius: Vec<f64>,
}

impl RestrictionProfile {
    pub fn get(&self, t: Fq) -> f64 {
        self.by_radius[t.0 as usize]
    }

    pub fn by_radius(&self) -> &[f64] {
        &self.by_radius
    }

    /// `max_t R_t` over all of `F_q`, zero included.
    pub fn max(&self) -> f64 {
        self.by_radius.iter().cloned().fold(0.0, f64::max)
    }

    /// `q^{-d} |B|`.
    pub fn plancherel_bound(&self) -> f64 {
        self.source_size as f64 * (self.q as f64).powi(-(self.dim as i32))
    }

    /// `2 q^{-d-1} |B|`, valid for coordinatable `B`.
    pub fn coordinatable_bound(&self) -> f64 {
        2.0 * self.source_size as f64 * (self.q as f64).powi(-(self.dim as i32) - 1)
    }
}

pub fn restriction_sum(field: &Field, set: &PointSet, t: Fq) -> Result<f64> {
    Ok(FourierTable::compute(field, set)?
        .restriction_profile(field)
        .get(t))
}

/// Closed form of the Fourier transform of `V_0 = {(x, y) : ||x|| = ||y||}`
/// at `M = (m, m')` in `F_q^{2d}`.
pub fn v0_fourier_formula(field: &Field, big_m: &[Fq]) -> Result<f64> {
    if big_m.is_empty() || !big_m.len().is_multiple_of(2) {
        return Err(Error::InvalidParameter(format!(
            "V_0 transform needs an even-length vector, got length {}",
            big_m.len()
        )));
    }
    let d = big_m.len() / 2;
    let q = field.q() as f64;
    let star = QuadraticForm::pair_star(d).eval_unchecked(field, big_m);
    let tail = q.powi(-(d as i32) - 1);
    Ok(if star.is_zero() {
        let delta = if big_m.iter().all(|c| c.is_zero()) {
            1.0 / q
        } else {
            0.0
        };
        delta + tail * (q - 1.0)
    } else {
        -tail
    })
}

/// The variety `V_0` in `F_q^{2d}`, enumerated.
#[derive(Debug, Clone)]
pub struct V0Variety {
    d: usize,
    points: PointSet,
}

impl V0Variety {
    pub fn enumerate(field: &Field, d: usize) -> Result<Self> {
        let q = field.q();
        let n = universe_size(q, 2 * d);
        field.check_scan(n)?;
        let star = QuadraticForm::pair_star(d);
        let codes = (0..n as u64)
            .into_par_iter()
            .filter(|&c| star.eval_unchecked(field, &decode(c, q, 2 * d)).is_zero())
            .collect();
        Ok(V0Variety {
            d,
            points: PointSet::from_codes(q, 2 * d, codes),
        })
    }

    pub fn points(&self) -> &PointSet {
        &self.points
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    /// `q^{-2d} sum_{X in V_0} chi(-M . X)`.
    pub fn fourier_at(&self, field: &Field, big_m: &[Fq]) -> Result<CharacterValue> {
        self.fourier_at_twisted(field, big_m, Fq::ONE)
    }

    pub fn fourier_at_twisted(
        &self,
        field: &Field,
        big_m: &[Fq],
        scale: Fq,
    ) -> Result<CharacterValue> {
        if big_m.len() != 2 * self.d {
            return Err(Error::DimensionMismatch {
                expected: 2 * self.d,
                got: big_m.len(),
            });
        }
        let s: Complex64 = self
            .points
            .iter()
            .map(|x| field.chi_twisted(scale, field.neg(dot(field, big_m, x))))
            .sum();
        Ok(s * (field.q() as f64).powi(-2 * self.d as i32))
    }
}

/// Direct enumeration of the `V_0` transform at one point.
pub fn v0_fourier_bruteforce(field: &Field, big_m: &[Fq]) -> Result<CharacterValue> {
    if big_m.is_empty() || !big_m.len().is_multiple_of(2) {
        return Err(Error::InvalidParameter(format!(
            "V_0 transform needs an even-length vector, got length {}",
            big_m.len()
        )));
    }
    V0Variety::enumerate(field, big_m.len() / 2)?.fourier_at(field, big_m)
}

/// `nu(t) = #{(x, y) in A x B : ||x - y|| = t}`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NuProfile {
    counts: Vec<u64>,
    sizes: (usize, usize),
}

impl NuProfile {
    pub fn counts(&self) -> &[u64] {
        &self.counts
    }

    pub fn get(&self, t: Fq) -> u64 {
        self.counts[t.0 as usize]
    }

    pub fn sizes(&self) -> (usize, usize) {
        self.sizes
    }

    pub fn total(&self) -> u64 {
        self.counts.iter().sum()
    }

    /// Radii with `nu(t) > 0`; this is the distance set.
    pub fn support(&self) -> Vec<Fq> {
        self.counts
            .iter()
            .enumerate()
            .filter(|(_, &c)| c > 0)
            .map(|(t, _)| Fq(t as u32))
            .collect()
    }

    /// `sum_t nu(t)^2`.
    pub fn second_moment(&self) -> u128 {
        self.counts.iter().map(|&c| c as u128 * c as u128).sum()
    }
}

fn check_same_dim(a: &PointSet, b: &PointSet) -> Result<()> {
    if a.dim() != b.dim() {
        return Err(Error::DimensionMismatch {
            expected: a.dim(),
            got: b.dim(),
        });
    }
    Ok(())
}

pub fn nu_profile(field: &Field, a: &PointSet, b: &PointSet) -> Result<NuProfile> {
    check_same_dim(a, b)?;
    field.check_scan(a.len() as u128 * b.len() as u128)?;
    let q = field.q() as usize;
    let points: Vec<&[Fq]> = a.iter().collect();
    let counts = points
        .par_iter()
        .fold(
            || vec![0u64; q],
            |mut acc, x| {
                for y in b.iter() {
                    acc[norm_diff(field, x, y).0 as usize] += 1;
                }
                acc
            },
        )
        .reduce(
            || vec![0u64; q],
            |mut l, r| {
                l.iter_mut().zip(r).for_each(|(a, b)| *a += b);
                l
            },
        );
    Ok(NuProfile {
        counts,
        sizes: (a.len(), b.len()),
    })
}

/// `#{(x, z, y, w) in A x A x B x B : ||x - y|| = ||z - w||}` by comparing
/// every pair of pairs.
pub fn second_moment_quadruples(field: &Field, a: &PointSet, b: &PointSet) -> Result<u128> {
    check_same_dim(a, b)?;
    let pairs = a.len() as u128 * b.len() as u128;
    field.check_scan(pairs * pairs)?;
    let dists: Vec<Fq> = a
        .iter()
        .flat_map(|x| b.iter().map(move |y| norm_diff(field, x, y)))
        .collect();
    Ok(dists
        .par_iter()
        .map(|&u| dists.iter().filter(|&&v| v == u).count() as u128)
        .sum())
}

/// `sum_t nu(t)^2`, computed from the profile and from the quadruple count;
/// the two must agree.
pub fn second_moment(field: &Field, a: &PointSet, b: &PointSet) -> Result<u128> {
    let from_profile = nu_profile(field, a, b)?.second_moment();
    let from_quadruples = second_moment_quadruples(field, a, b)?;
    if from_profile != from_quadruples {
        return Err(Error::NumericalDrift(format!(
            "second moment routes disagree: {from_profile} vs {from_quadruples}"
        )));
    }
    Ok(from_profile)
}

/// `sum_t nu(t)^2` through the `V_0` transform:
/// `|A|^2|B|^2/q + q^{3d} sum_t c_t^2 - q^{3d-1} (sum_t c_t)^2` with
/// `c_t = sum_{m in S_t} conj(A^(m)) B^(m)`.
pub fn second_moment_spectral(field: &Field, a: &PointSet, b: &PointSet) -> Result<f64> {
    check_same_dim(a, b)?;
    let d = a.dim();
    let q = field.q();
    let fa = FourierTable::compute(field, a)?;
    let fb = FourierTable::compute(field, b)?;
    let mut c = vec![Complex64::new(0.0, 0.0); q as usize];
    for (code, (va, vb)) in fa.values().iter().zip(fb.values()).enumerate() {
        let m = decode(code as u64, q, d);
        c[norm(field, &m).0 as usize] += va.conj() * vb;
    }
    let tol = char_sum_tolerance(fa.values().len());
    if let Some(bad) = c.iter().find(|v| v.im.abs() > tol) {
        return Err(Error::NumericalDrift(format!(
            "sphere correlation has imaginary part {}",
            bad.im
        )));
    }
    let qf = q as f64;
    let (na, nb) = (a.len() as f64, b.len() as f64);
    let sum_sq: f64 = c.iter().map(|v| v.re * v.re).sum();
    let total: f64 = c.iter().map(|v| v.re).sum();
    Ok(na * na * nb * nb / qf + qf.powi(3 * d as i32) * sum_sq
        - qf.powi(3 * d as i32 - 1) * total * total)
}

fn check_nonempty(a: &PointSet, b: &PointSet) -> Result<()> {
    if a.is_empty() || b.is_empty() {
        Err(Error::EmptySet)
    } else {
        Ok(())
    }
}

/// Evaluates `|A|^2 |B|^2 / (q^{-1} |A|^2 |B|^2 + q^{2d} |A| max_t R_t(B))`
/// given `max_t R_t(B)`.
pub fn distance_lower_bound_from(q: u32, d: usize, na: usize, nb: usize, max_rt: f64) -> f64 {
    let qf = q as f64;
    let (na, nb) = (na as f64, nb as f64);
    let num = na * na * nb * nb;
    num / (num / qf + qf.powi(2 * d as i32) * na * max_rt)
}

/// Lower bound on `|Delta(A, B)|` from the restriction sums of `B`.
pub fn distance_lower_bound(field: &Field, a: &PointSet, b: &PointSet) -> Result<f64> {
    check_same_dim(a, b)?;
    check_nonempty(a, b)?;
    let max_rt = FourierTable::compute(field, b)?
        .restriction_profile(field)
        .max();
    Ok(distance_lower_bound_from(
        field.q(),
        a.dim(),
        a.len(),
        b.len(),
        max_rt,
    ))
}

/// The larger of the bounds with the roles of `A` and `B` exchanged.
pub fn distance_lower_bound_symmetric(field: &Field, a: &PointSet, b: &PointSet) -> Result<f64> {
    Ok(distance_lower_bound(field, a, b)?.max(distance_lower_bound(field, b, a)?))
}

/// `|A|^2 |B|^2 / sum_t nu(t)^2`.
pub fn cauchy_schwarz_bound(field: &Field, a: &PointSet, b: &PointSet) -> Result<f64> {
    check_nonempty(a, b)?;
    let moment = nu_profile(field, a, b)?.second_moment();
    let (na, nb) = (a.len() as f64, b.len() as f64);
    Ok(na * na * nb * nb / moment as f64)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::CoordinatePlane;

    fn f(p: u32) -> Field {
        Field::new(p, 1).unwrap()
    }

    fn set(field: &Field, dim: usize, pts: &[&[u32]]) -> PointSet {
        PointSet::new(
            field,
            dim,
            pts.iter().map(|p| p.iter().map(|&x| Fq(x)).collect::<Vec<_>>()),
        )
        .unwrap()
    }

    fn axis(field: &Field) -> PointSet {
        CoordinatePlane::new(2, &[0]).unwrap().enumerate(field).unwrap()
    }

    #[test]
    fn fourier_of_single_point_and_full_space() {
        let f3 = f(3);
        let one = set(&f3, 2, &[&[1, 2]]);
        let t = fourier_indicator(&f3, &one).unwrap();
        assert!(t.values().iter().all(|v| (v.norm() - 1.0 / 9.0).abs() < 1e-12));

        let full = PointSet::full(&f3, 2).unwrap();
        let t = fourier_indicator(&f3, &full).unwrap();
        for (code, v) in t.values().iter().enumerate() {
            let expect = if code == 0 { 1.0 } else { 0.0 };
            assert!((v - Complex64::new(expect, 0.0)).norm() < 1e-12);
        }
    }

    #[test]
    fn fourier_of_axis() {
        let f3 = f(3);
        let t = fourier_indicator(&f3, &axis(&f3)).unwrap();
        for (code, v) in t.values().iter().enumerate() {
            let m = decode(code as u64, 3, 2);
            let expect = if m[0].is_zero() { 1.0 / 3.0 } else { 0.0 };
            assert!((v - Complex64::new(expect, 0.0)).norm() < 1e-12);
        }
    }

    #[test]
    fn restriction_examples() {
        let f3 = f(3);
        let prof = fourier_indicator(&f3, &axis(&f3))
            .unwrap()
            .restriction_profile(&f3);
        assert!((prof.get(Fq(1)) - 2.0 / 9.0).abs() < 1e-12);
        assert!((prof.coordinatable_bound() - 2.0 / 9.0).abs() < 1e-12);

        let f5 = f(5);
        let full = PointSet::full(&f5, 2).unwrap();
        let prof = fourier_indicator(&f5, &full).unwrap().restriction_profile(&f5);
        for t in 1..5 {
            assert!(prof.get(Fq(t)).abs() < 1e-12);
        }

        let one = set(&f5, 2, &[&[2, 3]]);
        for t in f5.elements() {
            let r = restriction_sum(&f5, &one, t).unwrap();
            let size = crate::geometry::sphere_cardinality(&f5, t, 2).unwrap() as f64;
            assert!((r - size / 625.0).abs() < 1e-12);
        }
    }

    #[test]
    fn v0_formula_examples() {
        let f3 = f(3);
        let z = [Fq(0); 4];
        assert!((v0_fourier_formula(&f3, &z).unwrap() - 11.0 / 27.0).abs() < 1e-15);
        let m = [Fq(1), Fq(0), Fq(1), Fq(0)];
        assert!((v0_fourier_formula(&f3, &m).unwrap() - 2.0 / 27.0).abs() < 1e-15);
        let m = [Fq(1), Fq(0), Fq(0), Fq(0)];
        assert!((v0_fourier_formula(&f3, &m).unwrap() + 1.0 / 27.0).abs() < 1e-15);
        assert!(v0_fourier_formula(&f3, &[Fq(0); 3]).is_err());
    }

    #[test]
    fn v0_bruteforce_examples() {
        let f3 = f(3);
        let v0 = V0Variety::enumerate(&f3, 2).unwrap();
        assert_eq!(v0.len(), 33);
        let at_zero = v0.fourier_at(&f3, &[Fq(0); 4]).unwrap();
        assert!((at_zero - Complex64::new(11.0 / 27.0, 0.0)).norm() < 1e-12);
        let m = [Fq(1), Fq(0), Fq(0), Fq(0)];
        assert!((v0.fourier_at(&f3, &m).unwrap() - Complex64::new(-1.0 / 27.0, 0.0)).norm() < 1e-12);
        let f5 = f(5);
        let v = v0_fourier_bruteforce(&f5, &[Fq(0); 4]).unwrap();
        assert!((v - Complex64::new(29.0 / 125.0, 0.0)).norm() < 1e-12);
    }

    #[test]
    fn nu_examples() {
        let f3 = f(3);
        let x0 = set(&f3, 2, &[&[1, 1]]);
        let nu = nu_profile(&f3, &x0, &x0).unwrap();
        assert_eq!(nu.counts(), &[1, 0, 0]);

        let full = PointSet::full(&f3, 2).unwrap();
        let origin = set(&f3, 2, &[&[0, 0]]);
        let nu = nu_profile(&f3, &full, &origin).unwrap();
        assert_eq!(nu.counts(), &[1, 4, 4]);
        assert_eq!(second_moment(&f3, &full, &origin).unwrap(), 33);
        assert_eq!(second_moment(&f3, &x0, &x0).unwrap(), 1);

        let f5 = f(5);
        let ax = axis(&f5);
        let nu = nu_profile(&f5, &ax, &ax).unwrap();
        assert_eq!(nu.counts(), &[5, 10, 0, 0, 10]);
        assert_eq!(nu.support(), vec![Fq(0), Fq(1), Fq(4)]);
    }

    #[test]
    fn lower_bound_examples() {
        let f3 = f(3);
        let full = PointSet::full(&f3, 2).unwrap();
        let b = distance_lower_bound(&f3, &full, &axis(&f3)).unwrap();
        assert!((b - 1.8).abs() < 1e-12);

        // A = B = F_q^d: only B^(0) is nonzero, max_t R_t = 1.
        let b = distance_lower_bound(&f3, &full, &full).unwrap();
        assert!((b - 3.0 / (1.0 + 1.0 / 3.0)).abs() < 1e-12);

        let x0 = set(&f3, 2, &[&[0, 1]]);
        let y0 = set(&f3, 2, &[&[2, 2]]);
        assert!(distance_lower_bound(&f3, &x0, &y0).unwrap() <= 1.0);
        assert!(distance_lower_bound(&f3, &PointSet::empty(3, 2), &y0).is_err());

        let origin = set(&f3, 2, &[&[0, 0]]);
        let cs = cauchy_schwarz_bound(&f3, &full, &origin).unwrap();
        assert!((cs - 81.0 / 33.0).abs() < 1e-12);
        assert!((cauchy_schwarz_bound(&f3, &x0, &x0).unwrap() - 1.0).abs() < 1e-12);
    }

    #[test]
    fn spectral_second_moment_matches_count() {
        let f3 = f(3);
        let full = PointSet::full(&f3, 2).unwrap();
        let origin = set(&f3, 2, &[&[0, 0]]);
        let s = second_moment_spectral(&f3, &full, &origin).unwrap();
        assert!((s - 33.0).abs() < 1e-8);
    }
}
