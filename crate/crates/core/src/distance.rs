//! Distance sets `Delta(A, B)`, `Delta_Q(A)` and the box set `Box(E)`.

use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::field::{Field, Fq};
use crate::geometry::{PointSet, QuadraticForm};

/// Pair scans smaller than this run on one thread.
const PARALLEL_PAIRS: usize = 1 << 16;

/// A subset of `F_q`, sorted by element index.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DistanceSet {
    q: u32,
    values: Vec<Fq>,
}

impl DistanceSet {
    fn from_bitmap(q: u32, seen: &[bool]) -> Self {
        let values = seen
            .iter()
            .enumerate()
            .filter(|(_, &s)| s)
            .map(|(i, _)| Fq(i as u32))
            .collect();
        DistanceSet { q, values }
    }

    pub fn from_values(q: u32, values: impl IntoIterator<Item = Fq>) -> Self {
        let mut seen = vec![false; q as usize];
        for v in values {
            seen[v.0 as usize] = true;
        }
        Self::from_bitmap(q, &seen)
    }

    pub fn q(&self) -> u32 {
        self.q
    }

    pub fn values(&self) -> &[Fq] {
        &self.values
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn contains(&self, t: Fq) -> bool {
        self.values.binary_search(&t).is_ok()
    }

    pub fn is_superset_of(&self, other: &DistanceSet) -> bool {
        other.values.iter().all(|&t| self.contains(t))
    }
}

/// Scans `outer x inner` with `value`, stopping early once every element of
/// `F_q` has been seen.
fn collect_values<F>(q: u32, outer: &PointSet, inner_len: usize, value: F) -> Vec<bool>
where
    F: Fn(&[Fq], &mut [bool], &mut usize) + Sync,
{
    let q = q as usize;
    let scan = |chunk: &[&[Fq]]| {
        let mut seen = vec![false; q];
        let mut count = 0usize;
        for x in chunk {
            value(x, &mut seen, &mut count);
            if count == q {
                break;
            }
        }
        seen
    };
    let points: Vec<&[Fq]> = outer.iter().collect();
    if points.len() * inner_len < PARALLEL_PAIRS {
        return scan(&points);
    }
    let chunk = (points.len() / rayon::current_num_threads().max(1)).max(1);
    points
        .par_chunks(chunk)
        .map(scan)
        .reduce(
            || vec![false; q],
            |mut l, r| {
                l.iter_mut().zip(r).for_each(|(a, b)| *a |= b);
                l
            },
        )
}

/// `{ ||x - y||_Q : x in A, y in B }`.
pub fn delta(field: &Field, a: &PointSet, b: &PointSet, form: &QuadraticForm) -> Result<DistanceSet> {
    if a.dim() != b.dim() {
        return Err(Error::DimensionMismatch {
            expected: a.dim(),
            got: b.dim(),
        });
    }
    if form.input_dim() != a.dim() {
        return Err(Error::DimensionMismatch {
            expected: form.input_dim(),
            got: a.dim(),
        });
    }
    if a.is_empty() || b.is_empty() {
        return Err(Error::EmptySet);
    }
    field.check_scan(a.len() as u128 * b.len() as u128)?;
    let d = a.dim();
    let seen = collect_values(field.q(), a, b.len(), |x, seen, count| {
        let mut diff = vec![Fq::ZERO; d];
        for y in b.iter() {
            for i in 0..d {
                diff[i] = field.sub(x[i], y[i]);
            }
            let t = form.eval_unchecked(field, &diff).0 as usize;
            if !seen[t] {
                seen[t] = true;
                *count += 1;
            }
        }
    });
    Ok(DistanceSet::from_bitmap(field.q(), &seen))
}

/// `Delta(A, B)` under the standard norm.
pub fn delta_standard(field: &Field, a: &PointSet, b: &PointSet) -> Result<DistanceSet> {
    delta(field, a, b, &QuadraticForm::standard(a.dim()))
}

/// `{ ||x - y|| + ||x - z|| : x, y, z in E, y != z }`.
pub fn box_set(field: &Field, e: &PointSet) -> Result<DistanceSet> {
    if e.len() < 2 {
        return Err(Error::InvalidParameter(
            "box set needs at least two points".into(),
        ));
    }
    let n = e.len() as u128;
    field.check_scan(n * n * n)?;
    let q = field.q();
    let pts: Vec<&[Fq]> = e.iter().collect();
    let seen = collect_values(q, e, e.len() * e.len(), |x, seen, count| {
        let dist: Vec<Fq> = pts
            .iter()
            .map(|y| crate::geometry::norm_diff(field, x, y))
            .collect();
        for (iy, &dy) in dist.iter().enumerate() {
            for (iz, &dz) in dist.iter().enumerate() {
                if iy == iz {
                    continue;
                }
                let t = field.add(dy, dz).0 as usize;
                if !seen[t] {
                    seen[t] = true;
                    *count += 1;
                }
            }
        }
    });
    Ok(DistanceSet::from_bitmap(q, &seen))
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SizeCheck {
    pub holds: bool,
    pub size: usize,
    pub margin: f64,
}

/// Whether `|Delta(A, B)| >= threshold`, with `|Delta| - threshold`.
pub fn delta_size_check(
    field: &Field,
    a: &PointSet,
    b: &PointSet,
    threshold: f64,
) -> Result<SizeCheck> {
    let size = delta_standard(field, a, b)?.len();
    Ok(SizeCheck {
        holds: size as f64 >= threshold,
        size,
        margin: size as f64 - threshold,
    })
}

/// `min{q, |A||B|/q^d} / 2`.
pub fn shparlinski_bound(q: u32, d: usize, na: usize, nb: usize) -> f64 {
    let qf = q as f64;
    0.5 * qf.min(na as f64 * nb as f64 / qf.powi(d as i32))
}

/// `min{q, |A||B| / (2 q^{d-1})} / 2`, the bound for coordinatable `B`.
pub fn coordinatable_bound(q: u32, d: usize, na: usize, nb: usize) -> f64 {
    let qf = q as f64;
    0.5 * qf.min(na as f64 * nb as f64 / (2.0 * qf.powi(d as i32 - 1)))
}

/// Smallest integer at least `q / 2`; for odd `q` this is `(q + 1) / 2`.
pub fn half_q_ceiling(q: u32) -> usize {
    (q as usize).div_ceil(2)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn f(p: u32) -> Field {
        Field::new(p, 1).unwrap()
    }

    fn line(field: &Field, xs: &[u32]) -> PointSet {
        PointSet::new(field, 1, xs.iter().map(|&x| vec![Fq(x)])).unwrap()
    }

    fn vals(xs: &[u32]) -> Vec<Fq> {
        xs.iter().map(|&x| Fq(x)).collect()
    }

    #[test]
    fn delta_examples() {
        let f5 = f(5);
        let x0 = PointSet::new(&f5, 2, [vec![Fq(3), Fq(1)]]).unwrap();
        assert_eq!(delta_standard(&f5, &x0, &x0).unwrap().values(), &vals(&[0])[..]);
        let all = line(&f5, &[0, 1, 2, 3, 4]);
        let zero = line(&f5, &[0]);
        assert_eq!(
            delta_standard(&f5, &all, &zero).unwrap().values(),
            &vals(&[0, 1, 4])[..]
        );
    }

    #[test]
    fn delta_under_canonical_form() {
        let f5 = f(5);
        let h = PointSet::new(&f5, 2, f5.elements().map(|t| vec![t, t])).unwrap();
        let omega = line(&f5, &[0, 1, 2]);
        let a = h.product(&omega);
        assert_eq!(a.len(), 15);
        let form = QuadraticForm::canonical_with_epsilon(&f5, 3, f5.from_int(-1)).unwrap();
        let d = delta(&f5, &a, &a, &form).unwrap();
        assert_eq!(d.values(), &vals(&[0, 1, 4])[..]);
    }

    #[test]
    fn delta_errors() {
        let f5 = f(5);
        let a = line(&f5, &[1]);
        let b = PointSet::new(&f5, 2, [vec![Fq(0), Fq(0)]]).unwrap();
        assert!(matches!(
            delta_standard(&f5, &a, &b),
            Err(Error::DimensionMismatch { .. })
        ));
        assert_eq!(
            delta_standard(&f5, &a, &PointSet::empty(5, 1)),
            Err(Error::EmptySet)
        );
    }

    #[test]
    fn box_examples() {
        let f5 = f(5);
        assert_eq!(
            box_set(&f5, &line(&f5, &[0, 1])).unwrap().values(),
            &vals(&[1])[..]
        );
        // x = 0, y = 0, z = 2 contributes 0 + 4 = 4.
        assert_eq!(
            box_set(&f5, &line(&f5, &[0, 1, 2])).unwrap().values(),
            &vals(&[0, 1, 2, 4])[..]
        );
        assert!(box_set(&f5, &line(&f5, &[3])).is_err());
    }

    #[test]
    fn box_skips_equal_pairs() {
        // With y = z allowed, x = 0, y = z = 1 would give 2 in F_5; the only
        // y != z triples over {0, 1} give 1.
        let f5 = f(5);
        assert!(!box_set(&f5, &line(&f5, &[0, 1])).unwrap().contains(Fq(2)));
    }

    #[test]
    fn size_checks() {
        let f5 = f(5);
        let full = PointSet::full(&f5, 2).unwrap();
        let c = delta_size_check(&f5, &full, &full, 2.5).unwrap();
        assert!(c.holds);
        assert_eq!(c.margin, 2.5);
        let x0 = PointSet::new(&f5, 2, [vec![Fq(1), Fq(1)]]).unwrap();
        let c = delta_size_check(&f5, &x0, &x0, 2.0).unwrap();
        assert!(!c.holds);
        assert_eq!(c.margin, -1.0);
    }

    #[test]
    fn bounds() {
        assert_eq!(shparlinski_bound(5, 2, 25, 25), 2.5);
        assert_eq!(shparlinski_bound(5, 2, 5, 5), 0.5);
        assert_eq!(coordinatable_bound(3, 2, 9, 2), 1.5);
        assert_eq!(half_q_ceiling(5), 3);
        assert_eq!(half_q_ceiling(3), 2);
    }
}
