//! Explicit sets: small-difference sets, the paired-coordinate sets behind
//! the sharpness examples, slices of a set by the last coordinate, and the
//! split that reduces box sets to distance sets.

use crate::distance::DistanceSet;
use crate::error::{Error, Result};
use crate::field::{Field, Fq};
use crate::geometry::{decode, universe_size, AffineMap, PointSet, QuadraticForm};

fn check_delta(delta: f64) -> Result<()> {
    if delta > 0.0 && delta < 1.0 {
        Ok(())
    } else {
        Err(Error::InvalidParameter(format!(
            "delta must lie in (0, 1), got {delta}"
        )))
    }
}

/// `ceil(p^{1 - delta})`, robust to `p^{1-delta}` landing a hair above an
/// integer through rounding.
fn progression_length(p: u32, delta: f64) -> usize {
    let x = (p as f64).powf(1.0 - delta);
    let r = x.round();
    if (x - r).abs() < 1e-9 {
        r as usize
    } else {
        x.ceil() as usize
    }
}

/// `C_delta = {0, 1, ..., ceil(p^{1-delta}) - 1}` in the prime subfield.
pub fn make_c_delta(field: &Field, delta: f64) -> Result<PointSet> {
    check_delta(delta)?;
    let n = progression_length(field.p(), delta);
    if n > field.p() as usize {
        return Err(Error::InvalidParameter(format!(
            "progression of length {n} does not fit in F_{}",
            field.p()
        )));
    }
    PointSet::new(field, 1, (0..n as u32).map(|c| [Fq(c)]))
}

/// `Omega_delta = { sum c_i xi^i : c_i in C_delta }`.
pub fn make_omega_delta(field: &Field, delta: f64) -> Result<PointSet> {
    let c = make_c_delta(field, delta)?;
    let base = c.len() as u64;
    let ell = field.ell() as usize;
    let count = base.pow(ell as u32);
    let points = (0..count).map(|code| {
        let digits: Vec<u32> = decode(code, base as u32, ell)
            .into_iter()
            .map(|d| d.0)
            .collect();
        [field
            .from_coefficients(&digits)
            .expect("digits lie in C_delta")]
    });
    PointSet::new(field, 1, points)
}

/// `S - S` for a subset of `F_q`.
pub fn difference_set(field: &Field, set: &PointSet) -> Result<PointSet> {
    if set.dim() != 1 {
        return Err(Error::DimensionMismatch {
            expected: 1,
            got: set.dim(),
        });
    }
    let points: Vec<[Fq; 1]> = set
        .iter()
        .flat_map(|a| set.iter().map(move |b| [field.sub(a[0], b[0])]))
        .collect();
    PointSet::new(field, 1, points)
}

/// Tuples `(t_1, t_1, ..., t_k, t_k)` in `F_q^{2k}`.
fn paired_coordinates(field: &Field, k: usize) -> Result<PointSet> {
    let q = field.q();
    let n = universe_size(q, k);
    field.check_scan(n)?;
    let points = (0..n as u64).map(|c| {
        decode(c, q, k)
            .into_iter()
            .flat_map(|t| [t, t])
            .collect::<Vec<_>>()
    });
    PointSet::new(field, 2 * k, points)
}

/// `H` in `F_q^{d-1}` for odd `d >= 3`.
pub fn make_h(field: &Field, d: usize) -> Result<PointSet> {
    if d < 3 || d.is_multiple_of(2) {
        return Err(Error::InvalidParameter(format!(
            "H needs an odd dimension d >= 3, got {d}"
        )));
    }
    paired_coordinates(field, (d - 1) / 2)
}

/// `Lambda` in `F_q^{d-2}` for even `d >= 2`; at `d = 2` it is the single
/// empty tuple.
pub fn make_lambda(field: &Field, d: usize) -> Result<PointSet> {
    if d < 2 || d % 2 == 1 {
        return Err(Error::InvalidParameter(format!(
            "Lambda needs an even dimension d >= 2, got {d}"
        )));
    }
    paired_coordinates(field, (d - 2) / 2)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, serde::Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Parity {
    Odd,
    Even,
}

/// A set whose distance set under the canonical form stays far below `q`.
#[derive(Debug, Clone)]
pub struct CounterexampleRecipe {
    pub d: usize,
    pub delta: f64,
    pub parity: Parity,
    pub q: u32,
    pub omega: PointSet,
    /// `H` (odd) or `Lambda` (even).
    pub paired: PointSet,
    pub set: PointSet,
    pub form: QuadraticForm,
}

impl CounterexampleRecipe {
    /// The distance set predicted from the structure alone:
    /// `{eps c^2 : c in Omega - Omega}` for odd `d`, `{(a - b)^2}` for even.
    pub fn predicted_distances(&self, field: &Field) -> Result<DistanceSet> {
        let diffs = difference_set(field, &self.omega)?;
        let scale = match self.parity {
            Parity::Odd => self.form.epsilon().unwrap_or(Fq::ONE),
            Parity::Even => Fq::ONE,
        };
        Ok(DistanceSet::from_values(
            field.q(),
            diffs.iter().map(|c| field.mul(scale, field.square(c[0]))),
        ))
    }

    /// `q^{(d+1)/2 - delta}` (odd) or `q^{d/2 - delta}` (even), for reporting
    /// `|A|` against its nominal size.
    pub fn nominal_size(&self) -> f64 {
        let q = self.q as f64;
        let d = self.d as f64;
        match self.parity {
            Parity::Odd => q.powf((d + 1.0) / 2.0 - self.delta),
            Parity::Even => q.powf(d / 2.0 - self.delta),
        }
    }
}

pub fn counterexample(field: &Field, d: usize, delta: f64) -> Result<CounterexampleRecipe> {
    if d < 2 {
        return Err(Error::InvalidParameter(format!("dimension {d} < 2")));
    }
    let omega = make_omega_delta(field, delta)?;
    let form = QuadraticForm::canonical(field, d)?;
    let (parity, paired, set) = if d % 2 == 1 {
        let h = make_h(field, d)?;
        let set = h.product(&omega);
        (Parity::Odd, h, set)
    } else {
        let lambda = make_lambda(field, d)?;
        let zero = PointSet::new(field, 1, [[Fq::ZERO]])?;
        let set = lambda.product(&omega).product(&zero);
        (Parity::Even, lambda, set)
    };
    Ok(CounterexampleRecipe {
        d,
        delta,
        parity,
        q: field.q(),
        omega,
        paired,
        set,
        form,
    })
}

/// The most populated level set of the last coordinate.
#[derive(Debug, Clone)]
pub struct Slice {
    pub level: Fq,
    pub points: PointSet,
    /// Translation by `-level e_d`, taking the slice into the coordinate
    /// plane spanned by the first `d - 1` axes.
    pub witness: AffineMap,
}

pub fn slice_extract(field: &Field, set: &PointSet) -> Result<Slice> {
    if set.is_empty() {
        return Err(Error::EmptySet);
    }
    let d = set.dim();
    if d == 0 {
        return Err(Error::InvalidParameter("cannot slice a 0-dimensional set".into()));
    }
    let mut counts = vec![0usize; field.q() as usize];
    for x in set.iter() {
        counts[x[d - 1].0 as usize] += 1;
    }
    // ties go to the smallest level
    let (level, _) = counts
        .iter()
        .enumerate()
        .fold((0usize, 0usize), |best, (j, &c)| if c > best.1 { (j, c) } else { best });
    let level = Fq(level as u32);
    let points = PointSet::new(field, d, set.iter().filter(|x| x[d - 1] == level))?;
    let mut shift = vec![Fq::ZERO; d];
    shift[d - 1] = field.neg(level);
    Ok(Slice {
        level,
        points,
        witness: AffineMap::translation(shift),
    })
}

/// `E` split into `E_1`, `E_2` with `A = E_1 x E_2` and the diagonal `B`.
#[derive(Debug, Clone)]
pub struct BoxReduction {
    pub e: PointSet,
    pub e1: PointSet,
    pub e2: PointSet,
    pub a: PointSet,
    pub b: PointSet,
}

impl BoxReduction {
    /// Disjoint, covering, and `0 <= |E_1| - |E_2| <= 1`.
    pub fn split_is_valid(&self) -> bool {
        let disjoint = self.e1.iter().all(|x| !self.e2.contains(x));
        let covering = self
            .e1
            .union(&self.e2)
            .map(|u| u == self.e)
            .unwrap_or(false);
        let gap = self.e1.len() as i64 - self.e2.len() as i64;
        disjoint && covering && (0..=1).contains(&gap)
    }
}

/// Alternating split of `E` by ascending index; `E_1` takes the extra point.
pub fn box_reduction(field: &Field, e: &PointSet) -> Result<BoxReduction> {
    if e.dim() != 1 {
        return Err(Error::DimensionMismatch {
            expected: 1,
            got: e.dim(),
        });
    }
    if e.len() < 2 {
        return Err(Error::InvalidParameter(
            "box reduction needs at least two points".into(),
        ));
    }
    let e1 = PointSet::new(field, 1, e.iter().step_by(2))?;
    let e2 = PointSet::new(field, 1, e.iter().skip(1).step_by(2))?;
    let a = e1.product(&e2);
    let b = PointSet::new(field, 2, e.iter().map(|x| [x[0], x[0]]))?;
    Ok(BoxReduction {
        e: e.clone(),
        e1,
        e2,
        a,
        b,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::distance::delta;

    fn elems(set: &PointSet) -> Vec<u32> {
        set.iter().map(|x| x[0].0).collect()
    }

    #[test]
    fn c_delta_examples() {
        let f5 = Field::new(5, 1).unwrap();
        assert_eq!(elems(&make_c_delta(&f5, 0.5).unwrap()), vec![0, 1, 2]);
        let f7 = Field::new(7, 1).unwrap();
        assert_eq!(elems(&make_c_delta(&f7, 0.9).unwrap()), vec![0, 1]);
        let c = make_c_delta(&f5, 0.5).unwrap();
        assert_eq!(difference_set(&f5, &c).unwrap().len(), 5);
        assert!(make_c_delta(&f5, 0.0).is_err());
        assert!(make_c_delta(&f5, 1.0).is_err());
    }

    #[test]
    fn omega_examples() {
        for (p, ell, size, diff) in [(5, 1, 3, 5), (5, 2, 9, 25), (3, 2, 4, 9)] {
            let field = Field::new(p, ell).unwrap();
            let omega = make_omega_delta(&field, 0.5).unwrap();
            assert_eq!(omega.len(), size, "q = {}", field.q());
            assert_eq!(difference_set(&field, &omega).unwrap().len(), diff);
        }
    }

    #[test]
    fn paired_sets() {
        let f5 = Field::new(5, 1).unwrap();
        let h = make_h(&f5, 3).unwrap();
        assert_eq!(h.len(), 5);
        assert!(h.iter().all(|x| x[0] == x[1]));
        let f3 = Field::new(3, 1).unwrap();
        let h = make_h(&f3, 5).unwrap();
        assert_eq!(h.len(), 9);
        assert!(h.iter().all(|x| x[0] == x[1] && x[2] == x[3]));
        assert!(make_h(&f5, 4).is_err());

        assert_eq!(make_lambda(&f5, 4).unwrap().len(), 5);
        let trivial = make_lambda(&f5, 2).unwrap();
        assert_eq!((trivial.len(), trivial.dim()), (1, 0));
        assert_eq!(make_lambda(&f3, 6).unwrap().len(), 9);
        assert!(make_lambda(&f5, 3).is_err());
    }

    #[test]
    fn counterexample_examples() {
        let f5 = Field::new(5, 1).unwrap();
        let r = counterexample(&f5, 3, 0.5).unwrap();
        assert_eq!(r.set.len(), 15);
        let got = delta(&f5, &r.set, &r.set, &r.form).unwrap();
        assert_eq!(got.len(), 3);
        assert_eq!(got, r.predicted_distances(&f5).unwrap());

        let f9 = Field::new(3, 2).unwrap();
        let r = counterexample(&f9, 3, 0.5).unwrap();
        assert_eq!(r.set.len(), 36);
        let got = delta(&f9, &r.set, &r.set, &r.form).unwrap();
        assert!(got.len() <= 9);
        assert_eq!(got, r.predicted_distances(&f9).unwrap());

        let r = counterexample(&f5, 2, 0.5).unwrap();
        assert_eq!(r.set.len(), 3);
        assert!(r.set.iter().all(|x| x[1].is_zero()));
        let got = delta(&f5, &r.set, &r.set, &r.form).unwrap();
        assert_eq!(got, r.predicted_distances(&f5).unwrap());
    }

    #[test]
    fn slices() {
        let f5 = Field::new(5, 1).unwrap();
        let full = PointSet::full(&f5, 2).unwrap();
        let s = slice_extract(&f5, &full).unwrap();
        assert_eq!(s.points.len(), 5);
        let one = PointSet::new(&f5, 2, [[Fq(2), Fq(3)]]).unwrap();
        let s = slice_extract(&f5, &one).unwrap();
        assert_eq!((s.level, s.points.len()), (Fq(3), 1));
        let moved = s.witness.apply_set(&f5, &s.points).unwrap();
        assert!(moved.iter().all(|x| x[1].is_zero()));
        assert!(slice_extract(&f5, &PointSet::empty(5, 2)).is_err());
    }

    #[test]
    fn box_reduction_examples() {
        let f7 = Field::new(7, 1).unwrap();
        let e = PointSet::new(&f7, 1, [0, 1, 2, 3].map(|x| [Fq(x)])).unwrap();
        let r = box_reduction(&f7, &e).unwrap();
        assert_eq!(elems(&r.e1), vec![0, 2]);
        assert_eq!(elems(&r.e2), vec![1, 3]);
        assert_eq!((r.a.len(), r.b.len()), (4, 4));
        assert!(r.split_is_valid());

        let e = PointSet::new(&f7, 1, [0, 1, 2].map(|x| [Fq(x)])).unwrap();
        let r = box_reduction(&f7, &e).unwrap();
        assert_eq!((r.e1.len(), r.e2.len()), (2, 1));

        let single = PointSet::new(&f7, 1, [[Fq(4)]]).unwrap();
        assert!(box_reduction(&f7, &single).is_err());
    }

    #[test]
    fn box_identity_instance() {
        let f7 = Field::new(7, 1).unwrap();
        let (x, y, z) = (Fq(2), Fq(0), Fq(1));
        let lhs = f7.add(f7.square(f7.sub(x, y)), f7.square(f7.sub(x, z)));
        let rhs = crate::geometry::norm_diff(&f7, &[x, x], &[y, z]);
        assert_eq!((lhs, rhs), (Fq(5), Fq(5)));
    }
}
