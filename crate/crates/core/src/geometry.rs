//! Vectors and point sets in `F_q^d`, the quadratic forms in play, spheres,
//! coordinate planes and the rotations/translations that move planes onto
//! them.

use rand::seq::index;
use rand::Rng;

use crate::error::{Error, Result};
use crate::field::{Field, Fq};

pub type Vector = Vec<Fq>;

/// Integer code of a vector: base-`q` digits with the first coordinate most
/// significant, so ascending codes are lexicographic order on coordinates.
pub fn encode(x: &[Fq], q: u32) -> u64 {
    x.iter().fold(0u64, |acc, c| acc * q as u64 + c.0 as u64)
}

pub fn decode(mut code: u64, q: u32, dim: usize) -> Vector {
    let mut out = vec![Fq::ZERO; dim];
    for slot in out.iter_mut().rev() {
        *slot = Fq((code % q as u64) as u32);
        code /= q as u64;
    }
    out
}

/// `q^dim` as a wide integer.
pub fn universe_size(q: u32, dim: usize) -> u128 {
    (q as u128).pow(dim as u32)
}

/// A finite subset of `F_q^d`, deduplicated and sorted by [`encode`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PointSet {
    dim: usize,
    q: u32,
    codes: Vec<u64>,
    coords: Vec<Fq>,
}

impl PointSet {
    pub fn empty(q: u32, dim: usize) -> Self {
        PointSet {
            dim,
            q,
            codes: Vec::new(),
            coords: Vec::new(),
        }
    }

    /// Collects points, rejecting wrong lengths and out-of-range entries.
    pub fn new<I, V>(field: &Field, dim: usize, points: I) -> Result<Self>
    where
        I: IntoIterator<Item = V>,
        V: AsRef<[Fq]>,
    {
        let q = field.q();
        let mut codes = Vec::new();
        for x in points {
            let x = x.as_ref();
            if x.len() != dim {
                return Err(Error::DimensionMismatch {
                    expected: dim,
                    got: x.len(),
                });
            }
            if let Some(c) = x.iter().find(|c| c.0 >= q) {
                return Err(Error::ElementOutOfRange { index: c.0, q });
            }
            codes.push(encode(x, q));
        }
        Ok(Self::from_codes(q, dim, codes))
    }

    /// Builds a set from codes; duplicates are dropped.
    pub fn from_codes(q: u32, dim: usize, mut codes: Vec<u64>) -> Self {
        codes.sort_unstable();
        codes.dedup();
        let mut coords = Vec::with_capacity(codes.len() * dim);
        for &c in &codes {
            coords.extend(decode(c, q, dim));
        }
        PointSet {
            dim,
            q,
            codes,
            coords,
        }
    }

    /// Every vector of `F_q^dim`.
    pub fn full(field: &Field, dim: usize) -> Result<Self> {
        let n = universe_size(field.q(), dim);
        field.check_scan(n)?;
        Ok(Self::from_codes(field.q(), dim, (0..n as u64).collect()))
    }

    #[inline]
    pub fn dim(&self) -> usize {
        self.dim
    }

    #[inline]
    pub fn q(&self) -> u32 {
        self.q
    }

    #[inline]
    pub fn len(&self) -> usize {
        self.codes.len()
    }

    #[inline]
    pub fn is_empty(&self) -> bool {
        self.codes.is_empty()
    }

    pub fn codes(&self) -> &[u64] {
        &self.codes
    }

    /// Flattened coordinates, `dim` entries per point.
    pub fn coords(&self) -> &[Fq] {
        &self.coords
    }

    pub fn point(&self, i: usize) -> &[Fq] {
        &self.coords[i * self.dim..(i + 1) * self.dim]
    }

    pub fn iter(&self) -> impl ExactSizeIterator<Item = &[Fq]> + '_ {
        let d = self.dim;
        (0..self.len()).map(move |i| &self.coords[i * d..(i + 1) * d])
    }

    pub fn contains(&self, x: &[Fq]) -> bool {
        x.len() == self.dim && self.codes.binary_search(&encode(x, self.q)).is_ok()
    }

    pub fn is_subset_of(&self, other: &PointSet) -> bool {
        self.dim == other.dim
            && self
                .codes
                .iter()
                .all(|c| other.codes.binary_search(c).is_ok())
    }

    /// Cartesian product `self x other` in dimension `dim + other.dim`.
    pub fn product(&self, other: &PointSet) -> PointSet {
        let dim = self.dim + other.dim;
        let mut codes = Vec::with_capacity(self.len() * other.len());
        let shift = (self.q as u64).pow(other.dim as u32);
        for &a in &self.codes {
            for &b in &other.codes {
                codes.push(a * shift + b);
            }
        }
        PointSet::from_codes(self.q, dim, codes)
    }

    pub fn union(&self, other: &PointSet) -> Result<PointSet> {
        if self.dim != other.dim {
            return Err(Error::DimensionMismatch {
                expected: self.dim,
                got: other.dim,
            });
        }
        let mut codes = self.codes.clone();
        codes.extend_from_slice(&other.codes);
        Ok(PointSet::from_codes(self.q, self.dim, codes))
    }

    /// Points as owned vectors, in storage order.
    pub fn to_vectors(&self) -> Vec<Vector> {
        self.iter().map(|x| x.to_vec()).collect()
    }
}

/// `sum x_i^2`.
#[inline]
pub fn norm(field: &Field, x: &[Fq]) -> Fq {
    x.iter()
        .fold(Fq::ZERO, |acc, &c| field.add(acc, field.square(c)))
}

/// `||x - y||`.
#[inline]
pub fn norm_diff(field: &Field, x: &[Fq], y: &[Fq]) -> Fq {
    x.iter().zip(y).fold(Fq::ZERO, |acc, (&a, &b)| {
        field.add(acc, field.square(field.sub(a, b)))
    })
}

#[inline]
pub fn dot(field: &Field, x: &[Fq], y: &[Fq]) -> Fq {
    x.iter()
        .zip(y)
        .fold(Fq::ZERO, |acc, (&a, &b)| field.add(acc, field.mul(a, b)))
}

pub fn sub_vec(field: &Field, x: &[Fq], y: &[Fq]) -> Vector {
    x.iter().zip(y).map(|(&a, &b)| field.sub(a, b)).collect()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, serde::Serialize, serde::Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum FormKind {
    Standard,
    CanonicalEven,
    CanonicalOdd,
    PairStar,
}

/// Which norm is in force.
///
/// The canonical forms are `x_1^2 - x_2^2 + ... -/+ eps x_d^2` (alternating
/// signs on the first `d - 1` coordinates). `PairStar` evaluates
/// `||x|| - ||y||` on a `2d`-vector `(x, y)`; its `dim` is `d`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct QuadraticForm {
    kind: FormKind,
    dim: usize,
    epsilon: Option<Fq>,
}

/// `1` when `d mod 4` is 0 or 1, else `-1`.
pub fn epsilon_for_dimension(field: &Field, d: usize) -> Fq {
    if d % 4 <= 1 {
        Fq::ONE
    } else {
        field.from_int(-1)
    }
}

impl QuadraticForm {
    pub fn standard(dim: usize) -> Self {
        QuadraticForm {
            kind: FormKind::Standard,
            dim,
            epsilon: None,
        }
    }

    pub fn pair_star(dim: usize) -> Self {
        QuadraticForm {
            kind: FormKind::PairStar,
            dim,
            epsilon: None,
        }
    }

    /// Canonical form for `dim`, with the dimension-only choice of epsilon.
    pub fn canonical(field: &Field, dim: usize) -> Result<Self> {
        Self::canonical_with_epsilon(field, dim, epsilon_for_dimension(field, dim))
    }

    /// Canonical form with an explicit epsilon, which must satisfy
    /// `eta((-1)^{floor(d/2)} eps) = 1`.
    pub fn canonical_with_epsilon(field: &Field, dim: usize, epsilon: Fq) -> Result<Self> {
        if dim < 1 {
            return Err(Error::InvalidParameter("canonical form needs d >= 1".into()));
        }
        let sign = if (dim / 2).is_multiple_of(2) { 1 } else { -1 };
        let test = field.mul(field.from_int(sign), epsilon);
        if field.eta(test) != 1 {
            return Err(Error::HypothesisNotMet(format!(
                "eta((-1)^{} * {epsilon}) != 1 in F_{}",
                dim / 2,
                field.q()
            )));
        }
        let kind = if dim.is_multiple_of(2) {
            FormKind::CanonicalEven
        } else {
            FormKind::CanonicalOdd
        };
        Ok(QuadraticForm {
            kind,
            dim,
            epsilon: Some(epsilon),
        })
    }

    pub fn kind(&self) -> FormKind {
        self.kind
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn epsilon(&self) -> Option<Fq> {
        self.epsilon
    }

    /// Length of the vectors the form accepts.
    pub fn input_dim(&self) -> usize {
        match self.kind {
            FormKind::PairStar => 2 * self.dim,
            _ => self.dim,
        }
    }

    pub fn eval(&self, field: &Field, x: &[Fq]) -> Result<Fq> {
        if x.len() != self.input_dim() {
            return Err(Error::DimensionMismatch {
                expected: self.input_dim(),
                got: x.len(),
            });
        }
        Ok(self.eval_unchecked(field, x))
    }

    /// Evaluates without the length check; callers guarantee `input_dim`.
    pub fn eval_unchecked(&self, field: &Field, x: &[Fq]) -> Fq {
        match self.kind {
            FormKind::Standard => norm(field, x),
            FormKind::PairStar => {
                let (a, b) = x.split_at(self.dim);
                field.sub(norm(field, a), norm(field, b))
            }
            FormKind::CanonicalEven | FormKind::CanonicalOdd => {
                let d = self.dim;
                let mut acc = Fq::ZERO;
                for (i, &c) in x[..d - 1].iter().enumerate() {
                    let s = field.square(c);
                    acc = if i % 2 == 0 {
                        field.add(acc, s)
                    } else {
                        field.sub(acc, s)
                    };
                }
                let last = field.mul(self.epsilon.unwrap_or(Fq::ONE), field.square(x[d - 1]));
                if self.kind == FormKind::CanonicalEven {
                    field.sub(acc, last)
                } else {
                    field.add(acc, last)
                }
            }
        }
    }
}

/// `||x||_Q` for any supported form.
pub fn norm_form(field: &Field, x: &[Fq], form: &QuadraticForm) -> Result<Fq> {
    form.eval(field, x)
}

/// The sphere `{x in F_q^d : ||x|| = t}` by exhaustive scan.
pub fn sphere_enumerate(field: &Field, t: Fq, d: usize) -> Result<PointSet> {
    let q = field.q();
    let n = universe_size(q, d);
    field.check_scan(n)?;
    let codes = (0..n as u64)
        .filter(|&c| norm(field, &decode(c, q, d)) == t)
        .collect();
    Ok(PointSet::from_codes(q, d, codes))
}

/// Sphere sizes `|S_t|` for every `t`, indexed by `t`, by one exhaustive scan.
pub fn sphere_sizes_enumerated(field: &Field, d: usize) -> Result<Vec<u64>> {
    let q = field.q();
    let n = universe_size(q, d);
    field.check_scan(n)?;
    let mut counts = vec![0u64; q as usize];
    for c in 0..n as u64 {
        counts[norm(field, &decode(c, q, d)).0 as usize] += 1;
    }
    Ok(counts)
}

/// Closed-form `|S_t^{d-1}|` for `d >= 2`.
pub fn sphere_cardinality(field: &Field, t: Fq, d: usize) -> Result<u64> {
    if d < 2 {
        return Err(Error::InvalidParameter(
            "sphere cardinality needs d >= 2".into(),
        ));
    }
    let q = field.q() as i128;
    let minus_one_pow = |e: usize| field.from_int(if e.is_multiple_of(2) { 1 } else { -1 });
    let main = q.pow(d as u32 - 1);
    let size = if d.is_multiple_of(2) {
        let omega = if t.is_zero() { q - 1 } else { -1 };
        let eta = field.eta(minus_one_pow(d / 2)) as i128;
        main + omega * q.pow((d as u32 - 2) / 2) * eta
    } else {
        let eta = field.eta(field.mul(t, minus_one_pow((d - 1) / 2))) as i128;
        main + q.pow((d as u32 - 1) / 2) * eta
    };
    Ok(size as u64)
}

/// The coordinate plane `P_{axes}`: coordinates outside `axes` are zero.
/// Axes are 0-based.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CoordinatePlane {
    dim: usize,
    axes: Vec<usize>,
}

impl CoordinatePlane {
    pub fn new(dim: usize, axes: &[usize]) -> Result<Self> {
        let mut axes = axes.to_vec();
        axes.sort_unstable();
        axes.dedup();
        if axes.is_empty() {
            return Err(Error::InvalidParameter("coordinate plane needs an axis".into()));
        }
        if let Some(&a) = axes.iter().find(|&&a| a >= dim) {
            return Err(Error::InvalidParameter(format!(
                "axis {a} out of range for dimension {dim}"
            )));
        }
        Ok(CoordinatePlane { dim, axes })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn axes(&self) -> &[usize] {
        &self.axes
    }

    pub fn k(&self) -> usize {
        self.axes.len()
    }

    pub fn size(&self, q: u32) -> u128 {
        universe_size(q, self.k())
    }

    /// Places `local` (length `k`) on the plane's axes.
    pub fn embed(&self, local: &[Fq]) -> Vector {
        let mut x = vec![Fq::ZERO; self.dim];
        for (&axis, &c) in self.axes.iter().zip(local) {
            x[axis] = c;
        }
        x
    }

    pub fn contains(&self, x: &[Fq]) -> bool {
        x.len() == self.dim
            && x
                .iter()
                .enumerate()
                .all(|(i, c)| c.is_zero() || self.axes.binary_search(&i).is_ok())
    }

    pub fn enumerate(&self, field: &Field) -> Result<PointSet> {
        let n = self.size(field.q());
        field.check_scan(n)?;
        let q = field.q();
        let points = (0..n as u64).map(|c| self.embed(&decode(c, q, self.k())));
        PointSet::new(field, self.dim, points)
    }
}

/// `x -> M x + v` on `F_q^d`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AffineMap {
    dim: usize,
    /// Row-major `dim x dim`.
    matrix: Vec<Fq>,
    shift: Vector,
}

impl AffineMap {
    pub fn identity(dim: usize) -> Self {
        let mut matrix = vec![Fq::ZERO; dim * dim];
        for i in 0..dim {
            matrix[i * dim + i] = Fq::ONE;
        }
        AffineMap {
            dim,
            matrix,
            shift: vec![Fq::ZERO; dim],
        }
    }

    pub fn translation(shift: Vector) -> Self {
        let mut m = Self::identity(shift.len());
        m.shift = shift;
        m
    }

    pub fn linear(dim: usize, matrix: Vec<Fq>) -> Result<Self> {
        if matrix.len() != dim * dim {
            return Err(Error::DimensionMismatch {
                expected: dim * dim,
                got: matrix.len(),
            });
        }
        Ok(AffineMap {
            dim,
            matrix,
            shift: vec![Fq::ZERO; dim],
        })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn entry(&self, row: usize, col: usize) -> Fq {
        self.matrix[row * self.dim + col]
    }

    pub fn matrix(&self) -> &[Fq] {
        &self.matrix
    }

    pub fn shift(&self) -> &[Fq] {
        &self.shift
    }

    pub fn apply(&self, field: &Field, x: &[Fq]) -> Vector {
        let d = self.dim;
        (0..d)
            .map(|r| field.add(dot(field, &self.matrix[r * d..(r + 1) * d], x), self.shift[r]))
            .collect()
    }

    /// `{M x + v : x in set}`.
    pub fn apply_set(&self, field: &Field, set: &PointSet) -> Result<PointSet> {
        if set.dim() != self.dim {
            return Err(Error::DimensionMismatch {
                expected: self.dim,
                got: set.dim(),
            });
        }
        PointSet::new(field, self.dim, set.iter().map(|x| self.apply(field, x)))
    }

    /// `self after inner`: `x -> self(inner(x))`.
    pub fn compose(&self, field: &Field, inner: &AffineMap) -> Result<AffineMap> {
        if inner.dim != self.dim {
            return Err(Error::DimensionMismatch {
                expected: self.dim,
                got: inner.dim,
            });
        }
        let d = self.dim;
        let mut matrix = vec![Fq::ZERO; d * d];
        for r in 0..d {
            for c in 0..d {
                let mut acc = Fq::ZERO;
                for k in 0..d {
                    acc = field.add(acc, field.mul(self.entry(r, k), inner.entry(k, c)));
                }
                matrix[r * d + c] = acc;
            }
        }
        let shift = self.apply(field, &inner.shift);
        Ok(AffineMap { dim: d, matrix, shift })
    }

    /// Inverse of an orthogonal map: `x -> M^T (x - v)`.
    pub fn orthogonal_inverse(&self, field: &Field) -> Result<AffineMap> {
        if !self.is_orthogonal(field) {
            return Err(Error::InvalidParameter("map is not orthogonal".into()));
        }
        let d = self.dim;
        let mut matrix = vec![Fq::ZERO; d * d];
        for r in 0..d {
            for c in 0..d {
                matrix[r * d + c] = self.entry(c, r);
            }
        }
        let lin = AffineMap {
            dim: d,
            matrix,
            shift: vec![Fq::ZERO; d],
        };
        let neg_shift: Vector = self.shift.iter().map(|&s| field.neg(s)).collect();
        lin.compose(field, &AffineMap::translation(neg_shift))
    }

    /// `M^T M = I`.
    pub fn is_orthogonal(&self, field: &Field) -> bool {
        let d = self.dim;
        (0..d).all(|r| {
            (0..d).all(|c| {
                let mut acc = Fq::ZERO;
                for k in 0..d {
                    acc = field.add(acc, field.mul(self.entry(k, r), self.entry(k, c)));
                }
                acc == if r == c { Fq::ONE } else { Fq::ZERO }
            })
        })
    }

    /// Determinant of the linear part by Gaussian elimination.
    pub fn det(&self, field: &Field) -> Fq {
        let d = self.dim;
        let mut m = self.matrix.clone();
        let mut det = Fq::ONE;
        for col in 0..d {
            let Some(pivot) = (col..d).find(|&r| !m[r * d + col].is_zero()) else {
                return Fq::ZERO;
            };
            if pivot != col {
                for c in 0..d {
                    m.swap(pivot * d + c, col * d + c);
                }
                det = field.neg(det);
            }
            let pv = m[col * d + col];
            det = field.mul(det, pv);
            let pinv = field.inv(pv).expect("pivot is nonzero");
            for r in col + 1..d {
                let factor = field.mul(m[r * d + col], pinv);
                if factor.is_zero() {
                    continue;
                }
                for c in col..d {
                    let v = field.mul(factor, m[col * d + c]);
                    m[r * d + c] = field.sub(m[r * d + c], v);
                }
            }
        }
        det
    }

    /// Orthogonal with determinant one.
    pub fn is_rotation(&self, field: &Field) -> bool {
        self.is_orthogonal(field) && self.det(field) == Fq::ONE
    }
}

/// The rotation taking the slope-`lambda` line through the origin onto the
/// first axis. Requires `1 + lambda^2` to be a nonzero square; the root with
/// the smaller index is used.
pub fn rotation_r(field: &Field, lambda: Fq) -> Result<AffineMap> {
    let s = field.add(Fq::ONE, field.square(lambda));
    if field.eta(s) != 1 {
        return Err(Error::HypothesisNotMet(format!(
            "1 + {lambda}^2 = {s} is not a nonzero square in F_{}",
            field.q()
        )));
    }
    let root = field.sqrt(s).expect("eta = 1 implies a root");
    let c = field.inv(root)?;
    let lc = field.mul(lambda, c);
    AffineMap::linear(2, vec![c, lc, field.neg(lc), c])
}

/// Slopes `lambda` (zero included) with `eta(1 + lambda^2) = 1`.
pub fn rotatable_slopes(field: &Field) -> Vec<Fq> {
    field
        .elements()
        .filter(|&l| field.eta(field.add(Fq::ONE, field.square(l))) == 1)
        .collect()
}

/// A 2x2 map acting on coordinates `i` and `j` of `F_q^d`, identity elsewhere.
pub fn embed_plane_rotation(dim: usize, i: usize, j: usize, rot: &AffineMap) -> Result<AffineMap> {
    if rot.dim() != 2 || i == j || i >= dim || j >= dim {
        return Err(Error::InvalidParameter(format!(
            "cannot embed a 2x2 rotation on axes ({i}, {j}) in dimension {dim}"
        )));
    }
    let mut m = AffineMap::identity(dim);
    m.matrix[i * dim + i] = rot.entry(0, 0);
    m.matrix[i * dim + j] = rot.entry(0, 1);
    m.matrix[j * dim + i] = rot.entry(1, 0);
    m.matrix[j * dim + j] = rot.entry(1, 1);
    Ok(m)
}

/// A product of `dim` random plane rotations from [`rotation_r`].
pub fn random_rotation<R: Rng + ?Sized>(field: &Field, dim: usize, rng: &mut R) -> AffineMap {
    let mut acc = AffineMap::identity(dim);
    if dim < 2 {
        return acc;
    }
    let slopes = rotatable_slopes(field);
    for _ in 0..dim {
        let i = rng.gen_range(0..dim);
        let mut j = rng.gen_range(0..dim - 1);
        if j >= i {
            j += 1;
        }
        let lambda = slopes[rng.gen_range(0..slopes.len())];
        let rot = rotation_r(field, lambda).expect("slope is rotatable");
        let step = embed_plane_rotation(dim, i, j, &rot).expect("valid axes");
        acc = step.compose(field, &acc).expect("same dimension");
    }
    acc
}

pub fn random_vector<R: Rng + ?Sized>(field: &Field, dim: usize, rng: &mut R) -> Vector {
    (0..dim).map(|_| Fq(rng.gen_range(0..field.q()))).collect()
}

/// A `k`-coordinatable plane: the image of a coordinate plane under a
/// rotation followed by a translation. `map` sends the coordinate plane onto
/// this plane; its inverse is the witness sending the plane back.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CoordinatablePlane {
    plane: CoordinatePlane,
    map: AffineMap,
}

impl CoordinatablePlane {
    pub fn new(field: &Field, plane: CoordinatePlane, map: AffineMap) -> Result<Self> {
        if map.dim() != plane.dim() {
            return Err(Error::DimensionMismatch {
                expected: plane.dim(),
                got: map.dim(),
            });
        }
        if !map.is_rotation(field) {
            return Err(Error::InvalidParameter(
                "linear part of a coordinatable map must lie in SO_d".into(),
            ));
        }
        Ok(CoordinatablePlane { plane, map })
    }

    pub fn coordinate(plane: CoordinatePlane) -> Self {
        let map = AffineMap::identity(plane.dim());
        CoordinatablePlane { plane, map }
    }

    /// `L_lambda(a, b)` as a coordinatable plane, when `1 + lambda^2` is a square.
    pub fn line(field: &Field, lambda: Fq, a: Fq, b: Fq) -> Result<Self> {
        let rot = rotation_r(field, lambda)?;
        let back = rot.orthogonal_inverse(field)?;
        let map = AffineMap::translation(vec![a, b]).compose(field, &back)?;
        Ok(CoordinatablePlane {
            plane: CoordinatePlane::new(2, &[0])?,
            map,
        })
    }

    /// Random axes, rotation and translation.
    pub fn random<R: Rng + ?Sized>(field: &Field, dim: usize, k: usize, rng: &mut R) -> Result<Self> {
        if k == 0 || k > dim {
            return Err(Error::InvalidParameter(format!(
                "plane dimension {k} not in 1..={dim}"
            )));
        }
        let axes = index::sample(rng, dim, k).into_vec();
        let plane = CoordinatePlane::new(dim, &axes)?;
        let rot = random_rotation(field, dim, rng);
        let shift = random_vector(field, dim, rng);
        let map = AffineMap::translation(shift).compose(field, &rot)?;
        Ok(CoordinatablePlane { plane, map })
    }

    pub fn plane(&self) -> &CoordinatePlane {
        &self.plane
    }

    pub fn map(&self) -> &AffineMap {
        &self.map
    }

    pub fn k(&self) -> usize {
        self.plane.k()
    }

    pub fn point(&self, field: &Field, local: &[Fq]) -> Vector {
        self.map.apply(field, &self.plane.embed(local))
    }

    pub fn enumerate(&self, field: &Field) -> Result<PointSet> {
        self.map.apply_set(field, &self.plane.enumerate(field)?)
    }

    /// A uniformly random subset of the plane with `size` points.
    pub fn sample_subset<R: Rng + ?Sized>(
        &self,
        field: &Field,
        size: usize,
        rng: &mut R,
    ) -> Result<PointSet> {
        let n = self.plane.size(field.q());
        if size as u128 > n {
            return Err(Error::InvalidParameter(format!(
                "cannot take {size} points from a plane of {n}"
            )));
        }
        let q = field.q();
        let k = self.k();
        let picks = index::sample(rng, n as usize, size);
        PointSet::new(
            field,
            self.plane.dim(),
            picks
                .into_iter()
                .map(|c| self.point(field, &decode(c as u64, q, k))),
        )
    }
}

/// `L_lambda(a, b) = {(x + a, lambda x + b)}`.
pub fn line_l(field: &Field, lambda: Fq, a: Fq, b: Fq) -> PointSet {
    let points = field
        .elements()
        .map(|x| vec![field.add(x, a), field.add(field.mul(lambda, x), b)]);
    PointSet::new(field, 2, points).expect("points lie in F_q^2")
}

/// A uniformly random subset of `F_q^dim` with `size` points.
pub fn random_subset<R: Rng + ?Sized>(
    field: &Field,
    dim: usize,
    size: usize,
    rng: &mut R,
) -> Result<PointSet> {
    let n = universe_size(field.q(), dim);
    if size as u128 > n {
        return Err(Error::InvalidParameter(format!(
            "cannot take {size} points from a universe of {n}"
        )));
    }
    let codes = index::sample(rng, n as usize, size)
        .into_iter()
        .map(|c| c as u64)
        .collect();
    Ok(PointSet::from_codes(field.q(), dim, codes))
}
