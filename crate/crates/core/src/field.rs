//! Arithmetic in `F_q`, `q = p^ell` with `p` an odd prime.
//!
//! Elements are encoded as integers in `[0, q)`: the polynomial
//! `c_0 + c_1 x + ... + c_{ell-1} x^{ell-1}` has index `sum c_i p^i`. Index 0
//! is zero and index 1 is one; the prime subfield is exactly `[0, p)`.
//!
//! All tables (logarithms, squares, square roots, the quadratic character,
//! the absolute trace and the canonical additive character) are built once at
//! construction and the field is immutable afterwards.

use std::f64::consts::TAU;
use std::fmt;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Largest field order accepted by [`Field::new`].
pub const MAX_FIELD_ORDER: u64 = 1_000_000;

/// Default ceiling on the number of terms an exhaustive scan may touch.
pub const DEFAULT_MAX_UNIVERSE: u64 = 10_000_000;

/// Full add tables are kept for extension fields up to this order.
const ADD_TABLE_MAX_ORDER: u32 = 1024;

const NO_ROOT: u32 = u32::MAX;

/// A value of an additive character, or a sum of such values.
pub type CharacterValue = Complex64;

/// Absolute tolerance for a character sum over `terms` summands.
pub fn char_sum_tolerance(terms: usize) -> f64 {
    1e-9 * terms.max(1) as f64
}

/// An element of `F_q`, stored as its canonical index.
#[derive(
    Clone, Copy, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize,
)]
#[serde(transparent)]
pub struct Fq(pub u32);

impl Fq {
    pub const ZERO: Fq = Fq(0);
    pub const ONE: Fq = Fq(1);

    #[inline]
    pub fn index(self) -> u32 {
        self.0
    }

    #[inline]
    pub fn is_zero(self) -> bool {
        self.0 == 0
    }
}

impl fmt::Display for Fq {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// Serializable description of a field: characteristic, degree and modulus
/// coefficients `[c_0, ..., c_ell]` (monic, so `c_ell = 1`).
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FieldDescriptor {
    pub p: u32,
    pub ell: u32,
    pub modulus: Vec<u32>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ArithOp {
    Add,
    Sub,
    Mul,
    Div,
    Neg,
    Inv,
}

/// A concrete finite field of odd characteristic with precomputed tables.
#[derive(Debug, Clone)]
pub struct Field {
    p: u32,
    ell: u32,
    q: u32,
    modulus: Vec<u32>,
    /// `exp[k] = g^k` for a fixed primitive element `g`, `k < q - 1`.
    exp: Vec<u32>,
    /// `log[g^k] = k`; `log[0]` is unused.
    log: Vec<u32>,
    neg: Vec<u32>,
    add_table: Option<Vec<u32>>,
    square: Vec<u32>,
    root: Vec<u32>,
    eta: Vec<i8>,
    trace: Vec<u32>,
    chi: Vec<Complex64>,
    max_universe: u64,
}

pub(crate) fn is_prime(n: u32) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2u32;
    while (d as u64) * (d as u64) <= n as u64 {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

fn digits(mut index: u32, p: u32, ell: u32) -> Vec<u32> {
    let mut out = Vec::with_capacity(ell as usize);
    for _ in 0..ell {
        out.push(index % p);
        index /= p;
    }
    out
}

fn from_digits(coeffs: &[u32], p: u32) -> u32 {
    coeffs.iter().rev().fold(0u32, |acc, &c| acc * p + c)
}

/// Remainder of `f` modulo the monic polynomial `g` over `F_p`.
fn poly_rem(f: &[u32], g: &[u32], p: u32) -> Vec<u32> {
    let mut r: Vec<u64> = f.iter().map(|&c| c as u64).collect();
    let dg = g.len() - 1;
    let p64 = p as u64;
    while r.len() > dg {
        let lead = r.pop().unwrap() % p64;
        if lead == 0 {
            continue;
        }
        let shift = r.len() - dg;
        for (i, &gc) in g[..dg].iter().enumerate() {
            let sub = lead * gc as u64 % p64;
            r[shift + i] = (r[shift + i] + p64 - sub) % p64;
        }
    }
    r.into_iter().map(|c| (c % p64) as u32).collect()
}

/// Irreducibility by exhaustive search for a monic factor of degree at most
/// half the degree of `f`.
pub(crate) fn is_irreducible(f: &[u32], p: u32) -> bool {
    let deg = f.len() - 1;
    if deg == 0 || *f.last().unwrap() != 1 {
        return false;
    }
    for k in 1..=deg / 2 {
        let count = (p as u64).pow(k as u32);
        for c in 0..count {
            let mut g = digits(c as u32, p, k as u32);
            g.push(1);
            if poly_rem(f, &g, p).iter().all(|&x| x == 0) {
                return false;
            }
        }
    }
    true
}

/// Lowest-index monic irreducible polynomial of degree `ell` over `F_p`,
/// ordering candidates by the index `sum c_i p^i` of their lower
/// coefficients. For `ell = 1` this is `x`.
fn default_modulus(p: u32, ell: u32) -> Vec<u32> {
    let q = p.pow(ell);
    for c in 0..q {
        let mut f = digits(c, p, ell);
        f.push(1);
        if is_irreducible(&f, p) {
            return f;
        }
    }
    unreachable!("an irreducible polynomial of every degree exists")
}

fn poly_mulmod(a: &[u32], b: &[u32], modulus: &[u32], p: u32) -> Vec<u32> {
    let n = a.len();
    let p64 = p as u64;
    let mut prod = vec![0u64; 2 * n - 1];
    for (i, &x) in a.iter().enumerate() {
        if x == 0 {
            continue;
        }
        for (j, &y) in b.iter().enumerate() {
            prod[i + j] = (prod[i + j] + x as u64 * y as u64) % p64;
        }
    }
    let prod: Vec<u32> = prod.into_iter().map(|c| c as u32).collect();
    let mut r = poly_rem(&prod, modulus, p);
    r.resize(n, 0);
    r
}

impl Field {
    /// Builds `F_{p^ell}` with the default modulus.
    pub fn new(p: u32, ell: u32) -> Result<Self> {
        Self::check_params(p, ell)?;
        let modulus = default_modulus(p, ell);
        Ok(Self::build(p, ell, modulus))
    }

    /// Builds `F_{p^ell}` from an explicit modulus `[c_0, ..., c_ell]`.
    pub fn with_modulus(p: u32, modulus: Vec<u32>) -> Result<Self> {
        if modulus.len() < 2 {
            return Err(Error::BadModulus(modulus));
        }
        let ell = (modulus.len() - 1) as u32;
        Self::check_params(p, ell)?;
        if modulus.iter().any(|&c| c >= p) || !is_irreducible(&modulus, p) {
            return Err(Error::BadModulus(modulus));
        }
        Ok(Self::build(p, ell, modulus))
    }

    pub fn from_descriptor(desc: &FieldDescriptor) -> Result<Self> {
        if desc.modulus.len() != desc.ell as usize + 1 {
            return Err(Error::BadModulus(desc.modulus.clone()));
        }
        Self::with_modulus(desc.p, desc.modulus.clone())
    }

    /// The field of order `q`, if `q` is a power of an odd prime.
    pub fn from_order(q: u32) -> Result<Self> {
        let p = (2..=q).find(|d| q.is_multiple_of(*d)).ok_or(Error::NotOddPrime(q))?;
        let mut ell = 0;
        let mut rest = q;
        while rest.is_multiple_of(p) {
            rest /= p;
            ell += 1;
        }
        if rest != 1 {
            return Err(Error::InvalidParameter(format!("{q} is not a prime power")));
        }
        Self::new(p, ell)
    }

    /// Replaces the ceiling used by [`Field::check_scan`].
    pub fn with_max_universe(mut self, limit: u64) -> Self {
        self.max_universe = limit;
        self
    }

    fn check_params(p: u32, ell: u32) -> Result<()> {
        if p == 2 || !is_prime(p) {
            return Err(Error::NotOddPrime(p));
        }
        if ell == 0 {
            return Err(Error::ZeroDegree);
        }
        match (p as u64).checked_pow(ell) {
            Some(q) if q <= MAX_FIELD_ORDER => Ok(()),
            _ => Err(Error::FieldTooLarge {
                p,
                ell,
                limit: MAX_FIELD_ORDER,
            }),
        }
    }

    fn build(p: u32, ell: u32, modulus: Vec<u32>) -> Self {
        let q = p.pow(ell);
        let qu = q as usize;

        let raw_mul = |a: u32, b: u32| -> u32 {
            if ell == 1 {
                ((a as u64 * b as u64) % p as u64) as u32
            } else {
                let r = poly_mulmod(&digits(a, p, ell), &digits(b, p, ell), &modulus, p);
                from_digits(&r, p)
            }
        };

        // Discrete log tables from the first primitive element.
        let order = q - 1;
        let mut exp = vec![0u32; order as usize];
        let mut log = vec![0u32; qu];
        let mut g = 2.min(q - 1);
        loop {
            let mut cur = 1u32;
            let mut ok = true;
            for k in 0..order {
                if k > 0 && cur == 1 {
                    ok = false;
                    break;
                }
                exp[k as usize] = cur;
                log[cur as usize] = k;
                cur = raw_mul(cur, g);
            }
            if ok && cur == 1 {
                break;
            }
            g += 1;
        }

        let neg: Vec<u32> = (0..q)
            .map(|a| {
                if ell == 1 {
                    (p - a) % p
                } else {
                    let d: Vec<u32> = digits(a, p, ell).iter().map(|&c| (p - c) % p).collect();
                    from_digits(&d, p)
                }
            })
            .collect();

        let mut field = Field {
            p,
            ell,
            q,
            modulus,
            exp,
            log,
            neg,
            add_table: None,
            square: Vec::new(),
            root: Vec::new(),
            eta: Vec::new(),
            trace: Vec::new(),
            chi: Vec::new(),
            max_universe: DEFAULT_MAX_UNIVERSE,
        };

        if ell > 1 && q <= ADD_TABLE_MAX_ORDER {
            let mut table = vec![0u32; qu * qu];
            for a in 0..q {
                for b in 0..q {
                    table[(a * q + b) as usize] = field.add_digits(a, b);
                }
            }
            field.add_table = Some(table);
        }

        let square: Vec<u32> = (0..q).map(|a| field.mul(Fq(a), Fq(a)).0).collect();
        let mut root = vec![NO_ROOT; qu];
        for a in 0..q {
            let s = square[a as usize] as usize;
            if root[s] == NO_ROOT {
                root[s] = a;
            }
        }
        let eta: Vec<i8> = (0..qu)
            .map(|s| match (s, root[s]) {
                (0, _) => 0,
                (_, NO_ROOT) => -1,
                _ => 1,
            })
            .collect();
        field.square = square;
        field.root = root;
        field.eta = eta;

        let trace: Vec<u32> = (0..q)
            .map(|a| {
                let mut acc = Fq::ZERO;
                let mut power = Fq(a);
                for _ in 0..ell {
                    acc = field.add(acc, power);
                    power = field.pow(power, p as u64);
                }
                debug_assert!(acc.0 < p, "trace must land in the prime subfield");
                acc.0
            })
            .collect();
        let chi: Vec<Complex64> = trace
            .iter()
            .map(|&t| Complex64::from_polar(1.0, TAU * t as f64 / p as f64))
            .collect();
        field.trace = trace;
        field.chi = chi;
        field
    }

    fn add_digits(&self, a: u32, b: u32) -> u32 {
        let (p, mut a, mut b) = (self.p, a, b);
        let mut out = 0u32;
        let mut place = 1u32;
        for _ in 0..self.ell {
            let c = (a % p + b % p) % p;
            out += c * place;
            place = place.wrapping_mul(p);
            a /= p;
            b /= p;
        }
        out
    }

    #[inline]
    pub fn p(&self) -> u32 {
        self.p
    }

    #[inline]
    pub fn ell(&self) -> u32 {
        self.ell
    }

    #[inline]
    pub fn q(&self) -> u32 {
        self.q
    }

    pub fn modulus(&self) -> &[u32] {
        &self.modulus
    }

    pub fn max_universe(&self) -> u64 {
        self.max_universe
    }

    pub fn descriptor(&self) -> FieldDescriptor {
        FieldDescriptor {
            p: self.p,
            ell: self.ell,
            modulus: self.modulus.clone(),
        }
    }

    /// Fails if a scan of `needed` terms exceeds the configured ceiling.
    pub fn check_scan(&self, needed: u128) -> Result<()> {
        if needed > self.max_universe as u128 {
            Err(Error::ScanTooLarge {
                needed,
                limit: self.max_universe,
            })
        } else {
            Ok(())
        }
    }

    pub fn elem(&self, index: u32) -> Result<Fq> {
        if index < self.q {
            Ok(Fq(index))
        } else {
            Err(Error::ElementOutOfRange { index, q: self.q })
        }
    }

    /// The prime-subfield element `n mod p`.
    pub fn from_int(&self, n: i64) -> Fq {
        Fq(n.rem_euclid(self.p as i64) as u32)
    }

    pub fn elements(&self) -> impl Iterator<Item = Fq> + Clone {
        (0..self.q).map(Fq)
    }

    pub fn nonzero_elements(&self) -> impl Iterator<Item = Fq> + Clone {
        (1..self.q).map(Fq)
    }

    /// Coefficients `(c_0, ..., c_{ell-1})` of the polynomial representative.
    pub fn coefficients(&self, a: Fq) -> Vec<u32> {
        digits(a.0, self.p, self.ell)
    }

    pub fn from_coefficients(&self, coeffs: &[u32]) -> Result<Fq> {
        if coeffs.len() != self.ell as usize || coeffs.iter().any(|&c| c >= self.p) {
            return Err(Error::InvalidParameter(format!(
                "coefficient vector {coeffs:?} does not describe an element of F_{}",
                self.q
            )));
        }
        Ok(Fq(from_digits(coeffs, self.p)))
    }

    #[inline]
    pub fn add(&self, a: Fq, b: Fq) -> Fq {
        if self.ell == 1 {
            let s = a.0 + b.0;
            Fq(if s >= self.p { s - self.p } else { s })
        } else if let Some(t) = &self.add_table {
            Fq(t[(a.0 * self.q + b.0) as usize])
        } else {
            Fq(self.add_digits(a.0, b.0))
        }
    }

    #[inline]
    pub fn neg(&self, a: Fq) -> Fq {
        Fq(self.neg[a.0 as usize])
    }

    #[inline]
    pub fn sub(&self, a: Fq, b: Fq) -> Fq {
        self.add(a, self.neg(b))
    }

    #[inline]
    pub fn mul(&self, a: Fq, b: Fq) -> Fq {
        if self.ell == 1 {
            return Fq(((a.0 as u64 * b.0 as u64) % self.p as u64) as u32);
        }
        if a.0 == 0 || b.0 == 0 {
            return Fq::ZERO;
        }
        let order = self.q - 1;
        let k = self.log[a.0 as usize] + self.log[b.0 as usize];
        let k = if k >= order { k - order } else { k };
        Fq(self.exp[k as usize])
    }

    pub fn inv(&self, a: Fq) -> Result<Fq> {
        if a.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let order = self.q - 1;
        let k = (order - self.log[a.0 as usize]) % order;
        Ok(Fq(self.exp[k as usize]))
    }

    pub fn div(&self, a: Fq, b: Fq) -> Result<Fq> {
        Ok(self.mul(a, self.inv(b)?))
    }

    pub fn pow(&self, a: Fq, e: u64) -> Fq {
        if e == 0 {
            return Fq::ONE;
        }
        if a.is_zero() {
            return Fq::ZERO;
        }
        let order = (self.q - 1) as u64;
        let k = (self.log[a.0 as usize] as u64 * (e % order)) % order;
        Fq(self.exp[k as usize])
    }

    /// Dispatches a binary or unary operation; `b` is ignored for `Neg` and `Inv`.
    pub fn arith(&self, a: Fq, b: Fq, op: ArithOp) -> Result<Fq> {
        match op {
            ArithOp::Add => Ok(self.add(a, b)),
            ArithOp::Sub => Ok(self.sub(a, b)),
            ArithOp::Mul => Ok(self.mul(a, b)),
            ArithOp::Div => self.div(a, b),
            ArithOp::Neg => Ok(self.neg(a)),
            ArithOp::Inv => self.inv(a),
        }
    }

    #[inline]
    pub fn square(&self, a: Fq) -> Fq {
        Fq(self.square[a.0 as usize])
    }

    /// The square root with the smaller index, if `a` is a square.
    pub fn sqrt(&self, a: Fq) -> Option<Fq> {
        match self.root[a.0 as usize] {
            NO_ROOT => None,
            r => Some(Fq(r)),
        }
    }

    /// Quadratic character, with `eta(0) = 0`.
    #[inline]
    pub fn eta(&self, a: Fq) -> i8 {
        self.eta[a.0 as usize]
    }

    /// Absolute trace to `F_p`.
    #[inline]
    pub fn trace(&self, a: Fq) -> Fq {
        Fq(self.trace[a.0 as usize])
    }

    /// Canonical additive character `exp(2 pi i Tr(t) / p)`.
    #[inline]
    pub fn chi(&self, a: Fq) -> CharacterValue {
        self.chi[a.0 as usize]
    }

    /// The twisted character `t -> chi(scale * t)`; nontrivial for `scale != 0`.
    #[inline]
    pub fn chi_twisted(&self, scale: Fq, a: Fq) -> CharacterValue {
        self.chi(self.mul(scale, a))
    }

    /// `G_a = sum_{s != 0} eta(s) chi(a s)`.
    pub fn gauss_sum(&self, a: Fq) -> Result<CharacterValue> {
        if a.is_zero() {
            return Err(Error::InvalidParameter("Gauss sum at a = 0".into()));
        }
        Ok(self
            .nonzero_elements()
            .map(|s| self.chi(self.mul(a, s)) * self.eta(s) as f64)
            .sum())
    }

    /// `sum_{s in F_q} chi(a s^2 + b s)` by direct summation.
    pub fn complete_square_direct(&self, a: Fq, b: Fq) -> CharacterValue {
        self.elements()
            .map(|s| {
                let v = self.add(self.mul(a, self.square(s)), self.mul(b, s));
                self.chi(v)
            })
            .sum()
    }

    /// `eta(a) chi(b^2 / (-4a)) G_1`.
    pub fn complete_square_closed(&self, a: Fq, b: Fq) -> Result<CharacterValue> {
        if a.is_zero() {
            return Err(Error::InvalidParameter("complete square at a = 0".into()));
        }
        let minus_four_a = self.mul(self.from_int(-4), a);
        let shift = self.div(self.square(b), minus_four_a)?;
        Ok(self.chi(shift) * self.gauss_sum(Fq::ONE)? * self.eta(a) as f64)
    }

    /// The closed form, checked against direct summation.
    pub fn complete_square_sum(&self, a: Fq, b: Fq) -> Result<CharacterValue> {
        let closed = self.complete_square_closed(a, b)?;
        let direct = self.complete_square_direct(a, b);
        let tol = char_sum_tolerance(self.q as usize);
        if (closed - direct).norm() > tol {
            return Err(Error::NumericalDrift(format!(
                "complete square at a={a}, b={b}: closed {closed} vs direct {direct}"
            )));
        }
        Ok(closed)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn close(a: Complex64, b: Complex64) -> bool {
        (a - b).norm() < 1e-9
    }

    #[test]
    fn prime_field_modulus_is_x() {
        let f = Field::new(5, 1).unwrap();
        assert_eq!(f.q(), 5);
        assert_eq!(f.modulus(), &[0, 1]);
    }

    #[test]
    fn default_moduli_match_hand_scan() {
        assert_eq!(Field::new(3, 2).unwrap().modulus(), &[1, 0, 1]);
        assert_eq!(Field::new(5, 2).unwrap().modulus(), &[2, 0, 1]);
    }

    #[test]
    fn rejects_bad_characteristic_and_size() {
        assert_eq!(Field::new(2, 3).unwrap_err(), Error::NotOddPrime(2));
        assert_eq!(Field::new(9, 1).unwrap_err(), Error::NotOddPrime(9));
        assert_eq!(Field::new(5, 0).unwrap_err(), Error::ZeroDegree);
        assert!(matches!(
            Field::new(3, 20),
            Err(Error::FieldTooLarge { .. })
        ));
    }

    #[test]
    fn rejects_reducible_modulus() {
        // x^2 + 1 = (x + 2)(x + 3) over F_5
        assert!(matches!(
            Field::with_modulus(5, vec![1, 0, 1]),
            Err(Error::BadModulus(_))
        ));
        assert!(Field::with_modulus(5, vec![2, 0, 1]).is_ok());
    }

    #[test]
    fn small_arithmetic() {
        let f5 = Field::new(5, 1).unwrap();
        assert_eq!(f5.mul(Fq(3), Fq(4)), Fq(2));
        let f7 = Field::new(7, 1).unwrap();
        assert_eq!(f7.inv(Fq(3)).unwrap(), Fq(5));
        assert_eq!(f7.div(Fq(1), Fq(0)), Err(Error::DivisionByZero));
        // xi * xi = -1 in F_9 = F_3[x]/(x^2 + 1)
        let f9 = Field::new(3, 2).unwrap();
        let xi = f9.from_coefficients(&[0, 1]).unwrap();
        assert_eq!(xi, Fq(3));
        assert_eq!(f9.mul(xi, xi), Fq(2));
    }

    #[test]
    fn eta_examples() {
        let f5 = Field::new(5, 1).unwrap();
        assert_eq!(f5.eta(Fq(4)), 1);
        assert_eq!(f5.eta(Fq(2)), -1);
        assert_eq!(f5.eta(Fq(0)), 0);
        let f7 = Field::new(7, 1).unwrap();
        assert_eq!(f7.eta(Fq(2)), 1);
        assert_eq!(f7.sqrt(Fq(2)), Some(Fq(3)));
    }

    #[test]
    fn trace_examples() {
        let f5 = Field::new(5, 1).unwrap();
        assert_eq!(f5.trace(Fq(3)), Fq(3));
        let f9 = Field::new(3, 2).unwrap();
        assert_eq!(f9.trace(Fq(3)), Fq(0));
        assert_eq!(f9.trace(Fq(1)), Fq(2));
    }

    #[test]
    fn chi_examples() {
        let f5 = Field::new(5, 1).unwrap();
        assert!(close(f5.chi(Fq(0)), Complex64::new(1.0, 0.0)));
        let c = f5.chi(Fq(1));
        assert!((c.re - 0.309017).abs() < 1e-6 && (c.im - 0.951057).abs() < 1e-6);
        let f9 = Field::new(3, 2).unwrap();
        assert!(close(f9.chi(Fq(3)), Complex64::new(1.0, 0.0)));
    }

    #[test]
    fn gauss_sum_examples() {
        let f5 = Field::new(5, 1).unwrap();
        let g1 = f5.gauss_sum(Fq(1)).unwrap();
        assert!(close(g1, Complex64::new(5f64.sqrt(), 0.0)));
        let g2 = f5.gauss_sum(Fq(2)).unwrap();
        assert!(close(g2, Complex64::new(-(5f64.sqrt()), 0.0)));
        let f7 = Field::new(7, 1).unwrap();
        let g = f7.gauss_sum(Fq(1)).unwrap();
        assert!(close(g * g, Complex64::new(-7.0, 0.0)));
        assert!(f7.gauss_sum(Fq(0)).is_err());
    }

    #[test]
    fn complete_square_examples() {
        let f5 = Field::new(5, 1).unwrap();
        let g1 = f5.gauss_sum(Fq(1)).unwrap();
        assert!(close(f5.complete_square_sum(Fq(1), Fq(0)).unwrap(), g1));
        let v = f5.complete_square_sum(Fq(2), Fq(1)).unwrap();
        assert!(close(v, -f5.chi(Fq(3)) * g1));
        let f7 = Field::new(7, 1).unwrap();
        let v = f7.complete_square_sum(Fq(1), Fq(2)).unwrap();
        let g1 = f7.gauss_sum(Fq(1)).unwrap();
        assert!(close(v, f7.chi(Fq(6)) * g1));
        assert!(f7.complete_square_sum(Fq(0), Fq(2)).is_err());
    }

    #[test]
    fn descriptor_roundtrip() {
        let f = Field::new(5, 2).unwrap();
        let json = serde_json::to_string(&f.descriptor()).unwrap();
        assert_eq!(json, r#"{"p":5,"ell":2,"modulus":[2,0,1]}"#);
        let back: FieldDescriptor = serde_json::from_str(&json).unwrap();
        assert_eq!(Field::from_descriptor(&back).unwrap().modulus(), f.modulus());
    }

    #[test]
    fn from_order_factors() {
        assert_eq!(Field::from_order(27).unwrap().ell(), 3);
        assert!(Field::from_order(15).is_err());
    }
}
