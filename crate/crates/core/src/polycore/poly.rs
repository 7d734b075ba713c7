//! Dense univariate polynomials over [`Scalar`], scalar- and 3-vector-valued.

use std::fmt;
use std::ops::{Add, Index, Mul, Neg, Sub};

use crate::error::{Error, Result};
use crate::exactnum::{Rational, Scalar};

/// A 3-vector of field scalars.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct Vec3(pub [Scalar; 3]);

impl Vec3 {
    pub fn new(x: Scalar, y: Scalar, z: Scalar) -> Self {
        Vec3([x, y, z])
    }

    pub fn ints(x: i64, y: i64, z: i64) -> Self {
        Vec3([Scalar::int(x), Scalar::int(y), Scalar::int(z)])
    }

    pub fn zero() -> Self {
        Vec3::default()
    }

    /// Unit vector along axis `k`.
    pub fn unit(k: usize) -> Self {
        let mut v = Vec3::zero();
        v.0[k] = Scalar::one();
        v
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(Scalar::is_zero)
    }

    pub fn scale(&self, k: &Scalar) -> Vec3 {
        Vec3([&self.0[0] * k, &self.0[1] * k, &self.0[2] * k])
    }

    pub fn dot(&self, o: &Vec3) -> Scalar {
        &self.0[0] * &o.0[0] + &self.0[1] * &o.0[1] + &self.0[2] * &o.0[2]
    }

    pub fn cross(&self, o: &Vec3) -> Vec3 {
        let [a, b, c] = &self.0;
        let [x, y, z] = &o.0;
        Vec3([b * z - c * y, c * x - a * z, a * y - b * x])
    }

    pub fn conj(&self) -> Vec3 {
        Vec3([self.0[0].conj(), self.0[1].conj(), self.0[2].conj()])
    }

    pub fn is_rational(&self) -> bool {
        self.0.iter().all(Scalar::is_rational)
    }

    /// `Some(c)` with `self = c·other` when `other ≠ 0` and the two are parallel.
    pub fn ratio_to(&self, other: &Vec3) -> Option<Scalar> {
        let k = other.0.iter().position(|c| !c.is_zero())?;
        let c = &self.0[k] / &other.0[k];
        (other.scale(&c) == *self).then_some(c)
    }
}

impl Index<usize> for Vec3 {
    type Output = Scalar;
    fn index(&self, i: usize) -> &Scalar {
        &self.0[i]
    }
}

impl Add<&Vec3> for &Vec3 {
    type Output = Vec3;
    fn add(self, o: &Vec3) -> Vec3 {
        Vec3([&self.0[0] + &o.0[0], &self.0[1] + &o.0[1], &self.0[2] + &o.0[2]])
    }
}

impl Sub<&Vec3> for &Vec3 {
    type Output = Vec3;
    fn sub(self, o: &Vec3) -> Vec3 {
        Vec3([&self.0[0] - &o.0[0], &self.0[1] - &o.0[1], &self.0[2] - &o.0[2]])
    }
}

impl Neg for &Vec3 {
    type Output = Vec3;
    fn neg(self) -> Vec3 {
        Vec3([-&self.0[0], -&self.0[1], -&self.0[2]])
    }
}

/// Determinant of the 3×3 matrix with columns `a`, `b`, `c`.
pub fn det3(a: &Vec3, b: &Vec3, c: &Vec3) -> Scalar {
    a.dot(&b.cross(c))
}

/// Re-expands `coeffs` (ascending powers of `t`) in powers of `t − beta`.
///
/// Repeated synthetic division; `O(n²)` field operations.
pub fn shift_coefficients<T, F>(coeffs: &[T], beta: &Scalar, mut axpy: F) -> Vec<T>
where
    T: Clone,
    F: FnMut(&T, &Scalar, &T) -> T,
{
    let mut a = coeffs.to_vec();
    let n = a.len();
    for i in 0..n.saturating_sub(1) {
        for j in (i..n - 1).rev() {
            a[j] = axpy(&a[j], beta, &a[j + 1]);
        }
    }
    a
}

/// Scalar polynomial, ascending powers, trailing zeros trimmed.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct ScalarPoly {
    coeffs: Vec<Scalar>,
}

impl ScalarPoly {
    pub fn new(mut coeffs: Vec<Scalar>) -> Self {
        while coeffs.last().is_some_and(Scalar::is_zero) {
            coeffs.pop();
        }
        ScalarPoly { coeffs }
    }

    pub fn from_ints(c: &[i64]) -> Self {
        Self::new(c.iter().map(|&x| Scalar::int(x)).collect())
    }

    pub fn zero() -> Self {
        ScalarPoly::default()
    }

    pub fn constant(c: Scalar) -> Self {
        Self::new(vec![c])
    }

    pub fn one() -> Self {
        Self::constant(Scalar::one())
    }

    /// `c·t^k`.
    pub fn monomial(c: Scalar, k: usize) -> Self {
        let mut v = vec![Scalar::zero(); k + 1];
        v[k] = c;
        Self::new(v)
    }

    /// `t − root`.
    pub fn linear(root: &Scalar) -> Self {
        Self::new(vec![-root, Scalar::one()])
    }

    pub fn coeffs(&self) -> &[Scalar] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> Scalar {
        self.coeffs.get(i).cloned().unwrap_or_default()
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading(&self) -> Option<&Scalar> {
        self.coeffs.last()
    }

    pub fn eval(&self, t: &Scalar) -> Scalar {
        self.coeffs.iter().rev().fold(Scalar::zero(), |acc, c| &acc * t + c)
    }

    pub fn derivative(&self) -> Self {
        Self::new(
            self.coeffs.iter().enumerate().skip(1).map(|(i, c)| c.scale(&crate::exactnum::rat(i as i64))).collect(),
        )
    }

    /// Antiderivative with zero constant term.
    pub fn integral(&self) -> Self {
        let mut v = vec![Scalar::zero()];
        v.extend(self.coeffs.iter().enumerate().map(|(i, c)| c.scale(&crate::exactnum::ratio(1, i as i64 + 1))));
        Self::new(v)
    }

    pub fn scale(&self, k: &Scalar) -> Self {
        Self::new(self.coeffs.iter().map(|c| c * k).collect())
    }

    pub fn scale_rational(&self, k: &Rational) -> Self {
        Self::new(self.coeffs.iter().map(|c| c.scale(k)).collect())
    }

    pub fn pow(&self, e: u32) -> Self {
        (0..e).fold(Self::one(), |acc, _| &acc * self)
    }

    pub fn conj(&self) -> Self {
        Self::new(self.coeffs.iter().map(Scalar::conj).collect())
    }

    pub fn is_rational(&self) -> bool {
        self.coeffs.iter().all(Scalar::is_rational)
    }

    /// Multiplies by `t^k`.
    pub fn shift_up(&self, k: usize) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        let mut v = vec![Scalar::zero(); k];
        v.extend(self.coeffs.iter().cloned());
        Self::new(v)
    }

    /// Coefficients in powers of `t − beta`; `p(t) = Σ c_i (t−beta)^i`.
    pub fn taylor_shift(&self, beta: &Scalar) -> Vec<Scalar> {
        shift_coefficients(&self.coeffs, beta, |a, b, c| a + &(b * c))
    }

    /// Inverse of [`taylor_shift`](Self::taylor_shift): builds `Σ c_i (t−beta)^i` in the monomial basis.
    pub fn from_shifted(c: &[Scalar], beta: &Scalar) -> Self {
        Self::new(shift_coefficients(c, &-beta, |a, b, c| a + &(b * c)))
    }

    pub fn monic(&self) -> Self {
        match self.leading() {
            None => self.clone(),
            Some(l) => self.scale(&l.inv().expect("leading coefficient is nonzero")),
        }
    }

    pub fn div_rem(&self, divisor: &ScalarPoly) -> Result<(ScalarPoly, ScalarPoly)> {
        let dd = divisor.degree().ok_or(Error::DivisionByZero)?;
        let lead_inv = divisor.coeffs[dd].inv()?;
        let mut rem = self.coeffs.clone();
        if rem.len() <= dd {
            return Ok((ScalarPoly::zero(), self.clone()));
        }
        let mut quot = vec![Scalar::zero(); rem.len() - dd];
        for k in (0..quot.len()).rev() {
            let c = &rem[k + dd] * &lead_inv;
            if !c.is_zero() {
                for (j, dc) in divisor.coeffs.iter().enumerate() {
                    rem[k + j] = &rem[k + j] - &(&c * dc);
                }
            }
            quot[k] = c;
        }
        rem.truncate(dd);
        Ok((ScalarPoly::new(quot), ScalarPoly::new(rem)))
    }

    /// `Some(q)` when `self = q·divisor` exactly.
    pub fn exact_div(&self, divisor: &ScalarPoly) -> Option<ScalarPoly> {
        let (q, r) = self.div_rem(divisor).ok()?;
        r.is_zero().then_some(q)
    }
}

/// Monic greatest common divisor.
pub fn poly_gcd(p: &ScalarPoly, q: &ScalarPoly) -> Result<ScalarPoly> {
    if p.is_zero() && q.is_zero() {
        return Err(Error::BothZero);
    }
    let (mut a, mut b) = (p.clone(), q.clone());
    while !b.is_zero() {
        let (_, r) = a.div_rem(&b)?;
        a = b;
        b = r.monic();
    }
    Ok(a.monic())
}

impl Add<&ScalarPoly> for &ScalarPoly {
    type Output = ScalarPoly;
    fn add(self, o: &ScalarPoly) -> ScalarPoly {
        let n = self.coeffs.len().max(o.coeffs.len());
        ScalarPoly::new((0..n).map(|i| self.coeff(i) + o.coeff(i)).collect())
    }
}

impl Sub<&ScalarPoly> for &ScalarPoly {
    type Output = ScalarPoly;
    fn sub(self, o: &ScalarPoly) -> ScalarPoly {
        let n = self.coeffs.len().max(o.coeffs.len());
        ScalarPoly::new((0..n).map(|i| self.coeff(i) - o.coeff(i)).collect())
    }
}

impl Neg for &ScalarPoly {
    type Output = ScalarPoly;
    fn neg(self) -> ScalarPoly {
        ScalarPoly::new(self.coeffs.iter().map(|c| -c).collect())
    }
}

impl Mul<&ScalarPoly> for &ScalarPoly {
    type Output = ScalarPoly;
    fn mul(self, o: &ScalarPoly) -> ScalarPoly {
        if self.is_zero() || o.is_zero() {
            return ScalarPoly::zero();
        }
        let mut v = vec![Scalar::zero(); self.coeffs.len() + o.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in o.coeffs.iter().enumerate() {
                v[i + j] += &(a * b);
            }
        }
        ScalarPoly::new(v)
    }
}

impl fmt::Display for ScalarPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let terms: Vec<String> = self
            .coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(i, c)| match i {
                0 => format!("({c})"),
                1 => format!("({c})*t"),
                _ => format!("({c})*t^{i}"),
            })
            .collect();
        f.write_str(&terms.join(" + "))
    }
}

/// 3-vector-valued polynomial, stored as a list of vector coefficients.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct Vec3Poly {
    coeffs: Vec<Vec3>,
}

impl Vec3Poly {
    pub fn new(mut coeffs: Vec<Vec3>) -> Self {
        while coeffs.last().is_some_and(Vec3::is_zero) {
            coeffs.pop();
        }
        Vec3Poly { coeffs }
    }

    pub fn zero() -> Self {
        Vec3Poly::default()
    }

    pub fn constant(v: Vec3) -> Self {
        Self::new(vec![v])
    }

    pub fn from_components(x: &ScalarPoly, y: &ScalarPoly, z: &ScalarPoly) -> Self {
        let n = [x, y, z].iter().map(|p| p.coeffs().len()).max().unwrap_or(0);
        Self::new((0..n).map(|i| Vec3::new(x.coeff(i), y.coeff(i), z.coeff(i))).collect())
    }

    pub fn from_int_rows(rows: &[[i64; 3]]) -> Self {
        Self::new(rows.iter().map(|r| Vec3::ints(r[0], r[1], r[2])).collect())
    }

    pub fn coeffs(&self) -> &[Vec3] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> Vec3 {
        self.coeffs.get(i).cloned().unwrap_or_default()
    }

    pub fn component(&self, k: usize) -> ScalarPoly {
        ScalarPoly::new(self.coeffs.iter().map(|v| v.0[k].clone()).collect())
    }

    pub fn components(&self) -> [ScalarPoly; 3] {
        [self.component(0), self.component(1), self.component(2)]
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn eval(&self, t: &Scalar) -> Vec3 {
        self.coeffs.iter().rev().fold(Vec3::zero(), |acc, c| &acc.scale(t) + c)
    }

    pub fn derivative(&self) -> Self {
        let [x, y, z] = self.components();
        Self::from_components(&x.derivative(), &y.derivative(), &z.derivative())
    }

    /// Antiderivative with zero constant of integration.
    pub fn integral(&self) -> Self {
        let [x, y, z] = self.components();
        Self::from_components(&x.integral(), &y.integral(), &z.integral())
    }

    pub fn scale(&self, k: &Scalar) -> Self {
        Self::new(self.coeffs.iter().map(|v| v.scale(k)).collect())
    }

    /// Scalar polynomial times vector polynomial.
    pub fn mul_scalar_poly(&self, p: &ScalarPoly) -> Self {
        let [x, y, z] = self.components();
        Self::from_components(&(&x * p), &(&y * p), &(&z * p))
    }

    pub fn cross(&self, o: &Vec3Poly) -> Self {
        let [a, b, c] = self.components();
        let [x, y, z] = o.components();
        Self::from_components(&(&(&b * &z) - &(&c * &y)), &(&(&c * &x) - &(&a * &z)), &(&(&a * &y) - &(&b * &x)))
    }

    pub fn dot(&self, o: &Vec3Poly) -> ScalarPoly {
        let [a, b, c] = self.components();
        let [x, y, z] = o.components();
        &(&(&a * &x) + &(&b * &y)) + &(&c * &z)
    }

    pub fn conj(&self) -> Self {
        Self::new(self.coeffs.iter().map(Vec3::conj).collect())
    }

    pub fn is_rational(&self) -> bool {
        self.coeffs.iter().all(Vec3::is_rational)
    }

    pub fn taylor_shift(&self, beta: &Scalar) -> Vec<Vec3> {
        shift_coefficients(&self.coeffs, beta, |a, b, c| a + &c.scale(b))
    }

    pub fn from_shifted(c: &[Vec3], beta: &Scalar) -> Self {
        Self::new(shift_coefficients(c, &-beta, |a, b, c| a + &c.scale(b)))
    }

    /// Componentwise exact division by a scalar polynomial.
    pub fn exact_div(&self, divisor: &ScalarPoly) -> Option<Vec3Poly> {
        let [x, y, z] = self.components();
        Some(Self::from_components(&x.exact_div(divisor)?, &y.exact_div(divisor)?, &z.exact_div(divisor)?))
    }
}

/// `det[F, F', F'']` as a scalar polynomial.
pub fn det_poly(a: &Vec3Poly, b: &Vec3Poly, c: &Vec3Poly) -> ScalarPoly {
    a.dot(&b.cross(c))
}

impl Add<&Vec3Poly> for &Vec3Poly {
    type Output = Vec3Poly;
    fn add(self, o: &Vec3Poly) -> Vec3Poly {
        let n = self.coeffs.len().max(o.coeffs.len());
        Vec3Poly::new((0..n).map(|i| &self.coeff(i) + &o.coeff(i)).collect())
    }
}

impl Sub<&Vec3Poly> for &Vec3Poly {
    type Output = Vec3Poly;
    fn sub(self, o: &Vec3Poly) -> Vec3Poly {
        let n = self.coeffs.len().max(o.coeffs.len());
        Vec3Poly::new((0..n).map(|i| &self.coeff(i) - &o.coeff(i)).collect())
    }
}

impl Neg for &Vec3Poly {
    type Output = Vec3Poly;
    fn neg(self) -> Vec3Poly {
        Vec3Poly::new(self.coeffs.iter().map(|v| -v).collect())
    }
}
