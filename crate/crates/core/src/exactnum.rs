//! Exact coefficient fields.
//!
//! [`Rational`] is an arbitrary-precision fraction kept in lowest terms.
//! [`Scalar`] is an element `re + im·√d` of the quadratic extension `ℚ(√d)`
//! for a negative rational radicand `d`. A scalar with `im = 0` is a plain
//! rational and carries no radicand, so it combines with any field; two
//! scalars with nonzero imaginary parts must share the same `d`.
//!
//! The arithmetic operators panic when two incompatible radicands meet. Code
//! paths that handle user input validate field compatibility up front or use
//! the `checked_*` variants.

use std::fmt;
use std::ops::{Add, AddAssign, Div, Mul, MulAssign, Neg, Sub, SubAssign};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

pub type Rational = BigRational;

pub fn rat(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

pub fn ratio(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

/// Parses `p`, `p/q` or a plain decimal such as `-0.0510` into an exact rational.
pub fn parse_rational(s: &str) -> Result<Rational> {
    let s = s.trim();
    let bad = || Error::Parse(format!("not a rational number: {s:?}"));
    if s.is_empty() {
        return Err(bad());
    }
    if let Some((p, q)) = s.split_once('/') {
        let p: BigInt = p.trim().parse().map_err(|_| bad())?;
        let q: BigInt = q.trim().parse().map_err(|_| bad())?;
        if q.is_zero() {
            return Err(Error::Parse(format!("zero denominator in {s:?}")));
        }
        return Ok(Rational::new(p, q));
    }
    if let Some((int_part, frac_part)) = s.split_once('.') {
        let negative = int_part.starts_with('-');
        let int_digits = int_part.trim_start_matches(['-', '+']);
        if !frac_part.chars().all(|c| c.is_ascii_digit())
            || !int_digits.chars().all(|c| c.is_ascii_digit())
            || (int_digits.is_empty() && frac_part.is_empty())
        {
            return Err(bad());
        }
        let digits = format!("{int_digits}{frac_part}");
        let mantissa: BigInt = if digits.is_empty() { BigInt::zero() } else { digits.parse().map_err(|_| bad())? };
        let scale = num_traits::pow(BigInt::from(10), frac_part.len());
        let value = Rational::new(mantissa, scale);
        return Ok(if negative { -value } else { value });
    }
    let p: BigInt = s.parse().map_err(|_| bad())?;
    Ok(Rational::from_integer(p))
}

/// `p/q`, with the denominator omitted when it is 1.
pub fn format_rational(r: &Rational) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

/// Decimal rendering with `digits` fractional digits, rounded half to even.
pub fn format_decimal(r: &Rational, digits: usize) -> String {
    let scale = num_traits::pow(BigInt::from(10), digits);
    let scaled = r * Rational::from_integer(scale);
    let (q, rem) = scaled.numer().div_mod_floor(scaled.denom());
    let twice: BigInt = rem * 2;
    let mut n = q;
    match twice.cmp(scaled.denom()) {
        std::cmp::Ordering::Greater => n += 1,
        std::cmp::Ordering::Equal if n.is_odd() => n += 1,
        _ => {}
    }
    let negative = n.is_negative();
    let abs = n.abs().to_string();
    let body = if digits == 0 {
        abs
    } else {
        let padded = format!("{abs:0>width$}", width = digits + 1);
        let (int_part, frac_part) = padded.split_at(padded.len() - digits);
        format!("{int_part}.{frac_part}")
    };
    if negative {
        format!("-{body}")
    } else {
        body
    }
}

/// Writes `d = f²·d'` with `d'` a square-free integer, returning `(d', f)`.
///
/// Square factors are stripped by trial division up to 10⁶; larger square
/// factors stay in `d'`, which is still a valid (if non-canonical) radicand.
pub fn canonical_radicand(d: &Rational) -> (Rational, Rational) {
    // a/b = (a·b)/b²
    let mut n: BigInt = d.numer() * d.denom();
    let mut factor = Rational::new(BigInt::one(), d.denom().clone());
    let mut k = BigInt::from(2);
    let limit = BigInt::from(1_000_000);
    while &k * &k <= n.abs() && k <= limit {
        let sq = &k * &k;
        while (&n % &sq).is_zero() {
            n /= &sq;
            factor *= Rational::from_integer(k.clone());
        }
        k += 1;
    }
    (Rational::from_integer(n), factor)
}

/// An element `re + im·√d` of `ℚ(√d)`, `d < 0`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Scalar {
    re: Rational,
    im: Rational,
    // None exactly when im == 0.
    d: Option<Rational>,
}

impl Scalar {
    pub fn new(re: Rational, im: Rational, d: Rational) -> Result<Self> {
        if im.is_zero() {
            return Ok(Self::from_rational(re));
        }
        if !d.is_negative() {
            return Err(Error::InvalidRadicand(format_rational(&d)));
        }
        let (d, factor) = canonical_radicand(&d);
        Ok(Scalar { re, im: im * factor, d: Some(d) })
    }

    pub fn from_rational(re: Rational) -> Self {
        Scalar { re, im: Rational::zero(), d: None }
    }

    pub fn int(n: i64) -> Self {
        Self::from_rational(rat(n))
    }

    pub fn frac(n: i64, d: i64) -> Self {
        Self::from_rational(ratio(n, d))
    }

    /// `√d` itself.
    pub fn sqrt_of(d: Rational) -> Result<Self> {
        Self::new(Rational::zero(), Rational::one(), d)
    }

    /// The Gaussian unit `i = √-1`.
    pub fn i() -> Self {
        Scalar { re: Rational::zero(), im: Rational::one(), d: Some(rat(-1)) }
    }

    /// Gaussian rational `re + im·i`.
    pub fn gaussian(re: Rational, im: Rational) -> Self {
        Self::new(re, im, rat(-1)).expect("-1 is a valid radicand")
    }

    pub fn zero() -> Self {
        Self::from_rational(Rational::zero())
    }

    pub fn one() -> Self {
        Self::from_rational(Rational::one())
    }

    pub fn re(&self) -> &Rational {
        &self.re
    }

    pub fn im(&self) -> &Rational {
        &self.im
    }

    pub fn radicand(&self) -> Option<&Rational> {
        self.d.as_ref()
    }

    pub fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.im.is_zero() && self.re.is_one()
    }

    pub fn is_rational(&self) -> bool {
        self.im.is_zero()
    }

    pub fn as_rational(&self) -> Option<&Rational> {
        self.is_rational().then_some(&self.re)
    }

    pub fn compatible(&self, other: &Scalar) -> bool {
        match (&self.d, &other.d) {
            (Some(a), Some(b)) => a == b,
            _ => true,
        }
    }

    fn merged_radicand(&self, other: &Scalar) -> Result<Option<Rational>> {
        match (&self.d, &other.d) {
            (Some(a), Some(b)) if a != b => Err(Error::MixedRadicand(format_rational(a), format_rational(b))),
            (Some(a), _) => Ok(Some(a.clone())),
            (None, b) => Ok(b.clone()),
        }
    }

    fn build(re: Rational, im: Rational, d: Option<Rational>) -> Self {
        if im.is_zero() {
            Scalar { re, im, d: None }
        } else {
            Scalar { re, im, d }
        }
    }

    pub fn checked_add(&self, other: &Scalar) -> Result<Scalar> {
        let d = self.merged_radicand(other)?;
        Ok(Self::build(&self.re + &other.re, &self.im + &other.im, d))
    }

    pub fn checked_sub(&self, other: &Scalar) -> Result<Scalar> {
        let d = self.merged_radicand(other)?;
        Ok(Self::build(&self.re - &other.re, &self.im - &other.im, d))
    }

    pub fn checked_mul(&self, other: &Scalar) -> Result<Scalar> {
        let d = self.merged_radicand(other)?;
        if self.im.is_zero() {
            return Ok(Self::build(&self.re * &other.re, &self.re * &other.im, d));
        }
        if other.im.is_zero() {
            return Ok(Self::build(&self.re * &other.re, &self.im * &other.re, d));
        }
        let dv = d.as_ref().expect("both imaginary parts nonzero");
        let re = &self.re * &other.re + &self.im * &other.im * dv;
        let im = &self.re * &other.im + &self.im * &other.re;
        Ok(Self::build(re, im, d))
    }

    /// Field norm `x·conj(x) = re² − d·im²`, positive for nonzero `x`.
    pub fn norm(&self) -> Rational {
        match &self.d {
            None => &self.re * &self.re,
            Some(d) => &self.re * &self.re - d * &self.im * &self.im,
        }
    }

    pub fn inv(&self) -> Result<Scalar> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        if self.im.is_zero() {
            return Ok(Self::from_rational(self.re.recip()));
        }
        let n = self.norm();
        Ok(Self::build(&self.re / &n, -&self.im / &n, self.d.clone()))
    }

    pub fn checked_div(&self, other: &Scalar) -> Result<Scalar> {
        self.checked_mul(&other.inv()?)
    }

    pub fn conj(&self) -> Scalar {
        Self::build(self.re.clone(), -&self.im, self.d.clone())
    }

    pub fn scale(&self, k: &Rational) -> Scalar {
        Self::build(&self.re * k, &self.im * k, self.d.clone())
    }

    pub fn pow(&self, e: u32) -> Scalar {
        let mut acc = Scalar::one();
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }

    pub fn to_exact_string(&self) -> String {
        self.render(format_rational)
    }

    pub fn to_decimal_string(&self, digits: usize) -> String {
        self.render(|r| format_decimal(r, digits))
    }

    fn render(&self, f: impl Fn(&Rational) -> String) -> String {
        match &self.d {
            None => f(&self.re),
            Some(d) => {
                let unit = if *d == rat(-1) { "i".to_string() } else { format!("sqrt({})", format_rational(d)) };
                let mag = self.im.abs();
                let sign = if self.im.is_negative() { "-" } else { "+" };
                let im = if mag == rat(1) { format!("{sign}{unit}") } else { format!("{sign}{}*{unit}", f(&mag)) };
                if self.re.is_zero() {
                    im.trim_start_matches('+').to_string()
                } else {
                    format!("{}{im}", f(&self.re))
                }
            }
        }
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_exact_string())
    }
}

impl From<Rational> for Scalar {
    fn from(r: Rational) -> Self {
        Scalar::from_rational(r)
    }
}

impl From<i64> for Scalar {
    fn from(n: i64) -> Self {
        Scalar::int(n)
    }
}

impl Default for Scalar {
    fn default() -> Self {
        Scalar::zero()
    }
}

macro_rules! forward_binop {
    ($tr:ident, $method:ident, $checked:ident) => {
        impl<'a> $tr<&'a Scalar> for &'a Scalar {
            type Output = Scalar;
            fn $method(self, rhs: &'a Scalar) -> Scalar {
                self.$checked(rhs).unwrap_or_else(|e| panic!("{e}"))
            }
        }
        impl $tr<Scalar> for Scalar {
            type Output = Scalar;
            fn $method(self, rhs: Scalar) -> Scalar {
                (&self).$method(&rhs)
            }
        }
        impl<'a> $tr<&'a Scalar> for Scalar {
            type Output = Scalar;
            fn $method(self, rhs: &'a Scalar) -> Scalar {
                (&self).$method(rhs)
            }
        }
        impl<'a> $tr<Scalar> for &'a Scalar {
            type Output = Scalar;
            fn $method(self, rhs: Scalar) -> Scalar {
                self.$method(&rhs)
            }
        }
    };
}

forward_binop!(Add, add, checked_add);
forward_binop!(Sub, sub, checked_sub);
forward_binop!(Mul, mul, checked_mul);
forward_binop!(Div, div, checked_div);

impl Neg for Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        Scalar::build(-self.re, -self.im, self.d)
    }
}

impl Neg for &Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        Scalar::build(-&self.re, -&self.im, self.d.clone())
    }
}

impl AddAssign<&Scalar> for Scalar {
    fn add_assign(&mut self, rhs: &Scalar) {
        *self = &*self + rhs;
    }
}

impl SubAssign<&Scalar> for Scalar {
    fn sub_assign(&mut self, rhs: &Scalar) {
        *self = &*self - rhs;
    }
}

impl MulAssign<&Scalar> for Scalar {
    fn mul_assign(&mut self, rhs: &Scalar) {
        *self = &*self * rhs;
    }
}
