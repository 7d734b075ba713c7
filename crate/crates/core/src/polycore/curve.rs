//! Rational curves `r = −2b/α` with a factored denominator.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::exactnum::{rat, Rational, Scalar};
use crate::polycore::poly::{poly_gcd, ScalarPoly, Vec3, Vec3Poly};

/// Monic denominator `α = Π (t − β_i)^{n_i}` with mutually distinct roots.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct Denominator {
    factors: Vec<(Scalar, u32)>,
}

impl Denominator {
    pub fn new(factors: Vec<(Scalar, u32)>) -> Result<Self> {
        let mut out: Vec<(Scalar, u32)> = Vec::new();
        for (root, mult) in factors {
            if mult == 0 {
                continue;
            }
            if out.iter().any(|(r, _)| *r == root) {
                return Err(Error::InvalidArgument(format!("repeated denominator root {root}")));
            }
            out.push((root, mult));
        }
        Ok(Denominator { factors: out })
    }

    pub fn one() -> Self {
        Denominator::default()
    }

    /// `(t − root)^mult`.
    pub fn single(root: Scalar, mult: u32) -> Self {
        Denominator::new(vec![(root, mult)]).expect("single root")
    }

    pub fn factors(&self) -> &[(Scalar, u32)] {
        &self.factors
    }

    pub fn is_one(&self) -> bool {
        self.factors.is_empty()
    }

    pub fn degree(&self) -> usize {
        self.factors.iter().map(|(_, n)| *n as usize).sum()
    }

    pub fn multiplicity(&self, root: &Scalar) -> u32 {
        self.factors.iter().find(|(r, _)| r == root).map_or(0, |(_, n)| *n)
    }

    /// Real when every non-real root comes with its conjugate at equal multiplicity.
    pub fn is_real(&self) -> bool {
        self.factors.iter().all(|(r, n)| r.is_rational() || self.multiplicity(&r.conj()) == *n)
    }

    /// Expanded monomial form. Conjugate root pairs are multiplied out as
    /// rational quadratics first so that roots from different quadratic
    /// fields can coexist.
    pub fn polynomial(&self) -> ScalarPoly {
        self.polynomial_excluding(None)
    }

    /// `α / (t − root)^{mult(root)}`.
    pub fn cofactor(&self, root: &Scalar) -> ScalarPoly {
        self.polynomial_excluding(Some(root))
    }

    fn polynomial_excluding(&self, skip: Option<&Scalar>) -> ScalarPoly {
        let mut acc = ScalarPoly::one();
        let mut done: Vec<&Scalar> = Vec::new();
        for (root, mult) in &self.factors {
            if Some(root) == skip || done.contains(&root) {
                continue;
            }
            let conj = root.conj();
            let paired = !root.is_rational() && Some(&conj) != skip && self.multiplicity(&conj) == *mult;
            let base = if paired {
                done.push(self.factors.iter().map(|(r, _)| r).find(|r| **r == conj).expect("present"));
                real_quadratic(root)
            } else {
                ScalarPoly::linear(root)
            };
            acc = &acc * &base.pow(*mult);
        }
        acc
    }

    /// Least common multiple (multiplicities maximized).
    pub fn lcm(&self, other: &Denominator) -> Denominator {
        let mut f = self.factors.clone();
        for (r, n) in &other.factors {
            match f.iter_mut().find(|(q, _)| q == r) {
                Some(e) => e.1 = e.1.max(*n),
                None => f.push((r.clone(), *n)),
            }
        }
        Denominator { factors: f }
    }

    /// `self / other` when `other` divides `self`.
    pub fn quotient(&self, other: &Denominator) -> Option<Denominator> {
        let mut f = Vec::new();
        for (r, n) in &other.factors {
            if self.multiplicity(r) < *n {
                return None;
            }
        }
        for (r, n) in &self.factors {
            let k = n - other.multiplicity(r);
            if k > 0 {
                f.push((r.clone(), k));
            }
        }
        Some(Denominator { factors: f })
    }

    /// Factors a polynomial with rational coefficients into rational roots and
    /// irreducible quadratics (mapped to conjugate root pairs). Returns the
    /// leading coefficient alongside the monic factorization.
    pub fn factor_rational(p: &ScalarPoly) -> Result<(Rational, Denominator)> {
        let lead = p.leading().ok_or_else(|| Error::UnsupportedDenominator("zero polynomial".into()))?.clone();
        if !p.is_rational() {
            return Err(Error::UnsupportedDenominator("coefficients must be rational".into()));
        }
        let lead = lead.re().clone();
        let mut rest = p.monic();
        let mut factors = Vec::new();
        for root in rational_root_candidates(&rest) {
            let lin = ScalarPoly::linear(&root);
            let mut mult = 0;
            while let Some(q) = rest.exact_div(&lin) {
                rest = q;
                mult += 1;
            }
            if mult > 0 {
                factors.push((root, mult));
            }
        }
        for (k, part) in square_free_parts(&rest)?.into_iter().enumerate() {
            match part.degree() {
                Some(0) | None => {}
                Some(2) => {
                    let (r1, r2) = quadratic_roots(&part.coeff(1), &part.coeff(0))?;
                    factors.push((r1, k as u32 + 1));
                    factors.push((r2, k as u32 + 1));
                }
                Some(d) => {
                    return Err(Error::UnsupportedDenominator(format!(
                        "factor {part} of degree {d} has no rational roots; only linear and quadratic factors are supported"
                    )))
                }
            }
        }
        Ok((lead, Denominator::new(factors)?))
    }
}

/// `(t − β)(t − conj β)`, rational.
pub fn real_quadratic(root: &Scalar) -> ScalarPoly {
    let two_re = root.re() * rat(2);
    ScalarPoly::new(vec![Scalar::from_rational(root.norm()), Scalar::from_rational(-two_re), Scalar::one()])
}

/// Roots `−p/2 ± √(p²/4 − q)` of `t² + p t + q`, which must have negative discriminant.
pub fn quadratic_roots(p: &Scalar, q: &Scalar) -> Result<(Scalar, Scalar)> {
    let (Some(p), Some(q)) = (p.as_rational(), q.as_rational()) else {
        return Err(Error::UnsupportedDenominator("quadratic factor must be rational".into()));
    };
    let disc = p * p / rat(4) - q;
    if !disc.is_negative() {
        return Err(Error::UnsupportedDenominator(format!(
            "t^2 + ({p})t + ({q}) is not an irreducible quadratic with complex roots"
        )));
    }
    let re = -p / rat(2);
    let r1 = Scalar::new(re.clone(), Rational::one(), disc.clone())?;
    Ok((r1.clone(), r1.conj()))
}

fn divisors(n: &BigInt) -> Vec<BigInt> {
    let n = n.abs();
    let mut out = Vec::new();
    let mut k = BigInt::one();
    while &k * &k <= n {
        if (&n % &k).is_zero() {
            out.push(k.clone());
            let other = &n / &k;
            if other != k {
                out.push(other);
            }
        }
        k += 1;
    }
    out.sort();
    out
}

fn rational_root_candidates(p: &ScalarPoly) -> Vec<Scalar> {
    // clear denominators to an integer polynomial
    let coeffs: Vec<Rational> = p.coeffs().iter().map(|c| c.re().clone()).collect();
    let l = coeffs.iter().fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
    let ints: Vec<BigInt> = coeffs.iter().map(|c| (c * Rational::from_integer(l.clone())).to_integer()).collect();
    let mut out = Vec::new();
    if ints.first().is_some_and(Zero::is_zero) {
        out.push(Scalar::zero());
    }
    let Some(low) = ints.iter().find(|c| !c.is_zero()) else {
        return out;
    };
    let high = ints.last().expect("nonzero");
    for num in divisors(low) {
        for den in divisors(high) {
            for sign in [1, -1] {
                let cand = Scalar::from_rational(Rational::new(&num * sign, den.clone()));
                if !out.contains(&cand) {
                    out.push(cand);
                }
            }
        }
    }
    out
}

/// Yun's square-free decomposition: `p = Π parts[k]^{k+1}` (monic input).
fn square_free_parts(p: &ScalarPoly) -> Result<Vec<ScalarPoly>> {
    if p.degree().unwrap_or(0) == 0 {
        return Ok(vec![]);
    }
    let dp = p.derivative();
    let a0 = poly_gcd(p, &dp)?;
    let mut b = p.exact_div(&a0).expect("gcd divides");
    let mut c = dp.exact_div(&a0).expect("gcd divides");
    let mut d = &c - &b.derivative();
    let mut parts = Vec::new();
    while b.degree().unwrap_or(0) > 0 {
        let a = poly_gcd(&b, &d)?;
        parts.push(a.clone());
        b = b.exact_div(&a).expect("gcd divides");
        c = d.exact_div(&a).expect("gcd divides");
        d = &c - &b.derivative();
    }
    Ok(parts)
}

/// A rational curve `r = −2b/α`. The factor −2 follows the dual-quaternion
/// derivation of the tangent condition and is kept for consistency.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RationalPHCurve {
    numerator: Vec3Poly,
    denominator: Denominator,
}

impl RationalPHCurve {
    pub fn new(b: Vec3Poly, denominator: Denominator) -> Self {
        RationalPHCurve { numerator: b, denominator }
    }

    /// `r = b / (unit·α)` folded into the monic-denominator form.
    pub fn with_unit(b: Vec3Poly, unit: &Rational, denominator: Denominator) -> Result<Self> {
        if unit.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(Self::new(b.scale(&Scalar::from_rational(unit.recip())), denominator))
    }

    /// `r = numer / α`.
    pub fn from_fraction(numer: &Vec3Poly, denominator: Denominator) -> Self {
        Self::new(numer.scale(&Scalar::frac(-1, 2)), denominator)
    }

    pub fn polynomial(p: &Vec3Poly) -> Self {
        Self::from_fraction(p, Denominator::one())
    }

    pub fn constant(v: Vec3) -> Self {
        Self::polynomial(&Vec3Poly::constant(v))
    }

    pub fn zero() -> Self {
        Self::new(Vec3Poly::zero(), Denominator::one())
    }

    /// The `b` in `r = −2b/α`.
    pub fn numerator(&self) -> &Vec3Poly {
        &self.numerator
    }

    pub fn denominator(&self) -> &Denominator {
        &self.denominator
    }

    /// `−2b`, the numerator of `r` over `α`.
    pub fn fraction_numerator(&self) -> Vec3Poly {
        self.numerator.scale(&Scalar::int(-2))
    }

    pub fn is_zero(&self) -> bool {
        self.numerator.is_zero()
    }

    /// Numerator `b'` with `r = −2b'/target`; `target` must be a multiple of the denominator.
    pub fn numerator_over(&self, target: &Denominator) -> Option<Vec3Poly> {
        let q = target.quotient(&self.denominator)?;
        Some(self.numerator.mul_scalar_poly(&q.polynomial()))
    }

    pub fn rebase(&self, target: &Denominator) -> Option<RationalPHCurve> {
        Some(Self::new(self.numerator_over(target)?, target.clone()))
    }

    pub fn add(&self, o: &RationalPHCurve) -> RationalPHCurve {
        let den = self.denominator.lcm(&o.denominator);
        let a = self.numerator_over(&den).expect("lcm is a multiple");
        let b = o.numerator_over(&den).expect("lcm is a multiple");
        Self::new(&a + &b, den)
    }

    pub fn sub(&self, o: &RationalPHCurve) -> RationalPHCurve {
        self.add(&o.scale(&Scalar::int(-1)))
    }

    pub fn scale(&self, k: &Scalar) -> RationalPHCurve {
        Self::new(self.numerator.scale(k), self.denominator.clone())
    }

    /// Exact equality of the represented rational functions.
    pub fn same_curve(&self, o: &RationalPHCurve) -> bool {
        let den = self.denominator.lcm(&o.denominator);
        self.numerator_over(&den) == o.numerator_over(&den)
    }

    /// Polynomial value of `r` when the denominator divides the numerator.
    pub fn as_polynomial(&self) -> Option<Vec3Poly> {
        let b = self.numerator.exact_div(&self.denominator.polynomial())?;
        Some(b.scale(&Scalar::int(-2)))
    }

    /// `None` at a pole.
    pub fn eval(&self, t: &Scalar) -> Option<Vec3> {
        let a = self.denominator.polynomial().eval(t);
        if a.is_zero() {
            return None;
        }
        Some(self.numerator.eval(t).scale(&(Scalar::int(-2) / a)))
    }

    /// True when all coefficients are rational and the denominator is real.
    pub fn is_real(&self) -> bool {
        self.numerator.is_rational() && self.denominator.polynomial().is_rational()
    }

    /// `α'b − αb'`, the numerator of `r'` up to the factor −2/α².
    pub fn tangent_numerator(&self) -> Vec3Poly {
        let alpha = self.denominator.polynomial();
        let da = alpha.derivative();
        &self.numerator.mul_scalar_poly(&da) - &self.numerator.derivative().mul_scalar_poly(&alpha)
    }

    /// Exact check of `α'b − αb' = μF`.
    pub fn satisfies_certificate(&self, f: &Vec3Poly, mu: &ScalarPoly) -> bool {
        self.tangent_numerator() == f.mul_scalar_poly(mu)
    }

    /// Recovers the polynomial `μ` with `α'b − αb' = μF`, or reports the
    /// nonzero residual `(α'b − αb') × F`.
    pub fn recover_certificate(&self, f: &Vec3Poly) -> Result<ScalarPoly> {
        let w = self.tangent_numerator();
        let residual = w.cross(f);
        if !residual.is_zero() {
            return Err(Error::NotPHCurve(crate::json::vec3poly_text(&residual)));
        }
        if w.is_zero() {
            return Ok(ScalarPoly::zero());
        }
        let k = (0..3).find(|&k| !f.component(k).is_zero()).ok_or(Error::ZeroInput)?;
        let mu = w
            .component(k)
            .exact_div(&f.component(k))
            .ok_or_else(|| Error::CertificateMissing("F has a common factor with the tangent numerator".into()))?;
        if f.mul_scalar_poly(&mu) != w {
            return Err(Error::CertificateMissing("division is inconsistent across components".into()));
        }
        Ok(mu)
    }

    /// Radicand shared by all coefficients, computed on the paired form.
    pub fn field(&self) -> Result<Option<Rational>> {
        let mut d: Option<Rational> = None;
        let alpha = self.denominator.polynomial();
        let scalars = self.numerator.coeffs().iter().flat_map(|v| v.0.iter()).chain(alpha.coeffs().iter());
        for s in scalars {
            if let Some(r) = s.radicand() {
                match &d {
                    Some(x) if x != r => {
                        return Err(Error::MixedRadicand(
                            crate::exactnum::format_rational(x),
                            crate::exactnum::format_rational(r),
                        ))
                    }
                    _ => d = Some(r.clone()),
                }
            }
        }
        Ok(d)
    }
}

/// `(t − root)^n` as a polynomial.
pub fn linear_power(root: &Scalar, n: u32) -> ScalarPoly {
    ScalarPoly::linear(root).pow(n)
}
