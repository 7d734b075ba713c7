//! Finite Laurent series `Σ_{i=lo}^{hi} r_i (t − β)^i` with 3-vector coefficients.

use crate::error::{Error, Result};
use crate::exactnum::Scalar;
use crate::polycore::curve::{Denominator, RationalPHCurve};
use crate::polycore::poly::{Vec3, Vec3Poly};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LaurentSeries {
    center: Scalar,
    lo: i64,
    // coeffs[k] belongs to index lo + k; both ends nonzero
    coeffs: Vec<Vec3>,
}

impl LaurentSeries {
    /// Builds a series from coefficients starting at index `lo`; zero ends are trimmed.
    pub fn new(center: Scalar, lo: i64, mut coeffs: Vec<Vec3>) -> Self {
        while coeffs.last().is_some_and(Vec3::is_zero) {
            coeffs.pop();
        }
        let lead = coeffs.iter().take_while(|v| v.is_zero()).count();
        coeffs.drain(..lead);
        let lo = if coeffs.is_empty() { 0 } else { lo + lead as i64 };
        LaurentSeries { center, lo, coeffs }
    }

    pub fn zero(center: Scalar) -> Self {
        LaurentSeries { center, lo: 0, coeffs: vec![] }
    }

    pub fn center(&self) -> &Scalar {
        &self.center
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Lowest index with a nonzero coefficient.
    pub fn lo(&self) -> Option<i64> {
        (!self.is_zero()).then_some(self.lo)
    }

    /// Highest index with a nonzero coefficient.
    pub fn hi(&self) -> Option<i64> {
        (!self.is_zero()).then(|| self.lo + self.coeffs.len() as i64 - 1)
    }

    pub fn coeff(&self, i: i64) -> Vec3 {
        let k = i - self.lo;
        if k < 0 {
            return Vec3::zero();
        }
        self.coeffs.get(k as usize).cloned().unwrap_or_default()
    }

    /// `(index, coefficient)` pairs for the nonzero coefficients.
    pub fn terms(&self) -> impl Iterator<Item = (i64, &Vec3)> {
        self.coeffs.iter().enumerate().filter(|(_, v)| !v.is_zero()).map(move |(k, v)| (self.lo + k as i64, v))
    }

    pub fn support(&self) -> Vec<i64> {
        self.terms().map(|(i, _)| i).collect()
    }

    pub fn scale(&self, k: &Scalar) -> Self {
        Self::new(self.center.clone(), self.lo, self.coeffs.iter().map(|v| v.scale(k)).collect())
    }

    pub fn add(&self, o: &LaurentSeries) -> Self {
        assert_eq!(self.center, o.center, "series with different centers");
        let (Some(a), Some(b)) = (self.lo(), o.lo()) else {
            return if self.is_zero() { o.clone() } else { self.clone() };
        };
        let lo = a.min(b);
        let hi = self.hi().unwrap().max(o.hi().unwrap());
        Self::new(self.center.clone(), lo, (lo..=hi).map(|i| &self.coeff(i) + &o.coeff(i)).collect())
    }

    /// Drops the coefficient at index `i`.
    pub fn without(&self, i: i64) -> Self {
        let mut c = self.coeffs.clone();
        let k = i - self.lo;
        if k >= 0 && (k as usize) < c.len() {
            c[k as usize] = Vec3::zero();
        }
        Self::new(self.center.clone(), self.lo, c)
    }

    /// Coefficientwise conjugate, centered at the conjugate point.
    pub fn conj(&self) -> Self {
        Self::new(self.center.conj(), self.lo, self.coeffs.iter().map(Vec3::conj).collect())
    }

    /// The represented curve as `−2b/(t − β)^n` with `n = max(0, −lo)`.
    pub fn to_curve(&self) -> RationalPHCurve {
        let Some(lo) = self.lo() else {
            return RationalPHCurve::zero();
        };
        let n = (-lo).max(0);
        // numerator in powers of (t − β): index i sits at power i + n
        let mut shifted = vec![Vec3::zero(); (lo + n) as usize];
        shifted.extend(self.coeffs.iter().cloned());
        let numer = Vec3Poly::from_shifted(&shifted, &self.center);
        let den = if n > 0 { Denominator::single(self.center.clone(), n as u32) } else { Denominator::one() };
        RationalPHCurve::from_fraction(&numer, den)
    }
}

/// Laurent expansion of `r` at `beta`, truncated after index `hi`.
///
/// The numerator and the cofactor `α̂ = α/(t−β)^n` are re-centered at `beta`
/// and divided as power series.
pub fn laurent_expand(r: &RationalPHCurve, beta: &Scalar, hi: i64) -> Result<LaurentSeries> {
    let alpha_hat = r.denominator().cofactor(beta);
    let numer = r.fraction_numerator();
    let incompatible =
        numer.coeffs().iter().flat_map(|v| v.0.iter()).chain(alpha_hat.coeffs().iter()).any(|s| !s.compatible(beta));
    if incompatible {
        return Err(Error::CenterMismatch(beta.to_string()));
    }
    let n = r.denominator().multiplicity(beta) as i64;
    let order = hi + n;
    if order < 0 || numer.is_zero() {
        return Ok(LaurentSeries::zero(beta.clone()));
    }
    let order = order as usize;
    let ns = numer.taylor_shift(beta);
    let ds = alpha_hat.taylor_shift(beta);
    let d0_inv = ds[0].inv().map_err(|_| Error::CenterMismatch(beta.to_string()))?;
    let mut q: Vec<Vec3> = Vec::with_capacity(order + 1);
    for k in 0..=order {
        let mut acc = ns.get(k).cloned().unwrap_or_default();
        for j in 1..=k.min(ds.len() - 1) {
            acc = &acc - &q[k - j].scale(&ds[j]);
        }
        q.push(acc.scale(&d0_inv));
    }
    Ok(LaurentSeries::new(beta.clone(), -n, q))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactnum::rat;
    use crate::polycore::poly::ScalarPoly;

    fn beta() -> Scalar {
        Scalar::gaussian(rat(2), rat(-1))
    }

    #[test]
    fn pure_pole() {
        let r = RationalPHCurve::new(Vec3Poly::from_int_rows(&[[1, 0, 0]]), Denominator::single(beta(), 2));
        let s = laurent_expand(&r, &beta(), 3).unwrap();
        assert_eq!(s.lo(), Some(-2));
        assert_eq!(s.hi(), Some(-2));
        assert_eq!(s.coeff(-2), Vec3::ints(-2, 0, 0));
    }

    #[test]
    fn cancellation_raises_lowest_index() {
        let lin = ScalarPoly::linear(&beta());
        let b = Vec3Poly::from_components(&lin, &ScalarPoly::zero(), &ScalarPoly::zero());
        let r = RationalPHCurve::new(b, Denominator::single(beta(), 2));
        let s = laurent_expand(&r, &beta(), 5).unwrap();
        assert_eq!(s.support(), vec![-1]);
        assert_eq!(s.coeff(-1), Vec3::ints(-2, 0, 0));
    }

    #[test]
    fn series_round_trips_through_curve() {
        let s = LaurentSeries::new(
            beta(),
            -3,
            vec![Vec3::ints(1, 2, 3), Vec3::zero(), Vec3::ints(0, -1, 0), Vec3::zero(), Vec3::ints(5, 0, 1)],
        );
        let back = laurent_expand(&s.to_curve(), &beta(), 4).unwrap();
        assert_eq!(back, s);
    }

    #[test]
    fn expansion_at_regular_point_is_taylor() {
        let p = Vec3Poly::from_int_rows(&[[1, 0, 2], [0, 3, 0], [1, 1, 1]]);
        let r = RationalPHCurve::polynomial(&p);
        let s = laurent_expand(&r, &Scalar::int(3), 10).unwrap();
        let t = p.taylor_shift(&Scalar::int(3));
        for (i, c) in t.iter().enumerate() {
            assert_eq!(&s.coeff(i as i64), c);
        }
    }

    #[test]
    fn mismatched_center_is_rejected() {
        let r = RationalPHCurve::new(Vec3Poly::from_int_rows(&[[1, 0, 0]]), Denominator::single(Scalar::i(), 1));
        let other = Scalar::sqrt_of(rat(-2)).unwrap();
        assert!(matches!(laurent_expand(&r, &other, 0), Err(Error::CenterMismatch(_))));
    }
}
