//! Decomposition of a rational PH curve into single-root parts plus a
//! polynomial, coordinates in the canonical basis, and partial fractions.

use crate::error::{Error, Result};
use crate::exactnum::Scalar;
use crate::hodograph::polynomial_ph_basis;
use crate::linalg::Matrix;
use crate::polycore::curve::real_quadratic;
use crate::polycore::{laurent_expand, Denominator, LaurentSeries, RationalPHCurve, ScalarPoly, Vec3, Vec3Poly};
use crate::singleroot::{BasisElement, RootData, SpaceKind};

/// A curve together with its certificate `α'b − αb' = μF`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CertifiedCurve {
    pub curve: RationalPHCurve,
    pub mu: ScalarPoly,
}

fn series_div<T: Clone + Default>(
    num: &[T],
    den: &[Scalar],
    terms: usize,
    axpy: impl Fn(&T, &Scalar, &T) -> T,
    scale: impl Fn(&T, &Scalar) -> T,
) -> Vec<T> {
    let d0 = den[0].inv().expect("cofactor does not vanish at its own root's complement");
    let mut q: Vec<T> = Vec::with_capacity(terms);
    for k in 0..terms {
        let mut acc = num.get(k).cloned().unwrap_or_default();
        for j in 1..=k.min(den.len() - 1) {
            acc = axpy(&acc, &-&den[j], &q[k - j]);
        }
        q.push(scale(&acc, &d0));
    }
    q
}

fn certificate_of(r: &RationalPHCurve, f: &Vec3Poly) -> Result<ScalarPoly> {
    r.recover_certificate(f).map_err(|e| match e {
        Error::NotPHCurve(res) => Error::CertificateMissing(format!("residual {res}")),
        e => e,
    })
}

/// Replaces `r` near `β` by a single-root curve with Laurent support in
/// `[−n, deg F]` that agrees with `r` at every index `≤ 0`.
///
/// The numerator is fixed up to index `n` by the Taylor data of `b/α̂`,
/// the certificate is the degree `2n−1` Taylor polynomial of `μ/α̂²`, and
/// the remaining coefficients follow from the structured system.
pub fn truncate_at_root(r: &RationalPHCurve, f: &Vec3Poly, beta: &Scalar) -> Result<CertifiedCurve> {
    let n = r.denominator().multiplicity(beta) as usize;
    if n == 0 {
        return Err(Error::NotARoot(beta.to_string()));
    }
    let mu = certificate_of(r, f)?;
    let alpha_hat = r.denominator().cofactor(beta);
    let ah = alpha_hat.taylor_shift(beta);
    let ah2 = (&alpha_hat * &alpha_hat).taylor_shift(beta);
    let b_head = series_div(&r.numerator().taylor_shift(beta), &ah, n + 1, |a, k, v| a + &v.scale(k), Vec3::scale);
    let mu_t = series_div(&mu.taylor_shift(beta), &ah2, 2 * n, |a, k, v| a + &(k * v), |a, k| a * k);
    let fs = f.taylor_shift(beta);
    let deg_f = fs.len().saturating_sub(1);
    let mut b = b_head;
    for i in n + 1..=n + deg_f {
        let k = i + n;
        let mut rhs = Vec3::zero();
        for (j, m) in mu_t.iter().enumerate().take(k) {
            if let Some(fv) = fs.get(k - 1 - j) {
                rhs = &rhs + &fv.scale(m);
            }
        }
        b.push(rhs.scale(&Scalar::int(n as i64 - i as i64).inv()?));
    }
    let curve = RationalPHCurve::new(Vec3Poly::from_shifted(&b, beta), Denominator::single(beta.clone(), n as u32));
    let mu = ScalarPoly::from_shifted(&mu_t, beta);
    if !curve.satisfies_certificate(f, &mu) {
        return Err(Error::CertificateMissing(format!("truncation at {beta} fails the tangent condition")));
    }
    Ok(CertifiedCurve { curve, mu })
}

/// Single-root part `s_i ∈ X` of a decomposition.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Component {
    pub beta: Scalar,
    pub mult: u32,
    pub part: CertifiedCurve,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Decomposition {
    pub components: Vec<Component>,
    pub polynomial: Vec3Poly,
    /// Canonical basis used for `sigma`.
    pub basis: Vec<BasisElement>,
    /// Coordinates of `r` in `basis`; `None` when the basis does not span `r`
    /// (possible for non-generic data).
    pub sigma: Option<Vec<Scalar>>,
}

impl Decomposition {
    /// `p + Σ s_i`.
    pub fn reconstruct(&self) -> RationalPHCurve {
        self.components.iter().fold(RationalPHCurve::polynomial(&self.polynomial), |acc, c| acc.add(&c.part.curve))
    }
}

/// `r = p + Σ s_i` with `s_i` in the purely rational space at each root.
pub fn decompose_curve(r: &RationalPHCurve, f: &Vec3Poly) -> Result<Decomposition> {
    r.recover_certificate(f)?;
    let mut components = Vec::new();
    let mut rest = r.clone();
    for (beta, mult) in r.denominator().factors() {
        let t = truncate_at_root(r, f, beta)?;
        let r0 = laurent_expand(&t.curve, beta, 0)?.coeff(0);
        let s = t.curve.sub(&RationalPHCurve::constant(r0));
        rest = rest.sub(&s);
        components.push(Component { beta: beta.clone(), mult: *mult, part: CertifiedCurve { curve: s, mu: t.mu } });
    }
    let polynomial = rest
        .as_polynomial()
        .ok_or_else(|| Error::InvalidArgument("remainder after removing all poles is not polynomial".into()))?;
    let deg_b = r.numerator().degree().map_or(0, |d| d as i64);
    let basis = canonical_basis(f, r.denominator(), deg_b - r.denominator().degree() as i64)?;
    let curves: Vec<RationalPHCurve> = basis.iter().map(|e| e.curve.clone()).collect();
    let sigma = match project_on_basis(r, &curves) {
        Ok(s) => Some(s),
        Err(Error::NotInSpan) => None,
        Err(e) => return Err(e),
    };
    Ok(Decomposition { components, polynomial, basis, sigma })
}

/// Canonical basis of `⊕ X^{−n_i, deg F}_{β_i} ⊕ P^M` with `M = max(poly_degree, 0)`.
/// Conjugate root pairs contribute realified pairs `(a, b)` in place of `(q⁺, q⁻)`.
pub fn canonical_basis(f: &Vec3Poly, den: &Denominator, poly_degree: i64) -> Result<Vec<BasisElement>> {
    let deg_f = f.degree().map_or(0, |d| d as i64);
    let mut out = Vec::new();
    for (beta, mult) in den.factors() {
        let paired = !beta.is_rational() && den.multiplicity(&beta.conj()) == *mult;
        if paired && beta.im() < &num_traits::Zero::zero() {
            continue;
        }
        let x = RootData::new(f, beta)?.space_basis(SpaceKind::X, -(*mult as i64), deg_f)?;
        for e in x.into_elements() {
            if !paired {
                out.push(BasisElement { name: format!("{}[{beta}]", e.name), ..e });
                continue;
            }
            let plus = e.laurent.as_ref().expect("cut carries its series");
            let (a, b) = realify_pair(plus, &plus.conj())?;
            for (tag, curve) in [("a", a), ("b", b)] {
                let mu = curve.recover_certificate(f)?;
                out.push(BasisElement {
                    name: format!("{tag}^{}[{beta}]", e.m),
                    m: e.m,
                    m0: e.m0,
                    curve,
                    laurent: None,
                    mu,
                });
            }
        }
    }
    out.extend(polynomial_ph_basis(f, poly_degree.max(0)).into_elements());
    Ok(out)
}

/// Unique coordinates of `r` in the span of `basis`, from the numerators
/// over the common denominator.
pub fn project_on_basis(r: &RationalPHCurve, basis: &[RationalPHCurve]) -> Result<Vec<Scalar>> {
    let den = basis.iter().fold(r.denominator().clone(), |d, b| d.lcm(b.denominator()));
    let flat = |c: &RationalPHCurve| c.numerator_over(&den).expect("common multiple");
    let cols: Vec<Vec3Poly> = basis.iter().map(flat).collect();
    let target = flat(r);
    let len = cols.iter().chain(Some(&target)).filter_map(|p| p.degree()).max().map_or(0, |d| d + 1);
    let unroll = |p: &Vec3Poly| (0..len).flat_map(|i| p.coeff(i).0).collect::<Vec<_>>();
    let m = Matrix::from_columns(&cols.iter().map(unroll).collect::<Vec<_>>());
    if !basis.is_empty() && m.rank() < basis.len() {
        return Err(Error::RedundantBasis);
    }
    let rhs = unroll(&target);
    if basis.is_empty() {
        return if target.is_zero() { Ok(vec![]) } else { Err(Error::NotInSpan) };
    }
    m.solve(&rhs).ok_or(Error::NotInSpan)
}

/// Real pair `a = ½(q⁺ + q⁻)`, `b = (i/2)(q⁺ − q⁻)` with `i = √−1`; for a
/// general radicand `b = −(q⁺ − q⁻)/(2√d)`, the negated imaginary part.
pub fn realify_pair(q_plus: &LaurentSeries, q_minus: &LaurentSeries) -> Result<(RationalPHCurve, RationalPHCurve)> {
    if &q_plus.conj() != q_minus {
        return Err(Error::NotConjugatePair("second series is not the conjugate of the first".into()));
    }
    let plus = q_plus.to_curve();
    if plus.is_real() && q_plus.center().is_rational() {
        return Ok((plus, RationalPHCurve::zero()));
    }
    let minus = q_minus.to_curve();
    let d = std::iter::once(q_plus.center())
        .chain(plus.numerator().coeffs().iter().flat_map(|v| v.0.iter()))
        .find_map(Scalar::radicand)
        .cloned()
        .ok_or_else(|| Error::NotConjugatePair("no quadratic field present".into()))?;
    let root = Scalar::sqrt_of(d)?;
    let a = plus.add(&minus).scale(&Scalar::frac(1, 2));
    let b = plus.sub(&minus).scale(&-(&Scalar::int(2) * &root).inv()?);
    if !(a.is_real() && b.is_real()) {
        return Err(Error::NotConjugatePair("combination has non-real coefficients".into()));
    }
    Ok((a, b))
}

/// One partial fraction `numerator / base^mult`, itself a solution curve.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Fraction {
    /// One root, or a conjugate pair after merging.
    pub roots: Vec<Scalar>,
    pub mult: u32,
    pub numerator: Vec3Poly,
    pub mu: ScalarPoly,
}

impl Fraction {
    pub fn denominator(&self) -> Denominator {
        Denominator::new(self.roots.iter().map(|r| (r.clone(), self.mult)).collect()).expect("distinct roots")
    }

    pub fn curve(&self) -> RationalPHCurve {
        RationalPHCurve::from_fraction(&self.numerator, self.denominator())
    }

    /// `t − β` or the real quadratic `t² + pt + q`.
    pub fn base(&self) -> ScalarPoly {
        match self.roots.as_slice() {
            [r] => ScalarPoly::linear(r),
            [r, _] => real_quadratic(r),
            _ => ScalarPoly::one(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PartialFractions {
    pub fractions: Vec<Fraction>,
    pub polynomial: Vec3Poly,
    pub sigma: Option<Vec<Scalar>>,
}

impl PartialFractions {
    pub fn reconstruct(&self) -> RationalPHCurve {
        self.fractions.iter().fold(RationalPHCurve::polynomial(&self.polynomial), |acc, fr| acc.add(&fr.curve()))
    }

    pub fn max_numerator_degree(&self) -> Option<usize> {
        self.fractions.iter().filter_map(|fr| fr.numerator.degree()).max()
    }
}

/// Partial fractions whose terms are solution curves. With `real_merge`,
/// conjugate roots are combined over the real quadratic factor.
pub fn partial_fractions(r: &RationalPHCurve, f: &Vec3Poly, real_merge: bool) -> Result<PartialFractions> {
    let dec = decompose_curve(r, f)?;
    let mut fractions = Vec::new();
    let mut skip: Vec<Scalar> = Vec::new();
    for c in &dec.components {
        if skip.contains(&c.beta) {
            continue;
        }
        let partner = dec
            .components
            .iter()
            .find(|o| real_merge && !c.beta.is_rational() && o.beta == c.beta.conj() && o.mult == c.mult);
        match partner {
            Some(o) => {
                skip.push(o.beta.clone());
                let merged = c.part.curve.add(&o.part.curve);
                let mu = merged.recover_certificate(f)?;
                fractions.push(Fraction {
                    roots: vec![c.beta.clone(), o.beta.clone()],
                    mult: c.mult,
                    numerator: merged.fraction_numerator(),
                    mu,
                });
            }
            None => fractions.push(Fraction {
                roots: vec![c.beta.clone()],
                mult: c.mult,
                numerator: c.part.curve.fraction_numerator(),
                mu: c.part.mu.clone(),
            }),
        }
    }
    Ok(PartialFractions { fractions, polynomial: dec.polynomial, sigma: dec.sigma })
}

/// `Σ n_i + max(N, deg F)`.
pub fn degree_bound(r: &RationalPHCurve, f: &Vec3Poly, poly_degree: i64) -> i64 {
    let deg_f = f.degree().map_or(0, |d| d as i64);
    r.denominator().degree() as i64 + poly_degree.max(deg_f)
}

/// True when the numerator of `r` over its denominator respects [`degree_bound`].
pub fn degree_bound_check(r: &RationalPHCurve, f: &Vec3Poly, poly_degree: i64) -> bool {
    r.numerator().degree().is_none_or(|d| d as i64 <= degree_bound(r, f, poly_degree))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hodograph::{hodograph_field, QuaternionPoly};

    fn example_f() -> Vec3Poly {
        let a = QuaternionPoly::from_int_rows(&[[10, 0, 0, 0], [-22, 14, 16, 12], [7, -19, -26, -2]]).unwrap();
        hodograph_field(&a)
    }

    fn example_den() -> Denominator {
        Denominator::new(vec![(Scalar::int(-1), 4), (Scalar::i(), 3), (-Scalar::i(), 3)]).unwrap()
    }

    fn combination(basis: &[BasisElement], sigma: &[i64]) -> RationalPHCurve {
        basis.iter().zip(sigma).fold(RationalPHCurve::zero(), |acc, (e, s)| acc.add(&e.curve.scale(&Scalar::int(*s))))
    }

    #[test]
    fn example_basis_has_nine_real_elements() {
        let basis = canonical_basis(&example_f(), &example_den(), 6).unwrap();
        assert_eq!(basis.len(), 9);
        assert!(basis.iter().all(|e| e.curve.is_real()));
        assert_eq!(basis[2].curve.denominator().polynomial(), ScalarPoly::from_ints(&[1, 0, 1]).pow(3));
    }

    #[test]
    fn round_trip_recovers_coordinates() {
        let f = example_f();
        let basis = canonical_basis(&f, &example_den(), 6).unwrap();
        let sigma = [3, -2, 5, 1, -4, 7, 2, -1, 1];
        let r = combination(&basis, &sigma).rebase(&example_den()).unwrap();
        let dec = decompose_curve(&r, &f).unwrap();
        let want: Vec<Scalar> = sigma.iter().map(|&s| Scalar::int(s)).collect();
        assert_eq!(dec.sigma, Some(want));
        assert!(dec.reconstruct().same_curve(&r));
        for c in &dec.components {
            assert!(c.part.curve.satisfies_certificate(&f, &c.part.mu));
        }
    }

    #[test]
    fn truncation_keeps_principal_part() {
        let f = example_f();
        let basis = canonical_basis(&f, &example_den(), 6).unwrap();
        let r = combination(&basis, &[1, 1, 1, 1, 1, 1, 1, 1, 1]);
        let beta = Scalar::int(-1);
        let t = truncate_at_root(&r, &f, &beta).unwrap();
        let a = laurent_expand(&r, &beta, 0).unwrap();
        let b = laurent_expand(&t.curve, &beta, 0).unwrap();
        assert_eq!(a, b);
        assert!(t.curve.numerator().degree().unwrap() <= 4 + 4);
    }

    #[test]
    fn polynomial_input_has_no_fractions() {
        let f = example_f();
        let p5 = f.integral();
        let r = RationalPHCurve::polynomial(&p5);
        let pf = partial_fractions(&r, &f, true).unwrap();
        assert!(pf.fractions.is_empty());
        assert_eq!(pf.polynomial, p5);
        assert!(matches!(truncate_at_root(&r, &f, &Scalar::zero()), Err(Error::NotARoot(_))));
    }

    #[test]
    fn real_merge_gives_quadratic_power() {
        let f = example_f();
        let basis = canonical_basis(&f, &example_den(), 6).unwrap();
        let r = combination(&basis, &[2, 1, -1, 3, 0, 0, 1, 1, 0]);
        let pf = partial_fractions(&r, &f, true).unwrap();
        assert_eq!(pf.fractions.len(), 2);
        let merged = &pf.fractions[1];
        assert_eq!(merged.base(), ScalarPoly::from_ints(&[1, 0, 1]));
        assert_eq!(merged.mult, 3);
        assert!(merged.numerator.is_rational());
        assert!(pf.reconstruct().same_curve(&r));
        let split = partial_fractions(&r, &f, false).unwrap();
        assert_eq!(split.fractions.len(), 3);
    }

    #[test]
    fn realify_trivial_cases() {
        let beta = Scalar::int(2);
        let v = Vec3::ints(1, 2, 3);
        let q = LaurentSeries::new(beta.clone(), -3, vec![v.clone()]);
        let (a, b) = realify_pair(&q, &q.conj()).unwrap();
        assert!(a.same_curve(&q.to_curve()) && b.is_zero());
        let qi = LaurentSeries::new(beta, -3, vec![v.scale(&Scalar::i())]);
        let (a, b) = realify_pair(&qi, &qi.conj()).unwrap();
        assert!(a.is_zero());
        assert!(b.same_curve(&LaurentSeries::new(Scalar::int(2), -3, vec![-&v]).to_curve()));
        assert!(matches!(realify_pair(&qi, &qi), Err(Error::NotConjugatePair(_))));
    }

    #[test]
    fn projection_errors() {
        let x = RationalPHCurve::constant(Vec3::ints(1, 0, 0));
        let y = RationalPHCurve::constant(Vec3::ints(0, 1, 0));
        assert_eq!(project_on_basis(&x, &[x.clone(), y.clone()]).unwrap(), vec![Scalar::one(), Scalar::zero()]);
        assert_eq!(project_on_basis(&x, &[x.clone(), x.scale(&Scalar::int(2))]), Err(Error::RedundantBasis));
        let z = RationalPHCurve::constant(Vec3::ints(0, 0, 1));
        assert_eq!(project_on_basis(&z, &[x, y]), Err(Error::NotInSpan));
    }

    #[test]
    fn degree_bound_examples() {
        let f = example_f();
        assert!(degree_bound_check(&RationalPHCurve::constant(Vec3::ints(1, 1, 1)), &f, 0));
        assert_eq!(degree_bound(&RationalPHCurve::new(Vec3Poly::zero(), example_den()), &f, 6), 16);
    }
}
