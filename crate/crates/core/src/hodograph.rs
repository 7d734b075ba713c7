//! Quaternion polynomials and the tangent field `F = A i Ā`.

use std::ops::{Add, Mul, Neg, Sub};

use crate::error::{Error, Result};
use crate::exactnum::Scalar;
use crate::polycore::{det_poly, poly_gcd, RationalPHCurve, ScalarPoly, Vec3, Vec3Poly};
use crate::singleroot::{BasisElement, SpaceBasis, SpaceKind};

/// `w + x i + y j + z k`.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Quaternion {
    pub w: Scalar,
    pub x: Scalar,
    pub y: Scalar,
    pub z: Scalar,
}

impl Quaternion {
    pub fn new(w: Scalar, x: Scalar, y: Scalar, z: Scalar) -> Self {
        Quaternion { w, x, y, z }
    }

    pub fn ints(w: i64, x: i64, y: i64, z: i64) -> Self {
        Self::new(Scalar::int(w), Scalar::int(x), Scalar::int(y), Scalar::int(z))
    }

    pub fn zero() -> Self {
        Self::default()
    }

    pub fn unit_i() -> Self {
        Self::ints(0, 1, 0, 0)
    }

    pub fn is_zero(&self) -> bool {
        self.w.is_zero() && self.x.is_zero() && self.y.is_zero() && self.z.is_zero()
    }

    /// Quaternion conjugate `w − xi − yj − zk` (coefficients are not conjugated).
    pub fn conj(&self) -> Self {
        Self::new(self.w.clone(), -&self.x, -&self.y, -&self.z)
    }

    /// `q q̄ = w² + x² + y² + z²`.
    pub fn norm(&self) -> Scalar {
        &(&(&self.w * &self.w) + &(&self.x * &self.x)) + &(&(&self.y * &self.y) + &(&self.z * &self.z))
    }

    pub fn scale(&self, k: &Scalar) -> Self {
        Self::new(&self.w * k, &self.x * k, &self.y * k, &self.z * k)
    }

    pub fn vector(&self) -> Vec3 {
        Vec3::new(self.x.clone(), self.y.clone(), self.z.clone())
    }

    pub fn from_vector(v: &Vec3) -> Self {
        Self::new(Scalar::zero(), v[0].clone(), v[1].clone(), v[2].clone())
    }

    /// `q i q̄` by the closed component formula.
    pub fn sandwich_i(&self) -> Vec3 {
        polar(self, self)
    }
}

/// Symmetric bilinear form with `polar(q, q) = q i q̄`.
fn polar(p: &Quaternion, q: &Quaternion) -> Vec3 {
    let x = &(&(&p.w * &q.w) + &(&p.x * &q.x)) - &(&(&p.y * &q.y) + &(&p.z * &q.z));
    let y = &(&(&p.x * &q.y) + &(&p.y * &q.x)) + &(&(&p.w * &q.z) + &(&p.z * &q.w));
    let z = &(&(&p.x * &q.z) + &(&p.z * &q.x)) - &(&(&p.w * &q.y) + &(&p.y * &q.w));
    Vec3::new(x, y, z)
}

impl Add<&Quaternion> for &Quaternion {
    type Output = Quaternion;
    fn add(self, o: &Quaternion) -> Quaternion {
        Quaternion::new(&self.w + &o.w, &self.x + &o.x, &self.y + &o.y, &self.z + &o.z)
    }
}

impl Sub<&Quaternion> for &Quaternion {
    type Output = Quaternion;
    fn sub(self, o: &Quaternion) -> Quaternion {
        Quaternion::new(&self.w - &o.w, &self.x - &o.x, &self.y - &o.y, &self.z - &o.z)
    }
}

impl Neg for &Quaternion {
    type Output = Quaternion;
    fn neg(self) -> Quaternion {
        Quaternion::new(-&self.w, -&self.x, -&self.y, -&self.z)
    }
}

/// Hamilton product.
impl Mul<&Quaternion> for &Quaternion {
    type Output = Quaternion;
    fn mul(self, o: &Quaternion) -> Quaternion {
        let (a, b) = (self, o);
        let w = &(&a.w * &b.w) - &(&(&a.x * &b.x) + &(&(&a.y * &b.y) + &(&a.z * &b.z)));
        let x = &(&(&a.w * &b.x) + &(&a.x * &b.w)) + &(&(&a.y * &b.z) - &(&a.z * &b.y));
        let y = &(&(&a.w * &b.y) - &(&a.x * &b.z)) + &(&(&a.y * &b.w) + &(&a.z * &b.x));
        let z = &(&(&a.w * &b.z) + &(&a.x * &b.y)) + &(&(&a.z * &b.w) - &(&a.y * &b.x));
        Quaternion::new(w, x, y, z)
    }
}

/// Polynomial with quaternion coefficients in ascending powers of `t`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QuaternionPoly {
    coeffs: Vec<Quaternion>,
}

impl QuaternionPoly {
    pub fn new(mut coeffs: Vec<Quaternion>) -> Result<Self> {
        while coeffs.last().is_some_and(Quaternion::is_zero) {
            coeffs.pop();
        }
        if coeffs.is_empty() {
            return Err(Error::ZeroInput);
        }
        Ok(QuaternionPoly { coeffs })
    }

    pub fn from_int_rows(rows: &[[i64; 4]]) -> Result<Self> {
        Self::new(rows.iter().map(|r| Quaternion::ints(r[0], r[1], r[2], r[3])).collect())
    }

    pub fn coeffs(&self) -> &[Quaternion] {
        &self.coeffs
    }

    /// `a = deg A`.
    pub fn degree(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn eval(&self, t: &Scalar) -> Quaternion {
        self.coeffs.iter().rev().fold(Quaternion::zero(), |acc, c| &acc.scale(t) + c)
    }

    pub fn conj(&self) -> Self {
        QuaternionPoly { coeffs: self.coeffs.iter().map(Quaternion::conj).collect() }
    }

    fn mul(&self, o: &QuaternionPoly) -> Vec<Quaternion> {
        let mut out = vec![Quaternion::zero(); self.coeffs.len() + o.coeffs.len() - 1];
        for (i, p) in self.coeffs.iter().enumerate() {
            for (j, q) in o.coeffs.iter().enumerate() {
                out[i + j] = &out[i + j] + &(p * q);
            }
        }
        out
    }
}

/// `F = A i Ā`, assembled from the polarized component formula.
pub fn hodograph_field(a: &QuaternionPoly) -> Vec3Poly {
    let c = a.coeffs();
    let deg = 2 * a.degree();
    let mut out = vec![Vec3::zero(); deg + 1];
    for j in 0..c.len() {
        out[2 * j] = &out[2 * j] + &polar(&c[j], &c[j]);
        for k in j + 1..c.len() {
            let p = polar(&c[j], &c[k]);
            out[j + k] = &out[j + k] + &(&p + &p);
        }
    }
    Vec3Poly::new(out)
}

/// `F` through the full quaternion product `A · i · conj(A)`; errors if the
/// scalar part does not vanish.
pub fn hodograph_field_product(a: &QuaternionPoly) -> Result<Vec3Poly> {
    let ai = QuaternionPoly { coeffs: a.coeffs.iter().map(|q| q * &Quaternion::unit_i()).collect() };
    let prod = ai.mul(&a.conj());
    if prod.iter().any(|q| !q.w.is_zero()) {
        return Err(Error::InvalidArgument("A i Ā has a nonzero scalar part".into()));
    }
    Ok(Vec3Poly::new(prod.iter().map(Quaternion::vector).collect()))
}

/// True iff the components of `F` have no common nonconstant factor.
pub fn is_primitive(f: &Vec3Poly) -> bool {
    let [x, y, z] = f.components();
    let g = poly_gcd(&x, &y).and_then(|g| if g.is_zero() { poly_gcd(&z, &g) } else { poly_gcd(&g, &z) });
    g.is_ok_and(|g| g.degree() == Some(0))
}

/// Basis of the polynomial solution curves of degree at most `m_max`: the
/// three unit constants followed by `(k+1)∫ t^k F dt`, `k = 0..M−2a−1`.
pub fn polynomial_ph_basis(f: &Vec3Poly, m_max: i64) -> SpaceBasis {
    let mut elements = Vec::new();
    if m_max >= 0 {
        for (axis, name) in ["x", "y", "z"].iter().enumerate() {
            elements.push(BasisElement::constant(axis, name));
        }
        let deg_f = f.degree().map_or(0, |d| d as i64);
        for k in 0..(m_max - deg_f).max(0) {
            elements.push(polynomial_element(f, k as usize));
        }
    }
    SpaceBasis::new(SpaceKind::P, Scalar::zero(), (0.min(m_max), m_max), elements)
}

/// `(k+1)∫ t^k F dt` with zero integration constant, with certificate
/// `μ = (k+1)t^k/2`.
fn polynomial_element(f: &Vec3Poly, k: usize) -> BasisElement {
    let kk = Scalar::int(k as i64 + 1);
    let tk = ScalarPoly::monomial(kk.clone(), k);
    let p = f.mul_scalar_poly(&tk).integral();
    let deg_f = f.degree().unwrap_or(0);
    let mu = ScalarPoly::monomial(&kk * &Scalar::frac(1, 2), k);
    BasisElement {
        name: format!("p{}", deg_f + k + 1),
        m: k as i64 + 1,
        m0: (deg_f + k + 1) as i64,
        curve: RationalPHCurve::polynomial(&p),
        laurent: None,
        mu,
    }
}

/// Exact check of `det[u, u′, u″] = det[F, F′, F″]²` with `u = F × F′`.
pub fn determinant_identity_check(f: &Vec3Poly) -> bool {
    let (lhs, rhs) = determinant_identity_sides(f);
    lhs == rhs
}

/// Both sides of the determinant identity.
pub fn determinant_identity_sides(f: &Vec3Poly) -> (ScalarPoly, ScalarPoly) {
    let f1 = f.derivative();
    let f2 = f1.derivative();
    let u = f.cross(&f1);
    let u1 = u.derivative();
    let u2 = u1.derivative();
    let d = det_poly(f, &f1, &f2);
    (det_poly(&u, &u1, &u2), &d * &d)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn example_a() -> QuaternionPoly {
        QuaternionPoly::from_int_rows(&[[10, 0, 0, 0], [-22, 14, 16, 12], [7, -19, -26, -2]]).unwrap()
    }

    #[test]
    fn constant_preimages() {
        let one = QuaternionPoly::from_int_rows(&[[1, 0, 0, 0]]).unwrap();
        assert_eq!(hodograph_field(&one), Vec3Poly::from_int_rows(&[[1, 0, 0]]));
        let j = QuaternionPoly::from_int_rows(&[[0, 0, 1, 0]]).unwrap();
        assert_eq!(hodograph_field(&j), Vec3Poly::from_int_rows(&[[-1, 0, 0]]));
        assert_eq!(QuaternionPoly::new(vec![Quaternion::zero()]), Err(Error::ZeroInput));
    }

    #[test]
    fn example_field_matches_derivative_of_p5() {
        let f = hodograph_field(&example_a());
        let expected = Vec3Poly::from_int_rows(&[
            [100, 0, 0],
            [-440, 240, -320],
            [420, -120, 1560],
            [40, -1080, -1880],
            [-270, 960, 440],
        ]);
        assert_eq!(f, expected);
        assert_eq!(hodograph_field_product(&example_a()).unwrap(), expected);
        assert!(is_primitive(&f));
    }

    #[test]
    fn hamilton_units() {
        let i = Quaternion::ints(0, 1, 0, 0);
        let j = Quaternion::ints(0, 0, 1, 0);
        let k = Quaternion::ints(0, 0, 0, 1);
        assert_eq!(&i * &j, k);
        assert_eq!(&j * &i, -&k);
        assert_eq!(&(&i * &j) * &k, Quaternion::ints(-1, 0, 0, 0));
    }

    #[test]
    fn primitivity() {
        let sq = ScalarPoly::from_ints(&[1, 0, 1]);
        let f = Vec3Poly::from_components(&sq, &ScalarPoly::zero(), &ScalarPoly::zero());
        assert!(!is_primitive(&f));
        let g = Vec3Poly::from_components(
            &ScalarPoly::one(),
            &ScalarPoly::from_ints(&[0, 1]),
            &ScalarPoly::from_ints(&[0, 0, 1]),
        );
        assert!(is_primitive(&g));
    }

    #[test]
    fn p5_and_p6_as_printed() {
        let f = hodograph_field(&example_a());
        let basis = polynomial_ph_basis(&f, 6);
        assert_eq!(basis.len(), 5);
        let p5 = basis.elements()[3].curve.as_polynomial().unwrap();
        let want5 = Vec3Poly::from_int_rows(&[
            [0, 0, 0],
            [100, 0, 0],
            [-220, 120, -160],
            [140, -40, 520],
            [10, -270, -470],
            [-54, 192, 88],
        ]);
        assert_eq!(p5, want5);
        let p6 = basis.elements()[4].curve.as_polynomial().unwrap();
        let lead = p6.coeff(6);
        assert_eq!(lead, Vec3::new(Scalar::int(-90), Scalar::int(320), Scalar::frac(440, 3)));
        assert_eq!(p6.coeff(3), Vec3::new(Scalar::frac(-880, 3), Scalar::int(160), Scalar::frac(-640, 3)));
    }

    #[test]
    fn small_degrees_give_constants_only() {
        let f = hodograph_field(&example_a());
        assert_eq!(polynomial_ph_basis(&f, 4).len(), 3);
        assert_eq!(polynomial_ph_basis(&f, 0).len(), 3);
        assert!(polynomial_ph_basis(&f, -1).is_empty());
    }

    #[test]
    fn determinant_identity_on_example() {
        let f = hodograph_field(&example_a());
        assert!(determinant_identity_check(&f));
        assert!(determinant_identity_check(&Vec3Poly::from_int_rows(&[[1, 2, 3]])));
    }
}
