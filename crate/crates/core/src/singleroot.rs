//! Solution spaces for a single denominator root `β`.
//!
//! For `α = (t−β)^n` and `b = Σ b_i (t−β)^i`, `F = Σ f_i (t−β)^i`,
//! `μ = Σ μ_i (t−β)^i`, the condition `α'b − αb' = μF` reads
//!
//! ```text
//! (2n − k) b_{k−n} = Σ_{i<k} μ_i f_{k−1−i},   k ≥ 1.
//! ```
//!
//! The equation with `k = 2n` has a vanishing left side and is the only
//! constraint left on the free `μ_i` once the triangular head and the
//! all-zero tail of the system have been eliminated.

use std::fmt;

use crate::error::{Error, Result};
use crate::exactnum::Scalar;
use crate::linalg::Matrix;
use crate::polycore::{det3, Denominator, LaurentSeries, RationalPHCurve, ScalarPoly, Vec3, Vec3Poly};

/// The structured system for multiplicity `n` and `deg b ≤ big_n`.
#[derive(Clone, Debug)]
pub struct SingleRootSystem {
    n: usize,
    big_n: usize,
    f: Vec<Vec3>,
}

/// One solution `(b_0..b_N, μ_0..μ_{n+N−1})` in shifted coordinates.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct KernelVector {
    pub b: Vec<Vec3>,
    pub mu: Vec<Scalar>,
}

impl KernelVector {
    pub fn flatten(&self) -> Vec<Scalar> {
        self.b.iter().flat_map(|v| v.0.iter().cloned()).chain(self.mu.iter().cloned()).collect()
    }

    pub fn scale(&self, k: &Scalar) -> Self {
        KernelVector { b: self.b.iter().map(|v| v.scale(k)).collect(), mu: self.mu.iter().map(|m| m * k).collect() }
    }

    pub fn add(&self, o: &KernelVector) -> Self {
        KernelVector {
            b: self.b.iter().zip(&o.b).map(|(x, y)| x + y).collect(),
            mu: self.mu.iter().zip(&o.mu).map(|(x, y)| x + y).collect(),
        }
    }
}

impl SingleRootSystem {
    /// `f` holds the Taylor coefficients of `F` at the root; `f_0` must be nonzero.
    pub fn new(n: usize, big_n: usize, f: Vec<Vec3>) -> Result<Self> {
        if n == 0 {
            return Err(Error::InvalidArgument("multiplicity must be positive".into()));
        }
        if f.first().is_none_or(Vec3::is_zero) {
            return Err(Error::LeadingCoefficientZero("F vanishes at the root".into()));
        }
        Ok(SingleRootSystem { n, big_n, f })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn big_n(&self) -> usize {
        self.big_n
    }

    fn deg_f(&self) -> usize {
        self.f.len() - 1
    }

    fn f(&self, i: i64) -> Vec3 {
        if i < 0 {
            return Vec3::zero();
        }
        self.f.get(i as usize).cloned().unwrap_or_default()
    }

    fn mu_len(&self) -> usize {
        self.n + self.big_n
    }

    /// Right-hand side `Σ μ_i f_{k−1−i}` of equation `k`.
    fn rhs(&self, mu: &[Scalar], k: usize) -> Vec3 {
        let mut acc = Vec3::zero();
        for (i, m) in mu.iter().enumerate().take(k) {
            if !m.is_zero() {
                acc = &acc + &self.f((k - 1 - i) as i64).scale(m);
            }
        }
        acc
    }

    /// Kernel basis computed from the block structure. Normalized solutions
    /// (`b_n = 0`) come first, followed by the three translations when `n ≤ N`.
    pub fn solve(&self) -> Vec<KernelVector> {
        let (n, big_n, d) = (self.n as i64, self.big_n as i64, self.deg_f() as i64);
        let lo = n - 1;
        let hi = n + big_n - d - 1;
        let free: Vec<usize> = if hi >= lo { (lo as usize..=hi as usize).collect() } else { vec![] };
        let has_critical = n <= big_n;
        let combos: Vec<Vec<Scalar>> = if has_critical {
            let crit = Matrix::from_columns(
                &free.iter().map(|&j| self.f(2 * n - 1 - j as i64).0.to_vec()).collect::<Vec<_>>(),
            );
            if free.is_empty() {
                vec![]
            } else {
                crit.nullspace()
            }
        } else {
            (0..free.len())
                .map(|k| (0..free.len()).map(|j| if j == k { Scalar::one() } else { Scalar::zero() }).collect())
                .collect()
        };
        let mut out: Vec<KernelVector> = combos
            .iter()
            .map(|c| {
                let mut mu = vec![Scalar::zero(); self.mu_len()];
                for (j, v) in free.iter().zip(c) {
                    mu[*j] = v.clone();
                }
                self.complete(mu)
            })
            .collect();
        if has_critical {
            for axis in 0..3 {
                let mut b = vec![Vec3::zero(); self.big_n + 1];
                b[self.n] = Vec3::unit(axis);
                out.push(KernelVector { b, mu: vec![Scalar::zero(); self.mu_len()] });
            }
        }
        out
    }

    /// Solutions with `b_n = 0`.
    pub fn normalized(&self) -> Vec<KernelVector> {
        let mut all = self.solve();
        if self.n <= self.big_n {
            all.truncate(all.len() - 3);
        }
        all
    }

    /// Fills in `b_i = rhs_{i+n} / (n − i)` for `i ≠ n`.
    fn complete(&self, mu: Vec<Scalar>) -> KernelVector {
        let b = (0..=self.big_n)
            .map(|i| {
                if i == self.n {
                    return Vec3::zero();
                }
                let c = Scalar::int(self.n as i64 - i as i64);
                self.rhs(&mu, i + self.n).scale(&c.inv().expect("nonzero"))
            })
            .collect();
        KernelVector { b, mu }
    }

    /// Full coefficient matrix; columns are `b_0..b_N` (three each) then `μ_0..μ_{n+N−1}`.
    pub fn dense_matrix(&self) -> Matrix {
        let nb = 3 * (self.big_n + 1);
        let cols = nb + self.mu_len();
        let kmax = self.n + self.big_n + self.deg_f();
        let mut m = Matrix::zeros(3 * kmax, cols);
        for k in 1..=kmax {
            let row = 3 * (k - 1);
            let bi = k as i64 - self.n as i64;
            if bi >= 0 && bi as usize <= self.big_n {
                let c = Scalar::int(2 * self.n as i64 - k as i64);
                for axis in 0..3 {
                    m.set(row + axis, 3 * bi as usize + axis, c.clone());
                }
            }
            for i in 0..self.mu_len().min(k) {
                let f = self.f((k - 1 - i) as i64);
                for axis in 0..3 {
                    m.set(row + axis, nb + i, -&f[axis]);
                }
            }
        }
        m
    }

    /// Brute-force kernel of [`dense_matrix`](Self::dense_matrix).
    pub fn dense_kernel(&self) -> Vec<KernelVector> {
        self.dense_matrix().nullspace().into_iter().map(|x| self.unflatten(&x)).collect()
    }

    fn unflatten(&self, x: &[Scalar]) -> KernelVector {
        let nb = 3 * (self.big_n + 1);
        let b =
            (0..=self.big_n).map(|i| Vec3::new(x[3 * i].clone(), x[3 * i + 1].clone(), x[3 * i + 2].clone())).collect();
        KernelVector { b, mu: x[nb..].to_vec() }
    }

    /// True when `v` satisfies every equation of the system.
    pub fn satisfies(&self, v: &KernelVector) -> bool {
        self.dense_matrix().mul_vec(&v.flatten()).iter().all(Scalar::is_zero)
    }
}

/// Kernel basis of the structured system.
pub fn solve_system(sys: &SingleRootSystem) -> Vec<KernelVector> {
    sys.solve()
}

/// Every three consecutive Taylor coefficients `f_{i−1}, f_i, f_{i+1}`,
/// `1 ≤ i ≤ deg F − 1`, are linearly independent. A constant `F` has no
/// such triple and is reported as non-generic.
pub fn genericity(f: &Vec3Poly, beta: &Scalar) -> bool {
    let t = f.taylor_shift(beta);
    if t.len() < 3 {
        return false;
    }
    t.windows(3).all(|w| !det3(&w[0], &w[1], &w[2]).is_zero())
}

/// Closed-form `M0(m)` for generic data with `a = deg A`.
pub fn generic_m0(a: i64, m: i64) -> i64 {
    match m {
        m if m < -2 * a => 2 * a + m,
        m if m <= -2 => 2 * a + m + 3,
        -1 => 2 * a + m + 2,
        0 => 2 * a + m + 1,
        _ => 2 * a + m,
    }
}

/// Which space a basis spans.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SpaceKind {
    Q,
    R,
    X,
    P,
}

impl fmt::Display for SpaceKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            SpaceKind::Q => "Q",
            SpaceKind::R => "R",
            SpaceKind::X => "X",
            SpaceKind::P => "P",
        };
        f.write_str(s)
    }
}

impl std::str::FromStr for SpaceKind {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "Q" | "q" => Ok(SpaceKind::Q),
            "R" | "r" => Ok(SpaceKind::R),
            "X" | "x" => Ok(SpaceKind::X),
            "P" | "p" => Ok(SpaceKind::P),
            _ => Err(Error::Parse(format!("unknown space kind {s:?}"))),
        }
    }
}

/// A basis curve with its Laurent cut label `[m, M0]` and certificate `μ`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BasisElement {
    pub name: String,
    pub m: i64,
    pub m0: i64,
    pub curve: RationalPHCurve,
    pub laurent: Option<LaurentSeries>,
    pub mu: ScalarPoly,
}

impl BasisElement {
    /// Unit constant along `axis`.
    pub fn constant(axis: usize, name: &str) -> Self {
        BasisElement {
            name: name.to_string(),
            m: 0,
            m0: 0,
            curve: RationalPHCurve::constant(Vec3::unit(axis)),
            laurent: None,
            mu: ScalarPoly::zero(),
        }
    }

    pub fn with_laurent_at(mut self, beta: &Scalar) -> Self {
        let p = self.curve.as_polynomial().expect("polynomial curve");
        self.laurent = Some(LaurentSeries::new(beta.clone(), 0, p.taylor_shift(beta)));
        self
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SpaceBasis {
    kind: SpaceKind,
    beta: Scalar,
    range: (i64, i64),
    elements: Vec<BasisElement>,
}

impl SpaceBasis {
    pub fn new(kind: SpaceKind, beta: Scalar, range: (i64, i64), elements: Vec<BasisElement>) -> Self {
        SpaceBasis { kind, beta, range, elements }
    }

    pub fn kind(&self) -> SpaceKind {
        self.kind
    }

    pub fn beta(&self) -> &Scalar {
        &self.beta
    }

    pub fn range(&self) -> (i64, i64) {
        self.range
    }

    pub fn elements(&self) -> &[BasisElement] {
        &self.elements
    }

    pub fn into_elements(self) -> Vec<BasisElement> {
        self.elements
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }
}

/// Normalized solution `r = −2b/(t−β)^n` in shifted coordinates. For
/// polynomial cuts `n = 0`.
#[derive(Clone, Debug)]
struct Cut {
    n: usize,
    m: i64,
    b: Vec<Vec3>,
    mu: Vec<Scalar>,
}

impl Cut {
    /// `r_m = −2 b_{m+n}`.
    fn lowest(&self) -> Vec3 {
        self.b[(self.m + self.n as i64) as usize].scale(&Scalar::int(-2))
    }

    fn scale(&self, k: &Scalar) -> Cut {
        Cut {
            n: self.n,
            m: self.m,
            b: self.b.iter().map(|v| v.scale(k)).collect(),
            mu: self.mu.iter().map(|m| m * k).collect(),
        }
    }
}

/// `F` together with its Taylor data at one root `β`.
#[derive(Clone, Debug)]
pub struct RootData {
    field: Vec3Poly,
    beta: Scalar,
    taylor: Vec<Vec3>,
}

impl RootData {
    pub fn new(f: &Vec3Poly, beta: &Scalar) -> Result<Self> {
        if f.is_zero() {
            return Err(Error::ZeroInput);
        }
        let taylor = f.taylor_shift(beta);
        if taylor[0].is_zero() {
            return Err(Error::LeadingCoefficientZero(format!("F({beta}) = 0")));
        }
        Ok(RootData { field: f.clone(), beta: beta.clone(), taylor })
    }

    pub fn field(&self) -> &Vec3Poly {
        &self.field
    }

    pub fn beta(&self) -> &Scalar {
        &self.beta
    }

    pub fn taylor(&self) -> &[Vec3] {
        &self.taylor
    }

    /// `F(β)`.
    pub fn f0(&self) -> &Vec3 {
        &self.taylor[0]
    }

    fn deg_f(&self) -> i64 {
        self.taylor.len() as i64 - 1
    }

    pub fn is_generic(&self) -> bool {
        genericity(&self.field, &self.beta)
    }

    pub fn system(&self, n: usize, big_n: usize) -> SingleRootSystem {
        SingleRootSystem { n, big_n, f: self.taylor.clone() }
    }

    /// Kernel basis of `Q^{m,M}`.
    fn cuts(&self, m: i64, big_m: i64) -> Vec<Cut> {
        if big_m < m {
            return vec![];
        }
        if m < 0 {
            let n = (-m) as usize;
            let sys = self.system(n, (big_m + n as i64) as usize);
            return sys.normalized().into_iter().map(|v| Cut { n, m, b: v.b, mu: v.mu }).collect();
        }
        // polynomial cuts: r' = λF with λ_j = 0 below index m − 1
        let d = self.deg_f();
        let first = (m - 1).max(0);
        (first..big_m - d)
            .map(|j| {
                let j = j as usize;
                let mut r = vec![Vec3::zero(); big_m as usize + 1];
                for (l, f) in self.taylor.iter().enumerate() {
                    let i = j + l + 1;
                    r[i] = f.scale(&Scalar::frac(1, i as i64));
                }
                let mut mu = vec![Scalar::zero(); j + 1];
                mu[j] = Scalar::frac(1, 2);
                Cut { n: 0, m, b: r.iter().map(|v| v.scale(&Scalar::frac(-1, 2))).collect(), mu }
            })
            .collect()
    }

    /// `dim Q^{m,M}`.
    pub fn q_dimension(&self, m: i64, big_m: i64) -> usize {
        self.cuts(m, big_m).len()
    }

    /// A kernel basis of `Q^{m,M}` as Laurent series, without normalization.
    pub fn q_kernel(&self, m: i64, big_m: i64) -> Vec<LaurentSeries> {
        self.cuts(m, big_m).iter().map(|c| self.series(c)).collect()
    }

    /// Minimal `M` with `dim Q^{m,M} = 1`, by increasing `M`.
    pub fn m0(&self, m: i64) -> Result<i64> {
        let cap = m.max(0) + self.deg_f() + 4;
        (m..=cap)
            .find(|&big_m| !self.cuts(m, big_m).is_empty())
            .ok_or_else(|| Error::InvalidArgument(format!("no normalized solution for m = {m} up to M = {cap}")))
    }

    /// The canonical curve `q^m` with lowest Laurent coefficient `r_m = F(β)`.
    pub fn basis_curve(&self, m: i64) -> Result<BasisElement> {
        let m0 = self.m0(m)?;
        let cut = self.cuts(m, m0).into_iter().find(|c| !c.lowest().is_zero()).ok_or(Error::DegenerateIndex(m))?;
        let c = cut
            .lowest()
            .ratio_to(self.f0())
            .ok_or_else(|| Error::InvalidArgument("lowest coefficient is not parallel to F(β)".into()))?;
        let cut = cut.scale(&c.inv()?);
        let curve = self.curve(&cut);
        let mu = ScalarPoly::from_shifted(&cut.mu, &self.beta);
        if !curve.satisfies_certificate(&self.field, &mu) {
            return Err(Error::CertificateMissing(format!("q^{m} at {}", self.beta)));
        }
        Ok(BasisElement { name: format!("q^{m}"), m, m0, curve, laurent: Some(self.series(&cut)), mu })
    }

    fn series(&self, cut: &Cut) -> LaurentSeries {
        LaurentSeries::new(
            self.beta.clone(),
            -(cut.n as i64),
            cut.b.iter().map(|v| v.scale(&Scalar::int(-2))).collect(),
        )
    }

    fn curve(&self, cut: &Cut) -> RationalPHCurve {
        let b = Vec3Poly::from_shifted(&cut.b, &self.beta);
        let den = if cut.n == 0 { Denominator::one() } else { Denominator::single(self.beta.clone(), cut.n as u32) };
        RationalPHCurve::new(b, den)
    }

    /// Canonical basis of `Q^{m,M}`, `R^{m,M}`, `X^{m,M}` or `P^M` at this root.
    pub fn space_basis(&self, kind: SpaceKind, m: i64, big_m: i64) -> Result<SpaceBasis> {
        if m > big_m {
            return Err(Error::InvalidArgument(format!("empty index range [{m}, {big_m}]")));
        }
        if kind == SpaceKind::P {
            let mut p = crate::hodograph::polynomial_ph_basis(&self.field, big_m);
            p.beta = self.beta.clone();
            return Ok(p);
        }
        let top = if kind == SpaceKind::X { big_m.min(-3) } else { big_m };
        let mut elements = Vec::new();
        for l in m..=top {
            if self.m0(l)? > big_m {
                continue;
            }
            match self.basis_curve(l) {
                Ok(e) => elements.push(e),
                Err(Error::DegenerateIndex(_)) => {}
                Err(e) => return Err(e),
            }
        }
        if kind == SpaceKind::R && m <= 0 && 0 <= big_m {
            for (axis, name) in ["x", "y", "z"].iter().enumerate() {
                elements.push(BasisElement::constant(axis, name).with_laurent_at(&self.beta));
            }
        }
        Ok(SpaceBasis::new(kind, self.beta.clone(), (m, big_m), elements))
    }
}

/// `M0(m)` at `β`.
pub fn compute_m0(f: &Vec3Poly, beta: &Scalar, m: i64) -> Result<i64> {
    RootData::new(f, beta)?.m0(m)
}

/// `q^m` at `β`.
pub fn basis_curve(f: &Vec3Poly, beta: &Scalar, m: i64) -> Result<BasisElement> {
    RootData::new(f, beta)?.basis_curve(m)
}

pub fn space_basis(f: &Vec3Poly, beta: &Scalar, kind: SpaceKind, m: i64, big_m: i64) -> Result<SpaceBasis> {
    RootData::new(f, beta)?.space_basis(kind, m, big_m)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hodograph::{hodograph_field, QuaternionPoly};
    use crate::linalg::span_contains;

    fn example_f() -> Vec3Poly {
        let a = QuaternionPoly::from_int_rows(&[[10, 0, 0, 0], [-22, 14, 16, 12], [7, -19, -26, -2]]).unwrap();
        hodograph_field(&a)
    }

    fn root() -> RootData {
        RootData::new(&example_f(), &Scalar::int(-10)).unwrap()
    }

    #[test]
    fn example_m0_table() {
        let r = root();
        let got: Vec<i64> = (-7..=3).map(|m| r.m0(m).unwrap()).collect();
        assert_eq!(got, vec![-3, -2, -1, 3, 4, 5, 5, 5, 5, 6, 7]);
        assert!(r.is_generic());
    }

    #[test]
    fn structural_matches_dense() {
        let r = root();
        for n in 1..=5 {
            for big_n in 0..=9 {
                let sys = r.system(n, big_n);
                let s: Vec<_> = sys.solve().iter().map(KernelVector::flatten).collect();
                let d: Vec<_> = sys.dense_kernel().iter().map(KernelVector::flatten).collect();
                assert_eq!(s.len(), d.len(), "n={n} N={big_n}");
                assert!(span_contains(&d, &s) && span_contains(&s, &d), "n={n} N={big_n}");
            }
        }
    }

    #[test]
    fn multiplicity_one_has_no_rational_part() {
        let r = root();
        for big_n in 0..8 {
            for v in r.system(1, big_n).normalized() {
                assert!(v.b[0].is_zero());
                assert!(v.mu[0].is_zero() && v.mu.get(1).is_none_or(Scalar::is_zero));
            }
        }
    }

    #[test]
    fn basis_curves_are_normalized_and_certified() {
        let r = root();
        for m in [-6, -5, -4, -3, 1, 2, 3] {
            let q = r.basis_curve(m).unwrap();
            let s = q.laurent.as_ref().unwrap();
            assert_eq!(s.lo(), Some(m));
            assert_eq!(&s.coeff(m), r.f0());
            assert!(q.curve.satisfies_certificate(&example_f(), &q.mu));
        }
        let q4 = r.basis_curve(-4).unwrap();
        assert!(q4.laurent.unwrap().coeff(0).is_zero());
        let q2 = r.basis_curve(2).unwrap().laurent.unwrap();
        assert!(q2.coeff(0).is_zero() && q2.coeff(1).is_zero());
    }

    #[test]
    fn degenerate_indices() {
        let r = root();
        for m in [-2, -1, 0] {
            assert_eq!(r.basis_curve(m), Err(Error::DegenerateIndex(m)));
        }
    }

    #[test]
    fn q1_is_integral_of_f_from_beta() {
        let r = root();
        let q = r.basis_curve(1).unwrap();
        let f = example_f();
        let prim = f.integral();
        let expected = &prim - &Vec3Poly::constant(prim.eval(&Scalar::int(-10)));
        assert_eq!(q.curve.as_polynomial().unwrap(), expected);
    }

    #[test]
    fn example_space_dimensions() {
        let r = root();
        let b = r.space_basis(SpaceKind::R, -7, -1).unwrap();
        assert_eq!(b.elements().iter().map(|e| (e.m, e.m0)).collect::<Vec<_>>(), vec![(-7, -3), (-6, -2), (-5, -1)]);
        let b = r.space_basis(SpaceKind::R, -5, 5).unwrap();
        assert_eq!(b.len(), 7);
        let labels: Vec<i64> = b.elements().iter().take(4).map(|e| e.m).collect();
        assert_eq!(labels, vec![-5, -4, -3, 1]);
        assert!(r.space_basis(SpaceKind::Q, 0, 0).unwrap().is_empty());
        let x = r.space_basis(SpaceKind::X, -5, 5).unwrap();
        assert_eq!(x.len(), 3);
    }

    #[test]
    fn closed_form_branches() {
        assert_eq!(generic_m0(2, -5), -1);
        assert_eq!(generic_m0(2, 10), 14);
        assert_eq!(generic_m0(2, -2), 5);
    }

    #[test]
    fn genericity_probes() {
        let constant = Vec3Poly::from_int_rows(&[[1, 0, 0]]);
        assert!(!genericity(&constant, &Scalar::zero()));
        // f_2 = f_0 + f_1 at β = 0
        let f = Vec3Poly::from_int_rows(&[[1, 0, 0], [0, 1, 0], [1, 1, 0], [0, 0, 1], [1, 0, 0]]);
        assert!(!genericity(&f, &Scalar::zero()));
    }

    #[test]
    fn vanishing_field_is_rejected() {
        let f = Vec3Poly::from_int_rows(&[[0, 0, 0], [1, 0, 0], [0, 1, 0]]);
        assert!(matches!(RootData::new(&f, &Scalar::zero()), Err(Error::LeadingCoefficientZero(_))));
        assert!(SingleRootSystem::new(2, 3, f.taylor_shift(&Scalar::zero())).is_err());
    }
}
