#![allow(dead_code)]

use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rph::decompose::canonical_basis;
use rph::{
    hodograph_field, BasisElement, Denominator, Quaternion, QuaternionPoly, RationalPHCurve, RootData, Scalar, Vec3,
    Vec3Poly,
};

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn example_a() -> QuaternionPoly {
    QuaternionPoly::from_int_rows(&[[10, 0, 0, 0], [-22, 14, 16, 12], [7, -19, -26, -2]]).unwrap()
}

pub fn example_f() -> Vec3Poly {
    hodograph_field(&example_a())
}

/// Roots `−1` (×4), `±i` (×3).
pub fn example_den() -> Denominator {
    Denominator::new(vec![(Scalar::int(-1), 4), (Scalar::i(), 3), (-Scalar::i(), 3)]).unwrap()
}

pub fn example_basis() -> Vec<BasisElement> {
    canonical_basis(&example_f(), &example_den(), 6).unwrap()
}

pub fn combination(basis: &[BasisElement], sigma: &[i64]) -> RationalPHCurve {
    basis.iter().zip(sigma).fold(RationalPHCurve::zero(), |acc, (e, s)| acc.add(&e.curve.scale(&Scalar::int(*s))))
}

/// Quaternion polynomial of degree exactly `a` with entries in `[-k, k]`.
pub fn random_a(rng: &mut impl Rng, a: usize, k: i64) -> QuaternionPoly {
    loop {
        let coeffs: Vec<Quaternion> = (0..=a)
            .map(|_| {
                Quaternion::ints(
                    rng.gen_range(-k..=k),
                    rng.gen_range(-k..=k),
                    rng.gen_range(-k..=k),
                    rng.gen_range(-k..=k),
                )
            })
            .collect();
        if !coeffs[a].is_zero() {
            return QuaternionPoly::new(coeffs).unwrap();
        }
    }
}

/// Random `F` with an integer root `β` at which the data is generic.
pub fn random_generic(rng: &mut impl Rng, a: usize) -> (Vec3Poly, Scalar) {
    loop {
        let f = hodograph_field(&random_a(rng, a, 5));
        let beta = Scalar::int(rng.gen_range(-12..=12));
        if let Ok(d) = RootData::new(&f, &beta) {
            if d.is_generic() {
                return (f, beta);
            }
        }
    }
}

/// `F` generic at every root in `roots`.
pub fn random_generic_at(rng: &mut impl Rng, a: usize, roots: &[Scalar]) -> Vec3Poly {
    loop {
        let f = hodograph_field(&random_a(rng, a, 5));
        if roots.iter().all(|b| RootData::new(&f, b).map(|d| d.is_generic()).unwrap_or(false)) {
            return f;
        }
    }
}

pub fn vec3(x: &str, y: &str, z: &str) -> Vec3 {
    let s = |v: &str| Scalar::from_rational(rph::exactnum::parse_rational(v).unwrap());
    Vec3::new(s(x), s(y), s(z))
}

/// Printed 4-decimal numerator of the worked multi-root curve, `t^0..t^16`,
/// over `(t+1)^4 (t^2+1)^3`.
pub const ROUNDED_NUMERATOR: [[&str; 3]; 17] = [
    ["-0.0510", "-0.0004", "-0.0050"],
    ["-0.1000", "-0.0017", "-0.0200"],
    ["-0.1000", "-0.0017", "-0.0783"],
    ["-0.1000", "0.0056", "-0.1783"],
    ["-0.1000", "0.0297", "-0.2758"],
    ["-0.1000", "0.0849", "-0.2620"],
    ["-0.1000", "0.2006", "-0.1327"],
    ["-31.4912", "0.4749", "0.0822"],
    ["-13.7803", "0.0853", "18.0038"],
    ["-17.9690", "-1.1335", "0.2412"],
    ["-19.9080", "-0.9355", "3.0462"],
    ["-6.7257", "-1.2111", "-9.9858"],
    ["-25.0542", "-0.2798", "-18.3100"],
    ["-23.4789", "0.5064", "-9.5939"],
    ["-16.7710", "0.5126", "-7.7792"],
    ["-14.4895", "0.5456", "-2.5465"],
    ["-4.5060", "0.2670", "1.4686"],
];

pub const PRINTED_SIGMA: [f64; 9] =
    [-0.023272, -0.010124, -0.000932, -0.000211, 0.000031, 0.000542, 0.010013, 1.523802, 4.169569];

pub fn rounded_numerator() -> Vec3Poly {
    Vec3Poly::new(ROUNDED_NUMERATOR.iter().map(|[x, y, z]| vec3(x, y, z)).collect())
}
