//! JSON encoding of exact scalars, polynomials, denominators and bases.
//!
//! Rationals travel as `"p/q"` strings; quadratic-extension scalars as
//! `{"re": .., "im": .., "d": ..}`.

use serde_json::{json, Map, Value};

use crate::decompose::{Decomposition, PartialFractions};
use crate::error::{Error, Result};
use crate::exactnum::{format_decimal, format_rational, parse_rational, Rational, Scalar};
use crate::hodograph::{Quaternion, QuaternionPoly};
use crate::polycore::{Denominator, LaurentSeries, ScalarPoly, Vec3, Vec3Poly};
use crate::singleroot::{BasisElement, SpaceBasis};

/// Exact strings or decimals rounded half to even.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum NumberFormat {
    #[default]
    Exact,
    Decimal(usize),
}

impl NumberFormat {
    pub fn rational(&self, r: &Rational) -> Value {
        match self {
            NumberFormat::Exact => Value::String(format_rational(r)),
            NumberFormat::Decimal(k) => Value::String(format_decimal(r, *k)),
        }
    }

    pub fn scalar(&self, s: &Scalar) -> Value {
        match s.radicand() {
            None => self.rational(s.re()),
            Some(d) => json!({ "re": self.rational(s.re()), "im": self.rational(s.im()), "d": self.rational(d) }),
        }
    }

    pub fn vec3(&self, v: &Vec3) -> Value {
        Value::Array(v.0.iter().map(|s| self.scalar(s)).collect())
    }

    pub fn poly(&self, p: &ScalarPoly) -> Value {
        Value::Array(p.coeffs().iter().map(|s| self.scalar(s)).collect())
    }

    pub fn vec3poly(&self, p: &Vec3Poly) -> Value {
        Value::Array(p.coeffs().iter().map(|v| self.vec3(v)).collect())
    }

    pub fn denominator(&self, d: &Denominator) -> Value {
        Value::Array(d.factors().iter().map(|(r, n)| json!({ "root": self.scalar(r), "mult": n })).collect())
    }

    pub fn laurent(&self, s: &LaurentSeries) -> Value {
        let mut m = Map::new();
        for (i, c) in s.terms() {
            m.insert(i.to_string(), self.vec3(c));
        }
        Value::Object(m)
    }

    pub fn element(&self, e: &BasisElement) -> Value {
        let mut m = Map::new();
        m.insert("name".into(), json!(e.name));
        m.insert("m".into(), json!(e.m));
        m.insert("M0".into(), json!(e.m0));
        if let Some(s) = &e.laurent {
            m.insert("beta".into(), self.scalar(s.center()));
            m.insert("laurent".into(), self.laurent(s));
        }
        m.insert("numerator".into(), self.vec3poly(e.curve.numerator()));
        m.insert("denominator".into(), self.denominator(e.curve.denominator()));
        m.insert("mu".into(), self.poly(&e.mu));
        Value::Object(m)
    }

    pub fn basis(&self, b: &SpaceBasis) -> Value {
        json!({
            "kind": b.kind().to_string(),
            "beta": self.scalar(b.beta()),
            "m": b.range().0,
            "M": b.range().1,
            "dimension": b.len(),
            "elements": b.elements().iter().map(|e| self.element(e)).collect::<Vec<_>>(),
        })
    }

    fn sigma(&self, s: &Option<Vec<Scalar>>) -> Value {
        match s {
            Some(v) => Value::Array(v.iter().map(|x| self.scalar(x)).collect()),
            None => Value::Null,
        }
    }

    pub fn decomposition(&self, d: &Decomposition) -> Value {
        let components: Vec<Value> = d
            .components
            .iter()
            .map(|c| {
                json!({
                    "root": self.scalar(&c.beta),
                    "mult": c.mult,
                    "numerator": self.vec3poly(&c.part.curve.fraction_numerator()),
                    "mu": self.poly(&c.part.mu),
                })
            })
            .collect();
        json!({
            "components": components,
            "polynomial": self.vec3poly(&d.polynomial),
            "basis": d.basis.iter().map(|e| e.name.clone()).collect::<Vec<_>>(),
            "sigma": self.sigma(&d.sigma),
        })
    }

    pub fn partial_fractions(&self, pf: &PartialFractions) -> Value {
        let fractions: Vec<Value> = pf
            .fractions
            .iter()
            .map(|fr| {
                json!({
                    "root": self.scalar(&fr.roots[0]),
                    "merged": fr.roots.len() == 2,
                    "mult": fr.mult,
                    "denominator": format!("({})^{}", poly_text(&fr.base()), fr.mult),
                    "numerator": self.vec3poly(&fr.numerator),
                    "mu": self.poly(&fr.mu),
                })
            })
            .collect();
        json!({
            "polynomial": self.vec3poly(&pf.polynomial),
            "fractions": fractions,
            "sigma": self.sigma(&pf.sigma),
        })
    }
}

fn expect_str<'a>(v: &'a Value, what: &str) -> Result<&'a str> {
    v.as_str().ok_or_else(|| Error::Parse(format!("{what}: expected a string, got {v}")))
}

fn expect_array<'a>(v: &'a Value, what: &str) -> Result<&'a Vec<Value>> {
    v.as_array().ok_or_else(|| Error::Parse(format!("{what}: expected an array, got {v}")))
}

fn rational_value(v: &Value) -> Result<Rational> {
    match v {
        Value::String(s) => parse_rational(s),
        Value::Number(n) if n.is_i64() => Ok(Rational::from_integer(n.as_i64().unwrap().into())),
        Value::Number(n) => parse_rational(&n.to_string()),
        _ => Err(Error::Parse(format!("expected a rational, got {v}"))),
    }
}

/// Accepts `"p/q"`, decimal strings, integers, or `{"re", "im", "d"}`.
pub fn scalar_from_json(v: &Value) -> Result<Scalar> {
    match v {
        Value::Object(o) => {
            let get = |k: &str| o.get(k).ok_or_else(|| Error::Parse(format!("scalar object lacks {k:?}")));
            let re = rational_value(get("re")?)?;
            let im = match o.get("im") {
                Some(x) => rational_value(x)?,
                None => Rational::from_integer(0.into()),
            };
            let d = match o.get("d") {
                Some(x) => rational_value(x)?,
                None if im == Rational::from_integer(0.into()) => return Ok(Scalar::from_rational(re)),
                None => return Err(Error::Parse("scalar object with nonzero im lacks \"d\"".into())),
            };
            Scalar::new(re, im, d)
        }
        _ => Ok(Scalar::from_rational(rational_value(v)?)),
    }
}

pub fn vec3_from_json(v: &Value) -> Result<Vec3> {
    let a = expect_array(v, "vector")?;
    if a.len() != 3 {
        return Err(Error::Parse(format!("expected a 3-vector, got {v}")));
    }
    Ok(Vec3::new(scalar_from_json(&a[0])?, scalar_from_json(&a[1])?, scalar_from_json(&a[2])?))
}

pub fn poly_from_json(v: &Value) -> Result<ScalarPoly> {
    let a = expect_array(v, "polynomial")?;
    Ok(ScalarPoly::new(a.iter().map(scalar_from_json).collect::<Result<_>>()?))
}

pub fn vec3poly_from_json(v: &Value) -> Result<Vec3Poly> {
    let a = expect_array(v, "vector polynomial")?;
    Ok(Vec3Poly::new(a.iter().map(vec3_from_json).collect::<Result<_>>()?))
}

pub fn quaternion_poly_from_json(v: &Value) -> Result<QuaternionPoly> {
    let a = expect_array(v, "quaternion polynomial")?;
    let coeffs = a
        .iter()
        .map(|q| {
            let c = expect_array(q, "quaternion")?;
            if c.len() != 4 {
                return Err(Error::Parse(format!("expected [w, x, y, z], got {q}")));
            }
            Ok(Quaternion::new(
                scalar_from_json(&c[0])?,
                scalar_from_json(&c[1])?,
                scalar_from_json(&c[2])?,
                scalar_from_json(&c[3])?,
            ))
        })
        .collect::<Result<Vec<_>>>()?;
    QuaternionPoly::new(coeffs).map_err(|_| Error::Parse("quaternion polynomial is zero".into()))
}

/// Factor list `[{"root": .., "mult": n}]`.
pub fn denominator_from_json(v: &Value) -> Result<Denominator> {
    let a = expect_array(v, "denominator")?;
    let factors = a
        .iter()
        .map(|f| {
            let root =
                scalar_from_json(f.get("root").ok_or_else(|| Error::Parse(format!("factor lacks \"root\": {f}")))?)?;
            let mult = f
                .get("mult")
                .and_then(Value::as_u64)
                .ok_or_else(|| Error::Parse(format!("factor lacks a nonnegative \"mult\": {f}")))?;
            Ok((root, mult as u32))
        })
        .collect::<Result<Vec<_>>>()?;
    Denominator::new(factors)
}

pub fn int_from_json(v: &Value, what: &str) -> Result<i64> {
    v.as_i64().ok_or_else(|| Error::Parse(format!("{what}: expected an integer, got {v}")))
}

pub fn string_field<'a>(v: &'a Value, key: &str) -> Result<Option<&'a str>> {
    v.get(key).map(|x| expect_str(x, key)).transpose()
}

/// Readable one-line rendering such as `(1, 0, 0) + (2, -1, 3)*t^2`.
pub fn vec3poly_text(p: &Vec3Poly) -> String {
    if p.is_zero() {
        return "0".into();
    }
    let terms: Vec<String> = p
        .coeffs()
        .iter()
        .enumerate()
        .filter(|(_, v)| !v.is_zero())
        .map(|(i, v)| {
            let c = format!("({}, {}, {})", v[0], v[1], v[2]);
            match i {
                0 => c,
                1 => format!("{c}*t"),
                _ => format!("{c}*t^{i}"),
            }
        })
        .collect();
    terms.join(" + ")
}

/// Descending rendering in `t` such as `t^2+1` or `t-1/2`.
pub fn poly_text(p: &ScalarPoly) -> String {
    let mut out = String::new();
    for (k, c) in p.coeffs().iter().enumerate().rev().filter(|(_, c)| !c.is_zero()) {
        let mono = match k {
            0 => String::new(),
            1 => "t".into(),
            _ => format!("t^{k}"),
        };
        let (sign, mag) = match c.as_rational() {
            Some(r) if r < &Rational::from_integer(0.into()) => ("-", Scalar::from_rational(-r)),
            Some(_) => ("+", c.clone()),
            None => ("+", c.clone()),
        };
        let body = match (mag.is_one(), mag.is_rational(), k) {
            (true, _, k) if k > 0 => mono,
            (_, true, 0) => mag.to_string(),
            (_, true, _) => format!("{mag}*{mono}"),
            (_, false, 0) => format!("({mag})"),
            (_, false, _) => format!("({mag})*{mono}"),
        };
        if !(out.is_empty() && sign == "+") {
            out.push_str(sign);
        }
        out.push_str(&body);
    }
    if out.is_empty() {
        out.push('0');
    }
    out
}
