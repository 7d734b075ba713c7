//! Command-line front end. Jobs arrive as JSON:
//!
//! ```json
//! {"A": [[w, x, y, z], ...], "beta": "-10", "kind": "R", "m": -5, "M": 5}
//! ```
//!
//! `"F"` may replace `"A"`. Curves are `r = numerator / denominator` with
//! `"numerator"` a list of 3-vectors and `"denominator"` a factor list
//! `[{"root": .., "mult": n}]`. Flags override the matching job fields.

use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};
use serde_json::{json, Map, Value};

use crate::decompose::{decompose_curve, degree_bound, partial_fractions};
use crate::error::{Error, Result};
use crate::exactnum::Scalar;
use crate::hodograph::{determinant_identity_check, hodograph_field, is_primitive, polynomial_ph_basis};
use crate::json::{
    denominator_from_json, int_from_json, quaternion_poly_from_json, scalar_from_json, string_field,
    vec3poly_from_json, vec3poly_text, NumberFormat,
};
use crate::polycore::{Denominator, RationalPHCurve, Vec3Poly};
use crate::singleroot::{generic_m0, genericity, RootData, SpaceKind};

#[derive(Parser, Debug)]
#[command(name = "rph", version, about = "Exact bases and partial fractions of rational PH curves")]
pub struct Cli {
    #[command(flatten)]
    pub io: IoArgs,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Args, Debug)]
pub struct IoArgs {
    /// Job file (JSON).
    #[arg(long, global = true, conflicts_with = "inline")]
    pub input: Option<PathBuf>,
    /// Job as an inline JSON string.
    #[arg(long, global = true)]
    pub inline: Option<String>,
    /// Exact rational output (default).
    #[arg(long, global = true, conflicts_with = "digits")]
    pub exact: bool,
    /// Decimal output rounded half to even at this many digits.
    #[arg(long, global = true)]
    pub digits: Option<usize>,
    /// Write to a file instead of stdout.
    #[arg(long, global = true)]
    pub output: Option<PathBuf>,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Canonical basis of Q, R, X or P at one root.
    Basis {
        #[arg(long)]
        kind: Option<SpaceKind>,
        #[arg(long = "m", allow_negative_numbers = true)]
        m: Option<i64>,
        #[arg(long = "M", allow_negative_numbers = true)]
        big_m: Option<i64>,
    },
    /// Table of M0(m) over an index range.
    M0 {
        #[arg(long = "m", allow_negative_numbers = true)]
        m: Option<i64>,
        #[arg(long = "M", allow_negative_numbers = true)]
        big_m: Option<i64>,
    },
    /// Split a curve into single-root parts and a polynomial; coordinates in the canonical basis.
    Decompose,
    /// Partial fractions whose terms are PH curves.
    Pfd {
        /// Combine conjugate roots over real quadratic factors.
        #[arg(long)]
        real_merge: bool,
    },
    /// CSV points `t,x,y,z` of a curve.
    Sample {
        #[arg(long, allow_negative_numbers = true)]
        t0: Option<String>,
        #[arg(long, allow_negative_numbers = true)]
        t1: Option<String>,
        #[arg(long)]
        count: Option<usize>,
    },
    /// Verification report; failures are listed, not raised.
    Check {
        /// Polynomial degree N used for the numerator degree bound.
        #[arg(long = "N", allow_negative_numbers = true)]
        poly_degree: Option<i64>,
    },
    /// Basis of polynomial solution curves of degree at most M.
    PolyBasis {
        #[arg(long = "M", allow_negative_numbers = true)]
        big_m: Option<i64>,
    },
}

/// Parses arguments, runs the command, writes output, and returns the exit code.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return e.exit_code();
        }
    };
    match execute(&cli).and_then(|out| emit(&cli.io, &out)) {
        Ok(()) => 0,
        Err(e) => {
            eprintln!("error: {e}");
            e.exit_code()
        }
    }
}

fn emit(io: &IoArgs, out: &str) -> Result<()> {
    let write_err = |e: std::io::Error| Error::InvalidArgument(format!("cannot write output: {e}"));
    match &io.output {
        Some(path) => std::fs::write(path, out).map_err(write_err),
        None => std::io::stdout().lock().write_all(out.as_bytes()).map_err(write_err),
    }
}

fn load_job(io: &IoArgs) -> Result<Value> {
    let text = match (&io.input, &io.inline) {
        (Some(path), _) => {
            std::fs::read_to_string(path).map_err(|e| Error::Parse(format!("cannot read {}: {e}", path.display())))?
        }
        (None, Some(s)) => s.clone(),
        (None, None) => return Err(Error::Parse("no job given; use --input FILE or --inline JSON".into())),
    };
    let v: Value = serde_json::from_str(&text).map_err(|e| Error::Parse(format!("invalid JSON: {e}")))?;
    if !v.is_object() {
        return Err(Error::Parse("job must be a JSON object".into()));
    }
    Ok(v)
}

/// Runs the parsed command and returns the text to emit.
pub fn execute(cli: &Cli) -> Result<String> {
    let job = load_job(&cli.io)?;
    let fmt = match cli.io.digits {
        Some(k) => NumberFormat::Decimal(k),
        None => NumberFormat::Exact,
    };
    let value = match &cli.command {
        Command::Basis { kind, m, big_m } => cmd_basis(&job, fmt, *kind, *m, *big_m)?,
        Command::M0 { m, big_m } => cmd_m0(&job, *m, *big_m)?,
        Command::Decompose => cmd_decompose(&job, fmt)?,
        Command::Pfd { real_merge } => cmd_pfd(&job, fmt, *real_merge)?,
        Command::Sample { t0, t1, count } => return cmd_sample(&job, fmt, t0.as_deref(), t1.as_deref(), *count),
        Command::Check { poly_degree } => cmd_check(&job, fmt, *poly_degree)?,
        Command::PolyBasis { big_m } => {
            let f = field(&job)?;
            fmt.basis(&polynomial_ph_basis(&f, param(&job, "M", *big_m)?))
        }
    };
    let mut s = serde_json::to_string_pretty(&value).expect("JSON values serialize");
    s.push('\n');
    Ok(s)
}

fn param(job: &Value, key: &str, flag: Option<i64>) -> Result<i64> {
    match (flag, job.get(key)) {
        (Some(v), _) => Ok(v),
        (None, Some(v)) => int_from_json(v, key),
        (None, None) => Err(Error::Parse(format!("missing parameter {key:?}"))),
    }
}

fn field(job: &Value) -> Result<Vec3Poly> {
    if let Some(a) = job.get("A") {
        return Ok(hodograph_field(&quaternion_poly_from_json(a)?));
    }
    match job.get("F") {
        Some(f) => {
            let f = vec3poly_from_json(f)?;
            if f.is_zero() {
                return Err(Error::Parse("\"F\" is zero".into()));
            }
            Ok(f)
        }
        None => Err(Error::Parse("job needs \"A\" or \"F\"".into())),
    }
}

fn beta(job: &Value) -> Result<Scalar> {
    scalar_from_json(job.get("beta").ok_or_else(|| Error::Parse("missing \"beta\"".into()))?)
}

fn denominator(job: &Value) -> Result<Denominator> {
    match job.get("denominator") {
        Some(d) => denominator_from_json(d),
        None => Ok(Denominator::one()),
    }
}

fn curve(job: &Value) -> Result<RationalPHCurve> {
    let numer = vec3poly_from_json(job.get("numerator").ok_or_else(|| Error::Parse("missing \"numerator\"".into()))?)?;
    Ok(RationalPHCurve::from_fraction(&numer, denominator(job)?))
}

fn cmd_basis(
    job: &Value,
    fmt: NumberFormat,
    kind: Option<SpaceKind>,
    m: Option<i64>,
    big_m: Option<i64>,
) -> Result<Value> {
    let kind = match kind {
        Some(k) => k,
        None => string_field(job, "kind")?.ok_or_else(|| Error::Parse("missing \"kind\"".into()))?.parse()?,
    };
    let f = field(job)?;
    let big_m = param(job, "M", big_m)?;
    if kind == SpaceKind::P {
        return Ok(fmt.basis(&polynomial_ph_basis(&f, big_m)));
    }
    let data = RootData::new(&f, &beta(job)?)?;
    Ok(fmt.basis(&data.space_basis(kind, param(job, "m", m)?, big_m)?))
}

fn cmd_m0(job: &Value, m: Option<i64>, big_m: Option<i64>) -> Result<Value> {
    let f = field(job)?;
    let beta = beta(job)?;
    let (lo, hi) = (param(job, "m", m)?, param(job, "M", big_m)?);
    if lo > hi {
        return Err(Error::InvalidArgument(format!("empty index range [{lo}, {hi}]")));
    }
    let data = RootData::new(&f, &beta)?;
    let a = f.degree().unwrap_or(0) as i64 / 2;
    let mut table = Map::new();
    let mut agrees = true;
    for l in lo..=hi {
        let v = data.m0(l)?;
        agrees &= v == generic_m0(a, l);
        table.insert(l.to_string(), json!(v));
    }
    let generic = data.is_generic();
    Ok(json!({
        "beta": NumberFormat::Exact.scalar(&beta),
        "a": a,
        "generic": generic,
        "closed_form_agrees": agrees,
        "M0": table,
    }))
}

fn verification(r: &RationalPHCurve, rebuilt: &RationalPHCurve, certified: bool) -> Value {
    let residual = r.sub(rebuilt).fraction_numerator();
    json!({ "reconstruction_residual": vec3poly_text(&residual), "certificates": certified })
}

fn cmd_decompose(job: &Value, fmt: NumberFormat) -> Result<Value> {
    let f = field(job)?;
    let r = curve(job)?;
    let dec = decompose_curve(&r, &f)?;
    let certified = dec.components.iter().all(|c| c.part.curve.satisfies_certificate(&f, &c.part.mu));
    let mut out = fmt.decomposition(&dec);
    out["verification"] = verification(&r, &dec.reconstruct(), certified);
    Ok(out)
}

fn cmd_pfd(job: &Value, fmt: NumberFormat, real_merge: bool) -> Result<Value> {
    let f = field(job)?;
    let r = curve(job)?;
    let pf = partial_fractions(&r, &f, real_merge || job.get("real_merge").and_then(Value::as_bool).unwrap_or(false))?;
    let certified = pf.fractions.iter().all(|fr| fr.curve().satisfies_certificate(&f, &fr.mu));
    let mut out = fmt.partial_fractions(&pf);
    out["verification"] = verification(&r, &pf.reconstruct(), certified);
    Ok(out)
}

fn cmd_sample(
    job: &Value,
    fmt: NumberFormat,
    t0: Option<&str>,
    t1: Option<&str>,
    count: Option<usize>,
) -> Result<String> {
    let r = curve(job)?;
    let bound = |flag: Option<&str>, idx: usize| -> Result<Scalar> {
        match flag {
            Some(s) => scalar_from_json(&Value::String(s.to_string())),
            None => scalar_from_json(
                job.get("t")
                    .and_then(|t| t.get(idx))
                    .ok_or_else(|| Error::Parse("missing sampling range \"t\": [t0, t1]".into()))?,
            ),
        }
    };
    let (a, b) = (bound(t0, 0)?, bound(t1, 1)?);
    let count = match count {
        Some(c) => c,
        None => int_from_json(job.get("count").unwrap_or(&json!(0)), "count")?.max(0) as usize,
    };
    if count == 0 || !a.is_rational() || !b.is_rational() || a.re() > b.re() {
        return Err(Error::EmptyRange);
    }
    let cell = |s: &Scalar| match fmt {
        NumberFormat::Exact => s.to_exact_string(),
        NumberFormat::Decimal(k) => s.to_decimal_string(k),
    };
    let mut out = String::from("t,x,y,z\n");
    let mut rows = 0;
    for k in 0..count {
        let t = if count == 1 { a.clone() } else { &a + &(&(&b - &a) * &Scalar::frac(k as i64, count as i64 - 1)) };
        match r.eval(&t) {
            Some(p) => {
                out.push_str(&format!("{},{},{},{}\n", cell(&t), cell(&p[0]), cell(&p[1]), cell(&p[2])));
                rows += 1;
            }
            None => eprintln!("skipping t = {t}: denominator vanishes"),
        }
    }
    if rows == 0 {
        return Err(Error::EmptyRange);
    }
    Ok(out)
}

fn cmd_check(job: &Value, fmt: NumberFormat, poly_degree: Option<i64>) -> Result<Value> {
    let f = field(job)?;
    let mut report = Map::new();
    report.insert("degree_F".into(), json!(f.degree().unwrap_or(0)));
    report.insert("primitive".into(), json!(is_primitive(&f)));
    report.insert("determinant_identity".into(), json!(determinant_identity_check(&f)));
    let den = denominator(job)?;
    let mut roots: Vec<Scalar> = den.factors().iter().map(|(r, _)| r.clone()).collect();
    if job.get("beta").is_some() {
        let b = beta(job)?;
        if !roots.contains(&b) {
            roots.insert(0, b);
        }
    }
    let gen: Vec<Value> = roots
        .iter()
        .map(|b| {
            let nonvanishing = !f.eval(b).is_zero();
            json!({ "root": fmt.scalar(b), "f_nonzero": nonvanishing, "generic": nonvanishing && genericity(&f, b) })
        })
        .collect();
    report.insert("genericity".into(), Value::Array(gen));
    if job.get("numerator").is_some() {
        let r = curve(job)?;
        let cert = match r.recover_certificate(&f) {
            Ok(mu) => json!({ "ok": true, "mu": fmt.poly(&mu) }),
            Err(Error::NotPHCurve(res)) => json!({ "ok": false, "residual": res }),
            Err(e) => return Err(e),
        };
        report.insert("certificate".into(), cert);
        let deg_b = r.numerator().degree().map_or(0, |d| d as i64);
        let n = match poly_degree.or_else(|| job.get("N").and_then(Value::as_i64)) {
            Some(n) => n,
            None => (deg_b - den.degree() as i64).max(0),
        };
        let bound = degree_bound(&r, &f, n);
        report.insert("degree_bound".into(), json!({ "degree": deg_b, "N": n, "bound": bound, "ok": deg_b <= bound }));
    }
    Ok(Value::Object(report))
}
