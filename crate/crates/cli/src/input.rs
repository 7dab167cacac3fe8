//! Parsing of command-line surface and field arguments.

use std::io::Read;

use arithline::galois_field::{make_field, ExtField, FieldElement};
use arithline::geometry::{OneForm, QuadraticForm, NUM_COEFFS};
use arithline::pipeline::{working_field, SurfaceSpec};

use crate::{Failure, SurfaceArgs};

fn parse_err(detail: impl Into<String>) -> Failure {
    Failure::input("parse error", detail)
}

fn smallest_factor(n: u64) -> u64 {
    let mut d = 2;
    while d * d <= n {
        if n % d == 0 {
            return d;
        }
        d += 1;
    }
    n
}

/// `17`, `3^2` or `9`.
pub fn field(text: &str) -> Result<ExtField, Failure> {
    let text = text.trim();
    let (p, q) = match text.split_once('^') {
        Some((p, q)) => {
            let p: u64 = p.trim().parse().map_err(|_| parse_err(format!("bad characteristic in {text:?}")))?;
            let q: usize = q.trim().parse().map_err(|_| parse_err(format!("bad degree in {text:?}")))?;
            (p, q)
        }
        None => {
            let n: u64 = text.parse().map_err(|_| parse_err(format!("bad field {text:?}")))?;
            if n < 2 {
                return Err(parse_err(format!("{n} is not a prime power")));
            }
            let p = smallest_factor(n);
            let (mut m, mut q) = (n, 0);
            while m % p == 0 {
                m /= p;
                q += 1;
            }
            if m != 1 {
                return Err(parse_err(format!("{n} is not a prime power")));
            }
            (p, q)
        }
    };
    Ok(make_field(p, q)?)
}

fn element(field: &ExtField, token: &str) -> Result<FieldElement, Failure> {
    let parts = token
        .split(':')
        .map(|t| t.trim().parse::<i64>().map_err(|_| parse_err(format!("bad coefficient {token:?}"))))
        .collect::<Result<Vec<_>, _>>()?;
    match parts.as_slice() {
        [v] => Ok(field.from_int(*v)),
        _ => Ok(field.from_coeffs(&parts)?),
    }
}

fn elements(field: &ExtField, text: &str, want: usize, name: &str) -> Result<Vec<FieldElement>, Failure> {
    let v = text
        .split(',')
        .map(|t| element(field, t))
        .collect::<Result<Vec<_>, _>>()?;
    if v.len() != want {
        return Err(parse_err(format!("{name} needs {want} coefficients, got {}", v.len())));
    }
    Ok(v)
}

fn read_source(path: &str) -> Result<String, Failure> {
    let mut s = String::new();
    let res = if path == "-" {
        std::io::stdin().read_to_string(&mut s).map(|_| ())
    } else {
        std::fs::read_to_string(path).map(|t| s = t)
    };
    res.map_err(|e| parse_err(format!("{path}: {e}")))?;
    Ok(s)
}

pub fn surface(args: &SurfaceArgs) -> Result<SurfaceSpec, Failure> {
    if let Some(path) = &args.input {
        return Ok(SurfaceSpec::from_json_str(&read_source(path)?)?);
    }
    let (Some(f), Some(f1), Some(f2)) = (&args.field, &args.f1, &args.f2) else {
        return Err(parse_err("give --input, or all of --field, --f1 and --f2"));
    };
    let k = field(f)?;
    let quad = |text: &str, name: &str| -> Result<QuadraticForm, Failure> {
        QuadraticForm::new(&k, elements(&k, text, NUM_COEFFS, name)?)
            .map_err(|e| parse_err(format!("{name}: {e}")))
    };
    Ok(SurfaceSpec::new(quad(f1, "f1")?, quad(f2, "f2")?)?)
}

/// A one-form given over the working field of `spec`.
pub fn one_form(spec: &SurfaceSpec, text: &str) -> Result<OneForm, Failure> {
    let (work, _) = working_field(spec.field())?;
    Ok(OneForm(elements(&work, text, 10, "one-form")?))
}
