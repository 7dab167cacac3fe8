use serde::{Deserialize, Serialize};

use super::PipelineError;
use crate::galois_field::{make_field, ExtField, FieldElement};
use crate::geometry::{QuadraticForm, NUM_COEFFS};

/// A pair of quadrics over `F_{p^q}` defining a surface in `P^4`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SurfaceSpec {
    pub f1: QuadraticForm,
    pub f2: QuadraticForm,
}

/// A coefficient in JSON: a plain integer (prime-field element) or a
/// coefficient array, constant term first.
#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
#[serde(untagged)]
pub enum CoeffJson {
    Int(i64),
    Vec(Vec<i64>),
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct SurfaceSpecJson {
    pub p: u64,
    pub q: usize,
    pub f1: Vec<CoeffJson>,
    pub f2: Vec<CoeffJson>,
}

fn parse_coeffs(field: &ExtField, raw: &[CoeffJson], name: &str) -> Result<QuadraticForm, PipelineError> {
    if raw.len() != NUM_COEFFS {
        return Err(PipelineError::Parse(format!(
            "{name} needs {NUM_COEFFS} coefficients, got {}",
            raw.len()
        )));
    }
    let coeffs = raw
        .iter()
        .map(|c| match c {
            CoeffJson::Int(v) => Ok(field.from_int(*v)),
            CoeffJson::Vec(v) => field
                .from_coeffs(v)
                .map_err(|e| PipelineError::Parse(format!("{name}: {e}"))),
        })
        .collect::<Result<Vec<FieldElement>, _>>()?;
    Ok(QuadraticForm::new(field, coeffs)?)
}

fn coeff_json(c: &FieldElement) -> CoeffJson {
    let v = c.to_i64_vec();
    if c.field().is_prime_field() {
        CoeffJson::Int(v[0])
    } else {
        CoeffJson::Vec(v)
    }
}

impl SurfaceSpec {
    pub fn new(f1: QuadraticForm, f2: QuadraticForm) -> Result<Self, PipelineError> {
        if f1.field() != f2.field() {
            return Err(PipelineError::Parse(format!(
                "quadrics over different fields ({} vs {})",
                f1.field(),
                f2.field()
            )));
        }
        Ok(SurfaceSpec { f1, f2 })
    }

    pub fn field(&self) -> &ExtField {
        self.f1.field()
    }

    pub fn p(&self) -> u64 {
        self.field().p()
    }

    pub fn q(&self) -> usize {
        self.field().degree()
    }

    pub fn from_json(j: &SurfaceSpecJson) -> Result<Self, PipelineError> {
        let field = make_field(j.p, j.q)?;
        let f1 = parse_coeffs(&field, &j.f1, "f1")?;
        let f2 = parse_coeffs(&field, &j.f2, "f2")?;
        Ok(SurfaceSpec { f1, f2 })
    }

    pub fn from_json_str(s: &str) -> Result<Self, PipelineError> {
        let j: SurfaceSpecJson = serde_json::from_str(s).map_err(|e| PipelineError::Parse(e.to_string()))?;
        Self::from_json(&j)
    }

    pub fn to_json(&self) -> SurfaceSpecJson {
        SurfaceSpecJson {
            p: self.p(),
            q: self.q(),
            f1: self.f1.coeffs().iter().map(coeff_json).collect(),
            f2: self.f2.coeffs().iter().map(coeff_json).collect(),
        }
    }

    /// Diagonal pencil `Σ x_i²`, `Σ i x_i²` read over `F_{p^q}`.
    pub fn diagonal_pencil(p: u64, q: usize) -> Result<Self, PipelineError> {
        let field = make_field(p, q)?;
        Ok(SurfaceSpec {
            f1: QuadraticForm::diagonal(&field, &[1, 1, 1, 1, 1]),
            f2: QuadraticForm::diagonal(&field, &[0, 1, 2, 3, 4]),
        })
    }
}

impl Serialize for SurfaceSpec {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        self.to_json().serialize(s)
    }
}

impl<'de> Deserialize<'de> for SurfaceSpec {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let j = SurfaceSpecJson::deserialize(d)?;
        SurfaceSpec::from_json(&j).map_err(serde::de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn json_roundtrip() {
        let s = SurfaceSpec::diagonal_pencil(17, 1).unwrap();
        let text = serde_json::to_string(&s).unwrap();
        assert!(text.starts_with(r#"{"p":17,"q":1,"f1":[1,0,0,0,0,1"#));
        let back: SurfaceSpec = serde_json::from_str(&text).unwrap();
        assert_eq!(back, s);

        let s9 = SurfaceSpec::diagonal_pencil(3, 2).unwrap();
        let text = serde_json::to_string(&s9).unwrap();
        assert!(text.contains("[1,0]"));
        assert_eq!(SurfaceSpec::from_json_str(&text).unwrap(), s9);
    }

    #[test]
    fn parse_errors() {
        let bad = r#"{"p":17,"q":1,"f1":[1,2],"f2":[]}"#;
        assert!(matches!(SurfaceSpec::from_json_str(bad), Err(PipelineError::Parse(_))));
        let even = r#"{"p":2,"q":1,"f1":[],"f2":[]}"#;
        assert!(matches!(
            SurfaceSpec::from_json_str(even),
            Err(PipelineError::Field(crate::galois_field::FieldError::EvenCharacteristic))
        ));
    }
}
