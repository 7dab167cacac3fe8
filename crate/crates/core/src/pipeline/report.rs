use serde::Serialize;
use serde_json::{json, Value};

use super::spec::SurfaceSpec;
use crate::galois_field::{ExtField, FieldElement, FieldSpec};
use crate::geometry::{line_system, Chart, Line, OneForm, QuadraticForm};
use crate::gw::{GWForm, SquareClass};
use crate::polysolve::mpoly_to_json;

pub const REPORT_FORMAT: &str = "arithline-report-v1";

fn elems(v: &[FieldElement]) -> Vec<Vec<i64>> {
    v.iter().map(|x| x.to_i64_vec()).collect()
}

/// JSON view of a line.
pub fn line_json(line: &Line) -> Value {
    json!({
        "degree": line.degree,
        "chart": [line.chart.i, line.chart.j],
        "canon_key": line.canon_key.to_string(),
        "residue_field": line.residue_field().spec(),
        "plucker": elems(line.plucker.coords()),
        "coords": elems(&line.coords),
    })
}

/// One summand of the enriched count.
#[derive(Clone, Debug)]
pub struct LineRecord {
    pub line: Line,
    /// Square class in `κ(L)` of the twisted Jacobian element.
    pub local_class: SquareClass,
    /// Trace form of the local class, over the working field.
    pub local_form: GWForm,
}

impl Serialize for LineRecord {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let mut v = line_json(&self.line);
        v["local_class"] = serde_json::to_value(&self.local_class).map_err(serde::ser::Error::custom)?;
        v["local_form"] = serde_json::to_value(&self.local_form).map_err(serde::ser::Error::custom)?;
        v.serialize(s)
    }
}

#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
pub struct Seeds {
    pub solver: u64,
    pub one_form: u64,
}

/// Result of an enriched count over `F_{p^q}`.
#[derive(Clone, Debug)]
pub struct CountReport {
    pub spec: SurfaceSpec,
    pub working_field: ExtField,
    pub qhat_used: Option<usize>,
    /// The quadrics over the working field.
    pub working_f1: QuadraticForm,
    pub working_f2: QuadraticForm,
    pub one_form: OneForm,
    pub lines: Vec<LineRecord>,
    /// Sum of the local forms, in `GW` of the working field.
    pub total: GWForm,
    /// `total` carried back to `GW(F_{p^q})` when the working field is larger.
    pub total_over_base: Option<GWForm>,
    pub sum_degrees: usize,
    pub is_8h: bool,
    pub seeds: Seeds,
}

#[derive(Serialize)]
struct ReportJson<'a> {
    format: &'static str,
    spec: &'a SurfaceSpec,
    base_field: FieldSpec,
    working_field: FieldSpec,
    qhat_used: Option<usize>,
    seeds: &'a Seeds,
    one_form: Vec<Vec<i64>>,
    lines: &'a [LineRecord],
    sum_degrees: usize,
    total: &'a GWForm,
    total_over_base: Option<&'a GWForm>,
    #[serde(rename = "is_8H")]
    is_8h: bool,
}

impl Serialize for CountReport {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        ReportJson {
            format: REPORT_FORMAT,
            spec: &self.spec,
            base_field: self.spec.field().spec(),
            working_field: self.working_field.spec(),
            qhat_used: self.qhat_used,
            seeds: &self.seeds,
            one_form: elems(self.one_form.coeffs()),
            lines: &self.lines,
            sum_degrees: self.sum_degrees,
            total: &self.total,
            total_over_base: self.total_over_base.as_ref(),
            is_8h: self.is_8h,
        }
        .serialize(s)
    }
}

impl CountReport {
    pub fn to_json(&self) -> Value {
        serde_json::to_value(self).expect("report serializes")
    }

    /// Report plus the chart equations of every chart holding a line.
    pub fn to_json_verbose(&self) -> Value {
        let mut v = self.to_json();
        let mut charts: Vec<Chart> = self.lines.iter().map(|r| r.line.chart).collect();
        charts.sort();
        charts.dedup();
        let systems: serde_json::Map<String, Value> = charts
            .into_iter()
            .map(|c| {
                let polys: Vec<Value> = line_system(&self.working_f1, &self.working_f2, c)
                    .iter()
                    .map(mpoly_to_json)
                    .collect();
                (format!("{}{}", c.i, c.j), Value::from(polys))
            })
            .collect();
        v["chart_systems"] = Value::Object(systems);
        v
    }

    /// The final total over the base field `F_{p^q}`.
    pub fn base_total(&self) -> &GWForm {
        self.total_over_base.as_ref().unwrap_or(&self.total)
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        out.push_str(&format!("surface over {}\n", self.spec.field()));
        out.push_str(&format!("  f1 = {}\n  f2 = {}\n", self.spec.f1, self.spec.f2));
        match self.qhat_used {
            Some(q) => out.push_str(&format!("working field {} (extension degree {q})\n", self.working_field)),
            None => out.push_str(&format!("working field {}\n", self.working_field)),
        }
        out.push_str(&format!(
            "one-form {:?}\n",
            self.one_form.coeffs().iter().map(|c| c.to_string()).collect::<Vec<_>>()
        ));
        out.push_str("lines:\n");
        for r in &self.lines {
            out.push_str(&format!(
                "  deg {:>2}  chart {}  class {}  form {}\n",
                r.line.degree,
                r.line.chart,
                if r.local_class.is_square { "square" } else { "nonsquare" },
                r.local_form
            ));
        }
        out.push_str(&format!("sum of degrees: {}\n", self.sum_degrees));
        out.push_str(&format!("total: {}\n", self.total));
        if let Some(t) = &self.total_over_base {
            out.push_str(&format!("total over base: {t}\n"));
        }
        out.push_str(&format!("equals 8H: {}\n", self.is_8h));
        out
    }
}
