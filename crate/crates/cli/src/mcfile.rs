//! Problem and solution files for the Maurer-Cartan solver.
//!
//! A problem is {"max_order": N, "pi": [records]}; each record is one term
//! E * s^k * x1^a x2^b * form with an exact rational coefficient, e.g.
//! {"basis": "E12", "s": 1, "monomial": [0, 0], "form": "dx1",
//!  "coeff": "1/1"}.  Forms are spelled "1", "dx1", "dx2", "dx1^dx2".  The
//! solution file repeats the notation under "phi", "residual", and
//! "obstruction".

use serde::{Deserialize, Serialize};

use tropex_core::io::{format_ratio, parse_ratio};
use tropex_core::polyform::{FormKey, FormPart, MatBasis, PolyForm};
use tropex_core::Rat;

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct ProblemFile {
    max_order: u32,
    pi: Vec<TermRecord>,
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct TermRecord {
    basis: String,
    s: u32,
    monomial: [u32; 2],
    form: String,
    coeff: String,
}

#[derive(Debug, Serialize)]
struct SolutionFile {
    max_order: u32,
    phi: Vec<TermRecord>,
    residual: Vec<TermRecord>,
    obstruction: Vec<TermRecord>,
}

pub struct Problem {
    pub max_order: u32,
    pub pi: PolyForm<Rat>,
}

pub fn parse_problem(text: &str) -> Result<Problem, String> {
    let file: ProblemFile =
        serde_json::from_str(text).map_err(|e| format!("malformed problem file: {e}"))?;
    let mut pi = PolyForm::zero();
    for record in &file.pi {
        let term = parse_term(record)?;
        if record_form(record)?.degree() != 1 {
            return Err(format!(
                "the input must be a 1-form; found a term with form \"{}\"",
                record.form
            ));
        }
        pi = pi.add(&term);
    }
    Ok(Problem { max_order: file.max_order, pi })
}

fn record_form(record: &TermRecord) -> Result<FormPart, String> {
    match record.form.as_str() {
        "1" => Ok(FormPart::One),
        "dx1" => Ok(FormPart::Dx1),
        "dx2" => Ok(FormPart::Dx2),
        "dx1^dx2" => Ok(FormPart::Dx12),
        other => Err(format!("unknown form \"{other}\" (expected 1, dx1, dx2, or dx1^dx2)")),
    }
}

fn parse_term(record: &TermRecord) -> Result<PolyForm<Rat>, String> {
    let basis = match record.basis.as_str() {
        "E12" => MatBasis::E12,
        "E13" => MatBasis::E13,
        "E23" => MatBasis::E23,
        other => return Err(format!("unknown basis \"{other}\" (expected E12, E13, or E23)")),
    };
    let form = record_form(record)?;
    let coeff = parse_ratio(&record.coeff).map_err(|e| e.to_string())?;
    let key = FormKey {
        s_pow: record.s,
        basis,
        form,
        px: record.monomial[0],
        py: record.monomial[1],
    };
    Ok(PolyForm::term(key, coeff))
}

fn records(element: &PolyForm<Rat>) -> Vec<TermRecord> {
    element
        .terms()
        .map(|(key, coeff)| TermRecord {
            basis: key.basis.name().to_string(),
            s: key.s_pow,
            monomial: [key.px, key.py],
            form: key.form.name().to_string(),
            coeff: format_ratio(coeff),
        })
        .collect()
}

pub fn serialize_solution(
    max_order: u32,
    phi: &PolyForm<Rat>,
    residual: &PolyForm<Rat>,
    obstruction: &PolyForm<Rat>,
) -> String {
    let file = SolutionFile {
        max_order,
        phi: records(phi),
        residual: records(residual),
        obstruction: records(obstruction),
    };
    let mut out = serde_json::to_string_pretty(&file).expect("solution serialization cannot fail");
    out.push('\n');
    out
}
