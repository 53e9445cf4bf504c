//! Diagram files: JSON with exact rational coefficients.
//!
//! Top level is {rank, params, max_order, walls}; each wall carries its mode,
//! support (ray or line plus a primitive direction), coorientation covector,
//! and the logarithm of its automorphism as a list of {monomial, direction,
//! coeff} records, where coeff maps a comma-separated parameter multi-index
//! to a rational written "p/q".  The serializer always writes "p/q" in lowest
//! terms; the parser also accepts a bare integer "p".  Round trips are
//! bit-exact: parse(serialize(d)) == d.
//!
//! This module is fixed to exact rational coefficients — the format has no
//! spelling for inexact scalars.

use std::collections::BTreeMap;
use std::str::FromStr;

use num::bigint::BigInt;
use num::Zero;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::lie::LieElement;
use crate::scattering::{Diagram, ScatterError, Support, SupportKind, Wall};
use crate::series::{pairing, DualVector, LatticeVector, MultiIndex, Series};
use crate::{QDiagram, Rat};

#[derive(Debug, Error)]
pub enum IoError {
    #[error("malformed JSON: {0}")]
    Json(#[from] serde_json::Error),
    #[error("schema violation: {0}")]
    Schema(String),
    #[error("invalid diagram: {0}")]
    Invalid(#[from] ScatterError),
}

fn schema(msg: impl Into<String>) -> IoError {
    IoError::Schema(msg.into())
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct DiagramFile {
    rank: usize,
    params: usize,
    max_order: u32,
    walls: Vec<WallRecord>,
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct WallRecord {
    mode: Vec<i64>,
    support: SupportRecord,
    coorientation: Vec<i64>,
    log: Vec<LogRecord>,
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct SupportRecord {
    kind: KindRecord,
    direction: Vec<i64>,
}

#[derive(Debug, Clone, Copy, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
enum KindRecord {
    Ray,
    Line,
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct LogRecord {
    monomial: Vec<i64>,
    direction: Vec<i64>,
    coeff: BTreeMap<String, String>,
}

/// Parse a diagram from JSON text, validating schema and wall geometry.
pub fn parse_diagram(text: &str) -> Result<QDiagram, IoError> {
    let file: DiagramFile = serde_json::from_str(text)?;
    if file.rank != 2 {
        return Err(schema(format!("rank must be 2, got {}", file.rank)));
    }
    let mut walls = Vec::with_capacity(file.walls.len());
    for (i, record) in file.walls.iter().enumerate() {
        walls.push(
            parse_wall(record, file.params, file.max_order)
                .map_err(|e| rewrap_wall_error(e, i))?,
        );
    }
    Ok(Diagram::new(file.params, file.max_order, walls)?)
}

fn rewrap_wall_error(e: IoError, wall_index: usize) -> IoError {
    match e {
        IoError::Schema(msg) => schema(format!("wall {wall_index}: {msg}")),
        other => other,
    }
}

fn parse_wall(record: &WallRecord, params: usize, max_order: u32) -> Result<Wall<Rat>, IoError> {
    let mode = lattice_vector(&record.mode, "mode")?;
    let direction = lattice_vector(&record.support.direction, "support direction")?;
    let coorientation = dual_vector(&record.coorientation, "coorientation")?;
    let kind = match record.support.kind {
        KindRecord::Ray => SupportKind::Ray,
        KindRecord::Line => SupportKind::Line,
    };
    let mut log = LieElement::zero(params, 2, max_order);
    for term in &record.log {
        let monomial = lattice_vector(&term.monomial, "log monomial")?;
        let dir = dual_vector(&term.direction, "log direction")?;
        if pairing(&monomial, &dir) != 0 {
            return Err(schema(format!(
                "log term w^{:?} d{:?} is not tangent to its own monomial",
                monomial.0, dir.0
            )));
        }
        let mut f = Series::zero(params, 2, max_order);
        for (key, value) in &term.coeff {
            let j = multi_index(key, params)?;
            let c = parse_ratio(value)?;
            f.add_assign(&Series::term(params, 2, max_order, j, monomial.clone(), c));
        }
        log = log.add(&LieElement::from_derivation(&f, &dir));
    }
    Ok(Wall { mode, support: Support { kind, direction }, coorientation, log_factor: log })
}

fn lattice_vector(coords: &[i64], what: &str) -> Result<LatticeVector, IoError> {
    if coords.len() != 2 {
        return Err(schema(format!("{what} must have 2 coordinates, got {}", coords.len())));
    }
    Ok(LatticeVector(coords.to_vec()))
}

fn dual_vector(coords: &[i64], what: &str) -> Result<DualVector, IoError> {
    if coords.len() != 2 {
        return Err(schema(format!("{what} must have 2 coordinates, got {}", coords.len())));
    }
    Ok(DualVector(coords.to_vec()))
}

fn multi_index(key: &str, params: usize) -> Result<MultiIndex, IoError> {
    let parts: Vec<&str> = key.split(',').collect();
    if parts.len() != params {
        return Err(schema(format!(
            "coefficient key \"{key}\" must list {params} exponents"
        )));
    }
    let mut j = Vec::with_capacity(params);
    for part in parts {
        j.push(
            part.trim()
                .parse::<u32>()
                .map_err(|_| schema(format!("bad exponent \"{part}\" in key \"{key}\"")))?,
        );
    }
    Ok(MultiIndex(j))
}

/// Parse "p/q" (or a bare integer "p") into an exact rational.
pub fn parse_ratio(text: &str) -> Result<Rat, IoError> {
    let (num, den) = match text.split_once('/') {
        Some((num, den)) => (num, den),
        None => (text, "1"),
    };
    let num = BigInt::from_str(num.trim()).map_err(|_| schema(format!("bad rational \"{text}\"")))?;
    let den = BigInt::from_str(den.trim()).map_err(|_| schema(format!("bad rational \"{text}\"")))?;
    if den.is_zero() {
        return Err(schema(format!("zero denominator in \"{text}\"")));
    }
    Ok(Rat::new(num, den))
}

/// Format a rational as "p/q" in lowest terms, the file format's only
/// rational spelling.
pub fn format_ratio(value: &Rat) -> String {
    format!("{}/{}", value.numer(), value.denom())
}

/// Serialize a diagram as pretty-printed JSON with a trailing newline.
pub fn serialize_diagram(diagram: &QDiagram) -> String {
    let file = DiagramFile {
        rank: diagram.rank(),
        params: diagram.params,
        max_order: diagram.max_order,
        walls: diagram.walls.iter().map(wall_record).collect(),
    };
    let mut out = serde_json::to_string_pretty(&file).expect("diagram serialization cannot fail");
    out.push('\n');
    out
}

fn wall_record(wall: &Wall<Rat>) -> WallRecord {
    let log = match wall.log_factor.factored_terms() {
        Some(parts) => parts
            .into_iter()
            .map(|(m, n, f)| LogRecord {
                monomial: m.0.clone(),
                direction: n.0.clone(),
                coeff: coeff_map(&f),
            })
            .collect(),
        // Fall back to one record per coordinate derivation; parsing the
        // records sums back to the identical element.
        None => wall
            .log_factor
            .components()
            .flat_map(|(m, col)| {
                col.iter().enumerate().filter(|(_, f)| !f.is_zero()).map(move |(k, f)| {
                    let mut axis = vec![0i64; 2];
                    axis[k] = 1;
                    LogRecord {
                        monomial: m.0.clone(),
                        direction: axis,
                        coeff: coeff_map(f),
                    }
                })
            })
            .collect(),
    };
    WallRecord {
        mode: wall.mode.0.clone(),
        support: SupportRecord {
            kind: match wall.support.kind {
                SupportKind::Ray => KindRecord::Ray,
                SupportKind::Line => KindRecord::Line,
            },
            direction: wall.support.direction.0.clone(),
        },
        coorientation: wall.coorientation.0.clone(),
        log,
    }
}

fn coeff_map(f: &Series<Rat>) -> BTreeMap<String, String> {
    f.terms()
        .map(|(key, c)| {
            let j: Vec<String> = key.j.0.iter().map(|e| e.to_string()).collect();
            (j.join(","), format_ratio(c))
        })
        .collect()
}
