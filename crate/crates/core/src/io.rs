//! File formats: point-set CSV/JSON, field descriptors, and the restriction
//! and `nu` reports.

use std::fs::File;
use std::io::{Read, Write};
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::field::{Field, FieldDescriptor, Fq};
use crate::geometry::PointSet;
use crate::spectral::{nu_profile, FourierTable};

fn io_err(path: &Path, e: impl std::fmt::Display) -> Error {
    Error::Io {
        path: path.display().to_string(),
        message: e.to_string(),
    }
}

fn csv_err(e: csv::Error) -> Error {
    Error::Parse(e.to_string())
}

/// `x` with 12 significant digits, in the style of C's `%.12g`.
pub fn fmt_sig12(x: f64) -> String {
    const P: i32 = 12;
    if x == 0.0 {
        return if x.is_sign_negative() { "-0".into() } else { "0".into() };
    }
    if !x.is_finite() {
        return x.to_string();
    }
    let sci = format!("{:.*e}", (P - 1) as usize, x);
    let (mantissa, exp) = sci.split_once('e').expect("exponent marker");
    let exp: i32 = exp.parse().expect("integer exponent");
    if !(-4..P).contains(&exp) {
        let m = trim_zeros(mantissa);
        let sign = if exp < 0 { '-' } else { '+' };
        format!("{m}e{sign}{:02}", exp.abs())
    } else {
        trim_zeros(&format!("{:.*}", (P - 1 - exp) as usize, x)).to_string()
    }
}

fn trim_zeros(s: &str) -> &str {
    if s.contains('.') {
        s.trim_end_matches('0').trim_end_matches('.')
    } else {
        s
    }
}

fn parse_header(record: &csv::StringRecord) -> Result<(usize, u32)> {
    let field = |i: usize, key: &str| -> Result<u64> {
        let cell = record.get(i).map(str::trim).unwrap_or("");
        cell.strip_prefix(key)
            .and_then(|v| v.strip_prefix('='))
            .and_then(|v| v.trim().parse().ok())
            .ok_or_else(|| Error::Parse(format!("expected header `dim=d,q=q`, got `{cell}`")))
    };
    if record.len() != 2 {
        return Err(Error::Parse("expected header `dim=d,q=q`".into()));
    }
    Ok((field(0, "dim")? as usize, field(1, "q")? as u32))
}

/// Reads a point set: header `dim=d,q=q`, then one row of `d` element
/// indices per point.
pub fn read_point_set_csv<R: Read>(field: &Field, reader: R) -> Result<PointSet> {
    let mut rdr = csv::ReaderBuilder::new()
        .has_headers(false)
        .flexible(true)
        .trim(csv::Trim::All)
        .from_reader(reader);
    let mut records = rdr.records();
    let header = records
        .next()
        .ok_or_else(|| Error::Parse("empty point-set file".into()))?
        .map_err(csv_err)?;
    let (dim, q) = parse_header(&header)?;
    if q != field.q() {
        return Err(Error::Parse(format!(
            "point set is over q = {q}, field has q = {}",
            field.q()
        )));
    }
    let mut points = Vec::new();
    for (row, rec) in records.enumerate() {
        let rec = rec.map_err(csv_err)?;
        if rec.len() == 1 && rec[0].is_empty() {
            continue;
        }
        if rec.len() != dim {
            return Err(Error::Parse(format!(
                "row {}: expected {dim} columns, got {}",
                row + 2,
                rec.len()
            )));
        }
        let point = rec
            .iter()
            .map(|c| {
                c.parse::<u32>()
                    .map(Fq)
                    .map_err(|e| Error::Parse(format!("row {}: `{c}`: {e}", row + 2)))
            })
            .collect::<Result<Vec<_>>>()?;
        points.push(point);
    }
    PointSet::new(field, dim, points)
}

pub fn write_point_set_csv<W: Write>(set: &PointSet, writer: W) -> Result<()> {
    let mut wtr = csv::WriterBuilder::new()
        .flexible(true)
        .from_writer(writer);
    wtr.write_record([format!("dim={}", set.dim()), format!("q={}", set.q())])
        .map_err(csv_err)?;
    for x in set.iter() {
        wtr.write_record(x.iter().map(|c| c.0.to_string()))
            .map_err(csv_err)?;
    }
    wtr.flush().map_err(|e| Error::Parse(e.to_string()))
}

pub fn load_point_set(field: &Field, path: &Path) -> Result<PointSet> {
    let file = File::open(path).map_err(|e| io_err(path, e))?;
    read_point_set_csv(field, file).map_err(|e| match e {
        Error::Parse(m) => io_err(path, m),
        other => other,
    })
}

pub fn save_point_set(set: &PointSet, path: &Path) -> Result<()> {
    let file = File::create(path).map_err(|e| io_err(path, e))?;
    write_point_set_csv(set, file).map_err(|e| match e {
        Error::Parse(m) => io_err(path, m),
        other => other,
    })
}

/// JSON mirror of the CSV format.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PointSetJson {
    pub dim: usize,
    pub q: u32,
    pub points: Vec<Vec<u32>>,
}

impl PointSetJson {
    pub fn from_set(set: &PointSet) -> Self {
        PointSetJson {
            dim: set.dim(),
            q: set.q(),
            points: set
                .iter()
                .map(|x| x.iter().map(|c| c.0).collect())
                .collect(),
        }
    }

    pub fn to_set(&self, field: &Field) -> Result<PointSet> {
        if self.q != field.q() {
            return Err(Error::Parse(format!(
                "point set is over q = {}, field has q = {}",
                self.q,
                field.q()
            )));
        }
        PointSet::new(
            field,
            self.dim,
            self.points
                .iter()
                .map(|p| p.iter().map(|&c| Fq(c)).collect::<Vec<_>>()),
        )
    }
}

pub fn field_descriptor_json(field: &Field) -> String {
    serde_json::to_string(&field.descriptor()).expect("descriptor serializes")
}

pub fn field_from_json(text: &str) -> Result<Field> {
    let desc: FieldDescriptor =
        serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
    Field::from_descriptor(&desc)
}

#[derive(Debug, Clone, PartialEq)]
pub struct RestrictionRow {
    pub t: Fq,
    pub r_t: f64,
    pub bound: f64,
    pub slack: f64,
}

/// `R_t(B)` against `2 q^{-d-1} |B|` for every `t`.
pub fn restriction_report(field: &Field, b: &PointSet) -> Result<Vec<RestrictionRow>> {
    let profile = FourierTable::compute(field, b)?.restriction_profile(field);
    let bound = profile.coordinatable_bound();
    Ok(profile
        .by_radius()
        .iter()
        .enumerate()
        .map(|(t, &r_t)| RestrictionRow {
            t: Fq(t as u32),
            r_t,
            bound,
            slack: bound - r_t,
        })
        .collect())
}

pub fn write_restriction_report<W: Write>(rows: &[RestrictionRow], writer: W) -> Result<()> {
    let mut wtr = csv::Writer::from_writer(writer);
    wtr.write_record(["t", "R_t", "bound_2q^{-d-1}|B|", "slack"])
        .map_err(csv_err)?;
    for r in rows {
        wtr.write_record([
            r.t.0.to_string(),
            fmt_sig12(r.r_t),
            fmt_sig12(r.bound),
            fmt_sig12(r.slack),
        ])
        .map_err(csv_err)?;
    }
    wtr.flush().map_err(|e| Error::Parse(e.to_string()))
}

/// `(t, nu(t))` for every `t`.
pub fn nu_report(field: &Field, a: &PointSet, b: &PointSet) -> Result<Vec<(Fq, u64)>> {
    let nu = nu_profile(field, a, b)?;
    Ok(nu
        .counts()
        .iter()
        .enumerate()
        .map(|(t, &c)| (Fq(t as u32), c))
        .collect())
}

pub fn write_nu_report<W: Write>(rows: &[(Fq, u64)], writer: W) -> Result<()> {
    let mut wtr = csv::Writer::from_writer(writer);
    wtr.write_record(["t", "nu(t)"]).map_err(csv_err)?;
    for (t, c) in rows {
        wtr.write_record([t.0.to_string(), c.to_string()])
            .map_err(csv_err)?;
    }
    wtr.flush().map_err(|e| Error::Parse(e.to_string()))
}
