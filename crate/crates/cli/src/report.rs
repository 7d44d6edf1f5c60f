//! Verification reports and their JSON/CSV emission.

use std::fmt;
use std::fs::{self, File};
use std::io::Write;
use std::path::{Path, PathBuf};

use fqdist_core::geometry::PointSet;
use fqdist_core::io::{fmt_sig12, PointSetJson};
use serde::Serialize;

use crate::config::{Params, RunConfig};
use crate::error::{HarnessError, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, clap::ValueEnum)]
pub enum TheoremId {
    #[serde(rename = "mainthm")]
    #[value(name = "mainthm")]
    MainThm,
    #[serde(rename = "mainthmC")]
    #[value(name = "mainthmC")]
    MainThmC,
    #[serde(rename = "maincor")]
    #[value(name = "maincor")]
    MainCor,
    #[serde(rename = "ProK")]
    #[value(name = "ProK")]
    ProK,
    #[serde(rename = "ProRes")]
    #[value(name = "ProRes")]
    ProRes,
    #[serde(rename = "ThmK")]
    #[value(name = "ThmK")]
    ThmK,
    #[serde(rename = "Shparlinski")]
    #[value(name = "Shparlinski")]
    Shparlinski,
    #[serde(rename = "DistFormula")]
    #[value(name = "DistFormula")]
    DistFormula,
    #[serde(rename = "SphereSize")]
    #[value(name = "SphereSize")]
    SphereSize,
    #[serde(rename = "defVFT")]
    #[value(name = "defVFT")]
    DefVft,
    #[serde(rename = "lemCon")]
    #[value(name = "lemCon")]
    LemCon,
    #[serde(rename = "P1.1-odd")]
    #[value(name = "P1.1-odd")]
    P11Odd,
    #[serde(rename = "P1.1-even")]
    #[value(name = "P1.1-even")]
    P11Even,
    #[serde(rename = "Corm")]
    #[value(name = "Corm")]
    Corm,
    #[serde(rename = "ComSqu")]
    #[value(name = "ComSqu")]
    ComSqu,
}

impl TheoremId {
    pub fn as_str(self) -> &'static str {
        match self {
            TheoremId::MainThm => "mainthm",
            TheoremId::MainThmC => "mainthmC",
            TheoremId::MainCor => "maincor",
            TheoremId::ProK => "ProK",
            TheoremId::ProRes => "ProRes",
            TheoremId::ThmK => "ThmK",
            TheoremId::Shparlinski => "Shparlinski",
            TheoremId::DistFormula => "DistFormula",
            TheoremId::SphereSize => "SphereSize",
            TheoremId::DefVft => "defVFT",
            TheoremId::LemCon => "lemCon",
            TheoremId::P11Odd => "P1.1-odd",
            TheoremId::P11Even => "P1.1-even",
            TheoremId::Corm => "Corm",
            TheoremId::ComSqu => "ComSqu",
        }
    }
}

impl fmt::Display for TheoremId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Status {
    #[serde(rename = "PASS")]
    Pass,
    #[serde(rename = "FAIL")]
    Fail,
    #[serde(rename = "SKIP")]
    Skip,
}

impl fmt::Display for Status {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Status::Pass => "PASS",
            Status::Fail => "FAIL",
            Status::Skip => "SKIP",
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Relation {
    #[serde(rename = ">=")]
    Ge,
    #[serde(rename = "<=")]
    Le,
    #[serde(rename = "==")]
    Eq,
}

/// One inequality or identity evaluated on an instance.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Check {
    pub name: String,
    pub lhs: f64,
    pub relation: Relation,
    pub rhs: f64,
    pub holds: bool,
}

/// Slack allowed on inequalities whose right side is a float.
const INEQ_TOL: f64 = 1e-9;

impl Check {
    pub fn ge(name: &str, lhs: f64, rhs: f64) -> Self {
        Check {
            name: name.into(),
            lhs,
            relation: Relation::Ge,
            rhs,
            holds: lhs >= rhs - INEQ_TOL,
        }
    }

    pub fn le(name: &str, lhs: f64, rhs: f64) -> Self {
        Check {
            name: name.into(),
            lhs,
            relation: Relation::Le,
            rhs,
            holds: lhs <= rhs + INEQ_TOL,
        }
    }

    pub fn close(name: &str, lhs: f64, rhs: f64, tol: f64) -> Self {
        Check {
            name: name.into(),
            lhs,
            relation: Relation::Eq,
            rhs,
            holds: (lhs - rhs).abs() <= tol,
        }
    }

    pub fn exact(name: &str, lhs: u64, rhs: u64) -> Self {
        Check {
            name: name.into(),
            lhs: lhs as f64,
            relation: Relation::Eq,
            rhs: rhs as f64,
            holds: lhs == rhs,
        }
    }

    pub fn truth(name: &str, holds: bool) -> Self {
        let v = if holds { 1.0 } else { 0.0 };
        Check {
            name: name.into(),
            lhs: v,
            relation: Relation::Eq,
            rhs: 1.0,
            holds,
        }
    }
}

/// An evaluated instance.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Instance {
    /// Position in the sweep; also the RNG stream it was drawn from.
    pub index: u64,
    pub label: String,
    pub q: u32,
    pub d: usize,
    pub size_a: Option<usize>,
    pub size_b: Option<usize>,
    pub delta_size: Option<usize>,
    pub hypothesis_met: bool,
    pub checks: Vec<Check>,
}

impl Instance {
    pub fn new(index: u64, label: impl Into<String>, q: u32, d: usize) -> Self {
        Instance {
            index,
            label: label.into(),
            q,
            d,
            size_a: None,
            size_b: None,
            delta_size: None,
            hypothesis_met: true,
            checks: Vec::new(),
        }
    }

    pub fn sizes(mut self, a: usize, b: usize) -> Self {
        self.size_a = Some(a);
        self.size_b = Some(b);
        self
    }

    pub fn holds(&self) -> bool {
        self.checks.iter().all(|c| c.holds)
    }
}

/// A violated check, with enough data to rebuild the instance.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Failure {
    pub index: u64,
    pub label: String,
    pub check: Check,
    pub set_a: Option<PointSetJson>,
    pub set_b: Option<PointSetJson>,
}

/// An instance together with the sets it was built from, kept only long
/// enough to dump them on failure.
pub struct Outcome {
    pub instance: Instance,
    pub set_a: Option<PointSet>,
    pub set_b: Option<PointSet>,
}

impl Outcome {
    pub fn bare(instance: Instance) -> Self {
        Outcome {
            instance,
            set_a: None,
            set_b: None,
        }
    }

    /// Keeps copies of the sets only when some check failed.
    pub fn with_sets(instance: Instance, a: &PointSet, b: Option<&PointSet>) -> Self {
        if instance.holds() {
            return Outcome::bare(instance);
        }
        Outcome {
            instance,
            set_a: Some(a.clone()),
            set_b: b.cloned(),
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct VerificationReport {
    pub theorem_id: TheoremId,
    pub status: Status,
    pub params: Params,
    pub seed: u64,
    /// How the statement was made concrete, and anything skipped.
    pub notes: Vec<String>,
    pub instances_tested: usize,
    pub hypothesis_met: usize,
    pub failures: Vec<Failure>,
    pub instances: Vec<Instance>,
    /// Wall-clock time; excluded from the JSON so reports are reproducible.
    #[serde(skip)]
    pub runtime_ms: u128,
}

impl VerificationReport {
    pub fn new(theorem_id: TheoremId, cfg: &RunConfig) -> Self {
        VerificationReport {
            theorem_id,
            status: Status::Skip,
            params: cfg.params(),
            seed: cfg.seed,
            notes: Vec::new(),
            instances_tested: 0,
            hypothesis_met: 0,
            failures: Vec::new(),
            instances: Vec::new(),
            runtime_ms: 0,
        }
    }

    pub fn note(&mut self, text: impl Into<String>) {
        self.notes.push(text.into());
    }

    pub fn record(&mut self, outcome: Outcome) {
        let Outcome {
            instance,
            set_a,
            set_b,
        } = outcome;
        for check in instance.checks.iter().filter(|c| !c.holds) {
            self.failures.push(Failure {
                index: instance.index,
                label: instance.label.clone(),
                check: check.clone(),
                set_a: set_a.as_ref().map(PointSetJson::from_set),
                set_b: set_b.as_ref().map(PointSetJson::from_set),
            });
        }
        self.instances_tested += 1;
        if instance.hypothesis_met {
            self.hypothesis_met += 1;
        }
        self.instances.push(instance);
    }

    pub fn extend(&mut self, outcomes: impl IntoIterator<Item = Outcome>) {
        for o in outcomes {
            self.record(o);
        }
    }

    /// Sets the status from the recorded instances: any failure is FAIL, no
    /// checked instance at all is SKIP.
    pub fn finish(mut self, started: std::time::Instant) -> Self {
        let checked = self.instances.iter().any(|i| !i.checks.is_empty());
        self.status = if !self.failures.is_empty() {
            Status::Fail
        } else if checked {
            Status::Pass
        } else {
            Status::Skip
        };
        self.runtime_ms = started.elapsed().as_millis();
        self
    }

    pub fn is_pass(&self) -> bool {
        self.status == Status::Pass
    }

    /// Number of evaluated checks with the given name.
    pub fn checks_named(&self, name: &str) -> usize {
        self.instances
            .iter()
            .flat_map(|i| &i.checks)
            .filter(|c| c.name == name)
            .count()
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("report serializes");
        s.push('\n');
        s
    }

    /// Writes `<id>.json`, `<id>_instances.csv` and `<id>_scatter.csv` into
    /// `dir`, returning the paths written.
    pub fn emit(&self, dir: &Path) -> Result<Vec<PathBuf>> {
        fs::create_dir_all(dir).map_err(|source| HarnessError::Io {
            path: dir.to_path_buf(),
            source,
        })?;
        let id = self.theorem_id.as_str();
        let json = dir.join(format!("{id}.json"));
        write_file(&json, self.to_json().as_bytes())?;
        let instances = dir.join(format!("{id}_instances.csv"));
        self.write_instances(&instances)?;
        let scatter = dir.join(format!("{id}_scatter.csv"));
        self.write_scatter(&scatter)?;
        Ok(vec![json, instances, scatter])
    }

    fn write_instances(&self, path: &Path) -> Result<()> {
        let mut w = csv_writer(path)?;
        let header = [
            "index", "label", "q", "d", "size_a", "size_b", "delta_size",
            "hypothesis_met", "check", "lhs", "relation", "rhs", "holds",
        ];
        w.write_record(header).map_err(|e| csv_err(path, e))?;
        let opt = |v: Option<usize>| v.map(|x| x.to_string()).unwrap_or_default();
        for inst in &self.instances {
            for c in &inst.checks {
                let rel = match c.relation {
                    Relation::Ge => ">=",
                    Relation::Le => "<=",
                    Relation::Eq => "==",
                };
                w.write_record([
                    inst.index.to_string(),
                    inst.label.clone(),
                    inst.q.to_string(),
                    inst.d.to_string(),
                    opt(inst.size_a),
                    opt(inst.size_b),
                    opt(inst.delta_size),
                    inst.hypothesis_met.to_string(),
                    c.name.clone(),
                    fmt_sig12(c.lhs),
                    rel.to_string(),
                    fmt_sig12(c.rhs),
                    c.holds.to_string(),
                ])
                .map_err(|e| csv_err(path, e))?;
            }
        }
        w.flush().map_err(|e| HarnessError::Io {
            path: path.to_path_buf(),
            source: e,
        })
    }

    /// `(|A||B| / q^d, |Delta| / q)` for instances with a distance set.
    fn write_scatter(&self, path: &Path) -> Result<()> {
        let mut w = csv_writer(path)?;
        w.write_record(["index", "label", "ab_over_qd", "delta_over_q"])
            .map_err(|e| csv_err(path, e))?;
        for inst in &self.instances {
            if let (Some(a), Some(b), Some(n)) = (inst.size_a, inst.size_b, inst.delta_size) {
                let q = inst.q as f64;
                let x = a as f64 * b as f64 / q.powi(inst.d as i32);
                w.write_record([
                    inst.index.to_string(),
                    inst.label.clone(),
                    fmt_sig12(x),
                    fmt_sig12(n as f64 / q),
                ])
                .map_err(|e| csv_err(path, e))?;
            }
        }
        w.flush().map_err(|e| HarnessError::Io {
            path: path.to_path_buf(),
            source: e,
        })
    }
}

fn write_file(path: &Path, bytes: &[u8]) -> Result<()> {
    let mut f = File::create(path).map_err(|source| HarnessError::Io {
        path: path.to_path_buf(),
        source,
    })?;
    f.write_all(bytes).map_err(|source| HarnessError::Io {
        path: path.to_path_buf(),
        source,
    })
}

fn csv_writer(path: &Path) -> Result<csv::Writer<File>> {
    csv::Writer::from_path(path).map_err(|e| csv_err(path, e))
}

fn csv_err(path: &Path, e: csv::Error) -> HarnessError {
    HarnessError::Write {
        path: path.to_path_buf(),
        message: e.to_string(),
    }
}
