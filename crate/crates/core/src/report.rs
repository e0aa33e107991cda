//! Verification of an input pair and rendering of the results.

use std::collections::BTreeMap;
use std::time::{Duration, Instant};

use rayon::prelude::*;
use serde_json::{json, Map, Value};

use crate::error::{Error, Rejection, Result};
use crate::io::{field_json, leonard_json, parameters_json, scalars_json, PairInput, SCHEMA};
use crate::residual::{CheckId, Residual};
use crate::scalar::Field;
use crate::suite::{run_suite, CheckOutcome, SuiteOptions, SystemReport};
use crate::system::verify_pair;

#[derive(Clone, Debug)]
pub struct VerificationReport {
    /// Free-form description of where the pair came from.
    pub input: String,
    pub field: Field,
    pub dim: usize,
    pub rejection: Option<Rejection>,
    pub systems: Vec<SystemReport>,
    pub verify_time: Duration,
}

/// Runs the axiom checks on `pair` and the check suite on every system found.
/// A failed axiom is part of the report; other errors are returned.
pub fn verify_input(input: &str, pair: &PairInput, opts: &SuiteOptions) -> Result<VerificationReport> {
    let start = Instant::now();
    let found = verify_pair(&pair.a, &pair.astar);
    let verify_time = start.elapsed();
    let (rejection, systems) = match found {
        Ok(systems) => {
            let reports = systems.into_par_iter().map(|s| run_suite(s, opts)).collect::<Result<Vec<_>>>()?;
            (None, reports)
        }
        Err(Error::Rejected(r)) => (Some(r), Vec::new()),
        Err(other) => return Err(other),
    };
    Ok(VerificationReport { input: input.to_string(), field: pair.field, dim: pair.a.rows(), rejection, systems, verify_time })
}

fn millis(d: Duration) -> Value {
    json!((d.as_secs_f64() * 1e6).round() / 1e3)
}

fn identity_summaries(residuals: &[Residual]) -> Value {
    let mut groups: BTreeMap<&str, Vec<&Residual>> = BTreeMap::new();
    for r in residuals {
        groups.entry(&r.identity).or_default().push(r);
    }
    let list = groups
        .into_iter()
        .map(|(name, rs)| {
            let width = rs.iter().map(|r| r.index.len()).max().unwrap_or(0);
            let range: Vec<[usize; 2]> = (0..width)
                .map(|k| {
                    let vals = rs.iter().filter_map(|r| r.index.get(k).copied());
                    let lo = vals.clone().min().unwrap_or(0);
                    [lo, vals.max().unwrap_or(0)]
                })
                .collect();
            json!({
                "identity": name,
                "count": rs.len(),
                "pass": rs.iter().all(|r| r.is_zero),
                "index-range": range,
            })
        })
        .collect();
    Value::Array(list)
}

fn master_grid(d: usize, residuals: &[Residual]) -> Value {
    let mut grid = vec![vec![true; d + 1]; d + 1];
    for r in residuals {
        if let [i, j] = r.index[..] {
            grid[i][j] &= r.is_zero;
        }
    }
    json!(grid)
}

fn outcome_json(o: &CheckOutcome, d: usize) -> Value {
    let mut obj = Map::new();
    obj.insert("applicable".into(), json!(o.applicable));
    obj.insert("pass".into(), json!(o.passed()));
    if let Some(e) = &o.error {
        obj.insert("error".into(), json!(e));
    }
    obj.insert("identities".into(), identity_summaries(&o.residuals));
    let failures: Vec<&Residual> = o.residuals.iter().filter(|r| !r.is_zero).collect();
    obj.insert("failures".into(), json!(failures));
    if o.check == CheckId::Master {
        obj.insert("grid".into(), master_grid(d, &o.residuals));
    }
    if !o.ranks.is_empty() {
        obj.insert("ranks".into(), json!(o.ranks));
    }
    Value::Object(obj)
}

fn system_report_json(k: usize, r: &SystemReport) -> Value {
    let sys = &r.system;
    let checks: Map<String, Value> =
        r.outcomes.iter().map(|o| (o.check.to_string(), outcome_json(o, sys.d()))).collect();
    json!({
        "index": k,
        "d": sys.d(),
        "theta": scalars_json(sys.theta()),
        "thetastar": scalars_json(sys.thetastar()),
        "shape": sys.shape(),
        "parameters": parameters_json(&r.params),
        "leonard": r.leonard.as_ref().map(leonard_json),
        "pass": r.passed(),
        "checks": checks,
    })
}

impl VerificationReport {
    /// True iff at least one system was found and every check passed on
    /// every system.
    pub fn passed(&self) -> bool {
        self.rejection.is_none() && !self.systems.is_empty() && self.systems.iter().all(SystemReport::passed)
    }

    /// The full report. Keys are sorted; timings appear only on request.
    pub fn to_json(&self, timings: bool) -> Value {
        let mut v = json!({
            "schema": SCHEMA,
            "input": self.input,
            "field": field_json(self.field),
            "dimension": self.dim,
            "pass": self.passed(),
            "rejection": self.rejection.as_ref().map(|r| json!({"reason": r.reason(), "detail": r.to_string()})),
            "system-count": self.systems.len(),
            "systems": self.systems.iter().enumerate().map(|(k, r)| system_report_json(k, r)).collect::<Vec<_>>(),
        });
        if timings {
            let per_system: Vec<Value> = self
                .systems
                .iter()
                .map(|r| {
                    let checks: Map<String, Value> =
                        r.outcomes.iter().map(|o| (o.check.to_string(), millis(o.elapsed))).collect();
                    json!({"setup-ms": millis(r.setup), "checks-ms": checks})
                })
                .collect();
            v["timings"] = json!({"verify-ms": millis(self.verify_time), "systems": per_system});
        }
        v
    }

    /// Rank tables, relation parameters and Leonard scalars as flat rows:
    /// `(system, kind, name, i, j, value, expected)`.
    fn table_rows(&self) -> Vec<[String; 7]> {
        let mut rows = Vec::new();
        for (k, r) in self.systems.iter().enumerate() {
            for e in r.ranks() {
                rows.push([
                    k.to_string(),
                    "rank".into(),
                    e.map.clone(),
                    e.i.to_string(),
                    e.j.to_string(),
                    e.rank.to_string(),
                    e.expected.to_string(),
                ]);
            }
            let p = &r.params;
            for (name, s) in [("beta", &p.beta), ("gamma", &p.gamma), ("gammastar", &p.gammastar), ("rho", &p.rho), ("rhostar", &p.rhostar)] {
                rows.push([k.to_string(), "parameter".into(), name.into(), String::new(), String::new(), s.to_string(), String::new()]);
            }
            if let Some(data) = &r.leonard {
                for (name, first, values) in data.sequences() {
                    for (off, s) in values.iter().enumerate() {
                        rows.push([
                            k.to_string(),
                            "scalar".into(),
                            name.into(),
                            (first + off).to_string(),
                            String::new(),
                            s.to_string(),
                            String::new(),
                        ]);
                    }
                }
            }
        }
        rows
    }

    const TABLE_COLUMNS: [&'static str; 7] = ["system", "kind", "name", "i", "j", "value", "expected"];

    pub fn tables_json(&self) -> Value {
        let rows: Vec<Value> = self
            .table_rows()
            .into_iter()
            .map(|row| {
                let obj: Map<String, Value> = Self::TABLE_COLUMNS
                    .iter()
                    .zip(row)
                    .map(|(c, v)| (c.to_string(), if v.is_empty() { Value::Null } else { Value::String(v) }))
                    .collect();
                Value::Object(obj)
            })
            .collect();
        json!({"schema": SCHEMA, "input": self.input, "rows": rows})
    }

    pub fn tables_csv(&self) -> String {
        let mut out = Self::TABLE_COLUMNS.join(",");
        out.push('\n');
        for row in self.table_rows() {
            out.push_str(&row.join(","));
            out.push('\n');
        }
        out
    }
}
