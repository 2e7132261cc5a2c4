use std::fmt::Write as _;

use serde::Serialize;
use serde_json::{Map, Value};

use crate::config::RunConfig;

pub const SCHEMA: &str = "nilcoh/1";

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    Ok,
}

impl Status {
    pub fn from_check(passed: bool) -> Self {
        if passed {
            Status::Pass
        } else {
            Status::Fail
        }
    }

    pub fn and(self, other: Status) -> Status {
        match (self, other) {
            (Status::Fail, _) | (_, Status::Fail) => Status::Fail,
            (Status::Pass, _) | (_, Status::Pass) => Status::Pass,
            _ => Status::Ok,
        }
    }
}

/// One TSV section.
#[derive(Debug, Clone)]
pub struct Table {
    pub section: String,
    pub operation: &'static str,
    pub header: Vec<&'static str>,
    pub rows: Vec<Vec<String>>,
}

impl Table {
    pub fn new(section: impl Into<String>, operation: &'static str, header: Vec<&'static str>) -> Self {
        Table { section: section.into(), operation, header, rows: Vec::new() }
    }

    pub fn push(&mut self, row: Vec<String>) {
        debug_assert_eq!(row.len(), self.header.len());
        self.rows.push(row);
    }
}

#[derive(Debug, Clone)]
pub struct Report {
    pub config: RunConfig,
    pub status: Status,
    pub provenance: Vec<&'static str>,
    pub body: Map<String, Value>,
    pub tables: Vec<Table>,
}

impl Report {
    pub fn new(config: RunConfig) -> Self {
        Report { config, status: Status::Ok, provenance: Vec::new(), body: Map::new(), tables: Vec::new() }
    }

    /// Records a module operation that produced part of the report.
    pub fn uses(&mut self, op: &'static str) {
        if !self.provenance.contains(&op) {
            self.provenance.push(op);
        }
    }

    pub fn set(&mut self, key: &str, value: impl Serialize) {
        let v = serde_json::to_value(value).expect("report values serialize");
        self.body.insert(key.to_string(), v);
    }

    pub fn check(&mut self, passed: bool) {
        self.status = self.status.and(Status::from_check(passed));
    }

    pub fn to_json(&self) -> String {
        let mut top = Map::new();
        top.insert("schema".into(), SCHEMA.into());
        top.insert("command".into(), self.config.command.as_str().into());
        top.insert("config".into(), serde_json::to_value(&self.config).expect("config serializes"));
        top.insert("status".into(), serde_json::to_value(self.status).unwrap());
        top.insert("provenance".into(), serde_json::to_value(&self.provenance).unwrap());
        for (k, v) in &self.body {
            top.insert(k.clone(), v.clone());
        }
        let mut s = serde_json::to_string_pretty(&Value::Object(top)).expect("report serializes");
        s.push('\n');
        s
    }

    pub fn to_tsv(&self) -> String {
        let mut out = String::new();
        let status = serde_json::to_value(self.status).unwrap();
        writeln!(out, "# schema: {SCHEMA}").unwrap();
        writeln!(out, "# command: {}", self.config.command.as_str()).unwrap();
        writeln!(out, "# status: {}", status.as_str().unwrap()).unwrap();
        for t in &self.tables {
            writeln!(out).unwrap();
            writeln!(out, "# {}: {}", t.section, t.operation).unwrap();
            writeln!(out, "{}", t.header.join("\t")).unwrap();
            for row in &t.rows {
                writeln!(out, "{}", row.join("\t")).unwrap();
            }
        }
        out
    }
}

/// Compact cell text: `[1,0,-1]`.
pub fn cell(v: impl Serialize) -> String {
    serde_json::to_string(&v).expect("cell serializes")
}
