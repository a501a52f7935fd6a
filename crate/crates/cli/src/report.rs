use std::fmt::Write as _;

use hilbseries::universal::LedgerEntry;
use hilbseries::{Rat, Series};
use serde::{Deserialize, Serialize};

/// A reduced fraction as decimal strings.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Frac {
    pub num: String,
    pub den: String,
}

impl From<&Rat> for Frac {
    fn from(q: &Rat) -> Self {
        Frac { num: q.numer().to_string(), den: q.denom().to_string() }
    }
}

impl std::fmt::Display for Frac {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        if self.den == "1" {
            write!(f, "{}", self.num)
        } else {
            write!(f, "{}/{}", self.num, self.den)
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct NamedSeries {
    pub name: String,
    pub coeffs: Vec<Frac>,
}

impl NamedSeries {
    pub fn new(name: impl Into<String>, s: &Series) -> Self {
        NamedSeries { name: name.into(), coeffs: s.coeffs().iter().map(Frac::from).collect() }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Entry {
    pub identity: String,
    pub order: usize,
    pub lhs: Frac,
    pub rhs: Frac,
    pub pass: bool,
}

impl From<&LedgerEntry> for Entry {
    fn from(e: &LedgerEntry) -> Self {
        Entry { identity: e.identity.clone(), order: e.order, lhs: (&e.lhs).into(), rhs: (&e.rhs).into(), pass: e.pass }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    /// A check of the implementation itself failed.
    Fail,
    /// A conjectured identity failed on computed data.
    Falsified,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Note {
    pub key: String,
    pub value: String,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Report {
    pub command: String,
    pub config: serde_json::Value,
    /// Datapoints, sources and versions the results depend on.
    pub provenance: Vec<Note>,
    pub series: Vec<NamedSeries>,
    pub ledger: Vec<Entry>,
    pub status: Status,
}

impl Report {
    pub fn new(command: &str, config: serde_json::Value) -> Self {
        Report {
            command: command.to_string(),
            config,
            provenance: vec![Note { key: "hilbseries".into(), value: hilbseries::VERSION.into() }],
            series: Vec::new(),
            ledger: Vec::new(),
            status: Status::Pass,
        }
    }

    pub fn note(&mut self, key: impl Into<String>, value: impl Into<String>) {
        self.provenance.push(Note { key: key.into(), value: value.into() });
    }

    pub fn add_series(&mut self, name: impl Into<String>, s: &Series) {
        self.series.push(NamedSeries::new(name, s));
    }

    /// Add ledger entries; failures set the status to `on_failure`.
    pub fn add_ledger(&mut self, entries: &[LedgerEntry], on_failure: Status) {
        for e in entries {
            if !e.pass && self.status != Status::Falsified {
                self.status = on_failure;
            }
            self.ledger.push(e.into());
        }
    }

    pub fn exit_code(&self) -> i32 {
        match self.status {
            Status::Pass => 0,
            Status::Fail | Status::Falsified => 1,
        }
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("report serializes");
        s.push('\n');
        s
    }

    pub fn to_table(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "# {}", self.command);
        for n in &self.provenance {
            let _ = writeln!(out, "# {}: {}", n.key, n.value);
        }
        let width = self.series.iter().map(|s| s.name.len()).max().unwrap_or(0);
        for s in &self.series {
            let cs: Vec<String> = s.coeffs.iter().map(Frac::to_string).collect();
            let _ = writeln!(out, "{:width$}  {}", s.name, cs.join(", "));
        }
        for e in &self.ledger {
            let mark = if e.pass { "PASS" } else { "FAIL" };
            let _ = writeln!(out, "{mark} {} [order {}]: {} vs {}", e.identity, e.order, e.lhs, e.rhs);
        }
        let status = match self.status {
            Status::Pass => "pass",
            Status::Fail => "fail",
            Status::Falsified => "conjecture falsified",
        };
        let failures = self.ledger.iter().filter(|e| !e.pass).count();
        let _ = writeln!(out, "status: {status} ({} checks, {failures} failed)", self.ledger.len());
        out
    }
}
