use serde::Serialize;

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
}

impl Status {
    pub fn from_bool(pass: bool) -> Self {
        if pass {
            Status::Pass
        } else {
            Status::Fail
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct Entry {
    pub suite: String,
    pub case: String,
    pub status: Status,
    /// A residual, or a count for exact checks.
    pub value: f64,
    pub tolerance: Option<f64>,
}

impl Entry {
    pub fn new(suite: &str, case: impl Into<String>, pass: bool, value: f64, tolerance: Option<f64>) -> Self {
        Entry { suite: suite.into(), case: case.into(), status: Status::from_bool(pass), value, tolerance }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct Report<T: Serialize = Entry> {
    pub tool_version: &'static str,
    pub schema_version: u32,
    pub seed: Option<u64>,
    pub entries: Vec<T>,
}

impl<T: Serialize> Report<T> {
    pub fn new(seed: Option<u64>, entries: Vec<T>) -> Self {
        Report { tool_version: env!("CARGO_PKG_VERSION"), schema_version: SCHEMA_VERSION, seed, entries }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes") + "\n"
    }
}

impl Report<Entry> {
    pub fn all_pass(&self) -> bool {
        self.entries.iter().all(|e| e.status == Status::Pass)
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for e in &self.entries {
            let status = match e.status {
                Status::Pass => "PASS",
                Status::Fail => "FAIL",
            };
            let tol = e.tolerance.map_or(String::new(), |t| format!(" (tol {t:e})"));
            out.push_str(&format!("{status} {}/{}: {}{tol}\n", e.suite, e.case, crate::sig(e.value)));
        }
        out
    }
}
