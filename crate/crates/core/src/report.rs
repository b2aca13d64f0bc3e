use serde::Serialize;
use serde_json::{Map, Value};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
}

/// Outcome of one verification. `witness` carries the first
/// counterexample on failure; `data` carries computed values worth
/// reporting either way.
#[derive(Clone, Debug, Serialize)]
pub struct CheckReport {
    pub check: String,
    pub params: Map<String, Value>,
    pub status: Status,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<Value>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub data: Option<Value>,
}

impl CheckReport {
    pub fn new(check: &str) -> Self {
        Self {
            check: check.to_string(),
            params: Map::new(),
            status: Status::Pass,
            witness: None,
            data: None,
        }
    }

    pub fn param(mut self, key: &str, value: impl Into<Value>) -> Self {
        self.params.insert(key.to_string(), value.into());
        self
    }

    /// Marks the report failed, keeping the first witness only.
    pub fn fail(&mut self, witness: Value) {
        if self.status == Status::Pass {
            self.status = Status::Fail;
            self.witness = Some(witness);
        }
    }

    pub fn failed(mut self, witness: Value) -> Self {
        self.fail(witness);
        self
    }

    pub fn with_data(mut self, data: Value) -> Self {
        self.data = Some(data);
        self
    }

    pub fn passed(&self) -> bool {
        self.status == Status::Pass
    }

    /// One line: `PASS check {params}` or `FAIL check {params}: witness`.
    pub fn summary(&self) -> String {
        let params = Value::Object(self.params.clone());
        match (&self.status, &self.witness) {
            (Status::Pass, _) => format!("PASS {} {}", self.check, params),
            (Status::Fail, Some(w)) => format!("FAIL {} {}: {}", self.check, params, w),
            (Status::Fail, None) => format!("FAIL {} {}", self.check, params),
        }
    }
}

/// Folds several reports into one named check; the first failure wins.
pub fn combine(check: &str, parts: Vec<CheckReport>) -> CheckReport {
    let mut out = CheckReport::new(check);
    for p in &parts {
        if !p.passed() {
            out.fail(serde_json::json!({
                "check": p.check,
                "params": p.params,
                "witness": p.witness,
            }));
        }
    }
    out
}
