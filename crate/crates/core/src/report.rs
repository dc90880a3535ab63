//! Machine-readable check results.

use serde::Serialize;
use serde_json::Value;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "UPPERCASE")]
pub enum Status {
    Pass,
    Fail,
}

impl Status {
    pub fn from_bool(ok: bool) -> Status {
        if ok {
            Status::Pass
        } else {
            Status::Fail
        }
    }

    pub fn is_pass(self) -> bool {
        self == Status::Pass
    }
}

/// Outcome of one named certificate.
#[derive(Clone, Debug, Serialize)]
pub struct CertificateResult {
    pub name: String,
    pub status: Status,
    /// Largest violation seen; 0 for exact checks that hold.
    pub max_violation: f64,
    pub samples: usize,
    /// Sign convention the certificate is stated in (dual `>= 0` or polar `<= 0`).
    #[serde(skip_serializing_if = "Option::is_none")]
    pub convention: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
}

impl CertificateResult {
    pub fn new(name: impl Into<String>, ok: bool, max_violation: f64, samples: usize) -> CertificateResult {
        CertificateResult {
            name: name.into(),
            status: Status::from_bool(ok),
            max_violation,
            samples,
            convention: None,
            note: None,
        }
    }

    pub fn exact(name: impl Into<String>, ok: bool, samples: usize) -> CertificateResult {
        CertificateResult::new(name, ok, if ok { 0.0 } else { f64::INFINITY }, samples)
    }

    pub fn convention(mut self, c: impl Into<String>) -> Self {
        self.convention = Some(c.into());
        self
    }

    pub fn note(mut self, n: impl Into<String>) -> Self {
        self.note = Some(n.into());
        self
    }

    pub fn passed(&self) -> bool {
        self.status.is_pass()
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct CheckReport {
    pub example: String,
    pub status: Status,
    pub verdict: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub tolerance: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub samples: Option<usize>,
    pub certificates: Vec<CertificateResult>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub witnesses: Vec<Value>,
}

impl CheckReport {
    pub fn new(example: impl Into<String>) -> CheckReport {
        CheckReport {
            example: example.into(),
            status: Status::Pass,
            verdict: String::new(),
            tolerance: None,
            samples: None,
            certificates: Vec::new(),
            witnesses: Vec::new(),
        }
    }

    pub fn push(&mut self, c: CertificateResult) {
        self.certificates.push(c);
    }

    pub fn witness(&mut self, w: Value) {
        self.witnesses.push(w);
    }

    /// Set the overall status from the certificates and pick the verdict.
    pub fn finish(&mut self, on_pass: &str, on_fail: &str) {
        let ok = self.certificates.iter().all(CertificateResult::passed);
        self.status = Status::from_bool(ok);
        self.verdict = if ok { on_pass } else { on_fail }.to_string();
    }

    pub fn passed(&self) -> bool {
        self.status.is_pass()
    }

    pub fn failed_certificates(&self) -> impl Iterator<Item = &CertificateResult> {
        self.certificates.iter().filter(|c| !c.passed())
    }

    pub fn to_json(&self) -> Value {
        serde_json::to_value(self).expect("report serializes")
    }
}
