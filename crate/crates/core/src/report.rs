//! Check records and suite reports with JSON, CSV and text renderings.

use serde::Serialize;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Status {
    Pass,
    Fail,
    SkippedAmbiguous,
}

impl Status {
    pub fn from_bool(ok: bool) -> Self {
        if ok {
            Status::Pass
        } else {
            Status::Fail
        }
    }

    pub fn name(&self) -> &'static str {
        match self {
            Status::Pass => "pass",
            Status::Fail => "fail",
            Status::SkippedAmbiguous => "skipped-ambiguous",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Check {
    pub name: String,
    pub status: Status,
    pub witness: String,
    /// Always 0 so that reports are reproducible byte for byte.
    pub ms: u64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Report {
    pub suite: String,
    pub checks: Vec<Check>,
}

impl Report {
    pub fn new(suite: &str) -> Self {
        Report { suite: suite.to_string(), checks: Vec::new() }
    }

    pub fn record(&mut self, name: impl Into<String>, status: Status, witness: impl Into<String>) {
        self.checks.push(Check { name: name.into(), status, witness: witness.into(), ms: 0 });
    }

    pub fn check(&mut self, name: impl Into<String>, ok: bool, witness: impl Into<String>) {
        self.record(name, Status::from_bool(ok), witness);
    }

    pub fn skip(&mut self, name: impl Into<String>, witness: impl Into<String>) {
        self.record(name, Status::SkippedAmbiguous, witness);
    }

    /// Records an error from a computation as a failed check.
    pub fn check_result<T>(
        &mut self,
        name: impl Into<String>,
        result: crate::Result<T>,
        judge: impl FnOnce(T) -> (bool, String),
    ) {
        match result {
            Ok(v) => {
                let (ok, w) = judge(v);
                self.check(name, ok, w);
            }
            Err(e) => self.check(name, false, format!("error: {e}")),
        }
    }

    /// Appends the checks of `other` with names prefixed by its suite.
    pub fn absorb(&mut self, other: Report) {
        for mut c in other.checks {
            c.name = format!("{}/{}", other.suite, c.name);
            self.checks.push(c);
        }
    }

    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.status != Status::Fail)
    }

    pub fn failures(&self) -> Vec<&Check> {
        self.checks.iter().filter(|c| c.status == Status::Fail).collect()
    }

    pub fn count(&self, status: Status) -> usize {
        self.checks.iter().filter(|c| c.status == status).count()
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("reports serialize")
    }

    pub fn to_csv(&self) -> String {
        let mut w = csv_writer();
        w.write_record(["suite", "name", "status", "witness", "ms"]).unwrap();
        for c in &self.checks {
            w.write_record([self.suite.as_str(), &c.name, c.status.name(), &c.witness, &c.ms.to_string()]).unwrap();
        }
        String::from_utf8(w.into_inner().unwrap()).unwrap()
    }

    pub fn to_text(&self) -> String {
        let mut s = format!("suite {}\n", self.suite);
        for c in &self.checks {
            s.push_str(&format!("[{}] {}: {}\n", c.status.name(), c.name, c.witness));
        }
        s.push_str(&format!(
            "{} passed, {} failed, {} skipped-ambiguous\n",
            self.count(Status::Pass),
            self.count(Status::Fail),
            self.count(Status::SkippedAmbiguous)
        ));
        s
    }
}

pub(crate) fn csv_writer() -> csv::Writer<Vec<u8>> {
    csv::WriterBuilder::new().terminator(csv::Terminator::Any(b'\n')).from_writer(Vec::new())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn json_shape() {
        let mut r = Report::new("demo");
        r.check("x", true, "w");
        r.skip("y", "ambiguous");
        assert_eq!(
            r.to_json(),
            r#"{"suite":"demo","checks":[{"name":"x","status":"pass","witness":"w","ms":0},{"name":"y","status":"skipped-ambiguous","witness":"ambiguous","ms":0}]}"#
        );
        assert!(r.passed());
        r.check("z", false, "");
        assert!(!r.passed());
    }

    #[test]
    fn csv_quotes_fields() {
        let mut r = Report::new("demo");
        r.check("a, b", true, "x");
        assert_eq!(r.to_csv(), "suite,name,status,witness,ms\ndemo,\"a, b\",pass,x,0\n");
    }
}
