use std::time::Instant;

use octof4_core::check::Check;
use octof4_core::susy::Branch;
use serde::Serialize;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
}

#[derive(Debug, Clone, Serialize)]
pub struct ReportCheck {
    pub group: String,
    pub name: String,
    pub status: Status,
    pub checked: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub counterexample: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub elapsed_ms: Option<f64>,
}

/// Machine-readable verification report.
#[derive(Debug, Clone, Serialize)]
pub struct Report {
    pub tool: String,
    pub version: String,
    pub command: String,
    pub branch: Branch,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub level: Option<String>,
    /// `(a, b, c, d, e)` at the critical coupling, as rational strings.
    pub parameters: Vec<String>,
    pub checks: Vec<ReportCheck>,
    /// Recorded facts that are not pass/fail assertions.
    pub notes: Vec<String>,
    pub status: Status,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub data: Option<serde_json::Value>,
}

impl Report {
    pub fn new(command: &str, branch: Branch, level: Option<&str>) -> Self {
        Self {
            tool: "octof4".into(),
            version: env!("CARGO_PKG_VERSION").into(),
            command: command.into(),
            branch,
            level: level.map(str::to_string),
            parameters: Vec::new(),
            checks: Vec::new(),
            notes: Vec::new(),
            status: Status::Pass,
            data: None,
        }
    }

    pub fn push(&mut self, group: &str, check: Check, elapsed_ms: Option<f64>) {
        if !check.passed {
            self.status = Status::Fail;
        }
        self.checks.push(ReportCheck {
            group: group.into(),
            name: check.name,
            status: if check.passed { Status::Pass } else { Status::Fail },
            checked: check.checked,
            counterexample: check.counterexample,
            elapsed_ms,
        });
    }

    pub fn passed(&self) -> bool {
        self.status == Status::Pass
    }

    pub fn to_table(&self) -> String {
        let width = self.checks.iter().map(|c| c.group.len() + c.name.len() + 3).max().unwrap_or(0);
        let mut out = format!("{} {} {} (branch {})\n", self.tool, self.version, self.command, self.branch.name());
        if !self.parameters.is_empty() {
            out.push_str(&format!("(a, b, c, d, e) = ({})\n", self.parameters.join(", ")));
        }
        for c in &self.checks {
            let label = format!("[{}] {}", c.group, c.name);
            let status = match c.status {
                Status::Pass => "PASS",
                Status::Fail => "FAIL",
            };
            out.push_str(&format!("{label:<width$}  {status}  {:>6}", c.checked));
            if let Some(ms) = c.elapsed_ms {
                out.push_str(&format!("  {ms:>9.1} ms"));
            }
            if let Some(why) = &c.counterexample {
                out.push_str(&format!("  {why}"));
            }
            out.push('\n');
        }
        for n in &self.notes {
            out.push_str(&format!("note: {n}\n"));
        }
        out.push_str(&format!(
            "overall: {}\n",
            if self.passed() { "PASS" } else { "FAIL" }
        ));
        out
    }
}

/// Runs a stage and records each resulting check; an error becomes one failed check.
pub fn stage<F>(report: &mut Report, group: &str, timings: bool, f: F)
where
    F: FnOnce() -> octof4_core::Result<Vec<Check>>,
{
    let start = Instant::now();
    let outcome = f();
    let elapsed = timings.then(|| start.elapsed().as_secs_f64() * 1e3);
    match outcome {
        Ok(checks) => {
            for c in checks {
                report.push(group, c, elapsed);
            }
        }
        Err(e) => report.push(group, Check::fail("stage completed", 0, e.to_string()), elapsed),
    }
}
