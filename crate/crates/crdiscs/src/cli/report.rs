//! Deterministic run reports: an input echo, per-item records and audit
//! flags. Wall-clock time is kept out of the rendered report so that
//! repeated runs produce byte-identical output.

/// Report of one command run. `passed` reflects all invariant audits.
#[derive(Debug, Clone)]
pub struct RunReport {
    pub command: String,
    lines: Vec<String>,
    pub passed: bool,
    pub wall_ms: u128,
}

impl RunReport {
    pub fn new(command: &str) -> Self {
        Self {
            command: command.to_string(),
            lines: Vec::new(),
            passed: true,
            wall_ms: 0,
        }
    }

    pub fn line(&mut self, s: impl Into<String>) {
        self.lines.push(s.into());
    }

    pub fn audit(&mut self, name: &str, ok: bool) {
        self.lines
            .push(format!("audit {name}: {}", if ok { "pass" } else { "FAIL" }));
        self.passed &= ok;
    }

    /// Deterministic rendering (excludes wall-clock).
    pub fn render(&self) -> String {
        let mut out = format!("command: {}\n", self.command);
        for l in &self.lines {
            out.push_str(l);
            out.push('\n');
        }
        out.push_str(&format!(
            "result: {}\n",
            if self.passed { "pass" } else { "FAIL" }
        ));
        out
    }
}

/// Fixed-precision float formatting shared by all CSV and report output.
pub fn fmt_f(x: f64) -> String {
    format!("{x:.12e}")
}
