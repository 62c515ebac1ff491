use std::fmt::Write as _;

use mfx_core::catalog::sha256_hex;
use mfx_core::selftest::Check;

/// Everything a verb produces. Checks are printed sorted by name so the
/// report does not depend on evaluation order.
#[derive(Debug, Default)]
pub struct RunReport {
    pub command: String,
    pub inputs: Vec<(String, String)>,
    pub body: Vec<String>,
    pub checks: Vec<Check>,
}

impl RunReport {
    pub fn new(command: String) -> Self {
        RunReport { command, ..Default::default() }
    }

    pub fn input(&mut self, name: &str, bytes: &[u8]) {
        self.inputs.push((name.to_string(), sha256_hex(bytes)));
    }

    pub fn line(&mut self, s: impl Into<String>) {
        self.body.push(s.into());
    }

    pub fn check(&mut self, name: impl Into<String>, pass: bool, detail: impl Into<String>) {
        self.checks.push(Check { name: name.into(), pass, detail: detail.into() });
    }

    pub fn pass(&self) -> bool {
        self.checks.iter().all(|c| c.pass)
    }

    fn sorted_checks(&self) -> Vec<&Check> {
        let mut v: Vec<&Check> = self.checks.iter().collect();
        v.sort_by(|a, b| a.name.cmp(&b.name));
        v
    }

    /// Plain text report.
    pub fn render(&self) -> String {
        let mut s = String::new();
        writeln!(s, "mfx {}", env!("CARGO_PKG_VERSION")).unwrap();
        writeln!(s, "command: {}", self.command).unwrap();
        for (name, digest) in &self.inputs {
            writeln!(s, "input: {name} sha256:{digest}").unwrap();
        }
        for l in &self.body {
            writeln!(s, "{l}").unwrap();
        }
        for c in self.sorted_checks() {
            writeln!(s, "{c}").unwrap();
        }
        let failed = self.checks.iter().filter(|c| !c.pass).count();
        let status = if failed == 0 { "PASS" } else { "FAIL" };
        writeln!(s, "result: {status} ({} checks, {failed} failed)", self.checks.len()).unwrap();
        s
    }

    /// Only the `CHECK` lines.
    pub fn render_machine(&self) -> String {
        self.sorted_checks().iter().map(|c| format!("{c}\n")).collect()
    }
}
