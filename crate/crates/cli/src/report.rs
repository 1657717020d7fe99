//! Reports in the two output formats.

use ncpn_core::pn::checks::Verdict;
use serde::Serialize;
use serde_json::{Map, Value as Json};

#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum)]
pub enum Format {
    Text,
    Json,
}

#[derive(Clone, Debug, Serialize)]
pub struct Report {
    pub schema: u32,
    pub check: String,
    pub params: Map<String, Json>,
    /// `"pass"`, `"fail"`, or null for commands that only compute.
    pub verdict: Option<&'static str>,
    pub residue: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub cases: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub result: Option<Json>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub warnings: Vec<String>,
    pub elapsed_ms: Option<u64>,
    /// Lines for the text format only.
    #[serde(skip)]
    pub lines: Vec<String>,
}

impl Report {
    pub fn new(check: &str) -> Self {
        Report {
            schema: 1,
            check: check.to_string(),
            params: Map::new(),
            verdict: None,
            residue: None,
            cases: None,
            result: None,
            warnings: Vec::new(),
            elapsed_ms: None,
            lines: Vec::new(),
        }
    }

    pub fn param(mut self, k: &str, v: impl Into<Json>) -> Self {
        self.params.insert(k.to_string(), v.into());
        self
    }

    pub fn with_verdict(mut self, v: &Verdict) -> Self {
        self.verdict = Some(if v.pass { "pass" } else { "fail" });
        self.residue = v.residue.clone();
        self.cases = Some(v.cases);
        self
    }

    pub fn line(mut self, s: impl Into<String>) -> Self {
        self.lines.push(s.into());
        self
    }

    pub fn passed(&self) -> bool {
        self.verdict != Some("fail")
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        let params: Vec<String> = self
            .params
            .iter()
            .map(|(k, v)| match v {
                Json::String(s) => format!("{k}={s}"),
                v => format!("{k}={v}"),
            })
            .collect();
        let mut head = self.check.clone();
        if !params.is_empty() {
            head.push_str(&format!(" [{}]", params.join(" ")));
        }
        if let Some(v) = self.verdict {
            head.push_str(&format!(": {}", v.to_uppercase()));
            if let Some(c) = self.cases {
                head.push_str(&format!(" ({c} cases)"));
            }
        }
        if let Some(ms) = self.elapsed_ms {
            head.push_str(&format!(" in {ms} ms"));
        }
        out.push_str(&head);
        out.push('\n');
        for l in &self.lines {
            out.push_str("  ");
            out.push_str(l);
            out.push('\n');
        }
        for w in &self.warnings {
            out.push_str(&format!("  warning: {w}\n"));
        }
        if let Some(r) = &self.residue {
            out.push_str(&format!("  residue: {r}\n"));
        }
        out
    }

    pub fn to_json(&self) -> Json {
        serde_json::to_value(self).expect("report serializes")
    }
}

/// Print reports; a script in JSON mode becomes one document.
pub fn emit(reports: &[Report], format: Format, script: Option<&str>) {
    match format {
        Format::Text => {
            for r in reports {
                print!("{}", r.to_text());
            }
            if script.is_some() {
                let checks: Vec<&Report> = reports.iter().filter(|r| r.verdict.is_some() && r.check != "report").collect();
                let failed = checks.iter().filter(|r| !r.passed()).count();
                let checks = checks.len();
                println!("{} of {checks} checks passed", checks - failed);
            }
        }
        Format::Json => {
            let doc = match script {
                None if reports.len() == 1 => reports[0].to_json(),
                _ => {
                    let all_pass = reports.iter().all(|r| r.passed());
                    serde_json::json!({
                        "schema": 1,
                        "script": script,
                        "verdict": if all_pass { "pass" } else { "fail" },
                        "reports": reports.iter().map(|r| r.to_json()).collect::<Vec<_>>(),
                    })
                }
            };
            println!("{}", serde_json::to_string_pretty(&doc).expect("json"));
        }
    }
}
