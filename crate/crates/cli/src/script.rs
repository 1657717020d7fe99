//! Batch scripts: one statement per line, `#` comments, quiver blocks may
//! span lines.
//!
//! ```text
//! use cm
//! let p = [@a^, @a] + [a @a^, @a]
//! set bound 2
//! check poisson p
//! hierarchy cm.pi0 cm.N
//! report
//! ```
//!
//! Arguments are separated by whitespace, or by `;` when any is present, so
//! that expressions with spaces can be passed: `schouten a @a; a^ @a^`.
//! `parse`, `normalize` and `rep-eval` take the whole line as one expression.

use ncpn_core::{Error, Result};

use crate::commands::{self, CheckKind, Command};
use crate::report::Report;
use crate::session::{parse_dims, Session, Value};

#[derive(Clone, Debug)]
pub enum Stmt {
    Quiver(String),
    Let(String, String),
    Set(String, String),
    Run(Command),
    Report,
}

#[derive(Clone, Debug)]
pub struct Script {
    pub stmts: Vec<(usize, Stmt)>,
}

fn at(line: usize, msg: impl std::fmt::Display) -> Error {
    Error::Syntax { line, col: 1, msg: msg.to_string() }
}

fn split_args(rest: &str) -> Vec<String> {
    if rest.contains(';') {
        rest.split(';').map(|s| s.trim().to_string()).filter(|s| !s.is_empty()).collect()
    } else {
        rest.split_whitespace().map(str::to_string).collect()
    }
}

fn one(line: usize, verb: &str, args: Vec<String>) -> Result<String> {
    match <[String; 1]>::try_from(args) {
        Ok([a]) => Ok(a),
        Err(v) => Err(at(line, format!("`{verb}` takes one argument, got {}", v.len()))),
    }
}

fn two(line: usize, verb: &str, args: Vec<String>) -> Result<(String, String)> {
    match <[String; 2]>::try_from(args) {
        Ok([a, b]) => Ok((a, b)),
        Err(v) => Err(at(line, format!("`{verb}` takes two arguments, got {}", v.len()))),
    }
}

fn parse_stmt(line: usize, text: &str) -> Result<Stmt> {
    let (verb, rest) = text.split_once(char::is_whitespace).unwrap_or((text, ""));
    let rest = rest.trim();
    Ok(match verb {
        "quiver" => Stmt::Quiver(text.to_string()),
        "use" => Stmt::Quiver(one(line, verb, split_args(rest))?),
        "let" => {
            let (name, value) = rest.split_once('=').ok_or_else(|| at(line, "expected `let NAME = VALUE`"))?;
            let name = name.trim();
            if name.is_empty() || !name.chars().all(|c| c.is_ascii_alphanumeric() || c == '_' || c == '.') {
                return Err(at(line, format!("bad name `{name}`")));
            }
            Stmt::Let(name.to_string(), value.trim().to_string())
        }
        "set" => {
            let (k, v) = rest.split_once(char::is_whitespace).ok_or_else(|| at(line, "expected `set KEY VALUE`"))?;
            Stmt::Set(k.to_string(), v.trim().to_string())
        }
        "parse" => Stmt::Run(Command::Parse(rest.to_string())),
        "normalize" => Stmt::Run(Command::Normalize(rest.to_string())),
        "schouten" => {
            let (a, b) = two(line, verb, split_args(rest))?;
            Stmt::Run(Command::Schouten(a, b))
        }
        "hierarchy" => {
            let (a, b) = two(line, verb, split_args(rest))?;
            Stmt::Run(Command::Hierarchy(a, b))
        }
        "rep-eval" => {
            let mut args = if rest.contains(';') { split_args(rest) } else { vec![rest.to_string()] };
            if args.len() > 2 || args[0].is_empty() {
                return Err(at(line, "`rep-eval` takes an expression and an optional point file"));
            }
            let point = if args.len() == 2 { args.pop() } else { None };
            Stmt::Run(Command::RepEval { expr: args.remove(0), point })
        }
        "check" => {
            let (kind, rest) = rest.split_once(char::is_whitespace).unwrap_or((rest, ""));
            let k = CheckKind::from_name(kind).ok_or_else(|| at(line, format!("unknown check `{kind}`")))?;
            Stmt::Run(Command::Check(k, split_args(rest)))
        }
        "report" => Stmt::Report,
        _ => return Err(at(line, format!("unknown statement `{verb}`"))),
    })
}

impl Script {
    pub fn parse(src: &str) -> Result<Script> {
        let mut stmts = Vec::new();
        let mut block: Option<(usize, String)> = None;
        for (i, raw) in src.lines().enumerate() {
            let n = i + 1;
            let text = raw.split('#').next().unwrap_or("").trim();
            if let Some((start, buf)) = block.as_mut() {
                buf.push(' ');
                buf.push_str(text);
                if buf.matches('{').count() == buf.matches('}').count() {
                    stmts.push((*start, Stmt::Quiver(std::mem::take(buf))));
                    block = None;
                }
                continue;
            }
            if text.is_empty() {
                continue;
            }
            if text.starts_with("quiver") && text.matches('{').count() != text.matches('}').count() {
                block = Some((n, text.to_string()));
                continue;
            }
            stmts.push((n, parse_stmt(n, text)?));
        }
        if let Some((start, _)) = block {
            return Err(at(start, "unterminated quiver block"));
        }
        Ok(Script { stmts })
    }

    /// Resolve every name and expression without running checks, so that a
    /// script with a bad line never starts.
    pub fn validate(&self, config: &crate::session::Config) -> Result<()> {
        let mut s = Session::default();
        s.config = config.clone();
        for (n, st) in &self.stmts {
            let wrap = |e: Error| at(*n, e);
            match st {
                Stmt::Quiver(t) => s.load_quiver(t).map_err(wrap)?,
                Stmt::Let(name, v) => {
                    let val = s.resolve(v).map_err(wrap)?;
                    s.define(name, val).map_err(wrap)?;
                }
                Stmt::Set(k, v) => set(&mut s, k, v).map_err(wrap)?,
                Stmt::Run(c) => {
                    for a in args_of(c) {
                        s.resolve(a).map_err(wrap)?;
                    }
                }
                Stmt::Report => {}
            }
        }
        Ok(())
    }

    pub fn run(&self, s: &mut Session, timing: bool) -> Result<Vec<Report>> {
        let mut out: Vec<Report> = Vec::new();
        for (n, st) in &self.stmts {
            let wrap = |e: Error| at(*n, e);
            match st {
                Stmt::Quiver(t) => s.load_quiver(t).map_err(wrap)?,
                Stmt::Let(name, v) => {
                    let val: Value = s.resolve(v).map_err(wrap)?;
                    s.define(name, val).map_err(wrap)?;
                }
                Stmt::Set(k, v) => set(s, k, v).map_err(wrap)?,
                Stmt::Run(c) => {
                    let t0 = std::time::Instant::now();
                    let mut r = commands::run(c, s).map_err(wrap)?;
                    if timing {
                        r.elapsed_ms = Some(t0.elapsed().as_millis() as u64);
                    }
                    out.push(r.param("line", *n));
                }
                Stmt::Report => {
                    let checks: Vec<&Report> = out.iter().filter(|r| r.verdict.is_some() && r.check != "report").collect();
                    let failed = checks.iter().filter(|r| !r.passed()).count();
                    let mut r = Report::new("report").param("line", *n);
                    r.verdict = Some(if failed == 0 { "pass" } else { "fail" });
                    r.cases = Some(checks.len());
                    r.residue = checks.iter().find(|r| !r.passed()).map(|r| format!("{} failed", r.check));
                    out.push(r);
                }
            }
        }
        Ok(out)
    }
}

fn args_of(c: &Command) -> Vec<&String> {
    match c {
        Command::Parse(e) | Command::Normalize(e) => vec![e],
        Command::Schouten(a, b) | Command::Hierarchy(a, b) => vec![a, b],
        Command::Check(_, args) => args.iter().collect(),
        Command::RepEval { expr, .. } => vec![expr],
    }
}

fn number<T: std::str::FromStr>(k: &str, v: &str) -> Result<T> {
    v.parse().map_err(|_| Error::Kind {
        expected: format!("a number for `{k}`"),
        found: format!("`{v}`"),
    })
}

pub fn set(s: &mut Session, k: &str, v: &str) -> Result<()> {
    let c = &mut s.config;
    match k {
        "bound" => c.bound = number(k, v)?,
        "depth" => c.depth = number(k, v)?,
        "seed" => c.seed = number(k, v)?,
        "links" => c.links = number(k, v)?,
        "points" => c.points = number(k, v)?,
        "cases" => c.cases = number(k, v)?,
        "chain" => c.chain = Some(v.to_string()),
        "expect" => c.expect = Some(v.to_string()),
        "dims" => {
            c.dims = v
                .split_whitespace()
                .map(|d| parse_dims(d).map_err(|m| Error::Kind { expected: "dimensions like `2,1`".into(), found: m }))
                .collect::<Result<_>>()?
        }
        _ => return Err(Error::Unknown(format!("setting `{k}`"))),
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn statements_and_blocks() {
        let s = Script::parse("# header\nquiver q {\n vertex v;\n arrow a: v -> v; }\nlet p = [@a^, @a]  # trailing\nschouten p; a a^\nrep-eval a a^\nreport\n").unwrap();
        let lines: Vec<usize> = s.stmts.iter().map(|(n, _)| *n).collect();
        assert_eq!(lines, [2, 5, 6, 7, 8]);
        assert!(matches!(&s.stmts[2].1, Stmt::Run(Command::Schouten(a, b)) if a == "p" && b == "a a^"));
        assert!(matches!(&s.stmts[3].1, Stmt::Run(Command::RepEval { expr, point: None }) if expr == "a a^"));
        s.validate(&Default::default()).unwrap();
    }

    #[test]
    fn errors_name_the_line() {
        for (src, line) in [("use cm\nfrobnicate\n", 2), ("check nothing x", 1), ("quiver q {\n vertex v;\n", 1), ("let = a", 1)] {
            match Script::parse(src) {
                Err(Error::Syntax { line: l, .. }) => assert_eq!(l, line, "{src}"),
                r => panic!("{src}: {r:?}"),
            }
        }
        let s = Script::parse("use cm\nlet x = a +\n").unwrap();
        assert!(matches!(s.validate(&Default::default()), Err(Error::Syntax { line: 2, .. })));
    }
}
