//! Command dispatch shared by the command line and scripts.

use ncpn_core::builtins;
use ncpn_core::pn::checks::{self, Verdict};
use ncpn_core::pn::family::Family;
use ncpn_core::polyvec::{self, grade, schouten};
use ncpn_core::repr::descent::{self, DescentOptions};
use ncpn_core::repr::point::{RepPoint, RepPointJson};
use ncpn_core::sample::structural_suite;
use ncpn_core::syntax::{print_lin, to_json_terms};
use ncpn_core::{forms, BivectorQ, Error, PolyQ, Result};
use serde_json::json;

use crate::report::Report;
use crate::session::{Session, Value};

#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum)]
pub enum CheckKind {
    Poisson,
    Torsion,
    Compat,
    Lenard,
    Ksm,
    Jacobi,
    Descent,
    BracketTable,
    Structure,
}

impl CheckKind {
    pub fn name(self) -> &'static str {
        match self {
            CheckKind::Poisson => "poisson",
            CheckKind::Torsion => "torsion",
            CheckKind::Compat => "compat",
            CheckKind::Lenard => "lenard",
            CheckKind::Ksm => "ksm",
            CheckKind::Jacobi => "jacobi",
            CheckKind::Descent => "descent",
            CheckKind::BracketTable => "bracket-table",
            CheckKind::Structure => "structure",
        }
    }

    pub fn from_name(s: &str) -> Option<Self> {
        use clap::ValueEnum;
        CheckKind::from_str(s, false).ok()
    }
}

#[derive(Clone, Debug)]
pub enum Command {
    Parse(String),
    Normalize(String),
    Schouten(String, String),
    Check(CheckKind, Vec<String>),
    Hierarchy(String, String),
    RepEval { expr: String, point: Option<String> },
}

fn arity(kind: &str, args: &[String], lo: usize, hi: usize) -> Result<()> {
    if args.len() < lo || args.len() > hi {
        let want = if lo == hi { lo.to_string() } else if hi == usize::MAX { format!("at least {lo}") } else { format!("{lo} to {hi}") };
        return Err(Error::Kind {
            expected: format!("{want} argument(s) for `{kind}`"),
            found: args.len().to_string(),
        });
    }
    Ok(())
}

fn terms_json(p: &PolyQ, s: &Session) -> Result<serde_json::Value> {
    Ok(serde_json::to_value(to_json_terms(p, s.quiver()?)).expect("terms"))
}

pub fn run(cmd: &Command, s: &mut Session) -> Result<Report> {
    match cmd {
        Command::Parse(e) => {
            let v = s.resolve(e)?;
            let q = s.quiver()?;
            let text = v.to_text(q);
            let mut r = Report::new("parse").param("expr", e.as_str()).param("kind", v.kind()).line(text.clone());
            r.result = Some(match &v {
                Value::Path(p) | Value::PolyVector(p) | Value::Form(p) => json!({ "text": text, "terms": terms_json(p, s)? }),
                _ => json!({ "text": text }),
            });
            r.warnings = std::mem::take(&mut s.warnings);
            Ok(r)
        }
        Command::Normalize(e) => {
            let v = s.resolve(e)?;
            let n = match &v {
                Value::Path(p) => forms::dr0(p),
                Value::PolyVector(p) => polyvec::normalize(p),
                Value::Form(p) => forms::dr_normalize(p),
                Value::Bivector(b) => b.necklace().clone(),
                Value::Endo(_) => return Err(Error::Kind { expected: "a path, polyvector or form".into(), found: "an endomorphism".into() }),
            };
            let text = print_lin(&n, s.quiver()?);
            let mut r = Report::new("normalize").param("expr", e.as_str()).param("kind", v.kind()).line(text.clone());
            r.result = Some(json!({ "text": text, "terms": terms_json(&n, s)? }));
            r.warnings = std::mem::take(&mut s.warnings);
            Ok(r)
        }
        Command::Schouten(x, y) => {
            let a = s.polyvector(x)?;
            let b = s.polyvector(y)?;
            let q = s.quiver()?;
            let out = schouten(q, &a, &b);
            let text = print_lin(&out, q);
            let mut r = Report::new("schouten").param("left", x.as_str()).param("right", y.as_str()).line(text.clone());
            r.result = Some(json!({ "text": text, "grade": grade(&out), "terms": terms_json(&out, s)? }));
            Ok(r)
        }
        Command::Hierarchy(p, n) => hierarchy(s, p, n),
        Command::Check(kind, args) => check(s, *kind, args),
        Command::RepEval { expr, point } => rep_eval(s, expr, point.as_deref()),
    }
}

fn hierarchy(s: &mut Session, p: &str, n: &str) -> Result<Report> {
    let pi = s.bivector(p)?;
    let nn = s.endo(n)?;
    let (depth, bound) = (s.config.depth, s.config.bound);
    let q = s.quiver()?.clone();
    let fam = Family::new(&q, bound);
    let members = checks::hierarchy(&q, &pi, &nn, depth, &fam)?;
    let mut v = checks::pairwise_schouten(&q, &members);
    let mut r = Report::new("hierarchy").param("pi", p).param("N", n).param("depth", depth).param("bound", bound);
    for (m, b) in members.iter().enumerate() {
        r = r.line(format!("π{m} = {}", b.to_string_in(&q)));
    }
    if let Some(prefix) = s.config.expect.clone() {
        r = r.param("expect", prefix.as_str());
        for (m, b) in members.iter().enumerate() {
            let name = format!("{prefix}{m}");
            let want = s.bivector(&name)?;
            let ok = want.necklace() == b.necklace();
            v = v.and(Verdict::from_first(1, (!ok).then(|| format!("π{m} differs from {name}: {}", b.to_string_in(&q)))));
        }
    }
    r.result = Some(json!(members.iter().map(|b| b.to_string_in(&q)).collect::<Vec<_>>()));
    Ok(r.with_verdict(&v))
}

/// Split arguments into bivectors and functions for the point checks.
fn split_args(s: &mut Session, args: &[String]) -> Result<(Vec<(String, BivectorQ)>, Vec<PolyQ>)> {
    let mut pis = Vec::new();
    let mut fs = Vec::new();
    for a in args {
        match s.resolve(a)? {
            Value::Path(p) => fs.push(forms::dr0(&p)),
            _ => pis.push((a.clone(), s.bivector(a)?)),
        }
    }
    if fs.is_empty() {
        let name = s.quiver()?.name().to_string();
        let (q, sample) = builtins::hamiltonian_sample(&name).map_err(|_| Error::Unknown(format!("Hamiltonian sample for quiver `{name}`; pass functions explicitly")))?;
        if &q != s.quiver()? {
            return Err(Error::MixedQuiver);
        }
        fs = sample;
    }
    Ok((pis, fs))
}

fn check(s: &mut Session, kind: CheckKind, args: &[String]) -> Result<Report> {
    let name = kind.name();
    let bound = s.config.bound;
    let mut r = Report::new(&format!("check {name}"));
    let v = match kind {
        CheckKind::Poisson => {
            arity(name, args, 1, usize::MAX)?;
            let pvs = args.iter().map(|a| s.polyvector(a)).collect::<Result<Vec<_>>>()?;
            let q = s.quiver()?;
            r = r.param("args", args.join(" "));
            let mut first = None;
            let mut cases = 0;
            for i in 0..pvs.len() {
                for j in i..pvs.len() {
                    cases += 1;
                    let b = schouten(q, &pvs[i], &pvs[j]);
                    if first.is_none() && !b.is_zero() {
                        first = Some(format!("[{}, {}] = {}", args[i], args[j], print_lin(&b, q)));
                    }
                }
            }
            Verdict::from_first(cases, first)
        }
        CheckKind::Torsion => {
            arity(name, args, 1, 1)?;
            let n = s.endo(&args[0])?;
            r = r.param("N", args[0].as_str()).param("bound", bound);
            let q = s.quiver()?;
            checks::torsion(q, &n, &Family::new(q, bound))
        }
        CheckKind::Compat => {
            arity(name, args, 2, 2)?;
            r = r.param("left", args[0].as_str()).param("right", args[1].as_str());
            let pi = s.bivector(&args[0])?;
            match s.resolve(&args[1])? {
                Value::Endo(n) => {
                    r = r.param("bound", bound);
                    let q = s.quiver()?;
                    let fam = Family::new(q, bound);
                    checks::algebraic_compat(q, &pi, &n, &fam).and(checks::concomitant(q, &pi, &n, &fam))
                }
                _ => {
                    let rho = s.bivector(&args[1])?;
                    checks::pairwise_schouten(s.quiver()?, &[pi, rho])
                }
            }
        }
        CheckKind::Ksm => {
            arity(name, args, 2, 2)?;
            let pi = s.bivector(&args[0])?;
            let n = s.endo(&args[1])?;
            r = r.param("pi", args[0].as_str()).param("N", args[1].as_str()).param("bound", bound);
            let q = s.quiver()?;
            checks::ksm(q, &pi, &n, &Family::new(q, bound))
        }
        CheckKind::Lenard => {
            arity(name, args, 2, usize::MAX)?;
            let lo = s.bivector(&args[0])?;
            let hi = s.bivector(&args[1])?;
            let fs: Vec<PolyQ> = if args.len() > 2 {
                args[2..].iter().map(|a| s.function(a)).collect::<Result<_>>()?
            } else {
                let chain = s.config.chain.clone().unwrap_or_else(|| "I".into());
                r = r.param("chain", chain.as_str()).param("links", s.config.links);
                let q = s.quiver()?;
                builtins::chain(q, q.name(), &chain, s.config.links)?
            };
            r = r.param("lo", args[0].as_str()).param("hi", args[1].as_str());
            let q = s.quiver()?;
            for (i, d) in checks::lenard(q, &lo, &hi, &fs).iter().enumerate() {
                let lhs = hi.map(q, &forms::dr_d(&fs[i]));
                let mark = if d.is_zero() { "=" } else { "≠" };
                r = r.line(format!("link {i}: {} {mark} π̃_lo(d f_{})", lhs.to_string_in(q), i + 1));
            }
            checks::lenard_verdict(q, &lo, &hi, &fs)
        }
        CheckKind::Jacobi | CheckKind::Descent => {
            arity(name, args, 1, usize::MAX)?;
            let (pis, fs) = split_args(s, args)?;
            let opts = DescentOptions {
                dims: s.dims()?,
                points: s.config.points,
                seed: s.config.seed,
                ..Default::default()
            };
            r = r
                .param("args", args.join(" "))
                .param("dims", opts.dims.iter().map(|d| d.iter().map(|n| n.to_string()).collect::<Vec<_>>().join(",")).collect::<Vec<_>>())
                .param("points", opts.points)
                .param("seed", opts.seed);
            let q = s.quiver()?.clone();
            if kind == CheckKind::Jacobi {
                descent::jacobi(&q, &pis, &fs, &opts)?
            } else {
                let rep = descent::descent(&q, &pis, &fs, &opts)?;
                for (n, v) in [("jacobi", &rep.jacobi), ("pairing", &rep.pairing), ("exact", &rep.exact), ("invariance", &rep.invariance), ("induced schouten", &rep.schouten)] {
                    r = r.line(format!("{n}: {} ({} cases)", if v.pass { "pass" } else { "fail" }, v.cases));
                }
                let mut v = rep.verdict();
                let gh0 = builtins::gh_pi0(&q);
                if q.name() == "gh" && pis.first().is_some_and(|(_, p)| p.necklace() == gh0.necklace()) {
                    let h = descent::h_algebra(&q, &pis[0].1, &opts, s.config.depth)?;
                    r = r.line(format!(
                        "H-algebra (k+l ≤ {}): {} of {} equal, {} sign-flipped",
                        s.config.depth, h.equal, h.total, h.flipped
                    ));
                    r = r.line(format!("H observables: {} ({} cases)", if h.observables.pass { "pass" } else { "fail" }, h.observables.cases));
                    v = v.and(h.verdict());
                }
                v
            }
        }
        CheckKind::BracketTable => {
            arity(name, args, 0, 0)?;
            r = r.param("max_k", s.config.links).param("max_m", s.config.depth);
            s.load_quiver("cm")?;
            builtins::bracket_table(s.config.links, s.config.depth)
        }
        CheckKind::Structure => {
            arity(name, args, 0, 0)?;
            r = r.param("cases", s.config.cases).param("seed", s.config.seed);
            let qs = match s.quiver() {
                Ok(q) => vec![q.clone()],
                Err(_) => vec![builtins::cm_quiver(), builtins::gh_quiver()],
            };
            let mut v = Verdict::default();
            for q in &qs {
                let w = structural_suite(q, s.config.seed, s.config.cases);
                r = r.line(format!("{}: {} ({} cases)", q.name(), if w.pass { "pass" } else { "fail" }, w.cases));
                v = v.and(w);
            }
            v
        }
    };
    Ok(r.with_verdict(&v))
}

fn rep_eval(s: &mut Session, expr: &str, point: Option<&str>) -> Result<Report> {
    let v = s.resolve(expr)?;
    let q = s.quiver()?.clone();
    let x = match point {
        Some(path) => {
            let text = std::fs::read_to_string(path).map_err(|e| Error::Json(format!("{path}: {e}")))?;
            let j: RepPointJson = serde_json::from_str(&text).map_err(|e| Error::Json(format!("{path}: {e}")))?;
            RepPoint::from_json(&q, &j)?
        }
        None => {
            let dims = s.dims()?.remove(0);
            RepPoint::random_points(&q, &dims, s.config.seed, 1)?.remove(0)
        }
    };
    let mut r = Report::new("rep-eval").param("expr", expr);
    if point.is_none() {
        r = r.param("seed", s.config.seed);
    }
    let value = match v {
        Value::Path(p) => {
            let closed = p.keys().all(|w| w.is_closed());
            if closed {
                let t = x.trace_fn(&p);
                r = r.line(format!("trace = {t}"));
                json!({ "trace": t.to_string() })
            } else {
                let m = x.eval(&p);
                r = r.line(format!("matrix = {m}"));
                json!({ "matrix": m.to_rows().iter().map(|row| row.iter().map(|e| e.to_string()).collect::<Vec<_>>()).collect::<Vec<_>>() })
            }
        }
        other => {
            return Err(Error::Kind {
                expected: "a path or function".into(),
                found: format!("a {}", other.kind()),
            })
        }
    };
    r.result = Some(json!({ "value": value, "point": serde_json::to_value(x.to_json(&q)).expect("point") }));
    Ok(r)
}
