//! Named values over one loaded quiver.

use std::collections::BTreeMap;

use ncpn_core::builtins::{self, Builtin};
use ncpn_core::pn::bivector::Bivector;
use ncpn_core::pn::endo::RegularEndo;
use ncpn_core::syntax::{self, classify, ExprKind};
use ncpn_core::{forms, polyvec, BivectorQ, EndoQ, Error, FormQ, PolyQ, PolyVectorQ, Quiver, Result};

#[derive(Clone, Debug)]
pub enum Value {
    Path(PolyQ),
    PolyVector(PolyVectorQ),
    Form(FormQ),
    Bivector(BivectorQ),
    Endo(EndoQ),
}

impl Value {
    pub fn kind(&self) -> &'static str {
        match self {
            Value::Path(_) => "path",
            Value::PolyVector(_) => "polyvector",
            Value::Form(_) => "form",
            Value::Bivector(_) => "bivector",
            Value::Endo(_) => "endomorphism",
        }
    }

    pub fn to_text(&self, q: &Quiver) -> String {
        match self {
            Value::Path(p) | Value::PolyVector(p) | Value::Form(p) => syntax::print_lin(p, q),
            Value::Bivector(b) => b.to_string_in(q),
            Value::Endo(n) => n.to_string_in(q),
        }
    }
}

#[derive(Clone, Debug)]
pub struct Config {
    pub bound: usize,
    pub depth: usize,
    pub seed: u64,
    pub chain: Option<String>,
    pub links: usize,
    pub dims: Vec<Vec<usize>>,
    pub points: usize,
    pub cases: usize,
    pub expect: Option<String>,
}

impl Default for Config {
    fn default() -> Self {
        Config {
            bound: ncpn_core::pn::family::DEFAULT_BOUND,
            depth: 4,
            seed: 0,
            chain: None,
            links: 4,
            dims: Vec::new(),
            points: 20,
            cases: 500,
            expect: None,
        }
    }
}

#[derive(Default)]
pub struct Session {
    quiver: Option<Quiver>,
    values: BTreeMap<String, Value>,
    pub config: Config,
    /// Composability warnings from the last parse.
    pub warnings: Vec<String>,
}

fn kind_error(expected: &str, found: &Value) -> Error {
    Error::Kind {
        expected: expected.into(),
        found: format!("a {}", found.kind()),
    }
}

impl Session {
    pub fn quiver(&self) -> Result<&Quiver> {
        self.quiver.as_ref().ok_or_else(|| Error::Unknown("quiver (load one with --quiver or a built-in name)".into()))
    }

    /// Load a quiver; a second, different quiver is an error.
    pub fn set_quiver(&mut self, q: Quiver) -> Result<()> {
        let q = if q.is_doubled() { q } else { q.double() };
        match &self.quiver {
            Some(old) if *old != q => Err(Error::MixedQuiver),
            _ => {
                self.quiver = Some(q);
                Ok(())
            }
        }
    }

    /// `cm`, `gh`, or the text of a quiver declaration.
    pub fn load_quiver(&mut self, src: &str) -> Result<()> {
        let q = match src {
            "cm" => builtins::cm_quiver(),
            "gh" => builtins::gh_quiver(),
            _ => syntax::parse_quiver(src)?,
        };
        self.set_quiver(q)
    }

    pub fn define(&mut self, name: &str, v: Value) -> Result<()> {
        if self.values.contains_key(name) || builtins::lookup(name).is_ok() {
            return Err(Error::Quiver(format!("name `{name}` is already taken")));
        }
        self.values.insert(name.to_string(), v);
        Ok(())
    }

    /// A session name, a built-in, `lift:EXPR`, or an expression.
    pub fn resolve(&mut self, src: &str) -> Result<Value> {
        let src = src.trim();
        if let Some(v) = self.values.get(src) {
            return Ok(v.clone());
        }
        if let Ok((q, b)) = builtins::lookup(src) {
            self.set_quiver(q)?;
            return Ok(match b {
                Builtin::Function(p) => Value::Path(p),
                Builtin::Bivector(b) => Value::Bivector(b),
                Builtin::Endo(n) => Value::Endo(n),
                Builtin::Form(f) => Value::Form(f),
            });
        }
        if let Some(rest) = src.strip_prefix("lift:") {
            let lam = self.form(rest)?;
            return Ok(Value::Endo(RegularEndo::complete_lift(self.quiver()?, &lam)?));
        }
        let q = self.quiver()?;
        let parsed = syntax::parse_expr(src, q)?;
        self.warnings = parsed.warnings;
        let p = parsed.value;
        Ok(match classify(&p)? {
            ExprKind::Path => Value::Path(p),
            ExprKind::PolyVector => Value::PolyVector(p),
            ExprKind::Form => Value::Form(p),
        })
    }

    pub fn bivector(&mut self, src: &str) -> Result<BivectorQ> {
        match self.resolve(src)? {
            Value::Bivector(b) => Ok(b),
            Value::PolyVector(p) => {
                let q = self.quiver()?;
                Bivector::from_polyvector(q, &polyvec::normalize(&p))
            }
            Value::Path(p) if p.is_zero() => Ok(Bivector::zero()),
            v => Err(kind_error("a bivector", &v)),
        }
    }

    pub fn endo(&mut self, src: &str) -> Result<EndoQ> {
        match self.resolve(src)? {
            Value::Endo(n) => Ok(n),
            v => Err(kind_error("an endomorphism", &v)),
        }
    }

    pub fn form(&mut self, src: &str) -> Result<FormQ> {
        match self.resolve(src)? {
            Value::Form(f) => Ok(forms::dr_normalize(&f)),
            Value::Path(p) if p.is_zero() => Ok(p),
            v => Err(kind_error("a form", &v)),
        }
    }

    pub fn function(&mut self, src: &str) -> Result<PolyQ> {
        match self.resolve(src)? {
            Value::Path(p) => Ok(forms::dr0(&p)),
            v => Err(kind_error("a function", &v)),
        }
    }

    /// Any value read as a polyvector: functions as grade 0, bivectors by
    /// their necklace.
    pub fn polyvector(&mut self, src: &str) -> Result<PolyVectorQ> {
        match self.resolve(src)? {
            Value::Path(p) | Value::PolyVector(p) => Ok(polyvec::normalize(&p)),
            Value::Bivector(b) => Ok(b.necklace().clone()),
            v => Err(kind_error("a polyvector", &v)),
        }
    }

    /// Representation dimensions: configured, or defaults per built-in quiver.
    pub fn dims(&self) -> Result<Vec<Vec<usize>>> {
        if !self.config.dims.is_empty() {
            return Ok(self.config.dims.clone());
        }
        let q = self.quiver()?;
        Ok(match q.name() {
            "cm" => vec![vec![2], vec![3]],
            "gh" => vec![vec![2, 1], vec![3, 1]],
            _ => vec![vec![2; q.num_vertices()]],
        })
    }
}

/// `2,1` → `[2, 1]`.
pub fn parse_dims(s: &str) -> std::result::Result<Vec<usize>, String> {
    s.split(',').map(|t| t.trim().parse::<usize>().map_err(|_| format!("bad dimension `{t}`"))).collect()
}
