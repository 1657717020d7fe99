//! Text syntax: quiver files, expressions, canonical printing, JSON terms.
//!
//! Expressions are sums of juxtaposed factors over the doubled quiver:
//! `a`, `a^` (dual arrow), `@a` (`∂_a`), `d X` (differential), `e(v)`
//! (idempotent), `[X, Y]` (commutator), `(X)`, and rational literals `p/q`.

use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::forms;
use crate::lin::Lin;
use crate::quiver::{Kind, Quiver};
use crate::scalar::{parse_rational, rational_to_string, Scalar};
use crate::word::{mul, unit, Poly, Word};

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Ident(String),
    Num(String),
    At,
    Caret,
    Plus,
    Minus,
    Star,
    LParen,
    RParen,
    LBracket,
    RBracket,
    Comma,
    LBrace,
    RBrace,
    Semi,
    Colon,
    Arrow,
}

#[derive(Clone, Debug)]
struct Token {
    tok: Tok,
    line: usize,
    col: usize,
}

fn lex(src: &str) -> Result<Vec<Token>> {
    let chars: Vec<char> = src.chars().collect();
    let mut out = Vec::new();
    let (mut i, mut line, mut col) = (0usize, 1usize, 1usize);
    while i < chars.len() {
        let c = chars[i];
        let (l0, c0) = (line, col);
        let mut push = |t: Tok| out.push(Token { tok: t, line: l0, col: c0 });
        if c == '\n' {
            line += 1;
            col = 1;
            i += 1;
            continue;
        }
        if c.is_whitespace() {
            i += 1;
            col += 1;
            continue;
        }
        if c == '#' || (c == '/' && chars.get(i + 1) == Some(&'/')) {
            while i < chars.len() && chars[i] != '\n' {
                i += 1;
            }
            continue;
        }
        if c.is_ascii_alphabetic() || c == '_' {
            let s0 = i;
            while i < chars.len() && (chars[i].is_ascii_alphanumeric() || chars[i] == '_') {
                i += 1;
            }
            let s: String = chars[s0..i].iter().collect();
            col += i - s0;
            push(Tok::Ident(s));
            continue;
        }
        if c.is_ascii_digit() {
            let s0 = i;
            while i < chars.len() && chars[i].is_ascii_digit() {
                i += 1;
            }
            if i + 1 < chars.len() && chars[i] == '/' && chars[i + 1].is_ascii_digit() {
                i += 1;
                while i < chars.len() && chars[i].is_ascii_digit() {
                    i += 1;
                }
            }
            let s: String = chars[s0..i].iter().collect();
            col += i - s0;
            push(Tok::Num(s));
            continue;
        }
        let t = match c {
            '@' => Tok::At,
            '^' => Tok::Caret,
            '*' => Tok::Star,
            '+' => Tok::Plus,
            '-' if chars.get(i + 1) == Some(&'>') => {
                i += 2;
                col += 2;
                push(Tok::Arrow);
                continue;
            }
            '-' => Tok::Minus,
            '(' => Tok::LParen,
            ')' => Tok::RParen,
            '[' => Tok::LBracket,
            ']' => Tok::RBracket,
            ',' => Tok::Comma,
            '{' => Tok::LBrace,
            '}' => Tok::RBrace,
            ';' => Tok::Semi,
            ':' => Tok::Colon,
            _ => {
                return Err(Error::Syntax {
                    line,
                    col,
                    msg: format!("unexpected character `{c}`"),
                })
            }
        };
        push(t);
        i += 1;
        col += 1;
    }
    Ok(out)
}

struct Parser<'a> {
    toks: Vec<Token>,
    pos: usize,
    quiver: Option<&'a Quiver>,
    warnings: Vec<String>,
    end: (usize, usize),
}

impl<'a> Parser<'a> {
    fn new(src: &str, quiver: Option<&'a Quiver>) -> Result<Self> {
        let toks = lex(src)?;
        let lines: Vec<&str> = src.split('\n').collect();
        let end = (lines.len(), lines.last().map(|l| l.chars().count()).unwrap_or(0) + 1);
        Ok(Parser {
            toks,
            pos: 0,
            quiver,
            warnings: Vec::new(),
            end,
        })
    }

    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|t| &t.tok)
    }

    fn peek_at(&self, k: usize) -> Option<&Tok> {
        self.toks.get(self.pos + k).map(|t| &t.tok)
    }

    fn loc(&self) -> (usize, usize) {
        self.toks.get(self.pos).map(|t| (t.line, t.col)).unwrap_or(self.end)
    }

    fn err<T>(&self, msg: impl Into<String>) -> Result<T> {
        let (line, col) = self.loc();
        Err(Error::Syntax { line, col, msg: msg.into() })
    }

    fn bump(&mut self) -> Option<Tok> {
        let t = self.toks.get(self.pos).map(|t| t.tok.clone());
        self.pos += 1;
        t
    }

    fn expect(&mut self, t: Tok, what: &str) -> Result<()> {
        if self.peek() == Some(&t) {
            self.pos += 1;
            Ok(())
        } else {
            self.err(format!("expected {what}"))
        }
    }

    fn ident(&mut self, what: &str) -> Result<String> {
        match self.peek() {
            Some(Tok::Ident(s)) => {
                let s = s.clone();
                self.pos += 1;
                Ok(s)
            }
            _ => self.err(format!("expected {what}")),
        }
    }

    fn q(&self) -> &'a Quiver {
        self.quiver.expect("expression parsing needs a quiver")
    }

    // expr := ['+'|'-'] term (('+'|'-') term)*
    fn expr(&mut self) -> Result<Poly<BigRational>> {
        let mut neg = false;
        match self.peek() {
            Some(Tok::Plus) => self.pos += 1,
            Some(Tok::Minus) => {
                self.pos += 1;
                neg = true
            }
            _ => {}
        }
        let t = self.term()?;
        let mut acc = if neg { -t } else { t };
        loop {
            match self.peek() {
                Some(Tok::Plus) => {
                    self.pos += 1;
                    acc += &self.term()?;
                }
                Some(Tok::Minus) => {
                    self.pos += 1;
                    acc -= &self.term()?;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn starts_factor(&self) -> bool {
        matches!(
            self.peek(),
            Some(Tok::Ident(_)) | Some(Tok::Num(_)) | Some(Tok::At) | Some(Tok::LParen) | Some(Tok::LBracket) | Some(Tok::Star)
        )
    }

    // term := factor (['*'] factor)*
    fn term(&mut self) -> Result<Poly<BigRational>> {
        if !self.starts_factor() || self.peek() == Some(&Tok::Star) {
            return self.err("expected a term");
        }
        let mut acc = self.factor()?;
        while self.starts_factor() {
            if self.peek() == Some(&Tok::Star) {
                self.pos += 1;
            }
            let (line, col) = self.loc();
            let f = self.factor()?;
            let p = mul(&acc, &f);
            if p.is_zero() && !acc.is_zero() && !f.is_zero() {
                self.warnings.push(format!("{line}:{col}: incomposable product, term is 0"));
            }
            acc = p;
        }
        Ok(acc)
    }

    fn arrow_name(&mut self) -> Result<crate::quiver::ArrowId> {
        let (line, col) = self.loc();
        let mut name = self.ident("an arrow name")?;
        if self.peek() == Some(&Tok::Caret) {
            self.pos += 1;
            name.push('^');
        }
        self.q().arrow_id(&name).ok_or(Error::Syntax {
            line,
            col,
            msg: format!("unknown arrow `{name}`"),
        })
    }

    fn factor(&mut self) -> Result<Poly<BigRational>> {
        let q = self.q();
        match self.peek().cloned() {
            Some(Tok::Num(s)) => {
                self.pos += 1;
                let r = match parse_rational(&s) {
                    Some(r) => r,
                    None => return self.err(format!("bad rational `{s}`")),
                };
                Ok(unit::<BigRational>(q).scale(&r))
            }
            Some(Tok::At) => {
                self.pos += 1;
                let a = self.arrow_name()?;
                Ok(crate::word::letter_poly(q.letter(Kind::Vector, a)))
            }
            Some(Tok::LParen) => {
                self.pos += 1;
                let e = self.expr()?;
                self.expect(Tok::RParen, "`)`")?;
                Ok(e)
            }
            Some(Tok::LBracket) => {
                self.pos += 1;
                let x = self.expr()?;
                self.expect(Tok::Comma, "`,`")?;
                let y = self.expr()?;
                self.expect(Tok::RBracket, "`]`")?;
                Ok(crate::word::commutator(&x, &y))
            }
            Some(Tok::Ident(s)) if s == "d" => {
                self.pos += 1;
                if !self.starts_factor() {
                    return self.err("expected an operand for `d`");
                }
                let f = self.factor()?;
                Ok(forms::d(&f))
            }
            Some(Tok::Ident(s)) if s == "e" && self.peek_at(1) == Some(&Tok::LParen) => {
                self.pos += 2;
                let (line, col) = self.loc();
                let v = self.ident("a vertex name")?;
                let Some(id) = q.vertex_id(&v) else {
                    return Err(Error::Syntax {
                        line,
                        col,
                        msg: format!("unknown vertex `{v}`"),
                    });
                };
                self.expect(Tok::RParen, "`)`")?;
                Ok(Poly::basis(Word::trivial(id)))
            }
            Some(Tok::Ident(_)) => {
                let a = self.arrow_name()?;
                Ok(crate::word::arrow_poly(q, a))
            }
            _ => self.err("expected a factor"),
        }
    }

    fn quiver_decl(&mut self) -> Result<Quiver> {
        match self.bump() {
            Some(Tok::Ident(s)) if s == "quiver" => {}
            _ => {
                self.pos -= 1;
                return self.err("expected `quiver`");
            }
        }
        let name = self.ident("a quiver name")?;
        self.expect(Tok::LBrace, "`{`")?;
        let mut vertices: Vec<String> = Vec::new();
        let mut arrows: Vec<(String, String, String)> = Vec::new();
        loop {
            match self.peek().cloned() {
                Some(Tok::RBrace) => {
                    self.pos += 1;
                    break;
                }
                Some(Tok::Ident(k)) if k == "vertex" => {
                    self.pos += 1;
                    loop {
                        vertices.push(self.ident("a vertex name")?);
                        if self.peek() == Some(&Tok::Comma) {
                            self.pos += 1;
                        } else {
                            break;
                        }
                    }
                    self.expect(Tok::Semi, "`;`")?;
                }
                Some(Tok::Ident(k)) if k == "arrow" => {
                    self.pos += 1;
                    let a = self.ident("an arrow name")?;
                    self.expect(Tok::Colon, "`:`")?;
                    let t = self.ident("a tail vertex")?;
                    self.expect(Tok::Arrow, "`->`")?;
                    let h = self.ident("a head vertex")?;
                    self.expect(Tok::Semi, "`;`")?;
                    arrows.push((a, t, h));
                }
                _ => return self.err("expected `vertex`, `arrow` or `}`"),
            }
        }
        let vs: Vec<&str> = vertices.iter().map(|s| s.as_str()).collect();
        let ars: Vec<(&str, &str, &str)> = arrows.iter().map(|(a, t, h)| (a.as_str(), t.as_str(), h.as_str())).collect();
        Quiver::new(&name, &vs, &ars)
    }
}

/// Parsed expression with any composability warnings.
#[derive(Clone, Debug)]
pub struct Parsed {
    pub value: Poly<BigRational>,
    pub warnings: Vec<String>,
}

/// Parse an expression over `q` (normally a doubled quiver).
pub fn parse_expr(src: &str, q: &Quiver) -> Result<Parsed> {
    let mut p = Parser::new(src, Some(q))?;
    let value = if p.peek() == Some(&Tok::Num("0".into())) && p.toks.len() == 1 {
        p.pos = 1;
        Poly::zero()
    } else {
        p.expr()?
    };
    if p.pos < p.toks.len() {
        return p.err("unexpected trailing input");
    }
    Ok(Parsed {
        value,
        warnings: p.warnings,
    })
}

/// Parse and discard warnings.
pub fn parse(src: &str, q: &Quiver) -> Result<Poly<BigRational>> {
    parse_expr(src, q).map(|p| p.value)
}

/// Parse `quiver NAME { vertex v; arrow a: v -> w; }`.
pub fn parse_quiver(src: &str) -> Result<Quiver> {
    let mut p = Parser::new(src, None)?;
    let q = p.quiver_decl()?;
    if p.pos < p.toks.len() {
        return p.err("unexpected trailing input");
    }
    Ok(q)
}

/// What kind of object a parsed expression is.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ExprKind {
    Path,
    PolyVector,
    Form,
}

pub fn classify<S: Scalar>(p: &Poly<S>) -> Result<ExprKind> {
    let has = |k: Kind| p.keys().any(|w| w.letters().iter().any(|l| l.kind == k));
    match (has(Kind::Vector), has(Kind::Diff)) {
        (true, true) => Err(Error::Kind {
            expected: "a path, polyvector or form".into(),
            found: "an expression mixing `@` and `d`".into(),
        }),
        (true, false) => Ok(ExprKind::PolyVector),
        (false, true) => Ok(ExprKind::Form),
        _ => Ok(ExprKind::Path),
    }
}

fn coeff_text<S: Scalar>(c: &S) -> (bool, String) {
    let s = c.to_string();
    match s.strip_prefix('-') {
        Some(r) => (true, r.to_string()),
        None => (false, s),
    }
}

/// Canonical text of a combination: terms in canonical order, coefficients
/// in front, `1` omitted.
pub fn print_lin<S: Scalar>(p: &Lin<Word, S>, q: &Quiver) -> String {
    if p.is_zero() {
        return "0".into();
    }
    let mut s = String::new();
    for (i, (w, c)) in p.iter().enumerate() {
        let (neg, mag) = coeff_text(c);
        if i == 0 {
            if neg {
                s.push_str("- ");
            }
        } else {
            s.push_str(if neg { " - " } else { " + " });
        }
        let unit_coeff = mag == "1";
        if !unit_coeff {
            s.push_str(&mag);
            s.push(' ');
        }
        s.push_str(&w.to_string_in(q));
    }
    s
}

/// One term of the JSON wire format.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct JsonTerm {
    pub coeff: String,
    pub word: Vec<String>,
}

pub fn letters_json(w: &Word, q: &Quiver) -> Vec<String> {
    if w.is_empty() {
        return vec![format!("e({})", q.vertex_name(w.head()))];
    }
    w.letters().iter().map(|l| q.letter_name(*l)).collect()
}

pub fn to_json_terms(p: &Poly<BigRational>, q: &Quiver) -> Vec<JsonTerm> {
    p.iter()
        .map(|(w, c)| JsonTerm {
            coeff: rational_to_string(c),
            word: letters_json(w, q),
        })
        .collect()
}

pub fn from_json_terms(terms: &[JsonTerm], q: &Quiver) -> Result<Poly<BigRational>> {
    let mut out = Poly::zero();
    for t in terms {
        let c = parse_rational(&t.coeff).ok_or_else(|| Error::Json(format!("bad coefficient `{}`", t.coeff)))?;
        let text = t.word.join(" ");
        let w = parse(&text, q)?;
        out.add_scaled(&w, &c);
    }
    Ok(out)
}

/// Helper for literals in tests and built-ins.
pub fn rational(n: i64, d: i64) -> BigRational {
    BigRational::new(n.into(), d.into())
}

pub fn is_one(c: &BigRational) -> bool {
    c.is_one()
}

pub fn is_zero(c: &BigRational) -> bool {
    c.is_zero()
}
