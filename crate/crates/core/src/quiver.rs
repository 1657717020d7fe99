//! Quivers, their doubles, and the letter alphabet shared by paths, forms and
//! polyvectors.

use std::collections::HashSet;
use std::fmt;

use crate::error::{Error, Result};

pub type VertexId = u16;
pub type ArrowId = u16;

/// Role of a letter inside a word.
///
/// The variant order is the tie-break used by the canonical monomial order.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub enum Kind {
    /// An arrow `c` of the working quiver.
    Arrow,
    /// The polyvector symbol `∂_c`; it traverses `c` backwards.
    Vector,
    /// The differential `dc`.
    Diff,
    /// Formal placeholder for `θ(c)`, parallel to `c`. Never produced by the parser.
    Slot,
}

impl Kind {
    /// Letters of this kind run against their arrow.
    pub fn reversed(self) -> bool {
        matches!(self, Kind::Vector)
    }
}

/// One symbol of a word, with its endpoints cached so that words can be
/// multiplied without consulting the quiver.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct Letter {
    pub kind: Kind,
    pub arrow: ArrowId,
    pub head: VertexId,
    pub tail: VertexId,
}

impl Letter {
    pub fn with_kind(self, kind: Kind) -> Letter {
        if kind.reversed() == self.kind.reversed() {
            Letter { kind, ..self }
        } else {
            Letter {
                kind,
                arrow: self.arrow,
                head: self.tail,
                tail: self.head,
            }
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ArrowInfo {
    pub name: String,
    pub tail: VertexId,
    pub head: VertexId,
    /// Partner under the doubling involution, if the quiver is a double.
    pub dual: Option<ArrowId>,
    /// False for the starred half of a double.
    pub original: bool,
}

/// A finite quiver. Ids are canonical ranks: vertices and arrows are sorted by
/// name (originals before duals), and declaration order is kept separately.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Quiver {
    name: String,
    vertices: Vec<String>,
    vertex_decl: Vec<VertexId>,
    arrows: Vec<ArrowInfo>,
    arrow_decl: Vec<ArrowId>,
    doubled: bool,
}

const RESERVED: &[&str] = &["d", "e", "quiver", "vertex", "arrow"];

fn valid_name(s: &str) -> bool {
    let mut chars = s.chars();
    match chars.next() {
        Some(c) if c.is_ascii_alphabetic() || c == '_' => {}
        _ => return false,
    }
    chars.all(|c| c.is_ascii_alphanumeric() || c == '_')
}

impl Quiver {
    /// Build a quiver from declared vertices and `(name, tail, head)` arrows.
    pub fn new(name: &str, vertices: &[&str], arrows: &[(&str, &str, &str)]) -> Result<Quiver> {
        let mut seen = HashSet::new();
        for v in vertices {
            if !valid_name(v) {
                return Err(Error::Quiver(format!("invalid vertex name `{v}`")));
            }
            if !seen.insert(*v) {
                return Err(Error::Quiver(format!("duplicate vertex `{v}`")));
            }
        }
        let mut seen_arrows = HashSet::new();
        for (a, t, h) in arrows {
            if !valid_name(a) || RESERVED.contains(a) {
                return Err(Error::Quiver(format!("invalid arrow name `{a}`")));
            }
            if !seen_arrows.insert(*a) {
                return Err(Error::Quiver(format!("duplicate arrow `{a}`")));
            }
            for v in [t, h] {
                if !seen.contains(v) {
                    return Err(Error::Quiver(format!("arrow `{a}` uses undeclared vertex `{v}`")));
                }
            }
        }
        if vertices.is_empty() {
            return Err(Error::Quiver("a quiver needs at least one vertex".into()));
        }

        let mut vsorted: Vec<&str> = vertices.to_vec();
        vsorted.sort_by(|x, y| x.as_bytes().cmp(y.as_bytes()));
        let vid = |v: &str| vsorted.iter().position(|w| *w == v).unwrap() as VertexId;
        let vertex_decl = vertices.iter().map(|v| vid(v)).collect();

        let mut asorted: Vec<&(&str, &str, &str)> = arrows.iter().collect();
        asorted.sort_by(|x, y| x.0.as_bytes().cmp(y.0.as_bytes()));
        let infos = asorted
            .iter()
            .map(|(a, t, h)| ArrowInfo {
                name: a.to_string(),
                tail: vid(t),
                head: vid(h),
                dual: None,
                original: true,
            })
            .collect::<Vec<_>>();
        let arrow_decl = arrows
            .iter()
            .map(|(a, _, _)| asorted.iter().position(|x| x.0 == *a).unwrap() as ArrowId)
            .collect();
        Ok(Quiver {
            name: name.to_string(),
            vertices: vsorted.iter().map(|s| s.to_string()).collect(),
            vertex_decl,
            arrows: infos,
            arrow_decl,
            doubled: false,
        })
    }

    /// The double `Q̄`: every arrow `a` gains a partner `a^` with reversed
    /// endpoints. Arrows `0..m` are the originals and `m..2m` their duals.
    pub fn double(&self) -> Quiver {
        assert!(!self.doubled, "quiver is already doubled");
        let m = self.arrows.len();
        let mut arrows = Vec::with_capacity(2 * m);
        for (i, a) in self.arrows.iter().enumerate() {
            arrows.push(ArrowInfo {
                dual: Some((i + m) as ArrowId),
                ..a.clone()
            });
        }
        for (i, a) in self.arrows.iter().enumerate() {
            arrows.push(ArrowInfo {
                name: format!("{}^", a.name),
                tail: a.head,
                head: a.tail,
                dual: Some(i as ArrowId),
                original: false,
            });
        }
        let mut arrow_decl = self.arrow_decl.clone();
        arrow_decl.extend(self.arrow_decl.iter().map(|&i| i + m as ArrowId));
        Quiver {
            name: self.name.clone(),
            vertices: self.vertices.clone(),
            vertex_decl: self.vertex_decl.clone(),
            arrows,
            arrow_decl,
            doubled: true,
        }
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn is_doubled(&self) -> bool {
        self.doubled
    }

    pub fn num_vertices(&self) -> usize {
        self.vertices.len()
    }

    pub fn num_arrows(&self) -> usize {
        self.arrows.len()
    }

    pub fn vertex_name(&self, v: VertexId) -> &str {
        &self.vertices[v as usize]
    }

    pub fn vertex_id(&self, name: &str) -> Option<VertexId> {
        self.vertices.iter().position(|v| v == name).map(|i| i as VertexId)
    }

    /// Vertices in the order they were declared.
    pub fn vertices_declared(&self) -> &[VertexId] {
        &self.vertex_decl
    }

    pub fn arrow(&self, a: ArrowId) -> &ArrowInfo {
        &self.arrows[a as usize]
    }

    pub fn arrow_id(&self, name: &str) -> Option<ArrowId> {
        self.arrows.iter().position(|a| a.name == name).map(|i| i as ArrowId)
    }

    pub fn arrow_ids(&self) -> impl Iterator<Item = ArrowId> {
        0..self.arrows.len() as ArrowId
    }

    /// Arrows in declaration order (originals, then duals for a double).
    pub fn arrows_declared(&self) -> &[ArrowId] {
        &self.arrow_decl
    }

    /// Original arrows of a double (the set `Q` inside `Q̄`).
    pub fn original_arrows(&self) -> impl Iterator<Item = ArrowId> + '_ {
        self.arrow_ids().filter(|&a| self.arrows[a as usize].original)
    }

    pub fn dual(&self, a: ArrowId) -> Option<ArrowId> {
        self.arrows[a as usize].dual
    }

    pub fn head(&self, a: ArrowId) -> VertexId {
        self.arrows[a as usize].head
    }

    pub fn tail(&self, a: ArrowId) -> VertexId {
        self.arrows[a as usize].tail
    }

    pub fn letter(&self, kind: Kind, a: ArrowId) -> Letter {
        let info = &self.arrows[a as usize];
        let (head, tail) = if kind.reversed() {
            (info.tail, info.head)
        } else {
            (info.head, info.tail)
        };
        Letter {
            kind,
            arrow: a,
            head,
            tail,
        }
    }

    pub fn arrow_letter(&self, a: ArrowId) -> Letter {
        self.letter(Kind::Arrow, a)
    }

    /// Printable name of a letter: `a`, `a^`, `@a`, `d a`, `<a>`.
    pub fn letter_name(&self, l: Letter) -> String {
        let n = &self.arrows[l.arrow as usize].name;
        match l.kind {
            Kind::Arrow => n.clone(),
            Kind::Vector => format!("@{n}"),
            Kind::Diff => format!("d {n}"),
            Kind::Slot => format!("<{n}>"),
        }
    }
}

impl fmt::Display for Quiver {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "quiver {} {{", self.name)?;
        for &v in &self.vertex_decl {
            writeln!(f, "  vertex {};", self.vertices[v as usize])?;
        }
        for &a in &self.arrow_decl {
            let info = &self.arrows[a as usize];
            if !info.original {
                continue;
            }
            writeln!(
                f,
                "  arrow {}: {} -> {};",
                info.name, self.vertices[info.tail as usize], self.vertices[info.head as usize]
            )?;
        }
        write!(f, "}}")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn gh() -> Quiver {
        Quiver::new("gh", &["v1", "v2"], &[("a", "v1", "v1"), ("y", "v1", "v2"), ("x", "v2", "v1")]).unwrap()
    }

    #[test]
    fn canonical_ranks_sort_by_name() {
        let q = gh();
        assert_eq!(q.arrow(0).name, "a");
        assert_eq!(q.arrow(1).name, "x");
        assert_eq!(q.arrow(2).name, "y");
        assert_eq!(q.arrows_declared(), &[0, 2, 1]);
    }

    #[test]
    fn double_reverses_endpoints() {
        let q = gh().double();
        assert_eq!(q.num_arrows(), 6);
        for a in q.arrow_ids() {
            let b = q.dual(a).unwrap();
            assert_eq!(q.head(b), q.tail(a));
            assert_eq!(q.tail(b), q.head(a));
            assert_eq!(q.dual(b), Some(a));
        }
        assert_eq!(q.arrow(3).name, "a^");
        assert_eq!(q.original_arrows().count(), 3);
    }

    #[test]
    fn empty_arrow_set_doubles_to_empty() {
        let q = Quiver::new("pt", &["v"], &[]).unwrap().double();
        assert_eq!(q.num_arrows(), 0);
    }

    #[test]
    fn rejects_bad_quivers() {
        assert!(Quiver::new("q", &["v", "v"], &[]).is_err());
        assert!(Quiver::new("q", &["v"], &[("a", "v", "w")]).is_err());
        assert!(Quiver::new("q", &["v"], &[("a", "v", "v"), ("a", "v", "v")]).is_err());
        assert!(Quiver::new("q", &["v"], &[("d", "v", "v")]).is_err());
    }

    #[test]
    fn vector_letter_runs_backwards() {
        let q = gh().double();
        let y = q.arrow_id("y").unwrap();
        let l = q.letter(Kind::Vector, y);
        assert_eq!(l.head, q.tail(y));
        assert_eq!(l.tail, q.head(y));
        assert_eq!(l.with_kind(Kind::Diff), q.letter(Kind::Diff, y));
    }
}
