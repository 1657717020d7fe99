//! Composable words of letters and the path algebra they span.
//!
//! A written word `x₁ x₂ … x_N` is composable when `t(x_i) = h(x_{i+1})`; its
//! head is `h(x₁)` and its tail `t(x_N)`. The empty word at vertex `i` is the
//! idempotent `e_i`.

use std::cmp::Ordering;
use std::fmt::Write as _;

use smallvec::SmallVec;

use crate::lin::Lin;
use crate::quiver::{Kind, Letter, Quiver, VertexId};
use crate::scalar::Scalar;

pub type Letters = SmallVec<[Letter; 6]>;

#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Word {
    letters: Letters,
    /// Head vertex; for the empty word this is the vertex of the idempotent.
    vertex: VertexId,
}

impl Word {
    pub fn trivial(v: VertexId) -> Word {
        Word {
            letters: SmallVec::new(),
            vertex: v,
        }
    }

    pub fn letter(l: Letter) -> Word {
        Word {
            letters: smallvec::smallvec![l],
            vertex: l.head,
        }
    }

    /// `None` if some junction does not compose.
    pub fn from_letters(ls: &[Letter]) -> Option<Word> {
        let first = ls.first()?;
        for w in ls.windows(2) {
            if w[0].tail != w[1].head {
                return None;
            }
        }
        Some(Word {
            letters: ls.iter().copied().collect(),
            vertex: first.head,
        })
    }

    /// Build from letters known to compose; an empty slice gives `e_v`.
    pub fn from_letters_at(ls: &[Letter], v: VertexId) -> Word {
        debug_assert!(ls.windows(2).all(|w| w[0].tail == w[1].head));
        Word {
            letters: ls.iter().copied().collect(),
            vertex: ls.first().map(|l| l.head).unwrap_or(v),
        }
    }

    pub fn letters(&self) -> &[Letter] {
        &self.letters
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn head(&self) -> VertexId {
        self.vertex
    }

    pub fn tail(&self) -> VertexId {
        self.letters.last().map(|l| l.tail).unwrap_or(self.vertex)
    }

    pub fn is_closed(&self) -> bool {
        self.head() == self.tail()
    }

    pub fn count(&self, kind: Kind) -> usize {
        self.letters.iter().filter(|l| l.kind == kind).count()
    }

    pub fn concat(&self, o: &Word) -> Option<Word> {
        if self.tail() != o.head() {
            return None;
        }
        if self.is_empty() {
            return Some(o.clone());
        }
        let mut letters = self.letters.clone();
        letters.extend_from_slice(&o.letters);
        Some(Word {
            letters,
            vertex: self.vertex,
        })
    }

    /// Concatenation of three pieces known to compose.
    pub fn join(parts: &[&[Letter]], v: VertexId) -> Word {
        let mut letters: Letters = SmallVec::new();
        for p in parts {
            letters.extend_from_slice(p);
        }
        Word::from_letters_at(&letters, v)
    }

    /// Cyclic rotation `x_{k+1} … x_N x_1 … x_k` of a closed word.
    pub fn rotate(&self, k: usize) -> Word {
        if self.is_empty() {
            return self.clone();
        }
        let n = self.len();
        let k = k % n;
        let mut letters: Letters = SmallVec::with_capacity(n);
        letters.extend_from_slice(&self.letters[k..]);
        letters.extend_from_slice(&self.letters[..k]);
        let vertex = letters[0].head;
        Word { letters, vertex }
    }

    pub fn map_letters<F: FnMut(Letter) -> Letter>(&self, mut f: F) -> Word {
        let letters: Letters = self.letters.iter().map(|&l| f(l)).collect();
        Word {
            vertex: letters.first().map(|l| l.head).unwrap_or(self.vertex),
            letters,
        }
    }

    pub fn to_string_in(&self, q: &Quiver) -> String {
        if self.is_empty() {
            return format!("e({})", q.vertex_name(self.vertex));
        }
        let mut s = String::new();
        for (i, l) in self.letters.iter().enumerate() {
            if i > 0 {
                s.push(' ');
            }
            let _ = write!(s, "{}", q.letter_name(*l));
        }
        s
    }
}

impl Ord for Word {
    fn cmp(&self, o: &Self) -> Ordering {
        self.len()
            .cmp(&o.len())
            .then_with(|| {
                if self.is_empty() {
                    self.vertex.cmp(&o.vertex)
                } else {
                    self.letters.as_slice().cmp(o.letters.as_slice())
                }
            })
            .then_with(|| self.vertex.cmp(&o.vertex))
    }
}

impl PartialOrd for Word {
    fn partial_cmp(&self, o: &Self) -> Option<Ordering> {
        Some(self.cmp(o))
    }
}

/// Element of the free algebra on letters; with arrow letters only this is
/// the path algebra `kQ`.
pub type Poly<S> = Lin<Word, S>;

/// Multiplication in the letter algebra: bilinear extension of concatenation.
pub fn mul<S: Scalar>(p: &Poly<S>, q: &Poly<S>) -> Poly<S> {
    let mut out = Poly::zero();
    for (u, a) in p.iter() {
        for (v, b) in q.iter() {
            if let Some(w) = u.concat(v) {
                out.add_term(w, a.clone() * b.clone());
            }
        }
    }
    out
}

pub fn mul3<S: Scalar>(p: &Poly<S>, q: &Poly<S>, r: &Poly<S>) -> Poly<S> {
    mul(&mul(p, q), r)
}

/// `e_v`.
pub fn idempotent<S: Scalar>(v: VertexId) -> Poly<S> {
    Poly::basis(Word::trivial(v))
}

/// `Σ_i e_i`, the unit of `kQ`.
pub fn unit<S: Scalar>(q: &Quiver) -> Poly<S> {
    Poly::from_terms((0..q.num_vertices() as VertexId).map(|v| (Word::trivial(v), S::one())))
}

pub fn letter_poly<S: Scalar>(l: Letter) -> Poly<S> {
    Poly::basis(Word::letter(l))
}

pub fn arrow_poly<S: Scalar>(q: &Quiver, a: crate::quiver::ArrowId) -> Poly<S> {
    letter_poly(q.arrow_letter(a))
}

/// `p^k` for `k ≥ 1`; `k = 0` gives the unit.
pub fn pow<S: Scalar>(q: &Quiver, p: &Poly<S>, k: usize) -> Poly<S> {
    let mut r = unit(q);
    for _ in 0..k {
        r = mul(&r, p);
    }
    r
}

/// Ordinary commutator `pq − qp`.
pub fn commutator<S: Scalar>(p: &Poly<S>, q: &Poly<S>) -> Poly<S> {
    mul(p, q) - mul(q, p)
}

/// `e_h p e_t`: the part of `p` running from tail `t` to head `h`.
pub fn restrict<S: Scalar>(p: &Poly<S>, head: VertexId, tail: VertexId) -> Poly<S> {
    p.map_terms(|w| (w.head() == head && w.tail() == tail).then(|| (w.clone(), S::one())))
}

pub fn poly_to_string<S: Scalar>(p: &Poly<S>, q: &Quiver) -> String {
    crate::syntax::print_lin(p, q)
}

/// All words of arrow letters with length `≤ max_len`, including trivial ones.
pub fn all_paths(q: &Quiver, max_len: usize) -> Vec<Word> {
    let mut out: Vec<Word> = (0..q.num_vertices() as VertexId).map(Word::trivial).collect();
    let mut frontier: Vec<Word> = q.arrow_ids().map(|a| Word::letter(q.arrow_letter(a))).collect();
    for _ in 0..max_len {
        out.extend(frontier.iter().cloned());
        let mut next = Vec::new();
        for w in &frontier {
            for a in q.arrow_ids() {
                let l = q.arrow_letter(a);
                if w.tail() == l.head {
                    next.push(w.concat(&Word::letter(l)).unwrap());
                }
            }
        }
        frontier = next;
    }
    out.sort();
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_rational::BigRational;

    type P = Poly<BigRational>;

    fn gh() -> Quiver {
        Quiver::new("gh", &["v1", "v2"], &[("a", "v1", "v1"), ("y", "v1", "v2"), ("x", "v2", "v1")]).unwrap()
    }

    #[test]
    fn idempotents_act_as_units() {
        let q = gh();
        for a in q.arrow_ids() {
            let p: P = arrow_poly(&q, a);
            assert_eq!(mul(&idempotent(q.head(a)), &p), p);
            assert_eq!(mul(&p, &idempotent(q.tail(a))), p);
            assert_eq!(mul(&unit(&q), &p), p);
            assert_eq!(mul(&p, &unit(&q)), p);
        }
        let e1: P = idempotent(0);
        let e2: P = idempotent(1);
        assert!(mul(&e1, &e2).is_zero());
        assert_eq!(mul(&e1, &e1), e1);
    }

    #[test]
    fn incomposable_product_is_zero() {
        let q = gh();
        let x: P = arrow_poly(&q, q.arrow_id("x").unwrap());
        let a: P = arrow_poly(&q, q.arrow_id("a").unwrap());
        // x ends at v2 on the written right; a starts at v1
        assert!(mul(&x, &a).is_zero());
        assert!(!mul(&a, &x).is_zero());
    }

    #[test]
    fn distributivity_example() {
        let q = gh();
        let a: P = arrow_poly(&q, 0);
        let a2 = mul(&a, &a);
        let lhs = mul(&(a.clone() + a2.clone()), &a);
        let rhs = a2.clone() + mul(&a2, &a);
        assert_eq!(lhs, rhs);
        assert!(mul(&a, &P::zero()).is_zero());
    }

    #[test]
    fn canonical_order_length_first() {
        let q = gh().double();
        let a = Word::letter(q.arrow_letter(0));
        let astar = Word::letter(q.arrow_letter(q.dual(0).unwrap()));
        let e = Word::trivial(0);
        assert!(e < a && a < astar);
        assert!(astar < a.concat(&a).unwrap());
    }

    #[test]
    fn path_enumeration_counts() {
        // one loop doubled: 1 + 2 + 4 + 8 words of length ≤ 3
        let q = Quiver::new("cm", &["v"], &[("a", "v", "v")]).unwrap().double();
        assert_eq!(all_paths(&q, 3).len(), 15);
    }
}
