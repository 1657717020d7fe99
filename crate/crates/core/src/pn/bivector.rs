//! Bivectors presented as sums of commutators `[P ∂_a, R ∂_b]`, and the maps
//! `π̃ : DR¹ → Der` they define.

use crate::derivation::{substitute_all, Derivation};
use crate::error::{Error, Result};
use crate::forms::{self, Form};
use crate::polyvec::{self, PolyVector};
use crate::quiver::{ArrowId, Kind, Quiver};
use crate::scalar::Scalar;
use crate::word::{letter_poly, mul, Poly, Word};

/// One commutator `[P ∂_a, R ∂_b]`; scalars live inside `p`.
#[derive(Clone, Debug, PartialEq)]
pub struct Term<S: Scalar> {
    pub p: Poly<S>,
    pub a: ArrowId,
    pub r: Poly<S>,
    pub b: ArrowId,
}

#[derive(Clone, Debug, PartialEq)]
pub struct Bivector<S: Scalar> {
    terms: Vec<Term<S>>,
    necklace: PolyVector<S>,
}

fn vec_poly<S: Scalar>(q: &Quiver, a: ArrowId) -> Poly<S> {
    letter_poly(q.letter(Kind::Vector, a))
}

impl<S: Scalar> Term<S> {
    /// The word `P ∂_a R ∂_b` (composable part only).
    pub fn word(&self, q: &Quiver) -> Poly<S> {
        mul(&mul(&mul(&self.p, &vec_poly(q, self.a)), &self.r), &vec_poly(q, self.b))
    }

    /// `P ∂_a R ∂_b − R ∂_b P ∂_a` as plain words.
    pub fn commutator(&self, q: &Quiver) -> Poly<S> {
        let x = mul(&self.p, &vec_poly(q, self.a));
        let y = mul(&self.r, &vec_poly(q, self.b));
        crate::word::commutator(&x, &y)
    }
}

impl<S: Scalar> Bivector<S> {
    pub fn zero() -> Self {
        Bivector {
            terms: Vec::new(),
            necklace: PolyVector::zero(),
        }
    }

    /// From a commutator presentation; the necklace is derived.
    pub fn from_terms(q: &Quiver, terms: Vec<Term<S>>) -> Self {
        let mut raw = Poly::zero();
        for t in &terms {
            raw += &t.commutator(q);
        }
        Bivector {
            necklace: polyvec::normalize(&raw),
            terms,
        }
    }

    /// From a grade-2 polyvector: each necklace word, rotated to end in `∂_b`
    /// and read as `P ∂_a R ∂_b`, contributes `½ [P ∂_a, R ∂_b]`.
    pub fn from_polyvector(q: &Quiver, pv: &PolyVector<S>) -> Result<Self> {
        let pv = polyvec::normalize(pv);
        let mut terms = Vec::new();
        for (w, c) in pv.iter() {
            if polyvec::word_grade(w) != 2 {
                return Err(Error::Kind {
                    expected: "a grade-2 polyvector".into(),
                    found: format!("a grade-{} word", polyvec::word_grade(w)),
                });
            }
            terms.push(split_word(q, w, c.clone() * S::half()));
        }
        Ok(Bivector::from_terms(q, terms))
    }

    pub fn terms(&self) -> &[Term<S>] {
        &self.terms
    }

    pub fn necklace(&self) -> &PolyVector<S> {
        &self.necklace
    }

    pub fn is_zero(&self) -> bool {
        self.necklace.is_zero()
    }

    pub fn add(&self, q: &Quiver, o: &Self) -> Self {
        let mut t = self.terms.clone();
        t.extend(o.terms.iter().cloned());
        Bivector::from_terms(q, t)
    }

    /// `π̃(α) = Σ (P S_a R ∂_b − R S_b P ∂_a)`, `S_c` the canonical
    /// coefficients of `α`.
    pub fn map(&self, q: &Quiver, alpha: &Form<S>) -> Derivation<S> {
        let s = forms::dr1_coeffs(alpha);
        let mut out = Derivation::zero();
        let zero = Poly::zero();
        for t in &self.terms {
            let sa = s.get(&t.a).unwrap_or(&zero);
            if !sa.is_zero() {
                out.add_raw(t.b, &crate::word::mul3(&t.p, sa, &t.r));
            }
            let sb = s.get(&t.b).unwrap_or(&zero);
            if !sb.is_zero() {
                out.add_raw(t.a, &-crate::word::mul3(&t.r, sb, &t.p));
            }
        }
        let _ = q;
        out
    }

    /// `π̃(α)_c = ½ · D_{∂_c}(π)` with the remaining `∂_x` replaced by `S_x`;
    /// depends on the necklace only.
    pub fn map_intrinsic(&self, q: &Quiver, alpha: &Form<S>) -> Derivation<S> {
        let s = forms::dr1_coeffs(alpha);
        let mut out = Derivation::zero();
        for c in q.arrow_ids() {
            let dc = polyvec::directional(q.letter(Kind::Vector, c), &self.necklace);
            if dc.is_zero() {
                continue;
            }
            let v = substitute_all(&dc, |l| {
                (l.kind == Kind::Vector).then(|| s.get(&l.arrow).cloned().unwrap_or_default())
            });
            out.add_raw(c, &v.scale(&S::half()));
        }
        out
    }

    /// `π(α, β) = ⟨β, π̃(α)⟩`.
    pub fn eval(&self, q: &Quiver, alpha: &Form<S>, beta: &Form<S>) -> Poly<S> {
        forms::pair(beta, &self.map(q, alpha))
    }

    pub fn to_string_in(&self, q: &Quiver) -> String {
        crate::syntax::print_lin(&self.necklace, q)
    }

    /// The presentation as text, `[P @a, R @b] + …`.
    pub fn presentation_string(&self, q: &Quiver) -> String {
        if self.terms.is_empty() {
            return "0".into();
        }
        self.terms
            .iter()
            .map(|t| {
                let p = crate::syntax::print_lin(&mul(&t.p, &vec_poly(q, t.a)), q);
                let r = crate::syntax::print_lin(&mul(&t.r, &vec_poly(q, t.b)), q);
                format!("[{p}, {r}]")
            })
            .collect::<Vec<_>>()
            .join(" + ")
    }
}

/// Read a closed grade-2 word as `c · P ∂_a R ∂_b` (rotation ending in `∂`
/// carries no sign, since only even blocks move past odd letters' partners).
fn split_word<S: Scalar>(q: &Quiver, w: &Word, c: S) -> Term<S> {
    let ls = w.letters();
    let last_v = ls.iter().rposition(|l| l.kind == Kind::Vector).unwrap();
    let r = w.rotate(last_v + 1);
    // rotating the block after the last ∂ (grade 0) to the front: no sign
    let ls = r.letters();
    let n = ls.len();
    let i = ls.iter().position(|l| l.kind == Kind::Vector).unwrap();
    let a = ls[i].arrow;
    let b = ls[n - 1].arrow;
    let p = Word::from_letters_at(&ls[..i], q.head(b));
    let rr = Word::from_letters_at(&ls[i + 1..n - 1], q.head(a));
    Term {
        p: Poly::term(p, c),
        a,
        r: Poly::basis(rr),
        b,
    }
}

/// Rebuild a bivector from a map `m : DR¹ → Der` by evaluating it on the
/// marker forms `∂_a · da`: every output term `u ∂_a v` at component `b`
/// contributes `½ [u ∂_a, v ∂_b]`. The round trip is then checked on `probe`
/// forms; a mismatch means `m` was not the map of any bivector.
pub fn map_to_bivector<S: Scalar, F>(q: &Quiver, m: F, probe: &[Form<S>]) -> Result<Bivector<S>>
where
    F: Fn(&Form<S>) -> Derivation<S>,
{
    let mut terms = Vec::new();
    for a in q.arrow_ids() {
        let marker = mul(&vec_poly::<S>(q, a), &letter_poly(q.letter(Kind::Diff, a)));
        let img = m(&marker);
        for (b, coef) in img.components() {
            for (w, c) in coef.iter() {
                let ls = w.letters();
                let pos: Vec<usize> = ls.iter().enumerate().filter(|(_, l)| l.kind == Kind::Vector).map(|(i, _)| i).collect();
                if pos.len() != 1 || ls[pos[0]].arrow != a {
                    return Err(Error::NonSkew(format!(
                        "image of the marker form on `{}` is not linear in the marker",
                        q.arrow(a).name
                    )));
                }
                let i = pos[0];
                let u = Word::from_letters_at(&ls[..i], q.head(b));
                let v = Word::from_letters_at(&ls[i + 1..], q.head(a));
                terms.push(Term {
                    p: Poly::term(u, c.clone() * S::half()),
                    a,
                    r: Poly::basis(v),
                    b,
                });
            }
        }
    }
    let bv = Bivector::from_terms(q, terms);
    for alpha in probe {
        let lhs = m(alpha);
        let rhs = bv.map(q, alpha);
        if lhs != rhs {
            return Err(Error::NonSkew(format!(
                "round trip differs on {}: {} vs {}",
                crate::syntax::print_lin(alpha, q),
                lhs.to_string_in(q),
                rhs.to_string_in(q)
            )));
        }
    }
    Ok(bv)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::syntax::parse;
    use num_rational::BigRational;

    type Q = BigRational;

    fn cm() -> Quiver {
        Quiver::new("cm", &["v"], &[("a", "v", "v")]).unwrap().double()
    }

    fn pi0(q: &Quiver) -> Bivector<Q> {
        Bivector::from_polyvector(q, &parse("[@a^, @a]", q).unwrap()).unwrap()
    }

    #[test]
    fn canonical_map_is_minus_sharp() {
        let q = cm();
        let p = pi0(&q);
        // π̃₀(S_a da + S_{a*} da*) = S_{a*} ∂_a − S_a ∂_{a*}
        let alpha = forms::dr_normalize(&parse("a a^ d a + a d a^", &q).unwrap());
        let got = p.map(&q, &alpha);
        let expect = Derivation::single(&q, 0, parse("a", &q).unwrap())
            .add(&Derivation::single(&q, 1, parse("-a a^", &q).unwrap()));
        assert_eq!(got, expect);
        assert_eq!(p.map_intrinsic(&q, &alpha), expect);
        assert!(p.map(&q, &Form::zero()).is_zero());
    }

    #[test]
    fn presentation_round_trip() {
        let q = cm();
        let pi1 = parse("[a @a^, @a] + [a^ @a^, @a^]", &q).unwrap();
        let b = Bivector::from_polyvector(&q, &pi1).unwrap();
        assert_eq!(b.necklace(), &polyvec::normalize(&pi1));
        let probe: Vec<Form<Q>> = vec![parse("d a", &q).unwrap(), parse("a^ d a^", &q).unwrap()];
        let back = map_to_bivector(&q, |al| b.map(&q, al), &probe).unwrap();
        assert_eq!(back.necklace(), b.necklace());
    }
}
