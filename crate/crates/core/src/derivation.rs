//! `B`-linear derivations of the path algebra, stored in the canonical form
//! `Σ_c p_c ∂_c` with `p_c` parallel to `c`.

use std::collections::BTreeMap;

use crate::lin::Lin;
use crate::necklace;
use crate::quiver::{ArrowId, Kind, Letter, Quiver};
use crate::scalar::Scalar;
use crate::word::{restrict, Poly, Word};

#[derive(Clone, Debug, PartialEq)]
pub struct Derivation<S: Scalar> {
    comps: BTreeMap<ArrowId, Poly<S>>,
}

impl<S: Scalar> Default for Derivation<S> {
    fn default() -> Self {
        Derivation::zero()
    }
}

impl<S: Scalar> Derivation<S> {
    pub fn zero() -> Self {
        Derivation { comps: BTreeMap::new() }
    }

    /// `p ∂_c`, keeping only the part of `p` parallel to `c`.
    pub fn single(q: &Quiver, c: ArrowId, p: Poly<S>) -> Self {
        let mut d = Derivation::zero();
        d.add_component(q, c, &p);
        d
    }

    /// `∂_c`: sends `c` to the unit path at its vertex. Zero unless `c` is a loop,
    /// since otherwise `∂_c` is not a closed word.
    pub fn partial(q: &Quiver, c: ArrowId) -> Self {
        Derivation::single(q, c, Poly::basis(Word::trivial(q.head(c))))
    }

    fn from_map(v: Vec<(ArrowId, Poly<S>)>) -> Self {
        let mut comps = BTreeMap::new();
        for (c, p) in v {
            if !p.is_zero() {
                comps.insert(c, p);
            }
        }
        Derivation { comps }
    }

    pub fn add_component(&mut self, q: &Quiver, c: ArrowId, p: &Poly<S>) {
        let p = restrict(p, q.head(c), q.tail(c));
        self.add_raw(c, &p);
    }

    /// Add to `θ(c)` without the parallel-part projection (the caller
    /// guarantees it, or the terms carry marker letters).
    pub fn add_raw(&mut self, c: ArrowId, p: &Poly<S>) {
        if p.is_zero() {
            return;
        }
        let e = self.comps.entry(c).or_default();
        *e += p;
        if e.is_zero() {
            self.comps.remove(&c);
        }
    }

    pub fn component(&self, c: ArrowId) -> Poly<S> {
        self.comps.get(&c).cloned().unwrap_or_default()
    }

    pub fn components(&self) -> impl Iterator<Item = (ArrowId, &Poly<S>)> {
        self.comps.iter().map(|(c, p)| (*c, p))
    }

    pub fn is_zero(&self) -> bool {
        self.comps.is_empty()
    }

    pub fn add(&self, o: &Self) -> Self {
        let mut r = self.clone();
        for (c, p) in &o.comps {
            r.add_raw(*c, p);
        }
        r
    }

    pub fn sub(&self, o: &Self) -> Self {
        self.add(&o.scale(&-S::one()))
    }

    pub fn scale(&self, s: &S) -> Self {
        Derivation::from_map(self.comps.iter().map(|(c, p)| (*c, p.scale(s))).collect())
    }

    /// Apply to a combination of words; only arrow letters are differentiated.
    pub fn apply(&self, p: &Poly<S>) -> Poly<S> {
        let mut out = Poly::zero();
        for (w, coef) in p.iter() {
            self.apply_word_into(w, coef, &mut out);
        }
        out
    }

    fn apply_word_into(&self, w: &Word, coef: &S, out: &mut Poly<S>) {
        let ls = w.letters();
        for (i, l) in ls.iter().enumerate() {
            if l.kind != Kind::Arrow {
                continue;
            }
            if let Some(img) = self.comps.get(&l.arrow) {
                substitute_at(ls, i, img, coef, out);
            }
        }
    }

    /// `[θ, η](c) = θ(η(c)) − η(θ(c))`.
    pub fn bracket(&self, o: &Self) -> Self {
        let mut r = Derivation::zero();
        let keys: std::collections::BTreeSet<ArrowId> = self.comps.keys().chain(o.comps.keys()).copied().collect();
        for c in keys {
            let v = self.apply(&o.component(c)) - o.apply(&self.component(c));
            r.add_raw(c, &v);
        }
        r
    }

    /// The grade-one necklace `Σ p_c ∂_c`.
    pub fn to_polyvector(&self, q: &Quiver) -> Lin<Word, S> {
        let mut out = Lin::zero();
        for (c, p) in &self.comps {
            let v = q.letter(Kind::Vector, *c);
            for (w, coef) in p.iter() {
                if let Some(x) = w.concat(&Word::letter(v)) {
                    out += &necklace::normalize_word(&x, coef.clone(), Kind::Vector);
                }
            }
        }
        out
    }

    /// Read a grade-one necklace back: rotate the single `∂_c` to the end.
    pub fn from_polyvector(q: &Quiver, v: &Lin<Word, S>) -> Self {
        let mut d = Derivation::zero();
        for (w, coef) in v.iter() {
            let ls = w.letters();
            let Some(i) = ls.iter().position(|l| l.kind == Kind::Vector) else {
                continue;
            };
            let c = ls[i].arrow;
            let r = w.rotate(i + 1);
            let n = r.len();
            let body = Word::from_letters_at(&r.letters()[..n - 1], q.head(c));
            d.add_raw(c, &Poly::term(body, coef.clone()));
        }
        d
    }

    pub fn to_string_in(&self, q: &Quiver) -> String {
        if self.is_zero() {
            return "0".into();
        }
        crate::syntax::print_lin(&self.to_polyvector_raw(q), q)
    }

    /// `Σ p_c ∂_c` as written words, without cyclic normalization.
    pub fn to_polyvector_raw(&self, q: &Quiver) -> Lin<Word, S> {
        let mut out = Lin::zero();
        for (c, p) in &self.comps {
            let v = Word::letter(q.letter(Kind::Vector, *c));
            for (w, coef) in p.iter() {
                if let Some(x) = w.concat(&v) {
                    out.add_term(x, coef.clone());
                }
            }
        }
        out
    }

    /// Apply `f` to every coefficient.
    pub fn map_polys<F: FnMut(&Poly<S>) -> Poly<S>>(&self, mut f: F) -> Self {
        Derivation::from_map(self.comps.iter().map(|(c, p)| (*c, f(p))).collect())
    }
}

/// `prefix · img · suffix` with `coef`, where the letter at `i` is replaced.
pub fn substitute_at<S: Scalar>(ls: &[Letter], i: usize, img: &Poly<S>, coef: &S, out: &mut Poly<S>) {
    let pre = &ls[..i];
    let post = &ls[i + 1..];
    for (m, c2) in img.iter() {
        let ok_left = pre.last().is_none_or(|l| l.tail == m.head());
        let ok_right = post.first().is_none_or(|l| l.head == m.tail());
        if !(ok_left && ok_right) {
            continue;
        }
        let v = pre.last().map(|l| l.tail).unwrap_or(m.head());
        let w = Word::join(&[pre, m.letters(), post], v);
        out.add_term(w, coef.clone() * c2.clone());
    }
}

/// Replace each letter for which `f` returns an image by that image,
/// multiplying out; other letters are kept.
pub fn substitute_all<S: Scalar, F: Fn(Letter) -> Option<Poly<S>>>(p: &Poly<S>, f: F) -> Poly<S> {
    let mut out = Poly::zero();
    for (w, coef) in p.iter() {
        let mut acc = Poly::term(Word::trivial(w.head()), coef.clone());
        for &l in w.letters() {
            let factor = f(l).unwrap_or_else(|| crate::word::letter_poly(l));
            acc = crate::word::mul(&acc, &factor);
            if acc.is_zero() {
                break;
            }
        }
        out += &acc;
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::word::{arrow_poly, mul};
    use num_rational::BigRational;

    type Q = BigRational;

    fn cm() -> Quiver {
        Quiver::new("cm", &["v"], &[("a", "v", "v")]).unwrap().double()
    }

    #[test]
    fn bracket_examples() {
        let q = cm();
        let a: Poly<Q> = arrow_poly(&q, 0);
        let da = Derivation::<Q>::partial(&q, 0);
        let das = Derivation::<Q>::partial(&q, 1);
        assert!(da.bracket(&das).is_zero());
        // [a ∂_a, ∂_a] = −∂_a
        let ada = Derivation::single(&q, 0, a.clone());
        assert_eq!(ada.bracket(&da), da.scale(&-Q::int(1)));
        assert!(ada.bracket(&ada).is_zero());
        let _ = mul(&a, &a);
    }

    #[test]
    fn polyvector_round_trip() {
        let q = cm();
        let a: Poly<Q> = arrow_poly(&q, 0);
        let b: Poly<Q> = arrow_poly(&q, 1);
        let th = Derivation::single(&q, 1, mul(&a, &b) - mul(&b, &a)).add(&Derivation::single(&q, 0, a));
        let back = Derivation::from_polyvector(&q, &th.to_polyvector(&q));
        assert_eq!(back, th);
    }
}
