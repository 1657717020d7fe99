//! Relative noncommutative differential forms.
//!
//! `Ω_B(kQ)` is realised as the free graded path algebra on the letters `c`
//! (degree 0) and `dc` (degree 1), multiplied by concatenation. The classes in
//! `DR_B` are graded cyclic words, with degree-one forms written as `Σ r_c dc`.

use std::collections::BTreeMap;

use crate::derivation::{substitute_at, Derivation};
use crate::lin::Lin;
use crate::necklace;
use crate::quiver::{ArrowId, Kind, Quiver};
use crate::scalar::Scalar;
use crate::word::{mul, Poly, Word};

pub type Form<S> = Poly<S>;

pub fn word_degree(w: &Word) -> usize {
    w.count(Kind::Diff)
}

/// Degree of a homogeneous form (`None` for zero or mixed degree).
pub fn degree<S: Scalar>(u: &Form<S>) -> Option<usize> {
    let mut it = u.keys().map(word_degree);
    let first = it.next()?;
    it.all(|d| d == first).then_some(first)
}

/// Keep the degree-`r` part.
pub fn part<S: Scalar>(u: &Form<S>, r: usize) -> Form<S> {
    u.map_terms(|w| (word_degree(w) == r).then(|| (w.clone(), S::one())))
}

/// `d`, the degree-one graded derivation with `d(c) = dc`, `d(dc) = 0`.
pub fn d<S: Scalar>(u: &Form<S>) -> Form<S> {
    let mut out = Form::zero();
    for (w, coef) in u.iter() {
        let ls = w.letters();
        let mut odd = false;
        for (i, l) in ls.iter().enumerate() {
            match l.kind {
                Kind::Arrow => {
                    let mut v: crate::word::Letters = ls.iter().copied().collect();
                    v[i] = l.with_kind(Kind::Diff);
                    out.add_term(Word::from_letters_at(&v, w.head()), coef.clone().signed(odd));
                }
                Kind::Diff => odd = !odd,
                _ => {}
            }
        }
    }
    out
}

/// `i_θ`: replaces one `dc` by `θ(c)` with sign `(−1)^{#d before it}`.
pub fn contract<S: Scalar>(theta: &Derivation<S>, u: &Form<S>) -> Form<S> {
    let mut out = Form::zero();
    for (w, coef) in u.iter() {
        let ls = w.letters();
        let mut odd = false;
        for (i, l) in ls.iter().enumerate() {
            if l.kind == Kind::Diff {
                let img = theta.component(l.arrow);
                if !img.is_zero() {
                    substitute_at(ls, i, &img, &coef.clone().signed(odd), &mut out);
                }
                odd = !odd;
            }
        }
    }
    out
}

/// `L_θ = d∘i_θ + i_θ∘d`.
pub fn lie<S: Scalar>(theta: &Derivation<S>, u: &Form<S>) -> Form<S> {
    d(&contract(theta, u)) + contract(theta, &d(u))
}

/// `L_θ` computed as the degree-zero derivation with `c ↦ θ(c)`, `dc ↦ d θ(c)`.
pub fn lie_direct<S: Scalar>(theta: &Derivation<S>, u: &Form<S>) -> Form<S> {
    let mut out = Form::zero();
    for (w, coef) in u.iter() {
        let ls = w.letters();
        for (i, l) in ls.iter().enumerate() {
            let img = theta.component(l.arrow);
            match l.kind {
                Kind::Arrow => substitute_at(ls, i, &img, coef, &mut out),
                Kind::Diff => substitute_at(ls, i, &d(&img), coef, &mut out),
                _ => {}
            }
        }
    }
    out
}

/// The Lie-derivative analogue of a degree-`−1` derivation commutator check:
/// `[L_θ, L_η] u`.
pub fn lie_commutator<S: Scalar>(theta: &Derivation<S>, eta: &Derivation<S>, u: &Form<S>) -> Form<S> {
    lie(theta, &lie(eta, u)) - lie(eta, &lie(theta, u))
}

/// Canonical representative in `DR`: necklaces in degree 0, `Σ r_c dc` in
/// degree 1 and the least graded rotation above.
pub fn dr_normalize<S: Scalar>(u: &Form<S>) -> Form<S> {
    let mut out = Form::zero();
    for (w, coef) in u.iter() {
        match word_degree(w) {
            1 => {
                if !w.is_closed() {
                    continue;
                }
                let i = w.letters().iter().position(|l| l.kind == Kind::Diff).unwrap();
                out.add_term(w.rotate(i + 1), coef.clone());
            }
            _ => {
                if let Some((v, neg)) = necklace::cyclic_normal(w, Kind::Diff) {
                    out.add_term(v, coef.clone().signed(neg));
                }
            }
        }
    }
    out
}

/// `d` on `DR`, landing on canonical representatives.
pub fn dr_d<S: Scalar>(u: &Form<S>) -> Form<S> {
    dr_normalize(&d(u))
}

/// Coefficients `r_c` of a canonical degree-one form `Σ r_c dc`.
pub fn dr1_coeffs<S: Scalar>(alpha: &Form<S>) -> BTreeMap<ArrowId, Poly<S>> {
    let mut out: BTreeMap<ArrowId, Poly<S>> = BTreeMap::new();
    for (w, coef) in dr_normalize(alpha).iter() {
        let ls = w.letters();
        let last = *ls.last().expect("degree-one word");
        debug_assert_eq!(last.kind, Kind::Diff);
        let r = Word::from_letters_at(&ls[..ls.len() - 1], last.head);
        out.entry(last.arrow).or_default().add_term(r, coef.clone());
    }
    out.retain(|_, p| !p.is_zero());
    out
}

/// `Σ r_c dc` from coefficients.
pub fn dr1_from_coeffs<S: Scalar>(q: &Quiver, coeffs: &BTreeMap<ArrowId, Poly<S>>) -> Form<S> {
    let mut out = Form::zero();
    for (c, r) in coeffs {
        out += &mul(r, &crate::word::letter_poly(q.letter(Kind::Diff, *c)));
    }
    dr_normalize(&out)
}

/// `p · dc`.
pub fn one_form<S: Scalar>(q: &Quiver, p: &Poly<S>, c: ArrowId) -> Form<S> {
    dr_normalize(&mul(p, &crate::word::letter_poly(q.letter(Kind::Diff, c))))
}

/// Class in `DR⁰` (cyclic words).
pub fn dr0<S: Scalar>(f: &Poly<S>) -> Poly<S> {
    necklace::normalize(f, Kind::Diff)
}

/// `⟨α, θ⟩ = Σ r_c p_c` in `DR⁰`.
pub fn pair<S: Scalar>(alpha: &Form<S>, theta: &Derivation<S>) -> Poly<S> {
    let mut out = Poly::zero();
    for (c, r) in dr1_coeffs(alpha) {
        let p = theta.component(c);
        if !p.is_zero() {
            out += &mul(&r, &p);
        }
    }
    dr0(&out)
}

/// `⟨α, θ⟩` computed as `i_θ(α)` modulo commutators.
pub fn pair_by_contraction<S: Scalar>(alpha: &Form<S>, theta: &Derivation<S>) -> Poly<S> {
    dr0(&contract(theta, alpha))
}

/// Tensor words `[p₀ ⊗ p₁ ⊗ … ⊗ p_r]`, kept only as an independent check on
/// the product and differential.
pub mod tensor {
    use super::*;

    /// Slots `p₀, …, p_r`; slots after the first must be nontrivial paths.
    pub type TensorWord = Vec<Word>;

    fn valid(t: &TensorWord) -> bool {
        t.iter().skip(1).all(|w| !w.is_empty()) && t.windows(2).all(|w| w[0].tail() == w[1].head())
    }

    pub fn tensor<S: Scalar>(slots: Vec<Word>) -> Lin<TensorWord, S> {
        if valid(&slots) {
            Lin::basis(slots)
        } else {
            Lin::zero()
        }
    }

    /// `p₀ d(p₁) ⋯ d(p_r)`.
    pub fn to_form<S: Scalar>(t: &Lin<TensorWord, S>) -> Form<S> {
        let mut out = Form::zero();
        for (slots, coef) in t.iter() {
            let mut acc = Form::term(slots[0].clone(), coef.clone());
            for s in &slots[1..] {
                acc = mul(&acc, &d(&Form::basis(s.clone())));
            }
            out += &acc;
        }
        out
    }

    /// `[a₀⊗…⊗a_r][a_{r+1}⊗…⊗a_s] = Σ_{i=0}^{r} (−1)^{r−i} [a₀⊗…⊗a_i a_{i+1}⊗…⊗a_s]`.
    pub fn product<S: Scalar>(u: &Lin<TensorWord, S>, v: &Lin<TensorWord, S>) -> Lin<TensorWord, S> {
        let mut out = Lin::zero();
        for (a, ca) in u.iter() {
            for (b, cb) in v.iter() {
                let r = a.len() - 1;
                let all: Vec<&Word> = a.iter().chain(b.iter()).collect();
                for i in 0..=r {
                    let Some(m) = all[i].concat(all[i + 1]) else { continue };
                    let mut slots: Vec<Word> = all[..i].iter().map(|w| (*w).clone()).collect();
                    slots.push(m);
                    slots.extend(all[i + 2..].iter().map(|w| (*w).clone()));
                    if valid(&slots) {
                        out.add_term(slots, (ca.clone() * cb.clone()).signed((r - i) % 2 == 1));
                    }
                }
            }
        }
        out
    }

    /// `d[p₀⊗…] = [1⊗p₀⊗…]` with `1 = Σ e_i`.
    pub fn differential<S: Scalar>(t: &Lin<TensorWord, S>) -> Lin<TensorWord, S> {
        let mut out = Lin::zero();
        for (slots, coef) in t.iter() {
            let mut s = vec![Word::trivial(slots[0].head())];
            s.extend(slots.iter().cloned());
            if valid(&s) {
                out.add_term(s, coef.clone());
            }
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::word::{arrow_poly, letter_poly};
    use num_rational::BigRational;

    type Q = BigRational;

    fn cm() -> Quiver {
        Quiver::new("cm", &["v"], &[("a", "v", "v")]).unwrap().double()
    }

    fn da(q: &Quiver, c: ArrowId) -> Form<Q> {
        letter_poly(q.letter(Kind::Diff, c))
    }

    #[test]
    fn d_of_tautological_form() {
        let q = cm();
        let a: Poly<Q> = arrow_poly(&q, 0);
        let s: Poly<Q> = arrow_poly(&q, 1);
        let lambda = mul(&s, &da(&q, 0));
        assert_eq!(d(&lambda), mul(&da(&q, 1), &da(&q, 0)));
        assert!(d(&da(&q, 0)).is_zero());
        // d(a* a da) = da* a da + a* da da
        let lam_l = mul(&mul(&s, &a), &da(&q, 0));
        let expect = mul(&mul(&da(&q, 1), &a), &da(&q, 0)) + mul(&mul(&s, &da(&q, 0)), &da(&q, 0));
        assert_eq!(d(&lam_l), expect);
    }

    #[test]
    fn contraction_of_deformed_symplectic_form() {
        let q = cm();
        let a: Poly<Q> = arrow_poly(&q, 0);
        let s: Poly<Q> = arrow_poly(&q, 1);
        let omega_l = d(&mul(&mul(&s, &a), &da(&q, 0)));
        // θ = u ∂_a + v ∂_{a*} with u = a a*, v = a*
        let u = mul(&a, &s);
        let v = s.clone();
        let th = Derivation::single(&q, 0, u.clone()).add(&Derivation::single(&q, 1, v.clone()));
        let got = dr_normalize(&contract(&th, &omega_l));
        let coef_a = mul(&v, &a) + mul(&s, &u) - mul(&u, &s);
        let coef_s = -mul(&a, &u);
        let expect = dr_normalize(&(mul(&coef_a, &da(&q, 0)) + mul(&coef_s, &da(&q, 1))));
        assert_eq!(got, expect);
    }

    #[test]
    fn contraction_of_generator_is_unit() {
        let q = cm();
        let th = Derivation::<Q>::partial(&q, 0);
        assert_eq!(contract(&th, &da(&q, 0)), Poly::basis(Word::trivial(0)));
        assert!(contract(&th, &arrow_poly(&q, 0)).is_zero());
        assert!(contract(&th, &da(&q, 1)).is_zero());
    }

    #[test]
    fn pairing_examples() {
        let q = cm();
        let a: Poly<Q> = arrow_poly(&q, 0);
        let s: Poly<Q> = arrow_poly(&q, 1);
        let th = Derivation::single(&q, 0, a.clone());
        let alpha = one_form(&q, &s, 0);
        assert_eq!(pair(&alpha, &th), dr0(&mul(&s, &a)));
        assert_eq!(pair(&da(&q, 0), &Derivation::partial(&q, 0)), Poly::basis(Word::trivial(0)));
        assert!(pair(&da(&q, 0), &Derivation::partial(&q, 1)).is_zero());
    }

    #[test]
    fn cyclic_moves_in_dr() {
        let q = cm();
        let a: Poly<Q> = arrow_poly(&q, 0);
        let s: Poly<Q> = arrow_poly(&q, 1);
        // a da* a* ≡ a* a da*
        let lhs = mul(&mul(&a, &da(&q, 1)), &s);
        let rhs = mul(&mul(&s, &a), &da(&q, 1));
        assert_eq!(dr_normalize(&lhs), dr_normalize(&rhs));
        // da* da ≡ −da da*
        let x = mul(&da(&q, 1), &da(&q, 0));
        let y = -mul(&da(&q, 0), &da(&q, 1));
        assert_eq!(dr_normalize(&x), dr_normalize(&y));
        assert!(!dr_normalize(&x).is_zero());
        // a a* ≡ a* a
        assert_eq!(dr0(&mul(&a, &s)), dr0(&mul(&s, &a)));
    }

    #[test]
    fn tensor_oracle_small_cases() {
        let q = cm();
        let a = Word::letter(q.arrow_letter(0));
        let s = Word::letter(q.arrow_letter(1));
        let e = Word::trivial(0);
        let u = tensor::tensor::<Q>(vec![s.clone(), a.clone()]);
        let v = tensor::tensor::<Q>(vec![e.clone()]);
        assert_eq!(tensor::to_form(&tensor::product(&u, &v)), mul(&tensor::to_form(&u), &tensor::to_form(&v)));
        let w = tensor::tensor::<Q>(vec![e, a]);
        assert_eq!(tensor::to_form(&tensor::product(&w, &w)), mul(&da(&q, 0), &da(&q, 0)));
        assert_eq!(tensor::to_form(&tensor::differential(&u)), d(&tensor::to_form(&u)));
    }
}
