//! The canonical symplectic structure of a doubled quiver.

use crate::derivation::Derivation;
use crate::forms::{self, Form};
use crate::quiver::{Kind, Quiver};
use crate::scalar::Scalar;
use crate::word::{letter_poly, mul, Poly, Word};

use super::bivector::{Bivector, Term};

fn pairs(q: &Quiver) -> Vec<(u16, u16)> {
    q.original_arrows().filter_map(|a| q.dual(a).map(|s| (a, s))).collect()
}

/// `λ = Σ_a a* da`.
pub fn lambda<S: Scalar>(q: &Quiver) -> Form<S> {
    let mut out = Form::zero();
    for (a, s) in pairs(q) {
        out += &mul(&letter_poly(q.arrow_letter(s)), &letter_poly(q.letter(Kind::Diff, a)));
    }
    forms::dr_normalize(&out)
}

/// `ω = dλ = Σ_a da* da`.
pub fn omega<S: Scalar>(q: &Quiver) -> Form<S> {
    forms::dr_normalize(&forms::d(&lambda::<S>(q)))
}

/// `ω^♭(θ) = i_θ ω = Σ_a θ(a*) da − θ(a) da*` in `DR¹`.
pub fn flat<S: Scalar>(q: &Quiver, theta: &Derivation<S>) -> Form<S> {
    forms::dr_normalize(&forms::contract(theta, &omega::<S>(q)))
}

/// `ω^♯(Σ S_c dc) = Σ_a (−S_{a*} ∂_a + S_a ∂_{a*})`.
pub fn sharp<S: Scalar>(q: &Quiver, alpha: &Form<S>) -> Derivation<S> {
    let s = forms::dr1_coeffs(alpha);
    let mut out = Derivation::zero();
    for (a, d) in pairs(q) {
        if let Some(sd) = s.get(&d) {
            out.add_raw(a, &-sd.clone());
        }
        if let Some(sa) = s.get(&a) {
            out.add_raw(d, sa);
        }
    }
    out
}

/// `π₀ = Σ_a [∂_{a*}, ∂_a]`, whose map is `−ω^♯`.
pub fn pi0<S: Scalar>(q: &Quiver) -> Bivector<S> {
    let terms = pairs(q)
        .into_iter()
        .map(|(a, d)| Term {
            p: Poly::basis(Word::trivial(q.head(a))),
            a: d,
            r: Poly::basis(Word::trivial(q.tail(a))),
            b: a,
        })
        .collect();
    Bivector::from_terms(q, terms)
}

/// `θ_f = −ω^♯(df)`.
pub fn hamiltonian<S: Scalar>(q: &Quiver, f: &Poly<S>) -> Derivation<S> {
    sharp(q, &forms::dr_d(f)).scale(&-S::one())
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

    #[test]
    fn omega_and_inverse() {
        let q = cm();
        let w: Form<Q> = omega(&q);
        assert_eq!(w, forms::dr_normalize(&parse("d a^ d a", &q).unwrap()));
        assert!(forms::dr_d(&w).is_zero());
        for c in q.arrow_ids() {
            let th = Derivation::<Q>::partial(&q, c);
            assert_eq!(sharp(&q, &flat(&q, &th)), th);
        }
    }

    #[test]
    fn pi0_map_is_minus_sharp() {
        let q = cm();
        let p: Bivector<Q> = pi0(&q);
        assert_eq!(p.necklace(), &crate::polyvec::normalize(&parse("[@a^, @a]", &q).unwrap()));
        let al = forms::dr_normalize(&parse("a a^ d a + a^ a^ d a^ + 2 d a", &q).unwrap());
        assert_eq!(p.map(&q, &al), sharp(&q, &al).scale(&-Q::int(1)));
    }

    #[test]
    fn hamiltonian_of_a() {
        let q = cm();
        let th = hamiltonian(&q, &parse("a", &q).unwrap());
        assert_eq!(th, Derivation::<Q>::partial(&q, 1).scale(&-Q::int(1)));
    }
}
