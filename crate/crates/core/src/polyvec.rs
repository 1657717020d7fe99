//! Noncommutative polyvector fields: necklaces in arrows and `∂` symbols,
//! the superderivatives `D_y`, and the Schouten bracket.

use crate::lin::Lin;
use crate::necklace;
use crate::quiver::{Kind, Letter, Quiver};
use crate::scalar::Scalar;
use crate::word::{mul, Poly, Word};

/// A combination of necklaces; grade is the number of `∂` letters.
pub type PolyVector<S> = Lin<Word, S>;

pub fn word_grade(w: &Word) -> usize {
    w.count(Kind::Vector)
}

/// Grade of a homogeneous polyvector (`None` for zero or mixed grade).
pub fn grade<S: Scalar>(p: &PolyVector<S>) -> Option<usize> {
    let mut it = p.keys().map(word_grade);
    let first = it.next()?;
    it.all(|g| g == first).then_some(first)
}

/// Split into homogeneous components, lowest grade first.
pub fn homogeneous_parts<S: Scalar>(p: &PolyVector<S>) -> Vec<(usize, PolyVector<S>)> {
    let mut parts: std::collections::BTreeMap<usize, PolyVector<S>> = Default::default();
    for (w, c) in p.iter() {
        parts.entry(word_grade(w)).or_default().add_term(w.clone(), c.clone());
    }
    parts.into_iter().collect()
}

/// Necklace normal form.
pub fn normalize<S: Scalar>(p: &Lin<Word, S>) -> PolyVector<S> {
    necklace::normalize(p, Kind::Vector)
}

/// `D_y(x₁…x_N) = Σ_{x_i = y} (−1)^{n_i m_i} x_{i+1}…x_N x₁…x_{i−1}`, with
/// `n_i` (resp. `m_i`) the number of `∂` letters among `x₁…x_i` (resp. after
/// `x_i`). The output is left as plain words.
pub fn directional<S: Scalar>(y: Letter, p: &Lin<Word, S>) -> Poly<S> {
    let mut out = Poly::zero();
    for (w, coef) in p.iter() {
        directional_word_into(y, w, coef, &mut out);
    }
    out
}

fn directional_word_into<S: Scalar>(y: Letter, w: &Word, coef: &S, out: &mut Poly<S>) {
    let ls = w.letters();
    let total = w.count(Kind::Vector);
    let mut n = 0usize;
    for (i, l) in ls.iter().enumerate() {
        if l.kind == Kind::Vector {
            n += 1;
        }
        if *l != y {
            continue;
        }
        let m = total - n;
        let w2 = Word::join(&[&ls[i + 1..], &ls[..i]], y.tail);
        out.add_term(w2, coef.clone().signed((n * m) % 2 == 1));
    }
}

/// Schouten bracket of homogeneous polyvectors of grades `p` and `q`.
fn schouten_homogeneous<S: Scalar>(q: &Quiver, lam: &PolyVector<S>, p_: usize, xi: &PolyVector<S>, q_: usize) -> PolyVector<S> {
    let sign_neg = ((p_ + 1) * (q_ + 1)).is_multiple_of(2);
    let mut raw = Poly::zero();
    for a in q.arrow_ids() {
        let dv = q.letter(Kind::Vector, a);
        let da = q.arrow_letter(a);
        let l1 = directional(dv, lam);
        if !l1.is_zero() {
            let r1 = directional(da, xi);
            raw += &mul(&l1, &r1);
        }
        let l2 = directional(dv, xi);
        if !l2.is_zero() {
            let r2 = directional(da, lam);
            let t = mul(&l2, &r2);
            // subtract (−1)^{(p+1)(q+1)} D_{∂a}(ξ) D_a(λ)
            if sign_neg {
                raw -= &t;
            } else {
                raw += &t;
            }
        }
    }
    normalize(&raw)
}

/// `[λ, ξ] = Σ_a D_{∂_a}(λ) D_a(ξ) − (−1)^{(p+1)(q+1)} D_{∂_a}(ξ) D_a(λ)`,
/// extended bilinearly over homogeneous parts.
pub fn schouten<S: Scalar>(q: &Quiver, lam: &PolyVector<S>, xi: &PolyVector<S>) -> PolyVector<S> {
    let mut out = PolyVector::zero();
    for (p_, l) in homogeneous_parts(lam) {
        for (q_, x) in homogeneous_parts(xi) {
            out += &schouten_homogeneous(q, &l, p_, &x, q_);
        }
    }
    out
}

/// Necklace derivative `∂f/∂a`: every occurrence of `a` rotated to the front
/// and removed. A path from `t(a)`-side head to `h(a)`-side tail.
pub fn necklace_derivative<S: Scalar>(q: &Quiver, f: &PolyVector<S>, a: crate::quiver::ArrowId) -> Poly<S> {
    directional(q.arrow_letter(a), f)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::word::arrow_poly;
    use num_rational::BigRational;

    type Q = BigRational;

    fn cm() -> Quiver {
        Quiver::new("cm", &["v"], &[("a", "v", "v")]).unwrap().double()
    }

    fn lp(l: Letter) -> Poly<Q> {
        crate::word::letter_poly(l)
    }

    #[test]
    fn directional_examples() {
        let q = cm();
        let da = q.letter(Kind::Vector, 0);
        let ds = q.letter(Kind::Vector, 1);
        let w = mul(&lp(ds), &lp(da));
        assert_eq!(directional(da, &w), lp(ds));
        let a: Poly<Q> = arrow_poly(&q, 0);
        let a3 = mul(&mul(&a, &a), &a);
        let a2 = mul(&a, &a);
        assert_eq!(directional(q.arrow_letter(0), &a3), a2.scale(&Q::int(3)));
        assert!(directional(q.arrow_letter(1), &a3).is_zero());
    }

    #[test]
    fn constant_bivector_self_bracket_vanishes() {
        let q = cm();
        let da = q.letter(Kind::Vector, 0);
        let ds = q.letter(Kind::Vector, 1);
        let pi0 = normalize(&(mul(&lp(ds), &lp(da)) - mul(&lp(da), &lp(ds))));
        assert!(!pi0.is_zero());
        assert!(schouten(&q, &pi0, &pi0).is_zero());
    }

    #[test]
    fn functions_commute() {
        let q = cm();
        let a: Poly<Q> = arrow_poly(&q, 0);
        let s: Poly<Q> = arrow_poly(&q, 1);
        let f = normalize(&mul(&a, &s));
        let g = normalize(&mul(&mul(&a, &a), &s));
        assert!(schouten(&q, &f, &g).is_zero());
    }

    #[test]
    fn derivation_acts_on_function() {
        // [θ, f] for grade 1 θ = ∂_a and f = a a: D_{∂a}(θ) D_a(f) = 2a up to sign
        let q = cm();
        let a: Poly<Q> = arrow_poly(&q, 0);
        let theta = normalize(&lp(q.letter(Kind::Vector, 0)));
        let f = normalize(&mul(&a, &a));
        let r = schouten(&q, &theta, &f);
        assert_eq!(r, normalize(&a.scale(&Q::int(2))));
    }

    #[test]
    fn necklace_derivative_examples() {
        let q = cm();
        let a: Poly<Q> = arrow_poly(&q, 0);
        let s: Poly<Q> = arrow_poly(&q, 1);
        let a2 = mul(&a, &a);
        let j3 = normalize(&mul(&a2, &s));
        assert_eq!(necklace_derivative(&q, &j3, 1), a2);
        assert!(necklace_derivative(&q, &normalize(&a2), 1).is_zero());
    }
}
