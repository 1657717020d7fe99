//! Regular endomorphisms of `Der(Q)`: tensors of type (1,1) stored through
//! the derivation `d^N`, one degree-one form `d^N c` per arrow.

use std::collections::BTreeMap;

use crate::derivation::Derivation;
use crate::error::{Error, Result};
use crate::forms::{self, Form};
use crate::quiver::{ArrowId, Kind, Quiver};
use crate::scalar::Scalar;
use crate::word::{letter_poly, mul};

use super::symplectic;

#[derive(Clone, Debug, PartialEq)]
pub struct RegularEndo<S: Scalar> {
    dn: BTreeMap<ArrowId, Form<S>>,
}

impl<S: Scalar> RegularEndo<S> {
    /// From the forms `d^N c`; every word must have degree one.
    pub fn new(dn: BTreeMap<ArrowId, Form<S>>) -> Result<Self> {
        for (c, u) in &dn {
            if u.keys().any(|w| forms::word_degree(w) != 1) {
                return Err(Error::NotRegular(format!("d^N of arrow #{c} is not a degree-one form")));
            }
        }
        let dn = dn.into_iter().filter(|(_, u)| !u.is_zero()).collect();
        Ok(RegularEndo { dn })
    }

    pub fn identity(q: &Quiver) -> Self {
        let dn = q.arrow_ids().map(|c| (c, letter_poly(q.letter(Kind::Diff, c)))).collect();
        RegularEndo { dn }
    }

    pub fn zero() -> Self {
        RegularEndo { dn: BTreeMap::new() }
    }

    /// `d^N c`.
    pub fn dn(&self, c: ArrowId) -> Form<S> {
        self.dn.get(&c).cloned().unwrap_or_default()
    }

    /// `N(θ)(c) = i_θ(d^N c)`.
    pub fn apply(&self, theta: &Derivation<S>) -> Derivation<S> {
        let mut out = Derivation::zero();
        for (c, u) in &self.dn {
            out.add_raw(*c, &forms::contract(theta, u));
        }
        out
    }

    /// `N^k(θ)`.
    pub fn apply_pow(&self, theta: &Derivation<S>, k: usize) -> Derivation<S> {
        (0..k).fold(theta.clone(), |t, _| self.apply(&t))
    }

    /// `N*(Σ r_c dc) = Σ r_c d^N c` in `DR¹`.
    pub fn transpose(&self, alpha: &Form<S>) -> Form<S> {
        let mut out = Form::zero();
        for (c, r) in forms::dr1_coeffs(alpha) {
            if let Some(u) = self.dn.get(&c) {
                out += &mul(&r, u);
            }
        }
        forms::dr_normalize(&out)
    }

    /// Recover `d^N` from an arbitrary `B`-linear `F : Der → Der` by applying
    /// it to the universal derivation `c ↦ ⟨c⟩` and reading every slot letter
    /// `⟨c⟩` as `dc`. Fails when the image is not linear in the slots.
    pub fn from_map<F>(q: &Quiver, f: F) -> Result<Self>
    where
        F: Fn(&Derivation<S>) -> Derivation<S>,
    {
        let mut univ = Derivation::zero();
        for c in q.arrow_ids() {
            univ.add_raw(c, &letter_poly(q.letter(Kind::Slot, c)));
        }
        let img = f(&univ);
        let mut dn = BTreeMap::new();
        for (c, p) in img.components() {
            let u: Form<S> = p.map_terms(|w| {
                Some((w.map_letters(|l| if l.kind == Kind::Slot { l.with_kind(Kind::Diff) } else { l }), S::one()))
            });
            if p.keys().any(|w| w.count(Kind::Slot) != 1 || w.count(Kind::Diff) != 0) {
                return Err(Error::NotRegular(format!(
                    "image at `{}` is not linear in the derivation",
                    q.arrow(c).name
                )));
            }
            dn.insert(c, u);
        }
        RegularEndo::new(dn)
    }

    /// The complete lift `N(θ) = ω^♯(i_θ(dλ′))` of a degree-one form.
    pub fn complete_lift(q: &Quiver, lambda: &Form<S>) -> Result<Self> {
        if lambda.keys().any(|w| forms::word_degree(w) != 1) {
            return Err(Error::Kind {
                expected: "a degree-one form".into(),
                found: "a form of another degree".into(),
            });
        }
        let dl = forms::d(lambda);
        RegularEndo::from_map(q, |th| symplectic::sharp(q, &forms::dr_normalize(&forms::contract(th, &dl))))
    }

    /// `N∘M`, read back through [`RegularEndo::from_map`].
    pub fn compose(&self, q: &Quiver, m: &Self) -> Result<Self> {
        RegularEndo::from_map(q, |th| self.apply(&m.apply(th)))
    }

    /// `[θ, η]_N = [Nθ, η] + [θ, Nη] − N[θ, η]`.
    pub fn deformed_bracket(&self, theta: &Derivation<S>, eta: &Derivation<S>) -> Derivation<S> {
        let nt = self.apply(theta);
        let ne = self.apply(eta);
        nt.bracket(eta).add(&theta.bracket(&ne)).sub(&self.apply(&theta.bracket(eta)))
    }

    /// `T_N(θ, η) = [Nθ, Nη] − N([θ, η]_N)`.
    pub fn torsion(&self, theta: &Derivation<S>, eta: &Derivation<S>) -> Derivation<S> {
        let nt = self.apply(theta);
        let ne = self.apply(eta);
        nt.bracket(&ne).sub(&self.apply(&self.deformed_bracket(theta, eta)))
    }

    pub fn to_string_in(&self, q: &Quiver) -> String {
        let mut parts = Vec::new();
        for c in q.arrow_ids() {
            let u = self.dn(c);
            parts.push(format!("d^N {} = {}", q.arrow(c).name, crate::syntax::print_lin(&u, q)));
        }
        parts.join("\n")
    }
}
