//! Brackets of 1-forms induced by a bivector, their deformations by a
//! regular endomorphism, the concomitant, and the torsion of `N*`.

use crate::forms::{self, Form};
use crate::quiver::Quiver;
use crate::scalar::Scalar;
use crate::word::Poly;

use super::bivector::Bivector;
use super::endo::RegularEndo;

/// `{α, β}_π = L_{π̃α} β − L_{π̃β} α − d π(α, β)`.
pub fn bracket<S: Scalar>(q: &Quiver, pi: &Bivector<S>, alpha: &Form<S>, beta: &Form<S>) -> Form<S> {
    let ta = pi.map(q, alpha);
    let tb = pi.map(q, beta);
    let pab = forms::pair(beta, &ta);
    forms::dr_normalize(&(forms::lie(&ta, beta) - forms::lie(&tb, alpha) - forms::d(&pab)))
}

/// `{α, β}_{π,N*} = {N*α, β} + {α, N*β} − N*{α, β}`.
pub fn bracket_nstar<S: Scalar>(q: &Quiver, pi: &Bivector<S>, n: &RegularEndo<S>, alpha: &Form<S>, beta: &Form<S>) -> Form<S> {
    let na = n.transpose(alpha);
    let nb = n.transpose(beta);
    bracket(q, pi, &na, beta) + bracket(q, pi, alpha, &nb) - n.transpose(&bracket(q, pi, alpha, beta))
}

/// The second deformation, written out with `π^N = N∘π̃`:
/// `L_{Nπ̃α}β − L_{π̃α}N*β + N*L_{π̃α}β − (α ↔ β) − N* d π(α, β)`.
pub fn bracket_prime<S: Scalar>(q: &Quiver, pi: &Bivector<S>, n: &RegularEndo<S>, alpha: &Form<S>, beta: &Form<S>) -> Form<S> {
    let ta = pi.map(q, alpha);
    let tb = pi.map(q, beta);
    let nta = n.apply(&ta);
    let ntb = n.apply(&tb);
    let na = n.transpose(alpha);
    let nb = n.transpose(beta);
    let pab = forms::pair(beta, &ta);
    let raw = forms::lie(&nta, beta) - forms::lie(&ta, &nb) + n.transpose(&forms::lie(&ta, beta))
        - forms::lie(&ntb, alpha)
        + forms::lie(&tb, &na)
        - n.transpose(&forms::lie(&tb, alpha))
        - n.transpose(&forms::d(&pab));
    forms::dr_normalize(&raw)
}

/// `C(α, β) = ½ ({α, β}_{π,N*} − {α, β}′_π)`.
pub fn concomitant<S: Scalar>(q: &Quiver, pi: &Bivector<S>, n: &RegularEndo<S>, alpha: &Form<S>, beta: &Form<S>) -> Form<S> {
    (bracket_nstar(q, pi, n, alpha, beta) - bracket_prime(q, pi, n, alpha, beta)).scale(&S::half())
}

/// The concomitant in its expanded form
/// `L_{π̃α}N*β − L_{π̃β}N*α − d π(N*α, β) − N*(L_{π̃α}β − L_{π̃β}α − d π(α, β))`.
pub fn concomitant_expanded<S: Scalar>(q: &Quiver, pi: &Bivector<S>, n: &RegularEndo<S>, alpha: &Form<S>, beta: &Form<S>) -> Form<S> {
    let ta = pi.map(q, alpha);
    let tb = pi.map(q, beta);
    let na = n.transpose(alpha);
    let nb = n.transpose(beta);
    let pn: Poly<S> = forms::pair(beta, &pi.map(q, &na));
    let p: Poly<S> = forms::pair(beta, &ta);
    let inner = forms::lie(&ta, beta) - forms::lie(&tb, alpha) - forms::d(&p);
    let raw = forms::lie(&ta, &nb) - forms::lie(&tb, &na) - forms::d(&pn) - n.transpose(&forms::dr_normalize(&inner));
    forms::dr_normalize(&raw)
}

/// `T_{N*}(α, β) = {N*α, N*β} − N*{α, β}_{π,N*}`.
pub fn torsion_nstar<S: Scalar>(q: &Quiver, pi: &Bivector<S>, n: &RegularEndo<S>, alpha: &Form<S>, beta: &Form<S>) -> Form<S> {
    let na = n.transpose(alpha);
    let nb = n.transpose(beta);
    bracket(q, pi, &na, &nb) - n.transpose(&bracket_nstar(q, pi, n, alpha, beta))
}

/// The four-term residue
/// `⟨T_{N*}(α,β), θ⟩ + ⟨α, T_N(π̃β, θ)⟩ − ⟨C(N*α, β), θ⟩ + ⟨C(α,β), Nθ⟩`.
pub fn ksm_residue<S: Scalar>(
    q: &Quiver,
    pi: &Bivector<S>,
    n: &RegularEndo<S>,
    alpha: &Form<S>,
    beta: &Form<S>,
    theta: &crate::derivation::Derivation<S>,
) -> Poly<S> {
    let na = n.transpose(alpha);
    let t1 = forms::pair(&torsion_nstar(q, pi, n, alpha, beta), theta);
    let t2 = forms::pair(alpha, &n.torsion(&pi.map(q, beta), theta));
    let t3 = forms::pair(&concomitant(q, pi, n, &na, beta), theta);
    let t4 = forms::pair(&concomitant(q, pi, n, alpha, beta), &n.apply(theta));
    t1 + t2 - t3 + t4
}
