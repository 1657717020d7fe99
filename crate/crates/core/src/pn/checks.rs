//! Verifications over a test family. Each returns a [`Verdict`] carrying the
//! first nonzero residue in canonical syntax.

use rayon::prelude::*;

use crate::derivation::Derivation;
use crate::error::Result;
use crate::forms::{self, Form};
use crate::polyvec::{self, PolyVector};
use crate::quiver::Quiver;
use crate::scalar::Scalar;
use crate::syntax::print_lin;
use crate::word::Poly;

use super::bivector::{map_to_bivector, Bivector};
use super::brackets;
use super::endo::RegularEndo;
use super::family::Family;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Verdict {
    pub pass: bool,
    pub cases: usize,
    pub residue: Option<String>,
}

/// A vacuous pass.
impl Default for Verdict {
    fn default() -> Self {
        Verdict::from_first(0, None)
    }
}

impl Verdict {
    pub fn from_first(cases: usize, residue: Option<String>) -> Self {
        Verdict {
            pass: residue.is_none(),
            cases,
            residue,
        }
    }

    /// Combine two verdicts: the first failure wins.
    pub fn and(self, o: Verdict) -> Verdict {
        Verdict {
            pass: self.pass && o.pass,
            cases: self.cases + o.cases,
            residue: self.residue.or(o.residue),
        }
    }
}

/// Run `f` over `0..n` and keep the first residue by index.
fn first_residue<F>(n: usize, f: F) -> Verdict
where
    F: Fn(usize) -> Option<String> + Sync + Send,
{
    let r = (0..n).into_par_iter().filter_map(|i| f(i).map(|s| (i, s))).min_by_key(|(i, _)| *i);
    Verdict::from_first(n, r.map(|(_, s)| s))
}

fn deriv_residue<S: Scalar>(q: &Quiver, d: &Derivation<S>) -> Option<String> {
    (!d.is_zero()).then(|| d.to_string_in(q))
}

fn lin_residue<S: Scalar>(q: &Quiver, p: &Poly<S>) -> Option<String> {
    (!p.is_zero()).then(|| print_lin(p, q))
}

/// `[π, π]`, and whether it vanishes.
pub fn is_double_poisson<S: Scalar>(q: &Quiver, pi: &Bivector<S>) -> (bool, PolyVector<S>) {
    let r = polyvec::schouten(q, pi.necklace(), pi.necklace());
    (r.is_zero(), r)
}

/// `[π_j, π_l] = 0` for every pair `j ≤ l` of the list.
pub fn pairwise_schouten<S: Scalar>(q: &Quiver, list: &[Bivector<S>]) -> Verdict {
    let pairs: Vec<(usize, usize)> = (0..list.len()).flat_map(|j| (j..list.len()).map(move |l| (j, l))).collect();
    first_residue(pairs.len(), |i| {
        let (j, l) = pairs[i];
        let r = polyvec::schouten(q, list[j].necklace(), list[l].necklace());
        lin_residue(q, &r).map(|s| format!("[pi{j}, pi{l}] = {s}"))
    })
}

/// `⟨β, π̃α⟩ + ⟨α, π̃β⟩ = 0` on pairs of family forms.
pub fn skewness<S: Scalar>(q: &Quiver, pi: &Bivector<S>, fam: &Family<S>) -> Verdict {
    let maps: Vec<Derivation<S>> = fam.forms.iter().map(|a| pi.map(q, a)).collect();
    let n = fam.forms.len();
    first_residue(n * n, |k| {
        let (i, j) = (k / n, k % n);
        let r = forms::pair(&fam.forms[j], &maps[i]) + forms::pair(&fam.forms[i], &maps[j]);
        lin_residue(q, &r)
    })
}

/// `N∘π̃ = π̃∘N*` on family forms.
pub fn algebraic_compat<S: Scalar>(q: &Quiver, pi: &Bivector<S>, n: &RegularEndo<S>, fam: &Family<S>) -> Verdict {
    first_residue(fam.forms.len(), |i| {
        let a = &fam.forms[i];
        deriv_residue(q, &n.apply(&pi.map(q, a)).sub(&pi.map(q, &n.transpose(a))))
    })
}

/// `⟨N*α, θ⟩ = ⟨α, Nθ⟩` on family pairs.
pub fn transpose_check<S: Scalar>(q: &Quiver, n: &RegularEndo<S>, fam: &Family<S>) -> Verdict {
    let nd: Vec<Derivation<S>> = fam.derivations.iter().map(|t| n.apply(t)).collect();
    let nf: Vec<Form<S>> = fam.forms.iter().map(|a| n.transpose(a)).collect();
    let m = fam.derivations.len();
    first_residue(fam.forms.len() * m, |k| {
        let (i, j) = (k / m, k % m);
        let r = forms::pair(&nf[i], &fam.derivations[j]) - forms::pair(&fam.forms[i], &nd[j]);
        lin_residue(q, &r)
    })
}

/// `T_N = 0` on unordered pairs of family derivations.
pub fn torsion<S: Scalar>(q: &Quiver, n: &RegularEndo<S>, fam: &Family<S>) -> Verdict {
    let ds = &fam.derivations;
    let nd: Vec<Derivation<S>> = ds.iter().map(|t| n.apply(t)).collect();
    let m = ds.len();
    let pairs: Vec<(usize, usize)> = (0..m).flat_map(|i| (i + 1..m).map(move |j| (i, j))).collect();
    first_residue(pairs.len(), |k| {
        let (i, j) = pairs[k];
        // [Nθ,Nη] − N([Nθ,η] + [θ,Nη] − N[θ,η])
        let def = nd[i].bracket(&ds[j]).add(&ds[i].bracket(&nd[j])).sub(&n.apply(&ds[i].bracket(&ds[j])));
        deriv_residue(q, &nd[i].bracket(&nd[j]).sub(&n.apply(&def)))
    })
}

/// `C_{(π,N)} = 0` on unordered pairs of family forms; the displayed and the
/// expanded expressions must agree as well.
pub fn concomitant<S: Scalar>(q: &Quiver, pi: &Bivector<S>, n: &RegularEndo<S>, fam: &Family<S>) -> Verdict {
    let fs = &fam.forms;
    let m = fs.len();
    let pairs: Vec<(usize, usize)> = (0..m).flat_map(|i| (i..m).map(move |j| (i, j))).collect();
    first_residue(pairs.len(), |k| {
        let (i, j) = pairs[k];
        let c = brackets::concomitant(q, pi, n, &fs[i], &fs[j]);
        if let Some(s) = lin_residue(q, &c) {
            return Some(format!("C = {s}"));
        }
        let e = brackets::concomitant_expanded(q, pi, n, &fs[i], &fs[j]);
        lin_residue(q, &e).map(|s| format!("expanded C = {s}"))
    })
}

/// `π̃{α, β}_π = [π̃α, π̃β]` on unordered pairs of family forms.
pub fn morphism<S: Scalar>(q: &Quiver, pi: &Bivector<S>, fam: &Family<S>) -> Verdict {
    let fs = &fam.forms;
    let maps: Vec<Derivation<S>> = fs.iter().map(|a| pi.map(q, a)).collect();
    let m = fs.len();
    let pairs: Vec<(usize, usize)> = (0..m).flat_map(|i| (i + 1..m).map(move |j| (i, j))).collect();
    first_residue(pairs.len(), |k| {
        let (i, j) = pairs[k];
        let lhs = pi.map(q, &brackets::bracket(q, pi, &fs[i], &fs[j]));
        deriv_residue(q, &lhs.sub(&maps[i].bracket(&maps[j])))
    })
}

/// The four-term identity over all triples `(α, β, θ)` of the family.
/// Quantities depending on fewer arguments are computed once; pairings with
/// a vanishing argument are skipped since they are zero.
pub fn ksm<S: Scalar>(q: &Quiver, pi: &Bivector<S>, n: &RegularEndo<S>, fam: &Family<S>) -> Verdict {
    let fs = &fam.forms;
    let ds = &fam.derivations;
    let (mf, md) = (fs.len(), ds.len());
    let nstar: Vec<Form<S>> = fs.iter().map(|a| n.transpose(a)).collect();
    let maps: Vec<Derivation<S>> = fs.iter().map(|a| pi.map(q, a)).collect();
    let nd: Vec<Derivation<S>> = ds.iter().map(|t| n.apply(t)).collect();

    struct PairData<S: Scalar> {
        tn: Form<S>,
        c_na: Form<S>,
        c: Form<S>,
    }
    let pair_data: Vec<PairData<S>> = (0..mf * mf)
        .into_par_iter()
        .map(|k| {
            let (i, j) = (k / mf, k % mf);
            let (a, b) = (&fs[i], &fs[j]);
            PairData {
                tn: brackets::torsion_nstar(q, pi, n, a, b),
                c_na: brackets::concomitant(q, pi, n, &nstar[i], b),
                c: brackets::concomitant(q, pi, n, a, b),
            }
        })
        .collect();
    // T_N(π̃β, θ) for every (β, θ)
    let tn_bt: Vec<Derivation<S>> = (0..mf * md)
        .into_par_iter()
        .map(|k| {
            let (j, t) = (k / md, k % md);
            n.torsion(&maps[j], &ds[t])
        })
        .collect();

    first_residue(mf * mf * md, |k| {
        let (i, rest) = (k / (mf * md), k % (mf * md));
        let (j, t) = (rest / md, rest % md);
        let pd = &pair_data[i * mf + j];
        let mut r = Poly::zero();
        if !pd.tn.is_zero() {
            r += &forms::pair(&pd.tn, &ds[t]);
        }
        let tt = &tn_bt[j * md + t];
        if !tt.is_zero() {
            r += &forms::pair(&fs[i], tt);
        }
        if !pd.c_na.is_zero() {
            r -= &forms::pair(&pd.c_na, &ds[t]);
        }
        if !pd.c.is_zero() && !nd[t].is_zero() {
            r += &forms::pair(&pd.c, &nd[t]);
        }
        lin_residue(q, &r)
    })
}

/// `π̃_hi(d f_k) − π̃_lo(d f_{k+1})` for consecutive entries.
pub fn lenard<S: Scalar>(q: &Quiver, lo: &Bivector<S>, hi: &Bivector<S>, fs: &[Poly<S>]) -> Vec<Derivation<S>> {
    fs.windows(2)
        .map(|w| hi.map(q, &forms::dr_d(&w[0])).sub(&lo.map(q, &forms::dr_d(&w[1]))))
        .collect()
}

pub fn lenard_verdict<S: Scalar>(q: &Quiver, lo: &Bivector<S>, hi: &Bivector<S>, fs: &[Poly<S>]) -> Verdict {
    let res = lenard(q, lo, hi, fs);
    let first = res.iter().enumerate().find(|(_, d)| !d.is_zero()).map(|(k, d)| format!("link {k}: {}", d.to_string_in(q)));
    Verdict::from_first(res.len(), first)
}

/// `π_0, …, π_k` with `π̃_j = N^j∘π̃`, each rebuilt through
/// [`map_to_bivector`] and checked against the family forms.
pub fn hierarchy<S: Scalar>(q: &Quiver, pi: &Bivector<S>, n: &RegularEndo<S>, k: usize, fam: &Family<S>) -> Result<Vec<Bivector<S>>> {
    let mut out = vec![pi.clone()];
    for j in 1..=k {
        let b = map_to_bivector(q, |a| n.apply_pow(&pi.map(q, a), j), &fam.forms)?;
        out.push(b);
    }
    Ok(out)
}
