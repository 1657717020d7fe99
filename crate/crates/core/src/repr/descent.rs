//! The descent suite: Jacobi residues of induced brackets, pairing descent,
//! invariance, the induced Schouten bracket and the H-algebra relation, all
//! at seeded random points.

use num_traits::Zero;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::derivation::Derivation;
use crate::error::Result;
use crate::forms::{self, Form};
use crate::pn::checks::Verdict;
use crate::pn::family::Family;
use crate::quiver::Quiver;
use crate::syntax::print_lin;
use crate::{BivectorQ, PolyQ, Rational};

use super::induced::{self, exact_descent, g_invariant, gh_observable, induced_schouten, pairing_descent, random_covectors};
use super::matrix::Matrix;
use super::point::{random_entry, RepPoint};

#[derive(Clone, Debug)]
pub struct DescentOptions {
    pub dims: Vec<Vec<usize>>,
    pub points: usize,
    pub seed: u64,
    /// Random `(α, θ)` pairs per point.
    pub pairs: usize,
    /// Conjugations per invariance test.
    pub conjugations: usize,
}

impl Default for DescentOptions {
    fn default() -> Self {
        DescentOptions {
            dims: Vec::new(),
            points: 20,
            seed: 0,
            pairs: 10,
            conjugations: 5,
        }
    }
}

#[derive(Clone, Debug)]
pub struct DescentReport {
    pub jacobi: Verdict,
    pub pairing: Verdict,
    pub exact: Verdict,
    pub invariance: Verdict,
    pub schouten: Verdict,
}

impl DescentReport {
    pub fn verdict(&self) -> Verdict {
        self.jacobi
            .clone()
            .and(self.pairing.clone())
            .and(self.exact.clone())
            .and(self.invariance.clone())
            .and(self.schouten.clone())
    }
}

/// Records the first failure, counting every case.
struct Acc(Verdict);

impl Acc {
    fn new() -> Self {
        Acc(Verdict::from_first(0, None))
    }

    fn check(&mut self, ok: bool, what: impl FnOnce() -> String) {
        self.0.cases += 1;
        if !ok && self.0.residue.is_none() {
            self.0.pass = false;
            self.0.residue = Some(what());
        }
    }
}

fn zero() -> Rational {
    Rational::zero()
}

/// `(α, θ)` as random combinations of three members of the family each.
fn random_pair<R: Rng>(fam: &Family<Rational>, rng: &mut R) -> (Form<Rational>, Derivation<Rational>) {
    let mut al = Form::zero();
    let mut th = Derivation::zero();
    for _ in 0..3 {
        al += &fam.forms[rng.gen_range(0..fam.forms.len())].scale(&random_entry(rng));
        th = th.add(&fam.derivations[rng.gen_range(0..fam.derivations.len())].scale(&random_entry(rng)));
    }
    (forms::dr_normalize(&al), th)
}

fn dims_text(d: &[usize]) -> String {
    d.iter().map(|n| n.to_string()).collect::<Vec<_>>().join(",")
}

/// Runs every descent check for the named bivectors on the function sample.
/// Jacobiators are formed symbolically once and evaluated at each point.
pub fn descent(q: &Quiver, pis: &[(String, BivectorQ)], sample: &[PolyQ], opts: &DescentOptions) -> Result<DescentReport> {
    let mut rng = ChaCha8Rng::seed_from_u64(opts.seed);
    let fam = Family::new(q, 2);
    let jacs: Vec<(&str, Vec<PolyQ>)> = pis.iter().map(|(n, p)| (n.as_str(), induced::jacobiators(q, p, sample))).collect();
    let (mut jacobi, mut pairing, mut exact, mut inv, mut sch) = (Acc::new(), Acc::new(), Acc::new(), Acc::new(), Acc::new());
    for dims in &opts.dims {
        let dt = dims_text(dims);
        let pts = RepPoint::random_points(q, dims, rng.gen(), opts.points)?;
        for (i, x) in pts.iter().enumerate() {
            for (name, js) in &jacs {
                for (j, r) in induced::jacobi_residues(js, x).into_iter().enumerate() {
                    jacobi.check(r.is_zero(), || format!("{name} at ({dt}) point {i}: Jacobiator {} evaluates to {r}", print_lin(&js[j], q)));
                }
            }
            for _ in 0..opts.pairs {
                let (al, th) = random_pair(&fam, &mut rng);
                let (l, r) = pairing_descent(q, &al, &th, x);
                pairing.check(l == r, || format!("({dt}) point {i}: ⟨α,θ⟩^ = {l}, ⟨α̂,θ̌⟩ = {r} for α = {}", print_lin(&al, q)));
            }
            for f in sample {
                let (_, th) = random_pair(&fam, &mut rng);
                let (l, r) = exact_descent(q, f, &th, x);
                exact.check(l == r, || format!("({dt}) point {i}: ⟨df,θ⟩^ = {l}, derivative {r} for f = {}", print_lin(f, q)));
            }
            if i < 3 {
                for f in sample {
                    inv.check(g_invariant(q, f, x, &mut rng, opts.conjugations), || format!("({dt}) point {i}: {} is not invariant", print_lin(f, q)));
                }
            }
            if i < 5 {
                let cov = random_covectors(q, x, &mut rng, 3);
                for (a, (na, pa)) in pis.iter().enumerate() {
                    for (nb, pb) in &pis[a..] {
                        let r = induced_schouten(q, pa, pb, x, &cov[0], &cov[1], &cov[2]);
                        sch.check(r == zero(), || format!("[{na}, {nb}] induced at ({dt}) point {i}: {r}"));
                    }
                }
            }
        }
    }
    Ok(DescentReport {
        jacobi: jacobi.0,
        pairing: pairing.0,
        exact: exact.0,
        invariance: inv.0,
        schouten: sch.0,
    })
}

/// Only the Jacobi part of [`descent`].
pub fn jacobi(q: &Quiver, pis: &[(String, BivectorQ)], sample: &[PolyQ], opts: &DescentOptions) -> Result<Verdict> {
    let mut rng = ChaCha8Rng::seed_from_u64(opts.seed);
    let mut acc = Acc::new();
    let jacs: Vec<(&str, Vec<PolyQ>)> = pis.iter().map(|(n, p)| (n.as_str(), induced::jacobiators(q, p, sample))).collect();
    for dims in &opts.dims {
        let dt = dims_text(dims);
        for (i, x) in RepPoint::random_points(q, dims, rng.gen(), opts.points)?.iter().enumerate() {
            for (name, js) in &jacs {
                for (j, r) in induced::jacobi_residues(js, x).into_iter().enumerate() {
                    acc.check(r.is_zero(), || format!("{name} at ({dt}) point {i}: Jacobiator {} evaluates to {r}", print_lin(&js[j], q)));
                }
            }
        }
    }
    Ok(acc.0)
}

/// Outcome of comparing `{Ĥ_{k,α}, Ĥ_{ℓ,β}}` with `Ĥ_{k+ℓ,[α,β]}`.
#[derive(Clone, Debug, Default)]
pub struct HAlgebra {
    pub total: usize,
    pub equal: usize,
    /// Cases where the bracket is exactly `−Ĥ_{k+ℓ,[α,β]}` (and nonzero).
    pub flipped: usize,
    /// Also `Ĥ_{k,α}` against its necklace and `Î^(2)_k` against `I^(2)_k`.
    pub observables: Verdict,
    pub first: Option<String>,
}

impl HAlgebra {
    pub fn verdict(&self) -> Verdict {
        let v = Verdict::from_first(self.total, self.first.clone());
        v.and(self.observables.clone())
    }

    /// Every mismatch is an exact sign flip.
    pub fn uniformly_flipped(&self) -> bool {
        self.total > 0 && self.flipped == self.total
    }
}

fn mat2(m: &[[Rational; 2]; 2]) -> Matrix<Rational> {
    Matrix::from_rows(m.iter().map(|r| r.to_vec()).collect()).expect("2x2")
}

/// The relation for `k + ℓ ≤ max_deg` under the bracket of `pi`, with fresh
/// random `α, β` at every point. Needs the Gibbons-Hermsen quiver.
pub fn h_algebra(q: &Quiver, pi: &BivectorQ, opts: &DescentOptions, max_deg: usize) -> Result<HAlgebra> {
    let mut rng = ChaCha8Rng::seed_from_u64(opts.seed ^ 0x4841);
    let mut out = HAlgebra::default();
    let mut obs = Acc::new();
    let r = |n: i64| Rational::from_integer(n.into());
    let eta = [[r(-1), r(0)], [r(0), r(1)]];
    for dims in &opts.dims {
        let dt = dims_text(dims);
        for (i, x) in RepPoint::random_points(q, dims, rng.gen(), opts.points)?.iter().enumerate() {
            let mut rnd = || [[random_entry(&mut rng), random_entry(&mut rng)], [random_entry(&mut rng), random_entry(&mut rng)]];
            let (al, be) = (rnd(), rnd());
            let (ma, mb) = (mat2(&al), mat2(&be));
            let comm = &ma.matmul(&mb) - &mb.matmul(&ma);
            for k in 0..=max_deg {
                let hat = gh_observable(q, x, k, &ma)?;
                obs.check(hat == x.trace_fn(&crate::builtins::gh_h(q, k, al.clone())), || format!("Ĥ_{k} at ({dt}) point {i}"));
                let i2 = gh_observable(q, x, k, &mat2(&eta))?;
                obs.check(i2 == x.trace_fn(&crate::builtins::gh_i2(q, k)), || format!("Î2_{k} at ({dt}) point {i}"));
            }
            for k in 0..=max_deg {
                for l in 0..=max_deg - k {
                    let hk = crate::builtins::gh_h(q, k, al.clone());
                    let hl = crate::builtins::gh_h(q, l, be.clone());
                    let lhs = induced::induced_bracket(q, pi, &hk, &hl, x);
                    let rhs = gh_observable(q, x, k + l, &comm)?;
                    out.total += 1;
                    if lhs == rhs {
                        out.equal += 1;
                        continue;
                    }
                    if !rhs.is_zero() && lhs == -rhs.clone() {
                        out.flipped += 1;
                    }
                    if out.first.is_none() {
                        out.first = Some(format!("k={k} l={l} at ({dt}) point {i}: bracket {lhs}, Ĥ_(k+l,[α,β]) = {rhs}"));
                    }
                }
            }
        }
    }
    out.observables = obs.0;
    Ok(out)
}
