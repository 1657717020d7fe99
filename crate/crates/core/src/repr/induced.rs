//! The geometry induced on representation spaces: vector fields, brackets of
//! trace functions, and the coordinate Schouten bracket of induced bivectors.

use num_rational::BigRational;
use num_traits::{One, Zero};
use rand::Rng;

use crate::derivation::Derivation;
use crate::error::{Error, Result};
use crate::forms::{self, Form};
use crate::pn::bivector::Bivector;
use crate::quiver::Quiver;
use crate::scalar::{Dual, Scalar};
use crate::word::Poly;

use super::matrix::Matrix;
use super::point::{random_invertible, random_matrix, RepPoint};

/// A cotangent vector at a point: one matrix per arrow, shaped like the
/// transpose of the arrow's block, paired through `Σ_c tr(F_c v_c)`.
pub type Covector<S> = Vec<Matrix<S>>;

/// `θ̌(x)`: the matrices `θ(c)(x)`.
pub fn induced_field<S: Scalar>(q: &Quiver, theta: &Derivation<S>, x: &RepPoint<S>) -> Vec<Matrix<S>> {
    q.arrow_ids().map(|c| x.poly_block(&theta.component(c), q.head(c), q.tail(c))).collect()
}

/// `Σ_c tr(F_c v_c)`.
pub fn contract_covector<S: Scalar>(f: &[Matrix<S>], v: &[Matrix<S>]) -> S {
    f.iter().zip(v).fold(S::zero(), |acc, (a, b)| acc + a.matmul(b).trace())
}

/// The matrices `Ŝ_c` of a canonical 1-form `Σ S_c dc`.
pub fn form_covector<S: Scalar>(q: &Quiver, alpha: &Form<S>, x: &RepPoint<S>) -> Covector<S> {
    let s = forms::dr1_coeffs(alpha);
    q.arrow_ids()
        .map(|c| match s.get(&c) {
            Some(p) => x.poly_block(p, q.tail(c), q.head(c)),
            None => Matrix::zeros(x.dim(q.tail(c)), x.dim(q.head(c))),
        })
        .collect()
}

/// `π̌♯(F)` read off the presentation: `[P∂_a, R∂_b]` sends `F` to
/// `P̂ F_a R̂` at `b` and `−R̂ F_b P̂` at `a`.
pub fn bivector_field<S: Scalar>(q: &Quiver, pi: &Bivector<S>, x: &RepPoint<S>, f: &[Matrix<S>]) -> Vec<Matrix<S>> {
    let mut out: Vec<Matrix<S>> = q.arrow_ids().map(|c| Matrix::zeros(x.dim(q.head(c)), x.dim(q.tail(c)))).collect();
    for t in pi.terms() {
        let (a, b) = (t.a as usize, t.b as usize);
        let ph = x.poly_block(&t.p, q.head(t.b), q.tail(t.a));
        let rh = x.poly_block(&t.r, q.head(t.a), q.tail(t.b));
        out[b] = &out[b] + &ph.matmul(&f[a]).matmul(&rh);
        out[a] = &out[a] - &rh.matmul(&f[b]).matmul(&ph);
    }
    out
}

/// `π̌(F, G) = ⟨G, π̌♯(F)⟩`.
pub fn bivector_value<S: Scalar>(q: &Quiver, pi: &Bivector<S>, x: &RepPoint<S>, f: &[Matrix<S>], g: &[Matrix<S>]) -> S {
    contract_covector(g, &bivector_field(q, pi, x, f))
}

/// `{f, g} = ⟨dg, π̃(df)⟩` as a necklace.
pub fn function_bracket<S: Scalar>(q: &Quiver, pi: &Bivector<S>, f: &Poly<S>, g: &Poly<S>) -> Poly<S> {
    forms::pair(&forms::dr_d(g), &pi.map(q, &forms::dr_d(f)))
}

/// `{f̂, ĝ}(x)`.
pub fn induced_bracket<S: Scalar>(q: &Quiver, pi: &Bivector<S>, f: &Poly<S>, g: &Poly<S>, x: &RepPoint<S>) -> S {
    x.trace_fn(&function_bracket(q, pi, f, g))
}

/// `Σ_cyc {{f,g},h}` over all triples of the sample, computed symbolically.
pub fn jacobiators<S: Scalar>(q: &Quiver, pi: &Bivector<S>, sample: &[Poly<S>]) -> Vec<Poly<S>> {
    let n = sample.len();
    let mut br = vec![vec![Poly::zero(); n]; n];
    for i in 0..n {
        for j in i + 1..n {
            let b = function_bracket(q, pi, &sample[i], &sample[j]);
            br[j][i] = -b.clone();
            br[i][j] = b;
        }
    }
    let mut out = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            for k in j + 1..n {
                let r = function_bracket(q, pi, &br[i][j], &sample[k])
                    + function_bracket(q, pi, &br[j][k], &sample[i])
                    + function_bracket(q, pi, &br[k][i], &sample[j]);
                out.push(r);
            }
        }
    }
    out
}

/// Largest evaluated Jacobiator at `x`: zero iff all vanish.
pub fn jacobi_residues<S: Scalar>(jacs: &[Poly<S>], x: &RepPoint<S>) -> Vec<S> {
    jacs.iter().map(|j| x.trace_fn(j)).collect()
}

/// `x + ε v` over dual numbers.
fn dual_point(x: &RepPoint<BigRational>, v: &[Matrix<BigRational>]) -> RepPoint<Dual<BigRational>> {
    let dv: Vec<Matrix<Dual<BigRational>>> = v.iter().map(|m| m.map(|e| Dual::new(BigRational::zero(), e.clone()))).collect();
    x.map(|e| Dual::constant(e.clone())).shifted(&dv, &Dual::one())
}

fn lift_biv(b: &Bivector<BigRational>, q: &Quiver) -> Bivector<Dual<BigRational>> {
    let terms = b
        .terms()
        .iter()
        .map(|t| crate::pn::bivector::Term {
            p: t.p.map_coeffs(|c| Dual::constant(c.clone())),
            a: t.a,
            r: t.r.map_coeffs(|c| Dual::constant(c.clone())),
            b: t.b,
        })
        .collect();
    Bivector::from_terms(q, terms)
}

fn lift_cov(f: &[Matrix<BigRational>]) -> Covector<Dual<BigRational>> {
    f.iter().map(|m| m.map(|e| Dual::constant(e.clone()))).collect()
}

/// `{u, h}_R` for `u = P(F,G)` and linear `h = ⟨H, ·⟩`: `−D_{R♯H} u` at `x`.
fn nested(q: &Quiver, p: &Bivector<Dual<BigRational>>, r: &Bivector<BigRational>, x: &RepPoint<BigRational>, f: &Covector<BigRational>, g: &Covector<BigRational>, h: &Covector<BigRational>) -> BigRational {
    let v = bivector_field(q, r, x, h);
    let y = dual_point(x, &v);
    let u = bivector_value(q, p, &y, &lift_cov(f), &lift_cov(g));
    -u.eps
}

/// `Σ_cyc ({{f,g}_π, h}_ρ + {{f,g}_ρ, h}_π)` for linear functions `f, g, h`
/// given by constant covectors. Up to a constant factor this is
/// `[π̌, ρ̌](df, dg, dh)`.
pub fn induced_schouten(q: &Quiver, pi: &Bivector<BigRational>, rho: &Bivector<BigRational>, x: &RepPoint<BigRational>, f: &Covector<BigRational>, g: &Covector<BigRational>, h: &Covector<BigRational>) -> BigRational {
    let pd = lift_biv(pi, q);
    let rd = lift_biv(rho, q);
    let cyc = [(f, g, h), (g, h, f), (h, f, g)];
    let mut acc = BigRational::zero();
    for (a, b, c) in cyc {
        acc += nested(q, &pd, rho, x, a, b, c) + nested(q, &rd, pi, x, a, b, c);
    }
    acc
}

/// Random constant covectors with the same entry distribution as points.
pub fn random_covectors<R: Rng>(q: &Quiver, x: &RepPoint<BigRational>, rng: &mut R, count: usize) -> Vec<Covector<BigRational>> {
    (0..count)
        .map(|_| q.arrow_ids().map(|c| random_matrix(rng, x.dim(q.tail(c)), x.dim(q.head(c)))).collect())
        .collect()
}

/// Both sides of the pairing descent `⟨α,θ⟩^ = ⟨α̂, θ̌⟩`, the right side
/// contracted entry by entry.
pub fn pairing_descent<S: Scalar>(q: &Quiver, alpha: &Form<S>, theta: &Derivation<S>, x: &RepPoint<S>) -> (S, S) {
    let lhs = x.trace_fn(&forms::pair(alpha, theta));
    let cov = form_covector(q, alpha, x);
    let field = induced_field(q, theta, x);
    let mut rhs = S::zero();
    for (r, v) in cov.iter().zip(&field) {
        for i in 0..r.rows() {
            for j in 0..r.cols() {
                rhs = rhs + r.get(i, j).clone() * v.get(j, i).clone();
            }
        }
    }
    (lhs, rhs)
}

/// `⟨df, θ⟩^(x)` against the derivative of `f̂` along `θ̌(x)`.
pub fn exact_descent(q: &Quiver, f: &Poly<BigRational>, theta: &Derivation<BigRational>, x: &RepPoint<BigRational>) -> (BigRational, BigRational) {
    let lhs = x.trace_fn(&forms::pair(&forms::dr_d(f), theta));
    let y = dual_point(x, &induced_field(q, theta, x));
    let fd = f.map_coeffs(|c| Dual::constant(c.clone()));
    (lhs, y.trace_fn(&fd).eps)
}

/// `tr X^k v α w` with `X = τ_a`, `v = (−τ_x  τ_{y*})`, `w = (τ_{x*}; τ_y)`,
/// on a point of dimension `(n, 1)`.
pub fn gh_observable(q: &Quiver, x: &RepPoint<BigRational>, k: usize, alpha: &Matrix<BigRational>) -> Result<BigRational> {
    let id = |n: &str| q.arrow_id(n).ok_or_else(|| Error::Repr(format!("no arrow `{n}`")));
    let (a, xx, ys, xs, y) = (id("a")?, id("x")?, id("y^")?, id("x^")?, id("y")?);
    let n = x.dim(q.head(a));
    if x.dim(q.tail(xx)) != 1 {
        return Err(Error::Repr("dimension vector must be (n, 1)".into()));
    }
    let mut v = Matrix::zeros(n, 2);
    let mut w = Matrix::zeros(2, n);
    for i in 0..n {
        v.set(i, 0, -x.matrix(xx).get(i, 0).clone());
        v.set(i, 1, x.matrix(ys).get(i, 0).clone());
        w.set(0, i, x.matrix(xs).get(0, i).clone());
        w.set(1, i, x.matrix(y).get(0, i).clone());
    }
    Ok(x.matrix(a).pow(k).matmul(&v).matmul(alpha).matmul(&w).trace())
}

/// Whether `f̂` takes the same value at `x` and at `count` random
/// conjugates of it.
pub fn g_invariant<R: Rng>(q: &Quiver, f: &Poly<BigRational>, x: &RepPoint<BigRational>, rng: &mut R, count: usize) -> bool {
    let v0 = x.trace_fn(f);
    (0..count).all(|_| {
        let g: Vec<Matrix<BigRational>> = x.dims().iter().map(|&n| random_invertible(rng, n)).collect();
        x.conjugate(q, &g).is_some_and(|y| y.trace_fn(f) == v0)
    })
}
