//! The Calogero-Moser and Gibbons-Hermsen systems, and the registry the CLI
//! looks names up in.

use crate::derivation::Derivation;
use crate::error::{Error, Result};
use crate::pn::bivector::{Bivector, Term};
use crate::pn::endo::RegularEndo;
use crate::pn::symplectic;
use crate::polyvec::necklace_derivative;
use crate::quiver::Quiver;
use crate::syntax::{parse, parse_quiver, rational};
use crate::word::{mul, pow};
use crate::{BivectorQ, EndoQ, FormQ, PolyQ};

pub const CM_QUIVER: &str = "quiver cm { vertex v; arrow a: v -> v; }";
pub const GH_QUIVER: &str = "quiver gh { vertex v1, v2; arrow a: v1 -> v1; arrow y: v1 -> v2; arrow x: v2 -> v1; }";

/// The one-loop quiver, doubled.
pub fn cm_quiver() -> Quiver {
    parse_quiver(CM_QUIVER).expect("built-in quiver").double()
}

/// The Gibbons-Hermsen quiver (loop `a` at `v1`, `y: v1 → v2`, `x: v2 → v1`), doubled.
pub fn gh_quiver() -> Quiver {
    parse_quiver(GH_QUIVER).expect("built-in quiver").double()
}

fn p(q: &Quiver, src: &str) -> PolyQ {
    parse(src, q).expect("built-in expression")
}

fn arrow(q: &Quiver, name: &str) -> u16 {
    q.arrow_id(name).expect("built-in arrow")
}

/// `[P ∂_a, R ∂_b]` from source text; `"1"` stands for the unit.
fn term(q: &Quiver, pp: &str, a: &str, r: &str, b: &str) -> Term<crate::Rational> {
    Term {
        p: p(q, pp),
        a: arrow(q, a),
        r: p(q, r),
        b: arrow(q, b),
    }
}

/// `θ(c)` as a polynomial.
fn th(t: &Derivation<crate::Rational>, q: &Quiver, c: &str) -> PolyQ {
    t.component(arrow(q, c))
}

// ---- Calogero-Moser ----

pub fn cm_pi0(q: &Quiver) -> BivectorQ {
    symplectic::pi0(q)
}

/// `π_m = [a^m ∂_{a*}, ∂_a] + Σ_{i=1}^m [a* a^{m−i} ∂_{a*}, a^{i−1} ∂_{a*}]`.
pub fn cm_pi(q: &Quiver, m: usize) -> BivectorQ {
    let a = p(q, "a");
    let s = p(q, "a^");
    let one = crate::word::unit(q);
    let mut terms = vec![Term {
        p: pow(q, &a, m),
        a: arrow(q, "a^"),
        r: one.clone(),
        b: arrow(q, "a"),
    }];
    for i in 1..=m {
        terms.push(Term {
            p: mul(&s, &pow(q, &a, m - i)),
            a: arrow(q, "a^"),
            r: pow(q, &a, i - 1),
            b: arrow(q, "a^"),
        });
    }
    Bivector::from_terms(q, terms)
}

/// `π₁ = [a ∂_{a*}, ∂_a] + [a* ∂_{a*}, ∂_{a*}]`.
pub fn cm_pi1(q: &Quiver) -> BivectorQ {
    Bivector::from_terms(q, vec![term(q, "a", "a^", "1", "a"), term(q, "a^", "a^", "1", "a^")])
}

/// `π₂ = [a² ∂_{a*}, ∂_a] + [a* a ∂_{a*}, ∂_{a*}] + [a* ∂_{a*}, a ∂_{a*}]`.
pub fn cm_pi2(q: &Quiver) -> BivectorQ {
    Bivector::from_terms(
        q,
        vec![
            term(q, "a a", "a^", "1", "a"),
            term(q, "a^ a", "a^", "1", "a^"),
            term(q, "a^", "a^", "a", "a^"),
        ],
    )
}

/// `N(θ) = a θ(a) ∂_a + (θ(a*) a + [a*, θ(a)]) ∂_{a*}`.
pub fn cm_n(q: &Quiver) -> EndoQ {
    let a = p(q, "a");
    let s = p(q, "a^");
    RegularEndo::from_map(q, |t| {
        let (ta, ts) = (th(t, q, "a"), th(t, q, "a^"));
        let mut out = Derivation::zero();
        out.add_raw(arrow(q, "a"), &mul(&a, &ta));
        out.add_raw(arrow(q, "a^"), &(mul(&ts, &a) + crate::word::commutator(&s, &ta)));
        out
    })
    .expect("built-in endomorphism")
}

/// The lifted 1-form `a* a da`.
pub fn cm_lambda_prime(q: &Quiver) -> FormQ {
    p(q, "a^ a d a")
}

/// `N(θ) = ([θ(a*), a] + a* θ(a)) ∂_a + θ(a*) a* ∂_{a*}`.
pub fn cm_n_alt(q: &Quiver) -> EndoQ {
    let a = p(q, "a");
    let s = p(q, "a^");
    RegularEndo::from_map(q, |t| {
        let (ta, ts) = (th(t, q, "a"), th(t, q, "a^"));
        let mut out = Derivation::zero();
        out.add_raw(arrow(q, "a"), &(crate::word::commutator(&ts, &a) + mul(&s, &ta)));
        out.add_raw(arrow(q, "a^"), &mul(&ts, &s));
        out
    })
    .expect("built-in endomorphism")
}

/// `[a* ∂_{a*}, ∂_a] + [a ∂_a, ∂_a]`.
pub fn cm_pi1_alt(q: &Quiver) -> BivectorQ {
    Bivector::from_terms(q, vec![term(q, "a^", "a^", "1", "a"), term(q, "a", "a", "1", "a")])
}

/// `I_k = a^k / k`.
pub fn cm_i(q: &Quiver, k: usize) -> PolyQ {
    pow(q, &p(q, "a"), k).scale(&rational(1, k as i64))
}

/// `J_ℓ = a^{ℓ−1} a*`.
pub fn cm_j(q: &Quiver, l: usize) -> PolyQ {
    mul(&pow(q, &p(q, "a"), l - 1), &p(q, "a^"))
}

/// `H_k = a*^k / k`.
pub fn cm_h(q: &Quiver, k: usize) -> PolyQ {
    pow(q, &p(q, "a^"), k).scale(&rational(1, k as i64))
}

/// `K_ℓ = a*^{ℓ−1} a`.
pub fn cm_k(q: &Quiver, l: usize) -> PolyQ {
    mul(&pow(q, &p(q, "a^"), l - 1), &p(q, "a"))
}

/// `{f, g}_m` through necklace derivatives:
/// `a^m (f_{a*} g_a − g_{a*} f_a) + Σ_{i=1}^m a* a^{m−i} (f_{a*} a^{i−1} g_{a*} − g_{a*} a^{i−1} f_{a*})`,
/// with `f_c = ∂f/∂c`, read as a necklace.
pub fn cm_bracket_m(q: &Quiver, m: usize, f: &PolyQ, g: &PolyQ) -> PolyQ {
    let a = p(q, "a");
    let s = p(q, "a^");
    let (ia, is) = (arrow(q, "a"), arrow(q, "a^"));
    let fa = necklace_derivative(q, f, ia);
    let fs = necklace_derivative(q, f, is);
    let ga = necklace_derivative(q, g, ia);
    let gs = necklace_derivative(q, g, is);
    let mut out = mul(&pow(q, &a, m), &(mul(&fs, &ga) - mul(&gs, &fa)));
    for i in 1..=m {
        let ai = pow(q, &a, i - 1);
        let inner = crate::word::mul3(&fs, &ai, &gs) - crate::word::mul3(&gs, &ai, &fs);
        out += &crate::word::mul3(&s, &pow(q, &a, m - i), &inner);
    }
    crate::forms::dr0(&out)
}

// ---- Gibbons-Hermsen ----

pub fn gh_pi0(q: &Quiver) -> BivectorQ {
    symplectic::pi0(q)
}

pub fn gh_pi1(q: &Quiver) -> BivectorQ {
    Bivector::from_terms(
        q,
        vec![
            term(q, "a", "a^", "1", "a"),
            term(q, "a^", "a^", "1", "a^"),
            term(q, "a", "x^", "1", "x"),
            term(q, "x^", "a^", "1", "x^"),
            term(q, "1", "y^", "a", "y"),
            term(q, "y", "a^", "1", "y"),
        ],
    )
}

/// `λ′ = a* a da + x* a dx − y a dy*`.
pub fn gh_lambda_prime(q: &Quiver) -> FormQ {
    p(q, "a^ a d a + x^ a d x - y a d y^")
}

/// The displayed endomorphism: the complete lift of [`gh_lambda_prime`].
pub fn gh_n(q: &Quiver) -> EndoQ {
    let a = p(q, "a");
    let s = p(q, "a^");
    let xs = p(q, "x^");
    let y = p(q, "y");
    RegularEndo::from_map(q, |t| {
        let g = |c: &str| th(t, q, c);
        let mut out = Derivation::zero();
        out.add_raw(arrow(q, "a"), &mul(&a, &g("a")));
        let sa = mul(&g("a^"), &a) + crate::word::commutator(&s, &g("a")) - mul(&g("x"), &xs) + mul(&g("y^"), &y);
        out.add_raw(arrow(q, "a^"), &sa);
        out.add_raw(arrow(q, "x"), &mul(&a, &g("x")));
        out.add_raw(arrow(q, "x^"), &(mul(&g("x^"), &a) + mul(&xs, &g("a"))));
        out.add_raw(arrow(q, "y"), &(mul(&g("y"), &a) + mul(&y, &g("a"))));
        out.add_raw(arrow(q, "y^"), &mul(&a, &g("y^")));
        out
    })
    .expect("built-in endomorphism")
}

/// `I^(2)_k = a^k (x x* + y* y)`.
pub fn gh_i2(q: &Quiver, k: usize) -> PolyQ {
    mul(&pow(q, &p(q, "a"), k), &p(q, "x x^ + y^ y"))
}

/// `J^(2)_ℓ = −a^ℓ x y`.
pub fn gh_j2(q: &Quiver, l: usize) -> PolyQ {
    -mul(&pow(q, &p(q, "a"), l), &p(q, "x y"))
}

/// The necklace `a^k v α w` with `v α w = −α₁₁ x x* − α₁₂ x y + α₂₁ y* x* + α₂₂ y* y`.
pub fn gh_h(q: &Quiver, k: usize, alpha: [[crate::Rational; 2]; 2]) -> PolyQ {
    let vw = p(q, "x x^").scale(&-alpha[0][0].clone())
        + p(q, "x y").scale(&-alpha[0][1].clone())
        + p(q, "y^ x^").scale(&alpha[1][0])
        + p(q, "y^ y").scale(&alpha[1][1]);
    mul(&pow(q, &p(q, "a"), k), &vw)
}

/// A registered value.
#[derive(Clone, Debug)]
pub enum Builtin {
    Function(PolyQ),
    Bivector(BivectorQ),
    Endo(EndoQ),
    Form(FormQ),
}

/// Names the registry understands, for help texts.
pub const NAMES: &[&str] = &[
    "cm.pi0", "cm.pi1", "cm.pi2", "cm.pi<m>", "cm.pi1_alt", "cm.N", "cm.N_alt", "cm.lambda", "cm.I<k>", "cm.J<l>",
    "cm.H<k>", "cm.K<l>", "gh.pi0", "gh.pi1", "gh.N", "gh.lambda", "gh.I<k>", "gh.J<l>", "gh.I2_<k>", "gh.J2_<l>",
];

fn index(s: &str) -> Option<usize> {
    s.parse().ok()
}

/// Look a name up; returns the doubled quiver it lives on and the value.
pub fn lookup(name: &str) -> Result<(Quiver, Builtin)> {
    let unknown = || Error::Unknown(format!("built-in `{name}`"));
    let (sys, rest) = name.split_once('.').ok_or_else(unknown)?;
    match sys {
        "cm" => {
            let q = cm_quiver();
            let v = match rest {
                "pi0" => Builtin::Bivector(cm_pi0(&q)),
                "pi1" => Builtin::Bivector(cm_pi1(&q)),
                "pi2" => Builtin::Bivector(cm_pi2(&q)),
                "pi1_alt" => Builtin::Bivector(cm_pi1_alt(&q)),
                "N" => Builtin::Endo(cm_n(&q)),
                "N_alt" => Builtin::Endo(cm_n_alt(&q)),
                "lambda" => Builtin::Form(cm_lambda_prime(&q)),
                _ => {
                    let (head, num) = rest.split_at(rest.find(|c: char| c.is_ascii_digit()).ok_or_else(unknown)?);
                    let k = index(num).ok_or_else(unknown)?;
                    match (head, k) {
                        ("pi", m) => Builtin::Bivector(cm_pi(&q, m)),
                        ("I", k) if k >= 1 => Builtin::Function(cm_i(&q, k)),
                        ("J", l) if l >= 1 => Builtin::Function(cm_j(&q, l)),
                        ("H", k) if k >= 1 => Builtin::Function(cm_h(&q, k)),
                        ("K", l) if l >= 1 => Builtin::Function(cm_k(&q, l)),
                        _ => return Err(unknown()),
                    }
                }
            };
            Ok((q, v))
        }
        "gh" => {
            let q = gh_quiver();
            let v = match rest {
                "pi0" => Builtin::Bivector(gh_pi0(&q)),
                "pi1" => Builtin::Bivector(gh_pi1(&q)),
                "N" => Builtin::Endo(gh_n(&q)),
                "lambda" => Builtin::Form(gh_lambda_prime(&q)),
                _ => {
                    if let Some(k) = rest.strip_prefix("I2_").and_then(index) {
                        Builtin::Function(gh_i2(&q, k))
                    } else if let Some(l) = rest.strip_prefix("J2_").and_then(index) {
                        Builtin::Function(gh_j2(&q, l))
                    } else if let Some(k) = rest.strip_prefix('I').and_then(index).filter(|k| *k >= 1) {
                        Builtin::Function(cm_i(&q, k))
                    } else if let Some(l) = rest.strip_prefix('J').and_then(index).filter(|l| *l >= 1) {
                        Builtin::Function(cm_j(&q, l))
                    } else {
                        return Err(unknown());
                    }
                }
            };
            Ok((q, v))
        }
        _ => Err(unknown()),
    }
}

/// A Lenard chain by name: `I` (both systems) or `I2` (Gibbons-Hermsen),
/// entries `first..=first+links`.
pub fn chain(q: &Quiver, system: &str, family: &str, links: usize) -> Result<Vec<PolyQ>> {
    match (system, family) {
        (_, "I") => Ok((1..=links + 1).map(|k| cm_i(q, k)).collect()),
        ("gh", "I2") => Ok((0..=links).map(|k| gh_i2(q, k)).collect()),
        ("cm", "J") => Ok((1..=links + 1).map(|l| cm_j(q, l)).collect()),
        _ => Err(Error::Unknown(format!("chain `{family}` for `{system}`"))),
    }
}

/// The one-loop bracket table for `1 ≤ k, ℓ ≤ max_k`, `0 ≤ m ≤ max_m`:
/// `{I_k, I_ℓ}_m = 0`, `{J_ℓ, I_k}_m = (k+ℓ+m−2) I_{k+ℓ+m−2}`,
/// `{J_k, J_ℓ}_m = (ℓ−k) J_{k+ℓ+m−2}`, each computed both from necklace
/// derivatives and from the pairing with `π̃_m`. Degree zero stands for the
/// unit class.
pub fn bracket_table(max_k: usize, max_m: usize) -> crate::pn::checks::Verdict {
    let q = cm_quiver();
    let r = |n: i64| crate::syntax::rational(n, 1);
    let mut cases = 0;
    let mut first = None;
    for m in 0..=max_m {
        let pm = cm_pi(&q, m);
        for k in 1..=max_k {
            for l in 1..=max_k {
                let deg = k + l + m - 2;
                let ji = if deg == 0 { crate::word::unit(&q) } else { cm_i(&q, deg).scale(&r(deg as i64)) };
                let jj = if deg == 0 { PolyQ::zero() } else { cm_j(&q, deg).scale(&r(l as i64 - k as i64)) };
                let rows = [
                    ("{I_k,I_l}", cm_i(&q, k), cm_i(&q, l), PolyQ::zero()),
                    ("{J_l,I_k}", cm_j(&q, l), cm_i(&q, k), ji),
                    ("{J_k,J_l}", cm_j(&q, k), cm_j(&q, l), jj),
                ];
                for (name, f, g, want) in rows {
                    let want = crate::forms::dr0(&want);
                    let a = cm_bracket_m(&q, m, &f, &g);
                    let b = crate::repr::induced::function_bracket(&q, &pm, &f, &g);
                    cases += 2;
                    if first.is_none() && (a != want || b != want) {
                        first = Some(format!(
                            "{name} with m={m} k={k} l={l}: derivatives give {}, pairing gives {}, expected {}",
                            print(&a, &q),
                            print(&b, &q),
                            print(&want, &q)
                        ));
                    }
                }
            }
        }
    }
    crate::pn::checks::Verdict::from_first(cases, first)
}

fn print(p: &PolyQ, q: &Quiver) -> String {
    crate::syntax::print_lin(p, q)
}

/// The Hamiltonian sample of a system: `I_1..I_3, J_1..J_3` on the one-loop
/// quiver; `I_1, I_2, I^(2)_0..I^(2)_2, J_1, J_2, J^(2)_0, J^(2)_1` on the
/// Gibbons-Hermsen quiver.
pub fn hamiltonian_sample(system: &str) -> Result<(Quiver, Vec<PolyQ>)> {
    match system {
        "cm" => {
            let q = cm_quiver();
            let mut s: Vec<PolyQ> = (1..=3).map(|k| cm_i(&q, k)).collect();
            s.extend((1..=3).map(|l| cm_j(&q, l)));
            Ok((q, s))
        }
        "gh" => {
            let q = gh_quiver();
            let mut s: Vec<PolyQ> = (1..=2).map(|k| cm_i(&q, k)).collect();
            s.extend((0..=2).map(|k| gh_i2(&q, k)));
            s.extend((1..=2).map(|l| cm_j(&q, l)));
            s.extend((0..=1).map(|l| gh_j2(&q, l)));
            Ok((q, s))
        }
        _ => Err(Error::Unknown(format!("system `{system}`"))),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polyvec;
    use crate::syntax::print_lin;

    #[test]
    fn cm_general_formula_matches_small_cases() {
        let q = cm_quiver();
        assert_eq!(cm_pi(&q, 0).necklace(), cm_pi0(&q).necklace());
        assert_eq!(cm_pi(&q, 1).necklace(), cm_pi1(&q).necklace());
        assert_eq!(cm_pi(&q, 2).necklace(), cm_pi2(&q).necklace());
    }

    #[test]
    fn cm_n_on_partials() {
        let q = cm_quiver();
        let n = cm_n(&q);
        let da = Derivation::partial(&q, 0);
        let ds = Derivation::partial(&q, 1);
        assert_eq!(n.apply(&da), Derivation::single(&q, 0, p(&q, "a")));
        assert_eq!(n.apply(&ds), Derivation::single(&q, 1, p(&q, "a")));
    }

    #[test]
    fn lifts_reproduce_displayed_endomorphisms() {
        let q = cm_quiver();
        assert_eq!(RegularEndo::complete_lift(&q, &cm_lambda_prime(&q)).unwrap(), cm_n(&q));
        let g = gh_quiver();
        assert_eq!(RegularEndo::complete_lift(&g, &gh_lambda_prime(&g)).unwrap(), gh_n(&g));
        let taut: FormQ = symplectic::lambda(&q);
        assert_eq!(RegularEndo::complete_lift(&q, &taut).unwrap(), RegularEndo::identity(&q));
    }

    #[test]
    fn transposes() {
        let q = cm_quiver();
        let n = cm_n(&q);
        assert_eq!(n.transpose(&p(&q, "d a")), p(&q, "a d a"));
        let got = n.transpose(&p(&q, "d a^"));
        assert_eq!(print_lin(&got, &q), print_lin(&crate::forms::dr_normalize(&p(&q, "a d a^")), &q));
    }

    #[test]
    fn pi1_presentations_are_closed() {
        let g = gh_quiver();
        let b = gh_pi1(&g);
        for t in b.terms() {
            assert!(!t.word(&g).is_zero());
        }
        assert_eq!(polyvec::grade(b.necklace()), Some(2));
    }

    #[test]
    fn registry() {
        assert!(matches!(lookup("cm.N").unwrap().1, Builtin::Endo(_)));
        assert!(matches!(lookup("cm.pi4").unwrap().1, Builtin::Bivector(_)));
        let (q, h1) = lookup("cm.H1").unwrap();
        let Builtin::Function(f) = h1 else { panic!() };
        assert_eq!(f, p(&q, "a^"));
        assert!(lookup("cm.I0").is_err());
        assert!(lookup("zz.pi0").is_err());
        assert!(matches!(lookup("gh.I2_0").unwrap().1, Builtin::Function(_)));
    }
}
