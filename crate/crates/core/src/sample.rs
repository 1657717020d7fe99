//! Seeded random inputs and the structural property suite built on them.
//!
//! Generated objects are small on purpose: short words, coefficients in
//! `±{1,2,3}`, at most three terms.

use crate::derivation::Derivation;
use crate::forms::tensor::{self, TensorWord};
use crate::forms::Form;
use crate::lin::Lin;
use crate::pn::bivector::{Bivector, Term};
use crate::polyvec::{self, schouten, PolyVector};
use crate::quiver::{ArrowId, Kind, Letter, Quiver, VertexId};
use crate::word::{all_paths, Poly, Word};
use crate::pn::checks::Verdict;
use crate::syntax::{parse, print_lin};
use crate::Rational;
use num_bigint::BigInt;
use num_traits::One;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub struct Gen<'q> {
    pub q: &'q Quiver,
    pub rng: ChaCha8Rng,
    paths: Vec<Word>,
}

impl<'q> Gen<'q> {
    pub fn new(q: &'q Quiver, seed: u64) -> Self {
        Gen {
            q,
            rng: ChaCha8Rng::seed_from_u64(seed),
            paths: all_paths(q, 3),
        }
    }

    /// Small nonzero integers keep the arithmetic fast while still
    /// exercising cancellations.
    pub fn coeff(&mut self) -> Rational {
        let mut n: i64 = self.rng.gen_range(-3..=3);
        if n == 0 {
            n = 1;
        }
        Rational::from_integer(BigInt::from(n))
    }

    fn letters(&self, kinds: &[Kind], head: VertexId) -> Vec<Letter> {
        let mut out = Vec::new();
        for a in self.q.arrow_ids() {
            for &k in kinds {
                let l = self.q.letter(k, a);
                if l.head == head {
                    out.push(l);
                }
            }
        }
        out
    }

    /// A random walk of exactly `len` letters with `marked` letters of kind
    /// `mark`, the rest arrows; `None` if the walk got stuck or missed.
    fn walk(&mut self, len: usize, mark: Kind, marked: usize, closed: bool) -> Option<Word> {
        let v0 = self.rng.gen_range(0..self.q.num_vertices()) as VertexId;
        if len == 0 {
            return (marked == 0).then(|| Word::trivial(v0));
        }
        let mut slots: Vec<bool> = (0..len).map(|i| i < marked).collect();
        slots.shuffle(&mut self.rng);
        let mut v = v0;
        let mut ls = Vec::with_capacity(len);
        for &m in &slots {
            let kind = if m { mark } else { Kind::Arrow };
            let opts = self.letters(&[kind], v);
            let l = *opts.choose(&mut self.rng)?;
            v = l.tail;
            ls.push(l);
        }
        if closed && v != v0 {
            return None;
        }
        Word::from_letters(&ls)
    }

    fn word(&mut self, max_len: usize, mark: Kind, marked: usize, closed: bool) -> Word {
        for _ in 0..1000 {
            let len = self.rng.gen_range(marked.max(1)..=max_len.max(marked.max(1)));
            if let Some(w) = self.walk(len, mark, marked, closed) {
                return w;
            }
        }
        panic!("no word found");
    }

    /// A homogeneous polyvector of the given grade in necklace normal form.
    pub fn polyvector(&mut self, grade: usize, max_len: usize) -> PolyVector<Rational> {
        let n = self.rng.gen_range(1..=3);
        let mut raw = Poly::zero();
        for _ in 0..n {
            let w = self.word(max_len, Kind::Vector, grade, true);
            let c = self.coeff();
            raw.add_term(w, c);
        }
        polyvec::normalize(&raw)
    }

    /// A path polynomial of words of length `≤ max_len`, all endpoints mixed.
    pub fn path_poly(&mut self, max_len: usize) -> Poly<Rational> {
        let n = self.rng.gen_range(1..=3);
        let mut out = Poly::zero();
        for _ in 0..n {
            let w = self.word(max_len, Kind::Arrow, 0, false);
            let c = self.coeff();
            out.add_term(w, c);
        }
        out
    }

    /// A closed path polynomial, i.e. a 0-form representing a function.
    pub fn function(&mut self, max_len: usize) -> Poly<Rational> {
        let n = self.rng.gen_range(1..=3);
        let mut out = Poly::zero();
        for _ in 0..n {
            let w = self.word(max_len, Kind::Arrow, 0, true);
            let c = self.coeff();
            out.add_term(w, c);
        }
        out
    }

    /// A homogeneous element of `Ω^deg` with words of length `≤ max_len`.
    pub fn form(&mut self, deg: usize, max_len: usize) -> Form<Rational> {
        let n = self.rng.gen_range(1..=3);
        let mut out = Form::zero();
        for _ in 0..n {
            let w = self.word(max_len, Kind::Diff, deg, false);
            let c = self.coeff();
            out.add_term(w, c);
        }
        out
    }

    /// A closed 1-form `Σ p dc` with `|p| ≤ max_len`.
    pub fn one_form(&mut self, max_len: usize) -> Form<Rational> {
        let n = self.rng.gen_range(1..=3);
        let mut out = Form::zero();
        for _ in 0..n {
            let w = self.word(max_len + 1, Kind::Diff, 1, true);
            let c = self.coeff();
            out.add_term(w, c);
        }
        out
    }

    /// A derivation whose values are paths of length `≤ 3`.
    pub fn derivation(&mut self) -> Derivation<Rational> {
        let mut th = Derivation::zero();
        let q = self.q;
        for c in q.arrow_ids() {
            if self.rng.gen_bool(0.5) {
                continue;
            }
            let par: Vec<Word> = self.paths.iter().filter(|p| p.head() == q.head(c) && p.tail() == q.tail(c)).cloned().collect();
            let k = self.rng.gen_range(1..=2);
            let mut p = Poly::zero();
            for _ in 0..k {
                let w = par.choose(&mut self.rng).expect("parallel path").clone();
                let cf = self.coeff();
                p.add_term(w, cf);
            }
            th.add_component(q, c, &p);
        }
        th
    }

    pub fn arrow(&mut self) -> ArrowId {
        self.rng.gen_range(0..self.q.num_arrows()) as ArrowId
    }

    /// A combination of paths from `tail` to `head` of length `≤ 2`.
    pub fn path_between(&mut self, head: VertexId, tail: VertexId) -> Option<Poly<Rational>> {
        let opts: Vec<Word> = self.paths.iter().filter(|p| p.head() == head && p.tail() == tail && p.len() <= 2).cloned().collect();
        if opts.is_empty() {
            return None;
        }
        let mut p = Poly::zero();
        for _ in 0..self.rng.gen_range(1..=2) {
            let w = opts.choose(&mut self.rng)?.clone();
            let c = self.coeff();
            p.add_term(w, c);
        }
        Some(p)
    }

    /// A tensor word `[p₀ ⊗ … ⊗ p_r]` with composable slots, cut from one
    /// random path.
    pub fn tensor(&mut self, r: usize) -> Lin<TensorWord, Rational> {
        loop {
            let w = self.word(r + 3, Kind::Arrow, 0, false);
            let ls = w.letters();
            if ls.len() < r {
                continue;
            }
            let mut cuts: Vec<usize> = (0..ls.len()).collect();
            cuts.shuffle(&mut self.rng);
            cuts.truncate(r);
            cuts.sort();
            let mut bounds = vec![0];
            bounds.extend(cuts);
            bounds.push(ls.len());
            let slots = bounds
                .windows(2)
                .map(|b| Word::from_letters_at(&ls[b[0]..b[1]], w.head()))
                .collect();
            let c = self.coeff();
            return tensor::tensor::<Rational>(slots).scale(&c);
        }
    }
}

pub fn sign(odd: bool) -> Rational {
    if odd {
        -Rational::one()
    } else {
        Rational::one()
    }
}

/// `(−1)^{(p−1)(s−1)}[λ,[ξ,σ]] + (−1)^{(q−1)(p−1)}[ξ,[σ,λ]] + (−1)^{(s−1)(q−1)}[σ,[λ,ξ]]`
/// for homogeneous arguments of grades `p, q, s`.
pub fn jacobiator(q: &Quiver, l: (&PolyVector<Rational>, usize), x: (&PolyVector<Rational>, usize), z: (&PolyVector<Rational>, usize)) -> PolyVector<Rational> {
    let e = |a: usize, b: usize| sign((a + 1) * (b + 1) % 2 == 1);
    let t1 = schouten(q, l.0, &schouten(q, x.0, z.0)).scale(&e(l.1, z.1));
    let t2 = schouten(q, x.0, &schouten(q, z.0, l.0)).scale(&e(x.1, l.1));
    let t3 = schouten(q, z.0, &schouten(q, l.0, x.0)).scale(&e(z.1, x.1));
    t1 + t2 + t3
}

/// Two commutator terms `[P ∂_a, R ∂_b]` with random arrows and short
/// coefficient paths.
pub fn random_bivector(g: &mut Gen) -> Bivector<Rational> {
    let q = g.q;
    let mut terms = Vec::new();
    for _ in 0..2 {
        let a = g.arrow();
        let b = g.arrow();
        let p = g.path_between(q.head(b), q.tail(a));
        let r = g.path_between(q.head(a), q.tail(b));
        if let (Some(p), Some(r)) = (p, r) {
            terms.push(Term { p, a, r, b });
        }
    }
    Bivector::from_terms(q, terms)
}

/// Graded antisymmetry and Jacobi of the Schouten bracket, necklace and
/// `DR` normalization idempotence, `d² = 0`, the Cartan identities, the
/// parse/print round trip and both bivector round trips, on `cases` seeds
/// starting at `seed`.
pub fn structural_suite(q: &Quiver, seed: u64, cases: usize) -> Verdict {
    let mut v = Verdict::from_first(0, None);
    let fail = |v: &mut Verdict, ok: bool, what: &dyn Fn() -> String| {
        v.cases += 1;
        if !ok && v.residue.is_none() {
            v.pass = false;
            v.residue = Some(what());
        }
    };
    let probes = crate::pn::family::Family::<Rational>::new(q, 1).forms;
    for s in seed..seed + cases as u64 {
        let mut g = Gen::new(q, s);
        let (p, r, t) = ((s % 3) as usize, ((s >> 2) % 3) as usize, ((s >> 4) % 3) as usize);
        let l = g.polyvector(p, 6);
        let x = g.polyvector(r, 6);
        let anti = schouten(q, &l, &x) + schouten(q, &x, &l).scale(&sign((p + 1) * (r + 1) % 2 == 1));
        fail(&mut v, anti.is_zero(), &|| format!("seed {s}: graded antisymmetry residue {}", print_lin(&anti, q)));
        fail(&mut v, polyvec::normalize(&l) == l, &|| format!("seed {s}: necklace normalization moved {}", print_lin(&l, q)));
        let (l, x, z) = (g.polyvector(p, 4), g.polyvector(r, 4), g.polyvector(t, 4));
        let jac = jacobiator(q, (&l, p), (&x, r), (&z, t));
        fail(&mut v, jac.is_zero(), &|| format!("seed {s}: graded Jacobi residue {}", print_lin(&jac, q)));

        let u = g.form((s % 3) as usize, 3);
        fail(&mut v, crate::forms::d(&crate::forms::d(&u)).is_zero(), &|| format!("seed {s}: d² ≠ 0 on {}", print_lin(&u, q)));
        let n = crate::forms::dr_normalize(&u);
        fail(&mut v, crate::forms::dr_normalize(&n) == n, &|| format!("seed {s}: DR normalization moved {}", print_lin(&n, q)));
        let text = print_lin(&u, q);
        fail(&mut v, parse(&text, q).ok().as_ref() == Some(&u), &|| format!("seed {s}: `{text}` does not re-parse"));

        let (th, eta) = (g.derivation(), g.derivation());
        let u = g.form((s % 3) as usize, 2);
        let br = th.bracket(&eta);
        let cartan = crate::forms::lie(&th, &u) - crate::forms::lie_direct(&th, &u);
        fail(&mut v, cartan.is_zero(), &|| format!("seed {s}: L = di + id residue {}", print_lin(&cartan, q)));
        let ll = crate::forms::lie_commutator(&th, &eta, &u) - crate::forms::lie(&br, &u);
        fail(&mut v, ll.is_zero(), &|| format!("seed {s}: [L, L] = L residue {}", print_lin(&ll, q)));
        let li = crate::forms::lie(&th, &crate::forms::contract(&eta, &u)) - crate::forms::contract(&eta, &crate::forms::lie(&th, &u)) - crate::forms::contract(&br, &u);
        fail(&mut v, li.is_zero(), &|| format!("seed {s}: [L, i] = i residue {}", print_lin(&li, q)));

        let pi = random_bivector(&mut g);
        let back = Bivector::from_polyvector(q, pi.necklace());
        fail(&mut v, back.is_ok_and(|b| b.necklace() == pi.necklace()), &|| format!("seed {s}: necklace round trip of {}", pi.to_string_in(q)));
        if s % 10 == 0 {
            let m = crate::pn::bivector::map_to_bivector(q, |a| pi.map(q, a), &probes);
            fail(&mut v, m.is_ok_and(|b| b.necklace() == pi.necklace()), &|| format!("seed {s}: map round trip of {}", pi.to_string_in(q)));
        }
    }
    v
}
