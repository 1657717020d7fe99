//! Graded cyclic words.
//!
//! Quotienting a free graded algebra by graded commutators leaves cyclic words
//! in which moving a block `P` past the rest `R` costs `(−1)^{|P||R|}`. The
//! representative chosen is the least rotation in the canonical order; a class
//! that reaches that rotation with both signs equals its own negative and is
//! zero. Open words are zero as well.

use std::cmp::Ordering;

use crate::lin::Lin;
use crate::quiver::Kind;
use crate::scalar::Scalar;
use crate::word::Word;

fn cmp_rotations(w: &Word, i: usize, j: usize) -> Ordering {
    let ls = w.letters();
    let n = ls.len();
    for t in 0..n {
        let c = ls[(i + t) % n].cmp(&ls[(j + t) % n]);
        if c != Ordering::Equal {
            return c;
        }
    }
    Ordering::Equal
}

/// Canonical rotation of `w` with its sign (`true` = negative), where letters
/// of kind `odd` have degree one and all others degree zero.
pub fn cyclic_normal(w: &Word, odd: Kind) -> Option<(Word, bool)> {
    if !w.is_closed() {
        return None;
    }
    let n = w.len();
    if n <= 1 {
        return Some((w.clone(), false));
    }
    let ls = w.letters();
    let total = ls.iter().filter(|l| l.kind == odd).count();
    // sign of rotation by k: the block of the first k letters jumps past the rest
    let mut best = 0usize;
    let mut best_sign = false;
    let mut conflict = false;
    let mut prefix = 0usize;
    for k in 1..n {
        if ls[k - 1].kind == odd {
            prefix += 1;
        }
        let sign = (prefix * (total - prefix)) % 2 == 1;
        match cmp_rotations(w, k, best) {
            Ordering::Less => {
                best = k;
                best_sign = sign;
                conflict = false;
            }
            Ordering::Equal => {
                if sign != best_sign {
                    conflict = true;
                }
            }
            Ordering::Greater => {}
        }
    }
    if conflict {
        return None;
    }
    Some((w.rotate(best), best_sign))
}

/// Normalize every term of a combination.
pub fn normalize<S: Scalar>(p: &Lin<Word, S>, odd: Kind) -> Lin<Word, S> {
    p.map_terms(|w| cyclic_normal(w, odd).map(|(v, neg)| (v, S::one().signed(neg))))
}

/// Normalize a single signed word.
pub fn normalize_word<S: Scalar>(w: &Word, c: S, odd: Kind) -> Lin<Word, S> {
    match cyclic_normal(w, odd) {
        Some((v, neg)) => Lin::term(v, c.signed(neg)),
        None => Lin::zero(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::quiver::Quiver;
    use num_rational::BigRational;

    fn cm() -> Quiver {
        Quiver::new("cm", &["v"], &[("a", "v", "v")]).unwrap().double()
    }

    #[test]
    fn rotations_share_a_class() {
        let q = cm();
        let a = q.arrow_letter(0);
        let b = q.arrow_letter(1);
        let w1 = Word::from_letters(&[a, b]).unwrap();
        let w2 = Word::from_letters(&[b, a]).unwrap();
        assert_eq!(cyclic_normal(&w1, Kind::Vector), cyclic_normal(&w2, Kind::Vector));
    }

    #[test]
    fn odd_pair_anticommutes() {
        let q = cm();
        let da = q.letter(Kind::Vector, 0);
        let db = q.letter(Kind::Vector, 1);
        let w1 = Word::from_letters(&[db, da]).unwrap();
        let w2 = Word::from_letters(&[da, db]).unwrap();
        let (n1, s1) = cyclic_normal(&w1, Kind::Vector).unwrap();
        let (n2, s2) = cyclic_normal(&w2, Kind::Vector).unwrap();
        assert_eq!(n1, n2);
        assert_ne!(s1, s2);
    }

    #[test]
    fn self_antisymmetric_class_vanishes() {
        let q = cm();
        let da = q.letter(Kind::Vector, 0);
        let w = Word::from_letters(&[da, da]).unwrap();
        assert!(cyclic_normal(&w, Kind::Vector).is_none());
        // even count of odd letters per period: survives
        let a = q.arrow_letter(0);
        let w = Word::from_letters(&[a, a]).unwrap();
        assert!(cyclic_normal(&w, Kind::Vector).is_some());
    }

    #[test]
    fn open_words_vanish() {
        let q = Quiver::new("gh", &["v1", "v2"], &[("a", "v1", "v1"), ("y", "v1", "v2"), ("x", "v2", "v1")])
            .unwrap()
            .double();
        let x = Word::letter(q.arrow_letter(q.arrow_id("x").unwrap()));
        assert!(normalize_word(&x, BigRational::from_integer(1.into()), Kind::Vector).is_zero());
    }
}
