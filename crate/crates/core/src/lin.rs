//! Finite linear combinations with deterministic term order.

use std::collections::BTreeMap;
use std::ops::{Add, AddAssign, Neg, Sub, SubAssign};

use crate::scalar::Scalar;

/// `Σ c_k · k` over an ordered basis; zero coefficients are never stored.
#[derive(Clone, Debug, PartialEq)]
pub struct Lin<K: Ord, S> {
    terms: BTreeMap<K, S>,
}

impl<K: Ord + Clone, S: Scalar> Default for Lin<K, S> {
    fn default() -> Self {
        Lin::zero()
    }
}

impl<K: Ord + Clone, S: Scalar> Lin<K, S> {
    pub fn zero() -> Self {
        Lin { terms: BTreeMap::new() }
    }

    pub fn term(k: K, c: S) -> Self {
        let mut l = Lin::zero();
        l.add_term(k, c);
        l
    }

    pub fn basis(k: K) -> Self {
        Lin::term(k, S::one())
    }

    pub fn from_terms<I: IntoIterator<Item = (K, S)>>(it: I) -> Self {
        let mut l = Lin::zero();
        for (k, c) in it {
            l.add_term(k, c);
        }
        l
    }

    pub fn add_term(&mut self, k: K, c: S) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&k) {
            Some(v) => {
                let s = std::mem::replace(v, S::zero()) + c;
                if s.is_zero() {
                    self.terms.remove(&k);
                } else {
                    *v = s;
                }
            }
            None => {
                self.terms.insert(k, c);
            }
        }
    }

    pub fn add_scaled(&mut self, other: &Self, c: &S) {
        if c.is_zero() {
            return;
        }
        for (k, v) in &other.terms {
            self.add_term(k.clone(), v.clone() * c.clone());
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&K, &S)> {
        self.terms.iter()
    }

    pub fn keys(&self) -> impl Iterator<Item = &K> {
        self.terms.keys()
    }

    pub fn coeff(&self, k: &K) -> S {
        self.terms.get(k).cloned().unwrap_or_else(S::zero)
    }

    pub fn scale(&self, c: &S) -> Self {
        if c.is_zero() {
            return Lin::zero();
        }
        Lin {
            terms: self.terms.iter().map(|(k, v)| (k.clone(), v.clone() * c.clone())).collect(),
        }
    }

    /// Leading (smallest) term.
    pub fn first(&self) -> Option<(&K, &S)> {
        self.terms.iter().next()
    }

    /// Apply a linear map given on basis elements.
    pub fn map_linear<K2: Ord + Clone, F: FnMut(&K) -> Lin<K2, S>>(&self, mut f: F) -> Lin<K2, S> {
        let mut out = Lin::zero();
        for (k, c) in &self.terms {
            out.add_scaled(&f(k), c);
        }
        out
    }

    /// Apply a partial relabelling with sign, dropping basis elements sent to `None`.
    pub fn map_terms<K2: Ord + Clone, F: FnMut(&K) -> Option<(K2, S)>>(&self, mut f: F) -> Lin<K2, S> {
        let mut out = Lin::zero();
        for (k, c) in &self.terms {
            if let Some((k2, s)) = f(k) {
                out.add_term(k2, s * c.clone());
            }
        }
        out
    }

    pub fn map_coeffs<T: Scalar, F: FnMut(&S) -> T>(&self, mut f: F) -> Lin<K, T> {
        Lin::from_terms(self.terms.iter().map(|(k, c)| (k.clone(), f(c))))
    }

    pub fn into_iter_terms(self) -> impl Iterator<Item = (K, S)> {
        self.terms.into_iter()
    }
}

impl<K: Ord + Clone, S: Scalar> AddAssign<&Lin<K, S>> for Lin<K, S> {
    fn add_assign(&mut self, o: &Lin<K, S>) {
        for (k, v) in &o.terms {
            self.add_term(k.clone(), v.clone());
        }
    }
}

impl<K: Ord + Clone, S: Scalar> SubAssign<&Lin<K, S>> for Lin<K, S> {
    fn sub_assign(&mut self, o: &Lin<K, S>) {
        for (k, v) in &o.terms {
            self.add_term(k.clone(), -v.clone());
        }
    }
}

impl<K: Ord + Clone, S: Scalar> Add for Lin<K, S> {
    type Output = Self;
    fn add(mut self, o: Self) -> Self {
        if self.terms.len() < o.terms.len() {
            let mut o = o;
            o += &self;
            return o;
        }
        self += &o;
        self
    }
}

impl<K: Ord + Clone, S: Scalar> Sub for Lin<K, S> {
    type Output = Self;
    fn sub(mut self, o: Self) -> Self {
        self -= &o;
        self
    }
}

impl<K: Ord + Clone, S: Scalar> Add<&Lin<K, S>> for &Lin<K, S> {
    type Output = Lin<K, S>;
    fn add(self, o: &Lin<K, S>) -> Lin<K, S> {
        let mut r = self.clone();
        r += o;
        r
    }
}

impl<K: Ord + Clone, S: Scalar> Sub<&Lin<K, S>> for &Lin<K, S> {
    type Output = Lin<K, S>;
    fn sub(self, o: &Lin<K, S>) -> Lin<K, S> {
        let mut r = self.clone();
        r -= o;
        r
    }
}

impl<K: Ord + Clone, S: Scalar> Neg for Lin<K, S> {
    type Output = Self;
    fn neg(self) -> Self {
        Lin {
            terms: self.terms.into_iter().map(|(k, v)| (k, -v)).collect(),
        }
    }
}

impl<K: Ord + Clone, S: Scalar> Neg for &Lin<K, S> {
    type Output = Lin<K, S>;
    fn neg(self) -> Lin<K, S> {
        -self.clone()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_rational::BigRational;

    type L = Lin<u32, BigRational>;

    #[test]
    fn cancellation_removes_terms() {
        let mut l = L::term(1, BigRational::int(2));
        l.add_term(1, BigRational::int(-2));
        assert!(l.is_zero());
        let a = L::basis(3) + L::basis(1);
        assert_eq!(a.keys().copied().collect::<Vec<_>>(), vec![1, 3]);
        assert!((a.clone() - a).is_zero());
    }
}
