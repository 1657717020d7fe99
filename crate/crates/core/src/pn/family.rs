//! Finite test families: `p ∂_c` and `p dc` with `p` over all paths of
//! bounded length.

use crate::derivation::Derivation;
use crate::forms::{self, Form};
use crate::quiver::Quiver;
use crate::scalar::Scalar;
use crate::word::{all_paths, Poly};

pub const DEFAULT_BOUND: usize = 3;

#[derive(Clone, Debug)]
pub struct Family<S: Scalar> {
    pub bound: usize,
    pub derivations: Vec<Derivation<S>>,
    pub forms: Vec<Form<S>>,
}

impl<S: Scalar> Family<S> {
    /// Every `p ∂_c` with `p ∥ c` and every `p dc` with `p dc` closed,
    /// `|p| ≤ bound`.
    pub fn new(q: &Quiver, bound: usize) -> Self {
        let paths = all_paths(q, bound);
        let mut derivations = Vec::new();
        let mut forms_ = Vec::new();
        for c in q.arrow_ids() {
            for p in &paths {
                if p.head() == q.head(c) && p.tail() == q.tail(c) {
                    derivations.push(Derivation::single(q, c, Poly::basis(p.clone())));
                }
                if p.head() == q.tail(c) && p.tail() == q.head(c) {
                    forms_.push(forms::one_form(q, &Poly::basis(p.clone()), c));
                }
            }
        }
        Family {
            bound,
            derivations,
            forms: forms_,
        }
    }

    /// The `bound = 0` family: `dc`, and `∂_c` for loops.
    pub fn generators(q: &Quiver) -> Self {
        Family::new(q, 0)
    }

    pub fn len(&self) -> usize {
        self.derivations.len() + self.forms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }
}
