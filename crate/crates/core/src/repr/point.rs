//! Points of representation spaces: one matrix per arrow, shaped by a
//! dimension vector.

use std::collections::BTreeMap;

use num_rational::BigRational;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::quiver::{ArrowId, Kind, Quiver, VertexId};
use crate::scalar::{parse_rational, rational_to_string, Scalar};
use crate::word::{Poly, Word};

use super::matrix::Matrix;

#[derive(Clone, Debug, PartialEq)]
pub struct RepPoint<S: Scalar> {
    dims: Vec<usize>,
    offsets: Vec<usize>,
    total: usize,
    mats: Vec<Matrix<S>>,
}

fn layout(q: &Quiver, dims: &[usize]) -> (Vec<usize>, usize) {
    let mut offsets = vec![0; dims.len()];
    let mut acc = 0;
    for &v in q.vertices_declared() {
        offsets[v as usize] = acc;
        acc += dims[v as usize];
    }
    (offsets, acc)
}

impl<S: Scalar> RepPoint<S> {
    /// `dims` and `mats` are indexed by vertex and arrow id.
    pub fn new(q: &Quiver, dims: Vec<usize>, mats: Vec<Matrix<S>>) -> Result<Self> {
        if dims.len() != q.num_vertices() || mats.len() != q.num_arrows() {
            return Err(Error::Repr("dimension vector or matrix list has the wrong length".into()));
        }
        if dims.iter().all(|&n| n == 0) {
            return Err(Error::Repr("dimension vector is zero".into()));
        }
        for a in q.arrow_ids() {
            let want = (dims[q.head(a) as usize], dims[q.tail(a) as usize]);
            if mats[a as usize].shape() != want {
                return Err(Error::Repr(format!(
                    "matrix of `{}` is {}x{}, expected {}x{}",
                    q.arrow(a).name,
                    mats[a as usize].rows(),
                    mats[a as usize].cols(),
                    want.0,
                    want.1
                )));
            }
        }
        let (offsets, total) = layout(q, &dims);
        Ok(RepPoint {
            dims,
            offsets,
            total,
            mats,
        })
    }

    pub fn dim(&self, v: VertexId) -> usize {
        self.dims[v as usize]
    }

    pub fn dims(&self) -> &[usize] {
        &self.dims
    }

    /// `|n|`.
    pub fn total(&self) -> usize {
        self.total
    }

    pub fn matrix(&self, a: ArrowId) -> &Matrix<S> {
        &self.mats[a as usize]
    }

    pub fn matrices(&self) -> &[Matrix<S>] {
        &self.mats
    }

    /// The same point with every entry mapped, e.g. into dual numbers.
    pub fn map<T: Scalar, F: FnMut(&S) -> T>(&self, mut f: F) -> RepPoint<T> {
        RepPoint {
            dims: self.dims.clone(),
            offsets: self.offsets.clone(),
            total: self.total,
            mats: self.mats.iter().map(|m| m.map(&mut f)).collect(),
        }
    }

    /// Shift by a tangent vector: `τ_c + t·v_c`.
    pub fn shifted(&self, v: &[Matrix<S>], t: &S) -> Self {
        let mut r = self.clone();
        for (m, d) in r.mats.iter_mut().zip(v) {
            *m = &*m + &d.scale(t);
        }
        r
    }

    /// The product `τ_{x₁} ⋯ τ_{x_N}`, of size `n_{h(w)} × n_{t(w)}`.
    pub fn word_block(&self, w: &Word) -> Matrix<S> {
        let mut acc = Matrix::identity(self.dim(w.head()));
        for l in w.letters() {
            assert_eq!(l.kind, Kind::Arrow, "only paths can be evaluated");
            acc = acc.matmul(&self.mats[l.arrow as usize]);
        }
        acc
    }

    /// The block `e_h p e_t` of a polynomial.
    pub fn poly_block(&self, p: &Poly<S>, head: VertexId, tail: VertexId) -> Matrix<S> {
        let mut acc = Matrix::zeros(self.dim(head), self.dim(tail));
        for (w, c) in p.iter() {
            if w.head() == head && w.tail() == tail {
                acc = &acc + &self.word_block(w).scale(c);
            }
        }
        acc
    }

    /// `τ̃_i`: the identity on the block of vertex `i`.
    pub fn idempotent(&self, v: VertexId) -> Matrix<S> {
        let n = self.dim(v);
        let o = self.offsets[v as usize];
        Matrix::<S>::identity(n).embed(self.total, self.total, o, o)
    }

    /// The block-embedded `|n| × |n|` image of a path polynomial.
    pub fn eval(&self, p: &Poly<S>) -> Matrix<S> {
        let mut acc = Matrix::zeros(self.total, self.total);
        for (w, c) in p.iter() {
            let b = self.word_block(w).scale(c);
            let e = b.embed(self.total, self.total, self.offsets[w.head() as usize], self.offsets[w.tail() as usize]);
            acc = &acc + &e;
        }
        acc
    }

    /// Trace of a combination of closed words; open words contribute nothing.
    pub fn trace_fn(&self, f: &Poly<S>) -> S {
        let mut acc = S::zero();
        for (w, c) in f.iter() {
            if w.is_closed() && self.dim(w.head()) > 0 {
                acc = acc + c.clone() * self.word_block(w).trace();
            }
        }
        acc
    }

    /// `g·τ`: `τ_a ↦ g_{h(a)} τ_a g_{t(a)}⁻¹`, one invertible matrix per vertex.
    pub fn conjugate(&self, q: &Quiver, g: &[Matrix<S>]) -> Option<Self> {
        let inv: Vec<Matrix<S>> = g.iter().map(|m| m.inverse()).collect::<Option<_>>()?;
        let mats = q
            .arrow_ids()
            .map(|a| g[q.head(a) as usize].matmul(&self.mats[a as usize]).matmul(&inv[q.tail(a) as usize]))
            .collect();
        Some(RepPoint {
            mats,
            ..self.clone()
        })
    }

    /// `Σ τ̃_i = 1`, `τ̃_i τ̃_j = δ_ij τ̃_i` and `τ̃_{h(a)} τ̃_a τ̃_{t(a)} = τ̃_a`.
    pub fn check_block_relations(&self, q: &Quiver) -> bool {
        let idem: Vec<Matrix<S>> = (0..q.num_vertices() as VertexId).map(|v| self.idempotent(v)).collect();
        let sum = idem.iter().fold(Matrix::zeros(self.total, self.total), |acc, m| &acc + m);
        if sum != Matrix::identity(self.total) {
            return false;
        }
        for (i, a) in idem.iter().enumerate() {
            for (j, b) in idem.iter().enumerate() {
                let want = if i == j { a.clone() } else { Matrix::zeros(self.total, self.total) };
                if a.matmul(b) != want {
                    return false;
                }
            }
        }
        q.arrow_ids().all(|a| {
            let t = self.eval(&Poly::basis(Word::letter(q.arrow_letter(a))));
            idem[q.head(a) as usize].matmul(&t).matmul(&idem[q.tail(a) as usize]) == t
        })
    }
}

/// A random rational in `{n/d : −9 ≤ n ≤ 9, 1 ≤ d ≤ 4}`.
pub fn random_entry<R: Rng>(rng: &mut R) -> BigRational {
    let n: i64 = rng.gen_range(-9..=9);
    let d: i64 = rng.gen_range(1..=4);
    BigRational::new(n.into(), d.into())
}

pub fn random_matrix<R: Rng>(rng: &mut R, rows: usize, cols: usize) -> Matrix<BigRational> {
    Matrix::from_rows((0..rows).map(|_| (0..cols).map(|_| random_entry(rng)).collect()).collect())
        .unwrap_or_else(|_| Matrix::zeros(rows, cols))
}

/// A random invertible `n × n` rational matrix.
pub fn random_invertible<R: Rng>(rng: &mut R, n: usize) -> Matrix<BigRational> {
    loop {
        let m = random_matrix(rng, n, n);
        if m.inverse().is_some() {
            return m;
        }
    }
}

impl RepPoint<BigRational> {
    pub fn random<R: Rng>(q: &Quiver, dims: &[usize], rng: &mut R) -> Result<Self> {
        let mats = q
            .arrow_ids()
            .map(|a| random_matrix(rng, dims[q.head(a) as usize], dims[q.tail(a) as usize]))
            .collect();
        RepPoint::new(q, dims.to_vec(), mats)
    }

    /// `count` points drawn from one seeded stream.
    pub fn random_points(q: &Quiver, dims: &[usize], seed: u64, count: usize) -> Result<Vec<Self>> {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        (0..count).map(|_| RepPoint::random(q, dims, &mut rng)).collect()
    }

    pub fn to_json(&self, q: &Quiver) -> RepPointJson {
        RepPointJson {
            dim: q.vertices_declared().iter().map(|&v| (q.vertex_name(v).to_string(), self.dim(v))).collect(),
            matrices: q
                .arrows_declared()
                .iter()
                .map(|&a| {
                    let rows = self.mats[a as usize].to_rows().iter().map(|r| r.iter().map(rational_to_string).collect()).collect();
                    (q.arrow(a).name.clone(), rows)
                })
                .collect(),
        }
    }

    pub fn from_json(q: &Quiver, j: &RepPointJson) -> Result<Self> {
        let mut dims = vec![0; q.num_vertices()];
        for (name, n) in &j.dim {
            let v = q.vertex_id(name).ok_or_else(|| Error::Unknown(format!("vertex `{name}`")))?;
            dims[v as usize] = *n;
        }
        let mut mats = Vec::new();
        for a in q.arrow_ids() {
            let name = &q.arrow(a).name;
            let want = (dims[q.head(a) as usize], dims[q.tail(a) as usize]);
            let m = match j.matrices.get(name) {
                Some(rows) => {
                    let rows = rows
                        .iter()
                        .map(|r| {
                            r.iter()
                                .map(|s| parse_rational(s).ok_or_else(|| Error::Json(format!("bad entry `{s}`"))))
                                .collect::<Result<Vec<_>>>()
                        })
                        .collect::<Result<Vec<_>>>()?;
                    if rows.is_empty() {
                        Matrix::zeros(want.0, want.1)
                    } else {
                        Matrix::from_rows(rows)?
                    }
                }
                None => return Err(Error::Json(format!("no matrix for arrow `{name}`"))),
            };
            mats.push(m);
        }
        RepPoint::new(q, dims, mats)
    }
}

/// `{dim: {vertex: n}, matrices: {arrow: [["p/q"]]}}`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RepPointJson {
    pub dim: BTreeMap<String, usize>,
    pub matrices: BTreeMap<String, Vec<Vec<String>>>,
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::builtins::{cm_quiver, gh_quiver};
    use crate::syntax::parse;

    #[test]
    fn eval_is_a_homomorphism() {
        let q = gh_quiver();
        let pts = RepPoint::random_points(&q, &[2, 1], 7, 3).unwrap();
        let p = parse("a x + x x^ x", &q).unwrap();
        let r = parse("e(v2) + x^ a", &q).unwrap();
        for x in &pts {
            assert!(x.check_block_relations(&q));
            assert_eq!(x.eval(&crate::word::mul(&p, &r)), x.eval(&p).matmul(&x.eval(&r)));
            assert_eq!(x.eval(&crate::word::unit(&q)), Matrix::identity(3));
        }
    }

    #[test]
    fn traces_and_json() {
        let q = cm_quiver();
        let x = RepPoint::random_points(&q, &[3], 1, 1).unwrap().remove(0);
        let f = parse("a a a^", &q).unwrap();
        let g = parse("a^ a a", &q).unwrap();
        assert_eq!(x.trace_fn(&f), x.trace_fn(&g));
        assert_eq!(x.trace_fn(&crate::word::unit(&q)), crate::syntax::rational(3, 1));
        let back = RepPoint::from_json(&q, &x.to_json(&q)).unwrap();
        assert_eq!(back, x);
    }
}
