//! Linear maps between tensor products of labelled spaces.
//!
//! Basis indices of `V1 ⊗ … ⊗ Vk` are lexicographic with the leftmost factor
//! as the major index, matching [`SparseMatrix::kronecker`]. An empty factor
//! list stands for the ground field.

use std::fmt;

use crate::error::{Error, Result};
use crate::linalg::{Field, Scalar, SparseMatrix};

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Space {
    pub dim: usize,
    pub label: String,
    pub basis_names: Option<Vec<String>>,
}

impl Space {
    pub fn new(label: impl Into<String>, dim: usize) -> Self {
        Space { dim, label: label.into(), basis_names: None }
    }

    pub fn with_basis(label: impl Into<String>, names: Vec<String>) -> Self {
        Space { dim: names.len(), label: label.into(), basis_names: Some(names) }
    }

    /// Dual space; a trailing `*` is removed instead of doubled so that
    /// dualizing twice returns the original labels.
    pub fn dual(&self) -> Space {
        let star = |s: &str| match s.strip_suffix('*') {
            Some(base) => base.to_string(),
            None => format!("{s}*"),
        };
        Space {
            dim: self.dim,
            label: star(&self.label),
            basis_names: self.basis_names.as_ref().map(|v| v.iter().map(|n| star(n)).collect()),
        }
    }

    pub fn basis_name(&self, i: usize) -> String {
        match &self.basis_names {
            Some(names) => names[i].clone(),
            None => format!("{}[{i}]", self.label),
        }
    }

    pub fn relabel(&self, label: impl Into<String>) -> Space {
        Space { label: label.into(), ..self.clone() }
    }
}

impl fmt::Display for Space {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}({})", self.label, self.dim)
    }
}

pub fn dims(spaces: &[Space]) -> Vec<usize> {
    spaces.iter().map(|s| s.dim).collect()
}

pub fn total_dim(spaces: &[Space]) -> usize {
    spaces.iter().map(|s| s.dim).product()
}

pub fn ravel(dims: &[usize], idx: &[usize]) -> usize {
    debug_assert_eq!(dims.len(), idx.len());
    idx.iter().zip(dims).fold(0, |acc, (&i, &d)| {
        debug_assert!(i < d);
        acc * d + i
    })
}

pub fn unravel(dims: &[usize], mut flat: usize) -> Vec<usize> {
    let mut out = vec![0; dims.len()];
    for (slot, &d) in out.iter_mut().zip(dims).rev() {
        *slot = flat % d;
        flat /= d;
    }
    out
}

/// All multi-indices of a tensor product, in basis order.
pub fn multi_indices(dims: &[usize]) -> impl Iterator<Item = Vec<usize>> + '_ {
    let total: usize = dims.iter().product();
    (0..total).map(move |i| unravel(dims, i))
}

fn join(spaces: &[Space]) -> String {
    if spaces.is_empty() {
        return "k".into();
    }
    spaces.iter().map(|s| s.label.as_str()).collect::<Vec<_>>().join("⊗")
}

/// Linear map `⊗ domain → ⊗ codomain`; the matrix has one row per codomain
/// basis vector and one column per domain basis vector.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LinMap {
    domain: Vec<Space>,
    codomain: Vec<Space>,
    matrix: SparseMatrix,
}

impl LinMap {
    pub fn new(domain: Vec<Space>, codomain: Vec<Space>, matrix: SparseMatrix) -> Result<Self> {
        let (rows, cols) = (total_dim(&codomain), total_dim(&domain));
        if matrix.n_rows() != rows || matrix.n_cols() != cols {
            return Err(Error::DimensionMismatch {
                context: format!(
                    "map {} → {} given a {}x{} matrix",
                    join(&domain),
                    join(&codomain),
                    matrix.n_rows(),
                    matrix.n_cols()
                ),
                left: rows * cols,
                right: matrix.n_rows() * matrix.n_cols(),
            });
        }
        Ok(LinMap { domain, codomain, matrix })
    }

    /// Map built from the image of every domain basis tuple.
    pub fn from_fn<F>(field: Field, domain: Vec<Space>, codomain: Vec<Space>, mut image: F) -> Self
    where
        F: FnMut(&[usize]) -> Vec<(Vec<usize>, Scalar)>,
    {
        let (dd, cd) = (dims(&domain), dims(&codomain));
        let mut entries = Vec::new();
        for (col, idx) in multi_indices(&dd).enumerate() {
            for (out, v) in image(&idx) {
                entries.push((ravel(&cd, &out), col, v));
            }
        }
        let matrix = SparseMatrix::from_triplets(field, total_dim(&codomain), total_dim(&domain), entries);
        LinMap { domain, codomain, matrix }
    }

    pub fn zero(field: Field, domain: Vec<Space>, codomain: Vec<Space>) -> Self {
        let matrix = SparseMatrix::zeros(field, total_dim(&codomain), total_dim(&domain));
        LinMap { domain, codomain, matrix }
    }

    pub fn identity(field: Field, spaces: &[Space]) -> Self {
        LinMap {
            domain: spaces.to_vec(),
            codomain: spaces.to_vec(),
            matrix: SparseMatrix::identity(field, total_dim(spaces)),
        }
    }

    pub fn domain(&self) -> &[Space] {
        &self.domain
    }

    pub fn codomain(&self) -> &[Space] {
        &self.codomain
    }

    pub fn matrix(&self) -> &SparseMatrix {
        &self.matrix
    }

    pub fn into_matrix(self) -> SparseMatrix {
        self.matrix
    }

    pub fn field(&self) -> Field {
        self.matrix.field()
    }

    /// Same matrix with new factor lists of matching total dimensions.
    pub fn retyped(&self, domain: Vec<Space>, codomain: Vec<Space>) -> Result<Self> {
        LinMap::new(domain, codomain, self.matrix.clone())
    }

    /// `self ∘ inner`.
    pub fn compose(&self, inner: &LinMap) -> Result<LinMap> {
        let (a, b) = (total_dim(&self.domain), total_dim(&inner.codomain));
        if a != b {
            return Err(Error::DimensionMismatch {
                context: format!(
                    "composition ({} → {}) ∘ ({} → {})",
                    join(&self.domain),
                    join(&self.codomain),
                    join(&inner.domain),
                    join(&inner.codomain)
                ),
                left: a,
                right: b,
            });
        }
        Ok(LinMap {
            domain: inner.domain.clone(),
            codomain: self.codomain.clone(),
            matrix: self.matrix.mul(&inner.matrix)?,
        })
    }

    /// `maps[0] ∘ maps[1] ∘ … ∘ maps[n-1]`; the last map is applied first.
    pub fn compose_chain(maps: &[&LinMap]) -> Result<LinMap> {
        let (last, rest) = maps.split_last().ok_or_else(|| Error::Invalid("empty composition chain".into()))?;
        let mut acc = (*last).clone();
        for (k, m) in rest.iter().enumerate().rev() {
            acc = m.compose(&acc).map_err(|e| match e {
                Error::DimensionMismatch { context, left, right } => {
                    Error::DimensionMismatch { context: format!("chain link {k}/{}: {context}", k + 1), left, right }
                }
                other => other,
            })?;
        }
        Ok(acc)
    }

    pub fn tensor(&self, other: &LinMap) -> LinMap {
        LinMap {
            domain: [self.domain.clone(), other.domain.clone()].concat(),
            codomain: [self.codomain.clone(), other.codomain.clone()].concat(),
            matrix: self.matrix.kronecker(&other.matrix),
        }
    }

    pub fn tensor_all(maps: &[&LinMap], field: Field) -> LinMap {
        maps.iter().fold(LinMap::identity(field, &[]), |acc, m| acc.tensor(m))
    }

    /// `Id^{⊗offset} ⊗ self ⊗ Id` acting on `context`, where `self`'s domain
    /// occupies the slots `offset .. offset + self.domain().len()`.
    pub fn embed_at(&self, offset: usize, context: &[Space]) -> Result<LinMap> {
        let end = offset + self.domain.len();
        if end > context.len() {
            return Err(Error::Slot(format!(
                "map on {} factors at slot {offset} exceeds context of {}",
                self.domain.len(),
                context.len()
            )));
        }
        for (k, (s, t)) in self.domain.iter().zip(&context[offset..end]).enumerate() {
            if s.dim != t.dim {
                return Err(Error::Slot(format!("slot {}: map expects {} but context has {}", offset + k, s, t)));
            }
        }
        let field = self.field();
        let left = LinMap::identity(field, &context[..offset]);
        let right = LinMap::identity(field, &context[end..]);
        let mut out = left.tensor(self).tensor(&right);
        out.domain = context.to_vec();
        Ok(out)
    }

    /// Dual map with reversed factor order: for `f: V1⊗…⊗Vk → W1⊗…⊗Wl`
    /// this is `Wl*⊗…⊗W1* → Vk*⊗…⊗V1*`, adjoint under the pairing
    /// `⟨l1⊗…⊗lk, h1⊗…⊗hk⟩ = ∏ l_t(h_{k+1-t})`.
    pub fn rainbow_dual(&self) -> LinMap {
        let rev_dual = |spaces: &[Space]| spaces.iter().rev().map(Space::dual).collect::<Vec<_>>();
        let (dd, cd) = (dims(&self.domain), dims(&self.codomain));
        let (dd_rev, cd_rev): (Vec<usize>, Vec<usize>) =
            (dd.iter().rev().copied().collect(), cd.iter().rev().copied().collect());
        let reverse = |d: &[usize], d_rev: &[usize], i: usize| {
            let mut idx = unravel(d, i);
            idx.reverse();
            ravel(d_rev, &idx)
        };
        let entries: Vec<_> = self
            .matrix
            .entries()
            .map(|(w, v, x)| (reverse(&dd, &dd_rev, v), reverse(&cd, &cd_rev, w), x.clone()))
            .collect();
        LinMap {
            domain: rev_dual(&self.codomain),
            codomain: rev_dual(&self.domain),
            matrix: SparseMatrix::from_triplets(self.field(), self.matrix.n_cols(), self.matrix.n_rows(), entries),
        }
    }

    pub fn add(&self, other: &LinMap) -> Result<LinMap> {
        Ok(LinMap { matrix: self.matrix.add(&other.matrix)?, ..self.clone() })
    }

    pub fn sub(&self, other: &LinMap) -> Result<LinMap> {
        Ok(LinMap { matrix: self.matrix.sub(&other.matrix)?, ..self.clone() })
    }

    pub fn scale(&self, s: &Scalar) -> LinMap {
        LinMap { matrix: self.matrix.scale(s), ..self.clone() }
    }

    pub fn apply(&self, v: &[Scalar]) -> Vec<Scalar> {
        self.matrix.mul_vec(v)
    }

    /// Coefficient of the codomain tuple `out` in the image of `input`.
    pub fn entry(&self, out: &[usize], input: &[usize]) -> Scalar {
        self.matrix.get(ravel(&dims(&self.codomain), out), ravel(&dims(&self.domain), input))
    }

    /// Nonzero terms of the image of a domain basis tuple.
    pub fn image_of(&self, input: &[usize]) -> Vec<(Vec<usize>, Scalar)> {
        let col = ravel(&dims(&self.domain), input);
        let cd = dims(&self.codomain);
        // column access on row storage; maps here are small
        (0..self.matrix.n_rows())
            .filter_map(|r| {
                let v = self.matrix.get(r, col);
                (!v.is_zero()).then(|| (unravel(&cd, r), v))
            })
            .collect()
    }

    pub fn describe(&self) -> String {
        format!("{} → {}", join(&self.domain), join(&self.codomain))
    }
}

/// Permutation of tensor factors: output factor `t` is input factor `perm[t]`.
pub fn permutation(field: Field, spaces: &[Space], perm: &[usize]) -> Result<LinMap> {
    let mut seen = vec![false; spaces.len()];
    if perm.len() != spaces.len() || perm.iter().any(|&p| p >= spaces.len() || std::mem::replace(&mut seen[p], true)) {
        return Err(Error::Invalid(format!("{perm:?} is not a permutation of {} factors", spaces.len())));
    }
    let codomain: Vec<Space> = perm.iter().map(|&p| spaces[p].clone()).collect();
    Ok(LinMap::from_fn(field, spaces.to_vec(), codomain, |idx| {
        vec![(perm.iter().map(|&p| idx[p]).collect(), field.one())]
    }))
}

/// The symmetry `c_{V,W}: V⊗W → W⊗V`.
pub fn flip(field: Field, v: &Space, w: &Space) -> LinMap {
    permutation(field, &[v.clone(), w.clone()], &[1, 0]).expect("two-factor swap")
}

/// Evaluation maps `V*⊗V → k` and `V⊗V* → k`.
pub fn evaluation(field: Field, v: &Space) -> (LinMap, LinMap) {
    let vd = v.dual();
    let ev =
        |a: Space, b: Space| {
            LinMap::from_fn(field, vec![a, b], vec![], |idx| {
                if idx[0] == idx[1] {
                    vec![(vec![], field.one())]
                } else {
                    vec![]
                }
            })
        };
    (ev(vd.clone(), v.clone()), ev(v.clone(), vd))
}
