//! Graded complexes with two degree-lowering differentials, their identity
//! checks and homology dimensions.
//!
//! A complex is a finite list of homogeneous pieces (groups), each with a
//! total degree `≤ bound`; `d` and `d′` are stored blockwise between groups
//! and always lower the total degree by one, so the truncation is exact.

mod generic;
mod table;

pub use generic::{check_character, eps_characters, generic_differentials, BraidedCharacter};
pub use table::{pi_commutation, pi_commutation_suite, two_sided_complex, yd_bidifferential, PiMaps, PI_NAMES};

use std::collections::BTreeMap;
use std::fmt;

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::linalg::{Field, SparseMatrix};
use crate::report::{AxiomCheck, AxiomReport};
use crate::tensor::{total_dim, LinMap, Space};

/// One homogeneous piece, a tensor product of `factors`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Group {
    pub label: String,
    pub multidegree: Vec<usize>,
    pub total: usize,
    pub factors: Vec<Space>,
}

impl Group {
    pub fn dim(&self) -> usize {
        total_dim(&self.factors)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Which {
    D,
    DPrime,
    /// `d + d′`.
    Total,
}

impl fmt::Display for Which {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Which::D => "d",
            Which::DPrime => "d_prime",
            Which::Total => "total",
        })
    }
}

/// Blocks are keyed by `(source group, target group)`; missing blocks are zero.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GradedComplex {
    pub field: Field,
    pub bound: usize,
    pub groups: Vec<Group>,
    pub d: BTreeMap<(usize, usize), SparseMatrix>,
    pub d_prime: BTreeMap<(usize, usize), SparseMatrix>,
}

impl GradedComplex {
    pub fn new(field: Field, bound: usize, groups: Vec<Group>) -> Self {
        GradedComplex { field, bound, groups, d: BTreeMap::new(), d_prime: BTreeMap::new() }
    }

    pub fn group_index(&self, multidegree: &[usize]) -> Option<usize> {
        self.groups.iter().position(|g| g.multidegree == multidegree)
    }

    /// Groups of total degree `k`, in storage order.
    pub fn degree_groups(&self, k: usize) -> Vec<usize> {
        (0..self.groups.len()).filter(|&g| self.groups[g].total == k).collect()
    }

    pub fn chain_dim(&self, k: usize) -> usize {
        self.degree_groups(k).iter().map(|&g| self.groups[g].dim()).sum()
    }

    /// Inserts a block after checking its shape and degree.
    pub fn set_block(&mut self, which: Which, src: usize, tgt: usize, m: SparseMatrix) -> Result<()> {
        let (s, t) = (&self.groups[src], &self.groups[tgt]);
        if t.total + 1 != s.total {
            return Err(Error::Invalid(format!("block {} → {} does not lower degree by one", s.label, t.label)));
        }
        if (m.n_rows(), m.n_cols()) != (t.dim(), s.dim()) {
            return Err(Error::DimensionMismatch {
                context: format!("block {} → {}", s.label, t.label),
                left: t.dim() * s.dim(),
                right: m.n_rows() * m.n_cols(),
            });
        }
        let map = match which {
            Which::D => &mut self.d,
            Which::DPrime => &mut self.d_prime,
            Which::Total => return Err(Error::Invalid("blocks are stored per differential".into())),
        };
        if m.is_zero() {
            map.remove(&(src, tgt));
        } else {
            map.insert((src, tgt), m);
        }
        Ok(())
    }

    fn blocks(&self, which: Which) -> Vec<&BTreeMap<(usize, usize), SparseMatrix>> {
        match which {
            Which::D => vec![&self.d],
            Which::DPrime => vec![&self.d_prime],
            Which::Total => vec![&self.d, &self.d_prime],
        }
    }

    /// `C_k → C_{k−1}` for `1 ≤ k ≤ bound`, groups stacked in storage order.
    pub fn degree_matrix(&self, which: Which, k: usize) -> SparseMatrix {
        if k == 0 {
            return SparseMatrix::zeros(self.field, 0, self.chain_dim(0));
        }
        let (src, tgt) = (self.degree_groups(k), self.degree_groups(k - 1));
        let offsets = |list: &[usize]| -> BTreeMap<usize, usize> {
            let mut acc = 0;
            list.iter()
                .map(|&g| {
                    let o = acc;
                    acc += self.groups[g].dim();
                    (g, o)
                })
                .collect()
        };
        let (so, to) = (offsets(&src), offsets(&tgt));
        let mut out = SparseMatrix::zeros(self.field, self.chain_dim(k - 1), self.chain_dim(k));
        for map in self.blocks(which) {
            for (&(s, t), m) in map {
                if let (Some(&c0), Some(&r0)) = (so.get(&s), to.get(&t)) {
                    out.add_block(r0, c0, m);
                }
            }
        }
        out
    }

    /// Linear combination `a·d + b·d′`, stored as `d`, with `d′ = 0`.
    pub fn combination(&self, a: i64, b: i64) -> GradedComplex {
        let (a, b) = (self.field.from_i64(a), self.field.from_i64(b));
        let mut d: BTreeMap<(usize, usize), SparseMatrix> = self.d.iter().map(|(k, m)| (*k, m.scale(&a))).collect();
        for (k, m) in &self.d_prime {
            let scaled = m.scale(&b);
            let sum = match d.get(k) {
                Some(x) => x.add(&scaled).expect("same block shape"),
                None => scaled,
            };
            d.insert(*k, sum);
        }
        GradedComplex { d, d_prime: BTreeMap::new(), ..self.clone() }
    }

    fn group_space(&self, g: usize) -> Space {
        Space::new(self.groups[g].label.clone(), self.groups[g].dim())
    }
}

const IDENTITIES: [&str; 3] = ["d∘d = 0", "d′∘d′ = 0", "d∘d′ + d′∘d = 0"];

/// The three bidifferential identities on every group of degree `≥ 2`.
pub fn verify_bicomplex(c: &GradedComplex) -> AxiomReport {
    let work: Vec<(usize, usize)> =
        (0..c.groups.len()).filter(|&g| c.groups[g].total >= 2).flat_map(|g| (0..3).map(move |w| (g, w))).collect();
    let degree_cache: BTreeMap<(usize, u8), SparseMatrix> = (1..=c.bound)
        .flat_map(|k| [(k, 0u8), (k, 1u8)])
        .collect::<Vec<_>>()
        .into_par_iter()
        .map(|(k, w)| ((k, w), c.degree_matrix(if w == 0 { Which::D } else { Which::DPrime }, k)))
        .collect();
    let checks = work
        .par_iter()
        .map(|&(g, w)| {
            let k = c.groups[g].total;
            let offset: usize = c.degree_groups(k).iter().take_while(|&&x| x != g).map(|&x| c.groups[x].dim()).sum();
            let cols =
                |w: u8| degree_cache[&(k, w)].submatrix(0, c.chain_dim(k - 1), offset, offset + c.groups[g].dim());
            let outer = |w: u8| &degree_cache[&(k - 1, w)];
            let composite = match w {
                0 => outer(0).mul(&cols(0)),
                1 => outer(1).mul(&cols(1)),
                _ => outer(0).mul(&cols(1)).and_then(|x| outer(1).mul(&cols(0)).and_then(|y| x.add(&y))),
            }
            .expect("consecutive degrees");
            let target = Space::new(format!("C{}", k - 2), c.chain_dim(k - 2));
            let src = c.group_space(g);
            let lhs = LinMap::new(vec![src.clone()], vec![target.clone()], composite).expect("shape");
            let rhs = LinMap::zero(c.field, vec![src], vec![target]);
            AxiomCheck::compare(format!("{} on {}", IDENTITIES[w], c.groups[g].label), &lhs, &rhs)
        })
        .collect();
    AxiomReport { checks }
}

/// Whether each of the three identities holds on every group.
pub fn identity_summary(rep: &AxiomReport) -> [bool; 3] {
    IDENTITIES.map(|id| rep.checks.iter().filter(|c| c.name.starts_with(id)).all(AxiomCheck::holds))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DegreeRow {
    pub degree: usize,
    pub chain_dim: usize,
    /// Ranks of the maps out of this degree.
    pub rank_d: usize,
    pub rank_d_prime: usize,
    pub rank_total: usize,
    /// `None` at the top degree, where the truncation cuts off incoming maps.
    pub homology_dim: Option<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HomologyReport {
    pub truncation: usize,
    pub which: Which,
    pub cohomology: bool,
    pub rows: Vec<DegreeRow>,
    /// Kernel dimension at the top degree, the homology of the truncated
    /// complex there.
    pub top_kernel: usize,
    /// Alternating sum of homology of the truncated complex equals that of
    /// the chain dimensions.
    pub euler_holds: bool,
    pub identities: [bool; 3],
}

impl HomologyReport {
    pub fn homology_dim_at(&self, k: usize) -> Result<usize> {
        self.rows
            .get(k)
            .and_then(|r| r.homology_dim)
            .ok_or(Error::InsufficientTruncation { requested: k, bound: self.truncation })
    }
}

/// Homology (or cohomology, computed from the transposed maps) of the
/// chosen differential in total degrees `< bound`.
pub fn homology(c: &GradedComplex, which: Which, cohomology: bool) -> Result<HomologyReport> {
    let rep = verify_bicomplex(c);
    let identities = identity_summary(&rep);
    let squares_to_zero = match which {
        Which::D => identities[0],
        Which::DPrime => identities[1],
        Which::Total => identities.iter().all(|&b| b),
    };
    if !squares_to_zero {
        return Err(Error::AxiomFailure(format!("{which} does not square to zero:\n{rep}")));
    }
    let n = c.bound;
    let rank_of = |w: Which, k: usize| -> usize {
        if k == 0 || k > n {
            return 0;
        }
        let m = c.degree_matrix(w, k);
        if cohomology {
            m.transpose().rank()
        } else {
            m.rank()
        }
    };
    let ranks: Vec<[usize; 3]> = (0..=n + 1)
        .into_par_iter()
        .map(|k| [rank_of(Which::D, k), rank_of(Which::DPrime, k), rank_of(which, k)])
        .collect();
    let chosen = |k: usize| ranks[k][2];
    let dims: Vec<usize> = (0..=n).map(|k| c.chain_dim(k)).collect();
    let rows: Vec<DegreeRow> = (0..=n)
        .map(|k| {
            // cohomology: ker of the transpose of D_{k+1} modulo the image of D_kᵀ
            let homology_dim = (k < n).then(|| {
                if cohomology {
                    dims[k] - chosen(k + 1) - chosen(k)
                } else {
                    (dims[k] - chosen(k)) - chosen(k + 1)
                }
            });
            DegreeRow {
                degree: k,
                chain_dim: dims[k],
                rank_d: ranks[k][0],
                rank_d_prime: ranks[k][1],
                rank_total: ranks[k][2],
                homology_dim,
            }
        })
        .collect();
    let top_kernel = dims[n] - chosen(n);
    let alt = |k: usize, x: usize| if k.is_multiple_of(2) { x as i64 } else { -(x as i64) };
    let lhs: i64 = rows.iter().map(|r| alt(r.degree, r.homology_dim.unwrap_or(top_kernel))).sum();
    let rhs: i64 = dims.iter().enumerate().map(|(k, &x)| alt(k, x)).sum();
    Ok(HomologyReport { truncation: n, which, cohomology, rows, top_kernel, euler_holds: lhs == rhs, identities })
}

#[cfg(test)]
mod tests;
