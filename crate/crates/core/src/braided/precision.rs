//! Each axiom of a YD module algebra `V` corresponds to one cYBE instance of
//! the rank-3 system `(H, V, H*)`, provided a unit-type side condition holds.
//! The harness evaluates both sides on arbitrary, not necessarily valid,
//! data `(λ, δ, μ, ν)`.

use std::collections::BTreeMap;
use std::sync::Arc;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::{assemble, cybe_instance, sigma_ass, Middle, Side};
use crate::error::{Error, Result};
use crate::hopf::{Bialgebra, Uaa};
use crate::linalg::{Scalar, SparseMatrix};
use crate::report::AxiomCheck;
use crate::tensor::{LinMap, Space};
use crate::yd::{comodule_checks, module_checks, yd_algebra_compat, yd_sides};

#[derive(Clone, Debug)]
pub struct PrecisionInput {
    pub base: Arc<Bialgebra>,
    pub space: Space,
    pub lambda: LinMap,
    pub delta: LinMap,
    pub mu: LinMap,
    pub nu: LinMap,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PrecisionRow {
    pub name: &'static str,
    pub side_condition_met: bool,
    pub cybe_holds: bool,
    pub axiom_holds: bool,
}

impl PrecisionRow {
    /// Under the side condition, the cYBE instance and the axiom agree.
    pub fn consistent(&self) -> bool {
        !self.side_condition_met || self.cybe_holds == self.axiom_holds
    }
}

pub const ROW_NAMES: [&str; 6] = ["H⊗V⊗H*", "H⊗H⊗V", "V⊗H*⊗H*", "H⊗V⊗V", "V⊗V⊗H*", "V⊗V⊗V"];

/// Evaluates the six instances on `(H, V, H*)` next to the axioms they
/// encode.
pub fn precision_harness(input: &PrecisionInput) -> Result<Vec<PrecisionRow>> {
    let b = &input.base;
    let v = input.space.clone();
    let (lambda, delta, mu, nu) = (
        input.lambda.retyped(vec![b.space.clone(), v.clone()], vec![v.clone()])?,
        input.delta.retyped(vec![v.clone()], vec![v.clone(), b.space.clone()])?,
        input.mu.retyped(vec![v.clone(), v.clone()], vec![v.clone()])?,
        input.nu.retyped(vec![], vec![v.clone()])?,
    );
    let field = b.field();
    if [&lambda, &delta, &mu, &nu].iter().any(|m| m.field() != field) {
        return Err(Error::FieldMismatch("precision input and base differ in field".into()));
    }
    let algebra = Uaa { space: v.clone(), mu: mu.clone(), nu: nu.clone() };
    let s = assemble(
        b,
        &[Middle {
            space: v.clone(),
            lambda: lambda.clone(),
            delta: delta.clone(),
            diagonal: sigma_ass(&algebra, Side::Left),
        }],
    );
    let cybe = |i, j, k| cybe_instance(&s, i, j, k).holds();

    let module: BTreeMap<String, bool> = named(module_checks(b, &v, &lambda));
    let comodule = named(comodule_checks(b, &v, &delta));
    let compat = named(yd_algebra_compat(b, &v, &lambda, &delta, &mu, &nu).to_vec());
    let alg = named(algebra.check().checks);
    let (yl, yr) = yd_sides(b, &v, &lambda, &delta);
    let yd = AxiomCheck::compare("yd compatibility", &yl, &yr).holds();

    Ok(vec![
        PrecisionRow { name: ROW_NAMES[0], side_condition_met: true, cybe_holds: cybe(0, 1, 2), axiom_holds: yd },
        PrecisionRow {
            name: ROW_NAMES[1],
            side_condition_met: module["action unit"],
            cybe_holds: cybe(0, 0, 1),
            axiom_holds: module["action associativity"],
        },
        PrecisionRow {
            name: ROW_NAMES[2],
            side_condition_met: comodule["coaction counit"],
            cybe_holds: cybe(1, 2, 2),
            axiom_holds: comodule["coaction coassociativity"],
        },
        PrecisionRow {
            name: ROW_NAMES[3],
            side_condition_met: compat["action unital"],
            cybe_holds: cybe(0, 1, 1),
            axiom_holds: compat["action multiplicative"],
        },
        PrecisionRow {
            name: ROW_NAMES[4],
            side_condition_met: compat["coaction unital"],
            cybe_holds: cybe(1, 1, 2),
            axiom_holds: compat["coaction multiplicative"],
        },
        PrecisionRow {
            name: ROW_NAMES[5],
            side_condition_met: alg["left unit"] && alg["right unit"],
            cybe_holds: cybe(1, 1, 1),
            axiom_holds: alg["associativity"],
        },
    ])
}

fn named(checks: Vec<AxiomCheck>) -> BTreeMap<String, bool> {
    checks.into_iter().map(|c| (c.name.clone(), c.holds())).collect()
}

/// Random data on a `dim`-dimensional `V` satisfying every side condition.
/// Each of `λ`, `δ`, `μ` is independently trivial or random on the
/// complement of the unit, so that the axioms hold in some samples and fail
/// in others. A random change of basis is applied at the end.
pub fn sample_precision_input<R: Rng + ?Sized>(
    base: &Arc<Bialgebra>,
    dim: usize,
    rng: &mut R,
) -> Result<PrecisionInput> {
    if dim == 0 {
        return Err(Error::Invalid("V must be nonzero".into()));
    }
    let f = base.field();
    let h = base.space.clone();
    let n = h.dim;
    let t = base.tables();
    let unit = base.unit_vector();
    let unit_slot = (0..n).find(|&k| !unit[k].is_zero()).ok_or_else(|| Error::Invalid("unit of H vanishes".into()))?;
    let counit_slot =
        (0..n).find(|&k| !t.counit[k].is_zero()).ok_or_else(|| Error::Invalid("counit of H vanishes".into()))?;
    let v = Space::new("V", dim);
    let zero = f.zero();

    // lambda[h][a] is the image vector of e_h⊗v_a
    let random_action = rng.gen_bool(0.5);
    let mut lambda = vec![vec![vec![zero.clone(); dim]; dim]; n];
    for a in 0..dim {
        if a == 0 || !random_action {
            for (k, row) in lambda.iter_mut().enumerate() {
                row[a][a] = t.counit[k].clone();
            }
            continue;
        }
        for (k, row) in lambda.iter_mut().enumerate() {
            if k != unit_slot {
                row[a] = (0..dim).map(|_| f.random(rng)).collect();
            }
        }
        // solve Σ_k unit_k λ(e_k⊗v_a) = v_a for the unit slot
        let inv = unit[unit_slot].inv().expect("nonzero");
        let mut target = vec![zero.clone(); dim];
        target[a] = f.one();
        for (k, row) in lambda.iter().enumerate() {
            if k != unit_slot {
                for (x, y) in target.iter_mut().zip(&row[a]) {
                    *x = &*x - &(&unit[k] * y);
                }
            }
        }
        lambda[unit_slot][a] = target.into_iter().map(|x| &x * &inv).collect();
    }

    // delta[a][b][k] is the coefficient of v_b⊗e_k in δ(v_a)
    let random_coaction = rng.gen_bool(0.5);
    let mut delta = vec![vec![vec![zero.clone(); n]; dim]; dim];
    for a in 0..dim {
        if a == 0 || !random_coaction {
            delta[a][a] = unit.clone();
            continue;
        }
        let inv = t.counit[counit_slot].inv().expect("nonzero");
        for b in 0..dim {
            let mut acc = if a == b { f.one() } else { f.zero() };
            for k in 0..n {
                if k != counit_slot {
                    let c = f.random(rng);
                    acc = &acc - &(&c * &t.counit[k]);
                    delta[a][b][k] = c;
                }
            }
            delta[a][b][counit_slot] = &acc * &inv;
        }
    }

    // product with v_0 as unit
    let random_product = rng.gen_bool(0.5);
    let mut mu = vec![vec![vec![zero.clone(); dim]; dim]; dim];
    for a in 0..dim {
        for b in 0..dim {
            if a == 0 {
                mu[a][b][b] = f.one();
            } else if b == 0 {
                mu[a][b][a] = f.one();
            } else if random_product {
                mu[a][b] = (0..dim).map(|_| f.random(rng)).collect();
            }
        }
    }

    let lambda_map = LinMap::from_fn(f, vec![h.clone(), v.clone()], vec![v.clone()], |idx| {
        terms(&lambda[idx[0]][idx[1]], |c| vec![c])
    });
    let delta_map = LinMap::from_fn(f, vec![v.clone()], vec![v.clone(), h.clone()], |idx| {
        (0..dim).flat_map(|b| terms(&delta[idx[0]][b], move |k| vec![b, k])).collect()
    });
    let mu_map =
        LinMap::from_fn(f, vec![v.clone(), v.clone()], vec![v.clone()], |idx| terms(&mu[idx[0]][idx[1]], |c| vec![c]));
    let nu_map = LinMap::from_fn(f, vec![], vec![v.clone()], |_| vec![(vec![0], f.one())]);

    let (p, p_inv) = random_invertible(f, &v, rng);
    let id_h = base.id();
    let conj = |m: &LinMap, pre: &LinMap| -> LinMap { p.compose(&m.compose(pre).expect("V")).expect("V") };
    Ok(PrecisionInput {
        base: base.clone(),
        space: v,
        lambda: conj(&lambda_map, &id_h.tensor(&p_inv)),
        delta: p.tensor(&id_h).compose(&delta_map.compose(&p_inv).expect("V")).expect("V⊗H"),
        mu: conj(&mu_map, &p_inv.tensor(&p_inv)),
        nu: p.compose(&nu_map).expect("V"),
    })
}

fn terms(coeffs: &[Scalar], index: impl Fn(usize) -> Vec<usize>) -> Vec<(Vec<usize>, Scalar)> {
    coeffs.iter().enumerate().filter(|(_, c)| !c.is_zero()).map(|(k, c)| (index(k), c.clone())).collect()
}

fn random_invertible<R: Rng + ?Sized>(f: crate::linalg::Field, v: &Space, rng: &mut R) -> (LinMap, LinMap) {
    loop {
        let dense: Vec<Vec<Scalar>> = (0..v.dim).map(|_| (0..v.dim).map(|_| f.random(rng)).collect()).collect();
        let m = SparseMatrix::from_dense(f, &dense);
        if let Some(inv) = m.inverse() {
            let wrap = |m| LinMap::new(vec![v.clone()], vec![v.clone()], m).expect("square");
            return (wrap(m), wrap(inv));
        }
    }
}

/// Per-row tallies over many samples.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct PrecisionSummary {
    pub trials: usize,
    /// Samples where the side condition held but cYBE and axiom disagreed.
    pub inconsistencies: Vec<(usize, &'static str)>,
    /// For each row, how often the axiom held and how often it failed.
    pub axiom_true: [usize; 6],
    pub axiom_false: [usize; 6],
}

impl PrecisionSummary {
    pub fn consistent(&self) -> bool {
        self.inconsistencies.is_empty()
    }
}

/// Runs `trials` seeded samples through the harness.
pub fn run_precision_trials(base: &Arc<Bialgebra>, dim: usize, trials: usize, seed: u64) -> Result<PrecisionSummary> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = PrecisionSummary { trials, ..Default::default() };
    for trial in 0..trials {
        let input = sample_precision_input(base, dim, &mut rng)?;
        for (k, row) in precision_harness(&input)?.into_iter().enumerate() {
            if !row.consistent() {
                out.inconsistencies.push((trial, row.name));
            }
            if row.axiom_holds {
                out.axiom_true[k] += 1;
            } else {
                out.axiom_false[k] += 1;
            }
        }
    }
    Ok(out)
}
