//! Rank-`r` braided systems: ordered families `V_1, …, V_r` with maps
//! `σ_{ij}: V_i⊗V_j → V_j⊗V_i` for `i ≤ j` satisfying the colored
//! Yang-Baxter equation
//! `(σ_jk⊗Id_i)(Id_j⊗σ_ik)(σ_ij⊗Id_k) = (Id_k⊗σ_ij)(σ_ik⊗Id_j)(Id_i⊗σ_jk)`
//! for all `i ≤ j ≤ k`. Component indices are 0-based.

mod precision;

pub use precision::{
    precision_harness, run_precision_trials, sample_precision_input, PrecisionInput, PrecisionRow, PrecisionSummary,
    ROW_NAMES,
};

use std::collections::BTreeMap;
use std::sync::Arc;

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::hopf::{check_bialgebra, Bialgebra, Level, Uaa};
use crate::linalg::Field;
use crate::report::{AxiomCheck, AxiomReport};
use crate::tensor::{evaluation, LinMap, Space};
use crate::yd::{check_yd, check_yd_algebra, ring_braiding_raw, YdLevel, YdModule, YdModuleAlgebra};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BraidedSystem {
    components: Vec<Space>,
    sigma: BTreeMap<(usize, usize), LinMap>,
}

impl BraidedSystem {
    /// Checks that every `σ_ij` with `i ≤ j` is present with the right
    /// shape; does not check the Yang-Baxter equation.
    pub fn new(components: Vec<Space>, sigma: BTreeMap<(usize, usize), LinMap>) -> Result<Self> {
        let r = components.len();
        if r == 0 {
            return Err(Error::Invalid("a braided system needs at least one component".into()));
        }
        let mut typed = BTreeMap::new();
        for i in 0..r {
            for j in i..r {
                let m = sigma.get(&(i, j)).ok_or_else(|| Error::Invalid(format!("σ({i},{j}) is missing")))?;
                let (vi, vj) = (components[i].clone(), components[j].clone());
                let m = m.retyped(vec![vi.clone(), vj.clone()], vec![vj, vi]).map_err(|e| match e {
                    Error::DimensionMismatch { left, right, .. } => {
                        Error::DimensionMismatch { context: format!("σ({i},{j})"), left, right }
                    }
                    other => other,
                })?;
                typed.insert((i, j), m);
            }
        }
        if let Some((i, j)) = sigma.keys().find(|(i, j)| i > j || *j >= r) {
            return Err(Error::Invalid(format!("unexpected σ({i},{j})")));
        }
        let field = typed[&(0, 0)].field();
        if typed.values().any(|m| m.field() != field) {
            return Err(Error::FieldMismatch("σ maps use different fields".into()));
        }
        Ok(BraidedSystem { components, sigma: typed })
    }

    pub fn rank(&self) -> usize {
        self.components.len()
    }

    pub fn components(&self) -> &[Space] {
        &self.components
    }

    pub fn field(&self) -> Field {
        self.sigma[&(0, 0)].field()
    }

    pub fn sigma(&self, i: usize, j: usize) -> &LinMap {
        &self.sigma[&(i, j)]
    }

    pub fn sigmas(&self) -> impl Iterator<Item = (&(usize, usize), &LinMap)> {
        self.sigma.iter()
    }

    /// Replaces one `σ_ij`, keeping its factor types.
    pub fn with_sigma(&self, i: usize, j: usize, m: LinMap) -> Result<Self> {
        let mut sigma = self.sigma.clone();
        sigma.insert((i, j), m);
        BraidedSystem::new(self.components.clone(), sigma)
    }

    fn id(&self, i: usize) -> LinMap {
        LinMap::identity(self.field(), std::slice::from_ref(&self.components[i]))
    }
}

/// Both sides of the colored Yang-Baxter instance on `V_i⊗V_j⊗V_k`.
pub fn cybe_sides(s: &BraidedSystem, i: usize, j: usize, k: usize) -> (LinMap, LinMap) {
    let (sij, sik, sjk) = (s.sigma(i, j), s.sigma(i, k), s.sigma(j, k));
    let lhs = LinMap::compose_chain(&[&sjk.tensor(&s.id(i)), &s.id(j).tensor(sik), &sij.tensor(&s.id(k))])
        .expect("V_i⊗V_j⊗V_k");
    let rhs = LinMap::compose_chain(&[&s.id(k).tensor(sij), &sik.tensor(&s.id(j)), &s.id(i).tensor(sjk)])
        .expect("V_i⊗V_j⊗V_k");
    (lhs, rhs)
}

pub fn cybe_instance_name(s: &BraidedSystem, i: usize, j: usize, k: usize) -> String {
    let c = &s.components;
    format!("cYBE ({i},{j},{k}) {}⊗{}⊗{}", c[i].label, c[j].label, c[k].label)
}

pub fn cybe_instance(s: &BraidedSystem, i: usize, j: usize, k: usize) -> AxiomCheck {
    let (lhs, rhs) = cybe_sides(s, i, j, k);
    AxiomCheck::compare(cybe_instance_name(s, i, j, k), &lhs, &rhs)
}

/// Every instance `i ≤ j ≤ k`, in lexicographic order.
pub fn verify_cybe(s: &BraidedSystem) -> AxiomReport {
    let r = s.rank();
    let triples: Vec<(usize, usize, usize)> =
        (0..r).flat_map(|i| (i..r).flat_map(move |j| (j..r).map(move |k| (i, j, k)))).collect();
    let checks = triples.par_iter().map(|&(i, j, k)| cybe_instance(s, i, j, k)).collect();
    AxiomReport { checks }
}

/// `(f_j⊗f_i)∘σ_ij = ξ_ij∘(f_i⊗f_j)` for all `i ≤ j`.
pub fn check_braided_morphism(f: &[LinMap], from: &BraidedSystem, to: &BraidedSystem) -> Result<AxiomReport> {
    let r = from.rank();
    if to.rank() != r || f.len() != r {
        return Err(Error::Invalid(format!(
            "morphism needs {} maps between systems of equal rank, got {} maps and ranks {r}, {}",
            r,
            f.len(),
            to.rank()
        )));
    }
    for (k, m) in f.iter().enumerate() {
        let (dom, cod) = (m.matrix().n_cols(), m.matrix().n_rows());
        if dom != from.components[k].dim || cod != to.components[k].dim {
            return Err(Error::DimensionMismatch {
                context: format!("component map {k}"),
                left: from.components[k].dim * to.components[k].dim,
                right: dom * cod,
            });
        }
    }
    let mut rep = AxiomReport::default();
    for i in 0..r {
        for j in i..r {
            let lhs = f[j].tensor(&f[i]).compose(from.sigma(i, j))?;
            let rhs = to.sigma(i, j).compose(&f[i].tensor(&f[j]))?;
            let c = &from.components;
            rep.push(AxiomCheck::compare(format!("morphism ({i},{j}) {}⊗{}", c[i].label, c[j].label), &lhs, &rhs));
        }
    }
    Ok(rep)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Side {
    /// `x⊗y ↦ 1⊗xy`.
    Left,
    /// `x⊗y ↦ xy⊗1`.
    Right,
}

/// Braiding of a unital associative algebra built from its product.
pub fn sigma_ass(a: &Uaa, side: Side) -> LinMap {
    let m = match side {
        Side::Left => a.nu.tensor(&a.mu),
        Side::Right => a.mu.tensor(&a.nu),
    };
    let v = a.space.clone();
    m.retyped(vec![v.clone(), v.clone()], vec![v.clone(), v]).expect("A⊗A")
}

/// Action `h·l = l(1)(h) l(2)` of `H` on `H*`, where `Δ_{H*}` is dual to `μ`.
pub fn coregular_action(b: &Bialgebra) -> LinMap {
    let f = b.field();
    let hd = b.space.dual();
    let (_, ev) = evaluation(f, &b.space);
    let coproduct = b.mu.rainbow_dual();
    let id_hd = LinMap::identity(f, std::slice::from_ref(&hd));
    ev.tensor(&id_hd).compose(&b.id().tensor(&coproduct)).expect("H⊗H* → H*")
}

/// One middle component of a YD system: space, action, coaction and the
/// diagonal braiding.
pub(crate) struct Middle {
    pub space: Space,
    pub lambda: LinMap,
    pub delta: LinMap,
    pub diagonal: LinMap,
}

/// Assembles `(H, M_1, …, M_r, H*)` without checking any axioms.
pub(crate) fn assemble(b: &Bialgebra, mids: &[Middle]) -> BraidedSystem {
    let h = b.space.clone();
    let hd = h.dual();
    let r = mids.len();
    let last = r + 1;
    let h_alg = Uaa { space: h.clone(), mu: b.mu.clone(), nu: b.nu.clone() };
    let hd_alg = Uaa { space: hd.clone(), mu: b.delta.rainbow_dual(), nu: b.eps.rainbow_dual() };
    let act_hd = coregular_action(b);
    let mut components = vec![h.clone()];
    components.extend(mids.iter().map(|m| m.space.clone()));
    components.push(hd.clone());
    let mut sigma = BTreeMap::new();
    sigma.insert((0, 0), sigma_ass(&h_alg, Side::Right));
    sigma.insert((last, last), sigma_ass(&hd_alg, Side::Left));
    sigma.insert((0, last), ring_braiding_raw(b, &h, &b.delta, &hd, &act_hd));
    for (k, m) in mids.iter().enumerate() {
        let i = k + 1;
        sigma.insert((0, i), ring_braiding_raw(b, &h, &b.delta, &m.space, &m.lambda));
        sigma.insert((i, last), ring_braiding_raw(b, &m.space, &m.delta, &hd, &act_hd));
        sigma.insert((i, i), m.diagonal.clone());
        for (l, n) in mids.iter().enumerate().skip(k + 1) {
            sigma.insert((i, l + 1), ring_braiding_raw(b, &m.space, &m.delta, &n.space, &n.lambda));
        }
    }
    BraidedSystem::new(components, sigma).expect("assembled shapes")
}

fn require_bialgebra(b: &Bialgebra) -> Result<()> {
    let rep = check_bialgebra(b, Level::Bialgebra);
    if !rep.passed() {
        return Err(Error::AxiomFailure(format!("H is not a bialgebra:\n{rep}")));
    }
    Ok(())
}

fn finish(s: BraidedSystem) -> Result<BraidedSystem> {
    let rep = verify_cybe(&s);
    if !rep.passed() {
        return Err(Error::Verification(format!("assembled system fails cYBE:\n{rep}")));
    }
    Ok(s)
}

/// The system `(H, M_1, …, M_r, H*)` for YD modules, with `σ_{M_i,M_i} = Id`.
pub fn build_yd_system(b: &Arc<Bialgebra>, mods: &[YdModule]) -> Result<BraidedSystem> {
    require_bialgebra(b)?;
    let f = b.field();
    let mut mids = Vec::new();
    for (k, m) in mods.iter().enumerate() {
        crate::yd::same_base(b, &m.base)?;
        let rep = check_yd(m, YdLevel::Yd);
        if !rep.passed() {
            return Err(Error::AxiomFailure(format!("module {k} is not YD:\n{rep}")));
        }
        let sp = m.space.clone();
        mids.push(Middle {
            diagonal: LinMap::identity(f, &[sp.clone(), sp.clone()]),
            space: sp,
            lambda: m.lambda.clone(),
            delta: m.delta.clone(),
        });
    }
    finish(assemble(b, &mids))
}

/// The system `(H, M_1, …, M_r, H*)` for YD module algebras, with
/// `σ_{M_i,M_i}: x⊗y ↦ 1⊗xy`.
pub fn build_ydalg_system(b: &Arc<Bialgebra>, algs: &[YdModuleAlgebra]) -> Result<BraidedSystem> {
    require_bialgebra(b)?;
    let mut mids = Vec::new();
    for (k, a) in algs.iter().enumerate() {
        crate::yd::same_base(b, &a.module.base)?;
        let rep = check_yd_algebra(a);
        if !rep.passed() {
            return Err(Error::AxiomFailure(format!("module algebra {k} fails:\n{rep}")));
        }
        let m = &a.module;
        mids.push(Middle {
            space: m.space.clone(),
            lambda: m.lambda.clone(),
            delta: m.delta.clone(),
            diagonal: sigma_ass(&a.uaa(), Side::Left),
        });
    }
    finish(assemble(b, &mids))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Invertibility {
    pub i: usize,
    pub j: usize,
    pub dim: usize,
    pub rank: usize,
    pub inverse: Option<LinMap>,
}

/// Rank and inverse of every `σ_ij`.
pub fn invertibility_report(s: &BraidedSystem) -> Vec<Invertibility> {
    s.sigma
        .par_iter()
        .map(|(&(i, j), m)| {
            let mat = m.matrix();
            let inverse = mat
                .inverse()
                .map(|inv| LinMap::new(m.codomain().to_vec(), m.domain().to_vec(), inv).expect("square inverse"));
            Invertibility { i, j, dim: mat.n_rows(), rank: mat.rank(), inverse }
        })
        .collect()
}

/// Outcome of checking a family of algebras with braidings `ξ_ij`, `i < j`.
#[derive(Clone, Debug)]
pub struct UaaValidation {
    /// Naturality of each `ξ_ij` in both multiplications and the cYBE
    /// instances with pairwise distinct colors.
    pub conditions: AxiomReport,
    /// The completed system with `σ_ii: x⊗y ↦ 1⊗xy`.
    pub system: BraidedSystem,
    pub cybe: AxiomReport,
}

impl UaaValidation {
    /// Whether the full cYBE holds exactly when the conditions do.
    pub fn equivalence_confirmed(&self) -> bool {
        self.conditions.passed() == self.cybe.passed()
    }
}

/// Completes `ξ` with the algebra braidings on the diagonal and compares the
/// resulting cYBE with the naturality conditions.
pub fn validate_uaa_system(uaas: &[Uaa], xi: &BTreeMap<(usize, usize), LinMap>) -> Result<UaaValidation> {
    let r = uaas.len();
    for (k, a) in uaas.iter().enumerate() {
        let rep = a.check();
        if !rep.passed() {
            return Err(Error::AxiomFailure(format!("algebra {k}:\n{rep}")));
        }
    }
    let mut sigma = BTreeMap::new();
    for (i, a) in uaas.iter().enumerate() {
        sigma.insert((i, i), sigma_ass(a, Side::Left));
        for j in i + 1..r {
            let m = xi.get(&(i, j)).ok_or_else(|| Error::Invalid(format!("ξ({i},{j}) is missing")))?;
            sigma.insert((i, j), m.clone());
        }
    }
    let system = BraidedSystem::new(uaas.iter().map(|a| a.space.clone()).collect(), sigma)?;
    let id = |k: usize| system.id(k);
    let mut conditions = AxiomReport::default();
    for i in 0..r {
        for j in i + 1..r {
            let x = system.sigma(i, j);
            let (ai, aj) = (&uaas[i], &uaas[j]);
            let unit_l = AxiomCheck::compare("unit", &x.compose(&ai.nu.tensor(&id(j)))?, &id(j).tensor(&ai.nu));
            let unit_r = AxiomCheck::compare("unit", &x.compose(&id(i).tensor(&aj.nu))?, &aj.nu.tensor(&id(i)));
            for u in [unit_l, unit_r] {
                if !u.holds() {
                    return Err(Error::AxiomFailure(format!(
                        "ξ({i},{j}) is not natural in the units: {:?}",
                        u.verdict
                    )));
                }
            }
            let lhs = x.compose(&ai.mu.tensor(&id(j)))?;
            let rhs = LinMap::compose_chain(&[&id(j).tensor(&ai.mu), &x.tensor(&id(i)), &id(i).tensor(x)])?;
            conditions.push(AxiomCheck::compare(format!("ξ({i},{j}) natural in μ_{i}"), &lhs, &rhs));
            let lhs = x.compose(&id(i).tensor(&aj.mu))?;
            let rhs = LinMap::compose_chain(&[&aj.mu.tensor(&id(i)), &id(j).tensor(x), &x.tensor(&id(j))])?;
            conditions.push(AxiomCheck::compare(format!("ξ({i},{j}) natural in μ_{j}"), &lhs, &rhs));
            for k in j + 1..r {
                conditions.push(cybe_instance(&system, i, j, k));
            }
        }
    }
    let cybe = verify_cybe(&system);
    Ok(UaaValidation { conditions, system, cybe })
}

/// Merges components `lo..=hi` into their tensor product, braided with the
/// others by successive crossings and with itself by the identity.
pub fn glue(s: &BraidedSystem, lo: usize, hi: usize) -> Result<BraidedSystem> {
    let r = s.rank();
    if lo > hi || hi >= r {
        return Err(Error::Invalid(format!("need lo ≤ hi < {r}, got {lo}, {hi}")));
    }
    let pre = verify_cybe(s);
    if !pre.passed() {
        return Err(Error::AxiomFailure(format!("input fails cYBE:\n{pre}")));
    }
    let f = s.field();
    let block: Vec<Space> = s.components[lo..=hi].to_vec();
    let w = Space {
        dim: block.iter().map(|v| v.dim).product(),
        label: block.iter().map(|v| v.label.as_str()).collect::<Vec<_>>().join("⊗"),
        basis_names: None,
    };
    let mut components: Vec<Space> = s.components[..lo].to_vec();
    components.push(w.clone());
    components.extend_from_slice(&s.components[hi + 1..]);
    let new_index = |old: usize| if old < lo { old } else { old - (hi - lo) };
    let mut sigma = BTreeMap::new();
    for (&(i, j), m) in &s.sigma {
        let inside = |x: usize| (lo..=hi).contains(&x);
        if !inside(i) && !inside(j) {
            sigma.insert((new_index(i), new_index(j)), m.clone());
        }
    }
    sigma.insert((lo, lo), LinMap::identity(f, &[w.clone(), w.clone()]));
    for a in 0..lo {
        // V_a moves right across the block
        let mut ctx: Vec<Space> = std::iter::once(s.components[a].clone()).chain(block.iter().cloned()).collect();
        let mut acc = LinMap::identity(f, &ctx);
        for (t, x) in (lo..=hi).enumerate() {
            let step = s.sigma(a, x).embed_at(t, &ctx)?;
            acc = step.compose(&acc)?;
            ctx.swap(t, t + 1);
        }
        let va = s.components[a].clone();
        sigma.insert((a, lo), acc.retyped(vec![va.clone(), w.clone()], vec![w.clone(), va])?);
    }
    for c in hi + 1..r {
        // V_c moves left across the block
        let mut ctx: Vec<Space> = block.iter().cloned().chain(std::iter::once(s.components[c].clone())).collect();
        let mut acc = LinMap::identity(f, &ctx);
        for (t, x) in (lo..hi + 1).enumerate().rev() {
            let step = s.sigma(x, c).embed_at(t, &ctx)?;
            acc = step.compose(&acc)?;
            ctx.swap(t, t + 1);
        }
        let vc = s.components[c].clone();
        sigma.insert((lo, new_index(c)), acc.retyped(vec![w.clone(), vc.clone()], vec![vc, w.clone()])?);
    }
    let glued = BraidedSystem::new(components, sigma)?;
    let post = verify_cybe(&glued);
    if !post.passed() {
        return Err(Error::Verification(format!("glued system fails cYBE:\n{post}")));
    }
    Ok(glued)
}
