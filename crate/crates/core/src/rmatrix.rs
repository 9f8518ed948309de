//! R-matrices `R ∈ H⊗H`, the coaction and braiding they induce on
//! `H`-modules, and inverse R-matrices.
//!
//! Weak axioms:
//! 1. `(Δ⊗Id)R = R13 R23`
//! 2. `(ε⊗Id)R = 1`
//! 3. `R Δ(h) = Δ^op(h) R`
//!
//! The strong level adds `(Id⊗Δ)R = R13 R12` and `(Id⊗ε)R = 1`.

use std::sync::Arc;

use crate::error::{Error, Result};
use crate::hopf::{solve_antipode, Bialgebra};
use crate::linalg::Scalar;
use crate::report::{AxiomCheck, AxiomReport};
use crate::tensor::{flip, LinMap, Space};
use crate::yd::{same_base, standard_braiding_raw, HModule, YdBraiding, YdModule};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RMatrix {
    pub base: Arc<Bialgebra>,
    /// `k → H⊗H`.
    pub r: LinMap,
    pub inverse: Option<LinMap>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum RLevel {
    Weak,
    Strong,
    QuantumYbe,
}

fn element(b: &Bialgebra, v: &[Scalar]) -> Result<LinMap> {
    let d = b.dim();
    if v.len() != d * d {
        return Err(Error::DimensionMismatch { context: "R-matrix vector".into(), left: d * d, right: v.len() });
    }
    let f = b.field();
    Ok(LinMap::from_fn(f, vec![], b.power(2), |_| {
        v.iter().enumerate().map(|(i, c)| (vec![i / d, i % d], c.clone())).collect()
    }))
}

impl RMatrix {
    /// `vector[i·dim + j]` is the coefficient of `e_i⊗e_j`.
    pub fn new(base: Arc<Bialgebra>, vector: &[Scalar], inverse: Option<&[Scalar]>) -> Result<Self> {
        let r = element(&base, vector)?;
        let inverse = inverse.map(|v| element(&base, v)).transpose()?;
        Ok(RMatrix { base, r, inverse })
    }

    /// `R = 1⊗1`.
    pub fn trivial(base: Arc<Bialgebra>) -> Self {
        let r = base.nu.tensor(&base.nu);
        RMatrix { inverse: Some(r.clone()), base, r }
    }

    pub fn vector(&self) -> Vec<Scalar> {
        self.r.matrix().column(0)
    }

    pub fn inverse_vector(&self) -> Option<Vec<Scalar>> {
        self.inverse.as_ref().map(|m| m.matrix().column(0))
    }
}

fn inverse_check(b: &Bialgebra, r: &LinMap, rinv: &LinMap) -> AxiomCheck {
    let m2 = b.mu_tensor_square();
    let one = b.unit_power(2);
    let a = m2.compose(&r.tensor(rinv)).expect("k → H⊗H");
    let c = m2.compose(&rinv.tensor(r)).expect("k → H⊗H");
    let first = AxiomCheck::compare("inverse", &a, &one);
    if first.holds() {
        AxiomCheck::compare("inverse", &c, &one)
    } else {
        first
    }
}

pub fn check_r(rm: &RMatrix, level: RLevel) -> AxiomReport {
    let b = &*rm.base;
    let f = b.field();
    let r = &rm.r;
    let id = b.id();
    let mut out = AxiomReport::default();
    let c2 = b.flip().embed_at(1, &b.power(4)).expect("H^4");
    let rr = r.tensor(r);
    if matches!(level, RLevel::Weak | RLevel::Strong) {
        let rhs = LinMap::compose_chain(&[&id.tensor(&id).tensor(&b.mu), &c2, &rr]).expect("k → H^3");
        out.push(AxiomCheck::compare("(Δ⊗Id)R", &b.delta.tensor(&id).compose(r).expect("k → H^3"), &rhs));
        out.push(AxiomCheck::compare("(ε⊗Id)R", &b.eps.tensor(&id).compose(r).expect("k → H"), &b.nu));
        let m2 = b.mu_tensor_square();
        let lhs = m2.compose(&r.tensor(&b.delta)).expect("H → H⊗H");
        let rhs = m2.compose(&b.delta_op().tensor(r)).expect("H → H⊗H");
        out.push(AxiomCheck::compare("RΔ = Δ^op R", &lhs, &rhs));
    }
    if level == RLevel::Strong {
        let rhs = LinMap::compose_chain(&[&b.mu_op().tensor(&id).tensor(&id), &c2, &rr]).expect("k → H^3");
        out.push(AxiomCheck::compare("(Id⊗Δ)R", &id.tensor(&b.delta).compose(r).expect("k → H^3"), &rhs));
        out.push(AxiomCheck::compare("(Id⊗ε)R", &id.tensor(&b.eps).compose(r).expect("k → H"), &b.nu));
    }
    if level == RLevel::QuantumYbe {
        let r12 = r.tensor(&b.nu);
        let r23 = b.nu.tensor(r);
        let r13 = id.tensor(&flip(f, &b.space, &b.space)).compose(&r12).expect("k → H^3");
        let m3 = b.mu_tensor_power(3);
        let prod = |x: &LinMap, y: &LinMap| m3.compose(&x.tensor(y)).expect("k → H^3");
        let lhs = prod(&prod(&r23, &r13), &r12);
        let rhs = prod(&prod(&r12, &r13), &r23);
        out.push(AxiomCheck::compare("quantum Yang-Baxter", &lhs, &rhs));
    }
    if let Some(rinv) = &rm.inverse {
        out.push(inverse_check(b, r, rinv));
    }
    out
}

/// `δ^R = c_{H,M}∘(Id_H⊗λ)∘(R⊗Id_M)`, i.e. `m ↦ R2·m ⊗ R1`.
pub fn coaction_from_r(m: &HModule, r: &RMatrix) -> Result<LinMap> {
    same_base(&m.base, &r.base)?;
    let b = &*m.base;
    let f = b.field();
    let id_m = LinMap::identity(f, std::slice::from_ref(&m.space));
    LinMap::compose_chain(&[&flip(f, &b.space, &m.space), &b.id().tensor(&m.lambda), &r.r.tensor(&id_m)])
}

/// The YD module `(M, λ, δ^R)`.
pub fn yd_from_r(m: &HModule, r: &RMatrix) -> Result<YdModule> {
    let delta = coaction_from_r(m, r)?;
    YdModule::new(m.base.clone(), m.space.clone(), m.lambda.clone(), delta)
}

fn two_module_action(b: &Bialgebra, m: &HModule, n: &HModule) -> LinMap {
    // H⊗H⊗M⊗N → M⊗N, (h, g, x, y) ↦ h·x ⊗ g·y
    let f = b.field();
    let ids = |s: &Space| LinMap::identity(f, std::slice::from_ref(s));
    m.lambda
        .tensor(&n.lambda)
        .compose(&b.id().tensor(&flip(f, &b.space, &m.space)).tensor(&ids(&n.space)))
        .expect("H⊗H⊗M⊗N")
}

/// `c^R_{M,N}: m⊗n ↦ R2·n ⊗ R1·m`, checked against the YD braiding of the
/// induced coactions, with its inverse when `R⁻¹` is known or computable.
pub fn r_braiding(m: &HModule, n: &HModule, r: &RMatrix) -> Result<YdBraiding> {
    same_base(&m.base, &n.base)?;
    same_base(&m.base, &r.base)?;
    let b = &*m.base;
    let f = b.field();
    let (sm, sn) = (&m.space, &n.space);
    let ids = |s: &Space| LinMap::identity(f, std::slice::from_ref(s));
    let act = two_module_action(b, m, n);
    let map = LinMap::compose_chain(&[&flip(f, sm, sn), &act, &r.r.tensor(&ids(sm)).tensor(&ids(sn))])?;
    let delta_n = coaction_from_r(n, r)?;
    let expected = standard_braiding_raw(b, sm, &m.lambda, sn, &delta_n);
    if map.matrix() != expected.matrix() {
        return Err(Error::Verification("R-braiding differs from the YD braiding of δ^R".into()));
    }
    let rinv = match &r.inverse {
        Some(x) => Some(x.clone()),
        None => antipode_inverse_r(r).ok().and_then(|x| x.inverse),
    };
    let inverse = match rinv {
        None => None,
        Some(rinv) => {
            let inv = act.compose(&rinv.tensor(&flip(f, sn, sm)))?;
            let id_nm = LinMap::identity(f, &[sn.clone(), sm.clone()]);
            let id_mn = LinMap::identity(f, &[sm.clone(), sn.clone()]);
            if map.compose(&inv)?.matrix() != id_nm.matrix() || inv.compose(&map)?.matrix() != id_mn.matrix() {
                return Err(Error::Verification("R-braiding inverse fails".into()));
            }
            Some(inv)
        }
    };
    Ok(YdBraiding { map, inverse })
}

/// `R⁻¹ = (s⊗Id)R`, verified against `R·R⁻¹ = R⁻¹·R = 1⊗1`.
pub fn antipode_inverse_r(r: &RMatrix) -> Result<RMatrix> {
    let b = &*r.base;
    let s = match &b.antipode {
        Some(s) => s.clone(),
        None => solve_antipode(b)?,
    };
    let rinv = s.tensor(&b.id()).compose(&r.r)?;
    let check = inverse_check(b, &r.r, &rinv);
    if !check.holds() {
        return Err(Error::Verification(format!("(s⊗Id)R is not inverse to R: {:?}", check.verdict)));
    }
    Ok(RMatrix { base: r.base.clone(), r: r.r.clone(), inverse: Some(rinv) })
}
