//! Yetter-Drinfel'd modules: a left `H`-module that is also a right
//! `H`-comodule, compatible in the sense
//! `(h(2)·m)(0) ⊗ (h(2)·m)(1) h(1) = h(1)·m(0) ⊗ h(2) m(1)`.

use std::sync::Arc;

use crate::error::{Error, Result};
use crate::hopf::{columns, dual_bialgebra, solve_antipode, Bialgebra, GroupTable, Uaa};
use crate::linalg::{Field, Scalar};
use crate::report::{AxiomCheck, AxiomReport};
use crate::tensor::{flip, LinMap, Space};

/// Left module `λ: H⊗M → M`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HModule {
    pub base: Arc<Bialgebra>,
    pub space: Space,
    pub lambda: LinMap,
}

/// Module `λ: H⊗M → M` with coaction `δ: M → M⊗H`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct YdModule {
    pub base: Arc<Bialgebra>,
    pub space: Space,
    pub lambda: LinMap,
    pub delta: LinMap,
}

/// YD module carrying a unital multiplication.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct YdModuleAlgebra {
    pub module: YdModule,
    pub mu: LinMap,
    pub nu: LinMap,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum YdLevel {
    Module,
    Comodule,
    Yd,
}

/// Which YD braiding to build.
///
/// `Standard` is `m⊗n ↦ n(0) ⊗ n(1)·m`; `Ring` is `m⊗n ↦ m(1)·n ⊗ m(0)`,
/// the form used to assemble braided systems.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum BraidingVariant {
    Standard,
    Ring,
}

/// Tensor-product structure: `Standard` acts through `Δ` and coacts through
/// `μ^op`; `Twisted` uses `Δ^op` and `μ`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Flavor {
    Standard,
    Twisted,
}

/// A braiding `M⊗N → N⊗M` together with its verified inverse, when the base
/// has an antipode.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct YdBraiding {
    pub map: LinMap,
    pub inverse: Option<LinMap>,
}

/// Per-basis action and coaction terms.
#[derive(Clone, Debug)]
pub struct ModuleTables {
    /// `action[h][a]`: terms `(b, c)` of `e_h·m_a`.
    pub action: Vec<Vec<Vec<(usize, Scalar)>>>,
    /// `coaction[a]`: terms `(b, h, c)` of `δ(m_a)`, meaning `m_b⊗e_h`.
    pub coaction: Vec<Vec<(usize, usize, Scalar)>>,
}

pub(crate) fn same_base(a: &Arc<Bialgebra>, b: &Arc<Bialgebra>) -> Result<()> {
    if Arc::ptr_eq(a, b) || a == b {
        Ok(())
    } else {
        Err(Error::BaseMismatch)
    }
}

fn ids(f: Field, s: &Space) -> LinMap {
    LinMap::identity(f, std::slice::from_ref(s))
}

pub(crate) fn module_checks(b: &Bialgebra, m: &Space, lambda: &LinMap) -> Vec<AxiomCheck> {
    let f = b.field();
    let id_m = ids(f, m);
    let lhs = lambda.compose(&b.mu.tensor(&id_m)).expect("H⊗H⊗M");
    let rhs = lambda.compose(&b.id().tensor(lambda)).expect("H⊗H⊗M");
    vec![
        AxiomCheck::compare("action associativity", &lhs, &rhs),
        AxiomCheck::compare("action unit", &lambda.compose(&b.nu.tensor(&id_m)).expect("M"), &id_m),
    ]
}

pub(crate) fn comodule_checks(b: &Bialgebra, m: &Space, delta: &LinMap) -> Vec<AxiomCheck> {
    let f = b.field();
    let id_m = ids(f, m);
    let lhs = delta.tensor(&b.id()).compose(delta).expect("M → M⊗H⊗H");
    let rhs = id_m.tensor(&b.delta).compose(delta).expect("M → M⊗H⊗H");
    vec![
        AxiomCheck::compare("coaction coassociativity", &lhs, &rhs),
        AxiomCheck::compare("coaction counit", &id_m.tensor(&b.eps).compose(delta).expect("M"), &id_m),
    ]
}

/// Both sides of the YD compatibility, as maps `H⊗M → M⊗H`.
pub(crate) fn yd_sides(b: &Bialgebra, m: &Space, lambda: &LinMap, delta: &LinMap) -> (LinMap, LinMap) {
    let f = b.field();
    let (id_h, id_m) = (b.id(), ids(f, m));
    let c_hm = flip(f, &b.space, m);
    let lhs = LinMap::compose_chain(&[
        &id_m.tensor(&b.mu),
        &delta.tensor(&id_h),
        &c_hm,
        &id_h.tensor(lambda),
        &b.delta.tensor(&id_m),
    ])
    .expect("H⊗M → M⊗H");
    let mid = id_h.tensor(&c_hm).tensor(&id_h);
    let rhs = LinMap::compose_chain(&[&lambda.tensor(&b.mu), &mid, &b.delta.tensor(delta)]).expect("H⊗M → M⊗H");
    (lhs, rhs)
}

impl HModule {
    pub fn new(base: Arc<Bialgebra>, space: Space, lambda: LinMap) -> Result<Self> {
        let lambda = lambda.retyped(vec![base.space.clone(), space.clone()], vec![space.clone()])?;
        Ok(HModule { base, space, lambda })
    }

    pub fn check(&self) -> AxiomReport {
        AxiomReport { checks: module_checks(&self.base, &self.space, &self.lambda) }
    }
}

impl YdModule {
    pub fn new(base: Arc<Bialgebra>, space: Space, lambda: LinMap, delta: LinMap) -> Result<Self> {
        let h = base.space.clone();
        let lambda = lambda.retyped(vec![h.clone(), space.clone()], vec![space.clone()])?;
        let delta = delta.retyped(vec![space.clone()], vec![space.clone(), h])?;
        if lambda.field() != base.field() || delta.field() != base.field() {
            return Err(Error::FieldMismatch("module and base use different fields".into()));
        }
        Ok(YdModule { base, space, lambda, delta })
    }

    pub fn field(&self) -> Field {
        self.base.field()
    }

    pub fn dim(&self) -> usize {
        self.space.dim
    }

    pub fn id(&self) -> LinMap {
        ids(self.field(), &self.space)
    }

    pub fn as_module(&self) -> HModule {
        HModule { base: self.base.clone(), space: self.space.clone(), lambda: self.lambda.clone() }
    }

    pub fn relabel(&self, label: &str) -> YdModule {
        let space = self.space.relabel(label);
        YdModule::new(self.base.clone(), space, self.lambda.clone(), self.delta.clone()).expect("same shapes")
    }

    pub fn tables(&self) -> ModuleTables {
        let (d, dh) = (self.dim(), self.base.dim());
        let act = columns(self.lambda.matrix());
        let action = (0..dh).map(|h| (0..d).map(|a| act[h * d + a].clone()).collect()).collect();
        let coaction = columns(self.delta.matrix())
            .into_iter()
            .map(|col| col.into_iter().map(|(r, c)| (r / dh, r % dh, c)).collect())
            .collect();
        ModuleTables { action, coaction }
    }
}

/// Checks the axioms of the requested level; `Yd` includes the module and
/// comodule axioms.
pub fn check_yd(m: &YdModule, level: YdLevel) -> AxiomReport {
    let mut r = AxiomReport::default();
    if matches!(level, YdLevel::Module | YdLevel::Yd) {
        module_checks(&m.base, &m.space, &m.lambda).into_iter().for_each(|c| r.push(c));
    }
    if matches!(level, YdLevel::Comodule | YdLevel::Yd) {
        comodule_checks(&m.base, &m.space, &m.delta).into_iter().for_each(|c| r.push(c));
    }
    if level == YdLevel::Yd {
        let (lhs, rhs) = yd_sides(&m.base, &m.space, &m.lambda, &m.delta);
        r.push(AxiomCheck::compare("yd compatibility", &lhs, &rhs));
    }
    r
}

/// The four compatibilities between `(μ_V, ν_V)` and `(λ, δ)`, each named.
pub(crate) fn yd_algebra_compat(
    b: &Bialgebra,
    v: &Space,
    lambda: &LinMap,
    delta: &LinMap,
    mu: &LinMap,
    nu: &LinMap,
) -> [AxiomCheck; 4] {
    let f = b.field();
    let (id_h, id_v) = (b.id(), ids(f, v));
    let c_hv = flip(f, &b.space, v);
    let mid = id_v.tensor(&c_hv).tensor(&id_h);
    let coaction_mul = AxiomCheck::compare(
        "coaction multiplicative",
        &delta.compose(mu).expect("V⊗V → V⊗H"),
        &LinMap::compose_chain(&[&mu.tensor(&b.mu), &mid, &delta.tensor(delta)]).expect("V⊗V → V⊗H"),
    );
    let mid = id_h.tensor(&c_hv).tensor(&id_v);
    let action_mul = AxiomCheck::compare(
        "action multiplicative",
        &lambda.compose(&id_h.tensor(mu)).expect("H⊗V⊗V → V"),
        &LinMap::compose_chain(&[mu, &lambda.tensor(lambda), &mid, &b.delta_op().tensor(&id_v).tensor(&id_v)])
            .expect("H⊗V⊗V → V"),
    );
    let coaction_unit = AxiomCheck::compare("coaction unital", &delta.compose(nu).expect("k → V⊗H"), &nu.tensor(&b.nu));
    let action_unit =
        AxiomCheck::compare("action unital", &lambda.compose(&id_h.tensor(nu)).expect("H → V"), &b.eps.tensor(nu));
    [coaction_mul, action_mul, coaction_unit, action_unit]
}

impl YdModuleAlgebra {
    pub fn new(module: YdModule, mu: LinMap, nu: LinMap) -> Result<Self> {
        let v = module.space.clone();
        let mu = mu.retyped(vec![v.clone(), v.clone()], vec![v.clone()])?;
        let nu = nu.retyped(vec![], vec![v])?;
        Ok(YdModuleAlgebra { module, mu, nu })
    }

    pub fn uaa(&self) -> Uaa {
        Uaa { space: self.module.space.clone(), mu: self.mu.clone(), nu: self.nu.clone() }
    }
}

/// All YD axioms, the algebra axioms of `(μ, ν)` and their four
/// compatibilities with the action and coaction.
pub fn check_yd_algebra(a: &YdModuleAlgebra) -> AxiomReport {
    let m = &a.module;
    let mut r = check_yd(m, YdLevel::Yd);
    r.extend(a.uaa().check());
    for c in yd_algebra_compat(&m.base, &m.space, &m.lambda, &m.delta, &a.mu, &a.nu) {
        r.push(c);
    }
    r
}

/// `(id_N⊗λ_M)∘(δ_N⊗id_M)∘c_{M,N}: M⊗N → N⊗M`.
pub fn standard_braiding_raw(b: &Bialgebra, m: &Space, lambda_m: &LinMap, n: &Space, delta_n: &LinMap) -> LinMap {
    let f = b.field();
    LinMap::compose_chain(&[&ids(f, n).tensor(lambda_m), &delta_n.tensor(&ids(f, m)), &flip(f, m, n)])
        .expect("M⊗N → N⊗M")
}

/// `c_{M,N}∘(id_M⊗λ_N)∘(δ_M⊗id_N): M⊗N → N⊗M`.
pub fn ring_braiding_raw(b: &Bialgebra, m: &Space, delta_m: &LinMap, n: &Space, lambda_n: &LinMap) -> LinMap {
    let f = b.field();
    LinMap::compose_chain(&[&flip(f, m, n), &ids(f, m).tensor(lambda_n), &delta_m.tensor(&ids(f, n))])
        .expect("M⊗N → N⊗M")
}

fn antipode_of(b: &Bialgebra) -> Option<LinMap> {
    b.antipode.clone().or_else(|| solve_antipode(b).ok())
}

/// YD braiding `M⊗N → N⊗M` of the requested variant.
pub fn yd_braiding(m: &YdModule, n: &YdModule, variant: BraidingVariant) -> Result<YdBraiding> {
    same_base(&m.base, &n.base)?;
    let b = &*m.base;
    let f = b.field();
    let (sm, sn) = (&m.space, &n.space);
    let map = match variant {
        BraidingVariant::Standard => standard_braiding_raw(b, sm, &m.lambda, sn, &n.delta),
        BraidingVariant::Ring => ring_braiding_raw(b, sm, &m.delta, sn, &n.lambda),
    };
    let inverse = match antipode_of(b) {
        None => None,
        Some(s) => {
            let inv = match variant {
                BraidingVariant::Standard => LinMap::compose_chain(&[
                    &flip(f, sn, sm),
                    &n.id().tensor(&m.lambda),
                    &n.id().tensor(&s).tensor(&m.id()),
                    &n.delta.tensor(&m.id()),
                ])?,
                BraidingVariant::Ring => LinMap::compose_chain(&[
                    &m.id().tensor(&n.lambda),
                    &m.id().tensor(&s).tensor(&n.id()),
                    &m.delta.tensor(&n.id()),
                    &flip(f, sn, sm),
                ])?,
            };
            let one_way = map.compose(&inv)?;
            let other_way = inv.compose(&map)?;
            if *one_way.matrix() != *LinMap::identity(f, &[sn.clone(), sm.clone()]).matrix()
                || *other_way.matrix() != *LinMap::identity(f, &[sm.clone(), sn.clone()]).matrix()
            {
                return Err(Error::Verification(format!(
                    "{variant:?} braiding inverse fails on {} ⊗ {}",
                    sm.label, sn.label
                )));
            }
            Some(inv)
        }
    };
    Ok(YdBraiding { map, inverse })
}

/// YD structure on `M⊗N` of the requested flavor, as a single space.
pub fn tensor_yd(m: &YdModule, n: &YdModule, flavor: Flavor) -> Result<YdModule> {
    same_base(&m.base, &n.base)?;
    let b = &*m.base;
    let f = b.field();
    let (sm, sn) = (&m.space, &n.space);
    let (id_h, id_m, id_n) = (b.id(), m.id(), n.id());
    let (coprod, prod) = match flavor {
        Flavor::Standard => (b.delta.clone(), b.mu_op()),
        Flavor::Twisted => (b.delta_op(), b.mu.clone()),
    };
    let lambda = LinMap::compose_chain(&[
        &m.lambda.tensor(&n.lambda),
        &id_h.tensor(&flip(f, &b.space, sm)).tensor(&id_n),
        &coprod.tensor(&id_m).tensor(&id_n),
    ])?;
    let delta = LinMap::compose_chain(&[
        &id_m.tensor(&id_n).tensor(&prod),
        &id_m.tensor(&flip(f, &b.space, sn)).tensor(&id_h),
        &m.delta.tensor(&n.delta),
    ])?;
    let names = match (&sm.basis_names, &sn.basis_names) {
        (Some(a), Some(c)) => Some(a.iter().flat_map(|x| c.iter().map(move |y| format!("{x}⊗{y}"))).collect()),
        _ => None,
    };
    let space = Space { dim: sm.dim * sn.dim, label: format!("{}⊗{}", sm.label, sn.label), basis_names: names };
    YdModule::new(m.base.clone(), space, lambda, delta)
}

/// The unit object `k` with `λ = ε` and `δ = ν`.
pub fn unit_yd(base: Arc<Bialgebra>) -> YdModule {
    let space = Space::with_basis("k", vec!["1".into()]);
    let lambda = base.eps.clone();
    let delta = base.nu.clone();
    YdModule::new(base, space, lambda, delta).expect("one-dimensional unit object")
}

/// `dim` copies of the unit object: `h·m = ε(h)m`, `δ(m) = m⊗1`.
pub fn trivial_yd(base: Arc<Bialgebra>, dim: usize) -> YdModule {
    let f = base.field();
    let space = Space::new("M", dim);
    let id = ids(f, &space);
    let lambda = base.eps.tensor(&id);
    let delta = id.tensor(&base.nu);
    YdModule::new(base, space, lambda, delta).expect("trivial structure")
}

/// `H` with the adjoint action `h·x = h(1) x s(h(2))` and coaction `Δ`;
/// for a group algebra this is `g·h = ghg⁻¹`, `δ(h) = h⊗h`.
pub fn regular_yd(base: Arc<Bialgebra>) -> Result<YdModule> {
    let s = antipode_of(&base).ok_or_else(|| Error::NoAntipode("regular YD module needs an antipode".into()))?;
    let f = base.field();
    let id = base.id();
    let c = flip(f, &base.space, &base.space);
    // h⊗x ↦ h1⊗h2⊗x ↦ h1⊗x⊗h2 ↦ h1⊗x⊗s(h2) ↦ h1 x s(h2)
    let lambda = LinMap::compose_chain(&[
        &base.mu,
        &base.mu.tensor(&id),
        &id.tensor(&id).tensor(&s),
        &id.tensor(&c),
        &base.delta.tensor(&id),
    ])?;
    let space = base.space.relabel("M");
    let m = YdModule::new(base.clone(), space, lambda, base.delta.clone())?;
    let r = check_yd(&m, YdLevel::Yd);
    if !r.passed() {
        return Err(Error::AxiomFailure(format!("adjoint structure is not YD:\n{r}")));
    }
    Ok(m)
}

/// Regular YD module of a group algebra, built from the table.
pub fn regular_yd_group_algebra(field: Field, g: &GroupTable) -> Result<YdModule> {
    let data = g.validate_group()?;
    let base = Arc::new(crate::hopf::group_algebra(field, g)?);
    let space = Space::with_basis("M", g.names.clone());
    let one = field.one();
    let lambda = LinMap::from_fn(field, vec![base.space.clone(), space.clone()], vec![space.clone()], |gh| {
        vec![(vec![g.mul(g.mul(gh[0], gh[1]), data.inverse[gh[0]])], one.clone())]
    });
    let delta = LinMap::from_fn(field, vec![space.clone()], vec![space.clone(), base.space.clone()], |h| {
        vec![(vec![h[0], h[0]], one.clone())]
    });
    YdModule::new(base, space, lambda, delta)
}

/// `M ⊕ k` with the zero product on `M`, the adjoined `1` as unit, `H`
/// acting on `1` through `ε` and `δ(1) = 1⊗1`. The adjoined unit is the
/// last basis vector.
pub fn formal_unit_extend(m: &YdModule) -> YdModuleAlgebra {
    let b = &*m.base;
    let f = b.field();
    let d = m.dim();
    let names =
        m.space.basis_names.as_ref().map(|v| v.iter().cloned().chain(std::iter::once("1".to_string())).collect());
    let space = Space { dim: d + 1, label: format!("{}~", m.space.label), basis_names: names };
    let t = m.tables();
    let bt = b.tables();
    let h = b.space.clone();
    let lambda = LinMap::from_fn(f, vec![h.clone(), space.clone()], vec![space.clone()], |hx| {
        if hx[1] == d {
            vec![(vec![d], bt.counit[hx[0]].clone())]
        } else {
            t.action[hx[0]][hx[1]].iter().map(|(y, c)| (vec![*y], c.clone())).collect()
        }
    });
    let delta = LinMap::from_fn(f, vec![space.clone()], vec![space.clone(), h.clone()], |x| {
        if x[0] == d {
            bt.unit.iter().map(|(k, c)| (vec![d, *k], c.clone())).collect()
        } else {
            t.coaction[x[0]].iter().map(|(y, k, c)| (vec![*y, *k], c.clone())).collect()
        }
    });
    let mu = LinMap::from_fn(f, vec![space.clone(), space.clone()], vec![space.clone()], |xy| {
        match (xy[0] == d, xy[1] == d) {
            (true, _) => vec![(vec![xy[1]], f.one())],
            (false, true) => vec![(vec![xy[0]], f.one())],
            (false, false) => vec![],
        }
    });
    let nu = LinMap::from_fn(f, vec![], vec![space.clone()], |_| vec![(vec![d], f.one())]);
    let module = YdModule::new(m.base.clone(), space, lambda, delta).expect("extended shapes");
    YdModuleAlgebra::new(module, mu, nu).expect("extended shapes")
}

/// Basis of the space of module maps `f: M → N` with `f(h·m) = h·f(m)`.
pub fn module_hom_basis(m: &HModule, n: &HModule) -> Vec<LinMap> {
    let f = m.base.field();
    let (dm, dn, dh) = (m.space.dim, n.space.dim, m.base.dim());
    let am = columns(m.lambda.matrix());
    let an = columns(n.lambda.matrix());
    // unknown F[b][a] = coefficient of n_b in f(m_a), variable b·dm + a;
    // equation (h, a, b): Σ λ_M[a'; h, a] F[b][a'] - Σ λ_N[b; h, b'] F[b'][a] = 0
    let mut entries = Vec::new();
    for h in 0..dh {
        for a in 0..dm {
            for b in 0..dn {
                let row = (h * dm + a) * dn + b;
                for (a2, c) in &am[h * dm + a] {
                    entries.push((row, b * dm + a2, c.clone()));
                }
                for b2 in 0..dn {
                    for (bb, c) in &an[h * dn + b2] {
                        if *bb == b {
                            entries.push((row, b2 * dm + a, -c));
                        }
                    }
                }
            }
        }
    }
    let system = crate::linalg::SparseMatrix::from_triplets(f, dh * dm * dn, dm * dn, entries);
    system
        .kernel_basis()
        .into_iter()
        .map(|v| {
            LinMap::from_fn(f, vec![m.space.clone()], vec![n.space.clone()], |a| {
                (0..dn).map(|b| (vec![b], v[b * dm + a[0]].clone())).collect()
            })
        })
        .collect()
}

/// `N*` over `H*`: action dual to `δ_N`, coaction dual to `λ_N`.
pub fn dual_yd(n: &YdModule) -> YdModule {
    let base = Arc::new(dual_bialgebra(&n.base));
    YdModule::new(base, n.space.dual(), n.delta.rainbow_dual(), n.lambda.rainbow_dual()).expect("dual shapes")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hopf::{group_algebra, Level};
    use crate::report::Verdict;
    use crate::tensor::multi_indices;

    const Q: Field = Field::Rational;

    fn s3() -> YdModule {
        regular_yd_group_algebra(Q, &GroupTable::symmetric3()).unwrap()
    }

    fn braid_check(c: &LinMap, m: &Space) -> bool {
        // Yang-Baxter on M⊗M⊗M
        let f = c.field();
        let id = ids(f, m);
        let c1 = c.tensor(&id);
        let c2 = id.tensor(c);
        let l = LinMap::compose_chain(&[&c1, &c2, &c1]).unwrap();
        let r = LinMap::compose_chain(&[&c2, &c1, &c2]).unwrap();
        l == r
    }

    #[test]
    fn regular_s3_is_yd() {
        let m = s3();
        assert!(check_yd(&m, YdLevel::Yd).passed());
        let generic = regular_yd(m.base.clone()).unwrap();
        assert_eq!(generic.lambda, m.lambda);
        assert_eq!(generic.delta, m.delta);
    }

    #[test]
    fn conjugation_action_entry() {
        let m = s3();
        let g = GroupTable::symmetric3();
        let (a, b, c) = (g.index_of("(13)").unwrap(), g.index_of("(12)").unwrap(), g.index_of("(23)").unwrap());
        assert_eq!(m.lambda.image_of(&[a, b]), vec![(vec![c], Q.one())]);
    }

    #[test]
    fn yd_braiding_on_s3() {
        let m = s3();
        let g = GroupTable::symmetric3();
        let inv = g.validate_group().unwrap().inverse;
        let c = yd_braiding(&m, &m, BraidingVariant::Standard).unwrap();
        for h in 0..6 {
            for k in 0..6 {
                let conj = g.mul(g.mul(k, h), inv[k]);
                assert_eq!(c.map.image_of(&[h, k]), vec![(vec![k, conj], Q.one())]);
            }
        }
        assert!(braid_check(&c.map, &m.space));
        let ring = yd_braiding(&m, &m, BraidingVariant::Ring).unwrap();
        assert!(ring.inverse.is_some());
        assert!(braid_check(&ring.map, &m.space));
    }

    #[test]
    fn broken_action_fails_with_witness() {
        let m = s3();
        // (12) now fixes (13) and (23) instead of swapping them
        let mut entries: Vec<(usize, usize, Scalar)> =
            m.lambda.matrix().entries().map(|(r, c, v)| (r, c, v.clone())).collect();
        for e in entries.iter_mut() {
            if e.1 == 6 + 2 {
                e.0 = 2;
            } else if e.1 == 6 + 3 {
                e.0 = 3;
            }
        }
        let mat = crate::linalg::SparseMatrix::from_triplets(Q, 6, 36, entries);
        let broken = YdModule::new(
            m.base.clone(),
            m.space.clone(),
            LinMap::new(m.lambda.domain().to_vec(), m.lambda.codomain().to_vec(), mat).unwrap(),
            m.delta.clone(),
        )
        .unwrap();
        let r = check_yd(&broken, YdLevel::Yd);
        assert!(!r.passed());
        assert!(r.failures().all(|c| matches!(c.verdict, Verdict::Fails(_))));
    }

    #[test]
    fn tensor_products_are_yd() {
        let m = s3();
        for flavor in [Flavor::Standard, Flavor::Twisted] {
            let t = tensor_yd(&m, &m, flavor).unwrap();
            assert_eq!(t.dim(), 36);
            assert!(check_yd(&t, YdLevel::Yd).passed(), "{flavor:?}");
        }
    }

    #[test]
    fn unit_object_is_neutral() {
        let m = s3();
        let k = unit_yd(m.base.clone());
        assert!(check_yd(&k, YdLevel::Yd).passed());
        for flavor in [Flavor::Standard, Flavor::Twisted] {
            let mk = tensor_yd(&m, &k, flavor).unwrap();
            assert_eq!(mk.lambda.matrix(), m.lambda.matrix());
            assert_eq!(mk.delta.matrix(), m.delta.matrix());
            let km = tensor_yd(&k, &m, flavor).unwrap();
            assert_eq!(km.lambda.matrix(), m.lambda.matrix());
        }
    }

    #[test]
    fn braiding_hexagons() {
        let base = Arc::new(group_algebra(Q, &GroupTable::symmetric3()).unwrap());
        let m = regular_yd(base.clone()).unwrap();
        let k2 = trivial_yd(base.clone(), 2);
        let (v, w, u) = (m.relabel("V"), k2.relabel("W"), m.relabel("U"));
        let c = |a: &YdModule, b: &YdModule| yd_braiding(a, b, BraidingVariant::Standard).unwrap().map;
        let wu = tensor_yd(&w, &u, Flavor::Standard).unwrap();
        let lhs = c(&v, &wu);
        let rhs = w.id().tensor(&c(&v, &u)).compose(&c(&v, &w).tensor(&u.id())).unwrap();
        assert_eq!(lhs.matrix(), rhs.matrix());
        let vw = tensor_yd(&v, &w, Flavor::Standard).unwrap();
        let lhs = c(&vw, &u);
        let rhs = c(&v, &u).tensor(&w.id()).compose(&v.id().tensor(&c(&w, &u))).unwrap();
        assert_eq!(lhs.matrix(), rhs.matrix());
    }

    #[test]
    fn formal_unit_extension_is_yd_algebra() {
        let m = s3();
        let a = formal_unit_extend(&m);
        let r = check_yd_algebra(&a);
        assert!(r.passed(), "{r}");
        assert_eq!(a.module.dim(), 7);
        let k = formal_unit_extend(&unit_yd(m.base.clone()));
        assert!(check_yd_algebra(&k).passed());
    }

    #[test]
    fn dual_module() {
        let m = s3();
        let d = dual_yd(&m);
        assert!(check_bialgebra_hopf(&d.base));
        assert!(check_yd(&d, YdLevel::Yd).passed());
        let dd = dual_yd(&d);
        assert_eq!(dd.lambda.matrix(), m.lambda.matrix());
        assert_eq!(dd.delta.matrix(), m.delta.matrix());
        assert_eq!(*dd.base, *m.base);
    }

    fn check_bialgebra_hopf(b: &Bialgebra) -> bool {
        crate::hopf::check_bialgebra(b, Level::Hopf).passed()
    }

    #[test]
    fn trivial_module_over_monoid_has_no_inverse() {
        let t = GroupTable::new(vec!["1".into(), "e".into()], vec![vec![0, 1], vec![1, 1]]).unwrap();
        let base = Arc::new(crate::hopf::monoid_algebra(Q, &t).unwrap());
        let k = trivial_yd(base.clone(), 2);
        assert!(check_yd(&k, YdLevel::Yd).passed());
        let c = yd_braiding(&k, &k, BraidingVariant::Standard).unwrap();
        assert!(c.inverse.is_none());
        assert!(regular_yd(base).is_err());
    }

    #[test]
    fn different_bases_are_rejected() {
        let a = s3();
        let b = regular_yd_group_algebra(Q, &GroupTable::cyclic(6).unwrap()).unwrap();
        assert_eq!(yd_braiding(&a, &b, BraidingVariant::Standard).unwrap_err(), Error::BaseMismatch);
        assert_eq!(tensor_yd(&a, &b, Flavor::Twisted).unwrap_err(), Error::BaseMismatch);
    }

    #[test]
    fn module_tables_agree_with_maps() {
        let m = s3();
        let t = m.tables();
        for hx in multi_indices(&[6, 6]) {
            let img = m.lambda.image_of(&hx);
            let terms: Vec<(Vec<usize>, Scalar)> =
                t.action[hx[0]][hx[1]].iter().map(|(y, c)| (vec![*y], c.clone())).collect();
            assert_eq!(img, terms);
        }
    }
}
