//! Explicit bidifferentials on `H^{⊗n}⊗M⊗(H*)^{⊗m}` and
//! `H^{⊗n}⊗M⊗(H*)^{⊗m}⊗N*`, assembled basis element by basis element from
//! structure constants.
//!
//! Index tuples are laid out as `[h_1, …, h_n, a, l_1, …, l_m, b]` with `b`
//! present only when an `N*` factor is attached. `H*` and `N*` carry the
//! dual bases `e_i*`, `f_j*`.

use std::collections::BTreeMap;

use super::{verify_bicomplex, GradedComplex, Group, Which};
use crate::error::{Error, Result};
use crate::hopf::{check_bialgebra, dual_bialgebra, Bialgebra, Level};
use crate::linalg::{Field, Scalar, SparseMatrix};
use crate::report::{AxiomCheck, AxiomReport};
use crate::tensor::{LinMap, Space};
use crate::yd::{check_yd, YdLevel, YdModule};

type Terms = Vec<(usize, Scalar)>;
type TupleTerms = Vec<(Vec<usize>, Scalar)>;

/// All products of one term from each list.
fn cartesian(f: Field, lists: &[Terms]) -> TupleTerms {
    let mut out: TupleTerms = vec![(vec![], f.one())];
    for list in lists {
        let mut next = Vec::with_capacity(out.len() * list.len());
        for (idx, c) in &out {
            for (x, y) in list {
                let mut i = idx.clone();
                i.push(*x);
                next.push((i, c * y));
            }
        }
        out = next;
    }
    out
}

/// Structure constants gathered once per complex.
struct Constants {
    f: Field,
    h: Space,
    hd: Space,
    m: Space,
    nd: Option<Space>,
    unit: Terms,
    /// `mul[x][y]`: `e_x e_y`.
    mul: Vec<Vec<Terms>>,
    /// `comul[x]`: `Δ(e_x)`.
    comul: Vec<Vec<(usize, usize, Scalar)>>,
    /// `hd_mul[a][b]`: `e_a* e_b*`, from `(l l′)(h) = l(h(2)) l′(h(1))`.
    hd_mul: Vec<Vec<Terms>>,
    /// `h_on_hd[y][c]`: `y·e_c*` where `(y·l)(x) = l(xy)`.
    h_on_hd: Vec<Vec<Terms>>,
    /// `hd_right[c][z]`: `e_c*↼z` where `(l↼z)(x) = l(zx)`.
    hd_right: Vec<Vec<Terms>>,
    /// `action[x][a]`, `coaction[a]` of `M`.
    action: Vec<Vec<Terms>>,
    coaction: Vec<Vec<(usize, usize, Scalar)>>,
    /// `hd_on_nd[c][d]`: `e_c*·f_d*` where `(l·b)(n) = b(n(0)) l(n(1))`.
    hd_on_nd: Vec<Vec<Terms>>,
    /// `nd_right[d][y]`: `f_d*↼y` where `(b↼y)(n) = b(y·n)`.
    nd_right: Vec<Vec<Terms>>,
}

impl Constants {
    fn new(b: &Bialgebra, m: &YdModule, n: Option<&YdModule>) -> Self {
        let t = b.tables();
        let dim = b.dim();
        let mut hd_mul = vec![vec![Vec::new(); dim]; dim];
        for (k, terms) in t.comul.iter().enumerate() {
            for (j, i, c) in terms {
                hd_mul[*i][*j].push((k, c.clone()));
            }
        }
        let mut h_on_hd = vec![vec![Vec::new(); dim]; dim];
        let mut hd_right = vec![vec![Vec::new(); dim]; dim];
        for x in 0..dim {
            for y in 0..dim {
                for (c, coef) in &t.mul[x][y] {
                    // e_x e_y has e_c-coefficient coef
                    h_on_hd[y][*c].push((x, coef.clone()));
                    hd_right[*c][x].push((y, coef.clone()));
                }
            }
        }
        let mt = m.tables();
        let (mut hd_on_nd, mut nd_right, mut nd) = (Vec::new(), Vec::new(), None);
        if let Some(n) = n {
            let nt = n.tables();
            let nd_dim = n.dim();
            hd_on_nd = vec![vec![Vec::new(); nd_dim]; dim];
            nd_right = vec![vec![Vec::new(); dim]; nd_dim];
            for (j, terms) in nt.coaction.iter().enumerate() {
                for (d, h, coef) in terms {
                    hd_on_nd[*h][*d].push((j, coef.clone()));
                }
            }
            for (y, per_j) in nt.action.iter().enumerate() {
                for (j, terms) in per_j.iter().enumerate() {
                    for (d, coef) in terms {
                        nd_right[*d][y].push((j, coef.clone()));
                    }
                }
            }
            nd = Some(n.space.dual());
        }
        Constants {
            f: b.field(),
            h: b.space.clone(),
            hd: b.space.dual(),
            m: m.space.clone(),
            nd,
            unit: t.unit,
            mul: t.mul,
            comul: t.comul,
            hd_mul,
            h_on_hd,
            hd_right,
            action: mt.action,
            coaction: mt.coaction,
            hd_on_nd,
            nd_right,
        }
    }

    /// Product `e_{x_1}⋯e_{x_k}` in `H`, the unit when empty.
    fn product(&self, xs: &[usize]) -> Terms {
        let mut acc = self.unit.clone();
        for &x in xs {
            let mut next: BTreeMap<usize, Scalar> = BTreeMap::new();
            for (y, c) in &acc {
                for (z, d) in &self.mul[*y][x] {
                    let e = next.entry(*z).or_insert_with(|| self.f.zero());
                    *e = &*e + &(c * d);
                }
            }
            acc = next.into_iter().filter(|(_, c)| !c.is_zero()).collect();
        }
        acc
    }

    /// `Δ^{pieces−1}(e_x)` as tuples of `pieces` indices.
    fn iterated_coproduct(&self, x: usize, pieces: usize) -> TupleTerms {
        let mut acc: TupleTerms = vec![(vec![x], self.f.one())];
        for _ in 1..pieces {
            let mut next = Vec::new();
            for (idx, c) in &acc {
                let (last, head) = idx.split_last().expect("nonempty");
                for (y, z, d) in &self.comul[*last] {
                    let mut i = head.to_vec();
                    i.extend([*y, *z]);
                    next.push((i, c * d));
                }
            }
            acc = next;
        }
        acc
    }

    fn factors(&self, n: usize, m: usize) -> Vec<Space> {
        let mut v = vec![self.h.clone(); n];
        v.push(self.m.clone());
        v.extend(std::iter::repeat_n(self.hd.clone(), m));
        v.extend(self.nd.clone());
        v
    }

    fn block(
        &self,
        n: usize,
        m: usize,
        tn: usize,
        tm: usize,
        image: impl FnMut(&[usize]) -> TupleTerms,
    ) -> SparseMatrix {
        LinMap::from_fn(self.f, self.factors(n, m), self.factors(tn, tm), image).into_matrix()
    }

    fn tail(&self) -> usize {
        usize::from(self.nd.is_some())
    }

    /// `Σ_{i=1}^{n−1} (−1)^i h_1⊗…⊗h_i h_{i+1}⊗…`.
    fn d_bar(&self, n: usize, m: usize) -> SparseMatrix {
        self.block(n, m, n - 1, m, |idx| {
            let mut out = Vec::new();
            for i in 1..n {
                for (p, c) in &self.mul[idx[i - 1]][idx[i]] {
                    let mut o = idx[..i - 1].to_vec();
                    o.push(*p);
                    o.extend_from_slice(&idx[i + 1..]);
                    out.push((o, c.clone().signed(i)));
                }
            }
            out
        })
    }

    /// `Σ_{i=1}^{m−1} (−1)^i …⊗l_i l_{i+1}⊗…`.
    fn d_cob(&self, n: usize, m: usize) -> SparseMatrix {
        self.block(n, m, n, m - 1, |idx| {
            let mut out = Vec::new();
            let base = n + 1;
            for i in 1..m {
                let (a, b) = (idx[base + i - 1], idx[base + i]);
                for (p, c) in &self.hd_mul[a][b] {
                    let mut o = idx[..base + i - 1].to_vec();
                    o.push(*p);
                    o.extend_from_slice(&idx[base + i + 1..]);
                    out.push((o, c.clone().signed(i)));
                }
            }
            out
        })
    }

    /// `^{H*}π`: `⟨l_1, h_{1(2)}⋯h_{n(2)} a_{(1)}⟩ h_{1(1)}⊗…⊗h_{n(1)}⊗a_{(0)}⊗l_2⊗…`.
    fn pi_left_dual(&self, n: usize, m: usize) -> SparseMatrix {
        self.block(n, m, n, m - 1, |idx| {
            let mut out = Vec::new();
            let l1 = idx[n + 1];
            let sweedler: Vec<Vec<(usize, usize, Scalar)>> = (0..n).map(|i| self.comul[idx[i]].clone()).collect();
            for_each_choice(self.f, &sweedler, |choice, c| {
                for (a0, g, ca) in &self.coaction[idx[n]] {
                    let mut word: Vec<usize> = choice.iter().map(|p| p.1).collect();
                    word.push(*g);
                    for (p, cp) in self.product(&word) {
                        if p == l1 {
                            let mut o: Vec<usize> = choice.iter().map(|p| p.0).collect();
                            o.push(*a0);
                            o.extend_from_slice(&idx[n + 2..]);
                            out.push((o, &(c * ca) * &cp));
                        }
                    }
                }
            });
            out
        })
    }

    /// `π^{H*}`: `h_{1(2)}⊗…⊗h_{n(2)}⊗a⊗l_1⊗…⊗l_{m−1}⊗(X·l_m)·b` with
    /// `X = h_{1(1)}⋯h_{n(1)}`.
    fn pi_right_dual(&self, n: usize, m: usize) -> SparseMatrix {
        self.block(n, m, n, m - 1, |idx| {
            let mut out = Vec::new();
            let (lm, b) = (idx[n + m], idx[n + m + 1]);
            let sweedler: Vec<Vec<(usize, usize, Scalar)>> = (0..n).map(|i| self.comul[idx[i]].clone()).collect();
            for_each_choice(self.f, &sweedler, |choice, c| {
                let firsts: Vec<usize> = choice.iter().map(|p| p.0).collect();
                for (x, cx) in self.product(&firsts) {
                    for (l, cl) in &self.h_on_hd[x][lm] {
                        for (j, cj) in &self.hd_on_nd[*l][b] {
                            let mut o: Vec<usize> = choice.iter().map(|p| p.1).collect();
                            o.extend_from_slice(&idx[n..n + m]);
                            o.push(*j);
                            out.push((o, &(&(c * &cx) * cl) * cj));
                        }
                    }
                }
            });
            out
        })
    }

    /// `π^H`: `h_1⊗…⊗h_{n−1}⊗y_{m+1}·a⊗y_m·l_1⊗…⊗y_1·l_m⊗b` with
    /// `Δ^m(h_n) = y_1⊗…⊗y_{m+1}`.
    fn pi_right_h(&self, n: usize, m: usize) -> SparseMatrix {
        let tail = self.tail();
        self.block(n, m, n - 1, m, |idx| {
            let mut out = Vec::new();
            for (ys, c) in self.iterated_coproduct(idx[n - 1], m + 1) {
                let mut lists: Vec<Terms> = idx[..n - 1].iter().map(|&h| vec![(h, self.f.one())]).collect();
                lists.push(self.action[ys[m]][idx[n]].clone());
                for i in 0..m {
                    lists.push(self.h_on_hd[ys[m - 1 - i]][idx[n + 1 + i]].clone());
                }
                if tail == 1 {
                    lists.push(vec![(idx[n + 1 + m], self.f.one())]);
                }
                for (o, d) in cartesian(self.f, &lists) {
                    out.push((o, &c * &d));
                }
            }
            out
        })
    }

    /// `^Hπ`: `h_2⊗…⊗h_n⊗a⊗l_1↼z_m⊗…⊗l_m↼z_1⊗b↼y_0` with
    /// `Δ^m(h_1) = y_0⊗z_1⊗…⊗z_m`.
    fn pi_left_h(&self, n: usize, m: usize) -> SparseMatrix {
        self.block(n, m, n - 1, m, |idx| {
            let mut out = Vec::new();
            for (ys, c) in self.iterated_coproduct(idx[0], m + 1) {
                let mut lists: Vec<Terms> = idx[1..=n].iter().map(|&x| vec![(x, self.f.one())]).collect();
                for i in 0..m {
                    lists.push(self.hd_right[idx[n + 1 + i]][ys[m - i]].clone());
                }
                lists.push(self.nd_right[idx[n + 1 + m]][ys[0]].clone());
                for (o, d) in cartesian(self.f, &lists) {
                    out.push((o, &c * &d));
                }
            }
            out
        })
    }
}

/// Calls `body` once per choice of one coproduct term from each list, with
/// the chosen pairs and the product of their coefficients.
fn for_each_choice(f: Field, lists: &[Vec<(usize, usize, Scalar)>], mut body: impl FnMut(&[(usize, usize)], &Scalar)) {
    fn rec(
        lists: &[Vec<(usize, usize, Scalar)>],
        chosen: &mut Vec<(usize, usize)>,
        coef: Scalar,
        body: &mut dyn FnMut(&[(usize, usize)], &Scalar),
    ) {
        match lists.split_first() {
            None => body(chosen, &coef),
            Some((first, rest)) => {
                for (x, y, c) in first {
                    chosen.push((*x, *y));
                    rec(rest, chosen, &coef * c, body);
                    chosen.pop();
                }
            }
        }
    }
    rec(lists, &mut Vec::new(), f.one(), &mut body);
}

fn grid(cst: &Constants, bound: usize) -> GradedComplex {
    let mut groups = Vec::new();
    for total in 0..=bound {
        for n in 0..=total {
            let m = total - n;
            let mut label = String::new();
            if n > 0 {
                label.push_str(&format!("H^{n}⊗"));
            }
            label.push_str(&cst.m.label);
            if m > 0 {
                label.push_str(&format!("⊗H*^{m}"));
            }
            if let Some(nd) = &cst.nd {
                label.push_str(&format!("⊗{}", nd.label));
            }
            groups.push(Group { label, multidegree: vec![n, m], total, factors: cst.factors(n, m) });
        }
    }
    GradedComplex::new(cst.f, bound, groups)
}

fn require_inputs(b: &Bialgebra, mods: &[&YdModule]) -> Result<()> {
    let rep = check_bialgebra(b, Level::Bialgebra);
    if !rep.passed() {
        return Err(Error::AxiomFailure(format!("H is not a bialgebra:\n{rep}")));
    }
    for (k, m) in mods.iter().enumerate() {
        if *m.base != *b {
            return Err(Error::BaseMismatch);
        }
        let rep = check_yd(m, YdLevel::Yd);
        if !rep.passed() {
            return Err(Error::AxiomFailure(format!("module {k} is not YD:\n{rep}")));
        }
    }
    Ok(())
}

fn verified(c: GradedComplex) -> Result<GradedComplex> {
    let rep = verify_bicomplex(&c);
    if let Some(bad) = rep.failures().next() {
        return Err(Error::Verification(format!("bidifferential identity fails: {} ({:?})", bad.name, bad.verdict)));
    }
    Ok(c)
}

/// The bidifferential on `H^{⊗n}⊗M⊗(H*)^{⊗m}`, `n + m ≤ bound`, written
/// through the pairing with iterated coproducts of `H*`.
///
/// `d` lowers `m`:
/// `(−1)^{n+1} ⟨l_1, pieces of h_{(2)}'s and a_{(1)}⟩ h_{(1)}'s⊗a_{(0)}⊗l_2⊗… + Σ (−1)^{n+i+1} …⊗l_i l_{i+1}⊗…`.
/// `d′` lowers `n`:
/// `(−1)^{n−1} ∏⟨l_{i(1)}, y_{m+1−i}⟩ h_1⊗…⊗h_{n−1}⊗y_{m+1}a⊗l_{1(2)}⊗… + Σ (−1)^{i−1} …⊗h_i h_{i+1}⊗…`.
pub fn yd_bidifferential(b: &Bialgebra, m: &YdModule, bound: usize) -> Result<GradedComplex> {
    require_inputs(b, &[m])?;
    let cst = Constants::new(b, m, None);
    let dual = dual_bialgebra(b).tables();
    let f = cst.f;
    let mut cx = grid(&cst, bound);
    for src in 0..cx.groups.len() {
        let (n, mm) = (cx.groups[src].multidegree[0], cx.groups[src].multidegree[1]);
        if mm >= 1 {
            let tgt = cx.group_index(&[n, mm - 1]).expect("grid");
            let block = cst.block(n, mm, n, mm - 1, |idx| {
                let mut out = Vec::new();
                // Δ^n of l_1 in H*, paired piece by piece
                let pieces = iterate_dual(&dual.comul, idx[n + 1], n + 1, f);
                let sweedler: Vec<Vec<(usize, usize, Scalar)>> = (0..n).map(|i| cst.comul[idx[i]].clone()).collect();
                for_each_choice(f, &sweedler, |choice, c| {
                    for (a0, g, ca) in &cst.coaction[idx[n]] {
                        for (p, cp) in &pieces {
                            let paired = p[0] == *g && (1..=n).all(|t| p[t] == choice[n - t].1);
                            if paired {
                                let mut o: Vec<usize> = choice.iter().map(|x| x.0).collect();
                                o.push(*a0);
                                o.extend_from_slice(&idx[n + 2..]);
                                out.push((o, (&(c * ca) * cp).signed(n + 1)));
                            }
                        }
                    }
                });
                for i in 1..mm {
                    let base = n + 1;
                    for (p, c) in &dual.mul[idx[base + i - 1]][idx[base + i]] {
                        let mut o = idx[..base + i - 1].to_vec();
                        o.push(*p);
                        o.extend_from_slice(&idx[base + i + 1..]);
                        out.push((o, c.clone().signed(n + i + 1)));
                    }
                }
                out
            });
            cx.set_block(Which::D, src, tgt, block)?;
        }
        if n >= 1 {
            let tgt = cx.group_index(&[n - 1, mm]).expect("grid");
            let block = cst.block(n, mm, n - 1, mm, |idx| {
                let mut out = Vec::new();
                let splits: Vec<Vec<(usize, usize, Scalar)>> =
                    (0..mm).map(|i| dual.comul[idx[n + 1 + i]].clone()).collect();
                for (ys, c) in cst.iterated_coproduct(idx[n - 1], mm + 1) {
                    for_each_choice(f, &splits, |choice, cl| {
                        if (0..mm).all(|i| choice[i].0 == ys[mm - 1 - i]) {
                            for (a2, ca) in &cst.action[ys[mm]][idx[n]] {
                                let mut o = idx[..n - 1].to_vec();
                                o.push(*a2);
                                o.extend(choice.iter().map(|x| x.1));
                                out.push((o, (&(&c * cl) * ca).signed(n - 1)));
                            }
                        }
                    });
                }
                for i in 1..n {
                    for (p, c) in &cst.mul[idx[i - 1]][idx[i]] {
                        let mut o = idx[..i - 1].to_vec();
                        o.push(*p);
                        o.extend_from_slice(&idx[i + 1..]);
                        out.push((o, c.clone().signed(i - 1)));
                    }
                }
                out
            });
            cx.set_block(Which::DPrime, src, tgt, block)?;
        }
    }
    verified(cx)
}

/// `Δ^{pieces−1}(e_x*)` in `H*` from its comultiplication table.
fn iterate_dual(comul: &[Vec<(usize, usize, Scalar)>], x: usize, pieces: usize, f: Field) -> TupleTerms {
    let mut acc: TupleTerms = vec![(vec![x], f.one())];
    for _ in 1..pieces {
        let mut next = Vec::new();
        for (idx, c) in &acc {
            let (last, head) = idx.split_last().expect("nonempty");
            for (y, z, d) in &comul[*last] {
                let mut i = head.to_vec();
                i.extend([*y, *z]);
                next.push((i, c * d));
            }
        }
        acc = next;
    }
    acc
}

/// The four commuting maps, blockwise by source `(n, m)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PiMaps {
    pub bound: usize,
    /// `^{H*}π`, `π^{H*}`, `π^H`, `^Hπ` in this order.
    pub maps: [BTreeMap<(usize, usize), SparseMatrix>; 4],
}

pub const PI_NAMES: [&str; 4] = ["^{H*}π", "π^{H*}", "π^H", "^Hπ"];

impl PiMaps {
    pub fn build(b: &Bialgebra, m: &YdModule, n: &YdModule, bound: usize) -> Result<Self> {
        require_inputs(b, &[m, n])?;
        Ok(Self::from_constants(&Constants::new(b, m, Some(n)), bound))
    }

    fn from_constants(cst: &Constants, bound: usize) -> Self {
        let mut maps: [BTreeMap<(usize, usize), SparseMatrix>; 4] = Default::default();
        for total in 0..=bound {
            for n in 0..=total {
                let m = total - n;
                if m >= 1 {
                    maps[0].insert((n, m), cst.pi_left_dual(n, m));
                    maps[1].insert((n, m), cst.pi_right_dual(n, m));
                }
                if n >= 1 {
                    maps[2].insert((n, m), cst.pi_right_h(n, m));
                    maps[3].insert((n, m), cst.pi_left_h(n, m));
                }
            }
        }
        PiMaps { bound, maps }
    }

    /// Target bidegree of map `k` from `(n, m)`.
    fn target(k: usize, (n, m): (usize, usize)) -> (usize, usize) {
        if k < 2 {
            (n, m - 1)
        } else {
            (n - 1, m)
        }
    }
}

/// `π_a∘π_b = π_b∘π_a` for all six pairs on every bidegree where both
/// composites are defined.
pub fn pi_commutation(p: &PiMaps) -> AxiomReport {
    let mut rep = AxiomReport::default();
    for a in 0..4 {
        for b in a + 1..4 {
            let mut failure = None;
            for &src in p.maps[a].keys() {
                let (Some(pb), Some(pa)) = (p.maps[b].get(&src), p.maps[a].get(&src)) else { continue };
                let (ta, tb) = (PiMaps::target(a, src), PiMaps::target(b, src));
                let (Some(ab), Some(ba)) = (p.maps[a].get(&tb), p.maps[b].get(&ta)) else { continue };
                let lhs = ab.mul(pb).expect("composable");
                let rhs = ba.mul(pa).expect("composable");
                if lhs != rhs {
                    let at = lhs.first_difference(&rhs).expect("differ");
                    failure = Some(format!(
                        "bidegree {src:?}, entry {at:?}: {} vs {}",
                        lhs.get(at.0, at.1),
                        rhs.get(at.0, at.1)
                    ));
                    break;
                }
            }
            let name = format!("{} and {} commute", PI_NAMES[a], PI_NAMES[b]);
            rep.push(match failure {
                None => AxiomCheck { name, verdict: crate::report::Verdict::Holds },
                Some(why) => AxiomCheck::missing(name, why),
            });
        }
    }
    rep
}

pub fn pi_commutation_suite(b: &Bialgebra, m: &YdModule, n: &YdModule, bound: usize) -> Result<AxiomReport> {
    Ok(pi_commutation(&PiMaps::build(b, m, n, bound)?))
}

/// One line of the table of bidifferentials on `H^{⊗n}⊗M⊗(H*)^{⊗m}⊗N*`.
/// `d` lowers `n` and `d′` lowers `m`:
///
/// | line | `d` | `d′` |
/// |---|---|---|
/// | 1 | `d_bar` | `(−1)^n d_cob` |
/// | 2 | `d_bar + (−1)^n π^H` | `(−1)^n d_cob + (−1)^n ^{H*}π` |
/// | 3 | `d_bar + ^Hπ` | `(−1)^n d_cob + (−1)^{n+m} π^{H*}` |
/// | 4 | `d_bar + (−1)^n π^H + ^Hπ` | `(−1)^n d_cob + (−1)^n ^{H*}π + (−1)^{n+m} π^{H*}` |
///
/// Signs are evaluated on the source bidegree.
pub fn two_sided_complex(b: &Bialgebra, m: &YdModule, n: &YdModule, line: u8, bound: usize) -> Result<GradedComplex> {
    if !(1..=4).contains(&line) {
        return Err(Error::Invalid(format!("line must be 1..4, got {line}")));
    }
    require_inputs(b, &[m, n])?;
    let cst = Constants::new(b, m, Some(n));
    let pi = PiMaps::from_constants(&cst, bound);
    let mut cx = grid(&cst, bound);
    let (right_h, left_h) = (line == 2 || line == 4, line == 3 || line == 4);
    for src in 0..cx.groups.len() {
        let (nn, mm) = (cx.groups[src].multidegree[0], cx.groups[src].multidegree[1]);
        let sign = |k: usize| cst.f.one().signed(k);
        if nn >= 1 {
            let tgt = cx.group_index(&[nn - 1, mm]).expect("grid");
            let mut block = cst.d_bar(nn, mm);
            if right_h {
                block = block.add(&pi.maps[2][&(nn, mm)].scale(&sign(nn)))?;
            }
            if left_h {
                block = block.add(&pi.maps[3][&(nn, mm)])?;
            }
            cx.set_block(Which::D, src, tgt, block)?;
        }
        if mm >= 1 {
            let tgt = cx.group_index(&[nn, mm - 1]).expect("grid");
            let mut block = cst.d_cob(nn, mm).scale(&sign(nn));
            if right_h {
                block = block.add(&pi.maps[0][&(nn, mm)].scale(&sign(nn)))?;
            }
            if left_h {
                block = block.add(&pi.maps[1][&(nn, mm)].scale(&sign(nn + mm)))?;
            }
            cx.set_block(Which::DPrime, src, tgt, block)?;
        }
    }
    verified(cx)
}
