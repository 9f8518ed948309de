use std::sync::Arc;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::*;
use crate::braided::build_yd_system;
use crate::hopf::{dual_bialgebra, group_algebra, Bialgebra, GroupTable};
use crate::linalg::Scalar;
use crate::yd::{dual_yd, regular_yd, trivial_yd, unit_yd, YdModule};

const Q: Field = Field::Rational;

fn kg(f: Field, g: &GroupTable) -> Arc<Bialgebra> {
    Arc::new(group_algebra(f, g).unwrap())
}

fn kz2() -> Arc<Bialgebra> {
    kg(Q, &GroupTable::cyclic(2).unwrap())
}

/// Rank by plain dense elimination, independent of the sparse routine.
fn dense_rank(m: &SparseMatrix) -> usize {
    let mut a = m.to_dense();
    let (rows, cols) = (m.n_rows(), m.n_cols());
    let mut rank = 0;
    for c in 0..cols {
        let Some(p) = (rank..rows).find(|&r| !a[r][c].is_zero()) else { continue };
        a.swap(rank, p);
        let inv = a[rank][c].inv().unwrap();
        for r in 0..rows {
            if r != rank && !a[r][c].is_zero() {
                let factor = &a[r][c] * &inv;
                for k in 0..cols {
                    let sub = &factor * &a[rank][k];
                    a[r][k] = &a[r][k] - &sub;
                }
            }
        }
        rank += 1;
    }
    rank
}

#[test]
fn zero_differentials_give_chain_dimensions() {
    let groups = (0..3)
        .map(|k| Group {
            label: format!("G{k}"),
            multidegree: vec![k],
            total: k,
            factors: vec![Space::new("V", k + 1)],
        })
        .collect();
    let c = GradedComplex::new(Q, 2, groups);
    assert!(verify_bicomplex(&c).passed());
    let rep = homology(&c, Which::Total, false).unwrap();
    assert_eq!(rep.homology_dim_at(0).unwrap(), 1);
    assert_eq!(rep.homology_dim_at(1).unwrap(), 2);
    assert_eq!(rep.top_kernel, 3);
    assert!(rep.euler_holds);
    assert_eq!(rep.homology_dim_at(2), Err(Error::InsufficientTruncation { requested: 2, bound: 2 }));
}

#[test]
fn yd_bidifferential_identities_and_bidegrees() {
    let b = kz2();
    for m in [trivial_yd(b.clone(), 1), regular_yd(b.clone()).unwrap()] {
        let c = yd_bidifferential(&b, &m, 4).unwrap();
        for &(s, t) in c.d.keys() {
            let (a, z) = (&c.groups[s].multidegree, &c.groups[t].multidegree);
            assert_eq!((z[0], z[1] + 1), (a[0], a[1]), "d lowers m only");
        }
        for &(s, t) in c.d_prime.keys() {
            let (a, z) = (&c.groups[s].multidegree, &c.groups[t].multidegree);
            assert_eq!((z[0] + 1, z[1]), (a[0], a[1]), "d′ lowers n only");
        }
        let origin = c.group_index(&[0, 0]).unwrap();
        assert!(c.d.keys().chain(c.d_prime.keys()).all(|&(s, _)| s != origin));
    }
}

#[test]
fn yd_first_summand_matches_hand_expansion() {
    // on kℤ/2 with M = k trivial, the first summand of d at (1,1) sends
    // h⊗1⊗l to ⟨l, h⟩ h⊗1 with sign (−1)^2
    let b = kz2();
    let m = trivial_yd(b.clone(), 1);
    let c = yd_bidifferential(&b, &m, 2).unwrap();
    let (s, t) = (c.group_index(&[1, 1]).unwrap(), c.group_index(&[1, 0]).unwrap());
    let block = &c.d[&(s, t)];
    for h in 0..2 {
        for l in 0..2 {
            for out in 0..2 {
                let expect = if h == l && out == h { 1 } else { 0 };
                assert_eq!(block.get(out, h * 2 + l), Q.from_i64(expect));
            }
        }
    }
}

#[test]
fn noncommutative_and_noncocommutative_bases() {
    let s3 = kg(Q, &GroupTable::symmetric3());
    let reg = regular_yd(s3.clone()).unwrap();
    yd_bidifferential(&s3, &reg, 3).unwrap();
    let d = Arc::new(dual_bialgebra(&s3));
    let dreg = dual_yd(&reg);
    assert_eq!(*dreg.base, *d);
    yd_bidifferential(&d, &dreg, 3).unwrap();
    for line in 1..=4 {
        two_sided_complex(&s3, &reg, &unit_yd(s3.clone()), line, 2).unwrap();
        two_sided_complex(&d, &dreg, &dreg, line, 2).unwrap();
    }
}

#[test]
fn all_table_lines_hold_on_kz2() {
    let b = kz2();
    let m = regular_yd(b.clone()).unwrap();
    let n = trivial_yd(b.clone(), 1);
    for line in 1..=4 {
        let c = two_sided_complex(&b, &m, &n, line, 4).unwrap();
        assert!(verify_bicomplex(&c).passed());
    }
    assert!(two_sided_complex(&b, &m, &n, 5, 2).is_err());
}

#[test]
fn second_line_with_trivial_coefficients_is_the_negated_swap() {
    for b in [kz2(), kg(Q, &GroupTable::symmetric3())] {
        let m = regular_yd(b.clone()).unwrap();
        let bound = if b.dim() == 2 { 4 } else { 2 };
        let yd = yd_bidifferential(&b, &m, bound).unwrap();
        let t2 = two_sided_complex(&b, &m, &unit_yd(b.clone()), 2, bound).unwrap();
        assert_eq!(yd.groups.len(), t2.groups.len());
        for (key, block) in &t2.d {
            assert_eq!(block, &yd.d_prime[key].neg(), "{key:?}");
        }
        for (key, block) in &t2.d_prime {
            assert_eq!(block, &yd.d[key].neg(), "{key:?}");
        }
        assert_eq!(t2.d.len(), yd.d_prime.len());
        assert_eq!(t2.d_prime.len(), yd.d.len());
    }
}

fn generic_matches_yd(b: &Arc<Bialgebra>, m: &YdModule, bound: usize) {
    let s = build_yd_system(b, std::slice::from_ref(m)).unwrap();
    let (eps_h, eps_hd) = eps_characters(b, &s).unwrap();
    let g = generic_differentials(&s, &eps_hd, &eps_h, bound + 1).unwrap();
    let yd = yd_bidifferential(b, m, bound).unwrap();
    let word = |n: usize, m: usize| g.group_index(&[n, 1, m]).unwrap();
    let zero = |r, c| SparseMatrix::zeros(b.field(), r, c);
    for group in &yd.groups {
        let (n, mm) = (group.multidegree[0], group.multidegree[1]);
        let src_y = yd.group_index(&[n, mm]).unwrap();
        if mm > 0 {
            let tgt_y = yd.group_index(&[n, mm - 1]).unwrap();
            let expect = yd.d.get(&(src_y, tgt_y)).cloned();
            let got = g.d.get(&(word(n, mm), word(n, mm - 1))).cloned();
            let dims = (yd.groups[tgt_y].dim(), group.dim());
            assert_eq!(got.unwrap_or(zero(dims.0, dims.1)), expect.unwrap_or(zero(dims.0, dims.1)), "d at ({n},{mm})");
        }
        if n > 0 {
            let tgt_y = yd.group_index(&[n - 1, mm]).unwrap();
            let expect = yd.d_prime.get(&(src_y, tgt_y)).cloned();
            let got = g.d_prime.get(&(word(n, mm), word(n - 1, mm))).cloned();
            let dims = (yd.groups[tgt_y].dim(), group.dim());
            assert_eq!(got.unwrap_or(zero(dims.0, dims.1)), expect.unwrap_or(zero(dims.0, dims.1)), "d′ at ({n},{mm})");
        }
        // no other target among single-M words
        let others = g.d.keys().chain(g.d_prime.keys()).filter(|(s, _)| *s == word(n, mm)).count();
        assert_eq!(others, usize::from(mm > 0) + usize::from(n > 0));
    }
}

#[test]
fn generic_engine_equals_explicit_formulas() {
    let b = kz2();
    generic_matches_yd(&b, &regular_yd(b.clone()).unwrap(), 3);
    generic_matches_yd(&b, &trivial_yd(b.clone(), 2), 3);
    let s3 = kg(Q, &GroupTable::symmetric3());
    generic_matches_yd(&s3, &regular_yd(s3.clone()).unwrap(), 2);
    let d = Arc::new(dual_bialgebra(&s3));
    generic_matches_yd(&d, &dual_yd(&regular_yd(s3.clone()).unwrap()), 2);
}

#[test]
fn epsilon_characters_and_combinations() {
    let b = kz2();
    let s = build_yd_system(&b, &[regular_yd(b.clone()).unwrap()]).unwrap();
    let (eps_h, eps_hd) = eps_characters(&b, &s).unwrap();
    assert!(check_character(&s, &eps_h).unwrap().passed());
    assert!(check_character(&s, &eps_hd).unwrap().passed());
    let g = generic_differentials(&s, &eps_hd, &eps_h, 4).unwrap();
    for (a, c) in [(1, 0), (0, 1), (1, 1), (2, -3)] {
        let comb = g.combination(a, c);
        let rep = verify_bicomplex(&comb);
        assert!(identity_summary(&rep)[0], "({a},{c})");
    }
    // the indicator of the identity element is not multiplicative
    let indicator =
        LinMap::from_fn(Q, vec![b.space.clone()], vec![], |h| if h[0] == 0 { vec![(vec![], Q.one())] } else { vec![] });
    let indicator_char = BraidedCharacter::supported_on(&s, &[(0, indicator)]).unwrap();
    let rep = check_character(&s, &indicator_char).unwrap();
    let bad: Vec<&str> = rep.failures().map(|c| c.name.as_str()).collect();
    assert_eq!(bad, ["character (0,0)"]);
    assert!(generic_differentials(&s, &indicator_char, &eps_h, 2).is_err());
}

#[test]
fn sign_flip_breaks_anticommutation() {
    let b = kz2();
    let m = regular_yd(b.clone()).unwrap();
    let mut c = two_sided_complex(&b, &m, &trivial_yd(b.clone(), 1), 4, 3).unwrap();
    let key = *c.d_prime.keys().find(|&&(s, _)| c.groups[s].multidegree == [1, 1]).unwrap();
    let flipped = c.d_prime[&key].neg();
    c.d_prime.insert(key, flipped);
    let rep = verify_bicomplex(&c);
    let [dd, dpdp, anti] = identity_summary(&rep);
    assert!(dd && dpdp && !anti);
    let witness = rep.failures().next().unwrap();
    assert!(witness.name.starts_with("d∘d′ + d′∘d = 0 on H^2⊗M⊗H*^1"), "{}", witness.name);
}

#[test]
fn bar_cobar_over_the_ground_field() {
    let k = kg(Q, &GroupTable::cyclic(1).unwrap());
    let u = unit_yd(k.clone());
    let c = two_sided_complex(&k, &u, &u, 1, 5).unwrap();
    for deg in 0..=5 {
        assert_eq!(c.chain_dim(deg), deg + 1);
    }
    // along each row the bar differential alternates 0, −1, 0, −1, …, so only
    // H^0⊗M⊗H*^m survives for d
    let rep = homology(&c, Which::D, false).unwrap();
    for deg in 0..5 {
        assert_eq!(rep.homology_dim_at(deg).unwrap(), 1);
    }
    assert!(rep.euler_holds);
    let co = homology(&c, Which::D, true).unwrap();
    assert_eq!(
        co.rows.iter().map(|r| r.homology_dim).collect::<Vec<_>>(),
        rep.rows.iter().map(|r| r.homology_dim).collect::<Vec<_>>()
    );
}

#[test]
fn line_four_homology_on_kz2() {
    let b = kz2();
    let m = regular_yd(b.clone()).unwrap();
    let c = two_sided_complex(&b, &m, &trivial_yd(b.clone(), 1), 4, 4).unwrap();
    let rep = homology(&c, Which::Total, false).unwrap();
    for k in 1..=4 {
        let mat = c.degree_matrix(Which::Total, k);
        assert_eq!(mat.rank(), dense_rank(&mat));
        assert_eq!(rep.rows[k].rank_total, dense_rank(&mat));
    }
    assert!(rep.euler_holds);
    assert_eq!(rep.identities, [true; 3]);
    let dims: Vec<usize> = (0..4).map(|k| rep.homology_dim_at(k).unwrap()).collect();
    assert_eq!(dims, LINE4_KZ2_TOTAL);
}

/// Total homology of line 4 for `kℤ/2`, `M` regular, `N` trivial, in degrees
/// 0..=3 at truncation 4.
const LINE4_KZ2_TOTAL: [usize; 4] = [1, 0, 0, 0];

fn conjugated(m: &YdModule, seed: u64) -> YdModule {
    let f = m.field();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let (p, p_inv) = loop {
        let dense: Vec<Vec<Scalar>> =
            (0..m.dim()).map(|_| (0..m.dim()).map(|_| f.random(&mut rng)).collect()).collect();
        let p = SparseMatrix::from_dense(f, &dense);
        if let Some(inv) = p.inverse() {
            let wrap = |x| LinMap::new(vec![m.space.clone()], vec![m.space.clone()], x).unwrap();
            break (wrap(p), wrap(inv));
        }
    };
    let h = m.base.id();
    let lambda = p.compose(&m.lambda.compose(&h.tensor(&p_inv)).unwrap()).unwrap();
    let delta = p.tensor(&h).compose(&m.delta.compose(&p_inv).unwrap()).unwrap();
    YdModule::new(m.base.clone(), m.space.clone(), lambda, delta).unwrap()
}

#[test]
fn homology_is_basis_independent() {
    let b = kg(Field::Prime(5), &GroupTable::cyclic(2).unwrap());
    let m = regular_yd(b.clone()).unwrap();
    let n = trivial_yd(b.clone(), 1);
    let table = |m: &YdModule| {
        let c = two_sided_complex(&b, m, &n, 4, 3).unwrap();
        let r = homology(&c, Which::Total, false).unwrap();
        r.rows.iter().map(|x| (x.chain_dim, x.rank_total, x.homology_dim)).collect::<Vec<_>>()
    };
    let base = table(&m);
    for seed in 0..3 {
        let m2 = conjugated(&m, seed);
        assert_ne!(m2.delta, m.delta);
        assert_eq!(table(&m2), base);
    }
}

#[test]
fn pi_maps_commute_and_detect_perturbation() {
    let b = kz2();
    let m = regular_yd(b.clone()).unwrap();
    let n = trivial_yd(b.clone(), 1);
    let rep = pi_commutation_suite(&b, &m, &n, 3).unwrap();
    assert_eq!(rep.checks.len(), 6);
    assert!(rep.passed(), "{rep}");
    let mut p = PiMaps::build(&b, &m, &n, 3).unwrap();
    let block = p.maps[2].get_mut(&(1, 1)).unwrap();
    let mut perturbed = block.clone();
    perturbed.add_block(0, 0, &SparseMatrix::identity(Q, 1));
    *block = perturbed;
    assert!(!pi_commutation(&p).passed());

    let s3 = kg(Q, &GroupTable::symmetric3());
    let reg = regular_yd(s3.clone()).unwrap();
    assert!(pi_commutation_suite(&s3, &reg, &reg, 2).unwrap().passed());
}
