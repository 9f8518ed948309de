use std::sync::Arc;

use proptest::prelude::*;
use ydbraid_core::braided::{build_yd_system, glue, verify_cybe};
use ydbraid_core::homology::{homology, two_sided_complex, verify_bicomplex, Which};
use ydbraid_core::hopf::{check_bialgebra, dual_bialgebra, group_algebra, GroupTable, Level};
use ydbraid_core::linalg::Field;
use ydbraid_core::yd::{check_yd, dual_yd, regular_yd, tensor_yd, trivial_yd, Flavor, YdLevel};

fn field() -> impl Strategy<Value = Field> {
    prop_oneof![Just(Field::Rational), Just(Field::Prime(2)), Just(Field::Prime(3)), Just(Field::Prime(7))]
}

fn group() -> impl Strategy<Value = GroupTable> {
    prop_oneof![(1usize..6).prop_map(|n| GroupTable::cyclic(n).unwrap()), Just(GroupTable::symmetric3()),]
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(12))]

    #[test]
    fn group_algebras_and_their_duals_are_hopf(f in field(), g in group()) {
        let b = group_algebra(f, &g).unwrap();
        prop_assert!(check_bialgebra(&b, Level::Hopf).passed());
        let d = dual_bialgebra(&b);
        prop_assert!(check_bialgebra(&d, Level::Hopf).passed());
        prop_assert_eq!(dual_bialgebra(&d), b);
    }

    #[test]
    fn regular_and_dual_modules_are_yd(f in field(), g in group()) {
        let b = Arc::new(group_algebra(f, &g).unwrap());
        let m = regular_yd(b).unwrap();
        prop_assert!(check_yd(&m, YdLevel::Yd).passed());
        prop_assert!(check_yd(&dual_yd(&m), YdLevel::Yd).passed());
    }

    #[test]
    fn assembled_systems_satisfy_every_instance(f in field(), n in 1usize..4, extra in 0usize..3) {
        let b = Arc::new(group_algebra(f, &GroupTable::cyclic(n).unwrap()).unwrap());
        let m = regular_yd(b.clone()).unwrap();
        let t = trivial_yd(b.clone(), extra + 1);
        let s = build_yd_system(&b, &[m.clone(), t.clone()]).unwrap();
        let rep = verify_cybe(&s);
        prop_assert_eq!(rep.checks.len(), 20);
        prop_assert!(rep.passed());
        let glued = glue(&s, 1, 2).unwrap();
        let direct = build_yd_system(&b, &[tensor_yd(&m, &t, Flavor::Twisted).unwrap()]).unwrap();
        prop_assert_eq!(glued.sigma(0, 1).matrix(), direct.sigma(0, 1).matrix());
    }

    #[test]
    fn table_lines_are_bicomplexes_with_euler(f in field(), line in 1u8..5, bound in 1usize..4, cohomology: bool) {
        let b = Arc::new(group_algebra(f, &GroupTable::cyclic(2).unwrap()).unwrap());
        let m = regular_yd(b.clone()).unwrap();
        let n = trivial_yd(b.clone(), 1);
        let c = two_sided_complex(&b, &m, &n, line, bound).unwrap();
        prop_assert!(verify_bicomplex(&c).passed());
        for which in [Which::D, Which::DPrime, Which::Total] {
            let r = homology(&c, which, cohomology).unwrap();
            prop_assert!(r.euler_holds);
            prop_assert!(r.homology_dim_at(bound).is_err());
        }
    }
}
