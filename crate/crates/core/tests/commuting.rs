use lineal::commclass::*;
use lineal::exactalg::{Poly, RatFun};
use lineal::grouper::named::{by_name, cyclic, dihedral, symmetric};
use lineal::orbit::DEFAULT_WORK_BUDGET;
use lineal::treegen::{self, verify_tree};
use num_bigint::BigInt;

fn linear_product(ks: &[i64]) -> Poly {
    ks.iter().fold(Poly::one(), |acc, &k| &acc * &Poly::from_i64s(&[1, -k]))
}

fn table(num: &[i64], den_ks: &[i64]) -> RatFun {
    RatFun::new(Poly::from_i64s(num), linear_product(den_ks)).unwrap()
}

#[test]
fn s4_branching_matrix_and_gf() {
    let s4 = symmetric(4).unwrap();
    let bm = commuting_branching(&s4).unwrap();
    let expected =
        [vec![1, 0, 0, 0, 0], vec![1, 4, 2, 0, 0], vec![1, 0, 2, 0, 0], vec![1, 0, 0, 3, 0], vec![1, 0, 1, 0, 4]];
    assert!(bm.equivalent_to(&expected), "{:?}", bm.matrix());
    let h = commuting_gf(&s4).unwrap();
    assert_eq!(h, table(&[1, -5, 6, -1], &[1, 2, 3, 4]));
}

#[test]
fn s5_branching_matrix_and_gf() {
    let s5 = symmetric(5).unwrap();
    let bm = commuting_branching(&s5).unwrap();
    let expected = [
        vec![1, 0, 0, 0, 0, 0, 0],
        vec![1, 2, 0, 0, 0, 0, 0],
        vec![1, 0, 2, 0, 0, 0, 0],
        vec![2, 2, 0, 6, 0, 0, 0],
        vec![1, 0, 1, 0, 4, 0, 0],
        vec![1, 0, 0, 0, 0, 5, 0],
        vec![0, 2, 2, 0, 0, 0, 4],
    ];
    assert!(bm.equivalent_to(&expected), "{:?}", bm.matrix());
    assert_eq!(commuting_gf(&s5).unwrap(), table(&[1, -11, 34, -21, 2], &[1, 2, 4, 5, 6]));
}

#[test]
fn s2_commuting_equals_burnside() {
    let s2 = symmetric(2).unwrap();
    let expected = RatFun::geometric(BigInt::from(2));
    assert_eq!(commuting_gf(&s2).unwrap(), expected);
    assert_eq!(burnside_gf(&s2), expected);
}

#[test]
fn oracle_matches_series() {
    let cases = [("S3", 4), ("S4", 3), ("S5", 2), ("C6", 4), ("D4", 4), ("A4", 3)];
    for (name, depth) in cases {
        let g = by_name(name).unwrap();
        let series = commuting_gf(&g).unwrap().series(depth).unwrap();
        for (n, coeff) in series.iter().enumerate() {
            let oracle = commuting_orbit_oracle(&g, n, DEFAULT_WORK_BUDGET).unwrap();
            assert_eq!(*coeff, BigInt::from(oracle), "{name} n={n}");
        }
    }
}

#[test]
fn commuting_bounded_by_burnside() {
    for g in [symmetric(3).unwrap(), symmetric(4).unwrap(), dihedral(4).unwrap(), by_name("A4").unwrap()] {
        let h = commuting_gf(&g).unwrap().series(5).unwrap();
        let f = burnside_gf(&g).series(5).unwrap();
        assert!(h.iter().zip(&f).all(|(a, b)| a <= b));
        let classes = BigInt::from(g.conjugacy_classes().len());
        assert_eq!(h[1], classes);
        assert_eq!(f[1], classes);
        assert_eq!(h[0], BigInt::from(1));
    }
}

#[test]
fn symmetric_partition_formula_matches_element_sum() {
    for m in 1..=5 {
        assert_eq!(symmetric_burnside_gf(m), burnside_gf(&symmetric(m).unwrap()), "m={m}");
    }
}

#[test]
fn every_commuting_process_self_consistent() {
    for g in
        [symmetric(3).unwrap(), symmetric(4).unwrap(), symmetric(5).unwrap(), cyclic(6).unwrap(), dihedral(4).unwrap()]
    {
        assert!(verify_tree(&mut commuting_process(&g), 8).unwrap());
    }
}

#[test]
fn class_graph_labels_name_centralizers() {
    let mut p = commuting_process(&symmetric(3).unwrap());
    let bm = treegen::build_branching(&mut p).unwrap();
    assert_eq!(bm.labels()[0], "order 6 non-abelian (element orders 1:1 2:3 3:2)");
    let root = p.representative(&bm.keys()[0]).unwrap();
    assert_eq!(root.order(), 6);
}
