use lineal::combid::*;
use lineal::exactalg::{Poly, RatFun};
use lineal::orbit::DEFAULT_WORK_BUDGET;
use lineal::treegen::{build_branching, gf_class, verify_tree};
use num_bigint::BigInt;
use num_traits::{One, Zero};

/// Set partitions of `{0..n}` counted by block number, via restricted
/// growth strings.
fn set_partitions_by_blocks(n: usize) -> Vec<u64> {
    fn rec(pos: usize, n: usize, max: usize, out: &mut [u64]) {
        if pos == n {
            out[max] += 1;
            return;
        }
        for b in 0..=max {
            rec(pos + 1, n, if b == max { max + 1 } else { max }, out);
        }
    }
    let mut out = vec![0; n + 1];
    if n == 0 {
        out[0] = 1;
    } else {
        rec(0, n, 0, &mut out);
    }
    out
}

/// `prod_{k<i} (q^{n-k} - 1) / (q^{k+1} - 1)`
fn gaussian_product(n: usize, i: usize, q: u64) -> BigInt {
    if i > n {
        return BigInt::zero();
    }
    let q = BigInt::from(q);
    let mut num = BigInt::one();
    let mut den = BigInt::one();
    for k in 0..i {
        num *= q.pow((n - k) as u32) - 1;
        den *= q.pow((k + 1) as u32) - 1;
    }
    num / den
}

fn binomial(n: usize, k: usize) -> BigInt {
    (0..k).fold(BigInt::one(), |acc, j| acc * (n - j) / (j + 1))
}

fn point_printed(m: usize) -> RatFun {
    (0..=m)
        .map(|i| {
            (0..=i as u64).fold(RatFun::one(), |acc, r| {
                &acc * &RatFun::new(Poly::from_i64s(&[0, 1]), Poly::from_i64s(&[1, -(r as i64)])).unwrap()
            })
        })
        .sum()
}

fn gaussian_display_printed(q: u64, i: usize) -> RatFun {
    let qi = BigInt::from(q).pow(i as u32);
    (0..=i).fold(RatFun::one(), |acc, _| &acc * &RatFun::geometric(qi.clone())).shift(i)
}

#[test]
fn subspace_count_equals_q_stirling() {
    for q in [2u64, 3, 4] {
        let table = gaussian_table(12, q);
        for n in 0..=12 {
            let row = q_stirling_row(n, q).unwrap();
            for i in 0..=n {
                assert_eq!(row[i], table[n][i], "q={q} n={n} i={i}");
                assert_eq!(row[i], gaussian_product(n, i, q), "q={q} n={n} i={i}");
            }
        }
    }
}

#[test]
fn gaussian_binomials_match_subspace_enumeration() {
    for (q, n_max) in [(2u64, 4usize), (3, 3)] {
        for n in 0..=n_max {
            let mut by_dim = vec![0u64; n + 1];
            for s in subspaces(q, n).unwrap() {
                by_dim[(s.len() as f64).log(q as f64).round() as usize] += 1;
            }
            for i in 0..=n {
                assert_eq!(gaussian_binom(n, i, q), BigInt::from(by_dim[i]), "q={q} n={n} i={i}");
            }
            assert_eq!(q_bell(n, q).unwrap(), BigInt::from(by_dim.iter().sum::<u64>()));
        }
    }
}

#[test]
fn q_one_gives_pascal() {
    let t = gaussian_table(12, 1);
    for n in 0..=12 {
        for i in 0..=n {
            assert_eq!(t[n][i], binomial(n, i));
        }
    }
}

#[test]
fn stirling_and_bell_match_set_partitions() {
    let table = stirling2_table(8);
    for n in 0..=8 {
        let blocks = set_partitions_by_blocks(n);
        for i in 0..=n {
            assert_eq!(table[n][i], BigInt::from(blocks[i]), "n={n} i={i}");
            assert_eq!(point_type_gf(i).series(n).unwrap()[n], table[n][i]);
        }
        assert_eq!(bell(n), BigInt::from(blocks.iter().sum::<u64>()));
    }
}

#[test]
fn stable_totals_are_bell_and_galois_numbers() {
    for n in 0..=8 {
        let m = n.max(1);
        assert_eq!(point_config_gf(m).unwrap().series(n).unwrap()[n], bell(n));
        for q in [2, 3] {
            assert_eq!(vector_config_gf(q, m).unwrap().series(n).unwrap()[n], q_bell(n, q).unwrap());
        }
    }
    assert_eq!(bell(3), BigInt::from(5));
}

#[test]
fn class_gfs_have_product_form() {
    for m in 0..=5 {
        let bm = build_branching(&mut point_config_process(m)).unwrap();
        let vb = build_branching(&mut vector_config_process(3, m).unwrap()).unwrap();
        for i in 0..=m {
            let j = bm.index_of(&TypeIndex(i).key()).unwrap();
            assert_eq!(gf_class(&bm, j).unwrap(), point_type_gf(i), "m={m} i={i}");
            let j = vb.index_of(&TypeIndex(i).key()).unwrap();
            assert_eq!(gf_class(&vb, j).unwrap(), vector_type_gf(3, i), "m={m} i={i}");
        }
        let sum: RatFun = (0..=m).map(point_type_gf).sum();
        assert_eq!(point_config_gf(m).unwrap(), sum);
        let sum: RatFun = (0..=m).map(|i| vector_type_gf(2, i)).sum();
        assert_eq!(vector_config_gf(2, m).unwrap(), sum);
    }
}

#[test]
fn printed_point_formula_has_an_extra_factor_of_t() {
    for m in 1..=4 {
        let printed = point_printed(m);
        let engine = point_config_gf(m).unwrap();
        assert_ne!(printed, engine);
        let s = printed.series(6).unwrap();
        assert_eq!(s[0], BigInt::zero());
        assert_eq!(printed, engine.shift(1));
    }
}

#[test]
fn gaussian_display_needs_running_exponent() {
    for q in [2, 3] {
        assert_eq!(gaussian_display_printed(q, 0), vector_type_gf(q, 0));
        for i in 1..=3 {
            assert_ne!(gaussian_display_printed(q, i), vector_type_gf(q, i));
            let s = vector_type_gf(q, i).series(8).unwrap();
            for (n, c) in s.iter().enumerate() {
                assert_eq!(*c, gaussian_binom(n, i, q));
            }
        }
    }
}

#[test]
fn oracle_counts_match_series() {
    for m in 0..=4 {
        let s = point_config_gf(m).unwrap().series(5).unwrap();
        for (n, c) in s.iter().enumerate() {
            let o = config_orbit_oracle(ConfigKind::Point, m, n, DEFAULT_WORK_BUDGET).unwrap();
            assert_eq!(*c, BigInt::from(o.total), "m={m} n={n}");
            for (i, &k) in o.by_type.iter().enumerate() {
                assert_eq!(BigInt::from(k), stirling2(n, i), "m={m} n={n} i={i}");
            }
        }
    }
    for (q, m, depth) in [(2u64, 1usize, 4usize), (2, 2, 4), (2, 3, 3), (3, 2, 3), (4, 1, 3)] {
        let s = vector_config_gf(q, m).unwrap().series(depth).unwrap();
        for (n, c) in s.iter().enumerate() {
            let o = config_orbit_oracle(ConfigKind::Vector { q }, m, n, DEFAULT_WORK_BUDGET).unwrap();
            assert_eq!(*c, BigInt::from(o.total), "q={q} m={m} n={n}");
            for (i, &k) in o.by_type.iter().enumerate() {
                assert_eq!(BigInt::from(k), gaussian_binom(n, i, q), "q={q} m={m} n={n} i={i}");
            }
        }
    }
}

#[test]
fn row_space_bijection() {
    for m in 1..=3 {
        for n in 1..=3 {
            assert!(row_space_bijection_check(2, m, n, DEFAULT_WORK_BUDGET).unwrap(), "m={m} n={n}");
        }
    }
    assert!(row_space_bijection_check(3, 2, 2, DEFAULT_WORK_BUDGET).unwrap());
}

#[test]
fn chains_self_consistent() {
    for m in 0..=6 {
        assert!(verify_tree(&mut point_config_process(m), 10).unwrap());
        for q in [2, 3, 4] {
            assert!(verify_tree(&mut vector_config_process(q, m).unwrap(), 10).unwrap());
        }
    }
}
