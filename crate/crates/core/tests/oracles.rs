mod common;

use common::*;
use num_bigint::BigInt;
use num_rational::BigRational;
use proptest::prelude::*;

use springer_core::groups::{in_group, in_lie_algebra, GroupKind, GroupSpec, NilpotentSampler};
use springer_core::matrix::{centralizer_space, jordan_type, nilpotent_order, unipotent_order};
use springer_core::parabolic::{Composition, ParabolicGL};
use springer_core::rng;
use springer_core::series::{ah_coeffs_mod_p, ah_inverse_coeffs, ah_rational_coeffs};
use springer_core::springer::{ah_exp, ah_log, bch, bch_dynkin, witt_embed};
use springer_core::witt::{witt_add, witt_from_integer, witt_neg, WittVector};
use springer_core::{Field, FpMatrix};

fn to_naive(m: &FpMatrix) -> Naive {
    (0..m.n())
        .map(|i| (0..m.n()).map(|j| m.get(i, j).coords()[0] as u64).collect())
        .collect()
}

fn ratio(a: i64, b: i64) -> BigRational {
    BigRational::new(BigInt::from(a), BigInt::from(b))
}

#[test]
fn ah_rational_matches_product_formula() {
    for p in [2u32, 3, 5, 7] {
        let ours = ah_rational_coeffs(p, 40).unwrap();
        let oracle = ah_by_product(p as u64, 40);
        assert_eq!(ours.coeffs(), &oracle[..], "p = {p}");
        assert!(oracle.iter().all(|c| is_p_free(c, p as u64)));
    }
}

#[test]
fn ah_frozen_values() {
    let c = ah_rational_coeffs(2, 5).unwrap();
    let expected = [ratio(1, 1), ratio(1, 1), ratio(1, 1), ratio(2, 3), ratio(2, 3), ratio(7, 15)];
    assert_eq!(c.coeffs(), &expected);
    assert_eq!(ah_rational_coeffs(3, 2).unwrap().coeffs(), &[ratio(1, 1), ratio(1, 1), ratio(1, 2)]);
    assert_eq!(ah_coeffs_mod_p(3, 3).unwrap().to_ints(), vec![1, 1, 2, 2]);
    assert_eq!(ah_coeffs_mod_p(2, 5).unwrap().to_ints(), vec![1, 1, 1, 0, 0, 1]);
}

#[test]
fn ah_mod_p_matches_reduced_oracle() {
    for p in [2u32, 3, 5, 7] {
        let ours = ah_coeffs_mod_p(p, 50).unwrap().to_ints();
        let oracle: Vec<u32> = ah_by_product(p as u64, 50)
            .iter()
            .map(|c| reduce(c, p as u64) as u32)
            .collect();
        assert_eq!(ours, oracle);
    }
}

#[test]
fn inverse_series_times_series_is_one() {
    for p in [2u32, 3, 5] {
        let e = ah_by_product(p as u64, 30);
        let f = ah_inverse_coeffs(p, 30).unwrap().to_ints();
        for k in 0..=30 {
            let s: u64 = (0..=k).map(|i| reduce(&e[i], p as u64) * f[k - i] as u64).sum::<u64>() % p as u64;
            assert_eq!(s, u64::from(k == 0), "p = {p}, degree {k}");
        }
    }
}

#[test]
fn witt_matches_teichmuller_oracle() {
    for (p, m) in [(2u32, 1usize), (2, 2), (2, 3), (3, 2), (3, 3), (5, 2)] {
        let field = Field::prime(p).unwrap();
        let vectors = WittVector::enumerate(field, m).unwrap();
        let value = |w: &WittVector| {
            let e: Vec<u64> = w.entries().iter().map(|x| x.coords()[0] as u64).collect();
            witt_to_integer(p as u64, &e)
        };
        let modulus = (p as u64).pow(m as u32);
        let mut seen = std::collections::HashSet::new();
        for a in &vectors {
            assert!(seen.insert(value(a)), "Teichmüller map not injective");
            assert_eq!((value(a) + value(&witt_neg(a).unwrap())) % modulus, 0);
            for b in &vectors {
                let s = witt_add(a, b).unwrap();
                assert_eq!(value(&s), (value(a) + value(b)) % modulus, "p={p} {a} + {b}");
            }
        }
        for k in 0..modulus as i64 {
            assert_eq!(value(&witt_from_integer(field, m, k).unwrap()), k as u64);
        }
    }
}

#[test]
fn witt_frozen_values() {
    let f2 = Field::prime(2).unwrap();
    let one = WittVector::from_ints(f2, &[1, 0]).unwrap();
    assert_eq!(witt_add(&one, &one).unwrap().to_string(), "0,1");
    let f3 = Field::prime(3).unwrap();
    // −1 ≡ 8 mod 9 and the Teichmüller lift of 2 is 2^3 = 8
    assert_eq!(witt_from_integer(f3, 2, -1).unwrap().to_string(), "2,0");
}

#[test]
fn ah_exp_matches_naive_oracle() {
    let mut r = rng::seeded(7);
    for p in [2u32, 3, 5] {
        for n in 2..=6 {
            let spec = GroupSpec::new(GroupKind::Gl, n, Field::prime(p).unwrap()).unwrap();
            let s = NilpotentSampler::new(spec).unwrap();
            for _ in 0..20 {
                let x = s.sample(&mut r);
                let u = ah_exp(&x).unwrap();
                assert_eq!(to_naive(&u), naive_ah_exp(&to_naive(&x), p as u64));
                let m = nilpotent_order(&x).unwrap();
                assert_eq!(naive_order(&to_naive(&u), p as u64), (p as u64).pow(m));
                assert_eq!(unipotent_order(&u).unwrap(), (p as u64).pow(m));
            }
        }
    }
}

#[test]
fn ah_exp_frozen_values() {
    let f2 = Field::prime(2).unwrap();
    let j3 = FpMatrix::from_ints(f2, &[vec![0, 1, 0], vec![0, 0, 1], vec![0, 0, 0]]).unwrap();
    let u = ah_exp(&j3).unwrap();
    assert_eq!(u, FpMatrix::from_ints(f2, &[vec![1, 1, 1], vec![0, 1, 1], vec![0, 0, 1]]).unwrap());
    let sq = FpMatrix::from_ints(f2, &[vec![1, 0, 1], vec![0, 1, 0], vec![0, 0, 1]]).unwrap();
    assert_eq!(u.pow(2), sq);
    assert_eq!(ah_exp(&j3.pow(2)).unwrap(), sq);
    assert_eq!(ah_log(&u).unwrap(), j3);
    let w = WittVector::from_ints(f2, &[0, 1]).unwrap();
    assert_eq!(witt_embed(&j3, &w).unwrap(), sq);
}

#[test]
fn centralizer_matches_brute_force() {
    let f3 = Field::prime(3).unwrap();
    let all: Vec<FpMatrix> = (0..81u32)
        .map(|mut k| {
            let rows: Vec<Vec<i64>> = (0..2)
                .map(|_| {
                    (0..2)
                        .map(|_| {
                            let v = (k % 3) as i64;
                            k /= 3;
                            v
                        })
                        .collect()
                })
                .collect();
            FpMatrix::from_ints(f3, &rows).unwrap()
        })
        .collect();
    for x in all.iter().filter(|m| m.is_nilpotent()) {
        let space = centralizer_space(x);
        let members = all.iter().filter(|z| z.commutes_with(x)).count();
        assert_eq!(members as u64, 3u64.pow(space.dimension as u32));
        for z in &all {
            assert_eq!(space.contains(z), z.commutes_with(x));
        }
    }
}

#[test]
fn bch_degree_two_frozen() {
    let f5 = Field::prime(5).unwrap();
    let x = FpMatrix::from_ints(f5, &[vec![0, 1, 3], vec![0, 0, 2], vec![0, 0, 0]]).unwrap();
    let y = FpMatrix::from_ints(f5, &[vec![0, 4, 1], vec![0, 0, 1], vec![0, 0, 0]]).unwrap();
    let half = f5.from_int(3); // 1/2 mod 5
    let expected = &(&x + &y) + &x.commutator(&y).scale(half);
    assert_eq!(bch(&x, &y).unwrap(), expected);
    assert_eq!(bch_dynkin(&x, &y, 2).unwrap(), expected);
    assert_eq!(bch_dynkin(&x, &y, 1).unwrap(), &x + &y);
}

#[test]
fn sampled_types_cover_orbits() {
    let spec = GroupSpec::new(GroupKind::Gl, 4, Field::prime(3).unwrap()).unwrap();
    let s = NilpotentSampler::new(spec).unwrap();
    let mut r = rng::seeded(3);
    let types: std::collections::BTreeSet<_> = (0..300).map(|_| jordan_type(&s.sample(&mut r)).unwrap()).collect();
    assert_eq!(types.len(), 5, "every partition of 4 should occur: {types:?}");
}

fn arb_config() -> impl Strategy<Value = (GroupKind, usize, u32)> {
    (0usize..4, 2usize..=7, prop::sample::select(vec![3u32, 5])).prop_map(|(k, n, p)| {
        let kind = GroupKind::ALL[k];
        let n = if kind == GroupKind::Sp { n + n % 2 } else { n };
        (kind, n, p)
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn sampled_elements_stay_in_the_group((kind, n, p) in arb_config(), seed in any::<u64>()) {
        let spec = GroupSpec::new(kind, n, Field::prime(p).unwrap()).unwrap();
        let s = NilpotentSampler::new(spec.clone()).unwrap();
        let mut r = rng::seeded(seed);
        let g = s.group_element(&mut r);
        let x = s.sample(&mut r);
        prop_assert!(in_group(&spec, &g).unwrap());
        prop_assert!(in_lie_algebra(&spec, &x).unwrap());
        prop_assert!(x.is_nilpotent());
        let u = ah_exp(&x).unwrap();
        prop_assert!(in_group(&spec, &u).unwrap());
        prop_assert_eq!(ah_log(&u).unwrap(), x);
    }

    #[test]
    fn witt_law_is_associative_over_f25(seed in any::<u64>()) {
        let f = Field::new(5, 2).unwrap();
        let mut r = rng::seeded(seed);
        let a = WittVector::random(f, 3, &mut r).unwrap();
        let b = WittVector::random(f, 3, &mut r).unwrap();
        let c = WittVector::random(f, 3, &mut r).unwrap();
        let left = witt_add(&witt_add(&a, &b).unwrap(), &c).unwrap();
        let right = witt_add(&a, &witt_add(&b, &c).unwrap()).unwrap();
        prop_assert_eq!(left, right);
        prop_assert!(witt_add(&a, &witt_neg(&a).unwrap()).unwrap().is_zero());
    }

    #[test]
    fn parabolic_eps_is_a_homomorphism(blocks in prop::collection::vec(1usize..=2, 1..=3), seed in any::<u64>()) {
        let par = ParabolicGL::new(Composition::new(blocks).unwrap(), Field::prime(5).unwrap());
        let mut r = rng::seeded(seed);
        let x = par.sample_nilradical(&mut r);
        let y = par.sample_nilradical(&mut r);
        let z = bch(&x, &y).unwrap();
        prop_assert_eq!(par.eps(&z).unwrap(), &par.eps(&x).unwrap() * &par.eps(&y).unwrap());
    }

    #[test]
    fn matrix_json_round_trip(seed in any::<u64>(), n in 1usize..5, e in 1u8..=2) {
        let f = Field::new(3, e).unwrap();
        let mut r = rng::seeded(seed);
        let m = FpMatrix::from_fn(f, n, |_, _| f.random(&mut r));
        prop_assert_eq!(FpMatrix::from_json(&m.to_json()).unwrap(), m);
    }
}
