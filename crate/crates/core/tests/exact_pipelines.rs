mod common;

use common::*;
use mme_core::*;
use num_traits::Zero;
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

#[test]
fn backends_agree_on_integers() {
    let mut rng = ChaCha8Rng::seed_from_u64(21);
    for _ in 0..30 {
        let (d, m) = (rng.gen_range(2..=4), rng.gen_range(1..=3));
        let f = DensePolynomial::from_fn(m, d, |_| rand_int(&mut rng, 20)).unwrap();
        let pts: Vec<Vec<BigInt>> = (0..10).map(|_| (0..m).map(|_| rand_int(&mut rng, 20)).collect()).collect();
        let inst = IntMmeInstance::new(f.clone(), pts.clone(), naive_output_bound(d, m, 20)).unwrap();
        let horner = mme_integers(&inst, &HornerBackend).unwrap();
        let mono = mme_integers(&inst, &MonomialSumBackend).unwrap();
        let by_name = mme_integers(&inst, &"monomial".parse::<Backend>().unwrap()).unwrap();
        assert_eq!(horner, mono);
        assert_eq!(mono, by_name);
        let expect: Vec<BigInt> = pts.iter().map(|a| eval_int(&f, a)).collect();
        assert_eq!(horner, expect);
    }
}

#[test]
fn tight_bound_is_enough() {
    // x^2 y at (-7, -5): -245 fits in 8 bits
    let f = DensePolynomial::from_fn(2, 3, |e| BigInt::from(i32::from(e == [2, 1]))).unwrap();
    let inst = IntMmeInstance::new(f, vec![vec![(-7).into(), (-5).into()]], 8).unwrap();
    assert_eq!(mme_integers(&inst, &HornerBackend).unwrap(), vec![BigInt::from(-245)]);
}

#[test]
fn empty_point_set() {
    let f = DensePolynomial::new(1, 3, vec![BigInt::from(1); 3]).unwrap();
    let inst = IntMmeInstance::new(f, Vec::new(), 4).unwrap();
    assert!(mme_integers(&inst, &HornerBackend).unwrap().is_empty());
}

#[test]
fn large_prime_field() {
    let p = (1u64 << 61) - 1;
    let mut rng = ChaCha8Rng::seed_from_u64(22);
    let f = DensePolynomial::from_fn(2, 3, |_| rng.gen_range(0..p)).unwrap();
    let pts: Vec<Vec<u64>> = (0..5).map(|_| vec![rng.gen_range(0..p), p - 1]).collect();
    let got = mme_prime_field(&f, &pts, p, &HornerBackend).unwrap();
    let expect: Vec<u64> = pts.iter().map(|a| eval_mod(&f, a, p)).collect();
    assert_eq!(got, expect);
}

#[test]
fn auto_rewrite_for_high_degree() {
    // d = 300, m = 1 triggers the automatic rewrite
    assert!(small_m_rewrite(300, 1, KroneckerMode::Auto).is_some());
    let p = 1_000_003u64;
    let mut rng = ChaCha8Rng::seed_from_u64(23);
    let f = DensePolynomial::from_fn(1, 300, |_| rng.gen_range(0..p)).unwrap();
    let pts: Vec<Vec<u64>> = (0..6).map(|_| vec![rng.gen_range(0..p)]).collect();
    for mode in [KroneckerMode::Auto, KroneckerMode::Never] {
        let got = mme_prime_field_with(&f, &pts, p, &MonomialSumBackend, &MmeOptions::with_kronecker(mode)).unwrap();
        let expect: Vec<u64> = pts.iter().map(|a| eval_mod(&f, a, p)).collect();
        assert_eq!(got, expect, "{mode:?}");
    }
}

#[test]
fn kronecker_round_trip_and_evaluation_identity() {
    let mut rng = ChaCha8Rng::seed_from_u64(24);
    for _ in 0..20 {
        let (d, m, c): (usize, usize, usize) = (rng.gen_range(2..=4), rng.gen_range(1..=3), rng.gen_range(1..=2));
        let big_d = d.pow(m as u32);
        let f = DensePolynomial::from_fn(c, big_d, |_| rand_int(&mut rng, 10)).unwrap();
        let g = inverse_kronecker(&f, d, m).unwrap();
        assert_eq!(g.num_vars(), c * m);
        assert_eq!(g.degree_bound(), d);
        assert_eq!(forward_kronecker(&g, d, m).unwrap(), f);
        let a: Vec<BigInt> = (0..c).map(|_| rand_int(&mut rng, 6)).collect();
        let psi = psi_points(&a, d, m, |x, y| x * y);
        assert_eq!(eval_int(&f, &a), eval_int(&g, &psi));
    }
}

#[test]
fn forward_kronecker_sums_collisions() {
    // x_{1,0}^2 and x_{1,1} both map to y^2 when d = 2
    let g = DensePolynomial::from_fn(2, 3, |e| match e {
        [2, 0] => BigInt::from(3),
        [0, 1] => BigInt::from(4),
        _ => BigInt::zero(),
    })
    .unwrap();
    let f = forward_kronecker(&g, 2, 2).unwrap();
    assert_eq!(f.degree_bound(), 7);
    assert_eq!(f.coeff(&[2]), &BigInt::from(7));
}

#[test]
fn gaussian_prime_field_pipeline() {
    let mut rng = ChaCha8Rng::seed_from_u64(25);
    let f = DensePolynomial::from_fn(2, 3, |_| GaussianInt::new(rand_int(&mut rng, 12), rand_int(&mut rng, 12))).unwrap();
    let pts: Vec<Vec<GaussianInt>> = (0..8)
        .map(|_| (0..2).map(|_| GaussianInt::new(rand_int(&mut rng, 12), rand_int(&mut rng, 12))).collect())
        .collect();
    let got = mme_gaussian_integers(&f, &pts, 120, &HornerBackend, &MmeOptions::default()).unwrap();
    for (a, z) in pts.iter().zip(&got) {
        let expect = f.terms().fold(GaussianInt::default(), |acc, (e, c)| {
            let term = e.iter().zip(a).fold(c.clone(), |t, (&k, x)| (0..k).fold(t, |t, _| t.mul(x)));
            acc.add(&term)
        });
        assert_eq!(&expect, z);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn crt_roundtrip(x in any::<i128>(), count in 1usize..40) {
        let basis = CrtBasis::new(first_k_primes(count + 40)[40..].to_vec()).unwrap();
        let x = BigInt::from(x);
        let half_m = basis.modulus() / 2u32;
        prop_assume!(x.magnitude() < half_m.magnitude());
        prop_assert_eq!(crt_reconstruct_signed(&crt_reduce(&x, &basis), &basis).unwrap(), x);
    }

    #[test]
    fn sieve_matches_trial_division(n in 2u64..3000) {
        let expect: Vec<u64> = (2..n).filter(|&k| trial_division(k)).collect();
        prop_assert_eq!(prime_sieve(n).unwrap(), expect);
    }
}
