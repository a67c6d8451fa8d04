use std::time::Instant;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use polysmooth::constructions::{
    binomial_product_construct, cubic_family, decomposition_construct, iterate_schinzel, quadratic_construct,
    trinomial_construct, verify_certificate, Binomial, Certificate, FactorExpr, QuadraticBudget, TrinomialVariant,
    VerifyMode, VerifyOptions,
};
use polysmooth::exactalg::numutil::{divisors, euler_phi};
use polysmooth::exactalg::{parse_int_poly, IntPoly, RatPoly};
use polysmooth::factorz::factor_over_z;

fn p(s: &str) -> IntPoly {
    parse_int_poly(s).unwrap()
}

fn q(n: i64, d: i64) -> BigRational {
    BigRational::new(n.into(), d.into())
}

#[test]
fn binomial_with_large_gamma_verifies_by_evaluation() {
    let start = Instant::now();
    let c = binomial_product_construct(&[Binomial::new(1, 2, 1)], 13).unwrap();
    let part = c.partition.as_ref().unwrap();
    assert_eq!(part.gamma, BigInt::from(30030));
    assert_eq!(c.total_degree(), 30030);
    assert_eq!(c.factors.len(), divisors(30030).len());
    let report = c.verified.as_ref().unwrap();
    assert_eq!(report.mode, VerifyMode::Probabilistic);
    assert!(report.passed);
    assert!(!report.conclusive, "32 points cannot certify degree 30030");
    // max degree phi(30030) = 5760
    assert_eq!(c.max_factor_degree(), 5760);
    assert_eq!(c.polysmoothness, q(5760, 30030));
    eprintln!("gamma 30030 in {:?}", start.elapsed());
}

#[test]
fn large_binomial_tampering_is_caught() {
    let mut c = binomial_product_construct(&[Binomial::new(1, 2, 1)], 13).unwrap();
    if let FactorExpr::CycloOfMonomial { coeff, .. } = &mut c.factors[3] {
        *coeff += BigRational::one();
    }
    let r = verify_certificate(&c, &VerifyOptions::default());
    assert!(!r.passed);
    assert!(r.conclusive);
    let x = r.witness.unwrap();
    assert!(!c.holds_at(&x));
}

#[test]
fn two_binomials_at_seven() {
    let c = binomial_product_construct(&[Binomial::new(1, 2, 1), Binomial::new(1, 3, 1)], 7).unwrap();
    let part = c.partition.as_ref().unwrap();
    // deg(f o g) = Gamma * sum k_j
    assert_eq!(c.total_degree(), 2 * 210);
    assert_eq!(part.gamma, BigInt::from(210));
    let probabilistic = verify_certificate(&c, &VerifyOptions::with_mode(VerifyMode::Probabilistic));
    assert!(probabilistic.passed);
    assert!(verify_certificate(&c, &VerifyOptions::with_mode(VerifyMode::Symbolic)).passed);
}

#[test]
fn quadratic_factor_degrees_are_conserved() {
    for (f, x) in [("t^2+1", 5), ("4*t^2+4*t+9", 5), ("t^2+t+1", 7), ("2*t^2+3", 7)] {
        let (seed, c) = quadratic_construct(&p(f), x, &QuadraticBudget::default()).unwrap();
        let mut degs: Vec<usize> = c.factors.iter().map(FactorExpr::degree).collect();
        degs.sort_unstable();
        let mut expected: Vec<usize> = divisors(seed.k).iter().map(|&d| 2 * euler_phi(d) as usize).collect();
        expected.sort_unstable();
        assert_eq!(degs, expected, "{f}");
        assert_eq!(degs.iter().sum::<usize>(), 2 * seed.k as usize);
        assert!(!seed.big_a.is_zero());
        assert!(c.is_verified());
        assert!(c.g.to_int().is_some(), "integral g for {f}");
    }
}

#[test]
fn decomposition_quartic_factors() {
    let c = decomposition_construct(&p("t^4+4*t^2-t+1"), &p("t^2+2*t-2"), &p("t^2+1")).unwrap();
    let mut got: Vec<IntPoly> = c.factors.iter().map(|f| f.expand().to_int().unwrap()).collect();
    got.sort_by(|a, b| a.canonical_cmp(b));
    let lhs = p("t^4+4*t^2-t+1").compose(&p("t^2+2*t-2"));
    let z = factor_over_z(&lhs).unwrap();
    let mut oracle: Vec<IntPoly> = z.factors.iter().map(|(f, _)| f.clone()).collect();
    oracle.sort_by(|a, b| a.canonical_cmp(b));
    assert_eq!(got, oracle);
    assert_eq!(c.polysmoothness, q(1, 2));
}

#[test]
fn selmer_sextic_trinomial() {
    let c = trinomial_construct(TrinomialVariant::II, &BigInt::one(), &BigInt::from(-1), 6).unwrap();
    assert_eq!(c.f, p("t^6-t-1"));
    assert_eq!(c.total_degree(), 36);
    assert_eq!(c.max_factor_degree(), 12);
    assert_eq!(c.polysmoothness, q(1, 3));
    assert_eq!(verify_certificate(&c, &VerifyOptions::default()).mode, VerifyMode::Symbolic);
}

#[test]
fn cubic_family_entries_recover_factorizations() {
    let fam = cubic_family(&p("t^3-2"), 10).unwrap();
    assert_eq!(fam.len(), 10);
    let mut ratios: Vec<BigRational> = fam.iter().map(|e| e.ratio.clone()).collect();
    ratios.sort();
    ratios.dedup();
    assert_eq!(ratios.len(), 10);
    for e in &fam {
        let lhs = RatPoly::from(p("t^3-2")).compose(&e.g);
        let rhs = (&RatPoly::from(e.m_beta.clone()) * &RatPoly::from(e.m_gamma.clone())).scale(&e.kappa);
        assert_eq!(lhs, rhs);
        assert!(factor_over_z(&e.m_beta).unwrap().is_irreducible());
        assert!(factor_over_z(&e.m_gamma).unwrap().is_irreducible());
    }
}

#[test]
fn iterated_certificates_round_trip_through_json() {
    let c = iterate_schinzel(&p("t^3-t-1"), 3).unwrap();
    let back = Certificate::from_json(&c.to_json()).unwrap();
    assert_eq!(back, c);
    assert!(verify_certificate(&back, &VerifyOptions::default()).passed);
}
