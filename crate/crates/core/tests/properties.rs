use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use proptest::prelude::*;

use polysmooth::exactalg::resultant::sylvester_resultant;
use polysmooth::exactalg::{resultant_int, IntPoly, RatPoly};
use polysmooth::factorz::{factor_over_z, is_irreducible};
use polysmooth::numfield::{NumberField, SquareFilter};

fn poly(max_deg: usize, bound: i64) -> impl Strategy<Value = IntPoly> {
    (1..=max_deg).prop_flat_map(move |d| {
        (prop::collection::vec(-bound..=bound, d), (1..=bound).prop_flat_map(|l| prop_oneof![Just(l), Just(-l)]))
            .prop_map(|(mut cs, lead)| {
                cs.push(lead);
                IntPoly::from_i64(&cs)
            })
    })
}

fn naive_compose_eval(f: &IntPoly, g: &IntPoly, x: &BigInt) -> BigInt {
    let gx = g.eval(x);
    let mut acc = BigInt::zero();
    let mut pw = BigInt::one();
    for c in f.coeffs() {
        acc += c * &pw;
        pw *= &gx;
    }
    acc
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn compose_agrees_with_pointwise_evaluation(f in poly(5, 20), g in poly(4, 20), x in -1000i64..1000) {
        let x = BigInt::from(x);
        prop_assert_eq!(f.compose(&g).eval(&x), naive_compose_eval(&f, &g, &x));
    }

    #[test]
    fn divide_exact_inverts_multiplication(p in poly(6, 50), q in poly(4, 50)) {
        let pq = &p * &q;
        prop_assert_eq!(pq.divide_exact(&q).unwrap(), p);
    }

    #[test]
    fn resultant_antisymmetry_and_sylvester(p in poly(5, 15), q in poly(5, 15)) {
        let rpq = resultant_int(&p, &q).unwrap();
        let rqp = resultant_int(&q, &p).unwrap();
        let sign = if (p.deg() * q.deg()) % 2 == 1 { -1 } else { 1 };
        prop_assert_eq!(&rqp, &(&rpq * sign));
        prop_assert_eq!(rpq, sylvester_resultant(&p, &q));
    }

    #[test]
    fn norm_is_multiplicative(
        f in poly(4, 10).prop_filter("degree >= 2 and irreducible", |f| f.deg() >= 2 && is_irreducible(f)),
        x in poly(3, 10),
        y in poly(3, 10),
    ) {
        let k = NumberField::new(&f).unwrap();
        let ex = k.element(&RatPoly::from(x));
        let ey = k.element(&RatPoly::new(y, BigInt::from(3)).unwrap());
        let prod = ex.mul(&ey).unwrap();
        prop_assert_eq!(prod.norm(), ex.norm() * ey.norm());
    }

    #[test]
    fn minimal_polynomial_annihilates(
        f in poly(4, 8).prop_filter("degree >= 2 and irreducible", |f| f.deg() >= 2 && is_irreducible(f)),
        x in poly(3, 8),
    ) {
        let k = NumberField::new(&f).unwrap();
        let e = k.element(&RatPoly::from(x));
        let m = e.minimal_polynomial();
        prop_assert!(e.apply(&RatPoly::from(m)).is_zero());
    }

    #[test]
    fn express_in_powers_round_trips(
        f in poly(3, 6).prop_filter("degree >= 2 and irreducible", |f| f.deg() >= 2 && is_irreducible(f)),
        x in poly(2, 6),
        y in poly(2, 6),
    ) {
        let k = NumberField::new(&f).unwrap();
        let gen = k.element(&RatPoly::from(x));
        prop_assume!(gen.is_generator());
        let target = k.element(&RatPoly::from(y));
        let p = target.express_in_powers(&gen).unwrap();
        prop_assert_eq!(gen.apply(&p), target);
    }

    #[test]
    fn factorization_multiplies_back(p in poly(6, 30), q in poly(4, 30)) {
        let pq = &p * &q;
        let z = factor_over_z(&pq).unwrap();
        prop_assert_eq!(z.product(), pq.clone());
        let degs: usize = z.factors.iter().map(|(f, m)| f.deg() * m).sum();
        prop_assert_eq!(degs, pq.deg());
    }
}

// Capelli: every irreducible factor of f(g) has degree divisible by deg f.
proptest! {
    #![proptest_config(ProptestConfig::with_cases(220))]

    #[test]
    fn capelli_degree_divisibility(
        f in (2usize..=4).prop_flat_map(|d| prop::collection::vec(-20i64..=20, d + 1))
            .prop_map(|cs| IntPoly::from_i64(&cs))
            .prop_filter("irreducible of degree >= 2", |f| f.deg() >= 2 && is_irreducible(f)),
        g in (2usize..=3).prop_flat_map(|d| prop::collection::vec(-20i64..=20, d + 1))
            .prop_map(|cs| IntPoly::from_i64(&cs))
            .prop_filter("degree >= 2", |g| g.deg() >= 2),
    ) {
        let z = factor_over_z(&f.compose(&g)).unwrap();
        for (h, _) in &z.factors {
            prop_assert_eq!(h.deg() % f.deg(), 0, "{} in f(g) for f = {}, g = {}", h, f, g);
        }
    }
}

// Reducible substitutions built from a planted square in Q(alpha) must
// survive the modular filter.
proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn square_filter_keeps_planted_squares(p in -30i64..=30, r in -6i64..=6, j in -6i64..=6) {
        // delta = p + 2pr alpha squares to p^2 (1 - 16 r^2) + 4 p^2 r alpha
        prop_assume!(p != 0 && r != 0);
        let a = p * p * r;
        let b = p * (1 + 2 * p * r * j);
        let c = p * j + p * p * r * j * j + 4 * r;
        prop_assert_eq!(b * b - 4 * a * c, p * p * (1 - 16 * r * r));
        let f = IntPoly::from_i64(&[4, 0, 1]);
        let k = NumberField::new(&f).unwrap();
        let filter = SquareFilter::new(&k, 40);
        prop_assert!(filter.passes_linear(&BigInt::from(b * b - 4 * a * c), &BigInt::from(4 * a)));
        let z = factor_over_z(&f.compose(&IntPoly::from_i64(&[c, b, a]))).unwrap();
        prop_assert!(z.count() > 1);
    }

    #[test]
    fn square_filter_keeps_planted_cube_root_hits(u in 1i64..=200, v in -200i64..=200) {
        // 2 (u t + v)^2 substituted into t^3 - 2
        let (a, b, c) = (2 * u * u, 4 * u * v, 2 * v * v);
        let f = IntPoly::from_i64(&[-2, 0, 0, 1]);
        let k = NumberField::new(&f).unwrap();
        let filter = SquareFilter::new(&k, 40);
        prop_assert!(filter.passes_linear(&BigInt::from(b * b - 4 * a * c), &BigInt::from(4 * a)));
    }
}

#[test]
fn rational_quartic_substitution_factors() {
    // 16 f4(-(x^2+x+3)/2) for f4 = t^4+t^2+2t+3
    let f4 = IntPoly::from_i64(&[3, 2, 1, 0, 1]);
    let g = RatPoly::new(IntPoly::from_i64(&[-3, -1, -1]), BigInt::from(2)).unwrap();
    let lhs = RatPoly::from(f4).compose(&g).scale(&BigRational::from_integer(16.into()));
    let lhs = lhs.to_int().expect("integral");
    let z = factor_over_z(&lhs).unwrap();
    assert_eq!((z.unit, z.content.clone()), (1, BigInt::one()));
    let got: Vec<_> = z.factors.iter().map(|(f, m)| (f.clone(), *m)).collect();
    assert_eq!(
        got,
        vec![
            (IntPoly::from_i64(&[9, 2, 7, 2, 1]), 1),
            (IntPoly::from_i64(&[13, 10, 7, 2, 1]), 1),
        ]
    );
}
