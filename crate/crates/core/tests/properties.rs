use diagcert::diagonalizer::{diagonalize, transpose_certificate_from_diagonal, DiagBounds, Diagonalization};
use diagcert::filtration::{filtration_from_decomposition, sample_lattice, verify_filtration, FiltrationBounds};
use diagcert::groebner::{FreeVector, Ideal, Submodule};
use diagcert::homalg::{grade, is_quasi_gorenstein, FPModule, GradeValue, IsoBounds, QgResult};
use diagcert::linalg::{determinant, fitting_ideal, smith_normal_form, verify_certificate, RingMatrix};
use diagcert::rings::{factor, gcd, parse_poly, Monomial, Poly, Ring};
use diagcert::testkit::{minors_gcd_snf_oracle, scramble, ScrambleRecipe};
use num_bigint::BigInt;
use num_traits::Zero;
use proptest::prelude::*;
use proptest::test_runner::RngSeed;

fn config(cases: u32) -> ProptestConfig {
    ProptestConfig { cases, rng_seed: RngSeed::Fixed(0x5eed), failure_persistence: None, ..ProptestConfig::default() }
}

/// Polynomials in `Z[x, y]` with small degree and coefficients.
fn zxy_poly() -> impl Strategy<Value = Poly> {
    prop::collection::vec((0u32..3, 0u32..3, -4i64..=4), 0..4).prop_map(|terms| {
        let r = zxy();
        terms.into_iter().fold(Poly::zero(&r), |acc, (a, b, c)| {
            acc + Poly::monomial(&r, Monomial::new(vec![a, b]), r.coeffs().from_int(c))
        })
    })
}

fn zxy() -> Ring {
    Ring::polynomial(diagcert::rings::CoeffDomain::Integers, &["x", "y"], diagcert::rings::MonomialOrder::GrevLex)
        .unwrap()
}

fn int_matrix() -> impl Strategy<Value = RingMatrix> {
    (2usize..=4, 2usize..=4).prop_flat_map(|(r, c)| {
        prop::collection::vec(prop::collection::vec(-20i64..=20, c), r).prop_map(|rows| {
            let z = Ring::integers();
            let rows = rows.into_iter().map(|row| row.into_iter().map(|v| Poly::from_int(&z, v)).collect()).collect();
            RingMatrix::new(&z, rows).unwrap()
        })
    })
}

const IRREDUCIBLES: [&str; 5] = ["x", "y", "x + 1", "y - 1", "x + y"];

/// Diagonal entries over `Q[x, y]`: products of one or two listed irreducibles.
fn qxy_diagonal(n: usize) -> impl Strategy<Value = Vec<Poly>> {
    prop::collection::vec(prop::collection::vec(0usize..5, 1..=2), n).prop_map(|picks| {
        let r = Ring::qxy();
        picks
            .into_iter()
            .map(|ix| ix.into_iter().fold(Poly::one(&r), |acc, i| acc * parse_poly(&r, IRREDUCIBLES[i]).unwrap()))
            .collect()
    })
}

proptest! {
    #![proptest_config(config(64))]

    #[test]
    fn ring_axioms(a in zxy_poly(), b in zxy_poly(), c in zxy_poly()) {
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        if !b.is_zero() {
            prop_assert_eq!((&a * &b).exact_div(&b).unwrap(), Some(a.clone()));
        }
    }

    #[test]
    fn gcd_divides_and_ignores_units(a in zxy_poly(), b in zxy_poly()) {
        prop_assume!(!(a.is_zero() && b.is_zero()));
        let g = gcd(&a, &b).unwrap();
        prop_assert!(a.exact_div(&g).unwrap().is_some());
        prop_assert!(b.exact_div(&g).unwrap().is_some());
        let g2 = gcd(&-&a, &b).unwrap();
        prop_assert!(g.is_associate_of(&g2));
    }

    #[test]
    fn parse_print_round_trip(a in zxy_poly()) {
        let r = zxy();
        prop_assert_eq!(parse_poly(&r, &a.to_string()).unwrap(), a);
    }

    #[test]
    fn factorization_multiplies_back(a in zxy_poly()) {
        prop_assume!(!a.is_zero() && !a.is_unit());
        let f = factor(&a).unwrap();
        prop_assert_eq!(f.expand(), a);
        for (p, _) in &f.factors {
            let again = factor(p).unwrap();
            prop_assert!(again.factors.len() == 1 && again.factors[0].1 == 1);
        }
    }
}

proptest! {
    #![proptest_config(config(500))]

    #[test]
    fn smith_form_matches_minors_oracle(m in int_matrix()) {
        let s = smith_normal_form(&m).unwrap();
        prop_assert!(verify_certificate(&s.certificate).is_valid());
        let oracle = minors_gcd_snf_oracle(&m).unwrap();
        let got: Vec<BigInt> = s
            .invariant_factors
            .iter()
            .map(|p| p.constant_value().map_or_else(BigInt::zero, |c| c.to_integer()))
            .collect();
        prop_assert_eq!(got.len(), oracle.len());
        for (g, o) in got.iter().zip(&oracle) {
            prop_assert_eq!(g.magnitude(), o.magnitude());
        }
        for w in got.windows(2) {
            if !w[0].is_zero() {
                prop_assert!((&w[1] % &w[0]).is_zero());
            } else {
                prop_assert!(w[1].is_zero());
            }
        }
    }
}

proptest! {
    #![proptest_config(config(24))]

    #[test]
    fn fitting_ideals_are_equivalence_invariants(entries in qxy_diagonal(2), seed in any::<u64>(), ops in 1usize..=6) {
        let r = Ring::qxy();
        let d = RingMatrix::diagonal(&r, &entries);
        let cert = scramble(&d, &ScrambleRecipe::random(&r, 2, seed, ops, 1, 2)).unwrap();
        let m = &cert.target;
        for k in 0..=2 {
            let fm = fitting_ideal(m, k).unwrap();
            prop_assert!(fm.equals(&fitting_ideal(&d, k).unwrap()).unwrap());
            prop_assert!(fm.equals(&fitting_ideal(&m.transpose(), k).unwrap()).unwrap());
        }
        let p_det = determinant(&cert.left).unwrap();
        let q_det = determinant(&cert.right).unwrap();
        prop_assert_eq!(determinant(m).unwrap(), &(&p_det * &determinant(&d).unwrap()) * &q_det);
    }

    #[test]
    fn scrambles_diagonalize(entries in qxy_diagonal(3), seed in any::<u64>(), ops in 1usize..=6) {
        let r = Ring::qxy();
        let d = RingMatrix::diagonal(&r, &entries);
        let m = scramble(&d, &ScrambleRecipe::random(&r, 3, seed, ops, 1, 2)).unwrap().target;
        let Diagonalization::Yes(cert) = diagonalize(&m, &DiagBounds::default()).unwrap() else {
            return Err(TestCaseError::fail(format!("no diagonal form for seed {seed}")));
        };
        prop_assert!(verify_certificate(&cert).is_valid());
        for k in 0..=3 {
            prop_assert!(fitting_ideal(&cert.target, k).unwrap().equals(&fitting_ideal(&d, k).unwrap()).unwrap());
        }
        prop_assert!(verify_certificate(&transpose_certificate_from_diagonal(&cert).unwrap()).is_valid());
    }

    #[test]
    fn groebner_bases_and_syzygies(gens in prop::collection::vec(zxy_poly(), 1..=3), probe in zxy_poly()) {
        let r = zxy();
        let ideal = Ideal::new(&r, gens.clone()).unwrap();
        let gb = ideal.groebner_basis().unwrap();
        prop_assert_eq!(Ideal::new(&r, gb.clone()).unwrap().groebner_basis().unwrap(), gb);
        let target = &probe * &gens[0];
        let w = ideal.membership(&target).unwrap().expect("multiple of a generator");
        let back = gens.iter().zip(&w).fold(Poly::zero(&r), |acc, (g, c)| acc + g * c);
        prop_assert_eq!(back, target);
        let vectors: Vec<FreeVector> = gens.iter().map(|g| FreeVector::new(&r, vec![g.clone()]).unwrap()).collect();
        for s in Submodule::new(&r, 1, vectors).unwrap().syzygies().unwrap() {
            let sum = gens.iter().zip(s.components()).fold(Poly::zero(&r), |acc, (g, c)| acc + g * c);
            prop_assert!(sum.is_zero());
        }
    }

    #[test]
    fn direct_sums_of_quasi_gorenstein_blocks(a in qxy_diagonal(1), b in qxy_diagonal(1)) {
        let r = Ring::qxy();
        let nil = RingMatrix::parse(&r, &[vec!["x", "y"], vec!["0", "x"]]).unwrap();
        let blocks = RingMatrix::block_diag(&RingMatrix::diagonal(&r, &a), &RingMatrix::diagonal(&r, &b)).unwrap();
        let m = RingMatrix::block_diag(&nil, &blocks).unwrap();
        match is_quasi_gorenstein(&m, &IsoBounds::default()).unwrap() {
            QgResult::Yes { .. } => {}
            other => return Err(TestCaseError::fail(format!("{other:?}"))),
        }
    }

    #[test]
    fn submodules_have_no_smaller_grade(entries in qxy_diagonal(2)) {
        let r = Ring::qxy();
        let m = FPModule::from_matrix(&RingMatrix::diagonal(&r, &entries));
        let sub = m.submodule_presentation(&[FreeVector::unit(&r, 2, 0)]).unwrap();
        prop_assert_eq!(grade(&m, 2).unwrap().value, GradeValue::Exactly(1));
        match grade(&sub, 2).unwrap().value {
            GradeValue::Exactly(g) => prop_assert!(g >= 1),
            GradeValue::AtLeast(_) => {}
        }
    }

    #[test]
    fn decomposition_filtrations_verify(entries in qxy_diagonal(3)) {
        let r = Ring::qxy();
        let f = filtration_from_decomposition(&r, &entries).unwrap();
        let lattice = sample_lattice(&f.module, &FiltrationBounds::default()).unwrap();
        prop_assert!(verify_filtration(&f, &lattice).unwrap().is_valid());
        let again = filtration_from_decomposition(&r, &entries).unwrap();
        let keys: Vec<_> = f.steps.iter().map(|s| s.key.clone()).collect();
        let keys2: Vec<_> = again.steps.iter().map(|s| s.key.clone()).collect();
        prop_assert_eq!(keys, keys2);
    }
}
