use lambdadet::asm6v::{transform_matrix, Symmetry};
use lambdadet::exact::{bareiss_det, Matrix, Rational};
use lambdadet::lambdadet::{asm_sum, statistics_form};
use lambdadet::network::lgv_lambda_det;
use lambdadet::tsystem::{dodgson, full_range, lambda_det_via_tsystem, CoeffWindow, ShiftConvention};
use lambdadet::Error;
use proptest::prelude::*;

fn rational() -> impl Strategy<Value = Rational> {
    (-9i64..=9, 1i64..=4).prop_map(|(p, d)| Rational::new(p, d).unwrap())
}

fn nonzero() -> impl Strategy<Value = Rational> {
    rational().prop_filter("nonzero", |r| *r != Rational::zero())
}

fn matrix(n: usize) -> impl Strategy<Value = Matrix<Rational>> {
    prop::collection::vec(rational(), n * n).prop_map(move |v| {
        Matrix::from_fn(&Rational::zero(), n, n, |i, j| v[i * n + j].clone())
    })
}

fn window(n: usize) -> impl Strategy<Value = CoeffWindow<Rational>> {
    let len = full_range(n).count();
    (prop::collection::vec(nonzero(), len), prop::collection::vec(nonzero(), len)).prop_map(move |(l, m)| {
        let keys: Vec<i64> = full_range(n).collect();
        CoeffWindow::new(
            keys.iter().copied().zip(l).collect(),
            keys.iter().copied().zip(m).collect(),
        )
        .unwrap()
    })
}

fn instance() -> impl Strategy<Value = (Matrix<Rational>, CoeffWindow<Rational>)> {
    (1usize..=4).prop_flat_map(|n| (matrix(n), window(n)))
}

proptest! {
    #![proptest_config(ProptestConfig {
        cases: 64,
        failure_persistence: None,
        ..ProptestConfig::default()
    })]

    #[test]
    fn minus_one_is_the_determinant(a in (1usize..=5).prop_flat_map(matrix)) {
        let n = a.rows();
        let w = CoeffWindow::homogeneous(n, Rational::from_int(-1), Rational::one()).unwrap();
        match dodgson(&a, &w, ShiftConvention::Lattice) {
            Ok(v) => prop_assert_eq!(v, bareiss_det(&a).unwrap()),
            Err(Error::ZeroDivision(_)) => {}
            Err(e) => prop_assert!(false, "{e}"),
        }
        match asm_sum(&a, &w) {
            Ok(v) => prop_assert_eq!(v, bareiss_det(&a).unwrap()),
            Err(Error::ZeroEntryAtMinus(..)) => {}
            Err(e) => prop_assert!(false, "{e}"),
        }
    }

    #[test]
    fn methods_agree((a, w) in instance()) {
        let reference = match dodgson(&a, &w, ShiftConvention::Lattice) {
            Ok(v) => v,
            Err(Error::ZeroDivision(_)) => return Ok(()),
            Err(e) => return Err(TestCaseError::fail(e.to_string())),
        };
        prop_assert_eq!(&lambda_det_via_tsystem(&a, &w).unwrap(), &reference);
        // The subtraction-free forms divide by interior entries and may legitimately fail.
        for got in [asm_sum(&a, &w), statistics_form(&a, &w), lgv_lambda_det(&a, &w)] {
            match got {
                Ok(v) => prop_assert_eq!(&v, &reference),
                Err(Error::ZeroEntryAtMinus(..) | Error::ZeroFaceLabel(..) | Error::ZeroDivision(_)) => {}
                Err(e) => prop_assert!(false, "{e}"),
            }
        }
    }

    #[test]
    fn symmetries_commute((a, w) in instance()) {
        for phi in [Symmetry::Sigma, Symmetry::Tau] {
            let left = asm_sum(&transform_matrix(&a, phi), &w.transform(phi));
            let right = asm_sum(&a, &w);
            if let (Ok(l), Ok(r)) = (left, right) {
                prop_assert_eq!(l, r);
            }
        }
    }
}
