use k3pf::arith::{rank_profile, rf_linear_solve, rf_nullspace, rf_rank, solve_field, IntPoly, Matrix, RFMatrix};
use k3pf::{BigRational, Error, RationalFunction};
use num_traits::Zero;
use proptest::prelude::*;

fn poly(max_len: usize) -> impl Strategy<Value = IntPoly> {
    prop::collection::vec(-3i64..=3, 1..=max_len).prop_map(|c| IntPoly::from_ints(&c))
}

fn nonzero_poly(max_len: usize) -> impl Strategy<Value = IntPoly> {
    poly(max_len).prop_filter("nonzero", |p| !p.is_zero())
}

fn entry() -> impl Strategy<Value = RationalFunction> {
    poly(3).prop_map(RationalFunction::from_poly)
}

fn square3() -> impl Strategy<Value = RFMatrix> {
    prop::collection::vec(prop::collection::vec(entry(), 3), 3).prop_map(|rows| Matrix::from_rows(rows).unwrap())
}

fn mul(a: &RFMatrix, x: &[RationalFunction]) -> Vec<RationalFunction> {
    a.mul_vec(x).unwrap()
}

/// Evaluates at `x`, or `None` at a pole.
fn specialize(v: &[RationalFunction], x: &BigRational) -> Option<Vec<BigRational>> {
    v.iter().map(|r| r.eval(x).ok()).collect()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn common_factor_cancels(a in poly(4), b in nonzero_poly(4), c in nonzero_poly(3)) {
        let lhs = RationalFunction::normalize(&a * &c, &b * &c).unwrap();
        prop_assert_eq!(lhs, RationalFunction::normalize(a, b).unwrap());
    }

    #[test]
    fn solutions_remultiply(a in square3(), b in prop::collection::vec(entry(), 3)) {
        if let Ok(x) = rf_linear_solve(&a, &b) {
            prop_assert_eq!(mul(&a, &x), b);
        }
    }

    #[test]
    fn nullspace_is_a_kernel_basis(
        rows in prop::collection::vec(prop::collection::vec(entry(), 4), 1..4),
        seeds in prop::collection::vec(-50i64..50, 5),
    ) {
        let a = Matrix::from_rows(rows).unwrap();
        let ns = rf_nullspace(&a);
        prop_assert_eq!(rf_rank(&a) + ns.len(), 4);
        for v in &ns {
            prop_assert!(mul(&a, v).iter().all(RationalFunction::is_zero));
        }
        // independent at several specializations avoiding poles
        if !ns.is_empty() {
            let mut ok = 0;
            for s in seeds {
                let x = BigRational::new(s.into(), 7.into());
                let Some(rows) = ns.iter().map(|v| specialize(v, &x)).collect::<Option<Vec<_>>>() else {
                    continue;
                };
                let m = Matrix::from_rows(rows).unwrap();
                // rank can only drop at finitely many points
                if rank_profile(&m).rank() == ns.len() {
                    ok += 1;
                }
            }
            prop_assert!(ok >= 3);
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(1000))]

    // fraction-free elimination against plain field elimination over Q(t)
    #[test]
    fn fraction_free_matches_naive(a in square3(), b in prop::collection::vec(entry(), 3)) {
        let ff = rf_linear_solve(&a, &b);
        let naive = solve_field(&a, &b);
        match (&ff, &naive) {
            (Ok(x), Ok(y)) => prop_assert_eq!(x, y),
            (Err(Error::NoSolution), Err(Error::NoSolution)) => {}
            _ => prop_assert!(false, "{:?} vs {:?}", ff, naive),
        }
    }
}
