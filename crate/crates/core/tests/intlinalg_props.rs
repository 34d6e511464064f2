use homcls::intlinalg::{smith_normal_form, solve_linear, IntMatrix};
use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use proptest::prelude::*;

fn matrix(max_dim: usize, bound: i64) -> impl Strategy<Value = IntMatrix> {
    (1..=max_dim, 1..=max_dim).prop_flat_map(move |(r, c)| {
        prop::collection::vec(prop::collection::vec(-bound..=bound, c), r)
            .prop_map(move |rows| IntMatrix::from_rows(c, &rows).unwrap())
    })
}

fn is_unit(x: &BigInt) -> bool {
    x.abs().is_one()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn smith_form_is_a_factorization(u in matrix(6, 9)) {
        let snf = smith_normal_form(&u);
        prop_assert_eq!(&snf.s.mul(&u).unwrap().mul(&snf.t).unwrap(), &snf.d);
        prop_assert!(is_unit(&snf.s.determinant().unwrap()));
        prop_assert!(is_unit(&snf.t.determinant().unwrap()));
        prop_assert_eq!(snf.s.mul(&snf.s_inv).unwrap(), IntMatrix::identity(u.rows()));
        prop_assert_eq!(snf.t.mul(&snf.t_inv).unwrap(), IntMatrix::identity(u.cols()));
        for r in 0..u.rows() {
            for c in 0..u.cols() {
                if r != c {
                    prop_assert!(snf.d.get(r, c).is_zero());
                }
            }
        }
        let diag = snf.diagonal();
        prop_assert!(diag.iter().all(|x| !x.is_negative()));
        for w in diag.windows(2) {
            if w[1].is_zero() {
                continue;
            }
            prop_assert!(!w[0].is_zero());
            prop_assert!((&w[1] % &w[0]).is_zero());
        }
    }

    #[test]
    fn solutions_substitute_and_kernels_annihilate(a in matrix(5, 5), seed in prop::collection::vec(-4i64..=4, 5)) {
        let x0: Vec<BigInt> = seed[..a.cols()].iter().map(|&v| BigInt::from(v)).collect();
        let b = a.mul_vec(&x0).unwrap();
        let sol = solve_linear(&a, &b).unwrap();
        let p = sol.particular.expect("consistent system");
        prop_assert_eq!(a.mul_vec(&p).unwrap(), b);
        for k in &sol.kernel {
            prop_assert!(a.mul_vec(k).unwrap().iter().all(Zero::is_zero));
        }
    }
}

/// All integer vectors in `[-r, r]^n`.
fn box_points(n: usize, r: i64) -> Vec<Vec<i64>> {
    let mut out = vec![vec![]];
    for _ in 0..n {
        out = out
            .into_iter()
            .flat_map(|v| {
                (-r..=r).map(move |x| {
                    let mut w = v.clone();
                    w.push(x);
                    w
                })
            })
            .collect();
    }
    out
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    /// On small systems the solver agrees with exhaustive search: it finds a
    /// solution whenever one exists in the search box, and every solution in
    /// the box differs from the particular one by a kernel combination.
    #[test]
    fn solver_matches_enumeration(
        a in (1usize..=3, 1usize..=4).prop_flat_map(|(r, c)| prop::collection::vec(prop::collection::vec(-3i64..=3, c), r)),
        b in prop::collection::vec(-3i64..=3, 3),
    ) {
        let n = a[0].len();
        let m = IntMatrix::from_rows(n, &a).unwrap();
        let rhs: Vec<BigInt> = b[..a.len()].iter().map(|&v| BigInt::from(v)).collect();
        let sol = solve_linear(&m, &rhs).unwrap();
        let found: Vec<Vec<BigInt>> = box_points(n, 4)
            .into_iter()
            .map(|v| v.into_iter().map(BigInt::from).collect::<Vec<_>>())
            .filter(|x| m.mul_vec(x).unwrap() == rhs)
            .collect();
        match &sol.particular {
            None => prop_assert!(found.is_empty()),
            Some(p) => {
                prop_assert_eq!(&m.mul_vec(p).unwrap(), &rhs);
                let kmat = if sol.kernel.is_empty() {
                    None
                } else {
                    let cols: Vec<Vec<BigInt>> = sol.kernel.clone();
                    Some(IntMatrix::from_rows(n, &cols).unwrap().transpose())
                };
                for x in &found {
                    let diff: Vec<BigInt> = x.iter().zip(p).map(|(u, v)| u - v).collect();
                    match &kmat {
                        None => prop_assert!(diff.iter().all(Zero::is_zero)),
                        Some(k) => prop_assert!(solve_linear(k, &diff).unwrap().particular.is_some()),
                    }
                }
            }
        }
    }
}
