use loghyper::curve::{solve_e_tau, solve_e_tau_exact, CurveEigenData};
use loghyper::exact::valuation;

// Observed p-adic valuations of the λ-coefficients of E1 and E2 at M = 3p,
// frozen as regression fixtures. `None` marks a zero or O(p^4) coefficient.
const FIXTURES: [((i64, i64, u64), [i64; 15], [i64; 15]); 1] = [(
    (2, 1, 5),
    [-1, 0, 1, 0, 0, 1, 1, 0, 1, 1, 1, 0, 1, 0, 0],
    [-1, 0, 0, 0, 0, -1, 2, 1, 0, 0, 0, 1, 0, 0, 0],
)];

fn profile(v: &[i64]) -> Vec<Option<i64>> {
    v.iter().map(|&x| (x >= 0).then_some(x)).collect()
}

#[test]
fn valuation_profiles() {
    for ((n, i, p), e1_want, e2_want) in FIXTURES {
        let data = CurveEigenData::new(n, i, p).unwrap();
        let (e1, e2) = solve_e_tau(&data, 3 * p as usize, 4).unwrap();
        assert_eq!(e1.valuation_profile(), profile(&e1_want));
        assert_eq!(e2.valuation_profile(), profile(&e2_want));

        // E1 is rational, so its profile can be read off the exact coefficients.
        let exact = solve_e_tau_exact(&data, 3 * p as usize).unwrap();
        let direct: Vec<_> = exact.e1.coeffs().iter().map(|q| valuation(q, p)).collect();
        assert_eq!(direct, profile(&e1_want));
    }
}

#[test]
fn e2_is_affine_in_the_constant() {
    // Both pieces of E2 vanish at λ = 0.
    for (n, i, p) in [(2, 1, 3), (5, 2, 11), (6, 1, 7)] {
        let exact = solve_e_tau_exact(&CurveEigenData::new(n, i, p).unwrap(), 3 * p as usize).unwrap();
        assert!(valuation(&exact.e2_rational.coeffs()[0], p).is_none());
        assert!(valuation(&exact.e2_linear.coeffs()[0], p).is_none());
    }
}
