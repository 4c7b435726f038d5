use nctorus::af_tower::{build_tower, inverse_limit_coefficients, pairing_along_tower, push_k0_class, DimensionVector};
use nctorus::exact_arith::{cf_expand, convergents, BigInt, BigRational, Theta};
use nctorus::fredholm::{ClassSpec, ModuleRegistry, PairingContext};
use nctorus::linalg::C64;
use nctorus::torus_rep::{canonical_trace, clock_shift, Angle, NcPoly, TraceElement};
use nctorus::zlattice::{check_exact_at, smith_normal_form, FreeAbelianGroup, IntMatrix, IntegerMatrixMap};
use proptest::prelude::*;

/// A unimodular `n × n` matrix and its inverse, built from elementary row operations.
fn unimodular(n: usize, ops: &[(usize, usize, i64)]) -> (IntMatrix, IntMatrix) {
    let mut p = IntMatrix::identity(n);
    let mut inv = IntMatrix::identity(n);
    for &(i, j, c) in ops {
        let (i, j) = (i % n, j % n);
        if i == j {
            // Negate row i of p; the inverse negates column i.
            for k in 0..n {
                p.set(i, k, -p.get(i, k));
                inv.set(k, i, -inv.get(k, i));
            }
        } else {
            // row_i += c·row_j on p; column_j −= c·column_i on the inverse.
            for k in 0..n {
                p.set(i, k, p.get(i, k) + c * p.get(j, k));
                inv.set(k, j, inv.get(k, j) - c * inv.get(k, i));
            }
        }
    }
    (p, inv)
}

fn names(prefix: &str, n: usize) -> Vec<String> {
    (0..n).map(|i| format!("{prefix}{i}")).collect()
}

fn group(label: &str, n: usize) -> FreeAbelianGroup {
    let gens = names(label, n);
    let refs: Vec<&str> = gens.iter().map(String::as_str).collect();
    FreeAbelianGroup::new(label, &refs).unwrap()
}

fn poly(terms: &[(i64, i64, f64, f64)]) -> NcPoly {
    let mut p = NcPoly::zero();
    for &(m, n, re, im) in terms {
        p.add_term(m, n, C64::new(re, im));
    }
    p
}

fn term() -> impl Strategy<Value = (i64, i64, f64, f64)> {
    (-3i64..=3, -3i64..=3, -1.0f64..1.0, -1.0f64..1.0)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn exactness_is_a_basis_free_property(
        a in 1usize..3, n in 1usize..4, b in 1usize..3,
        f in prop::collection::vec(-2i64..=2, 9), g in prop::collection::vec(-2i64..=2, 9),
        ops in prop::collection::vec((0usize..4, 0usize..4, -3i64..=3), 0..8),
    ) {
        let f = IntMatrix::new(n, a, f[..n * a].to_vec()).unwrap();
        let g = IntMatrix::new(b, n, g[..b * n].to_vec()).unwrap();
        let (a_grp, mid, c_grp) = (group("a", a), group("m", n), group("c", b));
        let before = check_exact_at(
            &IntegerMatrixMap::new("f", a_grp.clone(), mid.clone(), f.clone()).unwrap(),
            &IntegerMatrixMap::new("g", mid.clone(), c_grp.clone(), g.clone()).unwrap(),
        ).unwrap();
        let (p, p_inv) = unimodular(n, &ops);
        prop_assert_eq!(p.mul(&p_inv).unwrap(), IntMatrix::identity(n));
        let after = check_exact_at(
            &IntegerMatrixMap::new("f", a_grp, mid.clone(), p.mul(&f).unwrap()).unwrap(),
            &IntegerMatrixMap::new("g", mid, c_grp, g.mul(&p_inv).unwrap()).unwrap(),
        ).unwrap();
        prop_assert_eq!(before.exact, after.exact);
    }

    #[test]
    fn smith_form_reconstructs(rows in 1usize..4, cols in 1usize..4, entries in prop::collection::vec(-6i64..=6, 9)) {
        let m = IntMatrix::new(rows, cols, entries[..rows * cols].to_vec()).unwrap();
        let s = smith_normal_form(&m).unwrap();
        prop_assert!(s.u.is_unimodular() && s.v.is_unimodular());
        prop_assert_eq!(s.u.mul(&m).unwrap().mul(&s.v).unwrap(), s.d.clone());
        let f = s.invariant_factors();
        prop_assert!(f.windows(2).all(|w| w[1] % w[0] == 0));
    }

    #[test]
    fn continued_fraction_round_trip(p in -100_000i64..100_000, q in 1i64..100_000) {
        let theta = Theta::exact(p, q).unwrap();
        let cf = cf_expand(&theta, 200).unwrap();
        prop_assert!(cf.is_terminating());
        prop_assert_eq!(cf.value(), BigRational::new(p.into(), q.into()));
        let t = convergents(&cf);
        prop_assert!(t.determinant_violations().is_empty());
        prop_assert!(t.monotonicity_violations().is_empty());
        prop_assert_eq!(t.last().value(), cf.value());
    }

    #[test]
    fn trace_is_tracial_on_polynomials(
        theta in 0.0f64..1.0,
        a in prop::collection::vec(term(), 1..5),
        b in prop::collection::vec(term(), 1..5),
    ) {
        let angle = Angle::from_f64(theta);
        let (a, b) = (poly(&a), poly(&b));
        let ab = canonical_trace(&TraceElement::Polynomial(&a.mul(&b, &angle))).unwrap();
        let ba = canonical_trace(&TraceElement::Polynomial(&b.mul(&a, &angle))).unwrap();
        prop_assert!((ab - ba).norm() < 1e-12);
    }

    #[test]
    fn trace_is_tracial_in_clock_shift_reps(
        m in 1i64..40, q in 2u64..40,
        a in prop::collection::vec(term(), 1..4),
        b in prop::collection::vec(term(), 1..4),
    ) {
        prop_assume!(num_gcd(m, q as i64) == 1);
        let rep = clock_shift(m, q).unwrap();
        let (a, b) = (poly(&a).evaluate(&rep), poly(&b).evaluate(&rep));
        let ab = canonical_trace(&TraceElement::ClockShiftMatrix(&(&a * &b))).unwrap();
        let ba = canonical_trace(&TraceElement::ClockShiftMatrix(&(&b * &a))).unwrap();
        prop_assert!((ab - ba).norm() < 1e-12);
    }

    #[test]
    fn tower_pairing_does_not_depend_on_the_level(
        digits in prop::collection::vec(1u64..8, 4..16),
        d in 0u64..50, d_prime in 0u64..50,
    ) {
        let cf = nctorus::exact_arith::CfExpansion::from_digits(0, &digits).unwrap();
        let tower = build_tower(&cf, digits.len()).unwrap();
        let level1 = tower.level(1).unwrap();
        let d = BigInt::from(d) % (&level1.q_n + 1);
        let d_prime = BigInt::from(d_prime) % (&level1.q_prev + 1);
        let v = DimensionVector::new(1, d, d_prime);
        let base = pairing_along_tower(&inverse_limit_coefficients(&tower, 1).unwrap(), &v).unwrap();
        for n in 2..=tower.depth() {
            let at_n = pairing_along_tower(
                &inverse_limit_coefficients(&tower, n).unwrap(),
                &push_k0_class(&v, &tower, n).unwrap(),
            ).unwrap();
            prop_assert_eq!(&at_n, &base);
        }
    }
}

fn num_gcd(a: i64, b: i64) -> i64 {
    if b == 0 { a.abs() } else { num_gcd(b, a % b) }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn odd_pairing_counts_the_winding(m in 1i64..50, q in 2i64..50, k in -3i64..=3, n in 8usize..20) {
        prop_assume!(num_gcd(m, q) == 1);
        let registry = ModuleRegistry::builtin();
        let ctx = PairingContext::new(Theta::exact(m, q).unwrap(), n);
        let shift = if k == 0 { ClassSpec::One } else { ClassSpec::U(k) };
        let diag = if k == 0 { ClassSpec::One } else { ClassSpec::V(k) };
        prop_assert_eq!(registry.pair("z1", &ctx, shift).unwrap().value, -k);
        prop_assert_eq!(registry.pair("z1", &ctx, diag).unwrap().value, 0);
        prop_assert_eq!(registry.pair("z1prime", &ctx, diag).unwrap().value, -k);
    }
}
