//! Values stated in the source text, reproduced through the public API.

use nctorus::exact_arith::{cf_expand, convergents, Theta};
use nctorus::fredholm::{ClassSpec, ModuleRegistry, PairingContext};
use nctorus::zlattice::{builtin_khomology_sequence, builtin_ktheory_sequence};

fn pair(module: &str, theta: Theta, n: usize, class: ClassSpec) -> i64 {
    ModuleRegistry::builtin().pair(module, &PairingContext::new(theta, n), class).unwrap().value
}

#[test]
fn canonical_even_module_pairs_to_one_with_the_unit() {
    for theta in [0, 1, -1] {
        assert_eq!(pair("z0", Theta::exact(theta, 1).unwrap(), 0, ClassSpec::One), 1);
    }
}

#[test]
fn odd_generators_at_theta_zero() {
    let zero = || Theta::exact(0, 1).unwrap();
    assert_eq!(pair("z1", zero(), 16, ClassSpec::U(1)).abs(), 1);
    assert_eq!(pair("z1", zero(), 16, ClassSpec::V(1)), 0);
    assert_eq!(pair("z1prime", zero(), 16, ClassSpec::U(1)), 0);
    assert_eq!(pair("z1prime", zero(), 16, ClassSpec::V(1)).abs(), 1);
}

#[test]
fn dirac_pairs_to_zero_with_the_unit() {
    assert_eq!(pair("dirac", Theta::golden(60), 8, ClassSpec::One), 0);
}

#[test]
fn clock_shift_module_counts_the_fiber_dimension() {
    // θ = m/n gives fibres M_n(C); the unit pairs to n.
    for (m, n) in [(1, 2), (2, 7), (3, 11), (5, 64)] {
        assert_eq!(pair("z0prime", Theta::exact(m, n).unwrap(), 0, ClassSpec::One), n);
    }
}

#[test]
fn boundary_maps_of_the_two_sequences() {
    // δ1[U] = 0, δ1[V] = [1], δ0[p] = [U]; i*(Dirac) = 0, i*(z0) = w0.
    let kth = builtin_ktheory_sequence();
    let delta1 = kth.map("delta1").unwrap();
    assert_eq!(delta1.apply_generator("[U]"), Some(vec![0]));
    assert_eq!(delta1.apply_generator("[V]"), Some(vec![1]));
    assert_eq!(kth.map("delta0").unwrap().apply_generator("[p]"), Some(vec![1]));
    let khom = builtin_khomology_sequence();
    let i0 = khom.map("i0").unwrap();
    assert_eq!(i0.apply_generator("Dirac"), Some(vec![0]));
    assert_eq!(i0.apply_generator("z0"), Some(vec![1]));
    assert!(khom.is_exact().unwrap() && kth.is_exact().unwrap());
}

#[test]
fn convergent_recursion_seeds() {
    // p_{-1} = 1, q_{-1} = 0, p_0 = a_0, q_0 = 1.
    let t = convergents(&cf_expand(&Theta::exact(15, 11).unwrap(), 10).unwrap());
    assert_eq!((t.p(-1), t.q(-1)), (1.into(), 0.into()));
    assert_eq!((t.p(0), t.q(0)), (1.into(), 1.into()));
    assert_eq!(t.last().value(), nctorus::exact_arith::BigRational::new(15.into(), 11.into()));
}
