use continuation::quadrature::{gamma_residue_numeric, verify_residues};
use continuation::*;
use cy_state::CySector;
use exact_kernel::bigcomplex::{gamma_rational, BigComplex};
use exact_kernel::rational::{int, rat};
use gw_series::{derive_recurrence, i_gw, supported_sectors, transport_operator};

fn sector(s: &str) -> CySector {
    CySector::new(s.parse().unwrap()).unwrap()
}

#[test]
fn untwisted_series_ratio() {
    let s = continued_series(&sector("e"), 30, 40).unwrap();
    let cls = &s.components[0].classes;
    assert_eq!(cls.iter().map(|c| c.k).collect::<Vec<_>>(), vec![1, 2, 3, 4]);
    assert_eq!(cls[0].series.coeff(6), &rat(1, 375000));
    assert_eq!(cls[0].series.coeff(1), &int(1));
}

#[test]
fn curve_sector_classes() {
    assert_eq!(present_classes(&sector("0,0,0,2,3")), vec![1, 4]);
    assert_eq!(present_classes(&sector("0,0,0,1,4")), vec![2, 3]);
    assert_eq!(present_classes(&sector("0,0,1,1,3")), vec![1, 3]);
    assert_eq!(present_classes(&sector("0,0,2,2,1")), vec![1, 2]);
    assert!(continued_series(&sector("0,0,4,4,2"), 5, 30).is_err());
}

#[test]
fn point_sector_companion_phases() {
    let d = 50;
    let g = sector("0,0,1,1,3");
    let s = continued_series(&g, 10, d).unwrap();
    let comp = &s.components[1];
    assert_eq!(comp.target, sector("4,4,0,0,2"));
    let tpi = BigComplex::two_pi_i(d);
    for (cl, (p, sign)) in comp.classes.iter().zip([(2, -1i64), (4, -1)]) {
        let xi = BigComplex::xi_pow(p, d);
        let mut want = (&xi * &tpi).try_div(&(&BigComplex::one(d) - &xi)).unwrap();
        if sign < 0 {
            want = want.neg();
        }
        let fact = exact_kernel::rational::factorial(u32::from(cl.k) - 1);
        want = want.scale(&(int(1) / (exact_kernel::Rational::from(fact) * int(5))));
        want = &want * &class_gamma_direct(&g, cl.k, d);
        assert!((&want - cl.constant.coeff(0)).log10_abs() < -45.0, "k={}", cl.k);
    }
}

#[test]
fn reflection_instances() {
    let d = 80;
    let lhs = gamma_rational(&rat(1, 5), d).unwrap() * gamma_rational(&rat(4, 5), d).unwrap();
    let pi = BigComplex::pi(d);
    let rhs = pi.try_div(&(&pi.scale(&rat(1, 5))).sin()).unwrap();
    assert!((&BigComplex::from_float(&lhs, d) - &rhs).log10_abs() < -75.0);
    for s in supported_sectors().iter().take(30) {
        for k in 1..5 {
            assert!(verify_reflection_simplification(s, k, d), "{s} k={k}");
        }
    }
    let g = sector("0,0,0,2,3");
    let a = class_gamma_direct(&g, 1, d);
    let b = class_gamma_reflected(&g, 4, d).unwrap();
    assert!((&a - &b).log10_abs() > -5.0);
}

#[test]
fn transported_operators_annihilate_classes() {
    for s in supported_sectors() {
        assert!(annihilation_check(&s, 30).unwrap(), "{s}");
    }
}

#[test]
fn shifted_series_is_not_a_solution() {
    let g = sector("0,0,0,2,3");
    let op = transport_operator(&derive_recurrence(&i_gw(&g, 4).unwrap()).unwrap());
    let shifted = class_series(&g, 1, 28).shift(2);
    assert!(op.apply_series(&shifted).coeffs().iter().any(|c| *c != 0));
}

#[test]
fn solution_count_matches_operator_order() {
    for s in ["e", "0,0,0,2,3", "0,0,0,1,4", "0,0,1,1,3", "0,0,2,2,1"].map(sector) {
        let c = continued_series(&s, 20, 30).unwrap();
        let op = derive_recurrence(&i_gw(&s, 4).unwrap()).unwrap();
        assert_eq!(independent_solutions(&c) as u32, op.order(), "{s}");
    }
}

#[test]
fn simple_gamma_residues() {
    for m in 1..4u32 {
        let v = gamma_residue_numeric(m, 60).unwrap();
        let fact = exact_kernel::rational::factorial(m - 1);
        let mut want = exact_kernel::Rational::from(fact).recip() * rat(1, 5);
        if m % 2 == 0 {
            want = -want;
        }
        assert!((&v - &BigComplex::from_rational(&want, 60)).log10_abs() < -50.0, "m={m}");
    }
}

#[test]
fn residue_quadrature_small_orders() {
    for s in ["e", "0,0,1,1,3"].map(sector) {
        for c in verify_residues(&s, 5, 60).unwrap() {
            match c.kind {
                ResidueKind::IntegerPoleScaling { expected, measured } => {
                    assert!((measured - f64::from(expected)).abs() < 1e-4, "{s} m={}", c.m)
                }
                _ => {
                    assert!(c.error_log10 < -40.0, "{s} m={} {:?}", c.m, c.kind);
                    assert!(c.doubling_log10 < -40.0);
                }
            }
        }
    }
}

#[test]
fn flatten_carries_nilpotent_powers() {
    let s = continued_series(&sector("e"), 6, 30).unwrap();
    let flat = s.flatten();
    // class k=1 feeds t^1 with H^0..H^3 and matching z powers
    let powers: Vec<_> = flat.keys().filter(|(n, _, _)| *n == 1).map(|(_, l, z)| (l.h_power, *z)).collect();
    assert_eq!(powers, vec![(0, 1), (1, 0), (2, -1), (3, -2)]);
}
