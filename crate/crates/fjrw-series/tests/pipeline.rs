use exact_kernel::rational::{int, rat};
use exact_kernel::Rational;
use fjrw_series::sd::s_series;
use fjrw_series::*;
use lg_state::{narrow_sectors, FjrwLabel};
use proptest::prelude::*;

const ORDER: usize = 30;

fn pipeline() -> FjrwIFunction {
    i_fjrw(ORDER)
}

fn assignment(pairs: &[(FjrwLabel, u32)]) -> Assignment {
    pairs.iter().filter(|(_, m)| *m > 0).cloned().collect()
}

#[test]
fn f_has_only_multiples_of_five() {
    let fg = extract_f_g(&pipeline()).unwrap();
    for n in 0..=ORDER {
        if n % 5 != 0 {
            assert_eq!(fg.f.coeff(n), &int(0), "t^{n}");
        } else {
            assert!(*fg.f.coeff(n) > 0);
        }
    }
    assert_eq!(fg.f.coeff(5), &rat(1, 375000));
}

#[test]
fn f_g_shape_on_every_linear_part() {
    let i = pipeline();
    let fg = extract_f_g(&i).unwrap();
    assert_eq!(fg.g_h.len(), 100);
    for s in fg.g_h.values() {
        assert_eq!(s.coeff(0), &int(1));
    }
    let tau = mirror_map(&i).unwrap();
    assert_eq!(tau.coeff(1), &int(1));
    for n in 2..6 {
        assert_eq!(tau.coeff(n), &int(0));
    }
    assert_eq!(tau.mul(&fg.f), fg.g_j2);
}

#[test]
fn small_j_function_shape() {
    let j = small_j_function(&pipeline()).unwrap();
    check_j_shape(&j).unwrap();
}

#[test]
fn j_h_leading_terms() {
    let i = pipeline();
    for h in linear_labels() {
        let jh = j_h_series(&i, &h).unwrap();
        let lead = jh.coeff(0);
        assert_eq!(lead.get(1).and_then(|v| v.get(&h)), Some(&int(1)), "{h}");
        assert_eq!(lead.iter().count(), 1);
    }
}

#[test]
fn tabulated_lists_two_to_five() {
    let report = cross_check_explicit_lists(&pipeline(), ORDER).unwrap();
    assert!(report.mismatches().is_empty(), "{:?}", report.mismatches().first());
    assert!(report.unexpected.is_empty(), "{:?}", report.unexpected.first());
    assert!(report.entries.len() > 100 * 10);
    let iii_l1 = report
        .entries
        .iter()
        .find(|e| e.case == "(iii)" && e.t_exp == 5 && e.z_exp == 1 && e.h == e.label)
        .unwrap();
    assert_eq!(iii_l1.pipeline, rat(1, 15625));
    let ii_lead = report.entries.iter().find(|e| e.case == "(ii)" && e.t_exp == 3).unwrap();
    assert_eq!(ii_lead.pipeline, Rational::from(rat(2, 25) / 6));
}

#[test]
fn tabulated_list_one_agrees_after_normalization() {
    let report = cross_check_explicit_lists(&pipeline(), ORDER).unwrap();
    assert!(report.list_one_normalized_ok());
    // pipeline leading coefficients are 1/Gamma(k)
    for e in report.list_one.iter().filter(|e| e.l == 0) {
        let want = Rational::from(exact_kernel::rational::factorial(e.k - 1)).recip();
        assert_eq!(e.pipeline, want);
    }
}

#[test]
fn untwisted_terms_match_correlator_sums_low_order() {
    let labels: Vec<FjrwLabel> = lg_state::low_degree_labels().into_iter().filter(|h| *h != j1()).collect();
    assert_eq!(labels.len(), 101);
    assert_eq!(j_un_laurent(&Assignment::new()), j_un_brute_force(&Assignment::new()));
    for (a, h1) in labels.iter().enumerate() {
        for h2 in &labels[a..] {
            let n = if h1 == h2 { assignment(&[(*h1, 2)]) } else { assignment(&[(*h1, 1), (*h2, 1)]) };
            assert_eq!(j_un_laurent(&n), j_un_brute_force(&n), "{h1} {h2}");
        }
        let n = assignment(&[(*h1, 1)]);
        assert_eq!(j_un_laurent(&n), j_un_brute_force(&n));
    }
}

#[test]
fn untwisted_terms_match_on_small_slice_shape() {
    for h in linear_labels() {
        for m in 0..=5u32 {
            let n = assignment(&[(j2(), m), (h, 1)]);
            assert_eq!(j_un_laurent(&n), j_un_brute_force(&n));
        }
    }
    for m in 0..=6u32 {
        let n = assignment(&[(j2(), m)]);
        assert_eq!(j_un_laurent(&n), j_un_brute_force(&n));
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]
    #[test]
    fn untwisted_terms_match_random(picks in proptest::collection::vec(0usize..101, 1..=6)) {
        let labels: Vec<FjrwLabel> =
            lg_state::low_degree_labels().into_iter().filter(|h| *h != j1()).collect();
        let mut n = Assignment::new();
        for p in picks {
            *n.entry(labels[p]).or_insert(0) += 1;
        }
        prop_assert_eq!(j_un_laurent(&n), j_un_brute_force(&n));
    }
}

#[test]
fn delta_is_symplectic() {
    for h in narrow_sectors() {
        let a = delta_factor(&h, 6);
        let b = delta_factor(&h.inverse(), 6).reflect_z();
        assert_eq!(a.times(&b), SDFormal::one(6), "{h}");
    }
}

#[test]
fn delta_negative_control() {
    let h = FjrwLabel::j_pow(1);
    let a = delta_factor(&h, 6);
    let b = delta_factor(&h, 6).reflect_z();
    assert_ne!(a.times(&b), SDFormal::one(6));
}

#[test]
fn g_function_identities() {
    let cutoff = 6;
    let g0 = g_function(&int(0), cutoff);
    for y in [rat(1, 5), rat(2, 5), rat(-3, 7), int(1)] {
        assert_eq!(g_function(&y, cutoff), g0.shift_x(&y), "y = {y}");
    }
    assert_eq!(g0.shift_x(&int(1)), g0.plus(&s_series(cutoff)));
    assert_ne!(g0.shift_x(&int(1)), g0);
}

#[test]
fn sd_specialization_chain() {
    for m in [2u32, 5, 10, 7] {
        assert!(verify_sd_specialization(&assignment(&[(j2(), m)]), 8), "m = {m}");
    }
    let h = FjrwLabel::extended("1,1,1,3,4".parse().unwrap());
    assert!(verify_sd_specialization(&assignment(&[(j2(), 4), (h, 1)]), 8));
}

#[test]
fn modification_factor_closed_form_for_pure_t() {
    for n in 0..=ORDER as u32 {
        let a = assignment(&[(j2(), n)]);
        let (m0, deg) = modification_factor(&a).at_lambda_zero();
        let f = n / 5;
        let c = n % 5;
        assert_eq!(deg, 5 * f);
        let r = exact_kernel::rising_factorial(&rat(i64::from(c) + 1, 5), f);
        let want = Rational::from(&r * &r) * Rational::from(&r * &r) * &r;
        assert_eq!(m0, want, "n = {n}");
    }
}

#[test]
fn z_powers_bounded_by_one() {
    let i = pipeline();
    for s in std::iter::once(&i.base).chain(i.linear.values()) {
        for c in s.coeffs() {
            if let Some(e) = c.max_exp() {
                assert!(e <= 1);
                if e == 1 {
                    assert!(c.get(1).unwrap().labels().all(|l| *l == j1()));
                }
            }
        }
    }
}
