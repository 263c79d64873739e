use std::sync::OnceLock;

use correspondence::identity::compare;
use correspondence::*;
use cy_state::CySector;
use exact_kernel::rational::rat;
use exact_kernel::{BigComplex, Rational};
use fjrw_series::{i_fjrw, FjrwIFunction};
use lg_state::{low_degree_labels, FjrwLabel, GroupElement};
use proptest::prelude::*;

const DIGITS: u32 = 80;
const ORDER: usize = 12;

fn ifun() -> &'static FjrwIFunction {
    static I: OnceLock<FjrwIFunction> = OnceLock::new();
    I.get_or_init(|| i_fjrw(ORDER))
}

fn umap() -> &'static UMap {
    static U: OnceLock<UMap> = OnceLock::new();
    U.get_or_init(|| build_u(DIGITS))
}

fn label(s: &str) -> FjrwLabel {
    FjrwLabel::new(s.parse::<GroupElement>().unwrap()).unwrap()
}

#[test]
fn u_has_one_block_per_sector_orbit() {
    let u = umap();
    assert_eq!(u.blocks.len(), 101);
    assert_eq!(u.columns.len(), 204);
    assert!(u.degree_preserving());
    for d in u.block_determinants().unwrap() {
        assert!(d.log10_abs() > -10.0);
    }
}

#[test]
fn c_h_powers() {
    let t = c_h_table().unwrap();
    assert_eq!(t.len(), 101);
    let j = t.iter().find(|(h, _, _)| *h == FjrwLabel::j_pow(1)).unwrap();
    assert_eq!((j.1, j.2), (CySector::new(GroupElement::identity()).unwrap(), 1));
    assert_eq!(c_h_power(&label("1,1,1,3,4")).unwrap(), 1);
    assert_eq!(c_h_power(&label("2,2,2,3,1")).unwrap(), 2);
    assert_eq!(c_h_power(&label("1,1,2,2,4")).unwrap(), 1);
}

#[test]
fn untwisted_leading_term() {
    // (t/5) I_J starts with (t/5) z phi_J; U sends phi_J to the t^1 class of I'_e.
    let f = flatten_fjrw(ifun(), &FjrwLabel::j_pow(1), 1, 1).unwrap();
    assert_eq!(f.len(), 1);
    assert_eq!(f.values().next().unwrap(), &rat(1, 5));
}

#[test]
fn main_identity_all_labels() {
    for (h, _, _) in c_h_table().unwrap() {
        let r = check_main_identity(ifun(), umap(), &h, ORDER).unwrap();
        assert_eq!(r.unmatched, 0, "{h}");
        assert!(r.compared >= 10, "{h}");
        assert!(r.max_rel_error_log10 < -60.0, "{h}: {}", r.max_rel_error_log10);
    }
}

#[test]
fn perturbed_u_breaks_identity() {
    let mut u = umap().clone();
    let h = label("1,1,2,2,4");
    let col = u.columns.get_mut(&h).unwrap();
    col[0].value = col[0].value.scale(&rat(1001, 1000));
    let r = check_main_identity(ifun(), &u, &h, ORDER).unwrap();
    assert!(r.max_rel_error_log10 > -4.0);
}

#[test]
fn missing_coefficient_counts_as_unmatched() {
    let h = FjrwLabel::j_pow(1);
    let lhs = identity::apply_u(umap(), &flatten_fjrw(ifun(), &h, 1, ORDER).unwrap()).unwrap();
    let mut rhs = lhs.clone();
    let k = *rhs.keys().next().unwrap();
    rhs.remove(&k);
    let (_, unmatched, worst) = compare(&lhs, &rhs, DIGITS);
    assert_eq!(unmatched, 1);
    assert!(worst >= -1e-9);
}

#[test]
fn symplectic_with_unit_kappa() {
    let r = check_symplectic(umap(), -40.0).unwrap();
    assert!(r.max_error_log10 < -60.0, "{}", r.max_error_log10);
    assert_eq!(r.table.iter().count(), 161);
    assert!(r.table.iter().all(|(_, k)| *k == 1));
    let e = CySector::new(GroupElement::identity()).unwrap();
    assert_eq!(r.table.kappa(&e), Some(&Rational::from(1)));
}

fn image(u: &UMap, h: &FjrwLabel, a: i64) -> SymplecticVector {
    let mut v = SymplecticVector::default();
    for e in u.column(h).unwrap() {
        v.add(SideLabel::Cy(e.target), e.z_exp + a, &e.value);
    }
    v
}

#[test]
fn omega_preserved_on_sample_pairs() {
    let u = umap();
    let table = check_symplectic(u, -40.0).unwrap().table;
    let pairs = [("J", "J^4"), ("J^2", "J^3"), ("1,1,1,3,4", "4,4,4,2,1"), ("2,2,2,3,1", "3,3,3,2,4"), ("1,1,2,2,4", "3,3,4,4,1")];
    for (a, b) in pairs {
        let (ha, hb) = (FjrwLabel::new(a.parse().unwrap()).unwrap(), FjrwLabel::new(b.parse().unwrap()).unwrap());
        for (za, zb) in [(0, -1), (1, -2), (-1, 0), (0, 0)] {
            let lg = omega_pairing(
                &SymplecticVector::single(SideLabel::Lg(ha), za, BigComplex::one(DIGITS)),
                &SymplecticVector::single(SideLabel::Lg(hb), zb, BigComplex::one(DIGITS)),
                &Pairing::Lg,
                DIGITS,
            )
            .unwrap();
            let cy = omega_pairing(&image(u, &ha, za), &image(u, &hb, zb), &Pairing::Cy(&table), DIGITS).unwrap();
            assert!((&lg - &cy).log10_abs() < -60.0, "{a} {b} {za} {zb}");
        }
    }
}

#[test]
fn mixed_sides_rejected() {
    let f = SymplecticVector::single(SideLabel::Lg(FjrwLabel::j_pow(1)), 0, BigComplex::one(20));
    let g = SymplecticVector::single(SideLabel::Cy(cy_state::cr_basis()[0]), -1, BigComplex::one(20));
    assert!(matches!(omega_pairing(&f, &g, &Pairing::Lg, 20), Err(CorrespondenceError::SideMismatch)));
}

#[test]
fn small_slice_has_full_rank() {
    let r = small_slice_rank(ifun(), 60, None).unwrap();
    assert_eq!((r.generators, r.fjrw_rank, r.cy_rank), (204, 204, 204));
    let r = small_slice_rank(ifun(), 60, Some(17)).unwrap();
    assert_eq!((r.fjrw_rank, r.cy_rank), (203, 203));
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn omega_is_antisymmetric(
        xs in prop::collection::vec((0usize..102, -3i64..3, -20i64..20), 1..6),
        ys in prop::collection::vec((0usize..102, -3i64..3, -20i64..20), 1..6),
    ) {
        let labels = low_degree_labels();
        let build = |v: &[(usize, i64, i64)]| {
            let mut s = SymplecticVector::default();
            for (i, z, c) in v {
                let c = BigComplex::from_rational(&Rational::from(*c), 30);
                s.add(SideLabel::Lg(labels[*i]), *z, &c);
                s.add(SideLabel::Lg(labels[*i].inverse()), -1 - *z, &c);
            }
            s
        };
        let (f, g) = (build(&xs), build(&ys));
        let a = omega_pairing(&f, &g, &Pairing::Lg, 30).unwrap();
        let b = omega_pairing(&g, &f, &Pairing::Lg, 30).unwrap();
        prop_assert!((&a + &b).log10_abs() < -25.0);
    }
}
