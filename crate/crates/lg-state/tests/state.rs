use exact_kernel::rational::{frac, int, rat};
use lg_state::*;
use proptest::prelude::*;

fn el(s: &str) -> GroupElement {
    s.parse().unwrap()
}

fn lab(s: &str) -> FjrwLabel {
    FjrwLabel::new(el(s)).unwrap()
}

#[test]
fn group_enumeration() {
    let g = enumerate_group();
    assert_eq!(g.len(), 625);
    assert!(g.windows(2).all(|w| w[0].residues() < w[1].residues()));
    assert_eq!(g[0], GroupElement::identity());
    assert!(g.contains(&GroupElement::j()));
    assert_eq!(GroupElement::j().residues(), [1; 5]);
    assert!(GroupElement::new([1, 1, 1, 1, 2]).is_err());
    assert!(GroupElement::new([5, 0, 0, 0, 0]).is_err());
}

#[test]
fn group_closure() {
    let g = enumerate_group();
    let set: std::collections::BTreeSet<_> = g.iter().copied().collect();
    for a in g.iter().step_by(7) {
        assert!(set.contains(&a.inverse()));
        assert_eq!(a.mul(&a.inverse()), GroupElement::identity());
        for b in g.iter().step_by(11) {
            assert!(set.contains(&a.mul(b)));
        }
    }
}

#[test]
fn narrow_state_space() {
    let s = narrow_sectors();
    assert_eq!(s.len(), 204);
    let brute = (0..5u32.pow(5))
        .map(|n| [n % 5, n / 5 % 5, n / 25 % 5, n / 125 % 5, n / 625 % 5])
        .filter(|r| r.iter().all(|&x| x != 0) && r.iter().sum::<u32>() % 5 == 0)
        .count();
    assert_eq!(brute, 204);
    assert!(s.contains(&FjrwLabel::j_pow(1)));
    assert!(FjrwLabel::new(GroupElement::identity()).is_err());
    assert!(s.contains(&lab("1,1,1,3,4")));
}

#[test]
fn w_degrees() {
    assert_eq!(w_degree(&FjrwLabel::j_pow(1)), int(0));
    assert_eq!(w_degree(&FjrwLabel::j_pow(2)), int(2));
    assert_eq!(w_degree(&lab("2,2,2,3,1")), int(2));
    for h in narrow_sectors() {
        let d = w_degree(&h);
        assert!([int(0), int(2), int(4), int(6)].contains(&d), "{h}");
    }
    for k in 0..4 {
        assert_eq!(w_degree(&FjrwLabel::j_pow(k + 1)), int(2 * k));
    }
    let by_degree = |d: i64| narrow_sectors().iter().filter(|h| w_degree(h) == d).count();
    assert_eq!((by_degree(0), by_degree(2), by_degree(4), by_degree(6)), (1, 101, 101, 1));
    assert_eq!(low_degree_labels().len(), 102);
}

#[test]
fn i_values_of_inverse() {
    for h in narrow_sectors() {
        let inv = h.inverse().element();
        for k in 0..5 {
            assert_eq!(inv.i_k(k), frac(&(rat(3, 5) - h.element().i_k(k))));
        }
    }
}

#[test]
fn pairing_is_a_permutation_matrix() {
    let s = narrow_sectors();
    assert_eq!(fjrw_pairing(&FjrwLabel::j_pow(1), &FjrwLabel::j_pow(4)).unwrap(), int(1));
    assert_eq!(fjrw_pairing(&FjrwLabel::j_pow(1), &FjrwLabel::j_pow(1)).unwrap(), int(0));
    for a in &s {
        let row: Vec<_> = s.iter().map(|b| fjrw_pairing(a, b).unwrap()).collect();
        assert_eq!(row.iter().filter(|c| **c == 1).count(), 1);
        assert_eq!(row.iter().filter(|c| **c != 0).count(), 1);
        assert_eq!(fjrw_pairing(a, &a.inverse()).unwrap(), int(1));
        for b in s.iter().step_by(13) {
            assert_eq!(fjrw_pairing(a, b), fjrw_pairing(b, a));
        }
    }
    let broad = FjrwLabel::extended(GroupElement::identity());
    assert!(matches!(fjrw_pairing(&broad, &broad), Err(LgError::BroadSector(_))));
}

#[test]
fn w_structures_genus_zero() {
    let j = GroupElement::j();
    assert!(!w_structure_nonempty(&[j, j, j.pow(3)]));
    assert!(w_structure_nonempty(&[j, j, j.pow(4)]));
    // two points: (n-2)/5 = 0 forces Theta_k(h1) + Theta_k(h2) integral, i.e. h2 = h1^{-1}
    for a in enumerate_group().iter().step_by(5) {
        for b in enumerate_group().iter().step_by(3) {
            assert_eq!(w_structure_nonempty(&[*a, *b]), a.mul(b) == GroupElement::identity());
        }
    }
}

#[test]
fn coarse_degrees() {
    // 1/5 - 6/5
    assert_eq!(coarse_degree(3, &[rat(1, 5), rat(1, 5), rat(4, 5)]), int(-1));
    assert_eq!(coarse_degree(2, &[rat(1, 5), rat(4, 5)]), int(-1));
    assert_eq!(coarse_degree(7, &vec![rat(1, 5); 7]), rat(-2, 5));
}

#[test]
fn untwisted_correlators() {
    let j = GroupElement::j();
    assert_eq!(untwisted_correlator(&[j, j], 0, &j.pow(4)), int(1));
    assert_eq!(untwisted_correlator(&[j, j], 1, &j.pow(4)), int(0));
    assert_eq!(untwisted_correlator(&[j.pow(2); 3], 1, &j), int(1));
    assert_eq!(correlator_output(&[j.pow(2); 3]), j);
}

#[test]
fn parsing_and_names() {
    assert_eq!(el("J^3"), GroupElement::j_pow(3));
    assert_eq!(el("e"), GroupElement::identity());
    assert_eq!(FjrwLabel::j_pow(4).name(), "J^4");
    assert_eq!(lab("1,1,1,3,4").name(), "(1,1,1,3,4)");
    assert!("1,2".parse::<GroupElement>().is_err());
}

proptest! {
    #[test]
    fn correlator_output_is_the_only_candidate(picks in prop::collection::vec(0usize..204, 2..6)) {
        let s = narrow_sectors();
        let inputs: Vec<GroupElement> = picks.iter().map(|&i| s[i].element()).collect();
        let l = inputs.len() as u32 - 2;
        let hits: Vec<_> = enumerate_group().into_iter().filter(|h| untwisted_correlator(&inputs, l, h) == 1).collect();
        let out = correlator_output(&inputs);
        let want = if out.is_narrow() { vec![out] } else { vec![] };
        prop_assert_eq!(hits, want);
    }

    #[test]
    fn age_and_iota(r in prop::array::uniform4(0u8..5)) {
        let last = (25 - r.iter().map(|&x| u32::from(x)).sum::<u32>() % 5) % 5;
        let g = GroupElement::new([r[0], r[1], r[2], r[3], last as u8]).unwrap();
        let age: exact_kernel::Rational = (0..5).map(|k| g.theta(k)).sum();
        prop_assert_eq!(g.age(), age.clone());
        prop_assert_eq!(g.iota(), age - int(1));
        prop_assert_eq!(g.n_fixed(), g.residues().iter().filter(|&&x| x == 0).count());
    }
}
