use std::collections::BTreeMap;

use cy_state::*;
use exact_kernel::rational::{int, rat};
use exact_kernel::{BigComplex, Rational};
use lg_state::{narrow_sectors, FjrwLabel, GroupElement};
use proptest::prelude::*;

fn sector(s: &str) -> CySector {
    CySector::new(s.parse::<GroupElement>().unwrap()).unwrap()
}

fn lab(s: &str) -> FjrwLabel {
    FjrwLabel::new(s.parse().unwrap()).unwrap()
}

#[test]
fn sector_counts() {
    let s = enumerate_sectors();
    assert_eq!(s.len(), 161);
    let by_dim = |d: usize| s.iter().filter(|g| g.dimension() == d).count();
    assert_eq!((by_dim(3), by_dim(1), by_dim(0), by_dim(2)), (1, 40, 120, 0));
    assert_eq!(s.iter().map(|g| g.dimension() + 1).sum::<usize>(), 204);
    assert_eq!(sector("e").dimension(), 3);
    let g = sector("0,0,0,2,3");
    assert_eq!((g.dimension(), g.age()), (1, int(1)));
    assert!(CySector::new("1,1,1,1,1".parse().unwrap()).is_err());
}

#[test]
fn graded_basis() {
    let b = cr_basis();
    assert_eq!(b.len(), 204);
    let e: Vec<_> = b.iter().filter(|l| l.sector.is_untwisted()).map(|l| l.cr_degree()).collect();
    assert_eq!(e, vec![int(0), int(2), int(4), int(6)]);
    let deg2: Vec<_> = b.iter().filter(|l| l.cr_degree() == 2).collect();
    assert_eq!(deg2.len(), 101);
    assert!(deg2.iter().all(|l| (l.sector.is_untwisted() && l.h_power == 1) || (l.h_power == 0 && l.sector.age() == 1)));
    assert!(CyBasisLabel::new(sector("0,0,0,2,3"), 2).is_none());
}

#[test]
fn mu_rows() {
    let e = sector("e");
    assert_eq!(mu_isomorphism(&CyBasisLabel::new(e, 0).unwrap()).unwrap(), FjrwLabel::j_pow(1));
    assert_eq!(mu_isomorphism(&CyBasisLabel::new(e, 3).unwrap()).unwrap(), FjrwLabel::j_pow(4));
    let g = CyBasisLabel::new(sector("0,0,0,2,3"), 0).unwrap();
    assert_eq!(mu_isomorphism(&g).unwrap(), lab("1,1,1,3,4"));
    let g = CyBasisLabel::new(sector("0,0,0,1,4"), 1).unwrap();
    assert_eq!(mu_isomorphism(&g).unwrap(), lab("3,3,3,4,2"));
    let g = CyBasisLabel::new(sector("0,0,1,1,3"), 0).unwrap();
    assert_eq!(mu_isomorphism(&g).unwrap(), lab("1,1,2,2,4"));
}

#[test]
fn mu_is_a_graded_bijection() {
    assert!(mu_is_bijective());
    assert!(mu_preserves_degree());
    for h in narrow_sectors() {
        let l = mu_inverse(&h).unwrap();
        assert_eq!(mu_isomorphism(&l).unwrap(), h);
    }
}

#[test]
fn pairing_values() {
    let t = PairingTable::uniform(rat(1, 25));
    let e = sector("e");
    let h = |a| CyBasisLabel::new(e, a).unwrap();
    assert_eq!(cy_pairing(&h(1), &h(2), &t), rat(1, 25));
    assert_eq!(cy_pairing(&h(0), &h(1), &t), int(0));
    let g = sector("0,0,0,2,3");
    let a = CyBasisLabel::new(g, 0).unwrap();
    let b = CyBasisLabel::new(g.inverse(), 1).unwrap();
    assert_eq!(cy_pairing(&a, &b, &t), rat(1, 25));
    assert_eq!(cy_pairing(&a, &CyBasisLabel::new(g, 1).unwrap(), &t), int(0));
}

#[test]
fn pairing_symmetric_and_nondegenerate() {
    let t = PairingTable::uniform(int(1));
    let b = cr_basis();
    for x in &b {
        let partners: Vec<_> = b.iter().filter(|y| cy_pairing(x, y, &t) != 0).collect();
        assert_eq!(partners.len(), 1, "{x}");
        assert_eq!(cy_pairing(partners[0], x, &t), int(1));
    }
    assert_eq!(global_pairing_constant(&t), Some(int(1)));
    assert_eq!(global_pairing_constant(&PairingTable::uniform(rat(1, 25))), Some(int(25)));
}

#[test]
fn point_sectors_have_companions() {
    for s in enumerate_sectors().into_iter().filter(|s| s.dimension() == 0) {
        let c = companion_sector(&s).unwrap();
        assert_eq!(c.dimension(), 0, "{s}");
    }
    assert_eq!(companion_sector(&sector("0,0,1,1,3")), Some(sector("4,4,0,0,2")));
    assert_eq!(companion_sector(&sector("0,0,2,2,1")), Some(sector("3,3,0,0,4")));
    assert_eq!(companion_sector(&sector("0,0,0,2,3")), None);
}

fn c(x: &Rational) -> BigComplex {
    BigComplex::from_rational(x, 50)
}

#[test]
fn pairing_solve_recovers_constants() {
    let g = sector("0,0,0,2,3").element();
    let eqs = vec![
        PairingEquation { terms: vec![(GroupElement::identity(), c(&int(5)))], rhs: c(&rat(1, 5)) },
        PairingEquation { terms: vec![(g, c(&int(2))), (g.inverse(), c(&int(1)))], rhs: c(&int(1)) },
        PairingEquation { terms: vec![(g, c(&int(6)))], rhs: c(&int(2)) },
    ];
    let (t, _) = solve_pairing_constants(&eqs, -30.0).unwrap();
    assert_eq!(t.kappa(&sector("e")), Some(&rat(1, 25)));
    assert_eq!(t.kappa(&sector("0,0,0,2,3")), Some(&rat(1, 3)));
    assert_eq!(t.kappa(&sector("0,0,0,3,2")), Some(&rat(1, 3)));
    let bad = vec![
        PairingEquation { terms: vec![(GroupElement::identity(), c(&int(1)))], rhs: c(&int(1)) },
        PairingEquation { terms: vec![(GroupElement::identity(), c(&int(1)))], rhs: c(&int(2)) },
    ];
    assert!(matches!(solve_pairing_constants(&bad, -30.0), Err(CyError::InconsistentPairing { .. })));
    let negative = vec![PairingEquation { terms: vec![(GroupElement::identity(), c(&int(1)))], rhs: c(&int(-1)) }];
    assert!(solve_pairing_constants(&negative, -30.0).is_err());
}

#[test]
fn rational_recognition() {
    assert_eq!(recognize_rational(&c(&rat(7, 25)), 1000, -30.0), Some(rat(7, 25)));
    let pi = BigComplex::pi(50);
    assert_eq!(recognize_rational(&pi, 1000, -30.0), None);
    assert_eq!(recognize_rational(&BigComplex::i(50), 1000, -30.0), None);
}

proptest! {
    #[test]
    fn mu_commutes_with_permutations(i in 0usize..161, p in 0usize..120) {
        let s = enumerate_sectors()[i];
        let perm = permutations5()[p];
        let t = CySector::new(s.element().permute(&perm)).unwrap();
        for a in 0..=s.dimension() {
            let h = mu_isomorphism(&CyBasisLabel::new(s, a).unwrap()).unwrap();
            let k = mu_isomorphism(&CyBasisLabel::new(t, a).unwrap()).unwrap();
            prop_assert_eq!(FjrwLabel::extended(h.element().permute(&perm)), k);
        }
    }

    #[test]
    fn uniform_table_keys(i in 0usize..161) {
        let s = enumerate_sectors()[i];
        let t = PairingTable::uniform(rat(2, 7));
        prop_assert_eq!(t.kappa(&s), t.kappa(&s.inverse()));
        let m: BTreeMap<_, _> = t.iter().map(|(g, k)| (*g, k.clone())).collect();
        prop_assert_eq!(PairingTable::from_map(m), t);
    }
}
