//! Invariants over random finite lattices.
//!
//! A random lattice is a family of subsets of {0,1,2} closed under
//! intersection and containing the full set, ordered by inclusion. These
//! are the lattices with at most three meet-irreducibles, among them M3,
//! N5, chains up to four elements and the cube.

use proptest::prelude::*;

use raney_core::endo::{is_completely_distributive, raney_identity_holds, EndoHomset, DEFAULT_MAX_HOMSET};
use raney_core::lattice::{parse_lattice, Lattice, Poset, DEFAULT_MAX_AUTOMORPHISMS};
use raney_core::oracle;

fn closure_lattice(seeds: &[u8]) -> Lattice {
    let mut family: Vec<u8> = seeds.iter().map(|s| s & 0b111).chain([0b111]).collect();
    loop {
        let size = family.len();
        for i in 0..size {
            for j in 0..size {
                family.push(family[i] & family[j]);
            }
        }
        family.sort_unstable();
        family.dedup();
        if family.len() == size {
            break;
        }
    }
    let names = family.iter().map(|m| format!("{m:03b}")).collect();
    let matrix: Vec<Vec<bool>> = family.iter().map(|&a| family.iter().map(|&b| a & b == a).collect()).collect();
    Lattice::from_poset(Poset::from_leq(names, &matrix).unwrap()).unwrap()
}

fn lattices() -> impl Strategy<Value = Lattice> {
    prop::collection::vec(0u8..8, 0..6).prop_map(|s| closure_lattice(&s))
}

fn config() -> ProptestConfig {
    ProptestConfig {
        cases: 48,
        ..ProptestConfig::default()
    }
}

proptest! {
    #![proptest_config(config())]

    #[test]
    fn axioms_and_duality(l in lattices()) {
        prop_assert!(l.check_axioms().is_ok());
        let dd = l.dual().dual();
        prop_assert_eq!(dd.fingerprint(), l.fingerprint());
        let dual = l.dual();
        let (j, m) = (l.join_irreducibles(), l.meet_irreducibles());
        prop_assert_eq!(dual.join_irreducibles().members().to_vec(), m.members().to_vec());
        prop_assert_eq!(j.members().to_vec(), oracle::join_irreducibles(&l));
        prop_assert_eq!(m.members().to_vec(), oracle::meet_irreducibles(&l));
        let back = parse_lattice(&l.to_json()).unwrap();
        prop_assert_eq!(back.fingerprint(), l.fingerprint());
    }

    #[test]
    fn distributivity_three_ways(l in lattices()) {
        let d = l.is_distributive();
        prop_assert_eq!(is_completely_distributive(&l), d);
        prop_assert_eq!(raney_identity_holds(&l), d);
        prop_assert_eq!(l.distributivity_witness().is_none(), d);
    }

    #[test]
    fn enumeration_matches_filtered_monotone_maps(l in lattices()) {
        let q = EndoHomset::enumerate(&l, DEFAULT_MAX_HOMSET).unwrap();
        let tables: Vec<Vec<usize>> = q.maps().iter().map(|f| f.table().to_vec()).collect();
        prop_assert_eq!(tables, oracle::sup_tables(&l));
    }

    #[test]
    fn per_map_identities(l in lattices()) {
        let q = EndoHomset::enumerate(&l, DEFAULT_MAX_HOMSET).unwrap();
        let hom = q.hom();
        for f in q.maps() {
            prop_assert_eq!(&hom.left_adjoint(&hom.right_adjoint(f)), f);
            prop_assert_eq!(hom.star(f), hom.star_via_right_adjoint(f));
            let t = hom.tight_interior(f);
            prop_assert!(hom.leq(t.table(), f.table()));
            prop_assert_eq!(hom.tight_interior(&t), t.clone());
            prop_assert_eq!(hom.factorize(f).reassemble(), f.table().to_vec());
        }
    }

    #[test]
    fn girard_dualizing_and_tight_unit_follow_distributivity(l in lattices()) {
        let q = EndoHomset::enumerate(&l, DEFAULT_MAX_HOMSET).unwrap();
        let d = l.is_distributive();
        prop_assert_eq!(q.is_girard().unwrap(), d);
        prop_assert_eq!(q.tight_has_unit().unwrap().is_some(), d);
        prop_assert_eq!(q.conucleus_gap().unwrap().is_some(), !d);
        let auts = l.automorphisms(DEFAULT_MAX_AUTOMORPHISMS).unwrap();
        let dualizing = q.find_dualizing().unwrap();
        prop_assert_eq!(dualizing.len(), if d { auts.len() } else { 0 });
    }

    #[test]
    fn residual_tables_match_scan(l in lattices()) {
        let q = EndoHomset::enumerate(&l, DEFAULT_MAX_HOMSET).unwrap();
        prop_assume!(q.len() <= 128);
        let scan = oracle::residuals_by_scan(&q).unwrap();
        let r = q.residuals().unwrap();
        for g in 0..q.len() {
            for h in 0..q.len() {
                prop_assert_eq!(r.under(g, h), scan.under(g, h));
                prop_assert_eq!(r.over(g, h), scan.over(g, h));
            }
        }
    }
}
