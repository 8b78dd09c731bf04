//! Cross-checks of the closed forms against brute force on the named
//! lattices, plus file round trips.

use raney_core::endo::{enumerate_inf_maps, EndoHomset, DEFAULT_MAX_HOMSET};
use raney_core::lattice::{boolean, chain, mk, n5, parse_lattice, LatticeError};
use raney_core::oracle;
use raney_core::structures::{m5_quantale, FiniteQuantale};
use raney_core::suite::{run_corpus, SuiteConfig};

#[test]
fn homset_sizes() {
    let cases = [
        (chain(5).unwrap(), 70),
        (boolean(3).unwrap(), 512),
        (mk(3).unwrap(), 50),
        (mk(5).unwrap(), 1582),
        (n5(), 43),
    ];
    for (l, size) in cases {
        assert_eq!(EndoHomset::enumerate(&l, DEFAULT_MAX_HOMSET).unwrap().len(), size);
        assert_eq!(enumerate_inf_maps(&l, DEFAULT_MAX_HOMSET).unwrap().len(), size);
    }
}

#[test]
fn homset_cap_is_reported() {
    let err = EndoHomset::enumerate(&mk(5).unwrap(), 100).unwrap_err();
    assert!(err.to_string().contains("100"), "{err}");
}

#[test]
fn enumerations_match_oracle() {
    for l in [chain(4).unwrap(), boolean(2).unwrap(), mk(3).unwrap(), n5()] {
        let q = EndoHomset::enumerate(&l, DEFAULT_MAX_HOMSET).unwrap();
        let tables: Vec<Vec<usize>> = q.maps().iter().map(|f| f.table().to_vec()).collect();
        assert_eq!(tables, oracle::sup_tables(&l));
        let infs: Vec<Vec<usize>> = enumerate_inf_maps(&l, DEFAULT_MAX_HOMSET)
            .unwrap()
            .iter()
            .map(|g| g.table().to_vec())
            .collect();
        assert_eq!(infs, oracle::inf_tables(&l));
    }
}

#[test]
fn per_pair_residuals_match_table_scan() {
    for l in [mk(3).unwrap(), n5()] {
        let q = EndoHomset::enumerate(&l, DEFAULT_MAX_HOMSET).unwrap();
        let tables: Vec<Vec<usize>> = q.maps().iter().map(|f| f.table().to_vec()).collect();
        for g in q.maps() {
            for h in q.maps() {
                assert_eq!(q.residual_left(g, h).table(), oracle::residual_left(&l, &tables, g.table(), h.table()));
                assert_eq!(q.residual_right(g, h).table(), oracle::residual_right(&l, &tables, g.table(), h.table()));
            }
        }
    }
}

#[test]
fn m5_quantale_round_trips() {
    let q = m5_quantale();
    let back = FiniteQuantale::from_json(&q.to_json()).unwrap();
    assert_eq!(back.to_json(), q.to_json());
    assert_eq!(back.dualizing(), q.dualizing());
}

#[test]
fn bottom_must_absorb() {
    // ⊤·⊥ = ⊤ on the two-element chain.
    let l = chain(2).unwrap();
    assert!(FiniteQuantale::new(l, vec![vec![0, 1], vec![1, 1]]).is_err());
}

#[test]
fn parse_errors_name_the_problem() {
    let two_tops = r#"{"elements":["0","a","b"],"covers":[[0,1],[0,2]]}"#;
    match parse_lattice(two_tops) {
        Err(LatticeError::NotALattice { .. }) => {}
        other => panic!("expected NotALattice, got {other:?}"),
    }
    assert!(matches!(parse_lattice("not json"), Err(LatticeError::Format(_))));
}

#[test]
fn corpus_has_no_failures() {
    let report = run_corpus(&SuiteConfig::default());
    assert_eq!(report.failed(), 0, "{}", report.to_text());
}
