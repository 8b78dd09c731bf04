//! Weakening relations on a finite poset and their translation to
//! sup-preserving endomaps of its downset lattice.

use std::collections::BTreeSet;

use serde::Serialize;
use thiserror::Error;

use crate::lattice::{DownsetLattice, Poset};
use crate::maps::SupMap;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum WeakeningError {
    #[error("relation contains ({0}, {1}) but not the weaker pair ({2}, {3})")]
    NotDownClosed(usize, usize, usize, usize),
    #[error("pair ({0}, {1}) mentions an element outside the poset")]
    OutOfRange(usize, usize),
    #[error("permutation is not an automorphism of the poset")]
    NotAutomorphism,
    #[error("relations live on different posets")]
    PosetMismatch,
}

/// A relation `R ⊆ P × P`, stored as pairs `(y, x)`, closed downward in
/// `y` and upward in `x`: `y' ≤ y`, `x ≤ x'` and `(y, x) ∈ R` give
/// `(y', x') ∈ R`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WeakeningRelation {
    poset: Poset,
    pairs: BTreeSet<(usize, usize)>,
}

#[derive(Serialize)]
struct WireRelation<'a> {
    poset: String,
    pairs: &'a BTreeSet<(usize, usize)>,
}

impl Serialize for WeakeningRelation {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        WireRelation {
            poset: self.poset.fingerprint(),
            pairs: &self.pairs,
        }
        .serialize(s)
    }
}

impl WeakeningRelation {
    pub fn new(poset: &Poset, pairs: impl IntoIterator<Item = (usize, usize)>) -> Result<Self, WeakeningError> {
        let n = poset.size();
        let pairs: BTreeSet<(usize, usize)> = pairs.into_iter().collect();
        for &(y, x) in &pairs {
            if y >= n || x >= n {
                return Err(WeakeningError::OutOfRange(y, x));
            }
            for y2 in (0..n).filter(|&y2| poset.leq(y2, y)) {
                for x2 in (0..n).filter(|&x2| poset.leq(x, x2)) {
                    if !pairs.contains(&(y2, x2)) {
                        return Err(WeakeningError::NotDownClosed(y, x, y2, x2));
                    }
                }
            }
        }
        Ok(WeakeningRelation {
            poset: poset.clone(),
            pairs,
        })
    }

    pub fn poset(&self) -> &Poset {
        &self.poset
    }

    pub fn pairs(&self) -> &BTreeSet<(usize, usize)> {
        &self.pairs
    }

    pub fn contains(&self, y: usize, x: usize) -> bool {
        self.pairs.contains(&(y, x))
    }

    pub fn is_subset(&self, other: &WeakeningRelation) -> bool {
        self.pairs.is_subset(&other.pairs)
    }

    /// `{(y, x) : ∃z. (y, z) ∈ self, (z, x) ∈ other}`.
    pub fn compose(&self, other: &WeakeningRelation) -> Result<WeakeningRelation, WeakeningError> {
        if self.poset != other.poset {
            return Err(WeakeningError::PosetMismatch);
        }
        let n = self.poset.size();
        let pairs = (0..n)
            .flat_map(|y| (0..n).map(move |x| (y, x)))
            .filter(|&(y, x)| (0..n).any(|z| self.contains(y, z) && other.contains(z, x)));
        WeakeningRelation::new(&self.poset, pairs)
    }
}

/// `R_f = {(y, x) : y ∈ f(↓x)}` for an endomap `f` of `D(P)`.
pub fn wk_from_supmap(d: &DownsetLattice, f: &SupMap) -> WeakeningRelation {
    let p = d.poset();
    let n = p.size();
    let pairs = (0..n)
        .flat_map(|y| (0..n).map(move |x| (y, x)))
        .filter(|&(y, x)| d.members(f.apply(d.principal(x))) & (1 << y) != 0);
    WeakeningRelation::new(p, pairs).expect("relation of a sup-preserving map is down-closed")
}

/// `D ↦ ⋃_{x ∈ D} {y : (y, x) ∈ R}`.
pub fn supmap_from_wk(d: &DownsetLattice, r: &WeakeningRelation) -> Result<SupMap, WeakeningError> {
    if r.poset() != d.poset() {
        return Err(WeakeningError::PosetMismatch);
    }
    let n = d.poset().size();
    let table = d
        .lattice()
        .elements()
        .map(|s| {
            let set = d.members(s);
            let image = (0..n)
                .filter(|&y| (0..n).any(|x| set & (1 << x) != 0 && r.contains(y, x)))
                .fold(0u64, |acc, y| acc | (1 << y));
            d.index_of(image).expect("image of a downset is a downset")
        })
        .collect();
    Ok(SupMap::from_raw(table))
}

fn check_automorphism(p: &Poset, g: &[usize]) -> Result<(), WeakeningError> {
    let n = p.size();
    let mut seen = vec![false; n];
    if g.len() != n || g.iter().any(|&v| v >= n || std::mem::replace(&mut seen[v], true)) {
        return Err(WeakeningError::NotAutomorphism);
    }
    if (0..n).all(|x| (0..n).all(|y| p.leq(x, y) == p.leq(g[x], g[y]))) {
        Ok(())
    } else {
        Err(WeakeningError::NotAutomorphism)
    }
}

/// `{(y, x) : x ≰ g(y)}` for an automorphism `g` of the poset.
pub fn wk_from_automorphism(p: &Poset, g: &[usize]) -> Result<WeakeningRelation, WeakeningError> {
    check_automorphism(p, g)?;
    let n = p.size();
    let pairs = (0..n)
        .flat_map(|y| (0..n).map(move |x| (y, x)))
        .filter(|&(y, x)| !p.leq(x, g[y]));
    WeakeningRelation::new(p, pairs)
}

/// The automorphism `D ↦ g[D]` of `D(P)` induced by `g`.
pub fn induced_automorphism(d: &DownsetLattice, g: &[usize]) -> Result<Vec<usize>, WeakeningError> {
    check_automorphism(d.poset(), g)?;
    let n = d.poset().size();
    Ok(d.lattice()
        .elements()
        .map(|s| {
            let set = d.members(s);
            let image = (0..n).filter(|&x| set & (1 << x) != 0).fold(0u64, |acc, x| acc | (1 << g[x]));
            d.index_of(image).expect("automorphisms map downsets to downsets")
        })
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::endo::EndoHomset;
    use crate::maps::{Hom, InfMap};

    #[test]
    fn identity_and_o() {
        let p = Poset::chain(3);
        let d = DownsetLattice::new(&p).unwrap();
        let hom = Hom::endo(d.lattice());
        let id = hom.identity().unwrap();
        let r = wk_from_supmap(&d, &id);
        let expect: BTreeSet<_> = (0..3).flat_map(|y| (0..3).map(move |x| (y, x))).filter(|&(y, x)| y <= x).collect();
        assert_eq!(r.pairs(), &expect);
        let o = hom.raney_down(&InfMap::from_raw(d.lattice().elements().collect()));
        let ro = wk_from_supmap(&d, &o);
        assert_eq!(ro, wk_from_automorphism(&p, &[0, 1, 2]).unwrap());
        assert!(wk_from_supmap(&d, &hom.bottom()).pairs().is_empty());
    }

    #[test]
    fn antichain_swap_is_dualizing() {
        let p = Poset::antichain(2);
        let d = DownsetLattice::new(&p).unwrap();
        let q = EndoHomset::enumerate(d.lattice(), 100).unwrap();
        assert_eq!(q.len(), 16);
        let r = wk_from_automorphism(&p, &[1, 0]).unwrap();
        let f = supmap_from_wk(&d, &r).unwrap();
        let fi = q.index_of(f.table()).unwrap();
        assert!(q.is_dualizing(fi).unwrap());
        assert_eq!(q.hom().star(&f).table(), induced_automorphism(&d, &[1, 0]).unwrap());
    }

    #[test]
    fn rejects_bad_input() {
        let p = Poset::chain(2);
        assert_eq!(
            WeakeningRelation::new(&p, [(1, 0)]),
            Err(WeakeningError::NotDownClosed(1, 0, 0, 0))
        );
        assert_eq!(wk_from_automorphism(&p, &[1, 0]), Err(WeakeningError::NotAutomorphism));
    }
}
