//! The default verification corpus.

use crate::lattice::{boolean, chain, mk, n5, Poset};

use super::Subject;

/// Every poset with one to three elements, up to isomorphism.
pub fn small_posets() -> Vec<(&'static str, Poset)> {
    let names = |n: usize| (0..n).map(|i| format!("p{i}")).collect::<Vec<_>>();
    let poset = |n: usize, covers: &[(usize, usize)]| Poset::from_covers(names(n), covers).expect("valid poset");
    vec![
        ("point", poset(1, &[])),
        ("chain2", poset(2, &[(0, 1)])),
        ("antichain2", poset(2, &[])),
        ("chain3", poset(3, &[(0, 1), (1, 2)])),
        ("antichain3", poset(3, &[])),
        ("vee", poset(3, &[(0, 1), (0, 2)])),
        ("wedge", poset(3, &[(0, 2), (1, 2)])),
        ("chain2+point", poset(3, &[(0, 1)])),
    ]
}

/// Chains of length 1 to 5, Boolean lattices of rank 1 to 3, `M3`, `M5`,
/// `N5`, and the downset lattices of [`small_posets`].
pub fn default_corpus() -> Vec<Subject> {
    let mut out = Vec::new();
    for n in 1..=5 {
        out.push(Subject::new(format!("chain{n}"), chain(n).expect("chain")));
    }
    for k in 1..=3 {
        out.push(Subject::new(format!("boolean{k}"), boolean(k).expect("boolean")));
    }
    out.push(Subject::new("m3", mk(3).expect("M3")));
    out.push(Subject::new("m5", mk(5).expect("M5")));
    out.push(Subject::new("n5", n5()));
    for (name, p) in small_posets() {
        out.push(Subject::downsets(format!("downsets({name})"), p).expect("small downset lattice"));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lattice::order_isomorphisms;

    #[test]
    fn posets_are_pairwise_non_isomorphic() {
        let ps = small_posets();
        for (i, (_, a)) in ps.iter().enumerate() {
            for (_, b) in &ps[i + 1..] {
                assert!(order_isomorphisms(a, b, 10).unwrap().is_empty());
            }
        }
        assert_eq!(ps.len(), 8);
    }

    #[test]
    fn corpus_sizes() {
        let sizes: Vec<usize> = default_corpus().iter().map(|s| s.lattice.size()).collect();
        assert_eq!(sizes, vec![1, 2, 3, 4, 5, 2, 4, 8, 5, 7, 5, 2, 3, 4, 4, 8, 5, 5, 6]);
    }
}
