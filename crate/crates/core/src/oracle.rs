//! Brute-force references used to cross-check the closed forms.
//!
//! Everything here is deliberately naive: maxima are taken by scanning the
//! whole homset, and enumerations walk every monotone table.

use crate::endo::{EndoError, EndoHomset};
use crate::lattice::Lattice;
use crate::maps::Hom;
use crate::quantale::Residuals;

/// Every monotone table `L → L`, found by assigning elements in index order
/// and pruning on already assigned comparable elements.
pub fn monotone_tables(lattice: &Lattice) -> Vec<Vec<usize>> {
    fn go(l: &Lattice, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        let x = cur.len();
        if x == l.size() {
            out.push(cur.clone());
            return;
        }
        for v in l.elements() {
            let ok = (0..x).all(|y| {
                (!l.leq(y, x) || l.leq(cur[y], v)) && (!l.leq(x, y) || l.leq(v, cur[y]))
            });
            if ok {
                cur.push(v);
                go(l, cur, out);
                cur.pop();
            }
        }
    }
    let mut out = Vec::new();
    go(lattice, &mut Vec::new(), &mut out);
    out
}

/// Sup-preserving tables, filtered from all monotone ones. Sorted.
pub fn sup_tables(lattice: &Lattice) -> Vec<Vec<usize>> {
    let hom = Hom::endo(lattice);
    let mut v: Vec<Vec<usize>> = monotone_tables(lattice)
        .into_iter()
        .filter(|t| hom.is_sup_preserving(t))
        .collect();
    v.sort();
    v
}

/// Inf-preserving tables, filtered from all monotone ones. Sorted.
pub fn inf_tables(lattice: &Lattice) -> Vec<Vec<usize>> {
    let hom = Hom::endo(lattice);
    let mut v: Vec<Vec<usize>> = monotone_tables(lattice)
        .into_iter()
        .filter(|t| hom.is_inf_preserving(t))
        .collect();
    v.sort();
    v
}

fn compose(g: &[usize], f: &[usize]) -> Vec<usize> {
    f.iter().map(|&v| g[v]).collect()
}

/// Pointwise join of every table in `maps` satisfying `keep`.
fn join_where<'m>(
    lattice: &Lattice,
    maps: impl IntoIterator<Item = &'m Vec<usize>>,
    mut keep: impl FnMut(&[usize]) -> bool,
) -> Vec<usize> {
    let mut acc = vec![lattice.bottom(); lattice.size()];
    for f in maps {
        if keep(f) {
            for (a, &v) in acc.iter_mut().zip(f) {
                *a = lattice.join(*a, v);
            }
        }
    }
    acc
}

/// `⋁{f : g ∘ f ≤ h}` over `maps`.
pub fn residual_left(lattice: &Lattice, maps: &[Vec<usize>], g: &[usize], h: &[usize]) -> Vec<usize> {
    let hom = Hom::endo(lattice);
    join_where(lattice, maps, |f| hom.leq(&compose(g, f), h))
}

/// `⋁{g : g ∘ f ≤ h}` over `maps`.
pub fn residual_right(lattice: &Lattice, maps: &[Vec<usize>], h: &[usize], f: &[usize]) -> Vec<usize> {
    let hom = Hom::endo(lattice);
    join_where(lattice, maps, |g| hom.leq(&compose(g, f), h))
}

/// `⋁{f ∈ maps : f ≤ k}`, the largest sup-preserving map below `k`.
pub fn sup_interior(lattice: &Lattice, maps: &[Vec<usize>], k: &[usize]) -> Vec<usize> {
    let hom = Hom::endo(lattice);
    join_where(lattice, maps, |f| hom.leq(f, k))
}

/// Both residual tables of the homset as joins over the whole carrier:
/// `g \ h = ⋁{f : g ∘ f ≤ h}` and `h / f = ⋁{g : g ∘ f ≤ h}`, using only
/// composition, the pointwise order and pointwise joins.
pub fn residuals_by_scan(q: &EndoHomset) -> Result<Residuals, EndoError> {
    let ql = q.as_lattice()?;
    let m = q.len();
    let mut under = vec![ql.bottom(); m * m];
    let mut over = vec![ql.bottom(); m * m];
    for g in 0..m {
        for f in 0..m {
            let gf = q.compose(g, f)?;
            for h in 0..m {
                if q.leq(gf, h) {
                    under[g * m + h] = ql.join(under[g * m + h], f);
                    over[h * m + f] = ql.join(over[h * m + f], g);
                }
            }
        }
    }
    Ok(Residuals::build(m, |g, h| under[g * m + h], |h, f| over[h * m + f]))
}

/// Join-irreducibles counted by lower covers: exactly one.
pub fn join_irreducibles(lattice: &Lattice) -> Vec<usize> {
    lattice
        .elements()
        .filter(|&x| lattice.lower_covers(x).len() == 1)
        .collect()
}

/// Meet-irreducibles counted by upper covers: exactly one.
pub fn meet_irreducibles(lattice: &Lattice) -> Vec<usize> {
    lattice
        .elements()
        .filter(|&x| lattice.upper_covers(x).len() == 1)
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lattice::{boolean, chain, mk, n5};

    #[test]
    fn counts() {
        assert_eq!(monotone_tables(&chain(3).unwrap()).len(), 10);
        assert_eq!(sup_tables(&chain(3).unwrap()).len(), 6);
        assert_eq!(sup_tables(&boolean(2).unwrap()).len(), 16);
        assert_eq!(sup_tables(&mk(3).unwrap()).len(), 50);
        assert_eq!(inf_tables(&n5()).len(), sup_tables(&n5()).len());
    }

    #[test]
    fn residual_scan_on_chain2() {
        let l = chain(2).unwrap();
        let maps = sup_tables(&l);
        assert_eq!(residual_left(&l, &maps, &[0, 0], &[0, 0]), vec![0, 1]);
        assert_eq!(residual_right(&l, &maps, &[0, 0], &[0, 1]), vec![0, 0]);
    }
}
