//! Natural bimorphisms `L × L^op → Q(L, L)` and the abstract form of the
//! Raney construction.

use std::collections::BTreeMap;

use serde::Serialize;
use thiserror::Error;

use crate::endo::{enumerate_inf_maps, is_completely_distributive, EndoError, EndoHomset};
use crate::maps::{extend_bimorphism, Hom, SupMap};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum NaturalKind {
    /// Every `ψ(y, x)` is `⊥`.
    Trivial,
    /// `ψ(y, x) = e_{y,x}`.
    Raney,
    Other,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct NaturalArrow {
    pub kind: NaturalKind,
    /// Seeds `f₀` (homset indices) giving this arrow.
    pub seeds: Vec<usize>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct NaturalReport {
    pub arrows: Vec<NaturalArrow>,
    /// Distinct families `c_y ∘ f₀ ∘ a_x` that failed naturality.
    pub rejected: usize,
}

impl NaturalReport {
    pub fn kinds(&self) -> Vec<NaturalKind> {
        self.arrows.iter().map(|a| a.kind).collect()
    }
}

/// Tests every seed `f₀` of the homset: `ψ(y, x) = c_y ∘ f₀ ∘ a_x` is kept
/// when `ψ(f(y), x) = f ∘ ψ(y, x)` and `ψ(y, ρg(x)) = ψ(y, x) ∘ g` for all
/// `f`, `g` in the homset and all `x`, `y`. Seeds giving the same family
/// are grouped.
pub fn classify_natural(q: &EndoHomset) -> NaturalReport {
    let l = q.lattice();
    let n = l.size();
    let hom = q.hom();
    let rhos: Vec<Vec<usize>> = q.maps().iter().map(|g| hom.right_adjoint(g).into_table()).collect();
    let a: Vec<SupMap> = l.elements().map(|x| hom.a(x)).collect();
    let c: Vec<SupMap> = l.elements().map(|y| hom.c(y)).collect();

    let mut families: BTreeMap<Vec<Vec<usize>>, Vec<usize>> = BTreeMap::new();
    for (i, f0) in q.maps().iter().enumerate() {
        // psi[y * n + x] as a table.
        let psi: Vec<Vec<usize>> = (0..n * n)
            .map(|k| c[k / n].after(&f0.after(&a[k % n])).into_table())
            .collect();
        families.entry(psi).or_default().push(i);
    }

    let mut arrows = Vec::new();
    let mut rejected = 0;
    for (psi, seeds) in families {
        let at = |y: usize, x: usize| &psi[y * n + x];
        let natural_left = q.maps().iter().all(|f| {
            l.elements().all(|y| {
                l.elements()
                    .all(|x| *at(f.apply(y), x) == f.compose_table(at(y, x)))
            })
        });
        let natural_right = natural_left
            && q.maps().iter().zip(&rhos).all(|(g, rho)| {
                l.elements().all(|y| {
                    l.elements().all(|x| {
                        let after: Vec<usize> = g.table().iter().map(|&v| at(y, x)[v]).collect();
                        *at(y, rho[x]) == after
                    })
                })
            });
        if !natural_right {
            rejected += 1;
            continue;
        }
        let kind = if psi.iter().all(|t| t.iter().all(|&v| v == l.bottom())) {
            NaturalKind::Trivial
        } else if l
            .elements()
            .all(|y| l.elements().all(|x| at(y, x) == hom.e(y, x).table()))
        {
            NaturalKind::Raney
        } else {
            NaturalKind::Other
        };
        arrows.push(NaturalArrow { kind, seeds });
    }
    arrows.sort_by_key(|a| (a.kind, a.seeds.clone()));
    NaturalReport { arrows, rejected }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FamilyError {
    #[error("family has the wrong shape: {0}")]
    Shape(String),
    #[error("f is not sup-preserving")]
    FNotSupPreserving,
    #[error("g does not send meets to the required meets or joins")]
    GNotMeetReversing,
    #[error(transparent)]
    Homset(#[from] EndoError),
}

/// A bimorphism `ψ : L × L^op → Q(L, L)` of one of the two shapes that only
/// take two values.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "shape", rename_all = "kebab-case")]
pub enum RaneyFamily {
    /// `ψ(y, x) = f(y) ∘ a_{g(x)}` with `f : L → Q(L, L)` sup-preserving
    /// (tables in `f[y]`) and `g : L → L` inf-preserving.
    PostA { f: Vec<Vec<usize>>, g: Vec<usize> },
    /// `ψ(y, x) = c_{f(y)} ∘ g(x)` with `f : L → L` sup-preserving and
    /// `g : L → Q(L, L)` sending meets to joins (tables in `g[x]`).
    PreC { f: Vec<usize>, g: Vec<Vec<usize>> },
}

impl RaneyFamily {
    /// `f(y) = c_y`, `g = id`, so `ψ = e`.
    pub fn e_via_c(hom: &Hom) -> Self {
        let l = hom.source;
        RaneyFamily::PostA {
            f: l.elements().map(|y| hom.c(y).into_table()).collect(),
            g: l.elements().collect(),
        }
    }

    /// `f = id`, `g(x) = a_x`, so again `ψ = e`.
    pub fn e_via_a(hom: &Hom) -> Self {
        let l = hom.source;
        RaneyFamily::PreC {
            f: l.elements().collect(),
            g: l.elements().map(|x| hom.a(x).into_table()).collect(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct AbstractRaneyVerdict {
    /// Each `ψ(y, x)` has a chain as image.
    pub chain_images: bool,
    /// `ψ` preserves joins in `y` and turns meets in `x` into joins.
    pub bimorphism: bool,
    /// `id = ψ̃(h)` for some inf-preserving `h`.
    pub identity_in_image: bool,
    pub completely_distributive: bool,
}

impl AbstractRaneyVerdict {
    /// `chain_images ∧ identity_in_image ⇒ completely_distributive`.
    pub fn implication_holds(&self) -> bool {
        !(self.chain_images && self.identity_in_image) || self.completely_distributive
    }
}

fn is_map_into(q: &EndoHomset, rows: &[Vec<usize>]) -> bool {
    rows.len() == q.lattice().size() && rows.iter().all(|t| q.index_of(t).is_some())
}

pub fn abstract_raney_check(q: &EndoHomset, family: &RaneyFamily) -> Result<AbstractRaneyVerdict, FamilyError> {
    let l = q.lattice();
    let n = l.size();
    let hom = q.hom();
    let shape = |what: &str| FamilyError::Shape(what.to_string());
    let table = |t: &[usize]| q.index_of(t).map(|i| q.map(i).clone());

    let psi: Vec<SupMap> = match family {
        RaneyFamily::PostA { f, g } => {
            if !is_map_into(q, f) {
                return Err(shape("f must assign a sup-preserving endomap to each element"));
            }
            if g.len() != n || g.iter().any(|&v| v >= n) {
                return Err(shape("g must be an endomap of the lattice"));
            }
            let fq: Vec<SupMap> = f.iter().map(|t| table(t).expect("checked")).collect();
            let sup = l.elements().all(|y1| {
                l.elements()
                    .all(|y2| fq[l.join(y1, y2)] == hom.join(&fq[y1], &fq[y2]))
            }) && fq[l.bottom()] == hom.bottom();
            if !sup {
                return Err(FamilyError::FNotSupPreserving);
            }
            if !hom.is_inf_preserving(g) {
                return Err(FamilyError::GNotMeetReversing);
            }
            (0..n * n)
                .map(|k| fq[k / n].after(&hom.a(g[k % n])))
                .collect()
        }
        RaneyFamily::PreC { f, g } => {
            if f.len() != n || f.iter().any(|&v| v >= n) {
                return Err(shape("f must be an endomap of the lattice"));
            }
            if !is_map_into(q, g) {
                return Err(shape("g must assign a sup-preserving endomap to each element"));
            }
            if !hom.is_sup_preserving(f) {
                return Err(FamilyError::FNotSupPreserving);
            }
            let gq: Vec<SupMap> = g.iter().map(|t| table(t).expect("checked")).collect();
            let reversing = l.elements().all(|x1| {
                l.elements()
                    .all(|x2| gq[l.meet(x1, x2)] == hom.join(&gq[x1], &gq[x2]))
            }) && gq[l.top()] == hom.bottom();
            if !reversing {
                return Err(FamilyError::GNotMeetReversing);
            }
            (0..n * n)
                .map(|k| hom.c(f[k / n]).after(&gq[k % n]))
                .collect()
        }
    };
    let at = |y: usize, x: usize| &psi[y * n + x];

    let chain_images = psi.iter().all(|p| {
        p.table()
            .iter()
            .all(|&u| p.table().iter().all(|&v| l.leq(u, v) || l.leq(v, u)))
    });
    let bimorphism = l.elements().all(|x| {
        *at(l.bottom(), x) == hom.bottom()
            && *at(x, l.top()) == hom.bottom()
            && l.elements().all(|y| {
                l.elements().all(|z| {
                    *at(l.join(y, z), x) == hom.join(at(y, x), at(z, x))
                        && *at(x, l.meet(y, z)) == hom.join(at(x, y), at(x, z))
                })
            })
    });
    let id = hom.identity().expect("endo");
    let identity_in_image = enumerate_inf_maps(l, usize::MAX)?
        .iter()
        .any(|h| extend_bimorphism(&hom, l, h, |y, x| at(y, x).clone()) == id);
    Ok(AbstractRaneyVerdict {
        chain_images,
        bimorphism,
        identity_in_image,
        completely_distributive: is_completely_distributive(l),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::endo::DEFAULT_MAX_HOMSET;
    use crate::lattice::{boolean, chain, mk, Lattice};

    fn homset(l: &Lattice) -> EndoHomset {
        EndoHomset::enumerate(l, DEFAULT_MAX_HOMSET).unwrap()
    }

    #[test]
    fn two_arrows() {
        for l in [chain(2).unwrap(), chain(3).unwrap(), boolean(2).unwrap(), mk(3).unwrap()] {
            let r = classify_natural(&homset(&l));
            assert_eq!(r.kinds(), vec![NaturalKind::Trivial, NaturalKind::Raney]);
            assert_eq!(r.arrows[0].seeds.len(), 1);
        }
    }

    #[test]
    fn degenerate_chain1() {
        let q = homset(&chain(1).unwrap());
        let r = classify_natural(&q);
        assert_eq!(r.kinds(), vec![NaturalKind::Trivial]);
    }

    #[test]
    fn e_families() {
        let b2 = boolean(2).unwrap();
        let q = homset(&b2);
        for fam in [RaneyFamily::e_via_c(&q.hom()), RaneyFamily::e_via_a(&q.hom())] {
            let v = abstract_raney_check(&q, &fam).unwrap();
            assert!(v.chain_images && v.bimorphism && v.identity_in_image && v.completely_distributive);
        }
        let m3 = mk(3).unwrap();
        let q = homset(&m3);
        let v = abstract_raney_check(&q, &RaneyFamily::e_via_c(&q.hom())).unwrap();
        assert!(v.chain_images && !v.identity_in_image && v.implication_holds());
    }

    #[test]
    fn malformed_families() {
        let c3 = chain(3).unwrap();
        let q = homset(&c3);
        let bad = RaneyFamily::PostA {
            f: vec![vec![0, 0, 0]; 2],
            g: vec![0, 1, 2],
        };
        assert!(matches!(abstract_raney_check(&q, &bad), Err(FamilyError::Shape(_))));
        let not_sup = RaneyFamily::PostA {
            f: vec![vec![0, 1, 2]; 3],
            g: vec![0, 1, 2],
        };
        assert_eq!(abstract_raney_check(&q, &not_sup), Err(FamilyError::FNotSupPreserving));
        let zero = RaneyFamily::PreC {
            f: vec![0, 1, 2],
            g: vec![vec![0, 0, 0]; 3],
        };
        let v = abstract_raney_check(&q, &zero).unwrap();
        assert!(v.chain_images && v.bimorphism && !v.identity_in_image);
        let hom = q.hom();
        let not_reversing = RaneyFamily::PreC {
            f: vec![0, 1, 2],
            g: (0..3).map(|x| hom.c(x).into_table()).collect(),
        };
        assert_eq!(abstract_raney_check(&q, &not_reversing), Err(FamilyError::GNotMeetReversing));
    }
}
