//! The quantale `Q(L, L)` of sup-preserving endomaps of a finite lattice.
//!
//! [`EndoHomset`] enumerates the carrier once. Pairwise tables (composition,
//! residuals, the lattice structure of `Q(L, L)`) are built lazily on first
//! use because they are quadratic in the homset size.

use std::collections::HashMap;
use std::sync::OnceLock;

use serde::Serialize;
use thiserror::Error;

use crate::lattice::Lattice;
use crate::lattice::Poset;
use crate::maps::{Equiv, Hom, InfMap, SupMap};
use crate::quantale::Residuals;

/// Default cap on the number of maps an enumeration may produce.
pub const DEFAULT_MAX_HOMSET: usize = 100_000;
/// Largest homset for which quadratic tables are materialized.
pub const MAX_TABLE_HOMSET: usize = 4096;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum EndoError {
    #[error("homset enumeration exceeded the cap of {cap} maps ({partial} found before stopping)")]
    HomsetCap { cap: usize, partial: usize },
    #[error("homset has {size} maps; pairwise tables are limited to {cap}")]
    TableCap { size: usize, cap: usize },
    #[error("map is not an element of the homset")]
    NotInHomset,
    #[error("map is not dualizing")]
    NotDualizing,
    #[error("permutation is not an automorphism of the lattice")]
    NotAutomorphism,
    #[error("lattice is not completely distributive")]
    NotCompletelyDistributive,
    #[error("inconsistent result: {0}")]
    Inconsistent(String),
}

struct Tables {
    compose: Vec<u32>,
    leq: Vec<bool>,
}

/// All sup-preserving maps `L → L`, sorted lexicographically by table.
pub struct EndoHomset {
    lattice: Lattice,
    maps: Vec<SupMap>,
    index: HashMap<Vec<usize>, usize>,
    identity: usize,
    bottom: usize,
    top: usize,
    tables: OnceLock<Tables>,
    residuals: OnceLock<Residuals>,
    q_lattice: OnceLock<Lattice>,
}

impl std::fmt::Debug for EndoHomset {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("EndoHomset")
            .field("lattice_size", &self.lattice.size())
            .field("maps", &self.maps.len())
            .finish()
    }
}

/// Sup-preserving tables `L → L`.
///
/// Assigns values to the join-irreducibles (monotonically, in a linear
/// extension), extends by `x ↦ ⋁{v(j) : j ≤ x}`, and keeps the extensions
/// that preserve binary joins.
fn enumerate_tables(lattice: &Lattice, cap: usize) -> Result<Vec<Vec<usize>>, EndoError> {
    let hom = Hom::endo(lattice);
    let mut js: Vec<usize> = lattice.join_irreducibles().members().to_vec();
    js.sort_by_key(|&j| (lattice.elements().filter(|&y| lattice.leq(y, j)).count(), j));
    let below: Vec<Vec<usize>> = lattice
        .elements()
        .map(|x| (0..js.len()).filter(|&i| lattice.leq(js[i], x)).collect())
        .collect();

    struct Search<'l> {
        lattice: &'l Lattice,
        hom: Hom<'l>,
        js: Vec<usize>,
        below: Vec<Vec<usize>>,
        values: Vec<usize>,
        out: Vec<Vec<usize>>,
        cap: usize,
    }

    impl Search<'_> {
        fn go(&mut self, i: usize) -> Result<(), EndoError> {
            let l = self.lattice;
            if i == self.js.len() {
                let table: Vec<usize> = l
                    .elements()
                    .map(|x| l.join_all(self.below[x].iter().map(|&k| self.values[k])))
                    .collect();
                if self.hom.is_sup_preserving(&table) {
                    if self.out.len() == self.cap {
                        return Err(EndoError::HomsetCap {
                            cap: self.cap,
                            partial: self.out.len(),
                        });
                    }
                    self.out.push(table);
                }
                return Ok(());
            }
            for v in l.elements() {
                let monotone = (0..i).all(|k| !l.leq(self.js[k], self.js[i]) || l.leq(self.values[k], v));
                if monotone {
                    self.values[i] = v;
                    self.go(i + 1)?;
                }
            }
            Ok(())
        }
    }

    let mut search = Search {
        lattice,
        hom,
        values: vec![0; js.len()],
        js,
        below,
        out: Vec::new(),
        cap,
    };
    search.go(0)?;
    let mut out = search.out;
    out.sort();
    Ok(out)
}

/// All inf-preserving endomaps of `lattice`, obtained as the sup-preserving
/// endomaps of the dual lattice.
pub fn enumerate_inf_maps(lattice: &Lattice, cap: usize) -> Result<Vec<InfMap>, EndoError> {
    Ok(enumerate_tables(&lattice.dual(), cap)?
        .into_iter()
        .map(InfMap::from_raw)
        .collect())
}

/// `∨∧id = id`, which for finite lattices is complete distributivity.
pub fn is_completely_distributive(lattice: &Lattice) -> bool {
    let hom = Hom::endo(lattice);
    let id = hom.identity().expect("endo homset");
    hom.tight_interior(&id) == id
}

/// The identity `z = ⋁_{z ≰ x} ⋀_{y ≰ x} y`, checked elementwise without
/// going through map transforms.
pub fn raney_identity_holds(lattice: &Lattice) -> bool {
    let l = lattice;
    l.elements().all(|z| {
        let rhs = l.join_all(
            l.elements()
                .filter(|&x| !l.leq(z, x))
                .map(|x| l.meet_all(l.elements().filter(|&y| !l.leq(y, x)))),
        );
        rhs == z
    })
}

/// `g \ h`: the greatest sup-preserving interior of `ρg ∘ h`.
pub fn residual_left(hom: &Hom, g: &SupMap, h: &SupMap) -> SupMap {
    let rho = hom.right_adjoint(g);
    hom.interior_of(h.table().iter().map(|&v| rho.apply(v)).collect())
}

/// `h / f = ⋀_x h(x) ⊗̄ f(x)`, the meet taken in the homset.
pub fn residual_right(hom: &Hom, h: &SupMap, f: &SupMap) -> SupMap {
    let l = hom.source;
    // Pointwise meet of the tensors `h(x) ⊗̄ f(x)`, then the homset interior.
    let pointwise: Vec<usize> = l
        .elements()
        .map(|t| {
            l.meet_all(l.elements().map(|x| {
                if !l.leq(t, f.apply(x)) {
                    l.top()
                } else if t == l.bottom() {
                    l.bottom()
                } else {
                    h.apply(x)
                }
            }))
        })
        .collect();
    hom.interior_of(pointwise)
}

/// The six equivalent conditions relating `f`, `x` and `y` through `∧f`
/// and `f*`:
///
/// 0. `t ≤ x` or `y ≤ f(t)` for every `t`
/// 1. `c_y ∘ a_x ≤ f`
/// 2. `y ⊗̲ x ≤ ∧f`
/// 3. `y ≤ ∧f(x)`
/// 4. `f*(y) ≤ x`
/// 5. `f* ≤ x ⊗̄ y`
pub fn relation_dual_profile(hom: &Hom, f: &SupMap, x: usize, y: usize) -> [bool; 6] {
    let (s, t) = (hom.source, hom.target);
    let up = hom.raney_up(f);
    let star = hom.star(f);
    [
        s.elements().all(|u| s.leq(u, x) || t.leq(y, f.apply(u))),
        hom.leq(hom.e(y, x).table(), f.table()),
        hom.leq(hom.tensor_under(y, x).table(), up.table()),
        t.leq(y, up.apply(x)),
        s.leq(star.apply(y), x),
        hom.reversed().leq(star.table(), hom.reversed().tensor_over(x, y).table()),
    ]
}

/// The adjunctions of `c` and `a`, each side evaluated separately:
/// `c_y ≤ f ⇔ y ≤ ∧f(⊥)`, `f ≤ c_y ⇔ f(⊤) ≤ y`,
/// `a_x ≤ f ⇔ f*(⊤) ≤ x`, `f ≤ a_x ⇔ x ≤ ρf(⊥)`.
pub fn adjunction_formulas(hom: &Hom, f: &SupMap, x: usize, y: usize) -> [Equiv; 4] {
    let (s, t) = (hom.source, hom.target);
    let up = hom.raney_up(f);
    let star = hom.star(f);
    let rho = hom.right_adjoint(f);
    [
        Equiv {
            lhs: hom.leq(hom.c(y).table(), f.table()),
            rhs: t.leq(y, up.apply(s.bottom())),
        },
        Equiv {
            lhs: hom.leq(f.table(), hom.c(y).table()),
            rhs: t.leq(f.apply(s.top()), y),
        },
        Equiv {
            lhs: hom.leq(hom.a(x).table(), f.table()),
            rhs: s.leq(star.apply(t.top()), x),
        },
        Equiv {
            lhs: hom.leq(f.table(), hom.a(x).table()),
            rhs: s.leq(x, rho.apply(t.bottom())),
        },
    ]
}

/// Closed forms for dividing `f` by the generator maps.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DivisionFormulas {
    /// `f / a_x = c_{∧f(x)}`
    pub over_a: SupMap,
    /// `c_y \ f = a_{f*(y)}`
    pub under_c: SupMap,
    /// `f / c_y = ∧f(⊥) ⊗̄ y`
    pub over_c: SupMap,
    /// `a_x \ f = x ⊗̄ f*(⊤)`
    pub under_a: SupMap,
    /// `f / (c_y ∘ a_x) = ∧f(x) ⊗̄ y`
    pub over_e: SupMap,
    /// `(c_y ∘ a_x) \ f = x ⊗̄ f*(y)`
    pub under_e: SupMap,
    /// `f / (y ⊗̄ x) = (∧f(x) ⊗̄ ⊤) ∧ (∧f(⊥) ⊗̄ y)`
    pub over_tensor: SupMap,
    /// `(y ⊗̄ x) \ f = (⊥ ⊗̄ f*(y)) ∧ (x ⊗̄ f*(⊤))`
    pub under_tensor: SupMap,
}

pub fn division_formulas(hom: &Hom, f: &SupMap, x: usize, y: usize) -> DivisionFormulas {
    let l = hom.source;
    let (bot, top) = (l.bottom(), l.top());
    let up = hom.raney_up(f);
    let star = hom.star(f);
    DivisionFormulas {
        over_a: hom.c(up.apply(x)),
        under_c: hom.a(star.apply(y)),
        over_c: hom.tensor_over(up.apply(bot), y),
        under_a: hom.tensor_over(x, star.apply(top)),
        over_e: hom.tensor_over(up.apply(x), y),
        under_e: hom.tensor_over(x, star.apply(y)),
        over_tensor: hom.meet(&hom.tensor_over(up.apply(x), top), &hom.tensor_over(up.apply(bot), y)),
        under_tensor: hom.meet(&hom.tensor_over(bot, star.apply(y)), &hom.tensor_over(x, star.apply(top))),
    }
}

/// Names of the closed forms in [`division_formulas`] that disagree with the
/// generic residuals.
pub fn division_mismatches(hom: &Hom, f: &SupMap, x: usize, y: usize) -> Vec<&'static str> {
    let d = division_formulas(hom, f, x, y);
    let (c, a) = (hom.c(y), hom.a(x));
    let e = c.after(&a);
    let tensor = hom.tensor_over(y, x);
    let checks = [
        ("f/a_x", d.over_a, residual_right(hom, f, &a)),
        ("c_y\\f", d.under_c, residual_left(hom, &c, f)),
        ("f/c_y", d.over_c, residual_right(hom, f, &c)),
        ("a_x\\f", d.under_a, residual_left(hom, &a, f)),
        ("f/(c_y∘a_x)", d.over_e, residual_right(hom, f, &e)),
        ("(c_y∘a_x)\\f", d.under_e, residual_left(hom, &e, f)),
        ("f/(y⊗̄x)", d.over_tensor, residual_right(hom, f, &tensor)),
        ("(y⊗̄x)\\f", d.under_tensor, residual_left(hom, &tensor, f)),
    ];
    checks
        .into_iter()
        .filter(|(_, closed, generic)| closed != generic)
        .map(|(name, _, _)| name)
        .collect()
}

/// Tight maps (`f = ∨∧f`) of a homset.
#[derive(Debug, Clone)]
pub struct TightSubset<'h> {
    homset: &'h EndoHomset,
    members: Vec<usize>,
}

impl<'h> TightSubset<'h> {
    pub fn members(&self) -> &[usize] {
        &self.members
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn contains(&self, i: usize) -> bool {
        self.members.binary_search(&i).is_ok()
    }

    /// A pair `(f, h)` with `h` tight and `f ∘ h` or `h ∘ f` not tight.
    pub fn bi_ideal_violation(&self) -> Result<Option<(usize, usize)>, EndoError> {
        let q = self.homset;
        for &h in &self.members {
            for f in 0..q.len() {
                if !self.contains(q.compose(f, h)?) || !self.contains(q.compose(h, f)?) {
                    return Ok(Some((f, h)));
                }
            }
        }
        Ok(None)
    }

    /// A pair of tight maps whose composite or join is not tight.
    pub fn closure_violation(&self) -> Result<Option<(usize, usize)>, EndoError> {
        let q = self.homset;
        for &f in &self.members {
            for &g in &self.members {
                if !self.contains(q.compose(g, f)?) || !self.contains(q.join(f, g)) {
                    return Ok(Some((g, f)));
                }
            }
        }
        Ok(None)
    }
}

impl EndoHomset {
    pub fn enumerate(lattice: &Lattice, cap: usize) -> Result<Self, EndoError> {
        let tables = enumerate_tables(lattice, cap)?;
        let index: HashMap<Vec<usize>, usize> = tables.iter().cloned().enumerate().map(|(i, t)| (t, i)).collect();
        let hom = Hom::endo(lattice);
        let identity = index[&hom.identity().expect("endo").into_table()];
        let bottom = index[hom.bottom().table()];
        let top = index[hom.top().table()];
        Ok(EndoHomset {
            lattice: lattice.clone(),
            maps: tables.into_iter().map(SupMap::from_raw).collect(),
            index,
            identity,
            bottom,
            top,
            tables: OnceLock::new(),
            residuals: OnceLock::new(),
            q_lattice: OnceLock::new(),
        })
    }

    pub fn lattice(&self) -> &Lattice {
        &self.lattice
    }

    pub fn hom(&self) -> Hom<'_> {
        Hom::endo(&self.lattice)
    }

    pub fn len(&self) -> usize {
        self.maps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.maps.is_empty()
    }

    pub fn maps(&self) -> &[SupMap] {
        &self.maps
    }

    pub fn map(&self, i: usize) -> &SupMap {
        &self.maps[i]
    }

    pub fn index_of(&self, table: &[usize]) -> Option<usize> {
        self.index.get(table).copied()
    }

    /// Index of a map known to be sup-preserving.
    fn idx(&self, f: &SupMap) -> usize {
        self.index_of(f.table()).expect("sup-preserving map is enumerated")
    }

    pub fn identity(&self) -> usize {
        self.identity
    }

    pub fn bottom(&self) -> usize {
        self.bottom
    }

    pub fn top(&self) -> usize {
        self.top
    }

    fn check_table_cap(&self) -> Result<(), EndoError> {
        if self.len() > MAX_TABLE_HOMSET {
            Err(EndoError::TableCap {
                size: self.len(),
                cap: MAX_TABLE_HOMSET,
            })
        } else {
            Ok(())
        }
    }

    fn tables(&self) -> Result<&Tables, EndoError> {
        self.check_table_cap()?;
        Ok(self.tables.get_or_init(|| {
            let m = self.len();
            let hom = self.hom();
            let mut compose = Vec::with_capacity(m * m);
            let mut leq = Vec::with_capacity(m * m);
            for g in &self.maps {
                for f in &self.maps {
                    compose.push(self.idx(&g.after(f)) as u32);
                    leq.push(hom.leq(g.table(), f.table()));
                }
            }
            Tables { compose, leq }
        }))
    }

    /// Index of `g ∘ f`.
    pub fn compose(&self, g: usize, f: usize) -> Result<usize, EndoError> {
        Ok(self.tables()?.compose[g * self.len() + f] as usize)
    }

    /// Pointwise order between two homset elements.
    pub fn leq(&self, f: usize, g: usize) -> bool {
        match self.tables.get() {
            Some(t) => t.leq[f * self.len() + g],
            None => self.hom().leq(self.maps[f].table(), self.maps[g].table()),
        }
    }

    pub fn join(&self, f: usize, g: usize) -> usize {
        self.idx(&self.hom().join(&self.maps[f], &self.maps[g]))
    }

    pub fn meet(&self, f: usize, g: usize) -> usize {
        self.idx(&self.hom().meet(&self.maps[f], &self.maps[g]))
    }

    /// `g \ h` by the closed form.
    pub fn residual_left(&self, g: &SupMap, h: &SupMap) -> SupMap {
        residual_left(&self.hom(), g, h)
    }

    /// `h / f` by the closed form.
    pub fn residual_right(&self, h: &SupMap, f: &SupMap) -> SupMap {
        residual_right(&self.hom(), h, f)
    }

    /// Residual tables for every pair, from the closed forms.
    pub fn residuals(&self) -> Result<&Residuals, EndoError> {
        self.check_table_cap()?;
        Ok(self.residuals.get_or_init(|| {
            let hom = self.hom();
            let rhos: Vec<InfMap> = self.maps.iter().map(|g| hom.right_adjoint(g)).collect();
            Residuals::build(
                self.len(),
                |g, h| {
                    let k = self.maps[h].table().iter().map(|&v| rhos[g].apply(v)).collect();
                    self.idx(&hom.interior_of(k))
                },
                |h, f| self.idx(&residual_right(&hom, &self.maps[h], &self.maps[f])),
            )
        }))
    }

    /// `Q(L, L)` as a lattice: pointwise joins, homset meets.
    pub fn as_lattice(&self) -> Result<&Lattice, EndoError> {
        self.check_table_cap()?;
        Ok(self.q_lattice.get_or_init(|| {
            let m = self.len();
            let hom = self.hom();
            let mut leq = Vec::with_capacity(m * m);
            let mut join = Vec::with_capacity(m * m);
            let mut meet = Vec::with_capacity(m * m);
            for f in &self.maps {
                for g in &self.maps {
                    leq.push(hom.leq(f.table(), g.table()));
                    join.push(self.idx(&hom.join(f, g)) as u32);
                    meet.push(self.idx(&hom.meet(f, g)) as u32);
                }
            }
            let names = self.maps.iter().map(|f| format!("{:?}", f.table())).collect();
            Lattice::from_tables(Poset::from_raw(m, leq, names), join, meet)
        }))
    }

    pub fn is_tight(&self, f: &SupMap) -> bool {
        self.hom().tight_interior(f) == *f
    }

    pub fn tight_interior(&self, f: &SupMap) -> SupMap {
        self.hom().tight_interior(f)
    }

    /// Index of `∨∧f` for every element.
    pub fn tight_interiors(&self) -> Vec<usize> {
        self.maps.iter().map(|f| self.idx(&self.tight_interior(f))).collect()
    }

    pub fn enumerate_tight(&self) -> TightSubset<'_> {
        let members = (0..self.len()).filter(|&i| self.is_tight(&self.maps[i])).collect();
        TightSubset { homset: self, members }
    }

    /// A two-sided unit of the tight maps under composition, if one exists.
    pub fn tight_has_unit(&self) -> Result<Option<usize>, EndoError> {
        let tight = self.enumerate_tight();
        for &u in tight.members() {
            let mut unit = true;
            for &f in tight.members() {
                if self.compose(u, f)? != f || self.compose(f, u)? != f {
                    unit = false;
                    break;
                }
            }
            if unit {
                return Ok(Some(u));
            }
        }
        Ok(None)
    }

    /// A pair `(g, f)` with `∨∧(g ∘ f) != ∨∧g ∘ ∨∧f`.
    pub fn conucleus_gap(&self) -> Result<Option<(usize, usize)>, EndoError> {
        let interior = self.tight_interiors();
        for g in 0..self.len() {
            for f in 0..self.len() {
                if interior[self.compose(g, f)?] != self.compose(interior[g], interior[f])? {
                    return Ok(Some((g, f)));
                }
            }
        }
        Ok(None)
    }

    /// Index of `o = ∨id`.
    pub fn canonical_o(&self) -> usize {
        let hom = self.hom();
        let id = InfMap::from_raw(self.lattice.elements().collect());
        self.idx(&hom.raney_down(&id))
    }

    pub fn is_cyclic(&self, f: usize) -> Result<bool, EndoError> {
        Ok(self.residuals()?.is_cyclic(f))
    }

    pub fn is_dualizing(&self, f: usize) -> Result<bool, EndoError> {
        Ok(self.residuals()?.is_dualizing(f))
    }

    pub fn find_cyclic(&self) -> Result<Vec<usize>, EndoError> {
        Ok(self.residuals()?.cyclic())
    }

    pub fn find_dualizing(&self) -> Result<Vec<usize>, EndoError> {
        Ok(self.residuals()?.dualizing())
    }

    /// Some element is both cyclic and dualizing.
    pub fn is_girard(&self) -> Result<bool, EndoError> {
        let r = self.residuals()?;
        Ok((0..self.len()).any(|d| r.is_cyclic(d) && r.is_dualizing(d)))
    }

    /// For dualizing `f`, returns `f*`, after checking that `∧f` inverts it
    /// on both sides.
    pub fn dualizing_to_automorphism(&self, f: usize) -> Result<Vec<usize>, EndoError> {
        if !self.is_dualizing(f)? {
            return Err(EndoError::NotDualizing);
        }
        let hom = self.hom();
        let f = &self.maps[f];
        let star = hom.star(f);
        let up = hom.raney_up(f);
        let ids: Vec<usize> = self.lattice.elements().collect();
        if star.compose_table(up.table()) != ids || up.compose_table(star.table()) != ids {
            return Err(EndoError::Inconsistent(
                "∧f and f* are not mutually inverse for a dualizing f".into(),
            ));
        }
        Ok(star.into_table())
    }

    /// For an automorphism `h` of a completely distributive lattice, returns
    /// the index of `o / h`, after checking it is dualizing with star `h`.
    pub fn automorphism_to_dualizing(&self, h: &[usize]) -> Result<usize, EndoError> {
        if !is_automorphism(&self.lattice, h) {
            return Err(EndoError::NotAutomorphism);
        }
        if !is_completely_distributive(&self.lattice) {
            return Err(EndoError::NotCompletelyDistributive);
        }
        let o = &self.maps[self.canonical_o()];
        let h = SupMap::from_raw(h.to_vec());
        let f = self.residual_right(o, &h);
        let fi = self.idx(&f);
        if !self.is_dualizing(fi)? {
            return Err(EndoError::Inconsistent("o / h is not dualizing".into()));
        }
        if self.hom().star(&f) != h {
            return Err(EndoError::Inconsistent("the star of o / h is not h".into()));
        }
        Ok(fi)
    }
}

/// `h` is a permutation that preserves and reflects the order.
pub fn is_automorphism(lattice: &Lattice, h: &[usize]) -> bool {
    let n = lattice.size();
    if h.len() != n {
        return false;
    }
    let mut seen = vec![false; n];
    for &v in h {
        if v >= n || std::mem::replace(&mut seen[v], true) {
            return false;
        }
    }
    lattice
        .elements()
        .all(|x| lattice.elements().all(|y| lattice.leq(x, y) == lattice.leq(h[x], h[y])))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lattice::{boolean, chain, mk, n5};

    fn brute_count(l: &Lattice) -> usize {
        let n = l.size();
        let hom = Hom::endo(l);
        let total = n.pow(n as u32);
        (0..total)
            .filter(|&code| {
                let table: Vec<usize> = (0..n).map(|i| code / n.pow(i as u32) % n).collect();
                hom.is_sup_preserving(&table)
            })
            .count()
    }

    #[test]
    fn enumeration_counts() {
        assert_eq!(EndoHomset::enumerate(&chain(1).unwrap(), 10).unwrap().len(), 1);
        let c2 = EndoHomset::enumerate(&chain(2).unwrap(), 10).unwrap();
        assert_eq!(c2.maps().iter().map(|f| f.table().to_vec()).collect::<Vec<_>>(), vec![vec![0, 0], vec![0, 1]]);
        assert_eq!(EndoHomset::enumerate(&boolean(2).unwrap(), 100).unwrap().len(), 16);
        for l in [chain(3).unwrap(), chain(4).unwrap(), boolean(2).unwrap(), mk(2).unwrap()] {
            assert_eq!(EndoHomset::enumerate(&l, 1000).unwrap().len(), brute_count(&l));
        }
        assert_eq!(brute_count(&n5()), EndoHomset::enumerate(&n5(), 1000).unwrap().len());
        assert!(matches!(
            EndoHomset::enumerate(&boolean(2).unwrap(), 10),
            Err(EndoError::HomsetCap { cap: 10, partial: 10 })
        ));
    }

    #[test]
    fn residual_examples() {
        let c2 = chain(2).unwrap();
        let q = EndoHomset::enumerate(&c2, 10).unwrap();
        let bot = q.map(q.bottom()).clone();
        assert_eq!(q.residual_left(&bot, &bot), *q.map(q.identity()));
        let c3 = chain(3).unwrap();
        let q = EndoHomset::enumerate(&c3, 100).unwrap();
        let id = q.map(q.identity()).clone();
        assert_eq!(q.residual_left(&id, &id), id);
        assert_eq!(q.residual_right(&id, &id), id);
    }

    #[test]
    fn residual_over_e_on_m5() {
        let m5 = mk(5).unwrap();
        let hom = Hom::endo(&m5);
        let id = InfMap::from_raw(m5.elements().collect());
        let o = hom.raney_down(&id);
        let up = hom.raney_up(&o);
        for x in m5.elements() {
            for y in m5.elements() {
                let e = hom.e(y, x);
                assert_eq!(residual_right(&hom, &o, &e), hom.tensor_over(up.apply(x), y));
            }
        }
    }

    #[test]
    fn completely_distributive_detection() {
        for n in 1..=5 {
            assert!(is_completely_distributive(&chain(n).unwrap()));
        }
        assert!(is_completely_distributive(&boolean(3).unwrap()));
        assert!(!is_completely_distributive(&mk(5).unwrap()));
        assert!(!is_completely_distributive(&n5()));
        for l in [mk(3).unwrap(), n5(), boolean(2).unwrap(), chain(3).unwrap()] {
            assert_eq!(raney_identity_holds(&l), is_completely_distributive(&l));
        }
    }

    #[test]
    fn tight_maps() {
        let m5 = mk(5).unwrap();
        let q = EndoHomset::enumerate(&m5, DEFAULT_MAX_HOMSET).unwrap();
        let hom = q.hom();
        for x in m5.elements() {
            for y in m5.elements() {
                assert!(q.is_tight(&hom.e(y, x)));
            }
        }
        assert!(!q.is_tight(q.map(q.identity())));
        let b2 = boolean(2).unwrap();
        let qb = EndoHomset::enumerate(&b2, 100).unwrap();
        assert_eq!(qb.enumerate_tight().len(), qb.len());
    }

    #[test]
    fn units_and_gaps() {
        let c3 = EndoHomset::enumerate(&chain(3).unwrap(), 100).unwrap();
        assert_eq!(c3.tight_has_unit().unwrap(), Some(c3.identity()));
        assert_eq!(c3.conucleus_gap().unwrap(), None);
        let n = EndoHomset::enumerate(&n5(), 1000).unwrap();
        assert_eq!(n.tight_has_unit().unwrap(), None);
        assert!(n.conucleus_gap().unwrap().is_some());
    }

    #[test]
    fn dualizing_on_chain3() {
        let q = EndoHomset::enumerate(&chain(3).unwrap(), 100).unwrap();
        assert_eq!(q.find_dualizing().unwrap(), vec![q.canonical_o()]);
        assert_eq!(q.map(q.canonical_o()).table(), &[0, 0, 1]);
        assert!(q.is_cyclic(q.top()).unwrap());
        assert!(q.is_girard().unwrap());
        assert_eq!(q.dualizing_to_automorphism(q.canonical_o()).unwrap(), vec![0, 1, 2]);
        assert_eq!(q.automorphism_to_dualizing(&[0, 1, 2]).unwrap(), q.canonical_o());
        assert_eq!(q.automorphism_to_dualizing(&[2, 1, 0]), Err(EndoError::NotAutomorphism));
        assert_eq!(q.dualizing_to_automorphism(q.identity()), Err(EndoError::NotDualizing));
    }

    #[test]
    fn boolean2_bijection() {
        let b2 = boolean(2).unwrap();
        let q = EndoHomset::enumerate(&b2, 100).unwrap();
        let dualizing = q.find_dualizing().unwrap();
        assert_eq!(dualizing.len(), 2);
        let swap = q.automorphism_to_dualizing(&[0, 2, 1, 3]).unwrap();
        assert_ne!(swap, q.canonical_o());
        assert!(dualizing.contains(&swap));
        assert_eq!(q.dualizing_to_automorphism(swap).unwrap(), vec![0, 2, 1, 3]);
    }

    #[test]
    fn not_cd_errors() {
        let q = EndoHomset::enumerate(&mk(3).unwrap(), 1000).unwrap();
        assert_eq!(q.automorphism_to_dualizing(&[0, 2, 1, 3, 4]), Err(EndoError::NotCompletelyDistributive));
        assert!(q.find_dualizing().unwrap().is_empty());
        assert_eq!(q.find_cyclic().unwrap(), vec![q.top()]);
    }

    #[test]
    fn relation_profiles() {
        let c3 = chain(3).unwrap();
        let hom = Hom::endo(&c3);
        let id = hom.identity().unwrap();
        assert_eq!(relation_dual_profile(&hom, &id, 0, 2), [false; 6]);
        for x in 0..3 {
            for y in 0..=x {
                assert_eq!(relation_dual_profile(&hom, &id, x, y), [true; 6]);
            }
        }
        let b2 = boolean(2).unwrap();
        let hb = Hom::endo(&b2);
        let top = hb.top();
        for x in 0..4 {
            for y in 0..4 {
                assert_eq!(relation_dual_profile(&hb, &top, x, y), [true; 6]);
            }
        }
    }

    #[test]
    fn adjunctions_of_generators() {
        let l = n5();
        let hom = Hom::endo(&l);
        for x in l.elements() {
            for y in l.elements() {
                let r = adjunction_formulas(&hom, &hom.c(y), x, y);
                assert!(r[1].lhs && r[1].rhs);
                let r = adjunction_formulas(&hom, &hom.a(x), x, y);
                assert!(r[3].lhs && r[3].rhs);
            }
        }
        let c3 = chain(3).unwrap();
        let h3 = Hom::endo(&c3);
        let r = adjunction_formulas(&h3, &h3.identity().unwrap(), 0, 1);
        assert!(r[0].lhs && r[0].rhs);
    }

    #[test]
    fn divisions_on_small_lattices() {
        for l in [chain(2).unwrap(), chain(3).unwrap(), n5()] {
            let q = EndoHomset::enumerate(&l, 1000).unwrap();
            let hom = q.hom();
            for f in q.maps() {
                for x in l.elements() {
                    for y in l.elements() {
                        assert!(division_mismatches(&hom, f, x, y).is_empty());
                    }
                }
            }
        }
    }

    #[test]
    fn division_example_for_o() {
        let b2 = boolean(2).unwrap();
        let hom = Hom::endo(&b2);
        let o = hom.raney_down(&InfMap::from_raw(b2.elements().collect()));
        for x in b2.elements() {
            for y in b2.elements() {
                let d = division_formulas(&hom, &o, x, y);
                assert_eq!(d.over_e, hom.tensor_over(x, y));
                assert_eq!(d.under_e, hom.tensor_over(x, y));
                assert_eq!(d.over_tensor, hom.c(x).after(&hom.a(y)));
                assert_eq!(d.under_tensor, hom.c(x).after(&hom.a(y)));
            }
        }
    }
}
