//! Sup- and inf-preserving maps between finite lattices.
//!
//! Maps are plain value tables indexed by source element. The lattices a map
//! runs between are supplied through a [`Hom`] context, which also provides
//! the generator maps `c_y`, `a_x`, `y ⊗̄ x`, `e_{y,x}` and their inf-preserving
//! counterparts, adjoints, Raney transforms and the lattice structure of the
//! homset itself.

use serde::Serialize;
use thiserror::Error;

use crate::lattice::Lattice;

macro_rules! table_newtype {
    ($(#[$doc:meta])* $name:ident) => {
        $(#[$doc])*
        #[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
        #[serde(transparent)]
        pub struct $name(Vec<usize>);

        impl $name {
            /// Wraps a table without checking any invariant.
            #[allow(dead_code)]
            pub(crate) fn from_raw(table: Vec<usize>) -> Self {
                $name(table)
            }

            #[inline]
            pub fn apply(&self, x: usize) -> usize {
                self.0[x]
            }

            pub fn table(&self) -> &[usize] {
                &self.0
            }

            pub fn into_table(self) -> Vec<usize> {
                self.0
            }

            pub fn len(&self) -> usize {
                self.0.len()
            }

            pub fn is_empty(&self) -> bool {
                self.0.is_empty()
            }

            /// `self ∘ f` as a raw table.
            pub fn compose_table(&self, f: &[usize]) -> Vec<usize> {
                f.iter().map(|&x| self.0[x]).collect()
            }
        }

        impl AsRef<[usize]> for $name {
            fn as_ref(&self) -> &[usize] {
                &self.0
            }
        }
    };
}

table_newtype!(
    /// A monotone map, stored as its value table.
    MonotoneMap
);
table_newtype!(
    /// A map preserving all joins (equivalently: `⊥` and binary joins).
    SupMap
);
table_newtype!(
    /// A map preserving all meets (equivalently: `⊤` and binary meets).
    InfMap
);

impl SupMap {
    /// `self ∘ f`.
    pub fn after(&self, f: &SupMap) -> SupMap {
        SupMap(self.compose_table(&f.0))
    }
}

impl InfMap {
    /// `self ∘ f`.
    pub fn after(&self, f: &InfMap) -> InfMap {
        InfMap(self.compose_table(&f.0))
    }
}

impl From<SupMap> for MonotoneMap {
    fn from(f: SupMap) -> Self {
        MonotoneMap(f.0)
    }
}

impl From<InfMap> for MonotoneMap {
    fn from(g: InfMap) -> Self {
        MonotoneMap(g.0)
    }
}

/// Why a table fails to preserve joins (or meets).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum PreservationWitness {
    /// The map does not send the relevant bound (`⊥` or `⊤`) to itself.
    Bound,
    /// The binary join (meet) of this pair is not preserved.
    Pair(usize, usize),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum MapError {
    #[error("table has {got} entries but the source lattice has {expected} elements")]
    SourceMismatch { expected: usize, got: usize },
    #[error("value {value} at position {at} is not an element of the target lattice")]
    OutOfRange { at: usize, value: usize },
    #[error("not monotone: {0} <= {1} but the images are not ordered")]
    NotMonotone(usize, usize),
    #[error("not sup-preserving: {0:?}")]
    NotSupPreserving(PreservationWitness),
    #[error("not inf-preserving: {0:?}")]
    NotInfPreserving(PreservationWitness),
}

/// Both sides of an equivalence evaluated independently.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct Equiv {
    pub lhs: bool,
    pub rhs: bool,
}

impl Equiv {
    pub fn holds(&self) -> bool {
        self.lhs == self.rhs
    }

    pub fn value(&self) -> bool {
        self.lhs
    }
}

/// Something with a bottom element and binary joins, used as the codomain of
/// a bimorphism extension.
pub trait SupLattice {
    type Elem;
    fn bottom_elem(&self) -> Self::Elem;
    fn join_elems(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
}

impl SupLattice for Lattice {
    type Elem = usize;

    fn bottom_elem(&self) -> usize {
        self.bottom()
    }

    fn join_elems(&self, a: &usize, b: &usize) -> usize {
        self.join(*a, *b)
    }
}

impl SupLattice for Hom<'_> {
    type Elem = SupMap;

    fn bottom_elem(&self) -> SupMap {
        self.bottom()
    }

    fn join_elems(&self, a: &SupMap, b: &SupMap) -> SupMap {
        self.join(a, b)
    }
}

/// The homset from `source` to `target`.
#[derive(Clone, Copy, Debug)]
pub struct Hom<'a> {
    pub source: &'a Lattice,
    pub target: &'a Lattice,
}

/// `(epi, iso, mono)` factorization of a sup-preserving map `f`.
///
/// `closure = ρf ∘ f` is a closure operator on the source and `interior =
/// f ∘ ρf` an interior operator on the target; their fixpoint sets are
/// isomorphic through `f`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Factorization {
    pub closure: MonotoneMap,
    pub interior: MonotoneMap,
    pub source_fixed: Vec<usize>,
    pub target_fixed: Vec<usize>,
    /// `(x, f(x))` for each `x` in `source_fixed`.
    pub iso: Vec<(usize, usize)>,
}

impl Factorization {
    /// `x ↦ iso(closure(x))`, which reproduces `f`.
    pub fn reassemble(&self) -> Vec<usize> {
        self.closure
            .table()
            .iter()
            .map(|&j| {
                self.iso
                    .iter()
                    .find(|&&(x, _)| x == j)
                    .map(|&(_, y)| y)
                    .expect("closure lands in its fixpoints")
            })
            .collect()
    }

    /// The iso leg is a bijection onto `target_fixed` that preserves and
    /// reflects the order.
    pub fn iso_is_order_isomorphism(&self, source: &Lattice, target: &Lattice) -> bool {
        let mut images: Vec<usize> = self.iso.iter().map(|&(_, y)| y).collect();
        images.sort_unstable();
        images.dedup();
        images == self.target_fixed
            && self.iso.len() == self.source_fixed.len()
            && self.iso.iter().all(|&(x1, y1)| {
                self.iso
                    .iter()
                    .all(|&(x2, y2)| source.leq(x1, x2) == target.leq(y1, y2))
            })
    }
}

impl<'a> Hom<'a> {
    pub fn new(source: &'a Lattice, target: &'a Lattice) -> Self {
        Hom { source, target }
    }

    pub fn endo(lattice: &'a Lattice) -> Self {
        Hom {
            source: lattice,
            target: lattice,
        }
    }

    /// The homset in the opposite direction.
    pub fn reversed(&self) -> Hom<'a> {
        Hom {
            source: self.target,
            target: self.source,
        }
    }

    fn check_shape(&self, table: &[usize]) -> Result<(), MapError> {
        if table.len() != self.source.size() {
            return Err(MapError::SourceMismatch {
                expected: self.source.size(),
                got: table.len(),
            });
        }
        if let Some(at) = table.iter().position(|&v| v >= self.target.size()) {
            return Err(MapError::OutOfRange { at, value: table[at] });
        }
        Ok(())
    }

    pub fn monotone(&self, table: Vec<usize>) -> Result<MonotoneMap, MapError> {
        self.check_shape(&table)?;
        for x in self.source.elements() {
            for y in self.source.elements() {
                if self.source.leq(x, y) && !self.target.leq(table[x], table[y]) {
                    return Err(MapError::NotMonotone(x, y));
                }
            }
        }
        Ok(MonotoneMap(table))
    }

    pub fn sup_map(&self, table: Vec<usize>) -> Result<SupMap, MapError> {
        self.check_shape(&table)?;
        self.check_sup_preserving(&table).map_err(MapError::NotSupPreserving)?;
        Ok(SupMap(table))
    }

    pub fn inf_map(&self, table: Vec<usize>) -> Result<InfMap, MapError> {
        self.check_shape(&table)?;
        self.check_inf_preserving(&table).map_err(MapError::NotInfPreserving)?;
        Ok(InfMap(table))
    }

    /// Checks `⊥ ↦ ⊥` and binary joins exhaustively, which in a finite
    /// lattice is equivalent to preserving every join.
    pub fn check_sup_preserving(&self, table: &[usize]) -> Result<(), PreservationWitness> {
        let (s, t) = (self.source, self.target);
        if table[s.bottom()] != t.bottom() {
            return Err(PreservationWitness::Bound);
        }
        for x in s.elements() {
            for y in x + 1..s.size() {
                if table[s.join(x, y)] != t.join(table[x], table[y]) {
                    return Err(PreservationWitness::Pair(x, y));
                }
            }
        }
        Ok(())
    }

    pub fn check_inf_preserving(&self, table: &[usize]) -> Result<(), PreservationWitness> {
        let (s, t) = (self.source, self.target);
        if table[s.top()] != t.top() {
            return Err(PreservationWitness::Bound);
        }
        for x in s.elements() {
            for y in x + 1..s.size() {
                if table[s.meet(x, y)] != t.meet(table[x], table[y]) {
                    return Err(PreservationWitness::Pair(x, y));
                }
            }
        }
        Ok(())
    }

    pub fn is_sup_preserving(&self, table: &[usize]) -> bool {
        self.check_sup_preserving(table).is_ok()
    }

    pub fn is_inf_preserving(&self, table: &[usize]) -> bool {
        self.check_inf_preserving(table).is_ok()
    }

    /// The identity, when source and target coincide.
    pub fn identity(&self) -> Option<SupMap> {
        (self.source == self.target).then(|| SupMap(self.source.elements().collect()))
    }

    /// Constant `⊥`, the least element of the homset.
    pub fn bottom(&self) -> SupMap {
        SupMap(vec![self.target.bottom(); self.source.size()])
    }

    /// `⊤ ⊗̄ ⊥`, the greatest element of the homset.
    pub fn top(&self) -> SupMap {
        self.tensor_over(self.target.top(), self.source.bottom())
    }

    /// Pointwise order.
    pub fn leq(&self, f: &[usize], g: &[usize]) -> bool {
        f.iter().zip(g).all(|(&a, &b)| self.target.leq(a, b))
    }

    /// Joins in the homset are pointwise.
    pub fn join(&self, f: &SupMap, g: &SupMap) -> SupMap {
        SupMap(self.pointwise_join(&f.0, &g.0))
    }

    pub fn join_all<'m, I: IntoIterator<Item = &'m SupMap>>(&self, maps: I) -> SupMap {
        maps.into_iter().fold(self.bottom(), |acc, f| self.join(&acc, f))
    }

    pub fn pointwise_join(&self, f: &[usize], g: &[usize]) -> Vec<usize> {
        f.iter().zip(g).map(|(&a, &b)| self.target.join(a, b)).collect()
    }

    pub fn pointwise_meet(&self, f: &[usize], g: &[usize]) -> Vec<usize> {
        f.iter().zip(g).map(|(&a, &b)| self.target.meet(a, b)).collect()
    }

    /// Meet in the homset: the greatest sup-preserving map below both.
    pub fn meet(&self, f: &SupMap, g: &SupMap) -> SupMap {
        self.interior_of(self.pointwise_meet(&f.0, &g.0))
    }

    pub fn meet_all<'m, I: IntoIterator<Item = &'m SupMap>>(&self, maps: I) -> SupMap {
        let top = vec![self.target.top(); self.source.size()];
        let pointwise = maps
            .into_iter()
            .fold(top, |acc, f| self.pointwise_meet(&acc, &f.0));
        self.interior_of(pointwise)
    }

    /// `c_y(t) = y` for `t != ⊥`, `⊥` otherwise.
    pub fn c(&self, y: usize) -> SupMap {
        let s = self.source;
        SupMap(
            s.elements()
                .map(|t| if t == s.bottom() { self.target.bottom() } else { y })
                .collect(),
        )
    }

    /// `a_x(t) = ⊤` for `t ≰ x`, `⊥` otherwise.
    pub fn a(&self, x: usize) -> SupMap {
        let (s, t) = (self.source, self.target);
        SupMap(
            s.elements()
                .map(|u| if s.leq(u, x) { t.bottom() } else { t.top() })
                .collect(),
        )
    }

    /// `(y ⊗̄ x)(t)` is `⊤` for `t ≰ x`, `y` for `⊥ < t ≤ x`, and `⊥` at `⊥`.
    pub fn tensor_over(&self, y: usize, x: usize) -> SupMap {
        let (s, t) = (self.source, self.target);
        SupMap(
            s.elements()
                .map(|u| {
                    if !s.leq(u, x) {
                        t.top()
                    } else if u == s.bottom() {
                        t.bottom()
                    } else {
                        y
                    }
                })
                .collect(),
        )
    }

    /// `e_{y,x}(t) = y` for `t ≰ x`, `⊥` otherwise.
    pub fn e(&self, y: usize, x: usize) -> SupMap {
        let (s, t) = (self.source, self.target);
        SupMap(
            s.elements()
                .map(|u| if s.leq(u, x) { t.bottom() } else { y })
                .collect(),
        )
    }

    /// `γ_y(t) = ⊤` at `⊤`, `y` otherwise.
    pub fn gamma(&self, y: usize) -> InfMap {
        let s = self.source;
        InfMap(
            s.elements()
                .map(|u| if u == s.top() { self.target.top() } else { y })
                .collect(),
        )
    }

    /// `α_x(t) = ⊤` when `x ≤ t`, `⊥` otherwise.
    pub fn alpha(&self, x: usize) -> InfMap {
        let (s, t) = (self.source, self.target);
        InfMap(
            s.elements()
                .map(|u| if s.leq(x, u) { t.top() } else { t.bottom() })
                .collect(),
        )
    }

    /// `(y ⊗̲ x)(t)` is `⊤` at `⊤`, `y` when `x ≤ t`, `⊥` otherwise.
    pub fn tensor_under(&self, y: usize, x: usize) -> InfMap {
        let (s, t) = (self.source, self.target);
        InfMap(
            s.elements()
                .map(|u| {
                    if u == s.top() {
                        t.top()
                    } else if s.leq(x, u) {
                        y
                    } else {
                        t.bottom()
                    }
                })
                .collect(),
        )
    }

    /// `ρf(y) = ⋁{x : f(x) ≤ y}`, an inf-preserving map from target to source.
    pub fn right_adjoint(&self, f: &SupMap) -> InfMap {
        let (s, t) = (self.source, self.target);
        InfMap(
            t.elements()
                .map(|y| s.join_all(s.elements().filter(|&x| t.leq(f.0[x], y))))
                .collect(),
        )
    }

    /// For `g` inf-preserving from target to source, `λg(x) = ⋀{y : x ≤ g(y)}`.
    pub fn left_adjoint(&self, g: &InfMap) -> SupMap {
        let (s, t) = (self.source, self.target);
        SupMap(
            s.elements()
                .map(|x| t.meet_all(t.elements().filter(|&y| s.leq(x, g.0[y]))))
                .collect(),
        )
    }

    /// Returns `f(x) ≤ y` alongside the independently evaluated `f ≤ y ⊗̄ x`.
    pub fn characterization_check(&self, f: &SupMap, x: usize, y: usize) -> Equiv {
        Equiv {
            lhs: self.target.leq(f.0[x], y),
            rhs: self.leq(&f.0, &self.tensor_over(y, x).0),
        }
    }

    /// The greatest sup-preserving map pointwise below `k`.
    pub fn sup_interior(&self, k: &MonotoneMap) -> SupMap {
        self.interior_of(k.0.clone())
    }

    /// Decreasing iteration of
    /// `T(k)(x) = k(x) ∧ ⋀_{x ≤ z} k(z) ∧ ⋀_{a ∨ b = x} (k(a) ∨ k(b))`, with `⊥ ↦ ⊥`.
    /// Every sup-preserving `g ≤ k` stays below every iterate, and a fixpoint
    /// is monotone, preserves `⊥` and binary joins, so the limit is the
    /// greatest sup-preserving map below `k`. The upward clause matters: with
    /// only the pair clause a fixpoint need not be monotone.
    #[allow(clippy::needless_range_loop)]
    pub(crate) fn interior_of(&self, mut cur: Vec<usize>) -> SupMap {
        let (s, t) = (self.source, self.target);
        let n = s.size();
        loop {
            let mut next = cur.clone();
            next[s.bottom()] = t.bottom();
            for x in 0..n {
                for z in 0..n {
                    if s.leq(x, z) {
                        next[x] = t.meet(next[x], cur[z]);
                    }
                }
            }
            for a in 0..n {
                for b in a + 1..n {
                    let x = s.join(a, b);
                    next[x] = t.meet(next[x], t.join(cur[a], cur[b]));
                }
            }
            if next == cur {
                return SupMap(cur);
            }
            cur = next;
        }
    }

    /// `∨g(x) = ⋁{g(t) : x ≰ t}`.
    pub fn raney_down(&self, g: &InfMap) -> SupMap {
        let (s, t) = (self.source, self.target);
        SupMap(
            s.elements()
                .map(|x| t.join_all(s.elements().filter(|&u| !s.leq(x, u)).map(|u| g.0[u])))
                .collect(),
        )
    }

    /// `∧f(x) = ⋀{f(t) : t ≰ x}`.
    pub fn raney_up(&self, f: &SupMap) -> InfMap {
        let (s, t) = (self.source, self.target);
        InfMap(
            s.elements()
                .map(|x| t.meet_all(s.elements().filter(|&u| !s.leq(u, x)).map(|u| f.0[u])))
                .collect(),
        )
    }

    /// `∨∧f`, the greatest tight map below `f`.
    pub fn tight_interior(&self, f: &SupMap) -> SupMap {
        self.raney_down(&self.raney_up(f))
    }

    /// `f* = λ(∧f)`, a sup-preserving map from target to source.
    pub fn star(&self, f: &SupMap) -> SupMap {
        self.reversed().left_adjoint(&self.raney_up(f))
    }

    /// `∨(ρf)`, which coincides with [`Hom::star`].
    pub fn star_via_right_adjoint(&self, f: &SupMap) -> SupMap {
        self.reversed().raney_down(&self.right_adjoint(f))
    }

    pub fn factorize(&self, f: &SupMap) -> Factorization {
        let (s, t) = (self.source, self.target);
        let rho = self.right_adjoint(f);
        let closure: Vec<usize> = s.elements().map(|x| rho.0[f.0[x]]).collect();
        let interior: Vec<usize> = t.elements().map(|y| f.0[rho.0[y]]).collect();
        let source_fixed: Vec<usize> = s.elements().filter(|&x| closure[x] == x).collect();
        let target_fixed: Vec<usize> = t.elements().filter(|&y| interior[y] == y).collect();
        let iso = source_fixed.iter().map(|&x| (x, f.0[x])).collect();
        Factorization {
            closure: MonotoneMap(closure),
            interior: MonotoneMap(interior),
            source_fixed,
            target_fixed,
            iso,
        }
    }
}

/// Extends a bimorphism `ψ : Y × X^op → Z` along an inf-preserving
/// `g : X → Y`: `ψ̃(g) = ⋁_x ψ(g(x), x)`.
pub fn extend_bimorphism<Z, F>(z: &Z, source: &Lattice, g: &InfMap, psi: F) -> Z::Elem
where
    Z: SupLattice,
    F: Fn(usize, usize) -> Z::Elem,
{
    source
        .elements()
        .fold(z.bottom_elem(), |acc, x| z.join_elems(&acc, &psi(g.apply(x), x)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lattice::{boolean, chain, mk, n5};

    /// Every sup-preserving table from `s` to `t`, by brute force.
    fn all_sup_maps(h: &Hom) -> Vec<Vec<usize>> {
        let (n, m) = (h.source.size(), h.target.size());
        let mut out = Vec::new();
        let mut table = vec![0; n];
        loop {
            if h.is_sup_preserving(&table) {
                out.push(table.clone());
            }
            let mut i = 0;
            loop {
                if i == n {
                    return out;
                }
                table[i] += 1;
                if table[i] < m {
                    break;
                }
                table[i] = 0;
                i += 1;
            }
        }
    }

    fn all_monotone(h: &Hom) -> Vec<Vec<usize>> {
        let (n, m) = (h.source.size(), h.target.size());
        let mut out = Vec::new();
        let mut table = vec![0; n];
        loop {
            if h.monotone(table.clone()).is_ok() {
                out.push(table.clone());
            }
            let mut i = 0;
            loop {
                if i == n {
                    return out;
                }
                table[i] += 1;
                if table[i] < m {
                    break;
                }
                table[i] = 0;
                i += 1;
            }
        }
    }

    #[test]
    fn preservation() {
        let c2 = chain(2).unwrap();
        let h = Hom::endo(&c2);
        assert!(h.is_sup_preserving(&[0, 1]) && h.is_inf_preserving(&[0, 1]));
        assert!(h.is_inf_preserving(&[1, 1]));
        assert_eq!(h.check_sup_preserving(&[1, 1]), Err(PreservationWitness::Bound));
        let c3 = chain(3).unwrap();
        let h3 = Hom::endo(&c3);
        assert_eq!(h3.gamma(1).table(), &[1, 1, 2]);
        assert!(h3.is_inf_preserving(h3.gamma(1).table()));
        let b2 = boolean(2).unwrap();
        let hb = Hom::endo(&b2);
        assert!(hb.is_sup_preserving(&[0, 1, 1, 1]));
        assert_eq!(hb.check_sup_preserving(&[0, 1, 2, 2]), Err(PreservationWitness::Pair(1, 2)));
        assert!(matches!(hb.sup_map(vec![0, 1]), Err(MapError::SourceMismatch { .. })));
        assert!(matches!(hb.sup_map(vec![0, 1, 2, 9]), Err(MapError::OutOfRange { at: 3, .. })));
        assert!(matches!(hb.monotone(vec![3, 0, 0, 0]), Err(MapError::NotMonotone(0, 1))));
    }

    #[test]
    fn adjoints_on_chain3() {
        let c3 = chain(3).unwrap();
        let h = Hom::endo(&c3);
        let id = h.identity().unwrap();
        assert_eq!(h.right_adjoint(&id).table(), id.table());
        assert_eq!(h.a(1).table(), &[0, 0, 2]);
        assert_eq!(h.right_adjoint(&h.a(1)), h.gamma(1));
        // λg(x) = ⋀{y : x ≤ g(y)} for g = (1,2,2): x=0 → 0, x=1 → 0, x=2 → 1.
        let g = h.inf_map(vec![1, 2, 2]).unwrap();
        assert_eq!(h.left_adjoint(&g).table(), &[0, 0, 1]);
    }

    #[test]
    fn galois_law_exhaustive() {
        for (s, t) in [
            (chain(3).unwrap(), boolean(2).unwrap()),
            (n5(), mk(3).unwrap()),
            (boolean(2).unwrap(), n5()),
        ] {
            let h = Hom::new(&s, &t);
            for table in all_sup_maps(&h) {
                let f = SupMap(table);
                let rho = h.right_adjoint(&f);
                assert!(h.reversed().is_inf_preserving(rho.table()));
                for x in s.elements() {
                    for y in t.elements() {
                        assert_eq!(t.leq(f.apply(x), y), s.leq(x, rho.apply(y)));
                    }
                }
                assert_eq!(h.left_adjoint(&rho), f);
            }
        }
    }

    #[test]
    fn generators_on_chain3() {
        let c3 = chain(3).unwrap();
        let h = Hom::endo(&c3);
        assert_eq!(h.c(1).table(), &[0, 1, 1]);
        assert_eq!(h.a(2).table(), &[0, 0, 0]);
        assert_eq!(h.tensor_over(1, 1).table(), &[0, 1, 2]);
        assert_eq!(h.e(1, 1).table(), &[0, 0, 1]);
        for y in 0..3 {
            assert_eq!(h.tensor_over(y, 2), h.c(y));
        }
    }

    #[test]
    fn tensor_identities_hetero() {
        let (s, t) = (n5(), boolean(2).unwrap());
        let h = Hom::new(&s, &t);
        for x in s.elements() {
            for y in t.elements() {
                let (c, a) = (h.c(y), h.a(x));
                assert_eq!(h.tensor_over(y, x), h.join(&c, &a));
                assert_eq!(h.e(y, x), h.meet(&c, &a));
                assert!(h.is_sup_preserving(h.tensor_over(y, x).table()));
                assert!(h.reversed().is_inf_preserving(h.reversed().tensor_under(x, y).table()));
                assert_eq!(
                    h.tensor_under(0, 0),
                    InfMap(h.pointwise_meet(h.gamma(0).table(), h.alpha(0).table()))
                );
            }
            assert_eq!(h.a(x), h.tensor_over(t.bottom(), x));
        }
    }

    #[test]
    fn characterization() {
        let c3 = chain(3).unwrap();
        let h = Hom::endo(&c3);
        let id = h.identity().unwrap();
        let eq = h.characterization_check(&id, 2, 1);
        assert!(eq.holds() && !eq.value());
        assert!(h.characterization_check(&id, 1, 1).value());
        let m5 = mk(5).unwrap();
        let hm = Hom::endo(&m5);
        let cu = hm.c(1);
        for x in 1..7 {
            let eq = hm.characterization_check(&cu, x, 1);
            assert!(eq.holds() && eq.value());
        }
    }

    #[test]
    fn sup_interior_matches_brute_force() {
        for l in [chain(2), chain(3), boolean(2), mk(3), Ok(n5())] {
            let l = l.unwrap();
            let h = Hom::endo(&l);
            let sups = all_sup_maps(&h);
            for k in all_monotone(&h) {
                let oracle = sups
                    .iter()
                    .filter(|g| h.leq(g, &k))
                    .fold(h.bottom().0, |acc, g| h.pointwise_join(&acc, g));
                let got = h.sup_interior(&MonotoneMap(k.clone()));
                assert_eq!(got.table(), oracle.as_slice(), "k = {k:?}");
                assert_eq!(h.sup_interior(&got.clone().into()), got);
            }
        }
        let c2 = chain(2).unwrap();
        assert_eq!(Hom::endo(&c2).sup_interior(&MonotoneMap(vec![1, 1])).table(), &[0, 1]);
        let m5 = mk(5).unwrap();
        assert_eq!(
            Hom::endo(&m5).sup_interior(&MonotoneMap(vec![6; 7])).table(),
            &[0, 6, 6, 6, 6, 6, 6]
        );
    }

    #[test]
    fn sup_interior_needs_the_monotone_clause() {
        // k(p) = ⊤ while k(q) = k(r) = q on M3: the pair clause alone would
        // stabilise at a map that is not monotone.
        let m3 = mk(3).unwrap();
        let h = Hom::endo(&m3);
        let k = MonotoneMap(vec![0, 4, 2, 2, 4]);
        let g = h.sup_interior(&k);
        assert!(h.is_sup_preserving(g.table()));
        assert!(h.leq(g.table(), k.table()));
    }

    #[test]
    fn raney_on_chain3() {
        let c3 = chain(3).unwrap();
        let h = Hom::endo(&c3);
        let id = h.identity().unwrap();
        assert_eq!(h.raney_down(&InfMap(id.table().to_vec())).table(), &[0, 0, 1]);
        assert_eq!(h.raney_up(&id).table(), &[1, 2, 2]);
        assert_eq!(h.star(&id).table(), &[0, 0, 1]);
        assert_eq!(h.star_via_right_adjoint(&id), h.star(&id));
        let c2 = chain(2).unwrap();
        let h2 = Hom::endo(&c2);
        assert_eq!(h2.tight_interior(&h2.identity().unwrap()), h2.identity().unwrap());
        let m5 = mk(5).unwrap();
        let hm = Hom::endo(&m5);
        assert_eq!(hm.tight_interior(&hm.identity().unwrap()).table(), &[0; 7]);
    }

    #[test]
    fn bimorphism_extension() {
        let c3 = chain(3).unwrap();
        let h = Hom::endo(&c3);
        for x in 0..3 {
            for y in 0..3 {
                let g = h.tensor_under(y, x);
                let ext = extend_bimorphism(&h, &c3, &g, |b, a| h.e(b, a));
                assert_eq!(ext, h.e(y, x));
            }
        }
        let g = h.raney_up(&h.identity().unwrap());
        assert_eq!(extend_bimorphism(&h, &c3, &g, |b, a| h.e(b, a)), h.raney_down(&g));
        assert_eq!(extend_bimorphism(&c3, &c3, &g, |_, _| 0), 0);
    }

    #[test]
    fn factorizations() {
        let b2 = boolean(2).unwrap();
        let h = Hom::endo(&b2);
        let swap = h.sup_map(vec![0, 2, 1, 3]).unwrap();
        let fz = h.factorize(&swap);
        assert_eq!(fz.closure.table(), &[0, 1, 2, 3]);
        assert_eq!(fz.interior.table(), &[0, 1, 2, 3]);
        let c = h.c(1);
        assert_eq!(h.factorize(&c).target_fixed, vec![0, 1]);
        let bot = h.bottom();
        let fz = h.factorize(&bot);
        assert_eq!((fz.source_fixed.len(), fz.target_fixed.len()), (1, 1));
        for table in all_sup_maps(&h) {
            let f = SupMap(table);
            let fz = h.factorize(&f);
            assert_eq!(fz.reassemble(), f.table());
            assert!(fz.iso_is_order_isomorphism(&b2, &b2));
        }
    }
}
