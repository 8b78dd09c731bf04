//! Finite posets and lattices.
//!
//! Elements are dense indices `0..n`. The order is stored as a boolean
//! matrix and binary joins and meets are precomputed tables, so every lattice
//! operation used by the exhaustive checks is a single lookup.

use std::collections::HashMap;
use std::fmt;

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};
use thiserror::Error;

/// Default cap on the size of parsed or generated lattices.
pub const DEFAULT_MAX_LATTICE: usize = 64;
/// Default cap on the size of a downset lattice.
pub const DEFAULT_MAX_DOWNSETS: usize = 4096;
/// Default cap on the number of automorphisms an automorphism search may return.
pub const DEFAULT_MAX_AUTOMORPHISMS: usize = 100_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Bound {
    Join,
    Meet,
}

impl fmt::Display for Bound {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Bound::Join => f.write_str("least upper bound"),
            Bound::Meet => f.write_str("greatest lower bound"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LatticeError {
    #[error("not a partial order: `{0}` and `{1}` are distinct but each below the other")]
    NotAPartialOrder(String, String),
    #[error("not a partial order: {0}")]
    InvalidOrder(String),
    #[error("not a lattice: `{a}` and `{b}` have no {bound}")]
    NotALattice { a: String, b: String, bound: Bound },
    #[error("no bounded element: the lattice is empty")]
    NoBoundedElement,
    #[error("{what} would have {size} elements, above the cap of {cap}")]
    SizeGuard {
        what: &'static str,
        size: usize,
        cap: usize,
    },
    #[error("invalid lattice file: {0}")]
    Format(String),
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("automorphism search returned more than {cap} permutations")]
    SearchCap { cap: usize },
}

/// A finite partial order on `0..size`.
#[derive(Clone, PartialEq, Eq)]
pub struct Poset {
    size: usize,
    leq: Vec<bool>,
    names: Vec<String>,
}

impl fmt::Debug for Poset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Poset")
            .field("size", &self.size)
            .field("names", &self.names)
            .finish()
    }
}

fn default_names(n: usize) -> Vec<String> {
    (0..n).map(|i| i.to_string()).collect()
}

impl Poset {
    /// Builds a poset from a cover (or any generating) relation: `(i, j)`
    /// means `i < j`. The relation is closed reflexively and transitively.
    pub fn from_covers(names: Vec<String>, covers: &[(usize, usize)]) -> Result<Self, LatticeError> {
        let n = names.len();
        let mut leq = vec![false; n * n];
        for i in 0..n {
            leq[i * n + i] = true;
        }
        for &(i, j) in covers {
            if i >= n || j >= n {
                return Err(LatticeError::Format(format!(
                    "cover ({i}, {j}) refers to a missing element (have {n})"
                )));
            }
            leq[i * n + j] = true;
        }
        // Warshall closure.
        for k in 0..n {
            for i in 0..n {
                if leq[i * n + k] {
                    for j in 0..n {
                        if leq[k * n + j] {
                            leq[i * n + j] = true;
                        }
                    }
                }
            }
        }
        let poset = Poset { size: n, leq, names };
        poset.check_antisymmetric()?;
        Ok(poset)
    }

    /// Builds a poset from a full order matrix, which must already be
    /// reflexive, antisymmetric and transitive.
    /// Trusted constructor for an already validated order.
    pub(crate) fn from_raw(size: usize, leq: Vec<bool>, names: Vec<String>) -> Self {
        Poset { size, leq, names }
    }

    pub fn from_leq(names: Vec<String>, matrix: &[Vec<bool>]) -> Result<Self, LatticeError> {
        let n = names.len();
        if matrix.len() != n || matrix.iter().any(|row| row.len() != n) {
            return Err(LatticeError::Format(format!("order matrix must be {n}x{n}")));
        }
        let leq: Vec<bool> = matrix.iter().flatten().copied().collect();
        let poset = Poset { size: n, leq, names };
        for i in 0..n {
            if !poset.leq(i, i) {
                return Err(LatticeError::InvalidOrder(format!(
                    "`{}` is not below itself",
                    poset.names[i]
                )));
            }
        }
        poset.check_antisymmetric()?;
        for i in 0..n {
            for j in 0..n {
                for k in 0..n {
                    if poset.leq(i, j) && poset.leq(j, k) && !poset.leq(i, k) {
                        return Err(LatticeError::InvalidOrder(format!(
                            "`{}` <= `{}` <= `{}` but not `{}` <= `{}`",
                            poset.names[i], poset.names[j], poset.names[k], poset.names[i], poset.names[k]
                        )));
                    }
                }
            }
        }
        Ok(poset)
    }

    fn check_antisymmetric(&self) -> Result<(), LatticeError> {
        let n = self.size;
        for i in 0..n {
            for j in i + 1..n {
                if self.leq(i, j) && self.leq(j, i) {
                    return Err(LatticeError::NotAPartialOrder(
                        self.names[i].clone(),
                        self.names[j].clone(),
                    ));
                }
            }
        }
        Ok(())
    }

    pub fn antichain(n: usize) -> Self {
        Poset::from_covers(default_names(n), &[]).expect("antichain is an order")
    }

    pub fn chain(n: usize) -> Self {
        let covers: Vec<_> = (1..n).map(|i| (i - 1, i)).collect();
        Poset::from_covers(default_names(n), &covers).expect("chain is an order")
    }

    #[inline]
    pub fn size(&self) -> usize {
        self.size
    }

    #[inline]
    pub fn leq(&self, x: usize, y: usize) -> bool {
        self.leq[x * self.size + y]
    }

    #[inline]
    pub fn lt(&self, x: usize, y: usize) -> bool {
        x != y && self.leq(x, y)
    }

    pub fn name(&self, x: usize) -> &str {
        &self.names[x]
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    /// The opposite order.
    pub fn dual(&self) -> Poset {
        let n = self.size;
        let mut leq = vec![false; n * n];
        for i in 0..n {
            for j in 0..n {
                leq[j * n + i] = self.leq(i, j);
            }
        }
        Poset {
            size: n,
            leq,
            names: self.names.clone(),
        }
    }

    /// Pairs `(x, y)` such that `y` covers `x`, in lexicographic order.
    /// Stable fingerprint of the order (element names are ignored).
    pub fn fingerprint(&self) -> String {
        let mut h = Sha256::new();
        h.update((self.size as u64).to_le_bytes());
        let bits: Vec<u8> = self.leq.iter().map(|&b| b as u8).collect();
        h.update(&bits);
        hex::encode(&h.finalize()[..8])
    }

    pub fn covers(&self) -> Vec<(usize, usize)> {
        let n = self.size;
        let mut out = Vec::new();
        for x in 0..n {
            for y in 0..n {
                if self.lt(x, y) && !(0..n).any(|z| self.lt(x, z) && self.lt(z, y)) {
                    out.push((x, y));
                }
            }
        }
        out
    }

    /// `true` iff `set` (a bitmask over the elements) is down-closed.
    pub fn is_downset(&self, set: u64) -> bool {
        (0..self.size).all(|x| {
            set & (1 << x) == 0 || (0..self.size).all(|y| !self.leq(y, x) || set & (1 << y) != 0)
        })
    }

    /// Order automorphisms, identity first, lexicographically sorted.
    pub fn automorphisms(&self, cap: usize) -> Result<Vec<Vec<usize>>, LatticeError> {
        order_isomorphisms(self, self, cap)
    }
}

/// All order isomorphisms from `a` onto `b`, lexicographically sorted.
///
/// Backtracks element by element, pruning on the sizes of principal down-
/// and up-sets and on order consistency with every earlier assignment.
pub fn order_isomorphisms(a: &Poset, b: &Poset, cap: usize) -> Result<Vec<Vec<usize>>, LatticeError> {
    let mut out = search_isomorphisms(a, b, cap, false)?;
    out.sort();
    Ok(out)
}

/// The first order isomorphism from `a` onto `b` met by the search, if any.
pub fn find_order_isomorphism(a: &Poset, b: &Poset) -> Option<Vec<usize>> {
    search_isomorphisms(a, b, usize::MAX, true)
        .ok()
        .and_then(|v| v.into_iter().next())
}

fn search_isomorphisms(
    a: &Poset,
    b: &Poset,
    cap: usize,
    first_only: bool,
) -> Result<Vec<Vec<usize>>, LatticeError> {
    let n = a.size();
    if n != b.size() {
        return Ok(Vec::new());
    }
    let profile = |p: &Poset, x: usize| {
        let down = (0..n).filter(|&y| p.leq(y, x)).count();
        let up = (0..n).filter(|&y| p.leq(x, y)).count();
        (down, up)
    };
    let pa: Vec<_> = (0..n).map(|x| profile(a, x)).collect();
    let pb: Vec<_> = (0..n).map(|x| profile(b, x)).collect();
    let mut out = Vec::new();
    let mut image = vec![usize::MAX; n];
    let mut used = vec![false; n];

    #[allow(clippy::too_many_arguments)]
    fn go(
        x: usize,
        a: &Poset,
        b: &Poset,
        pa: &[(usize, usize)],
        pb: &[(usize, usize)],
        image: &mut Vec<usize>,
        used: &mut Vec<bool>,
        out: &mut Vec<Vec<usize>>,
        cap: usize,
        first_only: bool,
    ) -> Result<(), LatticeError> {
        let n = a.size();
        if first_only && !out.is_empty() {
            return Ok(());
        }
        if x == n {
            if out.len() >= cap {
                return Err(LatticeError::SearchCap { cap });
            }
            out.push(image.clone());
            return Ok(());
        }
        for c in 0..n {
            if used[c] || pa[x] != pb[c] {
                continue;
            }
            let consistent = (0..x).all(|z| {
                a.leq(z, x) == b.leq(image[z], c) && a.leq(x, z) == b.leq(c, image[z])
            });
            if !consistent {
                continue;
            }
            image[x] = c;
            used[c] = true;
            go(x + 1, a, b, pa, pb, image, used, out, cap, first_only)?;
            used[c] = false;
        }
        image[x] = usize::MAX;
        Ok(())
    }

    go(0, a, b, &pa, &pb, &mut image, &mut used, &mut out, cap, first_only)?;
    Ok(out)
}

/// A finite lattice with precomputed join and meet tables.
#[derive(Clone, PartialEq, Eq)]
pub struct Lattice {
    poset: Poset,
    join: Vec<u32>,
    meet: Vec<u32>,
    bottom: usize,
    top: usize,
}

impl fmt::Debug for Lattice {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Lattice")
            .field("size", &self.size())
            .field("names", &self.poset.names)
            .field("covers", &self.poset.covers())
            .finish()
    }
}

/// The first lattice law that fails, with the elements involved.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct AxiomViolation {
    pub law: &'static str,
    pub elements: Vec<usize>,
}

impl Lattice {
    /// Validates that every pair of elements has a least upper bound and a
    /// greatest lower bound. Reports the first failing pair.
    pub fn from_poset(poset: Poset) -> Result<Self, LatticeError> {
        let n = poset.size();
        if n == 0 {
            return Err(LatticeError::NoBoundedElement);
        }
        let mut join = vec![0u32; n * n];
        let mut meet = vec![0u32; n * n];
        let lub = |x: usize, y: usize, up: bool| -> Option<usize> {
            let bounded = |z: usize| {
                if up {
                    poset.leq(x, z) && poset.leq(y, z)
                } else {
                    poset.leq(z, x) && poset.leq(z, y)
                }
            };
            let better = |z: usize, w: usize| if up { poset.leq(z, w) } else { poset.leq(w, z) };
            let mut best: Option<usize> = None;
            for z in (0..n).filter(|&z| bounded(z)) {
                if best.is_none_or(|b| better(z, b)) {
                    best = Some(z);
                }
            }
            let best = best?;
            (0..n).filter(|&z| bounded(z)).all(|z| better(best, z)).then_some(best)
        };
        for x in 0..n {
            for y in x..n {
                let j = lub(x, y, true).ok_or_else(|| LatticeError::NotALattice {
                    a: poset.name(x).to_string(),
                    b: poset.name(y).to_string(),
                    bound: Bound::Join,
                })?;
                let m = lub(x, y, false).ok_or_else(|| LatticeError::NotALattice {
                    a: poset.name(x).to_string(),
                    b: poset.name(y).to_string(),
                    bound: Bound::Meet,
                })?;
                join[x * n + y] = j as u32;
                join[y * n + x] = j as u32;
                meet[x * n + y] = m as u32;
                meet[y * n + x] = m as u32;
            }
        }
        Ok(Self::from_tables(poset, join, meet))
    }

    /// Assembles a lattice from tables already known to be correct.
    pub(crate) fn from_tables(poset: Poset, join: Vec<u32>, meet: Vec<u32>) -> Self {
        let n = poset.size();
        let bottom = (0..n)
            .find(|&b| (0..n).all(|x| poset.leq(b, x)))
            .expect("finite lattice has a bottom");
        let top = (0..n)
            .find(|&t| (0..n).all(|x| poset.leq(x, t)))
            .expect("finite lattice has a top");
        Lattice {
            poset,
            join,
            meet,
            bottom,
            top,
        }
    }

    /// Builds a lattice from a cover relation, checking the size guard.
    pub fn from_covers(
        names: Vec<String>,
        covers: &[(usize, usize)],
        cap: usize,
    ) -> Result<Self, LatticeError> {
        guard("lattice", names.len(), cap)?;
        Lattice::from_poset(Poset::from_covers(names, covers)?)
    }

    #[inline]
    pub fn size(&self) -> usize {
        self.poset.size
    }

    pub fn elements(&self) -> std::ops::Range<usize> {
        0..self.size()
    }

    pub fn poset(&self) -> &Poset {
        &self.poset
    }

    #[inline]
    pub fn leq(&self, x: usize, y: usize) -> bool {
        self.poset.leq(x, y)
    }

    #[inline]
    pub fn lt(&self, x: usize, y: usize) -> bool {
        self.poset.lt(x, y)
    }

    #[inline]
    pub fn join(&self, x: usize, y: usize) -> usize {
        self.join[x * self.size() + y] as usize
    }

    #[inline]
    pub fn meet(&self, x: usize, y: usize) -> usize {
        self.meet[x * self.size() + y] as usize
    }

    #[inline]
    pub fn bottom(&self) -> usize {
        self.bottom
    }

    #[inline]
    pub fn top(&self) -> usize {
        self.top
    }

    pub fn join_all<I: IntoIterator<Item = usize>>(&self, xs: I) -> usize {
        xs.into_iter().fold(self.bottom, |acc, x| self.join(acc, x))
    }

    pub fn meet_all<I: IntoIterator<Item = usize>>(&self, xs: I) -> usize {
        xs.into_iter().fold(self.top, |acc, x| self.meet(acc, x))
    }

    pub fn name(&self, x: usize) -> &str {
        self.poset.name(x)
    }

    pub fn names(&self) -> &[String] {
        self.poset.names()
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.poset.names.iter().position(|n| n == name)
    }

    /// The opposite lattice on the same element indices.
    pub fn dual(&self) -> Lattice {
        Lattice {
            poset: self.poset.dual(),
            join: self.meet.clone(),
            meet: self.join.clone(),
            bottom: self.top,
            top: self.bottom,
        }
    }

    pub fn lower_covers(&self, x: usize) -> Vec<usize> {
        self.elements()
            .filter(|&y| self.lt(y, x) && !self.elements().any(|z| self.lt(y, z) && self.lt(z, x)))
            .collect()
    }

    pub fn upper_covers(&self, x: usize) -> Vec<usize> {
        self.elements()
            .filter(|&y| self.lt(x, y) && !self.elements().any(|z| self.lt(x, z) && self.lt(z, y)))
            .collect()
    }

    /// Join-irreducible elements. In a finite lattice `x` covers exactly one
    /// element iff `x != ⊥` and the join of everything strictly below `x` is
    /// not `x`; the latter test is quadratic rather than cubic.
    pub fn join_irreducibles(&self) -> ElementSet<'_> {
        let members = self
            .elements()
            .filter(|&x| {
                x != self.bottom && self.join_all(self.elements().filter(|&y| self.lt(y, x))) != x
            })
            .collect();
        ElementSet { lattice: self, members }
    }

    pub fn meet_irreducibles(&self) -> ElementSet<'_> {
        let members = self
            .elements()
            .filter(|&x| x != self.top && self.meet_all(self.elements().filter(|&y| self.lt(x, y))) != x)
            .collect();
        ElementSet { lattice: self, members }
    }

    pub fn is_distributive(&self) -> bool {
        self.distributivity_witness().is_none()
    }

    /// A triple `(x, y, z)` with `x ∧ (y ∨ z) != (x ∧ y) ∨ (x ∧ z)`.
    pub fn distributivity_witness(&self) -> Option<(usize, usize, usize)> {
        for x in self.elements() {
            for y in self.elements() {
                for z in self.elements() {
                    if self.meet(x, self.join(y, z)) != self.join(self.meet(x, y), self.meet(x, z)) {
                        return Some((x, y, z));
                    }
                }
            }
        }
        None
    }

    /// Exhaustively checks the lattice laws and the tables against the order.
    pub fn check_axioms(&self) -> Result<(), AxiomViolation> {
        let fail = |law, elements: &[usize]| {
            Err(AxiomViolation {
                law,
                elements: elements.to_vec(),
            })
        };
        for x in self.elements() {
            if !self.leq(self.bottom, x) || !self.leq(x, self.top) {
                return fail("bounds", &[x]);
            }
            if self.join(x, x) != x || self.meet(x, x) != x {
                return fail("idempotence", &[x]);
            }
            for y in self.elements() {
                let j = self.join(x, y);
                let m = self.meet(x, y);
                if j != self.join(y, x) || m != self.meet(y, x) {
                    return fail("commutativity", &[x, y]);
                }
                if self.join(x, m) != x || self.meet(x, j) != x {
                    return fail("absorption", &[x, y]);
                }
                if !(self.leq(x, j) && self.leq(y, j) && self.leq(m, x) && self.leq(m, y)) {
                    return fail("bound tables", &[x, y]);
                }
                if self.leq(x, y) != (j == y) {
                    return fail("order/join consistency", &[x, y]);
                }
                for z in self.elements() {
                    if self.join(x, self.join(y, z)) != self.join(j, z)
                        || self.meet(x, self.meet(y, z)) != self.meet(m, z)
                    {
                        return fail("associativity", &[x, y, z]);
                    }
                    if self.leq(x, z) && self.leq(y, z) && !self.leq(j, z) {
                        return fail("least upper bound", &[x, y, z]);
                    }
                    if self.leq(z, x) && self.leq(z, y) && !self.leq(z, m) {
                        return fail("greatest lower bound", &[x, y, z]);
                    }
                }
            }
        }
        Ok(())
    }

    /// Order automorphisms, identity first.
    pub fn automorphisms(&self, cap: usize) -> Result<Vec<Vec<usize>>, LatticeError> {
        self.poset.automorphisms(cap)
    }

    pub fn find_isomorphism(&self, other: &Lattice) -> Option<Vec<usize>> {
        find_order_isomorphism(&self.poset, &other.poset)
    }

    /// Stable fingerprint of the order (element names are ignored).
    pub fn fingerprint(&self) -> String {
        self.poset.fingerprint()
    }

    pub fn to_file(&self) -> LatticeFile {
        LatticeFile {
            elements: Some(self.poset.names.clone()),
            covers: Some(self.poset.covers().into_iter().map(|(i, j)| [i, j]).collect()),
            leq: None,
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(&self.to_file()).expect("lattice file serializes")
    }
}

fn guard(what: &'static str, size: usize, cap: usize) -> Result<(), LatticeError> {
    if size > cap {
        Err(LatticeError::SizeGuard { what, size, cap })
    } else {
        Ok(())
    }
}

/// A set of elements of a particular lattice, such as its join-irreducibles.
#[derive(Clone, Debug)]
pub struct ElementSet<'a> {
    lattice: &'a Lattice,
    members: Vec<usize>,
}

impl<'a> ElementSet<'a> {
    pub fn lattice(&self) -> &'a Lattice {
        self.lattice
    }

    pub fn members(&self) -> &[usize] {
        &self.members
    }

    pub fn contains(&self, x: usize) -> bool {
        self.members.binary_search(&x).is_ok()
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        self.members.iter().copied()
    }

    pub fn names(&self) -> Vec<&'a str> {
        let l = self.lattice;
        self.members.iter().map(|&x| l.name(x)).collect()
    }
}

/// On-disk lattice description.
///
/// Either `elements` plus `covers` (element `i` is covered by element `j`) or
/// a full `leq` matrix, optionally with `elements` for labels.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct LatticeFile {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub elements: Option<Vec<String>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub covers: Option<Vec<[usize; 2]>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub leq: Option<Vec<Vec<bool>>>,
}

impl LatticeFile {
    pub fn into_lattice(self, cap: usize) -> Result<Lattice, LatticeError> {
        match (self.covers, self.leq) {
            (Some(covers), None) => {
                let names = self
                    .elements
                    .ok_or_else(|| LatticeError::Format("`covers` requires `elements`".into()))?;
                let covers: Vec<_> = covers.into_iter().map(|[i, j]| (i, j)).collect();
                Lattice::from_covers(names, &covers, cap)
            }
            (None, Some(matrix)) => {
                let names = match self.elements {
                    Some(names) if names.len() == matrix.len() => names,
                    Some(names) => {
                        return Err(LatticeError::Format(format!(
                            "{} element names for a {}x{} matrix",
                            names.len(),
                            matrix.len(),
                            matrix.len()
                        )))
                    }
                    None => default_names(matrix.len()),
                };
                guard("lattice", names.len(), cap)?;
                Lattice::from_poset(Poset::from_leq(names, &matrix)?)
            }
            (Some(_), Some(_)) => Err(LatticeError::Format("give either `covers` or `leq`, not both".into())),
            (None, None) => Err(LatticeError::Format("missing `covers` or `leq`".into())),
        }
    }
}

/// Parses the JSON lattice format with the default size guard.
pub fn parse_lattice(text: &str) -> Result<Lattice, LatticeError> {
    parse_lattice_with_cap(text, DEFAULT_MAX_LATTICE)
}

pub fn parse_lattice_with_cap(text: &str, cap: usize) -> Result<Lattice, LatticeError> {
    let file: LatticeFile = serde_json::from_str(text).map_err(|e| LatticeError::Format(e.to_string()))?;
    file.into_lattice(cap)
}

/// The chain `0 < 1 < ... < n-1`.
pub fn chain(n: usize) -> Result<Lattice, LatticeError> {
    chain_with_cap(n, DEFAULT_MAX_LATTICE)
}

pub fn chain_with_cap(n: usize, cap: usize) -> Result<Lattice, LatticeError> {
    if n == 0 {
        return Err(LatticeError::InvalidParameter("a chain needs at least one element".into()));
    }
    guard("chain", n, cap)?;
    let covers: Vec<_> = (1..n).map(|i| (i - 1, i)).collect();
    Lattice::from_poset(Poset::from_covers(default_names(n), &covers)?)
}

/// The powerset of `k` atoms; element `i` is the subset with bitmask `i`.
pub fn boolean(k: usize) -> Result<Lattice, LatticeError> {
    boolean_with_cap(k, DEFAULT_MAX_LATTICE)
}

pub fn boolean_with_cap(k: usize, cap: usize) -> Result<Lattice, LatticeError> {
    let size = 1usize.checked_shl(k as u32).filter(|_| k < 32).unwrap_or(usize::MAX);
    guard("boolean lattice", size, cap)?;
    let names = (0..size)
        .map(|mask| {
            let atoms: Vec<String> = (0..k).filter(|a| mask & (1 << a) != 0).map(|a| a.to_string()).collect();
            format!("{{{}}}", atoms.join(","))
        })
        .collect();
    let mut covers = Vec::new();
    for mask in 0..size {
        for a in 0..k {
            if mask & (1 << a) == 0 {
                covers.push((mask, mask | (1 << a)));
            }
        }
    }
    Lattice::from_poset(Poset::from_covers(names, &covers)?)
}

/// `⊥`, `k` pairwise incomparable atoms, `⊤`. Index 0 is `⊥`, `k + 1` is `⊤`.
/// For `k = 5` the atoms are named `u, d, a, b, c`.
pub fn mk(k: usize) -> Result<Lattice, LatticeError> {
    mk_with_cap(k, DEFAULT_MAX_LATTICE)
}

pub fn mk_with_cap(k: usize, cap: usize) -> Result<Lattice, LatticeError> {
    guard("M_k lattice", k + 2, cap)?;
    let mut names = vec!["⊥".to_string()];
    if k == 5 {
        names.extend(["u", "d", "a", "b", "c"].map(String::from));
    } else {
        names.extend((1..=k).map(|i| format!("a{i}")));
    }
    names.push("⊤".to_string());
    let mut covers: Vec<_> = (1..=k).flat_map(|a| [(0, a), (a, k + 1)]).collect();
    if k == 0 {
        covers.push((0, 1));
    }
    Lattice::from_poset(Poset::from_covers(names, &covers)?)
}

/// The pentagon: `⊥ < a < b < ⊤` and `⊥ < c < ⊤`.
pub fn n5() -> Lattice {
    let names = ["⊥", "a", "b", "c", "⊤"].map(String::from).to_vec();
    Lattice::from_poset(Poset::from_covers(names, &[(0, 1), (1, 2), (2, 4), (0, 3), (3, 4)]).unwrap())
        .expect("N5 is a lattice")
}

/// The lattice of down-closed subsets of a poset, ordered by inclusion.
#[derive(Clone, Debug)]
pub struct DownsetLattice {
    poset: Poset,
    lattice: Lattice,
    sets: Vec<u64>,
    index: HashMap<u64, usize>,
}

impl DownsetLattice {
    pub fn new(poset: &Poset) -> Result<Self, LatticeError> {
        Self::with_cap(poset, DEFAULT_MAX_DOWNSETS)
    }

    /// The guard is applied to `2^|P|`, an upper bound on the number of downsets.
    pub fn with_cap(poset: &Poset, cap: usize) -> Result<Self, LatticeError> {
        let p = poset.size();
        let bound = if p < 63 { 1usize << p } else { usize::MAX };
        guard("downset lattice", bound, cap)?;
        let mut sets: Vec<u64> = (0..bound as u64).filter(|&s| poset.is_downset(s)).collect();
        sets.sort_by_key(|&s| (s.count_ones(), s));
        let index: HashMap<u64, usize> = sets.iter().enumerate().map(|(i, &s)| (s, i)).collect();
        let n = sets.len();
        let mut leq = vec![false; n * n];
        let mut join = vec![0u32; n * n];
        let mut meet = vec![0u32; n * n];
        for (i, &a) in sets.iter().enumerate() {
            for (j, &b) in sets.iter().enumerate() {
                leq[i * n + j] = a & !b == 0;
                join[i * n + j] = index[&(a | b)] as u32;
                meet[i * n + j] = index[&(a & b)] as u32;
            }
        }
        let names = sets
            .iter()
            .map(|&s| {
                let members: Vec<&str> = (0..p).filter(|x| s & (1 << x) != 0).map(|x| poset.name(x)).collect();
                format!("{{{}}}", members.join(","))
            })
            .collect();
        let order = Poset { size: n, leq, names };
        Ok(DownsetLattice {
            poset: poset.clone(),
            lattice: Lattice::from_tables(order, join, meet),
            sets,
            index,
        })
    }

    pub fn poset(&self) -> &Poset {
        &self.poset
    }

    pub fn lattice(&self) -> &Lattice {
        &self.lattice
    }

    pub fn into_lattice(self) -> Lattice {
        self.lattice
    }

    /// Members of the downset at lattice index `d`, as a bitmask.
    pub fn members(&self, d: usize) -> u64 {
        self.sets[d]
    }

    pub fn index_of(&self, set: u64) -> Option<usize> {
        self.index.get(&set).copied()
    }

    /// The lattice index of the principal downset `↓x`.
    pub fn principal(&self, x: usize) -> usize {
        let p = &self.poset;
        let set = (0..p.size()).filter(|&y| p.leq(y, x)).fold(0u64, |s, y| s | (1 << y));
        self.index[&set]
    }
}

pub fn downset_lattice(poset: &Poset) -> Result<Lattice, LatticeError> {
    DownsetLattice::new(poset).map(DownsetLattice::into_lattice)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn brute_automorphisms(l: &Lattice) -> usize {
        fn perms(n: usize) -> Vec<Vec<usize>> {
            if n == 0 {
                return vec![vec![]];
            }
            let mut out = Vec::new();
            for p in perms(n - 1) {
                for pos in 0..n {
                    let mut q = p.clone();
                    q.insert(pos, n - 1);
                    out.push(q);
                }
            }
            out
        }
        let n = l.size();
        perms(n)
            .into_iter()
            .filter(|p| (0..n).all(|x| (0..n).all(|y| l.leq(x, y) == l.leq(p[x], p[y]))))
            .count()
    }

    #[test]
    fn parse_two_chain() {
        let l = parse_lattice(r#"{"elements":["0","1"],"covers":[[0,1]]}"#).unwrap();
        assert_eq!(l.size(), 2);
        assert_eq!((l.bottom(), l.top()), (0, 1));
    }

    #[test]
    fn parse_m5_covers() {
        let text = r#"{"elements":["bot","u","d","a","b","c","top"],
            "covers":[[0,1],[0,2],[0,3],[0,4],[0,5],[1,6],[2,6],[3,6],[4,6],[5,6]]}"#;
        let l = parse_lattice(text).unwrap();
        assert_eq!(l.size(), 7);
        for x in 1..6 {
            for y in 1..6 {
                if x != y {
                    assert_eq!(l.join(x, y), 6);
                    assert_eq!(l.meet(x, y), 0);
                }
            }
        }
        assert_eq!(l.check_axioms(), Ok(()));
    }

    #[test]
    fn parse_missing_top() {
        let err = parse_lattice(r#"{"elements":["0","1","2"],"covers":[[0,1],[0,2]]}"#).unwrap_err();
        assert_eq!(
            err,
            LatticeError::NotALattice {
                a: "1".into(),
                b: "2".into(),
                bound: Bound::Join
            }
        );
    }

    #[test]
    fn parse_errors() {
        assert!(matches!(
            parse_lattice(r#"{"elements":["0","1"],"covers":[[0,1],[1,0]]}"#),
            Err(LatticeError::NotAPartialOrder(..))
        ));
        assert_eq!(parse_lattice(r#"{"elements":[],"covers":[]}"#), Err(LatticeError::NoBoundedElement));
        assert!(matches!(
            parse_lattice(r#"{"elements":["0"],"covers":[],"extra":1}"#),
            Err(LatticeError::Format(_))
        ));
        assert!(matches!(
            parse_lattice(r#"{"elements":["0"],"covers":[[0,3]]}"#),
            Err(LatticeError::Format(_))
        ));
        let l = parse_lattice(r#"{"leq":[[true,true],[false,true]]}"#).unwrap();
        assert_eq!(l.size(), 2);
        assert!(matches!(
            parse_lattice(r#"{"leq":[[true,true],[true,true]]}"#),
            Err(LatticeError::NotAPartialOrder(..))
        ));
        assert!(matches!(
            parse_lattice(r#"{"leq":[[false,true],[false,true]]}"#),
            Err(LatticeError::InvalidOrder(_))
        ));
    }

    #[test]
    fn size_guard() {
        assert!(matches!(boolean(7), Err(LatticeError::SizeGuard { .. })));
        assert!(matches!(chain(65), Err(LatticeError::SizeGuard { .. })));
        assert!(matches!(chain(0), Err(LatticeError::InvalidParameter(_))));
        let big = Poset::antichain(13);
        assert!(matches!(DownsetLattice::new(&big), Err(LatticeError::SizeGuard { .. })));
    }

    #[test]
    fn generators() {
        let one = chain(1).unwrap();
        assert_eq!(one.bottom(), one.top());
        let b2 = boolean(2).unwrap();
        assert_eq!(b2.size(), 4);
        assert!(b2.is_distributive());
        assert_eq!(b2.join_irreducibles().len(), 2);
        let m5 = mk(5).unwrap();
        assert_eq!(m5.names(), vec!["⊥", "u", "d", "a", "b", "c", "⊤"]);
        assert_eq!(m5.upper_covers(0), vec![1, 2, 3, 4, 5]);
        for l in [chain(4).unwrap(), boolean(3).unwrap(), mk(3).unwrap(), m5, n5(), mk(0).unwrap()] {
            assert_eq!(l.check_axioms(), Ok(()));
        }
    }

    #[test]
    fn dual_lattice() {
        let c3 = chain(3).unwrap();
        assert!(c3.dual().find_isomorphism(&c3).is_some());
        let b2 = boolean(2).unwrap();
        assert_eq!(b2.dual().join(1, 2), b2.meet(1, 2));
        let n = n5();
        assert_eq!(n.dual().dual(), n);
        // Brute-force isomorphism: reversing N5 sends ⊥↔⊤, a↔b, c↔c.
        let rev = [4, 2, 1, 3, 0];
        let d = n.dual();
        assert!((0..5).all(|x| (0..5).all(|y| n.leq(x, y) == d.leq(rev[x], rev[y]))));
        assert_eq!(n.find_isomorphism(&d), Some(rev.to_vec()));
    }

    #[test]
    fn irreducibles() {
        let c3 = chain(3).unwrap();
        assert_eq!(c3.join_irreducibles().members(), &[1, 2]);
        assert_eq!(c3.meet_irreducibles().members(), &[0, 1]);
        let m5 = mk(5).unwrap();
        assert_eq!(m5.join_irreducibles().names(), vec!["u", "d", "a", "b", "c"]);
        assert_eq!(m5.meet_irreducibles().members(), &[1, 2, 3, 4, 5]);
        // Agreement with cover counting.
        for l in [chain(5).unwrap(), boolean(3).unwrap(), n5(), mk(4).unwrap()] {
            for x in l.elements() {
                assert_eq!(l.join_irreducibles().contains(x), l.lower_covers(x).len() == 1);
                assert_eq!(l.meet_irreducibles().contains(x), l.upper_covers(x).len() == 1);
            }
        }
    }

    #[test]
    fn automorphism_counts() {
        assert_eq!(chain(4).unwrap().automorphisms(10).unwrap(), vec![vec![0, 1, 2, 3]]);
        let b2 = boolean(2).unwrap();
        assert_eq!(b2.automorphisms(10).unwrap().len(), 2);
        assert_eq!(brute_automorphisms(&b2), 2);
        let m5 = mk(5).unwrap();
        assert_eq!(m5.automorphisms(1000).unwrap().len(), 120);
        assert_eq!(brute_automorphisms(&m5), 120);
        assert_eq!(brute_automorphisms(&n5()), n5().automorphisms(10).unwrap().len());
        assert!(matches!(m5.automorphisms(100), Err(LatticeError::SearchCap { cap: 100 })));
    }

    #[test]
    fn distributivity() {
        assert!(boolean(3).unwrap().is_distributive());
        assert!(!n5().is_distributive());
        assert!(!mk(5).unwrap().is_distributive());
        assert!(mk(2).unwrap().is_distributive());
    }

    #[test]
    fn downsets() {
        let anti = DownsetLattice::new(&Poset::antichain(2)).unwrap();
        assert!(anti.lattice().find_isomorphism(&boolean(2).unwrap()).is_some());
        // Down-closed subsets of a 2-chain: {}, {0}, {0,1}.
        let c = downset_lattice(&Poset::chain(2)).unwrap();
        assert_eq!(c.size(), 3);
        assert!(c.find_isomorphism(&chain(3).unwrap()).is_some());
        let v = Poset::from_covers(default_names(3), &[(0, 1), (0, 2)]).unwrap();
        let dv = DownsetLattice::new(&v).unwrap();
        assert!(dv.lattice().is_distributive());
        assert_eq!(dv.lattice().join_irreducibles().len(), 3);
        let principals: Vec<_> = (0..3).map(|x| dv.principal(x)).collect();
        let mut sorted = principals.clone();
        sorted.sort();
        assert_eq!(dv.lattice().join_irreducibles().members(), sorted.as_slice());
    }

    #[test]
    fn file_round_trip() {
        let l = n5();
        let back = parse_lattice(&l.to_json()).unwrap();
        assert_eq!(back, l);
        assert_eq!(back.fingerprint(), l.fingerprint());
        assert_ne!(l.fingerprint(), chain(5).unwrap().fingerprint());
    }
}
