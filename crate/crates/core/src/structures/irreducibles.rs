//! Irreducible elements of `Q(L, L)` and whether it is self-dual.

use serde::Serialize;

use crate::endo::{EndoError, EndoHomset};
use crate::lattice::find_order_isomorphism;

/// Default cap on `|Q|` for the anti-automorphism search.
pub const DEFAULT_MAX_AUTODUAL: usize = 2000;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct IrreducibleReport {
    /// Join-irreducibles of `Q(L, L)`, as homset indices.
    pub join_irreducibles: Vec<usize>,
    /// Meet-irreducibles of `Q(L, L)`, as homset indices.
    pub meet_irreducibles: Vec<usize>,
    /// `m ⊗̄ j` for `m ∈ M(L)`, `j ∈ J(L)`, in that nesting order.
    pub tensors: Vec<usize>,
    /// `e_{j,m}` for `j ∈ J(L)`, `m ∈ M(L)`.
    pub e_maps: Vec<usize>,
    pub lattice_join_irreducibles: usize,
    pub lattice_meet_irreducibles: usize,
}

impl IrreducibleReport {
    /// `|M(L)|·|J(L)|`.
    pub fn product(&self) -> usize {
        self.lattice_join_irreducibles * self.lattice_meet_irreducibles
    }

    /// The meet-irreducibles of `Q` are exactly the tensors `m ⊗̄ j`.
    pub fn meet_irreducibles_are_tensors(&self) -> bool {
        let mut t = self.tensors.clone();
        t.sort_unstable();
        t.dedup();
        t == self.meet_irreducibles
    }

    /// Every `e_{j,m}` is join-irreducible in `Q`.
    pub fn e_maps_join_irreducible(&self) -> bool {
        self.e_maps.iter().all(|e| self.join_irreducibles.binary_search(e).is_ok())
    }

    pub fn tensors_distinct(&self) -> bool {
        distinct(&self.tensors)
    }

    pub fn e_maps_distinct(&self) -> bool {
        distinct(&self.e_maps)
    }
}

fn distinct(v: &[usize]) -> bool {
    let mut s = v.to_vec();
    s.sort_unstable();
    s.dedup();
    s.len() == v.len()
}

pub fn homset_irreducibles(q: &EndoHomset) -> Result<IrreducibleReport, EndoError> {
    let ql = q.as_lattice()?;
    let l = q.lattice();
    let hom = q.hom();
    let jl = l.join_irreducibles().members().to_vec();
    let ml = l.meet_irreducibles().members().to_vec();
    let index = |f: &crate::maps::SupMap| q.index_of(f.table()).expect("generator is enumerated");
    let tensors = ml
        .iter()
        .flat_map(|&m| jl.iter().map(move |&j| (m, j)))
        .map(|(m, j)| index(&hom.tensor_over(m, j)))
        .collect();
    let e_maps = jl
        .iter()
        .flat_map(|&j| ml.iter().map(move |&m| (j, m)))
        .map(|(j, m)| index(&hom.e(j, m)))
        .collect();
    Ok(IrreducibleReport {
        join_irreducibles: ql.join_irreducibles().members().to_vec(),
        meet_irreducibles: ql.meet_irreducibles().members().to_vec(),
        tensors,
        e_maps,
        lattice_join_irreducibles: jl.len(),
        lattice_meet_irreducibles: ml.len(),
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "verdict", rename_all = "kebab-case")]
pub enum AutodualVerdict {
    /// `witness[f]` is the image of `f` under an order-reversing bijection.
    Autodual { method: String, witness: Vec<usize> },
    NotAutodual { reason: String },
    Inconclusive { cap: usize },
}

impl AutodualVerdict {
    pub fn label(&self) -> &'static str {
        match self {
            AutodualVerdict::Autodual { .. } => "autodual",
            AutodualVerdict::NotAutodual { .. } => "not-autodual",
            AutodualVerdict::Inconclusive { .. } => "inconclusive",
        }
    }
}

/// `h` reverses the order of `Q` and is a bijection.
pub fn is_anti_automorphism(q: &EndoHomset, h: &[usize]) -> bool {
    let m = q.len();
    if h.len() != m {
        return false;
    }
    let mut seen = vec![false; m];
    for &v in h {
        if v >= m || std::mem::replace(&mut seen[v], true) {
            return false;
        }
    }
    (0..m).all(|f| (0..m).all(|g| q.leq(f, g) == q.leq(h[g], h[f])))
}

/// Decides whether `Q(L, L)` is isomorphic to its dual.
///
/// Unequal numbers of join- and meet-irreducibles rule it out. Otherwise,
/// a cyclic dualizing `o = ∨id` gives the negation `f ↦ f \ o` as a
/// candidate witness; failing that, an exhaustive search runs for
/// `|Q| ≤ cap`.
pub fn autodual_report(q: &EndoHomset, cap: usize) -> Result<AutodualVerdict, EndoError> {
    let report = homset_irreducibles(q)?;
    let (nj, nm) = (report.join_irreducibles.len(), report.meet_irreducibles.len());
    if nj != nm {
        return Ok(AutodualVerdict::NotAutodual {
            reason: format!("|J(Q)| = {nj} but |M(Q)| = {nm}"),
        });
    }
    let o = q.canonical_o();
    if q.is_cyclic(o)? && q.is_dualizing(o)? {
        let r = q.residuals()?;
        let neg: Vec<usize> = (0..q.len()).map(|f| r.under(f, o)).collect();
        if is_anti_automorphism(q, &neg) {
            return Ok(AutodualVerdict::Autodual {
                method: "negation".into(),
                witness: neg,
            });
        }
    }
    if q.len() > cap {
        return Ok(AutodualVerdict::Inconclusive { cap });
    }
    let ql = q.as_lattice()?;
    match find_order_isomorphism(ql.poset(), &ql.poset().dual()) {
        Some(witness) => Ok(AutodualVerdict::Autodual {
            method: "search".into(),
            witness,
        }),
        None => Ok(AutodualVerdict::NotAutodual {
            reason: "no order-reversing bijection exists".into(),
        }),
    }
}
