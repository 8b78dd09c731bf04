//! The named checks run by [`super::run_suite`].

use std::collections::BTreeSet;
use std::sync::OnceLock;

use serde_json::{json, Value};

use crate::endo::{
    adjunction_formulas, division_mismatches, enumerate_inf_maps, is_automorphism, raney_identity_holds,
    relation_dual_profile, residual_left, residual_right, EndoError, EndoHomset,
};
use crate::lattice::{DownsetLattice, Lattice, Poset, DEFAULT_MAX_AUTOMORPHISMS};
use crate::maps::{extend_bimorphism, Hom, InfMap, MonotoneMap, SupMap};
use crate::oracle;
use crate::structures::{
    abstract_raney_check, autodual_report, classify_natural, homset_irreducibles, induced_automorphism,
    supmap_from_wk, wk_from_automorphism, wk_from_supmap, AutodualVerdict, NaturalKind, RaneyFamily,
    WeakeningRelation,
};

use super::SuiteConfig;

pub(crate) enum Outcome {
    Pass(Option<String>),
    Fail(Value),
    Skip(String),
    /// The check does not apply to this subject and is left out of the report.
    NotApplicable,
}

/// `Err` short-circuits a check with the given outcome.
pub(crate) type CheckOut = Result<Outcome, Outcome>;

impl From<EndoError> for Outcome {
    fn from(e: EndoError) -> Self {
        match e {
            EndoError::HomsetCap { .. } | EndoError::TableCap { .. } => Outcome::Skip(e.to_string()),
            other => Outcome::Fail(json!({ "error": other.to_string() })),
        }
    }
}

fn pass() -> CheckOut {
    Ok(Outcome::Pass(None))
}

fn pass_note(note: impl Into<String>) -> CheckOut {
    Ok(Outcome::Pass(Some(note.into())))
}

fn fail(witness: Value) -> CheckOut {
    Ok(Outcome::Fail(witness))
}

pub(crate) struct Ctx<'a> {
    pub lattice: &'a Lattice,
    pub poset: Option<&'a Poset>,
    pub config: &'a SuiteConfig,
    pub homset: Result<EndoHomset, EndoError>,
    pub cd: bool,
    inf_maps: OnceLock<Result<Vec<InfMap>, EndoError>>,
    automorphisms: OnceLock<Option<Vec<Vec<usize>>>>,
}

impl<'a> Ctx<'a> {
    pub fn new(lattice: &'a Lattice, poset: Option<&'a Poset>, config: &'a SuiteConfig) -> Self {
        Ctx {
            lattice,
            poset,
            config,
            homset: EndoHomset::enumerate(lattice, config.max_homset),
            cd: crate::endo::is_completely_distributive(lattice),
            inf_maps: OnceLock::new(),
            automorphisms: OnceLock::new(),
        }
    }

    fn hom(&self) -> Hom<'a> {
        Hom::endo(self.lattice)
    }

    fn q(&self) -> Result<&EndoHomset, Outcome> {
        self.homset.as_ref().map_err(|e| e.clone().into())
    }

    fn inf_maps(&self) -> Result<&[InfMap], Outcome> {
        self.inf_maps
            .get_or_init(|| enumerate_inf_maps(self.lattice, self.config.max_homset))
            .as_ref()
            .map(Vec::as_slice)
            .map_err(|e| e.clone().into())
    }

    pub fn automorphisms(&self) -> Option<&[Vec<usize>]> {
        self.automorphisms
            .get_or_init(|| self.lattice.automorphisms(DEFAULT_MAX_AUTOMORPHISMS).ok())
            .as_deref()
    }

    fn small(&self, q: &EndoHomset) -> Result<(), Outcome> {
        if q.len() > self.config.max_triple {
            Err(Outcome::Skip(format!(
                "|Q| = {} exceeds the cap of {} for exhaustive pair/triple scans",
                q.len(),
                self.config.max_triple
            )))
        } else {
            Ok(())
        }
    }

    fn names(&self, xs: &[usize]) -> Vec<&str> {
        xs.iter().map(|&x| self.lattice.name(x)).collect()
    }
}

pub(crate) type CheckFn = fn(&Ctx) -> CheckOut;

/// Every check id with its implementation, in report order.
pub(crate) const CHECKS: &[(&str, CheckFn)] = &[
    ("lattice-axioms", lattice_axioms),
    ("dual-involution", dual_involution),
    ("distributive-cd-agree", distributive_cd_agree),
    ("automorphism-group", automorphism_group),
    ("irreducibles", irreducibles),
    ("downset-irreducibles", downset_irreducibles),
    ("homset-enumeration", homset_enumeration),
    ("galois-law", galois_law),
    ("lemma-tensors", lemma_tensors),
    ("tensor-identities", tensor_identities),
    ("canonical-meet", canonical_meet),
    ("canonical-join-inf", canonical_join_inf),
    ("universal-property", universal_property),
    ("sup-interior", sup_interior),
    ("factorization", factorization),
    ("residual-adjunction", residual_adjunction),
    ("residual-oracle", residual_oracle),
    ("raney-adjunction", raney_adjunction),
    ("raney-adjoint-commute", raney_adjoint_commute),
    ("star-formulas", star_formulas),
    ("naturality", naturality),
    ("relation-dual", relation_dual),
    ("adjunction-formulas", adjunction_formulas_check),
    ("division-lemmas", division_lemmas),
    ("division-formulas", division_formulas_check),
    ("transform-tensors", transform_tensors),
    ("tight-bi-ideal", tight_bi_ideal),
    ("tight-interior", tight_interior),
    ("raney-theorem", raney_theorem),
    ("tight-unit", tight_unit),
    ("conucleus", conucleus),
    ("cyclic-elements", cyclic_elements),
    ("dualizing-elements", dualizing_elements),
    ("girard-cd", girard_cd),
    ("dualizing-automorphism-bijection", dualizing_automorphism_bijection),
    ("involutive-bijection", involutive_bijection),
    ("homset-irreducibles", homset_irreducibles_check),
    ("autodual", autodual),
    ("natural-arrows", natural_arrows),
    ("abstract-raney", abstract_raney),
    ("weakening", weakening),
];

// ---- lattice ----

fn lattice_axioms(ctx: &Ctx) -> CheckOut {
    match ctx.lattice.check_axioms() {
        Ok(()) => pass(),
        Err(v) => fail(json!({ "law": v.law, "elements": ctx.names(&v.elements) })),
    }
}

fn dual_involution(ctx: &Ctx) -> CheckOut {
    let l = ctx.lattice;
    let d = l.dual();
    let dd = d.dual();
    for x in l.elements() {
        for y in l.elements() {
            if d.leq(x, y) != l.leq(y, x) || dd.leq(x, y) != l.leq(x, y) || dd.join(x, y) != l.join(x, y) {
                return fail(json!({ "x": l.name(x), "y": l.name(y) }));
            }
        }
    }
    if dd.names() != l.names() || d.bottom() != l.top() {
        return fail(json!("names or bounds changed"));
    }
    pass()
}

fn distributive_cd_agree(ctx: &Ctx) -> CheckOut {
    let d = ctx.lattice.is_distributive();
    let r = raney_identity_holds(ctx.lattice);
    if d == ctx.cd && r == ctx.cd {
        pass()
    } else {
        fail(json!({ "distributive": d, "tight_identity": ctx.cd, "raney_identity": r }))
    }
}

fn automorphism_group(ctx: &Ctx) -> CheckOut {
    let Some(auts) = ctx.automorphisms() else {
        return Ok(Outcome::Skip("automorphism search cap exceeded".into()));
    };
    let l = ctx.lattice;
    let id: Vec<usize> = l.elements().collect();
    if auts.first() != Some(&id) {
        return fail(json!("identity missing"));
    }
    let set: BTreeSet<&Vec<usize>> = auts.iter().collect();
    for h in auts {
        if !is_automorphism(l, h) {
            return fail(json!({ "not_automorphism": h }));
        }
        for g in auts {
            let hg: Vec<usize> = g.iter().map(|&v| h[v]).collect();
            if !set.contains(&hg) {
                return fail(json!({ "not_closed": [h, g] }));
            }
        }
    }
    pass_note(format!("{} automorphisms", auts.len()))
}

fn irreducibles(ctx: &Ctx) -> CheckOut {
    let l = ctx.lattice;
    let j = l.join_irreducibles().members().to_vec();
    let m = l.meet_irreducibles().members().to_vec();
    if j != oracle::join_irreducibles(l) || m != oracle::meet_irreducibles(l) {
        return fail(json!({ "join": ctx.names(&j), "meet": ctx.names(&m) }));
    }
    if l.dual().join_irreducibles().members() != m.as_slice() {
        return fail(json!("J(dual) differs from M"));
    }
    pass()
}

fn downset_irreducibles(ctx: &Ctx) -> CheckOut {
    let Some(p) = ctx.poset else {
        return Ok(Outcome::NotApplicable);
    };
    let d = DownsetLattice::new(p).map_err(|e| Outcome::Skip(e.to_string()))?;
    let j: BTreeSet<usize> = d.lattice().join_irreducibles().members().iter().copied().collect();
    let principal: BTreeSet<usize> = (0..p.size()).map(|x| d.principal(x)).collect();
    if j.len() == p.size() && j == principal {
        pass()
    } else {
        fail(json!({ "join_irreducibles": j, "principal": principal }))
    }
}

// ---- maps ----

fn homset_enumeration(ctx: &Ctx) -> CheckOut {
    let q = ctx.q()?;
    let hom = ctx.hom();
    let l = ctx.lattice;
    if let Some(f) = q.maps().iter().find(|f| !hom.is_sup_preserving(f.table())) {
        return fail(json!({ "not_sup_preserving": f }));
    }
    if q.maps().windows(2).any(|w| w[0] >= w[1]) {
        return fail(json!("maps not strictly sorted"));
    }
    for x in l.elements() {
        for y in l.elements() {
            for g in [hom.c(y), hom.a(x), hom.e(y, x), hom.tensor_over(y, x)] {
                if q.index_of(g.table()).is_none() {
                    return fail(json!({ "missing_generator": g, "x": l.name(x), "y": l.name(y) }));
                }
            }
        }
    }
    let inf = ctx.inf_maps()?;
    if inf.len() != q.len() {
        return fail(json!({ "sup_maps": q.len(), "inf_maps": inf.len() }));
    }
    if l.size() <= 5 {
        let brute = oracle::sup_tables(l);
        let ours: Vec<Vec<usize>> = q.maps().iter().map(|f| f.table().to_vec()).collect();
        if brute != ours {
            return fail(json!({ "enumerated": ours.len(), "brute_force": brute.len() }));
        }
        return pass_note(format!("{} maps, matches brute force", q.len()));
    }
    pass_note(format!("{} maps", q.len()))
}

fn galois_law(ctx: &Ctx) -> CheckOut {
    let q = ctx.q()?;
    let hom = ctx.hom();
    let l = ctx.lattice;
    let inf = ctx.inf_maps()?;
    let mut rhos = BTreeSet::new();
    for f in q.maps() {
        let rho = hom.right_adjoint(f);
        for x in l.elements() {
            for y in l.elements() {
                if l.leq(f.apply(x), y) != l.leq(x, rho.apply(y)) {
                    return fail(json!({ "f": f, "x": l.name(x), "y": l.name(y) }));
                }
            }
        }
        if !hom.is_inf_preserving(rho.table()) || hom.left_adjoint(&rho) != *f {
            return fail(json!({ "f": f, "rho": rho }));
        }
        rhos.insert(rho.into_table());
    }
    let all: BTreeSet<Vec<usize>> = inf.iter().map(|g| g.table().to_vec()).collect();
    if rhos != all {
        return fail(json!("right adjoints are not exactly the inf-preserving maps"));
    }
    pass()
}

fn lemma_tensors(ctx: &Ctx) -> CheckOut {
    let hom = ctx.hom();
    let l = ctx.lattice;
    for x in l.elements() {
        for y in l.elements() {
            let (c, a, t, e) = (hom.c(y), hom.a(x), hom.tensor_over(y, x), hom.e(y, x));
            let ok = t.table() == hom.pointwise_join(c.table(), a.table()).as_slice()
                && e.table() == hom.pointwise_meet(c.table(), a.table()).as_slice()
                && c == hom.tensor_over(y, l.top())
                && a == hom.tensor_over(l.bottom(), x)
                && e == c.after(&a);
            if !ok {
                return fail(json!({ "x": l.name(x), "y": l.name(y) }));
            }
        }
    }
    pass()
}

fn tensor_identities(ctx: &Ctx) -> CheckOut {
    // f ≤ y ⊗̄ x iff f(x) ≤ y, for every map and every pair.
    let q = ctx.q()?;
    let hom = ctx.hom();
    let l = ctx.lattice;
    for f in q.maps() {
        for x in l.elements() {
            for y in l.elements() {
                let eq = hom.characterization_check(f, x, y);
                if !eq.holds() {
                    return fail(json!({ "f": f, "x": l.name(x), "y": l.name(y), "lhs": eq.lhs, "rhs": eq.rhs }));
                }
            }
        }
    }
    pass()
}

fn canonical_meet(ctx: &Ctx) -> CheckOut {
    let q = ctx.q()?;
    let hom = ctx.hom();
    let l = ctx.lattice;
    for f in q.maps() {
        let tensors: Vec<SupMap> = l.elements().map(|x| hom.tensor_over(f.apply(x), x)).collect();
        let m = hom.meet_all(&tensors);
        if m != *f {
            return fail(json!({ "f": f, "meet": m }));
        }
    }
    pass()
}

fn canonical_join_inf(ctx: &Ctx) -> CheckOut {
    let hom = ctx.hom();
    let l = ctx.lattice;
    for g in ctx.inf_maps()? {
        let mut acc = vec![l.bottom(); l.size()];
        for x in l.elements() {
            acc = hom.pointwise_join(&acc, hom.tensor_under(g.apply(x), x).table());
        }
        if acc != g.table() {
            return fail(json!({ "g": g, "join": acc }));
        }
    }
    pass()
}

fn universal_property(ctx: &Ctx) -> CheckOut {
    // Extending e along an inf-preserving g gives ∨g.
    let hom = ctx.hom();
    let l = ctx.lattice;
    for g in ctx.inf_maps()? {
        let ext = extend_bimorphism(&hom, l, g, |y, x| hom.e(y, x));
        if ext != hom.raney_down(g) {
            return fail(json!({ "g": g, "extension": ext }));
        }
        let on_lattice = extend_bimorphism(l, l, g, |y, _| y);
        if on_lattice != l.join_all(g.table().iter().copied()) {
            return fail(json!({ "g": g }));
        }
    }
    pass()
}

fn sup_interior(ctx: &Ctx) -> CheckOut {
    let q = ctx.q()?;
    let hom = ctx.hom();
    let l = ctx.lattice;
    let maps: Vec<Vec<usize>> = q.maps().iter().map(|f| f.table().to_vec()).collect();
    let candidates: Vec<Vec<usize>> = if l.size() <= 5 {
        oracle::monotone_tables(l)
    } else {
        let few = &maps[..maps.len().min(48)];
        few.iter()
            .flat_map(|f| few.iter().map(move |g| (f, g)))
            .map(|(f, g)| hom.pointwise_meet(f, g))
            .collect()
    };
    let interiors: Vec<SupMap> = candidates
        .iter()
        .map(|k| hom.sup_interior(&hom.monotone(k.clone()).expect("monotone")))
        .collect();
    for (k, g) in candidates.iter().zip(&interiors) {
        if !hom.leq(g.table(), k) || hom.sup_interior(&MonotoneMap::from(g.clone())) != *g {
            return fail(json!({ "k": k, "interior": g }));
        }
        if l.size() <= 5 && oracle::sup_interior(l, &maps, k) != g.table() {
            return fail(json!({ "k": k, "interior": g, "oracle": oracle::sup_interior(l, &maps, k) }));
        }
    }
    let limit = candidates.len().min(200);
    for i in 0..limit {
        for j in 0..limit {
            if hom.leq(&candidates[i], &candidates[j]) && !hom.leq(interiors[i].table(), interiors[j].table()) {
                return fail(json!({ "not_monotone": [&candidates[i], &candidates[j]] }));
            }
        }
    }
    if l.size() <= 5 {
        pass_note(format!("{} monotone maps against brute force", candidates.len()))
    } else {
        pass_note(format!("{} pointwise meets of enumerated maps", candidates.len()))
    }
}

fn factorization(ctx: &Ctx) -> CheckOut {
    let q = ctx.q()?;
    let hom = ctx.hom();
    let l = ctx.lattice;
    for f in q.maps() {
        let fact = hom.factorize(f);
        let (j, o) = (fact.closure.table(), fact.interior.table());
        let ok = fact.reassemble() == f.table()
            && fact.iso_is_order_isomorphism(l, l)
            && l.elements().all(|x| l.leq(x, j[x]) && j[j[x]] == j[x] && l.leq(o[x], x) && o[o[x]] == o[x])
            && fact.target_fixed == {
                let mut img: Vec<usize> = f.table().to_vec();
                img.sort_unstable();
                img.dedup();
                img
            };
        if !ok {
            return fail(json!({ "f": f, "factorization": fact }));
        }
    }
    pass()
}

// ---- residuals ----

fn residual_adjunction(ctx: &Ctx) -> CheckOut {
    let q = ctx.q()?;
    ctx.small(q)?;
    let r = q.residuals()?;
    let m = q.len();
    for g in 0..m {
        for f in 0..m {
            let gf = q.compose(g, f)?;
            for h in 0..m {
                let a = q.leq(gf, h);
                if a != q.leq(f, r.under(g, h)) || a != q.leq(g, r.over(h, f)) {
                    return fail(json!({ "f": q.map(f), "g": q.map(g), "h": q.map(h) }));
                }
            }
        }
    }
    pass()
}

fn residual_oracle(ctx: &Ctx) -> CheckOut {
    let q = ctx.q()?;
    ctx.small(q)?;
    let r = q.residuals()?;
    let scan = oracle::residuals_by_scan(q)?;
    let m = q.len();
    for x in 0..m {
        for y in 0..m {
            if r.under(x, y) != scan.under(x, y) || r.over(y, x) != scan.over(y, x) {
                return fail(json!({ "x": q.map(x), "y": q.map(y) }));
            }
        }
    }
    if ctx.lattice.size() <= 4 {
        // Also against the table-free scan.
        let maps: Vec<Vec<usize>> = q.maps().iter().map(|f| f.table().to_vec()).collect();
        let hom = ctx.hom();
        for g in q.maps() {
            for h in q.maps() {
                if residual_left(&hom, g, h).table() != oracle::residual_left(ctx.lattice, &maps, g.table(), h.table())
                    || residual_right(&hom, h, g).table()
                        != oracle::residual_right(ctx.lattice, &maps, h.table(), g.table())
                {
                    return fail(json!({ "g": g, "h": h }));
                }
            }
        }
    }
    pass()
}

// ---- Raney transforms ----

fn raney_adjunction(ctx: &Ctx) -> CheckOut {
    let q = ctx.q()?;
    let hom = ctx.hom();
    let inf = ctx.inf_maps()?;
    let downs: Vec<SupMap> = inf.iter().map(|g| hom.raney_down(g)).collect();
    let ups: Vec<InfMap> = q.maps().iter().map(|f| hom.raney_up(f)).collect();
    for (g, dg) in inf.iter().zip(&downs) {
        for (f, uf) in q.maps().iter().zip(&ups) {
            if hom.leq(dg.table(), f.table()) != hom.leq(g.table(), uf.table()) {
                return fail(json!({ "f": f, "g": g }));
            }
        }
    }
    if let Some(f) = q.maps().iter().find(|f| !hom.is_inf_preserving(hom.raney_up(f).table())) {
        return fail(json!({ "raney_up_not_inf_preserving": f }));
    }
    pass()
}

fn raney_adjoint_commute(ctx: &Ctx) -> CheckOut {
    let q = ctx.q()?;
    let hom = ctx.hom();
    let rev = hom.reversed();
    for f in q.maps() {
        // λ(∧f) = ∨(ρf)
        if rev.left_adjoint(&hom.raney_up(f)) != rev.raney_down(&hom.right_adjoint(f)) {
            return fail(json!({ "f": f }));
        }
    }
    for g in ctx.inf_maps()? {
        // ρ(∨g) = ∧(λg)
        if hom.right_adjoint(&hom.raney_down(g)) != rev.raney_up(&rev.left_adjoint(g)) {
            return fail(json!({ "g": g }));
        }
    }
    pass()
}

fn star_formulas(ctx: &Ctx) -> CheckOut {
    let q = ctx.q()?;
    let hom = ctx.hom();
    for f in q.maps() {
        let s = hom.star(f);
        if s != hom.star_via_right_adjoint(f) || !q.is_tight(&s) {
            return fail(json!({ "f": f, "star": s }));
        }
    }
    pass()
}

fn naturality(ctx: &Ctx) -> CheckOut {
    let q = ctx.q()?;
    let hom = ctx.hom();
    let l = ctx.lattice;
    let rhos: Vec<InfMap> = q.maps().iter().map(|g| hom.right_adjoint(g)).collect();
    for f in q.maps() {
        for y in l.elements() {
            if f.after(&hom.c(y)) != hom.c(f.apply(y)) {
                return fail(json!({ "f": f, "y": l.name(y) }));
            }
            for x in l.elements() {
                if f.after(&hom.e(y, x)) != hom.e(f.apply(y), x) {
                    return fail(json!({ "f": f, "x": l.name(x), "y": l.name(y) }));
                }
            }
        }
    }
    for (g, rho) in q.maps().iter().zip(&rhos) {
        for x in l.elements() {
            if hom.a(x).after(g) != hom.a(rho.apply(x)) {
                return fail(json!({ "g": g, "x": l.name(x) }));
            }
            for y in l.elements() {
                if hom.e(y, x).after(g) != hom.e(y, rho.apply(x)) {
                    return fail(json!({ "g": g, "x": l.name(x), "y": l.name(y) }));
                }
            }
        }
    }
    if q.len() > ctx.config.max_triple {
        return pass_note("f ∘ e ∘ g checked one side at a time");
    }
    for f in q.maps() {
        for (g, rho) in q.maps().iter().zip(&rhos) {
            for x in l.elements() {
                for y in l.elements() {
                    if f.after(&hom.e(y, x)).after(g) != hom.e(f.apply(y), rho.apply(x)) {
                        return fail(json!({ "f": f, "g": g, "x": l.name(x), "y": l.name(y) }));
                    }
                }
            }
        }
    }
    pass()
}

fn relation_dual(ctx: &Ctx) -> CheckOut {
    let q = ctx.q()?;
    let hom = ctx.hom();
    let l = ctx.lattice;
    for f in q.maps() {
        for x in l.elements() {
            for y in l.elements() {
                let p = relation_dual_profile(&hom, f, x, y);
                if p.iter().any(|&b| b != p[0]) {
                    return fail(json!({ "f": f, "x": l.name(x), "y": l.name(y), "profile": p }));
                }
            }
        }
    }
    pass()
}

fn adjunction_formulas_check(ctx: &Ctx) -> CheckOut {
    let q = ctx.q()?;
    let hom = ctx.hom();
    let l = ctx.lattice;
    for f in q.maps() {
        for x in l.elements() {
            for y in l.elements() {
                let r = adjunction_formulas(&hom, f, x, y);
                if let Some(i) = r.iter().position(|e| !e.holds()) {
                    return fail(json!({ "f": f, "x": l.name(x), "y": l.name(y), "formula": i }));
                }
            }
        }
    }
    pass()
}

fn division_mismatch_scan(ctx: &Ctx, names: &[&str]) -> CheckOut {
    let q = ctx.q()?;
    let hom = ctx.hom();
    let l = ctx.lattice;
    for f in q.maps() {
        for x in l.elements() {
            for y in l.elements() {
                let bad: Vec<&str> = division_mismatches(&hom, f, x, y)
                    .into_iter()
                    .filter(|n| names.contains(n))
                    .collect();
                if !bad.is_empty() {
                    return fail(json!({ "f": f, "x": l.name(x), "y": l.name(y), "formulas": bad }));
                }
            }
        }
    }
    pass()
}

fn division_lemmas(ctx: &Ctx) -> CheckOut {
    division_mismatch_scan(ctx, &["f/a_x", "c_y\\f", "f/c_y", "a_x\\f"])
}

fn division_formulas_check(ctx: &Ctx) -> CheckOut {
    division_mismatch_scan(ctx, &["f/(c_y∘a_x)", "(c_y∘a_x)\\f", "f/(y⊗̄x)", "(y⊗̄x)\\f"])
}

fn transform_tensors(ctx: &Ctx) -> CheckOut {
    let q = ctx.q()?;
    let hom = ctx.hom();
    let l = ctx.lattice;
    let (mut over, mut under) = (0, 0);
    for f in q.maps() {
        let up = hom.raney_up(f);
        let star = hom.star(f);
        let left = up.apply(l.bottom()) == l.bottom();
        let right = star.apply(l.top()) == l.top();
        over += usize::from(left);
        under += usize::from(right);
        for x in l.elements() {
            for y in l.elements() {
                let t = hom.tensor_over(y, x);
                if left && residual_right(&hom, f, &t) != hom.c(up.apply(x)).after(&hom.a(y)) {
                    return fail(json!({ "f": f, "x": l.name(x), "y": l.name(y), "side": "over" }));
                }
                if right && residual_left(&hom, &t, f) != hom.c(x).after(&hom.a(star.apply(y))) {
                    return fail(json!({ "f": f, "x": l.name(x), "y": l.name(y), "side": "under" }));
                }
            }
        }
    }
    pass_note(format!("hypotheses met by {over} and {under} maps"))
}

// ---- tight maps ----

fn tight_bi_ideal(ctx: &Ctx) -> CheckOut {
    let q = ctx.q()?;
    let tight = q.enumerate_tight();
    if let Some((f, h)) = tight.bi_ideal_violation()? {
        return fail(json!({ "f": q.map(f), "tight": q.map(h) }));
    }
    if let Some((g, f)) = tight.closure_violation()? {
        return fail(json!({ "g": q.map(g), "f": q.map(f) }));
    }
    let hom = ctx.hom();
    let image: BTreeSet<Vec<usize>> = ctx.inf_maps()?.iter().map(|g| hom.raney_down(g).into_table()).collect();
    let surjective = image.len() == q.len();
    let id_tight = q.is_tight(q.map(q.identity()));
    if surjective != id_tight {
        return fail(json!({ "surjective": surjective, "identity_tight": id_tight }));
    }
    pass_note(format!("{} tight maps", tight.len()))
}

fn tight_interior(ctx: &Ctx) -> CheckOut {
    let q = ctx.q()?;
    let tight = q.enumerate_tight();
    let interiors = q.tight_interiors();
    for (f, &t) in interiors.iter().enumerate() {
        if !tight.contains(t) || !q.leq(t, f) {
            return fail(json!({ "f": q.map(f), "interior": q.map(t) }));
        }
        if let Some(&s) = tight.members().iter().find(|&&s| q.leq(s, f) && !q.leq(s, t)) {
            return fail(json!({ "f": q.map(f), "interior": q.map(t), "larger_tight": q.map(s) }));
        }
    }
    pass()
}

fn raney_theorem(ctx: &Ctx) -> CheckOut {
    let q = ctx.q()?;
    let id_tight = q.is_tight(q.map(q.identity()));
    let d = ctx.lattice.is_distributive();
    if id_tight == d {
        pass()
    } else {
        fail(json!({ "identity_tight": id_tight, "distributive": d }))
    }
}

fn tight_unit(ctx: &Ctx) -> CheckOut {
    let q = ctx.q()?;
    let unit = q.tight_has_unit()?;
    match (unit, ctx.cd) {
        (Some(u), true) if u == q.identity() => pass(),
        (None, false) => pass(),
        (u, cd) => fail(json!({ "unit": u.map(|u| q.map(u).clone()), "cd": cd })),
    }
}

fn conucleus(ctx: &Ctx) -> CheckOut {
    let q = ctx.q()?;
    let interior = q.tight_interiors();
    for g in 0..q.len() {
        for f in 0..q.len() {
            if !q.leq(q.compose(interior[g], interior[f])?, interior[q.compose(g, f)?]) {
                return fail(json!({ "g": q.map(g), "f": q.map(f), "inclusion": false }));
            }
        }
    }
    let gap = q.conucleus_gap()?;
    if gap.is_some() == ctx.cd {
        return fail(json!({ "gap": gap.map(|(g, f)| (q.map(g).clone(), q.map(f).clone())), "cd": ctx.cd }));
    }
    pass()
}

// ---- cyclic and dualizing elements ----

fn cyclic_elements(ctx: &Ctx) -> CheckOut {
    let q = ctx.q()?;
    let cyclic = q.find_cyclic()?;
    if !cyclic.contains(&q.top()) {
        return fail(json!("top of Q is not cyclic"));
    }
    let o = q.canonical_o();
    if ctx.cd && !cyclic.contains(&o) {
        return fail(json!({ "o_not_cyclic": q.map(o) }));
    }
    if !ctx.cd && cyclic != [q.top()] {
        let extra: Vec<&SupMap> = cyclic.iter().filter(|&&c| c != q.top()).map(|&c| q.map(c)).collect();
        return fail(json!({ "nontrivial_cyclic": extra }));
    }
    pass_note(format!("{} cyclic elements", cyclic.len()))
}

fn dualizing_elements(ctx: &Ctx) -> CheckOut {
    let q = ctx.q()?;
    let dualizing = q.find_dualizing()?;
    if !dualizing.is_empty() && !ctx.cd {
        return fail(json!({ "dualizing_without_cd": q.map(dualizing[0]) }));
    }
    for &f in &dualizing {
        if let Err(e) = q.dualizing_to_automorphism(f) {
            return fail(json!({ "f": q.map(f), "error": e.to_string() }));
        }
    }
    let Some(auts) = ctx.automorphisms() else {
        return Ok(Outcome::Skip("automorphism search cap exceeded".into()));
    };
    let expected = if ctx.cd { auts.len() } else { 0 };
    if dualizing.len() != expected {
        return fail(json!({ "dualizing": dualizing.len(), "expected": expected }));
    }
    pass_note(format!("{} dualizing elements", dualizing.len()))
}

fn girard_cd(ctx: &Ctx) -> CheckOut {
    let q = ctx.q()?;
    let girard = q.is_girard()?;
    if girard != ctx.cd {
        return fail(json!({ "girard": girard, "cd": ctx.cd }));
    }
    let o = q.canonical_o();
    if ctx.cd && !(q.is_cyclic(o)? && q.is_dualizing(o)?) {
        return fail(json!({ "o": q.map(o) }));
    }
    pass()
}

fn dualizing_automorphism_bijection(ctx: &Ctx) -> CheckOut {
    let q = ctx.q()?;
    let Some(auts) = ctx.automorphisms() else {
        return Ok(Outcome::Skip("automorphism search cap exceeded".into()));
    };
    if !ctx.cd {
        return match q.automorphism_to_dualizing(&auts[0]) {
            Err(EndoError::NotCompletelyDistributive) => pass_note("not completely distributive"),
            other => fail(json!({ "unexpected": format!("{other:?}") })),
        };
    }
    let dualizing = q.find_dualizing()?;
    let mut images = BTreeSet::new();
    for h in auts {
        let f = q.automorphism_to_dualizing(h)?;
        if q.dualizing_to_automorphism(f)? != *h {
            return fail(json!({ "h": h, "f": q.map(f) }));
        }
        images.insert(f);
    }
    let all: BTreeSet<usize> = dualizing.iter().copied().collect();
    if images != all {
        return fail(json!({ "images": images.len(), "dualizing": all.len() }));
    }
    for &f in &dualizing {
        let h = q.dualizing_to_automorphism(f)?;
        if q.automorphism_to_dualizing(&h)? != f {
            return fail(json!({ "f": q.map(f), "h": h }));
        }
    }
    pass_note(format!("{} pairs", auts.len()))
}

fn involutive_bijection(ctx: &Ctx) -> CheckOut {
    // f is dualizing iff f* has a two-sided inverse in Q.
    let q = ctx.q()?;
    let hom = ctx.hom();
    let r = q.residuals()?;
    for f in 0..q.len() {
        let star = hom.star(q.map(f));
        let s = q.index_of(star.table()).expect("star is sup-preserving");
        let invertible = (0..q.len()).any(|g| {
            q.compose(g, s).ok() == Some(q.identity()) && q.compose(s, g).ok() == Some(q.identity())
        });
        if invertible != r.is_dualizing(f) {
            return fail(json!({ "f": q.map(f), "dualizing": r.is_dualizing(f), "star_invertible": invertible }));
        }
    }
    pass()
}

// ---- structure of Q ----

fn cap_autodual(ctx: &Ctx, q: &EndoHomset) -> Result<(), Outcome> {
    if q.len() > ctx.config.max_autodual {
        Err(Outcome::Skip(format!("|Q| = {} exceeds the cap of {}", q.len(), ctx.config.max_autodual)))
    } else {
        Ok(())
    }
}

fn homset_irreducibles_check(ctx: &Ctx) -> CheckOut {
    let q = ctx.q()?;
    cap_autodual(ctx, q)?;
    let r = homset_irreducibles(q)?;
    let counts = json!({
        "join_irreducibles": r.join_irreducibles.len(),
        "meet_irreducibles": r.meet_irreducibles.len(),
        "product": r.product(),
    });
    if !(r.meet_irreducibles_are_tensors() && r.e_maps_join_irreducible() && r.tensors_distinct() && r.e_maps_distinct()) {
        return fail(counts);
    }
    if q.len() <= ctx.config.max_triple {
        let ql = q.as_lattice()?;
        if oracle::join_irreducibles(ql) != r.join_irreducibles || oracle::meet_irreducibles(ql) != r.meet_irreducibles {
            return fail(json!({ "oracle_mismatch": counts }));
        }
    }
    let distributive = ctx.lattice.is_distributive();
    if distributive {
        if r.join_irreducibles.len() != r.product() || q.enumerate_tight().len() != q.len() {
            return fail(counts);
        }
    } else if r.join_irreducibles.len() <= r.product() {
        return fail(counts);
    }
    pass_note(format!(
        "|J(Q)| = {}, |M(Q)| = {}, |M(L)|·|J(L)| = {}",
        r.join_irreducibles.len(),
        r.meet_irreducibles.len(),
        r.product()
    ))
}

fn autodual(ctx: &Ctx) -> CheckOut {
    let q = ctx.q()?;
    cap_autodual(ctx, q)?;
    let verdict = autodual_report(q, ctx.config.max_autodual)?;
    let distributive = ctx.lattice.is_distributive();
    match (&verdict, distributive) {
        (AutodualVerdict::Inconclusive { cap }, _) => Ok(Outcome::Skip(format!("search cap {cap}"))),
        (AutodualVerdict::Autodual { witness, .. }, true) => {
            if crate::structures::is_anti_automorphism(q, witness) {
                pass_note("autodual")
            } else {
                fail(json!("witness does not reverse the order"))
            }
        }
        (AutodualVerdict::NotAutodual { .. }, false) => pass_note("not autodual"),
        (v, d) => fail(json!({ "verdict": v.label(), "distributive": d })),
    }
}

fn natural_arrows(ctx: &Ctx) -> CheckOut {
    let q = ctx.q()?;
    let r = classify_natural(q);
    let expected = if ctx.lattice.size() == 1 {
        vec![NaturalKind::Trivial]
    } else {
        vec![NaturalKind::Trivial, NaturalKind::Raney]
    };
    if r.kinds() == expected {
        pass_note(format!("{} natural arrows", r.arrows.len()))
    } else {
        fail(json!(r))
    }
}

fn abstract_raney(ctx: &Ctx) -> CheckOut {
    let q = ctx.q()?;
    let hom = ctx.hom();
    for family in [RaneyFamily::e_via_c(&hom), RaneyFamily::e_via_a(&hom)] {
        let v = abstract_raney_check(q, &family).map_err(|e| match e {
            crate::structures::FamilyError::Homset(e) => Outcome::from(e),
            other => Outcome::Fail(json!({ "error": other.to_string() })),
        })?;
        let id_tight = q.is_tight(q.map(q.identity()));
        if !v.chain_images || !v.bimorphism || !v.implication_holds() || v.identity_in_image != id_tight {
            return fail(json!({ "family": family, "verdict": v }));
        }
    }
    pass()
}

fn weakening(ctx: &Ctx) -> CheckOut {
    let Some(p) = ctx.poset else {
        return Ok(Outcome::NotApplicable);
    };
    let q = ctx.q()?;
    let d = DownsetLattice::new(p).map_err(|e| Outcome::Skip(e.to_string()))?;
    if d.lattice().fingerprint() != ctx.lattice.fingerprint() {
        return fail(json!("lattice is not the downset lattice of the poset"));
    }
    let n = p.size();
    let rels: Vec<WeakeningRelation> = q.maps().iter().map(|f| wk_from_supmap(&d, f)).collect();
    for (f, r) in q.maps().iter().zip(&rels) {
        let back = supmap_from_wk(&d, r).map_err(|e| Outcome::Fail(json!(e.to_string())))?;
        if back != *f {
            return fail(json!({ "f": f, "relation": r, "back": back }));
        }
    }
    // Every down-closed relation comes from a map.
    let all_pairs: Vec<(usize, usize)> = (0..n).flat_map(|y| (0..n).map(move |x| (y, x))).collect();
    let mut down_closed = 0;
    for mask in 0u64..(1 << all_pairs.len()) {
        let pairs = all_pairs.iter().enumerate().filter(|(i, _)| mask & (1 << i) != 0).map(|(_, &p)| p);
        if WeakeningRelation::new(p, pairs).is_ok() {
            down_closed += 1;
        }
    }
    if down_closed != q.len() {
        return fail(json!({ "relations": down_closed, "maps": q.len() }));
    }
    for i in 0..q.len() {
        for j in 0..q.len() {
            if q.leq(i, j) != rels[i].is_subset(&rels[j]) {
                return fail(json!({ "order": [q.map(i), q.map(j)] }));
            }
            let composed = rels[i].compose(&rels[j]).map_err(|e| Outcome::Fail(json!(e.to_string())))?;
            if composed != rels[q.compose(i, j)?] {
                return fail(json!({ "compose": [q.map(i), q.map(j)] }));
            }
        }
    }
    let o = q.canonical_o();
    let expected_o: BTreeSet<(usize, usize)> = all_pairs.iter().copied().filter(|&(y, x)| !p.leq(x, y)).collect();
    if rels[o].pairs() != &expected_o {
        return fail(json!({ "r_o": rels[o] }));
    }
    let auts = p.automorphisms(DEFAULT_MAX_AUTOMORPHISMS).map_err(|e| Outcome::Skip(e.to_string()))?;
    for g in &auts {
        let r = wk_from_automorphism(p, g).map_err(|e| Outcome::Fail(json!(e.to_string())))?;
        let f = supmap_from_wk(&d, &r).map_err(|e| Outcome::Fail(json!(e.to_string())))?;
        let fi = q.index_of(f.table()).expect("sup-preserving");
        let induced = induced_automorphism(&d, g).map_err(|e| Outcome::Fail(json!(e.to_string())))?;
        if !q.is_dualizing(fi)? || q.hom().star(&f).table() != induced.as_slice() {
            return fail(json!({ "g": g, "relation": r }));
        }
    }
    pass_note(format!("{} relations, {} poset automorphisms", q.len(), auts.len()))
}
