//! Concrete quantales and constructions built on top of `Q(L, L)`.

pub mod finite_quantale;
pub mod irreducibles;
pub mod natural;
pub mod weakening;

pub use finite_quantale::{m5_quantale, FiniteQuantale, QuantaleError, QuantaleFile};
pub use irreducibles::{
    autodual_report, homset_irreducibles, is_anti_automorphism, AutodualVerdict, IrreducibleReport,
    DEFAULT_MAX_AUTODUAL,
};
pub use natural::{
    abstract_raney_check, classify_natural, AbstractRaneyVerdict, FamilyError, NaturalArrow, NaturalKind,
    NaturalReport, RaneyFamily,
};
pub use weakening::{
    induced_automorphism, supmap_from_wk, wk_from_automorphism, wk_from_supmap, WeakeningError,
    WeakeningRelation,
};
