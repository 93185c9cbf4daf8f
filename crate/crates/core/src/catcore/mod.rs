//! Finite categories with an endomorphism F of the identity functor, the
//! twisted and mixed categories built from them, and exhaustive checkers
//! for functor laws, adjunctions, limits, descent and fairies.
//!
//! Categories are lazy: hom-sets are enumerated on demand, so a functor may
//! land outside the bounded fragment its source was enumerated from.

mod check;
mod descent;
mod dynsys;
mod fairy;
mod functors;
mod limits;
mod mixed;
pub mod battery;

pub use check::*;
pub use descent::*;
pub use dynsys::*;
pub use fairy::*;
pub use functors::*;
pub use limits::*;
pub use mixed::*;

use std::fmt::Debug;
use std::hash::Hash;
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CatError {
    #[error("object size {0} exceeds the bound 5")]
    SizeExceeded(usize),
    #[error("missing limit: {0}")]
    MissingLimit(String),
    #[error("no limit exists for the diagram in this fragment")]
    NoLimit,
    #[error("object admits no descent datum")]
    NoDescent,
    #[error("grade {got} exceeds bound {bound}")]
    GradeOverflow { got: u32, bound: u32 },
    #[error("missing pullback: {0}")]
    MissingPullback(String),
    #[error("not a valid {0}")]
    Invalid(&'static str),
}

pub type CResult<T> = Result<T, CatError>;

/// A category whose hom-sets can be listed, with F given objectwise.
pub trait Category {
    type Obj: Clone + Eq + Hash + Debug;
    type Arr: Clone + Eq + Hash + Debug;

    /// The bounded fragment of objects that exhaustive checks range over.
    fn objects(&self) -> Vec<Self::Obj>;
    fn hom(&self, x: &Self::Obj, y: &Self::Obj) -> Vec<Self::Arr>;
    fn dom(&self, f: &Self::Arr) -> Self::Obj;
    fn cod(&self, f: &Self::Arr) -> Self::Obj;
    fn id(&self, x: &Self::Obj) -> Self::Arr;
    /// g ∘ f
    fn compose(&self, g: &Self::Arr, f: &Self::Arr) -> Self::Arr;
    /// The component F_X.
    fn endo(&self, x: &Self::Obj) -> Self::Arr;

    fn is_iso(&self, f: &Self::Arr) -> bool {
        self.inverse(f).is_some()
    }

    fn inverse(&self, f: &Self::Arr) -> Option<Self::Arr> {
        let (x, y) = (self.dom(f), self.cod(f));
        let (ix, iy) = (self.id(&x), self.id(&y));
        self.hom(&y, &x).into_iter().find(|g| self.compose(g, f) == ix && self.compose(f, g) == iy)
    }

    fn find_iso(&self, x: &Self::Obj, y: &Self::Obj) -> Option<Self::Arr> {
        self.hom(x, y).into_iter().find(|f| self.is_iso(f))
    }
}

/// Terminal object, binary (co)products and pullbacks, as constructions.
pub trait Extensive: Category {
    fn terminal(&self) -> Self::Obj;
    /// Coproduct with its two injections.
    fn coproduct(&self, x: &Self::Obj, y: &Self::Obj) -> Option<(Self::Obj, Self::Arr, Self::Arr)>;
    /// The arrow x ⊔ y → z out of a coproduct built by `coproduct`.
    fn copair(&self, f: &Self::Arr, g: &Self::Arr) -> Self::Arr;
    /// Product with its two projections.
    fn product(&self, x: &Self::Obj, y: &Self::Obj) -> Option<(Self::Obj, Self::Arr, Self::Arr)>;
    /// The arrow z → x × y into a product built by `product`.
    fn pair(&self, f: &Self::Arr, g: &Self::Arr) -> Self::Arr;
    /// X ×_{f,g} Y with its projections.
    fn pullback(&self, f: &Self::Arr, g: &Self::Arr) -> Option<(Self::Obj, Self::Arr, Self::Arr)>;
    /// The arrow z → X ×_{f,g} Y induced by a commuting pair (a, b).
    fn pullback_pair(&self, f: &Self::Arr, g: &Self::Arr, a: &Self::Arr, b: &Self::Arr) -> Self::Arr;
}

/// Outcome of one exhaustive check.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Verdict {
    pub name: String,
    pub checked: usize,
    pub failure: Option<String>,
}

impl Verdict {
    pub fn pass(name: impl Into<String>, checked: usize) -> Self {
        Verdict { name: name.into(), checked, failure: None }
    }
    pub fn fail(name: impl Into<String>, checked: usize, why: impl Into<String>) -> Self {
        Verdict { name: name.into(), checked, failure: Some(why.into()) }
    }
    pub fn passed(&self) -> bool {
        self.failure.is_none()
    }
    pub fn line(&self) -> String {
        match &self.failure {
            None => format!("PASS {} ({} cases)", self.name, self.checked),
            Some(w) => format!("FAIL {} after {} cases: {}", self.name, self.checked, w),
        }
    }
}

/// One representative per isomorphism class, in first-seen order, with an
/// isomorphism from every object to its representative.
pub fn iso_classes<C: Category>(c: &C, objs: &[C::Obj]) -> Vec<(C::Obj, Vec<(C::Obj, C::Arr)>)> {
    let mut classes: Vec<(C::Obj, Vec<(C::Obj, C::Arr)>)> = Vec::new();
    'outer: for x in objs {
        for (rep, members) in classes.iter_mut() {
            if let Some(f) = c.find_iso(x, rep) {
                members.push((x.clone(), f));
                continue 'outer;
            }
        }
        classes.push((x.clone(), vec![(x.clone(), c.id(x))]));
    }
    classes
}
