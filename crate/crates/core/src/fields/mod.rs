//! Exact fields of characteristic p: finite fields, rational function
//! fields, quadratic towers, homomorphisms given on generators, and the
//! blended (twisted) and mixed field structures built from them.

mod appendix;
mod finite;
mod function;
mod hom;
mod modgcd;
pub mod parse;
pub mod poly;
mod tower;

pub use appendix::*;
pub use finite::{FiniteField, ENUMERATION_BOUND};
pub use function::{FunctionField, Rat};
pub use hom::{monomial_preimage, BlendedField, FieldHom, MixedField, Preimages, Subfield};
pub use tower::{QElem, QuadExt, Tower2};

use rand_chacha::ChaCha8Rng;
use std::fmt::Debug;
use std::hash::Hash;
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FieldError {
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("degree must be at least 1")]
    BadDegree,
    #[error("field of order {0} exceeds the enumeration bound")]
    BoundExceeded(u64),
    #[error("no Tits endomorphism (even degree)")]
    NoTitsEndomorphism,
    #[error("composite is not Frobenius on generator {generator} ({side})")]
    CompositionMismatch { side: &'static str, generator: String },
    #[error("expected {expected} generator images, got {got}")]
    WrongImageCount { expected: usize, got: usize },
    #[error("generator images violate the defining relations")]
    InvalidImages,
    #[error("subfield was not declared and the field is infinite")]
    UnsupportedSubfield,
    #[error("operation not supported: {0}")]
    Unsupported(&'static str),
    #[error("expected characteristic {expected}, got {found}")]
    WrongCharacteristic { expected: u32, found: u32 },
    #[error("undecidable: {0}")]
    Undecidable(String),
    #[error("defining polynomial has a root in the base field")]
    ReducibleExtension,
    #[error("too many variables (at most {0})")]
    TooManyVariables(usize),
    #[error("parse error: {0}")]
    Parse(String),
}

pub type FResult<T> = Result<T, FieldError>;

/// A field with elements held outside the field value.
///
/// Generators are the elements a homomorphism is determined by; the prime
/// field always maps identically.
pub trait Field: Clone + Debug {
    type Elem: Clone + Eq + Hash + Debug;

    fn characteristic(&self) -> u32;
    fn zero(&self) -> Self::Elem;
    fn one(&self) -> Self::Elem;
    fn from_i64(&self, n: i64) -> Self::Elem;
    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn neg(&self, a: &Self::Elem) -> Self::Elem;
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn inv(&self, a: &Self::Elem) -> Option<Self::Elem>;
    fn is_zero(&self, a: &Self::Elem) -> bool;
    fn gens(&self) -> Vec<Self::Elem>;
    fn gen_names(&self) -> Vec<String>;

    /// Value of `a` when the generators are sent to `images` in `cod`.
    /// `None` when a denominator maps to zero.
    fn eval_at<C: Field>(&self, a: &Self::Elem, images: &[C::Elem], cod: &C) -> Option<C::Elem>;

    /// Whether `images` satisfy the relations among the generators.
    fn images_valid<C: Field>(&self, images: &[C::Elem], cod: &C) -> bool;

    fn sample(&self, rng: &mut ChaCha8Rng) -> Self::Elem;
    fn render(&self, a: &Self::Elem) -> String;
    fn describe(&self) -> String;

    fn sub(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        self.add(a, &self.neg(b))
    }

    fn div(&self, a: &Self::Elem, b: &Self::Elem) -> Option<Self::Elem> {
        Some(self.mul(a, &self.inv(b)?))
    }

    fn is_one(&self, a: &Self::Elem) -> bool {
        *a == self.one()
    }

    fn square(&self, a: &Self::Elem) -> Self::Elem {
        self.mul(a, a)
    }

    fn pow(&self, a: &Self::Elem, mut e: u64) -> Self::Elem {
        let mut base = a.clone();
        let mut acc = self.one();
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(&acc, &base);
            }
            e >>= 1;
            if e > 0 {
                base = self.square(&base);
            }
        }
        acc
    }

    fn frobenius(&self, a: &Self::Elem) -> Self::Elem {
        self.pow(a, self.characteristic() as u64)
    }

    /// All elements, for fields small enough to list.
    fn enumerate(&self) -> Option<Vec<Self::Elem>> {
        None
    }

    /// Formal partial derivative along generator `var`, if the field has one.
    fn partial(&self, _a: &Self::Elem, _var: usize) -> Option<Self::Elem> {
        None
    }

    /// A square root, or `None` when `a` is not a square.
    fn sqrt(&self, _a: &Self::Elem) -> FResult<Option<Self::Elem>> {
        Err(FieldError::Unsupported("square roots"))
    }

    /// A solution of u² + u = d in characteristic 2, or `None` if there is none.
    fn artin_schreier(&self, _d: &Self::Elem) -> FResult<Option<Self::Elem>> {
        Err(FieldError::Unsupported("Artin-Schreier equations"))
    }
}

pub(crate) fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

/// Modular arithmetic in the prime field F_p, p < 2^31.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub(crate) struct Fp(pub u32);

impl Fp {
    #[inline]
    pub fn add(self, a: u32, b: u32) -> u32 {
        let s = a + b;
        if s >= self.0 {
            s - self.0
        } else {
            s
        }
    }
    #[inline]
    pub fn sub(self, a: u32, b: u32) -> u32 {
        if a >= b {
            a - b
        } else {
            a + self.0 - b
        }
    }
    #[inline]
    pub fn neg(self, a: u32) -> u32 {
        if a == 0 {
            0
        } else {
            self.0 - a
        }
    }
    #[inline]
    pub fn mul(self, a: u32, b: u32) -> u32 {
        ((a as u64 * b as u64) % self.0 as u64) as u32
    }
    pub fn pow(self, a: u32, mut e: u64) -> u32 {
        let mut b = a;
        let mut r = 1 % self.0;
        while e > 0 {
            if e & 1 == 1 {
                r = self.mul(r, b);
            }
            b = self.mul(b, b);
            e >>= 1;
        }
        r
    }
    pub fn inv(self, a: u32) -> u32 {
        debug_assert!(a != 0);
        self.pow(a, self.0 as u64 - 2)
    }
    pub fn from_i64(self, n: i64) -> u32 {
        n.rem_euclid(self.0 as i64) as u32
    }
    /// A square root mod p by search; p is small everywhere it is used.
    pub fn sqrt(self, a: u32) -> Option<u32> {
        if self.0 == 2 || a == 0 {
            return Some(a);
        }
        (1..self.0).find(|&r| self.mul(r, r) == a)
    }
}
