//! The longest restricted Weyl element on `V_λ^L`.
//!
//! The element is represented by the Tits lift of a full Weyl group word
//! that preserves `𝔞` and induces the longest restricted element. Two such
//! lifts differ by an element of the centralizer of `𝔞`, which acts
//! trivially on `V^𝔩`; on the zero-weight space the Tits lift only depends
//! on the Weyl group element, not on the word.

use std::fmt;

use num_bigint::BigUint;
use serde::{Serialize, Serializer};

use crate::exactla::{restrict_images, Rat, SparseMat};
use crate::hwmodule::{checked_dim, ZeroSlice};
use crate::linvariant::l_invariants;
use crate::rootsystem::{DescentOrder, Weight, WeylWord};
use crate::satake::SatakeDiagram;
use crate::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum Verdict {
    VacuousZero,
    PlusId,
    MinusId,
    NonScalar,
}

impl Verdict {
    pub fn is_scalar_or_vacuous(self) -> bool {
        self != Verdict::NonScalar
    }

    pub fn sign(self) -> Option<i8> {
        match self {
            Verdict::PlusId => Some(1),
            Verdict::MinusId => Some(-1),
            _ => None,
        }
    }
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}

/// Evidence for a verdict.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub enum Certificate {
    None,
    /// The restriction equals this multiple of the identity.
    Scalar(Rat),
    /// A 2×2 principal submatrix of the restriction that is not scalar.
    NonScalar { indices: [usize; 2], submatrix: [[Rat; 2]; 2] },
}

/// Choice of reduced words for the lift; every choice gives the same result.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct WordChoice {
    pub restricted: DescentOrder,
    pub lifts: DescentOrder,
    pub reduction: DescentOrder,
}

impl WordChoice {
    pub fn alternative() -> Self {
        WordChoice { restricted: DescentOrder::Highest, lifts: DescentOrder::Highest, reduction: DescentOrder::Highest }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Classification {
    pub form: String,
    pub lambda: Weight,
    #[serde(serialize_with = "serialize_big")]
    pub dim_v: BigUint,
    pub dim_zero: usize,
    pub dim_vl: usize,
    pub verdict: Verdict,
    pub certificate: Certificate,
    /// Reduced word of the lift used.
    pub word: WeylWord,
    /// Matrix of the lift on `V^L`, in the echelon basis of `V^L`.
    pub matrix: SparseMat,
}

pub(crate) fn serialize_big<S: Serializer>(v: &BigUint, s: S) -> std::result::Result<S::Ok, S::Error> {
    match u64::try_from(v) {
        Ok(x) => s.serialize_u64(x),
        Err(_) => s.serialize_str(&v.to_string()),
    }
}

/// Reduced word of the lift of the longest restricted element.
pub fn lift_word(sd: &SatakeDiagram, choice: WordChoice) -> Result<WeylWord> {
    let rs = sd.root_system();
    let lift = sd.restricted_w0_lift_with(choice.restricted, choice.lifts)?;
    Ok(lift.reduced_word(&rs, choice.reduction))
}

/// The lift of the longest restricted element on the zero-weight space.
pub fn w0_matrix_on_zero_space(slice: &ZeroSlice, sd: &SatakeDiagram, choice: WordChoice) -> Result<SparseMat> {
    Ok(slice.word_matrix(&lift_word(sd, choice)?))
}

/// Whether the lift squares to the identity on the zero-weight space.
pub fn involution_check(slice: &ZeroSlice, sd: &SatakeDiagram) -> Result<bool> {
    let m = w0_matrix_on_zero_space(slice, sd, WordChoice::default())?;
    Ok(m.mul(&m).is_identity())
}

fn witness(m: &SparseMat) -> Certificate {
    let n = m.nrows();
    let pick = m
        .entries()
        .find(|(r, c, _)| r != c)
        .map(|(r, c, _)| (r.min(c), r.max(c)))
        .or_else(|| (1..n).find(|&k| m.get(k, k) != m.get(0, 0)).map(|k| (0, k)))
        .expect("non-scalar matrix");
    let (a, b) = pick;
    Certificate::NonScalar {
        indices: [a, b],
        submatrix: [[m.get(a, a), m.get(a, b)], [m.get(b, a), m.get(b, b)]],
    }
}

/// Classifies the action on `V^L` from precomputed zero-weight data.
pub fn classify_slice(slice: &ZeroSlice, sd: &SatakeDiagram, dim_v: BigUint, choice: WordChoice) -> Result<Classification> {
    let word = lift_word(sd, choice)?;
    let li = l_invariants(slice, sd)?;
    let base = |verdict, certificate, matrix| Classification {
        form: sd.name().to_string(),
        lambda: slice.lambda.clone(),
        dim_v: dim_v.clone(),
        dim_zero: slice.dim0(),
        dim_vl: li.dim,
        verdict,
        certificate,
        word: word.clone(),
        matrix,
    };
    if li.dim == 0 {
        return Ok(base(Verdict::VacuousZero, Certificate::None, SparseMat::zeros(0, 0)));
    }
    let images = slice.apply_word(&word, li.space.basis());
    let m = restrict_images(&images, &li.space).map_err(|e| {
        Error::Internal(format!("{} {}: lift does not preserve the invariants ({e})", sd.name(), slice.lambda))
    })?;
    let c = m.get(0, 0);
    if m.is_scalar(&c) {
        let verdict = if c.is_one() {
            Verdict::PlusId
        } else if c == -Rat::ONE {
            Verdict::MinusId
        } else {
            return Err(Error::Internal(format!("{} {}: scalar {c} is not a sign", sd.name(), slice.lambda)));
        };
        return Ok(base(verdict, Certificate::Scalar(c), m));
    }
    let cert = witness(&m);
    Ok(base(Verdict::NonScalar, cert, m))
}

/// Builds the zero-weight data of `V_λ` and classifies.
pub fn classify_w0(sd: &SatakeDiagram, lambda: &Weight, cap: u64) -> Result<Classification> {
    let rs = sd.root_system();
    let dim_v = checked_dim(&rs, lambda, cap)?;
    let slice = ZeroSlice::build(&rs, lambda, cap)?;
    classify_slice(&slice, sd, dim_v, WordChoice::default())
}
