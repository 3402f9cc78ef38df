//! The standard geometric representation: simple roots, reflections acting on
//! root vectors, and the sign classification that drives descent decisions.
//!
//! Action convention, pinned once for the whole crate: [`act`] applies the
//! letters of a word to a vector **left to right** (first letter acts first),
//! so `act(word_of(w), v)` computes the linear map of w^-1 applied to v.
//! Consequently `act(word_of(w), alpha_s)` is negative exactly when s is a
//! right descent of w^-1 (a left descent of w), and right-descent tests act
//! by the reversed word. The worked case fixing this: in A2,
//! `act([s0, s1], alpha_s1) = alpha_s0`.

use thiserror::Error;

use crate::system::{BilinearForm, GeneratorId};

/// Tolerance for the root sign test.
pub const SIGN_EPSILON: f64 = 1e-7;

/// A real coefficient vector over the simple roots.
#[derive(Clone, PartialEq, Debug)]
pub struct RootVector {
    coords: Vec<f64>,
}

impl RootVector {
    pub fn from_coords(coords: Vec<f64>) -> Self {
        RootVector { coords }
    }

    pub fn coords(&self) -> &[f64] {
        &self.coords
    }

    pub fn approx_eq(&self, other: &RootVector, tol: f64) -> bool {
        self.coords.len() == other.coords.len()
            && self
                .coords
                .iter()
                .zip(&other.coords)
                .all(|(a, b)| (a - b).abs() <= tol)
    }
}

/// Sign classification of a vector in the root orbit.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum SignClass {
    Positive,
    Negative,
}

/// Raised when a vector cannot be classified: every coordinate is within
/// tolerance of zero, or coordinates of both signs exceed the tolerance.
/// Signals numerical breakdown; never silently classified.
#[derive(Error, Debug, Clone, PartialEq)]
#[error("sign classification failed ({reason}) for coordinates {coords:?}")]
pub struct DegenerateSign {
    pub reason: DegenerateReason,
    pub coords: Vec<f64>,
}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum DegenerateReason {
    BelowTolerance,
    MixedSigns,
}

impl std::fmt::Display for DegenerateReason {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            DegenerateReason::BelowTolerance => write!(f, "all coordinates below tolerance"),
            DegenerateReason::MixedSigns => write!(f, "coordinates of both signs above tolerance"),
        }
    }
}

/// The standard basis vector alpha_s.
pub fn simple_root(rank: usize, s: GeneratorId) -> RootVector {
    let mut coords = vec![0.0; rank];
    coords[s.index()] = 1.0;
    RootVector { coords }
}

/// The bilinear form value (u | v) = sum u_i B_ij v_j.
pub fn form_value(form: &BilinearForm, u: &RootVector, v: &RootVector) -> f64 {
    let mut acc = 0.0;
    for (i, ui) in u.coords.iter().enumerate() {
        if *ui != 0.0 {
            let row = form.row(GeneratorId::new(i));
            acc += ui * row.iter().zip(&v.coords).map(|(b, vj)| b * vj).sum::<f64>();
        }
    }
    acc
}

fn reflect_in_place(s: GeneratorId, coords: &mut [f64], form: &BilinearForm) {
    let row = form.row(s);
    let dot: f64 = row.iter().zip(coords.iter()).map(|(b, v)| b * v).sum();
    coords[s.index()] -= 2.0 * dot;
}

/// The reflection sigma_s(v) = v - 2 (alpha_s | v) alpha_s.
pub fn reflect(s: GeneratorId, v: &RootVector, form: &BilinearForm) -> RootVector {
    let mut out = v.clone();
    reflect_in_place(s, &mut out.coords, form);
    out
}

/// Applies the letters of a word to a vector, first letter first: the result
/// is sigma_{s_k}(...sigma_{s_1}(v)...) for word s_1...s_k. See the module
/// docs for how this composes with descent tests.
pub fn act(word: &[GeneratorId], v: &RootVector, form: &BilinearForm) -> RootVector {
    act_iter(word.iter().copied(), v, form)
}

pub(crate) fn act_iter<I>(letters: I, v: &RootVector, form: &BilinearForm) -> RootVector
where
    I: IntoIterator<Item = GeneratorId>,
{
    let mut out = v.clone();
    for s in letters {
        reflect_in_place(s, &mut out.coords, form);
    }
    out
}

/// Classifies a root-orbit vector by its coordinate of largest magnitude.
pub fn sign_of(v: &RootVector) -> Result<SignClass, DegenerateSign> {
    let mut max = f64::NEG_INFINITY;
    let mut min = f64::INFINITY;
    for &c in &v.coords {
        max = max.max(c);
        min = min.min(c);
    }
    let has_pos = max > SIGN_EPSILON;
    let has_neg = min < -SIGN_EPSILON;
    match (has_pos, has_neg) {
        (true, false) => Ok(SignClass::Positive),
        (false, true) => Ok(SignClass::Negative),
        (true, true) => Err(DegenerateSign {
            reason: DegenerateReason::MixedSigns,
            coords: v.coords.clone(),
        }),
        (false, false) => Err(DegenerateSign {
            reason: DegenerateReason::BelowTolerance,
            coords: v.coords.clone(),
        }),
    }
}
