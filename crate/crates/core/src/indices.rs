//! The gamma bracket of an ordinal and the Szlenk and w*-dentability
//! indices of C([0, alpha]).
//!
//! For infinite alpha, gamma is the unique ordinal with
//! `w^(w^gamma) <= alpha < w^(w^(gamma+1))`; then
//! `Sz(C([0, alpha])) = w^(gamma+1)` and
//! `Dz(C([0, alpha])) = w^(1+gamma+1)`. Finite alpha gives a
//! finite-dimensional space, whose Szlenk index is 1; no exact
//! dentability value is available there, so `dentability_index` rejects
//! finite input rather than guess.

use crate::error::{Error, Result};
use crate::ordinal::Ordinal;

/// Both indices of C([0, alpha]) together with the bracket that
/// determines them.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct IndexReport {
    pub alpha: Ordinal,
    /// Absent for finite alpha.
    pub gamma: Option<Ordinal>,
    pub szlenk: Ordinal,
    /// Absent for finite alpha.
    pub dentability: Option<Ordinal>,
    /// `[w^(w^gamma), w^(w^(gamma+1)))`; absent for finite alpha.
    pub bracket: Option<(Ordinal, Ordinal)>,
}

/// The unique gamma with `w^(w^gamma) <= alpha < w^(w^(gamma+1))`.
///
/// Computed structurally as the degree of the degree of alpha; the
/// bracketing inequalities are then re-checked through the engine, so a
/// bug in either route panics instead of returning a wrong gamma.
pub fn gamma_of(alpha: &Ordinal) -> Result<Ordinal> {
    if *alpha < Ordinal::omega() {
        return Err(Error::domain("gamma bracket defined for infinite ordinals only"));
    }
    let gamma = alpha.deg()?.deg()?;
    let low = Ordinal::omega_pow(&Ordinal::omega_pow(&gamma));
    let high = Ordinal::omega_pow(&Ordinal::omega_pow(&gamma.succ()));
    assert!(
        low <= *alpha && *alpha < high,
        "gamma bracket self-check failed for alpha = {alpha}, gamma = {gamma}"
    );
    Ok(gamma)
}

/// `Sz(C([0, alpha]))`: 1 for finite alpha, else `w^(gamma+1)`.
pub fn szlenk_index(alpha: &Ordinal) -> Ordinal {
    if alpha.is_finite() {
        return Ordinal::one();
    }
    let gamma = gamma_of(alpha).expect("infinite alpha");
    Ordinal::omega_pow(&gamma.succ())
}

/// `Dz(C([0, alpha])) = w^(1+gamma+1)`; rejects finite alpha.
pub fn dentability_index(alpha: &Ordinal) -> Result<Ordinal> {
    if alpha.is_finite() {
        return Err(Error::domain(
            "dentability index is only computed for alpha >= w",
        ));
    }
    let gamma = gamma_of(alpha)?;
    let exp = Ordinal::one().add(&gamma)?.succ();
    Ok(Ordinal::omega_pow(&exp))
}

pub fn index_report(alpha: &Ordinal) -> IndexReport {
    if alpha.is_finite() {
        return IndexReport {
            alpha: alpha.clone(),
            gamma: None,
            szlenk: Ordinal::one(),
            dentability: None,
            bracket: None,
        };
    }
    let gamma = gamma_of(alpha).expect("infinite alpha");
    let low = Ordinal::omega_pow(&Ordinal::omega_pow(&gamma));
    let high = Ordinal::omega_pow(&Ordinal::omega_pow(&gamma.succ()));
    IndexReport {
        alpha: alpha.clone(),
        gamma: Some(gamma.clone()),
        szlenk: szlenk_index(alpha),
        dentability: Some(dentability_index(alpha).expect("infinite alpha")),
        bracket: Some((low, high)),
    }
}
