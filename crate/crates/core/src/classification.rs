//! Bessaga-Pelczynski isomorphic classification of C([0, alpha]) for
//! countable alpha: for `w <= alpha <= beta < w1`, the spaces are
//! isomorphic iff `beta < alpha^w`, and every class has the canonical
//! representative `C([0, w^(w^gamma)])`.
//!
//! Uncountable inputs are rejected: the classification fails beyond w1,
//! where the indices (not isomorphism type) are the right invariant.

use crate::error::{Error, Result};
use crate::indices::gamma_of;
use crate::ordinal::Ordinal;

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct IsoVerdict {
    pub isomorphic: bool,
    /// min(alpha, beta)
    pub witness_low: Ordinal,
    /// witness_low ^ w; the verdict is `max(alpha, beta) < witness_pow`
    pub witness_pow: Ordinal,
    pub gamma_a: Ordinal,
    pub gamma_b: Ordinal,
}

fn check_arg(name: &str, a: &Ordinal) -> Result<()> {
    if *a < Ordinal::omega() {
        return Err(Error::domain(format!(
            "{name} must be >= w for the isomorphic classification"
        )));
    }
    if !a.is_countable() {
        return Err(Error::domain(format!(
            "{name} is uncountable: the Bessaga-Pelczynski classification does not hold in general for alpha >= W1"
        )));
    }
    Ok(())
}

pub fn isomorphic(alpha: &Ordinal, beta: &Ordinal) -> Result<IsoVerdict> {
    check_arg("alpha", alpha)?;
    check_arg("beta", beta)?;
    let (low, high) = if alpha <= beta { (alpha, beta) } else { (beta, alpha) };
    let witness_pow = low.pow(&Ordinal::omega())?;
    Ok(IsoVerdict {
        isomorphic: *high < witness_pow,
        witness_low: low.clone(),
        witness_pow,
        gamma_a: gamma_of(alpha)?,
        gamma_b: gamma_of(beta)?,
    })
}

/// `w^(w^gamma_of(alpha))`, the least ordinal in alpha's class.
pub fn canonical_representative(alpha: &Ordinal) -> Result<Ordinal> {
    check_arg("alpha", alpha)?;
    let rep = Ordinal::omega_pow(&Ordinal::omega_pow(&gamma_of(alpha)?));
    debug_assert!(isomorphic(alpha, &rep).map(|v| v.isomorphic).unwrap_or(false));
    Ok(rep)
}
