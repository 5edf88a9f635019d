//! Cantor-Bendixson derivatives of the ordinal intervals [0, alpha].
//!
//! The xi-th derivative of [0, alpha] is the set of nonzero multiples of
//! w^xi in [0, alpha]; its order type is the quotient of alpha by w^xi.
//! The height (first stage with empty derivative) is deg(alpha) + 1. The
//! Dirac functional at a point lambda survives exactly
//! trailing-exponent-of-lambda many stages, which is the witness behind
//! the Szlenk lower bound.
//!
//! A concrete oracle below w^4 re-derives the stages by iterating "remove
//! isolated points" on coefficient vectors, for cross-checking the
//! symbolic route.

use crate::error::{Error, Result};
use crate::oracle::SmallOrdinal;
use crate::ordinal::Ordinal;

/// Symbolic description of one derivative stage of [0, alpha].
///
/// For `stage > 0` the set is `{ w^stage * eta : 1 <= eta <= order_type }`.
/// The stage-0 descriptor instead carries `full_interval = true` and
/// describes all of [0, alpha] (alpha-plus-one-point many points), keeping
/// the positive stages uniform.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct DerivedSetDescriptor {
    pub alpha: Ordinal,
    pub stage: Ordinal,
    /// 0 iff the derived set is empty.
    pub order_type: Ordinal,
    pub full_interval: bool,
}

impl DerivedSetDescriptor {
    pub fn is_empty(&self) -> bool {
        !self.full_interval && self.order_type.is_zero()
    }
}

/// The stage-xi Cantor-Bendixson derivative of [0, alpha].
pub fn cb_derivative(alpha: &Ordinal, xi: &Ordinal) -> DerivedSetDescriptor {
    if xi.is_zero() {
        return DerivedSetDescriptor {
            alpha: alpha.clone(),
            stage: Ordinal::zero(),
            order_type: alpha.clone(),
            full_interval: true,
        };
    }
    let step = Ordinal::omega_pow(xi);
    let (q, _) = alpha.divmod(&step).expect("w^xi > 0");
    DerivedSetDescriptor {
        alpha: alpha.clone(),
        stage: xi.clone(),
        order_type: q,
        full_interval: false,
    }
}

/// Least xi whose derivative of [0, alpha] is empty: deg(alpha) + 1, with
/// the single-point space [0, 0] having height 1 by the same convention.
pub fn cb_height(alpha: &Ordinal) -> Ordinal {
    match alpha.deg() {
        Ok(d) => d.succ(),
        Err(_) => Ordinal::one(),
    }
}

/// Number of derivation stages the Dirac functional at lambda survives:
/// the Cantor-Bendixson rank of the point, i.e. lambda's trailing CNF
/// exponent. In particular `dirac_rank(w^zeta) = zeta`. Isolated points
/// (0 and successors) have rank 0.
pub fn dirac_rank(lambda: &Ordinal) -> Ordinal {
    lambda.trailing_exponent()
}

/// One stage of the concrete derivation oracle.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct ConcreteStage {
    pub stage: u32,
    /// Order type of the stage set (stage >= 1), as a coefficient vector.
    pub order_type: SmallOrdinal,
    /// Explicit points `w^stage * eta` when the stage set is finite.
    pub points: Option<Vec<SmallOrdinal>>,
}

const ORACLE_COEFF_CAP: u64 = 1_000_000;

/// Iterates "remove isolated points" on [0, alpha] for alpha < w^4,
/// working directly on coefficient vectors.
///
/// In [0, alpha] the isolated points are 0 and the successors (nonzero
/// units coefficient); removing them leaves the nonzero multiples of w.
/// Inductively, stage k consists of the vectors whose k lowest
/// coefficients vanish, and its order type is the coefficient vector of
/// alpha shifted right by k places. This derivation never consults the
/// general CNF engine.
pub fn concrete_derivative_oracle(alpha: &SmallOrdinal, steps: u32) -> Result<Vec<ConcreteStage>> {
    if steps > 4 {
        return Err(Error::domain("oracle supports at most 4 derivation steps"));
    }
    if alpha.0.iter().any(|&c| c > ORACLE_COEFF_CAP) {
        return Err(Error::domain("oracle coefficient out of range"));
    }
    let mut stages = Vec::new();
    for k in 1..=steps {
        let mut shifted = [0u64; 4];
        for i in 0..4 {
            let j = i + k as usize;
            if j < 4 {
                shifted[j] = alpha.0[i];
            }
        }
        let order_type = SmallOrdinal(shifted);
        let points = match order_type.0 {
            [0, 0, 0, q] if q <= 64 => Some(
                (1..=q)
                    .map(|eta| {
                        let mut v = [0u64; 4];
                        v[3 - k as usize] = eta;
                        SmallOrdinal(v)
                    })
                    .collect(),
            ),
            _ => None,
        };
        stages.push(ConcreteStage { stage: k, order_type, points });
    }
    Ok(stages)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::text::parse_ordinal;

    fn ord(s: &str) -> Ordinal {
        parse_ordinal(s).unwrap()
    }

    #[test]
    fn derivative_examples() {
        let d = cb_derivative(&ord("w^3*4 + 2"), &Ordinal::zero());
        assert!(d.full_interval);
        assert_eq!(d.order_type, ord("w^3*4 + 2"));

        let d = cb_derivative(&ord("w^2*3 + w*2 + 1"), &Ordinal::one());
        assert_eq!(d.order_type, ord("w*3 + 2"));
        assert!(!d.is_empty());

        let d = cb_derivative(&ord("w"), &ord("2"));
        assert!(d.is_empty());
    }

    #[test]
    fn height_examples() {
        assert_eq!(cb_height(&ord("w^2*3")), ord("3"));
        assert_eq!(cb_height(&ord("5")), ord("1"));
        assert_eq!(cb_height(&ord("0")), ord("1"));
        let h = cb_height(&ord("w^(w^2)"));
        assert_eq!(h, ord("w^2 + 1"));
        // emptiness exactly at the height
        assert!(cb_derivative(&ord("w^(w^2)"), &h).is_empty());
        assert!(!cb_derivative(&ord("w^(w^2)"), &ord("w^2")).is_empty());
    }

    #[test]
    fn dirac_examples() {
        assert_eq!(dirac_rank(&ord("w^2")), ord("2"));
        assert_eq!(dirac_rank(&ord("7")), ord("0"));
        assert_eq!(dirac_rank(&ord("0")), ord("0"));
        assert_eq!(dirac_rank(&ord("w^2*3 + w*2")), ord("1"));
        assert_eq!(dirac_rank(&ord("w^(w^2)")), ord("w^2"));
        assert_eq!(dirac_rank(&Ordinal::eps(1)), Ordinal::eps(1));
    }

    #[test]
    fn oracle_examples() {
        // [0, w]: stage 1 = {w}, stage 2 empty
        let st = concrete_derivative_oracle(&SmallOrdinal::new(0, 0, 1, 0), 2).unwrap();
        assert_eq!(st[0].order_type, SmallOrdinal::new(0, 0, 0, 1));
        assert_eq!(st[0].points.as_ref().unwrap(), &vec![SmallOrdinal::new(0, 0, 1, 0)]);
        assert!(st[1].order_type.is_zero());

        // [0, w^2*3]: stage 2 has exactly the points w^2, w^2*2, w^2*3
        let st = concrete_derivative_oracle(&SmallOrdinal::new(0, 3, 0, 0), 2).unwrap();
        assert_eq!(st[1].order_type, SmallOrdinal::new(0, 0, 0, 3));
        assert_eq!(
            st[1].points.as_ref().unwrap(),
            &vec![
                SmallOrdinal::new(0, 1, 0, 0),
                SmallOrdinal::new(0, 2, 0, 0),
                SmallOrdinal::new(0, 3, 0, 0)
            ]
        );

        // [0, 9]: stage 1 empty
        let st = concrete_derivative_oracle(&SmallOrdinal::new(0, 0, 0, 9), 1).unwrap();
        assert!(st[0].order_type.is_zero());

        assert!(concrete_derivative_oracle(&SmallOrdinal::zero(), 5).is_err());
    }

    #[test]
    fn oracle_agreement_small() {
        for c2 in 0..=5u64 {
            for c1 in 0..=5u64 {
                for c0 in 0..=5u64 {
                    let small = SmallOrdinal::new(0, c2, c1, c0);
                    let alpha = small.to_ordinal();
                    let stages = concrete_derivative_oracle(&small, 3).unwrap();
                    for st in &stages {
                        let d = cb_derivative(&alpha, &Ordinal::finite(st.stage as u64));
                        assert_eq!(d.order_type, st.order_type.to_ordinal());
                    }
                }
            }
        }
    }

    #[test]
    fn semigroup_law_sampled() {
        // derivative of a derivative composes additively in the stage
        let alphas = ["w^2*3 + w*2 + 1", "w^3*2 + w", "w^(w)*4 + w^2", "w^2*5"];
        for a in alphas {
            let alpha = ord(a);
            for eta in 0..3u64 {
                for xi in 1..3u64 {
                    let first = cb_derivative(&alpha, &Ordinal::finite(eta));
                    let then = cb_derivative(&first.order_type, &Ordinal::finite(xi));
                    let direct = cb_derivative(&alpha, &Ordinal::finite(eta + xi));
                    assert_eq!(then.order_type, direct.order_type, "alpha={a}, eta={eta}, xi={xi}");
                }
            }
        }
    }
}
