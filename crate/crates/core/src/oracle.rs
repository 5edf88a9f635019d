//! Independent ground-truth arithmetic on ordinals below `w^4`.
//!
//! A [`SmallOrdinal`] is a coefficient vector `(c3, c2, c1, c0)` denoting
//! `w^3*c3 + w^2*c2 + w*c1 + c0`. The operations below are closed forms
//! derived by hand from the recursive definitions of ordinal addition and
//! multiplication, specialized to degree <= 3; they deliberately share no
//! code with [`crate::ordinal`].
//!
//! Derivations:
//!
//! * addition `a + b`: recursively, `a + 0 = a`, `a + (b+1) = (a + b) + 1`,
//!   and `a + sup = sup`. Specialized to vectors this collapses to: let `j`
//!   be the leading degree of `b`; every term of `a` of degree < `j` is
//!   absorbed, the degree-`j` coefficients add, and `b`'s lower terms are
//!   copied verbatim.
//! * multiplication `a * b`: left-distribute over `b`'s terms.
//!   `a * w^j` (j >= 1, a > 0) is the supremum of `a * eta` for
//!   `eta < w^j`, which is `w^(deg(a) + j)`; a finite right factor `c`
//!   scales only the leading coefficient of `a`
//!   (`a * 2 = a + a` absorbs everything below `a`'s leading term once).

use crate::error::{Error, Result};
use crate::ordinal::Ordinal;

/// `w^3*c3 + w^2*c2 + w*c1 + c0`, stored as `[c3, c2, c1, c0]`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, PartialOrd, Ord)]
pub struct SmallOrdinal(pub [u64; 4]);

impl SmallOrdinal {
    pub fn new(c3: u64, c2: u64, c1: u64, c0: u64) -> SmallOrdinal {
        SmallOrdinal([c3, c2, c1, c0])
    }

    pub fn zero() -> SmallOrdinal {
        SmallOrdinal([0; 4])
    }

    pub fn is_zero(&self) -> bool {
        self.0 == [0; 4]
    }

    /// Leading degree (0..=3); None for 0.
    pub fn degree(&self) -> Option<u32> {
        self.0.iter().position(|c| *c != 0).map(|i| 3 - i as u32)
    }

    /// Lexicographic comparison of coefficient vectors.
    pub fn o_compare(&self, other: &SmallOrdinal) -> std::cmp::Ordering {
        self.0.cmp(&other.0)
    }

    /// Closed-form ordinal sum (see module docs).
    pub fn o_add(&self, b: &SmallOrdinal) -> Result<SmallOrdinal> {
        let Some(j) = b.degree() else {
            return Ok(*self);
        };
        let lead = (3 - j) as usize;
        let mut out = [0u64; 4];
        // keep a's terms strictly above degree j
        out[..lead].copy_from_slice(&self.0[..lead]);
        out[lead] = self.0[lead]
            .checked_add(b.0[lead])
            .ok_or_else(|| Error::overflow("oracle coefficient sum exceeds u64"))?;
        out[lead + 1..].copy_from_slice(&b.0[lead + 1..]);
        Ok(SmallOrdinal(out))
    }

    /// Closed-form ordinal product (see module docs). Errors when the
    /// product leaves the degree <= 3 range.
    pub fn o_mul(&self, b: &SmallOrdinal) -> Result<SmallOrdinal> {
        if self.is_zero() || b.is_zero() {
            return Ok(SmallOrdinal::zero());
        }
        let da = self.degree().unwrap();
        let mut acc = SmallOrdinal::zero();
        // b's terms in decreasing degree
        for j in (0..=3u32).rev() {
            let c = b.0[(3 - j) as usize];
            if c == 0 {
                continue;
            }
            let piece = if j == 0 {
                let mut p = *self;
                let lead = (3 - da) as usize;
                p.0[lead] = p.0[lead]
                    .checked_mul(c)
                    .ok_or_else(|| Error::overflow("oracle coefficient product exceeds u64"))?;
                p
            } else {
                let d = da + j;
                if d > 3 {
                    return Err(Error::overflow("oracle product degree exceeds 3"));
                }
                let mut p = SmallOrdinal::zero();
                p.0[(3 - d) as usize] = c;
                p
            };
            acc = acc.o_add(&piece)?;
        }
        Ok(acc)
    }

    /// Checks an alleged division result `a = d*q + r`, `r < d`, using
    /// only oracle arithmetic.
    pub fn o_check_divmod(a: &SmallOrdinal, d: &SmallOrdinal, q: &SmallOrdinal, r: &SmallOrdinal) -> bool {
        if r.o_compare(d) != std::cmp::Ordering::Less {
            return false;
        }
        match d.o_mul(q).and_then(|dq| dq.o_add(r)) {
            Ok(v) => v == *a,
            Err(_) => false,
        }
    }

    /// Embedding into the general engine.
    pub fn to_ordinal(&self) -> Ordinal {
        let mut acc = Ordinal::zero();
        for (i, &c) in self.0.iter().enumerate() {
            if c == 0 {
                continue;
            }
            let e = Ordinal::finite(3 - i as u64);
            let term = Ordinal::omega_pow(&e).mul(&Ordinal::finite(c)).unwrap();
            acc = acc.add(&term).unwrap();
        }
        acc
    }

    /// Inverse of [`to_ordinal`] for in-range values.
    pub fn from_ordinal(a: &Ordinal) -> Option<SmallOrdinal> {
        let mut out = [0u64; 4];
        match a {
            Ordinal::Zero => {}
            Ordinal::EpsAtom(_) => return None,
            Ordinal::Cnf(terms) => {
                for (e, c) in terms {
                    let d = e.as_finite()?;
                    if d > 3 {
                        return None;
                    }
                    out[(3 - d) as usize] = *c;
                }
            }
        }
        Some(SmallOrdinal(out))
    }
}
