//! Ordinals in Cantor normal form, extended with symbolic epsilon-number
//! atoms `W1, W2, ...` (read: the uncountable initial ordinals).
//!
//! Every value is kept canonical at all times:
//!
//! * `Cnf` term exponents are strictly decreasing and coefficients >= 1;
//! * a `Cnf` consisting of the single term `(Wk, 1)` is forbidden, since
//!   `w^Wk = Wk` (epsilon-number fixed point) -- that value is the atom
//!   itself;
//! * `Zero` is the only representation of 0 and `Cnf([(0, c)])` the only
//!   representation of the finite ordinal `c`.
//!
//! Structural equality therefore coincides with ordinal equality.
//!
//! Coefficients are `u64`; any operation that would exceed that width
//! reports [`Error::Overflow`] instead of wrapping.

use std::cmp::Ordering;

use crate::error::{Error, Result};

/// An ordinal below eps0, or a polynomial over the atoms `Wk`.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub enum Ordinal {
    Zero,
    /// The k-th epsilon-number atom (k >= 1), written `Wk`.
    EpsAtom(u32),
    /// `w^e1 * c1 + ... + w^ek * ck` with `e1 > ... > ek`, all `ci >= 1`.
    Cnf(Vec<(Ordinal, u64)>),
}

use Ordinal::{Cnf, EpsAtom, Zero};

impl Ordinal {
    pub fn zero() -> Ordinal {
        Zero
    }

    pub fn one() -> Ordinal {
        Ordinal::finite(1)
    }

    pub fn finite(n: u64) -> Ordinal {
        if n == 0 {
            Zero
        } else {
            Cnf(vec![(Zero, n)])
        }
    }

    pub fn omega() -> Ordinal {
        Cnf(vec![(Ordinal::one(), 1)])
    }

    /// The atom `Wk`; `k` must be >= 1.
    pub fn eps(k: u32) -> Ordinal {
        assert!(k >= 1, "eps-atom index must be >= 1");
        EpsAtom(k)
    }

    /// Builds a canonical ordinal from a term list with strictly
    /// decreasing exponents and coefficients >= 1.
    fn from_terms(terms: Vec<(Ordinal, u64)>) -> Ordinal {
        debug_assert!(terms.iter().all(|(_, c)| *c >= 1));
        debug_assert!(terms.windows(2).all(|w| w[0].0 > w[1].0));
        match terms.len() {
            0 => Zero,
            1 if terms[0].1 == 1 && matches!(terms[0].0, EpsAtom(_)) => terms.into_iter().next().unwrap().0,
            _ => Cnf(terms),
        }
    }

    /// The CNF term list of this value; `Wk` is viewed as `w^Wk * 1`.
    fn to_terms(&self) -> Vec<(Ordinal, u64)> {
        match self {
            Zero => Vec::new(),
            EpsAtom(k) => vec![(EpsAtom(*k), 1)],
            Cnf(terms) => terms.clone(),
        }
    }

    pub fn is_zero(&self) -> bool {
        matches!(self, Zero)
    }

    /// `Some(n)` iff this ordinal is the finite ordinal `n`.
    pub fn as_finite(&self) -> Option<u64> {
        match self {
            Zero => Some(0),
            Cnf(terms) if terms.len() == 1 && terms[0].0.is_zero() => Some(terms[0].1),
            _ => None,
        }
    }

    pub fn is_finite(&self) -> bool {
        self.as_finite().is_some()
    }

    /// True for nonzero ordinals with no successor predecessor.
    pub fn is_limit(&self) -> bool {
        match self {
            Zero => false,
            EpsAtom(_) => true,
            Cnf(terms) => !terms.last().unwrap().0.is_zero(),
        }
    }

    pub fn succ(&self) -> Ordinal {
        // adding 1 never overflows the coefficient unless it is u64::MAX
        self.add(&Ordinal::one())
            .expect("successor overflow on u64::MAX units coefficient")
    }

    /// True iff no `Wk` atom occurs anywhere in the value.
    pub fn is_countable(&self) -> bool {
        match self {
            Zero => true,
            EpsAtom(_) => false,
            Cnf(terms) => terms.iter().all(|(e, _)| e.is_countable()),
        }
    }

    /// Leading CNF exponent. Errors on 0.
    pub fn deg(&self) -> Result<Ordinal> {
        match self {
            Zero => Err(Error::domain("deg(0) is undefined")),
            EpsAtom(k) => Ok(EpsAtom(*k)),
            Cnf(terms) => Ok(terms[0].0.clone()),
        }
    }

    /// Trailing (smallest) CNF exponent; 0 for 0.
    pub fn trailing_exponent(&self) -> Ordinal {
        match self {
            Zero => Zero,
            EpsAtom(k) => EpsAtom(*k),
            Cnf(terms) => terms.last().unwrap().0.clone(),
        }
    }

    /// Ordinal sum `self + b`.
    pub fn add(&self, b: &Ordinal) -> Result<Ordinal> {
        if self.is_zero() {
            return Ok(b.clone());
        }
        if b.is_zero() {
            return Ok(self.clone());
        }
        let ta = self.to_terms();
        let tb = b.to_terms();
        let lead_b = &tb[0].0;
        let mut out: Vec<(Ordinal, u64)> = Vec::with_capacity(ta.len() + tb.len());
        let mut merged = false;
        for (e, c) in &ta {
            match e.cmp(lead_b) {
                Ordering::Greater => out.push((e.clone(), *c)),
                Ordering::Equal => {
                    let sum = c
                        .checked_add(tb[0].1)
                        .ok_or_else(|| Error::overflow("coefficient sum exceeds u64"))?;
                    out.push((lead_b.clone(), sum));
                    merged = true;
                    break;
                }
                Ordering::Less => break,
            }
        }
        if !merged {
            out.push(tb[0].clone());
        }
        out.extend_from_slice(&tb[1..]);
        Ok(Ordinal::from_terms(out))
    }

    /// Left difference: the unique `x` with `smaller + x = self`.
    /// Caller must ensure `smaller <= self`.
    pub fn left_diff(&self, smaller: &Ordinal) -> Ordinal {
        debug_assert!(smaller <= self, "left_diff precondition");
        let ta = self.to_terms();
        let tb = smaller.to_terms();
        for i in 0..ta.len() {
            if i >= tb.len() {
                // smaller is a proper prefix
                return Ordinal::from_terms(ta[i..].to_vec());
            }
            let (ea, ca) = &ta[i];
            let (eb, cb) = &tb[i];
            if ea > eb {
                return Ordinal::from_terms(ta[i..].to_vec());
            }
            debug_assert!(ea == eb, "left_diff: smaller exceeds self");
            if ca > cb {
                let mut out = vec![(ea.clone(), ca - cb)];
                out.extend_from_slice(&ta[i + 1..]);
                return Ordinal::from_terms(out);
            }
            debug_assert!(ca == cb, "left_diff: smaller exceeds self");
        }
        Zero
    }

    /// Ordinal product `self * b` (left-distributes over b's CNF terms).
    pub fn mul(&self, b: &Ordinal) -> Result<Ordinal> {
        if self.is_zero() || b.is_zero() {
            return Ok(Zero);
        }
        let deg_a = self.deg()?;
        let mut acc = Zero;
        for (e, c) in b.to_terms() {
            let piece = if e.is_zero() {
                // right factor finite: scale the leading coefficient only
                let mut terms = self.to_terms();
                terms[0].1 = terms[0]
                    .1
                    .checked_mul(c)
                    .ok_or_else(|| Error::overflow("coefficient product exceeds u64"))?;
                Ordinal::from_terms(terms)
            } else {
                Ordinal::from_terms(vec![(deg_a.add(&e)?, c)])
            };
            acc = acc.add(&piece)?;
        }
        Ok(acc)
    }

    /// `w^e` in canonical form; `w^Wk = Wk` and `w^0 = 1`.
    pub fn omega_pow(e: &Ordinal) -> Ordinal {
        Ordinal::from_terms(vec![(e.clone(), 1)])
    }

    /// Ordinal power `self ^ b`, with `0^0 = 1`.
    pub fn pow(&self, b: &Ordinal) -> Result<Ordinal> {
        if b.is_zero() {
            return Ok(Ordinal::one());
        }
        if self.is_zero() {
            return Ok(Zero);
        }
        if *self == Ordinal::one() {
            return Ok(Ordinal::one());
        }
        // split b into its limit part and finite part
        let tb = b.to_terms();
        let (limit_terms, fin): (Vec<_>, u64) = match tb.last() {
            Some((e, c)) if e.is_zero() => (tb[..tb.len() - 1].to_vec(), *c),
            _ => (tb, 0),
        };
        let limit_part = Ordinal::from_terms(limit_terms);
        if let Some(a) = self.as_finite() {
            // finite base, a >= 2
            let head = if limit_part.is_zero() {
                Ordinal::one()
            } else {
                // limit_part = w * mu, and a^(w*mu) = w^mu
                let (mu, r) = limit_part.divmod(&Ordinal::omega())?;
                debug_assert!(r.is_zero());
                Ordinal::omega_pow(&mu)
            };
            let tail = Ordinal::finite(
                checked_pow_u64(a, fin).ok_or_else(|| Error::overflow("finite power exceeds u64"))?,
            );
            head.mul(&tail)
        } else {
            // infinite base: a^(limit + m) = w^(deg(a) * limit) * a^m
            let head = if limit_part.is_zero() {
                Ordinal::one()
            } else {
                Ordinal::omega_pow(&self.deg()?.mul(&limit_part)?)
            };
            head.mul(&self.pow_finite(fin)?)
        }
    }

    /// `self ^ m` for a finite exponent, by binary powering.
    fn pow_finite(&self, mut m: u64) -> Result<Ordinal> {
        let mut acc = Ordinal::one();
        let mut base = self.clone();
        while m > 0 {
            if m & 1 == 1 {
                acc = acc.mul(&base)?;
            }
            m >>= 1;
            if m > 0 {
                base = base.mul(&base)?;
            }
        }
        Ok(acc)
    }

    /// Left division: the unique `(q, r)` with `self = d*q + r` and `r < d`.
    pub fn divmod(&self, d: &Ordinal) -> Result<(Ordinal, Ordinal)> {
        if d.is_zero() {
            return Err(Error::domain("division by the ordinal 0"));
        }
        let mut q = Zero;
        let mut r = self.clone();
        while r >= *d {
            let er = r.deg()?;
            let ed = d.deg()?;
            let tr = r.to_terms();
            let cr = tr[0].1;
            if er > ed {
                let delta = er.left_diff(&ed);
                q = q.add(&Ordinal::from_terms(vec![(delta, cr)]))?;
                r = Ordinal::from_terms(tr[1..].to_vec());
            } else {
                let cd = d.to_terms()[0].1;
                let mut k = cr / cd;
                let mut dk = d.mul(&Ordinal::finite(k))?;
                if dk > r {
                    k -= 1;
                    dk = d.mul(&Ordinal::finite(k))?;
                }
                debug_assert!(k >= 1);
                q = q.add(&Ordinal::finite(k))?;
                r = r.left_diff(&dk);
            }
        }
        Ok((q, r))
    }

    /// Checks every representation invariant, recursively.
    pub fn validate(&self) -> std::result::Result<(), String> {
        match self {
            Zero => Ok(()),
            EpsAtom(k) => {
                if *k >= 1 {
                    Ok(())
                } else {
                    Err("eps-atom index 0".into())
                }
            }
            Cnf(terms) => {
                if terms.is_empty() {
                    return Err("empty Cnf".into());
                }
                if terms.len() == 1 && terms[0].1 == 1 && matches!(terms[0].0, EpsAtom(_)) {
                    return Err("Cnf[(Wk, 1)] must be the atom Wk".into());
                }
                for w in terms.windows(2) {
                    if w[0].0 <= w[1].0 {
                        return Err("exponents not strictly decreasing".into());
                    }
                }
                for (e, c) in terms {
                    if *c == 0 {
                        return Err("zero coefficient".into());
                    }
                    e.validate()?;
                }
                Ok(())
            }
        }
    }
}

fn checked_pow_u64(base: u64, exp: u64) -> Option<u64> {
    let exp32: u32 = exp.try_into().ok()?;
    base.checked_pow(exp32)
}

impl PartialOrd for Ordinal {
    fn partial_cmp(&self, other: &Ordinal) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Ordinal {
    fn cmp(&self, other: &Ordinal) -> Ordering {
        match (self, other) {
            (Zero, Zero) => Ordering::Equal,
            (Zero, _) => Ordering::Less,
            (_, Zero) => Ordering::Greater,
            (EpsAtom(j), EpsAtom(k)) => j.cmp(k),
            // Wk <= x iff x's leading exponent >= Wk; canonicity rules out equality
            (EpsAtom(k), Cnf(terms)) => {
                if terms[0].0 >= EpsAtom(*k) {
                    Ordering::Less
                } else {
                    Ordering::Greater
                }
            }
            (Cnf(_), EpsAtom(_)) => other.cmp(self).reverse(),
            (Cnf(a), Cnf(b)) => {
                for (ta, tb) in a.iter().zip(b.iter()) {
                    match ta.0.cmp(&tb.0) {
                        Ordering::Equal => {}
                        ord => return ord,
                    }
                    match ta.1.cmp(&tb.1) {
                        Ordering::Equal => {}
                        ord => return ord,
                    }
                }
                a.len().cmp(&b.len())
            }
        }
    }
}

impl std::fmt::Display for Ordinal {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(&crate::text::format_ordinal(self))
    }
}
