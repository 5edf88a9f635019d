//! Symbolic Banach-space expressions over C([0, alpha]) and a traced
//! rewrite system for their isomorphism calculus.
//!
//! Rules:
//!
//! * `decompose` (R1): `C0(w^(w^g * n)) -> C0(z) (+) c0(z, C0(x))` with
//!   `z = w^(w^g)`, `x = w^(w^g * (n-1))`, applied only for `n >= 2`.
//!   The same schema with free factors `x * z` is available through
//!   [`decompose_bp`].
//! * `absorb` (R2): `C0(k) (+) c0(k, C0(k)) -> c0(k, C0(k))` for
//!   `k = w^(w^g)`.
//! * `relax` (R4): `C(a) -> C0(a)` for `a >= w`.
//!
//! The collapse `c0(k, c0(k, X)) -> c0(k, X)` is maintained as a
//! representation invariant by the smart constructors (as is flattening
//! of nested direct sums), so rewriting inside a `c0` context never
//! produces a nested same-index sum.
//!
//! `normalize` applies the rules leftmost-innermost to a fixpoint. Each
//! rule strictly decreases the measure
//! `(sum over C/C0 leaves of the n in their w^(w^g * n) shape, minus one
//! each, plus the number of C leaves; then total node count)` in
//! lexicographic order, so rewriting terminates.

use crate::error::{Error, Result};
use crate::indices::szlenk_index;
use crate::ordinal::Ordinal;

/// A symbolic Banach-space expression.
#[derive(Clone, PartialEq, Eq, Debug)]
pub enum SpaceExpr {
    /// C([0, alpha]), alpha > 0
    C(Ordinal),
    /// C0([0, alpha]), alpha > 0
    C0(Ordinal),
    /// direct sum of >= 2 parts, none itself a direct sum
    DirectSum(Vec<SpaceExpr>),
    /// c0(kappa, X), kappa > 0; inner is never c0(kappa, _) again
    C0Sum(Ordinal, Box<SpaceExpr>),
}

impl SpaceExpr {
    pub fn c(alpha: Ordinal) -> Result<SpaceExpr> {
        if alpha.is_zero() {
            return Err(Error::domain("space parameter must be > 0"));
        }
        Ok(SpaceExpr::C(alpha))
    }

    pub fn c0(alpha: Ordinal) -> Result<SpaceExpr> {
        if alpha.is_zero() {
            return Err(Error::domain("space parameter must be > 0"));
        }
        Ok(SpaceExpr::C0(alpha))
    }

    /// Builds a direct sum, flattening nested sums; a 1-part sum is the
    /// part itself.
    pub fn direct_sum(parts: Vec<SpaceExpr>) -> Result<SpaceExpr> {
        let mut flat = Vec::with_capacity(parts.len());
        for p in parts {
            match p {
                SpaceExpr::DirectSum(inner) => flat.extend(inner),
                other => flat.push(other),
            }
        }
        match flat.len() {
            0 => Err(Error::domain("direct sum needs at least one part")),
            1 => Ok(flat.into_iter().next().unwrap()),
            _ => Ok(SpaceExpr::DirectSum(flat)),
        }
    }

    /// Builds c0(kappa, inner), collapsing `c0(k, c0(k, X))` to `c0(k, X)`.
    pub fn c0_sum(kappa: Ordinal, inner: SpaceExpr) -> Result<SpaceExpr> {
        if kappa.is_zero() {
            return Err(Error::domain("c0 index set must be > 0"));
        }
        match inner {
            SpaceExpr::C0Sum(k2, x) if k2 == kappa => Ok(SpaceExpr::C0Sum(kappa, x)),
            other => Ok(SpaceExpr::C0Sum(kappa, Box::new(other))),
        }
    }

    /// Child subexpressions (kappa parameters are not children).
    fn children(&self) -> Vec<&SpaceExpr> {
        match self {
            SpaceExpr::C(_) | SpaceExpr::C0(_) => Vec::new(),
            SpaceExpr::DirectSum(parts) => parts.iter().collect(),
            SpaceExpr::C0Sum(_, inner) => vec![inner],
        }
    }

    fn subterm(&self, path: &[usize]) -> Option<&SpaceExpr> {
        let mut cur = self;
        for &i in path {
            cur = *cur.children().get(i)?;
        }
        Some(cur)
    }

    /// Replaces the subterm at `path`, re-normalizing through the smart
    /// constructors on the way back up.
    fn replace(&self, path: &[usize], with: SpaceExpr) -> Result<SpaceExpr> {
        let Some((&i, rest)) = path.split_first() else {
            return Ok(with);
        };
        match self {
            SpaceExpr::DirectSum(parts) => {
                let mut out = parts.clone();
                out[i] = parts[i].replace(rest, with)?;
                SpaceExpr::direct_sum(out)
            }
            SpaceExpr::C0Sum(kappa, inner) if i == 0 => {
                SpaceExpr::c0_sum(kappa.clone(), inner.replace(rest, with)?)
            }
            _ => Err(Error::domain("invalid rewrite position")),
        }
    }

    /// All C/C0 leaf parameters.
    fn leaf_params(&self) -> Vec<&Ordinal> {
        match self {
            SpaceExpr::C(a) | SpaceExpr::C0(a) => vec![a],
            SpaceExpr::DirectSum(parts) => parts.iter().flat_map(|p| p.leaf_params()).collect(),
            SpaceExpr::C0Sum(_, inner) => inner.leaf_params(),
        }
    }

    /// All ordinal parameters, including c0 index sets.
    fn all_params(&self) -> Vec<&Ordinal> {
        match self {
            SpaceExpr::C(a) | SpaceExpr::C0(a) => vec![a],
            SpaceExpr::DirectSum(parts) => parts.iter().flat_map(|p| p.all_params()).collect(),
            SpaceExpr::C0Sum(kappa, inner) => {
                let mut v = vec![kappa];
                v.extend(inner.all_params());
                v
            }
        }
    }
}

impl std::fmt::Display for SpaceExpr {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(&crate::text::format_space(self))
    }
}

/// Rewrite rule names.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Rule {
    /// C0(x*z) -> C0(z) (+) c0(z, C0(x))  (Bessaga-Pelczynski splitting)
    Decompose,
    /// C0(k) (+) c0(k, C0(k)) -> c0(k, C0(k)), k = w^(w^g)
    Absorb,
    /// C(a) -> C0(a), a >= w
    Relax,
}

impl Rule {
    pub fn name(self) -> &'static str {
        match self {
            Rule::Decompose => "decompose",
            Rule::Absorb => "absorb",
            Rule::Relax => "relax",
        }
    }
}

/// One rule application: `before`/`after` are the local subterms at
/// `position` (a path of child indices from the root).
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct RewriteStep {
    pub rule: Rule,
    pub position: Vec<usize>,
    pub before: SpaceExpr,
    pub after: SpaceExpr,
}

/// A chain of rule applications witnessing an isomorphism.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct RewriteTrace {
    pub start: SpaceExpr,
    pub steps: Vec<RewriteStep>,
    pub end: SpaceExpr,
}

/// Lower/upper ordinal bounds on a Szlenk index.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct IndexBounds {
    pub lower: Ordinal,
    pub upper: Ordinal,
    pub exact: bool,
}

/// If `a = w^(w^g)` for some g, returns g.
fn tower_exponent(a: &Ordinal) -> Option<Ordinal> {
    let e = single_power_exponent(a)?;
    single_power_exponent(&e)
}

/// If `a = w^e` (additively indecomposable), returns e.
fn single_power_exponent(a: &Ordinal) -> Option<Ordinal> {
    match a {
        Ordinal::EpsAtom(k) => Some(Ordinal::eps(*k)),
        Ordinal::Cnf(terms) if terms.len() == 1 && terms[0].1 == 1 && !terms[0].0.is_zero() => {
            Some(terms[0].0.clone())
        }
        _ if *a == Ordinal::one() => Some(Ordinal::zero()),
        _ => None,
    }
}

/// If `a = w^(w^g * n)` with finite n >= 1, returns (g, n).
fn pb_shape(a: &Ordinal) -> Option<(Ordinal, u64)> {
    let e = single_power_exponent(a)?;
    match &e {
        Ordinal::Zero => None,
        Ordinal::EpsAtom(k) => Some((Ordinal::eps(*k), 1)),
        Ordinal::Cnf(terms) if terms.len() == 1 => Some((terms[0].0.clone(), terms[0].1)),
        _ => None,
    }
}

/// Product decomposition with free factors:
/// `C0([0, x*z]) ~ C0([0, z]) (+) c0(z, C0([0, x]))` for `0 < z <= x`,
/// `w <= x`.
pub fn decompose_bp(xi: &Ordinal, zeta: &Ordinal) -> Result<(SpaceExpr, RewriteTrace)> {
    if zeta.is_zero() {
        return Err(Error::domain("decomposition requires zeta > 0"));
    }
    if zeta > xi {
        return Err(Error::domain("decomposition requires zeta <= xi"));
    }
    if *xi < Ordinal::omega() {
        return Err(Error::domain("decomposition requires xi >= w"));
    }
    let product = xi.mul(zeta)?;
    let before = SpaceExpr::c0(product)?;
    let after = SpaceExpr::direct_sum(vec![
        SpaceExpr::c0(zeta.clone())?,
        SpaceExpr::c0_sum(zeta.clone(), SpaceExpr::c0(xi.clone())?)?,
    ])?;
    let trace = RewriteTrace {
        start: before.clone(),
        steps: vec![RewriteStep {
            rule: Rule::Decompose,
            position: Vec::new(),
            before,
            after: after.clone(),
        }],
        end: after.clone(),
    };
    Ok((after, trace))
}

/// Tries each rule at a single node; returns (rule, local result).
fn rule_at(node: &SpaceExpr) -> Option<(Rule, SpaceExpr)> {
    match node {
        SpaceExpr::C(a) if *a >= Ordinal::omega() => {
            Some((Rule::Relax, SpaceExpr::C0(a.clone())))
        }
        SpaceExpr::C0(a) => {
            let (g, n) = pb_shape(a)?;
            if n < 2 {
                return None;
            }
            let zeta = Ordinal::omega_pow(&Ordinal::omega_pow(&g));
            let xi_exp = Ordinal::omega_pow(&g).mul(&Ordinal::finite(n - 1)).ok()?;
            let xi = Ordinal::omega_pow(&xi_exp);
            let after = SpaceExpr::direct_sum(vec![
                SpaceExpr::C0(zeta.clone()),
                SpaceExpr::c0_sum(zeta, SpaceExpr::C0(xi)).ok()?,
            ])
            .ok()?;
            Some((Rule::Decompose, after))
        }
        SpaceExpr::DirectSum(parts) if parts.len() >= 2 => {
            for i in 0..parts.len() - 1 {
                if let Some(collapsed) = absorb_pair(&parts[i], &parts[i + 1]) {
                    let mut out = parts.clone();
                    out.splice(i..i + 2, [collapsed]);
                    return Some((Rule::Absorb, SpaceExpr::direct_sum(out).ok()?));
                }
            }
            None
        }
        _ => None,
    }
}

/// `C0(k), c0(k, C0(k))` with `k = w^(w^g)` collapses to the second part.
fn absorb_pair(left: &SpaceExpr, right: &SpaceExpr) -> Option<SpaceExpr> {
    let SpaceExpr::C0(k1) = left else { return None };
    let SpaceExpr::C0Sum(k2, inner) = right else { return None };
    let SpaceExpr::C0(k3) = inner.as_ref() else { return None };
    if k1 != k2 || k2 != k3 {
        return None;
    }
    tower_exponent(k1)?;
    if *k1 < Ordinal::omega() {
        return None;
    }
    Some(right.clone())
}

/// Leftmost-innermost redex: position and rule result.
fn find_redex(node: &SpaceExpr, path: &mut Vec<usize>) -> Option<(Vec<usize>, Rule, SpaceExpr)> {
    for (i, child) in node.children().into_iter().enumerate() {
        path.push(i);
        if let Some(found) = find_redex(child, path) {
            path.pop();
            return Some(found);
        }
        path.pop();
    }
    let (rule, after) = rule_at(node)?;
    Some((path.clone(), rule, after))
}

const STEP_CAP: usize = 100_000;

/// Rewrites to normal form, returning the result and the full trace.
pub fn normalize(expr: &SpaceExpr) -> Result<(SpaceExpr, RewriteTrace)> {
    let mut current = expr.clone();
    let mut steps = Vec::new();
    while let Some((pos, rule, after)) = find_redex(&current, &mut Vec::new()) {
        if steps.len() >= STEP_CAP {
            return Err(Error::domain("rewrite step cap exceeded"));
        }
        let before = current.subterm(&pos).expect("redex position").clone();
        current = current.replace(&pos, after.clone())?;
        steps.push(RewriteStep { rule, position: pos, before, after });
    }
    let trace = RewriteTrace {
        start: expr.clone(),
        steps,
        end: current.clone(),
    };
    Ok((current, trace))
}

/// Checks that a step's local before/after instantiate its rule schema,
/// hypotheses included.
fn step_schema_ok(step: &RewriteStep) -> bool {
    match step.rule {
        Rule::Relax => match (&step.before, &step.after) {
            (SpaceExpr::C(a), SpaceExpr::C0(b)) => a == b && *a >= Ordinal::omega(),
            _ => false,
        },
        Rule::Decompose => {
            // before = C0(x*z), after = C0(z) (+) c0(z, C0(x)),
            // 0 < z <= x, w <= x
            let SpaceExpr::C0(prod) = &step.before else { return false };
            let SpaceExpr::DirectSum(parts) = &step.after else { return false };
            if parts.len() != 2 {
                return false;
            }
            let SpaceExpr::C0(zeta) = &parts[0] else { return false };
            let SpaceExpr::C0Sum(z2, inner) = &parts[1] else { return false };
            let SpaceExpr::C0(xi) = inner.as_ref() else { return false };
            if zeta != z2 || zeta.is_zero() || zeta > xi || *xi < Ordinal::omega() {
                return false;
            }
            match xi.mul(zeta) {
                Ok(p) => p == *prod,
                Err(_) => false,
            }
        }
        Rule::Absorb => {
            let before_parts: Vec<&SpaceExpr> = match &step.before {
                SpaceExpr::DirectSum(parts) if parts.len() >= 2 => parts.iter().collect(),
                _ => return false,
            };
            // some adjacent absorbable pair collapses to give `after`
            for i in 0..before_parts.len() - 1 {
                if let Some(collapsed) = absorb_pair(before_parts[i], before_parts[i + 1]) {
                    let mut out: Vec<SpaceExpr> =
                        before_parts.iter().map(|p| (*p).clone()).collect();
                    out.splice(i..i + 2, [collapsed]);
                    if let Ok(result) = SpaceExpr::direct_sum(out) {
                        if result == step.after {
                            return true;
                        }
                    }
                }
            }
            false
        }
    }
}

/// Independent verifier: every step instantiates its rule schema and the
/// whole-tree results chain from `start` to `end`.
pub fn check_trace(trace: &RewriteTrace) -> bool {
    let mut current = trace.start.clone();
    for step in &trace.steps {
        if !step_schema_ok(step) {
            return false;
        }
        match current.subterm(&step.position) {
            Some(sub) if *sub == step.before => {}
            _ => return false,
        }
        current = match current.replace(&step.position, step.after.clone()) {
            Ok(next) => next,
            Err(_) => return false,
        };
    }
    current == trace.end
}

/// Recognized exact shapes for the upper bound:
/// C(a)/C0(a), or `c0(w^(w^g), C0(w^(w^g * n)))`, or a direct sum of such.
fn exact_upper(expr: &SpaceExpr) -> Option<Ordinal> {
    match expr {
        SpaceExpr::C(a) | SpaceExpr::C0(a) => Some(szlenk_index(a)),
        SpaceExpr::C0Sum(kappa, inner) => {
            let g = tower_exponent(kappa)?;
            let SpaceExpr::C0(a) = inner.as_ref() else { return None };
            let (g2, _n) = pb_shape(a)?;
            if g2 != g {
                return None;
            }
            // Sz(c0(w^(w^g), C0(w^(w^g * n)))) = w^(g+1)
            Some(Ordinal::omega_pow(&g.succ()))
        }
        SpaceExpr::DirectSum(parts) => {
            let mut best = Ordinal::one();
            for p in parts {
                let v = exact_upper(p)?;
                if v > best {
                    best = v;
                }
            }
            Some(best)
        }
    }
}

/// Szlenk-index bounds for a space expression.
///
/// Lower bound: the largest index among the C/C0 leaves (each embeds in
/// the whole space). Upper bound: the exact theorem value when the normal
/// form is recognized, else the index of the smallest enclosing
/// `C0(w^(w^(g*+1)))` obtained by majorizing every ordinal parameter.
pub fn szlenk_bounds(expr: &SpaceExpr) -> Result<IndexBounds> {
    let params = expr.all_params();
    let all_infinite = params.iter().all(|a| **a >= Ordinal::omega());
    let all_finite = params.iter().all(|a| a.is_finite());
    if !all_infinite && !all_finite {
        return Err(Error::domain(
            "szlenk bounds need all parameters >= w, or a purely finite-dimensional expression",
        ));
    }
    if all_finite {
        return Ok(IndexBounds {
            lower: Ordinal::one(),
            upper: Ordinal::one(),
            exact: true,
        });
    }
    let lower = expr
        .leaf_params()
        .iter()
        .map(|a| szlenk_index(a))
        .max()
        .expect("at least one leaf");
    let (normal, _) = normalize(expr)?;
    if let Some(upper) = exact_upper(&normal) {
        debug_assert!(lower <= upper);
        return Ok(IndexBounds { exact: lower == upper, lower, upper });
    }
    // majorize: the largest gamma over every ordinal parameter
    let gamma_star = params
        .iter()
        .map(|a| crate::indices::gamma_of(a))
        .collect::<Result<Vec<_>>>()?
        .into_iter()
        .max()
        .expect("at least one parameter");
    let upper = Ordinal::omega_pow(&gamma_star.succ().succ());
    Ok(IndexBounds { exact: lower == upper, lower, upper })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::text::{parse_ordinal, parse_space};

    fn ord(s: &str) -> Ordinal {
        parse_ordinal(s).unwrap()
    }

    fn sp(s: &str) -> SpaceExpr {
        parse_space(s).unwrap()
    }

    #[test]
    fn decompose_examples() {
        let (expr, trace) = decompose_bp(&ord("w"), &ord("w")).unwrap();
        assert_eq!(expr, sp("C0(w) (+) c0(w, C0(w))"));
        assert_eq!(trace.start, sp("C0(w^2)"));
        assert!(check_trace(&trace));

        let (expr, trace) = decompose_bp(&ord("w^w"), &ord("w")).unwrap();
        assert_eq!(expr, sp("C0(w) (+) c0(w, C0(w^w))"));
        assert_eq!(trace.start, sp("C0(w^(w + 1))"));
        assert!(check_trace(&trace));

        assert!(decompose_bp(&ord("w"), &ord("w^2")).is_err());
        assert!(decompose_bp(&ord("5"), &ord("2")).is_err());
        assert!(decompose_bp(&ord("w"), &ord("0")).is_err());
    }

    #[test]
    fn normalize_examples() {
        let (nf, trace) = normalize(&sp("C0(w^2)")).unwrap();
        assert_eq!(nf, sp("c0(w, C0(w))"));
        assert_eq!(trace.steps.len(), 2);
        assert_eq!(trace.steps[0].rule, Rule::Decompose);
        assert_eq!(trace.steps[1].rule, Rule::Absorb);
        assert!(check_trace(&trace));

        // full normalization at g = 1, n = 3
        let (nf, trace) = normalize(&sp("C0(w^(w*3))")).unwrap();
        assert_eq!(nf, sp("c0(w^w, C0(w^w))"));
        assert!(check_trace(&trace));

        // nested same-index c0 collapses structurally
        let (nf, trace) = normalize(&sp("c0(w, c0(w, C0(w)))")).unwrap();
        assert_eq!(nf, sp("c0(w, C0(w))"));
        assert!(trace.steps.is_empty());

        // irreducible expressions come back unchanged
        let (nf, trace) = normalize(&sp("C0(w)")).unwrap();
        assert_eq!(nf, sp("C0(w)"));
        assert!(trace.steps.is_empty());

        // C relaxes to C0 and then rewrites
        let (nf, _) = normalize(&sp("C(w^2)")).unwrap();
        assert_eq!(nf, sp("c0(w, C0(w))"));
        let (nf, _) = normalize(&sp("C(5)")).unwrap();
        assert_eq!(nf, sp("C(5)"));
    }

    #[test]
    fn tampered_traces_rejected() {
        let (_, mut trace) = normalize(&sp("C0(w^2)")).unwrap();
        assert!(check_trace(&trace));

        // break the chaining
        let mut broken = trace.clone();
        broken.steps[1].before = sp("C0(w^3)");
        assert!(!check_trace(&broken));

        // R1 with zeta > xi must be rejected by the schema check
        trace.steps[0] = RewriteStep {
            rule: Rule::Decompose,
            position: vec![],
            before: sp("C0(w^3)"),
            after: sp("C0(w^2) (+) c0(w^2, C0(w))"),
        };
        assert!(!check_trace(&trace));

        // wrong end
        let (_, mut trace) = normalize(&sp("C0(w^2)")).unwrap();
        trace.end = sp("C0(w)");
        assert!(!check_trace(&trace));
    }

    #[test]
    fn bounds_examples() {
        let b = szlenk_bounds(&sp("c0(w, C0(w))")).unwrap();
        assert!(b.exact);
        assert_eq!(b.upper, ord("w"));

        let b = szlenk_bounds(&sp("C0(w^w) (+) C0(w)")).unwrap();
        assert!(b.exact);
        assert_eq!(b.upper, ord("w^2"));

        let b = szlenk_bounds(&sp("c0(w^w, C0(w^(w*2)))")).unwrap();
        assert!(b.exact);
        assert_eq!(b.upper, ord("w^2"));

        // mismatched index set: only an interval is known
        let b = szlenk_bounds(&sp("c0(w^w, C0(w))")).unwrap();
        assert!(!b.exact);
        assert_eq!(b.lower, ord("w"));
        assert_eq!(b.upper, ord("w^3"));
        assert!(b.lower <= b.upper);

        // purely finite-dimensional
        let b = szlenk_bounds(&sp("C0(5) (+) C(3)")).unwrap();
        assert!(b.exact);
        assert_eq!(b.upper, ord("1"));

        // mixed finite/infinite parameters are rejected
        assert!(szlenk_bounds(&sp("c0(w, C0(5))")).is_err());
    }

    #[test]
    fn bounds_invariant_under_normalize() {
        for s in ["C0(w^2)", "C0(w^(w*3))", "C(w^(w^2*2))", "C0(w^3) (+) c0(w, C0(w))"] {
            let e = sp(s);
            let b1 = szlenk_bounds(&e).unwrap();
            let (nf, _) = normalize(&e).unwrap();
            let b2 = szlenk_bounds(&nf).unwrap();
            assert_eq!((b1.lower.clone(), b1.upper.clone()), (b2.lower, b2.upper), "{s}");
        }
    }
}
