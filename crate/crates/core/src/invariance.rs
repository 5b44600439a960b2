//! Deciding when `span{ω₃ᵗ(X_β) : β ∈ E}` is killed by `n`, i.e. when the
//! corresponding operator system is conformally invariant.
//!
//! `s` is pinned first by matching infinitesimal characters,
//! `‖ϖ + (s−1)γ + ρ‖² = ‖sγ + ρ‖²`, after which every annihilation
//! coefficient is a univariate polynomial in `t`.

use std::fmt;
use std::str::FromStr;

use num_traits::{One, Zero};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::chevalley::{BasisElement, LieElement};
use crate::context::Context;
use crate::error::{Error, Result};
use crate::linalg::{self, Matrix};
use crate::omega::{omega2, omega3_root};
use crate::parabolic::{component_ideal_basis, dchi, Submodule};
use crate::poly::{resultant_t, PolySC, UniPoly};
use crate::rootsys::{AlgebraType, RootId, RootSystem, Weight};
use crate::verma::VermaElement;
use crate::Rational;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Status {
    Exists,
    NotExists,
    ZeroOperator,
}

impl fmt::Display for Status {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Status::Exists => "Exists",
            Status::NotExists => "NotExists",
            Status::ZeroOperator => "ZeroOperator",
        })
    }
}

impl FromStr for Status {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "Exists" => Ok(Status::Exists),
            "NotExists" => Ok(Status::NotExists),
            "ZeroOperator" => Ok(Status::ZeroOperator),
            other => Err(Error::Inconsistent(format!("unknown status {other:?}"))),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SpecialValueReport {
    pub algebra: AlgebraType,
    pub submodule: Submodule,
    pub s0: Rational,
    pub solutions: Vec<(Rational, Rational)>,
    pub equation_count: usize,
    pub status: Status,
    /// The gcd in `t` had a factor without rational roots.
    pub non_rational_root: bool,
}

/// Coefficients `[c₀, c₁, c₂]` of `‖ϖ + (s−1)γ + ρ‖² − ‖sγ + ρ‖²` as a
/// polynomial in `s`.
pub fn character_quadratic(rs: &RootSystem, varpi: &Weight) -> Result<[Rational; 3]> {
    let gamma = rs.highest_root().to_weight();
    let rho = rs.rho();
    // ϖ − γ + ρ
    let shifted = varpi.add(&gamma.scale(&-Rational::one())).add(rho);
    // s² comes in as ‖γ‖² on both sides; kept explicit so the cancellation is
    // computed rather than assumed.
    let lhs_s2 = rs.norm2(&gamma)?;
    let rhs_s2 = rs.norm2(&gamma)?;
    let c2 = lhs_s2 - rhs_s2;
    let c1 =
        Rational::from_integer(2.into()) * (rs.inner(&shifted, &gamma)? - rs.inner(rho, &gamma)?);
    let c0 = rs.norm2(&shifted)? - rs.norm2(rho)?;
    Ok([c0, c1, c2])
}

/// The unique `s₀` with `‖ϖ + (s₀−1)γ + ρ‖² = ‖s₀γ + ρ‖²`.
pub fn infinitesimal_s(rs: &RootSystem, varpi: &Weight) -> Result<Rational> {
    let [c0, c1, c2] = character_quadratic(rs, varpi)?;
    if !c2.is_zero() {
        return Err(Error::Inconsistent("s² terms fail to cancel".into()));
    }
    if c1.is_zero() {
        return Err(Error::DegenerateCharacterEquation);
    }
    Ok(-c0 / c1)
}

fn nilradical_roots(ctx: &Context) -> Vec<RootId> {
    let mut out = ctx.grading().vplus().to_vec();
    out.push(ctx.grading().gamma());
    out
}

fn operators(ctx: &Context, e: &Submodule) -> Result<Vec<VermaElement>> {
    e.roots.par_iter().map(|&b| omega3_root(ctx, b)).collect()
}

/// `act(X_α, w)` for every `α ∈ Δ(V⁺) ∪ {γ}` and every `w` in `ops`, in
/// `(w, α)` order.
fn n_images(ctx: &Context, ops: &[VermaElement]) -> Vec<Vec<VermaElement>> {
    let rank = ctx.rank();
    let alphas = nilradical_roots(ctx);
    ops.par_iter()
        .map(|w| {
            alphas
                .iter()
                .map(|&a| ctx.act(&LieElement::root_vector(rank, a), w))
                .collect()
        })
        .collect()
}

/// Every PBW coefficient of `act(X_α, ω₃ᵗ(X_β))`, `β ∈ E`,
/// `α ∈ Δ(V⁺) ∪ {γ}`. Empty when `ω₃ᵗ` vanishes identically on `E`.
pub fn annihilation_system(ctx: &Context, e: &Submodule) -> Result<Vec<PolySC>> {
    let ops = operators(ctx, e)?;
    if ops.iter().all(VermaElement::is_zero) {
        return Ok(vec![]);
    }
    Ok(n_images(ctx, &ops)
        .into_iter()
        .flatten()
        .flat_map(|v| v.terms().values().cloned().collect::<Vec<_>>())
        .collect())
}

/// Outcome of checking the annihilation equations at a numeric point.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Verification {
    /// Number of `(α, β)` pairs checked.
    pub checks: usize,
    /// Pairs `(α, β)` where `act(X_α, ω₃(X_β))` is nonzero.
    pub failures: Vec<(RootId, RootId)>,
    /// Whether some `ω₃(X_β)`, `β ∈ E`, survives specialization.
    pub operator_nonzero: bool,
}

impl Verification {
    pub fn passed(&self) -> bool {
        self.failures.is_empty() && self.operator_nonzero
    }
}

/// Specializes to `(s, t)` and checks `act(X_α, ω₃(X_β)) = 0` for all
/// `α ∈ Δ(V⁺) ∪ {γ}`, `β ∈ E`.
pub fn verify_at(ctx: &Context, e: &Submodule, s: &Rational, t: &Rational) -> Result<Verification> {
    let ops = operators(ctx, e)?;
    let operator_nonzero = ops.iter().any(|w| !w.specialize(s, t).is_zero());
    let alphas = nilradical_roots(ctx);
    let images = n_images(ctx, &ops);
    let mut failures = Vec::new();
    for (&b, row) in e.roots.iter().zip(&images) {
        for (&a, v) in alphas.iter().zip(row) {
            if !v.specialize(s, t).is_zero() {
                failures.push((a, b));
            }
        }
    }
    Ok(Verification {
        checks: alphas.len() * e.roots.len(),
        failures,
        operator_nonzero,
    })
}

fn all_vanish(eqs: &[PolySC], s: &Rational, t: &Rational) -> bool {
    eqs.iter().all(|p| p.eval(s, t).is_zero())
}

fn gcd_all(polys: impl Iterator<Item = UniPoly>) -> UniPoly {
    let mut g = UniPoly::zero();
    for p in polys {
        g = g.gcd(&p);
        if g.degree() == Some(0) {
            break;
        }
    }
    g
}

/// Pins `s` by the character equation, then solves the annihilation system
/// for `t` exactly.
pub fn solve_special_values(ctx: &Context, e: &Submodule) -> Result<SpecialValueReport> {
    let rs = ctx.root_system();
    let s0 = infinitesimal_s(rs, &e.highest_weight(rs).to_weight())?;
    let mut report = SpecialValueReport {
        algebra: ctx.algebra(),
        submodule: e.clone(),
        s0: s0.clone(),
        solutions: vec![],
        equation_count: 0,
        status: Status::NotExists,
        non_rational_root: false,
    };
    let eqs = annihilation_system(ctx, e)?;
    if eqs.is_empty() {
        report.status = Status::ZeroOperator;
        return Ok(report);
    }
    report.equation_count = eqs.len();
    let g = gcd_all(eqs.iter().map(|p| p.at_s(&s0)));
    if g.is_zero() {
        return Err(Error::Inconsistent(format!(
            "annihilation equations vanish for every t at s = {}",
            crate::fmt_rational(&s0)
        )));
    }
    let roots = g.rational_roots();
    report.non_rational_root = roots.irrational_degree > 0;
    let ops = operators(ctx, e)?;
    let mut killed_operator = false;
    for (t0, _) in roots.roots {
        if !all_vanish(&eqs, &s0, &t0) {
            return Err(Error::Inconsistent("gcd root fails verification".into()));
        }
        if ops.iter().all(|w| w.specialize(&s0, &t0).is_zero()) {
            killed_operator = true;
            continue;
        }
        report.solutions.push((s0.clone(), t0));
    }
    report.status = match (report.solutions.is_empty(), killed_operator) {
        (false, _) => Status::Exists,
        (true, true) => Status::ZeroOperator,
        (true, false) => Status::NotExists,
    };
    Ok(report)
}

/// Result of solving the annihilation system with both `s` and `t` free.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FullSolution {
    /// Rational roots of the elimination ideal's generator in `s`.
    pub s_candidates: Vec<Rational>,
    pub solutions: Vec<(Rational, Rational)>,
    /// Some elimination polynomial had a factor without rational roots.
    pub non_rational_root: bool,
}

/// Audit path that does not assume the character equation: eliminates `t`
/// with pairwise resultants, solves for `s`, then for `t`.
pub fn solve_full(ctx: &Context, e: &Submodule) -> Result<FullSolution> {
    let eqs = annihilation_system(ctx, e)?;
    let mut uniq: Vec<PolySC> = eqs.iter().map(PolySC::normalized).collect();
    uniq.sort_by_key(|p| p.to_string());
    uniq.dedup();
    let (t_free, with_t): (Vec<_>, Vec<_>) =
        uniq.into_iter().partition(|p| p.degree_t() == Some(0));
    let mut elim: Vec<UniPoly> = t_free.iter().map(|p| p.at_t(&Rational::zero())).collect();
    for i in 0..with_t.len() {
        for j in i + 1..with_t.len() {
            elim.push(resultant_t(&with_t[i], &with_t[j]));
        }
    }
    let g = gcd_all(elim.into_iter());
    if g.is_zero() {
        return Err(Error::Inconsistent(
            "elimination leaves s unconstrained".into(),
        ));
    }
    let roots = g.rational_roots();
    let mut out = FullSolution {
        s_candidates: roots.roots.iter().map(|(r, _)| r.clone()).collect(),
        solutions: vec![],
        non_rational_root: roots.irrational_degree > 0,
    };
    let ops = operators(ctx, e)?;
    for s0 in out.s_candidates.clone() {
        let gt = gcd_all(eqs.iter().map(|p| p.at_s(&s0)));
        if gt.is_zero() {
            return Err(Error::Inconsistent(format!(
                "t unconstrained at s = {}",
                crate::fmt_rational(&s0)
            )));
        }
        let rt = gt.rational_roots();
        out.non_rational_root |= rt.irrational_degree > 0;
        for (t0, _) in rt.roots {
            if all_vanish(&eqs, &s0, &t0) && ops.iter().any(|w| !w.specialize(&s0, &t0).is_zero()) {
                out.solutions.push((s0.clone(), t0));
            }
        }
    }
    Ok(out)
}

/// Matrix of `ad(Z)` on `E` in the basis `{X_β}`: column `i` holds
/// `[Z, X_{β_i}]`.
pub fn ad_matrix(ctx: &Context, e: &Submodule, z: &LieElement) -> Result<Matrix> {
    if !ctx.grading().in_levi(z) {
        return Err(Error::NotInLevi);
    }
    let k = e.roots.len();
    let mut m = vec![vec![Rational::zero(); k]; k];
    for (i, &b) in e.roots.iter().enumerate() {
        let img = ctx
            .table()
            .bracket(z, &LieElement::root_vector(ctx.rank(), b));
        for (r, c) in img.root_part() {
            let row = e.roots.iter().position(|x| x == r).ok_or_else(|| {
                Error::Inconsistent(format!(
                    "E is not l-stable at {}",
                    ctx.root_system().root(*r)
                ))
            })?;
            m[row][i] = c.clone();
        }
    }
    Ok(m)
}

/// The matrix `a(Z)` with `Z·f_i = Σ_r a_{ri}(Z) f_r`, where
/// `f_i = ω₃^{t₀}(X_{β_i})` at `s = s₀`.
pub fn l_action_matrix(
    ctx: &Context,
    e: &Submodule,
    z: &LieElement,
    s0: &Rational,
    t0: &Rational,
) -> Result<Matrix> {
    if !ctx.grading().in_levi(z) {
        return Err(Error::NotInLevi);
    }
    let ops = operators(ctx, e)?;
    let f: Vec<VermaElement> = ops.iter().map(|w| w.specialize(s0, t0)).collect();
    let images: Vec<VermaElement> = ops
        .iter()
        .map(|w| ctx.act(z, w).specialize(s0, t0))
        .collect();
    // Coordinates over the union of monomials that occur.
    let mut monos: Vec<_> = f
        .iter()
        .chain(&images)
        .flat_map(|v| v.terms().keys().cloned())
        .collect();
    monos.sort();
    monos.dedup();
    let coords = |v: &VermaElement| -> Vec<Rational> {
        monos
            .iter()
            .map(|m| v.coeff(m).eval(&Rational::zero(), &Rational::zero()))
            .collect()
    };
    let columns: Vec<Vec<Rational>> = f.iter().map(coords).collect();
    let k = e.roots.len();
    let mut a = vec![vec![Rational::zero(); k]; k];
    for (i, img) in images.iter().enumerate() {
        let x = linalg::solve_in_span(&columns, &coords(img)).ok_or_else(|| {
            Error::NotInvariant(format!(
                "Z·ω₃(X_{}) leaves the span",
                ctx.root_system().root(e.roots[i])
            ))
        })?;
        for (r, v) in x.into_iter().enumerate() {
            a[r][i] = v;
        }
    }
    Ok(a)
}

/// Outcome of the `n`-annihilation check for `span{ω₂(Z) : Z ∈ l(C)}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Omega2Report {
    pub algebra: AlgebraType,
    /// Simple-root indices (0-based) of the deleted-diagram component.
    pub component: Vec<usize>,
    pub equation_count: usize,
    pub solutions: Vec<Rational>,
    pub status: Status,
    pub non_rational_root: bool,
}

/// Solves for the `s` at which `n` kills every `ω₂(Z)`, `Z ∈ l(C)`.
pub fn omega2_invariance(ctx: &Context, component: &[usize]) -> Result<Omega2Report> {
    let rs = ctx.root_system();
    let rank = ctx.rank();
    if let Some(&i) = component.iter().find(|&&i| i >= rank) {
        return Err(Error::DimensionMismatch {
            expected: rank,
            got: i + 1,
        });
    }
    let basis: Vec<BasisElement> = component_ideal_basis(rs, component);
    let ops: Vec<VermaElement> = basis
        .par_iter()
        .map(|&b| omega2(ctx, &LieElement::basis(rank, b)))
        .collect::<Result<_>>()?;
    let mut report = Omega2Report {
        algebra: ctx.algebra(),
        component: component.to_vec(),
        equation_count: 0,
        solutions: vec![],
        status: Status::NotExists,
        non_rational_root: false,
    };
    if ops.iter().all(VermaElement::is_zero) {
        report.status = Status::ZeroOperator;
        return Ok(report);
    }
    let eqs: Vec<PolySC> = n_images(ctx, &ops)
        .into_iter()
        .flatten()
        .flat_map(|v| v.terms().values().cloned().collect::<Vec<_>>())
        .collect();
    report.equation_count = eqs.len();
    if eqs.iter().any(|p| p.degree_t().unwrap_or(0) > 0) {
        return Err(Error::Inconsistent("t appears in the ω₂ system".into()));
    }
    let g = gcd_all(eqs.iter().map(|p| p.at_t(&Rational::zero())));
    if g.is_zero() {
        return Err(Error::Inconsistent(
            "ω₂ system is killed by n for every s".into(),
        ));
    }
    let roots = g.rational_roots();
    report.non_rational_root = roots.irrational_degree > 0;
    let zero = Rational::zero();
    for (s0, _) in roots.roots {
        if !all_vanish(&eqs, &s0, &zero) {
            return Err(Error::Inconsistent("gcd root fails verification".into()));
        }
        report.solutions.push(s0);
    }
    if !report.solutions.is_empty() {
        report.status = Status::Exists;
    }
    Ok(report)
}

/// Eigenvalue comparison behind the reducibility statement: `H_γ` acts on
/// the invariant system by `2s₀ − 3` but on `1 ⊗ 1` by `2s₀`, so a nonzero
/// invariant system yields a nontrivial proper submodule of
/// `M_q(ℂ_{s₀dχ})`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Reducibility {
    pub s: Rational,
    pub t: Rational,
    pub eigen_on_system: Rational,
    pub eigen_on_vacuum: Rational,
    pub reducible: bool,
}

pub fn reducibility(
    ctx: &Context,
    e: &Submodule,
    s0: &Rational,
    t0: &Rational,
) -> Result<Reducibility> {
    let check = verify_at(ctx, e, s0, t0)?;
    let hg = LieElement::coroot(ctx.root_system().highest_root());
    let a = l_action_matrix(ctx, e, &hg, s0, t0)?;
    let lambda = a[0][0].clone();
    let scalar = a.iter().enumerate().all(|(i, row)| {
        row.iter()
            .enumerate()
            .all(|(j, v)| if i == j { *v == lambda } else { v.is_zero() })
    });
    if !scalar {
        return Err(Error::Inconsistent(
            "H_γ is not scalar on the system".into(),
        ));
    }
    let one = VermaElement::vacuum(ctx.num_generators());
    let vac = ctx.act(&hg, &one).specialize(s0, t0);
    let mu = vac.coeff(one.terms().keys().next().unwrap()).eval(s0, t0);
    Ok(Reducibility {
        s: s0.clone(),
        t: t0.clone(),
        reducible: check.passed() && lambda != mu,
        eigen_on_system: lambda,
        eigen_on_vacuum: mu,
    })
}

/// `(1 − s₀)·dχ(Z)`: on an invariant system `Z` acts by `ad(Z)` minus this
/// scalar.
pub fn equivariance_shift(ctx: &Context, z: &LieElement, s0: &Rational) -> Result<Rational> {
    Ok((Rational::one() - s0) * dchi(ctx.table(), ctx.grading(), z)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rootsys::Root;

    fn ctx(name: &str) -> Context {
        Context::new(name.parse().unwrap()).unwrap()
    }

    fn q(n: i64, d: i64) -> Rational {
        Rational::new(n.into(), d.into())
    }

    fn w(coords: &[i64]) -> Weight {
        Root::new(coords.to_vec()).to_weight()
    }

    /// Evaluates both sides of the character equation at a point by direct
    /// norm computation.
    fn char_residual(rs: &RootSystem, varpi: &Weight, s: &Rational) -> Rational {
        let gamma = rs.highest_root().to_weight();
        let rho = rs.rho();
        let lhs = varpi.add(&gamma.scale(&(s - Rational::one()))).add(rho);
        let rhs = gamma.scale(s).add(rho);
        rs.norm2(&lhs).unwrap() - rs.norm2(&rhs).unwrap()
    }

    #[test]
    fn character_equation_values() {
        let a2 = ctx("A2");
        let rs = a2.root_system();
        assert_eq!(infinitesimal_s(rs, &w(&[-1, 0])).unwrap(), q(0, 1));
        assert_eq!(infinitesimal_s(rs, &w(&[0, -1])).unwrap(), q(0, 1));
        let d4 = ctx("D4");
        let rs4 = d4.root_system();
        assert_eq!(infinitesimal_s(rs4, &w(&[0, -1, 0, 0])).unwrap(), q(-1, 1));
        // ϖ = 0: the residual is linear, so its root comes from two samples.
        let z = Weight::zero(2);
        let r0 = char_residual(rs, &z, &q(0, 1));
        let r1 = char_residual(rs, &z, &q(1, 1));
        assert_eq!(infinitesimal_s(rs, &z).unwrap(), -&r0 / (r1 - &r0));
        // (ϖ, γ) = ‖γ‖² makes the equation degenerate.
        assert!(matches!(
            infinitesimal_s(rs, &w(&[1, 1])),
            Err(Error::DegenerateCharacterEquation)
        ));
    }

    #[test]
    fn character_quadratic_matches_pointwise_norms() {
        let c = ctx("D5");
        let rs = c.root_system();
        for varpi in [
            vec![0, 0, -1, 0, 0],
            vec![-1, 0, 0, 0, 0],
            vec![3, -2, 1, 0, 5],
        ] {
            let varpi = w(&varpi);
            let quad = character_quadratic(rs, &varpi).unwrap();
            for s in [q(0, 1), q(1, 1), q(-5, 3)] {
                let want = char_residual(rs, &varpi, &s);
                let got = &quad[0] + &quad[1] * &s + &quad[2] * &s * &s;
                assert_eq!(got, want);
            }
        }
    }

    #[test]
    fn a2_special_values() {
        let c = ctx("A2");
        for e in c.components() {
            let rep = solve_special_values(&c, e).unwrap();
            assert_eq!(rep.status, Status::Exists);
            assert_eq!(rep.solutions, vec![(q(0, 1), q(3, 4))]);
            assert!(!rep.non_rational_root);
            let full = solve_full(&c, e).unwrap();
            assert!(full.solutions.contains(&(q(0, 1), q(3, 4))));
        }
    }

    #[test]
    fn a2_action_matrix() {
        let c = ctx("A2");
        let e = &c.components()[0];
        let hg = LieElement::coroot(c.root_system().highest_root());
        let a = l_action_matrix(&c, e, &hg, &q(0, 1), &q(3, 4)).unwrap();
        assert_eq!(a, vec![vec![q(-3, 1)]]);
        // Away from the special value the span is not stable under n, but is
        // still stable under l.
        let v = verify_at(&c, e, &q(0, 1), &q(1, 1)).unwrap();
        assert!(!v.passed());
    }

    #[test]
    fn a3_has_no_solution() {
        let c = ctx("A3");
        for e in c.components() {
            let rep = solve_special_values(&c, e).unwrap();
            assert_eq!(rep.status, Status::NotExists);
            assert!(rep.solutions.is_empty());
        }
    }

    #[test]
    fn omega2_system_trivial_cases() {
        let a2 = ctx("A2");
        assert!(crate::parabolic::deleted_components(a2.root_system())
            .components
            .is_empty());
        let d4 = ctx("D4");
        let rep = omega2_invariance(&d4, &[0]).unwrap();
        assert_eq!(rep.solutions, vec![q(-1, 1)]);
        assert!(omega2_invariance(&d4, &[7]).is_err());
    }

    #[test]
    fn status_text() {
        for s in [Status::Exists, Status::NotExists, Status::ZeroOperator] {
            assert_eq!(s.to_string().parse::<Status>().unwrap(), s);
        }
        assert!("maybe".parse::<Status>().is_err());
    }
}
