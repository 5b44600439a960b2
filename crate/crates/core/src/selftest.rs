//! Property batteries over one algebra: Lie-algebra axioms of the table,
//! the module structure of `U(n̄) ⊗ ℂ_{s dχ}`, and the identities the
//! operators are expected to satisfy.
//!
//! Small algebras are checked exhaustively; where a suite would be
//! quadratic in `dim g` on a large algebra it falls back to seeded samples.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use num_traits::{One, Zero};

use crate::chevalley::LieElement;
use crate::context::Context;
use crate::error::Result;
use crate::omega::{omega2, omega3, omega3_tilde, omega3_tilde_with_basis};
use crate::parabolic::dchi;
use crate::poly::PolySC;
use crate::rootsys::{RootId, Series};
use crate::verma::{PbwMonomial, VermaElement};
use crate::Rational;

/// Pair counts above which the quadratic suites switch to sampling.
const EXHAUSTIVE_LIMIT: usize = 40;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SuiteResult {
    pub name: &'static str,
    pub checks: usize,
    pub failures: usize,
    /// First failing case, if any.
    pub first_failure: Option<String>,
}

impl SuiteResult {
    fn new(name: &'static str) -> Self {
        Self {
            name,
            checks: 0,
            failures: 0,
            first_failure: None,
        }
    }

    fn record(&mut self, ok: bool, case: impl FnOnce() -> String) {
        self.checks += 1;
        if !ok {
            self.failures += 1;
            if self.first_failure.is_none() {
                self.first_failure = Some(case());
            }
        }
    }

    fn merge(&mut self, other: SuiteResult) {
        self.checks += other.checks;
        self.failures += other.failures;
        if self.first_failure.is_none() {
            self.first_failure = other.first_failure;
        }
    }

    pub fn passed(&self) -> bool {
        self.failures == 0
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SelftestReport {
    pub seed: u64,
    pub suites: Vec<SuiteResult>,
}

impl SelftestReport {
    pub fn passed(&self) -> bool {
        self.suites.iter().all(SuiteResult::passed)
    }

    pub fn suite(&self, name: &str) -> Option<&SuiteResult> {
        self.suites.iter().find(|s| s.name == name)
    }
}

/// Runs every suite that applies to `ctx`'s algebra.
pub fn run(ctx: &Context, seed: u64) -> Result<SelftestReport> {
    let mut suites = vec![
        jacobi(ctx, seed),
        sl2_triples(ctx),
        form_invariance(ctx, seed),
        representation(ctx, seed)?,
        pbw_multiplicativity(ctx, seed)?,
        dual_basis_independence(ctx, seed)?,
        omega2_equivariance(ctx)?,
        omega3_equivariance(ctx)?,
        omega2_h_gamma(ctx)?,
        h_gamma_eigenvalue(ctx)?,
    ];
    if ctx.algebra().series() == Series::D && ctx.rank() == 4 {
        suites.push(double_bracket_identity(ctx)?);
    }
    Ok(SelftestReport { seed, suites })
}

fn basis_elements(ctx: &Context) -> Vec<LieElement> {
    let rank = ctx.rank();
    ctx.table()
        .basis()
        .into_iter()
        .map(|b| LieElement::basis(rank, b))
        .collect()
}

fn q(n: i64) -> Rational {
    Rational::from_integer(n.into())
}

pub fn jacobi(ctx: &Context, seed: u64) -> SuiteResult {
    let mut r = SuiteResult::new("jacobi");
    let tab = ctx.table();
    let outcome = if tab.dim() <= 80 {
        tab.check_jacobi()
    } else {
        tab.check_jacobi_sampled(200_000, seed)
    };
    match outcome {
        Ok(n) => r.checks = n,
        Err(e) => r.record(false, || e.to_string()),
    }
    r
}

/// `[X_α, X_{−α}] = H_α`, `[H_α, X_{±α}] = ±2 X_{±α}` for every `α > 0`.
pub fn sl2_triples(ctx: &Context) -> SuiteResult {
    let mut r = SuiteResult::new("sl2-triples");
    let rs = ctx.root_system();
    let tab = ctx.table();
    let rank = ctx.rank();
    for (k, a) in rs.positives().iter().enumerate() {
        let (p, n) = (RootId(k), rs.neg_id(RootId(k)));
        let (xp, xn) = (
            LieElement::root_vector(rank, p),
            LieElement::root_vector(rank, n),
        );
        let h = LieElement::coroot(a);
        r.record(tab.bracket(&xp, &xn) == h, || format!("[X_{a}, X_-{a}]"));
        r.record(tab.bracket(&h, &xp) == xp.scale(&q(2)), || {
            format!("[H, X_{a}]")
        });
        r.record(tab.bracket(&h, &xn) == xn.scale(&q(-2)), || {
            format!("[H, X_-{a}]")
        });
    }
    r
}

/// `B([x,y], z) + B(y, [x,z]) = 0` on basis triples.
pub fn form_invariance(ctx: &Context, seed: u64) -> SuiteResult {
    let tab = ctx.table();
    let basis = basis_elements(ctx);
    let check = |x: &LieElement, y: &LieElement, z: &LieElement| {
        let lhs = tab.killing_form(&tab.bracket(x, y), z) + tab.killing_form(y, &tab.bracket(x, z));
        lhs.is_zero()
    };
    let mut r = SuiteResult::new("form-invariance");
    if basis.len() <= EXHAUSTIVE_LIMIT {
        let parts: Vec<SuiteResult> = basis
            .par_iter()
            .enumerate()
            .map(|(i, x)| {
                let mut part = SuiteResult::new("form-invariance");
                for (j, y) in basis.iter().enumerate() {
                    for (k, z) in basis.iter().enumerate() {
                        part.record(check(x, y, z), || format!("basis triple ({i}, {j}, {k})"));
                    }
                }
                part
            })
            .collect();
        parts.into_iter().for_each(|p| r.merge(p));
    } else {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        for _ in 0..20_000 {
            let (i, j, k) = (
                rng.gen_range(0..basis.len()),
                rng.gen_range(0..basis.len()),
                rng.gen_range(0..basis.len()),
            );
            r.record(check(&basis[i], &basis[j], &basis[k]), || {
                format!("basis triple ({i}, {j}, {k})")
            });
        }
    }
    r
}

/// All PBW monomials of total degree at most `d`.
fn monomials_up_to(k: usize, d: usize) -> Vec<PbwMonomial> {
    let mut out = vec![];
    let mut cur = vec![0u16; k];
    fn rec(pos: usize, left: usize, cur: &mut Vec<u16>, out: &mut Vec<PbwMonomial>) {
        if pos == cur.len() {
            out.push(PbwMonomial::from_exponents(cur.clone()));
            return;
        }
        for e in 0..=left {
            cur[pos] = e as u16;
            rec(pos + 1, left - e, cur, out);
        }
        cur[pos] = 0;
    }
    rec(0, d, &mut cur, &mut out);
    out
}

/// A random element with up to three terms of degree ≤ 3 and coefficients
/// affine in `s`.
fn random_element(ctx: &Context, rng: &mut ChaCha8Rng) -> VermaElement {
    let k = ctx.num_generators();
    let mut v = VermaElement::zero();
    for _ in 0..rng.gen_range(1..=3) {
        let mut e = vec![0u16; k];
        for _ in 0..rng.gen_range(0..=3) {
            e[rng.gen_range(0..k)] += 1;
        }
        let c0 = PolySC::constant(Rational::new(
            rng.gen_range(-5..=5).into(),
            rng.gen_range(1..=3).into(),
        ));
        let c = &c0 + &PolySC::monomial(q(rng.gen_range(-2..=2)), 1, 0);
        v.add_term(PbwMonomial::from_exponents(e), &c);
    }
    v
}

/// `x·(y·v) − y·(x·v) = [x,y]·v`.
pub fn representation(ctx: &Context, seed: u64) -> Result<SuiteResult> {
    let basis = basis_elements(ctx);
    let tab = ctx.table();
    let vectors: Vec<VermaElement> = if ctx.num_generators() <= 3 {
        monomials_up_to(ctx.num_generators(), 3)
            .into_iter()
            .map(|m| VermaElement::monomial(m, PolySC::one()))
            .collect()
    } else {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        (0..200).map(|_| random_element(ctx, &mut rng)).collect()
    };
    let exhaustive = basis.len() <= EXHAUSTIVE_LIMIT;
    let parts: Vec<SuiteResult> = vectors
        .par_iter()
        .enumerate()
        .map(|(n, v)| {
            let mut part = SuiteResult::new("representation");
            let once: Vec<VermaElement> = basis.iter().map(|b| ctx.act(b, v)).collect();
            let pairs: Vec<(usize, usize)> = if exhaustive {
                (0..basis.len())
                    .flat_map(|i| (i + 1..basis.len()).map(move |j| (i, j)))
                    .collect()
            } else {
                let mut rng =
                    ChaCha8Rng::seed_from_u64(seed ^ (n as u64).wrapping_mul(0x9e37_79b9));
                (0..EXHAUSTIVE_LIMIT)
                    .map(|_| (rng.gen_range(0..basis.len()), rng.gen_range(0..basis.len())))
                    .collect()
            };
            for (i, j) in pairs {
                let lhs = ctx
                    .act(&basis[i], &once[j])
                    .sub(&ctx.act(&basis[j], &once[i]));
                let rhs = ctx.act(&tab.bracket(&basis[i], &basis[j]), v);
                part.record(lhs == rhs, || {
                    format!("basis pair ({i}, {j}) on vector {n}")
                });
            }
            part
        })
        .collect();
    let mut r = SuiteResult::new("representation");
    parts.into_iter().for_each(|p| r.merge(p));
    Ok(r)
}

/// `normal_order(u ++ w) = normal_order(u) · normal_order(w)`.
pub fn pbw_multiplicativity(ctx: &Context, seed: u64) -> Result<SuiteResult> {
    let mut r = SuiteResult::new("pbw-multiplicativity");
    let gens = ctx.generators();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for n in 0..50 {
        let mut word = |len: usize| -> Vec<RootId> {
            (0..len)
                .map(|_| gens[rng.gen_range(0..gens.len())])
                .collect()
        };
        let (u, w) = (word(3), word(3));
        let joined: Vec<RootId> = u.iter().chain(&w).copied().collect();
        let lhs = ctx.normal_order(&joined)?;
        let rhs = ctx.mul(&ctx.normal_order(&u)?, &ctx.normal_order(&w)?);
        r.record(lhs == rhs, || format!("sample {n}"));
    }
    Ok(r)
}

/// `ω̃₃` does not depend on the basis of `V⁺` used to define it.
pub fn dual_basis_independence(ctx: &Context, seed: u64) -> Result<SuiteResult> {
    let mut r = SuiteResult::new("dual-basis-independence");
    let m = ctx.grading().vplus().len();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let targets: Vec<LieElement> = ctx
        .grading()
        .vminus()
        .iter()
        .map(|&b| LieElement::root_vector(ctx.rank(), b))
        .collect();
    let reference: Vec<VermaElement> = targets
        .iter()
        .map(|y| omega3_tilde(ctx, y))
        .collect::<Result<_>>()?;
    for trial in 0..5 {
        let basis = loop {
            let cand: Vec<Vec<Rational>> = (0..m)
                .map(|_| {
                    (0..m)
                        .map(|_| {
                            Rational::new(rng.gen_range(-3..=3).into(), rng.gen_range(1..=2).into())
                        })
                        .collect()
                })
                .collect();
            if crate::linalg::rank(&cand) == m {
                break cand;
            }
        };
        for (k, y) in targets.iter().enumerate() {
            let got = omega3_tilde_with_basis(ctx, y, &basis)?;
            r.record(got == reference[k], || {
                format!("basis change {trial}, Y #{k}")
            });
        }
    }
    Ok(r)
}

/// `ω₂([Z,W]) = Z·ω₂(W) + 2dχ(Z)·ω₂(W)` on `M_q(ℂ_{−dχ})`.
pub fn omega2_equivariance(ctx: &Context) -> Result<SuiteResult> {
    let mut r = SuiteResult::new("omega2-equivariance");
    let rank = ctx.rank();
    let levi: Vec<LieElement> = ctx
        .grading()
        .levi_basis()
        .into_iter()
        .map(|b| LieElement::basis(rank, b))
        .collect();
    let w2: Vec<VermaElement> = levi.iter().map(|w| omega2(ctx, w)).collect::<Result<_>>()?;
    let s0 = q(-1);
    for (i, z) in levi.iter().enumerate() {
        let dz = dchi(ctx.table(), ctx.grading(), z)?;
        for (j, w) in levi.iter().enumerate() {
            let lhs = omega2(ctx, &ctx.table().bracket(z, w))?;
            let mut rhs = ctx.act(z, &w2[j]);
            rhs.add_assign_rational(&w2[j], &(q(2) * &dz));
            r.record(lhs.specialize_s(&s0) == rhs.specialize_s(&s0), || {
                format!("levi pair ({i}, {j})")
            });
        }
    }
    Ok(r)
}

/// `ω₃ᵗ([Z,Y]) = Z·ω₃ᵗ(Y) + (1−s)dχ(Z)·ω₃ᵗ(Y)` with `s`, `t` formal.
pub fn omega3_equivariance(ctx: &Context) -> Result<SuiteResult> {
    let rank = ctx.rank();
    let levi: Vec<LieElement> = ctx
        .grading()
        .levi_basis()
        .into_iter()
        .map(|b| LieElement::basis(rank, b))
        .collect();
    let ys: Vec<LieElement> = ctx
        .grading()
        .vminus()
        .iter()
        .map(|&b| LieElement::root_vector(rank, b))
        .collect();
    let w3: Vec<VermaElement> = ys
        .par_iter()
        .map(|y| omega3(ctx, y))
        .collect::<Result<_>>()?;
    let one_minus_s = &PolySC::one() - &PolySC::s();
    let parts: Vec<Result<SuiteResult>> = levi
        .par_iter()
        .enumerate()
        .map(|(i, z)| {
            let mut part = SuiteResult::new("omega3-equivariance");
            let shift = one_minus_s.scale(&dchi(ctx.table(), ctx.grading(), z)?);
            for (j, y) in ys.iter().enumerate() {
                let lhs = omega3(ctx, &ctx.table().bracket(z, y))?;
                let mut rhs = ctx.act(z, &w3[j]);
                rhs.add_assign_scaled(&w3[j], &shift);
                part.record(lhs == rhs, || format!("Z #{i}, Y #{j}"));
            }
            Ok(part)
        })
        .collect();
    let mut r = SuiteResult::new("omega3-equivariance");
    for p in parts {
        r.merge(p?);
    }
    Ok(r)
}

pub fn omega2_h_gamma(ctx: &Context) -> Result<SuiteResult> {
    let mut r = SuiteResult::new("omega2-h-gamma");
    let hg = LieElement::coroot(ctx.root_system().highest_root());
    r.record(omega2(ctx, &hg)?.is_zero(), || "ω₂(H_γ) ≠ 0".into());
    Ok(r)
}

/// `H_γ · ω₃ᵗ(Y) = (2s − 3) ω₃ᵗ(Y)`.
pub fn h_gamma_eigenvalue(ctx: &Context) -> Result<SuiteResult> {
    let mut r = SuiteResult::new("h-gamma-eigenvalue");
    let hg = LieElement::coroot(ctx.root_system().highest_root());
    let eigen = &PolySC::s().scale(&q(2)) - &PolySC::from_int(3);
    for &b in ctx.grading().vminus() {
        let w = omega3(ctx, &LieElement::root_vector(ctx.rank(), b))?;
        r.record(ctx.act(&hg, &w) == w.scale(&eigen), || {
            ctx.root_system().root(b).to_string()
        });
    }
    Ok(r)
}

/// `Σ_ε ω₂([[X, X_{−ε}], [X_ε, Y]]) = 2 ω₂([X, Y])` for `X = X_α`,
/// `Y = X_β`, `α ∈ Δ(V⁺)`, `β ∈ Δ(V⁻)`.
pub fn double_bracket_identity(ctx: &Context) -> Result<SuiteResult> {
    let rank = ctx.rank();
    let rs = ctx.root_system();
    let tab = ctx.table();
    let vplus = ctx.grading().vplus();
    let vminus = ctx.grading().vminus();
    let parts: Vec<Result<SuiteResult>> = vplus
        .par_iter()
        .map(|&a| {
            let mut part = SuiteResult::new("double-bracket-identity");
            let x = LieElement::root_vector(rank, a);
            for &b in vminus {
                let y = LieElement::root_vector(rank, b);
                let mut lhs = VermaElement::zero();
                for &eps in vplus {
                    let inner1 = tab.bracket(&x, &LieElement::root_vector(rank, rs.neg_id(eps)));
                    let inner2 = tab.bracket(&LieElement::root_vector(rank, eps), &y);
                    let z = tab.bracket(&inner1, &inner2);
                    if !z.is_zero() {
                        lhs.add_assign_rational(&omega2(ctx, &z)?, &Rational::one());
                    }
                }
                let rhs = omega2(ctx, &tab.bracket(&x, &y))?.scale_rational(&q(2));
                part.record(lhs == rhs, || format!("({}, {})", rs.root(a), rs.root(b)));
            }
            Ok(part)
        })
        .collect();
    let mut r = SuiteResult::new("double-bracket-identity");
    for p in parts {
        r.merge(p?);
    }
    Ok(r)
}
