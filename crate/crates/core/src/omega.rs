//! The Verma-module images of the operators: `ω₂(Z)` for `Z ∈ l`, and
//! `ω̃₃(Y)`, `c₃(Y)`, `ω₃ᵗ(Y) = ω̃₃(Y) + t·c₃(Y)` for `Y ∈ V⁻`.
//!
//! `ω₂` is read as
//!
//! ```text
//! ω₂(Z) = ½ Σ_{α,β ∈ Δ(V⁺)} N_{β,β'} M_{α,β'}(Z) · sym(X_{−α}, X_{−β}) ⊗ 1,   β' = γ − β,
//! ```
//!
//! with `sym(x, y) = (xy + yx)/2`. The symmetrization is what makes
//! `ω₂(H_γ)` vanish; the overall sign is fixed by the A₂ expansion of
//! `ω₃ᵗ`, whose `X_{−α}X_{−γ}` coefficient must come out as `t − 3/4`.

use num_traits::One;

use crate::chevalley::LieElement;
use crate::context::Context;
use crate::error::{Error, Result};
use crate::linalg;
use crate::poly::PolySC;
use crate::rootsys::RootId;
use crate::verma::VermaElement;
use crate::Rational;

/// `ω₂(Z)`, linear in `Z ∈ l`.
pub fn omega2(ctx: &Context, z: &LieElement) -> Result<VermaElement> {
    let grad = ctx.grading();
    if !grad.in_levi(z) {
        return Err(Error::NotInLevi);
    }
    let tab = ctx.table();
    let rs = ctx.root_system();
    let rank = ctx.rank();
    let half = Rational::new(1.into(), 2.into());
    let mut out = VermaElement::zero();
    for &alpha in grad.vplus() {
        // [Z, X_α] = Σ_{β'} M_{α,β'}(Z) X_{β'}
        let image = tab.bracket(z, &LieElement::root_vector(rank, alpha));
        for (&beta_p, m) in image.root_part() {
            let beta = rs
                .sum_id(grad.gamma(), rs.neg_id(beta_p))
                .expect("γ − β' is a root of V⁺");
            let n = tab.n(beta, beta_p).expect("β + β' = γ");
            let c = m * Rational::from_integer(n.into()) * &half;
            out.add_assign_rational(&sym(ctx, rs.neg_id(alpha), rs.neg_id(beta)), &c);
        }
    }
    Ok(out)
}

/// `(X_a X_b + X_b X_a) / 2` in PBW form.
fn sym(ctx: &Context, a: RootId, b: RootId) -> VermaElement {
    let half = Rational::new(1.into(), 2.into());
    let ab = ctx.normal_order(&[a, b]).expect("letters of n̄");
    let ba = ctx.normal_order(&[b, a]).expect("letters of n̄");
    ab.add(&ba).scale_rational(&half)
}

fn require_vminus(ctx: &Context, y: &LieElement) -> Result<()> {
    if ctx.grading().in_vminus(y) {
        Ok(())
    } else {
        Err(Error::NotInVminus)
    }
}

/// `ω̃₃(Y) = Σ_{ε ∈ Δ(V⁺)} X_{−ε} · ω₂([X_ε, Y])`.
pub fn omega3_tilde(ctx: &Context, y: &LieElement) -> Result<VermaElement> {
    require_vminus(ctx, y)?;
    let rs = ctx.root_system();
    let rank = ctx.rank();
    let mut out = VermaElement::zero();
    for &eps in ctx.grading().vplus() {
        let z = ctx.table().bracket(&LieElement::root_vector(rank, eps), y);
        if z.is_zero() {
            continue;
        }
        let w = omega2(ctx, &z)?;
        let x = LieElement::root_vector(rank, rs.neg_id(eps));
        out.add_assign_rational(&ctx.lmul_lie(&x, &w)?, &Rational::one());
    }
    Ok(out)
}

/// `ω̃₃(Y)` computed from an arbitrary basis `{W_i}` of `V⁺` and its dual
/// basis `{W_i*}` in `V⁻` under the invariant form:
/// `Σ_i W_i* · ω₂([W_i, Y])`.
///
/// `basis[i][j]` is the coefficient of `X_{ε_j}` in `W_i`, with `ε_j`
/// running over `Δ(V⁺)` in canonical order.
pub fn omega3_tilde_with_basis(
    ctx: &Context,
    y: &LieElement,
    basis: &[Vec<Rational>],
) -> Result<VermaElement> {
    require_vminus(ctx, y)?;
    let vplus = ctx.grading().vplus();
    if basis.len() != vplus.len() {
        return Err(Error::DimensionMismatch {
            expected: vplus.len(),
            got: basis.len(),
        });
    }
    // B(X_ε, X_{−ε'}) = δ, so the dual coefficients are the inverse transpose.
    let inv = linalg::inverse(&basis.to_vec())
        .ok_or_else(|| Error::Inconsistent("basis of V⁺ is singular".into()))?;
    let dual = linalg::transpose(&inv);
    let rs = ctx.root_system();
    let rank = ctx.rank();
    let mut out = VermaElement::zero();
    for (w_row, d_row) in basis.iter().zip(&dual) {
        let mut w = LieElement::zero(rank);
        let mut w_star = LieElement::zero(rank);
        for (j, &eps) in vplus.iter().enumerate() {
            w.add_scaled(&LieElement::root_vector(rank, eps), &w_row[j]);
            w_star.add_scaled(&LieElement::root_vector(rank, rs.neg_id(eps)), &d_row[j]);
        }
        let inner = omega2(ctx, &ctx.table().bracket(&w, y))?;
        out.add_assign_rational(&ctx.lmul_lie(&w_star, &inner)?, &Rational::one());
    }
    Ok(out)
}

/// `c₃(Y) = Y · X_{−γ} ⊗ 1`.
pub fn c3(ctx: &Context, y: &LieElement) -> Result<VermaElement> {
    require_vminus(ctx, y)?;
    let xg = ctx.normal_order(&[ctx.grading().neg_gamma()])?;
    ctx.lmul_lie(y, &xg)
}

/// `ω₃ᵗ(Y) = ω̃₃(Y) + t·c₃(Y)` with `t` formal.
pub fn omega3(ctx: &Context, y: &LieElement) -> Result<VermaElement> {
    let mut out = omega3_tilde(ctx, y)?;
    out.add_assign_scaled(&c3(ctx, y)?, &PolySC::t());
    Ok(out)
}

/// `ω₃ᵗ(X_β)` for a root `β ∈ Δ(V⁻)`.
pub fn omega3_root(ctx: &Context, beta: RootId) -> Result<VermaElement> {
    omega3(ctx, &LieElement::root_vector(ctx.rank(), beta))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::parabolic::m_coeff;
    use crate::rootsys::Root;

    fn ctx(name: &str) -> Context {
        Context::new(name.parse().unwrap()).unwrap()
    }

    fn q(n: i64, d: i64) -> Rational {
        Rational::new(n.into(), d.into())
    }

    fn x(ctx: &Context, coords: &[i64]) -> LieElement {
        let id = ctx
            .root_system()
            .id_of(&Root::new(coords.to_vec()))
            .unwrap();
        LieElement::root_vector(ctx.rank(), id)
    }

    /// ω₂ written out literally as a double sum over Δ(V⁺) × Δ(V⁺), using
    /// the coefficient function from the grading module.
    fn omega2_double_sum(ctx: &Context, z: &LieElement) -> VermaElement {
        let grad = ctx.grading();
        let rs = ctx.root_system();
        let tab = ctx.table();
        let mut out = VermaElement::zero();
        for &a in grad.vplus() {
            for &b in grad.vplus() {
                let bp = rs.sum_id(grad.gamma(), rs.neg_id(b)).unwrap();
                let m = m_coeff(tab, grad, z, a, bp).unwrap();
                let c = m * q(tab.n(b, bp).unwrap(), 4);
                let (na, nb) = (rs.neg_id(a), rs.neg_id(b));
                out.add_assign_rational(&ctx.normal_order(&[na, nb]).unwrap(), &c);
                out.add_assign_rational(&ctx.normal_order(&[nb, na]).unwrap(), &c);
            }
        }
        out
    }

    #[test]
    fn omega2_a2_by_hand() {
        let c = ctx("A2");
        let rs = c.root_system();
        let n = q(c.table().n(RootId(0), RootId(1)).unwrap(), 1);
        let h1 = LieElement::cartan_basis(2, 0);
        let (m1, m2, mg) = (
            rs.neg_id(RootId(0)),
            rs.neg_id(RootId(1)),
            c.grading().neg_gamma(),
        );
        let mut want = c
            .normal_order(&[m1, m2])
            .unwrap()
            .scale_rational(&(-q(3, 2) * &n));
        want.add_assign_rational(&c.normal_order(&[mg]).unwrap(), &q(-3, 4));
        assert_eq!(omega2(&c, &h1).unwrap(), want);
    }

    #[test]
    fn omega2_matches_double_sum_and_is_linear() {
        for name in ["A2", "A3", "D4"] {
            let c = ctx(name);
            let basis = c.grading().levi_basis();
            let mut total = LieElement::zero(c.rank());
            let mut sum = VermaElement::zero();
            for (k, b) in basis.iter().enumerate() {
                let z = LieElement::basis(c.rank(), *b);
                let w = omega2(&c, &z).unwrap();
                assert_eq!(w, omega2_double_sum(&c, &z), "{name} {b:?}");
                let k = q(k as i64 + 1, 3);
                total.add_scaled(&z, &k);
                sum.add_assign_rational(&w, &k);
            }
            assert_eq!(omega2(&c, &total).unwrap(), sum);
        }
    }

    #[test]
    fn omega2_vanishes_on_h_gamma() {
        for name in ["A2", "A3", "D4", "D5", "E6"] {
            let c = ctx(name);
            let hg = LieElement::coroot(c.root_system().highest_root());
            assert!(omega2(&c, &hg).unwrap().is_zero(), "{name}");
        }
    }

    #[test]
    fn omega2_rejects_outside_levi() {
        let c = ctx("A2");
        assert!(matches!(omega2(&c, &x(&c, &[1, 0])), Err(Error::NotInLevi)));
        assert!(matches!(
            omega3(&c, &x(&c, &[1, 0])),
            Err(Error::NotInVminus)
        ));
        assert!(matches!(
            omega3(&c, &LieElement::cartan_basis(2, 0)),
            Err(Error::NotInVminus)
        ));
        assert!(omega3_tilde(&c, &LieElement::zero(2)).unwrap().is_zero());
    }

    #[test]
    fn a2_expansion() {
        let c = ctx("A2");
        let n12 = c.table().n(RootId(0), RootId(1)).unwrap();
        let got = c.render(&omega3(&c, &x(&c, &[-1, 0])).unwrap());
        let lead = if n12 > 0 { "-3/2" } else { "3/2" };
        assert_eq!(
            got,
            format!("{lead}*X[-a1]^2*X[-a2] + (t - 3/4)*X[-a1]*X[-a1-a2]")
        );
        assert_eq!(
            c.render(&c3(&c, &x(&c, &[-1, 0])).unwrap()),
            "X[-a1]*X[-a1-a2]"
        );
    }

    #[test]
    fn t_specialization_recovers_tilde() {
        let c = ctx("D4");
        for &b in c.grading().vminus() {
            let y = LieElement::root_vector(4, b);
            let full = omega3(&c, &y).unwrap();
            let tilde = omega3_tilde(&c, &y).unwrap();
            assert!(!full.is_zero());
            for s in [q(-1, 1), q(2, 3)] {
                assert_eq!(
                    full.specialize(&s, &q(0, 1)),
                    tilde.specialize(&s, &q(0, 1))
                );
            }
        }
    }

    #[test]
    fn c3_d4() {
        let c = ctx("D4");
        let y = x(&c, &[0, -1, 0, 0]);
        let got = c3(&c, &y).unwrap();
        let m2 = c.root_system().neg_id(c.root_system().simple_id(1));
        let want = c.normal_order(&[m2, c.grading().neg_gamma()]).unwrap();
        assert_eq!(got, want);
    }

    #[test]
    fn dual_basis_with_identity_matches() {
        let c = ctx("A2");
        let m = c.grading().vplus().len();
        let id = linalg::identity(m);
        for &b in c.grading().vminus() {
            let y = LieElement::root_vector(2, b);
            assert_eq!(
                omega3_tilde_with_basis(&c, &y, &id).unwrap(),
                omega3_tilde(&c, &y).unwrap()
            );
        }
    }
}
