//! Exact construction of the third-order operator systems `Ω₃ᵗ` attached to
//! Heisenberg parabolics of simply-laced simple Lie algebras, realized inside
//! generalized Verma modules with coefficients in `ℚ[s, t]`, together with
//! an exact solver for the parameters at which the system is conformally
//! invariant.
//!
//! The modules build on each other bottom-up:
//!
//! - [`rootsys`]: root systems, highest root, `ρ`, inner product.
//! - [`chevalley`]: Chevalley basis, structure constants, invariant form.
//! - [`parabolic`]: the five-step grading by `ad(H_γ)`, `dχ`, `V⁻` components.
//! - [`poly`]: exact polynomials in `s`, `t` and univariate helpers.
//! - [`verma`]: PBW normal ordering and the `g`-action on `U(n̄) ⊗ ℂ_{s dχ}`.
//! - [`omega`]: `ω₂`, `ω̃₃`, `c₃`, `ω₃ᵗ`.
//! - [`invariance`]: the `n`-annihilation system and its special values.
//!
//! [`Context`] bundles the table, grading and PBW generators for one algebra;
//! [`selftest`] holds the property batteries and [`report`] the JSON schema.

pub mod chevalley;
pub mod context;
pub mod error;
pub mod invariance;
pub mod linalg;
pub mod omega;
pub mod parabolic;
pub mod poly;
pub mod report;
pub mod rootsys;
pub mod selftest;
pub mod verma;

pub use num_bigint::BigInt;
pub use num_rational::BigRational as Rational;

pub use chevalley::{
    build_chevalley, build_chevalley_with, BasisElement, LieElement, SignChoice, StructureTable,
};
pub use context::Context;
pub use error::{Error, Result};
pub use invariance::{SpecialValueReport, Status};
pub use parabolic::{Grading, Submodule};
pub use poly::{PolySC, UniPoly};
pub use rootsys::{build_root_system, AlgebraType, Root, RootId, RootSystem, Weight};
pub use verma::{PbwMonomial, VermaElement};

/// Parses `p/q` or an integer into an exact rational.
pub fn parse_rational(s: &str) -> Option<Rational> {
    let s = s.trim();
    match s.split_once('/') {
        Some((p, q)) => {
            let p: BigInt = p.trim().parse().ok()?;
            let q: BigInt = q.trim().parse().ok()?;
            if q == BigInt::from(0) {
                return None;
            }
            Some(Rational::new(p, q))
        }
        None => s.parse::<BigInt>().ok().map(Rational::from_integer),
    }
}

/// Renders a rational as `p/q`, or `p` when it is an integer.
pub fn fmt_rational(q: &Rational) -> String {
    if q.is_integer() {
        q.numer().to_string()
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rational_text() {
        assert_eq!(fmt_rational(&parse_rational("-6/8").unwrap()), "-3/4");
        assert_eq!(fmt_rational(&parse_rational("-1").unwrap()), "-1");
        assert_eq!(fmt_rational(&parse_rational("4/2").unwrap()), "2");
        assert!(parse_rational("1/0").is_none());
        assert!(parse_rational("x").is_none());
    }
}
