//! Benchmarks live in `benches/`; this crate has no library code of its own.
//! Fixtures shared by the benches are collected here.

use omega3_core::{Context, LieElement, RootId};

pub fn context(name: &str) -> Context {
    Context::new(name.parse().expect("supported type")).expect("table builds")
}

/// `X_β` for the first root of `Δ(V⁻)`.
pub fn first_vminus(ctx: &Context) -> (RootId, LieElement) {
    let b = ctx.grading().vminus()[0];
    (b, LieElement::root_vector(ctx.rank(), b))
}
