//! Arithmetic in `U(n̄) ⊗ ℂ_{s dχ}` with coefficients in `ℚ[s, t]`.
//!
//! `n̄ = V⁻ ⊕ ℂX_{−γ}` is two-step nilpotent with `X_{−γ}` central, so a
//! generator can be moved into PBW position in one pass: each transposition
//! with an earlier generator costs a single central correction term.

use std::collections::BTreeMap;
use std::fmt;

use num_traits::{One, Signed, Zero};

use crate::chevalley::{BasisElement, LieElement};
use crate::context::Context;
use crate::error::{Error, Result};
use crate::poly::PolySC;
use crate::rootsys::{Root, RootId};
use crate::{fmt_rational, Rational};

/// Exponents over the PBW generators of [`Context::generators`]. Always
/// normal ordered: generators of `V⁻` first, `X_{−γ}` last.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PbwMonomial(Vec<u16>);

impl PbwMonomial {
    pub fn unit(num_gens: usize) -> Self {
        PbwMonomial(vec![0; num_gens])
    }

    pub fn from_exponents(e: Vec<u16>) -> Self {
        PbwMonomial(e)
    }

    pub fn exponents(&self) -> &[u16] {
        &self.0
    }

    pub fn degree(&self) -> usize {
        self.0.iter().map(|&e| e as usize).sum()
    }

    /// Generator indices in PBW order, with repetition.
    pub fn word(&self) -> Vec<usize> {
        let mut w = Vec::with_capacity(self.degree());
        for (i, &e) in self.0.iter().enumerate() {
            w.extend(std::iter::repeat_n(i, e as usize));
        }
        w
    }
}

/// Sparse element of the generalized Verma module: PBW monomials (tensored
/// with the highest-weight vector) with `ℚ[s, t]` coefficients.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct VermaElement {
    terms: BTreeMap<PbwMonomial, PolySC>,
}

impl VermaElement {
    pub fn zero() -> Self {
        Self::default()
    }

    /// `1 ⊗ 1`.
    pub fn vacuum(num_gens: usize) -> Self {
        Self::monomial(PbwMonomial::unit(num_gens), PolySC::one())
    }

    pub fn monomial(m: PbwMonomial, c: PolySC) -> Self {
        let mut v = Self::zero();
        v.add_term(m, &c);
        v
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> &BTreeMap<PbwMonomial, PolySC> {
        &self.terms
    }

    pub fn coeff(&self, m: &PbwMonomial) -> PolySC {
        self.terms.get(m).cloned().unwrap_or_default()
    }

    pub fn add_term(&mut self, m: PbwMonomial, c: &PolySC) {
        if c.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry(m) {
            Entry::Vacant(e) => {
                e.insert(c.clone());
            }
            Entry::Occupied(mut e) => {
                e.get_mut().add_assign_scaled(c, &Rational::one());
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    pub fn add_term_rational(&mut self, m: PbwMonomial, c: &Rational) {
        if !c.is_zero() {
            self.add_term(m, &PolySC::constant(c.clone()));
        }
    }

    pub fn add_assign_scaled(&mut self, other: &VermaElement, c: &PolySC) {
        if c.is_zero() {
            return;
        }
        for (m, p) in &other.terms {
            self.add_term(m.clone(), &(p * c));
        }
    }

    pub fn add_assign_rational(&mut self, other: &VermaElement, c: &Rational) {
        if c.is_zero() {
            return;
        }
        for (m, p) in &other.terms {
            self.add_term(m.clone(), &p.scale(c));
        }
    }

    pub fn add(&self, other: &VermaElement) -> VermaElement {
        let mut out = self.clone();
        out.add_assign_rational(other, &Rational::one());
        out
    }

    pub fn sub(&self, other: &VermaElement) -> VermaElement {
        let mut out = self.clone();
        out.add_assign_rational(other, &-Rational::one());
        out
    }

    pub fn scale(&self, c: &PolySC) -> VermaElement {
        let mut out = VermaElement::zero();
        out.add_assign_scaled(self, c);
        out
    }

    pub fn scale_rational(&self, c: &Rational) -> VermaElement {
        let mut out = VermaElement::zero();
        out.add_assign_rational(self, c);
        out
    }

    /// Substitutes numeric `s`, `t` into every coefficient, dropping terms
    /// that vanish.
    pub fn specialize(&self, s0: &Rational, t0: &Rational) -> VermaElement {
        let mut out = VermaElement::zero();
        for (m, p) in &self.terms {
            out.add_term_rational(m.clone(), &p.eval(s0, t0));
        }
        out
    }

    /// Substitutes `s` only.
    pub fn specialize_s(&self, s0: &Rational) -> VermaElement {
        let mut out = VermaElement::zero();
        for (m, p) in &self.terms {
            let mut q = PolySC::zero();
            for (k, c) in p.at_s(s0).coeffs().iter().enumerate() {
                q.add_term(0, k as u32, c);
            }
            out.add_term(m.clone(), &q);
        }
        out
    }

    /// Coefficients in canonical monomial order.
    pub fn coefficients(&self) -> impl Iterator<Item = &PolySC> {
        self.terms.values()
    }

    /// The constant (rational) coordinates, when all coefficients are
    /// constants.
    pub fn as_rational_coords(&self) -> Option<BTreeMap<PbwMonomial, Rational>> {
        self.terms
            .iter()
            .map(|(m, p)| {
                if p.degree_s().unwrap_or(0) == 0 && p.degree_t().unwrap_or(0) == 0 {
                    Some((m.clone(), p.coeff(0, 0)))
                } else {
                    None
                }
            })
            .collect()
    }
}

/// Words made of `n̄` letters and products in `U(n̄)`.
impl Context {
    /// `X_{g_i} · v`, straightened into PBW form.
    pub fn lmul_gen(&self, i: usize, v: &VermaElement) -> VermaElement {
        let mut out = VermaElement::zero();
        for (m, c) in v.terms() {
            self.lmul_gen_monomial(i, m, c, &mut out);
        }
        out
    }

    fn lmul_gen_monomial(&self, i: usize, m: &PbwMonomial, c: &PolySC, out: &mut VermaElement) {
        let central = self.central_generator();
        let mut e = m.0.clone();
        e[i] += 1;
        out.add_term(PbwMonomial(e), c);
        if i == central {
            return;
        }
        // X_i X_j = X_j X_i + [X_i, X_j] for each earlier X_j; the bracket is
        // a multiple of the central X_{−γ}.
        for j in 0..i {
            let k = self.commutator(i, j);
            if k == 0 || m.0[j] == 0 {
                continue;
            }
            let mut e = m.0.clone();
            e[j] -= 1;
            e[central] += 1;
            let factor = Rational::from_integer((k * m.0[j] as i64).into());
            out.add_term(PbwMonomial(e), &c.scale(&factor));
        }
    }

    /// PBW normal form of the product of root vectors `X_{w_1} ⋯ X_{w_k}`.
    pub fn normal_order(&self, word: &[RootId]) -> Result<VermaElement> {
        let idx: Vec<usize> = word
            .iter()
            .map(|&r| {
                self.generator_of(r)
                    .ok_or_else(|| Error::LetterNotInNbar(self.root_system().root(r).to_string()))
            })
            .collect::<Result<_>>()?;
        let mut v = VermaElement::vacuum(self.num_generators());
        for &i in idx.iter().rev() {
            v = self.lmul_gen(i, &v);
        }
        Ok(v)
    }

    /// `Y · v` for `Y ∈ n̄` given as a Lie element (left multiplication).
    pub fn lmul_lie(&self, y: &LieElement, v: &VermaElement) -> Result<VermaElement> {
        if y.has_cartan_part() {
            return Err(Error::LetterNotInNbar("Cartan element".into()));
        }
        let mut out = VermaElement::zero();
        for (r, c) in y.root_part() {
            let i = self
                .generator_of(*r)
                .ok_or_else(|| Error::LetterNotInNbar(self.root_system().root(*r).to_string()))?;
            out.add_assign_rational(&self.lmul_gen(i, v), c);
        }
        Ok(out)
    }

    /// Product `u · v` in `U(n̄)`.
    pub fn mul(&self, u: &VermaElement, v: &VermaElement) -> VermaElement {
        let mut out = VermaElement::zero();
        for (m, c) in u.terms() {
            let mut acc = v.scale(c);
            for &i in m.word().iter().rev() {
                acc = self.lmul_gen(i, &acc);
            }
            out.add_assign_rational(&acc, &Rational::one());
        }
        out
    }

    /// Re-expresses `v`, written in the PBW basis of `from`, in this
    /// context's PBW basis. Both contexts must describe the same algebra.
    pub fn transport(&self, from: &Context, v: &VermaElement) -> Result<VermaElement> {
        let mut out = VermaElement::zero();
        for (m, c) in v.terms() {
            let word: Vec<RootId> = m.word().into_iter().map(|i| from.generators()[i]).collect();
            out.add_assign_scaled(&self.normal_order(&word)?, c);
        }
        Ok(out)
    }

    /// The weight `Σ e_i g_i` of a PBW monomial.
    pub fn monomial_weight(&self, m: &PbwMonomial) -> Root {
        let rs = self.root_system();
        let mut w = vec![0i64; rs.rank()];
        for (i, &e) in m.0.iter().enumerate() {
            for (k, c) in rs.root(self.generators()[i]).coords().iter().enumerate() {
                w[k] += c * e as i64;
            }
        }
        Root::new(w)
    }
}

/// The left `U(g)`-action.
impl Context {
    /// `Y · v` for arbitrary `Y ∈ g`.
    pub fn act(&self, y: &LieElement, v: &VermaElement) -> VermaElement {
        let mut out = VermaElement::zero();
        for (m, c) in v.terms() {
            let word = m.word();
            for (b, k) in y.terms() {
                let piece = self.act_basis_word(b, &word);
                out.add_assign_scaled(&piece, &c.scale(k));
            }
        }
        out
    }

    pub fn act_basis(&self, b: BasisElement, v: &VermaElement) -> VermaElement {
        let mut out = VermaElement::zero();
        for (m, c) in v.terms() {
            let piece = self.act_basis_word(b, &m.word());
            out.add_assign_scaled(&piece, c);
        }
        out
    }

    /// `b · (X_{w_1} ⋯ X_{w_k} ⊗ 1)` where `w` is a normal-ordered word of
    /// generator indices.
    fn act_basis_word(&self, b: BasisElement, word: &[usize]) -> VermaElement {
        let k = self.num_generators();
        if let BasisElement::Root(r) = b {
            if let Some(i) = self.generator_of(r) {
                let mut e = vec![0u16; k];
                for &w in word {
                    e[w] += 1;
                }
                let mut out = VermaElement::zero();
                self.lmul_gen_monomial(i, &PbwMonomial(e), &PolySC::one(), &mut out);
                return out;
            }
        }
        let Some((&first, rest)) = word.split_first() else {
            // q acts on the highest-weight vector by s·dχ and n kills it.
            return match b {
                BasisElement::Cartan(i) => match self.dchi_simple(i) {
                    0 => VermaElement::zero(),
                    d => VermaElement::monomial(
                        PbwMonomial::unit(k),
                        PolySC::monomial(Rational::from_integer(d.into()), 1, 0),
                    ),
                },
                BasisElement::Root(_) => VermaElement::zero(),
            };
        };
        // b X_w = X_w b + [b, X_w]
        let mut out = self.lmul_gen(first, &self.act_basis_word(b, rest));
        let letter = BasisElement::Root(self.generators()[first]);
        for (b2, c) in self.table().bracket_basis(b, letter) {
            let sub = self.act_basis_word(b2, rest);
            out.add_assign_rational(&sub, &Rational::from_integer(c.into()));
        }
        out
    }

    /// Canonical text: monomials by decreasing degree, then decreasing
    /// exponent vector; generators named `X[-a1-a2]`.
    pub fn render(&self, v: &VermaElement) -> String {
        if v.is_zero() {
            return "0".into();
        }
        let mut monos: Vec<&PbwMonomial> = v.terms().keys().collect();
        monos.sort_by(|a, b| b.degree().cmp(&a.degree()).then_with(|| b.cmp(a)));
        let mut out = String::new();
        for (n, m) in monos.into_iter().enumerate() {
            let c = &v.terms()[m];
            let mono = self.render_monomial(m);
            let (neg, coeff) = render_coeff(c);
            let body = match (coeff.as_str(), mono.is_empty()) {
                ("1", false) => mono,
                (_, false) => format!("{coeff}*{mono}"),
                (_, true) => coeff,
            };
            match (n, neg) {
                (0, true) => out.push_str(&format!("-{body}")),
                (0, false) => out.push_str(&body),
                (_, true) => out.push_str(&format!(" - {body}")),
                (_, false) => out.push_str(&format!(" + {body}")),
            }
        }
        out
    }

    pub fn render_monomial(&self, m: &PbwMonomial) -> String {
        let rs = self.root_system();
        m.0.iter()
            .enumerate()
            .filter(|(_, &e)| e > 0)
            .map(|(i, &e)| {
                let name = format!("X[{}]", rs.root(self.generators()[i]));
                if e == 1 {
                    name
                } else {
                    format!("{name}^{e}")
                }
            })
            .collect::<Vec<_>>()
            .join("*")
    }
}

/// Splits a coefficient into (negated?, text). Constants carry their sign
/// outside; anything with more than one term is parenthesized.
fn render_coeff(c: &PolySC) -> (bool, String) {
    let terms = c.terms();
    if terms.len() == 1 {
        let (&(ds, dt), v) = terms.iter().next().unwrap();
        let mag = v.abs();
        let vars: Vec<String> = [("s", ds), ("t", dt)]
            .iter()
            .filter(|(_, d)| *d > 0)
            .map(|(n, d)| {
                if *d == 1 {
                    n.to_string()
                } else {
                    format!("{n}^{d}")
                }
            })
            .collect();
        let text = match (vars.is_empty(), mag.is_one()) {
            (true, _) => fmt_rational(&mag),
            (false, true) => vars.join("*"),
            (false, false) => format!("{}*{}", fmt_rational(&mag), vars.join("*")),
        };
        return (v.is_negative(), text);
    }
    (false, format!("({c})"))
}

impl fmt::Display for PbwMonomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.0)
    }
}

pub fn normal_order(ctx: &Context, word: &[RootId]) -> Result<VermaElement> {
    ctx.normal_order(word)
}

pub fn act(ctx: &Context, y: &LieElement, v: &VermaElement) -> VermaElement {
    ctx.act(y, v)
}

pub fn specialize(v: &VermaElement, s0: &Rational, t0: &Rational) -> VermaElement {
    v.specialize(s0, t0)
}

/// True when every monomial of `v` has the same weight.
pub fn is_weight_homogeneous(ctx: &Context, v: &VermaElement) -> bool {
    let mut weights = v.terms().keys().map(|m| ctx.monomial_weight(m));
    match weights.next() {
        Some(w) => weights.all(|x| x == w),
        None => true,
    }
}
