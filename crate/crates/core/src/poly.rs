//! Exact polynomials: `PolySC ∈ ℚ[s, t]` for Verma coefficients and
//! `UniPoly ∈ ℚ[x]` for the solver (gcd, rational roots, resultants).

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::{fmt_rational, Rational};

/// Polynomial in the formal parameters `s` and `t`, keyed by
/// `(deg_s, deg_t)`. Zero coefficients are never stored.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct PolySC {
    terms: BTreeMap<(u32, u32), Rational>,
}

impl PolySC {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::constant(Rational::one())
    }

    pub fn constant(c: Rational) -> Self {
        Self::monomial(c, 0, 0)
    }

    pub fn from_int(c: i64) -> Self {
        Self::constant(Rational::from_integer(c.into()))
    }

    pub fn monomial(c: Rational, ds: u32, dt: u32) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert((ds, dt), c);
        }
        Self { terms }
    }

    pub fn s() -> Self {
        Self::monomial(Rational::one(), 1, 0)
    }

    pub fn t() -> Self {
        Self::monomial(Rational::one(), 0, 1)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> &BTreeMap<(u32, u32), Rational> {
        &self.terms
    }

    pub fn coeff(&self, ds: u32, dt: u32) -> Rational {
        self.terms
            .get(&(ds, dt))
            .cloned()
            .unwrap_or_else(Rational::zero)
    }

    pub fn degree_s(&self) -> Option<u32> {
        self.terms.keys().map(|k| k.0).max()
    }

    pub fn degree_t(&self) -> Option<u32> {
        self.terms.keys().map(|k| k.1).max()
    }

    pub fn add_term(&mut self, ds: u32, dt: u32, c: &Rational) {
        if c.is_zero() {
            return;
        }
        let e = self.terms.entry((ds, dt)).or_insert_with(Rational::zero);
        *e += c;
        if e.is_zero() {
            self.terms.remove(&(ds, dt));
        }
    }

    pub fn add_assign_scaled(&mut self, other: &PolySC, c: &Rational) {
        for (&(ds, dt), v) in &other.terms {
            self.add_term(ds, dt, &(v * c));
        }
    }

    pub fn scale(&self, c: &Rational) -> PolySC {
        if c.is_zero() {
            return PolySC::zero();
        }
        PolySC {
            terms: self.terms.iter().map(|(k, v)| (*k, v * c)).collect(),
        }
    }

    pub fn eval(&self, s0: &Rational, t0: &Rational) -> Rational {
        let mut acc = Rational::zero();
        for (&(ds, dt), c) in &self.terms {
            acc += c * pow(s0, ds) * pow(t0, dt);
        }
        acc
    }

    /// Substitutes `s = s0`, leaving a polynomial in `t`.
    pub fn at_s(&self, s0: &Rational) -> UniPoly {
        let mut coeffs = Vec::new();
        for (&(ds, dt), c) in &self.terms {
            let k = dt as usize;
            if coeffs.len() <= k {
                coeffs.resize(k + 1, Rational::zero());
            }
            coeffs[k] += c * pow(s0, ds);
        }
        UniPoly::new(coeffs)
    }

    /// Substitutes `t = t0`, leaving a polynomial in `s`.
    pub fn at_t(&self, t0: &Rational) -> UniPoly {
        let mut coeffs = Vec::new();
        for (&(ds, dt), c) in &self.terms {
            let k = ds as usize;
            if coeffs.len() <= k {
                coeffs.resize(k + 1, Rational::zero());
            }
            coeffs[k] += c * pow(t0, dt);
        }
        UniPoly::new(coeffs)
    }

    /// Coefficients of `t^k` as polynomials in `s`, lowest degree first.
    pub fn t_coefficients(&self) -> Vec<UniPoly> {
        let dt = self.degree_t().map_or(0, |d| d as usize + 1);
        let mut rows: Vec<Vec<Rational>> = vec![Vec::new(); dt];
        for (&(ds, dt), c) in &self.terms {
            let row = &mut rows[dt as usize];
            if row.len() <= ds as usize {
                row.resize(ds as usize + 1, Rational::zero());
            }
            row[ds as usize] += c;
        }
        rows.into_iter().map(UniPoly::new).collect()
    }

    /// Scales so the leading coefficient (in key order) is 1.
    pub fn normalized(&self) -> PolySC {
        match self.terms.iter().next_back() {
            Some((_, lead)) => self.scale(&lead.recip()),
            None => PolySC::zero(),
        }
    }
}

fn pow(x: &Rational, e: u32) -> Rational {
    let mut acc = Rational::one();
    for _ in 0..e {
        acc *= x;
    }
    acc
}

impl Add for &PolySC {
    type Output = PolySC;
    fn add(self, rhs: &PolySC) -> PolySC {
        let mut out = self.clone();
        out.add_assign_scaled(rhs, &Rational::one());
        out
    }
}

impl Sub for &PolySC {
    type Output = PolySC;
    fn sub(self, rhs: &PolySC) -> PolySC {
        let mut out = self.clone();
        out.add_assign_scaled(rhs, &-Rational::one());
        out
    }
}

impl Neg for &PolySC {
    type Output = PolySC;
    fn neg(self) -> PolySC {
        self.scale(&-Rational::one())
    }
}

impl Mul for &PolySC {
    type Output = PolySC;
    fn mul(self, rhs: &PolySC) -> PolySC {
        let mut out = PolySC::zero();
        for (&(a1, b1), c1) in &self.terms {
            for (&(a2, b2), c2) in &rhs.terms {
                out.add_term(a1 + a2, b1 + b2, &(c1 * c2));
            }
        }
        out
    }
}

impl fmt::Display for PolySC {
    /// Highest total degree first, e.g. `s*t + 3/2*s - 3/4`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut keys: Vec<_> = self.terms.keys().copied().collect();
        keys.sort_by_key(|k| std::cmp::Reverse((k.0 + k.1, k.0)));
        for (n, k) in keys.iter().enumerate() {
            let c = &self.terms[k];
            let mut vars = Vec::new();
            for (name, d) in [("s", k.0), ("t", k.1)] {
                match d {
                    0 => {}
                    1 => vars.push(name.to_string()),
                    _ => vars.push(format!("{name}^{d}")),
                }
            }
            let mag = c.abs();
            let body = if vars.is_empty() {
                fmt_rational(&mag)
            } else if mag.is_one() {
                vars.join("*")
            } else {
                format!("{}*{}", fmt_rational(&mag), vars.join("*"))
            };
            match (n, c.is_negative()) {
                (0, true) => write!(f, "-{body}")?,
                (0, false) => write!(f, "{body}")?,
                (_, true) => write!(f, " - {body}")?,
                (_, false) => write!(f, " + {body}")?,
            }
        }
        Ok(())
    }
}

/// Dense univariate polynomial over ℚ, lowest degree first, no trailing
/// zeros.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct UniPoly {
    coeffs: Vec<Rational>,
}

/// Rational roots of a polynomial with their multiplicities, plus the degree
/// of the cofactor that has no rational roots.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RationalRoots {
    pub roots: Vec<(Rational, usize)>,
    pub irrational_degree: usize,
}

impl UniPoly {
    pub fn new(mut coeffs: Vec<Rational>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        Self { coeffs }
    }

    pub fn zero() -> Self {
        Self::default()
    }

    pub fn constant(c: Rational) -> Self {
        Self::new(vec![c])
    }

    pub fn from_ints(c: &[i64]) -> Self {
        Self::new(
            c.iter()
                .map(|&v| Rational::from_integer(v.into()))
                .collect(),
        )
    }

    /// `x - r`.
    pub fn linear_root(r: &Rational) -> Self {
        Self::new(vec![-r.clone(), Rational::one()])
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn lead(&self) -> Option<&Rational> {
        self.coeffs.last()
    }

    pub fn eval(&self, x: &Rational) -> Rational {
        self.coeffs
            .iter()
            .rev()
            .fold(Rational::zero(), |acc, c| acc * x + c)
    }

    pub fn monic(&self) -> UniPoly {
        match self.lead() {
            Some(l) => {
                let inv = l.recip();
                UniPoly::new(self.coeffs.iter().map(|c| c * &inv).collect())
            }
            None => UniPoly::zero(),
        }
    }

    pub fn scale(&self, c: &Rational) -> UniPoly {
        UniPoly::new(self.coeffs.iter().map(|v| v * c).collect())
    }

    /// Euclidean division. Panics on division by zero.
    pub fn div_rem(&self, d: &UniPoly) -> (UniPoly, UniPoly) {
        let dd = d.degree().expect("division by zero polynomial");
        let lead_inv = d.lead().unwrap().recip();
        let mut rem = self.coeffs.clone();
        if rem.len() <= dd {
            return (UniPoly::zero(), self.clone());
        }
        let mut quot = vec![Rational::zero(); rem.len() - dd];
        for k in (0..quot.len()).rev() {
            let c = &rem[k + dd] * &lead_inv;
            if !c.is_zero() {
                for (j, dc) in d.coeffs.iter().enumerate() {
                    rem[k + j] -= &c * dc;
                }
            }
            quot[k] = c;
        }
        rem.truncate(dd);
        (UniPoly::new(quot), UniPoly::new(rem))
    }

    /// Monic gcd; `gcd(0, 0) = 0`.
    pub fn gcd(&self, other: &UniPoly) -> UniPoly {
        let (mut a, mut b) = (self.clone(), other.clone());
        while !b.is_zero() {
            let (_, r) = a.div_rem(&b);
            a = b;
            b = r;
        }
        a.monic()
    }

    /// All rational roots via the rational root theorem, with multiplicity.
    pub fn rational_roots(&self) -> RationalRoots {
        let mut roots = Vec::new();
        if self.is_zero() {
            return RationalRoots {
                roots,
                irrational_degree: 0,
            };
        }
        let mut p = self.clone();
        let mut zero_mult = 0;
        while p.coeffs.first().is_some_and(Zero::is_zero) {
            p.coeffs.remove(0);
            zero_mult += 1;
        }
        if zero_mult > 0 {
            roots.push((Rational::zero(), zero_mult));
        }
        let ints = p.integer_coeffs();
        let (a0, an) = (ints[0].abs(), ints[ints.len() - 1].abs());
        let mut candidates = Vec::new();
        for num in divisors(&a0) {
            for den in divisors(&an) {
                let r = Rational::new(num.clone(), den.clone());
                candidates.push(r.clone());
                candidates.push(-r);
            }
        }
        candidates.sort();
        candidates.dedup();
        for r in candidates {
            let mut mult = 0;
            while p.degree().unwrap_or(0) > 0 && p.eval(&r).is_zero() {
                p = p.div_rem(&UniPoly::linear_root(&r)).0;
                mult += 1;
            }
            if mult > 0 {
                roots.push((r, mult));
            }
        }
        roots.sort();
        RationalRoots {
            roots,
            irrational_degree: p.degree().unwrap_or(0),
        }
    }

    /// Primitive integer coefficients proportional to `self`.
    pub fn integer_coeffs(&self) -> Vec<BigInt> {
        let lcm = self
            .coeffs
            .iter()
            .fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
        let ints: Vec<BigInt> = self
            .coeffs
            .iter()
            .map(|c| (c * Rational::from_integer(lcm.clone())).to_integer())
            .collect();
        let g = ints.iter().fold(BigInt::zero(), |acc, c| acc.gcd(c));
        if g.is_zero() {
            return ints;
        }
        ints.into_iter().map(|c| c / &g).collect()
    }

    pub fn display_in(&self, var: &str) -> String {
        if self.is_zero() {
            return "0".into();
        }
        let mut out = String::new();
        for (k, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let mag = c.abs();
            let mono = match k {
                0 => String::new(),
                1 => var.to_string(),
                _ => format!("{var}^{k}"),
            };
            let body = if mono.is_empty() {
                fmt_rational(&mag)
            } else if mag.is_one() {
                mono
            } else {
                format!("{}*{mono}", fmt_rational(&mag))
            };
            let sign = c.is_negative();
            if out.is_empty() {
                out = if sign { format!("-{body}") } else { body };
            } else {
                out.push_str(if sign { " - " } else { " + " });
                out.push_str(&body);
            }
        }
        out
    }
}

fn divisors(n: &BigInt) -> Vec<BigInt> {
    let n = n.abs();
    if n.is_zero() {
        return vec![];
    }
    let mut small = Vec::new();
    let mut large = Vec::new();
    let mut d = BigInt::one();
    while &d * &d <= n {
        if (&n % &d).is_zero() {
            let q = &n / &d;
            if q != d {
                large.push(q);
            }
            small.push(d.clone());
        }
        d += 1;
    }
    small.extend(large.into_iter().rev());
    small
}

impl Add for &UniPoly {
    type Output = UniPoly;
    fn add(self, rhs: &UniPoly) -> UniPoly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        let zero = Rational::zero();
        UniPoly::new(
            (0..n)
                .map(|k| self.coeffs.get(k).unwrap_or(&zero) + rhs.coeffs.get(k).unwrap_or(&zero))
                .collect(),
        )
    }
}

impl Sub for &UniPoly {
    type Output = UniPoly;
    fn sub(self, rhs: &UniPoly) -> UniPoly {
        self + &rhs.scale(&-Rational::one())
    }
}

impl Mul for &UniPoly {
    type Output = UniPoly;
    fn mul(self, rhs: &UniPoly) -> UniPoly {
        if self.is_zero() || rhs.is_zero() {
            return UniPoly::zero();
        }
        let mut out = vec![Rational::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        UniPoly::new(out)
    }
}

/// Resultant with respect to `t` of two polynomials in `ℚ[s][t]`, computed
/// as the Sylvester determinant with fraction-free (Bareiss) elimination over
/// `ℚ[s]`.
pub fn resultant_t(p: &PolySC, q: &PolySC) -> UniPoly {
    let pc = p.t_coefficients();
    let qc = q.t_coefficients();
    if pc.is_empty() || qc.is_empty() {
        return UniPoly::zero();
    }
    let (m, n) = (pc.len() - 1, qc.len() - 1);
    if m == 0 && n == 0 {
        return UniPoly::constant(Rational::one());
    }
    if m == 0 {
        return pow_poly(&pc[0], n);
    }
    if n == 0 {
        return pow_poly(&qc[0], m);
    }
    let size = m + n;
    let mut mat = vec![vec![UniPoly::zero(); size]; size];
    for r in 0..n {
        for (k, c) in pc.iter().rev().enumerate() {
            mat[r][r + k] = c.clone();
        }
    }
    for r in 0..m {
        for (k, c) in qc.iter().rev().enumerate() {
            mat[n + r][r + k] = c.clone();
        }
    }
    bareiss_det(mat)
}

fn pow_poly(p: &UniPoly, e: usize) -> UniPoly {
    (0..e).fold(UniPoly::constant(Rational::one()), |acc, _| &acc * p)
}

fn bareiss_det(mut a: Vec<Vec<UniPoly>>) -> UniPoly {
    let n = a.len();
    let mut sign = Rational::one();
    let mut prev = UniPoly::constant(Rational::one());
    for k in 0..n {
        if a[k][k].is_zero() {
            match (k + 1..n).find(|&r| !a[r][k].is_zero()) {
                Some(r) => {
                    a.swap(k, r);
                    sign = -sign;
                }
                None => return UniPoly::zero(),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let num = &(&a[i][j] * &a[k][k]) - &(&a[i][k] * &a[k][j]);
                let (quot, rem) = num.div_rem(&prev);
                debug_assert!(rem.is_zero(), "Bareiss division must be exact");
                a[i][j] = quot;
            }
        }
        prev = a[k][k].clone();
    }
    a[n - 1][n - 1].scale(&sign)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn q(n: i64, d: i64) -> Rational {
        Rational::new(n.into(), d.into())
    }

    #[test]
    fn display_polysc() {
        let p = &(&PolySC::t() - &PolySC::constant(q(3, 4))) + &PolySC::monomial(q(2, 1), 1, 1);
        assert_eq!(p.to_string(), "2*s*t + t - 3/4");
        assert_eq!(PolySC::zero().to_string(), "0");
        assert_eq!(PolySC::s().scale(&q(-2, 1)).to_string(), "-2*s");
    }

    #[test]
    fn eval_and_substitute() {
        // (t - 3/4) vanishes at t = 3/4 for any s.
        let p = &PolySC::t() - &PolySC::constant(q(3, 4));
        assert!(p.eval(&q(0, 1), &q(3, 4)).is_zero());
        let ps = &PolySC::s() * &p;
        assert_eq!(ps.at_s(&q(2, 1)), UniPoly::new(vec![q(-3, 2), q(2, 1)]));
        assert_eq!(ps.at_t(&q(1, 1)), UniPoly::new(vec![q(0, 1), q(1, 4)]));
    }

    #[test]
    fn gcd_and_roots() {
        // (x - 3/4)(x + 2) and (x - 3/4)(2x - 1)
        let a = &UniPoly::linear_root(&q(3, 4)) * &UniPoly::linear_root(&q(-2, 1));
        let b = &UniPoly::linear_root(&q(3, 4)) * &UniPoly::from_ints(&[-1, 2]);
        assert_eq!(a.gcd(&b), UniPoly::linear_root(&q(3, 4)));
        let r = a.rational_roots();
        assert_eq!(r.roots, vec![(q(-2, 1), 1), (q(3, 4), 1)]);
        assert_eq!(r.irrational_degree, 0);

        let irr = UniPoly::from_ints(&[-2, 0, 1]);
        assert_eq!(irr.rational_roots().roots, vec![]);
        assert_eq!(irr.rational_roots().irrational_degree, 2);

        let sq = &(&UniPoly::from_ints(&[0, 1]) * &UniPoly::from_ints(&[0, 1]))
            * &UniPoly::from_ints(&[1, 3]);
        assert_eq!(sq.rational_roots().roots, vec![(q(-1, 3), 1), (q(0, 1), 2)]);
        assert!(
            UniPoly::constant(q(5, 1))
                .gcd(&UniPoly::from_ints(&[1, 1]))
                .degree()
                == Some(0)
        );
    }

    #[test]
    fn resultant_linear_pair() {
        // p = s*t + 1, q = t - s  =>  Res_t = s*s + 1 up to sign.
        let p = &(&PolySC::s() * &PolySC::t()) + &PolySC::one();
        let qq = &PolySC::t() - &PolySC::s();
        let r = resultant_t(&p, &qq);
        // Sylvester rows [s, 1], [1, -s]: det = -s^2 - 1.
        assert_eq!(r, UniPoly::from_ints(&[-1, 0, -1]));
    }

    #[test]
    fn resultant_oracle_quadratic() {
        // p = t^2 - s, q = t - 2: Res = p(2) = 4 - s.
        let p = &(&PolySC::t() * &PolySC::t()) - &PolySC::s();
        let qq = &PolySC::t() - &PolySC::from_int(2);
        let r = resultant_t(&p, &qq);
        assert_eq!(r.monic(), UniPoly::from_ints(&[-4, 1]));
    }

    fn arb_poly() -> impl Strategy<Value = PolySC> {
        prop::collection::vec(((0u32..3, 0u32..3), -5i64..6, 1i64..4), 0..5).prop_map(|ts| {
            let mut p = PolySC::zero();
            for ((a, b), n, d) in ts {
                p.add_term(a, b, &q(n, d));
            }
            p
        })
    }

    proptest! {
        #[test]
        fn ring_axioms(a in arb_poly(), b in arb_poly(), c in arb_poly()) {
            prop_assert_eq!(&(&a + &b) + &c, &a + &(&b + &c));
            prop_assert_eq!(&a * &b, &b * &a);
            prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
            prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
            prop_assert!((&a - &a).is_zero());
            prop_assert!(!(&a * &PolySC::one()).terms().values().any(|v| v.is_zero()));
        }

        #[test]
        fn eval_is_homomorphism(a in arb_poly(), b in arb_poly(), s0 in -3i64..4, t0 in -3i64..4) {
            let (s0, t0) = (q(s0, 2), q(t0, 3));
            prop_assert_eq!((&a * &b).eval(&s0, &t0), a.eval(&s0, &t0) * b.eval(&s0, &t0));
        }

        #[test]
        fn division_identity(a in prop::collection::vec(-9i64..10, 0..6), b in prop::collection::vec(-9i64..10, 1..4)) {
            let a = UniPoly::from_ints(&a);
            let b = UniPoly::from_ints(&b);
            prop_assume!(!b.is_zero());
            let (qt, r) = a.div_rem(&b);
            prop_assert_eq!(&(&qt * &b) + &r, a);
            prop_assert!(r.degree().is_none_or(|d| d < b.degree().unwrap()));
        }
    }
}
