//! Chevalley basis `{X_α, H_{α_i}}` with integer structure constants.
//!
//! Normalizations: `[X_α, X_{-α}] = H_α`, `[H_α, X_β] = (β, α) X_β`,
//! `B(X_α, X_{-α}) = 1` and `[X_α, X_β] = N_{α,β} X_{α+β}` with
//! `N_{α,β} = ±1` (simply laced).
//!
//! The signs are produced from a bimultiplicative 2-cocycle on the root
//! lattice and then renormalized by rescaling `X_{±δ}` together so that
//! every extraspecial pair receives the requested sign. Rescaling both
//! `X_δ` and `X_{-δ}` by the same sign keeps the other normalizations.

use std::collections::BTreeMap;
use std::fmt;
use std::io::{BufRead, Write};

use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::rootsys::{AlgebraType, Root, RootId, RootSystem};
use crate::Rational;

/// A basis vector of g.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum BasisElement {
    /// `X_α`.
    Root(RootId),
    /// `H_{α_i}` for the `i`-th simple root.
    Cartan(usize),
}

/// Sparse exact-rational element of g over the Chevalley basis.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct LieElement {
    roots: BTreeMap<RootId, Rational>,
    cartan: Vec<Rational>,
}

impl LieElement {
    pub fn zero(rank: usize) -> Self {
        Self {
            roots: BTreeMap::new(),
            cartan: vec![Rational::zero(); rank],
        }
    }

    pub fn root_vector(rank: usize, id: RootId) -> Self {
        let mut e = Self::zero(rank);
        e.roots.insert(id, Rational::one());
        e
    }

    pub fn cartan_basis(rank: usize, i: usize) -> Self {
        let mut e = Self::zero(rank);
        e.cartan[i] = Rational::one();
        e
    }

    /// `H_α = Σ_i c_i H_{α_i}` where `α = Σ_i c_i α_i` (coroots equal roots
    /// in the simply-laced normalization).
    pub fn coroot(root: &Root) -> Self {
        let mut e = Self::zero(root.rank());
        for (h, &c) in e.cartan.iter_mut().zip(root.coords()) {
            *h = Rational::from_integer(c.into());
        }
        e
    }

    pub fn basis(rank: usize, b: BasisElement) -> Self {
        match b {
            BasisElement::Root(id) => Self::root_vector(rank, id),
            BasisElement::Cartan(i) => Self::cartan_basis(rank, i),
        }
    }

    pub fn rank(&self) -> usize {
        self.cartan.len()
    }

    pub fn root_part(&self) -> &BTreeMap<RootId, Rational> {
        &self.roots
    }

    pub fn cartan_part(&self) -> &[Rational] {
        &self.cartan
    }

    pub fn coeff(&self, b: BasisElement) -> Rational {
        match b {
            BasisElement::Root(id) => self.roots.get(&id).cloned().unwrap_or_else(Rational::zero),
            BasisElement::Cartan(i) => self.cartan[i].clone(),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.roots.is_empty() && self.cartan.iter().all(Zero::is_zero)
    }

    pub fn has_cartan_part(&self) -> bool {
        self.cartan.iter().any(|c| !c.is_zero())
    }

    /// Nonzero coordinates over the basis, roots first.
    pub fn terms(&self) -> impl Iterator<Item = (BasisElement, &Rational)> {
        self.roots
            .iter()
            .map(|(id, c)| (BasisElement::Root(*id), c))
            .chain(
                self.cartan
                    .iter()
                    .enumerate()
                    .filter(|(_, c)| !c.is_zero())
                    .map(|(i, c)| (BasisElement::Cartan(i), c)),
            )
    }

    pub fn add_term(&mut self, b: BasisElement, c: &Rational) {
        if c.is_zero() {
            return;
        }
        match b {
            BasisElement::Root(id) => {
                let entry = self.roots.entry(id).or_insert_with(Rational::zero);
                *entry += c;
                if entry.is_zero() {
                    self.roots.remove(&id);
                }
            }
            BasisElement::Cartan(i) => self.cartan[i] += c,
        }
    }

    pub fn add_scaled(&mut self, other: &LieElement, c: &Rational) {
        for (b, v) in other.terms() {
            self.add_term(b, &(v * c));
        }
    }

    pub fn add(&self, other: &LieElement) -> LieElement {
        let mut out = self.clone();
        out.add_scaled(other, &Rational::one());
        out
    }

    pub fn sub(&self, other: &LieElement) -> LieElement {
        let mut out = self.clone();
        out.add_scaled(other, &-Rational::one());
        out
    }

    pub fn scale(&self, c: &Rational) -> LieElement {
        let mut out = LieElement::zero(self.rank());
        out.add_scaled(self, c);
        out
    }
}

impl fmt::Display for LieElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (b, c) in self.terms() {
            let name = match b {
                BasisElement::Root(id) => format!("X#{}", id.0),
                BasisElement::Cartan(i) => format!("H{}", i + 1),
            };
            if !first {
                write!(f, " + ")?;
            }
            write!(f, "{c}*{name}")?;
            first = false;
        }
        Ok(())
    }
}

/// How extraspecial pairs are signed when building the table.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SignChoice {
    /// `N = +1` on every extraspecial pair.
    AllPositive,
    /// `N = -1` on every extraspecial pair.
    AllNegative,
    /// Independent pseudo-random signs from a seed.
    Seeded(u64),
}

/// The complete bracket table of g.
#[derive(Clone, Debug)]
pub struct StructureTable {
    rs: RootSystem,
    /// `N_{α,β}` flattened over root ids; 0 where `α+β` is not a root.
    n: Vec<i8>,
}

/// Bracket of two root vectors.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum RootBracket {
    Zero,
    /// `N · X_{α+β}`.
    Root(i64, RootId),
    /// `H_α` (when `β = -α`).
    Coroot(RootId),
}

/// Bimultiplicative cocycle `ε(α, β) = (-1)^{Σ a_i b_i + Σ_{i<j, linked} a_i b_j}`.
fn cocycle(cartan: &[Vec<i64>], a: &[i64], b: &[i64]) -> i64 {
    let n = a.len();
    let mut e = 0i64;
    for i in 0..n {
        e += a[i] * b[i];
        for j in i + 1..n {
            if cartan[i][j] == -1 {
                e += a[i] * b[j];
            }
        }
    }
    if e.rem_euclid(2) == 0 {
        1
    } else {
        -1
    }
}

/// The extraspecial pair of a non-simple positive root `δ`: the smallest
/// positive `α` (in the canonical order) with `δ - α` a positive root.
pub fn extraspecial_pair(rs: &RootSystem, delta: RootId) -> Option<(RootId, RootId)> {
    let p = rs.num_positive();
    (0..p).map(RootId).find_map(|a| {
        let b = rs.sum_id(delta, rs.neg_id(a))?;
        rs.is_positive_id(b).then_some((a, b))
    })
}

pub fn build_chevalley(rs: &RootSystem) -> Result<StructureTable> {
    build_chevalley_with(rs, SignChoice::AllPositive)
}

pub fn build_chevalley_with(rs: &RootSystem, choice: SignChoice) -> Result<StructureTable> {
    let total = rs.roots().len();
    let p = rs.num_positive();
    let sgn0 = |id: RootId| if rs.is_positive_id(id) { 1i64 } else { -1 };

    // X_α = E_α (α > 0), X_{-α} = -E_{-α} turns the cocycle algebra's
    // [E_α, E_{-α}] = -α into [X_α, X_{-α}] = H_α.
    let mut raw = vec![0i64; total * total];
    for a in 0..total {
        for b in 0..total {
            let (ia, ib) = (RootId(a), RootId(b));
            if let Some(c) = rs.sum_id(ia, ib) {
                let eps = cocycle(rs.cartan(), rs.root(ia).coords(), rs.root(ib).coords());
                raw[a * total + b] = sgn0(ia) * sgn0(ib) * sgn0(c) * eps;
            }
        }
    }

    let mut rng = match choice {
        SignChoice::Seeded(seed) => Some(ChaCha8Rng::seed_from_u64(seed)),
        _ => None,
    };
    let mut sigma = vec![1i64; p];
    for d in 0..p {
        let delta = RootId(d);
        let Some((a, b)) = extraspecial_pair(rs, delta) else {
            continue;
        };
        let want = match choice {
            SignChoice::AllPositive => 1,
            SignChoice::AllNegative => -1,
            SignChoice::Seeded(_) => {
                if rng.as_mut().expect("seeded rng").gen_bool(0.5) {
                    1
                } else {
                    -1
                }
            }
        };
        sigma[d] = want * sigma[a.0] * sigma[b.0] * raw[a.0 * total + b.0];
    }
    let sig = |id: RootId| sigma[id.0 % p];

    let mut n = vec![0i8; total * total];
    for a in 0..total {
        for b in 0..total {
            let (ia, ib) = (RootId(a), RootId(b));
            if let Some(c) = rs.sum_id(ia, ib) {
                n[a * total + b] = (sig(ia) * sig(ib) * sig(c) * raw[a * total + b]) as i8;
            }
        }
    }

    let tab = StructureTable { rs: rs.clone(), n };
    tab.check_signs()?;
    if let SignChoice::AllPositive | SignChoice::AllNegative = choice {
        let want = if choice == SignChoice::AllPositive {
            1
        } else {
            -1
        };
        for d in 0..p {
            if let Some((a, b)) = extraspecial_pair(rs, RootId(d)) {
                if tab.n(a, b) != Some(want) {
                    return Err(Error::Inconsistent(format!(
                        "extraspecial sign for {} not applied",
                        rs.root(RootId(d))
                    )));
                }
            }
        }
    }
    Ok(tab)
}

impl StructureTable {
    pub fn root_system(&self) -> &RootSystem {
        &self.rs
    }

    pub fn algebra(&self) -> AlgebraType {
        self.rs.algebra()
    }

    pub fn rank(&self) -> usize {
        self.rs.rank()
    }

    /// Dimension of g.
    pub fn dim(&self) -> usize {
        self.rs.roots().len() + self.rank()
    }

    /// Basis in canonical order: root vectors by root id, then `H_{α_i}`.
    pub fn basis(&self) -> Vec<BasisElement> {
        (0..self.rs.roots().len())
            .map(|i| BasisElement::Root(RootId(i)))
            .chain((0..self.rank()).map(BasisElement::Cartan))
            .collect()
    }

    /// `N_{α,β}`, defined exactly when `α + β` is a root.
    pub fn n(&self, a: RootId, b: RootId) -> Option<i64> {
        let v = self.n[a.0 * self.rs.roots().len() + b.0];
        (v != 0).then_some(v as i64)
    }

    pub fn root_bracket(&self, a: RootId, b: RootId) -> RootBracket {
        if b == self.rs.neg_id(a) {
            return RootBracket::Coroot(a);
        }
        match self.rs.sum_id(a, b) {
            Some(c) => RootBracket::Root(self.n(a, b).expect("structure constant"), c),
            None => RootBracket::Zero,
        }
    }

    /// `[H_{α_i}, X_β] = (β, α_i) X_β`.
    pub fn cartan_eigen(&self, i: usize, beta: RootId) -> i64 {
        self.rs.pairing_simple(beta, i)
    }

    /// Bracket of two basis elements as a sparse integer combination.
    pub fn bracket_basis(&self, x: BasisElement, y: BasisElement) -> Vec<(BasisElement, i64)> {
        use BasisElement::*;
        match (x, y) {
            (Cartan(_), Cartan(_)) => vec![],
            (Cartan(i), Root(b)) => match self.cartan_eigen(i, b) {
                0 => vec![],
                v => vec![(Root(b), v)],
            },
            (Root(a), Cartan(j)) => match self.cartan_eigen(j, a) {
                0 => vec![],
                v => vec![(Root(a), -v)],
            },
            (Root(a), Root(b)) => match self.root_bracket(a, b) {
                RootBracket::Zero => vec![],
                RootBracket::Root(c, id) => vec![(Root(id), c)],
                RootBracket::Coroot(a) => self
                    .rs
                    .root(a)
                    .coords()
                    .iter()
                    .enumerate()
                    .filter(|(_, &c)| c != 0)
                    .map(|(i, &c)| (Cartan(i), c))
                    .collect(),
            },
        }
    }

    /// The Lie bracket, extended bilinearly.
    pub fn bracket(&self, x: &LieElement, y: &LieElement) -> LieElement {
        let mut out = LieElement::zero(self.rank());
        for (bx, cx) in x.terms() {
            for (by, cy) in y.terms() {
                let c = cx * cy;
                for (b, k) in self.bracket_basis(bx, by) {
                    out.add_term(b, &(&c * Rational::from_integer(k.into())));
                }
            }
        }
        out
    }

    /// The invariant form normalized by `B(X_α, X_{-α}) = 1`.
    pub fn killing_form(&self, x: &LieElement, y: &LieElement) -> Rational {
        let mut acc = Rational::zero();
        for (id, c) in x.root_part() {
            if let Some(d) = y.root_part().get(&self.rs.neg_id(*id)) {
                acc += c * d;
            }
        }
        let cart = self.rs.cartan();
        for (i, hi) in x.cartan_part().iter().enumerate() {
            if hi.is_zero() {
                continue;
            }
            for (j, hj) in y.cartan_part().iter().enumerate() {
                if cart[i][j] != 0 {
                    acc += hi * hj * Rational::from_integer(cart[i][j].into());
                }
            }
        }
        acc
    }

    fn check_signs(&self) -> Result<()> {
        let total = self.rs.roots().len();
        for a in 0..total {
            for b in 0..total {
                let (ia, ib) = (RootId(a), RootId(b));
                let Some(v) = self.n(ia, ib) else { continue };
                if v.abs() != 1 {
                    return Err(Error::Inconsistent(format!(
                        "|N| = {} at ({a},{b})",
                        v.abs()
                    )));
                }
                if self.n(ib, ia) != Some(-v) {
                    return Err(Error::Inconsistent(format!(
                        "antisymmetry fails at ({a},{b})"
                    )));
                }
                if self.n(self.rs.neg_id(ia), self.rs.neg_id(ib)) != Some(-v) {
                    return Err(Error::Inconsistent(format!(
                        "N(-a,-b) != -N(a,b) at ({a},{b})"
                    )));
                }
            }
        }
        Ok(())
    }

    /// Jacobi residual `[[x,y],z] + [[y,z],x] + [[z,x],y]` on basis elements.
    pub fn jacobi_residual(
        &self,
        x: BasisElement,
        y: BasisElement,
        z: BasisElement,
    ) -> Vec<(BasisElement, i64)> {
        let mut acc: BTreeMap<BasisElement, i64> = BTreeMap::new();
        for (p, q, r) in [(x, y, z), (y, z, x), (z, x, y)] {
            for (b, c) in self.bracket_basis(p, q) {
                for (b2, c2) in self.bracket_basis(b, r) {
                    *acc.entry(b2).or_insert(0) += c * c2;
                }
            }
        }
        acc.into_iter().filter(|(_, v)| *v != 0).collect()
    }

    /// Checks Jacobi on every basis triple. Returns the number of triples.
    pub fn check_jacobi(&self) -> Result<usize> {
        let basis = self.basis();
        let mut count = 0;
        for &x in &basis {
            for &y in &basis {
                for &z in &basis {
                    count += 1;
                    if !self.jacobi_residual(x, y, z).is_empty() {
                        return Err(Error::Inconsistent(format!(
                            "Jacobi fails on ({x:?}, {y:?}, {z:?})"
                        )));
                    }
                }
            }
        }
        Ok(count)
    }

    /// Jacobi on `samples` seeded random basis triples.
    pub fn check_jacobi_sampled(&self, samples: usize, seed: u64) -> Result<usize> {
        let basis = self.basis();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        for _ in 0..samples {
            let pick = |rng: &mut ChaCha8Rng| basis[rng.gen_range(0..basis.len())];
            let (x, y, z) = (pick(&mut rng), pick(&mut rng), pick(&mut rng));
            if !self.jacobi_residual(x, y, z).is_empty() {
                return Err(Error::Inconsistent(format!(
                    "Jacobi fails on ({x:?}, {y:?}, {z:?})"
                )));
            }
        }
        Ok(samples)
    }

    /// Full Jacobi check when g is small, a seeded spot-check otherwise.
    pub fn validate(&self) -> Result<()> {
        self.check_signs()?;
        if self.dim() <= 80 {
            self.check_jacobi()?;
        } else {
            self.check_jacobi_sampled(200_000, 0x5eed)?;
        }
        Ok(())
    }

    /// Writes one `alpha_coords beta_coords N` record per line for every
    /// ordered pair of roots whose sum is a root.
    pub fn write_cache<W: Write>(&self, mut w: W) -> Result<()> {
        writeln!(w, "# structure constants for {}", self.algebra())?;
        let total = self.rs.roots().len();
        for a in 0..total {
            for b in 0..total {
                let (ia, ib) = (RootId(a), RootId(b));
                if let Some(v) = self.n(ia, ib) {
                    let fmt = |r: &Root| {
                        r.coords()
                            .iter()
                            .map(|c| c.to_string())
                            .collect::<Vec<_>>()
                            .join(" ")
                    };
                    writeln!(
                        w,
                        "{} {} {}",
                        fmt(self.rs.root(ia)),
                        fmt(self.rs.root(ib)),
                        v
                    )?;
                }
            }
        }
        Ok(())
    }

    /// Parses a cache file for `rs`, then re-validates signs and Jacobi.
    /// Any defect is reported as [`Error::CacheCorrupt`].
    pub fn read_cache<R: BufRead>(rs: &RootSystem, r: R) -> Result<StructureTable> {
        let n_rank = rs.rank();
        let total = rs.roots().len();
        let mut n = vec![0i8; total * total];
        let corrupt = |line: usize, reason: String| Error::CacheCorrupt { line, reason };
        for (lineno, line) in r.lines().enumerate() {
            let lineno = lineno + 1;
            let line = line?;
            let line = line.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let nums: Vec<i64> = line
                .split_whitespace()
                .map(|t| t.parse::<i64>())
                .collect::<std::result::Result<_, _>>()
                .map_err(|e| corrupt(lineno, format!("bad integer: {e}")))?;
            if nums.len() != 2 * n_rank + 1 {
                return Err(corrupt(
                    lineno,
                    format!("expected {} fields, found {}", 2 * n_rank + 1, nums.len()),
                ));
            }
            let a = Root::new(nums[..n_rank].to_vec());
            let b = Root::new(nums[n_rank..2 * n_rank].to_vec());
            let v = nums[2 * n_rank];
            let ia = rs
                .id_of(&a)
                .ok_or_else(|| corrupt(lineno, format!("{a} is not a root")))?;
            let ib = rs
                .id_of(&b)
                .ok_or_else(|| corrupt(lineno, format!("{b} is not a root")))?;
            if rs.sum_id(ia, ib).is_none() {
                return Err(corrupt(lineno, format!("{a} + {b} is not a root")));
            }
            if v.abs() != 1 {
                return Err(corrupt(lineno, format!("N = {v} is not ±1")));
            }
            let slot = &mut n[ia.0 * total + ib.0];
            if *slot != 0 {
                return Err(corrupt(lineno, format!("duplicate record for ({a}, {b})")));
            }
            *slot = v as i8;
        }
        for a in 0..total {
            for b in 0..total {
                if rs.sum_id(RootId(a), RootId(b)).is_some() && n[a * total + b] == 0 {
                    return Err(corrupt(
                        0,
                        format!(
                            "missing record for ({}, {})",
                            rs.root(RootId(a)),
                            rs.root(RootId(b))
                        ),
                    ));
                }
            }
        }
        let tab = StructureTable { rs: rs.clone(), n };
        tab.validate().map_err(|e| corrupt(0, e.to_string()))?;
        Ok(tab)
    }

    /// True if both tables have identical structure constants.
    pub fn same_constants(&self, other: &StructureTable) -> bool {
        self.n == other.n
    }

    /// Largest `|N|` in the table (1 for simply-laced algebras).
    pub fn max_abs_n(&self) -> i64 {
        self.n.iter().map(|v| (*v as i64).abs()).max().unwrap_or(0)
    }
}

/// Convenience: the rational `N_{α,β}`.
pub fn n_rational(tab: &StructureTable, a: RootId, b: RootId) -> Option<Rational> {
    tab.n(a, b).map(|v| Rational::from_integer(v.into()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rootsys::build_root_system;

    fn table(name: &str) -> StructureTable {
        build_chevalley(&build_root_system(name.parse().unwrap())).unwrap()
    }

    fn q(v: i64) -> Rational {
        Rational::from_integer(v.into())
    }

    #[test]
    fn a2_constants() {
        let tab = table("A2");
        let (a1, a2) = (RootId(0), RootId(1));
        assert_eq!(tab.n(a1, a2), Some(1));
        assert_eq!(tab.n(a2, a1), Some(-1));
        assert_eq!(tab.n(a1, a1), None);
    }

    #[test]
    fn sl2_and_cartan_action() {
        let tab = table("A2");
        let rs = tab.root_system();
        let x1 = LieElement::root_vector(2, RootId(0));
        let y1 = LieElement::root_vector(2, rs.neg_id(RootId(0)));
        assert_eq!(tab.bracket(&x1, &y1), LieElement::cartan_basis(2, 0));
        let h1 = LieElement::cartan_basis(2, 0);
        let x2 = LieElement::root_vector(2, RootId(1));
        assert_eq!(tab.bracket(&h1, &x2), x2.scale(&q(-1)));
        assert!(tab.bracket(&x1, &x1).is_zero());
    }

    #[test]
    fn jacobi_exhaustive_small() {
        for name in ["A2", "A3", "D4"] {
            let tab = table(name);
            let n = tab.check_jacobi().unwrap();
            assert_eq!(n, tab.dim().pow(3));
        }
    }

    #[test]
    fn jacobi_sampled_exceptional() {
        for name in ["E6", "E7", "E8"] {
            table(name).check_jacobi_sampled(20_000, 7).unwrap();
        }
    }

    #[test]
    fn alternative_signs_are_valid() {
        let rs = build_root_system("D4".parse().unwrap());
        for choice in [
            SignChoice::AllNegative,
            SignChoice::Seeded(3),
            SignChoice::Seeded(11),
        ] {
            let tab = build_chevalley_with(&rs, choice).unwrap();
            tab.check_jacobi().unwrap();
            assert_eq!(tab.max_abs_n(), 1);
        }
        let a = build_chevalley_with(&rs, SignChoice::AllPositive).unwrap();
        let b = build_chevalley_with(&rs, SignChoice::AllNegative).unwrap();
        assert!(!a.same_constants(&b));
    }

    #[test]
    fn killing_form_values_and_invariance() {
        let tab = table("A2");
        let rs = tab.root_system();
        let g = rs.gamma_id();
        let xg = LieElement::root_vector(2, g);
        let yg = LieElement::root_vector(2, rs.neg_id(g));
        assert!(tab.killing_form(&xg, &yg).is_one());
        let h1 = LieElement::cartan_basis(2, 0);
        assert_eq!(tab.killing_form(&h1, &h1), q(2));

        let x1 = LieElement::root_vector(2, RootId(0));
        let x2 = LieElement::root_vector(2, RootId(1));
        let lhs = tab.killing_form(&tab.bracket(&x1, &x2), &yg);
        let rhs = tab.killing_form(&x2, &tab.bracket(&x1, &yg));
        assert!((lhs + rhs).is_zero());
    }

    #[test]
    fn cache_round_trip_and_corruption() {
        let tab = table("A3");
        let mut buf = Vec::new();
        tab.write_cache(&mut buf).unwrap();
        let loaded = StructureTable::read_cache(tab.root_system(), buf.as_slice()).unwrap();
        assert!(loaded.same_constants(&tab));

        // Flip a single sign: antisymmetry (and Jacobi) must reject it.
        let text = String::from_utf8(buf).unwrap();
        let mut lines: Vec<String> = text.lines().map(String::from).collect();
        let last = lines.len() - 1;
        let flipped = if lines[last].ends_with(" -1") {
            lines[last].trim_end_matches("-1").to_string() + "1"
        } else {
            lines[last].trim_end_matches('1').to_string() + "-1"
        };
        lines[last] = flipped;
        let bad = lines.join("\n");
        assert!(matches!(
            StructureTable::read_cache(tab.root_system(), bad.as_bytes()),
            Err(Error::CacheCorrupt { .. })
        ));

        let missing = text.lines().take(5).collect::<Vec<_>>().join("\n");
        assert!(matches!(
            StructureTable::read_cache(tab.root_system(), missing.as_bytes()),
            Err(Error::CacheCorrupt { .. })
        ));
        assert!(matches!(
            StructureTable::read_cache(tab.root_system(), "1 0 0 x 1 0 1".as_bytes()),
            Err(Error::CacheCorrupt { line: 1, .. })
        ));
    }
}
