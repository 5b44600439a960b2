//! Simply-laced root systems over the simple-root basis.
//!
//! Roots are integer coordinate vectors over the simple roots; the inner
//! product is read off the Cartan matrix, normalized so that every root has
//! squared length 2. Simple roots follow Bourbaki numbering.

use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;

use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::Rational;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Series {
    A,
    D,
    E,
}

/// A simply-laced simple Lie algebra label such as `A2`, `D4` or `E8`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct AlgebraType {
    series: Series,
    rank: usize,
}

impl AlgebraType {
    pub fn new(series: Series, rank: usize) -> Result<Self> {
        let ok = match series {
            Series::A => rank >= 2,
            Series::D => rank >= 4,
            Series::E => (6..=8).contains(&rank),
        };
        if !ok {
            return Err(Error::UnsupportedAlgebra(format!("{series:?}{rank}")));
        }
        Ok(Self { series, rank })
    }

    pub fn series(&self) -> Series {
        self.series
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    /// Number of positive roots.
    pub fn positive_root_count(&self) -> usize {
        let n = self.rank;
        match (self.series, n) {
            (Series::A, _) => n * (n + 1) / 2,
            (Series::D, _) => n * (n - 1),
            (Series::E, 6) => 36,
            (Series::E, 7) => 63,
            (Series::E, _) => 120,
        }
    }

    /// Cartan matrix in Bourbaki numbering (symmetric, simply laced).
    pub fn cartan_matrix(&self) -> Vec<Vec<i64>> {
        let n = self.rank;
        let mut c = vec![vec![0i64; n]; n];
        for (i, row) in c.iter_mut().enumerate() {
            row[i] = 2;
        }
        let mut edge = |i: usize, j: usize| {
            c[i][j] = -1;
            c[j][i] = -1;
        };
        match self.series {
            Series::A => (0..n - 1).for_each(|i| edge(i, i + 1)),
            Series::D => {
                (0..n - 2).for_each(|i| edge(i, i + 1));
                edge(n - 3, n - 1);
            }
            Series::E => {
                edge(0, 2);
                edge(1, 3);
                (2..n - 1).for_each(|i| edge(i, i + 1));
            }
        }
        c
    }
}

impl fmt::Display for AlgebraType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}{}", self.series, self.rank)
    }
}

impl FromStr for AlgebraType {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let unsupported = || Error::UnsupportedAlgebra(s.to_string());
        let mut chars = s.chars();
        let letter = chars.next().ok_or_else(unsupported)?;
        let rank: usize = chars
            .as_str()
            .trim_start_matches('_')
            .parse()
            .map_err(|_| unsupported())?;
        let series = match letter.to_ascii_uppercase() {
            'A' => Series::A,
            'D' => Series::D,
            'E' => Series::E,
            _ => return Err(unsupported()),
        };
        AlgebraType::new(series, rank).map_err(|_| unsupported())
    }
}

/// A root, as integer coefficients over the simple roots.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Root(Vec<i64>);

impl Root {
    pub fn new(coords: Vec<i64>) -> Self {
        Root(coords)
    }

    pub fn simple(rank: usize, i: usize) -> Self {
        let mut c = vec![0; rank];
        c[i] = 1;
        Root(c)
    }

    pub fn coords(&self) -> &[i64] {
        &self.0
    }

    pub fn rank(&self) -> usize {
        self.0.len()
    }

    pub fn height(&self) -> i64 {
        self.0.iter().sum()
    }

    pub fn is_positive(&self) -> bool {
        self.0.iter().all(|&c| c >= 0) && self.0.iter().any(|&c| c > 0)
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&c| c == 0)
    }

    pub fn neg(&self) -> Root {
        Root(self.0.iter().map(|c| -c).collect())
    }

    pub fn add(&self, other: &Root) -> Root {
        Root(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    pub fn sub(&self, other: &Root) -> Root {
        Root(self.0.iter().zip(&other.0).map(|(a, b)| a - b).collect())
    }

    pub fn to_weight(&self) -> Weight {
        Weight(
            self.0
                .iter()
                .map(|&c| Rational::from_integer(c.into()))
                .collect(),
        )
    }
}

impl fmt::Display for Root {
    /// Renders as a signed sum of simple roots, e.g. `a1+2a2+a3+a4`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, &c) in self.0.iter().enumerate() {
            if c == 0 {
                continue;
            }
            let sign = if c < 0 {
                "-"
            } else if first {
                ""
            } else {
                "+"
            };
            let mag = c.abs();
            if mag == 1 {
                write!(f, "{sign}a{}", i + 1)?;
            } else {
                write!(f, "{sign}{mag}a{}", i + 1)?;
            }
            first = false;
        }
        Ok(())
    }
}

/// A rational weight over the simple-root basis.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Weight(pub Vec<Rational>);

impl Weight {
    pub fn zero(rank: usize) -> Self {
        Weight(vec![Rational::zero(); rank])
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn add(&self, other: &Weight) -> Weight {
        Weight(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    pub fn scale(&self, c: &Rational) -> Weight {
        Weight(self.0.iter().map(|a| a * c).collect())
    }
}

/// Index of a root inside a [`RootSystem`]. Positive roots come first in
/// the system's canonical order; the negative of positive root `k` has id
/// `k + |Δ⁺|`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct RootId(pub usize);

#[derive(Clone, Debug)]
pub struct RootSystem {
    ty: AlgebraType,
    cartan: Vec<Vec<i64>>,
    simples: Vec<Root>,
    positives: Vec<Root>,
    roots: Vec<Root>,
    index: HashMap<Root, RootId>,
    sums: Vec<Option<RootId>>,
    gamma: Root,
    rho: Weight,
}

/// Builds the positive system by closing the simple roots under addition of
/// simple roots. In a simply-laced system, `α + α_i` is a root exactly when
/// it has squared length 2.
pub fn build_root_system(ty: AlgebraType) -> RootSystem {
    let n = ty.rank();
    let cartan = ty.cartan_matrix();
    let simples: Vec<Root> = (0..n).map(|i| Root::simple(n, i)).collect();
    let norm = |r: &Root| quad(&cartan, r.coords(), r.coords());

    let mut positives = simples.clone();
    let mut seen: std::collections::HashSet<Root> = positives.iter().cloned().collect();
    let mut frontier = simples.clone();
    while !frontier.is_empty() {
        let mut next = Vec::new();
        for r in &frontier {
            for s in &simples {
                let cand = r.add(s);
                if norm(&cand) == 2 && seen.insert(cand.clone()) {
                    next.push(cand);
                }
            }
        }
        positives.extend(next.iter().cloned());
        frontier = next;
    }
    positives.sort_by(root_order);

    let mut roots = positives.clone();
    roots.extend(positives.iter().map(Root::neg));
    let index: HashMap<Root, RootId> = roots
        .iter()
        .enumerate()
        .map(|(i, r)| (r.clone(), RootId(i)))
        .collect();
    let total = roots.len();
    let mut sums = vec![None; total * total];
    for (i, a) in roots.iter().enumerate() {
        for (j, b) in roots.iter().enumerate() {
            sums[i * total + j] = index.get(&a.add(b)).copied();
        }
    }

    let gamma = positives.last().cloned().expect("nonempty positive system");
    let half = Rational::new(1.into(), 2.into());
    let mut rho = Weight::zero(n);
    for r in &positives {
        rho = rho.add(&r.to_weight().scale(&half));
    }

    RootSystem {
        ty,
        cartan,
        simples,
        positives,
        roots,
        index,
        sums,
        gamma,
        rho,
    }
}

/// Graded order: by height, then by coordinates in decreasing lexicographic
/// order (so the simple roots come out as α₁, α₂, …).
pub fn root_order(a: &Root, b: &Root) -> std::cmp::Ordering {
    a.height()
        .cmp(&b.height())
        .then_with(|| b.coords().cmp(a.coords()))
}

fn quad(c: &[Vec<i64>], v: &[i64], w: &[i64]) -> i64 {
    let mut acc = 0;
    for (i, vi) in v.iter().enumerate() {
        if *vi == 0 {
            continue;
        }
        for (j, wj) in w.iter().enumerate() {
            acc += vi * c[i][j] * wj;
        }
    }
    acc
}

impl RootSystem {
    pub fn algebra(&self) -> AlgebraType {
        self.ty
    }

    pub fn rank(&self) -> usize {
        self.ty.rank()
    }

    pub fn cartan(&self) -> &[Vec<i64>] {
        &self.cartan
    }

    pub fn simples(&self) -> &[Root] {
        &self.simples
    }

    pub fn positives(&self) -> &[Root] {
        &self.positives
    }

    /// All roots: positives in canonical order followed by their negatives.
    pub fn roots(&self) -> &[Root] {
        &self.roots
    }

    pub fn num_positive(&self) -> usize {
        self.positives.len()
    }

    pub fn root(&self, id: RootId) -> &Root {
        &self.roots[id.0]
    }

    pub fn id_of(&self, r: &Root) -> Option<RootId> {
        self.index.get(r).copied()
    }

    pub fn try_id(&self, r: &Root) -> Result<RootId> {
        if r.rank() != self.rank() {
            return Err(Error::DimensionMismatch {
                expected: self.rank(),
                got: r.rank(),
            });
        }
        self.id_of(r).ok_or_else(|| Error::NotARoot(r.to_string()))
    }

    pub fn simple_id(&self, i: usize) -> RootId {
        RootId(i)
    }

    pub fn neg_id(&self, id: RootId) -> RootId {
        let p = self.num_positive();
        if id.0 < p {
            RootId(id.0 + p)
        } else {
            RootId(id.0 - p)
        }
    }

    pub fn is_positive_id(&self, id: RootId) -> bool {
        id.0 < self.num_positive()
    }

    /// `a + b` when it is a root.
    pub fn sum_id(&self, a: RootId, b: RootId) -> Option<RootId> {
        self.sums[a.0 * self.roots.len() + b.0]
    }

    /// Integer inner product of two roots.
    pub fn inner_roots(&self, a: &Root, b: &Root) -> i64 {
        quad(&self.cartan, a.coords(), b.coords())
    }

    pub fn inner_ids(&self, a: RootId, b: RootId) -> i64 {
        self.inner_roots(self.root(a), self.root(b))
    }

    /// The bilinear form on weights given by the Cartan matrix.
    pub fn inner(&self, v: &Weight, w: &Weight) -> Result<Rational> {
        let n = self.rank();
        for len in [v.len(), w.len()] {
            if len != n {
                return Err(Error::DimensionMismatch {
                    expected: n,
                    got: len,
                });
            }
        }
        let mut acc = Rational::zero();
        for i in 0..n {
            if v.0[i].is_zero() {
                continue;
            }
            for j in 0..n {
                if self.cartan[i][j] != 0 {
                    acc += &v.0[i] * &w.0[j] * Rational::from_integer(self.cartan[i][j].into());
                }
            }
        }
        Ok(acc)
    }

    pub fn norm2(&self, v: &Weight) -> Result<Rational> {
        self.inner(v, v)
    }

    /// The highest root γ.
    pub fn highest_root(&self) -> &Root {
        &self.gamma
    }

    pub fn gamma_id(&self) -> RootId {
        RootId(self.num_positive() - 1)
    }

    /// Half the sum of the positive roots.
    pub fn rho(&self) -> &Weight {
        &self.rho
    }

    /// `β(H_{α_i}) = (β, α_i)`.
    pub fn pairing_simple(&self, beta: RootId, i: usize) -> i64 {
        let b = self.root(beta).coords();
        (0..self.rank()).map(|j| b[j] * self.cartan[j][i]).sum()
    }
}

pub fn inner(rs: &RootSystem, v: &Weight, w: &Weight) -> Result<Rational> {
    rs.inner(v, w)
}

pub fn highest_root(rs: &RootSystem) -> &Root {
    rs.highest_root()
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_traits::One;

    fn ty(s: &str) -> AlgebraType {
        s.parse().unwrap()
    }

    #[test]
    fn a2_positive_roots() {
        let rs = build_root_system(ty("A2"));
        let got: Vec<_> = rs.positives().iter().map(|r| r.coords().to_vec()).collect();
        assert_eq!(got, vec![vec![1, 0], vec![0, 1], vec![1, 1]]);
        assert_eq!(rs.highest_root().coords(), &[1, 1]);
    }

    #[test]
    fn counts_match_known_values() {
        for name in ["A2", "A3", "A5", "D4", "D5", "D6", "E6", "E7", "E8"] {
            let t = ty(name);
            let rs = build_root_system(t);
            assert_eq!(rs.num_positive(), t.positive_root_count(), "{name}");
        }
    }

    #[test]
    fn rejects_non_simply_laced() {
        for bad in ["B3", "C4", "F4", "G2", "A1", "D3", "E5", "E9", "", "D"] {
            assert!(
                matches!(
                    bad.parse::<AlgebraType>(),
                    Err(Error::UnsupportedAlgebra(_))
                ),
                "{bad}"
            );
        }
    }

    #[test]
    fn inner_products() {
        let rs = build_root_system(ty("A2"));
        let a1 = rs.simples()[0].to_weight();
        let a2 = rs.simples()[1].to_weight();
        assert_eq!(
            rs.inner(&a1, &a1).unwrap(),
            Rational::from_integer(2.into())
        );
        assert_eq!(
            rs.inner(&a1, &a2).unwrap(),
            Rational::from_integer((-1).into())
        );

        let d4 = build_root_system(ty("D4"));
        let g = d4.highest_root().to_weight();
        assert_eq!(
            d4.inner(&g, d4.rho()).unwrap(),
            Rational::from_integer(5.into())
        );
    }

    #[test]
    fn inner_dimension_mismatch() {
        let rs = build_root_system(ty("A2"));
        let err = rs.inner(&Weight::zero(3), &Weight::zero(2)).unwrap_err();
        assert!(matches!(err, Error::DimensionMismatch { .. }));
    }

    #[test]
    fn highest_roots() {
        let cases: [(&str, &[i64]); 4] = [
            ("A2", &[1, 1]),
            ("A3", &[1, 1, 1]),
            ("D4", &[1, 2, 1, 1]),
            ("D5", &[1, 2, 2, 1, 1]),
        ];
        for (name, g) in cases {
            let rs = build_root_system(ty(name));
            assert_eq!(rs.highest_root().coords(), g, "{name}");
            let gw = rs.highest_root().to_weight();
            assert_eq!(rs.norm2(&gw).unwrap(), Rational::from_integer(2.into()));
        }
    }

    #[test]
    fn rho_pairs_to_one_with_simples() {
        for name in ["A3", "D5", "E6", "E8"] {
            let rs = build_root_system(ty(name));
            for s in rs.simples() {
                assert!(rs.inner(&s.to_weight(), rs.rho()).unwrap().is_one());
            }
        }
    }

    #[test]
    fn roots_have_norm_two_and_uniform_sign() {
        let rs = build_root_system(ty("E7"));
        for r in rs.roots() {
            assert_eq!(rs.inner_roots(r, r), 2);
            let pos = r.coords().iter().all(|&c| c >= 0);
            let neg = r.coords().iter().all(|&c| c <= 0);
            assert!(pos ^ neg);
        }
    }

    #[test]
    fn gamma_is_dominant() {
        let rs = build_root_system(ty("E6"));
        let g = rs.highest_root();
        for r in rs.positives() {
            assert!(rs.inner_roots(g, r) >= 0);
            assert!(r.height() <= g.height());
        }
    }

    #[test]
    fn display() {
        assert_eq!(Root::new(vec![1, 2, 1, 1]).to_string(), "a1+2a2+a3+a4");
        assert_eq!(Root::new(vec![0, -1, -1]).to_string(), "-a2-a3");
    }
}
