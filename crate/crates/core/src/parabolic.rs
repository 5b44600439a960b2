//! The Heisenberg parabolic `q = l ⊕ n` and the grading of g by `ad(H_γ)`:
//! `g = z(n̄) ⊕ V⁻ ⊕ l ⊕ V⁺ ⊕ z(n)` with eigenvalues −2, …, 2.

use num_traits::Zero;

use crate::chevalley::{BasisElement, LieElement, StructureTable};
use crate::error::{Error, Result};
use crate::rootsys::{Root, RootId, RootSystem};
use crate::Rational;

#[derive(Clone, Debug)]
pub struct Grading {
    gamma: RootId,
    neg_gamma: RootId,
    vplus: Vec<RootId>,
    vminus: Vec<RootId>,
    levi: Vec<RootId>,
    levi_positive: Vec<RootId>,
    /// `(β, γ)` for every root id.
    grade: Vec<i64>,
    rank: usize,
}

/// Partitions the roots by `(β, γ) ∈ {−2, −1, 0, 1, 2}`.
pub fn grade(tab: &StructureTable) -> Grading {
    let rs = tab.root_system();
    let gamma = rs.gamma_id();
    let grade: Vec<i64> = (0..rs.roots().len())
        .map(|i| rs.inner_ids(RootId(i), gamma))
        .collect();
    let p = rs.num_positive();
    let vplus: Vec<RootId> = (0..p).map(RootId).filter(|id| grade[id.0] == 1).collect();
    let vminus = vplus.iter().map(|&id| rs.neg_id(id)).collect();
    let levi: Vec<RootId> = (0..rs.roots().len())
        .map(RootId)
        .filter(|id| grade[id.0] == 0)
        .collect();
    let levi_positive = levi
        .iter()
        .copied()
        .filter(|&id| rs.is_positive_id(id))
        .collect();
    Grading {
        gamma,
        neg_gamma: rs.neg_id(gamma),
        vplus,
        vminus,
        levi,
        levi_positive,
        grade,
        rank: rs.rank(),
    }
}

impl Grading {
    pub fn gamma(&self) -> RootId {
        self.gamma
    }

    pub fn neg_gamma(&self) -> RootId {
        self.neg_gamma
    }

    /// `Δ(V⁺)` in the canonical root order.
    pub fn vplus(&self) -> &[RootId] {
        &self.vplus
    }

    /// `Δ(V⁻)`, listed as the negatives of [`Grading::vplus`].
    pub fn vminus(&self) -> &[RootId] {
        &self.vminus
    }

    /// `Δ(l)`: roots orthogonal to `γ`.
    pub fn levi_roots(&self) -> &[RootId] {
        &self.levi
    }

    pub fn levi_positive(&self) -> &[RootId] {
        &self.levi_positive
    }

    /// `Δ(n) = Δ(V⁺) ∪ {γ}`.
    pub fn nilradical(&self) -> Vec<RootId> {
        let mut out = self.vplus.clone();
        out.push(self.gamma);
        out
    }

    /// `(β, γ)`, the `ad(H_γ)`-eigenvalue of `X_β`.
    pub fn grade_of(&self, id: RootId) -> i64 {
        self.grade[id.0]
    }

    /// Dimensions of `(z(n̄), V⁻, l, V⁺, z(n))`.
    pub fn dims(&self) -> [usize; 5] {
        [
            1,
            self.vminus.len(),
            self.levi.len() + self.rank,
            self.vplus.len(),
            1,
        ]
    }

    /// Basis of l: Cartan elements first, then `X_δ` for `δ ∈ Δ(l)`.
    pub fn levi_basis(&self) -> Vec<BasisElement> {
        (0..self.rank)
            .map(BasisElement::Cartan)
            .chain(self.levi.iter().map(|&id| BasisElement::Root(id)))
            .collect()
    }

    pub fn in_levi(&self, z: &LieElement) -> bool {
        z.root_part().keys().all(|id| self.grade[id.0] == 0)
    }

    pub fn in_vminus(&self, y: &LieElement) -> bool {
        !y.has_cartan_part() && y.root_part().keys().all(|id| self.grade[id.0] == -1)
    }

    pub fn in_vplus(&self, x: &LieElement) -> bool {
        !x.has_cartan_part() && x.root_part().keys().all(|id| self.grade[id.0] == 1)
    }

    pub fn is_vplus(&self, id: RootId) -> bool {
        self.grade[id.0] == 1 && id != self.gamma
    }
}

/// `dχ(Z) = γ(Z_h)` for `Z ∈ l`; root vectors of l are killed.
pub fn dchi(tab: &StructureTable, grad: &Grading, z: &LieElement) -> Result<Rational> {
    if !grad.in_levi(z) {
        return Err(Error::NotInLevi);
    }
    Ok(dchi_cartan(tab.root_system(), z.cartan_part()))
}

/// `γ(H)` for `H = Σ h_i H_{α_i}`.
pub fn dchi_cartan(rs: &RootSystem, h: &[Rational]) -> Rational {
    let g = rs.gamma_id();
    let mut acc = Rational::zero();
    for (i, hi) in h.iter().enumerate() {
        if !hi.is_zero() {
            acc += hi * Rational::from_integer(rs.pairing_simple(g, i).into());
        }
    }
    acc
}

/// The unique `β' = γ − β ∈ Δ(V⁺)` pairing with `β` under the bracket.
pub fn gamma_partner(tab: &StructureTable, grad: &Grading, beta: RootId) -> Result<RootId> {
    let rs = tab.root_system();
    if !grad.is_vplus(beta) {
        return Err(Error::NotInVplus(rs.root(beta).to_string()));
    }
    rs.sum_id(grad.gamma, rs.neg_id(beta))
        .filter(|&p| grad.is_vplus(p))
        .ok_or_else(|| Error::Inconsistent(format!("no γ-partner for {}", rs.root(beta))))
}

/// `M_{α,β}(Z)`: the coefficient of `X_β` in `[Z, X_α]`.
pub fn m_coeff(
    tab: &StructureTable,
    grad: &Grading,
    z: &LieElement,
    alpha: RootId,
    beta: RootId,
) -> Result<Rational> {
    let rs = tab.root_system();
    if !grad.in_levi(z) {
        return Err(Error::NotInLevi);
    }
    for r in [alpha, beta] {
        if !grad.is_vplus(r) {
            return Err(Error::NotInVplus(rs.root(r).to_string()));
        }
    }
    let mut acc = Rational::zero();
    if alpha == beta {
        for (i, h) in z.cartan_part().iter().enumerate() {
            if !h.is_zero() {
                acc += h * Rational::from_integer(tab.cartan_eigen(i, alpha).into());
            }
        }
    }
    for (delta, c) in z.root_part() {
        if rs.sum_id(*delta, alpha) == Some(beta) {
            acc += c * Rational::from_integer(tab.n(*delta, alpha).expect("root sum").into());
        }
    }
    Ok(acc)
}

/// Connected components of the Dynkin diagram after deleting every simple
/// root that is not orthogonal to `γ`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DeletedDiagram {
    pub components: Vec<Vec<usize>>,
}

pub fn deleted_components(rs: &RootSystem) -> DeletedDiagram {
    let n = rs.rank();
    let g = rs.gamma_id();
    let kept: Vec<bool> = (0..n).map(|i| rs.pairing_simple(g, i) == 0).collect();
    let mut seen = vec![false; n];
    let mut components = Vec::new();
    for start in 0..n {
        if !kept[start] || seen[start] {
            continue;
        }
        let mut comp = vec![start];
        seen[start] = true;
        let mut stack = vec![start];
        while let Some(i) = stack.pop() {
            for j in 0..n {
                if kept[j] && !seen[j] && rs.cartan()[i][j] != 0 {
                    seen[j] = true;
                    comp.push(j);
                    stack.push(j);
                }
            }
        }
        comp.sort_unstable();
        components.push(comp);
    }
    DeletedDiagram { components }
}

/// Basis of the simple ideal `l(C)` of `[l, l]` for a deleted-diagram
/// component `C`: `H_{α_i}` for `i ∈ C`, then root vectors supported on `C`.
pub fn component_ideal_basis(rs: &RootSystem, component: &[usize]) -> Vec<BasisElement> {
    let supported = |r: &Root| {
        r.coords()
            .iter()
            .enumerate()
            .all(|(i, &c)| c == 0 || component.contains(&i))
    };
    component
        .iter()
        .map(|&i| BasisElement::Cartan(i))
        .chain(
            rs.roots()
                .iter()
                .enumerate()
                .filter(|(_, r)| supported(r))
                .map(|(i, _)| BasisElement::Root(RootId(i))),
        )
        .collect()
}

/// An irreducible l-submodule of `V⁻`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Submodule {
    /// Roots in `Δ(V⁻)` order.
    pub roots: Vec<RootId>,
    /// The weight `ϖ` maximal against `Δ⁺(l)`.
    pub highest: RootId,
}

impl Submodule {
    pub fn highest_weight<'a>(&self, rs: &'a RootSystem) -> &'a Root {
        rs.root(self.highest)
    }
}

/// Splits `Δ(V⁻)` into orbits under addition of `Δ(l)`; weight spaces of
/// `V⁻` are one-dimensional so each orbit spans an irreducible l-module.
pub fn vminus_components(tab: &StructureTable, grad: &Grading) -> Result<Vec<Submodule>> {
    let rs = tab.root_system();
    let vm = grad.vminus();
    let mut label = vec![usize::MAX; vm.len()];
    let pos_in = |id: RootId| vm.iter().position(|&r| r == id);
    let mut count = 0;
    for start in 0..vm.len() {
        if label[start] != usize::MAX {
            continue;
        }
        label[start] = count;
        let mut stack = vec![start];
        while let Some(k) = stack.pop() {
            for &d in grad.levi_roots() {
                if let Some(j) = rs.sum_id(vm[k], d).and_then(pos_in) {
                    if label[j] == usize::MAX {
                        label[j] = count;
                        stack.push(j);
                    }
                }
            }
        }
        count += 1;
    }
    let mut out = Vec::with_capacity(count);
    for c in 0..count {
        let roots: Vec<RootId> = (0..vm.len())
            .filter(|&k| label[k] == c)
            .map(|k| vm[k])
            .collect();
        let tops: Vec<RootId> = roots
            .iter()
            .copied()
            .filter(|&w| {
                grad.levi_positive()
                    .iter()
                    .all(|&d| rs.sum_id(w, d).is_none_or(|x| !roots.contains(&x)))
            })
            .collect();
        if tops.len() != 1 {
            return Err(Error::Inconsistent(format!(
                "component has {} maximal weights",
                tops.len()
            )));
        }
        out.push(Submodule {
            roots,
            highest: tops[0],
        });
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::chevalley::build_chevalley;
    use crate::rootsys::build_root_system;
    use num_traits::One;

    fn table(name: &str) -> StructureTable {
        build_chevalley(&build_root_system(name.parse().unwrap())).unwrap()
    }

    fn id(rs: &RootSystem, c: &[i64]) -> RootId {
        rs.id_of(&Root::new(c.to_vec())).unwrap()
    }

    #[test]
    fn grading_dims() {
        assert_eq!(grade(&table("A2")).dims(), [1, 2, 2, 2, 1]);
        assert_eq!(grade(&table("D4")).dims(), [1, 8, 10, 8, 1]);
        assert_eq!(grade(&table("A3")).dims()[3], 4);
        // The five dimensions add up to dim g.
        for name in ["A4", "D5", "E6", "E7"] {
            let tab = table(name);
            assert_eq!(grade(&tab).dims().iter().sum::<usize>(), tab.dim());
        }
    }

    #[test]
    fn dchi_values() {
        let tab = table("A2");
        let g = grade(&tab);
        let rs = tab.root_system();
        let hg = LieElement::coroot(rs.highest_root());
        assert_eq!(
            dchi(&tab, &g, &hg).unwrap(),
            Rational::from_integer(2.into())
        );
        assert!(dchi(&tab, &g, &LieElement::cartan_basis(2, 0))
            .unwrap()
            .is_one());
        let x = LieElement::root_vector(2, RootId(0));
        assert_eq!(dchi(&tab, &g, &x), Err(Error::NotInLevi));

        let d4 = table("D4");
        let gd = grade(&d4);
        for &d in gd.levi_roots() {
            let z = LieElement::root_vector(4, d);
            assert!(dchi(&d4, &gd, &z).unwrap().is_zero());
        }
    }

    #[test]
    fn partners() {
        let tab = table("A2");
        let g = grade(&tab);
        assert_eq!(gamma_partner(&tab, &g, RootId(0)).unwrap(), RootId(1));
        assert!(matches!(
            gamma_partner(&tab, &g, g.gamma()),
            Err(Error::NotInVplus(_))
        ));

        let d4 = table("D4");
        let gd = grade(&d4);
        let rs = d4.root_system();
        assert_eq!(
            gamma_partner(&d4, &gd, id(rs, &[1, 1, 0, 0])).unwrap(),
            id(rs, &[0, 1, 1, 1])
        );
    }

    #[test]
    fn m_coefficients() {
        let d4 = table("D4");
        let gd = grade(&d4);
        let rs = d4.root_system();
        let z = LieElement::root_vector(4, id(rs, &[0, 0, 1, 0]));
        let a = id(rs, &[1, 1, 0, 0]);
        for &b in gd.vplus() {
            let m = m_coeff(&d4, &gd, &z, a, b).unwrap();
            if b == id(rs, &[1, 1, 1, 0]) {
                assert!(m.is_one() || (-m).is_one());
            } else {
                assert!(m.is_zero());
            }
        }
        let h = LieElement::cartan_basis(4, 1);
        for &a in gd.vplus() {
            let expect = Rational::from_integer(d4.cartan_eigen(1, a).into());
            assert_eq!(m_coeff(&d4, &gd, &h, a, a).unwrap(), expect);
        }
        assert_eq!(
            m_coeff(&d4, &gd, &LieElement::root_vector(4, a), a, a),
            Err(Error::NotInLevi)
        );
    }

    #[test]
    fn deleted_diagrams() {
        let d4 = build_root_system("D4".parse().unwrap());
        assert_eq!(
            deleted_components(&d4).components,
            vec![vec![0], vec![2], vec![3]]
        );
        let a2 = build_root_system("A2".parse().unwrap());
        assert!(deleted_components(&a2).components.is_empty());
        let a3 = build_root_system("A3".parse().unwrap());
        assert_eq!(deleted_components(&a3).components, vec![vec![1]]);
        let d5 = build_root_system("D5".parse().unwrap());
        assert_eq!(
            deleted_components(&d5).components,
            vec![vec![0], vec![2, 3, 4]]
        );
    }

    #[test]
    fn vminus_decompositions() {
        let a2 = table("A2");
        let comps = vminus_components(&a2, &grade(&a2)).unwrap();
        assert_eq!(comps.len(), 2);
        assert!(comps.iter().all(|c| c.roots.len() == 1));

        let d4 = table("D4");
        let comps = vminus_components(&d4, &grade(&d4)).unwrap();
        assert_eq!(comps.len(), 1);
        assert_eq!(comps[0].roots.len(), 8);
        assert_eq!(
            comps[0].highest_weight(d4.root_system()).coords(),
            &[0, -1, 0, 0]
        );

        let a3 = table("A3");
        let comps = vminus_components(&a3, &grade(&a3)).unwrap();
        assert_eq!(comps.iter().map(|c| c.roots.len()).sum::<usize>(), 4);
    }

    #[test]
    fn heisenberg_properties() {
        for name in ["A2", "A4", "D4", "D5", "E6"] {
            let tab = table(name);
            let g = grade(&tab);
            let rs = tab.root_system();
            for &b in g.vplus() {
                // (β, γ) = 1 and the partner bracket lands on ±X_γ.
                assert_eq!(g.grade_of(b), 1);
                let p = gamma_partner(&tab, &g, b).unwrap();
                let br = tab.bracket(
                    &LieElement::root_vector(rs.rank(), b),
                    &LieElement::root_vector(rs.rank(), p),
                );
                assert_eq!(br.root_part().len(), 1);
                assert!(br.root_part().contains_key(&g.gamma()));
                for &c in g.vplus() {
                    if let Some(s) = rs.sum_id(b, c) {
                        assert_eq!(s, g.gamma());
                    }
                }
            }
        }
    }
}
