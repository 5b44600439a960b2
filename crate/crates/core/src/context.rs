use crate::chevalley::{build_chevalley_with, SignChoice, StructureTable};
use crate::error::{Error, Result};
use crate::parabolic::{grade, vminus_components, Grading, Submodule};
use crate::rootsys::{build_root_system, AlgebraType, RootId, RootSystem};

/// Everything derived from one algebra that the Verma-module computations
/// need: the bracket table, the grading, and the PBW generators of `U(n̄)`.
///
/// Immutable after construction and `Sync`, so it can be shared across
/// threads.
#[derive(Clone, Debug)]
pub struct Context {
    tab: StructureTable,
    grad: Grading,
    /// PBW generators: `Δ(V⁻)` in canonical order, then `−γ`.
    gens: Vec<RootId>,
    gen_index: Vec<Option<usize>>,
    /// `[X_{g_i}, X_{g_j}] = comm[i][j] · X_{−γ}`, or 0.
    comm: Vec<i64>,
    /// `(γ, α_i)`, i.e. `dχ(H_{α_i})`.
    dchi_simple: Vec<i64>,
    components: Vec<Submodule>,
}

impl Context {
    pub fn new(ty: AlgebraType) -> Result<Self> {
        Self::with_signs(ty, SignChoice::AllPositive)
    }

    pub fn with_signs(ty: AlgebraType, choice: SignChoice) -> Result<Self> {
        let rs = build_root_system(ty);
        Self::from_table(build_chevalley_with(&rs, choice)?)
    }

    pub fn from_table(tab: StructureTable) -> Result<Self> {
        let grad = grade(&tab);
        let order = grad.vminus().to_vec();
        Self::assemble(tab, grad, order)
    }

    /// The same algebra with the `V⁻` generators of `U(n̄)` taken in a
    /// different PBW order. `order` must be a permutation of `Δ(V⁻)`.
    pub fn with_generator_order(&self, order: &[RootId]) -> Result<Self> {
        let mut sorted = order.to_vec();
        sorted.sort();
        let mut expected = self.grad.vminus().to_vec();
        expected.sort();
        if sorted != expected {
            return Err(Error::Inconsistent(
                "generator order is not a permutation of Δ(V⁻)".into(),
            ));
        }
        Self::assemble(self.tab.clone(), self.grad.clone(), order.to_vec())
    }

    fn assemble(tab: StructureTable, grad: Grading, mut gens: Vec<RootId>) -> Result<Self> {
        let rs = tab.root_system();
        gens.push(grad.neg_gamma());
        let mut gen_index = vec![None; rs.roots().len()];
        for (i, g) in gens.iter().enumerate() {
            gen_index[g.0] = Some(i);
        }
        let k = gens.len();
        let mut comm = vec![0i64; k * k];
        for i in 0..k {
            for j in 0..k {
                if rs.sum_id(gens[i], gens[j]) == Some(grad.neg_gamma()) {
                    comm[i * k + j] = tab.n(gens[i], gens[j]).expect("structure constant");
                }
            }
        }
        let g = rs.gamma_id();
        let dchi_simple = (0..rs.rank()).map(|i| rs.pairing_simple(g, i)).collect();
        let components = vminus_components(&tab, &grad)?;
        Ok(Self {
            tab,
            grad,
            gens,
            gen_index,
            comm,
            dchi_simple,
            components,
        })
    }

    pub fn table(&self) -> &StructureTable {
        &self.tab
    }

    pub fn root_system(&self) -> &RootSystem {
        self.tab.root_system()
    }

    pub fn grading(&self) -> &Grading {
        &self.grad
    }

    pub fn algebra(&self) -> AlgebraType {
        self.tab.algebra()
    }

    pub fn rank(&self) -> usize {
        self.tab.rank()
    }

    /// Irreducible l-submodules of `V⁻`.
    pub fn components(&self) -> &[Submodule] {
        &self.components
    }

    pub fn generators(&self) -> &[RootId] {
        &self.gens
    }

    pub fn num_generators(&self) -> usize {
        self.gens.len()
    }

    /// Position of `X_{root}` among the PBW generators, if it lies in `n̄`.
    pub fn generator_of(&self, root: RootId) -> Option<usize> {
        self.gen_index[root.0]
    }

    /// Index of `X_{−γ}`, always the last generator.
    pub fn central_generator(&self) -> usize {
        self.gens.len() - 1
    }

    pub(crate) fn commutator(&self, i: usize, j: usize) -> i64 {
        self.comm[i * self.gens.len() + j]
    }

    pub(crate) fn dchi_simple(&self, i: usize) -> i64 {
        self.dchi_simple[i]
    }
}
