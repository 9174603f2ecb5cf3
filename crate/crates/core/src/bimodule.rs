//! Bimodules over finite-dimensional algebras and their morphisms.

use std::fmt;
use std::sync::Arc;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::algebra::{combine, same_algebra, Algebra, AlgebraMorphism, AlgebraRef};
use crate::error::{GvError, Result};
use crate::linalg::{joint_kernel, kernel, solve, Matrix, Subspace};
use crate::scalar::Scalar;

/// An `(A, B)`-bimodule: a vector space with a left `A`-action and a
/// commuting right `B`-action.
///
/// Actions act on column vectors: `a.v = L_a v` and `v.b = R_b v`. The right
/// action is therefore anti-multiplicative, `R_{bb'} = R_{b'} R_b`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Bimodule<S: Scalar> {
    left: AlgebraRef<S>,
    right: AlgebraRef<S>,
    dim: usize,
    left_actions: Vec<Matrix<S>>,
    right_actions: Vec<Matrix<S>>,
}

impl<S: Scalar> fmt::Debug for Bimodule<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Bimodule({}, {}; dim {})", self.left.name(), self.right.name(), self.dim)
    }
}

/// One violated bimodule axiom.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum BimoduleViolation {
    LeftMultiplicative { i: usize, j: usize },
    LeftUnit,
    RightMultiplicative { i: usize, j: usize },
    RightUnit,
    ActionsDoNotCommute { left: usize, right: usize },
}

impl fmt::Display for BimoduleViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            BimoduleViolation::LeftMultiplicative { i, j } => write!(f, "left action not multiplicative on (e_{i}, e_{j})"),
            BimoduleViolation::LeftUnit => write!(f, "unit does not act as identity on the left"),
            BimoduleViolation::RightMultiplicative { i, j } => write!(f, "right action not multiplicative on (e_{i}, e_{j})"),
            BimoduleViolation::RightUnit => write!(f, "unit does not act as identity on the right"),
            BimoduleViolation::ActionsDoNotCommute { left, right } => {
                write!(f, "left e_{left} and right e_{right} do not commute")
            }
        }
    }
}

impl<S: Scalar> Bimodule<S> {
    /// Builds a bimodule from action matrices, checking shapes only.
    pub fn new(
        left: AlgebraRef<S>,
        right: AlgebraRef<S>,
        dim: usize,
        left_actions: Vec<Matrix<S>>,
        right_actions: Vec<Matrix<S>>,
    ) -> Result<Self> {
        if left_actions.len() != left.dim() || right_actions.len() != right.dim() {
            return Err(GvError::Dimension(format!(
                "{} left and {} right action matrices for algebras of dimension {} and {}",
                left_actions.len(),
                right_actions.len(),
                left.dim(),
                right.dim()
            )));
        }
        for m in left_actions.iter().chain(&right_actions) {
            if m.rows() != dim || m.cols() != dim {
                return Err(GvError::Dimension(format!(
                    "action matrix {}x{} on a module of dimension {dim}",
                    m.rows(),
                    m.cols()
                )));
            }
        }
        Ok(Bimodule { left, right, dim, left_actions, right_actions })
    }

    /// Like [`Bimodule::new`], but rejects data violating an axiom.
    pub fn checked(
        left: AlgebraRef<S>,
        right: AlgebraRef<S>,
        dim: usize,
        left_actions: Vec<Matrix<S>>,
        right_actions: Vec<Matrix<S>>,
    ) -> Result<Self> {
        let m = Self::new(left, right, dim, left_actions, right_actions)?;
        let issues = m.validate();
        if issues.is_empty() {
            Ok(m)
        } else {
            let text: Vec<String> = issues.iter().map(|v| v.to_string()).collect();
            Err(GvError::Validation(text.join("; ")))
        }
    }

    /// The regular `(A, A)`-bimodule.
    pub fn regular(a: AlgebraRef<S>) -> Self {
        let left_actions = (0..a.dim()).map(|i| a.left_multiplication(i)).collect();
        let right_actions = (0..a.dim()).map(|j| a.right_multiplication(j)).collect();
        Bimodule { dim: a.dim(), left: a.clone(), right: a, left_actions, right_actions }
    }

    /// The one-dimensional bimodule of a local algebra with residue field
    /// `k`, on which the radical acts as zero from both sides.
    pub fn simple_module_of_local(a: AlgebraRef<S>) -> Result<Self> {
        let j = a.radical()?;
        if j.dim() + 1 != a.dim() {
            return Err(GvError::InvalidInput(format!(
                "{} is not local with residue field k (radical has codimension {})",
                a.name(),
                a.dim() - j.dim()
            )));
        }
        let q = j.quotient();
        let unit_image = q.projection.mul_vec(a.unit())[0].clone();
        let inv = unit_image.inverse().expect("unit lies outside the radical");
        let chi: Vec<S> = (0..a.dim()).map(|i| q.projection.get(0, i).mul_ref(&inv)).collect();
        let actions: Vec<Matrix<S>> = chi.iter().map(|c| Matrix::from_fn(1, 1, |_, _| c.clone())).collect();
        Ok(Bimodule { left: a.clone(), right: a, dim: 1, left_actions: actions.clone(), right_actions: actions })
    }

    /// The zero bimodule.
    pub fn zero(left: AlgebraRef<S>, right: AlgebraRef<S>) -> Self {
        let left_actions = vec![Matrix::zeros(0, 0); left.dim()];
        let right_actions = vec![Matrix::zeros(0, 0); right.dim()];
        Bimodule { left, right, dim: 0, left_actions, right_actions }
    }

    /// Direct sum with block-diagonal actions.
    pub fn direct_sum(ms: &[Self]) -> Result<Self> {
        let first = ms.first().ok_or_else(|| GvError::InvalidInput("direct sum of no bimodules".into()))?;
        for m in ms {
            if !same_algebra(&m.left, &first.left) || !same_algebra(&m.right, &first.right) {
                return Err(GvError::AlgebraMismatch("direct sum of bimodules over different algebras".into()));
            }
        }
        let block = |f: &dyn Fn(&Self) -> &Matrix<S>| {
            let parts: Vec<&Matrix<S>> = ms.iter().map(f).collect();
            Matrix::block_diag(&parts)
        };
        let left_actions = (0..first.left.dim()).map(|i| block(&|m| &m.left_actions[i])).collect();
        let right_actions = (0..first.right.dim()).map(|j| block(&|m| &m.right_actions[j])).collect();
        Ok(Bimodule {
            left: first.left.clone(),
            right: first.right.clone(),
            dim: ms.iter().map(|m| m.dim).sum(),
            left_actions,
            right_actions,
        })
    }

    /// `X ⊗_k Y` with the left action of `X` and the right action of `Y`.
    ///
    /// The basis vector `x_i ⊗ y_j` has index `i * dim Y + j`.
    pub fn vector_tensor(x: &Self, y: &Self) -> Self {
        let ix = Matrix::identity(x.dim);
        let iy = Matrix::identity(y.dim);
        Bimodule {
            left: x.left.clone(),
            right: y.right.clone(),
            dim: x.dim * y.dim,
            left_actions: x.left_actions.iter().map(|l| l.kron(&iy)).collect(),
            right_actions: y.right_actions.iter().map(|r| ix.kron(r)).collect(),
        }
    }

    /// The linear dual: a `(B, A)`-bimodule with `(b.β.a)(m) = β(a.m.b)`.
    ///
    /// In matrices the new left actions are the transposed right actions and
    /// vice versa, so taking the dual twice returns the same data.
    pub fn dual(&self) -> Self {
        Bimodule {
            left: self.right.clone(),
            right: self.left.clone(),
            dim: self.dim,
            left_actions: self.right_actions.iter().map(Matrix::transpose).collect(),
            right_actions: self.left_actions.iter().map(Matrix::transpose).collect(),
        }
    }

    /// `(A, C)`-bimodule with right action `m.c := m.ψ(c)`, for `ψ: C -> B`.
    pub fn twist_right(&self, psi: &AlgebraMorphism<S>) -> Result<Self> {
        if !same_algebra(psi.target(), &self.right) {
            return Err(GvError::AlgebraMismatch("twisting morphism does not land in the right algebra".into()));
        }
        let right_actions = (0..psi.source().dim())
            .map(|c| self.right_action_by(&psi.apply(&psi.source().basis_element(c))))
            .collect();
        Ok(Bimodule { right: psi.source().clone(), right_actions, ..self.clone() })
    }

    /// `(C, B)`-bimodule with left action `c.m := ψ(c).m`, for `ψ: C -> A`.
    pub fn twist_left(&self, psi: &AlgebraMorphism<S>) -> Result<Self> {
        if !same_algebra(psi.target(), &self.left) {
            return Err(GvError::AlgebraMismatch("twisting morphism does not land in the left algebra".into()));
        }
        let left_actions = (0..psi.source().dim())
            .map(|c| self.left_action_by(&psi.apply(&psi.source().basis_element(c))))
            .collect();
        Ok(Bimodule { left: psi.source().clone(), left_actions, ..self.clone() })
    }

    /// The twisted bimodule `A_ψ` for an automorphism `ψ` of `A`.
    pub fn twisted_regular(a: AlgebraRef<S>, psi: &AlgebraMorphism<S>) -> Result<Self> {
        if !psi.is_automorphism() || !same_algebra(psi.source(), &a) {
            return Err(GvError::InvalidInput("twist requires an automorphism of the algebra".into()));
        }
        Self::regular(a).twist_right(psi)
    }

    pub fn left_algebra(&self) -> &AlgebraRef<S> {
        &self.left
    }

    pub fn right_algebra(&self) -> &AlgebraRef<S> {
        &self.right
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn left_actions(&self) -> &[Matrix<S>] {
        &self.left_actions
    }

    pub fn right_actions(&self) -> &[Matrix<S>] {
        &self.right_actions
    }

    pub fn left_action(&self, i: usize) -> &Matrix<S> {
        &self.left_actions[i]
    }

    pub fn right_action(&self, j: usize) -> &Matrix<S> {
        &self.right_actions[j]
    }

    pub fn left_action_by(&self, a: &[S]) -> Matrix<S> {
        combine(a, |i| self.left_actions[i].clone(), self.dim)
    }

    pub fn right_action_by(&self, b: &[S]) -> Matrix<S> {
        combine(b, |j| self.right_actions[j].clone(), self.dim)
    }

    /// Lists every violated axiom; empty means valid.
    pub fn validate(&self) -> Vec<BimoduleViolation> {
        let mut out = Vec::new();
        let id = Matrix::identity(self.dim);
        let (a, b) = (&self.left, &self.right);
        if self.left_action_by(a.unit()) != id {
            out.push(BimoduleViolation::LeftUnit);
        }
        if self.right_action_by(b.unit()) != id {
            out.push(BimoduleViolation::RightUnit);
        }
        for i in 0..a.dim() {
            for j in 0..a.dim() {
                let prod = a.multiply(&a.basis_element(i), &a.basis_element(j));
                if self.left_action_by(&prod) != &self.left_actions[i] * &self.left_actions[j] {
                    out.push(BimoduleViolation::LeftMultiplicative { i, j });
                }
            }
        }
        for i in 0..b.dim() {
            for j in 0..b.dim() {
                let prod = b.multiply(&b.basis_element(i), &b.basis_element(j));
                if self.right_action_by(&prod) != &self.right_actions[j] * &self.right_actions[i] {
                    out.push(BimoduleViolation::RightMultiplicative { i, j });
                }
            }
        }
        for (li, l) in self.left_actions.iter().enumerate() {
            for (ri, r) in self.right_actions.iter().enumerate() {
                if l * r != r * l {
                    out.push(BimoduleViolation::ActionsDoNotCommute { left: li, right: ri });
                }
            }
        }
        out
    }

    pub fn is_valid(&self) -> bool {
        self.validate().is_empty()
    }

    /// Whether a subspace is stable under both actions.
    pub fn is_invariant(&self, sub: &Subspace<S>) -> bool {
        self.left_actions.iter().chain(&self.right_actions).all(|m| sub.contains_subspace(&sub.map(m)))
    }

    /// The sub-bimodule carried by an invariant subspace, with its inclusion.
    pub fn submodule(&self, sub: &Subspace<S>) -> Result<(Self, BimoduleMap<S>)> {
        if sub.ambient_dim() != self.dim {
            return Err(GvError::Dimension("subspace of a different ambient space".into()));
        }
        let incl = sub.inclusion();
        let restrict = |m: &Matrix<S>| -> Result<Matrix<S>> {
            sub.coordinates_of_columns(&(m * &incl))
                .ok_or_else(|| GvError::InvalidInput("subspace is not stable under the actions".into()))
        };
        let left_actions = self.left_actions.iter().map(restrict).collect::<Result<Vec<_>>>()?;
        let right_actions = self.right_actions.iter().map(restrict).collect::<Result<Vec<_>>>()?;
        let m = Bimodule { left: self.left.clone(), right: self.right.clone(), dim: sub.dim(), left_actions, right_actions };
        let map = BimoduleMap::new_unchecked(m.clone(), self.clone(), incl);
        Ok((m, map))
    }

    /// The quotient bimodule by an invariant subspace, with its projection.
    pub fn quotient_module(&self, sub: &Subspace<S>) -> Result<(Self, BimoduleMap<S>)> {
        if !self.is_invariant(sub) {
            return Err(GvError::InvalidInput("subspace is not stable under the actions".into()));
        }
        let q = sub.quotient();
        let descend = |m: &Matrix<S>| &(&q.projection * m) * &q.section;
        let m = Bimodule {
            left: self.left.clone(),
            right: self.right.clone(),
            dim: q.dim(),
            left_actions: self.left_actions.iter().map(descend).collect(),
            right_actions: self.right_actions.iter().map(descend).collect(),
        };
        let map = BimoduleMap::new_unchecked(self.clone(), m.clone(), q.projection);
        Ok((m, map))
    }

    /// `J(A).M`, the image of the left radical action.
    pub fn left_radical_layer(&self) -> Result<Subspace<S>> {
        let j = self.left.radical()?;
        let mut total = Subspace::zero(self.dim);
        for r in 0..j.dim() {
            total = total.sum(&Subspace::span_of_columns(&self.left_action_by(j.basis().row(r))));
        }
        Ok(total)
    }

    /// `{ v : J(A).v = 0 }`.
    pub fn socle_left(&self) -> Result<Subspace<S>> {
        let j = self.left.radical()?;
        Ok(joint_kernel(self.dim, (0..j.dim()).map(|r| self.left_action_by(j.basis().row(r)))))
    }

    /// `{ v : v.J(B) = 0 }`.
    pub fn socle_right(&self) -> Result<Subspace<S>> {
        let j = self.right.radical()?;
        Ok(joint_kernel(self.dim, (0..j.dim()).map(|r| self.right_action_by(j.basis().row(r)))))
    }

    /// The space of bimodule maps `self -> other`, as vectors `vec(f)` with
    /// `f` a `dim other x dim self` matrix flattened row-major.
    pub fn hom_space(&self, other: &Self) -> Result<Subspace<S>> {
        self.check_same_algebras(other)?;
        let pairs: Vec<_> = self
            .left_actions
            .iter()
            .zip(&other.left_actions)
            .chain(self.right_actions.iter().zip(&other.right_actions))
            .collect();
        Ok(intertwiners(self.dim, other.dim, &pairs))
    }

    /// Maps intertwining only the left actions.
    pub fn left_hom_space(&self, other: &Self) -> Result<Subspace<S>> {
        if !same_algebra(&self.left, &other.left) {
            return Err(GvError::AlgebraMismatch("left algebras differ".into()));
        }
        let pairs: Vec<_> = self.left_actions.iter().zip(&other.left_actions).collect();
        Ok(intertwiners(self.dim, other.dim, &pairs))
    }

    /// Maps intertwining only the right actions.
    pub fn right_hom_space(&self, other: &Self) -> Result<Subspace<S>> {
        if !same_algebra(&self.right, &other.right) {
            return Err(GvError::AlgebraMismatch("right algebras differ".into()));
        }
        let pairs: Vec<_> = self.right_actions.iter().zip(&other.right_actions).collect();
        Ok(intertwiners(self.dim, other.dim, &pairs))
    }

    fn check_same_algebras(&self, other: &Self) -> Result<()> {
        if same_algebra(&self.left, &other.left) && same_algebra(&self.right, &other.right) {
            Ok(())
        } else {
            Err(GvError::AlgebraMismatch(format!("{self:?} and {other:?} live over different algebras")))
        }
    }

    /// A section of the free right-module cover `B^dim ↠ M`, if it splits.
    pub fn right_splitting(&self) -> Option<Splitting<S>> {
        split_free_cover(self.dim, self.right.dim(), &self.right_actions, &self.right, Side::Right)
    }

    /// A section of the free left-module cover `A^dim ↠ M`, if it splits.
    pub fn left_splitting(&self) -> Option<Splitting<S>> {
        split_free_cover(self.dim, self.left.dim(), &self.left_actions, &self.left, Side::Left)
    }

    pub fn is_projective_right(&self) -> bool {
        self.right_splitting().is_some()
    }

    pub fn is_projective_left(&self) -> bool {
        self.left_splitting().is_some()
    }

    /// Injectivity as a left module, through the dual: `M` is left-injective
    /// iff `M*` is right-projective.
    pub fn is_injective_left(&self) -> bool {
        self.dual().is_projective_right()
    }

    pub fn is_injective_right(&self) -> bool {
        self.dual().is_projective_left()
    }

    /// Injectivity as a left module, decided by splitting the embedding into
    /// the cofree module `Hom_k(A, M)`.
    pub fn is_injective_left_direct(&self) -> bool {
        split_cofree_embedding(self.dim, self.left.dim(), &self.left_actions, &self.left, Side::Left).is_some()
    }

    pub fn is_injective_right_direct(&self) -> bool {
        split_cofree_embedding(self.dim, self.right.dim(), &self.right_actions, &self.right, Side::Right).is_some()
    }

    /// Decides isomorphism; positive answers carry an explicit isomorphism.
    ///
    /// Random elements of the hom space are drawn from a seeded generator; an
    /// isomorphism exists iff a generic element is invertible, so a negative
    /// answer after the trial budget is only probabilistic.
    pub fn are_isomorphic(&self, other: &Self, seed: u64) -> Result<IsoResult<S>> {
        self.check_same_algebras(other)?;
        if self.dim != other.dim {
            return Ok(IsoResult::NotIsomorphic { reason: format!("dimensions {} and {}", self.dim, other.dim) });
        }
        if let (Ok(a), Ok(b)) = (self.socle_left(), other.socle_left()) {
            if a.dim() != b.dim() {
                return Ok(IsoResult::NotIsomorphic { reason: format!("left socles of dimension {} and {}", a.dim(), b.dim()) });
            }
        }
        if let (Ok(a), Ok(b)) = (self.socle_right(), other.socle_right()) {
            if a.dim() != b.dim() {
                return Ok(IsoResult::NotIsomorphic { reason: format!("right socles of dimension {} and {}", a.dim(), b.dim()) });
            }
        }
        let forward = self.hom_space(other)?;
        let dims = [
            forward.dim(),
            other.hom_space(self)?.dim(),
            self.hom_space(self)?.dim(),
            other.hom_space(other)?.dim(),
        ];
        if dims.iter().any(|&d| d != dims[0]) {
            return Ok(IsoResult::NotIsomorphic { reason: format!("hom space dimensions {dims:?} differ") });
        }
        let n = self.dim;
        let to_map = |coeffs: &[S]| {
            let mut v = vec![S::zero(); n * n];
            for (l, c) in coeffs.iter().enumerate() {
                for (slot, b) in v.iter_mut().zip(forward.basis().row(l)) {
                    slot.add_mul_assign(c, b);
                }
            }
            Matrix::from_vec(n, n, v).expect("square")
        };
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        for _ in 0..ISO_TRIALS {
            let coeffs: Vec<S> = (0..forward.dim()).map(|_| S::from_i64(rng.gen_range(-ISO_RANGE..=ISO_RANGE))).collect();
            let f = to_map(&coeffs);
            if f.is_invertible() {
                let map = BimoduleMap::new_unchecked(self.clone(), other.clone(), f);
                return Ok(IsoResult::Isomorphic { certificate: map });
            }
        }
        Ok(IsoResult::ProbabilisticNegative { trials: ISO_TRIALS })
    }
}

const ISO_TRIALS: usize = 24;
const ISO_RANGE: i64 = 50;

/// Outcome of an isomorphism test.
#[derive(Clone, Debug)]
pub enum IsoResult<S: Scalar> {
    Isomorphic { certificate: BimoduleMap<S> },
    /// Decided by an invariant.
    NotIsomorphic { reason: String },
    /// No isomorphism found among the random trials.
    ProbabilisticNegative { trials: usize },
}

impl<S: Scalar> IsoResult<S> {
    pub fn is_isomorphic(&self) -> bool {
        matches!(self, IsoResult::Isomorphic { .. })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Side {
    Left,
    Right,
}

/// A split free cover `ε: F ↠ M` with section `s`, `ε s = id`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Splitting<S: Scalar> {
    pub epsilon: Matrix<S>,
    pub section: Matrix<S>,
}

fn split_free_cover<S: Scalar>(
    dim: usize,
    alg_dim: usize,
    actions: &[Matrix<S>],
    alg: &Algebra<S>,
    side: Side,
) -> Option<Splitting<S>> {
    // Free module on generators g_i ↦ v_i; index i*alg_dim + k is g_i.e_k
    // (right) or e_k.g_i (left).
    let free_dim = dim * alg_dim;
    let epsilon = Matrix::from_fn(dim, free_dim, |r, c| actions[c % alg_dim].get(r, c / alg_dim).clone());
    let regular: Vec<Matrix<S>> = (0..alg_dim)
        .map(|k| match side {
            Side::Right => alg.right_multiplication(k),
            Side::Left => alg.left_multiplication(k),
        })
        .collect();
    let free_actions: Vec<Matrix<S>> = regular
        .iter()
        .map(|m| Matrix::block_diag(&vec![m; dim]))
        .collect();
    let pairs: Vec<_> = actions.iter().zip(&free_actions).collect();
    let homs = intertwiners(dim, free_dim, &pairs);
    // Solve sum_l t_l (ε h_l) = id.
    let columns: Vec<Vec<S>> = (0..homs.dim())
        .map(|l| {
            let h = Matrix::from_vec(free_dim, dim, homs.basis_vector(l)).expect("shape");
            (&epsilon * &h).into_data()
        })
        .collect();
    let system = if columns.is_empty() {
        Matrix::zeros(dim * dim, 0)
    } else {
        Matrix::from_rows(columns).expect("shape").transpose()
    };
    let rhs = Matrix::column(Matrix::<S>::identity(dim).into_data());
    let t = solve(&system, &rhs)?;
    let mut section = Matrix::zeros(free_dim, dim);
    for l in 0..homs.dim() {
        let h = Matrix::from_vec(free_dim, dim, homs.basis_vector(l)).expect("shape");
        section = &section + &h.scale(t.get(l, 0));
    }
    debug_assert!((&epsilon * &section).is_identity());
    Some(Splitting { epsilon, section })
}

/// A retraction of the cofree embedding `j: N -> Hom_k(A, N)`, if one exists.
/// `j(n)` is `b ↦ b.n` (left) or `b ↦ n.b` (right); a map `φ` is stored as a
/// `dim × alg_dim` matrix.
fn split_cofree_embedding<S: Scalar>(
    dim: usize,
    alg_dim: usize,
    actions: &[Matrix<S>],
    alg: &Algebra<S>,
    side: Side,
) -> Option<Matrix<S>> {
    let cofree_dim = dim * alg_dim;
    let j = Matrix::from_fn(cofree_dim, dim, |r, n| actions[r % alg_dim].get(r / alg_dim, n).clone());
    let i_dim = Matrix::identity(dim);
    let cofree_actions: Vec<Matrix<S>> = (0..alg_dim)
        .map(|k| {
            let m = match side {
                Side::Left => alg.right_multiplication(k),
                Side::Right => alg.left_multiplication(k),
            };
            i_dim.kron(&m.transpose())
        })
        .collect();
    let pairs: Vec<_> = cofree_actions.iter().zip(actions).collect();
    let homs = intertwiners(cofree_dim, dim, &pairs);
    let columns: Vec<Vec<S>> = (0..homs.dim())
        .map(|l| {
            let h = Matrix::from_vec(dim, cofree_dim, homs.basis_vector(l)).expect("shape");
            (&h * &j).into_data()
        })
        .collect();
    let system = if columns.is_empty() {
        Matrix::zeros(dim * dim, 0)
    } else {
        Matrix::from_rows(columns).expect("shape").transpose()
    };
    let t = solve(&system, &Matrix::column(Matrix::<S>::identity(dim).into_data()))?;
    let mut retraction = Matrix::zeros(dim, cofree_dim);
    for l in 0..homs.dim() {
        let h = Matrix::from_vec(dim, cofree_dim, homs.basis_vector(l)).expect("shape");
        retraction = &retraction + &h.scale(t.get(l, 0));
    }
    debug_assert!((&retraction * &j).is_identity());
    Some(retraction)
}

/// Maps `f: k^src -> k^tgt` with `f P = Q f` for every pair `(P, Q)`, as
/// row-major `vec(f)`.
pub(crate) fn intertwiners<S: Scalar>(src: usize, tgt: usize, pairs: &[(&Matrix<S>, &Matrix<S>)]) -> Subspace<S> {
    let i_tgt = Matrix::identity(tgt);
    let i_src = Matrix::identity(src);
    joint_kernel(
        src * tgt,
        pairs.iter().map(|(p, q)| &i_tgt.kron(&p.transpose()) - &q.kron(&i_src)),
    )
}

/// A linear map between bimodules that intertwines both actions.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BimoduleMap<S: Scalar> {
    source: Bimodule<S>,
    target: Bimodule<S>,
    matrix: Matrix<S>,
}

impl<S: Scalar> BimoduleMap<S> {
    /// Checks shape and that both actions are intertwined.
    pub fn new(source: Bimodule<S>, target: Bimodule<S>, matrix: Matrix<S>) -> Result<Self> {
        source.check_same_algebras(&target)?;
        if matrix.rows() != target.dim || matrix.cols() != source.dim {
            return Err(GvError::Dimension(format!(
                "map matrix {}x{} between modules of dimension {} and {}",
                matrix.rows(),
                matrix.cols(),
                source.dim,
                target.dim
            )));
        }
        let f = BimoduleMap { source, target, matrix };
        if let Some(issue) = f.intertwining_failure() {
            return Err(GvError::Validation(issue));
        }
        Ok(f)
    }

    pub(crate) fn new_unchecked(source: Bimodule<S>, target: Bimodule<S>, matrix: Matrix<S>) -> Self {
        debug_assert_eq!((matrix.rows(), matrix.cols()), (target.dim, source.dim));
        BimoduleMap { source, target, matrix }
    }

    /// Description of the first action not intertwined, if any.
    pub fn intertwining_failure(&self) -> Option<String> {
        let f = &self.matrix;
        for (i, (p, q)) in self.source.left_actions.iter().zip(&self.target.left_actions).enumerate() {
            if f * p != q * f {
                return Some(format!("map does not commute with left action of e_{i}"));
            }
        }
        for (j, (p, q)) in self.source.right_actions.iter().zip(&self.target.right_actions).enumerate() {
            if f * p != q * f {
                return Some(format!("map does not commute with right action of e_{j}"));
            }
        }
        None
    }

    pub fn is_bimodule_map(&self) -> bool {
        self.intertwining_failure().is_none()
    }

    pub fn identity(m: Bimodule<S>) -> Self {
        let n = m.dim;
        BimoduleMap { source: m.clone(), target: m, matrix: Matrix::identity(n) }
    }

    pub fn zero(source: Bimodule<S>, target: Bimodule<S>) -> Self {
        let matrix = Matrix::zeros(target.dim, source.dim);
        BimoduleMap { source, target, matrix }
    }

    pub fn source(&self) -> &Bimodule<S> {
        &self.source
    }

    pub fn target(&self) -> &Bimodule<S> {
        &self.target
    }

    pub fn matrix(&self) -> &Matrix<S> {
        &self.matrix
    }

    /// `self ∘ first`
    pub fn compose(&self, first: &Self) -> Result<Self> {
        if first.target.dim != self.source.dim || first.target != self.source {
            return Err(GvError::Dimension(format!(
                "cannot compose {:?} -> {:?} with {:?} -> {:?}",
                first.source, first.target, self.source, self.target
            )));
        }
        Ok(BimoduleMap {
            source: first.source.clone(),
            target: self.target.clone(),
            matrix: &self.matrix * &first.matrix,
        })
    }

    pub fn kernel(&self) -> Subspace<S> {
        kernel(&self.matrix)
    }

    pub fn image(&self) -> Subspace<S> {
        Subspace::span_of_columns(&self.matrix)
    }

    pub fn is_injective(&self) -> bool {
        self.matrix.is_injective()
    }

    pub fn is_surjective(&self) -> bool {
        self.matrix.is_surjective()
    }

    pub fn is_isomorphism(&self) -> bool {
        self.matrix.is_invertible()
    }

    pub fn is_zero(&self) -> bool {
        self.matrix.is_zero()
    }

    pub fn inverse(&self) -> Option<Self> {
        let inv = self.matrix.inverse()?;
        Some(BimoduleMap { source: self.target.clone(), target: self.source.clone(), matrix: inv })
    }

    /// The transpose `G(f): G(N) -> G(M)`.
    pub fn dual(&self) -> Self {
        BimoduleMap { source: self.target.dual(), target: self.source.dual(), matrix: self.matrix.transpose() }
    }

    pub fn direct_sum(maps: &[Self]) -> Result<Self> {
        let sources: Vec<Bimodule<S>> = maps.iter().map(|f| f.source.clone()).collect();
        let targets: Vec<Bimodule<S>> = maps.iter().map(|f| f.target.clone()).collect();
        let blocks: Vec<&Matrix<S>> = maps.iter().map(|f| &f.matrix).collect();
        Ok(BimoduleMap {
            source: Bimodule::direct_sum(&sources)?,
            target: Bimodule::direct_sum(&targets)?,
            matrix: Matrix::block_diag(&blocks),
        })
    }
}

/// Shared handle to a local algebra and its simple module, regular module
/// and dual; the objects most computations start from.
#[derive(Clone, Debug)]
pub struct StandardModules<S: Scalar> {
    pub algebra: AlgebraRef<S>,
    pub regular: Bimodule<S>,
    pub dual_regular: Bimodule<S>,
    pub simple: Option<Bimodule<S>>,
}

impl<S: Scalar> StandardModules<S> {
    pub fn new(a: Algebra<S>) -> Self {
        let algebra = Arc::new(a);
        let regular = Bimodule::regular(algebra.clone());
        let dual_regular = regular.dual();
        let simple = Bimodule::simple_module_of_local(algebra.clone()).ok();
        StandardModules { algebra, regular, dual_regular, simple }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::Rational;

    type Q = Rational;

    fn a2() -> StandardModules<Q> {
        StandardModules::new(Algebra::dual_numbers())
    }

    fn a3() -> StandardModules<Q> {
        StandardModules::new(Algebra::a3())
    }

    #[test]
    fn constructors_validate() {
        for s in [a2(), a3()] {
            assert!(s.regular.is_valid());
            assert!(s.dual_regular.is_valid());
            assert!(s.simple.as_ref().unwrap().is_valid());
        }
        let s = a2().simple.unwrap();
        assert_eq!(Bimodule::direct_sum(&[s.clone(), s.clone(), s.clone(), s]).unwrap().dim(), 4);
        assert_eq!(a2().regular.dim(), 2);
    }

    #[test]
    fn simple_module_kills_radical() {
        let s = a3().simple.unwrap();
        for i in [1, 2] {
            assert!(s.left_action(i).is_zero());
            assert!(s.right_action(i).is_zero());
        }
        assert!(Bimodule::simple_module_of_local(Arc::new(Algebra::<Q>::matrix_algebra(2).unwrap())).is_err());
    }

    #[test]
    fn hom_spaces() {
        let t = a3();
        assert_eq!(t.regular.hom_space(&t.regular).unwrap().dim(), 3);
        let d = a2();
        let s = d.simple.clone().unwrap();
        let homs = s.hom_space(&d.regular).unwrap();
        assert_eq!(homs.dim(), 1);
        // spanned by s -> x
        assert_eq!(homs.basis_vector(0), vec![Q::from_i64(0), Q::from_i64(1)]);
        let zero = Bimodule::zero(d.algebra.clone(), d.algebra.clone());
        assert_eq!(s.hom_space(&zero).unwrap().dim(), 0);
    }

    #[test]
    fn socles() {
        let t = a3();
        assert_eq!(t.regular.socle_left().unwrap().dim(), 2);
        assert_eq!(t.dual_regular.socle_left().unwrap().dim(), 1);
        assert_eq!(t.simple.unwrap().socle_left().unwrap().dim(), 1);
    }

    #[test]
    fn projectivity() {
        let d = a2();
        let split = d.regular.right_splitting().unwrap();
        assert!((&split.epsilon * &split.section).is_identity());
        assert!(!d.simple.as_ref().unwrap().is_projective_right());
        assert!(!d.simple.as_ref().unwrap().is_projective_left());
        let t = a3();
        assert!(t.regular.is_projective_right());
        assert!(t.dual_regular.is_injective_left());
        assert!(!t.dual_regular.is_projective_left());
        assert!(!t.regular.is_injective_left());
    }

    #[test]
    fn injectivity_two_ways() {
        for st in [a2(), a3()] {
            let mods = [st.regular.clone(), st.dual_regular.clone(), st.simple.clone().unwrap()];
            for m in &mods {
                assert_eq!(m.is_injective_left(), m.is_injective_left_direct(), "{m:?}");
                assert_eq!(m.is_injective_right(), m.is_injective_right_direct(), "{m:?}");
            }
        }
        let t = a3();
        assert!(t.dual_regular.is_injective_right_direct());
        assert!(!t.regular.is_injective_right_direct());
    }

    #[test]
    fn isomorphism_testing() {
        let t = a3();
        let r = t.regular.are_isomorphic(&t.dual_regular, 1).unwrap();
        assert!(matches!(r, IsoResult::NotIsomorphic { .. }));
        match t.dual_regular.are_isomorphic(&t.dual_regular, 1).unwrap() {
            IsoResult::Isomorphic { certificate } => {
                assert!(certificate.is_isomorphism());
                assert!(certificate.is_bimodule_map());
            }
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn twists() {
        let a = Arc::new(Algebra::<Q>::a3());
        let id = AlgebraMorphism::identity(a.clone());
        assert_eq!(Bimodule::twisted_regular(a.clone(), &id).unwrap(), Bimodule::regular(a.clone()));
        let swap = AlgebraMorphism::new(a.clone(), a.clone(), Matrix::from_i64_rows(&[&[1, 0, 0], &[0, 0, 1], &[0, 1, 0]])).unwrap();
        let tw = Bimodule::twisted_regular(a.clone(), &swap).unwrap();
        assert!(tw.is_valid());
        assert_eq!(tw.dim(), 3);
        assert_ne!(tw, Bimodule::regular(a.clone()));
        let kill = AlgebraMorphism::new(a.clone(), a.clone(), Matrix::from_i64_rows(&[&[1, 0, 0], &[0, 0, 0], &[0, 0, 0]])).unwrap();
        assert!(Bimodule::twisted_regular(a, &kill).is_err());
    }

    #[test]
    fn invalid_bimodule_is_reported() {
        let a = Arc::new(Algebra::<Q>::dual_numbers());
        // x acting as the identity violates x^2 = 0.
        let l = vec![Matrix::identity(1), Matrix::identity(1)];
        let r = vec![Matrix::identity(1), Matrix::zeros(1, 1)];
        let err = Bimodule::checked(a.clone(), a, 1, l, r).unwrap_err();
        assert!(matches!(err, GvError::Validation(_)));
    }

    #[test]
    fn sub_and_quotient() {
        let d = a2();
        let soc = d.regular.socle_left().unwrap();
        let (sub, incl) = d.regular.submodule(&soc).unwrap();
        let (quo, proj) = d.regular.quotient_module(&soc).unwrap();
        assert!(sub.is_valid() && quo.is_valid());
        assert!(incl.is_bimodule_map() && proj.is_bimodule_map());
        assert!(proj.compose(&incl).unwrap().is_zero());
    }
}
