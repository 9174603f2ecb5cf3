//! The two tensor products of bimodules.
//!
//! `X ⊗_A Y` is the coequalizer of `ρ ⊗ id` and `id ⊗ λ`, presented as a
//! quotient of `X ⊗_k Y`. `X ⊗^A Y` is the equalizer of the two coactions,
//! presented as a subspace of `X ⊗_k Y`. Basis vector `x_i ⊗ y_j` has index
//! `i * dim Y + j` everywhere.

use std::any::{Any, TypeId};
use std::cell::RefCell;
use std::collections::HashMap;

use rustc_hash::FxHashMap;
use serde::Serialize;

use crate::algebra::same_algebra;
use crate::bimodule::{Bimodule, BimoduleMap};
use crate::error::{GvError, Result};
use crate::linalg::{joint_kernel, Matrix, Quotient, Subspace};
use crate::scalar::Scalar;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum TensorKind {
    /// `⊗_A`, the coequalizer.
    Tensor,
    /// `⊗^A`, the equalizer.
    Cotensor,
}

#[derive(Clone, Debug, PartialEq, Eq)]
enum Shape<S: Scalar> {
    Quotient(Quotient<S>),
    Sub(Subspace<S>),
}

/// A tensor product together with its relation to `X ⊗_k Y`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TensorPresentation<S: Scalar> {
    kind: TensorKind,
    left_factor: Bimodule<S>,
    right_factor: Bimodule<S>,
    result: Bimodule<S>,
    shape: Shape<S>,
}

impl<S: Scalar> TensorPresentation<S> {
    pub fn kind(&self) -> TensorKind {
        self.kind
    }

    pub fn result(&self) -> &Bimodule<S> {
        &self.result
    }

    pub fn into_result(self) -> Bimodule<S> {
        self.result
    }

    pub fn factors(&self) -> (&Bimodule<S>, &Bimodule<S>) {
        (&self.left_factor, &self.right_factor)
    }

    pub fn factor_dims(&self) -> (usize, usize) {
        (self.left_factor.dim(), self.right_factor.dim())
    }

    /// The surjection `π: X ⊗_k Y ↠ X ⊗_A Y`, or the inclusion
    /// `ι: X ⊗^A Y ↪ X ⊗_k Y`.
    pub fn structural_map(&self) -> Matrix<S> {
        match &self.shape {
            Shape::Quotient(q) => q.projection.clone(),
            Shape::Sub(s) => s.inclusion(),
        }
    }

    pub fn projection(&self) -> Option<&Matrix<S>> {
        match &self.shape {
            Shape::Quotient(q) => Some(&q.projection),
            Shape::Sub(_) => None,
        }
    }

    pub fn inclusion(&self) -> Option<Matrix<S>> {
        match &self.shape {
            Shape::Quotient(_) => None,
            Shape::Sub(s) => Some(s.inclusion()),
        }
    }

    /// The quotient data of a coequalizer presentation.
    pub fn quotient(&self) -> Option<&Quotient<S>> {
        match &self.shape {
            Shape::Quotient(q) => Some(q),
            Shape::Sub(_) => None,
        }
    }

    /// The subspace of an equalizer presentation.
    pub fn subspace(&self) -> Option<&Subspace<S>> {
        match &self.shape {
            Shape::Quotient(_) => None,
            Shape::Sub(s) => Some(s),
        }
    }

    /// Representatives in `X ⊗_k Y`: the canonical section `σ` for `⊗_A`,
    /// the inclusion `ι` for `⊗^A`.
    pub fn lift(&self) -> Matrix<S> {
        match &self.shape {
            Shape::Quotient(q) => q.section.clone(),
            Shape::Sub(s) => s.inclusion(),
        }
    }

    /// A left inverse of [`lift`](Self::lift): `π` for `⊗_A`, reading off
    /// pivot coordinates for `⊗^A`. For `⊗^A` it is only meaningful on
    /// vectors inside the subspace; see [`reduce`](Self::reduce).
    pub fn reducer(&self) -> Matrix<S> {
        match &self.shape {
            Shape::Quotient(q) => q.projection.clone(),
            Shape::Sub(s) => {
                let mut m = Matrix::zeros(s.dim(), s.ambient_dim());
                for (r, &p) in s.pivots().iter().enumerate() {
                    m.set(r, p, S::one());
                }
                m
            }
        }
    }

    /// Expresses columns of `m` (vectors of `X ⊗_k Y`) in the tensor
    /// product: projects for `⊗_A`, takes coordinates for `⊗^A` and fails if
    /// a column lies outside the equalizer.
    pub fn reduce(&self, m: &Matrix<S>) -> Result<Matrix<S>> {
        match &self.shape {
            Shape::Quotient(q) => Ok(&q.projection * m),
            Shape::Sub(s) => s.coordinates_of_columns(m).ok_or_else(|| {
                GvError::Consistency("vectors outside the equalizer were expected to lie in it".into())
            }),
        }
    }
}

fn check_middle<S: Scalar>(x: &Bimodule<S>, y: &Bimodule<S>) -> Result<()> {
    if same_algebra(x.right_algebra(), y.left_algebra()) {
        Ok(())
    } else {
        Err(GvError::AlgebraMismatch(format!(
            "right algebra {} of the first factor differs from left algebra {} of the second",
            x.right_algebra().name(),
            y.left_algebra().name()
        )))
    }
}

/// `R^X_k ⊗ id - id ⊗ L^Y_k` on `X ⊗_k Y`, one matrix per basis element of
/// the middle algebra.
fn balancing_blocks<S: Scalar>(x: &Bimodule<S>, y: &Bimodule<S>) -> Vec<Matrix<S>> {
    let ix = Matrix::identity(x.dim());
    let iy = Matrix::identity(y.dim());
    x.right_actions()
        .iter()
        .zip(y.left_actions())
        .map(|(r, l)| &r.kron(&iy) - &ix.kron(l))
        .collect()
}

/// The balancing map `X ⊗ A ⊗ Y -> X ⊗ Y`, `x ⊗ a ⊗ y ↦ x.a ⊗ y - x ⊗ a.y`.
///
/// The domain vector `x_i ⊗ a_k ⊗ y_j` has index `(i * dim A + k) * dim Y + j`.
pub fn balancing_map<S: Scalar>(x: &Bimodule<S>, y: &Bimodule<S>) -> Result<Matrix<S>> {
    check_middle(x, y)?;
    let blocks = balancing_blocks(x, y);
    let (dx, da, dy) = (x.dim(), blocks.len(), y.dim());
    Ok(Matrix::from_fn(dx * dy, dx * da * dy, |r, c| {
        let (i, k, j) = (c / (da * dy), (c / dy) % da, c % dy);
        blocks[k].get(r, i * dy + j).clone()
    }))
}

/// The cobalancing map `X ⊗ Y -> X ⊗ A* ⊗ Y` whose kernel is `X ⊗^A Y`.
///
/// Output coordinate `(i, k, j)` pairs the difference of the two coactions
/// with the dual basis vector `a^k`.
pub fn cobalancing_map<S: Scalar>(x: &Bimodule<S>, y: &Bimodule<S>) -> Result<Matrix<S>> {
    check_middle(x, y)?;
    let blocks = balancing_blocks(x, y);
    let (dx, da, dy) = (x.dim(), blocks.len(), y.dim());
    Ok(Matrix::from_fn(dx * da * dy, dx * dy, |r, c| {
        let (i, k, j) = (r / (da * dy), (r / dy) % da, r % dy);
        blocks[k].get(i * dy + j, c).clone()
    }))
}

type CacheKey<S> = (u64, TensorKind, Bimodule<S>, Bimodule<S>);
type Cache<S> = FxHashMap<CacheKey<S>, TensorPresentation<S>>;

const CACHE_CAPACITY: usize = 4096;

thread_local! {
    // Per scalar type; the key carries the characteristic because the
    // modulus of `Fp` is itself thread-local.
    static PRESENTATIONS: RefCell<HashMap<TypeId, Box<dyn Any>>> = RefCell::new(HashMap::new());
}

fn memoized<S: Scalar>(
    kind: TensorKind,
    x: &Bimodule<S>,
    y: &Bimodule<S>,
    build: impl FnOnce() -> Result<TensorPresentation<S>>,
) -> Result<TensorPresentation<S>> {
    let key = (S::characteristic(), kind, x.clone(), y.clone());
    let hit = PRESENTATIONS.with(|c| {
        c.borrow().get(&TypeId::of::<S>()).and_then(|m| m.downcast_ref::<Cache<S>>()).and_then(|m| m.get(&key).cloned())
    });
    if let Some(t) = hit {
        return Ok(t);
    }
    let t = build()?;
    PRESENTATIONS.with(|c| {
        let mut c = c.borrow_mut();
        let m = c
            .entry(TypeId::of::<S>())
            .or_insert_with(|| Box::new(Cache::<S>::default()))
            .downcast_mut::<Cache<S>>()
            .expect("cache keyed by type");
        if m.len() >= CACHE_CAPACITY {
            m.clear();
        }
        m.insert(key, t.clone());
    });
    Ok(t)
}

/// `X ⊗_A Y`.
pub fn tensor_over<S: Scalar>(x: &Bimodule<S>, y: &Bimodule<S>) -> Result<TensorPresentation<S>> {
    check_middle(x, y)?;
    memoized(TensorKind::Tensor, x, y, || build_tensor(x, y))
}

fn build_tensor<S: Scalar>(x: &Bimodule<S>, y: &Bimodule<S>) -> Result<TensorPresentation<S>> {
    let blocks = balancing_blocks(x, y);
    let n = x.dim() * y.dim();
    let mut relations = Subspace::zero(n);
    for b in &blocks {
        relations = relations.sum(&Subspace::span_of_columns(b));
    }
    let q = relations.quotient();
    let relations_incl = relations.inclusion();
    let descend = |m: Matrix<S>| -> Result<Matrix<S>> {
        if !(&q.projection * &(&m * &relations_incl)).is_zero() {
            return Err(GvError::Consistency("action does not preserve the balancing relations".into()));
        }
        Ok(&(&q.projection * &m) * &q.section)
    };
    let (ix, iy) = (Matrix::identity(x.dim()), Matrix::identity(y.dim()));
    let left = x.left_actions().iter().map(|l| descend(l.kron(&iy))).collect::<Result<Vec<_>>>()?;
    let right = y.right_actions().iter().map(|r| descend(ix.kron(r))).collect::<Result<Vec<_>>>()?;
    let result = Bimodule::new(x.left_algebra().clone(), y.right_algebra().clone(), q.dim(), left, right)?;
    Ok(TensorPresentation {
        kind: TensorKind::Tensor,
        left_factor: x.clone(),
        right_factor: y.clone(),
        result,
        shape: Shape::Quotient(q),
    })
}

/// `X ⊗^A Y`.
pub fn cotensor_over<S: Scalar>(x: &Bimodule<S>, y: &Bimodule<S>) -> Result<TensorPresentation<S>> {
    check_middle(x, y)?;
    memoized(TensorKind::Cotensor, x, y, || build_cotensor(x, y))
}

fn build_cotensor<S: Scalar>(x: &Bimodule<S>, y: &Bimodule<S>) -> Result<TensorPresentation<S>> {
    let n = x.dim() * y.dim();
    let sub = joint_kernel(n, balancing_blocks(x, y));
    let incl = sub.inclusion();
    let restrict = |m: Matrix<S>| -> Result<Matrix<S>> {
        sub.coordinates_of_columns(&(&m * &incl))
            .ok_or_else(|| GvError::Consistency("action does not preserve the equalizer".into()))
    };
    let (ix, iy) = (Matrix::identity(x.dim()), Matrix::identity(y.dim()));
    let left = x.left_actions().iter().map(|l| restrict(l.kron(&iy))).collect::<Result<Vec<_>>>()?;
    let right = y.right_actions().iter().map(|r| restrict(ix.kron(r))).collect::<Result<Vec<_>>>()?;
    let result = Bimodule::new(x.left_algebra().clone(), y.right_algebra().clone(), sub.dim(), left, right)?;
    Ok(TensorPresentation {
        kind: TensorKind::Cotensor,
        left_factor: x.clone(),
        right_factor: y.clone(),
        result,
        shape: Shape::Sub(sub),
    })
}

pub fn tensor<S: Scalar>(kind: TensorKind, x: &Bimodule<S>, y: &Bimodule<S>) -> Result<TensorPresentation<S>> {
    match kind {
        TensorKind::Tensor => tensor_over(x, y),
        TensorKind::Cotensor => cotensor_over(x, y),
    }
}

/// The map `src -> tgt` induced by linear maps `f ⊗ g` on representatives.
///
/// No intertwining check is made on `f` and `g`; the caller guarantees that
/// `f ⊗ g` respects the relations (for the cotensor this is verified).
pub fn induced_map<S: Scalar>(
    src: &TensorPresentation<S>,
    tgt: &TensorPresentation<S>,
    f: &Matrix<S>,
    g: &Matrix<S>,
) -> Result<BimoduleMap<S>> {
    if src.kind != tgt.kind {
        return Err(GvError::InvalidInput("maps between different kinds of tensor product".into()));
    }
    let fg = f.kron(g);
    if fg.cols() != src.lift().rows() || fg.rows() != tgt.lift().rows() {
        return Err(GvError::Dimension("factor maps do not fit the tensor presentations".into()));
    }
    if let Shape::Quotient(q) = &src.shape {
        let killed = tgt.reduce(&(&fg * &q.kernel.inclusion()))?;
        if !killed.is_zero() {
            return Err(GvError::InvalidInput("factor maps do not respect the balancing relations".into()));
        }
    }
    let m = tgt.reduce(&(&fg * &src.lift()))?;
    Ok(BimoduleMap::new_unchecked(src.result.clone(), tgt.result.clone(), m))
}

/// `f ⊗ g` for bimodule maps, on either tensor product.
pub fn tensor_of_maps<S: Scalar>(f: &BimoduleMap<S>, g: &BimoduleMap<S>, kind: TensorKind) -> Result<BimoduleMap<S>> {
    let src = tensor(kind, f.source(), g.source())?;
    let tgt = tensor(kind, f.target(), g.target())?;
    induced_map(&src, &tgt, f.matrix(), g.matrix())
}

/// `f ⊗ Z` for a bimodule map `f` and identity on `z`.
pub fn tensor_map_left<S: Scalar>(f: &BimoduleMap<S>, z: &Bimodule<S>, kind: TensorKind) -> Result<BimoduleMap<S>> {
    tensor_of_maps(f, &BimoduleMap::identity(z.clone()), kind)
}

/// `X ⊗ g` for a bimodule map `g` and identity on `x`.
pub fn tensor_map_right<S: Scalar>(x: &Bimodule<S>, g: &BimoduleMap<S>, kind: TensorKind) -> Result<BimoduleMap<S>> {
    tensor_of_maps(&BimoduleMap::identity(x.clone()), g, kind)
}

/// The associator `(X ⊗ Y) ⊗ Z -> X ⊗ (Y ⊗ Z)`, for one kind of tensor
/// product on both sides.
pub fn associator<S: Scalar>(x: &Bimodule<S>, y: &Bimodule<S>, z: &Bimodule<S>, kind: TensorKind) -> Result<BimoduleMap<S>> {
    let xy = tensor(kind, x, y)?;
    let outer_left = tensor(kind, xy.result(), z)?;
    let yz = tensor(kind, y, z)?;
    let outer_right = tensor(kind, x, yz.result())?;
    associator_between(&xy, &outer_left, &yz, &outer_right)
}

/// The associator built from precomputed presentations of `X ⊗ Y`,
/// `(X ⊗ Y) ⊗ Z`, `Y ⊗ Z` and `X ⊗ (Y ⊗ Z)`.
///
/// The presentations may mix kinds: with `X ⊗_k Y` regarded as a bimodule
/// the same formula covers the mixed associativity maps.
pub fn associator_between<S: Scalar>(
    xy: &TensorPresentation<S>,
    outer_left: &TensorPresentation<S>,
    yz: &TensorPresentation<S>,
    outer_right: &TensorPresentation<S>,
) -> Result<BimoduleMap<S>> {
    let (dx, dz) = (xy.left_factor.dim(), yz.right_factor.dim());
    let ix = Matrix::identity(dx);
    let iz = Matrix::identity(dz);
    // (X⊗Y)⊗Z -> X⊗Y⊗Z
    let lifted = &xy.lift().kron(&iz) * &outer_left.lift();
    let inner = match &yz.shape {
        Shape::Quotient(q) => &ix.kron(&q.projection) * &lifted,
        Shape::Sub(s) => {
            let embed = ix.kron(&s.inclusion());
            Subspace::span_of_columns(&embed)
                .coordinates_of_columns(&lifted)
                .map(|_| &ix.kron(&yz.reducer()) * &lifted)
                .ok_or_else(|| GvError::Consistency("associator representative outside X ⊗ (Y ⊗^A Z)".into()))?
        }
    };
    let m = outer_right.reduce(&inner)?;
    Ok(BimoduleMap::new_unchecked(outer_left.result.clone(), outer_right.result.clone(), m))
}

/// Left and right unitors `A ⊗ M -> M` and `M ⊗ A -> M` (`A*` for `⊗^A`).
pub fn unitors<S: Scalar>(m: &Bimodule<S>, kind: TensorKind) -> Result<(BimoduleMap<S>, BimoduleMap<S>)> {
    Ok((left_unitor(m, kind)?, right_unitor(m, kind)?))
}

/// `A ⊗_A M -> M`, `[a ⊗ m] ↦ a.m`; or `A* ⊗^A M -> M`, `β ⊗ m ↦ β(1) m`.
pub fn left_unitor<S: Scalar>(m: &Bimodule<S>, kind: TensorKind) -> Result<BimoduleMap<S>> {
    let a = m.left_algebra().clone();
    let d = m.dim();
    let da = a.dim();
    match kind {
        TensorKind::Tensor => {
            let p = tensor_over(&Bimodule::regular(a), m)?;
            let act = Matrix::from_fn(d, da * d, |r, c| m.left_action(c / d).get(r, c % d).clone());
            let q = p.quotient().expect("coequalizer");
            let map = q.descend(&act).ok_or_else(|| GvError::Consistency("left unitor does not descend".into()))?;
            Ok(BimoduleMap::new_unchecked(p.result, m.clone(), map))
        }
        TensorKind::Cotensor => {
            let p = cotensor_over(&Bimodule::regular(a.clone()).dual(), m)?;
            let unit = Matrix::from_fn(1, da, |_, k| a.unit()[k].clone());
            let map = &unit.kron(&Matrix::identity(d)) * &p.lift();
            Ok(BimoduleMap::new_unchecked(p.result, m.clone(), map))
        }
    }
}

/// `M ⊗_A A -> M`, `[m ⊗ a] ↦ m.a`; or `M ⊗^A A* -> M`, `m ⊗ β ↦ β(1) m`.
pub fn right_unitor<S: Scalar>(m: &Bimodule<S>, kind: TensorKind) -> Result<BimoduleMap<S>> {
    let a = m.right_algebra().clone();
    let d = m.dim();
    let da = a.dim();
    match kind {
        TensorKind::Tensor => {
            let p = tensor_over(m, &Bimodule::regular(a))?;
            let act = Matrix::from_fn(d, d * da, |r, c| m.right_action(c % da).get(r, c / da).clone());
            let q = p.quotient().expect("coequalizer");
            let map = q.descend(&act).ok_or_else(|| GvError::Consistency("right unitor does not descend".into()))?;
            Ok(BimoduleMap::new_unchecked(p.result, m.clone(), map))
        }
        TensorKind::Cotensor => {
            let p = cotensor_over(m, &Bimodule::regular(a.clone()).dual())?;
            let unit = Matrix::from_fn(1, da, |_, k| a.unit()[k].clone());
            let map = &Matrix::identity(d).kron(&unit) * &p.lift();
            Ok(BimoduleMap::new_unchecked(p.result, m.clone(), map))
        }
    }
}

/// The coaction `M -> A* ⊗^A M`, `m ↦ Σ_k a^k ⊗ a_k.m`, inverse to the left
/// cotensor unitor.
pub fn left_coaction<S: Scalar>(m: &Bimodule<S>) -> Result<BimoduleMap<S>> {
    let a = m.left_algebra().clone();
    let (d, da) = (m.dim(), a.dim());
    let p = cotensor_over(&Bimodule::regular(a).dual(), m)?;
    let raw = Matrix::from_fn(da * d, d, |r, c| m.left_action(r / d).get(r % d, c).clone());
    let map = p.reduce(&raw)?;
    Ok(BimoduleMap::new_unchecked(m.clone(), p.result, map))
}

/// The coaction `M -> M ⊗^A A*`, `m ↦ Σ_k m.a_k ⊗ a^k`.
pub fn right_coaction<S: Scalar>(m: &Bimodule<S>) -> Result<BimoduleMap<S>> {
    let a = m.right_algebra().clone();
    let (d, da) = (m.dim(), a.dim());
    let p = cotensor_over(m, &Bimodule::regular(a).dual())?;
    let raw = Matrix::from_fn(d * da, d, |r, c| m.right_action(r % da).get(r / da, c).clone());
    let map = p.reduce(&raw)?;
    Ok(BimoduleMap::new_unchecked(m.clone(), p.result, map))
}

/// `0 -> A --f--> B --g--> C -> 0`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ShortExactSequence<S: Scalar> {
    f: BimoduleMap<S>,
    g: BimoduleMap<S>,
}

impl<S: Scalar> ShortExactSequence<S> {
    /// Checks composability and exactness.
    pub fn new(f: BimoduleMap<S>, g: BimoduleMap<S>) -> Result<Self> {
        if f.target() != g.source() {
            return Err(GvError::InvalidInput("maps of a short exact sequence are not composable".into()));
        }
        if !f.is_injective() || !g.is_surjective() || f.image() != g.kernel() {
            return Err(GvError::InvalidInput("sequence is not short exact".into()));
        }
        Ok(ShortExactSequence { f, g })
    }

    /// `0 -> U -> M -> M/U -> 0` for an invariant subspace `U`.
    pub fn from_submodule(m: &Bimodule<S>, sub: &Subspace<S>) -> Result<Self> {
        let (_, incl) = m.submodule(sub)?;
        let (_, proj) = m.quotient_module(sub)?;
        Self::new(incl, proj)
    }

    pub fn injection(&self) -> &BimoduleMap<S> {
        &self.f
    }

    pub fn surjection(&self) -> &BimoduleMap<S> {
        &self.g
    }

    /// The sequence with every term dualized (arrows reversed).
    pub fn dual(&self) -> Self {
        ShortExactSequence { f: self.g.dual(), g: self.f.dual() }
    }

    pub fn is_split(&self) -> bool {
        let homs = match self.g.target().hom_space(self.g.source()) {
            Ok(h) => h,
            Err(_) => return false,
        };
        // Look for s with g s = id among bimodule maps: a linear system.
        let (dc, db) = (self.g.target().dim(), self.g.source().dim());
        if homs.dim() == 0 {
            return dc == 0;
        }
        let cols: Vec<Vec<S>> = (0..homs.dim())
            .map(|l| {
                let s = Matrix::from_vec(db, dc, homs.basis_vector(l)).expect("shape");
                (self.g.matrix() * &s).into_data()
            })
            .collect();
        let system = Matrix::from_rows(cols).expect("shape").transpose();
        let rhs = Matrix::column(Matrix::<S>::identity(dc).into_data());
        crate::linalg::solve(&system, &rhs).is_some()
    }
}

/// On which side the fixed module is tensored.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum TensorSide {
    /// `W ⊗ -`
    Left,
    /// `- ⊗ W`
    Right,
}

/// Exactness of `W ⊗ -` (or `- ⊗ W`) on one short exact sequence.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ExactnessReport {
    pub kind: TensorKind,
    pub side: TensorSide,
    /// The tensored injection stays injective.
    pub injective: bool,
    /// Image of the tensored injection equals the kernel of the tensored
    /// surjection.
    pub middle_exact: bool,
    /// The tensored surjection stays surjective.
    pub surjective: bool,
}

impl ExactnessReport {
    pub fn left_exact(&self) -> bool {
        self.injective && self.middle_exact
    }

    pub fn right_exact(&self) -> bool {
        self.surjective && self.middle_exact
    }

    pub fn exact(&self) -> bool {
        self.injective && self.middle_exact && self.surjective
    }
}

pub fn check_exactness<S: Scalar>(
    kind: TensorKind,
    side: TensorSide,
    seq: &ShortExactSequence<S>,
    w: &Bimodule<S>,
) -> Result<ExactnessReport> {
    let apply = |f: &BimoduleMap<S>| match side {
        TensorSide::Left => tensor_map_right(w, f, kind),
        TensorSide::Right => tensor_map_left(f, w, kind),
    };
    let wf = apply(seq.injection())?;
    let wg = apply(seq.surjection())?;
    Ok(ExactnessReport {
        kind,
        side,
        injective: wf.is_injective(),
        middle_exact: wf.image() == wg.kernel(),
        surjective: wg.is_surjective(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::Algebra;
    use crate::scalar::Rational;
    use std::sync::Arc;

    type Q = Rational;

    struct Setup {
        s: Bimodule<Q>,
        p: Bimodule<Q>,
        i: Bimodule<Q>,
    }

    fn a2() -> Setup {
        let a = Arc::new(Algebra::<Q>::dual_numbers());
        let p = Bimodule::regular(a.clone());
        Setup { s: Bimodule::simple_module_of_local(a).unwrap(), i: p.dual(), p }
    }

    fn a3() -> Setup {
        let a = Arc::new(Algebra::<Q>::a3());
        let p = Bimodule::regular(a.clone());
        Setup { s: Bimodule::simple_module_of_local(a).unwrap(), i: p.dual(), p }
    }

    fn iota(m: &Setup) -> BimoduleMap<Q> {
        BimoduleMap::new(m.s.clone(), m.p.clone(), Matrix::from_i64_rows(&[&[0], &[1]])).unwrap()
    }

    #[test]
    fn balancing_ranks() {
        let m = a2();
        let phi = balancing_map(&m.s, &m.s).unwrap();
        assert_eq!((phi.rows(), phi.cols()), (1, 2));
        assert_eq!(phi.rank(), 0);
        assert_eq!(balancing_map(&m.p, &m.p).unwrap().rank(), 2);
        let k = Arc::new(Algebra::<Q>::ground_field());
        let kk = Bimodule::regular(k);
        assert!(balancing_map(&kk, &kk).unwrap().is_zero());
    }

    #[test]
    fn a2_tensor_facts() {
        let m = a2();
        assert_eq!(tensor_over(&m.s, &m.s).unwrap().result().dim(), 1);
        assert_eq!(tensor_over(&m.s, &m.p).unwrap().result().dim(), 1);
        let s_iota = tensor_map_right(&m.s, &iota(&m), TensorKind::Tensor).unwrap();
        assert!(s_iota.is_zero());
        assert_eq!(cotensor_over(&m.s, &m.s).unwrap().result().dim(), 1);
    }

    #[test]
    fn dual_dual_tensor_of_a3() {
        let m = a3();
        let t = tensor_over(&m.i, &m.i).unwrap();
        assert_eq!(t.result().dim(), 4);
        for k in 1..3 {
            assert!(t.result().left_action(k).is_zero());
            assert!(t.result().right_action(k).is_zero());
        }
    }

    #[test]
    fn cotensor_is_kernel_of_cobalancing() {
        for m in [a2(), a3()] {
            for (x, y) in [(&m.i, &m.p), (&m.s, &m.i), (&m.p, &m.p)] {
                let c = cotensor_over(x, y).unwrap();
                assert_eq!(c.subspace().unwrap(), &cobalancing_map(x, y).unwrap().kernel());
            }
        }
    }

    #[test]
    fn unitors_are_isomorphisms() {
        for m in [a2(), a3()] {
            for x in [&m.s, &m.p, &m.i] {
                for kind in [TensorKind::Tensor, TensorKind::Cotensor] {
                    let (l, r) = unitors(x, kind).unwrap();
                    assert!(l.is_isomorphism() && l.is_bimodule_map(), "{kind:?} left {x:?}");
                    assert!(r.is_isomorphism() && r.is_bimodule_map(), "{kind:?} right {x:?}");
                }
                let l = left_unitor(x, TensorKind::Cotensor).unwrap();
                assert!(l.compose(&left_coaction(x).unwrap()).unwrap().matrix().is_identity());
                let r = right_unitor(x, TensorKind::Cotensor).unwrap();
                assert!(r.compose(&right_coaction(x).unwrap()).unwrap().matrix().is_identity());
            }
        }
    }

    #[test]
    fn associators_are_isomorphisms() {
        let m = a2();
        for kind in [TensorKind::Tensor, TensorKind::Cotensor] {
            let a = associator(&m.p, &m.p, &m.p, kind).unwrap();
            assert_eq!(a.source().dim(), 2);
            assert!(a.is_isomorphism() && a.is_bimodule_map());
            let a = associator(&m.i, &m.s, &m.p, kind).unwrap();
            assert!(a.is_isomorphism() && a.is_bimodule_map());
        }
    }

    #[test]
    fn exactness_of_the_simple_sequence() {
        let m = a2();
        let (_, proj) = m.p.quotient_module(&iota(&m).image()).unwrap();
        let seq = ShortExactSequence::new(iota(&m), proj).unwrap();
        assert!(!seq.is_split());
        let r = check_exactness(TensorKind::Tensor, TensorSide::Left, &seq, &m.s).unwrap();
        assert!(r.right_exact() && !r.left_exact());
        let r = check_exactness(TensorKind::Tensor, TensorSide::Left, &seq, &m.p).unwrap();
        assert!(r.exact());
        let r = check_exactness(TensorKind::Cotensor, TensorSide::Left, &seq.dual(), &m.s).unwrap();
        assert!(r.left_exact() && !r.right_exact());
    }
}
