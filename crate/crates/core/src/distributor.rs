//! Distributors between the two tensor products and their coherence.
//!
//! `∂ˡ_{X,Y,Z}: X ⊗_A (Y ⊗^A Z) -> (X ⊗_A Y) ⊗^A Z` and
//! `∂ʳ_{X,Y,Z}: (X ⊗^A Y) ⊗_A Z -> X ⊗^A (Y ⊗_A Z)`, each built three ways:
//! through the equalizer and then the coequalizer, from the element formula,
//! and through the coequalizer first (the tilde variants).

use serde::Serialize;

use crate::bimodule::{Bimodule, BimoduleMap};
use crate::error::{GvError, Result};
use crate::linalg::{Matrix, Subspace, SubspaceSummary};
use crate::scalar::Scalar;
use crate::tensor::{
    associator, cotensor_over, induced_map, left_unitor, right_unitor, tensor_map_left, tensor_map_right, tensor_over,
    TensorKind, TensorPresentation,
};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Side {
    Left,
    Right,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Variant {
    Plain,
    Tilde,
}

/// A distributor map with the presentations of its domain and codomain.
#[derive(Clone, Debug)]
pub struct DistributorResult<S: Scalar> {
    pub side: Side,
    pub variant: Variant,
    pub map: BimoduleMap<S>,
    pub kernel: Subspace<S>,
    pub image: Subspace<S>,
    /// `Y ⊗^A Z` (left) or `X ⊗^A Y` (right).
    pub inner_domain: TensorPresentation<S>,
    /// `X ⊗_A (Y ⊗^A Z)` or `(X ⊗^A Y) ⊗_A Z`.
    pub domain: TensorPresentation<S>,
    /// `X ⊗_A Y` or `Y ⊗_A Z`.
    pub inner_codomain: TensorPresentation<S>,
    /// `(X ⊗_A Y) ⊗^A Z` or `X ⊗^A (Y ⊗_A Z)`.
    pub codomain: TensorPresentation<S>,
}

impl<S: Scalar> DistributorResult<S> {
    fn new(
        side: Side,
        variant: Variant,
        matrix: Matrix<S>,
        inner_domain: TensorPresentation<S>,
        domain: TensorPresentation<S>,
        inner_codomain: TensorPresentation<S>,
        codomain: TensorPresentation<S>,
    ) -> Self {
        let map = BimoduleMap::new_unchecked(domain.result().clone(), codomain.result().clone(), matrix);
        DistributorResult {
            side,
            variant,
            kernel: map.kernel(),
            image: map.image(),
            map,
            inner_domain,
            domain,
            inner_codomain,
            codomain,
        }
    }

    pub fn matrix(&self) -> &Matrix<S> {
        self.map.matrix()
    }

    pub fn is_isomorphism(&self) -> bool {
        self.map.is_isomorphism()
    }

    /// The domain element `[a ⊗ b]`.
    ///
    /// Left side: `a ∈ X` and `b ∈ Y ⊗_k Z` (which must lie in `Y ⊗^A Z`).
    /// Right side: `a ∈ X ⊗_k Y` (which must lie in `X ⊗^A Y`) and `b ∈ Z`.
    pub fn domain_element(&self, a: &[S], b: &[S]) -> Result<Vec<S>> {
        let pair = match self.side {
            Side::Left => kron_vec(a, &self.inner_domain.reduce(&Matrix::column(b.to_vec()))?.col(0)),
            Side::Right => kron_vec(&self.inner_domain.reduce(&Matrix::column(a.to_vec()))?.col(0), b),
        };
        Ok(self.domain.reduce(&Matrix::column(pair))?.col(0))
    }

    /// The codomain element `[a] ⊗ b` (left; `a ∈ X ⊗_k Y`, `b ∈ Z`) or
    /// `a ⊗ [b]` (right; `a ∈ X`, `b ∈ Y ⊗_k Z`).
    pub fn codomain_element(&self, a: &[S], b: &[S]) -> Result<Vec<S>> {
        let pair = match self.side {
            Side::Left => kron_vec(&self.inner_codomain.reduce(&Matrix::column(a.to_vec()))?.col(0), b),
            Side::Right => kron_vec(a, &self.inner_codomain.reduce(&Matrix::column(b.to_vec()))?.col(0)),
        };
        Ok(self.codomain.reduce(&Matrix::column(pair))?.col(0))
    }

    pub fn summary(&self) -> DistributorSummary {
        DistributorSummary {
            side: self.side,
            variant: self.variant,
            domain_dim: self.map.source().dim(),
            codomain_dim: self.map.target().dim(),
            rank: self.image.dim(),
            kernel: SubspaceSummary::from(&self.kernel),
            image: SubspaceSummary::from(&self.image),
            injective: self.kernel.dim() == 0,
            surjective: self.image.dim() == self.map.target().dim(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DistributorSummary {
    pub side: Side,
    pub variant: Variant,
    pub domain_dim: usize,
    pub codomain_dim: usize,
    pub rank: usize,
    pub kernel: SubspaceSummary,
    pub image: SubspaceSummary,
    pub injective: bool,
    pub surjective: bool,
}

pub fn kron_vec<S: Scalar>(a: &[S], b: &[S]) -> Vec<S> {
    let mut out = Vec::with_capacity(a.len() * b.len());
    for x in a {
        for y in b {
            out.push(x.mul_ref(y));
        }
    }
    out
}

fn descend<S: Scalar>(d: &TensorPresentation<S>, raw: &Matrix<S>, what: &str) -> Result<Matrix<S>> {
    d.quotient()
        .expect("coequalizer presentation")
        .descend(raw)
        .ok_or_else(|| GvError::Consistency(format!("{what} is not balanced")))
}

/// `∂ˡ_{X,Y,Z}`, built through the universal properties and checked against
/// the element formula `[x ⊗ Σ y_j ⊗ z_j] ↦ Σ [x ⊗ y_j] ⊗ z_j`.
pub fn distributor_left<S: Scalar>(x: &Bimodule<S>, y: &Bimodule<S>, z: &Bimodule<S>) -> Result<DistributorResult<S>> {
    let w = cotensor_over(y, z)?;
    let d = tensor_over(x, w.result())?;
    let xy = tensor_over(x, y)?;
    let t = cotensor_over(xy.result(), z)?;
    let ix = Matrix::identity(x.dim());
    let iz = Matrix::identity(z.dim());
    let x_iota = ix.kron(&w.lift());

    // γˡ: X ⊗_k (Y ⊗^A Z) ≅ (X ⊗_k Y) ⊗^A Z, then π_{X,Y} ⊗^A Z, then the
    // coequalizer.
    let xky = Bimodule::vector_tensor(x, y);
    let big = cotensor_over(&xky, z)?;
    let gamma = big.reduce(&x_iota)?;
    if !gamma.is_invertible() {
        return Err(GvError::Consistency("γˡ is not an isomorphism".into()));
    }
    let pi_z = induced_map(&big, &t, xy.projection().expect("coequalizer"), &iz)?;
    let via_universal = descend(&d, &(pi_z.matrix() * &gamma), "(π ⊗^A Z) ∘ γˡ")?;

    let formula = element_formula_left(&d, &xy, &t, &x_iota, &iz)?;
    if formula != via_universal {
        return Err(GvError::Consistency(format!(
            "∂ˡ construction paths disagree on ({x:?}, {y:?}, {z:?})"
        )));
    }
    Ok(DistributorResult::new(Side::Left, Variant::Plain, via_universal, w, d, xy, t))
}

fn element_formula_left<S: Scalar>(
    d: &TensorPresentation<S>,
    xy: &TensorPresentation<S>,
    t: &TensorPresentation<S>,
    x_iota: &Matrix<S>,
    iz: &Matrix<S>,
) -> Result<Matrix<S>> {
    // Images of all generators x_i ⊗ w_l, then solve ∂ π_D = F.
    let images = t.reduce(&(&xy.projection().expect("coequalizer").kron(iz) * x_iota))?;
    let pi = d.projection().expect("coequalizer");
    let sol = crate::linalg::solve(&pi.transpose(), &images.transpose())
        .ok_or_else(|| GvError::Consistency("element formula for ∂ˡ is not balanced".into()))?;
    Ok(sol.transpose())
}

/// `∂̃ˡ_{X,Y,Z}`: `X ⊗_A ι_{Y,Z}` followed by `γ̃ˡ: X ⊗_A (Y ⊗_k Z) ≅
/// (X ⊗_A Y) ⊗_k Z`, read off in the equalizer.
pub fn distributor_left_tilde<S: Scalar>(x: &Bimodule<S>, y: &Bimodule<S>, z: &Bimodule<S>) -> Result<DistributorResult<S>> {
    let w = cotensor_over(y, z)?;
    let d = tensor_over(x, w.result())?;
    let xy = tensor_over(x, y)?;
    let t = cotensor_over(xy.result(), z)?;
    let ykz = Bimodule::vector_tensor(y, z);
    let d2 = tensor_over(x, &ykz)?;
    let x_iota = induced_map(&d, &d2, &Matrix::identity(x.dim()), &w.lift())?;
    let gamma = descend(&d2, &xy.projection().expect("coequalizer").kron(&Matrix::identity(z.dim())), "γ̃ˡ")?;
    if !gamma.is_invertible() {
        return Err(GvError::Consistency("γ̃ˡ is not an isomorphism".into()));
    }
    let m = t.reduce(&(&gamma * x_iota.matrix()))?;
    Ok(DistributorResult::new(Side::Left, Variant::Tilde, m, w, d, xy, t))
}

/// `∂ʳ_{X,Y,Z}`, built through the universal properties and checked against
/// the element formula `[(Σ x_i ⊗ y_i) ⊗ z] ↦ Σ x_i ⊗ [y_i ⊗ z]`.
pub fn distributor_right<S: Scalar>(x: &Bimodule<S>, y: &Bimodule<S>, z: &Bimodule<S>) -> Result<DistributorResult<S>> {
    let v = cotensor_over(x, y)?;
    let d = tensor_over(v.result(), z)?;
    let yz = tensor_over(y, z)?;
    let t = cotensor_over(x, yz.result())?;
    let ix = Matrix::identity(x.dim());
    let iz = Matrix::identity(z.dim());
    let iota_z = v.lift().kron(&iz);

    let ykz = Bimodule::vector_tensor(y, z);
    let big = cotensor_over(x, &ykz)?;
    let gamma = big.reduce(&iota_z)?;
    if !gamma.is_invertible() {
        return Err(GvError::Consistency("γʳ is not an isomorphism".into()));
    }
    let x_pi = induced_map(&big, &t, &ix, yz.projection().expect("coequalizer"))?;
    let via_universal = descend(&d, &(x_pi.matrix() * &gamma), "(X ⊗^A π) ∘ γʳ")?;

    let images = t.reduce(&(&ix.kron(yz.projection().expect("coequalizer")) * &iota_z))?;
    let pi = d.projection().expect("coequalizer");
    let formula = crate::linalg::solve(&pi.transpose(), &images.transpose())
        .ok_or_else(|| GvError::Consistency("element formula for ∂ʳ is not balanced".into()))?
        .transpose();
    if formula != via_universal {
        return Err(GvError::Consistency(format!(
            "∂ʳ construction paths disagree on ({x:?}, {y:?}, {z:?})"
        )));
    }
    Ok(DistributorResult::new(Side::Right, Variant::Plain, via_universal, v, d, yz, t))
}

/// `∂̃ʳ_{X,Y,Z}`: `ι_{X,Y} ⊗_A Z` followed by `γ̃ʳ: (X ⊗_k Y) ⊗_A Z ≅
/// X ⊗_k (Y ⊗_A Z)`, read off in the equalizer.
pub fn distributor_right_tilde<S: Scalar>(x: &Bimodule<S>, y: &Bimodule<S>, z: &Bimodule<S>) -> Result<DistributorResult<S>> {
    let v = cotensor_over(x, y)?;
    let d = tensor_over(v.result(), z)?;
    let yz = tensor_over(y, z)?;
    let t = cotensor_over(x, yz.result())?;
    let xky = Bimodule::vector_tensor(x, y);
    let d2 = tensor_over(&xky, z)?;
    let iota_z = induced_map(&d, &d2, &v.lift(), &Matrix::identity(z.dim()))?;
    let gamma = descend(&d2, &Matrix::identity(x.dim()).kron(yz.projection().expect("coequalizer")), "γ̃ʳ")?;
    if !gamma.is_invertible() {
        return Err(GvError::Consistency("γ̃ʳ is not an isomorphism".into()));
    }
    let m = t.reduce(&(&gamma * iota_z.matrix()))?;
    Ok(DistributorResult::new(Side::Right, Variant::Tilde, m, v, d, yz, t))
}

pub fn distributor<S: Scalar>(side: Side, x: &Bimodule<S>, y: &Bimodule<S>, z: &Bimodule<S>) -> Result<DistributorResult<S>> {
    match side {
        Side::Left => distributor_left(x, y, z),
        Side::Right => distributor_right(x, y, z),
    }
}

/// The tilde variant, failing unless it equals the plain distributor.
pub fn tilde_variant<S: Scalar>(side: Side, x: &Bimodule<S>, y: &Bimodule<S>, z: &Bimodule<S>) -> Result<DistributorResult<S>> {
    let (plain, tilde) = match side {
        Side::Left => (distributor_left(x, y, z)?, distributor_left_tilde(x, y, z)?),
        Side::Right => (distributor_right(x, y, z)?, distributor_right_tilde(x, y, z)?),
    };
    if plain.map != tilde.map {
        return Err(GvError::Consistency(format!(
            "tilde and plain {side:?} distributors differ on ({x:?}, {y:?}, {z:?})"
        )));
    }
    Ok(tilde)
}

/// Outcome of comparing the two paths of one diagram.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DiagramCheck {
    pub name: String,
    pub commutes: bool,
    /// First domain basis vector on which the paths differ, and the
    /// difference of their images.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub counterexample: Option<Counterexample>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Counterexample {
    pub basis_index: usize,
    pub difference: Vec<String>,
}

fn compare<S: Scalar>(name: &str, lhs: &BimoduleMap<S>, rhs: &BimoduleMap<S>) -> Result<DiagramCheck> {
    if lhs.source() != rhs.source() || lhs.target() != rhs.target() {
        return Err(GvError::Consistency(format!("{name}: the two paths have different endpoints")));
    }
    let diff = lhs.matrix() - rhs.matrix();
    let counterexample = (0..diff.cols()).find(|&c| diff.col(c).iter().any(|e| !e.is_zero())).map(|c| Counterexample {
        basis_index: c,
        difference: diff.col(c).iter().map(S::to_exact_string).collect(),
    });
    Ok(DiagramCheck { name: name.to_string(), commutes: counterexample.is_none(), counterexample })
}

fn after<S: Scalar>(maps: &[&BimoduleMap<S>]) -> Result<BimoduleMap<S>> {
    // maps listed in order of application
    let mut acc = maps[0].clone();
    for f in &maps[1..] {
        acc = f.compose(&acc)?;
    }
    Ok(acc)
}

fn inverse<S: Scalar>(f: &BimoduleMap<S>) -> Result<BimoduleMap<S>> {
    f.inverse().ok_or_else(|| GvError::Consistency("associator is not invertible".into()))
}

const T: TensorKind = TensorKind::Tensor;
const C: TensorKind = TensorKind::Cotensor;

/// The six mixed pentagons on `(W, X, Y, Z)`. The last two involve both
/// distributors.
pub fn check_mixed_pentagons<S: Scalar>(
    w: &Bimodule<S>,
    x: &Bimodule<S>,
    y: &Bimodule<S>,
    z: &Bimodule<S>,
) -> Result<Vec<DiagramCheck>> {
    let dl = |a: &Bimodule<S>, b: &Bimodule<S>, c: &Bimodule<S>| distributor_left(a, b, c).map(|d| d.map);
    let dr = |a: &Bimodule<S>, b: &Bimodule<S>, c: &Bimodule<S>| distributor_right(a, b, c).map(|d| d.map);
    let ten = |a: &Bimodule<S>, b: &Bimodule<S>| tensor_over(a, b).map(TensorPresentation::into_result);
    let cot = |a: &Bimodule<S>, b: &Bimodule<S>| cotensor_over(a, b).map(TensorPresentation::into_result);
    let mut out = Vec::with_capacity(6);

    // (W ⊗ X) ⊗ (Y ⊕ Z) -> (W ⊗ (X ⊗ Y)) ⊕ Z
    {
        let wx = ten(w, x)?;
        let lhs = after(&[&dl(&wx, y, z)?, &tensor_map_left(&associator(w, x, y, T)?, z, C)?])?;
        let yz = cot(y, z)?;
        let rhs = after(&[
            &associator(w, x, &yz, T)?,
            &tensor_map_right(w, &dl(x, y, z)?, T)?,
            &dl(w, &ten(x, y)?, z)?,
        ])?;
        out.push(compare("left/tensor-associator", &lhs, &rhs)?);
    }
    // W ⊗ ((X ⊕ Y) ⊕ Z) -> ((W ⊗ X) ⊕ Y) ⊕ Z
    {
        let xy = cot(x, y)?;
        let lhs = after(&[&dl(w, &xy, z)?, &tensor_map_left(&dl(w, x, y)?, z, C)?])?;
        let rhs = after(&[
            &tensor_map_right(w, &associator(x, y, z, C)?, T)?,
            &dl(w, x, &cot(y, z)?)?,
            &inverse(&associator(&ten(w, x)?, y, z, C)?)?,
        ])?;
        out.push(compare("left/cotensor-associator", &lhs, &rhs)?);
    }
    // ((W ⊕ X) ⊗ Y) ⊗ Z -> W ⊕ (X ⊗ (Y ⊗ Z))
    {
        let lhs = after(&[
            &tensor_map_left(&dr(w, x, y)?, z, T)?,
            &dr(w, &ten(x, y)?, z)?,
            &tensor_map_right(w, &associator(x, y, z, T)?, C)?,
        ])?;
        let rhs = after(&[&associator(&cot(w, x)?, y, z, T)?, &dr(w, x, &ten(y, z)?)?])?;
        out.push(compare("right/tensor-associator", &lhs, &rhs)?);
    }
    // ((W ⊕ X) ⊕ Y) ⊗ Z -> W ⊕ (X ⊕ (Y ⊗ Z))
    {
        let lhs = after(&[&dr(&cot(w, x)?, y, z)?, &associator(w, x, &ten(y, z)?, C)?])?;
        let rhs = after(&[
            &tensor_map_left(&associator(w, x, y, C)?, z, T)?,
            &dr(w, &cot(x, y)?, z)?,
            &tensor_map_right(w, &dr(x, y, z)?, C)?,
        ])?;
        out.push(compare("right/cotensor-associator", &lhs, &rhs)?);
    }
    // (W ⊕ X) ⊗ (Y ⊕ Z) -> (W ⊕ (X ⊗ Y)) ⊕ Z
    {
        let lhs = after(&[&dl(&cot(w, x)?, y, z)?, &tensor_map_left(&dr(w, x, y)?, z, C)?])?;
        let rhs = after(&[
            &dr(w, x, &cot(y, z)?)?,
            &tensor_map_right(w, &dl(x, y, z)?, C)?,
            &inverse(&associator(w, &ten(x, y)?, z, C)?)?,
        ])?;
        out.push(compare("mixed/cotensor-outside", &lhs, &rhs)?);
    }
    // (W ⊗ (X ⊕ Y)) ⊗ Z -> (W ⊗ X) ⊕ (Y ⊗ Z)
    {
        let lhs = after(&[&tensor_map_left(&dl(w, x, y)?, z, T)?, &dr(&ten(w, x)?, y, z)?])?;
        let rhs = after(&[
            &associator(w, &cot(x, y)?, z, T)?,
            &tensor_map_right(w, &dr(x, y, z)?, T)?,
            &dl(w, x, &ten(y, z)?)?,
        ])?;
        out.push(compare("mixed/tensor-outside", &lhs, &rhs)?);
    }
    Ok(out)
}

/// The four unitor-distributor triangles on the pair `(X, Y)`.
pub fn check_triangles<S: Scalar>(x: &Bimodule<S>, y: &Bimodule<S>) -> Result<Vec<DiagramCheck>> {
    let a = Bimodule::regular(x.left_algebra().clone());
    let k = a.dual();
    let ten = |p: &Bimodule<S>, q: &Bimodule<S>| tensor_over(p, q).map(TensorPresentation::into_result);
    let cot = |p: &Bimodule<S>, q: &Bimodule<S>| cotensor_over(p, q).map(TensorPresentation::into_result);
    let mut out = Vec::with_capacity(4);

    // A ⊗ (X ⊕ Y) -> X ⊕ Y
    let lhs = after(&[&distributor_left(&a, x, y)?.map, &tensor_map_left(&left_unitor(x, T)?, y, C)?])?;
    out.push(compare("left unitor of ⊗_A", &lhs, &left_unitor(&cot(x, y)?, T)?)?);

    // X ⊗ (Y ⊕ A*) -> X ⊗ Y
    let lhs = after(&[&distributor_left(x, y, &k)?.map, &right_unitor(&ten(x, y)?, C)?])?;
    out.push(compare("right unitor of ⊗^A", &lhs, &tensor_map_right(x, &right_unitor(y, C)?, T)?)?);

    // (X ⊕ Y) ⊗ A -> X ⊕ Y
    let lhs = after(&[&distributor_right(x, y, &a)?.map, &tensor_map_right(x, &right_unitor(y, T)?, C)?])?;
    out.push(compare("right unitor of ⊗_A", &lhs, &right_unitor(&cot(x, y)?, T)?)?);

    // (A* ⊕ X) ⊗ Y -> X ⊗ Y
    let lhs = after(&[&distributor_right(&k, x, y)?.map, &left_unitor(&ten(x, y)?, C)?])?;
    out.push(compare("left unitor of ⊗^A", &lhs, &tensor_map_left(&left_unitor(x, C)?, y, T)?)?);

    Ok(out)
}

/// Naturality of the distributor: `∂ ∘ (f ⊗ (g ⊕ h)) = ((f ⊗ g) ⊕ h) ∘ ∂`
/// on the left, and the mirror statement on the right.
pub fn check_naturality<S: Scalar>(
    side: Side,
    f: &BimoduleMap<S>,
    g: &BimoduleMap<S>,
    h: &BimoduleMap<S>,
) -> Result<DiagramCheck> {
    let src = distributor(side, f.source(), g.source(), h.source())?.map;
    let tgt = distributor(side, f.target(), g.target(), h.target())?.map;
    let (before, later) = match side {
        Side::Left => (
            crate::tensor::tensor_of_maps(f, &crate::tensor::tensor_of_maps(g, h, C)?, T)?,
            crate::tensor::tensor_of_maps(&crate::tensor::tensor_of_maps(f, g, T)?, h, C)?,
        ),
        Side::Right => (
            crate::tensor::tensor_of_maps(&crate::tensor::tensor_of_maps(f, g, C)?, h, T)?,
            crate::tensor::tensor_of_maps(f, &crate::tensor::tensor_of_maps(g, h, T)?, C)?,
        ),
    };
    let lhs = tgt.compose(&before)?;
    let rhs = later.compose(&src)?;
    compare(&format!("{side:?} distributor naturality"), &lhs, &rhs)
}
