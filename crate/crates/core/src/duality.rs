//! The duality functor, the dualizing object `A*`, internal Homs and coHoms.

use std::collections::HashMap;
use std::sync::{Arc, Mutex};

use serde::Serialize;

use crate::algebra::{AlgebraMorphism, AlgebraRef};
use crate::bimodule::{Bimodule, BimoduleMap};
use crate::error::{GvError, Result};
use crate::linalg::{Matrix, Subspace};
use crate::scalar::Scalar;
use crate::tensor::{cotensor_over, tensor_over, TensorPresentation};

/// `G(M) = M*`, with sides swapped.
pub fn dual<S: Scalar>(m: &Bimodule<S>) -> Bimodule<S> {
    m.dual()
}

/// `G(f) = f^T`.
pub fn dual_map<S: Scalar>(f: &BimoduleMap<S>) -> BimoduleMap<S> {
    f.dual()
}

/// The canonical map `M -> G(G(M))`, `m ↦ (β ↦ β(m))`.
///
/// With the transpose convention for `G` this is the identity matrix.
pub fn double_dual_map<S: Scalar>(m: &Bimodule<S>) -> BimoduleMap<S> {
    BimoduleMap::new_unchecked(m.clone(), m.dual().dual(), Matrix::identity(m.dim()))
}

/// Permutation `X ⊗ Y -> Y ⊗ X`.
pub fn swap_matrix<S: Scalar>(dx: usize, dy: usize) -> Matrix<S> {
    let mut m = Matrix::zeros(dx * dy, dx * dy);
    for i in 0..dx {
        for j in 0..dy {
            m.set(j * dx + i, i * dy + j, S::one());
        }
    }
    m
}

/// The value at `1` of functionals on `A` in the dual basis.
fn unit_row<S: Scalar>(a: &AlgebraRef<S>) -> Matrix<S> {
    Matrix::from_fn(1, a.dim(), |_, k| a.unit()[k].clone())
}

fn vec_to_matrix<S: Scalar>(rows: usize, cols: usize, v: Vec<S>) -> Matrix<S> {
    Matrix::from_vec(rows, cols, v).expect("vector length matches matrix shape")
}

/// A Grothendieck-Verdier structure on `A`-bimodules with dualizing object
/// `K` (by default `A*`).
#[derive(Debug)]
pub struct GvStructure<S: Scalar> {
    algebra: AlgebraRef<S>,
    dualizing: Bimodule<S>,
    standard: bool,
    cache: Mutex<HashMap<Bimodule<S>, Bimodule<S>>>,
}

impl<S: Scalar> GvStructure<S> {
    pub fn new(algebra: AlgebraRef<S>) -> Self {
        let dualizing = Bimodule::regular(algebra.clone()).dual();
        GvStructure { algebra, dualizing, standard: true, cache: Mutex::new(HashMap::new()) }
    }

    /// Dualizing object `A* ⊗_A A_ψ` for an automorphism `ψ`.
    pub fn twisted(algebra: AlgebraRef<S>, psi: &AlgebraMorphism<S>) -> Result<Self> {
        let twist = Bimodule::twisted_regular(algebra.clone(), psi)?;
        let k = tensor_over(&Bimodule::regular(algebra.clone()).dual(), &twist)?.into_result();
        Ok(GvStructure { algebra, dualizing: k, standard: false, cache: Mutex::new(HashMap::new()) })
    }

    pub fn algebra(&self) -> &AlgebraRef<S> {
        &self.algebra
    }

    pub fn dualizing_object(&self) -> &Bimodule<S> {
        &self.dualizing
    }

    /// The duality functor `G_K = iHomʳ(-, K)`; for `K = A*` this is the
    /// linear dual.
    pub fn duality(&self, m: &Bimodule<S>) -> Result<Bimodule<S>> {
        if let Some(hit) = self.cache.lock().expect("cache lock").get(m) {
            return Ok(hit.clone());
        }
        let value = if self.standard { m.dual() } else { internal_hom_right(m, &self.dualizing)?.object };
        self.cache.lock().expect("cache lock").insert(m.clone(), value.clone());
        Ok(value)
    }

    pub fn cache_len(&self) -> usize {
        self.cache.lock().expect("cache lock").len()
    }
}

/// `ϖ(h)` for `h: X ⊗_A Y -> A*`: the map `X -> Y*`,
/// `x ↦ (y ↦ h([x ⊗ y])(1))`. Matrices are `dim A x dim(X ⊗_A Y)` and
/// `dim Y x dim X`.
pub fn varpi_apply<S: Scalar>(xy: &TensorPresentation<S>, h: &Matrix<S>) -> Matrix<S> {
    let (dx, dy) = xy.factor_dims();
    let a = xy.factors().0.right_algebra();
    let row = &(&unit_row(a) * h) * xy.projection().expect("coequalizer presentation");
    Matrix::from_fn(dy, dx, |j, i| row.get(0, i * dy + j).clone())
}

/// `ϖ⁻¹(g)` for `g: X -> Y*`: `[x ⊗ y] ↦ (b ↦ g(x)(y.b))`.
pub fn varpi_inverse_apply<S: Scalar>(xy: &TensorPresentation<S>, g: &Matrix<S>) -> Result<Matrix<S>> {
    let (dx, dy) = xy.factor_dims();
    let y = xy.factors().1;
    let a = y.left_algebra();
    let raw = Matrix::from_fn(a.dim(), dx * dy, |k, c| {
        let (i, j) = (c / dy, c % dy);
        let mut s = S::zero();
        for l in 0..dy {
            s.add_mul_assign(g.get(l, i), y.right_action(k).get(l, j));
        }
        s
    });
    xy.quotient()
        .expect("coequalizer presentation")
        .descend(&raw)
        .ok_or_else(|| GvError::Consistency("inverse of varpi does not descend".into()))
}

/// `ϖ_{X,Y}` as a linear map between the hom spaces, in their RREF bases.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Varpi<S: Scalar> {
    /// Basis of `Hom(X ⊗_A Y, A*)`.
    pub source: Subspace<S>,
    /// Basis of `Hom(X, G(Y))`.
    pub target: Subspace<S>,
    pub forward: Matrix<S>,
    pub backward: Matrix<S>,
}

impl<S: Scalar> Varpi<S> {
    pub fn is_bijection(&self) -> bool {
        self.source.dim() == self.target.dim()
            && (&self.backward * &self.forward).is_identity()
            && (&self.forward * &self.backward).is_identity()
    }
}

/// Computes `ϖ_{X,Y}` and its inverse on bases of both hom spaces.
///
/// Fails with a consistency error if either formula leaves its hom space.
pub fn varpi<S: Scalar>(x: &Bimodule<S>, y: &Bimodule<S>) -> Result<Varpi<S>> {
    let xy = tensor_over(x, y)?;
    let k = Bimodule::regular(x.right_algebra().clone()).dual();
    let gy = y.dual();
    let source = xy.result().hom_space(&k)?;
    let target = x.hom_space(&gy)?;
    let (dt, dx, dy, da) = (xy.result().dim(), x.dim(), y.dim(), k.dim());
    let mut fwd = Vec::new();
    for l in 0..source.dim() {
        let h = vec_to_matrix(da, dt, source.basis_vector(l));
        let g = varpi_apply(&xy, &h);
        fwd.push(target.coordinates(g.data()).ok_or_else(|| GvError::Consistency("varpi left the hom space".into()))?);
    }
    let mut bwd = Vec::new();
    for l in 0..target.dim() {
        let g = vec_to_matrix(dy, dx, target.basis_vector(l));
        let h = varpi_inverse_apply(&xy, &g)?;
        bwd.push(source.coordinates(h.data()).ok_or_else(|| GvError::Consistency("inverse varpi left the hom space".into()))?);
    }
    Ok(Varpi {
        forward: columns_matrix(target.dim(), fwd),
        backward: columns_matrix(source.dim(), bwd),
        source,
        target,
    })
}

fn columns_matrix<S: Scalar>(rows: usize, cols: Vec<Vec<S>>) -> Matrix<S> {
    let n = cols.len();
    Matrix::from_fn(rows, n, |r, c| cols[c][r].clone())
}

/// Naturality of `ϖ` in the first argument along `f: X' -> X`:
/// `ϖ(h ∘ (f ⊗ Y)) = ϖ(h) ∘ f` for every basis element `h`.
pub fn varpi_natural_in_first<S: Scalar>(f: &BimoduleMap<S>, y: &Bimodule<S>) -> Result<bool> {
    let xy = tensor_over(f.target(), y)?;
    let xpy = tensor_over(f.source(), y)?;
    let fy = crate::tensor::induced_map(&xpy, &xy, f.matrix(), &Matrix::identity(y.dim()))?;
    let k = Bimodule::regular(y.left_algebra().clone()).dual();
    let homs = xy.result().hom_space(&k)?;
    for l in 0..homs.dim() {
        let h = vec_to_matrix(k.dim(), xy.result().dim(), homs.basis_vector(l));
        let lhs = varpi_apply(&xpy, &(&h * fy.matrix()));
        let rhs = &varpi_apply(&xy, &h) * f.matrix();
        if lhs != rhs {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Naturality of `ϖ` in the second argument along `g: Y' -> Y`:
/// `ϖ(h ∘ (X ⊗ g)) = G(g) ∘ ϖ(h)`.
pub fn varpi_natural_in_second<S: Scalar>(x: &Bimodule<S>, g: &BimoduleMap<S>) -> Result<bool> {
    let xy = tensor_over(x, g.target())?;
    let xyp = tensor_over(x, g.source())?;
    let xg = crate::tensor::induced_map(&xyp, &xy, &Matrix::identity(x.dim()), g.matrix())?;
    let k = Bimodule::regular(x.right_algebra().clone()).dual();
    let homs = xy.result().hom_space(&k)?;
    let gt = g.matrix().transpose();
    for l in 0..homs.dim() {
        let h = vec_to_matrix(k.dim(), xy.result().dim(), homs.basis_vector(l));
        let lhs = varpi_apply(&xyp, &(&h * xg.matrix()));
        let rhs = &gt * &varpi_apply(&xy, &h);
        if lhs != rhs {
            return Ok(false);
        }
    }
    Ok(true)
}

/// `X ⊗̄ Y := G⁻¹(G(Y) ⊗_A G(X))`.
pub fn second_tensor<S: Scalar>(x: &Bimodule<S>, y: &Bimodule<S>) -> Result<Bimodule<S>> {
    Ok(tensor_over(&y.dual(), &x.dual())?.result().dual())
}

/// The canonical isomorphism `X ⊗̄ Y -> X ⊗^A Y`.
///
/// A functional on `Y* ⊗_A X*` pulls back to one on `Y* ⊗ X*`, which is a
/// vector of `Y ⊗ X ≅ X ⊗ Y` under `⟨x ⊗ y, η ⊗ ξ⟩ = ξ(x) η(y)`.
pub fn second_tensor_comparison<S: Scalar>(x: &Bimodule<S>, y: &Bimodule<S>) -> Result<BimoduleMap<S>> {
    let inner = tensor_over(&y.dual(), &x.dual())?;
    let co = cotensor_over(x, y)?;
    let pullback = inner.projection().expect("coequalizer").transpose();
    let to_xy = &swap_matrix::<S>(y.dim(), x.dim()) * &pullback;
    let m = co.reduce(&to_xy)?;
    Ok(BimoduleMap::new_unchecked(inner.result().dual(), co.result().clone(), m))
}

/// Which internal (co)Hom a result represents.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum HomVariant {
    HomRight,
    HomLeft,
    CoHomRight,
    CoHomLeft,
}

/// An internal Hom realized as a space of linear maps.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct InternalHom<S: Scalar> {
    pub variant: HomVariant,
    pub object: Bimodule<S>,
    /// The maps `N -> X`, as row-major `vec(f)` with `f` of shape
    /// `dim X x dim N`.
    pub maps: Subspace<S>,
    pub source_dim: usize,
    pub target_dim: usize,
}

impl<S: Scalar> InternalHom<S> {
    /// The `l`-th basis map as a `dim X x dim N` matrix.
    pub fn basis_map(&self, l: usize) -> Matrix<S> {
        vec_to_matrix(self.target_dim, self.source_dim, self.maps.basis_vector(l))
    }

    /// The matrix of the map with given coordinates.
    pub fn map_of(&self, coords: &[S]) -> Matrix<S> {
        let mut v = vec![S::zero(); self.maps.ambient_dim()];
        for (l, c) in coords.iter().enumerate() {
            for (slot, b) in v.iter_mut().zip(self.maps.basis().row(l)) {
                slot.add_mul_assign(c, b);
            }
        }
        vec_to_matrix(self.target_dim, self.source_dim, v)
    }

    /// Coordinates of a linear map `N -> X`, if it belongs to the space.
    pub fn coordinates(&self, f: &Matrix<S>) -> Option<Vec<S>> {
        self.maps.coordinates(f.data())
    }
}

fn restrict_to<S: Scalar>(
    space: &Subspace<S>,
    left_alg: AlgebraRef<S>,
    right_alg: AlgebraRef<S>,
    left_ops: Vec<Matrix<S>>,
    right_ops: Vec<Matrix<S>>,
) -> Result<Bimodule<S>> {
    let incl = space.inclusion();
    let restrict = |m: &Matrix<S>| {
        space
            .coordinates_of_columns(&(m * &incl))
            .ok_or_else(|| GvError::Consistency("internal Hom is not stable under the actions".into()))
    };
    let left = left_ops.iter().map(restrict).collect::<Result<Vec<_>>>()?;
    let right = right_ops.iter().map(restrict).collect::<Result<Vec<_>>>()?;
    Bimodule::new(left_alg, right_alg, space.dim(), left, right)
}

/// `iHomʳ(N, X) = Hom_A(N_A, X_A)` for a `(B, A)`-bimodule `N` and a
/// `(C, A)`-bimodule `X`; a `(C, B)`-bimodule via `(c.f.b)(n) = c.f(b.n)`.
pub fn internal_hom_right<S: Scalar>(n: &Bimodule<S>, x: &Bimodule<S>) -> Result<InternalHom<S>> {
    let maps = n.right_hom_space(x)?;
    let (dn, dx) = (n.dim(), x.dim());
    let (i_n, i_x) = (Matrix::identity(dn), Matrix::identity(dx));
    let left_ops = x.left_actions().iter().map(|l| l.kron(&i_n)).collect();
    let right_ops = n.left_actions().iter().map(|l| i_x.kron(&l.transpose())).collect();
    let object = restrict_to(&maps, x.left_algebra().clone(), n.left_algebra().clone(), left_ops, right_ops)?;
    Ok(InternalHom { variant: HomVariant::HomRight, object, maps, source_dim: dn, target_dim: dx })
}

/// `iHomˡ(N, X) = Hom_A(ᴬN, ᴬX)` for an `(A, B)`-bimodule `N` and an
/// `(A, C)`-bimodule `X`; a `(B, C)`-bimodule via `(b.f.c)(n) = f(n.b).c`.
pub fn internal_hom_left<S: Scalar>(n: &Bimodule<S>, x: &Bimodule<S>) -> Result<InternalHom<S>> {
    let maps = n.left_hom_space(x)?;
    let (dn, dx) = (n.dim(), x.dim());
    let (i_n, i_x) = (Matrix::identity(dn), Matrix::identity(dx));
    let left_ops = n.right_actions().iter().map(|r| i_x.kron(&r.transpose())).collect();
    let right_ops = x.right_actions().iter().map(|r| r.kron(&i_n)).collect();
    let object = restrict_to(&maps, n.right_algebra().clone(), x.right_algebra().clone(), left_ops, right_ops)?;
    Ok(InternalHom { variant: HomVariant::HomLeft, object, maps, source_dim: dn, target_dim: dx })
}

/// `icoHomʳ(X, Y) = Y ⊗_A G⁻¹(X)`.
pub fn internal_cohom_right<S: Scalar>(x: &Bimodule<S>, y: &Bimodule<S>) -> Result<TensorPresentation<S>> {
    tensor_over(y, &x.dual())
}

/// `icoHomˡ(X, Y) = G(X) ⊗_A Y`.
pub fn internal_cohom_left<S: Scalar>(x: &Bimodule<S>, y: &Bimodule<S>) -> Result<TensorPresentation<S>> {
    tensor_over(&x.dual(), y)
}

/// `iHomʳ(N, X) -> X ⊗^A N*`. The two are the same subspace of
/// `X ⊗ N* ≅ Hom_k(N, X)`, so this is a change of coordinates.
pub fn internal_hom_right_vs_cotensor<S: Scalar>(n: &Bimodule<S>, x: &Bimodule<S>) -> Result<BimoduleMap<S>> {
    let ih = internal_hom_right(n, x)?;
    let co = cotensor_over(x, &n.dual())?;
    let m = co.reduce(&ih.maps.inclusion())?;
    Ok(BimoduleMap::new_unchecked(ih.object, co.result().clone(), m))
}

/// `G(N ⊗_A G⁻¹X) -> iHomʳ(N, X)`, sending `θ` to the map `f` with
/// `ξ(f(n)) = θ([n ⊗ ξ])`.
pub fn internal_hom_right_vs_dual<S: Scalar>(n: &Bimodule<S>, x: &Bimodule<S>) -> Result<BimoduleMap<S>> {
    let ih = internal_hom_right(n, x)?;
    let t = tensor_over(n, &x.dual())?;
    let pullback = t.projection().expect("coequalizer").transpose();
    let vecs = &swap_matrix::<S>(n.dim(), x.dim()) * &pullback;
    let m = ih
        .maps
        .coordinates_of_columns(&vecs)
        .ok_or_else(|| GvError::Consistency("dual of N ⊗_A X* does not land in iHomʳ(N, X)".into()))?;
    Ok(BimoduleMap::new_unchecked(t.result().dual(), ih.object, m))
}

/// `iHomˡ(N, X) -> N* ⊗^A X`, reordering `Hom_k(N, X) ≅ X ⊗ N*` to `N* ⊗ X`.
pub fn internal_hom_left_vs_cotensor<S: Scalar>(n: &Bimodule<S>, x: &Bimodule<S>) -> Result<BimoduleMap<S>> {
    let ih = internal_hom_left(n, x)?;
    let co = cotensor_over(&n.dual(), x)?;
    let swapped = &swap_matrix::<S>(x.dim(), n.dim()) * &ih.maps.inclusion();
    let m = co.reduce(&swapped)?;
    Ok(BimoduleMap::new_unchecked(ih.object, co.result().clone(), m))
}

/// `G(G⁻¹X ⊗_A N) -> iHomˡ(N, X)`, `θ ↦ f` with `ξ(f(n)) = θ([ξ ⊗ n])`.
pub fn internal_hom_left_vs_dual<S: Scalar>(n: &Bimodule<S>, x: &Bimodule<S>) -> Result<BimoduleMap<S>> {
    let ih = internal_hom_left(n, x)?;
    let t = tensor_over(&x.dual(), n)?;
    let vecs = t.projection().expect("coequalizer").transpose();
    let m = ih
        .maps
        .coordinates_of_columns(&vecs)
        .ok_or_else(|| GvError::Consistency("dual of X* ⊗_A N does not land in iHomˡ(N, X)".into()))?;
    Ok(BimoduleMap::new_unchecked(t.result().dual(), ih.object, m))
}

/// `iev: iHomʳ(X, Y) ⊗_A X -> Y`, `[f ⊗ v] ↦ f(v)`.
pub fn evaluation_right<S: Scalar>(x: &Bimodule<S>, y: &Bimodule<S>) -> Result<BimoduleMap<S>> {
    let ih = internal_hom_right(x, y)?;
    let t = tensor_over(&ih.object, x)?;
    let dx = x.dim();
    let maps: Vec<Matrix<S>> = (0..ih.maps.dim()).map(|l| ih.basis_map(l)).collect();
    let raw = Matrix::from_fn(y.dim(), maps.len() * dx, |r, c| maps[c / dx].get(r, c % dx).clone());
    let m = t
        .quotient()
        .expect("coequalizer")
        .descend(&raw)
        .ok_or_else(|| GvError::Consistency("evaluation does not descend".into()))?;
    Ok(BimoduleMap::new_unchecked(t.result().clone(), y.clone(), m))
}

/// `X ⊗_B iHomˡ(X, Y) -> Y`, `[v ⊗ f] ↦ f(v)`.
pub fn evaluation_left<S: Scalar>(x: &Bimodule<S>, y: &Bimodule<S>) -> Result<BimoduleMap<S>> {
    let ih = internal_hom_left(x, y)?;
    let t = tensor_over(x, &ih.object)?;
    let dh = ih.maps.dim();
    let maps: Vec<Matrix<S>> = (0..dh).map(|l| ih.basis_map(l)).collect();
    let raw = Matrix::from_fn(y.dim(), x.dim() * dh, |r, c| maps[c % dh].get(r, c / dh).clone());
    let m = t
        .quotient()
        .expect("coequalizer")
        .descend(&raw)
        .ok_or_else(|| GvError::Consistency("evaluation does not descend".into()))?;
    Ok(BimoduleMap::new_unchecked(t.result().clone(), y.clone(), m))
}

/// `μ: iHomʳ(Y, Z) ⊗_A iHomʳ(X, Y) -> iHomʳ(X, Z)`, `[g ⊗ f] ↦ g ∘ f`.
pub fn internal_multiplication_right<S: Scalar>(x: &Bimodule<S>, y: &Bimodule<S>, z: &Bimodule<S>) -> Result<BimoduleMap<S>> {
    let yz = internal_hom_right(y, z)?;
    let xy = internal_hom_right(x, y)?;
    let xz = internal_hom_right(x, z)?;
    compose_descended(&yz, &xy, &xz, |g, f| g * f)
}

/// `iHomˡ(X, Y) ⊗_B iHomˡ(Y, Z) -> iHomˡ(X, Z)`, `[f ⊗ g] ↦ g ∘ f`.
pub fn internal_multiplication_left<S: Scalar>(x: &Bimodule<S>, y: &Bimodule<S>, z: &Bimodule<S>) -> Result<BimoduleMap<S>> {
    let xy = internal_hom_left(x, y)?;
    let yz = internal_hom_left(y, z)?;
    let xz = internal_hom_left(x, z)?;
    compose_descended(&xy, &yz, &xz, |f, g| g * f)
}

fn compose_descended<S: Scalar>(
    first: &InternalHom<S>,
    second: &InternalHom<S>,
    out: &InternalHom<S>,
    compose: impl Fn(&Matrix<S>, &Matrix<S>) -> Matrix<S>,
) -> Result<BimoduleMap<S>> {
    let t = tensor_over(&first.object, &second.object)?;
    let (d1, d2) = (first.maps.dim(), second.maps.dim());
    let mut columns = Vec::with_capacity(d1 * d2);
    for a in 0..d1 {
        let fa = first.basis_map(a);
        for b in 0..d2 {
            let c = compose(&fa, &second.basis_map(b));
            columns.push(out.coordinates(&c).ok_or_else(|| GvError::Consistency("composite left the internal Hom".into()))?);
        }
    }
    let raw = columns_matrix(out.maps.dim(), columns);
    let m = t
        .quotient()
        .expect("coequalizer")
        .descend(&raw)
        .ok_or_else(|| GvError::Consistency("internal multiplication does not descend".into()))?;
    Ok(BimoduleMap::new_unchecked(t.result().clone(), out.object.clone(), m))
}

/// `η: A -> iHomʳ(Z, Z)`, `a ↦ (z ↦ a.z)`.
pub fn internal_unit_right<S: Scalar>(z: &Bimodule<S>) -> Result<BimoduleMap<S>> {
    let ih = internal_hom_right(z, z)?;
    let a = z.left_algebra().clone();
    let cols = (0..a.dim())
        .map(|k| {
            ih.coordinates(z.left_action(k))
                .ok_or_else(|| GvError::Consistency("left action is not right-linear".into()))
        })
        .collect::<Result<Vec<_>>>()?;
    let m = columns_matrix(ih.maps.dim(), cols);
    Ok(BimoduleMap::new_unchecked(Bimodule::regular(a), ih.object, m))
}

/// Dimensions of `Hom(X ⊗_A Y, Z)` and `Hom(X, iHomʳ(Y, Z))`.
pub fn hom_tensor_adjunction_dims<S: Scalar>(x: &Bimodule<S>, y: &Bimodule<S>, z: &Bimodule<S>) -> Result<(usize, usize)> {
    let lhs = tensor_over(x, y)?.result().hom_space(z)?.dim();
    let rhs = x.hom_space(&internal_hom_right(y, z)?.object)?.dim();
    Ok((lhs, rhs))
}

/// Dimensions of `Hom(X, Y ⊗^A Z)` and `Hom(icoHomʳ(Z, X), Y)`.
pub fn cohom_cotensor_adjunction_dims<S: Scalar>(x: &Bimodule<S>, y: &Bimodule<S>, z: &Bimodule<S>) -> Result<(usize, usize)> {
    let lhs = x.hom_space(cotensor_over(y, z)?.result())?.dim();
    let rhs = internal_cohom_right(z, x)?.result().hom_space(y)?.dim();
    Ok((lhs, rhs))
}

/// Convenience: `A*` as a bimodule.
pub fn dualizing_object<S: Scalar>(a: &AlgebraRef<S>) -> Bimodule<S> {
    Bimodule::regular(Arc::clone(a)).dual()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::Algebra;
    use crate::scalar::Rational;
    use crate::tensor::{associator, left_unitor, tensor_map_left, tensor_map_right, TensorKind};

    type Q = Rational;

    fn modules(a: Algebra<Q>) -> (Bimodule<Q>, Bimodule<Q>, Bimodule<Q>) {
        let a = Arc::new(a);
        let p = Bimodule::regular(a.clone());
        (Bimodule::simple_module_of_local(a).unwrap(), p.clone(), p.dual())
    }

    #[test]
    fn double_dual_is_identity() {
        let (s, p, i) = modules(Algebra::a3());
        for m in [s, p, i] {
            let dd = double_dual_map(&m);
            assert!(dd.is_bimodule_map() && dd.is_isomorphism());
            assert_eq!(m.dual().dual(), m);
        }
    }

    #[test]
    fn varpi_is_bijective_and_natural() {
        let (s, p, i) = modules(Algebra::dual_numbers());
        for x in [&s, &p, &i] {
            for y in [&s, &p, &i] {
                let v = varpi(x, y).unwrap();
                assert!(v.is_bijection(), "{x:?} {y:?}");
            }
        }
        let iota = BimoduleMap::new(s.clone(), p.clone(), Matrix::from_i64_rows(&[&[0], &[1]])).unwrap();
        assert!(varpi_natural_in_first(&iota, &p).unwrap());
        assert!(varpi_natural_in_second(&i, &iota).unwrap());
    }

    #[test]
    fn second_tensor_matches_cotensor() {
        let (s, p, i) = modules(Algebra::a3());
        for x in [&s, &p, &i] {
            for y in [&s, &p, &i] {
                let c = second_tensor_comparison(x, y).unwrap();
                assert!(c.is_isomorphism() && c.is_bimodule_map(), "{x:?} {y:?}");
                assert_eq!(second_tensor(x, y).unwrap(), *c.source());
            }
        }
    }

    #[test]
    fn internal_homs_three_ways() {
        let (s, p, i) = modules(Algebra::dual_numbers());
        for n in [&s, &p, &i] {
            for x in [&s, &p, &i] {
                for f in [
                    internal_hom_right_vs_cotensor(n, x).unwrap(),
                    internal_hom_right_vs_dual(n, x).unwrap(),
                    internal_hom_left_vs_cotensor(n, x).unwrap(),
                    internal_hom_left_vs_dual(n, x).unwrap(),
                ] {
                    assert!(f.is_isomorphism() && f.is_bimodule_map(), "{n:?} {x:?}");
                }
            }
        }
        assert_eq!(internal_hom_right(&p, &s).unwrap().object.dim(), 1);
        assert_eq!(internal_hom_right(&p, &i).unwrap().object, i);
    }

    #[test]
    fn internal_hom_into_dualizing_object_is_duality() {
        let (s, p, i) = modules(Algebra::a3());
        let a = p.left_algebra().clone();
        let gv = GvStructure::new(a.clone());
        for m in [&s, &p, &i] {
            let ih = internal_hom_right(m, gv.dualizing_object()).unwrap().object;
            let g = gv.duality(m).unwrap();
            assert_eq!(ih.dim(), g.dim());
            assert_eq!(ih.socle_left().unwrap().dim(), g.socle_left().unwrap().dim());
            assert!(ih.are_isomorphic(&g, 3).unwrap().is_isomorphic());
        }
        assert_eq!(gv.cache_len(), 3);
    }

    #[test]
    fn left_and_right_internal_homs_differ_for_triangular_algebra() {
        // Basis E00, E01, E11; S is k with E00 acting as 1 on both sides.
        let t = Arc::new(Algebra::<Q>::upper_triangular(2).unwrap());
        let reg = Bimodule::regular(t.clone());
        let chi = || vec![Matrix::identity(1), Matrix::zeros(1, 1), Matrix::zeros(1, 1)];
        let s = Bimodule::checked(t.clone(), t, 1, chi(), chi()).unwrap();
        // Right-linear s -> T: t.E00 = t and t.E01 = 0 force t = 0.
        assert_eq!(internal_hom_right(&s, &reg).unwrap().object.dim(), 0);
        // Left-linear s -> T: t in span{E00, E01}.
        assert_eq!(internal_hom_left(&s, &reg).unwrap().object.dim(), 2);
    }

    #[test]
    fn evaluation_and_multiplication() {
        let (s, p, _) = modules(Algebra::dual_numbers());
        let ev = evaluation_right(&s, &s).unwrap();
        assert!(ev.is_bimodule_map() && !ev.is_zero());
        assert!(evaluation_left(&s, &s).unwrap().is_bimodule_map());
        let ev = evaluation_right(&p, &p).unwrap();
        assert!(ev.is_isomorphism());
        for (x, y, z) in [(&s, &p, &s), (&p, &s, &p)] {
            assert!(internal_multiplication_right(x, y, z).unwrap().is_bimodule_map());
            assert!(internal_multiplication_left(x, y, z).unwrap().is_bimodule_map());
        }
        // unitality: μ ∘ (η ⊗ id) = left unitor
        for z in [&s, &p] {
            let eta = internal_unit_right(z).unwrap();
            let ihom = internal_hom_right(z, z).unwrap().object;
            let mu = internal_multiplication_right(z, z, z).unwrap();
            let lhs = mu.compose(&tensor_map_left(&eta, &ihom, TensorKind::Tensor).unwrap()).unwrap();
            assert_eq!(lhs, left_unitor(&ihom, TensorKind::Tensor).unwrap());
        }
    }

    #[test]
    fn internal_multiplication_is_associative() {
        let (s, p, _) = modules(Algebra::dual_numbers());
        let (w, x, y, z) = (&s, &p, &p, &s);
        let h_yz = internal_hom_right(y, z).unwrap().object;
        let h_xy = internal_hom_right(x, y).unwrap().object;
        let h_wx = internal_hom_right(w, x).unwrap().object;
        let mu_xyz = internal_multiplication_right(x, y, z).unwrap();
        let mu_wxz = internal_multiplication_right(w, x, z).unwrap();
        let mu_wxy = internal_multiplication_right(w, x, y).unwrap();
        let mu_wyz = internal_multiplication_right(w, y, z).unwrap();
        let lhs = mu_wxz.compose(&tensor_map_left(&mu_xyz, &h_wx, TensorKind::Tensor).unwrap()).unwrap();
        let rhs = mu_wyz
            .compose(&tensor_map_right(&h_yz, &mu_wxy, TensorKind::Tensor).unwrap())
            .unwrap()
            .compose(&associator(&h_yz, &h_xy, &h_wx, TensorKind::Tensor).unwrap())
            .unwrap();
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn adjunction_dimensions() {
        let (s, p, i) = modules(Algebra::a3());
        for x in [&s, &p, &i] {
            for y in [&s, &p, &i] {
                for z in [&s, &i] {
                    let (a, b) = hom_tensor_adjunction_dims(x, y, z).unwrap();
                    assert_eq!(a, b);
                    let (a, b) = cohom_cotensor_adjunction_dims(x, y, z).unwrap();
                    assert_eq!(a, b);
                }
            }
        }
    }

    #[test]
    fn twisted_dualizing_object() {
        let a = Arc::new(Algebra::<Q>::a3());
        let swap = AlgebraMorphism::new(a.clone(), a.clone(), Matrix::from_i64_rows(&[&[1, 0, 0], &[0, 0, 1], &[0, 1, 0]])).unwrap();
        let gv = GvStructure::twisted(a.clone(), &swap).unwrap();
        assert_eq!(gv.dualizing_object().dim(), 3);
        let p = Bimodule::regular(a);
        assert_eq!(gv.duality(&p).unwrap().dim(), 3);
    }
}
