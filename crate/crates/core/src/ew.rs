//! Restriction, induction and coinduction along an algebra morphism
//! `φ: A -> A′`, each represented by its transport bimodule.
//!
//! Modules are right modules, or more generally `(C, A)`-bimodules for any
//! left algebra `C`; the functors act on the right side only.

use serde::Serialize;

use crate::algebra::AlgebraMorphism;
use crate::bimodule::{Bimodule, BimoduleMap};
use crate::duality::internal_hom_right;
use crate::error::{GvError, Result};
use crate::linalg::Matrix;
use crate::scalar::Scalar;
use crate::tensor::{cotensor_over, right_unitor, tensor_map_left, tensor_over, TensorKind};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum FunctorKind {
    Res,
    Ind,
    CoInd,
}

#[derive(Clone, Debug)]
pub struct FunctorAlongMorphism<S: Scalar> {
    pub morphism: AlgebraMorphism<S>,
    pub kind: FunctorKind,
    /// `Res_φ(A′)` as an `(A′, A)`-bimodule for restriction; `Res_φ(A′*)*`
    /// or `Res_φ(A′)*` as `(A, A′)`-bimodules for induction and coinduction.
    pub transport: Bimodule<S>,
}

impl<S: Scalar> FunctorAlongMorphism<S> {
    pub fn new(phi: &AlgebraMorphism<S>, kind: FunctorKind) -> Result<Self> {
        let transport = match kind {
            FunctorKind::Res => res_regular(phi)?,
            FunctorKind::Ind => res_dual_regular(phi)?.dual(),
            FunctorKind::CoInd => res_regular(phi)?.dual(),
        };
        Ok(FunctorAlongMorphism { morphism: phi.clone(), kind, transport })
    }

    /// The functor on objects: `M ⊗_{A′} Res_φ(A′)`, `M ⊗_A Res_φ(A′*)*` or
    /// `M ⊗^A Res_φ(A′)*`.
    pub fn apply(&self, m: &Bimodule<S>) -> Result<Bimodule<S>> {
        match self.kind {
            FunctorKind::Res | FunctorKind::Ind => Ok(tensor_over(m, &self.transport)?.into_result()),
            FunctorKind::CoInd => Ok(cotensor_over(m, &self.transport)?.into_result()),
        }
    }
}

/// `A′` as an `(A′, A)`-bimodule, right action through `φ`.
pub fn res_regular<S: Scalar>(phi: &AlgebraMorphism<S>) -> Result<Bimodule<S>> {
    Bimodule::regular(phi.target().clone()).twist_right(phi)
}

/// `A′*` as an `(A′, A)`-bimodule, right action through `φ`.
pub fn res_dual_regular<S: Scalar>(phi: &AlgebraMorphism<S>) -> Result<Bimodule<S>> {
    Bimodule::regular(phi.target().clone()).dual().twist_right(phi)
}

/// Pulls back the right action along `φ`.
pub fn restrict<S: Scalar>(phi: &AlgebraMorphism<S>, m: &Bimodule<S>) -> Result<Bimodule<S>> {
    m.twist_right(phi)
}

/// The same linear map between the restricted modules.
pub fn restrict_map<S: Scalar>(phi: &AlgebraMorphism<S>, f: &BimoduleMap<S>) -> Result<BimoduleMap<S>> {
    BimoduleMap::new(restrict(phi, f.source())?, restrict(phi, f.target())?, f.matrix().clone())
}

pub fn induce<S: Scalar>(phi: &AlgebraMorphism<S>, m: &Bimodule<S>) -> Result<Bimodule<S>> {
    FunctorAlongMorphism::new(phi, FunctorKind::Ind)?.apply(m)
}

pub fn coinduce<S: Scalar>(phi: &AlgebraMorphism<S>, m: &Bimodule<S>) -> Result<Bimodule<S>> {
    FunctorAlongMorphism::new(phi, FunctorKind::CoInd)?.apply(m)
}

/// Coinduction as `Hom_A(A′_A, M_A)`.
pub fn coinduce_direct<S: Scalar>(phi: &AlgebraMorphism<S>, m: &Bimodule<S>) -> Result<Bimodule<S>> {
    Ok(internal_hom_right(&res_regular(phi)?, m)?.object)
}

/// `M ⊗^A H(A*)` for a left exact functor `H` given by its value on `A*`.
pub fn eilenberg_watts_left_exact<S: Scalar>(h_on_unit: &Bimodule<S>, m: &Bimodule<S>) -> Result<Bimodule<S>> {
    Ok(cotensor_over(m, h_on_unit)?.into_result())
}

/// `M ⊗_A H(A)` for a right exact functor `H` given by its value on `A`.
pub fn eilenberg_watts_right_exact<S: Scalar>(h_on_unit: &Bimodule<S>, m: &Bimodule<S>) -> Result<Bimodule<S>> {
    Ok(tensor_over(m, h_on_unit)?.into_result())
}

/// The isomorphisms `M ⊗_{A′} Res_φ(A′) -> Res_φ(M)` and
/// `M ⊗^{A′} Res_φ(A′*) -> Res_φ(M)`, both checked as bimodule maps.
pub fn restriction_formulas<S: Scalar>(
    phi: &AlgebraMorphism<S>,
    m: &Bimodule<S>,
) -> Result<(BimoduleMap<S>, BimoduleMap<S>)> {
    let res = restrict(phi, m)?;
    let via_tensor = BimoduleMap::new(
        tensor_over(m, &res_regular(phi)?)?.into_result(),
        res.clone(),
        right_unitor(m, TensorKind::Tensor)?.matrix().clone(),
    )?;
    let via_cotensor = BimoduleMap::new(
        cotensor_over(m, &res_dual_regular(phi)?)?.into_result(),
        res,
        right_unitor(m, TensorKind::Cotensor)?.matrix().clone(),
    )?;
    if !via_tensor.is_isomorphism() || !via_cotensor.is_isomorphism() {
        return Err(GvError::Consistency("restriction formula is not an isomorphism".into()));
    }
    Ok((via_tensor, via_cotensor))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct AdjunctionDims {
    pub lhs: usize,
    pub rhs: usize,
}

impl AdjunctionDims {
    pub fn agree(&self) -> bool {
        self.lhs == self.rhs
    }
}

/// `dim Hom_{A′}(Ind M, N)` and `dim Hom_A(M, Res N)`.
pub fn induction_adjunction_dims<S: Scalar>(phi: &AlgebraMorphism<S>, m: &Bimodule<S>, n: &Bimodule<S>) -> Result<AdjunctionDims> {
    Ok(AdjunctionDims {
        lhs: induce(phi, m)?.hom_space(n)?.dim(),
        rhs: m.hom_space(&restrict(phi, n)?)?.dim(),
    })
}

/// `dim Hom_A(Res N, M)` and `dim Hom_{A′}(N, coInd M)`.
pub fn coinduction_adjunction_dims<S: Scalar>(phi: &AlgebraMorphism<S>, n: &Bimodule<S>, m: &Bimodule<S>) -> Result<AdjunctionDims> {
    Ok(AdjunctionDims {
        lhs: restrict(phi, n)?.hom_space(m)?.dim(),
        rhs: n.hom_space(&coinduce(phi, m)?)?.dim(),
    })
}

/// The unit `M -> Res Ind M`, `m ↦ [m ⊗ 1]`.
pub fn induction_unit<S: Scalar>(phi: &AlgebraMorphism<S>, m: &Bimodule<S>) -> Result<BimoduleMap<S>> {
    let ind = FunctorAlongMorphism::new(phi, FunctorKind::Ind)?;
    let t = tensor_over(m, &ind.transport)?;
    let one = Matrix::column(phi.target().unit().to_vec());
    let mat = t.reduce(&Matrix::identity(m.dim()).kron(&one))?;
    BimoduleMap::new(m.clone(), restrict(phi, t.result())?, mat)
}

/// The counit `Ind Res N -> N`, `[n ⊗ a′] ↦ n.a′`.
pub fn induction_counit<S: Scalar>(phi: &AlgebraMorphism<S>, n: &Bimodule<S>) -> Result<BimoduleMap<S>> {
    let ind = FunctorAlongMorphism::new(phi, FunctorKind::Ind)?;
    let t = tensor_over(&restrict(phi, n)?, &ind.transport)?;
    let da = phi.target().dim();
    let raw = Matrix::from_fn(n.dim(), n.dim() * da, |r, c| n.right_action(c % da).get(r, c / da).clone());
    let mat = t
        .quotient()
        .expect("coequalizer")
        .descend(&raw)
        .ok_or_else(|| GvError::Consistency("counit is not balanced".into()))?;
    BimoduleMap::new(t.into_result(), n.clone(), mat)
}

/// Both triangle identities of `Ind ⊣ Res`: `ε_{Ind M} ∘ Ind(η_M) = id`
/// and `Res(ε_N) ∘ η_{Res N} = id`.
pub fn induction_triangles<S: Scalar>(phi: &AlgebraMorphism<S>, m: &Bimodule<S>, n: &Bimodule<S>) -> Result<(bool, bool)> {
    let ind = FunctorAlongMorphism::new(phi, FunctorKind::Ind)?;
    let ind_eta = tensor_map_left(&induction_unit(phi, m)?, &ind.transport, TensorKind::Tensor)?;
    let eps = induction_counit(phi, &ind.apply(m)?)?;
    let first = eps.compose(&ind_eta)?.matrix().is_identity();

    let eta_n = induction_unit(phi, &restrict(phi, n)?)?;
    let res_eps = restrict_map(phi, &induction_counit(phi, n)?)?;
    let second = res_eps.compose(&eta_n)?.matrix().is_identity();
    Ok((first, second))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{Algebra, AlgebraRef};
    use crate::scalar::Rational;
    use crate::tensor::ShortExactSequence;
    use std::sync::Arc;

    type Q = Rational;

    struct Setup {
        k: AlgebraRef<Q>,
        a: AlgebraRef<Q>,
        morphisms: Vec<AlgebraMorphism<Q>>,
        /// Right A₂-modules S, P, I as (k, A₂)-bimodules.
        right_modules: Vec<Bimodule<Q>>,
    }

    fn setup() -> Setup {
        let k = Arc::new(Algebra::<Q>::ground_field());
        let a = Arc::new(Algebra::<Q>::dual_numbers());
        let incl = AlgebraMorphism::unit_inclusion(k.clone(), a.clone()).unwrap();
        let endo = |d: i64| AlgebraMorphism::new(a.clone(), a.clone(), Matrix::from_i64_rows(&[&[1, 0], &[0, d]])).unwrap();
        let p = Bimodule::regular(a.clone());
        let s = Bimodule::simple_module_of_local(a.clone()).unwrap();
        let right_modules = [s, p.clone(), p.dual()].iter().map(|m| m.twist_left(&incl).unwrap()).collect();
        Setup { k, a: a.clone(), morphisms: vec![incl, endo(1), endo(0), endo(2)], right_modules }
    }

    /// Right modules over the source of `phi`.
    fn sources(st: &Setup, phi: &AlgebraMorphism<Q>) -> Vec<Bimodule<Q>> {
        if phi.source().dim() == 1 {
            let kk = Bimodule::regular(st.k.clone());
            vec![kk.clone(), Bimodule::direct_sum(&[kk.clone(), kk]).unwrap()]
        } else {
            st.right_modules.clone()
        }
    }

    #[test]
    fn ground_field_inclusion_dims() {
        let st = setup();
        let kk = Bimodule::regular(st.k.clone());
        assert_eq!(induce(&st.morphisms[0], &kk).unwrap().dim(), 2);
        assert_eq!(coinduce(&st.morphisms[0], &kk).unwrap().dim(), 2);
        let p = &st.right_modules[1];
        let res = restrict(&st.morphisms[0], p).unwrap();
        assert_eq!(res.dim(), 2);
        assert_eq!(res.right_algebra().dim(), 1);
    }

    #[test]
    fn identity_functors() {
        let st = setup();
        let id = &st.morphisms[1];
        for m in &st.right_modules {
            assert_eq!(&restrict(id, m).unwrap(), m);
            assert!(induce(id, m).unwrap().are_isomorphic(m, 3).unwrap().is_isomorphic());
            assert!(coinduce(id, m).unwrap().are_isomorphic(m, 3).unwrap().is_isomorphic());
        }
    }

    #[test]
    fn coinduction_two_ways_and_adjunctions() {
        let st = setup();
        for phi in &st.morphisms {
            let dual_unit = Bimodule::regular(phi.source().clone()).dual();
            let h_on_unit = coinduce(phi, &dual_unit).unwrap();
            for m in sources(&st, phi) {
                let direct = coinduce_direct(phi, &m).unwrap();
                assert!(coinduce(phi, &m).unwrap().are_isomorphic(&direct, 5).unwrap().is_isomorphic());
                let ew = eilenberg_watts_left_exact(&h_on_unit, &m).unwrap();
                assert!(ew.are_isomorphic(&direct, 5).unwrap().is_isomorphic());
                for n in &st.right_modules {
                    assert!(induction_adjunction_dims(phi, &m, n).unwrap().agree());
                    assert!(coinduction_adjunction_dims(phi, n, &m).unwrap().agree());
                    assert_eq!(induction_triangles(phi, &m, n).unwrap(), (true, true));
                }
            }
        }
    }

    #[test]
    fn restriction_is_exact_and_faithful() {
        let st = setup();
        let p = &st.right_modules[1];
        let socle = p.socle_right().unwrap();
        let seq = ShortExactSequence::from_submodule(p, &socle).unwrap();
        for phi in &st.morphisms {
            let f = restrict_map(phi, seq.injection()).unwrap();
            let g = restrict_map(phi, seq.surjection()).unwrap();
            ShortExactSequence::new(f, g).unwrap();
            for m in &st.right_modules {
                restriction_formulas(phi, m).unwrap();
                for n in &st.right_modules {
                    let before = m.hom_space(n).unwrap();
                    let after = restrict(phi, m).unwrap().hom_space(&restrict(phi, n).unwrap()).unwrap();
                    assert!(after.contains_subspace(&before));
                }
            }
        }
    }

    #[test]
    fn hom_from_simple_via_cotensor() {
        let st = setup();
        let s = Bimodule::simple_module_of_local(st.a.clone()).unwrap();
        let h_on_unit = internal_hom_right(&s, &Bimodule::regular(st.a.clone()).dual()).unwrap().object;
        for m in &st.right_modules {
            let direct = internal_hom_right(&s, m).unwrap().object;
            let ew = eilenberg_watts_left_exact(&h_on_unit, m).unwrap();
            assert_eq!(ew.dim(), direct.dim());
            assert!(ew.are_isomorphic(&direct, 9).unwrap().is_isomorphic());
        }
    }
}
