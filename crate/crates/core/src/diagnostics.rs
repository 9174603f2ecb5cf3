//! Strongness and flatness diagnostics for bimodules over one algebra.
//!
//! Conditions quantified over all bimodules are evaluated on a finite corpus
//! supplied by the caller.

use std::collections::HashMap;
use std::sync::Mutex;

use serde::Serialize;

use crate::bimodule::{Bimodule, BimoduleMap};
use crate::distributor::{distributor_left, distributor_right};
use crate::duality::{evaluation_left, evaluation_right, internal_hom_left, internal_hom_right, InternalHom};
use crate::error::{GvError, Result};
use crate::linalg::{solve, Matrix};
use crate::scalar::Scalar;
use crate::tensor::{check_exactness, tensor_over, ShortExactSequence, TensorKind, TensorSide};

/// A named corpus entry.
pub type Named<S> = (String, Bimodule<S>);

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Predicate {
    pub holds: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<String>,
}

impl Predicate {
    fn yes() -> Self {
        Predicate { holds: true, witness: None }
    }

    fn no(witness: impl Into<String>) -> Self {
        Predicate { holds: false, witness: Some(witness.into()) }
    }
}

/// The five equivalent conditions on one side.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SideReport {
    /// The internal Hom `iHom(M, -)` is a strong module functor.
    pub internal_hom_strong: Predicate,
    /// `M` has a dual for `⊗_A` on this side.
    pub has_dual: Predicate,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub dual_dim: Option<usize>,
    pub projective: Predicate,
    /// `M*` is injective on the opposite side.
    pub dual_injective: Predicate,
    pub distributor_iso: Predicate,
    pub consistent: bool,
}

impl SideReport {
    fn finish(mut self) -> Self {
        let all = [
            self.internal_hom_strong.holds,
            self.has_dual.holds,
            self.projective.holds,
            self.dual_injective.holds,
            self.distributor_iso.holds,
        ];
        self.consistent = all.iter().all(|&b| b == all[0]);
        self
    }

    pub fn strong(&self) -> bool {
        self.consistent && self.projective.holds
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct StrongnessReport {
    pub right: SideReport,
    pub left: SideReport,
}

impl StrongnessReport {
    pub fn consistent(&self) -> bool {
        self.right.consistent && self.left.consistent
    }
}

/// A dual of `M` for `⊗_A`, with the coevaluation element and evaluation map.
#[derive(Clone, Debug)]
pub struct DualData<S: Scalar> {
    pub dual: Bimodule<S>,
    /// Coordinates of the coevaluation element in `M ⊗_A M^∨` (right dual)
    /// or `M^∨ ⊗_A M` (left dual).
    pub coevaluation: Vec<S>,
    /// `M^∨ ⊗_A M -> A` (right dual) or `M ⊗_A M^∨ -> A` (left dual).
    pub evaluation: BimoduleMap<S>,
}

fn vec_matrix<S: Scalar>(m: &Matrix<S>) -> Vec<S> {
    m.data().to_vec()
}

/// Solves `Σ c_g T_g = id_M` for the dual basis element.
fn dual_basis<S: Scalar>(dm: usize, images: Vec<Vec<S>>) -> Option<Vec<S>> {
    let system = if images.is_empty() {
        Matrix::zeros(dm * dm, 0)
    } else {
        Matrix::from_rows(images).expect("shape").transpose()
    };
    solve(&system, &Matrix::column(Matrix::<S>::identity(dm).into_data())).map(|t| t.col(0))
}

fn element_of_algebra_action<S: Scalar>(m: &[Matrix<S>], coeffs: &[S], dim: usize) -> Matrix<S> {
    let mut acc = Matrix::zeros(dim, dim);
    for (c, a) in coeffs.iter().zip(m) {
        if !c.is_zero() {
            acc = &acc + &a.scale(c);
        }
    }
    acc
}

fn is_central<S: Scalar>(b: &Bimodule<S>, v: &[S]) -> bool {
    b.left_actions().iter().zip(b.right_actions()).all(|(l, r)| l.mul_vec(v) == r.mul_vec(v))
}

/// The right dual `Hom_A(M_A, A_A)` of an `(A, A)`-bimodule, if `M` has one.
/// Both zigzag identities and centrality of the coevaluation are checked.
pub fn right_dual<S: Scalar>(m: &Bimodule<S>) -> Result<Option<DualData<S>>> {
    let a = m.right_algebra().clone();
    let unit = Bimodule::regular(a.clone());
    let h: InternalHom<S> = internal_hom_right(m, &unit)?;
    let (dm, dv, da) = (m.dim(), h.object.dim(), a.dim());
    let maps: Vec<Matrix<S>> = (0..dv).map(|l| h.basis_map(l)).collect();
    // T(m_i ⊗ h_l) = (m' ↦ m_i . h_l(m'))
    let mut images = Vec::with_capacity(dm * dv);
    for i in 0..dm {
        for hl in &maps {
            let t = Matrix::from_fn(dm, dm, |r, c| {
                let mut acc = S::zero();
                for k in 0..da {
                    acc.add_mul_assign(m.right_action(k).get(r, i), hl.get(k, c));
                }
                acc
            });
            images.push(vec_matrix(&t));
        }
    }
    let Some(c) = dual_basis(dm, images) else { return Ok(None) };
    let d = tensor_over(m, &h.object)?;
    let class = d.projection().expect("coequalizer").mul_vec(&c);
    if !is_central(d.result(), &class) {
        return Err(GvError::Consistency("coevaluation is not central".into()));
    }
    let left_mults: Vec<Matrix<S>> = (0..da).map(|j| a.left_multiplication(j)).collect();
    for hk in &maps {
        let mut acc = Matrix::zeros(da, dm);
        for i in 0..dm {
            let alpha = hk.col(i);
            let la = element_of_algebra_action(&left_mults, &alpha, da);
            for (l, hl) in maps.iter().enumerate() {
                let coeff = &c[i * dv + l];
                if !coeff.is_zero() {
                    acc = &acc + &(&la * hl).scale(coeff);
                }
            }
        }
        if &acc != hk {
            return Err(GvError::Consistency("zigzag identity fails for the right dual".into()));
        }
    }
    Ok(Some(DualData { dual: h.object.clone(), coevaluation: class, evaluation: evaluation_right(m, &unit)? }))
}

/// The left dual `Hom_A(ᴬM, ᴬA)` of an `(A, A)`-bimodule, if `M` has one.
pub fn left_dual<S: Scalar>(m: &Bimodule<S>) -> Result<Option<DualData<S>>> {
    let a = m.left_algebra().clone();
    let unit = Bimodule::regular(a.clone());
    let h = internal_hom_left(m, &unit)?;
    let (dm, dv, da) = (m.dim(), h.object.dim(), a.dim());
    let maps: Vec<Matrix<S>> = (0..dv).map(|l| h.basis_map(l)).collect();
    // T(h_l ⊗ m_i) = (m' ↦ h_l(m') . m_i)
    let mut images = Vec::with_capacity(dm * dv);
    for hl in &maps {
        for i in 0..dm {
            let t = Matrix::from_fn(dm, dm, |r, c| {
                let mut acc = S::zero();
                for k in 0..da {
                    acc.add_mul_assign(m.left_action(k).get(r, i), hl.get(k, c));
                }
                acc
            });
            images.push(vec_matrix(&t));
        }
    }
    let Some(c) = dual_basis(dm, images) else { return Ok(None) };
    let d = tensor_over(&h.object, m)?;
    let class = d.projection().expect("coequalizer").mul_vec(&c);
    if !is_central(d.result(), &class) {
        return Err(GvError::Consistency("coevaluation is not central".into()));
    }
    let right_mults: Vec<Matrix<S>> = (0..da).map(|j| a.right_multiplication(j)).collect();
    for hk in &maps {
        let mut acc = Matrix::zeros(da, dm);
        for i in 0..dm {
            let ra = element_of_algebra_action(&right_mults, &hk.col(i), da);
            for (l, hl) in maps.iter().enumerate() {
                let coeff = &c[l * dm + i];
                if !coeff.is_zero() {
                    acc = &acc + &(&ra * hl).scale(coeff);
                }
            }
        }
        if &acc != hk {
            return Err(GvError::Consistency("zigzag identity fails for the left dual".into()));
        }
    }
    Ok(Some(DualData { dual: h.object.clone(), coevaluation: class, evaluation: evaluation_left(m, &unit)? }))
}

/// `X ⊗_A iHomʳ(M, Y) -> iHomʳ(M, X ⊗_A Y)`, `[x ⊗ f] ↦ (m ↦ [x ⊗ f(m)])`.
pub fn internal_hom_right_constraint<S: Scalar>(m: &Bimodule<S>, x: &Bimodule<S>, y: &Bimodule<S>) -> Result<BimoduleMap<S>> {
    let h = internal_hom_right(m, y)?;
    let d = tensor_over(x, &h.object)?;
    let t = tensor_over(x, y)?;
    let h2 = internal_hom_right(m, t.result())?;
    let pi = t.projection().expect("coequalizer");
    let (dx, dh) = (x.dim(), h.object.dim());
    let mut cols = Vec::with_capacity(dx * dh);
    for i in 0..dx {
        let e = Matrix::from_fn(dx, 1, |r, _| if r == i { S::one() } else { S::zero() });
        for l in 0..dh {
            let f = pi * &e.kron(&h.basis_map(l));
            cols.push(h2.coordinates(&f).ok_or_else(|| GvError::Consistency("constraint leaves the internal Hom".into()))?);
        }
    }
    let raw = columns_matrix(h2.object.dim(), cols);
    let mat = d
        .quotient()
        .expect("coequalizer")
        .descend(&raw)
        .ok_or_else(|| GvError::Consistency("internal Hom constraint is not balanced".into()))?;
    BimoduleMap::new(d.into_result(), h2.object, mat)
}

/// `iHomˡ(M, X) ⊗_A Y -> iHomˡ(M, X ⊗_A Y)`, `[f ⊗ y] ↦ (m ↦ [f(m) ⊗ y])`.
pub fn internal_hom_left_constraint<S: Scalar>(m: &Bimodule<S>, x: &Bimodule<S>, y: &Bimodule<S>) -> Result<BimoduleMap<S>> {
    let h = internal_hom_left(m, x)?;
    let d = tensor_over(&h.object, y)?;
    let t = tensor_over(x, y)?;
    let h2 = internal_hom_left(m, t.result())?;
    let pi = t.projection().expect("coequalizer");
    let (dh, dy) = (h.object.dim(), y.dim());
    let mut cols = Vec::with_capacity(dh * dy);
    for l in 0..dh {
        let hl = h.basis_map(l);
        for j in 0..dy {
            let e = Matrix::from_fn(dy, 1, |r, _| if r == j { S::one() } else { S::zero() });
            let f = pi * &hl.kron(&e);
            cols.push(h2.coordinates(&f).ok_or_else(|| GvError::Consistency("constraint leaves the internal Hom".into()))?);
        }
    }
    let raw = columns_matrix(h2.object.dim(), cols);
    let mat = d
        .quotient()
        .expect("coequalizer")
        .descend(&raw)
        .ok_or_else(|| GvError::Consistency("internal Hom constraint is not balanced".into()))?;
    BimoduleMap::new(d.into_result(), h2.object, mat)
}

fn columns_matrix<S: Scalar>(rows: usize, cols: Vec<Vec<S>>) -> Matrix<S> {
    if cols.is_empty() {
        return Matrix::zeros(rows, 0);
    }
    Matrix::from_rows(cols).expect("shape").transpose()
}

fn non_iso_witness<S: Scalar>(label: &str, a: &str, b: &str, f: &BimoduleMap<S>) -> String {
    let k = f.kernel().dim();
    let c = f.target().dim() - f.image().dim();
    format!("{label} on ({a}, {b}): kernel dim {k}, cokernel dim {c}")
}

fn over_pairs<S: Scalar>(
    corpus: &[Named<S>],
    label: &str,
    mut f: impl FnMut(&Bimodule<S>, &Bimodule<S>) -> Result<BimoduleMap<S>>,
) -> Result<Predicate> {
    for (nx, x) in corpus {
        for (ny, y) in corpus {
            let map = f(x, y)?;
            if !map.is_isomorphism() {
                return Ok(Predicate::no(non_iso_witness(label, nx, ny, &map)));
            }
        }
    }
    Ok(Predicate::yes())
}

fn bool_predicate(holds: bool, witness: &str) -> Predicate {
    if holds {
        Predicate::yes()
    } else {
        Predicate::no(witness)
    }
}

/// Evaluates both families of five conditions for an `(A, A)`-bimodule `M`.
///
/// Projectivity is decided by splitting a free cover, injectivity of `M*`
/// both through duality and by splitting a cofree embedding (these must
/// agree), duals by solving for a dual basis, and the remaining conditions
/// on every pair from `corpus`.
pub fn strongness_report<S: Scalar>(m: &Bimodule<S>, corpus: &[Named<S>]) -> Result<StrongnessReport> {
    let md = m.dual();
    let inj_left = md.is_injective_left();
    let inj_right = md.is_injective_right();
    if inj_left != md.is_injective_left_direct() || inj_right != md.is_injective_right_direct() {
        return Err(GvError::Consistency("the two injectivity tests disagree".into()));
    }

    let rd = right_dual(m)?;
    let right = SideReport {
        internal_hom_strong: over_pairs(corpus, "iHomʳ constraint", |x, y| internal_hom_right_constraint(m, x, y))?,
        has_dual: bool_predicate(rd.is_some(), "no dual basis: the equation Σ m_i.f_i(-) = id has no solution"),
        dual_dim: rd.as_ref().map(|d| d.dual.dim()),
        projective: bool_predicate(m.is_projective_right(), "the free right-module cover does not split"),
        dual_injective: bool_predicate(inj_left, "the cofree embedding of the left module M* does not split"),
        distributor_iso: over_pairs(corpus, "∂ˡ_{X,Y,M*}", |x, y| distributor_left(x, y, &md).map(|d| d.map))?,
        consistent: false,
    }
    .finish();

    let ld = left_dual(m)?;
    let left = SideReport {
        internal_hom_strong: over_pairs(corpus, "iHomˡ constraint", |x, y| internal_hom_left_constraint(m, x, y))?,
        has_dual: bool_predicate(ld.is_some(), "no dual basis: the equation Σ f_i(-).m_i = id has no solution"),
        dual_dim: ld.as_ref().map(|d| d.dual.dim()),
        projective: bool_predicate(m.is_projective_left(), "the free left-module cover does not split"),
        dual_injective: bool_predicate(inj_right, "the cofree embedding of the right module M* does not split"),
        distributor_iso: over_pairs(corpus, "∂ʳ_{M*,X,Y}", |x, y| distributor_right(&md, x, y).map(|d| d.map))?,
        consistent: false,
    }
    .finish();
    Ok(StrongnessReport { right, left })
}

/// Exactness of the four functors `X ⊗_A -`, `- ⊗_A X`, `X ⊗^A -`, `- ⊗^A X`
/// on a bank of short exact sequences.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FlatnessProfile {
    /// `X ⊗_A -` preserves the tested injections.
    pub tensor_left: Predicate,
    /// `- ⊗_A X`
    pub tensor_right: Predicate,
    /// `X ⊗^A -` preserves the tested surjections.
    pub cotensor_left: Predicate,
    /// `- ⊗^A X`
    pub cotensor_right: Predicate,
}

/// Flatness probing against a fixed bank of sequences, memoized per module.
pub struct FlatnessProbe<S: Scalar> {
    bank: Vec<(String, ShortExactSequence<S>)>,
    cache: Mutex<HashMap<Bimodule<S>, FlatnessProfile>>,
}

impl<S: Scalar> FlatnessProbe<S> {
    pub fn new(bank: Vec<(String, ShortExactSequence<S>)>) -> Self {
        FlatnessProbe { bank, cache: Mutex::new(HashMap::new()) }
    }

    pub fn bank(&self) -> &[(String, ShortExactSequence<S>)] {
        &self.bank
    }

    fn probe(&self, x: &Bimodule<S>, kind: TensorKind, side: TensorSide) -> Result<Predicate> {
        for (name, seq) in &self.bank {
            if !crate::algebra::same_algebra(seq.injection().source().left_algebra(), x.left_algebra()) {
                continue;
            }
            let r = check_exactness(kind, side, seq, x)?;
            let ok = match kind {
                TensorKind::Tensor => r.injective,
                TensorKind::Cotensor => r.surjective,
            };
            if !ok {
                let what = match kind {
                    TensorKind::Tensor => "the injection",
                    TensorKind::Cotensor => "the surjection",
                };
                return Ok(Predicate::no(format!("{what} of {name} is not preserved")));
            }
        }
        Ok(Predicate::yes())
    }

    pub fn profile(&self, x: &Bimodule<S>) -> Result<FlatnessProfile> {
        if let Some(p) = self.cache.lock().expect("cache").get(x) {
            return Ok(p.clone());
        }
        let p = FlatnessProfile {
            tensor_left: self.probe(x, TensorKind::Tensor, TensorSide::Left)?,
            tensor_right: self.probe(x, TensorKind::Tensor, TensorSide::Right)?,
            cotensor_left: self.probe(x, TensorKind::Cotensor, TensorSide::Left)?,
            cotensor_right: self.probe(x, TensorKind::Cotensor, TensorSide::Right)?,
        };
        self.cache.lock().expect("cache").insert(x.clone(), p.clone());
        Ok(p)
    }

    /// The four flatness implications on the triple `(X, Y, Z)`:
    /// 1. `X` left `⊗_A`-flat ⇒ `∂ˡ_{X,Y,Z}` injective;
    /// 2. `Z` right `⊗^A`-flat ⇒ `∂ˡ_{X,Y,Z}` surjective;
    /// 3. `Z` right `⊗_A`-flat ⇒ `∂ʳ_{X,Y,Z}` injective;
    /// 4. `X` left `⊗^A`-flat ⇒ `∂ʳ_{X,Y,Z}` surjective.
    pub fn implications(&self, x: &Bimodule<S>, y: &Bimodule<S>, z: &Bimodule<S>) -> Result<Vec<Implication>> {
        let (px, pz) = (self.profile(x)?, self.profile(z)?);
        let dl = distributor_left(x, y, z)?;
        let dr = distributor_right(x, y, z)?;
        let rows = [
            (1, px.tensor_left.holds, dl.kernel.dim() == 0),
            (2, pz.cotensor_right.holds, dl.image.dim() == dl.map.target().dim()),
            (3, pz.tensor_right.holds, dr.kernel.dim() == 0),
            (4, px.cotensor_left.holds, dr.image.dim() == dr.map.target().dim()),
        ];
        Ok(rows
            .into_iter()
            .map(|(item, hypothesis, conclusion)| Implication { item, hypothesis, conclusion, holds: !hypothesis || conclusion })
            .collect())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct Implication {
    pub item: u8,
    pub hypothesis: bool,
    pub conclusion: bool,
    pub holds: bool,
}

/// Short exact sequences `0 -> U -> M -> M/U -> 0` from the socle and
/// radical layers of each module, both sides.
pub fn standard_sequences<S: Scalar>(modules: &[Named<S>]) -> Result<Vec<(String, ShortExactSequence<S>)>> {
    let mut out = Vec::new();
    for (name, m) in modules {
        let subs = [
            ("left socle", m.socle_left()?),
            ("right socle", m.socle_right()?),
            ("radical", m.left_radical_layer()?),
        ];
        for (label, sub) in subs {
            if sub.dim() == 0 || sub.dim() == m.dim() || !m.is_invariant(&sub) {
                continue;
            }
            if out.iter().any(|(_, s): &(String, ShortExactSequence<S>)| {
                s.surjection().source() == m && s.injection().matrix().image() == sub
            }) {
                continue;
            }
            out.push((format!("{label} of {name}"), ShortExactSequence::from_submodule(m, &sub)?));
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::Algebra;
    use crate::bimodule::StandardModules;
    use crate::scalar::Rational;

    type Q = Rational;

    fn named(st: &StandardModules<Q>) -> Vec<Named<Q>> {
        vec![
            ("S".into(), st.simple.clone().unwrap()),
            ("P".into(), st.regular.clone()),
            ("I".into(), st.dual_regular.clone()),
        ]
    }

    #[test]
    fn regular_is_strong_with_dual_a() {
        let st = StandardModules::<Q>::new(Algebra::dual_numbers());
        let corpus = named(&st);
        let r = strongness_report(&st.regular, &corpus).unwrap();
        assert!(r.consistent());
        assert!(r.right.strong() && r.left.strong());
        let d = right_dual(&st.regular).unwrap().unwrap();
        assert!(d.dual.are_isomorphic(&st.regular, 1).unwrap().is_isomorphic());
    }

    #[test]
    fn simple_is_not_strong() {
        let st = StandardModules::<Q>::new(Algebra::dual_numbers());
        let corpus = named(&st);
        let r = strongness_report(st.simple.as_ref().unwrap(), &corpus).unwrap();
        assert!(r.consistent());
        for side in [&r.right, &r.left] {
            assert!(!side.projective.holds);
            assert!(side.distributor_iso.witness.is_some());
            assert!(side.internal_hom_strong.witness.is_some());
        }
    }

    #[test]
    fn a3_projective_and_injective() {
        let st = StandardModules::<Q>::new(Algebra::a3());
        let corpus = named(&st);
        let p = strongness_report(&st.regular, &corpus).unwrap();
        let i = strongness_report(&st.dual_regular, &corpus).unwrap();
        assert!(p.consistent() && i.consistent());
        assert!(p.right.strong() && p.left.strong());
        assert!(!i.right.strong() && !i.left.strong());

        let mut seqs = standard_sequences(&corpus).unwrap();
        seqs.extend(standard_sequences(&[("A3*".to_string(), st.dual_regular.clone())]).unwrap());
        let probe = FlatnessProbe::new(seqs);
        let fi = probe.profile(&st.dual_regular).unwrap();
        let fp = probe.profile(&st.regular).unwrap();
        assert!(!fi.tensor_left.holds && !fi.tensor_right.holds);
        assert!(fi.cotensor_left.holds && fi.cotensor_right.holds);
        assert!(fp.tensor_left.holds && fp.tensor_right.holds);
        assert!(!fp.cotensor_left.holds && !fp.cotensor_right.holds);
        for (_, x) in &corpus {
            for (_, y) in &corpus {
                for (_, z) in &corpus {
                    assert!(probe.implications(x, y, z).unwrap().iter().all(|i| i.holds));
                }
            }
        }
    }
}
