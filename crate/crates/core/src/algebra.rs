//! Finite-dimensional unital associative algebras given by structure constants.

use std::fmt;
use std::hash::{Hash, Hasher};
use std::sync::Arc;

use serde::Serialize;

use crate::error::{GvError, Result};
use crate::linalg::{kernel, Matrix, Subspace};
use crate::scalar::Scalar;

/// A finite-dimensional unital associative algebra.
///
/// `e_i * e_j = sum_k c[i][j][k] e_k`. The unit is an explicit coefficient
/// vector; basis element 0 need not be the unit.
#[derive(Clone)]
pub struct Algebra<S: Scalar> {
    name: String,
    dim: usize,
    constants: Vec<S>,
    unit: Vec<S>,
}

/// Shared handle to an algebra; bimodules hold these rather than copies.
pub type AlgebraRef<S> = Arc<Algebra<S>>;

impl<S: Scalar> PartialEq for Algebra<S> {
    fn eq(&self, other: &Self) -> bool {
        self.dim == other.dim && self.constants == other.constants && self.unit == other.unit
    }
}

impl<S: Scalar> Eq for Algebra<S> {}

// Equality still compares the structure constants; hashing them is wasted
// work since a computation only ever meets a handful of algebras.
impl<S: Scalar> Hash for Algebra<S> {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.dim.hash(state);
        self.unit.hash(state);
    }
}

impl<S: Scalar> fmt::Debug for Algebra<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Algebra({}, dim {})", self.name, self.dim)
    }
}

/// True when two handles denote the same algebra: identical reference, or
/// structurally equal data.
pub fn same_algebra<S: Scalar>(a: &AlgebraRef<S>, b: &AlgebraRef<S>) -> bool {
    Arc::ptr_eq(a, b) || **a == **b
}

/// One violated algebra axiom.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum AxiomViolation {
    /// `(e_i e_j) e_k != e_i (e_j e_k)`
    Associativity { i: usize, j: usize, k: usize },
    /// `1 * e_i != e_i`
    LeftUnit { i: usize },
    /// `e_i * 1 != e_i`
    RightUnit { i: usize },
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct ValidationReport {
    pub violations: Vec<AxiomViolation>,
}

impl ValidationReport {
    pub fn is_valid(&self) -> bool {
        self.violations.is_empty()
    }
}

impl fmt::Display for ValidationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .violations
            .iter()
            .map(|v| match v {
                AxiomViolation::Associativity { i, j, k } => format!("associativity ({i},{j},{k})"),
                AxiomViolation::LeftUnit { i } => format!("left unit on e_{i}"),
                AxiomViolation::RightUnit { i } => format!("right unit on e_{i}"),
            })
            .collect();
        write!(f, "{}", parts.join(", "))
    }
}

impl<S: Scalar> Algebra<S> {
    /// Builds an algebra from flat structure constants (index `(i*dim+j)*dim+k`).
    ///
    /// Only shapes are checked; use [`Algebra::validate`] for the axioms.
    pub fn new(name: impl Into<String>, dim: usize, constants: Vec<S>, unit: Vec<S>) -> Result<Self> {
        if constants.len() != dim * dim * dim {
            return Err(GvError::Dimension(format!(
                "{} structure constants for an algebra of dimension {dim}",
                constants.len()
            )));
        }
        if unit.len() != dim {
            return Err(GvError::Dimension(format!("unit vector of length {} for dimension {dim}", unit.len())));
        }
        Ok(Algebra { name: name.into(), dim, constants, unit })
    }

    /// Like [`Algebra::new`], but rejects data violating an axiom.
    pub fn checked(name: impl Into<String>, dim: usize, constants: Vec<S>, unit: Vec<S>) -> Result<Self> {
        let a = Self::new(name, dim, constants, unit)?;
        let report = a.validate();
        if report.is_valid() {
            Ok(a)
        } else {
            Err(GvError::Validation(format!("algebra {}: {report}", a.name)))
        }
    }

    fn from_table(name: &str, dim: usize, unit_index: usize, table: impl Fn(usize, usize) -> Vec<(usize, i64)>) -> Self {
        let mut constants = vec![S::zero(); dim * dim * dim];
        for i in 0..dim {
            for j in 0..dim {
                for (k, c) in table(i, j) {
                    constants[(i * dim + j) * dim + k] = S::from_i64(c);
                }
            }
        }
        let mut unit = vec![S::zero(); dim];
        unit[unit_index] = S::one();
        Algebra { name: name.to_string(), dim, constants, unit }
    }

    /// The ground field as a one-dimensional algebra.
    pub fn ground_field() -> Self {
        Self::from_table("k", 1, 0, |_, _| vec![(0, 1)])
    }

    /// Dual numbers `k[x]/(x^2)`, basis `{1, x}`.
    pub fn dual_numbers() -> Self {
        let mut a = Self::truncated_polynomial(2).expect("n = 2");
        a.name = "A2".into();
        a
    }

    /// `k[x,y]/(x^2, y^2, xy)`, basis `{1, x, y}`.
    pub fn a3() -> Self {
        Self::from_table("A3", 3, 0, |i, j| match (i, j) {
            (0, j) => vec![(j, 1)],
            (i, 0) => vec![(i, 1)],
            _ => vec![],
        })
    }

    /// `k[x]/(x^n)`, basis `{1, x, ..., x^(n-1)}`.
    pub fn truncated_polynomial(n: usize) -> Result<Self> {
        if n == 0 {
            return Err(GvError::InvalidInput("truncated polynomial algebra needs n >= 1".into()));
        }
        Ok(Self::from_table(&format!("k[x]/(x^{n})"), n, 0, |i, j| {
            if i + j < n {
                vec![(i + j, 1)]
            } else {
                vec![]
            }
        }))
    }

    /// `Mat_n(k)`, basis `E_ab` at index `a*n+b`.
    pub fn matrix_algebra(n: usize) -> Result<Self> {
        if n == 0 {
            return Err(GvError::InvalidInput("matrix algebra needs n >= 1".into()));
        }
        let mut a = Self::from_table(&format!("Mat_{n}"), n * n, 0, |i, j| {
            let (a, b) = (i / n, i % n);
            let (c, d) = (j / n, j % n);
            if b == c {
                vec![(a * n + d, 1)]
            } else {
                vec![]
            }
        });
        a.unit = (0..n * n).map(|i| if i / n == i % n { S::one() } else { S::zero() }).collect();
        Ok(a)
    }

    /// Upper triangular `n x n` matrices, basis `E_ab` (`a <= b`) in
    /// lexicographic order.
    pub fn upper_triangular(n: usize) -> Result<Self> {
        if n == 0 {
            return Err(GvError::InvalidInput("upper triangular algebra needs n >= 1".into()));
        }
        let pairs: Vec<(usize, usize)> = (0..n).flat_map(|a| (a..n).map(move |b| (a, b))).collect();
        let index = |a: usize, b: usize| pairs.iter().position(|&p| p == (a, b)).unwrap();
        let dim = pairs.len();
        let mut a = Self::from_table(&format!("T_{n}"), dim, 0, |i, j| {
            let (a, b) = pairs[i];
            let (c, d) = pairs[j];
            if b == c {
                vec![(index(a, d), 1)]
            } else {
                vec![]
            }
        });
        a.unit = pairs.iter().map(|&(x, y)| if x == y { S::one() } else { S::zero() }).collect();
        Ok(a)
    }

    /// Direct product `A x B`; basis of `A` followed by basis of `B`.
    pub fn product(a: &Self, b: &Self) -> Self {
        let dim = a.dim + b.dim;
        let mut constants = vec![S::zero(); dim * dim * dim];
        for i in 0..a.dim {
            for j in 0..a.dim {
                for k in 0..a.dim {
                    constants[(i * dim + j) * dim + k] = a.constant(i, j, k).clone();
                }
            }
        }
        for i in 0..b.dim {
            for j in 0..b.dim {
                for k in 0..b.dim {
                    let (ii, jj, kk) = (a.dim + i, a.dim + j, a.dim + k);
                    constants[(ii * dim + jj) * dim + kk] = b.constant(i, j, k).clone();
                }
            }
        }
        let unit = a.unit.iter().chain(&b.unit).cloned().collect();
        Algebra { name: format!("{}x{}", a.name, b.name), dim, constants, unit }
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn with_name(mut self, name: impl Into<String>) -> Self {
        self.name = name.into();
        self
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn constant(&self, i: usize, j: usize, k: usize) -> &S {
        &self.constants[(i * self.dim + j) * self.dim + k]
    }

    pub fn constants(&self) -> &[S] {
        &self.constants
    }

    /// Mutable access to one structure constant, for building corrupted
    /// test data.
    pub fn constant_mut(&mut self, i: usize, j: usize, k: usize) -> &mut S {
        let d = self.dim;
        &mut self.constants[(i * d + j) * d + k]
    }

    pub fn unit(&self) -> &[S] {
        &self.unit
    }

    pub fn basis_element(&self, i: usize) -> Vec<S> {
        let mut v = vec![S::zero(); self.dim];
        v[i] = S::one();
        v
    }

    pub fn multiply(&self, a: &[S], b: &[S]) -> Vec<S> {
        let d = self.dim;
        let mut out = vec![S::zero(); d];
        for (i, ai) in a.iter().enumerate() {
            if ai.is_zero() {
                continue;
            }
            for (j, bj) in b.iter().enumerate() {
                if bj.is_zero() {
                    continue;
                }
                let ab = ai.mul_ref(bj);
                for (k, slot) in out.iter_mut().enumerate() {
                    let c = self.constant(i, j, k);
                    if !c.is_zero() {
                        slot.add_mul_assign(&ab, c);
                    }
                }
            }
        }
        out
    }

    /// Matrix of `v -> e_i * v`.
    pub fn left_multiplication(&self, i: usize) -> Matrix<S> {
        Matrix::from_fn(self.dim, self.dim, |k, j| self.constant(i, j, k).clone())
    }

    /// Matrix of `v -> v * e_j`.
    pub fn right_multiplication(&self, j: usize) -> Matrix<S> {
        Matrix::from_fn(self.dim, self.dim, |k, i| self.constant(i, j, k).clone())
    }

    /// Matrix of `v -> a * v` for an arbitrary element `a`.
    pub fn left_multiplication_by(&self, a: &[S]) -> Matrix<S> {
        combine(a, |i| self.left_multiplication(i), self.dim)
    }

    pub fn right_multiplication_by(&self, a: &[S]) -> Matrix<S> {
        combine(a, |j| self.right_multiplication(j), self.dim)
    }

    pub fn is_commutative(&self) -> bool {
        (0..self.dim).all(|i| (0..self.dim).all(|j| (0..self.dim).all(|k| self.constant(i, j, k) == self.constant(j, i, k))))
    }

    /// Lists every violated associativity or unit constraint.
    pub fn validate(&self) -> ValidationReport {
        let d = self.dim;
        let mut violations = Vec::new();
        let e = |i| self.basis_element(i);
        for i in 0..d {
            for j in 0..d {
                let ij = self.multiply(&e(i), &e(j));
                for k in 0..d {
                    let lhs = self.multiply(&ij, &e(k));
                    let rhs = self.multiply(&e(i), &self.multiply(&e(j), &e(k)));
                    if lhs != rhs {
                        violations.push(AxiomViolation::Associativity { i, j, k });
                    }
                }
            }
        }
        for i in 0..d {
            if self.multiply(&self.unit, &e(i)) != e(i) {
                violations.push(AxiomViolation::LeftUnit { i });
            }
            if self.multiply(&e(i), &self.unit) != e(i) {
                violations.push(AxiomViolation::RightUnit { i });
            }
        }
        ValidationReport { violations }
    }

    /// Span of all products `u * w` with `u` in `left`, `w` in `right`.
    pub fn product_space(&self, left: &Subspace<S>, right: &Subspace<S>) -> Subspace<S> {
        let mut rows = Vec::new();
        for i in 0..left.dim() {
            for j in 0..right.dim() {
                rows.push(self.multiply(left.basis().row(i), right.basis().row(j)));
            }
        }
        Subspace::from_spanning_rows(self.dim, rows)
    }

    /// The Jacobson radical.
    ///
    /// In characteristic 0 this is the radical of the trace form
    /// `(a, b) -> tr(L_a L_b)`. In characteristic `p` only commutative algebras
    /// are supported: the radical is the kernel of a high enough power of the
    /// (linear) Frobenius map `a -> a^p`.
    pub fn radical(&self) -> Result<Subspace<S>> {
        let d = self.dim;
        let p = S::characteristic();
        if p == 0 {
            let mults: Vec<Matrix<S>> = (0..d).map(|i| self.left_multiplication(i)).collect();
            let form = Matrix::from_fn(d, d, |a, b| trace(&(&mults[a] * &mults[b])));
            return Ok(kernel(&form));
        }
        if !self.is_commutative() {
            return Err(GvError::Unsupported(format!(
                "radical of the non-commutative algebra {} in characteristic {p}",
                self.name
            )));
        }
        let frobenius = Matrix::from_fn(d, d, |_, _| S::zero());
        let mut frobenius = frobenius;
        for i in 0..d {
            let image = self.power(&self.basis_element(i), p);
            for (k, v) in image.into_iter().enumerate() {
                frobenius.set(k, i, v);
            }
        }
        // p^r >= d guarantees a^(p^r) = 0 for every nilpotent a.
        let mut iterate = frobenius.clone();
        let mut reach = p;
        while (reach as usize) < d {
            iterate = &iterate * &frobenius;
            reach = reach.saturating_mul(p);
        }
        Ok(kernel(&iterate))
    }

    pub fn power(&self, a: &[S], mut e: u64) -> Vec<S> {
        let mut acc = self.unit.clone();
        let mut base = a.to_vec();
        while e > 0 {
            if e & 1 == 1 {
                acc = self.multiply(&acc, &base);
            }
            base = self.multiply(&base, &base);
            e >>= 1;
        }
        acc
    }
}

fn trace<S: Scalar>(m: &Matrix<S>) -> S {
    let mut t = S::zero();
    for i in 0..m.rows() {
        t = t.add_ref(m.get(i, i));
    }
    t
}

/// `sum_i coeffs[i] * basis(i)`.
pub(crate) fn combine<S: Scalar>(coeffs: &[S], basis: impl Fn(usize) -> Matrix<S>, dim: usize) -> Matrix<S> {
    let mut out = Matrix::zeros(dim, dim);
    for (i, c) in coeffs.iter().enumerate() {
        if !c.is_zero() {
            out = &out + &basis(i).scale(c);
        }
    }
    out
}

/// A unital algebra homomorphism, stored as its matrix
/// (`dim target x dim source`).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AlgebraMorphism<S: Scalar> {
    source: AlgebraRef<S>,
    target: AlgebraRef<S>,
    matrix: Matrix<S>,
}

impl<S: Scalar> AlgebraMorphism<S> {
    /// Checks shape, multiplicativity and unitality.
    pub fn new(source: AlgebraRef<S>, target: AlgebraRef<S>, matrix: Matrix<S>) -> Result<Self> {
        if matrix.rows() != target.dim() || matrix.cols() != source.dim() {
            return Err(GvError::Dimension(format!(
                "morphism matrix {}x{} for {} -> {}",
                matrix.rows(),
                matrix.cols(),
                source.name(),
                target.name()
            )));
        }
        let f = AlgebraMorphism { source, target, matrix };
        if f.apply(f.source.unit()) != f.target.unit() {
            return Err(GvError::Validation("morphism does not preserve the unit".into()));
        }
        let d = f.source.dim();
        for i in 0..d {
            for j in 0..d {
                let (ei, ej) = (f.source.basis_element(i), f.source.basis_element(j));
                let lhs = f.apply(&f.source.multiply(&ei, &ej));
                let rhs = f.target.multiply(&f.apply(&ei), &f.apply(&ej));
                if lhs != rhs {
                    return Err(GvError::Validation(format!("morphism not multiplicative on (e_{i}, e_{j})")));
                }
            }
        }
        Ok(f)
    }

    pub fn identity(a: AlgebraRef<S>) -> Self {
        let n = a.dim();
        AlgebraMorphism { source: a.clone(), target: a, matrix: Matrix::identity(n) }
    }

    /// The unit map `k -> A`.
    pub fn unit_inclusion(ground: AlgebraRef<S>, a: AlgebraRef<S>) -> Result<Self> {
        let m = Matrix::column(a.unit().to_vec());
        Self::new(ground, a, m)
    }

    pub fn source(&self) -> &AlgebraRef<S> {
        &self.source
    }

    pub fn target(&self) -> &AlgebraRef<S> {
        &self.target
    }

    pub fn matrix(&self) -> &Matrix<S> {
        &self.matrix
    }

    pub fn apply(&self, v: &[S]) -> Vec<S> {
        self.matrix.mul_vec(v)
    }

    /// `self ∘ first`
    pub fn compose(&self, first: &Self) -> Result<Self> {
        if !same_algebra(first.target(), self.source()) {
            return Err(GvError::AlgebraMismatch("composing non-composable morphisms".into()));
        }
        Ok(AlgebraMorphism {
            source: first.source.clone(),
            target: self.target.clone(),
            matrix: &self.matrix * &first.matrix,
        })
    }

    pub fn is_automorphism(&self) -> bool {
        same_algebra(&self.source, &self.target) && self.matrix.is_invertible()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{Fp, Rational};

    type Q = Rational;

    #[test]
    fn dual_numbers_structure() {
        let a = Algebra::<Q>::dual_numbers();
        assert_eq!(a.dim(), 2);
        let x = a.basis_element(1);
        assert_eq!(a.multiply(&x, &x), vec![Q::from_i64(0), Q::from_i64(0)]);
        assert_eq!(a.multiply(a.unit(), &x), x);
        assert_eq!(a, Algebra::truncated_polynomial(2).unwrap());
    }

    #[test]
    fn a3_structure() {
        let a = Algebra::<Q>::a3();
        assert_eq!(a.dim(), 3);
        let (x, y) = (a.basis_element(1), a.basis_element(2));
        assert!(a.multiply(&x, &y).iter().all(|c| c == &Q::from_i64(0)));
        assert!(a.validate().is_valid());
    }

    #[test]
    fn constructors_validate() {
        let algebras = [
            Algebra::<Q>::ground_field(),
            Algebra::dual_numbers(),
            Algebra::a3(),
            Algebra::truncated_polynomial(4).unwrap(),
            Algebra::matrix_algebra(2).unwrap(),
            Algebra::upper_triangular(3).unwrap(),
            Algebra::product(&Algebra::dual_numbers(), &Algebra::dual_numbers()),
        ];
        for a in &algebras {
            assert!(a.validate().is_valid(), "{a:?}: {}", a.validate());
        }
        assert_eq!(Algebra::<Q>::matrix_algebra(2).unwrap().dim(), 4);
        assert_eq!(Algebra::product(&Algebra::<Q>::dual_numbers(), &Algebra::dual_numbers()).dim(), 4);
        assert!(Algebra::<Q>::truncated_polynomial(0).is_err());
        assert!(Algebra::<Q>::matrix_algebra(0).is_err());
    }

    #[test]
    fn corrupted_a3_names_the_triple() {
        let mut a = Algebra::<Q>::a3();
        *a.constant_mut(1, 1, 0) = Q::from_i64(1);
        let report = a.validate();
        assert!(!report.is_valid());
        assert!(report
            .violations
            .iter()
            .any(|v| matches!(v, AxiomViolation::Associativity { i: 1, j: 1, .. })));
    }

    #[test]
    fn corrupted_unit_products_are_reported() {
        // Changing x*x alone keeps k[x]/(x^2 - c) associative; corrupt 1*x.
        let mut a = Algebra::<Q>::dual_numbers();
        *a.constant_mut(0, 1, 0) = Q::from_i64(1);
        let report = a.validate();
        assert!(report.violations.contains(&AxiomViolation::LeftUnit { i: 1 }));
    }

    #[test]
    fn radicals() {
        let j2 = Algebra::<Q>::dual_numbers().radical().unwrap();
        assert_eq!(j2.dim(), 1);
        assert!(j2.contains(&[Q::from_i64(0), Q::from_i64(1)]));
        assert_eq!(Algebra::<Q>::a3().radical().unwrap().dim(), 2);
        assert_eq!(Algebra::<Q>::matrix_algebra(2).unwrap().radical().unwrap().dim(), 0);
        assert_eq!(Algebra::<Q>::upper_triangular(2).unwrap().radical().unwrap().dim(), 1);
    }

    #[test]
    fn radical_in_positive_characteristic() {
        Fp::with_modulus(2, || {
            assert_eq!(Algebra::<Fp>::a3().radical().unwrap().dim(), 2);
            assert_eq!(Algebra::<Fp>::truncated_polynomial(5).unwrap().radical().unwrap().dim(), 4);
            // k x k is semisimple even in characteristic 2.
            let kk = Algebra::product(&Algebra::<Fp>::ground_field(), &Algebra::ground_field());
            assert_eq!(kk.radical().unwrap().dim(), 0);
            assert!(matches!(
                Algebra::<Fp>::matrix_algebra(2).unwrap().radical(),
                Err(GvError::Unsupported(_))
            ));
        })
        .unwrap();
    }

    #[test]
    fn radical_is_a_nilpotent_ideal() {
        for a in [Algebra::<Q>::a3(), Algebra::truncated_polynomial(4).unwrap(), Algebra::upper_triangular(3).unwrap()] {
            let j = a.radical().unwrap();
            let whole = Subspace::full(a.dim());
            assert!(j.contains_subspace(&a.product_space(&whole, &j)));
            assert!(j.contains_subspace(&a.product_space(&j, &whole)));
            let mut power = j.clone();
            let mut k = 1;
            while power.dim() > 0 {
                power = a.product_space(&power, &j);
                k += 1;
                assert!(k <= a.dim() + 1, "radical not nilpotent");
            }
        }
    }

    #[test]
    fn morphisms() {
        let a = Arc::new(Algebra::<Q>::dual_numbers());
        let k = Arc::new(Algebra::<Q>::ground_field());
        let inc = AlgebraMorphism::unit_inclusion(k, a.clone()).unwrap();
        assert_eq!(inc.apply(&[Q::from_i64(3)]), vec![Q::from_i64(3), Q::from_i64(0)]);
        // x -> 0 is an algebra endomorphism of the dual numbers.
        let kill = AlgebraMorphism::new(a.clone(), a.clone(), Matrix::from_i64_rows(&[&[1, 0], &[0, 0]])).unwrap();
        assert!(!kill.is_automorphism());
        // x -> 1 + x is not.
        assert!(AlgebraMorphism::new(a.clone(), a, Matrix::from_i64_rows(&[&[1, 1], &[0, 1]])).is_err());
    }
}
