//! Fixed test corpora of bimodules over `A₂ = k[x]/(x²)` and
//! `𝔸₃ = k[x,y]/(x,y)²`, with banks of short exact sequences and seeded
//! samples of triples and quadruples.

use std::sync::Arc;

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::algebra::{Algebra, AlgebraMorphism, AlgebraRef};
use crate::bimodule::Bimodule;
use crate::diagnostics::{standard_sequences, Named};
use crate::error::Result;
use crate::linalg::Matrix;
use crate::scalar::Scalar;
use crate::tensor::ShortExactSequence;

#[derive(Clone, Debug)]
pub struct Corpus<S: Scalar> {
    pub algebra: AlgebraRef<S>,
    pub modules: Vec<Named<S>>,
    pub sequences: Vec<(String, ShortExactSequence<S>)>,
}

/// A two-dimensional bimodule on which one radical generator acts from one
/// side by `e0 ↦ e1`, and everything else in the radical acts as zero.
fn one_sided_uniserial<S: Scalar>(a: &AlgebraRef<S>, generator: usize, left: bool) -> Result<Bimodule<S>> {
    let n = Matrix::from_i64_rows(&[&[0, 0], &[1, 0]]);
    let id = Matrix::<S>::identity(2);
    let zero = Matrix::<S>::zeros(2, 2);
    let acting: Vec<Matrix<S>> = (0..a.dim())
        .map(|i| if i == 0 { id.clone() } else if i == generator { n.clone() } else { zero.clone() })
        .collect();
    let trivial: Vec<Matrix<S>> = (0..a.dim()).map(|i| if i == 0 { id.clone() } else { zero.clone() }).collect();
    let (l, r) = if left { (acting, trivial) } else { (trivial, acting) };
    Bimodule::checked(a.clone(), a.clone(), 2, l, r)
}

impl<S: Scalar> Corpus<S> {
    fn build(algebra: AlgebraRef<S>, mut modules: Vec<Named<S>>) -> Result<Self> {
        modules.retain(|(_, m)| m.is_valid());
        let sequences = standard_sequences(&modules)?;
        Ok(Corpus { algebra, modules, sequences })
    }

    /// Over `A₂`: `S`, `P = A₂`, `I = A₂*`, the one-sided uniserials `L` and
    /// `R`, and the twist `P_ψ` by `ψ(x) = 2x` (omitted in characteristic 2).
    pub fn dual_numbers() -> Result<Self> {
        let a: AlgebraRef<S> = Arc::new(Algebra::dual_numbers());
        let p = Bimodule::regular(a.clone());
        let mut modules = vec![
            ("S".to_string(), Bimodule::simple_module_of_local(a.clone())?),
            ("P".to_string(), p.clone()),
            ("I".to_string(), p.dual()),
            ("L".to_string(), one_sided_uniserial(&a, 1, true)?),
            ("R".to_string(), one_sided_uniserial(&a, 1, false)?),
        ];
        if let Ok(psi) = AlgebraMorphism::new(a.clone(), a.clone(), Matrix::from_i64_rows(&[&[1, 0], &[0, 2]])) {
            if psi.is_automorphism() {
                modules.push(("P_psi".to_string(), Bimodule::twisted_regular(a.clone(), &psi)?));
            }
        }
        Self::build(a, modules)
    }

    /// Over `𝔸₃`: `S`, `P = 𝔸₃`, `I = 𝔸₃*`, the twist `P_σ` by the swap of
    /// `x` and `y`, and the one-sided uniserials `Lx` and `Ry`.
    pub fn a3() -> Result<Self> {
        let a: AlgebraRef<S> = Arc::new(Algebra::a3());
        let p = Bimodule::regular(a.clone());
        let sigma = AlgebraMorphism::new(a.clone(), a.clone(), Matrix::from_i64_rows(&[&[1, 0, 0], &[0, 0, 1], &[0, 1, 0]]))?;
        let modules = vec![
            ("S".to_string(), Bimodule::simple_module_of_local(a.clone())?),
            ("P".to_string(), p.clone()),
            ("I".to_string(), p.dual()),
            ("P_sigma".to_string(), Bimodule::twisted_regular(a.clone(), &sigma)?),
            ("Lx".to_string(), one_sided_uniserial(&a, 1, true)?),
            ("Ry".to_string(), one_sided_uniserial(&a, 2, false)?),
        ];
        Self::build(a, modules)
    }

    pub fn module(&self, name: &str) -> Option<&Bimodule<S>> {
        self.modules.iter().find(|(n, _)| n == name).map(|(_, m)| m)
    }

    pub fn names(&self) -> Vec<&str> {
        self.modules.iter().map(|(n, _)| n.as_str()).collect()
    }

    /// All ordered triples of corpus indices.
    pub fn triples(&self) -> Vec<[usize; 3]> {
        let n = self.modules.len();
        let mut out = Vec::with_capacity(n * n * n);
        for i in 0..n {
            for j in 0..n {
                for k in 0..n {
                    out.push([i, j, k]);
                }
            }
        }
        out
    }

    /// `count` distinct quadruples of corpus indices, drawn with a seeded
    /// generator.
    pub fn seeded_quadruples(&self, seed: u64, count: usize) -> Vec<[usize; 4]> {
        let n = self.modules.len();
        let mut all = Vec::with_capacity(n.pow(4));
        for i in 0..n.pow(4) {
            all.push([i / (n * n * n), (i / (n * n)) % n, (i / n) % n, i % n]);
        }
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        all.shuffle(&mut rng);
        all.truncate(count);
        all
    }

    pub fn get(&self, i: usize) -> &Bimodule<S> {
        &self.modules[i].1
    }

    pub fn name(&self, i: usize) -> &str {
        &self.modules[i].0
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{Fp, Rational};

    #[test]
    fn corpora_are_valid() {
        let a2 = Corpus::<Rational>::dual_numbers().unwrap();
        let a3 = Corpus::<Rational>::a3().unwrap();
        for c in [&a2, &a3] {
            assert_eq!(c.modules.len(), 6);
            assert!(c.modules.iter().all(|(_, m)| m.is_valid()));
            assert!(!c.sequences.is_empty());
        }
        let iso = |c: &Corpus<Rational>, x: &str, y: &str| {
            c.module(x).unwrap().are_isomorphic(c.module(y).unwrap(), 0).unwrap().is_isomorphic()
        };
        // A₂ is symmetric Frobenius, 𝔸₃ is not even self-injective
        assert!(iso(&a2, "P", "I"));
        assert!(!iso(&a2, "P", "P_psi"));
        assert!(!iso(&a2, "L", "R"));
        assert!(!iso(&a3, "P", "I"));
        assert!(!iso(&a3, "P", "P_sigma"));
        assert!(!iso(&a3, "I", "P_sigma"));
    }

    #[test]
    fn seeded_quadruples_are_deterministic() {
        let c = Corpus::<Rational>::dual_numbers().unwrap();
        assert_eq!(c.seeded_quadruples(7, 30), c.seeded_quadruples(7, 30));
        assert_ne!(c.seeded_quadruples(7, 30), c.seeded_quadruples(8, 30));
        assert_eq!(c.triples().len(), 216);
    }

    #[test]
    fn characteristic_two_drops_the_twist() {
        let c = Fp::with_modulus(2, || Corpus::<Fp>::dual_numbers().unwrap()).unwrap();
        assert_eq!(c.modules.len(), 5);
    }
}
