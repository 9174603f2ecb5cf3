use gvbimod::corpus::Corpus;
use gvbimod::distributor::{check_naturality, Side};
use gvbimod::duality::varpi;
use gvbimod::linalg::Matrix;
use gvbimod::tensor::{cotensor_over, tensor_over};
use gvbimod::{Bimodule, BimoduleMap, Fp, QBimodule, QMatrix, Rational, Scalar, Subspace};
use proptest::prelude::*;

type Q = Rational;

fn int_matrix(rows: usize, cols: usize) -> impl Strategy<Value = QMatrix> {
    prop::collection::vec(-3i64..=3, rows * cols)
        .prop_map(move |v| Matrix::from_vec(rows, cols, v.into_iter().map(Q::from_i64).collect()).unwrap())
}

/// `L U` with unit diagonals, hence invertible over the integers.
fn unimodular(n: usize) -> impl Strategy<Value = QMatrix> {
    prop::collection::vec(-2i64..=2, n * n).prop_map(move |v| {
        let l = Matrix::from_fn(n, n, |i, j| if i == j { Q::from_i64(1) } else if i > j { Q::from_i64(v[i * n + j]) } else { Q::from_i64(0) });
        let u = Matrix::from_fn(n, n, |i, j| if i == j { Q::from_i64(1) } else if i < j { Q::from_i64(v[i * n + j]) } else { Q::from_i64(0) });
        &l * &u
    })
}

fn conjugate(m: &QBimodule, p: &QMatrix) -> QBimodule {
    let pinv = p.inverse().unwrap();
    let conj = |a: &QMatrix| &(p * a) * &pinv;
    Bimodule::new(
        m.left_algebra().clone(),
        m.right_algebra().clone(),
        m.dim(),
        m.left_actions().iter().map(conj).collect(),
        m.right_actions().iter().map(conj).collect(),
    )
    .unwrap()
}

fn random_map(x: &QBimodule, y: &QBimodule, coeffs: &[i64]) -> BimoduleMap<Q> {
    let h = x.hom_space(y).unwrap();
    let mut v = vec![Q::from_i64(0); x.dim() * y.dim()];
    for (l, c) in (0..h.dim()).zip(coeffs.iter().cycle()) {
        for (slot, b) in v.iter_mut().zip(h.basis_vector(l)) {
            slot.add_mul_assign(&Q::from_i64(*c), &b);
        }
    }
    BimoduleMap::new(x.clone(), y.clone(), Matrix::from_vec(y.dim(), x.dim(), v).unwrap()).unwrap()
}

fn corpora() -> [Corpus<Q>; 2] {
    [Corpus::dual_numbers().unwrap(), Corpus::a3().unwrap()]
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn rank_nullity(m in int_matrix(3, 5)) {
        let k = m.kernel();
        prop_assert_eq!(m.rank() + k.dim(), 5);
        prop_assert_eq!(m.rank(), m.column_rank());
        prop_assert_eq!(m.image().dim(), m.rank());
        for i in 0..k.dim() {
            prop_assert!(m.mul_vec(&k.basis_vector(i)).iter().all(|x| x == &Q::from_i64(0)));
        }
    }

    #[test]
    fn subspace_dimension_formula(a in int_matrix(2, 4), b in int_matrix(3, 4)) {
        let (u, v) = (Subspace::from_row_span(&a), Subspace::from_row_span(&b));
        prop_assert_eq!(u.sum(&v).dim() + u.intersection(&v).dim(), u.dim() + v.dim());
        prop_assert!(u.sum(&v).contains_subspace(&u));
        prop_assert!(u.contains_subspace(&u.intersection(&v)));
    }

    #[test]
    fn unimodular_inverse(p in unimodular(4)) {
        let inv = p.inverse().unwrap();
        prop_assert!((&p * &inv).is_identity());
        prop_assert!((&inv * &p).is_identity());
    }

    #[test]
    fn rational_text_round_trip(n in -1000i64..1000, d in 1i64..1000) {
        let r = Q::from_i64(n).mul_ref(&Q::from_i64(d).inverse().unwrap());
        prop_assert_eq!(Q::parse_exact(&r.to_exact_string()).unwrap(), r);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(16))]

    /// Change of basis, duality and the two tensor products over `A₂`.
    #[test]
    fn invariants_under_change_of_basis(i in 0usize..6, j in 0usize..6, p in unimodular(2), q in unimodular(2)) {
        let c = &corpora()[0];
        let (x, y) = (c.get(i), c.get(j));
        let (px, qy) = if x.dim() == 2 && y.dim() == 2 { (conjugate(x, &p), conjugate(y, &q)) } else { (x.clone(), y.clone()) };
        prop_assert!(px.is_valid() && qy.is_valid());
        prop_assert!(px.are_isomorphic(x, 1).unwrap().is_isomorphic());
        prop_assert_eq!(&px.dual().dual(), &px);
        let t = tensor_over(&px, &qy).unwrap().into_result();
        prop_assert_eq!(t.dim(), tensor_over(x, y).unwrap().result().dim());
        // X ⊗^A Y and G(G(Y) ⊗_A G(X)) have equal dimension
        let co = cotensor_over(&px, &qy).unwrap().into_result();
        prop_assert_eq!(co.dim(), tensor_over(&qy.dual(), &px.dual()).unwrap().result().dim());
        prop_assert!(varpi(&px, &qy).unwrap().is_bijection());
    }

    #[test]
    fn distributors_are_natural(
        alg in 0usize..2,
        idx in prop::collection::vec(0usize..6, 6),
        coeffs in prop::collection::vec(-3i64..=3, 1..4),
    ) {
        let c = &corpora()[alg];
        let f = random_map(c.get(idx[0]), c.get(idx[1]), &coeffs);
        let g = random_map(c.get(idx[2]), c.get(idx[3]), &coeffs);
        let h = random_map(c.get(idx[4]), c.get(idx[5]), &coeffs);
        for side in [Side::Left, Side::Right] {
            let check = check_naturality(side, &f, &g, &h).unwrap();
            prop_assert!(check.commutes, "{:?}", check);
        }
    }

    #[test]
    fn large_prime_agrees_with_rationals(alg in 0usize..2, i in 0usize..5, j in 0usize..5) {
        let c = &corpora()[alg];
        let over_q = (
            tensor_over(c.get(i), c.get(j)).unwrap().result().dim(),
            cotensor_over(c.get(i), c.get(j)).unwrap().result().dim(),
        );
        let over_p = Fp::with_modulus(10007, || {
            let c = if alg == 0 { Corpus::<Fp>::dual_numbers() } else { Corpus::<Fp>::a3() }.unwrap();
            (
                tensor_over(c.get(i), c.get(j)).unwrap().result().dim(),
                cotensor_over(c.get(i), c.get(j)).unwrap().result().dim(),
            )
        })
        .unwrap();
        prop_assert_eq!(over_q, over_p);
    }
}
