//! A small, independent reference implementation over `BigRational` with
//! dense row-major matrices. It shares no code with the library: algebras
//! are given by hard-coded products, quotients and subspaces are built by a
//! separate elimination routine.

#![allow(dead_code)]

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

pub type R = BigRational;
pub type Vector = Vec<R>;
pub type Mat = Vec<Vec<R>>;

pub fn int(n: i64) -> R {
    BigRational::from_integer(BigInt::from(n))
}

pub fn zeros(r: usize, c: usize) -> Mat {
    vec![vec![R::zero(); c]; r]
}

pub fn eye(n: usize) -> Mat {
    let mut m = zeros(n, n);
    for (i, row) in m.iter_mut().enumerate() {
        row[i] = R::one();
    }
    m
}

pub fn unit(n: usize, i: usize) -> Vector {
    (0..n).map(|j| if i == j { R::one() } else { R::zero() }).collect()
}

fn cols(m: &Mat, fallback: usize) -> usize {
    m.first().map_or(fallback, |r| r.len())
}

pub fn mul(a: &Mat, b: &Mat, inner: usize) -> Mat {
    let c = cols(b, 0);
    (0..a.len())
        .map(|i| (0..c).map(|j| (0..inner).fold(R::zero(), |s, k| s + &a[i][k] * &b[k][j])).collect())
        .collect()
}

pub fn apply(a: &Mat, v: &[R]) -> Vector {
    a.iter().map(|row| row.iter().zip(v).fold(R::zero(), |s, (x, y)| s + x * y)).collect()
}

pub fn transpose(a: &Mat, rows_if_empty: usize) -> Mat {
    let c = cols(a, rows_if_empty);
    (0..c).map(|j| a.iter().map(|row| row[j].clone()).collect()).collect()
}

pub fn kron(a: &Mat, b: &Mat) -> Mat {
    let (ra, ca, rb, cb) = (a.len(), cols(a, 0), b.len(), cols(b, 0));
    let mut m = zeros(ra * rb, ca * cb);
    for i in 0..ra {
        for j in 0..ca {
            for k in 0..rb {
                for l in 0..cb {
                    m[i * rb + k][j * cb + l] = &a[i][j] * &b[k][l];
                }
            }
        }
    }
    m
}

pub fn kron_vec(a: &[R], b: &[R]) -> Vector {
    a.iter().flat_map(|x| b.iter().map(move |y| x * y)).collect()
}

pub fn sub(a: &Mat, b: &Mat) -> Mat {
    a.iter().zip(b).map(|(r, s)| r.iter().zip(s).map(|(x, y)| x - y).collect()).collect()
}

pub fn column(a: &Mat, j: usize) -> Vector {
    a.iter().map(|r| r[j].clone()).collect()
}

pub fn from_columns(n: usize, columns: &[Vector]) -> Mat {
    (0..n).map(|i| columns.iter().map(|c| c[i].clone()).collect()).collect()
}

pub fn is_zero_vec(v: &[R]) -> bool {
    v.iter().all(Zero::is_zero)
}

/// Reduced row echelon form of the span of `rows`: nonzero rows and pivots.
#[derive(Clone, Debug)]
pub struct Echelon {
    pub width: usize,
    pub rows: Vec<Vector>,
    pub pivots: Vec<usize>,
}

impl Echelon {
    pub fn new(width: usize, rows: &[Vector]) -> Self {
        let mut m: Vec<Vector> = rows.to_vec();
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..width {
            let Some(p) = (r..m.len()).find(|&i| !m[i][c].is_zero()) else { continue };
            m.swap(r, p);
            let inv = R::one() / &m[r][c];
            for x in m[r].iter_mut() {
                *x = &*x * &inv;
            }
            for i in 0..m.len() {
                if i != r && !m[i][c].is_zero() {
                    let f = m[i][c].clone();
                    let pivot_row = m[r].clone();
                    for (x, y) in m[i].iter_mut().zip(&pivot_row) {
                        *x = &*x - &f * y;
                    }
                }
            }
            pivots.push(c);
            r += 1;
        }
        m.truncate(r);
        Echelon { width, rows: m, pivots }
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn reduce(&self, v: &[R]) -> Vector {
        let mut v = v.to_vec();
        for (row, &p) in self.rows.iter().zip(&self.pivots) {
            if !v[p].is_zero() {
                let f = v[p].clone();
                for (x, y) in v.iter_mut().zip(row) {
                    *x = &*x - &f * y;
                }
            }
        }
        v
    }

    pub fn contains(&self, v: &[R]) -> bool {
        is_zero_vec(&self.reduce(v))
    }

    pub fn free(&self) -> Vec<usize> {
        (0..self.width).filter(|c| !self.pivots.contains(c)).collect()
    }

    /// Coordinates of a member of the span in the echelon basis.
    pub fn coords(&self, v: &[R]) -> Vector {
        assert!(self.contains(v), "vector outside the subspace");
        self.pivots.iter().map(|&p| v[p].clone()).collect()
    }

    /// Basis of `{v : row · v = 0 for every row}`.
    pub fn nullspace(&self) -> Vec<Vector> {
        self.free()
            .into_iter()
            .map(|f| {
                let mut v = unit(self.width, f);
                for (row, &p) in self.rows.iter().zip(&self.pivots) {
                    v[p] = -row[f].clone();
                }
                v
            })
            .collect()
    }
}

pub fn rank_of_columns(n: usize, columns: &[Vector]) -> usize {
    Echelon::new(n, columns).rank()
}

pub fn matrix_rank(m: &Mat, ncols: usize) -> usize {
    Echelon::new(ncols, m).rank()
}

/// A unital algebra with identity `e_0`; `prod[i][j]` is `e_i e_j`.
#[derive(Clone, Debug)]
pub struct Alg {
    pub dim: usize,
    pub prod: Vec<Vec<Vector>>,
}

impl Alg {
    fn local_square_zero(dim: usize) -> Self {
        let prod = (0..dim)
            .map(|i| {
                (0..dim)
                    .map(|j| match (i, j) {
                        (0, j) => unit(dim, j),
                        (i, 0) => unit(dim, i),
                        _ => vec![R::zero(); dim],
                    })
                    .collect()
            })
            .collect();
        Alg { dim, prod }
    }

    /// `k[x]/(x²)` on `{1, x}`.
    pub fn a2() -> Self {
        Self::local_square_zero(2)
    }

    /// `k[x, y]/(x, y)²` on `{1, x, y}`.
    pub fn a3() -> Self {
        Self::local_square_zero(3)
    }
}

/// A bimodule given by `l[a]` and `r[a]`, the actions of basis element
/// `e_a` on column vectors.
#[derive(Clone, Debug, PartialEq)]
pub struct Bi {
    pub n: usize,
    pub l: Vec<Mat>,
    pub r: Vec<Mat>,
}

impl Bi {
    pub fn regular(a: &Alg) -> Self {
        let l = (0..a.dim).map(|i| from_columns(a.dim, &a.prod[i])).collect();
        let r = (0..a.dim).map(|i| from_columns(a.dim, &(0..a.dim).map(|j| a.prod[j][i].clone()).collect::<Vec<_>>())).collect();
        Bi { n: a.dim, l, r }
    }

    pub fn simple(a: &Alg) -> Self {
        let act: Vec<Mat> = (0..a.dim).map(|i| vec![vec![int((i == 0) as i64)]]).collect();
        Bi { n: 1, l: act.clone(), r: act }
    }

    /// `(a.f.b)(m) = f(b.m.a)`.
    pub fn dual(&self) -> Self {
        Bi {
            n: self.n,
            l: self.r.iter().map(|m| transpose(m, self.n)).collect(),
            r: self.l.iter().map(|m| transpose(m, self.n)).collect(),
        }
    }

    pub fn satisfies_axioms(&self, a: &Alg) -> bool {
        let n = self.n;
        let combo = |acts: &[Mat], v: &[R]| {
            let mut m = zeros(n, n);
            for (k, c) in v.iter().enumerate() {
                for i in 0..n {
                    for j in 0..n {
                        m[i][j] = &m[i][j] + c * &acts[k][i][j];
                    }
                }
            }
            m
        };
        if self.l[0] != eye(n) || self.r[0] != eye(n) {
            return false;
        }
        for i in 0..a.dim {
            for j in 0..a.dim {
                if mul(&self.l[i], &self.l[j], n) != combo(&self.l, &a.prod[i][j]) {
                    return false;
                }
                if mul(&self.r[j], &self.r[i], n) != combo(&self.r, &a.prod[i][j]) {
                    return false;
                }
                if mul(&self.l[i], &self.r[j], n) != mul(&self.r[j], &self.l[i], n) {
                    return false;
                }
            }
        }
        true
    }

    pub fn vector_tensor(x: &Bi, y: &Bi) -> Bi {
        Bi {
            n: x.n * y.n,
            l: x.l.iter().map(|m| kron(m, &eye(y.n))).collect(),
            r: y.r.iter().map(|m| kron(&eye(x.n), m)).collect(),
        }
    }

    pub fn radical_acts_as_zero(&self) -> bool {
        self.l[1..].iter().chain(&self.r[1..]).all(|m| m.iter().all(|r| is_zero_vec(r)))
    }

    pub fn left_socle_dim(&self) -> usize {
        let rows: Vec<Vector> = self.l[1..].iter().flat_map(|m| m.iter().cloned()).collect();
        self.n - Echelon::new(self.n, &rows).rank()
    }
}

/// The balancing operators `ρ_a ⊗ 1 − 1 ⊗ λ_a` on `X ⊗ Y`.
fn balance(x: &Bi, y: &Bi) -> Vec<Mat> {
    x.r.iter().zip(&y.l).map(|(ra, la)| sub(&kron(ra, &eye(y.n)), &kron(&eye(x.n), la))).collect()
}

/// `X ⊗_A Y` as a quotient of `X ⊗ Y`.
#[derive(Clone, Debug)]
pub struct Tensor {
    pub module: Bi,
    pub relations: Echelon,
    pub free: Vec<usize>,
}

impl Tensor {
    pub fn new(x: &Bi, y: &Bi) -> Self {
        let n = x.n * y.n;
        let rels: Vec<Vector> = balance(x, y).iter().flat_map(|op| (0..n).map(move |k| column(op, k))).collect();
        let relations = Echelon::new(n, &rels);
        let free = relations.free();
        let v = Bi::vector_tensor(x, y);
        let mut t = Tensor { module: Bi { n: free.len(), l: vec![], r: vec![] }, relations, free };
        let induce = |t: &Tensor, m: &Mat| {
            let cols: Vec<Vector> = t.free.iter().map(|&f| t.project(&column(m, f))).collect();
            from_columns(t.free.len(), &cols)
        };
        let l = v.l.iter().map(|m| induce(&t, m)).collect();
        let r = v.r.iter().map(|m| induce(&t, m)).collect();
        t.module.l = l;
        t.module.r = r;
        t
    }

    pub fn project(&self, v: &[R]) -> Vector {
        let red = self.relations.reduce(v);
        self.free.iter().map(|&f| red[f].clone()).collect()
    }

    pub fn dim(&self) -> usize {
        self.free.len()
    }
}

/// `X ⊗^A Y` as a subspace of `X ⊗ Y`.
#[derive(Clone, Debug)]
pub struct Cotensor {
    pub module: Bi,
    pub basis: Echelon,
}

impl Cotensor {
    pub fn new(x: &Bi, y: &Bi) -> Self {
        let n = x.n * y.n;
        let rows: Vec<Vector> = balance(x, y).into_iter().flatten().collect();
        let basis = Echelon::new(n, &Echelon::new(n, &rows).nullspace());
        let v = Bi::vector_tensor(x, y);
        let restrict = |m: &Mat| {
            let cols: Vec<Vector> = basis.rows.iter().map(|b| basis.coords(&apply(m, b))).collect();
            from_columns(basis.rank(), &cols)
        };
        let module = Bi { n: basis.rank(), l: v.l.iter().map(restrict).collect(), r: v.r.iter().map(restrict).collect() };
        Cotensor { module, basis }
    }

    pub fn dim(&self) -> usize {
        self.basis.rank()
    }
}

/// A distributor as an explicit matrix together with the data needed to
/// name domain elements.
pub struct Distributor {
    pub matrix: Mat,
    pub domain_dim: usize,
    pub codomain_dim: usize,
    inner: Cotensor,
    outer: Tensor,
    left: bool,
    factor: usize,
}

impl Distributor {
    /// `X ⊗_A (Y ⊗^A Z) -> (X ⊗_A Y) ⊗^A Z`.
    pub fn left(x: &Bi, y: &Bi, z: &Bi) -> Self {
        let yz = Cotensor::new(y, z);
        let dom = Tensor::new(x, &yz.module);
        let xy = Tensor::new(x, y);
        let cod = Cotensor::new(&xy.module, z);
        let m = yz.dim();
        let columns: Vec<Vector> = dom
            .free
            .iter()
            .map(|&f| {
                let (i, t) = (f / m, f % m);
                let k = &yz.basis.rows[t];
                let mut out = vec![R::zero(); xy.dim() * z.n];
                for j in 0..y.n {
                    let xy_ij = xy.project(&kron_vec(&unit(x.n, i), &unit(y.n, j)));
                    for l in 0..z.n {
                        let c = &k[j * z.n + l];
                        if !c.is_zero() {
                            for (o, v) in out.iter_mut().zip(kron_vec(&xy_ij, &unit(z.n, l))) {
                                *o = &*o + c * v;
                            }
                        }
                    }
                }
                cod.basis.coords(&out)
            })
            .collect();
        Distributor {
            matrix: from_columns(cod.dim(), &columns),
            domain_dim: dom.dim(),
            codomain_dim: cod.dim(),
            inner: yz,
            outer: dom,
            left: true,
            factor: x.n,
        }
    }

    /// `(X ⊗^A Y) ⊗_A Z -> X ⊗^A (Y ⊗_A Z)`.
    pub fn right(x: &Bi, y: &Bi, z: &Bi) -> Self {
        let xy = Cotensor::new(x, y);
        let dom = Tensor::new(&xy.module, z);
        let yz = Tensor::new(y, z);
        let cod = Cotensor::new(x, &yz.module);
        let columns: Vec<Vector> = dom
            .free
            .iter()
            .map(|&f| {
                let (t, l) = (f / z.n, f % z.n);
                let k = &xy.basis.rows[t];
                let mut out = vec![R::zero(); x.n * yz.dim()];
                for i in 0..x.n {
                    for j in 0..y.n {
                        let c = &k[i * y.n + j];
                        if !c.is_zero() {
                            let yz_jl = yz.project(&kron_vec(&unit(y.n, j), &unit(z.n, l)));
                            for (o, v) in out.iter_mut().zip(kron_vec(&unit(x.n, i), &yz_jl)) {
                                *o = &*o + c * v;
                            }
                        }
                    }
                }
                cod.basis.coords(&out)
            })
            .collect();
        Distributor {
            matrix: from_columns(cod.dim(), &columns),
            domain_dim: dom.dim(),
            codomain_dim: cod.dim(),
            inner: xy,
            outer: dom,
            left: false,
            factor: z.n,
        }
    }

    pub fn rank(&self) -> usize {
        if self.domain_dim == 0 {
            return 0;
        }
        matrix_rank(&self.matrix, self.domain_dim)
    }

    pub fn kernel_dim(&self) -> usize {
        self.domain_dim - self.rank()
    }

    pub fn injective(&self) -> bool {
        self.kernel_dim() == 0
    }

    pub fn surjective(&self) -> bool {
        self.rank() == self.codomain_dim
    }

    /// The domain class of `a ⊗ b` for the left distributor, where `b` is
    /// a balanced tensor in `Y ⊗ Z`.
    pub fn left_domain_element(&self, a: &[R], b: &[R]) -> Vector {
        assert!(self.left && a.len() == self.factor);
        self.outer.project(&kron_vec(a, &self.inner.basis.coords(b)))
    }

    pub fn apply(&self, v: &[R]) -> Vector {
        if self.codomain_dim == 0 {
            return vec![];
        }
        apply(&self.matrix, v)
    }
}

/// Dimension of `{f : f P = Q f for all (P, Q)}` among `nt x ns` matrices.
pub fn intertwiners(ns: usize, nt: usize, pairs: &[(&Mat, &Mat)]) -> usize {
    let var = |r: usize, c: usize| r * ns + c;
    let mut eqs = Vec::new();
    for (p, q) in pairs {
        for r in 0..nt {
            for c in 0..ns {
                let mut e = vec![R::zero(); ns * nt];
                for k in 0..ns {
                    e[var(r, k)] = &e[var(r, k)] + &p[k][c];
                }
                for k in 0..nt {
                    e[var(k, c)] = &e[var(k, c)] - &q[r][k];
                }
                eqs.push(e);
            }
        }
    }
    ns * nt - Echelon::new(ns * nt, &eqs).rank()
}

pub fn bimodule_hom_dim(x: &Bi, y: &Bi) -> usize {
    let pairs: Vec<(&Mat, &Mat)> = x.l.iter().zip(&y.l).chain(x.r.iter().zip(&y.r)).collect();
    intertwiners(x.n, y.n, &pairs)
}

pub fn right_hom_dim(x: &Bi, y: &Bi) -> usize {
    let pairs: Vec<(&Mat, &Mat)> = x.r.iter().zip(&y.r).collect();
    intertwiners(x.n, y.n, &pairs)
}

pub fn left_hom_dim(x: &Bi, y: &Bi) -> usize {
    let pairs: Vec<(&Mat, &Mat)> = x.l.iter().zip(&y.l).collect();
    intertwiners(x.n, y.n, &pairs)
}
