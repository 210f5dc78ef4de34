//! Degree-wise linear algebra on `Q[t_1, .., t_r]`: induced actions, fixed
//! and determinant-relative subspaces, sums of subspaces.

use std::collections::{BTreeMap, HashMap};
use std::sync::OnceLock;

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::linalg::{self, Matrix, SparseRow, Q};

pub type Monomial = Vec<u32>;

/// Monomials of total degree `d` in `r` variables, graded-lex ordered
/// (`t_1^d` first).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PolySpace {
    pub r: usize,
    pub d: usize,
    basis: Vec<Monomial>,
    index: HashMap<Monomial, usize>,
}

fn monomials(r: usize, d: usize) -> Vec<Monomial> {
    if r == 0 {
        return if d == 0 { vec![Vec::new()] } else { Vec::new() };
    }
    let mut out = Vec::new();
    for a in (0..=d).rev() {
        for mut rest in monomials(r - 1, d - a) {
            rest.insert(0, a as u32);
            out.push(rest);
        }
    }
    out
}

impl PolySpace {
    pub fn new(r: usize, d: usize) -> Self {
        let basis = monomials(r, d);
        let index = basis.iter().cloned().enumerate().map(|(i, m)| (m, i)).collect();
        PolySpace { r, d, basis, index }
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[Monomial] {
        &self.basis
    }

    pub fn index_of(&self, m: &[u32]) -> Option<usize> {
        self.index.get(m).copied()
    }

    fn to_vector(&self, p: &Poly) -> Vec<Q> {
        let mut v = vec![Q::zero(); self.dim()];
        for (m, c) in p {
            v[self.index[m]] = c.clone();
        }
        v
    }
}

type Poly = BTreeMap<Monomial, Q>;

fn poly_mul(a: &Poly, b: &Poly) -> Poly {
    let mut out = Poly::new();
    for (ma, ca) in a {
        for (mb, cb) in b {
            let m: Monomial = ma.iter().zip(mb).map(|(x, y)| x + y).collect();
            let e = out.entry(m).or_insert_with(Q::zero);
            *e += ca * cb;
        }
    }
    out.retain(|_, c| !c.is_zero());
    out
}

fn linear_form(coeffs: &[Q]) -> Poly {
    let r = coeffs.len();
    coeffs
        .iter()
        .enumerate()
        .filter(|(_, c)| !c.is_zero())
        .map(|(l, c)| {
            let mut m = vec![0; r];
            m[l] = 1;
            (m, c.clone())
        })
        .collect()
}

/// Matrix of `f(t) -> f(g^T t)` on degree-`d` polynomials; column `j` is the
/// image of the `j`-th basis monomial.
pub fn symmetric_power_action(g: &Matrix, d: usize) -> Matrix {
    let r = g.nrows();
    assert_eq!(r, g.ncols());
    let dense = g.to_dense();
    // t_k -> sum_l g[l][k] t_l
    let var_images: Vec<Poly> = (0..r)
        .map(|k| linear_form(&(0..r).map(|l| dense[l][k].clone()).collect::<Vec<_>>()))
        .collect();
    let mut images: HashMap<Monomial, Poly> = HashMap::new();
    images.insert(vec![0; r], Poly::from([(vec![0; r], Q::one())]));
    for e in 1..=d {
        for m in monomials(r, e) {
            let k = m.iter().position(|&x| x > 0).expect("positive degree");
            let mut prev = m.clone();
            prev[k] -= 1;
            let img = poly_mul(&var_images[k], &images[&prev]);
            images.insert(m, img);
        }
    }
    let space = PolySpace::new(r, d);
    let mut rows: Vec<SparseRow> = vec![Vec::new(); space.dim()];
    for (j, m) in space.basis().iter().enumerate() {
        for (mono, c) in &images[m] {
            rows[space.index[mono]].push((j, c.clone()));
        }
    }
    Matrix::from_sparse_rows(space.dim(), rows)
}

/// A subspace of a degree slice, given by independent basis vectors.
#[derive(Clone, Debug)]
pub struct Subspace {
    pub r: usize,
    pub d: usize,
    ambient_dim: usize,
    basis: Vec<Vec<Q>>,
    canon: OnceLock<(Vec<Vec<Q>>, Vec<usize>)>,
}

impl Subspace {
    /// Trusts that `basis` is linearly independent.
    pub fn from_independent(space: &PolySpace, basis: Vec<Vec<Q>>) -> Self {
        Self::raw(space.r, space.d, space.dim(), basis)
    }

    fn raw(r: usize, d: usize, ambient_dim: usize, basis: Vec<Vec<Q>>) -> Self {
        debug_assert!(basis.iter().all(|v| v.len() == ambient_dim));
        Subspace {
            r,
            d,
            ambient_dim,
            basis,
            canon: OnceLock::new(),
        }
    }

    pub fn from_spanning(space: &PolySpace, vectors: &[Vec<Q>]) -> Self {
        let rr = linalg::rref(&dense_rows(space.dim(), vectors));
        let s = Self::from_independent(space, rr.rows.clone());
        let _ = s.canon.set((rr.rows, rr.pivots));
        s
    }

    pub fn full(space: &PolySpace) -> Self {
        let n = space.dim();
        let basis: Vec<Vec<Q>> = (0..n)
            .map(|i| (0..n).map(|j| if i == j { Q::one() } else { Q::zero() }).collect())
            .collect();
        let s = Self::from_independent(space, basis.clone());
        let _ = s.canon.set((basis, (0..n).collect()));
        s
    }

    pub fn zero(space: &PolySpace) -> Self {
        Self::from_independent(space, Vec::new())
    }

    /// Kernel of `m` with the kernel basis that is the identity on the free
    /// columns.
    fn kernel_of(space: &PolySpace, m: &Matrix) -> Self {
        let rr = linalg::rref(m);
        let free = rr.free_columns();
        let basis = rr.kernel();
        let s = Self::from_independent(space, basis.clone());
        let _ = s.canon.set((basis, free));
        s
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient_dim
    }

    pub fn same_ambient(&self, other: &Subspace) -> bool {
        (self.r, self.d, self.ambient_dim) == (other.r, other.d, other.ambient_dim)
    }

    pub fn in_space(&self, space: &PolySpace) -> bool {
        (self.r, self.d, self.ambient_dim) == (space.r, space.d, space.dim())
    }

    pub fn basis(&self) -> &[Vec<Q>] {
        &self.basis
    }

    pub fn basis_matrix(&self) -> Matrix {
        dense_rows(self.ambient_dim, &self.basis)
    }

    /// A basis together with columns on which it restricts to the identity.
    pub fn canonical(&self) -> &(Vec<Vec<Q>>, Vec<usize>) {
        self.canon.get_or_init(|| {
            let rr = linalg::rref(&self.basis_matrix());
            (rr.rows, rr.pivots)
        })
    }

    /// Coordinates of `v`, assumed to lie in the subspace, in the canonical
    /// basis.
    pub fn coords(&self, v: &[Q]) -> Vec<Q> {
        self.canonical().1.iter().map(|&p| v[p].clone()).collect()
    }

    pub fn contains(&self, v: &[Q]) -> bool {
        let (basis, pivots) = self.canonical();
        let mut w = v.to_vec();
        for (b, &p) in basis.iter().zip(pivots) {
            let c = w[p].clone();
            if !c.is_zero() {
                for (x, y) in w.iter_mut().zip(b) {
                    *x -= &c * y;
                }
            }
        }
        w.iter().all(Zero::is_zero)
    }

    pub fn is_subspace_of(&self, other: &Subspace) -> bool {
        self.same_ambient(other) && self.basis.iter().all(|v| other.contains(v))
    }
}

pub fn dense_rows(ncols: usize, vectors: &[Vec<Q>]) -> Matrix {
    Matrix::from_sparse_rows(
        ncols,
        vectors
            .iter()
            .map(|v| {
                v.iter()
                    .enumerate()
                    .filter(|(_, x)| !x.is_zero())
                    .map(|(j, x)| (j, x.clone()))
                    .collect()
            })
            .collect(),
    )
}

/// Involution with `g - I` of rank one.
pub fn is_reflection(g: &Matrix) -> bool {
    let n = g.nrows();
    n == g.ncols() && g.mul(g).is_identity() && linalg::rank(&g.sub(&Matrix::identity(n))) == 1
}

/// For `g = I - alpha e_i^T` returns `(i, alpha)`; the induced action then
/// only moves `t_i`, and `ell = alpha . t` changes sign.
fn column_reflection(g: &Matrix) -> Option<(usize, Vec<Q>)> {
    let n = g.nrows();
    let diff = Matrix::identity(n).sub(g);
    let cols: Vec<usize> = (0..n).filter(|&j| (0..n).any(|i| !diff.get(i, j).is_zero())).collect();
    let [i] = cols.as_slice() else { return None };
    let alpha = diff.column(*i);
    (alpha[*i] == Q::from_integer(2.into())).then_some((*i, alpha))
}

/// Basis `ell^k * prod_{l != i} t_l^{b_l}` over `k` of the given parity.
fn parity_basis(space: &PolySpace, i: usize, alpha: &[Q], odd: bool) -> Vec<Vec<Q>> {
    let (r, d) = (space.r, space.d);
    let ell = linear_form(alpha);
    let mut powers = vec![Poly::from([(vec![0; r], Q::one())])];
    for k in 1..=d {
        let next = poly_mul(&powers[k - 1], &ell);
        powers.push(next);
    }
    let mut out = Vec::new();
    for k in (usize::from(odd)..=d).step_by(2) {
        for rest in monomials(r - 1, d - k) {
            let mut shift = rest;
            shift.insert(i, 0);
            let p: Poly = powers[k]
                .iter()
                .map(|(m, c)| (m.iter().zip(&shift).map(|(a, b)| a + b).collect(), c.clone()))
                .collect();
            out.push(space.to_vector(&p));
        }
    }
    out
}

/// Vectors `v` of `space` with `g v = sign * v` for every generator, by
/// restriction from the closed-form basis of the first generator when it is
/// a coordinate reflection, and by a stacked nullspace otherwise.
fn eigen_subspace(gens: &[Matrix], d: usize, sign: i64) -> Subspace {
    let r = gens[0].nrows();
    let space = PolySpace::new(r, d);
    let shift = Matrix::identity(space.dim()).scale(&Q::from_integer(sign.into()));
    let constraint = |g: &Matrix| symmetric_power_action(g, d).sub(&shift);
    let Some((i, alpha)) = column_reflection(&gens[0]) else {
        let parts: Vec<Matrix> = gens.iter().map(constraint).collect();
        let refs: Vec<&Matrix> = parts.iter().collect();
        return Subspace::kernel_of(&space, &Matrix::vstack(&refs));
    };
    let start = parity_basis(&space, i, &alpha, sign < 0);
    if gens.len() == 1 || start.is_empty() {
        return Subspace::from_independent(&space, start);
    }
    // columns: images of the start basis under each constraint
    let b = start.len();
    let mut rows: Vec<SparseRow> = Vec::new();
    for g in &gens[1..] {
        let c = constraint(g);
        let imgs: Vec<Vec<Q>> = start.iter().map(|v| c.mul_vec(v)).collect();
        for row in 0..space.dim() {
            rows.push(
                (0..b)
                    .filter(|&j| !imgs[j][row].is_zero())
                    .map(|j| (j, imgs[j][row].clone()))
                    .collect(),
            );
        }
    }
    let coeffs = linalg::nullspace(&Matrix::from_sparse_rows(b, rows));
    let basis = coeffs
        .iter()
        .map(|c| {
            let mut v = vec![Q::zero(); space.dim()];
            for (cj, sj) in c.iter().zip(&start) {
                if cj.is_zero() {
                    continue;
                }
                for (x, y) in v.iter_mut().zip(sj) {
                    *x += cj * y;
                }
            }
            v
        })
        .collect();
    Subspace::from_independent(&space, basis)
}

/// Common fixed vectors of the generators on degree-`d` polynomials in `r`
/// variables; with no generators, the whole slice.
pub fn fixed_subspace(gens: &[Matrix], r: usize, d: usize) -> Subspace {
    if gens.is_empty() {
        return Subspace::full(&PolySpace::new(r, d));
    }
    eigen_subspace(gens, d, 1)
}

/// Polynomials `f` with `s f = -f` for every generator.
pub fn det_relative_subspace(gens: &[Matrix], r: usize, d: usize) -> Result<Subspace> {
    for (k, g) in gens.iter().enumerate() {
        if !is_reflection(g) {
            return Err(Error::NotAReflection(k + 1));
        }
    }
    if gens.is_empty() {
        return Ok(Subspace::full(&PolySpace::new(r, d)));
    }
    Ok(eigen_subspace(gens, d, -1))
}

/// `(dim of the sum, codimension of the sum)`.
pub fn span_and_quotient(ambient: &PolySpace, parts: &[&Subspace]) -> Result<(usize, usize)> {
    if parts.iter().any(|p| !p.in_space(ambient)) {
        return Err(Error::AmbientMismatch);
    }
    let sum = sum_dim(ambient.dim(), parts);
    Ok((sum, ambient.dim() - sum))
}

/// Dimension of a sum of subspaces of a common ambient of dimension `n`.
pub fn sum_dim(n: usize, parts: &[&Subspace]) -> usize {
    let rows: Vec<Vec<Q>> = parts.iter().flat_map(|p| p.basis().iter().cloned()).collect();
    if rows.is_empty() {
        return 0;
    }
    linalg::rank(&dense_rows(n, &rows))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::examples::*;
    use crate::gcm::{Gcm, Variant};
    use crate::linalg::q;
    use crate::weyl::realization;

    fn m(rows: &[Vec<i64>]) -> Matrix {
        Matrix::from_i64(rows)
    }

    /// Expand `f(g^T t)` for a single monomial by brute force.
    fn substitute(g: &Matrix, mono: &[u32]) -> Poly {
        let r = g.nrows();
        let mut p = Poly::from([(vec![0; r], Q::one())]);
        for (k, &e) in mono.iter().enumerate() {
            let lf = linear_form(&(0..r).map(|l| g.get(l, k)).collect::<Vec<_>>());
            for _ in 0..e {
                p = poly_mul(&p, &lf);
            }
        }
        p
    }

    #[test]
    fn poly_space_order_and_size() {
        let s = PolySpace::new(3, 2);
        assert_eq!(s.dim(), 6);
        assert_eq!(s.basis()[0], vec![2, 0, 0]);
        assert_eq!(s.basis()[1], vec![1, 1, 0]);
        assert_eq!(s.basis()[5], vec![0, 0, 2]);
        assert_eq!(PolySpace::new(5, 10).dim(), 1001);
        assert_eq!(PolySpace::new(4, 0).dim(), 1);
    }

    #[test]
    fn action_examples() {
        assert!(symmetric_power_action(&Matrix::identity(3), 4).is_identity());
        assert_eq!(symmetric_power_action(&m(&[vec![-1]]), 2), m(&[vec![1]]));
        let a2 = Gcm::new(vec![vec![2, -1], vec![-1, 2]]).unwrap();
        let s1 = &realization(&a2, Variant::Derived).generators[0];
        let act = symmetric_power_action(s1, 2);
        let trace: Q = (0..3).map(|i| act.get(i, i)).sum();
        assert_eq!(trace, q(1));
        // brute-force column check
        let sp = PolySpace::new(2, 2);
        for (j, mono) in sp.basis().iter().enumerate() {
            assert_eq!(act.column(j), sp.to_vector(&substitute(s1, mono)));
        }
    }

    #[test]
    fn action_is_functorial() {
        let re = realization(&one_spherical(), Variant::Full);
        let (g, h) = (&re.generators[0], &re.generators[2]);
        for d in 0..5 {
            assert_eq!(
                symmetric_power_action(&g.mul(h), d),
                symmetric_power_action(g, d).mul(&symmetric_power_action(h, d))
            );
        }
    }

    #[test]
    fn fixed_examples() {
        let neg = m(&[vec![-1]]);
        assert_eq!(fixed_subspace(std::slice::from_ref(&neg), 1, 1).dim(), 0);
        assert_eq!(fixed_subspace(&[neg], 1, 2).dim(), 1);
        let two = realization(&two_spherical(), Variant::Full);
        assert_eq!(fixed_subspace(&two.generators, 3, 1).dim(), 0);
        let ka = realization(&affine_a2(), Variant::Full);
        assert_eq!(fixed_subspace(&ka.generators, 4, 1).dim(), 1);
    }

    #[test]
    fn closed_form_matches_generic_nullspace() {
        let re = realization(&one_spherical(), Variant::Full);
        for d in 0..6 {
            for sign in [1i64, -1] {
                for gens in [vec![re.generators[1].clone()], re.generators.clone()] {
                    let fast = eigen_subspace(&gens, d, sign);
                    // conjugating by a unitriangular change of basis defeats
                    // the closed form
                    let p = m(&[vec![1, 1, 0], vec![0, 1, 1], vec![0, 0, 1]]);
                    let pinv = m(&[vec![1, -1, 1], vec![0, 1, -1], vec![0, 0, 1]]);
                    assert!(p.mul(&pinv).is_identity());
                    let conj: Vec<Matrix> = gens.iter().map(|g| pinv.mul(g).mul(&p)).collect();
                    assert!(column_reflection(&conj[0]).is_none());
                    let slow = eigen_subspace(&conj, d, sign);
                    assert_eq!(fast.dim(), slow.dim());
                    let act = symmetric_power_action(&gens[0], d);
                    for v in fast.basis() {
                        let w = act.mul_vec(v);
                        let expect: Vec<Q> = v.iter().map(|x| x * q(sign)).collect();
                        assert_eq!(w, expect);
                    }
                }
            }
        }
    }

    #[test]
    fn det_relative_examples() {
        let a2 = Gcm::new(vec![vec![2, -1], vec![-1, 2]]).unwrap();
        let re = realization(&a2, Variant::Derived);
        let dims: Vec<usize> = (0..6)
            .map(|d| det_relative_subspace(&re.generators, 2, d).unwrap().dim())
            .collect();
        assert_eq!(dims, vec![0, 0, 0, 1, 0, 1]);
        assert_eq!(det_relative_subspace(&re.generators[..1], 2, 0).unwrap().dim(), 0);
        let one = realization(&one_spherical(), Variant::Full);
        for d in 0..=10 {
            assert_eq!(det_relative_subspace(&one.generators, 3, d).unwrap().dim(), 0);
        }
        assert_eq!(
            det_relative_subspace(&[Matrix::identity(2)], 2, 1).unwrap_err(),
            Error::NotAReflection(1)
        );
    }

    #[test]
    fn sums_and_quotients() {
        let space = PolySpace::new(3, 2);
        let full = Subspace::full(&space);
        assert_eq!(span_and_quotient(&space, &[&full]).unwrap(), (6, 0));
        assert_eq!(span_and_quotient(&space, &[]).unwrap(), (0, 6));
        let other = Subspace::full(&PolySpace::new(3, 1));
        assert_eq!(span_and_quotient(&space, &[&other]).unwrap_err(), Error::AmbientMismatch);
        let re = realization(&two_spherical(), Variant::Full);
        for d in 0..=10 {
            let sp = PolySpace::new(3, d);
            let fixed: Vec<Subspace> =
                (0..3).map(|i| fixed_subspace(&re.generators[i..=i], 3, d)).collect();
            let refs: Vec<&Subspace> = fixed.iter().collect();
            assert_eq!(span_and_quotient(&sp, &refs).unwrap().1, 0, "d = {d}");
        }
    }

    #[test]
    fn coordinates_and_containment() {
        let re = realization(&affine_a2(), Variant::Full);
        let small = fixed_subspace(&re.generators[..2], 4, 3);
        let big = fixed_subspace(&re.generators[..1], 4, 3);
        assert!(small.is_subspace_of(&big));
        assert!(!big.is_subspace_of(&small));
        for v in small.basis() {
            let c = big.coords(v);
            let (b, _) = big.canonical();
            let mut w = vec![Q::zero(); v.len()];
            for (ci, bi) in c.iter().zip(b) {
                for (x, y) in w.iter_mut().zip(bi) {
                    *x += ci * y;
                }
            }
            assert_eq!(&w, v);
        }
    }
}
