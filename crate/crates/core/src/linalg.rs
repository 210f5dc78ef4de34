//! Exact linear algebra over `Q`.
//!
//! Matrices are stored as sparse rows of arbitrary-precision rationals. Ranks
//! and reduced row echelon forms are computed by elimination modulo word-size
//! primes and then certified over `Q`:
//!
//! * a rank modulo `p` is a lower bound for the rank over `Q`;
//! * a kernel basis recovered by CRT plus rational reconstruction and checked
//!   by exact integer multiplication is an upper bound.
//!
//! When both agree the answer is exact. Otherwise the computation falls back
//! to fraction-free Gauss-Jordan elimination over the integers.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

pub type Q = BigRational;

pub fn q(n: i64) -> Q {
    Q::from_integer(BigInt::from(n))
}

/// Parses `"p/q"` or `"p"`.
pub fn parse_q(s: &str) -> Option<Q> {
    let s = s.trim();
    match s.split_once('/') {
        Some((n, d)) => {
            let n: BigInt = n.trim().parse().ok()?;
            let d: BigInt = d.trim().parse().ok()?;
            if d.is_zero() {
                None
            } else {
                Some(Q::new(n, d))
            }
        }
        None => s.parse::<BigInt>().ok().map(Q::from_integer),
    }
}

pub fn format_q(x: &Q) -> String {
    if x.denom().is_one() {
        x.numer().to_string()
    } else {
        format!("{}/{}", x.numer(), x.denom())
    }
}

pub type SparseRow = Vec<(usize, Q)>;

/// Dot-product accumulator; integral terms are summed as integers to avoid
/// a gcd per operation.
#[derive(Clone, Default)]
struct Acc {
    used: bool,
    int: BigInt,
    rat: Option<Q>,
}

impl Acc {
    fn add(&mut self, a: &Q, b: &Q) {
        if a.is_integer() && b.is_integer() {
            self.int += a.numer() * b.numer();
        } else {
            *self.rat.get_or_insert_with(Q::zero) += a * b;
        }
    }

    fn finish(self) -> Q {
        let out = Q::from_integer(self.int);
        match self.rat {
            Some(r) => out + r,
            None => out,
        }
    }
}

#[derive(Clone, PartialEq, Eq)]
pub struct Matrix {
    nrows: usize,
    ncols: usize,
    rows: Vec<SparseRow>,
}

impl fmt::Debug for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "Matrix {}x{} [", self.nrows, self.ncols)?;
        for row in self.to_dense() {
            let cells: Vec<String> = row.iter().map(format_q).collect();
            writeln!(f, "  [{}]", cells.join(", "))?;
        }
        write!(f, "]")
    }
}

impl Matrix {
    pub fn zeros(nrows: usize, ncols: usize) -> Self {
        Matrix {
            nrows,
            ncols,
            rows: vec![Vec::new(); nrows],
        }
    }

    pub fn identity(n: usize) -> Self {
        let rows = (0..n).map(|i| vec![(i, Q::one())]).collect();
        Matrix {
            nrows: n,
            ncols: n,
            rows,
        }
    }

    pub fn from_dense(ncols: usize, rows: Vec<Vec<Q>>) -> Self {
        let nrows = rows.len();
        let rows = rows
            .into_iter()
            .map(|r| {
                assert_eq!(r.len(), ncols, "ragged dense matrix");
                r.into_iter()
                    .enumerate()
                    .filter(|(_, v)| !v.is_zero())
                    .collect()
            })
            .collect();
        Matrix { nrows, ncols, rows }
    }

    pub fn from_i64(rows: &[Vec<i64>]) -> Self {
        let ncols = rows.first().map_or(0, Vec::len);
        Self::from_dense(
            ncols,
            rows.iter()
                .map(|r| r.iter().map(|&x| q(x)).collect())
                .collect(),
        )
    }

    /// Builds a matrix from sparse rows; entries are sorted, merged and
    /// zeros dropped.
    pub fn from_sparse_rows(ncols: usize, rows: Vec<SparseRow>) -> Self {
        let nrows = rows.len();
        let rows = rows.into_iter().map(normalize_row).collect();
        Matrix { nrows, ncols, rows }
    }

    /// Matrix whose columns are the given vectors.
    pub fn from_columns(nrows: usize, cols: &[Vec<Q>]) -> Self {
        let mut rows: Vec<SparseRow> = vec![Vec::new(); nrows];
        for (j, c) in cols.iter().enumerate() {
            assert_eq!(c.len(), nrows);
            for (i, v) in c.iter().enumerate() {
                if !v.is_zero() {
                    rows[i].push((j, v.clone()));
                }
            }
        }
        Matrix {
            nrows,
            ncols: cols.len(),
            rows,
        }
    }

    pub fn nrows(&self) -> usize {
        self.nrows
    }

    pub fn ncols(&self) -> usize {
        self.ncols
    }

    pub fn row(&self, i: usize) -> &[(usize, Q)] {
        &self.rows[i]
    }

    pub fn nnz(&self) -> usize {
        self.rows.iter().map(Vec::len).sum()
    }

    pub fn get(&self, i: usize, j: usize) -> Q {
        match self.rows[i].binary_search_by_key(&j, |(c, _)| *c) {
            Ok(k) => self.rows[i][k].1.clone(),
            Err(_) => Q::zero(),
        }
    }

    pub fn to_dense(&self) -> Vec<Vec<Q>> {
        self.rows
            .iter()
            .map(|r| {
                let mut d = vec![Q::zero(); self.ncols];
                for (j, v) in r {
                    d[*j] = v.clone();
                }
                d
            })
            .collect()
    }

    pub fn column(&self, j: usize) -> Vec<Q> {
        (0..self.nrows).map(|i| self.get(i, j)).collect()
    }

    pub fn push_row(&mut self, row: SparseRow) {
        self.rows.push(normalize_row(row));
        self.nrows += 1;
    }

    pub fn transpose(&self) -> Matrix {
        let mut rows: Vec<SparseRow> = vec![Vec::new(); self.ncols];
        for (i, r) in self.rows.iter().enumerate() {
            for (j, v) in r {
                rows[*j].push((i, v.clone()));
            }
        }
        Matrix {
            nrows: self.ncols,
            ncols: self.nrows,
            rows,
        }
    }

    pub fn mul(&self, other: &Matrix) -> Matrix {
        assert_eq!(self.ncols, other.nrows, "dimension mismatch in product");
        let rows = self
            .rows
            .iter()
            .map(|r| {
                let mut acc = vec![Acc::default(); other.ncols];
                let mut touched = Vec::new();
                for (k, a) in r {
                    for (j, b) in &other.rows[*k] {
                        if !acc[*j].used {
                            acc[*j].used = true;
                            touched.push(*j);
                        }
                        acc[*j].add(a, b);
                    }
                }
                touched.sort_unstable();
                touched
                    .into_iter()
                    .map(|j| (j, std::mem::take(&mut acc[j]).finish()))
                    .filter(|(_, v)| !v.is_zero())
                    .collect()
            })
            .collect();
        Matrix {
            nrows: self.nrows,
            ncols: other.ncols,
            rows,
        }
    }

    pub fn mul_vec(&self, v: &[Q]) -> Vec<Q> {
        assert_eq!(self.ncols, v.len());
        self.rows
            .iter()
            .map(|r| {
                let mut acc = Acc::default();
                for (j, a) in r {
                    acc.add(a, &v[*j]);
                }
                acc.finish()
            })
            .collect()
    }

    fn combine(&self, other: &Matrix, sign: i64) -> Matrix {
        assert_eq!((self.nrows, self.ncols), (other.nrows, other.ncols));
        let s = q(sign);
        let rows = self
            .rows
            .iter()
            .zip(&other.rows)
            .map(|(a, b)| {
                let mut r: SparseRow = a.clone();
                r.extend(b.iter().map(|(j, v)| (*j, v * &s)));
                normalize_row(r)
            })
            .collect();
        Matrix {
            nrows: self.nrows,
            ncols: self.ncols,
            rows,
        }
    }

    pub fn add(&self, other: &Matrix) -> Matrix {
        self.combine(other, 1)
    }

    pub fn sub(&self, other: &Matrix) -> Matrix {
        self.combine(other, -1)
    }

    pub fn scale(&self, c: &Q) -> Matrix {
        if c.is_zero() {
            return Matrix::zeros(self.nrows, self.ncols);
        }
        let rows = self
            .rows
            .iter()
            .map(|r| r.iter().map(|(j, v)| (*j, v * c)).collect())
            .collect();
        Matrix {
            nrows: self.nrows,
            ncols: self.ncols,
            rows,
        }
    }

    pub fn is_zero(&self) -> bool {
        self.rows.iter().all(Vec::is_empty)
    }

    pub fn is_identity(&self) -> bool {
        self.nrows == self.ncols
            && self
                .rows
                .iter()
                .enumerate()
                .all(|(i, r)| r.len() == 1 && r[0].0 == i && r[0].1.is_one())
    }

    /// Stacks matrices with equal column counts on top of each other.
    pub fn vstack(parts: &[&Matrix]) -> Matrix {
        let ncols = parts.first().map_or(0, |m| m.ncols);
        let mut rows = Vec::new();
        for m in parts {
            assert_eq!(m.ncols, ncols);
            rows.extend(m.rows.iter().cloned());
        }
        Matrix {
            nrows: rows.len(),
            ncols,
            rows,
        }
    }

    pub fn is_integral(&self) -> bool {
        self.rows
            .iter()
            .all(|r| r.iter().all(|(_, v)| v.denom().is_one()))
    }

    pub fn determinant(&self) -> Q {
        assert_eq!(self.nrows, self.ncols);
        let rows = integer_rows(self);
        let scale: Q = self
            .rows
            .iter()
            .map(|r| Q::from_integer(row_lcm(r)))
            .product();
        let dense: Vec<Vec<BigInt>> = rows
            .iter()
            .map(|r| {
                let mut d = vec![BigInt::zero(); self.ncols];
                for (j, v) in r {
                    d[*j] = v.clone();
                }
                d
            })
            .collect();
        Q::from_integer(bareiss_determinant(dense)) / scale
    }
}

fn normalize_row(mut row: SparseRow) -> SparseRow {
    row.sort_by_key(|(j, _)| *j);
    let mut out: SparseRow = Vec::with_capacity(row.len());
    for (j, v) in row {
        match out.last_mut() {
            Some((lj, lv)) if *lj == j => *lv += v,
            _ => out.push((j, v)),
        }
    }
    out.retain(|(_, v)| !v.is_zero());
    out
}

fn row_lcm(row: &[(usize, Q)]) -> BigInt {
    row.iter()
        .fold(BigInt::one(), |acc, (_, v)| acc.lcm(v.denom()))
}

type IntRow = Vec<(usize, BigInt)>;

/// Scales every row by the lcm of its denominators. Row scaling preserves
/// rank, kernel and row space.
fn integer_rows(m: &Matrix) -> Vec<IntRow> {
    m.rows
        .iter()
        .map(|r| {
            let l = row_lcm(r);
            r.iter()
                .map(|(j, v)| (*j, (v * Q::from_integer(l.clone())).to_integer()))
                .collect()
        })
        .collect()
}

/// Fraction-free determinant of a dense integer matrix.
pub fn bareiss_determinant(mut a: Vec<Vec<BigInt>>) -> BigInt {
    let n = a.len();
    if n == 0 {
        return BigInt::one();
    }
    let mut sign = BigInt::one();
    let mut prev = BigInt::one();
    for k in 0..n {
        let pivot = (k..n)
            .filter(|&i| !a[i][k].is_zero())
            .min_by(|&x, &y| a[x][k].abs().cmp(&a[y][k].abs()));
        let Some(p) = pivot else {
            return BigInt::zero();
        };
        if p != k {
            a.swap(p, k);
            sign = -sign;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let v = (&a[k][k] * &a[i][j] - &a[i][k] * &a[k][j]) / &prev;
                a[i][j] = v;
            }
            a[i][k] = BigInt::zero();
        }
        prev = a[k][k].clone();
    }
    sign * &a[n - 1][n - 1]
}

/// Reduced row echelon form: `rows[i]` has a 1 in column `pivots[i]` and zeros
/// in every other pivot column.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Rref {
    pub ncols: usize,
    pub pivots: Vec<usize>,
    pub rows: Vec<Vec<Q>>,
}

impl Rref {
    pub fn rank(&self) -> usize {
        self.pivots.len()
    }

    pub fn free_columns(&self) -> Vec<usize> {
        let mut is_pivot = vec![false; self.ncols];
        for &p in &self.pivots {
            is_pivot[p] = true;
        }
        (0..self.ncols).filter(|&j| !is_pivot[j]).collect()
    }

    /// Kernel basis; vector `k` has a 1 at the `k`-th free column and zeros at
    /// the other free columns.
    pub fn kernel(&self) -> Vec<Vec<Q>> {
        self.free_columns()
            .into_iter()
            .map(|f| {
                let mut v = vec![Q::zero(); self.ncols];
                v[f] = Q::one();
                for (i, &p) in self.pivots.iter().enumerate() {
                    v[p] = -self.rows[i][f].clone();
                }
                v
            })
            .collect()
    }
}

/// Fraction-free Gauss-Jordan elimination over the integers with partial
/// pivoting on the smallest nonzero magnitude. Exact but slow; used as the
/// fallback and as an independent check of the modular engine.
pub fn rref_exact(m: &Matrix) -> Rref {
    let n = m.ncols;
    let mut a: Vec<Vec<BigInt>> = integer_rows(m)
        .into_iter()
        .map(|r| {
            let mut d = vec![BigInt::zero(); n];
            for (j, v) in r {
                d[j] = v;
            }
            d
        })
        .collect();
    let mut prev = BigInt::one();
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..n {
        if r == a.len() {
            break;
        }
        let pivot = (r..a.len())
            .filter(|&i| !a[i][c].is_zero())
            .min_by(|&x, &y| a[x][c].abs().cmp(&a[y][c].abs()));
        let Some(p) = pivot else { continue };
        a.swap(p, r);
        let prow = a[r].clone();
        let pv = prow[c].clone();
        for (i, row) in a.iter_mut().enumerate() {
            if i == r {
                continue;
            }
            let f = row[c].clone();
            for j in 0..n {
                let num = &pv * &row[j] - &f * &prow[j];
                let (quo, rem) = num.div_rem(&prev);
                debug_assert!(rem.is_zero(), "fraction-free division not exact");
                row[j] = quo;
            }
        }
        prev = pv;
        pivots.push(c);
        r += 1;
    }
    let rows = a
        .into_iter()
        .take(pivots.len())
        .zip(&pivots)
        .map(|(row, &p)| {
            let d = row[p].clone();
            row.into_iter().map(|v| Q::new(v, d.clone())).collect()
        })
        .collect();
    Rref {
        ncols: n,
        pivots,
        rows,
    }
}

const PRIMES: [u64; 10] = [
    2147483647, 2147483629, 2147483587, 2147483579, 2147483563, 2147483549, 2147483543,
    2147483497, 2147483489, 2147483477,
];

struct ModEchelon {
    pivots: Vec<usize>,
    rows: Vec<Vec<u64>>,
}

fn pow_mod<const P: u64>(mut b: u64, mut e: u64) -> u64 {
    let mut r = 1;
    b %= P;
    while e > 0 {
        if e & 1 == 1 {
            r = r * b % P;
        }
        b = b * b % P;
        e >>= 1;
    }
    r
}

fn to_mod(x: &BigInt, p: u64) -> u64 {
    x.mod_floor(&BigInt::from(p)).to_u64().expect("residue fits")
}

/// Incremental row echelon form modulo `P`. Stops once `stop_at` independent
/// rows have been found. With `reduced`, back-substitutes to the RREF.
fn echelon_mod<const P: u64>(
    rows: &[IntRow],
    ncols: usize,
    stop_at: usize,
    reduced: bool,
) -> ModEchelon {
    // basis kept sorted by pivot column
    let mut pivots: Vec<usize> = Vec::new();
    let mut basis: Vec<Vec<u64>> = Vec::new();
    for row in rows {
        if basis.len() >= stop_at {
            break;
        }
        let mut v = vec![0u64; ncols];
        let mut any = false;
        for (j, x) in row {
            let r = to_mod(x, P);
            if r != 0 {
                any = true;
            }
            v[*j] = r;
        }
        if !any {
            continue;
        }
        for (b, &p) in basis.iter().zip(&pivots) {
            let c = v[p];
            if c == 0 {
                continue;
            }
            let f = P - c;
            for j in p..ncols {
                if b[j] != 0 {
                    v[j] = (v[j] + f * b[j]) % P;
                }
            }
        }
        let Some(lead) = v.iter().position(|&x| x != 0) else {
            continue;
        };
        let inv = pow_mod::<P>(v[lead], P - 2);
        for x in v[lead..].iter_mut() {
            *x = *x * inv % P;
        }
        let pos = pivots.partition_point(|&p| p < lead);
        pivots.insert(pos, lead);
        basis.insert(pos, v);
    }
    if reduced {
        for k in (0..basis.len()).rev() {
            let p = pivots[k];
            let (upper, lower) = basis.split_at_mut(k);
            let piv_row = &lower[0];
            for row in upper.iter_mut() {
                let c = row[p];
                if c == 0 {
                    continue;
                }
                let f = P - c;
                for j in p..ncols {
                    if piv_row[j] != 0 {
                        row[j] = (row[j] + f * piv_row[j]) % P;
                    }
                }
            }
        }
    }
    ModEchelon {
        pivots,
        rows: basis,
    }
}

fn echelon_mod_idx(
    idx: usize,
    rows: &[IntRow],
    ncols: usize,
    stop_at: usize,
    reduced: bool,
) -> ModEchelon {
    match idx {
        0 => echelon_mod::<{ PRIMES[0] }>(rows, ncols, stop_at, reduced),
        1 => echelon_mod::<{ PRIMES[1] }>(rows, ncols, stop_at, reduced),
        2 => echelon_mod::<{ PRIMES[2] }>(rows, ncols, stop_at, reduced),
        3 => echelon_mod::<{ PRIMES[3] }>(rows, ncols, stop_at, reduced),
        4 => echelon_mod::<{ PRIMES[4] }>(rows, ncols, stop_at, reduced),
        5 => echelon_mod::<{ PRIMES[5] }>(rows, ncols, stop_at, reduced),
        6 => echelon_mod::<{ PRIMES[6] }>(rows, ncols, stop_at, reduced),
        7 => echelon_mod::<{ PRIMES[7] }>(rows, ncols, stop_at, reduced),
        8 => echelon_mod::<{ PRIMES[8] }>(rows, ncols, stop_at, reduced),
        9 => echelon_mod::<{ PRIMES[9] }>(rows, ncols, stop_at, reduced),
        _ => unreachable!("prime index out of range"),
    }
}

/// Rational number `r/s` congruent to `a` modulo `m` with `|r|, |s| <= sqrt(m/2)`.
pub fn rational_reconstruction(a: &BigInt, m: &BigInt) -> Option<Q> {
    let bound = (m / 2u32).sqrt();
    let (mut r0, mut r1) = (m.clone(), a.mod_floor(m));
    let (mut s0, mut s1) = (BigInt::zero(), BigInt::one());
    while r1 > bound {
        let qt = &r0 / &r1;
        let r2 = &r0 - &qt * &r1;
        let s2 = &s0 - &qt * &s1;
        r0 = std::mem::replace(&mut r1, r2);
        s0 = std::mem::replace(&mut s1, s2);
    }
    if s1.is_zero() || s1.abs() > bound || !r1.gcd(&s1).is_one() {
        return None;
    }
    Some(Q::new(r1, s1))
}

struct CrtState {
    pivots: Vec<usize>,
    free: Vec<usize>,
    residues: Vec<Vec<BigInt>>,
    modulus: BigInt,
}

impl CrtState {
    fn new(e: &ModEchelon, ncols: usize, p: u64) -> Self {
        let mut is_pivot = vec![false; ncols];
        for &c in &e.pivots {
            is_pivot[c] = true;
        }
        let free: Vec<usize> = (0..ncols).filter(|&j| !is_pivot[j]).collect();
        let residues = e
            .rows
            .iter()
            .map(|r| free.iter().map(|&f| BigInt::from(r[f])).collect())
            .collect();
        CrtState {
            pivots: e.pivots.clone(),
            free,
            residues,
            modulus: BigInt::from(p),
        }
    }

    fn absorb(&mut self, e: &ModEchelon, p: u64) {
        let pm = BigInt::from(p);
        let m_mod_p = to_mod(&self.modulus, p);
        let inv = BigInt::from(pow_mod_dyn(m_mod_p, p - 2, p));
        for (res_row, row) in self.residues.iter_mut().zip(&e.rows) {
            for (x, &f) in res_row.iter_mut().zip(&self.free) {
                let b = BigInt::from(row[f]);
                let diff = (&b - &*x).mod_floor(&pm);
                let t = (diff * &inv).mod_floor(&pm);
                *x += t * &self.modulus;
            }
        }
        self.modulus *= pm;
    }

    fn reconstruct(&self, ncols: usize) -> Option<Rref> {
        let mut rows = Vec::with_capacity(self.pivots.len());
        for (i, res_row) in self.residues.iter().enumerate() {
            let mut row = vec![Q::zero(); ncols];
            row[self.pivots[i]] = Q::one();
            for (x, &f) in res_row.iter().zip(&self.free) {
                row[f] = rational_reconstruction(x, &self.modulus)?;
            }
            rows.push(row);
        }
        Some(Rref {
            ncols,
            pivots: self.pivots.clone(),
            rows,
        })
    }
}

fn pow_mod_dyn(mut b: u64, mut e: u64, p: u64) -> u64 {
    let mut r = 1;
    b %= p;
    while e > 0 {
        if e & 1 == 1 {
            r = r * b % p;
        }
        b = b * b % p;
        e >>= 1;
    }
    r
}

/// Checks `A v = 0` exactly for every kernel vector implied by `cand`.
fn kernel_certified(rows: &[IntRow], cand: &Rref) -> bool {
    for v in cand.kernel() {
        let l = v
            .iter()
            .fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
        let iv: Vec<BigInt> = v
            .iter()
            .map(|x| (x * Q::from_integer(l.clone())).to_integer())
            .collect();
        for row in rows {
            let s: BigInt = row.iter().map(|(j, a)| a * &iv[*j]).sum();
            if !s.is_zero() {
                return false;
            }
        }
    }
    true
}

/// Exact reduced row echelon form.
pub fn rref(m: &Matrix) -> Rref {
    let ints = integer_rows(m);
    let n = m.ncols;
    let mut state: Option<CrtState> = None;
    for (k, &p) in PRIMES.iter().enumerate() {
        let e = echelon_mod_idx(k, &ints, n, usize::MAX, true);
        match &mut state {
            Some(s) if e.pivots.len() < s.pivots.len() => continue,
            Some(s) if e.pivots.len() == s.pivots.len() => {
                if e.pivots != s.pivots {
                    continue;
                }
                s.absorb(&e, p);
            }
            _ => state = Some(CrtState::new(&e, n, p)),
        }
        let s = state.as_ref().expect("state set above");
        if s.pivots.len() == n {
            // full column rank is certified by the modular rank alone
            return Rref {
                ncols: n,
                pivots: s.pivots.clone(),
                rows: (0..n)
                    .map(|i| (0..n).map(|j| if i == j { Q::one() } else { Q::zero() }).collect())
                    .collect(),
            };
        }
        if let Some(cand) = s.reconstruct(n) {
            if kernel_certified(&ints, &cand) {
                return cand;
            }
        }
    }
    rref_exact(m)
}

/// Exact rank.
pub fn rank(m: &Matrix) -> usize {
    let full = m.nrows.min(m.ncols);
    if full == 0 {
        return 0;
    }
    let ints = integer_rows(m);
    let e = echelon_mod_idx(0, &ints, m.ncols, full, false);
    if e.pivots.len() == full {
        return full;
    }
    if m.ncols > m.nrows {
        rref(&m.transpose()).rank()
    } else {
        rref(m).rank()
    }
}

/// Rank of a list of vectors of equal length.
pub fn rank_of_vectors(len: usize, vectors: &[&[Q]]) -> usize {
    let rows = vectors
        .iter()
        .map(|v| {
            assert_eq!(v.len(), len);
            v.iter()
                .enumerate()
                .filter(|(_, x)| !x.is_zero())
                .map(|(j, x)| (j, x.clone()))
                .collect()
        })
        .collect();
    rank(&Matrix::from_sparse_rows(len, rows))
}

pub fn nullspace(m: &Matrix) -> Vec<Vec<Q>> {
    rref(m).kernel()
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn naive_rref(m: &Matrix) -> Rref {
        let mut a = m.to_dense();
        let n = m.ncols();
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..n {
            let Some(p) = (r..a.len()).find(|&i| !a[i][c].is_zero()) else {
                continue;
            };
            a.swap(p, r);
            let inv = Q::one() / a[r][c].clone();
            for x in a[r].iter_mut() {
                *x = &*x * &inv;
            }
            let prow = a[r].clone();
            for (i, row) in a.iter_mut().enumerate() {
                if i != r && !row[c].is_zero() {
                    let f = row[c].clone();
                    for j in 0..n {
                        row[j] = &row[j] - &f * &prow[j];
                    }
                }
            }
            pivots.push(c);
            r += 1;
        }
        a.truncate(pivots.len());
        Rref {
            ncols: n,
            pivots,
            rows: a,
        }
    }

    fn small_matrix() -> impl Strategy<Value = Matrix> {
        (1usize..7, 1usize..7).prop_flat_map(|(r, c)| {
            proptest::collection::vec(
                proptest::collection::vec((-4i64..5, 1i64..4), c),
                r,
            )
            .prop_map(move |rows| {
                Matrix::from_dense(
                    c,
                    rows.into_iter()
                        .map(|row| {
                            row.into_iter()
                                .map(|(n, d)| Q::new(n.into(), d.into()))
                                .collect()
                        })
                        .collect(),
                )
            })
        })
    }

    proptest! {
        #[test]
        fn modular_rref_matches_naive(m in small_matrix()) {
            prop_assert_eq!(rref(&m), naive_rref(&m));
        }

        #[test]
        fn fraction_free_rref_matches_naive(m in small_matrix()) {
            prop_assert_eq!(rref_exact(&m), naive_rref(&m));
        }

        #[test]
        fn rank_is_transpose_invariant(m in small_matrix()) {
            prop_assert_eq!(rank(&m), rank(&m.transpose()));
            prop_assert_eq!(rank(&m), naive_rref(&m).rank());
        }
    }

    #[test]
    fn large_rational_entries_are_reconstructed() {
        let big = Q::new(BigInt::from(10).pow(30) + 7, BigInt::from(3).pow(25));
        let m = Matrix::from_dense(2, vec![vec![q(1), big.clone()], vec![q(2), &big * q(2)]]);
        let r = rref(&m);
        assert_eq!(r.pivots, vec![0]);
        assert_eq!(r.rows[0][1], big);
    }

    #[test]
    fn determinant_of_small_matrices() {
        assert_eq!(Matrix::from_i64(&[vec![2, -1], vec![-1, 2]]).determinant(), q(3));
        let affine = Matrix::from_i64(&[vec![2, -1, -1], vec![-1, 2, -1], vec![-1, -1, 2]]);
        assert_eq!(affine.determinant(), q(0));
        assert_eq!(Matrix::from_i64(&[vec![0, 1], vec![1, 0]]).determinant(), q(-1));
    }

    #[test]
    fn rational_reconstruction_roundtrip() {
        let m = BigInt::from(PRIMES[0]) * BigInt::from(PRIMES[1]);
        let x = Q::new(BigInt::from(-12345), BigInt::from(678));
        let inv = BigInt::from(678).modpow(&(BigInt::from(PRIMES[0]) - 2), &BigInt::from(PRIMES[0]));
        // residue modulo the first prime only
        let p0 = BigInt::from(PRIMES[0]);
        let a = (BigInt::from(-12345) * inv).mod_floor(&p0);
        assert_eq!(rational_reconstruction(&a, &p0), Some(x.clone()));
        let _ = m;
    }

    #[test]
    fn kernel_vectors_are_annihilated() {
        let m = Matrix::from_i64(&[vec![1, 2, 3, 4], vec![2, 4, 6, 8], vec![1, 0, 1, 0]]);
        let k = nullspace(&m);
        assert_eq!(k.len(), 2);
        for v in &k {
            assert!(m.mul_vec(v).iter().all(Zero::is_zero));
        }
    }

    #[test]
    fn parse_and_format() {
        assert_eq!(parse_q("-3/6"), Some(Q::new((-1).into(), 2.into())));
        assert_eq!(format_q(&q(5)), "5");
        assert_eq!(format_q(&Q::new(1.into(), (-2).into())), "-1/2");
        assert_eq!(parse_q("1/0"), None);
    }
}
