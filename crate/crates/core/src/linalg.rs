//! Exact rational linear algebra.
//!
//! Everything here is exact: [`Rat`] is an arbitrary-precision rational that
//! is always kept reduced with a positive denominator, and no routine ever
//! rounds. Dense storage is fine at the sizes this crate works with (a few
//! dozen rays at most).

use std::fmt;
use std::ops::{Deref, DerefMut, Index, IndexMut};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// Exact rational scalar.
pub type Rat = BigRational;

/// Integer as a rational.
pub fn rat(n: i64) -> Rat {
    Rat::from_integer(BigInt::from(n))
}

/// `p / q` as a reduced rational. Panics on `q == 0`.
pub fn ratio(p: i64, q: i64) -> Rat {
    Rat::new(BigInt::from(p), BigInt::from(q))
}

/// Parses `"p"` or `"p/q"` (optionally signed, surrounding whitespace ignored).
pub fn parse_rat(s: &str) -> Result<Rat> {
    let s = s.trim();
    let bad = || Error::Parse(format!("not a rational number: {s:?}"));
    let (num, den) = match s.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (s, "1"),
    };
    let n: BigInt = num.parse().map_err(|_| bad())?;
    let d: BigInt = den.parse().map_err(|_| bad())?;
    if d.is_zero() {
        return Err(bad());
    }
    Ok(Rat::new(n, d))
}

/// Nearest `f64`; only used for rendering.
pub fn rat_to_f64(r: &Rat) -> f64 {
    r.to_f64().unwrap_or_else(|| {
        let n = r.numer().to_f64().unwrap_or(f64::NAN);
        let d = r.denom().to_f64().unwrap_or(f64::NAN);
        n / d
    })
}

/// Dense rational vector.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct QVec(pub Vec<Rat>);

impl Deref for QVec {
    type Target = [Rat];
    fn deref(&self) -> &[Rat] {
        &self.0
    }
}

impl DerefMut for QVec {
    fn deref_mut(&mut self) -> &mut [Rat] {
        &mut self.0
    }
}

impl FromIterator<Rat> for QVec {
    fn from_iter<I: IntoIterator<Item = Rat>>(iter: I) -> Self {
        QVec(iter.into_iter().collect())
    }
}

impl fmt::Display for QVec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, x) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{x}")?;
        }
        write!(f, ")")
    }
}

impl QVec {
    pub fn zeros(n: usize) -> Self {
        QVec(vec![Rat::zero(); n])
    }

    pub fn unit(n: usize, i: usize) -> Self {
        let mut v = Self::zeros(n);
        v.0[i] = Rat::one();
        v
    }

    pub fn from_ints(xs: &[i64]) -> Self {
        xs.iter().map(|&x| rat(x)).collect()
    }

    pub fn dot(&self, other: &QVec) -> Rat {
        debug_assert_eq!(self.len(), other.len());
        self.iter()
            .zip(other.iter())
            .fold(Rat::zero(), |acc, (a, b)| acc + a * b)
    }

    pub fn add(&self, other: &QVec) -> QVec {
        self.iter().zip(other.iter()).map(|(a, b)| a + b).collect()
    }

    pub fn sub(&self, other: &QVec) -> QVec {
        self.iter().zip(other.iter()).map(|(a, b)| a - b).collect()
    }

    pub fn scale(&self, c: &Rat) -> QVec {
        self.iter().map(|a| a * c).collect()
    }

    pub fn neg(&self) -> QVec {
        self.iter().map(|a| -a).collect()
    }

    pub fn norm2(&self) -> Rat {
        self.dot(self)
    }

    pub fn is_zero(&self) -> bool {
        self.iter().all(Zero::is_zero)
    }

    /// Least common multiple of the denominators (1 for the zero vector).
    pub fn denominator_lcm(&self) -> BigInt {
        self.iter().fold(BigInt::one(), |acc, x| acc.lcm(x.denom()))
    }

    /// The positive multiple with coprime integer entries. Zero stays zero.
    pub fn primitive(&self) -> QVec {
        if self.is_zero() {
            return self.clone();
        }
        let l = self.denominator_lcm();
        let ints: Vec<BigInt> = self.iter().map(|x| (x * &l).to_integer()).collect();
        let g = ints.iter().fold(BigInt::zero(), |acc, x| acc.gcd(x));
        ints.into_iter()
            .map(|x| Rat::from_integer(x / &g))
            .collect()
    }

    /// Entries as integers. Panics if an entry is not integral.
    pub fn to_ints(&self) -> Vec<BigInt> {
        self.iter()
            .map(|x| {
                assert!(x.is_integer(), "entry {x} is not integral");
                x.to_integer()
            })
            .collect()
    }

    pub fn to_f64(&self) -> Vec<f64> {
        self.iter().map(rat_to_f64).collect()
    }
}

/// Dense row-major rational matrix.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct QMat {
    rows: usize,
    cols: usize,
    data: Vec<Rat>,
}

impl Index<(usize, usize)> for QMat {
    type Output = Rat;
    fn index(&self, (r, c): (usize, usize)) -> &Rat {
        &self.data[r * self.cols + c]
    }
}

impl IndexMut<(usize, usize)> for QMat {
    fn index_mut(&mut self, (r, c): (usize, usize)) -> &mut Rat {
        &mut self.data[r * self.cols + c]
    }
}

impl QMat {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        QMat {
            rows,
            cols,
            data: vec![Rat::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = Rat::one();
        }
        m
    }

    /// Builds a matrix from rows of equal length `cols`.
    pub fn from_rows(cols: usize, rows: &[QVec]) -> Self {
        let mut m = Self::zeros(rows.len(), cols);
        for (i, r) in rows.iter().enumerate() {
            assert_eq!(r.len(), cols, "ragged rows");
            for (j, x) in r.iter().enumerate() {
                m[(i, j)] = x.clone();
            }
        }
        m
    }

    /// Builds a matrix whose columns are the given vectors of length `rows`.
    pub fn from_cols(rows: usize, cols: &[QVec]) -> Self {
        Self::from_rows(rows, cols).transpose()
    }

    pub fn from_ints(rows: &[Vec<i64>]) -> Self {
        let cols = rows.first().map_or(0, Vec::len);
        let rs: Vec<QVec> = rows.iter().map(|r| QVec::from_ints(r)).collect();
        Self::from_rows(cols, &rs)
    }

    pub fn nrows(&self) -> usize {
        self.rows
    }

    pub fn ncols(&self) -> usize {
        self.cols
    }

    pub fn row(&self, r: usize) -> QVec {
        QVec(self.data[r * self.cols..(r + 1) * self.cols].to_vec())
    }

    pub fn col(&self, c: usize) -> QVec {
        (0..self.rows).map(|r| self[(r, c)].clone()).collect()
    }

    pub fn transpose(&self) -> QMat {
        let mut t = Self::zeros(self.cols, self.rows);
        for r in 0..self.rows {
            for c in 0..self.cols {
                t[(c, r)] = self[(r, c)].clone();
            }
        }
        t
    }

    pub fn mul(&self, other: &QMat) -> QMat {
        assert_eq!(self.cols, other.rows, "shape mismatch in product");
        let mut m = Self::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = &self[(i, k)];
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = &other[(k, j)];
                    if !b.is_zero() {
                        m[(i, j)] += a * b;
                    }
                }
            }
        }
        m
    }

    pub fn mul_vec(&self, v: &QVec) -> QVec {
        assert_eq!(self.cols, v.len(), "shape mismatch in product");
        (0..self.rows).map(|r| self.row(r).dot(v)).collect()
    }

    pub fn scale(&self, c: &Rat) -> QMat {
        QMat {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|x| x * c).collect(),
        }
    }

    pub fn sub(&self, other: &QMat) -> QMat {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        QMat {
            rows: self.rows,
            cols: self.cols,
            data: self
                .data
                .iter()
                .zip(&other.data)
                .map(|(a, b)| a - b)
                .collect(),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Zero::is_zero)
    }

    pub fn is_symmetric(&self) -> bool {
        self.rows == self.cols
            && (0..self.rows).all(|i| (0..i).all(|j| self[(i, j)] == self[(j, i)]))
    }

    /// Appends the columns of `other` on the right.
    pub fn hstack(&self, other: &QMat) -> QMat {
        assert_eq!(self.rows, other.rows);
        let mut m = Self::zeros(self.rows, self.cols + other.cols);
        for r in 0..self.rows {
            for c in 0..self.cols {
                m[(r, c)] = self[(r, c)].clone();
            }
            for c in 0..other.cols {
                m[(r, self.cols + c)] = other[(r, c)].clone();
            }
        }
        m
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a != b {
            for c in 0..self.cols {
                self.data.swap(a * self.cols + c, b * self.cols + c);
            }
        }
    }
}

/// Reduced row echelon form with pivots chosen left to right, first nonzero row.
///
/// Returns the reduced matrix and its pivot columns.
pub fn rref(m: &QMat) -> (QMat, Vec<usize>) {
    let mut a = m.clone();
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..a.cols {
        if r == a.rows {
            break;
        }
        let Some(p) = (r..a.rows).find(|&i| !a[(i, c)].is_zero()) else {
            continue;
        };
        a.swap_rows(r, p);
        let inv = a[(r, c)].recip();
        for j in c..a.cols {
            let x = &a[(r, j)] * &inv;
            a[(r, j)] = x;
        }
        for i in 0..a.rows {
            if i == r || a[(i, c)].is_zero() {
                continue;
            }
            let f = a[(i, c)].clone();
            for j in c..a.cols {
                let x = &a[(r, j)] * &f;
                a[(i, j)] -= x;
            }
        }
        pivots.push(c);
        r += 1;
    }
    (a, pivots)
}

pub fn rank(m: &QMat) -> usize {
    rref(m).1.len()
}

/// Rank of a list of vectors of length `n`.
pub fn rank_of(n: usize, vs: &[QVec]) -> usize {
    if vs.is_empty() {
        return 0;
    }
    rank(&QMat::from_rows(n, vs))
}

/// A subspace of `Q^ambient` given by linearly independent, integral,
/// primitive spanning vectors.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct SubspaceBasis {
    ambient: usize,
    vectors: Vec<QVec>,
}

impl SubspaceBasis {
    /// Wraps vectors assumed independent; each is rescaled to be primitive.
    pub fn new(ambient: usize, vectors: Vec<QVec>) -> Self {
        debug_assert_eq!(rank_of(ambient, &vectors), vectors.len());
        SubspaceBasis {
            ambient,
            vectors: vectors.iter().map(QVec::primitive).collect(),
        }
    }

    /// Basis of the span of arbitrary vectors.
    pub fn span(ambient: usize, vectors: &[QVec]) -> Self {
        if vectors.is_empty() {
            return Self::zero(ambient);
        }
        let (r, piv) = rref(&QMat::from_rows(ambient, vectors));
        Self::new(ambient, (0..piv.len()).map(|i| r.row(i)).collect())
    }

    pub fn zero(ambient: usize) -> Self {
        SubspaceBasis {
            ambient,
            vectors: Vec::new(),
        }
    }

    pub fn ambient(&self) -> usize {
        self.ambient
    }

    pub fn dim(&self) -> usize {
        self.vectors.len()
    }

    pub fn vectors(&self) -> &[QVec] {
        &self.vectors
    }

    pub fn contains(&self, v: &QVec) -> bool {
        if v.is_zero() {
            return true;
        }
        let mut vs = self.vectors.clone();
        vs.push(v.clone());
        rank_of(self.ambient, &vs) == self.dim()
    }

    pub fn contains_subspace(&self, other: &SubspaceBasis) -> bool {
        other.vectors.iter().all(|v| self.contains(v))
    }

    /// Equality as subspaces, independent of the chosen bases.
    pub fn same_subspace(&self, other: &SubspaceBasis) -> bool {
        self.dim() == other.dim() && self.contains_subspace(other)
    }

    /// Gram matrix of the basis under the standard inner product.
    pub fn gram(&self) -> QMat {
        let k = self.dim();
        let mut g = QMat::zeros(k, k);
        for i in 0..k {
            for j in i..k {
                let x = self.vectors[i].dot(&self.vectors[j]);
                g[(j, i)] = x.clone();
                g[(i, j)] = x;
            }
        }
        g
    }

    /// Matrix of the orthogonal projection onto this subspace.
    pub fn projector(&self) -> QMat {
        let n = self.ambient;
        if self.dim() == 0 {
            return QMat::zeros(n, n);
        }
        let c = QMat::from_cols(n, &self.vectors);
        let ginv = inverse(&self.gram()).expect("basis vectors are independent");
        c.mul(&ginv).mul(&c.transpose())
    }
}

/// Basis of the right kernel `{x : m x = 0}`.
///
/// One vector per free column of the RREF, scaled to be integral and
/// primitive. Edge cases:
/// - zero matrix (or no rows): the standard basis;
/// - full column rank: the empty basis.
pub fn kernel_basis(m: &QMat) -> SubspaceBasis {
    let n = m.ncols();
    let (r, piv) = rref(m);
    let mut out = Vec::new();
    for free in (0..n).filter(|c| !piv.contains(c)) {
        let mut v = QVec::zeros(n);
        v[free] = Rat::one();
        for (i, &p) in piv.iter().enumerate() {
            v[p] = -r[(i, free)].clone();
        }
        out.push(v);
    }
    SubspaceBasis::new(n, out)
}

/// Solves `a x = b` for square nonsingular `a`.
pub fn solve_linear(a: &QMat, b: &QVec) -> Result<QVec> {
    if a.nrows() != a.ncols() {
        return Err(Error::DimensionMismatch {
            expected: a.nrows(),
            found: a.ncols(),
        });
    }
    if b.len() != a.nrows() {
        return Err(Error::DimensionMismatch {
            expected: a.nrows(),
            found: b.len(),
        });
    }
    let n = a.nrows();
    let aug = a.hstack(&QMat::from_cols(n, std::slice::from_ref(b)));
    let (r, piv) = rref(&aug);
    if piv.len() < n || piv[n - 1] != n - 1 {
        return Err(Error::SingularMatrix);
    }
    Ok(r.col(n))
}

/// Some solution of `a x = b`, or `None` when inconsistent.
///
/// Free variables are set to zero, so the answer is determined by the fixed
/// pivot order of [`rref`].
pub fn solve_particular(a: &QMat, b: &QVec) -> Option<QVec> {
    assert_eq!(a.nrows(), b.len());
    let n = a.ncols();
    let aug = a.hstack(&QMat::from_cols(a.nrows(), std::slice::from_ref(b)));
    let (r, piv) = rref(&aug);
    if piv.last() == Some(&n) {
        return None;
    }
    let mut x = QVec::zeros(n);
    for (i, &p) in piv.iter().enumerate() {
        x[p] = r[(i, n)].clone();
    }
    Some(x)
}

pub fn inverse(a: &QMat) -> Result<QMat> {
    let n = a.nrows();
    if n != a.ncols() {
        return Err(Error::SingularMatrix);
    }
    let (r, piv) = rref(&a.hstack(&QMat::identity(n)));
    if piv.len() < n || piv[n - 1] != n - 1 {
        return Err(Error::SingularMatrix);
    }
    let mut inv = QMat::zeros(n, n);
    for i in 0..n {
        for j in 0..n {
            inv[(i, j)] = r[(i, n + j)].clone();
        }
    }
    Ok(inv)
}

/// Orthogonal projection of `v` onto `w` under the standard inner product.
///
/// Solves the Gram system of the basis of `w`; the zero subspace maps
/// everything to zero.
pub fn project_onto(w: &SubspaceBasis, v: &QVec) -> QVec {
    assert_eq!(w.ambient(), v.len(), "ambient dimension mismatch");
    if w.dim() == 0 {
        return QVec::zeros(v.len());
    }
    let rhs: QVec = w.vectors().iter().map(|b| b.dot(v)).collect();
    let coef = solve_linear(&w.gram(), &rhs).expect("basis vectors are independent");
    let mut out = QVec::zeros(v.len());
    for (c, b) in coef.iter().zip(w.vectors()) {
        out = out.add(&b.scale(c));
    }
    out
}

/// An integer solution of `a x = b`, or `None` if there is none.
///
/// `a` and `b` must be integral. Unimodular column operations bring `a` to
/// lower echelon form `h = a u`; the triangular system `h y = b` is then
/// solved over the integers and `x = u y`.
pub fn integer_solution(a: &QMat, b: &QVec) -> Option<Vec<BigInt>> {
    let (m, n) = (a.nrows(), a.ncols());
    assert_eq!(b.len(), m);
    let mut h: Vec<Vec<BigInt>> = (0..m).map(|r| a.row(r).to_ints()).collect();
    let mut u: Vec<Vec<BigInt>> = (0..n)
        .map(|i| (0..n).map(|j| BigInt::from((i == j) as i64)).collect())
        .collect();
    let col_op =
        |h: &mut Vec<Vec<BigInt>>, u: &mut Vec<Vec<BigInt>>, dst: usize, src: usize, q: &BigInt| {
            for row in h.iter_mut() {
                let t = &row[src] * q;
                row[dst] -= t;
            }
            for row in u.iter_mut() {
                let t = &row[src] * q;
                row[dst] -= t;
            }
        };
    let col_swap = |h: &mut Vec<Vec<BigInt>>, u: &mut Vec<Vec<BigInt>>, i: usize, j: usize| {
        for row in h.iter_mut() {
            row.swap(i, j);
        }
        for row in u.iter_mut() {
            row.swap(i, j);
        }
    };
    // pivot_rows[k] is the row where column k has its pivot
    let mut pivot_rows = Vec::new();
    let mut p = 0;
    for r in 0..m {
        if p == n {
            break;
        }
        loop {
            let best = (p..n)
                .filter(|&j| !h[r][j].is_zero())
                .min_by(|&i, &j| h[r][i].abs().cmp(&h[r][j].abs()));
            let Some(best) = best else { break };
            col_swap(&mut h, &mut u, p, best);
            let mut done = true;
            for j in p + 1..n {
                if !h[r][j].is_zero() {
                    let q = h[r][j].div_floor(&h[r][p]);
                    col_op(&mut h, &mut u, j, p, &q);
                    done &= h[r][j].is_zero();
                }
            }
            if done {
                pivot_rows.push(r);
                p += 1;
                break;
            }
        }
    }
    let b = b.to_ints();
    let mut y: Vec<BigInt> = vec![BigInt::zero(); n];
    let mut k = 0;
    for r in 0..m {
        let acc: BigInt = (0..k).map(|j| &h[r][j] * &y[j]).sum();
        let rest = &b[r] - acc;
        if k < pivot_rows.len() && pivot_rows[k] == r {
            let (q, rem) = rest.div_rem(&h[r][k]);
            if !rem.is_zero() {
                return None;
            }
            y[k] = q;
            k += 1;
        } else if !rest.is_zero() {
            return None;
        }
    }
    Some(
        (0..n)
            .map(|i| (0..n).map(|j| &u[i][j] * &y[j]).sum())
            .collect(),
    )
}
