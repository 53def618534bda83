//! Linear and quadratic forms in the divisor coefficients `a_0, a_1, ...`.
//!
//! Forms print in the usual computer-algebra style, e.g. `-1/2*a2 - 1/2*a3`
//! or `1/2*a2^2 + a2*a3 + 1/2*a3^2`, with quadratic monomials in degree
//! reverse lexicographic order.

use std::fmt;

use num_traits::{One, Signed, Zero};
use serde::{Serialize, Serializer};

use crate::linalg::{QMat, QVec, Rat};

fn write_terms(f: &mut fmt::Formatter<'_>, terms: &[(Rat, String)]) -> fmt::Result {
    let mut first = true;
    for (c, m) in terms.iter().filter(|(c, _)| !c.is_zero()) {
        let neg = c.is_negative();
        let abs = c.abs();
        if first {
            if neg {
                write!(f, "-")?;
            }
        } else {
            write!(f, "{}", if neg { " - " } else { " + " })?;
        }
        if abs.is_one() {
            write!(f, "{m}")?;
        } else {
            write!(f, "{abs}*{m}")?;
        }
        first = false;
    }
    if first {
        write!(f, "0")?;
    }
    Ok(())
}

/// Rescales by a nonzero rational so the coefficients are coprime integers
/// and the first nonzero one is positive. Returns the factor used.
fn canonical_factor(coeffs: &[Rat]) -> Option<Rat> {
    let v = QVec(coeffs.to_vec());
    let lead = coeffs.iter().find(|c| !c.is_zero())?;
    let p = v.primitive();
    let plead = p.iter().find(|c| !c.is_zero())?;
    let mut factor = plead / lead;
    if !(lead * &factor).is_positive() {
        factor = -factor;
    }
    Some(factor)
}

/// `sum_i c_i a_i`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct LinearForm(pub QVec);

impl LinearForm {
    pub fn zero(n: usize) -> Self {
        LinearForm(QVec::zeros(n))
    }

    pub fn nvars(&self) -> usize {
        self.0.len()
    }

    pub fn eval(&self, a: &QVec) -> Rat {
        self.0.dot(a)
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    pub fn neg(&self) -> Self {
        LinearForm(self.0.neg())
    }

    /// Sets `a_i = 0` for every listed index.
    pub fn restrict(&self, zeroed: &[usize]) -> Self {
        let mut v = self.0.clone();
        for &i in zeroed {
            v[i] = Rat::zero();
        }
        LinearForm(v)
    }

    /// Integral primitive multiple with positive leading coefficient.
    pub fn canonical(&self) -> Self {
        match canonical_factor(&self.0) {
            Some(c) => LinearForm(self.0.scale(&c)),
            None => self.clone(),
        }
    }
}

impl fmt::Display for LinearForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let terms: Vec<(Rat, String)> = self
            .0
            .iter()
            .enumerate()
            .map(|(i, c)| (c.clone(), format!("a{i}")))
            .collect();
        write_terms(f, &terms)
    }
}

/// `a^T Q a` for a symmetric matrix `Q`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct QuadraticForm(pub QMat);

impl QuadraticForm {
    pub fn new(q: QMat) -> Self {
        debug_assert!(q.is_symmetric());
        QuadraticForm(q)
    }

    pub fn nvars(&self) -> usize {
        self.0.nrows()
    }

    pub fn eval(&self, a: &QVec) -> Rat {
        a.dot(&self.0.mul_vec(a))
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    pub fn sub(&self, other: &QuadraticForm) -> Self {
        QuadraticForm(self.0.sub(&other.0))
    }

    pub fn restrict(&self, zeroed: &[usize]) -> Self {
        let mut q = self.0.clone();
        let n = q.nrows();
        for &i in zeroed {
            for j in 0..n {
                q[(i, j)] = Rat::zero();
                q[(j, i)] = Rat::zero();
            }
        }
        QuadraticForm(q)
    }

    /// Monomials `a_i a_j` with `i <= j` in degree reverse lexicographic order.
    pub fn monomials(&self) -> Vec<(usize, usize)> {
        let n = self.nvars();
        let mut out = Vec::with_capacity(n * (n + 1) / 2);
        for j in 0..n {
            for i in 0..=j {
                out.push((i, j));
            }
        }
        out
    }

    /// Coefficient of the monomial `a_i a_j`.
    pub fn coefficient(&self, i: usize, j: usize) -> Rat {
        if i == j {
            self.0[(i, i)].clone()
        } else {
            &self.0[(i, j)] + &self.0[(j, i)]
        }
    }

    pub fn coefficients(&self) -> Vec<Rat> {
        self.monomials()
            .into_iter()
            .map(|(i, j)| self.coefficient(i, j))
            .collect()
    }

    pub fn canonical(&self) -> Self {
        match canonical_factor(&self.coefficients()) {
            Some(c) => QuadraticForm(self.0.scale(&c)),
            None => self.clone(),
        }
    }

    pub fn neg(&self) -> Self {
        QuadraticForm(self.0.scale(&-Rat::one()))
    }
}

impl fmt::Display for QuadraticForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let terms: Vec<(Rat, String)> = self
            .monomials()
            .into_iter()
            .map(|(i, j)| {
                let m = if i == j {
                    format!("a{i}^2")
                } else {
                    format!("a{i}*a{j}")
                };
                (self.coefficient(i, j), m)
            })
            .collect();
        write_terms(f, &terms)
    }
}

/// A vector whose entries are linear forms; row `i` of the matrix is entry `i`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct SymbolicVector(pub QMat);

impl SymbolicVector {
    pub fn len(&self) -> usize {
        self.0.nrows()
    }

    pub fn is_empty(&self) -> bool {
        self.0.nrows() == 0
    }

    pub fn slot(&self, i: usize) -> LinearForm {
        LinearForm(self.0.row(i))
    }

    pub fn eval(&self, a: &QVec) -> QVec {
        self.0.mul_vec(a)
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    /// The squared standard norm as a quadratic form in `a`.
    pub fn norm2(&self) -> QuadraticForm {
        QuadraticForm::new(self.0.transpose().mul(&self.0))
    }

    /// Sets `a_i = 0` for every listed index, in every entry.
    pub fn restrict(&self, zeroed: &[usize]) -> Self {
        let mut m = self.0.clone();
        for r in 0..m.nrows() {
            for &i in zeroed {
                m[(r, i)] = Rat::zero();
            }
        }
        SymbolicVector(m)
    }
}

impl fmt::Display for SymbolicVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for i in 0..self.len() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{}", self.slot(i))?;
        }
        write!(f, "]")
    }
}

/// A wall equation: linear for type one, quadratic for type two.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum WallPoly {
    Linear(LinearForm),
    Quadratic(QuadraticForm),
}

impl WallPoly {
    pub fn eval(&self, a: &QVec) -> Rat {
        match self {
            WallPoly::Linear(l) => l.eval(a),
            WallPoly::Quadratic(q) => q.eval(a),
        }
    }

    pub fn canonical(&self) -> Self {
        match self {
            WallPoly::Linear(l) => WallPoly::Linear(l.canonical()),
            WallPoly::Quadratic(q) => WallPoly::Quadratic(q.canonical()),
        }
    }

    pub fn is_zero(&self) -> bool {
        match self {
            WallPoly::Linear(l) => l.is_zero(),
            WallPoly::Quadratic(q) => q.is_zero(),
        }
    }

    pub fn degree(&self) -> usize {
        match self {
            WallPoly::Linear(_) => 1,
            WallPoly::Quadratic(_) => 2,
        }
    }

    /// True if `other = c * self` for some nonzero rational `c`.
    pub fn proportional(&self, other: &WallPoly) -> bool {
        self.canonical() == other.canonical()
    }
}

impl fmt::Display for WallPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            WallPoly::Linear(l) => l.fmt(f),
            WallPoly::Quadratic(q) => q.fmt(f),
        }
    }
}

macro_rules! serialize_as_display {
    ($($t:ty),*) => {$(
        impl Serialize for $t {
            fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
                s.collect_str(self)
            }
        }
    )*};
}

serialize_as_display!(LinearForm, QuadraticForm, WallPoly);

impl Serialize for SymbolicVector {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        use serde::ser::SerializeSeq;
        let mut seq = s.serialize_seq(Some(self.len()))?;
        for i in 0..self.len() {
            seq.serialize_element(&self.slot(i))?;
        }
        seq.end()
    }
}
