//! Exact rational scalars, extended rationals with signed infinities, and
//! dense matrices/vectors over them. Everything downstream computes in these
//! types; no floating point enters any solver path.

use std::cmp::Ordering;
use std::fmt;
use std::iter::Sum;
use std::ops::{Add, Div, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

/// An exact rational number, always stored in lowest terms with a positive
/// denominator.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct Rat(BigRational);

impl Rat {
    pub fn zero() -> Self {
        Rat(BigRational::zero())
    }

    pub fn one() -> Self {
        Rat(BigRational::one())
    }

    /// `p/q` from machine integers. Panics if `q == 0`.
    pub fn new(p: i64, q: i64) -> Self {
        assert!(q != 0, "rational with zero denominator");
        Rat(BigRational::new(BigInt::from(p), BigInt::from(q)))
    }

    pub fn from_int(p: i64) -> Self {
        Rat(BigRational::from_integer(BigInt::from(p)))
    }

    pub fn from_big(p: BigInt, q: BigInt) -> Self {
        assert!(!q.is_zero(), "rational with zero denominator");
        Rat(BigRational::new(p, q))
    }

    pub fn numer(&self) -> &BigInt {
        self.0.numer()
    }

    pub fn denom(&self) -> &BigInt {
        self.0.denom()
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    pub fn is_positive(&self) -> bool {
        self.0.is_positive()
    }

    pub fn is_negative(&self) -> bool {
        self.0.is_negative()
    }

    pub fn abs(&self) -> Rat {
        Rat(self.0.abs())
    }

    /// Multiplicative inverse. Panics on zero; solver paths check first.
    pub fn recip(&self) -> Rat {
        assert!(!self.is_zero(), "reciprocal of zero");
        Rat(self.0.recip())
    }

    pub fn sign(&self) -> Ordering {
        self.0.cmp(&BigRational::zero())
    }
}

macro_rules! forward_binop {
    ($trait:ident, $method:ident) => {
        impl $trait for Rat {
            type Output = Rat;
            fn $method(self, rhs: Rat) -> Rat {
                Rat((self.0).$method(rhs.0))
            }
        }
        impl<'a> $trait<&'a Rat> for Rat {
            type Output = Rat;
            fn $method(self, rhs: &'a Rat) -> Rat {
                Rat((self.0).$method(&rhs.0))
            }
        }
        impl<'a> $trait<Rat> for &'a Rat {
            type Output = Rat;
            fn $method(self, rhs: Rat) -> Rat {
                Rat((&self.0).$method(rhs.0))
            }
        }
        impl<'a, 'b> $trait<&'b Rat> for &'a Rat {
            type Output = Rat;
            fn $method(self, rhs: &'b Rat) -> Rat {
                Rat((&self.0).$method(&rhs.0))
            }
        }
    };
}

forward_binop!(Add, add);
forward_binop!(Sub, sub);
forward_binop!(Mul, mul);

impl Div for Rat {
    type Output = Rat;
    fn div(self, rhs: Rat) -> Rat {
        assert!(!rhs.is_zero(), "division by zero");
        Rat(self.0 / rhs.0)
    }
}

impl<'b> Div<&'b Rat> for &Rat {
    type Output = Rat;
    fn div(self, rhs: &'b Rat) -> Rat {
        assert!(!rhs.is_zero(), "division by zero");
        Rat(&self.0 / &rhs.0)
    }
}

impl Neg for Rat {
    type Output = Rat;
    fn neg(self) -> Rat {
        Rat(-self.0)
    }
}

impl Neg for &Rat {
    type Output = Rat;
    fn neg(self) -> Rat {
        Rat(-&self.0)
    }
}

impl Sum for Rat {
    fn sum<I: Iterator<Item = Rat>>(iter: I) -> Rat {
        iter.fold(Rat::zero(), |acc, x| acc + x)
    }
}

impl fmt::Display for Rat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

impl fmt::Debug for Rat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ParseRatError(pub String);

impl fmt::Display for ParseRatError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "invalid rational literal: {}", self.0)
    }
}

impl std::error::Error for ParseRatError {}

impl FromStr for Rat {
    type Err = ParseRatError;

    /// Accepts `p` or `p/q` with an optional leading minus; `q` must be a
    /// positive integer literal.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let s = s.trim();
        let bad = || ParseRatError(s.to_string());
        let (p_str, q_str) = match s.split_once('/') {
            Some((p, q)) => (p, Some(q)),
            None => (s, None),
        };
        let p = BigInt::from_str(p_str.trim()).map_err(|_| bad())?;
        let q = match q_str {
            Some(q) => {
                let q = BigInt::from_str(q.trim()).map_err(|_| bad())?;
                if !q.is_positive() {
                    return Err(bad());
                }
                q
            }
            None => BigInt::one(),
        };
        Ok(Rat(BigRational::new(p, q)))
    }
}

impl serde::Serialize for Rat {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.serialize_str(&self.to_string())
    }
}

impl<'de> serde::Deserialize<'de> for Rat {
    fn deserialize<D: serde::Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        struct RatVisitor;
        impl serde::de::Visitor<'_> for RatVisitor {
            type Value = Rat;
            fn expecting(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
                f.write_str("a rational as \"p/q\" string or an integer")
            }
            fn visit_str<E: serde::de::Error>(self, v: &str) -> Result<Rat, E> {
                v.parse().map_err(E::custom)
            }
            fn visit_i64<E: serde::de::Error>(self, v: i64) -> Result<Rat, E> {
                Ok(Rat::from_int(v))
            }
            fn visit_u64<E: serde::de::Error>(self, v: u64) -> Result<Rat, E> {
                Ok(Rat(BigRational::from_integer(BigInt::from(v))))
            }
        }
        deserializer.deserialize_any(RatVisitor)
    }
}

/// Shorthand for rational literals in tests and examples: `rat!(3)`, `rat!(13, 2)`.
#[macro_export]
macro_rules! rat {
    ($p:expr) => {
        $crate::rat::Rat::from_int($p)
    };
    ($p:expr, $q:expr) => {
        $crate::rat::Rat::new($p, $q)
    };
}

/// A rational extended with the two signed infinities. The forbidden forms
/// `∞ − ∞` and `0 · ∞` are errors, never conventions.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Debug)]
pub enum ExtRat {
    NegInf,
    Finite(Rat),
    PosInf,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ArithError {
    /// Adding infinities of opposite signs.
    InfMinusInf,
    /// Multiplying zero by an infinity.
    ZeroTimesInf,
}

impl fmt::Display for ArithError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ArithError::InfMinusInf => f.write_str("undefined form: inf - inf"),
            ArithError::ZeroTimesInf => f.write_str("undefined form: 0 * inf"),
        }
    }
}

impl std::error::Error for ArithError {}

impl ExtRat {
    pub fn zero() -> Self {
        ExtRat::Finite(Rat::zero())
    }

    pub fn is_finite(&self) -> bool {
        matches!(self, ExtRat::Finite(_))
    }

    pub fn as_finite(&self) -> Option<&Rat> {
        match self {
            ExtRat::Finite(r) => Some(r),
            _ => None,
        }
    }

    pub fn neg(&self) -> ExtRat {
        match self {
            ExtRat::NegInf => ExtRat::PosInf,
            ExtRat::PosInf => ExtRat::NegInf,
            ExtRat::Finite(r) => ExtRat::Finite(-r),
        }
    }

    pub fn checked_add(&self, other: &ExtRat) -> Result<ExtRat, ArithError> {
        use ExtRat::*;
        match (self, other) {
            (PosInf, NegInf) | (NegInf, PosInf) => Err(ArithError::InfMinusInf),
            (PosInf, _) | (_, PosInf) => Ok(PosInf),
            (NegInf, _) | (_, NegInf) => Ok(NegInf),
            (Finite(a), Finite(b)) => Ok(Finite(a + b)),
        }
    }

    /// Scale by a finite rational.
    pub fn checked_scale(&self, alpha: &Rat) -> Result<ExtRat, ArithError> {
        use ExtRat::*;
        match self {
            Finite(r) => Ok(Finite(alpha * r)),
            inf => {
                if alpha.is_zero() {
                    Err(ArithError::ZeroTimesInf)
                } else if alpha.is_positive() {
                    Ok(inf.clone())
                } else {
                    Ok(inf.neg())
                }
            }
        }
    }
}

impl From<Rat> for ExtRat {
    fn from(r: Rat) -> Self {
        ExtRat::Finite(r)
    }
}

impl fmt::Display for ExtRat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ExtRat::NegInf => f.write_str("-inf"),
            ExtRat::PosInf => f.write_str("inf"),
            ExtRat::Finite(r) => write!(f, "{r}"),
        }
    }
}

/// Total order with `-inf < finite < +inf`.
pub fn ext_compare(a: &ExtRat, b: &ExtRat) -> Ordering {
    a.cmp(b)
}

/// Sum of absolute values. All entries must be finite by construction.
pub fn l1_norm(v: &[Rat]) -> Rat {
    v.iter().map(Rat::abs).sum()
}

pub fn dot(a: &[Rat], b: &[Rat]) -> Rat {
    assert_eq!(a.len(), b.len(), "dot of mismatched lengths");
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum MatrixError {
    DimMismatch {
        left: (usize, usize),
        right: (usize, usize),
    },
}

impl fmt::Display for MatrixError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            MatrixError::DimMismatch { left, right } => write!(
                f,
                "dimension mismatch: {}x{} vs {}x{}",
                left.0, left.1, right.0, right.1
            ),
        }
    }
}

impl std::error::Error for MatrixError {}

/// Dense matrix of rationals with optional row/column labels.
#[derive(Clone, PartialEq, Eq)]
pub struct RatMatrix {
    rows: usize,
    cols: usize,
    data: Vec<Rat>,
    row_labels: Option<Vec<String>>,
    col_labels: Option<Vec<String>>,
}

impl RatMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        RatMatrix {
            rows,
            cols,
            data: vec![Rat::zero(); rows * cols],
            row_labels: None,
            col_labels: None,
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = RatMatrix::zeros(n, n);
        for i in 0..n {
            m.set(i, i, Rat::one());
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<Rat>>) -> Self {
        let nrows = rows.len();
        let ncols = rows.first().map_or(0, Vec::len);
        assert!(
            rows.iter().all(|r| r.len() == ncols),
            "ragged rows in matrix literal"
        );
        RatMatrix {
            rows: nrows,
            cols: ncols,
            data: rows.into_iter().flatten().collect(),
            row_labels: None,
            col_labels: None,
        }
    }

    pub fn from_ints(rows: &[&[i64]]) -> Self {
        RatMatrix::from_rows(
            rows.iter()
                .map(|r| r.iter().map(|&x| Rat::from_int(x)).collect())
                .collect(),
        )
    }

    pub fn with_labels(mut self, rows: Vec<String>, cols: Vec<String>) -> Self {
        assert_eq!(rows.len(), self.rows);
        assert_eq!(cols.len(), self.cols);
        self.row_labels = Some(rows);
        self.col_labels = Some(cols);
        self
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> &Rat {
        assert!(r < self.rows && c < self.cols, "index out of range");
        &self.data[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: Rat) {
        assert!(r < self.rows && c < self.cols, "index out of range");
        self.data[r * self.cols + c] = v;
    }

    pub fn row(&self, r: usize) -> &[Rat] {
        assert!(r < self.rows);
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn row_labels(&self) -> Option<&[String]> {
        self.row_labels.as_deref()
    }

    pub fn col_labels(&self) -> Option<&[String]> {
        self.col_labels.as_deref()
    }

    pub fn to_rows(&self) -> Vec<Vec<Rat>> {
        (0..self.rows).map(|r| self.row(r).to_vec()).collect()
    }

    /// Exact matrix product. Result carries the row labels of `self` and the
    /// column labels of `rhs`.
    pub fn mul(&self, rhs: &RatMatrix) -> Result<RatMatrix, MatrixError> {
        if self.cols != rhs.rows {
            return Err(MatrixError::DimMismatch {
                left: (self.rows, self.cols),
                right: (rhs.rows, rhs.cols),
            });
        }
        let mut out = RatMatrix::zeros(self.rows, rhs.cols);
        for i in 0..self.rows {
            for j in 0..rhs.cols {
                let mut acc = Rat::zero();
                for k in 0..self.cols {
                    let a = self.get(i, k);
                    if a.is_zero() {
                        continue;
                    }
                    acc = acc + a * rhs.get(k, j);
                }
                out.set(i, j, acc);
            }
        }
        out.row_labels = self.row_labels.clone();
        out.col_labels = rhs.col_labels.clone();
        Ok(out)
    }

    pub fn add(&self, rhs: &RatMatrix) -> Result<RatMatrix, MatrixError> {
        if self.rows != rhs.rows || self.cols != rhs.cols {
            return Err(MatrixError::DimMismatch {
                left: (self.rows, self.cols),
                right: (rhs.rows, rhs.cols),
            });
        }
        let mut out = self.clone();
        for i in 0..self.rows {
            for j in 0..self.cols {
                let v = self.get(i, j) + rhs.get(i, j);
                out.set(i, j, v);
            }
        }
        Ok(out)
    }

    pub fn transpose(&self) -> RatMatrix {
        let mut out = RatMatrix::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                out.set(j, i, self.get(i, j).clone());
            }
        }
        out
    }

    pub fn neg(&self) -> RatMatrix {
        let mut out = self.clone();
        for v in &mut out.data {
            *v = -&*v;
        }
        out
    }
}

impl fmt::Debug for RatMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "RatMatrix {}x{}", self.rows, self.cols)?;
        for r in 0..self.rows {
            let row: Vec<String> = self.row(r).iter().map(|x| x.to_string()).collect();
            writeln!(f, "  [{}]", row.join(", "))?;
        }
        Ok(())
    }
}
