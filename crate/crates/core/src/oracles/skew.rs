//! Exact congruence normal form of rational skew-symmetric matrices.
//!
//! Every skew-symmetric `A` over ℚ is congruent to `S₂ ⊕ … ⊕ S₂ ⊕ 0` with
//! `S₂ = [[0, 1], [−1, 0]]`; in particular its rank is even. The reduction
//! below builds an invertible `T` with `T·A·Tᵀ` in that form using only
//! rational row/column operations, so the result is checked by exact
//! multiplication.

use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::error::{Error, Result};

/// Square matrix of exact rationals, row-major.
#[derive(Clone, PartialEq, Eq)]
pub struct RationalMatrix {
    order: usize,
    entries: Vec<BigRational>,
}

impl fmt::Debug for RationalMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "RationalMatrix({})", self.order)?;
        for i in 0..self.order {
            let row: Vec<String> = (0..self.order).map(|j| self[(i, j)].to_string()).collect();
            writeln!(f, "  [{}]", row.join(", "))?;
        }
        Ok(())
    }
}

impl std::ops::Index<(usize, usize)> for RationalMatrix {
    type Output = BigRational;

    fn index(&self, (i, j): (usize, usize)) -> &BigRational {
        &self.entries[i * self.order + j]
    }
}

impl std::ops::IndexMut<(usize, usize)> for RationalMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut BigRational {
        &mut self.entries[i * self.order + j]
    }
}

impl RationalMatrix {
    pub fn zeros(order: usize) -> Self {
        Self { order, entries: vec![BigRational::zero(); order * order] }
    }

    pub fn identity(order: usize) -> Self {
        let mut m = Self::zeros(order);
        for i in 0..order {
            m[(i, i)] = BigRational::one();
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<BigRational>>) -> Result<Self> {
        let order = rows.len();
        if rows.iter().any(|r| r.len() != order) {
            return Err(Error::Domain("matrix rows must all have length equal to the row count".into()));
        }
        Ok(Self { order, entries: rows.into_iter().flatten().collect() })
    }

    /// Integer entries given as `(numerator, denominator)` pairs.
    pub fn from_fractions(rows: &[Vec<(i64, i64)>]) -> Result<Self> {
        let rows = rows
            .iter()
            .map(|r| {
                r.iter()
                    .map(|&(p, q)| {
                        if q == 0 {
                            Err(Error::Domain("zero denominator".into()))
                        } else {
                            Ok(BigRational::new(BigInt::from(p), BigInt::from(q)))
                        }
                    })
                    .collect::<Result<Vec<_>>>()
            })
            .collect::<Result<Vec<_>>>()?;
        Self::from_rows(rows)
    }

    /// `(⊕_{blocks} S₂) ⊕ 0`.
    pub fn canonical_skew(order: usize, blocks: usize) -> Self {
        assert!(2 * blocks <= order);
        let mut m = Self::zeros(order);
        for b in 0..blocks {
            m[(2 * b, 2 * b + 1)] = BigRational::one();
            m[(2 * b + 1, 2 * b)] = -BigRational::one();
        }
        m
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.order);
        for i in 0..self.order {
            for j in 0..self.order {
                t[(j, i)] = self[(i, j)].clone();
            }
        }
        t
    }

    pub fn mul(&self, rhs: &Self) -> Self {
        assert_eq!(self.order, rhs.order);
        let n = self.order;
        let mut out = Self::zeros(n);
        for i in 0..n {
            for k in 0..n {
                let a = &self[(i, k)];
                if a.is_zero() {
                    continue;
                }
                for j in 0..n {
                    let prod = a * &rhs[(k, j)];
                    out[(i, j)] += prod;
                }
            }
        }
        out
    }

    /// `T·self·Tᵀ`.
    pub fn congruent_by(&self, t: &Self) -> Self {
        t.mul(self).mul(&t.transpose())
    }

    pub fn is_skew(&self) -> bool {
        (0..self.order)
            .all(|i| self[(i, i)].is_zero() && (i + 1..self.order).all(|j| self[(i, j)] == -self[(j, i)].clone()))
    }

    /// Exact determinant by fraction-field Gaussian elimination.
    pub fn determinant(&self) -> BigRational {
        let n = self.order;
        let mut m = self.clone();
        let mut det = BigRational::one();
        for col in 0..n {
            let Some(pivot) = (col..n).find(|&r| !m[(r, col)].is_zero()) else {
                return BigRational::zero();
            };
            if pivot != col {
                m.swap_rows(pivot, col);
                det = -det;
            }
            let p = m[(col, col)].clone();
            det *= &p;
            for r in col + 1..n {
                if m[(r, col)].is_zero() {
                    continue;
                }
                let f = &m[(r, col)] / &p;
                for c in col..n {
                    let delta = &f * &m[(col, c)];
                    m[(r, c)] -= delta;
                }
            }
        }
        det
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.order {
            self.entries.swap(a * self.order + j, b * self.order + j);
        }
    }

    fn swap_cols(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for i in 0..self.order {
            self.entries.swap(i * self.order + a, i * self.order + b);
        }
    }

    /// `row[dst] += f·row[src]`.
    fn add_row(&mut self, dst: usize, src: usize, f: &BigRational) {
        for j in 0..self.order {
            let delta = f * &self[(src, j)];
            self[(dst, j)] += delta;
        }
    }

    fn add_col(&mut self, dst: usize, src: usize, f: &BigRational) {
        for i in 0..self.order {
            let delta = f * &self[(i, src)];
            self[(i, dst)] += delta;
        }
    }

    fn scale_row(&mut self, r: usize, f: &BigRational) {
        for j in 0..self.order {
            self[(r, j)] *= f;
        }
    }

    fn scale_col(&mut self, c: usize, f: &BigRational) {
        for i in 0..self.order {
            self[(i, c)] *= f;
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SkewReduction {
    /// Invertible `T` with `T·A·Tᵀ = (⊕ S₂) ⊕ 0`.
    pub transform: RationalMatrix,
    pub rank: usize,
}

/// Tracks `M = T·A·Tᵀ` while applying elementary congruences `E`:
/// `T ← E·T`, `M ← E·M·Eᵀ`.
struct Congruence {
    t: RationalMatrix,
    m: RationalMatrix,
}

impl Congruence {
    fn swap(&mut self, a: usize, b: usize) {
        self.t.swap_rows(a, b);
        self.m.swap_rows(a, b);
        self.m.swap_cols(a, b);
    }

    fn add(&mut self, dst: usize, src: usize, f: &BigRational) {
        if f.is_zero() {
            return;
        }
        self.t.add_row(dst, src, f);
        self.m.add_row(dst, src, f);
        self.m.add_col(dst, src, f);
    }

    fn scale(&mut self, r: usize, f: &BigRational) {
        self.t.scale_row(r, f);
        self.m.scale_row(r, f);
        self.m.scale_col(r, f);
    }
}

/// Reduces a skew-symmetric matrix to `S₂ ⊕ … ⊕ S₂ ⊕ 0` by congruence.
///
/// For each block: take the first nonzero `M[i][j]`, `i < j`, in row-major
/// order over the unreduced corner, move it to `(r, r+1)`, scale row/column
/// `r+1` by `1/M[r][r+1]` (the congruence `diag(1, 1/b)` turning `b·S₂` into
/// `S₂`), then clear the rest of rows and columns `r, r+1` with
/// `x_k ← x_k − M[k][r+1]·x_r + M[k][r]·x_{r+1}`.
pub fn skew_congruence_reduce(a: &RationalMatrix) -> Result<SkewReduction> {
    if !a.is_skew() {
        return Err(Error::NotSkew("entry(i,j) must equal -entry(j,i) with zero diagonal".into()));
    }
    let n = a.order();
    let mut state = Congruence { t: RationalMatrix::identity(n), m: a.clone() };
    let mut r = 0;
    while r + 1 < n {
        let pivot = (r..n).flat_map(|i| (i + 1..n).map(move |j| (i, j))).find(|&(i, j)| !state.m[(i, j)].is_zero());
        let Some((i, j)) = pivot else { break };
        state.swap(r, i);
        // j > i ≥ r; the swap may have moved row r into slot i
        let j = if j == r { i } else { j };
        state.swap(r + 1, j);

        let b = state.m[(r, r + 1)].clone();
        debug_assert!(!b.is_zero());
        state.scale(r + 1, &b.recip());

        for k in r + 2..n {
            let along_f = -state.m[(k, r + 1)].clone();
            let along_e = state.m[(k, r)].clone();
            state.add(k, r, &along_f);
            state.add(k, r + 1, &along_e);
        }
        r += 2;
    }
    let rank = r;

    let expected = RationalMatrix::canonical_skew(n, rank / 2);
    if state.m != expected {
        return Err(Error::Internal("congruence reduction did not reach the canonical form".into()));
    }
    Ok(SkewReduction { transform: state.t, rank })
}

/// Rank by exact elimination; independent of the congruence reduction.
pub fn rank(a: &RationalMatrix) -> usize {
    let n = a.order();
    let mut m = a.clone();
    let mut rank = 0;
    for col in 0..n {
        let Some(pivot) = (rank..n).find(|&r| !m[(r, col)].is_zero()) else { continue };
        m.swap_rows(pivot, rank);
        let p = m[(rank, col)].clone();
        for r in 0..n {
            if r != rank && !m[(r, col)].is_zero() {
                let f = -(&m[(r, col)] / &p);
                m.add_row(r, rank, &f);
            }
        }
        rank += 1;
    }
    rank
}

pub fn is_invertible(t: &RationalMatrix) -> bool {
    !t.determinant().is_zero()
}
