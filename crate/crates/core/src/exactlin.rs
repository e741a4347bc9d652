//! Exact integer and rational linear algebra.
//!
//! Everything here works over `BigInt` / `BigRational`. Subspaces are kept in
//! reduced row echelon form so that equal subspaces compare (and hash) equal.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

pub type Rational = BigRational;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LinAlgError {
    #[error("dimension mismatch: expected {expected}, got {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("vector is zero")]
    ZeroVector,
    #[error("vector is not primitive (gcd {gcd})")]
    NotPrimitive { gcd: BigInt },
    #[error("matrix is singular")]
    Singular,
}

pub fn rat(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

pub fn frac(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

pub fn int_to_rat(n: &BigInt) -> Rational {
    Rational::from_integer(n.clone())
}

/// A vector of exact rationals.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct RationalVector(pub Vec<Rational>);

impl RationalVector {
    pub fn zeros(n: usize) -> Self {
        RationalVector(vec![Rational::zero(); n])
    }

    pub fn from_ints(xs: &[i64]) -> Self {
        RationalVector(xs.iter().map(|&x| rat(x)).collect())
    }

    pub fn from_bigints(xs: &[BigInt]) -> Self {
        RationalVector(xs.iter().map(int_to_rat).collect())
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(Zero::is_zero)
    }

    pub fn dot(&self, other: &RationalVector) -> Rational {
        dot(&self.0, &other.0)
    }

    pub fn dot_int(&self, other: &[BigInt]) -> Rational {
        let mut acc = Rational::zero();
        for (a, b) in self.0.iter().zip(other) {
            if !b.is_zero() {
                acc += a * int_to_rat(b);
            }
        }
        acc
    }

    pub fn sub(&self, other: &RationalVector) -> RationalVector {
        RationalVector(self.0.iter().zip(&other.0).map(|(a, b)| a - b).collect())
    }

    pub fn add(&self, other: &RationalVector) -> RationalVector {
        RationalVector(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    pub fn scale(&self, c: &Rational) -> RationalVector {
        RationalVector(self.0.iter().map(|a| a * c).collect())
    }

    /// Entries as integers, if all denominators are 1.
    pub fn to_integers(&self) -> Option<Vec<BigInt>> {
        self.0
            .iter()
            .map(|x| x.is_integer().then(|| x.to_integer()))
            .collect()
    }

    /// Least common multiple of the denominators.
    pub fn denominator_lcm(&self) -> BigInt {
        self.0
            .iter()
            .fold(BigInt::one(), |acc, x| acc.lcm(x.denom()))
    }

    /// The primitive integer vector on the same ray (positive multiple).
    pub fn primitive_integer(&self) -> Result<Vec<BigInt>, LinAlgError> {
        if self.is_zero() {
            return Err(LinAlgError::ZeroVector);
        }
        let l = self.denominator_lcm();
        let scaled: Vec<BigInt> = self
            .0
            .iter()
            .map(|x| (x * int_to_rat(&l)).to_integer())
            .collect();
        let g = gcd_all(&scaled);
        Ok(scaled.into_iter().map(|x| x / &g).collect())
    }
}

impl fmt::Display for RationalVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, x) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{x}")?;
        }
        write!(f, ")")
    }
}

pub fn dot(a: &[Rational], b: &[Rational]) -> Rational {
    let mut acc = Rational::zero();
    for (x, y) in a.iter().zip(b) {
        if !x.is_zero() && !y.is_zero() {
            acc += x * y;
        }
    }
    acc
}

pub fn gcd_all(xs: &[BigInt]) -> BigInt {
    xs.iter().fold(BigInt::zero(), |acc, x| acc.gcd(x))
}

/// Rectangular matrix of arbitrary-precision integers, stored row-major.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct IntegerMatrix {
    ncols: usize,
    rows: Vec<Vec<BigInt>>,
}

impl IntegerMatrix {
    pub fn new(ncols: usize, rows: Vec<Vec<BigInt>>) -> Result<Self, LinAlgError> {
        for r in &rows {
            if r.len() != ncols {
                return Err(LinAlgError::DimensionMismatch {
                    expected: ncols,
                    found: r.len(),
                });
            }
        }
        Ok(IntegerMatrix { ncols, rows })
    }

    pub fn from_i64(ncols: usize, rows: &[Vec<i64>]) -> Result<Self, LinAlgError> {
        Self::new(
            ncols,
            rows.iter()
                .map(|r| r.iter().map(|&x| BigInt::from(x)).collect())
                .collect(),
        )
    }

    pub fn nrows(&self) -> usize {
        self.rows.len()
    }

    pub fn ncols(&self) -> usize {
        self.ncols
    }

    pub fn rows(&self) -> &[Vec<BigInt>] {
        &self.rows
    }

    pub fn row(&self, i: usize) -> &[BigInt] {
        &self.rows[i]
    }

    /// Row-style Hermite normal form: upper echelon, positive pivots, entries
    /// above each pivot reduced into `[0, pivot)`. Zero rows are dropped, so
    /// two matrices generate the same lattice iff their HNFs are equal.
    pub fn hermite_normal_form(&self) -> IntegerMatrix {
        let mut a = self.rows.clone();
        let mut pivot_row = 0;
        for col in 0..self.ncols {
            if pivot_row == a.len() {
                break;
            }
            // Euclid on the column below pivot_row.
            loop {
                let mut best: Option<usize> = None;
                for (i, row) in a.iter().enumerate().skip(pivot_row) {
                    if !row[col].is_zero()
                        && best.is_none_or(|b| row[col].abs() < a[b][col].abs())
                    {
                        best = Some(i);
                    }
                }
                let Some(b) = best else { break };
                a.swap(pivot_row, b);
                let mut done = true;
                for i in pivot_row + 1..a.len() {
                    if a[i][col].is_zero() {
                        continue;
                    }
                    let q = a[i][col].div_floor(&a[pivot_row][col]);
                    let pr = a[pivot_row].clone();
                    for (x, p) in a[i].iter_mut().zip(&pr) {
                        *x -= &q * p;
                    }
                    if !a[i][col].is_zero() {
                        done = false;
                    }
                }
                if done {
                    break;
                }
            }
            if a[pivot_row][col].is_zero() {
                continue;
            }
            if a[pivot_row][col].is_negative() {
                for x in a[pivot_row].iter_mut() {
                    *x = -x.clone();
                }
            }
            let pr = a[pivot_row].clone();
            for row in a.iter_mut().take(pivot_row) {
                let q = row[col].div_floor(&pr[col]);
                if !q.is_zero() {
                    for (x, p) in row.iter_mut().zip(&pr) {
                        *x -= &q * p;
                    }
                }
            }
            pivot_row += 1;
        }
        a.truncate(pivot_row);
        IntegerMatrix {
            ncols: self.ncols,
            rows: a,
        }
    }

    /// Determinant of a square matrix (fraction-free Bareiss elimination).
    pub fn determinant(&self) -> Result<BigInt, LinAlgError> {
        if self.nrows() != self.ncols {
            return Err(LinAlgError::DimensionMismatch {
                expected: self.ncols,
                found: self.nrows(),
            });
        }
        Ok(bareiss_determinant(self.rows.clone()))
    }
}

pub fn bareiss_determinant(mut a: Vec<Vec<BigInt>>) -> BigInt {
    let n = a.len();
    if n == 0 {
        return BigInt::one();
    }
    let mut sign = BigInt::one();
    let mut prev = BigInt::one();
    for k in 0..n - 1 {
        if a[k][k].is_zero() {
            let Some(swap) = (k + 1..n).find(|&i| !a[i][k].is_zero()) else {
                return BigInt::zero();
            };
            a.swap(k, swap);
            sign = -sign;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let v = (&a[i][j] * &a[k][k] - &a[i][k] * &a[k][j]) / &prev;
                a[i][j] = v;
            }
        }
        prev = a[k][k].clone();
    }
    sign * a[n - 1][n - 1].clone()
}

/// Reduced row echelon form in place; returns pivot columns.
pub fn rref(rows: &mut Vec<Vec<Rational>>, ncols: usize) -> Vec<usize> {
    let mut pivots = Vec::new();
    let mut r = 0;
    for col in 0..ncols {
        if r == rows.len() {
            break;
        }
        let Some(p) = (r..rows.len()).find(|&i| !rows[i][col].is_zero()) else {
            continue;
        };
        rows.swap(r, p);
        let inv = rows[r][col].recip();
        for x in rows[r].iter_mut() {
            if !x.is_zero() {
                *x *= &inv;
            }
        }
        let pr = rows[r].clone();
        for (i, row) in rows.iter_mut().enumerate() {
            if i == r || row[col].is_zero() {
                continue;
            }
            let f = row[col].clone();
            for (x, p) in row.iter_mut().zip(&pr) {
                if !p.is_zero() {
                    *x -= &f * p;
                }
            }
        }
        pivots.push(col);
        r += 1;
    }
    rows.truncate(r);
    pivots
}

/// Basis of `{x : row . x = 0 for all rows}`.
pub fn nullspace(rows: &[Vec<Rational>], ncols: usize) -> Vec<RationalVector> {
    let mut m = rows.to_vec();
    let pivots = rref(&mut m, ncols);
    let free: Vec<usize> = (0..ncols).filter(|c| !pivots.contains(c)).collect();
    free.iter()
        .map(|&f| {
            let mut v = vec![Rational::zero(); ncols];
            v[f] = Rational::one();
            for (row, &p) in m.iter().zip(&pivots) {
                v[p] = -row[f].clone();
            }
            RationalVector(v)
        })
        .collect()
}

/// Solve the square system `a x = b`.
pub fn solve(a: &[Vec<Rational>], b: &[Rational]) -> Result<Vec<Rational>, LinAlgError> {
    let n = a.len();
    let mut m: Vec<Vec<Rational>> = a
        .iter()
        .zip(b)
        .map(|(row, bi)| {
            let mut r = row.clone();
            r.push(bi.clone());
            r
        })
        .collect();
    let pivots = rref(&mut m, n);
    if pivots.len() != n {
        return Err(LinAlgError::Singular);
    }
    Ok(m.into_iter().map(|mut r| r.pop().unwrap()).collect())
}

/// Inverse of a square rational matrix.
pub fn inverse(a: &[Vec<Rational>]) -> Result<Vec<Vec<Rational>>, LinAlgError> {
    let n = a.len();
    let mut m: Vec<Vec<Rational>> = a
        .iter()
        .enumerate()
        .map(|(i, row)| {
            let mut r = row.clone();
            r.extend((0..n).map(|j| if i == j { Rational::one() } else { Rational::zero() }));
            r
        })
        .collect();
    let pivots = rref(&mut m, n);
    if pivots.len() != n {
        return Err(LinAlgError::Singular);
    }
    Ok(m.into_iter().map(|r| r[n..].to_vec()).collect())
}

/// Coordinates `c` with `sum c_i rows_i = target`, if `target` lies in the
/// span of the (linearly independent) rows.
pub fn coordinates_in_span(rows: &[Vec<Rational>], target: &[Rational]) -> Option<Vec<Rational>> {
    let k = rows.len();
    let n = target.len();
    // Transposed augmented system: n equations in k unknowns.
    let mut m: Vec<Vec<Rational>> = (0..n)
        .map(|j| {
            let mut r: Vec<Rational> = rows.iter().map(|row| row[j].clone()).collect();
            r.push(target[j].clone());
            r
        })
        .collect();
    let pivots = rref(&mut m, k + 1);
    if pivots.contains(&k) || pivots.len() < k {
        return None;
    }
    let mut c = vec![Rational::zero(); k];
    for (row, &p) in m.iter().zip(&pivots) {
        c[p] = row[k].clone();
    }
    Some(c)
}

/// A linear subspace of `Q^n` in canonical reduced row echelon form.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SubspaceBasis {
    ambient: usize,
    rows: Vec<RationalVector>,
}

impl SubspaceBasis {
    pub fn zero(ambient: usize) -> Self {
        SubspaceBasis {
            ambient,
            rows: Vec::new(),
        }
    }

    pub fn full(ambient: usize) -> Self {
        let rows = (0..ambient)
            .map(|i| {
                let mut v = RationalVector::zeros(ambient);
                v.0[i] = Rational::one();
                v
            })
            .collect();
        SubspaceBasis { ambient, rows }
    }

    pub fn ambient(&self) -> usize {
        self.ambient
    }

    pub fn dim(&self) -> usize {
        self.rows.len()
    }

    pub fn basis(&self) -> &[RationalVector] {
        &self.rows
    }

    pub fn is_zero(&self) -> bool {
        self.rows.is_empty()
    }

    pub fn is_full(&self) -> bool {
        self.rows.len() == self.ambient
    }

    pub fn contains(&self, v: &RationalVector) -> bool {
        let mut w = v.0.clone();
        for row in &self.rows {
            let p = row.0.iter().position(|x| !x.is_zero()).unwrap();
            if w[p].is_zero() {
                continue;
            }
            let f = w[p].clone();
            for (x, r) in w.iter_mut().zip(&row.0) {
                if !r.is_zero() {
                    *x -= &f * r;
                }
            }
        }
        w.iter().all(Zero::is_zero)
    }

    pub fn contains_int(&self, v: &[BigInt]) -> bool {
        self.contains(&RationalVector::from_bigints(v))
    }

    pub fn is_subspace_of(&self, other: &SubspaceBasis) -> bool {
        self.rows.iter().all(|r| other.contains(r))
    }

    pub fn sum(&self, other: &SubspaceBasis) -> SubspaceBasis {
        let mut m: Vec<Vec<Rational>> = self
            .rows
            .iter()
            .chain(&other.rows)
            .map(|r| r.0.clone())
            .collect();
        rref(&mut m, self.ambient);
        SubspaceBasis {
            ambient: self.ambient,
            rows: m.into_iter().map(RationalVector).collect(),
        }
    }

    pub fn orthogonal_complement(&self) -> SubspaceBasis {
        let rows: Vec<Vec<Rational>> = self.rows.iter().map(|r| r.0.clone()).collect();
        let ns = nullspace(&rows, self.ambient);
        canonical_span(self.ambient, &ns).expect("nullspace vectors share the ambient dimension")
    }

    pub fn intersection(&self, other: &SubspaceBasis) -> SubspaceBasis {
        if self.is_full() {
            return other.clone();
        }
        if other.is_full() {
            return self.clone();
        }
        if self.is_zero() || other.is_zero() {
            return SubspaceBasis::zero(self.ambient);
        }
        // (A ∩ B) = (A^⊥ + B^⊥)^⊥ for the standard pairing on Q^n.
        self.orthogonal_complement()
            .sum(&other.orthogonal_complement())
            .orthogonal_complement()
    }
}

impl fmt::Display for SubspaceBasis {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "span{{")?;
        for (i, r) in self.rows.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{r}")?;
        }
        write!(f, "}}")
    }
}

/// Canonical basis of the rational span of `vectors` inside `Q^ambient`.
pub fn canonical_span(
    ambient: usize,
    vectors: &[RationalVector],
) -> Result<SubspaceBasis, LinAlgError> {
    for v in vectors {
        if v.len() != ambient {
            return Err(LinAlgError::DimensionMismatch {
                expected: ambient,
                found: v.len(),
            });
        }
    }
    let mut m: Vec<Vec<Rational>> = vectors.iter().map(|v| v.0.clone()).collect();
    rref(&mut m, ambient);
    Ok(SubspaceBasis {
        ambient,
        rows: m.into_iter().map(RationalVector).collect(),
    })
}

/// Span of integer vectors.
pub fn canonical_span_int(ambient: usize, vectors: &[&[BigInt]]) -> Result<SubspaceBasis, LinAlgError> {
    let vs: Vec<RationalVector> = vectors.iter().map(|v| RationalVector::from_bigints(v)).collect();
    canonical_span(ambient, &vs)
}

/// Lattice chart of the hyperplane `normal^⊥` in `Z^n`.
///
/// `basis` generates `{u ∈ Z^n : <u, normal> = 0}` and `complement` satisfies
/// `<complement, normal> = 1`, so `[basis; complement]` is unimodular.
#[derive(Clone, Debug)]
pub struct HyperplaneChart {
    basis: IntegerMatrix,
    complement: Vec<BigInt>,
    inverse: Vec<Vec<Rational>>,
}

impl HyperplaneChart {
    pub fn new(normal: &[BigInt]) -> Result<Self, LinAlgError> {
        let n = normal.len();
        if normal.iter().all(Zero::is_zero) {
            return Err(LinAlgError::ZeroVector);
        }
        let g = gcd_all(normal);
        if !g.is_one() {
            return Err(LinAlgError::NotPrimitive { gcd: g });
        }
        // Column operations reducing the 1×n row `normal` to (1, 0, …, 0);
        // `cols` tracks the accumulated unimodular transform column by column.
        let mut a: Vec<BigInt> = normal.to_vec();
        let mut cols: Vec<Vec<BigInt>> = (0..n)
            .map(|j| (0..n).map(|i| BigInt::from((i == j) as i64)).collect())
            .collect();
        for j in 1..n {
            if a[j].is_zero() {
                continue;
            }
            if a[0].is_zero() {
                a.swap(0, j);
                cols.swap(0, j);
                continue;
            }
            let eg = a[0].extended_gcd(&a[j]);
            let (x, y, g) = (eg.x, eg.y, eg.gcd);
            let p = &a[0] / &g;
            let q = &a[j] / &g;
            let c0: Vec<BigInt> = cols[0]
                .iter()
                .zip(&cols[j])
                .map(|(u, v)| &x * u + &y * v)
                .collect();
            let cj: Vec<BigInt> = cols[0]
                .iter()
                .zip(&cols[j])
                .map(|(u, v)| -&q * u + &p * v)
                .collect();
            cols[0] = c0;
            cols[j] = cj;
            a[0] = g;
            a[j] = BigInt::zero();
        }
        if a[0].is_negative() {
            a[0] = -a[0].clone();
            for x in cols[0].iter_mut() {
                *x = -x.clone();
            }
        }
        debug_assert!(a[0].is_one());
        let complement = cols[0].clone();
        let kernel = IntegerMatrix::new(n, cols[1..].to_vec())?.hermite_normal_form();
        let mut full: Vec<Vec<Rational>> = kernel
            .rows()
            .iter()
            .map(|r| r.iter().map(int_to_rat).collect())
            .collect();
        full.push(complement.iter().map(int_to_rat).collect());
        let inverse = inverse(&full)?;
        Ok(HyperplaneChart {
            basis: kernel,
            complement,
            inverse,
        })
    }

    pub fn basis(&self) -> &IntegerMatrix {
        &self.basis
    }

    pub fn complement(&self) -> &[BigInt] {
        &self.complement
    }

    /// Coordinates of `x ∈ normal^⊥` with respect to `basis`.
    pub fn coordinates(&self, x: &[Rational]) -> Vec<Rational> {
        let n = x.len();
        (0..n - 1)
            .map(|j| {
                let mut acc = Rational::zero();
                for (i, xi) in x.iter().enumerate() {
                    if !xi.is_zero() && !self.inverse[i][j].is_zero() {
                        acc += xi * &self.inverse[i][j];
                    }
                }
                acc
            })
            .collect()
    }
}

/// Lattice basis of `{u ∈ Z^n : <u, normal> = 0}` in Hermite normal form.
pub fn hyperplane_lattice_basis(normal: &[BigInt]) -> Result<IntegerMatrix, LinAlgError> {
    Ok(HyperplaneChart::new(normal)?.basis)
}

/// Lattice basis of `{u ∈ Z^n : <u, a_i> = 0 for all i}` (rows in HNF).
pub fn kernel_lattice_basis(n: usize, normals: &[Vec<BigInt>]) -> Result<IntegerMatrix, LinAlgError> {
    // basis rows of the current sublattice, expressed in Z^n
    let mut basis: Vec<Vec<BigInt>> = (0..n)
        .map(|j| (0..n).map(|i| BigInt::from((i == j) as i64)).collect())
        .collect();
    for a in normals {
        if a.len() != n {
            return Err(LinAlgError::DimensionMismatch {
                expected: n,
                found: a.len(),
            });
        }
        // restriction of <·, a> to the current lattice
        let restricted: Vec<BigInt> = basis
            .iter()
            .map(|b| b.iter().zip(a).map(|(x, y)| x * y).sum())
            .collect();
        if restricted.iter().all(Zero::is_zero) {
            continue;
        }
        let g = gcd_all(&restricted);
        let prim: Vec<BigInt> = restricted.iter().map(|x| x / &g).collect();
        let chart = HyperplaneChart::new(&prim)?;
        basis = chart
            .basis()
            .rows()
            .iter()
            .map(|coeffs| {
                let mut v = vec![BigInt::zero(); n];
                for (c, b) in coeffs.iter().zip(&basis) {
                    for (vi, bi) in v.iter_mut().zip(b) {
                        *vi += c * bi;
                    }
                }
                v
            })
            .collect();
    }
    Ok(IntegerMatrix::new(n, basis)?.hermite_normal_form())
}

pub fn binomial(n: u64, k: u64) -> BigInt {
    if k > n {
        return BigInt::zero();
    }
    let k = k.min(n - k);
    let mut acc = BigInt::one();
    for i in 0..k {
        acc = acc * BigInt::from(n - i) / BigInt::from(i + 1);
    }
    acc
}

/// All compositions of `total` into `parts` nonnegative summands, in lexicographic order.
pub fn compositions(total: usize, parts: usize) -> Vec<Vec<usize>> {
    fn rec(total: usize, parts: usize, prefix: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if parts == 1 {
            prefix.push(total);
            out.push(prefix.clone());
            prefix.pop();
            return;
        }
        for first in 0..=total {
            prefix.push(first);
            rec(total - first, parts - 1, prefix, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    if parts == 0 {
        if total == 0 {
            out.push(Vec::new());
        }
        return out;
    }
    rec(total, parts, &mut Vec::new(), &mut out);
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rv(xs: &[i64]) -> RationalVector {
        RationalVector::from_ints(xs)
    }

    fn bi(xs: &[i64]) -> Vec<BigInt> {
        xs.iter().map(|&x| BigInt::from(x)).collect()
    }

    #[test]
    fn span_of_collinear_vectors() {
        let s = canonical_span(2, &[rv(&[1, 0]), rv(&[2, 0])]).unwrap();
        assert_eq!(s.dim(), 1);
        assert_eq!(s.basis(), &[rv(&[1, 0])]);
    }

    #[test]
    fn empty_span() {
        let s = canonical_span(3, &[]).unwrap();
        assert_eq!(s.dim(), 0);
        assert!(s.basis().is_empty());
    }

    #[test]
    fn span_by_elimination() {
        let s = canonical_span(3, &[rv(&[1, 0, 0]), rv(&[1, 1, 0]), rv(&[0, 1, 0])]).unwrap();
        assert_eq!(s.dim(), 2);
        assert_eq!(s.basis(), &[rv(&[1, 0, 0]), rv(&[0, 1, 0])]);
    }

    #[test]
    fn span_rejects_mixed_lengths() {
        let err = canonical_span(2, &[rv(&[1, 0]), rv(&[1, 0, 0])]).unwrap_err();
        assert_eq!(
            err,
            LinAlgError::DimensionMismatch {
                expected: 2,
                found: 3
            }
        );
    }

    #[test]
    fn coordinate_hyperplane() {
        let b = hyperplane_lattice_basis(&bi(&[0, 0, 1])).unwrap();
        assert_eq!(b.rows(), &[bi(&[1, 0, 0]), bi(&[0, 1, 0])]);
    }

    #[test]
    fn diagonal_line() {
        let b = hyperplane_lattice_basis(&bi(&[1, 1])).unwrap();
        assert_eq!(b.rows(), &[bi(&[1, -1])]);
    }

    #[test]
    fn hyperplane_in_three_space() {
        let b = hyperplane_lattice_basis(&bi(&[1, -1, 0])).unwrap();
        let expected = IntegerMatrix::from_i64(3, &[vec![1, 1, 0], vec![0, 0, 1]]).unwrap();
        assert_eq!(b.hermite_normal_form(), expected.hermite_normal_form());
    }

    #[test]
    fn hyperplane_errors() {
        assert_eq!(
            hyperplane_lattice_basis(&bi(&[0, 0])).unwrap_err(),
            LinAlgError::ZeroVector
        );
        assert!(matches!(
            hyperplane_lattice_basis(&bi(&[2, 4])).unwrap_err(),
            LinAlgError::NotPrimitive { .. }
        ));
    }

    #[test]
    fn chart_coordinates_roundtrip() {
        let normal = bi(&[2, 3, 5]);
        let chart = HyperplaneChart::new(&normal).unwrap();
        let x = vec![rat(3), rat(-2), rat(0)];
        let y = chart.coordinates(&x);
        let mut back = vec![Rational::zero(); 3];
        for (c, row) in y.iter().zip(chart.basis().rows()) {
            for (b, r) in back.iter_mut().zip(row) {
                *b += c * int_to_rat(r);
            }
        }
        assert_eq!(back, x);
        assert!(y.iter().all(|c| c.is_integer()));
    }

    #[test]
    fn intersection_of_planes() {
        let a = canonical_span(3, &[rv(&[1, 0, 0]), rv(&[0, 1, 0])]).unwrap();
        let b = canonical_span(3, &[rv(&[1, 1, 0]), rv(&[0, 0, 1])]).unwrap();
        let c = a.intersection(&b);
        assert_eq!(c, canonical_span(3, &[rv(&[1, 1, 0])]).unwrap());
    }

    #[test]
    fn determinant_and_hnf() {
        let m = IntegerMatrix::from_i64(3, &[vec![2, 0, 1], vec![1, 1, 0], vec![0, 3, 1]]).unwrap();
        assert_eq!(m.determinant().unwrap(), BigInt::from(5));
        let h = IntegerMatrix::from_i64(2, &[vec![2, 4], vec![3, 5]]).unwrap().hermite_normal_form();
        assert_eq!(h.rows(), &[bi(&[1, 1]), bi(&[0, 2])]);
    }

    #[test]
    fn kernel_of_two_normals() {
        let k = kernel_lattice_basis(3, &[bi(&[1, 1, 1]), bi(&[1, -1, 0])]).unwrap();
        assert_eq!(k.rows(), &[bi(&[1, 1, -2])]);
    }

    #[test]
    fn compositions_count() {
        assert_eq!(compositions(2, 3).len(), 6);
        assert_eq!(compositions(0, 2), vec![vec![0, 0]]);
        assert_eq!(binomial(6, 2), BigInt::from(15));
    }
}
