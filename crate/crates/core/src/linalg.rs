//! Dense exact linear algebra over the rationals.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Sub};

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::scalar::{fmt_rational, Rational};

pub type Vector = Vec<Rational>;

pub fn zero_vector(n: usize) -> Vector {
    vec![Rational::zero(); n]
}

pub fn unit_vector(n: usize, i: usize) -> Vector {
    let mut v = zero_vector(n);
    v[i] = Rational::one();
    v
}

pub fn is_zero_vector(v: &[Rational]) -> bool {
    v.iter().all(Zero::is_zero)
}

/// `acc += c * v`
pub fn axpy(acc: &mut [Rational], c: &Rational, v: &[Rational]) {
    if c.is_zero() {
        return;
    }
    for (a, x) in acc.iter_mut().zip(v) {
        if !x.is_zero() {
            *a += c * x;
        }
    }
}

/// Row-major rational matrix.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct MatrixQ {
    rows: usize,
    cols: usize,
    data: Vec<Rational>,
}

impl MatrixQ {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        MatrixQ {
            rows,
            cols,
            data: vec![Rational::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = MatrixQ::zeros(n, n);
        for i in 0..n {
            m.set(i, i, Rational::one());
        }
        m
    }

    pub fn diagonal(d: &[Rational]) -> Self {
        let mut m = MatrixQ::zeros(d.len(), d.len());
        for (i, x) in d.iter().enumerate() {
            m.set(i, i, x.clone());
        }
        m
    }

    pub fn from_rows(rows: Vec<Vector>) -> Result<Self> {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        let mut data = Vec::with_capacity(r * c);
        for row in rows {
            if row.len() != c {
                return Err(Error::DimensionMismatch {
                    expected: c,
                    found: row.len(),
                });
            }
            data.extend(row);
        }
        Ok(MatrixQ {
            rows: r,
            cols: c,
            data,
        })
    }

    /// Square matrix from a row-major flattening.
    pub fn from_flat(n: usize, data: Vector) -> Result<Self> {
        if data.len() != n * n {
            return Err(Error::DimensionMismatch {
                expected: n * n,
                found: data.len(),
            });
        }
        Ok(MatrixQ {
            rows: n,
            cols: n,
            data,
        })
    }

    /// Matrix whose `j`-th column is `cols[j]`.
    pub fn from_columns(n: usize, cols: &[Vector]) -> Self {
        let mut m = MatrixQ::zeros(n, cols.len());
        for (j, c) in cols.iter().enumerate() {
            for (i, x) in c.iter().enumerate() {
                m.set(i, j, x.clone());
            }
        }
        m
    }

    pub fn from_i64(rows: &[&[i64]]) -> Self {
        MatrixQ::from_rows(
            rows.iter()
                .map(|r| {
                    r.iter()
                        .map(|&x| Rational::from_integer(x.into()))
                        .collect()
                })
                .collect(),
        )
        .expect("rectangular literal")
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &Rational {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: Rational) {
        self.data[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> &[Rational] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn column(&self, j: usize) -> Vector {
        (0..self.rows).map(|i| self.get(i, j).clone()).collect()
    }

    pub fn row_vectors(&self) -> Vec<Vector> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn flat(&self) -> &[Rational] {
        &self.data
    }

    pub fn into_flat(self) -> Vector {
        self.data
    }

    pub fn is_zero(&self) -> bool {
        is_zero_vector(&self.data)
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn is_diagonal(&self) -> bool {
        (0..self.rows).all(|i| (0..self.cols).all(|j| i == j || self.get(i, j).is_zero()))
    }

    pub fn transpose(&self) -> MatrixQ {
        let mut t = MatrixQ::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.set(j, i, self.get(i, j).clone());
            }
        }
        t
    }

    pub fn scale(&self, c: &Rational) -> MatrixQ {
        MatrixQ {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|x| x * c).collect(),
        }
    }

    pub fn apply(&self, v: &[Rational]) -> Vector {
        assert_eq!(v.len(), self.cols, "matrix-vector dimension mismatch");
        (0..self.rows)
            .map(|i| {
                let mut acc = Rational::zero();
                for (a, x) in self.row(i).iter().zip(v) {
                    if !a.is_zero() && !x.is_zero() {
                        acc += a * x;
                    }
                }
                acc
            })
            .collect()
    }

    pub fn trace(&self) -> Rational {
        (0..self.rows.min(self.cols))
            .map(|i| self.get(i, i).clone())
            .sum()
    }

    pub fn pow(&self, e: u32) -> MatrixQ {
        let mut acc = MatrixQ::identity(self.rows);
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }

    /// Commutator `self * other - other * self`.
    pub fn bracket(&self, other: &MatrixQ) -> MatrixQ {
        &(self * other) - &(other * self)
    }

    pub fn rank(&self) -> usize {
        rref(self).1
    }
}

impl Mul for &MatrixQ {
    type Output = MatrixQ;
    fn mul(self, rhs: &MatrixQ) -> MatrixQ {
        assert_eq!(self.cols, rhs.rows, "matrix product dimension mismatch");
        let mut out = MatrixQ::zeros(self.rows, rhs.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..rhs.cols {
                    let b = rhs.get(k, j);
                    if !b.is_zero() {
                        out.data[i * rhs.cols + j] += a * b;
                    }
                }
            }
        }
        out
    }
}

impl Add for &MatrixQ {
    type Output = MatrixQ;
    fn add(self, rhs: &MatrixQ) -> MatrixQ {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols));
        MatrixQ {
            rows: self.rows,
            cols: self.cols,
            data: self
                .data
                .iter()
                .zip(&rhs.data)
                .map(|(a, b)| a + b)
                .collect(),
        }
    }
}

impl Sub for &MatrixQ {
    type Output = MatrixQ;
    fn sub(self, rhs: &MatrixQ) -> MatrixQ {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols));
        MatrixQ {
            rows: self.rows,
            cols: self.cols,
            data: self
                .data
                .iter()
                .zip(&rhs.data)
                .map(|(a, b)| a - b)
                .collect(),
        }
    }
}

impl fmt::Display for MatrixQ {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.rows {
            let row: Vec<String> = self.row(i).iter().map(fmt_rational).collect();
            writeln!(f, "[{}]", row.join(", "))?;
        }
        Ok(())
    }
}

/// Incrementally maintained reduced row-echelon basis. Rows are kept fully
/// reduced, keyed by pivot column.
#[derive(Clone, Debug)]
pub struct Echelon {
    width: usize,
    rows: BTreeMap<usize, Vector>,
}

impl Echelon {
    pub fn new(width: usize) -> Self {
        Echelon {
            width,
            rows: BTreeMap::new(),
        }
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn width(&self) -> usize {
        self.width
    }

    /// Reduces `v` against the current rows.
    pub fn reduce(&self, v: &mut [Rational]) {
        for (&p, row) in &self.rows {
            if !v[p].is_zero() {
                let c = -v[p].clone();
                axpy(v, &c, row);
            }
        }
    }

    /// Adds `v`; returns whether the rank grew.
    pub fn insert(&mut self, mut v: Vector) -> bool {
        assert_eq!(v.len(), self.width, "echelon width mismatch");
        self.reduce(&mut v);
        let Some(p) = v.iter().position(|x| !x.is_zero()) else {
            return false;
        };
        let inv = v[p].recip();
        for x in v.iter_mut() {
            if !x.is_zero() {
                *x *= &inv;
            }
        }
        for row in self.rows.values_mut() {
            if !row[p].is_zero() {
                let c = -row[p].clone();
                axpy(row, &c, &v);
            }
        }
        self.rows.insert(p, v);
        true
    }

    pub fn contains(&self, v: &[Rational]) -> bool {
        let mut w = v.to_vec();
        self.reduce(&mut w);
        is_zero_vector(&w)
    }

    pub fn into_subspace(self) -> Subspace {
        Subspace {
            ambient: self.width,
            basis: self.rows.into_values().collect(),
        }
    }
}

/// Reduced row-echelon form and rank. Pivots are taken as the first
/// nonzero entry scanning down each column in turn.
pub fn rref(m: &MatrixQ) -> (MatrixQ, usize) {
    let mut rows = m.row_vectors();
    let (r, c) = (m.rows(), m.cols());
    let mut rank = 0;
    for col in 0..c {
        let Some(p) = (rank..r).find(|&i| !rows[i][col].is_zero()) else {
            continue;
        };
        rows.swap(rank, p);
        let inv = rows[rank][col].recip();
        for x in rows[rank].iter_mut() {
            *x *= &inv;
        }
        let pivot = rows[rank].clone();
        for (i, row) in rows.iter_mut().enumerate() {
            if i != rank && !row[col].is_zero() {
                let f = -row[col].clone();
                axpy(row, &f, &pivot);
            }
        }
        rank += 1;
        if rank == r {
            break;
        }
    }
    let out = if r == 0 {
        MatrixQ::zeros(0, c)
    } else {
        MatrixQ::from_rows(rows).expect("rectangular")
    };
    (out, rank)
}

/// Inverse by row reduction of `[m | I]`; `None` when singular.
pub fn inverse(m: &MatrixQ) -> Option<MatrixQ> {
    let n = m.rows();
    if !m.is_square() {
        return None;
    }
    let rows: Vec<Vector> = (0..n)
        .map(|i| {
            let mut r = m.row(i).to_vec();
            r.extend(unit_vector(n, i));
            r
        })
        .collect();
    if n == 0 {
        return Some(MatrixQ::zeros(0, 0));
    }
    let (r, rank) = rref(&MatrixQ::from_rows(rows).expect("rectangular"));
    if rank < n || (0..n).any(|i| !r.get(i, i).is_one()) {
        return None;
    }
    Some(MatrixQ::from_rows((0..n).map(|i| r.row(i)[n..].to_vec()).collect()).expect("square"))
}

/// Right null space of `m`.
pub fn kernel(m: &MatrixQ) -> Subspace {
    let mut e = Echelon::new(m.cols());
    for i in 0..m.rows() {
        e.insert(m.row(i).to_vec());
    }
    kernel_of_echelon(&e)
}

/// Null space of the equations collected in `e`.
pub fn kernel_of_echelon(e: &Echelon) -> Subspace {
    let n = e.width;
    let mut basis = Vec::new();
    for free in (0..n).filter(|j| !e.rows.contains_key(j)) {
        let mut v = zero_vector(n);
        v[free] = Rational::one();
        for (&p, row) in &e.rows {
            if !row[free].is_zero() {
                v[p] = -row[free].clone();
            }
        }
        basis.push(v);
    }
    Subspace::span(n, basis)
}

/// A linear subspace of `Q^n`, held as its canonical reduced row-echelon
/// basis, so equality of subspaces is equality of values.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Subspace {
    ambient: usize,
    basis: Vec<Vector>,
}

impl Subspace {
    pub fn zero(ambient: usize) -> Self {
        Subspace {
            ambient,
            basis: Vec::new(),
        }
    }

    pub fn full(ambient: usize) -> Self {
        Subspace {
            ambient,
            basis: (0..ambient).map(|i| unit_vector(ambient, i)).collect(),
        }
    }

    pub fn span(ambient: usize, vectors: impl IntoIterator<Item = Vector>) -> Self {
        let mut e = Echelon::new(ambient);
        for v in vectors {
            e.insert(v);
            if e.rank() == ambient {
                break;
            }
        }
        e.into_subspace()
    }

    /// Span of the coordinate vectors with the given 0-based indices.
    pub fn coordinate(ambient: usize, indices: &[usize]) -> Self {
        Subspace::span(ambient, indices.iter().map(|&i| unit_vector(ambient, i)))
    }

    pub fn ambient(&self) -> usize {
        self.ambient
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn is_zero(&self) -> bool {
        self.basis.is_empty()
    }

    pub fn is_full(&self) -> bool {
        self.basis.len() == self.ambient
    }

    pub fn basis(&self) -> &[Vector] {
        &self.basis
    }

    pub fn pivots(&self) -> Vec<usize> {
        self.basis
            .iter()
            .map(|v| {
                v.iter()
                    .position(|x| !x.is_zero())
                    .expect("nonzero basis vector")
            })
            .collect()
    }

    pub fn echelon(&self) -> Echelon {
        let mut e = Echelon::new(self.ambient);
        for (p, v) in self.pivots().into_iter().zip(&self.basis) {
            e.rows.insert(p, v.clone());
        }
        e
    }

    fn check(&self, other: &Subspace) -> Result<()> {
        if self.ambient != other.ambient {
            return Err(Error::DimensionMismatch {
                expected: self.ambient,
                found: other.ambient,
            });
        }
        Ok(())
    }

    pub fn contains(&self, v: &[Rational]) -> Result<bool> {
        if v.len() != self.ambient {
            return Err(Error::DimensionMismatch {
                expected: self.ambient,
                found: v.len(),
            });
        }
        Ok(self.echelon().contains(v))
    }

    pub fn contains_subspace(&self, other: &Subspace) -> Result<bool> {
        self.check(other)?;
        let e = self.echelon();
        Ok(other.basis.iter().all(|v| e.contains(v)))
    }

    pub fn sum(&self, other: &Subspace) -> Result<Subspace> {
        self.check(other)?;
        let mut e = self.echelon();
        for v in &other.basis {
            e.insert(v.clone());
        }
        Ok(e.into_subspace())
    }

    /// Intersection through the kernel of `[A | -B]`.
    pub fn intersect(&self, other: &Subspace) -> Result<Subspace> {
        self.check(other)?;
        if self.is_zero() || other.is_zero() {
            return Ok(Subspace::zero(self.ambient));
        }
        let (a, b) = (self.dim(), other.dim());
        let mut cols: Vec<Vector> = self.basis.clone();
        cols.extend(other.basis.iter().map(|v| v.iter().map(|x| -x).collect()));
        let k = kernel(&MatrixQ::from_columns(self.ambient, &cols));
        let vectors = k.basis.iter().map(|coef| {
            let mut v = zero_vector(self.ambient);
            for (c, u) in coef[..a].iter().zip(&self.basis) {
                axpy(&mut v, c, u);
            }
            debug_assert_eq!(coef.len(), a + b);
            v
        });
        Ok(Subspace::span(self.ambient, vectors.collect::<Vec<_>>()))
    }

    /// Coordinate vectors `e_j` for the non-pivot columns; together with the
    /// basis they span the ambient space.
    pub fn complement_basis(&self) -> Vec<Vector> {
        let pivots = self.pivots();
        (0..self.ambient)
            .filter(|j| !pivots.contains(j))
            .map(|j| unit_vector(self.ambient, j))
            .collect()
    }

    /// Coefficients of `v` in the canonical basis, if `v` lies in the space.
    pub fn coordinates(&self, v: &[Rational]) -> Option<Vector> {
        let coords: Vector = self.pivots().iter().map(|&p| v[p].clone()).collect();
        let mut w = v.to_vec();
        for (c, b) in coords.iter().zip(&self.basis) {
            axpy(&mut w, &-c.clone(), b);
        }
        is_zero_vector(&w).then_some(coords)
    }

    /// Subspace of vectors orthogonal to every basis vector.
    pub fn annihilator(&self) -> Subspace {
        if self.is_zero() {
            return Subspace::full(self.ambient);
        }
        kernel(&MatrixQ::from_rows(self.basis.clone()).expect("rectangular"))
    }
}

impl fmt::Display for Subspace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "span{{")?;
        for (i, v) in self.basis.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            let s: Vec<String> = v.iter().map(fmt_rational).collect();
            write!(f, "({})", s.join(","))?;
        }
        write!(f, "}}")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::int;

    fn v(xs: &[i64]) -> Vector {
        xs.iter().map(|&x| int(x)).collect()
    }

    #[test]
    fn rref_examples() {
        let id = MatrixQ::identity(2);
        assert_eq!(rref(&id), (id.clone(), 2));
        let m = MatrixQ::from_i64(&[&[1, 2], &[2, 4]]);
        assert_eq!(rref(&m), (MatrixQ::from_i64(&[&[1, 2], &[0, 0]]), 1));
        let z = MatrixQ::zeros(3, 3);
        assert_eq!(rref(&z), (z.clone(), 0));
    }

    #[test]
    fn inverse_examples() {
        let m = MatrixQ::from_i64(&[&[2, 1], &[1, 1]]);
        let inv = inverse(&m).unwrap();
        assert_eq!(inv, MatrixQ::from_i64(&[&[1, -1], &[-1, 2]]));
        assert_eq!(&m * &inv, MatrixQ::identity(2));
        assert!(inverse(&MatrixQ::from_i64(&[&[1, 2], &[2, 4]])).is_none());
    }

    #[test]
    fn kernel_examples() {
        assert!(kernel(&MatrixQ::identity(4)).is_zero());
        assert!(kernel(&MatrixQ::zeros(2, 3)).is_full());
        let k = kernel(&MatrixQ::from_i64(&[&[1, 1, 0]]));
        assert_eq!(k.dim(), 2);
        assert!(k.contains(&v(&[1, -1, 0])).unwrap());
        assert!(k.contains(&v(&[0, 0, 1])).unwrap());
        assert!(!k.contains(&v(&[1, 0, 0])).unwrap());
    }

    #[test]
    fn lattice_examples() {
        let a = Subspace::span(2, vec![v(&[1, 0])]);
        let b = Subspace::span(2, vec![v(&[0, 1])]);
        assert!(a.sum(&b).unwrap().is_full());
        assert_eq!(a.intersect(&a).unwrap(), a);
        let p = Subspace::span(3, vec![v(&[1, 0, 0]), v(&[0, 1, 0])]);
        let q = Subspace::span(3, vec![v(&[0, 1, 0]), v(&[0, 0, 1])]);
        assert_eq!(
            p.intersect(&q).unwrap(),
            Subspace::span(3, vec![v(&[0, 1, 0])])
        );
        assert!(a.sum(&p).is_err());
    }

    #[test]
    fn canonical_basis_is_unique() {
        let a = Subspace::span(3, vec![v(&[2, 4, 0]), v(&[1, 1, 1])]);
        let b = Subspace::span(3, vec![v(&[3, 5, 1]), v(&[0, 2, -2])]);
        assert_eq!(a, b);
        assert_eq!(a.coordinates(&v(&[3, 5, 1])).unwrap().len(), 2);
        assert!(a.coordinates(&v(&[0, 0, 1])).is_none());
    }

    #[test]
    fn complement_and_annihilator() {
        let a = Subspace::span(3, vec![v(&[1, 1, 0])]);
        let c = a.complement_basis();
        assert_eq!(c.len(), 2);
        assert!(Subspace::span(3, c).sum(&a).unwrap().is_full());
        let ann = a.annihilator();
        assert_eq!(ann.dim(), 2);
        assert!(ann.contains(&v(&[1, -1, 0])).unwrap());
    }
}
