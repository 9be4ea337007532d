//! Derivations of brackets and of compatible algebras.
//!
//! A derivation is a matrix `D` acting on column vectors, so `D e_j` is
//! column `j`. Spaces are stored flattened row-major in `dim^2` coordinates.

use num_traits::{One, Zero};

use crate::algebra::{BracketTensor, CompatAlgebra};
use crate::error::{Error, Result};
use crate::linalg::{kernel_of_echelon, unit_vector, Echelon, MatrixQ, Subspace, Vector};
use crate::scalar::{Poly, Rational, Scalar};

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct DerivationSpace {
    dim: usize,
    space: Subspace,
}

impl DerivationSpace {
    pub fn from_subspace(dim: usize, space: Subspace) -> Self {
        assert_eq!(space.ambient(), dim * dim);
        DerivationSpace { dim, space }
    }

    pub fn algebra_dim(&self) -> usize {
        self.dim
    }

    pub fn dim(&self) -> usize {
        self.space.dim()
    }

    pub fn subspace(&self) -> &Subspace {
        &self.space
    }

    pub fn basis(&self) -> Vec<MatrixQ> {
        self.space
            .basis()
            .iter()
            .map(|v| MatrixQ::from_flat(self.dim, v.clone()).expect("square"))
            .collect()
    }

    pub fn contains(&self, m: &MatrixQ) -> bool {
        self.space.contains(m.flat()).unwrap_or(false)
    }

    pub fn intersect(&self, other: &DerivationSpace) -> Result<DerivationSpace> {
        Ok(DerivationSpace::from_subspace(
            self.dim,
            self.space.intersect(&other.space)?,
        ))
    }

    /// `sum c_i d_i` for the basis `d_i`.
    pub fn combination(&self, coeffs: &[Rational]) -> MatrixQ {
        let n = self.dim;
        let mut flat = vec![Rational::zero(); n * n];
        for (c, b) in coeffs.iter().zip(self.space.basis()) {
            crate::linalg::axpy(&mut flat, c, b);
        }
        MatrixQ::from_flat(n, flat).expect("square")
    }
}

fn rational_coefficient(s: &Scalar) -> Result<Rational> {
    s.as_rational().cloned().ok_or(Error::Parametric)
}

/// Rows of the Leibniz system for one bracket.
fn leibniz_rows(t: &BracketTensor, echelon: &mut Echelon) -> Result<()> {
    let n = t.dim();
    let products: Vec<Vec<Vec<(usize, Rational)>>> = (0..n)
        .map(|i| {
            (0..n)
                .map(|j| {
                    t.product(i, j)
                        .into_iter()
                        .map(|(k, c)| Ok((k, rational_coefficient(&c)?)))
                        .collect::<Result<Vec<_>>>()
                })
                .collect::<Result<Vec<_>>>()
        })
        .collect::<Result<Vec<_>>>()?;
    for i in 0..n {
        for j in i + 1..n {
            // rows[k]: coefficient of D[a][b] in the k-th coordinate of
            // D[e_i,e_j] - [D e_i, e_j] - [e_i, D e_j].
            let mut rows = vec![vec![Rational::zero(); n * n]; n];
            for (m, c) in &products[i][j] {
                for (k, row) in rows.iter_mut().enumerate() {
                    row[k * n + m] += c;
                }
            }
            for m in 0..n {
                for (k, c) in &products[m][j] {
                    rows[*k][m * n + i] -= c;
                }
                for (k, c) in &products[i][m] {
                    rows[*k][m * n + j] -= c;
                }
            }
            for row in rows {
                echelon.insert(row);
            }
        }
    }
    Ok(())
}

fn solve(dim: usize, brackets: &[&BracketTensor]) -> Result<DerivationSpace> {
    let mut e = Echelon::new(dim * dim);
    for t in brackets {
        leibniz_rows(t, &mut e)?;
    }
    let space = DerivationSpace::from_subspace(dim, kernel_of_echelon(&e));
    for d in space.basis() {
        for t in brackets {
            assert!(is_derivation(t, &d)?, "kernel element fails Leibniz");
        }
    }
    Ok(space)
}

/// `D[x,y] = [Dx,y] + [x,Dy]` on all basis pairs.
pub fn is_derivation(t: &BracketTensor, d: &MatrixQ) -> Result<bool> {
    let n = t.dim();
    if d.rows() != n || !d.is_square() {
        return Err(Error::DimensionMismatch {
            expected: n,
            found: d.rows(),
        });
    }
    let cols: Vec<Vector> = (0..n).map(|j| d.column(j)).collect();
    for i in 0..n {
        for j in i + 1..n {
            let ei = unit_vector(n, i);
            let ej = unit_vector(n, j);
            let lhs = d.apply(&t.apply_rational(&ei, &ej)?);
            let a = t.apply_rational(&cols[i], &ej)?;
            let b = t.apply_rational(&ei, &cols[j])?;
            let ok = lhs
                .iter()
                .zip(a.iter().zip(&b))
                .all(|(l, (x, y))| *l == x + y);
            if !ok {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// `Der(t)`.
pub fn derivation_space(t: &BracketTensor) -> Result<DerivationSpace> {
    solve(t.dim(), &[t])
}

/// `Der(b1) ∩ Der(b2)`.
pub fn compat_derivation_space(a: &CompatAlgebra) -> Result<DerivationSpace> {
    solve(a.dim(), &[a.bracket1(), a.bracket2()])
}

/// Derivations that are diagonal in the given basis.
pub fn diagonal_derivations(space: &DerivationSpace) -> Result<DerivationSpace> {
    let n = space.dim;
    let diag = Subspace::coordinate(n * n, &(0..n).map(|a| a * n + a).collect::<Vec<_>>());
    Ok(DerivationSpace::from_subspace(
        n,
        space.space.intersect(&diag)?,
    ))
}

pub fn matrix_is_nilpotent(m: &MatrixQ) -> bool {
    m.is_square() && m.pow(m.rows() as u32).is_zero()
}

type PolyMatrix = Vec<Vec<Poly>>;

fn poly_mul(a: &PolyMatrix, b: &PolyMatrix) -> PolyMatrix {
    let n = a.len();
    let mut out = vec![vec![Poly::zero(); n]; n];
    for i in 0..n {
        for k in 0..n {
            if a[i][k].is_zero() {
                continue;
            }
            for j in 0..n {
                if !b[k][j].is_zero() {
                    out[i][j] = &out[i][j] + &(&a[i][k] * &b[k][j]);
                }
            }
        }
    }
    out
}

/// The generic element `sum p_i d_i` with fresh parameters `p1, p2, ...`.
pub fn generic_element(space: &DerivationSpace) -> PolyMatrix {
    let n = space.dim;
    let mut m = vec![vec![Poly::zero(); n]; n];
    for (idx, b) in space.space.basis().iter().enumerate() {
        let p = Poly::var(&format!("p{}", idx + 1));
        for (flat, c) in b.iter().enumerate() {
            if !c.is_zero() {
                let (r, col) = (flat / n, flat % n);
                m[r][col] = &m[r][col] + &p.scale(c);
            }
        }
    }
    m
}

/// Whether every element of the space is nilpotent: the characteristic
/// polynomial of the generic element is `x^n`. Over characteristic zero that
/// holds iff `tr(M^k) = 0` for `1 <= k <= n`, the Newton identities behind
/// the Faddeev-LeVerrier recursion.
pub fn space_is_nil(space: &DerivationSpace) -> bool {
    let n = space.dim;
    let m = generic_element(space);
    let mut power = m.clone();
    for k in 1..=n {
        let trace = (0..n).fold(Poly::zero(), |acc, i| &acc + &power[i][i]);
        if !trace.is_zero() {
            return false;
        }
        if k < n {
            power = poly_mul(&power, &m);
        }
    }
    true
}

/// Span of `ad_x` for all basis `x`.
pub fn inner_derivations(t: &BracketTensor) -> Result<DerivationSpace> {
    let n = t.dim();
    let mut e = Echelon::new(n * n);
    for i in 0..n {
        e.insert(t.adjoint(&unit_vector(n, i))?.into_flat());
    }
    Ok(DerivationSpace::from_subspace(n, e.into_subspace()))
}

/// `dim Der - dim Inner`.
pub fn outer_dimension(t: &BracketTensor) -> Result<usize> {
    Ok(derivation_space(t)?.dim() - inner_derivations(t)?.dim())
}

/// Univariate polynomials as coefficient vectors, lowest degree first.
fn trim(mut p: Vec<Rational>) -> Vec<Rational> {
    while p.last().is_some_and(|c| c.is_zero()) {
        p.pop();
    }
    p
}

fn poly_rem(a: &[Rational], b: &[Rational]) -> Vec<Rational> {
    let mut r = trim(a.to_vec());
    let b = trim(b.to_vec());
    let lead = b.last().expect("nonzero divisor").clone();
    while r.len() >= b.len() {
        let shift = r.len() - b.len();
        let f = r.last().unwrap() / &lead;
        for (i, c) in b.iter().enumerate() {
            r[shift + i] -= &f * c;
        }
        r = trim(r);
    }
    r
}

fn poly_gcd(a: &[Rational], b: &[Rational]) -> Vec<Rational> {
    let (mut a, mut b) = (trim(a.to_vec()), trim(b.to_vec()));
    while !b.is_empty() {
        let r = poly_rem(&a, &b);
        a = b;
        b = r;
    }
    a
}

/// Minimal polynomial, monic, lowest degree first.
pub fn minimal_polynomial(m: &MatrixQ) -> Vec<Rational> {
    let n = m.rows();
    let mut powers: Vec<Vector> = vec![MatrixQ::identity(n).into_flat()];
    let mut current = MatrixQ::identity(n);
    loop {
        current = &current * m;
        let target = current.flat().to_vec();
        // Solve sum c_k powers[k] = target.
        let space = Subspace::span(n * n, powers.clone());
        if space.contains(&target).unwrap_or(false) {
            let cols = MatrixQ::from_columns(n * n, &powers);
            let coeffs = solve_columns(&cols, &target, powers.len());
            let mut p: Vec<Rational> = coeffs.into_iter().map(|c| -c).collect();
            p.push(Rational::one());
            return p;
        }
        powers.push(target);
    }
}

/// Solves `A c = b` for `c` given that a solution exists; `A` has independent
/// columns.
fn solve_columns(a: &MatrixQ, b: &[Rational], k: usize) -> Vec<Rational> {
    let rows: Vec<Vector> = (0..a.rows())
        .map(|i| {
            let mut r: Vector = a.row(i)[..k].to_vec();
            r.push(b[i].clone());
            r
        })
        .collect();
    let aug = MatrixQ::from_rows(rows).expect("rectangular");
    let (r, rank) = crate::linalg::rref(&aug);
    let mut c = vec![Rational::zero(); k];
    for i in 0..rank {
        if let Some(p) = (0..k).find(|&j| !r.get(i, j).is_zero()) {
            c[p] = r.get(i, k).clone();
        }
    }
    c
}

/// Diagonalizable over the algebraic closure: the minimal polynomial is
/// squarefree.
pub fn is_semisimple(m: &MatrixQ) -> bool {
    let p = minimal_polynomial(m);
    let dp: Vec<Rational> = p
        .iter()
        .enumerate()
        .skip(1)
        .map(|(i, c)| c * Rational::from_integer((i as i64).into()))
        .collect();
    poly_gcd(&p, &dp).len() <= 1
}

/// `e_1 -> e_{n-1}`, zero elsewhere: an outer derivation of `W_n` that,
/// with `h`, `t_2`, `t_3`, spans `H^1(W_n, W_n)`.
pub fn wn_outer_class_shift(n: usize) -> MatrixQ {
    let mut m = MatrixQ::zeros(n, n);
    m.set(n - 2, 0, Rational::one());
    m
}

/// `h, t_1, t_2, t_3` on `W_n` as matrices (1-based in the formulas).
pub fn wn_outer_classes(n: usize) -> [MatrixQ; 4] {
    let mut h = MatrixQ::zeros(n, n);
    let mut t1 = MatrixQ::zeros(n, n);
    let mut t2 = MatrixQ::zeros(n, n);
    let mut t3 = MatrixQ::zeros(n, n);
    let one = Rational::one();
    for i in 1..=n {
        h.set(i - 1, i - 1, Rational::from_integer((i as i64).into()));
    }
    t1.set(n - 1, 0, one.clone());
    for i in 2..=4 {
        t2.set(n - 4 + i - 1, i - 1, one.clone());
    }
    for i in 2..=3 {
        t3.set(n - 3 + i - 1, i - 1, one.clone());
    }
    [h, t1, t2, t3]
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::families::{existcc_n, lr_pair, make_ln, make_rn, make_wn};

    #[test]
    fn ln_rn_dimensions() {
        let l = derivation_space(&make_ln(7).unwrap()).unwrap();
        assert_eq!(l.dim(), 13);
        let r = derivation_space(&make_rn(7).unwrap()).unwrap();
        assert_eq!(r.dim(), 11);
        let n = compat_derivation_space(&lr_pair(7).unwrap()).unwrap();
        assert_eq!(n.dim(), 8);
        assert_eq!(n, l.intersect(&r).unwrap());
    }

    #[test]
    fn abelian_everything() {
        let t = BracketTensor::new(3);
        assert_eq!(derivation_space(&t).unwrap().dim(), 9);
        assert_eq!(inner_derivations(&t).unwrap().dim(), 0);
        assert_eq!(outer_dimension(&t).unwrap(), 9);
    }

    #[test]
    fn tori() {
        for n in 7..=9 {
            let l = derivation_space(&make_ln(n).unwrap()).unwrap();
            assert_eq!(diagonal_derivations(&l).unwrap().dim(), 2);
            let r = derivation_space(&make_rn(n).unwrap()).unwrap();
            assert_eq!(diagonal_derivations(&r).unwrap().dim(), 1);
        }
        let w = derivation_space(&make_wn(8).unwrap()).unwrap();
        let d = diagonal_derivations(&w).unwrap();
        assert_eq!(d.dim(), 1);
        let [h, ..] = wn_outer_classes(8);
        assert!(d.contains(&h));
    }

    #[test]
    fn ln_inner() {
        let t = make_ln(7).unwrap();
        assert_eq!(inner_derivations(&t).unwrap().dim(), 6);
        assert_eq!(outer_dimension(&t).unwrap(), 7);
    }

    #[test]
    fn wn_outer_basis() {
        let n = 9;
        let t = make_wn(n).unwrap();
        assert_eq!(outer_dimension(&t).unwrap(), 4);
        let inner = inner_derivations(&t).unwrap();
        let mut e = inner.subspace().echelon();
        let [h, t1, t2, t3] = wn_outer_classes(n);
        for c in [&h, &t1, &t2, &t3] {
            assert!(is_derivation(&t, c).unwrap());
        }
        // t1 = -ad(e_{n-1}) is inner; e_1 -> e_{n-1} is the missing class.
        assert!(inner.contains(&t1));
        for c in [h, t2, t3, wn_outer_class_shift(n)] {
            assert!(e.insert(c.into_flat()));
        }
        assert_eq!(e.rank(), derivation_space(&t).unwrap().dim());
    }

    #[test]
    fn existcc_nil() {
        let a = existcc_n(7).unwrap();
        assert!(space_is_nil(&compat_derivation_space(&a).unwrap()));
        let l = derivation_space(&make_ln(7).unwrap()).unwrap();
        assert!(!space_is_nil(&l));
    }

    #[test]
    fn nilpotent_and_semisimple() {
        let ad = make_ln(7).unwrap().adjoint(&unit_vector(7, 0)).unwrap();
        assert!(matrix_is_nilpotent(&ad));
        assert!(!is_semisimple(&ad));
        assert!(!matrix_is_nilpotent(&MatrixQ::identity(4)));
        assert!(is_semisimple(&MatrixQ::identity(4)));
        let [h, ..] = wn_outer_classes(7);
        assert!(is_semisimple(&h));
        let rot = MatrixQ::from_i64(&[&[0, -1], &[1, 0]]);
        assert!(is_semisimple(&rot));
        assert_eq!(minimal_polynomial(&rot).len(), 3);
    }
}
