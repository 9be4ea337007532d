//! 2-cochains with adjoint coefficients, cocycle conditions through the
//! circle product, the `Ψ_{k,r}` family on the model filiform algebra, and
//! linear deformations.

use num_traits::{One, Zero};

use crate::algebra::{
    jacobiator, symmetric_circle, BracketTensor, CompatAlgebra, Identity, IdentityReport,
    Trilinear, TwoCochain, DEFAULT_WITNESS_LIMIT,
};
use crate::error::{Error, Result, Which};
use crate::families::binom;
use crate::linalg::{kernel_of_echelon, Echelon, Subspace};
use crate::scalar::{Rational, Scalar};
use crate::structure::nilindex;

/// `circle(g, φ) + circle(φ, g)`: the linear term of the Jacobiator of
/// `g + tφ`.
pub fn cocycle_residual(g: &BracketTensor, phi: &TwoCochain) -> Trilinear {
    symmetric_circle(g, phi)
}

/// Whether `φ ∈ Z²(g, g)`. Errors when `g` is not a Lie bracket.
pub fn is_lie_2cocycle(g: &BracketTensor, phi: &TwoCochain) -> Result<bool> {
    if !jacobiator(g).is_zero() {
        return Err(Error::NotLie(Which::First));
    }
    if g.dim() != phi.dim() {
        return Err(Error::DimensionMismatch {
            expected: g.dim(),
            found: phi.dim(),
        });
    }
    Ok(cocycle_residual(g, phi).is_zero())
}

/// Pairs `(k, r)` with `1 <= k <= n-1` and `2k+1 < r <= n`, plus
/// `((n-1)/2, n)` for odd `n`.
pub fn delta_set(n: usize) -> Vec<(usize, usize)> {
    let mut out = Vec::new();
    for k in 1..n {
        for r in 2 * k + 2..=n {
            out.push((k, r));
        }
    }
    if n % 2 == 1 && n >= 3 {
        out.push(((n - 1) / 2, n));
    }
    out.sort();
    out
}

/// `Ψ_{k,r}` on the model filiform algebra with basis `e_0..e_n` (index `i`
/// is `e_i`): for `1 <= i <= k < j <= n`,
/// `Ψ(e_i, e_j) = (-1)^{k-i} binom(j-k-1, k-i) e_{i+j+r-2k-1}`, dropped when
/// the index exceeds `n`. This is the cochain with `Ψ(e_k, e_{k+1}) = e_r`
/// that is a cocycle; [`make_psi_literal`] has the binomial arguments the
/// other way round and is not.
pub fn make_psi(n: usize, k: usize, r: usize) -> Result<TwoCochain> {
    psi_with(n, k, r, |i, j| binom(j - k - 1, k - i))
}

/// `(-1)^{k-i} binom(k-i, j-k-1) e_{i+j+r-2k-1}`.
pub fn make_psi_literal(n: usize, k: usize, r: usize) -> Result<TwoCochain> {
    psi_with(n, k, r, |i, j| binom(k - i, j - k - 1))
}

fn psi_with(
    n: usize,
    k: usize,
    r: usize,
    coefficient: impl Fn(usize, usize) -> Rational,
) -> Result<TwoCochain> {
    if !delta_set(n).contains(&(k, r)) {
        return Err(Error::OutsideDelta { n, k, r });
    }
    let mut t = BracketTensor::new(n + 1);
    for i in 1..=k {
        for j in k + 1..=n {
            let target = i + j + r;
            if target < 2 * k + 1 || target - 2 * k - 1 > n {
                continue;
            }
            let mut c = coefficient(i, j);
            if c.is_zero() {
                continue;
            }
            if (k - i) % 2 == 1 {
                c = -c;
            }
            t.add(i, j, target - 2 * k - 1, Scalar::Rational(c));
        }
    }
    Ok(t)
}

/// `Ψ_R = R_n - L_n` or `Ψ_W = W_n - L_n` as cochains on `e_1..e_n`.
pub fn difference_cochain(t: &BracketTensor, base: &BracketTensor) -> TwoCochain {
    t.minus(base)
}

/// `(φ, ψ)` is a compatible 2-cocycle of `(b1, b2)`: `φ ∈ Z²(b1)`,
/// `ψ ∈ Z²(b2)` and the twelve-term condition
/// `circle(φ,b2) + circle(b2,φ) + circle(ψ,b1) + circle(b1,ψ) = 0`.
pub fn compat_2cocycle_report(
    a: &CompatAlgebra,
    phi: &TwoCochain,
    psi: &TwoCochain,
) -> Result<IdentityReport> {
    for c in [phi, psi] {
        if c.dim() != a.dim() {
            return Err(Error::DimensionMismatch {
                expected: a.dim(),
                found: c.dim(),
            });
        }
    }
    let limit = DEFAULT_WITNESS_LIMIT;
    let pair = symmetric_circle(phi, a.bracket2()).plus(&symmetric_circle(psi, a.bracket1()));
    Ok(cocycle_residual(a.bracket1(), phi)
        .report(Identity::Cocycle, limit)
        .merge(
            cocycle_residual(a.bracket2(), psi).report(Identity::Cocycle, limit),
            limit,
        )
        .merge(pair.report(Identity::CocyclePair, limit), limit))
}

pub fn compat_2cocycle_pair(a: &CompatAlgebra, phi: &TwoCochain, psi: &TwoCochain) -> Result<bool> {
    Ok(compat_2cocycle_report(a, phi, psi)?.holds)
}

/// `(b1 + tφ, b2 + tψ)`. Compatibility for every `t` additionally needs the
/// quadratic terms to vanish; check the result.
pub fn linear_deformation(
    a: &CompatAlgebra,
    phi: &TwoCochain,
    psi: &TwoCochain,
    t: &Scalar,
) -> Result<CompatAlgebra> {
    if !compat_2cocycle_pair(a, phi, psi)? {
        return Err(Error::NotCocyclePair);
    }
    if t.is_zero() {
        return Ok(a.clone());
    }
    let b1 = a.bracket1().plus(&phi.scale(t));
    let b2 = a.bracket2().plus(&psi.scale(t));
    let extra: Vec<String> = t.vars().iter().map(|v| v.to_string()).collect();
    let mut params = a.parameters().to_vec();
    for v in b1.vars().iter().chain(b2.vars().iter()) {
        if !params.iter().any(|p| **p == **v) {
            params.push(v.to_string());
        }
    }
    for e in extra {
        if !params.contains(&e) {
            params.push(e);
        }
    }
    CompatAlgebra::new(a.labels().to_vec(), params, b1, b2)
}

/// Nilindex of the pencil pair `(λ1 α + λ2 β, μ1 α + μ2 β)` of a nilpotent
/// algebra `(α, β)`.
pub fn pencil_nilindex_bound(
    a: &CompatAlgebra,
    l1: &Rational,
    l2: &Rational,
    m1: &Rational,
    m2: &Rational,
) -> Result<usize> {
    let Some(_) = nilindex(a)? else {
        return Err(Error::NotNilpotent);
    };
    let s = |x: &Rational| Scalar::Rational(x.clone());
    let b1 = a.bracket1().scale(&s(l1)).plus(&a.bracket2().scale(&s(l2)));
    let b2 = a.bracket1().scale(&s(m1)).plus(&a.bracket2().scale(&s(m2)));
    let p = a.map_brackets(b1, b2)?;
    nilindex(&p)?.ok_or(Error::NotNilpotent)
}

/// Unknown index of `φ(e_i, e_j)` on `e_k`, `i < j`.
fn cochain_unknowns(n: usize) -> Vec<(usize, usize, usize)> {
    let mut out = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            for k in 0..n {
                out.push((i, j, k));
            }
        }
    }
    out
}

/// Rows of the linear map `φ -> residual`, one row per residual coordinate.
fn residual_rows(
    n: usize,
    residual: impl Fn(&TwoCochain) -> Trilinear,
    offset: usize,
    width: usize,
    rows: &mut std::collections::BTreeMap<(u8, usize, usize, usize, usize), Vec<Rational>>,
    tag: u8,
) -> Result<()> {
    for (col, &(i, j, k)) in cochain_unknowns(n).iter().enumerate() {
        let unit = BracketTensor::new(n).with(i, j, k, 1);
        for (&(a, b, c), v) in residual(&unit).entries() {
            for (&m, coef) in v {
                let q = coef.as_rational().ok_or(Error::Parametric)?.clone();
                let row = rows
                    .entry((tag, a, b, c, m))
                    .or_insert_with(|| vec![Rational::zero(); width]);
                row[offset + col] += q;
            }
        }
    }
    Ok(())
}

/// `Z²(g, g)` as a subspace of cochain coordinates ordered by
/// `(i, j, k)`, `i < j`.
pub fn z2_space(g: &BracketTensor) -> Result<Subspace> {
    if g.is_parametric() {
        return Err(Error::Parametric);
    }
    if !jacobiator(g).is_zero() {
        return Err(Error::NotLie(Which::First));
    }
    let n = g.dim();
    let width = cochain_unknowns(n).len();
    let mut rows = Default::default();
    residual_rows(n, |phi| cocycle_residual(g, phi), 0, width, &mut rows, 0)?;
    let mut e = Echelon::new(width);
    for r in rows.into_values() {
        e.insert(r);
    }
    Ok(kernel_of_echelon(&e))
}

pub fn z2_dimension(g: &BracketTensor) -> Result<usize> {
    Ok(z2_space(g)?.dim())
}

/// Compatible 2-cocycles `(φ, ψ)` as one subspace, `φ` coordinates first.
pub fn z2_compat_space(a: &CompatAlgebra) -> Result<Subspace> {
    a.require_rational()?;
    let n = a.dim();
    let half = cochain_unknowns(n).len();
    let width = 2 * half;
    let mut rows = Default::default();
    residual_rows(
        n,
        |phi| cocycle_residual(a.bracket1(), phi),
        0,
        width,
        &mut rows,
        0,
    )?;
    residual_rows(
        n,
        |psi| cocycle_residual(a.bracket2(), psi),
        half,
        width,
        &mut rows,
        1,
    )?;
    residual_rows(
        n,
        |phi| symmetric_circle(phi, a.bracket2()),
        0,
        width,
        &mut rows,
        2,
    )?;
    residual_rows(
        n,
        |psi| symmetric_circle(psi, a.bracket1()),
        half,
        width,
        &mut rows,
        2,
    )?;
    let mut e = Echelon::new(width);
    for r in rows.into_values() {
        e.insert(r);
    }
    Ok(kernel_of_echelon(&e))
}

/// Converts a coordinate vector of [`z2_space`] back to a cochain.
pub fn cochain_from_coordinates(n: usize, v: &[Rational]) -> TwoCochain {
    let mut t = BracketTensor::new(n);
    for (c, &(i, j, k)) in v.iter().zip(cochain_unknowns(n).iter()) {
        if !c.is_zero() {
            t.add(i, j, k, Scalar::Rational(c.clone()));
        }
    }
    t
}

/// The model filiform bracket on `e_0..e_n`.
pub fn model_filiform(n: usize) -> BracketTensor {
    let mut t = BracketTensor::new(n + 1);
    for i in 1..n {
        t.add(0, i, i + 1, Scalar::Rational(Rational::one()));
    }
    t
}
