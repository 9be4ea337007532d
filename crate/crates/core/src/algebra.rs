//! Structure constants, compatible algebras and their defining identities.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use num_traits::Zero;

use crate::constraints::{ConstraintSet, Origin};
use crate::error::{Error, Result, Which};
use crate::linalg::{MatrixQ, Vector};
use crate::scalar::{Assignment, Poly, Rational, Scalar, Var};

/// Sparse vector of scalars keyed by basis index; zeros are never stored.
pub type SparseVec = BTreeMap<usize, Scalar>;

pub fn sparse_add(acc: &mut SparseVec, k: usize, c: &Scalar) {
    if c.is_zero() {
        return;
    }
    match acc.get_mut(&k) {
        Some(v) => {
            *v += c;
            if v.is_zero() {
                acc.remove(&k);
            }
        }
        None => {
            acc.insert(k, c.clone());
        }
    }
}

pub fn sparse_from_dense(v: &[Scalar]) -> SparseVec {
    v.iter()
        .enumerate()
        .filter(|(_, c)| !c.is_zero())
        .map(|(k, c)| (k, c.clone()))
        .collect()
}

pub fn sparse_from_rational(v: &[Rational]) -> SparseVec {
    v.iter()
        .enumerate()
        .filter(|(_, c)| !c.is_zero())
        .map(|(k, c)| (k, Scalar::Rational(c.clone())))
        .collect()
}

pub fn sparse_to_dense(v: &SparseVec, dim: usize) -> Vec<Scalar> {
    let mut out = vec![Scalar::zero(); dim];
    for (&k, c) in v {
        out[k] = c.clone();
    }
    out
}

pub fn sparse_to_rational(v: &SparseVec, dim: usize) -> Result<Vector> {
    let mut out = vec![Rational::zero(); dim];
    for (&k, c) in v {
        out[k] = c.as_rational().ok_or(Error::Parametric)?.clone();
    }
    Ok(out)
}

/// One antisymmetric product given by structure constants. Only pairs
/// `i < j` are stored; `[e_j, e_i] = -[e_i, e_j]` is implied.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct BracketTensor {
    dim: usize,
    products: BTreeMap<(usize, usize), SparseVec>,
}

/// A bilinear antisymmetric map with values in the algebra itself.
pub type TwoCochain = BracketTensor;

impl BracketTensor {
    pub fn new(dim: usize) -> Self {
        BracketTensor {
            dim,
            products: BTreeMap::new(),
        }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    /// `[e_i, e_j] += c e_k`, 0-based. Products `[e_i, e_i]` must vanish.
    pub fn add(&mut self, i: usize, j: usize, k: usize, c: impl Into<Scalar>) {
        let c = c.into();
        assert!(
            i < self.dim && j < self.dim && k < self.dim,
            "index out of range"
        );
        if c.is_zero() {
            return;
        }
        assert!(i != j, "[e_i, e_i] must vanish");
        let (key, c) = if i < j { ((i, j), c) } else { ((j, i), -c) };
        let entry = self.products.entry(key).or_default();
        sparse_add(entry, k, &c);
        if entry.is_empty() {
            self.products.remove(&key);
        }
    }

    pub fn with(mut self, i: usize, j: usize, k: usize, c: impl Into<Scalar>) -> Self {
        self.add(i, j, k, c);
        self
    }

    /// `[e_i, e_j]` as a sparse vector.
    pub fn product(&self, i: usize, j: usize) -> SparseVec {
        match i.cmp(&j) {
            std::cmp::Ordering::Equal => SparseVec::new(),
            std::cmp::Ordering::Less => self.products.get(&(i, j)).cloned().unwrap_or_default(),
            std::cmp::Ordering::Greater => self
                .products
                .get(&(j, i))
                .map(|v| v.iter().map(|(&k, c)| (k, -c)).collect())
                .unwrap_or_default(),
        }
    }

    pub fn entry(&self, i: usize, j: usize, k: usize) -> Scalar {
        self.product(i, j).remove(&k).unwrap_or_default()
    }

    /// Stored products `(i, j) -> [e_i, e_j]` with `i < j`.
    pub fn pairs(&self) -> impl Iterator<Item = (&(usize, usize), &SparseVec)> {
        self.products.iter()
    }

    pub fn is_zero(&self) -> bool {
        self.products.is_empty()
    }

    pub fn is_parametric(&self) -> bool {
        self.products
            .values()
            .any(|v| v.values().any(|c| matches!(c, Scalar::Poly(_))))
    }

    pub fn vars(&self) -> BTreeSet<Var> {
        self.products
            .values()
            .flat_map(|v| v.values().flat_map(Scalar::vars))
            .collect()
    }

    fn check_len(&self, len: usize) -> Result<()> {
        if len != self.dim {
            return Err(Error::DimensionMismatch {
                expected: self.dim,
                found: len,
            });
        }
        Ok(())
    }

    pub fn apply_sparse(&self, x: &SparseVec, y: &SparseVec) -> SparseVec {
        let mut out = SparseVec::new();
        for (&(i, j), v) in &self.products {
            let xi = x.get(&i);
            let xj = x.get(&j);
            let yi = y.get(&i);
            let yj = y.get(&j);
            let mut coef = Scalar::zero();
            if let (Some(a), Some(b)) = (xi, yj) {
                coef += &(a * b);
            }
            if let (Some(a), Some(b)) = (xj, yi) {
                coef -= &(a * b);
            }
            if coef.is_zero() {
                continue;
            }
            for (&k, c) in v {
                sparse_add(&mut out, k, &(&coef * c));
            }
        }
        out
    }

    pub fn apply(&self, x: &[Scalar], y: &[Scalar]) -> Result<Vec<Scalar>> {
        self.check_len(x.len())?;
        self.check_len(y.len())?;
        let out = self.apply_sparse(&sparse_from_dense(x), &sparse_from_dense(y));
        Ok(sparse_to_dense(&out, self.dim))
    }

    pub fn apply_rational(&self, x: &[Rational], y: &[Rational]) -> Result<Vector> {
        self.check_len(x.len())?;
        self.check_len(y.len())?;
        let mut out = vec![Rational::zero(); self.dim];
        for (&(i, j), v) in &self.products {
            let coef = &x[i] * &y[j] - &x[j] * &y[i];
            if coef.is_zero() {
                continue;
            }
            for (&k, c) in v {
                out[k] += &coef * c.as_rational().ok_or(Error::Parametric)?;
            }
        }
        Ok(out)
    }

    pub fn scale(&self, c: &Scalar) -> BracketTensor {
        let mut out = BracketTensor::new(self.dim);
        for (&(i, j), v) in &self.products {
            for (&k, a) in v {
                out.add(i, j, k, a * c);
            }
        }
        out
    }

    pub fn plus(&self, other: &BracketTensor) -> BracketTensor {
        assert_eq!(self.dim, other.dim, "tensor dimension mismatch");
        let mut out = self.clone();
        for (&(i, j), v) in &other.products {
            for (&k, a) in v {
                out.add(i, j, k, a.clone());
            }
        }
        out
    }

    pub fn minus(&self, other: &BracketTensor) -> BracketTensor {
        self.plus(&other.scale(&Scalar::from_int(-1)))
    }

    fn map_scalars(&self, f: impl Fn(&Scalar) -> Scalar) -> BracketTensor {
        let mut out = BracketTensor::new(self.dim);
        for (&(i, j), v) in &self.products {
            for (&k, a) in v {
                out.add(i, j, k, f(a));
            }
        }
        out
    }

    /// Substitutes the assigned parameters, keeping the others formal.
    pub fn substitute(&self, assignment: &Assignment) -> BracketTensor {
        self.map_scalars(|a| a.substitute_partial(assignment))
    }

    pub fn substitute_polys(&self, map: &BTreeMap<String, Poly>) -> BracketTensor {
        self.map_scalars(|a| a.substitute_polys(map))
    }

    /// Matrix of `y -> [x, y]`.
    pub fn adjoint(&self, x: &[Rational]) -> Result<MatrixQ> {
        self.check_len(x.len())?;
        let mut m = MatrixQ::zeros(self.dim, self.dim);
        for j in 0..self.dim {
            let col = self.apply_rational(x, &crate::linalg::unit_vector(self.dim, j))?;
            for (i, c) in col.into_iter().enumerate() {
                m.set(i, j, c);
            }
        }
        Ok(m)
    }

    /// The same products with the basis relabeled: `e_i` becomes `e_{perm[i]}`.
    pub fn permute(&self, perm: &[usize]) -> BracketTensor {
        let mut out = BracketTensor::new(self.dim);
        for (&(i, j), v) in &self.products {
            for (&k, a) in v {
                out.add(perm[i], perm[j], perm[k], a.clone());
            }
        }
        out
    }

    /// Embeds into a larger space, keeping indices.
    pub fn extend_dim(&self, dim: usize) -> BracketTensor {
        assert!(dim >= self.dim);
        BracketTensor {
            dim,
            products: self.products.clone(),
        }
    }

    /// Rewrites the tensor in a new basis. `basis[a]` gives the old
    /// coordinates of new vector `a`; `inverse` maps old coordinates to new.
    pub fn change_basis(&self, basis: &[Vector], inverse: &MatrixQ) -> Result<BracketTensor> {
        let n = self.dim;
        let mut out = BracketTensor::new(n);
        for a in 0..n {
            for b in a + 1..n {
                let prod = self.apply_rational(&basis[a], &basis[b])?;
                for (k, c) in inverse.apply(&prod).into_iter().enumerate() {
                    out.add(a, b, k, Scalar::Rational(c));
                }
            }
        }
        Ok(out)
    }
}

impl fmt::Display for BracketTensor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (&(i, j), v) in &self.products {
            let terms: Vec<String> = v.iter().map(|(k, c)| format!("({c})*e{}", k + 1)).collect();
            writeln!(f, "[e{}, e{}] = {}", i + 1, j + 1, terms.join(" + "))?;
        }
        Ok(())
    }
}

/// Values of a trilinear map on triples `i < j < k`; the maps in this crate
/// are alternating, so these determine it.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Trilinear {
    dim: usize,
    values: BTreeMap<(usize, usize, usize), SparseVec>,
}

impl Trilinear {
    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn is_zero(&self) -> bool {
        self.values.is_empty()
    }

    pub fn get(&self, i: usize, j: usize, k: usize) -> SparseVec {
        self.values.get(&(i, j, k)).cloned().unwrap_or_default()
    }

    pub fn entries(&self) -> impl Iterator<Item = (&(usize, usize, usize), &SparseVec)> {
        self.values.iter()
    }

    /// Keeps only the triples satisfying `keep`.
    pub fn retain(&mut self, mut keep: impl FnMut(usize, usize, usize) -> bool) {
        self.values.retain(|&(i, j, k), _| keep(i, j, k));
    }

    pub fn plus(&self, other: &Trilinear) -> Trilinear {
        let mut out = self.clone();
        for (t, v) in &other.values {
            let e = out.values.entry(*t).or_default();
            for (&k, c) in v {
                sparse_add(e, k, c);
            }
            if e.is_empty() {
                out.values.remove(t);
            }
        }
        out
    }

    pub fn minus(&self, other: &Trilinear) -> Trilinear {
        let neg = Trilinear {
            dim: other.dim,
            values: other
                .values
                .iter()
                .map(|(t, v)| (*t, v.iter().map(|(&k, c)| (k, -c)).collect()))
                .collect(),
        };
        self.plus(&neg)
    }

    pub fn report(&self, identity: Identity, limit: usize) -> IdentityReport {
        let mut witnesses = Vec::new();
        let mut failures = 0;
        for (&triple, v) in &self.values {
            for (&coordinate, residual) in v {
                failures += 1;
                if witnesses.len() < limit {
                    witnesses.push(Witness {
                        identity,
                        triple,
                        coordinate,
                        residual: residual.clone(),
                    });
                }
            }
        }
        IdentityReport {
            holds: failures == 0,
            failures,
            witnesses,
        }
    }
}

/// `φ∘ψ (x,y,z) = φ(ψ(x,y),z) + φ(ψ(y,z),x) + φ(ψ(z,x),y)` on basis triples.
pub fn circle(phi: &BracketTensor, psi: &BracketTensor) -> Trilinear {
    assert_eq!(phi.dim, psi.dim, "cochain dimension mismatch");
    let n = phi.dim;
    let mut values = BTreeMap::new();
    // phi(e_m, e_k) for every m, indexed by k: cache rows of products.
    let term = |a: usize, b: usize, c: usize, acc: &mut SparseVec| {
        for (&m, coef) in &psi.product(a, b) {
            for (&t, d) in &phi.product(m, c) {
                sparse_add(acc, t, &(coef * d));
            }
        }
    };
    for i in 0..n {
        for j in i + 1..n {
            for k in j + 1..n {
                let mut acc = SparseVec::new();
                term(i, j, k, &mut acc);
                term(j, k, i, &mut acc);
                term(k, i, j, &mut acc);
                if !acc.is_empty() {
                    values.insert((i, j, k), acc);
                }
            }
        }
    }
    Trilinear { dim: n, values }
}

/// `circle(φ,ψ) + circle(ψ,φ)`.
pub fn symmetric_circle(phi: &BracketTensor, psi: &BracketTensor) -> Trilinear {
    circle(phi, psi).plus(&circle(psi, phi))
}

pub fn jacobiator(t: &BracketTensor) -> Trilinear {
    circle(t, t)
}

pub const DEFAULT_WITNESS_LIMIT: usize = 32;

/// Which identity a residual belongs to.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub enum Identity {
    /// Jacobi identity of a single product.
    Jacobi,
    Jacobi1,
    Jacobi2,
    /// The six-term identity coupling both products.
    Mixed,
    /// Linearized Jacobi identity of a cochain against a bracket.
    Cocycle,
    /// Twelve-term condition coupling a pair of cochains.
    CocyclePair,
}

impl fmt::Display for Identity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Identity::Jacobi => "J",
            Identity::Jacobi1 => "J1",
            Identity::Jacobi2 => "J2",
            Identity::Mixed => "L",
            Identity::Cocycle => "Z",
            Identity::CocyclePair => "Zpair",
        };
        f.write_str(s)
    }
}

/// A nonzero coefficient of a residual. Indices are 0-based.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Witness {
    pub identity: Identity,
    pub triple: (usize, usize, usize),
    pub coordinate: usize,
    pub residual: Scalar,
}

impl fmt::Display for Witness {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let (i, j, k) = self.triple;
        write!(
            f,
            "{}(e{},e{},e{}) has coefficient {} on e{}",
            self.identity,
            i + 1,
            j + 1,
            k + 1,
            self.residual,
            self.coordinate + 1
        )
    }
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct IdentityReport {
    pub holds: bool,
    /// Number of nonzero residual coefficients, including those beyond the
    /// witness limit.
    pub failures: usize,
    pub witnesses: Vec<Witness>,
}

impl IdentityReport {
    pub fn ok() -> Self {
        IdentityReport {
            holds: true,
            failures: 0,
            witnesses: Vec::new(),
        }
    }

    pub fn merge(mut self, other: IdentityReport, limit: usize) -> Self {
        self.holds &= other.holds;
        self.failures += other.failures;
        for w in other.witnesses {
            if self.witnesses.len() < limit {
                self.witnesses.push(w);
            }
        }
        self
    }

    pub fn into_result(self) -> Result<()> {
        match self.witnesses.first() {
            None => Ok(()),
            Some(w) => Err(Error::IdentityFails {
                identity: w.identity.to_string(),
                triple: w.triple,
                coordinate: w.coordinate + 1,
            }),
        }
    }
}

pub fn check_jacobi(t: &BracketTensor) -> IdentityReport {
    check_jacobi_with(t, DEFAULT_WITNESS_LIMIT)
}

pub fn check_jacobi_with(t: &BracketTensor, limit: usize) -> IdentityReport {
    jacobiator(t).report(Identity::Jacobi, limit)
}

/// Two Lie brackets on one space, with basis labels and declared parameters.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct CompatAlgebra {
    labels: Vec<String>,
    parameters: Vec<String>,
    bracket1: BracketTensor,
    bracket2: BracketTensor,
}

pub fn default_labels(dim: usize, first: usize) -> Vec<String> {
    (0..dim).map(|i| format!("e{}", i + first)).collect()
}

impl CompatAlgebra {
    /// Validates dimensions and that all parameters are declared.
    pub fn new(
        labels: Vec<String>,
        parameters: Vec<String>,
        bracket1: BracketTensor,
        bracket2: BracketTensor,
    ) -> Result<Self> {
        let dim = labels.len();
        for t in [&bracket1, &bracket2] {
            if t.dim() != dim {
                return Err(Error::DimensionMismatch {
                    expected: dim,
                    found: t.dim(),
                });
            }
        }
        let declared: BTreeSet<&str> = parameters.iter().map(String::as_str).collect();
        for v in bracket1.vars().iter().chain(bracket2.vars().iter()) {
            if !declared.contains(&**v) {
                return Err(Error::UndeclaredParameter(v.to_string()));
            }
        }
        Ok(CompatAlgebra {
            labels,
            parameters,
            bracket1,
            bracket2,
        })
    }

    /// Labels `e1..en`; parameters collected from the tensors in name order.
    pub fn from_brackets(bracket1: BracketTensor, bracket2: BracketTensor) -> Self {
        let dim = bracket1.dim();
        let params: BTreeSet<Var> = bracket1.vars().into_iter().chain(bracket2.vars()).collect();
        CompatAlgebra::new(
            default_labels(dim, 1),
            params.iter().map(|v| v.to_string()).collect(),
            bracket1,
            bracket2,
        )
        .expect("consistent by construction")
    }

    pub fn lie(bracket: BracketTensor) -> Self {
        let dim = bracket.dim();
        CompatAlgebra::from_brackets(bracket, BracketTensor::new(dim))
    }

    pub fn abelian(dim: usize) -> Self {
        CompatAlgebra::from_brackets(BracketTensor::new(dim), BracketTensor::new(dim))
    }

    pub fn with_labels(mut self, labels: Vec<String>) -> Result<Self> {
        if labels.len() != self.dim() {
            return Err(Error::DimensionMismatch {
                expected: self.dim(),
                found: labels.len(),
            });
        }
        self.labels = labels;
        Ok(self)
    }

    /// Declares additional parameters, keeping the existing order.
    pub fn with_parameters(mut self, extra: &[String]) -> Self {
        for p in extra {
            if !self.parameters.contains(p) {
                self.parameters.push(p.clone());
            }
        }
        self
    }

    pub fn dim(&self) -> usize {
        self.labels.len()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn parameters(&self) -> &[String] {
        &self.parameters
    }

    pub fn bracket1(&self) -> &BracketTensor {
        &self.bracket1
    }

    pub fn bracket2(&self) -> &BracketTensor {
        &self.bracket2
    }

    pub fn bracket(&self, which: Which) -> &BracketTensor {
        match which {
            Which::First => &self.bracket1,
            Which::Second => &self.bracket2,
        }
    }

    /// The double bracket `[[x,y]] = [x,y]_1 + [x,y]_2`.
    pub fn sum_bracket(&self) -> BracketTensor {
        self.bracket1.plus(&self.bracket2)
    }

    pub fn swapped(&self) -> CompatAlgebra {
        CompatAlgebra {
            labels: self.labels.clone(),
            parameters: self.parameters.clone(),
            bracket1: self.bracket2.clone(),
            bracket2: self.bracket1.clone(),
        }
    }

    pub fn is_parametric(&self) -> bool {
        self.bracket1.is_parametric() || self.bracket2.is_parametric()
    }

    pub fn require_rational(&self) -> Result<()> {
        if self.is_parametric() {
            Err(Error::Parametric)
        } else {
            Ok(())
        }
    }

    /// Substitutes values for some parameters; the others stay formal.
    pub fn substitute(&self, assignment: &Assignment) -> CompatAlgebra {
        CompatAlgebra {
            labels: self.labels.clone(),
            parameters: self
                .parameters
                .iter()
                .filter(|p| !assignment.contains_key(*p))
                .cloned()
                .collect(),
            bracket1: self.bracket1.substitute(assignment),
            bracket2: self.bracket2.substitute(assignment),
        }
    }

    /// Substitutes polynomials for parameters; remaining parameters are those
    /// still occurring or declared and not replaced.
    pub fn substitute_polys(&self, map: &BTreeMap<String, Poly>) -> CompatAlgebra {
        let b1 = self.bracket1.substitute_polys(map);
        let b2 = self.bracket2.substitute_polys(map);
        let mut params: Vec<String> = self
            .parameters
            .iter()
            .filter(|p| !map.contains_key(*p))
            .cloned()
            .collect();
        for v in b1.vars().into_iter().chain(b2.vars()) {
            if !params.iter().any(|p| **p == *v) {
                params.push(v.to_string());
            }
        }
        CompatAlgebra {
            labels: self.labels.clone(),
            parameters: params,
            bracket1: b1,
            bracket2: b2,
        }
    }

    pub fn map_brackets(&self, b1: BracketTensor, b2: BracketTensor) -> Result<CompatAlgebra> {
        CompatAlgebra::new(self.labels.clone(), self.parameters.clone(), b1, b2)
    }
}

/// `L = circle(b2, b1) + circle(b1, b2)`, the six-term mixed Jacobi residual.
pub fn mixed_jacobiator(a: &CompatAlgebra) -> Trilinear {
    symmetric_circle(&a.bracket1, &a.bracket2)
}

/// Both Jacobi identities must hold; then reports the mixed identity.
pub fn check_compatibility(a: &CompatAlgebra) -> Result<IdentityReport> {
    check_compatibility_with(a, DEFAULT_WITNESS_LIMIT)
}

pub fn check_compatibility_with(a: &CompatAlgebra, limit: usize) -> Result<IdentityReport> {
    if !jacobiator(&a.bracket1).is_zero() {
        return Err(Error::NotLie(Which::First));
    }
    if !jacobiator(&a.bracket2).is_zero() {
        return Err(Error::NotLie(Which::Second));
    }
    Ok(mixed_jacobiator(a).report(Identity::Mixed, limit))
}

/// All three identities, without the precondition short-circuit.
pub fn check_all(a: &CompatAlgebra, limit: usize) -> IdentityReport {
    jacobiator(&a.bracket1)
        .report(Identity::Jacobi1, limit)
        .merge(
            jacobiator(&a.bracket2).report(Identity::Jacobi2, limit),
            limit,
        )
        .merge(mixed_jacobiator(a).report(Identity::Mixed, limit), limit)
}

pub fn is_compatible(a: &CompatAlgebra) -> bool {
    check_all(a, 0).holds
}

pub fn pencil(a: &CompatAlgebra, l1: &Scalar, l2: &Scalar) -> BracketTensor {
    a.bracket1.scale(l1).plus(&a.bracket2.scale(l2))
}

/// Matrix of `y -> [x, y]` in the chosen product.
pub fn adjoint_operator(a: &CompatAlgebra, which: Which, x: &[Scalar]) -> Result<MatrixQ> {
    let t = a.bracket(which);
    if t.is_parametric() {
        return Err(Error::Parametric);
    }
    let x: Vector = x
        .iter()
        .map(|c| c.as_rational().cloned().ok_or(Error::Parametric))
        .collect::<Result<_>>()?;
    t.adjoint(&x)
}

/// Every coefficient of every Jacobi and mixed residual, as equations in the
/// parameters. Nonzero rational residuals become constant equations.
pub fn extract_constraints(a: &CompatAlgebra) -> ConstraintSet {
    let mut set = ConstraintSet::new();
    let residuals = [
        (Identity::Jacobi1, jacobiator(&a.bracket1)),
        (Identity::Jacobi2, jacobiator(&a.bracket2)),
        (Identity::Mixed, mixed_jacobiator(a)),
    ];
    for (identity, r) in residuals {
        for (&triple, v) in r.entries() {
            for (&coordinate, c) in v {
                set.push(
                    c.to_poly(),
                    Origin {
                        identity,
                        triple,
                        coordinate,
                    },
                );
            }
        }
    }
    set
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{int, rat};

    fn e(i: usize) -> usize {
        i - 1
    }

    fn ln(n: usize) -> BracketTensor {
        let mut t = BracketTensor::new(n);
        for i in 2..n {
            t.add(e(1), e(i), e(i + 1), 1);
        }
        t
    }

    /// Jacobiator evaluated directly from the definition on dense vectors.
    fn brute_jacobi(t: &BracketTensor, i: usize, j: usize, k: usize) -> Vec<Scalar> {
        let n = t.dim();
        let u = |a: usize| {
            let mut v = vec![Scalar::zero(); n];
            v[a] = Scalar::one();
            v
        };
        let br = |x: &[Scalar], y: &[Scalar]| t.apply(x, y).unwrap();
        let a = br(&br(&u(i), &u(j)), &u(k));
        let b = br(&br(&u(j), &u(k)), &u(i));
        let c = br(&br(&u(k), &u(i)), &u(j));
        (0..n).map(|m| &(&a[m] + &b[m]) + &c[m]).collect()
    }

    #[test]
    fn antisymmetric_storage() {
        let t = BracketTensor::new(3).with(2, 0, 1, 5);
        assert_eq!(t.entry(0, 2, 1), Scalar::from_int(-5));
        assert_eq!(t.entry(2, 0, 1), Scalar::from_int(5));
        assert!(t.product(1, 1).is_empty());
    }

    #[test]
    fn model_filiform_product() {
        let t = ln(7);
        let x = sparse_to_dense(&[(e(1), Scalar::one())].into_iter().collect(), 7);
        let y = sparse_to_dense(&[(e(3), Scalar::one())].into_iter().collect(), 7);
        let z = t.apply(&x, &y).unwrap();
        assert_eq!(
            sparse_from_dense(&z),
            [(e(4), Scalar::one())].into_iter().collect()
        );
        assert!(t.apply(&x, &x).unwrap().iter().all(Scalar::is_zero));
        assert!(t.apply(&x[..3], &y).is_err());
    }

    #[test]
    fn jacobi_of_model_filiform() {
        assert!(check_jacobi(&ln(7)).holds);
    }

    #[test]
    fn jacobi_violation_matches_brute_force() {
        let t = BracketTensor::new(3).with(0, 1, 0, 1).with(0, 2, 1, 1);
        let report = check_jacobi(&t);
        assert!(!report.holds);
        let oracle = brute_jacobi(&t, 0, 1, 2);
        assert_eq!(oracle, vec![Scalar::zero(), Scalar::one(), Scalar::zero()]);
        assert_eq!(report.witnesses.len(), 1);
        let w = &report.witnesses[0];
        assert_eq!(
            (w.triple, w.coordinate, w.residual.clone()),
            ((0, 1, 2), 1, Scalar::one())
        );
    }

    #[test]
    fn self_pair_is_compatible() {
        let a = CompatAlgebra::from_brackets(ln(6), ln(6));
        assert!(check_compatibility(&a).unwrap().holds);
    }

    #[test]
    fn non_lie_bracket_is_named() {
        let bad = BracketTensor::new(3).with(0, 1, 0, 1).with(0, 2, 1, 1);
        let a = CompatAlgebra::from_brackets(ln(3), bad);
        assert!(matches!(
            check_compatibility(&a),
            Err(Error::NotLie(Which::Second))
        ));
    }

    #[test]
    fn pencil_endpoints() {
        let a = CompatAlgebra::from_brackets(ln(5), BracketTensor::new(5).with(1, 2, 4, 3));
        assert_eq!(pencil(&a, &Scalar::one(), &Scalar::zero()), *a.bracket1());
        assert_eq!(pencil(&a, &Scalar::zero(), &Scalar::one()), *a.bracket2());
    }

    #[test]
    fn adjoint_shift() {
        let a = CompatAlgebra::lie(ln(7));
        let x = sparse_to_dense(&[(0, Scalar::one())].into_iter().collect(), 7);
        let p = adjoint_operator(&a, Which::First, &x).unwrap();
        for i in 0..7 {
            for j in 0..7 {
                let expect = if (1..6).contains(&j) && i == j + 1 {
                    int(1)
                } else {
                    int(0)
                };
                assert_eq!(*p.get(i, j), expect);
            }
        }
        let z = sparse_to_dense(&[(6, Scalar::one())].into_iter().collect(), 7);
        assert!(adjoint_operator(&a, Which::First, &z).unwrap().is_zero());
        let px = vec![Scalar::var("t"); 7];
        assert!(matches!(
            adjoint_operator(&a, Which::First, &px),
            Err(Error::Parametric)
        ));
    }

    #[test]
    fn undeclared_parameter_rejected() {
        let t = BracketTensor::new(2).with(0, 1, 1, Scalar::var("a"));
        let err = CompatAlgebra::new(default_labels(2, 1), vec![], t, BracketTensor::new(2));
        assert!(matches!(err, Err(Error::UndeclaredParameter(ref p)) if p == "a"));
    }

    #[test]
    fn parameter_free_constraints_empty() {
        let a = CompatAlgebra::from_brackets(ln(6), BracketTensor::new(6));
        assert!(extract_constraints(&a).is_empty());
    }

    #[test]
    fn substitution_keeps_unassigned() {
        let t = BracketTensor::new(3).with(0, 1, 2, "a*b".parse::<Scalar>().unwrap());
        let a = CompatAlgebra::from_brackets(t, BracketTensor::new(3));
        let mut asg = Assignment::new();
        asg.insert("a".into(), rat(1, 2));
        let b = a.substitute(&asg);
        assert_eq!(b.parameters(), ["b".to_string()]);
        assert_eq!(b.bracket1().entry(0, 1, 2), "1/2*b".parse().unwrap());
    }
}
