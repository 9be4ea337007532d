//! Solvable extensions `N ⋊ span(z_1, ..., z_r)`.
//!
//! A generator `z` acts on the base through a pair of matrices `(D1, D2)`,
//! read as adjoint operators: `[z, e_i] = D1 e_i` and `{z, e_i} = D2 e_i`.

use std::collections::BTreeMap;

use num_traits::Zero;

use crate::algebra::{
    circle, jacobiator, mixed_jacobiator, BracketTensor, CompatAlgebra, Identity, IdentityReport,
    Trilinear, DEFAULT_WITNESS_LIMIT,
};
pub use crate::constraints::{ConstraintSet, Contradiction, Origin, Status};
use crate::derivations::{
    compat_derivation_space, derivation_space, diagonal_derivations, inner_derivations,
};
use crate::error::{Error, Result};
use crate::linalg::{MatrixQ, Subspace, Vector};
use crate::scalar::{Poly, Scalar};
use crate::structure::{verify_nilradical, WitnessConfig};

/// `m[k][j]` is the coefficient of `e_k` in `D e_j`.
pub type ScalarMatrix = Vec<Vec<Scalar>>;

pub fn scalar_matrix(m: &MatrixQ) -> ScalarMatrix {
    (0..m.rows())
        .map(|i| {
            m.row(i)
                .iter()
                .map(|c| Scalar::Rational(c.clone()))
                .collect()
        })
        .collect()
}

pub fn zero_matrix(n: usize) -> ScalarMatrix {
    vec![vec![Scalar::zero(); n]; n]
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Generator {
    pub label: String,
    pub d1: ScalarMatrix,
    pub d2: ScalarMatrix,
}

impl Generator {
    pub fn new(label: &str, d1: ScalarMatrix, d2: ScalarMatrix) -> Self {
        Generator {
            label: label.to_string(),
            d1,
            d2,
        }
    }

    pub fn rational(label: &str, d1: &MatrixQ, d2: &MatrixQ) -> Self {
        Generator::new(label, scalar_matrix(d1), scalar_matrix(d2))
    }
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct ExtensionSpec {
    pub base: CompatAlgebra,
    pub generators: Vec<Generator>,
    /// Products among the generators, as brackets on the extended space.
    /// Only pairs of generator indices are read. Default zero.
    pub generator_brackets: Option<(BracketTensor, BracketTensor)>,
    /// Parameters appearing in the matrices beyond those of the base.
    pub parameters: Vec<String>,
}

impl ExtensionSpec {
    pub fn new(base: CompatAlgebra, generators: Vec<Generator>) -> Self {
        ExtensionSpec {
            base,
            generators,
            generator_brackets: None,
            parameters: Vec::new(),
        }
    }

    fn validate(&self) -> Result<()> {
        let n = self.base.dim();
        for g in &self.generators {
            for m in [&g.d1, &g.d2] {
                if m.len() != n || m.iter().any(|r| r.len() != n) {
                    return Err(Error::DimensionMismatch {
                        expected: n,
                        found: m.len(),
                    });
                }
            }
        }
        if let Some((b1, b2)) = &self.generator_brackets {
            let total = n + self.generators.len();
            for b in [b1, b2] {
                if b.dim() != total {
                    return Err(Error::DimensionMismatch {
                        expected: total,
                        found: b.dim(),
                    });
                }
            }
        }
        Ok(())
    }
}

/// Assembles the brackets without checking any identity.
pub fn assemble(spec: &ExtensionSpec) -> Result<CompatAlgebra> {
    spec.validate()?;
    let n = spec.base.dim();
    let total = n + spec.generators.len();
    let mut b1 = spec.base.bracket1().extend_dim(total);
    let mut b2 = spec.base.bracket2().extend_dim(total);
    for (g_idx, g) in spec.generators.iter().enumerate() {
        let z = n + g_idx;
        for j in 0..n {
            for k in 0..n {
                // [e_j, z] = -D e_j
                if !g.d1[k][j].is_zero() {
                    b1.add(j, z, k, -&g.d1[k][j]);
                }
                if !g.d2[k][j].is_zero() {
                    b2.add(j, z, k, -&g.d2[k][j]);
                }
            }
        }
    }
    if let Some((g1, g2)) = &spec.generator_brackets {
        for (src, dst) in [(g1, &mut b1), (g2, &mut b2)] {
            for (&(i, j), v) in src.pairs() {
                if i >= n && j >= n {
                    for (&k, c) in v {
                        dst.add(i, j, k, c.clone());
                    }
                }
            }
        }
    }
    let mut labels = spec.base.labels().to_vec();
    labels.extend(spec.generators.iter().map(|g| g.label.clone()));
    let mut params = spec.base.parameters().to_vec();
    for p in &spec.parameters {
        if !params.contains(p) {
            params.push(p.clone());
        }
    }
    for v in b1.vars().iter().chain(b2.vars().iter()) {
        if !params.iter().any(|p| **p == **v) {
            params.push(v.to_string());
        }
    }
    CompatAlgebra::new(labels, params, b1, b2)
}

fn only_one_generator(t: &mut Trilinear, n: usize) {
    t.retain(|_, j, k| j < n && k >= n);
}

/// For each generator `z`: `D1 ∈ Der(b1)`, `D2 ∈ Der(b2)` and the mixed
/// condition linking them. Reported as the residuals of `J1`, `J2` and `L`
/// on triples `(e_i, e_j, z)`.
pub fn check_extension_conditions(spec: &ExtensionSpec) -> Result<IdentityReport> {
    let a = assemble(spec)?;
    let n = spec.base.dim();
    let mut j1 = jacobiator(a.bracket1());
    let mut j2 = jacobiator(a.bracket2());
    let mut l = mixed_jacobiator(&a);
    for t in [&mut j1, &mut j2, &mut l] {
        only_one_generator(t, n);
    }
    let limit = DEFAULT_WITNESS_LIMIT;
    Ok(j1
        .report(Identity::Jacobi1, limit)
        .merge(j2.report(Identity::Jacobi2, limit), limit)
        .merge(l.report(Identity::Mixed, limit), limit))
}

/// The semidirect product, after checking the extension conditions and the
/// full set of identities (which includes those among generators).
pub fn build_semidirect(spec: &ExtensionSpec) -> Result<CompatAlgebra> {
    check_extension_conditions(spec)?.into_result()?;
    let a = assemble(spec)?;
    crate::algebra::check_all(&a, 1).into_result()?;
    Ok(a)
}

/// Extension by `x_i` acting through `d_i` in the first bracket and `y_j`
/// acting through `d'_j` in the second, all from the diagonal torus of the
/// base's derivations, with commuting generators.
pub fn torus_extension(
    base: &CompatAlgebra,
    d: &[MatrixQ],
    d_prime: &[MatrixQ],
) -> Result<CompatAlgebra> {
    let n = base.dim();
    let torus = diagonal_derivations(&compat_derivation_space(base)?)?;
    for list in [d, d_prime] {
        let mut e = crate::linalg::Echelon::new(n * n);
        for m in list {
            if m.rows() != n || !m.is_square() || !torus.contains(m) {
                return Err(Error::NotTorus);
            }
            if !e.insert(m.flat().to_vec()) {
                return Err(Error::NotTorus);
            }
        }
    }
    let zero = MatrixQ::zeros(n, n);
    let mut gens = Vec::new();
    for (i, m) in d.iter().enumerate() {
        gens.push(Generator::rational(&format!("x{}", i + 1), m, &zero));
    }
    for (j, m) in d_prime.iter().enumerate() {
        gens.push(Generator::rational(&format!("y{}", j + 1), &zero, m));
    }
    build_semidirect(&ExtensionSpec::new(base.clone(), gens))
}

/// Verifies that `base` sits inside `a` as the first coordinates and is the
/// nilradical there.
pub fn base_is_nilradical(a: &CompatAlgebra, base_dim: usize, cfg: WitnessConfig) -> Result<bool> {
    let n = Subspace::coordinate(a.dim(), &(0..base_dim).collect::<Vec<_>>());
    verify_nilradical(a, &n, cfg)
}

/// How the action matrices of the generic extension are shaped.
#[derive(Clone, PartialEq, Eq, Debug)]
pub enum Ansatz {
    /// `D1` a generic element of `Der(b1)`, `D2` of `Der(b2)`. The part of
    /// `D1` that a change `z -> z + y` with `y` in the base removes is set to
    /// zero.
    Derivations,
    /// As `Derivations`, with the diagonal part of each `D1` fixed to a torus
    /// vector of `Der(b1)`: generator `g` gets torus basis vector `order[g]`.
    /// Products among generators are generic elements of the base.
    NonNilpotent { order: Vec<usize> },
    /// Every matrix entry a free parameter.
    Generic,
}

/// A generic element of `space`, parameterized in the coordinates that are
/// pivots when matrices are read column by column. The parameter for the
/// coefficient of `e_k` in `D e_j` is `{prefix}{j}_{k}` (1-based), so `Der(L_n)`
/// gets the usual `a1_1, ..., a1_n, a2_2, ..., a2_n`. Parameters named in
/// `fixed` take the given values.
fn generic_in(
    space: &Subspace,
    n: usize,
    prefix: &str,
    fixed: &BTreeMap<(usize, usize), Scalar>,
    params: &mut Vec<String>,
) -> ScalarMatrix {
    // Column-major coordinates: index j * n + k holds entry (k, j).
    let cm = column_major(space, n);
    let mut m = zero_matrix(n);
    for (b, pivot) in cm.basis().iter().zip(cm.pivots()) {
        let (j, k) = (pivot / n, pivot % n);
        let coef = match fixed.get(&(k, j)) {
            Some(s) => s.clone(),
            None => {
                let name = format!("{prefix}{}_{}", j + 1, k + 1);
                params.push(name.clone());
                Scalar::var(&name)
            }
        };
        if coef.is_zero() {
            continue;
        }
        for (idx, c) in b.iter().enumerate() {
            if !c.is_zero() {
                let (jj, kk) = (idx / n, idx % n);
                m[kk][jj] = &m[kk][jj] + &coef.scale(c);
            }
        }
    }
    m
}

fn column_major(space: &Subspace, n: usize) -> Subspace {
    let to_cm = |v: &Vector| -> Vector {
        let mut out = vec![Default::default(); n * n];
        for k in 0..n {
            for j in 0..n {
                out[j * n + k] = v[k * n + j].clone();
            }
        }
        out
    };
    Subspace::span(n * n, space.basis().iter().map(to_cm))
}

/// Entries `(k, j)` that a shift `z -> z + y`, `y` in the base, can clear
/// from `D1`: the column-major pivots of the inner derivations.
fn inner_pivots(t: &BracketTensor) -> Result<Vec<(usize, usize)>> {
    let n = t.dim();
    let inner = column_major(inner_derivations(t)?.subspace(), n);
    Ok(inner.pivots().into_iter().map(|p| (p % n, p / n)).collect())
}

fn generic_full(n: usize, prefix: &str, params: &mut Vec<String>) -> ScalarMatrix {
    (0..n)
        .map(|k| {
            (0..n)
                .map(|j| {
                    let name = format!("{prefix}{}_{}", j + 1, k + 1);
                    params.push(name.clone());
                    Scalar::var(&name)
                })
                .collect()
        })
        .collect()
}

const PREFIXES: [(&str, &str); 3] = [("a", "b"), ("c", "d"), ("f", "g")];

fn generator_labels(r: usize) -> Vec<String> {
    if r == 1 {
        vec!["x".into()]
    } else {
        (1..=r).map(|i| format!("x{i}")).collect()
    }
}

/// The extension by `r` generators with unknown actions, and every
/// coefficient of every identity as an equation in the unknowns.
pub fn generic_extension(
    base: &CompatAlgebra,
    r: usize,
    ansatz: &Ansatz,
) -> Result<(CompatAlgebra, ConstraintSet)> {
    if !(1..=PREFIXES.len()).contains(&r) {
        return Err(Error::Invalid(format!(
            "generic extensions support 1 to {} generators, got {r}",
            PREFIXES.len()
        )));
    }
    base.require_rational()?;
    let n = base.dim();
    let mut params = Vec::new();
    let labels = generator_labels(r);
    let der1 = derivation_space(base.bracket1())?;
    let der2 = derivation_space(base.bracket2())?;
    let torus = match ansatz {
        Ansatz::NonNilpotent { order } => {
            let t = diagonal_derivations(&der1)?;
            if order.len() != r || order.iter().any(|&i| i >= t.dim()) {
                return Err(Error::Invalid(format!(
                    "torus order {order:?} does not fit {r} generators and a torus of dim {}",
                    t.dim()
                )));
            }
            Some((t.basis(), order.clone()))
        }
        _ => None,
    };
    let cleared: BTreeMap<(usize, usize), Scalar> = match ansatz {
        Ansatz::Generic => BTreeMap::new(),
        _ => inner_pivots(base.bracket1())?
            .into_iter()
            .map(|kj| (kj, Scalar::zero()))
            .collect(),
    };
    let mut gens = Vec::new();
    for (g, label) in labels.iter().enumerate() {
        let (p1, p2) = PREFIXES[g];
        let (d1, d2) = match ansatz {
            Ansatz::Generic => (
                generic_full(n, p1, &mut params),
                generic_full(n, p2, &mut params),
            ),
            Ansatz::Derivations => (
                generic_in(der1.subspace(), n, p1, &cleared, &mut params),
                generic_in(der2.subspace(), n, p2, &BTreeMap::new(), &mut params),
            ),
            Ansatz::NonNilpotent { .. } => {
                let (basis, order) = torus.as_ref().expect("torus computed");
                let v = &basis[order[g]];
                let mut fixed = cleared.clone();
                fixed.extend((0..n).map(|i| ((i, i), Scalar::Rational(v.get(i, i).clone()))));
                (
                    generic_in(der1.subspace(), n, p1, &fixed, &mut params),
                    generic_in(der2.subspace(), n, p2, &BTreeMap::new(), &mut params),
                )
            }
        };
        gens.push(Generator::new(label, d1, d2));
    }
    let mut spec = ExtensionSpec::new(base.clone(), gens);
    if matches!(ansatz, Ansatz::NonNilpotent { .. }) && r > 1 {
        let total = n + r;
        let mut g1 = BracketTensor::new(total);
        let mut g2 = BracketTensor::new(total);
        for a in 0..r {
            for b in a + 1..r {
                for k in 0..n {
                    let u = format!("u{}{}_{}", a + 1, b + 1, k + 1);
                    let w = format!("w{}{}_{}", a + 1, b + 1, k + 1);
                    g1.add(n + a, n + b, k, Scalar::var(&u));
                    g2.add(n + a, n + b, k, Scalar::var(&w));
                    params.push(u);
                    params.push(w);
                }
            }
        }
        spec.generator_brackets = Some((g1, g2));
    }
    spec.parameters = params;
    let a = assemble(&spec)?;
    let constraints = crate::algebra::extract_constraints(&a);
    Ok((a, constraints))
}

pub fn reduce_constraints(c: ConstraintSet) -> ConstraintSet {
    c.reduce()
}

/// One normalization branch of a nonexistence probe.
#[derive(Clone, Debug)]
pub struct ProbeBranch {
    /// Torus basis vector assigned to each generator.
    pub order: Vec<usize>,
    pub algebra: CompatAlgebra,
    pub constraints: ConstraintSet,
}

impl ProbeBranch {
    pub fn is_inconsistent(&self) -> bool {
        self.constraints.is_inconsistent()
    }

    pub fn contradictions(&self) -> &[Contradiction] {
        match self.constraints.status() {
            Status::Inconsistent(w) => w,
            _ => &[],
        }
    }
}

/// Every ordered choice of `r` distinct vectors from `0..m`.
fn arrangements(m: usize, r: usize) -> Vec<Vec<usize>> {
    if r == 0 {
        return vec![Vec::new()];
    }
    let mut out = Vec::new();
    for rest in arrangements(m, r - 1) {
        for i in 0..m {
            if !rest.contains(&i) {
                let mut v = rest.clone();
                v.push(i);
                out.push(v);
            }
        }
    }
    out
}

/// Runs the non-nilpotent ansatz with `r` generators once per assignment of
/// torus vectors to generators. Nonexistence is certified when every branch
/// is inconsistent.
pub fn nonexistence_probe(base: &CompatAlgebra, r: usize) -> Result<Vec<ProbeBranch>> {
    base.require_rational()?;
    let t = diagonal_derivations(&derivation_space(base.bracket1())?)?;
    if t.dim() < r {
        return Err(Error::Invalid(format!(
            "the diagonal torus has dim {} < {r}",
            t.dim()
        )));
    }
    arrangements(t.dim(), r)
        .into_iter()
        .map(|order| {
            let (algebra, c) = generic_extension(
                base,
                r,
                &Ansatz::NonNilpotent {
                    order: order.clone(),
                },
            )?;
            Ok(ProbeBranch {
                order,
                algebra,
                constraints: c.reduce(),
            })
        })
        .collect()
}

/// Substitutes a reducer solution back, setting the remaining parameters
/// as given.
pub fn specialize(a: &CompatAlgebra, c: &ConstraintSet) -> CompatAlgebra {
    a.substitute_polys(c.assignments())
}

/// The residual of `circle` restricted to triples touching a generator; used
/// by reports.
pub fn generator_residuals(a: &CompatAlgebra, base_dim: usize) -> Trilinear {
    let mut t = circle(a.bracket1(), a.bracket2()).plus(&circle(a.bracket2(), a.bracket1()));
    t.retain(|_, _, k| k >= base_dim);
    t
}

/// Reads the actions of generator `g` back from an assembled extension.
pub fn generator_action(
    a: &CompatAlgebra,
    base_dim: usize,
    g: usize,
) -> (ScalarMatrix, ScalarMatrix) {
    let z = base_dim + g;
    let read = |b: &BracketTensor| -> ScalarMatrix {
        (0..base_dim)
            .map(|k| (0..base_dim).map(|j| b.entry(z, j, k)).collect())
            .collect()
    };
    (read(a.bracket1()), read(a.bracket2()))
}

/// Polynomial assignments to scalar values for every parameter of `a`.
pub fn poly_assignment(values: &BTreeMap<String, Scalar>) -> BTreeMap<String, Poly> {
    values
        .iter()
        .map(|(k, v)| (k.clone(), v.to_poly()))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::check_compatibility;
    use crate::families::{lr_pair, lw_pair, make_extension_table, make_ln, make_ls};
    use crate::scalar::int;
    use crate::structure::{is_nilpotent, is_solvable};

    fn p(s: &str) -> Poly {
        s.parse::<Scalar>().unwrap().into_poly()
    }

    #[test]
    fn ln_diagonal_extension() {
        let base = CompatAlgebra::lie(make_ln(7).unwrap());
        let d = MatrixQ::diagonal(&(1..=7).map(int).collect::<Vec<_>>());
        let spec = ExtensionSpec::new(
            base.clone(),
            vec![Generator::rational("x", &d, &MatrixQ::zeros(7, 7))],
        );
        let a = build_semidirect(&spec).unwrap();
        assert!(is_solvable(&a).unwrap());
        assert!(!is_nilpotent(&a).unwrap());
        assert!(base_is_nilradical(&a, 7, WitnessConfig::default()).unwrap());
        assert_eq!(
            build_semidirect(&ExtensionSpec::new(base.clone(), vec![])).unwrap(),
            base
        );
    }

    #[test]
    fn table_from_actions() {
        let t = make_extension_table("lr-derl", 7, &BTreeMap::new()).unwrap();
        let (d1, d2) = generator_action(&t, 7, 0);
        let spec = ExtensionSpec::new(lr_pair(7).unwrap(), vec![Generator::new("x", d1, d2)]);
        let built = assemble(&spec).unwrap();
        assert_eq!(built.bracket1(), t.bracket1());
        assert_eq!(built.bracket2(), t.bracket2());
        assert!(check_extension_conditions(&spec).unwrap().holds);
    }

    #[test]
    fn torus_extensions_of_ls() {
        let base = make_ls(&"3,3".parse().unwrap());
        let torus = diagonal_derivations(&compat_derivation_space(&base).unwrap()).unwrap();
        assert_eq!(torus.dim(), 2);
        let b = torus.basis();
        let cases: [(&[MatrixQ], &[MatrixQ]); 4] = [
            (&b[..1], &[]),
            (&b[..], &[]),
            (&b[..], &b[..1]),
            (&b[..], &b[..]),
        ];
        for (k, (d, dp)) in cases.iter().enumerate() {
            let a = torus_extension(&base, d, dp).unwrap();
            assert_eq!(a.dim(), 7 + k + 1);
            assert!(is_solvable(&a).unwrap());
            assert!(base_is_nilradical(&a, 7, WitnessConfig::default()).unwrap());
        }
        assert_eq!(torus_extension(&base, &[], &[]).unwrap(), base);
        let bad = MatrixQ::identity(7);
        assert!(matches!(
            torus_extension(&base, &[bad], &[]),
            Err(Error::NotTorus)
        ));
    }

    #[test]
    fn lr_one_generator_constraints() {
        let (_, c) = generic_extension(&lr_pair(7).unwrap(), 1, &Ansatz::Derivations).unwrap();
        assert!(c.contains(&p("a1_2")));
        assert!(c.contains(&p("a2_2 - 2*a1_1")));
        for t in 3..=5 {
            assert!(c.contains(&p(&format!("b1_{t}"))), "b1_{t}");
        }
    }

    fn has_witness(
        branches: &[ProbeBranch],
        triple: (usize, usize, usize),
        coord: usize,
        v: i64,
    ) -> bool {
        branches.iter().any(|b| {
            b.contradictions().iter().any(|c| {
                c.origin.identity == Identity::Mixed
                    && c.origin.triple == triple
                    && c.origin.coordinate == coord
                    && c.value == int(v)
            })
        })
    }

    #[test]
    fn lr_two_generators_impossible() {
        let branches = nonexistence_probe(&lr_pair(7).unwrap(), 2).unwrap();
        assert_eq!(branches.len(), 2);
        assert!(branches.iter().all(ProbeBranch::is_inconsistent));
        // L(e2, e4, x2)[e6] = 1
        assert!(has_witness(&branches, (1, 3, 8), 5, 1));
    }

    #[test]
    fn lw_two_generators_impossible() {
        let branches = nonexistence_probe(&lw_pair(7).unwrap(), 2).unwrap();
        assert!(branches.iter().all(ProbeBranch::is_inconsistent));
        // L(e2, e3, x2)[e5] = -2
        assert!(has_witness(&branches, (1, 2, 8), 4, -2));
    }

    #[test]
    fn reducer_solution_is_compatible() {
        let base = lr_pair(7).unwrap();
        let (a, c) = generic_extension(&base, 1, &Ansatz::Derivations).unwrap();
        let c = c.reduce();
        assert!(!c.is_inconsistent());
        let s = specialize(&a, &c);
        let rest: BTreeMap<String, Scalar> = s
            .bracket1()
            .vars()
            .iter()
            .chain(s.bracket2().vars().iter())
            .enumerate()
            .map(|(i, v)| (v.to_string(), Scalar::from_int(i as i64 % 3 + 1)))
            .collect();
        assert!(c.is_empty(), "{c:?}");
        let s = s.substitute_polys(&poly_assignment(&rest));
        assert!(check_compatibility(&s).unwrap().holds);
    }
}
