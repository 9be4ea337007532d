//! Filiform detection, adapted bases, the associated graded algebra and the
//! seven-dimensional graded classification.

use std::collections::BTreeMap;

use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::algebra::{
    check_all, default_labels, extract_constraints, BracketTensor, CompatAlgebra, IdentityReport,
    DEFAULT_WITNESS_LIMIT,
};
use crate::constraints::{ConstraintSet, Status};
use crate::error::{Error, Result, Which};
use crate::families::{f1, f2, SeriesSpec};
use crate::linalg::{inverse, is_zero_vector, Echelon, MatrixQ, Vector};
use crate::scalar::{int, Poly, Rational, Scalar};
use crate::structure::{lower_central_series, SeriesResult};

pub const RETRY_BUDGET: usize = 64;

/// Nilpotent of dimension `d >= 3` with `dim C^k = d - 1 - k` for
/// `1 <= k <= d - 1`.
pub fn is_filiform(a: &CompatAlgebra) -> Result<bool> {
    a.require_rational()?;
    let d = a.dim();
    if d < 3 {
        return Ok(false);
    }
    let s = lower_central_series(a)?;
    if s.nilindex != Some(d - 1) {
        return Ok(false);
    }
    let dims = s.dims();
    Ok((1..d).all(|k| dims[k] == d - 1 - k))
}

/// Basis `e_0, ..., e_n` with `[e_0, e_i] = e_{i+1}` in the first bracket on
/// odd blocks and `{e_0, e_i} = e_{i+1}` on even blocks.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AdaptedBasis {
    /// Old coordinates of `e_0..e_n`.
    pub vectors: Vec<Vector>,
    /// In the `L_s` convention: the last block also counts `e_n`.
    pub series: SeriesSpec,
    /// Bracket carrying each block of `series`.
    pub blocks: Vec<Which>,
    /// Number of chain products per block, in the possibly swapped algebra.
    pub chain_lengths: Vec<usize>,
    /// The first bracket vanished on the complement, so the brackets were
    /// swapped; `series` then starts with a zero block.
    pub swapped: bool,
    pub attempts: usize,
    pub seed: u64,
}

impl AdaptedBasis {
    /// The algebra rewritten in the adapted basis, labelled `e0..en`.
    pub fn transform(&self, a: &CompatAlgebra) -> Result<CompatAlgebra> {
        rewrite(a, &self.vectors, |_, _, _| true, default_labels(a.dim(), 0))
    }
}

fn rewrite(
    a: &CompatAlgebra,
    basis: &[Vector],
    keep: impl Fn(usize, usize, usize) -> bool,
    labels: Vec<String>,
) -> Result<CompatAlgebra> {
    let n = a.dim();
    let inv = inverse(&MatrixQ::from_columns(n, basis))
        .ok_or_else(|| Error::Invalid("vectors do not form a basis".into()))?;
    let mut out = Vec::new();
    for br in [a.bracket1(), a.bracket2()] {
        let mut t = BracketTensor::new(n);
        for x in 0..n {
            for y in x + 1..n {
                let prod = br.apply_rational(&basis[x], &basis[y])?;
                for (k, c) in inv.apply(&prod).into_iter().enumerate() {
                    if keep(x, y, k) {
                        t.add(x, y, k, Scalar::Rational(c));
                    }
                }
            }
        }
        out.push(t);
    }
    let b2 = out.pop().expect("two brackets");
    let b1 = out.pop().expect("two brackets");
    CompatAlgebra::new(labels, vec![], b1, b2)
}

fn small_rational(rng: &mut ChaCha8Rng) -> Rational {
    int(rng.random_range(-5..=5))
}

fn combine(c0: &Rational, m0: &[Rational], c1: &Rational, m1: &[Rational]) -> Vector {
    m0.iter().zip(m1).map(|(x, y)| c0 * x + c1 * y).collect()
}

/// One chain attempt from `e0`, `e1`; `None` when the choice is not generic.
fn build_chain(
    w: &CompatAlgebra,
    m: &[Vector],
    e0: &Vector,
    e1: &Vector,
) -> Result<Option<(Vec<Vector>, Vec<usize>)>> {
    let (b1, b2) = (w.bracket1(), w.bracket2());
    let dim = w.dim();
    let pm_nonzero = |v: &Vector| -> Result<bool> {
        for mi in m {
            if !is_zero_vector(&b1.apply_rational(mi, v)?) {
                return Ok(true);
            }
        }
        Ok(false)
    };
    let mut vecs = vec![e0.clone(), e1.clone()];
    let mut lens = vec![0usize];
    let mut first = true;
    let mut cur = e1.clone();
    while vecs.len() < dim {
        if first {
            let next = b1.apply_rational(e0, &cur)?;
            if !is_zero_vector(&next) {
                *lens.last_mut().expect("nonempty") += 1;
                vecs.push(next.clone());
                cur = next;
                continue;
            }
            if lens.last() == Some(&0) {
                return Ok(None);
            }
            first = false;
            lens.push(0);
        }
        let next = b2.apply_rational(e0, &cur)?;
        if is_zero_vector(&next) {
            return Ok(None);
        }
        *lens.last_mut().expect("nonempty") += 1;
        vecs.push(next.clone());
        if pm_nonzero(&next)? {
            first = true;
            lens.push(0);
        }
        cur = next;
    }
    while lens.len() > 1 && lens.last() == Some(&0) {
        lens.pop();
    }
    Ok(Some((vecs, lens)))
}

/// Rank, filtration membership and `[M, e_i] = 0` on even blocks.
fn certify(
    w: &CompatAlgebra,
    series: &SeriesResult,
    vecs: &[Vector],
    lens: &[usize],
) -> Result<bool> {
    let mut e = Echelon::new(w.dim());
    for v in vecs {
        if !e.insert(v.clone()) {
            return Ok(false);
        }
    }
    for (i, v) in vecs.iter().enumerate().skip(2) {
        if !series.terms[i - 1].contains(v)? {
            return Ok(false);
        }
    }
    let mut i = 1;
    for (block, &len) in lens.iter().enumerate() {
        if block % 2 == 1 {
            for idx in i..i + len {
                for mi in &vecs[..2] {
                    if !is_zero_vector(&w.bracket1().apply_rational(mi, &vecs[idx])?) {
                        return Ok(false);
                    }
                }
            }
        }
        i += len;
    }
    Ok(true)
}

/// Seeded randomized construction with exact certification.
pub fn adapted_basis(a: &CompatAlgebra, seed: u64) -> Result<AdaptedBasis> {
    if !is_filiform(a)? {
        return Err(Error::NotFiliform);
    }
    let series = lower_central_series(a)?;
    let m = series.terms[1].complement_basis();
    let swapped = is_zero_vector(&a.bracket1().apply_rational(&m[0], &m[1])?);
    let w = if swapped { a.swapped() } else { a.clone() };
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for attempt in 1..=RETRY_BUDGET {
        let c: Vec<Rational> = (0..4).map(|_| small_rational(&mut rng)).collect();
        if (&c[0] * &c[3] - &c[1] * &c[2]).is_zero() {
            continue;
        }
        let e0 = combine(&c[0], &m[0], &c[1], &m[1]);
        let e1 = combine(&c[2], &m[0], &c[3], &m[1]);
        let Some((vecs, lens)) = build_chain(&w, &m, &e0, &e1)? else {
            continue;
        };
        if !certify(&w, &series, &vecs, &lens)? {
            continue;
        }
        let mut values = lens.clone();
        *values.last_mut().expect("nonempty") += 1;
        if swapped {
            values.insert(0, 0);
        }
        let blocks = (0..values.len())
            .map(|j| {
                if j % 2 == 0 {
                    Which::First
                } else {
                    Which::Second
                }
            })
            .collect();
        return Ok(AdaptedBasis {
            vectors: vecs,
            series: SeriesSpec::new(values)?,
            blocks,
            chain_lengths: lens,
            swapped,
            attempts: attempt,
            seed,
        });
    }
    Err(Error::RetryBudgetExhausted {
        attempts: RETRY_BUDGET,
        seed,
    })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GradedAlgebra {
    pub algebra: CompatAlgebra,
    /// Degree of each basis vector; `C^{d-1} / C^d` has degree `d`.
    pub degrees: Vec<usize>,
    /// Old coordinates of the representatives.
    pub basis: Vec<Vector>,
}

/// `gr L` on representatives of `C^{d-1} / C^d`, keeping only the degree
/// `i + j` part of each product of degrees `i`, `j`.
pub fn associated_graded(a: &CompatAlgebra) -> Result<GradedAlgebra> {
    a.require_rational()?;
    let series = lower_central_series(a)?;
    let m = series.nilindex.ok_or(Error::NotNilpotent)?;
    let mut basis = Vec::new();
    let mut degrees = Vec::new();
    for d in 1..=m {
        let mut e = series.terms[d].echelon();
        for v in series.terms[d - 1].basis() {
            if e.insert(v.clone()) {
                basis.push(v.clone());
                degrees.push(d);
            }
        }
    }
    let n = a.dim();
    let identity = (0..n).all(|i| basis[i] == crate::linalg::unit_vector(n, i));
    let labels = if identity {
        a.labels().to_vec()
    } else {
        default_labels(n, 0)
    };
    let algebra = rewrite(
        a,
        &basis,
        |x, y, k| degrees[k] == degrees[x] + degrees[y],
        labels,
    )?;
    Ok(GradedAlgebra {
        algebra,
        degrees,
        basis,
    })
}

pub const BRACKET_NOTE: &str =
    "relations are read in the first bracket of the (possibly swapped) graded algebra";

/// The homogeneous basis `X_0..X_{n_1+1}` of `gr L` and its relations.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HomogeneousReport {
    pub n1: usize,
    /// Original bracket the relations were read in.
    pub bracket: Which,
    /// Coordinates in the basis of `gr L`.
    pub vectors: Vec<Vector>,
    pub alpha: Rational,
    pub violations: Vec<String>,
}

impl HomogeneousReport {
    pub fn holds(&self) -> bool {
        self.violations.is_empty()
    }
}

fn proportional(u: &[Rational], v: &[Rational]) -> Option<Rational> {
    let p = v.iter().position(|x| !x.is_zero())?;
    let c = &u[p] / &v[p];
    u.iter().zip(v).all(|(x, y)| x == &(&c * y)).then_some(c)
}

/// Builds `X_0` from an adapted basis of `gr L`, picks `X_1` with
/// `[X_1, X_2] = 0` and checks the displayed relations.
pub fn homogeneous_basis_relations(a: &CompatAlgebra, seed: u64) -> Result<HomogeneousReport> {
    let gr = associated_graded(a)?;
    let ab = adapted_basis(&gr.algebra, seed)?;
    let w = if ab.swapped {
        gr.algebra.swapped()
    } else {
        gr.algebra.clone()
    };
    let b1 = w.bracket1();
    let n1 = ab.chain_lengths[0];
    let mut violations = Vec::new();
    let x0 = ab.vectors[0].clone();
    let x1_old = ab.vectors[1].clone();
    let x2_old = b1.apply_rational(&x0, &x1_old)?;
    let u0 = b1.apply_rational(&x0, &x2_old)?;
    let u1 = b1.apply_rational(&x1_old, &x2_old)?;
    let x1 = if is_zero_vector(&u1) {
        x1_old
    } else {
        match proportional(&u1, &u0) {
            Some(l) => x1_old.iter().zip(&x0).map(|(p, q)| p - &(&l * q)).collect(),
            None => {
                violations.push("no X1 with [X1,X2] = 0".to_string());
                x1_old
            }
        }
    };
    let mut xs = vec![x0.clone(), x1];
    for i in 1..=n1 {
        let next = b1.apply_rational(&x0, &xs[i])?;
        xs.push(next);
    }
    let top = n1 + 1;
    if !is_zero_vector(&b1.apply_rational(&x0, &xs[top])?) {
        violations.push(format!("[X0,X{top}] != 0"));
    }
    for (i, x) in xs.iter().enumerate() {
        let deg = i.max(1);
        let stray = x
            .iter()
            .enumerate()
            .any(|(k, c)| !c.is_zero() && gr.degrees[k] != deg);
        if stray || is_zero_vector(x) {
            violations.push(format!("X{i} is not a nonzero element of degree {deg}"));
        }
    }
    let mut coeffs: BTreeMap<usize, Rational> = BTreeMap::new();
    for i in 1..=top {
        for j in i + 1..=top {
            let p = b1.apply_rational(&xs[i], &xs[j])?;
            if i + j != top {
                if !is_zero_vector(&p) {
                    violations.push(format!("[X{i},X{j}] != 0"));
                }
            } else if is_zero_vector(&p) {
                coeffs.insert(i, Rational::zero());
            } else {
                match proportional(&p, &xs[top]) {
                    Some(c) => {
                        coeffs.insert(i, c);
                    }
                    None => violations.push(format!("[X{i},X{j}] not a multiple of X{top}")),
                }
            }
        }
    }
    let alpha = coeffs.get(&1).map(|c| -c).unwrap_or_else(Rational::zero);
    for (&i, c) in &coeffs {
        let expected = if i % 2 == 0 {
            alpha.clone()
        } else {
            -alpha.clone()
        };
        if c != &expected {
            violations.push(format!(
                "[X{i},X{}] has coefficient {c}, not (-1)^{i} alpha",
                top - i
            ));
        }
    }
    if n1 % 2 == 1 && !alpha.is_zero() {
        violations.push("alpha != 0 with n1 odd".to_string());
    }
    Ok(HomogeneousReport {
        n1,
        bracket: if ab.swapped {
            Which::Second
        } else {
            Which::First
        },
        vectors: xs,
        alpha,
        violations,
    })
}

pub const GRADED_PARAMETERS: [&str; 11] = [
    "a01", "a02", "a03", "a04", "a12", "a13", "a14", "a15", "a23", "a24", "delta",
];

/// The seven-dimensional graded ansatz with `n_1 = 4`, labels `X0..X6`.
pub fn graded_7dim_ansatz() -> CompatAlgebra {
    let v = Scalar::var;
    let mut b1 = BracketTensor::new(7);
    for i in 1..=4 {
        b1.add(0, i, i + 1, 1);
    }
    b1.add(1, 4, 5, -v("delta"));
    b1.add(2, 3, 5, v("delta"));
    let mut b2 = BracketTensor::new(7);
    for (i, j, k, c) in [
        (0, 1, 2, "a01"),
        (0, 2, 3, "a02"),
        (0, 3, 4, "a03"),
        (0, 4, 5, "a04"),
        (1, 2, 3, "a12"),
        (1, 3, 4, "a13"),
        (1, 4, 5, "a14"),
        (1, 5, 6, "a15"),
        (2, 3, 5, "a23"),
        (2, 4, 6, "a24"),
    ] {
        b2.add(i, j, k, v(c));
    }
    b2.add(0, 5, 6, 1);
    CompatAlgebra::new(
        (0..7).map(|i| format!("X{i}")).collect(),
        GRADED_PARAMETERS.iter().map(|s| s.to_string()).collect(),
        b1,
        b2,
    )
    .expect("declared parameters")
}

fn poly(s: &str) -> Poly {
    s.parse::<Scalar>().expect("valid expression").into_poly()
}

fn sigma(pairs: &[(&str, &str)]) -> BTreeMap<String, Poly> {
    pairs
        .iter()
        .map(|(k, v)| (k.to_string(), poly(v)))
        .collect()
}

/// One of the expected numbered constraints and how it was found.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExpectedConstraint {
    pub label: usize,
    pub equation: Poly,
    /// Present as extracted, up to a nonzero factor.
    pub verbatim: bool,
    /// Present after substituting the constraints that precede it.
    pub modulo_earlier: bool,
}

#[derive(Clone, Debug)]
pub struct GradedClassificationReport {
    pub f1: IdentityReport,
    pub f2: IdentityReport,
    pub extracted: ConstraintSet,
    pub constraints: Vec<ExpectedConstraint>,
    /// Extracted equations matching none of the numbered ones.
    pub additional: Vec<Poly>,
    pub delta_one: ConstraintSet,
    pub delta_zero: ConstraintSet,
    pub lambda_zero: ConstraintSet,
    pub lambda_nonzero: ConstraintSet,
}

impl GradedClassificationReport {
    pub fn constraints_reproduced(&self) -> bool {
        self.constraints
            .iter()
            .all(|c| c.verbatim || c.modulo_earlier)
    }

    /// `delta = 1` inconsistent; `delta = 0` forces `a14 = a15 = a24 = 0`
    /// and `a12 = a13 = a23`.
    pub fn delta_split_holds(&self) -> bool {
        let z = &self.delta_zero;
        let value = |name: &str| {
            z.assignments()
                .get(name)
                .cloned()
                .unwrap_or_else(|| Poly::var(name))
        };
        self.delta_one.is_inconsistent()
            && !z.is_inconsistent()
            && ["a14", "a15", "a24"].iter().all(|p| value(p).is_zero())
            && value("a13") == value("a12")
            && value("a23") == value("a12")
    }

    /// Both sub-branches consistent: `lambda = 0` gives F_1, `lambda != 0`
    /// gives F_2.
    pub fn lambda_split_holds(&self) -> bool {
        self.lambda_zero.status() == &Status::Solved && !self.lambda_nonzero.is_inconsistent()
    }

    pub fn holds(&self) -> bool {
        self.f1.holds
            && self.f2.holds
            && self.constraints_reproduced()
            && self.delta_split_holds()
            && self.lambda_split_holds()
    }
}

/// Monic form after a substitution, or `None` if it vanishes.
fn canonical(p: &Poly, s: &BTreeMap<String, Poly>) -> Option<Poly> {
    let q = p.substitute_polys(s);
    (!q.is_zero()).then(|| q.monic().1)
}

pub fn verify_graded_7dim_classification() -> GradedClassificationReport {
    let extracted = extract_constraints(&graded_7dim_ansatz());
    let s1 = sigma(&[("a13", "a12")]);
    let s5 = sigma(&[("a13", "a12"), ("delta", "0"), ("a24", "0"), ("a15", "0")]);
    let s6 = sigma(&[
        ("a13", "a12"),
        ("delta", "0"),
        ("a24", "0"),
        ("a15", "0"),
        ("a14", "0"),
    ]);
    let empty = BTreeMap::new();
    let table: [(&str, &BTreeMap<String, Poly>); 8] = [
        ("a12 - a13", &empty),
        ("a23 + a14 - a12 + delta*(a01 - a03)", &s1),
        ("a24 + a15 + delta", &s1),
        ("delta*a15", &s1),
        ("a24 - delta", &s1),
        ("a14", &s5),
        ("a02*a12 - a12*a03", &s5),
        ("a01*a23 - a12*a04", &s6),
    ];
    let mut matched = vec![false; extracted.len()];
    let constraints = table
        .iter()
        .enumerate()
        .map(|(idx, (src, s))| {
            let equation = poly(src);
            let verbatim = extracted.contains(&equation);
            let target = canonical(&equation, s);
            let mut modulo_earlier = false;
            for (m, c) in extracted.equations().iter().enumerate() {
                let here = canonical(&c.equation, s);
                if target.is_some() && here == target {
                    modulo_earlier = true;
                    matched[m] = true;
                }
            }
            ExpectedConstraint {
                label: idx + 1,
                equation,
                verbatim,
                modulo_earlier,
            }
        })
        .collect();
    let additional = extracted
        .equations()
        .iter()
        .zip(&matched)
        .filter(|(_, &m)| !m)
        .map(|(c, _)| c.equation.clone())
        .collect();
    let delta_zero = extracted.clone().assign("delta", Poly::zero());
    GradedClassificationReport {
        f1: check_all(&f1(), DEFAULT_WITNESS_LIMIT),
        f2: check_all(&f2(), DEFAULT_WITNESS_LIMIT),
        delta_one: extracted
            .clone()
            .assign("delta", Poly::constant(Rational::one()))
            .reduce(),
        lambda_zero: delta_zero.clone().assign("a12", Poly::zero()).reduce(),
        lambda_nonzero: delta_zero.clone().assume_nonzero("a12").reduce(),
        delta_zero: delta_zero.reduce(),
        extracted,
        constraints,
        additional,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::is_compatible;
    use crate::families::{make_ln, make_ls};
    use crate::linalg::Subspace;
    use crate::structure::nilindex;

    fn ls(s: &str) -> CompatAlgebra {
        make_ls(&s.parse().unwrap())
    }

    #[test]
    fn filiform_examples() {
        assert!(is_filiform(&ls("3,3")).unwrap());
        assert!(is_filiform(&ls("2,2,2")).unwrap());
        assert!(!is_filiform(&CompatAlgebra::abelian(4)).unwrap());
        assert!(!is_filiform(&crate::families::example7()).unwrap());
    }

    #[test]
    fn adapted_basis_recovers_series() {
        for s in ["2,3", "3,3", "2,2,2", "1,2,2", "5", "3,2,3"] {
            let ab = adapted_basis(&ls(s), 0).unwrap();
            assert_eq!(ab.series.to_string(), format!("({s})"), "series {s}");
            assert!(!ab.swapped);
        }
        let ab = adapted_basis(&ls("0,4"), 3).unwrap();
        assert!(ab.swapped);
        assert_eq!(ab.series.values(), &[0, 4]);
    }

    #[test]
    fn adapted_basis_of_model_lie_algebra() {
        let l = CompatAlgebra::lie(make_ln(7).unwrap());
        let ab = adapted_basis(&l, 1).unwrap();
        assert_eq!(ab.series.values(), &[6]);
        let t = ab.transform(&l).unwrap();
        for i in 1..6 {
            let p = t.bracket1().product(0, i);
            assert_eq!(p.len(), 1);
            assert!(p[&(i + 1)].is_one());
        }
    }

    #[test]
    fn adapted_basis_rejects_non_filiform() {
        assert!(matches!(
            adapted_basis(&CompatAlgebra::abelian(5), 0),
            Err(Error::NotFiliform)
        ));
    }

    #[test]
    fn graded_of_ls_is_itself() {
        for s in ["3,3", "2,2,2"] {
            let a = ls(s);
            let g = associated_graded(&a).unwrap();
            assert_eq!(g.algebra, a);
        }
    }

    #[test]
    fn graded_preserves_nilindex_and_grading() {
        let mut a = ls("2,3");
        let mut b1 = a.bracket1().clone();
        // A filtered but non-graded term: [e1, e2] = e5.
        b1.add(1, 2, 5, 1);
        a = a.map_brackets(b1, a.bracket2().clone()).unwrap();
        assert!(is_compatible(&a));
        let g = associated_graded(&a).unwrap();
        assert_eq!(nilindex(&g.algebra).unwrap(), nilindex(&a).unwrap());
        assert!(is_filiform(&g.algebra).unwrap());
        for br in [g.algebra.bracket1(), g.algebra.bracket2()] {
            for (&(i, j), v) in br.pairs() {
                for &k in v.keys() {
                    assert_eq!(g.degrees[k], g.degrees[i] + g.degrees[j]);
                }
            }
        }
        assert!(g.algebra.bracket1().product(1, 2).is_empty());
    }

    #[test]
    fn homogeneous_relations_on_ls() {
        for s in ["3,3", "4,2", "2,2,2"] {
            let r = homogeneous_basis_relations(&ls(s), 0).unwrap();
            assert!(r.holds(), "{s}: {:?}", r.violations);
        }
    }

    #[test]
    fn graded_classification_branches() {
        let r = verify_graded_7dim_classification();
        assert!(r.f1.holds);
        assert!(!r.f2.holds);
        for c in &r.constraints {
            assert!(c.verbatim || c.modulo_earlier, "({})", c.label);
        }
        let verbatim: Vec<usize> = r
            .constraints
            .iter()
            .filter(|c| c.verbatim)
            .map(|c| c.label)
            .collect();
        assert_eq!(verbatim, vec![1, 3, 4, 5]);
        assert!(r.additional.contains(&poly("a03*a24 - a23")));
        assert!(r.delta_split_holds());
        assert_eq!(r.lambda_zero.status(), &Status::Solved);
        assert!(r.lambda_nonzero.is_inconsistent());
        assert!(!r.holds());
    }

    #[test]
    fn f1_at_zero_is_compatible() {
        let zero: crate::scalar::Assignment = ["alpha1", "alpha2", "alpha3", "alpha4"]
            .iter()
            .map(|p| (p.to_string(), Rational::zero()))
            .collect();
        assert!(is_compatible(&f1().substitute(&zero)));
    }

    #[test]
    fn graded_ansatz_extracts_constraint_seven() {
        let set = extract_constraints(&graded_7dim_ansatz());
        assert!(set.contains(&poly("a02*a13 - a03*a12")));
    }

    #[test]
    fn subspace_membership_is_by_filtration() {
        let s = lower_central_series(&ls("3,3")).unwrap();
        assert_eq!(s.terms[1], Subspace::coordinate(7, &[2, 3, 4, 5, 6]));
    }
}
