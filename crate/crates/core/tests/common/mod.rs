//! Shared fixtures: the shipped corpus, random small algebras and the
//! property bodies used by both the proptest suites and the acceptance run.
#![allow(dead_code)]

use std::collections::BTreeMap;
use std::path::PathBuf;

use compatlie::algebra::{
    check_compatibility, check_jacobi, jacobiator, mixed_jacobiator, pencil, BracketTensor,
    CompatAlgebra,
};
use compatlie::derivations::{compat_derivation_space, diagonal_derivations};
use compatlie::extensions::torus_extension;
use compatlie::families::make_ls;
use compatlie::io::{parse_algebra, serialize_algebra};
use compatlie::linalg::{inverse, rref, MatrixQ, Subspace, Vector};
use compatlie::structure::{
    default_witness_family, ideal_generated_by, internal_lower_central_series, is_ideal,
    is_special_ideal_against, WitnessConfig,
};
use compatlie::{Rational, Scalar};
use num_traits::{One, Zero};
use proptest::prelude::*;
use proptest::test_runner::TestCaseError;

pub fn corpus_dir() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("corpus")
}

/// `(file name, text)` for every corpus file, sorted by name.
pub fn corpus_texts() -> Vec<(String, String)> {
    let mut out: Vec<(String, String)> = std::fs::read_dir(corpus_dir())
        .expect("corpus directory")
        .map(|e| e.expect("corpus entry").path())
        .filter(|p| p.extension().is_some_and(|x| x == "json"))
        .map(|p| {
            let name = p.file_name().unwrap().to_string_lossy().into_owned();
            (
                name,
                std::fs::read_to_string(&p).expect("readable corpus file"),
            )
        })
        .collect();
    out.sort();
    out
}

pub fn corpus() -> Vec<(String, CompatAlgebra)> {
    corpus_texts()
        .into_iter()
        .map(|(n, t)| {
            let a = parse_algebra(&t).unwrap_or_else(|e| panic!("{n}: {e}"));
            (n, a)
        })
        .collect()
}

/// Corpus members that are parameter-free and compatible.
pub fn compatible_corpus() -> Vec<(String, CompatAlgebra)> {
    corpus()
        .into_iter()
        .filter(|(_, a)| !a.is_parametric())
        .filter(|(_, a)| check_compatibility(a).map(|r| r.holds).unwrap_or(false))
        .collect()
}

pub fn q(n: i64, d: i64) -> Rational {
    Rational::new(n.into(), d.into())
}

pub fn rational() -> impl Strategy<Value = Rational> {
    (-20i64..=20, 1i64..=9).prop_map(|(n, d)| q(n, d))
}

pub fn nonzero_rational() -> impl Strategy<Value = Rational> {
    rational().prop_filter("nonzero", |r| !r.is_zero())
}

pub fn matrix(rows: usize, cols: usize) -> impl Strategy<Value = MatrixQ> {
    proptest::collection::vec(rational(), rows * cols).prop_map(move |v| {
        MatrixQ::from_rows(v.chunks(cols).map(|c| c.to_vec()).collect()).unwrap()
    })
}

/// Product of a unit lower and a unit upper triangular integer matrix.
pub fn invertible(n: usize) -> impl Strategy<Value = MatrixQ> {
    proptest::collection::vec(-2i64..=2, n * n).prop_map(move |v| {
        let mut lo = MatrixQ::identity(n);
        let mut up = MatrixQ::identity(n);
        for i in 0..n {
            for j in 0..n {
                let x = Rational::from_integer(v[i * n + j].into());
                if i > j {
                    lo.set(i, j, x);
                } else if i < j {
                    up.set(i, j, x);
                }
            }
        }
        &lo * &up
    })
}

fn two_dim() -> CompatAlgebra {
    let b1 = BracketTensor::new(2).with(0, 1, 1, 1);
    let b2 = BracketTensor::new(2).with(0, 1, 0, 1);
    CompatAlgebra::from_brackets(b1, b2)
}

fn heisenberg_pair() -> CompatAlgebra {
    let b1 = BracketTensor::new(3).with(0, 1, 2, 1);
    let b2 = BracketTensor::new(3).with(0, 2, 1, 1);
    CompatAlgebra::from_brackets(b1, b2)
}

/// Compatible algebras of dimension at most 5 covering nilpotent,
/// solvable non-nilpotent and abelian cases.
pub fn seed_algebras() -> Vec<CompatAlgebra> {
    let mut out = vec![CompatAlgebra::abelian(3), two_dim(), heisenberg_pair()];
    for s in [
        "1,1", "2,1", "1,2", "3", "1,1,1", "2,2", "1,3", "3,1", "1,2,1", "0,4",
    ] {
        out.push(make_ls(&s.parse().unwrap()));
    }
    for s in ["1,1", "2,1", "1,2", "1,1,1"] {
        let base = make_ls(&s.parse().unwrap());
        let torus = diagonal_derivations(&compat_derivation_space(&base).unwrap()).unwrap();
        let b = torus.basis();
        if base.dim() < 5 && !b.is_empty() {
            out.push(torus_extension(&base, &b[..1], &[]).unwrap());
            out.push(torus_extension(&base, &[], &b[..1]).unwrap());
        }
    }
    out
}

pub fn transform(a: &CompatAlgebra, m: &MatrixQ) -> CompatAlgebra {
    let n = a.dim();
    let inv = inverse(m).expect("invertible change of basis");
    let basis: Vec<Vector> = (0..n).map(|j| m.column(j)).collect();
    let b1 = a.bracket1().change_basis(&basis, &inv).unwrap();
    let b2 = a.bracket2().change_basis(&basis, &inv).unwrap();
    CompatAlgebra::from_brackets(b1, b2)
}

/// A seed algebra in a random basis, with its brackets replaced by an
/// invertible combination of the pencil.
pub fn compatible_small() -> impl Strategy<Value = CompatAlgebra> {
    let seeds = seed_algebras();
    (
        0..seeds.len(),
        0u32..4,
        proptest::collection::vec(-2i64..=2, 4),
    )
        .prop_flat_map(move |(idx, mix, c)| {
            let a = seeds[idx].clone();
            let n = a.dim();
            invertible(n).prop_map(move |m| {
                let t = transform(&a, &m);
                let s = |x: i64| Scalar::from_int(x);
                let (l1, l2, m1, m2) = match mix {
                    0 => (1, 0, 0, 1),
                    1 => (0, 1, 1, 0),
                    _ if c[0] * c[3] != c[1] * c[2] => (c[0], c[1], c[2], c[3]),
                    _ => (1, 1, 1, -1),
                };
                let b1 = pencil(&t, &s(l1), &s(l2));
                let b2 = pencil(&t, &s(m1), &s(m2));
                CompatAlgebra::from_brackets(b1, b2)
            })
        })
}

/// Either a compatible algebra or one with a random product added to one
/// bracket.
pub fn small_algebra() -> impl Strategy<Value = CompatAlgebra> {
    (
        compatible_small(),
        any::<bool>(),
        0usize..5,
        0usize..5,
        0usize..5,
        -3i64..=3,
        any::<bool>(),
    )
        .prop_map(|(a, perturb, i, j, k, c, second)| {
            let n = a.dim();
            let (i, j, k) = (i % n, j % n, k % n);
            if !perturb || i == j || c == 0 {
                return a;
            }
            let (i, j) = (i.min(j), i.max(j));
            let mut b1 = a.bracket1().clone();
            let mut b2 = a.bracket2().clone();
            if second {
                b2.add(i, j, k, Scalar::from_int(c));
            } else {
                b1.add(i, j, k, Scalar::from_int(c));
            }
            CompatAlgebra::from_brackets(b1, b2)
        })
}

/// Every combination of the two brackets is Lie iff both brackets and the
/// mixed identity hold; the left side is checked with formal coefficients.
pub fn pencil_equivalence(a: &CompatAlgebra) -> Result<(), TestCaseError> {
    let formal = pencil(a, &Scalar::var("l1"), &Scalar::var("l2"));
    let all_combinations = jacobiator(&formal).is_zero();
    let conditions = jacobiator(a.bracket1()).is_zero()
        && jacobiator(a.bracket2()).is_zero()
        && mixed_jacobiator(a).is_zero();
    prop_assert_eq!(all_combinations, conditions);
    // Specializing the formal pencil agrees with the numeric pencil.
    for (x, y) in [(1, 0), (0, 1), (2, -3)] {
        let numeric = pencil(a, &Scalar::from_int(x), &Scalar::from_int(y));
        let assign: BTreeMap<String, Rational> =
            [("l1".to_string(), q(x, 1)), ("l2".to_string(), q(y, 1))].into();
        prop_assert_eq!(formal.substitute(&assign), numeric.clone());
        if conditions {
            prop_assert!(check_jacobi(&numeric).holds);
        }
    }
    Ok(())
}

pub fn random_ideal(a: &CompatAlgebra, v: &[i64]) -> Subspace {
    let n = a.dim();
    let vectors: Vec<Vector> = v
        .chunks(n)
        .map(|c| {
            c.iter()
                .map(|&x| Rational::from_integer(x.into()))
                .collect()
        })
        .collect();
    ideal_generated_by(a, &vectors).unwrap()
}

/// Checks the special-ideal sum for one pair of ideals against the default family
/// `family` enlarged by `I`, `J` and `I + J`. Returns whether the hypotheses held.
pub fn witness_family(a: &CompatAlgebra) -> Vec<Subspace> {
    default_witness_family(a, WitnessConfig::default()).unwrap()
}

pub fn sum_of_special_nilpotent(
    a: &CompatAlgebra,
    family: &[Subspace],
    i: &Subspace,
    j: &Subspace,
) -> Result<bool, TestCaseError> {
    let sum = i.sum(j).unwrap();
    let mut family = family.to_vec();
    for s in [i, j, &sum] {
        if !family.contains(s) {
            family.push(s.clone());
        }
    }
    let special_nil = |s: &Subspace| {
        is_special_ideal_against(a, s, &family).unwrap()
            && internal_lower_central_series(a, s).unwrap().reaches_zero()
    };
    if !(special_nil(i) && special_nil(j)) {
        return Ok(false);
    }
    prop_assert!(is_ideal(a, &sum).unwrap());
    prop_assert!(special_nil(&sum), "I + J is not special nilpotent");
    Ok(true)
}

pub fn round_trip(name: &str, text: &str) -> Result<(), TestCaseError> {
    let a = parse_algebra(text).map_err(|e| TestCaseError::fail(format!("{name}: {e}")))?;
    prop_assert_eq!(serialize_algebra(&a), text, "{} is not byte-exact", name);
    prop_assert_eq!(parse_algebra(&serialize_algebra(&a)).unwrap(), a);
    Ok(())
}

/// Field axioms on three rationals and ring identities on matrices.
pub fn scalar_linalg_axioms(
    (x, y, z): (Rational, Rational, Rational),
    (a, b, c): (MatrixQ, MatrixQ, MatrixQ),
) -> Result<(), TestCaseError> {
    prop_assert_eq!(&(&x + &y) + &z, &x + &(&y + &z));
    prop_assert_eq!(&x * &(&y + &z), &(&x * &y) + &(&x * &z));
    prop_assert_eq!(&x * &y, &y * &x);
    if !x.is_zero() {
        prop_assert!((&x * &x.recip()).is_one());
    }
    let (sx, sy) = (Scalar::Rational(x.clone()), Scalar::Rational(y.clone()));
    let poly = &(&Scalar::var("t") * &sx) + &sy;
    prop_assert_eq!(
        (&poly * &poly)
            .substitute(&[("t".to_string(), z.clone())].into())
            .unwrap(),
        (&(&x * &z) + &y) * (&(&x * &z) + &y)
    );
    prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
    prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
    prop_assert_eq!((&a * &b).transpose(), &b.transpose() * &a.transpose());
    let (r, rank) = rref(&a);
    prop_assert_eq!(rref(&r).0, r.clone());
    prop_assert_eq!(rank, a.transpose().rank());
    let ker = compatlie::linalg::kernel(&a);
    prop_assert_eq!(rank + ker.dim(), a.cols());
    for v in ker.basis() {
        prop_assert!(a.apply(v).iter().all(Zero::is_zero));
    }
    if let Some(inv) = inverse(&a) {
        prop_assert_eq!(&a * &inv, MatrixQ::identity(a.rows()));
    } else {
        prop_assert!(rank < a.rows());
    }
    Ok(())
}
