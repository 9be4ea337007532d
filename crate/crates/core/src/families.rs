//! Named algebras: the filiform families, the model compatible algebras
//! `L_s`, worked examples, and the one-dimensional extension tables.

use std::collections::BTreeMap;

use num_integer::binomial;
use num_traits::One;

use crate::algebra::{default_labels, BracketTensor, CompatAlgebra};
use crate::error::{Error, Result};
use crate::scalar::{int, Rational, Scalar};

fn factorial(n: usize) -> Rational {
    (1..=n as i64).fold(Rational::one(), |acc, k| acc * int(k))
}

/// Model filiform Lie algebra: `[e1, ei] = e(i+1)` for `2 <= i <= n-1`.
pub fn make_ln(n: usize) -> Result<BracketTensor> {
    if n < 4 {
        return Err(Error::Invalid(format!("L_n needs n >= 4, got {n}")));
    }
    let mut t = BracketTensor::new(n);
    for i in 2..n {
        t.add(0, i - 1, i, 1);
    }
    Ok(t)
}

/// `L_n` plus `[e2, ei] = e(i+2)` for `3 <= i <= n-2`.
pub fn make_rn(n: usize) -> Result<BracketTensor> {
    let mut t = make_ln(n)?;
    for i in 3..=n - 2 {
        t.add(1, i - 1, i + 1, 1);
    }
    Ok(t)
}

/// Coefficient of `[e_i, e_j]` on `e_{i+j}` in `W_n`.
pub fn wn_coefficient(i: usize, j: usize) -> Rational {
    int(6) * int(j as i64 - i as i64) * factorial(i - 2) * factorial(j - 2) / factorial(i + j - 2)
}

/// `L_n` plus `[e_i, e_j] = 6(j-i)(i-2)!(j-2)!/(i+j-2)! e_{i+j}` for
/// `2 <= i < j <= n-2`, `i + j <= n`.
pub fn make_wn(n: usize) -> Result<BracketTensor> {
    if n < 7 {
        return Err(Error::Invalid(format!("W_n needs n >= 7, got {n}")));
    }
    let mut t = make_ln(n)?;
    for i in 2..=n - 2 {
        for j in i + 1..=n - 2 {
            if i + j <= n {
                t.add(
                    i - 1,
                    j - 1,
                    i + j - 1,
                    Scalar::Rational(wn_coefficient(i, j)),
                );
            }
        }
    }
    Ok(t)
}

pub fn lr_pair(n: usize) -> Result<CompatAlgebra> {
    Ok(CompatAlgebra::from_brackets(make_ln(n)?, make_rn(n)?))
}

pub fn lw_pair(n: usize) -> Result<CompatAlgebra> {
    Ok(CompatAlgebra::from_brackets(make_ln(n)?, make_wn(n)?))
}

pub fn rw_pair(n: usize) -> Result<CompatAlgebra> {
    Ok(CompatAlgebra::from_brackets(make_rn(n)?, make_wn(n)?))
}

/// Block sizes `(n_1, ..., n_t)` of a model filiform compatible algebra.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct SeriesSpec {
    n_values: Vec<usize>,
}

impl SeriesSpec {
    pub fn new(n_values: Vec<usize>) -> Result<Self> {
        if n_values.is_empty() {
            return Err(Error::Invalid("series needs at least one block".into()));
        }
        if n_values.iter().sum::<usize>() == 0 {
            return Err(Error::Invalid("series needs n >= 1".into()));
        }
        Ok(SeriesSpec { n_values })
    }

    pub fn values(&self) -> &[usize] {
        &self.n_values
    }

    /// Partial sums `n_1, n_1 + n_2, ...`.
    pub fn cumulative(&self) -> Vec<usize> {
        self.n_values
            .iter()
            .scan(0, |acc, &x| {
                *acc += x;
                Some(*acc)
            })
            .collect()
    }

    pub fn total(&self) -> usize {
        self.n_values.iter().sum()
    }

    /// Block (0-based) containing chain index `i >= 1`.
    pub fn block_of(&self, i: usize) -> usize {
        self.cumulative()
            .iter()
            .position(|&c| i <= c)
            .expect("index within the series")
    }
}

impl std::str::FromStr for SeriesSpec {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        let vals = s
            .split(',')
            .map(|x| {
                x.trim()
                    .parse::<usize>()
                    .map_err(|_| Error::Invalid(format!("bad series entry `{x}`")))
            })
            .collect::<Result<Vec<_>>>()?;
        SeriesSpec::new(vals)
    }
}

impl std::fmt::Display for SeriesSpec {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let v: Vec<String> = self.n_values.iter().map(|x| x.to_string()).collect();
        write!(f, "({})", v.join(","))
    }
}

/// The chain `[e0, ei] = e(i+1)`, `1 <= i <= n-1`, on `e0..en`, with the
/// product for `i` taken from the first bracket in odd blocks and from the
/// second in even blocks.
pub fn make_ls(s: &SeriesSpec) -> CompatAlgebra {
    let n = s.total();
    let mut b1 = BracketTensor::new(n + 1);
    let mut b2 = BracketTensor::new(n + 1);
    for i in 1..n {
        if s.block_of(i).is_multiple_of(2) {
            b1.add(0, i, i + 1, 1);
        } else {
            b2.add(0, i, i + 1, 1);
        }
    }
    CompatAlgebra::from_brackets(b1, b2)
        .with_labels(default_labels(n + 1, 0))
        .expect("matching dimension")
}

/// Builder for tables written with 1-based indices.
struct Table {
    b1: BracketTensor,
    b2: BracketTensor,
}

impl Table {
    fn new(dim: usize) -> Self {
        Table {
            b1: BracketTensor::new(dim),
            b2: BracketTensor::new(dim),
        }
    }

    fn p1(&mut self, i: usize, j: usize, k: usize, c: impl Into<Scalar>) {
        self.b1.add(i - 1, j - 1, k - 1, c);
    }

    fn p2(&mut self, i: usize, j: usize, k: usize, c: impl Into<Scalar>) {
        self.b2.add(i - 1, j - 1, k - 1, c);
    }

    fn finish(self, labels: Vec<String>, params: &[&str]) -> CompatAlgebra {
        CompatAlgebra::new(
            labels,
            params.iter().map(|s| s.to_string()).collect(),
            self.b1,
            self.b2,
        )
        .expect("table is consistent")
    }
}

fn v(name: &str) -> Scalar {
    Scalar::var(name)
}

/// The seven-dimensional algebra whose nilpotent ideals `I_1`, `I_2` sum to a
/// non-nilpotent algebra.
pub fn example7() -> CompatAlgebra {
    let mut t = Table::new(7);
    t.p1(1, 2, 4, 1);
    t.p1(1, 3, 5, 1);
    t.p1(2, 3, 6, 1);
    t.p1(4, 3, 7, 1);
    t.p1(1, 6, 7, 1);
    t.p2(6, 1, 2, 1);
    t.p2(1, 7, 4, 1);
    t.p2(3, 4, 2, 1);
    t.p2(7, 3, 6, 1);
    t.finish(default_labels(7, 1), &[])
}

/// The nilpotent pair whose derivations are all nilpotent.
pub fn existcc_n(n: usize) -> Result<CompatAlgebra> {
    if n < 5 {
        return Err(Error::Invalid(format!("existcc needs n >= 5, got {n}")));
    }
    let mut t = Table::new(n);
    for i in 2..n {
        t.p1(i, 1, i + 1, 1);
    }
    for i in 3..=n - 2 {
        t.p1(i, 2, i + 2, 1);
    }
    t.p2(2, 1, n - 1, 1);
    t.p2(3, 1, n, -1);
    Ok(t.finish(default_labels(n, 1), &[]))
}

/// Its one-dimensional solvable extension at `n = 7`, with formal `a1..a4`.
pub fn existcc_r() -> CompatAlgebra {
    let x = 8;
    let mut t = Table::new(8);
    for i in 2..=6 {
        t.p1(i, 1, i + 1, 1);
    }
    for i in 3..=5 {
        t.p1(i, 2, i + 2, 1);
    }
    for i in 1..=7 {
        t.p1(i, x, i, i as i64);
    }
    t.p2(2, 1, 6, 1);
    t.p2(1, 3, 7, 1);
    t.p2(1, x, 6, v("a1"));
    t.p2(1, x, 7, v("a2"));
    t.p2(2, x, 6, v("a3"));
    t.p2(2, x, 7, v("a4"));
    t.p2(3, x, 6, -3);
    t.p2(3, x, 7, v("a3"));
    let mut labels = default_labels(7, 1);
    labels.push("x".into());
    t.finish(labels, &["a1", "a2", "a3", "a4"])
}

fn x_labels(dim: usize) -> Vec<String> {
    (0..dim).map(|i| format!("X{i}")).collect()
}

/// Graded family with four free parameters.
pub fn f1() -> CompatAlgebra {
    let mut t = Table::new(7);
    for i in 1..=4 {
        t.p1(1, i + 1, i + 2, 1);
        t.p2(1, i + 1, i + 2, v(&format!("alpha{i}")));
    }
    t.p2(1, 6, 7, 1);
    t.finish(x_labels(7), &["alpha1", "alpha2", "alpha3", "alpha4"])
}

/// Graded family with parameters `alpha`, `beta`, `lambda`.
pub fn f2() -> CompatAlgebra {
    let mut t = Table::new(7);
    // 1-based positions: X_k sits at k + 1.
    for i in 1..=4 {
        t.p1(1, i + 1, i + 2, 1);
    }
    t.p2(1, 2, 3, v("alpha"));
    t.p2(1, 3, 4, v("beta"));
    t.p2(1, 4, 5, v("beta"));
    t.p2(1, 5, 6, v("alpha"));
    t.p2(1, 6, 7, 1);
    t.p2(2, 3, 4, v("lambda"));
    t.p2(2, 4, 5, v("lambda"));
    t.p2(3, 4, 6, v("lambda"));
    t.finish(x_labels(7), &["alpha", "beta", "lambda"])
}

pub const NAMED_EXAMPLES: [&str; 5] = ["example7", "existcc", "existcc_r", "f1", "f2"];

/// `existcc` takes `n` (default 7); the others ignore it.
pub fn make_named_example(name: &str, n: Option<usize>) -> Result<CompatAlgebra> {
    match name {
        "example7" => Ok(example7()),
        "existcc" => existcc_n(n.unwrap_or(7)),
        "existcc_r" => Ok(existcc_r()),
        "f1" => Ok(f1()),
        "f2" => Ok(f2()),
        other => Err(Error::UnknownName(other.to_string())),
    }
}

/// Identifiers of the one-dimensional extension tables:
/// (L_n, R_n) via Der(L_n), via Der(R_n), via Der(N);
/// (L_n, W_n) via Der(L_n), via Der(W_n), via Der(N) and its swapped form.
pub const EXTENSION_TABLES: [&str; 7] = [
    "lr-derl",
    "lr-derr",
    "lr-dern",
    "lw-derl",
    "lw-derw",
    "lw-dern",
    "lw-dern-swap",
];

/// Parameter names of a table, in display order.
pub fn table_parameters(table_id: &str, n: usize) -> Result<Vec<String>> {
    let s = |x: &str| x.to_string();
    let mut p = Vec::new();
    match table_id {
        "lr-derl" | "lr-dern" => {
            p.extend([s("b1_1"), format!("b1_{}", n - 1), format!("b1_{n}")]);
            p.extend((3..=n).map(|t| format!("b2_{t}")));
        }
        "lr-derr" => {
            p.extend([s("a1_1"), format!("a1_{}", n - 1), format!("a1_{n}")]);
            p.extend((4..=n).map(|t| format!("a2_{t}")));
        }
        "lw-derl" => {
            p.extend([
                s("g"),
                s("g1"),
                format!("g{}", n - 2),
                format!("g{}", n - 1),
            ]);
            p.extend([s("tau1"), s("tau2"), s("tau3")]);
            p.extend((n - 2..=n).map(|k| format!("a2_{k}")));
        }
        "lw-derw" => {
            p.extend([s("a1_1"), format!("a1_{}", n - 1), format!("a1_{n}")]);
            p.extend((n - 2..=n).map(|k| format!("a2_{k}")));
            p.extend([s("tau2"), s("tau3")]);
        }
        "lw-dern" | "lw-dern-swap" => {
            p.extend(["a3", "a4", "g", "g1", "g2", "g3", "g4"].map(s));
        }
        other => return Err(Error::UnknownName(other.to_string())),
    }
    Ok(p)
}

/// The `(n+1)`-dimensional extension table on `e1..en, x`, exactly as
/// displayed, with formal parameters; `params` substitutes values for any
/// subset of them.
pub fn make_extension_table(
    table_id: &str,
    n: usize,
    params: &BTreeMap<String, Scalar>,
) -> Result<CompatAlgebra> {
    if n < 7 {
        return Err(Error::Invalid(format!(
            "extension tables need n >= 7, got {n}"
        )));
    }
    let names = table_parameters(table_id, n)?;
    for k in params.keys() {
        if !names.contains(k) {
            return Err(Error::UndeclaredParameter(k.clone()));
        }
    }
    let base = if table_id.starts_with("lr") {
        lr_pair(n)?
    } else {
        lw_pair(n)?
    };
    let x = n + 1;
    let mut t = Table::new(n + 1);
    t.b1 = base.bracket1().extend_dim(n + 1);
    t.b2 = base.bracket2().extend_dim(n + 1);
    let w = make_wn(n).ok();
    let w_entry = |i: usize, j: usize, k: usize| -> Scalar {
        w.as_ref()
            .map(|w| w.entry(i - 1, j - 1, k - 1))
            .unwrap_or_default()
    };
    match table_id {
        "lr-derl" | "lr-dern" => {
            for i in 1..=n {
                t.p1(i, x, i, i as i64);
            }
            der_n_action(&mut t, n, x, "b", true);
        }
        "lr-derr" => {
            t.p1(1, x, 1, v("a1_1"));
            t.p1(1, x, n - 1, v(&format!("a1_{}", n - 1)));
            t.p1(1, x, n, v(&format!("a1_{n}")));
            for i in 2..=n {
                t.p1(i, x, i, &Scalar::from_int(i as i64) * &v("a1_1"));
                for tt in 4..=n + 2 - i {
                    t.p1(i, x, tt + i - 2, v(&format!("a2_{tt}")));
                }
            }
            for i in 1..=n {
                t.p2(i, x, i, i as i64);
            }
        }
        "lw-derl" => {
            t.p1(1, x, 1, 1);
            for i in 2..=n {
                t.p1(i, x, i, i as i64);
                for k in n - 2..=n {
                    if k + i - 2 <= n {
                        t.p1(i, x, k + i - 2, v(&format!("a2_{k}")));
                    }
                }
            }
            let gm2 = v(&format!("g{}", n - 2));
            let gm1 = v(&format!("g{}", n - 1));
            t.p2(1, x, 1, v("g"));
            t.p2(1, x, n - 1, gm2.clone());
            t.p2(1, x, n, &gm1 + &v("tau1"));
            for i in 2..=n {
                t.p2(i, x, i, &Scalar::from_int(i as i64) * &v("g"));
                // g1 {e_i, e_1} = -g1 e_{i+1}
                if i < n {
                    t.p2(i, x, i + 1, -v("g1"));
                }
                // g_{n-2} {e_i, e_{n-2}}
                if i + n - 2 <= n && i != n - 2 {
                    t.p2(i, x, i + n - 2, &gm2 * &w_entry(i, n - 2, i + n - 2));
                }
                if (2..=4).contains(&i) {
                    t.p2(i, x, n - 4 + i, v("tau2"));
                }
                if (2..=3).contains(&i) {
                    t.p2(i, x, n - 3 + i, v("tau3"));
                }
            }
        }
        "lw-derw" => {
            t.p1(1, x, 1, v("a1_1"));
            t.p1(1, x, n - 1, v(&format!("a1_{}", n - 1)));
            t.p1(1, x, n, v(&format!("a1_{n}")));
            for i in 2..=n {
                t.p1(i, x, i, &Scalar::from_int(i as i64) * &v("a1_1"));
                for k in n - 2..=n {
                    if k + i - 2 <= n {
                        t.p1(i, x, k + i - 2, v(&format!("a2_{k}")));
                    }
                }
            }
            for i in 1..=n {
                t.p2(i, x, i, i as i64);
            }
            t.p2(2, x, n - 2, v("tau2"));
            t.p2(2, x, n - 1, v("tau3"));
            t.p2(3, x, n - 1, v("tau2"));
            t.p2(3, x, n, v("tau3"));
            t.p2(4, x, n, v("tau2"));
        }
        "lw-dern" | "lw-dern-swap" => {
            let swap = table_id == "lw-dern-swap";
            let c = crate::scalar::rat((n - 4) as i64, ((n - 3) * (n - 2)) as i64);
            let mut first = Table::new(n + 1);
            let mut second = Table::new(n + 1);
            first.p1(1, x, 1, 1);
            first.p1(2, x, 2, 2);
            first.p1(2, x, n - 2, v("a3"));
            first.p1(2, x, n - 1, v("a4"));
            first.p1(3, x, 3, 3);
            first.p1(3, x, n - 1, v("a3"));
            first.p1(3, x, n, v("a4"));
            first.p1(4, x, 4, 4);
            first.p1(4, x, n, v("a3"));
            second.p1(1, x, 1, v("g"));
            second.p1(1, x, n - 1, v("g1"));
            second.p1(1, x, n, v("g2"));
            second.p1(2, x, 2, &Scalar::from_int(2) * &v("g"));
            second.p1(2, x, n - 2, v("g3"));
            second.p1(2, x, n - 1, v("g4"));
            second.p1(2, x, n, v("g1").scale(&c));
            second.p1(3, x, 3, &Scalar::from_int(3) * &v("g"));
            second.p1(3, x, n - 1, v("g3"));
            second.p1(3, x, n, v("g4"));
            second.p1(4, x, 4, &Scalar::from_int(4) * &v("g"));
            second.p1(4, x, n, v("g3"));
            for i in 5..=n {
                first.p1(i, x, i, i as i64);
                second.p1(i, x, i, &Scalar::from_int(i as i64) * &v("g"));
            }
            let (a1, a2) = if swap {
                (second.b1, first.b1)
            } else {
                (first.b1, second.b1)
            };
            t.b1 = t.b1.plus(&a1);
            t.b2 = t.b2.plus(&a2);
        }
        _ => unreachable!("checked by table_parameters"),
    }
    let mut labels = default_labels(n, 1);
    labels.push("x".into());
    let refs: Vec<&str> = names.iter().map(String::as_str).collect();
    let a = t.finish(labels, &refs);
    let asg: BTreeMap<String, crate::scalar::Poly> = params
        .iter()
        .map(|(k, s)| (k.clone(), s.to_poly()))
        .collect();
    Ok(a.substitute_polys(&asg))
}

/// `{e_1,x} = p1_1 e_1 + p1_{n-1} e_{n-1} + p1_n e_n`,
/// `{e_i,x} = i p1_1 e_i + sum_{t=3}^{n-i+2} p2_t e_{t+i-2}` in the chosen
/// bracket.
fn der_n_action(t: &mut Table, n: usize, x: usize, prefix: &str, second: bool) {
    let name = |a: usize, b: usize| v(&format!("{prefix}{a}_{b}"));
    let mut put = |i: usize, k: usize, c: Scalar| {
        if second {
            t.p2(i, x, k, c)
        } else {
            t.p1(i, x, k, c)
        }
    };
    put(1, 1, name(1, 1));
    put(1, n - 1, name(1, n - 1));
    put(1, n, name(1, n));
    for i in 2..=n {
        put(i, i, &Scalar::from_int(i as i64) * &name(1, 1));
        for tt in 3..=n + 2 - i {
            put(i, tt + i - 2, name(2, tt));
        }
    }
}

/// `binom(a, b)` as a rational, zero when `b > a`.
pub fn binom(a: usize, b: usize) -> Rational {
    if b > a {
        return int(0);
    }
    Rational::from_integer(binomial(
        num_bigint::BigInt::from(a),
        num_bigint::BigInt::from(b),
    ))
}

/// Names accepted by [`make_family`].
pub const FAMILY_NAMES: [&str; 12] = [
    "ln",
    "rn",
    "wn",
    "lr",
    "lw",
    "rw",
    "ls",
    "example7",
    "existcc",
    "existcc_r",
    "f1",
    "f2",
];

/// Any named algebra. For `ls` the argument is a comma-separated series.
pub fn make_family(name: &str, arg: &str) -> Result<CompatAlgebra> {
    let n = || -> Result<usize> {
        arg.parse()
            .map_err(|_| Error::Invalid(format!("expected a dimension, got `{arg}`")))
    };
    match name {
        "ln" => Ok(CompatAlgebra::lie(make_ln(n()?)?)),
        "rn" => Ok(CompatAlgebra::lie(make_rn(n()?)?)),
        "wn" => Ok(CompatAlgebra::lie(make_wn(n()?)?)),
        "lr" => lr_pair(n()?),
        "lw" => lw_pair(n()?),
        "rw" => rw_pair(n()?),
        "ls" => Ok(make_ls(&arg.parse()?)),
        "existcc" => existcc_n(n()?),
        other if NAMED_EXAMPLES.contains(&other) => make_named_example(other, None),
        other if EXTENSION_TABLES.contains(&other) => {
            make_extension_table(other, n()?, &BTreeMap::new())
        }
        other => Err(Error::UnknownName(other.to_string())),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{check_compatibility, check_jacobi};
    use crate::scalar::rat;

    #[test]
    fn wn_coefficients() {
        let w7 = make_wn(7).unwrap();
        assert_eq!(w7.entry(1, 2, 4), Scalar::one());
        assert_eq!(w7.entry(2, 3, 6), Scalar::Rational(rat(1, 10)));
        let w8 = make_wn(8).unwrap();
        assert_eq!(w8.entry(1, 3, 5), Scalar::one());
        assert!(make_wn(6).is_err());
    }

    #[test]
    fn rn_range() {
        let r = make_rn(7).unwrap();
        assert_eq!(r.entry(1, 4, 6), Scalar::one());
        assert!(r.product(1, 5).is_empty());
    }

    #[test]
    fn families_are_lie() {
        for n in 7..=12 {
            assert!(check_jacobi(&make_ln(n).unwrap()).holds);
            assert!(check_jacobi(&make_rn(n).unwrap()).holds);
            assert!(check_jacobi(&make_wn(n).unwrap()).holds);
        }
    }

    #[test]
    fn ls_blocks() {
        let a = make_ls(&"2,2".parse().unwrap());
        assert_eq!(a.dim(), 5);
        assert_eq!(a.bracket1().entry(0, 1, 2), Scalar::one());
        assert_eq!(a.bracket1().entry(0, 2, 3), Scalar::one());
        assert_eq!(a.bracket2().entry(0, 3, 4), Scalar::one());
        assert_eq!(a.labels()[0], "e0");
        let model = make_ls(&"0,6".parse().unwrap());
        assert!(model.bracket1().is_zero());
        assert!(check_compatibility(&model).unwrap().holds);
    }

    #[test]
    fn named_examples_compatible() {
        assert!(check_compatibility(&example7()).unwrap().holds);
        assert!(check_compatibility(&existcc_n(7).unwrap()).unwrap().holds);
        assert!(make_named_example("nope", None).is_err());
    }

    #[test]
    fn binomials() {
        assert_eq!(binom(0, 1), int(0));
        assert_eq!(binom(4, 2), int(6));
    }
}
