//! Series, center, ideals, special ideals and nilradical certificates. All
//! commutators use both products: `[S, T] = [S, T]_1 + [S, T]_2`.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::algebra::{BracketTensor, CompatAlgebra};
use crate::error::{Error, Result, Which};
use crate::linalg::{kernel_of_echelon, Echelon, Subspace, Vector};
use crate::scalar::{int, Rational, Scalar};

fn check_ambient(a: &CompatAlgebra, s: &Subspace) -> Result<()> {
    if s.ambient() != a.dim() {
        return Err(Error::DimensionMismatch {
            expected: a.dim(),
            found: s.ambient(),
        });
    }
    Ok(())
}

pub fn commutator_subspace(a: &CompatAlgebra, s: &Subspace, t: &Subspace) -> Result<Subspace> {
    a.require_rational()?;
    check_ambient(a, s)?;
    check_ambient(a, t)?;
    let mut e = Echelon::new(a.dim());
    for x in s.basis() {
        for y in t.basis() {
            for br in [a.bracket1(), a.bracket2()] {
                e.insert(br.apply_rational(x, y)?);
                if e.rank() == a.dim() {
                    return Ok(e.into_subspace());
                }
            }
        }
    }
    Ok(e.into_subspace())
}

/// Span of one bracket applied to all basis pairs of `s` and `t`.
pub fn bracket_subspace(
    a: &CompatAlgebra,
    which: Which,
    s: &Subspace,
    t: &Subspace,
) -> Result<Subspace> {
    a.require_rational()?;
    check_ambient(a, s)?;
    check_ambient(a, t)?;
    let br = a.bracket(which);
    let mut e = Echelon::new(a.dim());
    for x in s.basis() {
        for y in t.basis() {
            e.insert(br.apply_rational(x, y)?);
        }
    }
    Ok(e.into_subspace())
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct SeriesResult {
    /// Term 0 is the starting space; the final term repeats its predecessor.
    pub terms: Vec<Subspace>,
    pub stabilized: bool,
    /// Least `k` with a zero `k`-th term.
    pub nilindex: Option<usize>,
}

impl SeriesResult {
    pub fn dims(&self) -> Vec<usize> {
        self.terms.iter().map(Subspace::dim).collect()
    }

    pub fn reaches_zero(&self) -> bool {
        self.nilindex.is_some()
    }

    /// The stable term.
    pub fn limit(&self) -> &Subspace {
        self.terms.last().expect("series has a first term")
    }
}

fn run_series(
    start: Subspace,
    mut step: impl FnMut(&Subspace) -> Result<Subspace>,
) -> Result<SeriesResult> {
    let mut terms = vec![start];
    loop {
        let last = terms.last().expect("nonempty");
        let next = step(last)?;
        let done = &next == last;
        terms.push(next);
        if done {
            break;
        }
    }
    let nilindex = terms.iter().position(Subspace::is_zero);
    Ok(SeriesResult {
        terms,
        stabilized: true,
        nilindex,
    })
}

/// `C^0 = g`, `C^{k+1} = [g, C^k]`.
pub fn lower_central_series(a: &CompatAlgebra) -> Result<SeriesResult> {
    let g = Subspace::full(a.dim());
    run_series(g.clone(), |c| commutator_subspace(a, &g, c))
}

/// `D^0 = g`, `D^{k+1} = [D^k, D^k]`.
pub fn derived_series(a: &CompatAlgebra) -> Result<SeriesResult> {
    run_series(Subspace::full(a.dim()), |d| commutator_subspace(a, d, d))
}

pub fn is_nilpotent(a: &CompatAlgebra) -> Result<bool> {
    Ok(lower_central_series(a)?.reaches_zero())
}

pub fn is_solvable(a: &CompatAlgebra) -> Result<bool> {
    Ok(derived_series(a)?.reaches_zero())
}

pub fn nilindex(a: &CompatAlgebra) -> Result<Option<usize>> {
    Ok(lower_central_series(a)?.nilindex)
}

/// Series of a subspace under its own commutators: `C^{k+1}(I) = [I, C^k(I)]`.
pub fn internal_lower_central_series(a: &CompatAlgebra, i: &Subspace) -> Result<SeriesResult> {
    check_ambient(a, i)?;
    run_series(i.clone(), |c| commutator_subspace(a, i, c))
}

fn structure_rows(br: &BracketTensor, dim: usize, e: &mut Echelon) -> Result<()> {
    // x lies in the kernel of ad iff sum_i x_i [e_i, e_j] = 0 for all j.
    for j in 0..dim {
        let mut rows = vec![vec![Rational::from_integer(0.into()); dim]; dim];
        #[allow(clippy::needless_range_loop)]
        for i in 0..dim {
            for (&k, c) in &br.product(i, j) {
                rows[k][i] = c.as_rational().ok_or(Error::Parametric)?.clone();
            }
        }
        for r in rows {
            e.insert(r);
        }
    }
    Ok(())
}

/// `Z(g) = Z(g_1) ∩ Z(g_2)`.
pub fn center(a: &CompatAlgebra) -> Result<Subspace> {
    a.require_rational()?;
    let mut e = Echelon::new(a.dim());
    structure_rows(a.bracket1(), a.dim(), &mut e)?;
    structure_rows(a.bracket2(), a.dim(), &mut e)?;
    Ok(kernel_of_echelon(&e))
}

pub fn center_of(br: &BracketTensor) -> Result<Subspace> {
    let mut e = Echelon::new(br.dim());
    structure_rows(br, br.dim(), &mut e)?;
    Ok(kernel_of_echelon(&e))
}

pub fn is_ideal(a: &CompatAlgebra, s: &Subspace) -> Result<bool> {
    let g = Subspace::full(a.dim());
    s.contains_subspace(&commutator_subspace(a, s, &g)?)
}

pub fn is_subalgebra(a: &CompatAlgebra, s: &Subspace) -> Result<bool> {
    s.contains_subspace(&commutator_subspace(a, s, s)?)
}

/// Smallest ideal containing the given vectors.
pub fn ideal_generated_by(a: &CompatAlgebra, vectors: &[Vector]) -> Result<Subspace> {
    a.require_rational()?;
    let n = a.dim();
    let mut e = Echelon::new(n);
    let mut frontier: Vec<Vector> = Vec::new();
    for v in vectors {
        if v.len() != n {
            return Err(Error::DimensionMismatch {
                expected: n,
                found: v.len(),
            });
        }
        if e.insert(v.clone()) {
            frontier.push(v.clone());
        }
    }
    let units: Vec<Vector> = (0..n).map(|j| crate::linalg::unit_vector(n, j)).collect();
    while let Some(v) = frontier.pop() {
        for u in &units {
            for br in [a.bracket1(), a.bracket2()] {
                let w = br.apply_rational(&v, u)?;
                if e.insert(w.clone()) {
                    frontier.push(w);
                }
            }
        }
    }
    Ok(e.into_subspace())
}

/// The quotient algebra in the basis of coordinate vectors complementary to
/// the pivots of `i`.
pub fn quotient(a: &CompatAlgebra, i: &Subspace) -> Result<CompatAlgebra> {
    if !is_ideal(a, i)? {
        return Err(Error::NotIdeal);
    }
    let pivots = i.pivots();
    let keep: Vec<usize> = (0..a.dim()).filter(|j| !pivots.contains(j)).collect();
    let e = i.echelon();
    let m = keep.len();
    let mut tensors = Vec::new();
    for br in [a.bracket1(), a.bracket2()] {
        let mut t = BracketTensor::new(m);
        for (x, &p) in keep.iter().enumerate() {
            for (y, &q) in keep.iter().enumerate().skip(x + 1) {
                let mut w = br.apply_rational(
                    &crate::linalg::unit_vector(a.dim(), p),
                    &crate::linalg::unit_vector(a.dim(), q),
                )?;
                e.reduce(&mut w);
                for (z, &r) in keep.iter().enumerate() {
                    t.add(x, y, z, Scalar::Rational(w[r].clone()));
                }
            }
        }
        tensors.push(t);
    }
    let b2 = tensors.pop().expect("two tensors");
    let b1 = tensors.pop().expect("two tensors");
    let labels = keep.iter().map(|&j| a.labels()[j].clone()).collect();
    CompatAlgebra::new(labels, vec![], b1, b2)
}

/// Configuration of the finite family of ideals standing in for "every
/// ideal" in the definition of a special ideal.
#[derive(Clone, Copy, Debug)]
pub struct WitnessConfig {
    pub random_ideals: usize,
    pub seed: u64,
}

impl Default for WitnessConfig {
    fn default() -> Self {
        WitnessConfig {
            random_ideals: 25,
            seed: 0,
        }
    }
}

fn random_vector(rng: &mut ChaCha8Rng, n: usize) -> Vector {
    loop {
        let v: Vector = (0..n)
            .map(|_| {
                if rng.random_bool(0.5) {
                    int(0)
                } else {
                    int(rng.random_range(-3..=3))
                }
            })
            .collect();
        if !crate::linalg::is_zero_vector(&v) {
            return v;
        }
    }
}

/// `{g, C^i(g), D^i(g), center}` plus seeded random generated ideals.
pub fn default_witness_family(a: &CompatAlgebra, cfg: WitnessConfig) -> Result<Vec<Subspace>> {
    let mut out: Vec<Subspace> = Vec::new();
    let mut add = |s: Subspace| {
        if !out.contains(&s) {
            out.push(s);
        }
    };
    add(Subspace::full(a.dim()));
    for s in lower_central_series(a)?.terms {
        add(s);
    }
    for s in derived_series(a)?.terms {
        add(s);
    }
    add(center(a)?);
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    for _ in 0..cfg.random_ideals {
        let gens = rng.random_range(1..=2);
        let vs: Vec<Vector> = (0..gens)
            .map(|_| random_vector(&mut rng, a.dim()))
            .collect();
        add(ideal_generated_by(a, &vs)?);
    }
    Ok(out)
}

/// Whether `[[I, J]]` is an ideal for every `J` in `witnesses`.
pub fn is_special_ideal_against(
    a: &CompatAlgebra,
    i: &Subspace,
    witnesses: &[Subspace],
) -> Result<bool> {
    if !is_ideal(a, i)? {
        return Err(Error::NotIdeal);
    }
    for j in witnesses {
        if !is_ideal(a, j)? {
            return Err(Error::NotIdeal);
        }
        if !is_ideal(a, &commutator_subspace(a, i, j)?)? {
            return Ok(false);
        }
    }
    Ok(true)
}

pub fn is_special_ideal(a: &CompatAlgebra, i: &Subspace, cfg: WitnessConfig) -> Result<bool> {
    let mut family = default_witness_family(a, cfg)?;
    if !family.contains(i) {
        family.push(i.clone());
    }
    is_special_ideal_against(a, i, &family)
}

pub fn is_nilpotent_ideal(a: &CompatAlgebra, i: &Subspace) -> Result<bool> {
    if !is_ideal(a, i)? {
        return Err(Error::NotIdeal);
    }
    Ok(internal_lower_central_series(a, i)?.reaches_zero())
}

pub fn is_special_nilpotent_ideal(
    a: &CompatAlgebra,
    i: &Subspace,
    cfg: WitnessConfig,
) -> Result<bool> {
    Ok(is_nilpotent_ideal(a, i)? && is_special_ideal(a, i, cfg)?)
}

/// `n` is a special nilpotent ideal and adjoining any complementary
/// coordinate vector gives a non-nilpotent space.
pub fn verify_nilradical(a: &CompatAlgebra, n: &Subspace, cfg: WitnessConfig) -> Result<bool> {
    if !is_solvable(a)? {
        return Err(Error::NotSolvable);
    }
    if !is_special_nilpotent_ideal(a, n, cfg)? {
        return Ok(false);
    }
    for x in n.complement_basis() {
        let v = n.sum(&Subspace::span(a.dim(), vec![x]))?;
        if internal_lower_central_series(a, &v)?.reaches_zero() {
            return Ok(false);
        }
    }
    Ok(true)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::BracketTensor;

    fn ln(n: usize) -> BracketTensor {
        let mut t = BracketTensor::new(n);
        for i in 1..n - 1 {
            t.add(0, i, i + 1, 1);
        }
        t
    }

    #[test]
    fn second_bracket_image_in_example() {
        let a = crate::families::example7();
        let i2 = Subspace::coordinate(7, &[1, 2, 3, 4, 5, 6]);
        let d = commutator_subspace(&a, &i2, &i2).unwrap();
        assert_eq!(d, Subspace::coordinate(7, &[1, 5, 6]));
        let full = Subspace::full(7);
        let img = bracket_subspace(&a, Which::Second, &d, &full).unwrap();
        assert_eq!(img, Subspace::coordinate(7, &[1, 3, 5]));
        assert!(!d.contains_subspace(&img).unwrap());
        assert!(!is_ideal(&a, &d).unwrap());
    }

    #[test]
    fn abelian_series() {
        let a = CompatAlgebra::abelian(3);
        let s = lower_central_series(&a).unwrap();
        assert_eq!(s.dims(), vec![3, 0, 0]);
        assert_eq!(s.nilindex, Some(1));
        assert!(center(&a).unwrap().is_full());
    }

    #[test]
    fn model_filiform_center() {
        let a = CompatAlgebra::lie(ln(7));
        assert_eq!(center(&a).unwrap(), Subspace::coordinate(7, &[6]));
        let s = lower_central_series(&a).unwrap();
        assert_eq!(s.dims(), vec![7, 5, 4, 3, 2, 1, 0, 0]);
    }

    #[test]
    fn trivial_ideals() {
        let a = CompatAlgebra::lie(ln(5));
        assert!(is_ideal(&a, &Subspace::full(5)).unwrap());
        assert!(is_ideal(&a, &Subspace::zero(5)).unwrap());
        assert!(!is_ideal(&a, &Subspace::coordinate(5, &[1])).unwrap());
        let gen = ideal_generated_by(&a, &[crate::linalg::unit_vector(5, 2)]).unwrap();
        assert_eq!(gen, Subspace::coordinate(5, &[2, 3, 4]));
        let zero = Subspace::zero(5);
        assert!(commutator_subspace(&a, &zero, &Subspace::full(5))
            .unwrap()
            .is_zero());
        assert!(is_special_nilpotent_ideal(&a, &zero, WitnessConfig::default()).unwrap());
    }

    #[test]
    fn quotient_by_center() {
        let a = CompatAlgebra::lie(ln(6));
        let q = quotient(&a, &center(&a).unwrap()).unwrap();
        assert_eq!(q.dim(), 5);
        assert_eq!(lower_central_series(&q).unwrap().nilindex, Some(4));
    }
}
