//! Polynomial equation sets in the parameters and the linear substitution
//! reducer.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use num_traits::Zero;

use crate::algebra::Identity;
use crate::scalar::{Poly, Rational};

/// Where an equation came from: one coefficient of one residual.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct Origin {
    pub identity: Identity,
    /// 0-based basis indices.
    pub triple: (usize, usize, usize),
    pub coordinate: usize,
}

impl fmt::Display for Origin {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let (i, j, k) = self.triple;
        write!(
            f,
            "{}(e{},e{},e{})[e{}]",
            self.identity,
            i + 1,
            j + 1,
            k + 1,
            self.coordinate + 1
        )
    }
}

/// A canonical (monic) equation `equation = 0` with every residual
/// coefficient that produced it.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Constraint {
    pub equation: Poly,
    pub origins: Vec<(Origin, Poly)>,
}

/// An equation that reduced to a nonzero constant.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Contradiction {
    pub origin: Origin,
    /// The residual coefficient as extracted.
    pub raw: Poly,
    /// Its value after all substitutions.
    pub value: Rational,
}

impl fmt::Display for Contradiction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}: {} reduces to {}", self.origin, self.raw, self.value)
    }
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub enum Status {
    Open,
    /// Every equation is satisfied by the recorded substitutions.
    Solved,
    Inconsistent(Vec<Contradiction>),
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct ConstraintSet {
    equations: Vec<Constraint>,
    status: Status,
    /// Accumulated `parameter := polynomial` substitutions, fully composed.
    assignments: BTreeMap<String, Poly>,
    /// Parameters assumed nonzero; monomial factors in them may be cancelled.
    nonzero: BTreeSet<String>,
}

impl Default for ConstraintSet {
    fn default() -> Self {
        ConstraintSet::new()
    }
}

impl ConstraintSet {
    pub fn new() -> Self {
        ConstraintSet {
            equations: Vec::new(),
            status: Status::Open,
            assignments: BTreeMap::new(),
            nonzero: BTreeSet::new(),
        }
    }

    pub fn from_polys(polys: impl IntoIterator<Item = Poly>) -> Self {
        let mut set = ConstraintSet::new();
        for (idx, p) in polys.into_iter().enumerate() {
            set.push(
                p,
                Origin {
                    identity: Identity::Mixed,
                    triple: (idx, idx, idx),
                    coordinate: idx,
                },
            );
        }
        set
    }

    /// Adds `raw = 0`, merging with an existing equation of the same
    /// canonical form. Zero equations are dropped.
    pub fn push(&mut self, raw: Poly, origin: Origin) {
        if raw.is_zero() {
            return;
        }
        let (_, monic) = raw.monic();
        if let Some(c) = self.equations.iter_mut().find(|c| c.equation == monic) {
            c.origins.push((origin, raw));
        } else {
            self.equations.push(Constraint {
                equation: monic,
                origins: vec![(origin, raw)],
            });
        }
    }

    pub fn equations(&self) -> &[Constraint] {
        &self.equations
    }

    pub fn polys(&self) -> Vec<&Poly> {
        self.equations.iter().map(|c| &c.equation).collect()
    }

    pub fn len(&self) -> usize {
        self.equations.len()
    }

    pub fn is_empty(&self) -> bool {
        self.equations.is_empty()
    }

    pub fn status(&self) -> &Status {
        &self.status
    }

    pub fn assignments(&self) -> &BTreeMap<String, Poly> {
        &self.assignments
    }

    pub fn is_inconsistent(&self) -> bool {
        matches!(self.status, Status::Inconsistent(_))
    }

    /// Whether `p` (up to a nonzero rational factor) is one of the equations.
    pub fn contains(&self, p: &Poly) -> bool {
        let (_, monic) = p.monic();
        self.equations.iter().any(|c| c.equation == monic)
    }

    pub fn assume_nonzero(mut self, name: &str) -> Self {
        self.nonzero.insert(name.to_string());
        self
    }

    /// Fixes a parameter, as when splitting into branches.
    pub fn assign(mut self, name: &str, value: Poly) -> Self {
        let single: BTreeMap<String, Poly> = [(name.to_string(), value.clone())].into();
        for v in self.assignments.values_mut() {
            *v = v.substitute_polys(&single);
        }
        self.assignments.insert(name.to_string(), value);
        self.rewrite();
        self
    }

    fn rewrite(&mut self) {
        let old = std::mem::take(&mut self.equations);
        for c in old {
            let reduced = c.equation.substitute_polys(&self.assignments);
            if reduced.is_zero() {
                continue;
            }
            let (_, monic) = reduced.monic();
            if let Some(existing) = self.equations.iter_mut().find(|e| e.equation == monic) {
                existing.origins.extend(c.origins);
            } else {
                self.equations.push(Constraint {
                    equation: monic,
                    origins: c.origins,
                });
            }
        }
    }

    fn cancel_nonzero_factors(&mut self) -> bool {
        let mut changed = false;
        for c in &mut self.equations {
            let content = c.equation.monomial_content();
            if content.is_one() {
                continue;
            }
            if content
                .factors()
                .iter()
                .all(|(v, _)| self.nonzero.contains(&**v))
            {
                c.equation = c.equation.divide_by_monomial(&content).monic().1;
                changed = true;
            }
        }
        changed
    }

    /// Picks `var := value` from the shortest equation that is linear in
    /// some parameter with a constant coefficient; among such parameters the
    /// greatest name wins.
    fn pick_substitution(&self) -> Option<(String, Poly)> {
        let mut order: Vec<usize> = (0..self.equations.len()).collect();
        order.sort_by_key(|&i| (self.equations[i].equation.len(), i));
        for i in order {
            let eq = &self.equations[i].equation;
            for v in eq.vars().iter().rev() {
                let Some((coef, rest)) = eq.split_linear(v) else {
                    continue;
                };
                let Some(c) = coef.as_constant() else {
                    continue;
                };
                if c.is_zero() {
                    continue;
                }
                return Some((v.to_string(), rest.scale(&(-c.recip()))));
            }
        }
        None
    }

    fn contradictions(&self) -> Vec<Contradiction> {
        let mut out = Vec::new();
        for c in &self.equations {
            if c.equation.as_constant().is_none() {
                continue;
            }
            let before = out.len();
            for (origin, raw) in &c.origins {
                if let Some(value) = raw.substitute_polys(&self.assignments).as_constant() {
                    if !value.is_zero() {
                        out.push(Contradiction {
                            origin: *origin,
                            raw: raw.clone(),
                            value,
                        });
                    }
                }
            }
            // Constant only after cancelling factors assumed nonzero.
            if out.len() == before {
                if let (Some((origin, raw)), Some(value)) =
                    (c.origins.first(), c.equation.as_constant())
                {
                    out.push(Contradiction {
                        origin: *origin,
                        raw: raw.clone(),
                        value,
                    });
                }
            }
        }
        out.sort_by_key(|a| a.origin);
        out
    }

    /// Substitutes linear solutions until none remain, then sets the status.
    pub fn reduce(mut self) -> Self {
        loop {
            self.rewrite();
            if self
                .equations
                .iter()
                .any(|c| c.equation.as_constant().is_some())
            {
                self.status = Status::Inconsistent(self.contradictions());
                return self;
            }
            // Before substituting, so that `v = 0` with `v` assumed nonzero
            // becomes `1 = 0` rather than `v := 0`.
            if self.cancel_nonzero_factors() {
                continue;
            }
            if let Some((var, value)) = self.pick_substitution() {
                self = self.assign(&var, value);
                continue;
            }
            break;
        }
        self.status = if self.equations.is_empty() {
            Status::Solved
        } else {
            Status::Open
        };
        self
    }

    /// Raw equations grouped by identity and triple, for display.
    pub fn by_origin(&self) -> BTreeMap<Origin, Poly> {
        let mut out = BTreeMap::new();
        for c in &self.equations {
            for (o, raw) in &c.origins {
                out.insert(*o, raw.clone());
            }
        }
        out
    }
}

impl fmt::Display for ConstraintSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (k, v) in &self.assignments {
            writeln!(f, "{k} := {v}")?;
        }
        for c in &self.equations {
            writeln!(f, "{} = 0", c.equation)?;
        }
        match &self.status {
            Status::Open => writeln!(f, "status: open"),
            Status::Solved => writeln!(f, "status: solved"),
            Status::Inconsistent(w) => {
                writeln!(f, "status: inconsistent")?;
                for c in w {
                    writeln!(f, "  {c}")?;
                }
                Ok(())
            }
        }
    }
}
