//! JSON file formats for algebras and extension specs, and the report type
//! shared by the command line tool. Indices in files are 1-based.

use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use crate::algebra::{BracketTensor, CompatAlgebra, Identity, Witness};
use crate::constraints::{Contradiction, Origin};
use crate::error::{Error, Result};
use crate::extensions::{ExtensionSpec, Generator, ScalarMatrix};
use crate::scalar::{parse_expr, Scalar};

#[derive(Serialize, Deserialize, Clone, Debug, PartialEq, Eq)]
#[serde(deny_unknown_fields)]
pub struct TermRecord {
    pub k: usize,
    pub c: String,
}

#[derive(Serialize, Deserialize, Clone, Debug, PartialEq, Eq)]
#[serde(deny_unknown_fields)]
pub struct ProductRecord {
    pub i: usize,
    pub j: usize,
    pub terms: Vec<TermRecord>,
}

#[derive(Serialize, Deserialize, Clone, Debug, PartialEq, Eq)]
#[serde(deny_unknown_fields)]
pub struct AlgebraFile {
    pub dimension: usize,
    pub basis: Vec<String>,
    #[serde(default)]
    pub parameters: Vec<String>,
    #[serde(default)]
    pub bracket1: Vec<ProductRecord>,
    #[serde(default)]
    pub bracket2: Vec<ProductRecord>,
}

fn json_error(e: serde_json::Error) -> Error {
    Error::Format {
        line: e.line(),
        column: e.column(),
        message: e.to_string(),
    }
}

fn records(t: &BracketTensor) -> Vec<ProductRecord> {
    t.pairs()
        .filter(|(_, v)| !v.is_empty())
        .map(|(&(i, j), v)| ProductRecord {
            i: i + 1,
            j: j + 1,
            terms: v
                .iter()
                .map(|(&k, c)| TermRecord {
                    k: k + 1,
                    c: c.to_string(),
                })
                .collect(),
        })
        .collect()
}

fn parse_coefficient(src: &str, declared: &BTreeSet<&str>) -> Result<Scalar> {
    let c = parse_expr(src)?;
    for v in c.vars() {
        if !declared.contains(&*v) {
            return Err(Error::UndeclaredParameter(v.to_string()));
        }
    }
    Ok(c)
}

fn tensor(dim: usize, recs: &[ProductRecord], declared: &BTreeSet<&str>) -> Result<BracketTensor> {
    let mut t = BracketTensor::new(dim);
    let mut seen = BTreeSet::new();
    let check = |x: usize| -> Result<usize> {
        if x == 0 || x > dim {
            Err(Error::IndexOutOfRange { index: x, dim })
        } else {
            Ok(x - 1)
        }
    };
    for r in recs {
        let (i, j) = (check(r.i)?, check(r.j)?);
        if i >= j {
            return Err(Error::Invalid(format!(
                "product record ({}, {}) must have i < j",
                r.i, r.j
            )));
        }
        for term in &r.terms {
            let k = check(term.k)?;
            if !seen.insert((i, j, k)) {
                return Err(Error::Invalid(format!(
                    "duplicate entry ({}, {}, {})",
                    r.i, r.j, term.k
                )));
            }
            t.add(i, j, k, parse_coefficient(&term.c, declared)?);
        }
    }
    Ok(t)
}

impl AlgebraFile {
    pub fn from_algebra(a: &CompatAlgebra) -> Self {
        AlgebraFile {
            dimension: a.dim(),
            basis: a.labels().to_vec(),
            parameters: a.parameters().to_vec(),
            bracket1: records(a.bracket1()),
            bracket2: records(a.bracket2()),
        }
    }

    pub fn to_algebra(&self) -> Result<CompatAlgebra> {
        if self.basis.len() != self.dimension {
            return Err(Error::DimensionMismatch {
                expected: self.dimension,
                found: self.basis.len(),
            });
        }
        let declared: BTreeSet<&str> = self.parameters.iter().map(String::as_str).collect();
        if declared.len() != self.parameters.len() {
            return Err(Error::Invalid("duplicate parameter name".into()));
        }
        let b1 = tensor(self.dimension, &self.bracket1, &declared)?;
        let b2 = tensor(self.dimension, &self.bracket2, &declared)?;
        CompatAlgebra::new(self.basis.clone(), self.parameters.clone(), b1, b2)
    }
}

pub fn parse_algebra(text: &str) -> Result<CompatAlgebra> {
    let file: AlgebraFile = serde_json::from_str(text).map_err(json_error)?;
    file.to_algebra()
}

/// Pretty JSON with a trailing newline.
pub fn serialize_algebra(a: &CompatAlgebra) -> String {
    let mut s =
        serde_json::to_string_pretty(&AlgebraFile::from_algebra(a)).expect("plain data serializes");
    s.push('\n');
    s
}

pub fn read_algebra(path: &std::path::Path) -> Result<CompatAlgebra> {
    parse_algebra(&std::fs::read_to_string(path)?)
}

#[derive(Serialize, Deserialize, Clone, Debug, PartialEq, Eq)]
#[serde(deny_unknown_fields)]
pub struct GeneratorRecord {
    pub label: String,
    /// `d1[k][j]`: coefficient of `e_(k+1)` in `D1 e_(j+1)`. Omitted means zero.
    #[serde(default)]
    pub d1: Option<Vec<Vec<String>>>,
    #[serde(default)]
    pub d2: Option<Vec<Vec<String>>>,
}

#[derive(Serialize, Deserialize, Clone, Debug, PartialEq, Eq)]
#[serde(deny_unknown_fields)]
pub struct GeneratorBrackets {
    /// Records over generator indices `1..=r`; values are base vectors.
    #[serde(default)]
    pub bracket1: Vec<ProductRecord>,
    #[serde(default)]
    pub bracket2: Vec<ProductRecord>,
}

/// The generators of an extension; the base comes from a separate file.
#[derive(Serialize, Deserialize, Clone, Debug, PartialEq, Eq)]
#[serde(deny_unknown_fields)]
pub struct ExtensionFile {
    #[serde(default)]
    pub parameters: Vec<String>,
    pub generators: Vec<GeneratorRecord>,
    #[serde(default)]
    pub generator_brackets: Option<GeneratorBrackets>,
}

fn matrix(
    n: usize,
    rows: &Option<Vec<Vec<String>>>,
    declared: &BTreeSet<&str>,
) -> Result<ScalarMatrix> {
    let Some(rows) = rows else {
        return Ok(crate::extensions::zero_matrix(n));
    };
    if rows.len() != n || rows.iter().any(|r| r.len() != n) {
        return Err(Error::DimensionMismatch {
            expected: n,
            found: rows.len(),
        });
    }
    rows.iter()
        .map(|r| r.iter().map(|c| parse_coefficient(c, declared)).collect())
        .collect()
}

impl ExtensionFile {
    pub fn to_spec(&self, base: &CompatAlgebra) -> Result<ExtensionSpec> {
        let n = base.dim();
        let mut params: Vec<String> = base.parameters().to_vec();
        for p in &self.parameters {
            if !params.contains(p) {
                params.push(p.clone());
            }
        }
        let declared: BTreeSet<&str> = params.iter().map(String::as_str).collect();
        let generators = self
            .generators
            .iter()
            .map(|g| {
                Ok(Generator::new(
                    &g.label,
                    matrix(n, &g.d1, &declared)?,
                    matrix(n, &g.d2, &declared)?,
                ))
            })
            .collect::<Result<Vec<_>>>()?;
        let r = generators.len();
        let generator_brackets = match &self.generator_brackets {
            None => None,
            Some(gb) => {
                let lift = |recs: &[ProductRecord]| -> Result<BracketTensor> {
                    let small = tensor(n.max(r), recs, &declared)?;
                    let mut t = BracketTensor::new(n + r);
                    for (&(i, j), v) in small.pairs() {
                        if i >= r || j >= r {
                            return Err(Error::IndexOutOfRange {
                                index: j + 1,
                                dim: r,
                            });
                        }
                        for (&k, c) in v {
                            t.add(n + i, n + j, k, c.clone());
                        }
                    }
                    Ok(t)
                };
                Some((lift(&gb.bracket1)?, lift(&gb.bracket2)?))
            }
        };
        let mut spec = ExtensionSpec::new(base.clone(), generators);
        spec.generator_brackets = generator_brackets;
        spec.parameters = self.parameters.clone();
        Ok(spec)
    }
}

pub fn parse_extension(text: &str, base: &CompatAlgebra) -> Result<ExtensionSpec> {
    let file: ExtensionFile = serde_json::from_str(text).map_err(json_error)?;
    file.to_spec(base)
}

fn label(labels: &[String], i: usize) -> &str {
    labels.get(i).map(String::as_str).unwrap_or("?")
}

/// `L(e2,e4,x2) has coefficient 1 on e6`, with the algebra's own labels.
pub fn witness_text(w: &Witness, labels: &[String]) -> String {
    let (i, j, k) = w.triple;
    format!(
        "{}({},{},{}) has coefficient {} on {}",
        w.identity,
        label(labels, i),
        label(labels, j),
        label(labels, k),
        w.residual,
        label(labels, w.coordinate)
    )
}

pub fn origin_text(o: &Origin, labels: &[String]) -> String {
    let (i, j, k) = o.triple;
    format!(
        "{}({},{},{})[{}]",
        o.identity,
        label(labels, i),
        label(labels, j),
        label(labels, k),
        label(labels, o.coordinate)
    )
}

pub fn contradiction_text(c: &Contradiction, labels: &[String]) -> String {
    format!(
        "{}: {} reduces to {}",
        origin_text(&c.origin, labels),
        c.raw,
        crate::scalar::fmt_rational(&c.value)
    )
}

pub fn identity_name(i: Identity) -> String {
    i.to_string()
}

/// One checked property; a failing verdict makes the command exit with 1.
#[derive(Serialize, Clone, Debug, PartialEq, Eq)]
pub struct Verdict {
    pub name: String,
    pub holds: bool,
}

/// Informational output, in insertion order.
#[derive(Serialize, Clone, Debug, PartialEq, Eq)]
pub struct Fact {
    pub key: String,
    pub value: String,
}

#[derive(Serialize, Clone, Debug, PartialEq, Eq)]
pub struct Report {
    pub command: String,
    pub seed: u64,
    pub verdicts: Vec<Verdict>,
    pub facts: Vec<Fact>,
    pub witnesses: Vec<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub timings_ms: Option<Vec<Fact>>,
}

impl Report {
    pub fn new(command: impl Into<String>, seed: u64) -> Self {
        Report {
            command: command.into(),
            seed,
            verdicts: Vec::new(),
            facts: Vec::new(),
            witnesses: Vec::new(),
            timings_ms: None,
        }
    }

    pub fn verdict(&mut self, name: impl Into<String>, holds: bool) {
        self.verdicts.push(Verdict {
            name: name.into(),
            holds,
        });
    }

    pub fn fact(&mut self, key: impl Into<String>, value: impl ToString) {
        self.facts.push(Fact {
            key: key.into(),
            value: value.to_string(),
        });
    }

    pub fn witness(&mut self, w: impl Into<String>) {
        self.witnesses.push(w.into());
    }

    pub fn timing(&mut self, key: impl Into<String>, ms: u128) {
        self.timings_ms.get_or_insert_with(Vec::new).push(Fact {
            key: key.into(),
            value: ms.to_string(),
        });
    }

    pub fn all_hold(&self) -> bool {
        self.verdicts.iter().all(|v| v.holds)
    }

    pub fn to_text(&self) -> String {
        let mut s = format!("command: {}\nseed: {}\n", self.command, self.seed);
        for f in &self.facts {
            s.push_str(&format!("{}: {}\n", f.key, f.value));
        }
        for v in &self.verdicts {
            let mark = if v.holds { "yes" } else { "NO" };
            s.push_str(&format!("[{mark}] {}\n", v.name));
        }
        if !self.witnesses.is_empty() {
            s.push_str("witnesses:\n");
            for w in &self.witnesses {
                s.push_str(&format!("  {w}\n"));
            }
        }
        if let Some(t) = &self.timings_ms {
            for f in t {
                s.push_str(&format!("time {}: {} ms\n", f.key, f.value));
            }
        }
        s
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("plain data serializes");
        s.push('\n');
        s
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::families::{example7, make_family};

    #[test]
    fn example7_round_trip() {
        let a = example7();
        let text = serialize_algebra(&a);
        let b = parse_algebra(&text).unwrap();
        assert_eq!(a, b);
        assert_eq!(serialize_algebra(&b), text);
    }

    #[test]
    fn parametric_round_trip() {
        for name in ["f1", "f2", "existcc_r", "lr-derl", "lw-dern", "wn"] {
            let a = make_family(name, "7").unwrap();
            let text = serialize_algebra(&a);
            assert_eq!(parse_algebra(&text).unwrap(), a, "{name}");
        }
    }

    #[test]
    fn empty_brackets_are_abelian() {
        let a = parse_algebra(
            r#"{"dimension": 3, "basis": ["a","b","c"], "bracket1": [], "bracket2": []}"#,
        )
        .unwrap();
        assert!(a.bracket1().is_zero() && a.bracket2().is_zero());
    }

    #[test]
    fn rejects_bad_input() {
        let zero_den = r#"{"dimension": 2, "basis": ["a","b"], "bracket1": [{"i":1,"j":2,"terms":[{"k":1,"c":"1/0"}]}]}"#;
        assert!(matches!(
            parse_algebra(zero_den),
            Err(Error::ZeroDenominator)
        ));
        let unknown = r#"{"dimension": 1, "basis": ["a"], "extra": 1}"#;
        assert!(matches!(parse_algebra(unknown), Err(Error::Format { .. })));
        let range =
            r#"{"dimension": 2, "basis": ["a","b"], "bracket1": [{"i":1,"j":3,"terms":[]}]}"#;
        assert!(matches!(
            parse_algebra(range),
            Err(Error::IndexOutOfRange { .. })
        ));
        let undeclared = r#"{"dimension": 2, "basis": ["a","b"], "bracket1": [{"i":1,"j":2,"terms":[{"k":1,"c":"t"}]}]}"#;
        assert!(matches!(
            parse_algebra(undeclared),
            Err(Error::UndeclaredParameter(_))
        ));
        let dup = r#"{"dimension": 2, "basis": ["a","b"], "bracket1": [{"i":1,"j":2,"terms":[{"k":1,"c":"1"},{"k":1,"c":"2"}]}]}"#;
        assert!(matches!(parse_algebra(dup), Err(Error::Invalid(_))));
        let order =
            r#"{"dimension": 2, "basis": ["a","b"], "bracket1": [{"i":2,"j":1,"terms":[]}]}"#;
        assert!(matches!(parse_algebra(order), Err(Error::Invalid(_))));
        match parse_algebra("{\n  \"dimension\": ,\n}") {
            Err(Error::Format { line, .. }) => assert_eq!(line, 2),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn extension_file() {
        let base = make_family("ln", "4").unwrap();
        let text = r#"{
            "generators": [{"label": "x", "d1": [["1","0","0","0"],["0","1","0","0"],["0","0","2","0"],["0","0","0","3"]]}]
        }"#;
        let spec = parse_extension(text, &base).unwrap();
        let a = crate::extensions::build_semidirect(&spec).unwrap();
        assert_eq!(a.dim(), 5);
        let missing = r#"{"generators": [{"label": "x", "d1": [["1"]]}]}"#;
        assert!(parse_extension(missing, &base).is_err());
    }

    #[test]
    fn witness_uses_labels() {
        let w = Witness {
            identity: Identity::Mixed,
            triple: (1, 3, 8),
            coordinate: 5,
            residual: Scalar::one(),
        };
        let labels: Vec<String> = (1..=7)
            .map(|i| format!("e{i}"))
            .chain(["x1".into(), "x2".into()])
            .collect();
        assert_eq!(
            witness_text(&w, &labels),
            "L(e2,e4,x2) has coefficient 1 on e6"
        );
    }

    #[test]
    fn report_formats() {
        let mut r = Report::new("check a.json", 0);
        r.fact("dimension", 7);
        r.verdict("compatible", true);
        assert!(r.all_hold());
        assert_eq!(
            r.to_text(),
            "command: check a.json\nseed: 0\ndimension: 7\n[yes] compatible\n"
        );
        assert!(r.to_json().contains("\"holds\": true"));
    }
}
