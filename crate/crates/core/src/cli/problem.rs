//! Problem files: named algebras and modules plus a list of problems.
//!
//! ```json
//! {
//!   "field": "F2",
//!   "algebras": { "B": { "vars": ["x"], "relations": ["x^2"] } },
//!   "modules": { "k": { "kind": "residue", "algebra": "B" } },
//!   "problems": [ { "kind": "exal", "name": "dual", "algebra": "B", "module": "k" } ],
//!   "options": { "oracle": true }
//! }
//! ```
//!
//! Polynomials use integer coefficients, variable names, `+ - * ^` and
//! parentheses. Matrix entries are integers or strings such as `"-3/4"`.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::algebra::{finite_structure, FiniteModule, PresentedAlgebra, StructureAlgebra};
use crate::deformation::{quotient_model, BaseDeformationProblem, LiftProblem};
use crate::error::{Error, Result};
use crate::matrix::Matrix;
use crate::poly::parse::parse_with_names;
use crate::poly::{GroebnerBasis, Polynomial};
use crate::scalar::{Field, Scalar};

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ProblemFile {
    pub field: String,
    #[serde(default)]
    pub algebras: BTreeMap<String, AlgebraSpec>,
    #[serde(default)]
    pub modules: BTreeMap<String, ModuleSpec>,
    pub problems: Vec<ProblemSpec>,
    #[serde(default)]
    pub options: Options,
}

#[derive(Clone, Debug, Default, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AlgebraSpec {
    #[serde(default)]
    pub base_vars: Vec<String>,
    #[serde(default)]
    pub base_relations: Vec<String>,
    pub vars: Vec<String>,
    #[serde(default)]
    pub relations: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Entry {
    Integer(i64),
    Text(String),
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase", deny_unknown_fields)]
pub enum ModuleSpec {
    /// `k`, with every generator acting as zero.
    Residue { algebra: String },
    /// The finite model of the algebra acting on itself.
    Regular {
        algebra: String,
        #[serde(default)]
        truncate: Option<u32>,
    },
    /// One action matrix per generator, base generators first.
    Matrices {
        algebra: String,
        labels: Vec<String>,
        actions: Vec<Vec<Vec<Entry>>>,
    },
}

impl ModuleSpec {
    pub fn algebra(&self) -> &str {
        match self {
            ModuleSpec::Residue { algebra } | ModuleSpec::Regular { algebra, .. } | ModuleSpec::Matrices { algebra, .. } => algebra,
        }
    }
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase", deny_unknown_fields)]
pub enum ProblemSpec {
    Tmods {
        name: String,
        algebra: String,
        module: String,
    },
    Exal {
        name: String,
        algebra: String,
        module: String,
    },
    /// Lift the map `source → cover/ideal` given by `images` (elements of
    /// the cover, read modulo the ideal).
    Lift {
        name: String,
        source: String,
        cover: String,
        ideal: Vec<String>,
        images: Vec<String>,
    },
    /// Deform `algebra` along `A′ = k[y]/(extended_base) → A′/(ideal)`.
    Deform {
        name: String,
        algebra: String,
        module: String,
        extended_base: Vec<String>,
        ideal: Vec<String>,
        phi: Vec<Vec<Entry>>,
    },
}

impl ProblemSpec {
    pub fn name(&self) -> &str {
        match self {
            ProblemSpec::Tmods { name, .. } | ProblemSpec::Exal { name, .. } | ProblemSpec::Lift { name, .. } | ProblemSpec::Deform { name, .. } => name,
        }
    }

    pub fn kind(&self) -> &'static str {
        match self {
            ProblemSpec::Tmods { .. } => "tmods",
            ProblemSpec::Exal { .. } => "exal",
            ProblemSpec::Lift { .. } => "lift",
            ProblemSpec::Deform { .. } => "deform",
        }
    }
}

#[derive(Clone, Debug, Default, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Options {
    #[serde(default)]
    pub truncate: Option<u32>,
    #[serde(default)]
    pub oracle: bool,
    #[serde(default)]
    pub budget: Option<u64>,
}

fn at(location: &str, e: Error) -> Error {
    match e {
        Error::Syntax { offset, message } => Error::invalid(format!("{location}: syntax error at byte {offset}: {message}")),
        Error::Invalid(m) => Error::invalid(format!("{location}: {m}")),
        other => other,
    }
}

pub fn parse_entry(field: Field, e: &Entry) -> Result<Scalar> {
    match e {
        Entry::Integer(v) => Ok(field.from_i64(*v)),
        Entry::Text(t) => {
            let (num, den) = t.split_once('/').unwrap_or((t.as_str(), "1"));
            let parse = |s: &str| s.trim().parse::<i64>().map_err(|_| Error::invalid(format!("bad number `{t}`")));
            let d = field.from_i64(parse(den)?);
            let inv = d.inv().ok_or_else(|| Error::invalid(format!("zero denominator in `{t}`")))?;
            Ok(field.from_i64(parse(num)?) * inv)
        }
    }
}

impl ProblemFile {
    pub fn from_json(text: &str) -> Result<ProblemFile> {
        serde_json::from_str(text).map_err(|e| Error::invalid(format!("line {} column {}: {}", e.line(), e.column(), e)))
    }

    pub fn field(&self, override_field: Option<Field>) -> Result<Field> {
        match override_field {
            Some(f) => Ok(f),
            None => Field::parse(&self.field).map_err(|e| at("field", e)),
        }
    }
}

/// A problem file with every reference resolved and every object validated.
pub struct Resolved {
    pub field: Field,
    pub algebras: BTreeMap<String, PresentedAlgebra>,
    pub modules: BTreeMap<String, FiniteModule>,
}

impl Resolved {
    pub fn new(file: &ProblemFile, field: Field, truncate: Option<u32>) -> Result<Resolved> {
        let mut algebras = BTreeMap::new();
        for (name, def) in &file.algebras {
            let loc = format!("algebras.{name}");
            let b = PresentedAlgebra::parse(field, &strs(&def.base_vars), &strs(&def.base_relations), &strs(&def.vars), &strs(&def.relations))
                .map_err(|e| at(&loc, e))?;
            let v = b.violations();
            if !v.is_empty() {
                return Err(Error::invalid(format!("{loc}: {}", v.join("; "))));
            }
            algebras.insert(name.clone(), b);
        }
        let mut out = Resolved {
            field,
            algebras,
            modules: BTreeMap::new(),
        };
        for (name, def) in &file.modules {
            let loc = format!("modules.{name}");
            let b = out.algebra(def.algebra()).map_err(|e| at(&loc, e))?.clone();
            let m = match def {
                ModuleSpec::Residue { .. } => FiniteModule::residue_field(&b),
                ModuleSpec::Regular { truncate: t, .. } => FiniteModule::regular(&b, &quotient_model(&b, t.or(truncate)).map_err(|e| at(&loc, e))?),
                ModuleSpec::Matrices { labels, actions, .. } => {
                    let d = labels.len();
                    let mats = actions
                        .iter()
                        .enumerate()
                        .map(|(i, rows)| {
                            let rows = rows
                                .iter()
                                .map(|r| r.iter().map(|e| parse_entry(field, e)).collect::<Result<Vec<_>>>())
                                .collect::<Result<Vec<_>>>()?;
                            if rows.len() != d || rows.iter().any(|r| r.len() != d) {
                                return Err(Error::invalid(format!("action {i} is not {d}x{d}")));
                            }
                            Ok(Matrix::from_rows_with_cols(field, d, rows).expect("checked shape"))
                        })
                        .collect::<Result<Vec<_>>>()
                        .map_err(|e| at(&loc, e))?;
                    FiniteModule::new(field, labels.clone(), mats).map_err(|e| at(&loc, e))?
                }
            };
            let v = m.violations_over(&b);
            if !v.is_empty() {
                return Err(Error::invalid(format!("{loc}: {}", v.join("; "))));
            }
            out.modules.insert(name.clone(), m);
        }
        Ok(out)
    }

    pub fn algebra(&self, name: &str) -> Result<&PresentedAlgebra> {
        self.algebras.get(name).ok_or_else(|| Error::invalid(format!("unknown algebra `{name}`")))
    }

    pub fn module(&self, name: &str, algebra: &str) -> Result<&FiniteModule> {
        let m = self.modules.get(name).ok_or_else(|| Error::invalid(format!("unknown module `{name}`")))?;
        let b = self.algebra(algebra)?;
        if m.actions().len() != b.nvars() || !m.violations_over(b).is_empty() {
            return Err(Error::invalid(format!("module `{name}` is not a module over `{algebra}`")));
        }
        Ok(m)
    }

    pub fn lift_problem(&self, source: &str, cover: &str, ideal: &[String], images: &[String]) -> Result<LiftProblem> {
        let b = self.algebra(source)?.clone();
        let c = self.algebra(cover)?;
        if c.n_base() > 0 {
            return Err(Error::invalid("covers are presented over the ground field"));
        }
        let model = finite_structure(c)?;
        let names = c.all_vars();
        let parse = |s: &String| parse_with_names(s, self.field, &names).map(|p| model.coordinates(&p));
        let gens = ideal.iter().map(parse).collect::<Result<Vec<_>>>().map_err(|e| at("ideal", e))?;
        let span = ideal_span(&model.algebra, &gens);
        let lifted = images.iter().map(parse).collect::<Result<Vec<_>>>().map_err(|e| at("images", e))?;
        if lifted.len() != b.nvars() {
            return Err(Error::invalid(format!("images: expected {} images, found {}", b.nvars(), lifted.len())));
        }
        let q = model.algebra.quotient(&span)?;
        let images = lifted.iter().map(|v| q.projection.mul_vec(v)).collect();
        LiftProblem::new(b, model.algebra, span, images)
    }

    pub fn deformation_problem(&self, algebra: &str, module: &str, extended_base: &[String], ideal: &[String], phi: &[Vec<Entry>]) -> Result<BaseDeformationProblem> {
        let b = self.algebra(algebra)?;
        let m = self.module(module, algebra)?;
        let nb = b.n_base();
        let n = b.nvars();
        let base_names = b.base_vars().to_vec();
        let positions: Vec<usize> = (0..nb).collect();
        let parse = |s: &String| parse_with_names(s, self.field, &base_names).map(|p| p.embed(n, &positions));
        let g = extended_base.iter().map(parse).collect::<Result<Vec<_>>>().map_err(|e| at("extended_base", e))?;
        let iota = ideal.iter().map(parse).collect::<Result<Vec<_>>>().map_err(|e| at("ideal", e))?;
        let mut quotient = g.clone();
        quotient.extend(iota.iter().cloned());
        if !same_ideal(self.field, n, &quotient, b.base_relations(), b) {
            return Err(Error::invalid("the base relations must generate extended_base + ideal"));
        }
        let phi = phi
            .iter()
            .map(|v| v.iter().map(|e| parse_entry(self.field, e)).collect::<Result<Vec<_>>>())
            .collect::<Result<Vec<_>>>()
            .map_err(|e| at("phi", e))?;
        BaseDeformationProblem::new(base_names, g, iota, b.vars().to_vec(), b.relations().to_vec(), m.clone(), phi)
    }
}

fn strs(v: &[String]) -> Vec<&str> {
    v.iter().map(String::as_str).collect()
}

fn same_ideal(field: Field, n: usize, a: &[Polynomial], b: &[Polynomial], alg: &PresentedAlgebra) -> bool {
    let ga = GroebnerBasis::ideal(field, n, a, alg.order());
    let gb = GroebnerBasis::ideal(field, n, b, alg.order());
    a.iter().all(|p| gb.contains(p)) && b.iter().all(|p| ga.contains(p))
}

/// A basis of the ideal generated by `gens` in a structure algebra.
pub fn ideal_span(s: &StructureAlgebra, gens: &[Vec<Scalar>]) -> Vec<Vec<Scalar>> {
    let f = s.field();
    let mut span: Vec<Vec<Scalar>> = Vec::new();
    let mut frontier: Vec<Vec<Scalar>> = gens.to_vec();
    loop {
        let mut rows = span.clone();
        rows.extend(frontier.iter().cloned());
        if rows.is_empty() {
            return Vec::new();
        }
        let basis = Matrix::from_rows_with_cols(f, s.dim(), rows).expect("rows of algebra elements").row_space();
        let next: Vec<Vec<Scalar>> = (0..basis.rows()).map(|i| basis.row(i).to_vec()).collect();
        if next.len() == span.len() {
            return span;
        }
        frontier = next.iter().flat_map(|v| (0..s.dim()).map(move |a| (v.clone(), a))).map(|(v, a)| s.mul(&v, &s.basis(a))).collect();
        span = next;
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const DUAL: &str = r#"{
        "field": "F2",
        "algebras": { "B": { "vars": ["x"], "relations": ["x^2"] } },
        "modules": { "k": { "kind": "residue", "algebra": "B" } },
        "problems": [ { "kind": "exal", "name": "dual", "algebra": "B", "module": "k" } ]
    }"#;

    #[test]
    fn resolves_names() {
        let file = ProblemFile::from_json(DUAL).unwrap();
        let r = Resolved::new(&file, file.field(None).unwrap(), None).unwrap();
        assert_eq!(r.module("k", "B").unwrap().dim(), 1);
        assert!(r.module("k", "C").is_err());
    }

    #[test]
    fn syntax_errors_carry_a_location() {
        let bad = DUAL.replace("x^2", "x^^2");
        let file = ProblemFile::from_json(&bad).unwrap();
        let err = Resolved::new(&file, Field::Prime(2), None).err().unwrap().to_string();
        assert!(err.contains("algebras.B") && err.contains("byte"), "{err}");
        assert!(ProblemFile::from_json("{").is_err());
    }

    #[test]
    fn entries_and_ideals() {
        assert_eq!(parse_entry(Field::Rational, &Entry::Text("-3/4".into())).unwrap().to_string(), "-3/4");
        assert_eq!(parse_entry(Field::Prime(3), &Entry::Integer(5)).unwrap().to_string(), "2");
        let c = finite_structure(&PresentedAlgebra::over_field(Field::Prime(2), &["u"], &["u^4"]).unwrap()).unwrap();
        assert_eq!(ideal_span(&c.algebra, &[c.algebra.basis(2)]).len(), 2);
    }
}
