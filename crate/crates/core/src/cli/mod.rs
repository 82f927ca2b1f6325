//! Batch driver behind the `cotangent` binary.

pub mod problem;

use std::fmt::Write as _;
use std::time::Instant;

use serde::Serialize;

use crate::algebra::{all_vectors, FiniteModule, PresentedAlgebra, Truncation};
use crate::deformation::{
    all_lifts, check_torsor_action, exal_classify, lift_homomorphism, quotient_model, BaseDeformationProblem, DeformationOutcome, LiftOutcome, LiftProblem,
};
use crate::differential::{derivation_space, Derivation};
use crate::error::{Error, Result};
use crate::ls::{build_ls, t_module_from, Cochains};
use crate::matrix::vec_scale;
use crate::oracle::{enumerate_deformations, enumerate_derivations, enumerate_lifts, EnumerationBudget, ExtensionSpace};
use crate::scalar::{Field, Scalar};
use problem::{ProblemFile, ProblemSpec, Resolved};

pub const VERSION: &str = env!("CARGO_PKG_VERSION");

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Command {
    Tmods,
    Exal,
    Lift,
    Deform,
    Oracle,
}

impl Command {
    fn accepts(&self, p: &ProblemSpec) -> bool {
        match self {
            Command::Oracle => true,
            Command::Tmods => !matches!(p, ProblemSpec::Lift { .. }),
            other => p.kind() == other.name(),
        }
    }

    pub fn name(&self) -> &'static str {
        match self {
            Command::Tmods => "tmods",
            Command::Exal => "exal",
            Command::Lift => "lift",
            Command::Deform => "deform",
            Command::Oracle => "oracle",
        }
    }
}

#[derive(Clone, Debug, Default)]
pub struct RunOptions {
    pub oracle: bool,
    pub truncate: Option<u32>,
    pub budget: Option<u64>,
    pub field: Option<Field>,
    pub seed: u64,
    pub timing: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "UPPERCASE")]
pub enum Status {
    Match,
    Mismatch,
    Skipped,
}

#[derive(Clone, Debug, Serialize)]
pub struct Claim {
    pub claim: String,
    pub analytic: String,
    pub oracle: String,
    pub status: Status,
}

impl Claim {
    fn compare(claim: impl Into<String>, analytic: impl ToString, oracle: impl ToString) -> Claim {
        let (a, o) = (analytic.to_string(), oracle.to_string());
        let status = if a == o { Status::Match } else { Status::Mismatch };
        Claim {
            claim: claim.into(),
            analytic: a,
            oracle: o,
            status,
        }
    }

    fn skipped(claim: impl Into<String>, analytic: impl ToString, reason: &str) -> Claim {
        Claim {
            claim: claim.into(),
            analytic: analytic.to_string(),
            oracle: reason.to_string(),
            status: Status::Skipped,
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct ClassSummary {
    pub coordinates: Vec<String>,
    pub cocycle: Vec<String>,
    pub extension_dim: usize,
}

#[derive(Clone, Debug, Serialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum Outcome {
    Tmods {
        t: [usize; 3],
        cochain_dims: [usize; 3],
    },
    Exal {
        t1: usize,
        classes: Option<String>,
        representatives: Vec<ClassSummary>,
    },
    Lift {
        verdict: String,
        class: Vec<String>,
        derivations: usize,
        lifts: Vec<Vec<String>>,
        torsor: Option<String>,
    },
    Deform {
        verdict: String,
        t1: usize,
        t2: usize,
        obstruction: Vec<String>,
        lifts_agree: bool,
        relation_values: Option<Vec<String>>,
        solutions: Option<String>,
    },
}

#[derive(Clone, Debug, Serialize)]
pub struct ProblemReport {
    pub name: String,
    pub truncation: Option<u32>,
    pub result: Outcome,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub oracle: Vec<Claim>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub timing_ms: Option<f64>,
}

#[derive(Clone, Debug, Serialize)]
pub struct BudgetReport {
    pub candidates: u64,
    pub isomorphisms: u64,
}

#[derive(Clone, Debug, Serialize)]
pub struct Report {
    pub tool: String,
    pub version: String,
    pub command: Command,
    pub field: String,
    pub seed: u64,
    pub oracle: bool,
    pub budget: BudgetReport,
    pub problems: Vec<ProblemReport>,
}

impl Report {
    pub fn mismatches(&self) -> Vec<String> {
        self.problems
            .iter()
            .flat_map(|p| p.oracle.iter().filter(|c| c.status == Status::Mismatch).map(move |c| format!("{}: {}", p.name, c.claim)))
            .collect()
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    pub fn to_text(&self) -> String {
        let mut s = String::new();
        let _ = writeln!(s, "cotangent {} {} over {} (seed {})", self.version, self.command.name(), self.field, self.seed);
        for p in &self.problems {
            let _ = write!(s, "\n[{}]", p.name);
            if let Some(d) = p.truncation {
                let _ = write!(s, " truncated at degree {d}");
            }
            s.push('\n');
            match &p.result {
                Outcome::Tmods { t, cochain_dims } => {
                    let _ = writeln!(s, "  T0 = {}, T1 = {}, T2 = {}", t[0], t[1], t[2]);
                    let _ = writeln!(s, "  cochain dimensions {:?}", cochain_dims);
                }
                Outcome::Exal { t1, classes, representatives } => {
                    let _ = writeln!(s, "  T1 = {t1}");
                    match classes {
                        Some(c) => {
                            let _ = writeln!(s, "  {c} isomorphism classes");
                        }
                        None => {
                            let _ = writeln!(s, "  classes form a vector space of dimension {t1}");
                        }
                    }
                    for r in representatives {
                        let _ = writeln!(s, "  class [{}] cocycle [{}]", r.coordinates.join(", "), r.cocycle.join(", "));
                    }
                }
                Outcome::Lift {
                    verdict,
                    class,
                    derivations,
                    lifts,
                    torsor,
                } => {
                    let _ = writeln!(s, "  {verdict}");
                    if verdict == "Obstructed" {
                        let _ = writeln!(s, "  H1 class [{}]", class.join(", "));
                    } else {
                        let _ = writeln!(s, "  Der has dimension {derivations}; {} lifts", lifts.len());
                        for l in lifts {
                            let _ = writeln!(s, "    {}", l.join(", "));
                        }
                    }
                    if let Some(t) = torsor {
                        let _ = writeln!(s, "  action of Der on lifts: {t}");
                    }
                }
                Outcome::Deform {
                    verdict,
                    t1,
                    t2,
                    obstruction,
                    lifts_agree,
                    relation_values,
                    solutions,
                } => {
                    let _ = writeln!(s, "  {verdict} (T1 = {t1}, T2 = {t2})");
                    let _ = writeln!(s, "  obstruction cochain [{}]; second relation lift agrees: {lifts_agree}", obstruction.join(", "));
                    if let Some(v) = relation_values {
                        let _ = writeln!(s, "  relation values [{}]", v.join(", "));
                    }
                    if let Some(n) = solutions {
                        let _ = writeln!(s, "  {n} solutions up to isomorphism");
                    }
                }
            }
            for c in &p.oracle {
                let status = match c.status {
                    Status::Match => "MATCH",
                    Status::Mismatch => "MISMATCH",
                    Status::Skipped => "SKIPPED",
                };
                let _ = writeln!(s, "  oracle {}: analytic {} / oracle {} {}", c.claim, c.analytic, c.oracle, status);
            }
            if let Some(t) = p.timing_ms {
                let _ = writeln!(s, "  {t:.1} ms");
            }
        }
        s
    }
}

fn strings(v: &[Scalar]) -> Vec<String> {
    v.iter().map(|s| s.to_string()).collect()
}

fn power(field: Field, dim: usize) -> String {
    match field.order() {
        Some(p) => match (p as u128).checked_pow(dim as u32) {
            Some(n) => n.to_string(),
            None => format!("{p}^{dim}"),
        },
        None => "infinite".to_string(),
    }
}

pub fn run(command: Command, file: &ProblemFile, opts: &RunOptions) -> Result<Report> {
    let field = file.field(opts.field)?;
    let truncate = opts.truncate.or(file.options.truncate);
    let oracle = opts.oracle || file.options.oracle || command == Command::Oracle;
    let budget = EnumerationBudget::new(opts.budget.or(file.options.budget).unwrap_or(1 << 20), 1 << 16)?;
    let resolved = Resolved::new(file, field, truncate)?;
    let selected: Vec<&ProblemSpec> = file.problems.iter().filter(|p| command.accepts(p)).collect();
    if selected.is_empty() {
        return Err(Error::invalid(format!("no {} problems in the file", command.name())));
    }
    let ctx = Context {
        resolved: &resolved,
        truncate,
        oracle,
        budget,
        seed: opts.seed,
    };
    let mut problems = Vec::new();
    for (i, p) in selected.into_iter().enumerate() {
        let start = Instant::now();
        let mut report = ctx.run_problem(command, p).map_err(|e| match e {
            Error::Invalid(m) => Error::invalid(format!("problems[{i}] ({}): {m}", p.name())),
            other => other,
        })?;
        if opts.timing {
            report.timing_ms = Some(start.elapsed().as_secs_f64() * 1000.0);
        }
        problems.push(report);
    }
    Ok(Report {
        tool: "cotangent".into(),
        version: VERSION.into(),
        command,
        field: field.to_string(),
        seed: opts.seed,
        oracle,
        budget: BudgetReport {
            candidates: budget.candidates,
            isomorphisms: budget.isomorphisms,
        },
        problems,
    })
}

struct Context<'a> {
    resolved: &'a Resolved,
    truncate: Option<u32>,
    oracle: bool,
    budget: EnumerationBudget,
    seed: u64,
}

fn recorded_degree(model: &Truncation) -> Option<u32> {
    model.degree
}

impl Context<'_> {
    fn run_problem(&self, command: Command, p: &ProblemSpec) -> Result<ProblemReport> {
        let (truncation, result, oracle) = match (command, p) {
            (Command::Tmods, ProblemSpec::Tmods { algebra, module, .. } | ProblemSpec::Exal { algebra, module, .. } | ProblemSpec::Deform { algebra, module, .. }) => {
                self.tmods(algebra, module)?
            }
            (_, ProblemSpec::Tmods { algebra, module, .. }) => self.tmods(algebra, module)?,
            (_, ProblemSpec::Exal { algebra, module, .. }) => self.exal(algebra, module)?,
            (_, ProblemSpec::Lift { source, cover, ideal, images, .. }) => {
                let lp = self.resolved.lift_problem(source, cover, ideal, images)?;
                self.lift(&lp)?
            }
            (
                _,
                ProblemSpec::Deform {
                    algebra,
                    module,
                    extended_base,
                    ideal,
                    phi,
                    ..
                },
            ) => {
                let dp = self.resolved.deformation_problem(algebra, module, extended_base, ideal, phi)?;
                self.deform(&dp)?
            }
        };
        Ok(ProblemReport {
            name: p.name().to_string(),
            truncation,
            result,
            oracle,
            timing_ms: None,
        })
    }

    fn tmods(&self, algebra: &str, module: &str) -> Result<(Option<u32>, Outcome, Vec<Claim>)> {
        let b = self.resolved.algebra(algebra)?;
        let j = self.resolved.module(module, algebra)?;
        let cochains = Cochains::new(build_ls(b)?, j.clone())?;
        let t = [0, 1, 2].map(|i| t_module_from(&cochains, i).dim);
        let cochain_dims = [0, 1, 2].map(|i| cochains.dim(i));
        let mut claims = Vec::new();
        let mut truncation = None;
        if self.oracle {
            let f = b.field();
            if f.order().is_none() {
                claims.push(Claim::skipped("|Der| = |T0|", power(f, t[0]), "no oracle over Q"));
                claims.push(Claim::skipped("|Exal| = |T1|", power(f, t[1]), "no oracle over Q"));
            } else {
                let model = quotient_model(b, self.truncate)?;
                truncation = recorded_degree(&model);
                if model.degree.is_none() {
                    let space = ExtensionSpace::from_presented(b, j, &model)?;
                    let killed: Vec<Vec<Scalar>> = (0..b.n_base()).map(|y| model.coordinates(&b.var(y))).collect();
                    let ders = enumerate_derivations(&space.algebra, &space.module, &killed, &self.budget)?;
                    claims.push(Claim::compare("|Der| = |T0|", power(f, t[0]), ders.len()));
                } else {
                    claims.push(Claim::skipped("|Der| = |T0|", power(f, t[0]), "algebra is truncated"));
                }
                let count = self.exal_oracle(b, j, &model)?;
                claims.push(Claim::compare("|Exal| = |T1|", power(f, t[1]), count));
            }
        }
        Ok((truncation, Outcome::Tmods { t, cochain_dims }, claims))
    }

    fn exal_oracle(&self, b: &PresentedAlgebra, j: &FiniteModule, model: &Truncation) -> Result<usize> {
        let base = BaseDeformationProblem::new(b.base_vars().to_vec(), b.base_relations().to_vec(), Vec::new(), b.vars().to_vec(), b.relations().to_vec(), j.clone(), Vec::new())?;
        Ok(enumerate_deformations(&base, model, &self.budget)?.len())
    }

    fn exal(&self, algebra: &str, module: &str) -> Result<(Option<u32>, Outcome, Vec<Claim>)> {
        let b = self.resolved.algebra(algebra)?;
        let j = self.resolved.module(module, algebra)?;
        let model = quotient_model(b, self.truncate)?;
        let c = exal_classify(b, j, &model)?;
        let f = b.field();
        let representatives = c
            .representatives
            .iter()
            .flatten()
            .map(|(coeffs, e)| ClassSummary {
                coordinates: strings(coeffs),
                cocycle: strings(&c.t1.representatives.mul_vec(coeffs)),
                extension_dim: e.algebra.dim(),
            })
            .collect();
        let mut claims = Vec::new();
        if self.oracle {
            if f.order().is_some() {
                claims.push(Claim::compare("|Exal| = |T1|", power(f, c.t1.dim), self.exal_oracle(b, j, &model)?));
            } else {
                claims.push(Claim::skipped("|Exal| = |T1|", "infinite", "no oracle over Q"));
            }
        }
        let outcome = Outcome::Exal {
            t1: c.t1.dim,
            classes: c.class_count().map(|n| n.to_string()),
            representatives,
        };
        Ok((recorded_degree(&model), outcome, claims))
    }

    fn lift(&self, p: &LiftProblem) -> Result<(Option<u32>, Outcome, Vec<Claim>)> {
        let out = lift_homomorphism(p)?;
        let f = p.cover.field();
        let basis = derivation_space(&p.source, &p.module());
        let derivations = basis.len();
        let lifts = if f.order().is_some() { all_lifts(p, &out) } else { Vec::new() };
        let torsor = if f.order().is_some() {
            let group: Vec<_> = all_vectors(f, derivations).collect();
            let report = check_torsor_action(&group, &lifts, |c, l| {
                let mut acc = l.clone();
                for (coef, d) in c.iter().zip(&basis) {
                    let scaled = Derivation {
                        images: d.images.iter().map(|v| vec_scale(v, coef)).collect(),
                        ..d.clone()
                    };
                    acc = p.translate(&acc, &scaled);
                }
                acc
            });
            Some(format!("{report:?}"))
        } else {
            None
        };
        let (verdict, class) = match &out {
            LiftOutcome::Obstructed { class } => ("Obstructed", strings(&class.representative)),
            LiftOutcome::Lifts { .. } => ("Lifts", Vec::new()),
        };
        let mut claims = Vec::new();
        if self.oracle {
            if f.order().is_some() {
                let found = enumerate_lifts(p, &self.budget)?;
                let expected = if out.is_solvable() { power(f, derivations) } else { "0".into() };
                claims.push(Claim::compare("number of lifts", expected, found.len()));
                let agree = lifts.iter().all(|l| found.items.contains(l)) && lifts.len() == found.len();
                claims.push(Claim::compare("lift sets agree", true, agree));
            } else {
                claims.push(Claim::skipped("number of lifts", verdict, "no oracle over Q"));
            }
        }
        let lifts = lifts
            .iter()
            .map(|l| l.iter().map(|v| format!("[{}]", strings(v).join(" "))).collect())
            .collect();
        Ok((
            None,
            Outcome::Lift {
                verdict: verdict.into(),
                class,
                derivations,
                lifts,
                torsor,
            },
            claims,
        ))
    }

    fn deform(&self, p: &BaseDeformationProblem) -> Result<(Option<u32>, Outcome, Vec<Claim>)> {
        let model = quotient_model(&p.algebra, self.truncate)?;
        let outcome = p.realize(&model, self.seed)?;
        let cochains = p.cochains()?;
        let t1 = t_module_from(&cochains, 1).dim;
        let t2 = t_module_from(&cochains, 2).dim;
        let f = p.field();
        let (verdict, report, psi) = match &outcome {
            DeformationOutcome::Obstructed { report } => ("Obstructed", report, None),
            DeformationOutcome::Solved { report, psi, .. } => ("Solved", report, Some(strings(psi))),
        };
        let solvable = psi.is_some();
        let mut claims = Vec::new();
        if self.oracle {
            if f.order().is_some() {
                let found = enumerate_deformations(p, &model, &self.budget)?;
                claims.push(Claim::compare("solvable", solvable, !found.is_empty()));
                if solvable {
                    claims.push(Claim::compare("solutions = |T1|", power(f, t1), found.len()));
                }
            } else {
                claims.push(Claim::skipped("solvable", solvable, "no oracle over Q"));
            }
        }
        let result = Outcome::Deform {
            verdict: verdict.into(),
            t1,
            t2,
            obstruction: strings(&report.class.representative),
            lifts_agree: report.lifts_agree,
            relation_values: psi,
            solutions: solvable.then(|| power(f, t1)),
        };
        Ok((recorded_degree(&model), result, claims))
    }
}

/// Exit status of a finished run: mismatches are failures.
pub fn exit_status(report: &Report) -> Result<()> {
    let m = report.mismatches();
    if m.is_empty() {
        Ok(())
    } else {
        Err(Error::OracleMismatch(m.join("; ")))
    }
}
