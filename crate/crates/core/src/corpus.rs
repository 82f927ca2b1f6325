//! The built-in acceptance corpus.
//!
//! Each criterion builds its own family of problems, solves them with the
//! cohomological machinery and compares against the brute-force oracles.

use std::time::Instant;

use rand::rngs::StdRng;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use serde::Serialize;

use crate::algebra::{all_vectors, finite_structure, FiniteModule, PresentedAlgebra};
use crate::cli::problem::ProblemFile;
use crate::cli::{run, Command, Report, RunOptions};
use crate::deformation::{
    baer_sum, check_torsor_action, cocycle_combination, cocycle_from_extension, difference_extension, exal_classify, extension_from_cocycle, lift_homomorphism,
    quotient_model, BaseDeformationProblem, DeformationOutcome, LiftOutcome, LiftProblem,
};
use crate::differential::{derivation_space, Derivation};
use crate::error::Result;
use crate::ls::{is_coboundary, t_dimensions, t_module_from, CohomologyClass};
use crate::matrix::{vec_scale, Matrix};
use crate::oracle::{enumerate_deformations, enumerate_extensions, enumerate_lifts, isomorphic_extensions, EnumerationBudget, ExtensionSpace};
use crate::poly::{GroebnerBasis, MonomialOrder};
use crate::scalar::{Field, Scalar};

/// Problem files shipped with the tool, with the command that runs them.
pub const BUNDLED: &[(&str, Command, &str)] = &[
    ("free.json", Command::Tmods, include_str!("../corpus/free.json")),
    ("dualnumbers.json", Command::Exal, include_str!("../corpus/dualnumbers.json")),
    ("obstructed_lift.json", Command::Lift, include_str!("../corpus/obstructed_lift.json")),
    ("lifts.json", Command::Lift, include_str!("../corpus/lifts.json")),
    ("fatpoint.json", Command::Oracle, include_str!("../corpus/fatpoint.json")),
    ("node.json", Command::Exal, include_str!("../corpus/node.json")),
    ("deformations.json", Command::Deform, include_str!("../corpus/deformations.json")),
    ("rational.json", Command::Tmods, include_str!("../corpus/rational.json")),
];

/// Runs every bundled file with the oracle enabled.
pub fn run_bundled(opts: &RunOptions) -> Result<Vec<(String, Report)>> {
    let opts = RunOptions { oracle: true, ..opts.clone() };
    BUNDLED
        .iter()
        .map(|(name, command, text)| Ok((name.to_string(), run(*command, &ProblemFile::from_json(text)?, &opts)?)))
        .collect()
}

#[derive(Clone, Debug, Serialize)]
pub struct CriterionOutcome {
    pub id: u8,
    pub title: String,
    pub passed: bool,
    pub checks: usize,
    pub failures: Vec<String>,
    pub notes: Vec<String>,
    pub seconds: f64,
    pub limit_seconds: f64,
}

impl CriterionOutcome {
    pub fn line(&self) -> String {
        let verdict = if self.passed { "PASS" } else { "FAIL" };
        let mut s = format!(
            "criterion {} {}: {verdict} ({} checks, {:.2}s of {:.0}s)",
            self.id, self.title, self.checks, self.seconds, self.limit_seconds
        );
        if !self.notes.is_empty() {
            s.push_str(&format!(" [{}]", self.notes.join("; ")));
        }
        if let Some(first) = self.failures.first() {
            s.push_str(&format!(" first failure: {first}"));
        }
        s
    }
}

#[derive(Default)]
struct Tally {
    checks: usize,
    failures: Vec<String>,
    notes: Vec<String>,
}

impl Tally {
    fn check(&mut self, ok: bool, what: impl FnOnce() -> String) {
        self.checks += 1;
        if !ok {
            self.failures.push(what());
        }
    }

    fn ok<T>(&mut self, r: Result<T>, what: &str) -> Option<T> {
        match r {
            Ok(v) => Some(v),
            Err(e) => {
                self.checks += 1;
                self.failures.push(format!("{what}: {e}"));
                None
            }
        }
    }
}

fn timed(id: u8, title: &str, limit: f64, body: impl FnOnce(&mut Tally)) -> CriterionOutcome {
    let start = Instant::now();
    let mut t = Tally::default();
    body(&mut t);
    let seconds = start.elapsed().as_secs_f64();
    if seconds > limit {
        t.failures.push(format!("took {seconds:.1}s, limit {limit:.0}s"));
    }
    CriterionOutcome {
        id,
        title: title.to_string(),
        passed: t.failures.is_empty(),
        checks: t.checks,
        failures: t.failures,
        notes: t.notes,
        seconds,
        limit_seconds: limit,
    }
}

pub fn run_criteria(seed: u64) -> Vec<CriterionOutcome> {
    (1..=7).map(|i| run_criterion(i, seed)).collect()
}

pub fn run_criterion(id: u8, seed: u64) -> CriterionOutcome {
    match id {
        1 => timed(1, "free-algebra vanishing", 5.0, free_vanishing),
        2 => timed(2, "lifting torsor law", 60.0, lift_torsor_law),
        3 => timed(3, "extension classification", 120.0, extension_classification),
        4 => timed(4, "obstruction equivalence", 300.0, obstruction_equivalence),
        5 => timed(5, "presentation independence", 30.0, presentation_independence),
        6 => timed(6, "integrity self-checks", 30.0, |t| integrity(t, seed)),
        7 => timed(7, "rational regime", 5.0, rational_regime),
        _ => panic!("criteria are numbered 1 to 7"),
    }
}

fn algebra(f: Field, vars: &[&str], rels: &[&str]) -> PresentedAlgebra {
    PresentedAlgebra::over_field(f, vars, rels).expect("corpus algebra")
}

fn residue(b: &PresentedAlgebra) -> FiniteModule {
    FiniteModule::residue_field(b)
}

fn power(f: Field, e: usize) -> usize {
    (f.order().expect("finite field") as usize).pow(e as u32)
}

const FREE_NAMES: [&str; 3] = ["x", "y", "z"];

fn free_vanishing(t: &mut Tally) {
    for f in [Field::Prime(2), Field::Prime(3), Field::Rational] {
        for n in 1..=3 {
            let b = algebra(f, &FREE_NAMES[..n], &[]);
            let zero = Matrix::zeros(f, 2, 2);
            let mut nil = zero.clone();
            nil.set(0, 1, f.one());
            let mut rank_two = vec![nil];
            rank_two.extend(std::iter::repeat(zero).take(n - 1));
            let point = (0..n).map(|_| Matrix::identity(f, 1)).collect();
            let modules = [
                residue(&b),
                FiniteModule::new(f, vec!["a".into(), "b".into()], rank_two).expect("module"),
                FiniteModule::new(f, vec!["p".into()], point).expect("module"),
            ];
            for j in &modules {
                let Some(d) = t.ok(t_dimensions(&b, j), "free algebra") else { continue };
                t.check(d[1] == 0 && d[2] == 0, || format!("{f} with {n} variables, module of rank {}: T = {d:?}", j.dim()));
                t.check(d[0] == n * j.dim(), || format!("{f} with {n} variables: T0 = {} expected {}", d[0], n * j.dim()));
            }
        }
    }
}

/// Square-zero ideals of small covers, as generators of the ideal.
fn covers(f: Field) -> Vec<(PresentedAlgebra, Vec<&'static str>)> {
    vec![
        (algebra(f, &["u"], &["u^2"]), vec!["u"]),
        (algebra(f, &["u"], &["u^3"]), vec!["u^2"]),
        (algebra(f, &["u"], &["u^4"]), vec!["u^2"]),
        (algebra(f, &["u"], &["u^4"]), vec!["u^3"]),
        (algebra(f, &["u", "v"], &["u^2", "u*v", "v^2"]), vec!["u"]),
        (algebra(f, &["u", "v"], &["u^2", "u*v", "v^2"]), vec!["u", "v"]),
        (algebra(f, &["u", "v"], &["u^2", "v^2"]), vec!["u*v"]),
        (algebra(f, &["u", "v"], &["u^2", "v^2"]), vec!["u"]),
    ]
}

fn sources(f: Field) -> Vec<PresentedAlgebra> {
    vec![
        algebra(f, &["x"], &["x^2"]),
        algebra(f, &["x"], &["x^3"]),
        algebra(f, &["x"], &[]),
        algebra(f, &["x", "y"], &["x^2", "x*y", "y^2"]),
        algebra(f, &["x", "y"], &["x*y"]),
    ]
}

/// Lift problems: every source, every cover, a few maps into the quotient.
pub fn lift_corpus(f: Field, per_pair: usize) -> Vec<LiftProblem> {
    let mut out = Vec::new();
    for (cover, ideal) in covers(f) {
        let model = finite_structure(&cover).expect("finite cover");
        let names = cover.all_vars();
        let gens: Vec<Vec<Scalar>> = ideal
            .iter()
            .map(|s| model.coordinates(&crate::poly::parse::parse_with_names(s, f, &names).expect("ideal generator")))
            .collect();
        let span = crate::cli::problem::ideal_span(&model.algebra, &gens);
        let q = model.algebra.quotient(&span).expect("quotient");
        let c = &q.algebra;
        for b in sources(f) {
            let k = b.nvars();
            let mut homs = Vec::new();
            for flat in all_vectors(f, c.dim() * k) {
                let images: Vec<Vec<Scalar>> = flat.chunks(c.dim()).map(|x| x.to_vec()).collect();
                let ok = b.relations().iter().all(|r| {
                    let v = r.evaluate(&images, c.one(), c.zero(), |a, b| c.add(a, b), |a, b| c.mul(a, b), |a, s| c.scale(a, s));
                    v.iter().all(Scalar::is_zero)
                });
                if ok {
                    homs.push(images);
                }
            }
            let step = (homs.len() / per_pair).max(1);
            for images in homs.into_iter().step_by(step).take(per_pair) {
                out.push(LiftProblem::new(b.clone(), model.algebra.clone(), span.clone(), images).expect("valid lift problem"));
            }
        }
    }
    out
}

fn lift_torsor_law(t: &mut Tally) {
    let budget = EnumerationBudget::default();
    let mut solvable = 0;
    let mut obstructed = 0;
    let mut total = 0;
    for f in [Field::Prime(2), Field::Prime(3)] {
        for p in lift_corpus(f, 2) {
            total += 1;
            let Some(out) = t.ok(lift_homomorphism(&p), "lift") else { continue };
            let Some(found) = t.ok(enumerate_lifts(&p, &budget), "lift oracle") else { continue };
            match out {
                LiftOutcome::Lifts { freedom, .. } => {
                    solvable += 1;
                    let j = p.module();
                    t.check(found.len() == power(f, freedom.len()), || {
                        format!("{f}: {} lifts found, |Der| = {}", found.len(), power(f, freedom.len()))
                    });
                    let group: Vec<Vec<Scalar>> = all_vectors(f, freedom.len()).collect();
                    let report = check_torsor_action(&group, &found.items, |c, l| {
                        let mut acc = l.clone();
                        for (coef, d) in c.iter().zip(&freedom) {
                            let scaled = Derivation {
                                images: d.images.iter().map(|v| vec_scale(v, coef)).collect(),
                                ..d.clone()
                            };
                            acc = p.translate(&acc, &scaled);
                        }
                        acc
                    });
                    t.check(report.is_torsor(), || format!("{f}: action of Der on lifts is {report:?}"));
                    let pairs_ok = found.items.iter().all(|a| {
                        found
                            .items
                            .iter()
                            .all(|b| p.difference(a, b).map(|d| d.violations().is_empty() && d.module == j).unwrap_or(false))
                    });
                    t.check(pairs_ok, || format!("{f}: a difference of lifts is not a derivation"));
                }
                LiftOutcome::Obstructed { class } => {
                    obstructed += 1;
                    t.check(found.is_empty(), || format!("{f}: obstructed but the oracle found {} lifts", found.len()));
                    t.check(is_coboundary(&class).is_none(), || format!("{f}: obstruction class is a coboundary"));
                }
            }
        }
    }
    t.check(total >= 50, || format!("only {total} lift problems"));
    t.check(obstructed > 0 && solvable > 0, || "corpus lacks solvable or obstructed cases".into());
    t.notes.push(format!("{total} problems, {solvable} solvable, {obstructed} obstructed"));
}

/// `(B, truncation degree, expected dim T¹)` with `J = k` over `F₂`.
fn classification_cases() -> Vec<(PresentedAlgebra, Option<u32>, usize)> {
    let f = Field::Prime(2);
    vec![
        (algebra(f, &["x"], &["x^2"]), None, 1),
        (algebra(f, &["x"], &["x^3"]), None, 1),
        (algebra(f, &["x", "y"], &["x^2", "x*y", "y^2"]), None, 3),
        (algebra(f, &["x", "y"], &["x*y"]), Some(4), 1),
    ]
}

fn extension_classification(t: &mut Tally) {
    let budget = EnumerationBudget::default();
    for (b, degree, expected) in classification_cases() {
        let label = b.to_string();
        let j = residue(&b);
        let Some(model) = t.ok(quotient_model(&b, degree), &label) else { continue };
        let Some(c) = t.ok(exal_classify(&b, &j, &model), &label) else { continue };
        let f = b.field();
        t.check(c.t1.dim == expected, || format!("{label}: dim T1 = {} expected {expected}", c.t1.dim));
        let Some(space) = t.ok(ExtensionSpace::from_presented(&b, &j, &model), &label) else { continue };
        let Some(found) = t.ok(enumerate_extensions(&space, &budget), &label) else { continue };
        t.check(found.len() == power(f, c.t1.dim), || format!("{label}: oracle found {} classes, 2^T1 = {}", found.len(), power(f, c.t1.dim)));
        let reps = c.representatives.clone().unwrap_or_default();
        for (ci, ei) in &reps {
            for (cj, ej) in &reps {
                for subtract in [false, true] {
                    let geometric = if subtract { difference_extension(ei, ej) } else { baer_sum(ei, ej) };
                    let Some(geometric) = t.ok(geometric, &label) else { continue };
                    let (Some(ki), Some(kj)) = (t.ok(c.class(ci), &label), t.ok(c.class(cj), &label)) else { continue };
                    let Some(sum) = t.ok(cocycle_combination(&ki, &kj, subtract), &label) else { continue };
                    let Some(algebraic) = t.ok(extension_from_cocycle(&sum, &model), &label) else { continue };
                    let iso = t.ok(isomorphic_extensions(&geometric, &algebraic, &budget), &label);
                    t.check(iso == Some(true), || format!("{label}: geometric and cocycle combinations differ for {ci:?}, {cj:?}"));
                    let class = cocycle_from_extension(&geometric, &c.cochains, None).ok().and_then(|k| c.coordinates(&k));
                    let want: Vec<Scalar> = ci
                        .iter()
                        .zip(cj)
                        .map(|(a, b)| if subtract { a.clone() - b.clone() } else { a.clone() + b.clone() })
                        .collect();
                    t.check(class.as_ref() == Some(&want), || format!("{label}: class of the geometric combination is {class:?}, expected {want:?}"));
                }
            }
        }
        t.notes.push(format!("{label}: T1 = {}, {} classes", c.t1.dim, found.len()));
    }
}

/// Deformation problems: `(A′ relations, I generators, B over A, J, φ)`.
pub struct DeformationCase {
    pub label: String,
    pub problem: BaseDeformationProblem,
    pub truncate: Option<u32>,
}

fn deformation_case(f: Field, label: &str, base: (&[&str], &[&str], &[&str]), vars: &[&str], rels: &[&str], phi: &[i64], truncate: Option<u32>) -> DeformationCase {
    let (bv, extended, ideal) = base;
    let mut a_rels: Vec<&str> = extended.to_vec();
    a_rels.extend(ideal);
    let b = PresentedAlgebra::parse(f, bv, &a_rels, vars, rels).expect("corpus algebra");
    let j = residue(&b);
    let phi = phi.iter().map(|&v| vec![f.from_i64(v)]).collect();
    let problem = BaseDeformationProblem::parse(bv, extended, ideal, vars, rels, j, phi).expect("corpus deformation problem");
    DeformationCase {
        label: format!("{label} over {f}"),
        problem,
        truncate,
    }
}

pub fn deformation_corpus() -> Vec<DeformationCase> {
    let mut out = Vec::new();
    let none: (&[&str], &[&str], &[&str]) = (&[], &[], &[]);
    let dual_base: (&[&str], &[&str], &[&str]) = (&["e"], &["e^2"], &["e"]);
    let cube_base: (&[&str], &[&str], &[&str]) = (&["t"], &["t^3"], &["t^2"]);
    for f in [Field::Prime(2), Field::Prime(3)] {
        out.push(deformation_case(f, "I = 0, dual numbers", none, &["x"], &["x^2"], &[], None));
        out.push(deformation_case(f, "I = 0, fat point", none, &["x", "y"], &["x^2", "x*y", "y^2"], &[], None));
        out.push(deformation_case(f, "I = 0, cusp", none, &["x"], &["x^3"], &[], None));
        for phi in [0, 1] {
            out.push(deformation_case(f, &format!("free A[x], phi = {phi}"), dual_base, &["x"], &[], &[phi], Some(2)));
            out.push(deformation_case(f, &format!("fat point, phi = {phi}"), dual_base, &["x", "y"], &["x^2", "x*y", "y^2"], &[phi], None));
            out.push(deformation_case(f, &format!("parameter killed, phi = {phi}"), cube_base, &["x"], &["t", "x^2"], &[phi], None));
        }
        out.push(deformation_case(f, "free A[x, y]", dual_base, &["x", "y"], &[], &[1], Some(2)));
        out.push(deformation_case(f, "complete intersection x^2 - t", cube_base, &["x"], &["x^2 - t"], &[1], None));
        out.push(deformation_case(f, "complete intersection x^2, y^2", dual_base, &["x", "y"], &["x^2", "y^2"], &[1], None));
        out.push(deformation_case(f, "fat point with parameter killed", cube_base, &["x", "y"], &["t", "x^2", "x*y", "y^2"], &[1], None));
    }
    out.push(deformation_case(Field::Prime(3), "parameter killed, phi = 2", cube_base, &["x"], &["t", "x^2"], &[2], None));
    out
}

fn obstruction_equivalence(t: &mut Tally) {
    let budget = EnumerationBudget::default();
    let corpus = deformation_corpus();
    let (mut solvable, mut obstructed, mut fat_t2) = (0, 0, 0);
    for case in &corpus {
        let p = &case.problem;
        let label = &case.label;
        let f = p.field();
        let Some(model) = t.ok(quotient_model(&p.algebra, case.truncate), label) else { continue };
        let Some(outcome) = t.ok(p.realize(&model, 0), label) else { continue };
        let Some(cochains) = t.ok(p.cochains(), label) else { continue };
        let t1 = t_module_from(&cochains, 1).dim;
        let t2 = t_module_from(&cochains, 2).dim;
        if label.starts_with("fat point, ") && t2 == 2 {
            fat_t2 += 1;
        }
        if p.ideal_generators.is_empty() || label.contains("complete intersection") {
            if label.contains("complete intersection") {
                t.check(cochains.complex.is_complete_intersection() && t2 == 0, || format!("{label}: expected a complete intersection with T2 = 0, found {t2}"));
            }
        }
        let Some(found) = t.ok(enumerate_deformations(p, &model, &budget), label) else { continue };
        match outcome {
            DeformationOutcome::Solved { extension, .. } => {
                solvable += 1;
                t.check(!found.is_empty(), || format!("{label}: class vanishes but the oracle finds no solution"));
                t.check(found.len() == power(f, t1), || format!("{label}: {} solutions, |T1| = {}", found.len(), power(f, t1)));
                t.check(p.solution_violations(&extension).is_empty(), || format!("{label}: realized solution fails verification"));
            }
            DeformationOutcome::Obstructed { .. } => {
                obstructed += 1;
                t.check(found.is_empty(), || format!("{label}: obstructed but the oracle finds {} solutions", found.len()));
            }
        }
    }
    t.check(corpus.len() >= 20, || format!("only {} deformation problems", corpus.len()));
    t.check(obstructed > 0 && fat_t2 > 0, || "corpus lacks obstructed or dim T2 = 2 fat-point cases".into());
    t.notes.push(format!("{} problems, {solvable} solvable, {obstructed} obstructed", corpus.len()));
}

/// Pairs of presentations of the same algebra, with `J = k`.
pub fn presentation_pairs() -> Vec<(PresentedAlgebra, PresentedAlgebra)> {
    let (f2, f3, q) = (Field::Prime(2), Field::Prime(3), Field::Rational);
    let mut out = vec![
        (algebra(f2, &["x"], &["x^2"]), algebra(f2, &["x", "y"], &["x^2", "y"])),
        (algebra(f2, &["x", "y"], &["x^2", "x*y", "y^2"]), algebra(f2, &["x", "y"], &["y^2", "x^2 + x*y", "x*y", "x^2"])),
        (algebra(f3, &["x", "y"], &["x*y"]), algebra(f3, &["x", "y", "z"], &["x*y", "z - x - y"])),
        (algebra(f2, &["x"], &["x^3"]), algebra(f2, &["x", "y"], &["y - x^2", "x*y"])),
        (algebra(q, &["x", "y"], &["x*y"]), algebra(q, &["u", "v"], &["u^2 - v^2"])),
        (algebra(q, &["x", "y"], &["y^2 - x^3"]), algebra(q, &["x", "y", "z"], &["y^2 - x^3", "z - x*y"])),
        (algebra(f3, &["x", "y"], &["x^2", "y^2"]), algebra(f3, &["x", "y"], &["x^2 + y^2", "x^2 - y^2"])),
    ];
    let permuted: Vec<_> = out.iter().map(|(b, _)| (b.clone(), b.permuted(&(0..b.n_relative()).rev().collect::<Vec<_>>(), &(0..b.relations().len()).rev().collect::<Vec<_>>()))).collect();
    out.extend(permuted);
    out
}

fn presentation_independence(t: &mut Tally) {
    let pairs = presentation_pairs();
    for (a, b) in &pairs {
        let da = t.ok(t_dimensions(a, &residue(a)), &a.to_string());
        let db = t.ok(t_dimensions(b, &residue(b)), &b.to_string());
        t.check(da.is_some() && da == db, || format!("{a} gives {da:?} but {b} gives {db:?}"));
    }
    t.notes.push(format!("{} presentation pairs", pairs.len()));
}

fn integrity(t: &mut Tally, seed: u64) {
    let mut rng = StdRng::seed_from_u64(seed);
    for case in deformation_corpus() {
        for s in 1..=3 {
            let r = t.ok(case.problem.obstruction_class(seed.wrapping_add(s)), &case.label);
            t.check(r.map(|r| r.lifts_agree).unwrap_or(false), || format!("{}: relation lifts give different classes", case.label));
        }
    }
    for (b, degree, _) in classification_cases() {
        let j = residue(&b);
        let Some(model) = t.ok(quotient_model(&b, degree), "section check") else { continue };
        let Some(c) = t.ok(exal_classify(&b, &j, &model), "section check") else { continue };
        for (_, e) in c.representatives.iter().flatten() {
            let offsets: Vec<Vec<Scalar>> = (0..b.n_relative())
                .map(|_| (0..j.dim()).map(|_| b.field().from_i64(rng.gen_range(0..5))).collect())
                .collect();
            let one = cocycle_from_extension(e, &c.cochains, None);
            let two = cocycle_from_extension(e, &c.cochains, Some(&offsets));
            let same = match (one, two) {
                (Ok(a), Ok(b)) => CohomologyClass::new(c.cochains.clone(), 1, crate::matrix::vec_sub(&a.representative, &b.representative))
                    .map(|d| is_coboundary(&d).is_some())
                    .unwrap_or(false),
                _ => false,
            };
            t.check(same, || format!("{b}: two sections give different classes"));
        }
    }
    for f in [Field::Prime(3), Field::Rational] {
        for _ in 0..20 {
            let rows: Vec<Vec<Scalar>> = (0..5).map(|_| (0..6).map(|_| f.from_i64(rng.gen_range(-4..5))).collect()).collect();
            let mut shuffled = rows.clone();
            shuffled.shuffle(&mut rng);
            let a = Matrix::from_rows(f, rows).rref();
            let b = Matrix::from_rows(f, shuffled).rref();
            t.check(a == b, || format!("rref over {f} depends on row order"));
        }
    }
    for (b, _) in presentation_pairs() {
        let mut gens = b.relations().to_vec();
        let order = MonomialOrder::grevlex(b.nvars());
        let g1 = GroebnerBasis::ideal(b.field(), b.nvars(), &gens, &order);
        gens.shuffle(&mut rng);
        let g2 = GroebnerBasis::ideal(b.field(), b.nvars(), &gens, &order);
        t.check(g1 == g2, || format!("{b}: reduced Groebner basis depends on generator order"));
    }
    let opts = RunOptions {
        oracle: true,
        ..RunOptions::default()
    };
    for (name, command, text) in BUNDLED {
        let Some(file) = t.ok(ProblemFile::from_json(text), name) else { continue };
        let first = run(*command, &file, &opts).map(|r| r.to_json());
        let second = run(*command, &file, &opts).map(|r| r.to_json());
        t.check(first.is_ok() && first == second, || format!("{name}: report is not reproducible"));
    }
}

fn rational_regime(t: &mut Tally) {
    let budget = EnumerationBudget::default();
    let cases: [(&[&str], &[&str], Option<u32>); 2] = [(&["x"], &["x^2"], None), (&["x", "y"], &["x*y"], Some(4))];
    for (vars, rels, degree) in cases {
        let b = algebra(Field::Rational, vars, rels);
        let d = t.ok(t_dimensions(&b, &residue(&b)), "rational");
        t.check(d.map(|d| d[1]) == Some(1), || format!("{b}: T over Q is {d:?}"));
        for f in [Field::Prime(2), Field::Prime(3)] {
            let bp = algebra(f, vars, rels);
            let j = residue(&bp);
            let Some(model) = t.ok(quotient_model(&bp, degree), "modular") else { continue };
            let found = ExtensionSpace::from_presented(&bp, &j, &model).and_then(|s| enumerate_extensions(&s, &budget));
            let Some(found) = t.ok(found, "modular oracle") else { continue };
            t.check(found.len() == power(f, 1), || format!("{bp}: oracle finds {} classes", found.len()));
        }
    }
}

/// Derivation counts by brute force on finite models, for cross-checks.
pub fn derivation_dimension(b: &PresentedAlgebra, j: &FiniteModule) -> usize {
    derivation_space(b, j).len()
}
