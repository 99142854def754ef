use std::fmt::Write as _;
use std::path::Path;
use std::time::Instant;

use auk_core::presentation::{polynomial_presentation, random_graded_commutative};
use auk_core::{
    build_filtered_system, cd1_presentation, check_asymptotic_uk, check_galois_pipeline, check_local_global, check_quotient_capture,
    check_universal_koszul, descend_uk, exterior_presentation, verify_report, AukFailure, AukVerdict, Budget, CaptureVerdict,
    DescentOutcome, Fp, GaloisVerdict, Gap, GradedAlgebraModel, LocalGlobalVerdict, ModelRef, Stage, Strategy, UkReport, UkVerdict,
    Witness,
};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::args::{Command, Common, Format, Kind, StrategyArg};
use crate::error::CliError;
use crate::load::{digest, Loader};
use crate::report::{self, Header, Parameters};
use crate::text;

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAIL: i32 = 1;
pub const EXIT_ERROR: i32 = 2;

/// What a command prints and how it exits.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub stdout: String,
    pub stderr: String,
    pub code: i32,
}

impl Outcome {
    fn error(e: &CliError) -> Self {
        Outcome {
            stdout: String::new(),
            stderr: format!("error: {e}\n"),
            code: EXIT_ERROR,
        }
    }
}

/// Budget defaults, overridden by `AUK_MAX_SUBSPACES`, `AUK_MAX_TENSOR_DIM`
/// and `AUK_MAX_SYSTEM_ITEMS`.
pub fn budget_from_env() -> Result<Budget, CliError> {
    fn var<T: std::str::FromStr>(name: &str, default: T) -> Result<T, CliError> {
        match std::env::var(name) {
            Ok(v) => v
                .trim()
                .parse()
                .map_err(|_| CliError::Input(format!("{name}={v} is not a valid limit"))),
            Err(_) => Ok(default),
        }
    }
    let d = Budget::default();
    Ok(Budget {
        max_subspaces: var("AUK_MAX_SUBSPACES", d.max_subspaces)?,
        max_tensor_dim: var("AUK_MAX_TENSOR_DIM", d.max_tensor_dim)?,
        max_system_items: var("AUK_MAX_SYSTEM_ITEMS", d.max_system_items)?,
    })
}

pub fn execute(command: Command) -> Outcome {
    let result = budget_from_env().and_then(|budget| dispatch(command, budget));
    result.unwrap_or_else(|e| Outcome::error(&e))
}

fn dispatch(command: Command, budget: Budget) -> Result<Outcome, CliError> {
    match command {
        Command::Gen { kind, n, p, seed, output } => gen(kind, n, p, seed, output.as_deref(), &budget),
        Command::Dims { file, cap, format } => dims(&file, cap, format, budget),
        Command::CheckUk { file, common } => with_pool(&common, || check_uk(&file, &common, budget)),
        Command::CheckAuk { algebra, system, common } => with_pool(&common, || check_auk(&algebra, &system, &common, budget)),
        Command::CheckCapture {
            algebra,
            quotient,
            map,
            common,
        } => with_pool(&common, || check_capture(&algebra, &quotient, &map, &common, budget)),
        Command::CheckLocalGlobal { algebra, manifest, common } => with_pool(&common, || check_lg(&algebra, &manifest, &common, budget)),
        Command::CheckGalois { manifest, common } => with_pool(&common, || check_galois(&manifest, &common, budget)),
        Command::CheckDescent { algebra, split, common } => with_pool(&common, || check_descent(&algebra, &split, &common, budget)),
        Command::Verify { algebra, report, format } => verify(&algebra, &report, format, budget),
    }
}

fn with_pool(common: &Common, f: impl FnOnce() -> Result<Outcome, CliError> + Send) -> Result<Outcome, CliError> {
    let pool = rayon::ThreadPoolBuilder::new().num_threads(common.jobs.unwrap_or(0)).build()?;
    pool.install(f)
}

fn strategy(common: &Common) -> Strategy {
    match common.strategy {
        StrategyArg::Exhaustive => Strategy::Exhaustive,
        StrategyArg::Random => Strategy::Randomized {
            seed: common.seed,
            samples: common.samples,
        },
    }
}

fn parameters(common: &Common, build_cap: usize, union: bool) -> Parameters {
    let random = common.strategy == StrategyArg::Random;
    Parameters {
        build_cap,
        colon_cap: Some(common.colon_cap),
        union_cap: union.then_some(common.union_cap),
        strategy: Some(if random { "random" } else { "exhaustive" }.into()),
        seed: random.then_some(common.seed),
        samples: random.then_some(common.samples),
    }
}

fn build_cap(common: &Common, union: bool) -> usize {
    let cap = common.cap.max(common.colon_cap + 1);
    if union {
        cap.max(common.union_cap)
    } else {
        cap
    }
}

struct Finished<'a, T: Serialize> {
    command: &'a str,
    parameters: Parameters,
    verdict: String,
    code: i32,
    result: &'a T,
    human: String,
}

fn finish<T: Serialize>(loader: Loader, f: Finished<'_, T>, format: Format, started: Instant) -> Outcome {
    let stdout = match format {
        Format::Machine => {
            let inputs = loader.into_inputs();
            report::render(
                f.command,
                &inputs,
                &f.parameters,
                &f.verdict,
                f.code,
                f.result,
                started.elapsed().as_millis(),
            )
        }
        Format::Human if f.command == "dims" => f.human,
        Format::Human => {
            let mut s = format!("verdict: {}\n", f.verdict);
            s.push_str(&f.human);
            s
        }
    };
    Outcome {
        stdout,
        stderr: String::new(),
        code: f.code,
    }
}

fn gen(kind: Kind, n: usize, p: u32, seed: u64, output: Option<&Path>, budget: &Budget) -> Result<Outcome, CliError> {
    let field = Fp::new(p)?;
    if n == 0 {
        return Err(CliError::Input("n must be positive".into()));
    }
    if n.checked_mul(n).is_none_or(|sq| sq > budget.max_tensor_dim) {
        return Err(CliError::Input(format!(
            "n = {n} exceeds the tensor budget ({} coordinates in degree 2)",
            budget.max_tensor_dim
        )));
    }
    let presentation = match kind {
        Kind::Exterior => exterior_presentation(n, field),
        Kind::Cd1 => cd1_presentation(n, field),
        Kind::Polynomial => polynomial_presentation(n, field),
        Kind::Random => random_graded_commutative(n, field, &mut ChaCha8Rng::seed_from_u64(seed)),
    };
    let body = text::print_presentation(&presentation);
    match output {
        Some(path) => {
            std::fs::write(path, &body).map_err(|source| CliError::Write {
                path: path.to_path_buf(),
                source,
            })?;
            Ok(Outcome {
                stdout: String::new(),
                stderr: String::new(),
                code: EXIT_OK,
            })
        }
        None => Ok(Outcome {
            stdout: body,
            stderr: String::new(),
            code: EXIT_OK,
        }),
    }
}

#[derive(Serialize)]
struct DimsResult {
    hilbert_dims: Vec<usize>,
    nilpotent_degree: Option<usize>,
}

fn dims(file: &Path, cap: usize, format: Format, budget: Budget) -> Result<Outcome, CliError> {
    let started = Instant::now();
    let mut loader = Loader::new(budget, cap);
    let model = loader.model(file)?;
    let result = DimsResult {
        hilbert_dims: model.hilbert_dims(),
        nilpotent_degree: model.nilpotent_degree(),
    };
    let human = format!("dims: {:?}\n", result.hilbert_dims);
    let parameters = Parameters {
        build_cap: cap,
        colon_cap: None,
        union_cap: None,
        strategy: None,
        seed: None,
        samples: None,
    };
    let verdict = format!("{:?}", result.hilbert_dims);
    Ok(finish(
        loader,
        Finished {
            command: "dims",
            parameters,
            verdict,
            code: EXIT_OK,
            result: &result,
            human,
        },
        format,
        started,
    ))
}

fn uk_verdict(v: UkVerdict) -> &'static str {
    match v {
        UkVerdict::Complete => "UK_Complete",
        UkVerdict::UpToCap => "UK_UpToCap",
        UkVerdict::NotUk => "NotUK",
    }
}

fn describe_uk(model: &GradedAlgebraModel, r: &UkReport, indent: &str) -> String {
    let labels = model.presentation().labels();
    let mut s = String::new();
    let _ = writeln!(s, "{indent}checked pairs: {}", r.checked_pairs);
    let _ = writeln!(s, "{indent}hilbert dims: {:?}", r.hilbert_dims);
    if let Some(ce) = &r.counterexample {
        let gens: Vec<String> = ce.ideal_generators.basis().iter().map(|v| text::format_vector(v, labels)).collect();
        let _ = writeln!(s, "{indent}I_1 = span{{{}}}", gens.join(", "));
        let _ = writeln!(s, "{indent}x = {}", model.format_element(&ce.x));
        let _ = writeln!(s, "{indent}colon dims: {:?}", ce.colon.dims());
        if let Some(w) = ce.witness() {
            let _ = writeln!(s, "{indent}witness in degree {}: {}", w.degree, model.format_element(w));
        }
    }
    s
}

fn check_uk(file: &Path, common: &Common, budget: Budget) -> Result<Outcome, CliError> {
    let started = Instant::now();
    let cap = build_cap(common, false);
    let mut loader = Loader::new(budget, cap);
    let model = loader.model(file)?;
    let r = check_universal_koszul(&model, strategy(common), common.colon_cap, loader.budget())?;
    let code = if r.verdict.holds() { EXIT_OK } else { EXIT_FAIL };
    let human = describe_uk(&model, &r, "");
    Ok(finish(
        loader,
        Finished {
            command: "check-uk",
            parameters: parameters(common, cap, false),
            verdict: uk_verdict(r.verdict).into(),
            code,
            result: &r,
            human,
        },
        common.format,
        started,
    ))
}

fn auk_verdict(v: &AukVerdict) -> String {
    match v {
        AukVerdict::VerifiedUpTo(d) => format!("AUK_VerifiedUpTo({d})"),
        AukVerdict::Fails { condition, .. } => format!("Fails({})", condition_name(*condition)),
    }
}

fn condition_name(c: auk_core::AukCondition) -> &'static str {
    use auk_core::AukCondition::*;
    match c {
        I => "i",
        Ii => "ii",
        Iii => "iii",
        Iv => "iv",
    }
}

#[derive(Serialize)]
struct AukResult<'a> {
    system: &'a auk_core::FilteredSystem,
    report: &'a auk_core::AukReport,
}

fn check_auk(algebra: &Path, system: &Path, common: &Common, budget: Budget) -> Result<Outcome, CliError> {
    let started = Instant::now();
    let cap = build_cap(common, true);
    let mut loader = Loader::new(budget, cap);
    let model = loader.model(algebra)?;
    let file = loader.system(system, &model)?;
    let sys = build_filtered_system(&model, &file.items, file.close_under_sums, loader.budget())?;
    let r = check_asymptotic_uk(&model, &sys, strategy(common), common.colon_cap, common.union_cap, loader.budget())?;
    let code = if r.verdict.holds() { EXIT_OK } else { EXIT_FAIL };
    let labels = model.presentation().labels();
    let mut human = format!("items: {} (closed under sums: {})\n", sys.len(), sys.closed_under_sums());
    for c in &r.coverage {
        let _ = writeln!(human, "degree {}: union {} of {}", c.degree, c.union_dim, c.target_dim);
    }
    if let AukVerdict::Fails { detail, .. } = &r.verdict {
        let item = |k: usize| -> String {
            let v: Vec<String> = sys.items()[k].basis().iter().map(|b| text::format_vector(b, labels)).collect();
            format!("item {k} = span{{{}}}", v.join(", "))
        };
        match detail {
            AukFailure::NotQuadratic { item: k, witness } => {
                let _ = writeln!(human, "{}: embedding kills an element of degree {}", item(*k), witness.degree);
            }
            AukFailure::ItemNotUk { item: k, counterexample } => {
                let _ = writeln!(human, "{} is not universally Koszul", item(*k));
                let _ = writeln!(human, "  colon dims: {:?}", counterexample.colon.dims());
            }
            AukFailure::MissingCertificate { i, j } => {
                let _ = writeln!(human, "no item contains items {i} and {j}\n  {}\n  {}", item(*i), item(*j));
            }
            AukFailure::UnionGap { degree, witness, .. } => {
                let _ = writeln!(
                    human,
                    "degree {degree}: {} is outside every item image",
                    model.format_element(witness)
                );
            }
            AukFailure::NotCovered { largest_item_dim, .. } => {
                let _ = writeln!(human, "no item is all of A_1 (largest item has dimension {largest_item_dim})");
            }
        }
    }
    for note in &r.notes {
        let _ = writeln!(human, "note {note}");
    }
    let result = AukResult { system: &sys, report: &r };
    Ok(finish(
        loader,
        Finished {
            command: "check-auk",
            parameters: parameters(common, cap, true),
            verdict: auk_verdict(&r.verdict),
            code,
            result: &result,
            human,
        },
        common.format,
        started,
    ))
}

fn describe_witness(w: &Witness, target: &GradedAlgebraModel, items: &[ModelRef]) -> String {
    match w {
        Witness::Element { item: None, element } => format!("{} (degree {})", target.format_element(element), element.degree),
        Witness::Element { item: Some(k), element } => match items.get(*k) {
            Some(m) => format!("{} in item {k} (degree {})", m.format_element(element), element.degree),
            None => format!("{:?} in item {k} (degree {})", element.coords, element.degree),
        },
        Witness::Components { components } => {
            let parts: Vec<String> = components
                .iter()
                .enumerate()
                .map(|(k, c)| match items.get(k) {
                    Some(m) => m.format_element(c),
                    None => format!("{:?}", c.coords),
                })
                .collect();
            format!("({})", parts.join(", "))
        }
        Witness::Pair { i, j } => format!("items {i} and {j}"),
        Witness::Tensor { coords } => text::format_tensor(coords, target.presentation().labels()),
    }
}

fn describe_stages(stages: &[Stage], target: &GradedAlgebraModel, items: &[ModelRef], indent: &str) -> String {
    let mut s = String::new();
    for st in stages {
        let mark = if st.passed { "pass" } else { "FAIL" };
        let _ = write!(s, "{indent}{mark} {}", st.name);
        if let Some(d) = st.degree {
            let _ = write!(s, " (degree {d})");
        }
        if let Some(w) = &st.witness {
            let _ = write!(s, ": {}", describe_witness(w, target, items));
        }
        s.push('\n');
    }
    s
}

fn check_capture(algebra: &Path, quotient: &Path, map: &Path, common: &Common, budget: Budget) -> Result<Outcome, CliError> {
    let started = Instant::now();
    let cap = build_cap(common, false);
    let mut loader = Loader::new(budget, cap);
    let a = loader.model(algebra)?;
    let q = loader.model(quotient)?;
    let pi = loader.map(map, &q, &a)?;
    let r = check_quotient_capture(&pi, cap)?;
    let (verdict, code) = match &r.verdict {
        CaptureVerdict::Captured => ("Captured".to_string(), EXIT_OK),
        CaptureVerdict::Fails { stage, .. } => {
            let name = serde_json::to_value(stage)
                .ok()
                .and_then(|v| v.as_str().map(str::to_owned))
                .unwrap_or_default();
            (format!("Fails({name})"), EXIT_FAIL)
        }
    };
    let mut human = String::new();
    for d in &r.dims {
        let _ = writeln!(
            human,
            "degree {}: Q {}, image {}, subalgebra {}",
            d.degree, d.source_dim, d.image_dim, d.subalgebra_dim
        );
    }
    if let CaptureVerdict::Fails { witness, .. } = &r.verdict {
        let w = match witness {
            Witness::Element { item: Some(_), element } => format!("{} in Q (degree {})", q.format_element(element), element.degree),
            other => describe_witness(other, &a, &[]),
        };
        let _ = writeln!(human, "witness: {w}");
    }
    Ok(finish(
        loader,
        Finished {
            command: "check-capture",
            parameters: parameters(common, cap, false),
            verdict,
            code,
            result: &r,
            human,
        },
        common.format,
        started,
    ))
}

fn gap_name(g: &Gap) -> &'static str {
    match g {
        Gap::NotContained { .. } => "not_contained",
        Gap::NoUpperBound { .. } => "no_upper_bound",
    }
}

fn check_lg(algebra: &Path, manifest: &Path, common: &Common, budget: Budget) -> Result<Outcome, CliError> {
    let started = Instant::now();
    let cap = build_cap(common, true);
    let mut loader = Loader::new(budget, cap);
    let global = loader.model(algebra)?;
    let data = loader.local_global(manifest, &global)?;
    let r = check_local_global(
        &global,
        &data,
        strategy(common),
        common.colon_cap,
        common.union_cap,
        loader.budget(),
    )?;
    let verdict = match &r.verdict {
        LocalGlobalVerdict::AukConcluded { cap } => format!("AUK_Concluded({cap})"),
        LocalGlobalVerdict::DatumFails { stage, .. } => format!("DatumFails({stage})"),
        LocalGlobalVerdict::CompatibilityGap { gap } => format!("CompatibilityGap({})", gap_name(gap)),
        LocalGlobalVerdict::AukFails { condition } => format!("Fails({})", condition_name(*condition)),
    };
    let code = if r.verdict.holds() { EXIT_OK } else { EXIT_FAIL };
    let mut human = String::new();
    for (k, d) in r.data.iter().enumerate() {
        let _ = writeln!(
            human,
            "datum {k} `{}` (dim W = {}): {}",
            d.name,
            d.w_dim,
            if d.passed { "pass" } else { "FAIL" }
        );
        human.push_str(&describe_stages(&d.stages, &global, &[], "  "));
    }
    for g in &r.gaps {
        let (i, j) = match g {
            Gap::NotContained { i, j } | Gap::NoUpperBound { i, j } => (i, j),
        };
        let _ = writeln!(human, "gap {}: data {i} and {j}", gap_name(g));
    }
    Ok(finish(
        loader,
        Finished {
            command: "check-local-global",
            parameters: parameters(common, cap, true),
            verdict,
            code,
            result: &r,
            human,
        },
        common.format,
        started,
    ))
}

fn check_galois(manifest: &Path, common: &Common, budget: Budget) -> Result<Outcome, CliError> {
    let started = Instant::now();
    let cap = build_cap(common, true);
    let mut loader = Loader::new(budget, cap);
    let system = loader.inflation_system(manifest)?;
    let r = check_galois_pipeline(&system, strategy(common), common.colon_cap, common.union_cap, loader.budget())?;
    let verdict = match &r.verdict {
        GaloisVerdict::VerifiedUpTo(d) => format!("AUK_VerifiedUpTo({d})"),
        GaloisVerdict::Fails { hypothesis, .. } => {
            let name = serde_json::to_value(hypothesis)
                .ok()
                .and_then(|v| v.as_str().map(str::to_owned))
                .unwrap_or_default();
            format!("Fails({name})")
        }
    };
    let code = if r.verdict.holds() { EXIT_OK } else { EXIT_FAIL };
    let items: Vec<ModelRef> = system.items().iter().map(|i| i.map.source().clone()).collect();
    let target = system.target();
    let mut human = String::from("hypotheses:\n");
    human.push_str(&describe_stages(&r.colimit.hypotheses, target, &items, "  "));
    human.push_str("conclusions:\n");
    human.push_str(&describe_stages(&r.colimit.conclusions, target, &items, "  "));
    for id in &r.identifications {
        let _ = writeln!(
            human,
            "item `{}`: dim W = {}, relations {} vs {} ({})",
            id.item,
            id.w_dim,
            id.item_relation_dim,
            id.subalgebra_relation_dim,
            if id.relations_match { "match" } else { "differ" }
        );
    }
    if let GaloisVerdict::Fails { stage, item, .. } = &r.verdict {
        let _ = write!(human, "failing stage: {stage}");
        if let Some(k) = item {
            let _ = write!(human, " (item {k})");
        }
        human.push('\n');
    }
    for a in &r.assumptions {
        let _ = writeln!(human, "assumed: {a}");
    }
    Ok(finish(
        loader,
        Finished {
            command: "check-galois",
            parameters: parameters(common, cap, true),
            verdict,
            code,
            result: &r,
            human,
        },
        common.format,
        started,
    ))
}

fn check_descent(algebra: &Path, split: &Path, common: &Common, budget: Budget) -> Result<Outcome, CliError> {
    let started = Instant::now();
    let cap = build_cap(common, false);
    let mut loader = Loader::new(budget, cap);
    let c = loader.model(algebra)?;
    let (w, u) = loader.split(split, &c)?;
    let outcome = descend_uk(&c, &w, &u, strategy(common), common.colon_cap, loader.budget())?;
    let labels = c.presentation().labels();
    let mut human = String::new();
    let (verdict, code) = match &outcome {
        DescentOutcome::Refused(auk_core::subalgebra::Refusal::SplitFailed { split }) => {
            match &split.failure {
                Some(auk_core::SplitFailure::RelationNotSplit {
                    relation,
                    ww_part,
                    uu_part,
                    mixed_part,
                }) => {
                    let _ = writeln!(human, "relation {} is not split", text::format_tensor(relation, labels));
                    let _ = writeln!(human, "  W⊗W part: {}", text::format_tensor(ww_part, labels));
                    let _ = writeln!(human, "  U⊗U part: {}", text::format_tensor(uu_part, labels));
                    let _ = writeln!(human, "  mixed part: {}", text::format_tensor(mixed_part, labels));
                }
                Some(auk_core::SplitFailure::NotComplementary {
                    sum_dim,
                    intersection_dim,
                    ambient,
                }) => {
                    let _ = writeln!(
                        human,
                        "W and U are not complementary: dim(W+U) = {sum_dim}, dim(W∩U) = {intersection_dim}, dim A_1 = {ambient}"
                    );
                }
                None => {}
            }
            ("Refused(split)".to_string(), EXIT_FAIL)
        }
        DescentOutcome::Refused(auk_core::subalgebra::Refusal::ParentNotUk { report }) => {
            human.push_str(&describe_uk(&c, report, "  "));
            ("Refused(parent_not_uk)".to_string(), EXIT_FAIL)
        }
        DescentOutcome::Completed(d) => {
            let _ = writeln!(human, "parent: {}", uk_verdict(d.parent_report.verdict));
            let _ = writeln!(human, "derived for <W>: {}", uk_verdict(d.derived));
            let _ = writeln!(human, "direct for <W>: {}", uk_verdict(d.direct.verdict));
            if d.agree {
                (format!("Descended({})", uk_verdict(d.derived)), EXIT_OK)
            } else {
                ("DescentMismatch".to_string(), EXIT_FAIL)
            }
        }
    };
    Ok(finish(
        loader,
        Finished {
            command: "check-descent",
            parameters: parameters(common, cap, false),
            verdict,
            code,
            result: &outcome,
            human,
        },
        common.format,
        started,
    ))
}

#[derive(Serialize)]
struct VerifyResult {
    report_verdict: String,
    digest_matches: bool,
    witness_checked: bool,
    witness_valid: Option<bool>,
}

fn verify(algebra: &Path, report_path: &Path, format: Format, budget: Budget) -> Result<Outcome, CliError> {
    let started = Instant::now();
    let mut loader = Loader::new(budget, 2);
    let raw = loader.read(report_path)?;
    let header: Header = serde_json::from_str(&raw).map_err(|source| CliError::Json {
        path: report_path.to_path_buf(),
        source,
    })?;
    if header.command != "check-uk" {
        return Err(CliError::Input(format!(
            "{}: verify expects a check-uk report, found `{}`",
            report_path.display(),
            header.command
        )));
    }
    let bytes = std::fs::read(algebra).map_err(|source| CliError::Read {
        path: algebra.to_path_buf(),
        source,
    })?;
    let digest_matches = header.inputs.first().is_some_and(|i| i.sha256 == digest(&bytes));
    if !digest_matches {
        return Err(CliError::Input(format!(
            "{} does not match the input digest recorded in {}",
            algebra.display(),
            report_path.display()
        )));
    }
    let mut model_loader = Loader::new(budget, header.parameters.build_cap);
    let model = model_loader.model(algebra)?;
    let uk: UkReport = serde_json::from_value(header.result.clone()).map_err(|source| CliError::Json {
        path: report_path.to_path_buf(),
        source,
    })?;
    let witness_valid = verify_report(&model, &uk);
    let (verdict, code) = match witness_valid {
        Some(true) => ("WitnessVerified", EXIT_OK),
        Some(false) => ("WitnessRejected", EXIT_FAIL),
        None => ("NoWitness", EXIT_OK),
    };
    let result = VerifyResult {
        report_verdict: header.verdict.clone(),
        digest_matches,
        witness_checked: witness_valid.is_some(),
        witness_valid,
    };
    let human = format!("report verdict: {}\n", header.verdict);
    let mut inputs_loader = loader;
    for i in model_loader.into_inputs() {
        inputs_loader.record(i);
    }
    Ok(finish(
        inputs_loader,
        Finished {
            command: "verify",
            parameters: Parameters {
                build_cap: header.parameters.build_cap,
                colon_cap: None,
                union_cap: None,
                strategy: None,
                seed: None,
                samples: None,
            },
            verdict: verdict.into(),
            code,
            result: &result,
            human,
        },
        format,
        started,
    ))
}
