//! Command implementations.

use std::fmt;
use std::path::PathBuf;

use wmlat::building::{self, BuildingError};
use wmlat::dict::{self, DictError, FlagComplexBall, FlagFile};
use wmlat::garside::{self, GarsideError, Letter};
use wmlat::order::OrderError;
use wmlat::wmcheck::{self, ConditionReport, FiniteGraph, Verdict};
use wmlat::zaction::ZactionError;

use crate::instance::{load_germ, parse_instance, NamedBall};
use crate::report::{ReplayCase, RunReport};
use crate::{BuildingAction, CapOpts, Command, DictAction, GermAction, OutputOpts};

pub enum Outcome {
    Clean,
    VerificationFailed,
}

#[derive(Debug)]
pub struct CliError {
    message: String,
    code: u8,
}

impl CliError {
    pub fn config<S: fmt::Display>(m: S) -> CliError {
        CliError { message: m.to_string(), code: 2 }
    }

    pub fn parse<S: fmt::Display>(m: S) -> CliError {
        CliError { message: m.to_string(), code: 3 }
    }

    pub fn cap<S: fmt::Display>(m: S) -> CliError {
        CliError { message: m.to_string(), code: 4 }
    }

    pub fn exit_code(&self) -> u8 {
        self.code
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.message)
    }
}

impl From<GarsideError> for CliError {
    fn from(e: GarsideError) -> Self {
        match &e {
            GarsideError::CapExceeded(_) => CliError::cap(e),
            GarsideError::Parse(_) | GarsideError::UnknownSimple(_) | GarsideError::UnknownObject(_) => {
                CliError::parse(e)
            }
            _ => CliError::parse(e),
        }
    }
}

impl From<ZactionError> for CliError {
    fn from(e: ZactionError) -> Self {
        match &e {
            ZactionError::CapExceeded { .. } => CliError::cap(e),
            _ => CliError::parse(e),
        }
    }
}

impl From<BuildingError> for CliError {
    fn from(e: BuildingError) -> Self {
        match &e {
            BuildingError::CapExceeded(_) => CliError::cap(e),
            _ => CliError::parse(e),
        }
    }
}

impl From<DictError> for CliError {
    fn from(e: DictError) -> Self {
        CliError::parse(e)
    }
}

impl From<OrderError> for CliError {
    fn from(e: OrderError) -> Self {
        CliError::parse(e)
    }
}

pub fn dispatch(command: Command) -> Result<Outcome, CliError> {
    match command {
        Command::Germ { action } => germ_action(action),
        Command::Nf { germ, file, word, output } => nf(germ, file, word, output),
        Command::Gcd { germ, file, left, right, output } => {
            gcd_lcm(germ, file, left, right, output, true)
        }
        Command::Lcm { germ, file, left, right, output } => {
            gcd_lcm(germ, file, left, right, output, false)
        }
        Command::CayleyBall { germ, file, radius, caps, output } => {
            germ_ball(germ, file, radius, caps, output, false)
        }
        Command::QuotientBall { germ, file, radius, caps, output } => {
            germ_ball(germ, file, radius, caps, output, true)
        }
        Command::Wm { instance, quotient, radius, strong, clique_cap, caps, output } => {
            wm(instance, quotient, radius, strong, clique_cap, caps, output)
        }
        Command::Dict { action } => dict_action(action),
        Command::Building { action } => building_action(action),
        Command::Replay { file } => replay(file),
    }
}

fn parse_word(germ: &garside::Germ, word: &str) -> Result<Vec<Letter>, CliError> {
    word.split_whitespace()
        .map(|tok| {
            if let Some(name) = tok.strip_suffix("^-1") {
                Ok(Letter::Neg(germ.simple_id(name)?))
            } else {
                Ok(Letter::Pos(germ.simple_id(tok)?))
            }
        })
        .collect::<Result<Vec<_>, GarsideError>>()
        .map_err(CliError::from)
}

fn germ_action(action: GermAction) -> Result<Outcome, CliError> {
    let GermAction::Check { germ, file, bound, output } = action;
    let spec = germ.clone().unwrap_or_else(|| file.as_ref().unwrap().display().to_string());
    let g = load_germ(&germ, &file)?;
    let check = g.check(bound);
    let mut report = RunReport::new(format!("germ check {spec}"), 0, 0);
    for (name, status) in check.entries() {
        report.push(name, if status.passed() { "pass" } else { "fail" }, status);
    }
    println!("{}", report.summary());
    if let Some((name, status)) = check.first_failure() {
        println!("first failure: {name}: {status:?}");
    }
    report.write(&output.out).map_err(CliError::config)?;
    Ok(if check.all_pass() { Outcome::Clean } else { Outcome::VerificationFailed })
}

fn nf(
    germ: Option<String>,
    file: Option<PathBuf>,
    word: String,
    output: OutputOpts,
) -> Result<Outcome, CliError> {
    let g = load_germ(&germ, &file)?;
    let letters = parse_word(&g, &word)?;
    let m = garside::normal_form(&g, 0, &letters)?;
    let factors: Vec<&str> = m.factors.iter().map(|&s| g.simple_name(s)).collect();
    println!("normal form: {}", m.label(&g));
    println!("delta_power: {}", m.delta_power);
    println!("factors: [{}]", factors.join(", "));
    let mut report = RunReport::new(format!("nf {word}"), 0, 0);
    report.push(
        "normal-form",
        "pass",
        &serde_json::json!({ "factors": factors, "delta_power": m.delta_power }),
    );
    report.write(&output.out).map_err(CliError::config)?;
    Ok(Outcome::Clean)
}

fn gcd_lcm(
    germ: Option<String>,
    file: Option<PathBuf>,
    left: String,
    right: String,
    output: OutputOpts,
    is_gcd: bool,
) -> Result<Outcome, CliError> {
    let g = load_germ(&germ, &file)?;
    let f = garside::normal_form(&g, 0, &parse_word(&g, &left)?)?;
    let h = garside::normal_form(&g, 0, &parse_word(&g, &right)?)?;
    let result = if is_gcd { garside::left_gcd(&g, &f, &h)? } else { garside::left_lcm(&g, &f, &h)? };
    let verb = if is_gcd { "gcd" } else { "lcm" };
    println!("{verb}({}, {}) = {}", f.label(&g), h.label(&g), result.label(&g));
    let mut report = RunReport::new(format!("{verb} {left} | {right}"), 0, 0);
    report.push(verb, "pass", &serde_json::json!({ "result": result.label(&g) }));
    report.write(&output.out).map_err(CliError::config)?;
    Ok(Outcome::Clean)
}

fn export_graph(graph: &FiniteGraph, name: &str, output: &OutputOpts) -> Result<(), CliError> {
    match output.format.as_str() {
        "dot" => {
            let text = graph.to_dot(name);
            write_or_print(&output.out, "dot", &text)
        }
        "text" => {
            let text = graph.to_adjacency_text();
            write_or_print(&output.out, "txt", &text)
        }
        "json" => {
            let mut adjacency = serde_json::Map::new();
            for v in 0..graph.order() {
                adjacency.insert(
                    graph.name(v).to_string(),
                    serde_json::json!(graph
                        .neighbors(v)
                        .iter()
                        .map(|&w| graph.name(w))
                        .collect::<Vec<_>>()),
                );
            }
            write_or_print(
                &output.out,
                "json",
                &serde_json::to_string_pretty(&serde_json::Value::Object(adjacency)).unwrap(),
            )
        }
        _ => Err(CliError::config("unknown format")),
    }
}

fn write_or_print(out: &Option<PathBuf>, ext: &str, text: &str) -> Result<(), CliError> {
    match out {
        Some(base) => {
            let path =
                if base.extension().is_some() { base.clone() } else { base.with_extension(ext) };
            std::fs::write(&path, text).map_err(CliError::config)?;
            println!("graph written to {}", path.display());
            Ok(())
        }
        None => {
            println!("{text}");
            Ok(())
        }
    }
}

fn germ_ball(
    germ: Option<String>,
    file: Option<PathBuf>,
    radius: u32,
    caps: CapOpts,
    output: OutputOpts,
    quotient: bool,
) -> Result<Outcome, CliError> {
    let g = load_germ(&germ, &file)?;
    let ball = if quotient {
        garside::delta_quotient_ball(&g, 0, radius, caps.caps)?
    } else {
        garside::weak_cayley_ball(&g, 0, radius, caps.caps)?
    };
    println!(
        "{} ball radius {radius}: {} vertices, center degree {}",
        if quotient { "quotient" } else { "cayley" },
        ball.graph.order(),
        ball.graph.neighbors(0).len()
    );
    export_graph(&ball.graph, "ball", &output)?;
    Ok(Outcome::Clean)
}

fn condition_verdict(reports: &[ConditionReport]) -> &'static str {
    match wmcheck::combine(reports.iter().map(|r| r.verdict)) {
        Verdict::Pass => "pass",
        Verdict::Fail => "fail",
        Verdict::Inconclusive => "inconclusive",
    }
}

fn wm(
    instance_spec: String,
    quotient: bool,
    radius: u32,
    strong: bool,
    clique_cap: usize,
    caps: CapOpts,
    output: OutputOpts,
) -> Result<Outcome, CliError> {
    let instance = parse_instance(&instance_spec)?;
    let NamedBall { graph, center } = instance.ball(quotient, radius, caps.caps)?;
    let reports = wmcheck::audit_graph(&graph, &[center]);
    let mut run = RunReport::new(
        format!("wm {instance_spec} quotient={quotient} radius={radius}"),
        caps.seed,
        caps.caps,
    );
    println!(
        "{} vertices, {} interior; basepoint {}",
        graph.order(),
        graph.interior_vertices().len(),
        graph.name(center)
    );
    println!("{:<10} {:>3} {:>9} {:>7} {:>7} {:>12}", "condition", "n", "instances", "passed", "incon.", "verdict");
    for r in &reports {
        println!(
            "{:<10} {:>3} {:>9} {:>7} {:>7} {:>12}",
            r.condition,
            r.n,
            r.instances,
            r.passed,
            r.inconclusive,
            format!("{:?}", r.verdict)
        );
        for fail in &r.failures {
            run.replay.push(ReplayCase {
                instance: instance_spec.clone(),
                quotient,
                radius,
                cap: caps.caps,
                condition: r.condition.clone(),
                basepoint: fail.basepoint.clone(),
                n: fail.n,
                pair: fail.pair.clone(),
                apex: fail.apex.clone(),
            });
        }
        run.push(&format!("{} n={} @{}", r.condition, r.n, r.basepoint), condition_verdict(std::slice::from_ref(r)), r);
    }
    if strong {
        let sr = wmcheck::check_strong_conditions(&graph, center, clique_cap);
        println!(
            "strong     all {:>9} {:>7} {:>7} {:>12}",
            sr.instances,
            sr.passed,
            sr.inconclusive,
            format!("{:?}", sr.verdict)
        );
        run.push(
            "strong-conditions",
            match sr.verdict {
                Verdict::Pass => "pass",
                Verdict::Fail => "fail",
                Verdict::Inconclusive => "inconclusive",
            },
            &sr,
        );
    }
    run.write(&output.out).map_err(CliError::config)?;
    Ok(if run.failed() { Outcome::VerificationFailed } else { Outcome::Clean })
}

fn dict_action(action: DictAction) -> Result<Outcome, CliError> {
    match action {
        DictAction::ToFlag { instance, radius, output } => {
            let window = parse_instance(&instance)?.window(radius)?;
            let flag = dict::lattice_to_flag(&window)?;
            let axioms = dict::check_flag_axioms(&flag);
            let file = flag.to_file();
            let json = serde_json::to_string_pretty(&file).unwrap();
            write_or_print(&output.out, "json", &json)?;
            println!("axioms: {}", if axioms.all_pass() { "pass" } else { "FAIL" });
            Ok(if axioms.all_pass() { Outcome::Clean } else { Outcome::VerificationFailed })
        }
        DictAction::ToOrder { file, output } => {
            let text = std::fs::read_to_string(&file)
                .map_err(|e| CliError::config(format!("cannot read {}: {e}", file.display())))?;
            let parsed: FlagFile = serde_json::from_str(&text).map_err(CliError::parse)?;
            let ball = FlagComplexBall::from_file(&parsed)?;
            let (relation, extraction) = dict::flag_to_weak_order(&ball)?;
            let mut run = RunReport::new(format!("dict to-order {}", file.display()), 0, 0);
            run.push(
                "hypotheses",
                if extraction.all_pass() { "pass" } else { "fail" },
                &extraction,
            );
            println!("{}", run.summary());
            println!("elements: {}", relation.len());
            run.write(&output.out).map_err(CliError::config)?;
            Ok(if extraction.all_pass() { Outcome::Clean } else { Outcome::VerificationFailed })
        }
        DictAction::Roundtrip { instance, radius, output } => {
            let window = parse_instance(&instance)?.window(radius)?;
            let compared = dict::roundtrip_window(&window)?;
            let mut run = RunReport::new(format!("dict roundtrip {instance} r={radius}"), 0, 0);
            run.push(
                "roundtrip",
                "pass",
                &serde_json::json!({ "interior_pairs_compared": compared }),
            );
            println!("{}", run.summary());
            run.write(&output.out).map_err(CliError::config)?;
            Ok(Outcome::Clean)
        }
        DictAction::TypedA2 { instance, levels, output } => {
            let (lo, hi) = levels
                .split_once(':')
                .and_then(|(a, b)| Some((a.parse().ok()?, b.parse().ok()?)))
                .ok_or_else(|| CliError::config("levels must be lo:hi"))?;
            let complex = typed_instance(&instance)?;
            let flag = dict::typed_a2_to_flag(&complex, (lo, hi))?;
            let axioms = dict::check_flag_axioms(&flag);
            let mut run = RunReport::new(format!("dict typed-a2 {instance}"), 0, 0);
            run.push("axioms", if axioms.all_pass() { "pass" } else { "fail" }, &axioms);
            println!("{}", run.summary());
            println!("vertices: {}", flag.len());
            run.write(&output.out).map_err(CliError::config)?;
            Ok(if axioms.all_pass() { Outcome::Clean } else { Outcome::VerificationFailed })
        }
    }
}

fn typed_instance(spec: &str) -> Result<dict::TypedComplex, CliError> {
    let parts: Vec<&str> = spec.split(':').collect();
    match parts.as_slice() {
        ["coxeter", r] => {
            let r: u32 = r.parse().map_err(|_| CliError::config(spec))?;
            Ok(dict::coxeter_a2_ball(r))
        }
        ["building", n, q, r] => {
            let n: usize = n.parse().map_err(|_| CliError::config(spec))?;
            if n != 3 {
                return Err(CliError::config("typed-a2 building instances need n = 3"));
            }
            let q: u8 = q.parse().map_err(|_| CliError::config(spec))?;
            let r: u32 = r.parse().map_err(|_| CliError::config(spec))?;
            let ball = building::building_ball(n, q, r, 500_000)?;
            let types: Vec<u8> = ball.points.iter().map(|l| l.vertex_type() as u8).collect();
            dict::TypedComplex::new(ball.graph, types).map_err(CliError::from)
        }
        _ => Err(CliError::config(format!("unknown typed instance {spec:?}"))),
    }
}

fn building_action(action: BuildingAction) -> Result<Outcome, CliError> {
    match action {
        BuildingAction::Ball { n, q, radius, caps, output } => {
            let ball = building::building_ball(n, q, radius, caps.caps)?;
            println!(
                "building ball n={n} q={q} radius={radius}: {} vertices, center degree {}",
                ball.graph.order(),
                ball.graph.neighbors(0).len()
            );
            export_graph(&ball.graph, "building", &output)?;
            Ok(Outcome::Clean)
        }
        BuildingAction::Germ { n, q, output } => {
            let germ = building::subspace_germ(n, q)?;
            let check = germ.check(4);
            let file = germ.to_file();
            let json = serde_json::to_string_pretty(&file).unwrap();
            write_or_print(&output.out, "json", &json)?;
            println!("germ axioms: {}", if check.all_pass() { "pass" } else { "FAIL" });
            Ok(if check.all_pass() { Outcome::Clean } else { Outcome::VerificationFailed })
        }
        BuildingAction::Wm { n, q, radius, caps, output } => wm(
            format!("building:{n}:{q}"),
            true,
            radius,
            false,
            wmcheck::DEFAULT_CLIQUE_CAP,
            caps,
            output,
        ),
    }
}

fn replay(file: PathBuf) -> Result<Outcome, CliError> {
    let text = std::fs::read_to_string(&file)
        .map_err(|e| CliError::config(format!("cannot read {}: {e}", file.display())))?;
    let report: RunReport = serde_json::from_str(&text).map_err(CliError::parse)?;
    if report.replay.is_empty() {
        println!("no counterexamples to replay");
        return Ok(Outcome::Clean);
    }
    let mut all_confirmed = true;
    for case in &report.replay {
        let instance = parse_instance(&case.instance)?;
        let NamedBall { graph, .. } = instance.ball(case.quotient, case.radius, case.cap)?;
        let x = graph
            .vertex(&case.basepoint)
            .ok_or_else(|| CliError::parse(format!("basepoint {} missing", case.basepoint)))?;
        let checked = match case.condition.as_str() {
            "TC" => wmcheck::check_tc(&graph, x, case.n),
            "QC" => wmcheck::check_qc(&graph, x, case.n),
            other => return Err(CliError::parse(format!("cannot replay condition {other:?}"))),
        };
        let confirmed = checked
            .failures
            .iter()
            .any(|f| f.pair == case.pair || (f.pair.0 == case.pair.1 && f.pair.1 == case.pair.0));
        println!(
            "replay {} {} n={} pair=({}, {}): {}",
            case.condition,
            case.basepoint,
            case.n,
            case.pair.0,
            case.pair.1,
            if confirmed { "confirmed" } else { "NOT reproduced" }
        );
        all_confirmed &= confirmed;
    }
    Ok(if all_confirmed { Outcome::Clean } else { Outcome::VerificationFailed })
}
