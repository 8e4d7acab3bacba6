//! Command implementations. Each builds a [`Report`] and an exit code
//! (0 all pass, 1 verification failure); input errors surface as `Err`.

use clap::{Args, Parser, Subcommand};
use foldkit::folding::{classify_orbit_pair, sigma_transitive, steinberg_check};
use foldkit::grothendieck::{compare_sides, forget_specialize, trace_specialize, weighted_quotient};
use foldkit::hecke::{HeckeAlgebra, KlCoords};
use foldkit::Elem;

use crate::error::{CliError, CliResult};
use crate::input::{fold_by_action, load_action, load_fixture, load_system, parse_weights, DEFAULT_CAP};
use crate::report::{Report, Table};
use crate::suites::{run_suite, s3_a3_example, sn_partition_example, SuiteResult, SUITES};

#[derive(Debug, Parser)]
#[command(name = "foldkit", version, about = "Hecke algebras with unequal parameters and quasi-split foldings")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    /// Write the report here instead of stdout.
    #[arg(long, global = true)]
    pub out: Option<String>,
}

#[derive(Debug, Args)]
pub struct SystemArgs {
    /// Builtin name (A1..A5, B2, B3, D4, G2, H3, I2(m), products with ×) or a .json file.
    #[arg(long)]
    pub system: String,
    /// Comma-separated weights in generator order, or name=value pairs.
    #[arg(long)]
    pub weights: Option<String>,
    /// Enumeration cap.
    #[arg(long, default_value_t = DEFAULT_CAP)]
    pub cap: usize,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Fold a system along the orbits of a group action.
    Fold {
        /// Builtin name or a .json file; weights come from the fold.
        #[arg(long)]
        system: String,
        /// Builtin action name or a .json file.
        #[arg(long, default_value = "trivial")]
        action: String,
        /// Enumeration cap.
        #[arg(long, default_value_t = DEFAULT_CAP)]
        cap: usize,
    },
    /// Standard-basis expansion of a KL basis element.
    Kl {
        #[command(flatten)]
        system: SystemArgs,
        /// Element word; empty for the identity.
        #[arg(default_value = "")]
        word: String,
    },
    /// KL expansion of a product of KL basis elements.
    Mult {
        #[command(flatten)]
        system: SystemArgs,
        /// Comma-separated factors, each a word, optionally in parentheses.
        #[arg(default_value = "")]
        factors: String,
    },
    /// Trace or forgetful specialization of a decomposition fixture.
    Trace {
        /// Shipped fixture name or a .json file.
        #[arg(long)]
        fixture: String,
        /// Group element word; `e` gives the forgetful image. Defaults to sigma.
        #[arg(long)]
        at: Option<String>,
        /// Compare both specializations with the Hecke products.
        #[arg(long)]
        check: bool,
        /// Enumeration cap.
        #[arg(long, default_value_t = DEFAULT_CAP)]
        cap: usize,
    },
    /// Run a verification suite.
    Verify {
        /// dihedral, compare, trace, quadratic, steinberg, kl, wgg, sigma, or all.
        suite: String,
    },
    /// Weighted quotient ranks of a builtin G-set example (s3a3, s4, s5).
    Wgg {
        example: String,
        /// Group element word; defaults to one row per conjugacy class.
        #[arg(long)]
        at: Option<String>,
    },
}

pub struct Outcome {
    pub report: Report,
    pub exit_code: i32,
}

fn verdict(ok: bool) -> &'static str {
    if ok {
        "PASS"
    } else {
        "FAIL"
    }
}

fn algebra(args: &SystemArgs) -> CliResult<HeckeAlgebra> {
    let mut system = load_system(&args.system)?.resolve()?;
    if let Some(w) = &args.weights {
        system.weights = Some(parse_weights(&system.matrix, w)?);
    }
    let weights = system.weight_function()?;
    Ok(HeckeAlgebra::new(system.enumerate(args.cap)?, weights)?)
}

pub fn execute(cmd: &Command) -> CliResult<Outcome> {
    match cmd {
        Command::Fold { system, action, cap } => fold_cmd(system, action, *cap),
        Command::Kl { system, word } => kl_cmd(system, word),
        Command::Mult { system, factors } => mult_cmd(system, factors),
        Command::Trace { fixture, at, check, cap } => trace_cmd(fixture, at.as_deref(), *check, *cap),
        Command::Verify { suite } => verify_cmd(suite),
        Command::Wgg { example, at } => wgg_cmd(example, at.as_deref()),
    }
}

fn fold_cmd(system: &str, action: &str, cap: usize) -> CliResult<Outcome> {
    let system = load_system(system)?.resolve()?;
    let action = load_action(action)?.resolve(&system)?;
    let emb = fold_by_action(&system, &action, cap)?;
    let amb = emb.ambient();
    let folded = emb.folded();
    let mut report = Report::new("fold");

    let mut orbits = Table::new("orbits", &["generator", "orbit", "image", "weight"]);
    for (i, block) in emb.partition().blocks().iter().enumerate() {
        let members: Vec<&str> = block.iter().map(|&s| system.matrix.name(s)).collect();
        orbits.push(&[
            folded.matrix().name(i).to_string(),
            members.join(" "),
            amb.name(emb.images()[i]),
            emb.weights().get(i).to_string(),
        ]);
    }
    report.tables.push(orbits);

    let names: Vec<&str> = folded.matrix().names().iter().map(String::as_str).collect();
    let mut header = vec!["generator"];
    header.extend(&names);
    let mut matrix = Table::new("folded_matrix", &header);
    for (i, row) in folded.matrix().rows().iter().enumerate() {
        let mut cells = vec![names[i].to_string()];
        cells.extend(row.iter().map(|m| m.to_string()));
        matrix.push(&cells);
    }
    report.tables.push(matrix);

    let mut classes = Table::new("classification", &["s", "t", "m", "case", "k", "L(s)", "L(t)"]);
    let mut all_classified = true;
    for s in 0..names.len() {
        for t in s + 1..names.len() {
            match classify_orbit_pair(&emb, s, t) {
                Ok(c) => classes.push(&[
                    names[s].to_string(),
                    names[t].to_string(),
                    c.m.to_string(),
                    c.case.label().to_string(),
                    c.k.to_string(),
                    c.l_s.to_string(),
                    c.l_t.to_string(),
                ]),
                Err(e) => {
                    all_classified = false;
                    let m = folded.matrix().entry(s, t).to_string();
                    classes.push(&[names[s], names[t], &m, &format!("unclassified: {e}"), "-", "-", "-"]);
                }
            }
        }
    }
    report.tables.push(classes);

    let st = steinberg_check(amb, &action.action);
    let transitive = sigma_transitive(&action.action, &action.sigma)?;
    let mut verdicts = Table::new("verdicts", &["check", "result", "detail"]);
    verdicts.push(&[
        "steinberg",
        verdict(st.passed()),
        &format!("{} fixed elements, {} generated", st.fixed.len(), st.generated.len()),
    ]);
    verdicts.push(&[
        "sigma_transitive",
        verdict(transitive),
        &format!("sigma = {}", action.sigma),
    ]);
    verdicts.push(&["classification", verdict(all_classified), ""]);
    report.tables.push(verdicts);
    let ok = st.passed() && transitive && all_classified;
    Ok(Outcome {
        report,
        exit_code: if ok { 0 } else { 1 },
    })
}

fn kl_cmd(args: &SystemArgs, word: &str) -> CliResult<Outcome> {
    let h = algebra(args)?;
    let sys = h.system();
    let x = if word.trim().is_empty() { Elem::IDENTITY } else { sys.parse_element(word)? };
    let mut table = Table::new("kl", &["element", "polynomial"]);
    for (y, p) in h.kl_element(x).terms() {
        table.push(&[sys.name(y), p.to_string()]);
    }
    let mut report = Report::new("kl");
    report.tables.push(table);
    Ok(Outcome { report, exit_code: 0 })
}

/// Splits `y,(x z),y` into factor words.
pub fn parse_factors(text: &str) -> Vec<String> {
    text.split(',')
        .map(|f| f.trim().trim_start_matches('(').trim_end_matches(')').trim().to_string())
        .filter(|f| !f.is_empty())
        .collect()
}

fn coords_table(name: &str, sys: &foldkit::CoxeterSystem, coords: &KlCoords) -> Table {
    let mut table = Table::new(name, &["element", "coefficient"]);
    for (w, p) in coords {
        table.push(&[sys.name(*w), p.to_string()]);
    }
    table
}

fn mult_cmd(args: &SystemArgs, factors: &str) -> CliResult<Outcome> {
    let h = algebra(args)?;
    let sys = h.system();
    let elems: Vec<Elem> = parse_factors(factors)
        .iter()
        .map(|f| sys.parse_element(f))
        .collect::<Result<_, _>>()?;
    let mut report = Report::new("mult");
    report.tables.push(coords_table("product", sys, &h.kl_product_general(&elems)));
    Ok(Outcome { report, exit_code: 0 })
}

fn trace_cmd(fixture: &str, at: Option<&str>, check: bool, cap: usize) -> CliResult<Outcome> {
    let f = load_fixture(fixture)?.resolve(cap)?;
    let emb = &f.embedding;
    let amb = emb.ambient();
    let at = at.unwrap_or(&f.sigma);
    let folded_name = |w: Elem| emb.phi_inverse(w).map(|x| emb.folded().name(x)).unwrap_or_else(|| "-".into());
    let values = if at.trim() == "e" {
        forget_specialize(&f.decomposition)
    } else {
        trace_specialize(&f.decomposition, at)?
    };
    let mut table = Table::new("trace", &["element", "folded", "polynomial"]);
    for (w, p) in &values {
        table.push(&[amb.name(*w), folded_name(*w), p.to_string()]);
    }
    let mut report = Report::new("trace");
    report.tables.push(table);
    let mut exit_code = 0;
    if check {
        let transitive = sigma_transitive(f.decomposition.action(), &f.sigma)?;
        let sides = compare_sides(emb, &f.word, &f.decomposition, &f.sigma)?;
        let mut verdicts = Table::new("verdicts", &["check", "result", "detail"]);
        verdicts.push(&["sigma_transitive", verdict(transitive), &format!("sigma = {}", f.sigma)]);
        verdicts.push(&["identity", verdict(sides.identity_side_passed()), "forgetful image vs split product"]);
        verdicts.push(&["sigma", verdict(sides.sigma_side_passed()), "trace vs folded product"]);
        report.tables.push(verdicts);
        let mut diff = Table::new("diff", &["side", "element", "decomposition", "product"]);
        for line in sides.diff(emb).lines() {
            let mut cells: Vec<&str> = line.split('\t').collect();
            cells.resize(4, "");
            cells[2] = cells[2].trim_start_matches("decomposition ");
            cells[3] = cells[3].trim_start_matches("product ");
            diff.push(&cells);
        }
        report.tables.push(diff);
        if !(transitive && sides.passed()) {
            exit_code = 1;
        }
    }
    Ok(Outcome { report, exit_code })
}

pub fn suites_for(name: &str) -> CliResult<Vec<&'static str>> {
    if name == "all" {
        return Ok(SUITES.to_vec());
    }
    SUITES
        .iter()
        .find(|s| **s == name)
        .map(|s| vec![*s])
        .ok_or_else(|| CliError::input(format!("unknown suite `{name}`; expected one of {SUITES:?} or all")))
}

pub fn suite_report(results: &[SuiteResult]) -> Report {
    let mut report = Report::new("verify");
    let mut summary = Table::new("summary", &["criterion", "suite", "result", "cases", "failed"]);
    let mut cases = Table::new("cases", &["criterion", "suite", "case", "result", "detail"]);
    for r in results {
        let failed = r.failures().count();
        summary.push(&[
            r.criterion.to_string(),
            r.suite.to_string(),
            verdict(r.passed()).to_string(),
            r.cases.len().to_string(),
            failed.to_string(),
        ]);
        for c in &r.cases {
            cases.push(&[
                r.criterion.to_string(),
                r.suite.to_string(),
                c.name.clone(),
                verdict(c.passed).to_string(),
                c.detail.clone(),
            ]);
        }
    }
    report.tables.push(summary);
    report.tables.push(cases);
    report
}

fn verify_cmd(suite: &str) -> CliResult<Outcome> {
    let results: Vec<SuiteResult> = suites_for(suite)?
        .into_iter()
        .map(|s| run_suite(s).expect("listed suites exist"))
        .collect();
    let ok = results.iter().all(SuiteResult::passed);
    Ok(Outcome {
        report: suite_report(&results),
        exit_code: if ok { 0 } else { 1 },
    })
}

fn wgg_cmd(example: &str, at: Option<&str>) -> CliResult<Outcome> {
    let (group, gset, chars) = match example {
        "s3a3" => s3_a3_example(),
        "s4" => sn_partition_example(4),
        "s5" => sn_partition_example(5),
        other => return Err(CliError::input(format!("unknown G-set example `{other}` (s3a3, s4, s5)"))),
    };
    let elements: Vec<usize> = match at {
        Some(w) => vec![group.parse(w)?],
        None => group.conjugacy_classes().iter().map(|c| c[0]).collect(),
    };
    let mut table = Table::new("ranks", &["element", "rank", "basis"]);
    for g in elements {
        let q = weighted_quotient(&gset, &chars, g)?;
        let basis: Vec<String> = q.basis.iter().map(|(o, v)| format!("{o}:{v}")).collect();
        table.push(&[group.name(g), q.rank.to_string(), basis.join(" ")]);
    }
    let mut report = Report::new("wgg");
    report.tables.push(table);
    Ok(Outcome { report, exit_code: 0 })
}

/// What a run prints: the report for stdout, diagnostics for stderr.
pub struct RunOutput {
    pub stdout: String,
    pub stderr: String,
    pub exit_code: i32,
}

/// Runs a parsed command line, writing the report to `--out` when given.
/// Errors exit 2 (input) or 1 (verification).
pub fn run(cli: &Cli) -> RunOutput {
    let fail = |msg: String, exit_code| RunOutput {
        stdout: String::new(),
        stderr: msg,
        exit_code,
    };
    match execute(&cli.command) {
        Ok(outcome) => {
            let text = outcome.report.render();
            match &cli.out {
                Some(path) => match std::fs::write(path, &text) {
                    Ok(()) => fail(String::new(), outcome.exit_code),
                    Err(e) => fail(format!("error: {path}: {e}\n"), 2),
                },
                None => RunOutput {
                    stdout: text,
                    stderr: String::new(),
                    exit_code: outcome.exit_code,
                },
            }
        }
        Err(e) => fail(format!("error: {e}\n"), e.exit_code()),
    }
}
