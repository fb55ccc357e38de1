use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use serde::Serialize;

use hypcyc::ball::CayleyBall;
use hypcyc::config::RunConfig;
use hypcyc::homology::{
    burghelea_check, gamma_tors_report, group_homology_rips, per_class_homology, torsion_classes, BettiTable, Theory,
};
use hypcyc::norms::constants_csv;
use hypcyc::report::to_json;
use hypcyc::scans::scan_all;
use hypcyc::tree::tree_roundtrip;
use hypcyc::verify::run_suites;
use hypcyc::{Error, Result};

#[derive(Parser)]
#[command(name = "hypcyc", version, about = "Exact truncated cyclic homology of hyperbolic group algebras")]
struct Cli {
    #[command(subcommand)]
    command: Command,
    /// TOML run configuration; a free group of rank 2 is used without one.
    #[arg(long, global = true)]
    config: Option<PathBuf>,
    /// Output directory, overriding the config.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    /// Sampling seed, overriding the config.
    #[arg(long, global = true)]
    seed: Option<u64>,
    /// Worker threads; results do not depend on it.
    #[arg(long, global = true)]
    threads: Option<usize>,
}

#[derive(Subcommand)]
enum Command {
    /// Run the configured check suites.
    Verify,
    /// Betti tables, the centralizer comparison and the torsion report.
    Homology,
    /// Empirical operator-bound constants.
    ScanConstants,
    /// Approximating tree of the configured subset.
    TreeDemo,
}

const DEFAULT_CONFIG: &str = "classes = [\"b\", \"ab\"]\n[model]\nkind = \"free_group\"\nrank = 2\n";

#[derive(Serialize)]
struct Envelope<'a, T: Serialize> {
    command: &'a str,
    model: String,
    config: &'a RunConfig,
    result: T,
}

fn write(dir: &Path, name: &str, text: &str) -> Result<()> {
    std::fs::create_dir_all(dir)?;
    std::fs::write(dir.join(name), text)?;
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let cfg = match &cli.config {
        Some(p) => RunConfig::load(p),
        None => RunConfig::parse(DEFAULT_CONFIG),
    };
    let mut cfg = match cfg {
        Ok(c) => c,
        Err(e) => {
            eprintln!("hypcyc: {e}");
            return ExitCode::from(2);
        }
    };
    if let Some(s) = cli.seed {
        cfg.seed = s;
    }
    if let Some(o) = &cli.out {
        cfg.out = o.display().to_string();
    }
    if let Some(n) = cli.threads {
        if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(n.max(1)).build_global() {
            eprintln!("hypcyc: {e}");
            return ExitCode::from(2);
        }
    }
    let run = match cli.command {
        Command::Verify => verify(&cfg),
        Command::Homology => homology(&cfg),
        Command::ScanConstants => scan_constants(&cfg),
        Command::TreeDemo => tree_demo(&cfg),
    };
    match run {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e @ (Error::ResourceLimit(_) | Error::BoundaryTruncation(_) | Error::MarginExhausted(_))) => {
            eprintln!("hypcyc: truncation limit reached: {e}");
            let note = serde_json::json!({ "error": e.to_string(), "truncated": true });
            let _ = write(Path::new(&cfg.out), "error.json", &format!("{note:#}\n"));
            ExitCode::from(3)
        }
        Err(e) => {
            eprintln!("hypcyc: {e}");
            ExitCode::from(1)
        }
    }
}

fn verify(cfg: &RunConfig) -> Result<bool> {
    let model = cfg.model()?;
    let suites = run_suites(&model, &cfg.suites, &cfg.verify_plan()?)?;
    let ok = suites.iter().all(|s| s.passed());
    for s in &suites {
        for c in &s.checks {
            let mark = if c.passed { "ok  " } else { "FAIL" };
            println!("{mark} {}/{} ({} checked) {}", s.suite, c.name, c.checked, c.detail);
            for f in &c.failures {
                println!("       {f}");
            }
        }
    }
    let env = Envelope { command: "verify", model: model.name(), config: cfg, result: &suites };
    write(Path::new(&cfg.out), "verify.json", &to_json(&env)?)?;
    Ok(ok)
}

#[derive(Serialize)]
struct HomologyReport {
    group_homology: Vec<usize>,
    rips: u32,
    classes: BettiTable,
    burghelea: Vec<hypcyc::homology::BurgheleaRow>,
    gamma_tors: hypcyc::homology::GammaTorsReport,
    agree: bool,
}

fn homology(cfg: &RunConfig) -> Result<bool> {
    let model = cfg.model()?;
    let spec = cfg.truncation_spec();
    let group = group_homology_rips(&model, spec.rips, spec.degree_cap)?;
    let torsion = torsion_classes(&model)?;
    let infinite: Vec<_> = cfg.classes.iter().map(|w| model.parse(w)).collect::<Result<_>>()?;
    let mut table = BettiTable::default();
    for v in torsion.iter().chain(&infinite) {
        for theory in [Theory::HH, Theory::HC, Theory::HP] {
            table.rows.extend(per_class_homology(&model, v, theory, &spec)?);
        }
    }
    let burghelea = burghelea_check(&model, &torsion, &spec)?;
    let gamma_tors = gamma_tors_report(&model, &spec, &infinite)?;
    let agree = burghelea.iter().all(|r| r.agree) && gamma_tors.torsion.iter().all(|r| r.agree);
    println!("H_*(Γ; ℚ) = {group:?} (Rips {})", spec.rips);
    for r in &gamma_tors.torsion {
        println!("⟨{}⟩ left {:?} right {:?} stable {:?}", r.class, r.left, r.right, r.stable);
    }
    for h in &gamma_tors.hyperbolic {
        println!("⟨{}⟩ {}", h.class, h.status);
    }
    let out = Path::new(&cfg.out);
    write(out, "betti.csv", &table.to_csv()?)?;
    let report = HomologyReport { group_homology: group, rips: spec.rips, classes: table, burghelea, gamma_tors, agree };
    let env = Envelope { command: "homology", model: model.name(), config: cfg, result: report };
    write(out, "homology.json", &to_json(&env)?)?;
    Ok(agree)
}

fn scan_constants(cfg: &RunConfig) -> Result<bool> {
    let model = cfg.model()?;
    let constants = scan_all(&model, &cfg.scan_spec())?;
    let csv = constants_csv(&constants);
    print!("{csv}");
    let out = Path::new(&cfg.out);
    write(out, "constants.csv", &csv)?;
    let env = Envelope { command: "scan-constants", model: model.name(), config: cfg, result: &constants };
    write(out, "constants.json", &to_json(&env)?)?;
    Ok(constants.iter().all(|c| c.skipped == 0))
}

#[derive(Serialize)]
struct TreeSummary {
    subset: Vec<String>,
    hull: usize,
    tree_points: usize,
    #[serde(serialize_with = "hypcyc::report::ser_q")]
    constant: hypcyc::Q,
    truncated: bool,
}

fn tree_demo(cfg: &RunConfig) -> Result<bool> {
    let model = cfg.model()?;
    let f = cfg.tree.subset.iter().map(|w| model.parse(w)).collect::<Result<Vec<_>>>()?;
    let ball = CayleyBall::new(&model, cfg.ball_radius)?;
    let rt = tree_roundtrip(&model, &ball, &f, cfg.tree.lambda)?;
    let edges = rt.tree.metric_tree().to_edge_list();
    print!("{edges}");
    println!("constant {}", rt.constant);
    let summary = TreeSummary {
        subset: cfg.tree.subset.clone(),
        hull: rt.hull.len(),
        tree_points: rt.psi.len(),
        constant: rt.constant.clone(),
        truncated: rt.truncated,
    };
    let out = Path::new(&cfg.out);
    write(out, "tree.txt", &edges)?;
    let env = Envelope { command: "tree-demo", model: model.name(), config: cfg, result: summary };
    write(out, "tree.json", &to_json(&env)?)?;
    Ok(!rt.truncated)
}
