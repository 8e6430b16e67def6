//! Batch command-line surface over the verification engine.  JSON lines by
//! default, aligned tables with --pretty; exit 0 when every executed check
//! passes, 1 on a verification failure, 2 on usage or input errors.

mod schema;

use clap::{Parser, Subcommand};
use hopfcat_core::hopf::{
    check_quasitriangular, drinfeld_double, dual_integrals, nichols, HopfAlgebra, QTStructure,
};
use hopfcat_core::metric::{enumerate_b, torsor_table};
use hopfcat_core::repcat::{double_context, CategoryInventory};
use hopfcat_core::special;
use hopfcat_core::verifier::{self, CheckStatus, Suite, VerificationReport, VerifyConfig};
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Instant;

#[derive(Parser)]
#[command(
    name = "hopfcat",
    version,
    about = "Exact verification engine for finite-dimensional quasitriangular Hopf algebras \
             and the braided categories they present"
)]
struct Cli {
    /// Human-readable tables instead of JSON lines.
    #[arg(long, global = true)]
    pretty: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Build the rank-n Nichols Hopf algebra with its canonical R-matrix.
    Nichols {
        #[arg(long)]
        n: usize,
        /// Write the full Hopf document to this path.
        #[arg(long)]
        export: Option<PathBuf>,
    },
    /// Build the Drinfeld double of the rank-n Nichols Hopf algebra.
    Double {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        export: Option<PathBuf>,
    },
    /// Simple-object inventory of the double's module category.
    Inventory {
        #[arg(long)]
        n: usize,
    },
    /// Verify the rank-2 braiding data: pairing conditions, the eight
    /// sextuplets, and their distinguishing invariants.
    Appendix,
    /// Verify the structure of the double's module category at rank n.
    Center {
        #[arg(long)]
        n: usize,
    },
    /// Enumerate the sixteen braided classes of dimension four with a
    /// transparent fermion.
    Bgroup,
    /// The sixteen translates of the rank-n center inventory.
    Torsor {
        #[arg(long)]
        n: usize,
    },
    /// Run verification suites and write a structured report.
    Verify {
        /// one of: all, hopf, appendix, center, bgroup, torsor
        #[arg(long, default_value = "all")]
        suite: String,
        #[arg(long, default_value_t = 2)]
        n_max: usize,
        /// Write the report JSON to this path.
        #[arg(long)]
        report: Option<PathBuf>,
    },
    /// Check the Hopf axioms (and R-matrix axioms when present) of a
    /// user-supplied algebra document.
    CheckHopf {
        #[arg(long)]
        input: PathBuf,
    },
}

enum CliError {
    /// Bad arguments or unreadable/invalid input: exit 2.
    Input(String),
    /// Checks executed and at least one failed: exit 1.
    Verification,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match dispatch(&cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(CliError::Verification) => ExitCode::from(1),
        Err(CliError::Input(msg)) => {
            eprintln!("error: {}", msg);
            ExitCode::from(2)
        }
    }
}

fn dispatch(cli: &Cli) -> Result<(), CliError> {
    match &cli.command {
        Command::Nichols { n, export } => cmd_nichols(*n, export.as_deref(), cli.pretty),
        Command::Double { n, export } => cmd_double(*n, export.as_deref(), cli.pretty),
        Command::Inventory { n } => cmd_inventory(*n, cli.pretty),
        Command::Appendix => cmd_appendix(cli.pretty),
        Command::Center { n } => cmd_center(*n, cli.pretty),
        Command::Bgroup => cmd_bgroup(cli.pretty),
        Command::Torsor { n } => cmd_torsor(*n, cli.pretty),
        Command::Verify { suite, n_max, report } => {
            cmd_verify(suite, *n_max, report.as_deref(), cli.pretty)
        }
        Command::CheckHopf { input } => cmd_check_hopf(input, cli.pretty),
    }
}

// ---------------------------------------------------------------------------
// Construction commands.

fn build_nichols(n: usize) -> Result<(HopfAlgebra, QTStructure), CliError> {
    if n > 6 {
        return Err(CliError::Input(format!(
            "rank {} out of range: the construction commands accept n <= 6",
            n
        )));
    }
    nichols(n).map_err(|e| CliError::Input(format!("construction failed: {e:?}")))
}

fn write_json<T: serde::Serialize>(path: &Path, value: &T) -> Result<(), CliError> {
    let text = serde_json::to_string(value)
        .map_err(|e| CliError::Input(format!("serialization failed: {}", e)))?;
    std::fs::write(path, text)
        .map_err(|e| CliError::Input(format!("cannot write {}: {}", path.display(), e)))
}

fn cmd_nichols(n: usize, export: Option<&Path>, pretty: bool) -> Result<(), CliError> {
    let (h, qt) = build_nichols(n)?;
    if let Some(path) = export {
        write_json(path, &schema::hopf_to_json(&h, Some(&qt)))?;
    }
    if pretty {
        println!("rank-{} Nichols Hopf algebra", n);
        println!("  dimension {}", h.alg.dim);
        println!("  basis     {}", h.alg.labels.join(" "));
        println!("  grouplikes {}", h.grouplikes.len());
    } else {
        println!(
            "{}",
            serde_json::json!({
                "schema": schema::SCHEMA_HOPF,
                "construction": "nichols",
                "n": n,
                "dim": h.alg.dim,
                "labels": h.alg.labels,
                "grouplikes": h.grouplikes.len(),
            })
        );
    }
    Ok(())
}

fn cmd_double(n: usize, export: Option<&Path>, pretty: bool) -> Result<(), CliError> {
    if n > 3 {
        return Err(CliError::Input(format!(
            "rank {} out of range: the double command accepts n <= 3",
            n
        )));
    }
    let (h, _) = build_nichols(n)?;
    let d = drinfeld_double(&h).map_err(|e| CliError::Input(format!("double failed: {e:?}")))?;
    if let Some(path) = export {
        write_json(path, &schema::hopf_to_json(&d.hopf, Some(&d.qt)))?;
    }
    if pretty {
        println!("double of the rank-{} Nichols Hopf algebra", n);
        println!("  dimension {}", d.hopf.alg.dim);
        println!("  unimodular {}", dual_integrals(&d.hopf).h_unimodular);
    } else {
        println!(
            "{}",
            serde_json::json!({
                "schema": schema::SCHEMA_HOPF,
                "construction": "double",
                "n": n,
                "dim": d.hopf.alg.dim,
            })
        );
    }
    Ok(())
}

fn live_inventory(n: usize) -> Result<CategoryInventory, CliError> {
    if n > 2 {
        return Err(CliError::Input(format!(
            "rank {} out of range: live module-category commands accept n <= 2",
            n
        )));
    }
    let (h, qt) = build_nichols(n)?;
    let d = drinfeld_double(&h).map_err(|e| CliError::Input(format!("double failed: {e:?}")))?;
    let ctx = double_context(&d, &h, &qt)
        .map_err(|e| CliError::Input(format!("module category failed: {e:?}")))?;
    let mut inv =
        ctx.inventory().map_err(|e| CliError::Input(format!("inventory failed: {e:?}")))?;
    inv.charge_offset = Some(0);
    Ok(inv)
}

fn print_inventory(inv: &CategoryInventory, pretty: bool) {
    let doc = schema::inventory_to_json(inv);
    if pretty {
        let charge = doc.charge.map(|c| c.to_string()).unwrap_or_else(|| "undefined".to_owned());
        println!(
            "{} {} charge {}",
            doc.shape,
            if doc.integral { "integral" } else { "non-integral" },
            charge
        );
        for s in &doc.simples {
            println!(
                "  {:<4} dim {:<8} {} dual {:<4} S-partner {:<4} class {} cover-dim {}",
                s.label,
                s.fpdim_display,
                if s.projective { "projective    " } else { "non-projective" },
                s.dual,
                s.s_tensor,
                s.grading_class,
                s.pim_fpdim_display,
            );
        }
    } else {
        println!("{}", serde_json::to_string(&doc).expect("inventory serializes"));
    }
}

fn cmd_inventory(n: usize, pretty: bool) -> Result<(), CliError> {
    let inv = live_inventory(n)?;
    print_inventory(&inv, pretty);
    Ok(())
}

// ---------------------------------------------------------------------------
// Verification commands.

fn print_entries(rep: &VerificationReport, pretty: bool) {
    if pretty {
        for e in &rep.entries {
            println!(
                "{:<4} {:<38} {}",
                schema::status_str(e.status).to_uppercase(),
                e.check_id,
                e.claim
            );
            if e.status == CheckStatus::Fail {
                println!("     witness: {}", e.witness);
            }
        }
        println!("overall: {}", if rep.overall { "pass" } else { "fail" });
    } else {
        let doc = schema::report_to_json(rep);
        for e in &doc.entries {
            println!("{}", serde_json::to_string(e).expect("entry serializes"));
        }
        println!(
            "{}",
            serde_json::json!({ "schema": schema::SCHEMA_REPORT, "overall": doc.overall })
        );
    }
}

fn run_report(cfg: &VerifyConfig) -> VerificationReport {
    let t0 = Instant::now();
    let mut clock = move || t0.elapsed().as_millis() as u64;
    verifier::run_all(cfg, &mut clock)
}

fn seed_from_env(default: u64) -> u64 {
    match std::env::var("HOPFCAT_SEED") {
        Ok(v) => v.parse().unwrap_or(default),
        Err(_) => default,
    }
}

fn cmd_appendix(pretty: bool) -> Result<(), CliError> {
    let cfg = VerifyConfig { suite: Suite::Appendix, ..Default::default() };
    let rep = run_report(&cfg);
    print_entries(&rep, pretty);

    // invariant table for the eight sextuplets
    let (h, _) = build_nichols(2)?;
    let pairs = special::distinguishing_invariants(&h);
    if pretty {
        println!("sextuplet invariants:");
        for (sx, (beta, chi)) in special::all_sextuplets().iter().zip(&pairs) {
            println!(
                "  sigma{} lambda{} beta{}: beta = {}, chi(sigma) = {}",
                if sx.sigma_plus { "+" } else { "-" },
                if sx.lambda_positive { "+" } else { "-" },
                if sx.beta_positive { "+" } else { "-" },
                beta,
                chi
            );
        }
    } else {
        for (sx, (beta, chi)) in special::all_sextuplets().iter().zip(&pairs) {
            println!(
                "{}",
                serde_json::json!({
                    "sigma_plus": sx.sigma_plus,
                    "lambda_positive": sx.lambda_positive,
                    "beta_positive": sx.beta_positive,
                    "beta": schema::encode_scalar(beta),
                    "chi_sigma": schema::encode_scalar(chi),
                })
            );
        }
    }
    if rep.overall {
        Ok(())
    } else {
        Err(CliError::Verification)
    }
}

fn cmd_center(n: usize, pretty: bool) -> Result<(), CliError> {
    if n > 2 {
        return Err(CliError::Input(format!(
            "rank {} out of range: the center command accepts n <= 2",
            n
        )));
    }
    let entries = verifier::verify_center(n);
    let overall = entries.iter().all(|e| e.status != CheckStatus::Fail);
    print_entries(&VerificationReport { entries, overall }, pretty);
    if overall {
        Ok(())
    } else {
        Err(CliError::Verification)
    }
}

fn cmd_bgroup(pretty: bool) -> Result<(), CliError> {
    let classes = enumerate_b();
    for class in &classes {
        let doc = schema::bclass_to_json(class);
        if pretty {
            let detail = match (&doc.factors, doc.nu) {
                (Some(f), _) => format!(
                    "pointed {:?} q = [{}]",
                    f,
                    doc.q.as_ref().map(|q| q.join(", ")).unwrap_or_default()
                ),
                (None, Some(nu)) => format!("ising nu = {}", nu),
                _ => "unknown".to_owned(),
            };
            println!("charge {:>2}: {}", doc.charge, detail);
        } else {
            println!("{}", serde_json::to_string(&doc).expect("class serializes"));
        }
    }
    let charges: Vec<u8> = classes.iter().map(|c| c.charge).collect();
    if charges == (0..16).collect::<Vec<u8>>() {
        Ok(())
    } else {
        Err(CliError::Verification)
    }
}

fn cmd_torsor(n: usize, pretty: bool) -> Result<(), CliError> {
    if n > 4 {
        return Err(CliError::Input(format!(
            "rank {} out of range: the torsor command accepts n <= 4",
            n
        )));
    }
    let table =
        torsor_table(n).map_err(|e| CliError::Input(format!("torsor table failed: {e:?}")))?;
    for inv in &table {
        if pretty {
            let doc = schema::inventory_to_json(inv);
            let charge =
                doc.charge.map(|c| c.to_string()).unwrap_or_else(|| "undefined".to_owned());
            println!(
                "{} {} charge {}",
                doc.shape,
                if doc.integral { "integral" } else { "non-integral" },
                charge
            );
        } else {
            print_inventory(inv, false);
        }
    }
    Ok(())
}

fn cmd_verify(
    suite: &str,
    n_max: usize,
    report_path: Option<&Path>,
    pretty: bool,
) -> Result<(), CliError> {
    let suite = Suite::parse(suite).ok_or_else(|| {
        CliError::Input(format!(
            "unknown suite {:?}: expected all, hopf, appendix, center, bgroup, or torsor",
            suite
        ))
    })?;
    if n_max > 2 {
        return Err(CliError::Input(format!(
            "n-max {} out of range: live suites accept n <= 2",
            n_max
        )));
    }
    let defaults = VerifyConfig::default();
    let cfg = VerifyConfig { suite, n_max, seed: seed_from_env(defaults.seed) };
    let rep = run_report(&cfg);
    print_entries(&rep, pretty);
    if let Some(path) = report_path {
        write_json(path, &schema::report_to_json(&rep))?;
    }
    if rep.overall {
        Ok(())
    } else {
        Err(CliError::Verification)
    }
}

fn cmd_check_hopf(input: &Path, pretty: bool) -> Result<(), CliError> {
    let text = std::fs::read_to_string(input)
        .map_err(|e| CliError::Input(format!("cannot read {}: {}", input.display(), e)))?;
    let doc: schema::HopfJson = serde_json::from_str(&text)
        .map_err(|e| CliError::Input(format!("invalid document: {}", e)))?;
    let (h, qt) = schema::hopf_from_json(&doc).map_err(CliError::Input)?;

    let axioms = h.check_hopf_axioms();
    let mut lines: Vec<(String, bool, String)> = vec![(
        "hopf axioms".to_owned(),
        axioms.all_pass(),
        format!("failures {:?}", axioms.failures()),
    )];
    if let Some(qt) = &qt {
        let rep = check_quasitriangular(&h, qt);
        lines.push((
            "r-matrix axioms".to_owned(),
            rep.quasitriangular(),
            format!("triangular {}", rep.triangular),
        ));
    }

    let mut all = true;
    for (name, ok, witness) in &lines {
        all &= ok;
        if pretty {
            println!("{:<4} {:<16} {}", if *ok { "PASS" } else { "FAIL" }, name, witness);
        } else {
            println!(
                "{}",
                serde_json::json!({
                    "check": name,
                    "status": if *ok { "pass" } else { "fail" },
                    "witness": witness,
                })
            );
        }
    }
    if all {
        Ok(())
    } else {
        Err(CliError::Verification)
    }
}
