//! `cacime`: build handle decompositions, report invariants, run verified
//! move scripts and finite-quotient probes, and certify the CaCiMe surface.
//!
//! Exit codes: 0 success, 1 failed checks, 2 usage error, 3 invalid
//! input/params, 4 refused boundary request (no geometric linking data),
//! 5 invalid move mid-script, 6 resource limit exceeded.

mod file;
mod moves;
mod wordexpr;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use rand::prelude::*;
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};

use cacime_core::bundles::{e_prime_spec, e_spec, surface_generator_names};
use cacime_core::{
    build_bundle, build_cacime, characteristic_identities_check, count_homs, homology_model_check,
    multiplicativity_check, puncture_fiber, surface_presentation, tietze_apply, AbelianInvariants,
    ChernData, Error as CoreError, FiniteGroupTable, FramedLink, FreeEndomorphism, Presentation,
    TietzeMove, Word,
};

use file::{manifold_to_file, word_to_pairs, ManifoldFile, ProvenanceDto};
use moves::MoveScript;
use wordexpr::parse_word;

/// A failure with its process exit code.
#[derive(Debug)]
pub struct CliError {
    pub code: u8,
    pub message: String,
}

impl CliError {
    pub fn check_failure(message: impl Into<String>) -> Self {
        CliError {
            code: 1,
            message: message.into(),
        }
    }

    pub fn validation(message: impl Into<String>) -> Self {
        CliError {
            code: 3,
            message: message.into(),
        }
    }

    pub fn refusal(message: impl Into<String>) -> Self {
        CliError {
            code: 4,
            message: message.into(),
        }
    }

    pub fn invalid_move(step: usize, message: impl Into<String>) -> Self {
        CliError {
            code: 5,
            message: format!("step {step}: {}", message.into()),
        }
    }

    pub fn resource(message: impl Into<String>) -> Self {
        CliError {
            code: 6,
            message: message.into(),
        }
    }
}

impl From<CoreError> for CliError {
    fn from(e: CoreError) -> Self {
        match &e {
            CoreError::ResourceLimit { .. } => CliError::resource(e.to_string()),
            CoreError::AlgebraicOnly(_) => CliError::refusal(e.to_string()),
            _ => CliError::validation(e.to_string()),
        }
    }
}

#[derive(Parser)]
#[command(
    name = "cacime",
    about = "Exact handle-calculus engine for 4-manifolds",
    version
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Build a named space and write its manifold file.
    Build {
        #[arg(value_enum)]
        target: BuildTarget,
        /// Surface genus (only for the `surface` target).
        #[arg(long)]
        genus: Option<usize>,
        /// Fiber word twisting the gluing (only for `cacime`), e.g. "`[x1,y1]`".
        #[arg(long)]
        gluing_word: Option<String>,
        /// Output path; stdout when omitted.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Report invariants of a manifold file.
    Invariants {
        file: PathBuf,
        /// Signature to report for closed manifolds (e.g. from covering
        /// multiplicativity); without it sigma is reported unknown.
        #[arg(long)]
        sigma_hint: Option<i64>,
        /// Demand boundary H1; refuses (exit 4) if the file has no verified
        /// framed link.
        #[arg(long)]
        boundary: bool,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
    /// Apply a move script to a manifold file.
    Moves {
        file: PathBuf,
        script: PathBuf,
        /// Recompute each move's preserved invariants after every step and
        /// abort on the first violation.
        #[arg(long)]
        check: bool,
        /// Output path; stdout when omitted.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Count homomorphisms from the fundamental group into a finite group.
    Homs {
        file: PathBuf,
        #[arg(long, value_enum)]
        group: TargetGroup,
        /// Bound on the raw assignment space |G|^generators.
        #[arg(long, default_value_t = 10_000_000)]
        cap: u64,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
    /// Build the CaCiMe surface and run the full certification pipeline.
    CheckCacime {
        /// Fiber word twisting the gluing, e.g. "`[x1,y1]`".
        #[arg(long)]
        gluing_word: Option<String>,
        /// Expected b2 (self-test knob; the certified value is 14).
        #[arg(long, default_value_t = 14)]
        expect_b2: i64,
        /// Additionally probe hom-count stability across this many random
        /// Tietze variants.
        #[arg(long, default_value_t = 0)]
        probe_variants: usize,
        /// Seed for the randomized probe.
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum BuildTarget {
    Surface,
    #[value(name = "sigma2xT2")]
    Sigma2xT2,
    #[value(name = "E")]
    E,
    #[value(name = "Eprime")]
    Eprime,
    #[value(name = "E0")]
    E0,
    Cacime,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum TargetGroup {
    Z2,
    Z3,
    S3,
}

impl TargetGroup {
    fn table(self) -> FiniteGroupTable {
        match self {
            TargetGroup::Z2 => FiniteGroupTable::cyclic(2),
            TargetGroup::Z3 => FiniteGroupTable::cyclic(3),
            TargetGroup::S3 => FiniteGroupTable::symmetric(3),
        }
    }

    fn display(self) -> &'static str {
        match self {
            TargetGroup::Z2 => "Z/2",
            TargetGroup::Z3 => "Z/3",
            TargetGroup::S3 => "S3",
        }
    }

    fn key(self) -> &'static str {
        match self {
            TargetGroup::Z2 => "z2",
            TargetGroup::Z3 => "z3",
            TargetGroup::S3 => "s3",
        }
    }
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {}", e.message);
            ExitCode::from(e.code)
        }
    }
}

fn run(command: Command) -> Result<(), CliError> {
    match command {
        Command::Build {
            target,
            genus,
            gluing_word,
            out,
        } => cmd_build(target, genus, gluing_word, out),
        Command::Invariants {
            file,
            sigma_hint,
            boundary,
            format,
        } => cmd_invariants(&file, sigma_hint, boundary, format),
        Command::Moves {
            file,
            script,
            check,
            out,
        } => cmd_moves(&file, &script, check, out),
        Command::Homs {
            file,
            group,
            cap,
            format,
        } => cmd_homs(&file, group, cap, format),
        Command::CheckCacime {
            gluing_word,
            expect_b2,
            probe_variants,
            seed,
            format,
        } => cmd_check_cacime(gluing_word, expect_b2, probe_variants, seed, format),
    }
}

fn read_file(path: &PathBuf) -> Result<String, CliError> {
    std::fs::read_to_string(path)
        .map_err(|e| CliError::validation(format!("{}: {e}", path.display())))
}

fn emit(out: Option<PathBuf>, text: &str) -> Result<(), CliError> {
    match out {
        Some(path) => std::fs::write(&path, text)
            .map_err(|e| CliError::validation(format!("{}: {e}", path.display()))),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

// ---------------------------------------------------------------------
// build
// ---------------------------------------------------------------------

fn cmd_build(
    target: BuildTarget,
    genus: Option<usize>,
    gluing_word: Option<String>,
    out: Option<PathBuf>,
) -> Result<(), CliError> {
    if genus.is_some() && target != BuildTarget::Surface {
        return Err(CliError::validation(
            "--genus only applies to the surface target",
        ));
    }
    if gluing_word.is_some() && target != BuildTarget::Cacime {
        return Err(CliError::validation(
            "--gluing-word only applies to the cacime target",
        ));
    }

    let file = match target {
        BuildTarget::Surface => {
            let genus = genus.unwrap_or(2);
            let surface = surface_presentation(genus)?;
            let handlebody = surface.handlebody();
            let link = surface.framed_link();
            manifold_to_file(
                ProvenanceDto {
                    builder: "surface".into(),
                    params: json!({ "genus": genus }),
                },
                &handlebody,
                Some(&link),
            )?
        }
        BuildTarget::Sigma2xT2 | BuildTarget::E => {
            let handlebody = build_bundle(&e_spec())?;
            let link = FramedLink::algebraic_companion(handlebody.presentation());
            let name = if target == BuildTarget::E {
                "E"
            } else {
                "sigma2xT2"
            };
            manifold_to_file(
                ProvenanceDto {
                    builder: name.into(),
                    params: json!({}),
                },
                &handlebody,
                Some(&link),
            )?
        }
        BuildTarget::Eprime => {
            let handlebody = build_bundle(&e_prime_spec())?;
            let link = FramedLink::algebraic_companion(handlebody.presentation());
            manifold_to_file(
                ProvenanceDto {
                    builder: "Eprime".into(),
                    params: json!({}),
                },
                &handlebody,
                Some(&link),
            )?
        }
        BuildTarget::E0 => {
            let handlebody = puncture_fiber(&build_bundle(&e_spec())?)?;
            let link = FramedLink::algebraic_companion(handlebody.presentation());
            manifold_to_file(
                ProvenanceDto {
                    builder: "E0".into(),
                    params: json!({}),
                },
                &handlebody,
                Some(&link),
            )?
        }
        BuildTarget::Cacime => {
            let fiber_names = surface_generator_names(2);
            let u = match &gluing_word {
                Some(expr) => parse_word(expr, &fiber_names)?,
                None => Word::identity(),
            };
            let handlebody = build_cacime(&FreeEndomorphism::identity(4), &u)?;
            let link = FramedLink::algebraic_companion(handlebody.presentation());
            manifold_to_file(
                ProvenanceDto {
                    builder: "cacime".into(),
                    params: json!({ "gluing_word": word_to_pairs(&u, &fiber_names) }),
                },
                &handlebody,
                Some(&link),
            )?
        }
    };
    emit(out, &file.to_json())
}

// ---------------------------------------------------------------------
// invariants
// ---------------------------------------------------------------------

fn invariants_json(inv: &AbelianInvariants) -> Result<Value, CliError> {
    let torsion = inv
        .torsion
        .iter()
        .map(|t| {
            i64::try_from(t)
                .map(Value::from)
                .map_err(|_| CliError::validation(format!("torsion {t} exceeds 64 bits")))
        })
        .collect::<Result<Vec<_>, _>>()?;
    Ok(json!({ "free_rank": inv.free_rank, "torsion": torsion }))
}

fn cmd_invariants(
    path: &PathBuf,
    sigma_hint: Option<i64>,
    want_boundary: bool,
    format: Format,
) -> Result<(), CliError> {
    let file = ManifoldFile::parse(&read_file(path)?)?;
    let handlebody = file.handlebody()?;
    let link = file.framed_link()?;

    let chi = handlebody.euler_characteristic();
    let h1 = handlebody.h1_total();

    let boundary = match &link {
        Some(l) if !l.is_algebraic_only() => Ok(Some(l.h1_boundary()?)),
        Some(l) => {
            let refusal = l.h1_boundary().expect_err("algebraic-only link refuses");
            if want_boundary {
                Err(CliError::from(refusal))
            } else {
                Ok(None)
            }
        }
        None => {
            if want_boundary {
                Err(CliError::refusal(
                    "boundary H1 requested but the file carries no framed link",
                ))
            } else {
                Ok(None)
            }
        }
    }?;

    let closed_report = if handlebody.is_closed() {
        Some(handlebody.closed_invariants(sigma_hint)?)
    } else {
        None
    };

    match format {
        Format::Json => {
            let mut doc = json!({
                "chi": chi,
                "h1": invariants_json(&h1)?,
                "closed": handlebody.is_closed(),
                "b2": Value::Null,
                "sigma": Value::Null,
                "boundary_h1": Value::Null,
            });
            if let Some(report) = &closed_report {
                doc["b2"] = json!(report.b2);
                doc["sigma"] = match report.sigma {
                    Some(s) => json!(s),
                    None => Value::Null,
                };
            }
            if let Some(b) = &boundary {
                doc["boundary_h1"] = invariants_json(b)?;
            }
            println!("{}", serde_json::to_string_pretty(&doc).expect("report"));
        }
        Format::Text => {
            println!("chi = {chi}");
            println!("H1 = {h1}");
            if let Some(report) = &closed_report {
                println!("b2 = {}", report.b2);
                match report.sigma {
                    Some(s) => println!("sigma = {s}"),
                    None => println!("sigma = unknown (pass --sigma-hint to record one)"),
                }
            }
            match (&boundary, &link) {
                (Some(b), _) => println!("boundary H1 = {b}"),
                (None, Some(l)) if l.is_algebraic_only() => {
                    println!("boundary H1 unavailable: linking data consists of builder defaults");
                }
                _ => {}
            }
        }
    }
    Ok(())
}

// ---------------------------------------------------------------------
// moves
// ---------------------------------------------------------------------

fn cmd_moves(
    file_path: &PathBuf,
    script_path: &PathBuf,
    check: bool,
    out: Option<PathBuf>,
) -> Result<(), CliError> {
    let file = ManifoldFile::parse(&read_file(file_path)?)?;
    let script = MoveScript::parse(&read_file(script_path)?)?;
    let result = moves::run_script(&file, &script, check)?;
    emit(out, &result.to_json())
}

// ---------------------------------------------------------------------
// homs
// ---------------------------------------------------------------------

fn cmd_homs(path: &PathBuf, group: TargetGroup, cap: u64, format: Format) -> Result<(), CliError> {
    let file = ManifoldFile::parse(&read_file(path)?)?;
    let handlebody = file.handlebody()?;
    let table = group.table();
    let count = count_homs(handlebody.presentation(), &table, cap)?;
    match format {
        Format::Text => println!("|Hom(pi1, {})| = {count}", group.display()),
        Format::Json => println!(
            "{}",
            serde_json::to_string_pretty(&json!({
                "group": group.key(),
                "count": count,
                "cap": cap,
            }))
            .expect("report")
        ),
    }
    Ok(())
}

// ---------------------------------------------------------------------
// check-cacime
// ---------------------------------------------------------------------

struct Check {
    name: &'static str,
    pass: bool,
    detail: String,
}

fn cmd_check_cacime(
    gluing_word: Option<String>,
    expect_b2: i64,
    probe_variants: usize,
    seed: u64,
    format: Format,
) -> Result<(), CliError> {
    let fiber_names = surface_generator_names(2);
    let u = match &gluing_word {
        Some(expr) => parse_word(expr, &fiber_names)?,
        None => Word::identity(),
    };
    let m = build_cacime(&FreeEndomorphism::identity(4), &u)?;
    let mut checks: Vec<Check> = Vec::new();

    let h1 = m.h1_total();
    checks.push(Check {
        name: "H1 = Z^6 torsion-free",
        pass: h1.free_rank == 6 && h1.is_torsion_free(),
        detail: format!("H1 = {h1}"),
    });

    let chi = m.euler_characteristic();
    checks.push(Check {
        name: "chi = 4",
        pass: chi == 4,
        detail: format!("chi = {chi}"),
    });

    let mult = multiplicativity_check(8, 0, 2, 4, 0);
    checks.push(Check {
        name: "sigma via covering multiplicativity",
        pass: mult,
        detail: "(chi, sigma) = (8, 0) on the free double cover = 2 x (4, 0)".into(),
    });

    let report = m.closed_invariants(Some(0))?;
    checks.push(Check {
        name: "b2 matches expectation",
        pass: report.b2 == expect_b2,
        detail: format!("b2 = {}, expected {expect_b2}", report.b2),
    });

    let chern = ChernData {
        q: 3,
        p_g: 3,
        k2: 8,
        c2: 4,
        sigma: 0,
        b1: 6,
        b2: expect_b2,
    };
    checks.push(Check {
        name: "characteristic identities (Noether, 3sigma = K2 - 2c2, b1 = 2q)",
        pass: characteristic_identities_check(&chern),
        detail: format!("q = 3, p_g = 3, K2 = 8, c2 = 4, sigma = 0, b1 = 6, b2 = {expect_b2}"),
    });

    checks.push(Check {
        name: "homology model #7(S2xS2) # 6(S1xS3)",
        pass: homology_model_check(&report, 7, 6),
        detail: format!(
            "b1 = {}, b2 = {}, sigma = {}, torsion-free = {}",
            report.b1,
            report.b2,
            report
                .sigma
                .map_or_else(|| "unknown".to_string(), |s| s.to_string()),
            report.h1_torsion.is_empty()
        ),
    });

    let z2 = FiniteGroupTable::cyclic(2);
    let z2_count = count_homs(m.presentation(), &z2, 1 << 20)?;
    checks.push(Check {
        name: "pi1 probe |Hom(pi1, Z/2)| = 64",
        pass: z2_count == 64,
        detail: format!("count = {z2_count}"),
    });

    if probe_variants > 0 {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut stable = true;
        let mut detail = String::new();
        for k in 0..probe_variants {
            let variant = random_variant(m.presentation(), &mut rng);
            let count = count_homs(&variant, &z2, 1 << 20)?;
            if count != 64 {
                stable = false;
                detail = format!("variant {k} gave {count}");
                break;
            }
        }
        if stable {
            detail = format!("{probe_variants} variants, all 64");
        }
        checks.push(Check {
            name: "pi1 probe stable across Tietze variants",
            pass: stable,
            detail,
        });
    }

    let all_pass = checks.iter().all(|c| c.pass);
    match format {
        Format::Text => {
            for c in &checks {
                println!(
                    "{} - {}: {}",
                    if c.pass { "PASS" } else { "FAIL" },
                    c.name,
                    c.detail
                );
            }
            println!(
                "{}",
                if all_pass {
                    "certification: PASS"
                } else {
                    "certification: FAIL"
                }
            );
        }
        Format::Json => {
            let doc = json!({
                "pass": all_pass,
                "checks": checks
                    .iter()
                    .map(|c| json!({ "name": c.name, "pass": c.pass, "detail": c.detail }))
                    .collect::<Vec<_>>(),
            });
            println!("{}", serde_json::to_string_pretty(&doc).expect("report"));
        }
    }
    if all_pass {
        Ok(())
    } else {
        let failed: Vec<&str> = checks.iter().filter(|c| !c.pass).map(|c| c.name).collect();
        Err(CliError::check_failure(format!(
            "failed checks: {}",
            failed.join("; ")
        )))
    }
}

/// A short random sequence of restricted Tietze moves for the stability
/// probe.
fn random_variant(p: &Presentation, rng: &mut ChaCha8Rng) -> Presentation {
    let mut current = p.clone();
    for _ in 0..4 {
        let relators = current.relators().len();
        let gens = current.generator_count();
        let mv = match rng.random_range(0..4u8) {
            0 if relators >= 2 => {
                let target = rng.random_range(0..relators);
                let mut source = rng.random_range(0..relators - 1);
                if source >= target {
                    source += 1;
                }
                TietzeMove::MultiplyRelator {
                    target,
                    source,
                    invert_source: rng.random_bool(0.5),
                    conjugator: random_short_word(rng, gens),
                }
            }
            1 if relators >= 1 => TietzeMove::InvertRelator {
                target: rng.random_range(0..relators),
            },
            2 if relators >= 1 => TietzeMove::ConjugateRelator {
                target: rng.random_range(0..relators),
                conjugator: random_short_word(rng, gens),
            },
            _ => TietzeMove::AddGenerator {
                name: None,
                word: random_short_word(rng, gens),
            },
        };
        current = tietze_apply(&current, &mv).expect("generated move is valid");
    }
    current
}

fn random_short_word(rng: &mut ChaCha8Rng, rank: usize) -> Word {
    if rank == 0 {
        return Word::identity();
    }
    let pairs: Vec<(usize, i64)> = (0..rng.random_range(0..3usize))
        .map(|_| {
            (
                rng.random_range(0..rank),
                if rng.random_bool(0.5) { 1 } else { -1 },
            )
        })
        .collect();
    Word::from_pairs(&pairs).expect("nonzero exponents")
}
