//! `sextic-lab`: exact computations for a one-parameter family of plane
//! sextic curves, reported as JSON.
//!
//! Exit codes: 0 on success, 1 when a computation or verification fails,
//! 2 on usage errors.

use std::collections::BTreeMap;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use serde_json::{json, Value};

use sextic_core::curves::{
    affine_model_images, family_at, is_cyclic_invariant, to_affine_chart,
    triangular_images_symbolic, vandermonde_images_symbolic,
};
use sextic_core::exact::{MultiPoly, PolyError, Rat};
use sextic_core::fpgrp::{
    abelianization, named_presentation, CosetTable, MulTable, DEFAULT_COSET_LIMIT,
};
use sextic_core::pencil::singular_fiber_census;
use sextic_core::singular::find_singular_points;

use sextic_lab::{checks, output};

#[derive(Parser)]
#[command(
    name = "sextic-lab",
    version,
    about = "Exact computations for a one-parameter family of plane sextic curves"
)]
struct Cli {
    /// Pretty-print JSON output.
    #[arg(long, global = true)]
    pretty: bool,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Print a family member as exact monomials (graded-lex, highest first).
    Family {
        /// Parameter value as an exact rational, e.g. `5/6` or `-3`.
        #[arg(long, allow_hyphen_values = true)]
        t: String,
        /// Apply a named coordinate change first: `paper-epi` (the linear
        /// change onto the affine-model coordinates X, Y, Z),
        /// `uv-vandermonde`, or `triangular`.
        #[arg(long)]
        change: Option<String>,
        /// Restrict to the affine chart where this variable equals 1.
        #[arg(long)]
        chart: Option<String>,
        /// Also check invariance under the cyclic variable shift; a failed
        /// check makes the exit code 1.
        #[arg(long)]
        check_symmetry: bool,
    },
    /// Census of the singular points of a family member.
    Singular {
        /// Parameter value as an exact rational.
        #[arg(long, allow_hyphen_values = true)]
        t: String,
    },
    /// Discriminant of the vertical-line pencil on the affine model of a
    /// family member, and the census of its singular fibers.
    Pencil {
        /// Family parameter to model.
        #[arg(long, default_value = "5/6", allow_hyphen_values = true)]
        t: String,
    },
    /// Coset enumeration and invariants of the built-in presentations.
    Group {
        #[command(subcommand)]
        action: GroupAction,
    },
    /// Run the verification checklist; one line per check, then a summary.
    Verify {
        /// Restrict to one module (family, census, pencil, group, qforms,
        /// property, control).
        #[arg(long)]
        only: Option<String>,
    },
}

#[derive(Subcommand)]
enum GroupAction {
    /// Enumerate cosets and report the group order.
    Order(GroupArgs),
    /// Order, center, derived subgroup, and the element-order histogram.
    Identify(GroupArgs),
    /// Invariant factors of the abelianization (0 marks a free factor).
    Abelianize(GroupArgs),
}

#[derive(Args)]
struct GroupArgs {
    /// One of: G, G-alt, d14c3, vankampen.
    #[arg(long)]
    presentation: String,
}

enum CmdError {
    /// Bad arguments or environment: exit code 2.
    Usage(String),
    /// A computation could not be completed or a check failed: exit code 1.
    Failure(String),
}

fn failure<E: std::fmt::Display>(e: E) -> CmdError {
    CmdError::Failure(e.to_string())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command, cli.pretty) {
        Ok(code) => code,
        Err(CmdError::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(CmdError::Failure(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
    }
}

fn run(command: Command, pretty: bool) -> Result<ExitCode, CmdError> {
    match command {
        Command::Family {
            t,
            change,
            chart,
            check_symmetry,
        } => {
            let (value, ok) =
                cmd_family(&t, change.as_deref(), chart.as_deref(), check_symmetry)?;
            println!("{}", output::render(&value, pretty));
            Ok(exit_ok(ok))
        }
        Command::Singular { t } => {
            let (value, ok) = cmd_singular(&t)?;
            println!("{}", output::render(&value, pretty));
            Ok(exit_ok(ok))
        }
        Command::Pencil { t } => {
            let value = cmd_pencil(&t)?;
            println!("{}", output::render(&value, pretty));
            Ok(ExitCode::SUCCESS)
        }
        Command::Group { action } => {
            let value = cmd_group(&action)?;
            println!("{}", output::render(&value, pretty));
            Ok(ExitCode::SUCCESS)
        }
        Command::Verify { only } => {
            let report = checks::run(only.as_deref()).map_err(CmdError::Usage)?;
            for outcome in &report.outcomes {
                println!("{}", outcome.line);
            }
            println!("{}", report.summary());
            Ok(exit_ok(report.failed() == 0))
        }
    }
}

fn exit_ok(ok: bool) -> ExitCode {
    if ok {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    }
}

fn parse_rat(text: &str) -> Result<Rat, CmdError> {
    text.trim()
        .parse::<Rat>()
        .map_err(|e| CmdError::Usage(format!("`{text}` is not a rational number: {e}")))
}

fn named_change(name: &str) -> Result<BTreeMap<String, MultiPoly<Rat>>, CmdError> {
    match name {
        "paper-epi" => Ok(affine_model_images()),
        "uv-vandermonde" => Ok(vandermonde_images_symbolic()),
        "triangular" => Ok(triangular_images_symbolic()),
        other => Err(CmdError::Usage(format!(
            "unknown change `{other}` (known: paper-epi, uv-vandermonde, triangular)"
        ))),
    }
}

/// Names for the two variables left after fixing `chart = 1`: the survivors,
/// lowercased (so the X, Y, Z model becomes the x, y plane).
fn chart_out_names(vars: &[String], chart: &str) -> Result<[String; 2], CmdError> {
    if !vars.iter().any(|v| v == chart) {
        return Err(CmdError::Usage(format!(
            "chart variable `{chart}` is not one of {vars:?}"
        )));
    }
    if vars.len() != 3 {
        return Err(CmdError::Usage(format!(
            "chart restriction needs exactly three variables, found {vars:?}"
        )));
    }
    let rest: Vec<String> = vars
        .iter()
        .filter(|v| v.as_str() != chart)
        .map(|v| v.to_lowercase())
        .collect();
    Ok([rest[0].clone(), rest[1].clone()])
}

fn cmd_family(
    t_text: &str,
    change: Option<&str>,
    chart: Option<&str>,
    check_symmetry: bool,
) -> Result<(Value, bool), CmdError> {
    let t = parse_rat(t_text)?;
    let member = family_at(&t);
    let symmetric = if check_symmetry {
        Some(is_cyclic_invariant(&member).map_err(failure)?)
    } else {
        None
    };

    let mut poly = member;
    if let Some(name) = change {
        let images = named_change(name)?;
        poly = poly.substitute(&images).map_err(|e| {
            CmdError::Usage(format!(
                "change `{name}` does not apply to variables {:?}: {e}",
                poly.vars()
            ))
        })?;
    }
    if let Some(var) = chart {
        let out = chart_out_names(poly.vars(), var)?;
        poly = to_affine_chart(&poly, var, [out[0].as_str(), out[1].as_str()])
            .map_err(failure)?;
    }

    let mut value = output::poly_to_json(&poly);
    let obj = value.as_object_mut().expect("object");
    obj.insert("t".into(), json!(t.to_string()));
    if let Some(name) = change {
        obj.insert("change".into(), json!(name));
    }
    if let Some(var) = chart {
        obj.insert("chart".into(), json!(var));
    }
    if let Some(sym) = symmetric {
        obj.insert("cyclic_invariant".into(), json!(sym));
    }
    Ok((value, symmetric.unwrap_or(true)))
}

fn cmd_singular(t_text: &str) -> Result<(Value, bool), CmdError> {
    let t = parse_rat(t_text)?;
    let census = find_singular_points(&family_at(&t)).map_err(failure)?;
    let ok = census.unresolved.is_empty();
    let mut value = output::census_to_json(&census);
    let obj = value.as_object_mut().expect("object");
    obj.insert("t".into(), json!(t.to_string()));
    obj.insert("status".into(), json!(if ok { "pass" } else { "fail" }));
    Ok((value, ok))
}

fn cmd_pencil(t_text: &str) -> Result<Value, CmdError> {
    let t = parse_rat(t_text)?;
    let member = family_at(&t);
    let moved = member
        .substitute(&affine_model_images())
        .map_err(failure)?;
    let affine = to_affine_chart(&moved, "Z", ["x", "y"]).map_err(failure)?;
    let census = singular_fiber_census(&affine).map_err(|e| match e {
        PolyError::ZeroPolynomial => CmdError::Failure(format!(
            "the pencil discriminant vanishes identically at t = {t}: \
             the member has a repeated component, so every fibre is singular"
        )),
        other => failure(other),
    })?;
    let mut value = output::pencil_to_json(&census);
    let obj = value.as_object_mut().expect("object");
    obj.insert("t".into(), json!(t.to_string()));
    Ok(value)
}

fn coset_limit() -> Result<usize, CmdError> {
    match std::env::var("SEXTIC_LAB_COSET_LIMIT") {
        Err(std::env::VarError::NotPresent) => Ok(DEFAULT_COSET_LIMIT),
        Err(e) => Err(CmdError::Usage(format!("SEXTIC_LAB_COSET_LIMIT: {e}"))),
        Ok(text) => text.trim().parse::<usize>().map_err(|e| {
            CmdError::Usage(format!(
                "SEXTIC_LAB_COSET_LIMIT `{text}` is not a coset count: {e}"
            ))
        }),
    }
}

fn cmd_group(action: &GroupAction) -> Result<Value, CmdError> {
    let args = match action {
        GroupAction::Order(a) | GroupAction::Identify(a) | GroupAction::Abelianize(a) => a,
    };
    let name = args.presentation.as_str();
    let pres = named_presentation(name).ok_or_else(|| {
        CmdError::Usage(format!(
            "unknown presentation `{name}` (known: G, G-alt, d14c3, vankampen)"
        ))
    })?;

    if let GroupAction::Abelianize(_) = action {
        let factors: Vec<String> = abelianization(&pres)
            .iter()
            .map(|d| d.to_string())
            .collect();
        return Ok(json!({
            "presentation": name,
            "invariant_factors": factors,
        }));
    }

    let limit = coset_limit()?;
    let table = CosetTable::enumerate(&pres, &[], limit);
    if !table.is_complete() {
        return Err(CmdError::Failure(format!(
            "coset enumeration overflowed after {} cosets (limit {limit}); \
             raise SEXTIC_LAB_COSET_LIMIT to retry",
            table.num_cosets()
        )));
    }
    let mul = MulTable::from_coset_table(&table).map_err(failure)?;
    match action {
        GroupAction::Order(_) => Ok(json!({
            "presentation": name,
            "status": table.status().to_string(),
            "order": mul.order(),
        })),
        GroupAction::Identify(_) => {
            let mut value = output::fingerprint_to_json(&mul.identify());
            let obj = value.as_object_mut().expect("object");
            obj.insert("presentation".into(), json!(name));
            obj.insert("status".into(), json!(table.status().to_string()));
            Ok(value)
        }
        GroupAction::Abelianize(_) => unreachable!("handled above"),
    }
}
