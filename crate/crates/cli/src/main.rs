//! `nlq`: exact q-series, theta series and fiber-class potentials from the
//! command line. JSON by default, `--table` for aligned columns.

mod output;

use std::io::Write;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use nlq_core::lattice::{named_lattice, theta_series, weighted_theta};
use nlq_core::modforms::{delta, eisenstein, ramanujan_verify, IdentityCheck};
use nlq_core::pipeline::{self, GeometryInput, MIN_PREC};
use nlq_core::surfgeom::{self, SurfaceContext};
use nlq_core::{BigRational, Error, Lattice, RootSystem, Series};
use serde_json::json;

use output::{coeffs_json, object_table, series_table};

#[derive(Parser, Debug)]
#[command(name = "nlq", version, about = "Exact q-series, lattice theta series and genus-0 fiber potentials")]
struct Cli {
    /// Number of q-coefficients to compute.
    #[arg(long, global = true, env = "NLQ_PREC", default_value_t = pipeline::DEFAULT_PREC)]
    prec: usize,
    /// Render aligned columns instead of JSON.
    #[arg(long, global = true)]
    table: bool,
    /// Worker threads for lattice enumeration.
    #[arg(long, global = true)]
    threads: Option<usize>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug, Clone)]
struct Geometry {
    /// Genus of the base curve.
    #[arg(long)]
    g: i64,
    /// Degree of the line bundle L_M on the base curve.
    #[arg(long = "deg-lm", allow_negative_numbers = true)]
    deg_lm: i64,
    /// Number of blow-ups.
    #[arg(long)]
    b: usize,
    /// Self-intersection of the section class of the ruled surface.
    #[arg(long = "zeta-sq", default_value_t = 0, allow_negative_numbers = true)]
    zeta_sq: i64,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Eisenstein series E_k, k in {2, 4, 6, 8, 10}.
    Eisenstein {
        #[arg(long)]
        k: u32,
    },
    /// The discriminant form q prod (1 - q^n)^24.
    Delta,
    /// Theta series of a named lattice or a Gram matrix.
    Theta(LatticeArg),
    /// Coefficient n is 2n times the number of vectors of norm 2n.
    WeightedTheta(LatticeArg),
    /// Weighted projective weights (1, highest coroot coefficients) of a root system.
    WpWeights {
        /// Root system tag, e.g. E8xE8.
        #[arg(long)]
        lattice: String,
    },
    /// Basis of Weyl-invariant symmetric forms of a root system.
    InvariantForms {
        #[arg(long)]
        lattice: String,
    },
    /// Intersection data on the blown-up ruled surface.
    Surface(Geometry),
    /// Full pipeline report for one geometry.
    Potential(Geometry),
    /// Run every internal identity check.
    Verify {
        /// Raise the enumeration cap for the rank-16 theta checks.
        #[arg(long)]
        deep: bool,
    },
}

#[derive(Args, Debug, Clone)]
struct LatticeArg {
    /// Named lattice: U, E8, E8xE8, D16plus, A1, II_2_18.
    #[arg(long, conflicts_with = "gram", required_unless_present = "gram")]
    lattice: Option<String>,
    /// Gram matrix as a JSON array of integer rows.
    #[arg(long)]
    gram: Option<String>,
}

enum Failure {
    Usage(String),
    Verification(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::InternalInconsistency(_) | Error::NonIntegralCount(_) => Failure::Verification(e.to_string()),
            _ => Failure::Usage(e.to_string()),
        }
    }
}

type Outcome = std::result::Result<String, Failure>;

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(n) = cli.threads {
        if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(n).build_global() {
            eprintln!("error: {e}");
            return ExitCode::from(2);
        }
    }
    match run(&cli) {
        Ok(out) => {
            emit(&out);
            ExitCode::SUCCESS
        }
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(Failure::Verification(msg)) => {
            eprintln!("verification failed: {msg}");
            ExitCode::from(1)
        }
    }
}

/// Writes to stdout, ignoring a reader that went away early.
fn emit(text: &str) {
    let mut out = std::io::stdout().lock();
    let _ = writeln!(out, "{text}");
}

fn run(cli: &Cli) -> Outcome {
    match &cli.command {
        Command::Eisenstein { k } => series_out(cli, &format!("E{k}"), &eisenstein(*k, cli.prec)?),
        Command::Delta => series_out(cli, "Delta", &delta(cli.prec)?),
        Command::Theta(l) => series_out(cli, "theta", &theta_series(&load_lattice(l)?, cli.prec)?),
        Command::WeightedTheta(l) => series_out(cli, "weighted", &weighted_theta(&load_lattice(l)?, cli.prec)?),
        Command::WpWeights { lattice } => {
            let w = lattice.parse::<RootSystem>()?.wp_weights()?;
            if cli.table {
                let rows: Vec<Vec<String>> = w.iter().enumerate().map(|(i, x)| vec![i.to_string(), x.to_string()]).collect();
                Ok(output::table(&["i", "weight"], &rows))
            } else {
                Ok(json!(w).to_string())
            }
        }
        Command::InvariantForms { lattice } => invariant_forms(cli, lattice),
        Command::Surface(geo) => surface(cli, geo),
        Command::Potential(geo) => potential(cli, geo),
        Command::Verify { deep } => verify(cli, *deep),
    }
}

fn load_lattice(arg: &LatticeArg) -> std::result::Result<Lattice, Failure> {
    match (&arg.lattice, &arg.gram) {
        (Some(name), _) => Ok(named_lattice(name)?),
        (None, Some(g)) => {
            let rows: Vec<Vec<i64>> =
                serde_json::from_str(g).map_err(|e| Failure::Usage(format!("gram matrix: {e}")))?;
            Ok(Lattice::from_gram(rows)?)
        }
        (None, None) => Err(Failure::Usage("one of --lattice or --gram is required".into())),
    }
}

fn series_out(cli: &Cli, name: &str, s: &Series) -> Outcome {
    if cli.table {
        Ok(series_table(&[name], &[s.coeffs().iter().map(ToString::to_string).collect()]))
    } else {
        Ok(coeffs_json(s.coeffs()))
    }
}

fn strings(cs: &[BigRational]) -> Vec<String> {
    cs.iter().map(ToString::to_string).collect()
}

fn invariant_forms(cli: &Cli, tag: &str) -> Outcome {
    let basis = tag.parse::<RootSystem>()?.invariant_form_space();
    let forms: Vec<Vec<Vec<String>>> = basis.iter().map(|m| m.iter().map(|r| strings(r)).collect()).collect();
    if cli.table {
        let blocks: Vec<String> = forms
            .iter()
            .enumerate()
            .map(|(i, m)| format!("form {}\n{}", i + 1, m.iter().map(|r| r.join(" ")).collect::<Vec<_>>().join("\n")))
            .collect();
        Ok(format!("dimension {}\n{}", forms.len(), blocks.join("\n")))
    } else {
        Ok(json!({ "dimension": forms.len(), "basis": forms }).to_string())
    }
}

fn surface(cli: &Cli, geo: &Geometry) -> Outcome {
    let ctx = SurfaceContext::new(geo.g, geo.zeta_sq, geo.b);
    if geo.g < 0 {
        return Err(Failure::Usage(format!("genus {} is negative", geo.g)));
    }
    let k = surfgeom::canonical_class(ctx);
    let l = surfgeom::fundamental_class(ctx, geo.deg_lm);
    let nef = surfgeom::nef_degree_report(ctx, geo.deg_lm);
    let v = json!({
        "context": ctx,
        "canonical": { "m": k.m, "d": k.d, "exceptional": k.exceptional },
        "canonical_sq": k.self_intersection(),
        "fundamental": { "m": l.m, "d": l.d, "exceptional": l.exceptional },
        "fundamental_sq": l.self_intersection(),
        "vertical_nonnegative": nef.vertical_nonnegative(),
        "big": nef.big(),
        "negative_degrees": nef.negative,
        "a1_riemann_hurwitz": surfgeom::a1_riemann_hurwitz(ctx, geo.deg_lm),
        "a1_closed_form": pipeline::a1_closed_form(geo.g, geo.deg_lm, geo.b),
        "hodge_degree": pipeline::hodge_degree(geo.g, geo.deg_lm),
    });
    Ok(if cli.table { object_table(&v) } else { v.to_string() })
}

fn potential(cli: &Cli, geo: &Geometry) -> Outcome {
    let input = GeometryInput::new(geo.g, geo.deg_lm, geo.b, cli.prec)?;
    let report = pipeline::run(&input, geo.zeta_sq)?;
    let text = if cli.table {
        let head = json!({
            "hodge_degree": report.hodge_degree.to_string(),
            "a1": report.a1.to_string(),
            "a1_riemann_hurwitz": report.a1_riemann_hurwitz.to_string(),
            "c": report.c.to_string(),
            "phi": report.phi_poly.to_string(),
            "anomaly_ok": report.anomaly_ok,
            "oracle_ok": report.oracle_ok,
            "a1_ok": report.a1_ok,
        });
        let cols = [
            strings(report.phi_series.coeffs()),
            report.rx.iter().map(ToString::to_string).collect(),
            strings(report.potential.coeffs()),
            strings(report.oracle_potential.coeffs()),
        ];
        let mut t = format!("{}\n\n{}", object_table(&head), series_table(&["phi", "r_X", "F", "oracle"], &cols));
        for w in &report.warnings {
            t.push_str(&format!("\nwarning: {w}"));
        }
        t
    } else {
        serde_json::to_string_pretty(&report).map_err(|e| Failure::Usage(e.to_string()))?
    };
    if !report.all_ok() {
        emit(&text);
        let which = if !report.anomaly_ok {
            "holomorphic anomaly"
        } else if !report.oracle_ok {
            "degeneration oracle"
        } else {
            "a1 two-path agreement"
        };
        return Err(Failure::Verification(which.into()));
    }
    Ok(text)
}

fn check_series(name: &str, lhs: Result<Series, Error>, rhs: Result<Series, Error>) -> IdentityCheck {
    match (lhs, rhs) {
        (Ok(a), Ok(b)) => IdentityCheck::compare(name, &a, &b),
        _ => IdentityCheck { name: name.to_string(), passed: false, first_failure: None },
    }
}

fn flag(name: &str, passed: bool) -> IdentityCheck {
    IdentityCheck { name: name.to_string(), passed, first_failure: None }
}

fn verify(cli: &Cli, deep: bool) -> Outcome {
    let prec = cli.prec;
    if prec == 0 {
        return Err(Failure::Usage("precision must be positive".into()));
    }
    let mut checks: Vec<IdentityCheck> = match ramanujan_verify::<BigRational>(prec) {
        Ok(r) => r.checks,
        Err(e) => vec![flag(&format!("Ramanujan identities ({e})"), false)],
    };
    let e4 = eisenstein::<BigRational>(4, prec);
    let e6 = eisenstein::<BigRational>(6, prec);
    let product = |a: &Result<Series, Error>, b: &Result<Series, Error>| match (a, b) {
        (Ok(x), Ok(y)) => Ok(x * y),
        (Err(e), _) | (_, Err(e)) => Err(e.clone()),
    };
    checks.push(check_series("E8 = E4^2", eisenstein(8, prec), product(&e4, &e4)));
    checks.push(check_series("E10 = E4 E6", eisenstein(10, prec), product(&e4, &e6)));

    // norm caps: rank 8 to n <= 10 (15 deep), rank 16 to n <= 4 (5 deep)
    let e8_prec = prec.min(if deep { 16 } else { 11 });
    let rank16_prec = prec.min(if deep { 6 } else { 5 });
    checks.push(check_series(
        "theta(E8) = E4",
        theta_series(&named_lattice("E8")?, e8_prec),
        eisenstein(4, e8_prec),
    ));
    for tag in ["E8xE8", "D16plus"] {
        checks.push(check_series(
            &format!("theta({tag}) = E8"),
            theta_series(&named_lattice(tag)?, rank16_prec),
            eisenstein(8, rank16_prec),
        ));
    }

    let grid_prec = prec.max(MIN_PREC);
    let mut anomaly = true;
    let mut oracle = true;
    for g in [0, 1] {
        for d in [5, 10, 20] {
            for b in [0, 1, 4, 8] {
                let input = GeometryInput::new(g, d, b, grid_prec)?;
                match pipeline::run(&input, 0) {
                    Ok(r) => {
                        anomaly &= r.anomaly_ok;
                        oracle &= r.oracle_ok && r.a1_ok;
                    }
                    Err(_) => {
                        anomaly = false;
                        oracle = false;
                    }
                }
            }
        }
    }
    checks.push(flag("holomorphic anomaly on grid", anomaly));
    checks.push(flag("degeneration oracle on grid", oracle));

    let passed = checks.iter().all(|c| c.passed);
    let text = if cli.table {
        let rows: Vec<Vec<String>> = checks
            .iter()
            .map(|c| {
                let status = if c.passed { "ok".to_string() } else { "FAIL".to_string() };
                let at = c.first_failure.map(|n| format!("q^{n}")).unwrap_or_default();
                vec![c.name.clone(), status, at]
            })
            .collect();
        output::table(&["identity", "status", "first failure"], &rows)
    } else {
        json!({ "prec": prec, "passed": passed, "checks": checks }).to_string()
    };
    match checks.iter().find(|c| !c.passed) {
        None => Ok(text),
        Some(c) => {
            emit(&text);
            let at = c.first_failure.map(|n| format!(" at q^{n}")).unwrap_or_default();
            Err(Failure::Verification(format!("{}{at}", c.name)))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use clap::CommandFactory;

    #[test]
    fn cli_definition_is_consistent() {
        Cli::command().debug_assert();
    }

    #[test]
    fn errors_map_to_exit_classes() {
        assert!(matches!(Failure::from(Error::UnsupportedWeight(3)), Failure::Usage(_)));
        assert!(matches!(Failure::from(Error::InternalInconsistency("x".into())), Failure::Verification(_)));
    }
}
