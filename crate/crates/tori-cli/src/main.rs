//! Command line front end over the torus classification library.

use std::collections::BTreeMap;
use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use tori_cli::error::CliError;
use tori_cli::job::{self, JobKind, JobSpec, OutputFormat, ParamValue};
use tori_cli::{render, svg};

#[derive(Parser)]
#[command(
    name = "tori-cli",
    version,
    about = "Classify tori of revolution, flat product tori and circle-bundle tori \
             by their conformal type; reduce, compare and plot moduli."
)]
struct Cli {
    /// Report format written to stdout: json, csv, or svg (the
    /// fundamental-domain plot itself).
    #[arg(long, global = true, value_enum, default_value = "json")]
    format: FormatArg,

    /// Also write an SVG plot of the reduced moduli to this path.
    #[arg(long, global = true, value_name = "path.svg")]
    plot: Option<PathBuf>,

    /// Tolerance used by equivalence certification.
    #[arg(long, global = true, value_name = "f", default_value_t = 1e-9)]
    tol: f64,

    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum FormatArg {
    Json,
    Csv,
    Svg,
}

impl From<FormatArg> for OutputFormat {
    fn from(format: FormatArg) -> Self {
        match format {
            FormatArg::Json => OutputFormat::Json,
            FormatArg::Csv => OutputFormat::Csv,
            FormatArg::Svg => OutputFormat::Svg,
        }
    }
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum SweepFamilyArg {
    /// Tori of revolution with minor radius 1, swept by aspect.
    Standard,
    /// Product metrics dtheta^2 + p dphi^2, swept by p.
    Product,
    /// Circle-bundle tori over latitude circles, swept by t.
    HopfCircle,
}

impl SweepFamilyArg {
    fn name(self) -> &'static str {
        match self {
            SweepFamilyArg::Standard => "standard",
            SweepFamilyArg::Product => "product",
            SweepFamilyArg::HopfCircle => "hopf-circle",
        }
    }
}

#[derive(Subcommand)]
enum Command {
    /// Classify a torus of revolution with radii R > r > 0.
    Standard {
        /// Distance from the rotation axis to the tube center.
        #[arg(long = "R", value_name = "f", allow_negative_numbers = true)]
        major: f64,
        /// Tube radius.
        #[arg(long = "r", value_name = "f", allow_negative_numbers = true)]
        minor: f64,
    },
    /// Classify the flat metric b dtheta^2 + a dphi^2 on the square torus.
    Product {
        /// Coefficient of dphi^2.
        #[arg(long, value_name = "f", allow_negative_numbers = true)]
        a: f64,
        /// Coefficient of dtheta^2.
        #[arg(long, value_name = "f", allow_negative_numbers = true)]
        b: f64,
    },
    /// Classify the circle-bundle torus over the latitude circle at
    /// height 2t^2 - 1.
    HopfCircle {
        /// Cap parameter in (0, 1).
        #[arg(long, value_name = "f", allow_negative_numbers = true)]
        t: f64,
        /// Number of polygon vertices sampling the circle.
        #[arg(long, value_name = "int", default_value_t = 16384)]
        n: usize,
    },
    /// Classify the circle-bundle torus over a closed curve read from
    /// a JSON file.
    HopfCurve {
        /// Curve file {"points": [[c1, cj, ck], ...]}; closure is
        /// implicit, so the first point is not repeated.
        #[arg(long, value_name = "path")]
        input: PathBuf,
    },
    /// Reduce a modulus into the fundamental domain and certify the
    /// reduction.
    Reduce {
        /// Real part.
        #[arg(long, value_name = "f", allow_negative_numbers = true)]
        re: f64,
        /// Imaginary part; must be positive.
        #[arg(long, value_name = "f", allow_negative_numbers = true)]
        im: f64,
    },
    /// Decide whether two moduli are equivalent and exhibit an integer
    /// witness.
    Equiv {
        /// First modulus as `re,im`.
        #[arg(long, value_name = "re,im", value_parser = parse_pair, allow_hyphen_values = true)]
        tau1: (f64, f64),
        /// Second modulus as `re,im`.
        #[arg(long, value_name = "re,im", value_parser = parse_pair, allow_hyphen_values = true)]
        tau2: (f64, f64),
    },
    /// Classify an evenly spaced parameter range of one family.
    Sweep {
        /// Swept family.
        #[arg(long, value_enum, value_name = "k")]
        kind: SweepFamilyArg,
        /// First parameter value.
        #[arg(long, value_name = "f", allow_negative_numbers = true)]
        from: f64,
        /// Last parameter value, included.
        #[arg(long, value_name = "f", allow_negative_numbers = true)]
        to: f64,
        /// Number of samples, at least 2.
        #[arg(long, value_name = "int")]
        steps: usize,
    },
}

fn parse_pair(text: &str) -> Result<(f64, f64), String> {
    let (re, im) = text
        .split_once(',')
        .ok_or_else(|| format!("expected `re,im`, got `{text}`"))?;
    let re = re
        .trim()
        .parse::<f64>()
        .map_err(|err| format!("real part `{re}`: {err}"))?;
    let im = im
        .trim()
        .parse::<f64>()
        .map_err(|err| format!("imaginary part `{im}`: {err}"))?;
    Ok((re, im))
}

fn put_number(parameters: &mut BTreeMap<String, ParamValue>, key: &str, value: f64) {
    parameters.insert(key.to_string(), ParamValue::Number(value));
}

fn lower(cli: &Cli) -> JobSpec {
    let mut parameters = BTreeMap::new();
    let kind = match &cli.command {
        Command::Standard { major, minor } => {
            put_number(&mut parameters, "R", *major);
            put_number(&mut parameters, "r", *minor);
            JobKind::Standard
        }
        Command::Product { a, b } => {
            put_number(&mut parameters, "a", *a);
            put_number(&mut parameters, "b", *b);
            JobKind::Product
        }
        Command::HopfCircle { t, n } => {
            put_number(&mut parameters, "t", *t);
            parameters.insert("n".to_string(), ParamValue::Count(*n));
            JobKind::HopfCircle
        }
        Command::HopfCurve { input } => {
            parameters.insert(
                "path".to_string(),
                ParamValue::Text(input.to_string_lossy().into_owned()),
            );
            JobKind::HopfCurve
        }
        Command::Reduce { re, im } => {
            put_number(&mut parameters, "re", *re);
            put_number(&mut parameters, "im", *im);
            JobKind::Reduce
        }
        Command::Equiv { tau1, tau2 } => {
            put_number(&mut parameters, "tau1_re", tau1.0);
            put_number(&mut parameters, "tau1_im", tau1.1);
            put_number(&mut parameters, "tau2_re", tau2.0);
            put_number(&mut parameters, "tau2_im", tau2.1);
            put_number(&mut parameters, "tol", cli.tol);
            JobKind::Equiv
        }
        Command::Sweep { kind, from, to, steps } => {
            parameters.insert("kind".to_string(), ParamValue::Text(kind.name().to_string()));
            put_number(&mut parameters, "from", *from);
            put_number(&mut parameters, "to", *to);
            parameters.insert("steps".to_string(), ParamValue::Count(*steps));
            JobKind::Sweep
        }
    };
    JobSpec { kind, parameters, output_format: cli.format.into() }
}

fn execute(cli: &Cli) -> Result<(), CliError> {
    let job_spec = lower(cli);
    let output = job::run(&job_spec)?;
    let rendered = render::render(&output, job_spec.output_format)?;
    std::io::stdout()
        .lock()
        .write_all(rendered.as_bytes())
        .map_err(|err| CliError::io(format!("cannot write report: {err}")))?;
    if let Some(path) = &cli.plot {
        svg::write_plot(&output.reduced_points(), path)?;
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match execute(&cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(err) => {
            eprintln!("{}", err.to_json());
            ExitCode::from(err.exit_code())
        }
    }
}
