use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::json;

use nsym::algebra::{Basis, BasisExpr, Composition, IntSeq, Permutation};
use nsym::diagram::{build_diagram, render, RenderFormat};
use nsym::expansions::{
    forgetful_to_h, immaculate_to_h, monomial_to_dual_immaculate, skew_immaculate_to_h, skew_prefix_decomposition,
    straighten_skew, SkewShape,
};
use nsym::ribbon::{h_to_ribbon, im2rib_class, immaculate_to_ribbon_direct, ribbon_product, ribbon_to_h};
use nsym::thc::{covering_from_permutation, enumerate_coverings, TunnelHookCovering};
use nsym::verify::{self, Suite};
use nsym::{Error, Options};

const UNPROVEN: &str = "UNPROVEN-CLASS";

const RENDER_HELP: &str = "\
ASCII diagrams list the top row first as `row | cells`, one column per cell:
  G  grey (the skew part nu)
  B  blue (mu_i - nu_i cells when mu_i > nu_i)
  R  red  (nu_i - mu_i cells otherwise)
  P  purple: the cell right of the grey block in a row with no blue or red
  .  empty
With a covering, cells covered by hook j show its label (1-9, then a-z)
and a legend lists start row, terminal cell, delta and sign per hook.";

#[derive(Parser)]
#[command(name = "nsym", version, about = "Expansions of immaculate functions via tunnel hook coverings")]
struct Cli {
    /// Output format.
    #[arg(long, global = true, value_enum, env = "NSYM_FORMAT", default_value = "text")]
    format: Format,

    /// Largest number of rows to enumerate (at most 12).
    #[arg(long, global = true, default_value_t = nsym::DEFAULT_MAX_K)]
    max_k: usize,

    /// Worker threads for covering enumeration.
    #[arg(long, global = true, default_value_t = 1)]
    jobs: usize,

    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
    Latex,
}

#[derive(Subcommand)]
enum Command {
    /// Expand an immaculate function, a monomial quasisymmetric function or a ribbon product.
    #[command(subcommand)]
    Expand(Expand),
    /// Change the basis of an expression.
    Convert {
        #[arg(long)]
        from: Basis,
        #[arg(long)]
        to: Basis,
        /// Expression such as "H(2,1) - 3*H(3)".
        #[arg(long, allow_hyphen_values = true)]
        expr: String,
    },
    /// Reduce a skew shape to one with a partition inside.
    Straighten(ShapeArgs),
    /// Split an immaculate function after its first rows.
    Decompose {
        #[command(flatten)]
        shape: ShapeArgs,
        /// Number of leading rows to split off.
        #[arg(long)]
        prefix: usize,
    },
    /// Enumerate or draw tunnel hook coverings.
    #[command(subcommand)]
    Thc(Thc),
    /// Run seeded verification sweeps.
    Verify {
        #[arg(long, default_value = "all")]
        suite: Suite,
        /// Size parameter of the sweep.
        #[arg(long, default_value_t = 6)]
        n: usize,
    },
}

#[derive(Args)]
struct ShapeArgs {
    /// Comma-separated integers, negatives allowed.
    #[arg(long, allow_hyphen_values = true)]
    shape: IntSeq,
    /// Inner shape for a skew function.
    #[arg(long, allow_hyphen_values = true)]
    skew: Option<IntSeq>,
}

impl ShapeArgs {
    fn skew_shape(&self) -> SkewShape {
        SkewShape::new(self.shape.clone(), self.skew.clone().unwrap_or_default())
    }
}

#[derive(Subcommand)]
enum Expand {
    /// Immaculate function in the H or R basis.
    Immaculate {
        #[command(flatten)]
        shape: ShapeArgs,
        #[arg(long, default_value = "H")]
        basis: Basis,
        /// Use the closed ribbon formula instead of converting from H.
        #[arg(long)]
        direct: bool,
        /// Allow the closed ribbon formula outside the class where it is proven.
        #[arg(long)]
        force: bool,
    },
    /// Monomial quasisymmetric function in the dual immaculate basis.
    Monomial {
        #[arg(long)]
        shape: Composition,
    },
    /// Product of two ribbons in the ribbon basis.
    RibbonProduct {
        #[arg(long)]
        left: Composition,
        #[arg(long)]
        right: Composition,
    },
}

#[derive(Subcommand)]
enum Thc {
    /// List every covering with its sign, delta sequence and terminal cells.
    List(ShapeArgs),
    /// Draw the diagram, optionally overlaid with one covering.
    #[command(after_help = RENDER_HELP)]
    Render {
        #[command(flatten)]
        shape: ShapeArgs,
        /// Covering given by a permutation in one-line notation.
        #[arg(long, conflicts_with = "covering")]
        sigma: Option<String>,
        /// Covering given by its position in `thc list`, starting at 0.
        #[arg(long)]
        covering: Option<usize>,
    },
}

enum Failure {
    Usage(String),
    Verification,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Usage(e.to_string())
    }
}

type Outcome = Result<String, Failure>;

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { ExitCode::from(1) } else { ExitCode::SUCCESS };
        }
    };
    match run(cli) {
        Ok(out) => {
            println!("{out}");
            ExitCode::SUCCESS
        }
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
        Err(Failure::Verification) => ExitCode::from(2),
    }
}

fn run(cli: Cli) -> Outcome {
    let opts = Options::with_max_k(cli.max_k)?.jobs(cli.jobs.max(1));
    let fmt = cli.format;
    match cli.command {
        Command::Expand(e) => expand(e, fmt, &opts),
        Command::Convert { from, to, expr } => {
            let x = BasisExpr::parse_text(&expr, from)?;
            if x.basis() != from {
                return Err(Failure::Usage(format!("expression is in {} but --from is {}", x.basis(), from)));
            }
            Ok(show(&convert(&x, to)?, fmt))
        }
        Command::Straighten(shape) => {
            let st = straighten_skew(&shape.skew_shape());
            Ok(match fmt {
                Format::Json => serde_json::to_string_pretty(&st).unwrap(),
                Format::Text => format!("{} {}", st.sign, st.shape),
                Format::Latex => format!(
                    "{}\\mathfrak{{S}}_{{{}/{}}}",
                    match st.sign {
                        1 => "",
                        -1 => "-",
                        _ => "0 \\cdot ",
                    },
                    st.shape.mu,
                    st.shape.nu
                ),
            })
        }
        Command::Decompose { shape, prefix } => {
            if shape.skew.is_some() {
                return Err(Failure::Usage("decompose takes a straight shape".into()));
            }
            let terms = skew_prefix_decomposition(&shape.shape, prefix, &opts)?;
            Ok(match fmt {
                Format::Json => serde_json::to_string_pretty(&terms).unwrap(),
                Format::Text => terms
                    .iter()
                    .map(|t| format!("{:+} H{} I{}", t.sign, t.prefix, t.shape))
                    .collect::<Vec<_>>()
                    .join("\n"),
                Format::Latex => terms
                    .iter()
                    .map(|t| {
                        format!(
                            "{} H_{{{}}} \\mathfrak{{S}}_{{{}/{}}}",
                            if t.sign < 0 { "-" } else { "+" },
                            t.prefix,
                            t.shape.mu,
                            t.shape.nu
                        )
                    })
                    .collect::<Vec<_>>()
                    .join(" "),
            })
        }
        Command::Thc(t) => thc(t, fmt, &opts),
        Command::Verify { suite, n } => {
            let reports = verify::run(suite, n, &opts)?;
            let ok = reports.iter().all(|r| r.pass);
            let out = match fmt {
                Format::Json => serde_json::to_string_pretty(&reports).unwrap(),
                _ => reports
                    .iter()
                    .map(|r| {
                        let mut line = format!("{} {} n={}", if r.pass { "PASS" } else { "FAIL" }, r.check, r.n);
                        if let Some(c) = &r.counterexample {
                            line.push_str(&format!(" counterexample={c}"));
                        }
                        line
                    })
                    .collect::<Vec<_>>()
                    .join("\n"),
            };
            if ok {
                Ok(out)
            } else {
                println!("{out}");
                Err(Failure::Verification)
            }
        }
    }
}

fn show(x: &BasisExpr, fmt: Format) -> String {
    match fmt {
        Format::Text => x.to_text(),
        Format::Json => serde_json::to_string_pretty(x).unwrap(),
        Format::Latex => x.to_latex(),
    }
}

fn show_tagged(x: &BasisExpr, fmt: Format) -> String {
    match fmt {
        Format::Text => format!("# {UNPROVEN}\n{}", x.to_text()),
        Format::Json => serde_json::to_string_pretty(&json!({ "warning": UNPROVEN, "expression": x })).unwrap(),
        Format::Latex => format!("% {UNPROVEN}\n{}", x.to_latex()),
    }
}

fn convert(x: &BasisExpr, to: Basis) -> Result<BasisExpr, Failure> {
    let h = match x.basis() {
        Basis::H => x.clone(),
        Basis::R => ribbon_to_h(x)?,
        b => return Err(Failure::Usage(format!("cannot convert from {b}"))),
    };
    Ok(match to {
        Basis::H => h,
        Basis::R => h_to_ribbon(&h)?,
        Basis::HSym => forgetful_to_h(&h)?,
        b => return Err(Failure::Usage(format!("cannot convert to {b}"))),
    })
}

fn expand(e: Expand, fmt: Format, opts: &Options) -> Outcome {
    match e {
        Expand::Immaculate { shape, basis, direct, force } => {
            if !matches!(basis, Basis::H | Basis::R) {
                return Err(Failure::Usage(format!("immaculate functions expand in H or R, not {basis}")));
            }
            if direct {
                if basis != Basis::R || shape.skew.is_some() {
                    return Err(Failure::Usage("--direct needs --basis R and a straight shape".into()));
                }
                let alpha = Composition::from_ints(&shape.shape)?;
                let x = immaculate_to_ribbon_direct(&alpha, force, opts)?;
                return Ok(if im2rib_class(&alpha).is_some() { show(&x, fmt) } else { show_tagged(&x, fmt) });
            }
            if force {
                return Err(Failure::Usage("--force only applies with --direct".into()));
            }
            let h = match &shape.skew {
                None => immaculate_to_h(&shape.shape, opts)?,
                Some(_) => skew_immaculate_to_h(&shape.skew_shape(), opts)?,
            };
            Ok(show(&convert(&h, basis)?, fmt))
        }
        Expand::Monomial { shape } => Ok(show(&monomial_to_dual_immaculate(&shape, opts)?, fmt)),
        Expand::RibbonProduct { left, right } => Ok(show(&ribbon_product(&left, &right)?, fmt)),
    }
}

fn covering_line(i: usize, g: &TunnelHookCovering) -> String {
    let cells: Vec<String> = g.terminal_cells().iter().map(|c| format!("({},{})", c.row, c.col)).collect();
    let term = g.h_index().map_or_else(|| "0".to_string(), |c| format!("H{c}"));
    let sign = if g.total_sign < 0 { "-" } else { "+" };
    format!("{i}: {sign} delta={} terminals={} term={term}", g.delta_seq, cells.join(""))
}

fn thc(t: Thc, fmt: Format, opts: &Options) -> Outcome {
    match t {
        Thc::List(shape) => {
            let s = shape.skew_shape();
            let all: Vec<TunnelHookCovering> = enumerate_coverings(&s.mu, &s.nu, opts)?.collect();
            Ok(match fmt {
                Format::Json => serde_json::to_string_pretty(&all).unwrap(),
                Format::Text => all.iter().enumerate().map(|(i, g)| covering_line(i, g)).collect::<Vec<_>>().join("\n"),
                Format::Latex => {
                    let mut sum = BasisExpr::zero(Basis::H);
                    for g in &all {
                        if let Some(c) = g.h_index() {
                            sum.add_term(c, g.total_sign as i64);
                        }
                    }
                    sum.to_latex()
                }
            })
        }
        Thc::Render { shape, sigma, covering } => {
            let s = shape.skew_shape();
            let chosen = match (sigma, covering) {
                (Some(text), _) => {
                    if s.nu.iter().any(|&v| v != 0) {
                        return Err(Failure::Usage("--sigma needs a straight shape".into()));
                    }
                    let parts = text
                        .split(',')
                        .map(|p| p.trim().parse::<usize>())
                        .collect::<Result<Vec<_>, _>>()
                        .map_err(|_| Failure::Usage(format!("bad permutation {text:?}")))?;
                    Some(covering_from_permutation(&s.mu, &Permutation::new(parts)?)?)
                }
                (None, Some(n)) => {
                    let mut it = enumerate_coverings(&s.mu, &s.nu, opts)?;
                    Some(it.nth(n).ok_or_else(|| Failure::Usage(format!("no covering with index {n}")))?)
                }
                (None, None) => None,
            };
            let d = build_diagram(&s.mu, &s.nu, 0)?;
            let overlay = chosen.as_ref().map(|g| g.hooks.as_slice());
            Ok(match fmt {
                Format::Text => render(&d, overlay, RenderFormat::Ascii),
                Format::Latex => render(&d, overlay, RenderFormat::Latex),
                Format::Json => serde_json::to_string_pretty(&json!({
                    "mu": s.mu,
                    "nu": s.nu,
                    "covering": chosen,
                }))
                .unwrap(),
            })
        }
    }
}
