mod document;
mod plot;
mod report;

use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use serde_json::json;

use document::{load, CliError, CliResult, MapDocument, PairDocument, PolytopeDocument, WeightDocument};
use report::{Format, Report};
use toric_core::exactnum::{factorial, LogLinear, Place, Rational};
use toric_core::geom::{convex_hull, rational_point};
use toric_core::mixed::{common_floor, mixed_integral, mixed_integral_via_mv, mixed_volume, multiheight, EmbeddingFamily};
use toric_core::roof::Roof;
use toric_core::toric::{
    arithmetic_hilbert_norm, chow_weight, degree, hilbert_asymptotic_gap, hilbert_weight, join, monomial_image,
    normalized_height, orbit_decomposition, segre, veronese, DEFAULT_CAP,
};

#[derive(Parser)]
#[command(name = "toric-height", version, about = "Exact heights of projective toric varieties over Q")]
struct Cli {
    #[arg(long, value_enum, default_value_t = Format::Text, global = true)]
    format: Format,

    /// Bits of precision for decimal output.
    #[arg(long, default_value_t = 128, global = true)]
    bits: u32,

    /// Maximal number of monomials enumerated by Hilbert computations.
    #[arg(long, env = "TORIC_HEIGHT_CAP", default_value_t = DEFAULT_CAP, global = true)]
    cap: u64,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Normalized height of a pair document.
    Height { input: PathBuf },
    /// Degree of the toric variety of a pair document.
    Degree { input: PathBuf },
    /// Chow weight of a weight document.
    ChowWeight { input: PathBuf },
    /// Hilbert weight s_tau(D) of a weight document.
    Hilbert {
        input: PathBuf,
        #[arg(long)]
        degree: u64,
    },
    /// Arithmetic Hilbert function H_norm(D) of a pair document.
    Hnorm {
        input: PathBuf,
        #[arg(long)]
        degree: u64,
    },
    /// Mixed volume of a JSON array of n polytopes in R^n.
    MixedVolume { input: PathBuf },
    /// Mixed integral of a JSON array of n+1 weight documents.
    MixedIntegral {
        input: PathBuf,
        /// Compute through mixed volumes of lifted polytopes.
        #[arg(long)]
        via_mv: bool,
    },
    /// Multiheight of a JSON array of n+1 pair documents.
    Multiheight { input: PathBuf },
    /// Torus orbits of a pair document with their heights.
    Orbits { input: PathBuf },
    /// Build a new pair document.
    Compose {
        #[command(subcommand)]
        op: ComposeOp,
        /// Write the document here instead of standard output.
        #[arg(long, global = true)]
        out: Option<PathBuf>,
    },
    /// Draw the roof (curves) or the induced subdivision (surfaces) as SVG.
    Plot {
        input: PathBuf,
        #[arg(long, default_value = "inf")]
        place: String,
        #[arg(long)]
        out: PathBuf,
    },
}

#[derive(Subcommand)]
enum ComposeOp {
    Join { left: PathBuf, right: PathBuf },
    Segre { left: PathBuf, right: PathBuf },
    Veronese {
        input: PathBuf,
        #[arg(long)]
        degree: u64,
    },
    /// Monomial image under a map document `{"matrix": .., "coefficients": ..}`.
    Image {
        input: PathBuf,
        #[arg(long)]
        map: PathBuf,
    },
}

fn load_pair(path: &Path) -> CliResult<(toric_core::MonomialPair, Option<String>)> {
    let doc: PairDocument = load(path)?;
    Ok((doc.to_pair()?, doc.name))
}

fn name_field(report: Report, name: Option<String>) -> Report {
    match name {
        Some(n) => {
            let mut r = report;
            r.fields.insert(0, ("name", n.into()));
            r
        }
        None => report,
    }
}

fn run(cli: Cli) -> CliResult<String> {
    let (format, bits, cap) = (cli.format, cli.bits, cli.cap);
    let report = match cli.command {
        Command::Height { input } => {
            let (pair, name) = load_pair(&input)?;
            let h = normalized_height(&pair)?;
            let r = Report::new("height", h.value)
                .field("dimension", h.dim)
                .field("degree", h.degree.to_string())
                .field("scale", h.scale.to_string())
                .places(h.per_place);
            name_field(r, name)
        }
        Command::Degree { input } => {
            let (pair, name) = load_pair(&input)?;
            let d = degree(&pair);
            name_field(Report::new("degree", LogLinear::from_rational(Rational::from_integer(d))), name)
                .field("dimension", pair.dim())
        }
        Command::ChowWeight { input } => {
            let doc: WeightDocument = load(&input)?;
            let (a, tau) = doc.parse()?;
            name_field(Report::new("chow_weight", chow_weight(&a, &tau)?), doc.name)
        }
        Command::Hilbert { input, degree } => {
            let doc: WeightDocument = load(&input)?;
            let (a, tau) = doc.parse()?;
            name_field(Report::new("hilbert_weight", hilbert_weight(&a, &tau, degree, cap)?), doc.name)
                .field("degree", degree)
        }
        Command::Hnorm { input, degree: d } => {
            let (pair, name) = load_pair(&input)?;
            let value = arithmetic_hilbert_norm(&pair, d, cap)?;
            let gap = hilbert_asymptotic_gap(&pair, d, cap)?;
            let r = pair.dim() as u32;
            let normalized = value.scale(&(factorial(r as usize + 1) / Rational::from_integer(num_bigint::BigInt::from(d).pow(r + 1))));
            name_field(Report::new("hnorm", value), name)
                .field("degree", d)
                .field("normalized", normalized.to_string())
                .field("gap", gap.to_string())
        }
        Command::MixedVolume { input } => {
            let docs: Vec<PolytopeDocument> = load(&input)?;
            let mut polys = Vec::with_capacity(docs.len());
            for (i, d) in docs.iter().enumerate() {
                let pts = d.points(&format!("polytopes[{i}]"))?;
                polys.push(convex_hull(&pts.iter().map(|p| rational_point(p)).collect::<Vec<_>>())?);
            }
            Report::new("mixed_volume", mixed_volume(&polys)?)
        }
        Command::MixedIntegral { input, via_mv } => {
            let docs: Vec<WeightDocument> = load(&input)?;
            let mut roofs = Vec::with_capacity(docs.len());
            for d in &docs {
                let (a, tau) = d.parse()?;
                roofs.push(Roof::from_weight(&a, &tau)?);
            }
            let value = if via_mv {
                let floor = common_floor(&roofs);
                mixed_integral_via_mv(&roofs, &vec![floor; roofs.len()])?
            } else {
                mixed_integral(&roofs)?
            };
            Report::new("mixed_integral", value)
        }
        Command::Multiheight { input } => {
            let docs: Vec<PairDocument> = load(&input)?;
            let members = docs.iter().map(PairDocument::to_pair).collect::<CliResult<Vec<_>>>()?;
            let h = multiheight(&EmbeddingFamily::new(members)?)?;
            Report::new("multiheight", h.value)
                .field("dimension", h.dim)
                .field("degree", h.degree.to_string())
                .places(h.per_place)
        }
        Command::Orbits { input } => {
            let (pair, _) = load_pair(&input)?;
            return orbits(&pair, format, bits);
        }
        Command::Compose { op, out } => {
            let pair = match op {
                ComposeOp::Join { left, right } => join(&load_pair(&left)?.0, &load_pair(&right)?.0),
                ComposeOp::Segre { left, right } => segre(&load_pair(&left)?.0, &load_pair(&right)?.0),
                ComposeOp::Veronese { input, degree } => veronese(&load_pair(&input)?.0, degree, cap)?,
                ComposeOp::Image { input, map } => {
                    let m: MapDocument = load(&map)?;
                    let (b, beta) = m.parse()?;
                    monomial_image(&load_pair(&input)?.0, &b, &beta)?
                }
            };
            let text = serde_json::to_string_pretty(&PairDocument::from_pair(&pair, None)?).expect("serializable") + "\n";
            return match out {
                Some(path) => {
                    std::fs::write(&path, &text).map_err(|e| CliError::Io(format!("{}: {e}", path.display())))?;
                    Ok(String::new())
                }
                None => Ok(text),
            };
        }
        Command::Plot { input, place, out } => {
            let (pair, _) = load_pair(&input)?;
            let v: Place = place.parse()?;
            let svg = plot::render(&pair, v)?;
            std::fs::write(&out, svg).map_err(|e| CliError::Io(format!("{}: {e}", out.display())))?;
            return Ok(String::new());
        }
    };
    Ok(report.render(format, bits))
}

fn orbits(pair: &toric_core::MonomialPair, format: Format, bits: u32) -> CliResult<String> {
    let mut rows = Vec::new();
    for o in orbit_decomposition(pair)? {
        let h = normalized_height(&o.pair)?;
        let vertices: Vec<Vec<String>> = o.vertices.iter().map(|v| v.iter().map(|x| x.to_string()).collect()).collect();
        rows.push((o.face.dim, vertices, o.pair.len(), h.value, h.degree));
    }
    Ok(match format {
        Format::Json => {
            let arr: Vec<_> = rows
                .iter()
                .map(|(dim, vs, len, h, deg)| {
                    json!({
                        "dim": dim,
                        "vertices": vs,
                        "monomials": len,
                        "degree": deg.to_string(),
                        "height": h.to_json(),
                        "symbolic": h.to_string(),
                    })
                })
                .collect();
            serde_json::to_string_pretty(&arr).expect("serializable") + "\n"
        }
        Format::Symbolic | Format::Decimal | Format::Text => {
            let mut s = String::new();
            for (dim, vs, len, h, deg) in &rows {
                let verts: Vec<String> = vs.iter().map(|v| format!("({})", v.join(", "))).collect();
                let shown = match format {
                    Format::Decimal => toric_core::exactnum::approximate(h, bits).decimal,
                    _ => h.to_string(),
                };
                s.push_str(&format!("dim {dim}  vertices {}  monomials {len}  degree {deg}  height {shown}\n", verts.join(" ")));
            }
            s
        }
    })
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(out) => {
            print!("{out}");
            ExitCode::SUCCESS
        }
        Err(e) => {
            eprintln!("toric-height: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
