//! `ctr`: completion-time regions from the command line.
//!
//! Exit codes: 0 success or PASS, 1 negative answer (not achievable, FAIL),
//! 2 input error, 3 regime or region mismatch.

mod output;
mod svg;

use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use ctr_core::channels::io::{Channel, ChannelFile, PolygonFile};
use ctr_core::channels::{etw_polygon, EtwKind, GicChannel, PolygonalRateRegion, Regime};
use ctr_core::{
    compare_regions, ct_achievable, gbc_ctr, gbc_min_weighted, nonconvexity_certificate, polygon_ctr,
    polygon_min_weighted, strong_ctr_closed_form, very_strong_ctr, CTRegion, CompletionTimePair, Error,
    LoadSpec, RegionTag, Side, SoloCaps,
};
use serde_json::json;

use output::{render_json, write_atomic};

#[derive(Parser)]
#[command(name = "ctr", version, about = "Completion-time regions for two-user Gaussian channels")]
struct Cli {
    /// Exchange the user labels of the channel, the load and any point.
    #[arg(long, global = true)]
    swap_users: bool,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Print the interference regime of a GIC channel file.
    Classify { channel: PathBuf },
    /// Build the completion-time region.
    Ctr {
        #[command(flatten)]
        common: Common,
        /// Polygon file replacing the built-in rate region (GIC only).
        #[arg(long)]
        region: Option<PathBuf>,
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long, value_enum, default_value_t = Format::Json)]
        format: Format,
        /// Boundary points to emit; corners only when omitted (polygons).
        #[arg(long)]
        samples: Option<usize>,
        /// Also draw the boundary to this SVG file.
        #[arg(long)]
        plot: Option<PathBuf>,
    },
    /// Minimize w·d1 + (1−w)·d2 over the region.
    Minimize {
        #[command(flatten)]
        common: Common,
        #[arg(long, allow_hyphen_values = true)]
        weight: f64,
        #[arg(long)]
        region: Option<PathBuf>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Is the completion-time pair achievable?
    Member {
        #[command(flatten)]
        common: Common,
        /// `d1,d2`.
        #[arg(long, allow_hyphen_values = true)]
        point: String,
        #[arg(long)]
        region: Option<PathBuf>,
    },
    /// Compare the constructed region against the brute-force oracle.
    Verify {
        #[command(flatten)]
        common: Common,
        #[arg(long)]
        region: Option<PathBuf>,
        #[arg(long, default_value_t = 200)]
        grid: usize,
        /// Check the literal strong-regime half-plane list instead.
        #[arg(long)]
        closed_form: bool,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Non-convexity certificate of a broadcast region.
    Convexity {
        #[command(flatten)]
        common: Common,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Args)]
struct Common {
    channel: PathBuf,
    /// `t1,t2`, both positive.
    #[arg(long, allow_hyphen_values = true)]
    load: String,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Csv,
}

/// A failure with its exit code.
#[derive(Debug)]
struct Fail {
    code: u8,
    msg: String,
}

impl Fail {
    fn input(msg: impl Into<String>) -> Self {
        Fail { code: 2, msg: msg.into() }
    }

    fn mismatch(msg: impl Into<String>) -> Self {
        Fail { code: 3, msg: msg.into() }
    }
}

impl From<Error> for Fail {
    fn from(e: Error) -> Self {
        match e {
            Error::WrongRegime { .. } | Error::RegionMismatch(_) => Fail::mismatch(e.to_string()),
            _ => Fail::input(e.to_string()),
        }
    }
}

type Res<T> = Result<T, Fail>;

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(f) => {
            eprintln!("error: {}", f.msg);
            ExitCode::from(f.code)
        }
    }
}

fn run(cli: Cli) -> Res<u8> {
    let swap = cli.swap_users;
    match cli.cmd {
        Cmd::Classify { channel } => match read_channel(&channel, swap)? {
            Channel::Gic(ch) => {
                println!("{}", ch.regime());
                Ok(0)
            }
            Channel::Gbc(_) => Err(Fail::mismatch("classify requires gic")),
        },
        Cmd::Ctr {
            common,
            region,
            out,
            format,
            samples,
            plot,
        } => {
            let (ch, load) = read_common(&common, swap)?;
            let built = build_region(&ch, &load, region.as_deref())?;
            let n = samples.unwrap_or(if built.ctr.sub1.arc_descriptor().is_some() { 200 } else { 0 });
            let trace = built.ctr.boundary(n);
            let text = match format {
                Format::Csv => trace.to_csv(),
                Format::Json => {
                    let mut v = built.ctr.to_json_value();
                    v["regime"] = json!(built.regime);
                    v["boundary"] = serde_json::to_value(&trace).expect("plain data");
                    render_json(&v)
                }
            };
            emit(out.as_deref(), &text)?;
            if let Some(p) = plot {
                write_atomic(&p, &svg::render(&trace))?;
            }
            Ok(0)
        }
        Cmd::Minimize {
            common,
            weight,
            region,
            out,
        } => {
            let (ch, load) = read_common(&common, swap)?;
            if !(0.0..=1.0).contains(&weight) {
                return Err(Fail::input("weight out of [0,1]"));
            }
            let result = match (&ch, region) {
                (Channel::Gbc(g), None) => gbc_min_weighted(g, &load, weight)?.best,
                (Channel::Gbc(_), Some(_)) => return Err(Fail::mismatch("--region applies to gic channels only")),
                (Channel::Gic(g), region) => {
                    let (poly, _) = gic_polygon(g, region.as_deref())?;
                    let caps = g.caps();
                    check_caps(&poly, &caps)?;
                    let s1 = polygon_min_weighted(&poly, &caps, &load, weight, Side::One)?;
                    let s2 = polygon_min_weighted(&poly, &caps, &load, weight, Side::Two)?;
                    if s2.objective < s1.objective {
                        s2
                    } else {
                        s1
                    }
                }
            };
            let v = serde_json::to_value(result).expect("plain data");
            emit(out.as_deref(), &render_json(&v))?;
            Ok(0)
        }
        Cmd::Member { common, point, region } => {
            let (ch, load) = read_common(&common, swap)?;
            let [d1, d2] = parse_pair(&point, "point")?;
            let d = CompletionTimePair::new(d1, d2).map_err(|e| Fail::input(e.to_string()))?;
            let d = if swap { CompletionTimePair { d1: d.d2, d2: d.d1 } } else { d };
            let yes = match (&ch, region) {
                (Channel::Gbc(g), None) => ct_achievable(g, &g.caps(), &load, d),
                (Channel::Gbc(_), Some(_)) => return Err(Fail::mismatch("--region applies to gic channels only")),
                (Channel::Gic(g), region) => {
                    let (poly, _) = gic_polygon(g, region.as_deref())?;
                    check_caps(&poly, &g.caps())?;
                    ct_achievable(&poly, &g.caps(), &load, d)
                }
            };
            println!("{}", if yes { "achievable" } else { "not-achievable" });
            Ok(if yes { 0 } else { 1 })
        }
        Cmd::Verify {
            common,
            region,
            grid,
            closed_form,
            out,
        } => {
            let (ch, load) = read_common(&common, swap)?;
            if grid < 10 {
                return Err(Fail::input("--grid must be at least 10"));
            }
            let (subject, report) = if closed_form {
                let Channel::Gic(g) = ch else {
                    return Err(Fail::mismatch("--closed-form requires a strong gic channel"));
                };
                if region.is_some() {
                    return Err(Fail::input("--closed-form uses the built-in pentagon; drop --region"));
                }
                let cf = strong_ctr_closed_form(&g, &load)?;
                let poly = g.strong_ic_polygon()?;
                let r = compare_regions(&cf, &poly, &g.caps(), &load, grid)?;
                (format!("strong closed form, case {}", cf.case), r)
            } else {
                let built = build_region(&ch, &load, region.as_deref())?;
                let r = match (&ch, &built.poly) {
                    (Channel::Gbc(g), _) => compare_regions(&built.ctr, g, &g.caps(), &load, grid)?,
                    (Channel::Gic(g), Some(poly)) => compare_regions(&built.ctr, poly, &g.caps(), &load, grid)?,
                    (Channel::Gic(_), None) => unreachable!("gic regions are polygon based"),
                };
                (built.label, r)
            };
            let mut v = serde_json::to_value(&report).expect("plain data");
            v["subject"] = json!(subject);
            emit(out.as_deref(), &render_json(&v))?;
            Ok(if report.pass { 0 } else { 1 })
        }
        Cmd::Convexity { common, out } => {
            let (ch, load) = read_common(&common, swap)?;
            let Channel::Gbc(g) = ch else {
                return Err(Fail::mismatch("convexity requires gbc"));
            };
            let cert = nonconvexity_certificate(&g, &load);
            let mut v = serde_json::to_value(cert).expect("plain data");
            v["s1_unbounded"] = json!(cert.s1.is_none());
            v["s2_unbounded"] = json!(cert.s2.is_none());
            emit(out.as_deref(), &render_json(&v))?;
            Ok(0)
        }
    }
}

fn emit(out: Option<&Path>, text: &str) -> Res<()> {
    match out {
        Some(p) => write_atomic(p, text),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn read_file(path: &Path) -> Res<String> {
    std::fs::read_to_string(path).map_err(|e| Fail::input(format!("{}: {e}", path.display())))
}

fn read_channel(path: &Path, swap: bool) -> Res<Channel> {
    let file = ChannelFile::parse(&read_file(path)?).map_err(|e| Fail::input(format!("{}: {e}", path.display())))?;
    file.build(swap).map_err(|e| Fail::input(format!("{}: {e}", path.display())))
}

fn read_common(c: &Common, swap: bool) -> Res<(Channel, LoadSpec)> {
    let ch = read_channel(&c.channel, swap)?;
    let [t1, t2] = parse_pair(&c.load, "load")?;
    let load = LoadSpec::new(t1, t2).map_err(|e| Fail::input(e.to_string()))?;
    Ok((ch, if swap { load.swapped() } else { load }))
}

fn parse_pair(s: &str, what: &str) -> Res<[f64; 2]> {
    let parts: Vec<&str> = s.split(',').map(str::trim).collect();
    let bad = || Fail::input(format!("--{what} expects two comma-separated numbers, got {s:?}"));
    if parts.len() != 2 {
        return Err(bad());
    }
    let a: f64 = parts[0].parse().map_err(|_| bad())?;
    let b: f64 = parts[1].parse().map_err(|_| bad())?;
    if !(a.is_finite() && b.is_finite() && a > 0.0 && b > 0.0) {
        return Err(Fail::input(format!("--{what} values must be positive, got {s:?}")));
    }
    Ok([a, b])
}

fn check_caps(poly: &PolygonalRateRegion, caps: &SoloCaps) -> Res<()> {
    if caps.cap1 < poly.max_r1() - 1e-12 || caps.cap2 < poly.max_r2() - 1e-12 {
        return Err(Fail::mismatch(format!(
            "polygon reaches ({}, {}) beyond the single-user rates ({}, {})",
            poly.max_r1(),
            poly.max_r2(),
            caps.cap1,
            caps.cap2
        )));
    }
    Ok(())
}

/// The rate polygon for a GIC: the file if given, otherwise the regime's own.
fn gic_polygon(ch: &GicChannel, region: Option<&Path>) -> Res<(PolygonalRateRegion, RegionTag)> {
    if let Some(p) = region {
        let file = PolygonFile::parse(&read_file(p)?).map_err(|e| Fail::input(format!("{}: {e}", p.display())))?;
        let poly = file.build().map_err(|e| Fail::input(format!("{}: {e}", p.display())))?;
        return Ok((poly, RegionTag::Achievable));
    }
    match ch.regime() {
        Regime::VeryStrong => Ok((ch.very_strong_rectangle()?, RegionTag::Exact)),
        Regime::Strong => Ok((ch.strong_ic_polygon()?, RegionTag::Exact)),
        Regime::Weak | Regime::Mixed => etw_polygon(ch, EtwKind::Achievable)
            .map(|p| (p, RegionTag::Achievable))
            .map_err(|e| Fail::mismatch(format!("built-in ETW region unusable for this channel ({e}); pass --region"))),
    }
}

struct Built {
    ctr: CTRegion,
    poly: Option<PolygonalRateRegion>,
    regime: String,
    label: String,
}

fn build_region(ch: &Channel, load: &LoadSpec, region: Option<&Path>) -> Res<Built> {
    match ch {
        Channel::Gbc(g) => {
            if region.is_some() {
                return Err(Fail::mismatch("--region applies to gic channels only"));
            }
            Ok(Built {
                ctr: gbc_ctr(g, load),
                poly: None,
                regime: "broadcast".into(),
                label: "broadcast region".into(),
            })
        }
        Channel::Gic(g) => {
            let (poly, tag) = gic_polygon(g, region)?;
            let ctr = if region.is_none() && g.regime() == Regime::VeryStrong {
                very_strong_ctr(g, load)?
            } else {
                polygon_ctr(&poly, &g.caps(), load, tag)?
            };
            let label = match (region, g.regime()) {
                (Some(_), _) => "polygon region from file".to_string(),
                (None, Regime::Weak | Regime::Mixed) => "ETW inner region".to_string(),
                (None, r) => format!("{r} region"),
            };
            Ok(Built {
                ctr,
                poly: Some(poly),
                regime: g.regime().to_string(),
                label,
            })
        }
    }
}
