//! The `tdabm` command line.
//!
//! Option values resolve as: command-line flag, then `TDABM_*` environment
//! variable, then the optional `--config` file (`key = value` lines keyed by
//! long flag name), then the built-in default.

use std::collections::HashSet;
use std::ffi::OsString;
use std::fmt::Write as _;
use std::path::{Path, PathBuf};

use clap::{Args, CommandFactory, Parser, Subcommand, ValueEnum};
use rayon::prelude::*;
use tdabm_core::{
    build_cover_with, build_graph, color_graph, normalize, points_to_balls, spring_layout,
    Aggregate, Cover, CoverConfig, GraphSummary, LandmarkStrategy, MapperGraph, MembershipIndex,
    Metric, Normalization, Palette, PointCloud, SizeScale,
};

use crate::error::{Error, Result};
use crate::export::{to_csv_points_to_balls, to_dot, to_graphml, to_json};
use crate::fixture::{self, Formula};
use crate::ingest::{read_columns, table_to_csv, LoadOptions, NaPolicy};
use crate::io::{read_to_string, write_atomic};
use crate::render::{render_svg, RenderSpec};

#[derive(Debug, Parser)]
#[command(name = "tdabm", version, about = "Ball Mapper graphs of point clouds")]
pub struct Cli {
    /// Defaults file with `key = value` lines keyed by long flag name.
    #[arg(long, global = true, env = "TDABM_CONFIG", value_name = "PATH")]
    pub config: Option<PathBuf>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Cover a table with ε-balls, build, color and draw the graph.
    Build(BuildArgs),
    /// Recompute the coloring of a saved graph from a table column.
    Recolor(RecolorArgs),
    /// Build one graph per radius and tabulate ball and edge counts.
    Sweep(SweepArgs),
    /// Re-emit a saved graph in other formats.
    Export(ExportArgs),
    /// Write a synthetic dataset of independent uniform axes.
    Fixture(FixtureArgs),
}

#[derive(Debug, Clone, Copy, ValueEnum)]
pub enum StrategyArg {
    LowestIndex,
    Random,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
pub enum NormalizeArg {
    None,
    MinMax,
    ZScore,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
pub enum AggArg {
    Mean,
    Sd,
    Min,
    Max,
    Median,
    Count,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
pub enum NaPolicyArg {
    Error,
    DropRow,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
pub enum IndexArg {
    Brute,
    Grid,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
pub enum PaletteArg {
    Viridis,
    Jet,
    Greys,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
pub enum FormulaArg {
    Sum,
    None,
}

impl From<StrategyArg> for LandmarkStrategy {
    fn from(a: StrategyArg) -> Self {
        match a {
            StrategyArg::LowestIndex => LandmarkStrategy::LowestIndex,
            StrategyArg::Random => LandmarkStrategy::Random,
        }
    }
}

impl From<NormalizeArg> for Normalization {
    fn from(a: NormalizeArg) -> Self {
        match a {
            NormalizeArg::None => Normalization::None,
            NormalizeArg::MinMax => Normalization::MinMax,
            NormalizeArg::ZScore => Normalization::ZScore,
        }
    }
}

impl From<AggArg> for Aggregate {
    fn from(a: AggArg) -> Self {
        match a {
            AggArg::Mean => Aggregate::Mean,
            AggArg::Sd => Aggregate::Sd,
            AggArg::Min => Aggregate::Min,
            AggArg::Max => Aggregate::Max,
            AggArg::Median => Aggregate::Median,
            AggArg::Count => Aggregate::Count,
        }
    }
}

impl From<PaletteArg> for Palette {
    fn from(a: PaletteArg) -> Self {
        match a {
            PaletteArg::Viridis => Palette::Viridis,
            PaletteArg::Jet => Palette::Jet,
            PaletteArg::Greys => Palette::Greys,
        }
    }
}

fn positive_f64(s: &str) -> std::result::Result<f64, String> {
    match s.trim().parse::<f64>() {
        Ok(v) if v.is_finite() && v > 0.0 => Ok(v),
        Ok(v) => Err(format!("must be a positive finite number, got {v}")),
        Err(e) => Err(e.to_string()),
    }
}

fn size_range(s: &str) -> std::result::Result<SizeScale, String> {
    let (a, b) = s
        .split_once(',')
        .ok_or_else(|| "expected `min,max`".to_string())?;
    let lo = a.trim().parse::<f64>().map_err(|e| e.to_string())?;
    let hi = b.trim().parse::<f64>().map_err(|e| e.to_string())?;
    SizeScale::new(lo, hi).map_err(|e| e.to_string())
}

fn ascii_delimiter(s: &str) -> std::result::Result<u8, String> {
    match s.as_bytes() {
        [b] if b.is_ascii() => Ok(*b),
        _ => Err("delimiter must be a single ASCII character".into()),
    }
}

#[derive(Debug, Args)]
pub struct TableArgs {
    /// CSV file with a header row.
    #[arg(long, env = "TDABM_INPUT")]
    pub input: PathBuf,
    #[arg(long, env = "TDABM_DELIMITER", default_value = ",", value_parser = ascii_delimiter)]
    pub delimiter: u8,
    #[arg(long = "na-policy", env = "TDABM_NA_POLICY", value_enum, default_value = "error")]
    pub na_policy: NaPolicyArg,
}

impl TableArgs {
    fn options(&self) -> LoadOptions {
        LoadOptions {
            delimiter: self.delimiter,
            na_policy: match self.na_policy {
                NaPolicyArg::Error => NaPolicy::Error,
                NaPolicyArg::DropRow => NaPolicy::DropRow,
            },
        }
    }
}

#[derive(Debug, Args)]
pub struct DataArgs {
    #[command(flatten)]
    pub table: TableArgs,
    /// Comma-separated axis column names.
    #[arg(long, env = "TDABM_AXES", value_delimiter = ',', required = true)]
    pub axes: Vec<String>,
    #[arg(long, env = "TDABM_OUTCOME")]
    pub outcome: String,
    #[arg(long, env = "TDABM_NORMALIZE", value_enum, default_value = "none")]
    pub normalize: NormalizeArg,
}

#[derive(Debug, Args)]
pub struct CoverArgs {
    #[arg(long, env = "TDABM_STRATEGY", value_enum, default_value = "lowest-index")]
    pub strategy: StrategyArg,
    /// Seed for `--strategy random`.
    #[arg(long, env = "TDABM_SEED", default_value_t = 0)]
    pub seed: u64,
    /// Membership search; both give identical balls.
    #[arg(long, env = "TDABM_INDEX", value_enum, default_value = "brute")]
    pub index: IndexArg,
}

#[derive(Debug, Args)]
pub struct ColorArgs {
    #[arg(long, env = "TDABM_AGG", value_enum, default_value = "mean")]
    pub agg: AggArg,
    /// Column to color by; defaults to the outcome.
    #[arg(long = "color-by", env = "TDABM_COLOR_BY")]
    pub color_by: Option<String>,
    /// Drop edges whose intersection has fewer points.
    #[arg(long = "min-strength", env = "TDABM_MIN_STRENGTH", default_value_t = 1)]
    pub min_strength: usize,
}

#[derive(Debug, Args)]
pub struct RenderArgs {
    /// Draw ball numbers (default).
    #[arg(long, overrides_with = "no_labels")]
    pub labels: bool,
    #[arg(long = "no-labels", env = "TDABM_NO_LABELS", overrides_with = "labels")]
    pub no_labels: bool,
    /// List balls and their sizes in the image.
    #[arg(long, env = "TDABM_LEGEND")]
    pub legend: bool,
    /// Smallest and largest ball radius in pixels, `min,max`.
    #[arg(long = "size-range", env = "TDABM_SIZE_RANGE", default_value = "7,20", value_parser = size_range)]
    pub size_range: SizeScale,
    #[arg(long = "n-colors", env = "TDABM_N_COLORS", default_value_t = 100)]
    pub n_colors: usize,
    #[arg(long, env = "TDABM_PALETTE", value_enum, default_value = "viridis")]
    pub palette: PaletteArg,
    #[arg(long, env = "TDABM_WIDTH", default_value_t = 512)]
    pub width: u32,
    #[arg(long, env = "TDABM_HEIGHT", default_value_t = 512)]
    pub height: u32,
    #[arg(long = "layout-seed", env = "TDABM_LAYOUT_SEED", default_value_t = tdabm_core::DEFAULT_LAYOUT_SEED)]
    pub layout_seed: u64,
    #[arg(long, env = "TDABM_ITERATIONS", default_value_t = tdabm_core::DEFAULT_ITERATIONS)]
    pub iterations: usize,
}

impl RenderArgs {
    fn spec(&self) -> Result<RenderSpec> {
        let spec = RenderSpec {
            show_labels: !self.no_labels,
            show_legend: self.legend,
            n_colors: self.n_colors,
            width_px: self.width,
            height_px: self.height,
            palette: self.palette.into(),
            size: self.size_range,
        };
        spec.validate()?;
        Ok(spec)
    }
}

#[derive(Debug, Args)]
pub struct OutputArgs {
    #[arg(long = "out-svg", env = "TDABM_OUT_SVG")]
    pub out_svg: Option<PathBuf>,
    #[arg(long = "out-json", env = "TDABM_OUT_JSON")]
    pub out_json: Option<PathBuf>,
    #[arg(long = "out-dot", env = "TDABM_OUT_DOT")]
    pub out_dot: Option<PathBuf>,
    #[arg(long = "out-graphml", env = "TDABM_OUT_GRAPHML")]
    pub out_graphml: Option<PathBuf>,
    /// Points-to-balls CSV (`pt,ball`).
    #[arg(long = "out-p2b", env = "TDABM_OUT_P2B")]
    pub out_p2b: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct BuildArgs {
    #[command(flatten)]
    pub data: DataArgs,
    /// Ball radius, in the units of the (normalized) axes.
    #[arg(long, env = "TDABM_EPSILON", value_parser = positive_f64)]
    pub epsilon: f64,
    #[command(flatten)]
    pub cover: CoverArgs,
    #[command(flatten)]
    pub color: ColorArgs,
    #[command(flatten)]
    pub render: RenderArgs,
    #[command(flatten)]
    pub out: OutputArgs,
}

#[derive(Debug, Args)]
pub struct RecolorArgs {
    /// Graph JSON written by `build`.
    #[arg(long, env = "TDABM_GRAPH")]
    pub graph: PathBuf,
    #[command(flatten)]
    pub table: TableArgs,
    /// Column whose per-ball aggregate becomes the coloring.
    #[arg(long, alias = "color-by", env = "TDABM_COLUMN")]
    pub column: String,
    #[arg(long, env = "TDABM_AGG", value_enum, default_value = "mean")]
    pub agg: AggArg,
    /// Axis columns; when given, every ball is re-checked against the table.
    #[arg(long, env = "TDABM_AXES", value_delimiter = ',')]
    pub axes: Vec<String>,
    #[arg(long, env = "TDABM_NORMALIZE", value_enum, default_value = "none")]
    pub normalize: NormalizeArg,
    #[command(flatten)]
    pub render: RenderArgs,
    #[command(flatten)]
    pub out: OutputArgs,
}

#[derive(Debug, Args)]
pub struct SweepArgs {
    #[command(flatten)]
    pub data: DataArgs,
    /// Comma-separated radii.
    #[arg(long, env = "TDABM_RADII", value_delimiter = ',', required = true, value_parser = positive_f64)]
    pub radii: Vec<f64>,
    #[command(flatten)]
    pub cover: CoverArgs,
    #[command(flatten)]
    pub color: ColorArgs,
    #[command(flatten)]
    pub render: RenderArgs,
    /// Directory for `eps-<r>.json`, `eps-<r>.svg` and `summary.csv`.
    #[arg(long = "out-dir", env = "TDABM_OUT_DIR")]
    pub out_dir: PathBuf,
}

#[derive(Debug, Args)]
pub struct ExportArgs {
    #[arg(long, env = "TDABM_GRAPH")]
    pub graph: PathBuf,
    #[command(flatten)]
    pub render: RenderArgs,
    #[command(flatten)]
    pub out: OutputArgs,
}

#[derive(Debug, Args)]
pub struct FixtureArgs {
    #[arg(long, env = "TDABM_N", default_value_t = 500)]
    pub n: usize,
    #[arg(long, env = "TDABM_K", default_value_t = 2)]
    pub k: usize,
    #[arg(long, env = "TDABM_SEED", default_value_t = 123)]
    pub seed: u64,
    #[arg(long, env = "TDABM_FORMULA", value_enum, default_value = "sum")]
    pub formula: FormulaArg,
    /// Output path; standard output when omitted.
    #[arg(long, env = "TDABM_OUT")]
    pub out: Option<PathBuf>,
}

/// Everything produced by one build, rendered to bytes but not yet written.
struct Artifacts {
    summary: GraphSummary,
    files: Vec<(PathBuf, String)>,
}

fn write_all(files: &[(PathBuf, String)]) -> Result<()> {
    for (path, body) in files {
        write_atomic(path, body.as_bytes())?;
    }
    Ok(())
}

/// Pulls the named columns out of a wider cloud, in order.
fn select(table: &PointCloud, names: &[String]) -> Result<PointCloud> {
    let idx: Vec<usize> = names
        .iter()
        .map(|n| table.column_index(n).expect("column was loaded"))
        .collect();
    let mut values = Vec::with_capacity(table.len() * idx.len());
    for row in table.rows() {
        values.extend(idx.iter().map(|&j| row[j]));
    }
    Ok(PointCloud::new(names.to_vec(), values)?)
}

fn push_unique(cols: &mut Vec<String>, name: &str) {
    if !cols.iter().any(|c| c == name) {
        cols.push(name.to_string());
    }
}

/// Loads axes, outcome and the coloring column in one pass so rows stay
/// aligned under `--na-policy drop-row`. Returns the normalized cloud and the
/// raw coloring values.
fn load_inputs(data: &DataArgs, color: &ColorArgs) -> Result<(PointCloud, Vec<f64>)> {
    if data.axes.is_empty() {
        return Err(Error::Usage("at least one axis column is required".into()));
    }
    if data.axes.contains(&data.outcome) {
        return Err(Error::DuplicateColumn(data.outcome.clone()));
    }
    let mut cols = data.axes.clone();
    for (i, a) in data.axes.iter().enumerate() {
        if data.axes[..i].contains(a) {
            return Err(Error::DuplicateColumn(a.clone()));
        }
    }
    push_unique(&mut cols, &data.outcome);
    let color_col = color.color_by.clone().unwrap_or_else(|| data.outcome.clone());
    push_unique(&mut cols, &color_col);
    let table = read_columns(&data.table.input, &cols, &data.table.options())?;
    let axes = select(&table, &data.axes)?;
    let j = table.column_index(&color_col).expect("column was loaded");
    let values = table.column(j).collect();
    Ok((normalize(&axes, data.normalize.into()), values))
}

fn graph_outputs(
    cover: &Cover,
    g: &MapperGraph,
    render: &RenderArgs,
    out: &OutputArgs,
) -> Result<Vec<(PathBuf, String)>> {
    let mut files = Vec::new();
    if let Some(p) = &out.out_svg {
        let spec = render.spec()?;
        let layout = spring_layout(g, render.layout_seed, render.iterations)?;
        files.push((p.clone(), render_svg(g, &layout, &spec)?));
    }
    if let Some(p) = &out.out_json {
        files.push((p.clone(), to_json(cover, g)));
    }
    if let Some(p) = &out.out_dot {
        files.push((p.clone(), to_dot(g)));
    }
    if let Some(p) = &out.out_graphml {
        files.push((p.clone(), to_graphml(g)));
    }
    if let Some(p) = &out.out_p2b {
        files.push((p.clone(), to_csv_points_to_balls(&points_to_balls(cover))));
    }
    Ok(files)
}

fn cover_config(epsilon: f64, args: &CoverArgs) -> Result<CoverConfig> {
    let cfg = CoverConfig {
        epsilon,
        strategy: args.strategy.into(),
        seed: args.seed,
        metric: Metric::Euclidean,
    };
    cfg.validate()?;
    Ok(cfg)
}

fn index(args: &CoverArgs) -> MembershipIndex {
    match args.index {
        IndexArg::Brute => MembershipIndex::BruteForce,
        IndexArg::Grid => MembershipIndex::Grid,
    }
}

fn build_one(
    pc: &PointCloud,
    values: &[f64],
    epsilon: f64,
    cover_args: &CoverArgs,
    color: &ColorArgs,
) -> Result<(Cover, MapperGraph)> {
    let cfg = cover_config(epsilon, cover_args)?;
    let cover = build_cover_with(pc, &cfg, index(cover_args))?;
    let g = build_graph(&cover).filter_edges(color.min_strength);
    let g = color_graph(&g, &cover, values, color.agg.into())?;
    Ok((cover, g))
}

fn run_build(args: &BuildArgs) -> Result<Artifacts> {
    let (pc, values) = load_inputs(&args.data, &args.color)?;
    let (cover, g) = build_one(&pc, &values, args.epsilon, &args.cover, &args.color)?;
    let files = graph_outputs(&cover, &g, &args.render, &args.out)?;
    Ok(Artifacts {
        summary: g.summary(),
        files,
    })
}

fn run_recolor(args: &RecolorArgs) -> Result<Artifacts> {
    let (cover, g) = crate::export::from_json(&read_to_string(&args.graph)?)?;
    let mut cols = args.axes.clone();
    push_unique(&mut cols, &args.column);
    let table = read_columns(&args.table.input, &cols, &args.table.options())?;
    if table.len() != cover.n_points() {
        return Err(Error::Mismatch(format!(
            "graph covers {} points but {} has {} rows",
            cover.n_points(),
            args.table.input.display(),
            table.len()
        )));
    }
    if !args.axes.is_empty() {
        let axes = normalize(&select(&table, &args.axes)?, args.normalize.into());
        cover
            .check_geometry(&axes)
            .map_err(|e| Error::Mismatch(e.to_string()))?;
    }
    let j = table.column_index(&args.column).expect("column was loaded");
    let values: Vec<f64> = table.column(j).collect();
    let g = color_graph(&g, &cover, &values, args.agg.into())?;
    let files = graph_outputs(&cover, &g, &args.render, &args.out)?;
    Ok(Artifacts {
        summary: g.summary(),
        files,
    })
}

fn run_export(args: &ExportArgs) -> Result<Artifacts> {
    let (cover, g) = crate::export::from_json(&read_to_string(&args.graph)?)?;
    let files = graph_outputs(&cover, &g, &args.render, &args.out)?;
    Ok(Artifacts {
        summary: g.summary(),
        files,
    })
}

/// Drops repeated radii, keeping first occurrences in order.
pub fn dedup_radii(radii: &[f64]) -> (Vec<f64>, Vec<f64>) {
    let mut seen = HashSet::new();
    let mut kept = Vec::new();
    let mut dropped = Vec::new();
    for &r in radii {
        if seen.insert(r.to_bits()) {
            kept.push(r);
        } else {
            dropped.push(r);
        }
    }
    (kept, dropped)
}

fn run_sweep(args: &SweepArgs) -> Result<(String, Vec<(PathBuf, String)>)> {
    let (radii, dropped) = dedup_radii(&args.radii);
    for r in dropped {
        eprintln!("warning: duplicate radius {r} ignored");
    }
    let (pc, values) = load_inputs(&args.data, &args.color)?;
    let spec = args.render.spec()?;
    let results = radii
        .par_iter()
        .map(|&eps| {
            let (cover, g) = build_one(&pc, &values, eps, &args.cover, &args.color)?;
            let layout = spring_layout(&g, args.render.layout_seed, args.render.iterations)?;
            let svg = render_svg(&g, &layout, &spec)?;
            Ok((eps, g.summary(), to_json(&cover, &g), svg))
        })
        .collect::<Result<Vec<_>>>()?;

    let mut table = String::from("epsilon,balls,edges\n");
    let mut files = Vec::new();
    for (eps, summary, json, svg) in results {
        let _ = writeln!(table, "{eps},{},{}", summary.balls, summary.edges);
        files.push((args.out_dir.join(format!("eps-{eps}.json")), json));
        files.push((args.out_dir.join(format!("eps-{eps}.svg")), svg));
    }
    files.push((args.out_dir.join("summary.csv"), table.clone()));
    Ok((table, files))
}

fn run_fixture(args: &FixtureArgs) -> Result<Option<String>> {
    let formula = match args.formula {
        FormulaArg::Sum => Formula::Sum,
        FormulaArg::None => Formula::None,
    };
    let (pc, y) = fixture::generate(args.n, args.k, args.seed, formula)?;
    let csv = table_to_csv(&pc, y.as_ref(), ',');
    match &args.out {
        Some(p) => {
            write_atomic(p, csv.as_bytes())?;
            Ok(None)
        }
        None => Ok(Some(csv)),
    }
}

pub fn format_summary(s: &GraphSummary) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "balls: {}", s.balls);
    let _ = writeln!(out, "edges: {}", s.edges);
    let _ = writeln!(
        out,
        "cardinality: min {}, max {}, mean {:.3}",
        s.min_cardinality, s.max_cardinality, s.mean_cardinality
    );
    match s.color_range {
        Some((lo, hi)) => {
            let _ = writeln!(out, "color range: {lo} .. {hi}");
        }
        None => out.push_str("color range: none\n"),
    }
    out
}

pub fn run(cli: &Cli) -> Result<String> {
    match &cli.command {
        Command::Build(a) => {
            let art = run_build(a)?;
            write_all(&art.files)?;
            Ok(format_summary(&art.summary))
        }
        Command::Recolor(a) => {
            let art = run_recolor(a)?;
            write_all(&art.files)?;
            Ok(format_summary(&art.summary))
        }
        Command::Export(a) => {
            let art = run_export(a)?;
            write_all(&art.files)?;
            Ok(format_summary(&art.summary))
        }
        Command::Sweep(a) => {
            let (table, files) = run_sweep(a)?;
            std::fs::create_dir_all(&a.out_dir).map_err(|e| Error::io(&a.out_dir, e))?;
            write_all(&files)?;
            Ok(table)
        }
        Command::Fixture(a) => Ok(run_fixture(a)?.unwrap_or_default()),
    }
}

fn truthy(v: &str) -> Option<bool> {
    match v.to_ascii_lowercase().as_str() {
        "true" | "yes" | "on" | "1" => Some(true),
        "false" | "no" | "off" | "0" => Some(false),
        _ => None,
    }
}

fn config_path(args: &[OsString]) -> Option<PathBuf> {
    let mut it = args.iter().skip(1);
    while let Some(a) = it.next() {
        let s = a.to_string_lossy();
        if s == "--config" {
            return it.next().map(PathBuf::from);
        }
        if let Some(v) = s.strip_prefix("--config=") {
            return Some(PathBuf::from(v));
        }
    }
    std::env::var_os("TDABM_CONFIG").map(PathBuf::from)
}

fn flag_given(args: &[OsString], long: &str) -> bool {
    let bare = format!("--{long}");
    let eq = format!("--{long}=");
    args.iter().any(|a| {
        let s = a.to_string_lossy();
        s == bare || s.starts_with(&eq)
    })
}

/// Appends values from the config file for every option that was not given
/// on the command line or through its environment variable.
pub fn apply_config_file(args: Vec<OsString>, path: &Path) -> Result<Vec<OsString>> {
    let text = read_to_string(path)?;
    let root = Cli::command();
    let names: Vec<String> = root
        .get_subcommands()
        .map(|c| c.get_name().to_string())
        .collect();
    let Some(sub_name) = args
        .iter()
        .skip(1)
        .map(|a| a.to_string_lossy().into_owned())
        .find(|a| names.contains(a))
    else {
        return Ok(args);
    };
    let sub = root.find_subcommand(&sub_name).expect("listed above");

    let mut extra: Vec<OsString> = Vec::new();
    for (lineno, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let (key, value) = line.split_once('=').ok_or_else(|| {
            Error::Usage(format!("{}:{}: expected `key = value`", path.display(), lineno + 1))
        })?;
        let key = key.trim();
        let value = value.trim().trim_matches('"');
        let find = |k: &str| sub.get_arguments().find(|a| a.get_long() == Some(k));
        let Some(arg) = find(key) else {
            let known = root
                .get_subcommands()
                .any(|c| c.get_arguments().any(|a| a.get_long() == Some(key)));
            if known || key == "config" {
                continue;
            }
            return Err(Error::Usage(format!(
                "{}:{}: unknown option `{key}`",
                path.display(),
                lineno + 1
            )));
        };
        let negated = key.strip_prefix("no-").map(str::to_string).unwrap_or(format!("no-{key}"));
        if flag_given(&args, key) || flag_given(&args, &negated) {
            continue;
        }
        let env_set = |a: &clap::Arg| a.get_env().is_some_and(|e| std::env::var_os(e).is_some());
        if env_set(arg) || find(&negated).is_some_and(env_set) {
            continue;
        }
        if arg.get_action().takes_values() {
            extra.push(format!("--{key}={value}").into());
        } else {
            let on = truthy(value).ok_or_else(|| {
                Error::Usage(format!("{}:{}: `{key}` expects true or false", path.display(), lineno + 1))
            })?;
            if on {
                extra.push(format!("--{key}").into());
            } else if find(&negated).is_some() {
                extra.push(format!("--{negated}").into());
            }
        }
    }
    let mut args = args;
    args.extend(extra);
    Ok(args)
}

/// Parses `args`, runs the command and returns the process exit code:
/// 0 on success, 2 for usage errors, 1 for anything else.
pub fn main_with_args(args: Vec<OsString>) -> i32 {
    let args = match config_path(&args) {
        Some(p) => match apply_config_file(args, &p) {
            Ok(a) => a,
            Err(e) => {
                eprintln!("error: {e}");
                return 2;
            }
        },
        None => args,
    };
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return e.exit_code();
        }
    };
    match run(&cli) {
        Ok(out) => {
            print!("{out}");
            0
        }
        Err(e) => {
            eprintln!("error: {e}");
            match e {
                Error::Usage(_) | Error::DuplicateColumn(_) => 2,
                _ => 1,
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cli_definition_is_consistent() {
        Cli::command().debug_assert();
    }

    #[test]
    fn radii_dedup() {
        let (kept, dropped) = dedup_radii(&[0.2, 0.4, 0.2, 0.8, 0.4]);
        assert_eq!(kept, vec![0.2, 0.4, 0.8]);
        assert_eq!(dropped, vec![0.2, 0.4]);
    }

    #[test]
    fn value_parsers() {
        assert!(positive_f64("0").is_err());
        assert!(positive_f64("-1").is_err());
        assert!(positive_f64("inf").is_err());
        assert_eq!(positive_f64("0.4"), Ok(0.4));
        assert_eq!(size_range("5,15").unwrap(), SizeScale::new(5.0, 15.0).unwrap());
        assert!(size_range("15,5").is_err());
        assert!(ascii_delimiter(";;").is_err());
    }

    #[test]
    fn config_file_fills_missing_flags_only() {
        let dir = tempfile::tempdir().unwrap();
        let cfg = dir.path().join("tdabm.conf");
        std::fs::write(
            &cfg,
            "# defaults\nepsilon = 0.3\nstrategy = random\nlabels = false\nradii = 0.1,0.2\n",
        )
        .unwrap();
        let args: Vec<OsString> = ["tdabm", "build", "--epsilon", "0.5"]
            .iter()
            .map(OsString::from)
            .collect();
        let out = apply_config_file(args, &cfg).unwrap();
        let out: Vec<String> = out.iter().map(|a| a.to_string_lossy().into_owned()).collect();
        assert!(out.contains(&"--strategy=random".to_string()));
        assert!(out.contains(&"--no-labels".to_string()));
        assert!(!out.iter().any(|a| a.starts_with("--epsilon=")));
        assert!(!out.iter().any(|a| a.starts_with("--radii")));

        std::fs::write(&cfg, "bogus = 1\n").unwrap();
        let args = vec![OsString::from("tdabm"), OsString::from("build")];
        assert!(apply_config_file(args, &cfg).is_err());
    }
}
