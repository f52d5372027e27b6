//! The `updown` command line.
//!
//! Exit codes: 0 when everything asked for holds, 1 when a property fails or
//! a transform hits a digit with no image, 2 for malformed input or usage,
//! 3 when a search ends without a single square.

use std::fs;
use std::io::{self, Read, Write};
use std::path::{Path, PathBuf};

use clap::{ArgGroup, Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use updown_core::generate::{gen_square, SearchSpec, SearchStatus};
use updown_core::sevenseg::render_square;
use updown_core::verify::{self, PropertyReport};
use updown_core::{Alphabet, DigitMap, Error, Square};

use crate::document::{read_squares, write_array, write_stream, SquareDocument};
use crate::{report, Deadline};

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAILED: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_EXHAUSTED: i32 = 3;

#[derive(Debug, Parser)]
#[command(
    name = "updown",
    version,
    about = "Generate, transform and verify upside-down magic squares"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Check the properties of every square in a document
    Verify(VerifyArgs),
    /// Search for squares built from constant-sum digit planes
    Generate(GenerateArgs),
    /// Turn squares upside down or reflect them in a mirror
    Transform(TransformArgs),
    /// Draw squares as seven-segment ASCII art
    Render(RenderArgs),
    /// Print the digit planes of each square with their line sums
    Decompose(DecomposeArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
}

#[derive(Debug, Args)]
pub struct VerifyArgs {
    /// Square document; `-` reads standard input
    pub input: PathBuf,
    /// Require equal line sums of squares
    #[arg(long)]
    pub bimagic: bool,
    /// Require the broken diagonals to match as well
    #[arg(long)]
    pub pandiagonal: bool,
    /// Require every aligned k×k block to share one total (repeatable)
    #[arg(long = "blocks", value_name = "K")]
    pub blocks: Vec<usize>,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    pub report: Format,
}

#[derive(Debug, Args)]
pub struct GenerateArgs {
    #[arg(long)]
    pub order: usize,
    /// Digits per cell; defaults to 4 with --bimagic
    #[arg(long)]
    pub width: Option<usize>,
    #[arg(long, default_value = "012")]
    pub alphabet: String,
    /// One line sum for every digit plane, or one per plane, comma separated
    #[arg(long, value_name = "S[,S..]", value_delimiter = ',')]
    pub line_sum: Vec<u32>,
    #[arg(long)]
    pub pandiagonal: bool,
    #[arg(long)]
    pub palindromic: bool,
    #[arg(long)]
    pub distinct: bool,
    /// Order-9 bimagic squares over 012
    #[arg(long)]
    pub bimagic: bool,
    #[arg(long, default_value_t = 1)]
    pub limit: usize,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[arg(long, value_name = "MS")]
    pub budget_ms: Option<u64>,
    /// Emit in a fixed lexicographic order instead of a seeded shuffle
    #[arg(long)]
    pub deterministic: bool,
    #[arg(long)]
    pub out: Option<PathBuf>,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    pub format: Format,
}

#[derive(Debug, Args)]
#[command(group(ArgGroup::new("map").required(true).args(["rotate180", "mirror"])))]
pub struct TransformArgs {
    pub input: PathBuf,
    #[arg(long)]
    pub rotate180: bool,
    #[arg(long)]
    pub mirror: bool,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct RenderArgs {
    pub input: PathBuf,
    /// No blank line between rows of cells
    #[arg(long)]
    pub compact: bool,
}

#[derive(Debug, Args)]
pub struct DecomposeArgs {
    pub input: PathBuf,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    pub format: Format,
}

/// Output streams and terminal settings for one invocation.
pub struct Io<'a> {
    pub out: &'a mut dyn Write,
    pub err: &'a mut dyn Write,
    /// Colour text reports.
    pub color: bool,
}

struct Exit {
    code: i32,
    message: String,
}

impl Exit {
    fn new(code: i32, message: impl Into<String>) -> Self {
        Exit {
            code,
            message: message.into(),
        }
    }
}

type Outcome = Result<i32, Exit>;

/// Parses `args` (program name first) and runs the command.
pub fn run<I, T>(args: I, io: &mut Io) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let text = e.render().to_string();
            return if e.use_stderr() {
                let _ = write!(io.err, "{text}");
                EXIT_USAGE
            } else {
                let _ = write!(io.out, "{text}");
                EXIT_OK
            };
        }
    };
    execute(cli, io)
}

pub fn execute(cli: Cli, io: &mut Io) -> i32 {
    let outcome = match &cli.command {
        Command::Verify(args) => verify_cmd(args, io),
        Command::Generate(args) => generate_cmd(args, io),
        Command::Transform(args) => transform_cmd(args, io),
        Command::Render(args) => render_cmd(args, io),
        Command::Decompose(args) => decompose_cmd(args, io),
    };
    match outcome {
        Ok(code) => code,
        Err(exit) => {
            let _ = writeln!(io.err, "updown: {}", exit.message);
            exit.code
        }
    }
}

fn read_input(path: &Path) -> Result<Vec<Square>, Exit> {
    let text = if path == Path::new("-") {
        let mut s = String::new();
        io::stdin()
            .read_to_string(&mut s)
            .map_err(|e| Exit::new(EXIT_USAGE, format!("reading standard input: {e}")))?;
        s
    } else {
        fs::read_to_string(path)
            .map_err(|e| Exit::new(EXIT_USAGE, format!("{}: {e}", path.display())))?
    };
    read_squares(&text).map_err(|e| Exit::new(EXIT_USAGE, format!("{}: {e}", path.display())))
}

fn emit(io: &mut Io, out: Option<&Path>, text: &str) -> Result<(), Exit> {
    match out {
        Some(path) => fs::write(path, text)
            .map_err(|e| Exit::new(EXIT_USAGE, format!("{}: {e}", path.display()))),
        None => io
            .out
            .write_all(text.as_bytes())
            .map_err(|e| Exit::new(EXIT_USAGE, format!("writing output: {e}"))),
    }
}

/// One value for a single document, an array for several.
fn one_or_many<T: Serialize>(items: &[T]) -> String {
    let value = match items {
        [one] => serde_json::to_string_pretty(one),
        many => serde_json::to_string_pretty(many),
    };
    value.expect("serializable") + "\n"
}

/// Names of the requested properties the report does not have.
fn failures(args: &VerifyArgs, r: &PropertyReport) -> Vec<String> {
    let mut failed = Vec::new();
    if !r.is_magic {
        failed.push("magic".to_string());
    }
    if args.bimagic && !r.is_bimagic {
        failed.push("bimagic".into());
    }
    if args.pandiagonal && !r.is_pandiagonal {
        failed.push("pandiagonal".into());
    }
    if args.pandiagonal && args.bimagic && !r.is_pandiagonal_bimagic {
        failed.push("pandiagonal bimagic".into());
    }
    for b in r.block_results.iter().filter(|b| b.common_sum.is_none()) {
        failed.push(format!("blocks {0}x{0}", b.k));
    }
    failed
}

fn verify_cmd(args: &VerifyArgs, io: &mut Io) -> Outcome {
    let squares = read_input(&args.input)?;
    let mut reports = Vec::with_capacity(squares.len());
    for (k, square) in squares.iter().enumerate() {
        let r = verify::report(square, &args.blocks)
            .map_err(|e| Exit::new(EXIT_USAGE, format!("document {k}: {e}")))?;
        reports.push(r);
    }
    let mut code = EXIT_OK;
    let mut text = String::new();
    for (k, r) in reports.iter().enumerate() {
        let failed = failures(args, r);
        if !failed.is_empty() {
            code = EXIT_FAILED;
        }
        if args.report == Format::Text {
            if k > 0 {
                text.push_str("---\n");
            }
            text.push_str(&report::text(r, io.color));
            match failed.is_empty() {
                true => text.push_str("result               pass\n"),
                false => text.push_str(&format!(
                    "result               fail: {}\n",
                    failed.join(", ")
                )),
            }
        }
    }
    if args.report == Format::Json {
        let values: Vec<_> = reports.iter().map(report::json).collect();
        text = one_or_many(&values);
    }
    emit(io, None, &text)?;
    Ok(code)
}

fn search_spec(args: &GenerateArgs) -> Result<SearchSpec, Exit> {
    let usage = |m: String| Exit::new(EXIT_USAGE, m);
    let width = match (args.width, args.bimagic) {
        (Some(w), _) => w,
        (None, true) => 4,
        (None, false) => return Err(usage("--width is required".into())),
    };
    let sums = match (args.line_sum.as_slice(), args.bimagic) {
        ([], true) => vec![9; width],
        ([], false) => return Err(usage("--line-sum is required".into())),
        ([one], _) => vec![*one; width],
        (many, _) if many.len() == width => many.to_vec(),
        (many, _) => {
            return Err(usage(format!(
                "--line-sum needs one value or {width}, got {}",
                many.len()
            )))
        }
    };
    let alphabet = Alphabet::parse(&args.alphabet).map_err(|e| usage(e.to_string()))?;
    let mut spec = SearchSpec::new(args.order, width, 0);
    spec.alphabet = alphabet;
    spec.line_sum_per_place = sums;
    spec.require_pandiagonal = args.pandiagonal;
    spec.require_distinct = args.distinct;
    spec.require_palindromic = args.palindromic;
    spec.require_bimagic = args.bimagic;
    spec.limit = args.limit;
    spec.seed = args.seed;
    spec.budget_ms = args.budget_ms;
    spec.deterministic = args.deterministic;
    spec.validate().map_err(|e| usage(e.to_string()))?;
    Ok(spec)
}

fn generate_cmd(args: &GenerateArgs, io: &mut Io) -> Outcome {
    let spec = search_spec(args)?;
    let mut stream = gen_square(&spec, Deadline::from_millis(spec.budget_ms))
        .map_err(|e| Exit::new(EXIT_USAGE, e.to_string()))?;
    let docs: Vec<SquareDocument> = stream
        .by_ref()
        .map(|s| SquareDocument::from_square(&s))
        .collect();
    if docs.is_empty() {
        let why = match stream.status() {
            SearchStatus::BudgetExhausted => Error::BudgetExhausted,
            _ => Error::Unsatisfiable,
        };
        return Err(Exit::new(EXIT_EXHAUSTED, why.to_string()));
    }
    let text = match args.format {
        Format::Text => write_stream(&docs),
        Format::Json => write_array(&docs),
    };
    emit(io, args.out.as_deref(), &text)?;
    if stream.status() == SearchStatus::BudgetExhausted {
        let _ = writeln!(
            io.err,
            "updown: budget ran out after {} of {} squares",
            docs.len(),
            spec.limit
        );
    }
    Ok(EXIT_OK)
}

fn transform_cmd(args: &TransformArgs, io: &mut Io) -> Outcome {
    let squares = read_input(&args.input)?;
    let mut docs = Vec::with_capacity(squares.len());
    for (k, square) in squares.iter().enumerate() {
        let turned = if args.rotate180 {
            square.rotate(&DigitMap::rotation())
        } else {
            square.mirror(&DigitMap::mirror())
        };
        let turned = turned.map_err(|e| match squares.len() {
            1 => Exit::new(EXIT_FAILED, e.to_string()),
            _ => Exit::new(EXIT_FAILED, format!("document {k}: {e}")),
        })?;
        docs.push(SquareDocument::from_square(&turned));
    }
    emit(io, args.out.as_deref(), &write_stream(&docs))?;
    Ok(EXIT_OK)
}

fn render_cmd(args: &RenderArgs, io: &mut Io) -> Outcome {
    let squares = read_input(&args.input)?;
    let blocks: Vec<String> = squares
        .iter()
        .map(|s| render_square(s, args.compact))
        .collect();
    emit(io, None, &blocks.join("---\n"))?;
    Ok(EXIT_OK)
}

#[derive(Serialize)]
struct LayerDump {
    place: usize,
    rows: Vec<Vec<u8>>,
    row_sums: Vec<u128>,
    column_sums: Vec<u128>,
    diagonal_sums: [u128; 2],
    common_sum: Option<u128>,
}

#[derive(Serialize)]
struct StackDump {
    order: usize,
    width: usize,
    layers: Vec<LayerDump>,
}

fn dump(square: &Square) -> StackDump {
    let stack = square.decompose();
    let n = stack.order();
    let layers = stack
        .layers()
        .iter()
        .enumerate()
        .map(|(place, layer)| {
            let single = updown_core::generate::stack_layers(std::slice::from_ref(layer))
                .expect("a layer always stacks");
            let sums: Vec<u128> = verify::line_sums(&single).iter().map(|l| l.sum).collect();
            LayerDump {
                place,
                rows: layer.rows().map(<[u8]>::to_vec).collect(),
                row_sums: sums[..n].to_vec(),
                column_sums: sums[n..2 * n].to_vec(),
                diagonal_sums: [sums[2 * n], sums[2 * n + 1]],
                common_sum: verify::check_magic(&single),
            }
        })
        .collect();
    StackDump {
        order: n,
        width: stack.width(),
        layers,
    }
}

fn join<T: ToString>(values: &[T]) -> String {
    values
        .iter()
        .map(T::to_string)
        .collect::<Vec<_>>()
        .join(" ")
}

fn dump_text(d: &StackDump) -> String {
    let mut out = String::new();
    for (k, layer) in d.layers.iter().enumerate() {
        if k > 0 {
            out.push('\n');
        }
        out.push_str(&format!(
            "layer {} (10^{})\n",
            layer.place,
            d.width - 1 - layer.place
        ));
        for row in &layer.rows {
            out.push_str(&format!("  {}\n", join(row)));
        }
        out.push_str(&format!("  row sums       {}\n", join(&layer.row_sums)));
        out.push_str(&format!("  column sums    {}\n", join(&layer.column_sums)));
        out.push_str(&format!(
            "  diagonal sums  {}\n",
            join(&layer.diagonal_sums)
        ));
        let common = layer.common_sum.map_or("-".to_string(), |s| s.to_string());
        out.push_str(&format!("  common sum     {common}\n"));
    }
    out
}

fn decompose_cmd(args: &DecomposeArgs, io: &mut Io) -> Outcome {
    let squares = read_input(&args.input)?;
    let dumps: Vec<StackDump> = squares.iter().map(dump).collect();
    let text = match args.format {
        Format::Json => one_or_many(&dumps),
        Format::Text => dumps
            .iter()
            .map(dump_text)
            .collect::<Vec<_>>()
            .join("---\n"),
    };
    emit(io, None, &text)?;
    Ok(EXIT_OK)
}
