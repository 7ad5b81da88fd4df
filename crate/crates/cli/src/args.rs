use clap::{ArgGroup, Args, Parser, Subcommand, ValueEnum};

use crate::format::{SpaceFormat, SpaceOptions};

#[derive(Debug, Parser)]
#[command(name = "semicoarse", version, about = "Finite semi-coarse spaces: constructions, homotopy and homology")]
pub struct Cli {
    #[command(flatten)]
    pub space: SpaceFlags,

    #[command(subcommand)]
    pub command: Command,
}

/// Flags that control how space files are read.
#[derive(Debug, Clone, Args)]
pub struct SpaceFlags {
    /// Input format for space files.
    #[arg(long, global = true, value_enum, default_value_t = SpaceFormat::Auto)]
    pub format: SpaceFormat,

    /// Scale r for point clouds and distance matrices (exact decimal).
    #[arg(long, global = true)]
    pub scale: Option<String>,

    /// Relate points at distance < r instead of <= r.
    #[arg(long, global = true)]
    pub strict: bool,
}

impl SpaceFlags {
    pub fn options(&self) -> SpaceOptions {
        SpaceOptions { format: self.format, scale: self.scale.clone(), strict: self.strict }
    }
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Read a space, optionally apply one construction, write canonical JSON.
    Build(BuildArgs),
    /// Integral homology of the clique complex of the roof.
    Homology(HomologyArgs),
    /// Fundamental group of the cyclic space C_n^m.
    Pi1(Pi1Args),
    /// Winding number of a path in a cyclic space, with its lift.
    Winding(WindingArgs),
    /// Check a map for bornology or a homotopy certificate for validity.
    Check(CheckArgs),
    /// Coarse completion of a space.
    Coarsen(CoarsenArgs),
    /// Search for a homotopy between two cube maps.
    Search(SearchArgs),
    /// Displace a block of a cube map, producing a certified homotopy.
    Move(MoveArgs),
}

#[derive(Debug, Args)]
#[command(group(ArgGroup::new("construction").args(["product", "union", "quotient", "subspace"])))]
pub struct BuildArgs {
    /// Space file, or "-" for stdin.
    pub input: String,

    /// Product with the space in FILE.
    #[arg(long, value_name = "FILE")]
    pub product: Option<String>,

    /// Disjoint union with the spaces in the listed files.
    #[arg(long, value_name = "FILE", num_args = 1..)]
    pub union: Vec<String>,

    /// Quotient by the JSON map in FILE.
    #[arg(long, value_name = "FILE")]
    pub quotient: Option<String>,

    /// Subspace on the listed vertices: "a,b,c", "{a,b,c}", or "@FILE"
    /// with whitespace-separated names.
    #[arg(long, value_name = "LIST")]
    pub subspace: Option<String>,

    /// Output file, or "-" for stdout.
    #[arg(short, long, default_value = "-")]
    pub output: String,
}

#[derive(Debug, Args)]
pub struct HomologyArgs {
    pub space: String,

    /// Highest dimension computed; it is reported as cap-limited.
    #[arg(long, default_value_t = semicoarse::homology::DEFAULT_MAX_DIM)]
    pub max_dim: usize,
}

#[derive(Debug, Args)]
pub struct Pi1Args {
    #[arg(long)]
    pub n: usize,

    #[arg(long)]
    pub m: usize,
}

#[derive(Debug, Args)]
pub struct WindingArgs {
    /// A space isomorphic to some C_n^m.
    pub space: String,

    /// Path file: a JSON array or whitespace-separated vertex names.
    pub path: String,

    /// Lift on C_1, C_2 or C_3 even though the result is not a homotopy
    /// invariant there.
    #[arg(long)]
    pub allow_small_cycle: bool,
}

#[derive(Debug, Args)]
#[command(group(ArgGroup::new("subject").required(true).args(["map", "homotopy"])))]
pub struct CheckArgs {
    /// Map document {"source", "target", "table"}.
    #[arg(long, value_name = "FILE")]
    pub map: Option<String>,

    /// Homotopy document in cube or general form.
    #[arg(long, value_name = "FILE")]
    pub homotopy: Option<String>,
}

#[derive(Debug, Args)]
pub struct CoarsenArgs {
    pub space: String,

    /// Also write the completed space as canonical JSON to FILE.
    #[arg(short, long)]
    pub output: Option<String>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum AnchorChoice {
    /// Nothing is held fixed.
    Free,
    /// The cube boundary is held fixed.
    Based,
}

#[derive(Debug, Args)]
pub struct SearchArgs {
    /// Target space.
    pub space: String,

    /// Start map: a path (JSON array or names) or {"n", "m", "grid"}.
    #[arg(long, value_name = "FILE")]
    pub from: String,

    /// Goal map, same forms. Maps of different sides are clamped to the larger.
    #[arg(long, value_name = "FILE")]
    pub to: String,

    #[arg(long, value_enum, default_value_t = AnchorChoice::Based)]
    pub anchors: AnchorChoice,

    #[arg(long, default_value_t = semicoarse::homotopy::DEFAULT_NODE_BUDGET)]
    pub node_budget: usize,

    /// Do not repeat a failed search at the doubled side.
    #[arg(long)]
    pub no_revalidate: bool,

    /// Write the certificate to FILE instead of embedding it in the report.
    #[arg(short, long)]
    pub output: Option<String>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum DirectionChoice {
    Left,
    Right,
}

#[derive(Debug, Args)]
pub struct MoveArgs {
    /// Target space.
    pub space: String,

    /// Cube map to deform.
    #[arg(long, value_name = "FILE")]
    pub map: String,

    /// Block bounds per axis, "lo-hi" or "c", comma-separated (e.g. "1-2,0-3").
    #[arg(long)]
    pub block: String,

    /// Axis of motion, 1-based.
    #[arg(long)]
    pub axis: usize,

    #[arg(long, value_enum)]
    pub direction: DirectionChoice,

    /// Number of steps.
    #[arg(long, default_value_t = 1)]
    pub steps: usize,

    /// Write the certificate to FILE instead of embedding it in the report.
    #[arg(short, long)]
    pub output: Option<String>,
}
