use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Parser, Debug, Clone)]
#[command(name = "zf", version, about = "Ramification structures, component counts and branch-curve invariants")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,

    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    pub format: Format,

    /// Worker threads for counting (default: one per core).
    #[arg(long, global = true, value_parser = clap::value_parser!(u64).range(1..=1024))]
    pub workers: Option<u64>,

    /// Work budget for enumeration and canonicalisation.
    #[arg(long, global = true, env = "ZF_BUDGET")]
    pub budget: Option<u64>,

    /// Node budget for a single Hurwitz-orbit search.
    #[arg(long, global = true)]
    pub orbit_budget: Option<usize>,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
    Table,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum Mode {
    Ordered,
    Multiset,
}

#[derive(Subcommand, Debug, Clone)]
pub enum Command {
    /// List spherical systems of a given type.
    Enumerate(EnumerateArgs),
    /// Count classes of ramification structures of type (tau1, tau2).
    Components(ComponentsArgs),
    /// Branch-curve and surface invariants.
    Invariants(InvariantsArgs),
    /// Full report for one member (k, l) of the (Z/2)^k family.
    Family(FamilyArgs),
    /// Family reports for ranges of k and l, one row each.
    Report(ReportArgs),
}

#[derive(Args, Debug, Clone)]
pub struct EnumerateArgs {
    /// `Z2^k`, `S3`, `Q8`, `D<n>`, `Z<n>` or a path to a group file.
    #[arg(long)]
    pub group: String,
    /// Type, e.g. `2^4` or `2,3,3`.
    #[arg(long)]
    pub tau: String,
    #[arg(long, value_enum, default_value_t = Mode::Ordered)]
    pub mode: Mode,
    /// Number of systems listed; all are still counted.
    #[arg(long, default_value_t = 100)]
    pub limit: usize,
}

#[derive(Args, Debug, Clone)]
pub struct CountFlags {
    /// Do not identify (T1, T2) with (T2, T1) when tau1 = tau2.
    #[arg(long)]
    pub count_ordered_pairs: bool,
    /// Identify structures differing by inner conjugation of T1 alone.
    #[arg(long)]
    pub identify_inner: bool,
}

#[derive(Args, Debug, Clone)]
pub struct ComponentsArgs {
    #[arg(long)]
    pub group: String,
    #[arg(long)]
    pub tau1: String,
    #[arg(long)]
    pub tau2: String,
    #[command(flatten)]
    pub flags: CountFlags,
    /// Include the canonical class keys in the output.
    #[arg(long)]
    pub keys: bool,
}

#[derive(Args, Debug, Clone)]
pub struct InvariantsArgs {
    /// K² of the surface.
    #[arg(long, requires = "c2", conflicts_with_all = ["group", "tau1", "tau2"])]
    pub ksq: Option<String>,
    /// c₂ of the surface.
    #[arg(long, requires = "ksq")]
    pub c2: Option<String>,
    /// Use the m-canonical embedding.
    #[arg(long, default_value_t = 2, value_parser = clap::value_parser!(u32).range(2..=1000))]
    pub m: u32,
    /// Holomorphic Euler characteristic, enables the bound report.
    #[arg(long)]
    pub chi: Option<String>,
    /// ε for the bound report, e.g. `1` or `1/3`.
    #[arg(long)]
    pub epsilon: Option<String>,
    /// Take K² and c₂ from a ramification structure type instead.
    #[arg(long, requires_all = ["tau1", "tau2"])]
    pub group: Option<String>,
    #[arg(long, requires = "group")]
    pub tau1: Option<String>,
    #[arg(long, requires = "group")]
    pub tau2: Option<String>,
}

#[derive(Args, Debug, Clone)]
pub struct FamilyArgs {
    #[arg(long)]
    pub k: u32,
    #[arg(long)]
    pub l: u32,
    /// Override ε = l/k − 2 in the bound report.
    #[arg(long)]
    pub epsilon: Option<String>,
    #[command(flatten)]
    pub flags: CountFlags,
}

#[derive(Args, Debug, Clone)]
pub struct ReportArgs {
    /// k values: `3`, `2..5` (inclusive) or `2,4`.
    #[arg(long)]
    pub k: String,
    /// l values in the same syntax; pairs with l ≤ 2k are skipped.
    #[arg(long)]
    pub l: String,
    #[arg(long)]
    pub epsilon: Option<String>,
    #[command(flatten)]
    pub flags: CountFlags,
}

/// Parses `a`, `a..b` (inclusive) and comma-separated lists of those.
pub fn parse_range(s: &str) -> Result<Vec<u32>, String> {
    let mut out = Vec::new();
    for part in s.split(',') {
        let part = part.trim();
        let num = |t: &str| {
            t.trim()
                .parse::<u32>()
                .map_err(|_| format!("`{t}` is not a non-negative integer"))
        };
        if let Some((a, b)) = part.split_once("..") {
            let (a, b) = (num(a)?, num(b.trim_start_matches('='))?);
            if a > b {
                return Err(format!("empty range `{part}`"));
            }
            out.extend(a..=b);
        } else {
            out.push(num(part)?);
        }
    }
    out.sort_unstable();
    out.dedup();
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ranges() {
        assert_eq!(parse_range("3").unwrap(), vec![3]);
        assert_eq!(parse_range("2..4").unwrap(), vec![2, 3, 4]);
        assert_eq!(parse_range("2..=3,7").unwrap(), vec![2, 3, 7]);
        assert!(parse_range("4..2").is_err());
        assert!(parse_range("x").is_err());
    }

    #[test]
    fn clap_definition_is_consistent() {
        use clap::CommandFactory;
        Cli::command().debug_assert();
    }
}
