use clap::{Args, Parser, Subcommand, ValueEnum};

use hyperjac_core::{DEFAULT_CELL_BUDGET, DEFAULT_PRIME};

#[derive(Debug, Parser)]
#[command(name = "hyperjac", version, about = "Exact Jacobian-ring computations over GF(p)")]
pub struct Cli {
    #[command(flatten)]
    pub common: Common,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Args)]
pub struct Common {
    /// Coefficient field GF(p).
    #[arg(long, global = true, env = "HYPERJAC_PRIME", default_value_t = DEFAULT_PRIME as u64)]
    pub prime: u64,
    /// Largest matrix, in cells, any single step may build.
    #[arg(long, global = true, env = "HYPERJAC_BUDGET", default_value_t = DEFAULT_CELL_BUDGET)]
    pub budget: u128,
    /// Seed of the ChaCha8 generator behind every random form and subspace.
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
    #[arg(long, global = true, value_enum)]
    pub output: Option<Format>,
    /// Repeat the run over a second prime and compare every dimension and verdict.
    #[arg(long, global = true)]
    pub cross_check: bool,
    #[arg(long, global = true, default_value_t = 32003)]
    pub second_prime: u64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
    Table,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Primitive Hodge numbers of a hypersurface from its Jacobian ring.
    HodgeNumbers(FormArgs),
    /// Hilbert function of the Jacobian ring.
    Hilbert(HilbertArgs),
    /// Middle exactness of Koszul complexes over a grid of (codim, a, s).
    GreenScan(GreenArgs),
    /// Middle exactness of a single Koszul cell.
    KoszulCheck(KoszulArgs),
    /// Integer degree criteria for sweeping families.
    Sweep(SweepArgs),
    /// Chain from a hyperplane containing the Jacobian ideal to the socle.
    YukawaChain(YukawaArgs),
    /// Base-point-freeness of a linear system.
    BpfCheck(BpfArgs),
}

#[derive(Debug, Clone, Args)]
#[command(group = clap::ArgGroup::new("source").required(true).args(["fermat", "random_smooth", "f", "f_file"]))]
pub struct FormArgs {
    /// Dimension of the hypersurface; the ring has d + 2 variables.
    #[arg(long)]
    pub d: usize,
    #[arg(long = "N")]
    pub degree: usize,
    #[arg(long)]
    pub fermat: bool,
    #[arg(long)]
    pub random_smooth: bool,
    /// Inline equation in x0..x{d+1}, e.g. "x0^3 + x1^3 + 2*x2^3".
    #[arg(long)]
    pub f: Option<String>,
    #[arg(long)]
    pub f_file: Option<std::path::PathBuf>,
}

#[derive(Debug, Clone, Args)]
pub struct HilbertArgs {
    #[command(flatten)]
    pub form: FormArgs,
    /// Last degree to report; defaults to the socle degree plus one.
    #[arg(long)]
    pub max_degree: Option<usize>,
}

#[derive(Debug, Clone, Args)]
pub struct GreenArgs {
    #[arg(long)]
    pub n: usize,
    #[arg(long = "N")]
    pub degree: usize,
    /// Codimensions of W: a single value, a list "0,2" or an inclusive range "0..2".
    #[arg(long, default_value = "0..2", value_parser = parse_codims)]
    pub codim: Codims,
    #[arg(long, default_value_t = 6)]
    pub amax: i64,
    #[arg(long, default_value_t = 2)]
    pub smax: usize,
    #[arg(long, default_value_t = 3)]
    pub trials: usize,
    /// Record cells that exceed the budget as skipped instead of stopping.
    #[arg(long)]
    pub skip_oversize: bool,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Codims(pub Vec<usize>);

pub fn parse_codims(s: &str) -> Result<Codims, String> {
    let s = s.trim();
    let bad = |_| format!("bad codimension list {s:?}");
    if let Some((lo, hi)) = s.split_once("..") {
        let lo: usize = lo.trim().parse().map_err(bad)?;
        let hi: usize = hi.trim().parse().map_err(bad)?;
        if lo > hi {
            return Err(format!("empty codimension range {s:?}"));
        }
        return Ok(Codims((lo..=hi).collect()));
    }
    let v = s
        .split(',')
        .map(|t| t.trim().parse::<usize>().map_err(bad))
        .collect::<Result<Vec<_>, _>>()?;
    Ok(Codims(v))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ModuleArg {
    /// The polynomial ring S.
    S,
    /// The Jacobian ring R_f, with W containing J_f^N.
    Jacobian,
}

#[derive(Debug, Clone, Args)]
pub struct KoszulArgs {
    #[arg(long, value_enum, default_value = "s")]
    pub module: ModuleArg,
    /// Variables, for the polynomial module.
    #[arg(long, required_if_eq("module", "s"))]
    pub n: Option<usize>,
    /// Dimension of the hypersurface, for the Jacobian module.
    #[arg(long, required_if_eq("module", "jacobian"))]
    pub d: Option<usize>,
    #[arg(long = "N")]
    pub degree: usize,
    #[arg(long, default_value_t = 0)]
    pub codim: usize,
    /// Left degree, for the polynomial module.
    #[arg(long, allow_hyphen_values = true, required_if_eq("module", "s"))]
    pub a: Option<i64>,
    /// Residue index, for the Jacobian module: a = N p - d - 2.
    #[arg(long, required_if_eq("module", "jacobian"))]
    pub p: Option<i64>,
    #[arg(long, default_value_t = 1)]
    pub s: usize,
    /// Use the Fermat form instead of a random smooth one.
    #[arg(long)]
    pub fermat: bool,
}

#[derive(Debug, Clone, Args)]
pub struct SweepArgs {
    #[arg(long)]
    pub d: u64,
    #[arg(long = "N")]
    pub degree: Option<u64>,
    #[arg(long)]
    pub r: Option<u64>,
    #[arg(long = "C")]
    pub moduli: Option<u64>,
    /// N = d + 2 against abelian varieties, C = r(r+1)/2, for every r.
    #[arg(long, conflicts_with_all = ["degree", "r", "moduli", "genus"])]
    pub abelian: bool,
    /// Curves of genus g: r = 1 and C from the genus.
    #[arg(long, conflicts_with_all = ["r", "moduli"])]
    pub genus: Option<u64>,
    /// With --genus: least N passing the criterion.
    #[arg(long, requires = "genus", conflicts_with = "degree")]
    pub find_threshold: bool,
}

#[derive(Debug, Clone, Args)]
pub struct YukawaArgs {
    #[arg(long, default_value_t = 2)]
    pub d: usize,
    /// Needed for d >= 3.
    #[arg(long)]
    pub allow_large: bool,
    /// Take K = J_f^{d+2} itself, the degenerate choice.
    #[arg(long)]
    pub k_equals_jacobian: bool,
    #[arg(long, default_value_t = 50)]
    pub attempts: usize,
}

#[derive(Debug, Clone, Args)]
pub struct BpfArgs {
    #[arg(long)]
    pub n: usize,
    #[arg(long = "N")]
    pub degree: usize,
    /// Codimension of a random W.
    #[arg(long, default_value_t = 0, conflicts_with = "forms")]
    pub codim: usize,
    /// Explicit spanning forms of W, separated by ';'.
    #[arg(long)]
    pub forms: Option<String>,
    /// Last degree tried; defaults to n(N-1)+1.
    #[arg(long)]
    pub m_max: Option<usize>,
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn codim_lists() {
        assert_eq!(parse_codims("0..2").unwrap(), Codims(vec![0, 1, 2]));
        assert_eq!(parse_codims("1").unwrap(), Codims(vec![1]));
        assert_eq!(parse_codims("0, 2").unwrap(), Codims(vec![0, 2]));
        assert!(parse_codims("2..0").is_err());
        assert!(parse_codims("x").is_err());
    }

    #[test]
    fn parser_is_consistent() {
        use clap::CommandFactory;
        Cli::command().debug_assert();
    }
}
