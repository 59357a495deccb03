//! Batch front end for the signedalg toolkit.
//!
//! Every subcommand reads generators and matrices as plain text files,
//! runs the corresponding library operation, and prints a single JSON
//! report line to stdout. The optional `--out` flag writes a companion
//! artifact: plain text for generators, matrices, and factorizations,
//! a copy of the JSON report otherwise. Output is byte-identical for
//! identical inputs and seed.
//!
//! Count reports embed both the enumerated value and the closed form
//! with a `match` flag; formulas whose stated version disagrees with
//! enumeration are listed under `paper_discrepancies` instead of
//! aborting, and `--paper-literal` switches the report to the stated
//! versions so the disagreement shows up in the `match` flags.
//!
//! Validation failures print the violated precondition to stderr and
//! exit with status 2.

// Same parity idiom as the library: `n % 2 == 0` next to `n % 2 == 1`.
#![allow(clippy::manual_is_multiple_of)]

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use signedalg::group::{self, Generator, Purity, Sign};
use signedalg::replace::{self, BlockKind};
use signedalg::{bounds, invert, ortho, rep};
use signedalg::{BitMatrix, Error};

#[derive(Parser)]
#[command(
    name = "signedalg",
    version,
    about = "Signed groups over double 0-1 logic: enumeration oracles, counts, replacements, and D-orthogonal factorization"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Enumerate the group of a generator file; report order, anticommuting pair count, and negative-power count
    Oracle(OracleArgs),
    /// Signature-class label for (n, n-plus), or for an anticommutative generator file
    Classify(ClassifyArgs),
    /// Split a generator into commuting blocks, greedy and canonical forms side by side
    Partition(PartitionArgs),
    /// Replace a generator through a dyadically invertible exponent matrix
    Replace(ReplaceArgs),
    /// Factor a D-orthogonal matrix into elementary factors times a permutation
    Factor(FactorArgs),
    /// Count report for size n: negative-power counts, pair counts, and matrix counts with match flags
    Count(CountArgs),
    /// Signed permutation matrix of every element of a generator
    Represent(RepresentArgs),
    /// Build two mutually anticommuting commutative families by recipe and verify the pair count
    Dual(DualArgs),
    /// Sample or complete a D-orthogonal matrix, factor it, and verify the roundtrip
    Ortho(OrthoArgs),
}

#[derive(Args)]
struct OracleArgs {
    /// Generator file, one element per line: "s=<bits> p=<bits> sign=<+|->"
    #[arg(long)]
    gen: PathBuf,
    /// Write a copy of the JSON report to this file
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct ClassifyArgs {
    /// Size of the anticommutative generator
    #[arg(long, requires = "n_plus", conflicts_with = "gen")]
    n: Option<usize>,
    /// Number of positive signatures among the n elements
    #[arg(long = "nplus", requires = "n", conflicts_with = "gen")]
    n_plus: Option<usize>,
    /// Classify this anticommutative generator file instead
    #[arg(long)]
    gen: Option<PathBuf>,
    /// Write a copy of the JSON report to this file
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct PartitionArgs {
    /// Generator file to split into commuting blocks
    #[arg(long)]
    gen: PathBuf,
    /// Write a copy of the JSON report to this file
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct ReplaceArgs {
    /// Generator file to replace
    #[arg(long)]
    gen: PathBuf,
    /// Square dyadically invertible exponent matrix file
    #[arg(long)]
    matrix: PathBuf,
    /// Write the replaced generator as plain text to this file
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct FactorArgs {
    /// D-orthogonal matrix file to factor
    #[arg(long)]
    matrix: PathBuf,
    /// Write the factorization (u vectors, then the permutation) as plain text to this file
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct CountArgs {
    /// Generator size the counts refer to
    #[arg(long)]
    n: usize,
    /// Report the formulas exactly as stated instead of the corrected forms
    #[arg(long)]
    paper_literal: bool,
    /// Worker threads for the exhaustive matrix scans
    #[arg(long, default_value_t = 1, value_parser = clap::value_parser!(u64).range(1..=256))]
    jobs: u64,
    /// Write a copy of the JSON report to this file
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct RepresentArgs {
    /// Generator file whose elements get matrix form
    #[arg(long)]
    gen: PathBuf,
    /// Write all matrices as plain text to this file
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct DualArgs {
    /// Construction recipe, 1 to 3
    #[arg(long)]
    recipe: u8,
    /// Size parameter of the first family
    #[arg(long)]
    i: usize,
    /// Size parameter of the second family
    #[arg(long)]
    j: usize,
    /// Signature string such as "+-" (recipe 2: two signs; recipe 3: i-1 signs)
    #[arg(long, allow_hyphen_values = true)]
    signs: Option<String>,
    /// Write both families as one plain-text generator to this file
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct OrthoArgs {
    /// Sample a random D-orthogonal matrix of this size
    #[arg(long, conflicts_with = "basis")]
    n: Option<usize>,
    /// Seed for the random sample
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Complete this partial basis file (columns are the seed vectors) instead of sampling
    #[arg(long)]
    basis: Option<PathBuf>,
    /// Write the resulting matrix as plain text to this file
    #[arg(long)]
    out: Option<PathBuf>,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli.command) {
        Ok(()) => ExitCode::SUCCESS,
        Err(msg) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}

/// JSON line for stdout plus an optional file artifact.
struct Output {
    json: String,
    artifact: Option<(PathBuf, String)>,
}

impl Output {
    fn json_only<T: Serialize>(report: &T, out: &Option<PathBuf>) -> Result<Self, String> {
        let json = to_json(report)?;
        let artifact = out.as_ref().map(|p| (p.clone(), format!("{json}\n")));
        Ok(Output { json, artifact })
    }

    fn with_text<T: Serialize>(
        report: &T,
        out: &Option<PathBuf>,
        text: String,
    ) -> Result<Self, String> {
        let json = to_json(report)?;
        let artifact = out.as_ref().map(|p| (p.clone(), text));
        Ok(Output { json, artifact })
    }
}

fn run(command: &Command) -> Result<(), String> {
    let output = match command {
        Command::Oracle(a) => cmd_oracle(a)?,
        Command::Classify(a) => cmd_classify(a)?,
        Command::Partition(a) => cmd_partition(a)?,
        Command::Replace(a) => cmd_replace(a)?,
        Command::Factor(a) => cmd_factor(a)?,
        Command::Count(a) => cmd_count(a)?,
        Command::Represent(a) => cmd_represent(a)?,
        Command::Dual(a) => cmd_dual(a)?,
        Command::Ortho(a) => cmd_ortho(a)?,
    };
    println!("{}", output.json);
    if let Some((path, text)) = output.artifact {
        fs::write(&path, text).map_err(|e| format!("cannot write {}: {e}", path.display()))?;
    }
    Ok(())
}

fn estr(e: Error) -> String {
    e.to_string()
}

fn to_json<T: Serialize>(report: &T) -> Result<String, String> {
    serde_json::to_string(report).map_err(|e| e.to_string())
}

fn read_generator(path: &Path) -> Result<Generator, String> {
    let text =
        fs::read_to_string(path).map_err(|e| format!("cannot read {}: {e}", path.display()))?;
    Generator::parse_text(&text).map_err(|e| format!("{}: {e}", path.display()))
}

fn read_matrix(path: &Path) -> Result<BitMatrix, String> {
    let text =
        fs::read_to_string(path).map_err(|e| format!("cannot read {}: {e}", path.display()))?;
    BitMatrix::parse_text(&text).map_err(|e| format!("{}: {e}", path.display()))
}

/// Count that is skipped, not fatal, when a scan bound refuses it.
fn bounded_count(r: signedalg::Result<u128>) -> Result<Option<u128>, String> {
    match r {
        Ok(v) => Ok(Some(v)),
        Err(Error::TooLarge { .. }) => Ok(None),
        Err(e) => Err(estr(e)),
    }
}

fn element_strings(gen: &Generator) -> Vec<String> {
    gen.elements().iter().map(|e| e.to_string()).collect()
}

/// "identity" or the row index of the single 1 in each column.
fn perm_string(p: &BitMatrix) -> String {
    if p.is_identity() {
        return "identity".to_string();
    }
    let mut targets = Vec::with_capacity(p.ncols());
    for j in 0..p.ncols() {
        let mut hit = 0;
        for i in 0..p.nrows() {
            if p.get(i, j) {
                hit = i;
                break;
            }
        }
        targets.push(hit.to_string());
    }
    targets.join(" ")
}

fn parse_signs(text: &str) -> Result<Vec<Sign>, String> {
    text.chars()
        .map(|c| match c {
            '+' => Ok(Sign::Plus),
            '-' => Ok(Sign::Minus),
            other => Err(format!("bad signature character {other:?}; use + or -")),
        })
        .collect()
}

#[derive(Serialize)]
struct OracleReport {
    order: u128,
    #[serde(skip_serializing_if = "Option::is_none")]
    ac_count: Option<u128>,
    #[serde(skip_serializing_if = "Option::is_none")]
    s_plus: Option<u128>,
    #[serde(skip_serializing_if = "Option::is_none")]
    s_minus: Option<u128>,
}

fn cmd_oracle(a: &OracleArgs) -> Result<Output, String> {
    let gen = read_generator(&a.gen)?;
    let order = gen.enumerate_group().map_err(estr)?.len() as u128;
    let ac_count = bounded_count(gen.ac_count())?;
    let counts = gen.negative_counts().map_err(estr)?;
    let (s_plus, s_minus) = match counts.purity {
        Purity::Positive => (Some(counts.enumerated), None),
        Purity::Negative => (None, Some(counts.enumerated)),
        Purity::Mixed => (None, None),
    };
    let report = OracleReport { order, ac_count, s_plus, s_minus };
    Output::json_only(&report, &a.out)
}

#[derive(Serialize)]
struct ClassifyReport {
    label: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    taxon: Option<String>,
}

fn cmd_classify(a: &ClassifyArgs) -> Result<Output, String> {
    let label = match (&a.gen, a.n, a.n_plus) {
        (Some(path), None, None) => {
            let gen = read_generator(path)?;
            replace::classify_generator(&gen).map_err(estr)?
        }
        (None, Some(n), Some(n_plus)) => {
            replace::classify_signature_type(n, n_plus).map_err(estr)?
        }
        _ => return Err("classify needs either --gen or both --n and --nplus".to_string()),
    };
    let report = ClassifyReport { label: label.label, taxon: label.taxon };
    Output::json_only(&report, &a.out)
}

#[derive(Serialize)]
struct PartitionView {
    elements: Vec<String>,
    blocks: Vec<Vec<usize>>,
    kinds: Vec<BlockKind>,
    /// Enumeration equality against the input; omitted past the
    /// enumeration bound.
    #[serde(skip_serializing_if = "Option::is_none")]
    group_preserved: Option<bool>,
}

#[derive(Serialize)]
struct PartitionJson {
    n: usize,
    greedy: PartitionView,
    canonical: PartitionView,
}

fn partition_view(input: &Generator, report: &replace::PartitionReport) -> PartitionView {
    let group_preserved = match (input.enumerate_group(), report.replaced.enumerate_group()) {
        (Ok(a), Ok(b)) => Some(a == b),
        _ => None,
    };
    PartitionView {
        elements: element_strings(&report.replaced),
        blocks: report.blocks.clone(),
        kinds: report.kinds.clone(),
        group_preserved,
    }
}

fn cmd_partition(a: &PartitionArgs) -> Result<Output, String> {
    let gen = read_generator(&a.gen)?;
    let greedy = replace::partition_generator(&gen).map_err(estr)?;
    let canonical = replace::canonical_km(&gen).map_err(estr)?;
    let report = PartitionJson {
        n: gen.n(),
        greedy: partition_view(&gen, &greedy),
        canonical: partition_view(&gen, &canonical),
    };
    Output::json_only(&report, &a.out)
}

#[derive(Serialize)]
struct ReplaceReport {
    n: usize,
    basic: bool,
    purity: Purity,
    anticommutative: bool,
    commutative: bool,
    elements: Vec<String>,
}

fn cmd_replace(a: &ReplaceArgs) -> Result<Output, String> {
    let gen = read_generator(&a.gen)?;
    let p = read_matrix(&a.matrix)?;
    let replaced = replace::transform(&gen, &p).map_err(estr)?;
    let report = ReplaceReport {
        n: replaced.n(),
        basic: replaced.basic(),
        purity: replaced.purity(),
        anticommutative: replaced.is_anticommutative(),
        commutative: replaced.is_commutative(),
        elements: element_strings(&replaced),
    };
    Output::with_text(&report, &a.out, replaced.to_text())
}

#[derive(Serialize)]
struct FactorReport {
    factors: Vec<String>,
    perm: String,
}

fn cmd_factor(a: &FactorArgs) -> Result<Output, String> {
    let p = read_matrix(&a.matrix)?;
    let factorization = ortho::factor_orthogonal(&p).map_err(estr)?;
    let report = FactorReport {
        factors: factorization.factors.iter().map(|f| f.u().to_string()).collect(),
        perm: perm_string(&factorization.perm),
    };
    let mut text = String::new();
    for factor in &factorization.factors {
        text.push_str("u ");
        text.push_str(&factor.u().to_string());
        text.push('\n');
    }
    text.push_str("perm\n");
    text.push_str(&factorization.perm.to_text());
    Output::with_text(&report, &a.out, text)
}

#[derive(Serialize)]
struct SplitLine {
    #[serde(skip_serializing_if = "Option::is_none")]
    enumerated: Option<u128>,
    b_sum: u128,
    trig: f64,
    #[serde(rename = "match")]
    matches: bool,
}

#[derive(Serialize)]
struct CountLine {
    #[serde(skip_serializing_if = "Option::is_none")]
    enumerated: Option<u128>,
    formula: u128,
    #[serde(rename = "match", skip_serializing_if = "Option::is_none")]
    matches: Option<bool>,
}

#[derive(Serialize)]
struct Discrepancy {
    name: &'static str,
    as_stated: String,
    corrected: String,
}

#[derive(Serialize)]
struct CountsReport {
    n: usize,
    paper_literal: bool,
    s_plus: SplitLine,
    s_minus: SplitLine,
    #[serde(skip_serializing_if = "Option::is_none")]
    ac_pairs: Option<CountLine>,
    #[serde(skip_serializing_if = "Option::is_none")]
    invertible_matrices: Option<CountLine>,
    #[serde(skip_serializing_if = "Option::is_none")]
    d_orthogonal_matrices: Option<CountLine>,
    paper_discrepancies: Vec<Discrepancy>,
}

/// Negative-power enumeration stays cheap through this size; past it
/// the report carries the closed forms only.
const COUNT_ENUM_MAX_N: usize = 16;

fn split_line(n: usize, positive: bool, literal: bool) -> Result<SplitLine, String> {
    let b_sum = if positive {
        group::b_q(n, 2).map_err(estr)? + group::b_q(n, 3).map_err(estr)?
    } else {
        group::b_q(n, 1).map_err(estr)? + group::b_q(n, 2).map_err(estr)?
    };
    let trig = if literal {
        group::trig_as_printed(n, positive)
    } else {
        group::trig_corrected(n, positive).map_err(estr)? as f64
    };
    let enumerated = if n <= bounds::effective(COUNT_ENUM_MAX_N) {
        let n_plus = if positive { n } else { 0 };
        let gen = group::standard_ac_generator(n, n_plus).map_err(estr)?;
        Some(gen.negative_counts().map_err(estr)?.enumerated)
    } else {
        None
    };
    let matches = (trig - b_sum as f64).abs() < 1e-9 && enumerated.is_none_or(|e| e == b_sum);
    Ok(SplitLine { enumerated, b_sum, trig, matches })
}

fn cmd_count(a: &CountArgs) -> Result<Output, String> {
    let n = a.n;
    if n == 0 {
        return Err("count needs n >= 1".to_string());
    }
    let literal = a.paper_literal;
    let jobs = a.jobs as usize;

    let s_plus = split_line(n, true, literal)?;
    let s_minus = split_line(n, false, literal)?;

    let ac_formula = if n % 2 == 0 {
        Some(replace::even_ac_count(n).map_err(estr)?)
    } else if !literal {
        Some(replace::odd_ac_count_corrected(n).map_err(estr)?)
    } else if n >= 2 {
        Some(replace::odd_ac_count_as_printed(n).map_err(estr)?)
    } else {
        None
    };
    let ac_pairs = match ac_formula {
        Some(formula) => {
            let gen = group::standard_ac_generator(n, n / 2).map_err(estr)?;
            let enumerated = bounded_count(gen.ac_count())?;
            let matches = enumerated.map(|e| e == formula);
            Some(CountLine { enumerated, formula, matches })
        }
        None => None,
    };

    let invertible_matrices = match ortho::count_dyadically_invertible_exhaustive(n, jobs) {
        Ok(scan) => {
            let formula =
                if literal { scan.formula } else { ortho::gl2_order(n).map_err(estr)? };
            Some(CountLine {
                enumerated: Some(scan.exact),
                formula,
                matches: Some(scan.exact == formula),
            })
        }
        Err(Error::TooLarge { .. }) => None,
        Err(e) => return Err(estr(e)),
    };
    let d_orthogonal_matrices = match ortho::count_d_orthogonal_exhaustive(n, jobs) {
        Ok(scan) => Some(CountLine {
            enumerated: Some(scan.exact),
            formula: scan.formula,
            matches: Some(scan.exact == scan.formula),
        }),
        Err(Error::TooLarge { .. }) => None,
        Err(e) => return Err(estr(e)),
    };

    let mut paper_discrepancies = Vec::new();
    for (positive, name) in [
        (true, "negative power count, trig constant, positive pure"),
        (false, "negative power count, trig constant, negative pure"),
    ] {
        let stated = group::trig_as_printed(n, positive);
        let corrected = group::trig_corrected(n, positive).map_err(estr)?;
        if (stated - corrected as f64).abs() > 1e-9 {
            paper_discrepancies.push(Discrepancy {
                name,
                as_stated: stated.to_string(),
                corrected: corrected.to_string(),
            });
        }
    }
    if n % 2 == 1 && n >= 3 {
        let stated = replace::odd_ac_count_as_printed(n).map_err(estr)?;
        let corrected = replace::odd_ac_count_corrected(n).map_err(estr)?;
        if stated != corrected {
            paper_discrepancies.push(Discrepancy {
                name: "anticommuting pair count, odd size",
                as_stated: stated.to_string(),
                corrected: corrected.to_string(),
            });
        }
    }
    if let (Ok(stated), Ok(corrected)) =
        (ortho::di_bases_formula_as_stated(n), ortho::gl2_order(n))
    {
        if stated != corrected {
            paper_discrepancies.push(Discrepancy {
                name: "invertible ordered bases, product index range",
                as_stated: stated.to_string(),
                corrected: corrected.to_string(),
            });
        }
    }

    let report = CountsReport {
        n,
        paper_literal: literal,
        s_plus,
        s_minus,
        ac_pairs,
        invertible_matrices,
        d_orthogonal_matrices,
        paper_discrepancies,
    };
    Output::json_only(&report, &a.out)
}

#[derive(Serialize)]
struct RepEntry {
    element: String,
    signature: i8,
    rows: Vec<String>,
}

#[derive(Serialize)]
struct RepresentReport {
    levels: usize,
    dim: usize,
    elements: Vec<RepEntry>,
}

fn cmd_represent(a: &RepresentArgs) -> Result<Output, String> {
    let gen = read_generator(&a.gen)?;
    let levels = gen.ambient();
    // Printing 2^levels x 2^levels matrices; keep the artifact readable.
    bounds::check("representation output levels", levels, bounds::PAIR_SCAN_MAX_N)
        .map_err(estr)?;
    let mut elements = Vec::with_capacity(gen.n());
    let mut text = String::new();
    for e in gen.elements() {
        let matrix = rep::represent(e, levels).map_err(estr)?;
        let body = matrix.to_text();
        text.push_str(&e.to_string());
        text.push('\n');
        text.push_str(&body);
        text.push('\n');
        elements.push(RepEntry {
            element: e.to_string(),
            signature: e.signature().as_i8(),
            rows: body.lines().map(str::to_string).collect(),
        });
    }
    let report = RepresentReport { levels, dim: 1usize << levels, elements };
    Output::with_text(&report, &a.out, text)
}

#[derive(Serialize)]
struct DualReport {
    recipe: u8,
    ambient: usize,
    n_total: usize,
    f: Vec<String>,
    g: Vec<String>,
    f_commutative: bool,
    g_commutative: bool,
    cross_anticommute: bool,
    combined_basic: bool,
    ac_pairs: CountLine,
}

fn cmd_dual(a: &DualArgs) -> Result<Output, String> {
    let signs = match &a.signs {
        Some(text) => Some(parse_signs(text)?),
        None => None,
    };
    let (f, g) =
        replace::dual_decomposition(a.recipe, a.i, a.j, signs.as_deref()).map_err(estr)?;
    let mut combined_elements = f.elements().to_vec();
    combined_elements.extend_from_slice(g.elements());
    let combined = Generator::new(combined_elements).map_err(estr)?;

    let mut cross_anticommute = true;
    for fe in f.elements() {
        for ge in g.elements() {
            if fe.commutator_sign(ge).map_err(estr)? == Sign::Plus {
                cross_anticommute = false;
            }
        }
    }

    let n_total = combined.n();
    let formula = if 2 * n_total >= 3 && 2 * n_total - 3 < 128 {
        3u128 << (2 * n_total - 3)
    } else {
        return Err(format!("pair-count formula overflows at combined size {n_total}"));
    };
    let enumerated = bounded_count(combined.ac_count())?;
    let ac_pairs = CountLine { enumerated, formula, matches: enumerated.map(|e| e == formula) };

    let report = DualReport {
        recipe: a.recipe,
        ambient: combined.ambient(),
        n_total,
        f: element_strings(&f),
        g: element_strings(&g),
        f_commutative: f.is_commutative(),
        g_commutative: g.is_commutative(),
        cross_anticommute,
        combined_basic: combined.basic(),
        ac_pairs,
    };
    Output::with_text(&report, &a.out, combined.to_text())
}

#[derive(Serialize)]
struct OrthoReport {
    mode: &'static str,
    n: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    seed: Option<u64>,
    orthogonal: bool,
    factor_count: usize,
    factor_bound_ok: bool,
    perm: String,
    roundtrip: bool,
}

fn cmd_ortho(a: &OrthoArgs) -> Result<Output, String> {
    let (matrix, seed, mode) = match (&a.basis, a.n) {
        (Some(path), None) => {
            let partial = read_matrix(path)?;
            let completed =
                ortho::gram_schmidt_complete(&partial.cols_vec(), partial.nrows())
                    .map_err(estr)?;
            (completed, None, "completed")
        }
        (None, Some(n)) => {
            let mut rng = ChaCha8Rng::seed_from_u64(a.seed);
            (ortho::random_d_orthogonal(n, &mut rng), Some(a.seed), "sampled")
        }
        _ => return Err("ortho needs exactly one of --n or --basis".to_string()),
    };
    let n = matrix.require_square().map_err(estr)?;
    let orthogonal = invert::is_d_orthogonal(&matrix).map_err(estr)?;
    let factorization = ortho::factor_orthogonal(&matrix).map_err(estr)?;
    let report = OrthoReport {
        mode,
        n,
        seed,
        orthogonal,
        factor_count: factorization.factors.len(),
        factor_bound_ok: factorization.factors.len() <= n,
        perm: perm_string(&factorization.perm),
        roundtrip: factorization.reassemble() == matrix,
    };
    Output::with_text(&report, &a.out, matrix.to_text())
}
