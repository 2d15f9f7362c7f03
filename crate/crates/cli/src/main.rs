//! `kcsim` command-line interface.
//!
//! Exit codes: 0 success, 2 malformed input, 3 not found, 4 undefined
//! result, 5 provider failure.

mod error;

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::str::FromStr;

use clap::{Parser, Subcommand, ValueEnum};
use kcsim::compressor::{
    approx_complexity_with_q, compress_with, BitString, ComplexityScore, KeyDictionary, KeySharing, Model,
    NibbleCompressor,
};
use kcsim::corpus::{load_corpus, CorpusIndex, HitProvider, HitTable, OmegaMode, Provider, TokenizerConfig};
use kcsim::distances::{evaluate_counts, ncd, ncd_inputs, nid, CountOptions, NcdMode, SimilarityKind};
use kcsim::relations::{
    build_matrix, cluster, export_matrix, import_values, legend_text, parse_objects, provenance_tsv, Linkage,
    MatrixOptions, Stop, TsvFormat,
};
use kcsim::{display6, Rational};

use error::{CliError, PROVIDER_FAILURE};

#[derive(Parser)]
#[command(name = "kcsim", version, about = "Compression and hit-count similarity toolkit")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Compress a bit string with the nibble-key scheme and report K_P.
    Compress(CompressArgs),
    /// NCD and NID of two bit strings.
    Ncd(NcdArgs),
    /// Similarity of two terms from a hit-count provider.
    Sim(SimArgs),
    /// Relation matrix over a list of named objects.
    Matrix(MatrixArgs),
    /// Build and persist a corpus index.
    Index(IndexArgs),
    /// Agglomerative grouping of a values TSV.
    Cluster(ClusterArgs),
}

#[derive(Clone, Copy, ValueEnum)]
enum Sharing {
    Value,
    Symbol,
}

impl From<Sharing> for KeySharing {
    fn from(s: Sharing) -> Self {
        match s {
            Sharing::Value => KeySharing::ByValue,
            Sharing::Symbol => KeySharing::BySymbol,
        }
    }
}

#[derive(Parser)]
struct CompressArgs {
    /// Bit string file: `0`/`1` characters, whitespace ignored.
    input: PathBuf,
    /// Keys of another string; shared keys are not transmitted.
    #[arg(long, conflicts_with = "preset")]
    keys: Option<PathBuf>,
    /// How `--keys` decides a key is shared.
    #[arg(long, value_enum, default_value = "value")]
    sharing: Sharing,
    /// Dictionary used as the full model and transmitted in full.
    #[arg(long)]
    preset: Option<PathBuf>,
    /// Read the input as raw bytes instead of bit text.
    #[arg(long)]
    bytes: bool,
    /// Program-length term added to K_P.
    #[arg(long, default_value_t = 0.0)]
    q: f64,
}

#[derive(Clone, Copy, ValueEnum)]
enum Mode {
    Conditional,
    Concat,
}

#[derive(Parser)]
struct NcdArgs {
    x: PathBuf,
    y: PathBuf,
    /// Model for y: compress y with it as a preset and condition x on it.
    #[arg(long)]
    y_keys: Option<PathBuf>,
    #[arg(long, value_enum, default_value = "value")]
    sharing: Sharing,
    #[arg(long, value_enum, default_value = "conditional")]
    mode: Mode,
}

#[derive(Clone)]
enum ProviderSpec {
    Index(PathBuf),
    Table(PathBuf),
}

impl FromStr for ProviderSpec {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        match s.split_once(':') {
            Some(("index", p)) if !p.is_empty() => Ok(ProviderSpec::Index(p.into())),
            Some(("table", p)) if !p.is_empty() => Ok(ProviderSpec::Table(p.into())),
            _ => Err("expected index:<path> or table:<path>".into()),
        }
    }
}

#[derive(Parser)]
struct SimArgs {
    /// `index:<path>` or `table:<path>`.
    #[arg(long)]
    provider: ProviderSpec,
    #[arg(long)]
    kind: SimilarityKind,
    /// Index size N for NGD; overrides the provider's value.
    #[arg(long)]
    ngd_n: Option<u64>,
    /// Constant added to the Dice form.
    #[arg(long, default_value_t = 0.0)]
    dice_offset: f64,
    term_x: String,
    term_y: String,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Values,
    Categories,
}

impl From<Format> for TsvFormat {
    fn from(f: Format) -> Self {
        match f {
            Format::Values => TsvFormat::Values,
            Format::Categories => TsvFormat::Categories,
        }
    }
}

#[derive(Parser)]
struct MatrixArgs {
    /// CSV `id,display_name,group`; rows, and columns unless `--cols` is given.
    #[arg(long)]
    objects: PathBuf,
    #[arg(long)]
    cols: Option<PathBuf>,
    #[arg(long)]
    provider: ProviderSpec,
    #[arg(long, default_value = "metric-m")]
    kind: SimilarityKind,
    #[arg(long)]
    ngd_n: Option<u64>,
    /// Output prefix: writes `<out>.values.tsv`, `<out>.categories.tsv`,
    /// `<out>.legend.txt` and `<out>.provenance.tsv`.
    #[arg(long)]
    out: PathBuf,
    /// Also print this grid to stdout.
    #[arg(long, value_enum)]
    format: Option<Format>,
}

#[derive(Clone, Copy, ValueEnum)]
enum Omega {
    TermOccurrences,
    Vocabulary,
    Documents,
}

#[derive(Parser)]
struct IndexArgs {
    /// Directory of text files or a JSONL file of `{id, text}` objects.
    corpus: PathBuf,
    #[arg(long)]
    out: PathBuf,
    #[arg(long, value_enum, default_value = "term-occurrences")]
    omega: Omega,
    #[arg(long)]
    keep_case: bool,
    #[arg(long)]
    keep_punctuation: bool,
}

#[derive(Parser)]
struct ClusterArgs {
    /// Values TSV as written by `matrix`.
    values: PathBuf,
    #[arg(long, default_value = "average")]
    linkage: Linkage,
    #[arg(long, conflicts_with = "threshold", required_unless_present = "threshold")]
    k: Option<usize>,
    /// Merge while 1 - similarity is at most this.
    #[arg(long)]
    threshold: Option<f64>,
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).init();
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Compress(a) => cmd_compress(a),
        Command::Ncd(a) => cmd_ncd(a),
        Command::Sim(a) => cmd_sim(a),
        Command::Matrix(a) => cmd_matrix(a),
        Command::Index(a) => cmd_index(a),
        Command::Cluster(a) => cmd_cluster(a),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            e.exit_code()
        }
    }
}

fn read_text(path: &Path) -> Result<String, CliError> {
    fs::read_to_string(path).map_err(|e| CliError::malformed(format!("{}: {e}", path.display())))
}

fn read_bits(path: &Path, raw: bool) -> Result<BitString, CliError> {
    let bits = if raw {
        let bytes = fs::read(path).map_err(|e| CliError::malformed(format!("{}: {e}", path.display())))?;
        BitString::from_bytes(&bytes)
    } else {
        read_text(path)?.parse()?
    };
    if bits.is_empty() {
        return Err(CliError::malformed("empty bitstring"));
    }
    Ok(bits)
}

fn read_keys(path: &Path) -> Result<KeyDictionary, CliError> {
    Ok(KeyDictionary::parse(&read_text(path)?)?)
}

fn cmd_compress(args: CompressArgs) -> Result<(), CliError> {
    let w = read_bits(&args.input, args.bytes)?;
    let keys = args.keys.as_deref().map(read_keys).transpose()?;
    let preset = args.preset.as_deref().map(read_keys).transpose()?;
    let model = match (&keys, &preset) {
        (Some(k), _) => Model::Given(k, args.sharing.into()),
        (None, Some(p)) => Model::Preset(p),
        (None, None) => Model::Auto,
    };
    let form = compress_with(&w, model)?;
    let score: ComplexityScore<f64> = approx_complexity_with_q(&w, model, args.q)?;

    let mut out = std::io::stdout().lock();
    let compressed = form.compressed_length_bits();
    let k_p = display6(score.value);
    let name = args
        .input
        .file_stem()
        .map(|s| s.to_string_lossy().into_owned())
        .unwrap_or_default();
    let entries: Vec<String> = form.emitted_dictionary().iter().map(|e| e.to_string()).collect();
    let write = |out: &mut dyn Write| -> std::io::Result<()> {
        writeln!(out, "{compressed} {} {k_p}", w.len())?;
        writeln!(out, "w\tKey\tC(w)\t|C(w)|\t|w|\tK_P(w)")?;
        let first_key = entries.first().map(String::as_str).unwrap_or("");
        writeln!(out, "{name}\t{first_key}\t{form}\t{compressed}\t{}\t{k_p}", w.len())?;
        for e in entries.iter().skip(1) {
            writeln!(out, "\t{e}")?;
        }
        Ok(())
    };
    write(&mut out).map_err(|e| CliError::malformed(e.to_string()))
}

fn cmd_ncd(args: NcdArgs) -> Result<(), CliError> {
    let x = read_bits(&args.x, false)?;
    let y = read_bits(&args.y, false)?;
    let sharing: KeySharing = args.sharing.into();
    let mode = match args.mode {
        Mode::Conditional => NcdMode::Conditional,
        Mode::Concat => NcdMode::Concatenation,
    };
    let compressor = NibbleCompressor { sharing };
    let mut inputs = ncd_inputs(&compressor, &x, &y, mode)?;
    let y_keys = args.y_keys.as_deref().map(read_keys).transpose()?;
    if let (Some(keys), NcdMode::Conditional) = (&y_keys, mode) {
        inputs.c_y = compress_with(&y, Model::Preset(keys))?.compressed_length_bits();
        inputs.c_joint = compress_with(&x, Model::Given(keys, sharing))?.compressed_length_bits();
    }
    let value = ncd::<Rational>(inputs.c_x, inputs.c_y, inputs.c_joint)?;
    let k_x = Rational::new(inputs.c_x as i64, x.len() as i64);
    let k_y = Rational::new(inputs.c_y as i64, y.len() as i64);
    let k_xy = Rational::new(inputs.c_joint as i64, x.len() as i64);
    let nid_value = nid(k_x, k_y, k_xy)?;
    println!(
        "c_x={} c_y={} c_joint={} ncd={} nid={}",
        inputs.c_x, inputs.c_y, inputs.c_joint, value, nid_value
    );
    Ok(())
}

fn load_provider(spec: &ProviderSpec) -> Result<Provider, CliError> {
    let failed = |path: &Path, e: kcsim::corpus::CorpusError| {
        CliError::new(
            PROVIDER_FAILURE,
            format!("cannot load provider {}: {e}", path.display()),
        )
    };
    match spec {
        ProviderSpec::Index(path) => {
            let file = fs::File::open(path).map_err(|e| failed(path, e.into()))?;
            CorpusIndex::read_from(std::io::BufReader::new(file))
                .map(Provider::Index)
                .map_err(|e| failed(path, e))
        }
        ProviderSpec::Table(path) => HitTable::load(path).map(Provider::Table).map_err(|e| failed(path, e)),
    }
}

fn require_count_kind(kind: SimilarityKind) -> Result<(), CliError> {
    if kind.uses_hit_counts() {
        Ok(())
    } else {
        Err(CliError::malformed(format!(
            "{kind} works on compressed lengths; use the `ncd` subcommand"
        )))
    }
}

fn cmd_sim(args: SimArgs) -> Result<(), CliError> {
    require_count_kind(args.kind)?;
    let provider = load_provider(&args.provider)?;
    let x = provider.term(&args.term_x)?;
    let y = provider.term(&args.term_y)?;
    let h = provider.hit_counts(&x, &y)?;
    let options = CountOptions {
        n_total: args.ngd_n,
        dice_offset: args.dice_offset,
    };
    let score = evaluate_counts(args.kind, &h, &options)?;
    println!("f_x={} f_y={} f_xy={} {}={}", h.f_x, h.f_y, h.f_xy, args.kind, score);
    Ok(())
}

fn write_file(path: &Path, text: &str) -> Result<(), CliError> {
    fs::write(path, text).map_err(|e| CliError::malformed(format!("{}: {e}", path.display())))
}

fn with_suffix(prefix: &Path, suffix: &str) -> PathBuf {
    let mut s = prefix.as_os_str().to_owned();
    s.push(suffix);
    PathBuf::from(s)
}

fn cmd_matrix(args: MatrixArgs) -> Result<(), CliError> {
    require_count_kind(args.kind)?;
    let rows = parse_objects(&read_text(&args.objects)?)?;
    let cols = match &args.cols {
        Some(path) => parse_objects(&read_text(path)?)?,
        None => rows.clone(),
    };
    let provider = load_provider(&args.provider)?;
    let options = MatrixOptions {
        counts: CountOptions {
            n_total: args.ngd_n,
            dice_offset: 0.0,
        },
    };
    let matrix = build_matrix(&rows, &cols, &provider, args.kind, &options)?;

    let values = export_matrix(&matrix, TsvFormat::Values);
    let categories = export_matrix(&matrix, TsvFormat::Categories);
    write_file(&with_suffix(&args.out, ".values.tsv"), &values)?;
    write_file(&with_suffix(&args.out, ".categories.tsv"), &categories)?;
    write_file(&with_suffix(&args.out, ".legend.txt"), &legend_text())?;
    write_file(&with_suffix(&args.out, ".provenance.tsv"), &provenance_tsv(&matrix))?;

    match args.format {
        Some(Format::Values) => print!("{values}"),
        Some(Format::Categories) => print!("{categories}"),
        None => {}
    }
    for id in matrix.unresolved() {
        eprintln!("warning: object {id} could not be resolved by the provider");
    }
    eprintln!(
        "{}x{} matrix, {} defined cells, {} provider failures",
        matrix.rows().len(),
        matrix.cols().len(),
        matrix.defined_count(),
        matrix.failure_count()
    );
    if matrix.is_total_failure() {
        return Err(CliError::new(PROVIDER_FAILURE, "provider failed for every cell"));
    }
    Ok(())
}

fn cmd_index(args: IndexArgs) -> Result<(), CliError> {
    let docs = load_corpus(&args.corpus).map_err(|e| CliError::malformed(format!("{}: {e}", args.corpus.display())))?;
    let config = TokenizerConfig {
        case_fold: !args.keep_case,
        strip_punctuation: !args.keep_punctuation,
    };
    let omega = match args.omega {
        Omega::TermOccurrences => OmegaMode::TermOccurrences,
        Omega::Vocabulary => OmegaMode::VocabularySize,
        Omega::Documents => OmegaMode::DocumentCount,
    };
    let mut builder = kcsim::corpus::IndexBuilder::new(config).omega_mode(omega);
    for (id, text) in &docs {
        builder.add_document(id.clone(), text)?;
    }
    let index = builder.build()?;
    write_file(&args.out, &String::from_utf8_lossy(&index.to_bytes()))?;
    let psi = index.psi();
    let omega_cardinality = index.omega_cardinality();
    println!(
        "docs={} vocab={} omega={omega_cardinality} psi={psi}",
        index.document_count(),
        index.vocabulary_size()
    );
    if psi < omega_cardinality {
        eprintln!("note: psi < omega for this corpus");
    }
    Ok(())
}

fn cmd_cluster(args: ClusterArgs) -> Result<(), CliError> {
    let matrix = import_values(&read_text(&args.values)?)?;
    let stop = match (args.k, args.threshold) {
        (Some(k), _) => Stop::Clusters(k),
        (None, Some(t)) => Stop::Threshold(t),
        (None, None) => unreachable!("clap requires one of --k/--threshold"),
    };
    let clustering = cluster(&matrix, args.linkage, stop)?;
    for m in &clustering.merges {
        println!("merge\t{}\t{}\t{:.6}\t{}", m.left, m.right, m.distance, m.size);
    }
    for (i, g) in clustering.groups.iter().enumerate() {
        println!("group\t{}\t{}", i + 1, g.join(","));
    }
    Ok(())
}
