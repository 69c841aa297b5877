use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use chss::hash::{STD_V1, TEST_IDENTITY};
use chss::io::{detect, AnyFile, ShareFile};
use chss::oracle::{verify_config, VerifyOptions};
use chss::{split_with_transcript, Error, HashFamily, HierarchyConfig, Polynomial, PrimeModulus, PublicBulletin, Secret};
use clap::{Parser, Subcommand};
use rand::SeedableRng;
use rand_chacha::ChaCha20Rng;

#[derive(Parser)]
#[command(name = "chss", version, about = "Conjunctive hierarchical secret sharing over F_p[x]")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Generate moduli for a hierarchy and write the config file.
    Setup {
        #[arg(long)]
        p: u64,
        #[arg(long)]
        d0: usize,
        /// Level sizes, comma separated.
        #[arg(long, value_delimiter = ',', required = true)]
        levels: Vec<usize>,
        #[arg(long, value_delimiter = ',', required = true)]
        thresholds: Vec<usize>,
        /// Moduli degrees d_1..d_n, nondecreasing.
        #[arg(long, value_delimiter = ',', required = true)]
        degrees: Vec<usize>,
        #[arg(long)]
        out: PathBuf,
        #[arg(long)]
        seed: Option<u64>,
    },
    /// Deal a secret: one share file per participant plus the bulletin.
    Split {
        #[arg(long)]
        config: PathBuf,
        /// Secret coefficients, lowest degree first, comma separated.
        #[arg(long)]
        secret: String,
        #[arg(long)]
        out_dir: PathBuf,
        #[arg(long)]
        seed: Option<u64>,
        /// Overrides the config's hash family.
        #[arg(long)]
        hash_family: Option<String>,
        /// Required to deal with the invertible test-identity family.
        #[arg(long)]
        unsafe_test_hash: bool,
        /// Also write the dealer's transcript.
        #[arg(long)]
        debug_transcript: bool,
    },
    /// Recover the secret from a bulletin and share files.
    Reconstruct {
        #[arg(long)]
        bulletin: PathBuf,
        #[arg(required = true)]
        shares: Vec<PathBuf>,
    },
    /// Exhaustively check the counting identities for every worst-case unauthorized set.
    Verify {
        #[arg(long)]
        config: PathBuf,
        /// Trials for the condition (IV) estimate.
        #[arg(long, default_value_t = 1000)]
        trials: usize,
        #[arg(long)]
        condition_iv: bool,
        /// Random secrets dealt per unauthorized set.
        #[arg(long, default_value_t = 10)]
        secrets: usize,
        /// Tamper with the bulletin after dealing (negative control).
        #[arg(long)]
        corrupt: bool,
        #[arg(long)]
        seed: Option<u64>,
    },
    /// Print the contents of a config, share or bulletin file.
    Inspect { path: PathBuf },
    /// Run a small end-to-end check.
    Selftest,
}

const EXIT_IDENTITY: u8 = 1;
const EXIT_NOT_AUTHORIZED: u8 = 2;
const EXIT_BINDING: u8 = 3;
const EXIT_PARSE: u8 = 4;
const EXIT_BUDGET: u8 = 5;

struct Failure {
    code: u8,
    message: String,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = match &e {
            Error::NotAuthorized { .. } | Error::InsufficientShares { .. } => EXIT_NOT_AUTHORIZED,
            Error::BindingMismatch { .. } | Error::HashFamilyMismatch { .. } => EXIT_BINDING,
            Error::Parse { .. } | Error::MalformedConfig(_) => EXIT_PARSE,
            Error::BudgetExceeded(_) => EXIT_BUDGET,
            _ => EXIT_IDENTITY,
        };
        Failure {
            code,
            message: e.to_string(),
        }
    }
}

fn fail(code: u8, message: impl Into<String>) -> Failure {
    Failure {
        code,
        message: message.into(),
    }
}

type CmdResult = Result<(), Failure>;

fn rng(seed: Option<u64>) -> ChaCha20Rng {
    match seed {
        Some(s) => ChaCha20Rng::seed_from_u64(s),
        None => ChaCha20Rng::from_entropy(),
    }
}

fn read(path: &Path) -> Result<String, Failure> {
    fs::read_to_string(path).map_err(|e| fail(EXIT_PARSE, format!("{}: {e}", path.display())))
}

fn write(path: &Path, text: &str) -> CmdResult {
    fs::write(path, format!("{text}\n")).map_err(|e| fail(EXIT_IDENTITY, format!("{}: {e}", path.display())))
}

fn with_path<T>(path: &Path, r: chss::Result<T>) -> Result<T, Failure> {
    r.map_err(|e| {
        let mut f = Failure::from(e);
        f.message = format!("{}: {}", path.display(), f.message);
        f
    })
}

fn load_config(path: &Path) -> Result<HierarchyConfig, Failure> {
    let text = read(path)?;
    with_path(path, HierarchyConfig::from_json(&text))
}

fn cmd_setup(
    p: u64,
    d0: usize,
    levels: Vec<usize>,
    thresholds: Vec<usize>,
    degrees: Vec<usize>,
    out: &Path,
    seed: Option<u64>,
) -> CmdResult {
    let field = PrimeModulus::new(p)?;
    let n: usize = levels.iter().sum();
    if degrees.len() != n {
        return Err(fail(EXIT_IDENTITY, format!("{n} participants but {} degrees", degrees.len())));
    }
    let shape = HierarchyConfig::check_shape(d0, &levels, &thresholds, &degrees);
    if !shape.is_valid() {
        return Err(fail(EXIT_IDENTITY, format!("invalid config: {shape}")));
    }
    let mut rng = rng(seed);
    let cfg = HierarchyConfig::generate(field, d0, levels, thresholds, &degrees, STD_V1, &mut rng)?;
    let report = cfg.validate();
    if !report.is_valid() {
        return Err(fail(EXIT_IDENTITY, format!("invalid config: {report}")));
    }
    write(out, &cfg.to_json())?;
    println!("validation: {report}");
    println!("wrote {}", out.display());
    Ok(())
}

#[allow(clippy::too_many_arguments)]
fn cmd_split(
    config: &Path,
    secret: &str,
    out_dir: &Path,
    seed: Option<u64>,
    hash_family: Option<String>,
    unsafe_test_hash: bool,
    debug_transcript: bool,
) -> CmdResult {
    let mut cfg = load_config(config)?;
    if let Some(id) = hash_family {
        cfg = cfg.with_hash_family(id);
    }
    if cfg.hash_family() == TEST_IDENTITY && !unsafe_test_hash {
        return Err(fail(
            EXIT_IDENTITY,
            "the test-identity hash family is invertible; pass --unsafe-test-hash to use it",
        ));
    }
    let report = cfg.validate();
    if !report.is_valid() {
        return Err(fail(EXIT_IDENTITY, format!("invalid config: {report}")));
    }
    let family = HashFamily::new(cfg.hash_family(), cfg.p(), cfg.levels())?;
    let s = Polynomial::parse(cfg.p(), secret)?;
    let s = Secret::new(s, cfg.d0())?;
    let mut rng = rng(seed);
    let (shares, bulletin, transcript) = split_with_transcript(&s, &cfg, &family, &mut rng)?;
    fs::create_dir_all(out_dir).map_err(|e| fail(EXIT_IDENTITY, format!("{}: {e}", out_dir.display())))?;
    write(&out_dir.join("bulletin.json"), &bulletin.to_json())?;
    for share in &shares {
        let path = out_dir.join(format!("share-{}.json", share.participant));
        write(&path, &share.to_json(&bulletin)?)?;
    }
    if debug_transcript {
        write(&out_dir.join("transcript.json"), &transcript.to_json())?;
    }
    println!("wrote {} share files and bulletin.json to {}", shares.len(), out_dir.display());
    Ok(())
}

fn cmd_reconstruct(bulletin_path: &Path, share_paths: &[PathBuf]) -> CmdResult {
    let bulletin = with_path(bulletin_path, PublicBulletin::from_json(&read(bulletin_path)?))?;
    let family = bulletin.family()?;
    let mut shares = Vec::with_capacity(share_paths.len());
    for path in share_paths {
        let file = with_path(path, ShareFile::from_json(&read(path)?))?;
        shares.push(with_path(path, file.bind(&bulletin))?);
    }
    let secret = chss::reconstruct(&bulletin, &family, &shares)?;
    println!("{}", secret.poly());
    Ok(())
}

fn cmd_verify(
    config: &Path,
    trials: usize,
    condition_iv: bool,
    secrets: usize,
    corrupt: bool,
    seed: Option<u64>,
) -> CmdResult {
    let cfg = load_config(config)?;
    let report = cfg.validate();
    if !report.is_valid() {
        return Err(fail(EXIT_IDENTITY, format!("invalid config: {report}")));
    }
    let family = HashFamily::new(cfg.hash_family(), cfg.p(), cfg.levels())?;
    let options = VerifyOptions {
        secrets_per_set: secrets,
        condition_iv_trials: condition_iv.then_some(trials),
        corrupt,
    };
    let mut rng = rng(seed);
    let result = verify_config(&cfg, &family, &options, &mut rng)?;
    println!("{}", result.to_json());
    if result.all_hold() {
        Ok(())
    } else {
        Err(fail(EXIT_IDENTITY, "exact identities do not hold"))
    }
}

fn describe_config(cfg: &HierarchyConfig) {
    println!("field: F_{}", cfg.p());
    println!("d0: {}", cfg.d0());
    println!("levels: {:?}", cfg.level_sizes());
    println!("thresholds: {:?}", cfg.thresholds());
    println!("hash family: {}", cfg.hash_family());
    for i in 1..=cfg.participants() {
        println!(
            "  m_{i}: [{}] degree {} level {}",
            cfg.modulus_of(i),
            cfg.degree(i),
            cfg.level_of(i).expect("id in range")
        );
    }
    println!("validation: {}", cfg.validate());
}

fn cmd_inspect(path: &Path) -> CmdResult {
    let text = read(path)?;
    match with_path(path, detect(&text))? {
        AnyFile::Config(cfg) => {
            println!("config");
            describe_config(&cfg);
        }
        AnyFile::Share(file) => {
            println!("share");
            println!("participant: {}", file.participant);
            println!("level: {}", file.level);
            println!("coefficients: {}", file.coefficient_count());
            let degree = file
                .c
                .split(',')
                .map(|c| c.trim() != "0")
                .collect::<Vec<_>>()
                .iter()
                .rposition(|&nonzero| nonzero);
            match degree {
                Some(d) => println!("degree: {d}"),
                None => println!("degree: none (zero share)"),
            }
            println!("c: [{}]", file.c);
            println!("config digest: {}", file.config_digest);
        }
        AnyFile::Bulletin(b) => {
            println!("bulletin");
            describe_config(b.config());
            println!("config digest: {}", b.config_digest());
            println!("u entries: {}", b.entries().len());
            for (&(level, id), value) in b.entries() {
                println!("  u[{level},{id}] = [{value}] (degree < {})", b.config().degree(id));
            }
        }
    }
    Ok(())
}

fn cmd_selftest() -> CmdResult {
    let p = PrimeModulus::new(2)?;
    let moduli = vec![Polynomial::new(p, vec![1, 1])?, Polynomial::new(p, vec![1, 1, 1])?];
    let cfg = HierarchyConfig::new(p, 1, vec![1, 1], vec![1, 2], moduli, STD_V1)?;
    if !cfg.validate().is_valid() {
        return Err(fail(EXIT_IDENTITY, "selftest: reference config rejected"));
    }
    let family = HashFamily::new(STD_V1, p, cfg.levels())?;
    let mut rng = ChaCha20Rng::seed_from_u64(0);
    for v in 0..2 {
        let secret = Secret::new(Polynomial::new(p, vec![v])?, 1)?;
        let (shares, bulletin, _) = split_with_transcript(&secret, &cfg, &family, &mut rng)?;
        let back = PublicBulletin::from_json(&bulletin.to_json())?;
        let bound = shares
            .iter()
            .map(|s| ShareFile::from_json(&s.to_json(&bulletin)?)?.bind(&back))
            .collect::<chss::Result<Vec<_>>>()?;
        if chss::reconstruct(&back, &family, &bound)? != secret {
            return Err(fail(EXIT_IDENTITY, "selftest: round trip failed"));
        }
        if !matches!(chss::reconstruct(&back, &family, &bound[1..]), Err(Error::NotAuthorized { .. })) {
            return Err(fail(EXIT_IDENTITY, "selftest: unauthorized set accepted"));
        }
    }
    let report = verify_config(&cfg, &family, &VerifyOptions::default(), &mut rng)?;
    if !report.all_hold() {
        return Err(fail(EXIT_IDENTITY, "selftest: counting identities failed"));
    }
    println!("selftest ok");
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Setup {
            p,
            d0,
            levels,
            thresholds,
            degrees,
            out,
            seed,
        } => cmd_setup(p, d0, levels, thresholds, degrees, &out, seed),
        Command::Split {
            config,
            secret,
            out_dir,
            seed,
            hash_family,
            unsafe_test_hash,
            debug_transcript,
        } => cmd_split(&config, &secret, &out_dir, seed, hash_family, unsafe_test_hash, debug_transcript),
        Command::Reconstruct { bulletin, shares } => cmd_reconstruct(&bulletin, &shares),
        Command::Verify {
            config,
            trials,
            condition_iv,
            secrets,
            corrupt,
            seed,
        } => cmd_verify(&config, trials, condition_iv, secrets, corrupt, seed),
        Command::Inspect { path } => cmd_inspect(&path),
        Command::Selftest => cmd_selftest(),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            eprintln!("error: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}
