//! Command-line front end. Binary values cross this boundary as lowercase
//! hex; messages are raw files.
//!
//! Exit codes: 0 success / valid, 1 invalid signature or failed check,
//! 2 malformed input or usage error.

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand};
use rand::RngCore;

use crate::attack::{self, AttackTranscript, RecoveredKey};
use crate::edwards::EncodedPoint;
use crate::harness::{self, HarnessConfig, Suite, Target};
use crate::insecure_demo::VulnerableSigner;
use crate::sha512::Sha512;
use crate::signer::{verify_signature, KeyPair, Signature};

#[derive(Parser, Debug)]
#[command(
    name = "final25519",
    version,
    about = "Ed25519 signer, verifier and key-aliasing bug lab"
)]
pub struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Write a seed to PATH and the public key to PATH.pub.
    Keygen {
        /// 32-byte seed in hex; random if omitted.
        #[arg(long)]
        seed: Option<String>,
        #[arg(long)]
        out: PathBuf,
    },
    /// Sign a message file, printing the signature in hex.
    Sign {
        #[arg(long)]
        key: PathBuf,
        #[arg(long)]
        msg: PathBuf,
    },
    /// Verify a signature. Exit 0 if valid, 1 if invalid, 2 if malformed.
    Verify {
        #[arg(long = "pub")]
        public: PathBuf,
        #[arg(long)]
        msg: PathBuf,
        /// Signature hex, or a file containing it.
        #[arg(long)]
        sig: String,
    },
    /// INSECURE: print COUNT successive signatures from one aliasing signer.
    VulnSign {
        #[arg(long)]
        key: PathBuf,
        #[arg(long)]
        msg: PathBuf,
        #[arg(long, default_value_t = 2)]
        count: usize,
    },
    /// Recover the secret scalar from two aliasing-signer signatures of one
    /// message, or run the whole demonstration with --demo.
    Attack {
        #[arg(long = "pub", required_unless_present = "demo", conflicts_with = "demo")]
        public: Option<String>,
        #[arg(long, required_unless_present = "demo", conflicts_with = "demo")]
        msg: Option<PathBuf>,
        #[arg(long, required_unless_present = "demo", conflicts_with = "demo")]
        sig1: Option<String>,
        #[arg(long, required_unless_present = "demo", conflicts_with = "demo")]
        sig2: Option<String>,
        /// Forge a signature on this message with the recovered key.
        #[arg(long, conflicts_with = "demo")]
        forge_msg: Option<PathBuf>,
        /// Print recovered secret values.
        #[arg(long)]
        reveal: bool,
        /// Generate a key, sign one message twice with the aliasing signer,
        /// recover the key and forge. Always reveals.
        #[arg(long)]
        demo: bool,
        /// Seed for --demo, in hex; random if omitted.
        #[arg(long, requires = "demo")]
        seed: Option<String>,
    },
    /// Run a detection suite against a signer implementation.
    Harness {
        /// determinism, multimessage, field-differential, zero-regression or rfc-vectors
        #[arg(long)]
        suite: Suite,
        /// correct or vulnerable
        #[arg(long)]
        target: Target,
    },
}

#[derive(Debug)]
enum CliError {
    Malformed(String),
    Failed(String),
}

type CliResult = Result<i32, CliError>;

fn malformed(msg: impl Into<String>) -> CliError {
    CliError::Malformed(msg.into())
}

fn io_err(path: &Path, e: std::io::Error) -> CliError {
    malformed(format!("{}: {e}", path.display()))
}

/// Parses `args` (including the program name) and runs the command.
/// Returns the process exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let text = e.render().to_string();
            let _ = if e.use_stderr() { write!(err, "{text}") } else { write!(out, "{text}") };
            return code;
        }
    };
    match execute(cli.command, out, err) {
        Ok(code) => code,
        Err(CliError::Malformed(m)) => {
            let _ = writeln!(err, "error: {m}");
            2
        }
        Err(CliError::Failed(m)) => {
            let _ = writeln!(err, "error: {m}");
            1
        }
    }
}

fn execute(cmd: Command, out: &mut dyn Write, err: &mut dyn Write) -> CliResult {
    match cmd {
        Command::Keygen { seed, out: path } => keygen(seed.as_deref(), &path, out),
        Command::Sign { key, msg } => {
            let kp = read_key(&key)?;
            let msg = read_file(&msg)?;
            emit(out, &hex::encode(kp.sign(&msg).to_bytes()))?;
            Ok(0)
        }
        Command::Verify { public, msg, sig } => {
            let public: EncodedPoint = decode_hex_array(&read_text(&public)?, "public key")?;
            let msg = read_file(&msg)?;
            let sig_hex = if Path::new(&sig).is_file() { read_text(Path::new(&sig))? } else { sig };
            let sig = Signature::from_bytes(&decode_hex(&sig_hex, 64, "signature")?)
                .map_err(|e| malformed(e.to_string()))?;
            if verify_signature(&public, &msg, &sig) {
                emit(out, "VALID")?;
                Ok(0)
            } else {
                emit(out, "INVALID")?;
                Ok(1)
            }
        }
        Command::VulnSign { key, msg, count } => {
            let kp = read_key(&key)?;
            let msg = read_file(&msg)?;
            let _ = writeln!(
                err,
                "warning: aliasing signer, every signature after the first is broken"
            );
            let mut signer = VulnerableSigner::new(&kp);
            for _ in 0..count {
                emit(out, &hex::encode(signer.sign(&msg).to_bytes()))?;
            }
            Ok(0)
        }
        Command::Attack { demo: true, seed, .. } => attack_demo(seed.as_deref(), out),
        Command::Attack { public, msg, sig1, sig2, forge_msg, reveal, .. } => {
            let (public, msg, sig1, sig2) = match (public, msg, sig1, sig2) {
                (Some(p), Some(m), Some(s1), Some(s2)) => (p, m, s1, s2),
                _ => return Err(malformed("--pub, --msg, --sig1 and --sig2 are required")),
            };
            let transcript = AttackTranscript {
                public_key: decode_hex_array(&public, "public key")?,
                message: read_file(&msg)?,
                sig1: parse_sig(&sig1)?,
                sig2: parse_sig(&sig2)?,
            };
            let forge_msg = forge_msg.map(|p| read_file(&p)).transpose()?;
            run_attack(&transcript, forge_msg.as_deref(), reveal, out)
        }
        Command::Harness { suite, target } => {
            let report = harness::run_suite(suite, target, &HarnessConfig::default());
            emit(out, &report.to_string())?;
            Ok(if report.passed() { 0 } else { 1 })
        }
    }
}

fn keygen(seed: Option<&str>, path: &Path, out: &mut dyn Write) -> CliResult {
    let seed: [u8; 32] = match seed {
        Some(h) => decode_hex_array(h, "seed")?,
        None => {
            let mut s = [0u8; 32];
            rand::rngs::OsRng.fill_bytes(&mut s);
            s
        }
    };
    let kp = KeyPair::from_seed(&seed).map_err(|e| malformed(e.to_string()))?;
    fs::write(path, format!("{}\n", hex::encode(seed))).map_err(|e| io_err(path, e))?;
    let mut pub_path = path.as_os_str().to_owned();
    pub_path.push(".pub");
    let pub_path = PathBuf::from(pub_path);
    fs::write(&pub_path, format!("{}\n", hex::encode(kp.public())))
        .map_err(|e| io_err(&pub_path, e))?;
    emit(out, &hex::encode(kp.public()))?;
    Ok(0)
}

const DEMO_MESSAGE: &[u8] = b"one message, signed twice";
const DEMO_FORGE_MESSAGE: &[u8] = b"a message the key owner never signed";

fn attack_demo(seed: Option<&str>, out: &mut dyn Write) -> CliResult {
    let seed: [u8; 32] = match seed {
        Some(h) => decode_hex_array(h, "seed")?,
        None => {
            let mut s = [0u8; 32];
            rand::rngs::OsRng.fill_bytes(&mut s);
            s
        }
    };
    let kp = KeyPair::from_seed(&seed).expect("32-byte seed");
    let mut signer = VulnerableSigner::new(&kp);
    let sig1 = signer.sign(DEMO_MESSAGE);
    let sig2 = signer.sign(DEMO_MESSAGE);

    emit(out, &format!("seed: {}", hex::encode(seed)))?;
    emit(
        out,
        &format!(
            "expected a (clamped secret mod l): {}",
            hex::encode(kp.secret_scalar().reduce().as_bytes())
        ),
    )?;
    let transcript =
        AttackTranscript { public_key: *kp.public(), message: DEMO_MESSAGE.to_vec(), sig1, sig2 };
    let code = run_attack(&transcript, Some(DEMO_FORGE_MESSAGE), true, out)?;
    if code == 0 {
        let recovered = attack::recover(&transcript).expect("already recovered once");
        if recovered.a != kp.secret_scalar().reduce() {
            return Err(CliError::Failed("recovered scalar differs from the real one".into()));
        }
    }
    Ok(code)
}

fn run_attack(
    t: &AttackTranscript,
    forge_msg: Option<&[u8]>,
    reveal: bool,
    out: &mut dyn Write,
) -> CliResult {
    emit(out, &format!("public: {}", hex::encode(t.public_key)))?;
    emit(out, &format!("message: {}", hex::encode(&t.message)))?;
    emit(out, &format!("sig1: {}", hex::encode(t.sig1.to_bytes())))?;
    emit(out, &format!("sig2: {}", hex::encode(t.sig2.to_bytes())))?;
    emit(out, &format!("R: {}", hex::encode(t.sig1.r_encoded)))?;
    emit(out, &format!("S1: {}", hex::encode(t.sig1.s)))?;
    emit(out, &format!("S2: {}", hex::encode(t.sig2.s)))?;

    let key: RecoveredKey =
        attack::recover(t).map_err(|e| CliError::Failed(format!("attack failed: {e}")))?;
    emit(out, &format!("hram: {}", hex::encode(key.hram.as_bytes())))?;
    if reveal {
        emit(out, &format!("recovered r: {}", hex::encode(key.r.as_bytes())))?;
        emit(out, &format!("recovered a: {}", hex::encode(key.a.as_bytes())))?;
    }
    emit(out, "RECOVERED (a * B matches the public key)")?;

    if let Some(msg) = forge_msg {
        let mut d = Sha512::new();
        d.update(&t.sig2.to_bytes()).update(msg);
        let nonce_seed: [u8; 32] = d.finalize()[..32].try_into().unwrap();
        let forged = attack::forge(&key, &t.public_key, msg, &nonce_seed);
        emit(out, &format!("forge message: {}", hex::encode(msg)))?;
        emit(out, &format!("forged signature: {}", hex::encode(forged.to_bytes())))?;
        if verify_signature(&t.public_key, msg, &forged) {
            emit(out, "FORGERY VERIFIES")?;
        } else {
            emit(out, "FORGERY REJECTED")?;
            return Ok(1);
        }
    }
    Ok(0)
}

fn emit(out: &mut dyn Write, line: &str) -> Result<(), CliError> {
    writeln!(out, "{line}").map_err(|e| CliError::Failed(format!("write failed: {e}")))
}

fn read_file(path: &Path) -> Result<Vec<u8>, CliError> {
    fs::read(path).map_err(|e| io_err(path, e))
}

fn read_text(path: &Path) -> Result<String, CliError> {
    fs::read_to_string(path).map_err(|e| io_err(path, e))
}

fn read_key(path: &Path) -> Result<KeyPair, CliError> {
    let seed: [u8; 32] = decode_hex_array(&read_text(path)?, "key")?;
    KeyPair::from_seed(&seed).map_err(|e| malformed(e.to_string()))
}

fn parse_sig(s: &str) -> Result<Signature, CliError> {
    Signature::from_bytes(&decode_hex(s, 64, "signature")?).map_err(|e| malformed(e.to_string()))
}

fn decode_hex(s: &str, len: usize, what: &str) -> Result<Vec<u8>, CliError> {
    let bytes = hex::decode(s.trim()).map_err(|e| malformed(format!("{what}: {e}")))?;
    if bytes.len() != len {
        return Err(malformed(format!("{what}: expected {len} bytes, got {}", bytes.len())));
    }
    Ok(bytes)
}

fn decode_hex_array<const N: usize>(s: &str, what: &str) -> Result<[u8; N], CliError> {
    Ok(decode_hex(s, N, what)?.try_into().unwrap())
}
