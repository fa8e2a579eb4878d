use std::fs;
use std::path::Path;
use std::process::{Command, Output};

use final25519::harness::RFC8032_VECTORS;
use final25519::scalar::Scalar;
use final25519::sha512::Sha512;
use final25519::signer::{hram, KeyPair};

fn bin(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_final25519")).args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn field<'a>(text: &'a str, label: &str) -> &'a str {
    let prefix = format!("{label}: ");
    text.lines()
        .find_map(|l| l.strip_prefix(prefix.as_str()))
        .unwrap_or_else(|| panic!("no {label} line in\n{text}"))
}

fn s(p: &Path) -> &str {
    p.to_str().unwrap()
}

#[test]
fn keygen_sign_verify_roundtrip_on_rfc_vector() {
    let v = &RFC8032_VECTORS[0];
    let dir = tempfile::tempdir().unwrap();
    let key = dir.path().join("k");
    let msg = dir.path().join("m");
    fs::write(&msg, hex::decode(v.message).unwrap()).unwrap();

    let o = bin(&["keygen", "--seed", v.seed, "--out", s(&key)]);
    assert!(o.status.success());
    assert_eq!(stdout(&o).trim(), v.public);
    let pub_path = dir.path().join("k.pub");
    assert_eq!(fs::read_to_string(&pub_path).unwrap().trim(), v.public);

    let o = bin(&["sign", "--key", s(&key), "--msg", s(&msg)]);
    assert!(o.status.success());
    let sig = stdout(&o).trim().to_string();
    assert_eq!(sig, v.signature);

    let o = bin(&["verify", "--pub", s(&pub_path), "--msg", s(&msg), "--sig", &sig]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o).trim(), "VALID");

    let sig_file = dir.path().join("sig");
    fs::write(&sig_file, &sig).unwrap();
    let o = bin(&["verify", "--pub", s(&pub_path), "--msg", s(&msg), "--sig", s(&sig_file)]);
    assert_eq!(o.status.code(), Some(0));

    let mut tampered = hex::decode(&sig).unwrap();
    tampered[40] ^= 1;
    let o =
        bin(&["verify", "--pub", s(&pub_path), "--msg", s(&msg), "--sig", &hex::encode(tampered)]);
    assert_eq!(o.status.code(), Some(1));
    assert_eq!(stdout(&o).trim(), "INVALID");

    let o = bin(&["verify", "--pub", s(&pub_path), "--msg", s(&msg), "--sig", &sig[..126]]);
    assert_eq!(o.status.code(), Some(2));
    let o = bin(&["verify", "--pub", s(&pub_path), "--msg", s(&msg), "--sig", "zz"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn malformed_key_files_exit_2() {
    let dir = tempfile::tempdir().unwrap();
    let key = dir.path().join("k");
    let msg = dir.path().join("m");
    fs::write(&key, "abcd\n").unwrap();
    fs::write(&msg, b"hi").unwrap();
    assert_eq!(bin(&["sign", "--key", s(&key), "--msg", s(&msg)]).status.code(), Some(2));
    let missing = dir.path().join("nope");
    assert_eq!(bin(&["sign", "--key", s(&missing), "--msg", s(&msg)]).status.code(), Some(2));
    assert_eq!(bin(&["keygen", "--seed", "00", "--out", s(&key)]).status.code(), Some(2));
}

#[test]
fn harness_outcomes_and_exit_codes() {
    let o = bin(&["harness", "--suite", "determinism", "--target", "correct"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("suite determinism target correct: PASS"));

    let o = bin(&["harness", "--suite", "determinism", "--target", "vulnerable"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).contains("suite determinism target vulnerable: FAIL"));

    let o = bin(&["harness", "--suite", "rfc-vectors", "--target", "vulnerable"]);
    assert_eq!(o.status.code(), Some(0));

    assert_eq!(bin(&["harness", "--suite", "bogus", "--target", "correct"]).status.code(), Some(2));
    assert_eq!(bin(&["harness", "--suite", "rfc-vectors", "--target", "x"]).status.code(), Some(2));
    assert_eq!(bin(&["no-such-command"]).status.code(), Some(2));
}

#[test]
fn attack_demo_is_deterministic_and_consistent() {
    let seed = "11".repeat(32);
    let a = bin(&["attack", "--demo", "--seed", &seed]);
    let b = bin(&["attack", "--demo", "--seed", &seed]);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
    let text = stdout(&a);
    assert!(text.contains("RECOVERED"));
    assert!(text.contains("FORGERY VERIFIES"));
    assert_eq!(field(&text, "recovered a"), field(&text, "expected a (clamped secret mod l)"));

    let scalar = |label| {
        let bytes: [u8; 32] = hex::decode(field(&text, label)).unwrap().try_into().unwrap();
        Scalar::from_canonical_bytes(bytes).unwrap()
    };
    let (s1, s2, h, r) = (scalar("S1"), scalar("S2"), scalar("hram"), scalar("recovered r"));
    assert_eq!(s2, Scalar::mul_add(&h, &s1, &r));
}

#[test]
fn vuln_sign_feeds_attack() {
    let dir = tempfile::tempdir().unwrap();
    let key = dir.path().join("k");
    let msg = dir.path().join("m");
    let forge = dir.path().join("f");
    fs::write(&msg, b"pay 10 coins").unwrap();
    fs::write(&forge, b"pay 10000 coins").unwrap();
    let seed = "42".repeat(32);
    let public = stdout(&bin(&["keygen", "--seed", &seed, "--out", s(&key)])).trim().to_string();

    let o = bin(&["vuln-sign", "--key", s(&key), "--msg", s(&msg), "--count", "2"]);
    assert!(o.status.success());
    assert!(String::from_utf8_lossy(&o.stderr).contains("warning"));
    let sigs: Vec<String> = stdout(&o).lines().map(str::to_string).collect();
    assert_eq!(sigs.len(), 2);

    let pub_path = dir.path().join("k.pub");
    let verify =
        |sig: &str| bin(&["verify", "--pub", s(&pub_path), "--msg", s(&msg), "--sig", sig]);
    assert_eq!(verify(&sigs[0]).status.code(), Some(0));
    assert_eq!(verify(&sigs[1]).status.code(), Some(1));

    let args =
        ["attack", "--pub", &public, "--msg", s(&msg), "--sig1", &sigs[0], "--sig2", &sigs[1]];
    let quiet = bin(&[&args[..], &["--forge-msg", s(&forge)]].concat());
    assert_eq!(quiet.status.code(), Some(0));
    let quiet_text = stdout(&quiet);
    assert!(quiet_text.contains("RECOVERED"));
    assert!(!quiet_text.contains("recovered a"));
    assert!(!quiet_text.contains("recovered r"));

    let kp = KeyPair::from_seed(&hex::decode(&seed).unwrap()).unwrap();
    let secret_hex = hex::encode(kp.secret_scalar().reduce().as_bytes());
    assert!(!quiet_text.contains(&secret_hex));
    assert!(!quiet_text.contains(&seed));

    let forged = field(&quiet_text, "forged signature");
    let o = bin(&["verify", "--pub", s(&pub_path), "--msg", s(&forge), "--sig", forged]);
    assert_eq!(o.status.code(), Some(0));

    let loud = bin(&[&args[..], &["--reveal"]].concat());
    assert_eq!(loud.status.code(), Some(0));
    assert_eq!(field(&stdout(&loud), "recovered a"), secret_hex);
}

#[test]
fn attack_output_matches_library() {
    let dir = tempfile::tempdir().unwrap();
    let msg_path = dir.path().join("m");
    let msg = b"golden transcript";
    fs::write(&msg_path, msg).unwrap();
    let kp = KeyPair::from_seed(&[0x5a; 32]).unwrap();
    let mut signer = final25519::insecure_demo::VulnerableSigner::new(&kp);
    let sig1 = signer.sign(msg);
    let sig2 = signer.sign(msg);

    let o = bin(&[
        "attack",
        "--pub",
        &hex::encode(kp.public()),
        "--msg",
        s(&msg_path),
        "--sig1",
        &hex::encode(sig1.to_bytes()),
        "--sig2",
        &hex::encode(sig2.to_bytes()),
        "--reveal",
    ]);
    let text = stdout(&o);
    let h = hram(&sig1.r_encoded, kp.public(), msg);
    let r = {
        let mut d = Sha512::new();
        d.update(&kp.hashed()[32..]).update(msg);
        Scalar::reduce512(&d.finalize()).unwrap()
    };
    let expected = [
        format!("public: {}", hex::encode(kp.public())),
        format!("message: {}", hex::encode(msg)),
        format!("sig1: {}", hex::encode(sig1.to_bytes())),
        format!("sig2: {}", hex::encode(sig2.to_bytes())),
        format!("R: {}", hex::encode(sig1.r_encoded)),
        format!("S1: {}", hex::encode(sig1.s)),
        format!("S2: {}", hex::encode(sig2.s)),
        format!("hram: {}", hex::encode(h.as_bytes())),
        format!("recovered r: {}", hex::encode(r.as_bytes())),
        format!("recovered a: {}", hex::encode(kp.secret_scalar().reduce().as_bytes())),
        "RECOVERED (a * B matches the public key)".to_string(),
    ]
    .join("\n")
        + "\n";
    assert_eq!(text, expected);
}

#[test]
fn attack_rejects_mismatched_transcripts() {
    let dir = tempfile::tempdir().unwrap();
    let msg_path = dir.path().join("m");
    fs::write(&msg_path, b"x").unwrap();
    let kp = KeyPair::from_seed(&[3; 32]).unwrap();
    let a = hex::encode(kp.sign(b"x").to_bytes());
    let b = hex::encode(kp.sign(b"y").to_bytes());
    let pk = hex::encode(kp.public());
    let o = bin(&["attack", "--pub", &pk, "--msg", s(&msg_path), "--sig1", &a, "--sig2", &b]);
    assert_eq!(o.status.code(), Some(1));
    let o = bin(&["attack", "--pub", &pk, "--msg", s(&msg_path), "--sig1", &a, "--sig2", "00"]);
    assert_eq!(o.status.code(), Some(2));
}
