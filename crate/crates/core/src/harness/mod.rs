//! Detection suites for signer implementations.
//!
//! Known-answer vectors check one signature from one fresh key, so they
//! cannot see a signer that only goes wrong from its second use. The
//! determinism and multi-message suites reuse one key on purpose. The field
//! suites exercise the arithmetic layer and do not depend on the target.

pub mod oracle;

use core::fmt;
use core::str::FromStr;

use num_bigint::BigUint;
use rand::{Rng, RngCore, SeedableRng};
use rand_chacha::ChaCha20Rng;

use crate::edwards::EncodedPoint;
use crate::field::legacy_unreduced::is_nonzero_naive_unreduced;
use crate::field::{FieldElement, LIMB_BOUND, NUM_LIMBS};
use crate::insecure_demo::VulnerableSigner;
use crate::signer::{verify_signature, KeyPair, Signature};

pub struct Rfc8032Vector {
    pub seed: &'static str,
    pub public: &'static str,
    pub message: &'static str,
    pub signature: &'static str,
}

/// The first three Ed25519 test vectors of RFC 8032, section 7.1.
pub const RFC8032_VECTORS: [Rfc8032Vector; 3] = [
    Rfc8032Vector {
        seed: "9d61b19deffd5a60ba844af492ec2cc44449c5697b326919703bac031cae7f60",
        public: "d75a980182b10ab7d54bfed3c964073a0ee172f3daa62325af021a68f707511a",
        message: "",
        signature: "e5564300c360ac729086e2cc806e828a84877f1eb8e5d974d873e06522490155\
                    5fb8821590a33bacc61e39701cf9b46bd25bf5f0595bbe24655141438e7a100b",
    },
    Rfc8032Vector {
        seed: "4ccd089b28ff96da9db6c346ec114e0f5b8a319f35aba624da8cf6ed4fb8a6fb",
        public: "3d4017c3e843895a92b70aa74d1b7ebc9c982ccf2ec4968cc0cd55f12af4660c",
        message: "72",
        signature: "92a009a9f0d4cab8720e820b5f642540a2b27b5416503f8fb3762223ebdb69da\
                    085ac1e43e15996e458f3613d0f11d8c387b2eaeb4302aeeb00d291612bb0c00",
    },
    Rfc8032Vector {
        seed: "c5aa8df43f9f837bedb7442f31dcb7b166d38535076f094b85ce3a2e0b4458f7",
        public: "fc51cd8e6218a1a38da47ed00230f0580816ed13ba3303ac5deb911548908025",
        message: "af82",
        signature: "6291d657deec24024827e69c3abe01a30ce548a284743a445e3680d7db5ac3ac\
                    18ff9b538d16f290ae67f760984dc6594a7c15e9716ed28dc027beceea1ec40a",
    },
];

/// A limb vector whose integer value is exactly q: a non-canonical zero.
pub const NON_CANONICAL_ZERO: [i32; NUM_LIMBS] = [
    67108845, 33554431, 67108863, 33554431, 67108863, 33554431, 67108863, 33554431, 67108863,
    33554431,
];

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Suite {
    Determinism,
    MultiMessage,
    FieldDifferential,
    ZeroRegression,
    RfcVectors,
}

impl Suite {
    pub const ALL: [Suite; 5] = [
        Suite::Determinism,
        Suite::MultiMessage,
        Suite::FieldDifferential,
        Suite::ZeroRegression,
        Suite::RfcVectors,
    ];

    pub fn name(&self) -> &'static str {
        match self {
            Suite::Determinism => "determinism",
            Suite::MultiMessage => "multimessage",
            Suite::FieldDifferential => "field-differential",
            Suite::ZeroRegression => "zero-regression",
            Suite::RfcVectors => "rfc-vectors",
        }
    }
}

impl FromStr for Suite {
    type Err = String;
    fn from_str(s: &str) -> Result<Suite, String> {
        Suite::ALL
            .into_iter()
            .find(|suite| suite.name() == s)
            .ok_or_else(|| format!("unknown suite `{s}`"))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Target {
    Correct,
    Vulnerable,
}

impl Target {
    pub fn name(&self) -> &'static str {
        match self {
            Target::Correct => "correct",
            Target::Vulnerable => "vulnerable",
        }
    }
}

impl FromStr for Target {
    type Err = String;
    fn from_str(s: &str) -> Result<Target, String> {
        match s {
            "correct" => Ok(Target::Correct),
            "vulnerable" => Ok(Target::Vulnerable),
            _ => Err(format!("unknown target `{s}`")),
        }
    }
}

/// A signer as seen by the suites: one key, signing repeatedly.
pub trait SignerUnderTest {
    fn public_key(&self) -> EncodedPoint;
    fn sign(&mut self, message: &[u8]) -> Signature;
}

impl SignerUnderTest for KeyPair {
    fn public_key(&self) -> EncodedPoint {
        *self.public()
    }
    fn sign(&mut self, message: &[u8]) -> Signature {
        KeyPair::sign(self, message)
    }
}

impl SignerUnderTest for VulnerableSigner {
    fn public_key(&self) -> EncodedPoint {
        *VulnerableSigner::public_key(self)
    }
    fn sign(&mut self, message: &[u8]) -> Signature {
        VulnerableSigner::sign(self, message)
    }
}

pub fn new_signer(target: Target, seed: &[u8; 32]) -> Box<dyn SignerUnderTest> {
    let kp = KeyPair::from_seed(seed).expect("32-byte seed");
    match target {
        Target::Correct => Box::new(kp),
        Target::Vulnerable => Box::new(VulnerableSigner::new(&kp)),
    }
}

#[derive(Clone, Debug)]
pub struct HarnessConfig {
    pub rng_seed: u64,
    /// Keys tried by the determinism suite.
    pub determinism_keys: usize,
    /// Signatures per key in the determinism suite.
    pub determinism_repeats: usize,
    pub multimessage_count: usize,
    pub field_cases: usize,
}

impl Default for HarnessConfig {
    fn default() -> Self {
        HarnessConfig {
            rng_seed: 0x5eed_2551_9f1a_1000,
            determinism_keys: 16,
            determinism_repeats: 3,
            multimessage_count: 64,
            field_cases: 10_000,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Check {
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

#[derive(Clone, Debug)]
pub struct SuiteReport {
    pub suite: Suite,
    pub target: Target,
    pub checks: Vec<Check>,
}

impl SuiteReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }
}

impl fmt::Display for SuiteReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for c in &self.checks {
            let tag = if c.passed { "PASS" } else { "FAIL" };
            writeln!(f, "{tag} {}: {}", c.name, c.detail)?;
        }
        let verdict = if self.passed() { "PASS" } else { "FAIL" };
        write!(f, "suite {} target {}: {verdict}", self.suite.name(), self.target.name())
    }
}

fn check(name: &str, passed: bool, detail: String) -> Check {
    Check { name: name.to_string(), passed, detail }
}

pub fn run_suite(suite: Suite, target: Target, config: &HarnessConfig) -> SuiteReport {
    let mut rng = ChaCha20Rng::seed_from_u64(config.rng_seed);
    let checks = match suite {
        Suite::Determinism => determinism(target, config, &mut rng),
        Suite::MultiMessage => multimessage(target, config, &mut rng),
        Suite::FieldDifferential => field_differential(config, &mut rng),
        Suite::ZeroRegression => zero_regression(),
        Suite::RfcVectors => rfc_vectors(target),
    };
    SuiteReport { suite, target, checks }
}

fn random_message(rng: &mut ChaCha20Rng) -> Vec<u8> {
    let mut m = vec![0u8; rng.gen_range(0..256)];
    rng.fill_bytes(&mut m);
    m
}

/// Signs one message several times per key and expects a single unique
/// signature.
fn determinism(target: Target, config: &HarnessConfig, rng: &mut ChaCha20Rng) -> Vec<Check> {
    let mut unique = 0;
    let mut first_failure = None;
    for k in 0..config.determinism_keys {
        let seed: [u8; 32] = rng.gen();
        let msg = random_message(rng);
        let mut signer = new_signer(target, &seed);
        let sigs: Vec<_> = (0..config.determinism_repeats).map(|_| signer.sign(&msg)).collect();
        if sigs.windows(2).all(|w| w[0] == w[1]) {
            unique += 1;
        } else if first_failure.is_none() {
            let n = sigs.iter().position(|s| *s != sigs[0]).unwrap();
            first_failure = Some(format!(
                "; key {k}: signature #{} differs from #1 ({} vs {})",
                n + 1,
                hex::encode(&sigs[n].to_bytes()[32..]),
                hex::encode(&sigs[0].to_bytes()[32..])
            ));
        }
    }
    let n = config.determinism_keys;
    vec![check(
        "single unique signature per (key, message)",
        unique == n,
        format!("{unique}/{n} keys{}", first_failure.unwrap_or_default()),
    )]
}

/// One key, many messages: every signature must verify.
fn multimessage(target: Target, config: &HarnessConfig, rng: &mut ChaCha20Rng) -> Vec<Check> {
    let seed: [u8; 32] = rng.gen();
    let mut signer = new_signer(target, &seed);
    let public = signer.public_key();
    let n = config.multimessage_count;
    let mut ok = 0;
    let mut first_bad = None;
    for i in 0..n {
        let msg = random_message(rng);
        let sig = signer.sign(&msg);
        if verify_signature(&public, &msg, &sig) {
            ok += 1;
        } else if first_bad.is_none() {
            first_bad = Some(i + 1);
        }
    }
    let detail = match first_bad {
        Some(i) => format!("{ok}/{n} verify; first failure at signature #{i}"),
        None => format!("{ok}/{n} verify"),
    };
    vec![check("sign/verify compatible across messages under one key", ok == n, detail)]
}

fn random_operand(rng: &mut ChaCha20Rng) -> FieldElement {
    if rng.gen_bool(0.5) {
        FieldElement::expand(&rng.gen())
    } else {
        // arbitrary limbs within the headroom bound, typically non-canonical
        let mut l = [0i32; NUM_LIMBS];
        for x in l.iter_mut() {
            *x = rng.gen_range(-LIMB_BOUND..=LIMB_BOUND);
        }
        FieldElement::from_limbs(l).expect("in range")
    }
}

/// Field operations against the arbitrary-precision oracle, compared on
/// contracted bytes.
fn field_differential(config: &HarnessConfig, rng: &mut ChaCha20Rng) -> Vec<Check> {
    let q = oracle::q();
    let qm2 = &q - 2u32;
    let ops = ["add", "sub", "mul", "square", "invert"];
    let mut passed = [0usize; 5];
    for _ in 0..config.field_cases {
        let a = random_operand(rng);
        let b = random_operand(rng);
        let (x, y) = (oracle::fe_value(&a), oracle::fe_value(&b));
        let results: [(FieldElement, BigUint); 5] = [
            (a + b, (&x + &y) % &q),
            (a - b, (&x + &q - &y) % &q),
            (a * b, (&x * &y) % &q),
            (a.square(), (&x * &x) % &q),
            (a.invert(), x.modpow(&qm2, &q)),
        ];
        for (count, (got, want)) in passed.iter_mut().zip(results) {
            if got.contract() == oracle::to_bytes32(&want) {
                *count += 1;
            }
        }
    }
    let n = config.field_cases;
    let mut checks: Vec<Check> = ops
        .iter()
        .zip(passed)
        .map(|(op, p)| check(op, p == n, format!("{p}/{n} match the oracle")))
        .collect();
    let all = passed.iter().all(|&p| p == n);
    checks.push(check("all operations", all, format!("{n} cases, target-independent")));
    checks
}

fn zero_regression() -> Vec<Check> {
    let f = FieldElement::from_limbs(NON_CANONICAL_ZERO).expect("in range");
    let contracted = f.contract();
    vec![
        check(
            "limb vector has integer value q",
            oracle::limbs_integer(&NON_CANONICAL_ZERO) == oracle::q().into(),
            format!("{:?}", NON_CANONICAL_ZERO),
        ),
        check("contract gives 32 zero bytes", contracted == [0u8; 32], hex::encode(contracted)),
        check(
            "contract-first zero test says zero",
            f.is_zero(),
            format!("is_zero = {}", f.is_zero()),
        ),
        check(
            "naive limb test misreports it as nonzero (legacy bug reproduced)",
            is_nonzero_naive_unreduced(&f),
            format!("is_nonzero_naive_unreduced = {}", is_nonzero_naive_unreduced(&f)),
        ),
    ]
}

/// One fresh signer per vector, one signature each.
fn rfc_vectors(target: Target) -> Vec<Check> {
    RFC8032_VECTORS
        .iter()
        .enumerate()
        .map(|(i, v)| {
            let seed: [u8; 32] = hex::decode(v.seed).unwrap().try_into().unwrap();
            let msg = hex::decode(v.message).unwrap();
            let mut signer = new_signer(target, &seed);
            let public = signer.public_key();
            let sig = signer.sign(&msg);
            let public_ok = hex::encode(public) == v.public;
            let sig_ok = hex::encode(sig.to_bytes()) == v.signature;
            let expected = Signature::from_bytes(&hex::decode(v.signature).unwrap()).unwrap();
            let verify_ok = verify_signature(&public, &msg, &expected);
            check(
                &format!("vector {}", i + 1),
                public_ok && sig_ok && verify_ok,
                format!("public {public_ok}, signature {sig_ok}, verify {verify_ok}"),
            )
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn quick() -> HarnessConfig {
        HarnessConfig {
            field_cases: 200,
            determinism_keys: 4,
            multimessage_count: 8,
            ..Default::default()
        }
    }

    #[test]
    fn names_round_trip() {
        for s in Suite::ALL {
            assert_eq!(s.name().parse::<Suite>().unwrap(), s);
        }
        assert!("nope".parse::<Suite>().is_err());
        assert!("other".parse::<Target>().is_err());
    }

    #[test]
    fn correct_target_passes_everything() {
        for s in Suite::ALL {
            let r = run_suite(s, Target::Correct, &quick());
            assert!(r.passed(), "{r}");
        }
    }

    #[test]
    fn vulnerable_target_outcomes() {
        let cfg = quick();
        assert!(!run_suite(Suite::Determinism, Target::Vulnerable, &cfg).passed());
        let mm = run_suite(Suite::MultiMessage, Target::Vulnerable, &cfg);
        assert!(!mm.passed());
        assert!(mm.checks[0].detail.starts_with("1/8"), "{}", mm.checks[0].detail);
        assert!(run_suite(Suite::RfcVectors, Target::Vulnerable, &cfg).passed());
    }
}
