use alloc::string::String;

/// Every failure the library can report.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    #[error("characteristic {0} is not prime")]
    NonPrimeP(u32),
    #[error("extension degree must be at least 2, got {0}")]
    DegreeTooSmall(u32),
    #[error("modulus must be monic of degree {expected} with coefficients reduced mod p")]
    InvalidModulus { expected: u32 },
    #[error("modulus is reducible over GF({p})")]
    ReducibleModulus { p: u32 },
    #[error("GF({p}^{n}) exceeds the table cap of {cap} elements")]
    TableCapExceeded { p: u32, n: u32, cap: u32 },
    #[error("zero has no multiplicative inverse")]
    ZeroInverse,
    #[error("operation requires a nonzero element")]
    ZeroElement,
    #[error("value {value} is not a valid element encoding")]
    InvalidElement { value: u64 },
    #[error("the modulus root α is not a generator of L^×")]
    NonPrimitiveGenerator,
    #[error("exponent {value} lies outside Z_{q}")]
    ExponentOutOfRange { value: u64, q: u32 },
    #[error("plaintext is zero and cannot be encrypted in L^×")]
    ZeroPlaintext,
    #[error("ciphertext has a zero first component")]
    DegenerateCiphertext,
    #[error("ciphertext has a zero component")]
    TrivialCiphertext,
    #[error("response cannot be decoded: V(R) = 0")]
    DecodeFailure,
    #[error("block {index} is not a valid database block for this key")]
    InvalidBlock { index: usize },
    #[error("invalid query: {0}")]
    InvalidQuery(&'static str),
    #[error("coset {rep} is only partially contained in the valid blocks for x = {x}")]
    ViolatedPartition { x: u32, rep: u32 },
    #[error("E(t) has {roots} roots in D_{rep} (x = {x}, s = {s}, r = {r})")]
    LemmaViolation {
        x: u32,
        s: u32,
        r: u32,
        rep: u32,
        roots: usize,
    },
    #[error("bound check {check} failed for {subject}")]
    BoundViolation { check: String, subject: String },
    #[error("search space too large: {0}")]
    IntractableSize(&'static str),
    #[error("parse error at byte {pos}: {msg}")]
    Parse { pos: usize, msg: &'static str },
}

pub type Result<T> = core::result::Result<T, Error>;
