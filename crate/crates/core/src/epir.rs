//! The extended-PIR protocol as executable message flows.
//!
//! The user holds `(F, i)` with `F ∈ L[t]`; the database holds blocks
//! `R_1..R_N ∈ L^×`. The user sends `C_i = Enc(F(α) + r)` and `C_j = Enc(1)`
//! for `j != i`. The database rewrites each `C_j = (V_j(α), W_j(α))` with
//! `V_j, W_j ∈ K[t]` of degree `< n`, substitutes `R_j` for `α`, multiplies
//! everything together with a fresh `Enc(1)` and returns the product. The
//! user outputs `Dec(product) - r`.
//!
//! The restricted form has `N = 1` and no re-randomization. Both forms are
//! run with explicit randomness and produce a [`Transcript`].

use alloc::vec::Vec;

use crate::elgamal::{self, Ciphertext, KeyPair, PublicKey, SecretKey};
use crate::gf::{Elem, FieldCtx, KPoly, LPoly};
use crate::{Error, Result};

/// `retrieve(F, i)` against a database of `blocks` entries (`i` is 1-based).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QuerySpec {
    pub f: LPoly,
    pub index: usize,
    pub blocks: usize,
}

impl QuerySpec {
    pub fn new(f: LPoly, index: usize, blocks: usize) -> Result<Self> {
        if blocks == 0 {
            return Err(Error::InvalidQuery("database must hold at least one block"));
        }
        if index == 0 || index > blocks {
            return Err(Error::InvalidQuery("index must lie in 1..=N"));
        }
        Ok(Self { f, index, blocks })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Database {
    pub blocks: Vec<Elem>,
}

impl Database {
    pub fn new(blocks: Vec<Elem>) -> Self {
        Self { blocks }
    }

    /// Fails with [`Error::InvalidBlock`] (1-based index) on the first block
    /// outside `valid_blocks(ctx, x)`.
    pub fn validate(&self, ctx: &FieldCtx, x: u32) -> Result<()> {
        let valid = valid_blocks(ctx, x);
        match self
            .blocks
            .iter()
            .position(|b| valid.binary_search(b).is_err())
        {
            Some(j) => Err(Error::InvalidBlock { index: j + 1 }),
            None => Ok(()),
        }
    }
}

/// The valid blocks for key `x`: `β ∈ L^×` with `Y(β) = G(β)^x` and
/// `G(β) != 0`, where `G(α) = g` and `Y(α) = g^x`. Sorted by encoding.
pub fn valid_blocks(ctx: &FieldCtx, x: u32) -> Vec<Elem> {
    let g = ctx.generator();
    let big_g = ctx.repr_as_kpoly(g);
    let big_y = ctx.repr_as_kpoly(ctx.pow(g, x as u64));
    ctx.nonzero_elements()
        .filter(|&b| {
            let gb = ctx.eval_kpoly(&big_g, b);
            !gb.is_zero() && ctx.eval_kpoly(&big_y, b) == ctx.pow(gb, x as u64)
        })
        .collect()
}

/// `(V, W)` with `V(α) = c1`, `W(α) = c2`.
pub fn ciphertext_polys(ctx: &FieldCtx, c: &Ciphertext) -> (KPoly, KPoly) {
    (ctx.repr_as_kpoly(c.c1), ctx.repr_as_kpoly(c.c2))
}

/// The user's message: `C_i = Enc(F(α) + r)` and `C_j = Enc(1)` elsewhere,
/// `C_j` using exponent `exponents[j]`.
pub fn user_query(
    ctx: &FieldCtx,
    keys: &KeyPair,
    spec: &QuerySpec,
    blinding: u32,
    exponents: &[u32],
) -> Result<Vec<Ciphertext>> {
    if exponents.len() != spec.blocks {
        return Err(Error::InvalidQuery("one exponent per block is required"));
    }
    if blinding >= ctx.p() {
        return Err(Error::InvalidQuery("blinding scalar must be reduced mod p"));
    }
    let target = blinded_plaintext(ctx, &spec.f, blinding);
    exponents
        .iter()
        .enumerate()
        .map(|(j, &s)| {
            let m = if j + 1 == spec.index {
                target
            } else {
                Elem::ONE
            };
            elgamal::encrypt(ctx, &keys.pk, m, s)
        })
        .collect()
}

/// `F(α) + r`.
pub fn blinded_plaintext(ctx: &FieldCtx, f: &LPoly, blinding: u32) -> Elem {
    ctx.add(ctx.eval_lpoly(f, ctx.alpha()), ctx.scalar(blinding))
}

/// Database step for one block: `(V(R), W(R))`.
pub fn db_respond_restricted(ctx: &FieldCtx, block: Elem, c: &Ciphertext) -> Result<Ciphertext> {
    if !c.is_nontrivial() {
        return Err(Error::TrivialCiphertext);
    }
    let (v, w) = ciphertext_polys(ctx, c);
    Ok(Ciphertext {
        c1: ctx.eval_kpoly(&v, block),
        c2: ctx.eval_kpoly(&w, block),
    })
}

/// Database step for the full protocol: `Enc(1) · Π_j C_j(R_j)` with the
/// re-randomizing `Enc(1)` drawn with exponent `r_prime`.
pub fn db_respond_full(
    ctx: &FieldCtx,
    pk: &PublicKey,
    db: &Database,
    query: &[Ciphertext],
    r_prime: u32,
) -> Result<Ciphertext> {
    let evaluated = evaluate_blocks(ctx, db, query)?;
    let mut acc = elgamal::encrypt_one(ctx, pk, r_prime)?;
    for c in &evaluated {
        acc = acc.combine(ctx, c);
    }
    Ok(acc)
}

fn evaluate_blocks(ctx: &FieldCtx, db: &Database, query: &[Ciphertext]) -> Result<Vec<Ciphertext>> {
    if db.blocks.len() != query.len() {
        return Err(Error::InvalidQuery("one ciphertext per block is required"));
    }
    db.blocks
        .iter()
        .zip(query)
        .map(|(&b, c)| db_respond_restricted(ctx, b, c))
        .collect()
}

/// `Dec(response) - r`, or [`Error::DecodeFailure`] when `V(R) = 0`.
pub fn user_decode(
    ctx: &FieldCtx,
    sk: &SecretKey,
    response: &Ciphertext,
    blinding: u32,
) -> Result<Elem> {
    match elgamal::decrypt(ctx, sk, response) {
        Ok(m) => Ok(ctx.sub(m, ctx.scalar(blinding))),
        Err(Error::DegenerateCiphertext) => Err(Error::DecodeFailure),
        Err(e) => Err(e),
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Variant {
    Restricted,
    Full,
}

/// Why an execution did not deliver `F(R_i)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum FailureReason {
    /// `F(α) + r = 0`, which has no encryption in `L^×`.
    ZeroPlaintext,
    /// The database rejected ciphertext `index` (1-based).
    TrivialCiphertext { index: usize },
    /// The response had `V(R) = 0`.
    DecodeFailure,
    /// Decoding produced a value other than `F(R_i)`.
    WrongValue,
}

/// Randomness for one full-protocol execution.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FullRandomness {
    pub blinding: u32,
    pub exponents: Vec<u32>,
    pub r_prime: u32,
}

/// One protocol execution, message by message.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Transcript {
    pub variant: Variant,
    pub p: u32,
    pub n: u32,
    pub modulus: KPoly,
    pub x: u32,
    pub y: Elem,
    pub f: LPoly,
    pub index: usize,
    pub blinding: u32,
    pub exponents: Vec<u32>,
    pub r_prime: Option<u32>,
    pub blocks: Vec<Elem>,
    /// `F(α) + r`.
    pub plaintext: Elem,
    pub query: Vec<Ciphertext>,
    /// `(V_j, W_j)` for each query ciphertext.
    pub query_polys: Vec<(KPoly, KPoly)>,
    /// `C_j(R_j)` for each block.
    pub evaluated: Vec<Ciphertext>,
    pub response: Option<Ciphertext>,
    /// `Dec(response)` before removing the blinding.
    pub decrypted: Option<Elem>,
    pub decoded: Option<Elem>,
    /// `F(R_i)`.
    pub expected: Elem,
    pub success: bool,
    pub failure: Option<FailureReason>,
}

/// Options for [`run_full`].
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct RunOptions {
    /// Reject blocks outside the valid set before running.
    pub strict: bool,
}

/// The restricted protocol with key `x`, exponent `s`, blinding `r` and
/// database block `block`.
pub fn run_restricted(
    ctx: &FieldCtx,
    x: u32,
    f: &LPoly,
    s: u32,
    blinding: u32,
    block: Elem,
) -> Result<Transcript> {
    let spec = QuerySpec::new(f.clone(), 1, 1)?;
    execute(
        ctx,
        Variant::Restricted,
        x,
        &spec,
        &Database::new(alloc::vec![block]),
        blinding,
        &[s],
        None,
    )
}

/// The full protocol.
pub fn run_full(
    ctx: &FieldCtx,
    x: u32,
    spec: &QuerySpec,
    db: &Database,
    randomness: &FullRandomness,
    options: RunOptions,
) -> Result<Transcript> {
    if db.blocks.len() != spec.blocks {
        return Err(Error::InvalidQuery(
            "database size does not match the query",
        ));
    }
    if options.strict {
        db.validate(ctx, x)?;
    }
    execute(
        ctx,
        Variant::Full,
        x,
        spec,
        db,
        randomness.blinding,
        &randomness.exponents,
        Some(randomness.r_prime),
    )
}

#[allow(clippy::too_many_arguments)]
fn execute(
    ctx: &FieldCtx,
    variant: Variant,
    x: u32,
    spec: &QuerySpec,
    db: &Database,
    blinding: u32,
    exponents: &[u32],
    r_prime: Option<u32>,
) -> Result<Transcript> {
    let keys = elgamal::keygen(ctx, x)?;
    if let Some(rp) = r_prime {
        if rp >= ctx.q() {
            return Err(Error::ExponentOutOfRange {
                value: rp as u64,
                q: ctx.q(),
            });
        }
    }
    let mut t = Transcript {
        variant,
        p: ctx.p(),
        n: ctx.n(),
        modulus: ctx.modulus().clone(),
        x,
        y: keys.pk.y,
        f: spec.f.clone(),
        index: spec.index,
        blinding,
        exponents: exponents.to_vec(),
        r_prime,
        blocks: db.blocks.clone(),
        plaintext: Elem::ZERO,
        query: Vec::new(),
        query_polys: Vec::new(),
        evaluated: Vec::new(),
        response: None,
        decrypted: None,
        decoded: None,
        expected: ctx.eval_lpoly(&spec.f, db.blocks[spec.index - 1]),
        success: false,
        failure: None,
    };
    t.plaintext = blinded_plaintext(ctx, &spec.f, blinding);

    match user_query(ctx, &keys, spec, blinding, exponents) {
        Ok(q) => t.query = q,
        Err(Error::ZeroPlaintext) => {
            t.failure = Some(FailureReason::ZeroPlaintext);
            return Ok(t);
        }
        Err(e) => return Err(e),
    }
    t.query_polys = t.query.iter().map(|c| ciphertext_polys(ctx, c)).collect();

    if let Some(j) = t.query.iter().position(|c| !c.is_nontrivial()) {
        t.failure = Some(FailureReason::TrivialCiphertext { index: j + 1 });
        return Ok(t);
    }
    t.evaluated = evaluate_blocks(ctx, db, &t.query)?;
    let response = match r_prime {
        None => t.evaluated[0],
        Some(rp) => db_respond_full(ctx, &keys.pk, db, &t.query, rp)?,
    };
    t.response = Some(response);
    t.decrypted = elgamal::decrypt(ctx, &keys.sk, &response).ok();

    match user_decode(ctx, &keys.sk, &response, blinding) {
        Ok(out) => {
            t.decoded = Some(out);
            t.success = out == t.expected;
            if !t.success {
                t.failure = Some(FailureReason::WrongValue);
            }
        }
        Err(Error::DecodeFailure) => t.failure = Some(FailureReason::DecodeFailure),
        Err(e) => return Err(e),
    }
    Ok(t)
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;

    fn gf8() -> FieldCtx {
        FieldCtx::new(2, 3, KPoly::new(vec![1, 1, 0, 1], 2)).unwrap()
    }

    fn el(ctx: &FieldCtx, c: &[u32]) -> Elem {
        ctx.from_coeffs(c).unwrap()
    }

    #[test]
    fn valid_blocks_examples() {
        let ctx = gf8();
        let g = ctx.generator();
        assert_eq!(
            valid_blocks(&ctx, 6),
            vec![g, ctx.pow(g, 2), el(&ctx, &[0, 1, 1])]
        );
        for x in 0..7 {
            assert!(valid_blocks(&ctx, x).contains(&g));
        }
        let gf4 = FieldCtx::new(2, 2, KPoly::new(vec![1, 1, 1], 2)).unwrap();
        assert_eq!(valid_blocks(&gf4, 1).len(), 3);
    }

    #[test]
    fn query_examples() {
        let ctx = gf8();
        let g = ctx.generator();
        let keys = elgamal::keygen(&ctx, 6).unwrap();
        let spec = QuerySpec::new(LPoly::constant(g), 1, 1).unwrap();
        let q = user_query(&ctx, &keys, &spec, 1, &[6]).unwrap();
        assert_eq!(
            q,
            vec![Ciphertext {
                c1: el(&ctx, &[1, 0, 1]),
                c2: el(&ctx, &[0, 1, 1])
            }]
        );

        let spec = QuerySpec::new(LPoly::constant(g), 1, 2).unwrap();
        let q = user_query(&ctx, &keys, &spec, 1, &[6, 4]).unwrap();
        assert_eq!(elgamal::decrypt(&ctx, &keys.sk, &q[1]).unwrap(), Elem::ONE);

        assert!(QuerySpec::new(LPoly::zero(), 0, 1).is_err());
        assert!(QuerySpec::new(LPoly::zero(), 3, 2).is_err());
        assert!(QuerySpec::new(LPoly::zero(), 1, 0).is_err());
        // F = 1, r = 1: the blinded plaintext vanishes.
        let spec = QuerySpec::new(LPoly::constant(Elem::ONE), 1, 1).unwrap();
        assert_eq!(
            user_query(&ctx, &keys, &spec, 1, &[2]),
            Err(Error::ZeroPlaintext)
        );
    }

    #[test]
    fn query_decrypts_to_blinded_value_and_ones() {
        let ctx = FieldCtx::new(2, 5, crate::builtin_modulus(5).unwrap()).unwrap();
        let keys = elgamal::keygen(&ctx, 11).unwrap();
        let f = crate::gf::text::parse_lpoly(&ctx, "g^3*t^2 + t + g^9").unwrap();
        let spec = QuerySpec::new(f.clone(), 2, 3).unwrap();
        let q = user_query(&ctx, &keys, &spec, 1, &[5, 17, 30]).unwrap();
        for (j, c) in q.iter().enumerate() {
            let m = elgamal::decrypt(&ctx, &keys.sk, c).unwrap();
            if j == 1 {
                assert_eq!(ctx.sub(m, Elem::ONE), ctx.eval_lpoly(&f, ctx.alpha()));
            } else {
                assert_eq!(m, Elem::ONE);
            }
        }
    }

    #[test]
    fn restricted_response_examples() {
        let ctx = gf8();
        let g = ctx.generator();
        let c = Ciphertext {
            c1: el(&ctx, &[1, 0, 1]),
            c2: el(&ctx, &[0, 1, 1]),
        };
        let r = el(&ctx, &[0, 1, 1]);
        assert_eq!(
            db_respond_restricted(&ctx, r, &c).unwrap(),
            Ciphertext {
                c1: el(&ctx, &[1, 1, 0]),
                c2: el(&ctx, &[0, 0, 1])
            }
        );
        assert_eq!(db_respond_restricted(&ctx, g, &c).unwrap(), c);
        let at_conj = db_respond_restricted(&ctx, ctx.pow(g, 2), &c).unwrap();
        assert_eq!(at_conj.c1, ctx.pow(c.c1, 2));
        assert_eq!(at_conj.c2, ctx.pow(c.c2, 2));
        let trivial = Ciphertext {
            c1: Elem::ONE,
            c2: Elem::ZERO,
        };
        assert_eq!(
            db_respond_restricted(&ctx, g, &trivial),
            Err(Error::TrivialCiphertext)
        );
    }

    #[test]
    fn decode_examples() {
        let ctx = gf8();
        let keys = elgamal::keygen(&ctx, 6).unwrap();
        let resp = Ciphertext {
            c1: el(&ctx, &[1, 1, 0]),
            c2: el(&ctx, &[0, 0, 1]),
        };
        assert_eq!(
            user_decode(&ctx, &keys.sk, &resp, 1).unwrap(),
            el(&ctx, &[0, 1, 1])
        );
        let m = el(&ctx, &[1, 1, 1]);
        let plain = Ciphertext {
            c1: Elem::ONE,
            c2: m,
        };
        assert_eq!(user_decode(&ctx, &keys.sk, &plain, 0).unwrap(), m);
        let bad = Ciphertext {
            c1: Elem::ZERO,
            c2: m,
        };
        assert_eq!(
            user_decode(&ctx, &keys.sk, &bad, 0),
            Err(Error::DecodeFailure)
        );
    }

    #[test]
    fn counterexample_run() {
        let ctx = gf8();
        let g = ctx.generator();
        let f = LPoly::constant(g);
        let t = run_restricted(&ctx, 6, &f, 6, 1, el(&ctx, &[0, 1, 1])).unwrap();
        assert!(!t.success);
        assert_eq!(t.failure, Some(FailureReason::WrongValue));
        assert_eq!(t.decoded, Some(el(&ctx, &[0, 1, 1])));
        assert_eq!(t.expected, g);
        assert_eq!(
            t.response,
            Some(Ciphertext {
                c1: el(&ctx, &[1, 1, 0]),
                c2: el(&ctx, &[0, 0, 1])
            })
        );
        assert_eq!(
            t.query_polys[0],
            (KPoly::new(vec![1, 0, 1], 2), KPoly::new(vec![0, 1, 1], 2))
        );

        let t = run_restricted(&ctx, 6, &f, 6, 1, g).unwrap();
        assert!(t.success);
        assert_eq!(t.decoded, Some(g));
    }

    #[test]
    fn zero_plaintext_is_a_failed_transcript() {
        let ctx = gf8();
        let t =
            run_restricted(&ctx, 2, &LPoly::constant(Elem::ONE), 3, 1, ctx.generator()).unwrap();
        assert!(!t.success);
        assert_eq!(t.failure, Some(FailureReason::ZeroPlaintext));
        assert!(t.query.is_empty());
    }

    #[test]
    fn identity_block_always_succeeds() {
        let ctx = FieldCtx::new(2, 4, crate::builtin_modulus(4).unwrap()).unwrap();
        let fs = [
            LPoly::constant(ctx.generator()),
            crate::gf::text::parse_lpoly(&ctx, "g^7*t^3 + g^2*t + 1").unwrap(),
            crate::gf::text::parse_lpoly(&ctx, "t^2 + t").unwrap(),
        ];
        for f in &fs {
            for x in 0..ctx.q() {
                for s in 0..ctx.q() {
                    for r in 0..2 {
                        if blinded_plaintext(&ctx, f, r).is_zero() {
                            continue;
                        }
                        assert!(
                            run_restricted(&ctx, x, f, s, r, ctx.alpha())
                                .unwrap()
                                .success
                        );
                    }
                }
            }
        }
    }

    #[test]
    fn conjugate_blocks_succeed_for_k_polynomials() {
        let ctx = FieldCtx::new(2, 4, crate::builtin_modulus(4).unwrap()).unwrap();
        let f = crate::gf::text::parse_lpoly(&ctx, "t^3 + t + 1").unwrap();
        for x in 0..ctx.q() {
            let mut block = ctx.alpha();
            for _ in 0..ctx.n() {
                for s in 0..ctx.q() {
                    for r in 0..2 {
                        if blinded_plaintext(&ctx, &f, r).is_zero() {
                            continue;
                        }
                        assert!(run_restricted(&ctx, x, &f, s, r, block).unwrap().success);
                    }
                }
                block = ctx.frobenius(block);
            }
        }
    }

    #[test]
    fn full_examples() {
        let ctx = gf8();
        let g = ctx.generator();
        let f = LPoly::constant(g);
        let bad = el(&ctx, &[0, 1, 1]);

        // N = 1, r' = 0 is the restricted run.
        let spec = QuerySpec::new(f.clone(), 1, 1).unwrap();
        let rand = FullRandomness {
            blinding: 1,
            exponents: vec![6],
            r_prime: 0,
        };
        let full = run_full(
            &ctx,
            6,
            &spec,
            &Database::new(vec![bad]),
            &rand,
            RunOptions::default(),
        )
        .unwrap();
        let restricted = run_restricted(&ctx, 6, &f, 6, 1, bad).unwrap();
        assert_eq!(full.response, restricted.response);
        assert_eq!(full.decoded, restricted.decoded);

        // The second block sits at α, so C_2(R_2) = C_2 still decrypts to 1.
        let spec = QuerySpec::new(f.clone(), 1, 2).unwrap();
        let db = Database::new(vec![bad, g]);
        for s2 in 0..7 {
            for rp in 0..7 {
                let rand = FullRandomness {
                    blinding: 1,
                    exponents: vec![6, s2],
                    r_prime: rp,
                };
                let t = run_full(&ctx, 6, &spec, &db, &rand, RunOptions { strict: true }).unwrap();
                assert!(!t.success);
                assert_eq!(t.decoded, Some(bad));
            }
        }

        let kf = crate::gf::text::parse_lpoly(&ctx, "t^2 + 1").unwrap();
        let spec = QuerySpec::new(kf, 2, 2).unwrap();
        let rand = FullRandomness {
            blinding: 0,
            exponents: vec![3, 5],
            r_prime: 4,
        };
        let t = run_full(
            &ctx,
            2,
            &spec,
            &Database::new(vec![g, g]),
            &rand,
            RunOptions::default(),
        )
        .unwrap();
        assert!(t.success);
    }

    #[test]
    fn strict_mode_rejects_invalid_blocks() {
        let ctx = gf8();
        let spec = QuerySpec::new(LPoly::constant(ctx.generator()), 1, 2).unwrap();
        let rand = FullRandomness {
            blinding: 0,
            exponents: vec![1, 2],
            r_prime: 3,
        };
        // For x = 6 the valid set is {g, g^2, g^4}; 1 is not in it.
        let db = Database::new(vec![ctx.generator(), Elem::ONE]);
        assert_eq!(
            run_full(&ctx, 6, &spec, &db, &rand, RunOptions { strict: true }),
            Err(Error::InvalidBlock { index: 2 })
        );
        assert!(run_full(&ctx, 6, &spec, &db, &rand, RunOptions::default()).is_ok());
    }

    #[test]
    fn rerandomization_never_changes_the_outcome() {
        let ctx = gf8();
        let f = LPoly::constant(ctx.generator());
        let spec = QuerySpec::new(f.clone(), 1, 1).unwrap();
        for x in 0..7 {
            for block in valid_blocks(&ctx, x) {
                for s in 0..7 {
                    for r in 0..2 {
                        let base = run_restricted(&ctx, x, &f, s, r, block).unwrap();
                        for rp in 0..7 {
                            let rand = FullRandomness {
                                blinding: r,
                                exponents: vec![s],
                                r_prime: rp,
                            };
                            let t = run_full(
                                &ctx,
                                x,
                                &spec,
                                &Database::new(vec![block]),
                                &rand,
                                RunOptions::default(),
                            )
                            .unwrap();
                            assert_eq!(t.success, base.success);
                            assert_eq!(t.decoded, base.decoded);
                        }
                    }
                }
            }
        }
    }
}
