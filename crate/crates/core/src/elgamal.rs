//! ElGamal over the multiplicative group `L^×` of a [`FieldCtx`].
//!
//! Every random choice (the secret key and each encryption exponent) is an
//! explicit argument, so protocol runs are reproducible and exhaustive
//! enumeration goes through the same code.

use crate::gf::{Elem, FieldCtx};
use crate::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct PublicKey {
    pub q: u32,
    pub g: Elem,
    pub y: Elem,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SecretKey(pub u32);

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct KeyPair {
    pub pk: PublicKey,
    pub sk: SecretKey,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Ciphertext {
    pub c1: Elem,
    pub c2: Elem,
}

impl Ciphertext {
    /// Both components nonzero.
    pub fn is_nontrivial(&self) -> bool {
        !self.c1.is_zero() && !self.c2.is_zero()
    }

    /// Componentwise product; decrypts to the product of the plaintexts.
    pub fn combine(&self, ctx: &FieldCtx, other: &Ciphertext) -> Ciphertext {
        Ciphertext {
            c1: ctx.mul(self.c1, other.c1),
            c2: ctx.mul(self.c2, other.c2),
        }
    }
}

fn check_exponent(ctx: &FieldCtx, e: u32) -> Result<()> {
    if e < ctx.q() {
        Ok(())
    } else {
        Err(Error::ExponentOutOfRange {
            value: e as u64,
            q: ctx.q(),
        })
    }
}

/// Key pair with secret `x` and `y = g^x`, where `g = α` must generate `L^×`.
pub fn keygen(ctx: &FieldCtx, x: u32) -> Result<KeyPair> {
    if !ctx.alpha_is_primitive() {
        return Err(Error::NonPrimitiveGenerator);
    }
    check_exponent(ctx, x)?;
    let g = ctx.alpha();
    Ok(KeyPair {
        pk: PublicKey {
            q: ctx.q(),
            g,
            y: ctx.pow(g, x as u64),
        },
        sk: SecretKey(x),
    })
}

/// `(g^s, y^s · m)`.
pub fn encrypt(ctx: &FieldCtx, pk: &PublicKey, m: Elem, s: u32) -> Result<Ciphertext> {
    if m.is_zero() {
        return Err(Error::ZeroPlaintext);
    }
    check_exponent(ctx, s)?;
    Ok(Ciphertext {
        c1: ctx.pow(pk.g, s as u64),
        c2: ctx.mul(ctx.pow(pk.y, s as u64), m),
    })
}

/// A fresh encryption of `1` with exponent `s`.
pub fn encrypt_one(ctx: &FieldCtx, pk: &PublicKey, s: u32) -> Result<Ciphertext> {
    encrypt(ctx, pk, Elem::ONE, s)
}

/// `c2 · c1^(-x)`.
pub fn decrypt(ctx: &FieldCtx, sk: &SecretKey, c: &Ciphertext) -> Result<Elem> {
    if c.c1.is_zero() {
        return Err(Error::DegenerateCiphertext);
    }
    let inv = ctx.inv(ctx.pow(c.c1, sk.0 as u64)).expect("c1 is nonzero");
    Ok(ctx.mul(c.c2, inv))
}
