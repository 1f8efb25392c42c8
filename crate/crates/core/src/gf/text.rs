//! Text forms of field elements and polynomials.
//!
//! Grammar accepted by [`parse_lpoly`] (whitespace is ignored):
//!
//! ```text
//! poly   := term ('+' term)*
//! term   := factor ('*' factor)*
//! factor := number | 'g' ['^' int] | 'a' ['^' int] | 't' ['^' uint]
//! ```
//!
//! `number` is a residue mod `p`, `g` is the table generator and `a` is the
//! basis element α (the same element for a primitive modulus), `t` is the
//! polynomial variable. So `g^4*t^2 + t + 1` and `g^2+g` both parse; the
//! second is the constant `g^2 + g = g^4` over `t^3+t+1`.

use core::fmt;

use alloc::vec::Vec;

use super::{Elem, FieldCtx, KPoly, LPoly};
use crate::{Error, Result};

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
}

impl<'a> Parser<'a> {
    fn new(src: &'a str) -> Self {
        Self {
            src: src.as_bytes(),
            pos: 0,
        }
    }

    fn skip_ws(&mut self) {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.src.get(self.pos).copied()
    }

    fn eat(&mut self, b: u8) -> bool {
        if self.peek() == Some(b) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn err<T>(&self, msg: &'static str) -> Result<T> {
        Err(Error::Parse { pos: self.pos, msg })
    }

    fn uint(&mut self) -> Result<u64> {
        self.skip_ws();
        let start = self.pos;
        let mut v: u64 = 0;
        while let Some(&b) = self.src.get(self.pos) {
            if !b.is_ascii_digit() {
                break;
            }
            v = match v
                .checked_mul(10)
                .and_then(|v| v.checked_add((b - b'0') as u64))
            {
                Some(v) => v,
                None => return self.err("number too large"),
            };
            self.pos += 1;
        }
        if self.pos == start {
            return self.err("expected a number");
        }
        Ok(v)
    }

    fn int(&mut self) -> Result<i64> {
        let neg = self.eat(b'-');
        let v = self.uint()?;
        let v = i64::try_from(v).or_else(|_| self.err("number too large"))?;
        Ok(if neg { -v } else { v })
    }

    fn exponent(&mut self) -> Result<i64> {
        if self.eat(b'^') {
            self.int()
        } else {
            Ok(1)
        }
    }
}

/// A coefficient-times-`t^k` term over an arbitrary coefficient ring.
trait Coeffs {
    type C: Copy;
    fn one(&self) -> Self::C;
    fn number(&self, v: u64) -> Option<Self::C>;
    fn generator_pow(&self, k: i64) -> Option<Self::C>;
    fn alpha_pow(&self, k: i64) -> Option<Self::C>;
    fn mul(&self, a: Self::C, b: Self::C) -> Self::C;
    fn add(&self, a: Self::C, b: Self::C) -> Self::C;
    fn zero(&self) -> Self::C;
}

struct InL<'c>(&'c FieldCtx);

impl Coeffs for InL<'_> {
    type C = Elem;
    fn one(&self) -> Elem {
        Elem::ONE
    }
    fn number(&self, v: u64) -> Option<Elem> {
        (v < self.0.p() as u64).then(|| self.0.scalar(v as u32))
    }
    fn generator_pow(&self, k: i64) -> Option<Elem> {
        Some(self.0.exp(k.rem_euclid(self.0.q() as i64) as u64))
    }
    fn alpha_pow(&self, k: i64) -> Option<Elem> {
        let q = self.0.q() as i64;
        Some(self.0.pow(self.0.alpha(), k.rem_euclid(q) as u64))
    }
    fn mul(&self, a: Elem, b: Elem) -> Elem {
        self.0.mul(a, b)
    }
    fn add(&self, a: Elem, b: Elem) -> Elem {
        self.0.add(a, b)
    }
    fn zero(&self) -> Elem {
        Elem::ZERO
    }
}

struct InK(u32);

impl Coeffs for InK {
    type C = u32;
    fn one(&self) -> u32 {
        1
    }
    fn number(&self, v: u64) -> Option<u32> {
        (v < self.0 as u64).then_some(v as u32)
    }
    fn generator_pow(&self, _: i64) -> Option<u32> {
        None
    }
    fn alpha_pow(&self, _: i64) -> Option<u32> {
        None
    }
    fn mul(&self, a: u32, b: u32) -> u32 {
        ((a as u64 * b as u64) % self.0 as u64) as u32
    }
    fn add(&self, a: u32, b: u32) -> u32 {
        ((a as u64 + b as u64) % self.0 as u64) as u32
    }
    fn zero(&self) -> u32 {
        0
    }
}

fn parse_terms<R: Coeffs>(ring: &R, src: &str) -> Result<Vec<R::C>> {
    let mut ps = Parser::new(src);
    let mut out: Vec<R::C> = Vec::new();
    if ps.peek().is_none() {
        return ps.err("empty polynomial");
    }
    loop {
        let mut coeff = ring.one();
        let mut deg: u64 = 0;
        loop {
            let next = ps.peek();
            let here = ps.pos;
            match next {
                Some(b) if b.is_ascii_digit() => {
                    let v = ps.uint()?;
                    match ring.number(v) {
                        Some(c) => coeff = ring.mul(coeff, c),
                        None => {
                            return Err(Error::Parse {
                                pos: here,
                                msg: "coefficient is not reduced mod p",
                            })
                        }
                    }
                }
                Some(b'g') => {
                    ps.pos += 1;
                    let k = ps.exponent()?;
                    match ring.generator_pow(k) {
                        Some(c) => coeff = ring.mul(coeff, c),
                        None => {
                            return Err(Error::Parse {
                                pos: here,
                                msg: "`g` is not allowed here",
                            })
                        }
                    }
                }
                Some(b'a') => {
                    ps.pos += 1;
                    let k = ps.exponent()?;
                    match ring.alpha_pow(k) {
                        Some(c) => coeff = ring.mul(coeff, c),
                        None => {
                            return Err(Error::Parse {
                                pos: here,
                                msg: "`a` is not allowed here",
                            })
                        }
                    }
                }
                Some(b't') => {
                    ps.pos += 1;
                    let k = ps.exponent()?;
                    if k < 0 {
                        return Err(Error::Parse {
                            pos: here,
                            msg: "negative power of t",
                        });
                    }
                    deg = deg.checked_add(k as u64).filter(|&d| d <= 1 << 16).ok_or(
                        Error::Parse {
                            pos: here,
                            msg: "degree too large",
                        },
                    )?;
                }
                _ => return ps.err("expected a number, `g`, `a` or `t`"),
            }
            if !ps.eat(b'*') {
                break;
            }
        }
        let deg = deg as usize;
        if out.len() <= deg {
            out.resize(deg + 1, ring.zero());
        }
        out[deg] = ring.add(out[deg], coeff);
        match ps.peek() {
            None => break,
            Some(b'+') => ps.pos += 1,
            Some(_) => return ps.err("expected `+` or end of input"),
        }
    }
    Ok(out)
}

/// Parses a polynomial in `L[t]`.
pub fn parse_lpoly(ctx: &FieldCtx, src: &str) -> Result<LPoly> {
    parse_terms(&InL(ctx), src).map(LPoly::new)
}

/// Parses an element of `L`: a polynomial without `t`.
pub fn parse_elem(ctx: &FieldCtx, src: &str) -> Result<Elem> {
    let poly = parse_lpoly(ctx, src)?;
    match poly.degree() {
        None => Ok(Elem::ZERO),
        Some(0) => Ok(poly.coeff(0)),
        Some(_) => Err(Error::Parse {
            pos: 0,
            msg: "expected a field element, found a polynomial in t",
        }),
    }
}

/// Parses a polynomial in `K[t]` (numbers and `t` only).
pub fn parse_kpoly(p: u32, src: &str) -> Result<KPoly> {
    parse_terms(&InK(p), src).map(|c| KPoly::new(c, p))
}

fn write_power(f: &mut fmt::Formatter<'_>, sym: char, k: usize) -> fmt::Result {
    match k {
        0 => Ok(()),
        1 => write!(f, "{sym}"),
        _ => write!(f, "{sym}^{k}"),
    }
}

/// Writes `Σ c_k sym^k`, highest power first, joined by `sep`.
fn write_kpoly(f: &mut fmt::Formatter<'_>, coeffs: &[u32], sym: char, sep: &str) -> fmt::Result {
    let mut first = true;
    for (k, &c) in coeffs.iter().enumerate().rev() {
        if c == 0 {
            continue;
        }
        if !first {
            f.write_str(sep)?;
        }
        first = false;
        match (c, k) {
            (_, 0) => write!(f, "{c}")?,
            (1, _) => write_power(f, sym, k)?,
            _ => {
                write!(f, "{c}*")?;
                write_power(f, sym, k)?;
            }
        }
    }
    if first {
        f.write_str("0")?;
    }
    Ok(())
}

/// Basis form of an element, e.g. `g^2+g` (the basis symbol is `a` when α
/// is not the generator).
pub struct ElemDisplay<'c> {
    ctx: &'c FieldCtx,
    elem: Elem,
}

impl fmt::Display for ElemDisplay<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let sym = if self.ctx.alpha_is_primitive() {
            'g'
        } else {
            'a'
        };
        write_kpoly(f, &self.ctx.coeffs(self.elem), sym, "+")
    }
}

/// Power form of an element, e.g. `g^4`; `0` for zero.
pub struct PowerDisplay<'c> {
    ctx: &'c FieldCtx,
    elem: Elem,
}

impl fmt::Display for PowerDisplay<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.ctx.log(self.elem) {
            None => f.write_str("0"),
            Some(k) => write!(f, "g^{k}"),
        }
    }
}

/// A `K`-polynomial in a chosen variable, e.g. `t^2+1`.
pub struct KPolyDisplay<'a> {
    poly: &'a KPoly,
    var: char,
}

impl fmt::Display for KPolyDisplay<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_kpoly(f, self.poly.coeffs(), self.var, "+")
    }
}

/// An `L`-polynomial with coefficients outside `K` in power form, e.g.
/// `g^4*t^2 + t + 1`. Re-parses with [`parse_lpoly`].
pub struct LPolyDisplay<'c> {
    ctx: &'c FieldCtx,
    poly: &'c LPoly,
}

impl fmt::Display for LPolyDisplay<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (k, &c) in self.poly.coeffs().iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            if !first {
                f.write_str(" + ")?;
            }
            first = false;
            let in_k = self.ctx.in_base_field(c);
            let needs_coeff = !(in_k && c.packed() == 1 && k > 0);
            if needs_coeff {
                if in_k {
                    write!(f, "{}", c.packed())?;
                } else {
                    write_power(f, 'g', self.ctx.log(c).expect("nonzero") as usize)?;
                }
                if k > 0 {
                    f.write_str("*")?;
                }
            }
            write_power(f, 't', k)?;
        }
        if first {
            f.write_str("0")?;
        }
        Ok(())
    }
}

impl FieldCtx {
    pub fn display(&self, elem: Elem) -> ElemDisplay<'_> {
        ElemDisplay { ctx: self, elem }
    }

    pub fn display_power(&self, elem: Elem) -> PowerDisplay<'_> {
        PowerDisplay { ctx: self, elem }
    }

    pub fn display_lpoly<'c>(&'c self, poly: &'c LPoly) -> LPolyDisplay<'c> {
        LPolyDisplay { ctx: self, poly }
    }
}

impl KPoly {
    pub fn display(&self, var: char) -> KPolyDisplay<'_> {
        KPolyDisplay { poly: self, var }
    }
}
