//! Step-by-step text and JSON renderings of a protocol [`Transcript`].

use std::fmt::Write as _;

use epir_core::elgamal::Ciphertext;
use epir_core::epir::{valid_blocks, FailureReason, Transcript, Variant};
use epir_core::gf::{Elem, FieldCtx, KPoly};
use serde::Serialize;

/// Blocks listed individually in step 1 before the list is cut short.
const LISTED_BLOCKS: usize = 12;

fn both(ctx: &FieldCtx, e: Elem) -> String {
    let basis = ctx.display(e).to_string();
    let power = ctx.display_power(e).to_string();
    if basis == power {
        basis
    } else {
        format!("{basis} = {power}")
    }
}

fn pair(ctx: &FieldCtx, c: &Ciphertext) -> String {
    format!("({}, {})", ctx.display(c.c1), ctx.display(c.c2))
}

fn pair_power(ctx: &FieldCtx, c: &Ciphertext) -> String {
    format!("({}, {})", ctx.display_power(c.c1), ctx.display_power(c.c2))
}

fn kpoly(p: &KPoly) -> String {
    p.display('t').to_string()
}

pub fn failure_text(reason: FailureReason) -> String {
    match reason {
        FailureReason::ZeroPlaintext => "F(α)+r = 0 has no encryption".into(),
        FailureReason::TrivialCiphertext { index } => format!("ciphertext {index} is trivial"),
        FailureReason::DecodeFailure => "V(R) = 0, the response does not decrypt".into(),
        FailureReason::WrongValue => "wrong value".into(),
    }
}

/// The transcript as five numbered steps.
pub fn render_text(ctx: &FieldCtx, t: &Transcript) -> String {
    let mut o = String::new();
    let full = t.variant == Variant::Full;
    let g = ctx.generator();
    let label = if full { "full" } else { "restricted" };
    writeln!(o, "protocol: {label}").unwrap();
    writeln!(
        o,
        "field: GF({}^{}), modulus {}",
        t.p,
        t.n,
        kpoly(&t.modulus)
    )
    .unwrap();

    writeln!(
        o,
        "step 1 (user): x = {}, y = {}, pk = ({}, {}, {})",
        t.x,
        both(ctx, t.y),
        ctx.q(),
        ctx.display(g),
        ctx.display(t.y)
    )
    .unwrap();
    writeln!(
        o,
        "  G(t) = {}, Y(t) = {}",
        kpoly(&ctx.repr_as_kpoly(g)),
        kpoly(&ctx.repr_as_kpoly(t.y))
    )
    .unwrap();
    let valid = valid_blocks(ctx, t.x);
    let shown: Vec<String> = valid
        .iter()
        .take(LISTED_BLOCKS)
        .map(|&b| ctx.display(b).to_string())
        .collect();
    let more = if valid.len() > LISTED_BLOCKS {
        ", ..."
    } else {
        ""
    };
    writeln!(
        o,
        "  valid blocks ({}): {}{more}",
        valid.len(),
        shown.join(", ")
    )
    .unwrap();

    write!(o, "step 2 (user): F(t) = {}", ctx.display_lpoly(&t.f)).unwrap();
    if full {
        writeln!(
            o,
            ", i = {}, N = {}, r = {}",
            t.index,
            t.blocks.len(),
            t.blinding
        )
        .unwrap();
        let exps: Vec<String> = t.exponents.iter().map(|e| e.to_string()).collect();
        writeln!(o, "  exponents = [{}]", exps.join(", ")).unwrap();
    } else {
        writeln!(o, ", s = {}, r = {}", t.exponents[0], t.blinding).unwrap();
    }
    writeln!(o, "  F(α)+r = {}", both(ctx, t.plaintext)).unwrap();
    if t.query.is_empty() {
        return finish(ctx, t, o);
    }
    for (j, (c, (v, w))) in t.query.iter().zip(&t.query_polys).enumerate() {
        let name = if full {
            format!("C_{}", j + 1)
        } else {
            "C".into()
        };
        let (vn, wn) = if full {
            (format!("V_{}", j + 1), format!("W_{}", j + 1))
        } else {
            ("V".into(), "W".into())
        };
        writeln!(o, "  {name} = {} = {}", pair(ctx, c), pair_power(ctx, c)).unwrap();
        writeln!(o, "  {vn}(t) = {}, {wn}(t) = {}", kpoly(v), kpoly(w)).unwrap();
    }

    if t.evaluated.is_empty() {
        writeln!(o, "step 3 (db): rejects the query").unwrap();
        return finish(ctx, t, o);
    }
    if full {
        writeln!(o, "step 3 (db): all ciphertexts are nontrivial").unwrap();
        for (j, (b, c)) in t.blocks.iter().zip(&t.evaluated).enumerate() {
            writeln!(
                o,
                "  R_{} = {}, C_{}(R_{}) = {}",
                j + 1,
                both(ctx, *b),
                j + 1,
                j + 1,
                pair(ctx, c)
            )
            .unwrap();
        }
    } else {
        writeln!(
            o,
            "step 3 (db): R = {}, C is nontrivial",
            both(ctx, t.blocks[0])
        )
        .unwrap();
        let c = &t.evaluated[0];
        writeln!(
            o,
            "  C(R) = (V(R), W(R)) = {} = {}",
            pair(ctx, c),
            pair_power(ctx, c)
        )
        .unwrap();
    }

    let resp = t.response.expect("evaluated queries have a response");
    match t.r_prime {
        Some(rp) => writeln!(
            o,
            "step 4 (db): r' = {rp}, sends Enc(1)·Π C_j(R_j) = {}",
            pair(ctx, &resp)
        )
        .unwrap(),
        None => writeln!(o, "step 4 (db): sends C(R) = {}", pair(ctx, &resp)).unwrap(),
    }

    match (t.decrypted, t.decoded) {
        (Some(m), Some(out)) => {
            writeln!(
                o,
                "step 5 (user): Dec(sk, response) = {}, output {}",
                both(ctx, m),
                both(ctx, out)
            )
            .unwrap();
        }
        _ => writeln!(o, "step 5 (user): the response does not decrypt").unwrap(),
    }
    finish(ctx, t, o)
}

fn finish(ctx: &FieldCtx, t: &Transcript, mut o: String) -> String {
    let at = if t.variant == Variant::Full {
        format!("F(R_{})", t.index)
    } else {
        "F(R)".into()
    };
    writeln!(o, "expected: {at} = {}", both(ctx, t.expected)).unwrap();
    match t.failure {
        None => writeln!(o, "result: success").unwrap(),
        Some(r) => writeln!(o, "result: failure ({})", failure_text(r)).unwrap(),
    }
    o
}

#[derive(Serialize)]
struct TranscriptJson {
    variant: &'static str,
    p: u32,
    n: u32,
    modulus: String,
    x: u32,
    y: String,
    #[serde(rename = "F")]
    f: String,
    index: usize,
    r: u32,
    exponents: Vec<u32>,
    r_prime: Option<u32>,
    blocks: Vec<String>,
    plaintext: String,
    query: Vec<[String; 2]>,
    query_polys: Vec<[String; 2]>,
    evaluated: Vec<[String; 2]>,
    response: Option<[String; 2]>,
    decrypted: Option<String>,
    decoded: Option<String>,
    expected: String,
    success: bool,
    failure: Option<String>,
}

pub fn render_json(ctx: &FieldCtx, t: &Transcript) -> String {
    let el = |e: Elem| ctx.display(e).to_string();
    let ct = |c: &Ciphertext| [el(c.c1), el(c.c2)];
    let doc = TranscriptJson {
        variant: if t.variant == Variant::Full {
            "full"
        } else {
            "restricted"
        },
        p: t.p,
        n: t.n,
        modulus: kpoly(&t.modulus),
        x: t.x,
        y: el(t.y),
        f: ctx.display_lpoly(&t.f).to_string(),
        index: t.index,
        r: t.blinding,
        exponents: t.exponents.clone(),
        r_prime: t.r_prime,
        blocks: t.blocks.iter().map(|&b| el(b)).collect(),
        plaintext: el(t.plaintext),
        query: t.query.iter().map(ct).collect(),
        query_polys: t
            .query_polys
            .iter()
            .map(|(v, w)| [kpoly(v), kpoly(w)])
            .collect(),
        evaluated: t.evaluated.iter().map(ct).collect(),
        response: t.response.as_ref().map(ct),
        decrypted: t.decrypted.map(el),
        decoded: t.decoded.map(el),
        expected: el(t.expected),
        success: t.success,
        failure: t.failure.map(failure_text),
    };
    let mut s = serde_json::to_string_pretty(&doc).expect("transcript serializes");
    s.push('\n');
    s
}
