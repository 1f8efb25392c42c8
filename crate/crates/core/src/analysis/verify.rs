//! Checks of the structural facts and bounds, collected into a report
//! rather than stopping at the first failure.

use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec::Vec;
use core::ops::RangeInclusive;

use num_bigint::BigInt;
use num_rational::{BigRational, Ratio};

use super::bounds::{omega_h_with, to_big, IrreducibleCounts};
use super::class_p::{root_report, sample_members};
use super::cosets::{cyclotomic_cosets, decompose_with};
use super::failure::FailureStats;
use crate::elgamal;
use crate::gf::{is_prime, FieldCtx};
use crate::{Error, Result};

/// What a [`Check`] asserts. Each kind has a stable numeric code used as
/// the process exit status by the command line.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum CheckKind {
    /// Cyclotomic cosets partition `Z_q`.
    CosetPartition,
    /// Every coset size divides `n`.
    CosetSizeDividesN,
    /// Cosets of size `d | n` number `N_p(d)` (`p - 1` for `d = 1`).
    CosetCount,
    /// `N_p(d) <= (p^d - p) / d`.
    IrreducibleCountBound,
    /// `1 ∈ U_x`.
    GeneratorClassPresent,
    /// `V` vanishes on a class or `E` has at most one root there.
    RootsPerClass,
    /// `ε(x) >= 1 - |U_x| / |𝔻_x|`.
    EpsilonClassRatio,
    /// `ε(x) > 1 - 2/n` for prime `n`.
    PrimeDegreeEpsilon,
    /// `ε(x) >= 1 - ω(n)`.
    EpsilonOmega,
    /// `h(n + 1) >= h(n)`.
    CutoffNonDecreasing,
    /// `ω(n + 1) < ω(n)`.
    OmegaDecreasing,
    /// `ω(n) >= 5/(n + 9)` for `n >= 7`.
    OmegaFloor,
    /// `η >= 1 - ω(n)`, or `η >= 1 - 2/n` for prime `n >= 7`.
    EtaBound,
    /// `Dec(Enc(m)) = m`.
    ElGamalRoundtrip,
    /// `Dec(c · c') = Dec(c) · Dec(c')`.
    ElGamalHomomorphism,
}

impl CheckKind {
    pub const ALL: [CheckKind; 15] = [
        CheckKind::CosetPartition,
        CheckKind::CosetSizeDividesN,
        CheckKind::CosetCount,
        CheckKind::IrreducibleCountBound,
        CheckKind::GeneratorClassPresent,
        CheckKind::RootsPerClass,
        CheckKind::EpsilonClassRatio,
        CheckKind::PrimeDegreeEpsilon,
        CheckKind::EpsilonOmega,
        CheckKind::CutoffNonDecreasing,
        CheckKind::OmegaDecreasing,
        CheckKind::OmegaFloor,
        CheckKind::EtaBound,
        CheckKind::ElGamalRoundtrip,
        CheckKind::ElGamalHomomorphism,
    ];

    pub fn name(self) -> &'static str {
        match self {
            CheckKind::CosetPartition => "coset-partition",
            CheckKind::CosetSizeDividesN => "coset-size-divides-n",
            CheckKind::CosetCount => "coset-count",
            CheckKind::IrreducibleCountBound => "irreducible-count-bound",
            CheckKind::GeneratorClassPresent => "generator-class-present",
            CheckKind::RootsPerClass => "roots-per-class",
            CheckKind::EpsilonClassRatio => "epsilon-class-ratio",
            CheckKind::PrimeDegreeEpsilon => "prime-degree-epsilon",
            CheckKind::EpsilonOmega => "epsilon-omega",
            CheckKind::CutoffNonDecreasing => "cutoff-non-decreasing",
            CheckKind::OmegaDecreasing => "omega-decreasing",
            CheckKind::OmegaFloor => "omega-floor",
            CheckKind::EtaBound => "eta-bound",
            CheckKind::ElGamalRoundtrip => "elgamal-roundtrip",
            CheckKind::ElGamalHomomorphism => "elgamal-homomorphism",
        }
    }

    /// Exit status for a failed check of this kind (always in `10..=24`).
    pub fn code(self) -> u8 {
        10 + CheckKind::ALL
            .iter()
            .position(|&k| k == self)
            .expect("listed") as u8
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Check {
    pub kind: CheckKind,
    /// The instance checked, e.g. `n=4 x=3`.
    pub subject: String,
    pub lhs: String,
    pub rhs: String,
    pub holds: bool,
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Report {
    pub checks: Vec<Check>,
}

impl Report {
    pub fn push(
        &mut self,
        kind: CheckKind,
        subject: String,
        lhs: impl ToString,
        rhs: impl ToString,
        holds: bool,
    ) {
        self.checks.push(Check {
            kind,
            subject,
            lhs: lhs.to_string(),
            rhs: rhs.to_string(),
            holds,
        });
    }

    pub fn extend(&mut self, other: Report) {
        self.checks.extend(other.checks);
    }

    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.holds)
    }

    pub fn failures(&self) -> impl Iterator<Item = &Check> {
        self.checks.iter().filter(|c| !c.holds)
    }

    pub fn first_failure(&self) -> Option<&Check> {
        self.failures().next()
    }

    /// `Err(BoundViolation)` naming the first failed check.
    pub fn into_result(self) -> Result<Report> {
        match self.first_failure() {
            Some(c) => Err(Error::BoundViolation {
                check: c.kind.name().into(),
                subject: c.subject.clone(),
            }),
            None => Ok(self),
        }
    }
}

fn frac(num: i64, den: i64) -> BigRational {
    BigRational::new(BigInt::from(num), BigInt::from(den))
}

fn one_minus(r: &BigRational) -> BigRational {
    frac(1, 1) - r
}

fn divisors(n: u32) -> impl Iterator<Item = u32> {
    (1..=n).filter(move |d| n.is_multiple_of(*d))
}

/// Coset structure mod `p^n - 1` and the irreducible counts it mirrors.
pub fn verify_cosets(p: u32, degrees: RangeInclusive<u32>) -> Result<Report> {
    let mut counts = IrreducibleCounts::new(p)?;
    let mut report = Report::default();
    for n in degrees {
        let q = p
            .checked_pow(n)
            .filter(|&s| s <= 1 << 24)
            .ok_or(Error::IntractableSize("coset table exceeds its cap"))?
            - 1;
        let table = cyclotomic_cosets(q, p);
        let subject = format!("p={p} n={n}");
        report.push(
            CheckKind::CosetPartition,
            subject.clone(),
            table.cosets.len(),
            "cosets",
            table.is_partition(),
        );

        let mut sizes: Vec<usize> = table.cosets.iter().map(|c| c.members.len()).collect();
        sizes.sort_unstable();
        sizes.dedup();
        let listed: Vec<String> = sizes.iter().map(|s| s.to_string()).collect();
        let holds = sizes.iter().all(|&s| (n as usize).is_multiple_of(s));
        report.push(
            CheckKind::CosetSizeDividesN,
            subject,
            listed.join(","),
            format!("divisors of {n}"),
            holds,
        );

        for d in divisors(n) {
            let found = table.count_of_size(d as usize) as u64;
            let want = if d == 1 { p as u64 - 1 } else { counts.get(d)? };
            report.push(
                CheckKind::CosetCount,
                format!("p={p} n={n} d={d}"),
                found,
                want,
                found == want,
            );
        }
    }
    Ok(report)
}

/// `N_p(d) <= (p^d - p)/d` for `d` in `degrees` (`d >= 2`).
pub fn verify_irreducible_bound(p: u32, degrees: RangeInclusive<u32>) -> Result<Report> {
    let mut counts = IrreducibleCounts::new(p)?;
    let mut report = Report::default();
    for d in degrees {
        let nd = counts.get(d)?;
        let top = (p as u64).pow(d) - p as u64;
        report.push(
            CheckKind::IrreducibleCountBound,
            format!("p={p} d={d}"),
            nd,
            Ratio::new(top, d as u64),
            nd * d as u64 <= top,
        );
    }
    Ok(report)
}

/// For every key: `1 ∈ U_x`, and the root property for each sample member
/// of `𝒫` over all `(s, r)`.
pub fn verify_root_property(ctx: &FieldCtx) -> Result<Report> {
    let table = cyclotomic_cosets(ctx.q(), ctx.p());
    let members = sample_members(ctx);
    let mut report = Report::default();
    let n = ctx.n();
    for x in 0..ctx.q() {
        let decomp = decompose_with(ctx, &table, x)?;
        let subject = format!("n={n} x={x}");
        let present = decomp.reps.contains(&1);
        report.push(
            CheckKind::GeneratorClassPresent,
            subject,
            present as u8,
            1,
            present,
        );
        for f in &members {
            let mut worst = 0usize;
            let mut holds = true;
            for s in 0..ctx.q() {
                for r in 0..ctx.p() {
                    for c in root_report(ctx, &decomp, f, s, r) {
                        if c.v_zeros != c.size {
                            worst = worst.max(c.roots);
                        }
                        holds &= c.holds();
                    }
                }
            }
            let subject = format!("n={n} x={x} F={}", ctx.display_lpoly(f));
            report.push(CheckKind::RootsPerClass, subject, worst, "<= 1", holds);
        }
    }
    Ok(report)
}

/// Bounds checked against computed failure statistics for `F = g`.
pub fn verify_failure_bounds(stats: &FailureStats) -> Result<Report> {
    let ctx = FieldCtx::new(stats.p, stats.n, stats.modulus.clone())?;
    let n = stats.n;
    let omega = to_big(super::bounds::omega_h(stats.p, n)?.omega);
    let mut report = Report::default();
    let table = cyclotomic_cosets(ctx.q(), ctx.p());
    for count in &stats.per_x {
        let eps = count.value();
        let decomp = decompose_with(&ctx, &table, count.x)?;
        let subject = format!("n={n} x={}", count.x);
        report.push(
            CheckKind::GeneratorClassPresent,
            subject.clone(),
            decomp.reps.contains(&1) as u8,
            1,
            decomp.reps.contains(&1),
        );
        let ratio = one_minus(&frac(decomp.reps.len() as i64, decomp.blocks as i64));
        report.push(
            CheckKind::EpsilonClassRatio,
            subject.clone(),
            &eps,
            &ratio,
            eps >= ratio,
        );
        let floor = one_minus(&omega);
        report.push(
            CheckKind::EpsilonOmega,
            subject.clone(),
            &eps,
            &floor,
            eps >= floor,
        );
        if is_prime(n) {
            let floor = one_minus(&frac(2, n as i64));
            report.push(
                CheckKind::PrimeDegreeEpsilon,
                subject,
                &eps,
                &floor,
                eps > floor,
            );
        }
    }
    let floor = if n >= 7 && is_prime(n) {
        one_minus(&frac(2, n as i64))
    } else {
        one_minus(&omega)
    };
    report.push(
        CheckKind::EtaBound,
        format!("n={n}"),
        &stats.eta,
        &floor,
        stats.eta >= floor,
    );
    Ok(report)
}

/// Monotonicity of `h` and `ω` and the `5/(n + 9)` floor across `degrees`.
pub fn verify_omega_shape(p: u32, degrees: RangeInclusive<u32>) -> Result<Report> {
    let mut counts = IrreducibleCounts::new(p)?;
    let mut report = Report::default();
    let mut prev = None;
    for n in degrees {
        let rec = omega_h_with(&mut counts, n)?;
        if let Some((pn, ph, pw)) = prev {
            if pn >= 3 {
                report.push(
                    CheckKind::CutoffNonDecreasing,
                    format!("n={n}"),
                    rec.h,
                    ph,
                    rec.h >= ph,
                );
            }
            report.push(
                CheckKind::OmegaDecreasing,
                format!("n={n}"),
                rec.omega,
                pw,
                rec.omega < pw,
            );
        }
        if n >= 7 {
            let floor = Ratio::new(5, n as u64 + 9);
            report.push(
                CheckKind::OmegaFloor,
                format!("n={n}"),
                rec.omega,
                floor,
                rec.omega >= floor,
            );
        }
        prev = Some((n, rec.h, rec.omega));
    }
    Ok(report)
}

/// Exhaustive ElGamal roundtrip and homomorphism over every key, plaintext
/// pair and exponent.
pub fn verify_elgamal(ctx: &FieldCtx) -> Result<Report> {
    let q = ctx.q();
    let mut report = Report::default();
    for x in 0..q {
        let kp = elgamal::keygen(ctx, x)?;
        let (mut trips, mut bad_trip) = (0u64, 0u64);
        let (mut prods, mut bad_prod) = (0u64, 0u64);
        for m in ctx.nonzero_elements() {
            for s in 0..q {
                let c = elgamal::encrypt(ctx, &kp.pk, m, s)?;
                trips += 1;
                bad_trip += (elgamal::decrypt(ctx, &kp.sk, &c)? != m) as u64;
                for m2 in ctx.nonzero_elements() {
                    let c2 = elgamal::encrypt(ctx, &kp.pk, m2, (s + m2.packed()) % q)?;
                    prods += 1;
                    bad_prod += (elgamal::decrypt(ctx, &kp.sk, &c.combine(ctx, &c2))?
                        != ctx.mul(m, m2)) as u64;
                }
            }
        }
        let subject = format!("q={q} x={x}");
        report.push(
            CheckKind::ElGamalRoundtrip,
            subject.clone(),
            trips - bad_trip,
            trips,
            bad_trip == 0,
        );
        report.push(
            CheckKind::ElGamalHomomorphism,
            subject,
            prods - bad_prod,
            prods,
            bad_prod == 0,
        );
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::analysis::failure::eta;
    use crate::gf::LPoly;

    fn ctx(n: u32) -> FieldCtx {
        FieldCtx::new(2, n, crate::builtin_modulus(n).unwrap()).unwrap()
    }

    #[test]
    fn codes_are_distinct() {
        let mut codes: Vec<u8> = CheckKind::ALL.iter().map(|k| k.code()).collect();
        codes.dedup();
        assert_eq!(codes.len(), CheckKind::ALL.len());
        assert_eq!(CheckKind::CosetPartition.code(), 10);
    }

    #[test]
    fn coset_suite_passes() {
        let r = verify_cosets(2, 2..=12).unwrap();
        assert!(r.passed(), "{:?}", r.first_failure());
        assert!(verify_cosets(3, 2..=6).unwrap().passed());
        assert!(verify_irreducible_bound(2, 2..=12).unwrap().passed());
    }

    #[test]
    fn small_root_sweep_passes() {
        for n in 2..=3 {
            let r = verify_root_property(&ctx(n)).unwrap();
            assert!(r.passed(), "{:?}", r.first_failure());
        }
    }

    #[test]
    fn failure_bounds_hold_for_small_n() {
        for n in 2..=5 {
            let c = ctx(n);
            let stats = eta(&c, &LPoly::constant(c.generator()));
            let r = verify_failure_bounds(&stats).unwrap();
            assert!(r.passed(), "{:?}", r.first_failure());
        }
    }

    #[test]
    fn omega_shape_passes() {
        let r = verify_omega_shape(2, 2..=120).unwrap();
        assert!(r.passed(), "{:?}", r.first_failure());
    }

    #[test]
    fn elgamal_suite_passes() {
        let r = verify_elgamal(&ctx(3)).unwrap();
        assert_eq!(r.checks.len(), 14);
        assert!(r.into_result().is_ok());
    }

    #[test]
    fn failed_check_becomes_error() {
        let mut r = Report::default();
        r.push(CheckKind::OmegaFloor, "n=9".into(), 0, 1, false);
        assert_eq!(
            r.into_result(),
            Err(Error::BoundViolation {
                check: "omega-floor".into(),
                subject: "n=9".into()
            })
        );
    }
}
