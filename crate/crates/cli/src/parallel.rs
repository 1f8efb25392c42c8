use epir_core::analysis::{epsilon, FailureStats};
use epir_core::gf::{FieldCtx, LPoly};
use rayon::prelude::*;

/// Overrides the worker count when set to a positive integer.
pub const WORKERS_ENV: &str = "EPIR_WORKERS";

pub fn default_workers() -> usize {
    std::env::var(WORKERS_ENV)
        .ok()
        .and_then(|v| v.trim().parse::<usize>().ok())
        .filter(|&w| w > 0)
        .unwrap_or_else(|| std::thread::available_parallelism().map_or(1, |n| n.get()))
}

/// `η(F)` with the per-key enumerations spread over `workers` threads.
/// The merge is an exact sum, so the result does not depend on `workers`.
pub fn eta_parallel(ctx: &FieldCtx, f: &LPoly, workers: usize) -> FailureStats {
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(workers.max(1))
        .build()
        .expect("thread pool");
    let counts = pool.install(|| {
        (0..ctx.q())
            .into_par_iter()
            .map(|x| epsilon(ctx, x, f))
            .collect()
    });
    FailureStats::from_counts(ctx, f, counts)
}

#[cfg(test)]
mod tests {
    use super::*;
    use epir_core::analysis::eta;

    #[test]
    fn worker_count_does_not_change_the_result() {
        let ctx = FieldCtx::new(2, 6, epir_core::builtin_modulus(6).unwrap()).unwrap();
        let f = LPoly::constant(ctx.generator());
        let serial = eta(&ctx, &f);
        for w in [1, 3, 8] {
            assert_eq!(eta_parallel(&ctx, &f, w), serial);
        }
    }
}
