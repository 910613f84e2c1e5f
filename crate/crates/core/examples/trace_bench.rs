//! Informational timing of the two trace routes at p ≈ 10⁴ and 10⁵.
//!
//! Prints wall-clock numbers for the naive enumeration (one quadratic
//! character per x) against the Lucas-congruence route (one binomial
//! sum plus Hasse-interval resolution), with the one-off field setup
//! reported separately. Nothing here is asserted; the library's speed
//! is not part of its contract. Run with:
//!
//! ```text
//! cargo run --release -p curvecount --example trace_bench
//! ```

use curvecount::charsums::CubicCoeffs;
use curvecount::field::FieldCtx;
use curvecount::frobenius::{trace_general, TraceStrategy};
use std::time::Instant;

fn main() {
    let curves: [(i64, i64, i64, i64); 5] = [
        (1, 0, 0, 2),
        (1, 0, -1, 1),
        (2, 0, 3, 5),
        (1, 0, 7, -11),
        (3, 0, -2, 9),
    ];
    println!(
        "{:>8}  {:>12}  {:>14} {:>7}  {:>14} {:>7}  {:>5}",
        "p", "setup", "naive", "t", "congruence", "t", "same"
    );
    for p in [10_007u64, 100_003] {
        let setup_started = Instant::now();
        let ctx = FieldCtx::new(p, 1).expect("prime field");
        let setup = setup_started.elapsed();
        for (a, b, c, d) in curves {
            let f = CubicCoeffs::from_ints(&ctx, a, b, c, d).expect("cubic");

            let started = Instant::now();
            let naive = trace_general(&ctx, &f, TraceStrategy::Naive).expect("naive trace");
            let naive_time = started.elapsed();

            let started = Instant::now();
            let exact = trace_general(&ctx, &f, TraceStrategy::Congruence).expect("exact trace");
            let exact_time = started.elapsed();

            println!(
                "{:>8}  {:>12}  {:>14?} {:>7}  {:>14?} {:>7}  {:>5}",
                p,
                format!("{setup:?}"),
                naive_time,
                naive.trace(),
                exact_time,
                exact.trace(),
                if naive.trace() == exact.trace() {
                    "yes"
                } else {
                    "NO"
                },
            );
        }
    }
}
