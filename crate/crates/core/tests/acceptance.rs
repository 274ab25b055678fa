//! Acceptance suite. Runs every exit criterion at its stated tolerance (all
//! exact) and time bound, printing one PASS/FAIL line per criterion.
//!
//! `cargo test -p kummer-euler --test acceptance`

use std::process::ExitCode;
use std::time::{Duration, Instant};

use kummer_euler::kummer::closed_form::dt_from_euler;
use kummer_euler::kummer::{
    closed_form_dim3, closed_form_g2, divisor_sum, dt_degree_zero, exp_of_normalized,
    kummer_euler_table, kummer_table_from_series, w_euler_partition_sum, w_euler_series,
    KummerError, KummerParams,
};
use kummer_euler::partitions::{count_order_ideals_table, PartitionStore, Strategy};
use kummer_euler::weights::{a_from_b_partition_sum, a_from_b_series, WeightCache};
use kummer_euler::{BigInt, Rational, Scalar, TruncatedSeries};
use proptest::prelude::*;
use proptest::test_runner::{Config, TestRunner};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

type Outcome = Result<(), String>;
type Criterion = (&'static str, Duration, fn() -> Outcome);

fn q_int(v: BigInt) -> Rational {
    Rational::from_integer(v)
}

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Outcome {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

/// Criterion 1: g=2, r=0, chi(Y)=1 gives n^3 sigma_1(n) for n = 1..=20.
fn generalized_kummer_varieties() -> Outcome {
    let store = PartitionStore::in_memory();
    let params = KummerParams::new(2, 0, 1, 20).map_err(|e| e.to_string())?;
    let table = kummer_euler_table(&params, &store).map_err(|e| e.to_string())?;
    for n in 1..=20u64 {
        let want = BigInt::from(n.pow(3)) * divisor_sum(n, 1);
        ensure(table.chi(n as usize) == &want, || {
            format!("n={n}: {} != {want}", table.chi(n as usize))
        })?;
        ensure(closed_form_g2(n) == want, || {
            format!("closed form disagrees at n={n}")
        })?;
    }
    ensure(table.chi(5) == &BigInt::from(750), || {
        "n=5 should give 750".into()
    })
}

/// Criterion 2: Y a point, g <= 4: exp(sum chi(K_n)/n^{2g} t^n) reproduces
/// brute-force P_g through order 10.
fn point_y_recovers_partition_counts() -> Outcome {
    let store = PartitionStore::in_memory();
    for g in 1..=4u32 {
        let params = KummerParams::new(g, 0, 1, 10).map_err(|e| e.to_string())?;
        let table = kummer_euler_table(&params, &store).map_err(|e| e.to_string())?;
        let recovered = exp_of_normalized(&table.chi, g);
        let brute =
            count_order_ideals_table(g as usize, 10, Strategy::Tree).map_err(|e| e.to_string())?;
        for (k, &count) in brute.iter().enumerate() {
            let want = Rational::from_u64(count);
            ensure(recovered.coeffs()[k] == want, || {
                format!("g={g} k={k}: {} != {want}", recovered.coeffs()[k])
            })?;
        }
        if g == 4 {
            ensure(brute[10] == 3122, || {
                format!("P_4(10) = {} (expected 3122)", brute[10])
            })?;
        }
    }
    Ok(())
}

/// Criterion 3: total dimension three gives chi(Y) n^{2g-1} sigma_2(n).
fn threefold_family() -> Outcome {
    let store = PartitionStore::in_memory();
    for (g, r) in [(1u32, 2u32), (2, 1), (3, 0)] {
        let chis: &[i64] = if r == 0 { &[1] } else { &[-2, 1, 2] };
        for &chi in chis {
            let params = KummerParams::new(g, r, chi, 20).map_err(|e| e.to_string())?;
            let table = kummer_euler_table(&params, &store).map_err(|e| e.to_string())?;
            for n in 1..=20u64 {
                let want = BigInt::from(chi)
                    * num_traits::pow(BigInt::from(n), (2 * g - 1) as usize)
                    * divisor_sum(n, 2);
                ensure(table.chi(n as usize) == &want, || {
                    format!("g={g} r={r} chi={chi} n={n}")
                })?;
                ensure(closed_form_dim3(g, chi, n) == want, || {
                    format!("closed form g={g} n={n}")
                })?;
            }
        }
    }
    Ok(())
}

/// Criterion 4: degree-zero DT invariants.
fn dt_degree_zero_values() -> Outcome {
    let frac = |n: i64, d: i64| Rational::new(n.into(), d.into());
    ensure(dt_degree_zero(1) == frac(1, 1), || "DT_1".into())?;
    ensure(dt_degree_zero(2) == frac(-5, 2), || "DT_2".into())?;
    ensure(dt_degree_zero(3) == frac(10, 3), || "DT_3".into())?;
    let store = PartitionStore::in_memory();
    let table = kummer_euler_table(&KummerParams::new(3, 0, 1, 10).unwrap(), &store)
        .map_err(|e| e.to_string())?;
    for n in 1..=10u64 {
        let via_euler = dt_from_euler(n, table.chi(n as usize));
        ensure(via_euler == dt_degree_zero(n), || {
            format!("n={n}: {via_euler} != {}", dt_degree_zero(n))
        })?;
    }
    Ok(())
}

/// Criterion 5: partition-sum and series routes agree on 50 random
/// sequences with entries in [-3, 3].
fn partition_sum_equivalence() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(20_260_001);
    let weights = WeightCache::<Rational>::new();
    for s in 0..50 {
        let b: Vec<Rational> = (0..=12)
            .map(|k| {
                if k == 0 {
                    Rational::from_i64(1)
                } else {
                    Rational::from_i64(rng.gen_range(-3..=3))
                }
            })
            .collect();
        let series = a_from_b_series(&b, 12).map_err(|e| e.to_string())?;
        for n in 1..=12u32 {
            let sum = a_from_b_partition_sum(&b, n, &weights);
            ensure(sum == series[n as usize - 1], || {
                format!("sequence {s}, n={n}")
            })?;
        }
    }
    Ok(())
}

/// Criterion 6: both routes to chi(W^n_m) agree for m in 1..=3, n <= 12.
fn punctual_dual_routes() -> Outcome {
    let store = PartitionStore::in_memory();
    let weights = WeightCache::new();
    for m in 1..=3u32 {
        let series = w_euler_series(m, 12, &store).map_err(|e| e.to_string())?;
        for n in 1..=12usize {
            let sum = w_euler_partition_sum(m, n, &store, &weights).map_err(|e| e.to_string())?;
            ensure(q_int(series[n - 1].clone()) == sum, || {
                format!("m={m} n={n}: {} != {sum}", series[n - 1])
            })?;
        }
    }
    Ok(())
}

/// Criterion 7: brute force vs product formulas (m = 2, 3; k <= 10) and
/// tree vs dedup enumeration (m <= 4, k <= 8).
fn oracle_vs_closed_forms() -> Outcome {
    for (m, exponent) in [(2usize, 0u8), (3, 1)] {
        let brute = count_order_ideals_table(m, 10, Strategy::Tree).map_err(|e| e.to_string())?;
        let product =
            TruncatedSeries::product_form_with(10, |k| if exponent == 0 { 1 } else { k as i64 });
        for (k, &count) in brute.iter().enumerate() {
            ensure(Rational::from_u64(count) == product.coeffs()[k], || {
                format!("m={m} k={k}")
            })?;
        }
    }
    for m in 1..=4 {
        let tree = count_order_ideals_table(m, 8, Strategy::Tree).map_err(|e| e.to_string())?;
        let dedup = count_order_ideals_table(m, 8, Strategy::Dedup).map_err(|e| e.to_string())?;
        ensure(tree == dedup, || format!("m={m}: {tree:?} vs {dedup:?}"))?;
    }
    Ok(())
}

/// Criterion 8: integrality over the tested grid plus random parameters, and
/// a fractional value aborts with the internal-consistency error.
fn integrality() -> Outcome {
    let store = PartitionStore::in_memory();
    for g in 1..=4u32 {
        for r in 0..=(4 - g) {
            for chi in [-2i64, -1, 0, 1, 2, 3] {
                let params = KummerParams::new(g, r, chi, 12).map_err(|e| e.to_string())?;
                kummer_euler_table(&params, &store)
                    .map_err(|e| format!("g={g} r={r} chi={chi}: {e}"))?;
            }
        }
    }
    for m in 0..=3 {
        w_euler_series(m, 12, &store).map_err(|e| format!("m={m}: {e}"))?;
    }

    let mut runner = TestRunner::new(Config {
        cases: 64,
        failure_persistence: None,
        ..Config::default()
    });
    let strategy = (1u32..=3, 0u32..=2, -1000i64..=1000, 1usize..=12);
    runner
        .run(&strategy, |(g, r, chi, n)| {
            let params = KummerParams::new(g, r, chi, n).unwrap();
            let table = kummer_euler_table(&params, &store);
            prop_assert!(table.is_ok(), "{:?}", table.err());
            Ok(())
        })
        .map_err(|e| e.to_string())?;

    let params = KummerParams::new(2, 1, 1, 4).unwrap();
    let third = Rational::new(1.into(), 3.into());
    let bogus = TruncatedSeries::from_coeffs(vec![
        Rational::from_i64(1),
        third,
        Rational::from_i64(0),
        Rational::from_i64(0),
        Rational::from_i64(0),
    ]);
    match kummer_table_from_series(&params, &bogus) {
        Err(KummerError::NonInteger { .. }) => Ok(()),
        other => Err(format!("fractional input was not rejected: {other:?}")),
    }
}

fn main() -> ExitCode {
    let criteria: [Criterion; 8] = [
        (
            "1 generalized Kummer varieties: n^3 sigma_1(n), n <= 20",
            Duration::from_secs(1),
            generalized_kummer_varieties,
        ),
        (
            "2 Y a point, g <= 4: exp recovers P_g, n,k <= 10",
            Duration::from_secs(300),
            point_y_recovers_partition_counts,
        ),
        (
            "3 dimension three: chi(Y) n^{2g-1} sigma_2(n), n <= 20",
            Duration::from_secs(1),
            threefold_family,
        ),
        (
            "4 degree-zero DT invariants, n <= 10",
            Duration::from_secs(10),
            dt_degree_zero_values,
        ),
        (
            "5 partition-sum vs series on 50 random b, n <= 12",
            Duration::from_secs(30),
            partition_sum_equivalence,
        ),
        (
            "6 chi(W^n_m) dual routes, m <= 3, n <= 12",
            Duration::from_secs(60),
            punctual_dual_routes,
        ),
        (
            "7 brute force vs product formulas; tree vs dedup",
            Duration::from_secs(300),
            oracle_vs_closed_forms,
        ),
        (
            "8 integrality of chi(K_n) and chi(W^n_m)",
            Duration::from_secs(300),
            integrality,
        ),
    ];
    let mut failed = 0;
    for (name, limit, check) in criteria {
        let start = Instant::now();
        let result = check();
        let elapsed = start.elapsed();
        let result = result.and_then(|()| {
            ensure(elapsed <= limit, || {
                format!("took {elapsed:.2?}, limit {limit:?}")
            })
        });
        match result {
            Ok(()) => println!("PASS  criterion {name}  ({elapsed:.2?})"),
            Err(msg) => {
                failed += 1;
                println!("FAIL  criterion {name}  ({elapsed:.2?}): {msg}");
            }
        }
    }
    println!("acceptance: {} passed, {failed} failed", 8 - failed);
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
