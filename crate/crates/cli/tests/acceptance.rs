//! Acceptance criteria at their stated sizes. Prints one line per criterion
//! and exits non-zero if any fails.

use std::process::ExitCode;
use std::time::{Duration, Instant};

use ditrace::suite::{self, Criterion, SuiteConfig};

fn config() -> SuiteConfig {
    SuiteConfig {
        seed: 20_240_917,
        monoid_size: 5,
        adjunction_size: 3,
        adjunction_instances: 60,
        grid_side: 4,
        transition_systems: 100,
        embeddings: 20,
        simplex_points: 1000,
        simplex_max_n: 5,
        bound: ditrace_core::DEFAULT_BOUND,
        budget: ditrace_core::DEFAULT_BUDGET,
    }
}

/// Criterion, label, and wall-clock limit where one is stated.
const CRITERIA: &[(Criterion, &str, Option<u64>)] = &[
    (suite::monoid_axioms, "absorption-monoid axiom suite, tables of size 2..5 and constructions", Some(10)),
    (suite::quotient_oracle, "ideal quotient equals congruence closure, tables of size <= 5", None),
    (suite::module_axioms, "module axioms: regular, 100 transition systems, grid bimodules up to 4x4", None),
    (suite::transition_round_trip, "transition-system round trip on 100 random systems", None),
    (suite::adjunctions, "both adjunctions on >= 50 instances with sizes <= 3", Some(60)),
    (suite::group_preservation, "reversed-inverse words of length <= 3 over Z/2, Z/3", None),
    (suite::simplicial_identities, "five simplicial identity families at 1e-12, n <= 5", None),
    (suite::dihomotopy_counts, "dihomotopy counts: empty grid, 3x3 hole, 5x5 plus", Some(5)),
    (suite::pi1_well_defined, "pi1 action independent of representatives, traces <= 3", None),
    (suite::functoriality, "functor laws on 20 random grid embeddings", None),
];

fn main() -> ExitCode {
    let cfg = config();
    let mut failed = 0;
    for (criterion, label, limit) in CRITERIA {
        let start = Instant::now();
        let outcome = criterion(&cfg);
        let elapsed = start.elapsed();
        let in_time = limit.is_none_or(|s| elapsed <= Duration::from_secs(s));
        let passed = outcome.passed && in_time;
        println!(
            "[{}] {label}: {} checks in {:.2?}",
            if passed { "PASS" } else { "FAIL" },
            outcome.checked,
            elapsed
        );
        for f in &outcome.failures {
            println!("       {f}");
        }
        if !in_time {
            println!("       over the {}s limit", limit.unwrap_or_default());
        }
        failed += usize::from(!passed);
    }
    println!("{} of {} criteria passed", CRITERIA.len() - failed, CRITERIA.len());
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
