//! Connected sums at graph level: homology additivity and the recorded
//! subadditivity of GM-complexity.
//!
//! ```bash
//! cargo run --example connected_sums
//! ```

use gem3::catalogue::{lens_gem, sphere_gem};
use gem3::gm::{admissible_sum_pairs, check_subadditivity, gm_complexity};
use gem3::invariants::homology_h1;

fn main() {
    let rp3 = lens_gem(2, 1).unwrap();
    let l31 = lens_gem(3, 1).unwrap();
    let (v1, v2) = admissible_sum_pairs(&rp3, &l31)[0];
    let sum = rp3.connected_sum(v1, &l31, v2).unwrap();
    println!(
        "L(2,1) # L(3,1): order {} (from {} and {})",
        sum.order(),
        rp3.order(),
        l31.order()
    );
    println!(
        "H1: {} + {} = {}",
        homology_h1(&rp3).unwrap(),
        homology_h1(&l31).unwrap(),
        homology_h1(&sum).unwrap()
    );
    println!("sum is a bipartite crystallization: {}", sum.is_bipartite() && sum.is_contracted());
    println!("gm(sum) = {}", gm_complexity(&sum).unwrap().value);

    // Summing with the order-2 gem reproduces the other summand, so the
    // subadditivity bound holds on every vertex pair.
    let s3 = sphere_gem();
    let pairs = admissible_sum_pairs(&l31, &s3);
    let report = check_subadditivity(&l31, &s3, &pairs).unwrap();
    println!(
        "L(3,1) # S3 over {} vertex pairs: gm bound {} + {}, violations: {}",
        report.outcomes.len(),
        report.gm_first,
        report.gm_second,
        report.violations()
    );

    // For general pairs the outcome is recorded, not asserted.
    let pairs = admissible_sum_pairs(&rp3, &l31);
    let report = check_subadditivity(&rp3, &l31, &pairs[..8.min(pairs.len())]).unwrap();
    for outcome in &report.outcomes {
        println!(
            "  sum at ({}, {}): gm = {} vs bound {} -> {}",
            outcome.v1,
            outcome.v2,
            outcome.sum_value,
            outcome.bound,
            if outcome.holds { "holds" } else { "recorded violation" }
        );
    }
}
