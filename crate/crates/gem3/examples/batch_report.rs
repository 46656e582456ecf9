//! Batch classification of a catalogue into the CSV report plus per-group
//! GM-complexity bounds.
//!
//! ```bash
//! cargo run --example batch_report
//! ```

use gem3::catalogue::{classify_batch, example_catalogue, write_csv, BatchOptions};

fn main() {
    let entries = example_catalogue();
    let report = classify_batch(&entries, &BatchOptions::default());

    let mut csv = Vec::new();
    write_csv(&report, &mut csv).unwrap();
    print!("{}", String::from_utf8(csv).unwrap());

    eprintln!();
    for bound in &report.bounds {
        eprintln!(
            "group [{}] best gm {} (minimal order: {})",
            bound.manifold_key, bound.best_value, bound.minimal_order_flag
        );
    }
}
