//! Regenerates the shipped example catalogue (`data/standard.jsonl`).
//!
//! ```bash
//! cargo run --example export_catalogue > crates/gem3/data/standard.jsonl
//! ```

use gem3::catalogue::{example_catalogue, write_jsonl};

fn main() {
    print!("{}", write_jsonl(&example_catalogue()));
}
