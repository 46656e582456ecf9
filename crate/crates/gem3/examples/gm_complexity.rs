//! GM-complexity with witnesses, the per-choice table, and the agreement
//! of the two independent computation routes.
//!
//! ```bash
//! cargo run --example gm_complexity
//! ```

use gem3::catalogue::{lens_gem, standard_gems};
use gem3::gm::{gm_complexity, gm_complexity_by_closure, gm_complexity_with_table};

fn main() {
    for entry in standard_gems() {
        let report = gm_complexity(&entry.graph).unwrap();
        let name = entry.name.as_deref().unwrap_or(&entry.id);
        println!("gm({name}) = {}", report.value);
        let w = &report.witness;
        println!(
            "  witness: partition {}, deleted residues ({}, {}), region with {} faces / {} vertices",
            w.partition,
            w.d_index,
            w.dp_index,
            w.region.face_indices.len(),
            w.region.vertices.len()
        );
    }

    // The straight-line closure route must agree with the optimized one.
    let g = lens_gem(5, 2).unwrap();
    let fast = gm_complexity(&g).unwrap().value;
    let slow = gm_complexity_by_closure(&g).unwrap();
    println!("L(5,2): optimized route {fast}, stepwise-closure route {slow}");
    assert_eq!(fast, slow);

    // The full table enumerates every (partition, D, D', region) choice.
    let small = lens_gem(2, 1).unwrap();
    let table = gm_complexity_with_table(&small).unwrap().table.unwrap();
    println!("L(2,1) has {} choices; the first few:", table.len());
    for row in table.iter().take(5) {
        println!(
            "  partition {} D={} D'={} region {} -> value {}",
            row.partition, row.d_index, row.dp_index, row.region_key, row.value
        );
    }
}
