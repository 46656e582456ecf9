//! Residues, bipartiteness, contractedness, the manifold criterion and
//! rigidity for the built-in gems.
//!
//! ```bash
//! cargo run --example inspect_invariants
//! ```

use gem3::catalogue::standard_gems;
use gem3::ColourSet;

fn main() {
    for entry in standard_gems() {
        let g = &entry.graph;
        println!("== {} (order {})", entry.name.as_deref().unwrap_or(&entry.id), g.order());
        println!("   bipartite: {}", g.is_bipartite());
        println!("   contracted: {}", g.is_contracted());
        println!("   manifold gem: {}", g.is_manifold_gem());

        let counts = g.pair_counts();
        println!("   residue counts g01..g23: {counts:?}");

        // Residues of a single pair, listed explicitly.
        let residues = g.residues(ColourSet::pair(0, 1)).unwrap();
        for (k, r) in residues.components.iter().enumerate() {
            println!("   {{0,1}}-residue {k}: {:?} ({} edges)", r.vertices, r.edge_count);
        }

        let rho = g.rho_pairs();
        println!("   rho-pairs: {} (rigid: {})", rho.len(), g.is_rigid());
        if let Some(first) = rho.first() {
            println!(
                "   e.g. colour {} edges {:?} and {:?} share {} bicoloured cycles",
                first.colour, first.edge_a, first.edge_b, first.shared_cycles
            );
        }
        println!();
    }
}
