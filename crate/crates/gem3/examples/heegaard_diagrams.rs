//! Regular embeddings, Heegaard diagrams, regions and the stepwise region
//! closure, demonstrated on a lens-space crystallization.
//!
//! ```bash
//! cargo run --example heegaard_diagrams
//! ```

use gem3::catalogue::lens_gem;
use gem3::heegaard::{embedding_faces, heegaard_diagram, region_closure, regions};
use gem3::PartitionChoice;

fn main() {
    let g = lens_gem(3, 1).expect("valid parameters");
    println!("L(3,1) crystallization, order {}", g.order());

    for partition in PartitionChoice::ALL {
        let emb = embedding_faces(&g, partition).expect("bipartite crystallization");
        println!(
            "partition {partition}: genus {} surface, {} embedding faces",
            emb.genus,
            emb.face_count()
        );
    }

    // The genus-1 partition carries the interesting diagram.
    let partition = PartitionChoice::ALL[0];
    let diagram = heegaard_diagram(&g, partition, 0, 0).unwrap();
    println!(
        "diagram at {partition}: genus {}, |x| = {}, |y| = {}",
        diagram.genus,
        diagram.x_curves.len(),
        diagram.y_curves.len()
    );

    let rs = regions(&g, partition, 0, 0).unwrap();
    println!("{} region(s) after deleting one residue per side:", rs.len());
    for (k, region) in rs.iter().enumerate() {
        println!("  region {k}: faces {:?}, {} vertices", region.face_indices, region.vertices.len());
    }

    // The same region grown stepwise from a starting face.
    let emb = embedding_faces(&g, partition).unwrap();
    let eps = partition.ordered_colours();
    let want = {
        let (a, b) = (eps[0], eps[2]);
        if a < b { (a, b) } else { (b, a) }
    };
    let (start_index, start) =
        emb.faces.iter().enumerate().find(|(_, f)| f.pair == want).unwrap();
    let closure = region_closure(&g, partition, 0, 0, 0, 0, start).unwrap();
    println!(
        "closure from face {:?}: {} growth step(s), faces per step {:?}",
        start.cycle,
        closure.step_count(),
        closure.steps.iter().map(|s| s.len()).collect::<Vec<_>>()
    );
    let home = rs.iter().find(|r| r.face_indices.contains(&start_index)).unwrap();
    assert_eq!(closure.vertices, home.vertices);
    println!("closure vertices agree with the face-merge region");
}
