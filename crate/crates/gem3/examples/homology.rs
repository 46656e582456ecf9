//! The pseudocomplex, exact Smith normal form and first integral homology.
//!
//! ```bash
//! cargo run --example homology
//! ```

use gem3::catalogue::{lens_gem, s2xs1_gem, sphere_gem};
use gem3::invariants::{
    euler_characteristic, homology_h1, pseudocomplex, smith_normal_form, IntMatrix,
};

fn main() {
    let s3 = sphere_gem();
    let cells = pseudocomplex(&s3).unwrap();
    println!(
        "order-2 gem pseudocomplex: {} vertices, {} edges, {} triangles, {} tetrahedra",
        cells.counts[0], cells.counts[1], cells.counts[2], cells.counts[3]
    );
    println!("chi = {}", euler_characteristic(&s3).unwrap());
    assert!(cells.boundary1.mul(&cells.boundary2).is_zero());
    println!("boundary1 . boundary2 = 0");

    // Smith normal form on a plain integer matrix.
    let m = IntMatrix::from_rows(&[vec![4, 2], vec![2, 4]]);
    println!("snf([[4,2],[2,4]]) = {:?}", smith_normal_form(&m));

    // First homology separates the standard families.
    println!("H1(S3) = {}", homology_h1(&s3).unwrap());
    println!("H1(S2xS1) = {}", homology_h1(&s2xs1_gem()).unwrap());
    for (p, q) in [(2u32, 1u32), (3, 1), (4, 1), (5, 2), (6, 1), (7, 3)] {
        let g = lens_gem(p, q).unwrap();
        println!("H1(L({p},{q})) = {}", homology_h1(&g).unwrap());
    }
}
