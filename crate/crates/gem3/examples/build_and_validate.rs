//! Build coloured graphs from involutions or GEM text, and see how invalid
//! inputs are reported.
//!
//! ```bash
//! cargo run --example build_and_validate
//! ```

use gem3::catalogue::{parse_gem, serialize_gem};
use gem3::ColouredGraph;

fn main() {
    // The order-2 gem: both vertices joined by all four colours.
    let sphere = ColouredGraph::new([vec![1, 0], vec![1, 0], vec![1, 0], vec![1, 0]])
        .expect("a valid gem");
    println!("built the order-{} gem; edges: {}", sphere.order(), sphere.edges().len());

    // Its GEM text form round-trips exactly.
    let text = serialize_gem(&sphere);
    print!("serialized:\n{text}");
    let parsed = parse_gem(&text).expect("round trip");
    assert_eq!(parsed, sphere);
    println!("round trip ok");

    // Validation failures name the offending structure.
    let fixed_point = ColouredGraph::new([vec![0, 1], vec![1, 0], vec![1, 0], vec![1, 0]]);
    println!("identity matching: {}", fixed_point.unwrap_err());

    let disconnected = ColouredGraph::new([
        vec![1, 0, 3, 2],
        vec![1, 0, 3, 2],
        vec![1, 0, 3, 2],
        vec![1, 0, 3, 2],
    ]);
    println!("parallel blocks: {}", disconnected.unwrap_err());

    // Parse errors carry line and column diagnostics.
    let bad = "gem 2\nc0: 0 0\nc1: 0 1\nc2: 0 1\nc3: 0 1\n";
    println!("text with a fixed point: {}", parse_gem(bad).unwrap_err());
}
