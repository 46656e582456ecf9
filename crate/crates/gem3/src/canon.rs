//! Canonical codes for coloured graphs.
//!
//! Two graphs receive equal codes iff they are isomorphic as edge-coloured
//! graphs — colour-preserving in [`CodeMode::ColourFixed`], composed with an
//! arbitrary permutation of the four colours in
//! [`CodeMode::ColourPermutable`]. The code is the lexicographic minimum of
//! the adjacency word read off a deterministic traversal, taken over all
//! starting vertices (and colour orderings). Because the colouring is proper
//! and the graph is connected, a start vertex plus a colour order determines
//! the whole relabelling, so the minimum is exact without any backtracking.

use crate::graph::{Colour, ColouredGraph, COLOUR_COUNT};

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum CodeMode {
    /// Isomorphism must preserve edge colours.
    ColourFixed,
    /// Isomorphism may additionally permute the four colours.
    ColourPermutable,
}

/// Deterministic minimum code over admissible relabellings.
pub fn canonical_code(g: &ColouredGraph, mode: CodeMode) -> Vec<u8> {
    let n = g.order();
    assert!(n < u16::MAX as usize, "order too large for the code encoding");
    let perms: Vec<[Colour; 4]> = match mode {
        CodeMode::ColourFixed => vec![[0, 1, 2, 3]],
        CodeMode::ColourPermutable => colour_permutations(),
    };
    let mut best: Option<Vec<u16>> = None;
    let mut labels = vec![u16::MAX; n];
    let mut discovered: Vec<u32> = Vec::with_capacity(n);
    for perm in &perms {
        for root in 0..n as u32 {
            let word = traversal_word(g, perm, root, &mut labels, &mut discovered);
            if best.as_ref().is_none_or(|b| word < *b) {
                best = Some(word);
            }
        }
    }
    let word = best.expect("graph has at least one vertex");
    let mut bytes = Vec::with_capacity(2 + 2 * word.len());
    bytes.extend_from_slice(&(n as u16).to_le_bytes());
    for entry in word {
        bytes.extend_from_slice(&entry.to_le_bytes());
    }
    bytes
}

/// Convenience equality test through canonical codes.
pub fn isomorphic(a: &ColouredGraph, b: &ColouredGraph, mode: CodeMode) -> bool {
    a.order() == b.order() && canonical_code(a, mode) == canonical_code(b, mode)
}

/// Reads the adjacency word of the traversal that starts at `root` and
/// relabels vertices in discovery order, visiting colours as `perm[0..4]`.
fn traversal_word(
    g: &ColouredGraph,
    perm: &[Colour; 4],
    root: u32,
    labels: &mut [u16],
    discovered: &mut Vec<u32>,
) -> Vec<u16> {
    let n = g.order();
    labels.fill(u16::MAX);
    discovered.clear();
    labels[root as usize] = 0;
    discovered.push(root);
    let mut next = 1u16;
    let mut word = Vec::with_capacity(COLOUR_COUNT * n);
    let mut idx = 0;
    while idx < discovered.len() {
        let v = discovered[idx];
        idx += 1;
        for &c in perm {
            let w = g.partner(c, v);
            if labels[w as usize] == u16::MAX {
                labels[w as usize] = next;
                next += 1;
                discovered.push(w);
            }
            word.push(labels[w as usize]);
        }
    }
    debug_assert_eq!(discovered.len(), n, "graph must be connected");
    word
}

fn colour_permutations() -> Vec<[Colour; 4]> {
    let mut out = Vec::with_capacity(24);
    let mut items = [0, 1, 2, 3];
    permute(&mut items, 0, &mut out);
    out.sort_unstable();
    out
}

fn permute(items: &mut [Colour; 4], k: usize, out: &mut Vec<[Colour; 4]>) {
    if k == items.len() {
        out.push(*items);
        return;
    }
    for i in k..items.len() {
        items.swap(k, i);
        permute(items, k + 1, out);
        items.swap(k, i);
    }
}
