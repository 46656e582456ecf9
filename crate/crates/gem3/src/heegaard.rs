//! Regular surface embeddings, Heegaard diagrams and their regions.
//!
//! For a partition of the colours into two pairs, the graph embeds into the
//! orientable surface whose faces are the bicoloured cycles over the four
//! mixed pairs (one colour from each side). Deleting one residue of each
//! partition pair from the two curve systems leaves a Heegaard diagram; the
//! regions of the punctured surface are unions of embedding faces glued
//! across edges of the two deleted residues.
//!
//! Regions are computed twice by independent routes: a global union-find
//! merge over all faces ([`regions`]) and a stepwise closure grown from a
//! single starting face ([`region_closure`]). The two must agree on every
//! admissible choice; the acceptance suite sweeps that equivalence over the
//! whole census.

use crate::error::{GemError, Result};
use crate::graph::{Colour, ColourSet, ColouredGraph, PartitionChoice, Residue, ResiduePartition};

/// A face of the regular embedding: one bicoloured cycle over a mixed pair.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Face {
    /// The mixed colour pair, `(min, max)`.
    pub pair: (Colour, Colour),
    /// The cycle, starting at its minimum vertex; consecutive vertices are
    /// joined by edges alternating `pair.0, pair.1, pair.0, ...`.
    pub cycle: Vec<u32>,
}

impl Face {
    pub fn len(&self) -> usize {
        self.cycle.len()
    }

    pub fn is_empty(&self) -> bool {
        self.cycle.is_empty()
    }

    pub fn min_vertex(&self) -> u32 {
        self.cycle[0]
    }

    /// Edges of the face in cycle order as (colour, u, v).
    pub fn edges(&self) -> impl Iterator<Item = (Colour, u32, u32)> + '_ {
        let k = self.cycle.len();
        (0..k).map(move |i| {
            let colour = if i % 2 == 0 { self.pair.0 } else { self.pair.1 };
            (colour, self.cycle[i], self.cycle[(i + 1) % k])
        })
    }

    fn sorted_vertices(&self) -> Vec<u32> {
        let mut v = self.cycle.clone();
        v.sort_unstable();
        v.dedup();
        v
    }
}

/// The face data of the regular embedding for one partition.
#[derive(Clone, Debug)]
pub struct RegularEmbedding {
    pub partition: PartitionChoice,
    /// Genus of the carrying surface, `g_{pair} - 1`.
    pub genus: usize,
    /// Faces keyed by (mixed pair, minimum vertex), in that order.
    pub faces: Vec<Face>,
    /// `face_slot[4 * v + s]` is the face of mixed pair `s` through `v`.
    face_slot: Vec<u32>,
}

impl RegularEmbedding {
    pub fn face_count(&self) -> usize {
        self.faces.len()
    }

    /// Position of a mixed pair in `partition.mixed_pairs()`.
    pub fn slot(&self, a: Colour, b: Colour) -> usize {
        let key = if a < b { (a, b) } else { (b, a) };
        self.partition
            .mixed_pairs()
            .iter()
            .position(|&p| p == key)
            .expect("pair must mix the two sides of the partition")
    }

    /// Index of the face with mixed pair slot `s` through vertex `v`.
    pub fn face_through(&self, slot: usize, v: u32) -> usize {
        self.face_slot[4 * v as usize + slot] as usize
    }
}

/// Faces and genus of the regular embedding for `partition`.
///
/// Requires a bipartite input (the orientable case); checks that the two
/// partition pairs have equally many residues and that the face count
/// matches the Euler characteristic of the genus-`g` surface.
pub fn embedding_faces(g: &ColouredGraph, partition: PartitionChoice) -> Result<RegularEmbedding> {
    if !g.is_bipartite() {
        return Err(GemError::NonBipartite);
    }
    let g_pair = g
        .residues(ColourSet::pair(partition.pair.0, partition.pair.1))?
        .count();
    let g_copair = g
        .residues(ColourSet::pair(partition.copair.0, partition.copair.1))?
        .count();
    if g_pair != g_copair {
        return Err(GemError::GenusMismatch { left: g_pair, right: g_copair });
    }
    let genus = g_pair - 1;

    let n = g.order();
    let mut faces = Vec::new();
    let mut face_slot = vec![u32::MAX; 4 * n];
    for (slot, &(a, b)) in partition.mixed_pairs().iter().enumerate() {
        for start in 0..n as u32 {
            if face_slot[4 * start as usize + slot] != u32::MAX {
                continue;
            }
            let index = faces.len() as u32;
            let mut cycle = Vec::new();
            let mut v = start;
            let mut colour = a;
            loop {
                face_slot[4 * v as usize + slot] = index;
                cycle.push(v);
                v = g.partner(colour, v);
                colour = if colour == a { b } else { a };
                if v == start && colour == a {
                    break;
                }
            }
            faces.push(Face { pair: (a, b), cycle });
        }
    }

    // V - E + F = 2 - 2g with E = 2V for a 4-regular graph.
    let euler = n as i64 - 2 * n as i64 + faces.len() as i64;
    if euler != 2 - 2 * genus as i64 {
        return Err(GemError::EulerMismatch { expected: 2 - 2 * genus as i64, actual: euler });
    }
    Ok(RegularEmbedding { partition, genus, faces, face_slot })
}

/// A Heegaard diagram extracted from a gem: the embedding surface together
/// with the two curve systems left after deleting one residue per side.
#[derive(Clone, Debug)]
pub struct HeegaardDiagram {
    pub partition: PartitionChoice,
    pub genus: usize,
    /// Index of the deleted residue among the first-pair residues.
    pub deleted_first: usize,
    /// Index of the deleted residue among the second-pair residues.
    pub deleted_second: usize,
    /// All first-pair residues except the deleted one.
    pub x_curves: Vec<Residue>,
    /// All second-pair residues except the deleted one.
    pub y_curves: Vec<Residue>,
    pub faces: Vec<Face>,
}

pub fn heegaard_diagram(
    g: &ColouredGraph,
    partition: PartitionChoice,
    d_index: usize,
    dp_index: usize,
) -> Result<HeegaardDiagram> {
    let ctx = PartitionContext::new(g, partition)?;
    ctx.check_indices(d_index, dp_index)?;
    let keep = |parts: &ResiduePartition, skip: usize| {
        parts
            .components
            .iter()
            .enumerate()
            .filter(|&(i, _r)| i != skip).map(|(_i, r)| r.clone())
            .collect::<Vec<_>>()
    };
    Ok(HeegaardDiagram {
        partition,
        genus: ctx.embedding.genus,
        deleted_first: d_index,
        deleted_second: dp_index,
        x_curves: keep(&ctx.first, d_index),
        y_curves: keep(&ctx.second, dp_index),
        faces: ctx.embedding.faces.clone(),
    })
}

/// A region of the diagram surface minus the curve systems: a set of
/// embedding faces glued across edges of the two deleted residues.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Region {
    /// Ascending indices into the embedding face list.
    pub face_indices: Vec<usize>,
    /// Ascending union of the face vertex sets.
    pub vertices: Vec<u32>,
}

impl Region {
    /// Deterministic key: the smallest face index in the region.
    pub fn key(&self) -> usize {
        self.face_indices[0]
    }
}

/// Shared per-partition state for diagram computations.
pub(crate) struct PartitionContext {
    pub(crate) embedding: RegularEmbedding,
    pub(crate) first: ResiduePartition,
    pub(crate) second: ResiduePartition,
}

impl PartitionContext {
    pub(crate) fn new(g: &ColouredGraph, partition: PartitionChoice) -> Result<Self> {
        let embedding = embedding_faces(g, partition)?;
        let first = g.residues(ColourSet::pair(
            partition.pair.0,
            partition.pair.1,
        ))?;
        let second = g.residues(ColourSet::pair(
            partition.copair.0,
            partition.copair.1,
        ))?;
        Ok(PartitionContext { embedding, first, second })
    }

    pub(crate) fn check_indices(&self, d_index: usize, dp_index: usize) -> Result<()> {
        if d_index >= self.first.count() {
            return Err(GemError::IndexOutOfRange { index: d_index, count: self.first.count() });
        }
        if dp_index >= self.second.count() {
            return Err(GemError::IndexOutOfRange { index: dp_index, count: self.second.count() });
        }
        Ok(())
    }

    /// The two faces bordering an edge of colour `colour` at vertex `v`:
    /// the faces of the two mixed pairs containing `colour`.
    fn bordering_faces(&self, colour: Colour, v: u32) -> [usize; 2] {
        let p = self.embedding.partition;
        let (other_a, other_b) = if p.in_pair(colour) { p.copair } else { p.pair };
        [
            self.embedding.face_through(self.embedding.slot(colour, other_a), v),
            self.embedding.face_through(self.embedding.slot(colour, other_b), v),
        ]
    }

    /// True when the given edge lies on the deleted residue of its side.
    fn on_deleted(&self, colour: Colour, v: u32, d_index: usize, dp_index: usize) -> bool {
        if self.embedding.partition.in_pair(colour) {
            self.first.component_of(v) == d_index
        } else {
            self.second.component_of(v) == dp_index
        }
    }
}

/// All regions for the choice `(partition, d_index, dp_index)`, sorted by
/// their smallest face index. The regions partition the face set.
pub fn regions(
    g: &ColouredGraph,
    partition: PartitionChoice,
    d_index: usize,
    dp_index: usize,
) -> Result<Vec<Region>> {
    let ctx = PartitionContext::new(g, partition)?;
    regions_with(&ctx, d_index, dp_index)
}

pub(crate) fn regions_with(
    ctx: &PartitionContext,
    d_index: usize,
    dp_index: usize,
) -> Result<Vec<Region>> {
    ctx.check_indices(d_index, dp_index)?;
    let face_count = ctx.embedding.face_count();
    let mut sets = DisjointSets::new(face_count);

    let mut merge_across = |residue: &Residue, colours: (Colour, Colour)| {
        for &v in &residue.vertices {
            for colour in [colours.0, colours.1] {
                let [f1, f2] = ctx.bordering_faces(colour, v);
                sets.union(f1, f2);
            }
        }
    };
    merge_across(ctx.first.component(d_index), ctx.embedding.partition.pair);
    merge_across(ctx.second.component(dp_index), ctx.embedding.partition.copair);

    let mut groups: Vec<Vec<usize>> = vec![Vec::new(); face_count];
    for f in 0..face_count {
        groups[sets.find(f)].push(f);
    }
    let mut out = Vec::new();
    for group in groups.into_iter().filter(|g| !g.is_empty()) {
        let mut vertices: Vec<u32> = group
            .iter()
            .flat_map(|&f| ctx.embedding.faces[f].cycle.iter().copied())
            .collect();
        vertices.sort_unstable();
        vertices.dedup();
        out.push(Region { face_indices: group, vertices });
    }
    out.sort_by_key(|r| r.key());
    Ok(out)
}

/// The stepwise closure of one region, grown from a starting face.
#[derive(Clone, Debug)]
pub struct RegionClosure {
    /// Face indices added at each step; `steps[0]` is the starting face.
    pub steps: Vec<Vec<usize>>,
    /// Ascending union of the vertex sets over all steps.
    pub vertices: Vec<u32>,
}

impl RegionClosure {
    /// Number of growth steps after the start.
    pub fn step_count(&self) -> usize {
        self.steps.len() - 1
    }

    /// The closure as a region (faces sorted ascending).
    pub fn to_region(&self) -> Region {
        let mut face_indices: Vec<usize> = self.steps.iter().flatten().copied().collect();
        face_indices.sort_unstable();
        Region { face_indices, vertices: self.vertices.clone() }
    }
}

/// Stepwise closure of the region containing `start`.
///
/// `i` and `j` select the starting mixed pair: colour `i` of the first
/// partition pair and colour `j` of the second, so `start` must be a
/// bicoloured cycle over exactly that pair. Each step crosses every
/// unprocessed edge of the accumulated subgraph that lies on a deleted
/// residue and gathers the bicoloured cycle on the other side; the
/// recursion stops when no unprocessed crossing edges remain, after at
/// most `face count` steps. The accumulated vertex set equals the vertex
/// set of the region containing `start`.
pub fn region_closure(
    g: &ColouredGraph,
    partition: PartitionChoice,
    d_index: usize,
    dp_index: usize,
    i: usize,
    j: usize,
    start: &Face,
) -> Result<RegionClosure> {
    if i > 1 || j > 1 {
        return Err(GemError::Parameter("side selectors i, j must be 0 or 1".into()));
    }
    let ctx = PartitionContext::new(g, partition)?;
    ctx.check_indices(d_index, dp_index)?;

    let eps = partition.ordered_colours();
    let (a, b) = (eps[i], eps[2 + j]);
    let want = if a < b { (a, b) } else { (b, a) };
    if start.pair != want {
        return Err(GemError::NotAFace);
    }
    let slot = ctx.embedding.slot(want.0, want.1);
    let start_index = ctx.embedding.face_through(slot, start.min_vertex());
    if ctx.embedding.faces[start_index].sorted_vertices() != start.sorted_vertices() {
        return Err(GemError::NotAFace);
    }

    let mut in_closure = vec![false; ctx.embedding.face_count()];
    in_closure[start_index] = true;
    let mut steps = vec![vec![start_index]];
    let mut frontier = vec![start_index];
    while !frontier.is_empty() {
        let mut next = Vec::new();
        for &f in &frontier {
            let face = &ctx.embedding.faces[f];
            for (colour, u, _) in face.edges() {
                if !ctx.on_deleted(colour, u, d_index, dp_index) {
                    continue;
                }
                for other in ctx.bordering_faces(colour, u) {
                    if !in_closure[other] {
                        in_closure[other] = true;
                        next.push(other);
                    }
                }
            }
        }
        if next.is_empty() {
            break;
        }
        next.sort_unstable();
        steps.push(next.clone());
        frontier = next;
    }

    let mut vertices: Vec<u32> = in_closure
        .iter()
        .enumerate()
        .filter(|&(_, &present)| present)
        .flat_map(|(f, _)| ctx.embedding.faces[f].cycle.iter().copied())
        .collect();
    vertices.sort_unstable();
    vertices.dedup();
    Ok(RegionClosure { steps, vertices })
}

struct DisjointSets {
    parent: Vec<u32>,
}

impl DisjointSets {
    fn new(n: usize) -> Self {
        DisjointSets { parent: (0..n as u32).collect() }
    }

    fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] as usize != x {
            let up = self.parent[self.parent[x] as usize];
            self.parent[x] = up;
            x = up as usize;
        }
        x
    }

    fn union(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        // Root at the smaller index so group representatives are stable.
        if ra < rb {
            self.parent[rb] = ra as u32;
        } else {
            self.parent[ra] = rb as u32;
        }
    }
}
