//! The coloured-graph data model.
//!
//! A gem is a connected 4-regular multigraph with a proper edge colouring by
//! `{0,1,2,3}`, stored as four fixed-point-free involutions on the vertex
//! set: `matching[c][v]` is the unique `c`-coloured neighbour of `v`.
//! Properness is structural in this representation — a vertex has exactly
//! one edge of each colour by construction — so validation only needs to
//! check the involution, fixed-point and connectivity conditions.

use std::fmt;

use crate::error::{GemError, Result};

/// Edge colour, one of `0..4`.
pub type Colour = usize;

/// Number of edge colours.
pub const COLOUR_COUNT: usize = 4;

/// The six unordered colour pairs in lexicographic order. This fixed order
/// is used wherever a six-tuple of residue counts is reported.
pub const COLOUR_PAIRS: [(Colour, Colour); 6] = [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)];

/// Index of an unordered colour pair in [`COLOUR_PAIRS`].
pub fn pair_index(a: Colour, b: Colour) -> usize {
    let (a, b) = if a < b { (a, b) } else { (b, a) };
    COLOUR_PAIRS
        .iter()
        .position(|&p| p == (a, b))
        .expect("colours must be distinct and < 4")
}

/// Nonempty subset of the four colours, packed as a bitmask.
#[derive(Clone, Copy, PartialEq, Eq, Hash)]
pub struct ColourSet(u8);

impl ColourSet {
    pub fn new(colours: &[Colour]) -> Self {
        let mut bits = 0u8;
        for &c in colours {
            assert!(c < COLOUR_COUNT, "colour out of range");
            bits |= 1 << c;
        }
        ColourSet(bits)
    }

    pub fn all() -> Self {
        ColourSet(0b1111)
    }

    pub fn pair(a: Colour, b: Colour) -> Self {
        assert_ne!(a, b, "a colour pair has two distinct colours");
        Self::new(&[a, b])
    }

    /// The three colours other than `c`.
    pub fn complement_of(c: Colour) -> Self {
        assert!(c < COLOUR_COUNT, "colour out of range");
        ColourSet(0b1111 & !(1 << c))
    }

    pub fn contains(self, c: Colour) -> bool {
        c < COLOUR_COUNT && self.0 & (1 << c) != 0
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn iter(self) -> impl Iterator<Item = Colour> {
        (0..COLOUR_COUNT).filter(move |&c| self.contains(c))
    }
}

impl fmt::Debug for ColourSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (k, c) in self.iter().enumerate() {
            if k > 0 {
                write!(f, ",")?;
            }
            write!(f, "{c}")?;
        }
        write!(f, "}}")
    }
}

/// One of the three ways of splitting the colour set into two pairs.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub struct PartitionChoice {
    /// The pair containing colour 0, as `(min, max)`.
    pub pair: (Colour, Colour),
    /// The complementary pair, as `(min, max)`.
    pub copair: (Colour, Colour),
}

impl PartitionChoice {
    /// All three partitions, in the fixed order used for reports.
    pub const ALL: [PartitionChoice; 3] = [
        PartitionChoice { pair: (0, 1), copair: (2, 3) },
        PartitionChoice { pair: (0, 2), copair: (1, 3) },
        PartitionChoice { pair: (0, 3), copair: (1, 2) },
    ];

    /// Position of this partition in [`PartitionChoice::ALL`].
    pub fn index(&self) -> usize {
        Self::ALL
            .iter()
            .position(|p| p == self)
            .expect("partition must be normalized")
    }

    /// The four colours in the order (pair.0, pair.1, copair.0, copair.1).
    /// Indices 0 and 1 select a colour of the first pair, 2 and 3 of the
    /// second — the labelling used by the stepwise region closure.
    pub fn ordered_colours(&self) -> [Colour; 4] {
        [self.pair.0, self.pair.1, self.copair.0, self.copair.1]
    }

    /// The four colour pairs mixing the two sides, sorted lexicographically.
    /// These are the face pairs of the regular embedding for this partition.
    pub fn mixed_pairs(&self) -> [(Colour, Colour); 4] {
        let norm = |a: Colour, b: Colour| if a < b { (a, b) } else { (b, a) };
        let mut mixed = [
            norm(self.pair.0, self.copair.0),
            norm(self.pair.0, self.copair.1),
            norm(self.pair.1, self.copair.0),
            norm(self.pair.1, self.copair.1),
        ];
        mixed.sort_unstable();
        mixed
    }

    /// True when `c` belongs to the first pair.
    pub fn in_pair(&self, c: Colour) -> bool {
        c == self.pair.0 || c == self.pair.1
    }
}

impl fmt::Display for PartitionChoice {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{{{},{}}}|{{{},{}}}",
            self.pair.0, self.pair.1, self.copair.0, self.copair.1
        )
    }
}

/// An edge, identified by its colour and endpoints with `ends.0 <= ends.1`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub struct Edge {
    pub colour: Colour,
    pub ends: (u32, u32),
}

impl Edge {
    pub fn new(colour: Colour, u: u32, v: u32) -> Self {
        let ends = if u <= v { (u, v) } else { (v, u) };
        Edge { colour, ends }
    }
}

/// A connected component of the graph restricted to a colour subset.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Residue {
    /// Vertices of the component, ascending.
    pub vertices: Vec<u32>,
    /// Number of edges of the component (colours in the subset only).
    pub edge_count: usize,
}

impl Residue {
    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    pub fn min_vertex(&self) -> u32 {
        self.vertices[0]
    }

    pub fn contains(&self, v: u32) -> bool {
        self.vertices.binary_search(&v).is_ok()
    }
}

/// All connected components of the graph restricted to a colour subset,
/// listed by ascending minimum vertex.
#[derive(Clone, Debug)]
pub struct ResiduePartition {
    pub colours: ColourSet,
    pub components: Vec<Residue>,
    comp_of: Vec<u32>,
}

impl ResiduePartition {
    /// Number of components; equals `g_{i,j}` when the subset is a pair.
    pub fn count(&self) -> usize {
        self.components.len()
    }

    pub fn component(&self, index: usize) -> &Residue {
        &self.components[index]
    }

    /// Index of the component containing `v`.
    pub fn component_of(&self, v: u32) -> usize {
        self.comp_of[v as usize] as usize
    }
}

/// A pair of equally coloured edges sharing `shared_cycles` of the three
/// bicoloured cycles through their colour.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub struct RhoPair {
    pub colour: Colour,
    pub edge_a: (u32, u32),
    pub edge_b: (u32, u32),
    pub shared_cycles: u8,
}

/// A proper 4-edge-coloured regular multigraph given by four fixed-point-free
/// involutions. Immutable after construction; all operations are pure.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct ColouredGraph {
    order: usize,
    matching: [Vec<u32>; 4],
}

impl ColouredGraph {
    /// Validates and builds a graph from its four matchings. The order is
    /// the common length of the involution arrays.
    pub fn new(matching: [Vec<u32>; 4]) -> Result<Self> {
        let order = matching[0].len();
        if matching.iter().any(|m| m.len() != order) {
            return Err(GemError::Parameter(
                "the four matchings must have equal length".into(),
            ));
        }
        if order == 0 || !order.is_multiple_of(2) {
            return Err(GemError::OddOrder(order));
        }
        for (c, m) in matching.iter().enumerate() {
            for v in 0..order {
                let w = m[v] as usize;
                if w >= order {
                    return Err(GemError::VertexRange { vertex: w, order });
                }
                if w == v {
                    return Err(GemError::FixedPoint { colour: c, vertex: v as u32 });
                }
                if m[w] as usize != v {
                    return Err(GemError::NotInvolution { colour: c, vertex: v as u32 });
                }
            }
        }
        let graph = ColouredGraph { order, matching };
        let components = graph.component_count(ColourSet::all());
        if components != 1 {
            return Err(GemError::Disconnected { components });
        }
        Ok(graph)
    }

    /// Number of vertices, `2p`.
    pub fn order(&self) -> usize {
        self.order
    }

    /// Half the order, `p`.
    pub fn half_order(&self) -> usize {
        self.order / 2
    }

    /// The `c`-coloured neighbour of `v`.
    pub fn partner(&self, colour: Colour, v: u32) -> u32 {
        self.matching[colour][v as usize]
    }

    pub fn matching(&self, colour: Colour) -> &[u32] {
        &self.matching[colour]
    }

    pub fn matchings(&self) -> &[Vec<u32>; 4] {
        &self.matching
    }

    pub fn vertices(&self) -> impl Iterator<Item = u32> {
        0..self.order as u32
    }

    /// All `2 * order` edges, sorted by (colour, endpoints).
    pub fn edges(&self) -> Vec<Edge> {
        let mut out = Vec::with_capacity(2 * self.order);
        for c in 0..COLOUR_COUNT {
            for v in self.vertices() {
                let w = self.partner(c, v);
                if v < w {
                    out.push(Edge::new(c, v, w));
                }
            }
        }
        out
    }

    /// Edges of one colour, sorted by smaller endpoint.
    pub fn colour_edges(&self, colour: Colour) -> Vec<(u32, u32)> {
        self.vertices()
            .filter_map(|v| {
                let w = self.partner(colour, v);
                (v < w).then_some((v, w))
            })
            .collect()
    }

    fn component_count(&self, colours: ColourSet) -> usize {
        let mut seen = vec![false; self.order];
        let mut count = 0;
        let mut stack = Vec::new();
        for start in 0..self.order {
            if seen[start] {
                continue;
            }
            count += 1;
            seen[start] = true;
            stack.push(start as u32);
            while let Some(v) = stack.pop() {
                for c in colours.iter() {
                    let w = self.partner(c, v);
                    if !seen[w as usize] {
                        seen[w as usize] = true;
                        stack.push(w);
                    }
                }
            }
        }
        count
    }

    /// Connected components of the restriction to `colours`.
    pub fn residues(&self, colours: ColourSet) -> Result<ResiduePartition> {
        if colours.is_empty() {
            return Err(GemError::EmptyColourSet);
        }
        let mut comp_of = vec![u32::MAX; self.order];
        let mut components = Vec::new();
        let mut stack = Vec::new();
        for start in 0..self.order as u32 {
            if comp_of[start as usize] != u32::MAX {
                continue;
            }
            let index = components.len() as u32;
            let mut vertices = Vec::new();
            comp_of[start as usize] = index;
            stack.push(start);
            while let Some(v) = stack.pop() {
                vertices.push(v);
                for c in colours.iter() {
                    let w = self.partner(c, v);
                    if comp_of[w as usize] == u32::MAX {
                        comp_of[w as usize] = index;
                        stack.push(w);
                    }
                }
            }
            vertices.sort_unstable();
            // k-regular on the colour subset, so #edges = k|V|/2.
            let edge_count = vertices.len() * colours.len() / 2;
            components.push(Residue { vertices, edge_count });
        }
        Ok(ResiduePartition { colours, components, comp_of })
    }

    /// The six residue counts `g_{i,j}` in [`COLOUR_PAIRS`] order.
    pub fn pair_counts(&self) -> [usize; 6] {
        let mut out = [0; 6];
        for (k, &(i, j)) in COLOUR_PAIRS.iter().enumerate() {
            out[k] = self
                .residues(ColourSet::pair(i, j))
                .expect("pair is nonempty")
                .count();
        }
        out
    }

    /// 2-colouring of the vertices with no monochromatic edge, if one
    /// exists. Class labels are normalized so vertex 0 gets class 0.
    pub fn bipartition(&self) -> Option<Vec<u8>> {
        let mut class = vec![u8::MAX; self.order];
        let mut stack = Vec::new();
        class[0] = 0;
        stack.push(0u32);
        while let Some(v) = stack.pop() {
            for c in 0..COLOUR_COUNT {
                let w = self.partner(c, v);
                if class[w as usize] == u8::MAX {
                    class[w as usize] = 1 - class[v as usize];
                    stack.push(w);
                } else if class[w as usize] == class[v as usize] {
                    return None;
                }
            }
        }
        Some(class)
    }

    /// Bipartite means the encoded manifold is orientable.
    pub fn is_bipartite(&self) -> bool {
        self.bipartition().is_some()
    }

    /// True when every 3-coloured subgraph obtained by dropping one colour
    /// is connected, i.e. the pseudocomplex has exactly four vertices.
    pub fn is_contracted(&self) -> bool {
        (0..COLOUR_COUNT).all(|c| self.component_count(ColourSet::complement_of(c)) == 1)
    }

    /// Sphere criterion: for every colour `c`, each component of the
    /// 3-coloured subgraph on the other colours must satisfy the 2-sphere
    /// Euler identity V - E + F = 2. With E = 3V/2 and F the number of
    /// bicoloured cycles inside the component this reduces to 2F = V + 4.
    pub fn is_manifold_gem(&self) -> bool {
        for c in 0..COLOUR_COUNT {
            let triple = ColourSet::complement_of(c);
            let parts = self.residues(triple).expect("triple is nonempty");
            let mut faces = vec![0usize; parts.count()];
            let pairs: Vec<Colour> = triple.iter().collect();
            for a in 0..pairs.len() {
                for b in a + 1..pairs.len() {
                    let cycles = self
                        .residues(ColourSet::pair(pairs[a], pairs[b]))
                        .expect("pair is nonempty");
                    for cycle in &cycles.components {
                        faces[parts.component_of(cycle.min_vertex())] += 1;
                    }
                }
            }
            for (t, residue) in parts.components.iter().enumerate() {
                if 2 * faces[t] != residue.len() + 4 {
                    return false;
                }
            }
        }
        true
    }

    /// All pairs of distinct equally coloured edges lying on the same
    /// bicoloured cycle for exactly 2 or 3 of the three colour pairs
    /// through their colour. An empty answer means the graph is rigid.
    pub fn rho_pairs(&self) -> Vec<RhoPair> {
        let mut out = Vec::new();
        for c in 0..COLOUR_COUNT {
            let edges = self.colour_edges(c);
            let others: Vec<Colour> = (0..COLOUR_COUNT).filter(|&d| d != c).collect();
            let cycles: Vec<ResiduePartition> = others
                .iter()
                .map(|&d| self.residues(ColourSet::pair(c, d)).expect("pair"))
                .collect();
            for i in 0..edges.len() {
                for j in i + 1..edges.len() {
                    let shared = cycles
                        .iter()
                        .filter(|r| r.component_of(edges[i].0) == r.component_of(edges[j].0))
                        .count() as u8;
                    if shared >= 2 {
                        out.push(RhoPair {
                            colour: c,
                            edge_a: edges[i],
                            edge_b: edges[j],
                            shared_cycles: shared,
                        });
                    }
                }
            }
        }
        out
    }

    /// No rho-pairs at all. A catalogue filter, never a correctness
    /// requirement.
    pub fn is_rigid(&self) -> bool {
        self.rho_pairs().is_empty()
    }

    /// Graph-level connected sum: delete `v1` here and `v2` in `other`,
    /// then weld the dangling `c`-edges pairwise for each colour.
    ///
    /// When both graphs are bipartite the two vertices must come from
    /// opposite classes (after normalizing class labels so that vertex 0
    /// has class 0), which keeps the sum bipartite with a consistent
    /// orientation. For non-bipartite inputs any vertex pair is allowed.
    pub fn connected_sum(&self, v1: u32, other: &ColouredGraph, v2: u32) -> Result<ColouredGraph> {
        if v1 as usize >= self.order {
            return Err(GemError::VertexRange { vertex: v1 as usize, order: self.order });
        }
        if v2 as usize >= other.order {
            return Err(GemError::VertexRange { vertex: v2 as usize, order: other.order });
        }
        if let (Some(b1), Some(b2)) = (self.bipartition(), other.bipartition()) {
            if b1[v1 as usize] == b2[v2 as usize] {
                return Err(GemError::BipartitionClash { v1, v2 });
            }
        }
        let n1 = self.order;
        let n2 = other.order;
        let map1 = |u: u32| if u > v1 { u - 1 } else { u };
        let map2 = |w: u32| (n1 as u32 - 1) + if w > v2 { w - 1 } else { w };
        let mut matching: [Vec<u32>; 4] = Default::default();
        for (c, slot) in matching.iter_mut().enumerate() {
            let mut m = vec![0u32; n1 + n2 - 2];
            for u in self.vertices().filter(|&u| u != v1) {
                let t = self.partner(c, u);
                m[map1(u) as usize] = if t == v1 {
                    map2(other.partner(c, v2))
                } else {
                    map1(t)
                };
            }
            for w in other.vertices().filter(|&w| w != v2) {
                let t = other.partner(c, w);
                m[map2(w) as usize] = if t == v2 {
                    map1(self.partner(c, v1))
                } else {
                    map2(t)
                };
            }
            *slot = m;
        }
        ColouredGraph::new(matching)
    }

    /// Relabel vertices by `perm`, where `perm[old] = new`.
    pub fn relabel(&self, perm: &[u32]) -> ColouredGraph {
        assert_eq!(perm.len(), self.order, "permutation length mismatch");
        let mut matching: [Vec<u32>; 4] = Default::default();
        for c in 0..COLOUR_COUNT {
            let mut m = vec![0u32; self.order];
            for v in self.vertices() {
                m[perm[v as usize] as usize] = perm[self.partner(c, v) as usize];
            }
            matching[c] = m;
        }
        ColouredGraph { order: self.order, matching }
    }

    /// Recolour edges by `sigma`, where `sigma[old colour] = new colour`.
    pub fn permute_colours(&self, sigma: &[Colour; 4]) -> ColouredGraph {
        let mut matching: [Vec<u32>; 4] = Default::default();
        for c in 0..COLOUR_COUNT {
            matching[sigma[c]] = self.matching[c].clone();
        }
        ColouredGraph { order: self.order, matching }
    }
}
