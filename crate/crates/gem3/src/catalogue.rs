//! Catalogue I/O, generators for standard families, the small-order census
//! enumerator, and batch classification.
//!
//! Two interchange formats are supported.
//!
//! GEM text, one record per graph:
//!
//! ```text
//! gem 8                      # header: the (even) number of vertices
//! c0: 0 1  2 3  4 5  6 7    # colour-0 matching as vertex pairs
//! c1: 0 3  1 2  4 7  5 6
//! c2: 0 5  1 4  2 7  3 6
//! c3: 0 7  1 6  2 5  3 4
//! ```
//!
//! `#` starts a comment, vertices are 0-indexed base-10, and each colour
//! line carries exactly `order/2` pairs. A stream may hold any number of
//! records back to back.
//!
//! JSONL, one object per line with keys `id`, `order`, `matchings` (four
//! arrays where entry `i` is the partner of vertex `i`), and optional
//! `name`, `known_complexity`, `tags`.

use std::collections::{BTreeMap, HashSet};
use std::io::Write;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::canon::{canonical_code, CodeMode};
use crate::error::{GemError, Result};
use crate::gm::{gm_complexity, group_key, minimal_genus, CatalogueBound, Grouping};
use crate::graph::{ColouredGraph, COLOUR_COUNT};
use crate::invariants::{gem_complexity_bound, homology_h1, AbelianGroup};

/// Default ceiling for the census enumerator. The colour-matching space at
/// order 10 is already near 10^9 triples before pruning; beyond that is out
/// of desk scale.
pub const DEFAULT_CEILING: usize = 10;

/// Cached invariants of a classified entry.
#[derive(Clone, Debug, PartialEq)]
pub struct Computed {
    pub bipartite: bool,
    pub rigid: bool,
    pub pair_counts: [usize; 6],
    pub genus_min: Option<usize>,
    pub h1: Option<AbelianGroup>,
    pub gm: Option<u32>,
    pub k_bound: Option<u32>,
}

/// One catalogue entry: a validated graph plus optional annotations and
/// cached invariants. Cached fields, when present, must equal fresh
/// recomputation.
#[derive(Clone, Debug)]
pub struct CatalogueEntry {
    pub id: String,
    pub graph: ColouredGraph,
    pub name: Option<String>,
    pub known_complexity: Option<u32>,
    pub tags: Vec<String>,
    pub computed: Option<Computed>,
}

impl CatalogueEntry {
    pub fn new(id: impl Into<String>, graph: ColouredGraph) -> Self {
        CatalogueEntry {
            id: id.into(),
            graph,
            name: None,
            known_complexity: None,
            tags: Vec::new(),
            computed: None,
        }
    }

    pub fn named(mut self, name: impl Into<String>) -> Self {
        self.name = Some(name.into());
        self
    }

    pub fn with_complexity(mut self, c: u32) -> Self {
        self.known_complexity = Some(c);
        self
    }

    pub fn tagged(mut self, tag: impl Into<String>) -> Self {
        self.tags.push(tag.into());
        self
    }

    /// Freshly computed invariants of the entry's graph.
    pub fn computed_invariants(&self) -> Computed {
        let g = &self.graph;
        Computed {
            bipartite: g.is_bipartite(),
            rigid: g.is_rigid(),
            pair_counts: g.pair_counts(),
            genus_min: minimal_genus(g).ok(),
            h1: homology_h1(g).ok(),
            gm: gm_complexity(g).ok().map(|r| r.value),
            k_bound: gem_complexity_bound(g).ok(),
        }
    }

    /// Fills the invariant cache. Cached values always equal fresh
    /// recomputation — classification recomputes from scratch, so a stale
    /// cache is detectable by comparing against the report row.
    pub fn cache_invariants(&mut self) {
        self.computed = Some(self.computed_invariants());
    }
}

// ---------------------------------------------------------------------------
// GEM text format
// ---------------------------------------------------------------------------

/// Serializes one graph as a GEM record.
pub fn serialize_gem(g: &ColouredGraph) -> String {
    let mut out = format!("gem {}\n", g.order());
    for c in 0..COLOUR_COUNT {
        out.push_str(&format!("c{c}:"));
        for (u, v) in g.colour_edges(c) {
            out.push_str(&format!(" {u} {v}"));
        }
        out.push('\n');
    }
    out
}

/// Parses a text containing exactly one GEM record.
pub fn parse_gem(text: &str) -> Result<ColouredGraph> {
    let records = parse_gems(text)?;
    match records.len() {
        1 => Ok(records.into_iter().next().unwrap()),
        n => Err(GemError::Parameter(format!("expected exactly one gem record, found {n}"))),
    }
}

/// Parses every GEM record in a stream.
pub fn parse_gems(text: &str) -> Result<Vec<ColouredGraph>> {
    split_gem_records(text)?
        .into_iter()
        .map(|record| parse_record(&record))
        .collect()
}

/// Splits a stream into records without validating them, so that a bad
/// record does not hide later ones. Used by `validate`-style callers.
pub fn parse_gems_lenient(text: &str) -> Vec<Result<ColouredGraph>> {
    match split_gem_records(text) {
        Ok(records) => records.iter().map(parse_record).collect(),
        Err(e) => vec![Err(e)],
    }
}

/// A GEM record: the header line plus following colour lines, each with its
/// 1-based line number.
type RawRecord = Vec<(usize, String)>;

fn split_gem_records(text: &str) -> Result<Vec<RawRecord>> {
    let mut records: Vec<RawRecord> = Vec::new();
    for (idx, raw) in text.lines().enumerate() {
        let line_no = idx + 1;
        let line = match raw.find('#') {
            Some(cut) => &raw[..cut],
            None => raw,
        };
        if line.trim().is_empty() {
            continue;
        }
        let first = line.split_whitespace().next().unwrap();
        if first == "gem" {
            records.push(vec![(line_no, line.to_string())]);
        } else if let Some(record) = records.last_mut() {
            record.push((line_no, line.to_string()));
        } else {
            return Err(GemError::Syntax {
                line: line_no,
                column: column_of(line, 0),
                message: format!("expected 'gem <order>' header, found '{first}'"),
            });
        }
    }
    Ok(records)
}

fn column_of(line: &str, token_index: usize) -> usize {
    let mut seen = 0;
    let mut col = 1;
    let mut in_token = false;
    for (pos, ch) in line.char_indices() {
        if ch.is_whitespace() {
            in_token = false;
        } else if !in_token {
            in_token = true;
            if seen == token_index {
                col = pos + 1;
                break;
            }
            seen += 1;
        }
    }
    col
}

fn parse_record(record: &RawRecord) -> Result<ColouredGraph> {
    let (header_line, header) = &record[0];
    let tokens: Vec<&str> = header.split_whitespace().collect();
    if tokens.len() != 2 {
        return Err(GemError::Syntax {
            line: *header_line,
            column: column_of(header, tokens.len().min(1)),
            message: "header must be 'gem <order>'".into(),
        });
    }
    let order: usize = tokens[1].parse().map_err(|_| GemError::Syntax {
        line: *header_line,
        column: column_of(header, 1),
        message: format!("order must be a non-negative integer, found '{}'", tokens[1]),
    })?;
    if order == 0 || !order.is_multiple_of(2) {
        return Err(GemError::Semantic {
            line: *header_line,
            source: Box::new(GemError::OddOrder(order)),
        });
    }
    if record.len() != 1 + COLOUR_COUNT {
        return Err(GemError::Syntax {
            line: *header_line,
            column: 1,
            message: format!(
                "a record needs colour lines c0..c3, found {} line(s)",
                record.len() - 1
            ),
        });
    }

    let mut matching: [Vec<u32>; 4] = Default::default();
    for (c, (line_no, line)) in record[1..].iter().enumerate() {
        let tokens: Vec<&str> = line.split_whitespace().collect();
        let expected_label = format!("c{c}:");
        if tokens[0] != expected_label {
            return Err(GemError::Syntax {
                line: *line_no,
                column: column_of(line, 0),
                message: format!("expected '{expected_label}', found '{}'", tokens[0]),
            });
        }
        if tokens.len() != 1 + order {
            return Err(GemError::Syntax {
                line: *line_no,
                column: column_of(line, tokens.len() - 1),
                message: format!(
                    "colour line must list {} vertex pairs, found {} value(s)",
                    order / 2,
                    tokens.len() - 1
                ),
            });
        }
        let mut m = vec![u32::MAX; order];
        for pair in 0..order / 2 {
            let mut ends = [0usize; 2];
            for (slot, end) in ends.iter_mut().enumerate() {
                let tok_idx = 1 + 2 * pair + slot;
                let value: usize = tokens[tok_idx].parse().map_err(|_| GemError::Syntax {
                    line: *line_no,
                    column: column_of(line, tok_idx),
                    message: format!("vertex must be an integer, found '{}'", tokens[tok_idx]),
                })?;
                if value >= order {
                    return Err(GemError::Semantic {
                        line: *line_no,
                        source: Box::new(GemError::VertexRange { vertex: value, order }),
                    });
                }
                *end = value;
            }
            let [u, v] = ends;
            if u == v {
                return Err(GemError::Semantic {
                    line: *line_no,
                    source: Box::new(GemError::FixedPoint { colour: c, vertex: u as u32 }),
                });
            }
            for end in ends {
                if m[end] != u32::MAX {
                    return Err(GemError::Semantic {
                        line: *line_no,
                        source: Box::new(GemError::NotInvolution {
                            colour: c,
                            vertex: end as u32,
                        }),
                    });
                }
            }
            m[u] = v as u32;
            m[v] = u as u32;
        }
        matching[c] = m;
    }

    ColouredGraph::new(matching).map_err(|e| GemError::Semantic {
        line: *header_line,
        source: Box::new(e),
    })
}

// ---------------------------------------------------------------------------
// JSONL format
// ---------------------------------------------------------------------------

#[derive(Serialize, Deserialize)]
struct JsonRecord {
    id: String,
    order: usize,
    matchings: [Vec<u32>; 4],
    #[serde(skip_serializing_if = "Option::is_none")]
    name: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    known_complexity: Option<u32>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    tags: Vec<String>,
}

/// Reads a JSONL catalogue; each line becomes one entry. Ids must be
/// unique within the catalogue.
pub fn read_jsonl(text: &str) -> Result<Vec<CatalogueEntry>> {
    let mut out = Vec::new();
    let mut seen_ids = HashSet::new();
    for (idx, line) in text.lines().enumerate() {
        let line_no = idx + 1;
        if line.trim().is_empty() {
            continue;
        }
        let record: JsonRecord = serde_json::from_str(line).map_err(|e| GemError::Semantic {
            line: line_no,
            source: Box::new(GemError::Json(e)),
        })?;
        if record.matchings[0].len() != record.order {
            return Err(GemError::Semantic {
                line: line_no,
                source: Box::new(GemError::Parameter(format!(
                    "order {} does not match matching length {}",
                    record.order,
                    record.matchings[0].len()
                ))),
            });
        }
        if !seen_ids.insert(record.id.clone()) {
            return Err(GemError::Semantic {
                line: line_no,
                source: Box::new(GemError::Parameter(format!(
                    "duplicate catalogue id '{}'",
                    record.id
                ))),
            });
        }
        let graph = ColouredGraph::new(record.matchings).map_err(|e| GemError::Semantic {
            line: line_no,
            source: Box::new(e),
        })?;
        out.push(CatalogueEntry {
            id: record.id,
            graph,
            name: record.name,
            known_complexity: record.known_complexity,
            tags: record.tags,
            computed: None,
        });
    }
    Ok(out)
}

/// Writes entries as JSONL, one object per line.
pub fn write_jsonl(entries: &[CatalogueEntry]) -> String {
    let mut out = String::new();
    for entry in entries {
        let record = JsonRecord {
            id: entry.id.clone(),
            order: entry.graph.order(),
            matchings: entry.graph.matchings().clone(),
            name: entry.name.clone(),
            known_complexity: entry.known_complexity,
            tags: entry.tags.clone(),
        };
        out.push_str(&serde_json::to_string(&record).expect("record serializes"));
        out.push('\n');
    }
    out
}

// ---------------------------------------------------------------------------
// Standard families
// ---------------------------------------------------------------------------

/// The unique order-2 gem: all four matchings swap the two vertices.
/// Encodes the 3-sphere.
pub fn sphere_gem() -> ColouredGraph {
    ColouredGraph::new([vec![1, 0], vec![1, 0], vec![1, 0], vec![1, 0]])
        .expect("order-2 gem is valid")
}

/// Order-8 crystallization of the orientable S2-bundle over S1: the unique
/// order-8 class with infinite first homology (rank 1), non-rigid, with all
/// six residue counts equal to 2. Vertex labels are the census
/// representative's.
pub fn s2xs1_gem() -> ColouredGraph {
    ColouredGraph::new([
        vec![1, 0, 3, 2, 5, 4, 7, 6],
        vec![1, 0, 4, 6, 2, 7, 3, 5],
        vec![2, 3, 0, 1, 6, 7, 4, 5],
        vec![5, 7, 3, 2, 6, 0, 4, 1],
    ])
    .expect("S2xS1 gem is valid")
}

/// Crystallization of the lens space L(p,q) with `4p` vertices.
///
/// Twisted-grid construction on two rows of length `2p`: colours 0 and 1
/// alternate along each row, colour 2 joins the rows vertically and colour
/// 3 joins them with a horizontal twist of `2q`. The contract is the
/// post-conditions: bipartite manifold crystallization, H1 = Z/p, minimal
/// genus 1 and order at most `4p`.
pub fn lens_gem(p: u32, q: u32) -> Result<ColouredGraph> {
    if p < 2 {
        return Err(GemError::Parameter(format!("lens parameter p must be >= 2, got {p}")));
    }
    if q == 0 || q >= p {
        return Err(GemError::Parameter(format!(
            "lens parameter q must satisfy 1 <= q < p, got q={q}, p={p}"
        )));
    }
    if gcd(p, q) != 1 {
        return Err(GemError::Parameter(format!("lens parameters must be coprime, got ({p},{q})")));
    }
    let width = 2 * p as usize;
    let order = 2 * width;
    let at = |i: usize, j: usize| (j * width + i) as u32;
    let mut matching: [Vec<u32>; 4] = Default::default();
    for m in matching.iter_mut() {
        *m = vec![0; order];
    }
    for j in 0..2 {
        for i in 0..width {
            // Colours 0 and 1 alternate along the row.
            let right = at((i + 1) % width, j);
            let here = at(i, j);
            if i % 2 == 0 {
                matching[0][here as usize] = right;
                matching[0][right as usize] = here;
            } else {
                matching[1][here as usize] = right;
                matching[1][right as usize] = here;
            }
        }
    }
    let twist = (2 * q) as usize;
    for i in 0..width {
        let top = at(i, 0);
        matching[2][top as usize] = at(i, 1);
        matching[2][at(i, 1) as usize] = top;
        let twisted = at((i + twist) % width, 1);
        matching[3][top as usize] = twisted;
        matching[3][twisted as usize] = top;
    }
    ColouredGraph::new(matching)
}

fn gcd(a: u32, b: u32) -> u32 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

/// The built-in named gems: the 3-sphere, the order-8 S2 x S1 witness, and
/// the two smallest lens spaces.
pub fn standard_gems() -> Vec<CatalogueEntry> {
    vec![
        CatalogueEntry::new("s3", sphere_gem()).named("S3").with_complexity(0),
        CatalogueEntry::new("s2xs1", s2xs1_gem()).named("S2xS1").with_complexity(0),
        CatalogueEntry::new("l2_1", lens_gem(2, 1).expect("valid parameters"))
            .named("L(2,1)")
            .with_complexity(0)
            .tagged("lens"),
        CatalogueEntry::new("l3_1", lens_gem(3, 1).expect("valid parameters"))
            .named("L(3,1)")
            .with_complexity(0)
            .tagged("lens"),
    ]
}

/// The shipped example catalogue: the standard gems plus every coprime lens
/// pair with `2 <= p <= 7`.
///
/// `known_complexity` is attached only where the group minimum over *these*
/// entries is meaningful: S3, S2xS1 and the lens spaces L(p,1) and
/// L(p,p-1), whose order-4p gems are minimal crystallizations. The other
/// lens gems ship unannotated — their minimal crystallizations are smaller
/// than the member built here, so a desk-scale group minimum would
/// overstate their gem-complexity.
pub fn example_catalogue() -> Vec<CatalogueEntry> {
    let mut entries = standard_gems();
    let complexity = |p: u32, q: u32| -> Option<u32> {
        // c(L(p,1)) for p = 2..7, shared by the mirror L(p,p-1).
        if q == 1 || q == p - 1 {
            Some(match p {
                2 | 3 => 0,
                4 => 1,
                5 => 2,
                6 => 3,
                7 => 4,
                _ => unreachable!(),
            })
        } else {
            None
        }
    };
    for p in 2..=7u32 {
        for q in 1..p {
            if gcd(p, q) != 1 || (p, q) == (2, 1) || (p, q) == (3, 1) {
                continue;
            }
            let mut entry = CatalogueEntry::new(
                format!("l{p}_{q}"),
                lens_gem(p, q).expect("valid parameters"),
            )
            .named(format!("L({p},{q})"))
            .tagged("lens");
            if let Some(c) = complexity(p, q) {
                entry = entry.with_complexity(c);
            }
            entries.push(entry);
        }
    }
    entries
}

// ---------------------------------------------------------------------------
// Census enumeration
// ---------------------------------------------------------------------------

/// Filters and limits for the census enumerator.
#[derive(Clone, Copy, Debug)]
pub struct EnumerateOptions {
    /// Largest order to enumerate (even).
    pub max_order: usize,
    pub bipartite_only: bool,
    pub rigid_only: bool,
    pub manifold_only: bool,
    /// Hard ceiling guarding against out-of-scale requests.
    pub ceiling: usize,
}

impl Default for EnumerateOptions {
    fn default() -> Self {
        EnumerateOptions {
            max_order: 8,
            bipartite_only: false,
            rigid_only: false,
            manifold_only: false,
            ceiling: DEFAULT_CEILING,
        }
    }
}

/// Enumerates exactly one representative per colour-permutable isomorphism
/// class of connected, contracted proper 4-coloured graphs of order at most
/// `max_order`, subject to the filters. Output is deterministic: ascending
/// order, then ascending canonical code.
///
/// Strategy: the colour-0 matching is fixed to the canonical pairing
/// (0 1)(2 3)..., the colour-1 and colour-2 matchings range over orbit
/// representatives under the stabilizer of the previous colours, colour 3
/// ranges over all fixed-point-free involutions, and survivors are
/// deduplicated by canonical code.
pub fn enumerate_crystallizations(opts: &EnumerateOptions) -> Result<Vec<ColouredGraph>> {
    if opts.max_order == 0 || !opts.max_order.is_multiple_of(2) {
        return Err(GemError::Parameter(format!(
            "max order must be even and positive, got {}",
            opts.max_order
        )));
    }
    if opts.max_order > opts.ceiling {
        return Err(GemError::CeilingExceeded { requested: opts.max_order, ceiling: opts.ceiling });
    }
    let mut out = Vec::new();
    for order in (2..=opts.max_order).step_by(2) {
        out.extend(census_at_order(order, opts));
    }
    Ok(out)
}

fn census_at_order(order: usize, opts: &EnumerateOptions) -> Vec<ColouredGraph> {
    let involutions = fpf_involutions(order);
    let m0: Vec<u32> = (0..order as u32).map(|v| v ^ 1).collect();
    let stab0 = pair_preserving_perms(order / 2);

    let mut tasks: Vec<(Vec<u32>, Vec<u32>)> = Vec::new();
    for m1 in orbit_representatives(&involutions, &stab0) {
        let stab1: Vec<Vec<u32>> = stab0
            .iter()
            .filter(|g| conjugate(g, &m1) == m1)
            .cloned()
            .collect();
        for m2 in orbit_representatives(&involutions, &stab1) {
            if opts.bipartite_only && !union_is_bipartite(&[&m0, &m1, &m2]) {
                continue;
            }
            tasks.push((m1.clone(), m2));
        }
    }

    let found: Vec<Vec<(Vec<u8>, ColouredGraph)>> = tasks
        .par_iter()
        .map(|(m1, m2)| {
            let mut local = Vec::new();
            for m3 in &involutions {
                let Ok(graph) = ColouredGraph::new([
                    m0.clone(),
                    m1.clone(),
                    m2.clone(),
                    m3.clone(),
                ]) else {
                    continue; // disconnected
                };
                if !graph.is_contracted() {
                    continue;
                }
                if opts.bipartite_only && !graph.is_bipartite() {
                    continue;
                }
                if opts.manifold_only && !graph.is_manifold_gem() {
                    continue;
                }
                if opts.rigid_only && !graph.is_rigid() {
                    continue;
                }
                local.push((canonical_code(&graph, CodeMode::ColourPermutable), graph));
            }
            local
        })
        .collect();

    let mut classes: BTreeMap<Vec<u8>, ColouredGraph> = BTreeMap::new();
    for (code, graph) in found.into_iter().flatten() {
        classes.entry(code).or_insert(graph);
    }
    classes.into_values().collect()
}

/// All fixed-point-free involutions on `0..n`, ascending lexicographically.
pub fn fpf_involutions(n: usize) -> Vec<Vec<u32>> {
    let mut out = Vec::new();
    let mut scratch = vec![u32::MAX; n];
    fn recurse(m: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        let Some(i) = m.iter().position(|&x| x == u32::MAX) else {
            out.push(m.clone());
            return;
        };
        for j in i + 1..m.len() {
            if m[j] == u32::MAX {
                m[i] = j as u32;
                m[j] = i as u32;
                recurse(m, out);
                m[i] = u32::MAX;
                m[j] = u32::MAX;
            }
        }
    }
    recurse(&mut scratch, &mut out);
    out
}

/// The vertex permutations preserving the canonical pairing (0 1)(2 3)...:
/// pair permutations composed with in-pair swaps, `2^p * p!` in total.
fn pair_preserving_perms(pairs: usize) -> Vec<Vec<u32>> {
    let mut pair_orders: Vec<Vec<usize>> = Vec::new();
    let mut items: Vec<usize> = (0..pairs).collect();
    fn heap(items: &mut Vec<usize>, k: usize, out: &mut Vec<Vec<usize>>) {
        if k == items.len() {
            out.push(items.clone());
            return;
        }
        for i in k..items.len() {
            items.swap(k, i);
            heap(items, k + 1, out);
            items.swap(k, i);
        }
    }
    heap(&mut items, 0, &mut pair_orders);

    let mut out = Vec::with_capacity(pair_orders.len() << pairs);
    for sigma in &pair_orders {
        for flips in 0..(1u32 << pairs) {
            let mut perm = vec![0u32; 2 * pairs];
            for (k, &target) in sigma.iter().enumerate() {
                let flip = (flips >> k) & 1;
                perm[2 * k] = (2 * target) as u32 + flip;
                perm[2 * k + 1] = (2 * target) as u32 + (1 - flip);
            }
            out.push(perm);
        }
    }
    out
}

/// Conjugation `g . m . g^-1` of an involution by a vertex permutation.
fn conjugate(g: &[u32], m: &[u32]) -> Vec<u32> {
    let mut out = vec![0u32; m.len()];
    for v in 0..m.len() {
        out[g[v] as usize] = g[m[v] as usize];
    }
    out
}

/// One representative (the first in lexicographic order) per orbit of the
/// candidate involutions under conjugation by the group.
fn orbit_representatives(candidates: &[Vec<u32>], group: &[Vec<u32>]) -> Vec<Vec<u32>> {
    let mut seen: HashSet<Vec<u32>> = HashSet::new();
    let mut reps = Vec::new();
    for m in candidates {
        if seen.contains(m) {
            continue;
        }
        reps.push(m.clone());
        for g in group {
            seen.insert(conjugate(g, m));
        }
    }
    reps
}

/// 2-colourability of the union of some matchings (a partial graph).
fn union_is_bipartite(matchings: &[&Vec<u32>]) -> bool {
    let n = matchings[0].len();
    let mut class = vec![u8::MAX; n];
    let mut stack = Vec::new();
    for start in 0..n as u32 {
        if class[start as usize] != u8::MAX {
            continue;
        }
        class[start as usize] = 0;
        stack.push(start);
        while let Some(v) = stack.pop() {
            for m in matchings {
                let w = m[v as usize];
                if class[w as usize] == u8::MAX {
                    class[w as usize] = 1 - class[v as usize];
                    stack.push(w);
                } else if class[w as usize] == class[v as usize] {
                    return false;
                }
            }
        }
    }
    true
}

// ---------------------------------------------------------------------------
// Batch classification
// ---------------------------------------------------------------------------

#[derive(Clone, Copy, Debug)]
pub struct BatchOptions {
    pub grouping: Grouping,
}

impl Default for BatchOptions {
    fn default() -> Self {
        BatchOptions { grouping: Grouping::Signature }
    }
}

/// One report row per entry; `None` fields were not computable and the
/// reason sits in `error`.
#[derive(Clone, Debug)]
pub struct ReportRow {
    pub id: String,
    pub order: usize,
    pub bipartite: bool,
    pub rigid: bool,
    pub pair_counts: [usize; 6],
    pub genus_min: Option<usize>,
    pub h1: Option<AbelianGroup>,
    pub gm: Option<u32>,
    pub k_bound: Option<u32>,
    pub prop1_ok: Option<bool>,
    pub conjecture_ok: Option<bool>,
    pub error: Option<String>,
    pub group: String,
}

/// Classification output: one row per entry plus the per-group bounds.
#[derive(Clone, Debug)]
pub struct BatchReport {
    pub rows: Vec<ReportRow>,
    pub bounds: Vec<CatalogueBound>,
}

/// Classifies a batch of entries: per-entry invariants, per-group GM
/// bounds, and the annotation checks. A failing entry yields an error
/// column, never an aborted batch.
pub fn classify_batch(entries: &[CatalogueEntry], options: &BatchOptions) -> BatchReport {
    let mut rows: Vec<ReportRow> = entries
        .par_iter()
        .map(|entry| classify_entry(entry, options.grouping))
        .collect();

    // Group gem-complexity minima delivered by the rows themselves.
    let mut group_k: BTreeMap<String, u32> = BTreeMap::new();
    for row in &rows {
        if let Some(k) = row.k_bound {
            group_k
                .entry(row.group.clone())
                .and_modify(|g| *g = (*g).min(k))
                .or_insert(k);
        }
    }
    let conjecture: Vec<Option<bool>> = rows
        .iter()
        .zip(entries)
        .map(|(row, entry)| {
            let c = entry.known_complexity?;
            let k = group_k.get(&row.group)?;
            Some(*k <= 5 + 2 * c)
        })
        .collect();
    for (row, verdict) in rows.iter_mut().zip(conjecture) {
        row.conjecture_ok = verdict;
    }

    let bounds = crate::gm::gm_min_over(entries, options.grouping);
    BatchReport { rows, bounds }
}

fn classify_entry(entry: &CatalogueEntry, grouping: Grouping) -> ReportRow {
    let g = &entry.graph;
    let mut error: Option<String> = None;
    let note = |e: GemError, error: &mut Option<String>| {
        if error.is_none() {
            *error = Some(e.to_string());
        }
    };

    let bipartite = g.is_bipartite();
    let rigid = g.is_rigid();
    let pair_counts = g.pair_counts();
    let genus_min = match minimal_genus(g) {
        Ok(v) => Some(v),
        Err(e) => {
            note(e, &mut error);
            None
        }
    };
    let h1 = match homology_h1(g) {
        Ok(v) => Some(v),
        Err(e) => {
            note(e, &mut error);
            None
        }
    };
    let gm = match gm_complexity(g) {
        Ok(report) => Some(report.value),
        Err(e) => {
            note(e, &mut error);
            None
        }
    };
    let k_bound = match gem_complexity_bound(g) {
        Ok(v) => Some(v),
        Err(e) => {
            note(e, &mut error);
            None
        }
    };
    let prop1_ok = match (entry.known_complexity, gm) {
        (Some(c), Some(value)) => Some(c <= value),
        _ => None,
    };

    ReportRow {
        id: entry.id.clone(),
        order: g.order(),
        bipartite,
        rigid,
        pair_counts,
        genus_min,
        h1,
        gm,
        k_bound,
        prop1_ok,
        conjecture_ok: None,
        error,
        group: group_key(entry, grouping),
    }
}

/// CSV schema of the batch report.
pub const CSV_COLUMNS: [&str; 17] = [
    "id", "order", "bipartite", "rigid", "g01", "g02", "g03", "g12", "g13", "g23", "genus_min",
    "h1", "gm", "k_bound", "prop1_ok", "conjecture_ok", "error",
];

/// Writes the batch report in the fixed CSV schema.
pub fn write_csv<W: Write>(report: &BatchReport, writer: W) -> Result<()> {
    let mut w = csv::Writer::from_writer(writer);
    w.write_record(CSV_COLUMNS)
        .map_err(|e| GemError::Parameter(format!("csv: {e}")))?;
    for row in &report.rows {
        let opt = |v: Option<String>| v.unwrap_or_default();
        let record = [
            row.id.clone(),
            row.order.to_string(),
            row.bipartite.to_string(),
            row.rigid.to_string(),
            row.pair_counts[0].to_string(),
            row.pair_counts[1].to_string(),
            row.pair_counts[2].to_string(),
            row.pair_counts[3].to_string(),
            row.pair_counts[4].to_string(),
            row.pair_counts[5].to_string(),
            opt(row.genus_min.map(|v| v.to_string())),
            opt(row.h1.as_ref().map(|v| v.to_string())),
            opt(row.gm.map(|v| v.to_string())),
            opt(row.k_bound.map(|v| v.to_string())),
            opt(row.prop1_ok.map(|v| v.to_string())),
            opt(row.conjecture_ok.map(|v| v.to_string())),
            opt(row.error.clone()),
        ];
        w.write_record(&record)
            .map_err(|e| GemError::Parameter(format!("csv: {e}")))?;
    }
    w.flush()?;
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::canon::isomorphic;
    use crate::error::GemError;
    use crate::gm::Grouping;
    use crate::invariants::homology_h1;
    use crate::testutil;

    #[test]
    fn sphere_gem_serializes_to_the_reference_record() {
        let text = serialize_gem(&sphere_gem());
        assert_eq!(text, "gem 2\nc0: 0 1\nc1: 0 1\nc2: 0 1\nc3: 0 1\n");
        let parsed = parse_gem(&text).unwrap();
        assert_eq!(&parsed, &sphere_gem());
    }

    #[test]
    fn round_trip_is_the_identity_on_census_graphs() {
        let opts = EnumerateOptions { max_order: 6, ..Default::default() };
        for g in enumerate_crystallizations(&opts).unwrap() {
            let parsed = parse_gem(&serialize_gem(&g)).unwrap();
            assert_eq!(&parsed, &g);
            assert!(isomorphic(&parsed, &g, CodeMode::ColourFixed));
        }
    }

    #[test]
    fn comments_and_blank_lines_are_ignored() {
        let text = "# a sphere\n\ngem 2   # two vertices\nc0: 0 1\nc1: 0 1\nc2: 0 1 # pair\nc3: 0 1\n\n";
        assert_eq!(parse_gem(text).unwrap(), sphere_gem());
    }

    #[test]
    fn fixed_point_text_is_a_semantic_error() {
        let text = "gem 2\nc0: 0 0\nc1: 0 1\nc2: 0 1\nc3: 0 1\n";
        let err = parse_gems(text).unwrap_err();
        assert_eq!(err.class(), "fixed-point");
        assert!(matches!(err, GemError::Semantic { line: 2, .. }), "{err}");
    }

    #[test]
    fn syntax_errors_carry_line_and_column() {
        let cases = [
            ("gem\nc0: 0 1\nc1: 0 1\nc2: 0 1\nc3: 0 1\n", 1),
            ("gem two\nc0: 0 1\nc1: 0 1\nc2: 0 1\nc3: 0 1\n", 1),
            ("gem 2\nc0: 0 1\nc9: 0 1\nc2: 0 1\nc3: 0 1\n", 3),
            ("gem 2\nc0: 0 1 2\nc1: 0 1\nc2: 0 1\nc3: 0 1\n", 2),
            ("gem 2\nc0: 0 x\nc1: 0 1\nc2: 0 1\nc3: 0 1\n", 2),
            ("c0: 0 1\n", 1),
        ];
        for (text, want_line) in cases {
            match parse_gems(text).unwrap_err() {
                GemError::Syntax { line, column, .. } => {
                    assert_eq!(line, want_line, "{text:?}");
                    assert!(column >= 1);
                }
                other => panic!("expected syntax error for {text:?}, got {other}"),
            }
        }
    }

    #[test]
    fn semantic_error_classes() {
        let odd = "gem 3\nc0: 0 1\nc1: 0 1\nc2: 0 1\nc3: 0 1\n";
        assert_eq!(parse_gems(odd).unwrap_err().class(), "odd-order");
        let discon = "gem 4\nc0: 0 1 2 3\nc1: 0 1 2 3\nc2: 0 1 2 3\nc3: 0 1 2 3\n";
        assert_eq!(parse_gems(discon).unwrap_err().class(), "disconnected");
        let dup = "gem 4\nc0: 0 1 0 2\nc1: 0 1 2 3\nc2: 0 1 2 3\nc3: 0 1 2 3\n";
        assert_eq!(parse_gems(dup).unwrap_err().class(), "non-involution");
        let range = "gem 2\nc0: 0 7\nc1: 0 1\nc2: 0 1\nc3: 0 1\n";
        assert_eq!(parse_gems(range).unwrap_err().class(), "vertex-range");
    }

    #[test]
    fn lenient_parsing_reports_every_record() {
        let text = "gem 2\nc0: 0 0\nc1: 0 1\nc2: 0 1\nc3: 0 1\ngem 2\nc0: 0 1\nc1: 0 1\nc2: 0 1\nc3: 0 1\n";
        let results = parse_gems_lenient(text);
        assert_eq!(results.len(), 2);
        assert!(results[0].is_err());
        assert!(results[1].is_ok());
    }

    #[test]
    fn multi_record_streams_parse() {
        let mut text = String::new();
        text.push_str(&serialize_gem(&sphere_gem()));
        text.push_str(&serialize_gem(&lens_gem(2, 1).unwrap()));
        let graphs = parse_gems(&text).unwrap();
        assert_eq!(graphs.len(), 2);
        assert_eq!(graphs[1].order(), 8);
    }

    #[test]
    fn jsonl_round_trip_keeps_annotations() {
        let entries = standard_gems();
        let text = write_jsonl(&entries);
        let back = read_jsonl(&text).unwrap();
        assert_eq!(back.len(), entries.len());
        for (a, b) in entries.iter().zip(&back) {
            assert_eq!(a.id, b.id);
            assert_eq!(a.name, b.name);
            assert_eq!(a.known_complexity, b.known_complexity);
            assert_eq!(a.tags, b.tags);
            assert_eq!(&a.graph, &b.graph);
        }
    }

    #[test]
    fn jsonl_rejects_inconsistent_orders() {
        let line = r#"{"id":"bad","order":4,"matchings":[[1,0],[1,0],[1,0],[1,0]]}"#;
        let err = read_jsonl(line).unwrap_err();
        assert!(matches!(err, GemError::Semantic { line: 1, .. }), "{err}");
    }

    #[test]
    fn jsonl_rejects_duplicate_ids() {
        let line = r#"{"id":"x","order":2,"matchings":[[1,0],[1,0],[1,0],[1,0]]}"#;
        let text = format!("{line}\n{line}\n");
        let err = read_jsonl(&text).unwrap_err();
        assert!(matches!(err, GemError::Semantic { line: 2, .. }), "{err}");
        assert!(err.to_string().contains("duplicate"));
    }

    #[test]
    fn lens_parameters_are_validated() {
        assert!(matches!(lens_gem(1, 1).unwrap_err(), GemError::Parameter(_)));
        assert!(matches!(lens_gem(4, 0).unwrap_err(), GemError::Parameter(_)));
        assert!(matches!(lens_gem(4, 4).unwrap_err(), GemError::Parameter(_)));
        assert!(matches!(lens_gem(4, 2).unwrap_err(), GemError::Parameter(_)));
    }

    #[test]
    fn lens_gems_meet_their_contract() {
        for (p, q) in [(2u32, 1u32), (3, 2), (5, 4), (7, 2)] {
            let g = lens_gem(p, q).unwrap();
            assert!(g.order() <= 4 * p as usize);
            assert!(g.is_bipartite());
            assert!(g.is_contracted());
            assert!(g.is_manifold_gem());
            let h = homology_h1(&g).unwrap();
            assert_eq!(h.to_string(), format!("Z/{p}"));
            assert_eq!(crate::gm::minimal_genus(&g).unwrap(), 1);
        }
    }

    #[test]
    fn mirror_lens_gems_share_their_signature() {
        let a = lens_gem(4, 1).unwrap();
        let b = lens_gem(4, 3).unwrap();
        assert_eq!(
            crate::gm::signature_key(&a).unwrap(),
            crate::gm::signature_key(&b).unwrap()
        );
    }

    #[test]
    fn standard_gems_validate() {
        let entries = standard_gems();
        assert_eq!(entries.len(), 4);
        assert_eq!(entries[0].graph.order(), 2);
        let s2xs1 = &entries[1];
        assert_eq!(s2xs1.graph.order(), 8);
        assert_eq!(homology_h1(&s2xs1.graph).unwrap().free_rank, 1);
        for entry in &entries {
            assert!(entry.graph.is_manifold_gem(), "{}", entry.id);
            assert!(entry.graph.is_contracted(), "{}", entry.id);
            assert!(entry.graph.is_bipartite(), "{}", entry.id);
        }
    }

    #[test]
    fn example_catalogue_covers_the_coprime_lens_pairs() {
        let entries = example_catalogue();
        let lens_count = entries.iter().filter(|e| e.tags.contains(&"lens".to_string())).count();
        // Coprime (p,q), 1 <= q < p <= 7: 1+2+2+4+2+6 = 17 pairs.
        assert_eq!(lens_count, 17);
        let annotated = entries.iter().filter(|e| e.known_complexity.is_some()).count();
        assert_eq!(annotated, 2 + 11); // S3, S2xS1, and the L(p,1)/L(p,p-1) family
        let ids: std::collections::HashSet<_> = entries.iter().map(|e| e.id.clone()).collect();
        assert_eq!(ids.len(), entries.len(), "ids must be unique");
    }

    #[test]
    fn enumeration_at_order_two_yields_the_sphere() {
        let opts = EnumerateOptions { max_order: 2, ..Default::default() };
        let graphs = enumerate_crystallizations(&opts).unwrap();
        assert_eq!(graphs.len(), 1);
        assert!(isomorphic(&graphs[0], &sphere_gem(), CodeMode::ColourPermutable));
    }

    #[test]
    fn enumeration_validates_its_arguments() {
        let odd = EnumerateOptions { max_order: 5, ..Default::default() };
        assert!(matches!(
            enumerate_crystallizations(&odd).unwrap_err(),
            GemError::Parameter(_)
        ));
        let too_big = EnumerateOptions { max_order: 12, ..Default::default() };
        assert!(matches!(
            enumerate_crystallizations(&too_big).unwrap_err(),
            GemError::CeilingExceeded { requested: 12, ceiling: 10 }
        ));
    }

    /// Matchings-product brute force without pruning: all quadruples of
    /// fixed-point-free involutions, filtered and deduplicated.
    fn brute_force_census(order: usize, opts: &EnumerateOptions) -> Vec<Vec<u8>> {
        let involutions = fpf_involutions(order);
        let mut codes = std::collections::BTreeSet::new();
        for m0 in &involutions {
            for m1 in &involutions {
                for m2 in &involutions {
                    for m3 in &involutions {
                        let Ok(g) = ColouredGraph::new([
                            m0.clone(),
                            m1.clone(),
                            m2.clone(),
                            m3.clone(),
                        ]) else {
                            continue;
                        };
                        if !g.is_contracted() {
                            continue;
                        }
                        if opts.bipartite_only && !g.is_bipartite() {
                            continue;
                        }
                        if opts.manifold_only && !g.is_manifold_gem() {
                            continue;
                        }
                        if opts.rigid_only && !g.is_rigid() {
                            continue;
                        }
                        codes.insert(canonical_code(&g, CodeMode::ColourPermutable));
                    }
                }
            }
        }
        codes.into_iter().collect()
    }

    #[test]
    fn enumeration_matches_brute_force_at_order_four() {
        for opts in [
            EnumerateOptions { max_order: 4, ..Default::default() },
            EnumerateOptions { max_order: 4, bipartite_only: true, ..Default::default() },
            EnumerateOptions {
                max_order: 4,
                bipartite_only: true,
                manifold_only: true,
                ..Default::default()
            },
        ] {
            let ours: Vec<Vec<u8>> = enumerate_crystallizations(&opts)
                .unwrap()
                .iter()
                .filter(|g| g.order() == 4)
                .map(|g| canonical_code(g, CodeMode::ColourPermutable))
                .collect();
            let brute = brute_force_census(4, &opts);
            assert_eq!(ours, brute);
        }
    }

    #[test]
    fn enumeration_matches_brute_force_at_order_six() {
        let opts = EnumerateOptions { max_order: 6, ..Default::default() };
        let ours: Vec<Vec<u8>> = enumerate_crystallizations(&opts)
            .unwrap()
            .iter()
            .filter(|g| g.order() == 6)
            .map(|g| canonical_code(g, CodeMode::ColourPermutable))
            .collect();
        let brute = brute_force_census(6, &opts);
        assert_eq!(ours, brute);
    }

    /// Class counts per order, locked in after the brute-force cross-checks
    /// above verified the enumerator (regression values).
    #[test]
    fn census_counts_are_stable() {
        let all = EnumerateOptions { max_order: 8, ..Default::default() };
        let graphs = enumerate_crystallizations(&all).unwrap();
        let per_order = |graphs: &[ColouredGraph], order: usize| {
            graphs.iter().filter(|g| g.order() == order).count()
        };
        assert_eq!(per_order(&graphs, 2), 1);
        assert_eq!(per_order(&graphs, 4), 2);
        assert_eq!(per_order(&graphs, 6), 12);
        assert_eq!(per_order(&graphs, 8), 173);

        let filtered = EnumerateOptions {
            max_order: 8,
            bipartite_only: true,
            manifold_only: true,
            ..Default::default()
        };
        let census = enumerate_crystallizations(&filtered).unwrap();
        assert_eq!(census.len(), 13);
        assert_eq!(per_order(&census, 8), 9);
    }

    #[test]
    fn enumeration_is_deterministic_and_respects_filters() {
        let opts = EnumerateOptions {
            max_order: 6,
            bipartite_only: true,
            ..Default::default()
        };
        let a = enumerate_crystallizations(&opts).unwrap();
        let b = enumerate_crystallizations(&opts).unwrap();
        assert_eq!(a.len(), b.len());
        let mut seen = std::collections::HashSet::new();
        for (x, y) in a.iter().zip(&b) {
            assert_eq!(x, y);
            assert!(x.is_bipartite());
            assert!(x.is_contracted());
            assert!(seen.insert(canonical_code(x, CodeMode::ColourPermutable)), "duplicate class");
        }
    }

    #[test]
    fn classify_batch_reports_all_standard_rows() {
        let entries = standard_gems();
        let report = classify_batch(&entries, &BatchOptions::default());
        assert_eq!(report.rows.len(), entries.len());
        let s3 = &report.rows[0];
        assert_eq!(s3.gm, Some(0));
        assert_eq!(s3.k_bound, Some(0));
        assert_eq!(s3.prop1_ok, Some(true));
        assert_eq!(s3.conjecture_ok, Some(true));
        assert!(s3.error.is_none());
        for row in &report.rows {
            assert!(row.error.is_none(), "{}: {:?}", row.id, row.error);
        }
        assert!(!report.bounds.is_empty());
    }

    #[test]
    fn cached_invariants_equal_fresh_recomputation() {
        let mut entries = standard_gems();
        for entry in &mut entries {
            entry.cache_invariants();
        }
        let report = classify_batch(&entries, &BatchOptions::default());
        for (entry, row) in entries.iter().zip(&report.rows) {
            let cached = entry.computed.as_ref().unwrap();
            assert_eq!(cached, &entry.computed_invariants());
            assert_eq!(cached.bipartite, row.bipartite);
            assert_eq!(cached.rigid, row.rigid);
            assert_eq!(cached.pair_counts, row.pair_counts);
            assert_eq!(cached.genus_min, row.genus_min);
            assert_eq!(cached.h1, row.h1);
            assert_eq!(cached.gm, row.gm);
            assert_eq!(cached.k_bound, row.k_bound);
        }
    }

    #[test]
    fn classify_batch_survives_bad_entries() {
        let entries = vec![
            CatalogueEntry::new("good", sphere_gem()),
            CatalogueEntry::new("bad", testutil::non_contracted_order4()),
        ];
        let report = classify_batch(&entries, &BatchOptions::default());
        assert_eq!(report.rows.len(), 2);
        assert!(report.rows[0].error.is_none());
        let bad = &report.rows[1];
        assert!(bad.error.is_some());
        assert!(bad.gm.is_none());
        assert!(bad.k_bound.is_none());
        assert_eq!(bad.order, 4);
    }

    #[test]
    fn csv_has_the_fixed_schema_and_reparses() {
        let entries = standard_gems();
        let report = classify_batch(&entries, &BatchOptions { grouping: Grouping::Name });
        let mut buffer = Vec::new();
        write_csv(&report, &mut buffer).unwrap();
        let text = String::from_utf8(buffer).unwrap();
        let mut reader = csv::Reader::from_reader(text.as_bytes());
        let headers: Vec<String> =
            reader.headers().unwrap().iter().map(|s| s.to_string()).collect();
        assert_eq!(headers, CSV_COLUMNS.to_vec());
        let records: Vec<csv::StringRecord> =
            reader.records().collect::<std::result::Result<_, _>>().unwrap();
        assert_eq!(records.len(), entries.len());
        assert_eq!(&records[0][0], "s3");
        assert_eq!(&records[0][12], "0"); // gm column
    }

    mod properties {
        use super::*;
        use proptest::prelude::*;

        proptest! {
            #![proptest_config(ProptestConfig::with_cases(48))]

            /// Text round trip reproduces the exact matchings.
            #[test]
            fn gem_text_round_trip(seed in any::<u64>(), half in 1usize..6) {
                let g = testutil::random_graph(2 * half, seed);
                prop_assert_eq!(parse_gem(&serialize_gem(&g)).unwrap(), g);
            }

            /// JSONL round trip preserves graphs exactly.
            #[test]
            fn jsonl_round_trip(seed in any::<u64>(), half in 1usize..6) {
                let g = testutil::random_graph(2 * half, seed);
                let entries = vec![CatalogueEntry::new("x", g.clone())];
                let back = read_jsonl(&write_jsonl(&entries)).unwrap();
                prop_assert_eq!(&back[0].graph, &g);
            }
        }
    }
}
