//! The pseudocomplex of a gem and its integral invariants.
//!
//! A manifold gem reconstructs a coloured triangulation: tetrahedra are the
//! graph vertices, triangles the edges, 1-simplices the bicoloured cycles
//! and 0-simplices the 3-coloured components. Vertices of every simplex are
//! ordered by their colour label `0 < 1 < 2 < 3`, which fixes all boundary
//! signs; first homology is independent of that convention and the test
//! suite exploits this.
//!
//! All matrix arithmetic is exact over arbitrary-precision integers —
//! intermediate entries of a Smith reduction can outgrow machine words even
//! for small complexes.

use std::fmt;

use num_bigint::BigInt;
use num_traits::{Signed, Zero};

use crate::error::{GemError, Result};
use crate::graph::{pair_index, ColourSet, ColouredGraph, COLOUR_COUNT, COLOUR_PAIRS};

/// Dense integer matrix, row major.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct IntMatrix {
    rows: usize,
    cols: usize,
    data: Vec<BigInt>,
}

impl IntMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        IntMatrix { rows, cols, data: vec![BigInt::ZERO; rows * cols] }
    }

    pub fn from_rows(rows: &[Vec<i64>]) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, |row| row.len());
        assert!(rows.iter().all(|row| row.len() == c), "ragged rows");
        let mut m = IntMatrix::zeros(r, c);
        for (i, row) in rows.iter().enumerate() {
            for (j, &x) in row.iter().enumerate() {
                m.set(i, j, BigInt::from(x));
            }
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &BigInt {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, value: BigInt) {
        self.data[i * self.cols + j] = value;
    }

    pub fn add_assign(&mut self, i: usize, j: usize, value: &BigInt) {
        self.data[i * self.cols + j] += value;
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|x| x.is_zero())
    }

    pub fn mul(&self, other: &IntMatrix) -> IntMatrix {
        assert_eq!(self.cols, other.rows, "dimension mismatch");
        let mut out = IntMatrix::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = other.get(k, j);
                    if !b.is_zero() {
                        let prod = a * b;
                        out.add_assign(i, j, &prod);
                    }
                }
            }
        }
        out
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    fn swap_cols(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for i in 0..self.rows {
            self.data.swap(i * self.cols + a, i * self.cols + b);
        }
    }

    /// row[a] -= q * row[b]
    fn row_sub(&mut self, a: usize, b: usize, q: &BigInt) {
        if q.is_zero() {
            return;
        }
        for j in 0..self.cols {
            let delta = q * self.get(b, j);
            self.data[a * self.cols + j] -= delta;
        }
    }

    /// col[a] -= q * col[b]
    fn col_sub(&mut self, a: usize, b: usize, q: &BigInt) {
        if q.is_zero() {
            return;
        }
        for i in 0..self.rows {
            let delta = q * self.get(i, b);
            self.data[i * self.cols + a] -= delta;
        }
    }
}

/// Smith normal form: the diagonal invariant factors `d1 | d2 | ... | dr`
/// of the matrix, positive, with the divisibility chain guaranteed.
/// Unimodular row/column operations only, exact arithmetic throughout.
pub fn smith_normal_form(m: &IntMatrix) -> Vec<BigInt> {
    let mut a = m.clone();
    let (rows, cols) = (a.rows(), a.cols());
    let steps = rows.min(cols);
    let mut k = 0;
    while k < steps {
        // Pivot: minimum absolute nonzero entry of the trailing submatrix.
        let mut pivot: Option<(usize, usize)> = None;
        for i in k..rows {
            for j in k..cols {
                if !a.get(i, j).is_zero()
                    && pivot.is_none_or(|(pi, pj)| a.get(i, j).abs() < a.get(pi, pj).abs())
                {
                    pivot = Some((i, j));
                }
            }
        }
        let Some((pi, pj)) = pivot else { break };
        a.swap_rows(k, pi);
        a.swap_cols(k, pj);

        // Clear row and column k; imperfect quotients shrink the pivot, so
        // this terminates like the Euclidean algorithm.
        loop {
            let mut clean = true;
            for i in k + 1..rows {
                if !a.get(i, k).is_zero() {
                    let q = a.get(i, k) / a.get(k, k);
                    a.row_sub(i, k, &q);
                    if !a.get(i, k).is_zero() {
                        a.swap_rows(i, k);
                        clean = false;
                    }
                }
            }
            for j in k + 1..cols {
                if !a.get(k, j).is_zero() {
                    let q = a.get(k, j) / a.get(k, k);
                    a.col_sub(j, k, &q);
                    if !a.get(k, j).is_zero() {
                        a.swap_cols(j, k);
                        clean = false;
                    }
                }
            }
            if clean {
                break;
            }
        }

        // Enforce divisibility: fold any non-multiple into the pivot row.
        let mut fixed = None;
        'scan: for i in k + 1..rows {
            for j in k + 1..cols {
                if !(a.get(i, j) % a.get(k, k)).is_zero() {
                    fixed = Some(i);
                    break 'scan;
                }
            }
        }
        if let Some(i) = fixed {
            for j in 0..cols {
                let v = a.get(i, j).clone();
                a.add_assign(k, j, &v);
            }
            continue; // redo step k with the enlarged row
        }

        if a.get(k, k).is_negative() {
            let neg = -a.get(k, k).clone();
            a.set(k, k, neg);
        }
        k += 1;
    }

    let mut out = Vec::new();
    for d in 0..k {
        let v = a.get(d, d).clone();
        debug_assert!(!v.is_zero());
        out.push(v);
    }
    debug_assert!(out.windows(2).all(|w| (&w[1] % &w[0]).is_zero()));
    out
}

/// Finitely generated abelian group in canonical form: free rank plus a
/// torsion divisibility chain without unit entries.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct AbelianGroup {
    pub free_rank: usize,
    pub torsion: Vec<BigInt>,
}

impl AbelianGroup {
    pub fn trivial() -> Self {
        AbelianGroup { free_rank: 0, torsion: Vec::new() }
    }

    pub fn free(rank: usize) -> Self {
        AbelianGroup { free_rank: rank, torsion: Vec::new() }
    }

    pub fn cyclic(order: u64) -> Self {
        assert!(order >= 2, "unit factors are not stored");
        AbelianGroup { free_rank: 0, torsion: vec![BigInt::from(order)] }
    }

    pub fn is_trivial(&self) -> bool {
        self.free_rank == 0 && self.torsion.is_empty()
    }

    /// Canonical direct sum: torsion chains are merged by re-diagonalizing
    /// the combined relation matrix.
    pub fn direct_sum(&self, other: &AbelianGroup) -> AbelianGroup {
        let all: Vec<&BigInt> = self.torsion.iter().chain(other.torsion.iter()).collect();
        let k = all.len();
        let mut diag = IntMatrix::zeros(k, k);
        for (i, d) in all.into_iter().enumerate() {
            diag.set(i, i, d.clone());
        }
        let torsion = smith_normal_form(&diag)
            .into_iter()
            .filter(|d| d > &BigInt::from(1))
            .collect();
        AbelianGroup { free_rank: self.free_rank + other.free_rank, torsion }
    }
}

impl fmt::Display for AbelianGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_trivial() {
            return write!(f, "0");
        }
        let mut parts = Vec::new();
        match self.free_rank {
            0 => {}
            1 => parts.push("Z".to_string()),
            r => parts.push(format!("Z^{r}")),
        }
        for d in &self.torsion {
            parts.push(format!("Z/{d}"));
        }
        write!(f, "{}", parts.join("+"))
    }
}

/// Cell counts and signed boundary maps of the pseudocomplex.
#[derive(Clone, Debug)]
pub struct CellStructure {
    /// `counts[k]` is the number of k-cells.
    pub counts: [usize; 4],
    /// 0-cells x 1-cells incidence matrix.
    pub boundary1: IntMatrix,
    /// 1-cells x 2-cells incidence matrix.
    pub boundary2: IntMatrix,
}

impl CellStructure {
    pub fn euler_characteristic(&self) -> i64 {
        self.counts[0] as i64 - self.counts[1] as i64 + self.counts[2] as i64
            - self.counts[3] as i64
    }
}

/// Builds the cell structure of the pseudocomplex associated to a manifold
/// gem: 3-cells are graph vertices, 2-cells graph edges, 1-cells bicoloured
/// cycles, 0-cells 3-coloured components.
pub fn pseudocomplex(g: &ColouredGraph) -> Result<CellStructure> {
    if !g.is_manifold_gem() {
        return Err(GemError::NotAManifoldGem);
    }

    // 0-cells: per colour, the components of the graph minus that colour.
    let vertex_parts: Vec<_> = (0..COLOUR_COUNT)
        .map(|c| g.residues(ColourSet::complement_of(c)).expect("triple"))
        .collect();
    let mut vertex_offset = [0usize; COLOUR_COUNT];
    let mut n0 = 0;
    for c in 0..COLOUR_COUNT {
        vertex_offset[c] = n0;
        n0 += vertex_parts[c].count();
    }

    // 1-cells: per colour pair, the bicoloured cycles.
    let edge_parts: Vec<_> = COLOUR_PAIRS
        .iter()
        .map(|&(i, j)| g.residues(ColourSet::pair(i, j)).expect("pair"))
        .collect();
    let mut edge_offset = [0usize; 6];
    let mut n1 = 0;
    for p in 0..6 {
        edge_offset[p] = n1;
        n1 += edge_parts[p].count();
    }

    let n2 = 2 * g.order();
    let n3 = g.order();

    // A 1-cell from the {i,j}-cycles has endpoint labels {k,l} = complement.
    let mut boundary1 = IntMatrix::zeros(n0, n1);
    for (p, &(i, j)) in COLOUR_PAIRS.iter().enumerate() {
        let labels: Vec<usize> = (0..COLOUR_COUNT).filter(|&c| c != i && c != j).collect();
        let (k, l) = (labels[0], labels[1]);
        for (r, cycle) in edge_parts[p].components.iter().enumerate() {
            let col = edge_offset[p] + r;
            let sample = cycle.min_vertex();
            let head = vertex_offset[l] + vertex_parts[l].component_of(sample);
            let tail = vertex_offset[k] + vertex_parts[k].component_of(sample);
            boundary1.add_assign(head, col, &BigInt::from(1));
            boundary1.add_assign(tail, col, &BigInt::from(-1));
        }
    }

    // A 2-cell dual to a c-coloured edge has vertex labels complement(c);
    // its side omitting label l is the {c,l}-cycle through the edge.
    let mut boundary2 = IntMatrix::zeros(n1, n2);
    let mut col = 0;
    for c in 0..COLOUR_COUNT {
        let labels: Vec<usize> = (0..COLOUR_COUNT).filter(|&d| d != c).collect();
        for (u, _) in g.colour_edges(c) {
            for (m, &l) in labels.iter().enumerate() {
                let p = pair_index(c, l);
                let row = edge_offset[p] + edge_parts[p].component_of(u);
                let sign = if m % 2 == 0 { 1 } else { -1 };
                boundary2.add_assign(row, col, &BigInt::from(sign));
            }
            col += 1;
        }
    }
    debug_assert_eq!(col, n2);

    Ok(CellStructure { counts: [n0, n1, n2, n3], boundary1, boundary2 })
}

/// Euler characteristic of the pseudocomplex; zero for every manifold gem.
pub fn euler_characteristic(g: &ColouredGraph) -> Result<i64> {
    Ok(pseudocomplex(g)?.euler_characteristic())
}

/// First integral homology, `ker(boundary1) / im(boundary2)`, via Smith
/// normal form.
pub fn homology_h1(g: &ColouredGraph) -> Result<AbelianGroup> {
    let cells = pseudocomplex(g)?;
    let rank1 = smith_normal_form(&cells.boundary1).len();
    let factors = smith_normal_form(&cells.boundary2);
    let rank2 = factors.len();
    let free_rank = cells.counts[1] - rank1 - rank2;
    let torsion = factors.into_iter().filter(|d| d > &BigInt::from(1)).collect();
    Ok(AbelianGroup { free_rank, torsion })
}

/// Upper bound `order/2 - 1` for the gem-complexity of the encoded
/// manifold; the group minimum over a census is the exact value at that
/// scale.
pub fn gem_complexity_bound(g: &ColouredGraph) -> Result<u32> {
    if !g.is_contracted() {
        return Err(GemError::NotContracted);
    }
    Ok((g.half_order() - 1) as u32)
}

/// Desk-scale echo of the gem-complexity conjecture: the best gem
/// complexity bound of the entry's group must not exceed `5 + 2c` for the
/// annotated complexity `c`.
pub fn check_conjecture(entry: &crate::catalogue::CatalogueEntry, group_k: u32) -> Result<bool> {
    let c = entry.known_complexity.ok_or(GemError::MissingAnnotation)?;
    Ok(group_k <= 5 + 2 * c)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalogue::{
        enumerate_crystallizations, lens_gem, s2xs1_gem, sphere_gem, CatalogueEntry,
        EnumerateOptions,
    };
    use crate::testutil;

    #[test]
    fn order_two_cell_counts() {
        let cells = pseudocomplex(&sphere_gem()).unwrap();
        assert_eq!(cells.counts, [4, 6, 4, 2]);
        assert_eq!(cells.euler_characteristic(), 0);
    }

    #[test]
    fn crystallizations_have_four_zero_cells() {
        for g in [sphere_gem(), s2xs1_gem(), lens_gem(5, 3).unwrap()] {
            assert_eq!(pseudocomplex(&g).unwrap().counts[0], 4);
        }
    }

    #[test]
    fn one_cells_count_the_pair_residues() {
        let g = lens_gem(4, 1).unwrap();
        let cells = pseudocomplex(&g).unwrap();
        assert_eq!(cells.counts[1], g.pair_counts().iter().sum::<usize>());
        assert_eq!(cells.counts[2], 2 * g.order());
        assert_eq!(cells.counts[3], g.order());
    }

    #[test]
    fn boundary_composition_vanishes() {
        for g in [sphere_gem(), s2xs1_gem(), lens_gem(3, 2).unwrap()] {
            let cells = pseudocomplex(&g).unwrap();
            assert!(cells.boundary1.mul(&cells.boundary2).is_zero());
        }
    }

    #[test]
    fn non_manifold_input_is_refused() {
        let g = testutil::non_manifold_order6();
        assert!(matches!(pseudocomplex(&g).unwrap_err(), GemError::NotAManifoldGem));
        assert!(matches!(euler_characteristic(&g).unwrap_err(), GemError::NotAManifoldGem));
        assert!(matches!(homology_h1(&g).unwrap_err(), GemError::NotAManifoldGem));
    }

    #[test]
    fn snf_of_small_examples() {
        let two = IntMatrix::from_rows(&[vec![1, 0], vec![0, 1]]);
        assert_eq!(smith_normal_form(&two), vec![BigInt::from(1), BigInt::from(1)]);

        let single = IntMatrix::from_rows(&[vec![2]]);
        assert_eq!(smith_normal_form(&single), vec![BigInt::from(2)]);

        // gcd 2, determinant 12, so the chain is (2, 6).
        let m = IntMatrix::from_rows(&[vec![4, 2], vec![2, 4]]);
        assert_eq!(smith_normal_form(&m), vec![BigInt::from(2), BigInt::from(6)]);
    }

    #[test]
    fn snf_handles_rectangular_and_zero_matrices() {
        let zero = IntMatrix::zeros(3, 2);
        assert!(smith_normal_form(&zero).is_empty());
        let rect = IntMatrix::from_rows(&[vec![0, 3, 0, 6], vec![0, 0, 0, 9]]);
        let factors = smith_normal_form(&rect);
        assert_eq!(factors, vec![BigInt::from(3), BigInt::from(9)]);
    }

    /// Fraction-free determinant (Bareiss) as an independent oracle.
    fn bareiss_det(m: &IntMatrix) -> BigInt {
        let n = m.rows();
        assert_eq!(n, m.cols());
        let mut a: Vec<Vec<BigInt>> = (0..n)
            .map(|i| (0..n).map(|j| m.get(i, j).clone()).collect())
            .collect();
        let mut sign = BigInt::from(1);
        let mut prev = BigInt::from(1);
        for k in 0..n {
            if a[k][k].is_zero() {
                let Some(swap) = (k + 1..n).find(|&i| !a[i][k].is_zero()) else {
                    return BigInt::from(0);
                };
                a.swap(k, swap);
                sign = -sign;
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    let num = &a[i][j] * &a[k][k] - &a[i][k] * &a[k][j];
                    a[i][j] = num / &prev;
                }
            }
            prev = a[k][k].clone();
        }
        sign * a[n - 1][n - 1].clone()
    }

    #[test]
    fn snf_product_equals_absolute_determinant() {
        use rand::rngs::StdRng;
        use rand::{Rng, SeedableRng};
        let mut rng = StdRng::seed_from_u64(7);
        for trial in 0..40 {
            let n = 2 + trial % 4;
            let rows: Vec<Vec<i64>> =
                (0..n).map(|_| (0..n).map(|_| rng.gen_range(-9..=9)).collect()).collect();
            let m = IntMatrix::from_rows(&rows);
            let det = bareiss_det(&m);
            let factors = smith_normal_form(&m);
            for w in factors.windows(2) {
                assert!((&w[1] % &w[0]).is_zero(), "chain broken: {factors:?}");
            }
            if det.is_zero() {
                assert!(factors.len() < n);
            } else {
                let product: BigInt = factors.iter().product();
                assert_eq!(product, det.abs(), "matrix {rows:?}");
            }
        }
    }

    #[test]
    fn homology_of_the_standard_gems() {
        assert!(homology_h1(&sphere_gem()).unwrap().is_trivial());
        let s2xs1 = homology_h1(&s2xs1_gem()).unwrap();
        assert_eq!(s2xs1, AbelianGroup::free(1));
        assert_eq!(s2xs1.to_string(), "Z");
        for (p, q) in [(2u32, 1u32), (3, 1), (4, 3), (5, 2), (6, 1), (7, 5)] {
            let h = homology_h1(&lens_gem(p, q).unwrap()).unwrap();
            assert_eq!(h, AbelianGroup::cyclic(p as u64), "L({p},{q})");
        }
    }

    #[test]
    fn homology_is_invariant_under_relabelling_and_recolouring() {
        let g = lens_gem(4, 1).unwrap();
        let h = homology_h1(&g).unwrap();
        let mut perm: Vec<u32> = (0..g.order() as u32).collect();
        perm.reverse();
        assert_eq!(homology_h1(&g.relabel(&perm)).unwrap(), h);
        assert_eq!(homology_h1(&g.permute_colours(&[3, 1, 0, 2])).unwrap(), h);
    }

    #[test]
    fn euler_characteristic_vanishes_on_the_census() {
        let opts = EnumerateOptions {
            max_order: 6,
            manifold_only: true,
            ..Default::default()
        };
        for g in enumerate_crystallizations(&opts).unwrap() {
            assert_eq!(euler_characteristic(&g).unwrap(), 0);
        }
    }

    #[test]
    fn direct_sums_renormalize() {
        let a = AbelianGroup::cyclic(2);
        let b = AbelianGroup::cyclic(3);
        assert_eq!(a.direct_sum(&b), AbelianGroup::cyclic(6));
        let c = a.direct_sum(&a);
        assert_eq!(c.torsion, vec![BigInt::from(2), BigInt::from(2)]);
        let free = AbelianGroup::free(2).direct_sum(&a);
        assert_eq!(free.to_string(), "Z^2+Z/2");
        assert_eq!(AbelianGroup::trivial().to_string(), "0");
    }

    #[test]
    fn gem_complexity_bounds() {
        assert_eq!(gem_complexity_bound(&sphere_gem()).unwrap(), 0);
        assert_eq!(gem_complexity_bound(&s2xs1_gem()).unwrap(), 3);
        let err = gem_complexity_bound(&testutil::non_contracted_order4()).unwrap_err();
        assert!(matches!(err, GemError::NotContracted));
    }

    #[test]
    fn conjecture_check_compares_group_k_with_annotation() {
        let entry = CatalogueEntry::new("s3", sphere_gem()).with_complexity(0);
        assert!(check_conjecture(&entry, 0).unwrap());
        assert!(check_conjecture(&entry, 5).unwrap());
        assert!(!check_conjecture(&entry, 6).unwrap());
        let bare = CatalogueEntry::new("anon", sphere_gem());
        assert!(matches!(check_conjecture(&bare, 0).unwrap_err(), GemError::MissingAnnotation));
    }

    /// Independent H1 route: the abelianized Heegaard presentation. The
    /// intersection matrix of the two curve systems, with crossings signed
    /// by bipartition class, presents H1 as its cokernel.
    fn h1_from_diagram(g: &crate::graph::ColouredGraph) -> AbelianGroup {
        let partition = crate::graph::PartitionChoice::ALL[0];
        let diagram = crate::heegaard::heegaard_diagram(g, partition, 0, 0).unwrap();
        let classes = g.bipartition().unwrap();
        let genus = diagram.genus;
        let mut rows = vec![vec![0i64; genus]; genus];
        for (i, x) in diagram.x_curves.iter().enumerate() {
            for (j, y) in diagram.y_curves.iter().enumerate() {
                for &v in &x.vertices {
                    if y.contains(v) {
                        rows[i][j] += if classes[v as usize] == 0 { 1 } else { -1 };
                    }
                }
            }
        }
        let factors = smith_normal_form(&IntMatrix::from_rows(&rows));
        AbelianGroup {
            free_rank: genus - factors.len(),
            torsion: factors.into_iter().filter(|d| d > &BigInt::from(1)).collect(),
        }
    }

    #[test]
    fn homology_agrees_with_the_diagram_presentation() {
        let opts = EnumerateOptions {
            max_order: 8,
            bipartite_only: true,
            manifold_only: true,
            ..Default::default()
        };
        let mut graphs = enumerate_crystallizations(&opts).unwrap();
        graphs.push(lens_gem(5, 2).unwrap());
        graphs.push(lens_gem(7, 3).unwrap());
        for g in &graphs {
            assert_eq!(homology_h1(g).unwrap(), h1_from_diagram(g));
        }
    }
}
