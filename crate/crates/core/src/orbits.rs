//! Edge-subset orbits of `Q_n` under its automorphism group.
//!
//! `Aut(Q_n)` consists of the maps `v -> π(v) ^ x` for a permutation `π` of
//! bit positions and a translation `x`, `n! · 2^n` elements in all. Edges
//! are indexed by their position in the sorted edge list of `Q_n`; a subset
//! is canonical when its sorted index sequence is lexicographically least
//! in its orbit.

use itertools::Itertools;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::topology::{binomial, Edge, EdgeSet, Graph};

/// Largest dimension the catalog accepts.
pub const MAX_CATALOG_DIMENSION: u32 = 6;

/// Largest number of subsets of one size the catalog will sweep.
pub const MAX_CATALOG_SUBSETS: u128 = 1 << 22;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct OrbitClass {
    pub representative: EdgeSet,
    pub size: u64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct EdgeOrbitCatalog {
    pub n: u32,
    pub h: usize,
    pub group_order: u64,
    /// Classes ordered by subset size, then by representative.
    pub classes: Vec<OrbitClass>,
}

impl EdgeOrbitCatalog {
    /// Classes whose representatives have exactly `k` edges.
    pub fn of_size(&self, k: usize) -> impl Iterator<Item = &OrbitClass> {
        self.classes.iter().filter(move |c| c.representative.len() == k)
    }

    /// Sum of orbit sizes over classes with `k` edges.
    pub fn covered(&self, k: usize) -> u64 {
        self.of_size(k).map(|c| c.size).sum()
    }
}

/// The automorphism group acting on edge indices of `Q_n`.
pub(crate) struct EdgeAction {
    edges: Vec<Edge>,
    /// `images[g][e]`: index of the image of edge `e` under element `g`.
    images: Vec<Vec<u16>>,
}

impl EdgeAction {
    pub fn new(n: u32) -> Result<EdgeAction> {
        if !(1..=MAX_CATALOG_DIMENSION).contains(&n) {
            return Err(Error::bound(format!(
                "orbit reduction supports dimensions 1..={MAX_CATALOG_DIMENSION}, got {n}"
            )));
        }
        let g = Graph::hypercube(n)?;
        let edges: Vec<Edge> = g.edges().collect();
        let index = |e: Edge| edges.binary_search(&e).expect("image is an edge") as u16;
        let mut images = Vec::new();
        for perm in (0..n).permutations(n as usize) {
            let map = |v: u32| {
                perm.iter()
                    .enumerate()
                    .fold(0u32, |m, (i, &p)| m | (((v >> i) & 1) << p))
            };
            for x in 0..1u32 << n {
                images.push(
                    edges
                        .iter()
                        .map(|e| {
                            let image = Edge::new(map(e.lo().0) ^ x, map(e.hi().0) ^ x)
                                .expect("automorphism keeps endpoints distinct");
                            index(image)
                        })
                        .collect(),
                );
            }
        }
        Ok(EdgeAction { edges, images })
    }

    pub fn group_order(&self) -> u64 {
        self.images.len() as u64
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    fn to_set(&self, idx: &[usize]) -> EdgeSet {
        idx.iter().map(|&i| self.edges[i]).collect()
    }

    fn indices(&self, fe: &EdgeSet) -> Result<Vec<usize>> {
        fe.iter()
            .map(|e| {
                self.edges
                    .binary_search(&e)
                    .map_err(|_| Error::domain(format!("{e} is not an edge of the hypercube")))
            })
            .collect()
    }

    /// Lexicographically least image of `fe`.
    pub fn canonical(&self, fe: &EdgeSet) -> Result<EdgeSet> {
        let idx = self.indices(fe)?;
        let best = self
            .images
            .iter()
            .map(|img| {
                let mut v: Vec<usize> = idx.iter().map(|&i| img[i] as usize).collect();
                v.sort_unstable();
                v
            })
            .min()
            .unwrap_or_default();
        Ok(self.to_set(&best))
    }

    /// One class per orbit of `k`-subsets, in the order of their
    /// representatives.
    pub fn classes(&self, k: usize) -> Result<Vec<OrbitClass>> {
        let m = self.edges.len();
        let total = binomial(m as u64, k as u64);
        if total > MAX_CATALOG_SUBSETS {
            return Err(Error::bound(format!(
                "{total} edge subsets of size {k} exceed the catalog limit"
            )));
        }
        let table = BinomialTable::new(m, k);
        let mut seen = vec![false; total as usize];
        let mut classes = Vec::new();
        let mut image = vec![0usize; k];
        for subset in (0..m).combinations(k) {
            if seen[table.rank(&subset)] {
                continue;
            }
            let mut size = 0u64;
            for img in &self.images {
                for (slot, &e) in image.iter_mut().zip(&subset) {
                    *slot = img[e] as usize;
                }
                image.sort_unstable();
                let r = table.rank(&image);
                if !seen[r] {
                    seen[r] = true;
                    size += 1;
                }
            }
            classes.push(OrbitClass {
                representative: self.to_set(&subset),
                size,
            });
        }
        Ok(classes)
    }
}

/// Colex ranking of sorted `k`-subsets of `0..m`.
struct BinomialTable {
    c: Vec<Vec<u64>>,
}

impl BinomialTable {
    fn new(m: usize, k: usize) -> Self {
        let c = (0..=m)
            .map(|x| (0..=k).map(|j| binomial(x as u64, j as u64) as u64).collect())
            .collect();
        BinomialTable { c }
    }

    fn rank(&self, sorted: &[usize]) -> usize {
        sorted
            .iter()
            .enumerate()
            .map(|(i, &e)| self.c[e][i + 1])
            .sum::<u64>() as usize
    }
}

/// Orbit representatives of all edge subsets of `Q_n` with at most `h`
/// edges.
pub fn edge_orbit_catalog(n: u32, h: usize) -> Result<EdgeOrbitCatalog> {
    let action = EdgeAction::new(n)?;
    let mut classes = Vec::new();
    for k in 0..=h.min(action.edge_count()) {
        classes.extend(action.classes(k)?);
    }
    Ok(EdgeOrbitCatalog {
        n,
        h,
        group_order: action.group_order(),
        classes,
    })
}

/// Canonical representative of `fe` in `Q_n`.
pub fn canonical_edge_set(n: u32, fe: &EdgeSet) -> Result<EdgeSet> {
    EdgeAction::new(n)?.canonical(fe)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn q3_single_edge_orbit() {
        let cat = edge_orbit_catalog(3, 1).unwrap();
        assert_eq!(cat.group_order, 48);
        assert_eq!(cat.of_size(1).count(), 1);
        assert_eq!(cat.covered(1), 12);
        assert_eq!(
            cat.of_size(1).next().unwrap().representative,
            EdgeSet::from_pairs(&[(0, 1)]).unwrap()
        );
    }

    #[test]
    fn empty_catalog() {
        let cat = edge_orbit_catalog(3, 0).unwrap();
        assert_eq!(cat.classes.len(), 1);
        assert!(cat.classes[0].representative.is_empty());
        assert_eq!(cat.classes[0].size, 1);
    }

    #[test]
    fn q3_pairs_cover_all() {
        let cat = edge_orbit_catalog(3, 2).unwrap();
        assert_eq!(cat.covered(2), 66);
        // Two edges: sharing a vertex, opposite on a square, parallel apart,
        // or skew.
        assert_eq!(cat.of_size(2).count(), 4);
    }

    #[test]
    fn canonical_form_is_class_representative() {
        let cat = edge_orbit_catalog(3, 2).unwrap();
        let reps: Vec<EdgeSet> = cat.of_size(2).map(|c| c.representative.clone()).collect();
        let g = Graph::hypercube(3).unwrap();
        let edges: Vec<Edge> = g.edges().collect();
        for pair in edges.iter().combinations(2) {
            let fe: EdgeSet = pair.into_iter().copied().collect();
            let c = canonical_edge_set(3, &fe).unwrap();
            assert!(reps.contains(&c), "{fe} -> {c}");
        }
    }

    #[test]
    fn bounds() {
        assert!(matches!(edge_orbit_catalog(7, 1), Err(Error::Bound(_))));
        assert!(matches!(edge_orbit_catalog(6, 5), Err(Error::Bound(_))));
        assert!(canonical_edge_set(3, &EdgeSet::from_pairs(&[(0, 3)]).unwrap()).is_err());
    }
}
