//! L×L periodic square lattice with classical spins on vertices and
//! qubits/links on edges.
//!
//! Vertex (x, y) has id `y*L + x`. Links are indexed so the id encodes the
//! orientation and the anchor vertex:
//! - horizontal link `y*L + x` connects (x, y) to ((x+1)%L, y),
//! - vertical link `L² + y*L + x` connects (x, y) to (x, (y+1)%L).
//!
//! The anchor of a link is the vertex it extends from in +x or +y; this is
//! the lexicographically smaller endpoint for non-wrapping links and keeps
//! anchors translation-covariant on wrapping links, which the pair-class
//! reduction relies on.
//!
//! There are 2L² links and L² vertices; every vertex touches exactly 4
//! links. At L = 2 two distinct links join the same vertex pair (wraparound
//! doubling) and both are kept.

use crate::error::{Error, Result};

/// Link orientation on the square lattice.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, serde::Serialize)]
pub enum Orientation {
    Horizontal,
    Vertical,
}

/// Immutable index tables for the torus. Safe to share across chains.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TorusGeometry {
    l: usize,
    /// Endpoint vertex ids per link.
    endpoints: Vec<[u32; 2]>,
    /// The 4 links incident to each vertex.
    links_at_vertex: Vec<[u32; 4]>,
}

impl TorusGeometry {
    /// Build the index tables for an L×L torus. Errors for L < 2, where the
    /// lattice degenerates to self-loops.
    pub fn new(l: usize) -> Result<Self> {
        if l < 2 {
            return Err(Error::InvalidSize(l));
        }
        let n_spins = l * l;
        let n_links = 2 * n_spins;
        let mut endpoints = Vec::with_capacity(n_links);
        for y in 0..l {
            for x in 0..l {
                let a = (y * l + x) as u32;
                let b = (y * l + (x + 1) % l) as u32;
                endpoints.push([a, b]);
            }
        }
        for y in 0..l {
            for x in 0..l {
                let a = (y * l + x) as u32;
                let b = (((y + 1) % l) * l + x) as u32;
                endpoints.push([a, b]);
            }
        }
        let mut links_at_vertex = vec![[0u32; 4]; n_spins];
        for y in 0..l {
            for x in 0..l {
                let v = y * l + x;
                links_at_vertex[v] = [
                    (y * l + x) as u32,                          // right
                    (y * l + (x + l - 1) % l) as u32,            // left
                    (n_spins + y * l + x) as u32,                // down
                    (n_spins + ((y + l - 1) % l) * l + x) as u32, // up
                ];
            }
        }
        Ok(Self {
            l,
            endpoints,
            links_at_vertex,
        })
    }

    pub fn l(&self) -> usize {
        self.l
    }

    pub fn n_spins(&self) -> usize {
        self.l * self.l
    }

    pub fn n_links(&self) -> usize {
        2 * self.l * self.l
    }

    /// Checked endpoint lookup.
    pub fn link_endpoints(&self, link: usize) -> Result<(usize, usize)> {
        let [a, b] = *self
            .endpoints
            .get(link)
            .ok_or(Error::IndexOutOfRange {
                kind: "link",
                id: link,
                count: self.n_links(),
            })?;
        Ok((a as usize, b as usize))
    }

    /// Unchecked endpoint lookup for hot loops.
    #[inline]
    pub fn endpoints_of(&self, link: usize) -> (usize, usize) {
        let [a, b] = self.endpoints[link];
        (a as usize, b as usize)
    }

    /// The 4 links incident to a vertex (doubled links appear once per slot).
    #[inline]
    pub fn links_at_vertex(&self, vertex: usize) -> &[u32; 4] {
        &self.links_at_vertex[vertex]
    }

    #[inline]
    pub fn orientation(&self, link: usize) -> Orientation {
        if link < self.n_spins() {
            Orientation::Horizontal
        } else {
            Orientation::Vertical
        }
    }

    /// Anchor vertex coordinates (x, y) of a link.
    #[inline]
    pub fn anchor(&self, link: usize) -> (usize, usize) {
        let idx = link % self.n_spins();
        (idx % self.l, idx / self.l)
    }

    pub fn vertex_id(&self, x: usize, y: usize) -> usize {
        (y % self.l) * self.l + (x % self.l)
    }

    pub fn horizontal_link(&self, x: usize, y: usize) -> usize {
        (y % self.l) * self.l + (x % self.l)
    }

    pub fn vertical_link(&self, x: usize, y: usize) -> usize {
        self.n_spins() + (y % self.l) * self.l + (x % self.l)
    }
}

/// Orientation pair of an unordered link pair, in canonical order
/// (horizontal before vertical).
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, serde::Serialize)]
pub enum PairOrientation {
    Hh,
    Hv,
    Vv,
}

impl PairOrientation {
    pub const ALL: [PairOrientation; 3] = [Self::Hh, Self::Hv, Self::Vv];

    #[inline]
    pub fn index(self) -> usize {
        self as usize
    }
}

/// Translation orbit of unordered link pairs: every member pair shares one
/// expectation value ⟨E_iE_j⟩ on the torus.
#[derive(Debug, Clone, PartialEq, Eq, serde::Serialize)]
pub struct PairClass {
    pub orientations: PairOrientation,
    /// Wrapped displacement (dx, dy) between anchors, reduced to the
    /// canonical representative of {d, -d} for same-orientation pairs.
    pub displacement: (usize, usize),
    /// Number of unordered link pairs in the orbit.
    pub multiplicity: u64,
}

impl PairClass {
    /// Squared minimum-image Euclidean distance between the two anchors.
    pub fn min_image_r2(&self, l: usize) -> u64 {
        let (dx, dy) = self.displacement;
        let mx = dx.min((l - dx) % l) as u64;
        let my = dy.min((l - dy) % l) as u64;
        mx * mx + my * my
    }
}

/// Complete translation-symmetry reduction of the link-pair sum.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PairClassification {
    l: usize,
    classes: Vec<PairClass>,
    /// Per orientation pair: displacement index dy*L+dx -> class id, for
    /// canonical displacements only.
    disp_to_class: [Vec<Option<u32>>; 3],
}

impl PairClassification {
    /// Classify every unordered pair of distinct links by exhaustive
    /// enumeration. One-time O(n_links²); repeated calls give identical
    /// output.
    pub fn new(geom: &TorusGeometry) -> Self {
        let l = geom.l();
        let n_spins = l * l;
        let n_links = geom.n_links();

        // Constructive class layout first: canonical displacements in
        // (orientation, dy, dx) order.
        let mut classes = Vec::new();
        let mut disp_to_class = [
            vec![None; n_spins],
            vec![None; n_spins],
            vec![None; n_spins],
        ];
        for op in PairOrientation::ALL {
            for dy in 0..l {
                for dx in 0..l {
                    let same = op != PairOrientation::Hv;
                    if same {
                        if dx == 0 && dy == 0 {
                            continue;
                        }
                        if !is_canonical_displacement(l, dx, dy) {
                            continue;
                        }
                    }
                    disp_to_class[op.index()][dy * l + dx] = Some(classes.len() as u32);
                    classes.push(PairClass {
                        orientations: op,
                        displacement: (dx, dy),
                        multiplicity: 0,
                    });
                }
            }
        }

        let mut classification = Self {
            l,
            classes,
            disp_to_class,
        };

        // Multiplicities by exhaustive pair enumeration.
        for i in 0..n_links {
            for j in (i + 1)..n_links {
                let c = classification.class_of_pair(geom, i, j);
                classification.classes[c].multiplicity += 1;
            }
        }
        classification
    }

    pub fn l(&self) -> usize {
        self.l
    }

    pub fn classes(&self) -> &[PairClass] {
        &self.classes
    }

    pub fn n_classes(&self) -> usize {
        self.classes.len()
    }

    pub fn total_pairs(&self) -> u64 {
        self.classes.iter().map(|c| c.multiplicity).sum()
    }

    /// Class id of an unordered pair of distinct links.
    pub fn class_of_pair(&self, geom: &TorusGeometry, i: usize, j: usize) -> usize {
        debug_assert_ne!(i, j);
        let l = self.l;
        let (oi, oj) = (geom.orientation(i), geom.orientation(j));
        let (ai, aj) = (geom.anchor(i), geom.anchor(j));
        let (op, first, second) = match (oi, oj) {
            (Orientation::Horizontal, Orientation::Horizontal) => (PairOrientation::Hh, ai, aj),
            (Orientation::Vertical, Orientation::Vertical) => (PairOrientation::Vv, ai, aj),
            (Orientation::Horizontal, Orientation::Vertical) => (PairOrientation::Hv, ai, aj),
            (Orientation::Vertical, Orientation::Horizontal) => (PairOrientation::Hv, aj, ai),
        };
        let mut dx = (second.0 + l - first.0) % l;
        let mut dy = (second.1 + l - first.1) % l;
        if op != PairOrientation::Hv && !is_canonical_displacement(l, dx, dy) {
            dx = (l - dx) % l;
            dy = (l - dy) % l;
        }
        self.disp_to_class[op.index()][dy * l + dx].expect("pair maps to a class") as usize
    }

    /// Class id for a canonical displacement, if that displacement heads a
    /// class (mirrors and the same-orientation zero displacement do not).
    #[inline]
    pub fn class_for_displacement(&self, op: PairOrientation, dx: usize, dy: usize) -> Option<u32> {
        self.disp_to_class[op.index()][dy * self.l + dx]
    }
}

/// Canonical representative of {d, -d} mod L: the lexicographically smaller
/// of (dy, dx) and its negation.
#[inline]
fn is_canonical_displacement(l: usize, dx: usize, dy: usize) -> bool {
    let ndx = (l - dx) % l;
    let ndy = (l - dy) % l;
    (dy, dx) <= (ndy, ndx)
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::collections::HashSet;

    #[test]
    fn rejects_degenerate_size() {
        assert!(matches!(TorusGeometry::new(1), Err(Error::InvalidSize(1))));
        assert!(matches!(TorusGeometry::new(0), Err(Error::InvalidSize(0))));
    }

    #[test]
    fn counts_match_geometry() {
        let g = TorusGeometry::new(2).unwrap();
        assert_eq!(g.n_spins(), 4);
        assert_eq!(g.n_links(), 8);
        let g = TorusGeometry::new(40).unwrap();
        assert_eq!(g.n_links(), 3200);
        let g = TorusGeometry::new(3).unwrap();
        assert_eq!(g.n_links(), 18);
    }

    #[test]
    fn every_vertex_touches_four_links() {
        for l in [2, 3, 5] {
            let g = TorusGeometry::new(l).unwrap();
            let mut incidence = vec![0usize; g.n_links()];
            for v in 0..g.n_spins() {
                for &link in g.links_at_vertex(v) {
                    incidence[link as usize] += 1;
                }
            }
            // Involution consistency: each link seen exactly twice.
            assert!(incidence.iter().all(|&c| c == 2), "L = {l}");
            for v in 0..g.n_spins() {
                let count = (0..g.n_links())
                    .filter(|&link| {
                        let (a, b) = g.endpoints_of(link);
                        a == v || b == v
                    })
                    .count();
                assert_eq!(count, 4, "vertex {v} at L = {l}");
            }
        }
    }

    #[test]
    fn endpoint_lookup_checks_range() {
        let g = TorusGeometry::new(3).unwrap();
        let (a, b) = g.link_endpoints(g.horizontal_link(0, 0)).unwrap();
        assert_eq!((a, b), (g.vertex_id(0, 0), g.vertex_id(1, 0)));
        assert!(g.link_endpoints(18).is_err());
    }

    #[test]
    fn wraparound_doubling_at_l2() {
        let g = TorusGeometry::new(2).unwrap();
        let l1 = g.horizontal_link(0, 0);
        let l2 = g.horizontal_link(1, 0);
        assert_ne!(l1, l2);
        let e1 = g.link_endpoints(l1).unwrap();
        let e2 = g.link_endpoints(l2).unwrap();
        let s1: HashSet<_> = [e1.0, e1.1].into();
        let s2: HashSet<_> = [e2.0, e2.1].into();
        assert_eq!(s1, s2);
        assert_eq!(s1, [g.vertex_id(0, 0), g.vertex_id(1, 0)].into());
    }

    #[test]
    fn geometry_is_deterministic() {
        assert_eq!(TorusGeometry::new(5).unwrap(), TorusGeometry::new(5).unwrap());
        let g = TorusGeometry::new(4).unwrap();
        assert_eq!(
            PairClassification::new(&g),
            PairClassification::new(&g)
        );
    }

    #[test]
    fn multiplicities_sum_to_pair_count() {
        for l in [2, 3, 4, 5, 8] {
            let g = TorusGeometry::new(l).unwrap();
            let c = PairClassification::new(&g);
            let n = g.n_links() as u64;
            assert_eq!(c.total_pairs(), n * (n - 1) / 2, "L = {l}");
        }
    }

    /// Independent oracle: two pairs are in one class iff a torus translation
    /// maps one onto the other. Canonical form = minimum over all L²
    /// translations of the sorted translated pair.
    fn brute_force_class_count(g: &TorusGeometry) -> usize {
        let l = g.l();
        let translate = |link: usize, tx: usize, ty: usize| -> usize {
            let (x, y) = g.anchor(link);
            let nx = (x + tx) % l;
            let ny = (y + ty) % l;
            match g.orientation(link) {
                Orientation::Horizontal => g.horizontal_link(nx, ny),
                Orientation::Vertical => g.vertical_link(nx, ny),
            }
        };
        let mut forms = HashSet::new();
        for i in 0..g.n_links() {
            for j in (i + 1)..g.n_links() {
                let mut best = (usize::MAX, usize::MAX);
                for ty in 0..l {
                    for tx in 0..l {
                        let a = translate(i, tx, ty);
                        let b = translate(j, tx, ty);
                        let form = (a.min(b), a.max(b));
                        best = best.min(form);
                    }
                }
                forms.insert(best);
            }
        }
        forms.len()
    }

    #[test]
    fn class_count_matches_brute_force_scan() {
        for l in [2, 3, 4] {
            let g = TorusGeometry::new(l).unwrap();
            let c = PairClassification::new(&g);
            assert_eq!(c.n_classes(), brute_force_class_count(&g), "L = {l}");
        }
    }

    #[test]
    fn translated_pairs_share_a_class() {
        let g = TorusGeometry::new(4).unwrap();
        let c = PairClassification::new(&g);
        let l = g.l();
        let translate = |link: usize, tx: usize, ty: usize| -> usize {
            let (x, y) = g.anchor(link);
            match g.orientation(link) {
                Orientation::Horizontal => g.horizontal_link((x + tx) % l, (y + ty) % l),
                Orientation::Vertical => g.vertical_link((x + tx) % l, (y + ty) % l),
            }
        };
        for i in 0..g.n_links() {
            for j in (i + 1)..g.n_links() {
                let base = c.class_of_pair(&g, i, j);
                for (tx, ty) in [(1, 0), (0, 1), (2, 3)] {
                    let (a, b) = (translate(i, tx, ty), translate(j, tx, ty));
                    assert_eq!(c.class_of_pair(&g, a, b), base);
                }
            }
        }
    }

    #[test]
    fn displacement_lookup_agrees_with_pair_lookup() {
        let g = TorusGeometry::new(4).unwrap();
        let c = PairClassification::new(&g);
        // h(0,0) and v(2,1): displacement (2,1) in Hv order.
        let i = g.horizontal_link(0, 0);
        let j = g.vertical_link(2, 1);
        let id = c.class_for_displacement(PairOrientation::Hv, 2, 1).unwrap();
        assert_eq!(c.class_of_pair(&g, i, j), id as usize);
    }

    #[test]
    fn min_image_distance() {
        let class = PairClass {
            orientations: PairOrientation::Hh,
            displacement: (3, 0),
            multiplicity: 16,
        };
        assert_eq!(class.min_image_r2(4), 1);
        let class = PairClass {
            orientations: PairOrientation::Hv,
            displacement: (0, 0),
            multiplicity: 16,
        };
        assert_eq!(class.min_image_r2(4), 0);
    }
}
