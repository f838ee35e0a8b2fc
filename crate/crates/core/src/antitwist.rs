//! Horizontal and vertical antitwists as cellular chain maps.
//!
//! Edges of the square complex are `h_q`, the south side of square `q`
//! oriented east, and `v_q`, its west side oriented north. On a horizontal
//! cylinder of width `w` and exponent `n` the antitwist is the affine map
//! `(x, y) -> (x + 1 + (n w - 2) y, 1 - y)`; its cellular approximation sends
//!
//! ```text
//! h_q -> h_{N E q}
//! v_q -> sum_{i=1}^{n w - 2} h_{N E^i q}  -  v_{W q}
//! ```
//!
//! i.e. the image of a vertical side runs along the top of the cylinder and
//! then down one edge. The vertical antitwist `(x, y) -> (1 - x, y + 1 + (m h - 2) x)`
//! is the transposed picture:
//!
//! ```text
//! v_q -> v_{E N q}
//! h_q -> sum_{j=1}^{m h - 2} v_{E N^j q}  -  h_{S q}
//! ```
//!
//! Both send the vertex at the south-west corner of `q` to the south-west
//! corner of `N E q`.

use std::collections::BTreeMap;
use std::fmt;

use thiserror::Error;

use crate::surface::BacfiSurface;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ChainMapError {
    #[error("chain maps live on different surfaces")]
    SurfaceMismatch,
    #[error("boundary does not commute with the map on edge {edge}")]
    BoundaryMismatch { edge: Edge },
    #[error("integer overflow while composing chain maps")]
    Overflow,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Edge {
    /// South side of a square, oriented east.
    H(usize),
    /// West side of a square, oriented north.
    V(usize),
}

impl Edge {
    /// Position in the edge basis `h_0, .., h_{n-1}, v_0, .., v_{n-1}`.
    pub fn index(self, n: usize) -> usize {
        match self {
            Edge::H(q) => q,
            Edge::V(q) => n + q,
        }
    }

    pub fn from_index(i: usize, n: usize) -> Edge {
        if i < n {
            Edge::H(i)
        } else {
            Edge::V(i - n)
        }
    }

    /// The edge vector in the plane.
    pub fn holonomy(self) -> (i64, i64) {
        match self {
            Edge::H(_) => (1, 0),
            Edge::V(_) => (0, 1),
        }
    }
}

impl fmt::Display for Edge {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Edge::H(q) => write!(f, "h{q}"),
            Edge::V(q) => write!(f, "v{q}"),
        }
    }
}

/// A formal integer combination of edges; zero coefficients are never stored.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Chain(BTreeMap<Edge, i64>);

impl Chain {
    pub fn zero() -> Self {
        Chain(BTreeMap::new())
    }

    pub fn edge(e: Edge) -> Self {
        let mut c = Chain::zero();
        c.add(e, 1);
        c
    }

    pub fn add(&mut self, e: Edge, coefficient: i64) {
        if coefficient == 0 {
            return;
        }
        let entry = self.0.entry(e).or_insert(0);
        *entry += coefficient;
        if *entry == 0 {
            self.0.remove(&e);
        }
    }

    pub fn coefficient(&self, e: Edge) -> i64 {
        self.0.get(&e).copied().unwrap_or(0)
    }

    pub fn terms(&self) -> impl Iterator<Item = (Edge, i64)> + '_ {
        self.0.iter().map(|(&e, &c)| (e, c))
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    /// Sum of the absolute values of the coefficients.
    pub fn mass(&self) -> i64 {
        self.0.values().map(|c| c.abs()).sum()
    }

    /// Total displacement of the chain in the plane.
    pub fn holonomy(&self) -> (i64, i64) {
        self.terms().fold((0, 0), |(x, y), (e, c)| {
            let (dx, dy) = e.holonomy();
            (x + c * dx, y + c * dy)
        })
    }

    pub fn to_dense(&self, n: usize) -> Vec<i64> {
        let mut v = vec![0; 2 * n];
        for (e, c) in self.terms() {
            v[e.index(n)] = c;
        }
        v
    }

    pub fn from_dense(v: &[i64]) -> Self {
        let n = v.len() / 2;
        let mut c = Chain::zero();
        for (i, &x) in v.iter().enumerate() {
            c.add(Edge::from_index(i, n), x);
        }
        c
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MapLabel {
    Identity,
    HorizontalAntitwist,
    VerticalAntitwist,
    Composite,
}

/// A cellular chain map of the square complex of one surface.
#[derive(Debug, Clone)]
pub struct CellularChainMap {
    surface: BacfiSurface,
    vertex_of: Vec<usize>,
    vertex_map: Vec<usize>,
    edge_images: Vec<Chain>,
    label: MapLabel,
}

impl CellularChainMap {
    fn from_square_rule(
        surface: &BacfiSurface,
        label: MapLabel,
        image_of: impl Fn(Edge) -> Chain,
    ) -> Self {
        let n = surface.len();
        let vertex_of = surface.vertex_index();
        let mut vertex_map = vec![0; surface.vertex_classes().len()];
        for q in 0..n {
            let target = match label {
                MapLabel::Identity => q,
                _ => surface.ne(q),
            };
            vertex_map[vertex_of[q]] = vertex_of[target];
        }
        let edge_images = (0..2 * n)
            .map(|i| image_of(Edge::from_index(i, n)))
            .collect();
        CellularChainMap {
            surface: surface.clone(),
            vertex_of,
            vertex_map,
            edge_images,
            label,
        }
    }

    pub fn identity(surface: &BacfiSurface) -> Self {
        Self::from_square_rule(surface, MapLabel::Identity, Chain::edge)
    }

    pub fn surface(&self) -> &BacfiSurface {
        &self.surface
    }

    pub fn label(&self) -> MapLabel {
        self.label
    }

    /// Vertex map on indices of [`BacfiSurface::vertex_classes`].
    pub fn vertex_map(&self) -> &[usize] {
        &self.vertex_map
    }

    pub fn image(&self, e: Edge) -> &Chain {
        &self.edge_images[e.index(self.surface.len())]
    }

    pub fn apply(&self, chain: &Chain) -> Result<Chain, ChainMapError> {
        let mut out = Chain::zero();
        for (e, c) in chain.terms() {
            for (f, d) in self.image(e).terms() {
                out.add(f, c.checked_mul(d).ok_or(ChainMapError::Overflow)?);
            }
        }
        Ok(out)
    }

    /// Boundary of a 1-chain as a vector over vertex classes.
    pub fn boundary(&self, chain: &Chain) -> Vec<i64> {
        let s = &self.surface;
        let mut out = vec![0; self.vertex_map.len()];
        for (e, c) in chain.terms() {
            let (start, end) = match e {
                Edge::H(q) => (q, s.east(q)),
                Edge::V(q) => (q, s.north(q)),
            };
            out[self.vertex_of[end]] += c;
            out[self.vertex_of[start]] -= c;
        }
        out
    }

    /// Checks `boundary(f(e)) = f(boundary(e))` for every edge.
    pub fn verify(&self) -> Result<(), ChainMapError> {
        let n = self.surface.len();
        for i in 0..2 * n {
            let e = Edge::from_index(i, n);
            let lhs = self.boundary(self.image(e));
            let mut rhs = vec![0; lhs.len()];
            for (v, c) in self.boundary(&Chain::edge(e)).into_iter().enumerate() {
                rhs[self.vertex_map[v]] += c;
            }
            if lhs != rhs {
                return Err(ChainMapError::BoundaryMismatch { edge: e });
            }
        }
        Ok(())
    }

    /// Linear part of the map on square `q`: columns are the displacements
    /// of the images of `h_q` and `v_q`.
    pub fn linear_part(&self, q: usize) -> [[i64; 2]; 2] {
        let (a, c) = self.image(Edge::H(q)).holonomy();
        let (b, d) = self.image(Edge::V(q)).holonomy();
        [[a, b], [c, d]]
    }

    /// Dense `2n x 2n` matrix of the map on `C_1`, columns indexed by edges.
    pub fn matrix(&self) -> crate::linalg::IntMatrix {
        let n = self.surface.len();
        let mut m = crate::linalg::IntMatrix::zeros(2 * n, 2 * n);
        for (j, image) in self.edge_images.iter().enumerate() {
            for (e, c) in image.terms() {
                m[(e.index(n), j)] = c;
            }
        }
        m
    }
}

/// The left-veering horizontal antitwist with the surface's horizontal
/// exponents.
pub fn horizontal_antitwist(s: &BacfiSurface) -> CellularChainMap {
    CellularChainMap::from_square_rule(s, MapLabel::HorizontalAntitwist, |e| match e {
        Edge::H(q) => Chain::edge(Edge::H(s.ne(q))),
        Edge::V(q) => {
            let width = s
                .cylinder_of(crate::surface::CylinderKind::Horizontal, q)
                .width();
            let shear = s.h_exp(q) as usize * width - 2;
            let mut chain = Chain::zero();
            let mut x = q;
            for _ in 0..shear {
                x = s.east(x);
                chain.add(Edge::H(s.north(x)), 1);
            }
            chain.add(Edge::V(s.west(q)), -1);
            chain
        }
    })
}

/// The right-veering vertical antitwist with the surface's vertical
/// exponents.
pub fn vertical_antitwist(s: &BacfiSurface) -> CellularChainMap {
    CellularChainMap::from_square_rule(s, MapLabel::VerticalAntitwist, |e| match e {
        Edge::V(q) => Chain::edge(Edge::V(s.en(q))),
        Edge::H(q) => {
            let height = s
                .cylinder_of(crate::surface::CylinderKind::Vertical, q)
                .width();
            let shear = s.v_exp(q) as usize * height - 2;
            let mut chain = Chain::zero();
            let mut x = q;
            for _ in 0..shear {
                x = s.north(x);
                chain.add(Edge::V(s.east(x)), 1);
            }
            chain.add(Edge::H(s.south(q)), -1);
            chain
        }
    })
}

/// `outer ∘ inner`.
pub fn compose(
    outer: &CellularChainMap,
    inner: &CellularChainMap,
) -> Result<CellularChainMap, ChainMapError> {
    if !outer.surface.same_tiling(&inner.surface) {
        return Err(ChainMapError::SurfaceMismatch);
    }
    let edge_images = inner
        .edge_images
        .iter()
        .map(|c| outer.apply(c))
        .collect::<Result<Vec<_>, _>>()?;
    let vertex_map = inner
        .vertex_map
        .iter()
        .map(|&v| outer.vertex_map[v])
        .collect();
    let label = match (outer.label, inner.label) {
        (MapLabel::Identity, l) | (l, MapLabel::Identity) => l,
        _ => MapLabel::Composite,
    };
    Ok(CellularChainMap {
        surface: inner.surface.clone(),
        vertex_of: inner.vertex_of.clone(),
        vertex_map,
        edge_images,
        label,
    })
}

/// The divide monodromy: vertical antitwist after horizontal antitwist.
pub fn monodromy(s: &BacfiSurface) -> CellularChainMap {
    compose(&vertical_antitwist(s), &horizontal_antitwist(s))
        .expect("both antitwists live on the same surface")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::builtin;
    use crate::surface::CylinderKind;

    #[test]
    fn example2_linear_parts() {
        let s = builtin::example2();
        let h = horizontal_antitwist(&s);
        let v = vertical_antitwist(&s);
        let f = monodromy(&s);
        for q in 0..s.len() {
            assert_eq!(h.linear_part(q), [[1, 4], [0, -1]]);
            assert_eq!(v.linear_part(q), [[-1, 0], [4, 1]]);
            assert_eq!(f.linear_part(q), [[-1, -4], [4, 15]]);
        }
    }

    #[test]
    fn one_square_empty_transvection() {
        let s = builtin::example3(2, 2).unwrap();
        let h = horizontal_antitwist(&s);
        assert_eq!(h.image(Edge::V(0)), &{
            let mut c = Chain::zero();
            c.add(Edge::V(0), -1);
            c
        });
        let v = vertical_antitwist(&s);
        assert_eq!(
            v.image(Edge::H(0)).terms().collect::<Vec<_>>(),
            vec![(Edge::H(0), -1)]
        );
    }

    #[test]
    fn example4_edge_counts() {
        let s = builtin::example4(3, 7).unwrap();
        let h = horizontal_antitwist(&s);
        // cylinder {a, b} with exponent 3: 2q - 2 = 4 horizontal edges
        for q in [0, 1] {
            let img = h.image(Edge::V(q));
            let horizontal: i64 = img
                .terms()
                .filter(|(e, _)| matches!(e, Edge::H(_)))
                .map(|(_, c)| c)
                .sum();
            assert_eq!(horizontal, 4);
            assert_eq!(h.linear_part(q), [[1, 4], [0, -1]]);
        }
        assert_eq!(h.linear_part(2), [[1, 5], [0, -1]]);
        let v = vertical_antitwist(&s);
        for q in 0..3 {
            let vertical: i64 = v
                .image(Edge::H(q))
                .terms()
                .filter(|(e, _)| matches!(e, Edge::V(_)))
                .map(|(_, c)| c)
                .sum();
            assert_eq!(vertical, 1);
            assert_eq!(v.linear_part(q), [[-1, 0], [1, 1]]);
        }
    }

    #[test]
    fn maps_commute_with_boundary_on_gallery() {
        for s in builtin::gallery() {
            horizontal_antitwist(&s).verify().unwrap();
            vertical_antitwist(&s).verify().unwrap();
            monodromy(&s).verify().unwrap();
        }
    }

    #[test]
    fn composite_fixes_vertices() {
        for s in builtin::gallery() {
            let f = monodromy(&s);
            assert!(f.vertex_map().iter().enumerate().all(|(i, &j)| i == j));
        }
    }

    #[test]
    fn identity_is_neutral() {
        let s = builtin::example4(3, 7).unwrap();
        let id = CellularChainMap::identity(&s);
        let h = horizontal_antitwist(&s);
        let left = compose(&id, &h).unwrap();
        let right = compose(&h, &id).unwrap();
        assert_eq!(left.matrix(), h.matrix());
        assert_eq!(right.matrix(), h.matrix());
        assert_eq!(left.label(), MapLabel::HorizontalAntitwist);
    }

    #[test]
    fn compose_rejects_other_surface() {
        let a = monodromy(&builtin::example2());
        let b = monodromy(&builtin::two_row(6, 2).unwrap());
        // same tiling, different exponents: fine
        assert!(compose(&a, &b).is_ok());
        let c = monodromy(&builtin::two_row(5, 1).unwrap());
        assert_eq!(compose(&a, &c).unwrap_err(), ChainMapError::SurfaceMismatch);
    }

    #[test]
    fn images_stay_in_their_cylinders() {
        for s in builtin::gallery() {
            let h = horizontal_antitwist(&s);
            for cyl in s.cylinders(CylinderKind::Horizontal) {
                // Every edge of the cylinder: bottom sides h_q, top sides
                // h_{N q} and vertical sides v_q.
                let mut allowed: Vec<Edge> = Vec::new();
                for &q in &cyl.squares {
                    allowed.extend([Edge::H(q), Edge::H(s.north(q)), Edge::V(q)]);
                }
                for &q in &cyl.squares {
                    for e in [Edge::H(q), Edge::H(s.north(q)), Edge::V(q)] {
                        assert!(h.image(e).terms().all(|(f, _)| allowed.contains(&f)));
                    }
                }
            }
            let v = vertical_antitwist(&s);
            for cyl in s.cylinders(CylinderKind::Vertical) {
                let mut allowed: Vec<Edge> = Vec::new();
                for &q in &cyl.squares {
                    allowed.extend([Edge::V(q), Edge::V(s.east(q)), Edge::H(q)]);
                }
                for &q in &cyl.squares {
                    for e in [Edge::V(q), Edge::V(s.east(q)), Edge::H(q)] {
                        assert!(v.image(e).terms().all(|(f, _)| allowed.contains(&f)));
                    }
                }
            }
        }
    }

    #[test]
    fn transvection_path_is_connected() {
        for s in builtin::gallery() {
            let vertex = s.vertex_index();
            for q in 0..s.len() {
                let cyl = s.cylinder_of(CylinderKind::Horizontal, q);
                let mut x = s.east(q);
                for _ in 1..cyl.shear() {
                    // end of h_{N E^i q} is the start of h_{N E^{i+1} q}
                    let end = vertex[s.east(s.north(x))];
                    let start = vertex[s.north(s.east(x))];
                    assert_eq!(end, start);
                    x = s.east(x);
                }
            }
        }
    }
}
