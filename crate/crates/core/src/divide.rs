//! The divide of a Ba'cfi surface as a fat graph, its inverse construction
//! and the orbifold it lives on.
//!
//! Every square `s` gives an edge `e_s`. Its right end sits at the vertex of
//! the `NE`-orbit of `s`, where the ends are arranged counterclockwise as
//!
//! ```text
//! (s, right), (E s, left), (NE s, right), (ENE s, left)
//! ```
//!
//! An `NE`-fixed square gives a U-turn vertex with the two ends
//! `(s, right), (E s, left)`. With `sigma` the counterclockwise successor of
//! an end and `alpha` the other end of the same edge, the faces are the
//! orbits of `sigma . alpha`. It sends `(s, right)` to `(N s, right)` and
//! `(s, left)` to `(E s, left)`: right ends trace the white faces (vertical
//! cylinders), left ends the black faces (horizontal cylinders).

use std::collections::{BTreeMap, VecDeque};
use std::fmt;

use num_rational::Rational64;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::surface::{cycles, BacfiSurface, SurfaceError};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum DivideError {
    #[error("malformed divide document: {0}")]
    Malformed(String),
    #[error("vertex {vertex} has valence {valence}; expected 4 (crossing) or 2 (U-turn)")]
    NotFourValent { vertex: usize, valence: usize },
    #[error("faces of the divide admit no black/white checkerboard coloring")]
    NotCheckerboardColorable,
    #[error("divide does not give a Ba'cfi surface: {0}")]
    Surface(#[from] SurfaceError),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum End {
    Right,
    Left,
}

/// An end of an edge. In documents it is written `[edge, end]` with end 0 for
/// the right end and 1 for the left end.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Dart {
    pub edge: usize,
    pub end: End,
}

impl Dart {
    pub fn right(edge: usize) -> Self {
        Dart {
            edge,
            end: End::Right,
        }
    }

    pub fn left(edge: usize) -> Self {
        Dart {
            edge,
            end: End::Left,
        }
    }

    fn index(self) -> usize {
        2 * self.edge + usize::from(self.end == End::Left)
    }

    fn from_index(i: usize) -> Self {
        Dart {
            edge: i / 2,
            end: if i.is_multiple_of(2) {
                End::Right
            } else {
                End::Left
            },
        }
    }

    fn to_pair(self) -> [usize; 2] {
        [self.edge, usize::from(self.end == End::Left)]
    }
}

impl fmt::Display for Dart {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let end = if self.end == End::Right { 'r' } else { 'l' };
        write!(f, "e{}{end}", self.edge)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum VertexDocument {
    Cyclic(Vec<[usize; 2]>),
    Uturn(Vec<[usize; 2]>),
}

/// The JSON divide document. `cone` maps face indices, as printed by the face
/// table, to cone orders.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DivideDocument {
    pub edges: usize,
    pub vertices: Vec<VertexDocument>,
    #[serde(default)]
    pub cone: BTreeMap<String, u32>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum FaceColor {
    Black,
    White,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Face {
    pub darts: Vec<Dart>,
    pub color: FaceColor,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DivideVertex {
    pub darts: Vec<Dart>,
}

impl DivideVertex {
    pub fn is_uturn(&self) -> bool {
        self.darts.len() == 2
    }
}

/// A validated, checkerboard colored divide. After validation the ends are
/// normalized so that right ends lie in white faces.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Divide {
    edges: usize,
    vertices: Vec<DivideVertex>,
    faces: Vec<Face>,
    cone: BTreeMap<usize, u32>,
    east: Vec<usize>,
    north: Vec<usize>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct DivideStats {
    /// Number of vertices, crossings and U-turns together.
    pub d_gamma: usize,
    /// Number of components of the divide.
    pub components: usize,
    /// Components avoiding U-turn points.
    pub c: usize,
    /// Components through U-turn points.
    pub d: usize,
    pub boundary_count: usize,
    pub genus_formula: usize,
}

impl Divide {
    pub fn from_surface(s: &BacfiSurface) -> Self {
        let n = s.len();
        let ne: Vec<usize> = (0..n).map(|q| s.ne(q)).collect();
        let vertices = cycles(&ne)
            .into_iter()
            .map(|orbit| {
                let q = orbit[0];
                let mut darts = vec![Dart::right(q), Dart::left(s.east(q))];
                if orbit.len() == 2 {
                    let t = orbit[1];
                    darts.extend([Dart::right(t), Dart::left(s.east(t))]);
                }
                DivideVertex { darts }
            })
            .collect();
        let mut cone = BTreeMap::new();
        let mut divide = Divide {
            edges: n,
            vertices,
            faces: Vec::new(),
            cone: BTreeMap::new(),
            east: (0..n).map(|q| s.east(q)).collect(),
            north: (0..n).map(|q| s.north(q)).collect(),
        };
        divide.faces = divide.trace_faces_colored();
        for (i, face) in divide.faces.iter().enumerate() {
            let q = face.darts[0].edge;
            let exponent = match face.color {
                FaceColor::Black => s.h_exp(q),
                FaceColor::White => s.v_exp(q),
            };
            if exponent >= 2 {
                cone.insert(i, exponent);
            }
        }
        divide.cone = cone;
        divide
    }

    /// Faces of a divide whose ends are already normalized (right ends in
    /// white faces).
    fn trace_faces_colored(&self) -> Vec<Face> {
        let sigma = self.sigma();
        trace_faces(&sigma)
            .into_iter()
            .map(|darts| {
                let color = if darts[0].end == End::Right {
                    FaceColor::White
                } else {
                    FaceColor::Black
                };
                Face { darts, color }
            })
            .collect()
    }

    fn sigma(&self) -> Vec<usize> {
        let mut sigma = vec![0; 2 * self.edges];
        for v in &self.vertices {
            for (i, d) in v.darts.iter().enumerate() {
                sigma[d.index()] = v.darts[(i + 1) % v.darts.len()].index();
            }
        }
        sigma
    }

    pub fn from_document(doc: &DivideDocument) -> Result<Self, DivideError> {
        let m = doc.edges;
        if m == 0 {
            return Err(DivideError::Malformed(
                "a divide needs at least one edge".into(),
            ));
        }
        let mut seen = vec![false; 2 * m];
        let mut vertices = Vec::with_capacity(doc.vertices.len());
        for (vi, v) in doc.vertices.iter().enumerate() {
            let (pairs, expected) = match v {
                VertexDocument::Cyclic(p) => (p, 4),
                VertexDocument::Uturn(p) => (p, 2),
            };
            if pairs.len() != expected {
                return Err(DivideError::NotFourValent {
                    vertex: vi,
                    valence: pairs.len(),
                });
            }
            let mut darts = Vec::with_capacity(expected);
            for &[edge, end] in pairs {
                if edge >= m || end > 1 {
                    return Err(DivideError::Malformed(format!(
                        "vertex {vi} lists [{edge}, {end}]; edges are 0..{m} and ends 0 or 1"
                    )));
                }
                let d = Dart::from_index(2 * edge + end);
                if std::mem::replace(&mut seen[d.index()], true) {
                    return Err(DivideError::Malformed(format!(
                        "end [{edge}, {end}] is attached twice"
                    )));
                }
                darts.push(d);
            }
            vertices.push(DivideVertex { darts });
        }
        if let Some(i) = seen.iter().position(|&x| !x) {
            let d = Dart::from_index(i);
            return Err(DivideError::Malformed(format!(
                "end {:?} is not attached to any vertex",
                d.to_pair()
            )));
        }

        let raw = Divide {
            edges: m,
            vertices,
            faces: Vec::new(),
            cone: BTreeMap::new(),
            east: Vec::new(),
            north: Vec::new(),
        };
        let sigma = raw.sigma();
        let faces = trace_faces(&sigma);
        let mut face_of = vec![0; 2 * m];
        for (f, darts) in faces.iter().enumerate() {
            for d in darts {
                face_of[d.index()] = f;
            }
        }
        // The two ends of an edge bound opposite faces.
        let mut color: Vec<Option<FaceColor>> = vec![None; faces.len()];
        color[face_of[Dart::right(0).index()]] = Some(FaceColor::White);
        let mut queue = VecDeque::from([face_of[0]]);
        while let Some(f) = queue.pop_front() {
            let here = color[f].unwrap();
            let there = match here {
                FaceColor::White => FaceColor::Black,
                FaceColor::Black => FaceColor::White,
            };
            for d in &faces[f] {
                let g = face_of[d.index() ^ 1];
                match color[g] {
                    None => {
                        color[g] = Some(there);
                        queue.push_back(g);
                    }
                    Some(c) if c != there => return Err(DivideError::NotCheckerboardColorable),
                    Some(_) => {}
                }
            }
        }
        if color.iter().any(|c| c.is_none()) {
            return Err(DivideError::Malformed("divide is not connected".into()));
        }

        // Swap the ends of every edge whose nominal right end is black.
        let flip: Vec<bool> = (0..m)
            .map(|e| color[face_of[Dart::right(e).index()]] == Some(FaceColor::Black))
            .collect();
        let normalize = |d: Dart| {
            if flip[d.edge] {
                Dart::from_index(d.index() ^ 1)
            } else {
                d
            }
        };
        let vertices: Vec<DivideVertex> = raw
            .vertices
            .iter()
            .map(|v| DivideVertex {
                darts: v.darts.iter().map(|&d| normalize(d)).collect(),
            })
            .collect();
        let faces: Vec<Face> = faces
            .into_iter()
            .enumerate()
            .map(|(f, darts)| Face {
                darts: darts.into_iter().map(normalize).collect(),
                color: color[f].unwrap(),
            })
            .collect();

        let mut divide = Divide {
            edges: m,
            vertices,
            faces,
            cone: BTreeMap::new(),
            east: Vec::new(),
            north: Vec::new(),
        };
        let sigma = divide.sigma();
        let target = |d: Dart| Dart::from_index(sigma[d.index()]).edge;
        divide.east = (0..m).map(|e| target(Dart::right(e))).collect();
        divide.north = (0..m).map(|e| target(Dart::left(e))).collect();

        for (key, &order) in &doc.cone {
            let f: usize = key.parse().map_err(|_| {
                DivideError::Malformed(format!("cone key {key:?} is not a face index"))
            })?;
            if f >= divide.faces.len() {
                return Err(DivideError::Malformed(format!(
                    "cone key {f} but the divide has {} faces",
                    divide.faces.len()
                )));
            }
            if order == 0 {
                return Err(DivideError::Malformed(format!("face {f} has cone order 0")));
            }
            if order >= 2 {
                divide.cone.insert(f, order);
            }
        }
        // Validates the Ba'cfi condition and the exponents.
        divide.to_surface()?;
        Ok(divide)
    }

    pub fn from_json(text: &str) -> Result<Self, DivideError> {
        let doc: DivideDocument =
            serde_json::from_str(text).map_err(|e| DivideError::Malformed(e.to_string()))?;
        Self::from_document(&doc)
    }

    pub fn to_document(&self) -> DivideDocument {
        DivideDocument {
            edges: self.edges,
            vertices: self
                .vertices
                .iter()
                .map(|v| {
                    let pairs = v.darts.iter().map(|d| d.to_pair()).collect();
                    if v.is_uturn() {
                        VertexDocument::Uturn(pairs)
                    } else {
                        VertexDocument::Cyclic(pairs)
                    }
                })
                .collect(),
            cone: self.cone.iter().map(|(f, o)| (f.to_string(), *o)).collect(),
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(&self.to_document()).expect("divide documents serialize")
    }

    /// The Ba'cfi surface: `E` moves to the next edge around a black face,
    /// `N` to the next edge around a white face, exponents are cone orders.
    pub fn to_surface(&self) -> Result<BacfiSurface, SurfaceError> {
        let mut h_exp = vec![1; self.edges];
        let mut v_exp = vec![1; self.edges];
        for (f, face) in self.faces.iter().enumerate() {
            let order = self.cone.get(&f).copied().unwrap_or(1);
            let target = match face.color {
                FaceColor::Black => &mut h_exp,
                FaceColor::White => &mut v_exp,
            };
            for d in &face.darts {
                target[d.edge] = order;
            }
        }
        BacfiSurface::new(self.east.clone(), self.north.clone(), h_exp, v_exp)
    }

    pub fn edges(&self) -> usize {
        self.edges
    }

    pub fn vertices(&self) -> &[DivideVertex] {
        &self.vertices
    }

    pub fn faces(&self) -> &[Face] {
        &self.faces
    }

    pub fn cone_order(&self, face: usize) -> u32 {
        self.cone.get(&face).copied().unwrap_or(1)
    }

    pub fn east(&self, e: usize) -> usize {
        self.east[e]
    }

    pub fn north(&self, e: usize) -> usize {
        self.north[e]
    }

    pub fn uturn_count(&self) -> usize {
        self.vertices.iter().filter(|v| v.is_uturn()).count()
    }

    /// Components of the divide as sets of edges. Curves go straight across
    /// crossings and turn back at U-turn vertices.
    pub fn components(&self) -> Vec<Vec<usize>> {
        let mut parent: Vec<usize> = (0..self.edges).collect();
        fn find(parent: &mut [usize], x: usize) -> usize {
            let mut r = x;
            while parent[r] != r {
                r = parent[r];
            }
            parent[x] = r;
            r
        }
        for v in self.vertices.iter().filter(|v| !v.is_uturn()) {
            for (a, b) in [(0, 2), (1, 3)] {
                let (x, y) = (
                    find(&mut parent, v.darts[a].edge),
                    find(&mut parent, v.darts[b].edge),
                );
                parent[x] = y;
            }
        }
        let mut groups: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
        for e in 0..self.edges {
            let r = find(&mut parent, e);
            groups.entry(r).or_default().push(e);
        }
        let mut out: Vec<Vec<usize>> = groups.into_values().collect();
        out.sort();
        out
    }

    pub fn stats(&self) -> DivideStats {
        let mut through_uturn = vec![false; self.edges];
        for v in self.vertices.iter().filter(|v| v.is_uturn()) {
            for d in &v.darts {
                through_uturn[d.edge] = true;
            }
        }
        let components = self.components();
        let d = components
            .iter()
            .filter(|c| c.iter().any(|&e| through_uturn[e]))
            .count();
        let c = components.len() - d;
        let d_gamma = self.vertices.len();
        DivideStats {
            d_gamma,
            components: components.len(),
            c,
            d,
            boundary_count: 2 * c + d,
            genus_formula: d_gamma + 1 - components.len(),
        }
    }

    /// A one-line-per-face table: index, color, size and cone order.
    pub fn face_table(&self) -> String {
        let mut out = String::new();
        for (i, f) in self.faces.iter().enumerate() {
            let color = match f.color {
                FaceColor::Black => "black",
                FaceColor::White => "white",
            };
            let darts: Vec<String> = f.darts.iter().map(|d| d.to_string()).collect();
            out.push_str(&format!(
                "{i}\t{color}\tsize {}\tcone {}\t{}\n",
                f.darts.len(),
                self.cone_order(i),
                darts.join(" ")
            ));
        }
        out
    }
}

/// Orbits of `sigma . alpha`, numbered in order of their first dart.
fn trace_faces(sigma: &[usize]) -> Vec<Vec<Dart>> {
    let mut seen = vec![false; sigma.len()];
    let mut faces = Vec::new();
    for start in 0..sigma.len() {
        if seen[start] {
            continue;
        }
        let mut face = Vec::new();
        let mut d = start;
        while !seen[d] {
            seen[d] = true;
            face.push(Dart::from_index(d));
            d = sigma[d ^ 1];
        }
        faces.push(face);
    }
    faces
}

pub fn surface_to_divide(s: &BacfiSurface) -> Divide {
    Divide::from_surface(s)
}

pub fn divide_stats(dv: &Divide) -> DivideStats {
    dv.stats()
}

pub fn divide_to_surface(doc: &DivideDocument) -> Result<BacfiSurface, DivideError> {
    Ok(Divide::from_document(doc)?.to_surface()?)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FaceProfile {
    pub color: FaceColor,
    pub size: usize,
    pub cone_order: u32,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Orbifold {
    pub genus: usize,
    /// Cone orders, sorted increasingly.
    pub cone_points: Vec<u32>,
    pub euler_char: i64,
    pub euler_orb: Rational64,
    pub hyperbolic: bool,
    pub face_profile: Vec<FaceProfile>,
    pub warnings: Vec<String>,
}

/// The base orbifold: the fat graph with a disc glued into every face, a cone
/// point of order equal to the exponent in each face with exponent at least
/// 2, and an order 2 cone point at each U-turn vertex.
pub fn divide_to_orbifold(s: &BacfiSurface) -> Orbifold {
    let dv = Divide::from_surface(s);
    let euler_char = dv.vertices.len() as i64 - dv.edges as i64 + dv.faces.len() as i64;
    let mut cone_points: Vec<u32> = (0..dv.faces.len())
        .map(|f| dv.cone_order(f))
        .filter(|&o| o >= 2)
        .collect();
    cone_points.extend(std::iter::repeat_n(2, dv.uturn_count()));
    cone_points.sort_unstable();
    let euler_orb = cone_points
        .iter()
        .fold(Rational64::from_integer(euler_char), |acc, &p| {
            acc - (Rational64::from_integer(1) - Rational64::new(1, p as i64))
        });
    let face_profile: Vec<FaceProfile> = dv
        .faces
        .iter()
        .enumerate()
        .map(|(i, f)| FaceProfile {
            color: f.color,
            size: f.darts.len(),
            cone_order: dv.cone_order(i),
        })
        .collect();
    let warnings = face_profile
        .iter()
        .enumerate()
        .filter(|(_, p)| p.size <= 2 && p.cone_order == 1)
        .map(|(i, p)| {
            let shape = if p.size == 1 { "monogon" } else { "bigon" };
            format!("face {i} is an embedded {shape} without a cone point")
        })
        .collect();
    Orbifold {
        genus: ((2 - euler_char) / 2) as usize,
        cone_points,
        euler_char,
        euler_orb,
        hyperbolic: euler_orb < Rational64::from_integer(0),
        face_profile,
        warnings,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::builtin;
    use crate::surface::CylinderKind;

    #[test]
    fn example2_divide() {
        let s = builtin::example2();
        let dv = Divide::from_surface(&s);
        assert_eq!(dv.vertices().len(), 6);
        assert_eq!(dv.edges(), 12);
        assert_eq!(dv.faces().len(), 4);
        let black: Vec<usize> = dv
            .faces()
            .iter()
            .filter(|f| f.color == FaceColor::Black)
            .map(|f| f.darts.len())
            .collect();
        assert_eq!(black, vec![6, 6]);
        let st = dv.stats();
        assert_eq!(
            (
                st.d_gamma,
                st.components,
                st.c,
                st.d,
                st.boundary_count,
                st.genus_formula
            ),
            (6, 6, 6, 0, 12, 1)
        );
    }

    #[test]
    fn example4_divide() {
        let s = builtin::example4(3, 7).unwrap();
        let dv = Divide::from_surface(&s);
        assert_eq!(dv.vertices().len(), 2);
        assert_eq!(dv.uturn_count(), 1);
        let st = dv.stats();
        assert_eq!(
            (
                st.d_gamma,
                st.components,
                st.c,
                st.d,
                st.boundary_count,
                st.genus_formula
            ),
            (2, 1, 0, 1, 1, 2)
        );
    }

    #[test]
    fn one_square_divide() {
        let s = builtin::example3(3, 7).unwrap();
        let dv = Divide::from_surface(&s);
        assert_eq!(dv.vertices().len(), 1);
        assert_eq!(dv.vertices()[0].darts, vec![Dart::right(0), Dart::left(0)]);
        let st = dv.stats();
        assert_eq!(
            (st.d_gamma, st.components, st.d, st.genus_formula),
            (1, 1, 1, 1)
        );
    }

    #[test]
    fn orbifolds() {
        let o = divide_to_orbifold(&builtin::example3(3, 7).unwrap());
        assert_eq!(o.genus, 0);
        assert_eq!(o.cone_points, vec![2, 3, 7]);
        assert_eq!(o.euler_orb, Rational64::new(-1, 42));
        assert!(o.hyperbolic);

        let o = divide_to_orbifold(&builtin::example1(2, 2, 2, 2).unwrap());
        assert_eq!((o.genus, o.cone_points.clone()), (0, vec![2, 2, 2, 2]));
        assert_eq!(o.euler_orb, Rational64::from_integer(0));
        assert!(!o.hyperbolic);
        assert_eq!(o.warnings.len(), 0);

        let o = divide_to_orbifold(&builtin::example2());
        assert_eq!(o.genus, 2);
        assert!(o.cone_points.is_empty());
        assert!(o.hyperbolic);
    }

    #[test]
    fn bigon_warning() {
        let o = divide_to_orbifold(&builtin::example4(3, 7).unwrap());
        // the horizontal cylinder {a, b} has exponent 3, so no warning there
        assert!(o.warnings.is_empty(), "{:?}", o.warnings);
        let s = crate::surface::BacfiSurface::new(
            vec![1, 0, 3, 2],
            vec![2, 3, 0, 1],
            vec![1, 1, 2, 2],
            vec![2, 2, 2, 2],
        )
        .unwrap();
        let o = divide_to_orbifold(&s);
        assert_eq!(o.warnings.len(), 1);
    }

    #[test]
    fn round_trip_is_exact_on_gallery() {
        for s in builtin::gallery() {
            let dv = Divide::from_surface(&s);
            let back = Divide::from_json(&dv.to_json()).unwrap();
            assert_eq!(back, dv);
            assert_eq!(back.to_surface().unwrap(), s);
            let st = dv.stats();
            assert_eq!(st.genus_formula, s.genus_from_euler());
            assert_eq!(st.boundary_count, s.vertex_classes().len());
            let cylinders = s.cylinders(CylinderKind::Horizontal).len()
                + s.cylinders(CylinderKind::Vertical).len();
            assert_eq!(dv.faces().len(), cylinders);
        }
    }

    #[test]
    fn renamed_ends_give_the_transposed_surface() {
        // End [0, 0] always bounds a white face, so renaming the two ends of
        // every edge swaps the roles of east and north.
        for s in [builtin::example2(), builtin::two_row(5, 1).unwrap()] {
            let mut doc = Divide::from_surface(&s).to_document();
            assert!(doc.cone.is_empty());
            for v in &mut doc.vertices {
                let (VertexDocument::Cyclic(pairs) | VertexDocument::Uturn(pairs)) = v;
                for pair in pairs.iter_mut() {
                    pair[1] ^= 1;
                }
            }
            let n = s.len();
            let transposed = BacfiSurface::new(
                s.north_perm().to_vec(),
                s.east_perm().to_vec(),
                vec![1; n],
                vec![1; n],
            )
            .unwrap();
            assert_eq!(divide_to_surface(&doc).unwrap(), transposed);
        }
    }

    #[test]
    fn non_colorable_map() {
        // one vertex, two loops with interleaved ends: a single face
        let doc = DivideDocument {
            edges: 2,
            vertices: vec![VertexDocument::Cyclic(vec![[0, 0], [1, 0], [0, 1], [1, 1]])],
            cone: BTreeMap::new(),
        };
        assert_eq!(
            Divide::from_document(&doc).unwrap_err(),
            DivideError::NotCheckerboardColorable
        );
    }

    #[test]
    fn malformed_documents() {
        let three = DivideDocument {
            edges: 2,
            vertices: vec![VertexDocument::Cyclic(vec![[0, 0], [1, 0], [0, 1]])],
            cone: BTreeMap::new(),
        };
        assert_eq!(
            Divide::from_document(&three).unwrap_err(),
            DivideError::NotFourValent {
                vertex: 0,
                valence: 3
            }
        );
        let twice = DivideDocument {
            edges: 1,
            vertices: vec![VertexDocument::Uturn(vec![[0, 0], [0, 0]])],
            cone: BTreeMap::new(),
        };
        assert!(matches!(
            Divide::from_document(&twice),
            Err(DivideError::Malformed(_))
        ));
        let mut doc = Divide::from_surface(&builtin::example2()).to_document();
        doc.cone.insert("17".into(), 3);
        assert!(matches!(
            Divide::from_document(&doc),
            Err(DivideError::Malformed(_))
        ));
        // a width-one cylinder needs a cone point
        let mut doc = Divide::from_surface(&builtin::example3(3, 7).unwrap()).to_document();
        doc.cone.clear();
        assert!(matches!(
            Divide::from_document(&doc),
            Err(DivideError::Surface(SurfaceError::ExponentTooSmall { .. }))
        ));
    }
}
