//! Ba'cfi-tiled surfaces as pairs of permutations.
//!
//! A square-tiled surface with `n` squares is encoded by its east and north
//! neighbour permutations on `0..n`. It is Ba'cfi-tiled when walking
//! north-east twice returns to the starting square. Each square additionally
//! carries the exponent of the horizontal and vertical antitwist on the
//! cylinder through it.

use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SurfaceError {
    #[error("malformed surface document: {0}")]
    MalformedDocument(String),
    #[error("`{field}` is not a permutation of 0..{n}: {detail}")]
    NotAPermutation {
        field: &'static str,
        n: usize,
        detail: String,
    },
    #[error("Ba'cfi condition fails at square {square}: NENE({square}) = {image}")]
    BacfiViolation { square: usize, image: usize },
    #[error("squares do not form a connected surface ({reached} of {n} reachable from square 0)")]
    NotConnected { reached: usize, n: usize },
    #[error("{kind} exponent is not constant on the cylinder through square {square}")]
    ExponentNotCylinderConstant { kind: CylinderKind, square: usize },
    #[error(
        "{kind} cylinder through square {square} has exponent {exponent} and width {width}; \
         exponent * width must be at least 2"
    )]
    ExponentTooSmall {
        kind: CylinderKind,
        square: usize,
        exponent: u32,
        width: usize,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum CylinderKind {
    Horizontal,
    Vertical,
}

impl fmt::Display for CylinderKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CylinderKind::Horizontal => f.write_str("horizontal"),
            CylinderKind::Vertical => f.write_str("vertical"),
        }
    }
}

/// An east-orbit (horizontal) or north-orbit (vertical) of squares, listed
/// in cyclic order starting from its smallest square.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Cylinder {
    pub kind: CylinderKind,
    pub squares: Vec<usize>,
    pub exponent: u32,
}

impl Cylinder {
    pub fn width(&self) -> usize {
        self.squares.len()
    }

    /// Shear factor `exponent * width - 2` of the antitwist on this cylinder.
    pub fn shear(&self) -> usize {
        self.exponent as usize * self.width() - 2
    }
}

/// A vertex of the square tiling, given by the squares whose south-west
/// corner it is, in the order visited by `rho = N E S W`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VertexClass {
    pub corner_squares: Vec<usize>,
}

impl VertexClass {
    /// Total angle at the vertex, in full turns.
    pub fn cone_angle_turns(&self) -> usize {
        self.corner_squares.len()
    }
}

/// The JSON surface document.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SurfaceDocument {
    pub squares: usize,
    pub east: Vec<usize>,
    pub north: Vec<usize>,
    pub h_exp: Vec<u32>,
    pub v_exp: Vec<u32>,
}

/// A validated Ba'cfi-tiled surface together with antitwist exponents.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BacfiSurface {
    east: Vec<usize>,
    north: Vec<usize>,
    west: Vec<usize>,
    south: Vec<usize>,
    h_exp: Vec<u32>,
    v_exp: Vec<u32>,
}

fn invert(field: &'static str, perm: &[usize]) -> Result<Vec<usize>, SurfaceError> {
    let n = perm.len();
    let mut inv = vec![usize::MAX; n];
    for (i, &p) in perm.iter().enumerate() {
        if p >= n {
            return Err(SurfaceError::NotAPermutation {
                field,
                n,
                detail: format!("entry {p} at position {i} is out of range"),
            });
        }
        if inv[p] != usize::MAX {
            return Err(SurfaceError::NotAPermutation {
                field,
                n,
                detail: format!("value {p} appears twice"),
            });
        }
        inv[p] = i;
    }
    Ok(inv)
}

/// Cycles of a permutation, each starting at its minimal element, ordered by
/// that element.
pub(crate) fn cycles(perm: &[usize]) -> Vec<Vec<usize>> {
    let mut seen = vec![false; perm.len()];
    let mut out = Vec::new();
    for start in 0..perm.len() {
        if seen[start] {
            continue;
        }
        let mut cycle = Vec::new();
        let mut q = start;
        while !seen[q] {
            seen[q] = true;
            cycle.push(q);
            q = perm[q];
        }
        out.push(cycle);
    }
    out
}

impl BacfiSurface {
    pub fn new(
        east: Vec<usize>,
        north: Vec<usize>,
        h_exp: Vec<u32>,
        v_exp: Vec<u32>,
    ) -> Result<Self, SurfaceError> {
        let n = east.len();
        if n == 0 {
            return Err(SurfaceError::MalformedDocument(
                "a surface needs at least one square".into(),
            ));
        }
        for (name, len) in [
            ("north", north.len()),
            ("h_exp", h_exp.len()),
            ("v_exp", v_exp.len()),
        ] {
            if len != n {
                return Err(SurfaceError::MalformedDocument(format!(
                    "`{name}` has length {len}, expected {n}"
                )));
            }
        }
        let west = invert("east", &east)?;
        let south = invert("north", &north)?;
        let surface = BacfiSurface {
            east,
            north,
            west,
            south,
            h_exp,
            v_exp,
        };
        surface.check_bacfi()?;
        surface.check_connected()?;
        surface.check_exponents(CylinderKind::Horizontal)?;
        surface.check_exponents(CylinderKind::Vertical)?;
        Ok(surface)
    }

    fn check_bacfi(&self) -> Result<(), SurfaceError> {
        for q in 0..self.len() {
            let image = self.ne(self.ne(q));
            if image != q {
                return Err(SurfaceError::BacfiViolation { square: q, image });
            }
        }
        Ok(())
    }

    fn check_connected(&self) -> Result<(), SurfaceError> {
        let n = self.len();
        let mut seen = vec![false; n];
        let mut stack = vec![0];
        seen[0] = true;
        let mut reached = 1;
        while let Some(q) = stack.pop() {
            for next in [self.east[q], self.north[q], self.west[q], self.south[q]] {
                if !seen[next] {
                    seen[next] = true;
                    reached += 1;
                    stack.push(next);
                }
            }
        }
        if reached == n {
            Ok(())
        } else {
            Err(SurfaceError::NotConnected { reached, n })
        }
    }

    fn check_exponents(&self, kind: CylinderKind) -> Result<(), SurfaceError> {
        let (perm, exps) = match kind {
            CylinderKind::Horizontal => (&self.east, &self.h_exp),
            CylinderKind::Vertical => (&self.north, &self.v_exp),
        };
        for cycle in cycles(perm) {
            let exponent = exps[cycle[0]];
            if let Some(&square) = cycle.iter().find(|&&q| exps[q] != exponent) {
                return Err(SurfaceError::ExponentNotCylinderConstant { kind, square });
            }
            if (exponent as usize).saturating_mul(cycle.len()) < 2 {
                return Err(SurfaceError::ExponentTooSmall {
                    kind,
                    square: cycle[0],
                    exponent,
                    width: cycle.len(),
                });
            }
        }
        Ok(())
    }

    pub fn from_document(doc: SurfaceDocument) -> Result<Self, SurfaceError> {
        if doc.east.len() != doc.squares {
            return Err(SurfaceError::MalformedDocument(format!(
                "`squares` is {} but `east` has length {}",
                doc.squares,
                doc.east.len()
            )));
        }
        Self::new(doc.east, doc.north, doc.h_exp, doc.v_exp)
    }

    /// Parses and validates a surface document.
    pub fn from_json(text: &str) -> Result<Self, SurfaceError> {
        let doc: SurfaceDocument = serde_json::from_str(text)
            .map_err(|e| SurfaceError::MalformedDocument(e.to_string()))?;
        Self::from_document(doc)
    }

    pub fn to_document(&self) -> SurfaceDocument {
        SurfaceDocument {
            squares: self.len(),
            east: self.east.clone(),
            north: self.north.clone(),
            h_exp: self.h_exp.clone(),
            v_exp: self.v_exp.clone(),
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(&self.to_document()).expect("surface documents always serialize")
    }

    pub fn len(&self) -> usize {
        self.east.len()
    }

    pub fn is_empty(&self) -> bool {
        self.east.is_empty()
    }

    pub fn east(&self, q: usize) -> usize {
        self.east[q]
    }

    pub fn north(&self, q: usize) -> usize {
        self.north[q]
    }

    pub fn west(&self, q: usize) -> usize {
        self.west[q]
    }

    pub fn south(&self, q: usize) -> usize {
        self.south[q]
    }

    /// North neighbour of the east neighbour. An involution on Ba'cfi surfaces.
    pub fn ne(&self, q: usize) -> usize {
        self.north[self.east[q]]
    }

    /// East neighbour of the north neighbour. Also an involution.
    pub fn en(&self, q: usize) -> usize {
        self.east[self.north[q]]
    }

    /// Rotation around the south-west corner: `N(E(S(W(q))))`.
    pub fn rho(&self, q: usize) -> usize {
        self.north[self.east[self.south[self.west[q]]]]
    }

    pub fn h_exp(&self, q: usize) -> u32 {
        self.h_exp[q]
    }

    pub fn v_exp(&self, q: usize) -> u32 {
        self.v_exp[q]
    }

    pub fn east_perm(&self) -> &[usize] {
        &self.east
    }

    pub fn north_perm(&self) -> &[usize] {
        &self.north
    }

    /// True when both surfaces have the same squares and neighbour maps,
    /// regardless of exponents.
    pub fn same_tiling(&self, other: &BacfiSurface) -> bool {
        self.east == other.east && self.north == other.north
    }

    pub fn cylinders(&self, kind: CylinderKind) -> Vec<Cylinder> {
        let (perm, exps) = match kind {
            CylinderKind::Horizontal => (&self.east, &self.h_exp),
            CylinderKind::Vertical => (&self.north, &self.v_exp),
        };
        cycles(perm)
            .into_iter()
            .map(|squares| Cylinder {
                kind,
                exponent: exps[squares[0]],
                squares,
            })
            .collect()
    }

    /// The cylinder of the given kind through `q`.
    pub fn cylinder_of(&self, kind: CylinderKind, q: usize) -> Cylinder {
        let perm = match kind {
            CylinderKind::Horizontal => &self.east,
            CylinderKind::Vertical => &self.north,
        };
        let mut squares = vec![q];
        let mut x = perm[q];
        while x != q {
            squares.push(x);
            x = perm[x];
        }
        let exponent = match kind {
            CylinderKind::Horizontal => self.h_exp[q],
            CylinderKind::Vertical => self.v_exp[q],
        };
        Cylinder {
            kind,
            squares,
            exponent,
        }
    }

    pub fn vertex_classes(&self) -> Vec<VertexClass> {
        let rho: Vec<usize> = (0..self.len()).map(|q| self.rho(q)).collect();
        cycles(&rho)
            .into_iter()
            .map(|corner_squares| VertexClass { corner_squares })
            .collect()
    }

    /// For every square, the index (into [`Self::vertex_classes`]) of the
    /// vertex at its south-west corner.
    pub fn vertex_index(&self) -> Vec<usize> {
        let mut index = vec![0; self.len()];
        for (i, class) in self.vertex_classes().iter().enumerate() {
            for &q in &class.corner_squares {
                index[q] = i;
            }
        }
        index
    }

    /// Genus of the closed surface obtained by filling in the vertices:
    /// `2 - 2g = V - 2n + n`.
    pub fn genus_from_euler(&self) -> usize {
        let v = self.vertex_classes().len();
        // V - n = 2 - 2g and V <= n always holds (each class is nonempty),
        // so the numerator is even and positive.
        (2 + self.len() - v) / 2
    }

    /// Squares fixed by `NE`; these correspond to U-turn points of the divide.
    pub fn ne_fixed_points(&self) -> Vec<usize> {
        (0..self.len()).filter(|&q| self.ne(q) == q).collect()
    }

    /// Renames square `q` to `perm[q]`.
    pub fn relabel(&self, perm: &[usize]) -> Result<BacfiSurface, SurfaceError> {
        let n = self.len();
        invert("relabeling", perm)?;
        if perm.len() != n {
            return Err(SurfaceError::MalformedDocument(
                "relabeling has the wrong length".into(),
            ));
        }
        let mut east = vec![0; n];
        let mut north = vec![0; n];
        let mut h_exp = vec![0; n];
        let mut v_exp = vec![0; n];
        for q in 0..n {
            east[perm[q]] = perm[self.east[q]];
            north[perm[q]] = perm[self.north[q]];
            h_exp[perm[q]] = self.h_exp[q];
            v_exp[perm[q]] = self.v_exp[q];
        }
        BacfiSurface::new(east, north, h_exp, v_exp)
    }

    /// Finds a relabeling `phi` with `phi(E q) = E'(phi q)`, `phi(N q) = N'(phi q)`
    /// and matching exponents. Since the surfaces are connected, the image of
    /// square 0 determines everything, so this tries each candidate once.
    pub fn isomorphism_to(&self, other: &BacfiSurface) -> Option<Vec<usize>> {
        let n = self.len();
        if other.len() != n {
            return None;
        }
        'candidate: for target in 0..n {
            let mut phi = vec![usize::MAX; n];
            phi[0] = target;
            let mut stack = vec![0];
            while let Some(q) = stack.pop() {
                let p = phi[q];
                if self.h_exp[q] != other.h_exp[p] || self.v_exp[q] != other.v_exp[p] {
                    continue 'candidate;
                }
                for (a, b) in [
                    (self.east[q], other.east[p]),
                    (self.north[q], other.north[p]),
                    (self.west[q], other.west[p]),
                    (self.south[q], other.south[p]),
                ] {
                    if phi[a] == usize::MAX {
                        phi[a] = b;
                        stack.push(a);
                    } else if phi[a] != b {
                        continue 'candidate;
                    }
                }
            }
            if invert("isomorphism", &phi).is_ok() {
                return Some(phi);
            }
        }
        None
    }

    pub fn is_isomorphic(&self, other: &BacfiSurface) -> bool {
        self.isomorphism_to(other).is_some()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::builtin;

    #[test]
    fn one_square_is_valid() {
        let s = BacfiSurface::new(vec![0], vec![0], vec![3], vec![7]).unwrap();
        assert_eq!(s.len(), 1);
        assert_eq!(s.genus_from_euler(), 1);
        assert_eq!(s.vertex_classes().len(), 1);
        assert_eq!(s.cylinders(CylinderKind::Horizontal).len(), 1);
        assert_eq!(s.cylinders(CylinderKind::Vertical)[0].width(), 1);
    }

    #[test]
    fn exponent_one_on_width_one_is_rejected() {
        let err = BacfiSurface::new(vec![0], vec![0], vec![1], vec![7]).unwrap_err();
        assert!(matches!(
            err,
            SurfaceError::ExponentTooSmall {
                kind: CylinderKind::Horizontal,
                exponent: 1,
                width: 1,
                ..
            }
        ));
    }

    #[test]
    fn two_squares_with_trivial_north() {
        // NENE(0) = N E N E (0) = N E N (1) = N E (1) = N(0) = 0.
        let s = BacfiSurface::new(vec![1, 0], vec![0, 1], vec![1, 1], vec![2, 2]).unwrap();
        assert_eq!(s.ne(0), 1);
        assert_eq!(s.ne(1), 0);
    }

    #[test]
    fn bacfi_violation_reports_witness() {
        // A 3x1 horizontal strip: NENE(q) = q + 2 mod 3.
        let err =
            BacfiSurface::new(vec![1, 2, 0], vec![0, 1, 2], vec![1; 3], vec![2; 3]).unwrap_err();
        assert_eq!(
            err,
            SurfaceError::BacfiViolation {
                square: 0,
                image: 2
            }
        );
    }

    #[test]
    fn malformed_inputs() {
        assert!(matches!(
            BacfiSurface::from_json("{\"squares\": 1}"),
            Err(SurfaceError::MalformedDocument(_))
        ));
        assert!(matches!(
            BacfiSurface::from_json(
                r#"{"squares":2,"east":[0,0],"north":[0,1],"h_exp":[2,2],"v_exp":[2,2]}"#
            ),
            Err(SurfaceError::NotAPermutation { field: "east", .. })
        ));
        assert!(matches!(
            BacfiSurface::from_json(
                r#"{"squares":3,"east":[0,1],"north":[0,1],"h_exp":[2,2],"v_exp":[2,2]}"#
            ),
            Err(SurfaceError::MalformedDocument(_))
        ));
    }

    #[test]
    fn disconnected_is_rejected() {
        let err = BacfiSurface::new(vec![0, 1], vec![0, 1], vec![2, 2], vec![2, 2]).unwrap_err();
        assert_eq!(err, SurfaceError::NotConnected { reached: 1, n: 2 });
    }

    #[test]
    fn exponent_must_be_cylinder_constant() {
        let err = BacfiSurface::new(vec![1, 0], vec![0, 1], vec![1, 2], vec![2, 2]).unwrap_err();
        assert!(matches!(
            err,
            SurfaceError::ExponentNotCylinderConstant {
                kind: CylinderKind::Horizontal,
                square: 1
            }
        ));
    }

    #[test]
    fn example2_cylinders_and_vertices() {
        let s = builtin::example2();
        let h = s.cylinders(CylinderKind::Horizontal);
        assert_eq!(h.len(), 2);
        assert!(h.iter().all(|c| c.width() == 6 && c.shear() == 4));
        let v = s.cylinders(CylinderKind::Vertical);
        assert_eq!(v.len(), 2);
        assert!(v.iter().all(|c| c.width() == 6));
        let classes = s.vertex_classes();
        assert_eq!(classes.len(), 12);
        assert!(classes.iter().all(|c| c.cone_angle_turns() == 1));
        assert_eq!(s.genus_from_euler(), 1);
    }

    #[test]
    fn example4_cylinders_and_vertices() {
        let s = builtin::example4(3, 7).unwrap();
        let h = s.cylinders(CylinderKind::Horizontal);
        assert_eq!(
            h.iter().map(|c| c.squares.clone()).collect::<Vec<_>>(),
            vec![vec![0, 1], vec![2]]
        );
        let v = s.cylinders(CylinderKind::Vertical);
        assert_eq!(v.len(), 1);
        assert_eq!(v[0].width(), 3);
        let classes = s.vertex_classes();
        assert_eq!(classes.len(), 1);
        assert_eq!(classes[0].cone_angle_turns(), 3);
        assert_eq!(s.genus_from_euler(), 2);
        assert_eq!(s.ne_fixed_points(), vec![1]);
    }

    #[test]
    fn all_four_bacfi_forms_agree_on_examples() {
        for s in builtin::gallery() {
            for q in 0..s.len() {
                assert_eq!(s.ne(s.ne(q)), q);
                assert_eq!(s.en(s.en(q)), q);
                assert_eq!(s.south(s.west(s.south(s.west(q)))), q);
                assert_eq!(s.west(s.south(s.west(s.south(q)))), q);
            }
        }
    }

    #[test]
    fn json_round_trip() {
        for s in builtin::gallery() {
            let text = s.to_json();
            let back = BacfiSurface::from_json(&text).unwrap();
            assert_eq!(back, s);
            assert_eq!(back.to_json(), text);
        }
    }

    #[test]
    fn relabeled_surfaces_are_isomorphic() {
        let s = builtin::pingpong(2, 3, 5).unwrap();
        let perm: Vec<usize> = (0..s.len()).rev().collect();
        let t = s.relabel(&perm).unwrap();
        let phi = s.isomorphism_to(&t).unwrap();
        assert_eq!(s.relabel(&phi).unwrap(), t);
        let u = builtin::pingpong(2, 3, 6).unwrap();
        assert!(!s.is_isomorphic(&u));
    }

    #[test]
    fn example4_north_choices_are_isomorphic() {
        let a = builtin::example4(3, 7).unwrap();
        let b =
            BacfiSurface::new(vec![1, 0, 2], vec![2, 0, 1], vec![3, 3, 7], vec![1, 1, 1]).unwrap();
        assert!(a.is_isomorphic(&b));
        assert!(a.is_isomorphic(&builtin::pingpong(1, 3, 7).unwrap()));
    }
}
