//! The three-colored train track of a divide and the stretch factor
//! certificate for divides whose faces all have at least five sides.
//!
//! Each divide edge `e` gets two vertices `v_l(e)`, `v_r(e)` joined by a red
//! edge. Every corner of a white face, between the left end of `e` and the
//! right end of `N e`, gives a green edge `v_l(e) - v_r(N e)`; every corner of
//! a black face, between the right end of `e` and the left end of `E e`,
//! gives a blue edge `v_r(e) - v_l(E e)`.

use num_rational::Rational64;
use serde::Serialize;
use thiserror::Error;

use crate::divide::Divide;
use crate::surface::{BacfiSurface, CylinderKind};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum TrainTrackError {
    #[error("the divide passes through {count} U-turn point(s); the train track needs none")]
    UTurnUnsupported { count: usize },
    #[error("type matrix entries must be nonnegative")]
    NegativeTypeMatrix,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum TrackColor {
    Red,
    Green,
    Blue,
}

pub const TYPES: [TrackColor; 3] = [TrackColor::Red, TrackColor::Green, TrackColor::Blue];

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct TrackEdge {
    pub color: TrackColor,
    /// The divide edge the track edge is attached to.
    pub divide_edge: usize,
    pub ends: (usize, usize),
}

#[derive(Debug, Clone)]
pub struct TrainTrack {
    pub vertex_count: usize,
    pub edges: Vec<TrackEdge>,
}

pub fn v_left(e: usize) -> usize {
    2 * e
}

pub fn v_right(e: usize) -> usize {
    2 * e + 1
}

impl TrainTrack {
    pub fn count(&self, color: TrackColor) -> usize {
        self.edges.iter().filter(|e| e.color == color).count()
    }

    pub fn degrees(&self) -> Vec<usize> {
        let mut deg = vec![0; self.vertex_count];
        for e in &self.edges {
            deg[e.ends.0] += 1;
            deg[e.ends.1] += 1;
        }
        deg
    }
}

pub fn build_train_track(dv: &Divide) -> Result<TrainTrack, TrainTrackError> {
    let count = dv.uturn_count();
    if count > 0 {
        return Err(TrainTrackError::UTurnUnsupported { count });
    }
    let n = dv.edges();
    let mut edges = Vec::with_capacity(3 * n);
    for e in 0..n {
        edges.push(TrackEdge {
            color: TrackColor::Red,
            divide_edge: e,
            ends: (v_left(e), v_right(e)),
        });
        edges.push(TrackEdge {
            color: TrackColor::Green,
            divide_edge: e,
            ends: (v_left(e), v_right(dv.north(e))),
        });
        edges.push(TrackEdge {
            color: TrackColor::Blue,
            divide_edge: e,
            ends: (v_right(e), v_left(dv.east(e))),
        });
    }
    Ok(TrainTrack {
        vertex_count: 2 * n,
        edges,
    })
}

/// `A[i][j]`: how many track edges of type `i` the image of a type `j` edge
/// crosses at least, under one antitwist. Types are ordered red, green,
/// blue. A red edge covers two red and three green edges, a green edge one
/// blue edge, a blue edge one red and two green edges.
pub const LOWER_BOUND_TYPE_MATRIX: [[i64; 3]; 3] = [[2, 0, 1], [3, 0, 2], [0, 1, 0]];

/// Weights of the covering functional, in type order.
pub const WEIGHTS: [i64; 3] = [1, 2, 1];

pub const MIN_WIDTH: usize = 5;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CylinderWidths {
    pub horizontal: Vec<usize>,
    pub vertical: Vec<usize>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct ConeCertificate {
    pub applicable: bool,
    pub reasons: Vec<String>,
    pub widths: CylinderWidths,
    pub type_matrix: [[i64; 3]; 3],
    pub composite: [[i64; 3]; 3],
    /// `(w^T composite e_t) / w_t` for each type `t`.
    pub ratios: [Rational64; 3],
    pub min_ratio: Rational64,
    pub min_type: TrackColor,
    pub pf_estimate: f64,
    pub verdict: Option<String>,
}

fn square(a: &[[i64; 3]; 3]) -> [[i64; 3]; 3] {
    let mut out = [[0; 3]; 3];
    for i in 0..3 {
        for j in 0..3 {
            out[i][j] = (0..3).map(|k| a[i][k] * a[k][j]).sum();
        }
    }
    out
}

/// Dominant eigenvalue estimate of a nonnegative matrix by power iteration.
pub fn power_iteration(a: &[[i64; 3]; 3], iterations: usize) -> f64 {
    let mut v = [1.0f64; 3];
    let mut lambda = 0.0;
    for _ in 0..iterations {
        let mut next = [0.0; 3];
        for (i, x) in next.iter_mut().enumerate() {
            *x = (0..3).map(|k| a[i][k] as f64 * v[k]).sum();
        }
        let norm = next.iter().map(|x| x.abs()).fold(0.0, f64::max);
        if norm == 0.0 {
            return 0.0;
        }
        lambda = norm / v.iter().map(|x| x.abs()).fold(0.0, f64::max);
        v = next.map(|x| x / norm);
    }
    lambda
}

pub fn cone_certificate(s: &BacfiSurface) -> ConeCertificate {
    cone_certificate_with(s, &LOWER_BOUND_TYPE_MATRIX).expect("the built-in table is nonnegative")
}

/// The certificate with a caller supplied type matrix, for example exact
/// transition counts of a specific map.
pub fn cone_certificate_with(
    s: &BacfiSurface,
    type_matrix: &[[i64; 3]; 3],
) -> Result<ConeCertificate, TrainTrackError> {
    if type_matrix.iter().flatten().any(|&x| x < 0) {
        return Err(TrainTrackError::NegativeTypeMatrix);
    }
    let widths = CylinderWidths {
        horizontal: s
            .cylinders(CylinderKind::Horizontal)
            .iter()
            .map(|c| c.width())
            .collect(),
        vertical: s
            .cylinders(CylinderKind::Vertical)
            .iter()
            .map(|c| c.width())
            .collect(),
    };
    let mut reasons = Vec::new();
    for (kind, list) in [
        ("horizontal", &widths.horizontal),
        ("vertical", &widths.vertical),
    ] {
        if let Some(w) = list.iter().copied().filter(|&w| w < MIN_WIDTH).min() {
            reasons.push(format!("a {kind} cylinder has width {w} < {MIN_WIDTH}"));
        }
    }
    let uturns = s.ne_fixed_points().len();
    if uturns > 0 {
        reasons.push(format!("the divide has {uturns} U-turn point(s)"));
    }
    let applicable = reasons.is_empty();

    let composite = square(type_matrix);
    let ratios = [0, 1, 2].map(|t| {
        let covered: i64 = (0..3).map(|i| WEIGHTS[i] * composite[i][t]).sum();
        Rational64::new(covered, WEIGHTS[t])
    });
    let (min_index, min_ratio) = ratios
        .iter()
        .copied()
        .enumerate()
        .min_by(|a, b| a.1.cmp(&b.1))
        .unwrap();
    let verdict = (applicable && min_ratio >= Rational64::new(5, 2))
        .then(|| "pseudo-Anosov, λ ≥ 5/2".to_string());
    Ok(ConeCertificate {
        applicable,
        reasons,
        widths,
        type_matrix: *type_matrix,
        composite,
        ratios,
        min_ratio,
        min_type: TYPES[min_index],
        pf_estimate: power_iteration(&composite, 200),
        verdict,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::builtin;

    #[test]
    fn track_counts() {
        for (s, n) in [
            (builtin::example2(), 12),
            (builtin::pingpong(3, 6, 16).unwrap(), 11),
        ] {
            let dv = Divide::from_surface(&s);
            if s.ne_fixed_points().is_empty() {
                let t = build_train_track(&dv).unwrap();
                assert_eq!(t.vertex_count, 2 * n);
                for c in TYPES {
                    assert_eq!(t.count(c), n);
                }
                assert!(t.degrees().iter().all(|&d| d == 3));
            } else {
                assert!(build_train_track(&dv).is_err());
            }
        }
        let dv = Divide::from_surface(&builtin::example4(3, 7).unwrap());
        assert_eq!(
            build_train_track(&dv).unwrap_err(),
            TrainTrackError::UTurnUnsupported { count: 1 }
        );
    }

    #[test]
    fn each_vertex_meets_every_color() {
        let dv = Divide::from_surface(&builtin::example2());
        let t = build_train_track(&dv).unwrap();
        let mut seen = vec![Vec::new(); t.vertex_count];
        for e in &t.edges {
            seen[e.ends.0].push(e.color);
            seen[e.ends.1].push(e.color);
        }
        for mut colors in seen {
            colors.sort();
            assert_eq!(colors, TYPES.to_vec());
        }
    }

    #[test]
    fn lower_bound_certificate() {
        let c = cone_certificate(&builtin::two_row(5, 1).unwrap());
        assert!(c.applicable);
        assert_eq!(c.composite, [[4, 1, 2], [6, 2, 3], [3, 0, 2]]);
        assert_eq!(
            c.ratios,
            [
                Rational64::from_integer(19),
                Rational64::new(5, 2),
                Rational64::from_integer(10)
            ]
        );
        assert_eq!(c.min_type, TrackColor::Green);
        assert_eq!(c.min_ratio, Rational64::new(5, 2));
        assert_eq!(c.verdict.as_deref(), Some("pseudo-Anosov, λ ≥ 5/2"));
        // ((3 + sqrt 5) / 2)^2
        let expected = (7.0 + 3.0 * 5f64.sqrt()) / 2.0;
        assert!((c.pf_estimate - expected).abs() < 1e-9);
    }

    #[test]
    fn inapplicable_cases() {
        let c = cone_certificate(&builtin::example3(3, 7).unwrap());
        assert!(!c.applicable);
        assert!(c.verdict.is_none());
        assert_eq!(c.reasons.len(), 3);
        assert!(!cone_certificate(&builtin::example4(3, 7).unwrap()).applicable);
        assert!(cone_certificate(&builtin::example2()).applicable);
    }

    #[test]
    fn negative_table_is_rejected() {
        let s = builtin::two_row(5, 1).unwrap();
        let bad = [[2, 0, 1], [3, -1, 2], [0, 1, 0]];
        assert_eq!(
            cone_certificate_with(&s, &bad).unwrap_err(),
            TrainTrackError::NegativeTypeMatrix
        );
    }
}
