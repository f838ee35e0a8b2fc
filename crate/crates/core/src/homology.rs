//! Cellular homology of the square complex and the action of chain maps on
//! `H_1`.
//!
//! Cycles are coordinatized by their coefficients on the edges outside a
//! spanning tree of the 1-skeleton. Square boundaries in those coordinates are
//! brought to echelon form by a unimodular transform `U`; the last rows of
//! `U z` are then coordinates of the class of `z` in `H_1`.

use std::collections::VecDeque;

use num_bigint::BigInt;
use thiserror::Error;

use crate::algebra::poly::IntPolynomial;
use crate::algebra::sl2::{self, Mat2, XYWord};
use crate::algebra::AlgebraError;
use crate::antitwist::{monodromy, CellularChainMap, Chain, ChainMapError, Edge};
use crate::linalg::{row_echelon, IntMatrix, LinalgError};
use crate::surface::BacfiSurface;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum HomologyError {
    #[error("chain map is invalid: {0}")]
    ChainMapInvalid(#[from] ChainMapError),
    #[error("chain map belongs to a different surface")]
    SurfaceMismatch,
    #[error(transparent)]
    Linalg(#[from] LinalgError),
    #[error("homology has torsion, which a closed orientable surface cannot have")]
    Torsion,
    #[error("surface has genus {genus}, not 1")]
    NotGenusOne { genus: usize },
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
}

/// The cellular chain complex `C_2 -> C_1 -> C_0` of the square tiling.
#[derive(Debug, Clone)]
pub struct ChainComplex {
    pub squares: usize,
    pub vertices: usize,
    /// `2n x n`: column `q` is the boundary of square `q`.
    pub boundary2: IntMatrix,
    /// `V x 2n`: column `e` is the boundary of edge `e`.
    pub boundary1: IntMatrix,
}

impl ChainComplex {
    pub fn new(s: &BacfiSurface) -> Self {
        let n = s.len();
        let vertex = s.vertex_index();
        let v = s.vertex_classes().len();
        let mut b2 = IntMatrix::zeros(2 * n, n);
        for q in 0..n {
            b2[(Edge::H(q).index(n), q)] += 1;
            b2[(Edge::V(s.east(q)).index(n), q)] += 1;
            b2[(Edge::H(s.north(q)).index(n), q)] -= 1;
            b2[(Edge::V(q).index(n), q)] -= 1;
        }
        let mut b1 = IntMatrix::zeros(v, 2 * n);
        for q in 0..n {
            for (e, end) in [(Edge::H(q), s.east(q)), (Edge::V(q), s.north(q))] {
                b1[(vertex[end], e.index(n))] += 1;
                b1[(vertex[q], e.index(n))] -= 1;
            }
        }
        ChainComplex {
            squares: n,
            vertices: v,
            boundary2: b2,
            boundary1: b1,
        }
    }

    pub fn edges(&self) -> usize {
        2 * self.squares
    }

    /// Boundary of a 1-chain.
    pub fn boundary(&self, chain: &Chain) -> Vec<i64> {
        self.boundary1
            .mul_vec(&chain.to_dense(self.squares))
            .expect("dimensions agree")
    }
}

/// A basis of `H_1` together with the data to read off coordinates.
#[derive(Debug, Clone)]
pub struct HomologyBasis {
    complex: ChainComplex,
    /// Edge indices outside the spanning tree, in increasing order.
    cotree: Vec<usize>,
    /// Fundamental cycle of each cotree edge.
    fundamental: Vec<Vec<i64>>,
    transform: IntMatrix,
    rank: usize,
    /// Representative cycles, in the order of the coordinates.
    pub cycles: Vec<Chain>,
}

impl HomologyBasis {
    pub fn new(s: &BacfiSurface) -> Result<Self, HomologyError> {
        let complex = ChainComplex::new(s);
        let n = s.len();
        let edges = complex.edges();
        let vertex = s.vertex_index();
        let ends: Vec<(usize, usize)> = (0..edges)
            .map(|i| match Edge::from_index(i, n) {
                Edge::H(q) => (vertex[q], vertex[s.east(q)]),
                Edge::V(q) => (vertex[q], vertex[s.north(q)]),
            })
            .collect();

        // Breadth-first spanning tree from vertex 0, scanning edges in index
        // order. path[v] is the tree path from the root to v as a dense chain.
        let mut path: Vec<Option<Vec<i64>>> = vec![None; complex.vertices];
        let mut in_tree = vec![false; edges];
        path[0] = Some(vec![0; edges]);
        let mut queue = VecDeque::from([0]);
        while let Some(u) = queue.pop_front() {
            for (i, &(a, b)) in ends.iter().enumerate() {
                let (next, sign) = if a == u && path[b].is_none() {
                    (b, 1)
                } else if b == u && path[a].is_none() {
                    (a, -1)
                } else {
                    continue;
                };
                let mut p = path[u].clone().unwrap();
                p[i] += sign;
                path[next] = Some(p);
                in_tree[i] = true;
                queue.push_back(next);
            }
        }
        let path: Vec<Vec<i64>> = path
            .into_iter()
            .map(|p| p.expect("surface is connected"))
            .collect();
        let cotree: Vec<usize> = (0..edges).filter(|&i| !in_tree[i]).collect();
        let fundamental: Vec<Vec<i64>> = cotree
            .iter()
            .map(|&i| {
                let (a, b) = ends[i];
                let mut z = vec![0; edges];
                z[i] += 1;
                for k in 0..edges {
                    z[k] += path[a][k] - path[b][k];
                }
                z
            })
            .collect();

        let m = cotree.len();
        let mut relations = IntMatrix::zeros(m, n);
        for (row, &i) in cotree.iter().enumerate() {
            for q in 0..n {
                relations[(row, q)] = complex.boundary2[(i, q)];
            }
        }
        let echelon = row_echelon(&relations)?;
        let rank = echelon.rank;
        // The relation lattice must be all of Z^rank in the top rows.
        let top = IntMatrix::from_rows(&echelon.reduced.to_rows()[..rank]);
        let check = row_echelon(&top.transpose())?;
        if (0..rank).any(|i| check.reduced[(i, i)] != 1) {
            return Err(HomologyError::Torsion);
        }

        let mut basis = HomologyBasis {
            complex,
            cotree,
            fundamental,
            transform: echelon.transform,
            rank,
            cycles: Vec::new(),
        };
        basis.cycles = (rank..m)
            .map(|j| basis.cycle_from_cotree(&echelon.inverse.column(j)))
            .collect();
        Ok(basis)
    }

    pub fn dimension(&self) -> usize {
        self.cycles.len()
    }

    pub fn complex(&self) -> &ChainComplex {
        &self.complex
    }

    fn cycle_from_cotree(&self, coords: &[i64]) -> Chain {
        let mut dense = vec![0; self.complex.edges()];
        for (c, z) in coords.iter().zip(&self.fundamental) {
            for (d, x) in dense.iter_mut().zip(z) {
                *d += c * x;
            }
        }
        Chain::from_dense(&dense)
    }

    /// Coordinates of the class of a cycle. Returns `None` if `z` is not a
    /// cycle.
    pub fn coordinates(&self, z: &Chain) -> Result<Option<Vec<i64>>, HomologyError> {
        if self.complex.boundary(z).iter().any(|&x| x != 0) {
            return Ok(None);
        }
        let dense = z.to_dense(self.complex.squares);
        let cotree: Vec<i64> = self.cotree.iter().map(|&i| dense[i]).collect();
        let full = self.transform.mul_vec(&cotree)?;
        Ok(Some(full[self.rank..].to_vec()))
    }

    /// Orientation of a genus one basis read from the holonomy of its cycles.
    pub fn holonomy_determinant(&self) -> Option<i64> {
        if self.dimension() != 2 {
            return None;
        }
        let (a, c) = self.cycles[0].holonomy();
        let (b, d) = self.cycles[1].holonomy();
        Some(a * d - b * c)
    }
}

/// The matrix of a chain map on `H_1` in a computed basis.
#[derive(Debug, Clone)]
pub struct H1Matrix {
    pub basis: HomologyBasis,
    pub matrix: IntMatrix,
}

impl H1Matrix {
    pub fn dimension(&self) -> usize {
        self.matrix.rows()
    }

    pub fn char_poly(&self) -> IntPolynomial {
        char_poly(&self.matrix)
    }
}

pub fn h1_matrix(s: &BacfiSurface, f: &CellularChainMap) -> Result<H1Matrix, HomologyError> {
    if !f.surface().same_tiling(s) {
        return Err(HomologyError::SurfaceMismatch);
    }
    f.verify()?;
    let basis = HomologyBasis::new(s)?;
    let k = basis.dimension();
    let mut matrix = IntMatrix::zeros(k, k);
    for (j, cycle) in basis.cycles.iter().enumerate() {
        let image = f.apply(cycle)?;
        let coords = basis
            .coordinates(&image)?
            .ok_or(ChainMapError::BoundaryMismatch { edge: Edge::H(0) })?;
        for (i, x) in coords.into_iter().enumerate() {
            matrix[(i, j)] = x;
        }
    }
    Ok(H1Matrix { basis, matrix })
}

/// `det(x I - m)` by fraction-free elimination over `Z[x]`. The leading
/// principal minors of `x I - m` are monic, so no pivoting is needed and
/// every division is exact.
pub fn char_poly(m: &IntMatrix) -> IntPolynomial {
    assert!(
        m.is_square(),
        "characteristic polynomial of a non-square matrix"
    );
    let n = m.rows();
    if n == 0 {
        return IntPolynomial::one();
    }
    let mut a: Vec<Vec<IntPolynomial>> = (0..n)
        .map(|i| {
            (0..n)
                .map(|j| {
                    let c = IntPolynomial::constant(BigInt::from(-m[(i, j)]));
                    if i == j {
                        &c + &IntPolynomial::x()
                    } else {
                        c
                    }
                })
                .collect()
        })
        .collect();
    let mut prev = IntPolynomial::one();
    for k in 0..n - 1 {
        for i in k + 1..n {
            for j in k + 1..n {
                let num = &(&a[i][j] * &a[k][k]) - &(&a[i][k] * &a[k][j]);
                a[i][j] = num.div_exact(&prev).expect("Bareiss division is exact");
            }
        }
        prev = a[k][k].clone();
    }
    a[n - 1][n - 1].clone()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, serde::Serialize)]
#[serde(rename_all = "snake_case")]
pub enum OrientationBranch {
    /// The computed basis was already positively oriented.
    Direct,
    /// The second basis vector was negated to make the basis positive.
    Reoriented,
}

#[derive(Debug, Clone)]
pub struct TorusWord {
    pub matrix: Mat2,
    pub word: XYWord,
    pub branch: OrientationBranch,
}

/// The positive word of the monodromy of a genus one surface, in a basis of
/// `H_1` oriented by holonomy.
pub fn torus_word(s: &BacfiSurface) -> Result<TorusWord, HomologyError> {
    let genus = s.genus_from_euler();
    if genus != 1 {
        return Err(HomologyError::NotGenusOne { genus });
    }
    let h = h1_matrix(s, &monodromy(s))?;
    let m = &h.matrix;
    let mut matrix = [[m[(0, 0)], m[(0, 1)]], [m[(1, 0)], m[(1, 1)]]];
    let mut branch = OrientationBranch::Direct;
    if h.basis.holonomy_determinant().unwrap_or(1) < 0 {
        matrix = [[matrix[0][0], -matrix[0][1]], [-matrix[1][0], matrix[1][1]]];
        branch = OrientationBranch::Reoriented;
    }
    let word = sl2::xy_word(&matrix)?;
    Ok(TorusWord {
        matrix,
        word,
        branch,
    })
}
