//! Named example surfaces.

use rand::seq::SliceRandom;
use rand::Rng;

use crate::surface::{cycles, BacfiSurface, SurfaceError};

/// The 2x2 torus. Rows are `{0, 1}` and `{2, 3}`, columns `{0, 2}` and
/// `{1, 3}`; `p`, `r` are the row exponents and `q`, `s` the column exponents.
pub fn example1(p: u32, q: u32, r: u32, s: u32) -> Result<BacfiSurface, SurfaceError> {
    BacfiSurface::new(
        vec![1, 0, 3, 2],
        vec![2, 3, 0, 1],
        vec![p, p, r, r],
        vec![q, s, q, s],
    )
}

/// Twelve squares in two rows of six; the top row is glued back onto the
/// bottom row with a shift of two.
pub fn example2() -> BacfiSurface {
    two_row(6, 1).expect("the twelve-square torus is valid")
}

/// The single square with horizontal exponent `q` and vertical exponent `r`.
pub fn example3(q: u32, r: u32) -> Result<BacfiSurface, SurfaceError> {
    BacfiSurface::new(vec![0], vec![0], vec![q], vec![r])
}

/// Three squares `a = 0`, `b = 1`, `c = 2`: horizontal cylinders `{a, b}`
/// (exponent `q`) and `{c}` (exponent `r`), one vertical cylinder.
pub fn example4(q: u32, r: u32) -> Result<BacfiSurface, SurfaceError> {
    BacfiSurface::new(vec![1, 0, 2], vec![1, 2, 0], vec![q, q, r], vec![1, 1, 1])
}

/// The even ping-pong with `4n - 1` squares. Horizontal cylinders are the
/// consecutive blocks of widths `2, 4, ..., 4, 1`, vertical cylinders the
/// consecutive blocks of widths `4, ..., 4, 3`. The first horizontal
/// cylinder has exponent `q`, the last one `r`, all others are 1.
pub fn pingpong(n: usize, q: u32, r: u32) -> Result<BacfiSurface, SurfaceError> {
    if n == 0 {
        return Err(SurfaceError::MalformedDocument(
            "ping-pong needs n >= 1".into(),
        ));
    }
    let size = 4 * n - 1;
    let mut rows = vec![(0, 1)];
    rows.extend((1..n).map(|i| (4 * i - 2, 4 * i + 1)));
    rows.push((size - 1, size - 1));
    let mut columns: Vec<(usize, usize)> = (0..n - 1).map(|j| (4 * j, 4 * j + 3)).collect();
    columns.push((4 * n - 4, size - 1));

    // Inside a block the successor of x is x - 1, wrapping from the first
    // square to the last.
    let block_perm = |blocks: &[(usize, usize)]| {
        let mut perm = vec![0; size];
        for &(first, last) in blocks {
            perm[first] = last;
            for (x, slot) in perm.iter_mut().enumerate().take(last + 1).skip(first + 1) {
                *slot = x - 1;
            }
        }
        perm
    };
    let east = block_perm(&rows);
    let north = block_perm(&columns);
    let mut h_exp = vec![1; size];
    h_exp[0] = q;
    h_exp[1] = q;
    h_exp[size - 1] = r;
    BacfiSurface::new(east, north, h_exp, vec![1; size])
}

/// Two rows of `width` squares where the north neighbour of top square `i`
/// is bottom square `i - 2`. All cylinders get the exponent `exponent`.
/// `two_row(6, 1)` is [`example2`]; for odd widths there is a single vertical
/// cylinder of height `2 * width`.
pub fn two_row(width: usize, exponent: u32) -> Result<BacfiSurface, SurfaceError> {
    if width == 0 {
        return Err(SurfaceError::MalformedDocument(
            "two-row surface needs a positive width".into(),
        ));
    }
    let w = width;
    let mut east = vec![0; 2 * w];
    let mut north = vec![0; 2 * w];
    for i in 0..w {
        east[i] = (i + 1) % w;
        east[w + i] = w + (i + 1) % w;
        north[i] = w + i;
        north[w + i] = (i + 2 * w - 2) % w;
    }
    BacfiSurface::new(east, north, vec![exponent; 2 * w], vec![exponent; 2 * w])
}

/// A random connected surface with `1..=max_squares` squares.
///
/// `NE` is drawn as a random involution `J` and `N` is set to `J W`, so
/// `NENE = id` holds by construction. Exponents are drawn per cylinder from
/// `1..=3` and raised where a width one cylinder needs exponent 2.
pub fn random_surface<R: Rng + ?Sized>(rng: &mut R, max_squares: usize) -> BacfiSurface {
    loop {
        let n = rng.gen_range(1..=max_squares.max(1));
        let mut east: Vec<usize> = (0..n).collect();
        east.shuffle(rng);
        let mut west = vec![0; n];
        for (q, &e) in east.iter().enumerate() {
            west[e] = q;
        }
        let mut order: Vec<usize> = (0..n).collect();
        order.shuffle(rng);
        let mut j: Vec<usize> = (0..n).collect();
        for pair in order.chunks(2) {
            if let [a, b] = *pair {
                if rng.gen_bool(0.8) {
                    j[a] = b;
                    j[b] = a;
                }
            }
        }
        let north: Vec<usize> = (0..n).map(|q| j[west[q]]).collect();
        let mut h_exp = vec![0; n];
        let mut v_exp = vec![0; n];
        for (perm, exps) in [(&east, &mut h_exp), (&north, &mut v_exp)] {
            for cycle in cycles(perm) {
                let mut e = rng.gen_range(1..=3);
                if cycle.len() == 1 {
                    e = e.max(2);
                }
                for q in cycle {
                    exps[q] = e;
                }
            }
        }
        // rejects disconnected draws
        if let Ok(s) = BacfiSurface::new(east, north, h_exp, v_exp) {
            return s;
        }
    }
}

/// A fixed collection of the named examples, used by tests.
pub fn gallery() -> Vec<BacfiSurface> {
    vec![
        example1(2, 2, 2, 2).unwrap(),
        example1(3, 2, 4, 3).unwrap(),
        example2(),
        example3(3, 7).unwrap(),
        example4(3, 7).unwrap(),
        pingpong(1, 3, 7).unwrap(),
        pingpong(2, 4, 5).unwrap(),
        pingpong(3, 6, 16).unwrap(),
        two_row(5, 1).unwrap(),
        two_row(7, 2).unwrap(),
    ]
}
