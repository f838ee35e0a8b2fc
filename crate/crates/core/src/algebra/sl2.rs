//! Positive words in `X = (1 1; 0 1)` and `Y = (1 0; 1 1)` for hyperbolic
//! elements of SL(2, Z).
//!
//! A matrix of trace at least 3 is conjugate to a product of `X`s and `Y`s,
//! unique up to cyclic rotation. We conjugate to a representative with
//! nonnegative entries and peel letters off the left.

use std::collections::{HashMap, VecDeque};
use std::fmt;

use serde::Serialize;

use super::AlgebraError;

pub type Mat2 = [[i64; 2]; 2];

pub const X: Mat2 = [[1, 1], [0, 1]];
pub const Y: Mat2 = [[1, 0], [1, 1]];
pub const IDENTITY: Mat2 = [[1, 0], [0, 1]];

pub fn mul(a: &Mat2, b: &Mat2) -> Option<Mat2> {
    let mut out = [[0; 2]; 2];
    for i in 0..2 {
        for j in 0..2 {
            out[i][j] = a[i][0]
                .checked_mul(b[0][j])?
                .checked_add(a[i][1].checked_mul(b[1][j])?)?;
        }
    }
    Some(out)
}

pub fn det(a: &Mat2) -> i64 {
    a[0][0] * a[1][1] - a[0][1] * a[1][0]
}

/// Inverse of a determinant one matrix.
pub fn inverse(a: &Mat2) -> Mat2 {
    [[a[1][1], -a[0][1]], [-a[1][0], a[0][0]]]
}

fn conjugate(g: &Mat2, a: &Mat2) -> Option<Mat2> {
    mul(&mul(g, a)?, &inverse(g))
}

fn mass(a: &Mat2) -> i64 {
    a.iter().flatten().map(|x| x.abs()).sum()
}

fn nonnegative(a: &Mat2) -> bool {
    a.iter().flatten().all(|&x| x >= 0)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub enum Letter {
    X,
    Y,
}

impl Letter {
    pub fn matrix(self) -> Mat2 {
        match self {
            Letter::X => X,
            Letter::Y => Y,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct XYWord {
    pub letters: Vec<Letter>,
    /// `P` with `evaluate() == P M P^-1` for the input `M`.
    pub conjugator: Mat2,
}

impl XYWord {
    pub fn evaluate(&self) -> Mat2 {
        evaluate(&self.letters)
    }

    pub fn trace(&self) -> i64 {
        let m = self.evaluate();
        m[0][0] + m[1][1]
    }

    /// Canonical word of the same map after reversing the orientation of the
    /// torus: conjugating by `diag(1, -1)` exchanges the roles of `X` and `Y`.
    pub fn mirrored(&self) -> Vec<Letter> {
        let swapped: Vec<Letter> = self
            .letters
            .iter()
            .map(|l| match l {
                Letter::X => Letter::Y,
                Letter::Y => Letter::X,
            })
            .collect();
        least_rotation(&swapped).0
    }
}

impl fmt::Display for XYWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for l in &self.letters {
            write!(f, "{}", if *l == Letter::X { 'X' } else { 'Y' })?;
        }
        Ok(())
    }
}

pub fn evaluate(letters: &[Letter]) -> Mat2 {
    letters.iter().fold(IDENTITY, |acc, l| {
        mul(&acc, &l.matrix()).expect("word evaluation overflow")
    })
}

/// Parses a word such as `"XXYXXY"`.
pub fn parse_word(s: &str) -> Option<Vec<Letter>> {
    s.chars()
        .map(|c| match c {
            'X' => Some(Letter::X),
            'Y' => Some(Letter::Y),
            _ => None,
        })
        .collect()
}

/// Lexicographically least rotation and the rotation amount.
pub fn least_rotation(letters: &[Letter]) -> (Vec<Letter>, usize) {
    let n = letters.len();
    (0..n.max(1))
        .map(|k| {
            let mut w = letters[k.min(n)..].to_vec();
            w.extend_from_slice(&letters[..k.min(n)]);
            (w, k)
        })
        .min()
        .unwrap_or_default()
}

const GENERATORS: [Mat2; 5] = [
    X,
    [[1, -1], [0, 1]],
    Y,
    [[1, 0], [-1, 1]],
    [[0, -1], [1, 0]],
];

/// A conjugate of `m` with nonnegative entries, and the conjugator.
fn nonnegative_conjugate(m: &Mat2) -> Result<(Mat2, Mat2), AlgebraError> {
    let overflow = || AlgebraError::Internal("entry overflow while conjugating".into());
    let (mut a, mut p) = (*m, IDENTITY);
    while !nonnegative(&a) {
        let best = GENERATORS[..4]
            .iter()
            .filter_map(|g| Some((conjugate(g, &a)?, *g)))
            .min_by_key(|(c, _)| mass(c));
        match best {
            Some((c, g)) if mass(&c) < mass(&a) => {
                a = c;
                p = mul(&g, &p).ok_or_else(overflow)?;
            }
            _ => return breadth_first(&a, &p),
        }
    }
    Ok((a, p))
}

/// Exhaustive search over short conjugating words, used when the greedy
/// descent stalls.
fn breadth_first(start: &Mat2, p0: &Mat2) -> Result<(Mat2, Mat2), AlgebraError> {
    const LIMIT: usize = 200_000;
    let bound = 4 * mass(start) + 16;
    let mut seen: HashMap<Mat2, Mat2> = HashMap::from([(*start, *p0)]);
    let mut queue = VecDeque::from([*start]);
    while let Some(a) = queue.pop_front() {
        let p = seen[&a];
        if nonnegative(&a) {
            return Ok((a, p));
        }
        for g in &GENERATORS {
            let Some(c) = conjugate(g, &a) else { continue };
            if mass(&c) > bound || seen.contains_key(&c) {
                continue;
            }
            let Some(pc) = mul(g, &p) else { continue };
            seen.insert(c, pc);
            queue.push_back(c);
        }
        if seen.len() > LIMIT {
            break;
        }
    }
    Err(AlgebraError::Internal(
        "no nonnegative conjugate found within the search limit".into(),
    ))
}

/// The canonical positive word of `m`.
pub fn xy_word(m: &Mat2) -> Result<XYWord, AlgebraError> {
    if det(m) != 1 {
        return Err(AlgebraError::NotSL2);
    }
    let trace = m[0][0] + m[1][1];
    if trace <= 2 {
        return Err(AlgebraError::TraceTooSmall { trace });
    }
    let (mut a, p) = nonnegative_conjugate(m)?;
    let mut letters = Vec::new();
    while a != IDENTITY {
        let [[a0, b0], [c0, d0]] = a;
        if a0 >= c0 && b0 >= d0 {
            letters.push(Letter::X);
            a = [[a0 - c0, b0 - d0], [c0, d0]];
        } else if c0 >= a0 && d0 >= b0 {
            letters.push(Letter::Y);
            a = [[a0, b0], [c0 - a0, d0 - b0]];
        } else {
            return Err(AlgebraError::Internal(format!(
                "nonnegative matrix {a:?} admits no letter"
            )));
        }
    }
    let (canonical, k) = least_rotation(&letters);
    // rotating by k conjugates by the inverse of the first k letters
    let prefix = evaluate(&letters[..k]);
    let conjugator = mul(&inverse(&prefix), &p)
        .ok_or_else(|| AlgebraError::Internal("conjugator overflow".into()))?;
    Ok(XYWord {
        letters: canonical,
        conjugator,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn check(m: Mat2, expected: &str) {
        let w = xy_word(&m).unwrap();
        assert_eq!(w.to_string(), expected);
        let p = w.conjugator;
        assert_eq!(
            w.evaluate(),
            mul(&mul(&p, &m).unwrap(), &inverse(&p)).unwrap()
        );
    }

    #[test]
    fn known_words() {
        // not XXYXXY: that class is reached only after reversing orientation
        check([[-5, -8], [12, 19]], "XYYXYY");
        check([[-1, -4], [4, 15]], "XXYXXY");
        check([[2, 1], [1, 1]], "XY");
        check([[-1, -1], [5, 4]], "XY");
        // Y X X
        check([[1, 2], [1, 3]], "XXY");
    }

    #[test]
    fn mirror_matches_reoriented_matrix() {
        let m = [[-5, -8], [12, 19]];
        let w = xy_word(&m).unwrap();
        let r = xy_word(&[[-5, 8], [-12, 19]]).unwrap();
        assert_eq!(w.mirrored(), r.letters);
        assert_eq!(r.to_string(), "XXYXXY");
    }

    #[test]
    fn rejects_bad_input() {
        assert_eq!(xy_word(&[[2, 0], [0, 1]]), Err(AlgebraError::NotSL2));
        assert_eq!(
            xy_word(&[[1, 1], [0, 1]]),
            Err(AlgebraError::TraceTooSmall { trace: 2 })
        );
        assert_eq!(
            xy_word(&[[0, -1], [1, 0]]),
            Err(AlgebraError::TraceTooSmall { trace: 0 })
        );
    }

    #[test]
    fn rotation_is_least() {
        let w = parse_word("YXXYX").unwrap();
        let (r, k) = least_rotation(&w);
        assert_eq!(r, parse_word("XXYXY").unwrap());
        assert_eq!(k, 1);
    }

    fn random_sl2() -> impl Strategy<Value = Mat2> {
        proptest::collection::vec(0usize..5, 0..8).prop_map(|gens| {
            gens.into_iter()
                .fold(IDENTITY, |acc, i| mul(&acc, &GENERATORS[i]).unwrap())
        })
    }

    proptest! {
        #[test]
        fn word_is_a_conjugacy_invariant(
            letters in proptest::collection::vec(prop_oneof![Just(Letter::X), Just(Letter::Y)], 1..9),
            g in random_sl2(),
        ) {
            let m = evaluate(&letters);
            prop_assume!(m[0][0] + m[1][1] > 2);
            let conj = conjugate(&g, &m).unwrap();
            let w = xy_word(&conj).unwrap();
            prop_assert_eq!(&w.letters, &least_rotation(&letters).0);
            let p = w.conjugator;
            prop_assert_eq!(w.evaluate(), mul(&mul(&p, &conj).unwrap(), &inverse(&p)).unwrap());
        }
    }
}
