//! Where the roots of an integer polynomial lie relative to the real line and
//! the unit circle, and what that says about how a stretch factor can arise.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::Serialize;

use super::modp::irreducibility_certificate;
use super::poly::IntPolynomial;
use super::sturm::{cauchy_bound, decimal_width, isolate_real_roots, RootInterval, SturmSequence};
use super::AlgebraError;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RootClassification {
    pub degree: usize,
    pub real_count: usize,
    pub unit_circle_count: usize,
    /// Roots off the real line and off the unit circle.
    pub other_count: usize,
    pub largest_real_root: Option<RootInterval>,
    pub reciprocal: bool,
    pub irreducible_mod_p_certificate: Option<u64>,
}

/// For a palindromic `g` of even degree `2m`, the `q` of degree `m` with
/// `g(x) = x^m q(x + 1/x)`.
pub fn reciprocal_reduction(g: &IntPolynomial) -> Option<IntPolynomial> {
    let d = g.degree()?;
    if d % 2 == 1 || g.reverse() != *g {
        return None;
    }
    let m = d / 2;
    let y = IntPolynomial::x();
    // D_k(y) = x^k + x^-k
    let mut d_prev = IntPolynomial::from_i64(&[2]);
    let mut d_cur = y.clone();
    let mut q = IntPolynomial::constant(g.coeff(m));
    for k in 1..=m {
        q = &q + &d_cur.scale(&g.coeff(m + k));
        let next = &(&y * &d_cur) - &d_prev;
        d_prev = d_cur;
        d_cur = next;
    }
    Some(q)
}

/// `x^m q(x + 1/x)` for `q` of degree `m`; inverse of [`reciprocal_reduction`].
pub fn expand_reciprocal(q: &IntPolynomial) -> IntPolynomial {
    let Some(m) = q.degree() else {
        return IntPolynomial::zero();
    };
    // x^m (x + 1/x)^k = x^(m-k) (x^2 + 1)^k
    let x2_plus_1 = IntPolynomial::from_i64(&[1, 0, 1]);
    let mut out = IntPolynomial::zero();
    for (k, c) in q.coeffs().iter().enumerate() {
        let mut shift = vec![BigInt::zero(); m - k];
        shift.push(c.clone());
        out = &out + &(&IntPolynomial::new(shift) * &x2_plus_1.pow(k as u32));
    }
    out
}

/// Exact root location counts for a square-free polynomial.
pub fn classify_roots(p: &IntPolynomial) -> Result<RootClassification, AlgebraError> {
    let degree = match p.degree() {
        None => return Err(AlgebraError::ZeroPolynomial),
        Some(d) => d,
    };
    if !p.is_square_free() {
        return Err(AlgebraError::NotSquareFree);
    }
    let p = p.primitive_part();

    // Roots closed under inversion are the roots of g.
    let mut g = p.gcd(&p.reverse());
    let h = p.div_exact(&g).expect("gcd divides").primitive_part();
    let mut real_count = 0;
    for a in [1, -1] {
        let factor = IntPolynomial::linear_root(a);
        if g.eval(&BigInt::from(a)).is_zero() {
            g = g.div_exact(&factor).expect("root gives a linear factor");
            real_count += 1;
        }
    }

    let mut unit_circle_count = 0;
    if g.degree().unwrap_or(0) > 0 {
        let q = reciprocal_reduction(&g).ok_or(AlgebraError::Internal(
            "inversion-closed factor is not palindromic".into(),
        ))?;
        let sturm = SturmSequence::new(&q);
        let two = BigRational::from_integer(2.into());
        let inside = sturm.count_between(&-two.clone(), &two);
        let total = sturm.count_real();
        unit_circle_count += 2 * inside;
        real_count += 2 * (total - inside);
    }
    if h.degree().unwrap_or(0) > 0 {
        real_count += SturmSequence::new(&h).count_real();
    }

    let largest_real_root = match isolate_real_roots(&p)?.pop() {
        Some(mut r) => {
            r.refine(&p, &decimal_width(6));
            Some(r)
        }
        None => None,
    };
    Ok(RootClassification {
        degree,
        real_count,
        unit_circle_count,
        other_count: degree - real_count - unit_circle_count,
        largest_real_root,
        reciprocal: p.is_reciprocal(),
        irreducible_mod_p_certificate: irreducibility_certificate(&p),
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(tag = "status", rename_all = "snake_case")]
pub enum Certainty {
    /// The polynomial is irreducible modulo `prime`, hence over the rationals.
    Certified {
        prime: u64,
    },
    ConditionalOnIrreducibility,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ExclusionVerdict {
    /// Some conjugate of the largest root lies off the real line and the
    /// unit circle, so no power comes from Thurston's construction.
    pub no_power_thurston: bool,
    /// Some conjugate lies on the unit circle, so no power comes from
    /// Penner's construction.
    pub no_power_penner: bool,
    pub certainty: Certainty,
}

/// True when `p` has a real root strictly greater than one.
fn has_root_above_one(p: &IntPolynomial) -> Result<bool, AlgebraError> {
    let one = BigRational::one();
    let mut q = p.clone();
    if q.eval(&BigInt::one()).is_zero() {
        q = q.div_exact(&IntPolynomial::linear_root(1)).expect("root");
    }
    if q.degree().unwrap_or(0) == 0 {
        return Ok(false);
    }
    let sturm = SturmSequence::new(&q.square_free_part());
    Ok(sturm.count_between(&one, &cauchy_bound(&q)) > 0)
}

/// Flags for the polynomial of a candidate stretch factor; the verdict is
/// only as strong as the assumption that `p` is its minimal polynomial.
pub fn exclusion_verdict(p: &IntPolynomial) -> Result<ExclusionVerdict, AlgebraError> {
    let c = classify_roots(p)?;
    if !has_root_above_one(p)? {
        return Err(AlgebraError::NoRealRootGreaterThanOne);
    }
    Ok(ExclusionVerdict {
        no_power_thurston: c.other_count > 0,
        no_power_penner: c.unit_circle_count > 0,
        certainty: match c.irreducible_mod_p_certificate {
            Some(prime) => Certainty::Certified { prime },
            None => Certainty::ConditionalOnIrreducibility,
        },
    })
}
