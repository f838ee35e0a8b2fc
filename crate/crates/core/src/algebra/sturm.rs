//! Exact real root isolation with Sturm sequences.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, ToPrimitive};
use serde::Serialize;

use super::poly::IntPolynomial;
use super::AlgebraError;

/// An isolating interval. Either `lo == hi` is the root itself, or the root
/// lies strictly between `lo` and `hi` and the polynomial changes sign there.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RootInterval {
    pub lo: BigRational,
    pub hi: BigRational,
}

impl RootInterval {
    pub fn is_exact(&self) -> bool {
        self.lo == self.hi
    }

    pub fn width(&self) -> BigRational {
        &self.hi - &self.lo
    }

    pub fn contains(&self, x: &BigRational) -> bool {
        &self.lo <= x && x <= &self.hi
    }

    pub fn midpoint_approx(&self) -> f64 {
        ((&self.lo + &self.hi) / BigRational::from_integer(2.into()))
            .to_f64()
            .unwrap_or(f64::NAN)
    }

    pub fn lo_approx(&self) -> f64 {
        self.lo.to_f64().unwrap_or(f64::NAN)
    }

    pub fn hi_approx(&self) -> f64 {
        self.hi.to_f64().unwrap_or(f64::NAN)
    }

    /// Bisects until the width is at most `width`. `p` must be the square-free
    /// polynomial the interval was isolated for.
    pub fn refine(&mut self, p: &IntPolynomial, width: &BigRational) {
        if self.is_exact() {
            return;
        }
        let lo_sign = p.sign_at(&self.lo);
        let two = BigRational::from_integer(2.into());
        while &self.width() > width {
            let mid = (&self.lo + &self.hi) / &two;
            match p.sign_at(&mid) {
                0 => {
                    self.lo = mid.clone();
                    self.hi = mid;
                    return;
                }
                s if s == lo_sign => self.lo = mid,
                _ => self.hi = mid,
            }
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct EnclosureView {
    pub lo: String,
    pub hi: String,
    pub lo_approx: f64,
    pub hi_approx: f64,
}

impl From<&RootInterval> for EnclosureView {
    fn from(r: &RootInterval) -> Self {
        EnclosureView {
            lo: r.lo.to_string(),
            hi: r.hi.to_string(),
            lo_approx: r.lo_approx(),
            hi_approx: r.hi_approx(),
        }
    }
}

pub struct SturmSequence {
    polys: Vec<IntPolynomial>,
}

impl SturmSequence {
    /// Sequence `p, p', -rem(p, p'), ...` with positive rescalings only.
    pub fn new(p: &IntPolynomial) -> Self {
        let mut polys = vec![p.clone()];
        let mut next = p.derivative();
        while !next.is_zero() {
            let prev = polys.last().unwrap().clone();
            polys.push(next.clone());
            let r = prev.signed_pseudo_rem(&next);
            let content = r.content();
            next = if r.is_zero() {
                r
            } else {
                IntPolynomial::new(r.coeffs().iter().map(|c| -(c / &content)).collect())
            };
        }
        SturmSequence { polys }
    }

    pub fn variations(&self, x: &BigRational) -> usize {
        let mut count = 0;
        let mut last = 0;
        for p in &self.polys {
            let s = p.sign_at(x);
            if s != 0 {
                if last != 0 && s != last {
                    count += 1;
                }
                last = s;
            }
        }
        count
    }

    /// Sign variations at `+inf` or `-inf`.
    pub fn variations_at_infinity(&self, positive: bool) -> usize {
        let mut count = 0;
        let mut last = 0;
        for p in &self.polys {
            let Some(d) = p.degree() else { continue };
            let mut s = if p.leading().is_negative() { -1 } else { 1 };
            if !positive && d % 2 == 1 {
                s = -s;
            }
            if last != 0 && s != last {
                count += 1;
            }
            last = s;
        }
        count
    }

    /// Number of distinct real roots in the open interval `(a, b)`; `a` and
    /// `b` must not be roots.
    pub fn count_between(&self, a: &BigRational, b: &BigRational) -> usize {
        self.variations(a).saturating_sub(self.variations(b))
    }

    pub fn count_real(&self) -> usize {
        self.variations_at_infinity(false) - self.variations_at_infinity(true)
    }
}

/// A bound `B` with every real root in `(-B, B)`.
pub fn cauchy_bound(p: &IntPolynomial) -> BigRational {
    let lead = p.leading().abs();
    let max = p.coeffs().iter().map(|c| c.abs()).max().unwrap_or_default();
    BigRational::from_integer(BigInt::from(2) + max / lead)
}

/// Isolating intervals for the distinct real roots of `p`, in increasing
/// order. Repeated roots are handled by isolating the square-free part.
pub fn isolate_real_roots(p: &IntPolynomial) -> Result<Vec<RootInterval>, AlgebraError> {
    if p.is_zero() {
        return Err(AlgebraError::ZeroPolynomial);
    }
    let p = p.square_free_part();
    if p.degree() == Some(0) {
        return Ok(Vec::new());
    }
    let sturm = SturmSequence::new(&p);
    let bound = cauchy_bound(&p);
    let two = BigRational::from_integer(2.into());
    let mut out = Vec::new();
    let mut stack = vec![(-bound.clone(), bound, sturm.count_real())];
    while let Some((lo, hi, count)) = stack.pop() {
        match count {
            0 => {}
            1 => out.push(RootInterval { lo, hi }),
            _ => {
                let mid = (&lo + &hi) / &two;
                if p.sign_at(&mid) == 0 {
                    let mut eps = (&hi - &lo) / BigRational::from_integer(4.into());
                    loop {
                        let (a, b) = (&mid - &eps, &mid + &eps);
                        if p.sign_at(&a) != 0
                            && p.sign_at(&b) != 0
                            && sturm.count_between(&a, &b) == 1
                        {
                            break;
                        }
                        eps /= &two;
                    }
                    let (a, b) = (&mid - &eps, &mid + &eps);
                    out.push(RootInterval {
                        lo: mid.clone(),
                        hi: mid.clone(),
                    });
                    let left = sturm.count_between(&lo, &a);
                    let right = sturm.count_between(&b, &hi);
                    stack.push((lo, a, left));
                    stack.push((b, hi, right));
                } else {
                    let left = sturm.count_between(&lo, &mid);
                    stack.push((mid.clone(), hi, count - left));
                    stack.push((lo, mid, left));
                }
            }
        }
    }
    out.sort_by(|a, b| a.lo.cmp(&b.lo));
    Ok(out)
}

/// Isolating interval of the largest real root refined to `width`, or `None`
/// when there are no real roots.
pub fn largest_real_root(
    p: &IntPolynomial,
    width: &BigRational,
) -> Result<Option<RootInterval>, AlgebraError> {
    let roots = isolate_real_roots(p)?;
    Ok(roots.last().cloned().map(|mut r| {
        r.refine(&p.square_free_part(), width);
        r
    }))
}

/// `10^-k` as a rational.
pub fn decimal_width(k: u32) -> BigRational {
    BigRational::new(1.into(), BigInt::from(10).pow(k))
}
