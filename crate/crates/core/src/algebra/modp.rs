//! Irreducibility modulo small primes (Rabin's test).
//!
//! A primitive integer polynomial that stays irreducible of the same degree
//! modulo some prime is irreducible over the rationals. The converse fails,
//! so a missing certificate proves nothing.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::ToPrimitive;

use super::poly::IntPolynomial;

pub const CERTIFICATE_PRIME_LIMIT: u64 = 101;

type Fp = Vec<u64>;

fn trim(mut a: Fp) -> Fp {
    while a.last() == Some(&0) {
        a.pop();
    }
    a
}

fn inv_mod(a: u64, p: u64) -> u64 {
    pow_mod(a, p - 2, p)
}

fn pow_mod(mut a: u64, mut e: u64, p: u64) -> u64 {
    let mut r = 1;
    a %= p;
    while e > 0 {
        if e & 1 == 1 {
            r = r * a % p;
        }
        a = a * a % p;
        e >>= 1;
    }
    r
}

fn rem(a: &Fp, m: &Fp, p: u64) -> Fp {
    let mut a = trim(a.clone());
    let dm = m.len() - 1;
    let inv = inv_mod(m[dm], p);
    while a.len() > dm {
        let k = a.len() - 1 - dm;
        let f = a[a.len() - 1] * inv % p;
        for (i, &c) in m.iter().enumerate() {
            a[k + i] = (a[k + i] + p - f * c % p) % p;
        }
        a = trim(a);
    }
    a
}

fn mul_mod(a: &Fp, b: &Fp, m: &Fp, p: u64) -> Fp {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![0; a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        for (j, &y) in b.iter().enumerate() {
            out[i + j] = (out[i + j] + x * y) % p;
        }
    }
    rem(&out, m, p)
}

fn sub(a: &Fp, b: &Fp, p: u64) -> Fp {
    let n = a.len().max(b.len());
    trim(
        (0..n)
            .map(|i| {
                let x = a.get(i).copied().unwrap_or(0);
                let y = b.get(i).copied().unwrap_or(0);
                (x + p - y) % p
            })
            .collect(),
    )
}

fn gcd(a: &Fp, b: &Fp, p: u64) -> Fp {
    let (mut a, mut b) = (trim(a.clone()), trim(b.clone()));
    while !b.is_empty() {
        let r = rem(&a, &b, p);
        a = b;
        b = r;
    }
    a
}

/// `x^(p^k) mod m`, by repeated `p`-th powering.
fn frobenius_power(k: usize, m: &Fp, p: u64) -> Fp {
    let mut x = rem(&vec![0, 1], m, p);
    for _ in 0..k {
        let mut base = x.clone();
        let mut acc = vec![1];
        let mut e = p;
        while e > 0 {
            if e & 1 == 1 {
                acc = mul_mod(&acc, &base, m, p);
            }
            base = mul_mod(&base, &base, m, p);
            e >>= 1;
        }
        x = acc;
    }
    x
}

fn prime_divisors(mut n: usize) -> Vec<usize> {
    let mut out = Vec::new();
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            out.push(d);
            while n.is_multiple_of(d) {
                n /= d;
            }
        }
        d += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

fn is_prime(p: u64) -> bool {
    p >= 2
        && (2..)
            .take_while(|d| d * d <= p)
            .all(|d| !p.is_multiple_of(d))
}

/// True when `f mod prime` has the same degree as `f` and is irreducible.
pub fn is_irreducible_mod(f: &IntPolynomial, prime: u64) -> bool {
    let Some(n) = f.degree() else { return false };
    if n == 0 {
        return false;
    }
    let modp: Fp = f
        .coeffs()
        .iter()
        .map(|c| c.mod_floor(&BigInt::from(prime)).to_u64().unwrap())
        .collect();
    if modp[n] == 0 {
        return false;
    }
    let x = vec![0, 1];
    if !sub(
        &frobenius_power(n, &modp, prime),
        &rem(&x, &modp, prime),
        prime,
    )
    .is_empty()
    {
        return false;
    }
    prime_divisors(n).into_iter().all(|r| {
        let d = sub(&frobenius_power(n / r, &modp, prime), &x, prime);
        gcd(&modp, &d, prime).len() == 1
    })
}

/// The smallest prime up to [`CERTIFICATE_PRIME_LIMIT`] modulo which `f`
/// stays irreducible of full degree.
pub fn irreducibility_certificate(f: &IntPolynomial) -> Option<u64> {
    (2..=CERTIFICATE_PRIME_LIMIT)
        .filter(|&p| is_prime(p))
        .find(|&p| is_irreducible_mod(f, p))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(c: &[i64]) -> IntPolynomial {
        IntPolynomial::from_i64(c)
    }

    #[test]
    fn small_cases() {
        // x^2 + 1 is irreducible mod 3, splits mod 2 and 5
        let q = p(&[1, 0, 1]);
        assert!(!is_irreducible_mod(&q, 2));
        assert!(is_irreducible_mod(&q, 3));
        assert!(!is_irreducible_mod(&q, 5));
        assert_eq!(irreducibility_certificate(&q), Some(3));
        // x^4 + 1 is reducible modulo every prime
        assert_eq!(irreducibility_certificate(&p(&[1, 0, 0, 0, 1])), None);
        // the leading coefficient must survive
        assert!(!is_irreducible_mod(&p(&[1, 1, 3]), 3));
    }

    #[test]
    fn products_are_never_certified() {
        let q = &p(&[1, 1, 1]) * &p(&[2, 0, 1]);
        assert_eq!(irreducibility_certificate(&q), None);
    }

    #[test]
    fn quartic_and_pingpong_polynomials() {
        assert_eq!(irreducibility_certificate(&p(&[1, -1, -1, -1, 1])), Some(2));
        let twelve = p(&[1, -4, -4, -4, -4, -4, -14, -4, -4, -4, -4, -4, 1]);
        assert_eq!(irreducibility_certificate(&twelve), Some(7));
    }
}
