//! Dense polynomials over a prime field F_p, coefficients stored constant term first.

pub(crate) fn trim(mut a: Vec<u32>) -> Vec<u32> {
    while a.last() == Some(&0) {
        a.pop();
    }
    a
}

pub(crate) fn degree(a: &[u32]) -> Option<usize> {
    a.iter().rposition(|&c| c != 0)
}

pub(crate) fn inv_mod_p(a: u32, p: u32) -> u32 {
    debug_assert!(a % p != 0);
    pow_mod(a as u64, (p - 2) as u64, p as u64) as u32
}

pub(crate) fn pow_mod(mut base: u64, mut exp: u64, m: u64) -> u64 {
    let mut acc = 1 % m;
    base %= m;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = acc * base % m;
        }
        base = base * base % m;
        exp >>= 1;
    }
    acc
}

/// Remainder of `a` modulo `b` (b nonzero).
pub(crate) fn rem(a: &[u32], b: &[u32], p: u32) -> Vec<u32> {
    let db = degree(b).expect("division by zero polynomial");
    let lead_inv = inv_mod_p(b[db], p) as u64;
    let mut r: Vec<u32> = a.to_vec();
    let p64 = p as u64;
    while let Some(dr) = degree(&r) {
        if dr < db {
            break;
        }
        let c = r[dr] as u64 * lead_inv % p64;
        let shift = dr - db;
        for (i, &bc) in b.iter().enumerate().take(db + 1) {
            let sub = c * bc as u64 % p64;
            let v = &mut r[i + shift];
            *v = ((*v as u64 + p64 - sub) % p64) as u32;
        }
    }
    trim(r)
}

pub(crate) fn mul(a: &[u32], b: &[u32], p: u32) -> Vec<u32> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let p64 = p as u64;
    let mut out = vec![0u64; a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        if x == 0 {
            continue;
        }
        for (j, &y) in b.iter().enumerate() {
            out[i + j] = (out[i + j] + x as u64 * y as u64) % p64;
        }
    }
    trim(out.into_iter().map(|c| c as u32).collect())
}

/// All monic polynomials of degree `d` over F_p, lowest coefficients varying fastest.
pub(crate) fn monic_of_degree(d: usize, p: u32) -> impl Iterator<Item = Vec<u32>> {
    let count = (p as u64).pow(d as u32);
    (0..count).map(move |mut m| {
        let mut c = Vec::with_capacity(d + 1);
        for _ in 0..d {
            c.push((m % p as u64) as u32);
            m /= p as u64;
        }
        c.push(1);
        c
    })
}

/// Smallest-degree monic factor of `f`, if `f` is reducible. Exhaustive trial division
/// by every monic polynomial of degree at most deg(f)/2.
pub(crate) fn find_factor(f: &[u32], p: u32) -> Option<Vec<u32>> {
    let n = degree(f)?;
    for d in 1..=n / 2 {
        for g in monic_of_degree(d, p) {
            if rem(f, &g, p).is_empty() {
                return Some(g);
            }
        }
    }
    None
}

pub(crate) fn is_prime(n: u32) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2u32;
    while (d as u64) * (d as u64) <= n as u64 {
        if n % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

pub(crate) fn prime_factors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut d = 2u64;
    while d * d <= n {
        if n % d == 0 {
            out.push(d);
            while n % d == 0 {
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

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn x2_plus_1_factors_over_f2() {
        assert_eq!(find_factor(&[1, 0, 1], 2), Some(vec![1, 1]));
        assert_eq!(find_factor(&[1, 1, 1], 2), None);
    }

    #[test]
    fn remainder_matches_hand_division() {
        // x^3 + 2 = (x + 1)(x^2 + 2x + 1) + 1 over F_3
        assert_eq!(rem(&[2, 0, 0, 1], &[1, 1], 3), vec![1]);
    }

    #[test]
    fn primes() {
        let ps: Vec<u32> = (0..30).filter(|&n| is_prime(n)).collect();
        assert_eq!(ps, vec![2, 3, 5, 7, 11, 13, 17, 19, 23, 29]);
        assert_eq!(prime_factors(60), vec![2, 3, 5]);
    }
}
