//! Finite fields GF(p^n) in the power basis of a fixed monic irreducible modulus.
//!
//! An element is stored as a [`Elem`] index: the coordinates `c_0, ..., c_{n-1}` of
//! `c_0 + c_1 t + ... + c_{n-1} t^{n-1}` packed as `sum c_i p^i`. Multiplication goes
//! through exponent/logarithm tables built from the canonical generator, so fields are
//! capped at [`MAX_FIELD_ORDER`] elements.
//!
//! "Lexicographic" order on elements and polynomials always compares coefficient lists
//! constant term first.

use std::cmp::Ordering;
use std::fmt;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::poly;

pub const MAX_FIELD_ORDER: u64 = 1 << 16;

/// Serializable description of a finite field.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct FieldDesc {
    pub p: u32,
    pub n: u32,
    /// Monic modulus of degree `n`, constant term first.
    pub modulus: Vec<u32>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Elem(pub u32);

impl Elem {
    pub const ZERO: Elem = Elem(0);
    pub const ONE: Elem = Elem(1);

    pub fn is_zero(self) -> bool {
        self.0 == 0
    }
}

struct Inner {
    desc: FieldDesc,
    order: u32,
    /// `pow_p[i] = p^i` for `i <= n`.
    pow_p: Vec<u32>,
    exp: Vec<u32>,
    log: Vec<u32>,
    generator: Elem,
}

#[derive(Clone)]
pub struct Field(Arc<Inner>);

impl PartialEq for Field {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.0, &other.0) || self.0.desc == other.0.desc
    }
}

impl Eq for Field {}

impl fmt::Debug for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "GF({}^{}; {:?})", self.p(), self.degree(), self.modulus())
    }
}

impl Serialize for Field {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.0.desc.serialize(s)
    }
}

impl<'de> Deserialize<'de> for Field {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        #[derive(Deserialize)]
        #[serde(untagged)]
        enum Wire {
            Short(String),
            Full {
                p: u32,
                n: u32,
                #[serde(default)]
                modulus: Option<Vec<u32>>,
            },
        }
        match Wire::deserialize(d)? {
            Wire::Short(s) => Field::parse_shorthand(&s),
            Wire::Full { p, n, modulus } => make_field(p, n, modulus.as_deref()),
        }
        .map_err(serde::de::Error::custom)
    }
}

/// Builds GF(p^n). Without an explicit modulus the lexicographically smallest monic
/// irreducible of degree `n` is used.
pub fn make_field(p: u32, n: u32, modulus: Option<&[u32]>) -> Result<Field> {
    if !poly::is_prime(p) {
        return Err(Error::NotPrime(p));
    }
    if n == 0 {
        return Err(Error::InvalidModulus("degree must be at least 1".into()));
    }
    let order = (p as u64).checked_pow(n).unwrap_or(u64::MAX);
    if order > MAX_FIELD_ORDER {
        return Err(Error::FieldTooLarge {
            order,
            bound: MAX_FIELD_ORDER,
        });
    }
    let modulus = match modulus {
        Some(m) => {
            if m.len() != n as usize + 1 || m[n as usize] != 1 {
                return Err(Error::InvalidModulus(format!(
                    "{m:?} is not monic of degree {n}"
                )));
            }
            if let Some(&c) = m.iter().find(|&&c| c >= p) {
                return Err(Error::InvalidModulus(format!("coefficient {c} not reduced mod {p}")));
            }
            if let Some(factor) = poly::find_factor(m, p) {
                return Err(Error::Reducible {
                    p,
                    modulus: m.to_vec(),
                    factor,
                });
            }
            m.to_vec()
        }
        None => smallest_irreducible(p, n as usize),
    };
    Ok(Field::build(FieldDesc { p, n, modulus }, order as u32))
}

fn smallest_irreducible(p: u32, n: usize) -> Vec<u32> {
    // Constant-term-first lexicographic order: c_0 is the most significant digit.
    let count = (p as u64).pow(n as u32);
    for m in 0..count {
        let mut c = vec![0u32; n + 1];
        let mut r = m;
        for i in (0..n).rev() {
            c[i] = (r % p as u64) as u32;
            r /= p as u64;
        }
        c[n] = 1;
        if n == 1 || (c[0] != 0 && poly::find_factor(&c, p).is_none()) {
            return c;
        }
    }
    unreachable!("irreducible polynomials exist in every degree")
}

impl Field {
    fn build(desc: FieldDesc, order: u32) -> Field {
        let p = desc.p;
        let n = desc.n as usize;
        let pow_p: Vec<u32> = (0..=n).map(|i| p.pow(i as u32)).collect();
        let to_poly = |a: u32| -> Vec<u32> {
            let mut r = a;
            let mut c = Vec::with_capacity(n);
            for _ in 0..n {
                c.push(r % p);
                r /= p;
            }
            poly::trim(c)
        };
        let from_poly = |c: &[u32]| -> u32 { c.iter().zip(&pow_p).map(|(&x, &w)| x * w).sum() };
        let mul_poly = |a: u32, b: u32| -> u32 {
            let prod = poly::mul(&to_poly(a), &to_poly(b), p);
            from_poly(&poly::rem(&prod, &desc.modulus, p))
        };
        let pow_poly = |a: u32, mut e: u64| -> u32 {
            let mut acc = 1u32;
            let mut base = a;
            while e > 0 {
                if e & 1 == 1 {
                    acc = mul_poly(acc, base);
                }
                base = mul_poly(base, base);
                e >>= 1;
            }
            acc
        };

        let group = order as u64 - 1;
        let factors = poly::prime_factors(group);
        let generator = lex_elements(p, n)
            .skip(1)
            .find(|&a| factors.iter().all(|&r| pow_poly(a, group / r) != 1))
            .expect("multiplicative group of a finite field is cyclic");

        let mut exp = vec![0u32; group as usize];
        let mut log = vec![0u32; order as usize];
        let mut cur = 1u32;
        for (k, slot) in exp.iter_mut().enumerate() {
            *slot = cur;
            log[cur as usize] = k as u32;
            cur = mul_poly(cur, generator);
        }
        debug_assert_eq!(cur, 1);

        Field(Arc::new(Inner {
            desc,
            order,
            pow_p,
            exp,
            log,
            generator: Elem(generator),
        }))
    }

    /// Parses shorthand such as `F4` or `GF9` into the canonical field of that order.
    pub fn parse_shorthand(s: &str) -> Result<Field> {
        let digits = s
            .trim()
            .strip_prefix("GF")
            .or_else(|| s.trim().strip_prefix('F'))
            .ok_or_else(|| Error::InvalidInput(format!("unrecognised field shorthand {s:?}")))?;
        let q: u64 = digits
            .parse()
            .map_err(|_| Error::InvalidInput(format!("unrecognised field shorthand {s:?}")))?;
        let (p, n) = prime_power(q)
            .ok_or_else(|| Error::InvalidInput(format!("{q} is not a prime power")))?;
        make_field(p, n, None)
    }

    pub fn desc(&self) -> &FieldDesc {
        &self.0.desc
    }

    pub fn p(&self) -> u32 {
        self.0.desc.p
    }

    pub fn degree(&self) -> u32 {
        self.0.desc.n
    }

    pub fn modulus(&self) -> &[u32] {
        &self.0.desc.modulus
    }

    pub fn order(&self) -> u32 {
        self.0.order
    }

    /// Short display name, e.g. `F16`.
    pub fn name(&self) -> String {
        format!("F{}", self.order())
    }

    pub fn elements(&self) -> impl Iterator<Item = Elem> {
        (0..self.order()).map(Elem)
    }

    pub fn nonzero(&self) -> impl Iterator<Item = Elem> {
        (1..self.order()).map(Elem)
    }

    /// The class of `t` in F_p[t]/(modulus), or `t mod modulus` for n = 1.
    pub fn t(&self) -> Elem {
        if self.degree() == 1 {
            let m0 = self.modulus()[0];
            Elem((self.p() - m0) % self.p())
        } else {
            Elem(self.p())
        }
    }

    pub fn coeffs(&self, a: Elem) -> Vec<u32> {
        let p = self.p();
        let mut r = a.0;
        (0..self.degree())
            .map(|_| {
                let c = r % p;
                r /= p;
                c
            })
            .collect()
    }

    pub fn from_coeffs(&self, c: &[u32]) -> Result<Elem> {
        if c.len() > self.degree() as usize {
            return Err(Error::InvalidInput(format!(
                "{} coefficients for a degree-{} field",
                c.len(),
                self.degree()
            )));
        }
        if let Some(&x) = c.iter().find(|&&x| x >= self.p()) {
            return Err(Error::InvalidInput(format!("coefficient {x} not reduced mod {}", self.p())));
        }
        Ok(Elem(c.iter().zip(&self.0.pow_p).map(|(&x, &w)| x * w).sum()))
    }

    /// The image of an integer under Z -> F_p -> this field.
    pub fn from_int(&self, k: i64) -> Elem {
        Elem(k.rem_euclid(self.p() as i64) as u32)
    }

    pub fn contains(&self, a: Elem) -> bool {
        a.0 < self.order()
    }

    pub fn add(&self, a: Elem, b: Elem) -> Elem {
        let p = self.p();
        if p == 2 {
            return Elem(a.0 ^ b.0);
        }
        let (mut x, mut y) = (a.0, b.0);
        let mut out = 0;
        for &w in &self.0.pow_p[..self.degree() as usize] {
            let d = (x % p + y % p) % p;
            out += d * w;
            x /= p;
            y /= p;
        }
        Elem(out)
    }

    pub fn neg(&self, a: Elem) -> Elem {
        let p = self.p();
        if p == 2 {
            return a;
        }
        let mut x = a.0;
        let mut out = 0;
        for &w in &self.0.pow_p[..self.degree() as usize] {
            out += ((p - x % p) % p) * w;
            x /= p;
        }
        Elem(out)
    }

    pub fn sub(&self, a: Elem, b: Elem) -> Elem {
        self.add(a, self.neg(b))
    }

    pub fn mul(&self, a: Elem, b: Elem) -> Elem {
        if a.is_zero() || b.is_zero() {
            return Elem::ZERO;
        }
        let g = self.order() as u64 - 1;
        let l = (self.0.log[a.0 as usize] as u64 + self.0.log[b.0 as usize] as u64) % g;
        Elem(self.0.exp[l as usize])
    }

    pub fn inv(&self, a: Elem) -> Result<Elem> {
        if a.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let g = self.order() - 1;
        Ok(Elem(self.0.exp[((g - self.0.log[a.0 as usize]) % g) as usize]))
    }

    pub fn div(&self, a: Elem, b: Elem) -> Result<Elem> {
        Ok(self.mul(a, self.inv(b)?))
    }

    /// `a^k`; negative exponents require `a` nonzero.
    pub fn pow(&self, a: Elem, k: i64) -> Result<Elem> {
        if a.is_zero() {
            return match k.cmp(&0) {
                Ordering::Less => Err(Error::DivisionByZero),
                Ordering::Equal => Ok(Elem::ONE),
                Ordering::Greater => Ok(Elem::ZERO),
            };
        }
        let g = self.order() as i64 - 1;
        let l = (self.0.log[a.0 as usize] as i64 * k.rem_euclid(g)).rem_euclid(g);
        Ok(Elem(self.0.exp[l as usize]))
    }

    /// `a^e` for a nonnegative exponent; never fails.
    pub fn pow_u(&self, a: Elem, e: u64) -> Elem {
        if e == 0 {
            return Elem::ONE;
        }
        if a.is_zero() {
            return Elem::ZERO;
        }
        let g = self.order() as u64 - 1;
        let l = self.0.log[a.0 as usize] as u64 * (e % g) % g;
        Elem(self.0.exp[l as usize])
    }

    pub fn square(&self, a: Elem) -> Elem {
        self.mul(a, a)
    }

    /// `a^(p^k)`, with `k` reduced modulo the degree (negative `k` allowed).
    pub fn frobenius(&self, a: Elem, k: i64) -> Elem {
        let k = k.rem_euclid(self.degree() as i64) as u32;
        self.pow_u(a, (self.p() as u64).pow(k))
    }

    /// Square root in characteristic 2, where squaring is a bijection.
    pub fn sqrt_char2(&self, a: Elem) -> Elem {
        debug_assert_eq!(self.p(), 2);
        self.frobenius(a, -1)
    }

    /// Multiplicative order of a nonzero element.
    pub fn mult_order(&self, a: Elem) -> Result<u64> {
        if a.is_zero() {
            return Err(Error::ZeroArgument);
        }
        let g = self.order() as u64 - 1;
        let l = self.0.log[a.0 as usize] as u64;
        Ok(g / gcd(g, l))
    }

    /// The generator of the multiplicative group that is smallest in lexicographic order.
    pub fn find_generator(&self) -> Elem {
        self.0.generator
    }

    /// Brute-force discrete logarithm: the least `k >= 0` with `base^k = x`.
    pub fn dlog(&self, x: Elem, base: Elem) -> Result<u64> {
        if x.is_zero() {
            return Err(Error::ZeroArgument);
        }
        if self.order() as u64 > MAX_FIELD_ORDER {
            return Err(Error::DomainTooLarge {
                what: "dlog".into(),
                size: self.order() as u64,
                bound: MAX_FIELD_ORDER,
            });
        }
        let mut cur = Elem::ONE;
        for k in 0..self.order() as u64 - 1 {
            if cur == x {
                return Ok(k);
            }
            cur = self.mul(cur, base);
        }
        Err(Error::NotInSubgroup)
    }

    /// Compares two elements in lexicographic order of their coefficient lists.
    pub fn lex_cmp(&self, a: Elem, b: Elem) -> Ordering {
        self.coeffs(a).cmp(&self.coeffs(b))
    }

    /// Whether `a` lies in the prime subfield.
    pub fn is_prime_subfield(&self, a: Elem) -> bool {
        a.0 < self.p()
    }

    /// Evaluates a polynomial with prime-field coefficients at `x`.
    pub fn eval_prime_poly(&self, coeffs: &[u32], x: Elem) -> Elem {
        coeffs.iter().rev().fold(Elem::ZERO, |acc, &c| {
            self.add(self.mul(acc, x), self.from_int(c as i64))
        })
    }

    /// Human-readable polynomial form in `t`, e.g. `t^2+2t+1`.
    pub fn fmt_elem(&self, a: Elem) -> String {
        let c = self.coeffs(a);
        let mut terms = Vec::new();
        for (i, &x) in c.iter().enumerate().rev() {
            if x == 0 {
                continue;
            }
            let coeff = if x == 1 && i > 0 { String::new() } else { x.to_string() };
            terms.push(match i {
                0 => coeff,
                1 => format!("{coeff}t"),
                _ => format!("{coeff}t^{i}"),
            });
        }
        if terms.is_empty() {
            "0".into()
        } else {
            terms.join("+")
        }
    }
}

/// Elements of GF(p^n) in lexicographic (constant term first) order.
fn lex_elements(p: u32, n: usize) -> impl Iterator<Item = u32> {
    let count = p.pow(n as u32);
    (0..count).map(move |m| {
        // digit reversal: the most significant digit of m becomes c_0
        let mut r = m;
        let mut out = 0;
        let mut w = 1;
        let mut digits = vec![0u32; n];
        for i in (0..n).rev() {
            digits[i] = r % p;
            r /= p;
        }
        for d in digits {
            out += d * w;
            w *= p;
        }
        out
    })
}

pub(crate) fn gcd(a: u64, b: u64) -> u64 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

pub(crate) fn prime_power(q: u64) -> Option<(u32, u32)> {
    if q < 2 {
        return None;
    }
    let ps = poly::prime_factors(q);
    if ps.len() != 1 {
        return None;
    }
    let p = ps[0];
    let mut n = 0;
    let mut r = q;
    while r > 1 {
        r /= p;
        n += 1;
    }
    Some((p as u32, n))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn f4() -> Field {
        make_field(2, 2, None).unwrap()
    }

    #[test]
    fn default_moduli() {
        assert_eq!(make_field(2, 1, None).unwrap().modulus(), &[0, 1]);
        assert_eq!(f4().modulus(), &[1, 1, 1]);
        // constant-term-first comparison prefers x^3+x^2+1 over x^3+x+1
        assert_eq!(make_field(2, 3, None).unwrap().modulus(), &[1, 0, 1, 1]);
        assert_eq!(make_field(2, 4, None).unwrap().modulus(), &[1, 0, 0, 1, 1]);
        assert_eq!(make_field(3, 2, None).unwrap().modulus(), &[1, 0, 1]);
    }

    #[test]
    fn construction_errors() {
        assert_eq!(make_field(4, 1, None).unwrap_err(), Error::NotPrime(4));
        assert!(matches!(
            make_field(2, 2, Some(&[1, 0, 1])),
            Err(Error::Reducible { factor, .. }) if factor == vec![1, 1]
        ));
        assert!(matches!(make_field(2, 2, Some(&[1, 1, 0])), Err(Error::InvalidModulus(_))));
        assert!(matches!(make_field(2, 17, None), Err(Error::FieldTooLarge { .. })));
    }

    #[test]
    fn f4_arithmetic() {
        let f = f4();
        let t = f.t();
        let t1 = f.add(t, Elem::ONE);
        assert_eq!(f.mul(t, t), t1);
        assert_eq!(f.mul(t, t1), Elem::ONE);
        assert_eq!(f.inv(Elem::ZERO), Err(Error::DivisionByZero));
        assert_eq!(f.frobenius(t, 1), t1);
        assert_eq!(f.frobenius(t, 2), t);
        assert_eq!(f.frobenius(t, -1), t1);
        assert_eq!(f.fmt_elem(t1), "t+1");
    }

    #[test]
    fn generators_and_dlog() {
        assert_eq!(make_field(2, 1, None).unwrap().find_generator(), Elem::ONE);
        let f = f4();
        assert_eq!(f.find_generator(), f.t());
        assert_eq!(make_field(3, 1, None).unwrap().find_generator(), Elem(2));
        let g = f.t();
        assert_eq!(f.dlog(Elem::ONE, g), Ok(0));
        assert_eq!(f.dlog(f.add(g, Elem::ONE), g), Ok(2));
        assert_eq!(f.dlog(Elem::ZERO, g), Err(Error::ZeroArgument));
        assert_eq!(f.dlog(f.t(), Elem::ONE), Err(Error::NotInSubgroup));
    }

    #[test]
    fn shorthand() {
        assert_eq!(Field::parse_shorthand("F9").unwrap(), make_field(3, 2, None).unwrap());
        assert_eq!(Field::parse_shorthand("GF16").unwrap().degree(), 4);
        assert!(Field::parse_shorthand("F6").is_err());
        assert!(Field::parse_shorthand("x").is_err());
    }

    #[test]
    fn prime_field_with_nonstandard_modulus() {
        // F_5 presented as F_5[t]/(t + 2): t = 3
        let f = make_field(5, 1, Some(&[2, 1])).unwrap();
        assert_eq!(f.t(), Elem(3));
    }

    #[test]
    fn json_shape() {
        let v = serde_json::to_value(f4()).unwrap();
        assert_eq!(v, serde_json::json!({"p": 2, "n": 2, "modulus": [1, 1, 1]}));
        let back: Field = serde_json::from_value(v).unwrap();
        assert_eq!(back, f4());
        let short: Field = serde_json::from_str("\"F4\"").unwrap();
        assert_eq!(short, f4());
    }
}
