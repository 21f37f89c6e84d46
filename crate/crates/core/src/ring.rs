//! Finite commutative unital rings given by explicit addition and multiplication tables.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::field::Field;

/// Largest ring that is materialised as tables.
pub const MAX_TABLE_SIZE: u32 = 1 << 12;
/// Largest explicit table whose ring laws are checked over all triples.
pub const MAX_CHECKED_SIZE: u32 = 1 << 8;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RingTable {
    size: u32,
    add: Vec<u32>,
    mul: Vec<u32>,
    neg: Vec<u32>,
    zero: u32,
    one: u32,
}

#[derive(Serialize, Deserialize)]
struct Wire {
    size: u32,
    add: Vec<Vec<u32>>,
    mul: Vec<Vec<u32>>,
    zero: u32,
    one: u32,
}

impl Serialize for RingTable {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let n = self.size as usize;
        Wire {
            size: self.size,
            add: self.add.chunks(n).map(<[u32]>::to_vec).collect(),
            mul: self.mul.chunks(n).map(<[u32]>::to_vec).collect(),
            zero: self.zero,
            one: self.one,
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for RingTable {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let w = Wire::deserialize(d)?;
        RingTable::from_tables(w.size, &w.add, &w.mul, w.zero, w.one).map_err(serde::de::Error::custom)
    }
}

impl RingTable {
    /// Validates explicit tables against the commutative unital ring laws.
    pub fn from_tables(size: u32, add: &[Vec<u32>], mul: &[Vec<u32>], zero: u32, one: u32) -> Result<RingTable> {
        if size == 0 {
            return Err(Error::AxiomViolation("empty ring".into()));
        }
        if size > MAX_CHECKED_SIZE {
            return Err(Error::TooLarge {
                what: "explicit ring table".into(),
                size: size as u64,
                bound: MAX_CHECKED_SIZE as u64,
            });
        }
        let n = size as usize;
        let flat = |t: &[Vec<u32>], name: &str| -> Result<Vec<u32>> {
            if t.len() != n || t.iter().any(|r| r.len() != n) {
                return Err(Error::AxiomViolation(format!("{name} table is not {n}x{n}")));
            }
            if t.iter().flatten().any(|&x| x >= size) {
                return Err(Error::AxiomViolation(format!("{name} table entry out of range")));
            }
            Ok(t.concat())
        };
        if zero >= size || one >= size {
            return Err(Error::AxiomViolation("zero/one out of range".into()));
        }
        let add = flat(add, "add")?;
        let mul = flat(mul, "mul")?;
        let neg = negation(size, &add, zero)?;
        let r = RingTable {
            size,
            add,
            mul,
            neg,
            zero,
            one,
        };
        r.check_laws()?;
        Ok(r)
    }

    /// Z/mZ.
    pub fn zmod(m: u32) -> Result<RingTable> {
        if m == 0 || m > MAX_TABLE_SIZE {
            return Err(Error::TooLarge {
                what: "Z/mZ".into(),
                size: m as u64,
                bound: MAX_TABLE_SIZE as u64,
            });
        }
        let n = m as usize;
        let mut add = Vec::with_capacity(n * n);
        let mut mul = Vec::with_capacity(n * n);
        for a in 0..m {
            for b in 0..m {
                add.push((a + b) % m);
                mul.push(((a as u64 * b as u64) % m as u64) as u32);
            }
        }
        let neg = (0..m).map(|a| (m - a) % m).collect();
        Ok(RingTable {
            size: m,
            add,
            mul,
            neg,
            zero: 0,
            one: 1 % m,
        })
    }

    /// The tables of a finite field; element `i` is the field element `Elem(i)`.
    pub fn from_field(f: &Field) -> Result<RingTable> {
        if f.order() > MAX_TABLE_SIZE {
            return Err(Error::TooLarge {
                what: "field table".into(),
                size: f.order() as u64,
                bound: MAX_TABLE_SIZE as u64,
            });
        }
        let mut add = Vec::new();
        let mut mul = Vec::new();
        for a in f.elements() {
            for b in f.elements() {
                add.push(f.add(a, b).0);
                mul.push(f.mul(a, b).0);
            }
        }
        let neg = f.elements().map(|a| f.neg(a).0).collect();
        Ok(RingTable {
            size: f.order(),
            add,
            mul,
            neg,
            zero: 0,
            one: 1,
        })
    }

    /// Direct product; element `(x, y)` has index `x * |B| + y`.
    pub fn product(a: &RingTable, b: &RingTable) -> Result<RingTable> {
        let size = a.size as u64 * b.size as u64;
        if size > MAX_TABLE_SIZE as u64 {
            return Err(Error::TooLarge {
                what: "product ring".into(),
                size,
                bound: MAX_TABLE_SIZE as u64,
            });
        }
        let enc = |x: u32, y: u32| x * b.size + y;
        let mut add = Vec::new();
        let mut mul = Vec::new();
        for u in 0..size as u32 {
            for v in 0..size as u32 {
                let (x1, y1) = (u / b.size, u % b.size);
                let (x2, y2) = (v / b.size, v % b.size);
                add.push(enc(a.add(x1, x2), b.add(y1, y2)));
                mul.push(enc(a.mul(x1, x2), b.mul(y1, y2)));
            }
        }
        let neg = (0..size as u32).map(|u| enc(a.neg(u / b.size), b.neg(u % b.size))).collect();
        Ok(RingTable {
            size: size as u32,
            add,
            mul,
            neg,
            zero: enc(a.zero, b.zero),
            one: enc(a.one, b.one),
        })
    }

    /// Quotient tables on the given coset representatives. `class_of[x]` is the index of
    /// the coset containing `x`. Well-definedness is checked.
    pub(crate) fn quotient(&self, reps: &[u32], class_of: &[u32]) -> Result<RingTable> {
        let m = reps.len();
        let mut add = vec![0; m * m];
        let mut mul = vec![0; m * m];
        for x in 0..self.size {
            for y in 0..self.size {
                let (cx, cy) = (class_of[x as usize] as usize, class_of[y as usize] as usize);
                let s = class_of[self.add(x, y) as usize];
                let p = class_of[self.mul(x, y) as usize];
                if x == reps[cx] && y == reps[cy] {
                    add[cx * m + cy] = s;
                    mul[cx * m + cy] = p;
                }
            }
        }
        for x in 0..self.size {
            for y in 0..self.size {
                let (cx, cy) = (class_of[x as usize] as usize, class_of[y as usize] as usize);
                if add[cx * m + cy] != class_of[self.add(x, y) as usize]
                    || mul[cx * m + cy] != class_of[self.mul(x, y) as usize]
                {
                    return Err(Error::NotAnIdeal(format!(
                        "quotient operations not well defined at ({x}, {y})"
                    )));
                }
            }
        }
        let neg = (0..m)
            .map(|c| class_of[self.neg(reps[c]) as usize])
            .collect();
        Ok(RingTable {
            size: m as u32,
            add,
            mul,
            neg,
            zero: class_of[self.zero as usize],
            one: class_of[self.one as usize],
        })
    }

    pub fn size(&self) -> u32 {
        self.size
    }

    pub fn zero(&self) -> u32 {
        self.zero
    }

    pub fn one(&self) -> u32 {
        self.one
    }

    pub fn add(&self, a: u32, b: u32) -> u32 {
        self.add[(a * self.size + b) as usize]
    }

    pub fn mul(&self, a: u32, b: u32) -> u32 {
        self.mul[(a * self.size + b) as usize]
    }

    pub fn neg(&self, a: u32) -> u32 {
        self.neg[a as usize]
    }

    pub fn sub(&self, a: u32, b: u32) -> u32 {
        self.add(a, self.neg(b))
    }

    /// `k * x` for an integer `k`.
    pub fn scale(&self, k: i64, x: u32) -> u32 {
        let base = if k < 0 { self.neg(x) } else { x };
        let mut acc = self.zero;
        for _ in 0..k.unsigned_abs() {
            acc = self.add(acc, base);
        }
        acc
    }

    /// Additive order of 1, i.e. the characteristic.
    pub fn characteristic(&self) -> u32 {
        let mut acc = self.one;
        let mut k = 1;
        while acc != self.zero {
            acc = self.add(acc, self.one);
            k += 1;
        }
        k
    }

    pub fn elements(&self) -> impl Iterator<Item = u32> {
        0..self.size
    }

    pub fn is_unit(&self, a: u32) -> bool {
        self.elements().any(|b| self.mul(a, b) == self.one)
    }

    /// Checks commutativity, associativity, distributivity and the identities over all
    /// pairs and triples.
    pub fn check_laws(&self) -> Result<()> {
        let z = self.zero;
        let o = self.one;
        for a in self.elements() {
            if self.add(a, z) != a {
                return Err(Error::AxiomViolation(format!("{a} + 0 != {a}")));
            }
            if self.mul(a, o) != a {
                return Err(Error::AxiomViolation(format!("{a} * 1 != {a}")));
            }
            for b in self.elements() {
                if self.add(a, b) != self.add(b, a) {
                    return Err(Error::AxiomViolation(format!("addition not commutative at ({a}, {b})")));
                }
                if self.mul(a, b) != self.mul(b, a) {
                    return Err(Error::AxiomViolation(format!(
                        "multiplication not commutative at ({a}, {b})"
                    )));
                }
                for c in self.elements() {
                    if self.add(self.add(a, b), c) != self.add(a, self.add(b, c)) {
                        return Err(Error::AxiomViolation(format!(
                            "addition not associative at ({a}, {b}, {c})"
                        )));
                    }
                    if self.mul(self.mul(a, b), c) != self.mul(a, self.mul(b, c)) {
                        return Err(Error::AxiomViolation(format!(
                            "multiplication not associative at ({a}, {b}, {c})"
                        )));
                    }
                    if self.mul(a, self.add(b, c)) != self.add(self.mul(a, b), self.mul(a, c)) {
                        return Err(Error::AxiomViolation(format!(
                            "distributivity fails at ({a}, {b}, {c})"
                        )));
                    }
                }
            }
        }
        Ok(())
    }
}

/// A finite commutative ring as tables, remembering the field it came from (if any).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiniteRing {
    pub table: RingTable,
    pub field: Option<Field>,
}

impl FiniteRing {
    pub fn from_field(f: &Field) -> Result<FiniteRing> {
        Ok(FiniteRing {
            table: RingTable::from_field(f)?,
            field: Some(f.clone()),
        })
    }

    pub fn from_table(table: RingTable) -> FiniteRing {
        FiniteRing { table, field: None }
    }

    pub fn zmod(m: u32) -> Result<FiniteRing> {
        Ok(FiniteRing::from_table(RingTable::zmod(m)?))
    }

    pub fn size(&self) -> u32 {
        self.table.size()
    }

    /// Display form of an element: a polynomial in `t` for fields, the index otherwise.
    pub fn fmt(&self, x: u32) -> String {
        match &self.field {
            Some(f) => f.fmt_elem(crate::field::Elem(x)),
            None => x.to_string(),
        }
    }

    pub fn name(&self) -> String {
        match &self.field {
            Some(f) => f.name(),
            None => format!("ring of order {}", self.size()),
        }
    }
}

impl Serialize for FiniteRing {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        match &self.field {
            Some(f) => f.serialize(s),
            None => self.table.serialize(s),
        }
    }
}

impl<'de> Deserialize<'de> for FiniteRing {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        #[derive(Deserialize)]
        #[serde(untagged)]
        enum Wire {
            Field(Field),
            Zmod { zmod: u32 },
            Table(RingTable),
        }
        let r = match Wire::deserialize(d)? {
            Wire::Field(f) => FiniteRing::from_field(&f),
            Wire::Zmod { zmod } => FiniteRing::zmod(zmod),
            Wire::Table(t) => Ok(FiniteRing::from_table(t)),
        };
        r.map_err(serde::de::Error::custom)
    }
}

fn negation(size: u32, add: &[u32], zero: u32) -> Result<Vec<u32>> {
    (0..size)
        .map(|a| {
            (0..size)
                .find(|&b| add[(a * size + b) as usize] == zero)
                .ok_or_else(|| Error::AxiomViolation(format!("{a} has no additive inverse")))
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::make_field;

    #[test]
    fn z4_and_f4() {
        let z4 = RingTable::zmod(4).unwrap();
        assert_eq!(z4.size(), 4);
        assert_eq!(z4.characteristic(), 4);
        z4.check_laws().unwrap();
        let f4 = RingTable::from_field(&make_field(2, 2, None).unwrap()).unwrap();
        f4.check_laws().unwrap();
        assert_eq!(f4.characteristic(), 2);
        assert!((1..4).all(|a| f4.is_unit(a)));
    }

    #[test]
    fn broken_distributivity_rejected() {
        // 0 * 0 = 1 breaks 0 * (1 + 1) = 0 * 1 + 0 * 1
        let add = vec![vec![0, 1], vec![1, 0]];
        let mul = vec![vec![1, 0], vec![0, 1]];
        assert!(matches!(
            RingTable::from_tables(2, &add, &mul, 0, 1),
            Err(Error::AxiomViolation(_))
        ));
    }

    #[test]
    fn tables_roundtrip_through_json() {
        let z4 = RingTable::zmod(4).unwrap();
        let v = serde_json::to_value(&z4).unwrap();
        assert_eq!(v["add"][3][3], 2);
        let back: RingTable = serde_json::from_value(v).unwrap();
        assert_eq!(back, z4);
    }

    #[test]
    fn product_ring() {
        let f2 = RingTable::zmod(2).unwrap();
        let r = RingTable::product(&f2, &f2).unwrap();
        r.check_laws().unwrap();
        assert_eq!(r.one(), 3);
        assert!(!r.is_unit(2));
    }
}
