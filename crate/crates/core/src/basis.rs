//! Prime-field basis form of a quadratic map between finite fields:
//! `q(sum l_i e_i) = sum l_i^2 q(e_i) + sum_{i<j} l_i l_j f(e_i, e_j)` for `l_i` in F_p,
//! where `e_i = t^i` is the power basis of K.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::field::{Elem, Field};
use crate::qmap::QuadMapTable;
use crate::ring::FiniteRing;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QuadMapBasis {
    pub k: Field,
    pub l: Field,
    /// `q(e_i)`.
    pub basis_vals: Vec<Elem>,
    /// Row `i` holds `f(e_i, e_j)` for `j > i`.
    pub gram: Vec<Vec<Elem>>,
}

impl QuadMapBasis {
    pub fn new(k: &Field, l: &Field, basis_vals: Vec<Elem>, gram: Vec<Vec<Elem>>) -> Result<QuadMapBasis> {
        if k.p() != l.p() {
            return Err(Error::CharMismatch(k.p(), l.p()));
        }
        let n = k.degree() as usize;
        if basis_vals.len() != n || gram.len() != n || gram.iter().enumerate().any(|(i, r)| r.len() != n - 1 - i)
        {
            return Err(Error::InvalidInput(format!(
                "basis form needs {n} values and an upper-triangular gram of order {n}"
            )));
        }
        if basis_vals.iter().chain(gram.iter().flatten()).any(|&x| !l.contains(x)) {
            return Err(Error::InvalidInput("basis entry outside the codomain".into()));
        }
        Ok(QuadMapBasis {
            k: k.clone(),
            l: l.clone(),
            basis_vals,
            gram,
        })
    }

    pub fn dim(&self) -> usize {
        self.basis_vals.len()
    }

    /// `f(e_i, e_j)` for any `i, j`; the diagonal is `2 q(e_i)`.
    pub fn form_entry(&self, i: usize, j: usize) -> Elem {
        use std::cmp::Ordering::*;
        match i.cmp(&j) {
            Less => self.gram[i][j - i - 1],
            Greater => self.gram[j][i - j - 1],
            Equal => self.l.add(self.basis_vals[i], self.basis_vals[i]),
        }
    }

    /// Full symmetric matrix of `f` on the power basis.
    pub fn form_matrix(&self) -> Vec<Vec<Elem>> {
        let n = self.dim();
        (0..n).map(|i| (0..n).map(|j| self.form_entry(i, j)).collect()).collect()
    }

    /// Evaluates the expansion at prime-field coordinates lifted into L.
    pub fn eval_coords(&self, coords: &[u32]) -> Elem {
        let l = &self.l;
        let lam: Vec<Elem> = coords.iter().map(|&c| l.from_int(c as i64)).collect();
        let mut acc = Elem::ZERO;
        for i in 0..self.dim() {
            acc = l.add(acc, l.mul(l.square(lam[i]), self.basis_vals[i]));
            for j in i + 1..self.dim() {
                acc = l.add(acc, l.mul(l.mul(lam[i], lam[j]), self.gram[i][j - i - 1]));
            }
        }
        acc
    }

    pub fn eval(&self, a: Elem) -> Elem {
        self.eval_coords(&self.k.coeffs(a))
    }

    pub fn to_table(&self) -> Result<QuadMapTable> {
        QuadMapTable::from_fn(&self.k, &self.l, |a| self.eval(a))
    }

    /// Reads off `q(e_i)` and `f(e_i, e_j)` and checks that the expansion reproduces
    /// every table value.
    pub fn from_table(q: &QuadMapTable) -> Result<QuadMapBasis> {
        let (k, l) = match (q.domain_field(), q.codomain_field()) {
            (Some(k), Some(l)) => (k.clone(), l.clone()),
            _ => return Err(Error::InvalidInput("basis form needs field domain and codomain".into())),
        };
        if k.p() != l.p() {
            return Err(Error::CharMismatch(k.p(), l.p()));
        }
        let n = k.degree() as usize;
        let e: Vec<u32> = (0..n).map(|i| k.p().pow(i as u32)).collect();
        let basis_vals = e.iter().map(|&x| Elem(q.eval(x))).collect();
        let gram = (0..n)
            .map(|i| (i + 1..n).map(|j| Elem(q.form(e[i], e[j]))).collect())
            .collect();
        let b = QuadMapBasis::new(&k, &l, basis_vals, gram)?;
        for a in k.elements() {
            let expanded = b.eval(a);
            if expanded.0 != q.eval(a.0) {
                return Err(Error::NotFQuadratic(format!(
                    "q({}) = {} but the expansion gives {}",
                    k.fmt_elem(a),
                    l.fmt_elem(Elem(q.eval(a.0))),
                    l.fmt_elem(expanded)
                )));
            }
        }
        Ok(b)
    }
}

impl QuadMapTable {
    pub fn to_basis(&self) -> Result<QuadMapBasis> {
        QuadMapBasis::from_table(self)
    }
}

#[derive(Serialize, Deserialize)]
struct Wire {
    #[serde(rename = "K")]
    k: Field,
    #[serde(rename = "L")]
    l: Field,
    basis_vals: Vec<Vec<u32>>,
    gram: Vec<Vec<Vec<u32>>>,
}

impl Serialize for QuadMapBasis {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        Wire {
            k: self.k.clone(),
            l: self.l.clone(),
            basis_vals: self.basis_vals.iter().map(|&x| self.l.coeffs(x)).collect(),
            gram: self
                .gram
                .iter()
                .map(|r| r.iter().map(|&x| self.l.coeffs(x)).collect())
                .collect(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for QuadMapBasis {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let w = Wire::deserialize(d)?;
        let conv = |c: &Vec<u32>| w.l.from_coeffs(c);
        let build = || -> Result<QuadMapBasis> {
            let vals = w.basis_vals.iter().map(conv).collect::<Result<Vec<_>>>()?;
            let gram = w
                .gram
                .iter()
                .map(|r| r.iter().map(conv).collect::<Result<Vec<_>>>())
                .collect::<Result<Vec<_>>>()?;
            QuadMapBasis::new(&w.k, &w.l, vals, gram)
        };
        build().map_err(serde::de::Error::custom)
    }
}

impl FiniteRing {
    pub fn is_field(&self) -> bool {
        self.field.is_some()
    }
}
