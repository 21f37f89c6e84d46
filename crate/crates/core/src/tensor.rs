//! Extension of scalars: the commutative L-algebra `L (x)_{F_p} K`, the extended map
//! `q~(sum l_i a_i) = sum l_i^2 q(a_i) + sum_{i<j} l_i l_j f(a_i, a_j)`, its radical and the
//! quotient algebra carrying the induced norm.

use std::collections::HashSet;

use serde::{Deserialize, Serialize};

use crate::basis::QuadMapBasis;
use crate::error::{Error, Result};
use crate::field::{Elem, Field};
use crate::linalg;
use crate::report::{scan_tuples, witness, CheckConfig, CheckMode, Report, Witness};

/// Largest algebra that is enumerated element by element.
pub const MAX_ENUMERATED: u64 = 1 << 16;

/// A finite-dimensional commutative L-algebra given by structure constants.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Algebra {
    pub l: Field,
    /// `consts[i][j]` = coordinates of `b_i * b_j`.
    pub consts: Vec<Vec<Vec<Elem>>>,
    pub unit: Vec<Elem>,
}

pub type Vector = Vec<Elem>;

impl Algebra {
    pub fn dim(&self) -> usize {
        self.unit.len()
    }

    pub fn size(&self) -> u64 {
        (self.l.order() as u64).saturating_pow(self.dim() as u32)
    }

    pub fn zero(&self) -> Vector {
        vec![Elem::ZERO; self.dim()]
    }

    pub fn basis_vector(&self, i: usize) -> Vector {
        let mut v = self.zero();
        v[i] = Elem::ONE;
        v
    }

    pub fn add(&self, x: &[Elem], y: &[Elem]) -> Vector {
        linalg::add_vec(&self.l, x, y)
    }

    pub fn sub(&self, x: &[Elem], y: &[Elem]) -> Vector {
        x.iter().zip(y).map(|(&a, &b)| self.l.sub(a, b)).collect()
    }

    pub fn scale(&self, c: Elem, x: &[Elem]) -> Vector {
        linalg::scale_vec(&self.l, c, x)
    }

    pub fn mul(&self, x: &[Elem], y: &[Elem]) -> Vector {
        let f = &self.l;
        let mut out = self.zero();
        for (i, &xi) in x.iter().enumerate() {
            if xi.is_zero() {
                continue;
            }
            for (j, &yj) in y.iter().enumerate() {
                if yj.is_zero() {
                    continue;
                }
                let c = f.mul(xi, yj);
                for (o, &s) in out.iter_mut().zip(&self.consts[i][j]) {
                    *o = f.add(*o, f.mul(c, s));
                }
            }
        }
        out
    }

    /// Element with the given index (base-|L| digits, first coordinate least significant).
    pub fn element(&self, mut idx: u64) -> Vector {
        let q = self.l.order() as u64;
        (0..self.dim())
            .map(|_| {
                let d = idx % q;
                idx /= q;
                Elem(d as u32)
            })
            .collect()
    }

    pub fn index(&self, v: &[Elem]) -> u64 {
        let q = self.l.order() as u64;
        v.iter().rev().fold(0, |acc, x| acc * q + x.0 as u64)
    }

    fn ensure_enumerable(&self, what: &str) -> Result<()> {
        if self.size() > MAX_ENUMERATED {
            return Err(Error::TooLarge {
                what: what.into(),
                size: self.size(),
                bound: MAX_ENUMERATED,
            });
        }
        Ok(())
    }

    pub fn elements(&self) -> impl Iterator<Item = Vector> + '_ {
        (0..self.size()).map(|i| self.element(i))
    }

    /// Commutativity, associativity and the unit on basis elements; by multilinearity
    /// this decides the laws for all elements.
    pub fn check_laws(&self) -> Option<String> {
        let n = self.dim();
        let b: Vec<Vector> = (0..n).map(|i| self.basis_vector(i)).collect();
        for i in 0..n {
            if self.mul(&self.unit, &b[i]) != b[i] {
                return Some(format!("unit fails on basis element {i}"));
            }
            for j in 0..n {
                if self.mul(&b[i], &b[j]) != self.mul(&b[j], &b[i]) {
                    return Some(format!("b{i} b{j} != b{j} b{i}"));
                }
                for k in 0..n {
                    let lhs = self.mul(&self.mul(&b[i], &b[j]), &b[k]);
                    let rhs = self.mul(&b[i], &self.mul(&b[j], &b[k]));
                    if lhs != rhs {
                        return Some(format!("(b{i} b{j}) b{k} != b{i} (b{j} b{k})"));
                    }
                }
            }
        }
        None
    }

    /// All `x` with `x^2 = x` other than 0 and 1.
    pub fn nontrivial_idempotents(&self) -> Result<Vec<Vector>> {
        self.ensure_enumerable("idempotent search")?;
        let zero = self.zero();
        Ok(self
            .elements()
            .filter(|x| *x != zero && *x != self.unit && self.mul(x, x) == *x)
            .collect())
    }

    /// Some nonzero `x, y` with `xy = 0`, if the algebra has zero divisors.
    pub fn zero_divisor(&self) -> Result<Option<(Vector, Vector)>> {
        self.ensure_enumerable("zero-divisor search")?;
        let zero = self.zero();
        for x in self.elements().skip(1) {
            // x is a zero divisor iff multiplication by x has a kernel
            let rows: Vec<Vector> = (0..self.dim())
                .map(|i| {
                    let col: Vec<Vector> = (0..self.dim()).map(|j| self.mul(&x, &self.basis_vector(j))).collect();
                    col.iter().map(|c| c[i]).collect()
                })
                .collect();
            if let Some(y) = linalg::kernel(&self.l, &rows, self.dim()).into_iter().next() {
                debug_assert_eq!(self.mul(&x, &y), zero);
                return Ok(Some((x, y)));
            }
        }
        Ok(None)
    }
}

/// `L (x)_{F_p} K` with basis `1 (x) t^i`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TensorAlgebra {
    pub k: Field,
    pub alg: Algebra,
}

pub fn build_tensor(k: &Field, l: &Field) -> Result<TensorAlgebra> {
    if k.p() != l.p() {
        return Err(Error::CharMismatch(k.p(), l.p()));
    }
    let n = k.degree() as usize;
    let lift = |a: Elem| -> Vector { k.coeffs(a).iter().map(|&c| l.from_int(c as i64)).collect() };
    let e: Vec<Elem> = (0..n).map(|i| Elem(k.p().pow(i as u32))).collect();
    let consts = (0..n)
        .map(|i| (0..n).map(|j| lift(k.mul(e[i], e[j]))).collect())
        .collect();
    Ok(TensorAlgebra {
        k: k.clone(),
        alg: Algebra {
            l: l.clone(),
            consts,
            unit: lift(Elem::ONE),
        },
    })
}

impl TensorAlgebra {
    /// `x -> 1 (x) x`.
    pub fn embed(&self, x: Elem) -> Vector {
        let l = &self.alg.l;
        self.k.coeffs(x).iter().map(|&c| l.from_int(c as i64)).collect()
    }

    /// Checks the algebra laws and that `x -> 1 (x) x` is a ring embedding of K.
    pub fn check(&self) -> Report {
        let mut rep = Report::new();
        let n = self.alg.dim() as u64;
        let w = self.alg.check_laws().map(|d| witness("algebra_laws", &[], d));
        rep.record("algebra_laws", CheckMode::Exhaustive, n.pow(3), w);
        let k = &self.k;
        let w = scan_tuples(k.order(), 2, |t| {
            let (a, b) = (Elem(t[0]), Elem(t[1]));
            let sum_ok = self.embed(k.add(a, b)) == self.alg.add(&self.embed(a), &self.embed(b));
            let mul_ok = self.embed(k.mul(a, b)) == self.alg.mul(&self.embed(a), &self.embed(b));
            (!(sum_ok && mul_ok)).then(|| witness("scalar_embedding", t, "1 (x) - is not a ring map".into()))
        });
        let injective = k.nonzero().all(|a| self.embed(a) != self.alg.zero());
        let w = w.or_else(|| (!injective).then(|| witness("scalar_embedding", &[], "not injective".into())));
        rep.record("scalar_embedding", CheckMode::Exhaustive, (k.order() as u64).pow(2), w);
        rep
    }
}

/// A quadratic form on L^n: `Q(x) = sum x_i^2 vals_i + sum_{i<j} x_i x_j upper[i][j-i-1]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QuadForm {
    pub l: Field,
    pub vals: Vec<Elem>,
    pub upper: Vec<Vec<Elem>>,
}

impl QuadForm {
    pub fn dim(&self) -> usize {
        self.vals.len()
    }

    pub fn eval(&self, x: &[Elem]) -> Elem {
        let f = &self.l;
        let mut acc = Elem::ZERO;
        for i in 0..self.dim() {
            if x[i].is_zero() {
                continue;
            }
            acc = f.add(acc, f.mul(f.square(x[i]), self.vals[i]));
            for j in i + 1..self.dim() {
                acc = f.add(acc, f.mul(f.mul(x[i], x[j]), self.upper[i][j - i - 1]));
            }
        }
        acc
    }

    /// Gram entry `f(b_i, b_j)`; the diagonal is `2 Q(b_i)`.
    pub fn entry(&self, i: usize, j: usize) -> Elem {
        use std::cmp::Ordering::*;
        match i.cmp(&j) {
            Less => self.upper[i][j - i - 1],
            Greater => self.upper[j][i - j - 1],
            Equal => self.l.add(self.vals[i], self.vals[i]),
        }
    }

    pub fn gram_matrix(&self) -> Vec<Vector> {
        let n = self.dim();
        (0..n).map(|i| (0..n).map(|j| self.entry(i, j)).collect()).collect()
    }

    /// `f(x, y) = Q(x + y) - Q(x) - Q(y)`.
    pub fn polar(&self, x: &[Elem], y: &[Elem]) -> Elem {
        let f = &self.l;
        let s = linalg::add_vec(f, x, y);
        f.sub(f.sub(self.eval(&s), self.eval(x)), self.eval(y))
    }

    /// `sum_{i,j} x_i y_j f(b_i, b_j)`.
    pub fn bilinear(&self, x: &[Elem], y: &[Elem]) -> Elem {
        let f = &self.l;
        let mut acc = Elem::ZERO;
        for i in 0..self.dim() {
            for j in 0..self.dim() {
                acc = f.add(acc, f.mul(f.mul(x[i], y[j]), self.entry(i, j)));
            }
        }
        acc
    }

    pub fn polar_is_zero(&self) -> bool {
        (0..self.dim()).all(|i| (0..self.dim()).all(|j| self.entry(i, j).is_zero()))
    }

    /// Restriction to the coordinate subspace spanned by the given basis vectors.
    pub fn restrict(&self, coords: &[usize]) -> QuadForm {
        QuadForm {
            l: self.l.clone(),
            vals: coords.iter().map(|&c| self.vals[c]).collect(),
            upper: coords
                .iter()
                .enumerate()
                .map(|(a, &i)| coords[a + 1..].iter().map(|&j| self.entry(i, j)).collect())
                .collect(),
        }
    }
}

/// `q~` on the tensor algebra.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExtendedQuadMap {
    pub algebra: TensorAlgebra,
    pub form: QuadForm,
}

pub fn extend(q: &QuadMapBasis) -> Result<ExtendedQuadMap> {
    let algebra = build_tensor(&q.k, &q.l)?;
    Ok(ExtendedQuadMap {
        algebra,
        form: QuadForm {
            l: q.l.clone(),
            vals: q.basis_vals.clone(),
            upper: q.gram.clone(),
        },
    })
}

/// An L-subspace of an algebra in reduced row echelon form.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LinearSubspace {
    pub ambient_dim: usize,
    pub basis: Vec<Vector>,
    pub pivots: Vec<usize>,
}

impl LinearSubspace {
    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn reduce(&self, f: &Field, v: &[Elem]) -> Vector {
        linalg::reduce(f, &self.basis, &self.pivots, v)
    }

    pub fn contains(&self, f: &Field, v: &[Elem]) -> bool {
        self.reduce(f, v).iter().all(|x| x.is_zero())
    }

    /// Coordinates not used as pivots; their basis vectors span a complement.
    pub fn complement(&self) -> Vec<usize> {
        (0..self.ambient_dim).filter(|c| !self.pivots.contains(c)).collect()
    }
}

/// `M = A / rad(q~)` with the induced norm `N(x + rad) = q~(x)`.
#[derive(Clone, Debug)]
pub struct QuotientAlgebra {
    pub alg: Algebra,
    pub norm: QuadForm,
    pub radical: LinearSubspace,
    /// Coordinates of A that carry the coordinates of M.
    pub complement: Vec<usize>,
    pub checks: Report,
}

impl QuotientAlgebra {
    pub fn dim(&self) -> usize {
        self.alg.dim()
    }

    /// The class of `v` in M.
    pub fn project(&self, v: &[Elem]) -> Vector {
        let r = self.radical.reduce(&self.alg.l, v);
        self.complement.iter().map(|&c| r[c]).collect()
    }

    pub fn lift(&self, m: &[Elem]) -> Vector {
        let mut v = vec![Elem::ZERO; self.radical.ambient_dim];
        for (&c, &x) in self.complement.iter().zip(m) {
            v[c] = x;
        }
        v
    }
}

impl ExtendedQuadMap {
    pub fn alg(&self) -> &Algebra {
        &self.algebra.alg
    }

    pub fn eval(&self, x: &[Elem]) -> Elem {
        self.form.eval(x)
    }

    /// Multiplicativity of `q~`, agreement of its polarization with the bilinear
    /// expansion, and `q~(c x) = c^2 q~(x)`. Exhaustive when the pair count fits the
    /// bound; otherwise decided on a 3-point grid per coordinate, which is complete for
    /// identities of degree at most 2 in each coordinate.
    pub fn verify_extension(&self, cfg: &CheckConfig) -> Result<Report> {
        let alg = self.alg();
        let l = &alg.l;
        let n = alg.dim();
        let size = alg.size();
        let (points, mode): (Vec<Vector>, CheckMode) = if size.saturating_mul(size) <= cfg.exhaustive_bound {
            (alg.elements().collect(), CheckMode::Exhaustive)
        } else if l.order() >= 3 {
            // every coordinate ranges over {0, 1, 2}
            let pts = (0..3u64.pow(n as u32))
                .map(|i| {
                    let mut r = i;
                    (0..n)
                        .map(|_| {
                            let d = r % 3;
                            r /= 3;
                            Elem(d as u32)
                        })
                        .collect()
                })
                .collect();
            (pts, CheckMode::Grid)
        } else {
            return Err(Error::TooLarge {
                what: "extension check".into(),
                size,
                bound: cfg.exhaustive_bound,
            });
        };
        let m = points.len() as u32;
        let fmt = |v: &[Elem]| -> String {
            let parts: Vec<String> = v.iter().map(|&x| l.fmt_elem(x)).collect();
            format!("({})", parts.join(", "))
        };
        let mut rep = Report::new();

        let w = scan_tuples(m, 2, |t| {
            let (x, y) = (&points[t[0] as usize], &points[t[1] as usize]);
            let lhs = self.eval(&alg.mul(x, y));
            let rhs = l.mul(self.eval(x), self.eval(y));
            (lhs != rhs).then(|| {
                ext_witness("multiplicative", x, y, alg, format!(
                    "q~({} {}) = {} but q~ q~ = {}",
                    fmt(x),
                    fmt(y),
                    l.fmt_elem(lhs),
                    l.fmt_elem(rhs)
                ))
            })
        });
        rep.record("multiplicative", mode, (m as u64).pow(2), w);

        let w = scan_tuples(m, 2, |t| {
            let (x, y) = (&points[t[0] as usize], &points[t[1] as usize]);
            let lhs = self.form.polar(x, y);
            let rhs = self.form.bilinear(x, y);
            (lhs != rhs).then(|| {
                ext_witness("bilinear", x, y, alg, format!(
                    "f~{}{} = {} but the bilinear expansion gives {}",
                    fmt(x),
                    fmt(y),
                    l.fmt_elem(lhs),
                    l.fmt_elem(rhs)
                ))
            })
        });
        rep.record("bilinear", mode, (m as u64).pow(2), w);

        let mut w = None;
        'outer: for x in &points {
            for c in l.elements() {
                let lhs = self.eval(&alg.scale(c, x));
                let rhs = l.mul(l.square(c), self.eval(x));
                if lhs != rhs {
                    w = Some(ext_witness("quadratic_scaling", x, x, alg, format!(
                        "q~({} {}) != {}^2 q~",
                        l.fmt_elem(c),
                        fmt(x),
                        l.fmt_elem(c)
                    )));
                    break 'outer;
                }
            }
        }
        rep.record("quadratic_scaling", mode, m as u64 * l.order() as u64, w);
        Ok(rep)
    }

    /// `q~(1 (x) x) = q(x)` for every `x` in K.
    pub fn restricts_to(&self, q: &QuadMapBasis) -> bool {
        self.algebra.k.elements().all(|x| self.eval(&self.algebra.embed(x)) == q.eval(x))
    }

    /// `rad(q~) = {v : f~(v, -) = 0, q~(v) = 0}`, found by enumerating the algebra and
    /// checked to be an L-subspace and an ideal.
    pub fn radical_ext(&self) -> Result<LinearSubspace> {
        let alg = self.alg();
        alg.ensure_enumerable("radical enumeration")?;
        let l = &alg.l;
        let n = alg.dim();
        let gram = self.form.gram_matrix();
        let in_radical = |v: &[Elem]| -> bool {
            (0..n).all(|j| {
                (0..n)
                    .fold(Elem::ZERO, |acc, i| l.add(acc, l.mul(v[i], gram[i][j])))
                    .is_zero()
            }) && self.eval(v).is_zero()
        };
        let mut members = HashSet::new();
        let mut basis: Vec<Vector> = Vec::new();
        let mut pivots: Vec<usize> = Vec::new();
        for v in alg.elements() {
            if !in_radical(&v) {
                continue;
            }
            members.insert(alg.index(&v));
            if !linalg::reduce(l, &basis, &pivots, &v).iter().all(|x| x.is_zero()) {
                let mut rows = basis.clone();
                rows.push(v);
                (basis, pivots) = linalg::rref(l, &rows);
            }
        }
        let expected = (l.order() as u64).pow(basis.len() as u32);
        if members.len() as u64 != expected {
            return Err(Error::Inconsistency(format!(
                "radical has {} elements but spans a space of {} elements",
                members.len(),
                expected
            )));
        }
        for b in &basis {
            for j in 0..n {
                let prod = alg.mul(b, &alg.basis_vector(j));
                if !members.contains(&alg.index(&prod)) {
                    return Err(Error::Inconsistency("radical is not an ideal".into()));
                }
            }
        }
        Ok(LinearSubspace {
            ambient_dim: n,
            basis,
            pivots,
        })
    }

    /// The quotient algebra by `rad` with the induced norm; well-definedness and
    /// multiplicativity of the norm are checked and recorded in `checks`.
    pub fn quotient_algebra(&self, rad: &LinearSubspace, cfg: &CheckConfig) -> Result<QuotientAlgebra> {
        let alg = self.alg();
        let l = &alg.l;
        let complement = rad.complement();
        let reduce = |v: &[Elem]| -> Vector {
            let r = rad.reduce(l, v);
            complement.iter().map(|&c| r[c]).collect()
        };
        let consts = complement
            .iter()
            .map(|&i| {
                complement
                    .iter()
                    .map(|&j| reduce(&alg.mul(&alg.basis_vector(i), &alg.basis_vector(j))))
                    .collect()
            })
            .collect();
        let m = Algebra {
            l: l.clone(),
            consts,
            unit: reduce(&alg.unit),
        };
        let norm = self.form.restrict(&complement);
        let mut q = QuotientAlgebra {
            alg: m,
            norm,
            radical: rad.clone(),
            complement,
            checks: Report::new(),
        };

        let mut checks = Report::new();
        let w = q.alg.check_laws().map(|d| witness("quotient_laws", &[], d));
        checks.record("quotient_laws", CheckMode::Exhaustive, (q.dim() as u64).pow(3), w);

        if alg.size() <= MAX_ENUMERATED {
            let w = alg.elements().find_map(|v| {
                let lhs = self.eval(&v);
                let rhs = q.norm.eval(&q.project(&v));
                (lhs != rhs).then(|| witness("norm_well_defined", &[alg.index(&v) as u32], "q~ not constant on a coset".into()))
            });
            checks.record("norm_well_defined", CheckMode::Exhaustive, alg.size(), w);
        }

        let msize = q.alg.size();
        if msize.saturating_mul(msize) <= cfg.exhaustive_bound {
            let w = scan_tuples(msize as u32, 2, |t| {
                let (x, y) = (q.alg.element(t[0] as u64), q.alg.element(t[1] as u64));
                let lhs = q.norm.eval(&q.alg.mul(&x, &y));
                let rhs = l.mul(q.norm.eval(&x), q.norm.eval(&y));
                (lhs != rhs).then(|| witness("norm_multiplicative", t, "N(xy) != N(x) N(y)".into()))
            });
            checks.record("norm_multiplicative", CheckMode::Exhaustive, msize * msize, w);
        } else {
            return Err(Error::UnexpectedDimension(q.dim()));
        }
        let one = q.norm.eval(&q.alg.unit);
        let w = (one != Elem::ONE).then(|| witness("norm_unit", &[], format!("N(1) = {}", l.fmt_elem(one))));
        checks.record("norm_unit", CheckMode::Exhaustive, 1, w);
        q.checks = checks;
        Ok(q)
    }
}

fn ext_witness(check: &str, x: &[Elem], y: &[Elem], alg: &Algebra, detail: String) -> Witness {
    witness(check, &[alg.index(x) as u32, alg.index(y) as u32], detail)
}

#[derive(Serialize, Deserialize)]
pub struct TensorAlgebraJson {
    #[serde(rename = "L")]
    pub l: Field,
    pub dim: usize,
    pub struct_consts: Vec<Vec<Vec<Vec<u32>>>>,
}

#[derive(Serialize, Deserialize)]
pub struct ExtendedQuadMapJson {
    pub basis_vals: Vec<Vec<u32>>,
    pub gram: Vec<Vec<Vec<u32>>>,
}

impl TensorAlgebra {
    pub fn to_json(&self) -> TensorAlgebraJson {
        let l = &self.alg.l;
        TensorAlgebraJson {
            l: l.clone(),
            dim: self.alg.dim(),
            struct_consts: self
                .alg
                .consts
                .iter()
                .map(|row| row.iter().map(|v| v.iter().map(|&x| l.coeffs(x)).collect()).collect())
                .collect(),
        }
    }
}

impl ExtendedQuadMap {
    pub fn to_json(&self) -> ExtendedQuadMapJson {
        let l = &self.form.l;
        ExtendedQuadMapJson {
            basis_vals: self.form.vals.iter().map(|&x| l.coeffs(x)).collect(),
            gram: self
                .form
                .upper
                .iter()
                .map(|r| r.iter().map(|&x| l.coeffs(x)).collect())
                .collect(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::make_field;
    use crate::qmap::QuadMapTable;

    fn field(p: u32, n: u32) -> Field {
        make_field(p, n, None).unwrap()
    }

    #[test]
    fn prime_field_tensor_is_one_dimensional() {
        let t = build_tensor(&field(2, 1), &field(2, 2)).unwrap();
        assert_eq!(t.alg.dim(), 1);
        assert!(t.check().ok);
        assert!(t.alg.nontrivial_idempotents().unwrap().is_empty());
    }

    #[test]
    fn f4_over_f4_splits() {
        let f4 = field(2, 2);
        let t = build_tensor(&f4, &f4).unwrap();
        // t^2 = t + 1
        assert_eq!(t.alg.consts[1][1], vec![Elem::ONE, Elem::ONE]);
        assert!(t.check().ok);
        let idem = t.alg.nontrivial_idempotents().unwrap();
        assert_eq!(idem.len(), 2);
        assert_eq!(t.alg.add(&idem[0], &idem[1]), t.alg.unit);
    }

    #[test]
    fn f4_over_f8_is_a_field() {
        let t = build_tensor(&field(2, 2), &field(2, 3)).unwrap();
        assert!(t.alg.nontrivial_idempotents().unwrap().is_empty());
        assert!(t.alg.zero_divisor().unwrap().is_none());
        assert_eq!(t.alg.size(), 64);
    }

    #[test]
    fn char_mismatch() {
        assert_eq!(build_tensor(&field(2, 2), &field(3, 1)).unwrap_err(), Error::CharMismatch(2, 3));
    }

    #[test]
    fn extension_of_cube() {
        let f4 = field(2, 2);
        let q = QuadMapTable::power(&f4, 3).unwrap().to_basis().unwrap();
        let ext = extend(&q).unwrap();
        assert_eq!(ext.form.vals, vec![Elem::ONE, Elem::ONE]);
        assert!(ext.restricts_to(&q));
        // q~(l1 e1 + l2 e2) = l1^2 + l2^2 + l1 l2
        for v in ext.alg().elements() {
            let (a, b) = (v[0], v[1]);
            let expect = f4.add(f4.add(f4.square(a), f4.square(b)), f4.mul(a, b));
            assert_eq!(ext.eval(&v), expect);
        }
        let rep = ext.verify_extension(&CheckConfig::default()).unwrap();
        assert!(rep.ok);
        assert_eq!(rep.check("multiplicative").unwrap().evaluations, 256);
        assert_eq!(ext.radical_ext().unwrap().dim(), 0);
    }

    #[test]
    fn corrupted_gram_fails() {
        let f4 = field(2, 2);
        let q = QuadMapTable::power(&f4, 3).unwrap().to_basis().unwrap();
        let mut ext = extend(&q).unwrap();
        ext.form.upper[0][0] = Elem::ZERO;
        let rep = ext.verify_extension(&CheckConfig::default()).unwrap();
        assert!(!rep.ok);
        assert_eq!(rep.witnesses[0].check, "multiplicative");
        assert_eq!(rep.witnesses[0].args.len(), 2);
    }

    #[test]
    fn split_quotient_norm_is_product_of_coordinates() {
        let f4 = field(2, 2);
        let q = QuadMapTable::power(&f4, 3).unwrap().to_basis().unwrap();
        let ext = extend(&q).unwrap();
        let rad = ext.radical_ext().unwrap();
        let m = ext.quotient_algebra(&rad, &CheckConfig::default()).unwrap();
        assert!(m.checks.ok);
        let idem = m.alg.nontrivial_idempotents().unwrap();
        let e = &idem[0];
        let f = m.alg.sub(&m.alg.unit, e);
        // N(x e + y (1 - e)) = x y
        for x in f4.elements() {
            for y in f4.elements() {
                let v = m.alg.add(&m.alg.scale(x, e), &m.alg.scale(y, &f));
                assert_eq!(m.norm.eval(&v), f4.mul(x, y));
            }
        }
    }

    #[test]
    fn radical_of_frobenius_twisted_degenerate_extension() {
        // q(x) = x^2 on F_16 -> F_16 is a homomorphism; q~ has zero polar form and its
        // radical is cut out by one semilinear condition.
        let f16 = field(2, 4);
        let q = QuadMapTable::power(&f16, 2).unwrap().to_basis().unwrap();
        let ext = extend(&q).unwrap();
        assert!(ext.form.polar_is_zero());
        let rad = ext.radical_ext().unwrap();
        assert_eq!(rad.dim(), 3);
        let m = ext.quotient_algebra(&rad, &CheckConfig::default()).unwrap();
        assert_eq!(m.dim(), 1);
        assert!(m.checks.ok);
    }

    #[test]
    fn grid_mode_for_large_algebras() {
        let f16 = field(2, 4);
        let q = QuadMapTable::power(&f16, 3).unwrap().to_basis().unwrap();
        let ext = extend(&q).unwrap();
        let rep = ext.verify_extension(&CheckConfig::default()).unwrap();
        assert!(rep.ok);
        assert_eq!(rep.check("multiplicative").unwrap().mode, CheckMode::Grid);
    }
}
