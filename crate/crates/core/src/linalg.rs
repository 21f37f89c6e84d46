//! Exact row reduction over a finite field.

use crate::field::{Elem, Field};

/// Reduced row echelon form. Returns the nonzero rows and their pivot columns.
pub fn rref(f: &Field, rows: &[Vec<Elem>]) -> (Vec<Vec<Elem>>, Vec<usize>) {
    let mut m: Vec<Vec<Elem>> = rows.to_vec();
    let ncols = m.first().map_or(0, Vec::len);
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..ncols {
        let Some(pr) = (r..m.len()).find(|&i| !m[i][c].is_zero()) else {
            continue;
        };
        m.swap(r, pr);
        let inv = f.inv(m[r][c]).expect("pivot is nonzero");
        for x in m[r].iter_mut() {
            *x = f.mul(*x, inv);
        }
        for i in 0..m.len() {
            if i != r && !m[i][c].is_zero() {
                let factor = m[i][c];
                for j in 0..ncols {
                    let sub = f.mul(factor, m[r][j]);
                    m[i][j] = f.sub(m[i][j], sub);
                }
            }
        }
        pivots.push(c);
        r += 1;
        if r == m.len() {
            break;
        }
    }
    m.truncate(r);
    (m, pivots)
}

pub fn rank(f: &Field, rows: &[Vec<Elem>]) -> usize {
    rref(f, rows).1.len()
}

/// Basis of the right kernel `{c : A c = 0}` of a matrix with `ncols` columns. Each basis
/// vector has a 1 in its free column.
pub fn kernel(f: &Field, rows: &[Vec<Elem>], ncols: usize) -> Vec<Vec<Elem>> {
    let (r, pivots) = if rows.is_empty() {
        (Vec::new(), Vec::new())
    } else {
        rref(f, rows)
    };
    (0..ncols)
        .filter(|c| !pivots.contains(c))
        .map(|free| {
            let mut v = vec![Elem::ZERO; ncols];
            v[free] = Elem::ONE;
            for (row, &pc) in r.iter().zip(&pivots) {
                v[pc] = f.neg(row[free]);
            }
            v
        })
        .collect()
}

/// Reduces `v` modulo the row space of an RREF basis.
pub fn reduce(f: &Field, basis: &[Vec<Elem>], pivots: &[usize], v: &[Elem]) -> Vec<Elem> {
    let mut out = v.to_vec();
    for (row, &pc) in basis.iter().zip(pivots) {
        let c = out[pc];
        if !c.is_zero() {
            for (o, &b) in out.iter_mut().zip(row) {
                *o = f.sub(*o, f.mul(c, b));
            }
        }
    }
    out
}

pub fn scale_vec(f: &Field, c: Elem, v: &[Elem]) -> Vec<Elem> {
    v.iter().map(|&x| f.mul(c, x)).collect()
}

pub fn add_vec(f: &Field, a: &[Elem], b: &[Elem]) -> Vec<Elem> {
    a.iter().zip(b).map(|(&x, &y)| f.add(x, y)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::make_field;

    #[test]
    fn kernel_of_duplicate_columns() {
        let f = make_field(3, 1, None).unwrap();
        let one = Elem::ONE;
        let rows = vec![vec![one, one], vec![Elem(2), Elem(2)]];
        let k = kernel(&f, &rows, 2);
        assert_eq!(k, vec![vec![Elem(2), one]]);
        assert_eq!(rank(&f, &rows), 1);
    }

    #[test]
    fn reduce_against_basis() {
        let f = make_field(5, 1, None).unwrap();
        let (b, piv) = rref(&f, &[vec![Elem(2), Elem(4), Elem(0)]]);
        assert_eq!(b, vec![vec![Elem(1), Elem(2), Elem(0)]]);
        let r = reduce(&f, &b, &piv, &[Elem(3), Elem(1), Elem(1)]);
        assert_eq!(r, vec![Elem(0), Elem(0), Elem(1)]);
    }
}
