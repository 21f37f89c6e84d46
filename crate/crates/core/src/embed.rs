//! Field embeddings K -> L between finite fields of equal characteristic.

use crate::error::{Error, Result};
use crate::field::{Elem, Field};

/// An embedding K -> L, realised by sending the power-basis generator of K to a root of
/// K's modulus in L.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Embedding {
    pub source: Field,
    pub target: Field,
    pub index: u32,
    pub root: Elem,
    image: Vec<Elem>,
}

impl Embedding {
    fn new(source: &Field, target: &Field, index: u32, root: Elem) -> Embedding {
        let powers: Vec<Elem> = (0..source.degree())
            .scan(Elem::ONE, |acc, _| {
                let cur = *acc;
                *acc = target.mul(*acc, root);
                Some(cur)
            })
            .collect();
        let image = source
            .elements()
            .map(|a| {
                source
                    .coeffs(a)
                    .iter()
                    .zip(&powers)
                    .fold(Elem::ZERO, |acc, (&c, &w)| {
                        target.add(acc, target.mul(target.from_int(c as i64), w))
                    })
            })
            .collect();
        Embedding {
            source: source.clone(),
            target: target.clone(),
            index,
            root,
            image,
        }
    }

    pub fn apply(&self, a: Elem) -> Elem {
        self.image[a.0 as usize]
    }

    /// Whether `b` lies in the image; returns its preimage.
    pub fn preimage(&self, b: Elem) -> Option<Elem> {
        self.image.iter().position(|&x| x == b).map(|i| Elem(i as u32))
    }
}

/// All embeddings K -> L, canonically indexed: embedding 0 sends the generator of K
/// to the lexicographically smallest root of K's modulus in L (to itself when K = L),
/// and embedding `k` is embedding 0 followed by the `k`-th power of Frobenius on L.
pub fn embeddings(k: &Field, l: &Field) -> Result<Vec<Embedding>> {
    if k.p() != l.p() {
        return Err(Error::CharMismatch(k.p(), l.p()));
    }
    if l.degree() % k.degree() != 0 {
        return Ok(Vec::new());
    }
    let root0 = if k.degree() == 1 {
        Elem::ZERO
    } else if k == l {
        // a field into itself: embedding 0 is the identity
        k.t()
    } else {
        l.elements()
            .filter(|&x| l.eval_prime_poly(k.modulus(), x).is_zero())
            .min_by(|&a, &b| l.lex_cmp(a, b))
            .ok_or_else(|| Error::Inconsistency("no root of the modulus in the extension".into()))?
    };
    Ok((0..k.degree())
        .map(|i| Embedding::new(k, l, i, l.frobenius(root0, i as i64)))
        .collect())
}

/// The canonical embedding 0 of K into L, if one exists.
pub fn canonical_embedding(k: &Field, l: &Field) -> Result<Option<Embedding>> {
    Ok(embeddings(k, l)?.into_iter().next())
}
