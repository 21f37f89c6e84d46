//! Classification of multiplicative quadratic maps between finite fields: the radical
//! quotient of the extended map is a composition algebra M over L with norm N, and
//! `q(a) = N(phi(a))` splits as a product of two field homomorphisms.

use serde::{Deserialize, Serialize};

use crate::basis::QuadMapBasis;
use crate::embed::canonical_embedding;
use crate::error::{Error, Result};
use crate::field::{make_field, Elem, Field, FieldDesc};
use crate::homprod::HomSpec;
use crate::qmap::{HomBranch, QuadMapTable};
use crate::report::{witness, CheckConfig, CheckMode, Report};
use crate::tensor::{extend, QuotientAlgebra, Vector};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Branch {
    CompNorm,
    Char2Hom,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum CompKind {
    /// `M = L`, `N(x) = x^2`.
    Dim1,
    /// `M = L x L`, `N(x1, x2) = x1 x2`.
    Split2,
    /// M a quadratic field extension of L, `N(x) = x x^sigma`.
    Field2,
}

/// M with its norm, the map `phi: K -> M` and the data that identifies its kind.
#[derive(Clone, Debug)]
pub struct CompositionAlgebra {
    pub kind: CompKind,
    pub quotient: QuotientAlgebra,
    /// `phi(x)` for every `x` in K, by element index.
    pub phi: Vec<Vector>,
    /// split2: the idempotent whose coordinate is `phi1`.
    pub idempotent: Option<Vector>,
    /// field2: an element `w` generating M over L and its conjugate `sigma(w)`.
    pub generator: Option<(Vector, Vector)>,
}

impl CompositionAlgebra {
    pub fn base(&self) -> &Field {
        &self.quotient.alg.l
    }

    pub fn dim(&self) -> usize {
        self.quotient.dim()
    }

    pub fn norm(&self, m: &[Elem]) -> Elem {
        self.quotient.norm.eval(m)
    }

    /// The nontrivial involution: the swap for split2, conjugation for field2, the
    /// identity for dim1.
    pub fn involution(&self, m: &[Elem]) -> Vector {
        let alg = &self.quotient.alg;
        match self.kind {
            CompKind::Dim1 => m.to_vec(),
            CompKind::Split2 => {
                let e = self.idempotent.as_ref().expect("split2 has an idempotent");
                let f = alg.sub(&alg.unit, e);
                let (a, b) = (split_coord(alg, m, e), split_coord(alg, m, &f));
                alg.add(&alg.scale(b, e), &alg.scale(a, &f))
            }
            CompKind::Field2 => {
                let (w, s) = self.generator.as_ref().expect("field2 has a generator");
                let (u, v) = coords(alg.l.clone(), &alg.unit, w, m);
                alg.add(&alg.scale(u, &alg.unit), &alg.scale(v, s))
            }
        }
    }
}

/// `alpha` with `m e = alpha e`.
fn split_coord(alg: &crate::tensor::Algebra, m: &[Elem], e: &[Elem]) -> Elem {
    let l = &alg.l;
    let me = alg.mul(m, e);
    let i = e.iter().position(|x| !x.is_zero()).expect("idempotent is nonzero");
    l.div(me[i], e[i]).expect("nonzero pivot")
}

/// `(u, v)` with `m = u a + v b` in a 2-dimensional space.
fn coords(l: Field, a: &[Elem], b: &[Elem], m: &[Elem]) -> (Elem, Elem) {
    let det = l.sub(l.mul(a[0], b[1]), l.mul(a[1], b[0]));
    let u = l.div(l.sub(l.mul(m[0], b[1]), l.mul(m[1], b[0])), det).expect("basis");
    let v = l.div(l.sub(l.mul(a[0], m[1]), l.mul(a[1], m[0])), det).expect("basis");
    (u, v)
}

/// Outcome of [`classify`].
#[derive(Clone, Debug)]
pub struct Decomposition {
    pub branch: Branch,
    /// Set on the comp_norm branch.
    pub kind: Option<CompKind>,
    /// `q(a) = phi1(a) phi2(a)`, both into L or into the quadratic extension of L.
    pub phi1: HomSpec,
    pub phi2: HomSpec,
    /// char2_hom: `q` itself as a homomorphism K -> L.
    pub hom: Option<HomSpec>,
    /// Size of the radical of q in K.
    pub radical_size: usize,
    /// Dimension of the radical of the extended map.
    pub ext_radical_dim: usize,
    pub m_dim: usize,
    pub composition: Option<CompositionAlgebra>,
    /// Pipeline checks followed by the decomposition checks.
    pub checks: Report,
}

/// A homomorphism with its target spelled out.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct HomRef {
    pub target: FieldDesc,
    pub embedding_index: u32,
    pub frobenius_exp: i64,
}

impl HomRef {
    pub fn of(h: &HomSpec) -> HomRef {
        HomRef {
            target: h.l.desc().clone(),
            embedding_index: h.embedding_index,
            frobenius_exp: h.frobenius_exp,
        }
    }

    pub fn resolve(&self, k: &Field) -> Result<HomSpec> {
        let t = &self.target;
        let l = make_field(t.p, t.n, Some(&t.modulus))?;
        HomSpec::new(k, &l, self.embedding_index, self.frobenius_exp)
    }
}

/// Wire form of a [`Decomposition`].
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DecompositionJson {
    pub branch: Branch,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub kind: Option<CompKind>,
    pub phi1: HomRef,
    pub phi2: HomRef,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub hom: Option<HomRef>,
    pub radical_size: usize,
    pub ext_radical_dim: usize,
    pub m_dim: usize,
}

impl Decomposition {
    pub fn to_json(&self) -> DecompositionJson {
        DecompositionJson {
            branch: self.branch,
            kind: self.kind,
            phi1: HomRef::of(&self.phi1),
            phi2: HomRef::of(&self.phi2),
            hom: self.hom.as_ref().map(HomRef::of),
            radical_size: self.radical_size,
            ext_radical_dim: self.ext_radical_dim,
            m_dim: self.m_dim,
        }
    }

    /// Rebuilds a decomposition from its wire form; the composition data is not carried.
    pub fn from_json(k: &Field, j: &DecompositionJson) -> Result<Decomposition> {
        Ok(Decomposition {
            branch: j.branch,
            kind: j.kind,
            phi1: j.phi1.resolve(k)?,
            phi2: j.phi2.resolve(k)?,
            hom: j.hom.as_ref().map(|h| h.resolve(k)).transpose()?,
            radical_size: j.radical_size,
            ext_radical_dim: j.ext_radical_dim,
            m_dim: j.m_dim,
            composition: None,
            checks: Report::new(),
        })
    }

    /// Frobenius exponents of `(phi1, phi2)` relative to embedding 0.
    pub fn exponent_pair(&self) -> (u32, u32) {
        (self.phi1.canonical_exp(), self.phi2.canonical_exp())
    }
}

impl PartialEq for Decomposition {
    fn eq(&self, other: &Self) -> bool {
        self.to_json() == other.to_json()
    }
}

/// Orders a pair by Frobenius exponent.
fn normalize(a: HomSpec, b: HomSpec) -> (HomSpec, HomSpec) {
    if a.canonical_exp() <= b.canonical_exp() {
        (a, b)
    } else {
        (b, a)
    }
}

fn identify(k: &Field, l: &Field, f: impl Fn(Elem) -> Elem, what: &str) -> Result<HomSpec> {
    HomSpec::identify(k, l, f)?
        .ok_or_else(|| Error::Inconsistency(format!("{what} is not a field homomorphism")))
}

/// Decides the kind of a composition algebra of dimension at most 2.
pub fn comp_kind(m: &QuotientAlgebra) -> Result<CompKind> {
    match m.dim() {
        1 => Ok(CompKind::Dim1),
        2 => Ok(if m.alg.nontrivial_idempotents()?.is_empty() {
            CompKind::Field2
        } else {
            CompKind::Split2
        }),
        d => Err(Error::UnexpectedDimension(d)),
    }
}

/// The pair `(phi1, phi2)` for a composition algebra, unnormalized.
fn hom_pair(k: &Field, comp: &mut CompositionAlgebra, checks: &mut Report) -> Result<(HomSpec, HomSpec)> {
    let alg = comp.quotient.alg.clone();
    let l = alg.l.clone();
    let phi = comp.phi.clone();
    match comp.kind {
        CompKind::Dim1 => {
            let c = alg.unit[0];
            let h = identify(k, &l, |x| l.div(phi[x.0 as usize][0], c).expect("unit"), "phi")?;
            Ok((h.clone(), h))
        }
        CompKind::Split2 => {
            let e = alg.nontrivial_idempotents()?.remove(0);
            let f = alg.sub(&alg.unit, &e);
            let h1 = identify(k, &l, |x| split_coord(&alg, &phi[x.0 as usize], &e), "first coordinate of phi")?;
            let h2 = identify(k, &l, |x| split_coord(&alg, &phi[x.0 as usize], &f), "second coordinate of phi")?;
            let w = alg.elements().find_map(|m| {
                let n = comp.quotient.norm.eval(&m);
                let prod = l.mul(split_coord(&alg, &m, &e), split_coord(&alg, &m, &f));
                (n != prod).then(|| witness("split_norm", &[alg.index(&m) as u32], "N != x1 x2".into()))
            });
            checks.record("split_norm", CheckMode::Exhaustive, alg.size(), w);
            comp.idempotent = Some(e);
            Ok((h1, h2))
        }
        CompKind::Field2 => {
            // w = the first basis vector independent of 1, with w^2 = a w + b
            let w = (0..2)
                .map(|i| alg.basis_vector(i))
                .find(|v| {
                    let det = l.sub(l.mul(alg.unit[0], v[1]), l.mul(alg.unit[1], v[0]));
                    !det.is_zero()
                })
                .expect("M has dimension 2");
            let (b, a) = coords(l.clone(), &alg.unit, &w, &alg.mul(&w, &w));
            let is_root = |s: &[Elem]| {
                alg.mul(s, s) == alg.add(&alg.scale(a, s), &alg.scale(b, &alg.unit))
            };
            let s = alg
                .elements()
                .find(|s| *s != w && is_root(s))
                .ok_or_else(|| Error::Inconsistency("generator has no conjugate".into()))?;
            comp.generator = Some((w.clone(), s));
            let wit = alg.elements().find_map(|m| {
                let lhs = alg.mul(&m, &comp.involution(&m));
                let rhs = alg.scale(comp.norm(&m), &alg.unit);
                (lhs != rhs).then(|| witness("norm_is_x_sigma_x", &[alg.index(&m) as u32], "N(x) != x x^sigma".into()))
            });
            checks.record("norm_is_x_sigma_x", CheckMode::Exhaustive, alg.size(), wit);

            // M -> L2 sends w to the smallest root of X^2 - a X - b
            let l2 = make_field(l.p(), 2 * l.degree(), None)?;
            let iota = canonical_embedding(&l, &l2)?.expect("L embeds in its quadratic extension");
            let (ia, ib) = (iota.apply(a), iota.apply(b));
            let r = l2
                .elements()
                .filter(|&x| l2.sub(l2.sub(l2.square(x), l2.mul(ia, x)), ib).is_zero())
                .min_by(|&x, &y| l2.lex_cmp(x, y))
                .ok_or_else(|| Error::Inconsistency("minimal polynomial has no root in L2".into()))?;
            let to_l2 = |m: &[Elem]| {
                let (u, v) = coords(l.clone(), &alg.unit, &w, m);
                l2.add(iota.apply(u), l2.mul(iota.apply(v), r))
            };
            let h1 = identify(k, &l2, |x| to_l2(&phi[x.0 as usize]), "phi")?;
            let h2 = identify(k, &l2, |x| to_l2(&comp.involution(&phi[x.0 as usize])), "conjugate of phi")?;
            Ok((h1, h2))
        }
    }
}

/// Runs the pipeline on a map given in basis form; the result is verified before it is
/// returned.
pub fn classify(q: &QuadMapBasis, cfg: &CheckConfig) -> Result<Decomposition> {
    if q.k.p() != q.l.p() {
        return Err(Error::CharMismatch(q.k.p(), q.l.p()));
    }
    let (k, l) = (q.k.clone(), q.l.clone());
    let table = q.to_table()?;
    let axioms = table.verify_axioms(cfg)?;
    if !axioms.ok {
        let detail = axioms
            .witnesses
            .first()
            .map(|w| format!("{}: {}", w.check, w.detail))
            .unwrap_or_default();
        return Err(Error::NotVerified(detail));
    }
    let mut checks = axioms;
    let quotient = table.quotient()?;
    let radical_size = table.radical().len();
    let branch_k = table.detect_hom_branch()?;

    let ext = extend(q)?;
    let rad = ext.radical_ext()?;
    let m = ext.quotient_algebra(&rad, cfg)?;
    checks.merge(m.checks.clone());
    let polar_zero = ext.form.polar_is_zero();
    let agree = polar_zero == (branch_k == HomBranch::Char2Hom);
    checks.record(
        "branch_agreement",
        CheckMode::Exhaustive,
        1,
        (!agree).then(|| witness("branch_agreement", &[], format!("K-side branch {}", branch_k.tag()))),
    );
    let (ext_radical_dim, m_dim) = (rad.dim(), m.dim());
    debug_assert_eq!(quotient.reps.len() * radical_size, k.order() as usize);

    let mut d = if polar_zero {
        // q is additive, hence a ring homomorphism, and sqrt(q) is one as well
        let hom = identify(&k, &l, |x| Elem(table.eval(x.0)), "q")?;
        let root = identify(&k, &l, |x| l.sqrt_char2(Elem(table.eval(x.0))), "sqrt q")?;
        Decomposition {
            branch: Branch::Char2Hom,
            kind: None,
            phi1: root.clone(),
            phi2: root,
            hom: Some(hom),
            radical_size,
            ext_radical_dim,
            m_dim,
            composition: None,
            checks: Report::new(),
        }
    } else {
        let kind = comp_kind(&m)?;
        let phi = k.elements().map(|x| m.project(&ext.algebra.embed(x))).collect();
        let mut comp = CompositionAlgebra {
            kind,
            quotient: m,
            phi,
            idempotent: None,
            generator: None,
        };
        let (a, b) = hom_pair(&k, &mut comp, &mut checks)?;
        let (phi1, phi2) = normalize(a, b);
        Decomposition {
            branch: Branch::CompNorm,
            kind: Some(kind),
            phi1,
            phi2,
            hom: None,
            radical_size,
            ext_radical_dim,
            m_dim,
            composition: Some(comp),
            checks: Report::new(),
        }
    };
    let verdict = verify_decomposition(q, &d);
    if !verdict.ok {
        let w = verdict.witnesses.first().map(|w| w.detail.clone()).unwrap_or_default();
        return Err(Error::Inconsistency(format!("decomposition fails its own check: {w}")));
    }
    checks.merge(verdict);
    d.checks = checks;
    Ok(d)
}

/// Exhaustive check of the branch invariants over all of K.
pub fn verify_decomposition(q: &QuadMapBasis, d: &Decomposition) -> Report {
    let (k, l) = (&q.k, &q.l);
    let mut rep = Report::new();
    let n = k.order() as u64;
    let pair_ok = d.phi1.k == *k && d.phi2.k == *k && d.phi1.l == d.phi2.l;
    rep.record(
        "pair_shape",
        CheckMode::Exhaustive,
        1,
        (!pair_ok).then(|| witness("pair_shape", &[], "homomorphisms do not share domain and target".into())),
    );
    if !pair_ok {
        return rep;
    }
    let target = d.phi1.l.clone();
    let Ok(Some(iota)) = canonical_embedding(l, &target) else {
        rep.record(
            "pair_shape",
            CheckMode::Exhaustive,
            1,
            Some(witness("pair_shape", &[], format!("{} does not contain L", target.name()))),
        );
        return rep;
    };

    for (name, h) in [("phi1_hom", &d.phi1), ("phi2_hom", &d.phi2)] {
        let w = (!h.is_field_hom()).then(|| witness(name, &[], format!("{} is not a homomorphism", h.label())));
        rep.record(name, CheckMode::Exhaustive, n * n, w);
    }
    let ordered = d.phi1.canonical_exp() <= d.phi2.canonical_exp();
    rep.record(
        "normalized",
        CheckMode::Exhaustive,
        1,
        (!ordered).then(|| witness("normalized", &[], "Frobenius exponents out of order".into())),
    );
    let w = k.elements().find_map(|a| {
        let lhs = iota.apply(q.eval(a));
        let rhs = target.mul(d.phi1.apply(a), d.phi2.apply(a));
        (lhs != rhs).then(|| {
            witness(
                "product_of_homs",
                &[a.0],
                format!("q({}) = {} but phi1 phi2 gives {}", k.fmt_elem(a), target.fmt_elem(lhs), target.fmt_elem(rhs)),
            )
        })
    });
    rep.record("product_of_homs", CheckMode::Exhaustive, n, w);

    match d.branch {
        Branch::CompNorm => {
            if let Some(c) = &d.composition {
                let w = k.elements().find_map(|a| {
                    (c.norm(&c.phi[a.0 as usize]) != q.eval(a))
                        .then(|| witness("norm_of_phi", &[a.0], format!("N(phi({})) != q", k.fmt_elem(a))))
                });
                rep.record("norm_of_phi", CheckMode::Exhaustive, n, w);
            }
        }
        Branch::Char2Hom => {
            let w = (l.p() != 2).then(|| witness("char2", &[], format!("characteristic {}", l.p())));
            rep.record("char2", CheckMode::Exhaustive, 1, w);
            let phi = &d.phi1;
            let w = (phi.l != *l).then(|| witness("sqrt_in_l", &[], "phi does not land in L".into()));
            rep.record("sqrt_in_l", CheckMode::Exhaustive, 1, w);
            let w = k.elements().find_map(|a| {
                k.elements().find_map(|b| {
                    let ok = phi.apply(k.add(a, b)) == target.add(phi.apply(a), phi.apply(b));
                    (!ok).then(|| witness("phi_additive", &[a.0, b.0], "phi(a + b) != phi(a) + phi(b)".into()))
                })
            });
            rep.record("phi_additive", CheckMode::Exhaustive, n * n, w);
            let w = k.elements().find_map(|a| {
                (target.square(phi.apply(a)) != iota.apply(q.eval(a)))
                    .then(|| witness("phi_squared", &[a.0], format!("phi({})^2 != q", k.fmt_elem(a))))
            });
            rep.record("phi_squared", CheckMode::Exhaustive, n, w);
            if let Some(h) = &d.hom {
                let w = k.elements().find_map(|a| {
                    (h.apply(a) != q.eval(a)).then(|| witness("q_is_hom", &[a.0], "hom differs from q".into()))
                });
                rep.record("q_is_hom", CheckMode::Exhaustive, n, w);
            }
        }
    }
    rep
}

/// A map found by [`enumerate_qmaps`].
#[derive(Clone, Debug)]
pub struct EnumeratedMap {
    /// `y = q(g)` for the generator `g` of K*.
    pub y: Elem,
    /// Discrete log of `y` to the generator of L*.
    pub log: u64,
    /// `e` in `1..=|K*|` with `q(x) = x^e` read through the canonical embedding between
    /// K and L, when one field embeds in the other.
    pub exponent: Option<u64>,
    pub table: QuadMapTable,
}

pub const MAX_ENUMERATION_DOMAIN: u32 = 1 << 10;

/// Every multiplicative quadratic map K -> L: each candidate `q(g^k) = y^k` with
/// `y^|K*| = 1` that passes the axiom check, ordered by the discrete log of `y`.
pub fn enumerate_qmaps(k: &Field, l: &Field, cfg: &CheckConfig) -> Result<Vec<EnumeratedMap>> {
    if k.p() != l.p() {
        return Err(Error::CharMismatch(k.p(), l.p()));
    }
    if k.order() > MAX_ENUMERATION_DOMAIN {
        return Err(Error::TooLarge {
            what: "enumeration domain".into(),
            size: k.order() as u64,
            bound: MAX_ENUMERATION_DOMAIN as u64,
        });
    }
    let group = k.order() as u64 - 1;
    let g = k.find_generator();
    let gl = l.find_generator();
    let mut log_g = vec![0u64; k.order() as usize];
    let mut x = Elem::ONE;
    for i in 0..group {
        log_g[x.0 as usize] = i;
        x = k.mul(x, g);
    }
    let mut out = Vec::new();
    for y in l.nonzero().filter(|&y| l.pow_u(y, group) == Elem::ONE) {
        let values: Vec<Elem> = k
            .elements()
            .map(|a| if a.is_zero() { Elem::ZERO } else { l.pow_u(y, log_g[a.0 as usize]) })
            .collect();
        let table = QuadMapTable::from_fn(k, l, |a| values[a.0 as usize])?;
        if !table.verify_axioms(cfg)?.ok {
            continue;
        }
        out.push(EnumeratedMap {
            y,
            log: l.dlog(y, gl)?,
            exponent: power_exponent(k, l, g, y)?,
            table,
        });
    }
    out.sort_by_key(|m| m.log);
    Ok(out)
}

fn power_exponent(k: &Field, l: &Field, g: Elem, y: Elem) -> Result<Option<u64>> {
    let group = k.order() as u64 - 1;
    let e = if let Some(i) = canonical_embedding(k, l)? {
        (0..group).find(|&e| l.pow_u(i.apply(g), e) == y)
    } else if let Some(i) = canonical_embedding(l, k)? {
        (0..group).find(|&e| k.pow_u(g, e) == i.apply(y))
    } else {
        None
    };
    Ok(e.map(|e| if e == 0 { group } else { e }))
}

/// The maps predicted by the decomposition theorem: products of two homomorphisms into
/// the quadratic extension of L that land in L, together with (in characteristic 2) the
/// homomorphisms K -> L. Returned as value tables over L, sorted and deduplicated.
pub fn predicted_qmaps(k: &Field, l: &Field) -> Result<Vec<Vec<Elem>>> {
    if k.p() != l.p() {
        return Err(Error::CharMismatch(k.p(), l.p()));
    }
    let l2 = make_field(l.p(), 2 * l.degree(), None)?;
    let iota = canonical_embedding(l, &l2)?.expect("L embeds in its quadratic extension");
    let homs = HomSpec::all(k, &l2)?;
    let mut out = Vec::new();
    for (i, a) in homs.iter().enumerate() {
        for b in &homs[i..] {
            let vals: Option<Vec<Elem>> = k
                .elements()
                .map(|x| iota.preimage(l2.mul(a.apply(x), b.apply(x))))
                .collect();
            out.extend(vals);
        }
    }
    if l.p() == 2 {
        for h in HomSpec::all(k, l)? {
            out.push(k.elements().map(|x| h.apply(x)).collect());
        }
    }
    out.sort();
    out.dedup();
    Ok(out)
}
