//! Multiplicative quadratic maps `q: K -> L` in table form, their associated biadditive
//! form `f(a, b) = q(a + b) - q(a) - q(b)`, orthogonal complements of ideals, the radical,
//! and the quotient by the radical.

use rand::Rng;

use crate::error::{Error, Result};
use crate::field::{Elem, Field};
use crate::report::{scan_tuples, witness, CheckConfig, CheckMode, Report, Witness};
use crate::ring::FiniteRing;

/// `q` stored as its full value table; ground truth for every verification.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QuadMapTable {
    pub domain: FiniteRing,
    pub codomain: FiniteRing,
    values: Vec<u32>,
}

/// The full table of the associated form `f`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BilinearGram {
    size: u32,
    values: Vec<u32>,
}

impl BilinearGram {
    pub fn get(&self, a: u32, b: u32) -> u32 {
        self.values[(a * self.size + b) as usize]
    }

    pub fn is_zero(&self, zero: u32) -> bool {
        self.values.iter().all(|&v| v == zero)
    }

    pub fn is_symmetric(&self) -> bool {
        (0..self.size).all(|a| (0..self.size).all(|b| self.get(a, b) == self.get(b, a)))
    }
}

/// A subset of a finite ring given by its members, flagged when it is an ideal.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Subspace {
    pub ambient_size: u32,
    pub members: Vec<u32>,
    pub ideal: bool,
}

impl Subspace {
    pub fn whole(r: &FiniteRing) -> Subspace {
        Subspace {
            ambient_size: r.size(),
            members: r.table.elements().collect(),
            ideal: true,
        }
    }

    pub fn zero(r: &FiniteRing) -> Subspace {
        Subspace {
            ambient_size: r.size(),
            members: vec![r.table.zero()],
            ideal: true,
        }
    }

    /// Builds a subset and records whether it is an ideal.
    pub fn from_members(r: &FiniteRing, mut members: Vec<u32>) -> Subspace {
        members.sort_unstable();
        members.dedup();
        let ideal = ideal_violation(r, &members).is_none();
        Subspace {
            ambient_size: r.size(),
            members,
            ideal,
        }
    }

    pub fn contains(&self, x: u32) -> bool {
        self.members.binary_search(&x).is_ok()
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn is_trivial(&self) -> bool {
        self.members.len() == 1
    }
}

fn ideal_violation(r: &FiniteRing, members: &[u32]) -> Option<String> {
    let t = &r.table;
    let contains = |x: u32| members.binary_search(&x).is_ok();
    if !contains(t.zero()) {
        return Some("does not contain 0".into());
    }
    for &a in members {
        for &b in members {
            if !contains(t.add(a, b)) {
                return Some(format!("{} + {} leaves the set", r.fmt(a), r.fmt(b)));
            }
        }
        for c in t.elements() {
            if !contains(t.mul(a, c)) {
                return Some(format!("{} * {} leaves the set", r.fmt(a), r.fmt(c)));
            }
        }
    }
    None
}

/// Outcome of the homomorphism-branch detector on a nondegenerate map.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum HomBranch {
    /// `f` vanishes identically: `q` is an additive ring homomorphism and char L = 2.
    Char2Hom,
    /// `K^perp = {0}`.
    BilinearNondegenerate,
    /// Some nonzero `a` is orthogonal to everything although `f` is not zero.
    Degenerate { witness: u32 },
}

impl HomBranch {
    pub fn tag(&self) -> &'static str {
        match self {
            HomBranch::Char2Hom => "char2_hom",
            HomBranch::BilinearNondegenerate => "bilinear_nondegenerate",
            HomBranch::Degenerate { .. } => "degenerate",
        }
    }
}

/// `q` on `K / rad(q)`, with the coset bookkeeping.
#[derive(Clone, Debug)]
pub struct Quotient {
    pub map: QuadMapTable,
    /// Smallest member of each coset, in class order.
    pub reps: Vec<u32>,
    /// Class index of each element of K.
    pub class_of: Vec<u32>,
}

impl QuadMapTable {
    pub fn new(domain: FiniteRing, codomain: FiniteRing, values: Vec<u32>) -> Result<QuadMapTable> {
        if values.len() != domain.size() as usize {
            return Err(Error::InvalidInput(format!(
                "{} values for a domain of {} elements",
                values.len(),
                domain.size()
            )));
        }
        if let Some(&v) = values.iter().find(|&&v| v >= codomain.size()) {
            return Err(Error::InvalidInput(format!("value {v} outside the codomain")));
        }
        Ok(QuadMapTable {
            domain,
            codomain,
            values,
        })
    }

    pub fn from_fn(k: &Field, l: &Field, q: impl Fn(Elem) -> Elem) -> Result<QuadMapTable> {
        let values = k.elements().map(|a| q(a).0).collect();
        QuadMapTable::new(FiniteRing::from_field(k)?, FiniteRing::from_field(l)?, values)
    }

    /// `x -> x^e` on a field.
    pub fn power(k: &Field, e: u64) -> Result<QuadMapTable> {
        QuadMapTable::from_fn(k, k, |a| k.pow_u(a, e))
    }

    pub fn values(&self) -> &[u32] {
        &self.values
    }

    pub fn eval(&self, a: u32) -> u32 {
        self.values[a as usize]
    }

    pub fn domain_field(&self) -> Option<&Field> {
        self.domain.field.as_ref()
    }

    pub fn codomain_field(&self) -> Option<&Field> {
        self.codomain.field.as_ref()
    }

    /// `f(a, b) = q(a + b) - q(a) - q(b)`.
    pub fn form(&self, a: u32, b: u32) -> u32 {
        let k = &self.domain.table;
        let l = &self.codomain.table;
        l.sub(l.sub(self.eval(k.add(a, b)), self.eval(a)), self.eval(b))
    }

    fn fk(&self, x: u32) -> String {
        self.domain.fmt(x)
    }

    fn fl(&self, x: u32) -> String {
        self.codomain.fmt(x)
    }

    /// Checks multiplicativity, `q(k 1) = k^2 1`, and biadditivity of `f`.
    pub fn verify_axioms(&self, cfg: &CheckConfig) -> Result<Report> {
        let k = &self.domain.table;
        let l = &self.codomain.table;
        let n = k.size() as u64;
        let mut rep = Report::new();

        let pairs = n * n;
        if pairs > cfg.exhaustive_bound {
            return Err(Error::DomainTooLarge {
                what: "multiplicativity check".into(),
                size: pairs,
                bound: cfg.exhaustive_bound,
            });
        }
        let w = scan_tuples(k.size(), 2, |t| {
            let (a, b) = (t[0], t[1]);
            let lhs = self.eval(k.mul(a, b));
            let rhs = l.mul(self.eval(a), self.eval(b));
            (lhs != rhs).then(|| {
                witness(
                    "multiplicative",
                    t,
                    format!(
                        "q({}*{}) = {} but q({})q({}) = {}",
                        self.fk(a),
                        self.fk(b),
                        self.fl(lhs),
                        self.fk(a),
                        self.fk(b),
                        self.fl(rhs)
                    ),
                )
            })
        });
        rep.record("multiplicative", CheckMode::Exhaustive, pairs, w);

        // q(k 1_K) depends on k mod char K, k^2 1_L on k mod char L.
        let ck = k.characteristic() as u64;
        let cl = l.characteristic() as u64;
        let period = ck / crate::field::gcd(ck, cl) * cl;
        let mut w = None;
        for m in 0..period {
            let lhs = self.eval(k.scale((m % ck) as i64, k.one()));
            let rhs = l.scale((m * m % cl) as i64, l.one());
            if lhs != rhs {
                w = Some(witness(
                    "integer_squares",
                    &[m as u32],
                    format!("q({m}*1) = {} but {m}^2*1 = {}", self.fl(lhs), self.fl(rhs)),
                ));
                break;
            }
        }
        rep.record("integer_squares", CheckMode::Exhaustive, period, w);

        let triples = n * n * n;
        let check = |t: &[u32]| {
            let (a, b, c) = (t[0], t[1], t[2]);
            let lhs = self.form(k.add(a, b), c);
            let rhs = l.add(self.form(a, c), self.form(b, c));
            (lhs != rhs).then(|| {
                witness(
                    "biadditive",
                    t,
                    format!(
                        "f({}+{}, {}) = {} but f({},{}) + f({},{}) = {}",
                        self.fk(a),
                        self.fk(b),
                        self.fk(c),
                        self.fl(lhs),
                        self.fk(a),
                        self.fk(c),
                        self.fk(b),
                        self.fk(c),
                        self.fl(rhs)
                    ),
                )
            })
        };
        if triples <= cfg.exhaustive_bound {
            let w = scan_tuples(k.size(), 3, check);
            rep.record("biadditive", CheckMode::Exhaustive, triples, w);
        } else if cfg.allow_sampling {
            let w = sample_tuples(k.size(), 3, cfg, check);
            rep.record("biadditive", CheckMode::Sampled, cfg.samples, w);
        } else {
            return Err(Error::DomainTooLarge {
                what: "biadditivity check".into(),
                size: triples,
                bound: cfg.exhaustive_bound,
            });
        }
        Ok(rep)
    }

    pub fn assoc_form(&self) -> BilinearGram {
        let n = self.domain.size();
        let values = (0..n)
            .flat_map(|a| (0..n).map(move |b| (a, b)))
            .map(|(a, b)| self.form(a, b))
            .collect();
        BilinearGram { size: n, values }
    }

    /// `f(ac, bc) = f(a, b) q(c)` over triples and `f(a,b) f(c,d) = f(ac,bd) + f(ad,bc)`
    /// over quadruples; exhaustive within the bound, sampled beyond it.
    pub fn check_lemma21(&self, cfg: &CheckConfig) -> Report {
        let k = &self.domain.table;
        let l = &self.codomain.table;
        let n = k.size() as u64;
        let mut rep = Report::new();

        let scaling = |t: &[u32]| {
            let (a, b, c) = (t[0], t[1], t[2]);
            let lhs = self.form(k.mul(a, c), k.mul(b, c));
            let rhs = l.mul(self.form(a, b), self.eval(c));
            (lhs != rhs).then(|| {
                witness(
                    "form_scaling",
                    t,
                    format!("f(ac, bc) = {} but f(a, b) q(c) = {}", self.fl(lhs), self.fl(rhs)),
                )
            })
        };
        run_scan(&mut rep, "form_scaling", k.size(), 3, n.pow(3), cfg, scaling);

        let product = |t: &[u32]| {
            let (a, b, c, d) = (t[0], t[1], t[2], t[3]);
            let lhs = l.mul(self.form(a, b), self.form(c, d));
            let rhs = l.add(
                self.form(k.mul(a, c), k.mul(b, d)),
                self.form(k.mul(a, d), k.mul(b, c)),
            );
            (lhs != rhs).then(|| {
                witness(
                    "form_product",
                    t,
                    format!(
                        "f(a,b)f(c,d) = {} but f(ac,bd) + f(ad,bc) = {}",
                        self.fl(lhs),
                        self.fl(rhs)
                    ),
                )
            })
        };
        run_scan(&mut rep, "form_product", k.size(), 4, n.pow(4), cfg, product);
        rep
    }

    /// `I^perp = {a : f(a, b) = 0 for all b in I}` for an ideal `I`.
    pub fn perp(&self, ideal: &Subspace) -> Result<Subspace> {
        if ideal.ambient_size != self.domain.size() {
            return Err(Error::InvalidInput("subset of a different ring".into()));
        }
        if let Some(why) = ideal_violation(&self.domain, &ideal.members) {
            return Err(Error::NotAnIdeal(why));
        }
        let zero = self.codomain.table.zero();
        let members = self
            .domain
            .table
            .elements()
            .filter(|&a| ideal.members.iter().all(|&b| self.form(a, b) == zero))
            .collect();
        Ok(Subspace::from_members(&self.domain, members))
    }

    /// `rad(q) = {a in K^perp : q(a) = 0}`.
    pub fn radical(&self) -> Subspace {
        let zero = self.codomain.table.zero();
        let kperp = self
            .perp(&Subspace::whole(&self.domain))
            .expect("K is an ideal of itself");
        let members = kperp
            .members
            .into_iter()
            .filter(|&a| self.eval(a) == zero)
            .collect();
        Subspace::from_members(&self.domain, members)
    }

    /// The induced map on `K / rad(q)`.
    pub fn quotient(&self) -> Result<Quotient> {
        let rad = self.radical();
        if !rad.ideal {
            return Err(Error::NotVerified("radical is not an ideal".into()));
        }
        let k = &self.domain.table;
        let unset = u32::MAX;
        let mut class_of = vec![unset; k.size() as usize];
        let mut reps = Vec::new();
        for x in k.elements() {
            if class_of[x as usize] != unset {
                continue;
            }
            let c = reps.len() as u32;
            reps.push(x);
            for &r in &rad.members {
                let y = k.add(x, r);
                if self.eval(y) != self.eval(x) {
                    return Err(Error::NotVerified(format!(
                        "q not constant on the coset of {}: q({}) != q({})",
                        self.fk(x),
                        self.fk(y),
                        self.fk(x)
                    )));
                }
                class_of[y as usize] = c;
            }
        }
        let table = k.quotient(&reps, &class_of)?;
        let field = if rad.is_trivial() {
            self.domain.field.clone()
        } else {
            None
        };
        let values = reps.iter().map(|&r| self.eval(r)).collect();
        let map = QuadMapTable::new(FiniteRing { table, field }, self.codomain.clone(), values)?;
        Ok(Quotient {
            map,
            reps,
            class_of,
        })
    }

    pub fn detect_hom_branch(&self) -> Result<HomBranch> {
        let rad = self.radical();
        if !rad.is_trivial() {
            return Err(Error::NonzeroRadical(rad.len()));
        }
        let k = &self.domain.table;
        let l = &self.codomain.table;
        let zero = l.zero();
        let form = self.assoc_form();
        if form.is_zero(zero) {
            if l.characteristic() != 2 {
                return Err(Error::Inconsistency(format!(
                    "f vanishes but the codomain has characteristic {}",
                    l.characteristic()
                )));
            }
            return Ok(HomBranch::Char2Hom);
        }
        let orthogonal = k
            .elements()
            .find(|&a| a != k.zero() && k.elements().all(|b| form.get(a, b) == zero));
        Ok(match orthogonal {
            None => HomBranch::BilinearNondegenerate,
            Some(a) => HomBranch::Degenerate { witness: a },
        })
    }

    /// Whether `q` is additive and multiplicative (a ring homomorphism when `q(1) = 1`).
    pub fn is_ring_hom(&self) -> bool {
        let k = &self.domain.table;
        let l = &self.codomain.table;
        self.eval(k.one()) == l.one()
            && k.elements().all(|a| {
                k.elements().all(|b| {
                    self.eval(k.add(a, b)) == l.add(self.eval(a), self.eval(b))
                        && self.eval(k.mul(a, b)) == l.mul(self.eval(a), self.eval(b))
                })
            })
    }
}

fn run_scan<F>(rep: &mut Report, name: &str, size: u32, arity: usize, total: u64, cfg: &CheckConfig, f: F)
where
    F: FnMut(&[u32]) -> Option<Witness>,
{
    if total <= cfg.exhaustive_bound {
        let w = scan_tuples(size, arity, f);
        rep.record(name, CheckMode::Exhaustive, total, w);
    } else {
        let w = sample_tuples(size, arity, cfg, f);
        rep.record(name, CheckMode::Sampled, cfg.samples, w);
    }
}

pub(crate) fn sample_tuples<F>(size: u32, arity: usize, cfg: &CheckConfig, mut f: F) -> Option<Witness>
where
    F: FnMut(&[u32]) -> Option<Witness>,
{
    let mut rng = cfg.rng();
    let mut t = vec![0u32; arity];
    for _ in 0..cfg.samples {
        for x in t.iter_mut() {
            *x = rng.gen_range(0..size);
        }
        if let Some(w) = f(&t) {
            return Some(w);
        }
    }
    None
}
