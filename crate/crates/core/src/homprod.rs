//! Products `x -> prod sigma_i(x)` of field homomorphisms K -> L: equality of products,
//! linear independence of distinct homomorphisms, the symmetrized and polarized sums,
//! and the verdict on when two products agree.

use serde::{Deserialize, Serialize};

use crate::embed::{embeddings, Embedding};
use crate::error::{Error, Result};
use crate::field::{Elem, Field};
use crate::linalg;

/// The homomorphism `x -> e(x^(p^k))` where `e` is the canonical embedding with the given
/// index. The exponent is kept as given; [`HomSpec::canonical_exp`] reduces it.
#[derive(Clone, Debug)]
pub struct HomSpec {
    pub k: Field,
    pub l: Field,
    pub embedding_index: u32,
    pub frobenius_exp: i64,
    image: Vec<Elem>,
}

impl PartialEq for HomSpec {
    fn eq(&self, other: &Self) -> bool {
        self.k == other.k
            && self.l == other.l
            && self.embedding_index == other.embedding_index
            && self.frobenius_exp == other.frobenius_exp
    }
}

impl Eq for HomSpec {}

/// Wire form of a [`HomSpec`]; the fields are given by context.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct HomJson {
    pub embedding_index: u32,
    pub frobenius_exp: i64,
}

impl HomSpec {
    pub fn new(k: &Field, l: &Field, embedding_index: u32, frobenius_exp: i64) -> Result<HomSpec> {
        let embs = embeddings(k, l)?;
        let e = embs.get(embedding_index as usize).ok_or_else(|| {
            Error::InvalidInput(format!(
                "no embedding {embedding_index} of {} into {} ({} exist)",
                k.name(),
                l.name(),
                embs.len()
            ))
        })?;
        Ok(HomSpec::from_embedding(e, frobenius_exp))
    }

    fn from_embedding(e: &Embedding, frobenius_exp: i64) -> HomSpec {
        let k = &e.source;
        let image = k.elements().map(|x| e.apply(k.frobenius(x, frobenius_exp))).collect();
        HomSpec {
            k: k.clone(),
            l: e.target.clone(),
            embedding_index: e.index,
            frobenius_exp,
            image,
        }
    }

    /// Every homomorphism K -> L in canonical form (embedding 0, exponents `0..deg K`).
    pub fn all(k: &Field, l: &Field) -> Result<Vec<HomSpec>> {
        let embs = embeddings(k, l)?;
        Ok(match embs.first() {
            None => Vec::new(),
            Some(e0) => (0..k.degree() as i64).map(|j| HomSpec::from_embedding(e0, j)).collect(),
        })
    }

    /// The canonical homomorphism agreeing with `f` on all of K, if any.
    pub fn identify(k: &Field, l: &Field, f: impl Fn(Elem) -> Elem) -> Result<Option<HomSpec>> {
        Ok(HomSpec::all(k, l)?
            .into_iter()
            .find(|h| k.elements().all(|x| h.apply(x) == f(x))))
    }

    pub fn from_json(k: &Field, l: &Field, j: HomJson) -> Result<HomSpec> {
        HomSpec::new(k, l, j.embedding_index, j.frobenius_exp)
    }

    pub fn to_json(&self) -> HomJson {
        HomJson {
            embedding_index: self.embedding_index,
            frobenius_exp: self.frobenius_exp,
        }
    }

    pub fn apply(&self, x: Elem) -> Elem {
        self.image[x.0 as usize]
    }

    /// Total Frobenius exponent relative to embedding 0, unreduced.
    pub fn raw_exp(&self) -> i64 {
        self.embedding_index as i64 + self.frobenius_exp
    }

    /// `j` in `0..deg K` with `self = (embedding 0) o Frobenius^j`.
    pub fn canonical_exp(&self) -> u32 {
        self.raw_exp().rem_euclid(self.k.degree() as i64) as u32
    }

    pub fn same_map(&self, other: &HomSpec) -> bool {
        self.k == other.k && self.l == other.l && self.canonical_exp() == other.canonical_exp()
    }

    /// `self` followed by `Frobenius^l` on L.
    pub fn twist(&self, l: i64) -> HomSpec {
        let e = embeddings(&self.k, &self.l).expect("embedding exists")[self.embedding_index as usize].clone();
        HomSpec::from_embedding(&e, self.frobenius_exp + l)
    }

    /// Additivity, multiplicativity and injectivity over all of K.
    pub fn is_field_hom(&self) -> bool {
        let (k, l) = (&self.k, &self.l);
        self.apply(Elem::ONE) == Elem::ONE
            && k.nonzero().all(|x| !self.apply(x).is_zero())
            && k.elements().all(|a| {
                k.elements().all(|b| {
                    self.apply(k.add(a, b)) == l.add(self.apply(a), self.apply(b))
                        && self.apply(k.mul(a, b)) == l.mul(self.apply(a), self.apply(b))
                })
            })
    }

    /// Short label such as `p^2` or `id`, relative to embedding 0.
    pub fn label(&self) -> String {
        match (self.embedding_index, self.frobenius_exp) {
            (0, 0) => "id".into(),
            (0, 1) => "p".into(),
            (0, k) => format!("p^{k}"),
            (i, k) => format!("e{i}.p^{k}"),
        }
    }
}

/// `x -> prod_i sigma_i(x)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ProductMap {
    pub homs: Vec<HomSpec>,
}

impl ProductMap {
    pub fn new(homs: Vec<HomSpec>) -> Result<ProductMap> {
        let Some(first) = homs.first() else {
            return Err(Error::InvalidInput("a product needs at least one factor".into()));
        };
        if homs.iter().any(|h| h.k != first.k || h.l != first.l) {
            return Err(Error::InvalidInput("factors must share domain and codomain".into()));
        }
        Ok(ProductMap { homs })
    }

    pub fn len(&self) -> usize {
        self.homs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.homs.is_empty()
    }

    pub fn k(&self) -> &Field {
        &self.homs[0].k
    }

    pub fn l(&self) -> &Field {
        &self.homs[0].l
    }

    pub fn eval(&self, x: Elem) -> Elem {
        let l = self.l();
        self.homs.iter().fold(Elem::ONE, |acc, h| l.mul(acc, h.apply(x)))
    }

    /// `e` with `prod sigma_i(x) = e0(x)^e` on K*, reduced mod |K*|.
    pub fn exponent(&self) -> u64 {
        let k = self.k();
        let group = k.order() as u64 - 1;
        self.homs
            .iter()
            .map(|h| (k.p() as u64).pow(h.canonical_exp()) % group)
            .sum::<u64>()
            % group
    }

    pub fn labels(&self) -> Vec<String> {
        self.homs.iter().map(HomSpec::label).collect()
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum EqualityMethod {
    ExponentAndPointwise,
    /// Factors use different embedding indices.
    Pointwise,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Equality {
    pub equal: bool,
    pub method: EqualityMethod,
    pub witness: Option<Elem>,
}

/// Pointwise comparison over all of K, cross-checked against exponent arithmetic when
/// every factor uses the same embedding.
pub fn products_equal(p: &ProductMap, q: &ProductMap) -> Result<Equality> {
    if p.k() != q.k() || p.l() != q.l() {
        return Err(Error::InvalidInput("products over different fields".into()));
    }
    let witness = p.k().elements().find(|&x| p.eval(x) != q.eval(x));
    let pointwise = witness.is_none();
    let idx = p.homs[0].embedding_index;
    let same_embedding = p.homs.iter().chain(&q.homs).all(|h| h.embedding_index == idx);
    if !same_embedding {
        return Ok(Equality {
            equal: pointwise,
            method: EqualityMethod::Pointwise,
            witness,
        });
    }
    let by_exponent = p.exponent() == q.exponent();
    if by_exponent != pointwise {
        return Err(Error::Inconsistency(format!(
            "exponent sums say {by_exponent}, pointwise evaluation says {pointwise}"
        )));
    }
    Ok(Equality {
        equal: pointwise,
        method: EqualityMethod::ExponentAndPointwise,
        witness,
    })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Independence {
    Independent,
    /// Coefficients `c` with `sum c_i sigma_i(x) = 0` for all `x`; the first nonzero is 1.
    Dependent(Vec<Elem>),
}

pub const MAX_ARTIN_DOMAIN: u32 = 1 << 12;

/// Solves `sum c_i sigma_i(x) = 0` over all `x` in K.
pub fn artin_check(homs: &[HomSpec]) -> Result<Independence> {
    let Some(first) = homs.first() else {
        return Ok(Independence::Independent);
    };
    let (k, l) = (&first.k, &first.l);
    if homs.iter().any(|h| &h.k != k || &h.l != l) {
        return Err(Error::InvalidInput("homomorphisms must share domain and codomain".into()));
    }
    if k.order() > MAX_ARTIN_DOMAIN {
        return Err(Error::TooLarge {
            what: "Artin system".into(),
            size: k.order() as u64,
            bound: MAX_ARTIN_DOMAIN as u64,
        });
    }
    let rows: Vec<Vec<Elem>> = k.elements().map(|x| homs.iter().map(|h| h.apply(x)).collect()).collect();
    let Some(mut c) = linalg::kernel(l, &rows, homs.len()).into_iter().next() else {
        return Ok(Independence::Independent);
    };
    let lead = *c.iter().find(|x| !x.is_zero()).expect("kernel vectors are nonzero");
    let inv = l.inv(lead)?;
    c = linalg::scale_vec(l, inv, &c);
    debug_assert!(rows
        .iter()
        .all(|r| r.iter().zip(&c).fold(Elem::ZERO, |acc, (&a, &b)| l.add(acc, l.mul(a, b))).is_zero()));
    Ok(Independence::Dependent(c))
}

pub const MAX_FACTORS: usize = 6;

fn permutations(n: usize) -> Vec<Vec<usize>> {
    fn go(cur: &mut Vec<usize>, used: &mut Vec<bool>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == used.len() {
            out.push(cur.clone());
            return;
        }
        for i in 0..used.len() {
            if !used[i] {
                used[i] = true;
                cur.push(i);
                go(cur, used, out);
                cur.pop();
                used[i] = false;
            }
        }
    }
    let mut out = Vec::new();
    go(&mut Vec::new(), &mut vec![false; n], &mut out);
    out
}

fn check_factors(sigmas: &[HomSpec], xs_len: usize) -> Result<()> {
    if sigmas.len() > MAX_FACTORS {
        return Err(Error::TooManyFactors(sigmas.len()));
    }
    if xs_len > MAX_FACTORS {
        return Err(Error::TooManyFactors(xs_len));
    }
    if sigmas.is_empty() {
        return Err(Error::InvalidInput("need at least one homomorphism".into()));
    }
    Ok(())
}

/// `sum over permutations g of prod_i sigma_{g(i)}(x_i)`.
pub fn symmetrized_sum(sigmas: &[HomSpec], xs: &[Elem]) -> Result<Elem> {
    check_factors(sigmas, xs.len())?;
    if sigmas.len() != xs.len() {
        return Err(Error::InvalidInput("need one argument per homomorphism".into()));
    }
    Ok(symsum_with(sigmas, xs, &permutations(sigmas.len())))
}

fn symsum_with(sigmas: &[HomSpec], xs: &[Elem], perms: &[Vec<usize>]) -> Elem {
    let l = &sigmas[0].l;
    perms.iter().fold(Elem::ZERO, |acc, g| {
        let term = xs
            .iter()
            .enumerate()
            .fold(Elem::ONE, |t, (i, &x)| l.mul(t, sigmas[g[i]].apply(x)));
        l.add(acc, term)
    })
}

/// `sum over nonempty J of (-1)^|J| prod_i sigma_i(x_J)` with `x_J = sum_{j in J} x_j`.
/// The homomorphism list may be shorter than the argument list.
pub fn polarized_sum(sigmas: &[HomSpec], xs: &[Elem]) -> Result<Elem> {
    check_factors(sigmas, xs.len())?;
    let (k, l) = (&sigmas[0].k, &sigmas[0].l);
    let n = xs.len();
    let mut acc = Elem::ZERO;
    for mask in 1u32..(1 << n) {
        let xj = (0..n)
            .filter(|i| mask >> i & 1 == 1)
            .fold(Elem::ZERO, |s, i| k.add(s, xs[i]));
        let prod = sigmas.iter().fold(Elem::ONE, |t, h| l.mul(t, h.apply(xj)));
        acc = if mask.count_ones() % 2 == 1 {
            l.sub(acc, prod)
        } else {
            l.add(acc, prod)
        };
    }
    Ok(acc)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SymsumVerdict {
    pub vanishes: bool,
    /// Arguments at which the sum is nonzero.
    pub witness: Option<Vec<Elem>>,
    /// Some homomorphism occurs at least p times.
    pub structural: bool,
    pub evaluations: u64,
}

impl SymsumVerdict {
    pub fn agrees(&self) -> bool {
        self.vanishes == self.structural
    }
}

pub const MAX_SYMSUM_EVALS: u64 = 1 << 20;

/// Whether some homomorphism occurs at least p times (up to equality of maps).
pub fn has_p_duplicates(sigmas: &[HomSpec]) -> Option<Vec<usize>> {
    let p = sigmas.first()?.k.p() as usize;
    (0..sigmas.len()).find_map(|i| {
        let idx: Vec<usize> = (0..sigmas.len()).filter(|&j| sigmas[j].same_map(&sigmas[i])).collect();
        (idx.len() >= p && idx[0] == i).then(|| idx[..p].to_vec())
    })
}

/// Evaluates the symmetrized sum on all of `K^n`.
pub fn symsum_vanishes(sigmas: &[HomSpec]) -> Result<SymsumVerdict> {
    check_factors(sigmas, sigmas.len())?;
    let k = &sigmas[0].k;
    let n = sigmas.len();
    let total = (k.order() as u64).saturating_pow(n as u32);
    if total > MAX_SYMSUM_EVALS {
        return Err(Error::TooLarge {
            what: "symmetrized-sum scan".into(),
            size: total,
            bound: MAX_SYMSUM_EVALS,
        });
    }
    let perms = permutations(n);
    let mut witness = None;
    let mut xs = vec![Elem::ZERO; n];
    for idx in 0..total {
        let mut r = idx;
        for x in xs.iter_mut() {
            *x = Elem((r % k.order() as u64) as u32);
            r /= k.order() as u64;
        }
        if !symsum_with(sigmas, &xs, &perms).is_zero() {
            witness = Some(xs.clone());
            break;
        }
    }
    Ok(SymsumVerdict {
        vanishes: witness.is_none(),
        witness,
        structural: has_p_duplicates(sigmas).is_some(),
        evaluations: total,
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum VerdictTag {
    NotEqual,
    Case1,
    Case2,
    /// Equal products for which neither case could be certified.
    Inconsistent,
}

/// `target = source o Frobenius^l`, indices into the respective lists.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Twist {
    pub target: usize,
    pub source: usize,
    pub l: i64,
}

/// Inclusive bounds on `l (p - 1)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TwistBounds {
    pub lo: i64,
    pub hi: i64,
}

impl TwistBounds {
    fn admits(&self, l: i64, p: i64) -> bool {
        (self.lo..=self.hi).contains(&(l * (p - 1)))
    }

    /// Admissible `l`, smallest `|l|` first and positive before negative.
    fn candidates(&self, p: i64) -> Vec<i64> {
        let lo = self.lo.div_euclid(p - 1) - 1;
        let hi = self.hi.div_euclid(p - 1) + 1;
        let mut ls: Vec<i64> = (lo..=hi).filter(|&l| self.admits(l, p)).collect();
        ls.sort_by_key(|&l| (l.abs(), l < 0));
        ls
    }
}

/// Serialized as `{"tag": ..., "payload": {...}}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(into = "VerdictWire", from = "VerdictWire")]
pub struct Verdict {
    pub tag: VerdictTag,
    /// The longer list is called sigma; true when the inputs were swapped to achieve that.
    pub swapped: bool,
    pub n: usize,
    pub m: usize,
    pub not_equal_witness: Option<Vec<u32>>,
    /// Case 1: `tau_i = sigma_{permutation[i]}`.
    pub permutation: Option<Vec<usize>>,
    /// Case 2: indices of p equal sigmas.
    pub equal_sigmas: Option<Vec<usize>>,
    /// Case 2: `tau_target = sigma_source o p^l` for every tau.
    pub tau_twists: Vec<Twist>,
    /// Case 2: `sigma_target = tau_source o p^l` for every sigma.
    pub sigma_twists: Vec<Twist>,
    pub tau_bounds: Option<TwistBounds>,
    pub sigma_bounds: Option<TwistBounds>,
    pub inconsistency: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
struct VerdictPayload {
    swapped: bool,
    n: usize,
    m: usize,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    not_equal_witness: Option<Vec<u32>>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    permutation: Option<Vec<usize>>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    equal_sigmas: Option<Vec<usize>>,
    #[serde(skip_serializing_if = "Vec::is_empty", default)]
    tau_twists: Vec<Twist>,
    #[serde(skip_serializing_if = "Vec::is_empty", default)]
    sigma_twists: Vec<Twist>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    tau_bounds: Option<TwistBounds>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    sigma_bounds: Option<TwistBounds>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    inconsistency: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
struct VerdictWire {
    tag: VerdictTag,
    payload: VerdictPayload,
}

impl From<Verdict> for VerdictWire {
    fn from(v: Verdict) -> VerdictWire {
        VerdictWire {
            tag: v.tag,
            payload: VerdictPayload {
                swapped: v.swapped,
                n: v.n,
                m: v.m,
                not_equal_witness: v.not_equal_witness,
                permutation: v.permutation,
                equal_sigmas: v.equal_sigmas,
                tau_twists: v.tau_twists,
                sigma_twists: v.sigma_twists,
                tau_bounds: v.tau_bounds,
                sigma_bounds: v.sigma_bounds,
                inconsistency: v.inconsistency,
            },
        }
    }
}

impl From<VerdictWire> for Verdict {
    fn from(w: VerdictWire) -> Verdict {
        let p = w.payload;
        Verdict {
            tag: w.tag,
            swapped: p.swapped,
            n: p.n,
            m: p.m,
            not_equal_witness: p.not_equal_witness,
            permutation: p.permutation,
            equal_sigmas: p.equal_sigmas,
            tau_twists: p.tau_twists,
            sigma_twists: p.sigma_twists,
            tau_bounds: p.tau_bounds,
            sigma_bounds: p.sigma_bounds,
            inconsistency: p.inconsistency,
        }
    }
}

impl Verdict {
    fn base(tag: VerdictTag, swapped: bool, n: usize, m: usize) -> Verdict {
        Verdict {
            tag,
            swapped,
            n,
            m,
            not_equal_witness: None,
            permutation: None,
            equal_sigmas: None,
            tau_twists: Vec::new(),
            sigma_twists: Vec::new(),
            tau_bounds: None,
            sigma_bounds: None,
            inconsistency: None,
        }
    }
}

fn find_twist(target: &HomSpec, sources: &[HomSpec], bounds: TwistBounds, p: i64) -> Option<(usize, i64)> {
    // the unreduced exponent difference reproduces the caller's own notation when it fits
    for (i, s) in sources.iter().enumerate() {
        let l = target.raw_exp() - s.raw_exp();
        if bounds.admits(l, p) && target.same_map(&s.twist(l)) {
            return Some((i, l));
        }
    }
    for l in bounds.candidates(p) {
        for (i, s) in sources.iter().enumerate() {
            if target.same_map(&s.twist(l)) {
                return Some((i, l));
            }
        }
    }
    None
}

/// Decides which conclusion holds for two products of homomorphisms.
pub fn theorem14_verdict(p_in: &ProductMap, q_in: &ProductMap) -> Result<Verdict> {
    let eq = products_equal(p_in, q_in)?;
    let swapped = p_in.len() < q_in.len();
    let (sig, tau) = if swapped { (q_in, p_in) } else { (p_in, q_in) };
    let (n, m) = (sig.len(), tau.len());
    if !eq.equal {
        let mut v = Verdict::base(VerdictTag::NotEqual, swapped, n, m);
        v.not_equal_witness = eq.witness.map(|x| sig.k().coeffs(x));
        return Ok(v);
    }

    if n == m {
        let mut used = vec![false; n];
        let perm: Option<Vec<usize>> = tau
            .homs
            .iter()
            .map(|t| {
                let i = (0..n).find(|&i| !used[i] && sig.homs[i].same_map(t))?;
                used[i] = true;
                Some(i)
            })
            .collect();
        if let Some(perm) = perm {
            let mut v = Verdict::base(VerdictTag::Case1, swapped, n, m);
            v.permutation = Some(perm);
            return Ok(v);
        }
    }

    let p = sig.k().p() as i64;
    let mut v = Verdict::base(VerdictTag::Case2, swapped, n, m);
    let tau_bounds = TwistBounds {
        lo: -(m as i64 - 1),
        hi: n as i64 - 1,
    };
    let sigma_bounds = TwistBounds {
        lo: -(n as i64 - 1),
        hi: m as i64 - 1,
    };
    v.tau_bounds = Some(tau_bounds);
    v.sigma_bounds = Some(sigma_bounds);
    let mut problems = Vec::new();
    match has_p_duplicates(&sig.homs) {
        Some(idx) => v.equal_sigmas = Some(idx),
        None => problems.push(format!("no {p} equal homomorphisms among the longer list")),
    }
    for (j, t) in tau.homs.iter().enumerate() {
        match find_twist(t, &sig.homs, tau_bounds, p) {
            Some((i, l)) => v.tau_twists.push(Twist { target: j, source: i, l }),
            None => problems.push(format!("tau_{j} is no admissible twist of any sigma")),
        }
    }
    for (i, s) in sig.homs.iter().enumerate() {
        match find_twist(s, &tau.homs, sigma_bounds, p) {
            Some((j, l)) => v.sigma_twists.push(Twist { target: i, source: j, l }),
            None => problems.push(format!("sigma_{i} is no admissible twist of any tau")),
        }
    }
    if !problems.is_empty() {
        v.tag = VerdictTag::Inconsistent;
        v.inconsistency = Some(problems.join("; "));
    }
    Ok(v)
}

/// Re-checks a verdict's payload against the inputs.
pub fn recheck_verdict(p_in: &ProductMap, q_in: &ProductMap, v: &Verdict) -> bool {
    let (sig, tau) = if v.swapped { (q_in, p_in) } else { (p_in, q_in) };
    let p = sig.k().p() as i64;
    match v.tag {
        VerdictTag::NotEqual => v
            .not_equal_witness
            .as_ref()
            .and_then(|c| sig.k().from_coeffs(c).ok())
            .is_some_and(|x| sig.eval(x) != tau.eval(x)),
        VerdictTag::Case1 => v.permutation.as_ref().is_some_and(|g| {
            let mut seen = g.clone();
            seen.sort_unstable();
            sig.len() == tau.len()
                && seen == (0..sig.len()).collect::<Vec<_>>()
                && tau.homs.iter().zip(g).all(|(t, &i)| t.same_map(&sig.homs[i]))
        }),
        VerdictTag::Case2 => {
            let (Some(tb), Some(sb), Some(eq)) = (v.tau_bounds, v.sigma_bounds, &v.equal_sigmas) else {
                return false;
            };
            eq.len() == p as usize
                && eq.windows(2).all(|w| w[0] < w[1])
                && eq.iter().all(|&i| sig.homs[i].same_map(&sig.homs[eq[0]]))
                && v.tau_twists.len() == tau.len()
                && v.tau_twists.iter().all(|t| {
                    tb.admits(t.l, p) && tau.homs[t.target].same_map(&sig.homs[t.source].twist(t.l))
                })
                && v.sigma_twists.len() == sig.len()
                && v.sigma_twists.iter().all(|t| {
                    sb.admits(t.l, p) && sig.homs[t.target].same_map(&tau.homs[t.source].twist(t.l))
                })
        }
        VerdictTag::Inconsistent => false,
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct ScanReport {
    pub pairs: u64,
    pub equal_pairs: u64,
    pub case1: u64,
    pub case2: u64,
    pub inconsistencies: Vec<String>,
}

pub const MAX_SCAN_PAIRS: u64 = 1 << 20;

fn tuples(homs: &[HomSpec], max_len: usize) -> Vec<Vec<HomSpec>> {
    let mut out = Vec::new();
    let mut layer: Vec<Vec<HomSpec>> = vec![Vec::new()];
    for _ in 0..max_len {
        layer = layer
            .iter()
            .flat_map(|t| {
                homs.iter().map(move |h| {
                    let mut t = t.clone();
                    t.push(h.clone());
                    t
                })
            })
            .collect();
        out.extend(layer.iter().cloned());
    }
    out
}

/// Every pair of homomorphism tuples of lengths up to the given maxima; each equal pair
/// must receive a re-verifiable case 1 or case 2 verdict.
pub fn theorem14_scan(k: &Field, l: &Field, n_max: usize, m_max: usize) -> Result<ScanReport> {
    let homs = HomSpec::all(k, l)?;
    let count = |len: usize| -> u64 { (1..=len).map(|i| (homs.len() as u64).saturating_pow(i as u32)).sum() };
    let pairs = count(n_max).saturating_mul(count(m_max));
    if pairs > MAX_SCAN_PAIRS {
        return Err(Error::TooLarge {
            what: "tuple pairs".into(),
            size: pairs,
            bound: MAX_SCAN_PAIRS,
        });
    }
    let ps = tuples(&homs, n_max);
    let qs = tuples(&homs, m_max);
    let mut rep = ScanReport::default();
    for a in &ps {
        let pa = ProductMap::new(a.clone())?;
        for b in &qs {
            let pb = ProductMap::new(b.clone())?;
            rep.pairs += 1;
            let v = theorem14_verdict(&pa, &pb)?;
            if v.tag != VerdictTag::NotEqual {
                rep.equal_pairs += 1;
            }
            match v.tag {
                VerdictTag::NotEqual => {}
                VerdictTag::Case1 => rep.case1 += 1,
                VerdictTag::Case2 => rep.case2 += 1,
                VerdictTag::Inconsistent => rep.inconsistencies.push(format!(
                    "{:?} vs {:?}: {}",
                    pa.labels(),
                    pb.labels(),
                    v.inconsistency.clone().unwrap_or_default()
                )),
            }
            if v.tag != VerdictTag::Inconsistent && !recheck_verdict(&pa, &pb, &v) {
                rep.inconsistencies
                    .push(format!("{:?} vs {:?}: payload does not re-verify", pa.labels(), pb.labels()));
            }
        }
    }
    Ok(rep)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::make_field;

    fn f4() -> Field {
        make_field(2, 2, None).unwrap()
    }

    fn hom(k: &Field, e: i64) -> HomSpec {
        HomSpec::new(k, k, 0, e).unwrap()
    }

    fn prod(k: &Field, es: &[i64]) -> ProductMap {
        ProductMap::new(es.iter().map(|&e| hom(k, e)).collect()).unwrap()
    }

    #[test]
    fn product_evaluation() {
        let f = f4();
        let t = f.t();
        assert_eq!(prod(&f, &[0, 1]).eval(t), Elem::ONE);
        assert_eq!(prod(&f, &[0]).eval(t), t);
        assert_eq!(prod(&f, &[1, 1, 1]).eval(t), Elem::ONE);
    }

    #[test]
    fn equality_of_products() {
        let f = f4();
        let e = products_equal(&prod(&f, &[1, 1, 1]), &prod(&f, &[2, 0, 0])).unwrap();
        assert!(e.equal);
        assert_eq!(e.method, EqualityMethod::ExponentAndPointwise);
        let e = products_equal(&prod(&f, &[0]), &prod(&f, &[1])).unwrap();
        assert!(!e.equal);
        assert_eq!(e.witness, Some(f.t()));
        assert!(products_equal(&prod(&f, &[0, 0]), &prod(&f, &[1])).unwrap().equal);
        let mixed = ProductMap::new(vec![HomSpec::new(&f, &f, 1, 0).unwrap()]).unwrap();
        let e = products_equal(&mixed, &prod(&f, &[1])).unwrap();
        assert!(e.equal);
        assert_eq!(e.method, EqualityMethod::Pointwise);
    }

    #[test]
    fn artin() {
        let f = f4();
        assert_eq!(artin_check(&[hom(&f, 0), hom(&f, 1)]).unwrap(), Independence::Independent);
        assert_eq!(artin_check(&[hom(&f, 0)]).unwrap(), Independence::Independent);
        assert_eq!(
            artin_check(&[hom(&f, 0), hom(&f, 0)]).unwrap(),
            Independence::Dependent(vec![Elem::ONE, f.neg(Elem::ONE)])
        );
    }

    #[test]
    fn symmetrized_sums() {
        let f = f4();
        let t = f.t();
        assert_eq!(symmetrized_sum(&[hom(&f, 0), hom(&f, 0)], &[t, t]).unwrap(), Elem::ZERO);
        assert_eq!(symmetrized_sum(&[hom(&f, 0), hom(&f, 1)], &[Elem::ONE, t]).unwrap(), Elem::ONE);
        assert_eq!(symmetrized_sum(&[hom(&f, 0)], &[t]).unwrap(), t);
        let seven: Vec<HomSpec> = (0..7).map(|_| hom(&f, 0)).collect();
        assert_eq!(symmetrized_sum(&seven, &[t; 7]).unwrap_err(), Error::TooManyFactors(7));
    }

    #[test]
    fn vanishing() {
        let f = f4();
        let v = symsum_vanishes(&[hom(&f, 0), hom(&f, 0)]).unwrap();
        assert!(v.vanishes && v.structural);
        assert_eq!(v.evaluations, 16);
        let v = symsum_vanishes(&[hom(&f, 0), hom(&f, 1)]).unwrap();
        assert!(!v.vanishes && !v.structural);
        assert_eq!(v.witness, Some(vec![f.t(), Elem::ONE]));
        let v = symsum_vanishes(&[hom(&f, 0)]).unwrap();
        assert_eq!(v.witness, Some(vec![Elem::ONE]));
    }

    #[test]
    fn polarization() {
        let f = f4();
        let t = f.t();
        assert_eq!(polarized_sum(&[hom(&f, 0)], &[t]).unwrap(), f.neg(t));
        let s = [hom(&f, 0), hom(&f, 1)];
        assert_eq!(
            polarized_sum(&s, &[Elem::ONE, t]).unwrap(),
            symmetrized_sum(&s, &[Elem::ONE, t]).unwrap()
        );
    }

    #[test]
    fn x6_example_is_case2() {
        let f = f4();
        let (p, q) = (prod(&f, &[1, 1, 1]), prod(&f, &[2, 0, 0]));
        let v = theorem14_verdict(&p, &q).unwrap();
        assert_eq!(v.tag, VerdictTag::Case2);
        assert_eq!(v.equal_sigmas, Some(vec![0, 1]));
        assert_eq!(v.tau_twists[0], Twist { target: 0, source: 0, l: 1 });
        assert_eq!(v.tau_twists[1], Twist { target: 1, source: 0, l: -1 });
        assert!(recheck_verdict(&p, &q, &v));
        let j = serde_json::to_value(&v).unwrap();
        assert_eq!(j["tag"], "case2");
        assert_eq!(j["payload"]["tau_twists"][0]["l"], 1);
        let back: Verdict = serde_json::from_value(j).unwrap();
        assert_eq!(back, v);
    }

    #[test]
    fn case1_on_f9() {
        let f9 = make_field(3, 2, None).unwrap();
        let (p, q) = (prod(&f9, &[0, 1]), prod(&f9, &[1, 0]));
        let v = theorem14_verdict(&p, &q).unwrap();
        assert_eq!(v.tag, VerdictTag::Case1);
        assert_eq!(v.permutation, Some(vec![1, 0]));
        assert!(recheck_verdict(&p, &q, &v));
    }

    #[test]
    fn square_versus_frobenius() {
        let f = f4();
        let (p, q) = (prod(&f, &[0, 0]), prod(&f, &[1]));
        let v = theorem14_verdict(&p, &q).unwrap();
        assert_eq!(v.tag, VerdictTag::Case2);
        assert_eq!(v.tau_twists, vec![Twist { target: 0, source: 0, l: 1 }]);
        assert_eq!(v.sigma_twists[0].l, -1);
        assert_eq!(v.tau_bounds, Some(TwistBounds { lo: 0, hi: 1 }));
        assert_eq!(v.sigma_bounds, Some(TwistBounds { lo: -1, hi: 0 }));
        // swapping the inputs gives the same verdict
        let w = theorem14_verdict(&q, &p).unwrap();
        assert!(w.swapped);
        assert!(recheck_verdict(&q, &p, &w));
    }

    #[test]
    fn unequal_products() {
        let f = f4();
        let (p, q) = (prod(&f, &[0]), prod(&f, &[1]));
        let v = theorem14_verdict(&p, &q).unwrap();
        assert_eq!(v.tag, VerdictTag::NotEqual);
        assert!(recheck_verdict(&p, &q, &v));
    }

    #[test]
    fn small_scans() {
        let f = f4();
        let r = theorem14_scan(&f, &f, 3, 3).unwrap();
        assert!(r.inconsistencies.is_empty(), "{:?}", r.inconsistencies);
        assert!(r.case2 >= 1);
        let f9 = make_field(3, 2, None).unwrap();
        let r = theorem14_scan(&f9, &f9, 2, 2).unwrap();
        assert_eq!(r.case2, 0);
        assert_eq!(r.case1, r.equal_pairs);
        let r = theorem14_scan(&f9, &f9, 3, 1).unwrap();
        assert!(r.case2 >= 1);
        assert!(r.inconsistencies.is_empty());
    }
}
