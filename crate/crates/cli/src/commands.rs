use mulquad::classify::{self, Decomposition, DecompositionJson};
use mulquad::homprod::{self, Independence, ProductMap, VerdictTag};
use mulquad::schema::{ElemJson, Envelope, HomsDoc, MapDoc, ParsedMap, ProductsDoc};
use mulquad::{CheckConfig, Error, Field, Report};
use serde_json::{json, Value};

/// A completed run: whether the checked property holds, the JSON body and a text summary.
pub struct Outcome {
    pub ok: bool,
    pub body: Value,
    pub summary: Vec<String>,
}

impl Outcome {
    pub fn json(&self, command: &str) -> String {
        let env = Envelope::new(command, self.ok, &self.body);
        serde_json::to_string_pretty(&env).expect("serializable") + "\n"
    }

    pub fn text(&self, command: &str) -> String {
        let mut s = format!("{command}: {}\n", if self.ok { "ok" } else { "violated" });
        for line in &self.summary {
            s.push_str("  ");
            s.push_str(line);
            s.push('\n');
        }
        s
    }
}

/// An input or capacity error.
pub struct Failure {
    pub kind: String,
    pub message: String,
}

impl Failure {
    pub fn io(message: String) -> Failure {
        Failure {
            kind: "io".into(),
            message,
        }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Failure {
        Failure {
            kind: e.kind().into(),
            message: e.to_string(),
        }
    }
}

impl From<serde_json::Error> for Failure {
    fn from(e: serde_json::Error) -> Failure {
        Failure {
            kind: "invalid_input".into(),
            message: e.to_string(),
        }
    }
}

type Run = Result<Outcome, Failure>;

fn parse_map(input: &str) -> Result<ParsedMap, Failure> {
    let doc: MapDoc = serde_json::from_str(input)?;
    Ok(doc.parse()?)
}

fn report_lines(r: &Report) -> Vec<String> {
    let mut out: Vec<String> = r
        .checks
        .iter()
        .map(|c| {
            format!(
                "{:<22} {:<10} {:>10} evaluations  {}",
                c.name,
                format!("{:?}", c.mode).to_lowercase(),
                c.evaluations,
                if c.passed { "pass" } else { "FAIL" }
            )
        })
        .collect();
    out.extend(r.witnesses.iter().map(|w| format!("witness {} {:?}: {}", w.check, w.args, w.detail)));
    out
}

fn to_value<T: serde::Serialize>(x: &T) -> Value {
    serde_json::to_value(x).expect("serializable")
}

pub fn verify(input: &str, cfg: &CheckConfig) -> Run {
    let m = parse_map(input)?;
    let q = &m.table;
    let mut report = q.verify_axioms(cfg)?;
    let mut body = json!({});
    let mut summary = Vec::new();
    if report.ok {
        report.merge(q.check_lemma21(cfg));
        let rad = q.radical();
        let nonzero = q
            .domain
            .table
            .elements()
            .flat_map(|a| q.domain.table.elements().map(move |b| (a, b)))
            .find(|&(a, b)| q.form(a, b) != q.codomain.table.zero());
        body["radical_size"] = json!(rad.len());
        body["form_zero"] = json!(nonzero.is_none());
        if let Some((a, b)) = nonzero {
            body["form_nonzero_at"] = json!({
                "a": ElemJson::of(&q.domain, a),
                "b": ElemJson::of(&q.domain, b),
                "value": ElemJson::of(&q.codomain, q.form(a, b)),
            });
            summary.push(format!(
                "f({}, {}) = {}",
                q.domain.fmt(a),
                q.domain.fmt(b),
                q.codomain.fmt(q.form(a, b))
            ));
        } else {
            summary.push("f vanishes identically".into());
        }
        summary.push(format!("radical has {} element(s)", rad.len()));
        if rad.is_trivial() {
            let branch = q.detect_hom_branch()?;
            body["branch"] = json!(branch.tag());
            summary.push(format!("branch: {}", branch.tag()));
        }
    }
    summary.extend(report_lines(&report));
    body["report"] = to_value(&report);
    Ok(Outcome {
        ok: report.ok,
        body,
        summary,
    })
}

fn decomposition_lines(d: &DecompositionJson) -> Vec<String> {
    let kind = d.kind.map(|k| format!(" ({})", to_value(&k).as_str().unwrap_or_default())).unwrap_or_default();
    vec![
        format!("branch: {}{kind}", to_value(&d.branch).as_str().unwrap_or_default()),
        format!(
            "phi1: embedding {} then Frobenius^{} into F{}",
            d.phi1.embedding_index,
            d.phi1.frobenius_exp,
            d.phi1.target.p.pow(d.phi1.target.n)
        ),
        format!(
            "phi2: embedding {} then Frobenius^{} into F{}",
            d.phi2.embedding_index,
            d.phi2.frobenius_exp,
            d.phi2.target.p.pow(d.phi2.target.n)
        ),
    ]
}

/// Classifies a verified map, or reports the axiom failure.
fn classify_parsed(m: &ParsedMap, cfg: &CheckConfig) -> Result<Result<Decomposition, Report>, Failure> {
    let axioms = m.table.verify_axioms(cfg)?;
    if !axioms.ok {
        return Ok(Err(axioms));
    }
    Ok(Ok(classify::classify(m.basis()?, cfg)?))
}

pub fn classify(input: &str, cfg: &CheckConfig) -> Run {
    let m = parse_map(input)?;
    match classify_parsed(&m, cfg)? {
        Err(report) => Ok(Outcome {
            ok: false,
            summary: report_lines(&report),
            body: json!({ "report": report }),
        }),
        Ok(d) => {
            let j = d.to_json();
            let mut summary = decomposition_lines(&j);
            summary.push(format!(
                "radical in K: {} element(s); extended radical dimension {}; M dimension {}",
                j.radical_size, j.ext_radical_dim, j.m_dim
            ));
            summary.extend(report_lines(&d.checks));
            Ok(Outcome {
                ok: d.checks.ok,
                body: json!({ "decomposition": j, "report": d.checks }),
                summary,
            })
        }
    }
}

pub fn decompose(input: &str, cfg: &CheckConfig) -> Run {
    let raw: Value = serde_json::from_str(input)?;
    let m = parse_map(input)?;
    let b = m.basis()?;
    if let Some(given) = raw.get("decomposition") {
        let j: DecompositionJson = serde_json::from_value(given.clone())?;
        let d = Decomposition::from_json(&b.k, &j)?;
        let report = classify::verify_decomposition(b, &d);
        let mut summary = decomposition_lines(&j);
        summary.extend(report_lines(&report));
        return Ok(Outcome {
            ok: report.ok,
            body: json!({ "decomposition": j, "report": report }),
            summary,
        });
    }
    match classify_parsed(&m, cfg)? {
        Err(report) => Ok(Outcome {
            ok: false,
            summary: report_lines(&report),
            body: json!({ "report": report }),
        }),
        Ok(d) => {
            let report = classify::verify_decomposition(b, &d);
            let j = d.to_json();
            let mut body = to_value(&j);
            body["report"] = to_value(&report);
            let mut summary = decomposition_lines(&j);
            summary.extend(report_lines(&report));
            Ok(Outcome {
                ok: report.ok,
                body,
                summary,
            })
        }
    }
}

fn field(name: &str) -> Result<Field, Failure> {
    Ok(Field::parse_shorthand(name)?)
}

pub fn enumerate(k: &str, l: &str, cfg: &CheckConfig) -> Run {
    let (k, l) = (field(k)?, field(l)?);
    let maps = classify::enumerate_qmaps(&k, &l, cfg)?;
    let mut ok = true;
    let mut entries = Vec::new();
    let mut summary = vec![format!("{} map(s) {} -> {}", maps.len(), k.name(), l.name())];
    for m in &maps {
        let b = m.table.to_basis()?;
        let mut entry = json!({
            "y": ElemJson::of_field(&l, m.y),
            "log": m.log,
            "exponent": m.exponent,
            "map": MapDoc::from_table(&m.table),
        });
        let label = m.exponent.map(|e| format!("x^{e}")).unwrap_or_else(|| format!("y = {}", l.fmt_elem(m.y)));
        match classify::classify(&b, cfg) {
            Ok(d) => {
                let j = d.to_json();
                summary.push(format!(
                    "{label}: {} exponents ({}, {})",
                    decomposition_lines(&j)[0].trim_start_matches("branch: "),
                    d.phi1.canonical_exp(),
                    d.phi2.canonical_exp()
                ));
                entry["decomposition"] = to_value(&j);
            }
            Err(e) => {
                ok = false;
                summary.push(format!("{label}: classification failed: {e}"));
                entry["error"] = json!({ "kind": e.kind(), "message": e.to_string() });
            }
        }
        entries.push(entry);
    }
    Ok(Outcome {
        ok,
        body: json!({ "K": k, "L": l, "maps": entries }),
        summary,
    })
}

pub fn artin(input: &str) -> Run {
    let doc: HomsDoc = serde_json::from_str(input)?;
    let homs = doc.homs()?;
    let distinct = homs
        .iter()
        .enumerate()
        .all(|(i, a)| homs[..i].iter().all(|b| !a.same_map(b)));
    let labels: Vec<String> = homs.iter().map(|h| h.label()).collect();
    let (body, line) = match homprod::artin_check(&homs)? {
        Independence::Independent => (
            json!({ "independent": true, "pairwise_distinct": distinct }),
            format!("{labels:?} are linearly independent"),
        ),
        Independence::Dependent(c) => {
            let coeffs: Vec<ElemJson> = c.iter().map(|&x| ElemJson::of_field(&doc.l, x)).collect();
            let shown: Vec<String> = c.iter().map(|&x| doc.l.fmt_elem(x)).collect();
            (
                json!({ "independent": false, "pairwise_distinct": distinct, "coefficients": coeffs }),
                format!("{labels:?} satisfy the relation with coefficients {shown:?}"),
            )
        }
    };
    let ok = body["independent"] == json!(true) || !distinct;
    Ok(Outcome {
        ok,
        body,
        summary: vec![line],
    })
}

pub fn symsum(input: &str) -> Run {
    let doc: HomsDoc = serde_json::from_str(input)?;
    let homs = doc.homs()?;
    let mut body = json!({});
    let mut summary = Vec::new();
    let mut ok = true;
    if let Some(xs) = doc.xs()? {
        let s = homprod::symmetrized_sum(&homs, &xs)?;
        let pol = homprod::polarized_sum(&homs, &xs)?;
        let sign = if xs.len() % 2 == 0 { s } else { doc.l.neg(s) };
        body["value"] = to_value(&ElemJson::of_field(&doc.l, s));
        body["polarized"] = to_value(&ElemJson::of_field(&doc.l, pol));
        body["polarization_sign_holds"] = json!(pol == sign);
        ok &= pol == sign;
        summary.push(format!("symmetrized sum = {}", doc.l.fmt_elem(s)));
        summary.push(format!("polarized sum = {}", doc.l.fmt_elem(pol)));
    }
    let scan = homprod::symsum_vanishes(&homs);
    match scan {
        Ok(v) => {
            let witness = v
                .witness
                .as_ref()
                .map(|w| w.iter().map(|&x| ElemJson::of_field(&doc.k, x)).collect::<Vec<_>>());
            body["vanishes"] = json!(v.vanishes);
            body["structural"] = json!(v.structural);
            body["agrees"] = json!(v.agrees());
            body["evaluations"] = json!(v.evaluations);
            if let Some(w) = witness {
                body["witness"] = to_value(&w);
            }
            ok &= v.agrees();
            summary.push(format!(
                "vanishes identically: {} (p equal homomorphisms: {}) over {} evaluations",
                v.vanishes, v.structural, v.evaluations
            ));
        }
        Err(e) if doc.xs.is_some() => {
            summary.push(format!("vanishing scan skipped: {e}"));
        }
        Err(e) => return Err(e.into()),
    }
    Ok(Outcome { ok, body, summary })
}

pub fn thm14(input: &str) -> Run {
    let doc: ProductsDoc = serde_json::from_str(input)?;
    let (s, t) = doc.products()?;
    let (p, q) = (ProductMap::new(s)?, ProductMap::new(t)?);
    let eq = homprod::products_equal(&p, &q)?;
    let v = homprod::theorem14_verdict(&p, &q)?;
    let rechecked = homprod::recheck_verdict(&p, &q, &v);
    let ok = v.tag != VerdictTag::Inconsistent && rechecked;
    let mut summary = vec![
        format!("{:?} vs {:?}", p.labels(), q.labels()),
        format!("equal: {} ({})", eq.equal, to_value(&eq.method).as_str().unwrap_or_default()),
        format!("verdict: {}", to_value(&v.tag).as_str().unwrap_or_default()),
    ];
    let (sig, tau) = if v.swapped { (&q, &p) } else { (&p, &q) };
    for tw in &v.tau_twists {
        summary.push(format!(
            "tau_{} = sigma_{} o p^{} ({} = {} o p^{})",
            tw.target + 1,
            tw.source + 1,
            tw.l,
            tau.homs[tw.target].label(),
            sig.homs[tw.source].label(),
            tw.l
        ));
    }
    for tw in &v.sigma_twists {
        summary.push(format!("sigma_{} = tau_{} o p^{}", tw.target + 1, tw.source + 1, tw.l));
    }
    if let Some(msg) = &v.inconsistency {
        summary.push(format!("inconsistency: {msg}"));
    }
    Ok(Outcome {
        ok,
        body: json!({
            "equal": eq.equal,
            "method": eq.method,
            "verdict": v,
            "rechecked": rechecked,
        }),
        summary,
    })
}

pub fn scan(k: &str, l: &str, n_max: usize, m_max: usize) -> Run {
    let (k, l) = (field(k)?, field(l)?);
    let r = homprod::theorem14_scan(&k, &l, n_max, m_max)?;
    let summary = vec![
        format!("{} pairs, {} with equal products", r.pairs, r.equal_pairs),
        format!("case 1: {}, case 2: {}", r.case1, r.case2),
        format!("inconsistencies: {}", r.inconsistencies.len()),
    ];
    Ok(Outcome {
        ok: r.inconsistencies.is_empty(),
        body: json!({ "K": k, "L": l, "n_max": n_max, "m_max": m_max, "scan": r }),
        summary,
    })
}

