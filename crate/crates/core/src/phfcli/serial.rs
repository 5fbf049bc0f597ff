//! Canonical JSON and CSV forms. Every number is written as a string.

use std::sync::Arc;

use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use crate::contphf::LaplacePHF;
use crate::discretephf::{BasisDecomposition, Decoupler, PolyGF};
use crate::error::{Error, Result};
use crate::exactalg::{fmt_q, parse_q, CPoly, MPoly, NumElem, QuadField, RatFun, Var, Q};
use crate::gridcheck::CoeffGrid;
use crate::walkcount::CountTable;
use crate::walkmodel::{StepModel, UserConformal};

pub const VERSION: &str = env!("CARGO_PKG_VERSION");

fn perr(what: &str) -> Error {
    Error::Parse(what.to_string())
}

/// An integer written as a JSON string; plain JSON integers are accepted on input.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Int<T>(pub T);

impl<T: std::fmt::Display> Serialize for Int<T> {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(&self.0)
    }
}

impl<'de, T> Deserialize<'de> for Int<T>
where
    T: std::str::FromStr + TryFrom<i64>,
{
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        #[derive(Deserialize)]
        #[serde(untagged)]
        enum Raw {
            S(String),
            I(i64),
        }
        let bad = || serde::de::Error::custom("integer out of range");
        match Raw::deserialize(d)? {
            Raw::S(s) => s
                .trim()
                .parse()
                .map(Int)
                .map_err(|_| serde::de::Error::custom(format!("bad integer {s:?}"))),
            Raw::I(i) => T::try_from(i).map(Int).map_err(|_| bad()),
        }
    }
}

pub type BiTerms = Vec<(Int<u32>, Int<u32>, String)>;
pub type UniTerms = Vec<(Int<u32>, String)>;

/// `[[i, j, "p/q"], ...]`, ascending in `(i, j)`.
pub fn poly_terms(p: &MPoly) -> BiTerms {
    p.terms()
        .map(|(&(i, j), c)| (Int(i), Int(j), fmt_q(c)))
        .collect()
}

pub fn poly_from_terms(t: &BiTerms) -> Result<MPoly> {
    let mut out = Vec::with_capacity(t.len());
    for (i, j, c) in t {
        out.push(((i.0, j.0), parse_q(c)?));
    }
    Ok(MPoly::from_terms(out))
}

pub fn uni_terms(p: &MPoly, v: Var) -> Result<UniTerms> {
    if p.involves(v.other()) {
        return Err(perr("polynomial is not univariate"));
    }
    Ok(p.terms()
        .map(|(&(i, j), c)| (Int(if v == Var::X { i } else { j }), fmt_q(c)))
        .collect())
}

pub fn poly_from_uni(t: &UniTerms, v: Var) -> Result<MPoly> {
    let mut out = Vec::with_capacity(t.len());
    for (e, c) in t {
        let key = if v == Var::X { (e.0, 0) } else { (0, e.0) };
        out.push((key, parse_q(c)?));
    }
    Ok(MPoly::from_terms(out))
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
pub struct RatFunJson {
    pub num: BiTerms,
    pub den: BiTerms,
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
pub struct UniRatJson {
    pub num: UniTerms,
    pub den: UniTerms,
}

pub fn ratfun_json(f: &RatFun) -> Value {
    json!(RatFunJson {
        num: poly_terms(f.num()),
        den: poly_terms(f.den()),
    })
}

pub fn ratfun_from_json(v: &Value) -> Result<RatFun> {
    let r: RatFunJson = serde_json::from_value(v.clone()).map_err(|e| perr(&e.to_string()))?;
    RatFun::new(poly_from_terms(&r.num)?, poly_from_terms(&r.den)?)
}

/// Parses a rational function file, reporting line and column on malformed input.
pub fn parse_ratfun_text(text: &str) -> Result<RatFun> {
    let r: RatFunJson = serde_json::from_str(text).map_err(json_err)?;
    RatFun::new(poly_from_terms(&r.num)?, poly_from_terms(&r.den)?)
}

fn json_err(e: serde_json::Error) -> Error {
    // serde_json appends the position itself
    Error::Parse(e.to_string())
}

pub fn uni_ratfun_json(f: &RatFun, v: Var) -> Result<UniRatJson> {
    Ok(UniRatJson {
        num: uni_terms(f.num(), v)?,
        den: uni_terms(f.den(), v)?,
    })
}

pub fn uni_ratfun_from(r: &UniRatJson, v: Var) -> Result<RatFun> {
    RatFun::new(poly_from_uni(&r.num, v)?, poly_from_uni(&r.den, v)?)
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
pub struct StepJson {
    pub dx: Int<i64>,
    pub dy: Int<i64>,
    pub w: String,
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
pub struct ModelFile {
    pub name: String,
    pub steps: Vec<StepJson>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub omega: Option<UniRatJson>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub omega_of_xplus: Option<UniRatJson>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub pi_over_theta: Option<Int<u32>>,
}

/// A model file: validated steps and the optional user conformal data.
pub fn parse_model_file(text: &str) -> Result<(StepModel, Option<UserConformal>)> {
    let m: ModelFile = serde_json::from_str(text).map_err(json_err)?;
    model_from_file(&m)
}

pub fn model_from_file(m: &ModelFile) -> Result<(StepModel, Option<UserConformal>)> {
    let mut raw = Vec::with_capacity(m.steps.len());
    for s in &m.steps {
        raw.push(((s.dx.0, s.dy.0), parse_q(&s.w)?));
    }
    let model = StepModel::new(&m.name, raw)?;
    let omega = m
        .omega
        .as_ref()
        .map(|o| uni_ratfun_from(o, Var::X))
        .transpose()?;
    let omega_xplus = m
        .omega_of_xplus
        .as_ref()
        .map(|o| uni_ratfun_from(o, Var::Y))
        .transpose()?;
    let user = (omega.is_some() || omega_xplus.is_some() || m.pi_over_theta.is_some()).then(|| {
        UserConformal {
            omega,
            omega_xplus,
            pi_over_theta: m.pi_over_theta.map(|p| p.0),
        }
    });
    Ok((model, user))
}

pub fn model_file(model: &StepModel, user: Option<&UserConformal>) -> Result<ModelFile> {
    let uo = |f: &Option<RatFun>, v| f.as_ref().map(|f| uni_ratfun_json(f, v)).transpose();
    Ok(ModelFile {
        name: model.name().to_string(),
        steps: model
            .steps()
            .map(|(&(dx, dy), w)| StepJson {
                dx: Int(dx),
                dy: Int(dy),
                w: fmt_q(w),
            })
            .collect(),
        omega: user.map(|u| uo(&u.omega, Var::X)).transpose()?.flatten(),
        omega_of_xplus: user
            .map(|u| uo(&u.omega_xplus, Var::Y))
            .transpose()?
            .flatten(),
        pi_over_theta: user.and_then(|u| u.pi_over_theta).map(Int),
    })
}

pub fn decoupler_json(d: &Decoupler) -> Value {
    json!({"F": ratfun_json(&d.f), "G": ratfun_json(&d.g), "M": ratfun_json(&d.source_m)})
}

pub fn decoupler_from_json(v: &Value) -> Result<Decoupler> {
    Ok(Decoupler {
        f: ratfun_from_json(&v["F"])?,
        g: ratfun_from_json(&v["G"])?,
        source_m: ratfun_from_json(&v["M"])?,
    })
}

fn level_json(h: &PolyGF) -> Value {
    json!({
        "n": h.n.to_string(),
        "alpha_bound": h.alpha_bound.to_string(),
        "gf": ratfun_json(&h.gf),
        "decoupler": h.decoupler().map(decoupler_json),
    })
}

/// `H_n^k` and every level below it, lowest first.
pub fn polygf_json(h: &PolyGF) -> Value {
    let mut levels = vec![];
    let mut cur = Some(h);
    while let Some(c) = cur {
        levels.push(level_json(c));
        cur = c.prev.as_ref().map(|(p, _)| p.as_ref());
    }
    levels.reverse();
    json!({"model": h.model, "k": h.k.to_string(), "chain": levels})
}

fn num_field<T: std::str::FromStr>(v: &Value, key: &str) -> Result<T> {
    v[key]
        .as_str()
        .and_then(|s| s.parse().ok())
        .ok_or_else(|| perr(&format!("missing or invalid field {key:?}")))
}

pub fn polygf_from_json(v: &Value) -> Result<PolyGF> {
    let model = v["model"]
        .as_str()
        .ok_or_else(|| perr("missing model"))?
        .to_string();
    let k: u32 = num_field(v, "k")?;
    let levels = v["chain"].as_array().ok_or_else(|| perr("missing chain"))?;
    let mut prev: Option<Arc<PolyGF>> = None;
    for l in levels {
        let d = match &l["decoupler"] {
            Value::Null => None,
            d => Some(decoupler_from_json(d)?),
        };
        let h = PolyGF {
            model: model.clone(),
            n: num_field(l, "n")?,
            k,
            gf: ratfun_from_json(&l["gf"])?,
            alpha_bound: num_field(l, "alpha_bound")?,
            prev: match (prev.take(), d) {
                (Some(p), Some(d)) => Some((p, d)),
                (None, None) => None,
                _ => return Err(perr("chain and decouplers do not line up")),
            },
        };
        prev = Some(Arc::new(h));
    }
    let top = prev.ok_or_else(|| perr("empty chain"))?;
    Ok(Arc::try_unwrap(top).unwrap_or_else(|a| (*a).clone()))
}

pub fn numelem_json(e: &NumElem) -> Value {
    let (p, q) = e.field().coeffs();
    let (a, b) = e.parts();
    json!({"minpoly": [fmt_q(p), fmt_q(q)], "a": fmt_q(a), "b": fmt_q(b), "text": e.to_text()})
}

fn field_from_json(v: &Value) -> Result<Arc<QuadField>> {
    let mp = v
        .as_array()
        .filter(|a| a.len() == 2)
        .ok_or_else(|| perr("minpoly"))?;
    let g = |i: usize| {
        mp[i]
            .as_str()
            .ok_or_else(|| perr("minpoly"))
            .and_then(parse_q)
    };
    QuadField::new(g(0)?, g(1)?)
}

pub fn numelem_from_json(v: &Value) -> Result<NumElem> {
    let f = field_from_json(&v["minpoly"])?;
    let g = |k: &str| v[k].as_str().ok_or_else(|| perr(k)).and_then(parse_q);
    Ok(NumElem::new(&f, g("a")?, g("b")?))
}

pub fn laplace_json(l: &LaplacePHF) -> Value {
    let (p, q) = l.field().coeffs();
    let (re, c) = l.num.parts();
    json!({
        "model": l.model,
        "n": l.n.to_string(),
        "k": l.k.to_string(),
        "minpoly": [fmt_q(p), fmt_q(q)],
        "num": {"re": poly_terms(re), "c": poly_terms(c)},
        "den": [l.den.0.to_string(), l.den.1.to_string()],
        "total_degree": l.total_degree().to_string(),
    })
}

pub fn laplace_from_json(v: &Value) -> Result<LaplacePHF> {
    let f = field_from_json(&v["minpoly"])?;
    let terms = |k: &str| -> Result<MPoly> {
        let t: BiTerms =
            serde_json::from_value(v["num"][k].clone()).map_err(|e| perr(&e.to_string()))?;
        poly_from_terms(&t)
    };
    let den = v["den"]
        .as_array()
        .filter(|a| a.len() == 2)
        .ok_or_else(|| perr("den"))?;
    let d = |i: usize| -> Result<u32> {
        den[i]
            .as_str()
            .and_then(|s| s.parse().ok())
            .ok_or_else(|| perr("den"))
    };
    Ok(LaplacePHF::new(
        v["model"].as_str().ok_or_else(|| perr("model"))?,
        num_field(v, "n")?,
        num_field(v, "k")?,
        CPoly::new(&f, terms("re")?, terms("c")?),
        (d(0)?, d(1)?),
    ))
}

pub fn decomposition_json(d: &BasisDecomposition) -> Value {
    let coeffs: Vec<Value> = d
        .coefficients
        .iter()
        .map(|(&(i, j), c)| json!([i.to_string(), j.to_string(), fmt_q(c)]))
        .collect();
    json!({
        "coefficients": coeffs,
        "order": d.order.to_string(),
        "residual": ratfun_json(&d.residual),
        "exact": d.is_exact(),
    })
}

pub fn decomposition_from_json(v: &Value) -> Result<BasisDecomposition> {
    let mut coefficients = std::collections::BTreeMap::new();
    for c in v["coefficients"]
        .as_array()
        .ok_or_else(|| perr("coefficients"))?
    {
        let t: (String, String, String) =
            serde_json::from_value(c.clone()).map_err(|e| perr(&e.to_string()))?;
        let i = t.0.parse().map_err(|_| perr("index"))?;
        let j = t.1.parse().map_err(|_| perr("index"))?;
        coefficients.insert((i, j), parse_q(&t.2)?);
    }
    Ok(BasisDecomposition {
        coefficients,
        order: num_field(v, "order")?,
        residual: ratfun_from_json(&v["residual"])?,
    })
}

/// `i,j,value` rows.
pub fn grid_csv(g: &CoeffGrid) -> String {
    let mut s = String::from("i,j,value\n");
    for (i, r) in g.rows().iter().enumerate() {
        for (j, v) in r.iter().enumerate() {
            s.push_str(&format!("{i},{j},{}\n", fmt_q(v)));
        }
    }
    s
}

pub fn grid_from_csv(model: &str, text: &str) -> Result<CoeffGrid> {
    let mut cells: Vec<(usize, usize, Q)> = vec![];
    for (ln, line) in text.lines().enumerate().skip(1) {
        let f: Vec<&str> = line.split(',').collect();
        if f.len() != 3 {
            return Err(perr(&format!("line {}: expected 3 fields", ln + 1)));
        }
        let bad = || perr(&format!("line {}: bad index", ln + 1));
        cells.push((
            f[0].parse().map_err(|_| bad())?,
            f[1].parse().map_err(|_| bad())?,
            parse_q(f[2])?,
        ));
    }
    let im = cells
        .iter()
        .map(|c| c.0)
        .max()
        .ok_or_else(|| perr("empty grid"))?;
    let jm = cells.iter().map(|c| c.1).max().unwrap_or(0);
    let mut g = CoeffGrid::from_fn(model, im, jm, |_, _| Q::from_integer(0.into()));
    for (i, j, v) in cells {
        g.set(i, j, v);
    }
    Ok(g)
}

/// `n,i,j,value` rows for the nonzero counts.
pub fn count_csv(t: &CountTable) -> String {
    let mut s = String::from("n,i,j,value\n");
    for (n, i, j, v) in t.entries() {
        s.push_str(&format!("{n},{i},{j},{}\n", fmt_q(v)));
    }
    s
}

/// What produced an output, embedded in every artifact.
#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
pub struct RunManifest {
    pub command: String,
    pub model: String,
    pub params: std::collections::BTreeMap<String, String>,
    pub format: String,
    pub exit_status: i32,
    pub version: String,
}

impl RunManifest {
    pub fn new(command: &str, model: &str, format: &str) -> RunManifest {
        RunManifest {
            command: command.to_string(),
            model: model.to_string(),
            params: Default::default(),
            format: format.to_string(),
            exit_status: 0,
            version: VERSION.to_string(),
        }
    }

    pub fn param(mut self, k: &str, v: impl ToString) -> Self {
        self.params.insert(k.to_string(), v.to_string());
        self
    }

    /// One-line form for text and CSV outputs.
    pub fn header(&self) -> String {
        let p: Vec<String> = self
            .params
            .iter()
            .map(|(k, v)| format!("{k}={v}"))
            .collect();
        format!(
            "# qphf {} {} model={} {} format={} exit={}",
            self.version,
            self.command,
            self.model,
            p.join(" "),
            self.format,
            self.exit_status
        )
    }
}
