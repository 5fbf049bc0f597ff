//! Subcommands of the `qphf` tool. Exit codes: 0 success, 1 verification failure,
//! 2 unsupported or invalid model, 3 parse error.

use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};
use serde_json::{json, Value};

use super::latex::{laplace_latex, q_latex, ratfun_latex};
use super::serial::*;
use crate::contphf::{cont_chain, inverse_laplace, Scaling};
use crate::discretephf::{
    decompose_polyharmonic, gf_laplacian, polyharmonic_order, Family, PolyGF,
};
use crate::error::{Error, Result};
use crate::exactalg::rational::pow_q;
use crate::exactalg::{fmt_q, q, MPoly, RatFun, Q};
use crate::gridcheck::{check_polyharmonic, discrete_laplacian, expand, expand_ratfun};
use crate::limits::phf_limit;
use crate::walkcount::{
    count_layers, count_paths, fit_lengths, leading_asymptotics, return_period, simple_walk_exact,
    CountTable,
};
use crate::walkmodel::{catalog, signed_orbit_sum, Walk};

#[derive(Parser, Debug)]
#[command(
    name = "qphf",
    version,
    about = "Polyharmonic functions of quarter-plane walks"
)]
pub struct Cli {
    #[command(subcommand)]
    pub cmd: Cmd,
}

#[derive(Subcommand, Debug)]
pub enum Cmd {
    /// List the built-in models
    Models(OutArgs),
    /// Build H_1^k .. H_n^k
    Compute {
        #[command(flatten)]
        model: ModelArgs,
        #[command(flatten)]
        nk: NkArgs,
        /// Also print the decoupling functions
        #[arg(long)]
        decouplers: bool,
        #[command(flatten)]
        out: OutArgs,
    },
    /// Check the construction; all checks run when none is selected
    Verify {
        #[command(flatten)]
        model: ModelArgs,
        #[command(flatten)]
        nk: NkArgs,
        #[arg(long)]
        fe: bool,
        #[arg(long, num_args = 2, value_names = ["I", "J"])]
        grid: Option<Vec<usize>>,
        #[arg(long)]
        orbit: bool,
        #[arg(long)]
        poles: bool,
        /// Add 1 to grid cell "i,j" of H_n^k before checking
        #[arg(long, hide = true)]
        inject_fault: Option<String>,
        #[command(flatten)]
        out: OutArgs,
    },
    /// Laplace transforms of the scaling limit
    Continuous {
        #[command(flatten)]
        model: ModelArgs,
        #[command(flatten)]
        nk: NkArgs,
        /// Print the inverse transforms as polynomials in (u, v)
        #[arg(long)]
        inverse: bool,
        /// Compare with the discrete functions through mu-series limits
        #[arg(long)]
        converge: bool,
        #[arg(long)]
        mu_order: Option<usize>,
        #[command(flatten)]
        out: OutArgs,
    },
    /// Count excursions from the origin
    Count {
        #[command(flatten)]
        model: ModelArgs,
        #[arg(short = 'N', long = "length")]
        n: usize,
        #[arg(long, num_args = 2, value_names = ["I", "J"])]
        target: Option<Vec<usize>>,
        /// Extrapolate ratios q(i,j;n)/q(0,0;n)
        #[arg(long)]
        fit: bool,
        /// Use the model's weights instead of weight 1 per step
        #[arg(long)]
        weighted: bool,
        #[command(flatten)]
        out: OutArgs,
    },
    /// Decompose a generating function over the basis
    Decompose {
        #[command(flatten)]
        model: ModelArgs,
        #[arg(long)]
        input: PathBuf,
        /// Basis functions per layer
        #[arg(short = 'N', long = "count", default_value_t = 4)]
        count: u32,
        #[command(flatten)]
        out: OutArgs,
    },
}

#[derive(Args, Debug, Clone)]
pub struct ModelArgs {
    #[arg(long, conflicts_with = "model_file")]
    pub model: Option<String>,
    #[arg(long)]
    pub model_file: Option<PathBuf>,
    #[arg(long, default_value_t = 16)]
    pub max_group_order: usize,
}

#[derive(Args, Debug, Clone)]
pub struct NkArgs {
    #[arg(short = 'n', default_value_t = 1)]
    pub n: u32,
    #[arg(short = 'k', default_value_t = 1)]
    pub k: u32,
}

#[derive(Args, Debug, Clone, Default)]
pub struct OutArgs {
    #[arg(long, conflicts_with_all = ["latex", "csv"])]
    pub json: bool,
    #[arg(long, conflicts_with = "csv")]
    pub latex: bool,
    #[arg(long)]
    pub csv: bool,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

impl OutArgs {
    fn format(&self) -> &'static str {
        if self.json {
            "json"
        } else if self.latex {
            "latex"
        } else if self.csv {
            "csv"
        } else {
            "text"
        }
    }
}

/// Output text and exit code of one run.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub text: String,
    pub code: i32,
}

pub fn exit_code(e: &Error) -> i32 {
    match e {
        Error::Parse(_) => 3,
        Error::InfiniteGroupSuspected(_)
        | Error::NoConformalData(_)
        | Error::UnknownModel(_)
        | Error::NotSmallSteps(..)
        | Error::Degenerate
        | Error::NonzeroDrift(..)
        | Error::NegativeWeight(..)
        | Error::NonIntegerExponent
        | Error::DegenerateCovariance
        | Error::InvarianceCheckFailed(_)
        | Error::PoleOrderMismatch { .. }
        | Error::DoubleRootMissing
        | Error::ExtensionDegenerate => 2,
        _ => 1,
    }
}

fn resolve(m: &ModelArgs) -> Result<(Walk, String)> {
    match (&m.model, &m.model_file) {
        (_, Some(p)) => {
            let text = std::fs::read_to_string(p)
                .map_err(|e| Error::Parse(format!("{}: {e}", p.display())))?;
            let (model, user) = parse_model_file(&text).map_err(|e| match e {
                Error::Parse(s) => Error::Parse(format!("{}: {s}", p.display())),
                e => e,
            })?;
            Ok((
                Walk::new(model, user, m.max_group_order)?,
                p.display().to_string(),
            ))
        }
        (Some(name), None) => {
            let w = Walk::new(catalog::catalog_model(name)?, None, m.max_group_order)?;
            Ok((w, name.clone()))
        }
        (None, None) => Err(Error::Parse(
            "one of --model or --model-file is required".into(),
        )),
    }
}

/// Runs a parsed command line; errors are turned into exit codes.
pub fn run(cli: &Cli) -> Outcome {
    let (out, manifest) = match &cli.cmd {
        Cmd::Models(o) => (o, RunManifest::new("models", "catalog", o.format())),
        Cmd::Compute { model, nk, out, .. } => (out, manifest("compute", model, nk, out)),
        Cmd::Verify { model, nk, out, .. } => (out, manifest("verify", model, nk, out)),
        Cmd::Continuous { model, nk, out, .. } => (out, manifest("continuous", model, nk, out)),
        Cmd::Count { model, n, out, .. } => (out, man_model("count", model, out).param("N", n)),
        Cmd::Decompose {
            model,
            input,
            count,
            out,
        } => (
            out,
            man_model("decompose", model, out)
                .param("input", input.display())
                .param("N", count),
        ),
    };
    let res = match &cli.cmd {
        Cmd::Models(o) => cmd_models(o, manifest.clone()),
        Cmd::Compute {
            model,
            nk,
            decouplers,
            out,
        } => cmd_compute(model, nk, *decouplers, out, manifest.clone()),
        Cmd::Verify {
            model,
            nk,
            fe,
            grid,
            orbit,
            poles,
            inject_fault,
            out,
        } => {
            let sel = Checks {
                fe: *fe,
                grid: grid.as_ref().map(|g| (g[0], g[1])),
                orbit: *orbit,
                poles: *poles,
            };
            cmd_verify(
                model,
                nk,
                sel,
                inject_fault.as_deref(),
                out,
                manifest.clone(),
            )
        }
        Cmd::Continuous {
            model,
            nk,
            inverse,
            converge,
            mu_order,
            out,
        } => cmd_continuous(
            model,
            nk,
            *inverse,
            *converge,
            *mu_order,
            out,
            manifest.clone(),
        ),
        Cmd::Count {
            model,
            n,
            target,
            fit,
            weighted,
            out,
        } => {
            let t = target.as_ref().map(|t| (t[0], t[1]));
            cmd_count(model, *n, t, *fit, *weighted, out, manifest.clone())
        }
        Cmd::Decompose {
            model,
            input,
            count,
            out,
        } => cmd_decompose(model, input, *count, out, manifest.clone()),
    };
    let outcome = match res {
        Ok(o) => o,
        Err(e) => {
            let code = exit_code(&e);
            let mut m = manifest;
            m.exit_status = code;
            let text = if out.json {
                json!({"manifest": m, "error": e.to_string()}).to_string()
            } else {
                format!("{}\nerror: {e}\n", m.header())
            };
            Outcome { text, code }
        }
    };
    if let Some(p) = &out.out {
        if let Err(e) = std::fs::write(p, &outcome.text) {
            return Outcome {
                text: format!("error: cannot write {}: {e}\n", p.display()),
                code: 3,
            };
        }
    }
    outcome
}

fn man_model(cmd: &str, m: &ModelArgs, o: &OutArgs) -> RunManifest {
    let id = match (&m.model, &m.model_file) {
        (_, Some(p)) => p.display().to_string(),
        (Some(n), None) => n.clone(),
        _ => String::new(),
    };
    RunManifest::new(cmd, &id, o.format()).param("max_group_order", m.max_group_order)
}

fn manifest(cmd: &str, m: &ModelArgs, nk: &NkArgs, o: &OutArgs) -> RunManifest {
    man_model(cmd, m, o).param("n", nk.n).param("k", nk.k)
}

fn finish(out: &OutArgs, m: &RunManifest, body: Value, text: String, code: i32) -> Outcome {
    let mut m = m.clone();
    m.exit_status = code;
    let text = if out.json {
        let mut v = json!({"manifest": m});
        if let (Value::Object(a), Value::Object(b)) = (&mut v, body) {
            a.extend(b);
        }
        serde_json::to_string_pretty(&v).expect("json") + "\n"
    } else {
        format!("{}\n{text}", m.header())
    };
    Outcome { text, code }
}

const XY: [&str; 2] = ["x", "y"];

fn cmd_models(out: &OutArgs, m: RunManifest) -> Result<Outcome> {
    let mut text = String::new();
    let mut rows = vec![];
    for name in catalog::NAMES {
        let w = catalog::walk(name)?;
        let weights: Vec<String> = w
            .model()
            .steps()
            .map(|(&(i, j), p)| format!("({i},{j}):{}", fmt_q(p)))
            .collect();
        text.push_str(&format!(
            "{}\n    steps {}\n",
            w.summary(),
            weights.join(" ")
        ));
        rows.push(json!({
            "name": name,
            "summary": w.summary(),
            "steps": model_file(w.model(), None)?.steps,
            "pi_over_theta": w.angle().pi_over_theta.map(|p| p.to_string()),
            "group_order": w.group().order().to_string(),
            "omega_available": w.has_conformal(),
        }));
    }
    Ok(finish(out, &m, json!({"models": rows}), text, 0))
}

fn gf_entry(h: &PolyGF) -> Value {
    let (a, b) = h.pole_orders();
    json!({
        "n": h.n.to_string(),
        "k": h.k.to_string(),
        "gf": ratfun_json(&h.gf),
        "text": h.gf.to_text(XY),
        "pole_orders": [a.to_string(), b.to_string()],
        "alpha_bound": h.alpha_bound.to_string(),
    })
}

fn cmd_compute(
    ma: &ModelArgs,
    nk: &NkArgs,
    decouplers: bool,
    out: &OutArgs,
    m: RunManifest,
) -> Result<Outcome> {
    let (w, _) = resolve(ma)?;
    let fam = Family::new(w);
    let chain = fam.chain(nk.n, nk.k)?;
    let mut text = String::new();
    for h in &chain {
        if out.latex {
            text.push_str(&format!(
                "H_{{{}}}^{{{}}} = {}\n",
                h.n,
                h.k,
                ratfun_latex(&h.gf, XY)
            ));
        } else {
            text.push_str(&format!("H_{}^{} = {}\n", h.n, h.k, h.gf.to_text(XY)));
        }
    }
    let top = chain.last().expect("n >= 1");
    let ds = top.decoupler_chain();
    if decouplers {
        for (i, d) in ds.iter().enumerate() {
            if out.latex {
                text.push_str(&format!(
                    "F_{{{}}}^{{{}}} = {}\n",
                    i + 1,
                    nk.k,
                    ratfun_latex(&d.f, XY)
                ));
            } else {
                text.push_str(&format!("F_{}^{} = {}\n", i + 1, nk.k, d.f.to_text(XY)));
                text.push_str(&format!("G_{}^{} = {}\n", i + 1, nk.k, d.g.to_text(XY)));
            }
        }
    }
    let mut body = json!({"functions": chain.iter().map(|h| gf_entry(h)).collect::<Vec<_>>()});
    if decouplers {
        body["decouplers"] = json!(ds.iter().map(decoupler_json).collect::<Vec<_>>());
    }
    Ok(finish(out, &m, body, text, 0))
}

pub struct Checks {
    pub fe: bool,
    pub grid: Option<(usize, usize)>,
    pub orbit: bool,
    pub poles: bool,
}

fn cmd_verify(
    ma: &ModelArgs,
    nk: &NkArgs,
    sel: Checks,
    fault: Option<&str>,
    out: &OutArgs,
    m: RunManifest,
) -> Result<Outcome> {
    let all = !sel.fe && sel.grid.is_none() && !sel.orbit && !sel.poles;
    let (w, _) = resolve(ma)?;
    let fam = Family::new(w);
    let chain = fam.chain(nk.n, nk.k)?;
    let mut results: Vec<(String, bool, String)> = vec![];
    let kern = fam.walk().kernel();
    if all || sel.fe {
        let mut ok = true;
        let mut detail = String::from("gf_laplacian(H_n) = H_{n-1}");
        for (i, h) in chain.iter().enumerate() {
            let d = gf_laplacian(&h.gf, kern)?;
            let want = if i == 0 {
                RatFun::zero()
            } else {
                chain[i - 1].gf.clone()
            };
            if d != want {
                ok = false;
                detail = format!(
                    "gf_laplacian(H_{}^{}) differs from its predecessor",
                    h.n, h.k
                );
                break;
            }
        }
        results.push(("fe".into(), ok, detail));
    }
    if all || sel.poles {
        let mut ok = true;
        let mut detail = String::from("pole orders within k pi/theta + 2(n-1)");
        for h in &chain {
            let (a, b) = h.pole_orders();
            if a.max(b) > h.alpha_bound {
                ok = false;
                detail = format!(
                    "H_{}^{}: pole orders ({a},{b}) exceed {}",
                    h.n, h.k, h.alpha_bound
                );
                break;
            }
        }
        results.push(("poles".into(), ok, detail));
    }
    if all || sel.orbit {
        let mut ok = true;
        let mut detail = String::from("signed orbit sums of x y H_i vanish");
        for h in &chain {
            let mxy = &RatFun::from_poly(MPoly::monomial(q(1), 1, 1)) * &h.gf;
            if !signed_orbit_sum(&mxy, fam.walk().group())?.is_zero() {
                ok = false;
                detail = format!("signed orbit sum of x y H_{}^{} is nonzero", h.n, h.k);
                break;
            }
        }
        results.push(("orbit".into(), ok, detail));
    }
    if all || sel.grid.is_some() || fault.is_some() {
        let (gi, gj) = sel.grid.unwrap_or((
            crate::gridcheck::DEFAULT_WINDOW,
            crate::gridcheck::DEFAULT_WINDOW,
        ));
        if gi == 0 || gj == 0 {
            return Err(Error::WindowTooSmall);
        }
        let top = chain.last().expect("n >= 1");
        // the checked window of Delta^n is gi x gj
        let (ei, ej) = (gi - 1 + top.n as usize, gj - 1 + top.n as usize);
        let mut g = expand(top, ei, ej)?;
        let mut note = String::new();
        if let Some(f) = fault {
            let (i, j) = f
                .split_once(',')
                .and_then(|(a, b)| {
                    Some((
                        a.trim().parse::<usize>().ok()?,
                        b.trim().parse::<usize>().ok()?,
                    ))
                })
                .ok_or_else(|| Error::Parse(format!("bad fault cell {f:?}")))?;
            if i > g.imax() || j > g.jmax() {
                return Err(Error::Parse(format!("fault cell {f:?} outside the window")));
            }
            let v = g.get(i, j) + q(1);
            g.set(i, j, v);
            note = format!("fault injected at ({i},{j}); ");
        }
        let r = check_polyharmonic(&g, fam.walk().model(), top.n)?;
        let (ok, detail) = match (&r.first_failure, r.exact_order) {
            (Some((i, j, v)), _) => (
                false,
                format!("Delta^{} is nonzero at cell ({i},{j}): {}", top.n, fmt_q(v)),
            ),
            (None, false) => (false, format!("Delta^{} already vanishes", top.n - 1)),
            (None, true) => {
                // the symbolic and pointwise Laplacians agree on the window
                let lhs = expand_ratfun(&g.model, &gf_laplacian(&top.gf, kern)?, ei - 1, ej - 1)?;
                let rhs = discrete_laplacian(&g, fam.walk().model())?;
                if lhs == rhs {
                    (
                        true,
                        format!(
                            "Delta^{} = 0 on {}x{}",
                            top.n,
                            r.window.0 + 1,
                            r.window.1 + 1
                        ),
                    )
                } else {
                    (
                        false,
                        "expanded gf_laplacian differs from the grid Laplacian".into(),
                    )
                }
            }
        };
        results.push(("grid".into(), ok, note + &detail));
    }
    let pass = results.iter().all(|r| r.1);
    let mut text = String::new();
    for (name, ok, d) in &results {
        text.push_str(&format!(
            "{} {name}: {d}\n",
            if *ok { "PASS" } else { "FAIL" }
        ));
    }
    let body = json!({"checks": results.iter().map(|(n, ok, d)| json!({"check": n, "pass": ok, "detail": d})).collect::<Vec<_>>()});
    Ok(finish(out, &m, body, text, if pass { 0 } else { 1 }))
}

fn cmd_continuous(
    ma: &ModelArgs,
    nk: &NkArgs,
    inverse: bool,
    converge: bool,
    mu_order: Option<usize>,
    out: &OutArgs,
    m: RunManifest,
) -> Result<Outcome> {
    let (w, _) = resolve(ma)?;
    let sc = Scaling::new(&w)?;
    let (ls, fs) = cont_chain(&sc, nk.n, nk.k)?;
    let mut text = format!("gamma = {}\n", sc.gamma().to_text(XY));
    text.push_str(&format!(
        "c_+ = {}\nc_- = {}\n",
        sc.roots.plus.to_text(),
        sc.roots.minus.to_text()
    ));
    let mut items = vec![];
    let fam = converge.then(|| Family::new(w.clone()));
    for (i, l) in ls.iter().enumerate() {
        let shown = if out.latex {
            laplace_latex(l)
        } else {
            match l.real_num() {
                Some(p) => {
                    RatFun::new(p.clone(), MPoly::monomial(q(1), l.den.0, l.den.1))?.to_text(XY)
                }
                None => laplace_latex(l),
            }
        };
        text.push_str(&format!(
            "L(h_{}^{}) = {shown}   [degree {}]\n",
            l.n,
            l.k,
            l.total_degree()
        ));
        let mut item = json!({"laplace": laplace_json(l), "text": shown});
        if let Some(f) = fs.get(i) {
            let a = f.alpha.as_rational().ok_or(Error::ComplexResidue)?;
            text.push_str(&format!("f_{}^{} = {}/x^{}\n", l.n, l.k, fmt_q(&a), f.d));
            item["decoupler"] = json!({"alpha": fmt_q(&a), "d": f.d.to_string()});
        }
        if inverse {
            let p = inverse_laplace(l)?;
            text.push_str(&format!(
                "h_{}^{}(u,v) = {}\n",
                l.n,
                l.k,
                p.to_text(["u", "v"])
            ));
            item["inverse"] = json!(poly_terms(&p));
        }
        if let Some(fam) = &fam {
            let h = fam.get(l.n, l.k)?;
            let r = phf_limit(&h, l, sc.pi_over_theta, mu_order)?;
            text.push_str(&format!(
                "limit: exponent {}, alpha_{{{},{}}} = {}\n",
                r.exponent,
                l.n,
                l.k,
                if out.latex {
                    q_latex(&r.alpha)
                } else {
                    fmt_q(&r.alpha)
                }
            ));
            item["limit"] = json!({
                "exponent": r.exponent.to_string(),
                "alpha": fmt_q(&r.alpha),
                "order": r.order.to_string(),
                "limit": ratfun_json(&r.limit),
            });
        }
        items.push(item);
    }
    let body = json!({"gamma": poly_terms(&sc.gamma()), "c_plus": numelem_json(&sc.roots.plus), "functions": items});
    Ok(finish(out, &m, body, text, 0))
}

fn cmd_count(
    ma: &ModelArgs,
    n: usize,
    target: Option<(usize, usize)>,
    fit: bool,
    weighted: bool,
    out: &OutArgs,
    m: RunManifest,
) -> Result<Outcome> {
    let (w, _) = resolve(ma)?;
    let m = m.param("weighted", weighted);
    let model = w.model();
    if fit {
        let targets = match target {
            Some(t) => vec![t],
            None => vec![(1, 0), (0, 1), (1, 1), (2, 0)],
        };
        let growth = if weighted {
            model.total_weight()
        } else {
            q(model.steps().count() as i64)
        };
        // leading harmonic functions of the catalog walks, normalized at the origin
        let refv: Option<Box<dyn Fn(usize, usize) -> Q>> = match catalog::identify(model) {
            Some("simple") => Some(Box::new(|i, j| q(((i + 1) * (j + 1)) as i64))),
            Some("tandem") => Some(Box::new(|i, j| {
                q(((i + 1) * (j + 1) * (i + j + 2) / 2) as i64)
            })),
            _ => None,
        };
        let period = return_period(model, 12).ok_or(Error::InsufficientLength(12))?;
        let report = if crate::discretephf::simple::is_simple_walk(&w) {
            leading_asymptotics(
                |i, j, len| {
                    let c = Q::from_integer(simple_walk_exact(i as u64, j as u64, len as u64));
                    if weighted {
                        c / pow_q(&q(4), len as u32)
                    } else {
                        c
                    }
                },
                &growth,
                period,
                n,
                &targets,
                refv.as_deref(),
            )?
        } else {
            let keep = fit_lengths(n, period);
            let layers = count_layers(
                model,
                keep.iter().copied().max().unwrap_or(0),
                weighted,
                &keep,
            );
            let lookup = |i: usize, j: usize, len: usize| -> Q {
                layers
                    .iter()
                    .find(|(l, _)| *l == len)
                    .and_then(|(_, t)| t.get(i).and_then(|r| r.get(j)).cloned())
                    .unwrap_or_else(|| q(0))
            };
            leading_asymptotics(lookup, &growth, period, n, &targets, refv.as_deref())?
        };
        let mut text = String::new();
        let mut rows = vec![];
        for e in &report.entries {
            let r = e
                .reference
                .as_ref()
                .map(fmt_q)
                .unwrap_or_else(|| "-".into());
            text.push_str(&format!(
                "target ({},{}): ratio {:.6}, reference {r}, deviation {}\n",
                e.target.0,
                e.target.1,
                e.estimate,
                e.rel_deviation
                    .map(|d| format!("{d:.2e}"))
                    .unwrap_or_else(|| "-".into())
            ));
            rows.push(json!({
                "target": [e.target.0.to_string(), e.target.1.to_string()],
                "estimate": format!("{:.9}", e.estimate),
                "estimate_exact": fmt_q(&e.estimate_exact),
                "reference": e.reference.as_ref().map(fmt_q),
                "rel_deviation": e.rel_deviation.map(|d| format!("{d:.3e}")),
            }));
        }
        let body = json!({"asymptotics": rows, "max_rel_deviation": report.max_rel_deviation.map(|d| format!("{d:.3e}"))});
        return Ok(finish(out, &m, body, text, 0));
    }
    let t: CountTable = count_paths(model, n, weighted);
    let text = match target {
        Some((i, j)) => (0..=n)
            .map(|len| format!("q(0,({i},{j});{len}) = {}\n", fmt_q(&t.get(i, j, len))))
            .collect(),
        None if out.csv || !out.json => count_csv(&t),
        None => String::new(),
    };
    let rows: Vec<Value> = t
        .entries()
        .filter(|(_, i, j, _)| target.is_none_or(|(a, b)| (a, b) == (*i, *j)))
        .map(|(len, i, j, v)| json!([len.to_string(), i.to_string(), j.to_string(), fmt_q(v)]))
        .collect();
    Ok(finish(out, &m, json!({"counts": rows}), text, 0))
}

fn cmd_decompose(
    ma: &ModelArgs,
    input: &PathBuf,
    count: u32,
    out: &OutArgs,
    m: RunManifest,
) -> Result<Outcome> {
    let text = std::fs::read_to_string(input)
        .map_err(|e| Error::Parse(format!("{}: {e}", input.display())))?;
    let h = parse_ratfun_text(&text).map_err(|e| match e {
        Error::Parse(s) => Error::Parse(format!("{}: {s}", input.display())),
        e => e,
    })?;
    let (w, _) = resolve(ma)?;
    let fam = Family::new(w);
    let order = polyharmonic_order(&h, &fam, 4)?;
    let Some(order) = order.filter(|&o| o > 0) else {
        let msg = if h.is_zero() {
            "input is zero\n".to_string()
        } else {
            "not polyharmonic of order <= 4\n".to_string()
        };
        let code = if h.is_zero() { 0 } else { 1 };
        return Ok(finish(
            out,
            &m,
            json!({"polyharmonic_order": Value::Null, "error": msg.trim()}),
            msg,
            code,
        ));
    };
    let d = decompose_polyharmonic(&fam, &h, order, count)?;
    let mut text = format!("polyharmonic order {order}\n");
    for (&(i, j), c) in &d.coefficients {
        text.push_str(&format!("H_{i}^{j}: {}\n", fmt_q(c)));
    }
    text.push_str(&format!("exact: {}\n", d.is_exact()));
    if !d.is_exact() {
        text.push_str(&format!("residual: {}\n", d.residual.to_text(XY)));
    }
    let body =
        json!({"polyharmonic_order": order.to_string(), "decomposition": decomposition_json(&d)});
    Ok(finish(out, &m, body, text, 0))
}
