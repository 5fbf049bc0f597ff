//! LaTeX output. Factors `x`, `y`, `(x-1)`, `(y-1)` and the rational content are pulled out.

use num_traits::{One, Signed, Zero};

use crate::contphf::LaplacePHF;
use crate::exactalg::{fmt_q, MPoly, RatFun, Var, Q};

struct Split {
    content: Q,
    mono: (u32, u32),
    ones: (u32, u32),
    rest: MPoly,
}

fn split(p: &MPoly) -> Split {
    let mono = p.min_exponents();
    let p = p.unshift(mono.0, mono.1);
    let (a, p) = p.split_one(Var::X);
    let (b, p) = p.split_one(Var::Y);
    let (mut rest, f) = p.primitive();
    let mut content = Q::one() / f;
    // positive coefficient on the first printed term of the remaining factor
    let top = rest
        .terms()
        .max_by_key(|(&(i, j), _)| (i + j, i))
        .map(|(_, c)| c.clone());
    if top.is_some_and(|c| c.is_negative()) {
        rest = -&rest;
        content = -content;
    }
    Split {
        content,
        mono,
        ones: (a, b),
        rest,
    }
}

fn pow(base: &str, e: u32) -> String {
    match e {
        0 => String::new(),
        1 => base.to_string(),
        _ => format!("{base}^{{{e}}}"),
    }
}

/// Terms by descending total degree, then descending power of the first variable.
fn poly_tex(p: &MPoly, names: [&str; 2]) -> String {
    let mut terms: Vec<_> = p.terms().collect();
    terms.sort_by_key(|(&(i, j), _)| std::cmp::Reverse((i + j, i)));
    let mut out = String::new();
    for (k, (&(i, j), c)) in terms.into_iter().enumerate() {
        let neg = c.is_negative();
        let a = c.abs();
        let mono = [pow(names[0], i), pow(names[1], j)]
            .into_iter()
            .filter(|s| !s.is_empty())
            .collect::<Vec<_>>()
            .join(" ");
        let coef = if a.is_one() && !mono.is_empty() {
            String::new()
        } else {
            q_latex(&a)
        };
        let body = [coef, mono]
            .into_iter()
            .filter(|s| !s.is_empty())
            .collect::<Vec<_>>()
            .join(" ");
        match (k, neg) {
            (0, true) => out.push_str(&format!("-{body}")),
            (0, false) => out.push_str(&body),
            (_, true) => out.push_str(&format!(" - {body}")),
            (_, false) => out.push_str(&format!(" + {body}")),
        }
    }
    out
}

fn factors(s: &Split, names: [&str; 2], skip_rest: bool) -> Vec<String> {
    let mut f = vec![];
    f.push(pow(names[0], s.mono.0));
    f.push(pow(names[1], s.mono.1));
    let one = |n: &str, e: u32| pow(&format!("({n}-1)"), e);
    f.push(one(names[0], s.ones.0));
    f.push(one(names[1], s.ones.1));
    if !skip_rest {
        f.push(format!("({})", poly_tex(&s.rest, names)));
    }
    f.retain(|s| !s.is_empty());
    f
}

pub fn ratfun_latex(f: &RatFun, names: [&str; 2]) -> String {
    if f.is_zero() {
        return "0".into();
    }
    let n = split(f.num());
    let d = split(f.den());
    let c = &n.content / &d.content;
    let sign = if c.is_negative() { "-" } else { "" };
    let c = c.abs();
    let mut top = vec![];
    if !c.numer().is_one() {
        top.push(c.numer().to_string());
    }
    top.extend(factors(&n, names, n.rest.is_constant()));
    let mut bot = vec![];
    if !c.denom().is_one() {
        bot.push(c.denom().to_string());
    }
    bot.extend(factors(&d, names, d.rest.is_constant()));
    let top = if top.is_empty() {
        "1".to_string()
    } else {
        top.join(" ")
    };
    if bot.is_empty() {
        return format!("{sign}{top}");
    }
    format!("{sign}\\frac{{{top}}}{{{}}}", bot.join(" "))
}

pub fn laplace_latex(l: &LaplacePHF) -> String {
    match l.real_num() {
        Some(p) => {
            let den = MPoly::monomial(Q::one(), l.den.0, l.den.1);
            ratfun_latex(&RatFun::new(p.clone(), den).expect("monomial"), ["x", "y"])
        }
        None => {
            let (a, b) = l.num.parts();
            format!(
                "\\frac{{({}) + c ({})}}{{{}}}",
                poly_tex(a, ["x", "y"]),
                poly_tex(b, ["x", "y"]),
                pow("x", l.den.0) + " " + &pow("y", l.den.1)
            )
        }
    }
}

pub fn q_latex(x: &Q) -> String {
    if x.denom().is_one() || x.is_zero() {
        return fmt_q(x);
    }
    let s = if x.is_negative() { "-" } else { "" };
    format!("{s}\\frac{{{}}}{{{}}}", x.numer().abs(), x.denom())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn simple_forms() {
        let d = MPoly::from_int_terms(&[(0, 0, 1), (1, 0, -1)]).pow(2)
            * MPoly::from_int_terms(&[(0, 0, 1), (0, 1, -1)]).pow(4);
        let f = RatFun::new(MPoly::from_int_terms(&[(0, 1, -32)]), d).unwrap();
        assert_eq!(
            ratfun_latex(&f, ["x", "y"]),
            "-\\frac{32 y}{(x-1)^{2} (y-1)^{4}}"
        );
        let g = RatFun::new(
            MPoly::from_int_terms(&[(1, 1, 81), (0, 0, -81)]),
            MPoly::from_int_terms(&[(0, 0, 4)]),
        )
        .unwrap();
        assert_eq!(ratfun_latex(&g, ["x", "y"]), "\\frac{81 (x y - 1)}{4}");
    }
}
