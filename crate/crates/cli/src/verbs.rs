//! The verb table and one handler per verb.

use dynheight::boettcher::{boettcher_series, delta_archimedean, delta_v, good_places, DeltaV};
use dynheight::countkit::census::{census, CensusFunction, Constant, FStarFn, Modular, Square};
use dynheight::countkit::modular::ModularFn;
use dynheight::countkit::power_lemma::{power_lemma_min_x, power_lemma_oracle, PowerSystem};
use dynheight::countkit::shapes::{bound_shape, ShapeParams, ShapeTag};
use dynheight::countkit::{disk_cover, jensen_zero_bound, masser_t_threshold, minimal_degree, vanishing_polynomial};
use dynheight::dynamics::{
    canonical_height, count_from, iterate, low_degree_proportion_from, snap_degree_multiset, PolyMap, SnapReport, DEFAULT_DEGREE_CAP,
};
use dynheight::exactnum::{parse_rational, Ball, Rational};
use dynheight::factorint::factor_rational;
use dynheight::galois::{cyclotomic_degree_qp, galcor_lower_bound, lifting_exponent, mult_order, padic_degree_bound};
use dynheight::heights::{height_algebraic, height_rational_prec, weil_height_tuple, AlgebraicNumber};
use dynheight::{Error, Execution, Result};
use num_traits::One;
use serde_json::json;

use crate::output::{cell_ball, cell_rational, Format, Output, Table};
use crate::params::Params;

pub struct ParamSpec {
    pub key: &'static str,
    pub help: &'static str,
    pub flag: bool,
}

const fn p(key: &'static str, help: &'static str) -> ParamSpec {
    ParamSpec { key, help, flag: false }
}

const fn flag(key: &'static str, help: &'static str) -> ParamSpec {
    ParamSpec { key, help, flag: true }
}

pub struct VerbSpec {
    pub name: &'static str,
    pub about: &'static str,
    pub params: &'static [ParamSpec],
    /// Keys of the one-row summary, in order.
    pub columns: &'static [&'static str],
    pub default_format: Format,
}

const DYNAMICS_COLUMNS: &[&str] = &["alpha", "n", "D", "r", "max_degree", "proportion", "bound_shape_value"];

const MAP: ParamSpec = p("map", "monic polynomial map, e.g. \"X^2 + 1\"");
const ALPHA: ParamSpec = p("alpha", "rational starting point");
const N: ParamSpec = p("n", "number of iterations");
const CAP: ParamSpec = p("cap", "largest allowed degree D^n (default 4096)");
const DELTA: ParamSpec = p("delta", "degree threshold exponent (default 1/2)");
const EPS: ParamSpec = p("eps", "epsilon of the general bound shape (default 0)");

pub const VERBS: &[VerbSpec] = &[
    VerbSpec { name: "iterate", about: "n-th iterate of a map", params: &[MAP, N, CAP], columns: &["n", "degree"], default_format: Format::Json },
    VerbSpec {
        name: "canonical-height",
        about: "enclosure of the canonical height of a rational point",
        params: &[MAP, ALPHA, p("eps", "radius target (default 1/10^12)"), CAP],
        columns: &["alpha", "canonical_height"], default_format: Format::Json,
    },
    VerbSpec {
        name: "snap",
        about: "degree multiset of the roots of P^n(X) - P^n(alpha)",
        params: &[MAP, ALPHA, N, CAP, DELTA, EPS],
        columns: DYNAMICS_COLUMNS, default_format: Format::Csv,
    },
    VerbSpec {
        name: "irreducible-count",
        about: "number of irreducible factors of P^n(X) - P^n(alpha)",
        params: &[MAP, ALPHA, N, CAP, DELTA, EPS],
        columns: DYNAMICS_COLUMNS, default_format: Format::Json,
    },
    VerbSpec {
        name: "proportion",
        about: "proportion of roots of degree at most D^(delta n)",
        params: &[MAP, ALPHA, N, CAP, DELTA, EPS],
        columns: DYNAMICS_COLUMNS, default_format: Format::Json,
    },
    VerbSpec {
        name: "boettcher-series",
        about: "exact Laurent coefficients of the Boettcher coordinate",
        params: &[MAP, p("order", "number of negative-power terms (default 10)")],
        columns: &["order", "b1"], default_format: Format::Json,
    },
    VerbSpec {
        name: "delta-v",
        about: "escape threshold at a place",
        params: &[MAP, p("prime", "prime p, or inf for the archimedean place"), p("p", "alias of --prime")],
        columns: &["delta"], default_format: Format::Json,
    },
    VerbSpec { name: "good-place", about: "places where alpha escapes", params: &[MAP, ALPHA], columns: &["count", "first"], default_format: Format::Json },
    VerbSpec {
        name: "order",
        about: "multiplicative order of a modulo n, or lifting data modulo powers of q",
        params: &[p("a", "integer base"), p("n", "modulus"), p("q", "prime for the lifting exponent")],
        columns: &["order", "e", "m"], default_format: Format::Json,
    },
    VerbSpec {
        name: "cyclotomic-degree",
        about: "degree of Q_p(zeta_b) over Q_p",
        params: &[p("p", "prime"), p("b", "order of the root of unity"), p("D", "map degree for the lower bound")],
        columns: &["degree"], default_format: Format::Json,
    },
    VerbSpec {
        name: "padic-bound",
        about: "p-adic lower bound for the largest degree in the preimage set",
        params: &[MAP, ALPHA, N, CAP],
        columns: &["prime", "bound", "observed_max"], default_format: Format::Json,
    },
    VerbSpec {
        name: "cover",
        about: "centers of radius-r disks covering the radius-R disk",
        params: &[p("R", "outer radius (rational)"), p("r", "small radius (rational)")],
        columns: &["count", "bound"], default_format: Format::Json,
    },
    VerbSpec {
        name: "jensen",
        about: "zero-count bound in the disk of radius r",
        params: &[p("M", "bound on |g| on |z| = R"), p("g0", "|g(0)|"), p("r", "inner radius"), p("R", "outer radius")],
        columns: &["bound"], default_format: Format::Json,
    },
    VerbSpec {
        name: "masser-t",
        about: "smallest T satisfying the auxiliary-polynomial inequality",
        params: &[p("AZ", "product AZ > 1"), p("M", "M > 0"), p("H", "height bound H >= 1"), p("d", "degree d >= 1")],
        columns: &["T"], default_format: Format::Json,
    },
    VerbSpec {
        name: "vanish",
        about: "integer polynomial in X, Y vanishing at the given points",
        params: &[p("points", "points as x,y;x,y;..."), p("T", "degree cap (default minimal)")],
        columns: &["T", "polynomial"], default_format: Format::Json,
    },
    VerbSpec {
        name: "power-lemma",
        about: "extremal construction or exhaustive oracle of the sparse-partition system",
        params: &[
            p("theta", "exponent theta >= 2 (default 2)"),
            p("c", "constant c >= 1 (default 1)"),
            p("M", "number of parts for the construction"),
            flag("oracle", "run the exhaustive search instead"),
            p("X", "total for the exhaustive search"),
        ],
        columns: &["M", "X"], default_format: Format::Json,
    },
    VerbSpec {
        name: "census",
        about: "scan rationals q in (0,1) of bounded height for rational values f(q)",
        params: &[
            p("function", "lambda, delta, fstar, const or square"),
            p("height", "height bound H (default 20)"),
            p("value", "value of the constant function (default 1/2)"),
            MAP,
            ALPHA,
            p("order", "series order for fstar (default 8)"),
        ],
        columns: &["count", "undecided"], default_format: Format::Csv,
    },
    VerbSpec {
        name: "bound-shape",
        about: "evaluate a growth shape with constant c",
        params: &[
            p("shape", "disk, decay, growth, decay-growth, compact-disk, general, irreducible, disk-polynomial-t"),
            p("c", "constant (default 1)"),
            p("d", "degree d"),
            p("H", "height bound"),
            p("l", "decay ratio l"),
            p("D", "map degree"),
            p("n", "iteration count"),
            p("eps", "epsilon"),
        ],
        columns: &["value"], default_format: Format::Json,
    },
    VerbSpec {
        name: "height",
        about: "height of a rational, an algebraic number or a tuple",
        params: &[p("alpha", "rational"), p("poly", "irreducible integer polynomial"), p("tuple", "comma-separated rationals")],
        columns: &["height_mult", "height_log"], default_format: Format::Json,
    },
    VerbSpec { name: "factor", about: "factor a polynomial over the integers", params: &[p("poly", "polynomial")], columns: &["distinct", "with_multiplicity"], default_format: Format::Json },
];

pub fn verb(name: &str) -> Option<&'static VerbSpec> {
    VERBS.iter().find(|v| v.name == name)
}

pub struct Ctx {
    pub prec: u32,
    pub seed: u64,
    pub exec: Execution,
}

pub fn run_verb(name: &str, ps: &Params, ctx: &Ctx) -> Result<Output> {
    match name {
        "iterate" => cmd_iterate(ps),
        "canonical-height" => cmd_canonical_height(ps),
        "snap" | "irreducible-count" | "proportion" => cmd_dynamics(name, ps, ctx),
        "boettcher-series" => cmd_boettcher(ps),
        "delta-v" => cmd_delta_v(ps, ctx),
        "good-place" => cmd_good_place(ps, ctx),
        "order" => cmd_order(ps),
        "cyclotomic-degree" => cmd_cyclotomic(ps, ctx),
        "padic-bound" => cmd_padic(ps, ctx),
        "cover" => cmd_cover(ps, ctx),
        "jensen" => cmd_jensen(ps, ctx),
        "masser-t" => cmd_masser(ps, ctx),
        "vanish" => cmd_vanish(ps),
        "power-lemma" => cmd_power_lemma(ps),
        "census" => cmd_census(ps, ctx),
        "bound-shape" => cmd_bound_shape(ps, ctx),
        "height" => cmd_height(ps, ctx),
        "factor" => cmd_factor(ps, ctx),
        _ => Err(Error::Parse(format!("unknown verb '{name}'"))),
    }
}

fn cap(ps: &Params) -> Result<u64> {
    ps.int_or("cap", DEFAULT_DEGREE_CAP)
}

fn cmd_iterate(ps: &Params) -> Result<Output> {
    let map = ps.map("map")?;
    let n: u32 = ps.int("n")?;
    let it = iterate(&map, n, cap(ps)?)?;
    let degree = it.degree().unwrap_or(0);
    Output::new(json!({ "map": map.to_string(), "n": n, "degree": degree, "iterate": it.to_string() }))
        .map(|o| o.with_summary(vec![("n", n.to_string()), ("degree", degree.to_string())]))
}

fn cmd_canonical_height(ps: &Params) -> Result<Output> {
    let map = ps.map("map")?;
    let alpha = ps.rational("alpha")?;
    let eps = ps.rational_or("eps", "1/1000000000000")?;
    let h = canonical_height(&map, &alpha, &eps, cap(ps)?)?;
    let cell = cell_ball(&h.value);
    Output::new(&h).map(|o| o.with_summary(vec![("alpha", cell_rational(&alpha)), ("canonical_height", cell)]))
}

fn dynamics_summary(map: &PolyMap, alpha: &Rational, n: u32, snap: &SnapReport, ps: &Params, prec: u32) -> Result<Vec<(&'static str, String)>> {
    let d = map.degree();
    let delta = ps.rational_or("delta", "1/2")?;
    let eps = ps.rational_or("eps", "0")?;
    let prop = low_degree_proportion_from(snap, d, n, &delta, prec)?;
    let shape = bound_shape(
        ShapeTag::General,
        &ShapeParams { big_d: Some(d), n: Some(n), eps: Some(eps), ..Default::default() },
        prec,
    )?;
    Ok(vec![
        ("alpha", cell_rational(alpha)),
        ("n", n.to_string()),
        ("D", d.to_string()),
        ("r", count_from(snap).r.to_string()),
        ("max_degree", snap.max_degree().to_string()),
        ("proportion", cell_rational(&prop.proportion)),
        ("bound_shape_value", cell_ball(&shape)),
    ])
}

fn cmd_dynamics(name: &str, ps: &Params, ctx: &Ctx) -> Result<Output> {
    let map = ps.map("map")?;
    let alpha = ps.rational("alpha")?;
    let n: u32 = ps.int("n")?;
    let snap = snap_degree_multiset(&map, &alpha, n, cap(ps)?, ctx.seed)?;
    let summary = dynamics_summary(&map, &alpha, n, &snap, ps, ctx.prec)?;
    let out = match name {
        "snap" => {
            let mut t = Table::new(&["degree"]);
            for d in &snap.degrees {
                t.push(vec![d.to_string()]);
            }
            Output::new(&snap)?.with_table(t)
        }
        "irreducible-count" => Output::new(count_from(&snap))?,
        _ => {
            let delta = ps.rational_or("delta", "1/2")?;
            Output::new(low_degree_proportion_from(&snap, map.degree(), n, &delta, ctx.prec)?)?
        }
    };
    Ok(out.with_summary(summary))
}

fn cmd_boettcher(ps: &Params) -> Result<Output> {
    let map = ps.map("map")?;
    let order: usize = ps.int_or("order", 10)?;
    let s = boettcher_series(&map, order)?;
    let residual_zero = s.residual()?.is_zero();
    let mut t = Table::new(&["exponent", "coefficient"]);
    let mut coeffs = Vec::new();
    let lead = s.phi.lead();
    for (i, c) in s.phi.coeffs().iter().enumerate() {
        let e = lead - i as i64;
        t.push(vec![e.to_string(), cell_rational(c)]);
        coeffs.push(json!({ "exponent": e, "coefficient": cell_rational(c) }));
    }
    let b1 = s.phi.coeff_of(-1).map(cell_rational).unwrap_or_default();
    Output::new(json!({ "map": map.to_string(), "order": order, "coefficients": coeffs, "residual_zero": residual_zero }))
        .map(|o| o.with_table(t).with_summary(vec![("order", order.to_string()), ("b1", b1)]))
}

fn delta_cell(d: &DeltaV, prec: u32) -> Result<String> {
    if d.exponent == 1 || d.value_power.is_one() {
        Ok(cell_rational(&d.value_power))
    } else {
        Ok(cell_ball(&d.value(prec)?))
    }
}

fn cmd_delta_v(ps: &Params, ctx: &Ctx) -> Result<Output> {
    let map = ps.map("map")?;
    let key = if ps.has("prime") { "prime" } else { "p" };
    let d = match ps.req(key)? {
        "inf" => delta_archimedean(&map),
        _ => delta_v(&map, ps.int(key)?)?,
    };
    let value = d.value(ctx.prec)?;
    let cell = delta_cell(&d, ctx.prec)?;
    Output::new(json!({ "delta": &d, "value": value })).map(|o| o.with_summary(vec![("delta", cell)]))
}

fn cmd_good_place(ps: &Params, ctx: &Ctx) -> Result<Output> {
    let map = ps.map("map")?;
    let alpha = ps.rational("alpha")?;
    let places = good_places(&map, &alpha, ctx.prec)?;
    let mut t = Table::new(&["place", "abs_alpha", "delta", "margin"]);
    for pl in &places {
        t.push(vec![pl.place.to_string(), cell_rational(&pl.abs_alpha), delta_cell(&pl.delta, ctx.prec)?, cell_ball(&pl.margin)]);
    }
    let first = places.first().map(|p| p.place.to_string()).unwrap_or_default();
    Output::new(&places).map(|o| o.with_table(t).with_summary(vec![("count", places.len().to_string()), ("first", first)]))
}

fn cmd_order(ps: &Params) -> Result<Output> {
    let a: i64 = ps.int("a")?;
    if ps.has("q") {
        let le = lifting_exponent(a, ps.int("q")?)?;
        let predicted = if ps.has("n") { le.predicted_order(ps.int("n")?) } else { None };
        return Output::new(json!({ "lifting": le, "predicted_order": predicted }))
            .map(|o| {
                let order = predicted.map(|x| x.to_string()).unwrap_or_default();
                o.with_summary(vec![("order", order), ("e", le.e.to_string()), ("m", le.m.to_string())])
            });
    }
    let n: u64 = ps.int("n")?;
    let order = mult_order(a, n)?;
    Output::new(json!({ "a": a, "n": n, "order": order })).map(|o| o.with_summary(vec![("order", order.to_string()), ("e", String::new()), ("m", String::new())]))
}

fn cmd_cyclotomic(ps: &Params, ctx: &Ctx) -> Result<Output> {
    let p: u64 = ps.int("p")?;
    let b: u64 = ps.int("b")?;
    let degree = cyclotomic_degree_qp(p, b)?;
    let galcor = if ps.has("D") { Some(galcor_lower_bound(p, b, ps.int("D")?, ctx.prec)?) } else { None };
    Output::new(json!({ "p": p, "b": b, "degree": degree, "lower_bound": galcor }))
        .map(|o| o.with_summary(vec![("degree", degree.to_string())]))
}

fn cmd_padic(ps: &Params, ctx: &Ctx) -> Result<Output> {
    let map = ps.map("map")?;
    let alpha = ps.rational("alpha")?;
    let n: u32 = ps.int("n")?;
    let b = padic_degree_bound(&map, &alpha, n, cap(ps)?, ctx.seed, ctx.prec)?;
    let observed = b.observed_max.map(|m| m.to_string()).unwrap_or_default();
    let summary = vec![("prime", b.prime.to_string()), ("bound", b.bound.to_string()), ("observed_max", observed)];
    Output::new(&b).map(|o| o.with_summary(summary))
}

fn cmd_cover(ps: &Params, ctx: &Ctx) -> Result<Output> {
    let big_r = ps.rational("R")?;
    let r = ps.rational("r")?;
    let c = disk_cover(&big_r, &r, ctx.prec)?;
    let mut t = Table::new(&["x", "y"]);
    for (x, y) in c.centers() {
        t.push(vec![cell_rational(x), cell_rational(y)]);
    }
    let summary = vec![("count", c.len().to_string()), ("bound", cell_ball(&c.bound))];
    Output::new(json!({ "count": c.len(), "cover": &c })).map(|o| o.with_table(t).with_summary(summary))
}

fn cmd_jensen(ps: &Params, ctx: &Ctx) -> Result<Output> {
    let m = ps.real("M", ctx.prec)?;
    let g0 = ps.real("g0", ctx.prec)?;
    let r = ps.real("r", ctx.prec)?;
    let big_r = ps.real("R", ctx.prec)?;
    let bound = jensen_zero_bound(&m, &g0, &r, &big_r)?;
    Output::new(json!({ "bound": bound })).map(|o| o.with_summary(vec![("bound", bound.to_string())]))
}

fn cmd_masser(ps: &Params, ctx: &Ctx) -> Result<Output> {
    let az = ps.real("AZ", ctx.prec)?;
    let m = ps.real("M", ctx.prec)?;
    let h = ps.real("H", ctx.prec)?;
    let d: u32 = ps.int("d")?;
    let t = masser_t_threshold(&az, &m, &h, d)?;
    let cell = cell_ball(&Ball::from_rational(&t.t, 64));
    Output::new(&t).map(|o| o.with_summary(vec![("T", cell)]))
}

fn parse_points(s: &str) -> Result<Vec<(Rational, Rational)>> {
    s.split(';')
        .map(str::trim)
        .filter(|t| !t.is_empty())
        .map(|pt| {
            let (x, y) = pt.split_once(',').ok_or_else(|| Error::Parse(format!("point '{pt}' is not x,y")))?;
            Ok((parse_rational(x.trim())?, parse_rational(y.trim())?))
        })
        .collect()
}

fn cmd_vanish(ps: &Params) -> Result<Output> {
    let pts = parse_points(ps.get("points").unwrap_or(""))?;
    let t = if ps.has("T") { ps.int("T")? } else { minimal_degree(pts.len()) };
    let poly = vanishing_polynomial(&pts, t)?;
    let shown = poly.to_string();
    Output::new(json!({ "T": t, "polynomial": shown, "terms": &poly }))
        .map(|o| o.with_summary(vec![("T", t.to_string()), ("polynomial", shown)]))
}

fn cmd_power_lemma(ps: &Params) -> Result<Output> {
    let sys = PowerSystem::new(ps.rational_or("c", "1")?, ps.rational_or("theta", "2")?)?;
    if ps.flag("oracle") {
        let r = power_lemma_oracle(ps.int("X")?, &sys)?;
        let summary = vec![("M", r.max_m.to_string()), ("X", r.x.to_string())];
        return Output::new(json!({ "system": &sys, "X": r.x, "M": r.max_m, "witness": &r.witness })).map(|o| o.with_summary(summary));
    }
    let c = power_lemma_min_x(ps.int("M")?, &sys)?;
    let summary = vec![("M", c.m_parts.to_string()), ("X", c.x0.to_string())];
    Output::new(json!({ "system": &sys, "M": c.m_parts, "X_min": c.x0, "construction": &c })).map(|o| o.with_summary(summary))
}

fn census_function(ps: &Params) -> Result<Box<dyn CensusFunction>> {
    Ok(match ps.req("function")? {
        "lambda" => Box::new(Modular(ModularFn::Lambda)),
        "delta" => Box::new(Modular(ModularFn::Delta)),
        "square" => Box::new(Square),
        "const" => Box::new(Constant(ps.rational_or("value", "1/2")?)),
        "fstar" => Box::new(FStarFn::new(ps.map("map")?, ps.rational("alpha")?, ps.int_or("order", 8)?)?),
        other => return Err(Error::Parse(format!("unknown census function '{other}'"))),
    })
}

fn cmd_census(ps: &Params, ctx: &Ctx) -> Result<Output> {
    let f = census_function(ps)?;
    let h: u64 = ps.int_or("height", 20)?;
    let rep = census(f.as_ref(), h, ctx.prec, ctx.exec)?;
    let mut t = Table::new(&["q", "mid", "rad", "verdict", "candidate"]);
    for r in &rep.records {
        let (mid, rad) = r.value.to_decimal();
        let cand = r.candidate.as_ref().map(cell_rational).unwrap_or_default();
        t.push(vec![cell_rational(&r.q), mid, rad, r.verdict.name().to_string(), cand]);
    }
    let summary = vec![("count", rep.count.to_string()), ("undecided", rep.undecided.to_string())];
    Output::new(&rep).map(|o| o.with_table(t).with_summary(summary))
}

fn cmd_bound_shape(ps: &Params, ctx: &Ctx) -> Result<Output> {
    let tag: ShapeTag = ps.req("shape")?.parse()?;
    let sp = ShapeParams {
        c: ps.real_opt("c", ctx.prec)?,
        d: if ps.has("d") { Some(ps.int("d")?) } else { None },
        h: ps.real_opt("H", ctx.prec)?,
        l: ps.real_opt("l", ctx.prec)?,
        big_d: if ps.has("D") { Some(ps.int("D")?) } else { None },
        n: if ps.has("n") { Some(ps.int("n")?) } else { None },
        eps: if ps.has("eps") { Some(ps.rational("eps")?) } else { None },
    };
    let v = bound_shape(tag, &sp, ctx.prec)?;
    let cell = cell_ball(&v);
    Output::new(json!({ "shape": tag, "value": v })).map(|o| o.with_summary(vec![("value", cell)]))
}

fn cmd_height(ps: &Params, ctx: &Ctx) -> Result<Output> {
    let h = if ps.has("alpha") {
        height_rational_prec(&ps.rational("alpha")?, ctx.prec)
    } else if ps.has("poly") {
        let (_, int_poly) = ps.poly("poly")?.to_primitive_int();
        height_algebraic(&AlgebraicNumber::new(int_poly, None)?, ctx.prec)?
    } else if ps.has("tuple") {
        let t = ps.req("tuple")?.split(',').map(|s| parse_rational(s.trim())).collect::<Result<Vec<_>>>()?;
        weil_height_tuple(&t, ctx.prec)?
    } else {
        return Err(Error::Parse("height needs --alpha, --poly or --tuple".into()));
    };
    let summary = vec![("height_mult", cell_ball(&h.mult)), ("height_log", cell_ball(&h.log))];
    Output::new(&h).map(|o| o.with_summary(summary))
}

fn cmd_factor(ps: &Params, ctx: &Ctx) -> Result<Output> {
    let poly = ps.poly("poly")?;
    let (scalar, rep) = factor_rational(&poly, ctx.seed)?;
    let mut t = Table::new(&["factor", "multiplicity", "degree"]);
    for f in &rep.factors {
        t.push(vec![f.coeffs.to_string(), f.mult.to_string(), f.coeffs.degree().unwrap_or(0).to_string()]);
    }
    let summary = vec![("distinct", rep.distinct_count().to_string()), ("with_multiplicity", rep.count_with_multiplicity().to_string())];
    Output::new(json!({ "scalar": cell_rational(&scalar), "factors": &rep })).map(|o| o.with_table(t).with_summary(summary))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn run(verb: &str, kv: &[(&str, &str)]) -> Result<Output> {
        let ps = Params(kv.iter().map(|(k, v)| (k.to_string(), v.to_string())).collect());
        run_verb(verb, &ps, &Ctx { prec: 128, seed: 0, exec: Execution::Sequential })
    }

    #[test]
    fn table_has_every_dispatched_verb() {
        for v in VERBS {
            let err = run(v.name, &[]);
            assert!(!matches!(err, Err(Error::Parse(ref m)) if m.starts_with("unknown verb")), "{}", v.name);
        }
    }

    #[test]
    fn summaries_follow_columns() {
        let cases: &[(&str, &[(&str, &str)])] = &[
            ("snap", &[("map", "X^2"), ("alpha", "2"), ("n", "2")]),
            ("order", &[("a", "3"), ("n", "7")]),
            ("order", &[("a", "3"), ("q", "2"), ("n", "5")]),
            ("power-lemma", &[("M", "4")]),
            ("cover", &[("R", "2"), ("r", "1")]),
            ("height", &[("alpha", "3/4")]),
            ("factor", &[("poly", "X^2 - 1")]),
        ];
        for (v, kv) in cases {
            let o = run(v, kv).unwrap();
            let keys: Vec<&str> = o.summary.iter().map(|(k, _)| k.as_str()).collect();
            assert_eq!(keys, verb(v).unwrap().columns, "{v}");
        }
    }

    #[test]
    fn spec_examples() {
        let o = run("snap", &[("map", "X^2"), ("alpha", "2"), ("n", "3")]).unwrap();
        let degs: Vec<String> = o.table.unwrap().rows.into_iter().map(|r| r[0].clone()).collect();
        assert_eq!(degs, ["1", "1", "2", "2", "4", "4", "4", "4"]);
        let o = run("cyclotomic-degree", &[("p", "2"), ("b", "8")]).unwrap();
        assert_eq!(o.result["degree"], 4);
        let o = run("power-lemma", &[("theta", "2"), ("c", "1"), ("oracle", "true"), ("X", "9")]).unwrap();
        assert_eq!(o.result["M"], 4);
    }

    #[test]
    fn delta_v_cells() {
        let cells: Vec<String> = ["2", "3", "5"]
            .iter()
            .map(|p| run("delta-v", &[("map", "X^2 + 1"), ("p", p)]).unwrap().summary[0].1.clone())
            .collect();
        assert_eq!(cells, ["4", "1", "1"]);
    }

    #[test]
    fn points_parse() {
        let pts = parse_points("1,1; 2,4;3/2,9/4").unwrap();
        assert_eq!(pts.len(), 3);
        assert!(parse_points("1;2").is_err());
    }
}
