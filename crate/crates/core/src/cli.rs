//! The `qdeg` command line.
//!
//! Exit status is 0 on success, 1 on a domain error (the stable error name is
//! the first word on stderr) and 2 on a usage error.

use clap::{Args, Parser, Subcommand};
use num_bigint::BigInt;
use serde_json::{json, Value};

use crate::charp::{compose, p_th_root, pullback, PolynomialMap};
use crate::cohomology::{convolve, h0_basis, hn_basis, twist_dims};
use crate::error::{Error, Result};
use crate::field::Field;
use crate::flatten::{flatten, noether_substitution};
use crate::geometry::{
    evaluate, roots_univariate, tangent_space, variety_bruteforce, PointWithRoots,
};
use crate::grading::{dehomogenize, homogeneous_components, homogenize, veronese_rational};
use crate::ideals::{
    gcd_univariate, groebner, ideal_member, is_proper, radical_member, IdealPresentation,
};
use crate::parser::{parse, print, print_monomial, to_json_terms};
use crate::poly::{Monomial, QPolynomial, RationalExponent};

/// Result of one invocation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

#[derive(Parser, Debug)]
#[command(
    name = "qdeg",
    version,
    about = "Exact algebra for polynomials with rational exponents"
)]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Args, Debug, Clone)]
struct Common {
    /// Coefficient field: `q` or `fp:<p>`.
    #[arg(long, default_value = "q")]
    field: String,
    /// Comma-separated variable names.
    #[arg(long, default_value = "x")]
    vars: String,
    /// Emit JSON instead of text.
    #[arg(long)]
    json: bool,
}

#[derive(Args, Debug, Clone)]
struct IdealArgs {
    /// Ideal generator; repeatable, and each value may hold several comma-separated generators.
    #[arg(long = "ideal", required = true, allow_hyphen_values = true)]
    ideal: Vec<String>,
}

#[derive(Subcommand, Debug)]
enum Cmd {
    /// Canonical form of an expression.
    Parse {
        #[command(flatten)]
        common: Common,
        #[arg(allow_hyphen_values = true)]
        expr: String,
    },
    /// Monic gcd of two one-variable polynomials with Bézout cofactors.
    Gcd {
        #[command(flatten)]
        common: Common,
        #[arg(allow_hyphen_values = true)]
        f: String,
        #[arg(allow_hyphen_values = true)]
        g: String,
    },
    /// Reduced Gröbner basis (degrevlex at the flattened level).
    Groebner {
        #[command(flatten)]
        common: Common,
        #[command(flatten)]
        ideal: IdealArgs,
    },
    /// Ideal membership.
    Member {
        #[command(flatten)]
        common: Common,
        #[arg(allow_hyphen_values = true)]
        f: String,
        #[command(flatten)]
        ideal: IdealArgs,
    },
    /// Radical membership.
    RadicalMember {
        #[command(flatten)]
        common: Common,
        #[arg(allow_hyphen_values = true)]
        f: String,
        #[command(flatten)]
        ideal: IdealArgs,
    },
    /// Whether the ideal is proper.
    Proper {
        #[command(flatten)]
        common: Common,
        #[command(flatten)]
        ideal: IdealArgs,
    },
    /// Integer-exponent form at the least common level.
    Flatten {
        #[command(flatten)]
        common: Common,
        #[arg(required = true, allow_hyphen_values = true)]
        exprs: Vec<String>,
    },
    /// Substitution making the last variable integral over the others.
    Noether {
        #[command(flatten)]
        common: Common,
        #[arg(allow_hyphen_values = true)]
        f: String,
    },
    /// Zeros of a one-variable polynomial.
    Roots {
        #[command(flatten)]
        common: Common,
        #[arg(allow_hyphen_values = true)]
        f: String,
    },
    /// Value at a point given as `L:u1,...,un` (coordinates `u_i^L`).
    Eval {
        #[command(flatten)]
        common: Common,
        #[arg(allow_hyphen_values = true)]
        f: String,
        #[arg(long, allow_hyphen_values = true)]
        point: String,
    },
    /// Zero set over a prime field, by enumeration of root vectors.
    Variety {
        #[command(flatten)]
        common: Common,
        #[command(flatten)]
        ideal: IdealArgs,
        /// Root order `L` of the enumerated points.
        #[arg(long, default_value_t = 1)]
        root_order: u64,
    },
    /// Zariski tangent space at a point.
    Tangent {
        #[command(flatten)]
        common: Common,
        #[command(flatten)]
        ideal: IdealArgs,
        #[arg(long, allow_hyphen_values = true)]
        point: String,
    },
    /// Homogeneous components.
    Components {
        #[command(flatten)]
        common: Common,
        #[arg(allow_hyphen_values = true)]
        f: String,
    },
    /// Homogenize to a given degree with a new last variable.
    Homog {
        #[command(flatten)]
        common: Common,
        #[arg(allow_hyphen_values = true)]
        f: String,
        #[arg(long, allow_hyphen_values = true)]
        deg: String,
        #[arg(long, default_value = "w")]
        new_var: String,
    },
    /// Set one variable to 1.
    Dehomog {
        #[command(flatten)]
        common: Common,
        #[arg(allow_hyphen_values = true)]
        f: String,
        #[arg(long)]
        chart: String,
    },
    /// Degree-one monomials `x^((k-j)/k) y^(j/k)`.
    Embed {
        #[arg(long)]
        k: u64,
        #[arg(long)]
        json: bool,
    },
    /// Cohomology of O(m) on projective n-space at denominator level D.
    Cech {
        #[arg(long)]
        n: usize,
        #[arg(long, allow_hyphen_values = true)]
        deg: String,
        #[arg(long)]
        den: u64,
        /// Box bound `E`; defaults to `max(|m|, 1)`.
        #[arg(long = "box")]
        bound: Option<String>,
        #[arg(long, value_parser = ["h0", "hn"])]
        basis: Option<String>,
        #[arg(long)]
        json: bool,
    },
    /// Cohomology of an exterior product, each factor given as `n:m`.
    Kunneth {
        #[arg(long, allow_hyphen_values = true)]
        first: String,
        #[arg(long, allow_hyphen_values = true)]
        second: String,
        #[arg(long)]
        den: u64,
        #[arg(long)]
        json: bool,
    },
    /// p-th root over a prime field.
    Proot {
        #[arg(long)]
        p: u64,
        #[arg(long, default_value = "x")]
        vars: String,
        #[arg(long)]
        json: bool,
        #[arg(allow_hyphen_values = true)]
        f: String,
    },
    /// Substitute `--sub` expressions (in `--vars`) for the variables of `f` (in `--outer-vars`).
    Compose {
        #[command(flatten)]
        common: Common,
        /// Variables of `f`; defaults to `--vars`.
        #[arg(long)]
        outer_vars: Option<String>,
        #[arg(allow_hyphen_values = true)]
        f: String,
        #[arg(long = "sub", required = true, allow_hyphen_values = true)]
        subs: Vec<String>,
    },
    /// Pull `g` (in `--target-vars`) back along the map with components `--map` (in `--vars`).
    Pullback {
        #[command(flatten)]
        common: Common,
        #[arg(long)]
        target_vars: String,
        #[arg(long = "map", required = true, allow_hyphen_values = true)]
        components: Vec<String>,
        #[arg(allow_hyphen_values = true)]
        g: String,
    },
}

/// Runs one invocation; `argv[0]` is the program name.
pub fn run<I, T>(argv: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            let text = e.render().to_string();
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => Outcome {
                    code: 0,
                    stdout: text,
                    stderr: String::new(),
                },
                _ => Outcome {
                    code: 2,
                    stdout: String::new(),
                    stderr: text,
                },
            };
        }
    };
    match dispatch(cli.cmd) {
        Ok(Output::Text(mut s)) => {
            if !s.is_empty() && !s.ends_with('\n') {
                s.push('\n');
            }
            Outcome {
                code: 0,
                stdout: s,
                stderr: String::new(),
            }
        }
        Ok(Output::Json(v)) => Outcome {
            code: 0,
            stdout: format!("{v}\n"),
            stderr: String::new(),
        },
        Err(Failure::Domain(e)) => Outcome {
            code: 1,
            stdout: String::new(),
            stderr: format!("{}: {e}\n", e.name()),
        },
        Err(Failure::Usage(msg)) => Outcome {
            code: 2,
            stdout: String::new(),
            stderr: format!("usage: {msg}\n"),
        },
    }
}

enum Output {
    Text(String),
    Json(Value),
}

enum Failure {
    Domain(Error),
    Usage(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Domain(e)
    }
}

type CliResult<T> = std::result::Result<T, Failure>;

fn parse_field(text: &str) -> CliResult<Field> {
    match text.trim() {
        "q" | "Q" => Ok(Field::Rational),
        other => {
            let p = other
                .strip_prefix("fp:")
                .and_then(|p| p.parse::<u64>().ok())
                .ok_or_else(|| {
                    Failure::Usage(format!("field must be `q` or `fp:<p>`, got `{other}`"))
                })?;
            Ok(Field::prime(p)?)
        }
    }
}

fn parse_vars(text: &str) -> CliResult<Vec<String>> {
    let vars: Vec<String> = text
        .split(',')
        .map(|v| v.trim().to_string())
        .filter(|v| !v.is_empty())
        .collect();
    for v in &vars {
        let mut chars = v.chars();
        let ok = chars.next().is_some_and(|c| c.is_ascii_alphabetic())
            && chars.all(|c| c.is_ascii_alphanumeric());
        if !ok {
            return Err(Failure::Usage(format!("invalid variable name `{v}`")));
        }
    }
    for (i, v) in vars.iter().enumerate() {
        if vars[..i].contains(v) {
            return Err(Failure::Usage(format!("variable `{v}` declared twice")));
        }
    }
    Ok(vars)
}

struct Ctx {
    field: Field,
    vars: Vec<String>,
    json: bool,
}

impl Ctx {
    fn new(c: &Common) -> CliResult<Self> {
        Ok(Ctx {
            field: parse_field(&c.field)?,
            vars: parse_vars(&c.vars)?,
            json: c.json,
        })
    }

    fn poly(&self, text: &str) -> Result<QPolynomial> {
        parse(text, self.field, &self.vars)
    }

    fn ideal(&self, args: &IdealArgs) -> Result<IdealPresentation> {
        let gens = args
            .ideal
            .iter()
            .flat_map(|s| s.split(','))
            .map(|g| self.poly(g))
            .collect::<Result<Vec<_>>>()?;
        IdealPresentation::new(gens)
    }

    fn point(&self, text: &str) -> CliResult<PointWithRoots> {
        let (level, rest) = match text.split_once(':') {
            Some((l, r)) => (
                l.trim()
                    .parse::<u64>()
                    .map_err(|_| Failure::Usage(format!("bad root order in point `{text}`")))?,
                r,
            ),
            None => (1, text),
        };
        let roots = rest
            .split(',')
            .map(|u| self.field.parse_element(u))
            .collect::<Result<Vec<_>>>()?;
        if roots.len() != self.vars.len() {
            return Err(Error::ArityMismatch {
                expected: self.vars.len(),
                got: roots.len(),
            }
            .into());
        }
        Ok(PointWithRoots::new(level, roots)?)
    }
}

fn poly_json(f: &QPolynomial, vars: &[String]) -> Value {
    json!({ "text": print(f, vars), "terms": to_json_terms(f, vars) })
}

fn lines<I: IntoIterator<Item = String>>(items: I) -> String {
    items.into_iter().collect::<Vec<_>>().join("\n")
}

fn levels_text(levels: &[BigInt]) -> Vec<String> {
    levels.iter().map(BigInt::to_string).collect()
}

fn bool_output(json: bool, key: &str, value: bool) -> Output {
    if json {
        Output::Json(json!({ key: value }))
    } else {
        Output::Text(value.to_string())
    }
}

fn poly_output(ctx_json: bool, f: &QPolynomial, vars: &[String]) -> Output {
    if ctx_json {
        Output::Json(json!({ "vars": vars, "poly": poly_json(f, vars) }))
    } else {
        Output::Text(print(f, vars))
    }
}

fn default_box(m: &RationalExponent) -> RationalExponent {
    let a = m.abs();
    if a < RationalExponent::one() {
        RationalExponent::one()
    } else {
        a
    }
}

fn dispatch(cmd: Cmd) -> CliResult<Output> {
    match cmd {
        Cmd::Parse { common, expr } => {
            let ctx = Ctx::new(&common)?;
            let f = ctx.poly(&expr)?;
            Ok(poly_output(ctx.json, &f, &ctx.vars))
        }
        Cmd::Gcd { common, f, g } => {
            let ctx = Ctx::new(&common)?;
            let b = gcd_univariate(&ctx.poly(&f)?, &ctx.poly(&g)?)?;
            let v = &ctx.vars;
            Ok(if ctx.json {
                Output::Json(json!({
                    "vars": v,
                    "gcd": poly_json(&b.gcd, v),
                    "u": poly_json(&b.u, v),
                    "v": poly_json(&b.v, v),
                }))
            } else {
                Output::Text(format!(
                    "gcd: {}\nu: {}\nv: {}",
                    print(&b.gcd, v),
                    print(&b.u, v),
                    print(&b.v, v)
                ))
            })
        }
        Cmd::Groebner { common, ideal } => {
            let ctx = Ctx::new(&common)?;
            let gb = groebner(&ctx.ideal(&ideal)?)?;
            let basis = gb.unflattened()?;
            let level = levels_text(gb.level.levels());
            Ok(if ctx.json {
                Output::Json(json!({
                    "vars": ctx.vars,
                    "level": level,
                    "basis": basis.iter().map(|g| poly_json(g, &ctx.vars)).collect::<Vec<_>>(),
                }))
            } else {
                let mut out = vec![format!("level: {}", level.join(","))];
                out.extend(basis.iter().map(|g| print(g, &ctx.vars)));
                Output::Text(lines(out))
            })
        }
        Cmd::Member { common, f, ideal } => {
            let ctx = Ctx::new(&common)?;
            let ans = ideal_member(&ctx.poly(&f)?, &ctx.ideal(&ideal)?)?;
            Ok(bool_output(ctx.json, "member", ans))
        }
        Cmd::RadicalMember { common, f, ideal } => {
            let ctx = Ctx::new(&common)?;
            let ans = radical_member(&ctx.poly(&f)?, &ctx.ideal(&ideal)?)?;
            Ok(bool_output(ctx.json, "member", ans))
        }
        Cmd::Proper { common, ideal } => {
            let ctx = Ctx::new(&common)?;
            let ans = is_proper(&ctx.ideal(&ideal)?)?;
            Ok(bool_output(ctx.json, "proper", ans))
        }
        Cmd::Flatten { common, exprs } => {
            let ctx = Ctx::new(&common)?;
            let fs = exprs
                .iter()
                .map(|e| ctx.poly(e))
                .collect::<Result<Vec<_>>>()?;
            let (map, flat) = flatten(&fs)?;
            let level = levels_text(map.levels());
            Ok(if ctx.json {
                Output::Json(json!({
                    "vars": ctx.vars,
                    "level": level,
                    "flattened": flat.iter().map(|g| poly_json(g, &ctx.vars)).collect::<Vec<_>>(),
                }))
            } else {
                let mut out = vec![format!("level: {}", level.join(","))];
                out.extend(flat.iter().map(|g| print(g, &ctx.vars)));
                Output::Text(lines(out))
            })
        }
        Cmd::Noether { common, f } => {
            let ctx = Ctx::new(&common)?;
            let r = noether_substitution(&ctx.poly(&f)?)?;
            let weights: Vec<String> = levels_text(&r.weights);
            let shifts: Vec<String> = r.shifts.iter().map(ToString::to_string).collect();
            let (c, e) = &r.leading;
            let last = ctx.vars.len() - 1;
            let lead = QPolynomial::from_terms(
                ctx.field,
                ctx.vars.len(),
                [(Monomial::var(last, e.clone()), c.clone())],
            )?;
            Ok(if ctx.json {
                Output::Json(json!({
                    "vars": ctx.vars,
                    "level": levels_text(r.map.levels()),
                    "weights": weights,
                    "shifts": shifts,
                    "transformed": poly_json(&r.transformed, &ctx.vars),
                    "leading": poly_json(&lead, &ctx.vars),
                }))
            } else {
                Output::Text(lines([
                    format!("level: {}", levels_text(r.map.levels()).join(",")),
                    format!("weights: {}", weights.join(",")),
                    format!("shifts: {}", shifts.join(",")),
                    format!("transformed: {}", print(&r.transformed, &ctx.vars)),
                    format!("leading: {}", print(&lead, &ctx.vars)),
                ]))
            })
        }
        Cmd::Roots { common, f } => {
            let ctx = Ctx::new(&common)?;
            let roots: Vec<String> = roots_univariate(&ctx.poly(&f)?)?
                .iter()
                .map(ToString::to_string)
                .collect();
            Ok(if ctx.json {
                Output::Json(json!({ "roots": roots }))
            } else {
                Output::Text(lines(roots))
            })
        }
        Cmd::Eval { common, f, point } => {
            let ctx = Ctx::new(&common)?;
            let p = ctx.point(&point)?;
            let value = evaluate(&ctx.poly(&f)?, &p)?.to_string();
            Ok(if ctx.json {
                Output::Json(json!({ "value": value }))
            } else {
                Output::Text(value)
            })
        }
        Cmd::Variety {
            common,
            ideal,
            root_order,
        } => {
            let ctx = Ctx::new(&common)?;
            let points = variety_bruteforce(&ctx.ideal(&ideal)?, root_order)?;
            let coords: Vec<Vec<String>> = points
                .iter()
                .map(|p| p.coordinates().iter().map(ToString::to_string).collect())
                .collect();
            Ok(if ctx.json {
                Output::Json(json!({ "vars": ctx.vars, "points": coords }))
            } else {
                Output::Text(lines(coords.iter().map(|c| format!("({})", c.join(", ")))))
            })
        }
        Cmd::Tangent {
            common,
            ideal,
            point,
        } => {
            let ctx = Ctx::new(&common)?;
            let gens = ctx.ideal(&ideal)?;
            let p = ctx.point(&point)?;
            let t = tangent_space(gens.generators(), &p)?;
            Ok(if ctx.json {
                Output::Json(json!({
                    "vars": ctx.vars,
                    "dimension": t.dimension,
                    "equations": t.equations.iter().map(|e| poly_json(e, &ctx.vars)).collect::<Vec<_>>(),
                }))
            } else {
                let mut out = vec![format!("dimension: {}", t.dimension)];
                out.extend(
                    t.equations
                        .iter()
                        .map(|e| format!("{} = 0", print(e, &ctx.vars))),
                );
                Output::Text(lines(out))
            })
        }
        Cmd::Components { common, f } => {
            let ctx = Ctx::new(&common)?;
            let dec = homogeneous_components(&ctx.poly(&f)?);
            Ok(if ctx.json {
                let parts: Vec<Value> = dec
                    .components
                    .iter()
                    .map(|(d, g)| json!({ "degree": d.to_string(), "poly": poly_json(g, &ctx.vars) }))
                    .collect();
                Output::Json(json!({ "vars": ctx.vars, "components": parts }))
            } else {
                Output::Text(lines(
                    dec.components
                        .iter()
                        .map(|(d, g)| format!("{d}: {}", print(g, &ctx.vars))),
                ))
            })
        }
        Cmd::Homog {
            common,
            f,
            deg,
            new_var,
        } => {
            let ctx = Ctx::new(&common)?;
            let mut vars = ctx.vars.clone();
            vars.push(new_var);
            let vars = parse_vars(&vars.join(","))?;
            let d = RationalExponent::parse(&deg)?;
            let h = homogenize(&ctx.poly(&f)?, &d, ctx.vars.len())?;
            Ok(poly_output(ctx.json, &h, &vars))
        }
        Cmd::Dehomog { common, f, chart } => {
            let ctx = Ctx::new(&common)?;
            let i = ctx
                .vars
                .iter()
                .position(|v| v == &chart)
                .ok_or_else(|| Error::UnknownVariable(chart.clone()))?;
            let g = dehomogenize(&ctx.poly(&f)?, i)?;
            let mut vars = ctx.vars.clone();
            vars.remove(i);
            Ok(poly_output(ctx.json, &g, &vars))
        }
        Cmd::Embed { k, json } => {
            let xy = ["x", "y"];
            let ms: Vec<String> = veronese_rational(k)?
                .iter()
                .map(|m| print_monomial(m, &xy))
                .collect();
            Ok(if json {
                Output::Json(json!({ "vars": xy, "monomials": ms }))
            } else {
                Output::Text(lines(ms))
            })
        }
        Cmd::Cech {
            n,
            deg,
            den,
            bound,
            basis,
            json,
        } => {
            let m = RationalExponent::parse(&deg)?;
            let e = match bound {
                Some(b) => RationalExponent::parse(&b)?,
                None => default_box(&m),
            };
            let dims = twist_dims(n, &m, den, &e)?;
            let names: Vec<String> = (0..=n).map(|i| format!("x{i}")).collect();
            let basis_text: Option<Vec<String>> = match basis.as_deref() {
                Some("h0") => Some(
                    h0_basis(n, &m, den)?
                        .iter()
                        .map(|b| print_monomial(b, &names))
                        .collect(),
                ),
                Some(_) => Some(
                    hn_basis(n, &m, den)?
                        .iter()
                        .map(|b| print_monomial(b, &names))
                        .collect(),
                ),
                None => None,
            };
            Ok(if json {
                let mut v = json!({ "h": dims.h });
                if let Some(b) = basis_text {
                    v["basis"] = json!(b);
                    v["vars"] = json!(names);
                }
                Output::Json(v)
            } else {
                let h: Vec<String> = dims.h.iter().map(ToString::to_string).collect();
                let mut out = vec![format!("h: {}", h.join(" "))];
                out.extend(basis_text.unwrap_or_default());
                Output::Text(lines(out))
            })
        }
        Cmd::Kunneth {
            first,
            second,
            den,
            json,
        } => {
            let factor = |arg: &str| -> CliResult<Vec<u64>> {
                let (n, m) = arg
                    .split_once(':')
                    .ok_or_else(|| Failure::Usage(format!("factor must be `n:m`, got `{arg}`")))?;
                let n: usize = n
                    .trim()
                    .parse()
                    .map_err(|_| Failure::Usage(format!("bad dimension in `{arg}`")))?;
                let m = RationalExponent::parse(m)?;
                Ok(twist_dims(n, &m, den, &default_box(&m))?.h)
            };
            let h = convolve(&factor(&first)?, &factor(&second)?);
            Ok(if json {
                Output::Json(json!({ "h": h }))
            } else {
                Output::Text(format!(
                    "h: {}",
                    h.iter()
                        .map(ToString::to_string)
                        .collect::<Vec<_>>()
                        .join(" ")
                ))
            })
        }
        Cmd::Proot { p, vars, json, f } => {
            let field = Field::prime(p)?;
            let vars = parse_vars(&vars)?;
            let r = p_th_root(&parse(&f, field, &vars)?)?;
            Ok(poly_output(json, &r, &vars))
        }
        Cmd::Compose {
            common,
            outer_vars,
            f,
            subs,
        } => {
            let ctx = Ctx::new(&common)?;
            let outer = match outer_vars {
                Some(o) => parse_vars(&o)?,
                None => ctx.vars.clone(),
            };
            let f = parse(&f, ctx.field, &outer)?;
            let gs = subs
                .iter()
                .map(|g| ctx.poly(g))
                .collect::<Result<Vec<_>>>()?;
            let h = compose(&f, &gs)?;
            Ok(poly_output(ctx.json, &h, &ctx.vars))
        }
        Cmd::Pullback {
            common,
            target_vars,
            components,
            g,
        } => {
            let ctx = Ctx::new(&common)?;
            let target = parse_vars(&target_vars)?;
            let comps = components
                .iter()
                .map(|c| ctx.poly(c))
                .collect::<Result<Vec<_>>>()?;
            let phi = PolynomialMap::new(ctx.field, ctx.vars.len(), comps)?;
            let h = pullback(&phi, &parse(&g, ctx.field, &target)?)?;
            Ok(poly_output(ctx.json, &h, &ctx.vars))
        }
    }
}
