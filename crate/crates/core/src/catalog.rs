//! Named catalogs: test functions (`FractalFn`), substitution maps
//! (`PhiMap`) and density shapes, plus the `name(arg, ...)` syntax used to
//! select them from configs. Any name that does not resolve against a
//! catalog is parsed as a user expression instead.

use crate::error::{Error, Result};
use crate::expr::Expression;
use crate::rho::HFunction;
use crate::special::{self, Alpha};
use std::fmt;
use std::sync::Arc;

/// A real-valued function tagged with the fractal order of its codomain
/// and the interval it is meant to be evaluated on.
///
/// Real-embedded semantics: `f(x) = c^alpha` is stored as the real number
/// `c^alpha`; the `alpha` tag is metadata that scenario reports echo, it
/// never changes how `eval` computes.
#[derive(Clone)]
pub struct FractalFn {
    pub id: String,
    pub alpha: Alpha,
    pub interval: (f64, f64),
    eval: Arc<dyn Fn(f64) -> f64 + Send + Sync>,
}

impl fmt::Debug for FractalFn {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "FractalFn({} on [{}, {}], alpha = {})",
            self.id,
            self.interval.0,
            self.interval.1,
            self.alpha.get()
        )
    }
}

impl FractalFn {
    pub fn new(
        id: impl Into<String>,
        alpha: Alpha,
        interval: (f64, f64),
        eval: impl Fn(f64) -> f64 + Send + Sync + 'static,
    ) -> Self {
        FractalFn {
            id: id.into(),
            alpha,
            interval,
            eval: Arc::new(eval),
        }
    }

    pub fn eval(&self, x: f64) -> f64 {
        (self.eval)(x)
    }
}

/// Substitution map `phi` applied to both arguments of the convexity
/// combination.
#[derive(Clone)]
pub enum PhiMap {
    Identity,
    /// `phi(x) = p x + q`.
    Affine(f64, f64),
    Exp,
    SquareRoot,
    User {
        id: String,
        eval: Arc<dyn Fn(f64) -> f64 + Send + Sync>,
    },
}

impl fmt::Debug for PhiMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "PhiMap({})", self.id())
    }
}

impl PhiMap {
    pub fn id(&self) -> String {
        match self {
            PhiMap::Identity => "identity".into(),
            PhiMap::Affine(p, q) => format!("affine({p},{q})"),
            PhiMap::Exp => "exp".into(),
            PhiMap::SquareRoot => "square_root".into(),
            PhiMap::User { id, .. } => id.clone(),
        }
    }

    pub fn eval(&self, x: f64) -> f64 {
        match self {
            PhiMap::Identity => x,
            PhiMap::Affine(p, q) => p * x + q,
            PhiMap::Exp => x.exp(),
            PhiMap::SquareRoot => x.sqrt(),
            PhiMap::User { eval, .. } => eval(x),
        }
    }

    pub fn is_identity(&self) -> bool {
        matches!(self, PhiMap::Identity)
    }
}

/// Split `"name(a, b)"` into `("name", vec![a, b])`; a bare `"name"` gets
/// an empty argument list. Returns `None` when the argument list is not a
/// comma-separated list of numeric literals (the caller then falls back to
/// expression parsing).
fn split_call(text: &str) -> Option<(String, Vec<f64>)> {
    let text = text.trim();
    if let Some(open) = text.find('(') {
        if !text.ends_with(')') {
            return None;
        }
        let name = text[..open].trim().to_string();
        if name.is_empty() || !name.chars().all(|c| c.is_ascii_alphanumeric() || c == '_') {
            return None;
        }
        let inner = &text[open + 1..text.len() - 1];
        let mut args = Vec::new();
        for piece in inner.split(',') {
            match piece.trim().parse::<f64>() {
                Ok(v) => args.push(v),
                Err(_) => return None,
            }
        }
        Some((name, args))
    } else {
        let name = text.to_string();
        if !name.is_empty() && name.chars().all(|c| c.is_ascii_alphanumeric() || c == '_') {
            Some((name, Vec::new()))
        } else {
            None
        }
    }
}

fn arity_err(name: &str, want: usize, got: usize) -> Error {
    Error::Domain(format!("{name} expects {want} argument(s), got {got}"))
}

/// Resolve a function name (or expression) into a [`FractalFn`] on the
/// given interval.
///
/// Catalog: `square`, `neg_square`, `cube`, `exp`, `abs_mid` (distance to
/// the interval midpoint), `identity`, `sqrt`, `constant(c)`,
/// `affine(m,c)`, `power(p)`, `alpha_power` (`x^alpha` for the scenario
/// order), `mittag_leffler` (the truncated series at the scenario order).
/// Anything else is parsed as an expression in `x`.
pub fn function(name: &str, alpha: Alpha, interval: (f64, f64)) -> Result<FractalFn> {
    let id = name.trim().to_string();
    if let Some((head, args)) = split_call(name) {
        let make = |eval: Arc<dyn Fn(f64) -> f64 + Send + Sync>| FractalFn {
            id: id.clone(),
            alpha,
            interval,
            eval,
        };
        match head.as_str() {
            "square" => return Ok(make(Arc::new(|x| x * x))),
            "neg_square" => return Ok(make(Arc::new(|x| -(x * x)))),
            "cube" => return Ok(make(Arc::new(|x| x * x * x))),
            "exp" => return Ok(make(Arc::new(|x| x.exp()))),
            "identity" => return Ok(make(Arc::new(|x| x))),
            "sqrt" => return Ok(make(Arc::new(|x| x.sqrt()))),
            "abs_mid" => {
                let mid = 0.5 * (interval.0 + interval.1);
                return Ok(make(Arc::new(move |x| (x - mid).abs())));
            }
            "constant" => {
                if args.len() != 1 {
                    return Err(arity_err("constant", 1, args.len()));
                }
                let c = args[0];
                return Ok(make(Arc::new(move |_| c)));
            }
            "affine" => {
                if args.len() != 2 {
                    return Err(arity_err("affine", 2, args.len()));
                }
                let (m, c) = (args[0], args[1]);
                return Ok(make(Arc::new(move |x| m * x + c)));
            }
            "power" => {
                if args.len() != 1 {
                    return Err(arity_err("power", 1, args.len()));
                }
                let p = args[0];
                return Ok(make(Arc::new(move |x| x.powf(p))));
            }
            "alpha_power" => {
                let a = alpha.get();
                return Ok(make(Arc::new(move |x| x.powf(a))));
            }
            "mittag_leffler" => {
                return Ok(make(Arc::new(move |x| {
                    special::mittag_leffler(alpha, x, 1e-13).unwrap_or(f64::NAN)
                })));
            }
            _ => {}
        }
    }
    // Fall through: user expression in x.
    let expr = Expression::parse(name)
        .map_err(|e| Error::UnknownCatalog(format!("function '{id}' ({e})")))?;
    Ok(FractalFn {
        id,
        alpha,
        interval,
        eval: Arc::new(move |x| expr.eval(x)),
    })
}

/// Resolve a substitution-map name (or expression in `x`):
/// `identity`, `affine(p,q)`, `exp`, `square_root`, or an expression.
pub fn phi_map(name: &str) -> Result<PhiMap> {
    let id = name.trim().to_string();
    if let Some((head, args)) = split_call(name) {
        match head.as_str() {
            "identity" => return Ok(PhiMap::Identity),
            "exp" => return Ok(PhiMap::Exp),
            "square_root" => return Ok(PhiMap::SquareRoot),
            "affine" => {
                if args.len() != 2 {
                    return Err(arity_err("affine", 2, args.len()));
                }
                return Ok(PhiMap::Affine(args[0], args[1]));
            }
            _ => {}
        }
    }
    let expr =
        Expression::parse(name).map_err(|e| Error::UnknownCatalog(format!("phi '{id}' ({e})")))?;
    Ok(PhiMap::User {
        id,
        eval: Arc::new(move |x| expr.eval(x)),
    })
}

/// Resolve an `h` generator name (or expression in `t`):
/// `one`, `square`, `mt`, `power(p)`, or an expression.
pub fn h_function(name: &str) -> Result<HFunction> {
    if let Some((head, args)) = split_call(name) {
        match head.as_str() {
            "one" => return Ok(HFunction::One),
            "square" => return Ok(HFunction::Square),
            "mt" => return Ok(HFunction::Mt),
            "power" => {
                if args.len() != 1 {
                    return Err(arity_err("power", 1, args.len()));
                }
                return Ok(HFunction::Power(args[0]));
            }
            _ => {}
        }
    }
    HFunction::from_expr(name)
}

/// A density shape on a support interval, classically normalised (its
/// ordinary Lebesgue integral over the support is 1). Backend-relative
/// renormalisation is the probability module's business.
///
/// Catalog: `uniform`, `triangular_up` (rises linearly, `2 theta` on
/// `[0, 1]`), `triangular_down`, `power(p)` (`~ (theta - t1)^p`), or a user
/// expression in `x`/`t`.
pub fn density(
    name: &str,
    support: (f64, f64),
) -> Result<(String, Arc<dyn Fn(f64) -> f64 + Send + Sync>)> {
    let (t1, t2) = support;
    if !(t1 < t2) {
        return Err(Error::Domain(format!(
            "density support must satisfy t1 < t2, got [{t1}, {t2}]"
        )));
    }
    let width = t2 - t1;
    let id = name.trim().to_string();
    if let Some((head, args)) = split_call(name) {
        match head.as_str() {
            "uniform" => {
                let c = 1.0 / width;
                return Ok((id, Arc::new(move |_| c)));
            }
            "triangular_up" => {
                let c = 2.0 / (width * width);
                return Ok((id, Arc::new(move |x| c * (x - t1))));
            }
            "triangular_down" => {
                let c = 2.0 / (width * width);
                return Ok((id, Arc::new(move |x| c * (t2 - x))));
            }
            "power" => {
                if args.len() != 1 {
                    return Err(arity_err("power", 1, args.len()));
                }
                let p = args[0];
                if p <= -1.0 {
                    return Err(Error::Domain(format!(
                        "power density requires p > -1, got {p}"
                    )));
                }
                let c = (p + 1.0) / width.powf(p + 1.0);
                return Ok((id, Arc::new(move |x| c * (x - t1).powf(p))));
            }
            _ => {}
        }
    }
    let expr = Expression::parse(name)
        .map_err(|e| Error::UnknownCatalog(format!("density '{id}' ({e})")))?;
    Ok((id, Arc::new(move |x| expr.eval(x))))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn a1() -> Alpha {
        Alpha::new(1.0).unwrap()
    }

    #[test]
    fn function_catalog_resolves() {
        let f = function("square", a1(), (0.0, 1.0)).unwrap();
        assert_eq!(f.eval(0.5), 0.25);
        let g = function("power(1.5)", a1(), (0.0, 1.0)).unwrap();
        assert!((g.eval(4.0) - 8.0).abs() < 1e-12);
        let h = function("abs_mid", a1(), (0.0, 1.0)).unwrap();
        assert_eq!(h.eval(0.75), 0.25);
        let k = function("affine(2, 1)", a1(), (0.0, 1.0)).unwrap();
        assert_eq!(k.eval(3.0), 7.0);
        let c = function("constant(4)", a1(), (0.0, 1.0)).unwrap();
        assert_eq!(c.eval(123.0), 4.0);
    }

    #[test]
    fn function_alpha_power_uses_the_tag() {
        let f = function("alpha_power", Alpha::new(0.5).unwrap(), (0.0, 1.0)).unwrap();
        assert_eq!(f.eval(0.25), 0.5);
    }

    #[test]
    fn function_falls_back_to_expression() {
        let f = function("x^2 + 1", a1(), (0.0, 1.0)).unwrap();
        assert_eq!(f.eval(2.0), 5.0);
        assert_eq!(f.id, "x^2 + 1");
    }

    #[test]
    fn unresolvable_function_is_an_error() {
        assert!(matches!(
            function("sin(x)", a1(), (0.0, 1.0)),
            Err(Error::UnknownCatalog(_))
        ));
        assert!(matches!(
            function("power(1, 2)", a1(), (0.0, 1.0)),
            Err(Error::Domain(_))
        ));
    }

    #[test]
    fn phi_catalog_resolves() {
        assert!(phi_map("identity").unwrap().is_identity());
        let aff = phi_map("affine(2, 1)").unwrap();
        assert_eq!(aff.eval(3.0), 7.0);
        assert_eq!(aff.id(), "affine(2, 1)");
        let sq = phi_map("square_root").unwrap();
        assert_eq!(sq.eval(4.0), 2.0);
    }

    #[test]
    fn h_catalog_resolves() {
        assert!(matches!(h_function("one").unwrap(), HFunction::One));
        assert!(matches!(h_function("mt").unwrap(), HFunction::Mt));
        match h_function("power(0.5)").unwrap() {
            HFunction::Power(p) => assert_eq!(p, 0.5),
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn density_catalog_is_classically_normalised() {
        for name in ["uniform", "triangular_up", "triangular_down", "power(2)"] {
            let (_, d) = density(name, (0.0, 2.0)).unwrap();
            // Midpoint rule at fine resolution.
            let n = 200_000;
            let h = 2.0 / n as f64;
            let total: f64 = (0..n).map(|i| d(h * (i as f64 + 0.5)) * h).sum();
            assert!(
                (total - 1.0).abs() < 1e-6,
                "density {name} integrates to {total}"
            );
        }
    }

    #[test]
    fn triangular_up_matches_the_reference_shape() {
        let (_, d) = density("triangular_up", (0.0, 1.0)).unwrap();
        assert!((d(0.5) - 1.0).abs() < 1e-15);
        assert!((d(1.0) - 2.0).abs() < 1e-15);
    }

    #[test]
    fn density_rejects_degenerate_support() {
        assert!(density("uniform", (1.0, 1.0)).is_err());
    }
}
