//! Grid certification of the weighted convexity inequality, the structural
//! class taxonomy, the `K`-functional monotonicity check, and the piecewise
//! power family used as a worked example.
//!
//! The central predicate is
//!
//! ```text
//! f(t*phi(x) + (1-t)*phi(y)) <= rho(t) * f(phi(x)) + rho(1-t) * f(phi(y))
//! ```
//!
//! for all `x, y` in an interval and `t in [0,1]`, with `rho` drawn from a
//! [`RhoSpec`]. The quantifier is undecidable for a black-box `f`, so
//! [`certify`] evaluates the inequality on a finite grid and returns a
//! verdict that is explicitly labelled `certified_on_grid` — a sweep, not a
//! proof. A violation, by contrast, is a hard fact: the returned witness
//! contains the evaluated sides and can be rechecked independently.

use crate::catalog::{FractalFn, PhiMap};
use crate::error::{Error, Result};
use crate::report::{ChainReport, Link, TOL_REL};
use crate::rho::{HFunction, RhoSpec};
use crate::special::{Alpha, SParam};
use serde::{Deserialize, Serialize};

/// Per-axis sample counts for the certification grid: `x` and `y` run over
/// the interval, `t` over `[0,1]`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct GridSpec {
    pub x: usize,
    pub y: usize,
    pub t: usize,
}

impl GridSpec {
    /// At least three points per axis; anything sparser cannot see a
    /// midpoint violation between two endpoints.
    pub fn new(x: usize, y: usize, t: usize) -> Result<Self> {
        for (axis, n) in [("x", x), ("y", y), ("t", t)] {
            if n < 3 {
                return Err(Error::Domain(format!(
                    "grid axis {axis} needs at least 3 points, got {n}"
                )));
            }
        }
        Ok(GridSpec { x, y, t })
    }
}

impl Default for GridSpec {
    fn default() -> Self {
        GridSpec { x: 21, y: 21, t: 21 }
    }
}

/// `n >= 2` equally spaced points from `lo` to `hi` inclusive.
pub fn linspace(lo: f64, hi: f64, n: usize) -> Vec<f64> {
    assert!(n >= 2, "linspace needs at least two points");
    let step = (hi - lo) / (n - 1) as f64;
    (0..n)
        .map(|i| if i == n - 1 { hi } else { lo + step * i as f64 })
        .collect()
}

/// Evaluate `phi` and `f(phi(.))` along one grid axis, growing the
/// running `max |f|` used for the verdict tolerance. An error carries a
/// human-readable description of the offending point.
fn eval_axis(
    f: &FractalFn,
    phi: &PhiMap,
    points: &[f64],
    axis: &str,
    max_abs: &mut f64,
) -> std::result::Result<(Vec<f64>, Vec<f64>), String> {
    let mut phis = Vec::with_capacity(points.len());
    let mut vals = Vec::with_capacity(points.len());
    for &p in points {
        let ph = phi.eval(p);
        if !ph.is_finite() {
            return Err(format!("phi({p}) = {ph} on the {axis} axis"));
        }
        let v = f.eval(ph);
        if !v.is_finite() {
            return Err(format!("f(phi({p})) = f({ph}) = {v} on the {axis} axis"));
        }
        *max_abs = max_abs.max(v.abs());
        phis.push(ph);
        vals.push(v);
    }
    Ok((phis, vals))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum CertStatus {
    CertifiedOnGrid,
    Violated,
    Indeterminate,
}

impl std::fmt::Display for CertStatus {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            CertStatus::CertifiedOnGrid => "certified_on_grid",
            CertStatus::Violated => "violated",
            CertStatus::Indeterminate => "indeterminate",
        })
    }
}

/// A concrete grid point with both evaluated sides of the inequality.
/// Everything needed to recheck the violation by hand.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct WitnessTriple {
    pub x: f64,
    pub y: f64,
    pub t: f64,
    pub lhs: f64,
    pub rhs: f64,
}

/// Outcome of a grid sweep of the convexity inequality.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ConvexityVerdict {
    pub status: CertStatus,
    /// Present iff `status == Violated`: the grid point of deepest
    /// violation (ties broken by scan order x, then y, then t).
    pub witness: Option<WitnessTriple>,
    /// Minimal slack `rhs - lhs` over all judged grid points; negative for
    /// violations. NaN when the sweep was cut short.
    pub margin: f64,
    /// The absolute tolerance the verdict was judged against:
    /// `1e-9 * (1 + max |f|)` over every function value the sweep saw.
    pub tol_abs: f64,
    /// For `Indeterminate`: which grid point failed to evaluate, and how.
    pub failure: Option<String>,
}

impl ConvexityVerdict {
    pub fn is_certified(&self) -> bool {
        self.status == CertStatus::CertifiedOnGrid
    }

    fn indeterminate(detail: String) -> Self {
        ConvexityVerdict {
            status: CertStatus::Indeterminate,
            witness: None,
            margin: f64::NAN,
            tol_abs: f64::NAN,
            failure: Some(detail),
        }
    }
}

/// Sweep the convexity inequality for `f` over `interval x interval x [0,1]`.
///
/// Judgement rules, in order:
/// - any non-finite function or map value aborts the sweep with an
///   `Indeterminate` verdict recording the offending point — an evaluation
///   failure is never scored as a violation;
/// - a grid point whose weight `rho(t)` or `rho(1-t)` is the `+infinity`
///   sentinel is satisfied by convention and contributes no slack;
/// - otherwise the point's slack is `rhs - lhs`, and the verdict is
///   `Violated` iff the minimal slack is below `-tol_abs`, with
///   `tol_abs = 1e-9 * (1 + max |f|)` taken over all values seen.
pub fn certify(
    f: &FractalFn,
    phi: &PhiMap,
    spec: &RhoSpec,
    interval: (f64, f64),
    grid: &GridSpec,
) -> Result<ConvexityVerdict> {
    let (a, b) = interval;
    if !(a.is_finite() && b.is_finite() && a < b) {
        return Err(Error::Domain(format!(
            "certification interval must be finite with a < b, got [{a}, {b}]"
        )));
    }

    let xs = linspace(a, b, grid.x);
    let ys = linspace(a, b, grid.y);
    let ts = linspace(0.0, 1.0, grid.t);

    // Pre-evaluate phi and the endpoint values f(phi(.)) on both axes.
    let mut max_abs = 0.0_f64;
    let (phi_x, f_x) = match eval_axis(f, phi, &xs, "x", &mut max_abs) {
        Ok(pair) => pair,
        Err(detail) => return Ok(ConvexityVerdict::indeterminate(detail)),
    };
    let (phi_y, f_y) = match eval_axis(f, phi, &ys, "y", &mut max_abs) {
        Ok(pair) => pair,
        Err(detail) => return Ok(ConvexityVerdict::indeterminate(detail)),
    };

    let rho_t: Vec<f64> = ts.iter().map(|&t| spec.rho(t)).collect();
    let rho_c: Vec<f64> = ts.iter().map(|&t| spec.rho(1.0 - t)).collect();

    let mut min_slack = f64::INFINITY;
    let mut argmin: Option<WitnessTriple> = None;
    for (i, &px) in phi_x.iter().enumerate() {
        for (j, &py) in phi_y.iter().enumerate() {
            for (k, &t) in ts.iter().enumerate() {
                let z = t * px + (1.0 - t) * py;
                let lhs = f.eval(z);
                if !lhs.is_finite() {
                    return Ok(ConvexityVerdict::indeterminate(format!(
                        "f({z}) = {lhs} at x = {}, y = {}, t = {t}",
                        xs[i], ys[j]
                    )));
                }
                max_abs = max_abs.max(lhs.abs());
                let (wt, wc) = (rho_t[k], rho_c[k]);
                if wt.is_nan() || wc.is_nan() {
                    return Ok(ConvexityVerdict::indeterminate(format!(
                        "rho evaluated to NaN at t = {t}"
                    )));
                }
                if wt.is_infinite() || wc.is_infinite() {
                    // The +infinity sentinel satisfies the inequality by
                    // convention; nothing to score.
                    continue;
                }
                let rhs = wt * f_x[i] + wc * f_y[j];
                if rhs.is_nan() {
                    return Ok(ConvexityVerdict::indeterminate(format!(
                        "rhs overflowed to NaN at x = {}, y = {}, t = {t}",
                        xs[i], ys[j]
                    )));
                }
                let slack = rhs - lhs;
                if slack < min_slack {
                    min_slack = slack;
                    argmin = Some(WitnessTriple {
                        x: xs[i],
                        y: ys[j],
                        t,
                        lhs,
                        rhs,
                    });
                }
            }
        }
    }

    let tol_abs = TOL_REL * (1.0 + max_abs);
    if min_slack < -tol_abs {
        Ok(ConvexityVerdict {
            status: CertStatus::Violated,
            witness: argmin,
            margin: min_slack,
            tol_abs,
            failure: None,
        })
    } else {
        Ok(ConvexityVerdict {
            status: CertStatus::CertifiedOnGrid,
            witness: None,
            margin: min_slack,
            tol_abs,
            failure: None,
        })
    }
}

/// The named convexity classes the weight family collapses to for special
/// `(h, s, phi)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ConvexityClass {
    PFunction,
    GeneralisedConvex,
    BrecknerFirst,
    BrecknerSecond,
    HTildeConvex,
    GodunovaLevinS,
    MtSConvex,
    MtConvex,
    None,
}

impl std::fmt::Display for ConvexityClass {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            ConvexityClass::PFunction => "p_function",
            ConvexityClass::GeneralisedConvex => "generalised_convex",
            ConvexityClass::BrecknerFirst => "breckner_first",
            ConvexityClass::BrecknerSecond => "breckner_second",
            ConvexityClass::HTildeConvex => "h_tilde_convex",
            ConvexityClass::GodunovaLevinS => "godunova_levin_s",
            ConvexityClass::MtSConvex => "mt_s_convex",
            ConvexityClass::MtConvex => "mt_convex",
            ConvexityClass::None => "none",
        })
    }
}

/// A class membership derived from `(h, s, phi)` alone. `conditional` marks
/// memberships that additionally need a pointwise side condition which
/// fails for generic parameters (Breckner-first needs
/// `t^s + (1-t)^s = 1`, which holds only at `t in {0,1}` when `s < 1`).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClassTag {
    pub tag: ConvexityClass,
    pub conditional: bool,
}

impl ClassTag {
    fn plain(tag: ConvexityClass) -> Self {
        ClassTag { tag, conditional: false }
    }
}

fn is_structurally_one(h: &HFunction) -> bool {
    matches!(h, HFunction::One) || matches!(h, HFunction::Power(p) if *p == 0.0)
}

fn is_structurally_square(h: &HFunction) -> bool {
    matches!(h, HFunction::Square) || matches!(h, HFunction::Power(p) if *p == 2.0)
}

/// Structural classification of the weight family. Purely a function of
/// `(h, s, phi)` identity — no numerics, no probing of user closures — so
/// equal inputs always produce equal tag lists. Identity `phi` is required
/// for every class; a non-identity substitution map yields `[none]`.
///
/// The `mt` generator gets its own named classes and is therefore excluded
/// from the generic `h_tilde_convex` bucket that would otherwise swallow
/// every `s = 1` weight.
pub fn classify(spec: &RhoSpec, phi: &PhiMap) -> Vec<ClassTag> {
    let mut tags = Vec::new();
    let s = spec.s.get();
    let h = &spec.h;
    if phi.is_identity() {
        if s == 0.0 {
            tags.push(ClassTag::plain(ConvexityClass::PFunction));
        }
        if s == 1.0 && is_structurally_one(h) {
            tags.push(ClassTag::plain(ConvexityClass::GeneralisedConvex));
        }
        if s > 0.0 && s < 1.0 && is_structurally_one(h) {
            tags.push(ClassTag {
                tag: ConvexityClass::BrecknerFirst,
                conditional: true,
            });
            tags.push(ClassTag::plain(ConvexityClass::BrecknerSecond));
        }
        if s == 1.0 && !matches!(h, HFunction::Mt) {
            tags.push(ClassTag::plain(ConvexityClass::HTildeConvex));
        }
        if s > 0.0 && is_structurally_square(h) {
            tags.push(ClassTag::plain(ConvexityClass::GodunovaLevinS));
        }
        if s > 0.0 && matches!(h, HFunction::Mt) {
            tags.push(ClassTag::plain(ConvexityClass::MtSConvex));
        }
        if s == 1.0 && matches!(h, HFunction::Mt) {
            tags.push(ClassTag::plain(ConvexityClass::MtConvex));
        }
    }
    if tags.is_empty() {
        tags.push(ClassTag::plain(ConvexityClass::None));
    }
    tags
}

/// `K(lambda, s) = rho(lambda^(1/s)) + rho((1-lambda)^(1/s))`.
///
/// The two arguments stay inside `[0,1]`, so no weight extension is
/// involved. `s = 0` has no meaning here (`1/s` undefined).
pub fn k_functional(lambda: f64, spec: &RhoSpec) -> Result<f64> {
    if !(0.0..=1.0).contains(&lambda) {
        return Err(Error::Domain(format!(
            "lambda must lie in [0,1], got {lambda}"
        )));
    }
    let s = spec.s.get();
    if s == 0.0 {
        return Err(Error::Domain(
            "K(lambda, s) needs s > 0: the exponent 1/s is undefined at s = 0".into(),
        ));
    }
    let inv = 1.0 / s;
    Ok(spec.rho(lambda.powf(inv)) + spec.rho((1.0 - lambda).powf(inv)))
}

/// Check the two conclusions drawn from `K = K(lambda, s)` for a function
/// on a positive range: the bound `f(r1) <= K * f(r2)` for all sampled
/// `0 < r1 <= r2`, and — only when `K <= 1`, where the bound collapses to
/// monotonicity — pairwise nondecrease of `f` over adjacent samples.
///
/// `r` runs over `grid.x` points of `f`'s own interval, open at the lower
/// endpoint (the conclusions live on `(0, infinity)`). Convexity of `f` is
/// the caller's hypothesis; the report records that it is assumed, not
/// rechecked here.
pub fn check_t1_monotonicity(
    f: &FractalFn,
    phi: &PhiMap,
    spec: &RhoSpec,
    lambda: f64,
    grid: &GridSpec,
) -> Result<ChainReport> {
    let s = spec.s.get();
    if !(s > 0.0 && s < 1.0) {
        return Err(Error::Domain(format!(
            "the K-functional monotonicity statement needs s in (0,1), got {s}"
        )));
    }
    let (lo, hi) = f.interval;
    if !(lo.is_finite() && hi.is_finite() && lo < hi && lo >= 0.0) {
        return Err(Error::Domain(format!(
            "monotonicity check needs a finite interval inside [0, infinity), got [{lo}, {hi}]"
        )));
    }
    let n = grid.x;
    // Open at the lower endpoint: r_i = lo + (hi-lo) * i/n for i = 1..n.
    let rs: Vec<f64> = (1..=n)
        .map(|i| lo + (hi - lo) * i as f64 / n as f64)
        .collect();
    for &r in &rs {
        let ph = phi.eval(r);
        if !(ph > 0.0) {
            return Err(Error::Domain(format!(
                "phi must be positive on the sampled range, got phi({r}) = {ph}"
            )));
        }
    }
    let k = k_functional(lambda, spec)?;

    let mut report = ChainReport::new("t1-monotonicity", "-")
        .with_param("lambda", lambda)
        .with_param("s", s)
        .with_param("alpha", spec.alpha.get())
        .with_param("h", spec.h.id())
        .with_param("k_value", k)
        .with_param("function", &f.id)
        .with_param("phi", phi.id())
        .with_param("r_range", format!("({lo}, {hi}]"))
        .with_param("r_points", n);
    report.note("convexity of f is assumed (caller's hypothesis), not rechecked here");

    let fv: Vec<f64> = rs.iter().map(|&r| f.eval(r)).collect();
    for (i, &r1) in rs.iter().enumerate() {
        for (j, &r2) in rs.iter().enumerate().skip(i) {
            let label = format!("bound r1={r1:.6} r2={r2:.6}");
            if fv[i].is_finite() && fv[j].is_finite() {
                report.push(Link::judge(label, fv[i], k * fv[j]));
            } else {
                report.push(Link::indeterminate(label));
            }
        }
    }
    if k <= 1.0 + 1e-12 {
        report.note("K <= 1: nondecrease links included");
        for i in 0..rs.len() - 1 {
            let label = format!("nondecrease r={:.6} -> r={:.6}", rs[i], rs[i + 1]);
            if fv[i].is_finite() && fv[i + 1].is_finite() {
                report.push(Link::judge(label, fv[i], fv[i + 1]));
            } else {
                report.push(Link::indeterminate(label));
            }
        }
    } else {
        report.note(format!(
            "K = {k} > 1: the monotonicity conclusion does not apply; only bound links reported"
        ));
    }
    Ok(report)
}

/// Sampled evidence for the two weight hypotheses the worked example
/// assumes: a partition-of-unity identity `rho(t) + rho(1-t) = 1` and the
/// lower power bound `t^(alpha*s) <= rho(t)`. Both are evaluated against
/// the reference generator `h = 1` and attached as metadata — deliberately
/// not enforced, because the identity already fails for `h = 1` whenever
/// `alpha * s < 1`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct E1Hypotheses {
    /// max over the t-grid of `|rho(t) + rho(1-t) - 1|`.
    pub partition_residual_max: f64,
    /// min over the t-grid of `rho(t) - t^(alpha*s)`; negative means the
    /// power bound fails somewhere.
    pub power_bound_min: f64,
    pub grid_points: usize,
}

/// The piecewise family `f(A) = beta^alpha` at `A = 0` and
/// `(gamma * A^s + sigma)^alpha` for `A > 0`, on `[0, infinity)`.
///
/// Real-embedded semantics make the outer power a plain `powf`, which
/// requires a nonnegative base: a negative `gamma * A^s + sigma` (or
/// `beta`) evaluates to NaN, surfacing as an evaluation failure at
/// certification time rather than a fabricated value.
///
/// Returns the function together with sampled [`E1Hypotheses`] metadata.
pub fn example_e1(
    beta: f64,
    gamma_c: f64,
    sigma: f64,
    s: SParam,
    alpha: Alpha,
) -> (FractalFn, E1Hypotheses) {
    let sv = s.get();
    let av = alpha.get();
    let embed = move |c: f64| if c < 0.0 { f64::NAN } else { c.powf(av) };
    let f = FractalFn::new(
        format!("e1(beta={beta}, gamma={gamma_c}, sigma={sigma}, s={sv})"),
        alpha,
        (0.0, f64::INFINITY),
        move |a: f64| {
            if a == 0.0 {
                embed(beta)
            } else if a > 0.0 {
                embed(gamma_c * a.powf(sv) + sigma)
            } else {
                f64::NAN
            }
        },
    );

    let n = 101;
    let mut partition_residual_max = 0.0_f64;
    let mut power_bound_min = f64::INFINITY;
    let reference = RhoSpec::new(HFunction::One, s, alpha);
    for t in linspace(0.0, 1.0, n) {
        let r = reference.rho(t);
        let rc = reference.rho(1.0 - t);
        partition_residual_max = partition_residual_max.max((r + rc - 1.0).abs());
        power_bound_min = power_bound_min.min(r - t.powf(av * sv));
    }
    (
        f,
        E1Hypotheses {
            partition_residual_max,
            power_bound_min,
            grid_points: n,
        },
    )
}

/// Certify the product `f * g` of two similarly-ordered functions against
/// the widened generator `h'(t) = c * max(h1(t), h2(t))`.
///
/// The constant `c` must dominate `h(t) + h(1-t)` for the pointwise max
/// `h`; that hypothesis is sampled on a t-grid and failing it is an error,
/// since the product claim is vacuous without it. The certification itself
/// is an honest grid sweep — the claim is checked, not trusted.
pub fn similarly_ordered_product(
    f: &FractalFn,
    g: &FractalFn,
    h1: &HFunction,
    h2: &HFunction,
    c: f64,
    s: SParam,
    alpha: Alpha,
    interval: (f64, f64),
    grid: &GridSpec,
) -> Result<ConvexityVerdict> {
    if !(c > 0.0 && c.is_finite()) {
        return Err(Error::Domain(format!("c must be a positive constant, got {c}")));
    }
    let (h1c, h2c) = (h1.clone(), h2.clone());
    let hmax = move |t: f64| h1c.eval(t).max(h2c.eval(t));
    for t in linspace(0.0, 1.0, 101) {
        let sum = hmax(t) + hmax(1.0 - t);
        if sum.is_finite() && sum > c + 1e-12 {
            return Err(Error::Hypothesis(format!(
                "h(t) + h(1-t) = {sum} exceeds c = {c} at t = {t}; the product claim needs h(t) + h(1-t) <= c"
            )));
        }
    }
    let widened = HFunction::User {
        id: format!("{c}*max({}, {})", h1.id(), h2.id()),
        eval: std::sync::Arc::new(move |t: f64| c * hmax(t)),
    };
    let (fc, gc) = (f.clone(), g.clone());
    let product = FractalFn::new(
        format!("({}) * ({})", f.id, g.id),
        alpha,
        interval,
        move |x: f64| fc.eval(x) * gc.eval(x),
    );
    certify(
        &product,
        &PhiMap::Identity,
        &RhoSpec::new(widened, s, alpha),
        interval,
        grid,
    )
}
