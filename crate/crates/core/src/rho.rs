//! The weight family `rho_s(t) = (t / h(t))^s` and its fractal-order power
//! `rho_{alpha s}(t) = (t / h(t))^{alpha s}`, together with the catalog of
//! `h` generators.
//!
//! Conventions, applied in this order:
//!
//! * `0^0 = 1`, so `s = 0` gives `rho == 1` identically (the P-function
//!   weight) no matter what `h` does.
//! * Where `h(t) = 0` the ratio `t / h(t)` is replaced by its one-sided
//!   limit when that limit is finite; otherwise the value is the
//!   `+infinity` sentinel (`f64::INFINITY`). Downstream comparisons treat
//!   any finite value as `<= +infinity`, so an infinite right-hand side is
//!   always satisfied.
//! * The family is declared on `[0, 1]`, but the X-functional applies it at
//!   arguments in `(1, 2]` and beyond; [`RhoSpec::rho_extended`] evaluates
//!   by the same formula wherever the generator's expression extends and
//!   errors where it does not (`mt` stops at `t = 1`).

use crate::error::{Error, Result};
use crate::expr::Expression;
use crate::special::{Alpha, SParam};
use std::fmt;
use std::sync::Arc;

/// A generator `h : (0, 1) -> (0, infinity)` from the catalog, or a
/// user-supplied expression in `t`.
#[derive(Clone)]
pub enum HFunction {
    /// `h(t) = 1`: the ratio is `t` itself.
    One,
    /// `h(t) = t^2` (Godunova-Levin weight): the ratio is `1/t`.
    Square,
    /// `h(t) = 2 sqrt(t - t^2)` (MT weight): the ratio is
    /// `sqrt(t) / (2 sqrt(1 - t))` on `[0, 1)`.
    Mt,
    /// `h(t) = t^p`: the ratio is `t^{1-p}`.
    Power(f64),
    /// User expression evaluated at `t`; the ratio is probed numerically
    /// where `h` vanishes.
    User {
        id: String,
        eval: Arc<dyn Fn(f64) -> f64 + Send + Sync>,
    },
}

impl fmt::Debug for HFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "HFunction({})", self.id())
    }
}

impl HFunction {
    /// Stable display name used in reports and config echoes.
    pub fn id(&self) -> String {
        match self {
            HFunction::One => "one".into(),
            HFunction::Square => "square".into(),
            HFunction::Mt => "mt".into(),
            HFunction::Power(p) => format!("power({p})"),
            HFunction::User { id, .. } => id.clone(),
        }
    }

    /// Build an `HFunction` from a user expression in `t`.
    pub fn from_expr(source: &str) -> Result<Self> {
        let expr = Expression::parse(source)?;
        Ok(HFunction::User {
            id: source.trim().to_string(),
            eval: Arc::new(move |t| expr.eval(t)),
        })
    }

    /// `h(t)` itself, for diagnostics and hypothesis checks.
    pub fn eval(&self, t: f64) -> f64 {
        match self {
            HFunction::One => 1.0,
            HFunction::Square => t * t,
            HFunction::Mt => 2.0 * (t - t * t).max(0.0).sqrt(),
            HFunction::Power(p) => t.powf(*p),
            HFunction::User { eval, .. } => eval(t),
        }
    }

    /// The ratio `t / h(t)` with declared one-sided limits at zeros of `h`,
    /// or the `+infinity` sentinel where the limit diverges.
    ///
    /// For catalog entries the limit structure is known in closed form; a
    /// user `h` with `h(t) = 0` is probed at nearby points.
    pub fn ratio(&self, t: f64) -> f64 {
        match self {
            HFunction::One => t,
            HFunction::Square => {
                if t == 0.0 {
                    f64::INFINITY
                } else {
                    1.0 / t
                }
            }
            HFunction::Mt => {
                // sqrt(t) / (2 sqrt(1 - t)): finite limit 0 at t = 0,
                // divergent at t = 1.
                if t >= 1.0 {
                    f64::INFINITY
                } else if t <= 0.0 {
                    0.0
                } else {
                    t.sqrt() / (2.0 * (1.0 - t).sqrt())
                }
            }
            HFunction::Power(p) => {
                // t^{1-p}: limit at 0 is 0 for p < 1, 1 for p = 1,
                // +infinity for p > 1.
                if t == 0.0 {
                    if *p < 1.0 {
                        0.0
                    } else if *p == 1.0 {
                        1.0
                    } else {
                        f64::INFINITY
                    }
                } else {
                    t.powf(1.0 - p)
                }
            }
            HFunction::User { eval, .. } => {
                let h = eval(t);
                if h != 0.0 && h.is_finite() {
                    t / h
                } else {
                    probe_user_ratio(eval, t)
                }
            }
        }
    }

    /// Whether the generator's expression extends past `t = 1` (needed for
    /// the X-functional's arguments in `(1, 2]` and the reflection bounds'
    /// arguments up to 4).
    pub fn extends_beyond_unit(&self) -> bool {
        !matches!(self, HFunction::Mt)
    }

    /// Exponent `e` such that `ratio(t) ~ c * t^e` as `t -> 0+`, when known
    /// in closed form (used for kernel-integrability checks). `None` for
    /// user generators.
    pub fn ratio_exponent_at_zero(&self) -> Option<f64> {
        match self {
            HFunction::One => Some(1.0),
            HFunction::Square => Some(-1.0),
            HFunction::Mt => Some(0.5),
            HFunction::Power(p) => Some(1.0 - p),
            HFunction::User { .. } => None,
        }
    }

    /// Exponent `e` such that `ratio(t) ~ c * (1-t)^e` as `t -> 1-`, when
    /// known in closed form. `None` for user generators.
    pub fn ratio_exponent_at_one(&self) -> Option<f64> {
        match self {
            HFunction::One | HFunction::Square | HFunction::Power(_) => Some(0.0),
            HFunction::Mt => Some(-0.5),
            HFunction::User { .. } => None,
        }
    }
}

/// Probe `t / h(t)` from inside `(0, 1)` when `h(t)` vanishes or is not
/// finite at `t` itself: if the ratio stabilises it is the limit, if it
/// grows without bound the sentinel is returned.
fn probe_user_ratio(eval: &Arc<dyn Fn(f64) -> f64 + Send + Sync>, t: f64) -> f64 {
    let direction = if t <= 0.5 { 1.0 } else { -1.0 };
    let mut last = f64::NAN;
    for &delta in &[1e-4, 1e-6, 1e-8] {
        let tt = t + direction * delta;
        let h = eval(tt);
        let r = if h != 0.0 { tt / h } else { f64::INFINITY };
        if !r.is_finite() || r.abs() > 1e12 {
            return if r < 0.0 { f64::NEG_INFINITY } else { f64::INFINITY };
        }
        last = r;
    }
    last
}

/// A fully parameterised weight: generator `h`, index `s`, order `alpha`.
#[derive(Debug, Clone)]
pub struct RhoSpec {
    pub h: HFunction,
    pub s: SParam,
    pub alpha: Alpha,
}

impl RhoSpec {
    pub fn new(h: HFunction, s: SParam, alpha: Alpha) -> Self {
        RhoSpec { h, s, alpha }
    }

    /// `rho_s(t) = (t / h(t))^s` with the `0^0 = 1` convention.
    pub fn rho_s(&self, t: f64) -> f64 {
        power_with_conventions(self.h.ratio(t), self.s.get())
    }

    /// `rho_{alpha s}(t) = (t / h(t))^{alpha s}` on the declared domain
    /// `[0, 1]`.
    pub fn rho(&self, t: f64) -> f64 {
        power_with_conventions(self.h.ratio(t), self.alpha.get() * self.s.get())
    }

    /// `rho_{alpha s}` evaluated by the same formula at arguments beyond 1,
    /// where the generator's expression extends; errors on an extension gap
    /// (`mt` is only defined on `[0, 1]`).
    pub fn rho_extended(&self, t: f64) -> Result<f64> {
        if t <= 1.0 {
            return Ok(self.rho(t));
        }
        if !self.h.extends_beyond_unit() {
            return Err(Error::Domain(format!(
                "h = {} does not extend beyond t = 1 (needed at t = {t})",
                self.h.id()
            )));
        }
        Ok(power_with_conventions(
            self.h.ratio(t),
            self.alpha.get() * self.s.get(),
        ))
    }

    /// Combined exponent of `rho_{alpha s}` at `t -> 0+` when known.
    pub fn rho_exponent_at_zero(&self) -> Option<f64> {
        self.h
            .ratio_exponent_at_zero()
            .map(|e| e * self.alpha.get() * self.s.get())
    }

    /// Combined exponent of `rho_{alpha s}` at `t -> 1-` when known.
    pub fn rho_exponent_at_one(&self) -> Option<f64> {
        self.h
            .ratio_exponent_at_one()
            .map(|e| e * self.alpha.get() * self.s.get())
    }
}

/// `base^exponent` under the crate conventions: `0^0 = 1`, `0^e = 0` for
/// `e > 0`, `inf^0 = 1`, `inf^e = inf` for `e > 0`, negative finite bases
/// produce NaN (reported upstream as evaluation failures).
fn power_with_conventions(base: f64, exponent: f64) -> f64 {
    if exponent == 0.0 {
        1.0
    } else if base == 0.0 {
        0.0
    } else if base.is_infinite() {
        if base > 0.0 {
            f64::INFINITY
        } else {
            f64::NAN
        }
    } else if base < 0.0 {
        f64::NAN
    } else {
        base.powf(exponent)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn spec(h: HFunction, s: f64, alpha: f64) -> RhoSpec {
        RhoSpec::new(h, SParam::new(s).unwrap(), Alpha::new(alpha).unwrap())
    }

    #[test]
    fn plain_power_weight() {
        // h == 1, s = 1, alpha = 0.5: rho(t) = t^0.5.
        let r = spec(HFunction::One, 1.0, 0.5);
        assert!((r.rho(0.25) - 0.5).abs() < 1e-15);
        assert_eq!(r.rho(0.0), 0.0);
        assert_eq!(r.rho(1.0), 1.0);
    }

    #[test]
    fn mt_weight_at_half() {
        // h = 2 sqrt(t - t^2) has h(1/2) = 1, so the ratio at 1/2 is 1/2.
        let r = spec(HFunction::Mt, 1.0, 1.0);
        assert!((r.rho(0.5) - 0.5).abs() < 1e-15);
    }

    #[test]
    fn godunova_levin_weight_at_half() {
        // h = t^2: ratio 1/t, so rho(1/2) = 2 at s = 1, alpha = 1.
        let r = spec(HFunction::Square, 1.0, 1.0);
        assert!((r.rho(0.5) - 2.0).abs() < 1e-15);
    }

    #[test]
    fn s_zero_collapses_to_one_everywhere() {
        for h in [HFunction::One, HFunction::Square, HFunction::Mt] {
            let r = spec(h, 0.0, 0.7);
            for &t in &[0.0, 0.25, 0.5, 1.0] {
                assert_eq!(r.rho(t), 1.0, "s=0 must give 1 at t={t}");
            }
        }
    }

    #[test]
    fn sentinel_values_at_vanishing_h() {
        // h = t^2 at t = 0: ratio diverges.
        let r = spec(HFunction::Square, 1.0, 1.0);
        assert_eq!(r.rho(0.0), f64::INFINITY);
        // mt at t = 1 diverges, at t = 0 the one-sided limit is 0.
        let m = spec(HFunction::Mt, 1.0, 1.0);
        assert_eq!(m.rho(1.0), f64::INFINITY);
        assert_eq!(m.rho(0.0), 0.0);
        // but s = 0 still wins over the sentinel.
        let m0 = spec(HFunction::Mt, 0.0, 1.0);
        assert_eq!(m0.rho(1.0), 1.0);
    }

    #[test]
    fn power_generator_limits_at_zero() {
        assert_eq!(spec(HFunction::Power(0.5), 1.0, 1.0).rho(0.0), 0.0);
        assert_eq!(spec(HFunction::Power(1.0), 1.0, 1.0).rho(0.0), 1.0);
        assert_eq!(spec(HFunction::Power(2.0), 1.0, 1.0).rho(0.0), f64::INFINITY);
    }

    #[test]
    fn one_generator_matches_plain_power_to_machine_precision() {
        let r = spec(HFunction::One, 0.7, 0.6);
        let exponent = 0.7 * 0.6;
        for i in 0..=100 {
            let t = i as f64 / 100.0;
            let direct = t.powf(exponent);
            assert!(
                (r.rho(t) - direct).abs() <= 1e-15 * (1.0 + direct),
                "t={t}"
            );
        }
    }

    #[test]
    fn extension_beyond_unit_interval() {
        let r = spec(HFunction::One, 1.0, 1.0);
        assert!((r.rho_extended(1.5).unwrap() - 1.5).abs() < 1e-15);
        let r2 = spec(HFunction::One, 1.0, 0.5);
        assert!((r2.rho_extended(2.0).unwrap() - 2.0_f64.sqrt()).abs() < 1e-15);
        // mt has no expression past t = 1: extension gap is an error.
        let m = spec(HFunction::Mt, 1.0, 1.0);
        assert!(matches!(m.rho_extended(1.5), Err(Error::Domain(_))));
    }

    #[test]
    fn user_generator_via_expression() {
        let h = HFunction::from_expr("t^2").unwrap();
        let r = spec(h, 1.0, 1.0);
        assert!((r.rho(0.5) - 2.0).abs() < 1e-12);
        assert_eq!(r.rho(0.0), f64::INFINITY);
    }

    #[test]
    fn rho_s_ignores_alpha() {
        let r = spec(HFunction::One, 1.0, 0.5);
        assert!((r.rho_s(0.25) - 0.25).abs() < 1e-15);
        assert!((r.rho(0.25) - 0.5).abs() < 1e-15);
    }
}
