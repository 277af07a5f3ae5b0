use crate::error::{Error, Result};
use crate::model::{FamilyParams, SolverConfig};

/// The two radii of the localization argument: `rho` bounds the influence
/// lost outside `B(S, rho)`, `r` the error from truncating the model to
/// `B(S, r)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct RadiusChoice {
    pub rho: usize,
    pub r: usize,
}

fn ceil_nonneg(x: f64, what: &str) -> Result<usize> {
    if !x.is_finite() || x > u32::MAX as f64 {
        return Err(Error::domain(format!("{what} is not a usable radius ({x})")));
    }
    Ok(x.ceil().max(0.0) as usize)
}

/// ```text
/// rho = ceil( (1/delta) ln(6 C k / eps) )
/// r   = rho + ceil( (1/delta) (ln(24 C / eps) + rho ln D) )
/// ```
///
/// Natural logarithms throughout. Both ceilings are clamped at zero, which
/// only matters when `eps` is large enough that no localization is needed.
pub fn radius_formula(k: usize, epsilon: f64, decay_constant: f64, delta: f64, delta_max: usize) -> Result<RadiusChoice> {
    if !(delta > 0.0 && delta < 1.0) {
        return Err(Error::domain(format!("delta must lie in (0, 1), got {delta}")));
    }
    if k == 0 || !(epsilon > 0.0) || !(decay_constant > 0.0) || delta_max < 1 {
        return Err(Error::domain("radius formula needs k >= 1, eps > 0, C > 0"));
    }
    let inv = 1.0 / delta;
    let rho = ceil_nonneg(inv * (6.0 * decay_constant * k as f64 / epsilon).ln(), "rho")?;
    let extra = ceil_nonneg(
        inv * ((24.0 * decay_constant / epsilon).ln() + rho as f64 * (delta_max as f64).ln()),
        "r",
    )?;
    Ok(RadiusChoice { rho, r: rho + extra })
}

/// The override when present, otherwise `r` from [`radius_formula`].
pub fn select_radius(cfg: &SolverConfig, params: &FamilyParams) -> Result<usize> {
    if let Some(r) = cfg.radius_override {
        return Ok(r);
    }
    Ok(radius_formula(cfg.k, cfg.epsilon, cfg.decay_constant, params.delta, params.delta_max)?.r)
}
