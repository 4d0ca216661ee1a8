use serde::{Deserialize, Serialize};

use crate::maskit::{build_polygon, FenchelNielsen6};
use crate::tolerance;
use crate::{Error, Result};

use super::{entropy_formula, h_max};

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Solution {
    pub params: FenchelNielsen6,
    pub entropy: f64,
    pub evaluations: usize,
}

const MIN_TOL: f64 = 1e-10;
const MAX_BISECTIONS: usize = 200;

/// Parameters with `β ≥ β_regular` (all else regular) whose polygon has the
/// target entropy within `tol`.
///
/// The bracket grows from the regular `β` by doubling steps until the
/// entropy drops below the target; a step whose polygon cannot be built or
/// validated is halved instead. Then bisection on `β`.
pub fn solve_target_entropy(target: f64, tol: f64) -> Result<Solution> {
    let max = h_max(2)?;
    if !(target > 0.0 && target <= max + MIN_TOL) {
        return Err(Error::TargetOutOfRange { target, max });
    }
    if !(tol >= MIN_TOL) {
        return Err(Error::InvalidInput(format!("tolerance must be at least {MIN_TOL:e} (got {tol:e})")));
    }
    let base = FenchelNielsen6::regular();
    let mut evaluations = 0;
    let mut eval = |beta: f64| -> Result<(FenchelNielsen6, f64)> {
        evaluations += 1;
        let p = FenchelNielsen6 { beta, ..base };
        let h = entropy_formula(&build_polygon(&p)?);
        log::debug!("β = {beta}: entropy {h}");
        Ok((p, h))
    };
    let (mut lo, h0) = (base.beta, eval(base.beta)?.1);
    if (h0 - target).abs() <= tol {
        return Ok(Solution { params: base, entropy: h0, evaluations: 1 });
    }
    let mut step = base.beta;
    let mut hi = loop {
        let b = lo + step;
        if b > tolerance::SOLVER_BETA_CAP {
            return Err(Error::BracketFailure {
                reason: format!("entropy stays above {target} up to β = {lo}"),
            });
        }
        match eval(b) {
            Ok((p, h)) if (h - target).abs() <= tol => {
                return Ok(Solution { params: p, entropy: h, evaluations });
            }
            Ok((_, h)) if h < target => break b,
            Ok(_) => {
                lo = b;
                step *= 2.0;
            }
            Err(e) => {
                step /= 2.0;
                if step < 1e-6 * lo {
                    return Err(Error::BracketFailure {
                        reason: format!("polygons cannot be built beyond β = {lo}: {e}"),
                    });
                }
            }
        }
    };
    for _ in 0..MAX_BISECTIONS {
        let mid = 0.5 * (lo + hi);
        let (p, h) = eval(mid).map_err(|e| Error::BracketFailure {
            reason: format!("polygon at β = {mid} failed: {e}"),
        })?;
        if (h - target).abs() <= tol {
            return Ok(Solution { params: p, entropy: h, evaluations });
        }
        if h > target {
            lo = mid;
        } else {
            hi = mid;
        }
        if hi - lo <= f64::EPSILON * hi {
            break;
        }
    }
    Err(Error::BracketFailure {
        reason: format!("no β in [{lo}, {hi}] reaches entropy {target} within {tol:e}"),
    })
}
