use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::dynamics::{topological_entropy, BoundaryMap, MarkovData};
use crate::maskit::{build_polygon, FenchelNielsen6};
use crate::serial::fmt17;
use crate::Result;

use super::entropy_formula;

pub const SWEEP_HEADER: &str = "param,value,perimeter,entropy,h_top";

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SweepRow {
    pub param: String,
    pub value: f64,
    pub perimeter: f64,
    pub entropy: f64,
    pub h_top: f64,
}

/// `steps + 1` equally spaced values from `from` to `to`.
pub fn linspace(from: f64, to: f64, steps: usize) -> Vec<f64> {
    if steps == 0 {
        return vec![from];
    }
    (0..=steps)
        .map(|k| from + (to - from) * k as f64 / steps as f64)
        .collect()
}

/// Entropy, perimeter and `h_top` with one chart parameter varied from the
/// regular point. Values where the polygon cannot be built are skipped and
/// logged.
pub fn sweep(param: &str, values: &[f64]) -> Result<Vec<SweepRow>> {
    let base = FenchelNielsen6::regular();
    base.get(param)?;
    let rows: Vec<Option<SweepRow>> = values
        .par_iter()
        .map(|&value| {
            let row = || -> Result<SweepRow> {
                let poly = build_polygon(&base.with(param, value)?)?;
                let md = MarkovData::build(&BoundaryMap::new(&poly)?)?;
                Ok(SweepRow {
                    param: param.to_string(),
                    value,
                    perimeter: poly.perimeter(),
                    entropy: entropy_formula(&poly),
                    h_top: topological_entropy(&md)?,
                })
            };
            row().map_err(|e| log::warn!("skipping {param} = {value}: {e}")).ok()
        })
        .collect();
    Ok(rows.into_iter().flatten().collect())
}

pub fn sweep_csv(rows: &[SweepRow]) -> String {
    let mut out = format!("{SWEEP_HEADER}\n");
    for r in rows {
        out.push_str(&format!(
            "{},{},{},{},{}\n",
            r.param,
            fmt17(r.value),
            fmt17(r.perimeter),
            fmt17(r.entropy),
            fmt17(r.h_top)
        ));
    }
    out
}
