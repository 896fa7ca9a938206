//! `sudden-death`: sweep the mixing angle and tabulate where the atom-atom
//! entanglement of the phi family dies, on both clocks.

use doublejc::dissipation::{death_revival_scan, jc_to_dissipative_time, sudden_death_onset};
use doublejc::model::make_bell_phi;
use doublejc::ModelParams64;
use rayon::prelude::*;
use std::io::Write;

use crate::commands::Outcome;
use crate::config::RunConfig;
use crate::output::fmt_float;

pub const SCHEMA_CSV: &str = "# doublejc sudden-death schema v1";

pub struct SweepArgsResolved {
    pub alpha_min: f64,
    pub alpha_max: f64,
    pub n_alpha: usize,
}

fn is_resonant_identical(params: &ModelParams64) -> bool {
    let g_tol = 1e-12 * params.sub_a.g.max(params.sub_b.g).max(1.0);
    params.sub_a.delta().abs() <= 1e-12
        && params.sub_b.delta().abs() <= 1e-12
        && (params.sub_a.g - params.sub_b.g).abs() <= g_tol
}

fn first_death(alpha: f64, params: &ModelParams64, resonant: bool) -> Result<Option<f64>, String> {
    if resonant {
        // Closed form on the regime it covers.
        return sudden_death_onset(alpha, params.sub_a.rabi()).map_err(|e| e.to_string());
    }
    // Off the ideal regime: locate numerically on the first period of
    // subsystem A.
    let coeffs = make_bell_phi(alpha, 0.0).map_err(|e| e.to_string())?;
    let t_max = std::f64::consts::PI / params.sub_a.rabi();
    let report =
        death_revival_scan(&coeffs, params, t_max, 2001).map_err(|e| e.to_string())?;
    Ok(report.death_times.first().copied())
}

pub fn run(
    cfg: &RunConfig,
    sweep: &SweepArgsResolved,
    sink: &mut dyn Write,
) -> Result<Outcome, String> {
    if sweep.n_alpha < 1 {
        return Err("--n-alpha must be at least 1".into());
    }
    if !(0.0..=std::f64::consts::FRAC_PI_2).contains(&sweep.alpha_min)
        || !(0.0..=std::f64::consts::FRAC_PI_2).contains(&sweep.alpha_max)
        || sweep.alpha_min > sweep.alpha_max
    {
        return Err("alpha sweep must satisfy 0 <= alpha_min <= alpha_max <= pi/2".into());
    }

    let params = cfg.resolve_params()?;
    let resonant = is_resonant_identical(&params);
    if !resonant {
        eprintln!(
            "warning: parameters are not resonant with identical couplings; \
             death times located numerically"
        );
    }

    let alphas: Vec<f64> = if sweep.n_alpha == 1 {
        vec![sweep.alpha_min]
    } else {
        (0..sweep.n_alpha)
            .map(|k| {
                sweep.alpha_min
                    + (sweep.alpha_max - sweep.alpha_min) * k as f64 / (sweep.n_alpha - 1) as f64
            })
            .collect()
    };

    let omega_a = params.sub_a.rabi();
    let rows: Vec<Result<String, String>> = alphas
        .par_iter()
        .map(|&alpha| {
            let tau = first_death(alpha, &params, resonant)?;
            let tau_dissipative = match tau {
                Some(t) if omega_a * t < std::f64::consts::FRAC_PI_2 => {
                    Some(jc_to_dissipative_time(t, omega_a, 1.0).map_err(|e| e.to_string())?)
                }
                _ => None,
            };
            let cell = |v: Option<f64>| v.map(fmt_float).unwrap_or_default();
            Ok(format!(
                "{},{},{},{}",
                fmt_float(alpha),
                fmt_float(alpha.tan()),
                cell(tau),
                cell(tau_dissipative)
            ))
        })
        .collect();

    writeln!(sink, "{SCHEMA_CSV}").map_err(|e| e.to_string())?;
    writeln!(sink, "alpha,tan_alpha,tau_jc,tau_dissipative").map_err(|e| e.to_string())?;
    for row in rows {
        writeln!(sink, "{}", row?).map_err(|e| e.to_string())?;
    }
    Ok(Outcome::Done)
}
