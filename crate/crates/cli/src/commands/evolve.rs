//! `evolve`: stream entanglement quantities along a trajectory, one row per
//! sample time.

use doublejc::entanglement::{pairwise_concurrences, wedge_entanglement};
use doublejc::invariants::invariant_e;
use doublejc::model::{embed, Bipartition};
use doublejc::propagator::evolve_closed_form;
use rayon::prelude::*;
use serde::Serialize;
use std::io::Write;

use crate::commands::Outcome;
use crate::config::{OutputGroup, RunConfig};
use crate::output::fmt_float;
use crate::Format;

pub const SCHEMA_CSV: &str = "# doublejc evolve schema v1";
pub const SCHEMA_JSON: &str = "doublejc.evolve.v1";

const E_COLUMNS: [&str; 7] = ["E_A", "E_B", "E_a", "E_b", "E_Aa", "E_Ab", "E_AB"];
const C_COLUMNS: [&str; 6] = ["C_AB", "C_Aa", "C_Bb", "C_ab", "C_Ab", "C_Ba"];
const INVARIANT_COLUMN: &str = "4E_AaBb";

struct Row {
    t: f64,
    omega_a_t: f64,
    entanglements: [f64; 7],
    concurrences: [f64; 6],
    four_e: f64,
}

fn columns(groups: &[OutputGroup]) -> Vec<&'static str> {
    let mut cols = vec!["t", "Omega_A_t"];
    for g in groups {
        match g {
            OutputGroup::Entanglements => cols.extend(E_COLUMNS),
            OutputGroup::Concurrences => cols.extend(C_COLUMNS),
            OutputGroup::Invariant => cols.push(INVARIANT_COLUMN),
        }
    }
    cols
}

fn row_values(row: &Row, groups: &[OutputGroup]) -> Vec<f64> {
    let mut vals = vec![row.t, row.omega_a_t];
    for g in groups {
        match g {
            OutputGroup::Entanglements => vals.extend(row.entanglements),
            OutputGroup::Concurrences => vals.extend(row.concurrences),
            OutputGroup::Invariant => vals.push(row.four_e),
        }
    }
    vals
}

#[derive(Serialize)]
struct JsonReport<'a> {
    schema: &'static str,
    columns: Vec<&'static str>,
    rows: &'a [Vec<f64>],
}

pub fn run(cfg: &RunConfig, format: Format, sink: &mut dyn Write) -> Result<Outcome, String> {
    let (coeffs, params) = cfg.resolve()?;
    let omega_a = params.sub_a.rabi();
    let groups = cfg.output_groups();
    let partitions = Bipartition::canonical();

    let rows: Vec<Row> = cfg
        .time_grid()
        .par_iter()
        .map(|&t| {
            let state = embed(&evolve_closed_form(&coeffs, &params, t));
            let mut entanglements = [0.0; 7];
            for (slot, part) in entanglements.iter_mut().zip(partitions.iter()) {
                *slot = wedge_entanglement(&state, *part);
            }
            let concurrences = pairwise_concurrences(&state).as_array();
            Row {
                t,
                omega_a_t: omega_a * t,
                entanglements,
                concurrences,
                four_e: 4.0 * invariant_e(&state),
            }
        })
        .collect();

    let values: Vec<Vec<f64>> = rows.iter().map(|r| row_values(r, &groups)).collect();
    match format {
        Format::Csv => {
            writeln!(sink, "{SCHEMA_CSV}").map_err(|e| e.to_string())?;
            writeln!(sink, "{}", columns(&groups).join(",")).map_err(|e| e.to_string())?;
            for vals in &values {
                let line: Vec<String> = vals.iter().map(|v| fmt_float(*v)).collect();
                writeln!(sink, "{}", line.join(",")).map_err(|e| e.to_string())?;
            }
        }
        Format::Json => {
            let report = JsonReport {
                schema: SCHEMA_JSON,
                columns: columns(&groups),
                rows: &values,
            };
            crate::output::write_json(sink, &report).map_err(|e| e.to_string())?;
        }
    }
    Ok(Outcome::Done)
}
