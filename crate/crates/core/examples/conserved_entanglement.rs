use doublejc::invariants::invariant_e;
use doublejc::model::{embed, make_bell_psi, ModelParams};
use doublejc::propagator::evolve_closed_form;

fn main() -> Result<(), doublejc::Error> {
    let params = ModelParams::symmetric_resonant(1.0, 1.0)?;
    let initial = make_bell_psi(std::f64::consts::FRAC_PI_4, 0.0)?;
    let state = embed(&evolve_closed_form(&initial, &params, 1.3));
    assert!((invariant_e(&state) - 0.25).abs() < 1e-12);
    Ok(())
}
