use crate::scenario::{PotentialModel, TrapConfiguration};

/// Default central-difference step, micrometres.
pub const GRADIENT_STEP_UM: f64 = 1e-3;

/// In-plane gradient of V/ħ by central differences with the default step.
/// Components are rad/s per μm; NaN where a probe point fails.
pub fn gradient(
    config: &TrapConfiguration,
    model: PotentialModel,
    x_um: f64,
    y_um: f64,
    t_s: f64,
) -> (f64, f64) {
    gradient_with(config, model, x_um, y_um, t_s, GRADIENT_STEP_UM, false)
}

/// Gradient with an explicit step; `richardson` replaces each component
/// with the (4·g(h/2) − g(h))/3 extrapolation.
pub fn gradient_with(
    config: &TrapConfiguration,
    model: PotentialModel,
    x_um: f64,
    y_um: f64,
    t_s: f64,
    step_um: f64,
    richardson: bool,
) -> (f64, f64) {
    let central = |h: f64| -> (f64, f64) {
        let v = |x: f64, y: f64| {
            model.v_over_hbar(config, x, y, t_s).unwrap_or(f64::NAN)
        };
        (
            (v(x_um + h, y_um) - v(x_um - h, y_um)) / (2.0 * h),
            (v(x_um, y_um + h) - v(x_um, y_um - h)) / (2.0 * h),
        )
    };
    let g = central(step_um);
    if !richardson {
        return g;
    }
    let gh = central(step_um / 2.0);
    ((4.0 * gh.0 - g.0) / 3.0, (4.0 * gh.1 - g.1) / 3.0)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scenario::{make_scenario, rf_specs, ring_radius, ScenarioKind};
    use crate::{AtomSpecies, QuadrupoleField};
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;
    use std::f64::consts::PI;

    fn ring_config() -> TrapConfiguration {
        make_scenario(
            ScenarioKind::Ring,
            AtomSpecies::rb87(),
            QuadrupoleField::new(150.0).unwrap(),
            rf_specs::ring(0.7, 2.0 * PI * 1.5e6).unwrap(),
            10.0,
        )
        .unwrap()
    }

    #[test]
    fn radial_gradient_vanishes_at_ring_minimum() {
        let config = ring_config();
        let model = PotentialModel::ClosedForm(ScenarioKind::Ring);
        // frozen oracle: the radial minimum of the ring potential sits at
        // 142.0974 um, slightly outside the resonance radius
        let rho_min = 142.09738954899916;
        let (gx, _) = gradient(&config, model, rho_min, 0.0, 0.0);
        let scale = model.v_over_hbar(&config, rho_min, 0.0, 0.0).unwrap() / rho_min;
        assert!(gx.abs() < 1e-6 * scale, "gx = {gx}, scale = {scale}");
    }

    #[test]
    fn mirror_symmetry_kills_transverse_gradient() {
        let config = make_scenario(
            ScenarioKind::DoubleWell,
            AtomSpecies::rb87(),
            QuadrupoleField::new(150.0).unwrap(),
            rf_specs::double_well(0.7, 2.0 * PI * 1.5e6).unwrap(),
            10.0,
        )
        .unwrap();
        let model = PotentialModel::ClosedForm(ScenarioKind::DoubleWell);
        for y in [-120.0, -30.0, 55.0, 160.0] {
            let (gx, _) = gradient(&config, model, 0.0, y, 0.0);
            assert!(gx.abs() < 1e-4, "gx = {gx} at y = {y}");
        }
    }

    #[test]
    fn observed_convergence_order_is_two() {
        let config = ring_config();
        let model = PotentialModel::General;
        let mut rng = ChaCha8Rng::seed_from_u64(31);
        let mut orders = Vec::new();
        for _ in 0..100 {
            let rho = rng.random_range(30.0..180.0);
            let phi = rng.random_range(0.0..2.0 * PI);
            let (x, y) = (rho * phi.cos(), rho * phi.sin());
            let h = 0.1;
            let g = |hh: f64| gradient_with(&config, model, x, y, 0.0, hh, false).0;
            let d1 = g(2.0 * h) - g(h);
            let d2 = g(h) - g(h / 2.0);
            if d2.abs() > 1e-12 {
                orders.push((d1 / d2).abs().log2());
            }
        }
        assert!(orders.len() > 50);
        for o in orders {
            assert!((1.8..=2.2).contains(&o), "observed order {o}");
        }
    }

    #[test]
    fn richardson_agrees_with_central_difference() {
        let config = ring_config();
        let model = PotentialModel::General;
        let mut rng = ChaCha8Rng::seed_from_u64(77);
        let r = ring_radius(&config).unwrap();
        for _ in 0..100 {
            let rho = rng.random_range(0.3 * r..1.5 * r);
            let phi = rng.random_range(0.0..2.0 * PI);
            let (x, y) = (rho * phi.cos(), rho * phi.sin());
            let basic = gradient(&config, model, x, y, 0.0);
            let rich = gradient_with(&config, model, x, y, 0.0, GRADIENT_STEP_UM, true);
            let scale = basic.0.hypot(basic.1).max(1.0);
            assert!((rich.0 - basic.0).abs() / scale < 1e-6);
            assert!((rich.1 - basic.1).abs() / scale < 1e-6);
        }
    }
}
