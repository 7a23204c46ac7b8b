//! Local quantization frame tied to the static-field direction, and the
//! rotation matrices between laboratory and local bases.
//!
//! For the quadrupole field the local basis depends only on the direction
//! of r, through the angles θ and φ:
//!
//! ```text
//! ê1 = (cosθ cosφ, cosθ sinφ, sinθ)
//! ê2 = (sinφ, −cosφ, 0)
//! ê3 = (sinθ cosφ, sinθ sinφ, −cosθ)      (parallel to B^S)
//! ```
//!
//! with cosθ = 2z/√(x²+y²+4z²) and cosφ = x/√(x²+y²). On the axis
//! x = y = 0 the polar angle φ is undefined; the convention φ := 0 (limit
//! along +x) is applied, which leaves every derived coupling unchanged.

use crate::error::{Error, Result};
use crate::field::{Position, RfFieldSpec};

/// Orthonormal local basis at a point, expressed in laboratory coordinates.
/// ê3 points along the local static field.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LocalFrame {
    pub theta_rad: f64,
    pub phi_rad: f64,
    pub e1: [f64; 3],
    pub e2: [f64; 3],
    pub e3: [f64; 3],
}

/// The rotation ℜ(θ,φ) taking (ê_x, ê_y, ê_z) to (ê1, ê2, ê3), and its
/// inverse (the transpose).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RotationMatrices {
    pub forward: [[f64; 3]; 3],
    pub inverse: [[f64; 3]; 3],
}

/// Wraps an angle to (−π, π].
pub fn wrap_angle(rad: f64) -> f64 {
    let two_pi = 2.0 * std::f64::consts::PI;
    let w = (rad + std::f64::consts::PI).rem_euclid(two_pi) - std::f64::consts::PI;
    if w == -std::f64::consts::PI {
        std::f64::consts::PI
    } else {
        w
    }
}

/// Builds the local frame at `r`. Fails at the trap centre, where the
/// static field (and the quantization axis) vanishes.
pub fn local_frame(r: Position) -> Result<LocalFrame> {
    let rho = r.rho_um();
    let denom = (rho * rho + 4.0 * r.z_um * r.z_um).sqrt();
    if denom == 0.0 {
        return Err(Error::DegenerateFrame);
    }
    let (cos_phi, sin_phi, phi) = if rho == 0.0 {
        (1.0, 0.0, 0.0)
    } else {
        (r.x_um / rho, r.y_um / rho, r.y_um.atan2(r.x_um))
    };
    let cos_theta = 2.0 * r.z_um / denom;
    let sin_theta = rho / denom;
    let theta = sin_theta.atan2(cos_theta);

    Ok(LocalFrame {
        theta_rad: theta,
        phi_rad: phi,
        e1: [cos_theta * cos_phi, cos_theta * sin_phi, sin_theta],
        e2: [sin_phi, -cos_phi, 0.0],
        e3: [sin_theta * cos_phi, sin_theta * sin_phi, -cos_theta],
    })
}

/// Rotation matrices for the given frame angles; columns of the forward
/// matrix are ê1, ê2, ê3 and the inverse is the transpose.
pub fn rotation_matrices(theta_rad: f64, phi_rad: f64) -> RotationMatrices {
    let (st, ct) = theta_rad.sin_cos();
    let (sp, cp) = phi_rad.sin_cos();
    let forward = [
        [ct * cp, sp, st * cp],
        [ct * sp, -cp, st * sp],
        [st, 0.0, -ct],
    ];
    let mut inverse = [[0.0; 3]; 3];
    for (i, row) in forward.iter().enumerate() {
        for (j, &v) in row.iter().enumerate() {
            inverse[j][i] = v;
        }
    }
    RotationMatrices { forward, inverse }
}

pub fn mat_vec(m: &[[f64; 3]; 3], v: [f64; 3]) -> [f64; 3] {
    [
        m[0][0] * v[0] + m[0][1] * v[1] + m[0][2] * v[2],
        m[1][0] * v[0] + m[1][1] * v[1] + m[1][2] * v[2],
        m[2][0] * v[0] + m[2][1] * v[1] + m[2][2] * v[2],
    ]
}

/// Instantaneous RF field in the local frame: the component triple
/// (B_⊥1(t), B_⊥2(t), B_∥(t)) = ℜ⁻¹(θ,φ)·B^RF(t), written out explicitly:
///
/// ```text
/// B_⊥1 = B_x cosθcosφ cos ωt + B_y cosθsinφ cos(ωt−α) + B_z sinθ cos(ωt−β)
/// B_⊥2 = B_x sinφ cos ωt − B_y cosφ cos(ωt−α)
/// B_∥  = B_x sinθcosφ cos ωt + B_y sinθsinφ cos(ωt−α) − B_z cosθ cos(ωt−β)
/// ```
pub fn rf_field_local(rf: &RfFieldSpec, frame: &LocalFrame, t_s: f64) -> [f64; 3] {
    let wt = rf.omega_rad_s * t_s;
    let beta = rf.beta_eff(t_s);
    let (st, ct) = frame.theta_rad.sin_cos();
    let (sp, cp) = frame.phi_rad.sin_cos();
    let cx = rf.amp_x_g * wt.cos();
    let cy = rf.amp_y_g * (wt - rf.alpha_rad).cos();
    let cz = rf.amp_z_g * (wt - beta).cos();
    [
        ct * cp * cx + ct * sp * cy + st * cz,
        sp * cx - cp * cy,
        st * cp * cx + st * sp * cy - ct * cz,
    ]
}
