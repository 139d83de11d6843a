//! Through-thickness integration: plate constitutive matrices, thermal
//! resultants and inertia coefficients.
//!
//! All section quantities are integrals over [-h/2, h/2] of the reduced
//! stiffnesses, thermal strain terms and density, evaluated with a fixed
//! 20-point Gauss-Legendre rule. For gradient indices 0 < k < 1 the
//! integrand has an endpoint derivative singularity (Vc = u^k at the metal
//! face); the integral is then evaluated in a graded parametrization
//! z(t) = -h/2 + h t^m with m = ceil(1/k), which restores smoothness (and
//! makes the integrand polynomial whenever 1/k is an integer).

use nalgebra::{Matrix2, Matrix3, Vector3};

use crate::error::{Error, Result};
use crate::material::{MaterialSystem, ThermalBc};

/// Reduced plane-stress stiffness coefficients of an isotropic point.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ReducedStiffness {
    pub q11: f64,
    pub q12: f64,
    pub q22: f64,
    pub q44: f64,
    pub q55: f64,
    pub q66: f64,
}

/// Q11 = Q22 = E/(1-nu^2), Q12 = nu E/(1-nu^2), Q44 = Q55 = Q66 = E/(2(1+nu)).
pub fn reduced_stiffness(e: f64, nu: f64) -> ReducedStiffness {
    let c = e / (1.0 - nu * nu);
    let g = e / (2.0 * (1.0 + nu));
    ReducedStiffness {
        q11: c,
        q12: nu * c,
        q22: c,
        q44: g,
        q55: g,
        q66: g,
    }
}

/// Constant transverse shear correction factor.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ShearCorrection {
    pub factor: f64,
}

impl Default for ShearCorrection {
    fn default() -> Self {
        ShearCorrection { factor: 5.0 / 6.0 }
    }
}

impl ShearCorrection {
    pub fn new(factor: f64) -> Result<Self> {
        if !(factor > 0.0 && factor <= 1.0) {
            return Err(Error::domain(format!(
                "shear correction factor must be in (0, 1], got {factor}"
            )));
        }
        Ok(ShearCorrection { factor })
    }
}

/// Integrated plate section state. The temperature varies only through the
/// thickness, so one section serves the whole plate.
#[derive(Debug, Clone, PartialEq)]
pub struct SectionProperties {
    /// Extensional stiffness (N/m).
    pub a: Matrix3<f64>,
    /// Bending-extensional coupling (N).
    pub b: Matrix3<f64>,
    /// Bending stiffness (N m).
    pub d: Matrix3<f64>,
    /// Transverse shear stiffness (N/m), shear correction included.
    pub es: Matrix2<f64>,
    /// Thermal force resultants (N/m).
    pub nth: Vector3<f64>,
    /// Thermal moment resultants (N).
    pub mth: Vector3<f64>,
    /// Translational inertia (kg/m^2).
    pub p: f64,
    /// Rotary inertia (kg).
    pub i: f64,
}

impl SectionProperties {
    pub fn zeros() -> Self {
        SectionProperties {
            a: Matrix3::zeros(),
            b: Matrix3::zeros(),
            d: Matrix3::zeros(),
            es: Matrix2::zeros(),
            nth: Vector3::zeros(),
            mth: Vector3::zeros(),
            p: 0.0,
            i: 0.0,
        }
    }
}

const GAUSS_POINTS: usize = 20;

/// Nodes and weights of the n-point Gauss-Legendre rule on [-1, 1],
/// computed by Newton iteration on the Legendre polynomial.
pub fn gauss_legendre(n: usize) -> Vec<(f64, f64)> {
    let mut out = Vec::with_capacity(n);
    for i in 0..n {
        let mut x = (std::f64::consts::PI * (i as f64 + 0.75) / (n as f64 + 0.5)).cos();
        let mut dp = 0.0;
        for _ in 0..100 {
            let (p, d) = legendre(n, x);
            dp = d;
            let dx = p / d;
            x -= dx;
            if dx.abs() < 1e-15 {
                break;
            }
        }
        let w = 2.0 / ((1.0 - x * x) * dp * dp);
        out.push((-x, w));
    }
    out.sort_by(|a, b| a.0.partial_cmp(&b.0).unwrap());
    out
}

/// Legendre polynomial P_n and derivative at x.
fn legendre(n: usize, x: f64) -> (f64, f64) {
    let mut p0 = 1.0;
    let mut p1 = x;
    for j in 2..=n {
        let jf = j as f64;
        let p2 = ((2.0 * jf - 1.0) * x * p1 - (jf - 1.0) * p0) / jf;
        p0 = p1;
        p1 = p2;
    }
    let d = n as f64 * (x * p1 - p0) / (x * x - 1.0);
    (p1, d)
}

/// Thickness stations (z, weight) for the section integrals; weights carry
/// the Jacobian of the graded parametrization when one is used.
pub fn thickness_stations(h: f64, k: f64) -> Vec<(f64, f64)> {
    let gl = gauss_legendre(GAUSS_POINTS);
    if k > 0.0 && k < 1.0 {
        let m = (1.0 / k).ceil();
        gl.iter()
            .map(|&(x, w)| {
                let t = 0.5 * (x + 1.0);
                let z = -h / 2.0 + h * t.powf(m);
                let jac = h * m * t.powf(m - 1.0) * 0.5;
                (z, w * jac)
            })
            .collect()
    } else {
        gl.iter()
            .map(|&(x, w)| (0.5 * h * x, 0.5 * h * w))
            .collect()
    }
}

/// Integrate the section state for a material/thermal configuration.
pub fn integrate_section(
    sys: &MaterialSystem,
    h: f64,
    bc: &ThermalBc,
    sc: ShearCorrection,
) -> Result<SectionProperties> {
    if h <= 0.0 {
        return Err(Error::domain("thickness must be positive"));
    }
    sys.validate()?;
    bc.validate()?;

    let mut s = SectionProperties::zeros();
    for (z, w) in thickness_stations(h, sys.k) {
        let props = sys.graded_point_properties(z, h, bc)?;
        let q = reduced_stiffness(props.e, props.nu);
        let qm = Matrix3::new(q.q11, q.q12, 0.0, q.q12, q.q22, 0.0, 0.0, 0.0, q.q66);

        s.a += qm * w;
        s.b += qm * (z * w);
        s.d += qm * (z * z * w);
        s.es += Matrix2::new(q.q44, 0.0, 0.0, q.q55) * (sc.factor * w);

        let dt = props.t - bc.t0;
        let th = Vector3::new(
            (q.q11 + q.q12) * props.alpha * dt,
            (q.q12 + q.q22) * props.alpha * dt,
            0.0,
        );
        s.nth += th * w;
        s.mth += th * (z * w);

        s.p += props.rho * w;
        s.i += props.rho * z * z * w;
    }
    Ok(s)
}
