//! Constituent properties, Mori-Tanaka homogenization and the steady-state
//! through-thickness temperature profile.
//!
//! The plate grades from metal at the bottom face (z = -h/2) to ceramic at
//! the top face (z = +h/2) with ceramic volume fraction
//! `Vc(z) = ((2z + h) / 2h)^k`. Constituent Young's modulus and thermal
//! expansion follow the cubic-in-T law `P0 (Pm1/T + 1 + P1 T + P2 T^2 + P3 T^3)`;
//! density and conductivity are temperature independent.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Coefficients of the temperature law P0 (Pm1/T + 1 + P1 T + P2 T^2 + P3 T^3).
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PropertyCoeffs {
    pub p0: f64,
    #[serde(default)]
    pub pm1: f64,
    #[serde(default)]
    pub p1: f64,
    #[serde(default)]
    pub p2: f64,
    #[serde(default)]
    pub p3: f64,
}

impl PropertyCoeffs {
    pub fn constant(p0: f64) -> Self {
        PropertyCoeffs {
            p0,
            pm1: 0.0,
            p1: 0.0,
            p2: 0.0,
            p3: 0.0,
        }
    }
}

/// One phase of the two-phase composite.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ConstituentSpec {
    /// Young's modulus coefficients (Pa vs K).
    pub e_coeffs: PropertyCoeffs,
    /// Thermal expansion coefficients (1/K vs K).
    pub alpha_coeffs: PropertyCoeffs,
    /// Mass density (kg/m^3), temperature independent.
    pub rho: f64,
    /// Thermal conductivity (W/mK), temperature independent.
    pub kappa: f64,
    /// Poisson ratio.
    pub nu: f64,
}

impl ConstituentSpec {
    pub fn validate(&self) -> Result<()> {
        if self.e_coeffs.p0 <= 0.0 || self.alpha_coeffs.p0 <= 0.0 {
            return Err(Error::domain("constituent P0 must be positive"));
        }
        if self.rho <= 0.0 {
            return Err(Error::domain("constituent density must be positive"));
        }
        if self.kappa <= 0.0 {
            return Err(Error::domain("constituent conductivity must be positive"));
        }
        if !(0.0 < self.nu && self.nu < 0.5) {
            return Err(Error::domain("constituent Poisson ratio must be in (0, 0.5)"));
        }
        Ok(())
    }

    /// Young's modulus at temperature T.
    pub fn young(&self, t: f64) -> Result<f64> {
        constituent_property_at(&self.e_coeffs, t)
    }

    /// Thermal expansion coefficient at temperature T.
    pub fn alpha(&self, t: f64) -> Result<f64> {
        constituent_property_at(&self.alpha_coeffs, t)
    }
}

/// Two-phase graded material: ceramic on top, metal on bottom.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MaterialSystem {
    pub ceramic: ConstituentSpec,
    pub metal: ConstituentSpec,
    /// Volume fraction exponent (gradient index), k >= 0.
    pub k: f64,
    /// When set, this Poisson ratio is used everywhere in place of the
    /// homogenized one (and for the constituent bulk/shear split).
    pub nu_fixed: Option<f64>,
}

/// Through-thickness thermal boundary conditions.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ThermalBc {
    /// Ceramic-face temperature (z = +h/2), K.
    pub tc: f64,
    /// Metal-face temperature (z = -h/2), K.
    pub tm: f64,
    /// Stress-free reference temperature, K.
    pub t0: f64,
}

impl ThermalBc {
    pub const fn uniform(t: f64) -> Self {
        ThermalBc { tc: t, tm: t, t0: t }
    }

    pub fn validate(&self) -> Result<()> {
        if self.tc <= 0.0 || self.tm <= 0.0 || self.t0 <= 0.0 {
            return Err(Error::domain("temperatures must be positive (K)"));
        }
        Ok(())
    }
}

/// Homogenized material state at one thickness station.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PointProperties {
    pub e: f64,
    pub nu: f64,
    pub rho: f64,
    pub alpha: f64,
    pub kappa: f64,
    pub t: f64,
}

/// Evaluate the cubic temperature law.
pub fn constituent_property_at(coeffs: &PropertyCoeffs, t: f64) -> Result<f64> {
    if t <= 0.0 {
        return Err(Error::domain(format!("temperature must be positive, got {t}")));
    }
    Ok(coeffs.p0
        * (coeffs.pm1 / t + 1.0 + coeffs.p1 * t + coeffs.p2 * t * t + coeffs.p3 * t * t * t))
}

/// Ceramic volume fraction at thickness coordinate z in [-h/2, h/2].
pub fn volume_fraction_ceramic(z: f64, h: f64, k: f64) -> Result<f64> {
    let tol = 1e-12 * h;
    if z < -h / 2.0 - tol || z > h / 2.0 + tol {
        return Err(Error::domain(format!("z = {z} outside thickness [-{0}, {0}]", h / 2.0)));
    }
    if k == 0.0 {
        return Ok(1.0);
    }
    let u = ((2.0 * z + h) / (2.0 * h)).clamp(0.0, 1.0);
    Ok(u.powf(k))
}

/// Mori-Tanaka effective bulk and shear moduli of the two-phase mix.
pub fn mori_tanaka_bulk_shear(
    kc: f64,
    gc: f64,
    km: f64,
    gm: f64,
    vc: f64,
) -> Result<(f64, f64)> {
    if kc <= 0.0 || gc <= 0.0 || km <= 0.0 || gm <= 0.0 {
        return Err(Error::domain("moduli must be positive"));
    }
    if !(-1e-12..=1.0 + 1e-12).contains(&vc) {
        return Err(Error::domain(format!("volume fraction {vc} outside [0, 1]")));
    }
    let vc = vc.clamp(0.0, 1.0);
    let k = km + (kc - km) * vc / (1.0 + (1.0 - vc) * 3.0 * (kc - km) / (3.0 * km + 4.0 * gm));
    let f1 = gm * (9.0 * km + 8.0 * gm) / (6.0 * (km + 2.0 * gm));
    let g = gm + (gc - gm) * vc / (1.0 + (1.0 - vc) * (gc - gm) / (gm + f1));
    Ok((k, g))
}

/// Isotropic (E, nu) from bulk and shear moduli.
pub fn effective_young_poisson(k: f64, g: f64) -> Result<(f64, f64)> {
    if k <= 0.0 || g <= 0.0 {
        return Err(Error::domain("moduli must be positive"));
    }
    let e = 9.0 * k * g / (3.0 * k + g);
    let nu = (3.0 * k - 2.0 * g) / (2.0 * (3.0 * k + g));
    Ok((e, nu))
}

/// Bulk and shear moduli of an isotropic (E, nu) solid.
pub fn bulk_shear_from_young(e: f64, nu: f64) -> (f64, f64) {
    let k = e / (3.0 * (1.0 - 2.0 * nu));
    let g = e / (2.0 * (1.0 + nu));
    (k, g)
}

/// Rule-of-mixtures density.
pub fn effective_density(rho_c: f64, rho_m: f64, vc: f64) -> f64 {
    rho_c * vc + rho_m * (1.0 - vc)
}

/// Effective conductivity and thermal expansion.
///
/// Conductivity follows the Mori-Tanaka-type relation
/// `(kappa - kappa_m)/(kappa_c - kappa_m) = Vc / (1 + Vm (kappa_c - kappa_m)/(3 kappa_m))`;
/// expansion interpolates in 1/K between the phases. When the phase bulk
/// moduli coincide the expansion relation degenerates and the continuous
/// rule-of-mixtures limit is returned.
pub fn effective_kappa_alpha(
    kappa_c: f64,
    kappa_m: f64,
    alpha_c: f64,
    alpha_m: f64,
    kc: f64,
    km: f64,
    k_eff: f64,
    vc: f64,
) -> Result<(f64, f64)> {
    if !(-1e-12..=1.0 + 1e-12).contains(&vc) {
        return Err(Error::domain(format!("volume fraction {vc} outside [0, 1]")));
    }
    let vc = vc.clamp(0.0, 1.0);
    let kappa_cm = kappa_c - kappa_m;
    let kappa = if kappa_cm == 0.0 {
        kappa_m
    } else {
        kappa_m + kappa_cm * vc / (1.0 + (1.0 - vc) * kappa_cm / (3.0 * kappa_m))
    };
    let inv_diff = 1.0 / kc - 1.0 / km;
    let alpha = if inv_diff.abs() < 1e-14 / km {
        alpha_m + (alpha_c - alpha_m) * vc
    } else {
        alpha_m + (alpha_c - alpha_m) * (1.0 / k_eff - 1.0 / km) / inv_diff
    };
    Ok((kappa, alpha))
}

/// Number of terms kept in the heat-conduction series (powers of
/// kappa_cm / kappa_m up to the fifth).
const HEAT_SERIES_TERMS: usize = 6;

/// Steady-state temperature at thickness coordinate z.
///
/// Solution of d/dz (kappa(z) dT/dz) = 0 with T(-h/2) = Tm, T(h/2) = Tc,
/// expanded as a truncated power series in kappa_cm / kappa_m.
pub fn temperature_profile(
    z: f64,
    h: f64,
    k: f64,
    kappa_c: f64,
    kappa_m: f64,
    bc: &ThermalBc,
) -> Result<f64> {
    let tol = 1e-12 * h;
    if z < -h / 2.0 - tol || z > h / 2.0 + tol {
        return Err(Error::domain(format!("z = {z} outside thickness")));
    }
    let u = ((2.0 * z + h) / (2.0 * h)).clamp(0.0, 1.0);
    let ratio = (kappa_c - kappa_m) / kappa_m;
    let mut eta = 0.0;
    let mut c = 0.0;
    let mut sign = 1.0;
    let mut pow = 1.0;
    for j in 0..HEAT_SERIES_TERMS {
        let expo = j as f64 * k + 1.0;
        eta += sign * pow / expo * u.powf(expo);
        c += sign * pow / expo;
        sign = -sign;
        pow *= ratio;
    }
    Ok(bc.tm + (bc.tc - bc.tm) * eta / c)
}

impl MaterialSystem {
    pub fn validate(&self) -> Result<()> {
        self.ceramic.validate()?;
        self.metal.validate()?;
        if self.k < 0.0 {
            return Err(Error::domain("gradient index k must be >= 0"));
        }
        if let Some(nu) = self.nu_fixed {
            if !(0.0 < nu && nu < 0.5) {
                return Err(Error::domain("nu_fixed must be in (0, 0.5)"));
            }
        }
        Ok(())
    }

    /// Poisson ratio used for a constituent when splitting E into (K, G).
    fn constituent_nu(&self, phase: &ConstituentSpec) -> f64 {
        self.nu_fixed.unwrap_or(phase.nu)
    }

    /// Temperature at z for this system's conductivities.
    pub fn temperature_at(&self, z: f64, h: f64, bc: &ThermalBc) -> Result<f64> {
        temperature_profile(z, h, self.k, self.ceramic.kappa, self.metal.kappa, bc)
    }

    /// Full homogenized state at thickness station z.
    pub fn graded_point_properties(&self, z: f64, h: f64, bc: &ThermalBc) -> Result<PointProperties> {
        let t = self.temperature_at(z, h, bc)?;
        let vc = volume_fraction_ceramic(z, h, self.k)?;

        let ec = self.ceramic.young(t)?;
        let em = self.metal.young(t)?;
        let alpha_c = self.ceramic.alpha(t)?;
        let alpha_m = self.metal.alpha(t)?;

        let (kc, gc) = bulk_shear_from_young(ec, self.constituent_nu(&self.ceramic));
        let (km, gm) = bulk_shear_from_young(em, self.constituent_nu(&self.metal));
        let (k_eff, g_eff) = mori_tanaka_bulk_shear(kc, gc, km, gm, vc)?;
        let (e, nu_eff) = effective_young_poisson(k_eff, g_eff)?;
        let nu = self.nu_fixed.unwrap_or(nu_eff);

        let rho = effective_density(self.ceramic.rho, self.metal.rho, vc);
        let (kappa, alpha) = effective_kappa_alpha(
            self.ceramic.kappa,
            self.metal.kappa,
            alpha_c,
            alpha_m,
            kc,
            km,
            k_eff,
            vc,
        )?;

        Ok(PointProperties {
            e,
            nu,
            rho,
            alpha,
            kappa,
            t,
        })
    }

    /// Silicon nitride / stainless steel pair with the cubic temperature
    /// coefficients commonly used for this composite, Poisson ratio fixed
    /// at 0.28.
    pub fn si3n4_sus304(k: f64) -> Self {
        MaterialSystem {
            ceramic: ConstituentSpec {
                e_coeffs: PropertyCoeffs {
                    p0: 348.43e9,
                    pm1: 0.0,
                    p1: -3.070e-4,
                    p2: 2.160e-7,
                    p3: -8.946e-11,
                },
                alpha_coeffs: PropertyCoeffs {
                    p0: 5.8723e-6,
                    pm1: 0.0,
                    p1: 9.095e-4,
                    p2: 0.0,
                    p3: 0.0,
                },
                rho: 2370.0,
                kappa: 9.19,
                nu: 0.28,
            },
            metal: ConstituentSpec {
                e_coeffs: PropertyCoeffs {
                    p0: 201.04e9,
                    pm1: 0.0,
                    p1: 3.079e-4,
                    p2: -6.534e-7,
                    p3: 0.0,
                },
                alpha_coeffs: PropertyCoeffs {
                    p0: 12.330e-6,
                    pm1: 0.0,
                    p1: 8.086e-4,
                    p2: 0.0,
                    p3: 0.0,
                },
                rho: 8166.0,
                kappa: 12.04,
                nu: 0.28,
            },
            k,
            nu_fixed: Some(0.28),
        }
    }

    /// Temperature-independent isotropic pair (both phases identical), used
    /// for homogeneous benchmark plates. Frequencies normalized by the same
    /// properties are independent of the actual values chosen here.
    pub fn isotropic_benchmark() -> Self {
        let phase = ConstituentSpec {
            e_coeffs: PropertyCoeffs::constant(70.0e9),
            alpha_coeffs: PropertyCoeffs::constant(23.0e-6),
            rho: 2707.0,
            kappa: 204.0,
            nu: 0.3,
        };
        MaterialSystem {
            ceramic: phase,
            metal: phase,
            k: 0.0,
            nu_fixed: None,
        }
    }

    /// Look up a built-in named system.
    pub fn builtin(name: &str, k: f64) -> Option<Self> {
        match name {
            "Si3N4/SUS304" => Some(Self::si3n4_sus304(k)),
            "isotropic" => {
                let mut sys = Self::isotropic_benchmark();
                sys.k = k;
                Some(sys)
            }
            _ => None,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::{assert_abs_diff_eq, assert_relative_eq};

    fn si3n4_sus304() -> MaterialSystem {
        MaterialSystem::si3n4_sus304(1.0)
    }

    #[test]
    fn cubic_law_si3n4_at_300k() {
        // Direct polynomial evaluation: 348.43e9 * (1 - 3.070e-4*300
        // + 2.160e-7*300^2 - 8.946e-11*300^3).
        let sys = si3n4_sus304();
        let expected = 348.43e9
            * (1.0 - 3.070e-4 * 300.0 + 2.160e-7 * 300.0_f64.powi(2)
                - 8.946e-11 * 300.0_f64.powi(3));
        let e = sys.ceramic.young(300.0).unwrap();
        assert_relative_eq!(e, expected, max_relative = 1e-14);
        assert_relative_eq!(e, 322.27e9, max_relative = 1e-4);
    }

    #[test]
    fn cubic_law_sus304_at_300k() {
        let sys = si3n4_sus304();
        let expected =
            201.04e9 * (1.0 + 3.079e-4 * 300.0 - 6.534e-7 * 300.0_f64.powi(2));
        let e = sys.metal.young(300.0).unwrap();
        assert_relative_eq!(e, expected, max_relative = 1e-14);
        assert_relative_eq!(e, 207.79e9, max_relative = 1e-4);
    }

    #[test]
    fn cubic_law_constant_coeffs() {
        let coeffs = PropertyCoeffs::constant(42.0);
        for t in [1.0, 300.0, 1200.0] {
            assert_eq!(constituent_property_at(&coeffs, t).unwrap(), 42.0);
        }
    }

    #[test]
    fn cubic_law_rejects_nonpositive_temperature() {
        let coeffs = PropertyCoeffs::constant(1.0);
        assert!(constituent_property_at(&coeffs, 0.0).is_err());
        assert!(constituent_property_at(&coeffs, -5.0).is_err());
    }

    #[test]
    fn volume_fraction_faces_and_midplane() {
        let h = 0.1;
        for k in [0.5, 1.0, 2.0, 7.3] {
            assert_eq!(volume_fraction_ceramic(h / 2.0, h, k).unwrap(), 1.0);
            assert_eq!(volume_fraction_ceramic(-h / 2.0, h, k).unwrap(), 0.0);
        }
        assert_abs_diff_eq!(
            volume_fraction_ceramic(0.0, h, 2.0).unwrap(),
            0.25,
            epsilon = 1e-15
        );
        assert!(volume_fraction_ceramic(h, h, 1.0).is_err());
    }

    #[test]
    fn mori_tanaka_pure_phases() {
        let (k, g) = mori_tanaka_bulk_shear(2.0, 3.0, 5.0, 7.0, 0.0).unwrap();
        assert_eq!((k, g), (5.0, 7.0));
        let (k, g) = mori_tanaka_bulk_shear(2.0, 3.0, 5.0, 7.0, 1.0).unwrap();
        assert_relative_eq!(k, 2.0, max_relative = 1e-14);
        assert_relative_eq!(g, 3.0, max_relative = 1e-14);
        assert!(mori_tanaka_bulk_shear(2.0, 3.0, 5.0, 7.0, 1.5).is_err());
    }

    #[test]
    fn mori_tanaka_hand_evaluation() {
        // Km = Gm = 1, Kc = Gc = 2, Vc = 1/2:
        //   K = 1 + 0.5 / (1 + 0.5 * 3/7)        = 1 + 3.5/8.5
        //   f1 = 17/18,  G = 1 + 0.5 / (1 + 0.5 * 18/35) = 1 + 17.5/44
        let (k, g) = mori_tanaka_bulk_shear(2.0, 2.0, 1.0, 1.0, 0.5).unwrap();
        assert_relative_eq!(k, 1.0 + 3.5 / 8.5, max_relative = 1e-14);
        assert_relative_eq!(g, 1.0 + 17.5 / 44.0, max_relative = 1e-14);
        assert_relative_eq!(k, 1.41176, max_relative = 1e-5);
    }

    #[test]
    fn young_poisson_identities() {
        // K = G gives E = 2.25 K, nu = 1/8.
        let (e, nu) = effective_young_poisson(4.0, 4.0).unwrap();
        assert_relative_eq!(e, 9.0, max_relative = 1e-14);
        assert_relative_eq!(nu, 0.125, max_relative = 1e-14);
        // K = 2, G = 1 gives E = 18/7, nu = 2/7.
        let (e, nu) = effective_young_poisson(2.0, 1.0).unwrap();
        assert_relative_eq!(e, 18.0 / 7.0, max_relative = 1e-14);
        assert_relative_eq!(nu, 2.0 / 7.0, max_relative = 1e-14);
        // Round trip through the inverse identities.
        let (k, g) = bulk_shear_from_young(200e9, 0.3);
        let (e, nu) = effective_young_poisson(k, g).unwrap();
        assert_relative_eq!(e, 200e9, max_relative = 1e-14);
        assert_relative_eq!(nu, 0.3, max_relative = 1e-14);
    }

    #[test]
    fn density_rule_of_mixtures() {
        assert_eq!(effective_density(2370.0, 8166.0, 1.0), 2370.0);
        assert_eq!(effective_density(2370.0, 8166.0, 0.0), 8166.0);
        assert_relative_eq!(
            effective_density(2370.0, 8166.0, 0.5),
            5268.0,
            max_relative = 1e-14
        );
    }

    #[test]
    fn kappa_alpha_pure_phases_and_hand_value() {
        let (kappa, alpha) =
            effective_kappa_alpha(9.19, 12.04, 5.0e-6, 12.0e-6, 2.0e11, 1.0e11, 1.0e11, 0.0)
                .unwrap();
        assert_eq!(kappa, 12.04);
        assert_eq!(alpha, 12.0e-6);
        let (kappa, alpha) =
            effective_kappa_alpha(9.19, 12.04, 5.0e-6, 12.0e-6, 2.0e11, 1.0e11, 2.0e11, 1.0)
                .unwrap();
        assert_relative_eq!(kappa, 9.19, max_relative = 1e-14);
        assert_relative_eq!(alpha, 5.0e-6, max_relative = 1e-12);
        // Hand evaluation of the conductivity relation at Vc = 1/2:
        // kappa = 12.04 + (-2.85) * 0.5 / (1 + 0.5*(-2.85)/(3*12.04)).
        let expected = 12.04 + (-2.85) * 0.5 / (1.0 + 0.5 * (-2.85) / (3.0 * 12.04));
        let (kappa, _) =
            effective_kappa_alpha(9.19, 12.04, 5.0e-6, 12.0e-6, 2.0e11, 1.0e11, 1.5e11, 0.5)
                .unwrap();
        assert_relative_eq!(kappa, expected, max_relative = 1e-14);
    }

    #[test]
    fn kappa_alpha_equal_bulk_degeneracy() {
        // Kc = Km: expansion falls back to the rule of mixtures.
        let (_, alpha) =
            effective_kappa_alpha(9.0, 12.0, 5.0e-6, 12.0e-6, 1.0e11, 1.0e11, 1.0e11, 0.25)
                .unwrap();
        assert_relative_eq!(alpha, 12.0e-6 + (5.0e-6 - 12.0e-6) * 0.25, max_relative = 1e-12);
    }

    #[test]
    fn temperature_profile_boundary_conditions() {
        let bc = ThermalBc {
            tc: 600.0,
            tm: 300.0,
            t0: 300.0,
        };
        let h = 0.05;
        for k in [0.0, 0.5, 1.0, 2.0, 5.0, 10.0] {
            let tb = temperature_profile(-h / 2.0, h, k, 9.19, 12.04, &bc).unwrap();
            let tt = temperature_profile(h / 2.0, h, k, 9.19, 12.04, &bc).unwrap();
            assert_relative_eq!(tb, 300.0, max_relative = 1e-12);
            assert_relative_eq!(tt, 600.0, max_relative = 1e-12);
        }
    }

    #[test]
    fn temperature_profile_uniform_and_linear() {
        let h = 0.02;
        let bc = ThermalBc {
            tc: 450.0,
            tm: 450.0,
            t0: 300.0,
        };
        for i in 0..=20 {
            let z = -h / 2.0 + h * i as f64 / 20.0;
            let t = temperature_profile(z, h, 2.0, 9.19, 12.04, &bc).unwrap();
            assert_relative_eq!(t, 450.0, max_relative = 1e-14);
        }
        // Equal conductivities: every series term beyond the first vanishes.
        let bc = ThermalBc {
            tc: 500.0,
            tm: 300.0,
            t0: 300.0,
        };
        for i in 0..=20 {
            let z = -h / 2.0 + h * i as f64 / 20.0;
            let t = temperature_profile(z, h, 3.0, 10.0, 10.0, &bc).unwrap();
            let linear = 300.0 + 200.0 * (2.0 * z + h) / (2.0 * h);
            assert_relative_eq!(t, linear, max_relative = 1e-13);
        }
    }

    #[test]
    fn temperature_profile_monotone_between_faces() {
        let h = 0.1;
        let bc = ThermalBc {
            tc: 900.0,
            tm: 300.0,
            t0: 300.0,
        };
        for k in [0.5, 1.0, 2.0, 5.0, 10.0] {
            let mut prev = temperature_profile(-h / 2.0, h, k, 9.19, 12.04, &bc).unwrap();
            for i in 1..=1000 {
                let z = -h / 2.0 + h * i as f64 / 1000.0;
                let t = temperature_profile(z, h, k, 9.19, 12.04, &bc).unwrap();
                assert!(
                    t >= prev - 1e-9 * (bc.tc - bc.tm),
                    "profile not monotone at k={k}, z={z}: {t} < {prev}"
                );
                prev = t;
            }
            assert!((prev - 900.0).abs() < 1e-9 * 900.0);
        }
    }

    #[test]
    fn graded_properties_pure_ceramic_at_k0() {
        let mut sys = si3n4_sus304();
        sys.k = 0.0;
        let bc = ThermalBc::uniform(300.0);
        let h = 0.05;
        for i in 0..=10 {
            let z = -h / 2.0 + h * i as f64 / 10.0;
            let p = sys.graded_point_properties(z, h, &bc).unwrap();
            let ec = sys.ceramic.young(300.0).unwrap();
            assert_relative_eq!(p.e, ec, max_relative = 1e-12);
            assert_eq!(p.rho, 2370.0);
            assert_relative_eq!(p.kappa, 9.19, max_relative = 1e-12);
        }
    }

    #[test]
    fn graded_properties_metal_limit_large_k() {
        let mut sys = si3n4_sus304();
        sys.k = 1e6;
        let bc = ThermalBc::uniform(300.0);
        let h = 0.05;
        // Interior stations: Vc -> 0, so everything tends to the metal.
        for z in [-0.02, 0.0, 0.02] {
            let p = sys.graded_point_properties(z, h, &bc).unwrap();
            let em = sys.metal.young(300.0).unwrap();
            assert!((p.e - em).abs() / em < 1e-3);
            assert!((p.rho - 8166.0).abs() / 8166.0 < 1e-3);
        }
    }

    #[test]
    fn graded_properties_independent_chain_evaluation() {
        // Re-derive the full chain at z = 0, k = 1, uniform 300 K without
        // going through MaterialSystem, and compare.
        let sys = si3n4_sus304();
        let bc = ThermalBc::uniform(300.0);
        let h = 0.07;

        let t = 300.0;
        let vc = 0.5;
        let ec = 348.43e9
            * (1.0 - 3.070e-4 * t + 2.160e-7 * t * t - 8.946e-11 * t * t * t);
        let em = 201.04e9 * (1.0 + 3.079e-4 * t - 6.534e-7 * t * t);
        let nu = 0.28;
        let kc = ec / (3.0 * (1.0 - 2.0 * nu));
        let gc = ec / (2.0 * (1.0 + nu));
        let km = em / (3.0 * (1.0 - 2.0 * nu));
        let gm = em / (2.0 * (1.0 + nu));
        let k_eff =
            km + (kc - km) * vc / (1.0 + (1.0 - vc) * 3.0 * (kc - km) / (3.0 * km + 4.0 * gm));
        let f1 = gm * (9.0 * km + 8.0 * gm) / (6.0 * (km + 2.0 * gm));
        let g_eff = gm + (gc - gm) * vc / (1.0 + (1.0 - vc) * (gc - gm) / (gm + f1));
        let e_expect = 9.0 * k_eff * g_eff / (3.0 * k_eff + g_eff);

        let alpha_c = 5.8723e-6 * (1.0 + 9.095e-4 * t);
        let alpha_m = 12.330e-6 * (1.0 + 8.086e-4 * t);
        let alpha_expect = alpha_m
            + (alpha_c - alpha_m) * (1.0 / k_eff - 1.0 / km) / (1.0 / kc - 1.0 / km);

        let p = sys.graded_point_properties(0.0, h, &bc).unwrap();
        assert_relative_eq!(p.e, e_expect, max_relative = 1e-13);
        assert_relative_eq!(p.alpha, alpha_expect, max_relative = 1e-13);
        assert_relative_eq!(p.rho, 5268.0, max_relative = 1e-14);
        assert_eq!(p.nu, 0.28);
    }

    #[test]
    fn effective_young_monotone_and_bounded_in_vc() {
        let sys = si3n4_sus304();
        let t = 300.0;
        let ec = sys.ceramic.young(t).unwrap();
        let em = sys.metal.young(t).unwrap();
        let (kc, gc) = bulk_shear_from_young(ec, 0.28);
        let (km, gm) = bulk_shear_from_young(em, 0.28);
        let mut prev = None;
        for i in 0..=1000 {
            let vc = i as f64 / 1000.0;
            let (k, g) = mori_tanaka_bulk_shear(kc, gc, km, gm, vc).unwrap();
            let (e, _) = effective_young_poisson(k, g).unwrap();
            let (lo, hi) = (em.min(ec), em.max(ec));
            assert!(e >= lo - 1e-6 * lo && e <= hi + 1e-6 * hi);
            if let Some(p) = prev {
                assert!(e >= p - 1e-9 * hi, "E not monotone in Vc at {vc}");
            }
            prev = Some(e);
        }
    }

    #[test]
    fn homogenization_continuous_in_vc() {
        // Jump detection at Vc spacing 1e-6: a smooth function has second
        // differences of order (1e-6)^2 * f''; a branch discontinuity shows
        // up at its full height. Windows cover the interior and both
        // endpoint branches (pure ceramic / pure metal shortcuts).
        let sys = si3n4_sus304();
        let ec = sys.ceramic.young(300.0).unwrap();
        let em = sys.metal.young(300.0).unwrap();
        let (kc, gc) = bulk_shear_from_young(ec, 0.28);
        let (km, gm) = bulk_shear_from_young(em, 0.28);
        let alpha_c = sys.ceramic.alpha(300.0).unwrap();
        let alpha_m = sys.metal.alpha(300.0).unwrap();

        let eval = |vc: f64| {
            let (k, g) = mori_tanaka_bulk_shear(kc, gc, km, gm, vc).unwrap();
            let (kappa, alpha) = effective_kappa_alpha(
                sys.ceramic.kappa,
                sys.metal.kappa,
                alpha_c,
                alpha_m,
                kc,
                km,
                k,
                vc,
            )
            .unwrap();
            [k / km, g / gm, kappa / sys.metal.kappa, alpha / alpha_m]
        };

        let delta = 1e-6;
        for window in [0.0, 0.25, 0.5, 0.75, 1.0 - 202.0 * delta] {
            for i in 0..200 {
                let vc = window + i as f64 * delta;
                let a = eval(vc);
                let b = eval(vc + delta);
                let c = eval(vc + 2.0 * delta);
                for j in 0..4 {
                    let second = (c[j] - 2.0 * b[j] + a[j]).abs();
                    assert!(
                        second < 1e-9,
                        "jump detected in quantity {j} at Vc = {vc}: {second}"
                    );
                }
            }
        }
    }

    #[test]
    fn builtin_lookup() {
        assert!(MaterialSystem::builtin("Si3N4/SUS304", 2.0).is_some());
        assert!(MaterialSystem::builtin("isotropic", 0.0).is_some());
        assert!(MaterialSystem::builtin("unobtainium", 1.0).is_none());
    }
}
