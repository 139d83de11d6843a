//! Quadrature rules: tensor Gauss on the quad parent domain and symmetric
//! triangle rules for subcell integration.

use crate::geometry::ElementCategory;
use crate::section::gauss_legendre;

/// Rule on [-1,1]^2: (xi, eta, weight), weights sum to 4.
pub fn gauss_quad(n: usize) -> Vec<(f64, f64, f64)> {
    let gl = gauss_legendre(n);
    let mut out = Vec::with_capacity(n * n);
    for &(x, wx) in &gl {
        for &(y, wy) in &gl {
            out.push((x, y, wx * wy));
        }
    }
    out
}

/// Triangle rule in barycentric coordinates: (l1, l2, w) with l0 = 1-l1-l2;
/// weights sum to 1, so integral ~ area * sum w_i f_i.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TriRuleId {
    /// 3-point edge-midpoint rule, degree 2, positive.
    Midpoint3,
    /// Duffy-collapsed n x n Gauss (collapse at vertex 0), positive,
    /// degree 2n-2. Collapsed(2) is the 4-point rule.
    Collapsed(usize),
    /// 6-point symmetric rule, degree 4, positive.
    Dunavant6,
    /// 12-point symmetric rule, degree 6, positive.
    Dunavant12,
    /// 13-point symmetric rule, degree 7 (one negative centroid weight;
    /// the canonical near-tip rule).
    Dunavant13,
}

impl TriRuleId {
    pub fn n_points(&self) -> usize {
        match self {
            TriRuleId::Midpoint3 => 3,
            TriRuleId::Collapsed(n) => n * n,
            TriRuleId::Dunavant6 => 6,
            TriRuleId::Dunavant12 => 12,
            TriRuleId::Dunavant13 => 13,
        }
    }

    /// Exactly integrated polynomial degree.
    pub fn degree(&self) -> usize {
        match self {
            TriRuleId::Midpoint3 => 2,
            TriRuleId::Collapsed(n) => 2 * n - 2,
            TriRuleId::Dunavant6 => 4,
            TriRuleId::Dunavant12 => 6,
            TriRuleId::Dunavant13 => 7,
        }
    }

    pub fn points(&self) -> Vec<(f64, f64, f64)> {
        match self {
            TriRuleId::Midpoint3 => vec![
                (0.5, 0.0, 1.0 / 3.0),
                (0.5, 0.5, 1.0 / 3.0),
                (0.0, 0.5, 1.0 / 3.0),
            ],
            TriRuleId::Collapsed(n) => collapsed_rule(*n),
            TriRuleId::Dunavant6 => {
                let mut p = Vec::new();
                orbit3(&mut p, 0.445948490915965, 0.223381589678011);
                orbit3(&mut p, 0.091576213509771, 0.109951743655322);
                p
            }
            TriRuleId::Dunavant12 => {
                let mut p = Vec::new();
                orbit3(&mut p, 0.249286745170910, 0.116786275726379);
                orbit3(&mut p, 0.063089014491502, 0.050844906370207);
                orbit6(&mut p, 0.310352451033785, 0.636502499121399, 0.082851075618374);
                p
            }
            TriRuleId::Dunavant13 => {
                let mut p = vec![(1.0 / 3.0, 1.0 / 3.0, -0.149570044467670)];
                orbit3(&mut p, 0.260345966079038, 0.175615257433204);
                orbit3(&mut p, 0.065130102902216, 0.053347235608839);
                orbit6(&mut p, 0.312865496004875, 0.638444188569809, 0.077113760890257);
                p
            }
        }
    }
}

/// Orbit (a, a, 1-2a): three permutations.
fn orbit3(out: &mut Vec<(f64, f64, f64)>, a: f64, w: f64) {
    let b = 1.0 - 2.0 * a;
    out.push((a, a, w));
    out.push((b, a, w));
    out.push((a, b, w));
}

/// Orbit of (a, b, 1-a-b): six permutations.
fn orbit6(out: &mut Vec<(f64, f64, f64)>, a: f64, b: f64, w: f64) {
    let c = 1.0 - a - b;
    out.push((a, b, w));
    out.push((b, a, w));
    out.push((a, c, w));
    out.push((c, a, w));
    out.push((b, c, w));
    out.push((c, b, w));
}

/// Duffy-collapsed tensor Gauss: the (u, v) square maps to the triangle
/// with the collapse at barycentric vertex 0, clustering points there.
fn collapsed_rule(n: usize) -> Vec<(f64, f64, f64)> {
    let gl = gauss_legendre(n);
    let to01 = |x: f64, w: f64| (0.5 * (x + 1.0), 0.5 * w);
    let mut out = Vec::with_capacity(n * n);
    for &(xu, wu) in &gl {
        let (u, wu) = to01(xu, wu);
        for &(xv, wv) in &gl {
            let (v, wv) = to01(xv, wv);
            // lambda0 = 1-u (vertex 0), lambda1 = u(1-v), lambda2 = uv.
            out.push((u * (1.0 - v), u * v, 2.0 * u * wu * wv));
        }
    }
    out
}

/// Integration rules per element category (stiffness-type integrals),
/// following the classic enriched-element table: 2x2 for plain elements,
/// 13 per triangle at the tip, 4x4 in tip blending, 3 per triangle in split
/// elements, 2x2 in split blending, 4 per triangle in split-tip blending.
/// Cut-by-void elements integrate their material subcells like split ones.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct QuadratureSpec {
    pub non_enriched: usize,
    pub tip: TriRuleId,
    pub tip_blending: usize,
    pub split: TriRuleId,
    pub split_blending: usize,
    pub split_tip_blending: TriRuleId,
    pub cut_by_void: TriRuleId,
}

impl Default for QuadratureSpec {
    fn default() -> Self {
        QuadratureSpec {
            non_enriched: 2,
            tip: TriRuleId::Dunavant13,
            tip_blending: 4,
            split: TriRuleId::Midpoint3,
            split_blending: 2,
            split_tip_blending: TriRuleId::Collapsed(2),
            cut_by_void: TriRuleId::Midpoint3,
        }
    }
}

impl QuadratureSpec {
    /// Roughly doubled point counts for quadrature sufficiency checks.
    pub fn doubled(&self) -> QuadratureSpec {
        QuadratureSpec {
            non_enriched: self.non_enriched * 2,
            tip: TriRuleId::Collapsed(6),
            tip_blending: self.tip_blending * 2,
            split: TriRuleId::Dunavant6,
            split_blending: self.split_blending * 2,
            split_tip_blending: TriRuleId::Collapsed(3),
            cut_by_void: TriRuleId::Dunavant6,
        }
    }

    /// Parent-domain Gauss order for categories integrated on the full quad.
    pub fn quad_order(&self, cat: ElementCategory) -> Option<usize> {
        match cat {
            ElementCategory::NonEnriched => Some(self.non_enriched),
            ElementCategory::TipBlending => Some(self.tip_blending),
            ElementCategory::SplitBlending => Some(self.split_blending),
            _ => None,
        }
    }

    /// Subcell triangle rule for categories with internal interfaces.
    pub fn tri_rule(&self, cat: ElementCategory) -> Option<TriRuleId> {
        match cat {
            ElementCategory::Tip => Some(self.tip),
            ElementCategory::Split => Some(self.split),
            ElementCategory::SplitTipBlending => Some(self.split_tip_blending),
            ElementCategory::CutByVoid => Some(self.cut_by_void),
            _ => None,
        }
    }

    /// Mass integrals are Gram matrices, so positive weights guarantee a
    /// positive semidefinite result; triangle rules below degree 4 are also
    /// not exact for the bilinear-squared integrand. Substitute the cheapest
    /// positive rule of degree >= 4 where needed.
    pub fn mass_tri_rule(&self, cat: ElementCategory) -> Option<TriRuleId> {
        self.tri_rule(cat).map(|r| match r {
            TriRuleId::Midpoint3 | TriRuleId::Collapsed(2) => TriRuleId::Dunavant6,
            TriRuleId::Dunavant13 => TriRuleId::Dunavant12,
            other => other,
        })
    }
}
