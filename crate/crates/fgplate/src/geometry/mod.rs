//! Implicit representation of cutouts and cracks, enrichment
//! classification and subcell partitioning of cut elements.

pub mod partition;

use crate::error::{Error, Result};
use crate::mesh::Mesh;
use partition::{
    clip_rect_by_cutouts, point_in_rect, polygon_area, segment_intersects_rect,
    segment_polygon_entry, split_convex, split_material_by_line, tip_fan, Point, Region, SubTri,
};

/// A traction-free hole, represented by its level set: negative strictly
/// inside, zero on the boundary, positive outside.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Cutout {
    Circle {
        center: Point,
        radius: f64,
    },
    Ellipse {
        center: Point,
        /// Semi-major axis d.
        semi_major: f64,
        /// Semi-minor axis e.
        semi_minor: f64,
        /// Major-axis orientation from the x-axis, radians.
        theta: f64,
    },
}

impl Cutout {
    pub fn circle(center: Point, radius: f64) -> Self {
        Cutout::Circle { center, radius }
    }

    pub fn ellipse(center: Point, semi_major: f64, semi_minor: f64, theta: f64) -> Self {
        Cutout::Ellipse {
            center,
            semi_major,
            semi_minor,
            theta,
        }
    }

    pub fn validate(&self) -> Result<()> {
        match *self {
            Cutout::Circle { radius, .. } => {
                if radius <= 0.0 {
                    return Err(Error::domain("cutout radius must be positive"));
                }
            }
            Cutout::Ellipse {
                semi_major,
                semi_minor,
                ..
            } => {
                if !(semi_minor > 0.0 && semi_major >= semi_minor) {
                    return Err(Error::domain("ellipse axes must satisfy d >= e > 0"));
                }
            }
        }
        Ok(())
    }

    /// Signed level-set value at a point. The circle variant is a true
    /// signed distance; the ellipse variant is the dimensionless
    /// sqrt((x'/d)^2 + (y'/e)^2) - 1 in the rotated frame. Both share the
    /// sign convention.
    pub fn level_set(&self, p: Point) -> f64 {
        match *self {
            Cutout::Circle { center, radius } => {
                let dx = p[0] - center[0];
                let dy = p[1] - center[1];
                (dx * dx + dy * dy).sqrt() - radius
            }
            Cutout::Ellipse {
                center,
                semi_major,
                semi_minor,
                theta,
            } => {
                let dx = p[0] - center[0];
                let dy = p[1] - center[1];
                let (s, c) = theta.sin_cos();
                let xl = dx * c + dy * s;
                let yl = -dx * s + dy * c;
                let q = (xl / semi_major).powi(2) + (yl / semi_minor).powi(2);
                q.sqrt() - 1.0
            }
        }
    }

    /// Boundary point at parametric angle phi.
    pub fn rim_point(&self, phi: f64) -> Point {
        match *self {
            Cutout::Circle { center, radius } => {
                [center[0] + radius * phi.cos(), center[1] + radius * phi.sin()]
            }
            Cutout::Ellipse {
                center,
                semi_major,
                semi_minor,
                theta,
            } => {
                let (xl, yl) = (semi_major * phi.cos(), semi_minor * phi.sin());
                let (s, c) = theta.sin_cos();
                [
                    center[0] + xl * c - yl * s,
                    center[1] + xl * s + yl * c,
                ]
            }
        }
    }

    /// Axis-aligned bounding box.
    pub fn bbox(&self) -> [f64; 4] {
        match *self {
            Cutout::Circle { center, radius } => [
                center[0] - radius,
                center[1] - radius,
                center[0] + radius,
                center[1] + radius,
            ],
            Cutout::Ellipse {
                center,
                semi_major,
                semi_minor,
                theta,
            } => {
                let (s, c) = theta.sin_cos();
                let ex = ((semi_major * c).powi(2) + (semi_minor * s).powi(2)).sqrt();
                let ey = ((semi_major * s).powi(2) + (semi_minor * c).powi(2)).sqrt();
                [center[0] - ex, center[1] - ey, center[0] + ex, center[1] + ey]
            }
        }
    }
}

/// Circle level set as a free function.
pub fn circle_level_set(p: Point, center: Point, radius: f64) -> f64 {
    Cutout::circle(center, radius).level_set(p)
}

/// Ellipse level set as a free function.
pub fn ellipse_level_set(p: Point, center: Point, d: f64, e: f64, theta: f64) -> f64 {
    Cutout::ellipse(center, d, e, theta).level_set(p)
}

/// A crack polyline: first point is the mouth, last point is the free tip.
#[derive(Debug, Clone, PartialEq)]
pub struct Crack {
    pub points: Vec<Point>,
    /// True when the mouth opens into a void (cutout rim) or the domain
    /// boundary; the displacement jump then extends through the mouth.
    pub mouth_open: bool,
}

impl Crack {
    pub fn segment(mouth: Point, tip: Point, mouth_open: bool) -> Self {
        Crack {
            points: vec![mouth, tip],
            mouth_open,
        }
    }

    pub fn validate(&self) -> Result<()> {
        if self.points.len() < 2 {
            return Err(Error::domain("crack needs at least two points"));
        }
        for w in self.points.windows(2) {
            let d = ((w[1][0] - w[0][0]).powi(2) + (w[1][1] - w[0][1]).powi(2)).sqrt();
            if d <= 0.0 {
                return Err(Error::domain("degenerate crack segment"));
            }
        }
        Ok(())
    }

    pub fn mouth(&self) -> Point {
        self.points[0]
    }

    pub fn tip(&self) -> Point {
        *self.points.last().unwrap()
    }

    /// Unit tangent (e1, along the last segment toward the tip) and normal
    /// (e2, 90 degrees counter-clockwise) of the tip frame.
    pub fn tip_frame(&self) -> (Point, Point) {
        let n = self.points.len();
        let a = self.points[n - 2];
        let b = self.points[n - 1];
        let len = ((b[0] - a[0]).powi(2) + (b[1] - a[1]).powi(2)).sqrt();
        let e1 = [(b[0] - a[0]) / len, (b[1] - a[1]) / len];
        let e2 = [-e1[1], e1[0]];
        (e1, e2)
    }

    pub fn segments(&self) -> impl Iterator<Item = (Point, Point)> + '_ {
        self.points.windows(2).map(|w| (w[0], w[1]))
    }

    /// Signed distance to the polyline: magnitude is the distance to the
    /// nearest segment, sign is the side of that segment (points exactly on
    /// the line resolve to +).
    pub fn signed_distance(&self, p: Point) -> f64 {
        let mut best_d2 = f64::INFINITY;
        let mut best_cross = 0.0;
        for (a, b) in self.segments() {
            let ab = [b[0] - a[0], b[1] - a[1]];
            let ap = [p[0] - a[0], p[1] - a[1]];
            let len2 = ab[0] * ab[0] + ab[1] * ab[1];
            let t = ((ap[0] * ab[0] + ap[1] * ab[1]) / len2).clamp(0.0, 1.0);
            let d = [ap[0] - t * ab[0], ap[1] - t * ab[1]];
            let d2 = d[0] * d[0] + d[1] * d[1];
            if d2 < best_d2 {
                best_d2 = d2;
                best_cross = ab[0] * ap[1] - ab[1] * ap[0];
            }
        }
        let dist = best_d2.sqrt();
        if best_cross < 0.0 {
            -dist
        } else {
            dist
        }
    }

    /// Side of the crack: +1 or -1 (on-line points resolve to +1).
    pub fn side(&self, p: Point) -> f64 {
        if self.signed_distance(p) < 0.0 {
            -1.0
        } else {
            1.0
        }
    }

    /// Polar coordinates (r, theta) in the tip frame plus the side flag.
    pub fn local_coords(&self, p: Point) -> (f64, f64, f64) {
        let tip = self.tip();
        let (e1, e2) = self.tip_frame();
        let d = [p[0] - tip[0], p[1] - tip[1]];
        let x1 = d[0] * e1[0] + d[1] * e1[1];
        let x2 = d[0] * e2[0] + d[1] * e2[1];
        let r = (x1 * x1 + x2 * x2).sqrt();
        let theta = x2.atan2(x1);
        (r, theta, self.side(p))
    }
}

/// crack_local_coordinates as a free function matching the operation name.
pub fn crack_local_coordinates(p: Point, crack: &Crack) -> (f64, f64, f64) {
    crack.local_coords(p)
}

/// Heaviside enrichment kernel: 1 on the positive side, 0 on the negative.
/// Applied in shifted form N_J(x) (H(x) - H(x_J)).
pub fn heaviside(side: f64) -> f64 {
    if side < 0.0 {
        0.0
    } else {
        1.0
    }
}

/// The four near-tip branch functions
/// sqrt(r) {sin(t/2), cos(t/2), sin(t) sin(t/2), sin(t) cos(t/2)}.
pub fn branch_functions(r: f64, theta: f64) -> [f64; 4] {
    let sr = r.sqrt();
    let (s2, c2) = (theta / 2.0).sin_cos();
    let st = theta.sin();
    [sr * s2, sr * c2, sr * st * s2, sr * st * c2]
}

/// Gradients of the branch functions in the tip frame (d/dx1, d/dx2).
/// Derived from f = sqrt(r) g(theta):
///   f,1 = (cos(t) g/2 - sin(t) g') / sqrt(r)
///   f,2 = (sin(t) g/2 + cos(t) g') / sqrt(r)
pub fn branch_gradients_local(r: f64, theta: f64) -> [[f64; 2]; 4] {
    if r < 1e-300 {
        return [[0.0; 2]; 4];
    }
    let inv_sr = 1.0 / r.sqrt();
    let (st, ct) = theta.sin_cos();
    let (s2, c2) = (theta / 2.0).sin_cos();
    let g = [s2, c2, st * s2, st * c2];
    let gp = [
        c2 / 2.0,
        -s2 / 2.0,
        ct * s2 + st * c2 / 2.0,
        ct * c2 - st * s2 / 2.0,
    ];
    let mut out = [[0.0; 2]; 4];
    for a in 0..4 {
        out[a][0] = (ct * g[a] / 2.0 - st * gp[a]) * inv_sr;
        out[a][1] = (st * g[a] / 2.0 + ct * gp[a]) * inv_sr;
    }
    out
}

/// The discontinuities of one case.
#[derive(Debug, Clone, Default)]
pub struct DiscontinuitySet {
    pub cutouts: Vec<Cutout>,
    pub cracks: Vec<Crack>,
}

impl DiscontinuitySet {
    pub fn is_empty(&self) -> bool {
        self.cutouts.is_empty() && self.cracks.is_empty()
    }
}

/// Integration category of an element.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ElementCategory {
    NonEnriched,
    /// Contains a crack tip.
    Tip,
    /// Has tip-enriched nodes but no discontinuity inside.
    TipBlending,
    /// Bisected by a crack.
    Split,
    /// Has Heaviside-enriched nodes but no discontinuity inside.
    SplitBlending,
    /// Bisected by a crack and carrying tip-enriched nodes.
    SplitTipBlending,
    /// Entirely inside a cutout; skipped.
    Void,
    /// Crossed by a cutout boundary; integrated over the material side.
    CutByVoid,
}

impl ElementCategory {
    pub fn name(&self) -> &'static str {
        match self {
            ElementCategory::NonEnriched => "non-enriched",
            ElementCategory::Tip => "tip",
            ElementCategory::TipBlending => "tip-blending",
            ElementCategory::Split => "split",
            ElementCategory::SplitBlending => "split-blending",
            ElementCategory::SplitTipBlending => "split-tip-blending",
            ElementCategory::Void => "void",
            ElementCategory::CutByVoid => "cut-by-void",
        }
    }
}

/// Enrichment roles of one node.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct NodeRoles {
    pub void_eliminated: bool,
    /// Crack ids whose jump this node's Heaviside block captures.
    pub heaviside: Vec<usize>,
    /// Crack ids whose tip fields this node's branch block captures.
    pub tip: Vec<usize>,
}

impl NodeRoles {
    pub fn is_enriched(&self) -> bool {
        !self.heaviside.is_empty() || !self.tip.is_empty()
    }
}

/// Discontinuity bookkeeping for one element.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct ElementDiscInfo {
    /// Cutouts whose boundary crosses this element.
    pub cut_by: Vec<usize>,
    /// Cracks bisecting this element.
    pub split_by: Vec<usize>,
    /// Cracks whose tip lies in this element.
    pub tip_of: Vec<usize>,
}

/// Node classification, element categories and the resolved (tip-perturbed)
/// discontinuity set for one mesh.
#[derive(Debug, Clone)]
pub struct EnrichmentPlan {
    pub categories: Vec<ElementCategory>,
    pub node_roles: Vec<NodeRoles>,
    pub element_info: Vec<ElementDiscInfo>,
    pub discs: DiscontinuitySet,
    pub warnings: Vec<String>,
}

impl EnrichmentPlan {
    /// Cracks whose enrichment functions are needed when integrating the
    /// element (any node carries a role for them, or the element itself is
    /// split / holds the tip).
    pub fn element_cracks(&self, mesh: &Mesh, e: usize) -> Vec<usize> {
        let mut ids: Vec<usize> = Vec::new();
        for &n in &mesh.elements[e] {
            for &c in &self.node_roles[n].heaviside {
                if !ids.contains(&c) {
                    ids.push(c);
                }
            }
            for &c in &self.node_roles[n].tip {
                if !ids.contains(&c) {
                    ids.push(c);
                }
            }
        }
        ids.sort_unstable();
        ids
    }
}

/// Both-side material area fractions needed to call a support "fully cut".
const SPLIT_AREA_FRACTION: f64 = 1e-6;
const SUPPORT_AREA_FRACTION: f64 = 1e-4;

/// Classify nodes and elements against the discontinuity set.
pub fn classify(mesh: &Mesh, discs: &DiscontinuitySet) -> Result<EnrichmentPlan> {
    for c in &discs.cutouts {
        c.validate()?;
        let bb = c.bbox();
        if bb[0] < 0.0 || bb[1] < 0.0 || bb[2] > mesh.a || bb[3] > mesh.b {
            return Err(Error::domain("cutout extends outside the plate domain"));
        }
    }
    let mut warnings = Vec::new();
    let mut cracks = Vec::with_capacity(discs.cracks.len());
    for (i, crack) in discs.cracks.iter().enumerate() {
        crack.validate()?;
        let mut crack = crack.clone();
        let tip = crack.tip();
        if !(0.0..=mesh.a).contains(&tip[0]) || !(0.0..=mesh.b).contains(&tip[1]) {
            return Err(Error::domain(format!("crack {i} tip outside the plate domain")));
        }
        let size = mesh.element_size();
        let snap = 1e-10 * size;
        let nudge = 1e-8 * size;
        let dx = mesh.a / mesh.nx as f64;
        let dy = mesh.b / mesh.ny as f64;
        let mut moved = false;
        let mut new_tip = tip;
        if (tip[0] / dx - (tip[0] / dx).round()).abs() * dx < snap {
            new_tip[0] += nudge;
            moved = true;
        }
        if (tip[1] / dy - (tip[1] / dy).round()).abs() * dy < snap {
            new_tip[1] += nudge;
            moved = true;
        }
        if moved {
            warnings.push(format!(
                "crack {i} tip on a mesh line; perturbed by 1e-8 element size"
            ));
            *crack.points.last_mut().unwrap() = new_tip;
        }
        cracks.push(crack);
    }
    let discs = DiscontinuitySet {
        cutouts: discs.cutouts.clone(),
        cracks,
    };

    let n_elem = mesh.n_elements();
    let mut element_info = vec![ElementDiscInfo::default(); n_elem];
    let mut is_void = vec![false; n_elem];

    // Cutout classification per element (cheap bbox prefilter first).
    for e in 0..n_elem {
        let rect = mesh.element_rect(e);
        let mut near: Vec<usize> = Vec::new();
        for (ci, c) in discs.cutouts.iter().enumerate() {
            let bb = c.bbox();
            if rect[2] < bb[0] || rect[0] > bb[2] || rect[3] < bb[1] || rect[1] > bb[3] {
                continue;
            }
            near.push(ci);
        }
        if near.is_empty() {
            continue;
        }
        let sub = clip_rect_by_cutouts(
            rect,
            &near.iter().map(|&i| discs.cutouts[i]).collect::<Vec<_>>(),
        );
        let total: f64 = sub.iter().map(|r| polygon_area(&r.pts)).sum();
        let mat: f64 = sub
            .iter()
            .filter(|r| r.material)
            .map(|r| polygon_area(&r.pts))
            .sum();
        if mat <= 1e-12 * total {
            is_void[e] = true;
        } else if mat < (1.0 - 1e-12) * total {
            // Keep only the cutouts that actually cross this element.
            for &ci in &near {
                let c = &discs.cutouts[ci];
                let poly = [
                    [rect[0], rect[1]],
                    [rect[2], rect[1]],
                    [rect[2], rect[3]],
                    [rect[0], rect[3]],
                ];
                let vals: Vec<f64> = poly.iter().map(|&p| c.level_set(p)).collect();
                let crosses_corner = vals.iter().any(|&v| v < 0.0) && vals.iter().any(|&v| v > 0.0);
                let crosses_edge = (0..4).any(|i| {
                    !partition::edge_crossings(poly[i], poly[(i + 1) % 4], &|p| c.level_set(p))
                        .is_empty()
                });
                if crosses_corner || crosses_edge {
                    element_info[e].cut_by.push(ci);
                }
            }
        }
    }

    // Crack classification per element.
    for (ci, crack) in discs.cracks.iter().enumerate() {
        let tip = crack.tip();
        for e in 0..n_elem {
            if is_void[e] {
                continue;
            }
            let rect = mesh.element_rect(e);
            let intersects = crack
                .segments()
                .any(|(a, b)| segment_intersects_rect(a, b, rect));
            if !intersects {
                continue;
            }
            if point_in_rect(tip, rect) {
                element_info[e].tip_of.push(ci);
                continue;
            }
            // Bisection test: both sides of the crack line must hold real
            // material area.
            let (ap, an) = element_side_areas(mesh, e, &element_info[e], &discs, crack);
            let total = ap + an;
            if total > 0.0
                && ap.min(an) > SPLIT_AREA_FRACTION * total
            {
                element_info[e].split_by.push(ci);
            }
        }
    }

    // Node roles.
    let n_nodes = mesh.n_nodes();
    let mut node_roles = vec![NodeRoles::default(); n_nodes];
    for n in 0..n_nodes {
        let support = mesh.node_support(n);
        node_roles[n].void_eliminated = support.iter().all(|&e| is_void[e]);
    }
    for e in 0..n_elem {
        for &ci in &element_info[e].tip_of {
            for &n in &mesh.elements[e] {
                if !node_roles[n].tip.contains(&ci) {
                    node_roles[n].tip.push(ci);
                }
            }
        }
    }
    for (ci, crack) in discs.cracks.iter().enumerate() {
        // Candidate nodes: nodes of elements near the crack.
        let mut candidates: Vec<usize> = Vec::new();
        for e in 0..n_elem {
            if element_info[e].split_by.contains(&ci)
                || element_info[e].tip_of.contains(&ci)
                || crack
                    .segments()
                    .any(|(a, b)| segment_intersects_rect(a, b, mesh.element_rect(e)))
            {
                for &n in &mesh.elements[e] {
                    if !candidates.contains(&n) {
                        candidates.push(n);
                    }
                }
            }
        }
        for &n in &candidates {
            if node_roles[n].tip.contains(&ci) || node_roles[n].void_eliminated {
                continue;
            }
            if support_fully_cut(mesh, n, &element_info, &discs, crack, &is_void) {
                node_roles[n].heaviside.push(ci);
            }
        }
    }
    for r in node_roles.iter_mut() {
        r.heaviside.sort_unstable();
        r.tip.sort_unstable();
    }

    // Element categories.
    let mut categories = vec![ElementCategory::NonEnriched; n_elem];
    for e in 0..n_elem {
        let info = &element_info[e];
        let has_tip_node = mesh.elements[e]
            .iter()
            .any(|&n| !node_roles[n].tip.is_empty());
        let has_heavi_node = mesh.elements[e]
            .iter()
            .any(|&n| !node_roles[n].heaviside.is_empty());
        categories[e] = if is_void[e] {
            ElementCategory::Void
        } else if !info.tip_of.is_empty() {
            ElementCategory::Tip
        } else if !info.split_by.is_empty() {
            if has_tip_node {
                ElementCategory::SplitTipBlending
            } else {
                ElementCategory::Split
            }
        } else if !info.cut_by.is_empty() {
            ElementCategory::CutByVoid
        } else if has_tip_node {
            ElementCategory::TipBlending
        } else if has_heavi_node {
            ElementCategory::SplitBlending
        } else {
            ElementCategory::NonEnriched
        };
    }

    Ok(EnrichmentPlan {
        categories,
        node_roles,
        element_info,
        discs,
        warnings,
    })
}

/// Material areas of an element on each side of a crack's line.
fn element_side_areas(
    mesh: &Mesh,
    e: usize,
    info: &ElementDiscInfo,
    discs: &DiscontinuitySet,
    crack: &Crack,
) -> (f64, f64) {
    let rect = mesh.element_rect(e);
    let regions = material_regions(rect, info, discs);
    side_areas(&regions, crack)
}

fn material_regions(rect: [f64; 4], info: &ElementDiscInfo, discs: &DiscontinuitySet) -> Vec<Region> {
    if info.cut_by.is_empty() {
        vec![Region {
            pts: vec![
                [rect[0], rect[1]],
                [rect[2], rect[1]],
                [rect[2], rect[3]],
                [rect[0], rect[3]],
            ],
            material: true,
        }]
    } else {
        clip_rect_by_cutouts(
            rect,
            &info
                .cut_by
                .iter()
                .map(|&i| discs.cutouts[i])
                .collect::<Vec<_>>(),
        )
        .into_iter()
        .filter(|r| r.material)
        .collect()
    }
}

fn side_areas(regions: &[Region], crack: &Crack) -> (f64, f64) {
    let f = |p: Point| crack.signed_distance(p);
    let mut ap = 0.0;
    let mut an = 0.0;
    for r in regions {
        if !r.material {
            continue;
        }
        let vals: Vec<f64> = r.pts.iter().map(|&p| f(p)).collect();
        let has_pos = vals.iter().any(|&v| v > 0.0);
        let has_neg = vals.iter().any(|&v| v < 0.0);
        if has_pos && has_neg {
            let (pos, neg) = split_convex(&r.pts, &f);
            ap += polygon_area(&pos);
            an += polygon_area(&neg);
        } else if has_neg {
            an += polygon_area(&r.pts);
        } else {
            ap += polygon_area(&r.pts);
        }
    }
    (ap, an)
}

/// A node's support is fully cut when the crack traverses it completely:
/// the tip may not lie inside, the mouth may end inside only if it opens
/// into a void or boundary, and both sides of the crack must carry real
/// material area.
fn support_fully_cut(
    mesh: &Mesh,
    node: usize,
    element_info: &[ElementDiscInfo],
    discs: &DiscontinuitySet,
    crack: &Crack,
    is_void: &[bool],
) -> bool {
    let support = mesh.node_support(node);
    let mut sup_rect = [f64::INFINITY, f64::INFINITY, f64::NEG_INFINITY, f64::NEG_INFINITY];
    for &e in &support {
        let r = mesh.element_rect(e);
        sup_rect[0] = sup_rect[0].min(r[0]);
        sup_rect[1] = sup_rect[1].min(r[1]);
        sup_rect[2] = sup_rect[2].max(r[2]);
        sup_rect[3] = sup_rect[3].max(r[3]);
    }
    if point_in_rect(crack.tip(), sup_rect) {
        return false;
    }
    if point_in_rect(crack.mouth(), sup_rect) && !crack.mouth_open {
        return false;
    }
    if !crack
        .segments()
        .any(|(a, b)| segment_intersects_rect(a, b, sup_rect))
    {
        return false;
    }
    let mut ap = 0.0;
    let mut an = 0.0;
    for &e in &support {
        if is_void[e] {
            continue;
        }
        let (p, n) = element_side_areas(mesh, e, &element_info[e], discs, crack);
        ap += p;
        an += n;
    }
    let total = ap + an;
    total > 0.0 && ap.min(an) > SUPPORT_AREA_FRACTION * total
}

/// Partition a cut / split / tip element into subcell triangles flagged
/// material or void. Uncut elements come back as two material triangles.
pub fn partition_cut_element(mesh: &Mesh, e: usize, plan: &EnrichmentPlan) -> Vec<SubTri> {
    let rect = mesh.element_rect(e);
    let elem_area = (rect[2] - rect[0]) * (rect[3] - rect[1]);
    let min_area = 1e-12 * elem_area;
    let info = &plan.element_info[e];

    let mut regions = if info.cut_by.is_empty() {
        vec![Region {
            pts: vec![
                [rect[0], rect[1]],
                [rect[2], rect[1]],
                [rect[2], rect[3]],
                [rect[0], rect[3]],
            ],
            material: !matches!(plan.categories[e], ElementCategory::Void),
        }]
    } else {
        clip_rect_by_cutouts(
            rect,
            &info
                .cut_by
                .iter()
                .map(|&i| plan.discs.cutouts[i])
                .collect::<Vec<_>>(),
        )
    };

    for &ci in &info.split_by {
        let crack = &plan.discs.cracks[ci];
        let f = |p: Point| crack.signed_distance(p);
        regions = split_material_by_line(regions, &f);
    }

    let mut out: Vec<SubTri> = Vec::new();
    let tip_crack = info.tip_of.first().map(|&ci| &plan.discs.cracks[ci]);
    for r in &regions {
        let handled_by_fan = if let Some(crack) = tip_crack {
            r.material && convex_contains(&r.pts, crack.tip())
        } else {
            false
        };
        if handled_by_fan {
            let crack = tip_crack.unwrap();
            let tip = crack.tip();
            let n = crack.points.len();
            let last_seg = (crack.points[n - 2], crack.points[n - 1]);
            let entry = segment_polygon_entry(last_seg.0, last_seg.1, &r.pts)
                .or_else(|| segment_polygon_entry(crack.mouth(), tip, &r.pts));
            match entry {
                Some(entry) => {
                    for t in tip_fan(&r.pts, entry, tip, min_area) {
                        out.push(SubTri {
                            pts: t,
                            material: true,
                        });
                    }
                }
                None => {
                    // Crack does not reach this region's boundary; fall back
                    // to a plain fan (no slit).
                    for t in partition::fan_triangles(&r.pts, min_area) {
                        out.push(SubTri {
                            pts: t,
                            material: true,
                        });
                    }
                }
            }
        } else {
            for t in partition::fan_triangles(&r.pts, min_area) {
                out.push(SubTri {
                    pts: t,
                    material: r.material,
                });
            }
        }
    }
    out
}

fn convex_contains(poly: &[Point], p: Point) -> bool {
    let n = poly.len();
    if n < 3 {
        return false;
    }
    let mut sign = 0.0f64;
    for i in 0..n {
        let j = (i + 1) % n;
        let cross = (poly[j][0] - poly[i][0]) * (p[1] - poly[i][1])
            - (poly[j][1] - poly[i][1]) * (p[0] - poly[i][0]);
        if cross.abs() < 1e-300 {
            continue;
        }
        if sign == 0.0 {
            sign = cross.signum();
        } else if cross.signum() != sign {
            return false;
        }
    }
    true
}

/// Line-oriented dump of element categories and subcell triangles for
/// visual inspection.
pub fn write_debug_dump<W: std::io::Write>(
    w: &mut W,
    mesh: &Mesh,
    plan: &EnrichmentPlan,
) -> std::io::Result<()> {
    for e in 0..mesh.n_elements() {
        writeln!(w, "element {} category {}", e, plan.categories[e].name())?;
        if matches!(
            plan.categories[e],
            ElementCategory::Tip
                | ElementCategory::Split
                | ElementCategory::SplitTipBlending
                | ElementCategory::CutByVoid
                | ElementCategory::Void
        ) {
            for t in partition_cut_element(mesh, e, plan) {
                let flag = if t.material { "material" } else { "void" };
                writeln!(
                    w,
                    "tri {} {:.9e} {:.9e} {:.9e} {:.9e} {:.9e} {:.9e}",
                    flag,
                    t.pts[0][0],
                    t.pts[0][1],
                    t.pts[1][0],
                    t.pts[1][1],
                    t.pts[2][0],
                    t.pts[2][1]
                )?;
            }
        }
    }
    Ok(())
}
