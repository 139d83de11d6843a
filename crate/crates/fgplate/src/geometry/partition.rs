//! Polygon clipping and subcell triangulation for elements crossed by
//! cutout boundaries or cracks.
//!
//! Cut cells are subdivided by a small quadtree before the interface is
//! replaced by chords; one chord per element is too coarse against curved
//! rims (the chord-arc lens is a few percent of the element at typical
//! hole curvature), while two or three levels bring the geometric error
//! below 1e-3. Cells that see more than one crossing per edge keep
//! subdividing until the topology is a single clean chord.

use super::Cutout;

pub type Point = [f64; 2];

/// One subcell triangle with its region flag.
#[derive(Debug, Clone, Copy)]
pub struct SubTri {
    pub pts: [Point; 3],
    pub material: bool,
}

impl SubTri {
    pub fn area(&self) -> f64 {
        triangle_area(&self.pts)
    }

    pub fn centroid(&self) -> Point {
        [
            (self.pts[0][0] + self.pts[1][0] + self.pts[2][0]) / 3.0,
            (self.pts[0][1] + self.pts[1][1] + self.pts[2][1]) / 3.0,
        ]
    }
}

/// A connected piece of an element, material or void.
#[derive(Debug, Clone)]
pub struct Region {
    pub pts: Vec<Point>,
    pub material: bool,
}

pub fn triangle_area(t: &[Point; 3]) -> f64 {
    0.5 * ((t[1][0] - t[0][0]) * (t[2][1] - t[0][1])
        - (t[2][0] - t[0][0]) * (t[1][1] - t[0][1]))
        .abs()
}

pub fn polygon_area(p: &[Point]) -> f64 {
    let n = p.len();
    if n < 3 {
        return 0.0;
    }
    let mut s = 0.0;
    for i in 0..n {
        let j = (i + 1) % n;
        s += p[i][0] * p[j][1] - p[j][0] * p[i][1];
    }
    0.5 * s.abs()
}

fn rect_poly(r: [f64; 4]) -> Vec<Point> {
    vec![[r[0], r[1]], [r[2], r[1]], [r[2], r[3]], [r[0], r[3]]]
}

/// Parameters in (0,1) where f changes sign along the segment, located by
/// sampling followed by bisection.
pub fn edge_crossings(p0: Point, p1: Point, f: &dyn Fn(Point) -> f64) -> Vec<f64> {
    const SAMPLES: usize = 8;
    let at = |t: f64| -> Point {
        [
            p0[0] + t * (p1[0] - p0[0]),
            p0[1] + t * (p1[1] - p0[1]),
        ]
    };
    let mut out = Vec::new();
    let mut prev_t = 0.0;
    let mut prev_f = f(p0);
    for i in 1..=SAMPLES {
        let t = i as f64 / SAMPLES as f64;
        let ft = f(at(t));
        if prev_f * ft < 0.0 {
            let (mut lo, mut hi) = (prev_t, t);
            let mut flo = prev_f;
            for _ in 0..60 {
                let mid = 0.5 * (lo + hi);
                let fm = f(at(mid));
                if flo * fm <= 0.0 {
                    hi = mid;
                } else {
                    lo = mid;
                    flo = fm;
                }
            }
            out.push(0.5 * (lo + hi));
        }
        prev_t = t;
        prev_f = ft;
    }
    out
}

/// Split a convex polygon by a smooth sign function with at most one
/// crossing per edge. Returns the f >= 0 side and the f <= 0 side; vertices
/// on the zero set belong to both.
pub fn split_convex(poly: &[Point], f: &dyn Fn(Point) -> f64) -> (Vec<Point>, Vec<Point>) {
    let n = poly.len();
    let mut pos = Vec::new();
    let mut neg = Vec::new();
    let vals: Vec<f64> = poly.iter().map(|&p| f(p)).collect();
    for i in 0..n {
        let j = (i + 1) % n;
        if vals[i] >= 0.0 {
            pos.push(poly[i]);
        }
        if vals[i] <= 0.0 {
            neg.push(poly[i]);
        }
        if vals[i] * vals[j] < 0.0 {
            let ts = edge_crossings(poly[i], poly[j], f);
            let t = ts.first().copied().unwrap_or(vals[i] / (vals[i] - vals[j]));
            let c = [
                poly[i][0] + t * (poly[j][0] - poly[i][0]),
                poly[i][1] + t * (poly[j][1] - poly[i][1]),
            ];
            pos.push(c);
            neg.push(c);
        }
    }
    (pos, neg)
}

/// Fan triangulation of a convex polygon; slivers below `min_area` dropped.
pub fn fan_triangles(poly: &[Point], min_area: f64) -> Vec<[Point; 3]> {
    let mut out = Vec::new();
    for i in 1..poly.len().saturating_sub(1) {
        let t = [poly[0], poly[i], poly[i + 1]];
        if triangle_area(&t) > min_area {
            out.push(t);
        }
    }
    out
}

/// How a cell stands relative to one cutout.
enum CellCut {
    Outside,
    Inside,
    /// Boundary passes through; true when the crossing pattern is a single
    /// clean chord (exactly two crossings, at most one per edge).
    Crossed { clean: bool },
}

fn cell_vs_cutout(rect: [f64; 4], c: &Cutout) -> CellCut {
    let poly = rect_poly(rect);
    let f = |p: Point| c.level_set(p);
    let mut n_cross = 0;
    let mut clean = true;
    for i in 0..4 {
        let cr = edge_crossings(poly[i], poly[(i + 1) % 4], &f).len();
        n_cross += cr;
        if cr > 1 {
            clean = false;
        }
    }
    if n_cross == 0 {
        // No edge crossing; decide by the center (corners may sit exactly on
        // the zero set at tangency).
        let center = [(rect[0] + rect[2]) / 2.0, (rect[1] + rect[3]) / 2.0];
        if f(center) < 0.0 {
            return CellCut::Inside;
        }
        return CellCut::Outside;
    }
    CellCut::Crossed {
        clean: clean && n_cross == 2,
    }
}

/// Depth at which a cut cell is first allowed to be chord-clipped: the
/// chord-arc lens shrinks by 8x per level.
const MIN_CUT_DEPTH: u32 = 3;
/// Hard cap on subdivision.
const MAX_CUT_DEPTH: u32 = 7;

/// Partition a rectangle against a set of cutouts into material and void
/// regions (convex polygons).
pub fn clip_rect_by_cutouts(rect: [f64; 4], cutouts: &[Cutout]) -> Vec<Region> {
    let mut out = Vec::new();
    clip_cell(rect, cutouts, 0, &mut out);
    out
}

fn clip_cell(rect: [f64; 4], cutouts: &[Cutout], depth: u32, out: &mut Vec<Region>) {
    let mut crossing: Vec<(usize, bool)> = Vec::new();
    for (i, c) in cutouts.iter().enumerate() {
        match cell_vs_cutout(rect, c) {
            CellCut::Inside => {
                out.push(Region {
                    pts: rect_poly(rect),
                    material: false,
                });
                return;
            }
            CellCut::Outside => {}
            CellCut::Crossed { clean } => crossing.push((i, clean)),
        }
    }
    if crossing.is_empty() {
        out.push(Region {
            pts: rect_poly(rect),
            material: true,
        });
        return;
    }
    let single_clean = crossing.len() == 1 && crossing[0].1;
    if depth >= MAX_CUT_DEPTH || (single_clean && depth >= MIN_CUT_DEPTH) {
        let c = &cutouts[crossing[0].0];
        let f = |p: Point| c.level_set(p);
        let (mat, void) = split_convex(&rect_poly(rect), &f);
        let min_area = 1e-14 * (rect[2] - rect[0]) * (rect[3] - rect[1]);
        if polygon_area(&mat) > min_area {
            out.push(Region {
                pts: mat,
                material: true,
            });
        }
        if polygon_area(&void) > min_area {
            out.push(Region {
                pts: void,
                material: false,
            });
        }
        return;
    }
    let mx = 0.5 * (rect[0] + rect[2]);
    let my = 0.5 * (rect[1] + rect[3]);
    for sub in [
        [rect[0], rect[1], mx, my],
        [mx, rect[1], rect[2], my],
        [rect[0], my, mx, rect[3]],
        [mx, my, rect[2], rect[3]],
    ] {
        clip_cell(sub, cutouts, depth + 1, out);
    }
}

/// Split every material region by a straight line (signed function `f`),
/// keeping both sides as material. Void regions pass through.
pub fn split_material_by_line(regions: Vec<Region>, f: &dyn Fn(Point) -> f64) -> Vec<Region> {
    let mut out = Vec::new();
    for r in regions {
        if !r.material {
            out.push(r);
            continue;
        }
        let vals: Vec<f64> = r.pts.iter().map(|&p| f(p)).collect();
        let has_pos = vals.iter().any(|&v| v > 0.0);
        let has_neg = vals.iter().any(|&v| v < 0.0);
        if has_pos && has_neg {
            let (pos, neg) = split_convex(&r.pts, f);
            for side in [pos, neg] {
                if polygon_area(&side) > 0.0 {
                    out.push(Region {
                        pts: side,
                        material: true,
                    });
                }
            }
        } else {
            out.push(r);
        }
    }
    out
}

/// Triangulate the region around a crack tip: every triangle of the fan has
/// the tip as a vertex and the crack segment (entry -> tip) as a fan edge,
/// so no triangle straddles the crack.
pub fn tip_fan(poly: &[Point], entry: Point, tip: Point, min_area: f64) -> Vec<[Point; 3]> {
    // Insert the entry point into the boundary loop.
    let n = poly.len();
    let mut best = (0usize, f64::INFINITY, 0.0f64);
    for i in 0..n {
        let j = (i + 1) % n;
        let (d2, t) = point_segment_dist2(entry, poly[i], poly[j]);
        if d2 < best.1 {
            best = (i, d2, t);
        }
    }
    let (edge, _, t) = best;
    let mut loop_pts = Vec::with_capacity(n + 2);
    loop_pts.push(entry);
    let mut idx = (edge + 1) % n;
    // Skip the edge endpoint if the entry coincides with it.
    for _ in 0..n {
        loop_pts.push(poly[idx]);
        idx = (idx + 1) % n;
    }
    // Close back at the entry (the slit makes it appear twice).
    loop_pts.push(entry);
    let _ = t;

    let mut out = Vec::new();
    for w in loop_pts.windows(2) {
        let tri = [tip, w[0], w[1]];
        if triangle_area(&tri) > min_area {
            out.push(tri);
        }
    }
    out
}

fn point_segment_dist2(p: Point, a: Point, b: Point) -> (f64, f64) {
    let ab = [b[0] - a[0], b[1] - a[1]];
    let ap = [p[0] - a[0], p[1] - a[1]];
    let len2 = ab[0] * ab[0] + ab[1] * ab[1];
    let t = if len2 > 0.0 {
        ((ap[0] * ab[0] + ap[1] * ab[1]) / len2).clamp(0.0, 1.0)
    } else {
        0.0
    };
    let d = [ap[0] - t * ab[0], ap[1] - t * ab[1]];
    (d[0] * d[0] + d[1] * d[1], t)
}

/// First intersection of segment (a -> b) with the polygon boundary,
/// ordered by the segment parameter from `a`.
pub fn segment_polygon_entry(a: Point, b: Point, poly: &[Point]) -> Option<Point> {
    let n = poly.len();
    let mut best: Option<(f64, Point)> = None;
    for i in 0..n {
        let j = (i + 1) % n;
        if let Some((t, p)) = segment_intersection(a, b, poly[i], poly[j]) {
            if best.map_or(true, |(bt, _)| t < bt) {
                best = Some((t, p));
            }
        }
    }
    best.map(|(_, p)| p)
}

/// Intersection of segments (a0->a1) and (b0->b1); returns the parameter on
/// the first segment and the point.
fn segment_intersection(a0: Point, a1: Point, b0: Point, b1: Point) -> Option<(f64, Point)> {
    let r = [a1[0] - a0[0], a1[1] - a0[1]];
    let s = [b1[0] - b0[0], b1[1] - b0[1]];
    let denom = r[0] * s[1] - r[1] * s[0];
    if denom.abs() < 1e-300 {
        return None;
    }
    let qp = [b0[0] - a0[0], b0[1] - a0[1]];
    let t = (qp[0] * s[1] - qp[1] * s[0]) / denom;
    let u = (qp[0] * r[1] - qp[1] * r[0]) / denom;
    let eps = 1e-12;
    if (-eps..=1.0 + eps).contains(&t) && (-eps..=1.0 + eps).contains(&u) {
        Some((t, [a0[0] + t * r[0], a0[1] + t * r[1]]))
    } else {
        None
    }
}

/// Does segment (a -> b) intersect the axis-aligned rectangle?
pub fn segment_intersects_rect(a: Point, b: Point, rect: [f64; 4]) -> bool {
    // Liang-Barsky clip.
    let (mut t0, mut t1) = (0.0f64, 1.0f64);
    let d = [b[0] - a[0], b[1] - a[1]];
    for (p, q) in [
        (-d[0], a[0] - rect[0]),
        (d[0], rect[2] - a[0]),
        (-d[1], a[1] - rect[1]),
        (d[1], rect[3] - a[1]),
    ] {
        if p == 0.0 {
            if q < 0.0 {
                return false;
            }
        } else {
            let r = q / p;
            if p < 0.0 {
                t0 = t0.max(r);
            } else {
                t1 = t1.min(r);
            }
        }
    }
    t0 <= t1
}

pub fn point_in_rect(p: Point, rect: [f64; 4]) -> bool {
    p[0] > rect[0] && p[0] < rect[2] && p[1] > rect[1] && p[1] < rect[3]
}
