//! Locus sampling, concentric-ellipse fitting, classification, and planar
//! topology (winding numbers, self-intersections, line crossings).
//!
//! One full revolution of P1 triple-covers every center locus; topology
//! counts that concern the locus as a point set (self-intersections, line
//! crossings) therefore run on a single cover, sampled over t in [-t*, t*).

use crate::billiard::BilliardShape;
use crate::centers::{CenterError, CenterSpec};
use crate::Point;
use std::fmt;

#[derive(Clone, Debug, PartialEq)]
pub enum LocusError {
    /// More than 1% of requested samples hit poles.
    TooManyPoles { dropped: usize, requested: usize },
    /// Fit impossible: point-like or axis-degenerate loci.
    DegenerateFit,
    /// Convex combination inputs sampled on different grids.
    GridMismatch,
    /// Winding refinement could not separate the curve from the base point.
    PassesThroughPoint { t: f64 },
    /// Too few samples for the requested operation.
    TooFewSamples { needed: usize, got: usize },
    Center(CenterError),
}

impl fmt::Display for LocusError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            LocusError::TooManyPoles { dropped, requested } => {
                write!(f, "too many poles: dropped {dropped} of {requested} samples")
            }
            LocusError::DegenerateFit => write!(f, "degenerate fit"),
            LocusError::GridMismatch => write!(f, "sample grids do not match"),
            LocusError::PassesThroughPoint { t } => {
                write!(f, "curve passes through the base point near t={t}")
            }
            LocusError::TooFewSamples { needed, got } => {
                write!(f, "need at least {needed} samples, got {got}")
            }
            LocusError::Center(e) => write!(f, "{e}"),
        }
    }
}

impl std::error::Error for LocusError {}

impl From<CenterError> for LocusError {
    fn from(e: CenterError) -> Self {
        LocusError::Center(e)
    }
}

/// Ordered samples of one center's locus over one shape.
#[derive(Clone, Debug)]
pub struct LocusSamples {
    pub center_id: String,
    pub a: f64,
    pub b: f64,
    pub requested: usize,
    /// (t, x, y), ordered by t.
    pub samples: Vec<(f64, f64, f64)>,
    /// t values where evaluation failed (poles).
    pub dropped: Vec<f64>,
}

impl LocusSamples {
    pub fn points(&self) -> impl Iterator<Item = Point> + '_ {
        self.samples.iter().map(|&(_, x, y)| Point::new(x, y))
    }

    pub fn len(&self) -> usize {
        self.samples.len()
    }

    pub fn is_empty(&self) -> bool {
        self.samples.is_empty()
    }
}

/// Sample a center's locus at t_k = 2 pi k / M, dropping poles.
pub fn sample_locus(
    shape: &BilliardShape,
    spec: &CenterSpec,
    m: usize,
) -> Result<LocusSamples, LocusError> {
    sample_locus_on(shape, spec, m, |k| 2.0 * std::f64::consts::PI * k as f64 / m as f64)
}

/// Sample one full cover of the locus: t in [-t*, t*), mid-step offsets so
/// the isosceles poles at t = 0 are avoided.
pub fn sample_locus_single_cover(
    shape: &BilliardShape,
    spec: &CenterSpec,
    m: usize,
) -> Result<LocusSamples, LocusError> {
    let (t_star, _) = shape.isosceles_params();
    sample_locus_on(shape, spec, m, |k| {
        -t_star + 2.0 * t_star * (k as f64 + 0.5) / m as f64
    })
}

fn sample_locus_on(
    shape: &BilliardShape,
    spec: &CenterSpec,
    m: usize,
    grid: impl Fn(usize) -> f64,
) -> Result<LocusSamples, LocusError> {
    if m < 8 {
        return Err(LocusError::TooFewSamples { needed: 8, got: m });
    }
    let mut samples = Vec::with_capacity(m);
    let mut dropped = Vec::new();
    for k in 0..m {
        let t = grid(k);
        match shape.orbit_at(t).map_err(|_| ()).and_then(|o| spec.position(&o).map_err(|_| ())) {
            Ok(p) => samples.push((t, p.x, p.y)),
            Err(()) => dropped.push(t),
        }
    }
    if dropped.len() * 100 > m {
        return Err(LocusError::TooManyPoles {
            dropped: dropped.len(),
            requested: m,
        });
    }
    Ok(LocusSamples {
        center_id: spec.id.clone(),
        a: shape.a(),
        b: shape.b(),
        requested: m,
        samples,
        dropped,
    })
}

/// Result of the concentric axis-aligned least-squares ellipse fit.
#[derive(Clone, Copy, Debug)]
pub struct EllipseFit {
    pub a_hat: f64,
    pub b_hat: f64,
    /// Sum of squared implicit residuals [(x/a)^2 + (y/b)^2 - 1]^2.
    pub err2: f64,
    pub m_used: usize,
}

impl EllipseFit {
    /// Fit error as reported in the golden tables: sqrt of the residual sum.
    pub fn fit_err(&self) -> f64 {
        self.err2.sqrt()
    }
}

/// Least squares for the implicit ellipse (x/a)^2 + (y/b)^2 = 1, solved in
/// closed form as a 2x2 linear system in (u, v) = (1/a^2, 1/b^2).
pub fn fit_concentric_ellipse(samples: &LocusSamples) -> Result<EllipseFit, LocusError> {
    let pts: Vec<Point> = samples.points().collect();
    if pts.len() < 3 {
        return Err(LocusError::TooFewSamples { needed: 3, got: pts.len() });
    }
    let (mut sx4, mut sy4, mut sx2y2, mut sx2, mut sy2) = (0.0, 0.0, 0.0, 0.0, 0.0);
    for p in &pts {
        let (x2, y2) = (p.x * p.x, p.y * p.y);
        sx4 += x2 * x2;
        sy4 += y2 * y2;
        sx2y2 += x2 * y2;
        sx2 += x2;
        sy2 += y2;
    }
    let det = sx4 * sy4 - sx2y2 * sx2y2;
    if !det.is_finite() || det <= 0.0 {
        return Err(LocusError::DegenerateFit);
    }
    let u = (sx2 * sy4 - sy2 * sx2y2) / det;
    let v = (sy2 * sx4 - sx2 * sx2y2) / det;
    if !(u > 0.0 && v > 0.0) {
        return Err(LocusError::DegenerateFit);
    }
    let err2 = pts
        .iter()
        .map(|p| {
            let r = p.x * p.x * u + p.y * p.y * v - 1.0;
            r * r
        })
        .sum();
    Ok(EllipseFit {
        a_hat: 1.0 / u.sqrt(),
        b_hat: 1.0 / v.sqrt(),
        err2,
        m_used: pts.len(),
    })
}

/// Classification outcome for a locus.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum LocusClass {
    Elliptic,
    NonElliptic,
    /// Point-like or otherwise unfittable locus.
    Degenerate,
}

impl fmt::Display for LocusClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            LocusClass::Elliptic => write!(f, "elliptic"),
            LocusClass::NonElliptic => write!(f, "non-elliptic"),
            LocusClass::Degenerate => write!(f, "degenerate"),
        }
    }
}

/// Default classification threshold on fit_err / M_used.
pub const CLASSIFY_THRESHOLD: f64 = 1e-8;

/// Elliptic iff the per-sample fit error sqrt(err2)/M_used is below the
/// threshold. The observed clusters sit at ~1e-16 (elliptic) and >1e-6
/// (non-elliptic) for M = 1500.
pub fn classify_locus(fit: &Result<EllipseFit, LocusError>, threshold: f64) -> LocusClass {
    match fit {
        Err(_) => LocusClass::Degenerate,
        Ok(f) => {
            if f.fit_err() / f.m_used as f64 < threshold {
                LocusClass::Elliptic
            } else {
                LocusClass::NonElliptic
            }
        }
    }
}

/// Signed winding number of a closed sampled curve about a point, with
/// adaptive refinement of the parameter grid until every angular step is
/// below pi/2 (bisecting up to 20 levels).
pub fn winding_number(
    sampler: &dyn Fn(f64) -> Option<Point>,
    t0: f64,
    t1: f64,
    m0: usize,
    about: Point,
) -> Result<i32, LocusError> {
    let eval = |t: f64| -> Option<(f64, f64)> {
        let p = sampler(t)?;
        let (dx, dy) = (p.x - about.x, p.y - about.y);
        let r = dx.hypot(dy);
        if r == 0.0 {
            return None;
        }
        Some((dy.atan2(dx), r))
    };
    let mut total = 0.0f64;
    let step = (t1 - t0) / m0 as f64;
    for k in 0..m0 {
        let ta = t0 + step * k as f64;
        let tb = t0 + step * (k + 1) as f64;
        total += winding_segment(&eval, ta, tb, 0)?;
    }
    Ok((total / (2.0 * std::f64::consts::PI)).round() as i32)
}

fn winding_segment(
    eval: &dyn Fn(f64) -> Option<(f64, f64)>,
    ta: f64,
    tb: f64,
    depth: u32,
) -> Result<f64, LocusError> {
    let a = eval(ta).ok_or(LocusError::PassesThroughPoint { t: ta })?;
    let b = eval(tb).ok_or(LocusError::PassesThroughPoint { t: tb })?;
    let mut d = b.0 - a.0;
    while d > std::f64::consts::PI {
        d -= 2.0 * std::f64::consts::PI;
    }
    while d < -std::f64::consts::PI {
        d += 2.0 * std::f64::consts::PI;
    }
    if d.abs() < std::f64::consts::FRAC_PI_2 {
        return Ok(d);
    }
    if depth >= 20 {
        return Err(LocusError::PassesThroughPoint { t: 0.5 * (ta + tb) });
    }
    let tm = 0.5 * (ta + tb);
    Ok(winding_segment(eval, ta, tm, depth + 1)? + winding_segment(eval, tm, tb, depth + 1)?)
}

/// Winding number of a sampled closed polyline about a point. Fails if any
/// angular step reaches pi/2 (resample finer or use the adaptive variant).
pub fn winding_number_samples(samples: &LocusSamples, about: Point) -> Result<i32, LocusError> {
    let pts: Vec<Point> = samples.points().collect();
    if pts.len() < 8 {
        return Err(LocusError::TooFewSamples { needed: 8, got: pts.len() });
    }
    let mut total = 0.0f64;
    for i in 0..pts.len() {
        let p = pts[i];
        let q = pts[(i + 1) % pts.len()];
        let a0 = (p.y - about.y).atan2(p.x - about.x);
        let a1 = (q.y - about.y).atan2(q.x - about.x);
        let mut d = a1 - a0;
        while d > std::f64::consts::PI {
            d -= 2.0 * std::f64::consts::PI;
        }
        while d < -std::f64::consts::PI {
            d += 2.0 * std::f64::consts::PI;
        }
        if d.abs() >= std::f64::consts::FRAC_PI_2 {
            return Err(LocusError::PassesThroughPoint { t: samples.samples[i].0 });
        }
        total += d;
    }
    Ok((total / (2.0 * std::f64::consts::PI)).round() as i32)
}

/// Pointwise affine combination (1 - rho) base + rho target on a shared grid.
/// Returns the combined samples and rho* = 1 - (b/a)^2, the lobe-touching
/// parameter for the incenter/intouchpoint pair.
pub fn convex_combination_locus(
    shape: &BilliardShape,
    base: &LocusSamples,
    target: &LocusSamples,
    rho: f64,
) -> Result<(LocusSamples, f64), LocusError> {
    if base.samples.len() != target.samples.len() {
        return Err(LocusError::GridMismatch);
    }
    let mut samples = Vec::with_capacity(base.samples.len());
    for (&(t0, x0, y0), &(t1, x1, y1)) in base.samples.iter().zip(&target.samples) {
        if (t0 - t1).abs() > 1e-12 {
            return Err(LocusError::GridMismatch);
        }
        samples.push((t0, (1.0 - rho) * x0 + rho * x1, (1.0 - rho) * y0 + rho * y1));
    }
    let rho_star = 1.0 - (shape.b() / shape.a()).powi(2);
    Ok((
        LocusSamples {
            center_id: format!("{}~{}@{rho}", base.center_id, target.center_id),
            a: shape.a(),
            b: shape.b(),
            requested: base.requested,
            samples,
            dropped: Vec::new(),
        },
        rho_star,
    ))
}

/// Count transversal self-crossings of the closed polyline, merging
/// duplicates within 1e-9 of the bounding-box diagonal.
pub fn self_intersections(samples: &LocusSamples) -> Result<usize, LocusError> {
    let pts: Vec<Point> = samples.points().collect();
    let n = pts.len();
    if n < 500 {
        return Err(LocusError::TooFewSamples { needed: 500, got: n });
    }
    let (mut xmin, mut xmax, mut ymin, mut ymax) = (f64::MAX, f64::MIN, f64::MAX, f64::MIN);
    for p in &pts {
        xmin = xmin.min(p.x);
        xmax = xmax.max(p.x);
        ymin = ymin.min(p.y);
        ymax = ymax.max(p.y);
    }
    let diag = (xmax - xmin).hypot(ymax - ymin);
    let merge_r = 1e-9 * diag;
    let mut crossings: Vec<Point> = Vec::new();
    const PAR_TOL: f64 = 1e-12;
    for i in 0..n {
        let (p1, p2) = (pts[i], pts[(i + 1) % n]);
        for j in (i + 2)..n {
            if i == 0 && j == n - 1 {
                continue; // adjacent around the wrap
            }
            let (p3, p4) = (pts[j], pts[(j + 1) % n]);
            let d = (p2.x - p1.x) * (p4.y - p3.y) - (p2.y - p1.y) * (p4.x - p3.x);
            if d == 0.0 {
                continue;
            }
            let s = ((p3.x - p1.x) * (p4.y - p3.y) - (p3.y - p1.y) * (p4.x - p3.x)) / d;
            let u = ((p3.x - p1.x) * (p2.y - p1.y) - (p3.y - p1.y) * (p2.x - p1.x)) / d;
            if s > PAR_TOL && s < 1.0 - PAR_TOL && u > PAR_TOL && u < 1.0 - PAR_TOL {
                crossings.push(Point::new(p1.x + s * (p2.x - p1.x), p1.y + s * (p2.y - p1.y)));
            }
        }
    }
    let mut merged: Vec<Point> = Vec::new();
    for c in crossings {
        if !merged.iter().any(|m| m.dist(&c) < merge_r) {
            merged.push(c);
        }
    }
    Ok(merged.len())
}

/// A line given by a point and a direction.
#[derive(Clone, Copy, Debug)]
pub struct Line {
    pub point: Point,
    pub direction: Point,
}

/// Count sign-change crossings of the closed polyline with a line;
/// tangencies (samples exactly on the line) count once.
pub fn line_intersections(samples: &LocusSamples, line: &Line) -> Result<usize, LocusError> {
    let pts: Vec<Point> = samples.points().collect();
    let n = pts.len();
    if n < 8 {
        return Err(LocusError::TooFewSamples { needed: 8, got: n });
    }
    // signed distance along the line normal
    let nx = -line.direction.y;
    let ny = line.direction.x;
    let sd: Vec<f64> = pts
        .iter()
        .map(|p| nx * (p.x - line.point.x) + ny * (p.y - line.point.y))
        .collect();
    let mut count = 0usize;
    let mut prev_sign = 0i8;
    let mut first_sign = 0i8;
    let mut pending_zero = false;
    for i in 0..=n {
        let s = sd[i % n];
        let sign = if s > 0.0 {
            1
        } else if s < 0.0 {
            -1
        } else {
            0
        };
        if sign == 0 {
            pending_zero = true;
            continue;
        }
        if prev_sign == 0 {
            if pending_zero && first_sign != 0 && i <= n {
                // run of exact zeros: tangency or crossing; count once
                count += 1;
                pending_zero = false;
            }
            if first_sign == 0 {
                first_sign = sign;
            }
            prev_sign = sign;
            continue;
        }
        if sign != prev_sign {
            count += 1;
        }
        prev_sign = sign;
        pending_zero = false;
    }
    Ok(count)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::centers::CenterSet;

    fn shape() -> BilliardShape {
        BilliardShape::new(1.5, 1.0).unwrap()
    }

    fn ellipse_samples(a: f64, b: f64, m: usize) -> LocusSamples {
        let samples = (0..m)
            .map(|k| {
                let t = 2.0 * std::f64::consts::PI * k as f64 / m as f64;
                (t, a * t.cos(), b * t.sin())
            })
            .collect();
        LocusSamples {
            center_id: "test".into(),
            a,
            b,
            requested: m,
            samples,
            dropped: Vec::new(),
        }
    }

    #[test]
    fn fit_recovers_exact_ellipse() {
        let fit = fit_concentric_ellipse(&ellipse_samples(2.0, 1.0, 200)).unwrap();
        assert!((fit.a_hat - 2.0).abs() < 1e-12);
        assert!((fit.b_hat - 1.0).abs() < 1e-12);
        assert!(fit.err2 < 1e-24);
    }

    #[test]
    fn x1_extremes_match_table() {
        let set = CenterSet::builtin();
        let s = shape();
        let loc = sample_locus(&s, set.get(1).unwrap(), 1500).unwrap();
        assert_eq!(loc.len(), 1500);
        let max_x = loc.points().map(|p| p.x.abs()).fold(0.0, f64::max);
        let max_y = loc.points().map(|p| p.y.abs()).fold(0.0, f64::max);
        assert!((max_x - 0.63504).abs() < 5e-5);
        assert!((max_y - 0.29744).abs() < 5e-5);
    }

    #[test]
    fn x9_is_degenerate() {
        let set = CenterSet::builtin();
        let s = shape();
        let loc = sample_locus(&s, set.get(9).unwrap(), 100).unwrap();
        for p in loc.points() {
            assert!(p.x.hypot(p.y) < 1e-10);
        }
        let fit = fit_concentric_ellipse(&loc);
        assert_eq!(classify_locus(&fit, CLASSIFY_THRESHOLD), LocusClass::Degenerate);
    }

    #[test]
    fn x88_on_billiard() {
        let set = CenterSet::builtin();
        let s = shape();
        let loc = sample_locus(&s, set.get(88).unwrap(), 1500).unwrap();
        for p in loc.points() {
            assert!(s.boundary_residual(p).abs() < 1e-10);
        }
    }

    #[test]
    fn winding_of_plain_ellipse_is_one() {
        let loc = ellipse_samples(2.0, 1.0, 400);
        assert_eq!(winding_number_samples(&loc, Point::new(0.0, 0.0)).unwrap(), 1);
        let sampler = |t: f64| Some(Point::new(2.0 * t.cos(), t.sin()));
        let w = winding_number(&sampler, 0.0, 2.0 * std::f64::consts::PI, 16, Point::new(0.0, 0.0)).unwrap();
        assert_eq!(w, 1);
    }

    #[test]
    fn x1_triple_cover() {
        let set = CenterSet::builtin();
        let s = shape();
        let spec = set.get(1).unwrap();
        let sampler = |t: f64| {
            s.orbit_at(t).ok().and_then(|o| spec.position(&o).ok())
        };
        let w = winding_number(&sampler, 0.0, 2.0 * std::f64::consts::PI, 64, Point::new(0.0, 0.0)).unwrap();
        assert_eq!(w.abs(), 3);
    }

    #[test]
    fn ellipse_has_no_self_intersections() {
        let loc = ellipse_samples(2.0, 1.0, 600);
        assert_eq!(self_intersections(&loc).unwrap(), 0);
    }

    #[test]
    fn secant_line_crosses_twice() {
        let loc = ellipse_samples(2.0, 1.0, 600);
        let line = Line {
            point: Point::new(0.3, 0.0),
            direction: Point::new(0.0, 1.0),
        };
        assert_eq!(line_intersections(&loc, &line).unwrap(), 2);
    }

    #[test]
    fn combination_rho_zero_is_base() {
        let set = CenterSet::builtin();
        let s = shape();
        let base = sample_locus_single_cover(&s, set.get(1).unwrap(), 64).unwrap();
        let (comb, rho_star) = convex_combination_locus(&s, &base, &base, 0.0).unwrap();
        assert!((rho_star - 5.0 / 9.0).abs() < 1e-15);
        for (a, b) in comb.samples.iter().zip(&base.samples) {
            assert_eq!(a, b);
        }
    }
}
