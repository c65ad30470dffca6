//! Elliptic billiard shape and the 3-periodic orbit family.
//!
//! Orbit vertices come from the closed-form parametrization: P1 travels the
//! boundary as (a cos t, b sin t) and P2, P3 follow from the exit-angle
//! coefficients k1 = cos^2(alpha), k2 = sin(alpha)cos(alpha). The family is
//! the Poncelet 3-periodic family: constant perimeter, all sides tangent to
//! the confocal caustic.

use crate::Point;
use std::fmt;

/// Error for invalid billiard shapes or broken orbit evaluations.
#[derive(Clone, Debug, PartialEq)]
pub enum ShapeError {
    /// a <= b or non-positive/non-finite semi-axes.
    DegenerateShape { a: f64, b: f64 },
    /// Point claimed to be on the boundary is not.
    OutsideBoundary { residual: f64 },
    /// An orbit-vertex denominator collapsed (|q2| or |q3| below tolerance).
    NumericalBreakdown { t: f64 },
}

impl fmt::Display for ShapeError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ShapeError::DegenerateShape { a, b } => {
                write!(f, "degenerate shape: need a > b > 0, got a={a}, b={b}")
            }
            ShapeError::OutsideBoundary { residual } => {
                write!(f, "point not on billiard boundary (residual {residual:.3e})")
            }
            ShapeError::NumericalBreakdown { t } => {
                write!(f, "orbit denominator collapsed at t={t}")
            }
        }
    }
}

impl std::error::Error for ShapeError {}

/// An elliptic billiard with a > b > 0 and cached derived constants.
#[derive(Clone, Copy, Debug)]
pub struct BilliardShape {
    a: f64,
    b: f64,
    /// c^2 = a^2 - b^2
    c2: f64,
    /// delta = sqrt(a^4 - a^2 b^2 + b^4)
    delta: f64,
    /// delta1 = sqrt(2 delta - a^2 - b^2)
    delta1: f64,
    caustic_a: f64,
    caustic_b: f64,
    /// Joachimsthal constant: sin t* = J b, cos t** = J a.
    joachimsthal: f64,
}

impl BilliardShape {
    /// Validate semi-axes and populate derived constants.
    pub fn new(a: f64, b: f64) -> Result<Self, ShapeError> {
        if !(a.is_finite() && b.is_finite()) || b <= 0.0 || a <= b {
            return Err(ShapeError::DegenerateShape { a, b });
        }
        let (a2, b2) = (a * a, b * b);
        let c2 = a2 - b2;
        let delta = (a2 * a2 - a2 * b2 + b2 * b2).sqrt();
        let delta1 = (2.0 * delta - a2 - b2).sqrt();
        let caustic_a = a * (delta - b2) / c2;
        let caustic_b = b * (a2 - delta) / c2;
        // sin t* with tan t* = b sqrt(2 delta - a^2 + 2 b^2) / a^2; the
        // denominator simplifies to delta + b^2, so J has a closed form.
        let joachimsthal = (2.0 * delta - a2 + 2.0 * b2).sqrt() / (delta + b2);
        Ok(BilliardShape {
            a,
            b,
            c2,
            delta,
            delta1,
            caustic_a,
            caustic_b,
            joachimsthal,
        })
    }

    pub fn a(&self) -> f64 {
        self.a
    }

    pub fn b(&self) -> f64 {
        self.b
    }

    pub fn c2(&self) -> f64 {
        self.c2
    }

    pub fn delta(&self) -> f64 {
        self.delta
    }

    pub fn delta1(&self) -> f64 {
        self.delta1
    }

    pub fn joachimsthal(&self) -> f64 {
        self.joachimsthal
    }

    /// Semi-axes of the confocal caustic tangent to all 3-periodic sides:
    /// a_c = a (delta - b^2)/c^2, b_c = b (a^2 - delta)/c^2.
    pub fn caustic_axes(&self) -> (f64, f64) {
        (self.caustic_a, self.caustic_b)
    }

    /// Boundary residual (x/a)^2 + (y/b)^2 - 1.
    pub fn boundary_residual(&self, p: Point) -> f64 {
        (p.x / self.a).powi(2) + (p.y / self.b).powi(2) - 1.0
    }

    /// Exit-angle coefficients at a boundary point: k1 = cos^2(alpha) via
    /// d1^2 delta1^2 / d2, and k2 = sin(alpha) cos(alpha) = +sqrt(k1(1-k1)).
    pub fn exit_coefficients(&self, p1: Point) -> Result<(f64, f64), ShapeError> {
        let res = self.boundary_residual(p1);
        if res.abs() > 1e-9 {
            return Err(ShapeError::OutsideBoundary { residual: res });
        }
        let (a2, b2) = (self.a * self.a, self.b * self.b);
        let d1 = a2 * b2 / self.c2;
        let d2 = b2 * b2 * p1.x * p1.x + a2 * a2 * p1.y * p1.y;
        let k1 = d1 * d1 * self.delta1 * self.delta1 / d2;
        let k2 = (k1 * (1.0 - k1)).max(0.0).sqrt();
        Ok((k1, k2))
    }

    /// The 3-periodic orbit with starting vertex P1 = (a cos t, b sin t).
    pub fn orbit_at(&self, t: f64) -> Result<OrbitTriangle, ShapeError> {
        let p1 = Point::new(self.a * t.cos(), self.b * t.sin());
        let (k1, k2) = self.exit_coefficients(p1)?;
        let scale = (self.a * self.a * self.b).powi(2) * self.a.powi(2);
        let p2 = self.next_vertex(p1, k1, k2, t, scale)?;
        let p3 = self.next_vertex(p1, k1, -k2, t, scale)?;
        Ok(OrbitTriangle::from_vertices(t, p1, p2, p3))
    }

    /// Explicit degree-3 vertex formulas; P3 is P2 with k2 negated.
    fn next_vertex(&self, p1: Point, k1: f64, k2: f64, t: f64, scale: f64) -> Result<Point, ShapeError> {
        let (x1, y1) = (p1.x, p1.y);
        let a2 = self.a * self.a;
        let b2 = self.b * self.b;
        let c2 = self.c2;
        let (a4, b4) = (a2 * a2, b2 * b2);
        let px = -b4 * ((a2 + b2) * k1 - a2) * x1.powi(3) - 2.0 * a4 * b2 * k2 * x1 * x1 * y1
            + a4 * ((a2 - 3.0 * b2) * k1 + b2) * x1 * y1 * y1
            - 2.0 * a4 * a2 * k2 * y1.powi(3);
        let py = 2.0 * b4 * b2 * k2 * x1.powi(3) + b4 * ((b2 - 3.0 * a2) * k1 + a2) * x1 * x1 * y1
            + 2.0 * a2 * b4 * k2 * x1 * y1 * y1
            - a4 * ((a2 + b2) * k1 - b2) * y1.powi(3);
        let q = b4 * (a2 - c2 * k1) * x1 * x1 + a4 * (b2 + c2 * k1) * y1 * y1
            - 2.0 * a2 * b2 * c2 * k2 * x1 * y1;
        if q.abs() < 1e-14 * scale {
            return Err(ShapeError::NumericalBreakdown { t });
        }
        Ok(Point::new(px / q, py / q))
    }

    /// Parameters of the two isosceles configurations:
    /// tan t* = b sqrt(2 delta - a^2 + 2 b^2)/a^2 (horizontal axis, apex at
    /// (-a, 0)) and tan t** = sqrt(2 delta - 2 a^2 + b^2)/(sqrt(3) a)
    /// (vertical axis, apex at (0, -b)).
    pub fn isosceles_params(&self) -> (f64, f64) {
        let (a2, b2) = (self.a * self.a, self.b * self.b);
        let r1 = 2.0 * self.delta - a2 + 2.0 * b2;
        let r2 = 2.0 * self.delta - 2.0 * a2 + b2;
        debug_assert!(r1 > 0.0 && r2 > 0.0);
        let t_star = (self.b * r1.sqrt() / a2).atan();
        let t_dstar = (r2.sqrt() / (3.0f64.sqrt() * self.a)).atan();
        (t_star, t_dstar)
    }

    /// Rationalized reflection-law residual, maximized over the three
    /// vertices and normalized by perimeter^4. Vanishes (to rounding) on true
    /// orbits; order 1e-5 already for a 1e-3 tangential vertex perturbation.
    pub fn reflection_residual(&self, orbit: &OrbitTriangle) -> f64 {
        let pts = [orbit.p1, orbit.p2, orbit.p3];
        let (a2, b2) = (self.a * self.a, self.b * self.b);
        let mut worst = 0.0f64;
        for j in 0..3 {
            let pj = pts[j];
            let pk = pts[(j + 1) % 3];
            let pl = pts[(j + 2) % 3];
            let n = (pj.x / a2, pj.y / b2);
            let dk = n.0 * (pk.x - pj.x) + n.1 * (pk.y - pj.y);
            let dl = n.0 * (pl.x - pj.x) + n.1 * (pl.y - pj.y);
            let nk = (pk.x - pj.x).powi(2) + (pk.y - pj.y).powi(2);
            let nl = (pl.x - pj.x).powi(2) + (pl.y - pj.y).powi(2);
            let r = (dl * dl * nk - dk * dk * nl).abs();
            worst = worst.max(r);
        }
        worst / orbit.perimeter().powi(4)
    }
}

/// One member of the 3-periodic family.
#[derive(Clone, Copy, Debug)]
pub struct OrbitTriangle {
    /// Parameter of P1 on the boundary.
    pub t: f64,
    pub p1: Point,
    pub p2: Point,
    pub p3: Point,
    /// s1 = |P3-P2|, s2 = |P1-P3|, s3 = |P2-P1|.
    pub s1: f64,
    pub s2: f64,
    pub s3: f64,
}

impl OrbitTriangle {
    pub fn from_vertices(t: f64, p1: Point, p2: Point, p3: Point) -> Self {
        OrbitTriangle {
            t,
            p1,
            p2,
            p3,
            s1: p3.dist(&p2),
            s2: p1.dist(&p3),
            s3: p2.dist(&p1),
        }
    }

    pub fn perimeter(&self) -> f64 {
        self.s1 + self.s2 + self.s3
    }

    pub fn semiperimeter(&self) -> f64 {
        self.perimeter() / 2.0
    }

    /// Heron area.
    pub fn area(&self) -> f64 {
        let s = self.semiperimeter();
        (s * (s - self.s1) * (s - self.s2) * (s - self.s3)).max(0.0).sqrt()
    }

    pub fn inradius(&self) -> f64 {
        self.area() / self.semiperimeter()
    }

    pub fn circumradius(&self) -> f64 {
        self.s1 * self.s2 * self.s3 / (4.0 * self.area())
    }

    pub fn vertices(&self) -> [Point; 3] {
        [self.p1, self.p2, self.p3]
    }

    pub fn sides(&self) -> [f64; 3] {
        [self.s1, self.s2, self.s3]
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const SHAPE15: (f64, f64) = (1.5, 1.0);

    fn shape() -> BilliardShape {
        BilliardShape::new(SHAPE15.0, SHAPE15.1).unwrap()
    }

    #[test]
    fn derived_constants() {
        let s = shape();
        // 50-digit reference evaluations
        assert!((s.delta() - 1.9525624189766636).abs() < 1e-15);
        assert!((s.c2() - 1.25).abs() < 1e-15);
        let s2 = BilliardShape::new(2.0, 1.0).unwrap();
        assert_eq!(s2.c2(), 3.0);
    }

    #[test]
    fn rejects_degenerate() {
        assert!(matches!(
            BilliardShape::new(1.0, 1.0),
            Err(ShapeError::DegenerateShape { .. })
        ));
        assert!(BilliardShape::new(1.0, 2.0).is_err());
        assert!(BilliardShape::new(1.0, 0.0).is_err());
        assert!(BilliardShape::new(f64::NAN, 1.0).is_err());
    }

    #[test]
    fn caustic_axes_match_reference() {
        let s = shape();
        let (ac, bc) = s.caustic_axes();
        // 50-digit reference: 1.1430749027719963, 0.23795006481866912
        assert!((ac - 1.1430749027719963).abs() < 1e-14);
        assert!((bc - 0.23795006481866912).abs() < 1e-14);
        // Poncelet closure identity
        assert!((ac / s.a() + bc / s.b() - 1.0).abs() < 1e-14);
        let s2 = BilliardShape::new(2.0, 1.0).unwrap();
        let (ac2, bc2) = s2.caustic_axes();
        // 50-digit oracle values for (2,1)
        assert!((ac2 - 1.7370341836426595).abs() < 1e-14);
        assert!((bc2 - 0.13148290817867024).abs() < 1e-14);
    }

    #[test]
    fn exit_coefficients_at_vertex() {
        let s = shape();
        let (k1, k2) = s.exit_coefficients(Point::new(1.5, 0.0)).unwrap();
        // 50-digit reference values
        assert!((k1 - 0.94337976665279116).abs() < 1e-14);
        assert!((k2 - 0.23111551770254730).abs() < 1e-14);
        // trig identity holds at any boundary point
        for t in [0.0, 0.3, 1.2, 2.0, 4.4] {
            let p = Point::new(1.5 * t.cos(), t.sin());
            let (k1, k2) = s.exit_coefficients(p).unwrap();
            assert!((k2 * k2 - k1 * (1.0 - k1)).abs() < 1e-14);
            assert!(k1 > 0.0 && k1 < 1.0);
        }
        assert!(s.exit_coefficients(Point::new(1.2, 1.2)).is_err());
    }

    #[test]
    fn orbit_isosceles_at_axes() {
        let s = shape();
        let o = s.orbit_at(0.0).unwrap();
        assert!((o.p2.y + o.p3.y).abs() < 1e-14);
        assert!((o.p2.x - o.p3.x).abs() < 1e-14);
        assert!((o.s2 - o.s3).abs() < 1e-13);
        let o = s.orbit_at(std::f64::consts::FRAC_PI_2).unwrap();
        assert!((o.p2.x + o.p3.x).abs() < 1e-14);
        assert!((o.s2 - o.s3).abs() < 1e-13);
    }

    #[test]
    fn orbit_vertices_on_boundary_and_perimeter_constant() {
        let s = shape();
        let per0 = s.orbit_at(0.0).unwrap().perimeter();
        // 50-digit reference perimeter
        assert!((per0 - 6.7375083241822027).abs() < 1e-13);
        for k in 0..97 {
            let t = 2.0 * std::f64::consts::PI * k as f64 / 97.0;
            let o = s.orbit_at(t).unwrap();
            assert!(s.boundary_residual(o.p2).abs() < 1e-12);
            assert!(s.boundary_residual(o.p3).abs() < 1e-12);
            assert!((o.perimeter() - per0).abs() / per0 < 1e-10);
        }
    }

    #[test]
    fn isosceles_params_and_joachimsthal() {
        let s = shape();
        let (ts, td) = s.isosceles_params();
        // 50-digit references
        assert!((ts - 0.70432324851115919).abs() < 1e-14);
        assert!((td - 0.24025474769198573).abs() < 1e-14);
        let j1 = ts.sin() / s.b();
        let j2 = td.cos() / s.a();
        assert!((j1 - j2).abs() < 1e-12);
        assert!((j1 - s.joachimsthal()).abs() < 1e-12);
        // t*: horizontal isosceles with apex P2 = (-a, 0), so s1 = s3
        let o = s.orbit_at(ts).unwrap();
        assert!((o.p2.x + s.a()).abs() < 1e-12 && o.p2.y.abs() < 1e-12);
        assert!((o.s1 - o.s3).abs() < 1e-12);
        // t**: vertical isosceles with apex P3 = (0, -b), so s1 = s2
        let o = s.orbit_at(td).unwrap();
        assert!(o.p3.x.abs() < 1e-12 && (o.p3.y + s.b()).abs() < 1e-12);
        assert!((o.s1 - o.s2).abs() < 1e-12);
    }

    #[test]
    fn reflection_residual_discriminates() {
        let s = shape();
        for t in [0.1, 0.7, 2.9, 5.5] {
            let o = s.orbit_at(t).unwrap();
            assert!(s.reflection_residual(&o) < 1e-10);
        }
        // perturb P2 tangentially by 1e-3
        let o = s.orbit_at(0.4).unwrap();
        let tp = (o.p2.y / s.b()).atan2(o.p2.x / s.a());
        let p2p = Point::new(s.a() * (tp + 1e-3).cos(), s.b() * (tp + 1e-3).sin());
        let bad = OrbitTriangle::from_vertices(o.t, o.p1, p2p, o.p3);
        assert!(s.reflection_residual(&bad) > 1e-5);
    }

    #[test]
    fn inradius_circumradius_ratio_constant() {
        let s = shape();
        let r0 = {
            let o = s.orbit_at(0.0).unwrap();
            o.inradius() / o.circumradius()
        };
        for k in 1..53 {
            let o = s.orbit_at(0.11 * k as f64).unwrap();
            let r = o.inradius() / o.circumradius();
            assert!((r - r0).abs() / r0 < 1e-10);
        }
    }
}
