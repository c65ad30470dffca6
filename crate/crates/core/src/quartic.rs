//! The quartic locus of the symmedian point X6:
//! c1 x^4 + c2 y^4 + c3 x^2 y^2 + c4 x^2 + c5 y^2 = 0, with the internally
//! tangent ellipse (a6, b6) touching at the four vertices.

use crate::billiard::BilliardShape;

/// Coefficients of the X6 quartic and its tangent-ellipse semi-axes.
#[derive(Clone, Copy, Debug)]
pub struct QuarticX6 {
    pub c1: f64,
    pub c2: f64,
    pub c3: f64,
    pub c4: f64,
    pub c5: f64,
    pub a6: f64,
    pub b6: f64,
    pub delta: f64,
}

/// Closed-form coefficients of the X6 quartic.
pub fn x6_quartic(shape: &BilliardShape) -> QuarticX6 {
    let (a, b) = (shape.a(), shape.b());
    let (a2, b2) = (a * a, b * b);
    let d = shape.delta();
    let d2 = d * d;
    let c1 = b2 * b2 * (5.0 * d2 - 4.0 * (a2 - b2) * d - a2 * b2);
    let c2 = a2 * a2 * (5.0 * d2 + 4.0 * (a2 - b2) * d - a2 * b2);
    let c3 = 2.0 * a2 * b2 * (a2 * b2 + 3.0 * d2);
    let c4 = a2 * b2 * b2 * (3.0 * b2 * b2 + 2.0 * (2.0 * a2 - b2) * d - 5.0 * d2);
    let c5 = a2 * a2 * b2 * (3.0 * a2 * a2 + 2.0 * (2.0 * b2 - a2) * d - 5.0 * d2);
    let den = a2 * b2 + 3.0 * d2;
    let a6 = ((3.0 * a2 - b2) * d - (a2 + b2) * b2) * a / den;
    let b6 = ((a2 - 3.0 * b2) * d + (a2 + b2) * a2) * b / den;
    QuarticX6 {
        c1,
        c2,
        c3,
        c4,
        c5,
        a6,
        b6,
        delta: d,
    }
}

impl QuarticX6 {
    /// Value of the quartic at (x, y).
    pub fn eval(&self, x: f64, y: f64) -> f64 {
        let (x2, y2) = (x * x, y * y);
        self.c1 * x2 * x2 + self.c2 * y2 * y2 + self.c3 * x2 * y2 + self.c4 * x2 + self.c5 * y2
    }

    /// Relative residual: |Q(x,y)| over the sum of term magnitudes.
    pub fn relative_residual(&self, x: f64, y: f64) -> f64 {
        let (x2, y2) = (x * x, y * y);
        let scale = (self.c1 * x2 * x2).abs()
            + (self.c2 * y2 * y2).abs()
            + (self.c3 * x2 * y2).abs()
            + (self.c4 * x2).abs()
            + (self.c5 * y2).abs();
        if scale == 0.0 {
            return 0.0;
        }
        self.eval(x, y).abs() / scale
    }

    /// x-extent of the quartic region: at y = 0, c1 x^4 + c4 x^2 = 0.
    pub fn x_max(&self) -> f64 {
        (-self.c4 / self.c1).sqrt()
    }

    /// Upper-branch height y(x) of the convex quartic, from the biquadratic
    /// c2 y^4 + (c3 x^2 + c5) y^2 + (c1 x^4 + c4 x^2) = 0.
    pub fn y_upper(&self, x: f64) -> f64 {
        let x2 = x * x;
        let bq = self.c3 * x2 + self.c5;
        let cq = self.c1 * x2 * x2 + self.c4 * x2;
        let disc = (bq * bq - 4.0 * self.c2 * cq).max(0.0);
        let y2 = (-bq + disc.sqrt()) / (2.0 * self.c2);
        y2.max(0.0).sqrt()
    }

    /// Area of the quartic region via trapezoid quadrature over >= n samples
    /// of the upper branch.
    pub fn region_area(&self, n: usize) -> f64 {
        let xm = self.x_max();
        let mut area = 0.0;
        let mut prev = self.y_upper(-xm);
        for k in 1..=n {
            let x = -xm + 2.0 * xm * k as f64 / n as f64;
            let y = self.y_upper(x);
            area += (prev + y) * (xm / n as f64);
            prev = y;
        }
        2.0 * area
    }

    /// Area ratio of the inscribed ellipse to the quartic region.
    pub fn ellipse_area_ratio(&self, n: usize) -> f64 {
        std::f64::consts::PI * self.a6 * self.b6 / self.region_area(n)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::centers::CenterSet;
    use crate::locus::sample_locus;

    #[test]
    fn coefficient_ratios_match_reference() {
        // 50-digit oracle evaluations of the closed forms
        let cases = [
            (1.25, 0.21103997583407798, 1.1846096883395818, -0.039512634410371948, -0.094511339022458999, 0.43269873831268124, 0.28245828508539875),
            (1.5, 0.1144545981551161, 2.1842722269767111, -0.087472623458022094, -0.3987354418757533, 0.87421741469762364, 0.42725685375470336),
            (2.0, 0.051550536902418978, 4.8496100142124591, -0.13398002492446686, -1.4614979117142306, 1.6121425130280875, 0.54896630873172068),
            (3.0, 0.020124727132027047, 12.422528681253178, -0.15680673828772794, -4.7687378769956336, 2.7913697023454712, 0.61957904592940871),
        ];
        for (r, c1c3, c2c3, c4c3, c5c3, a6, b6) in cases {
            let q = x6_quartic(&BilliardShape::new(r, 1.0).unwrap());
            assert!((q.c1 / q.c3 - c1c3).abs() < 1e-13);
            assert!((q.c2 / q.c3 - c2c3).abs() < 1e-12);
            assert!((q.c4 / q.c3 - c4c3).abs() < 1e-13);
            assert!((q.c5 / q.c3 - c5c3).abs() < 1e-12);
            assert!((q.a6 - a6).abs() < 1e-13);
            assert!((q.b6 - b6).abs() < 1e-13);
        }
    }

    #[test]
    fn vertices_satisfy_quartic() {
        let q = x6_quartic(&BilliardShape::new(1.5, 1.0).unwrap());
        assert!(q.relative_residual(q.a6, 0.0) < 1e-10);
        assert!(q.relative_residual(-q.a6, 0.0) < 1e-10);
        assert!(q.relative_residual(0.0, q.b6) < 1e-10);
        assert!(q.relative_residual(0.0, -q.b6) < 1e-10);
        // a6 equals the x-extent of the region (tangency at the vertices)
        assert!((q.x_max() - q.a6).abs() < 1e-12);
    }

    #[test]
    fn sampled_x6_locus_satisfies_quartic() {
        let shape = BilliardShape::new(1.5, 1.0).unwrap();
        let q = x6_quartic(&shape);
        let set = CenterSet::builtin();
        let loc = sample_locus(&shape, set.get(6).unwrap(), 500).unwrap();
        for p in loc.points() {
            assert!(q.relative_residual(p.x, p.y) < 1e-9);
        }
    }

    #[test]
    fn area_ratio_near_one() {
        let q = x6_quartic(&BilliardShape::new(1.5, 1.0).unwrap());
        let ratio = q.ellipse_area_ratio(20_000);
        assert!((ratio - 0.9998).abs() < 1e-3, "ratio {ratio}");
    }
}
