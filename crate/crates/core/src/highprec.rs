//! Software-float re-verification of the golden-table quantities at >= 50
//! significant digits (256-bit mantissas, ~77 digits).
//!
//! This is an independent evaluation path: the orbit formulas and catalog
//! expressions are re-implemented over [`Hp`] rather than reusing the f64
//! code, so agreement between the two is a real cross-check.

use crate::centers::expr::Scalar;
use astro_float::{BigFloat, Consts, RoundingMode};
use std::cell::RefCell;

const P: usize = 256;
const RM: RoundingMode = RoundingMode::ToEven;

thread_local! {
    static CONSTS: RefCell<Consts> = RefCell::new(Consts::new().expect("consts cache"));
}

/// High-precision scalar.
#[derive(Clone, Debug)]
pub struct Hp(pub BigFloat);

impl Hp {
    pub fn from_f64(v: f64) -> Self {
        Hp(BigFloat::from_f64(v, P))
    }

    pub fn to_f64(&self) -> f64 {
        format!("{}", self.0).parse().unwrap_or(f64::NAN)
    }

    /// Decimal rendering with `digits` significant digits.
    pub fn to_decimal(&self, digits: usize) -> String {
        let s = format!("{}", self.0);
        // astro-float prints full precision; trim the mantissa
        match s.split_once('e') {
            Some((mant, exp)) => {
                let keep = mant.len().min(digits + 2);
                format!("{}e{}", &mant[..keep], exp)
            }
            None => s,
        }
    }

    pub fn cos(&self) -> Self {
        CONSTS.with(|c| Hp(self.0.cos(P, RM, &mut c.borrow_mut())))
    }

    pub fn sin(&self) -> Self {
        CONSTS.with(|c| Hp(self.0.sin(P, RM, &mut c.borrow_mut())))
    }

    pub fn pi() -> Self {
        CONSTS.with(|c| Hp(c.borrow_mut().pi(P, RM)))
    }

    pub fn abs(&self) -> Self {
        Hp(self.0.abs())
    }

    pub fn neg(&self) -> Self {
        Hp(self.0.neg())
    }

    pub fn lt(&self, other: &Hp) -> bool {
        self.0 < other.0
    }
}

impl Scalar for Hp {
    fn from_i64(v: i64) -> Self {
        Hp(BigFloat::from_i64(v, P))
    }
    fn add(&self, rhs: &Self) -> Self {
        Hp(self.0.add(&rhs.0, P, RM))
    }
    fn sub(&self, rhs: &Self) -> Self {
        Hp(self.0.sub(&rhs.0, P, RM))
    }
    fn mul(&self, rhs: &Self) -> Self {
        Hp(self.0.mul(&rhs.0, P, RM))
    }
    fn div(&self, rhs: &Self) -> Self {
        Hp(self.0.div(&rhs.0, P, RM))
    }
    fn sqrt(&self) -> Self {
        Hp(self.0.sqrt(P, RM))
    }
    fn powi(&self, e: i32) -> Self {
        let mut acc = Hp::from_i64(1);
        for _ in 0..e {
            acc = acc.mul(self);
        }
        acc
    }
    fn is_bad(&self) -> bool {
        self.0.is_nan() || self.0.is_inf()
    }
}

/// Shape constants recomputed at high precision.
pub struct HpShape {
    pub a: Hp,
    pub b: Hp,
    pub c2: Hp,
    pub delta: Hp,
    pub delta1: Hp,
    pub caustic_a: Hp,
    pub caustic_b: Hp,
}

impl HpShape {
    pub fn new(a: f64, b: f64) -> Self {
        let a = Hp::from_f64(a);
        let b = Hp::from_f64(b);
        let a2 = a.mul(&a);
        let b2 = b.mul(&b);
        let c2 = a2.sub(&b2);
        let delta = a2.mul(&a2).sub(&a2.mul(&b2)).add(&b2.mul(&b2)).sqrt();
        let two = Hp::from_i64(2);
        let delta1 = two.mul(&delta).sub(&a2).sub(&b2).sqrt();
        let caustic_a = a.mul(&delta.sub(&b2)).div(&c2);
        let caustic_b = b.mul(&a2.sub(&delta)).div(&c2);
        HpShape {
            a,
            b,
            c2,
            delta,
            delta1,
            caustic_a,
            caustic_b,
        }
    }

    /// Orbit vertices at parameter t, mirroring the closed-form f64 path.
    pub fn orbit(&self, t: &Hp) -> [(Hp, Hp); 3] {
        let (a, b) = (&self.a, &self.b);
        let a2 = a.mul(a);
        let b2 = b.mul(b);
        let (a4, b4) = (a2.mul(&a2), b2.mul(&b2));
        let x1 = a.mul(&t.cos());
        let y1 = b.mul(&t.sin());
        let d1 = a2.mul(&b2).div(&self.c2);
        let d2 = b4.mul(&x1).mul(&x1).add(&a4.mul(&y1).mul(&y1));
        let d1sq = self.delta1.mul(&self.delta1);
        let k1 = d1.mul(&d1).mul(&d1sq).div(&d2);
        let one = Hp::from_i64(1);
        let k2 = k1.mul(&one.sub(&k1)).sqrt();
        let vertex = |k2: &Hp| {
            let two = Hp::from_i64(2);
            let three = Hp::from_i64(3);
            let px = Hp::from_i64(0)
                .sub(&b4.mul(&a2.add(&b2).mul(&k1).sub(&a2)).mul(&x1.powi(3)))
                .sub(&two.mul(&a4).mul(&b2).mul(k2).mul(&x1).mul(&x1).mul(&y1))
                .add(
                    &a4.mul(&a2.sub(&three.mul(&b2)).mul(&k1).add(&b2))
                        .mul(&x1)
                        .mul(&y1)
                        .mul(&y1),
                )
                .sub(&two.mul(&a4).mul(&a2).mul(k2).mul(&y1.powi(3)));
            let py = two
                .mul(&b4)
                .mul(&b2)
                .mul(k2)
                .mul(&x1.powi(3))
                .add(
                    &b4.mul(&b2.sub(&three.mul(&a2)).mul(&k1).add(&a2))
                        .mul(&x1)
                        .mul(&x1)
                        .mul(&y1),
                )
                .add(&two.mul(&a2).mul(&b4).mul(k2).mul(&x1).mul(&y1).mul(&y1))
                .sub(&a4.mul(&a2.add(&b2).mul(&k1).sub(&b2)).mul(&y1.powi(3)));
            let q = b4
                .mul(&a2.sub(&self.c2.mul(&k1)))
                .mul(&x1)
                .mul(&x1)
                .add(&a4.mul(&b2.add(&self.c2.mul(&k1))).mul(&y1).mul(&y1))
                .sub(&two.mul(&a2).mul(&b2).mul(&self.c2).mul(k2).mul(&x1).mul(&y1));
            (px.div(&q), py.div(&q))
        };
        let p2 = vertex(&k2);
        let p3 = vertex(&k2.neg());
        [(x1, y1), p2, p3]
    }
}

/// Distance between two Hp points.
pub fn hp_dist(p: &(Hp, Hp), q: &(Hp, Hp)) -> Hp {
    let dx = p.0.sub(&q.0);
    let dy = p.1.sub(&q.1);
    dx.mul(&dx).add(&dy.mul(&dy)).sqrt()
}

/// Verify the Poncelet identity, the Joachimsthal cross-identity, and
/// perimeter constancy at 50+ digits. Returns the worst absolute defects
/// (poncelet, joachimsthal, perimeter spread) as f64 exponents of 10.
pub fn verify_billiard_invariants(a: f64, b: f64, samples: usize) -> (f64, f64, f64) {
    let sh = HpShape::new(a, b);
    let one = Hp::from_i64(1);
    let poncelet = sh
        .caustic_a
        .div(&sh.a)
        .add(&sh.caustic_b.div(&sh.b))
        .sub(&one)
        .abs()
        .to_f64();
    // tan t* = b sqrt(2 delta - a^2 + 2 b^2)/a^2; sin t* = J b; cos t** = J a
    let two = Hp::from_i64(2);
    let a2 = sh.a.mul(&sh.a);
    let b2 = sh.b.mul(&sh.b);
    // J via t*: sin t* = J b with sin t* = b sqrt(2 delta - a^2 + 2 b^2)/(delta + b^2)
    let r1 = two.mul(&sh.delta).sub(&a2).add(&two.mul(&b2)).sqrt();
    let j = r1.div(&sh.delta.add(&b2));
    // J via t**: cos t** = J a with tan t** = sqrt(2 delta - 2 a^2 + b^2)/(sqrt(3) a)
    let r2 = two.mul(&sh.delta).sub(&two.mul(&a2)).add(&b2).sqrt();
    let j2 = r2.div(&Hp::from_i64(3).sqrt().mul(&sh.a));
    let cos_td = one.div(&one.add(&j2.mul(&j2)).sqrt());
    let joach = cos_td.div(&sh.a).sub(&j).abs().to_f64();
    let mut per_min = f64::MAX;
    let mut per_max = f64::MIN;
    for k in 0..samples {
        let t = Hp::from_f64(0.37 + k as f64).mul(&Hp::pi()).div(&Hp::from_f64(samples as f64 * 1.61803));
        let [p1, p2, p3] = sh.orbit(&t);
        let per = hp_dist(&p3, &p2).add(&hp_dist(&p1, &p3)).add(&hp_dist(&p2, &p1));
        let v = per.to_f64();
        per_min = per_min.min(v);
        per_max = per_max.max(v);
    }
    (poncelet, joach, per_max - per_min)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn hp_shape_matches_f64_constants() {
        let sh = HpShape::new(1.5, 1.0);
        assert!((sh.delta.to_f64() - 1.9525624189766636).abs() < 1e-15);
        assert!((sh.caustic_a.to_f64() - 1.1430749027719963).abs() < 1e-15);
        assert!((sh.caustic_b.to_f64() - 0.23795006481866912).abs() < 1e-15);
    }

    #[test]
    fn invariants_hold_beyond_f64() {
        let (poncelet, joach, per_spread) = verify_billiard_invariants(1.5, 1.0, 5);
        assert!(poncelet < 1e-60, "poncelet {poncelet}");
        assert!(joach < 1e-60, "joachimsthal {joach}");
        assert!(per_spread.abs() < 1e-14, "perimeter {per_spread}");
    }

    #[test]
    fn hp_orbit_matches_f64_orbit() {
        let f = crate::billiard::BilliardShape::new(1.5, 1.0).unwrap();
        let h = HpShape::new(1.5, 1.0);
        let o = f.orbit_at(0.4).unwrap();
        let [_, p2, p3] = h.orbit(&Hp::from_f64(0.4));
        assert!((p2.0.to_f64() - o.p2.x).abs() < 1e-13);
        assert!((p2.1.to_f64() - o.p2.y).abs() < 1e-13);
        assert!((p3.0.to_f64() - o.p3.x).abs() < 1e-13);
        assert!((p3.1.to_f64() - o.p3.y).abs() < 1e-13);
    }
}
