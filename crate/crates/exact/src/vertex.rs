//! Exact orbit-vertex data over Q(delta) for a rational-axes billiard.
//!
//! With P1 = (a u, b u1), u1^2 = 1 - u^2, the remaining vertices are rational
//! in (u, u1, v2) where v2 = delta1 * u2 absorbs the only delta1 occurrence
//! (delta1^2 = 2 delta - a^2 - b^2 is in the field, delta1 alone is not):
//!
//! ```text
//! P2 = ( (A + B u1 v2) / q2t , (C u v2 + D u1) / q2t ),  q2t = E + F u u1 v2
//! P3 = same with the signs of B, C, F flipped
//! ```
//!
//! A, D, E are u-polynomials; B, C, F are constants; and
//! v2^2 = delta1^2 (1 - rho1 u^2) with rho1 = c^2 (b^2 + delta)^2 / a^6.

use crate::poly::{FieldPoly, Var};
use crate::scalar::{FieldCtx, FieldScalar, Rat};
use std::sync::Arc;

/// All exact per-shape data the elimination chain needs.
pub struct VertexData {
    pub ctx: Arc<FieldCtx>,
    pub a: FieldScalar,
    pub b: FieldScalar,
    /// rho1 = c^2 (b^2 + delta)^2 / a^6.
    pub rho1: FieldScalar,
    /// u1^2 = 1 - u^2 as a polynomial in U.
    pub u1sq: FieldPoly,
    /// v2^2 = delta1^2 (1 - rho1 u^2) as a polynomial in U.
    pub v2sq: FieldPoly,
    /// w^2 = (u1 v2)^2.
    pub wsq: FieldPoly,
    pub a_poly: FieldPoly,
    pub b_const: FieldPoly,
    pub c_const: FieldPoly,
    pub d_poly: FieldPoly,
    pub e_poly: FieldPoly,
    pub f_const: FieldPoly,
    /// q2t q3t = E^2 - F^2 u^2 w^2 (rational in u).
    pub g_poly: FieldPoly,
    /// Side-relation data: g_i = alpha_i s_i^2 + gamma_i.
    pub alpha1: FieldPoly,
    pub gamma1: FieldPoly,
    /// alpha for both s2 and s3.
    pub alpha23: FieldPoly,
    pub gamma2: FieldPoly,
    pub gamma3: FieldPoly,
    /// AE - B F u W and BE - A F u (x-side numerator helpers).
    pub xnum_even: FieldPoly,
    pub xnum_odd: FieldPoly,
    /// DE - C F u^2 V2 and u(CE - D F (1-u^2)) (y-side helpers).
    pub ynum_u1: FieldPoly,
    pub ynum_v2: FieldPoly,
}

impl VertexData {
    pub fn new(a_rat: Rat, b_rat: Rat) -> Self {
        let ctx = FieldCtx::for_shape(&a_rat, &b_rat);
        let sc = |r: Rat| FieldScalar::from_rat(r);
        let a = sc(a_rat.clone());
        let b = sc(b_rat.clone());
        let cst = |s: &FieldScalar| FieldPoly::constant(s.clone(), ctx.clone());
        let a2 = a.mul(&a, &ctx);
        let b2 = b.mul(&b, &ctx);
        let c2 = a2.sub(&b2);
        let delta = FieldScalar::delta();
        let two = FieldScalar::from_int(2);
        let three = FieldScalar::from_int(3);
        let d1sq = two.mul(&delta, &ctx).sub(&a2).sub(&b2);
        let c4 = c2.mul(&c2, &ctx);
        // n1 = a^2 b^2 delta1^2 / c^4, nu = a^2 b (delta - b^2)/c^4
        let n1 = a2.mul(&b2, &ctx).mul(&d1sq, &ctx).div(&c4, &ctx);
        let nu = a2.mul(&b, &ctx).mul(&delta.sub(&b2), &ctx).div(&c4, &ctx);
        // rho1 = c^2 (b^2 + delta)^2 / a^6
        let b2d = b2.add(&delta);
        let a6 = a2.mul(&a2, &ctx).mul(&a2, &ctx);
        let rho1 = c2.mul(&b2d, &ctx).mul(&b2d, &ctx).div(&a6, &ctx);

        let u = FieldPoly::var(Var::U, ctx.clone());
        let one = FieldPoly::from_int(1, ctx.clone());
        let u2 = u.pow(2);
        let one_mu2 = one.sub(&u2);
        // m(u) = a^2 - c^2 u^2
        let m = cst(&a2).sub(&u2.mul_scalar(&c2));
        let u1sq = one_mu2.clone();
        let v2sq = cst(&d1sq).mul(&one.sub(&u2.mul_scalar(&rho1)));
        let wsq = u1sq.mul(&v2sq);

        // A(u) = -a^3 b^4 [(a^2+b^2) n1 - a^2 m] u^3
        //        + a^5 b^2 [(a^2-3b^2) n1 + b^2 m] u (1 - u^2)
        let a3 = a.mul(&a2, &ctx);
        let a5 = a3.mul(&a2, &ctx);
        let b4 = b2.mul(&b2, &ctx);
        let t1 = cst(&a2.add(&b2).mul(&n1, &ctx)).sub(&m.mul_scalar(&a2));
        let t2 = cst(&a2.sub(&three.mul(&b2, &ctx)).mul(&n1, &ctx)).add(&m.mul_scalar(&b2));
        let a_poly = u
            .pow(3)
            .mul(&t1)
            .mul_scalar(&a3.mul(&b4, &ctx).neg())
            .add(&u.mul(&one_mu2).mul(&t2).mul_scalar(&a5.mul(&b2, &ctx)));
        // B = -2 a^6 b^3 nu ; C = 2 a^3 b^6 nu ; F = -2 a^3 b^3 c^2 nu
        let b3 = b.mul(&b2, &ctx);
        let b6 = b3.mul(&b3, &ctx);
        let b_const = cst(&two.mul(&a6, &ctx).mul(&b3, &ctx).mul(&nu, &ctx).neg());
        let c_const = cst(&two.mul(&a3, &ctx).mul(&b6, &ctx).mul(&nu, &ctx));
        let f_const = cst(&two.mul(&a3, &ctx).mul(&b3, &ctx).mul(&c2, &ctx).mul(&nu, &ctx).neg());
        // D(u) = a^2 b^5 [(b^2 - 3a^2) n1 + a^2 m] u^2
        //        - a^4 b^3 [(a^2+b^2) n1 - b^2 m] (1 - u^2)
        let b5 = b3.mul(&b2, &ctx);
        let a4 = a2.mul(&a2, &ctx);
        let t3 = cst(&b2.sub(&three.mul(&a2, &ctx)).mul(&n1, &ctx)).add(&m.mul_scalar(&a2));
        let t4 = cst(&a2.add(&b2).mul(&n1, &ctx)).sub(&m.mul_scalar(&b2));
        let d_poly = u2
            .mul(&t3)
            .mul_scalar(&a2.mul(&b5, &ctx))
            .sub(&one_mu2.mul(&t4).mul_scalar(&a4.mul(&b3, &ctx)));
        // E(u) = a^2 b^4 (a^2 m - c^2 n1) u^2 + a^4 b^2 (b^2 m + c^2 n1)(1 - u^2)
        let t5 = m.mul_scalar(&a2).sub(&cst(&c2.mul(&n1, &ctx)));
        let t6 = m.mul_scalar(&b2).add(&cst(&c2.mul(&n1, &ctx)));
        let e_poly = u2
            .mul(&t5)
            .mul_scalar(&a2.mul(&b4, &ctx))
            .add(&one_mu2.mul(&t6).mul_scalar(&a4.mul(&b2, &ctx)));
        // G = E^2 - F^2 u^2 W
        let g_poly = e_poly.pow(2).sub(&f_const.pow(2).mul(&u2).mul(&wsq));

        // --- side polynomials ---
        // g1: alpha1 = G^2, gamma1 = -4(1-u^2) V2 (A F u - B E)^2
        //                            -4 u^2 V2 (D F (1-u^2) - C E)^2
        let afu = a_poly.mul(&f_const).mul(&u);
        let be = b_const.mul(&e_poly);
        let dfm = d_poly.mul(&f_const).mul(&one_mu2);
        let ce = c_const.mul(&e_poly);
        let four = FieldPoly::from_int(4, ctx.clone());
        let gamma1 = four
            .mul(&one_mu2)
            .mul(&v2sq)
            .mul(&afu.sub(&be).pow(2))
            .add(&four.mul(&u2).mul(&v2sq).mul(&dfm.sub(&ce).pow(2)))
            .neg();
        let alpha1 = g_poly.pow(2);

        // s3^2 q2t^2 = N3r + N3w w; q2t^2 = q2sqr + q2sqw w
        // dxr = A - a u E, dxw = B - a F u^2, dyv = C u - b F u (1-u^2), dyu = D - b E
        let au = u.mul_scalar(&a);
        let dxr = a_poly.sub(&au.mul(&e_poly));
        let dxw = b_const.sub(&f_const.mul(&u2).mul_scalar(&a));
        let dyv = c_const.mul(&u).sub(&f_const.mul(&u).mul(&one_mu2).mul_scalar(&b));
        let dyu = d_poly.sub(&e_poly.mul_scalar(&b));
        let n3r = dxr
            .pow(2)
            .add(&dxw.pow(2).mul(&wsq))
            .add(&dyv.pow(2).mul(&v2sq))
            .add(&dyu.pow(2).mul(&one_mu2));
        let two_p = FieldPoly::from_int(2, ctx.clone());
        let n3w = two_p.mul(&dxr).mul(&dxw).add(&two_p.mul(&dyv).mul(&dyu));
        let q2sqr = e_poly.pow(2).add(&f_const.pow(2).mul(&u2).mul(&wsq));
        let q2sqw = two_p.mul(&e_poly).mul(&f_const).mul(&u);
        // alpha23 = q2sqr^2 - q2sqw^2 W
        let alpha23 = q2sqr.pow(2).sub(&q2sqw.pow(2).mul(&wsq));
        let r3 = n3r.mul(&q2sqr).sub(&n3w.mul(&q2sqw).mul(&wsq));
        let s3c = n3w.mul(&q2sqr).sub(&n3r.mul(&q2sqw));
        // w = u1 v2 as a polynomial
        let w_rad = FieldPoly::var(Var::U1, ctx.clone()).mul(&FieldPoly::var(Var::V2, ctx.clone()));
        // g3 = alpha23 s3^2 - R3 - S3 w; g2 = alpha23 s2^2 - R3 + S3 w
        let gamma3 = r3.neg().sub(&s3c.mul(&w_rad));
        let gamma2 = r3.neg().add(&s3c.mul(&w_rad));

        // locus-equation helpers
        let xnum_even = a_poly.mul(&e_poly).sub(&b_const.mul(&f_const).mul(&u).mul(&wsq));
        let xnum_odd = b_const.mul(&e_poly).sub(&a_poly.mul(&f_const).mul(&u));
        let ynum_u1 = d_poly.mul(&e_poly).sub(&c_const.mul(&f_const).mul(&u2).mul(&v2sq));
        let ynum_v2 = u.mul(&ce.sub(&dfm));

        let cval = |s: &FieldScalar| s.clone();
        VertexData {
            ctx,
            a: cval(&a),
            b: cval(&b),
            rho1,
            u1sq,
            v2sq,
            wsq,
            a_poly,
            b_const,
            c_const,
            d_poly,
            e_poly,
            f_const,
            g_poly,
            alpha1,
            gamma1,
            alpha23,
            gamma2,
            gamma3,
            xnum_even,
            xnum_odd,
            ynum_u1,
            ynum_v2,
        }
    }

    /// Float image of P2/P3 for a given u on the upper branch (tests/oracles).
    pub fn vertices_f64(&self, u: f64) -> ((f64, f64), (f64, f64), (f64, f64)) {
        let ctx = &self.ctx;
        let mut vals = std::collections::BTreeMap::new();
        let u1 = (1.0 - u * u).sqrt();
        let v2 = {
            let mut v = std::collections::BTreeMap::new();
            v.insert(Var::U, u);
            self.v2sq.eval_f64(&v).max(0.0).sqrt()
        };
        vals.insert(Var::U, u);
        vals.insert(Var::U1, u1);
        vals.insert(Var::V2, v2);
        let w = u1 * v2;
        let a_v = {
            let mut v = std::collections::BTreeMap::new();
            v.insert(Var::U, u);
            self.a_poly.eval_f64(&v)
        };
        let d_v = {
            let mut v = std::collections::BTreeMap::new();
            v.insert(Var::U, u);
            self.d_poly.eval_f64(&v)
        };
        let e_v = {
            let mut v = std::collections::BTreeMap::new();
            v.insert(Var::U, u);
            self.e_poly.eval_f64(&v)
        };
        let b_v = self.b_const.eval_f64(&Default::default());
        let c_v = self.c_const.eval_f64(&Default::default());
        let f_v = self.f_const.eval_f64(&Default::default());
        let af = self.a.to_f64(ctx);
        let bf = self.b.to_f64(ctx);
        let q2 = e_v + f_v * u * w;
        let q3 = e_v - f_v * u * w;
        let p1 = (af * u, bf * u1);
        let p2 = ((a_v + b_v * w) / q2, (c_v * u * v2 + d_v * u1) / q2);
        let p3 = ((a_v - b_v * w) / q3, (-c_v * u * v2 + d_v * u1) / q3);
        (p1, p2, p3)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigInt;

    fn data() -> VertexData {
        VertexData::new(
            Rat::new(BigInt::from(3), BigInt::from(2)),
            Rat::from_integer(BigInt::from(1)),
        )
    }

    #[test]
    fn rho1_value() {
        let d = data();
        // rho1 = c^2 (b^2+delta)^2/a^6 at a/b = 3/2 (50-digit oracle)
        let v = d.rho1.to_f64(&d.ctx);
        assert!((v - 0.95666664888376704).abs() < 1e-12, "rho1 = {v}");
        // u2 stays real on the whole branch: rho1 < 1
        assert!(v < 1.0);
    }

    #[test]
    fn denominator_degrees() {
        let d = data();
        // after clearing and cancellation E collapses to degree 2, so the
        // rational product q2t q3t = G = E^2 - F^2 u^2 W has degree 6
        assert_eq!(d.e_poly.degree(Var::U), 2);
        assert_eq!(d.g_poly.degree(Var::U), 6);
        assert!(!d.g_poly.is_zero());
    }

    #[test]
    fn g1_depends_on_u_only() {
        let d = data();
        for v in [Var::X, Var::Y, Var::U1, Var::V2, Var::S1, Var::S2, Var::S3] {
            assert_eq!(d.alpha1.degree(v), 0);
            assert_eq!(d.gamma1.degree(v), 0);
        }
    }
}
