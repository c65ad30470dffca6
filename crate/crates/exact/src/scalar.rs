//! Arithmetic in the quadratic extension Q(delta), delta^2 a fixed rational.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use std::fmt;
use std::sync::Arc;

pub type Rat = BigRational;

/// Shared field description: delta^2 = d2 (a positive rational that is not a
/// perfect square for a genuine quadratic extension).
#[derive(Clone, Debug)]
pub struct FieldCtx {
    pub d2: Rat,
    /// delta as f64 for float images.
    pub delta_f64: f64,
}

impl FieldCtx {
    pub fn new(d2: Rat) -> Arc<Self> {
        let delta_f64 = rat_f64(&d2).sqrt();
        Arc::new(FieldCtx { d2, delta_f64 })
    }

    /// Field for a billiard with rational semi-axes: delta^2 = a^4 - a^2 b^2 + b^4.
    pub fn for_shape(a: &Rat, b: &Rat) -> Arc<Self> {
        let a2 = a * a;
        let b2 = b * b;
        Self::new(&a2 * &a2 - &a2 * &b2 + &b2 * &b2)
    }
}

pub fn rat_f64(r: &Rat) -> f64 {
    let num = r.numer();
    let den = r.denom();
    // exact for small, graceful for large
    let fnum = bigint_f64(num);
    let fden = bigint_f64(den);
    fnum / fden
}

fn bigint_f64(v: &BigInt) -> f64 {
    let s = v.to_string();
    s.parse().unwrap_or(f64::NAN)
}

/// An element p + q*delta of Q(delta).
#[derive(Clone, PartialEq, Eq)]
pub struct FieldScalar {
    pub p: Rat,
    pub q: Rat,
}

impl fmt::Debug for FieldScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({} + {} d)", self.p, self.q)
    }
}

impl FieldScalar {
    pub fn zero() -> Self {
        FieldScalar {
            p: Rat::zero(),
            q: Rat::zero(),
        }
    }

    pub fn one() -> Self {
        FieldScalar {
            p: Rat::one(),
            q: Rat::zero(),
        }
    }

    pub fn from_rat(p: Rat) -> Self {
        FieldScalar { p, q: Rat::zero() }
    }

    pub fn from_int(v: i64) -> Self {
        Self::from_rat(Rat::from_integer(BigInt::from(v)))
    }

    pub fn delta() -> Self {
        FieldScalar {
            p: Rat::zero(),
            q: Rat::one(),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.p.is_zero() && self.q.is_zero()
    }

    pub fn add(&self, rhs: &Self) -> Self {
        FieldScalar {
            p: &self.p + &rhs.p,
            q: &self.q + &rhs.q,
        }
    }

    pub fn sub(&self, rhs: &Self) -> Self {
        FieldScalar {
            p: &self.p - &rhs.p,
            q: &self.q - &rhs.q,
        }
    }

    pub fn neg(&self) -> Self {
        FieldScalar {
            p: -&self.p,
            q: -&self.q,
        }
    }

    pub fn mul(&self, rhs: &Self, ctx: &FieldCtx) -> Self {
        FieldScalar {
            p: &self.p * &rhs.p + &(&self.q * &rhs.q) * &ctx.d2,
            q: &self.p * &rhs.q + &self.q * &rhs.p,
        }
    }

    pub fn mul_rat(&self, r: &Rat) -> Self {
        FieldScalar {
            p: &self.p * r,
            q: &self.q * r,
        }
    }

    /// Field norm p^2 - q^2 d2 (zero iff the element is zero when d2 is not
    /// a rational square).
    pub fn norm(&self, ctx: &FieldCtx) -> Rat {
        &self.p * &self.p - &(&self.q * &self.q) * &ctx.d2
    }

    pub fn inv(&self, ctx: &FieldCtx) -> Self {
        let n = self.norm(ctx);
        assert!(!n.is_zero(), "division by zero in Q(delta)");
        FieldScalar {
            p: &self.p / &n,
            q: -&self.q / &n,
        }
    }

    pub fn div(&self, rhs: &Self, ctx: &FieldCtx) -> Self {
        self.mul(&rhs.inv(ctx), ctx)
    }

    /// Conjugate p - q*delta.
    pub fn conj(&self) -> Self {
        FieldScalar {
            p: self.p.clone(),
            q: -&self.q,
        }
    }

    pub fn to_f64(&self, ctx: &FieldCtx) -> f64 {
        rat_f64(&self.p) + rat_f64(&self.q) * ctx.delta_f64
    }

    /// Render as "p + q*sqrt(D)" with D the numerator-normalized radicand:
    /// delta = sqrt(n/d) = sqrt(n d)/d, square factors pulled out of n d.
    pub fn render_sqrt(&self, ctx: &FieldCtx) -> String {
        if self.q.is_zero() {
            return format!("{}", self.p);
        }
        let n = ctx.d2.numer();
        let d = ctx.d2.denom();
        let (k, big_d) = extract_square(&(n * d));
        let q_scaled = &self.q * Rat::new(k, d.clone());
        let qs = if q_scaled.is_one() {
            String::new()
        } else if (-&q_scaled).is_one() {
            "-".to_string()
        } else {
            format!("{}*", q_scaled)
        };
        if self.p.is_zero() {
            format!("{qs}sqrt({big_d})")
        } else if q_scaled.is_positive() {
            let qs = if q_scaled.is_one() { String::new() } else { format!("{q_scaled}*") };
            format!("{} + {qs}sqrt({big_d})", self.p)
        } else {
            let qa = -&q_scaled;
            let qs = if qa.is_one() { String::new() } else { format!("{qa}*") };
            format!("{} - {qs}sqrt({big_d})", self.p)
        }
    }
}

/// Split v = k^2 * d with d square-free (trial division over small primes).
pub fn extract_square(v: &BigInt) -> (BigInt, BigInt) {
    let mut rest = v.clone();
    let mut k = BigInt::one();
    let mut p = BigInt::from(2);
    let limit = BigInt::from(100_000);
    while &(&p * &p) <= &rest && p <= limit {
        let p2 = &p * &p;
        while (&rest % &p2).is_zero() {
            rest /= &p2;
            k *= &p;
        }
        p += 1;
    }
    (k, rest)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ctx61() -> Arc<FieldCtx> {
        // delta = sqrt(61)/4: d2 = 61/16
        FieldCtx::new(Rat::new(BigInt::from(61), BigInt::from(16)))
    }

    #[test]
    fn field_axioms_spot_checks() {
        let ctx = ctx61();
        let a = FieldScalar {
            p: Rat::new(BigInt::from(3), BigInt::from(7)),
            q: Rat::new(BigInt::from(-2), BigInt::from(5)),
        };
        let b = FieldScalar {
            p: Rat::new(BigInt::from(1), BigInt::from(2)),
            q: Rat::new(BigInt::from(4), BigInt::from(3)),
        };
        // (a*b)*inv(b) == a
        let ab = a.mul(&b, &ctx);
        let back = ab.div(&b, &ctx);
        assert_eq!(back, a);
        // difference of squares: (x+d)(x-d) at x = 3: 9 - d2
        let x = FieldScalar::from_int(3);
        let prod = x.add(&FieldScalar::delta()).mul(&x.sub(&FieldScalar::delta()), &ctx);
        assert_eq!(prod.q, Rat::zero());
        assert_eq!(prod.p, Rat::from_integer(BigInt::from(9)) - ctx.d2.clone());
    }

    #[test]
    fn renders_table_style() {
        let ctx = ctx61();
        // 52*sqrt(61) - 413 as p + q*delta with delta = sqrt(61)/4:
        // q*delta = q*sqrt(61)/4 = 52 sqrt(61) -> q = 208
        let v = FieldScalar {
            p: Rat::from_integer(BigInt::from(-413)),
            q: Rat::from_integer(BigInt::from(208)),
        };
        // D = 61*16 -> 4^2 * 61: q k/d = 208*4/16 = 52
        assert_eq!(v.render_sqrt(&ctx), "-413 + 52*sqrt(61)");
    }
}
