//! Sparse multivariate polynomials over Q(delta), with the two radical
//! variables U1, V2 kept square-reduced via their defining relations.

use crate::scalar::{rat_f64, FieldCtx, FieldScalar, Rat};
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

/// Variables of the elimination ambient.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum Var {
    X = 0,
    Y = 1,
    U = 2,
    U1 = 3,
    V2 = 4,
    S1 = 5,
    S2 = 6,
    S3 = 7,
}

pub const NVARS: usize = 8;

pub type Mono = [u16; NVARS];

/// Canonical sorted-monomial sparse polynomial.
#[derive(Clone)]
pub struct FieldPoly {
    pub terms: BTreeMap<Mono, FieldScalar>,
    pub ctx: Arc<FieldCtx>,
}

impl PartialEq for FieldPoly {
    fn eq(&self, other: &Self) -> bool {
        self.terms == other.terms
    }
}

impl Eq for FieldPoly {}

impl fmt::Debug for FieldPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.render())
    }
}

impl FieldPoly {
    pub fn zero(ctx: Arc<FieldCtx>) -> Self {
        FieldPoly {
            terms: BTreeMap::new(),
            ctx,
        }
    }

    pub fn constant(c: FieldScalar, ctx: Arc<FieldCtx>) -> Self {
        let mut p = Self::zero(ctx);
        if !c.is_zero() {
            p.terms.insert([0; NVARS], c);
        }
        p
    }

    pub fn from_int(v: i64, ctx: Arc<FieldCtx>) -> Self {
        Self::constant(FieldScalar::from_int(v), ctx)
    }

    pub fn var(v: Var, ctx: Arc<FieldCtx>) -> Self {
        let mut mono = [0u16; NVARS];
        mono[v as usize] = 1;
        let mut p = Self::zero(ctx);
        p.terms.insert(mono, FieldScalar::one());
        p
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn degree(&self, v: Var) -> u16 {
        self.terms.keys().map(|m| m[v as usize]).max().unwrap_or(0)
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn add(&self, rhs: &Self) -> Self {
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            match out.terms.get_mut(m) {
                Some(cur) => {
                    let s = cur.add(c);
                    if s.is_zero() {
                        out.terms.remove(m);
                    } else {
                        *cur = s;
                    }
                }
                None => {
                    out.terms.insert(*m, c.clone());
                }
            }
        }
        out
    }

    pub fn sub(&self, rhs: &Self) -> Self {
        self.add(&rhs.neg())
    }

    pub fn neg(&self) -> Self {
        let mut out = self.clone();
        for c in out.terms.values_mut() {
            *c = c.neg();
        }
        out
    }

    pub fn mul(&self, rhs: &Self) -> Self {
        let mut acc: BTreeMap<Mono, FieldScalar> = BTreeMap::new();
        for (m1, c1) in &self.terms {
            for (m2, c2) in &rhs.terms {
                let mut m = *m1;
                for i in 0..NVARS {
                    m[i] += m2[i];
                }
                let prod = c1.mul(c2, &self.ctx);
                match acc.get_mut(&m) {
                    Some(cur) => {
                        let s = cur.add(&prod);
                        if s.is_zero() {
                            acc.remove(&m);
                        } else {
                            *cur = s;
                        }
                    }
                    None => {
                        acc.insert(m, prod);
                    }
                }
            }
        }
        FieldPoly {
            terms: acc,
            ctx: self.ctx.clone(),
        }
    }

    pub fn mul_scalar(&self, c: &FieldScalar) -> Self {
        if c.is_zero() {
            return Self::zero(self.ctx.clone());
        }
        let mut out = self.clone();
        for v in out.terms.values_mut() {
            *v = v.mul(c, &self.ctx);
        }
        out
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = Self::from_int(1, self.ctx.clone());
        let mut base = self.clone();
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base);
            }
        }
        acc
    }

    /// Reduce U1^2 -> u1sq(U) and V2^2 -> v2sq(U) until exponents are <= 1.
    pub fn reduce_radicals(&self, u1sq: &FieldPoly, v2sq: &FieldPoly) -> Self {
        let mut out = Self::zero(self.ctx.clone());
        for (m, c) in &self.terms {
            let e1 = m[Var::U1 as usize];
            let e2 = m[Var::V2 as usize];
            if e1 < 2 && e2 < 2 {
                out = out.add(&Self::monomial(*m, c.clone(), self.ctx.clone()));
                continue;
            }
            let mut base = *m;
            base[Var::U1 as usize] = e1 % 2;
            base[Var::V2 as usize] = e2 % 2;
            let mut piece = Self::monomial(base, c.clone(), self.ctx.clone());
            if e1 >= 2 {
                piece = piece.mul(&u1sq.pow((e1 / 2) as u32));
            }
            if e2 >= 2 {
                piece = piece.mul(&v2sq.pow((e2 / 2) as u32));
            }
            // the multiplications above cannot re-introduce high radical
            // powers: u1sq/v2sq are U-only
            out = out.add(&piece);
        }
        out
    }

    pub fn monomial(m: Mono, c: FieldScalar, ctx: Arc<FieldCtx>) -> Self {
        let mut p = Self::zero(ctx);
        if !c.is_zero() {
            p.terms.insert(m, c);
        }
        p
    }

    /// Coefficients as polynomials in all variables except `v`, keyed by the
    /// exponent of `v`.
    pub fn split_by(&self, v: Var) -> BTreeMap<u16, FieldPoly> {
        let mut out: BTreeMap<u16, FieldPoly> = BTreeMap::new();
        for (m, c) in &self.terms {
            let e = m[v as usize];
            let mut rest = *m;
            rest[v as usize] = 0;
            out.entry(e)
                .or_insert_with(|| Self::zero(self.ctx.clone()))
                .terms
                .insert(rest, c.clone());
        }
        out
    }

    /// Substitute every occurrence of `v` with the polynomial `p` (used for
    /// registering exact relations; exponential in degree, fine for the small
    /// substitutions used here).
    pub fn substitute(&self, v: Var, p: &FieldPoly) -> Self {
        let parts = self.split_by(v);
        let mut out = Self::zero(self.ctx.clone());
        for (e, coeff) in parts {
            out = out.add(&coeff.mul(&p.pow(e as u32)));
        }
        out
    }

    /// Exact evaluation at FieldScalar points for the given variables
    /// (variables not in the map must not occur).
    pub fn eval_scalar(&self, vals: &BTreeMap<Var, FieldScalar>) -> FieldScalar {
        let mut acc = FieldScalar::zero();
        for (m, c) in &self.terms {
            let mut term = c.clone();
            for i in 0..NVARS {
                let e = m[i];
                if e == 0 {
                    continue;
                }
                let var = VAR_LIST[i];
                let v = vals.get(&var).expect("missing variable value");
                for _ in 0..e {
                    term = term.mul(v, &self.ctx);
                }
            }
            acc = acc.add(&term);
        }
        acc
    }

    /// Approximate evaluation at float points.
    pub fn eval_f64(&self, vals: &BTreeMap<Var, f64>) -> f64 {
        let mut acc = 0.0;
        for (m, c) in &self.terms {
            let mut term = c.to_f64(&self.ctx);
            for i in 0..NVARS {
                let e = m[i];
                if e == 0 {
                    continue;
                }
                let v = vals
                    .get(&VAR_LIST[i])
                    .copied()
                    .unwrap_or_else(|| panic!("missing value for {:?}", VAR_LIST[i]));
                term *= v.powi(e as i32);
            }
            acc += term;
        }
        acc
    }

    /// Maximum |coefficient| as f64, for relative residual scaling.
    pub fn eval_f64_scale(&self, vals: &BTreeMap<Var, f64>) -> f64 {
        let mut acc = 0.0f64;
        for (m, c) in &self.terms {
            let mut term = c.to_f64(&self.ctx).abs();
            for i in 0..NVARS {
                let e = m[i];
                if e == 0 {
                    continue;
                }
                let v = vals.get(&VAR_LIST[i]).copied().unwrap_or(f64::NAN);
                term *= v.abs().powi(e as i32);
            }
            acc += term;
        }
        acc
    }

    /// Divide all coefficients by the rational content and make the result
    /// integral and primitive (content-free in the spec's sense). Idempotent.
    pub fn primitive_part(&self) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        // lcm of denominators, gcd of numerators over both components
        let mut den_lcm = BigInt::one();
        let mut num_gcd = BigInt::zero();
        for c in self.terms.values() {
            for r in [&c.p, &c.q] {
                if r.is_zero() {
                    continue;
                }
                den_lcm = den_lcm.lcm(r.denom());
                num_gcd = num_gcd.gcd(r.numer());
            }
        }
        if num_gcd.is_zero() {
            return self.clone();
        }
        let scale = Rat::new(den_lcm, num_gcd);
        // normalize sign on the leading (last in BTree order) coefficient
        let mut out = self.clone();
        for c in out.terms.values_mut() {
            *c = c.mul_rat(&scale);
        }
        if let Some(c) = out.terms.values().next_back() {
            let lead = if !c.p.is_zero() { &c.p } else { &c.q };
            if lead.is_negative() {
                for c in out.terms.values_mut() {
                    *c = c.neg();
                }
            }
        }
        out
    }

    /// Divide out the largest common monomial in the given variables
    /// (coordinate-hyperplane factors are never part of the real locus).
    pub fn remove_monomial_content(&self, vars: &[Var]) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        let mut min = [u16::MAX; NVARS];
        for m in self.terms.keys() {
            for i in 0..NVARS {
                min[i] = min[i].min(m[i]);
            }
        }
        let mut mask = [0u16; NVARS];
        for &v in vars {
            mask[v as usize] = min[v as usize];
        }
        if mask.iter().all(|&e| e == 0) {
            return self.clone();
        }
        let mut out = Self::zero(self.ctx.clone());
        for (m, c) in &self.terms {
            let mut m2 = *m;
            for i in 0..NVARS {
                m2[i] -= mask[i];
            }
            out.terms.insert(m2, c.clone());
        }
        out
    }

    /// Derivative with respect to `v`.
    pub fn derivative(&self, v: Var) -> Self {
        let mut out = Self::zero(self.ctx.clone());
        for (m, c) in &self.terms {
            let e = m[v as usize];
            if e == 0 {
                continue;
            }
            let mut m2 = *m;
            m2[v as usize] = e - 1;
            out.terms
                .insert(m2, c.mul_rat(&Rat::from_integer(BigInt::from(e))));
        }
        out
    }

    /// Rendering in canonical monomial order.
    pub fn render(&self) -> String {
        if self.is_zero() {
            return "0".to_string();
        }
        let names = ["x", "y", "u", "u1", "v2", "s1", "s2", "s3"];
        let mut parts: Vec<String> = Vec::new();
        for (m, c) in self.terms.iter().rev() {
            let mut mono = String::new();
            for i in 0..NVARS {
                if m[i] > 0 {
                    mono.push_str(names[i]);
                    if m[i] > 1 {
                        mono.push_str(&format!("^{}", m[i]));
                    }
                    mono.push(' ');
                }
            }
            let cs = c.render_sqrt(&self.ctx);
            let body = if mono.is_empty() {
                format!("({cs})")
            } else {
                format!("({cs}) {}", mono.trim_end())
            };
            parts.push(body);
        }
        parts.join(" + ")
    }

    /// Float magnitude of the largest coefficient (diagnostics).
    pub fn coeff_magnitude(&self) -> f64 {
        self.terms
            .values()
            .map(|c| rat_f64(&c.p).abs().max(rat_f64(&c.q).abs()))
            .fold(0.0, f64::max)
    }
}

pub const VAR_LIST: [Var; NVARS] = [
    Var::X,
    Var::Y,
    Var::U,
    Var::U1,
    Var::V2,
    Var::S1,
    Var::S2,
    Var::S3,
];

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigInt;

    fn ctx() -> Arc<FieldCtx> {
        FieldCtx::new(Rat::new(BigInt::from(61), BigInt::from(16)))
    }

    #[test]
    fn difference_of_squares_with_delta() {
        let c = ctx();
        let x = FieldPoly::var(Var::X, c.clone());
        let d = FieldPoly::constant(FieldScalar::delta(), c.clone());
        let prod = x.add(&d).mul(&x.sub(&d));
        // x^2 - d2
        let mut expect = FieldPoly::var(Var::X, c.clone()).pow(2);
        expect = expect.sub(&FieldPoly::constant(
            FieldScalar::from_rat(c.d2.clone()),
            c.clone(),
        ));
        assert_eq!(prod, expect);
    }

    #[test]
    fn eval_and_primitive() {
        let c = ctx();
        // 6 x^2 + 10 x -> primitive 3 x^2 + 5 x
        let x = FieldPoly::var(Var::X, c.clone());
        let p = x.pow(2).mul_scalar(&FieldScalar::from_int(6)).add(&x.mul_scalar(&FieldScalar::from_int(10)));
        let prim = p.primitive_part();
        let expect = x.pow(2).mul_scalar(&FieldScalar::from_int(3)).add(&x.mul_scalar(&FieldScalar::from_int(5)));
        assert_eq!(prim, expect);
        assert_eq!(prim.primitive_part(), prim);
        let mut vals = BTreeMap::new();
        vals.insert(Var::X, 1.0);
        assert_eq!(prim.eval_f64(&vals), 8.0);
        // eval of x^2 + y^2 - 1 at (1, 0) is 0
        let y = FieldPoly::var(Var::Y, c.clone());
        let circ = x.pow(2).add(&y.pow(2)).sub(&FieldPoly::from_int(1, c.clone()));
        let mut vals = BTreeMap::new();
        vals.insert(Var::X, 1.0);
        vals.insert(Var::Y, 0.0);
        assert_eq!(circ.eval_f64(&vals), 0.0);
    }

    #[test]
    fn radical_reduction() {
        let c = ctx();
        let u = FieldPoly::var(Var::U, c.clone());
        let u1 = FieldPoly::var(Var::U1, c.clone());
        let one = FieldPoly::from_int(1, c.clone());
        let u1sq = one.sub(&u.pow(2));
        let v2sq = FieldPoly::from_int(7, c.clone());
        // u1^3 -> u1 (1 - u^2)
        let p = u1.pow(3).reduce_radicals(&u1sq, &v2sq);
        let expect = u1.mul(&u1sq);
        assert_eq!(p, expect);
    }
}
