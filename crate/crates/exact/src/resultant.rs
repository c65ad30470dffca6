//! Resultants and variable elimination.
//!
//! Two engines: a generic Sylvester determinant via fraction-free Bareiss
//! elimination (used for the final Res_u), and a quadratic-relation
//! eliminator for relations alpha v^2 + gamma = 0 (the sidelength relations
//! and both radical relations have this shape), which avoids Sylvester
//! entirely via the even/odd norm.

use crate::poly::{FieldPoly, Var};
use crate::scalar::FieldScalar;

#[derive(Clone, Debug, PartialEq)]
pub enum ResultantError {
    ZeroInput,
    /// Inputs share a factor in the eliminated variable (resultant vanishes).
    IdenticallyZero,
}

impl std::fmt::Display for ResultantError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            ResultantError::ZeroInput => write!(f, "resultant of zero polynomial"),
            ResultantError::IdenticallyZero => write!(f, "resultant vanished identically"),
        }
    }
}

impl std::error::Error for ResultantError {}

/// Sylvester-matrix resultant of p and q with respect to `v`, computed by
/// fraction-free Bareiss elimination over the coefficient ring.
pub fn resultant(p: &FieldPoly, q: &FieldPoly, v: Var) -> Result<FieldPoly, ResultantError> {
    if p.is_zero() || q.is_zero() {
        return Err(ResultantError::ZeroInput);
    }
    let pc = p.split_by(v);
    let qc = q.split_by(v);
    let dp = *pc.keys().max().unwrap() as usize;
    let dq = *qc.keys().max().unwrap() as usize;
    if dp == 0 && dq == 0 {
        return Err(ResultantError::ZeroInput);
    }
    let ctx = p.ctx.clone();
    let zero = FieldPoly::zero(ctx.clone());
    let n = dp + dq;
    let coeff = |map: &std::collections::BTreeMap<u16, FieldPoly>, e: usize| -> FieldPoly {
        map.get(&(e as u16)).cloned().unwrap_or_else(|| zero.clone())
    };
    // rows: dq rows of p-coefficients, dp rows of q-coefficients
    let mut m: Vec<Vec<FieldPoly>> = Vec::with_capacity(n);
    for r in 0..dq {
        let mut row = vec![zero.clone(); n];
        for (k, item) in row.iter_mut().enumerate().skip(r).take(dp + 1) {
            *item = coeff(&pc, dp - (k - r));
        }
        m.push(row);
    }
    for r in 0..dp {
        let mut row = vec![zero.clone(); n];
        for (k, item) in row.iter_mut().enumerate().skip(r).take(dq + 1) {
            *item = coeff(&qc, dq - (k - r));
        }
        m.push(row);
    }
    bareiss_determinant(m)
}

/// Fraction-free Bareiss determinant over the polynomial ring; exact
/// divisions are guaranteed by the algorithm.
pub fn bareiss_determinant(mut m: Vec<Vec<FieldPoly>>) -> Result<FieldPoly, ResultantError> {
    let n = m.len();
    if n == 0 {
        return Err(ResultantError::ZeroInput);
    }
    let ctx = m[0][0].ctx.clone();
    let mut sign = false;
    let mut prev = FieldPoly::from_int(1, ctx.clone());
    for k in 0..n - 1 {
        if m[k][k].is_zero() {
            // pivot search; an all-zero column means the determinant is zero
            let swap = (k + 1..n).find(|&r| !m[r][k].is_zero());
            match swap {
                Some(r) => {
                    m.swap(k, r);
                    sign = !sign;
                }
                None => return Ok(FieldPoly::zero(ctx)),
            }
        }
        let pivot = m[k][k].clone();
        for i in k + 1..n {
            for j in k + 1..n {
                let t = m[i][j].mul(&pivot).sub(&m[i][k].mul(&m[k][j]));
                m[i][j] = exact_div(&t, &prev).expect("Bareiss division must be exact");
            }
            m[i][k] = FieldPoly::zero(ctx.clone());
        }
        prev = pivot;
    }
    let det = m[n - 1][n - 1].clone();
    Ok(if sign { det.neg() } else { det })
}

/// Exact multivariate division: returns Some(q) with p = q*d, or None.
pub fn exact_div(p: &FieldPoly, d: &FieldPoly) -> Option<FieldPoly> {
    if p.is_zero() {
        return Some(p.clone());
    }
    if d.is_zero() {
        return None;
    }
    if d.num_terms() == 1 {
        // monomial divisor fast path
        let (dm, dc) = d.terms.iter().next_back().unwrap();
        let dinv = dc.inv(&d.ctx);
        let mut out = FieldPoly::zero(p.ctx.clone());
        for (m, c) in &p.terms {
            let mut q = *m;
            for i in 0..crate::poly::NVARS {
                if m[i] < dm[i] {
                    return None;
                }
                q[i] = m[i] - dm[i];
            }
            out.terms.insert(q, c.mul(&dinv, &p.ctx));
        }
        return Some(out);
    }
    let mut rem = p.clone();
    let mut quot = FieldPoly::zero(p.ctx.clone());
    let (dlm, dlc) = d.terms.iter().next_back().map(|(m, c)| (*m, c.clone())).unwrap();
    let dlc_inv = dlc.inv(&d.ctx);
    while !rem.is_zero() {
        let (rm, rc) = rem.terms.iter().next_back().map(|(m, c)| (*m, c.clone())).unwrap();
        let mut qm = [0u16; crate::poly::NVARS];
        for i in 0..crate::poly::NVARS {
            if rm[i] < dlm[i] {
                return None;
            }
            qm[i] = rm[i] - dlm[i];
        }
        let qc = rc.mul(&dlc_inv, &p.ctx);
        let qterm = FieldPoly::monomial(qm, qc, p.ctx.clone());
        quot = quot.add(&qterm);
        rem = rem.sub(&qterm.mul(d));
    }
    Some(quot)
}

/// Eliminate `v` from `p`, given the relation alpha v^2 + gamma = 0 where
/// alpha and gamma are free of `v`. The output vanishes on the common zero
/// set (its zero set may be a superset: spurious branches are filtered
/// downstream).
pub fn eliminate_quadratic(
    p: &FieldPoly,
    v: Var,
    alpha: &FieldPoly,
    gamma: &FieldPoly,
) -> FieldPoly {
    let parts = p.split_by(v);
    let deg = parts.keys().max().copied().unwrap_or(0);
    if deg == 0 {
        return p.clone();
    }
    let ctx = p.ctx.clone();
    // even/odd split in v: p = pe(z) + v po(z), z = v^2
    let mut pe: std::collections::BTreeMap<u16, FieldPoly> = Default::default();
    let mut po: std::collections::BTreeMap<u16, FieldPoly> = Default::default();
    for (e, c) in parts {
        if e % 2 == 0 {
            pe.insert(e / 2, c);
        } else {
            po.insert(e / 2, c);
        }
    }
    let zmul = |a: &std::collections::BTreeMap<u16, FieldPoly>,
                b: &std::collections::BTreeMap<u16, FieldPoly>| {
        let mut out: std::collections::BTreeMap<u16, FieldPoly> = Default::default();
        for (e1, c1) in a {
            for (e2, c2) in b {
                let prod = c1.mul(c2);
                match out.get_mut(&(e1 + e2)) {
                    Some(cur) => *cur = cur.add(&prod),
                    None => {
                        out.insert(e1 + e2, prod);
                    }
                }
            }
        }
        out
    };
    // t(z) = pe^2 - z po^2
    let mut t = zmul(&pe, &pe);
    if !po.is_empty() {
        for (e, c) in zmul(&po, &po) {
            let cur = t
                .entry(e + 1)
                .or_insert_with(|| FieldPoly::zero(ctx.clone()));
            *cur = cur.sub(&c);
        }
    }
    let dz = *t.keys().max().unwrap();
    // substitute z -> -gamma/alpha, cleared by alpha^dz
    let neg_gamma = gamma.neg();
    let mut gamma_pow = vec![FieldPoly::from_int(1, ctx.clone())];
    for e in 1..=dz {
        gamma_pow.push(gamma_pow[(e - 1) as usize].mul(&neg_gamma));
    }
    let mut alpha_pow = vec![FieldPoly::from_int(1, ctx.clone())];
    for e in 1..=dz {
        alpha_pow.push(alpha_pow[(e - 1) as usize].mul(alpha));
    }
    let mut acc = FieldPoly::zero(ctx);
    for (e, c) in t {
        acc = acc.add(&c.mul(&gamma_pow[e as usize]).mul(&alpha_pow[(dz - e) as usize]));
    }
    acc
}

/// Univariate gcd over Q(delta) in variable `v` (all other variables must be
/// absent), via a primitive pseudo-remainder sequence: coefficient growth is
/// kept polynomial by re-normalizing to primitive parts between steps.
pub fn gcd_univariate(a: &FieldPoly, b: &FieldPoly, v: Var) -> FieldPoly {
    let mut f = a.primitive_part();
    let mut g = b.primitive_part();
    if f.is_zero() {
        return g;
    }
    if g.is_zero() {
        return f;
    }
    if f.degree(v) < g.degree(v) {
        std::mem::swap(&mut f, &mut g);
    }
    while !g.is_zero() {
        if g.degree(v) == 0 {
            return FieldPoly::from_int(1, a.ctx.clone());
        }
        let r = pseudo_rem_in(&f, &g, v).primitive_part();
        f = g;
        g = r;
    }
    f.primitive_part()
}

/// Pseudo-remainder lc(g)^k f mod g with respect to `v` (no field inverses).
pub fn pseudo_rem_in(f: &FieldPoly, g: &FieldPoly, v: Var) -> FieldPoly {
    let dg = g.degree(v);
    let glead = coeff_of_var(g, v, dg);
    let mut rem = f.clone();
    while !rem.is_zero() {
        let dr = rem.degree(v);
        if dr < dg {
            break;
        }
        let rlead = coeff_of_var(&rem, v, dr);
        let mut shift = [0u16; crate::poly::NVARS];
        shift[v as usize] = dr - dg;
        let shift_m = FieldPoly::monomial(shift, FieldScalar::one(), rem.ctx.clone());
        rem = rem.mul(&glead).sub(&g.mul(&rlead).mul(&shift_m));
    }
    rem
}

/// Coefficient of v^e as a polynomial in the remaining variables.
pub fn coeff_of_var(p: &FieldPoly, v: Var, e: u16) -> FieldPoly {
    let mut out = FieldPoly::zero(p.ctx.clone());
    for (m, c) in &p.terms {
        if m[v as usize] == e {
            let mut m2 = *m;
            m2[v as usize] = 0;
            out.terms.insert(m2, c.clone());
        }
    }
    out
}

/// Remove the common univariate-in-`content_var` factor of the coefficients
/// of p (viewed as a polynomial in the remaining variables). Returns the
/// content-free part and the content.
pub fn remove_var_content(p: &FieldPoly, content_var: Var) -> (FieldPoly, FieldPoly) {
    if p.is_zero() {
        return (p.clone(), FieldPoly::from_int(1, p.ctx.clone()));
    }
    // group the terms by their non-content monomial
    let mut groups: std::collections::BTreeMap<crate::poly::Mono, FieldPoly> = Default::default();
    for (m, c) in &p.terms {
        let mut key = *m;
        key[content_var as usize] = 0;
        let mut um = [0u16; crate::poly::NVARS];
        um[content_var as usize] = m[content_var as usize];
        let piece = FieldPoly::monomial(um, c.clone(), p.ctx.clone());
        match groups.get_mut(&key) {
            Some(cur) => *cur = cur.add(&piece),
            None => {
                groups.insert(key, piece);
            }
        }
    }
    let mut g: Option<FieldPoly> = None;
    for c in groups.values() {
        g = Some(match g {
            None => c.clone(),
            Some(prev) => gcd_univariate(&prev, c, content_var),
        });
        if let Some(ref gg) = g {
            if gg.degree(content_var) == 0 {
                return (p.primitive_part(), FieldPoly::from_int(1, p.ctx.clone()));
            }
        }
    }
    let g = g.unwrap();
    let mut out = FieldPoly::zero(p.ctx.clone());
    for (key, c) in groups {
        let q = exact_div(&c, &g).expect("content division must be exact");
        out = out.add(&q.mul(&FieldPoly::monomial(key, FieldScalar::one(), p.ctx.clone())));
    }
    (out.primitive_part(), g)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{FieldCtx, Rat};
    use num_bigint::BigInt;
    use std::sync::Arc;

    fn ctx() -> Arc<FieldCtx> {
        FieldCtx::new(Rat::new(BigInt::from(61), BigInt::from(16)))
    }

    #[test]
    fn hand_computable_resultant() {
        let c = ctx();
        let x = FieldPoly::var(Var::X, c.clone());
        let y = FieldPoly::var(Var::Y, c.clone());
        let one = FieldPoly::from_int(1, c.clone());
        // Res(x^2 + y^2 - 1, x - y, x) = 2y^2 - 1 up to unit
        let p = x.pow(2).add(&y.pow(2)).sub(&one);
        let q = x.sub(&y);
        let r = resultant(&p, &q, Var::X).unwrap().primitive_part();
        let expect = y.pow(2).mul_scalar(&FieldScalar::from_int(2)).sub(&one).primitive_part();
        assert_eq!(r, expect);
    }

    #[test]
    fn common_root_gives_zero() {
        let c = ctx();
        let x = FieldPoly::var(Var::X, c.clone());
        let three = FieldPoly::from_int(3, c.clone());
        let p = x.sub(&three);
        assert!(resultant(&p, &p, Var::X).unwrap().is_zero());
    }

    #[test]
    fn quadratic_elimination_is_norm() {
        let c = ctx();
        // relation: v^2 = 1 - u^2 (alpha = 1, gamma = u^2 - 1)
        let u = FieldPoly::var(Var::U, c.clone());
        let u1 = FieldPoly::var(Var::U1, c.clone());
        let one = FieldPoly::from_int(1, c.clone());
        let alpha = one.clone();
        let gamma = u.pow(2).sub(&one);
        // p = x - u1: eliminating u1 gives x^2 - (1 - u^2)
        let x = FieldPoly::var(Var::X, c.clone());
        let p = x.sub(&u1);
        let e = eliminate_quadratic(&p, Var::U1, &alpha, &gamma);
        let expect = x.pow(2).add(&u.pow(2)).sub(&one);
        assert_eq!(e.primitive_part(), expect.primitive_part());
    }

    #[test]
    fn exact_division_round_trip() {
        let c = ctx();
        let x = FieldPoly::var(Var::X, c.clone());
        let y = FieldPoly::var(Var::Y, c.clone());
        let p = x.pow(3).add(&y.pow(2)).add(&FieldPoly::from_int(7, c.clone()));
        let d = x.add(&y).add(&FieldPoly::from_int(2, c.clone()));
        let prod = p.mul(&d);
        let q = exact_div(&prod, &d).unwrap();
        assert_eq!(q, p);
        assert_eq!(exact_div(&p, &d), None);
    }

    #[test]
    fn var_content_removal() {
        let c = ctx();
        let x = FieldPoly::var(Var::X, c.clone());
        let u = FieldPoly::var(Var::U, c.clone());
        let one = FieldPoly::from_int(1, c.clone());
        // (u^2 - 1) * (x + u)
        let p = u.pow(2).sub(&one).mul(&x.add(&u));
        let (core, content) = remove_var_content(&p, Var::U);
        assert_eq!(content.degree(Var::U), 2);
        assert_eq!(core, x.add(&u).primitive_part());
    }
}
