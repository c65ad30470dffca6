//! Factor analysis of the elimination output: square-free splitting, conic
//! recognition, and the sample-vanishing spurious filter that automates the
//! manual branch rejection step.

use crate::chain::{ChainError, EliminationResult, FactorReport};
use crate::poly::{FieldPoly, Var};
use crate::resultant::{exact_div, gcd_univariate, remove_var_content};
use crate::scalar::FieldScalar;
use std::collections::BTreeMap;

/// Bivariate gcd in (x, y) by a primitive pseudo-remainder sequence in
/// `main`, with contents handled by univariate gcds in the other variable.
fn gcd_bivar(p: &FieldPoly, q: &FieldPoly, main: Var, other: Var) -> FieldPoly {
    if p.is_zero() {
        return q.primitive_part();
    }
    if q.is_zero() {
        return p.primitive_part();
    }
    let (pp, pc) = remove_var_content(p, other);
    let (qp, qc) = remove_var_content(q, other);
    let content_gcd = gcd_univariate(&pc, &qc, other);
    let mut f = pp;
    let mut g = qp;
    if f.degree(main) < g.degree(main) {
        std::mem::swap(&mut f, &mut g);
    }
    while !g.is_zero() && g.degree(main) > 0 {
        let r = pseudo_rem(&f, &g, main);
        let (rp, _) = remove_var_content(&r, other);
        f = g;
        g = rp.primitive_part();
        if f.degree(main) < g.degree(main) {
            std::mem::swap(&mut f, &mut g);
        }
    }
    let core = if g.is_zero() {
        // the last nonzero PRS element is the gcd up to content in `other`
        remove_var_content(&f, other).0
    } else {
        // nonzero constant-in-main remainder: coprime in main
        FieldPoly::from_int(1, p.ctx.clone())
    };
    core.mul(&content_gcd).primitive_part()
}

use crate::resultant::pseudo_rem_in as pseudo_rem;

/// Yun square-free decomposition of a bivariate polynomial with respect to
/// `main`. Returns (factor, multiplicity) pairs.
fn squarefree(p: &FieldPoly, main: Var, other: Var) -> Vec<(FieldPoly, u32)> {
    let dp = p.derivative(main);
    if dp.is_zero() {
        return vec![(p.primitive_part(), 1)];
    }
    let g0 = gcd_bivar(p, &dp, main, other);
    if g0.degree(main) == 0 && g0.degree(other) == 0 {
        return vec![(p.primitive_part(), 1)];
    }
    let mut out = Vec::new();
    let mut c = exact_div(p, &g0).expect("squarefree division");
    let mut d = exact_div(&dp, &g0)
        .expect("derivative divisible by gcd")
        .sub(&c.derivative(main));
    let mut mult = 1u32;
    loop {
        if c.degree(main) == 0 && c.degree(other) == 0 {
            break;
        }
        let gi = gcd_bivar(&c, &d, main, other);
        if !(gi.degree(main) == 0 && gi.degree(other) == 0) {
            out.push((gi.clone(), mult));
        }
        c = exact_div(&c, &gi).expect("Yun step");
        d = exact_div(&d, &gi).expect("Yun step").sub(&c.derivative(main));
        mult += 1;
    }
    out
}

/// Relative residual of P at a sample point.
fn residual(p: &FieldPoly, x: f64, y: f64) -> f64 {
    let mut vals = BTreeMap::new();
    vals.insert(Var::X, x);
    vals.insert(Var::Y, y);
    let scale = p.eval_f64_scale(&vals);
    if scale == 0.0 {
        return 0.0;
    }
    (p.eval_f64(&vals) / scale).abs()
}

const VANISH_TOL: f64 = 1e-8;

/// Split L into factors, run the sample-vanishing filter, pick the genuine
/// factor (minimal-degree vanishing one), and extract conic semi-axes.
pub fn analyze(
    center_id: String,
    l: FieldPoly,
    samples: &[(f64, f64)],
) -> Result<EliminationResult, ChainError> {
    let mut pieces: Vec<(FieldPoly, u32)> = Vec::new();
    // split off x-only and y-only components first
    let (core, x_only) = remove_var_content(&l, Var::X);
    if x_only.degree(Var::X) > 0 {
        pieces.extend(squarefree(&x_only, Var::X, Var::Y));
    }
    let (core, y_only) = remove_var_content(&core, Var::Y);
    if y_only.degree(Var::Y) > 0 {
        pieces.extend(squarefree(&y_only, Var::Y, Var::X));
    }
    if core.degree(Var::X) > 0 || core.degree(Var::Y) > 0 {
        pieces.extend(squarefree(&core, Var::Y, Var::X));
    }
    // score each factor against the samples
    let mut reports: Vec<FactorReport> = pieces
        .into_iter()
        .map(|(poly, multiplicity)| {
            let mut residuals: Vec<f64> = samples.iter().map(|&(x, y)| residual(&poly, x, y)).collect();
            residuals.sort_by(|p, q| p.partial_cmp(q).unwrap());
            let vanish = residuals.iter().filter(|r| **r < VANISH_TOL).count() as f64
                / residuals.len().max(1) as f64;
            let median = residuals.get(residuals.len() / 2).copied().unwrap_or(f64::NAN);
            FactorReport {
                poly,
                multiplicity,
                vanish_fraction: vanish,
                median_residual: median,
                genuine: false,
            }
        })
        .collect();
    // genuine: minimal total degree among factors vanishing on >= 95% of samples
    let mut genuine_index: Option<usize> = None;
    let total_degree = |p: &FieldPoly| {
        p.terms
            .keys()
            .map(|m| m.iter().map(|&e| e as u32).sum::<u32>())
            .max()
            .unwrap_or(0)
    };
    for (i, r) in reports.iter().enumerate() {
        if r.vanish_fraction >= 0.95 {
            match genuine_index {
                None => genuine_index = Some(i),
                Some(j) if total_degree(&r.poly) < total_degree(&reports[j].poly) => {
                    genuine_index = Some(i)
                }
                _ => {}
            }
        }
    }
    let genuine_index = match genuine_index {
        Some(i) => i,
        None => return Err(ChainError::NoVanishingFactor),
    };
    reports[genuine_index].genuine = true;

    // conic extraction
    let gp = &reports[genuine_index].poly;
    let conic = as_conic(gp);
    let implied = conic.as_ref().and_then(|(al, be, ga)| {
        let ctx = &gp.ctx;
        let av = al.to_f64(ctx);
        let bv = be.to_f64(ctx);
        let gv = ga.to_f64(ctx);
        if av != 0.0 && bv != 0.0 && (gv / av) < 0.0 && (gv / bv) < 0.0 {
            Some(((-gv / av).sqrt(), (-gv / bv).sqrt()))
        } else {
            None
        }
    });
    Ok(EliminationResult {
        center_id,
        l_poly: l,
        factors: reports,
        genuine_index: Some(genuine_index),
        implied_semiaxes: implied,
        conic,
    })
}

/// Recognize alpha x^2 + beta y^2 + gamma.
pub fn as_conic(p: &FieldPoly) -> Option<(FieldScalar, FieldScalar, FieldScalar)> {
    let mut alpha = FieldScalar::zero();
    let mut beta = FieldScalar::zero();
    let mut gamma = FieldScalar::zero();
    for (m, c) in &p.terms {
        let (ex, ey) = (m[Var::X as usize], m[Var::Y as usize]);
        if m.iter().enumerate().any(|(i, &e)| i != Var::X as usize && i != Var::Y as usize && e != 0) {
            return None;
        }
        match (ex, ey) {
            (2, 0) => alpha = c.clone(),
            (0, 2) => beta = c.clone(),
            (0, 0) => gamma = c.clone(),
            _ => return None,
        }
    }
    if alpha.is_zero() || beta.is_zero() {
        return None;
    }
    Some((alpha, beta, gamma))
}

impl EliminationResult {
    /// Structured text report: factors in canonical monomial order with
    /// FieldScalar coefficients rendered as p + q*sqrt(D).
    pub fn render(&self) -> String {
        let mut out = String::new();
        out.push_str(&format!("implicitization report for {}\n", self.center_id));
        for (i, f) in self.factors.iter().enumerate() {
            let tag = if f.genuine { "genuine " } else { "spurious" };
            out.push_str(&format!(
                "factor {i} [{tag}] multiplicity {} vanish {:.0}% median residual {:.2e}\n  {}\n",
                f.multiplicity,
                f.vanish_fraction * 100.0,
                f.median_residual,
                f.poly.render()
            ));
        }
        if let Some((a, b)) = self.implied_semiaxes {
            out.push_str(&format!("implied semi-axes: a_i = {a:.9}, b_i = {b:.9}\n"));
        }
        out
    }

    /// True when the genuine factor is Q(delta)-proportional to
    /// alpha x^2 + beta y^2 + gamma.
    pub fn genuine_proportional_to(
        &self,
        alpha: &FieldScalar,
        beta: &FieldScalar,
        gamma: &FieldScalar,
    ) -> bool {
        let Some((a, b, g)) = &self.conic else {
            return false;
        };
        let ctx = &self.l_poly.ctx;
        // a*beta == b*alpha and a*gamma' == g*alpha
        a.mul(beta, ctx) == b.mul(alpha, ctx) && a.mul(gamma, ctx) == g.mul(alpha, ctx)
    }
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
    fn unit_circle_analysis() {
        let c = ctx();
        let x = FieldPoly::var(Var::X, c.clone());
        let y = FieldPoly::var(Var::Y, c.clone());
        let circ = x.pow(2).add(&y.pow(2)).sub(&FieldPoly::from_int(1, c.clone()));
        let samples: Vec<(f64, f64)> = (0..32)
            .map(|k| {
                let t = 0.2 + k as f64 * 0.19;
                (t.cos(), t.sin())
            })
            .collect();
        let res = analyze("circle".into(), circ, &samples).unwrap();
        assert_eq!(res.implied_semiaxes, Some((1.0, 1.0)));
    }

    #[test]
    fn picks_vanishing_factor_from_product() {
        let c = ctx();
        let x = FieldPoly::var(Var::X, c.clone());
        let y = FieldPoly::var(Var::Y, c.clone());
        let one = FieldPoly::from_int(1, c.clone());
        let circ = x.pow(2).add(&y.pow(2)).sub(&one);
        // spurious: (x^2 - 9)^2 against circle samples
        let spur = x.pow(2).sub(&FieldPoly::from_int(9, c.clone()));
        let l = circ.pow(3).mul(&spur.pow(2));
        let samples: Vec<(f64, f64)> = (0..40)
            .map(|k| {
                let t = 0.1 + k as f64 * 0.155;
                (t.cos(), t.sin())
            })
            .collect();
        let res = analyze("test".into(), l, &samples).unwrap();
        let gi = res.genuine_index.unwrap();
        assert_eq!(res.factors[gi].multiplicity, 3);
        assert_eq!(res.implied_semiaxes, Some((1.0, 1.0)));
        // the spurious factor is reported but not genuine
        assert!(res.factors.iter().any(|f| !f.genuine && f.multiplicity == 2));
    }

    #[test]
    fn squarefree_splits_multiplicities() {
        let c = ctx();
        let x = FieldPoly::var(Var::X, c.clone());
        let y = FieldPoly::var(Var::Y, c.clone());
        let one = FieldPoly::from_int(1, c.clone());
        let f1 = x.add(&y).add(&one);
        let f2 = x.sub(&y.pow(2)).add(&FieldPoly::from_int(3, c.clone()));
        let p = f1.pow(2).mul(&f2.pow(3));
        let parts = squarefree(&p, Var::Y, Var::X);
        let mut mults: Vec<u32> = parts.iter().map(|(_, m)| *m).collect();
        mults.sort();
        assert_eq!(mults, vec![2, 3]);
    }
}
