//! The elimination chain: from a rational center function to the bivariate
//! locus polynomial L(x, y).
//!
//! Steps (fixed order s1, s2, s3, u1, u2, u; alternates via `swap_s_order`):
//!  1. Build E0 = Q - x R and F0 = S - y T from the trilinear-to-Cartesian
//!     map with the center's trilinears substituted.
//!  2. Eliminate s1, s2, s3 via the side relations g_i (all quadratic).
//!  3. Eliminate the radicals u1 (u1^2 + u^2 - 1) and v2 = delta1 u2
//!     (v2^2 = delta1^2(1 - rho1 u^2)).
//!  4. Remove u-content from both sides (shared u-only factors would kill
//!     the final resultant) and take Res_u.

use crate::poly::{FieldPoly, Var};
use crate::resultant::{eliminate_quadratic, remove_var_content, resultant, ResultantError};
use crate::scalar::{FieldScalar, Rat};
use crate::vertex::VertexData;
use std::fmt;

/// A center whose trilinears are rational in the sidelengths: h = num/den.
#[derive(Clone, Debug)]
pub struct RationalCenter {
    pub id: String,
    /// numerator of h(s1, s2, s3) as a polynomial in S1, S2, S3
    pub num: FieldPoly,
    /// denominator of h(s1, s2, s3)
    pub den: FieldPoly,
}

#[derive(Clone, Debug, PartialEq)]
pub enum ChainError {
    /// Intermediate monomial support exceeded the budget.
    DegreeBlowup { terms: usize, budget: usize },
    /// Center function is not rational in the sidelengths.
    NotRational,
    Resultant(ResultantError),
    /// No factor of L vanishes on the sampled locus.
    NoVanishingFactor,
}

impl fmt::Display for ChainError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ChainError::DegreeBlowup { terms, budget } => {
                write!(f, "monomial support {terms} exceeded budget {budget}")
            }
            ChainError::NotRational => write!(f, "center function is not rational"),
            ChainError::Resultant(e) => write!(f, "{e}"),
            ChainError::NoVanishingFactor => write!(f, "no factor vanishes on the locus samples"),
        }
    }
}

impl std::error::Error for ChainError {}

impl From<ResultantError> for ChainError {
    fn from(e: ResultantError) -> Self {
        ChainError::Resultant(e)
    }
}

/// A factor of L with its multiplicity and sample-residual statistics.
#[derive(Clone, Debug)]
pub struct FactorReport {
    pub poly: FieldPoly,
    pub multiplicity: u32,
    /// Fraction of locus samples where the factor's relative residual is
    /// below the vanishing tolerance.
    pub vanish_fraction: f64,
    /// Median relative residual on the samples.
    pub median_residual: f64,
    pub genuine: bool,
}

/// Output of the elimination chain.
pub struct EliminationResult {
    pub center_id: String,
    pub l_poly: FieldPoly,
    pub factors: Vec<FactorReport>,
    pub genuine_index: Option<usize>,
    /// Semi-axes implied by the genuine factor when it is a conic.
    pub implied_semiaxes: Option<(f64, f64)>,
    /// Exact conic data (alpha, beta, gamma) for alpha x^2 + beta y^2 + gamma.
    pub conic: Option<(FieldScalar, FieldScalar, FieldScalar)>,
}

/// Options for the elimination run.
pub struct ChainOptions {
    pub monomial_budget: usize,
    /// Eliminate s3 before s2 (blowup mitigation).
    pub swap_s_order: bool,
    pub verbose: bool,
}

impl Default for ChainOptions {
    fn default() -> Self {
        ChainOptions {
            monomial_budget: 2_000_000,
            swap_s_order: false,
            verbose: false,
        }
    }
}

/// Build E0 (x side) and F0 (y side) for the center's trilinears.
///
/// With w_i the cleared trilinear weights p_i' s_i:
/// ```text
/// E0 = x (w1+w2+w3) G - w1 a u G - (w2+w3) Xe - (w2-w3) Xo u1 v2
/// F0 = y (w1+w2+w3) G - u1 [ w1 b G + (w2+w3) Yu ] - v2 (w2-w3) Yv
/// ```
pub fn build_locus_equations(
    data: &VertexData,
    center: &RationalCenter,
) -> Result<(FieldPoly, FieldPoly), ChainError> {
    let ctx = data.ctx.clone();
    // cyclic images of num/den
    let cyc = |p: &FieldPoly, k: usize| -> FieldPoly {
        // map s1->s2->s3->s1 applied k times
        let mut out = FieldPoly::zero(ctx.clone());
        for (m, c) in &p.terms {
            let mut m2 = *m;
            let s = [
                m[Var::S1 as usize],
                m[Var::S2 as usize],
                m[Var::S3 as usize],
            ];
            m2[Var::S1 as usize] = s[(3 - k) % 3];
            m2[Var::S2 as usize] = s[(4 - k) % 3];
            m2[Var::S3 as usize] = s[(5 - k) % 3];
            out.terms.insert(m2, c.clone());
        }
        out
    };
    let n1 = center.num.clone();
    let d1 = center.den.clone();
    let n2 = cyc(&center.num, 1);
    let d2 = cyc(&center.den, 1);
    let n3 = cyc(&center.num, 2);
    let d3 = cyc(&center.den, 2);
    // cleared weights: w_i = n_i * prod_{j != i} d_j * s_i
    let s1 = FieldPoly::var(Var::S1, ctx.clone());
    let s2 = FieldPoly::var(Var::S2, ctx.clone());
    let s3 = FieldPoly::var(Var::S3, ctx.clone());
    let w1 = n1.mul(&d2).mul(&d3).mul(&s1);
    let w2 = n2.mul(&d1).mul(&d3).mul(&s2);
    let w3 = n3.mul(&d1).mul(&d2).mul(&s3);
    let wsum = w1.add(&w2).add(&w3);
    let wplus = w2.add(&w3);
    let wminus = w2.sub(&w3);

    let x = FieldPoly::var(Var::X, ctx.clone());
    let y = FieldPoly::var(Var::Y, ctx.clone());
    let u = FieldPoly::var(Var::U, ctx.clone());
    let u1 = FieldPoly::var(Var::U1, ctx.clone());
    let v2 = FieldPoly::var(Var::V2, ctx.clone());
    let au = u.mul_scalar(&data.a);
    let e0 = x
        .mul(&wsum)
        .mul(&data.g_poly)
        .sub(&w1.mul(&au).mul(&data.g_poly))
        .sub(&wplus.mul(&data.xnum_even))
        .sub(&wminus.mul(&data.xnum_odd).mul(&u1).mul(&v2));
    let f0 = y
        .mul(&wsum)
        .mul(&data.g_poly)
        .sub(
            &u1.mul(
                &w1.mul(&data.g_poly).mul_scalar(&data.b)
                    .add(&wplus.mul(&data.ynum_u1)),
            ),
        )
        .sub(&v2.mul(&wminus).mul(&data.ynum_v2));
    let aux = [Var::U, Var::U1, Var::V2, Var::S1, Var::S2, Var::S3];
    Ok((
        e0.reduce_radicals(&data.u1sq, &data.v2sq)
            .remove_monomial_content(&aux)
            .primitive_part(),
        f0.reduce_radicals(&data.u1sq, &data.v2sq)
            .remove_monomial_content(&aux)
            .primitive_part(),
    ))
}

/// Run the full chain for one side (E or F), returning the u-only+main-var
/// polynomial.
fn eliminate_side(
    data: &VertexData,
    p0: &FieldPoly,
    opts: &ChainOptions,
    label: &str,
) -> Result<FieldPoly, ChainError> {
    let mut p = p0.clone();
    let one = FieldPoly::from_int(1, data.ctx.clone());
    let s_order: Vec<(Var, &FieldPoly, &FieldPoly)> = if opts.swap_s_order {
        vec![
            (Var::S1, &data.alpha1, &data.gamma1),
            (Var::S3, &data.alpha23, &data.gamma3),
            (Var::S2, &data.alpha23, &data.gamma2),
        ]
    } else {
        vec![
            (Var::S1, &data.alpha1, &data.gamma1),
            (Var::S2, &data.alpha23, &data.gamma2),
            (Var::S3, &data.alpha23, &data.gamma3),
        ]
    };
    for (v, alpha, gamma) in s_order {
        if p.degree(v) == 0 {
            continue;
        }
        if opts.verbose {
            eprintln!("  [{label}] eliminating {v:?}: deg={} terms={}", p.degree(v), p.num_terms());
        }
        p = eliminate_quadratic(&p, v, alpha, gamma)
            .reduce_radicals(&data.u1sq, &data.v2sq);
        if opts.verbose {
            eprintln!("  [{label}] raw result terms={}", p.num_terms());
        }
        p = prune(&p, opts, label)?;
    }
    // radical eliminations: u1^2 = u1sq, v2^2 = v2sq (alpha = 1, gamma = -sq)
    if p.degree(Var::U1) > 0 {
        p = eliminate_quadratic(&p, Var::U1, &one, &data.u1sq.neg())
            .reduce_radicals(&data.u1sq, &data.v2sq);
        p = prune(&p, opts, label)?;
    }
    if p.degree(Var::V2) > 0 {
        p = eliminate_quadratic(&p, Var::V2, &one, &data.v2sq.neg());
        p = prune(&p, opts, label)?;
    }
    debug_assert_eq!(p.degree(Var::U1), 0);
    debug_assert_eq!(p.degree(Var::V2), 0);
    Ok(p)
}

fn prune(p: &FieldPoly, opts: &ChainOptions, label: &str) -> Result<FieldPoly, ChainError> {
    if p.num_terms() > opts.monomial_budget {
        return Err(ChainError::DegreeBlowup {
            terms: p.num_terms(),
            budget: opts.monomial_budget,
        });
    }
    // monomial factors in the auxiliary variables are never on the locus
    let core = p.remove_monomial_content(&[Var::U, Var::U1, Var::V2, Var::S1, Var::S2, Var::S3]);
    let (core, _content) = remove_var_content(&core.primitive_part(), Var::U);
    if opts.verbose {
        eprintln!(
            "  [{label}] deg_u={} terms={} coeff~1e{:.0}",
            core.degree(Var::U),
            core.num_terms(),
            core.coeff_magnitude().abs().log10()
        );
    }
    Ok(core)
}

/// Full elimination chain; the caller supplies locus samples for the
/// spurious filter.
pub fn eliminate_chain(
    a: Rat,
    b: Rat,
    center: &RationalCenter,
    samples: &[(f64, f64)],
    opts: &ChainOptions,
) -> Result<EliminationResult, ChainError> {
    let data = VertexData::new(a, b);
    let (e0, f0) = build_locus_equations(&data, center)?;
    let e5 = eliminate_side(&data, &e0, opts, "E")?;
    let f5 = eliminate_side(&data, &f0, opts, "F")?;
    // drop shared u-only content (otherwise Res_u == 0)
    let (e5, _) = remove_var_content(&e5, Var::U);
    let (f5, _) = remove_var_content(&f5, Var::U);
    if opts.verbose {
        eprintln!(
            "  final: deg_u E={} F={}, deg_x={}, deg_y={}",
            e5.degree(Var::U),
            f5.degree(Var::U),
            e5.degree(Var::X),
            f5.degree(Var::Y)
        );
    }
    let l = resultant(&e5, &f5, Var::U)?.primitive_part();
    crate::factor::analyze(center.id.clone(), l, samples)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::Var;
    use num_bigint::BigInt;

    fn shape32() -> (Rat, Rat) {
        (
            Rat::new(BigInt::from(3), BigInt::from(2)),
            Rat::from_integer(BigInt::from(1)),
        )
    }

    /// X2: h = 1/s1.
    pub fn center_x2(ctx: std::sync::Arc<crate::scalar::FieldCtx>) -> RationalCenter {
        RationalCenter {
            id: "X2".into(),
            num: FieldPoly::from_int(1, ctx.clone()),
            den: FieldPoly::var(Var::S1, ctx),
        }
    }

    #[test]
    fn locus_equations_vanish_on_orbit_samples() {
        let (a, b) = shape32();
        let data = VertexData::new(a, b);
        let center = center_x2(data.ctx.clone());
        let (e0, f0) = build_locus_equations(&data, &center).unwrap();
        // float orbit at u = cos t (upper branch) and the centroid position
        for t in [0.37f64, 0.9, 1.4] {
            let u = t.cos();
            let (p1, p2, p3) = data.vertices_f64(u);
            let x = (p1.0 + p2.0 + p3.0) / 3.0;
            let y = (p1.1 + p2.1 + p3.1) / 3.0;
            let s1 = ((p3.0 - p2.0).powi(2) + (p3.1 - p2.1).powi(2)).sqrt();
            let s2 = ((p1.0 - p3.0).powi(2) + (p1.1 - p3.1).powi(2)).sqrt();
            let s3 = ((p2.0 - p1.0).powi(2) + (p2.1 - p1.1).powi(2)).sqrt();
            let mut vals = std::collections::BTreeMap::new();
            vals.insert(Var::X, x);
            vals.insert(Var::Y, y);
            vals.insert(Var::U, u);
            vals.insert(Var::U1, (1.0 - u * u).sqrt());
            let mut vv = std::collections::BTreeMap::new();
            vv.insert(Var::U, u);
            vals.insert(Var::V2, data.v2sq.eval_f64(&vv).sqrt());
            vals.insert(Var::S1, s1);
            vals.insert(Var::S2, s2);
            vals.insert(Var::S3, s3);
            let re = e0.eval_f64(&vals) / e0.eval_f64_scale(&vals);
            let rf = f0.eval_f64(&vals) / f0.eval_f64_scale(&vals);
            assert!(re.abs() < 1e-12, "E0 residual {re} at t={t}");
            assert!(rf.abs() < 1e-12, "F0 residual {rf} at t={t}");
        }
    }
}
