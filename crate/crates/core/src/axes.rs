//! Closed-form semi-axes for the 29 elliptic triangle-center loci, their
//! similarity classes, and the special aspect ratios where loci coincide
//! with the billiard.
//!
//! The w'/w''/w helper decomposition of the source tables is kept verbatim
//! where it checks out. Two published helpers fail the numeric gates against
//! the fitted loci and are replaced by reconstructed forms: for X21 the w'
//! quartic needs a leading-2 on the v^4 term, and for X46 the w quintic is in
//! u, not v. Both corrected forms are validated against high-precision fits
//! at many aspect ratios.

use crate::billiard::BilliardShape;
use std::fmt;

/// The canonical 29-member elliptic set (ids within X1..X100).
pub const ELLIPTIC_IDS: [u32; 29] = [
    1, 2, 3, 4, 5, 7, 8, 10, 11, 12, 20, 21, 35, 36, 40, 46, 55, 56, 57, 63, 65, 72, 78, 79, 80,
    84, 88, 90, 100,
];

#[derive(Clone, Debug, PartialEq)]
pub enum AxesError {
    /// Center is not in the 29-member elliptic set.
    NotElliptic(u32),
    /// Center has no catalogued special aspect ratio.
    NoSpecialRatio(u32),
}

impl fmt::Display for AxesError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            AxesError::NotElliptic(id) => write!(f, "X{id} is not in the elliptic set"),
            AxesError::NoSpecialRatio(id) => write!(f, "X{id} has no special aspect ratio"),
        }
    }
}

impl std::error::Error for AxesError {}

/// Similarity of a locus to the billiard (B), the caustic (C) or the
/// excentral locus (J); `+` means identical, `t` a 90-degree-rotated copy.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Similarity {
    Billiard,
    BilliardIdentical,
    BilliardRotated,
    Caustic,
    CausticIdentical,
    CausticRotated,
    Excentral,
    ExcentralRotated,
    None,
}

impl fmt::Display for Similarity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Similarity::Billiard => "B",
            Similarity::BilliardIdentical => "B+",
            Similarity::BilliardRotated => "Bt",
            Similarity::Caustic => "C",
            Similarity::CausticIdentical => "C+",
            Similarity::CausticRotated => "Ct",
            Similarity::Excentral => "J",
            Similarity::ExcentralRotated => "Jt",
            Similarity::None => "-",
        };
        write!(f, "{s}")
    }
}

/// Closed-form semi-axes (a_i, b_i) of the locus of X_i.
pub fn semiaxes(center_id: u32, shape: &BilliardShape) -> Result<(f64, f64), AxesError> {
    let (a, b) = (shape.a(), shape.b());
    let (a2, b2) = (a * a, b * b);
    let c2 = shape.c2();
    let d = shape.delta();
    let pair = match center_id {
        1 => ((d - b2) / a, (a2 - d) / b),
        2 => {
            let k = (2.0 * d - a2 - b2) / (3.0 * c2);
            (k * a, k * b)
        }
        3 => ((a2 - d) / (2.0 * a), (d - b2) / (2.0 * b)),
        4 => {
            let k = ((a2 + b2) * d - 2.0 * a2 * b2) / c2;
            (k / a, k / b)
        }
        5 => {
            let wp = |u: f64, v: f64| u * u * (u * u + 3.0 * v * v);
            let wpp = |u: f64, v: f64| 3.0 * u * u + v * v;
            let w = |u: f64, v: f64| 4.0 * u * (u * u - v * v);
            (
                (-wp(a, b) + wpp(a, b) * d) / w(a, b),
                (wp(b, a) - wpp(b, a) * d) / w(b, a),
            )
        }
        7 => {
            let k = (2.0 * d - a2 - b2) / c2;
            (k * a, k * b)
        }
        8 => ((b2 - d).powi(2) / (a * c2), (a2 - d).powi(2) / (b * c2)),
        10 => {
            let k = ((a2 + b2) * d - a2 * a2 - b2 * b2) / (2.0 * c2);
            (k / a, k / b)
        }
        11 => shape.caustic_axes(),
        12 => {
            let wp = |u: f64, v: f64| {
                v * v
                    * (15.0 * u.powi(6)
                        + 12.0 * v * v * u.powi(4)
                        + 3.0 * u * u * v.powi(4)
                        + 2.0 * v.powi(6))
            };
            let wpp = |u: f64, v: f64| {
                7.0 * u.powi(6) + 12.0 * v * v * u.powi(4) + 11.0 * u * u * v.powi(4)
                    + 2.0 * v.powi(6)
            };
            let w = |u: f64, v: f64| {
                u * (7.0 * u.powi(6) + 11.0 * v * v * u.powi(4)
                    - 11.0 * u * u * v.powi(4)
                    - 7.0 * v.powi(6))
            };
            (
                (-wp(a, b) + wpp(a, b) * d) / w(a, b),
                (wp(b, a) - wpp(b, a) * d) / w(b, a),
            )
        }
        20 => (
            (a2 * (3.0 * b2 - a2) - 2.0 * b2 * d) / (a * c2),
            (b2 * (b2 - 3.0 * a2) + 2.0 * a2 * d) / (b * c2),
        ),
        21 => {
            // corrected w': u^4 + u^2 v^2 + 2 v^4
            let wp = |u: f64, v: f64| u.powi(4) + u * u * v * v + 2.0 * v.powi(4);
            let wpp = |u: f64, v: f64| 2.0 * (u * u + v * v);
            let w = |u: f64, v: f64| u * (3.0 * u * u + 5.0 * v * v);
            (
                (-wp(a, b) + wpp(a, b) * d) / w(a, b),
                (wp(b, a) - wpp(b, a) * d) / w(b, a),
            )
        }
        35 => {
            let wp = |u: f64, v: f64| v * v * (11.0 * u.powi(4) + 4.0 * u * u * v * v + v.powi(4));
            let wpp = |u: f64, v: f64| (7.0 * u * u + v * v) * (u * u + v * v);
            let w = |u: f64, v: f64| u * (7.0 * u.powi(4) + 18.0 * u * u * v * v + 7.0 * v.powi(4));
            (
                (-wp(a, b) + wpp(a, b) * d) / w(a, b),
                (-wp(b, a) + wpp(b, a) * d) / w(b, a),
            )
        }
        36 => {
            let wp = |u: f64, v: f64| v * v * (u * u + v * v);
            let wpp = |u: f64, v: f64| 3.0 * u * u - v * v;
            let w = |u: f64, v: f64| 3.0 * u * (u * u - v * v);
            (
                (wp(a, b) + wpp(a, b) * d) / w(a, b),
                (-wp(b, a) - wpp(b, a) * d) / w(b, a),
            )
        }
        40 => (c2 / a, c2 / b),
        46 => {
            let wp = |u: f64, v: f64| v * v * (3.0 * u * u - v * v) * (u * u - v * v);
            let wpp = |u: f64, v: f64| (5.0 * u * u + v * v) * (u * u - v * v);
            // corrected w: leading u, not v
            let w = |u: f64, v: f64| u * (5.0 * u.powi(4) - 6.0 * u * u * v * v + 5.0 * v.powi(4));
            (
                (wp(a, b) + wpp(a, b) * d) / w(a, b),
                (-wp(b, a) - wpp(b, a) * d) / w(b, a),
            )
        }
        55 => (a * (d - b2) / (a2 + b2), b * (a2 - d) / (a2 + b2)),
        56 => {
            let wp = |u: f64, v: f64| v * v * (u.powi(4) - u * u * v * v + 2.0 * v.powi(4));
            let wpp = |u: f64, v: f64| 5.0 * u.powi(4) - 5.0 * u * u * v * v + 2.0 * v.powi(4);
            let w = |u: f64, v: f64| u * (5.0 * u.powi(4) - 6.0 * u * u * v * v + 5.0 * v.powi(4));
            (
                (-wp(a, b) + wpp(a, b) * d) / w(a, b),
                (wp(b, a) - wpp(b, a) * d) / w(b, a),
            )
        }
        57 => {
            let k = c2 / d;
            (k * a, k * b)
        }
        63 => {
            let k = c2 / (a2 + b2);
            (k * a, k * b)
        }
        65 => {
            let wp = |u: f64, v: f64| u.powi(4) * v * v + u * u * v.powi(4) + 2.0 * v.powi(6);
            let wpp = |u: f64, v: f64| u.powi(4) - 3.0 * u * u * v * v - 2.0 * v.powi(4);
            let w = |u: f64, v: f64| u * (u * u - v * v).powi(2);
            (
                (wp(a, b) + wpp(a, b) * d) / w(a, b),
                (-wp(b, a) - wpp(b, a) * d) / w(b, a),
            )
        }
        72 => {
            let wp = |u: f64, v: f64| u.powi(6) + 2.0 * u * u * v.powi(4) + v.powi(6);
            let wpp = |u: f64, v: f64| (3.0 * u * u + v * v) * v * v;
            let w = |u: f64, v: f64| u * (u * u - v * v).powi(2);
            (
                (wp(a, b) - wpp(a, b) * d) / w(a, b),
                (-wp(b, a) + wpp(b, a) * d) / w(b, a),
            )
        }
        78 => {
            let wp = |u: f64, v: f64| {
                5.0 * u.powi(6) - 4.0 * u.powi(4) * v * v + u * u * v.powi(4) + 2.0 * v.powi(6)
            };
            let wpp = |u: f64, v: f64| 2.0 * v * v * (u * u + v * v);
            let w = |u: f64, v: f64| u * (5.0 * u.powi(4) - 6.0 * v * v * u * u + 5.0 * v.powi(4));
            (
                (wp(a, b) - wpp(a, b) * d) / w(a, b),
                (-wp(b, a) + wpp(b, a) * d) / w(b, a),
            )
        }
        79 => {
            let wp = |u: f64, v: f64| v * v * (11.0 * u.powi(4) + 4.0 * u * u * v * v + v.powi(4));
            let wpp = |u: f64, v: f64| 3.0 * u.powi(4) + 12.0 * u * u * v * v + v.powi(4);
            let w = |u: f64, v: f64| u * (u * u - v * v) * (3.0 * u * u + 5.0 * v * v);
            (
                (-wp(a, b) + wpp(a, b) * d) / w(a, b),
                (wp(b, a) - wpp(b, a) * d) / w(b, a),
            )
        }
        80 => (
            (d - b2) * (a2 + b2) / (a * c2),
            (a2 - d) * (a2 + b2) / (b * c2),
        ),
        84 => ((b2 + d) * c2 / a.powi(3), (a2 + d) * c2 / b.powi(3)),
        88 | 100 => (a, b),
        90 => {
            let wp = |u: f64, v: f64| v * v * (3.0 * u * u - v * v) * (u * u - v * v);
            let wpp = |u: f64, v: f64| u.powi(4) - v.powi(4);
            let w = |u: f64, v: f64| u * (u.powi(4) + 2.0 * u * u * v * v - 7.0 * v.powi(4));
            (
                (wp(a, b) + wpp(a, b) * d) / w(a, b),
                (wp(b, a) + wpp(b, a) * d) / w(b, a),
            )
        }
        other => return Err(AxesError::NotElliptic(other)),
    };
    // Several printed closed forms evaluate negative on part of the ratio
    // range (their magnitude is the semi-axis); normalize to lengths.
    Ok((pair.0.abs(), pair.1.abs()))
}

/// Semi-axes of the excentral-triangle vertex locus:
/// a_e = (b^2 + delta)/a, b_e = (a^2 + delta)/b. Similar to the X1 locus
/// rotated by 90 degrees: a_1/b_1 = b_e/a_e.
pub fn excentral_axes(shape: &BilliardShape) -> (f64, f64) {
    let (a, b) = (shape.a(), shape.b());
    let d = shape.delta();
    ((b * b + d) / a, (a * a + d) / b)
}

/// Similarity class of a locus per the summary table.
pub fn similarity_class(center_id: u32) -> Result<Similarity, AxesError> {
    if !ELLIPTIC_IDS.contains(&center_id) {
        return Err(AxesError::NotElliptic(center_id));
    }
    Ok(match center_id {
        2 | 7 | 57 | 63 => Similarity::Billiard,
        88 | 100 => Similarity::BilliardIdentical,
        4 | 10 | 40 => Similarity::BilliardRotated,
        55 => Similarity::Caustic,
        11 => Similarity::CausticIdentical,
        3 | 84 => Similarity::CausticRotated,
        72 => Similarity::Excentral,
        1 | 80 => Similarity::ExcentralRotated,
        _ => Similarity::None,
    })
}

/// A catalogued special aspect ratio and the property it triggers.
#[derive(Clone, Debug, PartialEq)]
pub struct SpecialRatio {
    pub a_over_b: f64,
    pub property: &'static str,
}

/// Aspect ratios at which a locus touches or coincides with the billiard.
pub fn special_ratios(center_id: u32) -> Result<Vec<SpecialRatio>, AxesError> {
    match center_id {
        3 => Ok(vec![SpecialRatio {
            a_over_b: ((2.0 * 33.0f64.sqrt() + 2.0).sqrt()) / 2.0,
            property: "b_3 = b (locus touches the billiard top and bottom)",
        }]),
        4 => Ok(vec![
            SpecialRatio {
                a_over_b: (2.0 * 2.0f64.sqrt() - 1.0).sqrt(),
                property: "b_4 = b (locus touches the billiard top and bottom)",
            },
            SpecialRatio {
                a_over_b: positive_root_x4_sextic(),
                property: "(a_4, b_4) = (b, a) (locus is a rotated copy of the billiard)",
            },
        ]),
        40 => Ok(vec![
            SpecialRatio {
                a_over_b: 2.0f64.sqrt(),
                property: "b_40 = b (locus touches the billiard top and bottom)",
            },
            SpecialRatio {
                a_over_b: (1.0 + 5.0f64.sqrt()) / 2.0,
                property: "(a_40, b_40) = (b, a) (locus is a rotated copy of the billiard)",
            },
        ]),
        other => Err(AxesError::NoSpecialRatio(other)),
    }
}

/// Positive root of x^6 + x^4 - 4x^3 - x^2 - 1, bisected to 1e-15.
pub fn positive_root_x4_sextic() -> f64 {
    let f = |x: f64| x.powi(6) + x.powi(4) - 4.0 * x.powi(3) - x * x - 1.0;
    let (mut lo, mut hi) = (1.0f64, 2.0f64);
    debug_assert!(f(lo) < 0.0 && f(hi) > 0.0);
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if f(mid) < 0.0 {
            lo = mid;
        } else {
            hi = mid;
        }
        if hi - lo < 1e-16 {
            break;
        }
    }
    0.5 * (lo + hi)
}

/// One machine-readable catalog row for docs generation.
#[derive(Clone, Debug)]
pub struct CatalogRow {
    pub id: u32,
    pub a_expr: &'static str,
    pub b_expr: &'static str,
    pub similarity: Similarity,
}

/// The catalog as data: id, closed-form expressions in (a, b, delta, c2),
/// similarity class.
pub fn catalog_table() -> Vec<CatalogRow> {
    let rows: Vec<(u32, &'static str, &'static str)> = vec![
        (1, "(delta - b^2)/a", "(a^2 - delta)/b"),
        (2, "a (2 delta - a^2 - b^2)/(3 c^2)", "b (2 delta - a^2 - b^2)/(3 c^2)"),
        (3, "(a^2 - delta)/(2a)", "(delta - b^2)/(2b)"),
        (4, "((a^2+b^2) delta - 2 a^2 b^2)/(a c^2)", "((a^2+b^2) delta - 2 a^2 b^2)/(b c^2)"),
        (5, "(-w5'(a,b) + w5''(a,b) delta)/w5(a,b)", "(w5'(b,a) - w5''(b,a) delta)/w5(b,a)"),
        (7, "a (2 delta - a^2 - b^2)/c^2", "b (2 delta - a^2 - b^2)/c^2"),
        (8, "(b^2 - delta)^2/(a c^2)", "(a^2 - delta)^2/(b c^2)"),
        (10, "((a^2+b^2) delta - a^4 - b^4)/(2 a c^2)", "((a^2+b^2) delta - a^4 - b^4)/(2 b c^2)"),
        (11, "a (delta - b^2)/c^2", "b (a^2 - delta)/c^2"),
        (12, "(-w12'(a,b) + w12''(a,b) delta)/w12(a,b)", "(w12'(b,a) - w12''(b,a) delta)/w12(b,a)"),
        (20, "(a^2(3b^2 - a^2) - 2 b^2 delta)/(a c^2)", "(b^2(b^2 - 3a^2) + 2 a^2 delta)/(b c^2)"),
        (21, "(-w21'(a,b) + w21''(a,b) delta)/w21(a,b)  [w21' = u^4 + u^2 v^2 + 2 v^4]",
            "(w21'(b,a) - w21''(b,a) delta)/w21(b,a)"),
        (35, "(-w35'(a,b) + w35''(a,b) delta)/w35(a,b)", "(-w35'(b,a) + w35''(b,a) delta)/w35(b,a)"),
        (36, "(w36'(a,b) + w36''(a,b) delta)/w36(a,b)", "(-w36'(b,a) - w36''(b,a) delta)/w36(b,a)"),
        (40, "c^2/a", "c^2/b"),
        (46, "(w46'(a,b) + w46''(a,b) delta)/w46(a,b)  [w46 = u(5u^4 - 6u^2v^2 + 5v^4)]",
            "(-w46'(b,a) - w46''(b,a) delta)/w46(b,a)"),
        (55, "a (delta - b^2)/(a^2 + b^2)", "b (a^2 - delta)/(a^2 + b^2)"),
        (56, "(-w56'(a,b) + w56''(a,b) delta)/w56(a,b)", "(w56'(b,a) - w56''(b,a) delta)/w56(b,a)"),
        (57, "a c^2/delta", "b c^2/delta"),
        (63, "a c^2/(a^2 + b^2)", "b c^2/(a^2 + b^2)"),
        (65, "(w65'(a,b) + w65''(a,b) delta)/w65(a,b)", "(-w65'(b,a) - w65''(b,a) delta)/w65(b,a)"),
        (72, "(w72'(a,b) - w72''(a,b) delta)/w72(a,b)", "(-w72'(b,a) + w72''(b,a) delta)/w72(b,a)"),
        (78, "(w78'(a,b) - w78''(a,b) delta)/w78(a,b)", "(-w78'(b,a) + w78''(b,a) delta)/w78(b,a)"),
        (79, "(-w79'(a,b) + w79''(a,b) delta)/w79(a,b)", "(w79'(b,a) - w79''(b,a) delta)/w79(b,a)"),
        (80, "(delta - b^2)(a^2 + b^2)/(a c^2)", "(a^2 - delta)(a^2 + b^2)/(b c^2)"),
        (84, "(b^2 + delta) c^2/a^3", "(a^2 + delta) c^2/b^3"),
        (88, "a", "b"),
        (90, "(w90'(a,b) + w90''(a,b) delta)/w90(a,b)", "(w90'(b,a) + w90''(b,a) delta)/w90(b,a)"),
        (100, "a", "b"),
    ];
    rows.into_iter()
        .map(|(id, a_expr, b_expr)| CatalogRow {
            id,
            a_expr,
            b_expr,
            similarity: similarity_class(id).unwrap(),
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn shape() -> BilliardShape {
        BilliardShape::new(1.5, 1.0).unwrap()
    }

    #[test]
    fn zariski_values() {
        let s = shape();
        let (a1, b1) = semiaxes(1, &s).unwrap();
        assert!((a1 - 0.63504).abs() < 5e-5 && (b1 - 0.29744).abs() < 5e-5);
        let (a2, b2) = semiaxes(2, &s).unwrap();
        assert!((a2 - 0.26205).abs() < 5e-5 && (b2 - 0.1747).abs() < 5e-5);
        let (a3, b3) = semiaxes(3, &s).unwrap();
        assert!((a3 - 0.099146).abs() < 5e-5 && (b3 - 0.4763).abs() < 5e-5);
    }

    #[test]
    fn x40_row() {
        let s = shape();
        let (a40, b40) = semiaxes(40, &s).unwrap();
        assert!((a40 - 1.25 / 1.5).abs() < 1e-14);
        assert!((b40 - 1.25).abs() < 1e-14);
    }

    #[test]
    fn x88_x100_are_billiard() {
        let s = shape();
        assert_eq!(semiaxes(88, &s).unwrap(), (1.5, 1.0));
        assert_eq!(semiaxes(100, &s).unwrap(), (1.5, 1.0));
    }

    #[test]
    fn rejects_non_elliptic() {
        assert!(matches!(semiaxes(6, &shape()), Err(AxesError::NotElliptic(6))));
        assert!(similarity_class(37).is_err());
    }

    #[test]
    fn excentral_matches_reference() {
        let s = shape();
        let (ae, be) = excentral_axes(&s);
        // oracle: fit of the sampled excenter locus (1.9683749462, 4.2025624190)
        assert!((ae - 1.9683749459844424).abs() < 1e-12);
        assert!((be - 4.2025624189766636).abs() < 1e-12);
        // similar to the 90-degree-rotated X1 locus
        let (a1, b1) = semiaxes(1, &s).unwrap();
        assert!((a1 / b1 - be / ae).abs() < 1e-12);
    }

    #[test]
    fn k_factor_forms() {
        let s = shape();
        for id in [2u32, 7, 57, 63] {
            let (ai, bi) = semiaxes(id, &s).unwrap();
            assert!((ai / bi - s.a() / s.b()).abs() < 1e-12, "X{id} not k(a,b)");
        }
    }

    #[test]
    fn similarity_ratios_hold() {
        let s = shape();
        let (ac, bc) = s.caustic_axes();
        let (ae, be) = excentral_axes(&s);
        for row in catalog_table() {
            let (ai, bi) = semiaxes(row.id, &s).unwrap();
            let (ai, bi) = (ai.abs(), bi.abs());
            let ratio = ai / bi;
            let ok = match row.similarity {
                Similarity::Billiard => (ratio - s.a() / s.b()).abs() < 1e-12,
                Similarity::BilliardIdentical => {
                    (ai - s.a()).abs() < 1e-12 && (bi - s.b()).abs() < 1e-12
                }
                Similarity::BilliardRotated => (ratio - s.b() / s.a()).abs() < 1e-12,
                Similarity::Caustic => (ratio - ac / bc).abs() < 1e-12,
                Similarity::CausticIdentical => {
                    (ai - ac).abs() < 1e-12 && (bi - bc).abs() < 1e-12
                }
                Similarity::CausticRotated => (ratio - bc / ac).abs() < 1e-12,
                Similarity::Excentral => (ratio - ae / be).abs() < 1e-12,
                Similarity::ExcentralRotated => (ratio - be / ae).abs() < 1e-12,
                Similarity::None => true,
            };
            assert!(ok, "similarity check failed for X{}", row.id);
        }
    }

    #[test]
    fn special_ratio_x40_golden() {
        let phi = (1.0 + 5.0f64.sqrt()) / 2.0;
        let s = BilliardShape::new(phi, 1.0).unwrap();
        let (a40, b40) = semiaxes(40, &s).unwrap();
        assert!((a40 - 1.0).abs() < 1e-12 && (b40 - phi).abs() < 1e-12);
        let r2 = BilliardShape::new(2.0f64.sqrt(), 1.0).unwrap();
        let (_, b40) = semiaxes(40, &r2).unwrap();
        assert!((b40 - 1.0).abs() < 1e-12);
    }

    #[test]
    fn positivity_over_ratio_range() {
        for k in 0..200 {
            let r = 1.01 + (5.0 - 1.01) * k as f64 / 199.0;
            let s = BilliardShape::new(r, 1.0).unwrap();
            for id in ELLIPTIC_IDS {
                let (ai, bi) = semiaxes(id, &s).unwrap();
                assert!(ai.abs() > 0.0 && bi.abs() > 0.0, "X{id} at a/b={r}");
            }
        }
    }
}
