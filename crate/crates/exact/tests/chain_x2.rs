//! End-to-end elimination for the centroid at a/b = 3/2: the genuine factor
//! must be Q(sqrt61)-proportional to 100 x^2 + 225 y^2 + 52 sqrt(61) - 413.

use loci_exact::chain::{eliminate_chain, ChainOptions, RationalCenter};
use loci_exact::poly::{FieldPoly, Var};
use loci_exact::scalar::{FieldCtx, FieldScalar, Rat};
use loci_exact::vertex::VertexData;
use num_bigint::BigInt;

fn shape32() -> (Rat, Rat) {
    (
        Rat::new(BigInt::from(3), BigInt::from(2)),
        Rat::from_integer(BigInt::from(1)),
    )
}

fn centroid_samples(data: &VertexData, n: usize) -> Vec<(f64, f64)> {
    (0..n)
        .map(|k| {
            let t = 0.11 + 2.9 * k as f64 / n as f64;
            let (p1, p2, p3) = data.vertices_f64(t.cos());
            ((p1.0 + p2.0 + p3.0) / 3.0, (p1.1 + p2.1 + p3.1) / 3.0)
        })
        .collect()
}

#[test]
fn x2_zariski_factor() {
    let (a, b) = shape32();
    let data = VertexData::new(a.clone(), b.clone());
    let samples = centroid_samples(&data, 40);
    let center = RationalCenter {
        id: "X2".into(),
        num: FieldPoly::from_int(1, data.ctx.clone()),
        den: FieldPoly::var(Var::S1, data.ctx.clone()),
    };
    let start = std::time::Instant::now();
    let res = eliminate_chain(a, b, &center, &samples, &ChainOptions::default()).unwrap();
    eprintln!("X2 chain: {:?}", start.elapsed());
    eprintln!("{}", res.render());
    let (ai, bi) = res.implied_semiaxes.expect("genuine factor must be a conic");
    // k2 (a, b) with k2 = (2 delta - a^2 - b^2)/(3 c^2)
    assert!((ai - 0.26204993518133088).abs() < 1e-12, "a_2 = {ai}");
    assert!((bi - 0.17469995678755392).abs() < 1e-12, "b_2 = {bi}");
    // exact proportionality to the published conic: delta = sqrt(61)/4, so
    // 52 sqrt(61) = 208 delta
    let ctx: &std::sync::Arc<FieldCtx> = &res.l_poly.ctx;
    let alpha = FieldScalar::from_int(100);
    let beta = FieldScalar::from_int(225);
    let gamma = FieldScalar {
        p: Rat::from_integer(BigInt::from(-413)),
        q: Rat::from_integer(BigInt::from(208)),
    };
    assert!(
        res.genuine_proportional_to(&alpha, &beta, &gamma),
        "genuine factor not proportional to 100x^2+225y^2+52sqrt61-413: {:?}",
        res.conic.as_ref().map(|(a, b, g)| (
            a.render_sqrt(ctx),
            b.render_sqrt(ctx),
            g.render_sqrt(ctx)
        ))
    );
}
