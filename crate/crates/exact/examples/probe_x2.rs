use loci_exact::chain::{build_locus_equations, RationalCenter};
use loci_exact::poly::{FieldPoly, Var};
use loci_exact::resultant::{eliminate_quadratic, remove_var_content, resultant};
use loci_exact::scalar::Rat;
use loci_exact::vertex::VertexData;
use num_bigint::BigInt;
use std::time::Instant;

fn main() {
    let t0 = Instant::now();
    let a = Rat::new(BigInt::from(3), BigInt::from(2));
    let b = Rat::from_integer(BigInt::from(1));
    let data = VertexData::new(a.clone(), b.clone());
    let center = RationalCenter {
        id: "X2".into(),
        num: FieldPoly::from_int(1, data.ctx.clone()),
        den: FieldPoly::var(Var::S1, data.ctx.clone()),
    };
    let (e0, f0) = build_locus_equations(&data, &center).unwrap();
    let one = FieldPoly::from_int(1, data.ctx.clone());
    // E side
    let p = eliminate_quadratic(&e0, Var::S1, &data.alpha1, &data.gamma1)
        .reduce_radicals(&data.u1sq, &data.v2sq).primitive_part();
    let (e5, _) = remove_var_content(&p, Var::U);
    eprintln!("E5: deg_u={} deg_x={} terms={} {:?}", e5.degree(Var::U), e5.degree(Var::X), e5.num_terms(), t0.elapsed());
    // F side
    let p = eliminate_quadratic(&f0, Var::S1, &data.alpha1, &data.gamma1)
        .reduce_radicals(&data.u1sq, &data.v2sq).primitive_part();
    let (p, _) = remove_var_content(&p, Var::U);
    eprintln!("F after s1: deg_u={} deg_u1={} terms={} {:?}", p.degree(Var::U), p.degree(Var::U1), p.num_terms(), t0.elapsed());
    let p = eliminate_quadratic(&p, Var::U1, &one, &data.u1sq.neg())
        .reduce_radicals(&data.u1sq, &data.v2sq).primitive_part();
    let (f5, _) = remove_var_content(&p, Var::U);
    eprintln!("F5: deg_u={} deg_y={} terms={} {:?}", f5.degree(Var::U), f5.degree(Var::Y), f5.num_terms(), t0.elapsed());
    let l = resultant(&e5, &f5, Var::U).unwrap().primitive_part();
    eprintln!("L: deg_x={} deg_y={} terms={} coeff~1e{:.0} {:?}", l.degree(Var::X), l.degree(Var::Y), l.num_terms(), l.coeff_magnitude().abs().log10(), t0.elapsed());
    // factor analysis
    let samples: Vec<(f64, f64)> = (0..40)
        .map(|k| {
            let t = 0.11 + 2.9 * k as f64 / 40.0;
            let (p1, p2, p3) = data.vertices_f64(t.cos());
            ((p1.0 + p2.0 + p3.0) / 3.0, (p1.1 + p2.1 + p3.1) / 3.0)
        })
        .collect();
    let res = loci_exact::factor::analyze("X2".into(), l, &samples).unwrap();
    eprintln!("factored: {:?}", t0.elapsed());
    println!("{}", res.render());
}
