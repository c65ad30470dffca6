use loci_exact::chain::{build_locus_equations, RationalCenter};
use loci_exact::poly::{FieldPoly, Var};
use loci_exact::resultant::{eliminate_quadratic, remove_var_content};
use loci_exact::scalar::Rat;
use loci_exact::vertex::VertexData;
use num_bigint::BigInt;
use std::time::Instant;

fn main() {
    let a = Rat::new(BigInt::from(3), BigInt::from(2));
    let b = Rat::from_integer(BigInt::from(1));
    let data = VertexData::new(a.clone(), b.clone());
    let ctx = data.ctx.clone();
    let s1 = FieldPoly::var(Var::S1, ctx.clone());
    let s2 = FieldPoly::var(Var::S2, ctx.clone());
    let s3 = FieldPoly::var(Var::S3, ctx.clone());
    let num = s1.mul(&s2.pow(2).add(&s3.pow(2)).sub(&s1.pow(2)));
    let center = RationalCenter { id: "X3".into(), num, den: FieldPoly::from_int(1, ctx.clone()) };
    let (e0, _f0) = build_locus_equations(&data, &center).unwrap();
    let t0 = Instant::now();
    let p = eliminate_quadratic(&e0, Var::S1, &data.alpha1, &data.gamma1);
    eprintln!("s1 elim: {:?} terms={}", t0.elapsed(), p.num_terms());
    let t0 = Instant::now();
    let p = p.reduce_radicals(&data.u1sq, &data.v2sq);
    eprintln!("reduce: {:?} terms={}", t0.elapsed(), p.num_terms());
    let t0 = Instant::now();
    let p = p.remove_monomial_content(&[Var::U, Var::U1, Var::V2, Var::S1, Var::S2, Var::S3]);
    eprintln!("mono content: {:?} terms={}", t0.elapsed(), p.num_terms());
    let t0 = Instant::now();
    let p = p.primitive_part();
    eprintln!("primitive: {:?} coeff~1e{:.0}", t0.elapsed(), p.coeff_magnitude().abs().log10());
    let t0 = Instant::now();
    let (p, content) = remove_var_content(&p, Var::U);
    eprintln!("u-content: {:?} deg_u={} content_deg={}", t0.elapsed(), p.degree(Var::U), content.degree(Var::U));
}
