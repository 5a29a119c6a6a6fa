use sticklab_core::ff::{Fq, FqPoly};
use sticklab_core::oracle;

fn main() {
    let fq = Fq::prime(2).unwrap();
    let p = FqPoly::parse(&fq, "t^2+t+1").unwrap();
    let t0 = std::time::Instant::now();
    let rep = oracle::zeta_from_census(&fq, &p, 2).unwrap();
    println!("genus = {}", rep.genus);
    println!("N_m = {:?}", rep.point_counts);
    println!("P = {:?}", rep.numerator);
    println!("h = {}, v_2(h) = {}", rep.class_number, rep.v_p_class_number);
    println!("elapsed: {:?}", t0.elapsed());
}
