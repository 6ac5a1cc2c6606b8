use quadrank::certify::{extension_certify, canonical_decomposition, rank_crosscheck, structural_certificate};
use quadrank::families::matrix_p;
use quadrank::linalg::SignMatrix;
use rand::SeedableRng;

fn main() {
    let t0 = std::time::Instant::now();
    let (w, p) = matrix_p(8).unwrap();
    let cert = structural_certificate(&w).unwrap();
    println!("P_8 built + certified in {:?}, bound {}", t0.elapsed(), cert.bound);

    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(1);
    let t0 = std::time::Instant::now();
    for k in 0..5 {
        let s = SignMatrix::random(70, 70, &mut rng);
        let r = rank_crosscheck(&w, &s, p).unwrap();
        println!("  crosscheck {k}: rank {r} in {:?} (cum)", t0.elapsed());
    }
    let per = t0.elapsed() / 5;
    println!("P_8 crosscheck: {per:?} per sample -> 100 samples ~ {:?}", per * 100);

    let t0 = std::time::Instant::now();
    let (w6, p6) = matrix_p(6).unwrap();
    let bs = canonical_decomposition(15, 2);
    let report = extension_certify(&bs, &w6, p6).unwrap();
    println!("extension P_6 d=2: rank_c {} k_max {} in {:?}", report.rank_c, report.k_max, t0.elapsed());
}
