//! Encode, corrupt and decode with a Gabidulin code, within and beyond
//! half the minimum distance.

use rankmetric::channel::RngStream;
use rankmetric::gabidulin::{random_error, wb_decode, GabCode};
use rankmetric::gf::{ExtField, Field};

fn main() {
    let ext = ExtField::generate(2, 1, 8).expect("field");
    let code = GabCode::new(8, 3, 0).expect("code");
    let mut rng = RngStream::new(3, 0);
    let message: Vec<_> = (0..code.k()).map(|_| ext.random(&mut rng)).collect();
    let c = code.encode(&message).expect("message length");
    println!("n = {}, k = {}, d = {}, t = {}", code.n(), code.k(), code.min_distance(), code.unique_radius());

    for t in 0..=code.unique_radius() {
        let e = random_error(&ext, t, &mut rng);
        let report = wb_decode(&ext, &code, &c.add(&ext, &e), t).expect("radius");
        let ok = report.codeword() == Some(&c);
        println!("rank {t}: {:?}, recovered = {ok}", report.status);
        assert_eq!(code.message_of(report.codeword().unwrap()), message);
    }

    // one past the radius the decoder enumerates candidates and may list several
    let t = code.unique_radius() + 1;
    let e = random_error(&ext, t, &mut rng);
    let report = wb_decode(&ext, &code, &c.add(&ext, &e), t).expect("radius");
    println!(
        "rank {t}: {:?}, {} candidate(s), {} examined",
        report.status,
        report.candidates.len(),
        report.diagnostics.candidates_examined
    );
}
