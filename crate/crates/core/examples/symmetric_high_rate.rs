//! High-rate `Gab_k ∘ X^q` with self-adjoint errors. Below rank `n - k`
//! decoding is unique; at rank `n - k` some received words have several
//! valid decompositions and the decoder lists all of them.

use rankmetric::bilinear::BilinearSetup;
use rankmetric::channel::{random_selfadjoint_qpoly, RngStream};
use rankmetric::gabidulin::DecodeStatus;
use rankmetric::gf::ExtField;
use rankmetric::symdec::HighRateDecoder;

fn main() {
    let ext = ExtField::generate(2, 1, 8).expect("field");
    let setup = BilinearSetup::new(&ext);
    let decoder = HighRateDecoder::new(&ext, setup.u(), 6).expect("decoder");
    println!("n = 8, k = 6, radius = {}", decoder.radius());

    for r in 0..=decoder.radius() {
        let (mut ok, mut ambiguous, mut failed) = (0, 0, 0);
        for trial in 0..200 {
            let mut rng = RngStream::new(r as u64, trial);
            let c = decoder.code().random_codeword(&ext, &mut rng);
            let e = random_selfadjoint_qpoly(&ext, &setup, r, &mut rng).expect("rank");
            let report = decoder.decode(&ext, &c.add(&ext, &e)).expect("decodable");
            match report.status {
                DecodeStatus::Ok => ok += 1,
                DecodeStatus::Ambiguous => {
                    assert!(report.candidates.iter().any(|d| d.codeword == c));
                    for d in &report.candidates {
                        assert!(decoder.code().contains(&d.codeword));
                        assert!(d.error.is_self_adjoint(&ext, setup.u()).unwrap());
                        assert!(d.error.rank(&ext) <= decoder.radius());
                    }
                    ambiguous += 1;
                }
                DecodeStatus::Fail => failed += 1,
            }
        }
        println!("rank {r}: unique {ok}, ambiguous {ambiguous}, failed {failed}");
    }
}
