//! Low-rate codes correct symmetric errors of full rank: a random code
//! with no nonzero symmetric codeword, and `Gab_k ∘ X^q` for `k < n/2`.

use rankmetric::bilinear::BilinearSetup;
use rankmetric::channel::{random_selfadjoint_qpoly, random_symmetric_matrix, RngStream};
use rankmetric::gabidulin::GabCode;
use rankmetric::gf::{BaseField, ExtField};
use rankmetric::symdec::{LowRateDecoder, MatrixCode, SymDecoder};

fn main() {
    let base = BaseField::prime(3).expect("field");
    let mut rng = RngStream::new(5, 0);
    let code = MatrixCode::random_sym_free(&base, 5, 10, &mut rng).expect("symmetric-free code");
    let decoder = LowRateDecoder::new(&base, code).expect("decoder");
    let c = decoder.code().random_codeword(&base, &mut rng);
    let e = random_symmetric_matrix(&base, 5, 5, &mut rng).expect("rank");
    let out = decoder.decode(&base, &c.add(&base, &e)).expect("decodable");
    assert_eq!(out.codeword, c);
    println!("random [5x5, dim 10] code over F_3: full-rank symmetric error removed");

    let ext = ExtField::generate(2, 1, 8).expect("field");
    let setup = BilinearSetup::new(&ext);
    let decoder = SymDecoder::new(&ext, &setup, 3).expect("decoder");
    let c = GabCode::new(8, 3, 1).expect("code").random_codeword(&ext, &mut rng);
    for r in [2, 5, 8] {
        let e = random_selfadjoint_qpoly(&ext, &setup, r, &mut rng).expect("rank");
        let report = decoder.decode(&ext, &c.add(&ext, &e)).expect("decodable");
        println!("Gab_3 ∘ X^2, n = 8, error rank {r}: {:?}", report.status);
        assert_eq!(report.codeword(), Some(&c));
    }
}
