//! Orthonormal bases for `Tr(u x y)` and the adjoint as a transpose.

use rankmetric::bilinear::BilinearSetup;
use rankmetric::channel::RngStream;
use rankmetric::gf::ExtField;
use rankmetric::qpoly::QPoly;

fn main() {
    for (p, n) in [(2, 5), (3, 3), (3, 4), (5, 2)] {
        let ext = ExtField::generate(p, 1, n).expect("field");
        let setup = BilinearSetup::new(&ext);
        println!("q = {p}, n = {n}: {}", setup.branch().describe());
        println!("  u = {:?}, basis = {:?}", ext.to_digits(setup.u()), setup.basis().elements());
        assert_eq!(setup.gram(&ext), rankmetric::linalg::MatrixFq::identity(ext.base(), n));

        let mut rng = RngStream::new(7, p as u64);
        let a = QPoly::random(&ext, &mut rng);
        let adj = a.adjoint(&ext, setup.u()).expect("nonzero twist");
        let b = setup.basis();
        assert_eq!(adj.matrix_of(&ext, b), a.matrix_of(&ext, b).transpose());
        println!("  matrix of the adjoint is the transpose");
    }
}
