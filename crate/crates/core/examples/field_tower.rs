//! Builds `F_9 ⊂ F_{9^4}` and checks a few identities of the tower.

use rankmetric::gf::{ExtField, Field};

fn main() {
    let ext = ExtField::generate(3, 2, 4).expect("field");
    let base = ext.base();
    println!("q = {}, n = {}, |F_q^n| = {}", ext.q(), ext.degree(), ext.order());
    println!("F_q modulus (over F_3): {:?}", base.modulus());
    println!("F_q^n modulus (over F_q): {:?}", ext.modulus());

    let x = ext.monomial(1);
    let y = ext.add(x, ext.one());
    let prod = ext.mul(x, y);
    println!("x * (x + 1) = {:?} = {:?}", ext.to_digits(prod), prod);

    // Frobenius is additive and has order n
    let sum = ext.frobenius(ext.add(x, y), 1);
    assert_eq!(sum, ext.add(ext.frobenius(x, 1), ext.frobenius(y, 1)));
    assert_eq!(ext.frobenius(y, ext.degree()), y);

    println!("Tr(x + 1) = {:?}, N(x + 1) = {:?}", ext.trace(y), ext.norm(y));
    let squares = ext.elements().filter(|&a| !ext.is_zero(a) && ext.is_square(a)).count();
    println!("nonzero squares: {squares} of {}", ext.order() - 1);
}
