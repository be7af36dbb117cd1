// Shuffle products of generators and the wheel conditions in A2.
// $ cargo run --example shuffle_products
use qshuffle::cartan::CartanDatum;
use qshuffle::laurent::LPoly;
use qshuffle::scalars::scalar_to_string;
use qshuffle::shuffle::{shuffle_mul, shuffle_product, wheel_membership, ShuffleElement};

fn main() {
    let a1 = CartanDatum::preset("A1").unwrap();
    let e = ShuffleElement::generator(1, 0, 0);
    let sq = shuffle_mul(&a1, &e, &e).unwrap();
    println!(
        "A1: e_(1,0) * e_(1,0) = {}",
        scalar_to_string(&sq.numerator().coeff(&[0, 0]))
    );

    let a2 = CartanDatum::preset("A2").unwrap();
    let gens = [
        ShuffleElement::generator(2, 0, 0),
        ShuffleElement::generator(2, 0, 1),
        ShuffleElement::generator(2, 1, -1),
    ];
    let p = shuffle_product(&a2, &gens).unwrap();
    println!(
        "A2: e_(1,0) e_(1,1) e_(2,-1) has {} terms, wheel: {}",
        p.numerator().len(),
        wheel_membership(&a2, &p).unwrap()
    );

    let constant = ShuffleElement::new(vec![2, 1], LPoly::one(3));
    println!(
        "A2: constant numerator in degree (2,1), wheel: {}",
        wheel_membership(&a2, &constant).unwrap()
    );
}
