// What is left over after dividing the psi~ ratio by A^{-1}_{i,a}.
// $ cargo run --example a_ratio
use qshuffle::cartan::CartanDatum;
use qshuffle::charring::constant_string;
use qshuffle::lweights::check_a_ratio;
use qshuffle::scalars::Point;

fn main() {
    for name in ["A1", "A2", "B2", "G2"] {
        let c = CartanDatum::preset(name).unwrap();
        for i in 0..c.rank() {
            let (id, k) = check_a_ratio(&c, i, &Point::a()).unwrap();
            println!(
                "{} i={}: ({}) identity={}",
                name,
                i + 1,
                constant_string(&k),
                id
            );
        }
    }
}
