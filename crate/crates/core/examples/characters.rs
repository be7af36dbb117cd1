// chi^mu and the QQ-system on truncated weight characters.
// $ cargo run --release --example characters
use qshuffle::cartan::CartanDatum;
use qshuffle::charring::{chi_mu, verify_qq};
use qshuffle::scalars::Point;
use qshuffle::simplemod::DimConfig;

fn main() {
    let a2 = CartanDatum::preset("A2").unwrap();
    println!("A2 chi^w1 = {}", chi_mu(&a2, &vec![1, 0], 3).unwrap());
    println!("A2 chi^(w1+w2) = {}", chi_mu(&a2, &vec![1, 1], 2).unwrap());

    let a1 = CartanDatum::preset("A1").unwrap();
    let r = verify_qq(&a1, 0, &Point::a(), 4, 4, &DimConfig::default()).unwrap();
    println!("A1 QQ at depth 4: {}", r.holds);
    println!("  lhs {}", r.lhs);
    println!("  rhs {}", r.rhs);
}
