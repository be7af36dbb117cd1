// Exact arithmetic in Q(q, a) and q-lattice points.
// $ cargo run --example rational_functions
use qshuffle::scalars::{parse_scalar, scalar_to_string, Point};

fn main() {
    let x = parse_scalar("(q^2 - 1)/(q*a)").unwrap();
    let y = parse_scalar("1/(q - q^-1)").unwrap();
    println!("x = {}", scalar_to_string(&x));
    println!("x * y = {}", scalar_to_string(&x.mul(&y)));
    println!("x + y = {}", scalar_to_string(&x.add(&y)));

    let a = Point::a();
    for k in [-2, 0, 2] {
        println!("a q^{} = {}", k, a.shift(k));
    }
}
