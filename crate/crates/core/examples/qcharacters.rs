// q-characters of simple modules in A1, with the support of each nonzero l-weight space.
// $ cargo run --release --example qcharacters
use qshuffle::cartan::CartanDatum;
use qshuffle::lweights::LWeight;
use qshuffle::simplemod::{qcharacter_reports, DimConfig};

fn main() {
    let c = CartanDatum::preset("A1").unwrap();
    let cfg = DimConfig::default();
    for s in [
        "1 | zeros: 0 | poles: a",
        "q | zeros: a*q^-1 | poles: a*q",
        "1 | zeros: a | poles: 0",
    ] {
        let psi = LWeight::parse(s).unwrap();
        let (qc, reps) = qcharacter_reports(&c, &psi, 3, &cfg).unwrap();
        println!("L({})", psi);
        println!("  {}", qc);
        for r in reps.iter().filter(|r| r.dimension > 0) {
            println!("  dim {} at {} (windows {:?})", r.dimension, r.x, r.windows);
        }
    }
}
