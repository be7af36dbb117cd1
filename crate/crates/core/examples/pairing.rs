// The Hopf pairing and both sides of the antipode identity in A1.
// $ cargo run --example pairing
use qshuffle::cartan::CartanDatum;
use qshuffle::hopfpair::{hopf_pair, verify_antipode_lemma, MonomialWord};
use qshuffle::laurent::LPoly;
use qshuffle::lweights::prefundamental;
use qshuffle::scalars::{scalar_to_string, Point, Scalar};
use qshuffle::shuffle::{symmetrize, ShuffleElement};

fn main() {
    let c = CartanDatum::preset("A1").unwrap();
    for (d, f) in [(1, -1), (1, 0), (-2, 2)] {
        let v = hopf_pair(
            &c,
            &MonomialWord(vec![(0, d)]),
            &ShuffleElement::generator(1, 0, f),
        );
        println!("<e_(1,{}), f_(1,{})> = {}", d, f, scalar_to_string(&v));
    }

    let psi = prefundamental(1, 0, &Point::a()).inv();
    let f = ShuffleElement::new(
        vec![2],
        symmetrize(&[2], &LPoly::monomial(vec![1, -1], Scalar::one())),
    );
    let word = MonomialWord(vec![(0, 0), (0, 1)]);
    let r = verify_antipode_lemma(&c, &word, &psi, &f, None).unwrap();
    println!("antipode identity at T = {}: {}", r.trunc, r.equal);
    println!("  value {}", scalar_to_string(&r.lhs));
}
