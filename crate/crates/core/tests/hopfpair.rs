use qshuffle::cartan::CartanDatum;
use qshuffle::hopfpair::{hopf_pair, verify_antipode_lemma, MonomialWord};
use qshuffle::laurent::LPoly;
use qshuffle::lweights::{prefundamental, LWeight};
use qshuffle::scalars::{parse_scalar, Point, Scalar};
use qshuffle::shuffle::{shuffle_mul, symmetrize, ShuffleElement};

fn sym(degree: Vec<usize>, exps: &[i32]) -> ShuffleElement {
    let p = symmetrize(&degree, &LPoly::monomial(exps.to_vec(), Scalar::one()));
    ShuffleElement::new(degree, p)
}

// gamma^{(k)} for A1: zeta(y/x)/zeta(x/y) = q^2 (1 - q^-2 t)/(1 - q^2 t), t = x/y
fn gamma(k: i64) -> Scalar {
    if k == 0 {
        Scalar::q_pow(2)
    } else {
        Scalar::q_pow(2 * k + 2).sub(&Scalar::q_pow(2 * k - 2))
    }
}

fn ef(d: i64, d2: i64) -> Scalar {
    if d + d2 == 0 {
        parse_scalar("1/(q^-1 - q)").unwrap()
    } else {
        Scalar::zero()
    }
}

#[test]
fn bialgebra_a1() {
    let c = CartanDatum::preset("A1").unwrap();
    for d1 in -1..=1i64 {
        for d2 in -1..=1i64 {
            for f1 in -2..=1i32 {
                for f2 in -2..=1i32 {
                    let ff = ShuffleElement::generator(1, 0, f1);
                    let gg = ShuffleElement::generator(1, 0, f2);
                    // product in the opposite algebra
                    let prod = shuffle_mul(&c, &gg, &ff).unwrap();
                    let lhs = hopf_pair(&c, &MonomialWord(vec![(0, d1), (0, d2)]), &prod);
                    let mut rhs = ef(d1, f1 as i64).mul(&ef(d2, f2 as i64));
                    for k in 0..8 {
                        rhs = rhs.add(
                            &gamma(k)
                                .mul(&ef(d2 + k, f1 as i64))
                                .mul(&ef(d1 - k, f2 as i64)),
                        );
                    }
                    assert_eq!(lhs, rhs, "d=({},{}) f=({},{})", d1, d2, f1, f2);
                }
            }
        }
    }
}

#[test]
fn antipode_lemma_a1_n2() {
    let c = CartanDatum::preset("A1").unwrap();
    let psi = prefundamental(1, 0, &Point::a()).inv();
    for exps in [[0, 0], [-1, 0], [1, -2], [-1, -1]] {
        let f = sym(vec![2], &exps);
        for w in [[(0, 0), (0, 0)], [(0, 1), (0, -1)], [(0, -1), (0, 0)]] {
            let r =
                verify_antipode_lemma(&c, &MonomialWord(w.to_vec()), &psi, &f, Some(12)).unwrap();
            assert!(r.equal, "F={:?} w={:?}: {:?}", exps, w, r);
        }
    }
}

#[test]
fn antipode_lemma_a2_mixed() {
    let c = CartanDatum::preset("A2").unwrap();
    let psi = LWeight::parse("1 | zeros: 0 | poles: a; 1 | zeros: 0 | poles: a*q").unwrap();
    let e1 = ShuffleElement::generator(2, 0, 0);
    let e2 = ShuffleElement::generator(2, 1, -1);
    let f = shuffle_mul(&c, &e1, &e2).unwrap();
    for w in [[(0, 0), (1, 0)], [(1, 1), (0, -1)]] {
        let r = verify_antipode_lemma(&c, &MonomialWord(w.to_vec()), &psi, &f, None).unwrap();
        assert!(r.equal, "w={:?}: {:?}", w, r);
    }
}
