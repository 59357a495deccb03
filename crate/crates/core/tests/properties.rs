//! Property tests for the algebraic laws the library rests on: group
//! axioms of the sign-and-two-exponent encoding, padding and transpose
//! laws, closure of the dyadically invertible matrices, involution of
//! elementary orthogonal factors, and the matrix representation being
//! a homomorphism. Every property is phrased against an independent
//! route (direct multiplication, integer determinants, dense products)
//! rather than the code path under test.

mod common;

use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use signedalg::group::{standard_ac_generator, Generator, GroupElement, Sign};
use signedalg::{invert, ortho, rep, replace, BitMatrix, BitVec};

fn bitvec(len: usize) -> impl Strategy<Value = BitVec> {
    prop::collection::vec(any::<bool>(), len).prop_map(|bits| BitVec::from_bits(&bits))
}

fn element(len: usize) -> impl Strategy<Value = GroupElement> {
    (any::<bool>(), bitvec(len), bitvec(len)).prop_map(|(minus, s, p)| {
        let sign = if minus { Sign::Minus } else { Sign::Plus };
        GroupElement::new(sign, s, p).unwrap()
    })
}

fn matrix(rows: usize, cols: usize) -> impl Strategy<Value = BitMatrix> {
    prop::collection::vec(any::<bool>(), rows * cols).prop_map(move |bits| {
        let mut m = BitMatrix::zeros(rows, cols);
        for (k, b) in bits.into_iter().enumerate() {
            m.set(k / cols, k % cols, b);
        }
        m
    })
}

proptest! {
    // Associativity and two-sided inverse of the encoded product.
    #[test]
    fn multiplication_is_associative_with_inverses(
        (a, b, c) in (1usize..=9).prop_flat_map(|n| (element(n), element(n), element(n)))
    ) {
        let ab_c = a.mul(&b).unwrap().mul(&c).unwrap();
        let a_bc = a.mul(&b.mul(&c).unwrap()).unwrap();
        prop_assert_eq!(ab_c, a_bc);

        let len = a.len();
        prop_assert_eq!(a.mul(&a.inverse()).unwrap(), GroupElement::identity(len));
        prop_assert_eq!(a.inverse().mul(&a).unwrap(), GroupElement::identity(len));
    }

    // The commutator sign is symmetric and says exactly whether the
    // two products agree.
    #[test]
    fn commutator_sign_matches_direct_products(
        (a, b) in (1usize..=9).prop_flat_map(|n| (element(n), element(n)))
    ) {
        let sign = a.commutator_sign(&b).unwrap();
        prop_assert_eq!(sign, b.commutator_sign(&a).unwrap());
        let ab = a.mul(&b).unwrap();
        let ba = b.mul(&a).unwrap();
        prop_assert_eq!(sign == Sign::Plus, ab == ba);
        prop_assert_eq!(ab, if sign == Sign::Plus { ba } else { ba.neg() });
    }

    // e² is the scalar σ(e), which is also what the transpose law of
    // the matrix representation rests on.
    #[test]
    fn squares_are_the_signature_scalar(
        e in (1usize..=9).prop_flat_map(element)
    ) {
        let square = e.square();
        prop_assert!(square.is_scalar());
        let len = e.len();
        let expected = match e.signature() {
            Sign::Plus => GroupElement::identity(len),
            Sign::Minus => GroupElement::identity(len).neg(),
        };
        prop_assert_eq!(square, expected);
    }

    // Padding with dead coordinates is a group embedding.
    #[test]
    fn padding_is_a_homomorphism(
        (a, b, extra) in (1usize..=8).prop_flat_map(|n| (element(n), element(n), 0usize..=4))
    ) {
        let wide = a.len() + extra;
        let padded = a.pad(wide).unwrap().mul(&b.pad(wide).unwrap()).unwrap();
        prop_assert_eq!(a.mul(&b).unwrap().pad(wide).unwrap(), padded);
    }

    // Matrix-vector action is linear and transposition reverses
    // products.
    #[test]
    fn matrix_laws(
        (m, p, u, v) in (1usize..=6, 1usize..=6).prop_flat_map(|(r, c)| {
            (matrix(r, c), matrix(c, r), bitvec(c), bitvec(c))
        })
    ) {
        prop_assert_eq!(
            m.mul_vec(&u.xor(&v)),
            m.mul_vec(&u).xor(&m.mul_vec(&v))
        );
        prop_assert_eq!(m.mul(&p).transpose(), p.transpose().mul(&m.transpose()));
    }

    // Dyadic invertibility agrees with an ordinary integer determinant
    // being odd, and the invertible matrices are closed under product
    // and inverse.
    #[test]
    fn dyadic_invertibility_matches_integer_determinant(
        (m, q) in (1usize..=6).prop_flat_map(|n| (matrix(n, n), matrix(n, n)))
    ) {
        let di = invert::is_dyadically_invertible(&m).unwrap();
        prop_assert_eq!(di, common::integer_determinant(&m) % 2 != 0);

        if di {
            let inverse = invert::dyadic_inverse(&m).unwrap();
            prop_assert!(inverse.mul(&m).is_identity());
            prop_assert!(m.mul(&inverse).is_identity());
            if invert::is_dyadically_invertible(&q).unwrap() {
                prop_assert!(invert::is_dyadically_invertible(&m.mul(&q)).unwrap());
            }
        }
    }

    // Every elementary orthogonal factor is a D-orthogonal involution.
    #[test]
    fn elementary_factors_are_orthogonal_involutions(
        v in (2usize..=10).prop_flat_map(bitvec)
    ) {
        let mut u = v;
        if u.mass_is_odd() {
            u.flip(0);
        }
        let m = ortho::elementary_orthogonal(&u).unwrap();
        prop_assert!(invert::is_d_orthogonal(&m).unwrap());
        prop_assert!(m.mul(&m).is_identity());
    }

    // The signed permutation representation is a homomorphism and
    // squares to the signature scalar.
    #[test]
    fn representation_is_a_homomorphism(
        (e, f) in (1usize..=4).prop_flat_map(|n| (element(n), element(n)))
    ) {
        prop_assert!(rep::verify_homomorphism(&e, &f, e.len()).unwrap());
        let m = rep::represent(&e, e.len()).unwrap();
        let square = m.matmul(&m).unwrap();
        prop_assert_eq!(square.is_identity_times(), Some(e.signature().as_i8()));
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    // Replacing through any dyadically invertible exponent matrix
    // preserves the generated group, element for element.
    #[test]
    fn invertible_replacement_preserves_the_group(
        (n, seed) in (1usize..=4, any::<u64>())
    ) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let gen = signedalg::group::random_basic_generator(n, &mut rng);
        let p = common::random_invertible(n, &mut rng);
        let replaced = replace::transform(&gen, &p).unwrap();
        prop_assert!(replaced.basic());
        prop_assert_eq!(
            gen.enumerate_group().unwrap(),
            replaced.enumerate_group().unwrap()
        );
    }

    // Chain and anticommutative forms convert back and forth without
    // touching exponents.
    #[test]
    fn chain_conversions_roundtrip(
        (n, n_plus_pick) in (2usize..=6, any::<u64>())
    ) {
        let n_plus = (n_plus_pick as usize) % (n + 1);
        let ac = standard_ac_generator(n, n_plus).unwrap();
        let chain = replace::ac_to_chain(&ac).unwrap();
        let back = replace::chain_to_ac(&chain).unwrap();
        prop_assert_eq!(back.n(), ac.n());
        for (x, y) in back.elements().iter().zip(ac.elements()) {
            prop_assert_eq!(x.s(), y.s());
            prop_assert_eq!(x.p(), y.p());
        }
        prop_assert_eq!(
            Generator::new(chain.elements().to_vec()).unwrap().enumerate_group().unwrap(),
            ac.enumerate_group().unwrap()
        );
    }
}
