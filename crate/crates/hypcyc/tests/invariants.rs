//! Property tests over random words, forms and twisted chains.

use hypcyc::chains::forms::{hochschild_b, reduced_b, reduced_connes_b};
use hypcyc::chains::text::{twisted_from_text, twisted_to_text};
use hypcyc::chains::twisted::{self, lifted_t, TwistedSimplex};
use hypcyc::chains::{Form, FormChain, TwistedChain};
use hypcyc::norms::norm_lambda;
use hypcyc::{Chain, Elem, GroupModel, Letter, Q};
use proptest::prelude::*;

fn model(i: usize) -> GroupModel {
    match i % 4 {
        0 => GroupModel::free_group(2),
        1 => GroupModel::modular(),
        2 => GroupModel::dihedral(),
        _ => GroupModel::cyclic(3),
    }
}

fn word(m: &GroupModel, raw: &[u8]) -> Elem {
    let alphabet = m.alphabet();
    let letters: Vec<Letter> = raw.iter().map(|&i| alphabet[i as usize % alphabet.len()]).collect();
    m.normalize(&letters).unwrap()
}

fn raw_word(max: usize) -> impl Strategy<Value = Vec<u8>> {
    prop::collection::vec(0u8..12, 0..=max)
}

fn q(n: i64) -> Q {
    Q::from_integer(n.into())
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 96, failure_persistence: None, ..ProptestConfig::default() })]

    #[test]
    fn group_axioms(i in 0usize..4, x in raw_word(6), y in raw_word(6), z in raw_word(6)) {
        let m = model(i);
        let (x, y, z) = (word(&m, &x), word(&m, &y), word(&m, &z));
        prop_assert_eq!(m.mul(&m.mul(&x, &y), &z), m.mul(&x, &m.mul(&y, &z)));
        prop_assert!(m.mul(&x, &m.inv(&x)).is_identity());
        prop_assert_eq!(m.len(&x) as usize, m.letters(&x).len());
        prop_assert!(m.dist(&x, &z) <= m.dist(&x, &y) + m.dist(&y, &z));
        prop_assert_eq!(m.dist(&x, &y), m.dist(&y, &x));
        prop_assert_eq!(m.parse(&m.format(&x)).unwrap(), x);
    }

    #[test]
    fn class_representative_is_conjugation_invariant(i in 0usize..4, g in raw_word(5), x in raw_word(6)) {
        let m = model(i);
        let (g, x) = (word(&m, &g), word(&m, &x));
        let c = m.conj(&g, &x);
        prop_assert_eq!(m.class_rep(&c), m.class_rep(&x));
        prop_assert!(m.conjugate_in_group(&c, &x));
        prop_assert!(m.len(&m.class_rep(&x)) <= m.len(&x));
    }

    #[test]
    fn hochschild_and_connes_relations(i in 0usize..4, raw in prop::collection::vec(raw_word(3), 2..=4)) {
        let m = model(i);
        let entries: Vec<Elem> = raw.iter().map(|w| word(&m, w)).collect();
        let w: FormChain = Chain::basis(Form::tensor(&entries));
        prop_assert!(hochschild_b(&m, &hochschild_b(&m, &w)).is_zero());
        let bb = reduced_b(&m, &reduced_b(&m, &w));
        prop_assert!(bb.is_zero());
        let big_b = reduced_connes_b(&reduced_connes_b(&w));
        prop_assert!(big_b.is_zero());
        let anti = reduced_b(&m, &reduced_connes_b(&w)).plus(&reduced_connes_b(&reduced_b(&m, &w)));
        prop_assert!(anti.is_zero());
    }

    #[test]
    fn twisted_boundary_squares_to_zero(i in 0usize..4, raw in prop::collection::vec(raw_word(3), 1..=4), v in raw_word(3)) {
        let m = model(i);
        let verts: Vec<Elem> = raw.iter().map(|w| word(&m, w)).collect();
        let c: TwistedChain = Chain::basis(TwistedSimplex::new(verts, word(&m, &v)));
        prop_assert!(twisted::boundary(&twisted::boundary(&c)).is_zero());
    }

    #[test]
    fn lifted_cyclic_operator_keeps_weight(i in 0usize..4, raw in prop::collection::vec(raw_word(3), 1..=4), v in raw_word(3)) {
        let m = model(i);
        let verts: Vec<Elem> = raw.iter().map(|w| word(&m, w)).collect();
        let s = TwistedSimplex::new(verts, word(&m, &v));
        let t = lifted_t(&m, &Chain::basis(s.clone()));
        prop_assert_eq!(t.len(), 1);
        for (image, _) in t.iter() {
            prop_assert_eq!(image.weight(&m), s.weight(&m));
        }
    }

    #[test]
    fn weighted_norm_is_a_norm(
        i in 0usize..4,
        a in prop::collection::vec((raw_word(3), raw_word(3), -5i64..5), 1..4),
        b in prop::collection::vec((raw_word(3), raw_word(3), -5i64..5), 1..4),
        s in -4i64..4,
    ) {
        let m = model(i);
        let build = |terms: &[(Vec<u8>, Vec<u8>, i64)]| {
            let mut c: TwistedChain = Chain::zero();
            for (x, v, k) in terms {
                c.add_term(TwistedSimplex::new(vec![m.identity(), word(&m, x)], word(&m, v)), q(*k));
            }
            c
        };
        let (ca, cb) = (build(&a), build(&b));
        let lambda = Q::new(3.into(), 2.into());
        let n = |c: &TwistedChain| norm_lambda(&m, c, &lambda);
        prop_assert!(n(&ca.plus(&cb)) <= n(&ca) + n(&cb));
        prop_assert_eq!(n(&ca.scaled(&q(s))), n(&ca) * q(s.abs()));
    }

    #[test]
    fn twisted_text_round_trips(i in 0usize..4, terms in prop::collection::vec((prop::collection::vec(raw_word(3), 1..=3), raw_word(2), -7i64..7), 0..4)) {
        let m = model(i);
        let mut c: TwistedChain = Chain::zero();
        for (raw, v, k) in &terms {
            let verts = raw.iter().map(|w| word(&m, w)).collect();
            c.add_term(TwistedSimplex::new(verts, word(&m, v)), Q::new((*k).into(), 3.into()));
        }
        prop_assert_eq!(twisted_from_text(&m, &twisted_to_text(&m, &c)).unwrap(), c);
    }
}
