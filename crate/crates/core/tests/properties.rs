use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use parmon::confluence::{essential_critical_pairs, is_confluent, newman_check, PairClass};
use parmon::magma::{all_bracketings, comb, parse_tree, verify_bracketing_invariance, Tree};
use parmon::monoid::{parse_monoid, serialize_monoid};
use parmon::random::random_monoid;
use parmon::rewriting::{left_standard_successors, lstd, normal_forms, NormalForms};
use parmon::star::{star, total_isomorphism_holds, verify_assoc_iff_confluent};
use parmon::words::{enumerate_irreducible, is_irreducible, parse_word};
use parmon::{Elem, Limits, PartialMonoid, Word};

fn monoid(seed: u64) -> PartialMonoid {
    random_monoid(&mut ChaCha8Rng::seed_from_u64(seed), 8).monoid
}

fn word(m: &PartialMonoid, raw: &[usize]) -> Word {
    raw.iter().map(|&i| Elem::new(i % m.len())).collect()
}

fn irreducible_part(m: &PartialMonoid, raw: &[usize]) -> Word {
    let mut w = Word::empty();
    for &i in raw {
        let x = Elem::new(i % m.len());
        if x == m.identity() {
            continue;
        }
        if w.letters().last().is_none_or(|&l| !m.is_defined(l, x)) {
            w.push(x);
        }
    }
    w
}

fn tree_over(labels: &[Word], shape: usize) -> Tree {
    let trees = all_bracketings(labels);
    trees[shape % trees.len()].clone()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn generated_monoids_are_valid(seed in any::<u64>()) {
        let m = monoid(seed);
        prop_assert!(m.validate().valid);
        let t = m.totalize();
        prop_assert!(t.is_associative());
        prop_assert!(t.zero_is_absorbing());
        prop_assert!(t.extends(&m));
        prop_assert!(m.invertibility_report().lemma_violations.is_empty());
    }

    #[test]
    fn table_round_trip(seed in any::<u64>()) {
        let m = monoid(seed);
        let text = serialize_monoid(&m);
        prop_assert_eq!(parse_monoid(&text).unwrap(), m);
    }

    #[test]
    fn confluence_verdicts_agree(seed in any::<u64>()) {
        let m = monoid(seed);
        let confluent = is_confluent(&m).confluent;
        prop_assert_eq!(confluent, newman_check(&m));
        if m.is_catenary().catenary {
            prop_assert!(confluent);
        }
        if m.is_total() {
            prop_assert!(m.is_catenary().catenary);
            prop_assert_eq!(total_isomorphism_holds(&m), Some(true));
        }
    }

    #[test]
    fn essential_classes(seed in any::<u64>()) {
        let m = monoid(seed);
        let mut nf = NormalForms::new(&m);
        for t in essential_critical_pairs(&m) {
            match t.class {
                PairClass::A1 => prop_assert_eq!(&t.pair.0, &t.pair.1),
                PairClass::B => prop_assert!(nf.joinable(&t.pair.0, &t.pair.1)),
                PairClass::A0 => {
                    prop_assert!(t.pair.0 != t.pair.1);
                    prop_assert!(!nf.joinable(&t.pair.0, &t.pair.1));
                }
            }
        }
    }

    #[test]
    fn lstd_is_a_normal_form(seed in any::<u64>(), raw in prop::collection::vec(0usize..16, 0..6)) {
        let m = monoid(seed);
        let w = word(&m, &raw);
        let r = lstd(&m, &w);
        prop_assert!(is_irreducible(&m, &r));
        let forms = normal_forms(&m, &w);
        prop_assert!(forms.contains(&r));
        if is_confluent(&m).confluent {
            prop_assert_eq!(forms.len(), 1);
        }
        if is_irreducible(&m, &w) {
            prop_assert_eq!(&r, &w);
        }
    }

    #[test]
    fn lstd_right_module_law(
        seed in any::<u64>(),
        u in prop::collection::vec(0usize..16, 0..6),
        v in prop::collection::vec(0usize..16, 0..6),
    ) {
        let m = monoid(seed);
        let (u, v) = (word(&m, &u), word(&m, &v));
        prop_assert_eq!(lstd(&m, &lstd(&m, &u).concat(&v)), lstd(&m, &u.concat(&v)));
    }

    #[test]
    fn left_standard_steps_shrink(seed in any::<u64>(), raw in prop::collection::vec(0usize..16, 0..7)) {
        let m = monoid(seed);
        let w = word(&m, &raw);
        for s in left_standard_successors(&m, &w) {
            prop_assert!(s.len() < w.len());
        }
    }

    #[test]
    fn irreducibles_are_prefix_closed(seed in any::<u64>()) {
        let m = monoid(seed);
        for w in enumerate_irreducible(&m, 3, &Limits::default()).unwrap() {
            for p in w.prefixes() {
                prop_assert!(is_irreducible(&m, &p));
            }
        }
    }

    #[test]
    fn star_laws(
        seed in any::<u64>(),
        u in prop::collection::vec(0usize..16, 0..4),
        v in prop::collection::vec(0usize..16, 0..4),
    ) {
        let m = monoid(seed);
        let (u, v) = (irreducible_part(&m, &u), irreducible_part(&m, &v));
        let uv = star(&m, &u, &v).unwrap();
        prop_assert!(is_irreducible(&m, &uv));
        prop_assert_eq!(star(&m, &Word::empty(), &u).unwrap(), u.clone());
        prop_assert_eq!(star(&m, &u, &Word::empty()).unwrap(), u.clone());
    }

    #[test]
    fn associativity_iff_confluence(seed in any::<u64>()) {
        let m = monoid(seed);
        prop_assert!(verify_assoc_iff_confluent(&m, 1, &Limits::default()).unwrap().holds);
    }

    #[test]
    fn word_render_round_trip(seed in any::<u64>(), raw in prop::collection::vec(0usize..16, 0..6)) {
        let m = monoid(seed);
        let w = word(&m, &raw);
        prop_assert_eq!(parse_word(&m, &w.render(&m)).unwrap(), w.clone());
        prop_assert_eq!(parse_word(&m, &w.render_plain(&m)).unwrap(), w);
    }

    #[test]
    fn ass_rewriting(n in 1usize..7, shape in any::<usize>()) {
        let labels: Vec<Word> = (0..n).map(|i| Word::letter(Elem::new(i))).collect();
        let t = tree_over(&labels, shape);
        for s in t.ass_one_step() {
            prop_assert!(s.rank() < t.rank());
            prop_assert_eq!(s.leaf_labels(), t.leaf_labels());
        }
        let c = t.right_comb();
        prop_assert_eq!(&c, &comb(&labels));
        prop_assert_eq!(c.rank(), 0);
        prop_assert_eq!(t.ass_one_step().is_empty(), t.rank() == 0);
    }

    #[test]
    fn evaluation_respects_bracketing(
        seed in any::<u64>(),
        raw in prop::collection::vec(0usize..16, 1..5),
        shape in any::<usize>(),
    ) {
        let m = monoid(seed);
        let letters: Vec<Elem> = m.non_identity().collect();
        prop_assume!(!letters.is_empty());
        let labels: Vec<Word> = raw.iter().map(|&i| Word::letter(letters[i % letters.len()])).collect();
        let t = tree_over(&labels, shape);
        prop_assert!(verify_bracketing_invariance(&m, &t).unwrap());
        prop_assert_eq!(parse_tree(&m, &t.render(&m)).unwrap(), t);
    }
}
