use hypwalk_core::freeness::{
    count_mixed_words, enumerate_mixed_words, evaluate, free_product_certificate, generator_ball, lox_product_word,
    relation_search, theorem_constants, LabelContext, DEFAULT_WORD_BUDGET,
};
use hypwalk_core::group::parse_word;
use hypwalk_core::rational::{int, ratio};
use hypwalk_core::walk::{walk_endpoint, Distribution};
use hypwalk_core::{GroupModel, Word};

fn f2() -> GroupModel {
    GroupModel::free(2).unwrap()
}

#[test]
fn relation_search_finds_commutation_with_the_subgroup() {
    let m = f2();
    let a = parse_word(&m, "a").unwrap();
    let walk = parse_word(&m, "a^2").unwrap();
    let r = relation_search(&m, std::slice::from_ref(&a), std::slice::from_ref(&walk), 3, 2).unwrap();
    assert!(r.found);
    let w = r.witness.unwrap();
    assert!(evaluate(&m, &w, std::slice::from_ref(&a), std::slice::from_ref(&walk)).unwrap().is_identity());
    assert!(!free_product_certificate(&m, &[a], &[walk]).unwrap());
}

#[test]
fn certificate_and_search_agree_on_random_short_walks() {
    let m = f2();
    let d = Distribution::uniform_generators(&m);
    let h = vec![parse_word(&m, "a").unwrap()];
    let s = generator_ball(&m, &h, 2);
    let mut relations = 0;
    for seed in 0..300 {
        let walks = [walk_endpoint(&m, &d, 4, seed), walk_endpoint(&m, &d, 4, seed + 10_000)];
        let cert = free_product_certificate(&m, &h, &walks).unwrap();
        let r = relation_search(&m, &s, &walks, 3, 2).unwrap();
        assert!(!(cert && r.found), "seed {seed}");
        relations += r.found as usize;
    }
    assert!(relations > 0);
}

#[test]
fn certified_words_are_quasi_geodesic_and_nontrivial() {
    let m = f2();
    let h = vec![parse_word(&m, "a").unwrap()];
    let walks = vec![parse_word(&m, "b^3.a^1.b^2").unwrap()];
    assert!(free_product_certificate(&m, &h, &walks).unwrap());
    let c = theorem_constants(20, ratio(1, 10), ratio(1, 20), ratio(1, 2), int(0)).unwrap();
    let ctx = LabelContext::new(&m, &h, &walks);
    let words = enumerate_mixed_words(1, 1, 4, 2, DEFAULT_WORD_BUDGET).unwrap();
    let mut n = 0u128;
    for w in words {
        let o = ctx.qg_word_check(&m, &w, &c).unwrap();
        assert!(o.bound_holds && o.endpoint_distance > 0, "{w}");
        n += 1;
    }
    assert_eq!(n, count_mixed_words(1, 1, 4, 2));
}

#[test]
fn powers_of_independent_loxodromics_multiply_to_a_loxodromic() {
    let m = f2();
    let ys: Vec<Word> = ["a^1.b^1", "b^-1.a^2"].iter().map(|s| parse_word(&m, s).unwrap()).collect();
    for e in 3..=6 {
        let p = lox_product_word(&m, &ys, &[(0, e), (1, 3), (0, 4), (1, e)]).unwrap();
        assert!(p.loxodromic);
        assert!(p.translation_length > 0);
    }
}

#[test]
fn word_budget_is_enforced_before_searching() {
    let m = f2();
    let s = vec![parse_word(&m, "a").unwrap()];
    let walks = vec![parse_word(&m, "b").unwrap(); 3];
    assert!(count_mixed_words(1, 3, 12, 3) > DEFAULT_WORD_BUDGET);
    assert!(relation_search(&m, &s, &walks, 12, 3).is_err());
}
