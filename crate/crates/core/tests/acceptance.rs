//! Acceptance suite: one test per guaranteed property, each printing a
//! single PASS/FAIL line. Run with `cargo test --test acceptance` (add
//! `-- --nocapture` to see the lines for passing tests).

use std::collections::HashMap;

use gp_core::action::{enumerate_fk, DEFAULT_STATE_LIMIT};
use gp_core::fixtures::{load_fixture, FIXTURE_NAMES};
use gp_core::gp::{GPElement, GraphProductSpec, Retraction};
use gp_core::graph::CommutationGraph;
use gp_core::monoid::{FiniteMonoid, VertexMorphism};
use gp_core::normalform::{append_letter, block_length, lfnf, rfnf_block_count, NormalForm};
use gp_core::oracle::{closure_class, closure_equal, is_reduced, min_blocks, ClosureConfig};
use gp_core::separation::{
    separate_finite, separate_pipeline, verify_certificate, SeparationError,
};
use gp_core::word::{Letter, Word};

const STATE_LIMIT: usize = 1_000_000;

fn report(label: &str, failures: Vec<String>) {
    if failures.is_empty() {
        println!("acceptance [PASS] {label}");
    } else {
        println!("acceptance [FAIL] {label}");
        for failure in failures.iter().take(10) {
            println!("  - {failure}");
        }
        panic!(
            "{label}: {} disagreement(s), first: {}",
            failures.len(),
            failures[0]
        );
    }
}

/// All words over the alphabet with length at most `max_len`.
fn words_up_to(alphabet: &[Letter], max_len: usize) -> Vec<Word> {
    let mut out: Vec<Vec<Letter>> = vec![Vec::new()];
    let mut layer: Vec<Vec<Letter>> = vec![Vec::new()];
    for _ in 0..max_len {
        let mut next = Vec::with_capacity(layer.len() * alphabet.len());
        for word in &layer {
            for &letter in alphabet {
                let mut extended = word.clone();
                extended.push(letter);
                next.push(extended);
            }
        }
        out.extend(next.iter().cloned());
        layer = next;
    }
    out.into_iter().map(Word::new).collect()
}

fn fk_elements(spec: &GraphProductSpec, k: usize) -> Vec<GPElement> {
    enumerate_fk(spec, k, STATE_LIMIT)
        .unwrap()
        .states()
        .iter()
        .map(|nf| GPElement::from_normal_form(spec, nf.clone()).unwrap())
        .collect()
}

// Word equality decided by normal forms must agree with the bounded
// congruence closure on every pair of words of length <= 4 over non-identity
// letters. The closure of one representative per class batches the pairwise
// comparisons: bounded reachability at a fixed length cap is an equivalence,
// so checking every word's membership against every class settles the whole
// matrix in both directions.
#[test]
fn word_problem_agrees_with_the_closure_oracle() {
    let config = ClosureConfig::new(8, 4_000_000);
    let mut failures = Vec::new();
    for name in FIXTURE_NAMES {
        let spec = load_fixture(name).unwrap();
        let words = words_up_to(&spec.non_identity_letters(), 4);
        let mut classes: HashMap<NormalForm, Vec<usize>> = HashMap::new();
        for (i, word) in words.iter().enumerate() {
            classes
                .entry(lfnf(&spec, word).unwrap())
                .or_default()
                .push(i);
        }
        let mut class_list: Vec<(Word, Vec<usize>)> = classes
            .into_iter()
            .map(|(nf, members)| (nf.flatten(), members))
            .collect();
        class_list.sort();
        for (rep, members) in &class_list {
            let class = match closure_class(&spec, rep, &config) {
                Ok(class) => class,
                Err(err) => {
                    failures.push(format!("{name}: closure budget failed on {rep:?}: {err}"));
                    continue;
                }
            };
            for (i, word) in words.iter().enumerate() {
                let same_by_normal_form = members.contains(&i);
                let same_by_oracle = class.contains(word);
                if same_by_normal_form != same_by_oracle {
                    failures.push(format!(
                        "{name}: word {word:?} vs class of {rep:?}: normal forms say {same_by_normal_form}, oracle says {same_by_oracle}"
                    ));
                }
            }
        }
    }
    // direct spot checks of the pairwise entry point on the small fixtures
    for name in ["FIX-A", "FIX-B", "FIX-D"] {
        let spec = load_fixture(name).unwrap();
        let words = words_up_to(&spec.non_identity_letters(), 3);
        for u in &words {
            for v in &words {
                let by_oracle = closure_equal(&spec, u, v, &config).unwrap();
                let by_normal_form = lfnf(&spec, u).unwrap() == lfnf(&spec, v).unwrap();
                if by_oracle != by_normal_form {
                    failures.push(format!(
                        "{name}: closure_equal({u:?}, {v:?}) = {by_oracle}, normal forms say {by_normal_form}"
                    ));
                }
            }
        }
    }
    report(
        "word problem agrees with the congruence-closure oracle",
        failures,
    );
}

// The left and right block counts agree everywhere, and both equal the
// brute-force minimum over complete-block decompositions on reduced words.
#[test]
fn block_length_is_two_sided_and_minimal() {
    use rand::{Rng, SeedableRng};
    let mut failures = Vec::new();
    let config = ClosureConfig::new(8, 4_000_000);
    for name in FIXTURE_NAMES {
        let spec = load_fixture(name).unwrap();
        for word in words_up_to(&spec.non_identity_letters(), 4) {
            let left = block_length(&spec, &word).unwrap();
            let right = rfnf_block_count(&spec, &word).unwrap();
            if left != right {
                failures.push(format!("{name}: {word:?}: left {left} vs right {right}"));
            }
        }
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(0x5eed);
        let mut all_letters = Vec::new();
        for vertex in 0..spec.vertex_count() {
            for element in 0..spec.monoid(vertex).size() {
                all_letters.push(Letter::new(vertex, element));
            }
        }
        for _ in 0..10_000 {
            let len = rng.random_range(0..=12);
            let word: Word = (0..len)
                .map(|_| all_letters[rng.random_range(0..all_letters.len())])
                .collect();
            let left = block_length(&spec, &word).unwrap();
            let right = rfnf_block_count(&spec, &word).unwrap();
            if left != right {
                failures.push(format!(
                    "{name}: random {word:?}: left {left} vs right {right}"
                ));
            }
        }
        for word in words_up_to(&spec.non_identity_letters(), 5) {
            if !is_reduced(&spec, &word, &config).unwrap() {
                continue;
            }
            let by_normal_form = block_length(&spec, &word).unwrap();
            let by_search = min_blocks(&spec, &word, &config).unwrap();
            if by_normal_form != by_search {
                failures.push(format!(
                    "{name}: reduced {word:?}: normal form {by_normal_form} vs search {by_search}"
                ));
            }
        }
    }
    report("block length is left/right symmetric and minimal", failures);
}

// The letter action must respect all three defining relation families on
// every fixture for k in {1, 2, 3}.
#[test]
fn letter_action_is_well_defined() {
    let mut failures = Vec::new();
    for name in FIXTURE_NAMES {
        let spec = load_fixture(name).unwrap();
        for k in 1..=3usize {
            let table = enumerate_fk(&spec, k, STATE_LIMIT).unwrap();
            let report = table.check_well_defined();
            if !report.passed() {
                failures.push(format!(
                    "{name} at k={k}: {:?} (after {} identity, {} same-vertex, {} commuting checks)",
                    report.counterexample,
                    report.identity_checks,
                    report.same_vertex_checks,
                    report.commuting_checks
                ));
            }
        }
    }
    report("letter action respects the defining relations", failures);
}

// Every pair of distinct bounded elements is separated by the direct finite
// construction, with the identity state as witness, and the produced
// certificate re-verifies.
#[test]
fn finite_separation_is_total_with_identity_witness() {
    let mut failures = Vec::new();
    for name in FIXTURE_NAMES {
        let spec = load_fixture(name).unwrap();
        let elements = fk_elements(&spec, 2);
        for u in &elements {
            for v in &elements {
                if u == v {
                    continue;
                }
                match separate_finite(&spec, u, v) {
                    Err(err) => {
                        failures.push(format!("{name}: {u:?} vs {v:?}: {err}"));
                    }
                    Ok(cert) => {
                        if cert.witness_state() != 0 {
                            failures.push(format!(
                                "{name}: {u:?} vs {v:?}: witness {}",
                                cert.witness_state()
                            ));
                        }
                        if cert.image_u().apply(0) == cert.image_v().apply(0) {
                            failures.push(format!(
                                "{name}: {u:?} vs {v:?}: images agree at the identity state"
                            ));
                        }
                        if !verify_certificate(&spec, &cert) {
                            failures.push(format!(
                                "{name}: {u:?} vs {v:?}: certificate failed verification"
                            ));
                        }
                    }
                }
            }
        }
    }
    report(
        "finite separation is total with witness at the identity state",
        failures,
    );
}

// The quotient-retract-act pipeline: identity quotients on the path fixture,
// a relabelling quotient on the free-product fixture, and the insufficiency
// error firing exactly when a quotient merges a relevant letter with the
// identity.
#[test]
fn pipeline_separation_is_total_and_flags_bad_quotients() {
    let mut failures = Vec::new();

    let fix_c = load_fixture("FIX-C").unwrap();
    let identity_quotients: Vec<VertexMorphism> = (0..fix_c.vertex_count())
        .map(|v| VertexMorphism::identity(fix_c.monoid(v)))
        .collect();
    let elements = fk_elements(&fix_c, 2);
    for u in &elements {
        for v in &elements {
            if u == v {
                continue;
            }
            match separate_pipeline(&fix_c, u, v, identity_quotients.clone()) {
                Err(err) => failures.push(format!("FIX-C: {u:?} vs {v:?}: {err}")),
                Ok(cert) => {
                    if !verify_certificate(&fix_c, &cert) {
                        failures.push(format!(
                            "FIX-C: {u:?} vs {v:?}: pipeline certificate failed verification"
                        ));
                    }
                    let expected: Vec<usize> = u.support().union(&v.support()).copied().collect();
                    if cert.pipeline().unwrap().retained_vertices != expected {
                        failures.push(format!(
                            "FIX-C: {u:?} vs {v:?}: retained {:?}, expected {expected:?}",
                            cert.pipeline().unwrap().retained_vertices
                        ));
                    }
                }
            }
        }
    }

    let fix_b = load_fixture("FIX-B").unwrap();
    let relabelled = FiniteMonoid::validate(
        vec![vec![0, 1], vec![1, 1]],
        0,
        vec!["1".into(), "t".into()],
    )
    .unwrap();
    let relabelling =
        VertexMorphism::validate(fix_b.monoid(0).clone(), relabelled, vec![0, 1]).unwrap();
    let nontrivial = vec![relabelling, VertexMorphism::identity(fix_b.monoid(1))];
    let elements = fk_elements(&fix_b, 2);
    for u in &elements {
        for v in &elements {
            if u == v {
                continue;
            }
            match separate_pipeline(&fix_b, u, v, nontrivial.clone()) {
                Err(err) => failures.push(format!("FIX-B nontrivial: {u:?} vs {v:?}: {err}")),
                Ok(cert) => {
                    if !verify_certificate(&fix_b, &cert) {
                        failures.push(format!(
                            "FIX-B nontrivial: {u:?} vs {v:?}: certificate failed verification"
                        ));
                    }
                }
            }
        }
    }

    // collapsing a -> 1 at vertex 0 must fail exactly when vertex 0 carries
    // a letter of u or v
    let trivial = FiniteMonoid::validate(vec![vec![0]], 0, vec!["1".into()]).unwrap();
    let collapse = VertexMorphism::validate(fix_b.monoid(0).clone(), trivial, vec![0, 0]).unwrap();
    let collapsing = vec![collapse, VertexMorphism::identity(fix_b.monoid(1))];
    for u in &elements {
        for v in &elements {
            if u == v {
                continue;
            }
            let relevant = u.support().contains(&0) || v.support().contains(&0);
            match separate_pipeline(&fix_b, u, v, collapsing.clone()) {
                Err(SeparationError::QuotientInsufficient { vertex, x, y }) => {
                    if !relevant {
                        failures.push(format!(
                            "FIX-B collapse: {u:?} vs {v:?}: spurious insufficiency"
                        ));
                    }
                    if vertex != 0 {
                        failures.push(format!("FIX-B collapse: wrong vertex {vertex}"));
                    }
                    let mut pair = [x, y];
                    pair.sort();
                    if pair != ["1".to_string(), "a".to_string()] {
                        failures.push(format!("FIX-B collapse: wrong pair {pair:?}"));
                    }
                }
                Err(err) => {
                    failures.push(format!("FIX-B collapse: {u:?} vs {v:?}: unexpected {err}"));
                }
                Ok(cert) => {
                    if relevant {
                        failures.push(format!(
                            "FIX-B collapse: {u:?} vs {v:?}: collapse was accepted"
                        ));
                    } else if !verify_certificate(&fix_b, &cert) {
                        failures.push(format!(
                            "FIX-B collapse: {u:?} vs {v:?}: certificate failed verification"
                        ));
                    }
                }
            }
        }
    }
    report(
        "pipeline separation is total and flags insufficient quotients",
        failures,
    );
}

// Z3 at one vertex so that same-vertex freeze agreement compares genuinely
// different letters.
fn mixed_spec() -> GraphProductSpec {
    let z3 = FiniteMonoid::validate(
        vec![vec![0, 1, 2], vec![1, 2, 0], vec![2, 0, 1]],
        0,
        vec!["1".into(), "r".into(), "s".into()],
    )
    .unwrap();
    let semilattice = |label: &str| {
        FiniteMonoid::validate(
            vec![vec![0, 1], vec![1, 1]],
            0,
            vec!["1".into(), label.into()],
        )
        .unwrap()
    };
    let graph = CommutationGraph::new(3, &[(0, 1)]).unwrap();
    GraphProductSpec::new(graph, vec![z3, semilattice("a"), semilattice("b")]).unwrap()
}

// Appending one letter changes the block count by at most one, with the
// exact characterizations of +1 and -1, and all non-identity letters of a
// vertex agree on whether a given form absorbs them.
#[test]
fn append_trichotomy_and_freeze_coherence() {
    let mut failures = Vec::new();
    let mut cases: Vec<(String, GraphProductSpec)> = FIXTURE_NAMES
        .iter()
        .map(|name| (name.to_string(), load_fixture(name).unwrap()))
        .collect();
    cases.push(("mixed".to_string(), mixed_spec()));
    for (name, spec) in &cases {
        let table = enumerate_fk(spec, 3, STATE_LIMIT).unwrap();
        for nf in table.states() {
            let k0 = nf.block_count();
            for vertex in 0..spec.vertex_count() {
                let monoid = spec.monoid(vertex);
                let mut absorbed = Vec::new();
                for element in 0..monoid.size() {
                    let x = Letter::new(vertex, element);
                    let next = append_letter(spec, nf, x).unwrap();
                    let delta = next.block_count() as i64 - k0 as i64;
                    if monoid.is_identity(element) {
                        if &next != nf {
                            failures.push(format!(
                                "{name}: identity letter moved {nf:?} at vertex {vertex}"
                            ));
                        }
                        continue;
                    }
                    absorbed.push(delta <= 0);
                    if !(-1..=1).contains(&delta) {
                        failures.push(format!(
                            "{name}: {nf:?} + {x:?}: block count jumped by {delta}"
                        ));
                        continue;
                    }
                    let expect_grow = match nf.blocks().last() {
                        None => true,
                        Some(last) => {
                            let mut support: Vec<usize> = last.support().collect();
                            if !support.contains(&vertex) {
                                support.push(vertex);
                            }
                            !spec.graph().is_complete_subset(&support).unwrap()
                        }
                    };
                    if (delta == 1) != expect_grow {
                        failures.push(format!(
                            "{name}: {nf:?} + {x:?}: delta {delta} but growth expected: {expect_grow}"
                        ));
                    }
                    let expect_shrink = match nf.blocks().last() {
                        Some(last) if last.len() == 1 => {
                            let (v, e) = last.entries()[0];
                            v == vertex && monoid.is_identity(monoid.mul(e, element))
                        }
                        _ => false,
                    };
                    if (delta == -1) != expect_shrink {
                        failures.push(format!(
                            "{name}: {nf:?} + {x:?}: delta {delta} but shrink expected: {expect_shrink}"
                        ));
                    }
                }
                if absorbed.windows(2).any(|w| w[0] != w[1]) {
                    failures.push(format!(
                        "{name}: {nf:?}: letters at vertex {vertex} disagree on freezing"
                    ));
                }
            }
        }
    }
    report(
        "single-letter appends follow the trichotomy with coherent freezing",
        failures,
    );
}

// Retractions of the path fixture onto every non-empty vertex subset are
// idempotent morphisms fixing everything supported inside the subset.
#[test]
fn retractions_are_idempotent_support_fixing_morphisms() {
    let mut failures = Vec::new();
    let spec = load_fixture("FIX-C").unwrap();
    let elements = fk_elements(&spec, 2);
    let n = spec.vertex_count();
    for mask in 1u32..(1 << n) {
        let subset: Vec<usize> = (0..n).filter(|v| mask & (1 << v) != 0).collect();
        let retraction = Retraction::new(&spec, &subset).unwrap();
        for u in &elements {
            let once = retraction.endomorphism(u).unwrap();
            let twice = retraction.endomorphism(&once).unwrap();
            if once != twice {
                failures.push(format!("subset {subset:?}: not idempotent on {u:?}"));
            }
            if u.support().iter().all(|v| subset.contains(v)) && &once != u {
                failures.push(format!("subset {subset:?}: moved supported element {u:?}"));
            }
            for v in &elements {
                let image_of_product = retraction.endomorphism(&u.multiply(v).unwrap()).unwrap();
                let product_of_images = retraction
                    .endomorphism(u)
                    .unwrap()
                    .multiply(&retraction.endomorphism(v).unwrap())
                    .unwrap();
                if image_of_product != product_of_images {
                    failures.push(format!("subset {subset:?}: not a morphism on {u:?}, {v:?}"));
                }
            }
        }
        // generator pairs across the embedded vertex monoids
        for a in 0..n {
            for x in 0..spec.monoid(a).size() {
                for b in 0..n {
                    for y in 0..spec.monoid(b).size() {
                        let gx = spec.embed_vertex(a, x).unwrap();
                        let gy = spec.embed_vertex(b, y).unwrap();
                        let image_of_product =
                            retraction.endomorphism(&gx.multiply(&gy).unwrap()).unwrap();
                        let product_of_images = retraction
                            .endomorphism(&gx)
                            .unwrap()
                            .multiply(&retraction.endomorphism(&gy).unwrap())
                            .unwrap();
                        if image_of_product != product_of_images {
                            failures.push(format!(
                                "subset {subset:?}: generators ({a},{x}) ({b},{y}) break"
                            ));
                        }
                    }
                }
            }
        }
    }
    report(
        "retractions are idempotent morphisms fixing their sub-product",
        failures,
    );
}

// `DEFAULT_STATE_LIMIT` is what the library uses when no limit is given;
// the suite pins it so certificates stay reproducible.
#[test]
fn default_state_limit_is_one_million() {
    assert_eq!(DEFAULT_STATE_LIMIT, 1_000_000);
    println!("acceptance [PASS] default state limit is one million");
}
