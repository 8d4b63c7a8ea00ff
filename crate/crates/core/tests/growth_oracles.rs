use wilson_core::catalog::{make_s, make_tilde, GeneratingSet};
use wilson_core::growth::{enumerate_ball, partition_from_ball, DedupMode, WordPartition};
use wilson_core::words::{is_reduced, verify_lemma30};
use wilson_core::{Element, Engine};

fn words_up_to(k: u8, r: usize) -> Vec<Vec<u8>> {
    let mut out = vec![Vec::new()];
    let mut layer = vec![Vec::new()];
    for _ in 0..r {
        let mut next = Vec::new();
        for w in &layer {
            for s in 0..k {
                let mut v: Vec<u8> = w.clone();
                v.push(s);
                next.push(v);
            }
        }
        out.extend(next.iter().cloned());
        layer = next;
    }
    out
}

fn find(parent: &mut [usize], i: usize) -> usize {
    let mut r = i;
    while parent[r] != r {
        r = parent[r];
    }
    parent[i] = r;
    r
}

// classes by pairwise exact equality and union-find, no signatures or balls
fn pairwise_partition(engine: &Engine, gs: &GeneratingSet, r: usize) -> WordPartition {
    let words: Vec<Vec<u8>> = words_up_to(3, r)
        .into_iter()
        .filter(|w| is_reduced(w))
        .collect();
    let elems: Vec<Element> = words.iter().map(|w| gs.evaluate(engine, w)).collect();
    let mut parent: Vec<usize> = (0..words.len()).collect();
    for i in 0..words.len() {
        for j in 0..i {
            if engine.equals(&elems[i], &elems[j]).unwrap() {
                let (a, b) = (find(&mut parent, i), find(&mut parent, j));
                parent[a.max(b)] = a.min(b);
            }
        }
    }
    let class = (0..words.len()).map(|i| find(&mut parent, i)).collect();
    WordPartition {
        radius: r,
        words,
        class,
    }
}

#[test]
fn ball_partitions_match_pairwise_oracle() {
    let mut engine = Engine::new();
    let sets = [
        make_tilde(&mut engine).unwrap(),
        make_s(&mut engine, 1).unwrap(),
        make_s(&mut engine, 2).unwrap(),
    ];
    for gs in &sets {
        for r in 0..=5 {
            let ball = enumerate_ball(&engine, gs, r, DedupMode::Signature).unwrap();
            let fast = partition_from_ball(&ball);
            let slow = pairwise_partition(&engine, gs, r);
            assert_eq!(fast, slow, "{} R={r}", gs.name);
            assert_eq!(fast.class_count(), ball.size());
        }
    }
}

#[test]
fn geodesics_are_shortlex_least() {
    let mut engine = Engine::new();
    for gs in [
        make_s(&mut engine, 2).unwrap(),
        make_tilde(&mut engine).unwrap(),
    ] {
        let r = 5;
        let ball = enumerate_ball(&engine, &gs, r, DedupMode::ExactOnly).unwrap();
        let words = words_up_to(3, r);
        for (m, g) in ball.geodesics.iter().enumerate() {
            let first = words
                .iter()
                .find(|w| {
                    engine
                        .equals(&gs.evaluate(&engine, w), &ball.members[m])
                        .unwrap()
                })
                .unwrap();
            assert_eq!(first, g);
        }
    }
}

#[test]
fn frozen_small_ball_sizes() {
    // exact pairwise enumeration, frozen
    let mut engine = Engine::new();
    let s1 = make_s(&mut engine, 1).unwrap();
    let s2 = make_s(&mut engine, 2).unwrap();
    let t = make_tilde(&mut engine).unwrap();
    let sizes = |gs| {
        enumerate_ball(&engine, gs, 6, DedupMode::ExactOnly)
            .unwrap()
            .sizes(wilson_core::growth::BallConvention::AtMost)
    };
    assert_eq!(sizes(&s1), vec![1, 4, 10, 22, 46, 94, 190]);
    assert_eq!(sizes(&s2), vec![1, 4, 10, 22, 43, 79, 142]);
    assert_eq!(sizes(&t), vec![1, 4, 10, 22, 43, 79, 142]);
}

#[test]
fn lemma30_plateau() {
    // automaton walk, agreeing with the naive scan up to 15; constant from n = 8
    let rep = verify_lemma30(40);
    let expected = [3, 6, 9, 12, 15, 18, 21];
    for (n, c) in &rep.counts {
        let want = if *n <= 7 { expected[n - 1] } else { 24 };
        assert_eq!(*c, want, "n = {n}");
    }
    assert_eq!(rep.plateau, Some(24));
}
