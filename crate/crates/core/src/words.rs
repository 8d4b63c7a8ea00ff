//! Reduced words over three involutions `a', b', c'` (letters `0, 1, 2`), the
//! forbidden pattern set Δ, and counting of Δ-free words.

use std::collections::HashMap;

use serde::Serialize;

use crate::bounds::check_eta;
use crate::error::BoundError;
use crate::growth::Ball;

/// The six Δ patterns: `a'b'a'`, `b'c'b'`, `c'a'c'` and three words of length 9.
pub const DELTA: [&[u8]; 6] = [
    &[0, 1, 0],
    &[1, 2, 1],
    &[2, 0, 2],
    &[0, 2, 1, 0, 2, 0, 1, 2, 0],
    &[1, 0, 2, 1, 0, 1, 2, 0, 1],
    &[2, 1, 0, 2, 1, 2, 0, 1, 2],
];

const LONGEST_PATTERN: usize = 9;

pub fn render_word(w: &[u8]) -> String {
    w.iter()
        .map(|&l| match l {
            0 => "a'",
            1 => "b'",
            2 => "c'",
            _ => "?",
        })
        .collect()
}

pub fn is_reduced(w: &[u8]) -> bool {
    w.windows(2).all(|p| p[0] != p[1])
}

/// Reduced words of length `n`, in lexicographic order.
pub fn reduced_words(n: usize) -> ReducedWords {
    ReducedWords {
        n,
        next: 0,
        total: if n == 0 { 1 } else { 3u64 << (n - 1) },
    }
}

pub struct ReducedWords {
    n: usize,
    next: u64,
    total: u64,
}

impl Iterator for ReducedWords {
    type Item = Vec<u8>;

    fn next(&mut self) -> Option<Vec<u8>> {
        if self.next >= self.total {
            return None;
        }
        let idx = self.next;
        self.next += 1;
        if self.n == 0 {
            return Some(Vec::new());
        }
        let tail = self.n - 1;
        let mut w = Vec::with_capacity(self.n);
        w.push((idx >> tail) as u8);
        for bit in (0..tail).rev() {
            let prev = *w.last().unwrap();
            // the two letters different from prev, in increasing order
            let choices = [(prev == 0) as u8, 2 - (prev == 2) as u8];
            w.push(choices[((idx >> bit) & 1) as usize]);
        }
        Some(w)
    }

    fn size_hint(&self) -> (usize, Option<usize>) {
        let left = (self.total - self.next) as usize;
        (left, Some(left))
    }
}

impl ExactSizeIterator for ReducedWords {}

/// Number of `(pattern, start)` matches of Δ in `w`, overlaps included.
pub fn count_delta_occurrences(w: &[u8]) -> usize {
    DELTA
        .iter()
        .map(|pat| w.windows(pat.len()).filter(|win| win == pat).count())
        .sum()
}

pub fn contains_delta(w: &[u8]) -> bool {
    DELTA
        .iter()
        .any(|pat| w.windows(pat.len()).any(|win| win == *pat))
}

/// Δ-free reduced words of length `n` by brute-force enumeration.
pub fn count_delta_free_naive(n: usize) -> u64 {
    reduced_words(n).filter(|w| !contains_delta(w)).count() as u64
}

/// Δ-free reduced words of length `n`, by a walk over the automaton whose
/// states are the last eight letters read.
pub fn count_delta_free(n: usize) -> u64 {
    if n == 0 {
        return 1;
    }
    let mut layer: HashMap<Vec<u8>, u64> = HashMap::new();
    layer.insert(Vec::new(), 1);
    let mut buf = Vec::with_capacity(LONGEST_PATTERN);
    for _ in 0..n {
        let mut next: HashMap<Vec<u8>, u64> = HashMap::new();
        for (state, &count) in &layer {
            for letter in 0..3u8 {
                if state.last() == Some(&letter) {
                    continue;
                }
                buf.clear();
                buf.extend_from_slice(state);
                buf.push(letter);
                if DELTA.iter().any(|pat| buf.ends_with(pat)) {
                    continue;
                }
                let keep = buf.len().min(LONGEST_PATTERN - 1);
                let key = buf[buf.len() - keep..].to_vec();
                *next.entry(key).or_insert(0) += count;
            }
        }
        layer = next;
    }
    layer.values().sum()
}

#[derive(Clone, Debug, Serialize)]
pub struct Lemma30Report {
    pub max_n: usize,
    /// `(n, count_delta_free(n))` for `n = 1..=max_n`.
    pub counts: Vec<(usize, u64)>,
    pub all_at_most_30: bool,
    /// Common value of the counts over the final stretch `n ≥ 20`, if constant.
    pub plateau: Option<u64>,
}

/// Counts Δ-free words for every length up to `max_n` and checks the bound 30.
pub fn verify_lemma30(max_n: usize) -> Lemma30Report {
    let counts: Vec<(usize, u64)> = (1..=max_n).map(|n| (n, count_delta_free(n))).collect();
    let all_at_most_30 = counts.iter().all(|&(_, c)| c <= 30);
    let tail: Vec<u64> = counts
        .iter()
        .filter(|(n, _)| *n >= 20)
        .map(|&(_, c)| c)
        .collect();
    let plateau = match tail.first() {
        Some(&first) if tail.iter().all(|&c| c == first) => Some(first),
        _ => None,
    };
    Lemma30Report {
        max_n,
        counts,
        all_at_most_30,
        plateau,
    }
}

/// `⌈ηn⌉`, ignoring floating-point noise below `1e-9`.
pub fn ceil_eta_n(n: usize, eta: f64) -> usize {
    ((eta * n as f64) - 1e-9).ceil().max(0.0) as usize
}

fn ln_binomial(n: usize, k: usize) -> f64 {
    let k = k.min(n - k.min(n));
    (0..k)
        .map(|i| ((n - i) as f64).ln() - ((i + 1) as f64).ln())
        .sum()
}

/// `k · base^k · C(n, k)` with `k = ⌈ηn⌉`.
pub fn finite_bound_with_base(n: usize, eta: f64, base: f64) -> Result<f64, BoundError> {
    check_eta(eta)?;
    let k = ceil_eta_n(n, eta).min(n);
    if k == 0 {
        return Ok(0.0);
    }
    let ln = (k as f64).ln() + k as f64 * base.ln() + ln_binomial(n, k);
    Ok(ln.exp())
}

/// Upper bound `ηn · 30^{ηn} · C(n, ηn)` on the number of geodesics of length
/// `n` with at most `ηn` Δ-occurrences.
pub fn finite_bound_f_less(n: usize, eta: f64) -> Result<f64, BoundError> {
    finite_bound_with_base(n, eta, 30.0)
}

#[derive(Clone, Debug, Serialize)]
pub struct DeltaStatsRow {
    pub length: usize,
    pub geodesics: usize,
    pub count_below: usize,
    pub count_at_least: usize,
    pub bound: f64,
    pub within_bound: bool,
}

/// Splits the geodesic representatives of each length `n ≥ 1` by whether they
/// contain at most `ηn` Δ-occurrences, and compares the first class with
/// [`finite_bound_f_less`]. Generator `i` of the ball plays letter `i`.
pub fn geodesic_delta_stats(ball: &Ball, eta: f64) -> Result<Vec<DeltaStatsRow>, BoundError> {
    check_eta(eta)?;
    let mut rows = Vec::new();
    for n in 1..=ball.radius {
        let mut below = 0;
        let mut above = 0;
        for g in ball.geodesics.iter().filter(|g| g.len() == n) {
            if count_delta_occurrences(g) as f64 <= eta * n as f64 + 1e-9 {
                below += 1;
            } else {
                above += 1;
            }
        }
        let bound = finite_bound_f_less(n, eta)?;
        rows.push(DeltaStatsRow {
            length: n,
            geodesics: below + above,
            count_below: below,
            count_at_least: above,
            bound,
            within_bound: below as f64 <= bound,
        });
    }
    Ok(rows)
}

pub fn lemma30_csv(report: &Lemma30Report) -> String {
    let mut out = String::from("n,count_delta_free\n");
    for (n, c) in &report.counts {
        out.push_str(&format!("{n},{c}\n"));
    }
    out
}

pub fn delta_stats_csv(eta: f64, rows: &[DeltaStatsRow]) -> String {
    let mut out =
        String::from("eta,length,geodesics,count_below,count_at_least,bound,within_bound\n");
    for r in rows {
        out.push_str(&format!(
            "{eta},{},{},{},{},{:.6e},{}\n",
            r.length, r.geodesics, r.count_below, r.count_at_least, r.bound, r.within_bound
        ));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn reduced_word_counts() {
        assert_eq!(reduced_words(0).count(), 1);
        assert_eq!(reduced_words(1).count(), 3);
        assert_eq!(reduced_words(3).count(), 12);
        for n in 1..10 {
            let words: Vec<_> = reduced_words(n).collect();
            assert_eq!(words.len(), 3 << (n - 1));
            assert!(words.iter().all(|w| w.len() == n && is_reduced(w)));
            assert!(words.windows(2).all(|p| p[0] < p[1]));
        }
    }

    #[test]
    fn delta_membership() {
        assert!(contains_delta(&[0, 1, 0]));
        assert!(!contains_delta(&[0, 1, 2]));
        // a'b'a' at 0 and 2; b'a'b' is not a pattern
        assert_eq!(count_delta_occurrences(&[0, 1, 0, 1, 0]), 2);
        assert_eq!(count_delta_occurrences(&[1, 2, 1, 2, 1]), 2);
        assert_eq!(count_delta_occurrences(&[0, 2, 1, 0, 2, 0, 1, 2, 0]), 1);
        assert_eq!(render_word(&[0, 1, 2]), "a'b'c'");
    }

    #[test]
    fn small_delta_free_counts() {
        assert_eq!(count_delta_free(0), 1);
        assert_eq!(count_delta_free(1), 3);
        assert_eq!(count_delta_free(2), 6);
        assert_eq!(count_delta_free(3), 9);
    }

    #[test]
    fn automaton_matches_naive_scan() {
        for n in 0..=15 {
            assert_eq!(count_delta_free(n), count_delta_free_naive(n), "n = {n}");
        }
    }

    #[test]
    fn lemma_bound_holds() {
        let rep = verify_lemma30(40);
        assert!(rep.all_at_most_30);
        for &(n, c) in &rep.counts {
            assert!(c <= 3u64 << (n - 1));
        }
        let plateau = rep.plateau.expect("counts are eventually constant");
        assert!(plateau <= 30);
    }

    #[test]
    fn finite_bound_values() {
        let v = finite_bound_f_less(10, 0.3).unwrap();
        assert!((v - 9_720_000.0).abs() / 9_720_000.0 < 1e-12);
        assert_eq!(ceil_eta_n(10, 0.3), 3);
        assert_eq!(ceil_eta_n(10, 0.25), 3);
        assert!(finite_bound_with_base(10, 0.3, 31.0).unwrap() > v);
        // η close to 1: k = n, bound = n 30^n ≥ 3·2^{n-1}
        let n = 12;
        assert!(finite_bound_f_less(n, 0.999).unwrap() >= (3u64 << (n - 1)) as f64);
        assert!(finite_bound_f_less(10, 0.0).is_err());
        assert!(finite_bound_f_less(10, 1.0).is_err());
    }

    mod props {
        use super::*;
        use proptest::prelude::*;

        proptest! {
            #[test]
            fn occurrences_vs_contains(w in proptest::collection::vec(0u8..3, 0..30)) {
                prop_assert_eq!(count_delta_occurrences(&w) > 0, contains_delta(&w));
            }
        }
    }
}
