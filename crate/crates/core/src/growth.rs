//! Cayley-ball enumeration and the experiments built on it: growth series,
//! the free-monoid witness, and comparison of labelled balls between
//! generating sets.
//!
//! Balls contain the products of *at most* `R` generators. Duplicates are
//! found by signature buckets; membership inside a bucket is always decided by
//! the exact identity test.

use std::collections::HashMap;

use rayon::prelude::*;
use serde::Serialize;

use crate::catalog::{make_s, make_tilde, FreeQuadruple, GeneratingSet};
use crate::error::{EngineError, Error, Result};
use crate::fano::Perm;
use crate::wreath::{Element, Engine, Signature};

pub const INITIAL_SIGNATURE_DEPTH: usize = 3;
pub const MAX_SIGNATURE_DEPTH: usize = 10;

/// How candidate elements are matched against the members found so far.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum DedupMode {
    /// Signature buckets with an exact test inside each bucket.
    Signature,
    /// Exact test against every member; the reference for the accelerated mode.
    ExactOnly,
}

/// Which elements a radius-`n` ball counts.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum BallConvention {
    /// Products of at most `n` generators.
    AtMost,
    /// Products of exactly `n` generators.
    Exactly,
}

#[derive(Clone, Debug, Default, Serialize)]
pub struct DedupStats {
    pub exact_tests: usize,
    pub false_collisions: usize,
    pub final_depth: usize,
}

/// Set of distinct elements with exact membership lookup.
pub struct Dedup<'e> {
    engine: &'e Engine,
    mode: DedupMode,
    depth: usize,
    members: Vec<Element>,
    buckets: HashMap<Signature, Vec<usize>>,
    stats: DedupStats,
}

impl<'e> Dedup<'e> {
    pub fn new(engine: &'e Engine, mode: DedupMode) -> Self {
        Dedup {
            engine,
            mode,
            depth: INITIAL_SIGNATURE_DEPTH,
            members: Vec::new(),
            buckets: HashMap::new(),
            stats: DedupStats::default(),
        }
    }

    pub fn depth(&self) -> usize {
        self.depth
    }

    pub fn members(&self) -> &[Element] {
        &self.members
    }

    pub fn stats(&self) -> DedupStats {
        DedupStats {
            final_depth: self.depth,
            ..self.stats.clone()
        }
    }

    /// Index of a member equal to `e`.
    pub fn find(&mut self, e: &Element) -> Result<Option<usize>, EngineError> {
        let sig = self.engine.signature(e, self.depth);
        self.find_with(e, sig)
    }

    // `sig` must be taken at the current depth
    fn find_with(&mut self, e: &Element, sig: Signature) -> Result<Option<usize>, EngineError> {
        match self.mode {
            DedupMode::ExactOnly => {
                for (i, m) in self.members.iter().enumerate() {
                    self.stats.exact_tests += 1;
                    if self.engine.equals(e, m)? {
                        return Ok(Some(i));
                    }
                }
                Ok(None)
            }
            DedupMode::Signature => {
                let bucket = self.buckets.get(&sig).cloned().unwrap_or_default();
                let mut collided = false;
                for i in bucket {
                    self.stats.exact_tests += 1;
                    if self.engine.equals(e, &self.members[i])? {
                        return Ok(Some(i));
                    }
                    collided = true;
                }
                if collided {
                    self.stats.false_collisions += 1;
                    self.deepen();
                }
                Ok(None)
            }
        }
    }

    fn deepen(&mut self) {
        if self.depth >= MAX_SIGNATURE_DEPTH {
            return;
        }
        self.depth += 1;
        let engine = self.engine;
        let depth = self.depth;
        let sigs: Vec<Signature> = self
            .members
            .par_iter()
            .map(|m| engine.signature(m, depth))
            .collect();
        self.buckets.clear();
        for (i, s) in sigs.into_iter().enumerate() {
            self.buckets.entry(s).or_default().push(i);
        }
    }

    /// Adds `e`, which must not already be present.
    pub fn push(&mut self, e: Element) -> usize {
        let idx = self.members.len();
        if self.mode == DedupMode::Signature {
            let sig = self.engine.signature(&e, self.depth);
            self.buckets.entry(sig).or_default().push(idx);
        }
        self.members.push(e);
        idx
    }

    /// Index of `e`, inserting it if new. The flag is true for a new member.
    pub fn intern(&mut self, e: Element) -> Result<(usize, bool), EngineError> {
        match self.find(&e)? {
            Some(i) => Ok((i, false)),
            None => Ok((self.push(e), true)),
        }
    }

    /// Signatures of a batch at the current depth, computed in parallel.
    fn signatures_for(&self, batch: &[Element]) -> Vec<(usize, Signature)> {
        let engine = self.engine;
        let depth = self.depth;
        batch
            .par_iter()
            .map(|e| (depth, engine.signature(e, depth)))
            .collect()
    }
}

/// A ball in the Cayley graph with shortlex-least geodesics and labelled edges.
#[derive(Clone, Debug)]
pub struct Ball {
    pub genset: String,
    pub symbols: Vec<String>,
    pub involutions: Vec<bool>,
    pub radius: usize,
    /// Members in (length, lexicographic geodesic) order; index 0 is the identity.
    pub members: Vec<Element>,
    pub geodesics: Vec<Vec<u8>>,
    /// `edges[m][s]` is the member `m·s`, if it lies in the ball.
    pub edges: Vec<Vec<Option<usize>>>,
    pub dedup: DedupStats,
}

impl Ball {
    pub fn size(&self) -> usize {
        self.members.len()
    }

    /// Number of members whose geodesic has length `≤ n`.
    pub fn size_at(&self, n: usize) -> usize {
        self.geodesics.iter().filter(|g| g.len() <= n).count()
    }

    pub fn sphere_size(&self, n: usize) -> usize {
        self.geodesics.iter().filter(|g| g.len() == n).count()
    }

    /// Member reached by following a word from the identity.
    pub fn follow(&self, word: &[u8]) -> Option<usize> {
        word.iter()
            .try_fold(0usize, |m, &s| self.edges[m][s as usize])
    }

    pub fn render_word(&self, word: &[u8]) -> String {
        if word.is_empty() {
            return "ε".into();
        }
        word.iter()
            .map(|&s| self.symbols[s as usize].as_str())
            .collect::<Vec<_>>()
            .join(" ")
    }

    /// Sizes of `B(n)` for `n = 0..=radius` under either convention.
    pub fn sizes(&self, convention: BallConvention) -> Vec<usize> {
        match convention {
            BallConvention::AtMost => (0..=self.radius).map(|n| self.size_at(n)).collect(),
            BallConvention::Exactly => {
                let mut out = vec![1];
                let mut layer = vec![false; self.size()];
                layer[0] = true;
                for _ in 1..=self.radius {
                    let mut next = vec![false; self.size()];
                    for (m, _) in layer.iter().enumerate().filter(|(_, &on)| on) {
                        for t in self.edges[m].iter().flatten() {
                            next[*t] = true;
                        }
                    }
                    out.push(next.iter().filter(|&&b| b).count());
                    layer = next;
                }
                out
            }
        }
    }
}

/// Breadth-first enumeration of `B(R)` from the identity.
pub fn enumerate_ball(
    engine: &Engine,
    genset: &GeneratingSet,
    radius: usize,
    mode: DedupMode,
) -> Result<Ball> {
    let k = genset.len();
    let gens = genset.elements();
    let mut dedup = Dedup::new(engine, mode);
    dedup.push(Element::identity());
    let mut geodesics: Vec<Vec<u8>> = vec![Vec::new()];
    let mut edges: Vec<Vec<Option<usize>>> = vec![vec![None; k]];
    let mut layer_start = 0;
    for r in 1..=radius + 1 {
        let layer_end = geodesics.len();
        let boundary = r == radius + 1;
        let mut jobs: Vec<(usize, u8)> = Vec::new();
        for m in layer_start..layer_end {
            for s in 0..k as u8 {
                let last = geodesics[m].last().copied();
                if genset.involutions[s as usize] && last == Some(s) {
                    // m·s is the parent of m
                    let parent = edges_parent(&geodesics, &edges, m);
                    edges[m][s as usize] = Some(parent);
                    continue;
                }
                jobs.push((m, s));
            }
        }
        let products: Vec<Element> = jobs
            .par_iter()
            .map(|&(m, s)| engine.multiply(&dedup.members()[m], &gens[s as usize]))
            .collect();
        let sigs = dedup.signatures_for(&products);
        for ((&(m, s), e), (depth, sig)) in jobs.iter().zip(products).zip(sigs) {
            let sig = if depth == dedup.depth() {
                sig
            } else {
                engine.signature(&e, dedup.depth())
            };
            let found = dedup.find_with(&e, sig).map_err(Error::from)?;
            let target = match found {
                Some(t) => Some(t),
                None if boundary => None,
                None => {
                    let t = dedup.push(e);
                    let mut g = geodesics[m].clone();
                    g.push(s);
                    geodesics.push(g);
                    edges.push(vec![None; k]);
                    Some(t)
                }
            };
            edges[m][s as usize] = target;
        }
        layer_start = layer_end;
        if boundary {
            break;
        }
    }
    let stats = dedup.stats();
    let members = dedup.members;
    Ok(Ball {
        genset: genset.name.clone(),
        symbols: genset.symbols.iter().map(|(s, _)| s.clone()).collect(),
        involutions: genset.involutions.clone(),
        radius,
        members,
        geodesics,
        edges,
        dedup: stats,
    })
}

fn edges_parent(geodesics: &[Vec<u8>], edges: &[Vec<Option<usize>>], m: usize) -> usize {
    let g = &geodesics[m];
    let prefix = &g[..g.len() - 1];
    prefix
        .iter()
        .try_fold(0usize, |cur, &s| edges[cur][s as usize])
        .expect("prefix of a geodesic lies in the ball")
}

pub fn ball_sizes(engine: &Engine, genset: &GeneratingSet, rmax: usize) -> Result<Vec<usize>> {
    Ok(enumerate_ball(engine, genset, rmax, DedupMode::Signature)?.sizes(BallConvention::AtMost))
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct GrowthRow {
    pub radius: usize,
    pub ball_size: usize,
    pub sphere_size: usize,
    /// `#B(n)^{1/n}`; absent at radius 0.
    pub estimate_root: Option<f64>,
    /// `#S(n) / #S(n-1)`; absent at radius 0.
    pub estimate_ratio: Option<f64>,
}

/// Growth estimates from a sequence of ball sizes `#B(0), #B(1), …`.
pub fn growth_estimates(sizes: &[usize]) -> Vec<GrowthRow> {
    let spheres: Vec<usize> = sizes
        .iter()
        .enumerate()
        .map(|(n, &b)| {
            if n == 0 {
                b
            } else {
                b.saturating_sub(sizes[n - 1])
            }
        })
        .collect();
    sizes
        .iter()
        .enumerate()
        .map(|(n, &b)| GrowthRow {
            radius: n,
            ball_size: b,
            sphere_size: spheres[n],
            estimate_root: (n > 0).then(|| (b as f64).powf(1.0 / n as f64)),
            estimate_ratio: (n > 0 && spheres[n - 1] > 0)
                .then(|| spheres[n] as f64 / spheres[n - 1] as f64),
        })
        .collect()
}

/// Pairs `(n, m)` with `#B(n+m) > #B(n)·#B(m)`.
pub fn submultiplicativity_violations(sizes: &[usize]) -> Vec<(usize, usize)> {
    let mut out = Vec::new();
    for n in 0..sizes.len() {
        for m in 0..sizes.len() - n {
            if sizes[n + m] > sizes[n] * sizes[m] {
                out.push((n, m));
            }
        }
    }
    out
}

pub fn growth_csv(rows: &[GrowthRow]) -> String {
    let mut out = String::from("radius,ball_size,sphere_size,estimate_root,estimate_ratio\n");
    let fmt = |v: Option<f64>| v.map(|x| format!("{x:.9}")).unwrap_or_default();
    for r in rows {
        out.push_str(&format!(
            "{},{},{},{},{}\n",
            r.radius,
            r.ball_size,
            r.sphere_size,
            fmt(r.estimate_root),
            fmt(r.estimate_ratio)
        ));
    }
    out
}

/// Member list of a ball as CSV: index, geodesic length, geodesic word.
pub fn ball_csv(ball: &Ball) -> String {
    let mut out = String::from("index,length,geodesic\n");
    for (i, g) in ball.geodesics.iter().enumerate() {
        out.push_str(&format!("{i},{},{}\n", g.len(), ball.render_word(g)));
    }
    out
}

/// Graphviz rendering. Involutive edges appear once, undirected.
pub fn export_dot(ball: &Ball) -> String {
    let undirected = ball.involutions.iter().all(|&b| b);
    let (kind, arrow) = if undirected {
        ("graph", "--")
    } else {
        ("digraph", "->")
    };
    let mut out = format!("{kind} \"{}_R{}\" {{\n", ball.genset, ball.radius);
    for (i, g) in ball.geodesics.iter().enumerate() {
        out.push_str(&format!("  {i} [label=\"{}\"];\n", ball.render_word(g)));
    }
    for (i, row) in ball.edges.iter().enumerate() {
        for (s, t) in row.iter().enumerate() {
            let Some(t) = *t else { continue };
            if ball.involutions[s] && t < i {
                continue;
            }
            let arrow = if ball.involutions[s] { "--" } else { arrow };
            out.push_str(&format!(
                "  {i} {arrow} {t} [label=\"{}\"];\n",
                ball.symbols[s]
            ));
        }
    }
    out.push_str("}\n");
    out
}

pub fn dot_edge_count(ball: &Ball) -> usize {
    export_dot(ball)
        .lines()
        .filter(|l| l.contains("--") || l.contains("->"))
        .count()
}

// ---- free monoid ---------------------------------------------------------

#[derive(Clone, Debug, Serialize)]
pub struct FreeMonoidReport {
    pub u: Perm,
    pub v: Perm,
    pub max_length: usize,
    pub words: usize,
    pub distinct: usize,
    pub expected: usize,
    pub distinct_pass: bool,
    pub refinement_length: usize,
    pub refinement_words: usize,
    pub refinement_pass: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub counterexample: Option<(String, String)>,
}

impl FreeMonoidReport {
    pub fn passed(&self) -> bool {
        self.distinct_pass && self.refinement_pass
    }
}

/// All words of length `≤ max_len` over `k` letters, shortlex order.
fn all_words(k: u8, max_len: usize) -> Vec<Vec<u8>> {
    let mut out = vec![Vec::new()];
    let mut start = 0;
    for _ in 0..max_len {
        let end = out.len();
        for i in start..end {
            for s in 0..k {
                let mut w = out[i].clone();
                w.push(s);
                out.push(w);
            }
        }
        start = end;
    }
    out
}

fn intern_words(
    engine: &Engine,
    gens: &[Element],
    words: &[Vec<u8>],
) -> Result<Vec<usize>, EngineError> {
    let mut dedup = Dedup::new(engine, DedupMode::Signature);
    let elements: Vec<Element> = words
        .par_iter()
        .map(|w| engine.product(w.iter().map(|&s| &gens[s as usize])))
        .collect();
    elements
        .into_iter()
        .map(|e| dedup.intern(e).map(|(i, _)| i))
        .collect()
}

/// Checks that `{a, d}`-words of length `≤ max_len` are pairwise distinct, and
/// that equal `{a, b, c, d}`-words of length `≤ min(max_len, 5)` agree after
/// identifying `a = b` and `c = d`.
pub fn free_monoid_check(
    engine: &Engine,
    q: &FreeQuadruple,
    max_len: usize,
) -> Result<FreeMonoidReport> {
    let ad = [q.a.clone(), q.d.clone()];
    let words = all_words(2, max_len);
    let classes = intern_words(engine, &ad, &words)?;
    let distinct = classes.iter().max().map_or(0, |m| m + 1);
    let expected = (1usize << (max_len + 1)) - 1;

    let refine_len = max_len.min(5);
    let gens = [q.a.clone(), q.b.clone(), q.c.clone(), q.d.clone()];
    let rwords = all_words(4, refine_len);
    let rclasses = intern_words(engine, &gens, &rwords)?;
    let image = |w: &[u8]| -> Vec<u8> { w.iter().map(|&s| if s < 2 { 0 } else { 1 }).collect() };
    let names = ["a", "b", "c", "d"];
    let render = |w: &[u8]| -> String {
        if w.is_empty() {
            "ε".into()
        } else {
            w.iter().map(|&s| names[s as usize]).collect()
        }
    };
    let mut first_of: HashMap<usize, usize> = HashMap::new();
    let mut counterexample = None;
    for (i, &c) in rclasses.iter().enumerate() {
        let j = *first_of.entry(c).or_insert(i);
        if image(&rwords[i]) != image(&rwords[j]) {
            counterexample = Some((render(&rwords[j]), render(&rwords[i])));
            break;
        }
    }
    Ok(FreeMonoidReport {
        u: q.u,
        v: q.v,
        max_length: max_len,
        words: words.len(),
        distinct,
        expected,
        distinct_pass: distinct == expected,
        refinement_length: refine_len,
        refinement_words: rwords.len(),
        refinement_pass: counterexample.is_none(),
        counterexample,
    })
}

// ---- word partitions -------------------------------------------------------

/// Reduced words of length `≤ radius` over three symbols, grouped by the
/// element they represent. `class[i]` is the index of the first word (in
/// shortlex order) equal to `words[i]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WordPartition {
    pub radius: usize,
    pub words: Vec<Vec<u8>>,
    pub class: Vec<usize>,
}

impl WordPartition {
    pub fn class_count(&self) -> usize {
        self.class
            .iter()
            .enumerate()
            .filter(|(i, c)| i == *c)
            .count()
    }
}

fn reduced_words_up_to(k: u8, radius: usize) -> Vec<Vec<u8>> {
    all_words(k, radius)
        .into_iter()
        .filter(|w| crate::words::is_reduced(w))
        .collect()
}

pub fn word_partition(
    engine: &Engine,
    genset: &GeneratingSet,
    radius: usize,
) -> Result<WordPartition> {
    if genset.len() != 3 {
        return Err(Error::Usage(format!(
            "word partitions need exactly 3 generators, {} has {}",
            genset.name,
            genset.len()
        )));
    }
    let ball = enumerate_ball(engine, genset, radius, DedupMode::Signature)?;
    Ok(partition_from_ball(&ball))
}

pub fn partition_from_ball(ball: &Ball) -> WordPartition {
    let words = reduced_words_up_to(ball.symbols.len() as u8, ball.radius);
    let mut first: HashMap<usize, usize> = HashMap::new();
    let class = words
        .iter()
        .enumerate()
        .map(|(i, w)| {
            let m = ball.follow(w).expect("words of length ≤ R stay in B(R)");
            *first.entry(m).or_insert(i)
        })
        .collect();
    WordPartition {
        radius: ball.radius,
        words,
        class,
    }
}

/// Equality of partitions under the positional bijection of generators.
pub fn partitions_equal(p: &WordPartition, q: &WordPartition) -> Result<bool> {
    if p.radius != q.radius {
        return Err(Error::RadiusMismatch(p.radius, q.radius));
    }
    Ok(p.words == q.words && p.class == q.class)
}

#[derive(Clone, Debug, Serialize)]
pub struct LocalIsoReport {
    pub radius: usize,
    pub max_n: usize,
    /// `(n, partitions equal)` for every level tried.
    pub tried: Vec<(usize, bool)>,
    pub found: Option<usize>,
    pub tilde_ball_size: usize,
    pub s_ball_size: Option<usize>,
}

/// Least `n ≤ max_n` for which the radius-`R` balls of `(V, S̃)` and `(W, S_n)`
/// induce the same partition of reduced words.
pub fn find_min_n_local_iso(
    engine: &mut Engine,
    radius: usize,
    max_n: usize,
) -> Result<LocalIsoReport> {
    let tilde = make_tilde(engine)?;
    let sets: Vec<GeneratingSet> = (1..=max_n)
        .map(|n| make_s(engine, n))
        .collect::<Result<_, _>>()?;
    let engine: &Engine = engine;
    let tball = enumerate_ball(engine, &tilde, radius, DedupMode::Signature)?;
    let tpart = partition_from_ball(&tball);
    let mut tried = Vec::new();
    let mut found = None;
    let mut s_ball_size = None;
    for (i, s) in sets.iter().enumerate() {
        let n = i + 1;
        let sball = enumerate_ball(engine, s, radius, DedupMode::Signature)?;
        let eq = partitions_equal(&tpart, &partition_from_ball(&sball))?;
        tried.push((n, eq));
        if eq {
            found = Some(n);
            s_ball_size = Some(sball.size());
            break;
        }
    }
    Ok(LocalIsoReport {
        radius,
        max_n,
        tried,
        found,
        tilde_ball_size: tball.size(),
        s_ball_size,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::{make_base, make_free_quadruple};

    #[test]
    fn small_balls_of_s1() {
        let mut engine = Engine::new();
        let s1 = make_s(&mut engine, 1).unwrap();
        let b0 = enumerate_ball(&engine, &s1, 0, DedupMode::Signature).unwrap();
        assert_eq!(b0.size(), 1);
        assert_eq!(dot_edge_count(&b0), 0);
        let b1 = enumerate_ball(&engine, &s1, 1, DedupMode::Signature).unwrap();
        assert_eq!(b1.size(), 4);
        assert_eq!(dot_edge_count(&b1), 3);
        let b2 = enumerate_ball(&engine, &s1, 2, DedupMode::Signature).unwrap();
        assert!(b2.size() <= 10);
        assert_eq!(export_dot(&b2), export_dot(&b2.clone()));
    }

    #[test]
    fn base_ball_is_the_finite_group() {
        let engine = Engine::new();
        let base = make_base();
        let ball = enumerate_ball(&engine, &base, 20, DedupMode::Signature).unwrap();
        assert_eq!(ball.size(), 168);
        let sizes = ball.sizes(BallConvention::AtMost);
        assert!(sizes.windows(2).all(|w| w[0] <= w[1]));
        assert!(submultiplicativity_violations(&sizes).is_empty());
    }

    #[test]
    fn geodesics_evaluate_to_members() {
        let mut engine = Engine::new();
        let s1 = make_s(&mut engine, 1).unwrap();
        let ball = enumerate_ball(&engine, &s1, 5, DedupMode::Signature).unwrap();
        for (i, g) in ball.geodesics.iter().enumerate() {
            let e = s1.evaluate(&engine, g);
            assert!(engine.equals(&e, &ball.members[i]).unwrap());
            assert_eq!(ball.follow(g), Some(i));
        }
        for (m, row) in ball.edges.iter().enumerate() {
            for (s, t) in row.iter().enumerate() {
                if let Some(t) = t {
                    assert_eq!(ball.edges[*t][s], Some(m), "involutive edges are symmetric");
                }
            }
        }
    }

    #[test]
    fn exact_only_matches_signature_mode() {
        let mut engine = Engine::new();
        let t = make_tilde(&mut engine).unwrap();
        let fast = enumerate_ball(&engine, &t, 5, DedupMode::Signature).unwrap();
        let slow = enumerate_ball(&engine, &t, 5, DedupMode::ExactOnly).unwrap();
        assert_eq!(fast.geodesics, slow.geodesics);
    }

    #[test]
    fn free_group_toy_sizes() {
        // rank-2 free group: #B(n) = 2·3^n − 1
        let sizes: Vec<usize> = (0..8).map(|n| 2 * 3usize.pow(n) - 1).collect();
        let rows = growth_estimates(&sizes);
        assert_eq!(rows[1].estimate_ratio, Some(4.0));
        for r in &rows[2..] {
            assert_eq!(r.estimate_ratio, Some(3.0));
        }
        assert!(submultiplicativity_violations(&sizes).is_empty());
        assert_eq!(submultiplicativity_violations(&[1, 3, 100]), vec![(1, 1)]);
        let csv = growth_csv(&rows);
        assert!(
            csv.starts_with("radius,ball_size,sphere_size,estimate_root,estimate_ratio\n0,1,1,,\n")
        );
    }

    #[test]
    fn exactly_convention() {
        let engine = Engine::new();
        let base = make_base();
        let ball = enumerate_ball(&engine, &base, 3, DedupMode::Signature).unwrap();
        let exact = ball.sizes(BallConvention::Exactly);
        assert_eq!(exact[0], 1);
        assert_eq!(exact[1], 3);
        // words of length 2 over involutions: identity plus the 6 products st, s ≠ t
        assert_eq!(exact[2], 7);
    }

    #[test]
    fn small_partitions() {
        let mut engine = Engine::new();
        let t = make_tilde(&mut engine).unwrap();
        let s1 = make_s(&mut engine, 1).unwrap();
        let p0 = word_partition(&engine, &t, 0).unwrap();
        assert_eq!(p0.class_count(), 1);
        let pt = word_partition(&engine, &t, 1).unwrap();
        assert_eq!(pt.class_count(), 4);
        let ps = word_partition(&engine, &s1, 1).unwrap();
        assert!(partitions_equal(&pt, &ps).unwrap());
        assert!(partitions_equal(&pt, &pt).unwrap());
        assert!(partitions_equal(&pt, &p0).is_err());
    }

    #[test]
    fn local_iso_radius_one() {
        let mut engine = Engine::new();
        let rep = find_min_n_local_iso(&mut engine, 1, 3).unwrap();
        assert_eq!(rep.found, Some(1));
    }

    #[test]
    fn free_monoid_small() {
        let mut engine = Engine::new();
        let q = make_free_quadruple(&mut engine);
        let rep = free_monoid_check(&engine, &q, 1).unwrap();
        assert_eq!(rep.distinct, 3);
        assert!(rep.passed());
        let rep = free_monoid_check(&engine, &q, 4).unwrap();
        assert_eq!(rep.distinct, 31);
        assert!(rep.passed(), "{rep:?}");
    }
}
