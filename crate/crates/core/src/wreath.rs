//! Self-similar transformations of the free monoid `P*` over the seven Fano points.
//!
//! An element is a word over *letters*: permutations of `P` acting on the first
//! symbol only, and *atoms*, which are named transformations `g = <g_1,…,g_7>a`
//! whose sections `g_p` are again single letters (possibly the atom itself).
//! Because sections of a word are words of at most the same number of atoms,
//! the set of iterated sections of any element is finite, and the word problem
//! is decided by exploring that state closure.
//!
//! Action is on the right: `(p s)g = (p·a) (s)g_p`, so the sections of a
//! product follow `(gh)_p = g_p · h_{p·a}` where `a` is the root of `g`.

use std::collections::hash_map::DefaultHasher;
use std::collections::{HashMap, HashSet, VecDeque};
use std::hash::{Hash, Hasher};
use std::sync::RwLock;

use serde::Serialize;

use crate::error::EngineError;
use crate::fano::{Perm, Point, DEGREE};

/// Default cap on the number of distinct states explored by one identity test.
pub const DEFAULT_STATE_BUDGET: usize = 1_000_000;

pub type AtomId = u32;

/// One symbol of an element word.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Letter {
    Perm(Perm),
    Atom { id: AtomId, inverse: bool },
}

impl Letter {
    pub fn atom(id: AtomId) -> Letter {
        Letter::Atom { id, inverse: false }
    }
}

/// A group element as a normalized word. Only the [`Engine`] builds non-trivial
/// words, so every `Element` in circulation is in normal form for that engine.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Element {
    letters: Vec<Letter>,
}

impl Element {
    pub fn identity() -> Element {
        Element::default()
    }

    pub fn perm(p: Perm) -> Element {
        if p.is_identity() {
            Element::identity()
        } else {
            Element {
                letters: vec![Letter::Perm(p)],
            }
        }
    }

    pub fn is_trivial_word(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn letters(&self) -> &[Letter] {
        &self.letters
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    fn as_single_letter(&self) -> Option<Option<Letter>> {
        match self.letters.as_slice() {
            [] => Some(None),
            [l] => Some(Some(*l)),
            _ => None,
        }
    }
}

/// Decomposition `<g_1,…,g_7>a` of an element.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct NodeForm {
    pub root: Perm,
    pub sections: [Element; DEGREE],
}

impl NodeForm {
    /// `<sections>root` with the listed sections and identity elsewhere.
    pub fn sparse(root: Perm, sections: &[(u8, Element)]) -> NodeForm {
        let mut out: [Element; DEGREE] = Default::default();
        for (label, e) in sections {
            let p = Point::new(*label).expect("section label in 1..=7");
            out[p.index()] = e.clone();
        }
        NodeForm {
            root,
            sections: out,
        }
    }
}

#[derive(Clone, Debug)]
struct AtomDef {
    name: String,
    root: Perm,
    sections: [Option<Letter>; DEGREE],
    involution: bool,
    defined: bool,
}

/// Digest of the action of an element on all strings up to some length.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Signature(pub u64);

/// Size of the state closure explored by an identity test.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize)]
pub struct ClosureStats {
    pub states: usize,
}

/// Tree of root permutations of iterated sections.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Portrait {
    pub root: Perm,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub children: Vec<Portrait>,
}

impl Portrait {
    /// One line per vertex: the address (`ε` for the root) then its permutation.
    pub fn render(&self) -> String {
        let mut out = String::new();
        self.render_into(&mut String::new(), &mut out);
        out
    }

    fn render_into(&self, path: &mut String, out: &mut String) {
        let addr = if path.is_empty() { "ε" } else { path.as_str() };
        out.push_str(addr);
        out.push(' ');
        out.push_str(&self.root.to_string());
        out.push('\n');
        for (i, child) in self.children.iter().enumerate() {
            path.push(char::from(b'1' + i as u8));
            child.render_into(path, out);
            path.pop();
        }
    }

    pub fn is_trivial(&self) -> bool {
        self.root.is_identity() && self.children.iter().all(Portrait::is_trivial)
    }
}

/// Atom registry plus the memo tables used by the word problem.
pub struct Engine {
    atoms: Vec<AtomDef>,
    by_name: HashMap<String, AtomId>,
    node_atoms: HashMap<(Perm, [Option<Letter>; DEGREE]), AtomId>,
    atomized: HashMap<Element, Letter>,
    budget: usize,
    identity_cache: RwLock<HashMap<Element, bool>>,
    signature_cache: RwLock<HashMap<(Element, usize), Signature>>,
}

impl Default for Engine {
    fn default() -> Self {
        Engine::new()
    }
}

impl Clone for Engine {
    /// Copies the atom registry; memo tables start empty.
    fn clone(&self) -> Self {
        Engine {
            atoms: self.atoms.clone(),
            by_name: self.by_name.clone(),
            node_atoms: self.node_atoms.clone(),
            atomized: self.atomized.clone(),
            budget: self.budget,
            identity_cache: RwLock::default(),
            signature_cache: RwLock::default(),
        }
    }
}

impl Engine {
    pub fn new() -> Engine {
        Engine::with_budget(DEFAULT_STATE_BUDGET)
    }

    pub fn with_budget(budget: usize) -> Engine {
        Engine {
            atoms: Vec::new(),
            by_name: HashMap::new(),
            node_atoms: HashMap::new(),
            atomized: HashMap::new(),
            budget,
            identity_cache: RwLock::default(),
            signature_cache: RwLock::default(),
        }
    }

    pub fn budget(&self) -> usize {
        self.budget
    }

    pub fn set_budget(&mut self, budget: usize) {
        self.budget = budget;
    }

    pub fn atom_count(&self) -> usize {
        self.atoms.len()
    }

    // ---- atom registry -------------------------------------------------

    /// Reserves an atom so that definitions may refer to it (or to themselves).
    /// The atom must be given a definition with [`Engine::define`] before use.
    pub fn declare(&mut self, name: &str) -> AtomId {
        if let Some(&id) = self.by_name.get(name) {
            return id;
        }
        let id = self.atoms.len() as AtomId;
        self.atoms.push(AtomDef {
            name: name.to_string(),
            root: Perm::IDENTITY,
            sections: [None; DEGREE],
            involution: false,
            defined: false,
        });
        self.by_name.insert(name.to_string(), id);
        id
    }

    pub fn define(&mut self, id: AtomId, root: Perm, sections: [Option<Letter>; DEGREE]) {
        let def = &mut self.atoms[id as usize];
        def.root = root;
        def.sections = sections.map(|s| match s {
            Some(Letter::Perm(p)) if p.is_identity() => None,
            other => other,
        });
        def.defined = true;
    }

    /// Defines an atom from a node form whose sections are arbitrary elements;
    /// multi-letter sections are first turned into atoms of their own.
    pub fn define_node(&mut self, id: AtomId, nf: &NodeForm) -> Result<(), EngineError> {
        let mut sections = [None; DEGREE];
        for (slot, e) in sections.iter_mut().zip(nf.sections.iter()) {
            *slot = self.letter_for(e)?;
        }
        self.define(id, nf.root, sections);
        Ok(())
    }

    pub fn atom_by_name(&self, name: &str) -> Option<AtomId> {
        self.by_name.get(name).copied()
    }

    pub fn atom_name(&self, id: AtomId) -> &str {
        &self.atoms[id as usize].name
    }

    pub fn atom(&self, id: AtomId) -> Element {
        self.normalize([Letter::atom(id)])
    }

    pub fn is_flagged_involution(&self, id: AtomId) -> bool {
        self.atoms[id as usize].involution
    }

    /// Checks `g² = 1` for each atom with the state-closure test (which does not
    /// rely on the flag) and then flags it, enabling square cancellation.
    pub fn mark_involutions(&mut self, ids: &[AtomId]) -> Result<(), EngineError> {
        for &id in ids {
            self.check_defined(id)?;
            let g = self.atom(id);
            if !self.is_identity(&self.multiply(&g, &g))? {
                return Err(EngineError::NotInvolution(self.render(&g)));
            }
        }
        for &id in ids {
            self.atoms[id as usize].involution = true;
        }
        Ok(())
    }

    fn check_defined(&self, id: AtomId) -> Result<(), EngineError> {
        let def = &self.atoms[id as usize];
        if def.defined {
            Ok(())
        } else {
            Err(EngineError::Undefined(def.name.clone()))
        }
    }

    /// The element `<sections>root`.
    ///
    /// Returns the bare permutation when every section is trivial, and otherwise
    /// a (memoized) atom with these sections.
    pub fn node(&mut self, nf: &NodeForm) -> Result<Element, EngineError> {
        let mut sections = [None; DEGREE];
        for (slot, e) in sections.iter_mut().zip(nf.sections.iter()) {
            *slot = self.letter_for(e)?;
        }
        if sections.iter().all(Option::is_none) {
            return Ok(Element::perm(nf.root));
        }
        let key = (nf.root, sections);
        if let Some(&id) = self.node_atoms.get(&key) {
            return Ok(self.atom(id));
        }
        let id = self.declare(&format!("node{}", self.node_atoms.len()));
        self.define(id, nf.root, sections);
        self.node_atoms.insert(key, id);
        Ok(self.atom(id))
    }

    /// Inverse of [`Engine::decompose`].
    pub fn recompose(&mut self, nf: &NodeForm) -> Result<Element, EngineError> {
        self.node(nf)
    }

    fn letter_for(&mut self, e: &Element) -> Result<Option<Letter>, EngineError> {
        match e.as_single_letter() {
            Some(l) => Ok(l),
            None => self.atomize(e).map(Some),
        }
    }

    /// Turns an element into a single letter by creating one atom per state of
    /// its state closure.
    pub fn atomize(&mut self, e: &Element) -> Result<Letter, EngineError> {
        if let Some(Some(l)) = e.as_single_letter() {
            return Ok(l);
        }
        if let Some(&l) = self.atomized.get(e) {
            return Ok(l);
        }
        let states = self.state_closure(e)?;
        let base = self.atomized.len();
        let mut ids = HashMap::new();
        for (k, s) in states.iter().enumerate() {
            if s.len() >= 2 && !self.atomized.contains_key(s) {
                let id = self.declare(&format!("st{}_{}", base, k));
                ids.insert(s.clone(), id);
            }
        }
        for (s, &id) in &ids {
            let nf = self.decompose(s);
            let mut sections = [None; DEGREE];
            for (slot, sec) in sections.iter_mut().zip(nf.sections.iter()) {
                *slot = match sec.as_single_letter() {
                    Some(l) => l,
                    None => Some(
                        ids.get(sec)
                            .map(|&i| Letter::atom(i))
                            .or_else(|| self.atomized.get(sec).copied())
                            .expect("section lies in the closure"),
                    ),
                };
            }
            self.define(id, nf.root, sections);
        }
        for (s, id) in ids {
            self.atomized.insert(s, Letter::atom(id));
        }
        Ok(self.atomized[e])
    }

    // ---- words ---------------------------------------------------------

    fn letter_root(&self, l: Letter) -> Perm {
        match l {
            Letter::Perm(p) => p,
            Letter::Atom { id, inverse } => {
                let def = &self.atoms[id as usize];
                debug_assert!(def.defined, "atom {} used before definition", def.name);
                if inverse {
                    def.root.inverse()
                } else {
                    def.root
                }
            }
        }
    }

    fn letter_section(&self, l: Letter, p: Point) -> Option<Letter> {
        match l {
            Letter::Perm(_) => None,
            Letter::Atom { id, inverse: false } => self.atoms[id as usize].sections[p.index()],
            Letter::Atom { id, inverse: true } => {
                // (g⁻¹)_p = (g_{p·a⁻¹})⁻¹
                let def = &self.atoms[id as usize];
                let q = def.root.inverse().apply(p);
                def.sections[q.index()].map(|s| self.letter_inverse(s))
            }
        }
    }

    fn letter_inverse(&self, l: Letter) -> Letter {
        match l {
            Letter::Perm(p) => Letter::Perm(p.inverse()),
            Letter::Atom { id, inverse } => Letter::Atom {
                id,
                inverse: !inverse && !self.atoms[id as usize].involution,
            },
        }
    }

    /// Left-to-right stack reduction: adjacent permutations fold, identities drop,
    /// `g g⁻¹` and squares of flagged involutions cancel.
    pub fn normalize(&self, letters: impl IntoIterator<Item = Letter>) -> Element {
        let mut stack: Vec<Letter> = Vec::new();
        for l in letters {
            match l {
                Letter::Perm(p) => {
                    if let Some(Letter::Perm(q)) = stack.last().copied() {
                        stack.pop();
                        let r = q.compose(&p);
                        if !r.is_identity() {
                            stack.push(Letter::Perm(r));
                        }
                    } else if !p.is_identity() {
                        stack.push(l);
                    }
                }
                Letter::Atom { id, inverse } => {
                    let inv_flag = self.atoms[id as usize].involution;
                    let inverse = inverse && !inv_flag;
                    match stack.last().copied() {
                        Some(Letter::Atom {
                            id: top,
                            inverse: top_inv,
                        }) if top == id && (top_inv != inverse || inv_flag) => {
                            stack.pop();
                        }
                        _ => stack.push(Letter::Atom { id, inverse }),
                    }
                }
            }
        }
        Element { letters: stack }
    }

    pub fn multiply(&self, g: &Element, h: &Element) -> Element {
        if g.is_empty() {
            return h.clone();
        }
        if h.is_empty() {
            return g.clone();
        }
        self.normalize(g.letters.iter().chain(h.letters.iter()).copied())
    }

    pub fn product<'a>(&self, factors: impl IntoIterator<Item = &'a Element>) -> Element {
        self.normalize(factors.into_iter().flat_map(|e| e.letters.iter().copied()))
    }

    pub fn inverse(&self, g: &Element) -> Element {
        self.normalize(g.letters.iter().rev().map(|&l| self.letter_inverse(l)))
    }

    pub fn power(&self, g: &Element, k: i64) -> Element {
        let base = if k < 0 { self.inverse(g) } else { g.clone() };
        let n = k.unsigned_abs() as usize;
        self.normalize(std::iter::repeat_n(base.letters.iter().copied(), n).flatten())
    }

    /// `[g, h] = g⁻¹ h⁻¹ g h`.
    pub fn commutator(&self, g: &Element, h: &Element) -> Element {
        self.product([&self.inverse(g), &self.inverse(h), g, h])
    }

    /// `g^h = h⁻¹ g h`.
    pub fn conjugate(&self, g: &Element, h: &Element) -> Element {
        self.product([&self.inverse(h), g, h])
    }

    // ---- wreath recursion ---------------------------------------------

    pub fn root(&self, e: &Element) -> Perm {
        e.letters
            .iter()
            .fold(Perm::IDENTITY, |acc, &l| acc.compose(&self.letter_root(l)))
    }

    /// Section `e_p`.
    pub fn section(&self, e: &Element, p: Point) -> Element {
        let mut q = p;
        let mut parts = Vec::with_capacity(e.len());
        for &l in &e.letters {
            if let Some(s) = self.letter_section(l, q) {
                parts.push(s);
            }
            q = self.letter_root(l).apply(q);
        }
        self.normalize(parts)
    }

    pub fn decompose(&self, e: &Element) -> NodeForm {
        let sections = std::array::from_fn(|i| self.section(e, Point::from_index(i)));
        NodeForm {
            root: self.root(e),
            sections,
        }
    }

    /// Image of a string of points.
    pub fn act(&self, e: &Element, s: &[Point]) -> Vec<Point> {
        let mut out = Vec::with_capacity(s.len());
        let mut cur = e.clone();
        for (i, &p) in s.iter().enumerate() {
            if cur.is_empty() {
                out.extend_from_slice(&s[i..]);
                break;
            }
            out.push(self.root(&cur).apply(p));
            cur = self.section(&cur, p);
        }
        out
    }

    /// All distinct non-trivial iterated sections of `e`, `e` first, in breadth-first order.
    pub fn state_closure(&self, e: &Element) -> Result<Vec<Element>, EngineError> {
        let mut seen: HashSet<Element> = HashSet::new();
        let mut order = Vec::new();
        if e.is_empty() {
            return Ok(order);
        }
        seen.insert(e.clone());
        order.push(e.clone());
        let mut head = 0;
        while head < order.len() {
            let s = order[head].clone();
            head += 1;
            for p in Point::all() {
                let sec = self.section(&s, p);
                if !sec.is_empty() && seen.insert(sec.clone()) {
                    order.push(sec);
                    if order.len() > self.budget {
                        return Err(self.budget_error(e));
                    }
                }
            }
        }
        Ok(order)
    }

    fn budget_error(&self, e: &Element) -> EngineError {
        EngineError::BudgetExceeded {
            budget: self.budget,
            word: self.render(e),
        }
    }

    /// Decides whether `e` acts trivially on `P*`.
    pub fn is_identity(&self, e: &Element) -> Result<bool, EngineError> {
        self.is_identity_with_stats(e).map(|(b, _)| b)
    }

    /// As [`Engine::is_identity`], also reporting how many states were explored.
    ///
    /// The element is the identity iff every state in its section closure has
    /// trivial root. States already known to be trivial are not re-expanded.
    pub fn is_identity_with_stats(&self, e: &Element) -> Result<(bool, ClosureStats), EngineError> {
        if e.is_empty() {
            return Ok((true, ClosureStats { states: 0 }));
        }
        if let Some(&known) = self.identity_cache.read().unwrap().get(e) {
            return Ok((known, ClosureStats { states: 0 }));
        }
        let mut seen: HashSet<Element> = HashSet::new();
        let mut queue = VecDeque::new();
        seen.insert(e.clone());
        queue.push_back(e.clone());
        let mut verdict = true;
        {
            let cache = self.identity_cache.read().unwrap();
            while let Some(s) = queue.pop_front() {
                match cache.get(&s) {
                    Some(true) => continue,
                    Some(false) => {
                        verdict = false;
                        break;
                    }
                    None => {}
                }
                if !self.root(&s).is_identity() {
                    verdict = false;
                    break;
                }
                for p in Point::all() {
                    let sec = self.section(&s, p);
                    if !sec.is_empty() && !seen.contains(&sec) {
                        seen.insert(sec.clone());
                        queue.push_back(sec);
                        if seen.len() > self.budget {
                            return Err(self.budget_error(e));
                        }
                    }
                }
            }
        }
        let stats = ClosureStats { states: seen.len() };
        let mut cache = self.identity_cache.write().unwrap();
        if verdict {
            cache.extend(seen.into_iter().map(|s| (s, true)));
        } else {
            cache.insert(e.clone(), false);
        }
        Ok((verdict, stats))
    }

    pub fn equals(&self, g: &Element, h: &Element) -> Result<bool, EngineError> {
        if g == h {
            return Ok(true);
        }
        self.is_identity(&self.multiply(g, &self.inverse(h)))
    }

    /// Least `k ≤ max_pow` with `e^k = 1`, or `None`.
    pub fn order_bounded(&self, e: &Element, max_pow: usize) -> Result<Option<usize>, EngineError> {
        let mut cur = e.clone();
        for k in 1..=max_pow {
            if self.is_identity(&cur)? {
                return Ok(Some(k));
            }
            cur = self.multiply(&cur, e);
        }
        Ok(None)
    }

    /// Root permutations of all sections down to `depth` levels below the root.
    pub fn portrait(&self, e: &Element, depth: usize) -> Portrait {
        let nf_root = self.root(e);
        let children = if depth == 0 {
            Vec::new()
        } else {
            Point::all()
                .map(|p| self.portrait(&self.section(e, p), depth - 1))
                .collect()
        };
        Portrait {
            root: nf_root,
            children,
        }
    }

    /// Digest of the action of `e` on every string of length `≤ depth`, i.e. of
    /// its portrait truncated to `depth` levels. Equal elements have equal
    /// signatures at every depth.
    pub fn signature(&self, e: &Element, depth: usize) -> Signature {
        let key = (e.clone(), depth);
        if let Some(&s) = self.signature_cache.read().unwrap().get(&key) {
            return s;
        }
        let sig = Signature(self.portrait_digest(e, depth));
        self.signature_cache.write().unwrap().insert(key, sig);
        sig
    }

    fn portrait_digest(&self, e: &Element, levels: usize) -> u64 {
        if levels == 0 {
            return 0;
        }
        if e.is_empty() {
            return trivial_digest(levels);
        }
        let children: Vec<u64> = Point::all()
            .map(|p| self.portrait_digest(&self.section(e, p), levels - 1))
            .collect();
        node_digest(&self.root(e), &children)
    }

    // ---- rendering -----------------------------------------------------

    pub fn render_letter(&self, l: Letter) -> String {
        match l {
            Letter::Perm(p) => p.to_string(),
            Letter::Atom { id, inverse } => {
                let name = &self.atoms[id as usize].name;
                if inverse {
                    format!("{name}^-1")
                } else {
                    name.clone()
                }
            }
        }
    }

    pub fn render(&self, e: &Element) -> String {
        if e.is_empty() {
            return "1".to_string();
        }
        e.letters
            .iter()
            .map(|&l| self.render_letter(l))
            .collect::<Vec<_>>()
            .join(" ")
    }
}

fn node_digest(root: &Perm, children: &[u64]) -> u64 {
    let mut hasher = DefaultHasher::new();
    root.raw().hash(&mut hasher);
    children.hash(&mut hasher);
    hasher.finish()
}

fn trivial_digest(levels: usize) -> u64 {
    let mut d = 0;
    for _ in 0..levels {
        d = node_digest(&Perm::IDENTITY, &[d; DEGREE]);
    }
    d
}

/// Parses a string of point labels such as `"1234"`.
pub fn parse_points(s: &str) -> Result<Vec<Point>, crate::error::FanoError> {
    s.chars()
        .filter(|c| !c.is_whitespace())
        .map(|c| {
            let d = c
                .to_digit(10)
                .ok_or_else(|| crate::error::FanoError::Parse(s.to_string()))?;
            Point::new(d as u8)
        })
        .collect()
}

pub fn render_points(s: &[Point]) -> String {
    s.iter().map(|p| char::from(b'0' + p.label())).collect()
}
