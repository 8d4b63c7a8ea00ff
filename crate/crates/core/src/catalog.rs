//! Named generating sets of `W` and `V`, and the witness identities used to
//! build them, as machine-checkable claims.

use serde::Serialize;

use crate::error::{EngineError, Result};
use crate::fano::{reflection_x, reflection_y, reflection_z, Perm, PermGroup, Point, DEGREE};
use crate::wreath::{Element, Engine, NodeForm};

/// An ordered, named family of generators.
#[derive(Clone, Debug)]
pub struct GeneratingSet {
    pub name: String,
    pub symbols: Vec<(String, Element)>,
    pub involutions: Vec<bool>,
    /// `n` for `S_n`, 0 otherwise.
    pub level: usize,
}

impl GeneratingSet {
    pub fn len(&self) -> usize {
        self.symbols.len()
    }

    pub fn is_empty(&self) -> bool {
        self.symbols.is_empty()
    }

    pub fn element(&self, i: usize) -> &Element {
        &self.symbols[i].1
    }

    pub fn elements(&self) -> Vec<Element> {
        self.symbols.iter().map(|(_, e)| e.clone()).collect()
    }

    pub fn symbol(&self, i: usize) -> &str {
        &self.symbols[i].0
    }

    pub fn all_involutions(&self) -> bool {
        self.involutions.iter().all(|&b| b)
    }

    /// Index of the generator with the given symbol.
    pub fn index_of(&self, symbol: &str) -> Option<usize> {
        self.symbols.iter().position(|(s, _)| s == symbol)
    }

    /// Product of a word given as generator indices.
    pub fn evaluate(&self, engine: &Engine, word: &[u8]) -> Element {
        engine.product(word.iter().map(|&i| self.element(i as usize)))
    }

    /// Checks that generators are non-trivial, pairwise distinct, and that the
    /// flagged ones square to the identity.
    pub fn validate(&self, engine: &Engine) -> Result<bool, EngineError> {
        for (i, (_, g)) in self.symbols.iter().enumerate() {
            if engine.is_identity(g)? {
                return Ok(false);
            }
            if self.involutions[i] && !engine.is_identity(&engine.multiply(g, g))? {
                return Ok(false);
            }
            for (_, h) in &self.symbols[..i] {
                if engine.equals(g, h)? {
                    return Ok(false);
                }
            }
        }
        Ok(true)
    }

    /// Parses a whitespace-separated word of symbols.
    pub fn parse_word(&self, text: &str) -> Result<Vec<u8>, EngineError> {
        text.split_whitespace()
            .map(|tok| {
                self.index_of(tok)
                    .map(|i| i as u8)
                    .ok_or_else(|| EngineError::UnknownSymbol(tok.to_string()))
            })
            .collect()
    }
}

fn involutive_set(name: &str, symbols: Vec<(String, Element)>, level: usize) -> GeneratingSet {
    let involutions = vec![true; symbols.len()];
    GeneratingSet {
        name: name.to_string(),
        symbols,
        involutions,
        level,
    }
}

/// `{x, y, z}` acting on the first letter only.
pub fn make_base() -> GeneratingSet {
    involutive_set(
        "base",
        vec![
            ("x".into(), Element::perm(reflection_x())),
            ("y".into(), Element::perm(reflection_y())),
            ("z".into(), Element::perm(reflection_z())),
        ],
        0,
    )
}

fn abar_name(a: &Perm) -> String {
    if *a == reflection_x() {
        "xbar".into()
    } else if *a == reflection_y() {
        "ybar".into()
    } else if *a == reflection_z() {
        "zbar".into()
    } else {
        format!("bar{a}")
    }
}

/// `ā = <ā, a, 1, 1, 1, 1, 1>`, acting as `a` on the letter after the first
/// prefix of the form `1…12`.
pub fn make_abar(engine: &mut Engine, a: &Perm) -> Element {
    if a.is_identity() {
        return Element::identity();
    }
    let name = abar_name(a);
    if let Some(id) = engine.atom_by_name(&name) {
        return engine.atom(id);
    }
    let id = engine.declare(&name);
    let mut sections = [None; DEGREE];
    sections[0] = Some(crate::wreath::Letter::atom(id));
    sections[1] = Some(crate::wreath::Letter::Perm(*a));
    engine.define(id, Perm::IDENTITY, sections);
    if a.compose(a).is_identity() {
        engine
            .mark_involutions(&[id])
            .expect("bar of an involution is an involution");
    }
    engine.atom(id)
}

/// Direct action of `ā` on a string, independent of the wreath engine.
pub fn abar_act_prefix(s: &[Point], a: &Perm) -> Vec<Point> {
    let mut out = s.to_vec();
    let one = Point::new(1).unwrap();
    let two = Point::new(2).unwrap();
    for (i, &p) in s.iter().enumerate() {
        if p == one {
            continue;
        }
        if p == two {
            if let Some(next) = out.get_mut(i + 1) {
                *next = a.apply(*next);
            }
        }
        break;
    }
    out
}

/// Creates `<sections>root` under a fixed name, or the bare permutation when
/// every section is trivial.
fn named_node(engine: &mut Engine, name: &str, nf: &NodeForm) -> Result<Element, EngineError> {
    if nf.sections.iter().all(Element::is_empty) {
        return Ok(Element::perm(nf.root));
    }
    let id = match engine.atom_by_name(name) {
        Some(id) => id,
        None => {
            let id = engine.declare(name);
            engine.define_node(id, nf)?;
            id
        }
    };
    Ok(engine.atom(id))
}

fn mark_if_atom(engine: &mut Engine, e: &Element) -> Result<(), EngineError> {
    if let [crate::wreath::Letter::Atom { id, .. }] = e.letters() {
        if !engine.is_flagged_involution(*id) {
            engine.mark_involutions(&[*id])?;
        }
    }
    Ok(())
}

/// `a' = <1,1,1,a,1,1,1>x`, `b' = <b,1,…>y`, `c' = <1,c,1,…>z`.
///
/// Each input must be an involution. `names` label the new atoms.
pub fn prime_triple(
    engine: &mut Engine,
    triple: [&Element; 3],
    names: [&str; 3],
) -> Result<[Element; 3], EngineError> {
    for g in triple {
        if !engine.is_identity(&engine.multiply(g, g))? {
            return Err(EngineError::NotInvolution(engine.render(g)));
        }
    }
    let roots = [reflection_x(), reflection_y(), reflection_z()];
    let slots = [4u8, 1, 2];
    let mut out: [Element; 3] = Default::default();
    for k in 0..3 {
        let nf = NodeForm::sparse(roots[k], &[(slots[k], triple[k].clone())]);
        out[k] = named_node(engine, names[k], &nf)?;
        mark_if_atom(engine, &out[k])?;
    }
    Ok(out)
}

/// `S_1 = {a, b, c}` with `a = <1,x̄,1,x,1,1,1>x`, `b = <y,1,1,ȳ,1,1,1>y`,
/// `c = <z̄,z,1,1,1,1,1>z`, and `S_{n+1}` the priming of `S_n`.
pub fn make_s(engine: &mut Engine, n: usize) -> Result<GeneratingSet, EngineError> {
    assert!(n >= 1, "S_n is defined for n >= 1");
    let (x, y, z) = (reflection_x(), reflection_y(), reflection_z());
    let (xb, yb, zb) = (
        make_abar(engine, &x),
        make_abar(engine, &y),
        make_abar(engine, &z),
    );
    let (xe, ye, ze) = (Element::perm(x), Element::perm(y), Element::perm(z));
    let first = [
        NodeForm::sparse(x, &[(2, xb), (4, xe)]),
        NodeForm::sparse(y, &[(1, ye), (4, yb)]),
        NodeForm::sparse(z, &[(1, zb), (2, ze)]),
    ];
    let mut cur: [Element; 3] = Default::default();
    for (k, nf) in first.iter().enumerate() {
        cur[k] = named_node(engine, &format!("{}1", ["a", "b", "c"][k]), nf)?;
        mark_if_atom(engine, &cur[k])?;
    }
    for level in 2..=n {
        let names = [
            format!("a{level}"),
            format!("b{level}"),
            format!("c{level}"),
        ];
        cur = prime_triple(
            engine,
            [&cur[0], &cur[1], &cur[2]],
            [&names[0], &names[1], &names[2]],
        )?;
    }
    let symbols = ["a", "b", "c"]
        .iter()
        .zip(cur)
        .map(|(s, e)| (s.to_string(), e))
        .collect();
    Ok(involutive_set(&format!("S{n}"), symbols, n))
}

/// `x̃ = <1,1,1,x̃,1,1,1>x`, `ỹ = <ỹ,1,…>y`, `z̃ = <1,z̃,1,…>z`.
pub fn make_tilde(engine: &mut Engine) -> Result<GeneratingSet, EngineError> {
    let names = ["xt", "yt", "zt"];
    let roots = [reflection_x(), reflection_y(), reflection_z()];
    let slots = [3usize, 0, 1];
    let mut ids = [0; 3];
    for k in 0..3 {
        if let Some(id) = engine.atom_by_name(names[k]) {
            ids[k] = id;
            continue;
        }
        let id = engine.declare(names[k]);
        let mut sections = [None; DEGREE];
        sections[slots[k]] = Some(crate::wreath::Letter::atom(id));
        engine.define(id, roots[k], sections);
        engine.mark_involutions(&[id])?;
        ids[k] = id;
    }
    let symbols = ["x", "y", "z"]
        .iter()
        .zip(ids)
        .map(|(s, id)| (format!("{s}t"), engine.atom(id)))
        .collect();
    Ok(involutive_set("tilde", symbols, 0))
}

/// The elements `a = ūu, b = ūv, c = v̄u, d = v̄v` for two swappers `u ≠ v` of 1 and 2.
#[derive(Clone, Debug)]
pub struct FreeQuadruple {
    pub u: Perm,
    pub v: Perm,
    pub a: Element,
    pub b: Element,
    pub c: Element,
    pub d: Element,
}

impl FreeQuadruple {
    pub fn as_generating_set(&self) -> GeneratingSet {
        GeneratingSet {
            name: "free".into(),
            symbols: vec![
                ("a".into(), self.a.clone()),
                ("b".into(), self.b.clone()),
                ("c".into(), self.c.clone()),
                ("d".into(), self.d.clone()),
            ],
            involutions: vec![false; 4],
            level: 0,
        }
    }
}

pub fn free_quadruple_for(engine: &mut Engine, u: Perm, v: Perm) -> FreeQuadruple {
    let ubar = make_abar(engine, &u);
    let vbar = make_abar(engine, &v);
    let (ue, ve) = (Element::perm(u), Element::perm(v));
    FreeQuadruple {
        u,
        v,
        a: engine.multiply(&ubar, &ue),
        b: engine.multiply(&ubar, &ve),
        c: engine.multiply(&vbar, &ue),
        d: engine.multiply(&vbar, &ve),
    }
}

/// All swapper pairs `u < v` of points 1 and 2 in `A`, canonical order.
pub fn swapper_pairs() -> Vec<(Perm, Perm)> {
    let a = PermGroup::fano();
    let sw = a.find_swappers(Point::new(1).unwrap(), Point::new(2).unwrap());
    let mut out = Vec::new();
    for i in 0..sw.len() {
        for j in i + 1..sw.len() {
            out.push((sw[i], sw[j]));
        }
    }
    out
}

/// The quadruple for the two canonically least swappers.
pub fn make_free_quadruple(engine: &mut Engine) -> FreeQuadruple {
    let (u, v) = *swapper_pairs()
        .first()
        .expect("A contains at least two swappers of 1 and 2");
    free_quadruple_for(engine, u, v)
}

/// Outcome of checking the displayed decompositions of `a, b, c, d`.
#[derive(Clone, Debug, Serialize)]
pub struct DecompositionReport {
    pub roots_swap_one_two: bool,
    pub a_c_share_root: bool,
    pub b_d_share_root: bool,
    pub sigma_ne_tau: bool,
    pub sections_match: bool,
    pub sigma: Perm,
    pub tau: Perm,
}

impl DecompositionReport {
    pub fn passed(&self) -> bool {
        self.roots_swap_one_two
            && self.a_c_share_root
            && self.b_d_share_root
            && self.sigma_ne_tau
            && self.sections_match
    }
}

/// Checks `a = <ū,u,1,…>(1,2)σ`, `b = <ū,u,1,…>(1,2)τ`,
/// `c = <v̄,v,1,…>(1,2)σ`, `d = <v̄,v,1,…>(1,2)τ` with `σ ≠ τ` fixing 1 and 2.
pub fn check_free_decompositions(
    engine: &mut Engine,
    q: &FreeQuadruple,
) -> Result<DecompositionReport, EngineError> {
    let one = Point::new(1).unwrap();
    let two = Point::new(2).unwrap();
    let swap = Perm::from_cycles(&[&[1, 2]]).unwrap();
    let forms = [&q.a, &q.b, &q.c, &q.d].map(|e| engine.decompose(e));
    let roots_swap = forms
        .iter()
        .all(|nf| nf.root.apply(one) == two && nf.root.apply(two) == one);
    // (1,2)σ = root, so σ = (1,2)·root restricted to the other five points
    let sigma = swap.compose(&forms[0].root);
    let tau = swap.compose(&forms[1].root);
    let ubar = make_abar(engine, &q.u);
    let vbar = make_abar(engine, &q.v);
    let expected = [(&ubar, q.u), (&ubar, q.u), (&vbar, q.v), (&vbar, q.v)];
    let mut sections_match = true;
    for (nf, (bar, perm)) in forms.iter().zip(expected) {
        sections_match &= engine.equals(&nf.sections[0], bar)?;
        sections_match &= engine.equals(&nf.sections[1], &Element::perm(perm))?;
        for s in &nf.sections[2..] {
            sections_match &= engine.is_identity(s)?;
        }
    }
    Ok(DecompositionReport {
        roots_swap_one_two: roots_swap,
        a_c_share_root: forms[0].root == forms[2].root,
        b_d_share_root: forms[1].root == forms[3].root,
        sigma_ne_tau: sigma != tau && sigma.apply(one) == one && sigma.apply(two) == two,
        sections_match,
        sigma,
        tau,
    })
}

// ---- witness identities ----------------------------------------------------

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Relation {
    Equal,
    NotEqual,
    IsIdentity,
    NotIdentity,
}

#[derive(Clone, Debug)]
pub enum ClaimRhs {
    None,
    Element(Element),
    Node(NodeForm),
}

#[derive(Clone, Debug)]
pub struct CatalogClaim {
    pub id: String,
    /// Short quote locating the identity in the source argument.
    pub anchor: String,
    pub lhs: Element,
    pub rhs: ClaimRhs,
    pub relation: Relation,
}

#[derive(Clone, Debug, Serialize)]
pub struct ClaimVerdict {
    pub id: String,
    pub anchor: String,
    pub relation: Relation,
    pub pass: bool,
    /// States explored by the identity tests that decided the claim.
    pub states: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub error: Option<String>,
}

fn equal_to_node(
    engine: &Engine,
    lhs: &Element,
    nf: &NodeForm,
) -> Result<(bool, usize), EngineError> {
    let got = engine.decompose(lhs);
    if got.root != nf.root {
        return Ok((false, 1));
    }
    let mut states = 1;
    for (g, h) in got.sections.iter().zip(nf.sections.iter()) {
        let diff = engine.multiply(g, &engine.inverse(h));
        let (same, st) = engine.is_identity_with_stats(&diff)?;
        states += st.states;
        if !same {
            return Ok((false, states));
        }
    }
    Ok((true, states))
}

fn decide(engine: &Engine, claim: &CatalogClaim) -> Result<(bool, usize), EngineError> {
    let equal = match (&claim.relation, &claim.rhs) {
        (Relation::IsIdentity | Relation::NotIdentity, _) => {
            let (b, st) = engine.is_identity_with_stats(&claim.lhs)?;
            (b, st.states)
        }
        (_, ClaimRhs::Node(nf)) => equal_to_node(engine, &claim.lhs, nf)?,
        (_, ClaimRhs::Element(rhs)) => {
            let diff = engine.multiply(&claim.lhs, &engine.inverse(rhs));
            let (b, st) = engine.is_identity_with_stats(&diff)?;
            (b, st.states)
        }
        (_, ClaimRhs::None) => {
            let (b, st) = engine.is_identity_with_stats(&claim.lhs)?;
            (b, st.states)
        }
    };
    let pass = match claim.relation {
        Relation::Equal | Relation::IsIdentity => equal.0,
        Relation::NotEqual | Relation::NotIdentity => !equal.0,
    };
    Ok((pass, equal.1))
}

/// Decides one claim. Resource errors become a failing verdict with diagnostics.
pub fn check_claim(engine: &Engine, claim: &CatalogClaim) -> ClaimVerdict {
    let (pass, states, error) = match decide(engine, claim) {
        Ok((p, s)) => (p, s, None),
        Err(e) => (false, 0, Some(e.to_string())),
    };
    ClaimVerdict {
        id: claim.id.clone(),
        anchor: claim.anchor.clone(),
        relation: claim.relation,
        pass,
        states,
        error,
    }
}

/// Checks every claim, each on a fresh copy of the engine so that verdicts and
/// statistics do not depend on evaluation order. Results keep the input order.
pub fn check_claims(engine: &Engine, claims: &[CatalogClaim]) -> Vec<ClaimVerdict> {
    use rayon::prelude::*;
    claims
        .par_iter()
        .map(|c| check_claim(&engine.clone(), c))
        .collect()
}

fn claim(id: &str, anchor: &str, lhs: Element, rhs: ClaimRhs, relation: Relation) -> CatalogClaim {
    CatalogClaim {
        id: id.to_string(),
        anchor: anchor.to_string(),
        lhs,
        rhs,
        relation,
    }
}

/// The witness identities, instantiated as described on each claim.
pub fn identity_catalog(engine: &mut Engine) -> Result<Vec<CatalogClaim>> {
    let a_grp = PermGroup::fano();
    let (x, y, z) = (reflection_x(), reflection_y(), reflection_z());
    let (xe, ye, ze) = (Element::perm(x), Element::perm(y), Element::perm(z));
    let xb = make_abar(engine, &x);
    let yb = make_abar(engine, &y);
    let zb = make_abar(engine, &z);
    let p1 = Point::new(1)?;
    let p2 = Point::new(2)?;
    let mut out = vec![claim(
        "0-sanity",
        "identity equals identity",
        Element::identity(),
        ClaimRhs::Element(Element::identity()),
        Relation::Equal,
    )];

    // [ā, b̄^u] = <[ā,b̄],1,…,1> and [ā, b̄^v] = <1,[a,b],1,…,1>
    let u = Element::perm(a_grp.find_fix_move(p1, p2)?);
    let v = Element::perm(a_grp.find_fix_move(p2, p1)?);
    out.push(claim(
        "1-decomp-u",
        "[ā, b̄^u] = <[ā,b̄],1,…,1>",
        engine.commutator(&xb, &engine.conjugate(&yb, &u)),
        ClaimRhs::Node(NodeForm::sparse(
            Perm::IDENTITY,
            &[(1, engine.commutator(&xb, &yb))],
        )),
        Relation::Equal,
    ));
    out.push(claim(
        "2-decomp-v",
        "[ā, b̄^v] = <1,[a,b],1,…,1>",
        engine.commutator(&xb, &engine.conjugate(&yb, &v)),
        ClaimRhs::Node(NodeForm::sparse(
            Perm::IDENTITY,
            &[(2, engine.commutator(&xe, &ye))],
        )),
        Relation::Equal,
    ));

    // priming of (x, y, z)
    let [ap, bp, cp] = prime_triple(engine, [&xe, &ye, &ze], ["xp", "yp", "zp"])?;
    let cube = |engine: &Engine, w: [&Element; 4]| engine.power(&engine.product(w), 3);
    let abcb = cube(engine, [&ap, &bp, &cp, &bp]);
    let bcac = cube(engine, [&bp, &cp, &ap, &cp]);
    let caba = cube(engine, [&cp, &ap, &bp, &ap]);
    let ac = engine.multiply(&xe, &ze);
    let ca = engine.multiply(&ze, &xe);
    let ba = engine.multiply(&ye, &xe);
    let ab = engine.multiply(&xe, &ye);
    let cb = engine.multiply(&ze, &ye);
    let bc = engine.multiply(&ye, &ze);
    out.push(claim(
        "3a-extend-cube",
        "(a'b'c'b')^3 = <1,1,ac,ac,1,1,ca>",
        abcb.clone(),
        ClaimRhs::Node(NodeForm::sparse(
            Perm::IDENTITY,
            &[(3, ac.clone()), (4, ac.clone()), (7, ca.clone())],
        )),
        Relation::Equal,
    ));
    out.push(claim(
        "3b-extend-cube",
        "(b'c'a'c')^3 = <ba,1,1,1,1,ba,ab>",
        bcac.clone(),
        ClaimRhs::Node(NodeForm::sparse(
            Perm::IDENTITY,
            &[(1, ba.clone()), (6, ba.clone()), (7, ab.clone())],
        )),
        Relation::Equal,
    ));
    out.push(claim(
        "3c-extend-cube",
        "(c'a'b'a')^3 = <1,cb,1,1,cb,1,bc>",
        caba,
        ClaimRhs::Node(NodeForm::sparse(
            Perm::IDENTITY,
            &[(2, cb.clone()), (5, cb), (7, bc)],
        )),
        Relation::Equal,
    ));
    let vcomm = engine.commutator(&abcb, &bcac);
    out.push(claim(
        "4a-extend-commutator",
        "v = [(a'b'c'b')^3,(b'c'a'c')^3] = <1,…,1,[ca,ab]>",
        vcomm.clone(),
        ClaimRhs::Node(NodeForm::sparse(
            Perm::IDENTITY,
            &[(7, engine.commutator(&ca, &ab))],
        )),
        Relation::Equal,
    ));
    out.push(claim(
        "4b-extend-nontrivial",
        "v ≠ 1",
        vcomm,
        ClaimRhs::None,
        Relation::NotIdentity,
    ));
    out.push(claim(
        "4c-printed-section-trivial",
        "[ca,ac] as printed is trivial for involutions a, c",
        engine.commutator(&ca, &ac),
        ClaimRhs::None,
        Relation::IsIdentity,
    ));

    // S_1 witnesses
    let s1 = make_s(engine, 1)?;
    let (a1, b1, c1) = (
        s1.element(0).clone(),
        s1.element(1).clone(),
        s1.element(2).clone(),
    );
    let ab4 = engine.power(&engine.multiply(&a1, &b1), 4);
    let bc4 = engine.power(&engine.multiply(&b1, &c1), 4);
    let ca4 = engine.power(&engine.multiply(&c1, &a1), 4);
    out.push(claim(
        "5a-invol-ab4",
        "(ab)^4 = <1,x̄,x̄,1,1,x̄,x̄>",
        ab4.clone(),
        ClaimRhs::Node(NodeForm::sparse(
            Perm::IDENTITY,
            &[
                (2, xb.clone()),
                (3, xb.clone()),
                (6, xb.clone()),
                (7, xb.clone()),
            ],
        )),
        Relation::Equal,
    ));
    out.push(claim(
        "5b-invol-bc4",
        "(bc)^4 = <1,1,1,ȳ,ȳ,ȳ,ȳ>",
        bc4.clone(),
        ClaimRhs::Node(NodeForm::sparse(
            Perm::IDENTITY,
            &[
                (4, yb.clone()),
                (5, yb.clone()),
                (6, yb.clone()),
                (7, yb.clone()),
            ],
        )),
        Relation::Equal,
    ));
    out.push(claim(
        "5c-invol-ca4",
        "(ca)^4 = <z̄,1,z̄,1,z̄,1,z̄>",
        ca4.clone(),
        ClaimRhs::Node(NodeForm::sparse(
            Perm::IDENTITY,
            &[
                (1, zb.clone()),
                (3, zb.clone()),
                (5, zb.clone()),
                (7, zb.clone()),
            ],
        )),
        Relation::Equal,
    ));
    let ucomm = engine.commutator(&engine.commutator(&ab4, &bc4), &ca4);
    out.push(claim(
        "6a-invol-commutator",
        "u = [[(ab)^4,(bc)^4],(ca)^4] = <1,…,1,[[x̄,ȳ],z̄]>",
        ucomm.clone(),
        ClaimRhs::Node(NodeForm::sparse(
            Perm::IDENTITY,
            &[(7, engine.commutator(&engine.commutator(&xb, &yb), &zb))],
        )),
        Relation::Equal,
    ));
    out.push(claim(
        "6b-invol-nontrivial",
        "u ≠ 1",
        ucomm,
        ClaimRhs::None,
        Relation::NotIdentity,
    ));
    let strip = [
        (
            "7a-invol-prime-a",
            "a' = <1,x̄,1,1,1,1,1>a = <1,1,1,x,1,1,1>x",
            2u8,
            &xb,
            &a1,
            x,
            4u8,
            &xe,
        ),
        (
            "7b-invol-prime-b",
            "b' = <1,1,1,ȳ,1,1,1>b = <y,1,1,1,1,1,1>y",
            4,
            &yb,
            &b1,
            y,
            1,
            &ye,
        ),
        (
            "7c-invol-prime-c",
            "c' = <z̄,1,1,1,1,1,1>c = <1,z,1,1,1,1,1>z",
            1,
            &zb,
            &c1,
            z,
            2,
            &ze,
        ),
    ];
    for (id, anchor, slot, bar, gen, root, kept, kept_val) in strip {
        let left = engine.node(&NodeForm::sparse(Perm::IDENTITY, &[(slot, bar.clone())]))?;
        out.push(claim(
            id,
            anchor,
            engine.multiply(&left, gen),
            ClaimRhs::Node(NodeForm::sparse(root, &[(kept, kept_val.clone())])),
            Relation::Equal,
        ));
    }

    // Δ witnesses, with (a, b, c) = S_1 and (a', b', c') = S_2
    let s2 = make_s(engine, 2)?;
    let (a2, b2, c2) = (s2.element(0), s2.element(1), s2.element(2));
    out.push(claim(
        "8-lowergrowth-aba",
        "a'b'a' = <1,1,1,1,b,1,1>xyx",
        engine.product([a2, b2, a2]),
        ClaimRhs::Node(NodeForm::sparse(
            x.compose(&y).compose(&x),
            &[(5, b1.clone())],
        )),
        Relation::Equal,
    ));
    let long = engine.product([a2, c2, b2, a2, c2, a2, b2, c2, a2]);
    let root9 = y.compose(&z).compose(&x).compose(&z).compose(&y);
    out.push(claim(
        "9-lowergrowth-long",
        "a'c'b'a'c'a'b'c'a' = <a,cb,1,1,bc,a,c>yzxzy",
        long,
        ClaimRhs::Node(NodeForm::sparse(
            root9,
            &[
                (1, a1.clone()),
                (2, engine.multiply(&c1, &b1)),
                (5, engine.multiply(&b1, &c1)),
                (6, a1.clone()),
                (7, c1.clone()),
            ],
        )),
        Relation::Equal,
    ));
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::wreath::{parse_points, render_points};

    fn pts(s: &str) -> Vec<Point> {
        parse_points(s).unwrap()
    }

    #[test]
    fn base_set() {
        let engine = Engine::new();
        let base = make_base();
        assert_eq!(render_points(&engine.act(base.element(0), &pts("1"))), "5");
        assert!(base.validate(&engine).unwrap());
        let roots: Vec<Perm> = base.elements().iter().map(|e| engine.root(e)).collect();
        assert_eq!(PermGroup::closure(&roots).size(), 168);
    }

    #[test]
    fn abar_examples() {
        let mut engine = Engine::new();
        let y = reflection_y();
        let yb = make_abar(&mut engine, &y);
        assert_eq!(render_points(&engine.act(&yb, &pts("21"))), "21");
        assert!(make_abar(&mut engine, &Perm::IDENTITY).is_empty());
        let a = reflection_x().compose(&reflection_z());
        assert_eq!(
            render_points(&abar_act_prefix(&pts("1124"), &a)),
            format!("112{}", a.apply(Point::new(4).unwrap()))
        );
        assert_eq!(render_points(&abar_act_prefix(&pts("111"), &a)), "111");
        assert_eq!(render_points(&abar_act_prefix(&pts("2"), &a)), "2");
    }

    #[test]
    fn abar_agrees_with_prefix_oracle_to_length_four() {
        let mut engine = Engine::new();
        let a = reflection_x()
            .compose(&reflection_y())
            .compose(&reflection_z());
        let bar = make_abar(&mut engine, &a);
        let mut strings: Vec<Vec<Point>> = vec![vec![]];
        for _ in 0..4 {
            let mut next = Vec::new();
            for s in strings
                .iter()
                .filter(|s| s.len() == strings.last().unwrap().len())
            {
                for p in Point::all() {
                    let mut t = s.clone();
                    t.push(p);
                    next.push(t);
                }
            }
            for s in &next {
                assert_eq!(engine.act(&bar, s), abar_act_prefix(s, &a));
            }
            strings = next;
        }
    }

    #[test]
    fn abar_is_a_homomorphism() {
        let mut engine = Engine::new();
        let grp = PermGroup::fano();
        let picks = [3usize, 17, 55, 101, 160];
        for &i in &picks {
            for &j in &picks {
                let (a, b) = (grp.elements()[i], grp.elements()[j]);
                let lhs = {
                    let ab = make_abar(&mut engine, &a);
                    let bb = make_abar(&mut engine, &b);
                    engine.multiply(&ab, &bb)
                };
                let rhs = make_abar(&mut engine, &a.compose(&b));
                assert!(engine.equals(&lhs, &rhs).unwrap());
            }
        }
    }

    #[test]
    fn priming_trivial_triple_gives_reflections() {
        let mut engine = Engine::new();
        let one = Element::identity();
        let out = prime_triple(&mut engine, [&one, &one, &one], ["p", "q", "r"]).unwrap();
        assert_eq!(out[0], Element::perm(reflection_x()));
        assert_eq!(out[1], Element::perm(reflection_y()));
        assert_eq!(out[2], Element::perm(reflection_z()));
    }

    #[test]
    fn priming_base_sections() {
        let mut engine = Engine::new();
        let base = make_base();
        let [a, b, c] = prime_triple(
            &mut engine,
            [base.element(0), base.element(1), base.element(2)],
            ["xp", "yp", "zp"],
        )
        .unwrap();
        for (g, label, expect) in [(&a, 4, 0), (&b, 1, 1), (&c, 2, 2)] {
            let nf = engine.decompose(g);
            let p = Point::new(label).unwrap();
            assert!(engine
                .equals(&nf.sections[p.index()], base.element(expect))
                .unwrap());
            assert!(engine.is_identity(&engine.multiply(g, g)).unwrap());
        }
    }

    #[test]
    fn priming_rejects_non_involutions() {
        let mut engine = Engine::new();
        let r = Element::perm(reflection_x().compose(&reflection_y()));
        let one = Element::identity();
        assert!(prime_triple(&mut engine, [&r, &one, &one], ["p", "q", "r"]).is_err());
    }

    #[test]
    fn s_levels() {
        let mut engine = Engine::new();
        let s1 = make_s(&mut engine, 1).unwrap();
        assert!(s1.validate(&engine).unwrap());
        let s2 = make_s(&mut engine, 2).unwrap();
        assert!(s2.validate(&engine).unwrap());
        let again = prime_triple(
            &mut engine,
            [s1.element(0), s1.element(1), s1.element(2)],
            ["a2", "b2", "c2"],
        )
        .unwrap();
        for (k, e) in again.iter().enumerate() {
            assert!(engine.equals(e, s2.element(k)).unwrap());
        }
        let s4 = make_s(&mut engine, 4).unwrap();
        assert!(s4.validate(&engine).unwrap());
    }

    #[test]
    fn tilde_is_fixed_by_priming() {
        let mut engine = Engine::new();
        let t = make_tilde(&mut engine).unwrap();
        assert!(t.validate(&engine).unwrap());
        let primed = prime_triple(
            &mut engine,
            [t.element(0), t.element(1), t.element(2)],
            ["xtp", "ytp", "ztp"],
        )
        .unwrap();
        for (k, e) in primed.iter().enumerate() {
            assert!(engine.equals(e, t.element(k)).unwrap());
        }
        assert_eq!(render_points(&engine.act(t.element(0), &pts("44"))), "44");
    }

    #[test]
    fn free_quadruple_shape() {
        let mut engine = Engine::new();
        let q = make_free_quadruple(&mut engine);
        assert_ne!(q.u, q.v);
        let rep = check_free_decompositions(&mut engine, &q).unwrap();
        assert!(rep.passed(), "{rep:?}");
        let gens = q.as_generating_set();
        assert!(gens.validate(&engine).unwrap());
        assert_eq!(swapper_pairs().len(), 6);
    }

    #[test]
    fn printed_commutator_is_trivial_in_a() {
        // for involutions, ac = (ca)⁻¹, so [ca, ac] = 1 while [ca, ab] is not
        let (x, y, z) = (reflection_x(), reflection_y(), reflection_z());
        let ca = z.compose(&x);
        assert!(ca.commutator(&x.compose(&z)).is_identity());
        assert!(!ca.commutator(&x.compose(&y)).is_identity());
    }

    #[test]
    fn whole_catalog_passes() {
        let mut engine = Engine::new();
        let claims = identity_catalog(&mut engine).unwrap();
        assert!(claims.len() >= 15);
        for v in check_claims(&engine, &claims) {
            assert!(v.pass, "claim {} failed: {:?}", v.id, v);
        }
    }
}
