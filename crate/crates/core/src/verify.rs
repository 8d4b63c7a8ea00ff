//! The full claim suite behind `wilson verify-all`.
//!
//! Every entry carries the quoted statement it checks and a deterministic
//! detail object; nothing time- or thread-dependent enters the report.

use serde::Serialize;
use serde_json::{json, Value};

use crate::bounds::{lambda_sequence, DEFAULT_TOL};
use crate::catalog::{
    check_claims, check_free_decompositions, free_quadruple_for, identity_catalog,
    make_free_quadruple, swapper_pairs,
};
use crate::error::Result;
use crate::fano::{reflection_x, reflection_y, reflection_z, PermGroup};
use crate::growth::{find_min_n_local_iso, free_monoid_check};
use crate::words::verify_lemma30;
use crate::wreath::Engine;

pub const FREE_MONOID_LENGTH: usize = 8;
pub const LEMMA30_MAX_N: usize = 40;
pub const LOCAL_ISO_RADII: [usize; 3] = [1, 2, 3];
pub const LOCAL_ISO_MAX_N: usize = 4;
pub const LAMBDA_STEPS: usize = 500;

#[derive(Clone, Debug, Serialize)]
pub struct ClaimReport {
    pub id: String,
    pub anchor: String,
    pub pass: bool,
    pub detail: Value,
}

#[derive(Clone, Debug, Serialize)]
pub struct VerifyReport {
    pub total: usize,
    pub passed: usize,
    pub all_pass: bool,
    pub claims: Vec<ClaimReport>,
}

impl VerifyReport {
    pub fn failures(&self) -> impl Iterator<Item = &ClaimReport> {
        self.claims.iter().filter(|c| !c.pass)
    }
}

fn push(out: &mut Vec<ClaimReport>, id: &str, anchor: &str, pass: bool, detail: Value) {
    out.push(ClaimReport {
        id: id.into(),
        anchor: anchor.into(),
        pass,
        detail,
    });
}

fn fano_claims(out: &mut Vec<ClaimReport>) {
    let a = PermGroup::fano();
    let (x, y, z) = (reflection_x(), reflection_y(), reflection_z());
    let alt = PermGroup::closure(&[x.compose(&y), y.compose(&z), z.compose(&x)]);
    push(
        out,
        "A-order",
        "it has order 168",
        a.size() == 168,
        json!({ "order": a.size() }),
    );
    push(
        out,
        "A-nonabelian",
        "it has order 168",
        !a.is_abelian(),
        json!({}),
    );
    push(
        out,
        "A-perfect",
        "is simple, hence perfect",
        a.is_perfect(),
        json!({}),
    );
    push(out, "A-simple", "and is simple", a.is_simple(), json!({}));
    push(
        out,
        "A-two-transitive",
        "A acts 2-transitively on P",
        a.is_two_transitive(),
        json!({ "pair_orbit": a.pair_orbit(crate::Point::new(1).unwrap(), crate::Point::new(2).unwrap()).len() }),
    );
    push(
        out,
        "A-alt-generators",
        "also by {xy,yz,zx}",
        alt.same_elements(&a),
        json!({ "order": alt.size() }),
    );
}

fn catalog_claims(engine: &mut Engine, out: &mut Vec<ClaimReport>) -> Result<()> {
    let claims = identity_catalog(engine)?;
    for v in check_claims(engine, &claims) {
        let detail = json!({ "relation": v.relation, "states": v.states, "error": v.error });
        push(out, &format!("catalog-{}", v.id), &v.anchor, v.pass, detail);
    }
    Ok(())
}

fn free_claims(engine: &mut Engine, out: &mut Vec<ClaimReport>) -> Result<()> {
    let q = make_free_quadruple(engine);
    let dec = check_free_decompositions(engine, &q)?;
    push(
        out,
        "free-decompositions",
        "They admit the decompositions",
        dec.passed(),
        serde_json::to_value(&dec).expect("plain data"),
    );
    for (u, v) in swapper_pairs() {
        let q = free_quadruple_for(engine, u, v);
        let rep = free_monoid_check(engine, &q, FREE_MONOID_LENGTH)?;
        push(
            out,
            &format!("free-monoid-{u}-{v}").replace(' ', ""),
            "contains a free monoid on 2 generators",
            rep.passed(),
            serde_json::to_value(&rep).expect("plain data"),
        );
    }
    Ok(())
}

fn local_iso_claims(engine: &mut Engine, out: &mut Vec<ClaimReport>) -> Result<()> {
    for r in LOCAL_ISO_RADII {
        let rep = find_min_n_local_iso(engine, r, LOCAL_ISO_MAX_N)?;
        let pass = match r {
            1 => rep.found == Some(1),
            _ => rep.found.is_some() && rep.s_ball_size == Some(rep.tilde_ball_size),
        };
        let anchor = if r == 1 {
            "agree on a ball of radius 1"
        } else {
            "there is n∈ℕ such that B_{V,S̃}(R) and B_{W,Sₙ}(R) are isomorphic"
        };
        push(
            out,
            &format!("local-iso-R{r}"),
            anchor,
            pass,
            serde_json::to_value(&rep).expect("plain data"),
        );
    }
    Ok(())
}

fn lambda_claims(out: &mut Vec<ClaimReport>) -> Result<()> {
    let seq = lambda_sequence(LAMBDA_STEPS, DEFAULT_TOL)?;
    let first = seq[0];
    push(
        out,
        "lambda-start",
        "Define inductively Λ₁=2",
        first.lambda_n == 2.0,
        json!({ "eta_1": first.eta_n, "lambda_2": first.lambda_next }),
    );
    let decreasing = seq
        .iter()
        .all(|s| 1.0 < s.lambda_next && s.lambda_next < s.lambda_n);
    let max_residual = seq.iter().map(|s| s.residual).fold(0.0, f64::max);
    push(
        out,
        "lambda-decreasing",
        "1 < Λₙ₊₁ < Λₙ",
        decreasing && max_residual <= DEFAULT_TOL,
        json!({ "steps": seq.len(), "max_residual": max_residual, "last": seq.last().unwrap().lambda_next }),
    );
    let below = seq.iter().find(|s| s.lambda_n < 1.05).map(|s| s.n);
    push(
        out,
        "lambda-approaches-one",
        "Since λ(W,Sₙ) ≤ Λₙ",
        below.is_some(),
        json!({ "first_n_below_1_05": below }),
    );
    Ok(())
}

/// Runs every check. Engine errors abort the run; failed verdicts do not.
pub fn verify_all(engine: &mut Engine) -> Result<VerifyReport> {
    let mut claims = Vec::new();
    fano_claims(&mut claims);
    catalog_claims(engine, &mut claims)?;
    let lemma = verify_lemma30(LEMMA30_MAX_N);
    let small_ok = lemma.counts[..3].iter().map(|&(_, c)| c).eq([3, 6, 9]);
    push(
        &mut claims,
        "lemma30",
        "at most 30 reduced words of length n that contain no subword belonging to Δ",
        lemma.all_at_most_30 && small_ok,
        serde_json::to_value(&lemma).expect("plain data"),
    );
    free_claims(engine, &mut claims)?;
    local_iso_claims(engine, &mut claims)?;
    lambda_claims(&mut claims)?;
    let passed = claims.iter().filter(|c| c.pass).count();
    Ok(VerifyReport {
        total: claims.len(),
        passed,
        all_pass: passed == claims.len(),
        claims,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn everything_passes() {
        let mut engine = Engine::new();
        let rep = verify_all(&mut engine).unwrap();
        let failing: Vec<_> = rep.failures().map(|c| c.id.clone()).collect();
        assert!(rep.all_pass, "{failing:?}");
        assert!(rep.total >= 15);
        let again = verify_all(&mut Engine::new()).unwrap();
        assert_eq!(
            serde_json::to_string(&rep).unwrap(),
            serde_json::to_string(&again).unwrap()
        );
    }
}
