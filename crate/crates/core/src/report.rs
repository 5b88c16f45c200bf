//! End-to-end reproduction run: builds the VS algebras and their rotations,
//! validates them, certifies the obstruction, and runs both bounded searches.

use serde::Serialize;
use serde_json::{json, Value};

use crate::algebra::{FiniteRL, Property};
use crate::amalgamation::{
    bounded_amalgam_search, bounded_one_amalgam_search, builtin_formation, check_obstruction, check_vformation,
    find_obstruction, injectivity_reduction, ObstructionOutcome, ObstructionWitness, SearchOptions, SearchReport,
    VFormation,
};
use crate::constructions::{
    generalized_rotation, lukasiewicz, ordinal_sum, partial_gluing, two, validate_triple, vs_b, vs_c, vs_k_triple,
    Nucleus,
};
use crate::doc::tables_json;
use crate::error::Result;
use crate::identity::{check_identity, parse_identity, IdentityVerdict};

pub const DEFAULT_MAX_SIZE: usize = 9;

pub fn default_rotations() -> Vec<(String, usize)> {
    vec![("identity".into(), 2), ("const-1".into(), 2)]
}

/// One computed fact and the mathematical statement it supports.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Claim {
    pub id: String,
    pub passed: bool,
    pub corroborates: String,
    pub detail: String,
}

#[derive(Clone, Debug)]
pub struct PaperReport {
    pub max_size: usize,
    pub rotations: Vec<(String, usize)>,
    pub claims: Vec<Claim>,
    /// `(label, report)` for every bounded search run.
    pub searches: Vec<(String, SearchReport)>,
    /// `(formation, witness, trace)` for every certified obstruction.
    pub certificates: Vec<(String, ObstructionWitness, Vec<String>)>,
}

impl PaperReport {
    pub fn passed(&self) -> bool {
        self.claims.iter().all(|c| c.passed)
    }

    pub fn to_json(&self) -> Value {
        let searches: Vec<Value> = self
            .searches
            .iter()
            .map(|(label, r)| {
                let mut v = r.to_json();
                v["label"] = json!(label);
                v
            })
            .collect();
        let certificates: Vec<Value> = self
            .certificates
            .iter()
            .map(|(f, w, t)| json!({ "formation": f, "witness": w, "trace": t }))
            .collect();
        json!({
            "max_size": self.max_size,
            "rotations": self.rotations,
            "passed": self.passed(),
            "claims": self.claims,
            "searches": searches,
            "certificates": certificates,
        })
    }

    pub fn render_text(&self) -> String {
        let mut out = String::new();
        for c in &self.claims {
            let mark = if c.passed { "PASS" } else { "FAIL" };
            out.push_str(&format!("[{mark}] {}: {}\n       {}\n", c.id, c.corroborates, c.detail));
        }
        for (f, w, trace) in &self.certificates {
            out.push_str(&format!("\nobstruction certificate for {f} ({w:?}):\n"));
            for line in trace {
                out.push_str(&format!("  {line}\n"));
            }
        }
        out.push_str(&format!("\n{}\n", if self.passed() { "all checks passed" } else { "some checks FAILED" }));
        out
    }
}

struct Builder {
    claims: Vec<Claim>,
}

impl Builder {
    fn claim(&mut self, id: &str, passed: bool, corroborates: &str, detail: impl Into<String>) {
        self.claims.push(Claim { id: id.into(), passed, corroborates: corroborates.into(), detail: detail.into() });
    }
}

fn holds(alg: &FiniteRL, id: &str) -> Result<bool> {
    Ok(check_identity(alg, &parse_identity(id)?)?.holds())
}

fn search_detail(r: &SearchReport) -> String {
    let tried = r.sizes_tried();
    let sizes = match (tried.first(), tried.last()) {
        (Some(a), Some(b)) => format!("sizes {a}..={b} tried"),
        _ => "no carrier size fits under the bound".into(),
    };
    let verdict = if r.found() { "FOUND" } else { "UNSAT" };
    format!("{verdict} at bound {} ({sizes}, {} nodes)", max_bound(r), r.nodes())
}

fn max_bound(r: &SearchReport) -> usize {
    match r.verdict {
        crate::amalgamation::Verdict::Unsat { bound } => bound,
        crate::amalgamation::Verdict::Found { ref d, .. } => d.size(),
    }
}

/// Obstruction, injectivity reduction and both searches for one formation.
fn formation_claims(
    b: &mut Builder,
    prefix: &str,
    vf: &VFormation,
    max_size: usize,
    searches: &mut Vec<(String, SearchReport)>,
    certificates: &mut Vec<(String, ObstructionWitness, Vec<String>)>,
) -> Result<Option<ObstructionWitness>> {
    let valid = check_vformation(vf);
    b.claim(&format!("{prefix}.formation"), valid.passed(), "the embeddings form a V-formation", match valid.first_failure() {
        None => "A, B, C residuated; i, j embeddings".to_string(),
        Some(f) => format!("{}: {}", f.name, f.detail),
    });
    let w = find_obstruction(vf)?;
    let certified = match &w {
        Some(w) => match check_obstruction(vf, w)? {
            ObstructionOutcome::Trace(t) => {
                certificates.push((prefix.to_string(), *w, t));
                true
            }
            ObstructionOutcome::Reject { .. } => false,
        },
        None => false,
    };
    let wdesc = w.map(|w| {
        format!(
            "a={}, b={}, c={}, u1={}, u2={}, side={:?}",
            vf.a.label(w.a),
            vf.b.label(w.b),
            vf.c.label(w.c),
            vf.a.label(w.u1),
            vf.a.label(w.u2),
            w.side
        )
    });
    b.claim(
        &format!("{prefix}.obstruction"),
        certified,
        "no amalgam exists in the class of residuated chains, at any size",
        wdesc.unwrap_or_else(|| "no witness".into()),
    );
    let inj = injectivity_reduction(vf);
    b.claim(
        &format!("{prefix}.injectivity"),
        !inj.is_empty(),
        "a one-amalgam forces h to be injective, so it would be an amalgam",
        format!("every nontrivial filter of B contains i(a) for a in {:?}", inj.iter().map(|&a| vf.a.label(a)).collect::<Vec<_>>()),
    );
    let opts = SearchOptions::new(max_size);
    let r = bounded_amalgam_search(vf, &opts)?;
    b.claim(&format!("{prefix}.amalgam-search"), !r.found(), "no chain amalgam up to the size bound", search_detail(&r));
    searches.push((format!("{prefix}.amalgam"), r));
    let r = bounded_one_amalgam_search(vf, &opts)?;
    b.claim(&format!("{prefix}.one-amalgam-search"), !r.found(), "no chain one-amalgam up to the size bound", search_detail(&r));
    searches.push((format!("{prefix}.one-amalgam"), r));
    Ok(w)
}

/// Runs the full reproduction pipeline.
pub fn paper_report(max_size: usize, rotations: &[(String, usize)]) -> Result<PaperReport> {
    let mut b = Builder { claims: vec![] };
    let mut searches = vec![];
    let mut certificates = vec![];

    let vs = builtin_formation("VS")?;
    let props = [Property::Chain, Property::Commutative, Property::Integral];
    for (name, x) in [("VS.A", &vs.a), ("VS.B", &vs.b), ("VS.C", &vs.c)] {
        let ok = x.validate_rl().passed() && x.validate(&props).passed();
        b.claim(&format!("{name}.valid"), ok, "a commutative integral residuated chain", format!("{} elements", x.size()));
        b.claim(&format!("{name}.2-potent"), holds(x, "potent:2")?, "x^2 = x^3 holds", "checked on all elements");
    }

    let t = vs_k_triple();
    let tr = validate_triple(&t)?;
    b.claim("VS.K_triple", tr.passed(), "(K, σ, γ) is a lower compatible triple", match tr.first_failure() {
        None => format!("{} clauses pass", tr.checks.len()),
        Some(f) => format!("{} fails: {}", f.name, f.detail),
    });
    let glued = partial_gluing(&t, &two())?;
    b.claim(
        "VS.C.gluing",
        tables_json(&glued) == tables_json(&vs_c()),
        "C is the partial gluing of the triple with the two-element chain",
        "canonical tables identical",
    );
    let sum = ordinal_sum(&lukasiewicz(3), &two())?;
    b.claim(
        "VS.B.ordinal-sum",
        tables_json(&sum) == tables_json(&vs_b()),
        "B is the ordinal sum of the three-element MV-chain and the two-element chain",
        "canonical tables identical",
    );
    let c_div = check_identity(&vs.c, &parse_identity("div")?)?;
    let c_witness = match &c_div {
        IdentityVerdict::Fails(a) => a.iter().map(|(v, x)| format!("{v}={}", vs.c.label(*x))).collect::<Vec<_>>().join(", "),
        IdentityVerdict::Holds => "holds".into(),
    };
    b.claim(
        "divisibility",
        holds(&vs.b, "div")? && !c_div.holds(),
        "B is divisible while C is not",
        format!("C fails (div) at {c_witness}"),
    );

    let w = formation_claims(&mut b, "VS", &vs, max_size, &mut searches, &mut certificates)?;
    let pointed = builtin_formation("VS.pointed")?;
    let wp = formation_claims(&mut b, "VS.pointed", &pointed, max_size, &mut searches, &mut certificates)?;
    b.claim("VS.pointed.same-witness", w.is_some() && w == wp, "the pointed variant fails for the same reason", "witnesses coincide");

    for (delta, n) in rotations {
        let prefix = format!("VS^{delta}:{n}");
        let vf = builtin_formation(&prefix)?;
        for (name, x, base) in [("A", &vf.a, &vs.a), ("B", &vf.b, &vs.b), ("C", &vf.c, &vs.c)] {
            let id = format!("{prefix}.{name}");
            b.claim(&format!("{id}.valid"), x.validate(&Property::ALL).passed(), "the rotation is a bounded residuated chain", format!("{} elements", x.size()));
            b.claim(&format!("{id}.2-potent"), holds(x, "potent:2")?, "x^2 = x^3 holds", "checked on all elements");
            match delta.as_str() {
                "identity" | "id" => {
                    b.claim(&format!("{id}.involutive"), holds(x, "inv")?, "rotations by the identity nucleus are involutive", "¬¬x = x");
                }
                "const-1" => {
                    b.claim(&format!("{id}.stone"), holds(x, "stone")?, "rotations by the constant nucleus satisfy the Stone identity", "¬x ∨ ¬¬x = 1");
                    if *n == 2 {
                        let lift = generalized_rotation(base, &Nucleus::constant_one(base), 2)?;
                        let same = lift.reduct_tables_eq(&ordinal_sum(&two(), base)?);
                        b.claim(&format!("{id}.lifting"), same, "the lifting is the ordinal sum 2 ⊕ X", "tables identical up to the constant");
                    }
                }
                _ => {}
            }
        }
        formation_claims(&mut b, &prefix, &vf, max_size, &mut searches, &mut certificates)?;
    }

    Ok(PaperReport { max_size, rotations: rotations.to_vec(), claims: b.claims, searches, certificates })
}
