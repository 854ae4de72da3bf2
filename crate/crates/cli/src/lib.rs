//! Command implementations for the `glz` binary. Each command returns the
//! JSON document printed on stdout; errors carry their exit code.

use glz_core::congruence::{
    braid_involution_solutions, claim1_commutator_identities, elementary_factorization,
    factor_mod2_classes, gamma_levels, in_gamma, lift_mod2, lift_row_to_sl3, unipotent_sqrt_sl2,
};
use glz_core::exactmat::{bigint_from_json, bigint_to_json, element_order};
use glz_core::involution::{
    canonical_form, classify, four_involution_witness, order3_witness, profile, residue,
};
use glz_core::transvection::recognize_transvection;
use glz_core::verify::run_suite;
use glz_core::{IntMatrix, InvolutionProfile};
use num_bigint::BigInt;
use serde::Deserialize;
use serde_json::{json, Value};
use std::fmt;

pub const EXIT_OK: i32 = 0;
pub const EXIT_PARSE: i32 = 2;
pub const EXIT_PRECONDITION: i32 = 3;
pub const EXIT_SUITE_FAILURE: i32 = 4;

/// Largest level reported by `classify`.
pub const GAMMA_LEVEL_MAX: u32 = 12;

#[derive(Debug)]
pub enum CliError {
    Parse(String),
    Precondition(glz_core::Error),
    /// The report is still printed; only the exit code differs.
    SuiteFailed(Value),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Parse(_) => EXIT_PARSE,
            CliError::Precondition(_) => EXIT_PRECONDITION,
            CliError::SuiteFailed(_) => EXIT_SUITE_FAILURE,
        }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Parse(msg) => write!(f, "parse error: {msg}"),
            CliError::Precondition(e) => write!(f, "{e}"),
            CliError::SuiteFailed(_) => write!(f, "suite found a counterexample"),
        }
    }
}

impl From<glz_core::Error> for CliError {
    fn from(e: glz_core::Error) -> Self {
        match e {
            glz_core::Error::UnknownSuite(_) => CliError::Parse(e.to_string()),
            other => CliError::Precondition(other),
        }
    }
}

pub type CliResult = Result<Value, CliError>;

/// `{"n": N, "rows": [[...], ...]}`; entries are JSON integers or decimal
/// strings.
#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MatrixDocument {
    pub n: usize,
    pub rows: Vec<Vec<Value>>,
}

impl MatrixDocument {
    pub fn into_matrix(self) -> Result<IntMatrix, CliError> {
        if self.n == 0 {
            return Err(CliError::Parse("n must be positive".into()));
        }
        if self.rows.len() != self.n {
            return Err(CliError::Parse(format!(
                "expected {} rows, found {}",
                self.n,
                self.rows.len()
            )));
        }
        let mut rows = Vec::with_capacity(self.n);
        for (i, row) in self.rows.iter().enumerate() {
            if row.len() != self.n {
                return Err(CliError::Parse(format!(
                    "row {i} has {} entries, expected {}",
                    row.len(),
                    self.n
                )));
            }
            let parsed = row
                .iter()
                .map(bigint_from_json)
                .collect::<Result<Vec<BigInt>, _>>()
                .map_err(|e| CliError::Parse(format!("row {i}: {e}")))?;
            rows.push(parsed);
        }
        IntMatrix::from_rows(&rows).map_err(|e| CliError::Parse(e.to_string()))
    }
}

pub fn parse_matrix(text: &str) -> Result<IntMatrix, CliError> {
    let doc: MatrixDocument =
        serde_json::from_str(text).map_err(|e| CliError::Parse(e.to_string()))?;
    doc.into_matrix()
}

pub fn parse_integer(s: &str) -> Result<BigInt, CliError> {
    s.trim()
        .parse()
        .map_err(|_| CliError::Parse(format!("invalid integer {s:?}")))
}

fn require_automorphism(m: &IntMatrix) -> Result<BigInt, CliError> {
    let det = m.det()?;
    if det != BigInt::from(1) && det != BigInt::from(-1) {
        return Err(CliError::Precondition(glz_core::Error::NotAutomorphism {
            det: det.to_string(),
        }));
    }
    Ok(det)
}

pub fn command_classify(m: &IntMatrix) -> CliResult {
    let det = require_automorphism(m)?;
    let is_involution = (m * m).is_identity();
    let (prof, kind, gamma, res) = if is_involution {
        let kind = classify(m)?;
        (
            Some(profile(m)?),
            Some(kind.to_string()),
            kind.gamma(),
            Some(residue(m)?),
        )
    } else {
        (None, None, None, None)
    };
    let trans = recognize_transvection(m);
    let levels: Vec<Value> = gamma_levels(m, GAMMA_LEVEL_MAX)?
        .into_iter()
        .map(|(level, member)| json!({ "m": level, "member": member }))
        .collect();
    Ok(json!({
        "n": m.rows(),
        "det": bigint_to_json(&det),
        "is_involution": is_involution,
        "profile": prof,
        "kind": kind,
        "gamma": gamma,
        "residue": res,
        "is_transvection": trans.is_some(),
        "x": trans.as_ref().map(|t| serde_json::to_value(t).unwrap()["x"].clone()),
        "delta": trans.as_ref().map(|t| serde_json::to_value(t).unwrap()["delta"].clone()),
        "m": trans.as_ref().map(|t| bigint_to_json(&t.m)),
        "gamma_levels": levels,
    }))
}

/// Short name of the block form, e.g. `I2 + -I1 + swap^2`.
pub fn block_name(p: &InvolutionProfile) -> String {
    let mut parts = Vec::new();
    if p.fixed > 0 {
        parts.push(format!("I{}", p.fixed));
    }
    if p.negated > 0 {
        parts.push(format!("-I{}", p.negated));
    }
    match p.pairs {
        0 => {}
        1 => parts.push("swap".into()),
        k => parts.push(format!("swap^{k}")),
    }
    parts.join(" + ")
}

pub fn command_canon(p: &IntMatrix) -> CliResult {
    let basis = canonical_form(p)?;
    Ok(json!({
        "profile": basis.profile,
        "U": basis.transform,
        "block": block_name(&basis.profile),
        "canonical": basis.block_matrix(),
    }))
}

pub fn command_factor(m: &IntMatrix) -> CliResult {
    let f = elementary_factorization(m)?;
    let factors: Vec<Value> = f
        .factors
        .iter()
        .zip(factor_mod2_classes(&f))
        .map(|(e, class)| {
            let mut v = serde_json::to_value(e).unwrap();
            v["trivial_mod2"] = json!(class.trivial_mod2);
            v["square_root"] = json!(class.square_root);
            v
        })
        .collect();
    Ok(json!({
        "n": f.n,
        "length": f.len(),
        "factors": factors,
        "round_trip": f.product() == *m,
    }))
}

pub fn command_lift_mod2(m: &IntMatrix) -> CliResult {
    let mbar = m.to_gf2();
    let lift = lift_mod2(&mbar)?;
    Ok(json!({
        "mod2": mbar.to_rows(),
        "lift": lift,
    }))
}

pub fn command_lift_row(a: &BigInt, c: &BigInt) -> CliResult {
    let lift = lift_row_to_sl3(a, c)?;
    Ok(json!({
        "a": bigint_to_json(a),
        "c": bigint_to_json(c),
        "lift": lift,
    }))
}

pub fn command_witness_order3(p: &IntMatrix) -> CliResult {
    let w = order3_witness(p)?;
    let product = p * &w;
    Ok(json!({
        "witness": w,
        "product": product,
        "product_order": element_order(&product, 12).value(),
    }))
}

pub fn command_witness_four(p: &IntMatrix) -> CliResult {
    let w = four_involution_witness(p)?;
    let product = p * &w;
    let kind = classify(&product)?;
    Ok(json!({
        "witness": w,
        "product": product,
        "product_kind": kind.to_string(),
    }))
}

pub fn command_gamma(m: &IntMatrix, level: &BigInt) -> CliResult {
    Ok(json!({
        "m": bigint_to_json(level),
        "member": in_gamma(m, level)?,
    }))
}

pub fn command_identities() -> CliResult {
    let commutators = claim1_commutator_identities()?;
    let t = IntMatrix::from_i64(&[&[1, 2], &[0, 1]]);
    let roots = unipotent_sqrt_sl2(&t)?;
    let braid = braid_involution_solutions();
    Ok(json!({
        "all_hold": commutators.all_hold,
        "commutators": commutators,
        "braid_involution_solutions": braid,
        "unipotent_sqrt": { "input": t, "roots": roots },
    }))
}

pub fn command_verify(suite: &str, n: usize, trials: usize, seed: u64) -> CliResult {
    let report = run_suite(suite, n, trials, seed)?;
    let value = serde_json::to_value(&report).expect("report serializes");
    if report.passed {
        Ok(value)
    } else {
        Err(CliError::SuiteFailed(value))
    }
}
