//! Seeded randomized suites. A report is a pure function of
//! `(suite, n, trials, seed)` apart from `elapsed_ms`.

mod sampling;
mod suites;

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;
use std::time::Instant;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::exactmat::IntMatrix;

pub use sampling::{
    random_gamma2, random_invertible_gf2, random_profile, sample_conjugator, ProfileShape,
};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Suite {
    /// Order-3 products of conjugate involutions.
    Order3Products,
    /// Involutions among products of two conjugate extremal involutions.
    ExtremalSquares,
    /// 4-involutions among products of conjugate involutions.
    FourInvolutions,
    /// Commutant of an even transvection inside involution products.
    TransvectionCommutant,
    /// Shared eigen-sublattice versus even transvection product.
    MutualSubgroup,
    /// Rank-1 and corank-1 summands encoded by extremal pairs.
    SummandEncoding,
    /// Maximal commuting family of extremal involutions.
    CommutingFamily,
    /// Commutator and square-root identities in SL(2,Z) and SL(3,Z).
    CommutatorIdentities,
    /// Level-2 congruence subgroup through coordinate lines and hyperplanes.
    CongruenceLevelTwo,
    /// Surjectivity of reduction mod 2.
    ModTwoSurjectivity,
}

impl Suite {
    pub const ALL: [Suite; 10] = [
        Suite::Order3Products,
        Suite::ExtremalSquares,
        Suite::FourInvolutions,
        Suite::TransvectionCommutant,
        Suite::MutualSubgroup,
        Suite::SummandEncoding,
        Suite::CommutingFamily,
        Suite::CommutatorIdentities,
        Suite::CongruenceLevelTwo,
        Suite::ModTwoSurjectivity,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            Suite::Order3Products => "L1_3",
            Suite::ExtremalSquares => "L1_4_partial",
            Suite::FourInvolutions => "L1_5",
            Suite::TransvectionCommutant => "L1_6",
            Suite::MutualSubgroup => "L1_7",
            Suite::SummandEncoding => "P1_8",
            Suite::CommutingFamily => "P1_9",
            Suite::CommutatorIdentities => "C2_1_claim1",
            Suite::CongruenceLevelTwo => "C2_1_claim3",
            Suite::ModTwoSurjectivity => "MU_SURJ",
        }
    }

    pub fn min_rank(self) -> usize {
        match self {
            Suite::Order3Products => 2,
            Suite::ExtremalSquares => 5,
            Suite::FourInvolutions => 9,
            Suite::TransvectionCommutant
            | Suite::MutualSubgroup
            | Suite::SummandEncoding
            | Suite::CommutingFamily
            | Suite::CommutatorIdentities
            | Suite::CongruenceLevelTwo => 3,
            Suite::ModTwoSurjectivity => 1,
        }
    }

    /// Finite-rank validity window, as recorded in reports.
    pub fn validity(self) -> &'static str {
        match self {
            Suite::Order3Products => {
                "n >= 2; witness direction exact, diagonalizable direction sampled"
            }
            Suite::ExtremalSquares => {
                "n >= 5 so that a product of two commuting extremals is a 2-involution; \
                 only the sampled forward fragment and the odd-n square construction are checked"
            }
            Suite::FourInvolutions => {
                "n >= 9 so that rank A- = 4 < rank A+ for the witness product"
            }
            Suite::TransvectionCommutant => {
                "n >= 3 so that diag(1,-1) on the block extends to an extremal involution"
            }
            Suite::MutualSubgroup => "n >= 3; both directions checked on every trial",
            Suite::SummandEncoding => "n >= 3; lines and hyperplanes only",
            Suite::CommutingFamily => "n >= 3; diagonal sign matrices exhaustive, rest sampled",
            Suite::CommutatorIdentities => "n >= 3; identities exact, embeddings sampled",
            Suite::CongruenceLevelTwo => {
                "n >= 3; coordinate lines and hyperplanes stand in for all corank-1 summands"
            }
            Suite::ModTwoSurjectivity => "n >= 1",
        }
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Suite {
    type Err = Error;

    fn from_str(s: &str) -> Result<Suite> {
        Suite::ALL
            .into_iter()
            .find(|x| x.as_str() == s)
            .ok_or_else(|| Error::UnknownSuite(s.to_string()))
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Failure {
    pub trial: usize,
    pub reason: String,
    pub inputs: BTreeMap<String, IntMatrix>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SuiteReport {
    pub suite: String,
    pub n: usize,
    pub trials: usize,
    pub seed: u64,
    pub passed: bool,
    pub failures: Vec<Failure>,
    /// Per-branch tallies, for coverage.
    pub counts: BTreeMap<String, u64>,
    pub validity: String,
    pub elapsed_ms: u64,
}

impl SuiteReport {
    /// Copy with the timing zeroed, for replay comparison.
    pub fn without_timing(&self) -> SuiteReport {
        SuiteReport {
            elapsed_ms: 0,
            ..self.clone()
        }
    }

    pub fn count(&self, key: &str) -> u64 {
        self.counts.get(key).copied().unwrap_or(0)
    }
}

/// Per-trial bookkeeping handed to suite bodies.
pub(crate) struct Trial<'a> {
    index: usize,
    inputs: BTreeMap<String, IntMatrix>,
    failures: &'a mut Vec<Failure>,
    counts: &'a mut BTreeMap<String, u64>,
}

impl Trial<'_> {
    pub(crate) fn record(&mut self, name: &str, m: &IntMatrix) {
        self.inputs.insert(name.to_string(), m.clone());
    }

    pub(crate) fn count(&mut self, key: &str) {
        *self.counts.entry(key.to_string()).or_default() += 1;
    }

    pub(crate) fn fail(&mut self, reason: impl Into<String>) {
        self.failures.push(Failure {
            trial: self.index,
            reason: reason.into(),
            inputs: self.inputs.clone(),
        });
    }

    pub(crate) fn check(&mut self, ok: bool, reason: impl FnOnce() -> String) {
        if !ok {
            self.fail(reason());
        }
    }
}

/// Independent stream per trial, so a single trial replays on its own.
pub fn trial_rng(seed: u64, trial: usize) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(trial as u64);
    rng
}

pub fn run_suite(suite_id: &str, n: usize, trials: usize, seed: u64) -> Result<SuiteReport> {
    run(suite_id.parse()?, n, trials, seed)
}

pub fn run(suite: Suite, n: usize, trials: usize, seed: u64) -> Result<SuiteReport> {
    if n < suite.min_rank() {
        return Err(Error::RankOutOfRange {
            suite: suite.as_str(),
            n,
            window: suite.validity(),
        });
    }
    let start = Instant::now();
    let mut failures = Vec::new();
    let mut counts = BTreeMap::new();
    for index in 0..trials {
        let mut rng = trial_rng(seed, index);
        let mut trial = Trial {
            index,
            inputs: BTreeMap::new(),
            failures: &mut failures,
            counts: &mut counts,
        };
        if let Err(e) = suites::run_trial(suite, &mut rng, n, &mut trial) {
            trial.fail(format!("error: {e}"));
        }
    }
    failures.sort_by(|a, b| (a.trial, &a.reason).cmp(&(b.trial, &b.reason)));
    Ok(SuiteReport {
        suite: suite.as_str().to_string(),
        n,
        trials,
        seed,
        passed: failures.is_empty(),
        failures,
        counts,
        validity: suite.validity().to_string(),
        elapsed_ms: start.elapsed().as_millis() as u64,
    })
}
