use std::fmt;
use std::str::FromStr;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::sample::{sample_m0_tetragonal, sample_tower, SampleConfig};
use crate::forward::{construct, verify_predictions};
use crate::inverse::{general_inverse_consistency, roundtrip_etale, roundtrip_special};
use crate::report::{Check, CheckReport};
use crate::tower::TowerMode;
use crate::Error;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Suite {
    /// Forward predictions on general towers, plus inverting their tetragonal quotient.
    GeneralProps,
    /// Forward predictions on special towers, including node markers.
    SpecialProps,
    /// Special tower, forward, tetragonal component, inverse, compare with the glued tower.
    SpecialRoundtrip,
    /// Forward predictions on étale towers.
    EtaleProps,
    /// M0 tetragonal cover of genus `g − 1`, inverse, forward, compare with the input.
    EtaleRoundtrip,
}

impl Suite {
    pub const ALL: [Suite; 5] = [
        Suite::GeneralProps,
        Suite::SpecialProps,
        Suite::SpecialRoundtrip,
        Suite::EtaleProps,
        Suite::EtaleRoundtrip,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Suite::GeneralProps => "general-props",
            Suite::SpecialProps => "special-props",
            Suite::SpecialRoundtrip => "special-roundtrip",
            Suite::EtaleProps => "etale-props",
            Suite::EtaleRoundtrip => "etale-roundtrip",
        }
    }

    pub fn mode(self) -> TowerMode {
        match self {
            Suite::GeneralProps => TowerMode::General,
            Suite::SpecialProps | Suite::SpecialRoundtrip => TowerMode::Special,
            Suite::EtaleProps | Suite::EtaleRoundtrip => TowerMode::Etale,
        }
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Suite {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Error> {
        Suite::ALL
            .into_iter()
            .find(|suite| suite.name() == s)
            .ok_or_else(|| Error::Config(format!("unknown suite {s:?}")))
    }
}

/// `count` configs cycling through `genera`, with instance `i` seeded by
/// `seed + i` (wrapping).
pub fn configs_for(suite: Suite, genera: &[u64], count: usize, seed: u64) -> Vec<SampleConfig> {
    if genera.is_empty() {
        return Vec::new();
    }
    (0..count)
        .map(|i| {
            let g = genera[i % genera.len()];
            SampleConfig::new(g, suite.mode(), seed.wrapping_add(i as u64))
        })
        .collect()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct InstanceResult {
    pub index: usize,
    pub seed: u64,
    pub genus: u64,
    pub mode: TowerMode,
    pub passed: bool,
    pub checks: Vec<Check>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub error: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BatchReport {
    pub suite: Suite,
    pub instances: usize,
    pub passed: usize,
    pub failed: usize,
    pub checks_run: usize,
    pub checks_failed: usize,
    pub results: Vec<InstanceResult>,
    /// Wall-clock time; left out by default so reports stay byte-identical.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub elapsed_ms: Option<u64>,
}

impl BatchReport {
    pub fn all_passed(&self) -> bool {
        self.failed == 0
    }
}

fn run_instance(suite: Suite, cfg: &SampleConfig) -> Result<CheckReport, Error> {
    if suite == Suite::EtaleRoundtrip {
        let x = sample_m0_tetragonal(cfg.genus - 1, cfg.seed, cfg.max_retries)?;
        return roundtrip_etale(&x);
    }
    let t = sample_tower(cfg)?;
    if suite == Suite::SpecialRoundtrip {
        return roundtrip_special(&t);
    }
    let r = construct(&t);
    let mut rep = verify_predictions(&t, &r);
    if suite == Suite::GeneralProps {
        rep.extend(general_inverse_consistency(&t, &r.x));
    }
    Ok(rep)
}

/// Runs every config through the suite in parallel. Results are collected in
/// config order, so the report does not depend on scheduling.
pub fn run_batch(suite: Suite, cfgs: &[SampleConfig]) -> BatchReport {
    let results: Vec<InstanceResult> = cfgs
        .par_iter()
        .enumerate()
        .map(|(index, cfg)| {
            let (checks, error) = match run_instance(suite, cfg) {
                Ok(rep) => (rep.checks, None),
                Err(e) => (Vec::new(), Some(e.to_string())),
            };
            InstanceResult {
                index,
                seed: cfg.seed,
                genus: cfg.genus,
                mode: cfg.mode,
                passed: error.is_none() && checks.iter().all(|c| c.passed),
                checks,
                error,
            }
        })
        .collect();
    let passed = results.iter().filter(|r| r.passed).count();
    BatchReport {
        suite,
        instances: results.len(),
        passed,
        failed: results.len() - passed,
        checks_run: results.iter().map(|r| r.checks.len()).sum(),
        checks_failed: results
            .iter()
            .map(|r| r.checks.iter().filter(|c| !c.passed).count())
            .sum(),
        results,
        elapsed_ms: None,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn empty_batch_succeeds() {
        let rep = run_batch(Suite::GeneralProps, &[]);
        assert_eq!(rep.instances, 0);
        assert!(rep.all_passed());
    }

    #[test]
    fn suite_names_round_trip() {
        for s in Suite::ALL {
            assert_eq!(s.name().parse::<Suite>().unwrap(), s);
            assert_eq!(serde_json::to_string(&s).unwrap(), format!("\"{}\"", s.name()));
        }
        assert!("nope".parse::<Suite>().is_err());
    }

    #[test]
    fn seeds_are_offset_by_index() {
        let cfgs = configs_for(Suite::SpecialProps, &[3, 4], 3, 10);
        let seeds: Vec<(u64, u64)> = cfgs.iter().map(|c| (c.genus, c.seed)).collect();
        assert_eq!(seeds, vec![(3, 10), (4, 11), (3, 12)]);
    }
}
