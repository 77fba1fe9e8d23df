use std::collections::{BTreeSet, VecDeque};

use serde::{Deserialize, Serialize};

use crate::actions::{sigma, sigma_inverse, tau};
use crate::diagram::Diagram;
use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum OrbitGenerator {
    Sigma,
    Tau,
}

impl OrbitGenerator {
    /// Comma-separated list such as `sigma,tau`; empty means no generators.
    pub fn parse_list(s: &str) -> Result<Vec<OrbitGenerator>> {
        let mut out = Vec::new();
        for tok in s.split(',').map(str::trim).filter(|t| !t.is_empty()) {
            out.push(match tok {
                "sigma" => OrbitGenerator::Sigma,
                "tau" => OrbitGenerator::Tau,
                _ => return Err(Error::Parameter(format!("unknown orbit generator `{tok}`"))),
            });
        }
        out.sort();
        out.dedup();
        Ok(out)
    }
}

/// Closure of `d` under the chosen generators, acting on raw diagrams (not
/// on classes). Members come back sorted.
pub fn orbit(d: &Diagram, generators: &[OrbitGenerator]) -> Result<Vec<Diagram>> {
    d.validate()?;
    let mut seen = BTreeSet::new();
    let mut queue = VecDeque::new();
    seen.insert(d.clone());
    queue.push_back(d.clone());
    while let Some(cur) = queue.pop_front() {
        let mut next = Vec::with_capacity(3);
        for g in generators {
            match g {
                OrbitGenerator::Tau => next.push(tau(&cur)),
                OrbitGenerator::Sigma if !cur.is_empty() => {
                    next.push(sigma(&cur)?);
                    next.push(sigma_inverse(&cur)?);
                }
                OrbitGenerator::Sigma => {}
            }
        }
        for n in next {
            if seen.insert(n.clone()) {
                queue.push_back(n);
            }
        }
    }
    Ok(seen.into_iter().collect())
}
