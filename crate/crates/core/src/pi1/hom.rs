use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use super::abelian::{abelianization, Abelianization};
use super::groups::FiniteGroup;
use super::word::Letter;
use super::Presentation;
use crate::error::{Error, Result};

pub const DEFAULT_HOM_NODE_CAP: u64 = 200_000_000;

/// Counts homomorphisms into `target` by assigning generator images one at
/// a time. Each relator is evaluated as soon as all of its generators have
/// images. Generators that occur in no relator contribute a factor
/// `|target|` each without being enumerated.
pub fn hom_count(p: &Presentation, target: &FiniteGroup, node_cap: u64) -> Result<u128> {
    let n = usize::from(p.ngens());
    let order = generator_order(p);
    let mut rank = vec![usize::MAX; n + 1];
    for (k, &g) in order.iter().enumerate() {
        rank[usize::from(g)] = k;
    }
    // relators indexed by the position of their last-assigned generator
    let mut checks: Vec<Vec<Vec<Letter>>> = vec![Vec::new(); order.len()];
    for r in p.relators() {
        if r.is_empty() {
            continue;
        }
        let last = r
            .letters()
            .iter()
            .map(|x| rank[x.unsigned_abs() as usize])
            .max()
            .expect("non-empty");
        checks[last].push(r.letters().to_vec());
    }
    let free = n - order.len();
    let mut search = HomSearch {
        target,
        order: &order,
        checks: &checks,
        images: vec![0u8; n + 1],
        nodes: 0,
        node_cap,
    };
    let constrained = search.count(0)?;
    Ok(constrained * (target.order() as u128).pow(free as u32))
}

/// Generators that occur in relators, greedily ordered so that many
/// relators close early.
fn generator_order(p: &Presentation) -> Vec<u8> {
    let n = usize::from(p.ngens());
    let supports: Vec<Vec<bool>> = p
        .relators()
        .iter()
        .map(|r| {
            let mut s = vec![false; n + 1];
            for &x in r.letters() {
                s[x.unsigned_abs() as usize] = true;
            }
            s
        })
        .collect();
    let used: Vec<u8> = (1..=p.ngens())
        .filter(|&g| supports.iter().any(|s| s[usize::from(g)]))
        .collect();
    let mut chosen = vec![false; n + 1];
    let mut order = Vec::with_capacity(used.len());
    while order.len() < used.len() {
        // prefer the generator that completes the most relators, then the
        // one appearing in the most partially assigned relators
        let best = used
            .iter()
            .copied()
            .filter(|&g| !chosen[usize::from(g)])
            .max_by_key(|&g| {
                let mut closes = 0;
                let mut touches = 0;
                for s in supports.iter().filter(|s| s[usize::from(g)]) {
                    let missing = (1..=n).filter(|&h| s[h] && !chosen[h]).count();
                    if missing == 1 {
                        closes += 1;
                    }
                    touches += 1;
                }
                (closes, touches, std::cmp::Reverse(g))
            })
            .expect("some generator left");
        chosen[usize::from(best)] = true;
        order.push(best);
    }
    order
}

struct HomSearch<'a> {
    target: &'a FiniteGroup,
    order: &'a [u8],
    checks: &'a [Vec<Vec<Letter>>],
    images: Vec<u8>,
    nodes: u64,
    node_cap: u64,
}

impl HomSearch<'_> {
    fn eval(&self, r: &[Letter]) -> u8 {
        r.iter().fold(0u8, |acc, &x| {
            let img = self.images[x.unsigned_abs() as usize];
            let img = if x > 0 { img } else { self.target.inv(img) };
            self.target.mul(acc, img)
        })
    }

    fn count(&mut self, depth: usize) -> Result<u128> {
        if depth == self.order.len() {
            return Ok(1);
        }
        let g = usize::from(self.order[depth]);
        let mut total = 0u128;
        for x in 0..self.target.order() as u8 {
            self.nodes += 1;
            if self.nodes > self.node_cap {
                return Err(Error::BudgetExceeded(format!(
                    "homomorphism search into {} passed {} nodes",
                    self.target.name(),
                    self.node_cap
                )));
            }
            self.images[g] = x;
            if self.checks[depth].iter().all(|r| self.eval(r) == 0) {
                total += self.count(depth + 1)?;
            }
        }
        Ok(total)
    }
}

/// Abelianization plus homomorphism counts into a list of finite groups.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct GroupFingerprint {
    pub abelianization: Abelianization,
    pub hom_counts: BTreeMap<String, u128>,
}

impl std::fmt::Display for GroupFingerprint {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "ab={}", self.abelianization)?;
        for (name, count) in &self.hom_counts {
            write!(f, " {name}:{count}")?;
        }
        Ok(())
    }
}

/// Abelian targets are counted from the abelianization; the rest by
/// search.
pub fn fingerprint(p: &Presentation, targets: &[FiniteGroup], node_cap: u64) -> Result<GroupFingerprint> {
    let ab = abelianization(p);
    let mut hom_counts = BTreeMap::new();
    for g in targets {
        let count = match g.abelian_factors() {
            Some(factors) => ab.hom_count_into_abelian(factors),
            None => hom_count(p, g, node_cap)?,
        };
        hom_counts.insert(g.name().to_string(), count);
    }
    Ok(GroupFingerprint {
        abelianization: ab,
        hom_counts,
    })
}
