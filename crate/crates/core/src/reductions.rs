//! Answer-preserving transformations of the edge-disjoint realization
//! problem, ending in an instance whose first sequence is a tree sequence,
//! and an exhaustive decider to check them on small inputs.
//!
//! "Answer" throughout means: there are edge-disjoint simple graphs realizing
//! `D` and `F` on the same vertex set.

use serde::{Deserialize, Serialize};

use crate::degseq::{is_graphical, DegreeSequence};
use crate::error::{check_dims, domain, Error, Result};
use crate::trees::pair_index;

/// Default vertex limit for [`brute_force_disjoint_decision`].
pub const DEFAULT_DECISION_GUARD_N: usize = 7;

/// Largest `n` whose vertex pairs fit a `u64` mask.
const MASK_LIMIT: usize = 11;

/// Two degree sequences on the same vertex set. Zero degrees are allowed.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "PairJson", into = "PairJson")]
pub struct SimplePairInstance {
    d: DegreeSequence,
    f: DegreeSequence,
}

#[derive(Serialize, Deserialize)]
struct PairJson {
    #[serde(rename = "D")]
    d: DegreeSequence,
    #[serde(rename = "F")]
    f: DegreeSequence,
}

impl TryFrom<PairJson> for SimplePairInstance {
    type Error = Error;

    fn try_from(raw: PairJson) -> Result<Self> {
        SimplePairInstance::new(raw.d, raw.f)
    }
}

impl From<SimplePairInstance> for PairJson {
    fn from(inst: SimplePairInstance) -> Self {
        PairJson {
            d: inst.d,
            f: inst.f,
        }
    }
}

impl SimplePairInstance {
    pub fn new(d: DegreeSequence, f: DegreeSequence) -> Result<Self> {
        check_dims(d.len(), f.len())?;
        Ok(SimplePairInstance { d, f })
    }

    pub fn d(&self) -> &DegreeSequence {
        &self.d
    }

    pub fn f(&self) -> &DegreeSequence {
        &self.f
    }

    pub fn n(&self) -> usize {
        self.d.len()
    }
}

/// Degree sequences of two bipartite graphs on classes of sizes `n1`, `n2`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "BipartiteJson", into = "BipartiteJson")]
pub struct BipartitePairInstance {
    n1: usize,
    n2: usize,
    d: [Vec<usize>; 2],
    f: [Vec<usize>; 2],
}

#[derive(Serialize, Deserialize)]
struct BipartiteJson {
    n1: usize,
    n2: usize,
    #[serde(rename = "D")]
    d: [Vec<usize>; 2],
    #[serde(rename = "F")]
    f: [Vec<usize>; 2],
}

impl TryFrom<BipartiteJson> for BipartitePairInstance {
    type Error = Error;

    fn try_from(raw: BipartiteJson) -> Result<Self> {
        BipartitePairInstance::new(raw.n1, raw.n2, raw.d, raw.f)
    }
}

impl From<BipartitePairInstance> for BipartiteJson {
    fn from(inst: BipartitePairInstance) -> Self {
        BipartiteJson {
            n1: inst.n1,
            n2: inst.n2,
            d: inst.d,
            f: inst.f,
        }
    }
}

impl BipartitePairInstance {
    pub fn new(n1: usize, n2: usize, d: [Vec<usize>; 2], f: [Vec<usize>; 2]) -> Result<Self> {
        if n1 == 0 || n2 == 0 {
            return domain("both classes must be non-empty");
        }
        for (name, side) in [("D", &d), ("F", &f)] {
            check_dims(n1, side[0].len())?;
            check_dims(n2, side[1].len())?;
            let (s1, s2): (usize, usize) = (side[0].iter().sum(), side[1].iter().sum());
            if s1 != s2 {
                return domain(format!("{name}: class sums differ ({s1} vs {s2})"));
            }
            if side[0].iter().any(|&x| x > n2) || side[1].iter().any(|&x| x > n1) {
                return domain(format!("{name}: a degree exceeds the opposite class size"));
            }
        }
        Ok(BipartitePairInstance { n1, n2, d, f })
    }

    pub fn n1(&self) -> usize {
        self.n1
    }

    pub fn n2(&self) -> usize {
        self.n2
    }

    pub fn d(&self) -> &[Vec<usize>; 2] {
        &self.d
    }

    pub fn f(&self) -> &[Vec<usize>; 2] {
        &self.f
    }
}

fn shift(v: &[usize], k: usize) -> impl Iterator<Item = usize> + '_ {
    v.iter().map(move |&x| x + k)
}

/// Turns each class into a clique in one of the two sequences: class 1 of
/// `D` gains `n1 - 1`, class 2 of `F` gains `n2 - 1`. Vertices are listed
/// class 1 first.
pub fn bipartite_to_simple(inst: &BipartitePairInstance) -> Result<SimplePairInstance> {
    let (n1, n2) = (inst.n1, inst.n2);
    let d: Vec<usize> = shift(&inst.d[0], n1 - 1)
        .chain(shift(&inst.d[1], 0))
        .collect();
    let f: Vec<usize> = shift(&inst.f[0], 0)
        .chain(shift(&inst.f[1], n2 - 1))
        .collect();
    SimplePairInstance::new(DegreeSequence::new(d)?, DegreeSequence::new(f)?)
}

/// Adds a vertex adjacent to everything in `D` and isolated in `F`.
pub fn add_dominating_vertex(inst: &SimplePairInstance) -> Result<SimplePairInstance> {
    let n = inst.n();
    let d = inst.d.iter().map(|(_, x)| x + 1).chain([n]).collect();
    let f = inst.f.iter().map(|(_, x)| x).chain([0]).collect();
    SimplePairInstance::new(DegreeSequence::new(d)?, DegreeSequence::new(f)?)
}

/// Adds two vertices: a hub adjacent to every old vertex in `F`, and a vertex
/// isolated in `F`; both are leaves in `D`.
pub fn add_pendant_gadget(inst: &SimplePairInstance) -> Result<SimplePairInstance> {
    let n = inst.n();
    let d = inst.d.iter().map(|(_, x)| x).chain([1, 1]).collect();
    let f = inst.f.iter().map(|(_, x)| x + 1).chain([n, 0]).collect();
    SimplePairInstance::new(DegreeSequence::new(d)?, DegreeSequence::new(f)?)
}

/// Result of [`reduce_to_tree_sequence`].
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Reduction {
    pub instance: SimplePairInstance,
    pub dominating_steps: usize,
    pub pendant_steps: usize,
}

/// Applies [`add_dominating_vertex`] while `D` has a zero or `sum D < 2n - 2`,
/// then [`add_pendant_gadget`] `(sum D - 2n + 2) / 2` times.
pub fn reduce_to_tree_sequence(inst: &SimplePairInstance) -> Result<Reduction> {
    let excess = |i: &SimplePairInstance| i.d.sum() as i64 - (2 * i.n() as i64 - 2);
    let mut current = inst.clone();
    let mut dominating_steps = 0;
    while current.d.iter().any(|(_, x)| x == 0) || excess(&current) < 0 {
        current = add_dominating_vertex(&current)?;
        dominating_steps += 1;
    }
    let surplus = excess(&current);
    if surplus % 2 != 0 {
        return domain(format!(
            "degree sum of D is odd ({}); no tree sequence is reachable",
            current.d.sum()
        ));
    }
    let pendant_steps = (surplus / 2) as usize;
    for _ in 0..pendant_steps {
        current = add_pendant_gadget(&current)?;
    }
    if !current.d.is_tree_sequence() {
        return Err(Error::Internal(format!(
            "reduction ended at a non-tree sequence {}",
            current.d
        )));
    }
    Ok(Reduction {
        instance: current,
        dominating_steps,
        pendant_steps,
    })
}

/// Whether edge-disjoint simple graphs realize `D` and `F`. Enumerates the
/// realizations of `D` and searches each complement for one of `F`.
pub fn brute_force_disjoint_decision(inst: &SimplePairInstance, guard_n: usize) -> Result<bool> {
    let n = inst.n();
    if n > guard_n.min(MASK_LIMIT) {
        return Err(Error::Resource(format!(
            "exhaustive decision limited to n <= {}, got n = {n}",
            guard_n.min(MASK_LIMIT)
        )));
    }
    if !inst.d.is_graphical() || !inst.f.is_graphical() {
        return Ok(false);
    }
    let mut d_res = inst.d.degrees().to_vec();
    let mut found = false;
    Realizer::new(n, 0).run(0, &mut d_res, 0, &mut |d_edges| {
        let mut f_res = inst.f.degrees().to_vec();
        found = Realizer::new(n, d_edges).run(0, &mut f_res, 0, &mut |_| true);
        found
    });
    Ok(found)
}

/// Degree-constrained edge selection: the lowest vertex with residual degree
/// picks all its remaining partners among higher vertices at once, so every
/// graph is produced exactly once.
struct Realizer {
    n: usize,
    forbidden: u64,
}

impl Realizer {
    fn new(n: usize, forbidden: u64) -> Self {
        Realizer { n, forbidden }
    }

    fn allowed(&self, u: usize, w: usize) -> bool {
        self.forbidden & (1 << pair_index(self.n, u + 1, w + 1)) == 0
    }

    /// Calls `visit` on each completed edge mask until it returns `true`.
    fn run(
        &self,
        from: usize,
        res: &mut [usize],
        chosen: u64,
        visit: &mut dyn FnMut(u64) -> bool,
    ) -> bool {
        let Some(v) = (from..self.n).find(|&v| res[v] > 0) else {
            return visit(chosen);
        };
        let candidates: Vec<usize> = (v + 1..self.n)
            .filter(|&w| res[w] > 0 && self.allowed(v, w))
            .collect();
        let need = res[v];
        if candidates.len() < need {
            return false;
        }
        res[v] = 0;
        let stop = self.choose(v, &candidates, 0, need, res, chosen, visit);
        res[v] = need;
        stop
    }

    #[allow(clippy::too_many_arguments)]
    fn choose(
        &self,
        v: usize,
        candidates: &[usize],
        start: usize,
        need: usize,
        res: &mut [usize],
        chosen: u64,
        visit: &mut dyn FnMut(u64) -> bool,
    ) -> bool {
        if need == 0 {
            if self.forbidden == 0 && !is_graphical(&res[v + 1..]) {
                return false;
            }
            return self.run(v + 1, res, chosen, visit);
        }
        for k in start..=candidates.len() - need {
            let w = candidates[k];
            res[w] -= 1;
            let bit = 1 << pair_index(self.n, v + 1, w + 1);
            let stop = self.choose(v, candidates, k + 1, need - 1, res, chosen | bit, visit);
            res[w] += 1;
            if stop {
                return true;
            }
        }
        false
    }
}
