//! Stallings foldings.
//!
//! The core graph of `H = ⟨h_1..h_j⟩ ≤ F_k` is obtained by wedging one loop per
//! generator at a base state, folding edges with equal labels out of a common
//! state until the graph is deterministic, and pruning hanging trees. A word
//! lies in `H` iff it reads a closed loop at the base, and
//! `rank(H) = #edges − #states + 1`.

use alloc::collections::BTreeMap;
use alloc::vec;
use alloc::vec::Vec;

use super::{GroupModel, Word};
use crate::Result;

/// A folded, pruned, inverse-closed automaton over `a_1^{±1}..a_k^{±1}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CoreGraph {
    rank_of_ambient: u32,
    /// `out[state][2 * gen + sign]`, sign 0 for `a^+1`, 1 for `a^-1`.
    out: Vec<Vec<Option<u32>>>,
    edges: usize,
}

fn label(gen: u32, positive: bool) -> usize {
    2 * gen as usize + usize::from(!positive)
}

struct UnionFind(Vec<u32>);

impl UnionFind {
    fn find(&mut self, mut x: u32) -> u32 {
        while self.0[x as usize] != x {
            let parent = self.0[x as usize];
            self.0[x as usize] = self.0[parent as usize];
            x = parent;
        }
        x
    }

    /// Keeps the smaller representative so the base state stays 0.
    fn union(&mut self, a: u32, b: u32) -> bool {
        let (a, b) = (self.find(a), self.find(b));
        if a == b {
            return false;
        }
        let (lo, hi) = if a < b { (a, b) } else { (b, a) };
        self.0[hi as usize] = lo;
        true
    }
}

impl CoreGraph {
    pub(super) fn build(model: &GroupModel, rank: u32, gens: &[Word]) -> Result<Self> {
        // Positive-orientation edges (from, generator, to).
        let mut edges: Vec<(u32, u32, u32)> = Vec::new();
        let mut states: u32 = 1;
        for g in gens {
            let g = model.reduce(g)?;
            let steps = model.generator_steps(&g);
            if steps.is_empty() {
                continue;
            }
            let mut at = 0u32;
            for (i, s) in steps.iter().enumerate() {
                let next = if i + 1 == steps.len() {
                    0
                } else {
                    states += 1;
                    states - 1
                };
                if s.power > 0 {
                    edges.push((at, s.factor, next));
                } else {
                    edges.push((next, s.factor, at));
                }
                at = next;
            }
        }

        let mut uf = UnionFind((0..states).collect());
        loop {
            let mut seen: BTreeMap<(u32, usize), u32> = BTreeMap::new();
            let mut merged = false;
            for &(u, a, v) in &edges {
                let (u, v) = (uf.find(u), uf.find(v));
                for (key, target) in [((u, label(a, true)), v), ((v, label(a, false)), u)] {
                    match seen.get(&key) {
                        Some(&t) => {
                            let t = uf.find(t);
                            if t != target {
                                merged |= uf.union(t, target);
                            }
                        }
                        None => {
                            seen.insert(key, target);
                        }
                    }
                }
            }
            if !merged {
                break;
            }
        }
        for e in edges.iter_mut() {
            *e = (uf.find(e.0), e.1, uf.find(e.2));
        }
        edges.sort_unstable();
        edges.dedup();

        // Prune hanging trees: repeatedly drop non-base states of degree <= 1.
        let mut alive = vec![false; states as usize];
        for &(u, _, v) in &edges {
            alive[u as usize] = true;
            alive[v as usize] = true;
        }
        alive[0] = true;
        let mut keep = vec![true; edges.len()];
        loop {
            let mut degree = vec![0usize; states as usize];
            for (i, &(u, _, v)) in edges.iter().enumerate() {
                if keep[i] {
                    degree[u as usize] += 1;
                    degree[v as usize] += 1;
                }
            }
            let mut changed = false;
            for (i, &(u, _, v)) in edges.iter().enumerate() {
                if !keep[i] {
                    continue;
                }
                if (u != 0 && degree[u as usize] <= 1) || (v != 0 && degree[v as usize] <= 1) {
                    keep[i] = false;
                    changed = true;
                }
            }
            if !changed {
                break;
            }
        }
        let kept: Vec<(u32, u32, u32)> = edges.iter().zip(&keep).filter(|(_, &k)| k).map(|(&e, _)| e).collect();

        let mut index = vec![u32::MAX; states as usize];
        index[0] = 0;
        let mut next = 1u32;
        for &(u, _, v) in &kept {
            for s in [u, v] {
                if index[s as usize] == u32::MAX {
                    index[s as usize] = next;
                    next += 1;
                }
            }
        }
        let mut out = vec![vec![None; 2 * rank as usize]; next as usize];
        for &(u, a, v) in &kept {
            let (u, v) = (index[u as usize], index[v as usize]);
            out[u as usize][label(a, true)] = Some(v);
            out[v as usize][label(a, false)] = Some(u);
        }
        Ok(CoreGraph { rank_of_ambient: rank, out, edges: kept.len() })
    }

    pub fn states(&self) -> usize {
        self.out.len()
    }

    pub fn edges(&self) -> usize {
        self.edges
    }

    /// Rank of the subgroup, `#edges − #states + 1`.
    pub fn rank(&self) -> usize {
        self.edges + 1 - self.out.len()
    }

    /// Transition out of `state` along `a_gen^{±1}`.
    pub fn transition(&self, state: usize, gen: u32, positive: bool) -> Option<usize> {
        self.out.get(state)?.get(label(gen, positive)).copied().flatten().map(|s| s as usize)
    }

    /// Exact membership of a reduced word.
    pub fn member(&self, w: &Word) -> bool {
        let mut at = 0usize;
        for l in w.letters() {
            if l.factor >= self.rank_of_ambient {
                return false;
            }
            for _ in 0..l.power.unsigned_abs() {
                match self.transition(at, l.factor, l.power > 0) {
                    Some(next) => at = next,
                    None => return false,
                }
            }
        }
        at == 0
    }

    /// Checks the structural invariants: deterministic, inverse-closed, and
    /// every non-base state has degree at least two.
    pub fn is_folded_core(&self) -> bool {
        for (s, row) in self.out.iter().enumerate() {
            for (lab, t) in row.iter().enumerate() {
                if let Some(t) = *t {
                    let back = self.out[t as usize][lab ^ 1];
                    if back != Some(s as u32) {
                        return false;
                    }
                }
            }
            if s != 0 && row.iter().filter(|t| t.is_some()).count() < 2 {
                return false;
            }
        }
        true
    }
}
