use std::collections::HashMap;

use super::chain::{Chain, Poset};
use super::element::{Block, Support};

/// A vertex of the levelled forest of a chain.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Vertex {
    pub block: Block,
    /// Index of the parent in the previous level; `None` at level 1.
    pub parent: Option<usize>,
    /// Children of any kind, leaves included.
    pub out_degree: u32,
    /// Children that are weak vertices or leaves.
    pub weak_out_degree: u32,
}

impl Vertex {
    pub fn is_strong(&self) -> bool {
        self.block.is_strong()
    }
}

/// The levelled forest read off a chain: level 1 holds the blocks of the
/// largest element, level `k` those of the `k`-th element from the top.
/// Every label hangs as a leaf under the deepest vertex containing it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ForestShape {
    pub n: u32,
    pub levels: Vec<Vec<Vertex>>,
    /// For each label `1..=n`, the `(level, vertex)` it hangs under, if any.
    pub leaves: Vec<Option<(usize, usize)>>,
}

impl ForestShape {
    /// The dimension jump each level accounts for, top-down: `|out| - 1`
    /// summed over the level, except that a strong vertex contributes its
    /// weak out-degree.
    pub fn level_sums(&self) -> Vec<u32> {
        self.levels
            .iter()
            .map(|level| {
                level
                    .iter()
                    .map(|v| {
                        if v.is_strong() {
                            v.weak_out_degree
                        } else {
                            v.out_degree - 1
                        }
                    })
                    .sum()
            })
            .collect()
    }

    /// Weak vertices whose parent is absent or strong.
    pub fn maximal_weak_vertices(&self) -> Vec<&Vertex> {
        let mut out = Vec::new();
        for (k, level) in self.levels.iter().enumerate() {
            for v in level {
                let parent_weak = v
                    .parent
                    .is_some_and(|p| self.levels[k - 1][p].block.is_weak());
                if v.block.is_weak() && !parent_weak {
                    out.push(v);
                }
            }
        }
        out
    }
}

/// Builds the forest of a nonempty chain; `None` for the empty chain.
pub fn forest_of_chain(chain: &Chain, n: u32) -> Option<ForestShape> {
    let elements = chain.elements();
    if elements.is_empty() {
        return None;
    }
    let mut levels: Vec<Vec<Vertex>> = Vec::with_capacity(elements.len());
    for (k, x) in elements.iter().rev().enumerate() {
        let level = x
            .blocks()
            .iter()
            .map(|b| Vertex {
                block: *b,
                parent: (k > 0).then(|| {
                    levels[k - 1]
                        .iter()
                        .position(|p| b.leq(&p.block))
                        .expect("chain element below has a block outside the one above")
                }),
                out_degree: 0,
                weak_out_degree: 0,
            })
            .collect();
        levels.push(level);
    }
    for k in 1..levels.len() {
        for v in 0..levels[k].len() {
            let child = levels[k][v].clone();
            let parent = &mut levels[k - 1][child.parent.unwrap()];
            parent.out_degree += 1;
            if !child.is_strong() {
                parent.weak_out_degree += 1;
            }
        }
    }
    let mut leaves = vec![None; n as usize];
    for (label, slot) in leaves.iter_mut().enumerate() {
        let bit: Support = 1 << label;
        let deepest = (0..levels.len()).rev().find_map(|k| {
            levels[k]
                .iter()
                .position(|v| v.block.support() & bit != 0)
                .map(|i| (k, i))
        });
        if let Some((k, i)) = deepest {
            levels[k][i].out_degree += 1;
            levels[k][i].weak_out_degree += 1;
            *slot = Some((k, i));
        }
    }
    Some(ForestShape { n, levels, leaves })
}

/// One group of chains sharing their split-erased forest.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TwoPowerGroup {
    pub representative: Chain,
    pub size: u64,
    /// `sum (|X| - 1)` over the maximal weak vertices.
    pub exponent: u32,
}

impl TwoPowerGroup {
    pub fn holds(&self) -> bool {
        self.size == 1u64 << self.exponent
    }
}

/// Groups every chain of the poset by its split-erased form.
pub fn two_power_groups(poset: &Poset) -> Vec<TwoPowerGroup> {
    let mut groups: HashMap<Vec<Vec<(Support, bool)>>, TwoPowerGroup> = HashMap::new();
    let mut order = Vec::new();
    for chain in poset.chains() {
        let key: Vec<_> = chain.elements().iter().map(|x| x.erased()).collect();
        groups
            .entry(key.clone())
            .or_insert_with(|| {
                order.push(key);
                let exponent = forest_of_chain(&chain, poset.n())
                    .map(|f| {
                        f.maximal_weak_vertices()
                            .iter()
                            .map(|v| v.block.size() - 1)
                            .sum()
                    })
                    .unwrap_or(0);
                TwoPowerGroup {
                    representative: chain.clone(),
                    size: 0,
                    exponent,
                }
            })
            .size += 1;
    }
    order
        .into_iter()
        .map(|k| groups.remove(&k).unwrap())
        .collect()
}
