use std::cmp::Ordering;
use std::fmt;

use crate::poincare::ModelType;

/// Labels `1..=n` as bits `0..n` of a mask.
pub type Support = u16;

fn labels(mask: Support) -> impl Iterator<Item = u32> {
    (0..16).filter(move |b| mask & (1 << b) != 0).map(|b| b + 1)
}

fn is_subset(a: Support, b: Support) -> bool {
    a & !b == 0
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum BlockKind {
    /// Type A block: the diagonal on its support.
    Plain,
    /// Contains the coordinate subspace on its support.
    Strong,
    /// Signed diagonal; `part` is the half of the split holding the smallest
    /// label, the other half is `support & !part` (possibly empty).
    Weak { part: Support },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Block {
    support: Support,
    kind: BlockKind,
}

impl Block {
    pub fn plain(support: Support) -> Self {
        Block {
            support,
            kind: BlockKind::Plain,
        }
    }

    pub fn strong(support: Support) -> Self {
        Block {
            support,
            kind: BlockKind::Strong,
        }
    }

    /// Weak block with split `(part, support \ part)`, stored up to flip.
    pub fn weak(support: Support, part: Support) -> Self {
        debug_assert!(is_subset(part, support));
        let low = support & support.wrapping_neg();
        let part = if part & low != 0 {
            part
        } else {
            support & !part
        };
        Block {
            support,
            kind: BlockKind::Weak { part },
        }
    }

    pub fn support(&self) -> Support {
        self.support
    }

    pub fn kind(&self) -> BlockKind {
        self.kind
    }

    pub fn size(&self) -> u32 {
        self.support.count_ones()
    }

    pub fn is_strong(&self) -> bool {
        self.kind == BlockKind::Strong
    }

    pub fn is_weak(&self) -> bool {
        matches!(self.kind, BlockKind::Weak { .. })
    }

    pub fn dim(&self) -> u32 {
        match self.kind {
            BlockKind::Strong => self.size(),
            _ => self.size() - 1,
        }
    }

    /// Inclusion of the corresponding subspaces.
    pub fn leq(&self, other: &Block) -> bool {
        use BlockKind::*;
        match (self.kind, other.kind) {
            (Plain, Plain) | (Strong, Strong) | (Weak { .. }, Strong) => {
                is_subset(self.support, other.support)
            }
            (Weak { part: x1 }, Weak { part: y1 }) => {
                let x2 = self.support & !x1;
                let y2 = other.support & !y1;
                (is_subset(x1, y1) && is_subset(x2, y2)) || (is_subset(x1, y2) && is_subset(x2, y1))
            }
            _ => false,
        }
    }

    /// The block with its labels renamed by `perm` (`perm[i]` is the new
    /// 0-based position of label `i + 1`).
    pub fn relabel(&self, perm: &[u32]) -> Block {
        let map = |mask: Support| {
            labels(mask).fold(0, |acc: Support, l| acc | (1 << perm[l as usize - 1]))
        };
        match self.kind {
            BlockKind::Plain => Block::plain(map(self.support)),
            BlockKind::Strong => Block::strong(map(self.support)),
            BlockKind::Weak { part } => Block::weak(map(self.support), map(part)),
        }
    }

    fn sort_key(&self) -> (u32, Support, u8, Support) {
        let (tag, part) = match self.kind {
            BlockKind::Plain => (0, 0),
            BlockKind::Strong => (1, 0),
            BlockKind::Weak { part } => (2, part),
        };
        (self.support.trailing_zeros(), self.support, tag, part)
    }
}

impl Ord for Block {
    fn cmp(&self, other: &Self) -> Ordering {
        self.sort_key().cmp(&other.sort_key())
    }
}

impl PartialOrd for Block {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

fn list(mask: Support) -> String {
    labels(mask)
        .map(|l| l.to_string())
        .collect::<Vec<_>>()
        .join(",")
}

/// `(1,2)`, `strong{1,2}`, `weak(1,3|2)`, `weak(1,2|)`.
impl fmt::Display for Block {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.kind {
            BlockKind::Plain => write!(f, "({})", list(self.support)),
            BlockKind::Strong => write!(f, "strong{{{}}}", list(self.support)),
            BlockKind::Weak { part } => {
                write!(f, "weak({}|{})", list(part), list(self.support & !part))
            }
        }
    }
}

/// A family of blocks with disjoint supports, at most one strong; the blocks
/// are kept sorted by smallest label.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct PosetElement {
    blocks: Vec<Block>,
}

impl PosetElement {
    pub fn new(mut blocks: Vec<Block>) -> Self {
        blocks.sort();
        PosetElement { blocks }
    }

    pub fn blocks(&self) -> &[Block] {
        &self.blocks
    }

    pub fn dim(&self) -> u32 {
        self.blocks.iter().map(Block::dim).sum()
    }

    pub fn strong_block(&self) -> Option<&Block> {
        self.blocks.iter().find(|b| b.is_strong())
    }

    /// Union of the supports.
    pub fn support(&self) -> Support {
        self.blocks.iter().fold(0, |acc, b| acc | b.support)
    }

    pub fn leq(&self, other: &PosetElement) -> bool {
        self.blocks
            .iter()
            .all(|x| other.blocks.iter().any(|y| x.leq(y)))
    }

    pub fn relabel(&self, perm: &[u32]) -> PosetElement {
        PosetElement::new(self.blocks.iter().map(|b| b.relabel(perm)).collect())
    }

    /// Same element with every weak split forgotten.
    pub(crate) fn erased(&self) -> Vec<(Support, bool)> {
        self.blocks
            .iter()
            .map(|b| (b.support, b.is_strong()))
            .collect()
    }
}

impl Ord for PosetElement {
    fn cmp(&self, other: &Self) -> Ordering {
        self.dim()
            .cmp(&other.dim())
            .then_with(|| self.blocks.cmp(&other.blocks))
    }
}

impl PartialOrd for PosetElement {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for PosetElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("{")?;
        for (k, b) in self.blocks.iter().enumerate() {
            if k > 0 {
                f.write_str(" ")?;
            }
            write!(f, "{b}")?;
        }
        f.write_str("}")
    }
}

/// Set partitions of `{0..n}` as lists of masks.
fn set_partitions(n: u32) -> Vec<Vec<Support>> {
    fn go(i: u32, n: u32, current: &mut Vec<Support>, out: &mut Vec<Vec<Support>>) {
        if i == n {
            out.push(current.clone());
            return;
        }
        for k in 0..current.len() {
            current[k] |= 1 << i;
            go(i + 1, n, current, out);
            current[k] &= !(1 << i);
        }
        current.push(1 << i);
        go(i + 1, n, current, out);
        current.pop();
    }
    let mut out = Vec::new();
    go(0, n, &mut Vec::new(), &mut out);
    out
}

/// The `2^{k-1}` splits of a support of size `k`, as the part holding the
/// smallest label.
fn splits(support: Support) -> Vec<Support> {
    let low = support & support.wrapping_neg();
    let rest = support & !low;
    // enumerate all submasks of `rest`
    let mut out = Vec::new();
    let mut sub = rest;
    loop {
        out.push(low | sub);
        if sub == 0 {
            break;
        }
        sub = (sub - 1) & rest;
    }
    out.sort_unstable();
    out
}

/// Every element of the poset of type `model` on labels `1..=n`, sorted.
pub(crate) fn all_elements(model: ModelType, n: u32) -> Vec<PosetElement> {
    let min_strong = match model {
        ModelType::A => u32::MAX,
        ModelType::B => 1,
        ModelType::D => 2,
    };
    let mut out = Vec::new();
    for partition in set_partitions(n) {
        // `None` means no strong block
        let strong_choices = std::iter::once(None).chain(
            (0..partition.len())
                .filter(|&k| partition[k].count_ones() >= min_strong)
                .map(Some),
        );
        for strong in strong_choices {
            let mut families: Vec<Vec<Block>> = vec![Vec::new()];
            for (k, &mask) in partition.iter().enumerate() {
                if Some(k) == strong {
                    families
                        .iter_mut()
                        .for_each(|f| f.push(Block::strong(mask)));
                } else if mask.count_ones() >= 2 {
                    let options: Vec<Block> = match model {
                        ModelType::A => vec![Block::plain(mask)],
                        _ => splits(mask)
                            .into_iter()
                            .map(|p| Block::weak(mask, p))
                            .collect(),
                    };
                    families = families
                        .into_iter()
                        .flat_map(|f| {
                            options.iter().map(move |b| {
                                let mut g = f.clone();
                                g.push(*b);
                                g
                            })
                        })
                        .collect();
                }
            }
            out.extend(
                families
                    .into_iter()
                    .filter(|f| !f.is_empty())
                    .map(PosetElement::new),
            );
        }
    }
    out.sort();
    out
}
