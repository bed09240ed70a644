use std::collections::HashMap;
use std::fmt;

use num_bigint::BigInt;

use super::element::{all_elements, PosetElement};
use super::OracleLimits;
use crate::algebra::Rational;
use crate::error::Result;
use crate::exec::Execution;
use crate::poincare::{level_factor, ModelType, QPoly};

/// The poset of type `model` on `n` labels, sorted by dimension, with the
/// strict upper sets precomputed.
#[derive(Debug, Clone)]
pub struct Poset {
    model: ModelType,
    n: u32,
    elements: Vec<PosetElement>,
    dims: Vec<u32>,
    above: Vec<Vec<u32>>,
}

impl Poset {
    pub fn build(model: ModelType, n: u32) -> Result<Poset> {
        Self::build_with(model, n, OracleLimits::from_env(), Execution::default())
    }

    pub fn build_with(
        model: ModelType,
        n: u32,
        limits: OracleLimits,
        exec: Execution,
    ) -> Result<Poset> {
        limits.check(model, n)?;
        let elements = all_elements(model, n);
        let dims: Vec<u32> = elements.iter().map(PosetElement::dim).collect();
        let indices: Vec<usize> = (0..elements.len()).collect();
        let above = exec.map(&indices, |&i| {
            // strict inclusion raises the dimension, and elements are sorted
            // by dimension
            let first = dims.partition_point(|&d| d <= dims[i]);
            (first..elements.len())
                .filter(|&j| elements[i].leq(&elements[j]))
                .map(|j| j as u32)
                .collect()
        });
        Ok(Poset {
            model,
            n,
            elements,
            dims,
            above,
        })
    }

    pub fn model(&self) -> ModelType {
        self.model
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn elements(&self) -> &[PosetElement] {
        &self.elements
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    /// Indices of the elements strictly above element `i`.
    pub fn above(&self, i: usize) -> &[u32] {
        &self.above[i]
    }

    /// Every strict chain, the empty one first, in depth-first order over
    /// the sorted elements.
    pub fn chains(&self) -> ChainIter<'_> {
        ChainIter {
            poset: self,
            path: Vec::new(),
            stack: Vec::new(),
            started: false,
        }
    }

    /// Number of strict chains of each jump multiset. Keys pack the
    /// multiplicity of jump `d` into bits `4d..4d+4`.
    pub fn jump_census(&self, exec: Execution) -> HashMap<u64, u64> {
        let starts: Vec<usize> = (0..self.len()).collect();
        let mut census = exec.map_reduce(
            &starts,
            1,
            HashMap::new,
            |mut acc, &i| {
                self.count_from(i, &mut acc);
                acc
            },
            |mut a, b| {
                for (k, v) in b {
                    *a.entry(k).or_insert(0) += v;
                }
                a
            },
        );
        census.insert(0, 1);
        census
    }

    fn count_from(&self, start: usize, acc: &mut HashMap<u64, u64>) {
        let mut stack = vec![(start as u32, jump_key(self.dims[start]))];
        while let Some((i, key)) = stack.pop() {
            *acc.entry(key).or_insert(0) += 1;
            let d = self.dims[i as usize];
            for &j in &self.above[i as usize] {
                stack.push((j, key + jump_key(self.dims[j as usize] - d)));
            }
        }
    }

    /// Sum of [`chain_contribution`] over all chains.
    pub fn poincare(&self, h: u32, exec: Execution) -> QPoly {
        let mut census: Vec<(u64, u64)> = self.jump_census(exec).into_iter().collect();
        census.sort_unstable();
        census.iter().fold(QPoly::zero(), |acc, &(key, count)| {
            let term = (1..16u32).fold(QPoly::one(), |p, d| {
                let mult = ((key >> (4 * d)) & 0xf) as u32;
                if mult == 0 {
                    p
                } else {
                    p.mul(&level_factor(d, h).pow(mult))
                }
            });
            acc.add(&term.scale(&Rational::from_integer(BigInt::from(count))))
        })
    }
}

fn jump_key(d: u32) -> u64 {
    debug_assert!((1..16).contains(&d));
    1 << (4 * d)
}

/// A strict chain `X_1 < X_2 < ... < X_m`, possibly empty.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Chain {
    elements: Vec<PosetElement>,
}

impl Chain {
    pub fn new(elements: Vec<PosetElement>) -> Self {
        Chain { elements }
    }

    pub fn elements(&self) -> &[PosetElement] {
        &self.elements
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    /// `d_k = dim X_k - dim X_{k-1}` with `dim X_0 = 0`.
    pub fn jumps(&self) -> Vec<u32> {
        let mut prev = 0;
        self.elements
            .iter()
            .map(|x| {
                let d = x.dim();
                let jump = d - prev;
                prev = d;
                jump
            })
            .collect()
    }

    /// Whether the elements are strictly increasing.
    pub fn is_strict(&self) -> bool {
        self.elements
            .windows(2)
            .all(|w| w[0] != w[1] && w[0].leq(&w[1]))
    }
}

/// `X_1 < X_2`, `{}` for the empty chain.
impl fmt::Display for Chain {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.elements.is_empty() {
            return f.write_str("{}");
        }
        for (k, x) in self.elements.iter().enumerate() {
            if k > 0 {
                f.write_str(" < ")?;
            }
            write!(f, "{x}")?;
        }
        Ok(())
    }
}

/// Depth-first stream of chains, see [`Poset::chains`].
pub struct ChainIter<'a> {
    poset: &'a Poset,
    path: Vec<u32>,
    // (depth of the parent path, next candidate)
    stack: Vec<(usize, u32)>,
    started: bool,
}

impl Iterator for ChainIter<'_> {
    type Item = Chain;

    fn next(&mut self) -> Option<Chain> {
        if !self.started {
            self.started = true;
            for i in (0..self.poset.len() as u32).rev() {
                self.stack.push((0, i));
            }
            return Some(Chain::new(Vec::new()));
        }
        let (depth, i) = self.stack.pop()?;
        self.path.truncate(depth);
        self.path.push(i);
        for &j in self.poset.above[i as usize].iter().rev() {
            self.stack.push((depth + 1, j));
        }
        Some(Chain::new(
            self.path
                .iter()
                .map(|&k| self.poset.elements[k as usize].clone())
                .collect(),
        ))
    }
}

/// `prod_k G_h(d_k)`; 1 for the empty chain.
pub fn chain_contribution(chain: &Chain, h: u32) -> QPoly {
    chain
        .jumps()
        .iter()
        .fold(QPoly::one(), |acc, &d| acc.mul(&level_factor(d, h)))
}
