//! Explicit unchoosable list assignments built from color blocks.
//!
//! For `k_A` and block sizes `a_1..a_r`, the colors are split into `k_A·r`
//! blocks `C_i^(j)` with `|C_i^(j)| = a_i`. A-lists are the transversals
//! `{c_1 ∈ C_i^(1), …, c_kA ∈ C_i^(kA)}` for each `i`; B-lists are the unions
//! `C_1^(e_1) ∪ … ∪ C_r^(e_r)` over all `e ∈ [k_A]^r`. The resulting
//! `K_{Σ a_i^kA, k_A^r}` admits no proper coloring.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::model::{Color, ListInstance};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum BlockError {
    #[error("block spec needs kA >= 1")]
    ZeroKa,
    #[error("block spec needs at least one block size")]
    NoBlocks,
    #[error("block sizes must be positive")]
    ZeroBlock,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BlockSpec {
    #[serde(rename = "kA")]
    pub ka: usize,
    pub a: Vec<usize>,
}

impl BlockSpec {
    pub fn new(ka: usize, a: Vec<usize>) -> Result<Self, BlockError> {
        if ka == 0 {
            return Err(BlockError::ZeroKa);
        }
        if a.is_empty() {
            return Err(BlockError::NoBlocks);
        }
        if a.contains(&0) {
            return Err(BlockError::ZeroBlock);
        }
        Ok(BlockSpec { ka, a })
    }

    pub fn universe(&self) -> usize {
        self.ka * self.a.iter().sum::<usize>()
    }

    pub fn kb(&self) -> usize {
        self.a.iter().sum()
    }

    /// First color id of block `C_i^(j)` (both 0-based). Blocks are laid out
    /// contiguously, `i`-major.
    fn block_start(&self, i: usize, j: usize) -> usize {
        self.ka * self.a[..i].iter().sum::<usize>() + j * self.a[i]
    }

    fn block(&self, i: usize, j: usize) -> std::ops::Range<Color> {
        let s = self.block_start(i, j);
        s as Color..(s + self.a[i]) as Color
    }
}

/// Walks `[0, radix)^len` in lexicographic order.
fn for_each_tuple(len: usize, radix: &dyn Fn(usize) -> usize, mut visit: impl FnMut(&[usize])) {
    if (0..len).any(|p| radix(p) == 0) {
        return;
    }
    let mut t = vec![0usize; len];
    loop {
        visit(&t);
        let mut p = len;
        loop {
            if p == 0 {
                return;
            }
            p -= 1;
            t[p] += 1;
            if t[p] < radix(p) {
                break;
            }
            t[p] = 0;
        }
    }
}

pub fn construct_blocks(spec: &BlockSpec) -> ListInstance {
    let ka = spec.ka;
    let r = spec.a.len();

    let mut a_lists = Vec::new();
    for i in 0..r {
        for_each_tuple(ka, &|_| spec.a[i], |t| {
            a_lists.push(
                t.iter()
                    .enumerate()
                    .map(|(j, &off)| (spec.block_start(i, j) + off) as Color)
                    .collect(),
            );
        });
    }

    let mut b_lists = Vec::new();
    for_each_tuple(r, &|_| ka, |e| {
        b_lists.push(
            e.iter()
                .enumerate()
                .flat_map(|(i, &j)| spec.block(i, j))
                .collect::<Vec<Color>>(),
        );
    });

    ListInstance::complete(spec.universe(), ka, spec.kb(), a_lists, b_lists)
}

/// All blocks of size `a`, repeated `r` times.
pub fn construct_simple(ka: usize, a: usize, r: usize) -> Result<ListInstance, BlockError> {
    Ok(construct_blocks(&BlockSpec::new(ka, vec![a; r])?))
}
