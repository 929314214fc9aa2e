use alloc::vec::Vec;

use super::{Cell, Sign};

/// Face order of an arrangement: `D ≤ C` iff `D ⊆ closure(C)`, which for
/// sign vectors means every sign of `D` is `0` or equal to the sign of `C`.
#[derive(Clone, Debug)]
pub struct FacePoset {
    /// `up[d]` lists, in increasing order, every `c` with `d ≤ c`.
    up: Vec<Vec<usize>>,
}

struct Bits {
    pos: Vec<u64>,
    neg: Vec<u64>,
}

fn pack(signs: &[Sign]) -> Bits {
    let words = signs.len().div_ceil(64).max(1);
    let mut pos = alloc::vec![0u64; words];
    let mut neg = alloc::vec![0u64; words];
    for (i, s) in signs.iter().enumerate() {
        match s {
            Sign::Pos => pos[i / 64] |= 1 << (i % 64),
            Sign::Neg => neg[i / 64] |= 1 << (i % 64),
            Sign::Zero => {}
        }
    }
    Bits { pos, neg }
}

impl FacePoset {
    pub fn new(cells: &[Cell]) -> Self {
        let bits: Vec<Bits> = cells.iter().map(|c| pack(&c.signs)).collect();
        let up = bits
            .iter()
            .map(|d| {
                bits.iter()
                    .enumerate()
                    .filter(|(_, c)| {
                        d.pos.iter().zip(&c.pos).all(|(a, b)| a & !b == 0)
                            && d.neg.iter().zip(&c.neg).all(|(a, b)| a & !b == 0)
                    })
                    .map(|(j, _)| j)
                    .collect()
            })
            .collect();
        FacePoset { up }
    }

    pub fn leq(&self, d: usize, c: usize) -> bool {
        self.up[d].binary_search(&c).is_ok()
    }

    /// All cells whose closure contains cell `d` (including `d`).
    pub fn up_set(&self, d: usize) -> &[usize] {
        &self.up[d]
    }

    /// All cells contained in the closure of cell `c` (including `c`).
    pub fn down_set(&self, c: usize) -> Vec<usize> {
        (0..self.up.len()).filter(|&d| self.leq(d, c)).collect()
    }

    pub fn len(&self) -> usize {
        self.up.len()
    }

    pub fn is_empty(&self) -> bool {
        self.up.is_empty()
    }
}
