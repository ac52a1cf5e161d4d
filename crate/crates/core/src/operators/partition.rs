use crate::error::{Error, Result};
use crate::linalg::{Mat, C64};

/// Ordered list of disjoint index sets covering `0..dim`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BlockPartition {
    blocks: Vec<Vec<usize>>,
    dim: usize,
    /// Index -> owning block.
    owner: Vec<usize>,
}

impl BlockPartition {
    pub fn new(blocks: Vec<Vec<usize>>, dim: usize) -> Result<Self> {
        let mut owner = vec![usize::MAX; dim];
        for (a, block) in blocks.iter().enumerate() {
            if block.is_empty() {
                return Err(Error::InvalidPartition(format!("block {a} is empty")));
            }
            for &k in block {
                if k >= dim {
                    return Err(Error::InvalidPartition(format!("index {k} out of range for dim {dim}")));
                }
                if owner[k] != usize::MAX {
                    return Err(Error::InvalidPartition(format!("index {k} appears in more than one block")));
                }
                owner[k] = a;
            }
        }
        if let Some(k) = owner.iter().position(|&a| a == usize::MAX) {
            return Err(Error::InvalidPartition(format!("index {k} is not covered")));
        }
        let blocks = blocks
            .into_iter()
            .map(|mut b| {
                b.sort_unstable();
                b
            })
            .collect();
        Ok(Self { blocks, dim, owner })
    }

    /// Contiguous blocks of the given sizes.
    pub fn contiguous(sizes: &[usize]) -> Result<Self> {
        let mut start = 0;
        let blocks = sizes
            .iter()
            .map(|&s| {
                let b: Vec<usize> = (start..start + s).collect();
                start += s;
                b
            })
            .collect();
        Self::new(blocks, start)
    }

    /// One block per index (full diagonalization).
    pub fn singletons(dim: usize) -> Self {
        Self::new((0..dim).map(|k| vec![k]).collect(), dim).expect("singletons always form a partition")
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn len(&self) -> usize {
        self.blocks.len()
    }

    pub fn is_empty(&self) -> bool {
        self.blocks.is_empty()
    }

    pub fn blocks(&self) -> &[Vec<usize>] {
        &self.blocks
    }

    pub fn block(&self, a: usize) -> &[usize] {
        &self.blocks[a]
    }

    pub fn owner(&self, index: usize) -> usize {
        self.owner[index]
    }

    pub fn same_block(&self, r: usize, col: usize) -> bool {
        self.owner[r] == self.owner[col]
    }

    pub fn block_diagonal_part(&self, m: &Mat) -> Mat {
        Mat::from_fn(self.dim, self.dim, |r, col| {
            if self.same_block(r, col) {
                m[(r, col)]
            } else {
                C64::new(0.0, 0.0)
            }
        })
    }

    pub fn off_block_part(&self, m: &Mat) -> Mat {
        Mat::from_fn(self.dim, self.dim, |r, col| {
            if self.same_block(r, col) {
                C64::new(0.0, 0.0)
            } else {
                m[(r, col)]
            }
        })
    }

    /// Largest off-block entry magnitude.
    pub fn max_off_block(&self, m: &Mat) -> f64 {
        let mut worst: f64 = 0.0;
        for r in 0..self.dim {
            for col in 0..self.dim {
                if !self.same_block(r, col) {
                    worst = worst.max(m[(r, col)].norm());
                }
            }
        }
        worst
    }

    /// Exactly zero off-block entries.
    pub fn is_block_diagonal(&self, m: &Mat) -> bool {
        self.max_off_block(m) == 0.0
    }
}
