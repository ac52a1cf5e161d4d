use crate::linalg::{c, Mat};

/// Permutation between Kronecker order (`i1 * d + i2`) and ladder order.
///
/// Ladder order lists the computational states `00, 01, 10, 11` first and
/// then every remaining state by total excitation `i1 + i2`, ties broken by
/// ascending `i1` (`02, 20, 12, 21, 03, 30, ...`).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LadderOrder {
    levels: usize,
    /// Ladder position -> `(i1, i2)`.
    states: Vec<(usize, usize)>,
    /// Kronecker index -> ladder position.
    position: Vec<usize>,
}

pub fn ladder_permutation(levels: usize) -> crate::Result<LadderOrder> {
    LadderOrder::new(levels)
}

impl LadderOrder {
    pub fn new(levels: usize) -> crate::Result<Self> {
        if levels < 2 {
            return Err(crate::Error::InvalidDimension {
                what: "transmon levels",
                dim: levels,
            });
        }
        let computational = [(0, 0), (0, 1), (1, 0), (1, 1)];
        let mut rest: Vec<(usize, usize)> = (0..levels)
            .flat_map(|i1| (0..levels).map(move |i2| (i1, i2)))
            .filter(|s| !computational.contains(s))
            .collect();
        rest.sort_by_key(|&(i1, i2)| (i1 + i2, i1));
        let states: Vec<_> = computational.iter().copied().chain(rest).collect();
        let mut position = vec![0; levels * levels];
        for (p, &(i1, i2)) in states.iter().enumerate() {
            position[i1 * levels + i2] = p;
        }
        Ok(Self {
            levels,
            states,
            position,
        })
    }

    pub fn levels(&self) -> usize {
        self.levels
    }

    pub fn dim(&self) -> usize {
        self.states.len()
    }

    pub fn states(&self) -> &[(usize, usize)] {
        &self.states
    }

    pub fn state(&self, position: usize) -> (usize, usize) {
        self.states[position]
    }

    pub fn position(&self, i1: usize, i2: usize) -> usize {
        self.position[i1 * self.levels + i2]
    }

    pub fn kron_index(&self, position: usize) -> usize {
        let (i1, i2) = self.states[position];
        i1 * self.levels + i2
    }

    /// Permutation matrix `F` with `F A_kron F^dagger = A_ladder`.
    pub fn matrix(&self) -> Mat {
        let n = self.dim();
        let mut f = Mat::zeros(n, n);
        for p in 0..n {
            f[(p, self.kron_index(p))] = c(1.0);
        }
        f
    }

    pub fn to_ladder(&self, kron: &Mat) -> Mat {
        Mat::from_fn(self.dim(), self.dim(), |r, col| kron[(self.kron_index(r), self.kron_index(col))])
    }

    pub fn to_kron(&self, ladder: &Mat) -> Mat {
        Mat::from_fn(self.dim(), self.dim(), |r, col| ladder[(self.position[r], self.position[col])])
    }
}
