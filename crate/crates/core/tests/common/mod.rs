#![allow(dead_code)]

use crham::linalg::{c, expi_hermitian, Mat, C64};
use crham::{BlockPartition, HermitianOp, Ordering};
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn random_hermitian<R: Rng>(rng: &mut R, n: usize, scale: f64) -> Mat {
    let a = Mat::from_fn(n, n, |_, _| C64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)));
    (&a + a.adjoint()) * c(0.5 * scale)
}

pub fn random_real_symmetric<R: Rng>(rng: &mut R, n: usize, scale: f64) -> Mat {
    let a = Mat::from_fn(n, n, |_, _| c(rng.gen_range(-1.0..1.0)));
    (&a + a.transpose()) * c(0.5 * scale)
}

pub fn random_unitary<R: Rng>(rng: &mut R, n: usize) -> Mat {
    expi_hermitian(&random_hermitian(rng, n, 2.0), 1.0).unwrap()
}

/// Random contiguous partition of `n` into `blocks` non-empty blocks.
pub fn random_contiguous<R: Rng>(rng: &mut R, n: usize, blocks: usize) -> BlockPartition {
    let mut cuts: Vec<usize> = (1..n).collect();
    for i in (1..cuts.len()).rev() {
        cuts.swap(i, rng.gen_range(0..=i));
    }
    let mut cuts: Vec<usize> = cuts.into_iter().take(blocks - 1).collect();
    cuts.sort_unstable();
    let mut sizes = Vec::new();
    let mut last = 0;
    for cut in cuts.into_iter().chain(std::iter::once(n)) {
        sizes.push(cut - last);
        last = cut;
    }
    BlockPartition::contiguous(&sizes).unwrap()
}

/// Random partition of `n` indices into `blocks` non-empty, possibly
/// interleaved blocks.
pub fn random_partition<R: Rng>(rng: &mut R, n: usize, blocks: usize) -> BlockPartition {
    let mut owner: Vec<usize> = (0..n).map(|i| if i < blocks { i } else { rng.gen_range(0..blocks) }).collect();
    for i in (1..n).rev() {
        owner.swap(i, rng.gen_range(0..=i));
    }
    let sets = (0..blocks).map(|b| (0..n).filter(|&i| owner[i] == b).collect()).collect();
    BlockPartition::new(sets, n).unwrap()
}

/// Block-diagonal Hermitian matrix whose blocks sit `spacing` apart in energy.
pub fn separated_block_diagonal<R: Rng>(rng: &mut R, partition: &BlockPartition, spacing: f64, width: f64) -> Mat {
    let n = partition.dim();
    let mut h = Mat::zeros(n, n);
    for (a, block) in partition.blocks().iter().enumerate() {
        let sub = random_hermitian(rng, block.len(), width);
        for (r, &i) in block.iter().enumerate() {
            for (s, &j) in block.iter().enumerate() {
                h[(i, j)] = sub[(r, s)];
            }
            h[(i, i)] += c(spacing * a as f64);
        }
    }
    h
}

pub fn op(m: Mat) -> HermitianOp {
    HermitianOp::new(m, Ordering::Kron).unwrap()
}

pub fn sorted_eigenvalues(m: &Mat) -> Vec<f64> {
    let (mut v, _) = crham::linalg::eigh(m).unwrap();
    v.sort_by(f64::total_cmp);
    v
}

/// `lambda^k` coefficients (`k = 0..=degree`) of `e^{iS} A e^{-iS}` with
/// `S = sum_j lambda^j S_j`, from `nested` terms of the commutator series.
pub fn direct_expansion(generators: &[Mat], a: &Mat, degree: usize, nested: usize) -> Vec<Mat> {
    let n = a.nrows();
    let zero = Mat::zeros(n, n);
    let mut term: Vec<Mat> = (0..=degree).map(|k| if k == 0 { a.clone() } else { zero.clone() }).collect();
    let mut total = term.clone();
    for b in 1..=nested {
        let mut next = vec![zero.clone(); degree + 1];
        for (j, s) in generators.iter().enumerate() {
            let shift = j + 1;
            for k in 0..=degree.saturating_sub(shift) {
                next[k + shift] += s * &term[k] - &term[k] * s;
            }
        }
        let factor = C64::new(0.0, 1.0 / b as f64);
        for (acc, t) in total.iter_mut().zip(next.iter_mut()) {
            *t *= factor;
            *acc += &*t;
        }
        term = next;
    }
    total
}
