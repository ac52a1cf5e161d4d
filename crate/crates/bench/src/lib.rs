//! Fixtures shared by the criterion benchmarks.

use crham::frames::{dress, drive_frequency, rwa_hamiltonian};
use crham::operators::{ladder_permutation, quadratures, two_transmon_hamiltonian};
use crham::pipeline::cr_partition;
use crham::{BlockPartition, DeviceParams, DriveSpec, HermitianOp, Ordering};

/// Ladder-ordered rotating-frame Hamiltonian of the benchmark device and its
/// `{00,01}, {10,11}, {rest}` partition.
pub fn driven_benchmark(levels: usize, omega: f64) -> (HermitianOp, BlockPartition) {
    let params = DeviceParams::benchmark().with_levels(levels);
    let h = two_transmon_hamiltonian(&params).expect("valid device");
    let [x1, x2] = quadratures(levels).expect("levels >= 2");
    let dressed = dress(&h, [&x1, &x2], levels).expect("dressing");
    let h_rwa = rwa_hamiltonian(&dressed, &DriveSpec::control_x(omega), drive_frequency(&dressed).target)
        .expect("rotating frame");
    let order = ladder_permutation(levels).expect("levels >= 2");
    let ladder = HermitianOp::symmetrized(order.to_ladder(h_rwa.matrix()), Ordering::Ladder);
    (ladder, cr_partition(&order, false).expect("partition"))
}
