use crham::pipeline::{effective_cr, Method};
use crham::{DeviceParams, DriveSpec};

/// One extra transmon level moves no coefficient by 1 kHz or more at the
/// benchmark point.
#[test]
fn five_levels_are_converged() {
    for omega in [0.02, 0.05] {
        let t5 = effective_cr(&DeviceParams::benchmark(), &DriveSpec::control_x(omega), Method::Exact).unwrap();
        let t6 = effective_cr(&DeviceParams::benchmark().with_levels(6), &DriveSpec::control_x(omega), Method::Exact)
            .unwrap();
        for (k, (a, b)) in t5.coefficients.iter().zip(&t6.coefficients).enumerate() {
            let khz = (a - b).abs() * 1e6;
            assert!(khz < 1.0, "omega {omega}: coefficient {k} shifts by {khz:.4} kHz");
        }
    }
}
