//! Closed-form cross-resonance rates used as references.

use crate::error::{Error, Result};
use crate::linalg::{c, Mat};

use super::{MethodTag, PauliTable};

/// Rotating-frame Hamiltonian of two ideal qubits, basis `00, 01, 10, 11`,
/// frame of the target.
pub fn qubit_rotating_hamiltonian(j: f64, delta: f64, omega: f64) -> Mat {
    let h = omega / 2.0;
    Mat::from_row_slice(
        4,
        4,
        &[
            c(0.0), c(0.0), c(h), c(0.0),
            c(0.0), c(0.0), c(j), c(h),
            c(h), c(j), c(delta), c(0.0),
            c(0.0), c(h), c(0.0), c(delta),
        ],
    )
}

/// Qubit-model rates: `ZI = D - sqrt(D^2 + W^2)`, `ZX = -J W / sqrt(D^2 + W^2)`.
pub fn qubit_analytic(j: f64, delta: f64, omega: f64) -> PauliTable {
    let mut t = PauliTable::zeros(MethodTag::AnalyticQubit, omega, delta);
    let r = delta.hypot(omega);
    t.set("ZI", delta - r);
    t.set("ZX", if r > 0.0 { -j * omega / r } else { 0.0 });
    t
}

fn guard(value: f64, resonance: &str) -> Result<f64> {
    if value.abs() < 1e-12 {
        Err(Error::Pole {
            resonance: resonance.to_string(),
            value,
        })
    } else {
        Ok(value)
    }
}

/// Transmon rates to third order in `(J, W)`; `II` and the non-listed terms
/// are left at zero.
pub fn third_order_coefficients(j: f64, delta: f64, delta1: f64, delta2: f64, omega: f64) -> Result<PauliTable> {
    let (d1, d2, dd, w) = (delta1, delta2, delta, omega);
    guard(dd, "D = 0 (qubits resonant)")?;
    guard(d1, "delta1 = 0 (harmonic control)")?;
    guard(d2, "delta2 = 0 (harmonic target)")?;
    guard(d1 + dd, "D = -delta1 (control 01 resonant with target 12)")?;
    guard(2.0 * dd + d1, "D = -delta1/2 (two-photon control 02 transition)")?;
    guard(2.0 * dd + 3.0 * d1, "D = -3 delta1/2 (two-photon process)")?;
    guard(dd - d2, "D = delta2 (control 12 resonant with target 01)")?;
    guard(d1 + dd - d2, "D = delta2 - delta1 (second-excitation resonance)")?;
    guard(2.0 * d1 + dd, "D = -2 delta1 (control 02 resonant with target 01 + 12)")?;

    let (j2, w2, w3) = (j * j, w * w, w * w * w);
    let s = d1 + dd;
    let r = d1 + dd - d2;

    let ix = -j * w / s + dd * d1 * j * w3 / (s.powi(3) * (2.0 * dd + d1) * (2.0 * dd + 3.0 * d1));

    let iz = 0.5
        * j2
        * w2
        * ((d1.powi(3) - 2.0 * d1 * dd * dd - 2.0 * dd.powi(3)) / (d1 * dd * dd * s * s * (dd - d2))
            + (d1 * d1 + dd * dd) / (dd * dd * d2 * s * s)
            + (6.0 * d1.powi(5) + 4.0 * d1.powi(4) * dd - 6.0 * d1.powi(3) * dd * dd
                + 7.0 * d1 * d1 * dd.powi(3)
                + 12.0 * d1 * dd.powi(4)
                + 4.0 * dd.powi(5))
                / (dd * dd * s * s * (2.0 * d1 + dd).powi(2) * (d1 + 2.0 * dd) * (3.0 * d1 + 2.0 * dd))
            + 2.0 / (d1 * s * r)
            + 2.0 / (s * r * r)
            + 1.0 / (dd * (dd - d2).powi(2)));

    let zi = -d1 * w2 / (2.0 * dd * s)
        + j2 * w2 / (2.0 * s.powi(3))
            * (2.0 * (d1 * d1 + d1 * dd + dd * dd) * s / (d1 * dd * (d2 - dd))
                + 0.5
                    * d1
                    * (4.0 * d1 * d1 / dd.powi(3) + 11.0 * d1 / (dd * dd) + 3.0 * d1 / (2.0 * d1 + dd).powi(2)
                        - 2.0 / (d1 + 2.0 * dd)
                        - 6.0 / (3.0 * d1 + 2.0 * dd)
                        + 12.0 / dd)
                + 2.0 * s * s / (d1 * r)
                + 2.0 * s * s / (r * r)
                - 2.0 * d1 * s / (dd * d2));

    let zx = -(j * w / dd) * (d1 / s)
        + j * w3 * d1 * d1 * (3.0 * d1.powi(3) + 11.0 * d1 * d1 * dd + 15.0 * d1 * dd * dd + 9.0 * dd.powi(3))
            / (2.0 * dd.powi(3) * s.powi(3) * (d1 + 2.0 * dd) * (3.0 * d1 + 2.0 * dd));

    let zz = j2 / (2.0 * s * s)
        * (w2
            * ((d1.powi(3) - 2.0 * d1 * dd * dd - 2.0 * dd.powi(3)) / (d1 * dd * dd * (d2 - dd))
                + 0.5
                    * (4.0 * (3.0 * d1 + dd) * (d1 * d1 + d1 * dd + dd * dd) / (dd * dd * (2.0 * d1 + dd).powi(2))
                        - 16.0 * dd / (3.0 * d1 * d1 + 8.0 * d1 * dd + 4.0 * dd * dd))
                + 2.0 * d1 / (dd * d2)
                - 2.0 * s / (r * r)
                - 2.0 * s / (d1 * r))
            + 2.0 * s * (d1 + d2) / (dd - d2));

    let mut t = PauliTable::zeros(MethodTag::AnalyticThirdOrder, omega, delta);
    t.set("IX", ix);
    t.set("IZ", iz);
    t.set("ZI", zi);
    t.set("ZX", zx);
    t.set("ZZ", zz);
    Ok(t)
}
