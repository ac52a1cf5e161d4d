use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::linalg::{c, Mat, C64, I};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Pauli {
    I,
    X,
    Y,
    Z,
}

impl Pauli {
    pub const ALL: [Pauli; 4] = [Pauli::I, Pauli::X, Pauli::Y, Pauli::Z];

    pub fn matrix(self) -> Mat {
        let z = C64::new(0.0, 0.0);
        let one = c(1.0);
        let entries = match self {
            Pauli::I => [one, z, z, one],
            Pauli::X => [z, one, one, z],
            Pauli::Y => [z, -I, I, z],
            Pauli::Z => [one, z, z, -one],
        };
        Mat::from_row_slice(2, 2, &entries)
    }

    fn symbol(self) -> char {
        match self {
            Pauli::I => 'I',
            Pauli::X => 'X',
            Pauli::Y => 'Y',
            Pauli::Z => 'Z',
        }
    }

    fn from_symbol(ch: char) -> Option<Self> {
        match ch {
            'I' => Some(Pauli::I),
            'X' => Some(Pauli::X),
            'Y' => Some(Pauli::Y),
            'Z' => Some(Pauli::Z),
            _ => None,
        }
    }
}

/// Two-qubit Pauli `control (x) target`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PauliLabel(pub Pauli, pub Pauli);

/// All sixteen labels in lexicographic `I < X < Y < Z` order.
pub const PAULI_LABELS: [PauliLabel; 16] = {
    use Pauli::*;
    [
        PauliLabel(I, I),
        PauliLabel(I, X),
        PauliLabel(I, Y),
        PauliLabel(I, Z),
        PauliLabel(X, I),
        PauliLabel(X, X),
        PauliLabel(X, Y),
        PauliLabel(X, Z),
        PauliLabel(Y, I),
        PauliLabel(Y, X),
        PauliLabel(Y, Y),
        PauliLabel(Y, Z),
        PauliLabel(Z, I),
        PauliLabel(Z, X),
        PauliLabel(Z, Y),
        PauliLabel(Z, Z),
    ]
};

impl PauliLabel {
    pub fn matrix(self) -> Mat {
        self.0.matrix().kronecker(&self.1.matrix())
    }

    /// Position in [`PAULI_LABELS`].
    pub fn index(self) -> usize {
        (self.0 as usize) * 4 + self.1 as usize
    }
}

impl fmt::Display for PauliLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}{}", self.0.symbol(), self.1.symbol())
    }
}

impl FromStr for PauliLabel {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let mut chars = s.chars();
        match (chars.next().and_then(Pauli::from_symbol), chars.next().and_then(Pauli::from_symbol), chars.next()) {
            (Some(a), Some(b), None) => Ok(PauliLabel(a, b)),
            _ => Err(Error::InvalidParameter(format!("not a two-qubit Pauli label: {s:?}"))),
        }
    }
}

/// `tr(H (P1 (x) P2) / 2)` for a 4x4 computational-subspace Hamiltonian.
///
/// The scaled operators `P/2` are trace-orthonormal, so
/// `H = sum_P coeff_P * P/2`.
pub fn pauli_coefficient(h: &Mat, label: PauliLabel) -> Result<f64> {
    if h.nrows() != 4 || h.ncols() != 4 {
        return Err(Error::DimensionMismatch {
            expected: 4,
            got: h.nrows(),
        });
    }
    Ok((h * label.matrix()).trace().re * 0.5)
}

pub(crate) fn decompose(h: &Mat) -> Result<[f64; 16]> {
    let mut out = [0.0; 16];
    for label in PAULI_LABELS {
        out[label.index()] = pauli_coefficient(h, label)?;
    }
    Ok(out)
}

pub(crate) fn reconstruct(coefficients: &[f64; 16]) -> Mat {
    PAULI_LABELS
        .iter()
        .fold(Mat::zeros(4, 4), |acc, label| acc + label.matrix() * c(0.5 * coefficients[label.index()]))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::max_abs;

    #[test]
    fn zx_over_two_has_unit_coefficient() {
        let zx: PauliLabel = "ZX".parse().unwrap();
        let h = zx.matrix() * c(0.5);
        for label in PAULI_LABELS {
            let expected = if label == zx { 1.0 } else { 0.0 };
            assert_eq!(pauli_coefficient(&h, label).unwrap(), expected);
        }
    }

    #[test]
    fn identity_coefficient() {
        let alpha = 0.37;
        let h = Mat::identity(4, 4) * c(alpha / 2.0);
        assert!((pauli_coefficient(&h, "II".parse().unwrap()).unwrap() - alpha).abs() < 1e-15);
    }

    #[test]
    fn labels_are_lexicographic() {
        let names: Vec<String> = PAULI_LABELS.iter().map(|l| l.to_string()).collect();
        let mut sorted = names.clone();
        sorted.sort();
        assert_eq!(names, sorted);
        assert!(PAULI_LABELS.iter().enumerate().all(|(k, l)| l.index() == k));
    }

    #[test]
    fn rejects_wrong_dimension() {
        assert!(pauli_coefficient(&Mat::zeros(3, 3), "ZX".parse().unwrap()).is_err());
    }

    #[test]
    fn round_trip_of_hermitian_matrix() {
        let h = Mat::from_fn(4, 4, |r, col| {
            let a = (r * 4 + col) as f64;
            let b = (col * 4 + r) as f64;
            C64::new(a + b, if r < col { 0.3 * a } else if r > col { -0.3 * b } else { 0.0 })
        });
        let coeffs = decompose(&h).unwrap();
        assert!(max_abs(&(reconstruct(&coeffs) - h)) < 1e-12);
    }
}
