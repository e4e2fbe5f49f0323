//! Frequency-indexed scattering matrices of an n-port.

use thiserror::Error;

use crate::matrix::ComplexMatrix;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum ScatteringError {
    #[error("port count must be positive")]
    NoPorts,
    #[error("reference impedance must be positive and finite, got {0}")]
    BadImpedance(f64),
    #[error("frequency at point {index} must be positive and finite, got {value}")]
    BadFrequency { index: usize, value: f64 },
    #[error(
        "frequencies must be strictly increasing (point {index}: {value} Hz after {previous} Hz)"
    )]
    NonMonotonic {
        index: usize,
        previous: f64,
        value: f64,
    },
    #[error("matrix at point {index} is {rows}x{cols}, expected {n}x{n}")]
    WrongShape {
        index: usize,
        rows: usize,
        cols: usize,
        n: usize,
    },
}

#[derive(Debug, Clone, PartialEq)]
pub struct FrequencyPoint {
    /// Hz.
    pub frequency: f64,
    pub s_matrix: ComplexMatrix,
}

/// S-parameters of an `n_ports`-port over strictly increasing frequencies.
#[derive(Debug, Clone, PartialEq)]
pub struct ScatteringData {
    n_ports: usize,
    reference_impedance: f64,
    points: Vec<FrequencyPoint>,
}

impl ScatteringData {
    pub fn new(
        n_ports: usize,
        reference_impedance: f64,
        points: Vec<FrequencyPoint>,
    ) -> Result<Self, ScatteringError> {
        if n_ports == 0 {
            return Err(ScatteringError::NoPorts);
        }
        if !(reference_impedance.is_finite() && reference_impedance > 0.0) {
            return Err(ScatteringError::BadImpedance(reference_impedance));
        }
        for (index, p) in points.iter().enumerate() {
            if !(p.frequency.is_finite() && p.frequency > 0.0) {
                return Err(ScatteringError::BadFrequency {
                    index,
                    value: p.frequency,
                });
            }
            if index > 0 && p.frequency <= points[index - 1].frequency {
                return Err(ScatteringError::NonMonotonic {
                    index,
                    previous: points[index - 1].frequency,
                    value: p.frequency,
                });
            }
            if p.s_matrix.n_rows() != n_ports || p.s_matrix.n_cols() != n_ports {
                return Err(ScatteringError::WrongShape {
                    index,
                    rows: p.s_matrix.n_rows(),
                    cols: p.s_matrix.n_cols(),
                    n: n_ports,
                });
            }
        }
        Ok(Self {
            n_ports,
            reference_impedance,
            points,
        })
    }

    pub fn n_ports(&self) -> usize {
        self.n_ports
    }

    /// Ohms.
    pub fn reference_impedance(&self) -> f64 {
        self.reference_impedance
    }

    pub fn points(&self) -> &[FrequencyPoint] {
        &self.points
    }

    pub fn frequencies(&self) -> impl Iterator<Item = f64> + '_ {
        self.points.iter().map(|p| p.frequency)
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    /// Keeps only the points with `lo <= f <= hi`.
    pub fn restrict(&self, lo: f64, hi: f64) -> Self {
        Self {
            n_ports: self.n_ports,
            reference_impedance: self.reference_impedance,
            points: self
                .points
                .iter()
                .filter(|p| p.frequency >= lo && p.frequency <= hi)
                .cloned()
                .collect(),
        }
    }
}
