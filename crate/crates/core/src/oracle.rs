//! Small dense complex linear algebra for checking the hidden-variable models
//! against ordinary quantum mechanics (dimensions up to 8).
//!
//! Basis convention: `|0⟩ = (1, 0)`, and in a tensor product the first factor
//! is the most significant index, so party 1 owns the high bit of a
//! three-qubit index.

use std::ops::{Add, Mul, Sub};

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::qubit::{Axis, BlochVector};
use crate::quaternion::require_unit;

/// Largest supported row or column count.
pub const MAX_DIM: usize = 8;

/// Default closeness tolerance for hermiticity, unitarity and eigenrelations.
pub const ORACLE_TOL: f64 = 1e-12;

/// Stopping residual for power iteration.
pub const POWER_RESIDUAL: f64 = 1e-10;

/// Iteration cap for power iteration.
pub const POWER_MAX_ITERS: usize = 10_000;

const ZERO: Complex64 = Complex64::new(0.0, 0.0);
const ONE: Complex64 = Complex64::new(1.0, 0.0);
const I: Complex64 = Complex64::new(0.0, 1.0);

#[derive(Debug, Clone, PartialEq)]
pub struct ComplexMatrix {
    rows: usize,
    cols: usize,
    data: Vec<Complex64>,
}

impl ComplexMatrix {
    /// Row-major entries.
    pub fn new(rows: usize, cols: usize, data: Vec<Complex64>) -> Result<ComplexMatrix> {
        if rows == 0 || cols == 0 || rows > MAX_DIM || cols > MAX_DIM {
            return Err(Error::DimensionMismatch(format!("{rows}x{cols} outside 1..={MAX_DIM}")));
        }
        if data.len() != rows * cols {
            return Err(Error::DimensionMismatch(format!(
                "{} entries for a {rows}x{cols} matrix",
                data.len()
            )));
        }
        Ok(ComplexMatrix { rows, cols, data })
    }

    pub fn zeros(rows: usize, cols: usize) -> Result<ComplexMatrix> {
        ComplexMatrix::new(rows, cols, vec![ZERO; rows * cols])
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> Complex64 {
        self.data[r * self.cols + c]
    }

    fn set(&mut self, r: usize, c: usize, v: Complex64) {
        self.data[r * self.cols + c] = v;
    }

    pub fn adjoint(&self) -> ComplexMatrix {
        let mut out = ComplexMatrix {
            rows: self.cols,
            cols: self.rows,
            data: vec![ZERO; self.data.len()],
        };
        for r in 0..self.rows {
            for c in 0..self.cols {
                out.set(c, r, self.get(r, c).conj());
            }
        }
        out
    }

    pub fn scale(&self, k: Complex64) -> ComplexMatrix {
        ComplexMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|&z| z * k).collect(),
        }
    }

    pub fn matmul(&self, other: &ComplexMatrix) -> Result<ComplexMatrix> {
        if self.cols != other.rows {
            return Err(Error::DimensionMismatch(format!(
                "{}x{} times {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let mut out = ComplexMatrix::zeros(self.rows, other.cols)?;
        for r in 0..self.rows {
            for c in 0..other.cols {
                let v = (0..self.cols).map(|k| self.get(r, k) * other.get(k, c)).sum();
                out.set(r, c, v);
            }
        }
        Ok(out)
    }

    fn zip_with(&self, other: &ComplexMatrix, f: impl Fn(Complex64, Complex64) -> Complex64) -> Result<ComplexMatrix> {
        if (self.rows, self.cols) != (other.rows, other.cols) {
            return Err(Error::DimensionMismatch(format!(
                "{}x{} vs {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        Ok(ComplexMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&other.data).map(|(&a, &b)| f(a, b)).collect(),
        })
    }

    pub fn trace(&self) -> Complex64 {
        (0..self.rows.min(self.cols)).map(|k| self.get(k, k)).sum()
    }

    /// Largest entrywise modulus of `self − other`.
    pub fn max_abs_diff(&self, other: &ComplexMatrix) -> Result<f64> {
        Ok(self
            .zip_with(other, |a, b| a - b)?
            .data
            .iter()
            .map(|z| z.norm())
            .fold(0.0, f64::max))
    }

    pub fn approx_eq(&self, other: &ComplexMatrix, tol: f64) -> bool {
        self.max_abs_diff(other).is_ok_and(|d| d <= tol)
    }

    pub fn is_hermitian(&self, tol: f64) -> bool {
        self.approx_eq(&self.adjoint(), tol)
    }

    pub fn is_unitary(&self, tol: f64) -> bool {
        self.rows == self.cols
            && self
                .adjoint()
                .matmul(self)
                .is_ok_and(|p| p.approx_eq(&identity(self.rows).expect("square"), tol))
    }
}

impl Add for &ComplexMatrix {
    type Output = Result<ComplexMatrix>;

    fn add(self, rhs: &ComplexMatrix) -> Result<ComplexMatrix> {
        self.zip_with(rhs, |a, b| a + b)
    }
}

impl Sub for &ComplexMatrix {
    type Output = Result<ComplexMatrix>;

    fn sub(self, rhs: &ComplexMatrix) -> Result<ComplexMatrix> {
        self.zip_with(rhs, |a, b| a - b)
    }
}

impl Mul for &ComplexMatrix {
    type Output = Result<ComplexMatrix>;

    fn mul(self, rhs: &ComplexMatrix) -> Result<ComplexMatrix> {
        self.matmul(rhs)
    }
}

/// A unit-norm state vector.
#[derive(Debug, Clone, PartialEq)]
pub struct StateVector {
    amplitudes: Vec<Complex64>,
}

impl StateVector {
    pub fn new(amplitudes: Vec<Complex64>) -> Result<StateVector> {
        if amplitudes.is_empty() || amplitudes.len() > MAX_DIM {
            return Err(Error::DimensionMismatch(format!("state of dimension {}", amplitudes.len())));
        }
        let norm = norm(&amplitudes);
        if (norm - 1.0).abs() > ORACLE_TOL {
            return Err(Error::DimensionMismatch(format!("state norm {norm} is not 1")));
        }
        Ok(StateVector { amplitudes })
    }

    pub fn dim(&self) -> usize {
        self.amplitudes.len()
    }

    pub fn amplitudes(&self) -> &[Complex64] {
        &self.amplitudes
    }

    pub fn norm(&self) -> f64 {
        norm(&self.amplitudes)
    }
}

fn norm(v: &[Complex64]) -> f64 {
    v.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
}

pub fn identity(dim: usize) -> Result<ComplexMatrix> {
    let mut m = ComplexMatrix::zeros(dim, dim)?;
    for k in 0..dim {
        m.set(k, k, ONE);
    }
    Ok(m)
}

pub fn pauli(axis: Axis) -> ComplexMatrix {
    let data = match axis {
        Axis::X => vec![ZERO, ONE, ONE, ZERO],
        Axis::Y => vec![ZERO, -I, I, ZERO],
        Axis::Z => vec![ONE, ZERO, ZERO, -ONE],
    };
    ComplexMatrix { rows: 2, cols: 2, data }
}

/// `n·σ` for a real 3-vector `n`.
pub fn spin(n: [f64; 3]) -> ComplexMatrix {
    let mut m = ComplexMatrix::zeros(2, 2).expect("2x2");
    for axis in Axis::ALL {
        let p = pauli(axis).scale(Complex64::from(n[axis.index()]));
        m = (&m + &p).expect("2x2");
    }
    m
}

/// Kronecker product `a ⊗ b`.
pub fn tensor(a: &ComplexMatrix, b: &ComplexMatrix) -> Result<ComplexMatrix> {
    let (rows, cols) = (a.rows * b.rows, a.cols * b.cols);
    let mut out = ComplexMatrix::zeros(rows, cols)?;
    for ar in 0..a.rows {
        for ac in 0..a.cols {
            let x = a.get(ar, ac);
            for br in 0..b.rows {
                for bc in 0..b.cols {
                    out.set(ar * b.rows + br, ac * b.cols + bc, x * b.get(br, bc));
                }
            }
        }
    }
    Ok(out)
}

/// `σ_{a₁} ⊗ σ_{a₂} ⊗ σ_{a₃}`.
pub fn pauli_string(axes: [Axis; 3]) -> ComplexMatrix {
    let [a, b, c] = axes.map(pauli);
    tensor(&tensor(&a, &b).expect("4x4"), &c).expect("8x8")
}

fn mat_vec(m: &ComplexMatrix, v: &[Complex64]) -> Result<Vec<Complex64>> {
    if m.cols != v.len() {
        return Err(Error::DimensionMismatch(format!(
            "{}x{} matrix applied to a {}-vector",
            m.rows,
            m.cols,
            v.len()
        )));
    }
    Ok((0..m.rows).map(|r| (0..m.cols).map(|c| m.get(r, c) * v[c]).sum()).collect())
}

/// `m·v`, renormalized. Errors if `m` is not square of the right size or
/// annihilates `v`.
pub fn apply(m: &ComplexMatrix, v: &StateVector) -> Result<StateVector> {
    if m.rows != m.cols {
        return Err(Error::DimensionMismatch(format!("{}x{} is not square", m.rows, m.cols)));
    }
    let w = mat_vec(m, &v.amplitudes)?;
    let n = norm(&w);
    if n == 0.0 {
        return Err(Error::DimensionMismatch("result is the zero vector".into()));
    }
    StateVector::new(w.into_iter().map(|z| z / n).collect())
}

/// `(|000⟩ − |111⟩)/√2`.
pub fn ghz_state() -> StateVector {
    let a = Complex64::new(std::f64::consts::FRAC_1_SQRT_2, 0.0);
    let mut amps = vec![ZERO; 8];
    amps[0] = a;
    amps[7] = -a;
    StateVector { amplitudes: amps }
}

/// The three GHZ stabilizers `σₓσᵧσᵧ`, `σᵧσₓσᵧ`, `σᵧσᵧσₓ`.
pub fn ghz_operators() -> [ComplexMatrix; 3] {
    use Axis::*;
    [pauli_string([X, Y, Y]), pauli_string([Y, X, Y]), pauli_string([Y, Y, X])]
}

/// Whether `‖op·v − expected·v‖ ≤ 1e-12`.
pub fn verify_eigenrelation(op: &ComplexMatrix, v: &StateVector, expected: f64) -> Result<bool> {
    Ok(eigen_residual(op, v, expected)? <= ORACLE_TOL)
}

/// `‖op·v − expected·v‖`.
pub fn eigen_residual(op: &ComplexMatrix, v: &StateVector, expected: f64) -> Result<f64> {
    let w = mat_vec(op, &v.amplitudes)?;
    let diff: Vec<Complex64> = w.iter().zip(&v.amplitudes).map(|(a, b)| a - b * expected).collect();
    Ok(norm(&diff))
}

/// `ρ = (I + r·σ)/2`.
pub fn density_matrix(r: &BlochVector) -> ComplexMatrix {
    (&identity(2).expect("2x2") + &spin(r.components()))
        .expect("2x2")
        .scale(Complex64::from(0.5))
}

/// `Tr(ρ (n·σ))`.
pub fn qubit_expectation(r: &BlochVector, n: [f64; 3]) -> Result<f64> {
    require_unit(n)?;
    Ok(density_matrix(r).matmul(&spin(n))?.trace().re)
}

/// Convenience for axis directions.
pub fn axis_expectation(r: &BlochVector, axis: Axis) -> f64 {
    qubit_expectation(r, axis.unit_vector()).expect("axis is a unit vector")
}

/// Result of a power iteration.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PowerIteration {
    pub eigenvalue: f64,
    pub residual: f64,
    pub iterations: usize,
}

/// Dominant eigenvalue of a hermitian positive semidefinite matrix by power
/// iteration from a fixed start vector.
pub fn power_iteration(m: &ComplexMatrix) -> Result<PowerIteration> {
    if m.rows != m.cols {
        return Err(Error::DimensionMismatch(format!("{}x{} is not square", m.rows, m.cols)));
    }
    // fixed, generic start vector
    let mut v: Vec<Complex64> = (0..m.rows)
        .map(|k| Complex64::new(1.0 + 0.37 * k as f64, 0.21 * (k * k) as f64 - 0.5))
        .collect();
    let n0 = norm(&v);
    v.iter_mut().for_each(|z| *z /= n0);

    let mut result = PowerIteration {
        eigenvalue: 0.0,
        residual: f64::INFINITY,
        iterations: 0,
    };
    for it in 1..=POWER_MAX_ITERS {
        let w = mat_vec(m, &v)?;
        let mu: f64 = v.iter().zip(&w).map(|(a, b)| (a.conj() * b).re).sum();
        let residual = norm(&w.iter().zip(&v).map(|(a, b)| a - b * mu).collect::<Vec<_>>());
        result = PowerIteration {
            eigenvalue: mu,
            residual,
            iterations: it,
        };
        let n = norm(&w);
        if residual <= POWER_RESIDUAL || n == 0.0 {
            break;
        }
        v = w.into_iter().map(|z| z / n).collect();
    }
    Ok(result)
}

/// The CHSH operator `A⊗(B + B′) + A′⊗(B − B′)` for spin directions
/// `a, a′, b, b′`.
pub fn chsh_operator(a: [f64; 3], a_prime: [f64; 3], b: [f64; 3], b_prime: [f64; 3]) -> Result<ComplexMatrix> {
    for v in [a, a_prime, b, b_prime] {
        require_unit(v)?;
    }
    let (sb, sbp) = (spin(b), spin(b_prime));
    let left = tensor(&spin(a), &(&sb + &sbp)?)?;
    let right = tensor(&spin(a_prime), &(&sb - &sbp)?)?;
    &left + &right
}

/// Largest eigenvalue magnitude of the CHSH operator, as the square root of
/// the dominant eigenvalue of `B†B`.
pub fn chsh_quantum_value(a: [f64; 3], a_prime: [f64; 3], b: [f64; 3], b_prime: [f64; 3]) -> Result<f64> {
    let op = chsh_operator(a, a_prime, b, b_prime)?;
    let gram = op.adjoint().matmul(&op)?;
    Ok(power_iteration(&gram)?.eigenvalue.max(0.0).sqrt())
}
