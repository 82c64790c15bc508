//! Dense matrices over [`Scalar`] indexed by qubit bitstrings.
//!
//! Basis order reads bitstrings most-significant-wire-first, so wire 0 is the
//! leftmost tensor factor.

use std::fmt::Write as _;

use nalgebra::DMatrix;
use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::scalar::Scalar;

/// Default eigenvalue tolerance for positivity tests.
pub const DEFAULT_TOLERANCE: f64 = 1e-9;

/// Tolerance used by numeric PSD tests, overridable through `ZWT_TOLERANCE`.
pub fn tolerance() -> f64 {
    std::env::var("ZWT_TOLERANCE")
        .ok()
        .and_then(|s| s.trim().parse::<f64>().ok())
        .filter(|t| t.is_finite() && *t >= 0.0)
        .unwrap_or(DEFAULT_TOLERANCE)
}

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Matrix {
    rows: usize,
    cols: usize,
    data: Vec<Scalar>,
}

/// Outcome of a numeric positivity test.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Psd {
    Yes,
    No,
    /// The float embedding or the eigensolver failed.
    Indeterminate,
}

/// Number of qubits `k` with `2^k = dim`.
pub fn log2_exact(dim: usize) -> Option<usize> {
    if dim.is_power_of_two() {
        Some(dim.trailing_zeros() as usize)
    } else {
        None
    }
}

impl Matrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix { rows, cols, data: vec![Scalar::zero(); rows * cols] }
    }

    pub fn identity(dim: usize) -> Self {
        let mut m = Self::zeros(dim, dim);
        for i in 0..dim {
            m.data[i * dim + i] = Scalar::one();
        }
        m
    }

    pub fn from_vec(rows: usize, cols: usize, data: Vec<Scalar>) -> Result<Self> {
        if data.len() != rows * cols {
            return Err(Error::Dimension(format!(
                "{} entries for a {rows}x{cols} matrix",
                data.len()
            )));
        }
        Ok(Matrix { rows, cols, data })
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> Scalar) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for r in 0..rows {
            for c in 0..cols {
                data.push(f(r, c));
            }
        }
        Matrix { rows, cols, data }
    }

    /// Builds a matrix from small integer entries, row by row.
    pub fn from_ints(rows: &[&[i64]]) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, |x| x.len());
        Matrix::from_fn(r, c, |i, j| Scalar::from_int(rows[i][j]))
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> &Scalar {
        &self.data[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: Scalar) {
        self.data[r * self.cols + c] = v;
    }

    pub fn entry_mut(&mut self, r: usize, c: usize) -> &mut Scalar {
        &mut self.data[r * self.cols + c]
    }

    pub fn entries(&self) -> &[Scalar] {
        &self.data
    }

    /// Qubit counts (outputs, inputs) when both dimensions are powers of two.
    pub fn qubits(&self) -> Option<(usize, usize)> {
        Some((log2_exact(self.rows)?, log2_exact(self.cols)?))
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Scalar::is_zero)
    }

    pub fn mul(&self, rhs: &Matrix) -> Result<Matrix> {
        if self.cols != rhs.rows {
            return Err(Error::Dimension(format!(
                "product of {}x{} and {}x{}",
                self.rows, self.cols, rhs.rows, rhs.cols
            )));
        }
        let mut out = Matrix::zeros(self.rows, rhs.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..rhs.cols {
                    let b = rhs.get(k, j);
                    if !b.is_zero() {
                        *out.entry_mut(i, j) += a * b;
                    }
                }
            }
        }
        Ok(out)
    }

    pub fn kron(&self, rhs: &Matrix) -> Matrix {
        let mut out = Matrix::zeros(self.rows * rhs.rows, self.cols * rhs.cols);
        for i in 0..self.rows {
            for j in 0..self.cols {
                let a = self.get(i, j);
                if a.is_zero() {
                    continue;
                }
                for k in 0..rhs.rows {
                    for l in 0..rhs.cols {
                        let b = rhs.get(k, l);
                        if !b.is_zero() {
                            out.set(i * rhs.rows + k, j * rhs.cols + l, a * b);
                        }
                    }
                }
            }
        }
        out
    }

    pub fn add(&self, rhs: &Matrix) -> Result<Matrix> {
        self.same_shape(rhs, "sum")?;
        let data = self.data.iter().zip(&rhs.data).map(|(a, b)| a + b).collect();
        Ok(Matrix { rows: self.rows, cols: self.cols, data })
    }

    pub fn sub(&self, rhs: &Matrix) -> Result<Matrix> {
        self.same_shape(rhs, "difference")?;
        let data = self.data.iter().zip(&rhs.data).map(|(a, b)| a - b).collect();
        Ok(Matrix { rows: self.rows, cols: self.cols, data })
    }

    fn same_shape(&self, rhs: &Matrix, what: &str) -> Result<()> {
        if self.rows != rhs.rows || self.cols != rhs.cols {
            return Err(Error::Dimension(format!(
                "{what} of {}x{} and {}x{}",
                self.rows, self.cols, rhs.rows, rhs.cols
            )));
        }
        Ok(())
    }

    pub fn scale(&self, s: &Scalar) -> Matrix {
        let data = self.data.iter().map(|a| if a.is_zero() { Scalar::zero() } else { a * s }).collect();
        Matrix { rows: self.rows, cols: self.cols, data }
    }

    pub fn transpose(&self) -> Matrix {
        Matrix::from_fn(self.cols, self.rows, |i, j| self.get(j, i).clone())
    }

    pub fn conj(&self) -> Matrix {
        Matrix { rows: self.rows, cols: self.cols, data: self.data.iter().map(Scalar::conj).collect() }
    }

    pub fn adjoint(&self) -> Matrix {
        Matrix::from_fn(self.cols, self.rows, |i, j| self.get(j, i).conj())
    }

    pub fn is_hermitian(&self) -> bool {
        if !self.is_square() {
            return false;
        }
        (0..self.rows).all(|i| (i..self.cols).all(|j| *self.get(i, j) == self.get(j, i).conj()))
    }

    pub fn trace(&self) -> Scalar {
        (0..self.rows.min(self.cols)).map(|i| self.get(i, i).clone()).sum()
    }

    /// Transposes the given wires of a square operator on `2^n` dimensions.
    pub fn partial_transpose_wires(&self, wires: &[usize]) -> Result<Matrix> {
        let n = self.square_qubits()?;
        let mut mask = 0usize;
        for &w in wires {
            if w >= n {
                return Err(Error::Dimension(format!("wire {w} on a {n}-qubit operator")));
            }
            mask |= 1 << (n - 1 - w);
        }
        let mut out = Matrix::zeros(self.rows, self.cols);
        for x in 0..self.rows {
            for y in 0..self.cols {
                let v = self.get(x, y);
                if v.is_zero() {
                    continue;
                }
                let nx = (x & !mask) | (y & mask);
                let ny = (y & !mask) | (x & mask);
                out.set(nx, ny, v.clone());
            }
        }
        Ok(out)
    }

    /// Traces out the given wires of a square operator.
    pub fn partial_trace_wires(&self, wires: &[usize]) -> Result<Matrix> {
        let n = self.square_qubits()?;
        let keep: Vec<usize> = (0..n).filter(|w| !wires.contains(w)).collect();
        let k = keep.len();
        let project = |x: usize| -> usize {
            keep.iter().fold(0, |acc, &w| (acc << 1) | ((x >> (n - 1 - w)) & 1))
        };
        let mut mask = 0usize;
        for &w in wires {
            if w >= n {
                return Err(Error::Dimension(format!("wire {w} on a {n}-qubit operator")));
            }
            mask |= 1 << (n - 1 - w);
        }
        let mut out = Matrix::zeros(1 << k, 1 << k);
        for x in 0..self.rows {
            for y in 0..self.cols {
                if x & mask != y & mask {
                    continue;
                }
                let v = self.get(x, y);
                if !v.is_zero() {
                    *out.entry_mut(project(x), project(y)) += v;
                }
            }
        }
        Ok(out)
    }

    pub fn square_qubits(&self) -> Result<usize> {
        if !self.is_square() {
            return Err(Error::Dimension(format!("{}x{} is not square", self.rows, self.cols)));
        }
        log2_exact(self.rows)
            .ok_or_else(|| Error::Dimension(format!("{} is not a power of two", self.rows)))
    }

    pub fn to_float(&self) -> Result<DMatrix<Complex64>> {
        let mut out = DMatrix::from_element(self.rows, self.cols, Complex64::new(0.0, 0.0));
        for i in 0..self.rows {
            for j in 0..self.cols {
                out[(i, j)] = self.get(i, j).to_complex()?;
            }
        }
        Ok(out)
    }

    /// Eigenvalues of a Hermitian matrix through the float embedding, ascending.
    pub fn eigenvalues(&self) -> Result<Vec<f64>> {
        if !self.is_hermitian() {
            return Err(Error::NotHermitian);
        }
        if self.rows == 0 {
            return Ok(Vec::new());
        }
        let f = self.to_float()?;
        let mut ev: Vec<f64> = f.symmetric_eigenvalues().iter().copied().collect();
        ev.sort_by(f64::total_cmp);
        Ok(ev)
    }

    pub fn min_eigenvalue(&self) -> Result<f64> {
        self.eigenvalues()?.first().copied().ok_or_else(|| Error::Dimension("empty matrix".into()))
    }

    /// Numeric positive-semidefiniteness with the given tolerance.
    /// Non-Hermitian input is never PSD.
    pub fn psd_with(&self, tol: f64) -> Psd {
        if !self.is_hermitian() {
            return Psd::No;
        }
        match self.eigenvalues() {
            Ok(ev) if ev.iter().all(|x| x.is_finite()) => {
                if ev.first().is_none_or(|&m| m >= -tol) {
                    Psd::Yes
                } else {
                    Psd::No
                }
            }
            _ => Psd::Indeterminate,
        }
    }

    pub fn psd(&self) -> Psd {
        self.psd_with(tolerance())
    }

    /// Exact PSD certificate through principal minors; `None` above dimension 4
    /// or for non-Hermitian input.
    pub fn psd_exact(&self) -> Option<bool> {
        if !self.is_hermitian() || self.rows > 4 {
            return None;
        }
        let d = self.rows;
        for subset in 1..(1usize << d) {
            let idx: Vec<usize> = (0..d).filter(|i| subset >> i & 1 == 1).collect();
            let minor = Matrix::from_fn(idx.len(), idx.len(), |i, j| self.get(idx[i], idx[j]).clone());
            if minor.determinant().ok()?.real_sign()? < 0 {
                return Some(false);
            }
        }
        Some(true)
    }

    /// Exact determinant by Gaussian elimination over the field.
    pub fn determinant(&self) -> Result<Scalar> {
        if !self.is_square() {
            return Err(Error::Dimension("determinant of a non-square matrix".into()));
        }
        let n = self.rows;
        let mut a = self.clone();
        let mut det = Scalar::one();
        for col in 0..n {
            let Some(p) = (col..n).find(|&r| !a.get(r, col).is_zero()) else {
                return Ok(Scalar::zero());
            };
            if p != col {
                for j in 0..n {
                    a.data.swap(p * n + j, col * n + j);
                }
                det = -det;
            }
            let pivot = a.get(col, col).clone();
            det = &det * &pivot;
            let inv = pivot.inv()?;
            for r in col + 1..n {
                let f = a.get(r, col) * &inv;
                if f.is_zero() {
                    continue;
                }
                for j in col..n {
                    let v = &f * a.get(col, j);
                    *a.entry_mut(r, j) -= &v;
                }
            }
        }
        Ok(det)
    }

    /// Text format: a "rows cols" header, then one row per line.
    pub fn to_text(&self, float: bool) -> Result<String> {
        let mut s = format!("{} {}\n", self.rows, self.cols);
        for r in 0..self.rows {
            let mut row = Vec::with_capacity(self.cols);
            for c in 0..self.cols {
                let v = self.get(r, c);
                row.push(if float { format_complex(v.to_complex()?) } else { v.to_string() });
            }
            let _ = writeln!(s, "{}", row.join(" "));
        }
        Ok(s)
    }

    pub fn parse_text(text: &str) -> Result<Matrix> {
        let mut lines = text
            .lines()
            .enumerate()
            .map(|(i, l)| (i + 1, l.split(';').next().unwrap_or("").trim()))
            .filter(|(_, l)| !l.is_empty());
        let (hl, header) = lines.next().ok_or_else(|| parse_err(1, 1, "empty matrix file"))?;
        let dims: Vec<usize> = header
            .split_whitespace()
            .map(|t| t.parse::<usize>().map_err(|_| parse_err(hl, 1, "expected 'rows cols'")))
            .collect::<Result<_>>()?;
        let [rows, cols] = dims[..] else {
            return Err(parse_err(hl, 1, "expected 'rows cols'"));
        };
        let mut data = Vec::with_capacity(rows * cols);
        for (ln, line) in lines {
            let mut col = 1;
            for tok in line.split_whitespace() {
                let offset = line[col - 1..].find(tok).map_or(col, |p| col + p);
                let v = Scalar::parse(tok).map_err(|e| match e {
                    Error::Parse { column, message, .. } => parse_err(ln, offset + column - 1, &message),
                    other => other,
                })?;
                data.push(v);
                col = offset + tok.len();
            }
        }
        if data.len() != rows * cols {
            return Err(Error::Dimension(format!("{} entries for a {rows}x{cols} matrix", data.len())));
        }
        Ok(Matrix { rows, cols, data })
    }
}

fn parse_err(line: usize, column: usize, message: &str) -> Error {
    Error::Parse { line, column, message: message.to_string() }
}

/// Formats a double with 12 significant digits, trailing zeros removed.
pub fn format_sig(x: f64) -> String {
    if x == 0.0 {
        return "0".into();
    }
    let exp = x.abs().log10().floor() as i32;
    let s = if (-5..12).contains(&exp) {
        let decimals = (11 - exp).max(0) as usize;
        let s = format!("{x:.decimals$}");
        if s.contains('.') {
            s.trim_end_matches('0').trim_end_matches('.').to_string()
        } else {
            s
        }
    } else {
        let s = format!("{x:.11e}");
        let (mant, e) = s.split_once('e').unwrap_or((&s, "0"));
        let mant = if mant.contains('.') { mant.trim_end_matches('0').trim_end_matches('.') } else { mant };
        format!("{mant}e{e}")
    };
    if s == "-0" {
        "0".into()
    } else {
        s
    }
}

/// "re+imi" with 12 significant digits per part.
pub fn format_complex(z: Complex64) -> String {
    let re = format_sig(z.re);
    let im = format_sig(z.im);
    if im.starts_with('-') {
        format!("{re}{im}i")
    } else {
        format!("{re}+{im}i")
    }
}

impl std::fmt::Debug for Matrix {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        writeln!(f, "Matrix {}x{}", self.rows, self.cols)?;
        for r in 0..self.rows {
            let row: Vec<String> = (0..self.cols).map(|c| self.get(r, c).to_string()).collect();
            writeln!(f, "  [{}]", row.join(", "))?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn swap4() -> Matrix {
        Matrix::from_ints(&[&[1, 0, 0, 0], &[0, 0, 1, 0], &[0, 1, 0, 0], &[0, 0, 0, 1]])
    }

    fn bell() -> Matrix {
        Matrix::from_ints(&[&[1, 0, 0, 1], &[0, 0, 0, 0], &[0, 0, 0, 0], &[1, 0, 0, 1]])
    }

    #[test]
    fn partial_transpose_of_bell_is_swap() {
        assert_eq!(bell().partial_transpose_wires(&[0]).unwrap(), swap4());
        assert_eq!(bell().partial_transpose_wires(&[1]).unwrap(), swap4());
    }

    #[test]
    fn swap_is_not_psd() {
        assert_eq!(swap4().psd(), Psd::No);
        assert_eq!(swap4().psd_exact(), Some(false));
        assert!((swap4().min_eigenvalue().unwrap() + 1.0).abs() < 1e-9);
        assert_eq!(bell().psd(), Psd::Yes);
        assert_eq!(bell().psd_exact(), Some(true));
    }

    #[test]
    fn partial_trace_of_bell() {
        let t = bell().partial_trace_wires(&[1]).unwrap();
        assert_eq!(t, Matrix::identity(2));
    }

    #[test]
    fn determinant_small() {
        let m = Matrix::from_ints(&[&[2, 1], &[1, 3]]);
        assert_eq!(m.determinant().unwrap(), Scalar::from_int(5));
        assert_eq!(swap4().determinant().unwrap(), Scalar::from_int(-1));
    }

    #[test]
    fn text_round_trip() {
        let m = Matrix::from_fn(2, 2, |i, j| Scalar::omega_pow((i * 2 + j) as i64) * Scalar::half());
        let t = m.to_text(false).unwrap();
        assert_eq!(Matrix::parse_text(&t).unwrap(), m);
        assert!(Matrix::parse_text("2 2\n1 0\n0").is_err());
    }

    #[test]
    fn float_format() {
        assert_eq!(format_complex(Complex64::new(1.0, 0.0)), "1+0i");
        assert_eq!(format_complex(Complex64::new(0.5, -2.0)), "0.5-2i");
        assert_eq!(format_sig(std::f64::consts::FRAC_1_SQRT_2), "0.707106781187");
        assert_eq!(format_sig(1.0e-20), "1e-20");
    }
}
