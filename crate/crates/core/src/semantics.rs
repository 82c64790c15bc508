//! Pure interpretation, the doubled (superoperator) interpretation and the
//! marked representation of superoperators as pure diagrams.

use crate::diagram::{Diagram, Generator, Kind};
use crate::error::{Error, Result};
use crate::matrix::{Matrix, Psd};
use crate::scalar::Scalar;
use crate::tensor;
use crate::wiring::{self, Graph, Port};

/// Dense matrix of a tick-free generator.
pub fn generator_matrix(g: &Generator) -> Result<Matrix> {
    let (n, m) = g.arity();
    Ok(match g {
        Generator::Z { r, .. } => {
            let mut mat = Matrix::zeros(1 << m, 1 << n);
            *mat.entry_mut(0, 0) += &Scalar::one();
            *mat.entry_mut((1 << m) - 1, (1 << n) - 1) += r;
            mat
        }
        Generator::W { .. } => Matrix::from_fn(1 << m, 1 << n, |y, x| {
            Scalar::from_int(i64::from(x.count_ones() + y.count_ones() == 1))
        }),
        Generator::Fswap => Matrix::from_ints(&[&[1, 0, 0, 0], &[0, 0, 1, 0], &[0, 1, 0, 0], &[0, 0, 0, -1]]),
        Generator::Swap => Matrix::from_ints(&[&[1, 0, 0, 0], &[0, 0, 1, 0], &[0, 1, 0, 0], &[0, 0, 0, 1]]),
        Generator::Id => Matrix::identity(2),
        Generator::Cup => Matrix::from_ints(&[&[1, 0, 0, 1]]),
        Generator::Cap => Matrix::from_ints(&[&[1], &[0], &[0], &[1]]),
        Generator::Tick => return Err(Error::Ticked),
    })
}

/// Standard interpretation by recursive products and Kronecker products.
/// Exponential in the widest slice; kept as an independent reference.
pub fn interp_dense(d: &Diagram) -> Result<Matrix> {
    match d.kind() {
        Kind::Gen(g) => generator_matrix(g),
        Kind::Empty => Ok(Matrix::identity(1)),
        Kind::Compose(a, b) => interp_dense(a)?.mul(&interp_dense(b)?),
        Kind::Tensor(a, b) => Ok(interp_dense(a)?.kron(&interp_dense(b)?)),
    }
}

/// Standard interpretation of a tick-free diagram, `2^m × 2^n`.
pub fn interp(d: &Diagram) -> Result<Matrix> {
    tensor::evaluate(d)
}

/// Permutation taking interleaved pairs `(x0, x̄0, x1, x̄1, ...)` to `(x0, x1, ..., x̄0, x̄1, ...)`.
pub fn deinterleave(n: usize) -> Result<Diagram> {
    let perm: Vec<usize> = (0..2 * n).map(|w| if w % 2 == 0 { w / 2 } else { n + w / 2 }).collect();
    wiring::permutation(&perm)
}

/// Inverse of [`deinterleave`].
pub fn interleave(n: usize) -> Result<Diagram> {
    let perm: Vec<usize> = (0..2 * n).map(|w| if w < n { 2 * w } else { 2 * (w - n) + 1 }).collect();
    wiring::permutation(&perm)
}

/// Doubling functor to pure diagrams: wire i becomes wires (2i, 2i+1), the
/// second carrying the conjugate copy; the tick becomes a swap.
pub fn unzip(d: &Diagram) -> Result<Diagram> {
    match d.kind() {
        Kind::Empty => Ok(d.clone()),
        Kind::Compose(a, b) => Diagram::compose(&unzip(a)?, &unzip(b)?),
        Kind::Tensor(a, b) => Ok(Diagram::tensor(&unzip(a)?, &unzip(b)?)),
        Kind::Gen(Generator::Tick) => Ok(Diagram::swap()),
        Kind::Gen(g) => {
            let (n, m) = g.arity();
            let mut t = Diagram::tensor(&Diagram::gen(g.clone()), &Diagram::gen(g.conj()));
            if n > 1 {
                t = Diagram::compose(&t, &deinterleave(n)?)?;
            }
            if m > 1 {
                t = Diagram::compose(&interleave(m)?, &t)?;
            }
            Ok(t)
        }
    }
}

/// Index of `|x⟩⟨y|` in the interleaved vectorization `x1 y1 x2 y2 ...`.
pub fn interleave_index(x: usize, y: usize, n: usize) -> usize {
    (0..n).fold(0, |acc, i| {
        let s = n - 1 - i;
        (acc << 2) | (((x >> s) & 1) << 1) | ((y >> s) & 1)
    })
}

pub fn vectorize(rho: &Matrix) -> Result<Matrix> {
    let n = rho.square_qubits()?;
    let mut v = Matrix::zeros(1 << (2 * n), 1);
    for x in 0..rho.rows() {
        for y in 0..rho.cols() {
            let e = rho.get(x, y);
            if !e.is_zero() {
                v.set(interleave_index(x, y, n), 0, e.clone());
            }
        }
    }
    Ok(v)
}

pub fn unvectorize(v: &Matrix, n: usize) -> Result<Matrix> {
    if v.cols() != 1 || v.rows() != 1 << (2 * n) {
        return Err(Error::Dimension(format!("{}x{} is not a vectorized {n}-qubit operator", v.rows(), v.cols())));
    }
    Ok(Matrix::from_fn(1 << n, 1 << n, |x, y| v.get(interleave_index(x, y, n), 0).clone()))
}

/// `interp(unzip(d))`, acting on interleaved vectorizations.
pub fn superoperator_matrix(d: &Diagram) -> Result<Matrix> {
    interp(&unzip(d)?)
}

/// Applies the superoperator of `d` to `rho`.
pub fn apply_superop(d: &Diagram, rho: &Matrix) -> Result<Matrix> {
    let n = rho.square_qubits()?;
    if n != d.inputs() {
        return Err(Error::Dimension(format!("{n}-qubit operator fed to a {}-input diagram", d.inputs())));
    }
    let out = superoperator_matrix(d)?.mul(&vectorize(rho)?)?;
    unvectorize(&out, d.outputs())
}

/// Hermitian operator represented by a state `0 -> n`.
pub fn state_operator(d: &Diagram) -> Result<Matrix> {
    if d.inputs() != 0 {
        return Err(Error::Dimension(format!("expected a state, found {} inputs", d.inputs())));
    }
    let v = interp(&unzip(d)?)?;
    unvectorize(&v, d.outputs())
}

/// Bends all inputs of `d` to outputs: `(id_n ⊗ d) ∘ caps`, cap i joining
/// wires i and n+i. With `ticked`, each cap carries a tick on its first leg.
pub fn bend(d: &Diagram, ticked: bool) -> Result<Diagram> {
    let n = d.inputs();
    if n == 0 {
        return Ok(d.clone());
    }
    let cap = if ticked { Diagram::tcap() } else { Diagram::cap() };
    let caps = Diagram::power(&cap, n);
    let perm: Vec<usize> = (0..2 * n).map(|w| if w % 2 == 0 { w / 2 } else { n + w / 2 }).collect();
    let pairs = wiring::then(&caps, &wiring::permutation(&perm)?)?;
    Diagram::compose(&Diagram::padded(n, d, 0), &pairs)
}

/// Choi matrix `(I ⊗ S)(Σ |k⟩⟨l| ⊗ |k⟩⟨l|)` on `n + m` qubits.
pub fn choi(d: &Diagram) -> Result<Matrix> {
    state_operator(&bend(d, false)?)
}

/// Choi matrix through the ticked cap, equal to `choi` transposed on the inputs.
pub fn proper_choi(d: &Diagram) -> Result<Matrix> {
    state_operator(&bend(d, true)?)
}

pub fn is_hermitian_choi(f: &Matrix) -> bool {
    f.is_hermitian()
}

pub fn is_hermiticity_preserving(d: &Diagram) -> Result<bool> {
    Ok(choi(d)?.is_hermitian())
}

/// Complete positivity through the Choi matrix; Hermiticity is exact, positivity
/// is numeric.
pub fn is_completely_positive(d: &Diagram) -> Result<Psd> {
    Ok(choi_psd(&choi(d)?))
}

pub fn choi_psd(f: &Matrix) -> Psd {
    if !f.is_hermitian() {
        return Psd::No;
    }
    f.psd()
}

/// A superoperator `n -> m` carried by a tick-free pure diagram `(n+m) -> (m+n)`.
///
/// Pure inputs are the forward inputs `a` (n) then the backward inputs `b` (m);
/// pure outputs are the forward outputs `c` (m) then the backward outputs `e` (n).
/// The represented map is `ρ ↦ M`, `M[c][b] = Σ F[(c,e),(a,b)] ρ[a][e]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LinZW {
    pub pure: Diagram,
    pub n: usize,
    pub m: usize,
}

impl LinZW {
    pub fn new(pure: Diagram, n: usize, m: usize) -> Result<Self> {
        if pure.arity() != (n + m, n + m) {
            return Err(Error::Dimension(format!(
                "pure part {}->{} for a {n}->{m} superoperator",
                pure.inputs(),
                pure.outputs()
            )));
        }
        if pure.has_tick() {
            return Err(Error::Invalid("pure part contains a tick".into()));
        }
        Ok(LinZW { pure, n, m })
    }

    pub fn identity(n: usize) -> LinZW {
        LinZW { pure: Diagram::id_n(2 * n), n, m: n }
    }

    /// Marker erasure.
    pub fn iota(&self) -> &Diagram {
        &self.pure
    }

    /// `after ∘ self`, with the backward wires fed back.
    pub fn then(&self, after: &LinZW) -> Result<LinZW> {
        if self.m != after.n {
            return Err(Error::Arity {
                op: "compose",
                left_in: after.n,
                left_out: after.m,
                right_in: self.n,
                right_out: self.m,
            });
        }
        let (n, k, m) = (self.n, self.m, after.m);
        let mut g = Graph::new(n + m, m + n);
        let f = g.add_box(&self.pure);
        let h = g.add_box(&after.pure);
        for i in 0..n {
            g.connect(Port::In(i), Port::BoxIn(f, i));
            g.connect(Port::BoxOut(f, k + i), Port::Out(m + i));
        }
        for j in 0..m {
            g.connect(Port::In(n + j), Port::BoxIn(h, k + j));
            g.connect(Port::BoxOut(h, j), Port::Out(j));
        }
        for i in 0..k {
            g.connect(Port::BoxOut(f, i), Port::BoxIn(h, i));
            g.connect(Port::BoxOut(h, m + i), Port::BoxIn(f, n + i));
        }
        LinZW::new(g.compile()?, n, m)
    }

    pub fn tensor(&self, other: &LinZW) -> Result<LinZW> {
        let (n1, m1, n2, m2) = (self.n, self.m, other.n, other.m);
        let mut g = Graph::new(n1 + n2 + m1 + m2, m1 + m2 + n1 + n2);
        let a = g.add_box(&self.pure);
        let b = g.add_box(&other.pure);
        for i in 0..n1 {
            g.connect(Port::In(i), Port::BoxIn(a, i));
            g.connect(Port::BoxOut(a, m1 + i), Port::Out(m1 + m2 + i));
        }
        for i in 0..n2 {
            g.connect(Port::In(n1 + i), Port::BoxIn(b, i));
            g.connect(Port::BoxOut(b, m2 + i), Port::Out(m1 + m2 + n1 + i));
        }
        for j in 0..m1 {
            g.connect(Port::In(n1 + n2 + j), Port::BoxIn(a, n1 + j));
            g.connect(Port::BoxOut(a, j), Port::Out(j));
        }
        for j in 0..m2 {
            g.connect(Port::In(n1 + n2 + m1 + j), Port::BoxIn(b, n2 + j));
            g.connect(Port::BoxOut(b, j), Port::Out(m1 + j));
        }
        LinZW::new(g.compile()?, n1 + n2, m1 + m2)
    }

    /// Applies the represented superoperator to a `2^n × 2^n` matrix.
    pub fn apply(&self, rho: &Matrix) -> Result<Matrix> {
        let q = rho.square_qubits()?;
        if q != self.n {
            return Err(Error::Dimension(format!("{q}-qubit operator fed to a {}-input map", self.n)));
        }
        let (n, m) = (self.n, self.m);
        let f = interp(&self.pure)?;
        let mut out = Matrix::zeros(1 << m, 1 << m);
        for row in 0..f.rows() {
            let (c, e) = (row >> n, row & ((1 << n) - 1));
            for col in 0..f.cols() {
                let v = f.get(row, col);
                if v.is_zero() {
                    continue;
                }
                let (a, b) = (col >> m, col & ((1 << m) - 1));
                let r = rho.get(a, e);
                if !r.is_zero() {
                    *out.entry_mut(c, b) += v * r;
                }
            }
        }
        Ok(out)
    }
}

/// Functorial image of a diagram as a marked pure diagram.
pub fn hp(d: &Diagram) -> Result<LinZW> {
    match d.kind() {
        Kind::Empty => Ok(LinZW { pure: d.clone(), n: 0, m: 0 }),
        Kind::Gen(Generator::Tick) => {
            LinZW::new(Diagram::compose(&Diagram::cap(), &Diagram::cup())?, 1, 1)
        }
        Kind::Gen(g) => {
            let (n, m) = g.arity();
            let d = Diagram::gen(g.clone());
            LinZW::new(Diagram::tensor(&d, &d.dagger()), n, m)
        }
        Kind::Compose(a, b) => hp(b)?.then(&hp(a)?),
        Kind::Tensor(a, b) => hp(a)?.tensor(&hp(b)?),
    }
}

/// Bends a doubled pure diagram `2n -> 2m` into the marked representation:
/// conjugate outputs become backward inputs, conjugate inputs backward outputs.
pub fn psi(f: &Diagram, n: usize, m: usize) -> Result<LinZW> {
    if f.arity() != (2 * n, 2 * m) {
        return Err(Error::Dimension(format!(
            "expected a {}->{} doubled diagram, found {}->{}",
            2 * n,
            2 * m,
            f.inputs(),
            f.outputs()
        )));
    }
    let mut g = Graph::new(n + m, m + n);
    let b = g.add_box(f);
    for i in 0..n {
        g.connect(Port::In(i), Port::BoxIn(b, 2 * i));
        g.connect(Port::BoxIn(b, 2 * i + 1), Port::Out(m + i));
    }
    for j in 0..m {
        g.connect(Port::In(n + j), Port::BoxOut(b, 2 * j + 1));
        g.connect(Port::BoxOut(b, 2 * j), Port::Out(j));
    }
    LinZW::new(g.compile()?, n, m)
}

/// Psi for a diagram of even arity, splitting both sides in half.
pub fn psi_even(f: &Diagram) -> Result<LinZW> {
    let (i, o) = f.arity();
    if i % 2 == 1 || o % 2 == 1 {
        return Err(Error::Dimension(format!("odd arity {i}->{o}")));
    }
    psi(f, i / 2, o / 2)
}

/// Inverse bending, back to a doubled diagram `2n -> 2m`.
pub fn psi_inv(l: &LinZW) -> Result<Diagram> {
    let (n, m) = (l.n, l.m);
    let mut g = Graph::new(2 * n, 2 * m);
    let b = g.add_box(&l.pure);
    for i in 0..n {
        g.connect(Port::In(2 * i), Port::BoxIn(b, i));
        g.connect(Port::In(2 * i + 1), Port::BoxOut(b, m + i));
    }
    for j in 0..m {
        g.connect(Port::BoxOut(b, j), Port::Out(2 * j));
        g.connect(Port::Out(2 * j + 1), Port::BoxIn(b, n + j));
    }
    g.compile()
}
