//! Partial transpose and PPT, Bloch vectors and the spin flip, the ticked-cup
//! pairing and the internal dagger.

use std::ops::Neg;

use crate::diagram::Diagram;
use crate::error::{Error, Result};
use crate::matrix::{Matrix, Psd};
use crate::normalform::canonical_of_map;
use crate::scalar::Scalar;
use crate::semantics::state_operator;
use crate::wiring::{self, Graph, Port};

/// Transpose on the first `a` wires of a square matrix on `2^(a+b)` basis states.
pub fn partial_transpose(rho: &Matrix, a: usize) -> Result<Matrix> {
    let n = rho.square_qubits()?;
    if a > n {
        return Err(Error::Dimension(format!("cannot split {n} qubits after {a}")));
    }
    let wires: Vec<usize> = (0..a).collect();
    rho.partial_transpose_wires(&wires)
}

/// Positive-partial-transpose test: the partial transpose on the first
/// `split` wires passes the numeric PSD test. Small matrices whose numeric
/// test is inconclusive fall back to the exact minor test.
pub fn ppt_check(rho: &Matrix, split: usize) -> Result<bool> {
    if !rho.is_hermitian() {
        return Err(Error::NotHermitian);
    }
    let pt = partial_transpose(rho, split)?;
    match pt.psd() {
        Psd::Yes => Ok(true),
        Psd::No => Ok(false),
        Psd::Indeterminate => pt
            .psd_exact()
            .ok_or_else(|| Error::Invalid("positivity of the partial transpose is undecided".into())),
    }
}

/// Bloch coordinates of a qubit density matrix.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BlochVector {
    pub rx: Scalar,
    pub ry: Scalar,
    pub rz: Scalar,
}

impl BlochVector {
    pub fn new(rx: Scalar, ry: Scalar, rz: Scalar) -> Result<Self> {
        if !(rx.is_real() && ry.is_real() && rz.is_real()) {
            return Err(Error::Invalid("Bloch coordinates must be real".into()));
        }
        Ok(BlochVector { rx, ry, rz })
    }
}

impl Neg for BlochVector {
    type Output = BlochVector;
    fn neg(self) -> BlochVector {
        BlochVector { rx: -self.rx, ry: -self.ry, rz: -self.rz }
    }
}

impl std::fmt::Display for BlochVector {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "({}, {}, {})", self.rx, self.ry, self.rz)
    }
}

fn check_qubit(rho: &Matrix) -> Result<()> {
    if rho.rows() != 2 || rho.cols() != 2 {
        return Err(Error::Dimension(format!("expected a 2x2 matrix, found {}x{}", rho.rows(), rho.cols())));
    }
    Ok(())
}

pub fn bloch(rho: &Matrix) -> Result<BlochVector> {
    check_qubit(rho)?;
    if !rho.is_hermitian() {
        return Err(Error::NotHermitian);
    }
    if !rho.trace().is_one() {
        return Err(Error::Trace(format!("trace is {}, expected 1", rho.trace())));
    }
    let two = Scalar::from_int(2);
    let off = rho.get(1, 0);
    Ok(BlochVector {
        rx: &two * &off.re(),
        ry: &two * &off.im(),
        rz: rho.get(0, 0) - rho.get(1, 1),
    })
}

/// `(I + r·σ)/2`.
pub fn from_bloch(v: &BlochVector) -> Matrix {
    let h = Scalar::half();
    let one = Scalar::one();
    let off = (&v.rx + &(Scalar::i() * &v.ry)) * &h;
    Matrix::from_vec(
        2,
        2,
        vec![(&one + &v.rz) * &h, off.conj(), off, (&one - &v.rz) * &h],
    )
    .expect("2x2")
}

fn pauli_y() -> Matrix {
    let i = Scalar::i();
    Matrix::from_vec(2, 2, vec![Scalar::zero(), -i.clone(), i, Scalar::zero()]).expect("2x2")
}

/// `Y ρᵀ Y`.
pub fn spin_flip(rho: &Matrix) -> Result<Matrix> {
    check_qubit(rho)?;
    let y = pauli_y();
    y.mul(&rho.transpose())?.mul(&y)
}

/// `W(1,1) ∘ Z(−1,1,1) ∘ tick`, whose superoperator is the spin flip.
pub fn spin_flip_diagram() -> Diagram {
    Diagram::seq(&[Diagram::tick(), Diagram::z(Scalar::from_int(-1), 1, 1), Diagram::w(1, 1)]).expect("1 -> 1")
}

/// Contracts wire k of `s1` with wire k of `s2` through a plain or ticked
/// cup (tick on the `s1` side) and reads off the scalar.
pub fn sesqui_pairing(s1: &Diagram, s2: &Diagram, ticked: bool) -> Result<Scalar> {
    let n = s1.outputs();
    if s1.inputs() != 0 || s2.inputs() != 0 || s2.outputs() != n {
        return Err(Error::Arity {
            op: "pairing",
            left_in: s1.inputs(),
            left_out: n,
            right_in: s2.inputs(),
            right_out: s2.outputs(),
        });
    }
    let both = Diagram::tensor(s1, s2);
    if n == 0 {
        return Ok(state_operator(&both)?.get(0, 0).clone());
    }
    let perm: Vec<usize> = (0..2 * n).map(|w| if w < n { 2 * w } else { 2 * (w - n) + 1 }).collect();
    let cup = if ticked { Diagram::tcup() } else { Diagram::cup() };
    let closing = wiring::then(&wiring::permutation(&perm)?, &Diagram::power(&cup, n))?;
    let closed = Diagram::compose(&closing, &both)?;
    Ok(state_operator(&closed)?.get(0, 0).clone())
}

/// Adjoint superoperator `ρ ↦ A†ρA`: the plain transpose conjugated by ticks
/// on every wire.
pub fn internal_dagger(d: &Diagram) -> Result<Diagram> {
    let (n, m) = d.arity();
    let mut g = Graph::new(m, n);
    let body = g.add_box(d);
    for j in 0..m {
        let t = g.add_box(&Diagram::tick());
        g.connect(Port::In(j), Port::BoxIn(t, 0));
        g.connect(Port::BoxOut(t, 0), Port::BoxOut(body, j));
    }
    for i in 0..n {
        let t = g.add_box(&Diagram::tick());
        g.connect(Port::BoxIn(body, i), Port::BoxIn(t, 0));
        g.connect(Port::BoxOut(t, 0), Port::Out(i));
    }
    g.compile()
}

/// Whether `d† ∘ d` and `d ∘ d†` both equal the identity superoperator.
pub fn is_unitary_semantic(d: &Diagram) -> Result<bool> {
    let (n, m) = d.arity();
    if n != m {
        return Ok(false);
    }
    let dag = internal_dagger(d)?;
    let id = canonical_of_map(&Diagram::id_n(n))?;
    Ok(canonical_of_map(&Diagram::compose(&dag, d)?)? == id && canonical_of_map(&Diagram::compose(d, &dag)?)? == id)
}
