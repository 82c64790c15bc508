//! Normal forms of Hermitian operators and the equality decision procedure.

use std::fmt;
use std::fmt::Write as _;

use crate::diagram::Diagram;
use crate::error::{Error, Result};
use crate::matrix::Matrix;
use crate::scalar::Scalar;
use crate::semantics;
use crate::wiring;

/// One entry `H[x][y] = lambda` with `x ≤ y`; bitstrings are stored as
/// integers read most-significant-wire-first.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct NFTerm {
    pub x: usize,
    pub y: usize,
    pub lambda: Scalar,
}

/// Sorted list of the upper-triangular nonzero entries of a Hermitian matrix.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct NormalForm {
    n: usize,
    terms: Vec<NFTerm>,
}

pub fn bits(v: usize, n: usize) -> String {
    if n == 0 {
        return "-".into();
    }
    (0..n).map(|i| if (v >> (n - 1 - i)) & 1 == 1 { '1' } else { '0' }).collect()
}

fn parse_bits(s: &str, n: usize) -> Option<usize> {
    if n == 0 {
        return (s == "-").then_some(0);
    }
    if s.len() != n {
        return None;
    }
    s.chars().try_fold(0usize, |acc, c| match c {
        '0' => Some(acc << 1),
        '1' => Some((acc << 1) | 1),
        _ => None,
    })
}

impl NormalForm {
    /// Validates sortedness, uniqueness, `x ≤ y`, nonzero and real diagonal.
    pub fn new(n: usize, terms: Vec<NFTerm>) -> Result<Self> {
        for (i, t) in terms.iter().enumerate() {
            if t.x >= 1 << n || t.y >= 1 << n {
                return Err(Error::Invalid(format!("term {i} does not fit {n} qubits")));
            }
            if t.x > t.y {
                return Err(Error::Invalid(format!("term {i} has x > y")));
            }
            if t.lambda.is_zero() {
                return Err(Error::Invalid(format!("term {i} has a zero coefficient")));
            }
            if t.x == t.y && !t.lambda.is_real() {
                return Err(Error::Invalid(format!("diagonal term {i} is not real")));
            }
            if i > 0 && (terms[i - 1].x, terms[i - 1].y) >= (t.x, t.y) {
                return Err(Error::Invalid(format!("term {i} is out of order or repeated")));
            }
        }
        Ok(NormalForm { n, terms })
    }

    pub fn zero(n: usize) -> Self {
        NormalForm { n, terms: Vec::new() }
    }

    pub fn qubits(&self) -> usize {
        self.n
    }

    pub fn terms(&self) -> &[NFTerm] {
        &self.terms
    }

    pub fn from_matrix(h: &Matrix) -> Result<Self> {
        let n = h.square_qubits()?;
        if !h.is_hermitian() {
            return Err(Error::NotHermitian);
        }
        let mut terms = Vec::new();
        for x in 0..h.rows() {
            for y in x..h.cols() {
                let v = h.get(x, y);
                if !v.is_zero() {
                    terms.push(NFTerm { x, y, lambda: v.clone() });
                }
            }
        }
        Ok(NormalForm { n, terms })
    }

    pub fn to_matrix(&self) -> Matrix {
        let d = 1 << self.n;
        let mut h = Matrix::zeros(d, d);
        for t in &self.terms {
            h.set(t.x, t.y, t.lambda.clone());
            if t.x != t.y {
                h.set(t.y, t.x, t.lambda.conj());
            }
        }
        h
    }

    /// Complements bit `k` of every x and y.
    pub fn negate(&self, k: usize) -> Result<Self> {
        self.check_wire(k)?;
        let mask = 1 << (self.n - 1 - k);
        let mut terms: Vec<NFTerm> = self
            .terms
            .iter()
            .map(|t| {
                let (x, y) = (t.x ^ mask, t.y ^ mask);
                if x <= y {
                    NFTerm { x, y, lambda: t.lambda.clone() }
                } else {
                    NFTerm { x: y, y: x, lambda: t.lambda.conj() }
                }
            })
            .collect();
        terms.sort_by_key(|t| (t.x, t.y));
        Ok(NormalForm { n: self.n, terms })
    }

    /// Keeps the terms with `x_k = y_k = bit` and removes wire k.
    pub fn project(&self, k: usize, bit: bool) -> Result<Self> {
        self.check_wire(k)?;
        let shift = self.n - 1 - k;
        let drop = |v: usize| ((v >> (shift + 1)) << shift) | (v & ((1 << shift) - 1));
        let terms = self
            .terms
            .iter()
            .filter(|t| (t.x >> shift) & 1 == bit as usize && (t.y >> shift) & 1 == bit as usize)
            .map(|t| NFTerm { x: drop(t.x), y: drop(t.y), lambda: t.lambda.clone() })
            .collect();
        Ok(NormalForm { n: self.n - 1, terms })
    }

    /// Normal form of the Kronecker product of the represented operators.
    pub fn kron(&self, other: &NormalForm) -> NormalForm {
        NormalForm::from_matrix(&self.to_matrix().kron(&other.to_matrix()))
            .expect("product of Hermitian matrices is Hermitian")
    }

    fn check_wire(&self, k: usize) -> Result<()> {
        if k >= self.n {
            return Err(Error::Dimension(format!("wire {k} on {} qubits", self.n)));
        }
        Ok(())
    }

    /// Diagram `0 -> n` whose operator is this normal form. The reduced variant
    /// uses one node per term; the unreduced one one node per matrix entry.
    pub fn to_diagram(&self, reduced: bool) -> Result<Diagram> {
        let half = Scalar::half();
        let mut nodes: Vec<(usize, usize, Scalar)> = Vec::new();
        for t in &self.terms {
            if t.x == t.y {
                nodes.push((t.x, t.x, &t.lambda * &half));
            } else if reduced {
                nodes.push((t.x, t.y, t.lambda.clone()));
            } else {
                nodes.push((t.x, t.y, &t.lambda * &half));
                nodes.push((t.y, t.x, t.lambda.conj() * &half));
            }
        }
        nf_diagram(self.n, &nodes)
    }

    pub fn to_text(&self) -> String {
        let mut s = format!("n {}\n", self.n);
        for t in &self.terms {
            let _ = writeln!(s, "{} {} {}", bits(t.x, self.n), bits(t.y, self.n), t.lambda);
        }
        s
    }

    pub fn parse_text(text: &str) -> Result<Self> {
        let perr = |line: usize, msg: &str| Error::Parse { line, column: 1, message: msg.to_string() };
        let mut lines = text
            .lines()
            .enumerate()
            .map(|(i, l)| (i + 1, l.split(';').next().unwrap_or("").trim()))
            .filter(|(_, l)| !l.is_empty());
        let (hl, header) = lines.next().ok_or_else(|| perr(1, "empty normal form"))?;
        let n = match header.split_whitespace().collect::<Vec<_>>()[..] {
            ["n", q] => q.parse::<usize>().map_err(|_| perr(hl, "bad qubit count"))?,
            _ => return Err(perr(hl, "expected 'n <qubits>'")),
        };
        let mut terms = Vec::new();
        for (ln, line) in lines {
            let parts: Vec<&str> = line.split_whitespace().collect();
            let [xs, ys, ls] = parts[..] else {
                return Err(perr(ln, "expected '<x-bits> <y-bits> <scalar>'"));
            };
            let x = parse_bits(xs, n).ok_or_else(|| perr(ln, "bad x bitstring"))?;
            let y = parse_bits(ys, n).ok_or_else(|| perr(ln, "bad y bitstring"))?;
            let lambda = Scalar::parse(ls).map_err(|e| match e {
                Error::Parse { message, .. } => perr(ln, &message),
                other => other,
            })?;
            terms.push(NFTerm { x, y, lambda });
        }
        NormalForm::new(n, terms)
    }
}

impl fmt::Display for NormalForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_text())
    }
}

/// Builds the normal-form diagram from explicit nodes `(x, y, μ)`; each node
/// contributes `μ|x⟩⟨y| + μ̄|y⟩⟨x|`.
///
/// Node i is `Z(μ, 0, 2 + |x| + |y|)`; its first two legs meet the selector
/// `W(2k, 0)`, the second through a tick. Plain legs go to the outputs where
/// x has a 1, ticked legs to those where y has a 1, and output q gathers its
/// legs with `not ∘ W(c_q, 1)`.
pub fn nf_diagram(n: usize, nodes: &[(usize, usize, Scalar)]) -> Result<Diagram> {
    let k = nodes.len();
    let bit = |v: usize, q: usize| (v >> (n - 1 - q)) & 1 == 1;
    let mut spiders = Vec::with_capacity(k);
    let mut ticks = Vec::new();
    // Target position of every leg, in leg order.
    let mut targets: Vec<(usize, usize)> = Vec::new();
    let mut incoming = vec![0usize; n];
    for (i, (x, y, mu)) in nodes.iter().enumerate() {
        let mut legs = 2;
        targets.push((0, 2 * i));
        targets.push((0, 2 * i + 1));
        ticks.push(false);
        ticks.push(true);
        for (q, seen) in incoming.iter_mut().enumerate() {
            if bit(*x, q) {
                targets.push((q + 1, *seen));
                *seen += 1;
                ticks.push(false);
                legs += 1;
            }
        }
        for (q, seen) in incoming.iter_mut().enumerate() {
            if bit(*y, q) {
                targets.push((q + 1, *seen));
                *seen += 1;
                ticks.push(true);
                legs += 1;
            }
        }
        spiders.push(Diagram::z(mu.clone(), 0, legs));
    }
    let mut offsets = vec![0usize; n + 2];
    offsets[1] = 2 * k;
    for q in 0..n {
        offsets[q + 2] = offsets[q + 1] + incoming[q];
    }
    let perm: Vec<usize> = targets.iter().map(|&(group, idx)| offsets[group] + idx).collect();

    let mut d = Diagram::tensor_all(&spiders);
    if ticks.iter().any(|&t| t) {
        let layer: Vec<Diagram> = ticks.iter().map(|&t| if t { Diagram::tick() } else { Diagram::id() }).collect();
        d = Diagram::compose(&Diagram::tensor_all(&layer), &d)?;
    }
    if !wiring::is_identity(&perm) {
        d = Diagram::compose(&wiring::permutation(&perm)?, &d)?;
    }
    let mut top = vec![Diagram::w(2 * k, 0)];
    for &c in &incoming {
        top.push(Diagram::compose(&Diagram::not(), &Diagram::w(c, 1))?);
    }
    Diagram::compose(&Diagram::tensor_all(&top), &d)
}

pub fn nf_from_matrix(h: &Matrix) -> Result<NormalForm> {
    NormalForm::from_matrix(h)
}

/// Reduced normal-form diagram, or unreduced when `reduced` is false.
pub fn nf_to_diagram(nf: &NormalForm, reduced: bool) -> Result<Diagram> {
    nf.to_diagram(reduced)
}

pub fn nf_of_diagram(d: &Diagram) -> Result<NormalForm> {
    NormalForm::from_matrix(&semantics::state_operator(d)?)
}

/// Normal form of a map through the plain-cap process-state duality.
pub fn canonical_of_map(d: &Diagram) -> Result<NormalForm> {
    NormalForm::from_matrix(&semantics::choi(d)?)
}

/// Semantic equality; different arities are never equal.
pub fn diagrams_equal(a: &Diagram, b: &Diagram) -> Result<bool> {
    if a.arity() != b.arity() {
        return Ok(false);
    }
    Ok(canonical_of_map(a)? == canonical_of_map(b)?)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn one_qubit(a: Scalar, b: Scalar, c: Scalar) -> Matrix {
        Matrix::from_vec(2, 2, vec![a, b.conj(), b, c]).unwrap()
    }

    #[test]
    fn example_one_qubit() {
        let (a, b, c) = (Scalar::one(), Scalar::omega(), Scalar::from_int(-2));
        let nf = NormalForm::from_matrix(&one_qubit(a.clone(), b.clone(), c.clone())).unwrap();
        let want = [
            NFTerm { x: 0, y: 0, lambda: a },
            NFTerm { x: 0, y: 1, lambda: b.conj() },
            NFTerm { x: 1, y: 1, lambda: c },
        ];
        assert_eq!(nf.terms(), &want[..]);
    }

    #[test]
    fn pauli_y() {
        let i = Scalar::i();
        let y = Matrix::from_vec(2, 2, vec![Scalar::zero(), -&i, i, Scalar::zero()]).unwrap();
        let nf = NormalForm::from_matrix(&y).unwrap();
        assert_eq!(nf.to_text(), "n 1\n0 1 -w^2\n");
    }

    #[test]
    fn non_hermitian_rejected() {
        let m = Matrix::from_ints(&[&[0, 1], &[0, 0]]);
        assert!(matches!(NormalForm::from_matrix(&m), Err(Error::NotHermitian)));
    }

    #[test]
    fn diagram_round_trip_small() {
        let m = one_qubit(Scalar::one(), Scalar::omega(), Scalar::from_int(-2));
        let nf = NormalForm::from_matrix(&m).unwrap();
        for reduced in [true, false] {
            let d = nf.to_diagram(reduced).unwrap();
            assert_eq!(d.arity(), (0, 1));
            assert_eq!(semantics::state_operator(&d).unwrap(), m);
        }
        let d = NormalForm::zero(1).to_diagram(true).unwrap();
        assert!(semantics::state_operator(&d).unwrap().is_zero());
    }

    #[test]
    fn three_white_nodes_for_one_qubit() {
        let m = one_qubit(Scalar::one(), Scalar::omega(), Scalar::from_int(-2));
        let d = NormalForm::from_matrix(&m).unwrap().to_diagram(true).unwrap();
        let whites = d.print().matches("(z ").count();
        assert_eq!(whites, 3);
    }

    #[test]
    fn text_round_trip() {
        let m = one_qubit(Scalar::half(), Scalar::omega(), Scalar::zero());
        let nf = NormalForm::from_matrix(&m).unwrap();
        assert_eq!(NormalForm::parse_text(&nf.to_text()).unwrap(), nf);
        assert!(NormalForm::parse_text("n 1\n1 0 1\n").is_err());
        assert!(NormalForm::parse_text("n 1\n0 0 w\n").is_err());
    }

    #[test]
    fn equality_examples() {
        let tt = Diagram::compose(&Diagram::tick(), &Diagram::tick()).unwrap();
        assert!(diagrams_equal(&tt, &Diagram::id()).unwrap());
        assert!(!diagrams_equal(&Diagram::ket0(), &Diagram::ket1()).unwrap());
        assert!(!diagrams_equal(&Diagram::id(), &Diagram::cap()).unwrap());
    }

    #[test]
    fn canonical_examples() {
        assert_eq!(
            canonical_of_map(&Diagram::id()).unwrap(),
            nf_of_diagram(&Diagram::cap()).unwrap()
        );
        assert_eq!(canonical_of_map(&Diagram::ground()).unwrap().to_text(), "n 1\n0 0 1\n1 1 1\n");
        let cap = nf_of_diagram(&Diagram::cap()).unwrap();
        assert_eq!(cap.to_text(), "n 2\n00 00 1\n00 11 1\n11 11 1\n");
    }
}
