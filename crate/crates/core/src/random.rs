//! Seeded random terms, scalars and matrices for property tests and the
//! randomized suites.

use rand::seq::IndexedRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::diagram::{Diagram, Generator};
use crate::matrix::Matrix;
use crate::scalar::Scalar;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// The scalar sample grid `{0, 1, −1, ½, ω, −ω³, 1+ω²}`.
pub fn scalar_grid() -> Vec<Scalar> {
    vec![
        Scalar::zero(),
        Scalar::one(),
        Scalar::from_int(-1),
        Scalar::half(),
        Scalar::omega(),
        -Scalar::omega_pow(3),
        Scalar::one() + Scalar::i(),
    ]
}

/// Scalar with small dyadic coefficients in every basis direction.
pub fn scalar<R: Rng>(rng: &mut R) -> Scalar {
    let mut c = [(0i64, 1i64); 4];
    for slot in &mut c {
        if rng.random_bool(0.5) {
            *slot = (rng.random_range(-3..=3), *[1, 2].choose(rng).unwrap());
        }
    }
    Scalar::from_ratios(c)
}

/// Real scalar `p + q√2` with small dyadic p, q.
pub fn real_scalar<R: Rng>(rng: &mut R) -> Scalar {
    let p = Scalar::ratio(rng.random_range(-3..=3), *[1, 2].choose(rng).unwrap());
    if rng.random_bool(0.3) {
        p + Scalar::sqrt2() * Scalar::ratio(rng.random_range(-2..=2), 2)
    } else {
        p
    }
}

/// Generator parameter: from the grid most of the time, otherwise random.
pub fn parameter<R: Rng>(rng: &mut R) -> Scalar {
    if rng.random_bool(0.7) {
        scalar_grid().choose(rng).unwrap().clone()
    } else {
        scalar(rng)
    }
}

/// Options for random terms.
#[derive(Clone, Copy, Debug)]
pub struct TermShape {
    pub generators: usize,
    pub max_wires: usize,
    pub ticks: bool,
}

impl Default for TermShape {
    fn default() -> Self {
        TermShape { generators: 6, max_wires: 3, ticks: true }
    }
}

fn generator<R: Rng>(rng: &mut R, width: usize, shape: &TermShape) -> Option<Generator> {
    for _ in 0..64 {
        let g = match rng.random_range(0..9) {
            0 | 1 => Generator::Z { r: parameter(rng), n: rng.random_range(0..=2), m: rng.random_range(0..=2) },
            2 | 3 => Generator::W { n: rng.random_range(0..=2), m: rng.random_range(0..=2) },
            4 => Generator::Fswap,
            5 if shape.ticks => Generator::Tick,
            5 => Generator::Id,
            6 => Generator::Swap,
            7 => Generator::Cup,
            _ => Generator::Cap,
        };
        let (n, m) = g.arity();
        if n <= width && width - n + m <= shape.max_wires {
            return Some(g);
        }
    }
    None
}

/// Random well-typed term with `inputs` inputs, built layer by layer as
/// `(id_a ⊗ g ⊗ id_b) ∘ previous`.
pub fn term<R: Rng>(rng: &mut R, inputs: usize, shape: &TermShape) -> Diagram {
    let mut d = Diagram::id_n(inputs);
    let mut width = inputs;
    let mut placed = 0;
    while placed < shape.generators {
        let Some(g) = generator(rng, width, shape) else { break };
        let (n, m) = g.arity();
        let a = rng.random_range(0..=width - n);
        let layer = Diagram::padded(a, &Diagram::gen(g), width - n - a);
        d = if placed == 0 && inputs == 0 {
            layer
        } else {
            Diagram::compose(&layer, &d).expect("layer fits")
        };
        width = width - n + m;
        placed += 1;
    }
    d
}

/// Random term with a random input count up to `max_wires`.
pub fn any_term<R: Rng>(rng: &mut R, shape: &TermShape) -> Diagram {
    let n = rng.random_range(0..=shape.max_wires);
    term(rng, n, shape)
}

/// Random state `0 -> k` for some k.
pub fn state<R: Rng>(rng: &mut R, shape: &TermShape) -> Diagram {
    term(rng, 0, shape)
}

/// Random state with exactly `outputs` outputs: a random term followed by
/// discards or fresh `|0⟩` preparations to fix the width.
pub fn state_on<R: Rng>(rng: &mut R, outputs: usize, shape: &TermShape) -> Diagram {
    let d = state(rng, shape);
    let k = d.outputs();
    if k == outputs {
        return d;
    }
    let fix = if k > outputs {
        let cut = if shape.ticks { Diagram::ground() } else { Diagram::bra0() };
        Diagram::padded(outputs, &Diagram::power(&cut, k - outputs), 0)
    } else {
        Diagram::padded(k, &Diagram::power(&Diagram::ket0(), outputs - k), 0)
    };
    Diagram::compose(&fix, &d).expect("width fix fits")
}

/// Random Hermitian matrix on n qubits with roughly the given fraction of
/// nonzero entries.
pub fn hermitian<R: Rng>(rng: &mut R, n: usize, density: f64) -> Matrix {
    let d = 1 << n;
    let mut h = Matrix::zeros(d, d);
    for x in 0..d {
        for y in x..d {
            if !rng.random_bool(density) {
                continue;
            }
            if x == y {
                h.set(x, x, real_scalar(rng));
            } else {
                let v = scalar(rng);
                h.set(y, x, v.conj());
                h.set(x, y, v);
            }
        }
    }
    h
}

/// Random positive semidefinite matrix `A A†`.
pub fn positive<R: Rng>(rng: &mut R, n: usize) -> Matrix {
    let d = 1 << n;
    let a = Matrix::from_fn(d, d, |_, _| if rng.random_bool(0.6) { scalar(rng) } else { Scalar::zero() });
    a.mul(&a.adjoint()).expect("square")
}

/// Random rational Bloch vector inside the unit ball.
pub fn bloch_coords<R: Rng>(rng: &mut R) -> [Scalar; 3] {
    loop {
        let v: [i64; 3] = [rng.random_range(-4..=4), rng.random_range(-4..=4), rng.random_range(-4..=4)];
        if v.iter().map(|x| x * x).sum::<i64>() <= 16 {
            return v.map(|x| Scalar::ratio(x, 4));
        }
    }
}
