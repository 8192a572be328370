#![allow(dead_code)]

use num_bigint::BigInt;
use num_traits::ToPrimitive;
use qecc_core::stabilizer::StabilizerGroup;
use qecc_core::verify::KlMode;
use qecc_core::{BitMatrix, BitVector, PauliWord, QuantumCodeBasis, SignedSuperposition};
use rand::seq::SliceRandom;
use rand::Rng;
use rand_chacha::ChaCha8Rng;

pub type Dense = Vec<Vec<i64>>;

pub fn rng(seed: u64) -> ChaCha8Rng {
    rand::SeedableRng::seed_from_u64(seed)
}

pub fn random_vector<R: Rng>(rng: &mut R, n: usize) -> BitVector {
    BitVector::from_bools(&(0..n).map(|_| rng.gen_bool(0.5)).collect::<Vec<_>>())
}

pub fn random_word<R: Rng>(rng: &mut R, n: usize) -> PauliWord {
    PauliWord::new(
        rng.gen_bool(0.5),
        random_vector(rng, n),
        random_vector(rng, n),
    )
    .unwrap()
}

/// A random abelian group of `m` independent self-inverse signed words with
/// no negated Z-type element, so its code has a basis indexed by a linear
/// space of labels.
pub fn random_stabilizer<R: Rng>(rng: &mut R, n: usize, m: usize) -> StabilizerGroup {
    'restart: loop {
        let mut gens: Vec<PauliWord> = Vec::new();
        let mut flat = BitMatrix::empty(2 * n);
        while gens.len() < m {
            let mut found = None;
            for _ in 0..200 {
                let w = random_word(rng, n);
                if !w.is_self_inverse() || gens.iter().any(|g| !g.commutes(&w).unwrap()) {
                    continue;
                }
                let v = w.symplectic().to_flat();
                if v.is_zero() || flat.row_space_contains(&v) {
                    continue;
                }
                found = Some((w, v));
                break;
            }
            let Some((w, v)) = found else {
                continue 'restart;
            };
            flat.push(v).unwrap();
            gens.push(w);
        }
        let group = StabilizerGroup::new(n, gens).unwrap();
        if group.elements().iter().any(|e| e.sign() && e.x().is_zero()) {
            continue 'restart;
        }
        return group;
    }
}

fn letter(x: bool, z: bool) -> [[i64; 2]; 2] {
    match (x, z) {
        (false, false) => [[1, 0], [0, 1]],
        (true, false) => [[0, 1], [1, 0]],
        (false, true) => [[1, 0], [0, -1]],
        (true, true) => [[0, -1], [1, 0]],
    }
}

fn kron(a: &Dense, b: [[i64; 2]; 2]) -> Dense {
    let size = a.len() * 2;
    let mut out = vec![vec![0; size]; size];
    for (i, row) in a.iter().enumerate() {
        for (j, &v) in row.iter().enumerate() {
            for (p, brow) in b.iter().enumerate() {
                for (q, &w) in brow.iter().enumerate() {
                    out[2 * i + p][2 * j + q] = v * w;
                }
            }
        }
    }
    out
}

/// The `2^n × 2^n` matrix of a word as a Kronecker product of single-qubit
/// factors, qubit 0 as the most significant index bit.
pub fn dense_pauli(p: &PauliWord) -> Dense {
    let mut m: Dense = vec![vec![1]];
    for i in 0..p.n() {
        m = kron(&m, letter(p.x().get(i), p.z().get(i)));
    }
    if p.sign() {
        for row in &mut m {
            for v in row {
                *v = -*v;
            }
        }
    }
    m
}

pub fn dense_state(s: &SignedSuperposition) -> Vec<i64> {
    let mut out = vec![0; 1 << s.n()];
    for (label, c) in s.terms() {
        out[label.to_u64() as usize] = c.to_i64().unwrap();
    }
    out
}

pub fn mat_vec(m: &Dense, v: &[i64]) -> Vec<i64> {
    m.iter()
        .map(|row| row.iter().zip(v).map(|(a, b)| a * b).sum())
        .collect()
}

pub fn mat_mul(a: &Dense, b: &Dense) -> Dense {
    let size = a.len();
    (0..size)
        .map(|i| {
            (0..size)
                .map(|j| (0..size).map(|k| a[i][k] * b[k][j]).sum())
                .collect()
        })
        .collect()
}

pub fn dense_element(x: &SignedSuperposition, p: &PauliWord, y: &SignedSuperposition) -> i64 {
    let py = mat_vec(&dense_pauli(p), &dense_state(y));
    dense_state(x).iter().zip(&py).map(|(a, b)| a * b).sum()
}

pub fn dense_commutes(p: &PauliWord, q: &PauliWord) -> bool {
    let (a, b) = (dense_pauli(p), dense_pauli(q));
    mat_mul(&a, &b) == mat_mul(&b, &a)
}

/// Brute-force condition check over every `(α, β)` pair of weight
/// `1..d-1`, without using the library's error enumeration.
pub fn dense_kl(basis: &QuantumCodeBasis, d: usize, mode: KlMode) -> bool {
    let n = basis.n();
    let states: Vec<Vec<i64>> = basis.vectors().iter().map(dense_state).collect();
    for a in 0u64..(1 << n) {
        for b in 0u64..(1 << n) {
            let w = (a | b).count_ones() as usize;
            if w == 0 || w >= d {
                continue;
            }
            let p = PauliWord::new(false, BitVector::from_u64(n, a), BitVector::from_u64(n, b))
                .unwrap();
            let m = dense_pauli(&p);
            let images: Vec<Vec<i64>> = states.iter().map(|s| mat_vec(&m, s)).collect();
            let element = |i: usize, j: usize| -> i64 {
                states[i].iter().zip(&images[j]).map(|(x, y)| x * y).sum()
            };
            for i in 0..states.len() {
                for j in 0..states.len() {
                    let v = element(i, j);
                    let ok = match mode {
                        KlMode::Strict => v == 0,
                        KlMode::General if i != j => v == 0,
                        KlMode::General => v == element(0, 0),
                    };
                    if !ok {
                        return false;
                    }
                }
            }
        }
    }
    true
}

pub fn random_superposition<R: Rng>(rng: &mut R, n: usize) -> SignedSuperposition {
    let mut terms: Vec<(BitVector, BigInt)> = Vec::new();
    for v in 0u64..(1 << n) {
        if rng.gen_bool(0.5) {
            terms.push((
                BitVector::from_u64(n, v),
                BigInt::from(rng.gen_range(-3i64..=3)),
            ));
        }
    }
    SignedSuperposition::from_terms(n, terms).unwrap()
}

/// Up to four vectors with ±1 entries on disjoint label groups of a common
/// size, or the overlapping pair `(x + y, x − y)` built from two of them.
pub fn random_basis<R: Rng>(rng: &mut R, n: usize) -> QuantumCodeBasis {
    let total = 1usize << n;
    let mut labels: Vec<u64> = (0..total as u64).collect();
    labels.shuffle(rng);
    let k = rng.gen_range(1..=total.min(4));
    let size = rng.gen_range(1..=total / k);
    let mut vectors: Vec<SignedSuperposition> = (0..k)
        .map(|t| {
            let terms = labels[t * size..(t + 1) * size].iter().map(|&v| {
                (
                    BitVector::from_u64(n, v),
                    BigInt::from(if rng.gen_bool(0.5) { -1 } else { 1 }),
                )
            });
            SignedSuperposition::from_terms(n, terms).unwrap()
        })
        .collect();
    if k >= 2 && rng.gen_bool(0.5) {
        let (x, y) = (&vectors[0], &vectors[1]);
        vectors = vec![add(x, y, 1), add(x, y, -1)];
    }
    QuantumCodeBasis::new(n, vectors, None).unwrap()
}

fn add(x: &SignedSuperposition, y: &SignedSuperposition, sign: i64) -> SignedSuperposition {
    let mut terms: std::collections::BTreeMap<BitVector, BigInt> =
        std::collections::BTreeMap::new();
    for (l, c) in x.terms() {
        *terms.entry(l.clone()).or_default() += c;
    }
    for (l, c) in y.terms() {
        *terms.entry(l.clone()).or_default() += c * sign;
    }
    SignedSuperposition::from_terms(x.n(), terms).unwrap()
}
