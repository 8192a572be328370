//! Signed Pauli words `(-1)^λ X_α Z_β`.
//!
//! Phases are restricted to ±1: `σ_y` is written as `X Z` with no factor of
//! `i`, so every word has an integer matrix in the computational basis.

use std::fmt;
use std::str::FromStr;

use crate::error::{check_len, Error, Result};
use crate::gf2::{BitVector, SymplecticVector};

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PauliWord {
    sign: bool,
    x: BitVector,
    z: BitVector,
}

impl PauliWord {
    /// `(-1)^sign X_x Z_z`.
    pub fn new(sign: bool, x: BitVector, z: BitVector) -> Result<Self> {
        check_len(x.len(), z.len())?;
        Ok(Self { sign, x, z })
    }

    pub fn identity(n: usize) -> Self {
        Self {
            sign: false,
            x: BitVector::zeros(n),
            z: BitVector::zeros(n),
        }
    }

    pub fn x_type(alpha: BitVector) -> Self {
        let n = alpha.len();
        Self {
            sign: false,
            x: alpha,
            z: BitVector::zeros(n),
        }
    }

    pub fn z_type(beta: BitVector) -> Self {
        let n = beta.len();
        Self {
            sign: false,
            x: BitVector::zeros(n),
            z: beta,
        }
    }

    pub fn n(&self) -> usize {
        self.x.len()
    }

    /// `true` when the overall sign is −1.
    pub fn sign(&self) -> bool {
        self.sign
    }

    pub fn x(&self) -> &BitVector {
        &self.x
    }

    pub fn z(&self) -> &BitVector {
        &self.z
    }

    pub fn with_sign(mut self, sign: bool) -> Self {
        self.sign = sign;
        self
    }

    pub fn negated(mut self) -> Self {
        self.sign = !self.sign;
        self
    }

    pub fn is_identity(&self) -> bool {
        !self.sign && self.x.is_zero() && self.z.is_zero()
    }

    /// True for `±I`.
    pub fn is_scalar(&self) -> bool {
        self.x.is_zero() && self.z.is_zero()
    }

    pub fn symplectic(&self) -> SymplecticVector {
        SymplecticVector {
            x: self.x.clone(),
            z: self.z.clone(),
        }
    }

    /// Number of qubits where the word acts nontrivially.
    pub fn weight(&self) -> usize {
        self.x.or(&self.z).weight()
    }

    /// Whether the word squares to `+I`, i.e. `α·β = 0`.
    pub fn is_self_inverse(&self) -> bool {
        !self.x.dot(&self.z)
    }

    /// The product `self · other`.
    ///
    /// Moving `Z_β` of `self` past `X_α'` of `other` contributes `(-1)^{β·α'}`.
    pub fn compose(&self, other: &Self) -> Result<Self> {
        check_len(self.n(), other.n())?;
        Ok(self.compose_unchecked(other))
    }

    pub(crate) fn compose_unchecked(&self, other: &Self) -> Self {
        Self {
            sign: self.sign ^ other.sign ^ self.z.dot(&other.x),
            x: &self.x ^ &other.x,
            z: &self.z ^ &other.z,
        }
    }

    pub fn commutes(&self, other: &Self) -> Result<bool> {
        check_len(self.n(), other.n())?;
        Ok(!(self.x.dot(&other.z) ^ other.x.dot(&self.z)))
    }
}

impl fmt::Display for PauliWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = if self.sign { '-' } else { '+' };
        write!(f, "{s} {}|{}", self.x, self.z)
    }
}

impl fmt::Debug for PauliWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "PauliWord({self})")
    }
}

impl FromStr for PauliWord {
    type Err = Error;

    /// Parses `"+ 10110|00101"`; the space after the sign is optional.
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let (sign, rest) = match s.chars().next() {
            Some('+') => (false, &s[1..]),
            Some('-') => (true, &s[1..]),
            _ => {
                return Err(Error::Input(format!(
                    "pauli word must start with + or -: {s:?}"
                )))
            }
        };
        let (x, z) = rest
            .trim()
            .split_once('|')
            .ok_or_else(|| Error::Input(format!("pauli word needs a '|' separator: {s:?}")))?;
        PauliWord::new(sign, x.trim().parse()?, z.trim().parse()?)
    }
}

/// Number of unsigned words on `n` qubits with weight in `1..=max_weight`.
pub fn error_count(n: usize, max_weight: usize) -> u128 {
    (1..=max_weight.min(n))
        .map(|w| crate::bounds::binomial(n, w) * 3u128.pow(w as u32))
        .sum()
}

/// Streams every unsigned word of weight `1..=max_weight` exactly once.
///
/// Order: by weight, then by support (combinations in lexicographic order),
/// then by the letters on the support read as a mixed-radix number with the
/// first support position most significant and `X < Z < XZ`.
pub fn enumerate_errors(n: usize, max_weight: usize) -> ErrorWords {
    ErrorWords::new(n, max_weight.min(n))
}

#[derive(Clone, Debug)]
pub struct ErrorWords {
    n: usize,
    max_weight: usize,
    support: Vec<usize>,
    letters: Vec<u8>,
    done: bool,
}

impl ErrorWords {
    fn new(n: usize, max_weight: usize) -> Self {
        let done = max_weight == 0 || n == 0;
        Self {
            n,
            max_weight,
            support: vec![0],
            letters: vec![0],
            done,
        }
    }

    fn current(&self) -> PauliWord {
        let mut x = BitVector::zeros(self.n);
        let mut z = BitVector::zeros(self.n);
        for (&pos, &letter) in self.support.iter().zip(&self.letters) {
            match letter {
                0 => x.set(pos, true),
                1 => z.set(pos, true),
                _ => {
                    x.set(pos, true);
                    z.set(pos, true);
                }
            }
        }
        PauliWord { sign: false, x, z }
    }

    fn advance(&mut self) {
        // letters first
        for l in self.letters.iter_mut().rev() {
            if *l < 2 {
                *l += 1;
                return;
            }
            *l = 0;
        }
        // next combination of the same size
        let w = self.support.len();
        let mut i = w;
        while i > 0 {
            i -= 1;
            if self.support[i] < self.n - w + i {
                self.support[i] += 1;
                for j in i + 1..w {
                    self.support[j] = self.support[j - 1] + 1;
                }
                return;
            }
        }
        if w < self.max_weight {
            self.support = (0..=w).collect();
            self.letters = vec![0; w + 1];
        } else {
            self.done = true;
        }
    }
}

impl Iterator for ErrorWords {
    type Item = PauliWord;

    fn next(&mut self) -> Option<PauliWord> {
        if self.done {
            return None;
        }
        let out = self.current();
        self.advance();
        Some(out)
    }
}
