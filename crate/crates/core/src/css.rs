//! Binary linear codes and the CSS and twisted CSS constructions built from
//! weakly self-dual ones.

use std::fmt::Write as _;

use num_bigint::BigInt;
use num_traits::One;

use crate::error::{check_len, parse_err, Error, Result};
use crate::gf2::{complete_basis, coset_reps, BitMatrix, BitVector, SpanIter};
use crate::states::{QuantumCodeBasis, SignedSuperposition};

/// Largest dimension whose codewords are enumerated exhaustively.
pub const MAX_ENUMERATED_DIMENSION: usize = 30;

/// Largest number of basis terms a construction will materialize.
pub const MAX_MATERIALIZED_TERMS: usize = 1 << 24;

/// An `[n, k]` binary code given by `k` independent generator rows.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LinearBinaryCode {
    generator: BitMatrix,
    parity_check: BitMatrix,
}

impl LinearBinaryCode {
    pub fn new(generator: BitMatrix) -> Result<Self> {
        if !generator.has_independent_rows() {
            return Err(Error::DependentRows);
        }
        let parity_check = generator.nullspace();
        Ok(Self {
            generator,
            parity_check,
        })
    }

    pub fn from_strs(n: usize, rows: &[&str]) -> Result<Self> {
        Self::new(BitMatrix::from_strs(n, rows)?)
    }

    /// `{0, 1}` of length `n`.
    pub fn repetition(n: usize) -> Self {
        Self::new(BitMatrix::new(n, vec![BitVector::ones(n)]).expect("one row"))
            .expect("nonzero row")
    }

    /// The code `{0}`.
    pub fn zero(n: usize) -> Self {
        Self::new(BitMatrix::empty(n)).expect("no rows")
    }

    pub fn n(&self) -> usize {
        self.generator.n_cols()
    }

    pub fn k(&self) -> usize {
        self.generator.n_rows()
    }

    pub fn generator(&self) -> &BitMatrix {
        &self.generator
    }

    /// Rows span `C^⊥`.
    pub fn parity_check(&self) -> &BitMatrix {
        &self.parity_check
    }

    pub fn dual(&self) -> Self {
        Self {
            generator: self.parity_check.clone(),
            parity_check: self.generator.echelon().to_matrix(),
        }
    }

    pub fn syndrome(&self, v: &BitVector) -> Result<BitVector> {
        self.parity_check.mul_vec(v)
    }

    pub fn contains(&self, v: &BitVector) -> Result<bool> {
        Ok(self.syndrome(v)?.is_zero())
    }

    /// All `2^k` codewords in lexicographic coefficient order.
    pub fn codewords(&self) -> Result<SpanIter> {
        self.generator.span_enumerate()
    }

    /// Minimum weight of a nonzero codeword; `n + 1` for the zero code,
    /// which has none.
    pub fn min_distance(&self) -> Result<usize> {
        let k = self.k();
        if k > MAX_ENUMERATED_DIMENSION {
            return Err(Error::CodeTooLarge {
                k,
                limit: MAX_ENUMERATED_DIMENSION,
            });
        }
        Ok(self
            .codewords()?
            .skip(1)
            .map(|c| c.weight())
            .min()
            .unwrap_or(self.n() + 1))
    }

    /// Whether every pair of generator rows, including a row with itself,
    /// has even overlap, i.e. `C ⊆ C^⊥`.
    pub fn is_weakly_self_dual(&self) -> bool {
        let rows = self.generator.rows();
        rows.iter()
            .enumerate()
            .all(|(i, a)| rows[i..].iter().all(|b| !a.dot(b)))
    }

    /// `"n k"` header followed by `k` generator rows; `#` starts a comment.
    pub fn to_text(&self) -> String {
        let mut out = format!("{} {}\n", self.n(), self.k());
        for row in self.generator.rows() {
            let _ = writeln!(out, "{row}");
        }
        out
    }

    pub fn from_text(text: &str) -> Result<Self> {
        let mut lines = content_lines(text);
        let (line_no, header) = lines
            .next()
            .ok_or_else(|| parse_err(1, "empty code file"))?;
        let fields: Vec<&str> = header.split_whitespace().collect();
        let [n, k] = fields.as_slice() else {
            return Err(parse_err(line_no, "expected header 'n k'"));
        };
        let n: usize = n.parse().map_err(|_| parse_err(line_no, "bad length"))?;
        let k: usize = k.parse().map_err(|_| parse_err(line_no, "bad dimension"))?;
        let mut rows = Vec::with_capacity(k);
        for (line_no, line) in lines {
            let row: BitVector = line
                .parse()
                .map_err(|e: Error| parse_err(line_no, e.to_string()))?;
            if row.len() != n {
                return Err(parse_err(
                    line_no,
                    format!("row has length {} instead of {n}", row.len()),
                ));
            }
            rows.push(row);
        }
        if rows.len() != k {
            return Err(parse_err(
                line_no,
                format!("header promises {k} rows, found {}", rows.len()),
            ));
        }
        Self::new(BitMatrix::new(n, rows)?).map_err(|e| parse_err(line_no, e.to_string()))
    }
}

/// Non-blank, non-comment lines with 1-based line numbers.
pub(crate) fn content_lines(text: &str) -> impl Iterator<Item = (usize, &str)> {
    text.lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'))
}

/// A linear map `τ: C → {0,1}^n` given on a basis of `C`. Distinct
/// codewords have images in distinct cosets of `C^⊥`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TauMap {
    domain_basis: BitMatrix,
    images: BitMatrix,
    coordinates: BitMatrix,
}

impl TauMap {
    pub fn new(domain_basis: BitMatrix, images: BitMatrix) -> Result<Self> {
        check_len(domain_basis.n_cols(), images.n_cols())?;
        if domain_basis.n_rows() != images.n_rows() {
            return Err(Error::Shape(format!(
                "{} basis rows but {} images",
                domain_basis.n_rows(),
                images.n_rows()
            )));
        }
        if !domain_basis.has_independent_rows() {
            return Err(Error::DependentRows);
        }
        let coordinates = domain_basis.transpose();
        Ok(Self {
            domain_basis,
            images,
            coordinates,
        })
    }

    pub fn domain_basis(&self) -> &BitMatrix {
        &self.domain_basis
    }

    pub fn images(&self) -> &BitMatrix {
        &self.images
    }

    /// `τ(c)`; errors when `c` is outside the domain.
    pub fn apply(&self, c: &BitVector) -> Result<BitVector> {
        let coeffs = self.coordinates.solve(c)?.ok_or(Error::NotContained)?;
        let mut out = BitVector::zeros(self.images.n_cols());
        for i in coeffs.iter_ones() {
            out ^= self.images.row(i);
        }
        Ok(out)
    }

    /// Every `(c, τ(c))`, in the domain's lexicographic coefficient order.
    pub fn pairs(&self) -> Result<Vec<(BitVector, BitVector)>> {
        let joined: Vec<BitVector> = self
            .domain_basis
            .rows()
            .iter()
            .zip(self.images.rows())
            .map(|(c, h)| c.concat(h))
            .collect();
        let n = self.domain_basis.n_cols();
        let joined = BitMatrix::new(2 * n, joined)?;
        Ok(joined
            .span_enumerate()?
            .map(|v| (v.slice(0, n), v.slice(n, 2 * n)))
            .collect())
    }

    /// Whether `τ(c) + τ(c')` avoids `C^⊥` for all `c ≠ c'`. With `τ`
    /// linear this is: no nonzero image combination lies in `C^⊥`.
    pub fn is_coset_injective(&self, code: &LinearBinaryCode) -> Result<bool> {
        Ok(code
            .dual()
            .generator()
            .vstack(&self.images)?
            .has_independent_rows())
    }
}

/// A linear `τ` whose images extend a basis of `C^⊥` to the whole space,
/// picking the lexicographically smallest vector at each step.
pub fn build_tau(code: &LinearBinaryCode) -> Result<TauMap> {
    let images = complete_basis(code.parity_check(), &BitMatrix::identity(code.n()))?;
    TauMap::new(code.generator().clone(), images)
}

fn check_css_size(code: &LinearBinaryCode) -> Result<()> {
    let n = code.n();
    let k = code.k();
    let terms = n - k;
    if terms >= 63 || (1usize << terms) > MAX_MATERIALIZED_TERMS {
        return Err(Error::CodeTooLarge {
            k: terms,
            limit: MAX_MATERIALIZED_TERMS.trailing_zeros() as usize,
        });
    }
    Ok(())
}

/// `Σ_{(c, τ(c))} (−1)^{τ(c)·a} |c + a⟩`; pass an all-zero `τ` for the plain
/// coset state.
pub(crate) fn signed_coset(
    pairs: &[(BitVector, BitVector)],
    a: &BitVector,
) -> Result<SignedSuperposition> {
    let n = a.len();
    SignedSuperposition::from_terms(
        n,
        pairs.iter().map(|(c, t)| {
            let coef = if t.dot(a) {
                -BigInt::one()
            } else {
                BigInt::one()
            };
            (c ^ a, coef)
        }),
    )
}

fn css_basis(code: &LinearBinaryCode, tau: Option<&TauMap>) -> Result<QuantumCodeBasis> {
    if !code.is_weakly_self_dual() {
        return Err(Error::NotWeaklySelfDual);
    }
    check_css_size(code)?;
    let n = code.n();
    let pairs = match tau {
        Some(t) => {
            if t.domain_basis().rows() != code.generator().rows() {
                return Err(Error::Shape(
                    "tau is defined on a different basis of C".into(),
                ));
            }
            t.pairs()?
        }
        None => code
            .codewords()?
            .map(|c| (c, BitVector::zeros(n)))
            .collect(),
    };
    let reps = coset_reps(code.generator(), code.parity_check())?;
    let vectors = reps
        .iter()
        .map(|a| signed_coset(&pairs, a))
        .collect::<Result<Vec<_>>>()?;
    let d = code.dual().min_distance()?;
    QuantumCodeBasis::new(n, vectors, Some(d))
}

/// `|x_a⟩ = Σ_{c ∈ C} |c + a⟩` for each coset `a` of `C` in `C^⊥`, zero
/// coset first; declared distance `dist(C^⊥)`.
pub fn build_css(code: &LinearBinaryCode) -> Result<QuantumCodeBasis> {
    css_basis(code, None)
}

/// `|y_a⟩ = Σ_{c ∈ C} (−1)^{τ(c)·a} |c + a⟩` over the same cosets as
/// [`build_css`].
pub fn build_twisted_css(code: &LinearBinaryCode, tau: &TauMap) -> Result<QuantumCodeBasis> {
    css_basis(code, Some(tau))
}
