//! Sparse unnormalized superpositions with exact integer coefficients.

use std::collections::{BTreeMap, HashMap};
use std::fmt::Write as _;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::error::{check_len, parse_err, Error, Result};
use crate::gf2::BitVector;
use crate::pauli::PauliWord;

/// `Σ c_v |v⟩` over n-bit labels with nonzero integer coefficients.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct SignedSuperposition {
    n: usize,
    terms: BTreeMap<BitVector, BigInt>,
}

impl SignedSuperposition {
    /// The zero vector on `n` qubits.
    pub fn zero(n: usize) -> Self {
        Self {
            n,
            terms: BTreeMap::new(),
        }
    }

    pub fn basis_state(label: BitVector) -> Self {
        let n = label.len();
        let mut terms = BTreeMap::new();
        terms.insert(label, BigInt::one());
        Self { n, terms }
    }

    /// Builds a state from `(label, coefficient)` pairs. Zero coefficients
    /// are dropped; repeated labels are rejected.
    pub fn from_terms(
        n: usize,
        terms: impl IntoIterator<Item = (BitVector, BigInt)>,
    ) -> Result<Self> {
        let mut out = Self::zero(n);
        for (label, c) in terms {
            check_len(n, label.len())?;
            if out.terms.contains_key(&label) {
                return Err(Error::Input(format!("duplicate label {label}")));
            }
            if !c.is_zero() {
                out.terms.insert(label, c);
            }
        }
        Ok(out)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn support_size(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Labels with nonzero coefficient, in lexicographic order.
    pub fn support(&self) -> impl Iterator<Item = &BitVector> {
        self.terms.keys()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&BitVector, &BigInt)> {
        self.terms.iter()
    }

    pub fn coefficient(&self, label: &BitVector) -> Option<&BigInt> {
        self.terms.get(label)
    }

    pub fn norm_squared(&self) -> BigInt {
        self.terms.values().map(|c| c * c).sum()
    }

    pub fn scaled(&self, factor: &BigInt) -> Self {
        if factor.is_zero() {
            return Self::zero(self.n);
        }
        Self {
            n: self.n,
            terms: self
                .terms
                .iter()
                .map(|(k, c)| (k.clone(), c * factor))
                .collect(),
        }
    }

    /// Divides every coefficient exactly by `divisor`; fails if any
    /// coefficient is not a multiple.
    pub fn exact_div(&self, divisor: &BigInt) -> Result<Self> {
        let mut terms = BTreeMap::new();
        for (k, c) in &self.terms {
            if !(c % divisor).is_zero() {
                return Err(Error::Shape(format!(
                    "coefficient {c} not divisible by {divisor}"
                )));
            }
            terms.insert(k.clone(), c / divisor);
        }
        Ok(Self { n: self.n, terms })
    }

    pub fn apply(&self, p: &PauliWord) -> Result<Self> {
        apply_pauli(p, self)
    }

    /// Text form: one `<coefficient> <bitstring>` line per term.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for (label, c) in &self.terms {
            let _ = writeln!(out, "{c} {label}");
        }
        out
    }

    pub fn from_text(n: usize, text: &str) -> Result<Self> {
        let mut terms = Vec::new();
        for (idx, line) in text.lines().enumerate() {
            let line = line.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            terms.push(parse_term(idx + 1, n, line)?);
        }
        Self::from_terms(n, terms)
    }
}

fn parse_term(line_no: usize, n: usize, line: &str) -> Result<(BitVector, BigInt)> {
    let mut parts = line.split_whitespace();
    let (Some(c), Some(bits), None) = (parts.next(), parts.next(), parts.next()) else {
        return Err(parse_err(line_no, "expected '<coefficient> <bitstring>'"));
    };
    let coef: BigInt = c
        .parse()
        .map_err(|_| parse_err(line_no, format!("bad coefficient {c:?}")))?;
    let label: BitVector = bits
        .parse()
        .map_err(|e: Error| parse_err(line_no, e.to_string()))?;
    if label.len() != n {
        return Err(parse_err(
            line_no,
            format!("label {bits} has {} bits, expected {n}", label.len()),
        ));
    }
    Ok((label, coef))
}

#[inline]
fn phase(p: &PauliWord, v: &BitVector) -> bool {
    p.sign() ^ v.dot(p.z())
}

/// `(-1)^λ X_α Z_β Σ c_v |v⟩ = Σ (-1)^{λ + v·β} c_v |v + α⟩`.
pub fn apply_pauli(p: &PauliWord, s: &SignedSuperposition) -> Result<SignedSuperposition> {
    check_len(s.n, p.n())?;
    let terms = s
        .terms
        .iter()
        .map(|(v, c)| {
            let c = if phase(p, v) { -c } else { c.clone() };
            (v ^ p.x(), c)
        })
        .collect();
    Ok(SignedSuperposition { n: s.n, terms })
}

/// Exact real inner product `⟨x|y⟩`.
pub fn inner(x: &SignedSuperposition, y: &SignedSuperposition) -> Result<BigInt> {
    check_len(x.n, y.n)?;
    let (small, large) = if x.terms.len() <= y.terms.len() {
        (x, y)
    } else {
        (y, x)
    };
    Ok(small
        .terms
        .iter()
        .filter_map(|(v, c)| large.terms.get(v).map(|d| c * d))
        .sum())
}

/// `⟨x| p |y⟩` without materializing `p|y⟩`.
pub fn matrix_element(
    x: &SignedSuperposition,
    p: &PauliWord,
    y: &SignedSuperposition,
) -> Result<BigInt> {
    check_len(x.n, y.n)?;
    check_len(x.n, p.n())?;
    let mut acc = BigInt::zero();
    if y.terms.len() <= x.terms.len() {
        for (v, c) in &y.terms {
            if let Some(d) = x.terms.get(&(v ^ p.x())) {
                let t = c * d;
                if phase(p, v) {
                    acc -= t;
                } else {
                    acc += t;
                }
            }
        }
    } else {
        for (u, d) in &x.terms {
            let v = u ^ p.x();
            if let Some(c) = y.terms.get(&v) {
                let t = c * d;
                if phase(p, &v) {
                    acc -= t;
                } else {
                    acc += t;
                }
            }
        }
    }
    Ok(acc)
}

/// `Σ_{c ∈ words} ±|c⟩`; `negative` picks the −1 labels (all +1 when absent).
pub fn superpose_code(
    words: &[BitVector],
    negative: Option<&dyn Fn(&BitVector) -> bool>,
) -> Result<SignedSuperposition> {
    let first = words
        .first()
        .ok_or_else(|| Error::Input("cannot superpose an empty set of words".into()))?;
    let n = first.len();
    SignedSuperposition::from_terms(
        n,
        words.iter().map(|w| {
            let c = match negative {
                Some(f) if f(w) => -BigInt::one(),
                _ => BigInt::one(),
            };
            (w.clone(), c)
        }),
    )
}

/// Maps each label to the `(vector index, coefficient)` pairs holding it.
pub(crate) fn label_index(
    vectors: &[SignedSuperposition],
) -> HashMap<&BitVector, Vec<(usize, &BigInt)>> {
    let mut index: HashMap<&BitVector, Vec<(usize, &BigInt)>> = HashMap::new();
    for (i, v) in vectors.iter().enumerate() {
        for (label, c) in v.terms() {
            index.entry(label).or_default().push((i, c));
        }
    }
    index
}

/// An ordered basis of a code space: pairwise orthogonal vectors sharing
/// one squared norm, together with the declared length, dimension and
/// (when known) distance.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QuantumCodeBasis {
    n: usize,
    vectors: Vec<SignedSuperposition>,
    distance: Option<usize>,
}

impl QuantumCodeBasis {
    pub fn new(
        n: usize,
        vectors: Vec<SignedSuperposition>,
        distance: Option<usize>,
    ) -> Result<Self> {
        if vectors.is_empty() {
            return Err(Error::Shape(
                "a code basis needs at least one vector".into(),
            ));
        }
        for v in &vectors {
            check_len(n, v.n())?;
            if v.is_zero() {
                return Err(Error::Shape("basis contains the zero vector".into()));
            }
        }
        let norm = vectors[0].norm_squared();
        if let Some(i) = vectors.iter().position(|v| v.norm_squared() != norm) {
            return Err(Error::Shape(format!(
                "vector {i} has squared norm {} but vector 0 has {norm}",
                vectors[i].norm_squared()
            )));
        }
        let mut gram: HashMap<(usize, usize), BigInt> = HashMap::new();
        for entries in label_index(&vectors).values() {
            for (a, &(i, ci)) in entries.iter().enumerate() {
                for &(j, cj) in &entries[a + 1..] {
                    *gram.entry((i, j)).or_default() += ci * cj;
                }
            }
        }
        if let Some(((i, j), _)) = gram.iter().filter(|(_, v)| !v.is_zero()).min() {
            return Err(Error::Shape(format!(
                "vectors {i} and {j} are not orthogonal"
            )));
        }
        Ok(Self {
            n,
            vectors,
            distance,
        })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// Number of basis vectors, `K`.
    pub fn dimension(&self) -> usize {
        self.vectors.len()
    }

    pub fn distance(&self) -> Option<usize> {
        self.distance
    }

    pub fn with_distance(mut self, distance: Option<usize>) -> Self {
        self.distance = distance;
        self
    }

    pub fn vectors(&self) -> &[SignedSuperposition] {
        &self.vectors
    }

    pub fn into_vectors(self) -> Vec<SignedSuperposition> {
        self.vectors
    }

    /// Shared squared norm of the basis vectors.
    pub fn norm_squared(&self) -> BigInt {
        self.vectors[0].norm_squared()
    }

    /// Exact test for `s ∈ span(basis)`: the squared length of the
    /// projection, `Σ ⟨b_i|s⟩² / N`, must equal `⟨s|s⟩`.
    pub fn spans(&self, s: &SignedSuperposition) -> Result<bool> {
        check_len(self.n, s.n())?;
        let mut projected = BigInt::zero();
        for b in &self.vectors {
            let ip = inner(b, s)?;
            projected += &ip * &ip;
        }
        Ok(projected == self.norm_squared() * s.norm_squared())
    }

    /// `"n K d"`, with `?` for an undeclared distance.
    pub fn header(&self) -> String {
        match self.distance {
            Some(d) => format!("{} {} {}", self.n, self.dimension(), d),
            None => format!("{} {} ?", self.n, self.dimension()),
        }
    }

    /// Basis file text. `comments` become leading `# ` lines.
    pub fn to_text(&self, comments: &[String]) -> String {
        let mut out = String::new();
        for c in comments {
            let _ = writeln!(out, "# {c}");
        }
        let _ = writeln!(out, "{}", self.header());
        for (i, v) in self.vectors.iter().enumerate() {
            if i > 0 {
                out.push('\n');
            }
            out.push_str(&v.to_text());
        }
        out
    }

    pub fn from_text(text: &str) -> Result<Self> {
        let mut lines = text
            .lines()
            .enumerate()
            .filter(|(_, l)| !l.trim_start().starts_with('#'));
        let (header_no, header) = loop {
            match lines.next() {
                Some((_, l)) if l.trim().is_empty() => continue,
                Some((i, l)) => break (i + 1, l.trim()),
                None => return Err(parse_err(1, "missing 'n K d' header")),
            }
        };
        let fields: Vec<&str> = header.split_whitespace().collect();
        if fields.len() != 3 {
            return Err(parse_err(header_no, "header must be 'n K d'"));
        }
        let n: usize = fields[0]
            .parse()
            .map_err(|_| parse_err(header_no, "bad n"))?;
        let k: usize = fields[1]
            .parse()
            .map_err(|_| parse_err(header_no, "bad K"))?;
        let d = match fields[2] {
            "?" => None,
            s => Some(
                s.parse::<usize>()
                    .map_err(|_| parse_err(header_no, "bad d"))?,
            ),
        };
        let mut groups: Vec<Vec<(BitVector, BigInt)>> = Vec::new();
        let mut current: Vec<(BitVector, BigInt)> = Vec::new();
        for (idx, line) in lines {
            let line = line.trim();
            if line.is_empty() {
                if !current.is_empty() {
                    groups.push(std::mem::take(&mut current));
                }
                continue;
            }
            current.push(parse_term(idx + 1, n, line)?);
        }
        if !current.is_empty() {
            groups.push(current);
        }
        if groups.len() != k {
            return Err(parse_err(
                header_no,
                format!("header declares K={k} but {} vectors follow", groups.len()),
            ));
        }
        let vectors = groups
            .into_iter()
            .map(|g| SignedSuperposition::from_terms(n, g))
            .collect::<Result<Vec<_>>>()?;
        Self::new(n, vectors, d)
    }
}
