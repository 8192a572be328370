//! Stabilizer groups, their code spaces, and the sign-table description of
//! additive codes.
//!
//! After row reduction a generating set splits into `r` words
//! `ε_i X_{a_i} Z_{b_i}` with independent `a_i` and `m - r` pure `Z_{p_j}`
//! words. Picking `Γ` so that `{a_i} ∪ Γ` is a basis of the space
//! orthogonal to every `p_j`, the code space has one basis vector per
//! `γ ∈ Γ`:
//!
//! ```text
//! |x_γ⟩ = Σ_{c ∈ C} sgn(c + γ) |c + γ⟩,     C = span{a_i}
//! ```
//!
//! The table of signs `sgn(c + γ)` is a function of `sgn(a_i)`,
//! `sgn(a_i + a_j)` and `sgn(a_i + γ_j)` alone, and any table obeying those
//! relations comes from a stabilizer group, which
//! [`rebuild_stabilizer`] reconstructs.

use std::collections::HashMap;
use std::fmt::Write as _;

use num_bigint::BigInt;
use rayon::prelude::*;

use crate::error::{check_len, parse_err, Error, Result};
use crate::gf2::{complete_basis, BitMatrix, BitVector};
use crate::pauli::PauliWord;
use crate::states::{QuantumCodeBasis, SignedSuperposition};

/// An abelian group of self-inverse signed Pauli words, given by
/// independent generators. Such a group never contains `-I`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StabilizerGroup {
    n: usize,
    generators: Vec<PauliWord>,
}

impl StabilizerGroup {
    pub fn new(n: usize, generators: Vec<PauliWord>) -> Result<Self> {
        for g in &generators {
            check_len(n, g.n())?;
        }
        for (i, g) in generators.iter().enumerate() {
            if !g.is_self_inverse() {
                return Err(Error::InvalidStabilizer(format!(
                    "generator {i} ({g}) squares to -I"
                )));
            }
            for (j, h) in generators.iter().enumerate().skip(i + 1) {
                if !g.commutes(h)? {
                    return Err(Error::InvalidStabilizer(format!(
                        "generators {i} and {j} anticommute"
                    )));
                }
            }
        }
        let group = Self { n, generators };
        if !group.check_matrix().has_independent_rows() {
            return Err(Error::InvalidStabilizer(
                "generators are not independent".into(),
            ));
        }
        Ok(group)
    }

    /// The group `{I}` on `n` qubits.
    pub fn trivial(n: usize) -> Self {
        Self {
            n,
            generators: Vec::new(),
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// Number of generators `m`; the group has `2^m` elements.
    pub fn len(&self) -> usize {
        self.generators.len()
    }

    pub fn is_empty(&self) -> bool {
        self.generators.is_empty()
    }

    pub fn generators(&self) -> &[PauliWord] {
        &self.generators
    }

    /// The `m × 2n` matrix with rows `(α_i | β_i)`.
    pub fn check_matrix(&self) -> BitMatrix {
        let rows = self
            .generators
            .iter()
            .map(|g| g.symplectic().to_flat())
            .collect();
        BitMatrix::new(2 * self.n, rows).expect("generator lengths checked")
    }

    /// All `2^m` elements, visited in Gray-code order of the generator
    /// exponents so each step is a single multiplication.
    pub fn elements(&self) -> Vec<PauliWord> {
        let m = self.generators.len();
        let mut out = Vec::with_capacity(1 << m);
        let mut running = PauliWord::identity(self.n);
        out.push(running.clone());
        for t in 1u64..(1u64 << m) {
            let g = &self.generators[t.trailing_zeros() as usize];
            running = running.compose_unchecked(g);
            out.push(running.clone());
        }
        out
    }

    /// Whether every generator fixes `s`.
    pub fn fixes(&self, s: &SignedSuperposition) -> Result<bool> {
        for g in &self.generators {
            if &s.apply(g)? != s {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// One generator per line; an `n <qubits>` line is written only for the
    /// empty group, whose length cannot be read off a generator.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        if self.generators.is_empty() {
            let _ = writeln!(out, "n {}", self.n);
        }
        for g in &self.generators {
            let _ = writeln!(out, "{g}");
        }
        out
    }

    pub fn from_text(text: &str) -> Result<Self> {
        let mut n: Option<usize> = None;
        let mut gens = Vec::new();
        for (idx, line) in text.lines().enumerate() {
            let line = line.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            if let Some(rest) = line.strip_prefix("n ") {
                n = Some(
                    rest.trim()
                        .parse()
                        .map_err(|_| parse_err(idx + 1, "bad qubit count"))?,
                );
                continue;
            }
            let g: PauliWord = line
                .parse()
                .map_err(|e: Error| parse_err(idx + 1, e.to_string()))?;
            gens.push(g);
        }
        let n = match (n, gens.first()) {
            (Some(n), _) => n,
            (None, Some(g)) => g.n(),
            (None, None) => return Err(parse_err(1, "empty stabilizer file needs an 'n' line")),
        };
        Self::new(n, gens)
    }
}

/// A generating set rearranged into the block form
/// `[A | B ; 0 | P]`, with `A` (the first `r` rows) in reduced echelon
/// form and `P` full rank.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NormalForm {
    n: usize,
    generators: Vec<PauliWord>,
    r: usize,
}

impl NormalForm {
    pub fn generators(&self) -> &[PauliWord] {
        &self.generators
    }

    /// Rank of the X part.
    pub fn r(&self) -> usize {
        self.r
    }

    pub fn a(&self) -> BitMatrix {
        self.block(0..self.r, |g| g.x())
    }

    pub fn b(&self) -> BitMatrix {
        self.block(0..self.r, |g| g.z())
    }

    pub fn p(&self) -> BitMatrix {
        self.block(self.r..self.generators.len(), |g| g.z())
    }

    /// Sign bits of the transformed generators (`true` for −1).
    pub fn signs(&self) -> Vec<bool> {
        self.generators.iter().map(PauliWord::sign).collect()
    }

    fn block(
        &self,
        range: std::ops::Range<usize>,
        part: impl Fn(&PauliWord) -> &BitVector,
    ) -> BitMatrix {
        let rows = self.generators[range]
            .iter()
            .map(|g| part(g).clone())
            .collect();
        BitMatrix::new(self.n, rows).expect("lengths fixed by the group")
    }
}

fn eliminate(
    rows: &mut [PauliWord],
    start: usize,
    n: usize,
    part: impl Fn(&PauliWord) -> &BitVector,
) -> usize {
    let mut next = start;
    for col in 0..n {
        let Some(found) = (next..rows.len()).find(|&i| part(&rows[i]).get(col)) else {
            continue;
        };
        rows.swap(next, found);
        let pivot = rows[next].clone();
        for (i, row) in rows.iter_mut().enumerate() {
            if i != next && part(row).get(col) {
                *row = row.compose_unchecked(&pivot);
            }
        }
        next += 1;
    }
    next
}

/// Row-reduces the generators; every new row is a product of old ones, so
/// its sign is the sign of that group element.
pub fn normal_form(s: &StabilizerGroup) -> Result<NormalForm> {
    let n = s.n();
    let mut rows = s.generators().to_vec();
    let r = eliminate(&mut rows, 0, n, PauliWord::x);
    // Only the Z-only tail is reduced on its Z part.
    let mut tail = rows.split_off(r);
    eliminate(&mut tail, 0, n, PauliWord::z);
    rows.extend(tail);
    let nf = NormalForm {
        n,
        generators: rows,
        r,
    };
    let p = nf.p();
    if let Some((i, j)) = nf
        .a()
        .rows()
        .iter()
        .enumerate()
        .flat_map(|(i, a)| p.rows().iter().enumerate().map(move |(j, q)| (i, j, a, q)))
        .find(|(_, _, a, q)| a.dot(q))
        .map(|(i, j, _, _)| (i, j))
    {
        return Err(Error::InvalidStabilizer(format!(
            "X part {i} is not orthogonal to Z-only row {j}"
        )));
    }
    if !nf.p().has_independent_rows() {
        return Err(Error::InvalidStabilizer(
            "Z-only block is rank deficient".into(),
        ));
    }
    Ok(nf)
}

/// A code space basis together with the data it was built from.
#[derive(Clone, Debug)]
pub struct Codespace {
    pub basis: QuantumCodeBasis,
    pub normal_form: NormalForm,
    /// Rows `γ_1..γ_{n-m}`; basis vector `t` belongs to the `t`-th element of
    /// `span(gamma)` in lexicographic coefficient order.
    pub gamma: BitMatrix,
}

/// Builds `|x_γ⟩ = Σ_{φ ∈ H} φ|γ⟩` for every `γ ∈ Γ`, rescaled so the
/// coefficients are ±1.
pub fn codespace(s: &StabilizerGroup) -> Result<Codespace> {
    let n = s.n();
    let m = s.len();
    let nf = normal_form(s)?;
    let a = nf.a();
    let d = nf.p().nullspace();
    let gamma = complete_basis(&a, &d)?;
    debug_assert_eq!(gamma.n_rows(), n - m);
    let elements = s.elements();
    if let Some(w) = elements.iter().find(|e| e.sign() && e.x().is_zero()) {
        return Err(Error::InvalidStabilizer(format!(
            "{w} is a negated Z-type element, so no codeword has a |γ⟩ term with γ in a linear complement"
        )));
    }
    let magnitude = 1i64 << (m - nf.r());
    let mut vectors = Vec::with_capacity(1 << gamma.n_rows());
    for g in gamma.span_enumerate()? {
        let mut acc: HashMap<BitVector, i64> = HashMap::new();
        for phi in &elements {
            let sign = phi.sign() ^ g.dot(phi.z());
            *acc.entry(&g ^ phi.x()).or_default() += if sign { -1 } else { 1 };
        }
        acc.retain(|_, c| *c != 0);
        if acc.is_empty() {
            return Err(Error::InvalidStabilizer("group sum vanishes".into()));
        }
        let mut terms = Vec::with_capacity(acc.len());
        for (label, c) in acc {
            if c.abs() != magnitude {
                return Err(Error::InvalidStabilizer(format!(
                    "coefficient {c} on {label} differs from ±{magnitude}"
                )));
            }
            terms.push((label, BigInt::from(c / magnitude)));
        }
        vectors.push(SignedSuperposition::from_terms(n, terms)?);
    }
    Ok(Codespace {
        basis: QuantumCodeBasis::new(n, vectors, None)?,
        normal_form: nf,
        gamma,
    })
}

pub fn codespace_basis(s: &StabilizerGroup) -> Result<QuantumCodeBasis> {
    Ok(codespace(s)?.basis)
}

/// Signs `sgn(c + γ)` over `C × Γ`.
///
/// Entries are addressed by coefficient masks: bit `i` of `c_mask` selects
/// `a_i`, bit `j` of `g_mask` selects `γ_j`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SignTable {
    c_basis: BitMatrix,
    gamma_basis: BitMatrix,
    negative: Vec<bool>,
}

fn subset_sums(rows: &[BitVector], n: usize) -> Vec<BitVector> {
    let mut out = Vec::with_capacity(1 << rows.len());
    out.push(BitVector::zeros(n));
    for mask in 1usize..(1 << rows.len()) {
        let low = mask.trailing_zeros() as usize;
        let v = &out[mask & (mask - 1)] ^ &rows[low];
        out.push(v);
    }
    out
}

impl SignTable {
    fn empty(c_basis: BitMatrix, gamma_basis: BitMatrix) -> Result<Self> {
        check_len(c_basis.n_cols(), gamma_basis.n_cols())?;
        if !c_basis.vstack(&gamma_basis)?.has_independent_rows() {
            return Err(Error::DependentRows);
        }
        let len = 1usize << (c_basis.n_rows() + gamma_basis.n_rows());
        Ok(Self {
            c_basis,
            gamma_basis,
            negative: vec![false; len],
        })
    }

    pub fn n(&self) -> usize {
        self.c_basis.n_cols()
    }

    /// Dimension of `C`.
    pub fn r(&self) -> usize {
        self.c_basis.n_rows()
    }

    /// Dimension of `Γ`.
    pub fn g(&self) -> usize {
        self.gamma_basis.n_rows()
    }

    pub fn c_basis(&self) -> &BitMatrix {
        &self.c_basis
    }

    pub fn gamma_basis(&self) -> &BitMatrix {
        &self.gamma_basis
    }

    #[inline]
    fn index(&self, c_mask: usize, g_mask: usize) -> usize {
        (g_mask << self.r()) | c_mask
    }

    pub fn is_negative(&self, c_mask: usize, g_mask: usize) -> bool {
        self.negative[self.index(c_mask, g_mask)]
    }

    /// `sgn(c + γ)` as ±1.
    pub fn sgn(&self, c_mask: usize, g_mask: usize) -> i8 {
        if self.is_negative(c_mask, g_mask) {
            -1
        } else {
            1
        }
    }

    pub fn set(&mut self, c_mask: usize, g_mask: usize, negative: bool) {
        let i = self.index(c_mask, g_mask);
        self.negative[i] = negative;
    }

    /// Splits `sgn(label)` into `(c, γ)` parts: returns `(c, γ)`.
    pub fn parts(&self, c_mask: usize, g_mask: usize) -> (BitVector, BitVector) {
        let n = self.n();
        let mut c = BitVector::zeros(n);
        for i in 0..self.r() {
            if c_mask >> i & 1 == 1 {
                c ^= self.c_basis.row(i);
            }
        }
        let mut g = BitVector::zeros(n);
        for j in 0..self.g() {
            if g_mask >> j & 1 == 1 {
                g ^= self.gamma_basis.row(j);
            }
        }
        (c, g)
    }

    /// ```text
    /// SIGNS <n> <r> <g>
    /// A <bits>                         (r lines)
    /// G <bits>                         (g lines)
    /// SGN <c-bits> <gamma-bits> <±1>   (2^r · 2^g lines)
    /// ```
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "SIGNS {} {} {}", self.n(), self.r(), self.g());
        for a in self.c_basis.rows() {
            let _ = writeln!(out, "A {a}");
        }
        for g in self.gamma_basis.rows() {
            let _ = writeln!(out, "G {g}");
        }
        let cs = subset_sums(self.c_basis.rows(), self.n());
        let gs = subset_sums(self.gamma_basis.rows(), self.n());
        for (gm, g) in gs.iter().enumerate() {
            for (cm, c) in cs.iter().enumerate() {
                let s = if self.is_negative(cm, gm) { "-1" } else { "+1" };
                let _ = writeln!(out, "SGN {c} {g} {s}");
            }
        }
        out
    }

    pub fn from_text(text: &str) -> Result<Self> {
        let mut dims: Option<(usize, usize, usize)> = None;
        let mut a_rows = Vec::new();
        let mut g_rows = Vec::new();
        let mut entries = Vec::new();
        for (idx, line) in text.lines().enumerate() {
            let line_no = idx + 1;
            let line = line.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let fields: Vec<&str> = line.split_whitespace().collect();
            let bits = |s: &str| -> Result<BitVector> {
                s.parse()
                    .map_err(|e: Error| parse_err(line_no, e.to_string()))
            };
            match fields.as_slice() {
                ["SIGNS", n, r, g] => {
                    let num = |s: &str| {
                        s.parse::<usize>()
                            .map_err(|_| parse_err(line_no, "bad count"))
                    };
                    dims = Some((num(n)?, num(r)?, num(g)?));
                }
                ["A", v] => a_rows.push(bits(v)?),
                ["G", v] => g_rows.push(bits(v)?),
                ["SGN", c, g, s] => {
                    let neg = match *s {
                        "+1" | "1" => false,
                        "-1" => true,
                        _ => return Err(parse_err(line_no, "sign must be +1 or -1")),
                    };
                    entries.push((line_no, bits(c)?, bits(g)?, neg));
                }
                _ => return Err(parse_err(line_no, "unrecognized sign-table line")),
            }
        }
        let (n, r, g) = dims.ok_or_else(|| parse_err(1, "missing SIGNS header"))?;
        if a_rows.len() != r || g_rows.len() != g {
            return Err(parse_err(
                1,
                "basis row counts disagree with the SIGNS header",
            ));
        }
        let mut table = Self::empty(BitMatrix::new(n, a_rows)?, BitMatrix::new(n, g_rows)?)?;
        let c_index: HashMap<BitVector, usize> = subset_sums(table.c_basis.rows(), n)
            .into_iter()
            .enumerate()
            .map(|(i, v)| (v, i))
            .collect();
        let g_index: HashMap<BitVector, usize> = subset_sums(table.gamma_basis.rows(), n)
            .into_iter()
            .enumerate()
            .map(|(i, v)| (v, i))
            .collect();
        let mut seen = vec![false; table.negative.len()];
        for (line_no, c, gv, neg) in entries {
            let (Some(&cm), Some(&gm)) = (c_index.get(&c), g_index.get(&gv)) else {
                return Err(parse_err(line_no, "entry outside C x Gamma"));
            };
            let i = table.index(cm, gm);
            if seen[i] {
                return Err(parse_err(line_no, "duplicate sign entry"));
            }
            seen[i] = true;
            table.negative[i] = neg;
        }
        if seen.iter().any(|s| !s) {
            return Err(parse_err(1, "sign table is incomplete"));
        }
        Ok(table)
    }
}

/// Reads `sgn(c + γ)` off a basis whose vectors are ±1 superpositions over
/// single cosets `γ + C`, one per `γ ∈ span(gamma)`.
pub fn extract_signs(
    basis: &QuantumCodeBasis,
    a: &BitMatrix,
    gamma: &BitMatrix,
) -> Result<SignTable> {
    let n = basis.n();
    check_len(n, a.n_cols())?;
    let mut table = SignTable::empty(a.clone(), gamma.clone())?;
    let (r, g) = (table.r(), table.g());
    if basis.dimension() != 1 << g {
        return Err(Error::Shape(format!(
            "basis has {} vectors but Gamma has 2^{g} elements",
            basis.dimension()
        )));
    }
    let cs = subset_sums(a.rows(), n);
    let gs = subset_sums(gamma.rows(), n);
    let mut locate: HashMap<BitVector, (usize, usize)> = HashMap::with_capacity(1 << (r + g));
    for (gm, gv) in gs.iter().enumerate() {
        for (cm, cv) in cs.iter().enumerate() {
            locate.insert(cv ^ gv, (cm, gm));
        }
    }
    let mut covered = vec![false; 1 << g];
    for (t, v) in basis.vectors().iter().enumerate() {
        if v.support_size() != 1 << r {
            return Err(Error::Shape(format!(
                "vector {t} has support {} instead of a full coset of size {}",
                v.support_size(),
                1usize << r
            )));
        }
        let mut coset: Option<usize> = None;
        for (label, c) in v.terms() {
            let &(cm, gm) = locate.get(label).ok_or_else(|| {
                Error::Shape(format!(
                    "label {label} of vector {t} lies outside C + Gamma"
                ))
            })?;
            if *coset.get_or_insert(gm) != gm {
                return Err(Error::Shape(format!(
                    "vector {t} spans several cosets of C"
                )));
            }
            let neg = if *c == BigInt::from(1) {
                false
            } else if *c == BigInt::from(-1) {
                true
            } else {
                return Err(Error::Shape(format!(
                    "coefficient {c} of vector {t} is not ±1"
                )));
            };
            table.set(cm, gm, neg);
        }
        let gm = coset.expect("support is nonempty");
        if std::mem::replace(&mut covered[gm], true) {
            return Err(Error::Shape(format!(
                "two vectors share the coset of vector {t}"
            )));
        }
    }
    Ok(table)
}

/// Which sign relation an entry violates.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SignIdentity {
    /// `sgn(γ) = 1`.
    GammaUnit,
    /// `sgn(Σ_S a_i) = Π sgn(a_i)^{|S|} Π_{i<j} sgn(a_i + a_j)`.
    CodeSum,
    /// `sgn(Σ_S a_i + Σ_T γ_j) = sgn(Σ_S a_i) [Π_S sgn(a_i)]^{|T|} Π sgn(a_i + γ_j)`.
    MixedSum,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SignViolation {
    pub identity: SignIdentity,
    pub c_mask: usize,
    pub g_mask: usize,
    pub expected: i8,
    pub found: i8,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SignReport {
    /// Number of table entries compared against their predicted value.
    pub checked: usize,
    pub violation: Option<SignViolation>,
}

impl SignReport {
    pub fn passed(&self) -> bool {
        self.violation.is_none()
    }
}

fn predicted_code_sum(t: &SignTable, s: usize) -> bool {
    let r = t.r();
    let size = s.count_ones();
    let mut neg = false;
    let members: Vec<usize> = (0..r).filter(|i| s >> i & 1 == 1).collect();
    if size % 2 == 1 {
        for &i in &members {
            neg ^= t.is_negative(1 << i, 0);
        }
    }
    for (x, &i) in members.iter().enumerate() {
        for &j in &members[x + 1..] {
            neg ^= t.is_negative((1 << i) ^ (1 << j), 0);
        }
    }
    neg
}

fn predicted_mixed_sum(t: &SignTable, s: usize, g_mask: usize) -> bool {
    let r = t.r();
    let mut neg = t.is_negative(s, 0);
    let members: Vec<usize> = (0..r).filter(|i| s >> i & 1 == 1).collect();
    if g_mask.count_ones() % 2 == 1 {
        for &i in &members {
            neg ^= t.is_negative(1 << i, 0);
        }
    }
    for j in (0..t.g()).filter(|j| g_mask >> j & 1 == 1) {
        for &i in &members {
            neg ^= t.is_negative(1 << i, 1 << j);
        }
    }
    neg
}

fn sign_of(neg: bool) -> i8 {
    if neg {
        -1
    } else {
        1
    }
}

/// Checks every entry of the table against the relations implied by its
/// pair entries. Order: all `γ` entries, then all code sums, then all mixed
/// sums, each by increasing mask; the first violation is reported.
pub fn verify_sign_identities(t: &SignTable) -> SignReport {
    let (r, g) = (t.r(), t.g());
    let mut checked = 0usize;
    for gm in 0..1usize << g {
        checked += 1;
        if t.is_negative(0, gm) {
            return SignReport {
                checked,
                violation: Some(SignViolation {
                    identity: SignIdentity::GammaUnit,
                    c_mask: 0,
                    g_mask: gm,
                    expected: 1,
                    found: -1,
                }),
            };
        }
    }
    let subsets = 1usize..1 << r;
    let code = subsets.clone().into_par_iter().find_map_first(|s| {
        let expected = predicted_code_sum(t, s);
        (expected != t.is_negative(s, 0)).then(|| SignViolation {
            identity: SignIdentity::CodeSum,
            c_mask: s,
            g_mask: 0,
            expected: sign_of(expected),
            found: t.sgn(s, 0),
        })
    });
    if let Some(v) = code {
        checked += v.c_mask;
        return SignReport {
            checked,
            violation: Some(v),
        };
    }
    checked += subsets.len();
    let mixed = subsets.into_par_iter().find_map_first(|s| {
        (1usize..1 << g).find_map(|gm| {
            let expected = predicted_mixed_sum(t, s, gm);
            (expected != t.is_negative(s, gm)).then(|| SignViolation {
                identity: SignIdentity::MixedSum,
                c_mask: s,
                g_mask: gm,
                expected: sign_of(expected),
                found: t.sgn(s, gm),
            })
        })
    });
    match mixed {
        Some(v) => {
            checked += (v.c_mask - 1) * ((1 << g) - 1) + v.g_mask;
            SignReport {
                checked,
                violation: Some(v),
            }
        }
        None => SignReport {
            checked: checked + ((1 << r) - 1) * ((1 << g) - 1),
            violation: None,
        },
    }
}

/// Reconstructs a stabilizer group whose code space is spanned by the
/// table's vectors: generators `sgn(a_i) X_{a_i} Z_{b_i}` with `b_i` solved
/// from the pair signs, plus `Z_p` for a basis of the vectors orthogonal to
/// both `C` and `Γ`.
pub fn rebuild_stabilizer(t: &SignTable) -> Result<StabilizerGroup> {
    let n = t.n();
    let (r, g) = (t.r(), t.g());
    let coefficients = t.c_basis.vstack(&t.gamma_basis)?;
    let mut generators = Vec::with_capacity(n - g);
    for i in 0..r {
        let own = t.is_negative(1 << i, 0);
        let mut rhs = BitVector::zeros(r + g);
        for j in 0..r {
            let bit = own ^ t.is_negative(1 << j, 0) ^ t.is_negative((1 << i) ^ (1 << j), 0);
            rhs.set(j, bit);
        }
        for j in 0..g {
            rhs.set(r + j, own ^ t.is_negative(1 << i, 1 << j));
        }
        let b = coefficients.solve(&rhs)?.ok_or_else(|| {
            Error::InvalidStabilizer(format!("no Z part solves the sign system for a_{i}"))
        })?;
        generators.push(PauliWord::new(own, t.c_basis.row(i).clone(), b)?);
    }
    for p in coefficients.nullspace().into_rows() {
        generators.push(PauliWord::z_type(p));
    }
    StabilizerGroup::new(n, generators)
}

/// True when the two groups generate the same set of signed words.
pub fn same_group(a: &StabilizerGroup, b: &StabilizerGroup) -> bool {
    if a.n() != b.n() || a.len() != b.len() {
        return false;
    }
    let mut elements = a.elements();
    elements.sort();
    b.generators()
        .iter()
        .all(|g| elements.binary_search(g).is_ok())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn pw(s: &str) -> PauliWord {
        s.parse().unwrap()
    }

    fn steane() -> StabilizerGroup {
        let h = ["1010101", "0110011", "0001111"];
        let mut gens = Vec::new();
        for row in h {
            gens.push(PauliWord::x_type(row.parse().unwrap()));
        }
        for row in h {
            gens.push(PauliWord::z_type(row.parse().unwrap()));
        }
        StabilizerGroup::new(7, gens).unwrap()
    }

    #[test]
    fn group_validation() {
        assert!(StabilizerGroup::new(1, vec![pw("+ 1|0"), pw("+ 0|1")]).is_err());
        assert!(StabilizerGroup::new(1, vec![pw("+ 1|1")]).is_err());
        assert!(StabilizerGroup::new(2, vec![pw("+ 11|00"), pw("- 11|00")]).is_err());
        assert!(StabilizerGroup::new(2, vec![pw("+ 00|00")]).is_err());
        let g = StabilizerGroup::new(2, vec![pw("+ 11|00"), pw("- 00|11")]).unwrap();
        assert_eq!(g.elements().len(), 4);
        assert!(g.elements().iter().all(|e| !(e.is_scalar() && e.sign())));
    }

    #[test]
    fn negated_z_element_has_no_linear_label_basis() {
        let g = StabilizerGroup::new(2, vec![pw("+ 11|00"), pw("- 00|11")]).unwrap();
        assert!(matches!(codespace(&g), Err(Error::InvalidStabilizer(_))));
        let h = StabilizerGroup::new(1, vec![pw("- 1|0")]).unwrap();
        assert_eq!(codespace(&h).unwrap().basis.dimension(), 1);
    }

    #[test]
    fn normal_form_all_z() {
        let s = StabilizerGroup::new(3, vec![pw("+ 000|110"), pw("- 000|011")]).unwrap();
        let nf = normal_form(&s).unwrap();
        assert_eq!(nf.r(), 0);
        assert_eq!(nf.a().n_rows(), 0);
        assert_eq!(nf.p().rank(), 2);
    }

    #[test]
    fn normal_form_steane() {
        let s = steane();
        let nf = normal_form(&s).unwrap();
        assert_eq!(nf.r(), 3);
        assert_eq!(nf.p().rank(), 3);
        let t = StabilizerGroup::new(7, nf.generators().to_vec()).unwrap();
        assert!(same_group(&s, &t));
    }

    #[test]
    fn normal_form_signs_are_group_products() {
        let s = StabilizerGroup::new(
            4,
            vec![
                pw("- 1100|0000"),
                pw("- 0110|1111"),
                pw("+ 1111|0000"),
                pw("- 0000|1111"),
            ],
        )
        .unwrap();
        let nf = normal_form(&s).unwrap();
        let mut elements = s.elements();
        elements.sort();
        for g in nf.generators() {
            assert!(elements.binary_search(g).is_ok(), "{g} is not in the group");
        }
    }

    #[test]
    fn codespace_all_z() {
        let gens = (0..4)
            .map(|i| PauliWord::z_type(BitVector::unit(4, i)))
            .collect();
        let s = StabilizerGroup::new(4, gens).unwrap();
        let basis = codespace_basis(&s).unwrap();
        assert_eq!(basis.dimension(), 1);
        assert_eq!(
            basis.vectors()[0],
            SignedSuperposition::basis_state(BitVector::zeros(4))
        );
    }

    #[test]
    fn codespace_steane() {
        let s = steane();
        let cs = codespace(&s).unwrap();
        assert_eq!(cs.basis.dimension(), 2);
        for v in cs.basis.vectors() {
            assert_eq!(v.support_size(), 8);
            assert!(s.fixes(v).unwrap());
        }
        let table = extract_signs(&cs.basis, &cs.normal_form.a(), &cs.gamma).unwrap();
        assert!(verify_sign_identities(&table).passed());
        assert!((0..8).all(|c| (0..2).all(|g| table.sgn(c, g) == 1)));
    }

    #[test]
    fn codespace_vectors_fixed_with_signs() {
        let s = StabilizerGroup::new(3, vec![pw("- 110|001"), pw("+ 011|100")]).unwrap();
        let cs = codespace(&s).unwrap();
        assert_eq!(cs.basis.dimension(), 2);
        for v in cs.basis.vectors() {
            assert!(s.fixes(v).unwrap());
        }
        let table = extract_signs(&cs.basis, &cs.normal_form.a(), &cs.gamma).unwrap();
        let report = verify_sign_identities(&table);
        assert!(report.passed(), "{report:?}");
        let rebuilt = rebuild_stabilizer(&table).unwrap();
        for v in cs.basis.vectors() {
            assert!(rebuilt.fixes(v).unwrap());
        }
    }

    #[test]
    fn flipped_pair_sign_breaks_code_sum() {
        let s = steane();
        let cs = codespace(&s).unwrap();
        let mut table = extract_signs(&cs.basis, &cs.normal_form.a(), &cs.gamma).unwrap();
        table.set(0b011, 0, true);
        let report = verify_sign_identities(&table);
        let v = report.violation.unwrap();
        assert_eq!(v.identity, SignIdentity::CodeSum);
        assert_eq!(v.c_mask, 0b111);
    }

    #[test]
    fn single_generator_code_sum_is_tautological() {
        let s = StabilizerGroup::new(2, vec![pw("- 11|00")]).unwrap();
        let cs = codespace(&s).unwrap();
        let table = extract_signs(&cs.basis, &cs.normal_form.a(), &cs.gamma).unwrap();
        assert_eq!(table.r(), 1);
        assert_eq!(table.sgn(1, 0), -1);
        assert!(verify_sign_identities(&table).passed());
    }

    #[test]
    fn gamma_sign_must_be_positive() {
        let s = StabilizerGroup::new(2, vec![pw("+ 11|00")]).unwrap();
        let cs = codespace(&s).unwrap();
        let mut table = extract_signs(&cs.basis, &cs.normal_form.a(), &cs.gamma).unwrap();
        table.set(0, 1, true);
        let v = verify_sign_identities(&table).violation.unwrap();
        assert_eq!(v.identity, SignIdentity::GammaUnit);
    }

    #[test]
    fn trivial_table_rebuilds_all_z() {
        let gamma = BitMatrix::from_strs(3, &["100"]).unwrap();
        let basis = QuantumCodeBasis::new(
            3,
            vec![
                SignedSuperposition::basis_state("000".parse().unwrap()),
                SignedSuperposition::basis_state("100".parse().unwrap()),
            ],
            None,
        )
        .unwrap();
        let table = extract_signs(&basis, &BitMatrix::empty(3), &gamma).unwrap();
        let s = rebuild_stabilizer(&table).unwrap();
        assert_eq!(s.len(), 2);
        assert!(s.generators().iter().all(|g| g.x().is_zero() && !g.sign()));
        for v in basis.vectors() {
            assert!(s.fixes(v).unwrap());
        }
    }

    #[test]
    fn extract_rejects_bad_shapes() {
        let a = BitMatrix::from_strs(2, &["11"]).unwrap();
        let gamma = BitMatrix::empty(2);
        let not_coset = QuantumCodeBasis::new(
            2,
            vec![SignedSuperposition::from_terms(
                2,
                vec![
                    ("00".parse().unwrap(), BigInt::from(1)),
                    ("01".parse().unwrap(), BigInt::from(1)),
                ],
            )
            .unwrap()],
            None,
        )
        .unwrap();
        assert!(matches!(
            extract_signs(&not_coset, &a, &gamma),
            Err(Error::Shape(_))
        ));
        let scaled = QuantumCodeBasis::new(
            2,
            vec![SignedSuperposition::from_terms(
                2,
                vec![
                    ("00".parse().unwrap(), BigInt::from(2)),
                    ("11".parse().unwrap(), BigInt::from(2)),
                ],
            )
            .unwrap()],
            None,
        )
        .unwrap();
        assert!(matches!(
            extract_signs(&scaled, &a, &gamma),
            Err(Error::Shape(_))
        ));
    }

    #[test]
    fn text_formats_round_trip() {
        let s = StabilizerGroup::new(3, vec![pw("- 110|001"), pw("+ 011|100")]).unwrap();
        assert_eq!(StabilizerGroup::from_text(&s.to_text()).unwrap(), s);
        let empty = StabilizerGroup::trivial(4);
        assert_eq!(StabilizerGroup::from_text(&empty.to_text()).unwrap(), empty);
        assert!(StabilizerGroup::from_text("+ 1|1\n").is_err());
        let cs = codespace(&s).unwrap();
        let table = extract_signs(&cs.basis, &cs.normal_form.a(), &cs.gamma).unwrap();
        let text = table.to_text();
        assert!(text.starts_with("SIGNS 3 2 1\n"));
        assert_eq!(SignTable::from_text(&text).unwrap(), table);
        let truncated: String = text.lines().take(5).map(|l| format!("{l}\n")).collect();
        assert!(SignTable::from_text(&truncated).is_err());
    }
}
