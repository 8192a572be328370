//! Exhaustive checks on code bases and stabilizer groups.

use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::{One, Zero};
use rayon::prelude::*;

use crate::error::{check_len, Error, Result};
use crate::gf2::{BitMatrix, BitVector, Echelon};
use crate::nonadditive::{translation_set, translations_of, CodebookCode};
use crate::pauli::{enumerate_errors, error_count, PauliWord};
use crate::stabilizer::StabilizerGroup;
use crate::states::{label_index, superpose_code, QuantumCodeBasis, SignedSuperposition};

/// Environment variable consulted when no worker count is given.
pub const WORKERS_ENV: &str = "QECC_WORKERS";

const CHUNK: usize = 4096;

/// How the error-correction conditions are read.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum KlMode {
    /// Every matrix element `⟨c_i|E|c_j⟩` must vanish.
    Strict,
    /// Off-diagonal elements vanish and the diagonal is constant.
    #[default]
    General,
}

impl fmt::Display for KlMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            KlMode::Strict => "strict",
            KlMode::General => "general",
        })
    }
}

impl FromStr for KlMode {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "strict" | "strict-zero" => Ok(KlMode::Strict),
            "general" => Ok(KlMode::General),
            _ => Err(Error::Input(format!(
                "unknown mode {s:?}; use strict or general"
            ))),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct KlViolation {
    pub error: PauliWord,
    pub i: usize,
    pub j: usize,
    pub value: BigInt,
}

impl fmt::Display for KlViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "violation error={} i={} j={} value={}",
            self.error, self.i, self.j, self.value
        )
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct KlReport {
    pub checked_d: usize,
    pub mode: KlMode,
    /// In error enumeration order, then by `(i, j)`.
    pub violations: Vec<KlViolation>,
    pub errors_checked: u128,
}

impl KlReport {
    pub fn passed(&self) -> bool {
        self.violations.is_empty()
    }

    pub fn summary(&self) -> String {
        format!(
            "KL d={} mode={} result={} errors_checked={}",
            self.checked_d,
            self.mode,
            if self.passed() { "pass" } else { "fail" },
            self.errors_checked
        )
    }

    /// Summary line followed by one line per violation.
    pub fn to_text(&self) -> String {
        let mut out = self.summary();
        out.push('\n');
        for v in &self.violations {
            out.push_str(&v.to_string());
            out.push('\n');
        }
        out
    }
}

#[derive(Clone, Debug, Default)]
pub struct KlOptions {
    pub mode: KlMode,
    /// Thread count; falls back to `QECC_WORKERS`, then to all cores.
    pub workers: Option<usize>,
    /// Stop after the first violating error word.
    pub stop_at_first: bool,
}

/// Worker count from an explicit value, the environment, or the machine.
pub fn resolve_workers(explicit: Option<usize>) -> usize {
    explicit
        .filter(|&w| w > 0)
        .or_else(|| {
            std::env::var(WORKERS_ENV)
                .ok()
                .and_then(|v| v.trim().parse().ok())
                .filter(|&w: &usize| w > 0)
        })
        .unwrap_or_else(|| std::thread::available_parallelism().map_or(1, |n| n.get()))
}

fn with_pool<T: Send>(workers: Option<usize>, f: impl FnOnce() -> T + Send) -> Result<T> {
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(resolve_workers(workers))
        .build()
        .map_err(|e| Error::Input(format!("cannot start worker pool: {e}")))?;
    Ok(pool.install(f))
}

type Index<'a> = HashMap<&'a BitVector, Vec<(usize, &'a BigInt)>>;

/// Nonzero entries `⟨x_i|E|x_j⟩`, sorted by `(i, j)`.
fn error_matrix(
    vectors: &[SignedSuperposition],
    index: &Index<'_>,
    e: &PauliWord,
) -> Vec<((usize, usize), BigInt)> {
    let mut acc: HashMap<(usize, usize), BigInt> = HashMap::new();
    for (j, v) in vectors.iter().enumerate() {
        for (label, c) in v.terms() {
            let Some(hits) = index.get(&(label ^ e.x())) else {
                continue;
            };
            let negative = e.sign() ^ label.dot(e.z());
            for &(i, d) in hits {
                let t = c * d;
                let slot = acc.entry((i, j)).or_default();
                if negative {
                    *slot -= t;
                } else {
                    *slot += t;
                }
            }
        }
    }
    let mut out: Vec<_> = acc.into_iter().filter(|(_, v)| !v.is_zero()).collect();
    out.sort_by_key(|(ij, _)| *ij);
    out
}

fn judge(
    k: usize,
    e: &PauliWord,
    entries: Vec<((usize, usize), BigInt)>,
    mode: KlMode,
) -> Vec<KlViolation> {
    let violation = |i, j, value| KlViolation {
        error: e.clone(),
        i,
        j,
        value,
    };
    match mode {
        KlMode::Strict => entries
            .into_iter()
            .map(|((i, j), v)| violation(i, j, v))
            .collect(),
        KlMode::General => {
            let mut diagonal = vec![BigInt::zero(); k];
            let mut out = Vec::new();
            for ((i, j), v) in entries {
                if i == j {
                    diagonal[i] = v;
                } else {
                    out.push(violation(i, j, v));
                }
            }
            for (i, v) in diagonal.iter().enumerate().skip(1) {
                if *v != diagonal[0] {
                    out.push(violation(i, i, v.clone()));
                }
            }
            out.sort_by_key(|v| (v.i, v.j));
            out
        }
    }
}

/// Checks the error words yielded by `errors`, in order.
fn scan_errors(
    basis: &QuantumCodeBasis,
    errors: impl Iterator<Item = PauliWord>,
    mode: KlMode,
    stop_at_first: bool,
) -> (Vec<KlViolation>, u128) {
    let vectors = basis.vectors();
    let index = label_index(vectors);
    let k = vectors.len();
    let mut violations = Vec::new();
    let mut checked: u128 = 0;
    let mut errors = errors.peekable();
    while errors.peek().is_some() {
        let chunk: Vec<PauliWord> = errors.by_ref().take(CHUNK).collect();
        let results: Vec<Vec<KlViolation>> = chunk
            .par_iter()
            .map(|e| judge(k, e, error_matrix(vectors, &index, e), mode))
            .collect();
        for found in results {
            checked += 1;
            let hit = !found.is_empty();
            violations.extend(found);
            if hit && stop_at_first {
                return (violations, checked);
            }
        }
    }
    (violations, checked)
}

/// Checks the error-correction conditions for every error word of weight
/// `1..=d-1`.
pub fn kl_check_with(basis: &QuantumCodeBasis, d: usize, options: &KlOptions) -> Result<KlReport> {
    let n = basis.n();
    let (violations, errors_checked) = with_pool(options.workers, || {
        scan_errors(
            basis,
            enumerate_errors(n, d.saturating_sub(1)),
            options.mode,
            options.stop_at_first,
        )
    })?;
    Ok(KlReport {
        checked_d: d,
        mode: options.mode,
        violations,
        errors_checked,
    })
}

pub fn kl_check(basis: &QuantumCodeBasis, d: usize, mode: KlMode) -> Result<KlReport> {
    kl_check_with(
        basis,
        d,
        &KlOptions {
            mode,
            ..KlOptions::default()
        },
    )
}

/// Largest `d` for which the conditions hold, found weight by weight.
/// A code that passes every weight up to `n` gets `n + 1`.
pub fn find_distance(
    basis: &QuantumCodeBasis,
    mode: KlMode,
    workers: Option<usize>,
) -> Result<usize> {
    let n = basis.n();
    with_pool(workers, || {
        for w in 1..=n {
            let skip = error_count(n, w - 1) as usize;
            let (violations, _) = scan_errors(basis, enumerate_errors(n, w).skip(skip), mode, true);
            if !violations.is_empty() {
                return w;
            }
        }
        n + 1
    })
}

/// Incrementally grows a basis that satisfies the general conditions at a
/// fixed distance.
#[derive(Clone, Debug)]
pub struct KlExtender {
    n: usize,
    errors: Vec<PauliWord>,
    vectors: Vec<SignedSuperposition>,
    index: HashMap<BitVector, Vec<(usize, BigInt)>>,
    diagonal: Vec<BigInt>,
    norm: BigInt,
}

impl KlExtender {
    /// Fails unless `basis` already passes at distance `d`.
    pub fn new(basis: &QuantumCodeBasis, d: usize) -> Result<Self> {
        let report = kl_check(basis, d, KlMode::General)?;
        if !report.passed() {
            return Err(Error::Precondition(format!(
                "starting basis fails at d={d}: {}",
                report.violations[0]
            )));
        }
        let n = basis.n();
        let errors: Vec<PauliWord> = enumerate_errors(n, d.saturating_sub(1)).collect();
        let first = &basis.vectors()[0];
        let diagonal = errors
            .iter()
            .map(|e| crate::states::matrix_element(first, e, first))
            .collect::<Result<Vec<_>>>()?;
        let mut index: HashMap<BitVector, Vec<(usize, BigInt)>> = HashMap::new();
        for (i, v) in basis.vectors().iter().enumerate() {
            for (label, c) in v.terms() {
                index.entry(label.clone()).or_default().push((i, c.clone()));
            }
        }
        Ok(Self {
            n,
            errors,
            vectors: basis.vectors().to_vec(),
            index,
            diagonal,
            norm: basis.norm_squared(),
        })
    }

    pub fn dimension(&self) -> usize {
        self.vectors.len()
    }

    /// `Σ_i ⟨x_i| p |y⟩` split by `i`, nonzero entries only.
    fn against_existing(&self, p: &PauliWord, y: &SignedSuperposition) -> bool {
        let mut acc: HashMap<usize, BigInt> = HashMap::new();
        for (label, c) in y.terms() {
            if let Some(hits) = self.index.get(&(label ^ p.x())) {
                let negative = p.sign() ^ label.dot(p.z());
                for (i, d) in hits {
                    let t = c * d;
                    let slot = acc.entry(*i).or_default();
                    if negative {
                        *slot -= t;
                    } else {
                        *slot += t;
                    }
                }
            }
        }
        acc.values().all(Zero::is_zero)
    }

    /// Appends `y` if the enlarged basis still satisfies the conditions;
    /// returns whether it was kept.
    pub fn try_push(&mut self, y: SignedSuperposition) -> Result<bool> {
        check_len(self.n, y.n())?;
        if y.norm_squared() != self.norm {
            return Ok(false);
        }
        if !self.against_existing(&PauliWord::identity(self.n), &y) {
            return Ok(false);
        }
        for (e, diag) in self.errors.iter().zip(&self.diagonal) {
            if crate::states::matrix_element(&y, e, &y)? != *diag || !self.against_existing(e, &y) {
                return Ok(false);
            }
        }
        let i = self.vectors.len();
        for (label, c) in y.terms() {
            self.index
                .entry(label.clone())
                .or_default()
                .push((i, c.clone()));
        }
        self.vectors.push(y);
        Ok(true)
    }

    pub fn into_basis(self, distance: Option<usize>) -> Result<QuantumCodeBasis> {
        QuantumCodeBasis::new(self.n, self.vectors, distance)
    }
}

/// A word `(α|β)` of weight `1..d-1` that commutes with every generator
/// but is not in the group's span, if one exists.
pub fn dual_distance_witness(s: &StabilizerGroup, d: usize) -> Option<PauliWord> {
    let span = s.check_matrix().echelon();
    enumerate_errors(s.n(), d.saturating_sub(1)).find(|e| {
        s.generators()
            .iter()
            .all(|g| g.commutes(e).expect("lengths match"))
            && !span.contains(&e.symplectic().to_flat())
    })
}

/// Whether the stabilizer defines a code of distance at least `d`: no
/// low-weight element of the symplectic dual lies outside the group.
pub fn dual_distance_check(s: &StabilizerGroup, d: usize) -> bool {
    dual_distance_witness(s, d).is_none()
}

/// All `α` with `α + supp(v) = supp(v)` for every basis vector, sorted.
pub fn common_translations(basis: &QuantumCodeBasis) -> Vec<BitVector> {
    let vectors = basis.vectors();
    let smallest = vectors
        .iter()
        .min_by_key(|v| v.support_size())
        .expect("bases are nonempty");
    let mut candidates = translations_of(smallest.support());
    for v in vectors {
        candidates.retain(|a| v.support().all(|u| v.coefficient(&(u ^ a)).is_some()));
    }
    candidates
}

/// Augmented rows `(u | 1 | s)` meaning `u·β + λ = s`.
fn sign_row(u: &BitVector, s: bool) -> BitVector {
    u.extended(true).extended(s)
}

/// The group of signed Pauli words fixing every basis vector.
///
/// `X_α` parts are limited to [`common_translations`]; for each such `α`
/// the conditions `(−1)^{λ + u·β} c(u) = c(u + α)` form a linear system in
/// `(β, λ)`.
pub fn find_stabilizer(basis: &QuantumCodeBasis) -> Result<StabilizerGroup> {
    let n = basis.n();
    let vectors = basis.vectors();
    let all_labels: Vec<&BitVector> = vectors.iter().flat_map(|v| v.support()).collect();
    let homogeneous = BitMatrix::new(n + 1, all_labels.iter().map(|u| u.extended(true)).collect())?;
    let mut generators = Vec::new();
    let mut x_span = Echelon::new(n);
    for alpha in common_translations(basis) {
        if alpha.is_zero() || x_span.contains(&alpha) {
            continue;
        }
        if let Some((beta, lambda)) = solve_phases(vectors, &alpha)? {
            x_span.insert(&alpha);
            generators.push(PauliWord::new(lambda, alpha, beta)?);
        }
    }
    for row in homogeneous.nullspace().into_rows() {
        let beta = row.slice(0, n);
        let lambda = row.get(n);
        generators.push(PauliWord::new(lambda, BitVector::zeros(n), beta)?);
    }
    StabilizerGroup::new(n, generators)
}

fn solve_phases(
    vectors: &[SignedSuperposition],
    alpha: &BitVector,
) -> Result<Option<(BitVector, bool)>> {
    let n = alpha.len();
    let mut system = Echelon::new(n + 2);
    let inconsistent = BitVector::unit(n + 2, n + 1);
    for v in vectors {
        for (u, c) in v.terms() {
            let Some(target) = v.coefficient(&(u ^ alpha)) else {
                return Ok(None);
            };
            let negative = if target == c {
                false
            } else if *target == -c {
                true
            } else {
                return Ok(None);
            };
            system.insert(&sign_row(u, negative));
            if system.contains(&inconsistent) {
                return Ok(None);
            }
        }
    }
    let mut x = BitVector::zeros(n + 1);
    for (row, &p) in system.rows().iter().zip(system.pivots()) {
        if row.get(n + 1) {
            x.set(p, true);
        }
    }
    Ok(Some((x.slice(0, n), x.get(n))))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Verdict {
    Nonadditive,
    StronglyNonadditiveCriteriaMet,
    Inconclusive,
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Verdict::Nonadditive => "nonadditive",
            Verdict::StronglyNonadditiveCriteriaMet => "strongly-nonadditive-criteria-met",
            Verdict::Inconclusive => "inconclusive",
        })
    }
}

#[derive(Clone, Debug)]
pub struct NonaddVerdict {
    pub stabilizer_trivial: bool,
    /// `2^{n-ℓ} > |T(C)|`.
    pub dimension_gate: bool,
    /// No `α ≠ 0` maps every basis support onto itself.
    pub translation_obstruction: bool,
    pub verdict: Verdict,
    pub stabilizer: StabilizerGroup,
    pub translation_set_size: usize,
}

impl NonaddVerdict {
    pub fn to_text(&self) -> String {
        format!(
            "NONADD stabilizer_trivial={} dimension_gate={} translation_obstruction={} translation_set={}\nverdict={}\n",
            self.stabilizer_trivial,
            self.dimension_gate,
            self.translation_obstruction,
            self.translation_set_size,
            self.verdict
        )
    }
}

fn ceil_log2(k: usize) -> usize {
    if k <= 1 {
        0
    } else {
        (usize::BITS - (k - 1).leading_zeros()) as usize
    }
}

/// Nonadditivity criteria for a `2^ℓ`-dimensional code containing `|C⟩`.
pub fn nonadd_verdict(
    basis: &QuantumCodeBasis,
    containing: &CodebookCode,
    ell: usize,
) -> Result<NonaddVerdict> {
    let n = basis.n();
    check_len(n, containing.n())?;
    if ell >= usize::BITS as usize || basis.dimension() != 1usize << ell {
        return Err(Error::Precondition(format!(
            "basis dimension {} is not 2^{ell}",
            basis.dimension()
        )));
    }
    let (_, size, dist) = containing.params();
    if dist <= ceil_log2(size) {
        return Err(Error::CriterionInapplicable(format!(
            "containing code has distance {dist}, not above ceil(log2 {size}) = {}",
            ceil_log2(size)
        )));
    }
    let code_state = superpose_code(containing.words(), None)?;
    if !basis.spans(&code_state)? {
        return Err(Error::Precondition(
            "the code space does not contain |C>".into(),
        ));
    }
    let stabilizer = find_stabilizer(basis)?;
    let stabilizer_trivial = stabilizer.is_empty();
    let translation_set_size = translation_set(containing).len();
    let dimension_gate =
        n < ell || (BigInt::one() << (n - ell)) > BigInt::from(translation_set_size);
    let translation_obstruction = common_translations(basis).len() == 1;
    let verdict = match (
        stabilizer_trivial && dimension_gate,
        translation_obstruction,
    ) {
        (true, true) => Verdict::StronglyNonadditiveCriteriaMet,
        (true, false) => Verdict::Nonadditive,
        _ => Verdict::Inconclusive,
    };
    Ok(NonaddVerdict {
        stabilizer_trivial,
        dimension_gate,
        translation_obstruction,
        verdict,
        stabilizer,
        translation_set_size,
    })
}
