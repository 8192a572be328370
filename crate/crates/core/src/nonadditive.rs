//! Constructions of codes outside the stabilizer framework.
//!
//! All of them are bases of signed coset states
//! `|x_a⟩ = Σ_{c ∈ C} (−1)^{τ(c)·a} |c + a⟩` over a linear code `C`,
//! except the ((11,2,3)) code, which superposes the rows of a Hadamard
//! matrix and their complements.

use std::collections::{HashMap, HashSet};
use std::fmt::Write as _;

use crate::bounds::{
    coset_room_bound, family_ell, greedy_bound, greedy_step_bound, twisted_css_bound, Inequality,
};
use crate::css::{
    build_tau, content_lines, signed_coset, LinearBinaryCode, TauMap, MAX_ENUMERATED_DIMENSION,
};
use crate::error::{check_len, parse_err, Error, Result};
use crate::gf2::{coset_reps, BitVector, Echelon};
use crate::states::{superpose_code, QuantumCodeBasis};
use crate::verify::KlExtender;

/// An `(n, K, d)` binary code given as an explicit list of distinct words.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CodebookCode {
    n: usize,
    words: Vec<BitVector>,
}

impl CodebookCode {
    pub fn new(n: usize, words: Vec<BitVector>) -> Result<Self> {
        if words.is_empty() {
            return Err(Error::Input("a codebook needs at least one word".into()));
        }
        let mut seen = HashSet::with_capacity(words.len());
        for w in &words {
            check_len(n, w.len())?;
            if !seen.insert(w) {
                return Err(Error::Input(format!("repeated codeword {w}")));
            }
        }
        Ok(Self { n, words })
    }

    /// Every codeword of a linear code.
    pub fn from_linear(code: &LinearBinaryCode) -> Result<Self> {
        if code.k() > MAX_ENUMERATED_DIMENSION {
            return Err(Error::CodeTooLarge {
                k: code.k(),
                limit: MAX_ENUMERATED_DIMENSION,
            });
        }
        Self::new(code.n(), code.codewords()?.collect())
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn size(&self) -> usize {
        self.words.len()
    }

    pub fn words(&self) -> &[BitVector] {
        &self.words
    }

    /// Least pairwise Hamming distance; `n + 1` for a single word.
    pub fn min_distance(&self) -> usize {
        let mut best = self.n + 1;
        for (i, a) in self.words.iter().enumerate() {
            for b in &self.words[i + 1..] {
                best = best.min((a ^ b).weight());
            }
        }
        best
    }

    /// `(n, K, d)`.
    pub fn params(&self) -> (usize, usize, usize) {
        (self.n, self.size(), self.min_distance())
    }

    /// `"n K words"` header, then one word per line.
    pub fn to_text(&self) -> String {
        let mut out = format!("{} {} words\n", self.n, self.size());
        for w in &self.words {
            let _ = writeln!(out, "{w}");
        }
        out
    }

    /// Reads either an explicit list (`"n K words"` header) or a linear
    /// code (`"n k"` header with generator rows), which is expanded.
    pub fn from_text(text: &str) -> Result<Self> {
        let mut lines = content_lines(text);
        let (line_no, header) = lines
            .next()
            .ok_or_else(|| parse_err(1, "empty codebook file"))?;
        let fields: Vec<&str> = header.split_whitespace().collect();
        match fields.as_slice() {
            [n, count, "words"] => {
                let n: usize = n.parse().map_err(|_| parse_err(line_no, "bad length"))?;
                let count: usize = count
                    .parse()
                    .map_err(|_| parse_err(line_no, "bad word count"))?;
                let mut words = Vec::with_capacity(count);
                for (line_no, line) in lines {
                    let w: BitVector = line
                        .parse()
                        .map_err(|e: Error| parse_err(line_no, e.to_string()))?;
                    if w.len() != n {
                        return Err(parse_err(
                            line_no,
                            format!("word has length {} instead of {n}", w.len()),
                        ));
                    }
                    words.push(w);
                }
                if words.len() != count {
                    return Err(parse_err(
                        line_no,
                        format!("header promises {count} words, found {}", words.len()),
                    ));
                }
                Self::new(n, words).map_err(|e| parse_err(line_no, e.to_string()))
            }
            [_, _] => Self::from_linear(&LinearBinaryCode::from_text(text)?),
            _ => Err(parse_err(line_no, "expected header 'n K words' or 'n k'")),
        }
    }
}

/// `T(C) = {x : x + C ⊆ C}`, sorted. Any translation maps the first word
/// into `C`, so only the differences `w_1 + w_i` are tried.
pub fn translation_set(code: &CodebookCode) -> Vec<BitVector> {
    translations_of(code.words())
}

pub(crate) fn translations_of<'a>(
    words: impl IntoIterator<Item = &'a BitVector>,
) -> Vec<BitVector> {
    let words: Vec<&BitVector> = words.into_iter().collect();
    let Some(first) = words.first() else {
        return Vec::new();
    };
    let set: HashSet<&BitVector> = words.iter().copied().collect();
    let mut out: Vec<BitVector> = words
        .iter()
        .map(|w| *first ^ *w)
        .filter(|x| words.iter().all(|w| set.contains(&(*w ^ x))))
        .collect();
    out.sort();
    out
}

/// All vectors of weight at most `radius`, by weight and then by support.
pub(crate) fn low_weight_vectors(n: usize, radius: usize) -> Vec<BitVector> {
    let mut out = vec![BitVector::zeros(n)];
    for w in 1..=radius.min(n) {
        let mut support: Vec<usize> = (0..w).collect();
        loop {
            let mut v = BitVector::zeros(n);
            for &p in &support {
                v.set(p, true);
            }
            out.push(v);
            let Some(i) = (0..w).rev().find(|&i| support[i] < n - w + i) else {
                break;
            };
            support[i] += 1;
            for j in i + 1..w {
                support[j] = support[j - 1] + 1;
            }
        }
    }
    out
}

/// Parameters shared by the greedy coset constructions.
#[derive(Clone, Debug)]
pub struct GreedyConfig {
    code: LinearBinaryCode,
    d: usize,
    tau: TauMap,
}

impl GreedyConfig {
    /// Uses the default `τ` from [`build_tau`].
    pub fn new(code: LinearBinaryCode, d: usize) -> Result<Self> {
        let tau = build_tau(&code)?;
        Self::with_tau(code, d, tau)
    }

    pub fn with_tau(code: LinearBinaryCode, d: usize, tau: TauMap) -> Result<Self> {
        if d == 0 {
            return Err(Error::Precondition("distance must be at least 1".into()));
        }
        if code.n() >= 64 {
            return Err(Error::CodeTooLarge {
                k: code.n(),
                limit: 63,
            });
        }
        let dc = code.min_distance()?;
        let dd = code.dual().min_distance()?;
        if d > dc || d > dd {
            return Err(Error::Precondition(format!(
                "d={d} exceeds min(dist C, dist C^perp) = min({dc}, {dd})"
            )));
        }
        if tau.domain_basis().rows() != code.generator().rows() {
            return Err(Error::Shape(
                "tau is defined on a different basis of C".into(),
            ));
        }
        if !tau.is_coset_injective(&code)? {
            return Err(Error::Precondition(
                "tau sends two codewords into one coset of C^perp".into(),
            ));
        }
        Ok(Self { code, d, tau })
    }

    pub fn code(&self) -> &LinearBinaryCode {
        &self.code
    }

    pub fn d(&self) -> usize {
        self.d
    }

    pub fn tau(&self) -> &TauMap {
        &self.tau
    }

    fn error_syndromes(&self) -> Result<HashSet<BitVector>> {
        low_weight_vectors(self.code.n(), self.d - 1)
            .iter()
            .map(|e| self.code.syndrome(e))
            .collect()
    }
}

/// Picks `a_1..a_count` by scanning `{0,1}^n` in lexicographic order,
/// accepting a vector when it is independent of the earlier picks and not
/// of the form `c + a_i + e` (`c ∈ C`, `wt(e) < d`, `i ≥ 0`, `a_0 = 0`).
pub fn greedy_vectors(cfg: &GreedyConfig, count: usize) -> Result<Vec<BitVector>> {
    let n = cfg.code.n();
    let k = cfg.code.k();
    let bad = cfg.error_syndromes()?;
    let mut chosen_syndromes = vec![BitVector::zeros(n - k)];
    let mut span = Echelon::new(n);
    let mut out = Vec::with_capacity(count);
    let mut next: u64 = 1;
    let end: u64 = 1u64 << n;
    while out.len() < count {
        let found = (next..end).find_map(|raw| {
            let v = BitVector::from_u64(n, raw);
            let s = cfg.code.syndrome(&v).expect("length fixed");
            let clear = chosen_syndromes.iter().all(|t| !bad.contains(&(&s ^ t)));
            (clear && !span.contains(&v)).then_some((raw, v, s))
        });
        let Some((raw, v, s)) = found else {
            let m = out.len();
            return Err(Error::Infeasible(format!(
                "greedy scan exhausted after {m} vectors (sufficient condition {})",
                greedy_step_bound(n, k, cfg.d, m)
            )));
        };
        span.insert(&v);
        chosen_syndromes.push(s);
        out.push(v);
        next = raw + 1;
    }
    Ok(out)
}

/// `|x_i⟩ = Σ_{c ∈ C} (−1)^{τ(c)·a_i} |c + a_i⟩` for `a_0 = 0` followed by
/// `vectors`; declared distance `cfg.d()`.
pub fn build_tau_coset_code(cfg: &GreedyConfig, vectors: &[BitVector]) -> Result<QuantumCodeBasis> {
    let n = cfg.code.n();
    let mut reps = Vec::with_capacity(vectors.len() + 1);
    reps.push(BitVector::zeros(n));
    reps.extend(vectors.iter().cloned());
    let mut cosets = HashSet::with_capacity(reps.len());
    for a in &reps {
        if !cosets.insert(cfg.code.syndrome(a)?) {
            return Err(Error::Input(format!(
                "vector {a} shares a coset of C with an earlier one"
            )));
        }
    }
    let pairs = cfg.tau.pairs()?;
    let states = reps
        .iter()
        .map(|a| signed_coset(&pairs, a))
        .collect::<Result<Vec<_>>>()?;
    QuantumCodeBasis::new(n, states, Some(cfg.d))
}

/// Result of [`extend_code`].
#[derive(Clone, Debug)]
pub struct Extension {
    pub basis: QuantumCodeBasis,
    pub added: usize,
    /// False when the candidates ran out before the target dimension.
    pub reached: bool,
}

/// Appends plain coset states `Σ_{c ∈ C} |c + a⟩` for unused cosets of `C`,
/// scanning their lexicographically smallest members in increasing order
/// and keeping a state only if the enlarged basis still satisfies the
/// error-correction conditions at distance `cfg.d()`.
pub fn extend_code(
    basis: &QuantumCodeBasis,
    cfg: &GreedyConfig,
    target: usize,
) -> Result<Extension> {
    let k0 = basis.dimension();
    if target < k0 {
        return Err(Error::Precondition(format!(
            "target dimension {target} is below the current {k0}"
        )));
    }
    let code = &cfg.code;
    let n = code.n();
    check_len(n, basis.n())?;
    let mut used = HashSet::new();
    for v in basis.vectors() {
        for label in v.support() {
            used.insert(code.syndrome(label)?);
        }
    }
    let mut extender = KlExtender::new(basis, cfg.d)?;
    let plain: Vec<(BitVector, BitVector)> = code
        .codewords()?
        .map(|c| (c, BitVector::zeros(n)))
        .collect();
    let pivots: HashSet<usize> = code
        .generator()
        .echelon()
        .pivots()
        .iter()
        .copied()
        .collect();
    let free: Vec<usize> = (0..n).filter(|p| !pivots.contains(p)).collect();
    if free.len() >= 64 {
        return Err(Error::CodeTooLarge {
            k: free.len(),
            limit: 63,
        });
    }
    let mut added = 0;
    for t in 0u64..(1u64 << free.len()) {
        if extender.dimension() >= target {
            break;
        }
        let mut a = BitVector::zeros(n);
        for (bit, &pos) in free.iter().enumerate() {
            if t >> (free.len() - 1 - bit) & 1 == 1 {
                a.set(pos, true);
            }
        }
        let s = code.syndrome(&a)?;
        if used.contains(&s) {
            continue;
        }
        if extender.try_push(signed_coset(&plain, &a)?)? {
            used.insert(s);
            added += 1;
        }
    }
    let reached = extender.dimension() >= target;
    Ok(Extension {
        basis: extender.into_basis(Some(cfg.d))?,
        added,
        reached,
    })
}

/// Result of [`build_greedy_family`].
#[derive(Clone, Debug)]
pub struct FamilyBuild {
    pub basis: QuantumCodeBasis,
    pub ell: usize,
    pub bound: Inequality,
    /// `a_1..a_n` from the greedy scan.
    pub greedy: Vec<BitVector>,
    /// Set when `2^ℓ < n + 1` and the greedy basis was cut down.
    pub truncated: bool,
    pub notes: Vec<String>,
}

/// The `((n, 2^ℓ, d))` construction: `n` greedy coset vectors plus `0`,
/// then extended (or truncated) to `2^ℓ` states, with `ℓ` the greatest
/// integer such that `2^ℓ |B(d-1)| ≤ 2^{n-k}`.
pub fn build_greedy_family(cfg: &GreedyConfig) -> Result<FamilyBuild> {
    let code = &cfg.code;
    let (n, k, d) = (code.n(), code.k(), cfg.d);
    let bound = greedy_bound(n, k, d);
    if !bound.holds() {
        return Err(Error::Infeasible(bound.to_string()));
    }
    let d0 = code.min_distance()?;
    if d0 <= k {
        return Err(Error::Precondition(format!(
            "dist(C) = {d0} must exceed k = {k}"
        )));
    }
    let ell = family_ell(n, k, d).ok_or_else(|| {
        Error::Infeasible(format!(
            "no ell: 2^(n-k) is below the ball size for n={n} k={k} d={d}"
        ))
    })?;
    if k + ell >= n {
        return Err(Error::Infeasible(format!(
            "k + ell = {} is not below n = {n}",
            k + ell
        )));
    }
    if ell >= 63 {
        return Err(Error::CodeTooLarge { k: ell, limit: 62 });
    }
    let target = 1usize << ell;
    let greedy = greedy_vectors(cfg, n)?;
    let mut notes = vec![format!("ell={ell} target K={target}"), bound.to_string()];
    let (basis, truncated) = if target < n + 1 {
        notes.push(format!(
            "2^ell = {target} < n + 1 = {}: kept the first {target} coset states",
            n + 1
        ));
        (build_tau_coset_code(cfg, &greedy[..target - 1])?, true)
    } else {
        let start = build_tau_coset_code(cfg, &greedy)?;
        let ext = extend_code(&start, cfg, target)?;
        if !ext.reached {
            return Err(Error::Infeasible(format!(
                "extension stopped at K={} before reaching {target}",
                ext.basis.dimension()
            )));
        }
        notes.push(format!("extended by {} plain coset states", ext.added));
        (ext.basis, false)
    };
    Ok(FamilyBuild {
        basis,
        ell,
        bound,
        greedy,
        truncated,
        notes,
    })
}

/// Result of [`build_cssnonadd`].
#[derive(Clone, Debug)]
pub struct CssNonaddBuild {
    pub basis: QuantumCodeBasis,
    /// Independent members of distinct nonzero cosets of `C` in `C^⊥`.
    pub dual_reps: Vec<BitVector>,
    /// Vectors outside `C^⊥` completing `dual_reps` to a basis.
    pub extra_reps: Vec<BitVector>,
    /// Coset representatives whose twisted states were dropped.
    pub removed: Vec<BitVector>,
    pub bounds: Vec<Inequality>,
}

/// An `((n, 2^{n-2k}, d))` code with trivial stabilizer built from a weakly
/// self-dual `[n, k]` code.
///
/// Twisted CSS states over all cosets of `C` in `C^⊥` use the chosen
/// `a_1..a_{n-k}` as representatives for their cosets. Then `k` further
/// `τ`-signed coset states for `a_{n-k+1}..a_n` are added. Finally the `k`
/// twisted states with the lexicographically largest other
/// representatives are removed.
pub fn build_cssnonadd(code: &LinearBinaryCode, d: usize) -> Result<CssNonaddBuild> {
    if !code.is_weakly_self_dual() {
        return Err(Error::NotWeaklySelfDual);
    }
    let (n, k) = (code.n(), code.k());
    if n >= 64 {
        return Err(Error::CodeTooLarge { k: n, limit: 63 });
    }
    let d0 = code.min_distance()?;
    let dual = code.dual();
    let d1 = dual.min_distance()?;
    if d0 < k {
        return Err(Error::Infeasible(format!(
            "dist(C) = {d0} is below k = {k}"
        )));
    }
    if d == 0 || d > d1 {
        return Err(Error::Infeasible(format!(
            "d = {d} must lie in 1..=dist(C^perp) = {d1}"
        )));
    }
    let room = coset_room_bound(n, k);
    let twisted = twisted_css_bound(n, k, d);
    for b in [&room, &twisted] {
        if !b.holds() {
            return Err(Error::Infeasible(b.to_string()));
        }
    }
    let cfg = GreedyConfig::new(code.clone(), d)?;
    let pairs = cfg.tau.pairs()?;

    // a_1..a_{n-k}: lexicographic scan of C^⊥.
    let mut dual_words: Vec<BitVector> = dual.codewords()?.collect();
    dual_words.sort();
    let mut span = Echelon::new(n);
    let mut used_cosets = HashSet::new();
    used_cosets.insert(code.syndrome(&BitVector::zeros(n))?);
    let mut dual_reps = Vec::with_capacity(n - k);
    for v in dual_words {
        if dual_reps.len() == n - k {
            break;
        }
        let s = code.syndrome(&v)?;
        if used_cosets.contains(&s) || span.contains(&v) {
            continue;
        }
        used_cosets.insert(s);
        span.insert(&v);
        dual_reps.push(v);
    }
    if dual_reps.len() < n - k {
        return Err(Error::Infeasible(format!(
            "found only {} independent coset members in C^perp",
            dual_reps.len()
        )));
    }

    // a_{n-k+1}..a_n: outside C^⊥ + E and outside earlier a_j + C + E.
    let low = low_weight_vectors(n, d - 1);
    let near_dual: HashSet<BitVector> = low
        .iter()
        .map(|e| dual.syndrome(e))
        .collect::<Result<_>>()?;
    let near_code: HashSet<BitVector> = low
        .iter()
        .map(|e| code.syndrome(e))
        .collect::<Result<_>>()?;
    let mut extra_reps: Vec<BitVector> = Vec::with_capacity(k);
    let mut extra_syndromes: Vec<BitVector> = Vec::with_capacity(k);
    let mut raw: u64 = 1;
    while extra_reps.len() < k {
        if raw >= 1u64 << n {
            return Err(Error::Infeasible(format!(
                "found only {} of {k} vectors outside C^perp ({twisted})",
                extra_reps.len()
            )));
        }
        let v = BitVector::from_u64(n, raw);
        raw += 1;
        if near_dual.contains(&dual.syndrome(&v)?) || span.contains(&v) {
            continue;
        }
        let s = code.syndrome(&v)?;
        if extra_syndromes
            .iter()
            .any(|t| near_code.contains(&(&s ^ t)))
        {
            continue;
        }
        span.insert(&v);
        extra_syndromes.push(s);
        extra_reps.push(v);
    }

    // Twisted states, one per coset of C in C^⊥.
    let mut chosen_for: HashMap<BitVector, BitVector> = HashMap::new();
    for a in &dual_reps {
        chosen_for.insert(code.syndrome(a)?, a.clone());
    }
    let canonical = coset_reps(code.generator(), code.parity_check())?;
    let mut reps: Vec<(BitVector, bool)> = canonical
        .into_iter()
        .map(|a| {
            let s = code.syndrome(&a).expect("length fixed");
            match chosen_for.get(&s) {
                Some(chosen) => (chosen.clone(), true),
                None => (a, false),
            }
        })
        .collect();
    let spare: Vec<usize> = reps
        .iter()
        .enumerate()
        .filter(|(_, (a, pinned))| !pinned && !a.is_zero())
        .map(|(i, _)| i)
        .collect();
    if spare.len() < k {
        return Err(Error::Infeasible(format!(
            "only {} twisted states may be removed but {k} must go",
            spare.len()
        )));
    }
    let drop: HashSet<usize> = spare.iter().rev().take(k).copied().collect();
    let mut removed: Vec<BitVector> = drop.iter().map(|&i| reps[i].0.clone()).collect();
    removed.sort();
    removed.reverse();
    reps = reps
        .into_iter()
        .enumerate()
        .filter(|(i, _)| !drop.contains(i))
        .map(|(_, r)| r)
        .collect();
    let mut states = reps
        .iter()
        .map(|(a, _)| signed_coset(&pairs, a))
        .collect::<Result<Vec<_>>>()?;
    for a in &extra_reps {
        states.push(signed_coset(&pairs, a)?);
    }
    let basis = QuantumCodeBasis::new(n, states, Some(d))?;
    Ok(CssNonaddBuild {
        basis,
        dual_reps,
        extra_reps,
        removed,
        bounds: vec![room, twisted],
    })
}

const HADAMARD_ROWS: [&str; 12] = [
    "00000000000",
    "10100011101",
    "11010001110",
    "01101000111",
    "10110100011",
    "11011010001",
    "11101101000",
    "01110110100",
    "00111011010",
    "00011101101",
    "10001110110",
    "01000111011",
];

/// Rows of a normalized Hadamard matrix of order 12 with the constant
/// column removed, `-1 → 1`, `+1 → 0`: an `(11, 12, 6)` code.
pub fn hadamard_rows() -> Vec<BitVector> {
    HADAMARD_ROWS
        .iter()
        .map(|r| r.parse().expect("fixed rows"))
        .collect()
}

pub fn hadamard_codebook() -> CodebookCode {
    CodebookCode::new(11, hadamard_rows()).expect("rows are distinct")
}

/// The ((11,2,3)) code `|0_L⟩ = Σ |r_i⟩`, `|1_L⟩ = Σ |1 + r_i⟩`.
pub fn hadamard11() -> QuantumCodeBasis {
    let rows = hadamard_rows();
    let ones = BitVector::ones(11);
    let complements: Vec<BitVector> = rows.iter().map(|r| r ^ &ones).collect();
    let zero = superpose_code(&rows, None).expect("nonempty");
    let one = superpose_code(&complements, None).expect("nonempty");
    QuantumCodeBasis::new(11, vec![zero, one], Some(3)).expect("disjoint supports")
}
