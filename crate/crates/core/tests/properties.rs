mod common;

use std::collections::HashSet;

use num_bigint::BigInt;
use proptest::prelude::*;
use qecc_core::css::LinearBinaryCode;
use qecc_core::gf2::{coset_reps, symplectic_product};
use qecc_core::nonadditive::{greedy_vectors, translation_set, CodebookCode, GreedyConfig};
use qecc_core::stabilizer::{codespace, same_group};
use qecc_core::states::{apply_pauli, inner, matrix_element};
use qecc_core::verify::{find_stabilizer, kl_check, KlMode};
use qecc_core::{BitMatrix, BitVector, PauliWord, SignedSuperposition, SymplecticVector};

fn bits(n: usize) -> impl Strategy<Value = BitVector> {
    proptest::collection::vec(any::<bool>(), n).prop_map(|b| BitVector::from_bools(&b))
}

fn matrix(rows: usize, n: usize) -> impl Strategy<Value = BitMatrix> {
    proptest::collection::vec(bits(n), rows).prop_map(move |r| BitMatrix::new(n, r).unwrap())
}

fn word(n: usize) -> impl Strategy<Value = PauliWord> {
    (any::<bool>(), bits(n), bits(n)).prop_map(|(s, x, z)| PauliWord::new(s, x, z).unwrap())
}

fn state(n: usize) -> impl Strategy<Value = SignedSuperposition> {
    proptest::collection::btree_map(bits(n), -4i64..=4, 0..8).prop_map(move |m| {
        SignedSuperposition::from_terms(n, m.into_iter().map(|(k, v)| (k, BigInt::from(v))))
            .unwrap()
    })
}

proptest! {
    #[test]
    fn dot_is_bilinear(u in bits(70), v in bits(70), w in bits(70)) {
        prop_assert_eq!((&u ^ &v).dot(&w), u.dot(&w) ^ v.dot(&w));
        prop_assert_eq!(u.dot(&v), v.dot(&u));
    }

    #[test]
    fn symplectic_form_is_alternating(a in bits(9), b in bits(9), c in bits(9), d in bits(9)) {
        let u = SymplecticVector::new(a, b).unwrap();
        let v = SymplecticVector::new(c, d).unwrap();
        prop_assert!(!symplectic_product(&u, &u).unwrap());
        prop_assert_eq!(symplectic_product(&u, &v).unwrap(), symplectic_product(&v, &u).unwrap());
    }

    #[test]
    fn nullspace_is_orthogonal_complement(m in (0usize..8).prop_flat_map(|r| matrix(r, 11))) {
        let null = m.nullspace();
        prop_assert_eq!(null.n_rows() + m.rank(), 11);
        for r in m.rows() {
            for v in null.rows() {
                prop_assert!(!r.dot(v));
            }
        }
        let back = null.nullspace();
        prop_assert_eq!(back.rank(), m.rank());
        for r in m.rows() {
            prop_assert!(back.row_space_contains(r));
        }
    }

    #[test]
    fn span_has_expected_size(m in (0usize..7).prop_flat_map(|r| matrix(r, 10))) {
        let basis = m.echelon().to_matrix();
        let all: HashSet<BitVector> = basis.span_enumerate().unwrap().collect();
        prop_assert_eq!(all.len(), 1usize << basis.n_rows());
        for v in &all {
            prop_assert!(m.row_space_contains(v));
        }
    }

    #[test]
    fn solve_finds_a_preimage(m in (1usize..9).prop_flat_map(|r| matrix(r, 12)), x in bits(12)) {
        let rhs = m.mul_vec(&x).unwrap();
        let y = m.solve(&rhs).unwrap().expect("consistent by construction");
        prop_assert_eq!(m.mul_vec(&y).unwrap(), rhs);
    }

    #[test]
    fn coset_count_matches_dimensions(m in (0usize..4).prop_flat_map(|r| matrix(r, 8)), extra in (0usize..4).prop_flat_map(|r| matrix(r, 8))) {
        let sub = m.echelon().to_matrix();
        let sup = sub.vstack(&extra).unwrap().echelon().to_matrix();
        let reps = coset_reps(&sub, &sup).unwrap();
        prop_assert_eq!(reps.len(), 1usize << (sup.rank() - sub.rank()));
        prop_assert!(reps[0].is_zero());
        let e = sub.echelon();
        for r in &reps {
            prop_assert_eq!(&e.reduce(r), r);
        }
    }

    #[test]
    fn compose_is_associative(p in word(6), q in word(6), r in word(6)) {
        let left = p.compose(&q).unwrap().compose(&r).unwrap();
        let right = p.compose(&q.compose(&r).unwrap()).unwrap();
        prop_assert_eq!(left, right);
    }

    #[test]
    fn commutation_flips_product_sign(p in word(7), q in word(7)) {
        let pq = p.compose(&q).unwrap();
        let qp = q.compose(&p).unwrap();
        prop_assert_eq!(pq.x(), qp.x());
        prop_assert_eq!(pq.sign() == qp.sign(), p.commutes(&q).unwrap());
    }

    #[test]
    fn matrix_element_transposes(x in state(5), p in word(5), y in state(5)) {
        let forward = matrix_element(&x, &p, &y).unwrap();
        let backward = matrix_element(&y, &p, &x).unwrap();
        let expected = if p.x().dot(p.z()) { -backward } else { backward };
        prop_assert_eq!(forward.clone(), expected);
        prop_assert_eq!(forward, inner(&x, &apply_pauli(&p, &y).unwrap()).unwrap());
    }

    #[test]
    fn paulis_preserve_norm(s in state(6), p in word(6)) {
        let image = apply_pauli(&p, &s).unwrap();
        prop_assert_eq!(image.norm_squared(), s.norm_squared());
        if p.is_self_inverse() {
            prop_assert_eq!(apply_pauli(&p, &image).unwrap(), s);
        }
    }

    #[test]
    fn translation_set_is_a_group(words in proptest::collection::hash_set(bits(6), 1..12)) {
        let book = CodebookCode::new(6, words.into_iter().collect()).unwrap();
        let t = translation_set(&book);
        prop_assert!(t.contains(&BitVector::zeros(6)));
        let set: HashSet<&BitVector> = t.iter().collect();
        for a in &t {
            for b in &t {
                prop_assert!(set.contains(&(a ^ b)));
            }
        }
    }

    #[test]
    fn strict_pass_implies_general_pass(seed in any::<u64>(), n in 1usize..4) {
        let mut rng = common::rng(seed);
        let basis = common::random_basis(&mut rng, n);
        for d in 1..=n {
            if kl_check(&basis, d, KlMode::Strict).unwrap().passed() {
                prop_assert!(kl_check(&basis, d, KlMode::General).unwrap().passed());
            }
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn stabilizer_search_recovers_the_group(seed in any::<u64>(), n in 1usize..6) {
        let mut rng = common::rng(seed);
        let m = seed as usize % (n + 1);
        let s = common::random_stabilizer(&mut rng, n, m);
        let cs = codespace(&s).unwrap();
        prop_assert_eq!(cs.basis.dimension(), 1usize << (n - m));
        for v in cs.basis.vectors() {
            prop_assert!(s.fixes(v).unwrap());
        }
        let found = find_stabilizer(&cs.basis).unwrap();
        prop_assert!(same_group(&found, &s));
    }
}

/// Brute force: is `v` of the form `c + a + e` with `c ∈ C`, `wt(e) < d`?
fn near_coset(code: &LinearBinaryCode, a: &BitVector, v: &BitVector, d: usize) -> bool {
    let n = v.len();
    code.codewords().unwrap().any(|c| {
        let e = &(&c ^ a) ^ v;
        e.weight() < d && e.len() == n
    })
}

#[test]
fn greedy_vectors_satisfy_avoidance_by_brute_force() {
    for (n, d) in [(8usize, 2usize), (9, 2), (10, 2)] {
        let code = LinearBinaryCode::repetition(n);
        let cfg = GreedyConfig::new(code.clone(), d).unwrap();
        let vs = greedy_vectors(&cfg, n).unwrap();
        assert_eq!(BitMatrix::new(n, vs.clone()).unwrap().rank(), n);
        let mut earlier = vec![BitVector::zeros(n)];
        for v in &vs {
            for a in &earlier {
                assert!(!near_coset(&code, a, v, d), "{v} is near {a} + C");
            }
            earlier.push(v.clone());
        }
    }
}
