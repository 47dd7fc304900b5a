use super::permutation::{all_permutations, compositions, Permutation};
use super::tensor::{rearrange, GradedLetter, TensorElement};
use crate::scalars_polys::{binomial, int, one, sign, Rational};
use std::collections::HashMap;
use std::sync::{Arc, OnceLock, RwLock};
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CombinatoricsError {
    #[error("descent number {d} out of range for n = {n} (need 0 <= d < n)")]
    DescentOutOfRange { n: usize, d: usize },
}

/// `C_{n,d} = (-1)^d / (n * C(n-1, d))`.
pub fn eulerian_coefficient(n: usize, d: usize) -> Result<Rational, CombinatoricsError> {
    if n == 0 || d >= n {
        return Err(CombinatoricsError::DescentOutOfRange { n, d });
    }
    Ok(sign(d) / (int(n as i64) * binomial(n - 1, d)))
}

/// Rows `1..=n_max` of the `C_{n,d}` triangle.
pub fn eulerian_table(n_max: usize) -> Vec<Vec<Rational>> {
    (1..=n_max)
        .map(|n| {
            (0..n)
                .map(|d| eulerian_coefficient(n, d).unwrap())
                .collect()
        })
        .collect()
}

/// One term of the Eulerian idempotent in `S_n`.
pub struct WeightedPermutation {
    pub sigma: Permutation,
    /// `σ(k+1) - 1` for each `k`, the reading order used by `E`.
    pub forward: Vec<usize>,
    /// `σ^{-1}(k+1) - 1`, the reading order used by `E*`.
    pub backward: Vec<usize>,
    pub weight: Rational,
}

/// All `σ ∈ S_n` with their weights `C_{n, d_σ}`, cached per `n`.
pub fn eulerian_terms(n: usize) -> Arc<Vec<WeightedPermutation>> {
    static CACHE: OnceLock<RwLock<HashMap<usize, Arc<Vec<WeightedPermutation>>>>> = OnceLock::new();
    let cache = CACHE.get_or_init(Default::default);
    if let Some(v) = cache.read().unwrap().get(&n) {
        return v.clone();
    }
    let terms: Vec<_> = all_permutations(n)
        .into_iter()
        .map(|sigma| WeightedPermutation {
            forward: sigma.zero_based(),
            backward: sigma.inverse().zero_based(),
            weight: eulerian_coefficient(n, sigma.descent_number()).unwrap(),
            sigma,
        })
        .collect();
    let terms = Arc::new(terms);
    cache.write().unwrap().insert(n, terms.clone());
    terms
}

fn weighted_rearrangements(w: &[GradedLetter], inverse: bool) -> TensorElement {
    let mut out = TensorElement::zero();
    for term in eulerian_terms(w.len()).iter() {
        let order = if inverse {
            &term.backward
        } else {
            &term.forward
        };
        let (word, negative) = rearrange(w, order);
        out.add_term(
            word,
            if negative {
                -term.weight.clone()
            } else {
                term.weight.clone()
            },
        );
    }
    out
}

/// `E(v_1...v_n) = Σ_σ C_{n,d_σ} ε v_{σ(1)} ... v_{σ(n)}`.
pub fn eulerian_projector(a: &TensorElement) -> TensorElement {
    a.map_words(|w| weighted_rearrangements(w, false))
}

/// `E*(v_1...v_n) = Σ_σ C_{n,d_σ} ε v_{σ^{-1}(1)} ... v_{σ^{-1}(n)}`.
pub fn eulerian_adjoint(a: &TensorElement) -> TensorElement {
    a.map_words(|w| weighted_rearrangements(w, true))
}

/// `E*` through its alternating-shuffle expansion
/// `Σ_k (-1)^{k+1}/k Σ_{i_1+...+i_k=n} (block_1) ⊛ ... ⊛ (block_k)`.
pub fn eulerian_adjoint_via_shuffles(a: &TensorElement) -> TensorElement {
    a.map_words(|w| {
        let mut out = TensorElement::zero();
        for parts in compositions(w.len()) {
            let k = parts.len();
            let mut start = 0;
            let mut prod: Option<TensorElement> = None;
            for p in parts {
                let block = TensorElement::word(w[start..start + p].to_vec());
                start += p;
                prod = Some(match prod {
                    None => block,
                    Some(acc) => acc.shuffle(&block),
                });
            }
            let c = sign(k + 1) / int(k as i64);
            out.add_assign(&prod.unwrap().scale(&c));
        }
        out
    })
}

/// The Dynkin map `v_1...v_n ↦ (1/n) [v_1, [v_2, ... [v_{n-1}, v_n]...]]`
/// with graded commutators.
pub fn dynkin(a: &TensorElement) -> TensorElement {
    a.map_words(|w| {
        let n = w.len();
        let mut acc = TensorElement::letter(w[n - 1]);
        for l in w[..n - 1].iter().rev() {
            acc = TensorElement::letter(*l).commutator(&acc);
        }
        acc.scale(&(one() / int(n as i64)))
    })
}

/// `Σ (-1)^{m+1}/m` over the ordered partitions `i_1 + ... + i_m = n` for
/// which `σ` is an `(i_1, ..., i_m)`-unshuffle.
pub fn unshuffle_partition_sum(sigma: &Permutation) -> Rational {
    compositions(sigma.len())
        .into_iter()
        .filter(|parts| sigma.is_unshuffle(parts))
        .map(|parts| sign(parts.len() + 1) / int(parts.len() as i64))
        .sum()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalars_polys::rat;

    fn l(id: u32) -> GradedLetter {
        GradedLetter::new(id, 0)
    }

    fn w(ids: &[u32]) -> TensorElement {
        TensorElement::word(ids.iter().map(|&i| l(i)).collect())
    }

    #[test]
    fn coefficient_table_rows() {
        assert_eq!(eulerian_coefficient(1, 0).unwrap(), one());
        assert_eq!(eulerian_coefficient(4, 2).unwrap(), rat(1, 12));
        assert_eq!(eulerian_coefficient(6, 5).unwrap(), rat(-1, 6));
        assert!(eulerian_coefficient(3, 3).is_err());
    }

    #[test]
    fn two_letter_projections() {
        let expected = w(&[1, 2]).sub(&w(&[2, 1])).scale(&rat(1, 2));
        assert_eq!(eulerian_projector(&w(&[1, 2])), expected);
        assert_eq!(eulerian_adjoint(&w(&[1, 2])), expected);
        assert_eq!(dynkin(&w(&[1, 2])), expected);
        assert_eq!(eulerian_projector(&w(&[7])), w(&[7]));
    }

    #[test]
    fn dynkin_three_letters() {
        let expected = w(&[1, 2, 3])
            .sub(&w(&[1, 3, 2]))
            .sub(&w(&[2, 3, 1]))
            .add(&w(&[3, 2, 1]))
            .scale(&rat(1, 3));
        assert_eq!(dynkin(&w(&[1, 2, 3])), expected);
    }

    #[test]
    fn shuffle_examples() {
        assert_eq!(w(&[1]).shuffle(&w(&[2])), w(&[1, 2]).add(&w(&[2, 1])));
        let expected = w(&[1, 2, 3]).add(&w(&[1, 3, 2])).add(&w(&[3, 1, 2]));
        assert_eq!(w(&[1, 2]).shuffle(&w(&[3])), expected);
        let u = TensorElement::letter(GradedLetter::new(0, 1));
        assert!(u.shuffle(&u).is_zero());
    }

    #[test]
    fn adjoint_kills_shuffles() {
        assert!(eulerian_adjoint(&w(&[1]).shuffle(&w(&[2]))).is_zero());
        assert!(eulerian_adjoint(&w(&[1, 2]).shuffle(&w(&[3, 1]))).is_zero());
    }

    #[test]
    fn adjoint_shuffle_expansion_agrees() {
        for word in [vec![1, 2, 3], vec![1, 2, 1, 3], vec![4, 3, 2, 1, 1]] {
            let a = w(&word);
            assert_eq!(eulerian_adjoint(&a), eulerian_adjoint_via_shuffles(&a));
        }
    }

    #[test]
    fn partition_sum_small() {
        assert_eq!(unshuffle_partition_sum(&Permutation::identity(1)), one());
        assert_eq!(
            unshuffle_partition_sum(&Permutation::identity(2)),
            rat(1, 2)
        );
        for n in 1..=6 {
            for sigma in all_permutations(n) {
                assert_eq!(
                    unshuffle_partition_sum(&sigma),
                    eulerian_coefficient(n, sigma.descent_number()).unwrap()
                );
            }
        }
    }
}
