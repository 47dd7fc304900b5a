use super::{expand_tensor, GradedVector, Tensor};
use crate::combinatorics::{all_permutations, koszul_sign_by, unshuffles, weak_compositions};
use crate::scalars_polys::one;
use dashmap::DashMap;
use num_traits::Zero;
use rayon::prelude::*;
use std::fmt;
use std::sync::Arc;
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum FrameworkError {
    #[error("truncation orders differ: {left} vs {right}")]
    OrderMismatch { left: usize, right: usize },
    #[error("arity {arity} exceeds truncation order {order}")]
    ArityExceedsOrder { arity: usize, order: usize },
    #[error("Taylor coefficients start at arity 1")]
    EmptyArity,
    #[error("contraction side condition violated: {0}")]
    SideCondition(String),
}

/// A multilinear map, called on tuples of homogeneous basis elements.
pub type Multilinear<S, T> = Arc<dyn Fn(&[S]) -> T + Send + Sync>;

/// Taylor coefficients `F_1, ..., F_N` of a morphism of reduced tensor
/// coalgebras `T(sS) -> T(sT)` truncated at order `N`.
pub struct TruncatedMorphism<S, T> {
    name: Arc<str>,
    coeffs: Arc<Vec<Multilinear<S, T>>>,
    memo: Arc<Vec<DashMap<Vec<S>, T>>>,
}

/// Taylor coefficients `Q_1, ..., Q_N` of a coderivation of `T(sV)`.
pub type TruncatedCoderivation<V> = TruncatedMorphism<V, V>;

impl<S, T> Clone for TruncatedMorphism<S, T> {
    fn clone(&self) -> Self {
        TruncatedMorphism {
            name: self.name.clone(),
            coeffs: self.coeffs.clone(),
            memo: self.memo.clone(),
        }
    }
}

impl<S, T> fmt::Debug for TruncatedMorphism<S, T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "TruncatedMorphism({}, order {})",
            self.name,
            self.coeffs.len()
        )
    }
}

impl<S: GradedVector, T: GradedVector> TruncatedMorphism<S, T> {
    pub fn new(name: impl Into<String>, coeffs: Vec<Multilinear<S, T>>) -> Self {
        let memo = (0..coeffs.len()).map(|_| DashMap::new()).collect();
        TruncatedMorphism {
            name: Arc::from(name.into()),
            coeffs: Arc::new(coeffs),
            memo: Arc::new(memo),
        }
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn order(&self) -> usize {
        self.coeffs.len()
    }

    pub fn renamed(&self, name: impl Into<String>) -> Self {
        TruncatedMorphism {
            name: Arc::from(name.into()),
            ..self.clone()
        }
    }

    /// The same morphism with coefficient `n` replaced (fresh memo table).
    pub fn with_coefficient(&self, n: usize, f: Multilinear<S, T>) -> Self {
        let mut coeffs: Vec<_> = self.coeffs.iter().cloned().collect();
        coeffs[n - 1] = f;
        Self::new(self.name.to_string(), coeffs)
    }

    /// Keeps only the coefficients up to `order`.
    pub fn truncated(&self, order: usize) -> Self {
        let coeffs = self.coeffs.iter().take(order).cloned().collect();
        Self::new(self.name.to_string(), coeffs)
    }

    /// `F_n` on a tuple of basis elements, memoized.
    pub fn eval_basis(&self, args: &[S]) -> T {
        let n = args.len();
        if let Some(v) = self.memo[n - 1].get(args) {
            return v.clone();
        }
        let v = (self.coeffs[n - 1])(args);
        self.memo[n - 1].insert(args.to_vec(), v.clone());
        v
    }

    /// `F_n(x_1 ⊗ ... ⊗ x_n)` with `n = args.len()`, extended multilinearly.
    /// Panics if `n` is zero or exceeds the order; see [`Self::try_eval`].
    pub fn eval(&self, args: &[S]) -> T {
        self.try_eval(args)
            .unwrap_or_else(|e| panic!("{}: {e}", self.name))
    }

    pub fn try_eval(&self, args: &[S]) -> Result<T, FrameworkError> {
        let n = args.len();
        if n == 0 {
            return Err(FrameworkError::EmptyArity);
        }
        if n > self.order() {
            return Err(FrameworkError::ArityExceedsOrder {
                arity: n,
                order: self.order(),
            });
        }
        if args.iter().any(GradedVector::is_zero) {
            return Ok(T::zero());
        }
        let pure = vec![(one(), args.to_vec())];
        let mut acc = T::zero();
        for (c, word) in expand_tensor(&pure) {
            acc = acc.add(&self.eval_basis(&word).scale(&c));
        }
        Ok(acc)
    }

    /// Applies the coefficient of matching arity to each word of a tensor.
    pub fn eval_tensor(&self, t: &Tensor<S>) -> T {
        let mut acc = T::zero();
        for (c, word) in t {
            if word.len() <= self.order() && !c.is_zero() {
                acc = acc.add(&self.eval(word).scale(c));
            }
        }
        acc
    }
}

/// `F^i_n = Σ_{j_1+...+j_i=n} F_{j_1} ⊗ ... ⊗ F_{j_i}` with `F` given as a
/// closure; the coefficients have degree zero so no signs appear.
pub fn tensor_power_by<S: Clone, T>(i: usize, args: &[S], f: impl Fn(&[S]) -> T) -> Tensor<T> {
    let n = args.len();
    if i == 0 || i > n {
        return Vec::new();
    }
    let mut out = Vec::new();
    for extra in weak_compositions(n - i, i) {
        let mut start = 0;
        let mut word = Vec::with_capacity(i);
        for e in extra {
            let len = e + 1;
            word.push(f(&args[start..start + len]));
            start += len;
        }
        out.push((one(), word));
    }
    out
}

/// `F^i_n(x_1 ⊗ ... ⊗ x_n)` for a truncated morphism; blocks longer than
/// the order contribute nothing.
pub fn tensor_power<S: GradedVector, T: GradedVector>(
    f: &TruncatedMorphism<S, T>,
    i: usize,
    args: &[S],
) -> Tensor<T> {
    let n = args.len();
    if i == 0 || i > n {
        return Vec::new();
    }
    let mut out = Vec::new();
    for extra in weak_compositions(n - i, i) {
        if extra.iter().any(|e| e + 1 > f.order()) {
            continue;
        }
        let mut start = 0;
        let mut word = Vec::with_capacity(i);
        for e in extra {
            let len = e + 1;
            word.push(f.eval(&args[start..start + len]));
            start += len;
        }
        if word.iter().all(|w| !w.is_zero()) {
            out.push((one(), word));
        }
    }
    out
}

/// `Q^j_n(x_1 ⊗ ... ⊗ x_n) = Σ_k ± x_1 ⊗ ... ⊗ Q_{n-j+1}(x_{k+1} ...) ⊗ ... ⊗ x_n`
/// with the Koszul sign of the odd map `Q` passing `x_1, ..., x_k`.
pub fn coderivation_component<V: GradedVector>(
    q: &TruncatedCoderivation<V>,
    j: usize,
    args: &[V],
) -> Tensor<V> {
    let n = args.len();
    if j == 0 || j > n {
        return Vec::new();
    }
    let k = n - j + 1;
    if k > q.order() {
        return Vec::new();
    }
    let mut out = Vec::new();
    for (c, word) in expand_tensor(&vec![(one(), args.to_vec())]) {
        let mut parity = 0i32;
        for pos in 0..=n - k {
            if pos > 0 {
                parity += word[pos - 1].degree();
            }
            let value = q.eval_basis(&word[pos..pos + k]);
            if value.is_zero() {
                continue;
            }
            let mut out_word = Vec::with_capacity(j);
            out_word.extend_from_slice(&word[..pos]);
            out_word.push(value);
            out_word.extend_from_slice(&word[pos + k..]);
            let coeff = if parity.rem_euclid(2) == 1 {
                -c.clone()
            } else {
                c.clone()
            };
            out.push((coeff, out_word));
        }
    }
    out
}

/// `(G ∘ F)_n = Σ_i G_i F^i_n`.
pub fn compose<S: GradedVector, T: GradedVector, U: GradedVector>(
    g: &TruncatedMorphism<T, U>,
    f: &TruncatedMorphism<S, T>,
) -> Result<TruncatedMorphism<S, U>, FrameworkError> {
    if g.order() != f.order() {
        return Err(FrameworkError::OrderMismatch {
            left: g.order(),
            right: f.order(),
        });
    }
    let coeffs = (1..=f.order())
        .map(|_| {
            let (g, f) = (g.clone(), f.clone());
            Arc::new(move |args: &[S]| {
                let mut acc = U::zero();
                for i in 1..=args.len() {
                    acc = acc.add(&g.eval_tensor(&tensor_power(&f, i, args)));
                }
                acc
            }) as Multilinear<S, U>
        })
        .collect();
    Ok(TruncatedMorphism::new(
        format!("{}∘{}", g.name(), f.name()),
        coeffs,
    ))
}

/// The identity morphism: `F_1 = id`, higher coefficients zero.
pub fn identity_morphism<V: GradedVector>(order: usize) -> TruncatedMorphism<V, V> {
    let coeffs = (1..=order)
        .map(|n| {
            Arc::new(move |args: &[V]| if n == 1 { args[0].clone() } else { V::zero() })
                as Multilinear<V, V>
        })
        .collect();
    TruncatedMorphism::new("id", coeffs)
}

/// All coefficients zero.
pub fn zero_morphism<S: GradedVector, T: GradedVector>(order: usize) -> TruncatedMorphism<S, T> {
    let coeffs = (0..order)
        .map(|_| Arc::new(|_: &[S]| T::zero()) as Multilinear<S, T>)
        .collect();
    TruncatedMorphism::new("0", coeffs)
}

/// `Σ_i R_i F^i_n - Σ_j F_j Q^j_n` on `x_1 ⊗ ... ⊗ x_n`; zero exactly when
/// `F` intertwines the coderivations `Q` (source) and `R` (target) in arity `n`.
pub fn relation_residual<S: GradedVector, T: GradedVector>(
    f: &TruncatedMorphism<S, T>,
    q: &TruncatedCoderivation<S>,
    r: &TruncatedCoderivation<T>,
    args: &[S],
) -> T {
    let n = args.len();
    let mut lhs = T::zero();
    for i in 1..=n.min(r.order()) {
        lhs = lhs.add(&r.eval_tensor(&expand_tensor(&tensor_power(f, i, args))));
    }
    let mut rhs = T::zero();
    for j in 1..=n.min(f.order()) {
        rhs = rhs.add(&f.eval_tensor(&coderivation_component(q, j, args)));
    }
    lhs.sub(&rhs)
}

/// Arity-`n` Taylor coefficient of `Q ∘ Q`.
pub fn square_residual<V: GradedVector>(q: &TruncatedCoderivation<V>, args: &[V]) -> V {
    let mut acc = V::zero();
    for j in 1..=args.len() {
        acc = acc.add(&q.eval_tensor(&coderivation_component(q, j, args)));
    }
    acc
}

/// `sym(F)_n(x_1 ⊙ ... ⊙ x_n) = Σ_σ ε(σ) F_n(x_{σ(1)} ⊗ ... ⊗ x_{σ(n)})`.
pub fn symmetrize<S: GradedVector, T: GradedVector>(
    f: &TruncatedMorphism<S, T>,
) -> TruncatedMorphism<S, T> {
    let coeffs = (1..=f.order())
        .map(|n| {
            let f = f.clone();
            let perms: Vec<Vec<usize>> =
                all_permutations(n).iter().map(|p| p.zero_based()).collect();
            Arc::new(move |args: &[S]| {
                let mut acc = T::zero();
                for order in &perms {
                    let negative = koszul_sign_by(args, order, GradedVector::is_odd);
                    let word: Vec<S> = order.iter().map(|&i| args[i].clone()).collect();
                    let v = f.eval_basis(&word);
                    acc = if negative { acc.sub(&v) } else { acc.add(&v) };
                }
                acc
            }) as Multilinear<S, T>
        })
        .collect();
    TruncatedMorphism::new(format!("sym({})", f.name()), coeffs)
}

/// Shuffle product of two words of homogeneous elements, with Koszul signs.
pub fn shuffle_tensor<V: GradedVector>(a: &[V], b: &[V]) -> Tensor<V> {
    let mut joined = a.to_vec();
    joined.extend_from_slice(b);
    unshuffles(&[a.len(), b.len()])
        .into_iter()
        .map(|sigma| {
            let order = sigma.inverse().zero_based();
            let negative = koszul_sign_by(&joined, &order, GradedVector::is_odd);
            let word = order.iter().map(|&i| joined[i].clone()).collect();
            (if negative { -one() } else { one() }, word)
        })
        .collect()
}

/// A nonzero value of a Taylor coefficient on a shuffle product.
#[derive(Debug, Clone)]
pub struct ShuffleViolation<S, T> {
    pub left: Vec<S>,
    pub right: Vec<S>,
    pub value: T,
}

/// All words of length `len` over `basis`.
pub fn basis_words<S: Clone>(basis: &[S], len: usize) -> Vec<Vec<S>> {
    let mut words = vec![Vec::new()];
    for _ in 0..len {
        words = words
            .into_iter()
            .flat_map(|w| {
                basis.iter().map(move |b| {
                    let mut w = w.clone();
                    w.push(b.clone());
                    w
                })
            })
            .collect();
    }
    words
}

/// Evaluates `F_{p+q}(a ⊛ b)` for all basis words `a`, `b` with
/// `p + q <= max_len` and reports the nonzero values.
pub fn shuffle_violations<S: GradedVector, T: GradedVector>(
    f: &TruncatedMorphism<S, T>,
    basis: &[S],
    max_len: usize,
) -> Vec<ShuffleViolation<S, T>> {
    let max_len = max_len.min(f.order());
    let mut pairs = Vec::new();
    for n in 2..=max_len {
        for p in 1..n {
            for a in basis_words(basis, p) {
                for b in basis_words(basis, n - p) {
                    pairs.push((a.clone(), b));
                }
            }
        }
    }
    pairs
        .into_par_iter()
        .filter_map(|(a, b)| {
            let value = f.eval_tensor(&shuffle_tensor(&a, &b));
            (!value.is_zero()).then_some(ShuffleViolation {
                left: a,
                right: b,
                value,
            })
        })
        .collect()
}
