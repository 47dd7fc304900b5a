use super::morphism::{coderivation_component, tensor_power_by, FrameworkError, Multilinear};
use super::{expand_tensor, GradedVector, Tensor, TruncatedCoderivation, TruncatedMorphism};
use crate::scalars_polys::one;
use dashmap::DashMap;
use std::sync::Arc;

type LinearMap<A, B> = Arc<dyn Fn(&A) -> B + Send + Sync>;

/// Contraction data `(ι, π, h)` from a big complex `B` onto a small one `S`
/// with `ιπ - id = dh + hd`. On suspended spaces the homotopy enters as
/// `K = -h`.
pub struct Contraction<B, S> {
    pub iota: LinearMap<S, B>,
    pub pi: LinearMap<B, S>,
    pub h: LinearMap<B, B>,
}

impl<B, S> Clone for Contraction<B, S> {
    fn clone(&self) -> Self {
        Contraction {
            iota: self.iota.clone(),
            pi: self.pi.clone(),
            h: self.h.clone(),
        }
    }
}

impl<B: GradedVector, S: GradedVector> Contraction<B, S> {
    /// Checks `πι = id`, `hh = 0`, `hι = 0` and `πh = 0` on the samples.
    pub fn new(
        iota: LinearMap<S, B>,
        pi: LinearMap<B, S>,
        h: LinearMap<B, B>,
        big_samples: &[B],
        small_samples: &[S],
    ) -> Result<Self, FrameworkError> {
        let c = Contraction { iota, pi, h };
        match c
            .side_condition_failures(big_samples, small_samples)
            .first()
        {
            Some(msg) => Err(FrameworkError::SideCondition(msg.clone())),
            None => Ok(c),
        }
    }

    pub fn side_condition_failures(&self, big: &[B], small: &[S]) -> Vec<String> {
        let mut out = Vec::new();
        for x in small {
            if (self.pi)(&(self.iota)(x)) != *x {
                out.push(format!("πι ≠ id on {x:?}"));
            }
            if !(self.h)(&(self.iota)(x)).is_zero() {
                out.push(format!("hι ≠ 0 on {x:?}"));
            }
        }
        for x in big {
            let hx = (self.h)(x);
            if !(self.h)(&hx).is_zero() {
                out.push(format!("hh ≠ 0 on {x:?}"));
            }
            if !(self.pi)(&hx).is_zero() {
                out.push(format!("πh ≠ 0 on {x:?}"));
            }
        }
        out
    }

    /// The suspended homotopy `K = -h`.
    pub fn k(&self, x: &B) -> B {
        (self.h)(x).scale(&-one())
    }

    pub fn iota_pi(&self, x: &B) -> B {
        (self.iota)(&(self.pi)(x))
    }
}

/// Sum of `f` over the basis expansion of a pure tensor.
fn multilinear<A: GradedVector, T: GradedVector>(args: &[A], f: impl Fn(&[A]) -> T) -> T {
    let mut acc = T::zero();
    for (c, w) in expand_tensor(&vec![(one(), args.to_vec())]) {
        acc = acc.add(&f(&w).scale(&c));
    }
    acc
}

fn sum_tensor<A: GradedVector, T: GradedVector>(t: &Tensor<A>, f: impl Fn(&[A]) -> T) -> T {
    let mut acc = T::zero();
    for (c, w) in t {
        acc = acc.add(&f(w).scale(c));
    }
    acc
}

/// The transferred structure `R` on the small space and the
/// quasi-isomorphism `F` into the big space.
pub struct Transferred<B, S> {
    pub structure: TruncatedCoderivation<S>,
    pub inclusion: TruncatedMorphism<S, B>,
}

struct TransferState<B, S> {
    q: TruncatedCoderivation<B>,
    c: Contraction<B, S>,
    f_memo: DashMap<Vec<S>, B>,
}

impl<B: GradedVector, S: GradedVector> TransferState<B, S> {
    fn f(&self, args: &[S]) -> B {
        multilinear(args, |w| self.f_basis(w))
    }

    /// `Σ_{i>=2} Q_i F^i_n` on a basis word.
    fn higher(&self, word: &[S]) -> B {
        let n = word.len();
        let mut acc = B::zero();
        for i in 2..=n.min(self.q.order()) {
            let t = tensor_power_by(i, word, |sub| self.f_basis(sub));
            acc = acc.add(&self.q.eval_tensor(&t));
        }
        acc
    }

    fn f_basis(&self, word: &[S]) -> B {
        if word.len() == 1 {
            return (self.c.iota)(&word[0]);
        }
        if let Some(v) = self.f_memo.get(word) {
            return v.clone();
        }
        let v = self.c.k(&self.higher(word));
        self.f_memo.insert(word.to_vec(), v.clone());
        v
    }

    fn r_basis(&self, word: &[S]) -> S {
        if word.len() == 1 {
            let q1 = self.q.eval(&[(self.c.iota)(&word[0])]);
            return (self.c.pi)(&q1);
        }
        (self.c.pi)(&self.higher(word))
    }
}

/// Homotopy transfer of `Q` along a contraction:
/// `R_1 = πQ_1ι`, `R_n = Σ_{i>=2} π Q_i F^i_n`, `F_1 = ι`,
/// `F_n = Σ_{i>=2} K Q_i F^i_n`.
pub fn homotopy_transfer<B: GradedVector, S: GradedVector>(
    q: &TruncatedCoderivation<B>,
    c: &Contraction<B, S>,
) -> Transferred<B, S> {
    let state = Arc::new(TransferState {
        q: q.clone(),
        c: c.clone(),
        f_memo: DashMap::new(),
    });
    let order = q.order();
    let r_coeffs = (0..order)
        .map(|_| {
            let st = state.clone();
            Arc::new(move |args: &[S]| multilinear(args, |w| st.r_basis(w))) as Multilinear<S, S>
        })
        .collect();
    let f_coeffs = (0..order)
        .map(|_| {
            let st = state.clone();
            Arc::new(move |args: &[S]| st.f(args)) as Multilinear<S, B>
        })
        .collect();
    Transferred {
        structure: TruncatedMorphism::new("transferred", r_coeffs),
        inclusion: TruncatedMorphism::new("transfer-inclusion", f_coeffs),
    }
}

struct ProjectionState<B, S> {
    q: TruncatedCoderivation<B>,
    c: Contraction<B, S>,
    memo: DashMap<Vec<B>, S>,
}

impl<B: GradedVector, S: GradedVector> ProjectionState<B, S> {
    /// `H^n_n = Σ_i id^{⊗i} ⊗ K ⊗ (ιπ)^{⊗(n-i-1)}` with the Koszul sign of
    /// the odd map `K` passing the first `i` factors.
    fn h_nn(&self, word: &[B]) -> Tensor<B> {
        let n = word.len();
        let mut out = Vec::new();
        let mut parity = 0i32;
        for i in 0..n {
            if i > 0 {
                parity += word[i - 1].degree();
            }
            let kx = self.c.k(&word[i]);
            if kx.is_zero() {
                continue;
            }
            let mut w = word[..i].to_vec();
            w.push(kx);
            w.extend(word[i + 1..].iter().map(|x| self.c.iota_pi(x)));
            let c = if parity.rem_euclid(2) == 1 {
                -one()
            } else {
                one()
            };
            out.push((c, w));
        }
        expand_tensor(&out)
    }

    fn p_basis(&self, word: &[B]) -> S {
        let n = word.len();
        if n == 1 {
            return (self.c.pi)(&word[0]);
        }
        if let Some(v) = self.memo.get(word) {
            return v.clone();
        }
        let mut acc = S::zero();
        for (c, w) in self.h_nn(word) {
            let merged = expand_tensor(&coderivation_component(&self.q, n - 1, &w));
            let v = sum_tensor(&merged, |m| self.p_basis(m));
            acc = acc.add(&v.scale(&c));
        }
        self.memo.insert(word.to_vec(), acc.clone());
        acc
    }
}

/// The morphism `π_∞` from the big to the small space induced by homotopy
/// transfer of a dg algebra: `π_1 = π`, `π_n = π_{n-1} Q^{n-1}_n H^n_n`.
/// Only the quadratic part of `q` enters.
pub fn transfer_projection<B: GradedVector, S: GradedVector>(
    q: &TruncatedCoderivation<B>,
    c: &Contraction<B, S>,
    order: usize,
) -> TruncatedMorphism<B, S> {
    let state = Arc::new(ProjectionState {
        q: q.truncated(2.min(q.order())),
        c: c.clone(),
        memo: DashMap::new(),
    });
    let coeffs = (0..order)
        .map(|_| {
            let st = state.clone();
            Arc::new(move |args: &[B]| multilinear(args, |w| st.p_basis(w))) as Multilinear<B, S>
        })
        .collect();
    TruncatedMorphism::new("transfer-projection", coeffs)
}

struct ReconstructionState<S, T> {
    linear: LinearMap<S, T>,
    q: TruncatedCoderivation<S>,
    r: TruncatedCoderivation<T>,
    in_x: Arc<dyn Fn(&S) -> bool + Send + Sync>,
    preimage: LinearMap<S, S>,
    memo: DashMap<Vec<S>, T>,
}

impl<S: GradedVector, T: GradedVector> ReconstructionState<S, T> {
    fn g(&self, args: &[S]) -> T {
        multilinear(args, |w| self.g_basis(w))
    }

    fn g_basis(&self, word: &[S]) -> T {
        let n = word.len();
        if n == 1 {
            return (self.linear)(&word[0]);
        }
        if word.iter().any(|x| (self.in_x)(x)) {
            return T::zero();
        }
        if let Some(v) = self.memo.get(word) {
            return v.clone();
        }
        let mut shifted = word.to_vec();
        shifted[0] = (self.preimage)(&word[0]);
        let mut acc = T::zero();
        for i in 2..=n.min(self.r.order()) {
            let t = tensor_power_by(i, &shifted, |sub| self.g(sub));
            acc = acc.add(&self.r.eval_tensor(&t));
        }
        for j in 1..n {
            let t = coderivation_component(&self.q, j, &shifted);
            acc = acc.sub(&sum_tensor(&t, |w| self.g(w)));
        }
        self.memo.insert(word.to_vec(), acc.clone());
        acc
    }
}

/// Rebuilds a morphism arity by arity from its linear part, assuming its
/// higher coefficients vanish on tensors with a factor in `X = ker Q_1`
/// complement and using a chosen `Q_1`-preimage of the first factor:
/// `G_n(y) = (Σ_{i>=2} R_i G^i_n - Σ_{j<n} G_j Q^j_n)(x_1 ⊗ y_2 ⊗ ... ⊗ y_n)`.
pub fn reconstruct_from_linear_part<S: GradedVector, T: GradedVector>(
    linear: LinearMap<S, T>,
    q: &TruncatedCoderivation<S>,
    r: &TruncatedCoderivation<T>,
    in_x: Arc<dyn Fn(&S) -> bool + Send + Sync>,
    preimage: LinearMap<S, S>,
    order: usize,
) -> TruncatedMorphism<S, T> {
    let state = Arc::new(ReconstructionState {
        linear,
        q: q.clone(),
        r: r.clone(),
        in_x,
        preimage,
        memo: DashMap::new(),
    });
    let coeffs = (0..order)
        .map(|_| {
            let st = state.clone();
            Arc::new(move |args: &[S]| st.g(args)) as Multilinear<S, T>
        })
        .collect();
    TruncatedMorphism::new("reconstructed", coeffs)
}
