//! Permutations, unshuffles, graded tensor words, the shuffle product and
//! the Eulerian, adjoint Eulerian and Dynkin projectors.

mod idempotents;
mod permutation;
mod tensor;

pub use idempotents::{
    dynkin, eulerian_adjoint, eulerian_adjoint_via_shuffles, eulerian_coefficient,
    eulerian_projector, eulerian_table, eulerian_terms, unshuffle_partition_sum,
    CombinatoricsError, WeightedPermutation,
};
pub use permutation::{
    all_permutations, combinations, compositions, unshuffles, weak_compositions, Permutation,
    PermutationError,
};
pub use tensor::{
    koszul_sign_by, rearrange, shuffle_words, word_degree, GradedLetter, TensorElement, Word,
};
