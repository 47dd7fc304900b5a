//! Pushforwards to nilpotent free associative and free Lie coefficient
//! algebras: time-ordered exponentials, three Magnus expansions, the
//! Hausdorff identity and Baker-Campbell-Hausdorff coefficients.

mod lie;
mod magnus;
mod path;
mod series;
pub(crate) mod suites;

pub use lie::{
    bracket_polynomial, is_lyndon, lyndon_words, standard_factorization, LieElement, LieError,
};
pub use magnus::{
    bch, bch_oracle, eulerian_fixed_residual, hausdorff_residual, hausdorff_residual_of, magnus,
    magnus_function, magnus_mielnik_plebanski, magnus_recursion, magnus_via_log_lambda,
    picard_texp, picard_texp_function, MagnusMethod,
};
pub use path::CoefficientPath;
pub use series::{Coeff, PathSeries, ScalarSeries, Series};
pub use suites::{path_battery, PathBattery};
