use crate::forms::{PolyForm, WhitneyCochain};

/// `1, t, dt`.
pub fn cochain_basis() -> Vec<WhitneyCochain> {
    vec![
        WhitneyCochain::unit(),
        WhitneyCochain::t(),
        WhitneyCochain::dt(),
    ]
}

/// `t^k` and `t^k dt` for `k <= max_degree`.
pub fn form_basis(max_degree: usize) -> Vec<PolyForm> {
    (0..=max_degree)
        .flat_map(|k| [PolyForm::t_pow(k), PolyForm::t_pow_dt(k)])
        .collect()
}

fn words(arity: usize, total: usize, one_forms_only: bool) -> Vec<Vec<PolyForm>> {
    if arity == 0 {
        return vec![Vec::new()];
    }
    let mut out = Vec::new();
    for k in 0..=total {
        for tail in words(arity - 1, total - k, one_forms_only) {
            let mut heads = vec![PolyForm::t_pow_dt(k)];
            if !one_forms_only {
                heads.insert(0, PolyForm::t_pow(k));
            }
            for head in heads {
                let mut w = vec![head];
                w.extend(tail.iter().cloned());
                out.push(w);
            }
        }
    }
    out
}

/// Basis words of forms whose polynomial degrees sum to at most `total`.
pub fn form_words(arity: usize, total: usize) -> Vec<Vec<PolyForm>> {
    words(arity, total, false)
}

/// Words of basis one-forms `t^k dt` with `Σ k <= total`.
pub fn one_form_words(arity: usize, total: usize) -> Vec<Vec<PolyForm>> {
    words(arity, total, true)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn counts() {
        assert_eq!(form_basis(3).len(), 8);
        assert_eq!(form_words(2, 1).len(), 12);
        assert_eq!(one_form_words(3, 2).len(), 10);
    }
}
