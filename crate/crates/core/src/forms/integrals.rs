use crate::scalars_polys::{int, PiecewisePoly, Rational};

/// `s ↦ ∫_{0 <= t_1 <= ... <= t_n <= s} a_1(t_1) ... a_n(t_n)` as a function
/// of the upper limit, by nested integration `F_k = ∫ a_k F_{k-1}`.
/// The empty product gives the constant `1`.
pub fn iterated_integral_function(a: &[PiecewisePoly]) -> PiecewisePoly {
    let mut acc = PiecewisePoly::one();
    for ak in a {
        acc = (&acc * ak).integrate_from_zero();
    }
    acc
}

/// The ordered simplex integral evaluated at upper limit `s`.
pub fn simplex_iterated_integral(a: &[PiecewisePoly], s: &Rational) -> Rational {
    iterated_integral_function(a).eval(s)
}

/// Closed form for `a_i = t^{l_i - 1}`:
/// `s^{l_1+...+l_n} / (l_1 (l_1 + l_2) ... (l_1 + ... + l_n))`.
pub fn monomial_simplex_integral(exponents_plus_one: &[usize], s: &Rational) -> Rational {
    let mut denom = int(1);
    let mut partial = 0;
    for &l in exponents_plus_one {
        partial += l;
        denom *= int(partial as i64);
    }
    let mut num = int(1);
    for _ in 0..partial {
        num *= s;
    }
    num / denom
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalars_polys::{factorial, rat, Poly};

    fn mono(k: usize) -> PiecewisePoly {
        Poly::monomial(k).into()
    }

    #[test]
    fn examples() {
        let s = rat(2, 5);
        assert_eq!(simplex_iterated_integral(&[PiecewisePoly::one()], &s), s);
        assert_eq!(
            simplex_iterated_integral(&[mono(1), mono(1)], &int(1)),
            rat(1, 8)
        );
        assert_eq!(
            simplex_iterated_integral(&[mono(0), mono(1)], &int(1)),
            rat(1, 3)
        );
    }

    #[test]
    fn volume_of_simplex() {
        let s = rat(3, 4);
        for n in 0..6 {
            let ones = vec![PiecewisePoly::one(); n];
            let expected = monomial_simplex_integral(&vec![1; n], &s);
            assert_eq!(simplex_iterated_integral(&ones, &s), expected);
            assert_eq!(expected * factorial(n), {
                let mut p = int(1);
                for _ in 0..n {
                    p *= &s;
                }
                p
            });
        }
    }
}
