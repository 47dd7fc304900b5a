use super::permutation::unshuffles;
use crate::scalars_polys::{one, Rational};
use num_traits::{One, Zero};
use std::collections::BTreeMap;
use std::fmt;

/// A basis letter `s v` of a suspended graded space. `degree` is the degree
/// after suspension.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct GradedLetter {
    pub id: u32,
    pub degree: i32,
}

impl GradedLetter {
    pub fn new(id: u32, degree: i32) -> Self {
        GradedLetter { id, degree }
    }

    pub fn is_odd(&self) -> bool {
        self.degree.rem_euclid(2) == 1
    }
}

impl fmt::Debug for GradedLetter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "v{}", self.id)?;
        if self.degree != 0 {
            write!(f, "[{}]", self.degree)?;
        }
        Ok(())
    }
}

pub type Word = Vec<GradedLetter>;

/// Total degree of a word.
pub fn word_degree(w: &[GradedLetter]) -> i32 {
    w.iter().map(|l| l.degree).sum()
}

/// Koszul sign of reordering `items` so that position `k` of the result
/// holds `items[order[k]]`: every pair of odd elements whose relative order
/// is reversed contributes a factor `-1`.
pub fn koszul_sign_by<T>(items: &[T], order: &[usize], odd: impl Fn(&T) -> bool) -> bool {
    let mut negative = false;
    for k in 0..order.len() {
        if !odd(&items[order[k]]) {
            continue;
        }
        for l in k + 1..order.len() {
            if order[k] > order[l] && odd(&items[order[l]]) {
                negative = !negative;
            }
        }
    }
    negative
}

/// The reordered word together with its Koszul sign (`true` for `-1`).
pub fn rearrange(word: &[GradedLetter], order: &[usize]) -> (Word, bool) {
    let sign = koszul_sign_by(word, order, GradedLetter::is_odd);
    (order.iter().map(|&i| word[i]).collect(), sign)
}

/// A finite linear combination of words of length at least one.
#[derive(Clone, PartialEq, Eq, Default, Hash)]
pub struct TensorElement {
    terms: BTreeMap<Word, Rational>,
}

impl TensorElement {
    pub fn zero() -> Self {
        Self::default()
    }

    /// A single word with coefficient one.
    pub fn word(letters: Word) -> Self {
        Self::term(letters, one())
    }

    pub fn term(letters: Word, c: Rational) -> Self {
        let mut t = Self::zero();
        t.add_term(letters, c);
        t
    }

    pub fn letter(l: GradedLetter) -> Self {
        Self::word(vec![l])
    }

    pub fn add_term(&mut self, w: Word, c: Rational) {
        if c.is_zero() {
            return;
        }
        assert!(!w.is_empty(), "reduced tensor algebra has no empty word");
        let entry = self.terms.entry(w);
        match entry {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn add_assign(&mut self, other: &Self) {
        for (w, c) in &other.terms {
            self.add_term(w.clone(), c.clone());
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        out.add_assign(other);
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.scale(&-one()))
    }

    pub fn scale(&self, c: &Rational) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        TensorElement {
            terms: self.terms.iter().map(|(w, a)| (w.clone(), a * c)).collect(),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Word, &Rational)> {
        self.terms.iter()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, w: &[GradedLetter]) -> Rational {
        self.terms.get(w).cloned().unwrap_or_else(Rational::zero)
    }

    /// Linear extension of a map defined on words.
    pub fn map_words(&self, f: impl Fn(&[GradedLetter]) -> TensorElement) -> Self {
        let mut out = Self::zero();
        for (w, c) in &self.terms {
            out.add_assign(&f(w).scale(c));
        }
        out
    }

    /// Concatenation product, extended bilinearly.
    pub fn concat(&self, other: &Self) -> Self {
        let mut out = Self::zero();
        for (a, ca) in &self.terms {
            for (b, cb) in &other.terms {
                let mut w = a.clone();
                w.extend_from_slice(b);
                out.add_term(w, ca * cb);
            }
        }
        out
    }

    /// Graded commutator `ab - (-1)^{|a||b|} ba`, extended bilinearly.
    pub fn commutator(&self, other: &Self) -> Self {
        let mut out = Self::zero();
        for (a, ca) in &self.terms {
            for (b, cb) in &other.terms {
                let c = ca * cb;
                let odd = word_degree(a).rem_euclid(2) == 1 && word_degree(b).rem_euclid(2) == 1;
                let mut ab = a.clone();
                ab.extend_from_slice(b);
                let mut ba = b.clone();
                ba.extend_from_slice(a);
                out.add_term(ab, c.clone());
                out.add_term(ba, if odd { c } else { -c });
            }
        }
        out
    }

    /// Shuffle product with Koszul signs.
    pub fn shuffle(&self, other: &Self) -> Self {
        let mut out = Self::zero();
        for (a, ca) in &self.terms {
            for (b, cb) in &other.terms {
                out.add_assign(&shuffle_words(a, b).scale(&(ca * cb)));
            }
        }
        out
    }

    /// The pairing making the word basis orthonormal.
    pub fn pairing(&self, other: &Self) -> Rational {
        self.terms.iter().map(|(w, c)| c * other.coeff(w)).sum()
    }
}

/// `(v_1...v_p) ⊛ (v_{p+1}...v_n) = Σ_{σ ∈ S(p,q)} ε(σ) v_{σ^{-1}(1)} ... v_{σ^{-1}(n)}`.
pub fn shuffle_words(a: &[GradedLetter], b: &[GradedLetter]) -> TensorElement {
    let mut joined = a.to_vec();
    joined.extend_from_slice(b);
    let mut out = TensorElement::zero();
    for sigma in unshuffles(&[a.len(), b.len()]) {
        let order = sigma.inverse().zero_based();
        let (w, negative) = rearrange(&joined, &order);
        out.add_term(w, if negative { -one() } else { Rational::one() });
    }
    out
}

impl fmt::Debug for TensorElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (w, c) in &self.terms {
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            write!(f, "({c})")?;
            for l in w {
                write!(f, " {l:?}")?;
            }
        }
        Ok(())
    }
}
