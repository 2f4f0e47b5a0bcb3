//! Fox free differential calculus and the Alexander polynomial.
//!
//! The derivative `∂/∂g` is the unique linear map on the integral group ring
//! of the free group with `∂g/∂g = 1`, `∂h/∂g = 0` for `h != g`, and
//! `∂(uv)/∂g = ∂u/∂g + u·∂v/∂g`. Syllables `g^k` are differentiated in
//! closed form, so a word costs one pass over its syllables regardless of
//! exponent sizes.

use std::collections::btree_map::Entry;
use std::collections::BTreeMap;
use std::fmt;

use crate::error::{FoxError, Overflow};
use crate::laurent::LaurentPoly;
use crate::presentation::Presentation;
use crate::word::{Alphabet, Generator, Word};

/// Formal `Z`-linear combination of reduced words.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct GroupRingElement {
    terms: BTreeMap<Word, i64>,
}

impl GroupRingElement {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn from_word(w: Word) -> Self {
        let mut e = Self::zero();
        e.add_term(w, 1);
        e
    }

    pub fn from_terms<I: IntoIterator<Item = (Word, i64)>>(terms: I) -> Self {
        let mut e = Self::zero();
        for (w, c) in terms {
            e.add_term(w, c);
        }
        e
    }

    pub fn add_term(&mut self, w: Word, c: i64) {
        if c == 0 {
            return;
        }
        match self.terms.entry(w) {
            Entry::Occupied(mut o) => {
                let v = o
                    .get()
                    .checked_add(c)
                    .expect("group ring coefficient overflow");
                if v == 0 {
                    o.remove();
                } else {
                    *o.get_mut() = v;
                }
            }
            Entry::Vacant(slot) => {
                slot.insert(c);
            }
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Word, i64)> {
        self.terms.iter().map(|(w, &c)| (w, c))
    }

    pub fn coefficient(&self, w: &Word) -> i64 {
        self.terms.get(w).copied().unwrap_or(0)
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (w, c) in other.terms() {
            out.add_term(w.clone(), c);
        }
        out
    }

    /// `u · self`.
    pub fn left_multiply(&self, u: &Word) -> Self {
        Self::from_terms(self.terms().map(|(w, c)| (u.multiply(w), c)))
    }

    /// Image under `g ↦ t^{weights[g]}`.
    pub fn abelianize(&self, weights: &[i64]) -> Result<LaurentPoly, FoxError> {
        let mut out = LaurentPoly::zero();
        for (w, c) in self.terms() {
            let mut e = 0i64;
            for s in w.syllables() {
                let wt = *weights
                    .get(s.generator.index())
                    .ok_or(FoxError::MissingWeight(s.generator))?;
                let term = s.exponent.checked_mul(wt).ok_or(Overflow)?;
                e = e.checked_add(term).ok_or(Overflow)?;
            }
            out = out.checked_add(&LaurentPoly::monomial(c, e))?;
        }
        Ok(out)
    }

    pub fn display<'a>(&'a self, alphabet: &'a Alphabet) -> impl fmt::Display + 'a {
        RingDisplay {
            elem: self,
            alphabet,
        }
    }
}

struct RingDisplay<'a> {
    elem: &'a GroupRingElement,
    alphabet: &'a Alphabet,
}

impl fmt::Display for RingDisplay<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.elem.is_zero() {
            return f.write_str("0");
        }
        for (i, (w, c)) in self.elem.terms().enumerate() {
            let mag = c.unsigned_abs();
            match (i, c < 0) {
                (0, true) => f.write_str("-")?,
                (0, false) => {}
                (_, true) => f.write_str(" - ")?,
                (_, false) => f.write_str(" + ")?,
            }
            if mag != 1 {
                write!(f, "{mag}·")?;
            }
            write!(f, "{}", w.display(self.alphabet))?;
        }
        Ok(())
    }
}

/// `∂w/∂g`.
pub fn fox_derivative(w: &Word, g: Generator) -> GroupRingElement {
    let mut out = GroupRingElement::zero();
    let mut prefix = Word::identity();
    for s in w.syllables() {
        if s.generator == g {
            if s.exponent > 0 {
                // Σ_{i=0}^{k-1} prefix·g^i
                for i in 0..s.exponent {
                    out.add_term(prefix.multiply(&Word::syllable(g, i)), 1);
                }
            } else {
                // -Σ_{i=1}^{|k|} prefix·g^-i
                for i in 1..=-s.exponent {
                    out.add_term(prefix.multiply(&Word::syllable(g, -i)), -1);
                }
            }
        }
        prefix = prefix.multiply(&Word::syllable(s.generator, s.exponent));
    }
    out
}

/// Matrix of abelianized Fox derivatives: rows are relators, columns
/// generators.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AlexanderMatrix {
    rows: usize,
    cols: usize,
    entries: Vec<LaurentPoly>,
}

impl AlexanderMatrix {
    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn entry(&self, i: usize, j: usize) -> &LaurentPoly {
        &self.entries[i * self.cols + j]
    }

    pub fn row(&self, i: usize) -> &[LaurentPoly] {
        &self.entries[i * self.cols..(i + 1) * self.cols]
    }

    pub fn to_rows(&self) -> Vec<Vec<LaurentPoly>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    /// Determinant of the square submatrix on the given rows and columns.
    pub fn minor(&self, rows: &[usize], cols: &[usize]) -> Result<LaurentPoly, Overflow> {
        assert_eq!(rows.len(), cols.len(), "minor must be square");
        determinant(self, rows, cols)
    }
}

/// Cofactor expansion along the first listed row.
fn determinant(
    m: &AlexanderMatrix,
    rows: &[usize],
    cols: &[usize],
) -> Result<LaurentPoly, Overflow> {
    let Some((&r, rest)) = rows.split_first() else {
        return Ok(LaurentPoly::one());
    };
    let mut acc = LaurentPoly::zero();
    for (k, &c) in cols.iter().enumerate() {
        let entry = m.entry(r, c);
        if entry.is_zero() {
            continue;
        }
        let sub_cols: Vec<usize> = cols.iter().copied().filter(|&x| x != c).collect();
        let term = entry.checked_mul(&determinant(m, rest, &sub_cols)?)?;
        acc = if k % 2 == 0 {
            acc.checked_add(&term)?
        } else {
            acc.checked_sub(&term)?
        };
    }
    Ok(acc)
}

fn weights_for(p: &Presentation) -> Result<Vec<i64>, FoxError> {
    let ab = p.abelianize()?;
    ab.weight_vector(p)
        .ok_or_else(|| FoxError::NotInfiniteCyclicH1(ab.to_string()))
}

pub fn alexander_matrix(p: &Presentation) -> Result<AlexanderMatrix, FoxError> {
    let weights = weights_for(p)?;
    let cols = p.num_generators();
    let mut entries = Vec::with_capacity(p.relators().len() * cols);
    for r in p.relators() {
        for g in p.alphabet().generators() {
            entries.push(fox_derivative(r, g).abelianize(&weights)?);
        }
    }
    Ok(AlexanderMatrix {
        rows: p.relators().len(),
        cols,
        entries,
    })
}

/// All `k`-element subsets of `0..n` in lexicographic order.
fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(k);
    fn rec(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            if n - i < k - cur.len() {
                break;
            }
            cur.push(i);
            rec(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    rec(0, n, k, &mut cur, &mut out);
    out
}

/// Generator of the first elementary ideal: normalized gcd of all maximal
/// `(g-1) x (g-1)` minors of the Alexander matrix.
pub fn alexander_polynomial(p: &Presentation) -> Result<LaurentPoly, FoxError> {
    let matrix = alexander_matrix(p)?;
    alexander_polynomial_of(&matrix)
}

/// Same as [`alexander_polynomial`] for a precomputed matrix.
pub fn alexander_polynomial_of(matrix: &AlexanderMatrix) -> Result<LaurentPoly, FoxError> {
    let g = matrix.cols();
    let size = g.saturating_sub(1);
    if matrix.rows() < size {
        return Err(FoxError::DeficiencyTooLarge {
            relators: matrix.rows(),
            generators: g,
        });
    }
    let mut acc = LaurentPoly::zero();
    for rows in subsets(matrix.rows(), size) {
        for cols in subsets(g, size) {
            let minor = matrix.minor(&rows, &cols)?;
            acc = acc.gcd(&minor)?;
        }
    }
    Ok(acc.normalize_up_to_units())
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn lp(s: &str) -> LaurentPoly {
        s.parse().unwrap()
    }

    fn f1() -> Presentation {
        Presentation::family(1).unwrap()
    }

    #[test]
    fn axioms() {
        let p = f1();
        let (x, y) = (Generator::new(0), Generator::new(1));
        let dx = fox_derivative(&Word::generator(x), x);
        assert_eq!(dx, GroupRingElement::from_word(Word::identity()));
        assert!(fox_derivative(&Word::generator(y), x).is_zero());
        let inv = fox_derivative(&Word::syllable(x, -1), x);
        assert_eq!(
            inv,
            GroupRingElement::from_terms([(Word::syllable(x, -1), -1)])
        );
        let cube = fox_derivative(&Word::syllable(x, 3), x);
        assert_eq!(cube.display(p.alphabet()).to_string(), "1 + x + x^2");
        let neg = fox_derivative(&Word::syllable(x, -2), x);
        assert_eq!(
            GroupRingElement::from_terms([
                (Word::syllable(x, -1), -1),
                (Word::syllable(x, -2), -1)
            ]),
            neg
        );
    }

    #[test]
    fn relator_two_derivatives() {
        let p = f1();
        let r2 = &p.relators()[1];
        let w = |s: &str| p.parse_word(s).unwrap();
        let dx = fox_derivative(r2, p.generator("x").unwrap());
        let want = GroupRingElement::from_terms([
            (w("x^-1"), -1),
            (w("x^-1*a"), 1),
            (w("x^-1*a*x*a^-1*x^-1"), -1),
        ]);
        assert_eq!(dx, want);

        // x^-1 (1 + a x (-a^-1 + a^-1 x^-1 y)) expanded
        let da = fox_derivative(r2, p.generator("a").unwrap());
        let want = GroupRingElement::from_terms([
            (w("x^-1"), 1),
            (w("x^-1*a*x*a^-1"), -1),
            (w("x^-1*a*x*a^-1*x^-1*y"), 1),
        ]);
        assert_eq!(da, want);
        assert_eq!(da.len(), 3);

        let ones = [1, 1, 1];
        assert_eq!(da.abelianize(&ones).unwrap(), lp("t^-1"));
        let dy = fox_derivative(r2, p.generator("y").unwrap());
        assert_eq!(dy.abelianize(&ones).unwrap(), lp("t^-1 - 1"));
        assert!(GroupRingElement::zero()
            .abelianize(&ones)
            .unwrap()
            .is_zero());
        assert!(matches!(
            da.abelianize(&[1]),
            Err(FoxError::MissingWeight(_))
        ));
    }

    #[test]
    fn family_matrix_m1() {
        let m = alexander_matrix(&f1()).unwrap();
        assert_eq!((m.rows(), m.cols()), (2, 3));
        assert_eq!(m.row(1), &[lp("1 - 2t^-1"), lp("t^-1 - 1"), lp("t^-1")]);
        let published_row1 = lp("-t^-1 + 1 - t");
        assert!(m.entry(0, 0).is_associate(&published_row1));
        assert!(m.entry(0, 1).is_associate(&published_row1));
        assert_eq!(m.entry(0, 0), &-m.entry(0, 1));
        assert!(m.entry(0, 2).is_zero());
    }

    #[test]
    fn rotated_relator_gives_literal_row() {
        // Same group written with r1 = x^-1 (yx)^m y (yx)^-m.
        for m in 1..=3 {
            let f = Presentation::family(m).unwrap();
            let r1 = f
                .parse_word(&format!("x^-1*(y*x)^{m}*y*(y*x)^-{m}"))
                .unwrap();
            let rotated = f.with_relators(vec![r1, f.relators()[1].clone()]);
            let mat = alexander_matrix(&rotated).unwrap();
            let want = LaurentPoly::from_terms(
                (-1..=2 * m - 1).map(|k| (if k.rem_euclid(2) == 0 { 1 } else { -1 }, k)),
            )
            .unwrap();
            assert_eq!(mat.entry(0, 0), &want);
            assert_eq!(mat.entry(0, 1), &-&want);
        }
    }

    #[test]
    fn alexander_polynomial_examples() {
        for m in 1..=5i64 {
            let delta = alexander_polynomial(&Presentation::family(m).unwrap()).unwrap();
            let formula = LaurentPoly::from_terms(
                (0..=2 * m).map(|k| (if k % 2 == 0 { 1 } else { -1 }, k - 2)),
            )
            .unwrap();
            assert!(delta.is_associate(&formula));
            assert_eq!(delta.breadth().unwrap(), 2 * m as u64);
        }
        let free = Presentation::parse("< x | >").unwrap();
        assert_eq!(alexander_polynomial(&free).unwrap(), LaurentPoly::one());
        let m = alexander_matrix(&free).unwrap();
        assert_eq!((m.rows(), m.cols()), (0, 1));

        let trefoil = Presentation::parse("< a,b | a*b*a*b^-1*a^-1*b^-1 >").unwrap();
        assert_eq!(alexander_polynomial(&trefoil).unwrap(), lp("1 - t + t^2"));
    }

    #[test]
    fn trefoil_matrix_matches_hand_computation() {
        // ∂r/∂a = 1 + ab - abab^-1a^-1 -> 1 - t + t^2
        // ∂r/∂b = a - abab^-1 - abab^-1a^-1b^-1 -> -1 + t - t^2
        let trefoil = Presentation::parse("< a,b | a*b*a*b^-1*a^-1*b^-1 >").unwrap();
        let m = alexander_matrix(&trefoil).unwrap();
        assert_eq!(m.row(0), &[lp("1 - t + t^2"), lp("-1 + t - t^2")]);
    }

    #[test]
    fn error_paths() {
        let z2 = Presentation::parse("< x | x^2 >").unwrap();
        assert!(matches!(
            alexander_polynomial(&z2),
            Err(FoxError::NotInfiniteCyclicH1(_))
        ));
        let free2 = Presentation::parse("< x, y, z | x*y^-1 >").unwrap();
        assert!(matches!(
            alexander_polynomial(&free2),
            Err(FoxError::NotInfiniteCyclicH1(_))
        ));
        let mut m = alexander_matrix(&Presentation::family(1).unwrap()).unwrap();
        m.rows = 1;
        m.entries.truncate(3);
        assert!(matches!(
            alexander_polynomial_of(&m),
            Err(FoxError::DeficiencyTooLarge { .. })
        ));
    }

    #[test]
    fn family_gcd_equals_single_minor() {
        for m in 1..=5 {
            let mat = alexander_matrix(&Presentation::family(m).unwrap()).unwrap();
            let delta = alexander_polynomial_of(&mat).unwrap();
            // Drop the `a` column: the minor on x, y.
            let chosen = mat.minor(&[0, 1], &[0, 1]).unwrap();
            assert!(delta.is_associate(&chosen), "m={m}: {delta} vs {chosen}");
        }
    }

    fn word_strategy(gens: usize) -> impl Strategy<Value = Word> {
        prop::collection::vec((0..gens, prop_oneof![-3i64..=-1, 1i64..=3]), 0..10)
            .prop_map(|v| Word::reduce(v.into_iter().map(|(g, k)| (Generator::new(g), k))))
    }

    proptest! {
        #[test]
        fn product_rule(u in word_strategy(3), v in word_strategy(3), g in 0usize..3) {
            let g = Generator::new(g);
            let lhs = fox_derivative(&u.multiply(&v), g);
            let rhs = fox_derivative(&u, g).add(&fox_derivative(&v, g).left_multiply(&u));
            prop_assert_eq!(lhs, rhs);
        }

        #[test]
        fn fundamental_identity(w in word_strategy(3), weights in prop::collection::vec(-2i64..=2, 3)) {
            let mut lhs = LaurentPoly::zero();
            for g in 0..3 {
                let d = fox_derivative(&w, Generator::new(g)).abelianize(&weights).unwrap();
                let factor = LaurentPoly::monomial(1, weights[g]) - LaurentPoly::one();
                lhs = lhs + d * factor;
            }
            let total: i64 = w.syllables().iter().map(|s| s.exponent * weights[s.generator.index()]).sum();
            prop_assert_eq!(lhs, LaurentPoly::monomial(1, total) - LaurentPoly::one());
        }
    }
}
