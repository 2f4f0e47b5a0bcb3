//! Finitely presented groups with named marker words.

use std::collections::BTreeMap;
use std::fmt;

use crate::error::{Overflow, ParseError, PresentationError};
use crate::snf::{smith_normal_form, IntMatrix};
use crate::word::{Alphabet, Generator, Word};

/// Marker names used by [`Presentation::family`].
pub const MERIDIAN_B: &str = "meridian_B";
pub const MERIDIAN_G: &str = "meridian_G";

/// `< generators | relators >` plus named marker words.
///
/// Relators are kept exactly as given (freely reduced, not cyclically
/// reduced). Markers keep their declaration order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Presentation {
    alphabet: Alphabet,
    relators: Vec<Word>,
    markers: Vec<(String, Word)>,
}

impl Presentation {
    /// Builds a presentation, checking that every word only uses declared
    /// generators and marker names are valid and unique.
    pub fn new(
        alphabet: Alphabet,
        relators: Vec<Word>,
        markers: Vec<(String, Word)>,
    ) -> Result<Self, PresentationError> {
        let n = alphabet.len();
        let check = |w: &Word| {
            w.syllables()
                .iter()
                .find(|s| s.generator.index() >= n)
                .map_or(Ok(()), |s| {
                    Err(PresentationError::UnknownGenerator(format!(
                        "#{}",
                        s.generator.index()
                    )))
                })
        };
        for r in &relators {
            check(r)?;
        }
        for (i, (name, w)) in markers.iter().enumerate() {
            crate::word::validate_name(name)?;
            if markers[..i].iter().any(|(n, _)| n == name) {
                return Err(PresentationError::InvalidParameter(format!(
                    "duplicate marker `{name}`"
                )));
            }
            check(w)?;
        }
        Ok(Self::from_parts_unchecked(alphabet, relators, markers))
    }

    pub(crate) fn from_parts_unchecked(
        alphabet: Alphabet,
        relators: Vec<Word>,
        markers: Vec<(String, Word)>,
    ) -> Self {
        Presentation {
            alphabet,
            relators,
            markers,
        }
    }

    /// Parses the text grammar (see the crate docs).
    pub fn parse(text: &str) -> Result<Self, ParseError> {
        crate::parse::parse_presentation(text)
    }

    /// The two-relator presentation
    /// `< x, y, a | (yx)^m y (yx)^-m x^-1, x^-1 a x a^-1 x^-1 y a y^-1 >`
    /// with markers `meridian_B = x` and `meridian_G = a`.
    pub fn family(m: i64) -> Result<Self, PresentationError> {
        if m < 1 {
            return Err(PresentationError::InvalidParameter(format!(
                "family parameter m must be >= 1, got {m}"
            )));
        }
        let alphabet = Alphabet::from_names(["x", "y", "a"]).expect("static names");
        let (x, y, a) = (Generator::new(0), Generator::new(1), Generator::new(2));
        let yx = Word::reduce([(y, 1), (x, 1)]);
        let r1 = yx
            .power(m)
            .multiply(&Word::generator(y))
            .multiply(&yx.power(-m))
            .multiply(&Word::syllable(x, -1));
        let r2 = Word::reduce([
            (x, -1),
            (a, 1),
            (x, 1),
            (a, -1),
            (x, -1),
            (y, 1),
            (a, 1),
            (y, -1),
        ]);
        Ok(Presentation {
            alphabet,
            relators: vec![r1, r2],
            markers: vec![
                (MERIDIAN_B.to_string(), Word::generator(x)),
                (MERIDIAN_G.to_string(), Word::generator(a)),
            ],
        })
    }

    pub fn alphabet(&self) -> &Alphabet {
        &self.alphabet
    }

    pub fn generator_names(&self) -> &[String] {
        self.alphabet.names()
    }

    pub fn num_generators(&self) -> usize {
        self.alphabet.len()
    }

    pub fn generator(&self, name: &str) -> Option<Generator> {
        self.alphabet.get(name)
    }

    pub fn relators(&self) -> &[Word] {
        &self.relators
    }

    pub fn markers(&self) -> &[(String, Word)] {
        &self.markers
    }

    pub fn marker(&self, name: &str) -> Option<&Word> {
        self.markers.iter().find(|(n, _)| n == name).map(|(_, w)| w)
    }

    /// Marker lookup falling back to a bare generator name.
    pub fn marker_or_generator(&self, name: &str) -> Option<Word> {
        self.marker(name)
            .cloned()
            .or_else(|| self.generator(name).map(Word::generator))
    }

    pub fn parse_word(&self, text: &str) -> Result<Word, ParseError> {
        self.alphabet.parse_word(text)
    }

    /// Same group with relators replaced.
    pub fn with_relators(&self, relators: Vec<Word>) -> Self {
        Presentation {
            alphabet: self.alphabet.clone(),
            relators,
            markers: self.markers.clone(),
        }
    }

    /// Canonical text form; `parse(render(p)) == p`.
    pub fn render(&self) -> String {
        self.to_string()
    }

    /// Rows are relators, columns generators, entries exponent sums.
    pub fn relation_matrix(&self) -> IntMatrix {
        let rows: Vec<Vec<i64>> = self
            .relators
            .iter()
            .map(|r| {
                self.alphabet
                    .generators()
                    .map(|g| r.exponent_sum(g))
                    .collect()
            })
            .collect();
        IntMatrix::from_rows(&rows, self.num_generators())
    }

    /// Abelianization via the Smith normal form of the relation matrix.
    pub fn abelianize(&self) -> Result<AbelianizationReport, Overflow> {
        let matrix = self.relation_matrix();
        let snf = smith_normal_form(&matrix)?;
        let rank = snf.rank();
        let invariant_factors: Vec<u64> = snf
            .diagonal
            .iter()
            .filter(|&&d| d > 1)
            .map(|&d| d as u64)
            .collect();
        let free_rank = self.num_generators() - rank;

        let weights = if free_rank == 1 && invariant_factors.is_empty() {
            // The free coordinate is column `rank` of the right transform.
            let mut w: Vec<i64> = (0..self.num_generators())
                .map(|i| snf.right[(i, rank)])
                .collect();
            if w.iter().find(|&&v| v != 0).is_some_and(|&v| v < 0) {
                for v in &mut w {
                    *v = v.checked_neg().ok_or(Overflow)?;
                }
            }
            Some(
                self.alphabet
                    .generators()
                    .zip(w)
                    .map(|(g, v)| (self.alphabet.name(g).to_string(), v))
                    .collect(),
            )
        } else {
            None
        };

        Ok(AbelianizationReport {
            invariant_factors,
            free_rank,
            weights,
        })
    }
}

impl fmt::Display for Presentation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "< {} |", self.alphabet.names().join(", "))?;
        for (i, r) in self.relators.iter().enumerate() {
            let sep = if i == 0 { " " } else { ", " };
            write!(f, "{sep}{}", r.display(&self.alphabet))?;
        }
        writeln!(f, " >")?;
        for (name, w) in &self.markers {
            writeln!(f, "meridian {name}: {}", w.display(&self.alphabet))?;
        }
        Ok(())
    }
}

/// `Z^free_rank ⊕ Z/d_1 ⊕ ... ⊕ Z/d_k`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AbelianizationReport {
    /// Torsion coefficients, each > 1, each dividing the next.
    pub invariant_factors: Vec<u64>,
    pub free_rank: usize,
    /// Image of each generator in `Z`, present iff the abelianization is
    /// infinite cyclic. Sign fixed so the first nonzero weight is positive.
    pub weights: Option<BTreeMap<String, i64>>,
}

impl AbelianizationReport {
    pub fn is_infinite_cyclic(&self) -> bool {
        self.weights.is_some()
    }

    /// Weights in generator order, for presentations with infinite cyclic
    /// abelianization.
    pub fn weight_vector(&self, p: &Presentation) -> Option<Vec<i64>> {
        let w = self.weights.as_ref()?;
        Some(p.generator_names().iter().map(|n| w[n]).collect())
    }
}

impl fmt::Display for AbelianizationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts: Vec<String> = Vec::new();
        match self.free_rank {
            0 => {}
            1 => parts.push("Z".into()),
            r => parts.push(format!("Z^{r}")),
        }
        parts.extend(self.invariant_factors.iter().map(|d| format!("Z/{d}")));
        if parts.is_empty() {
            f.write_str("0")
        } else {
            f.write_str(&parts.join(" + "))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const WRITTEN_F1: &str = "< x,y,a | x^-1*y*x*y*x^-1*y^-1, x^-1*a*x*a^-1*x^-1*y*a*y^-1 >";

    fn rotations(w: &Word) -> Vec<Word> {
        let s = w.syllables();
        (0..s.len())
            .map(|i| {
                Word::reduce(
                    s[i..]
                        .iter()
                        .chain(&s[..i])
                        .map(|s| (s.generator, s.exponent)),
                )
            })
            .collect()
    }

    #[test]
    fn family_one_matches_written_presentation() {
        let f1 = Presentation::family(1).unwrap();
        let written = Presentation::parse(WRITTEN_F1).unwrap();
        assert!(rotations(&f1.relators()[0]).contains(&written.relators()[0]));
        assert_eq!(f1.relators()[1], written.relators()[1]);
        assert_eq!(
            f1.relators()[1].display(f1.alphabet()).to_string(),
            "x^-1*a*x*a^-1*x^-1*y*a*y^-1"
        );
        assert_eq!(
            f1.marker(MERIDIAN_B),
            Some(&Word::generator(Generator::new(0)))
        );
        assert_eq!(
            f1.marker(MERIDIAN_G),
            Some(&Word::generator(Generator::new(2)))
        );
    }

    #[test]
    fn family_exponent_sums_do_not_depend_on_m() {
        for m in 1..=6 {
            let p = Presentation::family(m).unwrap();
            let rows = p.relation_matrix();
            assert_eq!((rows[(0, 0)], rows[(0, 1)], rows[(0, 2)]), (-1, 1, 0));
            assert_eq!((rows[(1, 0)], rows[(1, 1)], rows[(1, 2)]), (-1, 0, 1));
            assert_eq!(p.relators()[0].len() as i64, 4 * m + 2);
        }
    }

    #[test]
    fn family_rejects_nonpositive_m() {
        assert!(matches!(
            Presentation::family(0),
            Err(PresentationError::InvalidParameter(_))
        ));
    }

    #[test]
    fn abelianization_examples() {
        for m in 1..=5 {
            let ab = Presentation::family(m).unwrap().abelianize().unwrap();
            assert_eq!(ab.free_rank, 1);
            assert!(ab.invariant_factors.is_empty());
            let w = ab.weights.unwrap();
            assert_eq!((w["x"], w["y"], w["a"]), (1, 1, 1));
        }
        let free = Presentation::parse("< x | >")
            .unwrap()
            .abelianize()
            .unwrap();
        assert_eq!(free.free_rank, 1);
        assert_eq!(free.weights.unwrap()["x"], 1);

        let z2 = Presentation::parse("< x | x^2 >")
            .unwrap()
            .abelianize()
            .unwrap();
        assert_eq!(z2.invariant_factors, vec![2]);
        assert_eq!(z2.free_rank, 0);
        assert!(z2.weights.is_none());
        assert_eq!(z2.to_string(), "Z/2");
    }

    #[test]
    fn weights_are_sign_normalized() {
        let p = Presentation::parse("< a, b | a*b^-1*a^-1*b*b^-1 >").unwrap();
        let ab = p.abelianize().unwrap();
        assert_eq!(ab.weights.unwrap()["a"], 1);
        let p = Presentation::parse("< u, v | u^2*v^-1 >").unwrap();
        let w = p.abelianize().unwrap().weights.unwrap();
        assert_eq!((w["u"], w["v"]), (1, 2));
    }

    #[test]
    fn render_is_canonical() {
        let p = Presentation::family(2).unwrap();
        let text = p.render();
        assert_eq!(
            text,
            "< x, y, a | y*x*y*x*y*x^-1*y^-1*x^-1*y^-1*x^-1, x^-1*a*x*a^-1*x^-1*y*a*y^-1 >\n\
             meridian meridian_B: x\nmeridian meridian_G: a\n"
        );
        let back = Presentation::parse(&text).unwrap();
        assert_eq!(back, p);
        assert_eq!(back.render(), text);
        assert_eq!(
            Presentation::parse("< x | >").unwrap().render(),
            "< x | >\n"
        );
        let trivial = Presentation::parse("<x|x*x^-1>").unwrap();
        assert_eq!(trivial.render(), "< x | 1 >\n");
        assert_eq!(Presentation::parse(&trivial.render()).unwrap(), trivial);
    }

    #[test]
    fn new_rejects_foreign_generators() {
        let al = Alphabet::from_names(["x"]).unwrap();
        let bad = Word::generator(Generator::new(3));
        assert!(Presentation::new(al, vec![bad], vec![]).is_err());
    }
}
