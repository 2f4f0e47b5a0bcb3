//! Permutations of `{0, .., n-1}`, written 1-based in cycle notation.
//!
//! Products follow the convention used by GAP: `p.compose(&q)` applies `p`
//! first and then `q`, so `(1,2).compose((2,3)) = (1,3,2)`. Word evaluation
//! multiplies left to right under this rule everywhere in the crate.

use std::fmt;

use crate::error::GroupError;

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Permutation {
    images: Vec<u32>,
}

fn invalid(text: &str, reason: impl Into<String>) -> GroupError {
    GroupError::InvalidPermutation {
        text: text.to_string(),
        reason: reason.into(),
    }
}

fn gcd(a: u64, b: u64) -> u64 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

impl Permutation {
    pub fn identity(degree: usize) -> Self {
        Permutation {
            images: (0..degree as u32).collect(),
        }
    }

    /// `images[i]` is the 0-based image of point `i`.
    pub fn from_images(images: Vec<u32>) -> Result<Self, GroupError> {
        let n = images.len();
        let mut seen = vec![false; n];
        for &i in &images {
            let i = i as usize;
            if i >= n || seen[i] {
                return Err(invalid(&format!("{images:?}"), "not a bijection"));
            }
            seen[i] = true;
        }
        Ok(Permutation { images })
    }

    /// Product of 1-based cycles, applied left to right.
    pub fn from_cycles(degree: usize, cycles: &[Vec<usize>]) -> Result<Self, GroupError> {
        let mut acc = Permutation::identity(degree);
        for cycle in cycles {
            let text = format!("{cycle:?}");
            let mut c = Permutation::identity(degree);
            for (k, &p) in cycle.iter().enumerate() {
                if p == 0 || p > degree {
                    return Err(invalid(&text, format!("point {p} outside 1..={degree}")));
                }
                if cycle[..k].contains(&p) {
                    return Err(invalid(&text, format!("point {p} repeated in a cycle")));
                }
                let next = cycle[(k + 1) % cycle.len()];
                c.images[p - 1] = (next - 1) as u32;
            }
            acc = acc.compose(&c).expect("same degree");
        }
        Ok(acc)
    }

    /// Parses cycle notation such as `(1,5,4,3,2)` or `(1,2)(3,4)`; `()` is
    /// the identity. With `degree = None` the degree is the largest point.
    pub fn parse(text: &str, degree: Option<usize>) -> Result<Self, GroupError> {
        let compact: String = text.chars().filter(|c| !c.is_whitespace()).collect();
        if compact.is_empty() {
            return Err(invalid(text, "empty permutation literal"));
        }
        let mut cycles: Vec<Vec<usize>> = Vec::new();
        let mut rest = compact.as_str();
        while !rest.is_empty() {
            let Some(body) = rest.strip_prefix('(') else {
                return Err(invalid(text, "expected `(`"));
            };
            let Some(close) = body.find(')') else {
                return Err(invalid(text, "unclosed `(`"));
            };
            let inner = &body[..close];
            if !inner.is_empty() {
                let points = inner
                    .split(',')
                    .map(|s| {
                        s.parse::<usize>()
                            .map_err(|_| invalid(text, format!("bad point `{s}`")))
                    })
                    .collect::<Result<Vec<_>, _>>()?;
                cycles.push(points);
            }
            rest = &body[close + 1..];
        }
        let max = cycles.iter().flatten().copied().max().unwrap_or(0);
        let degree = match degree {
            Some(d) if max > d => {
                return Err(invalid(text, format!("point {max} exceeds degree {d}")))
            }
            Some(d) => d,
            None => max.max(1),
        };
        Permutation::from_cycles(degree, &cycles).map_err(|e| match e {
            GroupError::InvalidPermutation { reason, .. } => invalid(text, reason),
            other => other,
        })
    }

    pub fn degree(&self) -> usize {
        self.images.len()
    }

    /// Image of 0-based `point`.
    pub fn apply(&self, point: usize) -> usize {
        self.images[point] as usize
    }

    pub fn images(&self) -> &[u32] {
        &self.images
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(i, &j)| i as u32 == j)
    }

    /// `self` first, then `other`.
    pub fn compose(&self, other: &Permutation) -> Result<Permutation, GroupError> {
        if self.degree() != other.degree() {
            return Err(GroupError::DegreeMismatch(self.degree(), other.degree()));
        }
        Ok(Permutation {
            images: self
                .images
                .iter()
                .map(|&i| other.images[i as usize])
                .collect(),
        })
    }

    pub fn inverse(&self) -> Permutation {
        let mut images = vec![0; self.degree()];
        for (i, &j) in self.images.iter().enumerate() {
            images[j as usize] = i as u32;
        }
        Permutation { images }
    }

    /// `self^k`; negative `k` uses the inverse.
    pub fn pow(&self, k: i64) -> Permutation {
        let order = self.order();
        let e = k.rem_euclid(order as i64) as u64;
        let mut acc = Permutation::identity(self.degree());
        for _ in 0..e {
            acc = acc.compose(self).expect("same degree");
        }
        acc
    }

    /// Nontrivial cycles, 1-based, each starting at its smallest point, in
    /// order of that point.
    pub fn cycles(&self) -> Vec<Vec<usize>> {
        let mut seen = vec![false; self.degree()];
        let mut out = Vec::new();
        for start in 0..self.degree() {
            if seen[start] {
                continue;
            }
            let mut cycle = vec![start + 1];
            seen[start] = true;
            let mut p = self.apply(start);
            while p != start {
                seen[p] = true;
                cycle.push(p + 1);
                p = self.apply(p);
            }
            if cycle.len() > 1 {
                out.push(cycle);
            }
        }
        out
    }

    /// Sorted lengths of all cycles, fixed points included.
    pub fn cycle_type(&self) -> Vec<usize> {
        let moved: usize = self.cycles().iter().map(Vec::len).sum();
        let mut t: Vec<usize> = self.cycles().iter().map(Vec::len).collect();
        t.extend(std::iter::repeat_n(1, self.degree() - moved));
        t.sort_unstable();
        t
    }

    pub fn order(&self) -> u64 {
        self.cycles()
            .iter()
            .map(|c| c.len() as u64)
            .fold(1, |acc, l| acc / gcd(acc, l) * l)
    }

    pub fn is_even(&self) -> bool {
        self.cycles().iter().map(|c| c.len() - 1).sum::<usize>() % 2 == 0
    }
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let cycles = self.cycles();
        if cycles.is_empty() {
            return f.write_str("()");
        }
        for c in cycles {
            let body: Vec<String> = c.iter().map(usize::to_string).collect();
            write!(f, "({})", body.join(","))?;
        }
        Ok(())
    }
}

impl fmt::Debug for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn p(s: &str) -> Permutation {
        Permutation::parse(s, Some(5)).unwrap()
    }

    #[test]
    fn examples() {
        let sigma = p("(1,5,4,3,2)");
        assert_eq!(sigma.inverse(), p("(1,2,3,4,5)"));
        assert_eq!(sigma.order(), 5);
        assert!(sigma.compose(&sigma.inverse()).unwrap().is_identity());
        assert_eq!(sigma.to_string(), "(1,5,4,3,2)");
        assert_eq!(Permutation::identity(5).to_string(), "()");
    }

    #[test]
    fn left_to_right_convention() {
        // 1 -(1,2)-> 2 -(2,3)-> 3, so 1 maps to 3.
        let prod = p("(1,2)").compose(&p("(2,3)")).unwrap();
        assert_eq!(prod, p("(1,3,2)"));
        assert_eq!(p("(1,2)(2,3)"), prod);
    }

    #[test]
    fn parse_errors() {
        assert!(Permutation::parse("(1,6)", Some(5)).is_err());
        assert!(Permutation::parse("(1,1)", Some(5)).is_err());
        assert!(Permutation::parse("1,2", Some(5)).is_err());
        assert!(Permutation::parse("(1,2", Some(5)).is_err());
        assert!(Permutation::parse("", Some(5)).is_err());
        assert!(Permutation::parse("(0,1)", Some(5)).is_err());
        assert_eq!(Permutation::parse("()", None).unwrap().degree(), 1);
        assert_eq!(Permutation::parse("(2,4)", None).unwrap().degree(), 4);
    }

    #[test]
    fn degree_mismatch() {
        let a = Permutation::identity(3);
        let b = Permutation::identity(4);
        assert_eq!(a.compose(&b), Err(GroupError::DegreeMismatch(3, 4)));
    }

    #[test]
    fn powers_and_parity() {
        let sigma = p("(1,5,4,3,2)");
        assert!(sigma.pow(60).is_identity());
        assert_eq!(sigma.pow(-1), sigma.inverse());
        assert_eq!(sigma.pow(7), sigma.pow(2));
        assert!(sigma.is_even());
        assert!(!p("(1,2)").is_even());
        assert_eq!(p("(1,2)(3,4,5)").order(), 6);
        assert_eq!(p("(1,2)(3,4,5)").cycle_type(), vec![2, 3]);
    }

    fn perm5() -> impl Strategy<Value = Permutation> {
        Just((0u32..5).collect::<Vec<_>>())
            .prop_shuffle()
            .prop_map(|v| Permutation::from_images(v).unwrap())
    }

    proptest! {
        #[test]
        fn display_roundtrip(a in perm5()) {
            prop_assert_eq!(Permutation::parse(&a.to_string(), Some(5)).unwrap(), a);
        }

        #[test]
        fn compose_is_associative(a in perm5(), b in perm5(), c in perm5()) {
            let l = a.compose(&b).unwrap().compose(&c).unwrap();
            let r = a.compose(&b.compose(&c).unwrap()).unwrap();
            prop_assert_eq!(l, r);
            prop_assert_eq!(a.compose(&b).unwrap().inverse(), b.inverse().compose(&a.inverse()).unwrap());
        }
    }
}
