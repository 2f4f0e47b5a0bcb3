//! Finite permutation groups stored as explicit element lists.

use std::collections::{HashMap, VecDeque};
use std::fmt;
use std::str::FromStr;

use crate::error::GroupError;
use crate::perm::Permutation;
use crate::word::GroupOps;

/// Default cap on the number of elements [`FiniteGroup::build`] enumerates.
pub const DEFAULT_ORDER_CAP: u64 = 1_000_000;

/// How to construct a group.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum GroupSpec {
    Symmetric(usize),
    Alternating(usize),
    Generated {
        degree: usize,
        generators: Vec<Permutation>,
    },
}

impl FromStr for GroupSpec {
    type Err = GroupError;

    /// `S4`, `A5`, or `gen:5:[(1,2,3),(1,2)]`.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let bad = |reason: &str| GroupError::InvalidSpec {
            text: s.to_string(),
            reason: reason.to_string(),
        };
        let t = s.trim();
        if let Some(rest) = t.strip_prefix("gen:") {
            let (deg, list) = rest
                .split_once(':')
                .ok_or_else(|| bad("expected gen:DEGREE:[...]"))?;
            let degree: usize = deg.trim().parse().map_err(|_| bad("bad degree"))?;
            if degree == 0 {
                return Err(bad("degree must be at least 1"));
            }
            let list = list.trim();
            let inner = list
                .strip_prefix('[')
                .and_then(|l| l.strip_suffix(']'))
                .ok_or_else(|| bad("generator list must be in [...]"))?;
            let mut generators = Vec::new();
            let mut depth = 0usize;
            let mut start = 0usize;
            for (i, c) in inner.char_indices() {
                match c {
                    '(' => depth += 1,
                    ')' => depth = depth.checked_sub(1).ok_or_else(|| bad("unbalanced `)`"))?,
                    ',' if depth == 0 => {
                        generators.push(Permutation::parse(&inner[start..i], Some(degree))?);
                        start = i + 1;
                    }
                    _ => {}
                }
            }
            if !inner[start..].trim().is_empty() {
                generators.push(Permutation::parse(&inner[start..], Some(degree))?);
            }
            return Ok(GroupSpec::Generated { degree, generators });
        }
        let (kind, n) = t.split_at(
            t.find(|c: char| c.is_ascii_digit())
                .ok_or_else(|| bad("missing degree"))?,
        );
        let n: usize = n.parse().map_err(|_| bad("bad degree"))?;
        if n == 0 {
            return Err(bad("degree must be at least 1"));
        }
        match kind {
            "S" => Ok(GroupSpec::Symmetric(n)),
            "A" => Ok(GroupSpec::Alternating(n)),
            _ => Err(bad("expected S<n>, A<n> or gen:<n>:[...]")),
        }
    }
}

impl fmt::Display for GroupSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GroupSpec::Symmetric(n) => write!(f, "S{n}"),
            GroupSpec::Alternating(n) => write!(f, "A{n}"),
            GroupSpec::Generated { degree, generators } => {
                let gens: Vec<String> = generators.iter().map(|g| g.to_string()).collect();
                write!(f, "gen:{degree}:[{}]", gens.join(","))
            }
        }
    }
}

/// A finite group with every element listed, identity first.
#[derive(Clone, Debug)]
pub struct FiniteGroup {
    degree: usize,
    elements: Vec<Permutation>,
    index: HashMap<Permutation, usize>,
    generators: Vec<Permutation>,
}

fn factorial(n: usize) -> Option<u64> {
    (1..=n as u64).try_fold(1u64, |acc, k| acc.checked_mul(k))
}

impl FiniteGroup {
    pub fn build(spec: &GroupSpec) -> Result<Self, GroupError> {
        Self::build_with_cap(spec, DEFAULT_ORDER_CAP)
    }

    pub fn build_with_cap(spec: &GroupSpec, cap: u64) -> Result<Self, GroupError> {
        match spec {
            GroupSpec::Symmetric(n) => {
                let n = *n;
                if factorial(n).is_none_or(|o| o > cap) {
                    return Err(GroupError::TooLarge { cap });
                }
                let mut gens = Vec::new();
                if n >= 2 {
                    gens.push(Permutation::from_cycles(n, &[vec![1, 2]])?);
                    gens.push(Permutation::from_cycles(n, &[(1..=n).collect()])?);
                }
                Self::generated(n, gens, cap)
            }
            GroupSpec::Alternating(n) => {
                let n = *n;
                if factorial(n).is_none_or(|o| o / 2 > cap) {
                    return Err(GroupError::TooLarge { cap });
                }
                let gens = (3..=n)
                    .map(|k| Permutation::from_cycles(n, &[vec![1, 2, k]]))
                    .collect::<Result<Vec<_>, _>>()?;
                Self::generated(n, gens, cap)
            }
            GroupSpec::Generated { degree, generators } => {
                Self::generated(*degree, generators.clone(), cap)
            }
        }
    }

    /// Breadth-first closure of `generators` under right multiplication.
    fn generated(
        degree: usize,
        generators: Vec<Permutation>,
        cap: u64,
    ) -> Result<Self, GroupError> {
        for g in &generators {
            if g.degree() != degree {
                return Err(GroupError::DegreeMismatch(degree, g.degree()));
            }
        }
        let id = Permutation::identity(degree);
        let mut elements = vec![id.clone()];
        let mut index = HashMap::from([(id.clone(), 0usize)]);
        let mut queue = VecDeque::from([id]);
        while let Some(e) = queue.pop_front() {
            for g in &generators {
                let next = e.compose(g)?;
                if !index.contains_key(&next) {
                    if elements.len() as u64 >= cap {
                        return Err(GroupError::TooLarge { cap });
                    }
                    index.insert(next.clone(), elements.len());
                    elements.push(next.clone());
                    queue.push_back(next);
                }
            }
        }
        Ok(FiniteGroup {
            degree,
            elements,
            index,
            generators,
        })
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn elements(&self) -> &[Permutation] {
        &self.elements
    }

    pub fn generators(&self) -> &[Permutation] {
        &self.generators
    }

    pub fn identity_element(&self) -> &Permutation {
        &self.elements[0]
    }

    pub fn contains(&self, p: &Permutation) -> bool {
        self.index.contains_key(p)
    }

    /// Position of `p` in [`elements`](Self::elements).
    pub fn index_of(&self, p: &Permutation) -> Option<usize> {
        self.index.get(p).copied()
    }

    pub fn parse_element(&self, text: &str) -> Result<Permutation, GroupError> {
        let p = Permutation::parse(text, Some(self.degree))?;
        if !self.contains(&p) {
            return Err(GroupError::NotAMember(p.to_string()));
        }
        Ok(p)
    }

    /// Searches `G` for `k` with `k·g·k^-1 = h`.
    pub fn conjugating_element(
        &self,
        g: &Permutation,
        h: &Permutation,
    ) -> Result<Option<Permutation>, GroupError> {
        for p in [g, h] {
            if !self.contains(p) {
                return Err(GroupError::NotAMember(p.to_string()));
            }
        }
        for k in &self.elements {
            if k.compose(g)?.compose(&k.inverse())? == *h {
                return Ok(Some(k.clone()));
            }
        }
        Ok(None)
    }

    pub fn are_conjugate(&self, g: &Permutation, h: &Permutation) -> Result<bool, GroupError> {
        Ok(self.conjugating_element(g, h)?.is_some())
    }
}

impl GroupOps for FiniteGroup {
    type Elem = Permutation;

    fn identity(&self) -> Permutation {
        self.identity_element().clone()
    }

    fn mul(&self, a: &Permutation, b: &Permutation) -> Permutation {
        a.compose(b).expect("elements of one group share a degree")
    }

    fn inverse(&self, a: &Permutation) -> Permutation {
        a.inverse()
    }

    fn pow(&self, a: &Permutation, k: i64) -> Permutation {
        a.pow(k)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn group(s: &str) -> FiniteGroup {
        FiniteGroup::build(&s.parse().unwrap()).unwrap()
    }

    #[test]
    fn orders() {
        assert_eq!(group("A5").order(), 60);
        assert_eq!(group("S4").order(), 24);
        assert_eq!(group("S3").order(), 6);
        assert_eq!(group("A4").order(), 12);
        assert_eq!(group("S1").order(), 1);
        assert_eq!(group("A2").order(), 1);
        assert_eq!(group("gen:3:[(1,2,3)]").order(), 3);
        assert_eq!(group("gen:5:[(1,2,3),(1,2)]").order(), 6);
        assert_eq!(group("gen:4:[]").order(), 1);
        assert!(group("A5").elements().iter().all(Permutation::is_even));
        assert!(group("A5").identity_element().is_identity());
    }

    #[test]
    fn spec_strings() {
        assert_eq!(
            "A5".parse::<GroupSpec>().unwrap(),
            GroupSpec::Alternating(5)
        );
        for bad in [
            "B5",
            "A",
            "A0",
            "gen:5",
            "gen:5:(1,2)",
            "gen:x:[]",
            "gen:3:[(1,4)]",
        ] {
            assert!(bad.parse::<GroupSpec>().is_err(), "{bad}");
        }
        let g: GroupSpec = "gen:5:[(1,2,3),(1,2)]".parse().unwrap();
        assert_eq!(g.to_string(), "gen:5:[(1,2,3),(1,2)]");
    }

    #[test]
    fn order_cap() {
        assert_eq!(
            FiniteGroup::build(&GroupSpec::Symmetric(12)).unwrap_err(),
            GroupError::TooLarge {
                cap: DEFAULT_ORDER_CAP
            }
        );
        let spec: GroupSpec = "gen:6:[(1,2,3,4,5,6),(1,2)]".parse().unwrap();
        assert!(matches!(
            FiniteGroup::build_with_cap(&spec, 100),
            Err(GroupError::TooLarge { cap: 100 })
        ));
    }

    #[test]
    fn conjugacy_examples() {
        let a5 = group("A5");
        let sigma = a5.parse_element("(1,5,4,3,2)").unwrap();
        let k = a5
            .conjugating_element(&sigma, &sigma.inverse())
            .unwrap()
            .unwrap();
        assert_eq!(
            k.compose(&sigma).unwrap().compose(&k.inverse()).unwrap(),
            sigma.inverse()
        );

        let a4 = group("A4");
        let c = a4.parse_element("(1,2,3)").unwrap();
        let d = a4.parse_element("(1,3,2)").unwrap();
        assert!(!a4.are_conjugate(&c, &d).unwrap());
        let id = a4.identity_element().clone();
        assert!(a4.are_conjugate(&id, &id).unwrap());

        let odd = Permutation::parse("(1,2)", Some(4)).unwrap();
        assert!(matches!(
            a4.are_conjugate(&odd, &id),
            Err(GroupError::NotAMember(_))
        ));
        assert!(a4.parse_element("(1,2)").is_err());
    }

    /// Oracle for the A4 split: brute-force the class of (1,2,3).
    #[test]
    fn three_cycles_split_in_a4() {
        let a4 = group("A4");
        let c = a4.parse_element("(1,2,3)").unwrap();
        let class: std::collections::HashSet<_> = a4
            .elements()
            .iter()
            .map(|k| k.compose(&c).unwrap().compose(&k.inverse()).unwrap())
            .collect();
        assert_eq!(class.len(), 4);
        assert!(!class.contains(&c.inverse()));
    }

    #[test]
    fn conjugate_to_inverse_is_class_invariant_in_a5() {
        let a5 = group("A5");
        let self_inverse: Vec<bool> = a5
            .elements()
            .iter()
            .map(|g| a5.are_conjugate(g, &g.inverse()).unwrap())
            .collect();
        for (i, g) in a5.elements().iter().enumerate() {
            for k in a5.elements().iter().step_by(7) {
                let h = k.compose(g).unwrap().compose(&k.inverse()).unwrap();
                assert_eq!(self_inverse[a5.index_of(&h).unwrap()], self_inverse[i]);
            }
        }
        // Every element of A5 is conjugate to its inverse.
        assert!(self_inverse.iter().all(|&b| b));
    }

    fn perm_n(n: u32) -> impl Strategy<Value = Permutation> {
        Just((0..n).collect::<Vec<_>>())
            .prop_shuffle()
            .prop_map(|v| Permutation::from_images(v).unwrap())
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(64))]

        #[test]
        fn closure_is_a_subgroup(gens in prop::collection::vec(perm_n(5), 0..3)) {
            let g = FiniteGroup::build(&GroupSpec::Generated { degree: 5, generators: gens }).unwrap();
            prop_assert_eq!(120 % g.order(), 0);
            for a in g.elements() {
                prop_assert!(g.contains(&a.inverse()));
                for b in g.elements().iter().step_by(3) {
                    prop_assert!(g.contains(&a.compose(b).unwrap()));
                }
            }
        }

        #[test]
        fn symmetric_conjugacy_is_cycle_type(a in perm_n(4), b in perm_n(4)) {
            let s4 = FiniteGroup::build(&GroupSpec::Symmetric(4)).unwrap();
            prop_assert_eq!(s4.are_conjugate(&a, &b).unwrap(), a.cycle_type() == b.cycle_type());
        }
    }

    #[test]
    fn symmetric_conjugacy_is_cycle_type_s5() {
        let s5 = group("S5");
        let x = s5.elements()[17].clone();
        for y in s5.elements() {
            assert_eq!(
                s5.are_conjugate(&x, y).unwrap(),
                x.cycle_type() == y.cycle_type()
            );
        }
    }
}
