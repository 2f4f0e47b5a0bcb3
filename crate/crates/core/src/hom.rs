//! Counting homomorphisms from a finitely presented group into a finite
//! permutation group, optionally with pinned generator images.
//!
//! Two search strategies return identical counts:
//!
//! * [`SearchMode::Naive`] walks the full product `|A|^k` of images for the
//!   `k` unpinned generators and checks every relator at every leaf.
//! * [`SearchMode::Backtrack`] assigns unpinned generators in declaration
//!   order and checks each relator as soon as its last generator is
//!   assigned, pruning the subtree on failure.
//!
//! Group elements are handled as indices into [`FiniteGroup::elements`] with
//! a precomputed multiplication table, so evaluating a relator is a sequence
//! of table lookups and syllable powers cost one lookup each.

use std::collections::HashMap;
use std::thread;

use crate::error::SearchError;
use crate::group::FiniteGroup;
use crate::perm::Permutation;
use crate::presentation::Presentation;
use crate::word::{Generator, Word};

/// Default limit on search nodes (and on naive candidate maps).
pub const DEFAULT_NODE_BUDGET: u64 = 1_000_000_000;

/// Groups up to this order get a full Cayley table.
const TABLE_LIMIT: usize = 8192;

/// Generator images in generator order.
pub type Assignment = Vec<Permutation>;

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash)]
pub enum SearchMode {
    Naive,
    #[default]
    Backtrack,
}

impl std::str::FromStr for SearchMode {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "naive" => Ok(SearchMode::Naive),
            "backtrack" => Ok(SearchMode::Backtrack),
            other => Err(format!("unknown search mode `{other}` (naive|backtrack)")),
        }
    }
}

impl std::fmt::Display for SearchMode {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            SearchMode::Naive => "naive",
            SearchMode::Backtrack => "backtrack",
        })
    }
}

/// Pinned generator images plus word-image filters applied to complete
/// assignments.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Constraint {
    pins: Vec<(Generator, Permutation)>,
    word_targets: Vec<(Word, Permutation)>,
}

impl Constraint {
    pub fn none() -> Self {
        Self::default()
    }

    /// Requires `φ(g) = image`.
    pub fn pin(mut self, g: Generator, image: Permutation) -> Self {
        self.pins.push((g, image));
        self
    }

    /// Requires `φ(w) = image`, checked on complete assignments.
    pub fn word_equals(mut self, w: Word, image: Permutation) -> Self {
        self.word_targets.push((w, image));
        self
    }

    pub fn pins(&self) -> &[(Generator, Permutation)] {
        &self.pins
    }

    pub fn word_targets(&self) -> &[(Word, Permutation)] {
        &self.word_targets
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SearchOptions {
    pub mode: SearchMode,
    pub materialize: bool,
    /// Worker threads; values below 1 act as 1.
    pub jobs: usize,
    pub node_budget: u64,
}

impl Default for SearchOptions {
    fn default() -> Self {
        SearchOptions {
            mode: SearchMode::Backtrack,
            materialize: false,
            jobs: 1,
            node_budget: DEFAULT_NODE_BUDGET,
        }
    }
}

impl SearchOptions {
    pub fn mode(mut self, mode: SearchMode) -> Self {
        self.mode = mode;
        self
    }

    pub fn materialize(mut self, yes: bool) -> Self {
        self.materialize = yes;
        self
    }

    pub fn jobs(mut self, jobs: usize) -> Self {
        self.jobs = jobs;
        self
    }

    pub fn node_budget(mut self, budget: u64) -> Self {
        self.node_budget = budget;
        self
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct SearchStats {
    /// Candidate images tried (backtrack) or complete maps visited (naive).
    pub nodes: u64,
    pub relator_checks: u64,
}

impl SearchStats {
    fn merge(&mut self, other: SearchStats) {
        self.nodes += other.nodes;
        self.relator_checks += other.relator_checks;
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HomSearchResult {
    pub count: u64,
    /// Present when requested; sorted by the element indices of the
    /// unpinned generators' images.
    pub assignments: Option<Vec<Assignment>>,
    pub stats: SearchStats,
}

/// Multiplication backend over element indices.
struct Arith<'g> {
    group: &'g FiniteGroup,
    n: usize,
    table: Option<Vec<u32>>,
    inverse: Vec<u32>,
    /// `powers[e][i] = e^i` for `0 <= i < order(e)`; empty without a table.
    powers: Vec<Vec<u32>>,
}

impl<'g> Arith<'g> {
    fn new(group: &'g FiniteGroup) -> Self {
        let n = group.order();
        let els = group.elements();
        let idx = |p: &Permutation| group.index_of(p).expect("closed under products") as u32;
        let inverse = els.iter().map(|e| idx(&e.inverse())).collect();
        if n > TABLE_LIMIT {
            return Arith {
                group,
                n,
                table: None,
                inverse,
                powers: Vec::new(),
            };
        }
        let mut table = vec![0u32; n * n];
        for (i, a) in els.iter().enumerate() {
            for (j, b) in els.iter().enumerate() {
                table[i * n + j] = idx(&a.compose(b).expect("same degree"));
            }
        }
        let powers = (0..n)
            .map(|e| {
                let mut seq = vec![0u32];
                let mut cur = e as u32;
                while cur != 0 {
                    seq.push(cur);
                    cur = table[cur as usize * n + e];
                }
                seq
            })
            .collect();
        Arith {
            group,
            n,
            table: Some(table),
            inverse,
            powers,
        }
    }

    #[inline]
    fn mul(&self, a: u32, b: u32) -> u32 {
        match &self.table {
            Some(t) => t[a as usize * self.n + b as usize],
            None => {
                let els = self.group.elements();
                let p = els[a as usize]
                    .compose(&els[b as usize])
                    .expect("same degree");
                self.group.index_of(&p).expect("closed under products") as u32
            }
        }
    }

    #[inline]
    fn pow(&self, a: u32, k: i64) -> u32 {
        if let Some(seq) = self.powers.get(a as usize) {
            return seq[k.rem_euclid(seq.len() as i64) as usize];
        }
        let mut base = if k < 0 { self.inverse[a as usize] } else { a };
        let mut e = k.unsigned_abs();
        let mut acc = 0u32;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(acc, base);
            }
            e >>= 1;
            if e > 0 {
                base = self.mul(base, base);
            }
        }
        acc
    }

    fn eval(&self, word: &[(usize, i64)], images: &[u32]) -> u32 {
        word.iter()
            .fold(0u32, |acc, &(g, k)| self.mul(acc, self.pow(images[g], k)))
    }
}

fn compile(w: &Word) -> Vec<(usize, i64)> {
    w.syllables()
        .iter()
        .map(|s| (s.generator.index(), s.exponent))
        .collect()
}

/// Everything a worker needs, shared read-only.
struct Problem<'g> {
    arith: Arith<'g>,
    ngens: usize,
    relators: Vec<Vec<(usize, i64)>>,
    /// Unpinned generators in assignment order.
    free: Vec<usize>,
    /// Relator indices to check once `free[level]` is assigned.
    triggers: Vec<Vec<usize>>,
    /// Relators involving only pinned generators.
    upfront: Vec<usize>,
    filters: Vec<(Vec<(usize, i64)>, u32)>,
    base_images: Vec<u32>,
    mode: SearchMode,
    materialize: bool,
    budget: u64,
}

#[derive(Default)]
struct Partial {
    count: u64,
    stats: SearchStats,
    found: Vec<Vec<u32>>,
    over_budget: bool,
}

impl Problem<'_> {
    fn leaf(&self, images: &[u32], out: &mut Partial) {
        if self
            .filters
            .iter()
            .all(|(w, target)| self.arith.eval(w, images) == *target)
        {
            out.count += 1;
            if self.materialize {
                out.found.push(images.to_vec());
            }
        }
    }

    fn backtrack(&self, level: usize, images: &mut [u32], out: &mut Partial) {
        if level == self.free.len() {
            self.leaf(images, out);
            return;
        }
        let g = self.free[level];
        for c in 0..self.arith.n as u32 {
            self.visit(level, g, c, images, out);
            if out.over_budget {
                return;
            }
        }
    }

    fn visit(&self, level: usize, g: usize, c: u32, images: &mut [u32], out: &mut Partial) {
        out.stats.nodes += 1;
        if out.stats.nodes > self.budget {
            out.over_budget = true;
            return;
        }
        images[g] = c;
        for &r in &self.triggers[level] {
            out.stats.relator_checks += 1;
            if self.arith.eval(&self.relators[r], images) != 0 {
                return;
            }
        }
        self.backtrack(level + 1, images, out);
    }

    /// Odometer over the images of `free[1..]` with `free[0]` fixed by the
    /// caller.
    fn naive_rest(&self, images: &mut [u32], out: &mut Partial) {
        let n = self.arith.n as u32;
        let rest = &self.free[1.min(self.free.len())..];
        for &g in rest {
            images[g] = 0;
        }
        loop {
            out.stats.nodes += 1;
            if out.stats.nodes > self.budget {
                out.over_budget = true;
                return;
            }
            let mut ok = true;
            for r in &self.relators {
                out.stats.relator_checks += 1;
                if self.arith.eval(r, images) != 0 {
                    ok = false;
                    break;
                }
            }
            if ok {
                self.leaf(images, out);
            }
            // advance: last generator varies fastest
            let mut pos = rest.len();
            loop {
                if pos == 0 {
                    return;
                }
                pos -= 1;
                let g = rest[pos];
                images[g] += 1;
                if images[g] < n {
                    break;
                }
                images[g] = 0;
            }
        }
    }

    /// Searches with the first free generator restricted to `range`.
    fn run_chunk(&self, range: std::ops::Range<u32>) -> Partial {
        let mut out = Partial::default();
        let mut images = self.base_images.clone();
        let g0 = self.free[0];
        for c in range {
            match self.mode {
                SearchMode::Backtrack => self.visit(0, g0, c, &mut images, &mut out),
                SearchMode::Naive => {
                    images[g0] = c;
                    self.naive_rest(&mut images, &mut out);
                }
            }
            if out.over_budget {
                break;
            }
        }
        out
    }
}

fn check_member(group: &FiniteGroup, p: &Permutation) -> Result<u32, SearchError> {
    if p.degree() != group.degree() {
        return Err(crate::error::GroupError::DegreeMismatch(group.degree(), p.degree()).into());
    }
    group
        .index_of(p)
        .map(|i| i as u32)
        .ok_or_else(|| SearchError::InvalidConstraint(format!("{p} is not in the target group")))
}

/// Counts `φ ∈ Hom(P, A)` satisfying `constraint`.
pub fn count_homs(
    p: &Presentation,
    group: &FiniteGroup,
    constraint: &Constraint,
    options: &SearchOptions,
) -> Result<HomSearchResult, SearchError> {
    let ngens = p.num_generators();
    let mut base_images = vec![0u32; ngens];
    let mut pinned = vec![false; ngens];
    for (g, img) in constraint.pins() {
        if g.index() >= ngens {
            return Err(SearchError::InvalidConstraint(format!(
                "generator #{} is not in the presentation",
                g.index()
            )));
        }
        let i = check_member(group, img)?;
        if pinned[g.index()] && base_images[g.index()] != i {
            return Err(SearchError::InvalidConstraint(format!(
                "generator `{}` pinned twice",
                p.alphabet().name(*g)
            )));
        }
        pinned[g.index()] = true;
        base_images[g.index()] = i;
    }
    let mut filters = Vec::new();
    for (w, img) in constraint.word_targets() {
        if let Some(s) = w.syllables().iter().find(|s| s.generator.index() >= ngens) {
            return Err(SearchError::InvalidConstraint(format!(
                "generator #{} is not in the presentation",
                s.generator.index()
            )));
        }
        filters.push((compile(w), check_member(group, img)?));
    }

    let free: Vec<usize> = (0..ngens).filter(|&g| !pinned[g]).collect();
    let n = group.order() as u64;

    if options.mode == SearchMode::Naive {
        let candidates = (0..free.len()).try_fold(1u64, |acc, _| acc.checked_mul(n));
        if candidates.is_none_or(|c| c > options.node_budget) {
            return Err(SearchError::TooLarge {
                candidates: format!("{}^{}", n, free.len()),
                budget: options.node_budget,
            });
        }
    }

    let relators: Vec<Vec<(usize, i64)>> = p.relators().iter().map(compile).collect();
    let level_of: Vec<usize> = (0..ngens)
        .map(|g| free.iter().position(|&f| f == g).unwrap_or(usize::MAX))
        .collect();
    let mut triggers = vec![Vec::new(); free.len()];
    let mut upfront = Vec::new();
    for (i, r) in relators.iter().enumerate() {
        match r
            .iter()
            .map(|&(g, _)| level_of[g])
            .filter(|&l| l != usize::MAX)
            .max()
        {
            Some(l) => triggers[l].push(i),
            None => upfront.push(i),
        }
    }

    let problem = Problem {
        arith: Arith::new(group),
        ngens,
        relators,
        free,
        triggers,
        upfront,
        filters,
        base_images,
        mode: options.mode,
        materialize: options.materialize,
        budget: options.node_budget,
    };

    let mut total = Partial::default();
    let upfront_ok = problem.upfront.iter().all(|&r| {
        total.stats.relator_checks += 1;
        problem
            .arith
            .eval(&problem.relators[r], &problem.base_images)
            == 0
    });

    if upfront_ok {
        if problem.free.is_empty() {
            problem.leaf(&problem.base_images, &mut total);
        } else {
            let jobs = options.jobs.max(1).min(n as usize);
            let chunks: Vec<std::ops::Range<u32>> = (0..jobs)
                .map(|j| (n as usize * j / jobs) as u32..(n as usize * (j + 1) / jobs) as u32)
                .collect();
            let parts: Vec<Partial> = if jobs == 1 {
                vec![problem.run_chunk(chunks[0].clone())]
            } else {
                thread::scope(|s| {
                    let handles: Vec<_> = chunks
                        .iter()
                        .map(|r| {
                            let r = r.clone();
                            let problem = &problem;
                            s.spawn(move || problem.run_chunk(r))
                        })
                        .collect();
                    handles
                        .into_iter()
                        .map(|h| h.join().expect("search worker panicked"))
                        .collect()
                })
            };
            for part in parts {
                total.over_budget |= part.over_budget;
                total.count += part.count;
                total.stats.merge(part.stats);
                total.found.extend(part.found);
            }
        }
    }

    if total.over_budget || total.stats.nodes > options.node_budget {
        return Err(SearchError::BudgetExceeded {
            budget: options.node_budget,
        });
    }

    let els = group.elements();
    let assignments = options.materialize.then(|| {
        total
            .found
            .iter()
            .map(|imgs| imgs.iter().map(|&i| els[i as usize].clone()).collect())
            .collect()
    });
    debug_assert_eq!(problem.ngens, ngens);
    Ok(HomSearchResult {
        count: total.count,
        assignments,
        stats: total.stats,
    })
}

/// `#{φ ∈ Hom(P, A) : φ(marker) = σ}`. A marker that is a single generator
/// is pinned; any other marker word is checked on complete assignments.
pub fn meridian_invariant(
    p: &Presentation,
    marker: &str,
    group: &FiniteGroup,
    sigma: &Permutation,
    options: &SearchOptions,
) -> Result<HomSearchResult, SearchError> {
    let word = p
        .marker_or_generator(marker)
        .ok_or_else(|| SearchError::UnknownMarker(marker.to_string()))?;
    let constraint = match word.syllables() {
        [s] if s.exponent == 1 => Constraint::none().pin(s.generator, sigma.clone()),
        _ => Constraint::none().word_equals(word, sigma.clone()),
    };
    count_homs(p, group, &constraint, options)
}

fn assignment_map(
    p: &Presentation,
    group: &FiniteGroup,
    assignment: &[Permutation],
) -> Result<HashMap<Generator, Permutation>, SearchError> {
    if assignment.len() < p.num_generators() {
        let missing = p.alphabet().name(Generator::new(assignment.len()));
        return Err(SearchError::MissingImage(missing.to_string()));
    }
    let mut map = HashMap::new();
    for (g, img) in p.alphabet().generators().zip(assignment) {
        if img.degree() != group.degree() {
            return Err(
                crate::error::GroupError::DegreeMismatch(group.degree(), img.degree()).into(),
            );
        }
        map.insert(g, img.clone());
    }
    Ok(map)
}

/// Index of the first relator that fails under `assignment`, if any.
fn first_failing_relator(
    p: &Presentation,
    group: &FiniteGroup,
    map: &HashMap<Generator, Permutation>,
) -> Option<usize> {
    p.relators().iter().position(|r| {
        !r.evaluate(map, group)
            .expect("assignment covers every generator")
            .is_identity()
    })
}

/// Whether `assignment` (images of the generators, in order) satisfies
/// every relator.
pub fn is_homomorphism(
    p: &Presentation,
    group: &FiniteGroup,
    assignment: &[Permutation],
) -> Result<bool, SearchError> {
    let map = assignment_map(p, group, assignment)?;
    Ok(first_failing_relator(p, group, &map).is_none())
}

/// Evaluates a word under a homomorphism given by generator images.
pub fn evaluate_under(
    p: &Presentation,
    group: &FiniteGroup,
    assignment: &[Permutation],
    w: &Word,
) -> Result<Permutation, SearchError> {
    let map = assignment_map(p, group, assignment)?;
    w.evaluate(&map, group).map_err(|e| match e {
        crate::error::EvalError::MissingImage(g) => {
            SearchError::MissingImage(format!("#{}", g.index()))
        }
    })
}

/// Whether `φ(w1)` and `φ(w2)` are conjugate in `A`.
pub fn images_conjugate(
    p: &Presentation,
    group: &FiniteGroup,
    assignment: &[Permutation],
    w1: &Word,
    w2: &Word,
) -> Result<bool, SearchError> {
    let map = assignment_map(p, group, assignment)?;
    if let Some(r) = first_failing_relator(p, group, &map) {
        return Err(SearchError::NotAHomomorphism(r));
    }
    let a = evaluate_under(p, group, assignment, w1)?;
    let b = evaluate_under(p, group, assignment, w2)?;
    Ok(group.are_conjugate(&a, &b)?)
}

/// Identity of `group` for every generator.
pub fn trivial_assignment(p: &Presentation, group: &FiniteGroup) -> Assignment {
    vec![group.identity_element().clone(); p.num_generators()]
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::GroupSpec;

    fn group(s: &str) -> FiniteGroup {
        FiniteGroup::build(&s.parse::<GroupSpec>().unwrap()).unwrap()
    }

    fn perm(g: &FiniteGroup, s: &str) -> Permutation {
        g.parse_element(s).unwrap()
    }

    #[test]
    fn pinned_meridian_counts() {
        let f1 = Presentation::family(1).unwrap();
        let a5 = group("A5");
        let sigma = perm(&a5, "(1,5,4,3,2)");
        for mode in [SearchMode::Naive, SearchMode::Backtrack] {
            let opts = SearchOptions::default().mode(mode);
            let x = Constraint::none().pin(f1.generator("x").unwrap(), sigma.clone());
            let a = Constraint::none().pin(f1.generator("a").unwrap(), sigma.clone());
            assert_eq!(count_homs(&f1, &a5, &x, &opts).unwrap().count, 6, "{mode}");
            assert_eq!(count_homs(&f1, &a5, &a, &opts).unwrap().count, 1, "{mode}");
        }
    }

    #[test]
    fn naive_visits_every_candidate() {
        let f1 = Presentation::family(1).unwrap();
        let a5 = group("A5");
        let sigma = perm(&a5, "(1,5,4,3,2)");
        let c = Constraint::none().pin(f1.generator("x").unwrap(), sigma);
        let r = count_homs(
            &f1,
            &a5,
            &c,
            &SearchOptions::default().mode(SearchMode::Naive),
        )
        .unwrap();
        assert_eq!(r.stats.nodes, 3600);
        let b = count_homs(&f1, &a5, &c, &SearchOptions::default()).unwrap();
        assert!(b.stats.nodes < 3600);
    }

    #[test]
    fn small_counts() {
        let free = Presentation::parse("< x | >").unwrap();
        let a5 = group("A5");
        let sigma = perm(&a5, "(1,5,4,3,2)");
        let c = Constraint::none().pin(free.generator("x").unwrap(), sigma);
        assert_eq!(
            count_homs(&free, &a5, &c, &SearchOptions::default())
                .unwrap()
                .count,
            1
        );

        // identity plus three transpositions
        let z2 = Presentation::parse("< x | x^2 >").unwrap();
        let s3 = group("S3");
        let brute = s3
            .elements()
            .iter()
            .filter(|e| e.pow(2).is_identity())
            .count() as u64;
        assert_eq!(brute, 4);
        for mode in [SearchMode::Naive, SearchMode::Backtrack] {
            let r = count_homs(
                &z2,
                &s3,
                &Constraint::none(),
                &SearchOptions::default().mode(mode),
            )
            .unwrap();
            assert_eq!(r.count, brute);
        }
    }

    #[test]
    fn materialized_assignments_are_homomorphisms() {
        let f1 = Presentation::family(1).unwrap();
        let a5 = group("A5");
        let sigma = perm(&a5, "(1,5,4,3,2)");
        let c = Constraint::none().pin(f1.generator("x").unwrap(), sigma.clone());
        let r = count_homs(&f1, &a5, &c, &SearchOptions::default().materialize(true)).unwrap();
        let list = r.assignments.unwrap();
        assert_eq!(list.len() as u64, r.count);
        for a in &list {
            assert!(is_homomorphism(&f1, &a5, a).unwrap());
            assert_eq!(a[0], sigma);
        }
    }

    #[test]
    fn jobs_do_not_change_results() {
        let f1 = Presentation::family(1).unwrap();
        let a4 = group("A4");
        let base = count_homs(
            &f1,
            &a4,
            &Constraint::none(),
            &SearchOptions::default().materialize(true),
        )
        .unwrap();
        for jobs in [2, 3, 4, 7, 64] {
            let r = count_homs(
                &f1,
                &a4,
                &Constraint::none(),
                &SearchOptions::default().materialize(true).jobs(jobs),
            )
            .unwrap();
            assert_eq!(r, base, "jobs={jobs}");
        }
    }

    #[test]
    fn explicit_homomorphism() {
        let a5 = group("A5");
        let images = [
            perm(&a5, "(1,5,4,3,2)"),
            perm(&a5, "(1,2,4,5,3)"),
            perm(&a5, "(2,4,5)"),
        ];
        for m in [1, 61] {
            let f = Presentation::family(m).unwrap();
            assert!(is_homomorphism(&f, &a5, &images).unwrap());
            let (x, a) = (
                Word::generator(f.generator("x").unwrap()),
                Word::generator(f.generator("a").unwrap()),
            );
            assert!(!images_conjugate(&f, &a5, &images, &x, &a).unwrap());
            assert!(images_conjugate(&f, &a5, &images, &x, &x).unwrap());
            let triv = trivial_assignment(&f, &a5);
            assert!(is_homomorphism(&f, &a5, &triv).unwrap());
            assert!(images_conjugate(&f, &a5, &triv, &x, &a).unwrap());
        }
    }

    #[test]
    fn non_homomorphisms() {
        let z2 = Presentation::parse("< x | x^2 >").unwrap();
        let a4 = group("A4");
        let c3 = [perm(&a4, "(1,2,3)")];
        assert!(!is_homomorphism(&z2, &a4, &c3).unwrap());
        let x = Word::generator(Generator::new(0));
        assert_eq!(
            images_conjugate(&z2, &a4, &c3, &x, &x),
            Err(SearchError::NotAHomomorphism(0))
        );
        assert!(matches!(
            is_homomorphism(&z2, &a4, &[]),
            Err(SearchError::MissingImage(_))
        ));
        let wrong_degree = [Permutation::identity(3)];
        assert!(matches!(
            is_homomorphism(&z2, &a4, &wrong_degree),
            Err(SearchError::Group(_))
        ));
    }

    #[test]
    fn meridian_markers() {
        let a5 = group("A5");
        let sigma = perm(&a5, "(1,5,4,3,2)");
        let f1 = Presentation::family(1).unwrap();
        let opts = SearchOptions::default();
        assert_eq!(
            meridian_invariant(&f1, "meridian_B", &a5, &sigma, &opts)
                .unwrap()
                .count,
            6
        );
        assert_eq!(
            meridian_invariant(&f1, "meridian_G", &a5, &sigma, &opts)
                .unwrap()
                .count,
            1
        );
        let free = Presentation::parse("< x | >").unwrap();
        let id = a5.identity_element().clone();
        assert_eq!(
            meridian_invariant(&free, "x", &a5, &id, &opts)
                .unwrap()
                .count,
            1
        );
        assert_eq!(
            meridian_invariant(&f1, "nope", &a5, &sigma, &opts).unwrap_err(),
            SearchError::UnknownMarker("nope".into())
        );

        // A conjugated marker word goes through the post-filter and gives
        // the same count as the bare generator.
        let text = "< x,y,a | y*x*y*x^-1*y^-1*x^-1, x^-1*a*x*a^-1*x^-1*y*a*y^-1 >\nmeridian conj: y*x*y^-1\n";
        let p = Presentation::parse(text).unwrap();
        let tau = perm(&a5, "(1,2,3)");
        let target = tau
            .compose(&sigma)
            .unwrap()
            .compose(&tau.inverse())
            .unwrap();
        assert_eq!(
            meridian_invariant(&p, "conj", &a5, &target, &opts)
                .unwrap()
                .count,
            6
        );
    }

    #[test]
    fn budgets() {
        let f1 = Presentation::family(1).unwrap();
        let a5 = group("A5");
        let tight = SearchOptions::default().node_budget(100);
        assert!(matches!(
            count_homs(&f1, &a5, &Constraint::none(), &tight),
            Err(SearchError::BudgetExceeded { budget: 100 })
        ));
        assert!(matches!(
            count_homs(
                &f1,
                &a5,
                &Constraint::none(),
                &tight.clone().mode(SearchMode::Naive)
            ),
            Err(SearchError::TooLarge { .. })
        ));
        // Deterministic failure regardless of worker count.
        for jobs in [1, 4] {
            assert!(count_homs(&f1, &a5, &Constraint::none(), &tight.clone().jobs(jobs)).is_err());
        }
    }

    #[test]
    fn invalid_constraints() {
        let f1 = Presentation::family(1).unwrap();
        let a5 = group("A5");
        let odd = Permutation::parse("(1,2)", Some(5)).unwrap();
        let c = Constraint::none().pin(Generator::new(0), odd);
        assert!(matches!(
            count_homs(&f1, &a5, &c, &SearchOptions::default()),
            Err(SearchError::InvalidConstraint(_))
        ));
        let c = Constraint::none().pin(Generator::new(9), a5.identity_element().clone());
        assert!(count_homs(&f1, &a5, &c, &SearchOptions::default()).is_err());
    }

    #[test]
    fn all_generators_pinned() {
        let z2 = Presentation::parse("< x | x^2 >").unwrap();
        let s3 = group("S3");
        let t = perm(&s3, "(1,2)");
        let c = Constraint::none().pin(Generator::new(0), t);
        assert_eq!(
            count_homs(&z2, &s3, &c, &SearchOptions::default())
                .unwrap()
                .count,
            1
        );
        let c = Constraint::none().pin(Generator::new(0), perm(&s3, "(1,2,3)"));
        assert_eq!(
            count_homs(&z2, &s3, &c, &SearchOptions::default())
                .unwrap()
                .count,
            0
        );
    }
}
