//! The normal-form basis of `L(E)`: finite basis paths, closed basis paths
//! whose square is again a basis path, and eventually periodic infinite
//! basis paths.
//!
//! A word over the double graph is a basis path exactly when no two adjacent
//! letters form `c* d` (a ghost followed by a real edge) or `e e*` with `e`
//! special, so membership is a local condition and the basis is closed under
//! taking prefixes and suffixes.

use std::collections::BTreeSet;
use std::fmt;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::graph::{Ambient, Letter, Path, VertexId};

/// Whether `b` may directly follow `a` inside a basis path. Both letters must
/// be edge letters; composability is checked as well.
pub fn can_follow(amb: &Ambient, a: Letter, b: Letter) -> bool {
    let g = amb.graph();
    if !a.is_edge() || !b.is_edge() || a.range(g) != b.source(g) {
        return false;
    }
    match (a, b) {
        (Letter::Ghost(_), Letter::Real(_)) => false,
        (Letter::Real(e), Letter::Ghost(f)) => e != f || !amb.is_special(e),
        _ => true,
    }
}

/// Checks the basis condition on a word of edge letters (composability included).
pub fn is_basis_word(amb: &Ambient, letters: &[Letter]) -> bool {
    letters.iter().all(|l| l.is_edge()) && letters.windows(2).all(|w| can_follow(amb, w[0], w[1]))
}

pub fn is_basis_path(amb: &Ambient, p: &Path) -> bool {
    is_basis_word(amb, p.letters())
}

/// All basis paths obtained from `p` by appending one letter, in letter order.
pub fn extensions(amb: &Ambient, p: &Path) -> Vec<Path> {
    let g = amb.graph();
    amb.letters_from(p.range())
        .into_iter()
        .filter(|&l| {
            p.last_letter()
                .map_or(true, |last| can_follow(amb, last, l))
        })
        .map(|l| p.push(g, l))
        .collect()
}

/// Basis paths of length at most `max_len`, optionally only those with
/// source `at`, ordered by length and then letter by letter.
pub fn enumerate_basis_paths(amb: &Ambient, max_len: usize, at: Option<VertexId>) -> Vec<Path> {
    let starts: Vec<VertexId> = match at {
        Some(v) => vec![v],
        None => amb.graph().vertices().collect(),
    };
    let mut layer: Vec<Path> = starts.into_iter().map(Path::vertex).collect();
    let mut out = layer.clone();
    for _ in 0..max_len {
        layer = layer.iter().flat_map(|p| extensions(amb, p)).collect();
        if layer.is_empty() {
            break;
        }
        out.extend(layer.iter().cloned());
    }
    out.sort();
    out
}

/// Splits a finite path as `(x_1..x_n, x_{n+1}..x_l)`; the empty halves are
/// the source and range vertex respectively.
pub fn split_at(amb: &Ambient, p: &Path, n: usize) -> Result<(Path, Path)> {
    let letters = p.letters();
    if n > letters.len() {
        return Err(Error::IndexOutOfRange {
            index: n,
            len: letters.len(),
        });
    }
    let g = amb.graph();
    let mid = if n == 0 {
        p.source()
    } else {
        letters[n - 1].range(g)
    };
    let piece = |ls: &[Letter], s: VertexId, r: VertexId| {
        if ls.is_empty() {
            Path::vertex(s)
        } else {
            Path::from_parts(s, r, ls.to_vec())
        }
    };
    Ok((
        piece(&letters[..n], p.source(), mid),
        piece(&letters[n..], mid, p.range()),
    ))
}

fn rotate_left(word: &[Letter], k: usize) -> Vec<Letter> {
    let mut w = word.to_vec();
    if !w.is_empty() {
        let len = w.len();
        w.rotate_left(k % len);
    }
    w
}

/// The shortest word `u` with `word = u^k`.
fn primitive_root(word: &[Letter]) -> &[Letter] {
    let n = word.len();
    (1..=n)
        .find(|&d| n % d == 0 && (d..n).all(|i| word[i] == word[i - d]))
        .map_or(word, |d| &word[..d])
}

fn least_rotation(word: &[Letter]) -> Vec<Letter> {
    (0..word.len().max(1))
        .map(|k| rotate_left(word, k))
        .min()
        .unwrap_or_default()
}

/// A closed basis path `x` with `x x` again a basis path, i.e. a closed path
/// that is entirely real or entirely ghost.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ClosedBasisPath {
    path: Path,
}

impl ClosedBasisPath {
    pub fn new(amb: &Ambient, path: Path) -> Result<ClosedBasisPath> {
        let letters = path.letters();
        if !path.is_closed() {
            return Err(Error::InvalidClosedPath(format!(
                "`{}` is not closed",
                amb.format_path(&path)
            )));
        }
        let uniform = letters.iter().all(|l| l.is_real()) || letters.iter().all(|l| l.is_ghost());
        if !uniform {
            return Err(Error::InvalidClosedPath(format!(
                "`{}` mixes real and ghost edges",
                amb.format_path(&path)
            )));
        }
        Ok(ClosedBasisPath { path })
    }

    pub fn parse(amb: &Ambient, text: &str) -> Result<ClosedBasisPath> {
        ClosedBasisPath::new(amb, amb.parse_path(text)?)
    }

    pub fn path(&self) -> &Path {
        &self.path
    }

    pub fn letters(&self) -> &[Letter] {
        self.path.letters()
    }

    pub fn len(&self) -> usize {
        self.path.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn is_real(&self) -> bool {
        self.letters()[0].is_real()
    }

    pub fn is_ghostly(&self) -> bool {
        self.letters()[0].is_ghost()
    }

    /// `x_{k+1} .. x_m x_1 .. x_k`.
    pub fn rotate(&self, amb: &Ambient, k: usize) -> ClosedBasisPath {
        let letters = rotate_left(self.letters(), k);
        let path = Path::from_letters(amb.graph(), letters).expect("rotation of a closed path");
        ClosedBasisPath { path }
    }

    /// The lexicographically least rotation.
    pub fn canonical(&self, amb: &Ambient) -> ClosedBasisPath {
        let letters = least_rotation(self.letters());
        ClosedBasisPath {
            path: Path::from_letters(amb.graph(), letters).expect("rotation"),
        }
    }

    pub fn squared(&self) -> Path {
        self.path
            .concat(&self.path)
            .expect("closed path composes with itself")
    }
}

/// Whether `y` is a rotation of `x`.
pub fn cyclic_equivalent(x: &ClosedBasisPath, y: &ClosedBasisPath) -> bool {
    x.len() == y.len() && (0..y.len()).any(|k| rotate_left(y.letters(), k) == x.letters())
}

/// All closed basis paths (real or ghostly) of length `1..=max_len`, one per
/// rotation class, as their least rotation.
pub fn closed_basis_classes(
    amb: &Ambient,
    max_len: usize,
    primitive_only: bool,
) -> Vec<ClosedBasisPath> {
    let mut seen = BTreeSet::new();
    for p in enumerate_basis_paths(amb, max_len, None) {
        if !p.is_closed() {
            continue;
        }
        let Ok(c) = ClosedBasisPath::new(amb, p) else {
            continue;
        };
        if primitive_only && primitive_root(c.letters()).len() != c.len() {
            continue;
        }
        seen.insert(c.canonical(amb));
    }
    let mut out: Vec<_> = seen.into_iter().collect();
    out.sort_by(|a, b| a.path.cmp(&b.path));
    out
}

/// An eventually periodic left-infinite basis path `... c c c s`.
///
/// Letters are indexed from the right: `x_1` is the last letter of `s` (or of
/// `c` when `s` is empty). The value is kept normalized: `c` is primitive and
/// no leading letter of `s` can be absorbed into the periodic part, so two
/// values are equal exactly when they denote the same infinite word.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct InfinitePath {
    period: Vec<Letter>,
    suffix: Vec<Letter>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum InfiniteKind {
    Real,
    Ghostly,
    Mixed,
}

/// Outcome of [`InfinitePath::validate`].
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct InfiniteReport {
    pub valid: bool,
    pub kind: Option<InfiniteKind>,
    pub checked_suffix_len: usize,
    pub problems: Vec<String>,
}

impl InfinitePath {
    /// Checks and normalizes `... period period suffix`.
    pub fn new(amb: &Ambient, period: Vec<Letter>, suffix: Vec<Letter>) -> Result<InfinitePath> {
        let report = InfinitePath::validate(amb, &period, &suffix);
        if !report.valid {
            return Err(Error::InvalidInfinitePath(report.problems.join("; ")));
        }
        Ok(InfinitePath::normalized(period, suffix))
    }

    /// Parses `(<period>)^inf` or `(<period>)^inf.<suffix>`.
    pub fn parse(amb: &Ambient, text: &str) -> Result<InfinitePath> {
        let text = text.trim();
        let bad = || Error::Syntax(text.to_string());
        let rest = text.strip_prefix('(').ok_or_else(bad)?;
        let (period, tail) = rest.split_once(")^inf").ok_or_else(bad)?;
        let suffix = match tail {
            "" => Vec::new(),
            t => amb.parse_word(t.strip_prefix('.').ok_or_else(bad)?)?,
        };
        let period = amb.parse_word(period)?;
        if period.iter().chain(&suffix).any(|l| !l.is_edge()) {
            return Err(Error::InvalidInfinitePath(
                "vertex letter inside an infinite path".into(),
            ));
        }
        InfinitePath::new(amb, period, suffix)
    }

    /// Every finite suffix of the unfolding is a basis path as soon as all
    /// suffixes of length `|s| + 2|c|` are, since longer windows only repeat
    /// the adjacent pairs already seen.
    pub fn validate(amb: &Ambient, period: &[Letter], suffix: &[Letter]) -> InfiniteReport {
        let mut problems = Vec::new();
        if period.is_empty() {
            problems.push("period is empty".to_string());
        }
        if period.iter().chain(suffix).any(|l| !l.is_edge()) {
            problems.push("vertex letter inside an infinite path".to_string());
        }
        let mut word = Vec::new();
        if problems.is_empty() {
            let g = amb.graph();
            if period[period.len() - 1].range(g) != period[0].source(g) {
                problems.push(format!(
                    "period `{}` is not closed",
                    amb.format_word(period)
                ));
            }
            word.extend_from_slice(period);
            word.extend_from_slice(period);
            word.extend_from_slice(suffix);
            for (i, w) in word.windows(2).enumerate() {
                if w[0].range(g) != w[1].source(g) {
                    problems.push(format!("letters {} and {} do not compose", i + 1, i + 2));
                } else if !can_follow(amb, w[0], w[1]) {
                    problems.push(format!(
                        "`{}` is not a basis path",
                        amb.format_word(&[w[0], w[1]])
                    ));
                }
            }
        }
        problems.dedup();
        let valid = problems.is_empty();
        let kind = valid.then(|| {
            if word.iter().all(|l| l.is_real()) {
                InfiniteKind::Real
            } else if word.iter().all(|l| l.is_ghost()) {
                InfiniteKind::Ghostly
            } else {
                InfiniteKind::Mixed
            }
        });
        InfiniteReport {
            valid,
            kind,
            checked_suffix_len: word.len(),
            problems,
        }
    }

    fn normalized(period: Vec<Letter>, suffix: Vec<Letter>) -> InfinitePath {
        let mut period = primitive_root(&period).to_vec();
        let mut start = 0;
        while start < suffix.len() && suffix[start] == period[0] {
            period.rotate_left(1);
            start += 1;
        }
        InfinitePath {
            period,
            suffix: suffix[start..].to_vec(),
        }
    }

    pub fn period(&self) -> &[Letter] {
        &self.period
    }

    pub fn suffix(&self) -> &[Letter] {
        &self.suffix
    }

    pub fn is_real(&self) -> bool {
        self.period[0].is_real() && self.suffix.iter().all(|l| l.is_real())
    }

    pub fn is_ghostly(&self) -> bool {
        self.period[0].is_ghost()
    }

    /// `x_i` for `i >= 1`.
    pub fn letter(&self, i: usize) -> Letter {
        assert!(i >= 1, "letters are indexed from 1");
        let s = self.suffix.len();
        if i <= s {
            self.suffix[s - i]
        } else {
            let k = self.period.len();
            self.period[k - 1 - (i - s - 1) % k]
        }
    }

    /// `r_d(x_1)`, the vertex where the path ends.
    pub fn range(&self, amb: &Ambient) -> VertexId {
        self.letter(1).range(amb.graph())
    }

    /// `tau_{>n}(x) = ... x_{n+2} x_{n+1}`.
    pub fn shift(&self, n: usize) -> InfinitePath {
        let s = self.suffix.len();
        if n <= s {
            return InfinitePath {
                period: self.period.clone(),
                suffix: self.suffix[..s - n].to_vec(),
            };
        }
        let mut period = self.period.clone();
        let k = period.len();
        period.rotate_right((n - s) % k);
        InfinitePath {
            period,
            suffix: Vec::new(),
        }
    }

    /// `tau_{<=n}(x) = x_n .. x_1`; for `n = 0` the vertex `r_d(x_1)`.
    pub fn prefix(&self, amb: &Ambient, n: usize) -> Path {
        if n == 0 {
            return Path::vertex(self.range(amb));
        }
        let letters: Vec<Letter> = (1..=n).rev().map(|i| self.letter(i)).collect();
        Path::from_letters(amb.graph(), letters).expect("suffixes of an infinite path compose")
    }

    /// `(tau_{<=n}(x), tau_{>n}(x))`.
    pub fn split_at(&self, amb: &Ambient, n: usize) -> (Path, InfinitePath) {
        (self.prefix(amb, n), self.shift(n))
    }

    /// `x_n .. x_1` read off the unfolding, as a plain word (for oracles).
    pub fn unfold(&self, n: usize) -> Vec<Letter> {
        (1..=n).rev().map(|i| self.letter(i)).collect()
    }

    pub fn format(&self, amb: &Ambient) -> String {
        let mut out = format!("({})^inf", amb.format_word(&self.period));
        if !self.suffix.is_empty() {
            out.push('.');
            out.push_str(&amb.format_word(&self.suffix));
        }
        out
    }

    pub fn display<'a>(&'a self, amb: &'a Ambient) -> impl fmt::Display + 'a {
        DisplayInfinite { amb, x: self }
    }
}

struct DisplayInfinite<'a> {
    amb: &'a Ambient,
    x: &'a InfinitePath,
}

impl fmt::Display for DisplayInfinite<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.x.format(self.amb))
    }
}

/// Two eventually periodic paths share a tail exactly when their primitive
/// periods are rotations of each other.
pub fn tail_equivalent(x: &InfinitePath, y: &InfinitePath) -> bool {
    x.period.len() == y.period.len()
        && (0..y.period.len()).any(|k| rotate_left(&y.period, k) == x.period)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::examples;

    fn words_up_to(amb: &Ambient, len: usize) -> Vec<Vec<Letter>> {
        let letters = amb.edge_letters();
        let mut all = vec![Vec::new()];
        let mut layer = vec![Vec::new()];
        for _ in 0..len {
            layer = layer
                .iter()
                .flat_map(|w: &Vec<Letter>| {
                    letters.iter().map(move |&l| {
                        let mut w = w.clone();
                        w.push(l);
                        w
                    })
                })
                .collect();
            all.extend(layer.iter().cloned());
        }
        all
    }

    #[test]
    fn basis_condition_examples() {
        let amb = examples::r2("d");
        assert!(is_basis_path(&amb, &amb.parse_path("e.d*").unwrap()));
        assert!(!is_basis_path(&amb, &amb.parse_path("d.d*").unwrap()));
        assert!(is_basis_path(&amb, &amb.parse_path("e.e*").unwrap()));
        assert!(!is_basis_path(&amb, &amb.parse_path("d*.d").unwrap()));
        assert!(is_basis_path(&amb, &amb.parse_path("v").unwrap()));
    }

    #[test]
    fn counts_on_two_loops() {
        let amb = examples::r2("d");
        let counts: Vec<usize> = (0..=2)
            .map(|n| enumerate_basis_paths(&amb, n, None).len())
            .collect();
        assert_eq!(counts, [1, 5, 16]);
        let names: Vec<String> = enumerate_basis_paths(&amb, 1, None)
            .iter()
            .map(|p| amb.format_path(p))
            .collect();
        assert_eq!(names, ["v", "d", "e", "d*", "e*"]);
    }

    #[test]
    fn enumeration_matches_word_filter() {
        for amb in [
            examples::r2("d"),
            examples::r2("e"),
            examples::exit_graph("e"),
        ] {
            let g = amb.graph();
            let mut oracle: Vec<Path> = g.vertices().map(Path::vertex).collect();
            for w in words_up_to(&amb, 4).into_iter().filter(|w| !w.is_empty()) {
                if let Ok(p) = Path::from_letters(g, w) {
                    if is_basis_path(&amb, &p) {
                        oracle.push(p);
                    }
                }
            }
            oracle.sort();
            assert_eq!(enumerate_basis_paths(&amb, 4, None), oracle);
        }
    }

    #[test]
    fn enumeration_at_a_vertex() {
        let amb = examples::exit_graph("d");
        let v = amb.graph().vertex_id("v").unwrap();
        let names: Vec<String> = enumerate_basis_paths(&amb, 2, Some(v))
            .iter()
            .map(|p| amb.format_path(p))
            .collect();
        assert_eq!(names, ["v", "f*", "f*.d*", "f*.e*"]);
    }

    #[test]
    fn splitting_finite_paths() {
        let amb = examples::r2("d");
        let x = amb.parse_path("d.e*").unwrap();
        let (a, b) = split_at(&amb, &x, 0).unwrap();
        assert_eq!(
            (amb.format_path(&a), amb.format_path(&b)),
            ("v".into(), "d.e*".into())
        );
        let (a, b) = split_at(&amb, &x, 1).unwrap();
        assert_eq!(
            (amb.format_path(&a), amb.format_path(&b)),
            ("d".into(), "e*".into())
        );
        let (a, b) = split_at(&amb, &x, 2).unwrap();
        assert_eq!(
            (amb.format_path(&a), amb.format_path(&b)),
            ("d.e*".into(), "v".into())
        );
        assert_eq!(
            split_at(&amb, &x, 3),
            Err(Error::IndexOutOfRange { index: 3, len: 2 })
        );
    }

    #[test]
    fn closed_paths() {
        let amb = examples::r2("d");
        let de = ClosedBasisPath::parse(&amb, "d.e").unwrap();
        let ed = ClosedBasisPath::parse(&amb, "e.d").unwrap();
        let dd = ClosedBasisPath::parse(&amb, "d.d").unwrap();
        assert!(cyclic_equivalent(&de, &ed));
        assert!(!cyclic_equivalent(&dd, &de));
        assert!(cyclic_equivalent(&de, &de));
        assert_eq!(ed.canonical(&amb), de);
        assert!(is_basis_path(&amb, &de.squared()));
        assert!(ClosedBasisPath::parse(&amb, "d.d*").is_err());
        let amb = examples::exit_graph("d");
        assert!(ClosedBasisPath::parse(&amb, "f").is_err());
    }

    #[test]
    fn closed_classes_on_two_loops() {
        let amb = examples::r2("d");
        let names: Vec<String> = closed_basis_classes(&amb, 2, false)
            .iter()
            .map(|c| amb.format_path(c.path()))
            .collect();
        assert_eq!(
            names,
            ["d", "e", "d*", "e*", "d.d", "d.e", "e.e", "d*.d*", "d*.e*", "e*.e*"]
        );
        assert_eq!(closed_basis_classes(&amb, 2, true).len(), 6);
    }

    #[test]
    fn infinite_validation() {
        let amb = examples::r2("e");
        let x = InfinitePath::parse(&amb, "(d)^inf").unwrap();
        assert!(x.is_real());
        let y = InfinitePath::parse(&amb, "(d*)^inf").unwrap();
        assert!(y.is_ghostly());
        let e = amb.parse_word("e").unwrap();
        let es = amb.parse_word("e*").unwrap();
        let report = InfinitePath::validate(&amb, &e, &es);
        assert!(!report.valid);
        assert!(report.problems[0].contains("e.e*"));
        let mixed = InfinitePath::parse(&amb, "(d)^inf.e*").unwrap();
        assert_eq!(
            InfinitePath::validate(&amb, mixed.period(), mixed.suffix()).kind,
            Some(InfiniteKind::Mixed)
        );
        assert!(InfinitePath::parse(&amb, "(d*)^inf.d").is_err());
        assert!(InfinitePath::parse(&amb, "(d*").is_err());
    }

    #[test]
    fn normalization_absorbs_suffix() {
        let amb = examples::r2("e");
        let a = InfinitePath::parse(&amb, "(d*)^inf").unwrap();
        let b = InfinitePath::parse(&amb, "(d*)^inf.d*.d*").unwrap();
        assert_eq!(a, b);
        let c = InfinitePath::parse(&amb, "(d.e)^inf.d").unwrap();
        assert_eq!(amb.format_word(c.period()), "e.d");
        assert!(c.suffix().is_empty());
        let d = InfinitePath::parse(&amb, "(d.d)^inf").unwrap();
        assert_eq!(d.period().len(), 1);
    }

    #[test]
    fn infinite_indexing_and_shift() {
        let amb = examples::r2("d");
        let x = InfinitePath::parse(&amb, "(d.e)^inf.e*").unwrap();
        assert_eq!(amb.format_word(&x.unfold(4)), "e.d.e.e*");
        let (head, tail) = x.split_at(&amb, 2);
        assert_eq!(amb.format_path(&head), "e.e*");
        assert_eq!(tail.format(&amb), "(e.d)^inf");
        assert_eq!(amb.format_path(&x.prefix(&amb, 0)), "v");
        let y = InfinitePath::parse(&amb, "(d*)^inf").unwrap();
        let (head, tail) = y.split_at(&amb, 2);
        assert_eq!(amb.format_path(&head), "d*.d*");
        assert_eq!(tail, y);
    }

    #[test]
    fn tail_equivalence() {
        let amb = examples::r2("e");
        let p = |s| InfinitePath::parse(&amb, s).unwrap();
        assert!(tail_equivalent(&p("(d*)^inf"), &p("(d*)^inf.d*.d*")));
        assert!(!tail_equivalent(&p("(d*)^inf"), &p("(e*)^inf")));
        assert!(!tail_equivalent(&p("(d)^inf"), &p("(d.e)^inf.d")));
        assert!(tail_equivalent(&p("(d.e)^inf"), &p("(e.d)^inf.e*")));
    }
}
