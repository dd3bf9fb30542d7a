//! Elements of `L(E)` as finite linear combinations of basis paths.
//!
//! A product of two basis paths `p q*` and `r t*` is computed by cancelling
//! the ghost block of the left factor against the real block of the right
//! factor (`e* f = delta_{ef} r(e)`), which leaves a word of shape real-block
//! then ghost-block. The only way that word can fail to be a basis path is a
//! junction `e e*` with `e` special; it is replaced by
//! `s(e) - sum_{f != e, s(f) = s(e)} f f*`, and only the first summand can
//! produce a new bad junction, with a strictly shorter word.

use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use crate::basis::is_basis_path;
use crate::error::{Error, Result};
use crate::field::Field;
use crate::graph::{Ambient, Letter, Path, VertexId};

#[derive(Clone, Debug)]
pub struct AlgebraElement<K: Field> {
    ambient: Arc<Ambient>,
    terms: BTreeMap<Path, K>,
}

impl<K: Field> PartialEq for AlgebraElement<K> {
    fn eq(&self, other: &Self) -> bool {
        same_ambient(&self.ambient, &other.ambient) && self.terms == other.terms
    }
}

impl<K: Field> Eq for AlgebraElement<K> {}

fn same_ambient(a: &Arc<Ambient>, b: &Arc<Ambient>) -> bool {
    Arc::ptr_eq(a, b) || **a == **b
}

fn add_term<K: Field>(terms: &mut BTreeMap<Path, K>, p: Path, k: K) {
    if k.is_zero() {
        return;
    }
    match terms.entry(p) {
        std::collections::btree_map::Entry::Vacant(slot) => {
            slot.insert(k);
        }
        std::collections::btree_map::Entry::Occupied(mut slot) => {
            let sum = slot.get().clone() + k;
            if sum.is_zero() {
                slot.remove();
            } else {
                *slot.get_mut() = sum;
            }
        }
    }
}

/// Rewrites a composable word of shape (real letters)(ghost letters),
/// starting at `source`, into basis paths; every output term is added to
/// `out` with coefficient `coeff` times its sign.
fn normalize_into<K: Field>(
    amb: &Ambient,
    source: VertexId,
    mut letters: Vec<Letter>,
    coeff: K,
    out: &mut BTreeMap<Path, K>,
) {
    let g = amb.graph();
    loop {
        let junction = letters
            .windows(2)
            .position(|w| w[0].is_real() && w[1].is_ghost());
        let special_pair = junction.filter(|&j| match (letters[j], letters[j + 1]) {
            (Letter::Real(e), Letter::Ghost(f)) => e == f && amb.is_special(e),
            _ => false,
        });
        let Some(j) = special_pair else {
            let path = match letters.last() {
                None => Path::vertex(source),
                Some(l) => Path::from_parts(source, l.range(g), letters),
            };
            add_term(out, path, coeff);
            return;
        };
        let Letter::Real(e) = letters[j] else {
            unreachable!()
        };
        let w = g.source(e);
        for &f in g.out_edges(w) {
            if f == e {
                continue;
            }
            let mut word = letters[..j].to_vec();
            word.push(Letter::Real(f));
            word.push(Letter::Ghost(f));
            word.extend_from_slice(&letters[j + 2..]);
            let range = word.last().expect("nonempty").range(g);
            add_term(out, Path::from_parts(source, range, word), -coeff.clone());
        }
        letters.drain(j..j + 2);
    }
}

/// `x * y` for basis paths `x`, `y`, in normal form.
pub fn multiply_monomials<K: Field>(amb: &Ambient, x: &Path, y: &Path) -> BTreeMap<Path, K> {
    let mut out = BTreeMap::new();
    multiply_into(amb, x, y, K::one(), &mut out);
    out
}

fn multiply_into<K: Field>(
    amb: &Ambient,
    x: &Path,
    y: &Path,
    coeff: K,
    out: &mut BTreeMap<Path, K>,
) {
    if x.range() != y.source() {
        return;
    }
    let mut left = x.letters().to_vec();
    let right = y.letters();
    let mut consumed = 0;
    while let (Some(&Letter::Ghost(a)), Some(&Letter::Real(b))) = (left.last(), right.get(consumed))
    {
        if a != b {
            return;
        }
        left.pop();
        consumed += 1;
    }
    left.extend_from_slice(&right[consumed..]);
    normalize_into(amb, x.source(), left, coeff, out);
}

impl<K: Field> AlgebraElement<K> {
    pub fn zero(ambient: &Arc<Ambient>) -> Self {
        AlgebraElement {
            ambient: Arc::clone(ambient),
            terms: BTreeMap::new(),
        }
    }

    /// The basis element `p`; fails unless `p` is a basis path.
    pub fn monomial(ambient: &Arc<Ambient>, p: Path) -> Result<Self> {
        if !p.is_vertex() && !is_basis_path(ambient, &p) {
            return Err(Error::NotBasisPath(ambient.format_path(&p)));
        }
        let mut terms = BTreeMap::new();
        terms.insert(p, K::one());
        Ok(AlgebraElement {
            ambient: Arc::clone(ambient),
            terms,
        })
    }

    /// The generator `v`, `e` or `e*`.
    pub fn generator(ambient: &Arc<Ambient>, letter: Letter) -> Self {
        let p = match letter {
            Letter::Vertex(v) => Path::vertex(v),
            l => Path::from_letters(ambient.graph(), vec![l]).expect("single letter"),
        };
        AlgebraElement::monomial(ambient, p).expect("generators are basis paths")
    }

    pub fn from_terms(
        ambient: &Arc<Ambient>,
        terms: impl IntoIterator<Item = (Path, K)>,
    ) -> Result<Self> {
        let mut out = AlgebraElement::zero(ambient);
        for (p, k) in terms {
            if !p.is_vertex() && !is_basis_path(ambient, &p) {
                return Err(Error::NotBasisPath(ambient.format_path(&p)));
            }
            add_term(&mut out.terms, p, k);
        }
        Ok(out)
    }

    pub fn ambient(&self) -> &Arc<Ambient> {
        &self.ambient
    }

    pub fn terms(&self) -> &BTreeMap<Path, K> {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coefficient(&self, p: &Path) -> K {
        self.terms.get(p).cloned().unwrap_or_else(K::zero)
    }

    fn check(&self, other: &Self) -> Result<()> {
        if same_ambient(&self.ambient, &other.ambient) {
            Ok(())
        } else {
            Err(Error::AmbientMismatch)
        }
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        let mut out = self.clone();
        for (p, k) in &other.terms {
            add_term(&mut out.terms, p.clone(), k.clone());
        }
        Ok(out)
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.add(&other.scale(&-K::one()))
    }

    pub fn scale(&self, k: &K) -> Self {
        let mut out = AlgebraElement::zero(&self.ambient);
        for (p, c) in &self.terms {
            add_term(&mut out.terms, p.clone(), c.clone() * k.clone());
        }
        out
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        let mut out = AlgebraElement::zero(&self.ambient);
        for (x, a) in &self.terms {
            for (y, b) in &other.terms {
                multiply_into(&self.ambient, x, y, a.clone() * b.clone(), &mut out.terms);
            }
        }
        Ok(out)
    }

    /// The image of a generator word `l_1 l_2 ... l_n` (vertices allowed);
    /// words that do not compose reduce to 0.
    pub fn reduce_word(ambient: &Arc<Ambient>, word: &[Letter]) -> Self {
        let mut acc: Option<Self> = None;
        for &l in word {
            let gen = AlgebraElement::generator(ambient, l);
            acc = Some(match acc {
                None => gen,
                Some(a) => a.mul(&gen).expect("same ambient"),
            });
        }
        acc.unwrap_or_else(|| AlgebraElement::zero(ambient))
    }

    /// Parses `k1*mono1 + k2*mono2 - mono3`. Coefficients are optional and
    /// written before the monomial; `0` is the zero element. Monomials must
    /// be basis paths unless `reduce` is set, in which case arbitrary
    /// generator words are reduced to normal form.
    pub fn parse(ambient: &Arc<Ambient>, text: &str, reduce: bool) -> Result<Self> {
        let compact: String = text.chars().filter(|c| !c.is_whitespace()).collect();
        if compact.is_empty() {
            return Err(Error::Syntax(text.to_string()));
        }
        if compact == "0" {
            return Ok(AlgebraElement::zero(ambient));
        }
        let mut out = AlgebraElement::zero(ambient);
        for (negative, term) in split_signed(&compact) {
            let term = term.ok_or_else(|| Error::Syntax(text.to_string()))?;
            let (coeff, mono) = match term.split_once('*') {
                Some((c, m)) if c.starts_with(|ch: char| ch.is_ascii_digit()) => {
                    let k = K::parse_scalar(c).ok_or_else(|| Error::Syntax(c.to_string()))?;
                    (k, m)
                }
                _ if term.starts_with(|ch: char| ch.is_ascii_digit()) => {
                    // A bare scalar has no monomial to attach to.
                    return Err(Error::Syntax(term.to_string()));
                }
                _ => (K::one(), term),
            };
            let coeff = if negative { -coeff } else { coeff };
            let word = ambient.parse_word(mono)?;
            let element = if reduce {
                AlgebraElement::reduce_word(ambient, &word)
            } else {
                let p = Path::from_word(ambient.graph(), &word)?;
                AlgebraElement::monomial(ambient, p)?
            };
            out = out.add(&element.scale(&coeff))?;
        }
        Ok(out)
    }
}

/// Splits `a+b-c` into signed terms; `None` marks an empty term.
fn split_signed(text: &str) -> Vec<(bool, Option<&str>)> {
    let mut out = Vec::new();
    let mut negative = false;
    let mut start = 0;
    let bytes = text.as_bytes();
    let mut i = 0;
    if let Some(b'+' | b'-') = bytes.first() {
        negative = bytes[0] == b'-';
        start = 1;
        i = 1;
    }
    while i < bytes.len() {
        if matches!(bytes[i], b'+' | b'-') && i > start && bytes[i - 1] != b'/' {
            out.push((negative, Some(&text[start..i])));
            negative = bytes[i] == b'-';
            start = i + 1;
        }
        i += 1;
    }
    let last = &text[start..];
    out.push((negative, (!last.is_empty()).then_some(last)));
    if out.iter().any(|(_, t)| t.map_or(true, str::is_empty)) {
        return vec![(false, None)];
    }
    out
}

impl<K: Field> fmt::Display for AlgebraElement<K> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (i, (p, k)) in self.terms.iter().enumerate() {
            let (negative, magnitude) = k.sign_split();
            match (i, negative) {
                (0, true) => f.write_str("-")?,
                (0, false) => {}
                (_, true) => f.write_str(" - ")?,
                (_, false) => f.write_str(" + ")?,
            }
            if !magnitude.is_one() {
                write!(f, "{magnitude}*")?;
            }
            f.write_str(&self.ambient.format_path(p))?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::examples;
    use crate::field::{Fp, Rational};

    type Q = Rational;

    fn el(amb: &Arc<Ambient>, s: &str) -> AlgebraElement<Q> {
        AlgebraElement::parse(amb, s, true).unwrap()
    }

    #[test]
    fn linear_structure() {
        let amb = examples::r2("d");
        let v = el(&amb, "v");
        assert!(v.sub(&v).unwrap().is_zero());
        assert!(el(&amb, "d").scale(&Q::from_i64(0)).is_zero());
        assert_eq!(
            el(&amb, "d").add(&el(&amb, "d")).unwrap().to_string(),
            "2*d"
        );
    }

    #[test]
    fn defining_relations() {
        let amb = examples::r2("d");
        assert_eq!(el(&amb, "e*.e").to_string(), "v");
        assert!(el(&amb, "d*.e").is_zero());
        assert_eq!(el(&amb, "d.d*").to_string(), "v - e.e*");
        assert_eq!(el(&amb, "d.d*.d").to_string(), "d");
        assert_eq!(el(&amb, "v.v").to_string(), "v");
    }

    #[test]
    fn products() {
        let amb = examples::r2("d");
        let a = el(&amb, "v - e.e*");
        assert_eq!(a.mul(&a).unwrap(), a);
        assert!(el(&amb, "e.e*").mul(&el(&amb, "d")).unwrap().is_zero());
        let x = el(&amb, "d.e - 2*e*");
        assert_eq!(el(&amb, "v").mul(&x).unwrap(), x);
    }

    #[test]
    fn nested_junctions_rewrite_recursively() {
        // With d special, d.d.d*.d* = d.(v - e.e*).d* = (v - e.e*) - d.e.e*.d*.
        let amb = examples::r2("d");
        assert_eq!(el(&amb, "d.d.d*.d*").to_string(), "v - e.e* - d.e.e*.d*");
    }

    #[test]
    fn sinks_and_exits() {
        let amb = examples::exit_graph("d");
        assert_eq!(el(&amb, "f*.f").to_string(), "v");
        assert_eq!(el(&amb, "d.d*").to_string(), "u - e.e* - f.f*");
        assert!(el(&amb, "f.d").is_zero());
        assert!(el(&amb, "u.v").is_zero());
    }

    #[test]
    fn parse_errors_and_syntax() {
        let amb = examples::r2("d");
        assert!(AlgebraElement::<Q>::parse(&amb, "d.d*", false).is_err());
        assert!(AlgebraElement::<Q>::parse(&amb, "d + ", true).is_err());
        assert!(AlgebraElement::<Q>::parse(&amb, "3", true).is_err());
        assert!(AlgebraElement::<Q>::parse(&amb, "0", true)
            .unwrap()
            .is_zero());
        let x = el(&amb, "-1/2*d + 3/2 * e*");
        assert_eq!(x.to_string(), "-1/2*d + 3/2*e*");
    }

    #[test]
    fn ambient_mismatch_is_an_error() {
        let a = el(&examples::r2("d"), "d");
        let b = el(&examples::r2("e"), "d");
        assert_eq!(a.mul(&b), Err(Error::AmbientMismatch));
        assert_eq!(a.add(&b), Err(Error::AmbientMismatch));
    }

    #[test]
    fn prime_field_mode() {
        let amb = examples::r2("d");
        let x = AlgebraElement::<Fp<3>>::parse(&amb, "2*d.d*", true).unwrap();
        assert_eq!(x.to_string(), "2*v + e.e*");
    }
}
