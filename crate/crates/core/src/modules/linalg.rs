//! Exact kernels.
//!
//! Both solvers return the same basis: one vector per free column, in
//! ascending column order, with a 1 in that column and the reduced
//! row echelon form entries elsewhere. So the first nonzero entry of every
//! basis vector is 1 and the output does not depend on row order.

use std::collections::BTreeMap;

use crate::field::Field;

/// Kernel of a dense `rows x ncols` matrix.
pub fn rational_nullspace<K: Field>(rows: &[Vec<K>], ncols: usize) -> Vec<Vec<K>> {
    let mut a: Vec<Vec<K>> = rows.to_vec();
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..ncols {
        let Some(p) = (r..a.len()).find(|&i| !a[i][c].is_zero()) else {
            continue;
        };
        a.swap(r, p);
        let inv = a[r][c].inverse().expect("nonzero pivot");
        for x in a[r].iter_mut() {
            *x = x.clone() * inv.clone();
        }
        for i in 0..a.len() {
            if i != r && !a[i][c].is_zero() {
                let k = a[i][c].clone();
                for j in 0..ncols {
                    let d = a[r][j].clone() * k.clone();
                    a[i][j] = a[i][j].clone() - d;
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    let mut out = Vec::new();
    for f in (0..ncols).filter(|c| !pivots.contains(c)) {
        let mut v = vec![K::zero(); ncols];
        v[f] = K::one();
        for (i, &p) in pivots.iter().enumerate() {
            v[p] = -a[i][f].clone();
        }
        out.push(v);
    }
    out
}

type SparseRow<K> = BTreeMap<usize, K>;

/// Kernel of a sparse system over `nvars` unknowns; each row lists its
/// nonzero `(column, coefficient)` pairs. Rows are eliminated one at a time
/// against the pivots found so far, pivoting on the smallest column.
pub fn sparse_nullspace<K: Field>(
    nvars: usize,
    rows: &[Vec<(usize, K)>],
) -> Vec<BTreeMap<usize, K>> {
    let mut pivots: BTreeMap<usize, SparseRow<K>> = BTreeMap::new();
    for row in rows {
        let mut r: SparseRow<K> = BTreeMap::new();
        for (c, k) in row {
            add(&mut r, *c, k.clone());
        }
        reduce(&mut r, &pivots);
        let Some((&c, lead)) = r.iter().next() else {
            continue;
        };
        let inv = lead.inverse().expect("nonzero lead");
        let r: SparseRow<K> = r.into_iter().map(|(j, k)| (j, k * inv.clone())).collect();
        pivots.insert(c, r);
    }
    // Back substitution, largest pivot first, so every pivot row ends up
    // free of the other pivot columns.
    let cols: Vec<usize> = pivots.keys().rev().copied().collect();
    for c in cols {
        let mut r = pivots.remove(&c).expect("pivot present");
        let lead = r.remove(&c).expect("lead present");
        reduce(&mut r, &pivots);
        r.insert(c, lead);
        pivots.insert(c, r);
    }
    let mut basis: BTreeMap<usize, BTreeMap<usize, K>> = BTreeMap::new();
    for (&p, r) in &pivots {
        for (&f, k) in r.range(p + 1..) {
            basis.entry(f).or_default().insert(p, -k.clone());
        }
    }
    (0..nvars)
        .filter(|c| !pivots.contains_key(c))
        .map(|f| {
            let mut v = basis.remove(&f).unwrap_or_default();
            v.insert(f, K::one());
            v
        })
        .collect()
}

fn add<K: Field>(r: &mut SparseRow<K>, c: usize, k: K) {
    if k.is_zero() {
        return;
    }
    let sum = r.get(&c).cloned().unwrap_or_else(K::zero) + k;
    if sum.is_zero() {
        r.remove(&c);
    } else {
        r.insert(c, sum);
    }
}

/// Clears every pivot column from `r`, smallest first. A pivot row only
/// holds columns above its pivot, so each subtraction moves forward.
fn reduce<K: Field>(r: &mut SparseRow<K>, pivots: &BTreeMap<usize, SparseRow<K>>) {
    let mut from = 0;
    loop {
        let Some((c, k)) = r
            .range(from..)
            .find(|(c, _)| pivots.contains_key(c))
            .map(|(c, k)| (*c, k.clone()))
        else {
            return;
        };
        for (j, a) in &pivots[&c] {
            add(r, *j, -(a.clone() * k.clone()));
        }
        from = c + 1;
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::Rational;
    use num_traits::Zero;

    fn q(n: i64) -> Rational {
        Rational::from_i64(n)
    }

    fn dense(rows: &[&[i64]]) -> Vec<Vec<Rational>> {
        rows.iter()
            .map(|r| r.iter().map(|&x| q(x)).collect())
            .collect()
    }

    fn to_sparse(rows: &[Vec<Rational>]) -> Vec<Vec<(usize, Rational)>> {
        rows.iter()
            .map(|r| {
                r.iter()
                    .cloned()
                    .enumerate()
                    .filter(|(_, k)| !k.is_zero())
                    .collect()
            })
            .collect()
    }

    fn densify(v: &BTreeMap<usize, Rational>, n: usize) -> Vec<Rational> {
        (0..n)
            .map(|i| v.get(&i).cloned().unwrap_or_else(|| q(0)))
            .collect()
    }

    #[test]
    fn small_kernels() {
        let id = dense(&[&[1, 0, 0], &[0, 1, 0], &[0, 0, 1]]);
        assert!(rational_nullspace(&id, 3).is_empty());
        let zero = dense(&[&[0, 0, 0], &[0, 0, 0]]);
        assert_eq!(rational_nullspace(&zero, 3).len(), 3);
        let rank1 = dense(&[&[1, 2], &[2, 4]]);
        assert_eq!(rational_nullspace(&rank1, 2), vec![vec![q(-2), q(1)]]);
        assert_eq!(
            sparse_nullspace(2, &to_sparse(&rank1)),
            vec![BTreeMap::from([(0, q(-2)), (1, q(1))])]
        );
    }

    #[test]
    fn no_rows_is_everything() {
        assert_eq!(sparse_nullspace::<Rational>(2, &[]).len(), 2);
        assert_eq!(rational_nullspace::<Rational>(&[], 2).len(), 2);
    }

    #[test]
    fn dense_and_sparse_agree_on_a_chain() {
        let a = dense(&[&[1, -1, 0, 0], &[0, 1, 0, -1], &[2, 0, 0, -2]]);
        let d = rational_nullspace(&a, 4);
        let s: Vec<_> = sparse_nullspace(4, &to_sparse(&a))
            .iter()
            .map(|v| densify(v, 4))
            .collect();
        assert_eq!(d, s);
        assert_eq!(d.len(), 2);
    }

    mod props {
        use super::*;
        use proptest::prelude::*;

        proptest! {
            #[test]
            fn dense_matches_sparse(rows in prop::collection::vec(prop::collection::vec(-2i64..=2, 5), 0..6)) {
                let a: Vec<Vec<Rational>> = rows.iter().map(|r| r.iter().map(|&x| q(x)).collect()).collect();
                let d = rational_nullspace(&a, 5);
                let s: Vec<_> = sparse_nullspace(5, &to_sparse(&a)).iter().map(|v| densify(v, 5)).collect();
                prop_assert_eq!(&d, &s);
                for v in &d {
                    for r in &a {
                        let dot = r.iter().zip(v).fold(q(0), |acc, (x, y)| acc + x.clone() * y.clone());
                        prop_assert!(dot.is_zero());
                    }
                }
            }
        }
    }
}
