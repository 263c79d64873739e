//! Rank of the small-slice generators on both sides.

use std::collections::{BTreeMap, BTreeSet};

use continuation::continued_series;
use cy_state::{mu_inverse, CyBasisLabel};
use exact_kernel::linalg::{rank_complex, rank_rational};
use exact_kernel::{BigComplex, Rational};
use fjrw_series::{i_h_series, FjrwIFunction};
use lg_state::FjrwLabel;

use crate::identity::c_h_table;
use crate::CorrespondenceError;

#[derive(Clone, Debug)]
pub struct SliceRank {
    pub generators: usize,
    pub fjrw_rank: usize,
    pub cy_rank: usize,
}

/// Rank of a sparse matrix, computed on the connected pieces of its support graph.
fn sparse_rank<T: Clone, F: Fn(&[Vec<T>]) -> usize>(rows: &[BTreeMap<usize, T>], zero: T, rank: F) -> usize {
    let n = rows.len();
    let mut parent: Vec<usize> = (0..n).collect();
    fn root(p: &mut [usize], i: usize) -> usize {
        if p[i] != i {
            let r = root(p, p[i]);
            p[i] = r;
        }
        p[i]
    }
    let mut owner: BTreeMap<usize, usize> = BTreeMap::new();
    for (i, r) in rows.iter().enumerate() {
        for c in r.keys() {
            if let Some(&j) = owner.get(c) {
                let (a, b) = (root(&mut parent, i), root(&mut parent, j));
                parent[a] = b;
            } else {
                owner.insert(*c, i);
            }
        }
    }
    let mut groups: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
    for i in 0..n {
        let r = root(&mut parent, i);
        groups.entry(r).or_default().push(i);
    }
    groups
        .values()
        .map(|members| {
            let cols: Vec<usize> = members.iter().flat_map(|&i| rows[i].keys().copied()).collect::<BTreeSet<_>>().into_iter().collect();
            let m: Vec<Vec<T>> = members
                .iter()
                .map(|&i| cols.iter().map(|c| rows[i].get(c).cloned().unwrap_or_else(|| zero.clone())).collect())
                .collect();
            rank(&m)
        })
        .sum()
}

/// Generators: the `t^{k-1}` coefficients of `I_J` for `k = 1..4` and, for every other
/// covered `h`, the lowest coefficient on each of its two labels. On the CY side the
/// matching vectors are the `t^k` coefficients of each surviving class. `drop` removes one
/// generator from both sides for the negative control.
pub fn small_slice_rank(i: &FjrwIFunction, digits: u32, drop: Option<usize>) -> Result<SliceRank, CorrespondenceError> {
    let mut label_index: BTreeMap<(FjrwLabel, i64), usize> = BTreeMap::new();
    let mut cy_index: BTreeMap<(CyBasisLabel, i64), usize> = BTreeMap::new();
    let mut lg_rows: Vec<BTreeMap<usize, Rational>> = Vec::new();
    let mut cy_rows: Vec<BTreeMap<usize, BigComplex>> = Vec::new();
    for (h, g, _) in c_h_table()? {
        let s = i_h_series(i, &h)?;
        let mut seen: BTreeSet<FjrwLabel> = BTreeSet::new();
        for (n, lz) in s.coeffs().iter().enumerate() {
            let labels: BTreeSet<FjrwLabel> = lz.iter().flat_map(|(_, v)| v.iter().filter(|(_, c)| **c != 0).map(|(l, _)| *l).collect::<Vec<_>>()).collect();
            if labels.iter().all(|l| seen.contains(l)) {
                continue;
            }
            let mut row = BTreeMap::new();
            for (z, v) in lz.iter() {
                for (l, c) in v.iter() {
                    if *c != 0 {
                        let next = label_index.len();
                        let col = *label_index.entry((*l, z)).or_insert(next);
                        row.insert(col, c.clone());
                    }
                }
            }
            seen.extend(labels);
            lg_rows.push(row);
            let _ = n;
        }
        let c = continued_series(&g, 5, digits)?;
        let flat = c.flatten();
        for k in continuation::present_classes(&g) {
            let mut row = BTreeMap::new();
            for ((n, l, z), v) in flat.range((usize::from(k), mu_inverse_first(), i64::MIN)..) {
                if *n != usize::from(k) {
                    break;
                }
                let next = cy_index.len();
                let col = *cy_index.entry((*l, *z)).or_insert(next);
                row.insert(col, v.clone());
            }
            cy_rows.push(row);
        }
    }
    let generators = lg_rows.len();
    if let Some(d) = drop {
        lg_rows.remove(d);
        cy_rows.remove(d);
    }
    let fjrw_rank = sparse_rank(&lg_rows, Rational::new(), rank_rational);
    let tol = -(f64::from(digits) / 2.0);
    let cy_rank = sparse_rank(&cy_rows, BigComplex::zero(digits), |m| rank_complex(m, tol));
    Ok(SliceRank { generators, fjrw_rank, cy_rank })
}

fn mu_inverse_first() -> CyBasisLabel {
    mu_inverse(&FjrwLabel::j_pow(1)).map(|_| cy_state::cr_basis()[0]).expect("basis is nonempty")
}
