//! Column Hermite normal form over `k[t]`.
//!
//! Used to represent the `k[t]`-module spanned by a set of column vectors by
//! at most `rows` generators. Evaluating a generating set at any `t` spans the
//! same space as evaluating any other generating set of the same module, so
//! the rank-drop points of a module are the roots of the product of its
//! Hermite pivots (the gcd of the maximal minors).

use crate::unipoly::UniPoly;

/// Column vector of polynomials.
pub type PolyColumn = Vec<UniPoly>;

/// Generators of a submodule of `k[t]^rows` in column echelon form.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HermiteBasis {
    rows: usize,
    /// `(pivot_row, column)`; pivot rows strictly increase, the pivot entry is
    /// monic, entries above it vanish and entries to its left in the same
    /// row are reduced modulo it.
    columns: Vec<(usize, PolyColumn)>,
}

impl HermiteBasis {
    pub fn new(rows: usize, generators: Vec<PolyColumn>) -> Self {
        let mut remaining: Vec<PolyColumn> = generators
            .into_iter()
            .filter(|c| c.iter().any(|p| !p.is_zero()))
            .collect();
        let mut columns: Vec<(usize, PolyColumn)> = Vec::new();
        for row in 0..rows {
            loop {
                let Some(best) = remaining
                    .iter()
                    .enumerate()
                    .filter(|(_, c)| !c[row].is_zero())
                    .min_by_key(|(_, c)| c[row].degree())
                    .map(|(k, _)| k)
                else {
                    break;
                };
                let pivot = remaining.swap_remove(best);
                let mut done = true;
                for col in remaining.iter_mut() {
                    if col[row].is_zero() {
                        continue;
                    }
                    let (q, _) = col[row].div_rem(&pivot[row]);
                    axpy(col, &q, &pivot);
                    if !col[row].is_zero() {
                        done = false;
                    }
                }
                remaining.retain(|c| c.iter().any(|p| !p.is_zero()));
                if done {
                    let inv = pivot[row].lead().inv().expect("nonzero pivot");
                    let pivot: PolyColumn = pivot.iter().map(|p| p.scale(&inv)).collect();
                    columns.push((row, pivot));
                    break;
                }
                remaining.push(pivot);
            }
        }
        // reduce entries below each pivot using the later pivots
        for k in 0..columns.len() {
            for l in k + 1..columns.len() {
                let (prow, pcol) = columns[l].clone();
                let entry = &columns[k].1[prow];
                if entry.is_zero() {
                    continue;
                }
                let (q, _) = entry.div_rem(&pcol[prow]);
                axpy(&mut columns[k].1, &q, &pcol);
            }
        }
        HermiteBasis { rows, columns }
    }

    pub fn rank(&self) -> usize {
        self.columns.len()
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn generators(&self) -> impl Iterator<Item = &PolyColumn> {
        self.columns.iter().map(|(_, c)| c)
    }

    /// Product of the pivots when the module has full rank `rows`; this is
    /// the monic gcd of all maximal minors of any generating set.
    pub fn maximal_minor_gcd(&self) -> Option<UniPoly> {
        (self.rank() == self.rows).then(|| {
            self.columns
                .iter()
                .fold(UniPoly::one(), |acc, (row, c)| &acc * &c[*row])
        })
    }
}

/// `col -= q · pivot`
fn axpy(col: &mut PolyColumn, q: &UniPoly, pivot: &PolyColumn) {
    if q.is_zero() {
        return;
    }
    for (a, b) in col.iter_mut().zip(pivot) {
        if !b.is_zero() {
            *a = &*a - &(q * b);
        }
    }
}
