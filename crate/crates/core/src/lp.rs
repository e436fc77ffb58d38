//! Exact phase-one simplex method.
//!
//! Decides whether `{x ≥ 0 : A x = b}` is nonempty and returns a feasible
//! point. Pivoting follows Bland's rule (lowest-index entering column,
//! lowest-index leaving basic variable among ratio ties), which cannot
//! cycle, so the loop terminates on every input.

use crate::scalar::Field;

struct Tableau<F> {
    /// `m` constraint rows, each `n + m` columns followed by the rhs.
    rows: Vec<Vec<F>>,
    /// Reduced costs of the phase-one objective, same width as a row.
    cost: Vec<F>,
    basis: Vec<usize>,
}

impl<F: Field> Tableau<F> {
    fn pivot(&mut self, r: usize, c: usize) {
        let width = self.cost.len();
        let inv = F::one() / self.rows[r][c].clone();
        for x in self.rows[r].iter_mut() {
            *x = x.clone() * inv.clone();
        }
        let pivot_row = self.rows[r].clone();
        for (i, row) in self.rows.iter_mut().enumerate() {
            if i == r || row[c].is_zero() {
                continue;
            }
            let f = row[c].clone();
            for (x, p) in row.iter_mut().zip(&pivot_row).take(width) {
                if !p.is_zero() {
                    *x = x.clone() - f.clone() * p.clone();
                }
            }
        }
        if !self.cost[c].is_zero() {
            let f = self.cost[c].clone();
            for (x, p) in self.cost.iter_mut().zip(&pivot_row).take(width) {
                if !p.is_zero() {
                    *x = x.clone() - f.clone() * p.clone();
                }
            }
        }
        self.basis[r] = c;
    }
}

/// A point of `{x ≥ 0 : A x = b}`, or `None` if the set is empty.
///
/// `a` is given row-wise; all rows must have the same length `n`.
pub fn find_nonnegative_solution<F: Field>(a: &[Vec<F>], b: &[F]) -> Option<Vec<F>> {
    let m = a.len();
    assert_eq!(m, b.len(), "row count of A and length of b differ");
    let n = a.first().map_or(0, Vec::len);
    if m == 0 {
        return Some(vec![F::zero(); n]);
    }
    let width = n + m + 1;
    let mut rows = Vec::with_capacity(m);
    for (i, (arow, bi)) in a.iter().zip(b).enumerate() {
        assert_eq!(arow.len(), n, "ragged constraint matrix");
        let flip = bi.is_negative();
        let mut row = Vec::with_capacity(width);
        row.extend(arow.iter().map(|x| if flip { -x.clone() } else { x.clone() }));
        row.extend((0..m).map(|j| if j == i { F::one() } else { F::zero() }));
        row.push(if flip { -bi.clone() } else { bi.clone() });
        rows.push(row);
    }
    // Minimise the sum of artificials: reduced cost of column j is -Σ_i row_i[j]
    // for structural columns and 0 for the basic artificials.
    let mut cost = vec![F::zero(); width];
    for row in &rows {
        for j in (0..n).chain(std::iter::once(width - 1)) {
            cost[j] = cost[j].clone() - row[j].clone();
        }
    }
    let mut t = Tableau { rows, cost, basis: (n..n + m).collect() };

    while let Some(enter) = (0..n + m).find(|&j| t.cost[j].is_negative()) {
        let mut leave: Option<(usize, F)> = None;
        for i in 0..m {
            let coef = &t.rows[i][enter];
            if !coef.is_positive() {
                continue;
            }
            let ratio = t.rows[i][width - 1].clone() / coef.clone();
            let better = match &leave {
                None => true,
                Some((li, lr)) => ratio < *lr || (ratio == *lr && t.basis[i] < t.basis[*li]),
            };
            if better {
                leave = Some((i, ratio));
            }
        }
        // Phase one is bounded below by zero, so some row always qualifies.
        let (r, _) = leave.expect("phase-one objective is bounded");
        t.pivot(r, enter);
    }

    // The objective value is -cost[rhs].
    if !t.cost[width - 1].is_zero() {
        return None;
    }
    let mut x = vec![F::zero(); n];
    for (i, &bv) in t.basis.iter().enumerate() {
        if bv < n {
            x[bv] = t.rows[i][width - 1].clone();
        }
    }
    Some(x)
}
