//! Dense integer matrices with arbitrary precision entries, and the Smith
//! normal form.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

/// Row-major integer matrix.
#[derive(Clone, PartialEq, Eq)]
pub struct IntegerMatrix {
    rows: usize,
    cols: usize,
    entries: Vec<BigInt>,
}

impl fmt::Debug for IntegerMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "IntegerMatrix {}x{} [", self.rows, self.cols)?;
        for r in 0..self.rows {
            let row: Vec<String> = self.row(r).iter().map(ToString::to_string).collect();
            write!(f, "[{}]", row.join(", "))?;
        }
        write!(f, "]")
    }
}

impl IntegerMatrix {
    pub fn zeros(rows: usize, cols: usize) -> IntegerMatrix {
        IntegerMatrix { rows, cols, entries: vec![BigInt::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> IntegerMatrix {
        let mut m = IntegerMatrix::zeros(n, n);
        for i in 0..n {
            m.entries[i * n + i] = BigInt::one();
        }
        m
    }

    /// From rows of machine integers; all rows must have length `cols`.
    pub fn from_rows(cols: usize, rows: &[Vec<i64>]) -> IntegerMatrix {
        let mut m = IntegerMatrix::zeros(rows.len(), cols);
        for (r, row) in rows.iter().enumerate() {
            assert_eq!(row.len(), cols, "ragged matrix rows");
            for (c, &x) in row.iter().enumerate() {
                m.entries[r * cols + c] = BigInt::from(x);
            }
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> &BigInt {
        &self.entries[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, value: BigInt) {
        self.entries[r * self.cols + c] = value;
    }

    pub fn add_to(&mut self, r: usize, c: usize, value: i64) {
        self.entries[r * self.cols + c] += value;
    }

    pub fn row(&self, r: usize) -> &[BigInt] {
        &self.entries[r * self.cols..(r + 1) * self.cols]
    }

    pub fn column(&self, c: usize) -> Vec<BigInt> {
        (0..self.rows).map(|r| self.get(r, c).clone()).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(Zero::is_zero)
    }

    /// Nonzero entries as `(row, col, value)`.
    pub fn nonzero(&self) -> impl Iterator<Item = (usize, usize, &BigInt)> + '_ {
        self.entries
            .iter()
            .enumerate()
            .filter(|(_, x)| !x.is_zero())
            .map(|(i, x)| (i / self.cols, i % self.cols, x))
    }

    pub fn mul(&self, other: &IntegerMatrix) -> IntegerMatrix {
        assert_eq!(self.cols, other.rows, "matrix shapes do not compose");
        let mut out = IntegerMatrix::zeros(self.rows, other.cols);
        for (r, k, a) in self.nonzero() {
            for c in 0..other.cols {
                let b = other.get(k, c);
                if !b.is_zero() {
                    out.entries[r * other.cols + c] += a * b;
                }
            }
        }
        out
    }

    pub fn apply(&self, v: &[BigInt]) -> Vec<BigInt> {
        assert_eq!(v.len(), self.cols, "vector length does not match columns");
        let mut out = vec![BigInt::zero(); self.rows];
        for (r, c, a) in self.nonzero() {
            if !v[c].is_zero() {
                out[r] += a * &v[c];
            }
        }
        out
    }

    pub fn add(&self, other: &IntegerMatrix) -> IntegerMatrix {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        let entries = self.entries.iter().zip(&other.entries).map(|(a, b)| a + b).collect();
        IntegerMatrix { rows: self.rows, cols: self.cols, entries }
    }

    pub fn sub(&self, other: &IntegerMatrix) -> IntegerMatrix {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        let entries = self.entries.iter().zip(&other.entries).map(|(a, b)| a - b).collect();
        IntegerMatrix { rows: self.rows, cols: self.cols, entries }
    }

    /// Exact determinant by fraction-free (Bareiss) elimination.
    pub fn determinant(&self) -> BigInt {
        assert_eq!(self.rows, self.cols, "determinant of a non-square matrix");
        let n = self.rows;
        if n == 0 {
            return BigInt::one();
        }
        let mut a = self.clone();
        let mut sign = BigInt::one();
        let mut prev = BigInt::one();
        for k in 0..n - 1 {
            if a.get(k, k).is_zero() {
                let Some(p) = (k + 1..n).find(|&r| !a.get(r, k).is_zero()) else {
                    return BigInt::zero();
                };
                a.swap_rows(k, p);
                sign = -sign;
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    let v = (a.get(i, j) * a.get(k, k) - a.get(i, k) * a.get(k, j)) / &prev;
                    a.set(i, j, v);
                }
            }
            prev = a.get(k, k).clone();
        }
        sign * a.get(n - 1, n - 1)
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a != b {
            for c in 0..self.cols {
                self.entries.swap(a * self.cols + c, b * self.cols + c);
            }
        }
    }

    fn swap_cols(&mut self, a: usize, b: usize) {
        if a != b {
            for r in 0..self.rows {
                self.entries.swap(r * self.cols + a, r * self.cols + b);
            }
        }
    }

    /// `row[dst] += k * row[src]`
    fn add_row(&mut self, dst: usize, src: usize, k: &BigInt) {
        for c in 0..self.cols {
            let s = &self.entries[src * self.cols + c];
            if !s.is_zero() {
                let v = s * k;
                self.entries[dst * self.cols + c] += v;
            }
        }
    }

    /// `(row[i], row[j]) <- (k0 row[i] + k1 row[j], k2 row[i] + k3 row[j])`
    fn combine_rows(&mut self, i: usize, j: usize, k: &[BigInt; 4]) {
        for c in 0..self.cols {
            let (x, y) = (&self.entries[i * self.cols + c], &self.entries[j * self.cols + c]);
            if x.is_zero() && y.is_zero() {
                continue;
            }
            let (nx, ny) = (&k[0] * x + &k[1] * y, &k[2] * x + &k[3] * y);
            self.entries[i * self.cols + c] = nx;
            self.entries[j * self.cols + c] = ny;
        }
    }

    /// `(col[i], col[j]) <- (k0 col[i] + k1 col[j], k2 col[i] + k3 col[j])`
    fn combine_cols(&mut self, i: usize, j: usize, k: &[BigInt; 4]) {
        for r in 0..self.rows {
            let (x, y) = (&self.entries[r * self.cols + i], &self.entries[r * self.cols + j]);
            if x.is_zero() && y.is_zero() {
                continue;
            }
            let (nx, ny) = (&k[0] * x + &k[1] * y, &k[2] * x + &k[3] * y);
            self.entries[r * self.cols + i] = nx;
            self.entries[r * self.cols + j] = ny;
        }
    }

    fn negate_row(&mut self, r: usize) {
        for c in 0..self.cols {
            let e = &mut self.entries[r * self.cols + c];
            *e = -std::mem::take(e);
        }
    }

    /// Nonzero invariant factors, in divisibility order.
    pub fn invariant_factors(&self) -> Vec<BigInt> {
        let (units, residue) = unit_reduction(self);
        let mut out = vec![BigInt::one(); units];
        if let Some(residue) = residue {
            out.extend(smith_normal_form(&residue).factors);
        }
        out
    }

    pub fn rank(&self) -> usize {
        self.invariant_factors().len()
    }
}

/// `U · M · V = D` with `U`, `V` unimodular and `D` diagonal, its nonzero
/// diagonal entries positive and each dividing the next.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SmithForm {
    pub u: IntegerMatrix,
    pub d: IntegerMatrix,
    pub v: IntegerMatrix,
    /// The nonzero diagonal entries of `D`.
    pub factors: Vec<BigInt>,
}

impl SmithForm {
    pub fn rank(&self) -> usize {
        self.factors.len()
    }

    /// Some `x` with `M x = b`, if one exists.
    pub fn preimage(&self, b: &[BigInt]) -> Option<Vec<BigInt>> {
        let ub = self.u.apply(b);
        let r = self.rank();
        if ub[r..].iter().any(|x| !x.is_zero()) {
            return None;
        }
        let mut y = vec![BigInt::zero(); self.v.rows()];
        for i in 0..r {
            let (q, rem) = ub[i].div_rem(&self.factors[i]);
            if !rem.is_zero() {
                return None;
            }
            y[i] = q;
        }
        Some(self.v.apply(&y))
    }

    /// Whether `b` lies in the integer column span of `M`.
    pub fn in_image(&self, b: &[BigInt]) -> bool {
        self.preimage(b).is_some()
    }

    /// A basis of the integer kernel of `M`: the last columns of `V`.
    pub fn kernel_basis(&self) -> Vec<Vec<BigInt>> {
        (self.rank()..self.v.cols()).map(|c| self.v.column(c)).collect()
    }
}

/// Smith normal form with transforms. Each pivot row and column is cleared
/// with Bezout steps, so the pivot becomes the gcd of the entries it meets
/// and intermediate values stay small.
pub fn smith_normal_form(m: &IntegerMatrix) -> SmithForm {
    let (rows, cols) = (m.rows, m.cols);
    let mut d = m.clone();
    let mut u = IntegerMatrix::identity(rows);
    let mut v = IntegerMatrix::identity(cols);
    let mut t = 0;
    while t < rows.min(cols) {
        // Smallest nonzero entry of the trailing block.
        let mut best: Option<(usize, usize)> = None;
        for r in t..rows {
            for c in t..cols {
                let x = d.get(r, c);
                if !x.is_zero() && best.is_none_or(|(br, bc)| x.abs() < d.get(br, bc).abs()) {
                    best = Some((r, c));
                }
            }
        }
        let Some((pr, pc)) = best else { break };
        d.swap_rows(t, pr);
        u.swap_rows(t, pr);
        d.swap_cols(t, pc);
        v.swap_cols(t, pc);
        loop {
            for r in t + 1..rows {
                if let Some(k) = bezout(d.get(t, t), d.get(r, t)) {
                    d.combine_rows(t, r, &k);
                    u.combine_rows(t, r, &k);
                }
            }
            let mut dirty = false;
            for c in t + 1..cols {
                if let Some(k) = bezout(d.get(t, t), d.get(t, c)) {
                    d.combine_cols(t, c, &k);
                    v.combine_cols(t, c, &k);
                    dirty = true;
                }
            }
            // Column operations only refill column t if the pivot shrank.
            if dirty && (t + 1..rows).any(|r| !d.get(r, t).is_zero()) {
                continue;
            }
            // Divisibility: pull a non-multiple into the pivot row.
            let pivot = d.get(t, t).clone();
            let bad = (t + 1..rows).find(|&r| (t + 1..cols).any(|c| !d.get(r, c).is_multiple_of(&pivot)));
            match bad {
                Some(r) => {
                    let one = BigInt::one();
                    d.add_row(t, r, &one);
                    u.add_row(t, r, &one);
                }
                None => break,
            }
        }
        if d.get(t, t).is_negative() {
            d.negate_row(t);
            u.negate_row(t);
        }
        t += 1;
    }
    let factors = (0..rows.min(cols))
        .map(|i| d.get(i, i).clone())
        .take_while(|x| !x.is_zero())
        .collect();
    SmithForm { u, d, v, factors }
}

/// A unimodular `[[p, q], [-b/g, a/g]]` with `p a + q b = g = gcd(a, b)`,
/// sending `(a, b)` to `(g, 0)`, or `None` if `b` is already zero. When `a`
/// divides `b` this is a plain subtraction.
fn bezout(a: &BigInt, b: &BigInt) -> Option<[BigInt; 4]> {
    if b.is_zero() {
        return None;
    }
    if !a.is_zero() && b.is_multiple_of(a) {
        return Some([BigInt::one(), BigInt::zero(), -(b / a), BigInt::one()]);
    }
    let e = a.extended_gcd(b);
    Some([e.x, e.y, -(b / &e.gcd), a / &e.gcd])
}

type SparseRow = BTreeMap<usize, BigInt>;

/// Eliminate on unit entries while any remain. Returns the number of unit
/// pivots and the remaining submatrix, whose invariant factors together with
/// the units are those of `m`.
fn unit_reduction(m: &IntegerMatrix) -> (usize, Option<IntegerMatrix>) {
    let mut rows: Vec<Option<SparseRow>> = (0..m.rows)
        .map(|r| {
            let row: SparseRow = (0..m.cols)
                .filter(|&c| !m.get(r, c).is_zero())
                .map(|c| (c, m.get(r, c).clone()))
                .collect();
            (!row.is_empty()).then_some(row)
        })
        .collect();
    let mut in_col: Vec<BTreeMap<usize, ()>> = vec![BTreeMap::new(); m.cols];
    for (r, row) in rows.iter().enumerate() {
        if let Some(row) = row {
            for &c in row.keys() {
                in_col[c].insert(r, ());
            }
        }
    }
    let mut units = 0;
    let mut progress = true;
    while progress {
        progress = false;
        for c in 0..m.cols {
            let pivot = in_col[c]
                .keys()
                .copied()
                .filter(|&r| rows[r].as_ref().is_some_and(|row| row[&c].abs().is_one()))
                .min_by_key(|&r| rows[r].as_ref().map_or(usize::MAX, BTreeMap::len));
            let Some(p) = pivot else { continue };
            let prow = rows[p].take().expect("active pivot row");
            for &k in prow.keys() {
                in_col[k].remove(&p);
            }
            let sign = prow[&c].clone();
            let others: Vec<usize> = in_col[c].keys().copied().collect();
            for r in others {
                let row = rows[r].as_mut().expect("indexed rows are active");
                // row -= (row[c] / pivot) * prow, with pivot = ±1.
                let factor = &row[&c] * &sign;
                for (&k, x) in &prow {
                    let e = row.entry(k).or_insert_with(BigInt::zero);
                    *e -= &factor * x;
                    if e.is_zero() {
                        row.remove(&k);
                        in_col[k].remove(&r);
                    } else {
                        in_col[k].insert(r, ());
                    }
                }
                if row.is_empty() {
                    rows[r] = None;
                }
            }
            units += 1;
            progress = true;
        }
    }
    let live: Vec<&SparseRow> = rows.iter().flatten().collect();
    if live.is_empty() {
        return (units, None);
    }
    let mut used: Vec<usize> = live.iter().flat_map(|r| r.keys().copied()).collect();
    used.sort_unstable();
    used.dedup();
    let mut residue = IntegerMatrix::zeros(live.len(), used.len());
    for (i, row) in live.iter().enumerate() {
        for (&c, x) in row.iter() {
            let j = used.binary_search(&c).expect("column recorded");
            residue.set(i, j, x.clone());
        }
    }
    (units, Some(residue))
}
