//! Dense arbitrary-precision integer matrices and Smith normal form.
//!
//! Everything here is exact: unimodular row/column operations over Z,
//! fraction-free determinants, no floating point anywhere.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

/// Arbitrary-precision integer used throughout the crate.
pub type Int = BigInt;

/// Row-major dense matrix over Z. Empty matrices (0 rows or 0 columns) are
/// legal and represent maps to or from the zero module.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct IntMatrix {
    rows: usize,
    cols: usize,
    entries: Vec<Int>,
}

impl std::fmt::Debug for IntMatrix {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "IntMatrix({}x{})[", self.rows, self.cols)?;
        for i in 0..self.rows {
            if i > 0 {
                write!(f, "; ")?;
            }
            for j in 0..self.cols {
                if j > 0 {
                    write!(f, ", ")?;
                }
                write!(f, "{}", self.at(i, j))?;
            }
        }
        write!(f, "]")
    }
}

impl IntMatrix {
    pub fn new(rows: usize, cols: usize, entries: Vec<Int>) -> Result<Self> {
        if entries.len() != rows * cols {
            return Err(Error::Shape(format!(
                "{}x{} matrix needs {} entries, got {}",
                rows,
                cols,
                rows * cols,
                entries.len()
            )));
        }
        Ok(IntMatrix { rows, cols, entries })
    }

    pub fn zero(rows: usize, cols: usize) -> Self {
        IntMatrix {
            rows,
            cols,
            entries: vec![Int::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = IntMatrix::zero(n, n);
        for i in 0..n {
            m.set(i, i, Int::one());
        }
        m
    }

    pub fn diagonal(diag: &[Int]) -> Self {
        let n = diag.len();
        let mut m = IntMatrix::zero(n, n);
        for (i, d) in diag.iter().enumerate() {
            m.set(i, i, d.clone());
        }
        m
    }

    /// Convenience constructor from machine-integer rows; used heavily in tests.
    pub fn from_i64_rows(rows: &[&[i64]]) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, |row| row.len());
        let mut entries = Vec::with_capacity(r * c);
        for row in rows {
            assert_eq!(row.len(), c, "ragged rows");
            entries.extend(row.iter().map(|&x| Int::from(x)));
        }
        IntMatrix { rows: r, cols: c, entries }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn at(&self, i: usize, j: usize) -> &Int {
        &self.entries[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: Int) {
        self.entries[i * self.cols + j] = v;
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(Zero::is_zero)
    }

    pub fn is_zero_mod(&self, q: &Int) -> bool {
        if q.is_zero() {
            return self.is_zero();
        }
        self.entries.iter().all(|e| (e % q).is_zero())
    }

    /// Entries reduced to canonical representatives 0..q-1.
    pub fn reduced_mod(&self, q: &Int) -> Self {
        assert!(q > &Int::zero());
        let entries = self.entries.iter().map(|e| e.mod_floor(q)).collect();
        IntMatrix {
            rows: self.rows,
            cols: self.cols,
            entries,
        }
    }

    pub fn transpose(&self) -> Self {
        let mut m = IntMatrix::zero(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                m.set(j, i, self.at(i, j).clone());
            }
        }
        m
    }

    pub fn mul(&self, other: &IntMatrix) -> IntMatrix {
        assert_eq!(
            self.cols, other.rows,
            "dimension mismatch in matrix product"
        );
        let mut out = IntMatrix::zero(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.at(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = other.at(k, j);
                    if b.is_zero() {
                        continue;
                    }
                    let cur = out.at(i, j) + a * b;
                    out.set(i, j, cur);
                }
            }
        }
        out
    }

    /// Horizontal concatenation [self | other].
    pub fn hstack(&self, other: &IntMatrix) -> IntMatrix {
        assert_eq!(self.rows, other.rows, "hstack row mismatch");
        let mut out = IntMatrix::zero(self.rows, self.cols + other.cols);
        for i in 0..self.rows {
            for j in 0..self.cols {
                out.set(i, j, self.at(i, j).clone());
            }
            for j in 0..other.cols {
                out.set(i, self.cols + j, other.at(i, j).clone());
            }
        }
        out
    }

    /// Block-diagonal sum.
    pub fn block_diag(&self, other: &IntMatrix) -> IntMatrix {
        let mut out = IntMatrix::zero(self.rows + other.rows, self.cols + other.cols);
        for i in 0..self.rows {
            for j in 0..self.cols {
                out.set(i, j, self.at(i, j).clone());
            }
        }
        for i in 0..other.rows {
            for j in 0..other.cols {
                out.set(self.rows + i, self.cols + j, other.at(i, j).clone());
            }
        }
        out
    }

    /// Assemble from a 2x2 block grid; row/column counts are taken from the blocks.
    pub fn from_blocks(a: &IntMatrix, b: &IntMatrix, c: &IntMatrix, d: &IntMatrix) -> IntMatrix {
        assert_eq!(a.rows, b.rows);
        assert_eq!(c.rows, d.rows);
        assert_eq!(a.cols, c.cols);
        assert_eq!(b.cols, d.cols);
        let mut out = IntMatrix::zero(a.rows + c.rows, a.cols + b.cols);
        let put = |out: &mut IntMatrix, m: &IntMatrix, ro: usize, co: usize| {
            for i in 0..m.rows {
                for j in 0..m.cols {
                    out.set(ro + i, co + j, m.at(i, j).clone());
                }
            }
        };
        put(&mut out, a, 0, 0);
        put(&mut out, b, 0, a.cols);
        put(&mut out, c, a.rows, 0);
        put(&mut out, d, a.rows, a.cols);
        out
    }

    pub fn scaled(&self, c: &Int) -> IntMatrix {
        let entries = self.entries.iter().map(|e| e * c).collect();
        IntMatrix {
            rows: self.rows,
            cols: self.cols,
            entries,
        }
    }

    pub fn add(&self, other: &IntMatrix) -> IntMatrix {
        assert_eq!(self.rows, other.rows);
        assert_eq!(self.cols, other.cols);
        let entries = self
            .entries
            .iter()
            .zip(&other.entries)
            .map(|(a, b)| a + b)
            .collect();
        IntMatrix {
            rows: self.rows,
            cols: self.cols,
            entries,
        }
    }

    /// Keep only the listed rows, in order.
    pub fn select_rows(&self, keep: &[usize]) -> IntMatrix {
        let mut out = IntMatrix::zero(keep.len(), self.cols);
        for (ni, &oi) in keep.iter().enumerate() {
            for j in 0..self.cols {
                out.set(ni, j, self.at(oi, j).clone());
            }
        }
        out
    }

    /// Keep only the listed columns, in order.
    pub fn select_cols(&self, keep: &[usize]) -> IntMatrix {
        let mut out = IntMatrix::zero(self.rows, keep.len());
        for i in 0..self.rows {
            for (nj, &oj) in keep.iter().enumerate() {
                out.set(i, nj, self.at(i, oj).clone());
            }
        }
        out
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.entries.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    fn swap_cols(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for i in 0..self.rows {
            self.entries.swap(i * self.cols + a, i * self.cols + b);
        }
    }

    /// row[target] += c * row[source]
    fn add_row_multiple(&mut self, target: usize, source: usize, c: &Int) {
        if c.is_zero() {
            return;
        }
        for j in 0..self.cols {
            let v = self.at(target, j) + c * self.at(source, j);
            self.set(target, j, v);
        }
    }

    /// col[target] += c * col[source]
    fn add_col_multiple(&mut self, target: usize, source: usize, c: &Int) {
        if c.is_zero() {
            return;
        }
        for i in 0..self.rows {
            let v = self.at(i, target) + c * self.at(i, source);
            self.set(i, target, v);
        }
    }

    fn negate_row(&mut self, i: usize) {
        for j in 0..self.cols {
            let v = -self.at(i, j);
            self.set(i, j, v);
        }
    }

    fn negate_col(&mut self, j: usize) {
        for i in 0..self.rows {
            let v = -self.at(i, j);
            self.set(i, j, v);
        }
    }

    /// Exact determinant by fraction-free (Bareiss) elimination.
    pub fn determinant(&self) -> Int {
        assert_eq!(self.rows, self.cols, "determinant of non-square matrix");
        let n = self.rows;
        if n == 0 {
            return Int::one();
        }
        let mut m = self.clone();
        let mut sign = Int::one();
        let mut prev = Int::one();
        for k in 0..n - 1 {
            if m.at(k, k).is_zero() {
                let swap = (k + 1..n).find(|&i| !m.at(i, k).is_zero());
                match swap {
                    Some(i) => {
                        m.swap_rows(k, i);
                        sign = -sign;
                    }
                    None => return Int::zero(),
                }
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    let num = m.at(i, j) * m.at(k, k) - m.at(i, k) * m.at(k, j);
                    let (q, r) = num.div_rem(&prev);
                    debug_assert!(r.is_zero(), "Bareiss division must be exact");
                    m.set(i, j, q);
                }
                m.set(i, k, Int::zero());
            }
            prev = m.at(k, k).clone();
        }
        sign * m.at(n - 1, n - 1).clone()
    }

    /// Smith normal form: U·A·V = D with U, V unimodular and D diagonal with
    /// d_1 | d_2 | ... and nonzero entries preceding zeros.
    ///
    /// Pivoting picks the nonzero entry of minimal absolute value, breaking
    /// ties by smallest row index then smallest column index, so the output
    /// is deterministic.
    pub fn smith_normal_form(&self) -> SnfResult {
        let core = self.snf_core();
        SnfResult {
            u: core.u,
            d: core.d,
            v: core.v,
        }
    }

    pub(crate) fn snf_core(&self) -> SnfCore {
        let m = self.rows;
        let n = self.cols;
        let mut d = self.clone();
        let mut u = IntMatrix::identity(m);
        let mut u_inv = IntMatrix::identity(m);
        let mut v = IntMatrix::identity(n);
        let mut v_inv = IntMatrix::identity(n);

        let mut t = 0;
        while t < m.min(n) {
            let Some((pi, pj)) = min_abs_pivot(&d, t) else {
                break;
            };
            if pi != t {
                d.swap_rows(t, pi);
                u.swap_rows(t, pi);
                u_inv.swap_cols(t, pi);
            }
            if pj != t {
                d.swap_cols(t, pj);
                v.swap_cols(t, pj);
                v_inv.swap_rows(t, pj);
            }
            'reduce: loop {
                // clear the pivot column
                for i in t + 1..m {
                    if d.at(i, t).is_zero() {
                        continue;
                    }
                    let q = rounded_div(d.at(i, t), d.at(t, t));
                    if !q.is_zero() {
                        let negq = -&q;
                        d.add_row_multiple(i, t, &negq);
                        u.add_row_multiple(i, t, &negq);
                        u_inv.add_col_multiple(t, i, &q);
                    }
                    if !d.at(i, t).is_zero() {
                        // remainder has smaller absolute value: promote it
                        d.swap_rows(t, i);
                        u.swap_rows(t, i);
                        u_inv.swap_cols(t, i);
                        continue 'reduce;
                    }
                }
                // clear the pivot row
                for j in t + 1..n {
                    if d.at(t, j).is_zero() {
                        continue;
                    }
                    let q = rounded_div(d.at(t, j), d.at(t, t));
                    if !q.is_zero() {
                        let negq = -&q;
                        d.add_col_multiple(j, t, &negq);
                        v.add_col_multiple(j, t, &negq);
                        v_inv.add_row_multiple(t, j, &q);
                    }
                    if !d.at(t, j).is_zero() {
                        d.swap_cols(t, j);
                        v.swap_cols(t, j);
                        v_inv.swap_rows(t, j);
                        continue 'reduce;
                    }
                }
                // the pivot must divide every entry of the trailing block
                let mut offender = None;
                'scan: for i in t + 1..m {
                    for j in t + 1..n {
                        if !(d.at(i, j) % d.at(t, t)).is_zero() {
                            offender = Some(i);
                            break 'scan;
                        }
                    }
                }
                if let Some(i) = offender {
                    let one = Int::one();
                    let neg_one = -Int::one();
                    d.add_row_multiple(t, i, &one);
                    u.add_row_multiple(t, i, &one);
                    u_inv.add_col_multiple(i, t, &neg_one);
                    continue 'reduce;
                }
                break;
            }
            if d.at(t, t).is_negative() {
                d.negate_row(t);
                u.negate_row(t);
                u_inv.negate_col(t);
            }
            t += 1;
        }

        debug_assert!(u.mul(self).mul(&v) == d);
        debug_assert!(u.mul(&u_inv) == IntMatrix::identity(m));
        debug_assert!(v.mul(&v_inv) == IntMatrix::identity(n));
        SnfCore { u, d, v, u_inv, v_inv }
    }

    /// Columns form a basis of the integral kernel {x : A·x = 0}.
    pub fn kernel_basis(&self) -> IntMatrix {
        let core = self.snf_core();
        let rank = core.rank();
        let keep: Vec<usize> = (rank..self.cols).collect();
        core.v.select_cols(&keep)
    }
}

fn min_abs_pivot(d: &IntMatrix, t: usize) -> Option<(usize, usize)> {
    let mut best: Option<(usize, usize)> = None;
    let mut best_abs = Int::zero();
    for i in t..d.rows() {
        for j in t..d.cols() {
            let e = d.at(i, j);
            if e.is_zero() {
                continue;
            }
            let a = e.abs();
            if best.is_none() || a < best_abs {
                best = Some((i, j));
                best_abs = a;
            }
        }
    }
    best
}

/// Quotient closest to the exact ratio; ties resolve toward truncation, so
/// results are deterministic.
fn rounded_div(a: &Int, b: &Int) -> Int {
    debug_assert!(!b.is_zero());
    let (q, _) = a.div_rem(b);
    let mut best = q.clone();
    let mut best_rem = (a - &q * b).abs();
    for cand in [&q - 1, &q + 1] {
        let rem = (a - &cand * b).abs();
        if rem < best_rem {
            best = cand;
            best_rem = rem;
        }
    }
    best
}

/// U·A·V = D for the input A; U and V are square with determinant ±1.
#[derive(Clone, Debug)]
pub struct SnfResult {
    pub u: IntMatrix,
    pub d: IntMatrix,
    pub v: IntMatrix,
}

impl SnfResult {
    pub fn rank(&self) -> usize {
        diag_rank(&self.d)
    }

    /// Nonzero diagonal entries, in divisibility order.
    pub fn invariant_factors(&self) -> Vec<Int> {
        let r = self.rank();
        (0..r).map(|i| self.d.at(i, i).clone()).collect()
    }
}

pub(crate) struct SnfCore {
    pub u: IntMatrix,
    pub d: IntMatrix,
    pub v: IntMatrix,
    #[allow(dead_code)]
    pub u_inv: IntMatrix,
    pub v_inv: IntMatrix,
}

impl SnfCore {
    pub fn rank(&self) -> usize {
        diag_rank(&self.d)
    }
}

fn diag_rank(d: &IntMatrix) -> usize {
    let mut r = 0;
    while r < d.rows().min(d.cols()) && !d.at(r, r).is_zero() {
        r += 1;
    }
    r
}

#[cfg(test)]
mod tests {
    use super::*;

    fn check_snf(a: &IntMatrix) {
        let snf = a.smith_normal_form();
        assert_eq!(snf.u.mul(a).mul(&snf.v), snf.d, "U·A·V != D for {a:?}");
        assert_eq!(snf.u.determinant().abs(), Int::one());
        assert_eq!(snf.v.determinant().abs(), Int::one());
        let k = snf.d.rows().min(snf.d.cols());
        for i in 0..snf.d.rows() {
            for j in 0..snf.d.cols() {
                if i != j {
                    assert!(snf.d.at(i, j).is_zero(), "off-diagonal junk");
                }
            }
        }
        let mut seen_zero = false;
        for i in 0..k {
            let e = snf.d.at(i, i);
            assert!(!e.is_negative());
            if e.is_zero() {
                seen_zero = true;
            } else {
                assert!(!seen_zero, "nonzero after zero on diagonal");
                if i + 1 < k && !snf.d.at(i + 1, i + 1).is_zero() {
                    assert!((snf.d.at(i + 1, i + 1) % e).is_zero(), "divisibility chain");
                }
            }
        }
    }

    #[test]
    fn snf_identity_is_identity() {
        let a = IntMatrix::identity(2);
        let snf = a.smith_normal_form();
        assert_eq!(snf.d, IntMatrix::identity(2));
        assert_eq!(snf.u, IntMatrix::identity(2));
        assert_eq!(snf.v, IntMatrix::identity(2));
    }

    #[test]
    fn snf_two_by_two() {
        // d1 = gcd of entries = 2, d1·d2 = |det| = 8
        let a = IntMatrix::from_i64_rows(&[&[2, 4], &[6, 8]]);
        let snf = a.smith_normal_form();
        assert_eq!(
            snf.invariant_factors(),
            vec![Int::from(2), Int::from(4)]
        );
        check_snf(&a);
    }

    #[test]
    fn snf_zero_matrix() {
        let a = IntMatrix::zero(2, 3);
        let snf = a.smith_normal_form();
        assert!(snf.d.is_zero());
        assert_eq!(snf.rank(), 0);
        check_snf(&a);
    }

    #[test]
    fn snf_empty_matrices() {
        for (r, c) in [(0, 0), (0, 3), (3, 0)] {
            let a = IntMatrix::zero(r, c);
            let snf = a.smith_normal_form();
            assert_eq!(snf.d.rows(), r);
            assert_eq!(snf.d.cols(), c);
            assert_eq!(snf.u, IntMatrix::identity(r));
            assert_eq!(snf.v, IntMatrix::identity(c));
        }
    }

    #[test]
    fn snf_handles_negative_entries_and_divisibility() {
        let a = IntMatrix::from_i64_rows(&[&[-6, 10, 2], &[4, -8, 9], &[0, 7, -3]]);
        check_snf(&a);
    }

    #[test]
    fn snf_is_deterministic() {
        let a = IntMatrix::from_i64_rows(&[&[3, -1, 4], &[1, 5, -9], &[2, 6, 5]]);
        let s1 = a.smith_normal_form();
        let s2 = a.smith_normal_form();
        assert_eq!(s1.u, s2.u);
        assert_eq!(s1.d, s2.d);
        assert_eq!(s1.v, s2.v);
    }

    #[test]
    fn kernel_basis_spans_kernel() {
        // rank 1, kernel rank 2
        let a = IntMatrix::from_i64_rows(&[&[1, 2, 3], &[2, 4, 6]]);
        let k = a.kernel_basis();
        assert_eq!(k.cols(), 2);
        assert!(a.mul(&k).is_zero());
    }

    #[test]
    fn determinant_matches_cofactor_values() {
        let a = IntMatrix::from_i64_rows(&[&[2, 4], &[6, 8]]);
        assert_eq!(a.determinant(), Int::from(-8));
        let b = IntMatrix::from_i64_rows(&[&[1, 2, 3], &[4, 5, 6], &[7, 8, 10]]);
        assert_eq!(b.determinant(), Int::from(-3));
        let singular = IntMatrix::from_i64_rows(&[&[1, 2], &[2, 4]]);
        assert_eq!(singular.determinant(), Int::zero());
        assert_eq!(IntMatrix::identity(0).determinant(), Int::one());
    }

    #[test]
    fn rounded_div_minimizes_remainder() {
        let cases: [(i64, i64, i64); 6] = [
            (7, 2, 3),
            (-7, 2, -3),
            (7, -2, -3),
            (5, 2, 2),
            (9, 3, 3),
            (-9, 4, -2),
        ];
        for (a, b, q) in cases {
            assert_eq!(
                rounded_div(&Int::from(a), &Int::from(b)),
                Int::from(q),
                "{a}/{b}"
            );
        }
    }
}
