//! Dense integer matrices, Smith normal form and linear algebra over F₂.
//!
//! Entries are `i64`. Every arithmetic step is checked; an overflow aborts
//! with a panic instead of producing a wrong answer. At the documented desk
//! scale (rank ≤ 8, small generators) intermediate values stay tiny because
//! the pivot rule always picks an entry of minimal absolute value.

use num_integer::Integer;
use std::fmt;

pub type Int = i64;
pub type Vector = Vec<Int>;

const OVERFLOW: &str = "integer overflow in exact lattice arithmetic";

#[inline]
pub(crate) fn add(a: Int, b: Int) -> Int {
    a.checked_add(b).expect(OVERFLOW)
}

#[inline]
pub(crate) fn sub(a: Int, b: Int) -> Int {
    a.checked_sub(b).expect(OVERFLOW)
}

#[inline]
pub(crate) fn mul(a: Int, b: Int) -> Int {
    a.checked_mul(b).expect(OVERFLOW)
}

/// Greatest common divisor of all entries (0 for the zero vector).
pub fn content(v: &[Int]) -> Int {
    v.iter().fold(0, |g, &x| g.gcd(&x))
}

/// Divides a nonzero vector by the gcd of its entries.
pub fn primitive(v: &[Int]) -> Vector {
    let g = content(v);
    if g == 0 {
        return v.to_vec();
    }
    v.iter().map(|x| x / g).collect()
}

pub fn is_zero(v: &[Int]) -> bool {
    v.iter().all(|&x| x == 0)
}

pub fn vec_add(a: &[Int], b: &[Int]) -> Vector {
    a.iter().zip(b).map(|(x, y)| add(*x, *y)).collect()
}

pub fn vec_sub(a: &[Int], b: &[Int]) -> Vector {
    a.iter().zip(b).map(|(x, y)| sub(*x, *y)).collect()
}

pub fn vec_scale(k: Int, a: &[Int]) -> Vector {
    a.iter().map(|x| mul(k, *x)).collect()
}

pub fn dot(a: &[Int], b: &[Int]) -> Int {
    a.iter().zip(b).fold(0, |s, (x, y)| add(s, mul(*x, *y)))
}

/// Row-major integer matrix.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Matrix {
    rows: usize,
    cols: usize,
    data: Vec<Int>,
}

impl fmt::Debug for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list().entries(self.to_rows()).finish()
    }
}

impl Matrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix { rows, cols, data: vec![0; rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = 1;
        }
        m
    }

    /// Builds a matrix from its rows. Panics if the rows are ragged.
    pub fn from_rows(rows: &[Vector]) -> Self {
        let cols = rows.first().map_or(0, |r| r.len());
        Self::from_rows_with_width(rows, cols)
    }

    /// Like [`Matrix::from_rows`] but keeps the column count when there are no rows.
    pub fn from_rows_with_width(rows: &[Vector], cols: usize) -> Self {
        let mut data = Vec::with_capacity(rows.len() * cols);
        for r in rows {
            assert_eq!(r.len(), cols, "ragged matrix rows");
            data.extend_from_slice(r);
        }
        Matrix { rows: rows.len(), cols, data }
    }

    /// Builds a matrix whose columns are the given vectors, each of length `height`.
    pub fn from_columns(height: usize, columns: &[Vector]) -> Self {
        let mut m = Self::zeros(height, columns.len());
        for (j, c) in columns.iter().enumerate() {
            assert_eq!(c.len(), height, "column of wrong length");
            for (i, x) in c.iter().enumerate() {
                m[(i, j)] = *x;
            }
        }
        m
    }

    pub fn diagonal(entries: &[Int]) -> Self {
        let mut m = Self::zeros(entries.len(), entries.len());
        for (i, x) in entries.iter().enumerate() {
            m[(i, i)] = *x;
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn row(&self, i: usize) -> Vector {
        self.data[i * self.cols..(i + 1) * self.cols].to_vec()
    }

    pub fn column(&self, j: usize) -> Vector {
        (0..self.rows).map(|i| self[(i, j)]).collect()
    }

    pub fn to_rows(&self) -> Vec<Vector> {
        (0..self.rows).map(|i| self.row(i)).collect()
    }

    pub fn to_columns(&self) -> Vec<Vector> {
        (0..self.cols).map(|j| self.column(j)).collect()
    }

    pub fn transpose(&self) -> Matrix {
        let mut t = Matrix::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t[(j, i)] = self[(i, j)];
            }
        }
        t
    }

    pub fn mul(&self, other: &Matrix) -> Matrix {
        assert_eq!(self.cols, other.rows, "matrix dimension mismatch");
        let mut out = Matrix::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self[(i, k)];
                if a == 0 {
                    continue;
                }
                for j in 0..other.cols {
                    out[(i, j)] = add(out[(i, j)], mul(a, other[(k, j)]));
                }
            }
        }
        out
    }

    pub fn mul_vec(&self, v: &[Int]) -> Vector {
        assert_eq!(self.cols, v.len(), "matrix-vector dimension mismatch");
        (0..self.rows)
            .map(|i| dot(&self.data[i * self.cols..(i + 1) * self.cols], v))
            .collect()
    }

    pub fn add(&self, other: &Matrix) -> Matrix {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        let data = self.data.iter().zip(&other.data).map(|(a, b)| add(*a, *b)).collect();
        Matrix { rows: self.rows, cols: self.cols, data }
    }

    pub fn sub(&self, other: &Matrix) -> Matrix {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        let data = self.data.iter().zip(&other.data).map(|(a, b)| sub(*a, *b)).collect();
        Matrix { rows: self.rows, cols: self.cols, data }
    }

    pub fn scale(&self, k: Int) -> Matrix {
        Matrix { rows: self.rows, cols: self.cols, data: self.data.iter().map(|a| mul(k, *a)).collect() }
    }

    pub fn is_identity(&self) -> bool {
        self.is_square() && *self == Matrix::identity(self.rows)
    }

    /// Columns `range` as a new matrix.
    pub fn column_range(&self, start: usize, end: usize) -> Matrix {
        let cols: Vec<Vector> = (start..end).map(|j| self.column(j)).collect();
        Matrix::from_columns(self.rows, &cols)
    }

    /// Rows `range` as a new matrix.
    pub fn row_range(&self, start: usize, end: usize) -> Matrix {
        let rows: Vec<Vector> = (start..end).map(|i| self.row(i)).collect();
        Matrix::from_rows_with_width(&rows, self.cols)
    }

    /// Horizontal concatenation.
    pub fn hstack(&self, other: &Matrix) -> Matrix {
        assert_eq!(self.rows, other.rows);
        let mut cols = self.to_columns();
        cols.extend(other.to_columns());
        Matrix::from_columns(self.rows, &cols)
    }

    /// Determinant by fraction-free Bareiss elimination.
    pub fn det(&self) -> Int {
        assert!(self.is_square(), "determinant of a non-square matrix");
        let n = self.rows;
        if n == 0 {
            return 1;
        }
        let mut a: Vec<Vec<i128>> =
            (0..n).map(|i| (0..n).map(|j| self[(i, j)] as i128).collect()).collect();
        let mut sign = 1i128;
        let mut prev = 1i128;
        for k in 0..n {
            if a[k][k] == 0 {
                match (k + 1..n).find(|&i| a[i][k] != 0) {
                    Some(i) => {
                        a.swap(i, k);
                        sign = -sign;
                    }
                    None => return 0,
                }
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    let num = a[i][j]
                        .checked_mul(a[k][k])
                        .and_then(|x| x.checked_sub(a[i][k].checked_mul(a[k][j])?))
                        .expect(OVERFLOW);
                    a[i][j] = num / prev;
                }
                a[i][k] = 0;
            }
            prev = a[k][k];
        }
        Int::try_from(sign * a[n - 1][n - 1]).expect(OVERFLOW)
    }

    /// Rank over ℚ.
    pub fn rank(&self) -> usize {
        smith_normal_form(self).rank
    }

    /// Inverse of a unimodular matrix, or `None` if the determinant is not ±1.
    pub fn unimodular_inverse(&self) -> Option<Matrix> {
        if !self.is_square() {
            return None;
        }
        let s = smith_normal_form(self);
        if s.rank != self.rows || (0..s.rank).any(|i| s.d[(i, i)] != 1) {
            return None;
        }
        // U A V = I, so A⁻¹ = V U.
        Some(s.v.mul(&s.u))
    }
}

impl std::ops::Index<(usize, usize)> for Matrix {
    type Output = Int;
    fn index(&self, (i, j): (usize, usize)) -> &Int {
        debug_assert!(i < self.rows && j < self.cols);
        &self.data[i * self.cols + j]
    }
}

impl std::ops::IndexMut<(usize, usize)> for Matrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut Int {
        debug_assert!(i < self.rows && j < self.cols);
        &mut self.data[i * self.cols + j]
    }
}

/// Result of [`smith_normal_form`]: `u · a · v = d`, with inverses kept alongside.
#[derive(Clone, Debug)]
pub struct Smith {
    pub u: Matrix,
    pub u_inv: Matrix,
    pub d: Matrix,
    pub v: Matrix,
    pub v_inv: Matrix,
    pub rank: usize,
}

impl Smith {
    /// The nonzero invariant factors d₁ | d₂ | … .
    pub fn factors(&self) -> Vec<Int> {
        (0..self.rank).map(|i| self.d[(i, i)]).collect()
    }
}

struct Reducer {
    a: Matrix,
    u: Matrix,
    u_inv: Matrix,
    v: Matrix,
    v_inv: Matrix,
}

impl Reducer {
    fn swap_rows(&mut self, i: usize, j: usize) {
        if i == j {
            return;
        }
        for m in [&mut self.a, &mut self.u] {
            for c in 0..m.cols {
                let t = m[(i, c)];
                m[(i, c)] = m[(j, c)];
                m[(j, c)] = t;
            }
        }
        let m = &mut self.u_inv;
        for r in 0..m.rows {
            let t = m[(r, i)];
            m[(r, i)] = m[(r, j)];
            m[(r, j)] = t;
        }
    }

    fn swap_cols(&mut self, i: usize, j: usize) {
        if i == j {
            return;
        }
        for m in [&mut self.a, &mut self.v] {
            for r in 0..m.rows {
                let t = m[(r, i)];
                m[(r, i)] = m[(r, j)];
                m[(r, j)] = t;
            }
        }
        let m = &mut self.v_inv;
        for c in 0..m.cols {
            let t = m[(i, c)];
            m[(i, c)] = m[(j, c)];
            m[(j, c)] = t;
        }
    }

    /// row_i += k · row_j
    fn add_row(&mut self, i: usize, j: usize, k: Int) {
        if k == 0 {
            return;
        }
        for m in [&mut self.a, &mut self.u] {
            for c in 0..m.cols {
                m[(i, c)] = add(m[(i, c)], mul(k, m[(j, c)]));
            }
        }
        // U⁻¹ ← U⁻¹ · E⁻¹ where E⁻¹ subtracts k · row_j from row_i: col_j -= k · col_i.
        let m = &mut self.u_inv;
        for r in 0..m.rows {
            m[(r, j)] = sub(m[(r, j)], mul(k, m[(r, i)]));
        }
    }

    /// col_i += k · col_j
    fn add_col(&mut self, i: usize, j: usize, k: Int) {
        if k == 0 {
            return;
        }
        for m in [&mut self.a, &mut self.v] {
            for r in 0..m.rows {
                m[(r, i)] = add(m[(r, i)], mul(k, m[(r, j)]));
            }
        }
        let m = &mut self.v_inv;
        for c in 0..m.cols {
            m[(j, c)] = sub(m[(j, c)], mul(k, m[(i, c)]));
        }
    }

    fn negate_row(&mut self, i: usize) {
        for m in [&mut self.a, &mut self.u] {
            for c in 0..m.cols {
                m[(i, c)] = -m[(i, c)];
            }
        }
        let m = &mut self.u_inv;
        for r in 0..m.rows {
            m[(r, i)] = -m[(r, i)];
        }
    }
}

/// Smith normal form with the pivot rule "leftmost entry of minimal absolute
/// value" (ties broken by the topmost row), which makes the transforms
/// deterministic.
pub fn smith_normal_form(a: &Matrix) -> Smith {
    let (m, n) = (a.rows(), a.cols());
    let mut r = Reducer {
        a: a.clone(),
        u: Matrix::identity(m),
        u_inv: Matrix::identity(m),
        v: Matrix::identity(n),
        v_inv: Matrix::identity(n),
    };
    let mut t = 0;
    while t < m.min(n) {
        // Pick the pivot among the remaining block.
        let mut best: Option<(usize, usize)> = None;
        for j in t..n {
            for i in t..m {
                let x = r.a[(i, j)];
                if x != 0 && best.is_none_or(|(bi, bj)| x.abs() < r.a[(bi, bj)].abs()) {
                    best = Some((i, j));
                }
            }
        }
        let Some((pi, pj)) = best else { break };
        r.swap_rows(t, pi);
        r.swap_cols(t, pj);
        loop {
            let p = r.a[(t, t)];
            let mut dirty = false;
            for i in t + 1..m {
                let q = Integer::div_floor(&r.a[(i, t)], &p);
                r.add_row(i, t, -q);
                if r.a[(i, t)] != 0 {
                    dirty = true;
                }
            }
            for j in t + 1..n {
                let q = Integer::div_floor(&r.a[(t, j)], &p);
                r.add_col(j, t, -q);
                if r.a[(t, j)] != 0 {
                    dirty = true;
                }
            }
            if dirty {
                // A remainder smaller than the pivot survived; move it to the pivot spot.
                let mut best = (t, t);
                for j in t..n {
                    let x = r.a[(t, j)];
                    if x != 0 && x.abs() < r.a[best].abs() {
                        best = (t, j);
                    }
                }
                for i in t..m {
                    let x = r.a[(i, t)];
                    if x != 0 && x.abs() < r.a[best].abs() {
                        best = (i, t);
                    }
                }
                r.swap_rows(t, best.0);
                r.swap_cols(t, best.1);
                continue;
            }
            // Row and column are clear; enforce divisibility of the rest.
            let bad = (t + 1..m)
                .flat_map(|i| (t + 1..n).map(move |j| (i, j)))
                .find(|&(i, j)| r.a[(i, j)] % p != 0);
            match bad {
                Some((i, _)) => r.add_row(t, i, 1),
                None => break,
            }
        }
        if r.a[(t, t)] < 0 {
            r.negate_row(t);
        }
        t += 1;
    }
    let Reducer { a: d, u, u_inv, v, v_inv } = r;
    Smith { u, u_inv, d, v, v_inv, rank: t }
}

/// Basis (as columns) of the integer kernel {x : a·x = 0}. The basis is saturated.
pub fn kernel(a: &Matrix) -> Matrix {
    let s = smith_normal_form(a);
    s.v.column_range(s.rank, a.cols())
}

/// Basis (as columns) of the saturation of the column span of `a`.
pub fn saturated_span(a: &Matrix) -> Matrix {
    let s = smith_normal_form(a);
    s.u_inv.column_range(0, s.rank)
}

/// An integer solution of `a·x = b`, if one exists.
pub fn solve(a: &Matrix, b: &[Int]) -> Option<Vector> {
    assert_eq!(a.rows(), b.len());
    let s = smith_normal_form(a);
    let c = s.u.mul_vec(b);
    let mut y = vec![0; a.cols()];
    for (i, ci) in c.iter().enumerate() {
        if i < s.rank {
            let di = s.d[(i, i)];
            if ci % di != 0 {
                return None;
            }
            y[i] = ci / di;
        } else if *ci != 0 {
            return None;
        }
    }
    Some(s.v.mul_vec(&y))
}

/// True iff the columns of `a` form a basis of a saturated sublattice.
pub fn is_saturated_basis(a: &Matrix) -> bool {
    let s = smith_normal_form(a);
    s.rank == a.cols() && s.factors().iter().all(|&d| d == 1)
}

/// Coordinates with respect to a fixed sublattice basis; precomputes the
/// normal form once so repeated queries are cheap.
#[derive(Clone, Debug)]
pub struct CoordinateSystem {
    basis: Matrix,
    smith: Smith,
}

impl CoordinateSystem {
    pub fn new(basis: Matrix) -> Self {
        let smith = smith_normal_form(&basis);
        assert_eq!(smith.rank, basis.cols(), "coordinate basis must be independent");
        CoordinateSystem { basis, smith }
    }

    pub fn basis(&self) -> &Matrix {
        &self.basis
    }

    pub fn dim(&self) -> usize {
        self.basis.cols()
    }

    /// Integer coordinates of `x` in the basis, or `None` if `x` is outside the sublattice.
    pub fn coordinates(&self, x: &[Int]) -> Option<Vector> {
        let c = self.smith.u.mul_vec(x);
        let k = self.smith.rank;
        if c[k..].iter().any(|&v| v != 0) {
            return None;
        }
        let mut y = Vec::with_capacity(k);
        for (i, ci) in c[..k].iter().enumerate() {
            let di = self.smith.d[(i, i)];
            if ci % di != 0 {
                return None;
            }
            y.push(ci / di);
        }
        Some(self.smith.v.mul_vec(&y))
    }

    /// True iff `x` lies in the real span of the basis.
    pub fn in_span(&self, x: &[Int]) -> bool {
        let c = self.smith.u.mul_vec(x);
        c[self.smith.rank..].iter().all(|&v| v == 0)
    }

    /// Primitive integer coordinates of the ray through `x` (which must lie in the real span).
    pub fn ray_coordinates(&self, x: &[Int]) -> Option<Vector> {
        if !self.in_span(x) {
            return None;
        }
        // u x = d v⁻¹ y; scale by the lcm of the invariant factors to clear denominators.
        let c = self.smith.u.mul_vec(x);
        let k = self.smith.rank;
        let l = (0..k).fold(1, |l: Int, i| l.lcm(&self.smith.d[(i, i)]));
        let z: Vector = (0..k).map(|i| mul(c[i], l / self.smith.d[(i, i)])).collect();
        Some(primitive(&self.smith.v.mul_vec(&z)))
    }

    pub fn vector(&self, coords: &[Int]) -> Vector {
        self.basis.mul_vec(coords)
    }
}

/// Dense matrix over F₂.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct F2Matrix {
    rows: usize,
    cols: usize,
    data: Vec<bool>,
}

impl fmt::Debug for F2Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rows: Vec<Vec<u8>> = self.to_rows();
        f.debug_list().entries(rows).finish()
    }
}

impl F2Matrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        F2Matrix { rows, cols, data: vec![false; rows * cols] }
    }

    /// Reduces an integer matrix modulo 2.
    pub fn from_integer(m: &Matrix) -> Self {
        let mut f = Self::zeros(m.rows(), m.cols());
        for i in 0..m.rows() {
            for j in 0..m.cols() {
                f.set(i, j, m[(i, j)].rem_euclid(2) == 1);
            }
        }
        f
    }

    pub fn from_rows(rows: &[Vec<u8>], cols: usize) -> Self {
        let mut f = Self::zeros(rows.len(), cols);
        for (i, r) in rows.iter().enumerate() {
            assert_eq!(r.len(), cols, "ragged F2 rows");
            for (j, x) in r.iter().enumerate() {
                f.set(i, j, x % 2 == 1);
            }
        }
        f
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> bool {
        self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, x: bool) {
        self.data[i * self.cols + j] = x;
    }

    pub fn to_rows(&self) -> Vec<Vec<u8>> {
        (0..self.rows).map(|i| (0..self.cols).map(|j| self.get(i, j) as u8).collect()).collect()
    }

    pub fn transpose(&self) -> F2Matrix {
        let mut t = F2Matrix::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.set(j, i, self.get(i, j));
            }
        }
        t
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|x| !x)
    }

    /// Reduced row echelon form; returns the pivot columns.
    fn rref(&mut self) -> Vec<usize> {
        let mut pivots = Vec::new();
        let mut row = 0;
        for col in 0..self.cols {
            let Some(p) = (row..self.rows).find(|&i| self.get(i, col)) else { continue };
            for c in 0..self.cols {
                let t = self.get(row, c);
                self.set(row, c, self.get(p, c));
                self.set(p, c, t);
            }
            for i in 0..self.rows {
                if i != row && self.get(i, col) {
                    for c in 0..self.cols {
                        let x = self.get(i, c) ^ self.get(row, c);
                        self.set(i, c, x);
                    }
                }
            }
            pivots.push(col);
            row += 1;
            if row == self.rows {
                break;
            }
        }
        pivots
    }

    pub fn rank(&self) -> usize {
        self.clone().rref().len()
    }

    /// Some solution of `self · x = b`, or `None` when the system is inconsistent.
    pub fn solve(&self, b: &[bool]) -> Option<Vec<bool>> {
        assert_eq!(b.len(), self.rows);
        let mut aug = F2Matrix::zeros(self.rows, self.cols + 1);
        for (i, &bi) in b.iter().enumerate() {
            for j in 0..self.cols {
                aug.set(i, j, self.get(i, j));
            }
            aug.set(i, self.cols, bi);
        }
        let pivots = aug.rref();
        if pivots.last() == Some(&self.cols) {
            return None;
        }
        let mut x = vec![false; self.cols];
        for (r, &c) in pivots.iter().enumerate() {
            x[c] = aug.get(r, self.cols);
        }
        Some(x)
    }
}

/// A unimodular integer matrix whose first columns reduce modulo 2 to the
/// given F₂-independent columns. Built by lifting the elementary operations
/// of F₂ elimination.
pub(crate) fn unimodular_lift(q: usize, columns: &[Vec<bool>]) -> Matrix {
    // Row-reduce the q × r matrix of columns to [I; 0] over F₂, replaying the
    // inverse operations on an integer identity matrix.
    let r = columns.len();
    let mut f = F2Matrix::zeros(q, r);
    for (j, c) in columns.iter().enumerate() {
        for (i, x) in c.iter().enumerate() {
            f.set(i, j, *x);
        }
    }
    let mut lift = Matrix::identity(q);
    for col in 0..r {
        let p = (col..q).find(|&i| f.get(i, col)).expect("columns must be independent mod 2");
        if p != col {
            for c in 0..r {
                let t = f.get(p, c);
                f.set(p, c, f.get(col, c));
                f.set(col, c, t);
            }
            // F ← S F, so lift ← lift · S⁻¹ = lift · S: swap columns.
            for i in 0..q {
                let t = lift[(i, p)];
                lift[(i, p)] = lift[(i, col)];
                lift[(i, col)] = t;
            }
        }
        for i in 0..q {
            if i != col && f.get(i, col) {
                for c in 0..r {
                    let x = f.get(i, c) ^ f.get(col, c);
                    f.set(i, c, x);
                }
                // F ← E F with E: row_i += row_col; lift ← lift · E⁻¹: col_col += col_i.
                for k in 0..q {
                    lift[(k, col)] = add(lift[(k, col)], lift[(k, i)]);
                }
            }
        }
    }
    lift
}
