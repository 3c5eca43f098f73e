//! Dense matrices over a [`Field`].
//!
//! Storage is row-major; no kernel here looks at sparsity. Every operation
//! returns a fresh matrix.
//!
//! Text format, used for every matrix the CLI reads or writes:
//!
//! ```text
//! rows cols q
//! a00 a01 ...
//! a10 a11 ...
//! ```

use std::fmt::Write as _;

use crate::error::{Error, Result};
use crate::field::{Field, Scalar};

#[derive(Clone, PartialEq, Eq)]
pub struct Matrix {
    rows: usize,
    cols: usize,
    data: Vec<Scalar>,
    field: Field,
}

impl std::fmt::Debug for Matrix {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        writeln!(f, "Matrix {}x{} over {:?}", self.rows, self.cols, self.field)?;
        for r in 0..self.rows {
            let row: Vec<u32> = self.row(r).iter().map(|s| s.value()).collect();
            writeln!(f, "  {row:?}")?;
        }
        Ok(())
    }
}

impl Matrix {
    pub fn zeros(rows: usize, cols: usize, field: &Field) -> Self {
        Matrix { rows, cols, data: vec![Scalar::ZERO; rows * cols], field: field.clone() }
    }

    pub fn identity(n: usize, field: &Field) -> Self {
        let mut m = Matrix::zeros(n, n, field);
        for i in 0..n {
            m.data[i * n + i] = Scalar::ONE;
        }
        m
    }

    /// Builds a matrix from raw row-major scalars, checking that every entry
    /// belongs to the field.
    pub fn from_vec(rows: usize, cols: usize, data: Vec<Scalar>, field: &Field) -> Result<Self> {
        if data.len() != rows * cols {
            return Err(Error::DimensionMismatch(format!(
                "{} entries for a {rows}x{cols} matrix",
                data.len()
            )));
        }
        if let Some(bad) = data.iter().find(|s| s.value() >= field.order()) {
            return Err(Error::InvalidScalar { value: bad.value(), order: field.order() });
        }
        Ok(Matrix { rows, cols, data, field: field.clone() })
    }

    /// Builds a matrix from integer rows, checking shape and range.
    pub fn from_rows<R: AsRef<[u32]>>(rows: &[R], field: &Field) -> Result<Self> {
        let cols = rows.first().map_or(0, |r| r.as_ref().len());
        let mut data = Vec::with_capacity(rows.len() * cols);
        for row in rows {
            let row = row.as_ref();
            if row.len() != cols {
                return Err(Error::DimensionMismatch("ragged rows".into()));
            }
            for &v in row {
                data.push(field.elem(v)?);
            }
        }
        Ok(Matrix { rows: rows.len(), cols, data, field: field.clone() })
    }

    /// Column vector.
    pub fn column(values: &[Scalar], field: &Field) -> Result<Self> {
        Matrix::from_vec(values.len(), 1, values.to_vec(), field)
    }

    /// Diagonal matrix.
    pub fn diagonal(values: &[Scalar], field: &Field) -> Self {
        let n = values.len();
        let mut m = Matrix::zeros(n, n, field);
        for (i, &v) in values.iter().enumerate() {
            m.data[i * n + i] = v;
        }
        m
    }

    #[inline]
    pub fn rows(&self) -> usize {
        self.rows
    }

    #[inline]
    pub fn cols(&self) -> usize {
        self.cols
    }

    #[inline]
    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    #[inline]
    pub fn get(&self, r: usize, c: usize) -> Scalar {
        assert!(r < self.rows && c < self.cols, "({r},{c}) outside {}x{}", self.rows, self.cols);
        self.data[r * self.cols + c]
    }

    /// Panics if the value is not a field element or the index is out of range.
    #[inline]
    pub fn set(&mut self, r: usize, c: usize, v: Scalar) {
        assert!(r < self.rows && c < self.cols, "({r},{c}) outside {}x{}", self.rows, self.cols);
        assert!(v.value() < self.field.order());
        self.data[r * self.cols + c] = v;
    }

    #[inline]
    pub fn row(&self, r: usize) -> &[Scalar] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn col(&self, c: usize) -> Vec<Scalar> {
        (0..self.rows).map(|r| self.get(r, c)).collect()
    }

    pub fn as_slice(&self) -> &[Scalar] {
        &self.data
    }

    pub fn to_u32_rows(&self) -> Vec<Vec<u32>> {
        (0..self.rows).map(|r| self.row(r).iter().map(|s| s.value()).collect()).collect()
    }

    pub fn count_nonzeros(&self) -> usize {
        self.data.iter().filter(|s| !s.is_zero()).count()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|s| s.is_zero())
    }

    pub fn is_identity(&self) -> bool {
        self.is_square()
            && (0..self.rows).all(|r| {
                self.row(r).iter().enumerate().all(|(c, &v)| v == if r == c { Scalar::ONE } else { Scalar::ZERO })
            })
    }

    pub fn is_symmetric(&self) -> bool {
        self.is_square() && (0..self.rows).all(|r| (r + 1..self.cols).all(|c| self.get(r, c) == self.get(c, r)))
    }

    pub fn transpose(&self) -> Matrix {
        let mut t = Matrix::zeros(self.cols, self.rows, &self.field);
        for r in 0..self.rows {
            for c in 0..self.cols {
                t.data[c * self.rows + r] = self.data[r * self.cols + c];
            }
        }
        t
    }

    pub fn matmul(&self, other: &Matrix) -> Result<Matrix> {
        if self.field != other.field {
            return Err(Error::FieldMismatch);
        }
        if self.cols != other.rows {
            return Err(Error::DimensionMismatch(format!(
                "{}x{} times {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let f = &self.field;
        let mut out = Matrix::zeros(self.rows, other.cols, f);
        for r in 0..self.rows {
            let out_row = &mut out.data[r * other.cols..(r + 1) * other.cols];
            for (k, &a) in self.row(r).iter().enumerate() {
                if a.is_zero() {
                    continue;
                }
                for (o, &b) in out_row.iter_mut().zip(other.row(k)) {
                    *o = f.mul_add(*o, a, b);
                }
            }
        }
        Ok(out)
    }

    /// Matrix-vector product.
    pub fn mul_vec(&self, v: &[Scalar]) -> Result<Vec<Scalar>> {
        if v.len() != self.cols {
            return Err(Error::DimensionMismatch(format!(
                "{}x{} times vector of length {}",
                self.rows,
                self.cols,
                v.len()
            )));
        }
        let f = &self.field;
        Ok((0..self.rows).map(|r| dot(f, self.row(r), v)).collect())
    }

    pub fn add(&self, other: &Matrix) -> Result<Matrix> {
        if self.field != other.field {
            return Err(Error::FieldMismatch);
        }
        if (self.rows, self.cols) != (other.rows, other.cols) {
            return Err(Error::DimensionMismatch("matrix sum".into()));
        }
        let f = &self.field;
        let data = self.data.iter().zip(&other.data).map(|(&a, &b)| f.add(a, b)).collect();
        Ok(Matrix { rows: self.rows, cols: self.cols, data, field: f.clone() })
    }

    pub fn scale(&self, c: Scalar) -> Matrix {
        let f = &self.field;
        let data = self.data.iter().map(|&a| f.mul(a, c)).collect();
        Matrix { rows: self.rows, cols: self.cols, data, field: f.clone() }
    }

    /// Rows and columns picked in the given order.
    pub fn submatrix(&self, row_ids: &[usize], col_ids: &[usize]) -> Result<Matrix> {
        check_indices(row_ids, self.rows)?;
        check_indices(col_ids, self.cols)?;
        let mut data = Vec::with_capacity(row_ids.len() * col_ids.len());
        for &r in row_ids {
            let row = self.row(r);
            data.extend(col_ids.iter().map(|&c| row[c]));
        }
        Ok(Matrix { rows: row_ids.len(), cols: col_ids.len(), data, field: self.field.clone() })
    }

    pub fn select_rows(&self, row_ids: &[usize]) -> Result<Matrix> {
        let cols: Vec<usize> = (0..self.cols).collect();
        self.submatrix(row_ids, &cols)
    }

    pub fn select_cols(&self, col_ids: &[usize]) -> Result<Matrix> {
        let rows: Vec<usize> = (0..self.rows).collect();
        self.submatrix(&rows, col_ids)
    }

    /// `[self | other]`.
    pub fn hstack(&self, other: &Matrix) -> Result<Matrix> {
        if self.field != other.field {
            return Err(Error::FieldMismatch);
        }
        if self.rows != other.rows {
            return Err(Error::DimensionMismatch("hstack row counts differ".into()));
        }
        let cols = self.cols + other.cols;
        let mut data = Vec::with_capacity(self.rows * cols);
        for r in 0..self.rows {
            data.extend_from_slice(self.row(r));
            data.extend_from_slice(other.row(r));
        }
        Ok(Matrix { rows: self.rows, cols, data, field: self.field.clone() })
    }

    /// `[self; other]`.
    pub fn vstack(&self, other: &Matrix) -> Result<Matrix> {
        if self.field != other.field {
            return Err(Error::FieldMismatch);
        }
        if self.cols != other.cols {
            return Err(Error::DimensionMismatch("vstack column counts differ".into()));
        }
        let mut data = self.data.clone();
        data.extend_from_slice(&other.data);
        Ok(Matrix { rows: self.rows + other.rows, cols: self.cols, data, field: self.field.clone() })
    }

    /// Rank by Gaussian elimination, taking the first nonzero entry of each
    /// column as pivot.
    pub fn rank(&self) -> usize {
        let mut work = self.clone();
        work.row_reduce(self.cols)
    }

    pub fn invert(&self) -> Result<Matrix> {
        if !self.is_square() {
            return Err(Error::DimensionMismatch(format!("cannot invert a {}x{} matrix", self.rows, self.cols)));
        }
        let n = self.rows;
        let mut aug = self.hstack(&Matrix::identity(n, &self.field))?;
        if aug.row_reduce(n) < n {
            return Err(Error::Singular);
        }
        let cols: Vec<usize> = (n..2 * n).collect();
        aug.select_cols(&cols)
    }

    /// Solves `self * x = b` for square invertible `self`.
    pub fn solve(&self, b: &[Scalar]) -> Result<Vec<Scalar>> {
        self.invert()?.mul_vec(b)
    }

    /// Reduced row echelon form over the first `pivot_cols` columns, in place.
    /// Returns the number of pivots found.
    fn row_reduce(&mut self, pivot_cols: usize) -> usize {
        let f = self.field.clone();
        let cols = self.cols;
        let mut pivot_row = 0;
        for c in 0..pivot_cols {
            if pivot_row == self.rows {
                break;
            }
            let Some(p) = (pivot_row..self.rows).find(|&r| !self.data[r * cols + c].is_zero()) else {
                continue;
            };
            if p != pivot_row {
                for j in 0..cols {
                    self.data.swap(p * cols + j, pivot_row * cols + j);
                }
            }
            let inv = f.inv(self.data[pivot_row * cols + c]).expect("pivot is nonzero");
            for j in 0..cols {
                let v = &mut self.data[pivot_row * cols + j];
                *v = f.mul(*v, inv);
            }
            let (before, rest) = self.data.split_at_mut(pivot_row * cols);
            let (pivot, after) = rest.split_at_mut(cols);
            for other in before.chunks_exact_mut(cols).chain(after.chunks_exact_mut(cols)) {
                let factor = other[c];
                if factor.is_zero() {
                    continue;
                }
                let factor = f.neg(factor);
                for (o, &pv) in other.iter_mut().zip(pivot.iter()) {
                    *o = f.mul_add(*o, factor, pv);
                }
            }
            pivot_row += 1;
        }
        pivot_row
    }

    /// Serializes into the `rows cols q` text format.
    pub fn to_text(&self) -> String {
        let mut s = String::new();
        writeln!(s, "{} {} {}", self.rows, self.cols, self.field.order()).unwrap();
        for r in 0..self.rows {
            let line: Vec<String> = self.row(r).iter().map(|v| v.value().to_string()).collect();
            writeln!(s, "{}", line.join(" ")).unwrap();
        }
        s
    }

    /// Parses the text format. The field is taken from `q` (a prime, or 256
    /// for GF(2^8) with the default polynomial).
    pub fn from_text(text: &str) -> Result<Matrix> {
        let mut lines = text.lines().filter(|l| !l.trim().is_empty());
        let header = lines.next().ok_or_else(|| Error::Parse("empty matrix file".into()))?;
        let dims: Vec<u64> = parse_numbers(header)?;
        let [rows, cols, q] = dims[..] else {
            return Err(Error::Parse(format!("bad header {header:?}")));
        };
        let field = Field::from_order(q.try_into().map_err(|_| Error::Parse(format!("field order {q}")))?)?;
        let (rows, cols) = (rows as usize, cols as usize);
        let mut data = Vec::with_capacity(rows * cols);
        for r in 0..rows {
            let line = lines.next().ok_or_else(|| Error::Parse(format!("missing row {r}")))?;
            let vals = parse_numbers(line)?;
            if vals.len() != cols {
                return Err(Error::Parse(format!("row {r} has {} entries, expected {cols}", vals.len())));
            }
            for v in vals {
                data.push(field.elem(u32::try_from(v).map_err(|_| Error::Parse(format!("entry {v}")))?)?);
            }
        }
        if lines.next().is_some() {
            return Err(Error::Parse("trailing rows".into()));
        }
        Matrix::from_vec(rows, cols, data, &field)
    }
}

fn parse_numbers(line: &str) -> Result<Vec<u64>> {
    line.split_whitespace()
        .map(|t| t.parse::<u64>().map_err(|e| Error::Parse(format!("{t:?}: {e}"))))
        .collect()
}

fn check_indices(ids: &[usize], limit: usize) -> Result<()> {
    match ids.iter().find(|&&i| i >= limit) {
        Some(&index) => Err(Error::IndexOutOfRange { index, limit }),
        None => Ok(()),
    }
}

/// Inner product of two equal-length slices.
pub fn dot(f: &Field, a: &[Scalar], b: &[Scalar]) -> Scalar {
    debug_assert_eq!(a.len(), b.len());
    a.iter().zip(b).fold(Scalar::ZERO, |acc, (&x, &y)| f.mul_add(acc, x, y))
}

/// `M[i][j] = xs[i]^(j+1)`: the first column holds the points themselves.
pub fn vandermonde(xs: &[Scalar], cols: usize, field: &Field) -> Result<Matrix> {
    for (i, x) in xs.iter().enumerate() {
        field.elem(x.value())?;
        if x.is_zero() {
            return Err(Error::ZeroEvaluationPoint);
        }
        if xs[..i].contains(x) {
            return Err(Error::DuplicateEvaluationPoint(x.value()));
        }
    }
    let mut m = Matrix::zeros(xs.len(), cols, field);
    for (r, &x) in xs.iter().enumerate() {
        let mut p = x;
        for c in 0..cols {
            m.data[r * cols + c] = p;
            p = field.mul(p, x);
        }
    }
    Ok(m)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn f11() -> Field {
        Field::prime(11).unwrap()
    }

    fn scalars(v: &[u32]) -> Vec<Scalar> {
        v.iter().map(|&x| Scalar::new(x)).collect()
    }

    const PSI: [[u32; 6]; 8] = [
        [1, 1, 1, 1, 1, 1],
        [2, 4, 8, 5, 10, 9],
        [3, 9, 5, 4, 1, 3],
        [4, 5, 9, 3, 1, 4],
        [5, 3, 4, 9, 1, 5],
        [6, 3, 7, 9, 10, 5],
        [7, 5, 2, 3, 10, 4],
        [8, 9, 6, 4, 10, 3],
    ];

    fn random_matrix(rng: &mut ChaCha8Rng, rows: usize, cols: usize, f: &Field) -> Matrix {
        let data = (0..rows * cols).map(|_| Scalar::new(rng.gen_range(0..f.order()))).collect();
        Matrix::from_vec(rows, cols, data, f).unwrap()
    }

    /// Schoolbook triple loop written against raw integers.
    fn naive_matmul(a: &[Vec<u32>], b: &[Vec<u32>], p: u64) -> Vec<Vec<u32>> {
        let mut out = vec![vec![0u32; b[0].len()]; a.len()];
        for i in 0..a.len() {
            for j in 0..b[0].len() {
                let mut s = 0u64;
                for k in 0..b.len() {
                    s += a[i][k] as u64 * b[k][j] as u64;
                }
                out[i][j] = (s % p) as u32;
            }
        }
        out
    }

    #[test]
    fn vandermonde_reproduces_printed_psi() {
        let f = f11();
        let xs = scalars(&[1, 2, 3, 4, 5, 6, 7, 8]);
        let v = vandermonde(&xs, 6, &f).unwrap();
        assert_eq!(v, Matrix::from_rows(&PSI, &f).unwrap());
        assert_eq!(vandermonde(&scalars(&[1]), 1, &f).unwrap().to_u32_rows(), vec![vec![1]]);
        assert_eq!(vandermonde(&scalars(&[2, 3]), 2, &f).unwrap().to_u32_rows(), vec![vec![2, 4], vec![3, 9]]);
    }

    #[test]
    fn vandermonde_rejects_bad_points() {
        let f = f11();
        assert!(matches!(vandermonde(&scalars(&[1, 2, 1]), 2, &f), Err(Error::DuplicateEvaluationPoint(1))));
        assert!(matches!(vandermonde(&scalars(&[0, 2]), 2, &f), Err(Error::ZeroEvaluationPoint)));
        assert!(vandermonde(&scalars(&[12]), 2, &f).is_err());
    }

    #[test]
    fn matmul_against_naive_oracle() {
        let f = f11();
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for _ in 0..20 {
            let a = random_matrix(&mut rng, 5, 5, &f);
            let b = random_matrix(&mut rng, 5, 5, &f);
            let expect = naive_matmul(&a.to_u32_rows(), &b.to_u32_rows(), 11);
            assert_eq!(a.matmul(&b).unwrap().to_u32_rows(), expect);
        }
    }

    #[test]
    fn matmul_psi_times_message() {
        let f = f11();
        let psi = Matrix::from_rows(&PSI, &f).unwrap();
        // m = 0..11 laid out as [[m0 m1 m2][m1 m3 m4][m2 m4 m5][m6 m7 m8][m7 m9 m10][m8 m10 m11]]
        let m = Matrix::from_rows(
            &[[0, 1, 2], [1, 3, 4], [2, 4, 5], [6, 7, 8], [7, 9, 10], [8, 10, 11]].map(|r| r.map(|v| v % 11)),
            &f,
        )
        .unwrap();
        let c = psi.matmul(&m).unwrap();
        // first symbol of node 1 is m0+m1+m2+m6+m7+m8 = 0+1+2+6+7+8 = 24 = 2 mod 11
        assert_eq!(c.get(0, 0).value(), 24 % 11);
        let g_row1 = [1, 1, 1, 0, 0, 0, 1, 1, 1, 0, 0, 0u64];
        let dotted: u64 = g_row1.iter().zip(0..12u64).map(|(g, m)| g * (m % 11)).sum();
        assert_eq!(c.get(0, 0).value() as u64, dotted % 11);
    }

    #[test]
    fn matmul_errors() {
        let f = f11();
        let a = Matrix::zeros(2, 3, &f);
        assert!(matches!(a.matmul(&Matrix::zeros(2, 2, &f)), Err(Error::DimensionMismatch(_))));
        let g = Matrix::zeros(3, 2, &Field::prime(13).unwrap());
        assert!(matches!(a.matmul(&g), Err(Error::FieldMismatch)));
    }

    #[test]
    fn identity_and_rank_basics() {
        let f = f11();
        let i = Matrix::identity(4, &f);
        assert_eq!(i.invert().unwrap(), i);
        assert_eq!(Matrix::zeros(3, 4, &f).rank(), 0);
        assert_eq!(Matrix::from_rows(&[[1, 1, 1]; 3], &f).unwrap().rank(), 1);
        let psi = Matrix::from_rows(&PSI, &f).unwrap();
        assert_eq!(psi.matmul(&Matrix::identity(6, &f)).unwrap(), psi);
    }

    #[test]
    fn any_six_rows_of_psi_have_full_rank() {
        let f = f11();
        let psi = Matrix::from_rows(&PSI, &f).unwrap();
        for skip in itertools::Itertools::combinations(0..8usize, 2) {
            let rows: Vec<usize> = (0..8).filter(|r| !skip.contains(r)).collect();
            assert_eq!(psi.select_rows(&rows).unwrap().rank(), 6);
        }
    }

    #[test]
    fn invert_random_and_singular() {
        let f = f11();
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let mut inverted = 0;
        while inverted < 10 {
            let a = random_matrix(&mut rng, 8, 8, &f);
            match a.invert() {
                Ok(inv) => {
                    assert!(a.matmul(&inv).unwrap().is_identity());
                    assert!(inv.matmul(&a).unwrap().is_identity());
                    assert_eq!(a.rank(), 8);
                    inverted += 1;
                }
                Err(Error::Singular) => assert!(a.rank() < 8),
                Err(e) => panic!("{e}"),
            }
        }
        let singular = Matrix::from_rows(&[[1, 2], [2, 4]], &f).unwrap();
        assert!(matches!(singular.invert(), Err(Error::Singular)));
        assert!(matches!(Matrix::zeros(2, 3, &f).invert(), Err(Error::DimensionMismatch(_))));
    }

    #[test]
    fn submatrix_examples() {
        let f = f11();
        let psi = Matrix::from_rows(&PSI, &f).unwrap();
        let phi_alpha = psi.submatrix(&[0, 1, 2], &[0, 1, 2]).unwrap();
        assert_eq!(phi_alpha.to_u32_rows(), vec![vec![1, 1, 1], vec![2, 4, 8], vec![3, 9, 5]]);
        let all_r: Vec<usize> = (0..8).collect();
        let all_c: Vec<usize> = (0..6).collect();
        assert_eq!(psi.submatrix(&all_r, &all_c).unwrap(), psi);
        // rows {2,4} and column {1} in 1-based numbering
        assert_eq!(psi.submatrix(&[1, 3], &[0]).unwrap().to_u32_rows(), vec![vec![2], vec![4]]);
        assert!(matches!(psi.submatrix(&[8], &[0]), Err(Error::IndexOutOfRange { index: 8, limit: 8 })));
    }

    #[test]
    fn vandermonde_rank_is_min_dimension() {
        let f = Field::prime(19).unwrap();
        for n in 1..=18usize {
            let xs: Vec<Scalar> = (1..=n as u32).map(Scalar::new).collect();
            for cols in [1, n / 2 + 1, n, n + 3] {
                assert_eq!(vandermonde(&xs, cols, &f).unwrap().rank(), n.min(cols), "n={n} cols={cols}");
            }
        }
    }

    #[test]
    fn text_round_trip_and_errors() {
        let f = f11();
        let psi = Matrix::from_rows(&PSI, &f).unwrap();
        let text = psi.to_text();
        assert!(text.starts_with("8 6 11\n1 1 1 1 1 1\n2 4 8 5 10 9\n"));
        assert_eq!(Matrix::from_text(&text).unwrap(), psi);
        assert!(Matrix::from_text("2 2 11\n1 2\n").is_err());
        assert!(Matrix::from_text("1 2 11\n1 11\n").is_err());
        assert!(Matrix::from_text("1 2 12\n1 1\n").is_err());
        let g = Matrix::from_text("1 2 256\n255 3\n").unwrap();
        assert!(g.field().is_binary());
    }

    proptest! {
        #[test]
        fn matmul_associative_and_transpose(seed in any::<u64>(), p in prop::sample::select(vec![2u32, 11, 13, 257])) {
            let f = Field::prime(p).unwrap();
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let a = random_matrix(&mut rng, 3, 4, &f);
            let b = random_matrix(&mut rng, 4, 5, &f);
            let c = random_matrix(&mut rng, 5, 2, &f);
            prop_assert_eq!(a.matmul(&b).unwrap().matmul(&c).unwrap(), a.matmul(&b.matmul(&c).unwrap()).unwrap());
            prop_assert_eq!(a.matmul(&b).unwrap().transpose(), b.transpose().matmul(&a.transpose()).unwrap());
        }

        #[test]
        fn invert_iff_full_rank(seed in any::<u64>(), n in 1usize..7) {
            let f = Field::gf256();
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let a = random_matrix(&mut rng, n, n, &f);
            match a.invert() {
                Ok(inv) => {
                    prop_assert!(a.matmul(&inv).unwrap().is_identity());
                    prop_assert!(inv.matmul(&a).unwrap().is_identity());
                }
                Err(_) => prop_assert!(a.rank() < n),
            }
        }
    }
}
