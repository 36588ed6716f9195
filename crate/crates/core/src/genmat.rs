//! Square matrices of polynomials, the generic matrices X and Y, and the
//! commutator system Z = XY − YX with its generators f₁..f_{n²}.

use serde::Serialize;
use thiserror::Error;

use crate::polyring::{Field, PolyError, PolyRing, Polynomial};

#[derive(Debug, Error)]
pub enum MatrixError {
    #[error("matrix size must be at least 1")]
    ZeroSize,
    #[error("size mismatch: {0} vs {1}")]
    SizeMismatch(usize, usize),
    #[error("row {row} has {got} entries, expected {expected}")]
    Ragged {
        row: usize,
        got: usize,
        expected: usize,
    },
    #[error(transparent)]
    Poly(#[from] PolyError),
}

/// An n×n matrix of polynomials, stored row-major.
#[derive(Debug, Clone, PartialEq)]
pub struct GenericMatrix<E> {
    n: usize,
    entries: Vec<Polynomial<E>>,
}

impl<E: Clone> GenericMatrix<E> {
    pub fn from_fn(n: usize, mut f: impl FnMut(usize, usize) -> Polynomial<E>) -> Self {
        let mut entries = Vec::with_capacity(n * n);
        for i in 0..n {
            for j in 0..n {
                entries.push(f(i, j));
            }
        }
        GenericMatrix { n, entries }
    }

    pub fn from_rows(rows: Vec<Vec<Polynomial<E>>>) -> Result<Self, MatrixError> {
        let n = rows.len();
        if n == 0 {
            return Err(MatrixError::ZeroSize);
        }
        let mut entries = Vec::with_capacity(n * n);
        for (row, r) in rows.into_iter().enumerate() {
            if r.len() != n {
                return Err(MatrixError::Ragged {
                    row,
                    got: r.len(),
                    expected: n,
                });
            }
            entries.extend(r);
        }
        Ok(GenericMatrix { n, entries })
    }

    /// Matrix whose columns are the given vectors.
    pub fn from_columns(cols: &[Vec<Polynomial<E>>]) -> Result<Self, MatrixError> {
        let n = cols.len();
        if n == 0 {
            return Err(MatrixError::ZeroSize);
        }
        for (c, col) in cols.iter().enumerate() {
            if col.len() != n {
                return Err(MatrixError::Ragged {
                    row: c,
                    got: col.len(),
                    expected: n,
                });
            }
        }
        Ok(Self::from_fn(n, |i, j| cols[j][i].clone()))
    }

    pub fn size(&self) -> usize {
        self.n
    }

    /// Entry at 0-based (row, col).
    pub fn get(&self, i: usize, j: usize) -> &Polynomial<E> {
        &self.entries[i * self.n + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: Polynomial<E>) {
        self.entries[i * self.n + j] = v;
    }

    pub fn entries(&self) -> &[Polynomial<E>] {
        &self.entries
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(|e| e.is_zero())
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.n, |i, j| self.get(j, i).clone())
    }
}

/// Matrix arithmetic over a polynomial ring.
pub struct MatOps<'a, F: Field> {
    pub ring: &'a PolyRing<F>,
}

type Mat<F> = GenericMatrix<<F as Field>::Elem>;
type Poly<F> = Polynomial<<F as Field>::Elem>;

impl<'a, F: Field> MatOps<'a, F> {
    pub fn new(ring: &'a PolyRing<F>) -> Self {
        MatOps { ring }
    }

    pub fn identity(&self, n: usize) -> Mat<F> {
        self.scalar(n, &self.ring.one())
    }

    pub fn zero(&self, n: usize) -> Mat<F> {
        GenericMatrix::from_fn(n, |_, _| self.ring.zero())
    }

    pub fn scalar(&self, n: usize, c: &Poly<F>) -> Mat<F> {
        GenericMatrix::from_fn(n, |i, j| if i == j { c.clone() } else { self.ring.zero() })
    }

    fn check(&self, a: &Mat<F>, b: &Mat<F>) -> Result<(), MatrixError> {
        if a.n != b.n {
            return Err(MatrixError::SizeMismatch(a.n, b.n));
        }
        Ok(())
    }

    pub fn add(&self, a: &Mat<F>, b: &Mat<F>) -> Result<Mat<F>, MatrixError> {
        self.check(a, b)?;
        Ok(GenericMatrix::from_fn(a.n, |i, j| {
            self.ring.add(a.get(i, j), b.get(i, j))
        }))
    }

    pub fn sub(&self, a: &Mat<F>, b: &Mat<F>) -> Result<Mat<F>, MatrixError> {
        self.check(a, b)?;
        Ok(GenericMatrix::from_fn(a.n, |i, j| {
            self.ring.sub(a.get(i, j), b.get(i, j))
        }))
    }

    pub fn neg(&self, a: &Mat<F>) -> Mat<F> {
        GenericMatrix::from_fn(a.n, |i, j| self.ring.neg(a.get(i, j)))
    }

    /// Multiply every entry by the polynomial `c`.
    pub fn scale(&self, a: &Mat<F>, c: &Poly<F>) -> Mat<F> {
        GenericMatrix::from_fn(a.n, |i, j| self.ring.mul(c, a.get(i, j)))
    }

    pub fn mul(&self, a: &Mat<F>, b: &Mat<F>) -> Result<Mat<F>, MatrixError> {
        self.check(a, b)?;
        let n = a.n;
        Ok(GenericMatrix::from_fn(n, |i, j| {
            let prods: Vec<Poly<F>> = (0..n)
                .map(|k| self.ring.mul(a.get(i, k), b.get(k, j)))
                .collect();
            self.ring.sum(&prods)
        }))
    }

    pub fn pow(&self, a: &Mat<F>, e: u32) -> Mat<F> {
        let mut acc = self.identity(a.n);
        for _ in 0..e {
            acc = self.mul(&acc, a).expect("same size");
        }
        acc
    }

    pub fn trace(&self, a: &Mat<F>) -> Poly<F> {
        let diag = self.diagonal(a);
        self.ring.sum(&diag)
    }

    /// `tr(A·B)` without forming the product.
    pub fn trace_of_product(&self, a: &Mat<F>, b: &Mat<F>) -> Result<Poly<F>, MatrixError> {
        self.check(a, b)?;
        let n = a.n;
        let mut prods = Vec::with_capacity(n * n);
        for i in 0..n {
            for k in 0..n {
                prods.push(self.ring.mul(a.get(i, k), b.get(k, i)));
            }
        }
        Ok(self.ring.sum(&prods))
    }

    pub fn diagonal(&self, a: &Mat<F>) -> Vec<Poly<F>> {
        (0..a.n).map(|i| a.get(i, i).clone()).collect()
    }

    /// Determinant by fraction-free (Bareiss) elimination. In debug builds the
    /// result is cross-checked against cofactor expansion for n ≤ 4.
    pub fn det(&self, a: &Mat<F>) -> Poly<F> {
        let d = self.det_bareiss(a);
        #[cfg(debug_assertions)]
        if a.n <= 4 {
            debug_assert_eq!(d, self.det_cofactor(a), "determinant algorithms disagree");
        }
        d
    }

    /// Bareiss elimination: every division is exact in the polynomial ring.
    pub fn det_bareiss(&self, a: &Mat<F>) -> Poly<F> {
        let r = self.ring;
        let n = a.n;
        let mut m: Vec<Vec<Poly<F>>> = (0..n)
            .map(|i| (0..n).map(|j| a.get(i, j).clone()).collect())
            .collect();
        let mut sign_flip = false;
        let mut prev = r.one();
        for k in 0..n {
            if m[k][k].is_zero() {
                match (k + 1..n).find(|&i| !m[i][k].is_zero()) {
                    Some(i) => {
                        m.swap(i, k);
                        sign_flip = !sign_flip;
                    }
                    None => return r.zero(),
                }
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    let num = r.sub(&r.mul(&m[i][j], &m[k][k]), &r.mul(&m[i][k], &m[k][j]));
                    m[i][j] = r.exact_div(&num, &prev).expect("Bareiss quotient is exact");
                }
            }
            prev = m[k][k].clone();
        }
        let d = m[n - 1][n - 1].clone();
        if sign_flip {
            r.neg(&d)
        } else {
            d
        }
    }

    /// Laplace expansion along the first row.
    pub fn det_cofactor(&self, a: &Mat<F>) -> Poly<F> {
        let rows: Vec<usize> = (0..a.n).collect();
        let cols: Vec<usize> = (0..a.n).collect();
        self.minor(a, &rows, &cols)
    }

    /// Determinant of the submatrix on the given rows and columns.
    pub fn minor(&self, a: &Mat<F>, rows: &[usize], cols: &[usize]) -> Poly<F> {
        let r = self.ring;
        match rows.len() {
            0 => r.one(),
            1 => a.get(rows[0], cols[0]).clone(),
            _ => {
                let mut terms = Vec::with_capacity(cols.len());
                for (k, &c) in cols.iter().enumerate() {
                    let entry = a.get(rows[0], c);
                    if entry.is_zero() {
                        continue;
                    }
                    let sub_cols: Vec<usize> = cols.iter().copied().filter(|&x| x != c).collect();
                    let sub = self.minor(a, &rows[1..], &sub_cols);
                    let p = r.mul(entry, &sub);
                    terms.push(if k % 2 == 0 { p } else { r.neg(&p) });
                }
                r.sum(&terms)
            }
        }
    }

    /// Coefficients e₁..e_n of the characteristic polynomial, eₖ being the sum
    /// of the k×k principal minors.
    pub fn principal_minor_sums(&self, a: &Mat<F>) -> Vec<Poly<F>> {
        let n = a.n;
        let mut out = Vec::with_capacity(n);
        for k in 1..=n {
            let mut acc = Vec::new();
            for_each_subset(n, k, &mut |s| acc.push(self.minor(a, s, s)));
            out.push(self.ring.sum(&acc));
        }
        out
    }

    /// Cayley–Hamilton residue Σₖ (−1)ᵏ eₖ M^{n−k}; the zero matrix for every
    /// square M.
    pub fn char_poly_identity(&self, a: &Mat<F>) -> Mat<F> {
        let n = a.n;
        let e = self.principal_minor_sums(a);
        let mut acc = self.pow(a, n as u32);
        for k in 1..=n {
            let term = self.scale(&self.pow(a, (n - k) as u32), &e[k - 1]);
            acc = if k % 2 == 0 {
                self.add(&acc, &term).expect("same size")
            } else {
                self.sub(&acc, &term).expect("same size")
            };
        }
        acc
    }

    /// YX − [(tr(XY) − tr X·tr Y)E + tr(Y)X + tr(X)Y − XY] for 2×2 X, Y.
    pub fn trace_identity_2x2(&self, x: &Mat<F>, y: &Mat<F>) -> Result<Mat<F>, MatrixError> {
        if x.n != 2 {
            return Err(MatrixError::SizeMismatch(x.n, 2));
        }
        self.check(x, y)?;
        let r = self.ring;
        let xy = self.mul(x, y)?;
        let yx = self.mul(y, x)?;
        let (tx, ty) = (self.trace(x), self.trace(y));
        let c = r.sub(&self.trace(&xy), &r.mul(&tx, &ty));
        let rhs = self.add(&self.scalar(2, &c), &self.scale(x, &ty))?;
        let rhs = self.add(&rhs, &self.scale(y, &tx))?;
        let rhs = self.sub(&rhs, &xy)?;
        self.sub(&yx, &rhs)
    }

    /// Expansion along the repeated first row of the (m+1)×(m+1) matrix whose
    /// columns are `cols` (m+1 vectors of length m) with row 1 duplicated on
    /// top: Σₖ (−1)ᵏ cols[k][0]·det(cols without k). The matrix is singular,
    /// so the result is zero.
    pub fn repeated_row_expansion(&self, cols: &[Vec<Poly<F>>]) -> Result<Poly<F>, MatrixError> {
        let m = cols.len().saturating_sub(1);
        if m == 0 {
            return Err(MatrixError::ZeroSize);
        }
        for c in cols {
            if c.len() != m {
                return Err(MatrixError::SizeMismatch(c.len(), m));
            }
        }
        let r = self.ring;
        let mut acc = r.zero();
        for k in 0..=m {
            let rest: Vec<Vec<Poly<F>>> = cols
                .iter()
                .enumerate()
                .filter(|&(i, _)| i != k)
                .map(|(_, c)| c.clone())
                .collect();
            let minor = self.det(&GenericMatrix::from_columns(&rest)?);
            let term = r.mul(&cols[k][0], &minor);
            acc = if k % 2 == 0 {
                r.add(&acc, &term)
            } else {
                r.sub(&acc, &term)
            };
        }
        Ok(acc)
    }

    /// Parse a matrix: one row per line, entries separated by `,`. Blank
    /// lines and lines starting with `#` are skipped.
    pub fn parse(&self, text: &str) -> Result<Mat<F>, MatrixError> {
        let mut rows = Vec::new();
        for line in text.lines() {
            let line = line.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let row: Result<Vec<_>, _> = line.split(',').map(|s| self.ring.parse(s)).collect();
            rows.push(row?);
        }
        GenericMatrix::from_rows(rows)
    }

    pub fn format(&self, a: &Mat<F>) -> String {
        let mut out = String::new();
        for i in 0..a.n {
            let row: Vec<String> = (0..a.n).map(|j| self.ring.format(a.get(i, j))).collect();
            out.push_str(&row.join(", "));
            out.push('\n');
        }
        out
    }
}

/// Calls `f` on every increasing k-subset of 0..n.
pub fn for_each_subset(n: usize, k: usize, f: &mut dyn FnMut(&[usize])) {
    fn rec(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, f: &mut dyn FnMut(&[usize])) {
        if cur.len() == k {
            f(cur);
            return;
        }
        for i in start..n {
            if n - i < k - cur.len() {
                break;
            }
            cur.push(i);
            rec(i + 1, n, k, cur, f);
            cur.pop();
        }
    }
    let mut cur = Vec::with_capacity(k);
    rec(0, n, k, &mut cur, f);
}

/// X, Y, Z = XY − YX and the generators fₖ of the commutator ideal.
#[derive(Debug, Clone)]
pub struct CommutatorSystem<F: Field> {
    ring: PolyRing<F>,
    x: Mat<F>,
    y: Mat<F>,
    z: Mat<F>,
    f: Vec<Poly<F>>,
}

impl<F: Field> CommutatorSystem<F> {
    /// Builds the system over a fresh ring of size n with the default order.
    pub fn build(field: F, n: usize) -> Result<Self, MatrixError> {
        if n == 0 {
            return Err(MatrixError::ZeroSize);
        }
        Ok(Self::over(PolyRing::new(field, n)))
    }

    /// Builds the system over an existing ring (its x/y block is used).
    pub fn over(ring: PolyRing<F>) -> Self {
        let n = ring.n();
        let x = GenericMatrix::from_fn(n, |i, j| ring.x(i + 1, j + 1));
        let y = GenericMatrix::from_fn(n, |i, j| ring.y(i + 1, j + 1));
        let ops = MatOps::new(&ring);
        let z = ops
            .sub(
                &ops.mul(&x, &y).expect("square"),
                &ops.mul(&y, &x).expect("square"),
            )
            .expect("square");
        // column-major: f_1 = Z_11, f_2 = Z_21, ...
        let mut f = Vec::with_capacity(n * n);
        for j in 0..n {
            for i in 0..n {
                f.push(z.get(i, j).clone());
            }
        }
        CommutatorSystem { ring, x, y, z, f }
    }

    pub fn ring(&self) -> &PolyRing<F> {
        &self.ring
    }

    pub fn ops(&self) -> MatOps<'_, F> {
        MatOps::new(&self.ring)
    }

    pub fn n(&self) -> usize {
        self.ring.n()
    }

    pub fn x(&self) -> &Mat<F> {
        &self.x
    }

    pub fn y(&self) -> &Mat<F> {
        &self.y
    }

    pub fn z(&self) -> &Mat<F> {
        &self.z
    }

    /// All n² generators, f[k-1] = fₖ.
    pub fn generators(&self) -> &[Poly<F>] {
        &self.f
    }

    /// 1-based generator index of Z_ij (1-based row, col).
    pub fn index_of(&self, row: usize, col: usize) -> usize {
        (col - 1) * self.n() + row
    }

    /// (row, col) of the generator fₖ, 1-based.
    pub fn position_of(&self, k: usize) -> (usize, usize) {
        let n = self.n();
        ((k - 1) % n + 1, (k - 1) / n + 1)
    }

    /// 1-based indices {1, n+2, 2n+3, …} of the diagonal generators.
    pub fn diagonal_indices(&self) -> Vec<usize> {
        (0..self.n()).map(|i| i * (self.n() + 1) + 1).collect()
    }

    /// 1-based indices of the off-diagonal generators (those of J).
    pub fn off_diagonal_indices(&self) -> Vec<usize> {
        let diag = self.diagonal_indices();
        (1..=self.n() * self.n())
            .filter(|k| !diag.contains(k))
            .collect()
    }

    /// Generators of J, in index order.
    pub fn off_diagonal(&self) -> Vec<Poly<F>> {
        self.off_diagonal_indices()
            .into_iter()
            .map(|k| self.f[k - 1].clone())
            .collect()
    }

    /// The n² − 1 generators obtained by dropping the last diagonal entry
    /// Z_nn (which equals minus the sum of the other diagonal entries).
    pub fn minimal_generators(&self) -> Vec<Poly<F>> {
        let last = self.n() * self.n();
        (1..=last)
            .filter(|&k| k != last)
            .map(|k| self.f[k - 1].clone())
            .collect()
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct GeneratorInfo {
    pub index: usize,
    pub row: usize,
    pub col: usize,
    pub bidegree: (u32, u32),
    pub polynomial: String,
    pub diagonal: bool,
}

impl<F: Field> CommutatorSystem<F> {
    pub fn describe(&self) -> Vec<GeneratorInfo> {
        let diag = self.diagonal_indices();
        self.f
            .iter()
            .enumerate()
            .map(|(k, p)| {
                let (row, col) = self.position_of(k + 1);
                GeneratorInfo {
                    index: k + 1,
                    row,
                    col,
                    bidegree: self.ring.bidegree_of(p).unwrap_or((1, 1)),
                    polynomial: self.ring.format(p),
                    diagonal: diag.contains(&(k + 1)),
                }
            })
            .collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polyring::{PrimeField, Rationals};

    #[test]
    fn n1_commutes() {
        let s = CommutatorSystem::build(Rationals, 1).unwrap();
        assert!(s.z().is_zero());
        assert_eq!(s.generators().len(), 1);
        assert!(s.generators()[0].is_zero());
        assert!(CommutatorSystem::build(Rationals, 0).is_err());
    }

    #[test]
    fn n2_first_generator() {
        let s = CommutatorSystem::build(Rationals, 2).unwrap();
        let r = s.ring();
        let expect = r.parse("x_1_2*y_2_1 - x_2_1*y_1_2").unwrap();
        assert_eq!(s.generators()[0], expect);
        // f_2 = Z_21
        assert_eq!(&s.generators()[1], s.z().get(1, 0));
        assert_eq!(s.diagonal_indices(), vec![1, 4]);
        assert_eq!(s.index_of(2, 1), 2);
        assert_eq!(s.position_of(3), (1, 2));
    }

    #[test]
    fn diagonal_generators_sum_to_zero() {
        for n in 1..=4 {
            let s = CommutatorSystem::build(PrimeField::default(), n).unwrap();
            let r = s.ring();
            let diag: Vec<_> = s
                .diagonal_indices()
                .iter()
                .map(|&k| s.generators()[k - 1].clone())
                .collect();
            assert!(r.sum(&diag).is_zero());
            assert_eq!(s.generators().len(), n * n);
            assert_eq!(s.off_diagonal().len(), n * n - n);
            for f in s.generators().iter().filter(|f| !f.is_zero()) {
                assert_eq!(r.bidegree_of(f).unwrap(), (1, 1));
            }
            assert_eq!(s.ops().diagonal(s.z()), diag);
        }
        let s3 = CommutatorSystem::build(Rationals, 3).unwrap();
        assert_eq!(s3.diagonal_indices(), vec![1, 5, 9]);
    }

    #[test]
    fn trace_examples() {
        let s = CommutatorSystem::build(Rationals, 3).unwrap();
        let ops = s.ops();
        let r = s.ring();
        assert_eq!(ops.trace(&ops.identity(3)), r.from_int(3));
        let xy = ops.mul(s.x(), s.y()).unwrap();
        let yx = ops.mul(s.y(), s.x()).unwrap();
        assert!(r.sub(&ops.trace(&xy), &ops.trace(&yx)).is_zero());
        assert!(ops.trace(&ops.mul(s.x(), s.z()).unwrap()).is_zero());
        assert!(ops.trace_of_product(s.x(), s.z()).unwrap().is_zero());
    }

    #[test]
    fn determinant_examples() {
        let s = CommutatorSystem::build(Rationals, 2).unwrap();
        let ops = s.ops();
        let r = s.ring();
        assert_eq!(ops.det(&ops.identity(3)), r.one());
        assert_eq!(
            ops.det(s.x()),
            r.parse("x_1_1*x_2_2 - x_1_2*x_2_1").unwrap()
        );
        let s3 = CommutatorSystem::build(Rationals, 3).unwrap();
        let o3 = s3.ops();
        let mut m = s3.x().clone();
        for j in 0..3 {
            m.set(2, j, m.get(0, j).clone());
        }
        assert!(o3.det(&m).is_zero());
        assert!(o3.det_bareiss(&m).is_zero());
        // zero pivot forces a row swap
        let p = GenericMatrix::from_rows(vec![vec![r.zero(), r.x(1, 1)], vec![r.y(1, 1), r.one()]])
            .unwrap();
        assert_eq!(ops.det_bareiss(&p), r.neg(&r.mul(&r.x(1, 1), &r.y(1, 1))));
    }

    #[test]
    fn diagonals() {
        let s = CommutatorSystem::build(Rationals, 3).unwrap();
        let ops = s.ops();
        let r = s.ring();
        assert_eq!(ops.diagonal(&ops.identity(3)), vec![r.one(); 3]);
        assert_eq!(ops.diagonal(s.x()), vec![r.x(1, 1), r.x(2, 2), r.x(3, 3)]);
    }

    #[test]
    fn cayley_hamilton() {
        for n in 2..=3 {
            let s = CommutatorSystem::build(Rationals, n).unwrap();
            let ops = s.ops();
            assert!(ops.char_poly_identity(s.x()).is_zero());
            assert!(ops.char_poly_identity(s.y()).is_zero());
        }
        // n = 2 explicit form: X² − tr(X)X + det(X)E
        let s = CommutatorSystem::build(Rationals, 2).unwrap();
        let ops = s.ops();
        let x = s.x();
        let lhs = ops
            .sub(&ops.pow(x, 2), &ops.scale(x, &ops.trace(x)))
            .unwrap();
        let lhs = ops.add(&lhs, &ops.scalar(2, &ops.det(x))).unwrap();
        assert!(lhs.is_zero());
    }

    #[test]
    fn trace_identity() {
        let s = CommutatorSystem::build(Rationals, 2).unwrap();
        let ops = s.ops();
        let r = s.ring();
        assert!(ops.trace_identity_2x2(s.x(), s.y()).unwrap().is_zero());
        assert!(ops
            .trace_identity_2x2(&ops.identity(2), s.y())
            .unwrap()
            .is_zero());
        let num = |v: [[i64; 2]; 2]| GenericMatrix::from_fn(2, |i, j| r.from_int(v[i][j]));
        let x = num([[1, 2], [3, 4]]);
        let y = num([[0, 1], [1, 0]]);
        assert!(ops.trace_identity_2x2(&x, &y).unwrap().is_zero());
        // the identity is specific to 2×2
        let s3 = CommutatorSystem::build(Rationals, 3).unwrap();
        assert!(s3.ops().trace_identity_2x2(s3.x(), s3.y()).is_err());
    }

    #[test]
    fn matrix_text_roundtrip() {
        let s = CommutatorSystem::build(Rationals, 2).unwrap();
        let ops = s.ops();
        let text = ops.format(s.z());
        assert_eq!(&ops.parse(&text).unwrap(), s.z());
        assert!(ops.parse("x_1_1, 0\n1").is_err());
    }
}
