//! Gaussian elimination over exact fields (rationals or a number field).

use super::field::{FieldElem, FieldMatrix};
use super::matrix::{FieldScalar, Matrix, RatMatrix};
use super::Rat;
use crate::error::{Error, Result};
use num_traits::Zero;

/// Reduced row echelon form; returns the matrix and its pivot columns.
pub fn rref<T: FieldScalar>(m: &Matrix<T>) -> (Matrix<T>, Vec<usize>) {
    let mut a = m.clone();
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..a.cols() {
        if r == a.rows() {
            break;
        }
        let Some(p) = (r..a.rows()).find(|&i| !a.get(i, c).is_zero_value()) else {
            continue;
        };
        a.swap_rows(r, p);
        let inv = a.get(r, c).inv_ref();
        for j in c..a.cols() {
            let v = a.get(r, j).mul_ref(&inv);
            a.set(r, j, v);
        }
        for i in 0..a.rows() {
            if i == r || a.get(i, c).is_zero_value() {
                continue;
            }
            let f = a.get(i, c).clone();
            for j in c..a.cols() {
                let v = a.get(i, j).sub_ref(&f.mul_ref(a.get(r, j)));
                a.set(i, j, v);
            }
        }
        pivots.push(c);
        r += 1;
    }
    (a, pivots)
}

pub fn rank<T: FieldScalar>(m: &Matrix<T>) -> usize {
    rref(m).1.len()
}

/// Basis of the right kernel. Each vector has its first nonzero entry equal to one.
pub fn kernel<T: FieldScalar>(m: &Matrix<T>) -> Vec<Vec<T>> {
    let (a, pivots) = rref(m);
    let n = a.cols();
    let Some(sample) = a.entries().first() else {
        return vec![];
    };
    let zero = sample.zero_like();
    let one = sample.one_like();
    let mut basis = Vec::new();
    for free in (0..n).filter(|c| !pivots.contains(c)) {
        let mut v = vec![zero.clone(); n];
        v[free] = one.clone();
        for (r, &pc) in pivots.iter().enumerate() {
            v[pc] = a.get(r, free).neg_ref();
        }
        let lead = v.iter().find(|x| !x.is_zero_value()).unwrap().inv_ref();
        basis.push(v.iter().map(|x| x.mul_ref(&lead)).collect());
    }
    basis
}

pub fn det<T: FieldScalar>(m: &Matrix<T>) -> T {
    assert!(m.is_square(), "determinant of a non-square matrix");
    let mut a = m.clone();
    let n = a.rows();
    let mut acc = a.get(0, 0).one_like();
    for c in 0..n {
        let Some(p) = (c..n).find(|&i| !a.get(i, c).is_zero_value()) else {
            return acc.zero_like();
        };
        if p != c {
            a.swap_rows(p, c);
            acc = acc.neg_ref();
        }
        let piv = a.get(c, c).clone();
        acc = acc.mul_ref(&piv);
        let inv = piv.inv_ref();
        for i in c + 1..n {
            if a.get(i, c).is_zero_value() {
                continue;
            }
            let f = a.get(i, c).mul_ref(&inv);
            for j in c..n {
                let v = a.get(i, j).sub_ref(&f.mul_ref(a.get(c, j)));
                a.set(i, j, v);
            }
        }
    }
    acc
}

pub fn inverse<T: FieldScalar>(m: &Matrix<T>) -> Option<Matrix<T>> {
    if !m.is_square() || m.rows() == 0 {
        return None;
    }
    let n = m.rows();
    let one = m.get(0, 0).one_like();
    let aug = m.hstack(&Matrix::identity_like(n, &one));
    let (r, pivots) = rref(&aug);
    if pivots.len() < n || pivots[n - 1] != n - 1 {
        return None;
    }
    Some(Matrix::from_fn(n, n, |i, j| r.get(i, n + j).clone()))
}

/// Solution set `{ particular + span(kernel) }` of `A X = B` (B may have several columns).
#[derive(Clone, Debug, PartialEq)]
pub struct SolutionSpace<T> {
    pub particular: Matrix<T>,
    pub kernel: Vec<Vec<T>>,
}

/// Solves `A X = B` over a field. `Ok(None)` means the system is inconsistent.
pub fn solve<T: FieldScalar>(a: &Matrix<T>, b: &Matrix<T>) -> Result<Option<SolutionSpace<T>>> {
    if a.rows() != b.rows() {
        return Err(Error::Dimension(format!(
            "system has {} rows but right-hand side has {}",
            a.rows(),
            b.rows()
        )));
    }
    let n = a.cols();
    let (r, pivots) = rref(&a.hstack(b));
    if pivots.iter().any(|&p| p >= n) {
        return Ok(None);
    }
    let zero = match r.entries().first() {
        Some(x) => x.zero_like(),
        None => return Ok(Some(SolutionSpace { particular: b.clone(), kernel: vec![] })),
    };
    let mut x = Matrix::from_fn(n, b.cols(), |_, _| zero.clone());
    for (row, &pc) in pivots.iter().enumerate() {
        for j in 0..b.cols() {
            x.set(pc, j, r.get(row, n + j).clone());
        }
    }
    Ok(Some(SolutionSpace { particular: x, kernel: kernel(a) }))
}

/// Solves `A X = B` over the number field.
pub fn solve_linear(a: &FieldMatrix, b: &FieldMatrix) -> Result<Option<SolutionSpace<FieldElem>>> {
    solve(a, b)
}

/// Splits every field entry into its rational coordinates: an `r x c` field
/// matrix becomes an `(r * deg) x c` rational matrix. `A x = b` with rational
/// `x` holds iff the flattened system holds.
pub fn flatten_rows(m: &FieldMatrix) -> RatMatrix {
    let deg = m.entries().first().map_or(1, |e| e.field().degree());
    Matrix::from_fn(m.rows() * deg, m.cols(), |i, j| m.get(i / deg, j).coords()[i % deg].clone())
}

/// Solves `A X = B` for rational `X` where `A`, `B` have number-field entries.
pub fn solve_linear_rational(
    a: &FieldMatrix,
    b: &FieldMatrix,
) -> Result<Option<SolutionSpace<Rat>>> {
    if a.rows() != b.rows() {
        return Err(Error::Dimension("right-hand side row count".into()));
    }
    if let (Some(x), Some(y)) = (a.entries().first(), b.entries().first()) {
        if x.field() != y.field() {
            return Err(Error::FieldMismatch);
        }
    }
    solve(&flatten_rows(a), &flatten_rows(b))
}

/// Rational kernel of a number-field matrix (rational vectors `v` with `A v = 0`).
pub fn rational_kernel(a: &FieldMatrix) -> Vec<Vec<Rat>> {
    kernel(&flatten_rows(a))
}

/// Expresses `target` as a rational combination of `basis` vectors (columns).
pub fn rational_combination(basis: &[Vec<Rat>], target: &[Rat]) -> Option<Vec<Rat>> {
    if basis.is_empty() {
        return target.iter().all(Zero::is_zero).then(Vec::new);
    }
    let n = target.len();
    let a = Matrix::from_fn(n, basis.len(), |i, j| basis[j][i].clone());
    let b = Matrix::from_fn(n, 1, |i, _| target[i].clone());
    solve(&a, &b).ok().flatten().map(|s| s.particular.col(0))
}
