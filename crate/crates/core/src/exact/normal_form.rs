//! Hermite and Smith normal forms over the integers.
//!
//! Lattices are spanned by matrix *columns*. The Hermite form here is lower
//! triangular with positive pivots, and every entry to the left of a pivot
//! lies in `[0, pivot)`.

use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::matrix::IntMatrix;
use super::Int;
use crate::error::{Error, Result};

/// `m * u = h` with `u` unimodular and `h` in column echelon form.
#[derive(Clone, Debug)]
pub struct ColumnEchelon {
    pub h: IntMatrix,
    pub u: IntMatrix,
    pub rank: usize,
    /// Row index of the pivot of each of the first `rank` columns.
    pub pivot_rows: Vec<usize>,
}

fn col_combine(m: &mut IntMatrix, r: usize, c: usize, x: &Int, y: &Int, p: &Int, q: &Int) {
    // (col_r, col_c) <- (x col_r + y col_c, p col_r + q col_c)
    for i in 0..m.rows() {
        let a = m.get(i, r).clone();
        let b = m.get(i, c).clone();
        if a.is_zero() && b.is_zero() {
            continue;
        }
        m.set(i, r, x * &a + y * &b);
        m.set(i, c, p * &a + q * &b);
    }
}

fn col_axpy(m: &mut IntMatrix, dst: usize, f: &Int, src: usize) {
    // col_dst -= f * col_src
    for i in 0..m.rows() {
        let s = m.get(i, src);
        if s.is_zero() {
            continue;
        }
        let v = m.get(i, dst) - f * s;
        m.set(i, dst, v);
    }
}

fn col_negate(m: &mut IntMatrix, c: usize) {
    for i in 0..m.rows() {
        let v = -m.get(i, c);
        m.set(i, c, v);
    }
}

pub fn column_echelon(m: &IntMatrix) -> ColumnEchelon {
    let mut h = m.clone();
    let mut u = IntMatrix::identity(m.cols());
    let mut r = 0;
    let mut pivot_rows = Vec::new();
    for i in 0..h.rows() {
        if r == h.cols() {
            break;
        }
        for c in r + 1..h.cols() {
            if h.get(i, c).is_zero() {
                continue;
            }
            let a = h.get(i, r).clone();
            let b = h.get(i, c).clone();
            let e = a.extended_gcd(&b);
            let (g, x, y) = (e.gcd, e.x, e.y);
            let p = -(&b / &g);
            let q = &a / &g;
            col_combine(&mut h, r, c, &x, &y, &p, &q);
            col_combine(&mut u, r, c, &x, &y, &p, &q);
        }
        if h.get(i, r).is_zero() {
            continue;
        }
        if h.get(i, r).is_negative() {
            col_negate(&mut h, r);
            col_negate(&mut u, r);
        }
        let piv = h.get(i, r).clone();
        for j in 0..r {
            let f = h.get(i, j).div_floor(&piv);
            if !f.is_zero() {
                col_axpy(&mut h, j, &f, r);
                col_axpy(&mut u, j, &f, r);
            }
        }
        pivot_rows.push(i);
        r += 1;
    }
    ColumnEchelon { h, u, rank: r, pivot_rows }
}

/// Hermite normal form of a matrix with full column rank.
pub fn hnf(m: &IntMatrix) -> Result<IntMatrix> {
    let e = column_echelon(m);
    if e.rank < m.cols() {
        return Err(Error::RankDeficient);
    }
    Ok(e.h)
}

/// Canonical (Hermite) basis of the lattice spanned by the columns of `gens`.
pub fn lattice_basis(gens: &IntMatrix) -> IntMatrix {
    let e = column_echelon(gens);
    e.h.select_cols(&(0..e.rank).collect::<Vec<_>>())
}

/// Basis of the integer kernel `{ v in Z^n : m v = 0 }`, as Hermite-reduced columns.
pub fn integer_kernel(m: &IntMatrix) -> IntMatrix {
    let e = column_echelon(m);
    let cols: Vec<usize> = (e.rank..m.cols()).collect();
    if cols.is_empty() {
        return IntMatrix::zeros(m.cols(), 0);
    }
    lattice_basis(&e.u.select_cols(&cols))
}

/// `u * m * v = d` with `d` diagonal, each diagonal entry dividing the next.
#[derive(Clone, Debug)]
pub struct SmithForm {
    pub d: IntMatrix,
    pub u: IntMatrix,
    pub v: IntMatrix,
}

impl SmithForm {
    pub fn diagonal(&self) -> Vec<Int> {
        (0..self.d.rows().min(self.d.cols())).map(|i| self.d.get(i, i).clone()).collect()
    }
}

fn row_axpy(m: &mut IntMatrix, dst: usize, f: &Int, src: usize) {
    for j in 0..m.cols() {
        let s = m.get(src, j);
        if s.is_zero() {
            continue;
        }
        let v = m.get(dst, j) - f * s;
        m.set(dst, j, v);
    }
}

pub fn snf(m: &IntMatrix) -> SmithForm {
    let (rows, cols) = (m.rows(), m.cols());
    let mut d = m.clone();
    let mut u = IntMatrix::identity(rows);
    let mut v = IntMatrix::identity(cols);
    for t in 0..rows.min(cols) {
        loop {
            // smallest nonzero entry of the trailing block becomes the pivot
            let mut best: Option<(usize, usize)> = None;
            for i in t..rows {
                for j in t..cols {
                    let x = d.get(i, j);
                    if !x.is_zero() && best.is_none_or(|(bi, bj)| x.abs() < d.get(bi, bj).abs()) {
                        best = Some((i, j));
                    }
                }
            }
            let Some((bi, bj)) = best else {
                return finish(d, u, v);
            };
            d.swap_rows(t, bi);
            u.swap_rows(t, bi);
            d.swap_cols(t, bj);
            v.swap_cols(t, bj);
            let piv = d.get(t, t).clone();
            let mut clean = true;
            for i in t + 1..rows {
                let q = d.get(i, t).div_floor(&piv);
                if !q.is_zero() {
                    row_axpy(&mut d, i, &q, t);
                    row_axpy(&mut u, i, &q, t);
                }
                clean &= d.get(i, t).is_zero();
            }
            for j in t + 1..cols {
                let q = d.get(t, j).div_floor(&piv);
                if !q.is_zero() {
                    col_axpy(&mut d, j, &q, t);
                    col_axpy(&mut v, j, &q, t);
                }
                clean &= d.get(t, j).is_zero();
            }
            if !clean {
                continue;
            }
            let bad = (t + 1..rows)
                .flat_map(|i| (t + 1..cols).map(move |j| (i, j)))
                .find(|&(i, j)| !d.get(i, j).is_multiple_of(&piv));
            match bad {
                Some((i, _)) => {
                    let minus_one = -Int::one();
                    row_axpy(&mut d, t, &minus_one, i);
                    row_axpy(&mut u, t, &minus_one, i);
                }
                None => break,
            }
        }
        if d.get(t, t).is_negative() {
            for j in 0..cols {
                let x = -d.get(t, j);
                d.set(t, j, x);
            }
            for j in 0..rows {
                let x = -u.get(t, j);
                u.set(t, j, x);
            }
        }
    }
    finish(d, u, v)
}

fn finish(d: IntMatrix, u: IntMatrix, v: IntMatrix) -> SmithForm {
    SmithForm { d, u, v }
}

/// Inverse of a unimodular integer matrix.
pub fn unimodular_inverse(m: &IntMatrix) -> Option<IntMatrix> {
    if !m.is_square() || m.det().abs() != Int::one() {
        return None;
    }
    m.to_rat().inverse().and_then(|i| i.to_int())
}

/// `Z^k` intersected with the rational span of the columns of `gens`.
pub fn saturation(gens: &IntMatrix) -> IntMatrix {
    let basis = lattice_basis(gens);
    let r = basis.cols();
    if r == 0 {
        return basis;
    }
    let s = snf(&basis);
    let uinv = unimodular_inverse(&s.u).expect("smith transform is unimodular");
    lattice_basis(&uinv.select_cols(&(0..r).collect::<Vec<_>>()))
}

/// Membership of `v` in the lattice with Hermite basis `h` (as returned by
/// [`lattice_basis`]); returns the coordinates when it belongs.
pub fn lattice_coords(h: &IntMatrix, v: &[Int]) -> Option<Vec<Int>> {
    let e = column_echelon(h);
    let mut rest = v.to_vec();
    let mut coords = vec![Int::zero(); h.cols()];
    for (c, &row) in e.pivot_rows.iter().enumerate() {
        let piv = e.h.get(row, c);
        if !rest[row].is_multiple_of(piv) {
            return None;
        }
        let f = &rest[row] / piv;
        for (i, x) in rest.iter_mut().enumerate() {
            *x -= &f * e.h.get(i, c);
        }
        coords[c] = f;
    }
    if rest.iter().any(|x| !x.is_zero()) {
        return None;
    }
    // coordinates w.r.t. e.h; translate back through u
    let out = e.u.mul_vec(&coords);
    Some(out)
}
