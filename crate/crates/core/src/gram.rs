//! Free Z-modules of finite rank presented by Gram matrices.

use std::cmp::Ordering;
use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::exact::linalg::{det, rank, rational_kernel};
use crate::exact::{FieldElem, FieldMatrix, Matrix, NumberField, RatMatrix};

/// A module `M = <t_1, ..., t_k>_Z` spanning `R^d`, stored as `Gamma = W^T W`.
#[derive(Clone)]
pub struct GramModule {
    field: Arc<NumberField>,
    gram: FieldMatrix,
    rational: Option<RatMatrix>,
    dim: usize,
    label: Option<String>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Ambient {
    Real,
    Complex,
}

/// Explicit generators. Complex vectors are stored realified: each complex
/// coordinate contributes its real then imaginary part.
#[derive(Clone, Debug)]
pub struct GeneratorPresentation {
    pub field: Arc<NumberField>,
    pub ambient: Ambient,
    /// `d` for real ambient space, `m` for `C^m`.
    pub dim: usize,
    pub vectors: Vec<Vec<FieldElem>>,
}

impl GeneratorPresentation {
    pub fn real(field: &Arc<NumberField>, dim: usize, vectors: Vec<Vec<FieldElem>>) -> Self {
        GeneratorPresentation { field: field.clone(), ambient: Ambient::Real, dim, vectors }
    }

    /// Complex generators given as `(re, im)` pairs per coordinate.
    pub fn complex(
        field: &Arc<NumberField>,
        dim: usize,
        vectors: Vec<Vec<(FieldElem, FieldElem)>>,
    ) -> Self {
        let vectors = vectors
            .into_iter()
            .map(|v| v.into_iter().flat_map(|(re, im)| [re, im]).collect())
            .collect();
        GeneratorPresentation { field: field.clone(), ambient: Ambient::Complex, dim, vectors }
    }

    pub fn real_dim(&self) -> usize {
        match self.ambient {
            Ambient::Real => self.dim,
            Ambient::Complex => 2 * self.dim,
        }
    }
}

/// Lattice with rational positive definite Gram matrix.
pub fn lattice_from_gram(g: &RatMatrix) -> Result<GramModule> {
    if !g.is_square() || g.rows() == 0 {
        return Err(Error::Dimension("Gram matrix must be square and nonempty".into()));
    }
    if !g.is_symmetric() {
        return Err(Error::Validation("Gram matrix is not symmetric".into()));
    }
    for n in 1..=g.rows() {
        let idx: Vec<usize> = (0..n).collect();
        let minor = Matrix::from_fn(n, n, |i, j| g.get(idx[i], idx[j]).clone());
        if minor.det() <= num_traits::Zero::zero() {
            return Err(Error::Validation(format!(
                "Gram matrix is not positive definite (leading minor {} is {})",
                n,
                minor.det()
            )));
        }
    }
    let q = NumberField::rationals();
    Ok(GramModule {
        gram: FieldMatrix::from_rat(&q, g),
        field: q,
        rational: Some(g.clone()),
        dim: g.rows(),
        label: None,
    })
}

pub fn module_from_generators(p: &GeneratorPresentation) -> Result<GramModule> {
    let d = p.real_dim();
    if p.vectors.is_empty() {
        return Err(Error::Dimension("no generators".into()));
    }
    for v in &p.vectors {
        if v.len() != d {
            return Err(Error::Dimension(format!(
                "generator has {} real coordinates, expected {}",
                v.len(),
                d
            )));
        }
        if v.iter().any(|x| x.field() != &p.field) {
            return Err(Error::FieldMismatch);
        }
    }
    let k = p.vectors.len();
    let w = Matrix::from_fn(d, k, |i, j| p.vectors[j][i].clone());
    if !rational_kernel(&w).is_empty() {
        return Err(Error::RationallyDependent);
    }
    let gram = w.transpose().mul(&w);
    if rank(&gram) != d {
        return Err(Error::RankDeficient);
    }
    GramModule::from_gram(&p.field, gram)
}

impl GramModule {
    /// Validates a Gram matrix over `field`: symmetric, positive semidefinite of
    /// rank `d`, with trivial rational kernel.
    pub fn from_gram(field: &Arc<NumberField>, gram: FieldMatrix) -> Result<GramModule> {
        if !gram.is_square() || gram.rows() == 0 {
            return Err(Error::Dimension("Gram matrix must be square and nonempty".into()));
        }
        if gram.entries().iter().any(|x| x.field() != field) {
            return Err(Error::FieldMismatch);
        }
        if !gram.is_symmetric() {
            return Err(Error::Validation("Gram matrix is not symmetric".into()));
        }
        // Greedy nested principal submatrix of full rank; positivity of its nested
        // minors plus rank(Gamma) = d gives positive semidefiniteness.
        let mut chosen: Vec<usize> = Vec::new();
        for i in 0..gram.rows() {
            let mut trial = chosen.clone();
            trial.push(i);
            let n = trial.len();
            let sub = Matrix::from_fn(n, n, |a, b| gram.get(trial[a], trial[b]).clone());
            match det(&sub).sign() {
                Ordering::Greater => chosen = trial,
                Ordering::Equal => {}
                Ordering::Less => {
                    return Err(Error::Validation("Gram matrix is not positive semidefinite".into()))
                }
            }
        }
        let d = chosen.len();
        if rank(&gram) != d {
            return Err(Error::Validation("Gram matrix is not positive semidefinite".into()));
        }
        if !rational_kernel(&gram).is_empty() {
            return Err(Error::RationallyDependent);
        }
        let rational = gram.to_rational();
        Ok(GramModule { field: field.clone(), gram, rational, dim: d, label: None })
    }

    pub fn with_label(mut self, label: impl Into<String>) -> Self {
        self.label = Some(label.into());
        self
    }

    pub fn label(&self) -> Option<&str> {
        self.label.as_deref()
    }

    pub fn field(&self) -> &Arc<NumberField> {
        &self.field
    }

    pub fn gram(&self) -> &FieldMatrix {
        &self.gram
    }

    /// The Gram matrix when all of its entries are rational.
    pub fn rational_gram(&self) -> Option<&RatMatrix> {
        self.rational.as_ref()
    }

    /// Number of generators `k`.
    pub fn rank(&self) -> usize {
        self.gram.rows()
    }

    /// Dimension `d` of the spanned real space.
    pub fn ambient_dimension(&self) -> usize {
        self.dim
    }

    /// Full-rank lattice: `k = d` and a rational Gram matrix.
    pub fn is_lattice(&self) -> bool {
        self.rank() == self.dim && self.rational.is_some()
    }

    /// The same module presented by the generators `W U` for an invertible `U`.
    pub fn transform(&self, u: &RatMatrix) -> Result<GramModule> {
        if u.rows() != self.rank() || !u.is_square() {
            return Err(Error::Dimension("change of basis has the wrong shape".into()));
        }
        let uf = FieldMatrix::from_rat(&self.field, u);
        let gram = uf.transpose().mul(&self.gram).mul(&uf);
        let mut out = GramModule::from_gram(&self.field, gram)?;
        out.label = self.label.clone();
        Ok(out)
    }

    /// Same as [`transform`](Self::transform) with a permutation: generator `i`
    /// of the result is generator `perm[i]` of `self`.
    pub fn permute(&self, perm: &[usize]) -> Result<GramModule> {
        let k = self.rank();
        let mut seen = vec![false; k];
        if perm.len() != k || perm.iter().any(|&p| p >= k || std::mem::replace(&mut seen[p], true)) {
            return Err(Error::Dimension("not a permutation".into()));
        }
        self.transform(&permutation_matrix(perm))
    }

    /// `x^T Gamma y` for rational coordinate vectors.
    pub fn inner(&self, x: &[crate::exact::Rat], y: &[crate::exact::Rat]) -> FieldElem {
        let mut acc = FieldElem::zero(&self.field);
        for i in 0..self.rank() {
            for j in 0..self.rank() {
                let c = &x[i] * &y[j];
                if !num_traits::Zero::is_zero(&c) {
                    acc = &acc + &self.gram.get(i, j).scale(&c);
                }
            }
        }
        acc
    }
}

/// Column `i` is the unit vector `e_{perm[i]}`.
pub fn permutation_matrix(perm: &[usize]) -> RatMatrix {
    let k = perm.len();
    Matrix::from_fn(k, k, |r, c| {
        if r == perm[c] {
            num_traits::One::one()
        } else {
            num_traits::Zero::zero()
        }
    })
}

impl PartialEq for GramModule {
    fn eq(&self, other: &Self) -> bool {
        self.field == other.field && self.gram == other.gram
    }
}

impl fmt::Debug for GramModule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("GramModule")
            .field("label", &self.label)
            .field("rank", &self.rank())
            .field("dim", &self.dim)
            .field("gram", &self.gram.to_rows())
            .finish()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::rat;

    #[test]
    fn lattices() {
        let sq = lattice_from_gram(&RatMatrix::identity(2)).unwrap();
        assert_eq!(sq.ambient_dimension(), 2);
        assert!(sq.is_lattice());
        let hex = lattice_from_gram(&RatMatrix::from_i64(&[vec![2, 1], vec![1, 2]])).unwrap();
        assert_eq!(hex.rank(), 2);
        let bad = lattice_from_gram(&RatMatrix::from_i64(&[vec![1, 2], vec![2, 1]]));
        assert!(matches!(bad, Err(Error::Validation(_))));
        let asym = lattice_from_gram(&RatMatrix::from_i64(&[vec![1, 0], vec![1, 1]]));
        assert!(matches!(asym, Err(Error::Validation(_))));
    }

    #[test]
    fn real_quadratic_module() {
        let k = NumberField::real_quadratic(2).unwrap();
        let s2 = FieldElem::generator(&k);
        let p = GeneratorPresentation::real(&k, 1, vec![vec![FieldElem::one(&k)], vec![s2.clone()]]);
        let m = module_from_generators(&p).unwrap();
        assert_eq!(m.rank(), 2);
        assert_eq!(m.ambient_dimension(), 1);
        assert_eq!(m.gram().get(0, 1), &s2);
        assert_eq!(m.gram().get(1, 1), &FieldElem::from_int(&k, 2));
        assert!(!m.is_lattice());
    }

    #[test]
    fn dependent_generators() {
        let q = NumberField::rationals();
        let p = GeneratorPresentation::real(
            &q,
            1,
            vec![vec![FieldElem::one(&q)], vec![FieldElem::from_int(&q, 2)]],
        );
        assert_eq!(module_from_generators(&p).unwrap_err(), Error::RationallyDependent);
    }

    #[test]
    fn complex_generators_xi8() {
        let k = NumberField::real_quadratic(2).unwrap();
        let h = FieldElem::generator(&k).scale(&rat(1, 2));
        let zero = FieldElem::zero(&k);
        let one = FieldElem::one(&k);
        let p = GeneratorPresentation::complex(
            &k,
            1,
            vec![
                vec![(one.clone(), zero.clone())],
                vec![(zero.clone(), one.clone())],
                vec![(h.clone(), h.clone())],
                vec![(-&h, h.clone())],
            ],
        );
        let m = module_from_generators(&p).unwrap();
        assert_eq!(m.rank(), 4);
        assert_eq!(m.ambient_dimension(), 2);
        assert!(m.gram().get(0, 1).is_zero());
        assert_eq!(m.gram().get(0, 2), &h);
    }

    #[test]
    fn permutation_conjugates_gram() {
        let g = RatMatrix::from_i64(&[vec![2, 1, 0], vec![1, 3, 1], vec![0, 1, 4]]);
        let m = lattice_from_gram(&g).unwrap();
        let p = m.permute(&[2, 0, 1]).unwrap();
        let rg = p.rational_gram().unwrap();
        assert_eq!(rg.get(0, 0), &rat(4, 1));
        assert_eq!(rg.get(0, 1), &rat(0, 1));
        assert_eq!(rg.get(1, 2), &rat(1, 1));
        assert!(m.permute(&[0, 0, 1]).is_err());
    }
}
