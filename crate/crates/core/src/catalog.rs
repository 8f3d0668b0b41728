//! Built-in lattices, modules and parameterized coincidence maps.

use std::collections::HashSet;
use std::sync::Arc;

use num_integer::Integer;

use crate::engine::{intersect_csm, Submodule};
use crate::error::{Error, Result};
use crate::exact::linalg::flatten_rows;
use crate::exact::{rat, FieldElem, FieldMatrix, Int, IntMatrix, Matrix, NumberField, Poly, Rat, RatMatrix};
use crate::gram::{lattice_from_gram, GeneratorPresentation, GramModule};
use crate::maps::{make_coincidence, make_similarity, CoincidenceMap, SimilarityMap};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum PlanarRing {
    Gaussian,
    Eisenstein,
}

impl PlanarRing {
    /// Norm of `m + n i` or `m + n w`, `w = exp(2 pi i / 3)`.
    pub fn norm(self, m: i64, n: i64) -> i64 {
        match self {
            PlanarRing::Gaussian => m * m + n * n,
            PlanarRing::Eisenstein => m * m - m * n + n * n,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            PlanarRing::Gaussian => "gaussian",
            PlanarRing::Eisenstein => "eisenstein",
        }
    }

    fn matrix(self, m: i64, n: i64) -> IntMatrix {
        match self {
            PlanarRing::Gaussian => gaussian_matrix(m, n),
            PlanarRing::Eisenstein => eisenstein_matrix(m, n),
        }
    }
}

pub fn standard_lattice(name: &str) -> Result<GramModule> {
    let g = match name {
        "square" => RatMatrix::identity(2),
        "hexagonal" => RatMatrix::from_i64(&[vec![2, 1], vec![1, 2]]),
        "cubic" => RatMatrix::identity(3),
        "hypercubic4" => RatMatrix::identity(4),
        _ => return Err(Error::UnknownName(name.to_string())),
    };
    Ok(lattice_from_gram(&g)?.with_label(name))
}

/// Multiplication by `m + n i` on `Z^2` (basis `1, i`).
pub fn gaussian_matrix(m: i64, n: i64) -> IntMatrix {
    IntMatrix::from_i64(&[vec![m, -n], vec![n, m]])
}

/// Multiplication by `m + n w` in the hexagonal basis `1, 1 + w`, whose Gram
/// matrix is proportional to `[[2, 1], [1, 2]]`.
///
/// In the basis `1, w` the matrix is `[[m, -n], [n, m - n]]`; conjugating by
/// the change of basis `[[1, 1], [0, 1]]` gives the form below.
pub fn eisenstein_matrix(m: i64, n: i64) -> IntMatrix {
    IntMatrix::from_i64(&[vec![m - n, -n], vec![n, m]])
}

/// Rotation by `z^2 / N(z)` for a primitive `z` not associated to a rational integer.
pub fn planar_unit_rotation(ring: PlanarRing, m: i64, n: i64) -> Result<CoincidenceMap> {
    let associated = match ring {
        PlanarRing::Gaussian => m == 0 || n == 0,
        PlanarRing::Eisenstein => m == 0 || n == 0 || m == n,
    };
    if m.gcd(&n) != 1 || associated {
        return Err(Error::NotPrimitive(format!("{}({m},{n})", ring.name())));
    }
    let lattice = match ring {
        PlanarRing::Gaussian => standard_lattice("square")?,
        PlanarRing::Eisenstein => standard_lattice("hexagonal")?,
    };
    let z = ring.matrix(m, n);
    let t = z.mul(&z).to_rat().scale(&rat(1, ring.norm(m, n)));
    make_coincidence(&Arc::new(lattice), &t)
}

/// Rotation matrix of the quaternion `a + b i + c j + d k`, divided by `|q|^2`.
pub fn quaternion_matrix(a: i64, b: i64, c: i64, d: i64) -> Result<RatMatrix> {
    let n = a * a + b * b + c * c + d * d;
    if n == 0 {
        return Err(Error::Domain("zero quaternion".into()));
    }
    let rows = vec![
        vec![a * a + b * b - c * c - d * d, 2 * (b * c - a * d), 2 * (b * d + a * c)],
        vec![2 * (b * c + a * d), a * a - b * b + c * c - d * d, 2 * (c * d - a * b)],
        vec![2 * (b * d - a * c), 2 * (c * d + a * b), a * a - b * b - c * c + d * d],
    ];
    Ok(RatMatrix::from_i64(&rows).scale(&rat(1, n)))
}

/// `q` is the largest of `q u`, `u` running over the eight units `+-1, +-i, +-j, +-k`.
fn is_unit_class_representative(q: [i64; 4]) -> bool {
    let [a, b, c, d] = q;
    let class = [[a, b, c, d], [-b, a, d, -c], [-c, -d, a, b], [-d, c, -b, a]];
    class.iter().flat_map(|p| [*p, p.map(|x| -x)]).all(|p| p <= q)
}

/// Denominator of the reduced rotation matrix of a nonzero quaternion.
fn quaternion_den(a: i64, b: i64, c: i64, d: i64) -> i64 {
    let n = a * a + b * b + c * c + d * d;
    let entries = [
        a * a + b * b - c * c - d * d,
        2 * (b * c - a * d),
        2 * (b * d + a * c),
        2 * (b * c + a * d),
        a * a - b * b + c * c - d * d,
        2 * (c * d - a * b),
        2 * (b * d - a * c),
        2 * (c * d + a * b),
        a * a - b * b - c * c + d * d,
    ];
    n / entries.iter().fold(n, |g, x| g.gcd(x))
}

pub fn quaternion_rotation(a: i64, b: i64, c: i64, d: i64) -> Result<CoincidenceMap> {
    let t = quaternion_matrix(a, b, c, d)?;
    if [b, c, d].iter().fold(a, |g, x| g.gcd(x)) != 1 {
        return Err(Error::NotPrimitive(format!("quaternion({a},{b},{c},{d})")));
    }
    make_coincidence(&Arc::new(standard_lattice("cubic")?), &t)
}

/// Left multiplication by `a + b i + c j + d k` on `Z^4` (basis `1, i, j, k`).
pub fn quaternion_left(a: i64, b: i64, c: i64, d: i64) -> IntMatrix {
    IntMatrix::from_i64(&[
        vec![a, -b, -c, -d],
        vec![b, a, -d, c],
        vec![c, d, a, -b],
        vec![d, -c, b, a],
    ])
}

/// Right multiplication by `a + b i + c j + d k` on `Z^4`.
pub fn quaternion_right(a: i64, b: i64, c: i64, d: i64) -> IntMatrix {
    IntMatrix::from_i64(&[
        vec![a, -b, -c, -d],
        vec![b, a, d, -c],
        vec![c, -d, a, b],
        vec![d, c, -b, a],
    ])
}

/// Field, cosine table (`cos(2 pi j / n)`, j = 0..3) and cyclotomic polynomial.
fn cyclotomic_data(n: u32) -> Result<(Arc<NumberField>, Vec<FieldElem>, Poly)> {
    match n {
        5 => {
            let k = NumberField::new(&[(-1).into(), (-1).into(), 1.into()], rat(1, 1), rat(2, 1))?;
            let tau = FieldElem::generator(&k);
            let half = rat(1, 2);
            let c1 = (&tau - &FieldElem::one(&k)).scale(&half);
            let c2 = tau.scale(&rat(-1, 2));
            let cos = vec![FieldElem::one(&k), c1, c2.clone(), c2];
            Ok((k, cos, Poly::from_ints([1, 1, 1, 1, 1])))
        }
        8 => {
            let k = NumberField::real_quadratic(2)?;
            let h = FieldElem::generator(&k).scale(&rat(1, 2));
            let cos = vec![FieldElem::one(&k), h.clone(), FieldElem::zero(&k), -&h];
            Ok((k, cos, Poly::from_ints([1, 0, 0, 0, 1])))
        }
        12 => {
            let k = NumberField::real_quadratic(3)?;
            let h = FieldElem::generator(&k).scale(&rat(1, 2));
            let cos = vec![
                FieldElem::one(&k),
                h,
                FieldElem::from_rat(&k, rat(1, 2)),
                FieldElem::zero(&k),
            ];
            Ok((k, cos, Poly::from_ints([1, 0, -1, 0, 1])))
        }
        _ => Err(Error::Unsupported(format!("cyclotomic order {n}"))),
    }
}

/// `Z[xi_n]` as a rank-4 planar module with basis `1, xi, xi^2, xi^3`.
pub fn cyclotomic_module(n: u32) -> Result<GramModule> {
    let (k, cos, _) = cyclotomic_data(n)?;
    let gram = Matrix::from_fn(4, 4, |i, j| cos[i.abs_diff(j)].clone());
    Ok(GramModule::from_gram(&k, gram)?.with_label(format!("cyclotomic{n}")))
}

/// Multiplication by `sum z_i xi^i` in the basis `1, xi, xi^2, xi^3`.
pub fn cyclotomic_multiplication(n: u32, z: &[i64]) -> Result<IntMatrix> {
    let (_, _, phi) = cyclotomic_data(n)?;
    poly_multiplication(&phi, z)
}

/// Complex conjugation `xi^j -> xi^(-j)` on `Z[xi_n]`, an integral symmetry.
pub fn cyclotomic_conjugation(n: u32) -> Result<IntMatrix> {
    let (_, _, phi) = cyclotomic_data(n)?;
    let one = Rat::from_integer(1.into());
    let cols: Vec<Vec<Rat>> = (0..4)
        .map(|j| {
            let p = Poly::monomial(one.clone(), (n as usize - j) % n as usize).rem(&phi);
            (0..4).map(|i| p.coeff(i)).collect()
        })
        .collect();
    Ok(Matrix::from_fn(4, 4, |i, j| cols[j][i].to_integer()))
}

fn poly_multiplication(modulus: &Poly, z: &[i64]) -> Result<IntMatrix> {
    let k = modulus.degree().unwrap_or(0);
    if z.len() > k || z.iter().all(|&x| x == 0) {
        return Err(Error::Domain("need a nonzero coefficient vector of length at most the rank".into()));
    }
    let zp = Poly::from_ints(z.iter().copied());
    let cols: Vec<Vec<Rat>> = (0..k)
        .map(|j| {
            let prod = zp.mul(&Poly::monomial(Rat::from_integer(1.into()), j)).rem(modulus);
            (0..k).map(|i| prod.coeff(i)).collect()
        })
        .collect();
    Ok(Matrix::from_fn(k, k, |i, j| cols[j][i].to_integer()))
}

/// Realified generators `1, i, 2 xi_8, -2 conj(xi_8) = 2 xi_8^3` over `Q(sqrt 2)`.
pub fn xi8_index4_generators() -> Result<GeneratorPresentation> {
    let k = NumberField::real_quadratic(2)?;
    let s = FieldElem::generator(&k);
    let zero = FieldElem::zero(&k);
    let one = FieldElem::one(&k);
    Ok(GeneratorPresentation::complex(
        &k,
        1,
        vec![
            vec![(one.clone(), zero.clone())],
            vec![(zero.clone(), one)],
            vec![(s.clone(), s.clone())],
            vec![(-&s, s)],
        ],
    ))
}

pub fn xi8_index4_submodule() -> Result<GramModule> {
    let p = xi8_index4_generators()?;
    Ok(crate::gram::module_from_generators(&p)?.with_label("xi8-index4"))
}

/// Index of the span of the given realified generators in `Z[xi_8]`, computed
/// from their rational coordinates in the basis `1, xi, xi^2, xi^3`.
pub fn index_in_z_xi8(p: &GeneratorPresentation) -> Result<Int> {
    let k = &p.field;
    let h = FieldElem::generator(k).scale(&rat(1, 2));
    let zero = FieldElem::zero(k);
    let one = FieldElem::one(k);
    let basis = [
        vec![one.clone(), zero.clone()],
        vec![h.clone(), h.clone()],
        vec![zero.clone(), one],
        vec![-&h, h],
    ];
    let w = FieldMatrix::from_fn(2, 4, |i, j| basis[j][i].clone());
    let g = FieldMatrix::from_fn(2, p.vectors.len(), |i, j| p.vectors[j][i].clone());
    let sol = crate::exact::linalg::solve(&flatten_rows(&w), &flatten_rows(&g))?
        .ok_or_else(|| Error::Validation("generators outside Q(xi_8)".into()))?;
    let coords = sol
        .particular
        .to_int()
        .ok_or_else(|| Error::Validation("generators outside Z[xi_8]".into()))?;
    let sub = Submodule::from_generators(&coords)?;
    Ok(sub.index)
}

/// Shipped constants for `Z[eta]`, `eta^3 + 3 eta - 1 = 0`, `Im eta > 0`.
///
/// The field is `Q(rho)` with `rho` the real root of the same cubic, so that
/// `|eta|^2 = 1/rho` and `Re eta = -rho/2`. Gram entries are coefficient
/// vectors in `1, rho, rho^2`.
pub const ETA_GRAM: [[[(i64, i64); 3]; 3]; 3] = [
    [[(1, 1), (0, 1), (0, 1)], [(0, 1), (-1, 2), (0, 1)], [(-3, 1), (0, 1), (-1, 2)]],
    [[(0, 1), (-1, 2), (0, 1)], [(3, 1), (0, 1), (1, 1)], [(-1, 2), (0, 1), (0, 1)]],
    [[(-3, 1), (0, 1), (-1, 2)], [(-1, 2), (0, 1), (0, 1)], [(9, 1), (1, 1), (3, 1)]],
];

pub fn eta_field() -> Result<Arc<NumberField>> {
    NumberField::new(&[(-1).into(), 3.into(), 0.into(), 1.into()], rat(0, 1), rat(1, 1))
}

pub fn eta_module() -> Result<GramModule> {
    eta_module_from(&ETA_GRAM)
}

/// Builds the module from (possibly altered) constants, re-deriving every
/// entry from `eta^3 + 3 eta - 1 = 0` first.
pub fn eta_module_from(constants: &[[[(i64, i64); 3]; 3]; 3]) -> Result<GramModule> {
    let k = eta_field()?;
    let elem = |c: &[(i64, i64); 3]| {
        FieldElem::new(&k, c.iter().map(|&(p, q)| rat(p, q)).collect()).expect("degree 3")
    };
    let gram = Matrix::from_fn(3, 3, |i, j| elem(&constants[i][j]));
    let rho = FieldElem::generator(&k);
    let a = rho.scale(&rat(-1, 2));
    let norm = rho.inv().expect("nonzero");
    let b2 = &norm - &(&a * &a);
    let one = FieldElem::one(&k);
    let three = FieldElem::from_int(&k, 3);
    // real and imaginary parts of eta^3 + 3 eta - 1 with eta = a + b i
    let re = &(&(&(&a * &a) * &a) - &(&three * &(&a * &b2))) + &(&(&three * &a) - &one);
    let im = &(&(&three * &(&a * &a)) - &b2) + &three;
    if !re.is_zero() || !im.is_zero() || !b2.is_positive() {
        return Err(Error::CorruptedCatalog("eta relations fail".into()));
    }
    // Gamma_ij = Re(eta^i conj(eta)^j)
    let re_pow = [one.clone(), a.clone(), &(&a * &a) - &b2];
    let expected = [
        [re_pow[0].clone(), re_pow[1].clone(), re_pow[2].clone()],
        [re_pow[1].clone(), norm.clone(), &norm * &a],
        [re_pow[2].clone(), &norm * &a, &norm * &norm],
    ];
    for i in 0..3 {
        for j in 0..3 {
            if gram.get(i, j) != &expected[i][j] {
                return Err(Error::CorruptedCatalog(format!("eta Gram entry ({i},{j})")));
            }
        }
    }
    Ok(GramModule::from_gram(&k, gram)?.with_label("eta"))
}

/// Multiplication by `sum z_i eta^i` on `Z[eta]`.
pub fn eta_multiplication(z: &[i64]) -> Result<IntMatrix> {
    poly_multiplication(&Poly::from_ints([-1, 3, 0, 1]), z)
}

/// Multiplication by an integral combination of the basis as a similarity map
/// on a cyclotomic or the eta module (identified by label).
pub fn multiplication_map(m: &Arc<GramModule>, z: &[i64]) -> Result<SimilarityMap> {
    let a = match m.label() {
        Some("cyclotomic5") => cyclotomic_multiplication(5, z)?,
        Some("cyclotomic8") => cyclotomic_multiplication(8, z)?,
        Some("cyclotomic12") => cyclotomic_multiplication(12, z)?,
        Some("eta") => eta_multiplication(z)?,
        _ => return Err(Error::Unsupported("module has no known multiplicative structure".into())),
    };
    make_similarity(m, &a.to_rat())
}

/// One enumerated coincidence map with its invariants.
#[derive(Clone, Debug)]
pub struct CatalogEntry {
    pub label: String,
    pub params: Vec<i64>,
    pub map: CoincidenceMap,
    pub csm: Submodule,
    pub sigma: Int,
    pub den: Int,
    pub den_inv: Int,
}

impl CatalogEntry {
    fn new(label: String, params: Vec<i64>, map: CoincidenceMap) -> CatalogEntry {
        let csm = intersect_csm(&map);
        let den = map.denominator_lcm();
        let den_inv = map.inverse().denominator_lcm();
        CatalogEntry { label, params, sigma: csm.index.clone(), csm, map, den, den_inv }
    }

    pub fn params_string(&self) -> String {
        self.params.iter().map(|p| p.to_string()).collect::<Vec<_>>().join(" ")
    }
}

/// Candidate parameters ordered by norm, then lexicographically.
fn planar_candidates(ring: PlanarRing, max_norm: i64) -> Vec<(i64, i64)> {
    let b = ((2 * max_norm) as f64).sqrt() as i64 + 1;
    let mut out: Vec<(i64, i64)> = (-b..=b)
        .flat_map(|m| (-b..=b).map(move |n| (m, n)))
        .filter(|&(m, n)| ring.norm(m, n) <= max_norm && planar_unit_rotation(ring, m, n).is_ok())
        .collect();
    out.sort_by_key(|&(m, n)| (ring.norm(m, n), m, n));
    out
}

/// All coincidence maps with `Sigma <= sigma_max` from the primitive
/// parameterizations, one per coincidence site lattice, sorted by `(Sigma, label)`.
pub fn enumerate_coincidence(name: &str, sigma_max: u64) -> Result<Vec<CatalogEntry>> {
    let lattice = Arc::new(standard_lattice(name)?);
    let mut entries = vec![CatalogEntry::new("identity".into(), vec![], CoincidenceMap::identity(&lattice))];
    let limit = Int::from(sigma_max);
    let mut candidates: Vec<(String, Vec<i64>, CoincidenceMap)> = Vec::new();
    match name {
        "square" | "hexagonal" => {
            let (ring, factor) = if name == "square" {
                (PlanarRing::Gaussian, 2)
            } else {
                (PlanarRing::Eisenstein, 3)
            };
            for (m, n) in planar_candidates(ring, factor * sigma_max as i64) {
                let t = planar_unit_rotation(ring, m, n)?;
                let t = make_coincidence(&lattice, t.matrix())?;
                candidates.push((format!("{}({m},{n})", ring.name()), vec![m, n], t));
            }
        }
        "cubic" => {
            let max = 4 * sigma_max as i64;
            let b = (max as f64).sqrt() as i64 + 1;
            let mut qs = Vec::new();
            for a in 0..=b {
                for bb in -b..=b {
                    for c in -b..=b {
                        for d in -b..=b {
                            let n = a * a + bb * bb + c * c + d * d;
                            if n == 0 || n > max {
                                continue;
                            }
                            if [bb, c, d].iter().fold(a, |g, x| g.gcd(x)) != 1 {
                                continue;
                            }
                            // q u with u in {+-1, +-i, +-j, +-k} composes with a lattice symmetry
                            if !is_unit_class_representative([a, bb, c, d]) {
                                continue;
                            }
                            qs.push((n, a, bb, c, d));
                        }
                    }
                }
            }
            qs.sort();
            for (_, a, bb, c, d) in qs {
                // Sigma >= den, and den is readable off the integral numerator
                if quaternion_den(a, bb, c, d) > sigma_max as i64 {
                    continue;
                }
                let t = make_coincidence(&lattice, &quaternion_matrix(a, bb, c, d)?)?;
                candidates.push((format!("quaternion({a},{bb},{c},{d})"), vec![a, bb, c, d], t));
            }
        }
        _ => return Err(Error::UnknownName(name.to_string())),
    }
    let mut seen: HashSet<IntMatrix> = HashSet::new();
    seen.insert(entries[0].csm.h.clone());
    for (label, params, t) in candidates {
        // cheap bound: Sigma >= den
        if t.denominator_lcm() > limit {
            continue;
        }
        let entry = CatalogEntry::new(label, params, t);
        if entry.sigma > limit || !seen.insert(entry.csm.h.clone()) {
            continue;
        }
        entries.push(entry);
    }
    entries.sort_by(|a, b| (&a.sigma, &a.label).cmp(&(&b.sigma, &b.label)));
    Ok(entries)
}

/// Integral rotations and reflections of a lattice with small entries.
pub fn point_group(m: &Arc<GramModule>) -> Vec<IntMatrix> {
    let k = m.rank();
    let mut out = Vec::new();
    let vals = [-1i64, 0, 1];
    let total = 3usize.pow((k * k) as u32);
    if k > 3 {
        return out;
    }
    for code in 0..total {
        let mut c = code;
        let entries: Vec<Int> = (0..k * k)
            .map(|_| {
                let v = vals[c % 3];
                c /= 3;
                Int::from(v)
            })
            .collect();
        let a = Matrix::new(k, k, entries).expect("shape");
        if make_coincidence(m, &a.to_rat()).is_ok() {
            out.push(a);
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn named_lattices() {
        assert_eq!(standard_lattice("cubic").unwrap().rank(), 3);
        assert!(matches!(standard_lattice("diamond"), Err(Error::UnknownName(_))));
    }

    #[test]
    fn planar_rotations() {
        let t = planar_unit_rotation(PlanarRing::Gaussian, 2, 1).unwrap();
        assert_eq!(t.matrix(), &RatMatrix::from_i64(&[vec![3, -4], vec![4, 3]]).scale(&rat(1, 5)));
        assert!(planar_unit_rotation(PlanarRing::Gaussian, 1, 0).is_err());
        let e = planar_unit_rotation(PlanarRing::Eisenstein, 3, 1).unwrap();
        assert_eq!(e.denominator_lcm(), Int::from(7));
        // (3 + w)^2 = 8 + 5w
        assert_eq!(
            eisenstein_matrix(3, 1).mul(&eisenstein_matrix(3, 1)),
            eisenstein_matrix(8, 5)
        );
    }

    #[test]
    fn quaternions() {
        assert!(quaternion_rotation(1, 0, 0, 0).unwrap().is_identity());
        let t = quaternion_rotation(1, 1, 0, 0).unwrap();
        assert_eq!(t.matrix(), &RatMatrix::from_i64(&[vec![1, 0, 0], vec![0, 0, -1], vec![0, 1, 0]]));
        assert!(quaternion_rotation(0, 0, 0, 0).is_err());
        assert!(quaternion_rotation(2, 2, 0, 0).is_err());
    }

    #[test]
    fn cyclotomic_grams() {
        let m8 = cyclotomic_module(8).unwrap();
        let k = m8.field().clone();
        assert_eq!(m8.gram().get(0, 1), &FieldElem::generator(&k).scale(&rat(1, 2)));
        assert_eq!(m8.ambient_dimension(), 2);
        let m5 = cyclotomic_module(5).unwrap();
        assert_eq!(m5.ambient_dimension(), 2);
        assert!(cyclotomic_module(7).is_err());
        let x = cyclotomic_multiplication(8, &[0, 1]).unwrap();
        assert_eq!(x.mul(&x).mul(&x).mul(&x), IntMatrix::identity(4).map(|v| -v));
    }

    #[test]
    fn xi8_index() {
        let p = xi8_index4_generators().unwrap();
        assert_eq!(index_in_z_xi8(&p).unwrap(), Int::from(4));
    }

    #[test]
    fn eta_constants() {
        let m = eta_module().unwrap();
        assert_eq!(m.rank(), 3);
        assert_eq!(m.ambient_dimension(), 2);
        let mut bad = ETA_GRAM;
        bad[2][2][0] = (8, 1);
        assert!(matches!(eta_module_from(&bad), Err(Error::CorruptedCatalog(_))));
        assert_eq!(
            eta_multiplication(&[0, 1]).unwrap(),
            IntMatrix::from_i64(&[vec![0, 0, 1], vec![1, 0, -3], vec![0, 1, 0]])
        );
    }
}
