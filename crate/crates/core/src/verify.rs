//! Seeded verification suites over the catalogs and random maps.

use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use num_integer::Integer;
use num_traits::{Signed, ToPrimitive};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};

use crate::catalog::{
    cyclotomic_conjugation, cyclotomic_module, eisenstein_matrix, enumerate_coincidence, eta_module, gaussian_matrix,
    index_in_z_xi8, multiplication_map, quaternion_left, quaternion_matrix, quaternion_right, standard_lattice,
    xi8_index4_generators, xi8_index4_submodule,
};
use crate::engine::{
    chain_index, csl_square_root_witness, divisibility_report, intersect_csm, is_similar_sublattice_2d, oracle_index,
    sigma, sum_index, DivisibilityReport, ORACLE_CAP,
};
use crate::error::{Error, Result};
use crate::exact::normal_form::lattice_basis;
use crate::exact::{Int, IntMatrix, Poly, Rat, RatMatrix};
use crate::gram::{permutation_matrix, GramModule};
use crate::maps::{make_coincidence, make_similarity, CoincidenceMap, SimilarityMap};
use crate::rings::{degree_check, multiplier_ring, MultiplierRing};
use crate::scale::ScaleValue;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Suite {
    DenSig,
    ScalGroup,
    SigmaInv,
    Rings,
    All,
}

impl FromStr for Suite {
    type Err = Error;

    fn from_str(s: &str) -> Result<Suite> {
        Ok(match s {
            "den-sig" => Suite::DenSig,
            "scal-group" => Suite::ScalGroup,
            "sigma-inv" => Suite::SigmaInv,
            "rings" => Suite::Rings,
            "all" => Suite::All,
            other => return Err(Error::UnknownName(other.to_string())),
        })
    }
}

/// Counts for one named claim, with the smallest failing instance.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Claim {
    pub name: String,
    pub checked: usize,
    pub failed: usize,
    pub counterexample: Option<(u64, String)>,
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct SuiteReport {
    pub claims: Vec<Claim>,
}

impl SuiteReport {
    pub fn passed(&self) -> bool {
        self.claims.iter().all(|c| c.failed == 0)
    }

    /// Records one instance; `size` orders counterexamples, smallest kept.
    pub fn record(&mut self, name: &str, ok: bool, size: u64, describe: impl FnOnce() -> String) {
        let pos = match self.claims.iter().position(|c| c.name == name) {
            Some(p) => p,
            None => {
                self.claims.push(Claim { name: name.to_string(), checked: 0, failed: 0, counterexample: None });
                self.claims.len() - 1
            }
        };
        let c = &mut self.claims[pos];
        c.checked += 1;
        if !ok {
            c.failed += 1;
            if c.counterexample.as_ref().is_none_or(|(s, _)| size < *s) {
                c.counterexample = Some((size, describe()));
            }
        }
    }

    pub fn get(&self, name: &str) -> Option<&Claim> {
        self.claims.iter().find(|c| c.name == name)
    }

    pub fn to_json(&self) -> Value {
        let claims: Vec<Value> = self
            .claims
            .iter()
            .map(|c| {
                json!({
                    "claim": c.name,
                    "checked": c.checked,
                    "failed": c.failed,
                    "counterexample": c.counterexample.as_ref().map(|x| x.1.clone()),
                })
            })
            .collect();
        json!({"passed": self.passed(), "claims": claims})
    }
}

impl fmt::Display for SuiteReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for c in &self.claims {
            let status = if c.failed == 0 { "ok" } else { "FAIL" };
            writeln!(f, "{status:4} {:40} {}/{}", c.name, c.checked - c.failed, c.checked)?;
            if let Some((_, ex)) = &c.counterexample {
                writeln!(f, "     counterexample: {ex}")?;
            }
        }
        write!(f, "{}", if self.passed() { "all claims hold" } else { "verification failed" })
    }
}

const PYTHAGOREAN: [(i64, i64); 8] = [(1, 0), (1, 1), (2, 1), (1, 2), (3, 1), (1, 3), (3, 2), (2, 3)];

/// Random signed permutation matrix.
pub fn signed_permutation(rng: &mut impl Rng, d: usize) -> IntMatrix {
    let mut perm: Vec<usize> = (0..d).collect();
    perm.shuffle(rng);
    let signs: Vec<i64> = (0..d).map(|_| if rng.gen_bool(0.5) { 1 } else { -1 }).collect();
    IntMatrix::from_fn(d, d, |i, j| if perm[j] == i { Int::from(signs[j]) } else { Int::from(0) })
}

/// Exactly orthogonal rational matrix: a signed permutation followed by
/// `factors` rotations in random coordinate planes with angles from
/// Pythagorean triples.
pub fn random_rotation(rng: &mut impl Rng, d: usize, factors: usize) -> RatMatrix {
    let mut t = signed_permutation(rng, d).to_rat();
    for _ in 0..factors {
        let i = rng.gen_range(0..d);
        let j = (i + rng.gen_range(1..d)) % d;
        let (a, b) = *PYTHAGOREAN.choose(rng).expect("nonempty");
        let n = a * a + b * b;
        let c = Rat::new((a * a - b * b).into(), n.into());
        let s = Rat::new((2 * a * b).into(), n.into());
        let mut g = RatMatrix::identity(d);
        g.set(i, i, c.clone());
        g.set(j, j, c);
        g.set(i, j, -s.clone());
        g.set(j, i, s);
        t = g.mul(&t);
    }
    t
}

/// Random coincidence isometries of `Z^d`, cycling through `d = 2, 3, 4`.
pub fn random_orthogonal_maps(rng: &mut impl Rng, count: usize) -> Vec<CoincidenceMap> {
    let lattices: Vec<Arc<GramModule>> = ["square", "cubic", "hypercubic4"]
        .iter()
        .map(|n| Arc::new(standard_lattice(n).expect("builtin")))
        .collect();
    (0..count)
        .map(|i| {
            let m = &lattices[i % 3];
            let d = m.rank();
            let factors = rng.gen_range(1..=if d == 2 { 2 } else { 3 });
            make_coincidence(m, &random_rotation(rng, d, factors)).expect("orthogonal by construction")
        })
        .collect()
}

fn nonzero_pair(rng: &mut impl Rng, r: i64) -> (i64, i64) {
    loop {
        let p = (rng.gen_range(-r..=r), rng.gen_range(-r..=r));
        if p != (0, 0) {
            return p;
        }
    }
}

fn nonzero_quaternion(rng: &mut impl Rng, r: i64) -> [i64; 4] {
    loop {
        let q = [0; 4].map(|_| rng.gen_range(-r..=r));
        if q.iter().any(|&x| x != 0) {
            return q;
        }
    }
}

/// Random similarity of a named standard lattice.
pub fn random_similarity(rng: &mut impl Rng, m: &Arc<GramModule>) -> Result<SimilarityMap> {
    let a = match m.label() {
        Some("square") => {
            let (x, y) = nonzero_pair(rng, 4);
            gaussian_matrix(x, y).mul(&signed_permutation(rng, 2)).to_rat()
        }
        Some("hexagonal") => {
            let (x, y) = nonzero_pair(rng, 4);
            // multiplication composed with a unit or with the reflection swapping the basis
            let z = eisenstein_matrix(x, y);
            let u = match rng.gen_range(0..3) {
                0 => IntMatrix::identity(2),
                1 => eisenstein_matrix(0, 1),
                _ => IntMatrix::from_i64(&[vec![0, 1], vec![1, 0]]),
            };
            z.mul(&u).to_rat()
        }
        Some("cubic") => {
            let [a, b, c, d] = nonzero_quaternion(rng, 3);
            quaternion_matrix(a, b, c, d)?.mul(&signed_permutation(rng, 3).to_rat())
        }
        Some("hypercubic4") => {
            let [a, b, c, d] = nonzero_quaternion(rng, 2);
            let [e, f, g, h] = nonzero_quaternion(rng, 2);
            quaternion_left(a, b, c, d).mul(&quaternion_right(e, f, g, h)).mul(&signed_permutation(rng, 4)).to_rat()
        }
        _ => return Err(Error::Unsupported("random similarities need a standard lattice".into())),
    };
    make_similarity(m, &a)
}

fn z_conj(n: u32, z: &[i64]) -> Result<IntMatrix> {
    Ok(cyclotomic_conjugation(n)?.mul(&crate::catalog::cyclotomic_multiplication(n, z)?).mul(&cyclotomic_conjugation(n)?))
}

/// Similarities of `Z[xi_n]`: multiplications, possibly composed with
/// conjugation, and coincidence rotations `z / conj(z)`.
pub fn cyclotomic_pool(rng: &mut impl Rng, n: u32, size: usize) -> Result<Vec<SimilarityMap>> {
    let m = Arc::new(cyclotomic_module(n)?);
    let conj = cyclotomic_conjugation(n)?.to_rat();
    let mut out = Vec::with_capacity(size);
    while out.len() < size {
        let z: Vec<i64> = (0..4).map(|_| rng.gen_range(-2..=2)).collect();
        if z.iter().all(|&x| x == 0) {
            continue;
        }
        let mz = crate::catalog::cyclotomic_multiplication(n, &z)?.to_rat();
        let a = match out.len() % 3 {
            0 => mz,
            1 => mz.mul(&conj),
            _ => mz.mul(&z_conj(n, &z)?.to_rat().inverse().ok_or(Error::RankDeficient)?),
        };
        out.push(make_similarity(&m, &a)?);
    }
    Ok(out)
}

/// Similarities of the square lattice: Gaussian multiplications times symmetries.
pub fn square_pool(rng: &mut impl Rng, size: usize) -> Result<Vec<SimilarityMap>> {
    let m = Arc::new(standard_lattice("square")?);
    (0..size).map(|_| random_similarity(rng, &m)).collect()
}

fn describe_map(t: &RatMatrix) -> String {
    crate::io::rat_matrix_json(t).to_string()
}

fn sigma_size(t: &CoincidenceMap) -> u64 {
    t.denominator_lcm().to_u64().unwrap_or(u64::MAX)
}

/// Index identities and divisibility relations for one lattice coincidence map.
pub fn check_coincidence(rep: &mut SuiteReport, t: &CoincidenceMap) -> Result<()> {
    let size = sigma_size(t);
    let desc = || describe_map(t.matrix());
    let csm = intersect_csm(t);
    let s = csm.index.clone();
    rep.record("sigma_equals_sum_index", s == sum_index(t), size, desc);
    if s <= Int::from(1000) {
        let o = oracle_index(&csm.h, ORACLE_CAP)?;
        rep.record("sigma_equals_oracle", s == o, size, desc);
    }
    rep.record("sigma_of_inverse", s == sigma(&t.inverse()), size, desc);
    let r = divisibility_report(&t.as_similarity())?;
    rep.record("divisibility_report_consistent", r.is_consistent(), size, desc);
    for (name, ok) in &r.checks {
        rep.record(name, *ok, size, desc);
    }
    let a = r.den.lcm(&r.den_inv);
    let d = t.matrix().rows() as u32;
    let expected = Rat::new(num_traits::pow(a.clone(), d as usize), &s * &s);
    let chain = chain_index(t, &a).map(Rat::from_integer);
    rep.record("chain_index", chain == Some(expected), size, desc);
    Ok(())
}

/// Planar similar-sublattice checks for one square or hexagonal rotation.
pub fn check_planar_ssl(rep: &mut SuiteReport, t: &CoincidenceMap) -> Result<()> {
    let m = t.module();
    let size = sigma_size(t);
    let desc = || describe_map(t.matrix());
    let csm = intersect_csm(t);
    let factor = is_similar_sublattice_2d(m, &csm)?;
    rep.record("csl_is_similar_sublattice", factor.is_some(), size, desc);
    if t.matrix().det().is_positive() {
        let ok = match csl_square_root_witness(t) {
            Ok(w) => {
                let s = w.root.matrix();
                // den(S) S is the integral matrix of the witness, so its columns span the CSL
                let den_sq = w.root.denominator()?.square().as_rational();
                let same = lattice_basis(s) == csm.h;
                let square = match &w.symmetry {
                    None => s.mul(s).to_rat() == t.matrix().scale(&Rat::from_integer(csm.index.clone())),
                    Some(p) => make_coincidence(m, &p.to_rat()).is_ok(),
                };
                let factor_ok = factor.is_some() && factor == den_sq;
                same && square && factor_ok
            }
            Err(_) => false,
        };
        rep.record("square_root_witness", ok, size, desc);
    }
    Ok(())
}

/// `den(R) den(S) / den(RS)` is a positive integer.
pub fn check_similarity_pair(rep: &mut SuiteReport, r: &SimilarityMap, s: &SimilarityMap) -> Result<()> {
    let rs = r.compose(s)?;
    let q = r.denominator()?.mul(&s.denominator()?)?.div(&rs.denominator()?)?;
    let ok = q.as_integer().is_some_and(|n| n.is_positive());
    let size = rs.scale_squared().as_rational().and_then(|x| x.to_integer().to_u64()).unwrap_or(u64::MAX);
    rep.record("den_multiplicativity", ok, size, || {
        format!("R = {}, S = {}", describe_map(&r.matrix().to_rat()), describe_map(&s.matrix().to_rat()))
    });
    check_similarity_lemmas(rep, r)
}

/// `den(R) den(R^{-1})` and `den(R)^(d-1) / den(R^{-1})` are positive integers.
pub fn check_similarity_lemmas(rep: &mut SuiteReport, r: &SimilarityMap) -> Result<()> {
    let d = r.module().ambient_dimension() as u32;
    let den = r.denominator()?;
    let den_inv = r.inverse().denominator()?;
    let positive_int = |x: ScaleValue| x.as_integer().is_some_and(|n| n.is_positive());
    let size = r.scale_squared().as_rational().and_then(|x| x.to_integer().to_u64()).unwrap_or(u64::MAX);
    let desc = || describe_map(&r.matrix().to_rat());
    rep.record("similarity_den_times_den_inverse", positive_int(den.mul(&den_inv)?), size, desc);
    rep.record("similarity_den_power_over_den_inverse", positive_int(den.pow(d - 1).div(&den_inv)?), size, desc);
    Ok(())
}

pub fn check_injected(rep: &mut SuiteReport, r: &DivisibilityReport) {
    let ok = r.is_consistent() && r.all_passed();
    let size = r.sigma.to_u64().unwrap_or(u64::MAX);
    rep.record("injected_reports", ok, size, || {
        format!("den = {}, den_inv = {}, sigma = {}, failing: {:?}", r.den, r.den_inv, r.sigma, r.failed())
    });
}

fn catalog_maps(sigma_max: u64) -> Result<Vec<CoincidenceMap>> {
    let mut out = Vec::new();
    for name in ["square", "hexagonal", "cubic"] {
        out.extend(enumerate_coincidence(name, sigma_max)?.into_iter().map(|e| e.map));
    }
    Ok(out)
}

fn den_sig(rep: &mut SuiteReport, rng: &mut ChaCha8Rng) -> Result<()> {
    for t in catalog_maps(50)? {
        check_coincidence(rep, &t)?;
        if t.matrix().rows() == 2 && sigma(&t) <= Int::from(30) {
            check_planar_ssl(rep, &t)?;
        }
    }
    for t in random_orthogonal_maps(rng, 210) {
        check_coincidence(rep, &t)?;
    }
    for name in ["square", "hexagonal", "cubic", "hypercubic4"] {
        let m = Arc::new(standard_lattice(name)?);
        for _ in 0..100 {
            let r = random_similarity(rng, &m)?;
            let s = random_similarity(rng, &m)?;
            check_similarity_pair(rep, &r, &s)?;
        }
    }
    Ok(())
}

fn sigma_inv(rep: &mut SuiteReport, rng: &mut ChaCha8Rng) -> Result<()> {
    let mut maps = catalog_maps(50)?;
    maps.extend(random_orthogonal_maps(rng, 60));
    for t in &maps {
        rep.record("sigma_of_inverse", sigma(t) == sigma(&t.inverse()), sigma_size(t), || describe_map(t.matrix()));
    }
    for n in [5, 8, 12] {
        for f in cyclotomic_pool(rng, n, 24)? {
            if let Some(t) = f.is_coincidence() {
                let size = sigma_size(&t);
                rep.record("module_sigma_of_inverse", sigma(&t) == sigma(&t.inverse()), size, || {
                    format!("cyclotomic{n}: {}", describe_map(t.matrix()))
                });
                rep.record("module_sigma_equals_sum_index", sigma(&t) == sum_index(&t), size, || {
                    format!("cyclotomic{n}: {}", describe_map(t.matrix()))
                });
            }
        }
    }
    Ok(())
}

/// Coset group law, inverse law and kernel equivalence over a pool of maps.
pub fn check_coset_pool(rep: &mut SuiteReport, label: &str, ring: &MultiplierRing, pool: &[SimilarityMap]) -> Result<()> {
    let desc = |f: &SimilarityMap| format!("{label}: {}", describe_map(&f.matrix().to_rat()));
    for (i, r) in pool.iter().enumerate() {
        let cr = ring.coset_of(r)?;
        let inv = ring.coset_mul(&cr, &ring.coset_of(&r.inverse())?)?;
        rep.record("coset_inverse_is_unit", ring.is_unit(&inv), i as u64, || desc(r));
        let phi = ring.phi_kernel_test(r)?;
        rep.record("kernel_equals_coincidences", phi == r.is_coincidence().is_some(), i as u64, || desc(r));
        for (j, s) in pool.iter().enumerate() {
            let rs = r.compose(s)?;
            let lhs = ring.coset_of(&rs)?;
            let rhs = ring.coset_mul(&cr, &ring.coset_of(s)?)?;
            rep.record("coset_of_product", ring.coset_eq(&lhs, &rhs), (i * pool.len() + j) as u64, || {
                format!("{} then {}", desc(s), desc(r))
            });
        }
    }
    Ok(())
}

/// `coset(|eta|^n)` is nontrivial for `n = 1..=12`.
pub fn eta_powers_nontrivial(ring: &MultiplierRing, max: u32) -> Result<Vec<bool>> {
    let f = multiplication_map(ring.module(), &[0, 1])?;
    let c = ring.coset_of(&f)?;
    let mut acc = c.clone();
    let mut out = Vec::new();
    for _ in 1..=max {
        out.push(!ring.is_unit(&acc));
        acc = ring.coset_mul(&acc, &c)?;
    }
    Ok(out)
}

fn scal_group(rep: &mut SuiteReport, rng: &mut ChaCha8Rng) -> Result<()> {
    let sq = square_pool(rng, 24)?;
    let ring = multiplier_ring(sq[0].module());
    check_coset_pool(rep, "square", &ring, &sq)?;
    for n in [8, 12] {
        let pool = cyclotomic_pool(rng, n, 24)?;
        let ring = multiplier_ring(pool[0].module());
        check_coset_pool(rep, &format!("cyclotomic{n}"), &ring, &pool)?;
    }
    let eta = Arc::new(eta_module()?);
    let ring = multiplier_ring(&eta);
    for (n, ok) in eta_powers_nontrivial(&ring, 12)?.into_iter().enumerate() {
        rep.record("eta_power_coset_nontrivial", ok, n as u64 + 1, || format!("|eta|^{}", n + 1));
    }
    Ok(())
}

/// Every builtin lattice and module.
pub fn builtin_modules() -> Result<Vec<Arc<GramModule>>> {
    let mut out = Vec::new();
    for name in ["square", "hexagonal", "cubic", "hypercubic4"] {
        out.push(Arc::new(standard_lattice(name)?));
    }
    for n in [5, 8, 12] {
        out.push(Arc::new(cyclotomic_module(n)?));
    }
    out.push(Arc::new(xi8_index4_submodule()?));
    out.push(Arc::new(eta_module()?));
    Ok(out)
}

fn check_degree(rep: &mut SuiteReport, x: &ScaleValue, k: usize, label: &str) {
    let d = degree_check(x, k);
    rep.record("scale_degree_bound", d.monic_integral && d.within_bound, d.degree as u64, || {
        format!("{label}: {x} has minimal polynomial {} (k = {k})", d.min_poly)
    });
}

fn rings(rep: &mut SuiteReport, rng: &mut ChaCha8Rng) -> Result<()> {
    for m in builtin_modules()? {
        let label = m.label().unwrap_or("module").to_string();
        let ring = multiplier_ring(&m);
        let c = ring.checks();
        rep.record("ring_invariants", c.all(), m.rank() as u64, || format!("{label}: {c:?}"));
        for (_, x) in ring.basis() {
            check_degree(rep, &ScaleValue::from_elem(x.clone()), m.rank(), &label);
        }
        // the ring does not depend on the order of the generators
        for _ in 0..3 {
            let mut perm: Vec<usize> = (0..m.rank()).collect();
            perm.shuffle(rng);
            let pm = Arc::new(m.permute(&perm)?);
            let pr = multiplier_ring(&pm);
            let same = pr.rank() == ring.rank() && {
                let p = permutation_matrix(&perm);
                let pinv = p.transpose();
                pr.basis().iter().all(|(a, _)| ring_contains(&ring, &p.mul(&a.to_rat()).mul(&pinv)))
            };
            rep.record("ring_permutation_invariant", same, m.rank() as u64, || format!("{label}: {perm:?}"));
        }
        let maps = module_maps(rng, &m)?;
        for f in &maps {
            let sm = ring.scal_module_of_map(f)?;
            rep.record("scal_module_stable", sm.is_stable_under(&ring), m.rank() as u64, || {
                format!("{label}: {}", describe_map(&f.matrix().to_rat()))
            });
            for (_, beta) in &sm.basis {
                check_degree(rep, beta, m.rank(), &label);
            }
            check_degree(rep, &f.alpha(), m.rank(), &label);
            if m.is_lattice() {
                let gen = sm.single_generator(&ring);
                let ok = gen.as_ref().is_some_and(|g| Some(g) == f.denominator().ok().as_ref());
                rep.record("lattice_scal_is_den_z", ok, m.rank() as u64, || {
                    format!("{label}: {}", describe_map(&f.matrix().to_rat()))
                });
            }
        }
    }
    let xi = Arc::new(xi8_index4_submodule()?);
    let ring = multiplier_ring(&xi);
    let has_x2m8 = ring.scalars().iter().any(|x| x.minimal_polynomial() == Poly::from_ints([-8, 0, 1]));
    rep.record("xi8_ring_is_z_2sqrt2", ring.rank() == 2 && has_x2m8, 4, || format!("rank {}", ring.rank()));
    let idx = index_in_z_xi8(&xi8_index4_generators()?)?;
    rep.record("xi8_submodule_index_4", idx == Int::from(4), 4, || format!("index {idx}"));
    let eta = Arc::new(eta_module()?);
    let f = multiplication_map(&eta, &[0, 1])?;
    let d = degree_check(&f.alpha(), 3);
    let ok = d.degree == 6 && d.min_poly == Poly::from_ints([-1, 0, 0, 0, -3, 0, 1]) && d.monic_integral;
    rep.record("eta_scale_degree_6", ok, 6, || format!("{}", d.min_poly));
    Ok(())
}

fn ring_contains(ring: &MultiplierRing, a: &RatMatrix) -> bool {
    let Some(a) = a.to_int() else { return false };
    let lat = IntMatrix::from_fn(a.rows() * a.cols(), ring.rank(), |r, c| ring.basis()[c].0.entries()[r].clone());
    crate::exact::normal_form::lattice_coords(&lat, a.entries()).is_some()
}

/// A few similarity maps of a builtin module.
fn module_maps(rng: &mut ChaCha8Rng, m: &Arc<GramModule>) -> Result<Vec<SimilarityMap>> {
    let label = m.label().unwrap_or("");
    let mut out = vec![SimilarityMap::identity(m)];
    match label {
        "square" | "hexagonal" | "cubic" | "hypercubic4" => {
            for _ in 0..4 {
                out.push(random_similarity(rng, m)?);
            }
        }
        "cyclotomic5" | "cyclotomic8" | "cyclotomic12" => {
            let n: u32 = label["cyclotomic".len()..].parse().expect("builtin label");
            let pool = cyclotomic_pool(rng, n, 4)?;
            out.extend(pool.into_iter().map(|f| make_similarity(m, &f.matrix().to_rat())).collect::<Result<Vec<_>>>()?);
        }
        "eta" => {
            out.push(multiplication_map(m, &[0, 1])?);
            out.push(multiplication_map(m, &[1, 1])?);
        }
        _ => {}
    }
    Ok(out)
}

/// Runs a suite with the given seed; `injected` reports are checked in addition.
pub fn run(suite: Suite, seed: u64, injected: &[DivisibilityReport]) -> Result<SuiteReport> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut rep = SuiteReport::default();
    if matches!(suite, Suite::DenSig | Suite::All) {
        den_sig(&mut rep, &mut rng)?;
    }
    for r in injected {
        check_injected(&mut rep, r);
    }
    if matches!(suite, Suite::SigmaInv | Suite::All) {
        sigma_inv(&mut rep, &mut rng)?;
    }
    if matches!(suite, Suite::ScalGroup | Suite::All) {
        scal_group(&mut rep, &mut rng)?;
    }
    if matches!(suite, Suite::Rings | Suite::All) {
        rings(&mut rep, &mut rng)?;
    }
    Ok(rep)
}
