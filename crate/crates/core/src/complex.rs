//! Bounded chain complexes of finitely generated free modules over Z or
//! Z/m, chain maps, homology, mapping cones, and the cone cardinality
//! identity coming from the long exact sequence.
//!
//! Matrices are always stored over Z; a nonzero `modulus` switches the
//! interpretation of the same data to Z/m.

use std::collections::BTreeMap;

use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::group::{quotient_group, tensor_tor_with_zq, AbelianGroup, Cardinality};
use crate::matrix::{Int, IntMatrix};

/// Bounded complex: `ranks[i]` is the rank of the chain group in degree
/// `base_degree + i`, and `boundaries[i]` is the matrix of the differential
/// from degree `base_degree + i + 1` down to `base_degree + i`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct ChainComplex {
    base_degree: i64,
    ranks: Vec<usize>,
    boundaries: Vec<IntMatrix>,
    modulus: Int,
}

impl ChainComplex {
    /// Builds and validates. `modulus` is 0 for Z, or an integer >= 2.
    pub fn new(
        base_degree: i64,
        ranks: Vec<usize>,
        boundaries: Vec<IntMatrix>,
        modulus: Int,
    ) -> Result<Self> {
        let c = ChainComplex {
            base_degree,
            ranks,
            boundaries,
            modulus,
        };
        c.validate()?;
        Ok(c)
    }

    /// Checks every structural invariant: the modulus, matrix shapes against
    /// adjacent ranks, and vanishing of consecutive boundary compositions
    /// (over Z, or mod m when a modulus is set).
    pub fn validate(&self) -> Result<()> {
        if self.modulus.is_negative() || self.modulus.is_one() {
            return Err(Error::InvalidModulus(format!(
                "modulus {} (use 0 for Z or an integer >= 2)",
                self.modulus
            )));
        }
        let expected = self.ranks.len().saturating_sub(1);
        if self.boundaries.len() != expected {
            return Err(Error::Shape(format!(
                "{} ranks need {} boundary matrices, got {}",
                self.ranks.len(),
                expected,
                self.boundaries.len()
            )));
        }
        for (i, b) in self.boundaries.iter().enumerate() {
            if b.rows() != self.ranks[i] || b.cols() != self.ranks[i + 1] {
                return Err(Error::Shape(format!(
                    "boundary into degree {} should be {}x{}, got {}x{}",
                    self.base_degree + i as i64,
                    self.ranks[i],
                    self.ranks[i + 1],
                    b.rows(),
                    b.cols()
                )));
            }
        }
        for i in 0..self.boundaries.len().saturating_sub(1) {
            let composite = self.boundaries[i].mul(&self.boundaries[i + 1]);
            if !composite.is_zero_mod(&self.modulus) {
                return Err(Error::NotAComplex {
                    degree: self.base_degree + i as i64,
                });
            }
        }
        Ok(())
    }

    pub fn base_degree(&self) -> i64 {
        self.base_degree
    }

    /// Number of degrees carrying a chain group.
    pub fn len(&self) -> usize {
        self.ranks.len()
    }

    pub fn is_empty(&self) -> bool {
        self.ranks.is_empty()
    }

    pub fn top_degree(&self) -> i64 {
        self.base_degree + self.ranks.len() as i64 - 1
    }

    pub fn modulus(&self) -> &Int {
        &self.modulus
    }

    pub fn ranks(&self) -> &[usize] {
        &self.ranks
    }

    pub fn rank_at(&self, degree: i64) -> usize {
        if self.ranks.is_empty() || degree < self.base_degree || degree > self.top_degree() {
            0
        } else {
            self.ranks[(degree - self.base_degree) as usize]
        }
    }

    pub fn degrees(&self) -> impl Iterator<Item = i64> {
        self.base_degree..self.base_degree + self.ranks.len() as i64
    }

    /// The differential leaving `degree` (mapping it one degree down).
    /// Synthesized as an empty/zero matrix outside the stored range.
    pub fn boundary_from(&self, degree: i64) -> IntMatrix {
        let idx = degree - 1 - self.base_degree;
        if idx >= 0 && (idx as usize) < self.boundaries.len() {
            self.boundaries[idx as usize].clone()
        } else {
            IntMatrix::zero(self.rank_at(degree - 1), self.rank_at(degree))
        }
    }

    pub fn boundaries(&self) -> &[IntMatrix] {
        &self.boundaries
    }

    /// Same matrices reinterpreted over a different ring; revalidates.
    pub fn with_modulus(&self, modulus: Int) -> Result<ChainComplex> {
        ChainComplex::new(
            self.base_degree,
            self.ranks.clone(),
            self.boundaries.clone(),
            modulus,
        )
    }

    /// Alternating sum of chain ranks.
    pub fn euler_characteristic(&self) -> i64 {
        let mut chi = 0i64;
        for (i, r) in self.ranks.iter().enumerate() {
            let sign = if (self.base_degree + i as i64).rem_euclid(2) == 0 {
                1
            } else {
                -1
            };
            chi += sign * *r as i64;
        }
        chi
    }

    /// Integral homology, one canonical group per stored degree.
    /// H_d = ker(∂ out of d) / im(∂ into d).
    pub fn integral_homology(&self) -> Result<Vec<AbelianGroup>> {
        if !self.modulus.is_zero() {
            return Err(Error::WrongRing(format!(
                "integral homology needs modulus 0, complex is over Z/{}",
                self.modulus
            )));
        }
        let mut out = Vec::with_capacity(self.ranks.len());
        for d in self.degrees() {
            let cycles = self.boundary_from(d).kernel_basis();
            let image = self.boundary_from(d + 1);
            out.push(quotient_group(&cycles, &image)?);
        }
        Ok(out)
    }

    /// Mod-q homology through the universal-coefficient splitting
    /// H_d(C ⊗ Z/q) ≅ (H_d(C) ⊗ Z/q) ⊕ Tor(H_{d−1}(C), Z/q), valid because
    /// the chain groups are free.
    pub fn mod_q_homology(&self, q: &Int) -> Result<Vec<AbelianGroup>> {
        if q < &Int::from(2) {
            return Err(Error::InvalidModulus(format!("q = {q}, need q >= 2")));
        }
        let integral = self.integral_homology()?;
        let mut out = Vec::with_capacity(integral.len());
        for i in 0..integral.len() {
            let (tensor, _) = tensor_tor_with_zq(&integral[i], q)?;
            let group = if i == 0 {
                tensor
            } else {
                let (_, tor) = tensor_tor_with_zq(&integral[i - 1], q)?;
                tensor.direct_sum(&tor)
            };
            out.push(group);
        }
        Ok(out)
    }

    /// Mod-q homology computed directly at chain level, with no
    /// universal-coefficient splitting: cycles are the integer lattice
    /// {v : ∂v ≡ 0 mod q}, relations are boundary columns together with q·Z^n.
    /// Works over Z (modulus 0) and over Z/m whenever q divides m.
    pub fn mod_q_homology_direct(&self, q: &Int) -> Result<Vec<AbelianGroup>> {
        self.check_coefficient_modulus(q)?;
        let mut out = Vec::with_capacity(self.ranks.len());
        for d in self.degrees() {
            let pres = self.mod_q_presentation(q, d)?;
            out.push(pres.group);
        }
        Ok(out)
    }

    fn check_coefficient_modulus(&self, q: &Int) -> Result<()> {
        if q < &Int::from(2) {
            return Err(Error::InvalidModulus(format!("q = {q}, need q >= 2")));
        }
        if !self.modulus.is_zero() && !(&self.modulus % q).is_zero() {
            return Err(Error::WrongRing(format!(
                "cannot reduce a Z/{} complex modulo {q}",
                self.modulus
            )));
        }
        Ok(())
    }

    /// Lattice presentation of H_degree(C ⊗ Z/q): generators of the mod-q
    /// cycle lattice and of the relation lattice, plus the quotient group.
    pub(crate) fn mod_q_presentation(&self, q: &Int, degree: i64) -> Result<ModQPresentation> {
        let n = self.rank_at(degree);
        let out = self.boundary_from(degree);
        // v is a mod-q cycle iff (v, w) solves [∂ | qI]·(v, w)^T = 0 for some w
        let augmented = out.hstack(&IntMatrix::identity(out.rows()).scaled(q));
        let kernel = augmented.kernel_basis();
        let keep: Vec<usize> = (0..n).collect();
        let cycles = kernel.select_rows(&keep);
        let incoming = self.boundary_from(degree + 1);
        let relations = incoming.hstack(&IntMatrix::identity(n).scaled(q));
        let group = quotient_group(&cycles, &relations)?;
        let cardinality = match group.cardinality() {
            Cardinality::Finite(c) => c,
            Cardinality::Infinite => {
                return Err(Error::InvalidParameter(
                    "mod-q homology must be finite".into(),
                ))
            }
        };
        Ok(ModQPresentation {
            cycles,
            relations,
            group,
            cardinality,
        })
    }

    /// Cardinalities #H_d(C ⊗ Z/q) by literal enumeration of kernels and
    /// images inside (Z/q)^rank. Guarded: refuses when q^max_rank > 10^6.
    pub fn brute_force_mod_q(&self, q: &Int) -> Result<Vec<Int>> {
        self.check_coefficient_modulus(q)?;
        let q_u64: u64 = q
            .to_string()
            .parse()
            .map_err(|_| Error::OracleTooLarge(format!("modulus {q} too large")))?;
        let max_rank = self.ranks.iter().copied().max().unwrap_or(0) as u32;
        let budget = 1_000_000f64;
        if (q_u64 as f64).powi(max_rank as i32) > budget {
            return Err(Error::OracleTooLarge(format!(
                "{q}^{max_rank} exceeds the enumeration budget"
            )));
        }
        let mut out = Vec::with_capacity(self.ranks.len());
        for d in self.degrees() {
            let kernel = count_kernel_vectors(&self.boundary_from(d), q_u64);
            let image = count_image_vectors(&self.boundary_from(d + 1), q_u64);
            debug_assert_eq!(kernel % image, 0);
            out.push(Int::from(kernel / image));
        }
        Ok(out)
    }

    /// Direct sum, degreewise. Both complexes must share a modulus.
    pub fn direct_sum(&self, other: &ChainComplex) -> Result<ChainComplex> {
        if self.modulus != other.modulus {
            return Err(Error::WrongRing(
                "direct summands must share a ground ring".into(),
            ));
        }
        if self.is_empty() {
            return Ok(other.clone());
        }
        if other.is_empty() {
            return Ok(self.clone());
        }
        let base = self.base_degree.min(other.base_degree);
        let top = self.top_degree().max(other.top_degree());
        let len = (top - base + 1) as usize;
        let ranks: Vec<usize> = (0..len)
            .map(|i| self.rank_at(base + i as i64) + other.rank_at(base + i as i64))
            .collect();
        let mut boundaries = Vec::with_capacity(len.saturating_sub(1));
        for i in 0..len.saturating_sub(1) {
            let d = base + i as i64 + 1;
            boundaries.push(self.boundary_from(d).block_diag(&other.boundary_from(d)));
        }
        ChainComplex::new(base, ranks, boundaries, self.modulus.clone())
    }
}

pub(crate) struct ModQPresentation {
    pub cycles: IntMatrix,
    pub relations: IntMatrix,
    pub group: AbelianGroup,
    pub cardinality: Int,
}

fn reduce_matrix_u64(m: &IntMatrix, q: u64) -> Vec<Vec<u64>> {
    let qi = Int::from(q);
    (0..m.rows())
        .map(|i| {
            (0..m.cols())
                .map(|j| {
                    let r = m.at(i, j).mod_floor(&qi);
                    r.to_string().parse::<u64>().unwrap()
                })
                .collect()
        })
        .collect()
}

fn for_each_vector(q: u64, n: usize, mut f: impl FnMut(&[u64])) {
    let mut v = vec![0u64; n];
    loop {
        f(&v);
        let mut i = 0;
        loop {
            if i == n {
                return;
            }
            v[i] += 1;
            if v[i] < q {
                break;
            }
            v[i] = 0;
            i += 1;
        }
    }
}

fn mat_vec_mod(m: &[Vec<u64>], v: &[u64], q: u64) -> Vec<u64> {
    m.iter()
        .map(|row| {
            row.iter()
                .zip(v)
                .fold(0u64, |acc, (a, b)| (acc + a * b) % q)
        })
        .collect()
}

fn count_kernel_vectors(m: &IntMatrix, q: u64) -> u64 {
    let rows = reduce_matrix_u64(m, q);
    let mut count = 0u64;
    for_each_vector(q, m.cols(), |v| {
        if mat_vec_mod(&rows, v, q).iter().all(|&x| x == 0) {
            count += 1;
        }
    });
    count
}

fn count_image_vectors(m: &IntMatrix, q: u64) -> u64 {
    let rows = reduce_matrix_u64(m, q);
    let mut seen = std::collections::HashSet::new();
    for_each_vector(q, m.cols(), |v| {
        seen.insert(mat_vec_mod(&rows, v, q));
    });
    seen.len() as u64
}

/// Degreewise map of complexes commuting with the boundaries (exactly over
/// Z, or mod m when the shared modulus is nonzero).
#[derive(Clone, Debug)]
pub struct ChainMap {
    source: ChainComplex,
    target: ChainComplex,
    components: BTreeMap<i64, IntMatrix>,
}

impl ChainMap {
    /// Missing degrees get zero components. Every supplied component must
    /// have shape rank_target(d) × rank_source(d).
    pub fn new(
        source: ChainComplex,
        target: ChainComplex,
        components: BTreeMap<i64, IntMatrix>,
    ) -> Result<Self> {
        if source.modulus() != target.modulus() {
            return Err(Error::WrongRing(
                "chain map endpoints must share a ground ring".into(),
            ));
        }
        for (&d, f) in &components {
            if f.rows() != target.rank_at(d) || f.cols() != source.rank_at(d) {
                return Err(Error::Shape(format!(
                    "component at degree {d} should be {}x{}, got {}x{}",
                    target.rank_at(d),
                    source.rank_at(d),
                    f.rows(),
                    f.cols()
                )));
            }
        }
        let map = ChainMap {
            source,
            target,
            components,
        };
        map.check_commutes()?;
        Ok(map)
    }

    fn check_commutes(&self) -> Result<()> {
        let modulus = self.source.modulus().clone();
        let lo = self.source.base_degree().min(self.target.base_degree());
        let hi = self.source.top_degree().max(self.target.top_degree());
        for d in lo..=hi {
            // f_{d-1} ∘ ∂^S_d  vs  ∂^T_d ∘ f_d
            let lhs = self.component_at(d - 1).mul(&self.source.boundary_from(d));
            let rhs = self.target.boundary_from(d).mul(&self.component_at(d));
            let diff = lhs.add(&rhs.scaled(&Int::from(-1)));
            if !diff.is_zero_mod(&modulus) {
                return Err(Error::NotChainMap { degree: d });
            }
        }
        Ok(())
    }

    pub fn source(&self) -> &ChainComplex {
        &self.source
    }

    pub fn target(&self) -> &ChainComplex {
        &self.target
    }

    pub fn component_at(&self, degree: i64) -> IntMatrix {
        self.components.get(&degree).cloned().unwrap_or_else(|| {
            IntMatrix::zero(self.target.rank_at(degree), self.source.rank_at(degree))
        })
    }

    pub fn identity(c: &ChainComplex) -> ChainMap {
        let components = c
            .degrees()
            .map(|d| (d, IntMatrix::identity(c.rank_at(d))))
            .collect();
        ChainMap {
            source: c.clone(),
            target: c.clone(),
            components,
        }
    }

    pub fn zero(source: ChainComplex, target: ChainComplex) -> Result<ChainMap> {
        ChainMap::new(source, target, BTreeMap::new())
    }

    /// Mapping cone: degree d is source_{d−1} ⊕ target_d with differential
    /// (s, t) ↦ (−∂s, ∂t − f(s)).
    pub fn mapping_cone(&self) -> Result<ChainComplex> {
        let modulus = self.source.modulus().clone();
        if self.source.is_empty() && self.target.is_empty() {
            return ChainComplex::new(0, Vec::new(), Vec::new(), modulus);
        }
        let base = if self.source.is_empty() {
            self.target.base_degree()
        } else if self.target.is_empty() {
            self.source.base_degree() + 1
        } else {
            self.target.base_degree().min(self.source.base_degree() + 1)
        };
        let top = if self.source.is_empty() {
            self.target.top_degree()
        } else if self.target.is_empty() {
            self.source.top_degree() + 1
        } else {
            self.target.top_degree().max(self.source.top_degree() + 1)
        };
        let len = (top - base + 1) as usize;
        let ranks: Vec<usize> = (0..len)
            .map(|i| {
                let d = base + i as i64;
                self.source.rank_at(d - 1) + self.target.rank_at(d)
            })
            .collect();
        let minus_one = Int::from(-1);
        let mut boundaries = Vec::with_capacity(len.saturating_sub(1));
        for i in 0..len.saturating_sub(1) {
            let d = base + i as i64 + 1; // boundary out of degree d
            let a = self.source.boundary_from(d - 1).scaled(&minus_one);
            let b = IntMatrix::zero(self.source.rank_at(d - 2), self.target.rank_at(d));
            let c = self.component_at(d - 1).scaled(&minus_one);
            let dd = self.target.boundary_from(d);
            boundaries.push(IntMatrix::from_blocks(&a, &b, &c, &dd));
        }
        ChainComplex::new(base, ranks, boundaries, modulus)
    }
}

/// Both sides of the cardinality identity for one degree:
/// #H_d(cone(f) ⊗ Z/q) against #coker(f_* in degree d) · #ker(f_* in degree d−1).
#[derive(Clone, Debug)]
pub struct ConeCardinalityEntry {
    pub degree: i64,
    pub cone_cardinality: Int,
    pub coker_cardinality: Int,
    pub ker_cardinality: Int,
}

impl ConeCardinalityEntry {
    pub fn holds(&self) -> bool {
        self.cone_cardinality == &self.coker_cardinality * &self.ker_cardinality
    }
}

#[derive(Clone, Debug)]
pub struct ConeCardinalityReport {
    pub q: Int,
    pub entries: Vec<ConeCardinalityEntry>,
}

impl ConeCardinalityReport {
    pub fn all_hold(&self) -> bool {
        self.entries.iter().all(ConeCardinalityEntry::holds)
    }
}

/// Verifies, degree by degree, that
/// #H_d(cone(f) ⊗ Z/q) = #coker(f_*: H_d(S;Z/q) → H_d(T;Z/q))
///                      · #ker(f_*: H_{d−1}(S;Z/q) → H_{d−1}(T;Z/q)),
/// which is the cardinality shadow of the long exact sequence of the cone.
pub fn les_cardinality_check(f: &ChainMap, q: &Int) -> Result<ConeCardinalityReport> {
    let cone = f.mapping_cone()?;
    let lo = cone
        .base_degree()
        .min(f.source().base_degree())
        .min(f.target().base_degree());
    let hi = cone
        .top_degree()
        .max(f.source().top_degree() + 1)
        .max(f.target().top_degree() + 1);

    // per-degree cardinalities of coker(f_*) and ker(f_*)
    let mut coker: BTreeMap<i64, Int> = BTreeMap::new();
    let mut ker: BTreeMap<i64, Int> = BTreeMap::new();
    for d in lo..=hi {
        let src = f.source().mod_q_presentation(q, d)?;
        let tgt = f.target().mod_q_presentation(q, d)?;
        let image_gens = f.component_at(d).mul(&src.cycles);
        let coker_group = quotient_group(&tgt.cycles, &image_gens.hstack(&tgt.relations))?;
        let coker_card = match coker_group.cardinality() {
            Cardinality::Finite(c) => c,
            Cardinality::Infinite => unreachable!("mod-q homology is finite"),
        };
        // #ker = #H(S) · #coker / #H(T)
        let numerator = &src.cardinality * &coker_card;
        let (ker_card, rem) = numerator.div_rem(&tgt.cardinality);
        debug_assert!(rem.is_zero());
        coker.insert(d, coker_card);
        ker.insert(d, ker_card);
    }

    let cone_groups: BTreeMap<i64, Int> = {
        let groups = cone.mod_q_homology_direct(q)?;
        cone.degrees()
            .zip(groups)
            .map(|(d, g)| {
                let c = match g.cardinality() {
                    Cardinality::Finite(c) => c,
                    Cardinality::Infinite => unreachable!(),
                };
                (d, c)
            })
            .collect()
    };

    let one = Int::one();
    let entries = (lo..=hi)
        .map(|d| ConeCardinalityEntry {
            degree: d,
            cone_cardinality: cone_groups.get(&d).cloned().unwrap_or_else(|| one.clone()),
            coker_cardinality: coker.get(&d).cloned().unwrap_or_else(|| one.clone()),
            ker_cardinality: ker.get(&(d - 1)).cloned().unwrap_or_else(|| one.clone()),
        })
        .collect();
    Ok(ConeCardinalityReport {
        q: q.clone(),
        entries,
    })
}

/// Parameters for the seeded complex generator.
#[derive(Clone, Debug)]
pub struct RandomComplexSpec {
    pub degrees: usize,
    pub max_rank: usize,
    pub entry_bound: i64,
    pub torsion_primes: Vec<u64>,
}

impl Default for RandomComplexSpec {
    fn default() -> Self {
        RandomComplexSpec {
            degrees: 4,
            max_rank: 4,
            entry_bound: 3,
            torsion_primes: vec![2, 3],
        }
    }
}

/// Deterministic-in-seed valid complex over Z whose homology torsion is
/// supported on the requested primes. Built as a direct sum of shifted
/// two-term pieces [Z →p^s Z] and free summands, then conjugated degreewise
/// by random unimodular matrices (which preserves homology and exactness).
pub fn random_complex(spec: &RandomComplexSpec, seed: u64) -> ChainComplex {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let n = spec.degrees.max(1);
    let cap = spec.max_rank.max(1);
    let base: i64 = rng.gen_range(-2..=2);

    // pieces[d] = list of p^s differentials spanning degrees (d+1, d)
    let mut pieces: Vec<Vec<Int>> = vec![Vec::new(); n.saturating_sub(1)];
    let mut used = vec![0usize; n];
    if !spec.torsion_primes.is_empty() {
        for d in 0..n.saturating_sub(1) {
            let room = (cap - used[d]).min(cap - used[d + 1]).min(2);
            let count = if room == 0 { 0 } else { rng.gen_range(0..=room) };
            for _ in 0..count {
                let p = spec.torsion_primes[rng.gen_range(0..spec.torsion_primes.len())];
                let s = rng.gen_range(1..=2u32);
                pieces[d].push(Int::from(p).pow(s));
                used[d] += 1;
                used[d + 1] += 1;
            }
        }
    }
    let mut free = vec![0usize; n];
    for d in 0..n {
        free[d] = rng.gen_range(0..=(cap - used[d]));
        used[d] += free[d];
    }
    if used.iter().all(|&u| u == 0) {
        free[0] = 1;
        used[0] = 1;
    }

    // slot layout per degree: bottoms of pieces (d+1,d), then tops of pieces
    // (d,d-1), then free generators
    let ranks = used.clone();
    let mut boundaries = Vec::with_capacity(n.saturating_sub(1));
    for d in 0..n.saturating_sub(1) {
        let mut m = IntMatrix::zero(ranks[d], ranks[d + 1]);
        let top_offset = pieces.get(d + 1).map_or(0, Vec::len);
        for (k, mult) in pieces[d].iter().enumerate() {
            m.set(k, top_offset + k, mult.clone());
        }
        boundaries.push(m);
    }

    // conjugate by unimodular basis changes
    let transforms: Vec<(IntMatrix, IntMatrix)> = ranks
        .iter()
        .map(|&r| random_unimodular(r, 2 * r + 2, spec.entry_bound.max(1), &mut rng))
        .collect();
    let boundaries = boundaries
        .into_iter()
        .enumerate()
        .map(|(d, m)| transforms[d].0.mul(&m).mul(&transforms[d + 1].1))
        .collect();
    ChainComplex::new(base, ranks, boundaries, Int::zero())
        .expect("generated complex must validate")
}

/// (P, P^{-1}) with P a product of random elementary matrices.
fn random_unimodular(
    n: usize,
    ops: usize,
    bound: i64,
    rng: &mut ChaCha8Rng,
) -> (IntMatrix, IntMatrix) {
    let mut p = IntMatrix::identity(n);
    let mut p_inv = IntMatrix::identity(n);
    if n < 1 {
        return (p, p_inv);
    }
    for _ in 0..ops {
        match rng.gen_range(0..4u8) {
            0 | 1 if n >= 2 => {
                let i = rng.gen_range(0..n);
                let mut j = rng.gen_range(0..n);
                while j == i {
                    j = rng.gen_range(0..n);
                }
                let mut c = 0i64;
                while c == 0 {
                    c = rng.gen_range(-bound..=bound);
                }
                let c = Int::from(c);
                // P ← E·P with E = I + c·e_{ij}; inverse picks up -c on the right
                let apply_row = |m: &mut IntMatrix, i: usize, j: usize, c: &Int| {
                    for k in 0..m.cols() {
                        let v = m.at(i, k) + c * m.at(j, k);
                        m.set(i, k, v);
                    }
                };
                let apply_col = |m: &mut IntMatrix, i: usize, j: usize, c: &Int| {
                    for k in 0..m.rows() {
                        let v = m.at(k, j) + c * m.at(k, i);
                        m.set(k, j, v);
                    }
                };
                apply_row(&mut p, i, j, &c);
                apply_col(&mut p_inv, i, j, &-c);
            }
            2 if n >= 2 => {
                let i = rng.gen_range(0..n);
                let mut j = rng.gen_range(0..n);
                while j == i {
                    j = rng.gen_range(0..n);
                }
                for k in 0..n {
                    let a = p.at(i, k).clone();
                    let b = p.at(j, k).clone();
                    p.set(i, k, b);
                    p.set(j, k, a);
                    let a = p_inv.at(k, i).clone();
                    let b = p_inv.at(k, j).clone();
                    p_inv.set(k, i, b);
                    p_inv.set(k, j, a);
                }
            }
            _ => {
                let i = rng.gen_range(0..n);
                for k in 0..n {
                    let v = -p.at(i, k);
                    p.set(i, k, v);
                    let v = -p_inv.at(k, i);
                    p_inv.set(k, i, v);
                }
            }
        }
    }
    (p, p_inv)
}

/// Seeded chain-map generator used by the cone identity checks. Cycles
/// through three shapes: a scalar-plus-nullhomotopic self map disguised by a
/// basis change of the target, a zero map between unrelated complexes, and a
/// conjugated projection off a direct summand.
pub fn random_chain_map(spec: &RandomComplexSpec, seed: u64) -> ChainMap {
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x9e37_79b9_7f4a_7c15);
    match seed % 3 {
        0 => {
            let c = random_complex(spec, seed.wrapping_mul(31).wrapping_add(7));
            let scale = Int::from(rng.gen_range(0..=3));
            let mut components = BTreeMap::new();
            // f = scale·id + ∂h + h∂ commutes with ∂ for any degree-raising h
            let h: BTreeMap<i64, IntMatrix> = c
                .degrees()
                .map(|d| {
                    let mut m = IntMatrix::zero(c.rank_at(d + 1), c.rank_at(d));
                    for i in 0..m.rows() {
                        for j in 0..m.cols() {
                            m.set(i, j, Int::from(rng.gen_range(-2..=2i64)));
                        }
                    }
                    (d, m)
                })
                .collect();
            let zero_h = |d: i64| {
                h.get(&d)
                    .cloned()
                    .unwrap_or_else(|| IntMatrix::zero(c.rank_at(d + 1), c.rank_at(d)))
            };
            let transforms: Vec<(IntMatrix, IntMatrix)> = c
                .ranks()
                .iter()
                .map(|&r| random_unimodular(r, 2 * r + 1, spec.entry_bound.max(1), &mut rng))
                .collect();
            let target_boundaries: Vec<IntMatrix> = (0..c.len().saturating_sub(1))
                .map(|i| {
                    transforms[i]
                        .0
                        .mul(&c.boundaries()[i])
                        .mul(&transforms[i + 1].1)
                })
                .collect();
            let target = ChainComplex::new(
                c.base_degree(),
                c.ranks().to_vec(),
                target_boundaries,
                Int::zero(),
            )
            .expect("conjugated complex must validate");
            for (idx, d) in c.degrees().enumerate() {
                let id = IntMatrix::identity(c.rank_at(d)).scaled(&scale);
                let dh = c.boundary_from(d + 1).mul(&zero_h(d));
                let hd = zero_h(d - 1).mul(&c.boundary_from(d));
                let f = id.add(&dh).add(&hd);
                components.insert(d, transforms[idx].0.mul(&f));
            }
            ChainMap::new(c, target, components).expect("generated chain map must validate")
        }
        1 => {
            let source = random_complex(spec, seed.wrapping_mul(131).wrapping_add(3));
            let target = random_complex(spec, seed.wrapping_mul(151).wrapping_add(11));
            ChainMap::zero(source, target).expect("zero map is always valid")
        }
        _ => {
            let c = random_complex(spec, seed.wrapping_mul(17).wrapping_add(1));
            let e = random_complex(spec, seed.wrapping_mul(19).wrapping_add(5));
            let sum = c.direct_sum(&e).expect("same ring");
            let mut components = BTreeMap::new();
            for d in sum.degrees() {
                // projection onto the E block of C ⊕ E
                let mut m = IntMatrix::zero(e.rank_at(d), sum.rank_at(d));
                let offset = c.rank_at(d);
                for i in 0..e.rank_at(d) {
                    m.set(i, offset + i, Int::one());
                }
                components.insert(d, m);
            }
            ChainMap::new(sum, e, components).expect("projection is a chain map")
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    pub(crate) fn rp2_complex() -> ChainComplex {
        ChainComplex::new(
            0,
            vec![1, 1, 1],
            vec![
                IntMatrix::from_i64_rows(&[&[0]]),
                IntMatrix::from_i64_rows(&[&[2]]),
            ],
            Int::zero(),
        )
        .unwrap()
    }

    fn times_four() -> ChainComplex {
        ChainComplex::new(
            0,
            vec![1, 1],
            vec![IntMatrix::from_i64_rows(&[&[4]])],
            Int::zero(),
        )
        .unwrap()
    }

    #[test]
    fn validate_accepts_and_rejects() {
        assert!(rp2_complex().validate().is_ok());
        // single boundary, nothing to compose
        assert!(ChainComplex::new(
            0,
            vec![1, 1],
            vec![IntMatrix::from_i64_rows(&[&[3]])],
            Int::zero()
        )
        .is_ok());
        let bad = ChainComplex::new(
            0,
            vec![1, 1, 1],
            vec![
                IntMatrix::from_i64_rows(&[&[1]]),
                IntMatrix::from_i64_rows(&[&[1]]),
            ],
            Int::zero(),
        );
        assert!(matches!(bad, Err(Error::NotAComplex { degree: 0 })));
        let mismatched = ChainComplex::new(
            0,
            vec![1, 2],
            vec![IntMatrix::from_i64_rows(&[&[1]])],
            Int::zero(),
        );
        assert!(matches!(mismatched, Err(Error::Shape(_))));
    }

    #[test]
    fn integral_homology_of_rp2() {
        let h = rp2_complex().integral_homology().unwrap();
        assert_eq!(h[0], AbelianGroup::free(1));
        assert_eq!(h[1], AbelianGroup::cyclic(&Int::from(2)));
        assert!(h[2].is_trivial());
    }

    #[test]
    fn integral_homology_of_multiplication_by_four() {
        let h = times_four().integral_homology().unwrap();
        assert_eq!(h[0], AbelianGroup::cyclic(&Int::from(4)));
        assert!(h[1].is_trivial());
    }

    #[test]
    fn integral_homology_zero_differentials() {
        let c = ChainComplex::new(
            0,
            vec![2, 3],
            vec![IntMatrix::zero(2, 3)],
            Int::zero(),
        )
        .unwrap();
        let h = c.integral_homology().unwrap();
        assert_eq!(h[0], AbelianGroup::free(2));
        assert_eq!(h[1], AbelianGroup::free(3));
    }

    #[test]
    fn mod_q_homology_examples() {
        let h = rp2_complex().mod_q_homology(&Int::from(2)).unwrap();
        let z2 = AbelianGroup::cyclic(&Int::from(2));
        assert_eq!(h, vec![z2.clone(), z2.clone(), z2]);

        let h = times_four().mod_q_homology(&Int::from(8)).unwrap();
        assert_eq!(h[0], AbelianGroup::cyclic(&Int::from(4)));
        assert_eq!(h[1], AbelianGroup::cyclic(&Int::from(4)));
    }

    #[test]
    fn mod_q_direct_agrees_with_uct_on_fixtures() {
        for c in [rp2_complex(), times_four()] {
            for q in [2i64, 3, 4, 5, 8, 9] {
                let q = Int::from(q);
                assert_eq!(
                    c.mod_q_homology(&q).unwrap(),
                    c.mod_q_homology_direct(&q).unwrap(),
                    "q = {q}"
                );
            }
        }
    }

    #[test]
    fn brute_force_examples() {
        let counts = rp2_complex().brute_force_mod_q(&Int::from(2)).unwrap();
        assert_eq!(counts, vec![Int::from(2), Int::from(2), Int::from(2)]);

        let zero = ChainComplex::new(0, vec![1], vec![], Int::zero()).unwrap();
        // a single free generator: one mod-q class per residue
        assert_eq!(
            zero.brute_force_mod_q(&Int::from(3)).unwrap(),
            vec![Int::from(3)]
        );

        let counts = times_four().brute_force_mod_q(&Int::from(4)).unwrap();
        assert_eq!(counts, vec![Int::from(4), Int::from(4)]);
    }

    #[test]
    fn brute_force_guard_trips() {
        let c = ChainComplex::new(0, vec![30], vec![], Int::zero()).unwrap();
        assert!(matches!(
            c.brute_force_mod_q(&Int::from(9)),
            Err(Error::OracleTooLarge(_))
        ));
    }

    #[test]
    fn cone_of_identity_is_acyclic() {
        let c = rp2_complex();
        let cone = ChainMap::identity(&c).mapping_cone().unwrap();
        for g in cone.integral_homology().unwrap() {
            assert!(g.is_trivial(), "cone of identity must be contractible");
        }
    }

    #[test]
    fn cone_of_multiplication_by_two() {
        let point = ChainComplex::new(0, vec![1], vec![], Int::zero()).unwrap();
        let f = ChainMap::new(
            point.clone(),
            point,
            [(0, IntMatrix::from_i64_rows(&[&[2]]))].into(),
        )
        .unwrap();
        let cone = f.mapping_cone().unwrap();
        let h = cone.integral_homology().unwrap();
        assert_eq!(h[0], AbelianGroup::cyclic(&Int::from(2)));
        assert!(h[1].is_trivial());
    }

    #[test]
    fn cone_of_zero_map_splits() {
        let c = rp2_complex();
        let d = times_four();
        let f = ChainMap::zero(c.clone(), d.clone()).unwrap();
        let cone = f.mapping_cone().unwrap();
        let hc = c.integral_homology().unwrap();
        let hd = d.integral_homology().unwrap();
        let h = cone.integral_homology().unwrap();
        for (i, d_deg) in cone.degrees().enumerate() {
            let from_d = if d_deg >= d.base_degree() && d_deg <= d.top_degree() {
                hd[(d_deg - d.base_degree()) as usize].clone()
            } else {
                AbelianGroup::trivial()
            };
            let from_c = if d_deg - 1 >= c.base_degree() && d_deg - 1 <= c.top_degree() {
                hc[(d_deg - 1 - c.base_degree()) as usize].clone()
            } else {
                AbelianGroup::trivial()
            };
            assert_eq!(h[i], from_d.direct_sum(&from_c), "degree {d_deg}");
        }
    }

    #[test]
    fn chain_map_must_commute() {
        let c = rp2_complex();
        let d = rp2_complex();
        // scaling only degree 0 by 3 does not commute with the degree-2 boundary
        let bad = ChainMap::new(
            c,
            d,
            [
                (0, IntMatrix::from_i64_rows(&[&[1]])),
                (1, IntMatrix::from_i64_rows(&[&[1]])),
                (2, IntMatrix::from_i64_rows(&[&[2]])),
            ]
            .into(),
        );
        assert!(matches!(bad, Err(Error::NotChainMap { .. })));
    }

    #[test]
    fn les_cardinality_check_times_two() {
        let point = ChainComplex::new(0, vec![1], vec![], Int::zero()).unwrap();
        let f = ChainMap::new(
            point.clone(),
            point,
            [(0, IntMatrix::from_i64_rows(&[&[2]]))].into(),
        )
        .unwrap();
        let report = les_cardinality_check(&f, &Int::from(4)).unwrap();
        assert!(report.all_hold());
        let deg0 = report.entries.iter().find(|e| e.degree == 0).unwrap();
        assert_eq!(deg0.cone_cardinality, Int::from(2));
        assert_eq!(deg0.coker_cardinality, Int::from(2));
        assert_eq!(deg0.ker_cardinality, Int::one());
        let deg1 = report.entries.iter().find(|e| e.degree == 1).unwrap();
        assert_eq!(deg1.cone_cardinality, Int::from(2));
        assert_eq!(deg1.coker_cardinality, Int::one());
        assert_eq!(deg1.ker_cardinality, Int::from(2));
    }

    #[test]
    fn les_cardinality_check_identity_and_zero() {
        let c = rp2_complex();
        let id = ChainMap::identity(&c);
        let report = les_cardinality_check(&id, &Int::from(3)).unwrap();
        assert!(report.all_hold());
        for e in &report.entries {
            assert_eq!(e.cone_cardinality, Int::one());
        }

        let f = ChainMap::zero(rp2_complex(), times_four()).unwrap();
        let report = les_cardinality_check(&f, &Int::from(4)).unwrap();
        assert!(report.all_hold());
    }

    #[test]
    fn random_complex_is_deterministic_and_respects_torsion() {
        let spec = RandomComplexSpec::default();
        let a = random_complex(&spec, 42);
        let b = random_complex(&spec, 42);
        assert_eq!(a, b);

        let free_spec = RandomComplexSpec {
            torsion_primes: vec![],
            ..RandomComplexSpec::default()
        };
        for seed in 0..20 {
            let c = random_complex(&free_spec, seed);
            for g in c.integral_homology().unwrap() {
                assert!(g.invariant_factors().is_empty(), "expected free homology");
            }
        }
    }

    #[test]
    fn random_complex_torsion_support() {
        let spec = RandomComplexSpec::default();
        for seed in 0..100 {
            let c = random_complex(&spec, seed);
            for g in c.integral_homology().unwrap() {
                for d in g.invariant_factors() {
                    let mut d = d.clone();
                    for p in [2, 3] {
                        let p = Int::from(p);
                        while (&d % &p).is_zero() {
                            d /= &p;
                        }
                    }
                    assert!(d.is_one(), "torsion outside {{2,3}} in seed {seed}");
                }
            }
        }
    }

    #[test]
    fn euler_characteristic_matches_homology() {
        let spec = RandomComplexSpec::default();
        for seed in 0..50 {
            let c = random_complex(&spec, seed);
            let chi_ranks = c.euler_characteristic();
            let mut chi_hom = 0i64;
            for (i, g) in c.integral_homology().unwrap().iter().enumerate() {
                let d = c.base_degree() + i as i64;
                let sign = if d.rem_euclid(2) == 0 { 1 } else { -1 };
                chi_hom += sign * g.free_rank() as i64;
            }
            assert_eq!(chi_ranks, chi_hom, "seed {seed}");
        }
    }
}
