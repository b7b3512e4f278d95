//! Decomposition of free Z/p^r complexes into elementary pieces and
//! reconstruction of homology groups from cardinality tables.
//!
//! The elementary pieces over R = Z/p^r are A^(s) for 1 <= s <= r: the
//! one-term complex [R] when s = r, and the two-term complex [R →p^s R]
//! when s < r. Tensoring with Z/p^w gives
//!   #H_0(A^(s) ⊗ Z/p^w) = p^min(w,s)   for every s,
//!   #H_1(A^(s) ⊗ Z/p^w) = p^min(w,s)   for s < r (the kernel of p^s),
//! and the one-term piece has no H_1. Summing over a multiset of shifted
//! pieces and inverting the min(w,s) matrix recovers the multiplicities
//! degree by degree, which is what `reconstruct_mod_pr` does.

use std::collections::BTreeMap;

use num_integer::Integer;
use num_traits::{One, Zero};

use crate::complex::ChainComplex;
use crate::error::{Error, Result};
use crate::group::{p_power_exponent, AbelianGroup, Cardinality};
use crate::matrix::{Int, IntMatrix};

/// One shifted elementary complex A^(s)[shift] over Z/p^r.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ElementaryComplex {
    p: Int,
    level: u32,
    exponent: u32,
    shift: i64,
}

impl ElementaryComplex {
    pub fn new(p: Int, level: u32, exponent: u32, shift: i64) -> Result<Self> {
        if level < 1 {
            return Err(Error::InvalidLevel(format!("level {level}, need >= 1")));
        }
        if exponent < 1 || exponent > level {
            return Err(Error::InvalidParameter(format!(
                "exponent {exponent} outside 1..={level}"
            )));
        }
        if !is_prime(&p) {
            return Err(Error::InvalidParameter(format!("{p} is not prime")));
        }
        Ok(ElementaryComplex {
            p,
            level,
            exponent,
            shift,
        })
    }

    pub fn prime(&self) -> &Int {
        &self.p
    }

    pub fn level(&self) -> u32 {
        self.level
    }

    pub fn exponent(&self) -> u32 {
        self.exponent
    }

    pub fn shift(&self) -> i64 {
        self.shift
    }

    /// True for the one-term complex [Z/p^r] (exponent = level).
    pub fn is_one_term(&self) -> bool {
        self.exponent == self.level
    }

    /// Materialize as a ChainComplex over Z/p^r.
    pub fn chain_complex(&self) -> ChainComplex {
        let modulus = self.p.pow(self.level);
        if self.is_one_term() {
            ChainComplex::new(self.shift, vec![1], vec![], modulus)
                .expect("one-term elementary complex is valid")
        } else {
            let differential = self.p.pow(self.exponent);
            ChainComplex::new(
                self.shift,
                vec![1, 1],
                vec![IntMatrix::new(1, 1, vec![differential]).unwrap()],
                modulus,
            )
            .expect("two-term elementary complex is valid")
        }
    }
}

/// Multiplicities a_i^(s) of A^(s)[i] in a decomposition at level (p, r).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DecompositionProfile {
    p: Int,
    level: u32,
    counts: BTreeMap<(i64, u32), u64>,
}

impl DecompositionProfile {
    pub fn new(p: Int, level: u32) -> Result<Self> {
        if level < 1 {
            return Err(Error::InvalidLevel(format!("level {level}, need >= 1")));
        }
        if !is_prime(&p) {
            return Err(Error::InvalidParameter(format!("{p} is not prime")));
        }
        Ok(DecompositionProfile {
            p,
            level,
            counts: BTreeMap::new(),
        })
    }

    pub fn prime(&self) -> &Int {
        &self.p
    }

    pub fn level(&self) -> u32 {
        self.level
    }

    pub fn add(&mut self, degree: i64, exponent: u32, count: u64) -> Result<()> {
        if exponent < 1 || exponent > self.level {
            return Err(Error::InvalidParameter(format!(
                "exponent {exponent} outside 1..={}",
                self.level
            )));
        }
        if count > 0 {
            *self.counts.entry((degree, exponent)).or_insert(0) += count;
        }
        Ok(())
    }

    pub fn count(&self, degree: i64, exponent: u32) -> u64 {
        self.counts.get(&(degree, exponent)).copied().unwrap_or(0)
    }

    pub fn counts(&self) -> &BTreeMap<(i64, u32), u64> {
        &self.counts
    }

    pub fn is_empty(&self) -> bool {
        self.counts.is_empty()
    }

    pub fn min_degree(&self) -> Option<i64> {
        self.counts.keys().map(|&(d, _)| d).min()
    }

    pub fn max_degree(&self) -> Option<i64> {
        self.counts.keys().map(|&(d, _)| d).max()
    }
}

/// The r×r matrix with (w,s) entry min(w,s), for w,s in 1..=r. Unimodular:
/// it factors as L·Lᵀ with L lower-triangular all-ones, so its determinant
/// is 1 for every r.
pub fn min_matrix(r: u32) -> Result<IntMatrix> {
    if r < 1 {
        return Err(Error::InvalidLevel(format!("level {r}, need >= 1")));
    }
    let n = r as usize;
    let mut m = IntMatrix::zero(n, n);
    for w in 1..=n {
        for s in 1..=n {
            m.set(w - 1, s - 1, Int::from(w.min(s) as u64));
        }
    }
    Ok(m)
}

/// Cardinalities #H_i(⊕ pieces ⊗ Z/p^w) predicted by a profile, as a map
/// degree → cardinality. Degrees with trivial homology are omitted.
pub fn cardinalities_of_profile(
    profile: &DecompositionProfile,
    w: u32,
) -> Result<BTreeMap<i64, Int>> {
    if w < 1 || w > profile.level() {
        return Err(Error::InvalidLevel(format!(
            "w = {w} outside 1..={}",
            profile.level()
        )));
    }
    let mut logs: BTreeMap<i64, u64> = BTreeMap::new();
    for (&(degree, s), &count) in profile.counts() {
        if count == 0 {
            continue;
        }
        let m = w.min(s) as u64;
        *logs.entry(degree).or_insert(0) += count * m;
        if s < profile.level() {
            // two-term piece: its kernel contributes one degree up
            *logs.entry(degree + 1).or_insert(0) += count * m;
        }
    }
    Ok(logs
        .into_iter()
        .filter(|&(_, e)| e > 0)
        .map(|(d, e)| (d, profile.prime().pow(e as u32)))
        .collect())
}

/// Cardinality table: #H_i(C ⊗ Z/p^w) for all 1 <= w <= max_level, keyed by
/// degree then level. Every value must be a power of p; degrees absent from
/// the map are trivial (all values 1).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CardinalityTable {
    p: Int,
    max_level: u32,
    values: BTreeMap<i64, BTreeMap<u32, Int>>,
}

impl CardinalityTable {
    pub fn new(p: Int, max_level: u32, values: BTreeMap<i64, BTreeMap<u32, Int>>) -> Result<Self> {
        if !is_prime(&p) {
            return Err(Error::InvalidParameter(format!("{p} is not prime")));
        }
        if max_level < 1 {
            return Err(Error::InvalidLevel(format!(
                "maxLevel {max_level}, need >= 1"
            )));
        }
        for (degree, row) in &values {
            for w in 1..=max_level {
                let Some(v) = row.get(&w) else {
                    return Err(Error::InconsistentTable(format!(
                        "degree {degree} is missing level {w}"
                    )));
                };
                if v < &Int::one() || p_power_exponent(v, &p).is_none() {
                    return Err(Error::InconsistentTable(format!(
                        "value {v} at degree {degree}, level {w} is not a power of {p}"
                    )));
                }
            }
            if row.keys().any(|&w| w < 1 || w > max_level) {
                return Err(Error::InconsistentTable(format!(
                    "degree {degree} carries a level outside 1..={max_level}"
                )));
            }
        }
        Ok(CardinalityTable {
            p,
            max_level,
            values,
        })
    }

    /// Table of a complex, computed directly at chain level.
    pub fn from_complex(c: &ChainComplex, p: &Int, max_level: u32) -> Result<Self> {
        let mut values: BTreeMap<i64, BTreeMap<u32, Int>> = BTreeMap::new();
        for w in 1..=max_level {
            let q = p.pow(w);
            let groups = c.mod_q_homology_direct(&q)?;
            for (d, g) in c.degrees().zip(groups) {
                let card = match g.cardinality() {
                    Cardinality::Finite(c) => c,
                    Cardinality::Infinite => unreachable!("mod-q homology is finite"),
                };
                values.entry(d).or_default().insert(w, card);
            }
        }
        // drop all-trivial degrees
        values.retain(|_, row| row.values().any(|v| !v.is_one()));
        CardinalityTable::new(p.clone(), max_level, values)
    }

    pub fn prime(&self) -> &Int {
        &self.p
    }

    pub fn max_level(&self) -> u32 {
        self.max_level
    }

    pub fn values(&self) -> &BTreeMap<i64, BTreeMap<u32, Int>> {
        &self.values
    }

    pub fn log_value(&self, degree: i64, w: u32) -> u64 {
        self.values
            .get(&degree)
            .and_then(|row| row.get(&w))
            .map(|v| p_power_exponent(v, &self.p).expect("validated") as u64)
            .unwrap_or(0)
    }

    pub fn min_degree(&self) -> Option<i64> {
        self.values.keys().next().copied()
    }

    pub fn max_degree(&self) -> Option<i64> {
        self.values.keys().next_back().copied()
    }
}

/// Solves for the profile at the given level (<= table level) by ascending
/// induction over degrees. For each degree the r unknowns a_i^(s) satisfy
///   Σ_s a_i^(s)·min(w,s) = log_p #H_i(⊗Z/p^w) − Σ_{s<level} a_{i−1}^(s)·min(w,s)
/// and the min-matrix system solves in closed form by differencing.
fn solve_profile(table: &CardinalityTable, level: u32) -> Result<DecompositionProfile> {
    if level < 1 || level > table.max_level() {
        return Err(Error::InvalidLevel(format!(
            "level {level} outside 1..={}",
            table.max_level()
        )));
    }
    let mut profile = DecompositionProfile::new(table.prime().clone(), level)?;
    let (Some(lo), Some(hi)) = (table.min_degree(), table.max_degree()) else {
        return Ok(profile);
    };
    let r = level as usize;
    let mut prev = vec![0i64; r + 1]; // prev[s] = a_{i-1}^(s), 1-based
    // one degree past the top confirms nothing is left over
    for degree in lo..=hi + 1 {
        // residual logs after subtracting kernels of the previous degree
        let mut c = vec![0i64; r + 1];
        for w in 1..=r {
            let mut echo = 0i64;
            for s in 1..r {
                echo += prev[s] * (w.min(s) as i64);
            }
            c[w] = table.log_value(degree, w as u32) as i64 - echo;
            if c[w] < 0 {
                return Err(Error::InconsistentTable(format!(
                    "degree {degree}, level {w}: cardinalities undershoot the \
                     kernel contribution of degree {}",
                    degree - 1
                )));
            }
        }
        // T_w = Σ_{s>=w} a^(s) comes from consecutive differences
        let mut t = vec![0i64; r + 2];
        for w in 1..=r {
            t[w] = c[w] - c[w - 1];
        }
        let mut current = vec![0i64; r + 1];
        for s in 1..=r {
            let a = t[s] - if s < r { t[s + 1] } else { 0 };
            if a < 0 {
                return Err(Error::InconsistentTable(format!(
                    "degree {degree}: multiplicity of type {s} solves to {a}"
                )));
            }
            current[s] = a;
            profile.add(degree, s as u32, a as u64)?;
        }
        prev = current;
    }
    Ok(profile)
}

/// Groups H_i(C ⊗ Z/p^r) recovered from the cardinality table alone, one
/// per degree of the table. Each degree contributes ⊕_s (Z/p^s)^{a_i^(s)}
/// plus the kernels (Z/p^s)^{a_{i−1}^(s)} of the two-term pieces one degree
/// below.
pub fn reconstruct_mod_pr(table: &CardinalityTable) -> Result<Vec<(i64, AbelianGroup)>> {
    let level = table.max_level();
    let profile = solve_profile(table, level)?;
    let (Some(lo), Some(hi)) = (table.min_degree(), table.max_degree()) else {
        return Ok(Vec::new());
    };
    let mut out = Vec::new();
    for degree in lo..=hi {
        let mut orders: Vec<Int> = Vec::new();
        for s in 1..=level {
            let here = profile.count(degree, s);
            for _ in 0..here {
                orders.push(table.prime().pow(s));
            }
            if s < level {
                let below = profile.count(degree - 1, s);
                for _ in 0..below {
                    orders.push(table.prime().pow(s));
                }
            }
        }
        out.push((degree, AbelianGroup::from_orders(&orders)));
    }
    Ok(out)
}

/// Truncation identities tying the level-r profile to the level-(r−1)
/// profile of the same complex: types s <= r−2 agree, and the top-type
/// counts at r−1 absorb exactly the freshly resolved p^{r−1} torsion.
fn check_stabilized(
    at_level: &DecompositionProfile,
    at_prev: &DecompositionProfile,
    r: u32,
) -> Result<()> {
    let lo = at_level
        .min_degree()
        .into_iter()
        .chain(at_prev.min_degree())
        .min()
        .unwrap_or(0);
    let hi = at_level
        .max_degree()
        .into_iter()
        .chain(at_prev.max_degree())
        .max()
        .unwrap_or(0);
    for degree in lo..=hi {
        for s in 1..=r.saturating_sub(2) {
            if at_level.count(degree, s) != at_prev.count(degree, s) {
                return Err(Error::LevelTooSmall(format!(
                    "type-{s} counts at degree {degree} disagree between levels {} and {r}",
                    r - 1
                )));
            }
        }
        let expected = at_level.count(degree, r)
            + at_level.count(degree, r - 1)
            + at_level.count(degree - 1, r - 1);
        if at_prev.count(degree, r - 1) != expected {
            return Err(Error::LevelTooSmall(format!(
                "top-type counts at degree {degree} are not explained by \
                 p^{} torsion",
                r - 1
            )));
        }
    }
    Ok(())
}

/// Integral homology recovered from per-prime cardinality tables.
///
/// Each table must be deep enough that all p-torsion has exponent < its
/// maxLevel; a Z/p^t summand with t >= maxLevel is indistinguishable from a
/// free summand at these levels, so the caller asserts the supplied primes
/// and depths cover the torsion. Free ranks must agree across primes.
pub fn reconstruct_integral(tables: &[CardinalityTable]) -> Result<Vec<(i64, AbelianGroup)>> {
    if tables.is_empty() {
        return Err(Error::InvalidParameter("no cardinality tables given".into()));
    }
    for (i, a) in tables.iter().enumerate() {
        for b in &tables[i + 1..] {
            if a.prime() == b.prime() {
                return Err(Error::InconsistentPrimeTables(format!(
                    "duplicate tables for p = {}",
                    a.prime()
                )));
            }
        }
    }

    struct PrimePart {
        p: Int,
        level: u32,
        profile: DecompositionProfile,
    }
    let mut parts = Vec::with_capacity(tables.len());
    for table in tables {
        let r = table.max_level();
        let profile = solve_profile(table, r)?;
        if r >= 2 {
            let prev = solve_profile(table, r - 1)?;
            check_stabilized(&profile, &prev, r)?;
        }
        parts.push(PrimePart {
            p: table.prime().clone(),
            level: r,
            profile,
        });
    }

    let lo = tables.iter().filter_map(CardinalityTable::min_degree).min();
    let hi = tables.iter().filter_map(CardinalityTable::max_degree).max();
    let (Some(lo), Some(hi)) = (lo, hi) else {
        return Ok(Vec::new());
    };

    let mut out = Vec::new();
    for degree in lo..=hi {
        // the top-type count at a stabilized level is the free rank
        let free_ranks: Vec<u64> = parts
            .iter()
            .map(|part| part.profile.count(degree, part.level))
            .collect();
        let free = free_ranks[0];
        if free_ranks.iter().any(|&f| f != free) {
            let detail: Vec<String> = parts
                .iter()
                .zip(&free_ranks)
                .map(|(part, f)| format!("p={}: {f}", part.p))
                .collect();
            return Err(Error::InconsistentPrimeTables(format!(
                "free rank at degree {degree} disagrees ({})",
                detail.join(", ")
            )));
        }
        let mut orders: Vec<Int> = vec![Int::zero(); free as usize];
        for part in &parts {
            for s in 1..part.level {
                for _ in 0..part.profile.count(degree, s) {
                    orders.push(part.p.pow(s));
                }
            }
        }
        out.push((degree, AbelianGroup::from_orders(&orders)));
    }
    Ok(out)
}

/// Decomposes a free Z/p^r complex into elementary pieces, returning the
/// multiplicity profile. Contractible pairs (unit pivots) are discarded.
///
/// Two routes sit behind the one contract. When the stored integer matrices
/// compose to zero over Z, a bottom-up Smith reduction splits the lift into
/// [Z →m Z] pieces whose p-adic valuations classify directly. Otherwise the
/// mod-p^r homology groups are computed exactly and the multiplicities are
/// recovered by the same induction the cardinality solver uses. Either way
/// the profile is verified to reproduce the complex's cardinalities at every
/// level w <= r before it is returned.
pub fn elementary_decompose(c: &ChainComplex) -> Result<DecompositionProfile> {
    let modulus = c.modulus();
    if modulus.is_zero() {
        return Err(Error::UnsupportedRing("0 (the ring must be Z/p^r)".into()));
    }
    let (p, r) = prime_power_split(modulus)
        .ok_or_else(|| Error::UnsupportedRing(modulus.to_string()))?;

    let profile = if composes_to_zero_over_z(c) {
        decompose_via_integral_lift(c, &p, r)?
    } else {
        decompose_via_homology(c, &p, r)?
    };

    // the contract: the profile reproduces every mod-p^w cardinality
    for w in 1..=r {
        let q = p.pow(w);
        let predicted = cardinalities_of_profile(&profile, w)?;
        let groups = c.mod_q_homology_direct(&q)?;
        for (d, g) in c.degrees().zip(groups) {
            let actual = match g.cardinality() {
                Cardinality::Finite(card) => card,
                Cardinality::Infinite => unreachable!(),
            };
            let claimed = predicted.get(&d).cloned().unwrap_or_else(Int::one);
            if claimed != actual {
                return Err(Error::NotDecomposable(format!(
                    "degree {d}, w = {w}: profile predicts {claimed}, complex has {actual}"
                )));
            }
        }
        for d in predicted.keys() {
            if c.rank_at(*d) == 0 && !predicted[d].is_one() {
                return Err(Error::NotDecomposable(format!(
                    "profile predicts homology at degree {d} outside the complex"
                )));
            }
        }
    }
    Ok(profile)
}

/// CRT split: decomposes a complex over Z/m for any m >= 2 by reducing to
/// each prime-power factor of m, returning one profile per prime.
pub fn decompose_all_primes(c: &ChainComplex) -> Result<Vec<DecompositionProfile>> {
    let modulus = c.modulus();
    if modulus < &Int::from(2) {
        return Err(Error::UnsupportedRing(modulus.to_string()));
    }
    let factors = factorize(modulus);
    factors
        .into_iter()
        .map(|(p, r)| {
            let reduced = c.with_modulus(p.pow(r))?;
            elementary_decompose(&reduced)
        })
        .collect()
}

fn composes_to_zero_over_z(c: &ChainComplex) -> bool {
    let bs = c.boundaries();
    (0..bs.len().saturating_sub(1)).all(|i| bs[i].mul(&bs[i + 1]).is_zero())
}

/// Bottom-up integral Smith reduction. Over Z, once a boundary is diagonal,
/// exactness forces the rows of the next boundary indexed by pivot columns
/// to vanish, so pivot pairs split off and the sweep never revisits
/// completed degrees.
fn decompose_via_integral_lift(
    c: &ChainComplex,
    p: &Int,
    r: u32,
) -> Result<DecompositionProfile> {
    let mut profile = DecompositionProfile::new(p.clone(), r)?;
    let mut classify_pivot = |value: &Int, degree: i64, profile: &mut DecompositionProfile| {
        let v = valuation(value, p).min(r);
        if v == 0 {
            // unit pivot: contractible pair, discard
        } else if v < r {
            profile.add(degree, v, 1).expect("exponent in range");
        } else {
            // differential divisible by p^r: acts as zero, two one-term pieces
            profile.add(degree, r, 1).expect("exponent in range");
            profile.add(degree + 1, r, 1).expect("exponent in range");
        }
    };

    if c.is_empty() {
        return Ok(profile);
    }
    let mut current: Option<IntMatrix> = None; // boundary with consumed rows dropped
    for (idx, degree) in c.degrees().enumerate() {
        let outgoing_consumed; // generators of this degree used as pivot tops
        let matrix = match current.take() {
            Some(m) => m,
            None => c.boundary_from(degree + 1),
        };
        if idx + 1 < c.len() {
            let snf = matrix.snf_core();
            let rank = snf.rank();
            for i in 0..rank {
                classify_pivot(snf.d.at(i, i), degree, &mut profile);
            }
            // free generators of this degree: rows not hit by any pivot
            let free = matrix.rows() - rank;
            if free > 0 {
                profile.add(degree, r, free as u64)?;
            }
            outgoing_consumed = rank;
            // rewrite the next boundary in the new basis of this column space
            let next = snf.v_inv.mul(&c.boundary_from(degree + 2));
            for i in 0..outgoing_consumed {
                for j in 0..next.cols() {
                    if !next.at(i, j).is_zero() {
                        return Err(Error::NotDecomposable(format!(
                            "pivot row {i} of the boundary into degree {degree} \
                             does not split"
                        )));
                    }
                }
            }
            let keep: Vec<usize> = (outgoing_consumed..next.rows()).collect();
            current = Some(next.select_rows(&keep));
        } else {
            // top degree: every remaining generator is free
            let alive = matrix.rows();
            if alive > 0 {
                profile.add(degree, r, alive as u64)?;
            }
        }
    }
    Ok(profile)
}

/// Recover the profile from the isomorphism types of H_i(C ⊗ Z/p^r): the
/// multiplicity of Z/p^s there is a_i^(s) + a_{i−1}^(s) for s < r and
/// exactly a_i^(r) for s = r.
fn decompose_via_homology(c: &ChainComplex, p: &Int, r: u32) -> Result<DecompositionProfile> {
    let mut profile = DecompositionProfile::new(p.clone(), r)?;
    let q = p.pow(r);
    let groups = c.mod_q_homology_direct(&q)?;
    let mut prev: BTreeMap<u32, u64> = BTreeMap::new();
    for (d, g) in c.degrees().zip(groups) {
        let mult = g.p_power_multiplicities(p).map_err(|_| {
            Error::NotDecomposable(format!("homology at degree {d} is not a p-group"))
        })?;
        let mut current: BTreeMap<u32, u64> = BTreeMap::new();
        for s in 1..=r {
            let observed = mult.get(&s).copied().unwrap_or(0);
            let a = if s < r {
                let echo = prev.get(&s).copied().unwrap_or(0);
                observed.checked_sub(echo).ok_or_else(|| {
                    Error::NotDecomposable(format!(
                        "degree {d}: too few Z/{}^{s} summands for the kernels below",
                        p
                    ))
                })?
            } else {
                observed
            };
            if a > 0 {
                profile.add(d, s, a)?;
                current.insert(s, a);
            }
        }
        prev = current;
    }
    // kernels escaping past the top degree cannot exist
    for (&s, &a) in &prev {
        if s < r && a > 0 {
            return Err(Error::NotDecomposable(format!(
                "type-{s} pieces at the top degree would push homology past the complex"
            )));
        }
    }
    Ok(profile)
}

fn valuation(n: &Int, p: &Int) -> u32 {
    if n.is_zero() {
        return u32::MAX;
    }
    let mut n = n.clone();
    let mut v = 0;
    loop {
        let (q, rem) = n.div_rem(p);
        if !rem.is_zero() {
            return v;
        }
        n = q;
        v += 1;
    }
}

fn is_prime(p: &Int) -> bool {
    if p < &Int::from(2) {
        return false;
    }
    let mut d = Int::from(2);
    while &d * &d <= *p {
        if (p % &d).is_zero() {
            return false;
        }
        d += 1;
    }
    true
}

/// (p, r) such that m = p^r, when m is a prime power >= 2.
fn prime_power_split(m: &Int) -> Option<(Int, u32)> {
    let factors = factorize(m);
    if factors.len() == 1 {
        let (p, r) = factors.into_iter().next().unwrap();
        Some((p, r))
    } else {
        None
    }
}

fn factorize(m: &Int) -> Vec<(Int, u32)> {
    let mut m = m.clone();
    let mut out = Vec::new();
    let mut d = Int::from(2);
    while &d * &d <= m {
        if (&m % &d).is_zero() {
            let mut e = 0;
            while (&m % &d).is_zero() {
                m /= &d;
                e += 1;
            }
            out.push((d.clone(), e));
        }
        d += 1;
    }
    if m > Int::one() {
        out.push((m, 1));
    }
    out
}
