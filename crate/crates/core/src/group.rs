//! Finitely generated abelian groups in canonical invariant-factor form.
//!
//! The canonical form (free rank plus a divisibility chain d_1 | d_2 | ...
//! with every d_i >= 2) is a unique normal form, so structural equality is
//! isomorphism testing.

use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::matrix::{Int, IntMatrix};

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct AbelianGroup {
    free_rank: usize,
    invariant_factors: Vec<Int>,
}

/// Cardinality of a finitely generated abelian group.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Cardinality {
    Finite(Int),
    Infinite,
}

impl Cardinality {
    pub fn finite(&self) -> Option<&Int> {
        match self {
            Cardinality::Finite(n) => Some(n),
            Cardinality::Infinite => None,
        }
    }
}

impl std::fmt::Display for Cardinality {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Cardinality::Finite(n) => write!(f, "{n}"),
            Cardinality::Infinite => write!(f, "infinite"),
        }
    }
}

impl AbelianGroup {
    pub fn trivial() -> Self {
        AbelianGroup {
            free_rank: 0,
            invariant_factors: Vec::new(),
        }
    }

    pub fn free(rank: usize) -> Self {
        AbelianGroup {
            free_rank: rank,
            invariant_factors: Vec::new(),
        }
    }

    /// Z/n for n >= 2; Z for n = 0; the trivial group for n = ±1.
    pub fn cyclic(n: &Int) -> Self {
        let a = n.abs();
        if a.is_zero() {
            AbelianGroup::free(1)
        } else if a.is_one() {
            AbelianGroup::trivial()
        } else {
            AbelianGroup {
                free_rank: 0,
                invariant_factors: vec![a],
            }
        }
    }

    /// Canonicalize an arbitrary list of cyclic orders (0 meaning Z).
    ///
    /// The torsion part is normalized by a Smith reduction of the diagonal
    /// relation matrix, which produces the invariant-factor chain directly.
    pub fn from_orders(orders: &[Int]) -> Self {
        let mut free_rank = 0;
        let mut torsion: Vec<Int> = Vec::new();
        for o in orders {
            let a = o.abs();
            if a.is_zero() {
                free_rank += 1;
            } else if !a.is_one() {
                torsion.push(a);
            }
        }
        if torsion.is_empty() {
            return AbelianGroup {
                free_rank,
                invariant_factors: Vec::new(),
            };
        }
        let snf = IntMatrix::diagonal(&torsion).smith_normal_form();
        let invariant_factors = snf
            .invariant_factors()
            .into_iter()
            .filter(|d| !d.is_one())
            .collect();
        AbelianGroup {
            free_rank,
            invariant_factors,
        }
    }

    pub fn free_rank(&self) -> usize {
        self.free_rank
    }

    pub fn invariant_factors(&self) -> &[Int] {
        &self.invariant_factors
    }

    pub fn is_trivial(&self) -> bool {
        self.free_rank == 0 && self.invariant_factors.is_empty()
    }

    pub fn direct_sum(&self, other: &AbelianGroup) -> AbelianGroup {
        let mut orders: Vec<Int> = vec![Int::zero(); self.free_rank + other.free_rank];
        orders.extend(self.invariant_factors.iter().cloned());
        orders.extend(other.invariant_factors.iter().cloned());
        AbelianGroup::from_orders(&orders)
    }

    /// Product of the invariant factors, or infinite when there is free rank.
    pub fn cardinality(&self) -> Cardinality {
        if self.free_rank > 0 {
            return Cardinality::Infinite;
        }
        let mut n = Int::one();
        for d in &self.invariant_factors {
            n *= d;
        }
        Cardinality::Finite(n)
    }

    /// Number of elements killed by m, i.e. #{x : m·x = 0}. Only meaningful
    /// for m >= 1; the free part contributes a factor of 1.
    pub fn elements_killed_by(&self, m: &Int) -> Int {
        let mut n = Int::one();
        for d in &self.invariant_factors {
            n *= d.gcd(m);
        }
        n
    }

    /// For a finite p-group, the multiplicity of each Z/p^s summand, keyed by
    /// the exponent s. Errors if the group has free rank or a factor that is
    /// not a power of p.
    pub fn p_power_multiplicities(&self, p: &Int) -> Result<std::collections::BTreeMap<u32, u64>> {
        if self.free_rank > 0 {
            return Err(Error::InvalidParameter(
                "group with free rank is not a finite p-group".into(),
            ));
        }
        let mut mult = std::collections::BTreeMap::new();
        for d in &self.invariant_factors {
            let s = p_power_exponent(d, p).ok_or_else(|| {
                Error::InvalidParameter(format!("factor {d} is not a power of {p}"))
            })?;
            *mult.entry(s).or_insert(0u64) += 1;
        }
        Ok(mult)
    }
}

impl std::fmt::Display for AbelianGroup {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        if self.is_trivial() {
            return write!(f, "0");
        }
        let mut parts = Vec::new();
        match self.free_rank {
            0 => {}
            1 => parts.push("Z".to_string()),
            r => parts.push(format!("Z^{r}")),
        }
        for d in &self.invariant_factors {
            parts.push(format!("Z/{d}"));
        }
        write!(f, "{}", parts.join(" ⊕ "))
    }
}

impl std::fmt::Debug for AbelianGroup {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{self}")
    }
}

/// Exponent s with d = p^s, if d is a power of p (d = 1 gives 0).
pub fn p_power_exponent(d: &Int, p: &Int) -> Option<u32> {
    let mut d = d.clone();
    let mut s = 0u32;
    while !d.is_one() {
        let (q, r) = d.div_rem(p);
        if !r.is_zero() {
            return None;
        }
        d = q;
        s += 1;
    }
    Some(s)
}

/// Presentation quotient: the subgroup of Z^n generated by the columns of
/// `cycles`, modulo the subgroup generated by the columns of `boundaries`.
///
/// Errors with `BoundariesNotContained` when a boundary column falls outside
/// the cycle lattice, which signals a non-complex upstream.
pub fn quotient_group(cycles: &IntMatrix, boundaries: &IntMatrix) -> Result<AbelianGroup> {
    if cycles.rows() != boundaries.rows() {
        return Err(Error::Shape(format!(
            "cycles live in Z^{} but boundaries in Z^{}",
            cycles.rows(),
            boundaries.rows()
        )));
    }
    let core = cycles.snf_core();
    let rank = core.rank();
    // Coordinates of each boundary column in the lattice basis {d_i · u_i}:
    // solve D·x = U·b, which needs exact divisibility by the d_i and zero
    // components beyond the rank.
    let ub = core.u.mul(boundaries);
    let mut relations = IntMatrix::zero(rank, boundaries.cols());
    for j in 0..ub.cols() {
        for i in 0..ub.rows() {
            let num = ub.at(i, j);
            if i < rank {
                let (q, r) = num.div_rem(core.d.at(i, i));
                if !r.is_zero() {
                    return Err(Error::BoundariesNotContained);
                }
                relations.set(i, j, q);
            } else if !num.is_zero() {
                return Err(Error::BoundariesNotContained);
            }
        }
    }
    let rel_snf = relations.smith_normal_form();
    let rel_rank = rel_snf.rank();
    let mut orders: Vec<Int> = vec![Int::zero(); rank - rel_rank];
    orders.extend(rel_snf.invariant_factors());
    Ok(AbelianGroup::from_orders(&orders))
}

/// G ⊗ Z/q and Tor(G, Z/q) for q >= 2.
///
/// For G = Z^f ⊕ ⊕ Z/d_i these are (Z/q)^f ⊕ ⊕ Z/gcd(d_i, q) and
/// ⊕ Z/gcd(d_i, q) respectively.
pub fn tensor_tor_with_zq(g: &AbelianGroup, q: &Int) -> Result<(AbelianGroup, AbelianGroup)> {
    if q < &Int::from(2) {
        return Err(Error::InvalidModulus(format!("q = {q}, need q >= 2")));
    }
    let mut tensor_orders: Vec<Int> = Vec::new();
    let mut tor_orders: Vec<Int> = Vec::new();
    for d in g.invariant_factors() {
        let gcd = d.gcd(q);
        tensor_orders.push(gcd.clone());
        tor_orders.push(gcd);
    }
    for _ in 0..g.free_rank() {
        tensor_orders.push(q.clone());
    }
    Ok((
        AbelianGroup::from_orders(&tensor_orders),
        AbelianGroup::from_orders(&tor_orders),
    ))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn quotient_z_mod_two() {
        let cycles = IntMatrix::identity(1);
        let boundaries = IntMatrix::from_i64_rows(&[&[2]]);
        let g = quotient_group(&cycles, &boundaries).unwrap();
        assert_eq!(g, AbelianGroup::cyclic(&Int::from(2)));
    }

    #[test]
    fn quotient_free_of_rank_two() {
        let cycles = IntMatrix::identity(2);
        let boundaries = IntMatrix::zero(2, 0);
        let g = quotient_group(&cycles, &boundaries).unwrap();
        assert_eq!(g, AbelianGroup::free(2));
    }

    #[test]
    fn quotient_with_two_and_six() {
        let cycles = IntMatrix::identity(2);
        let boundaries = IntMatrix::from_i64_rows(&[&[2, 0], &[0, 6]]);
        let g = quotient_group(&cycles, &boundaries).unwrap();
        assert_eq!(g.free_rank(), 0);
        assert_eq!(
            g.invariant_factors(),
            &[Int::from(2), Int::from(6)]
        );
    }

    #[test]
    fn quotient_rejects_uncontained_boundaries() {
        // cycle lattice 2·Z inside Z, boundary column (1) is outside it
        let cycles = IntMatrix::from_i64_rows(&[&[2]]);
        let boundaries = IntMatrix::from_i64_rows(&[&[1]]);
        assert!(matches!(
            quotient_group(&cycles, &boundaries),
            Err(Error::BoundariesNotContained)
        ));
    }

    #[test]
    fn from_orders_normalizes() {
        // Z/2 ⊕ Z/3 ≅ Z/6, and 1s disappear
        let g = AbelianGroup::from_orders(&[Int::from(2), Int::from(3), Int::one()]);
        assert_eq!(g.invariant_factors(), &[Int::from(6)]);
        let h = AbelianGroup::from_orders(&[Int::from(4), Int::from(2), Int::zero()]);
        assert_eq!(h.free_rank(), 1);
        assert_eq!(h.invariant_factors(), &[Int::from(2), Int::from(4)]);
    }

    #[test]
    fn tensor_tor_examples() {
        let z = AbelianGroup::free(1);
        let (t, tor) = tensor_tor_with_zq(&z, &Int::from(4)).unwrap();
        assert_eq!(t, AbelianGroup::cyclic(&Int::from(4)));
        assert!(tor.is_trivial());

        let z6 = AbelianGroup::cyclic(&Int::from(6));
        let (t, tor) = tensor_tor_with_zq(&z6, &Int::from(4)).unwrap();
        assert_eq!(t, AbelianGroup::cyclic(&Int::from(2)));
        assert_eq!(tor, AbelianGroup::cyclic(&Int::from(2)));

        let zero = AbelianGroup::trivial();
        let (t, tor) = tensor_tor_with_zq(&zero, &Int::from(5)).unwrap();
        assert!(t.is_trivial());
        assert!(tor.is_trivial());

        assert!(tensor_tor_with_zq(&z, &Int::one()).is_err());
    }

    #[test]
    fn cardinality_examples() {
        let g = AbelianGroup::from_orders(&[Int::from(2), Int::from(4)]);
        assert_eq!(g.cardinality(), Cardinality::Finite(Int::from(8)));
        assert_eq!(AbelianGroup::free(1).cardinality(), Cardinality::Infinite);
        assert_eq!(
            AbelianGroup::trivial().cardinality(),
            Cardinality::Finite(Int::one())
        );
    }

    #[test]
    fn display_reads_naturally() {
        let g = AbelianGroup::from_orders(&[Int::zero(), Int::zero(), Int::from(2), Int::from(6)]);
        assert_eq!(g.to_string(), "Z^2 ⊕ Z/2 ⊕ Z/6");
        assert_eq!(AbelianGroup::trivial().to_string(), "0");
    }

    #[test]
    fn p_power_multiplicities_reads_exponents() {
        let g = AbelianGroup::from_orders(&[
            Int::from(2),
            Int::from(2),
            Int::from(8),
        ]);
        let m = g.p_power_multiplicities(&Int::from(2)).unwrap();
        assert_eq!(m.get(&1), Some(&2));
        assert_eq!(m.get(&3), Some(&1));
        let g6 = AbelianGroup::cyclic(&Int::from(6));
        assert!(g6.p_power_multiplicities(&Int::from(2)).is_err());
    }
}
