//! Finitely presented abelian groups and quotients of lattices.

use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, ToPrimitive, Zero};
use serde::Serialize;

use super::snf::{hermite_rows, smith_columns, solve_in_hermite, IntMatrix};

/// The group `ℤⁿ / <relations>` (relations are row vectors). Elements are
/// reduced to coordinates on the nontrivial invariant factors.
#[derive(Debug, Clone)]
pub struct FpAbelianGroup {
    n_generators: usize,
    /// invariant factors `d_i` with unit factors dropped, free part as 0
    factors: Vec<BigInt>,
    /// column transform restricted to the kept coordinates
    q: IntMatrix,
    kept: Vec<usize>,
}

impl FpAbelianGroup {
    pub fn new(n_generators: usize, relations: &[Vec<i64>]) -> Self {
        let big: Vec<Vec<BigInt>> = relations
            .iter()
            .map(|r| r.iter().map(|&x| BigInt::from(x)).collect())
            .collect();
        Self::from_big(n_generators, &big)
    }

    pub fn from_big(n_generators: usize, relations: &[Vec<BigInt>]) -> Self {
        let reduced = hermite_rows(n_generators, relations);
        let a = IntMatrix::from_rows(n_generators, reduced);
        let (d, q) = smith_columns(a);
        let mut factors = Vec::new();
        let mut kept = Vec::new();
        for i in 0..n_generators {
            let di = if i < d.nrows() { d.get(i, i).clone() } else { BigInt::zero() };
            if !di.is_one() {
                factors.push(di);
                kept.push(i);
            }
        }
        FpAbelianGroup {
            n_generators,
            factors,
            q,
            kept,
        }
    }

    pub fn n_generators(&self) -> usize {
        self.n_generators
    }

    /// Torsion factors in divisibility order followed by a 0 for each free
    /// summand.
    pub fn invariant_factors(&self) -> Vec<BigInt> {
        self.factors.clone()
    }

    pub fn free_rank(&self) -> usize {
        self.factors.iter().filter(|d| d.is_zero()).count()
    }

    pub fn torsion(&self) -> Vec<BigInt> {
        self.factors.iter().filter(|d| !d.is_zero()).cloned().collect()
    }

    pub fn is_trivial(&self) -> bool {
        self.factors.is_empty()
    }

    pub fn is_finite(&self) -> bool {
        self.free_rank() == 0
    }

    /// Order of a finite group, `None` when infinite.
    pub fn order(&self) -> Option<BigInt> {
        if !self.is_finite() {
            return None;
        }
        Some(self.factors.iter().fold(BigInt::one(), |acc, d| acc * d))
    }

    /// Normal-form coordinates of the class of `x`, one per invariant factor.
    pub fn project_big(&self, x: &[BigInt]) -> Vec<BigInt> {
        assert_eq!(x.len(), self.n_generators, "dimension mismatch");
        let y = self.q.vec_mul(x);
        self.kept
            .iter()
            .zip(&self.factors)
            .map(|(&i, d)| {
                if d.is_zero() {
                    y[i].clone()
                } else {
                    num_integer::Integer::mod_floor(&y[i], d)
                }
            })
            .collect()
    }

    pub fn project(&self, x: &[i64]) -> Vec<i64> {
        let big: Vec<BigInt> = x.iter().map(|&v| BigInt::from(v)).collect();
        self.project_big(&big)
            .iter()
            .map(|v| v.to_i64().expect("coordinate fits in i64"))
            .collect()
    }

    /// Human form such as `Z x Z2` or `0`.
    pub fn describe(&self) -> String {
        let mut parts: Vec<String> = Vec::new();
        match self.free_rank() {
            0 => {}
            1 => parts.push("Z".into()),
            r => parts.push(format!("Z^{r}")),
        }
        for d in self.torsion() {
            parts.push(format!("Z{d}"));
        }
        if parts.is_empty() {
            "0".into()
        } else {
            parts.join(" x ")
        }
    }

    pub fn summary(&self) -> GroupSummary {
        GroupSummary {
            structure: self.describe(),
            free_rank: self.free_rank(),
            torsion: self
                .torsion()
                .iter()
                .map(|d| d.to_u64().expect("torsion fits in u64"))
                .collect(),
        }
    }
}

impl fmt::Display for FpAbelianGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.describe())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct GroupSummary {
    pub structure: String,
    pub free_rank: usize,
    pub torsion: Vec<u64>,
}

/// `A / B` for lattices `B ⊆ A ⊆ ℤᵈ` given by generating sets.
#[derive(Debug, Clone)]
pub struct SublatticeQuotient {
    dim: usize,
    basis: Vec<Vec<BigInt>>,
    group: FpAbelianGroup,
}

impl SublatticeQuotient {
    pub fn new(dim: usize, big: &[Vec<i64>], small: &[Vec<i64>]) -> Self {
        let to_big = |rows: &[Vec<i64>]| -> Vec<Vec<BigInt>> {
            rows.iter()
                .map(|r| r.iter().map(|&x| BigInt::from(x)).collect())
                .collect()
        };
        let basis = hermite_rows(dim, &to_big(big));
        let rels: Vec<Vec<BigInt>> = to_big(small)
            .iter()
            .map(|s| solve_in_hermite(&basis, s).expect("small lattice lies in the big one"))
            .collect();
        let group = FpAbelianGroup::from_big(basis.len(), &rels);
        SublatticeQuotient { dim, basis, group }
    }

    pub fn group(&self) -> &FpAbelianGroup {
        &self.group
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    /// Class of `v`, or `None` if `v` is outside the big lattice.
    pub fn project(&self, v: &[i64]) -> Option<Vec<i64>> {
        let y: Vec<BigInt> = v.iter().map(|&x| BigInt::from(x)).collect();
        let x = solve_in_hermite(&self.basis, &y)?;
        Some(
            self.group
                .project_big(&x)
                .iter()
                .map(|c| c.to_i64().expect("coordinate fits in i64"))
                .collect(),
        )
    }

    pub fn contains(&self, v: &[i64]) -> bool {
        let y: Vec<BigInt> = v.iter().map(|&x| BigInt::from(x)).collect();
        solve_in_hermite(&self.basis, &y).is_some()
    }

    /// True when the class of `v` is zero (and `v` lies in the big lattice).
    pub fn is_zero_class(&self, v: &[i64]) -> bool {
        self.project(v)
            .is_some_and(|c| c.iter().all(|x| *x == 0))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cyclic_and_free() {
        let g = FpAbelianGroup::new(2, &[vec![2, 0]]);
        assert_eq!(g.describe(), "Z x Z2");
        assert_eq!(g.project(&[2, 0]), vec![0, 0]);
        assert_ne!(g.project(&[1, 0]), vec![0, 0]);
        let h = FpAbelianGroup::new(3, &[vec![1, 1, 0], vec![0, 1, 1], vec![1, 0, 1]]);
        assert_eq!(h.describe(), "Z2");
        assert_eq!(h.order().unwrap(), BigInt::from(2));
        let t = FpAbelianGroup::new(1, &[vec![1]]);
        assert!(t.is_trivial());
        assert_eq!(t.describe(), "0");
    }

    #[test]
    fn projection_respects_relations() {
        let rels = vec![vec![4, 6], vec![6, 4]];
        let g = FpAbelianGroup::new(2, &rels);
        assert_eq!(g.describe(), "Z2 x Z10");
        for r in &rels {
            assert!(g.project(r).iter().all(|x| *x == 0));
        }
        assert!(g.project(&[1, 0]).iter().any(|x| *x != 0));
    }

    #[test]
    fn sublattice_quotient() {
        // 2ℤ² / <(2,2), (4,0)>  ≅ ℤ2
        let q = SublatticeQuotient::new(2, &[vec![2, 0], vec![0, 2]], &[vec![2, 2], vec![4, 0]]);
        assert_eq!(q.group().describe(), "Z2");
        assert!(q.project(&[1, 0]).is_none());
        assert!(q.is_zero_class(&[2, 2]));
        assert!(!q.is_zero_class(&[2, 0]));
    }
}
