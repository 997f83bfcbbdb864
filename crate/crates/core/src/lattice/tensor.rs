//! Coinvariants of tensor products of the root and coroot lattices.
//!
//! Generators of `L ⊗ L'` are indexed by `(i, j) ↦ i·ℓ + j` over the
//! lattice bases.

use std::fmt;
use std::str::FromStr;

use num_integer::Integer;
use serde::{Deserialize, Serialize};

use super::abelian::FpAbelianGroup;
use crate::error::{Error, Result};
use crate::roots::{bilinear, FiniteRootSystem, IMat, LengthClass, WeylElement};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Side {
    Root,
    Coroot,
}

impl fmt::Display for Side {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Side::Root => "root",
            Side::Coroot => "coroot",
        })
    }
}

impl FromStr for Side {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s.trim() {
            "root" => Ok(Side::Root),
            "coroot" => Ok(Side::Coroot),
            other => Err(Error::Input(format!("expected `root` or `coroot`, got `{other}`"))),
        }
    }
}

/// A pair like `root,coroot`.
pub fn parse_pair(s: &str) -> Result<(Side, Side)> {
    let (a, b) = s
        .split_once(',')
        .ok_or_else(|| Error::Input(format!("expected `left,right`, got `{s}`")))?;
    Ok((a.parse()?, b.parse()?))
}

fn side_matrix(v: &WeylElement, side: Side) -> &IMat {
    match side {
        Side::Root => v.matrix(),
        Side::Coroot => v.coroot_matrix(),
    }
}

fn side_vector(rs: &FiniteRootSystem, side: Side, i: usize) -> &[i64] {
    match side {
        Side::Root => rs.root(i),
        Side::Coroot => rs.coroot(i),
    }
}

fn tensor(x: &[i64], y: &[i64]) -> Vec<i64> {
    let mut out = Vec::with_capacity(x.len() * y.len());
    for a in x {
        for b in y {
            out.push(a * b);
        }
    }
    out
}

fn coinvariant_relations(rs: &FiniteRootSystem, left: Side, right: Side) -> Vec<Vec<i64>> {
    let l = rs.rank();
    let mut rels = Vec::new();
    for v in rs.simple_reflections() {
        let ml = side_matrix(&v, left);
        let mr = side_matrix(&v, right);
        for i in 0..l {
            for j in 0..l {
                let mut r = vec![0i64; l * l];
                for a in 0..l {
                    for b in 0..l {
                        r[a * l + b] += ml[(a, i)] * mr[(b, j)];
                    }
                }
                r[i * l + j] -= 1;
                if r.iter().any(|&x| x != 0) {
                    rels.push(r);
                }
            }
        }
    }
    rels
}

/// `α ⊗ β` for perpendicular reflection pairs. Taking `α` among the basis
/// roots and their doubles suffices: every root is 𝒱-conjugate to one of
/// those, and the coinvariant relations already identify conjugates.
fn perpendicular_relations(rs: &FiniteRootSystem, left: Side, right: Side) -> Vec<Vec<i64>> {
    let mut reps: Vec<usize> = rs.basis().to_vec();
    for &a in rs.basis() {
        let doubled: Vec<i64> = rs.root(a).iter().map(|x| 2 * x).collect();
        reps.extend(rs.index_of(&doubled));
    }
    let mut rels = Vec::new();
    for a in reps {
        for b in 0..rs.len() {
            if rs.perpendicular(a, b) {
                rels.push(tensor(side_vector(rs, left, a), side_vector(rs, right, b)));
            }
        }
    }
    rels
}

/// `L ⊗_𝒱 L'`.
pub fn coinvariants(rs: &FiniteRootSystem, left: Side, right: Side) -> FpAbelianGroup {
    let l = rs.rank();
    FpAbelianGroup::new(l * l, &coinvariant_relations(rs, left, right))
}

/// `L ⊠ L'` together with its identification with ℤ.
#[derive(Debug, Clone)]
pub struct BoxQuotient {
    pub left: Side,
    pub right: Side,
    pub group: FpAbelianGroup,
    /// `b(e_i, f_j)` over the two lattice bases
    pub form: IMat,
    /// first basis tensor `(i, j)` with positive image
    pub witness: Option<(usize, usize)>,
}

impl BoxQuotient {
    pub fn value(&self, x: &[i64], y: &[i64]) -> i64 {
        bilinear(&self.form, x, y)
    }
}

pub fn box_quotient(rs: &FiniteRootSystem, left: Side, right: Side) -> BoxQuotient {
    let l = rs.rank();
    let mut rels = coinvariant_relations(rs, left, right);
    rels.extend(perpendicular_relations(rs, left, right));
    let group = FpAbelianGroup::new(l * l, &rels);
    let mut form = IMat::zeros(l, l);
    // a single free coordinate is expected; any torsion would show up in `group`
    let free = group
        .invariant_factors()
        .iter()
        .position(num_traits::Zero::is_zero);
    if let Some(k) = free {
        for i in 0..l {
            for j in 0..l {
                let mut e = vec![0i64; l * l];
                e[i * l + j] = 1;
                form[(i, j)] = group.project(&e)[k];
            }
        }
        // sign: b(first long basis root, itself) > 0
        let anchor = rs
            .basis()
            .iter()
            .copied()
            .find(|&a| rs.length_class(a) == LengthClass::Long)
            .unwrap_or(rs.basis()[0]);
        let x = side_vector(rs, left, anchor).to_vec();
        let y = side_vector(rs, right, anchor).to_vec();
        if bilinear(&form, &x, &y) < 0 {
            form = -form;
        }
    }
    let witness = (0..l * l)
        .map(|k| (k / l, k % l))
        .find(|&(i, j)| form[(i, j)] > 0);
    BoxQuotient {
        left,
        right,
        group,
        form,
        witness,
    }
}

/// The ⊠ form on the coroot lattice, the scalar part of the Weyl cocycle.
pub fn boxtimes_form(rs: &FiniteRootSystem) -> IMat {
    box_quotient(rs, Side::Coroot, Side::Coroot).form
}

/// Indices of the images of `φ: L⊠L → L⊠Ľ` and `ψ: L⊠Ľ → Ľ⊠Ľ` induced by
/// the inclusion `L ⊆ Ľ`.
pub fn inclusion_indices(rs: &FiniteRootSystem) -> Result<(i64, i64)> {
    let iota = rs.lattice_inclusion()?;
    let ll = box_quotient(rs, Side::Root, Side::Root);
    let lc = box_quotient(rs, Side::Root, Side::Coroot);
    let cc = box_quotient(rs, Side::Coroot, Side::Coroot);
    // the image is generated by images of basis tensors, so its index is
    // the gcd of their values
    let phi = lc.form.clone() * &iota;
    let psi = iota.transpose() * &cc.form;
    let check = |name: &str, pulled: &IMat, source: &IMat| -> Result<i64> {
        if !proportional(pulled, source) {
            return Err(Error::Domain(format!("{name} is not induced on the ⊠ quotient")));
        }
        Ok(pulled.iter().fold(0i64, |g, &x| g.gcd(&x)))
    };
    Ok((check("phi", &phi, &ll.form)?, check("psi", &psi, &lc.form)?))
}

fn proportional(a: &IMat, b: &IMat) -> bool {
    // a = c·b for some integer c, with b nonzero
    let Some(k) = b.iter().position(|&x| x != 0) else {
        return false;
    };
    let (bk, ak) = (b.as_slice()[k], a.as_slice()[k]);
    if ak % bk != 0 {
        return false;
    }
    let c = ak / bk;
    a.iter().zip(b.iter()).all(|(x, y)| *x == c * y)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::roots::{Family, RootSystemType};

    fn rs(f: Family, l: usize) -> FiniteRootSystem {
        FiniteRootSystem::from_family(f, l).unwrap()
    }

    #[test]
    fn small_coinvariants() {
        assert_eq!(coinvariants(&rs(Family::A, 2), Side::Root, Side::Root).describe(), "Z");
        assert_eq!(coinvariants(&rs(Family::B, 2), Side::Root, Side::Root).describe(), "Z x Z2");
        assert_eq!(coinvariants(&rs(Family::B, 3), Side::Root, Side::Coroot).describe(), "Z");
        assert_eq!(coinvariants(&rs(Family::BC, 2), Side::Root, Side::Root).describe(), "Z x Z2");
        assert_eq!(coinvariants(&rs(Family::BC, 2), Side::Root, Side::Coroot).describe(), "Z x Z2");
    }

    #[test]
    fn box_is_cyclic_and_kills_perpendicular_pairs() {
        for t in RootSystemType::all_up_to_rank(4) {
            let r = FiniteRootSystem::build(t);
            for (a, b) in [(Side::Root, Side::Root), (Side::Root, Side::Coroot), (Side::Coroot, Side::Coroot)] {
                let q = box_quotient(&r, a, b);
                assert_eq!(q.group.describe(), "Z", "{t} {a},{b}");
                for x in 0..r.len() {
                    for y in 0..r.len() {
                        if r.perpendicular(x, y) {
                            assert_eq!(q.value(side_vector(&r, a, x), side_vector(&r, b, y)), 0);
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn boxtimes_b2_and_a1() {
        let b2 = rs(Family::B, 2);
        let f = boxtimes_form(&b2);
        // basis[1] short α, basis[0] long β
        assert_eq!(f[(1, 1)], 2);
        assert_eq!(f[(0, 0)], 1);
        assert_eq!(f[(0, 1)], -1);
        let a1 = rs(Family::A, 1);
        assert_eq!(boxtimes_form(&a1)[(0, 0)], 1);
    }

    #[test]
    fn symmetry_of_root_tensor() {
        for t in RootSystemType::all_up_to_rank(4) {
            let r = FiniteRootSystem::build(t);
            let g = coinvariants(&r, Side::Root, Side::Root);
            let l = r.rank();
            for i in 0..l {
                for j in 0..l {
                    let mut d = vec![0i64; l * l];
                    d[i * l + j] += 1;
                    d[j * l + i] -= 1;
                    assert!(g.project(&d).iter().all(|x| *x == 0), "{t}");
                }
            }
        }
    }

    #[test]
    fn inclusion_indices_are_positive() {
        for t in ["B2", "B3", "C3", "F4", "G2"] {
            let r = FiniteRootSystem::build(t.parse().unwrap());
            let (phi, psi) = inclusion_indices(&r).unwrap();
            assert!(phi > 0 && psi > 0, "{t}");
        }
        assert!(inclusion_indices(&rs(Family::A, 2)).is_err());
    }
}
