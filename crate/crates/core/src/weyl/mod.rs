//! The Weyl group `𝒲` of an extended root system: the extension of
//! `𝒜 = 𝒦 ⋊ 𝒱` by `Λ²G` through the ⊠ cocycle.

mod orbit;
mod word;

pub use orbit::{
    a_ab_image, ab_k, orbit_bruteforce, orbit_of, orbit_on_grid, orbit_table, uab_of_word, AbK, OrbitClass, UabVector,
};
pub use word::{
    decide_word, random_relator_product, random_word, naive_conditions, Decision, Layer, NaiveConditions, Word, WordLetter,
};

use serde::Serialize;

use crate::error::{Error, Result};
use crate::extended::ExtRootSystem;
use crate::lattice::boxtimes_form;
use crate::reflection::{k_part, weyl_act_k, ReflectionLabel};
use crate::roots::{FiniteRootSystem, IMat, WeylElement};

/// `c(k₁, k₂) = Σ b(λ̌ᵢ, μ̌ⱼ) gᵢ ∧ hⱼ`, stored as an antisymmetric `n × n`
/// matrix. `form` is the ⊠ form on the coroot lattice.
pub fn cocycle(form: &IMat, k1: &IMat, k2: &IMat) -> Result<IMat> {
    if k1.shape() != k2.shape() {
        return Err(Error::Dimension {
            expected: k1.nrows() * k1.ncols(),
            got: k2.nrows() * k2.ncols(),
        });
    }
    if k1.ncols() != form.nrows() {
        return Err(Error::Dimension {
            expected: form.nrows(),
            got: k1.ncols(),
        });
    }
    let m = k1 * form * k2.transpose();
    Ok(&m - m.transpose())
}

/// An element `(z, k, v)` of `𝒲`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct WElement {
    pub z: IMat,
    pub k: IMat,
    pub v: WeylElement,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct WElementJson {
    pub z: Vec<Vec<i64>>,
    pub k: Vec<Vec<i64>>,
    pub v: Vec<Vec<i64>>,
}

fn rows(m: &IMat) -> Vec<Vec<i64>> {
    (0..m.nrows()).map(|i| m.row(i).iter().copied().collect()).collect()
}

impl WElement {
    pub fn is_identity(&self) -> bool {
        self.z.iter().all(|x| *x == 0) && self.k.iter().all(|x| *x == 0) && self.v.is_identity()
    }

    pub fn to_json(&self) -> WElementJson {
        WElementJson {
            z: rows(&self.z),
            k: rows(&self.k),
            v: rows(self.v.matrix()),
        }
    }
}

/// Group law of `𝒲` for a fixed root system and rank of `G`.
#[derive(Debug, Clone)]
pub struct WeylGroup {
    rs: FiniteRootSystem,
    n: usize,
    form: IMat,
}

impl WeylGroup {
    pub fn new(rs: &FiniteRootSystem, n: usize) -> Self {
        WeylGroup {
            rs: rs.clone(),
            n,
            form: boxtimes_form(rs),
        }
    }

    pub fn of(ers: &ExtRootSystem) -> Self {
        Self::new(ers.delta(), ers.n())
    }

    pub fn root_system(&self) -> &FiniteRootSystem {
        &self.rs
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn form(&self) -> &IMat {
        &self.form
    }

    pub fn cocycle(&self, k1: &IMat, k2: &IMat) -> IMat {
        cocycle(&self.form, k1, k2).expect("shapes fixed by the group")
    }

    pub fn identity(&self) -> WElement {
        WElement {
            z: IMat::zeros(self.n, self.n),
            k: IMat::zeros(self.n, self.rs.rank()),
            v: WeylElement::identity(self.rs.rank()),
        }
    }

    /// `(z₁ + z₂ + c(k₁, v₁.k₂), k₁ + v₁.k₂, v₁v₂)`.
    pub fn mul(&self, a: &WElement, b: &WElement) -> WElement {
        let vk = weyl_act_k(&a.v, &b.k);
        WElement {
            z: &a.z + &b.z + self.cocycle(&a.k, &vk),
            k: &a.k + vk,
            v: a.v.mul(&b.v),
        }
    }

    pub fn inv(&self, a: &WElement) -> WElement {
        // c(k, -k) = 0, so z simply negates
        let vi = a.v.inverse();
        WElement {
            z: -&a.z,
            k: -weyl_act_k(&vi, &a.k),
            v: vi,
        }
    }

    pub fn generator(&self, t: &ReflectionLabel) -> WElement {
        WElement {
            z: IMat::zeros(self.n, self.n),
            k: k_part(&self.rs, t),
            v: self.rs.reflection(t.alpha),
        }
    }

    pub fn evaluate(&self, word: &[ReflectionLabel]) -> WElement {
        word.iter()
            .fold(self.identity(), |acc, t| self.mul(&acc, &self.generator(t)))
    }

    pub fn commutator(&self, a: &WElement, b: &WElement) -> WElement {
        let ab = self.mul(a, b);
        self.mul(&self.mul(&ab, &self.inv(a)), &self.inv(b))
    }

    pub fn pow(&self, a: &WElement, m: u32) -> WElement {
        (0..m).fold(self.identity(), |acc, _| self.mul(&acc, a))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::reflection::conj_reflect;
    use crate::roots::RootSystemType;

    fn group(t: &str, n: usize) -> WeylGroup {
        WeylGroup::new(&FiniteRootSystem::build(t.parse::<RootSystemType>().unwrap()), n)
    }

    #[test]
    fn cocycle_basics() {
        let w = group("B2", 2);
        let k = IMat::from_row_slice(2, 2, &[1, 2, -1, 0]);
        assert!(w.cocycle(&k, &k).iter().all(|x| *x == 0));
        let w1 = group("A2", 1);
        let k1 = IMat::from_row_slice(1, 2, &[3, 1]);
        let k2 = IMat::from_row_slice(1, 2, &[-1, 4]);
        assert_eq!(w1.cocycle(&k1, &k2), IMat::zeros(1, 1));
        assert!(cocycle(w.form(), &k, &k1).is_err());
    }

    #[test]
    fn generators_are_involutions_and_conjugate() {
        let w = group("B2", 2);
        let rs = w.root_system().clone();
        let t = ReflectionLabel::new(&rs, vec![1, -1], 1).unwrap();
        let s = ReflectionLabel::new(&rs, vec![2, 1], 3).unwrap();
        let (gt, gs) = (w.generator(&t), w.generator(&s));
        assert!(w.mul(&gt, &gt).is_identity());
        let conj = w.mul(&w.mul(&gt, &gs), &w.inv(&gt));
        assert_eq!(conj, w.generator(&conj_reflect(&rs, &t, &s)));
        assert!(w.evaluate(&[]).is_identity());
        assert!(w.evaluate(&[t.clone(), t]).is_identity());
    }

    #[test]
    fn commutator_of_central_parts() {
        let w = group("A2", 3);
        let k1 = IMat::from_row_slice(3, 2, &[1, 0, 0, 2, 1, 1]);
        let k2 = IMat::from_row_slice(3, 2, &[0, 1, 1, 0, -1, 3]);
        let a = WElement { k: k1.clone(), ..w.identity() };
        let b = WElement { k: k2.clone(), ..w.identity() };
        let c = w.commutator(&a, &b);
        assert_eq!(c.z, w.cocycle(&k1, &k2) * 2);
        assert!(c.k.iter().all(|x| *x == 0) && c.v.is_identity());
    }
}
