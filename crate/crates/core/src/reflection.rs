//! Symmetric systems, reflection groups and the group `𝒜 = 𝒦 ⋊ 𝒱`.

use std::collections::{HashMap, HashSet, VecDeque};
use std::hash::Hash;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::roots::{mat_vec, FiniteRootSystem, IMat, LengthClass, WeylElement};

pub const DEFAULT_T_CAP: usize = 64;
pub const DEFAULT_GROUP_CAP: usize = 1_000_000;

/// A finite set `T` with a multiplication table `(s, t) ↦ s.t`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SymSystem {
    table: Vec<Vec<usize>>,
}

impl SymSystem {
    pub fn new(table: Vec<Vec<usize>>) -> Result<Self> {
        let n = table.len();
        for row in &table {
            if row.len() != n {
                return Err(Error::Dimension {
                    expected: n,
                    got: row.len(),
                });
            }
            if let Some(bad) = row.iter().find(|&&x| x >= n) {
                return Err(Error::Input(format!("table entry {bad} out of range")));
            }
        }
        Ok(SymSystem { table })
    }

    /// `s.t = t` for all `s`, `t`.
    pub fn trivial(k: usize) -> Self {
        SymSystem {
            table: (0..k).map(|_| (0..k).collect()).collect(),
        }
    }

    /// The reflections of `Δ` under conjugation, indexed by the positive
    /// reduced roots returned alongside.
    pub fn of_root_system(rs: &FiniteRootSystem) -> (Self, Vec<usize>) {
        let reps: Vec<usize> = (0..rs.n_positive())
            .filter(|&i| rs.length_class(i) != LengthClass::ExtraLong)
            .collect();
        let pos: HashMap<usize, usize> = reps.iter().enumerate().map(|(k, &r)| (r, k)).collect();
        let table = reps
            .iter()
            .map(|&a| {
                reps.iter()
                    .map(|&b| pos[&reflection_rep(rs, rs.reflect_root(a, b))])
                    .collect()
            })
            .collect();
        (SymSystem { table }, reps)
    }

    pub fn len(&self) -> usize {
        self.table.len()
    }

    pub fn is_empty(&self) -> bool {
        self.table.is_empty()
    }

    pub fn mul(&self, s: usize, t: usize) -> usize {
        self.table[s][t]
    }

    pub fn table(&self) -> &[Vec<usize>] {
        &self.table
    }

    pub fn set(&mut self, s: usize, t: usize, value: usize) {
        self.table[s][t] = value;
    }

    /// `s ⊥ t`: distinct and commuting.
    pub fn perpendicular(&self, s: usize, t: usize) -> bool {
        s != t && self.mul(s, t) == t && self.mul(t, s) == s
    }
}

/// Positive reduced root with the same reflection as root `i`.
pub fn reflection_rep(rs: &FiniteRootSystem, i: usize) -> usize {
    let mut i = i;
    if rs.length_class(i) == LengthClass::ExtraLong {
        let half: Vec<i64> = rs.root(i).iter().map(|x| x / 2).collect();
        i = rs.index_of(&half).expect("extralong roots are doubles");
    }
    if rs.is_positive(i) {
        i
    } else {
        rs.negate(i)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SymReport {
    /// `(s, t)` with `s.(s.t) ≠ t`
    pub s1: Option<(usize, usize)>,
    /// `(r, s, t)` with `r.(s.t) ≠ (r.s).(r.t)`
    pub s2: Option<(usize, usize, usize)>,
}

impl SymReport {
    pub fn passed(&self) -> bool {
        self.s1.is_none() && self.s2.is_none()
    }
}

pub fn check_sym_axioms(sys: &SymSystem) -> SymReport {
    let n = sys.len();
    let mut s1 = None;
    'a: for s in 0..n {
        for t in 0..n {
            if sys.mul(s, sys.mul(s, t)) != t {
                s1 = Some((s, t));
                break 'a;
            }
        }
    }
    let mut s2 = None;
    'b: for r in 0..n {
        for s in 0..n {
            for t in 0..n {
                if sys.mul(r, sys.mul(s, t)) != sys.mul(sys.mul(r, s), sys.mul(r, t)) {
                    s2 = Some((r, s, t));
                    break 'b;
                }
            }
        }
    }
    SymReport { s1, s2 }
}

/// A group acting on the index set of a symmetric system.
pub trait ReflectionModel {
    type Elem: Clone + Eq + Hash;
    fn identity(&self) -> Self::Elem;
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn act(&self, x: &Self::Elem, t: usize) -> usize;
}

/// Permutations of `{0, …, n-1}`, composed right to left.
#[derive(Debug, Clone, Copy)]
pub struct PermModel {
    pub n: usize,
}

impl ReflectionModel for PermModel {
    type Elem = Vec<usize>;

    fn identity(&self) -> Vec<usize> {
        (0..self.n).collect()
    }

    fn mul(&self, a: &Vec<usize>, b: &Vec<usize>) -> Vec<usize> {
        b.iter().map(|&x| a[x]).collect()
    }

    fn act(&self, x: &Vec<usize>, t: usize) -> usize {
        x[t]
    }
}

/// The Weyl group acting on the reflections of a root system.
pub struct WeylModel<'a> {
    rs: &'a FiniteRootSystem,
    reps: Vec<usize>,
    pos: HashMap<usize, usize>,
}

impl<'a> WeylModel<'a> {
    pub fn new(rs: &'a FiniteRootSystem, reps: &[usize]) -> Self {
        WeylModel {
            rs,
            reps: reps.to_vec(),
            pos: reps.iter().enumerate().map(|(k, &r)| (r, k)).collect(),
        }
    }

    /// `t ↦ r_α` for the reflections of the system.
    pub fn images(&self) -> Vec<WeylElement> {
        self.reps.iter().map(|&a| self.rs.reflection(a)).collect()
    }
}

impl ReflectionModel for WeylModel<'_> {
    type Elem = WeylElement;

    fn identity(&self) -> WeylElement {
        WeylElement::identity(self.rs.rank())
    }

    fn mul(&self, a: &WeylElement, b: &WeylElement) -> WeylElement {
        a.mul(b)
    }

    fn act(&self, x: &WeylElement, t: usize) -> usize {
        let img = self.rs.act_on_root(x, self.reps[t]);
        self.pos[&reflection_rep(self.rs, img)]
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ReflGroupReport {
    /// order of the generated group, `None` if the cap was hit
    pub order: Option<usize>,
    pub g2: Option<(usize, usize)>,
    pub g3: Option<(usize, usize)>,
    pub g4: Option<usize>,
    pub separates: bool,
    pub proper: bool,
}

impl ReflGroupReport {
    /// (G1) holds by construction: the group is the one generated.
    pub fn passed(&self) -> bool {
        self.order.is_some() && self.g2.is_none() && self.g3.is_none() && self.g4.is_none()
    }
}

fn closure<M: ReflectionModel>(model: &M, gens: &[M::Elem], cap: usize) -> Option<Vec<M::Elem>> {
    let id = model.identity();
    let mut seen: HashSet<M::Elem> = HashSet::from([id.clone()]);
    let mut order = vec![id.clone()];
    let mut queue = VecDeque::from([id]);
    while let Some(x) = queue.pop_front() {
        for g in gens {
            let y = model.mul(g, &x);
            if seen.insert(y.clone()) {
                if seen.len() > cap {
                    return None;
                }
                order.push(y.clone());
                queue.push_back(y);
            }
        }
    }
    Some(order)
}

fn inverse<M: ReflectionModel>(model: &M, x: &M::Elem, cap: usize) -> Option<M::Elem> {
    let id = model.identity();
    let mut prev = id.clone();
    let mut cur = x.clone();
    for _ in 0..cap {
        if cur == id {
            return Some(prev);
        }
        prev = cur.clone();
        cur = model.mul(&cur, x);
    }
    None
}

/// Check (G1)–(G4) for `t ↦ images[t]`.
pub fn check_reflection_group<M: ReflectionModel>(
    sys: &SymSystem,
    images: &[M::Elem],
    model: &M,
    cap: usize,
) -> Result<ReflGroupReport> {
    if images.len() != sys.len() {
        return Err(Error::Dimension {
            expected: sys.len(),
            got: images.len(),
        });
    }
    let n = sys.len();
    let order = closure(model, images, cap).map(|g| g.len());
    let mut g2 = None;
    'g2: for t in 0..n {
        for s in 0..n {
            if model.act(&images[t], s) != sys.mul(t, s) {
                g2 = Some((t, s));
                break 'g2;
            }
        }
    }
    let mut g3 = None;
    'g3: for t in 0..n {
        let inv = inverse(model, &images[t], cap)
            .ok_or_else(|| Error::Cap(format!("order of image {t} exceeds {cap}")))?;
        for s in 0..n {
            let conj = model.mul(&model.mul(&images[t], &images[s]), &inv);
            if conj != images[sys.mul(t, s)] {
                g3 = Some((t, s));
                break 'g3;
            }
        }
    }
    let id = model.identity();
    let g4 = (0..n).find(|&t| model.mul(&images[t], &images[t]) != id);
    let distinct: HashSet<&M::Elem> = images.iter().collect();
    let separates = distinct.len() == n;
    let proper = separates && images.iter().all(|x| *x != id);
    Ok(ReflGroupReport {
        order,
        g2,
        g3,
        g4,
        separates,
        proper,
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TerminalGroup {
    pub generators: Vec<Vec<usize>>,
    pub order: usize,
    pub orbits: Vec<Vec<usize>>,
}

/// The permutation group generated by `s^𝒯: t ↦ s.t`.
pub fn terminal_group(sys: &SymSystem, t_cap: usize, group_cap: usize) -> Result<TerminalGroup> {
    let n = sys.len();
    if n > t_cap {
        return Err(Error::Cap(format!("|T| = {n} exceeds {t_cap}")));
    }
    let generators: Vec<Vec<usize>> = (0..n).map(|s| (0..n).map(|t| sys.mul(s, t)).collect()).collect();
    let model = PermModel { n };
    let elems = closure(&model, &generators, group_cap)
        .ok_or_else(|| Error::Cap(format!("group closure exceeds {group_cap} elements")))?;
    let mut orbit_of = vec![usize::MAX; n];
    let mut orbits = Vec::new();
    for t in 0..n {
        if orbit_of[t] != usize::MAX {
            continue;
        }
        let mut orbit: Vec<usize> = elems.iter().map(|x| x[t]).collect();
        orbit.sort_unstable();
        orbit.dedup();
        for &u in &orbit {
            orbit_of[u] = orbits.len();
        }
        orbits.push(orbit);
    }
    Ok(TerminalGroup {
        generators,
        order: elems.len(),
        orbits,
    })
}

/// A reflection `r_(g,α)` of an extended root system, in canonical form:
/// the root is positive, and for `BC` a doubled root with even `g` is
/// replaced by its half.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct ReflectionLabel {
    pub g: Vec<i64>,
    pub alpha: usize,
}

impl ReflectionLabel {
    pub fn new(rs: &FiniteRootSystem, g: Vec<i64>, alpha: usize) -> Result<Self> {
        rs.check_root(alpha)?;
        let mut g = g;
        let mut alpha = alpha;
        if rs.length_class(alpha) == LengthClass::ExtraLong && g.iter().all(|x| x % 2 == 0) {
            let half: Vec<i64> = rs.root(alpha).iter().map(|x| x / 2).collect();
            alpha = rs.index_of(&half).expect("extralong roots are doubles");
            g = g.iter().map(|x| x / 2).collect();
        }
        if !rs.is_positive(alpha) {
            alpha = rs.negate(alpha);
            g = g.iter().map(|x| -x).collect();
        }
        Ok(ReflectionLabel { g, alpha })
    }
}

/// `t^𝒦 = g ⊗ α̌` as an `n × ℓ` matrix.
pub fn k_part(rs: &FiniteRootSystem, t: &ReflectionLabel) -> IMat {
    let c = rs.coroot(t.alpha);
    IMat::from_fn(t.g.len(), rs.rank(), |i, j| t.g[i] * c[j])
}

/// `r_(g,α) . r_(h,β) = r_(h - <α̌,β>g, r_α.β)`.
pub fn conj_reflect(rs: &FiniteRootSystem, t1: &ReflectionLabel, t2: &ReflectionLabel) -> ReflectionLabel {
    let p = rs.pairing(t1.alpha, rs.root(t2.alpha));
    let g: Vec<i64> = t2.g.iter().zip(&t1.g).map(|(h, g)| h - p * g).collect();
    ReflectionLabel::new(rs, g, rs.reflect_root(t1.alpha, t2.alpha)).expect("valid root")
}

/// `v.k = k ∘ v⁻¹`, which on coroot coordinates is `K · Ňᵀ`.
pub fn weyl_act_k(v: &WeylElement, k: &IMat) -> IMat {
    k * v.coroot_matrix().transpose()
}

/// An element `(k, v)` of `𝒜 = 𝒦 ⋊ 𝒱`, acting on `G × ℒ` by
/// `(k, v).(g, λ) = (g + k(v.λ), v.λ)`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct AElement {
    pub k: IMat,
    pub v: WeylElement,
}

impl AElement {
    pub fn identity(n: usize, rank: usize) -> Self {
        AElement {
            k: IMat::zeros(n, rank),
            v: WeylElement::identity(rank),
        }
    }

    pub fn from_label(rs: &FiniteRootSystem, t: &ReflectionLabel) -> Self {
        AElement {
            k: k_part(rs, t),
            v: rs.reflection(t.alpha),
        }
    }

    pub fn is_identity(&self) -> bool {
        self.k.iter().all(|x| *x == 0) && self.v.is_identity()
    }

    pub fn mul(&self, other: &AElement) -> AElement {
        AElement {
            k: &self.k + weyl_act_k(&self.v, &other.k),
            v: self.v.mul(&other.v),
        }
    }

    pub fn inverse(&self) -> AElement {
        let vi = self.v.inverse();
        AElement {
            k: -weyl_act_k(&vi, &self.k),
            v: vi,
        }
    }

    /// Action on `G × ℒ` with `λ` in root-lattice coordinates.
    pub fn act(&self, rs: &FiniteRootSystem, g: &[i64], lambda: &[i64]) -> (Vec<i64>, Vec<i64>) {
        let vl = self.v.act(lambda);
        let shift = mat_vec(&(&self.k * rs.pairing_matrix()), &vl);
        (g.iter().zip(&shift).map(|(a, b)| a + b).collect(), vl)
    }

    pub fn act_on_root(&self, rs: &FiniteRootSystem, g: &[i64], beta: usize) -> (Vec<i64>, usize) {
        let (h, l) = self.act(rs, g, rs.root(beta));
        (h, rs.index_of(&l).expect("𝒱 permutes roots"))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::roots::RootSystemType;

    fn rs(t: &str) -> FiniteRootSystem {
        FiniteRootSystem::build(t.parse::<RootSystemType>().unwrap())
    }

    #[test]
    fn sym_axioms() {
        assert!(check_sym_axioms(&SymSystem::trivial(3)).passed());
        let a2 = rs("A2");
        let (sys, reps) = SymSystem::of_root_system(&a2);
        assert_eq!(reps.len(), 3);
        assert!(check_sym_axioms(&sys).passed());
        let mut bad = sys.clone();
        let v = bad.mul(0, 1);
        bad.set(0, 1, (v + 1) % 3);
        let rep = check_sym_axioms(&bad);
        assert!(!rep.passed());
        assert!(rep.s1.is_some() || rep.s2.is_some());
    }

    #[test]
    fn weyl_group_of_a2_is_proper() {
        let a2 = rs("A2");
        let (sys, reps) = SymSystem::of_root_system(&a2);
        let model = WeylModel::new(&a2, &reps);
        let rep = check_reflection_group(&sys, &model.images(), &model, 1000).unwrap();
        assert!(rep.passed() && rep.proper);
        assert_eq!(rep.order, Some(6));
    }

    #[test]
    fn trivial_system_realizations() {
        let sys = SymSystem::trivial(2);
        // ℤ2 × ℤ2 with t ↦ the two coordinate involutions acting trivially on T
        struct Klein;
        impl ReflectionModel for Klein {
            type Elem = (bool, bool);
            fn identity(&self) -> (bool, bool) {
                (false, false)
            }
            fn mul(&self, a: &(bool, bool), b: &(bool, bool)) -> (bool, bool) {
                (a.0 ^ b.0, a.1 ^ b.1)
            }
            fn act(&self, _: &(bool, bool), t: usize) -> usize {
                t
            }
        }
        let rep = check_reflection_group(&sys, &[(true, false), (false, true)], &Klein, 100).unwrap();
        assert!(rep.passed() && rep.proper);
        assert_eq!(rep.order, Some(4));
        let term = terminal_group(&sys, DEFAULT_T_CAP, DEFAULT_GROUP_CAP).unwrap();
        assert_eq!(term.order, 1);
    }

    #[test]
    fn identity_images_fail_g2_on_nontrivial_system() {
        let a2 = rs("A2");
        let (sys, _) = SymSystem::of_root_system(&a2);
        let model = PermModel { n: 3 };
        let images = vec![model.identity(); 3];
        let rep = check_reflection_group(&sys, &images, &model, 100).unwrap();
        assert!(rep.g4.is_none());
        assert!(rep.g2.is_some());
        assert!(!rep.proper);
    }

    #[test]
    fn terminal_groups() {
        let (sys, _) = SymSystem::of_root_system(&rs("A2"));
        let g = terminal_group(&sys, DEFAULT_T_CAP, DEFAULT_GROUP_CAP).unwrap();
        assert_eq!(g.order, 6);
        assert_eq!(g.orbits.len(), 1);
        assert!(terminal_group(&SymSystem::trivial(1), 64, 10).unwrap().order <= 2);
        let (e8, _) = SymSystem::of_root_system(&rs("E8"));
        assert!(terminal_group(&e8, DEFAULT_T_CAP, DEFAULT_GROUP_CAP).is_err());
    }

    #[test]
    fn labels_and_conjugation() {
        let a1 = rs("A1");
        let alpha = a1.basis()[0];
        let t0 = ReflectionLabel::new(&a1, vec![0], alpha).unwrap();
        let t1 = ReflectionLabel::new(&a1, vec![1], alpha).unwrap();
        let c = conj_reflect(&a1, &t0, &t1);
        assert_eq!(c, ReflectionLabel::new(&a1, vec![-1], alpha).unwrap());
        assert_eq!(c, ReflectionLabel::new(&a1, vec![1], a1.negate(alpha)).unwrap());
        assert_eq!(conj_reflect(&a1, &t1, &t1), t1);
        let bc = rs("BC1");
        let ex = (0..bc.len()).find(|&i| bc.length_class(i) == LengthClass::ExtraLong && bc.is_positive(i)).unwrap();
        let l = ReflectionLabel::new(&bc, vec![4], ex).unwrap();
        assert_eq!(l.g, vec![2]);
        assert_eq!(bc.length_class(l.alpha), LengthClass::Short);
    }

    #[test]
    fn a_elements() {
        let b2 = rs("B2");
        let t = ReflectionLabel::new(&b2, vec![1, 2], 1).unwrap();
        let a = AElement::from_label(&b2, &t);
        assert!(a.mul(&a).is_identity());
        let s = ReflectionLabel::new(&b2, vec![0, 1], 2).unwrap();
        let b = AElement::from_label(&b2, &s);
        let conj = a.mul(&b).mul(&a.inverse());
        assert_eq!(conj, AElement::from_label(&b2, &conj_reflect(&b2, &t, &s)));
        // generator action formula
        let (h, beta) = (vec![3, -1], 4);
        let (h2, b2r) = a.act_on_root(&b2, &h, beta);
        let p = b2.pairing(t.alpha, b2.root(beta));
        assert_eq!(h2, vec![3 - p, -1 - 2 * p]);
        assert_eq!(b2r, b2.reflect_root(t.alpha, beta));
        assert_eq!(k_part(&b2, &ReflectionLabel::new(&b2, vec![0, 0], 1).unwrap()), IMat::zeros(2, 2));
    }
}
