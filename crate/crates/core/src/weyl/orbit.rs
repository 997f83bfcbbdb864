//! `𝒜`-orbits of extended roots, the abelianizations `𝒰^ab` and `^ab𝒦`.

use std::collections::{BTreeSet, HashSet, VecDeque};

use num_integer::Integer;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::extended::{ExtRootSystem, SSet};
use crate::lattice::SublatticeQuotient;
use crate::reflection::{weyl_act_k, ReflectionLabel};
use crate::roots::{Family, IMat, LengthClass};

/// An `𝒜`-orbit of extended roots: a length class together with a coset
/// `h + N` of the orbit modulus `N` (stored as its Hermite basis).
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct OrbitClass {
    pub class: LengthClass,
    pub coset: Vec<i64>,
    pub modulus: Vec<Vec<i64>>,
}

/// A finitely supported map from orbit classes to `ℤ₂`, kept as its
/// support.
pub type UabVector = BTreeSet<OrbitClass>;

/// Generators of `<S_c>`: the Hermite basis of `H` and the coset
/// representatives.
fn span_generators(s: &SSet) -> Vec<Vec<i64>> {
    s.h().iter().chain(s.cosets()).cloned().collect()
}

/// `N_β = Σ_α <α̌, β> <S_α>`, as a full-rank lattice.
fn orbit_modulus(ers: &ExtRootSystem, beta: usize) -> SSet {
    let rs = ers.delta();
    let n = ers.n();
    let mut gens = Vec::new();
    for c in rs.present_classes() {
        let d = (0..rs.len())
            .filter(|&a| rs.length_class(a) == c)
            .fold(0i64, |g, a| g.gcd(&rs.pairing(a, rs.root(beta))));
        if d == 0 {
            continue;
        }
        let s = ers.s_set(c).expect("present class");
        gens.extend(span_generators(s).into_iter().map(|v| v.iter().map(|x| d * x).collect::<Vec<_>>()));
    }
    SSet::new(n, &gens, &[vec![0; n]]).expect("⟨β̌,β⟩ = 2 makes the modulus full rank")
}

fn check_member(ers: &ExtRootSystem, h: &[i64], beta: usize) -> Result<()> {
    if !ers.membership(h, beta)? {
        return Err(Error::NotInSystem {
            g: h.to_vec(),
            root: beta,
        });
    }
    Ok(())
}

/// The orbit `𝒜.(h, β) = (h + N_β, 𝒱.β)`.
pub fn orbit_of(ers: &ExtRootSystem, h: &[i64], beta: usize) -> Result<OrbitClass> {
    check_member(ers, h, beta)?;
    let n = orbit_modulus(ers, beta);
    Ok(OrbitClass {
        class: ers.delta().length_class(beta),
        coset: n.reduce(h),
        modulus: n.h().to_vec(),
    })
}

/// The orbit modulus predicted by the closed-form case table, as diagonal
/// factors over the basis of `G`. It presupposes `<S_sh> = G` and
/// `<S_lg> = k·G₁ + G₂`; for the types with a single orbit per length
/// class the modulus is `<S_x>` itself.
pub fn orbit_table(ers: &ExtRootSystem, beta: usize) -> Result<Vec<i64>> {
    let rs = ers.delta();
    let t = rs.rs_type();
    let n = ers.n();
    if !t.is_reduced() {
        return Err(Error::Domain("the orbit table covers reduced types".into()));
    }
    let g = ers.group();
    if !t.is_simply_laced() && !g.has_split() {
        return Err(Error::Domain("the orbit table needs a twist split".into()));
    }
    let long = rs.length_class(beta) == LengthClass::Long;
    let twisted = |a: i64, b: i64| -> Vec<i64> { (0..n).map(|i| if g.g1.contains(&i) { a } else { b }).collect() };
    Ok(match (t.family(), t.rank()) {
        (Family::A, 1) => vec![2; n],
        (Family::B, 2) if long => vec![2; n],
        (Family::B, _) => twisted(2, 1),
        (Family::C, l) if l >= 3 && long => vec![2; n],
        // a single orbit per length class: all of `<S_x>`
        _ if long => twisted(t.k_delta()?, 1),
        _ => vec![1; n],
    })
}

/// Closure of `(h, β)` under all generators, computed in
/// `(ℤ/e)ⁿ × Δ` with `e = 2·common_modulus`, which lies inside every
/// orbit modulus.
pub fn orbit_bruteforce(ers: &ExtRootSystem, h: &[i64], beta: usize) -> Result<BTreeSet<(Vec<i64>, usize)>> {
    check_member(ers, h, beta)?;
    let rs = ers.delta();
    let e = 2 * ers.common_modulus();
    let grid = ers.grid(e);
    let members: Vec<Vec<Vec<i64>>> = (0..rs.len())
        .map(|a| {
            let s = ers.s_of_root(a);
            grid.members(&grid.mask(|g| s.contains(g)))
        })
        .collect();
    let start = (grid.encode(h), beta);
    let mut seen = HashSet::from([start]);
    let mut queue = VecDeque::from([start]);
    while let Some((x, b)) = queue.pop_front() {
        let hx = grid.decode(x);
        for (a, gs) in members.iter().enumerate() {
            let p = rs.pairing(a, rs.root(b));
            let rb = rs.reflect_root(a, b);
            for g in gs {
                let y: Vec<i64> = hx.iter().zip(g).map(|(u, v)| u - p * v).collect();
                let next = (grid.encode(&y), rb);
                if seen.insert(next) {
                    queue.push_back(next);
                }
            }
        }
    }
    Ok(seen.into_iter().map(|(x, b)| (grid.decode(x), b)).collect())
}

/// `orbit_of` read off on the same finite quotient as `orbit_bruteforce`.
pub fn orbit_on_grid(ers: &ExtRootSystem, class: &OrbitClass) -> BTreeSet<(Vec<i64>, usize)> {
    let rs = ers.delta();
    let grid = ers.grid(2 * ers.common_modulus());
    let n = SSet::new(ers.n(), &class.modulus, &[vec![0; ers.n()]]).expect("stored modulus is full rank");
    let mut out = BTreeSet::new();
    for x in 0..grid.size() {
        let g = grid.decode(x);
        if n.reduce(&g) != class.coset {
            continue;
        }
        for b in (0..rs.len()).filter(|&b| rs.length_class(b) == class.class) {
            out.insert((g.clone(), b));
        }
    }
    out
}

/// Parity of each orbit class among the letters of a word.
pub fn uab_of_word(ers: &ExtRootSystem, word: &[ReflectionLabel]) -> Result<UabVector> {
    let mut v = UabVector::new();
    for t in word {
        let c = orbit_of(ers, &t.g, t.alpha)?;
        if !v.remove(&c) {
            v.insert(c);
        }
    }
    Ok(v)
}

/// `^ab𝒦 = 𝒦 / 𝒦_eff` with `𝒦` flattened row-major into `ℤ^{nℓ}`.
#[derive(Debug, Clone)]
pub struct AbK {
    pub quotient: SublatticeQuotient,
    n: usize,
    rank: usize,
}

impl AbK {
    pub fn describe(&self) -> String {
        self.quotient.group().describe()
    }

    /// Class of `k`, or `None` if `k ∉ 𝒦`.
    pub fn project(&self, k: &IMat) -> Option<Vec<i64>> {
        assert_eq!(k.shape(), (self.n, self.rank), "k has the wrong shape");
        self.quotient.project(&flatten(k))
    }
}

fn flatten(k: &IMat) -> Vec<i64> {
    (0..k.nrows()).flat_map(|i| (0..k.ncols()).map(move |j| k[(i, j)])).collect()
}

pub fn ab_k(ers: &ExtRootSystem) -> AbK {
    let rs = ers.delta();
    let (n, l) = (ers.n(), rs.rank());
    let mut gens = Vec::new();
    for a in 0..rs.n_positive() {
        let c = rs.coroot(a);
        for s in span_generators(ers.s_of_root(a)) {
            gens.push(IMat::from_fn(n, l, |i, j| s[i] * c[j]));
        }
    }
    let simple = rs.simple_reflections();
    let eff: Vec<Vec<i64>> = gens
        .iter()
        .flat_map(|k| simple.iter().map(move |v| flatten(&(k - weyl_act_k(v, k)))))
        .collect();
    let big: Vec<Vec<i64>> = gens.iter().map(flatten).collect();
    AbK {
        quotient: SublatticeQuotient::new(n * l, &big, &eff),
        n,
        rank: l,
    }
}

/// Image of `r_(h,β)` in `𝒜^ab = ^ab𝒦 × 𝒱^ab`: the `𝒱^ab` part of a
/// reflection is its conjugacy class, which is the length class of `β`.
pub fn a_ab_image(ers: &ExtRootSystem, abk: &AbK, h: &[i64], beta: usize) -> Result<(LengthClass, Vec<i64>)> {
    check_member(ers, h, beta)?;
    let rs = ers.delta();
    let c = rs.coroot(beta);
    let k = IMat::from_fn(ers.n(), rs.rank(), |i, j| h[i] * c[j]);
    Ok((rs.length_class(beta), abk.project(&k).expect("t^𝒦 lies in 𝒦")))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::roots::RootSystemType;

    fn ty(s: &str) -> RootSystemType {
        s.parse().unwrap()
    }

    fn first(ers: &ExtRootSystem, c: LengthClass) -> usize {
        (0..ers.delta().len()).find(|&i| ers.delta().length_class(i) == c).unwrap()
    }

    #[test]
    fn a1_classes() {
        let e = ExtRootSystem::full(ty("A1"), 1);
        let a = e.delta().basis()[0];
        let c0 = orbit_of(&e, &[0], a).unwrap();
        assert_eq!(c0, orbit_of(&e, &[2], a).unwrap());
        assert_eq!(c0, orbit_of(&e, &[-4], e.delta().negate(a)).unwrap());
        assert_ne!(c0, orbit_of(&e, &[1], a).unwrap());
    }

    #[test]
    fn a2_single_class() {
        let e = ExtRootSystem::full(ty("A2"), 2);
        let c = orbit_of(&e, &[0, 0], 0).unwrap();
        for b in 0..e.delta().len() {
            assert_eq!(orbit_of(&e, &[3, -1], b).unwrap(), c);
        }
    }

    #[test]
    fn b2_twisted_classes() {
        let e = ExtRootSystem::twisted(ty("B2"), 2, 1).unwrap();
        let sh = first(&e, LengthClass::Short);
        let lg = first(&e, LengthClass::Long);
        assert_eq!(orbit_of(&e, &[0, 1], sh).unwrap(), orbit_of(&e, &[0, 0], sh).unwrap());
        assert_ne!(orbit_of(&e, &[0, 1], lg).unwrap(), orbit_of(&e, &[0, 0], lg).unwrap());
        assert!(orbit_of(&e, &[1, 0], lg).is_err());
    }

    #[test]
    fn bruteforce_agrees() {
        for (t, n, twist) in [("A1", 1, 0), ("B2", 2, 1), ("G2", 2, 0), ("C3", 2, 1)] {
            let e = if twist == 0 {
                ExtRootSystem::full(ty(t), n)
            } else {
                ExtRootSystem::twisted(ty(t), n, twist).unwrap()
            };
            for b in [0, e.delta().len() - 1] {
                let h = vec![0; n];
                let c = orbit_of(&e, &h, b).unwrap();
                assert_eq!(orbit_bruteforce(&e, &h, b).unwrap(), orbit_on_grid(&e, &c), "{t}");
            }
        }
    }

    #[test]
    fn table_matches_formula_on_spans() {
        let e = ExtRootSystem::twisted(ty("B3"), 2, 1).unwrap();
        for b in 0..e.delta().len() {
            let d = orbit_table(&e, b).unwrap();
            let m = orbit_of(&e, &[0, 0], b).unwrap().modulus;
            assert_eq!(m, vec![vec![d[0], 0], vec![0, d[1]]]);
        }
    }

    #[test]
    fn uab_parity() {
        let e = ExtRootSystem::full(ty("A1"), 1);
        let a = e.delta().basis()[0];
        let t0 = ReflectionLabel::new(e.delta(), vec![0], a).unwrap();
        let t1 = ReflectionLabel::new(e.delta(), vec![1], a).unwrap();
        assert!(uab_of_word(&e, &[]).unwrap().is_empty());
        assert!(uab_of_word(&e, &[t1.clone(), t1.clone()]).unwrap().is_empty());
        assert_eq!(uab_of_word(&e, &[t0, t1]).unwrap().len(), 2);
    }

    #[test]
    fn ab_k_cases() {
        assert_eq!(ab_k(&ExtRootSystem::full(ty("A2"), 2)).describe(), "0");
        assert_eq!(ab_k(&ExtRootSystem::full(ty("A1"), 2)).describe(), "Z2 x Z2");
        assert_eq!(ab_k(&ExtRootSystem::twisted(ty("B3"), 2, 1).unwrap()).describe(), "Z2");
        assert_eq!(ab_k(&ExtRootSystem::twisted(ty("C3"), 2, 1).unwrap()).describe(), "Z2");
        assert_eq!(ab_k(&ExtRootSystem::twisted(ty("B2"), 2, 1).unwrap()).describe(), "Z2 x Z2");
        assert_eq!(ab_k(&ExtRootSystem::full(ty("F4"), 1)).describe(), "0");
    }
}
