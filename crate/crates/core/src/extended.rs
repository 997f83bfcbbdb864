//! Root systems of a finite type `Δ` extended by `G = ℤⁿ`.
//!
//! Each set `S_x = {g | (g, α) ∈ R}` (for `α` of length class `x`) is a
//! finite union of cosets of a finite-index sublattice `H`. All axiom and
//! twist checks then reduce to exhaustive checks in a finite quotient
//! `(ℤ/m)ⁿ`.

use std::collections::{BTreeMap, BTreeSet};

use num_integer::Integer;
use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::lattice::{hermite_rows_i64, FpAbelianGroup};
use crate::roots::{Family, FiniteRootSystem, LengthClass, RootSystemType};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FreeAbelianGroup {
    pub rank: usize,
    #[serde(default)]
    pub g1: Vec<usize>,
    #[serde(default)]
    pub g2: Vec<usize>,
}

impl FreeAbelianGroup {
    pub fn new(rank: usize) -> Self {
        FreeAbelianGroup {
            rank,
            g1: Vec::new(),
            g2: Vec::new(),
        }
    }

    /// `G₁` spanned by the listed basis vectors, `G₂` by the rest.
    pub fn with_split(rank: usize, g1: &[usize]) -> Result<Self> {
        let g = FreeAbelianGroup {
            rank,
            g1: g1.to_vec(),
            g2: (0..rank).filter(|i| !g1.contains(i)).collect(),
        };
        g.check()?;
        Ok(g)
    }

    pub fn has_split(&self) -> bool {
        !(self.g1.is_empty() && self.g2.is_empty())
    }

    fn check(&self) -> Result<()> {
        if !self.has_split() {
            return Ok(());
        }
        let mut all: Vec<usize> = self.g1.iter().chain(&self.g2).copied().collect();
        all.sort_unstable();
        if all != (0..self.rank).collect::<Vec<_>>() {
            return Err(Error::Input(format!(
                "g1 {:?} and g2 {:?} must partition 0..{}",
                self.g1, self.g2, self.rank
            )));
        }
        Ok(())
    }
}

/// A union of cosets of a full-rank sublattice `H ⊆ ℤⁿ`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SSet {
    n: usize,
    /// Hermite basis of `H`, upper triangular with positive diagonal
    h: Vec<Vec<i64>>,
    cosets: BTreeSet<Vec<i64>>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SSetJson {
    #[serde(rename = "H")]
    pub h: Vec<Vec<i64>>,
    pub cosets: Vec<Vec<i64>>,
}

impl SSet {
    pub fn new(n: usize, h: &[Vec<i64>], cosets: &[Vec<i64>]) -> Result<Self> {
        for v in h.iter().chain(cosets) {
            if v.len() != n {
                return Err(Error::Dimension {
                    expected: n,
                    got: v.len(),
                });
            }
        }
        let basis = hermite_rows_i64(n, h);
        if basis.len() != n {
            return Err(Error::Input("modulus lattice H must have full rank".into()));
        }
        let mut s = SSet {
            n,
            h: basis,
            cosets: BTreeSet::new(),
        };
        s.cosets = cosets.iter().map(|c| s.reduce(c)).collect();
        Ok(s)
    }

    /// All of `ℤⁿ`.
    pub fn whole(n: usize) -> Self {
        Self::lattice(n, &vec![1; n])
    }

    /// The sublattice `⊕ dᵢℤ`.
    pub fn lattice(n: usize, diag: &[i64]) -> Self {
        let h: Vec<Vec<i64>> = (0..n)
            .map(|i| {
                let mut r = vec![0; n];
                r[i] = diag[i];
                r
            })
            .collect();
        Self::new(n, &h, &[vec![0; n]]).expect("diagonal lattice is valid")
    }

    pub fn rank(&self) -> usize {
        self.n
    }

    pub fn h(&self) -> &[Vec<i64>] {
        &self.h
    }

    pub fn cosets(&self) -> &BTreeSet<Vec<i64>> {
        &self.cosets
    }

    pub fn is_empty(&self) -> bool {
        self.cosets.is_empty()
    }

    /// `[ℤⁿ : H]`.
    pub fn index(&self) -> i64 {
        (0..self.n).map(|i| self.h[i][i]).product()
    }

    /// Smallest `e` with `eℤⁿ ⊆ H`.
    pub fn exponent(&self) -> i64 {
        let g = FpAbelianGroup::new(self.n, &self.h);
        g.torsion()
            .last()
            .map(|d| d.try_into().expect("exponent fits in i64"))
            .unwrap_or(1)
    }

    /// Canonical representative of `g + H`.
    pub fn reduce(&self, g: &[i64]) -> Vec<i64> {
        let mut g = g.to_vec();
        for (i, row) in self.h.iter().enumerate() {
            let q = Integer::div_floor(&g[i], &row[i]);
            if q != 0 {
                for (x, y) in g.iter_mut().zip(row) {
                    *x -= q * y;
                }
            }
        }
        g
    }

    pub fn contains(&self, g: &[i64]) -> bool {
        g.len() == self.n && self.cosets.contains(&self.reduce(g))
    }

    pub fn to_json(&self) -> SSetJson {
        SSetJson {
            h: self.h.clone(),
            cosets: self.cosets.iter().cloned().collect(),
        }
    }

    pub fn from_json(n: usize, json: &SSetJson) -> Result<Self> {
        Self::new(n, &json.h, &json.cosets)
    }

    /// A random element: a coset representative plus an `H` combination
    /// with coefficients in `[-spread, spread]`.
    pub fn sample<R: Rng + ?Sized>(&self, rng: &mut R, spread: i64) -> Option<Vec<i64>> {
        let reps: Vec<&Vec<i64>> = self.cosets.iter().collect();
        if reps.is_empty() {
            return None;
        }
        let mut g = reps[rng.gen_range(0..reps.len())].clone();
        for row in &self.h {
            let c = rng.gen_range(-spread..=spread);
            for (x, y) in g.iter_mut().zip(row) {
                *x += c * y;
            }
        }
        Some(g)
    }
}

/// Dense subsets of `(ℤ/m)ⁿ`.
#[derive(Debug, Clone, Copy)]
pub(crate) struct Grid {
    pub n: usize,
    pub m: i64,
}

impl Grid {
    pub fn size(&self) -> usize {
        (self.m as usize).pow(self.n as u32)
    }

    pub fn encode(&self, g: &[i64]) -> usize {
        g.iter()
            .fold(0usize, |acc, x| acc * self.m as usize + x.mod_floor(&self.m) as usize)
    }

    pub fn decode(&self, mut idx: usize) -> Vec<i64> {
        let mut v = vec![0; self.n];
        for i in (0..self.n).rev() {
            v[i] = (idx % self.m as usize) as i64;
            idx /= self.m as usize;
        }
        v
    }

    pub fn mask<F: Fn(&[i64]) -> bool>(&self, f: F) -> Vec<bool> {
        (0..self.size()).map(|i| f(&self.decode(i))).collect()
    }

    pub fn members(&self, mask: &[bool]) -> Vec<Vec<i64>> {
        (0..self.size()).filter(|&i| mask[i]).map(|i| self.decode(i)).collect()
    }

    pub fn add(&self, a: &[i64], b: &[i64]) -> usize {
        let s: Vec<i64> = a.iter().zip(b).map(|(x, y)| x + y).collect();
        self.encode(&s)
    }

    pub fn sum(&self, a: &[bool], b: &[bool]) -> Vec<bool> {
        let mut out = vec![false; self.size()];
        let bm = self.members(b);
        for x in self.members(a) {
            for y in &bm {
                out[self.add(&x, y)] = true;
            }
        }
        out
    }

    pub fn scale(&self, a: &[bool], k: i64) -> Vec<bool> {
        let mut out = vec![false; self.size()];
        for x in self.members(a) {
            let kx: Vec<i64> = x.iter().map(|v| k * v).collect();
            out[self.encode(&kx)] = true;
        }
        out
    }

    /// Subgroup generated by a subset.
    pub fn span(&self, gens: &[bool]) -> Vec<bool> {
        let mut cur = vec![false; self.size()];
        cur[0] = true;
        let mut elems = vec![vec![0i64; self.n]];
        for x in self.members(gens) {
            if cur[self.encode(&x)] {
                continue;
            }
            // adjoin x: union of cosets elems + j·x until j·x falls back in
            let base = elems.clone();
            let mut shift = x.clone();
            while !cur[self.encode(&shift)] {
                for e in &base {
                    let i = self.add(e, &shift);
                    if !cur[i] {
                        cur[i] = true;
                        elems.push(self.decode(i));
                    }
                }
                shift = shift.iter().zip(&x).map(|(a, b)| a + b).collect();
            }
        }
        cur
    }

    /// Elements supported on the given coordinates.
    pub fn coordinate_subgroup(&self, coords: &[usize]) -> Vec<bool> {
        self.mask(|g| g.iter().enumerate().all(|(i, x)| *x == 0 || coords.contains(&i)))
    }
}

fn first_difference(grid: &Grid, a: &[bool], b: &[bool]) -> Option<Vec<i64>> {
    (0..grid.size()).find(|&i| a[i] != b[i]).map(|i| grid.decode(i))
}

fn intersect(a: &[bool], b: &[bool]) -> Vec<bool> {
    a.iter().zip(b).map(|(x, y)| *x && *y).collect()
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct AxiomCheck {
    pub axiom: String,
    pub passed: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<String>,
}

impl AxiomCheck {
    fn new(axiom: &str, witness: Option<String>) -> Self {
        AxiomCheck {
            axiom: axiom.to_string(),
            passed: witness.is_none(),
            witness,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ValidationReport {
    pub checks: Vec<AxiomCheck>,
}

impl ValidationReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn first_failure(&self) -> Option<&AxiomCheck> {
        self.checks.iter().find(|c| !c.passed)
    }

    pub fn get(&self, axiom: &str) -> Option<&AxiomCheck> {
        self.checks.iter().find(|c| c.axiom == axiom)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TwistReport {
    pub applicable: bool,
    pub tame: bool,
    pub note: Option<String>,
    pub checks: Vec<AxiomCheck>,
}

#[derive(Debug, Clone)]
pub struct ExtRootSystem {
    delta: FiniteRootSystem,
    g: FreeAbelianGroup,
    s: BTreeMap<LengthClass, SSet>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DeltaJson {
    pub family: Family,
    pub rank: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ExtRootSystemJson {
    pub delta: DeltaJson,
    pub g: FreeAbelianGroup,
    pub s_sets: BTreeMap<String, SSetJson>,
}

impl ExtRootSystem {
    pub fn new(delta: FiniteRootSystem, g: FreeAbelianGroup, s: BTreeMap<LengthClass, SSet>) -> Result<Self> {
        g.check()?;
        let present = delta.present_classes();
        for c in &present {
            let set = s
                .get(c)
                .ok_or_else(|| Error::Input(format!("missing S-set for length class {c}")))?;
            if set.rank() != g.rank {
                return Err(Error::Dimension {
                    expected: g.rank,
                    got: set.rank(),
                });
            }
        }
        if let Some(extra) = s.keys().find(|c| !present.contains(c)) {
            return Err(Error::Input(format!(
                "{} has no roots of length class {extra}",
                delta.rs_type()
            )));
        }
        Ok(ExtRootSystem { delta, g, s })
    }

    /// `G × Δ` itself: every S-set is all of `G`.
    pub fn full(t: RootSystemType, n: usize) -> Self {
        let delta = FiniteRootSystem::build(t);
        let s = delta
            .present_classes()
            .into_iter()
            .map(|c| (c, SSet::whole(n)))
            .collect();
        let g = if t.is_simply_laced() || !t.is_reduced() {
            FreeAbelianGroup::new(n)
        } else {
            FreeAbelianGroup::with_split(n, &[]).expect("valid split")
        };
        ExtRootSystem::new(delta, g, s).expect("consistent data")
    }

    /// Non-simply-laced reduced type with twist split: `S_sh = G` and
    /// `S_lg = k·G₁ + G₂` where `G₁` is spanned by the first `twist`
    /// basis vectors.
    pub fn twisted(t: RootSystemType, n: usize, twist: usize) -> Result<Self> {
        let k = t.k_delta()?;
        if !t.is_reduced() {
            return Err(Error::Domain("twisted systems are built for reduced types".into()));
        }
        if twist > n {
            return Err(Error::Input(format!("twist rank {twist} exceeds rank {n}")));
        }
        let delta = FiniteRootSystem::build(t);
        let diag: Vec<i64> = (0..n).map(|i| if i < twist { k } else { 1 }).collect();
        let mut s = BTreeMap::new();
        s.insert(LengthClass::Short, SSet::whole(n));
        s.insert(LengthClass::Long, SSet::lattice(n, &diag));
        let g1: Vec<usize> = (0..twist).collect();
        ExtRootSystem::new(delta, FreeAbelianGroup::with_split(n, &g1)?, s)
    }

    pub fn from_json(json: &ExtRootSystemJson) -> Result<Self> {
        let delta = FiniteRootSystem::from_family(json.delta.family, json.delta.rank)?;
        let n = json.g.rank;
        let mut s = BTreeMap::new();
        for (k, v) in &json.s_sets {
            let class = match k.as_str() {
                "sh" => LengthClass::Short,
                "lg" => LengthClass::Long,
                "ex" => LengthClass::ExtraLong,
                other => return Err(Error::Input(format!("unknown length class `{other}`"))),
            };
            s.insert(class, SSet::from_json(n, v)?);
        }
        ExtRootSystem::new(delta, json.g.clone(), s)
    }

    pub fn to_json(&self) -> ExtRootSystemJson {
        ExtRootSystemJson {
            delta: DeltaJson {
                family: self.delta.rs_type().family(),
                rank: self.delta.rank(),
            },
            g: self.g.clone(),
            s_sets: self
                .s
                .iter()
                .map(|(c, s)| (c.as_str().to_string(), s.to_json()))
                .collect(),
        }
    }

    pub fn delta(&self) -> &FiniteRootSystem {
        &self.delta
    }

    pub fn group(&self) -> &FreeAbelianGroup {
        &self.g
    }

    pub fn n(&self) -> usize {
        self.g.rank
    }

    pub fn s_set(&self, class: LengthClass) -> Option<&SSet> {
        self.s.get(&class)
    }

    /// `S_α`.
    pub fn s_of_root(&self, alpha: usize) -> &SSet {
        &self.s[&self.delta.length_class(alpha)]
    }

    pub fn membership(&self, g: &[i64], alpha: usize) -> Result<bool> {
        self.delta.check_root(alpha)?;
        if g.len() != self.n() {
            return Err(Error::Dimension {
                expected: self.n(),
                got: g.len(),
            });
        }
        Ok(self.s_of_root(alpha).contains(g))
    }

    /// An `m` such that every S-set is a union of cosets of `mℤⁿ`.
    pub fn common_modulus(&self) -> i64 {
        self.s.values().fold(1, |acc, s| acc.lcm(&s.exponent()))
    }

    pub(crate) fn grid(&self, m: i64) -> Grid {
        Grid { n: self.n(), m }
    }

    pub(crate) fn class_mask(&self, grid: &Grid, class: LengthClass) -> Vec<bool> {
        let s = &self.s[&class];
        grid.mask(|g| s.contains(g))
    }

    /// A uniformly chosen root with a random element of its S-set.
    pub fn sample_root<R: Rng + ?Sized>(&self, rng: &mut R, spread: i64) -> (Vec<i64>, usize) {
        loop {
            let alpha = rng.gen_range(0..self.delta.len());
            if let Some(g) = self.s_of_root(alpha).sample(rng, spread) {
                return (g, alpha);
            }
        }
    }

    pub fn validate(&self) -> ValidationReport {
        let mut checks = Vec::new();
        let present = self.delta.present_classes();

        let empty: Vec<String> = present
            .iter()
            .filter(|c| self.s[c].is_empty())
            .map(|c| format!("S_{c} is empty"))
            .collect();
        checks.push(AxiomCheck::new("R0'", empty.into_iter().next()));

        let n = self.n();
        let mut gens: Vec<Vec<i64>> = Vec::new();
        for s in self.s.values() {
            gens.extend(s.cosets().iter().cloned());
            gens.extend(s.h().iter().cloned());
        }
        let span = hermite_rows_i64(n, &gens);
        let full = span.len() == n && (0..n).all(|i| span[i][i] == 1);
        checks.push(AxiomCheck::new(
            "R1'",
            (!full).then(|| format!("S-sets span a sublattice with Hermite basis {span:?}")),
        ));

        let zero = vec![0; n];
        let missing = [LengthClass::Short, LengthClass::Long]
            .into_iter()
            .filter(|c| present.contains(c))
            .find(|c| !self.s[c].contains(&zero));
        checks.push(AxiomCheck::new(
            "R2'",
            missing.map(|c| format!("0 is not in S_{c}")),
        ));

        let m = self.common_modulus();
        let grid = self.grid(m);
        let elems: BTreeMap<LengthClass, Vec<Vec<i64>>> = present
            .iter()
            .map(|&c| (c, grid.members(&self.class_mask(&grid, c))))
            .collect();
        checks.push(AxiomCheck::new("R3'", self.check_r3(&elems)));

        if self.delta.rs_type().k_delta().is_ok() {
            let k = self.delta.rs_type().k_delta().expect("checked");
            let mut chain = None;
            let pairs: [(LengthClass, LengthClass, i64); 3] = [
                (LengthClass::Long, LengthClass::ExtraLong, k),
                (LengthClass::Short, LengthClass::Long, k),
                (LengthClass::Short, LengthClass::ExtraLong, k * k),
            ];
            for (small, big, f) in pairs {
                let (Some(sm), Some(bg)) = (self.s.get(&small), self.s.get(&big)) else {
                    continue;
                };
                // f·S_small ⊆ S_big ⊆ S_small
                for x in &elems[&small] {
                    let fx: Vec<i64> = x.iter().map(|v| f * v).collect();
                    if chain.is_none() && !bg.contains(&fx) {
                        chain = Some(format!("{f}·{x:?} is in {f}S_{small} but not in S_{big}"));
                    }
                }
                for x in &elems[&big] {
                    if chain.is_none() && !sm.contains(x) {
                        chain = Some(format!("{x:?} is in S_{big} but not in S_{small}"));
                    }
                }
            }
            checks.push(AxiomCheck::new("chains", chain));
        }
        ValidationReport { checks }
    }

    fn check_r3(&self, elems: &BTreeMap<LengthClass, Vec<Vec<i64>>>) -> Option<String> {
        let d = &self.delta;
        let mut seen = BTreeSet::new();
        for a in 0..d.len() {
            for b in 0..d.len() {
                let p = d.pairing(a, d.root(b));
                let rb = d.reflect_root(a, b);
                let key = (d.length_class(a), d.length_class(b), p, d.length_class(rb));
                if !seen.insert(key) {
                    continue;
                }
                let target = self.s_of_root(rb);
                for sb in &elems[&d.length_class(b)] {
                    for sa in &elems[&d.length_class(a)] {
                        let x: Vec<i64> = sb.iter().zip(sa).map(|(u, v)| u - p * v).collect();
                        if !target.contains(&x) {
                            return Some(format!(
                                "alpha={a}, beta={b}: {sb:?} - ({p})·{sa:?} = {x:?} is not in S_{}",
                                d.length_class(rb)
                            ));
                        }
                    }
                }
            }
        }
        None
    }

    /// Twist axioms for the stored split, plus the conditions derived from
    /// them.
    pub fn check_twist(&self) -> Result<TwistReport> {
        let t = self.delta.rs_type();
        if !t.is_reduced() {
            return Err(Error::Domain("twist decompositions are defined for reduced types; trim first".into()));
        }
        if t.is_simply_laced() {
            return Ok(TwistReport {
                applicable: false,
                tame: true,
                note: Some("simply laced: tame by definition".into()),
                checks: Vec::new(),
            });
        }
        if !self.g.has_split() {
            return Ok(TwistReport {
                applicable: true,
                tame: false,
                note: Some("no G1/G2 split given".into()),
                checks: Vec::new(),
            });
        }
        Ok(self.twist_checks(&self.g.g1, &self.g.g2))
    }

    fn twist_checks(&self, g1: &[usize], g2: &[usize]) -> TwistReport {
        let k = self.delta.rs_type().k_delta().expect("non-simply-laced");
        let grid = self.grid(k * self.common_modulus());
        let sh = self.class_mask(&grid, LengthClass::Short);
        let lg = self.class_mask(&grid, LengthClass::Long);
        let m1 = grid.coordinate_subgroup(g1);
        let m2 = grid.coordinate_subgroup(g2);
        let all = vec![true; grid.size()];
        let sh1 = intersect(&sh, &m1);
        let lg2 = intersect(&lg, &m2);

        let mut checks = Vec::new();
        let mut eq = |name: &str, lhs: &[bool], rhs: &[bool]| {
            checks.push(AxiomCheck::new(
                name,
                first_difference(&grid, lhs, rhs).map(|x| format!("{x:?} (mod {}) is in exactly one side", grid.m)),
            ));
        };
        eq("T1", &sh, &grid.sum(&sh1, &grid.span(&lg2)));
        eq("T2", &lg, &grid.sum(&grid.scale(&grid.span(&sh1), k), &lg2));
        eq("twist (i)", &sh, &grid.sum(&sh1, &m2));
        eq("twist (ii)", &lg, &grid.sum(&grid.scale(&m1, k), &lg2));
        eq("twist (iii)", &grid.span(&lg2), &m2);
        eq("twist (iv)", &grid.span(&sh1), &m1);
        eq("twist (v) sh", &grid.span(&sh), &all);
        eq("twist (v) lg", &grid.span(&lg), &grid.sum(&grid.scale(&m1, k), &m2));
        let tame = checks[0].passed && checks[1].passed;
        TwistReport {
            applicable: true,
            tame,
            note: None,
            checks,
        }
    }

    /// Search the basis partitions for a twist decomposition.
    pub fn find_twist_split(&self) -> Result<Option<Vec<usize>>> {
        let t = self.delta.rs_type();
        if !t.is_reduced() || t.is_simply_laced() {
            return Err(Error::Domain("twist splits exist for non-simply-laced reduced types".into()));
        }
        let n = self.n();
        for mask in 0u32..(1 << n) {
            let g1: Vec<usize> = (0..n).filter(|i| mask & (1 << i) != 0).collect();
            let g2: Vec<usize> = (0..n).filter(|i| mask & (1 << i) == 0).collect();
            if self.twist_checks(&g1, &g2).tame {
                return Ok(Some(g1));
            }
        }
        Ok(None)
    }

    /// The same system with a different `G₁/G₂` split.
    pub fn with_split(&self, g1: &[usize]) -> Result<Self> {
        let mut out = self.clone();
        out.g = FreeAbelianGroup::with_split(self.n(), g1)?;
        Ok(out)
    }

    /// Trim a `BC` system to a reduced one by sending short roots `(g, α)`
    /// to `(2g, 2α)`.
    pub fn trim(&self) -> Result<Trimmed> {
        let t = self.delta.rs_type();
        if t.is_reduced() {
            return Err(Error::Domain(format!("trim needs a BC type, got {t}")));
        }
        let l = t.rank();
        let n = self.n();
        let (target, images): (RootSystemType, Vec<Vec<i64>>) = {
            let unit = |i: usize, s: i64| {
                let mut v = vec![0; l];
                v[i] = s;
                v
            };
            match l {
                1 => (RootSystemType::new(Family::A, 1)?, vec![unit(0, 2)]),
                2 => (RootSystemType::new(Family::B, 2)?, vec![unit(1, 2), unit(0, 1)]),
                _ => {
                    let mut imgs: Vec<Vec<i64>> = (0..l - 1).map(|i| unit(i, 1)).collect();
                    imgs.push(unit(l - 1, 2));
                    (RootSystemType::new(Family::C, l)?, imgs)
                }
            }
        };
        let reduced = FiniteRootSystem::build(target);
        let mut by_vector = BTreeMap::new();
        for j in 0..reduced.len() {
            let mut v = vec![0i64; l];
            for (c, img) in reduced.root(j).iter().zip(&images) {
                for (x, y) in v.iter_mut().zip(img) {
                    *x += c * y;
                }
            }
            by_vector.insert(v, j);
        }
        let root_map: Vec<usize> = (0..self.delta.len())
            .map(|i| {
                let v: Vec<i64> = if self.delta.length_class(i) == LengthClass::Short {
                    self.delta.root(i).iter().map(|x| 2 * x).collect()
                } else {
                    self.delta.root(i).to_vec()
                };
                by_vector[&v]
            })
            .collect();

        // G' = <S_lg ∪ S_ex ∪ 2S_sh>; every S-set is a union of mℤⁿ-cosets
        let m = self.common_modulus();
        let big = Grid { n, m: 2 * m };
        let s_sh = &self.s[&LengthClass::Short];
        let s_ex = &self.s[&LengthClass::ExtraLong];
        let in_trimmed_ex = |x: &[i64]| {
            s_ex.contains(x)
                || (x.iter().all(|v| v % 2 == 0) && s_sh.contains(&x.iter().map(|v| v / 2).collect::<Vec<_>>()))
        };
        let ex_elems = big.members(&big.mask(in_trimmed_ex));
        let lg_elems = self
            .s
            .get(&LengthClass::Long)
            .map(|s| big.members(&big.mask(|x| s.contains(x))));
        let mut gens: Vec<Vec<i64>> = ex_elems.clone();
        if let Some(lg) = &lg_elems {
            gens.extend(lg.iter().cloned());
        }
        for i in 0..n {
            let mut v = vec![0; n];
            v[i] = 2 * m;
            gens.push(v);
        }
        let basis = hermite_rows_i64(n, &gens);
        let to_coords = |x: &[i64]| -> Vec<i64> { solve_small(&basis, x).expect("element of G'") };
        let h_prime: Vec<Vec<i64>> = (0..n)
            .map(|i| {
                let mut v = vec![0; n];
                v[i] = 2 * m;
                to_coords(&v)
            })
            .collect();
        let make = |elems: &[Vec<i64>]| -> Result<SSet> {
            let cosets: Vec<Vec<i64>> = elems.iter().map(|x| to_coords(x)).collect();
            SSet::new(n, &h_prime, &cosets)
        };
        let mut s = BTreeMap::new();
        match &lg_elems {
            None => {
                s.insert(LengthClass::Short, make(&ex_elems)?);
            }
            Some(lg) => {
                s.insert(LengthClass::Short, make(lg)?);
                s.insert(LengthClass::Long, make(&ex_elems)?);
            }
        }
        let mut system = ExtRootSystem::new(reduced, FreeAbelianGroup::new(n), s)?;
        if !target.is_simply_laced() {
            if let Some(g1) = system.find_twist_split()? {
                system.g = FreeAbelianGroup::with_split(n, &g1)?;
            }
        }
        Ok(Trimmed {
            system,
            basis,
            root_map,
        })
    }
}

/// Coordinates of `y` over a small Hermite basis.
pub(crate) fn solve_small(basis: &[Vec<i64>], y: &[i64]) -> Option<Vec<i64>> {
    let mut rest = y.to_vec();
    let mut x = Vec::with_capacity(basis.len());
    for r in basis {
        let col = r.iter().position(|v| *v != 0)?;
        if rest[col] % r[col] != 0 {
            return None;
        }
        let q = rest[col] / r[col];
        for (a, b) in rest.iter_mut().zip(r) {
            *a -= q * b;
        }
        x.push(q);
    }
    rest.iter().all(|v| *v == 0).then_some(x)
}

/// Result of trimming a `BC` system.
#[derive(Debug, Clone)]
pub struct Trimmed {
    pub system: ExtRootSystem,
    /// basis of `G'` as rows in `G` coordinates
    pub basis: Vec<Vec<i64>>,
    /// index in the reduced system of each trimmed `BC` root
    pub root_map: Vec<usize>,
}

impl Trimmed {
    /// Image of an extended root `(g, α)` of the original system.
    pub fn trim_root(&self, original: &ExtRootSystem, g: &[i64], alpha: usize) -> Result<(Vec<i64>, usize)> {
        if !original.membership(g, alpha)? {
            return Err(Error::NotInSystem {
                g: g.to_vec(),
                root: alpha,
            });
        }
        let g2: Vec<i64> = if original.delta().length_class(alpha) == LengthClass::Short {
            g.iter().map(|x| 2 * x).collect()
        } else {
            g.to_vec()
        };
        let coords = solve_small(&self.basis, &g2).ok_or_else(|| Error::Domain("trimmed label outside G'".into()))?;
        Ok((coords, self.root_map[alpha]))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn ty(s: &str) -> RootSystemType {
        s.parse().unwrap()
    }

    #[test]
    fn fully_extended_a2() {
        let r = ExtRootSystem::full(ty("A2"), 1);
        assert!(r.validate().passed());
        assert!(r.check_twist().unwrap().tame);
    }

    #[test]
    fn b2_twisted_example() {
        let r = ExtRootSystem::twisted(ty("B2"), 2, 1).unwrap();
        let report = r.validate();
        assert!(report.passed(), "{report:?}");
        let twist = r.check_twist().unwrap();
        assert!(twist.tame && twist.checks.iter().all(|c| c.passed), "{twist:?}");
        let long = r.delta().basis()[0];
        assert!(!r.membership(&[1, 0], long).unwrap());
        assert!(r.membership(&[2, 0], long).unwrap());
        assert!(r.membership(&[0, 1], long).unwrap());
        // swapping G1 and G2 breaks the twist conditions
        let swapped = r.with_split(&[1]).unwrap();
        let rep = swapped.check_twist().unwrap();
        assert!(!rep.tame);
        assert!(rep.checks[0].witness.is_some());
        assert_eq!(r.find_twist_split().unwrap(), Some(vec![0]));
    }

    #[test]
    fn missing_zero_fails_r2() {
        let delta = FiniteRootSystem::build(ty("B2"));
        let mut s = BTreeMap::new();
        s.insert(LengthClass::Short, SSet::whole(1));
        s.insert(LengthClass::Long, SSet::new(1, &[vec![2]], &[vec![1]]).unwrap());
        let r = ExtRootSystem::new(delta, FreeAbelianGroup::new(1), s).unwrap();
        let rep = r.validate();
        assert!(!rep.get("R2'").unwrap().passed);
        assert!(rep.get("R2'").unwrap().witness.as_ref().unwrap().contains("S_lg"));
    }

    #[test]
    fn bad_r3_is_caught() {
        // S = 2ℤ ∪ (1 + 4ℤ): 1 - 2·1 = -1 lies in 3 + 4ℤ
        let delta = FiniteRootSystem::build(ty("A1"));
        let mut s = BTreeMap::new();
        s.insert(LengthClass::Short, SSet::new(1, &[vec![4]], &[vec![0], vec![2], vec![1]]).unwrap());
        let r = ExtRootSystem::new(delta, FreeAbelianGroup::new(1), s).unwrap();
        let rep = r.validate();
        assert!(!rep.get("R3'").unwrap().passed, "{rep:?}");
    }

    #[test]
    fn s_set_reduction() {
        let s = SSet::new(2, &[vec![2, 0], vec![0, 2]], &[vec![1, 1]]).unwrap();
        assert!(s.contains(&[3, -1]));
        assert!(!s.contains(&[0, 1]));
        assert_eq!(s.index(), 4);
        assert_eq!(s.exponent(), 2);
        assert!(SSet::new(2, &[vec![2, 0]], &[]).is_err());
    }

    #[test]
    fn json_roundtrip() {
        let r = ExtRootSystem::twisted(ty("C3"), 2, 1).unwrap();
        let text = serde_json::to_string(&r.to_json()).unwrap();
        let back = ExtRootSystem::from_json(&serde_json::from_str(&text).unwrap()).unwrap();
        assert_eq!(back.to_json(), r.to_json());
        assert!(text.contains("\"H\""));
    }

    #[test]
    fn trim_bc1_and_bc3() {
        let bc1 = ExtRootSystem::full(ty("BC1"), 1);
        assert!(bc1.validate().passed());
        let t = bc1.trim().unwrap();
        assert_eq!(t.system.delta().rs_type(), ty("A1"));
        assert!(t.system.validate().passed());
        assert!(t.system.s_set(LengthClass::Short).unwrap().contains(&[1]));

        let bc3 = ExtRootSystem::full(ty("BC3"), 2);
        let t = bc3.trim().unwrap();
        assert_eq!(t.system.delta().rs_type(), ty("C3"));
        assert!(t.system.validate().passed());
        let d = bc3.delta();
        for a in 0..d.len() {
            let ta = t.root_map[a];
            for b in 0..d.len() {
                let tb = t.root_map[b];
                // trim(r_α.β) = r_trim(α).trim(β)
                assert_eq!(t.root_map[d.reflect_root(a, b)], t.system.delta().reflect_root(ta, tb));
            }
        }
        assert!(ExtRootSystem::full(ty("B2"), 1).trim().is_err());
    }

    #[test]
    fn random_members_are_members() {
        let r = ExtRootSystem::twisted(ty("G2"), 3, 2).unwrap();
        assert!(r.validate().passed());
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for _ in 0..100 {
            let (g, a) = r.sample_root(&mut rng, 3);
            assert!(r.membership(&g, a).unwrap());
        }
    }

    #[test]
    fn grid_span() {
        let grid = Grid { n: 2, m: 4 };
        let gens = grid.mask(|g| g == [2, 0] || g == [0, 1]);
        let span = grid.span(&gens);
        assert_eq!(span.iter().filter(|x| **x).count(), 8);
    }
}
