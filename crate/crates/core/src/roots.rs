//! Irreducible finite root systems over the integers.
//!
//! Roots are stored in coordinates over the root basis `B` (so every root
//! is an integer vector of length `ℓ`), coroots in coordinates over a basis
//! of the coroot lattice. For reduced types that basis is the set of simple
//! coroots; for `BCℓ` the last basis coroot is the coroot of the doubled
//! short simple root, which is needed to span the coroot lattice.
//!
//! All data is generated by closing the simple (root, coroot) pairs under
//! the simple reflections, so the coroot bijection is equivariant by
//! construction.

use std::collections::{BTreeSet, HashMap, VecDeque};
use std::fmt;
use std::str::FromStr;

use nalgebra::DMatrix;
use num_integer::Integer;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::lattice::{FpAbelianGroup, SublatticeQuotient};

pub type IMat = DMatrix<i64>;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Family {
    A,
    B,
    C,
    D,
    E,
    F,
    G,
    BC,
}

impl Family {
    pub const ALL: [Family; 8] = [
        Family::A,
        Family::B,
        Family::C,
        Family::D,
        Family::E,
        Family::F,
        Family::G,
        Family::BC,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            Family::A => "A",
            Family::B => "B",
            Family::C => "C",
            Family::D => "D",
            Family::E => "E",
            Family::F => "F",
            Family::G => "G",
            Family::BC => "BC",
        }
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Family {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim().to_ascii_uppercase().as_str() {
            "A" => Ok(Family::A),
            "B" => Ok(Family::B),
            "C" => Ok(Family::C),
            "D" => Ok(Family::D),
            "E" => Ok(Family::E),
            "F" => Ok(Family::F),
            "G" => Ok(Family::G),
            "BC" => Ok(Family::BC),
            other => Err(Error::UnknownFamily(other.to_string())),
        }
    }
}

/// Cartan type of an irreducible finite root system. Construction enforces
/// the usual rank restrictions so that no type is listed twice.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "RawType", into = "RawType")]
pub struct RootSystemType {
    family: Family,
    rank: usize,
}

#[derive(Serialize, Deserialize)]
struct RawType {
    family: Family,
    rank: usize,
}

impl TryFrom<RawType> for RootSystemType {
    type Error = Error;
    fn try_from(raw: RawType) -> Result<Self> {
        RootSystemType::new(raw.family, raw.rank)
    }
}

impl From<RootSystemType> for RawType {
    fn from(t: RootSystemType) -> Self {
        RawType {
            family: t.family,
            rank: t.rank,
        }
    }
}

impl RootSystemType {
    pub fn new(family: Family, rank: usize) -> Result<Self> {
        let constraint = match family {
            Family::A if rank < 1 => Some("A requires rank >= 1"),
            Family::B if rank < 2 => Some("B requires rank >= 2"),
            Family::C if rank < 3 => Some("C requires rank >= 3"),
            Family::D if rank < 4 => Some("D requires rank >= 4"),
            Family::E if !(6..=8).contains(&rank) => Some("E requires rank 6, 7 or 8"),
            Family::F if rank != 4 => Some("F requires rank 4"),
            Family::G if rank != 2 => Some("G requires rank 2"),
            Family::BC if rank < 1 => Some("BC requires rank >= 1"),
            _ => None,
        };
        match constraint {
            Some(constraint) => Err(Error::InvalidType {
                family: family.to_string(),
                rank,
                constraint,
            }),
            None => Ok(RootSystemType { family, rank }),
        }
    }

    pub fn family(&self) -> Family {
        self.family
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    /// All roots have the same length. `A1` counts as simply laced here.
    pub fn is_simply_laced(&self) -> bool {
        matches!(self.family, Family::A | Family::D | Family::E)
    }

    pub fn is_reduced(&self) -> bool {
        self.family != Family::BC
    }

    /// The lacing number: 2 for `B`, `C`, `F4`, `BC` and 3 for `G2`.
    pub fn k_delta(&self) -> Result<i64> {
        match self.family {
            Family::B | Family::C | Family::F | Family::BC => Ok(2),
            Family::G => Ok(3),
            _ => Err(Error::Domain(format!(
                "k_delta is only defined for non-simply-laced types, got {self}"
            ))),
        }
    }

    /// Every valid type with rank at most `max_rank`, in family order.
    pub fn all_up_to_rank(max_rank: usize) -> Vec<RootSystemType> {
        let mut out = Vec::new();
        for family in Family::ALL {
            for rank in 1..=max_rank {
                if let Ok(t) = RootSystemType::new(family, rank) {
                    out.push(t);
                }
            }
        }
        out
    }

    /// Cartan matrix `C[i][j] = <α̌_i, α_j>` in Bourbaki numbering. For `BCℓ`
    /// this is the Cartan matrix of `Bℓ`.
    pub fn cartan_matrix(&self) -> IMat {
        let l = self.rank;
        let mut c = IMat::zeros(l, l);
        for i in 0..l {
            c[(i, i)] = 2;
        }
        let chain = |c: &mut IMat, upto: usize| {
            for i in 0..upto.saturating_sub(1) {
                c[(i, i + 1)] = -1;
                c[(i + 1, i)] = -1;
            }
        };
        match self.family {
            Family::A => chain(&mut c, l),
            Family::B | Family::BC => {
                chain(&mut c, l);
                if l >= 2 {
                    c[(l - 1, l - 2)] = -2;
                }
            }
            Family::C => {
                chain(&mut c, l);
                c[(l - 2, l - 1)] = -2;
            }
            Family::D => {
                chain(&mut c, l - 1);
                c[(l - 3, l - 1)] = -1;
                c[(l - 1, l - 3)] = -1;
            }
            Family::E => {
                // 1-3-4-5-6-7-8 with 2 attached to 4
                let edges = [(0, 2), (2, 3), (3, 4), (4, 5), (5, 6), (6, 7), (1, 3)];
                for (a, b) in edges {
                    if a < l && b < l {
                        c[(a, b)] = -1;
                        c[(b, a)] = -1;
                    }
                }
            }
            Family::F => {
                chain(&mut c, 4);
                c[(2, 1)] = -2;
            }
            Family::G => {
                c[(0, 1)] = -3;
                c[(1, 0)] = -1;
            }
        }
        c
    }
}

impl fmt::Display for RootSystemType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}{}", self.family, self.rank)
    }
}

impl FromStr for RootSystemType {
    type Err = Error;

    /// Accepts `B2`, `BC3`, `b 2` and `E_8`.
    fn from_str(s: &str) -> Result<Self> {
        let s: String = s.chars().filter(|c| !c.is_whitespace() && *c != '_').collect();
        let split = s
            .find(|c: char| c.is_ascii_digit())
            .ok_or_else(|| Error::Input(format!("missing rank in `{s}`")))?;
        let family: Family = s[..split].parse()?;
        let rank: usize = s[split..]
            .parse()
            .map_err(|_| Error::Input(format!("bad rank in `{s}`")))?;
        RootSystemType::new(family, rank)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum LengthClass {
    Short,
    Long,
    #[serde(rename = "extralong")]
    ExtraLong,
}

impl LengthClass {
    pub const ALL: [LengthClass; 3] = [LengthClass::Short, LengthClass::Long, LengthClass::ExtraLong];

    pub fn as_str(self) -> &'static str {
        match self {
            LengthClass::Short => "sh",
            LengthClass::Long => "lg",
            LengthClass::ExtraLong => "ex",
        }
    }
}

impl fmt::Display for LengthClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// An element of the Weyl group, kept as its matrix on root-lattice
/// coordinates together with the matching matrix on coroot-lattice
/// coordinates. Columns are images of basis vectors.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct WeylElement {
    root: IMat,
    coroot: IMat,
}

impl WeylElement {
    pub fn identity(rank: usize) -> Self {
        WeylElement {
            root: IMat::identity(rank, rank),
            coroot: IMat::identity(rank, rank),
        }
    }

    pub fn matrix(&self) -> &IMat {
        &self.root
    }

    pub fn coroot_matrix(&self) -> &IMat {
        &self.coroot
    }

    pub fn is_identity(&self) -> bool {
        self.root == IMat::identity(self.root.nrows(), self.root.ncols())
    }

    pub fn mul(&self, other: &WeylElement) -> WeylElement {
        WeylElement {
            root: &self.root * &other.root,
            coroot: &self.coroot * &other.coroot,
        }
    }

    /// Weyl groups are finite, so the inverse is a power of the element.
    pub fn inverse(&self) -> WeylElement {
        let mut prev = WeylElement::identity(self.root.nrows());
        let mut cur = self.clone();
        while !cur.is_identity() {
            prev = cur.clone();
            cur = cur.mul(self);
        }
        prev
    }

    /// Determinant of the root-lattice matrix, `±1`.
    pub fn det(&self) -> i64 {
        let m = self.root.map(|x| x as f64);
        m.determinant().round() as i64
    }

    pub fn act(&self, lambda: &[i64]) -> Vec<i64> {
        mat_vec(&self.root, lambda)
    }

    pub fn act_coroot(&self, mu: &[i64]) -> Vec<i64> {
        mat_vec(&self.coroot, mu)
    }
}

pub(crate) fn mat_vec(m: &IMat, v: &[i64]) -> Vec<i64> {
    (0..m.nrows())
        .map(|i| (0..m.ncols()).map(|j| m[(i, j)] * v[j]).sum())
        .collect()
}

#[derive(Debug, Clone)]
pub struct FiniteRootSystem {
    rs_type: RootSystemType,
    roots: Vec<Vec<i64>>,
    coroots: Vec<Vec<i64>>,
    basis: Vec<usize>,
    lengths: Vec<LengthClass>,
    /// `<μ, λ> = μᵀ · pairing · λ` for coroot coordinates μ and root coordinates λ.
    pairing: IMat,
    cartan: IMat,
    n_positive: usize,
    index: HashMap<Vec<i64>, usize>,
}

impl FiniteRootSystem {
    pub fn build(rs_type: RootSystemType) -> FiniteRootSystem {
        let l = rs_type.rank();
        let cartan = rs_type.cartan_matrix();
        let unit = |i: usize, s: i64| {
            let mut v = vec![0; l];
            v[i] = s;
            v
        };
        let (pairing, seeds, simple): (IMat, Vec<(Vec<i64>, Vec<i64>)>, Vec<(Vec<i64>, Vec<i64>)>) =
            if rs_type.family() == Family::BC {
                // last coroot basis vector is the coroot of 2α_ℓ, i.e. half of α̌_ℓ
                let mut p = cartan.clone();
                for j in 0..l {
                    p[(l - 1, j)] /= 2;
                }
                let mut simple: Vec<_> = (0..l - 1).map(|i| (unit(i, 1), unit(i, 1))).collect();
                simple.push((unit(l - 1, 1), unit(l - 1, 2)));
                let mut seeds = simple.clone();
                seeds.push((unit(l - 1, 2), unit(l - 1, 1)));
                (p, seeds, simple)
            } else {
                let simple: Vec<_> = (0..l).map(|i| (unit(i, 1), unit(i, 1))).collect();
                (cartan.clone(), simple.clone(), simple)
            };

        let pair = |mu: &[i64], la: &[i64]| -> i64 {
            let mut s = 0;
            for i in 0..l {
                for j in 0..l {
                    s += mu[i] * pairing[(i, j)] * la[j];
                }
            }
            s
        };

        let mut found: Vec<(Vec<i64>, Vec<i64>)> = Vec::new();
        let mut seen: HashMap<Vec<i64>, usize> = HashMap::new();
        let mut queue: VecDeque<(Vec<i64>, Vec<i64>)> = VecDeque::new();
        for s in &seeds {
            queue.push_back(s.clone());
        }
        while let Some((r, c)) = queue.pop_front() {
            if seen.contains_key(&r) {
                continue;
            }
            seen.insert(r.clone(), found.len());
            found.push((r.clone(), c.clone()));
            for (a, ac) in &simple {
                let p = pair(ac, &r);
                let q = pair(&c, a);
                let r2: Vec<i64> = r.iter().zip(a).map(|(x, y)| x - p * y).collect();
                let c2: Vec<i64> = c.iter().zip(ac).map(|(x, y)| x - q * y).collect();
                if !seen.contains_key(&r2) {
                    queue.push_back((r2, c2));
                }
            }
        }

        // positive roots ordered by height, then coordinates; negatives mirror them
        let mut positive: Vec<(Vec<i64>, Vec<i64>)> = found
            .into_iter()
            .filter(|(r, _)| r.iter().all(|&x| x >= 0))
            .collect();
        positive.sort_by(|a, b| {
            let ha: i64 = a.0.iter().sum();
            let hb: i64 = b.0.iter().sum();
            ha.cmp(&hb).then_with(|| b.0.cmp(&a.0))
        });
        let n_positive = positive.len();
        let mut roots = Vec::with_capacity(2 * n_positive);
        let mut coroots = Vec::with_capacity(2 * n_positive);
        for (r, c) in &positive {
            roots.push(r.clone());
            coroots.push(c.clone());
        }
        for (r, c) in &positive {
            roots.push(r.iter().map(|x| -x).collect());
            coroots.push(c.iter().map(|x| -x).collect());
        }
        let index: HashMap<Vec<i64>, usize> =
            roots.iter().enumerate().map(|(i, r)| (r.clone(), i)).collect();
        let basis: Vec<usize> = (0..l).map(|i| index[&unit(i, 1)]).collect();

        let mut rs = FiniteRootSystem {
            rs_type,
            roots,
            coroots,
            basis,
            lengths: Vec::new(),
            pairing,
            cartan: IMat::zeros(l, l),
            n_positive,
            index,
        };
        rs.cartan = IMat::from_fn(l, l, |i, j| {
            rs.pair(&rs.coroots[rs.basis[i]], &rs.roots[rs.basis[j]])
        });
        rs.lengths = rs.classify_lengths();
        rs
    }

    pub fn from_family(family: Family, rank: usize) -> Result<FiniteRootSystem> {
        Ok(Self::build(RootSystemType::new(family, rank)?))
    }

    fn classify_lengths(&self) -> Vec<LengthClass> {
        if self.rs_type.family() == Family::BC {
            return self
                .roots
                .iter()
                .map(|r| {
                    let doubled: Vec<i64> = r.iter().map(|x| 2 * x).collect();
                    if self.index.contains_key(&doubled) {
                        LengthClass::Short
                    } else if r.iter().all(|x| x % 2 == 0)
                        && self.index.contains_key(&r.iter().map(|x| x / 2).collect::<Vec<_>>())
                    {
                        LengthClass::ExtraLong
                    } else {
                        LengthClass::Long
                    }
                })
                .collect();
        }
        if self.rs_type.is_simply_laced() {
            return vec![LengthClass::Short; self.roots.len()];
        }
        let form = self.invariant_form();
        let norms: Vec<i64> = self.roots.iter().map(|r| bilinear(&form, r, r)).collect();
        let min = *norms.iter().min().expect("nonempty root system");
        norms
            .into_iter()
            .map(|n| if n == min { LengthClass::Short } else { LengthClass::Long })
            .collect()
    }

    pub fn rs_type(&self) -> RootSystemType {
        self.rs_type
    }

    pub fn rank(&self) -> usize {
        self.rs_type.rank()
    }

    pub fn len(&self) -> usize {
        self.roots.len()
    }

    pub fn is_empty(&self) -> bool {
        self.roots.is_empty()
    }

    pub fn roots(&self) -> &[Vec<i64>] {
        &self.roots
    }

    pub fn coroots(&self) -> &[Vec<i64>] {
        &self.coroots
    }

    pub fn root(&self, i: usize) -> &[i64] {
        &self.roots[i]
    }

    pub fn coroot(&self, i: usize) -> &[i64] {
        &self.coroots[i]
    }

    pub fn basis(&self) -> &[usize] {
        &self.basis
    }

    pub fn cartan(&self) -> &IMat {
        &self.cartan
    }

    pub fn pairing_matrix(&self) -> &IMat {
        &self.pairing
    }

    pub fn length_class(&self, i: usize) -> LengthClass {
        self.lengths[i]
    }

    pub fn lengths(&self) -> &[LengthClass] {
        &self.lengths
    }

    /// Length classes that actually occur, in the order sh, lg, ex.
    pub fn present_classes(&self) -> Vec<LengthClass> {
        LengthClass::ALL
            .into_iter()
            .filter(|c| self.lengths.contains(c))
            .collect()
    }

    /// Length class of `α̌` measured inside the coroot system. Short roots
    /// have long coroots and vice versa.
    pub fn coroot_length_class(&self, i: usize) -> LengthClass {
        match (self.rs_type.is_simply_laced(), self.lengths[i]) {
            (true, c) => c,
            (false, LengthClass::Short) if self.rs_type.family() == Family::BC => LengthClass::ExtraLong,
            (false, LengthClass::ExtraLong) => LengthClass::Short,
            (false, LengthClass::Short) => LengthClass::Long,
            (false, LengthClass::Long) if self.rs_type.family() == Family::BC => LengthClass::Long,
            (false, LengthClass::Long) => LengthClass::Short,
        }
    }

    pub fn n_positive(&self) -> usize {
        self.n_positive
    }

    pub fn is_positive(&self, i: usize) -> bool {
        i < self.n_positive
    }

    pub fn negate(&self, i: usize) -> usize {
        if i < self.n_positive {
            i + self.n_positive
        } else {
            i - self.n_positive
        }
    }

    pub fn index_of(&self, root: &[i64]) -> Option<usize> {
        self.index.get(root).copied()
    }

    /// Roots that are not twice another root.
    pub fn reduced_roots(&self) -> Vec<usize> {
        (0..self.len())
            .filter(|&i| self.lengths[i] != LengthClass::ExtraLong)
            .collect()
    }

    pub fn check_root(&self, i: usize) -> Result<()> {
        if i < self.len() {
            Ok(())
        } else {
            Err(Error::RootIndex(i))
        }
    }

    /// `<μ, λ>` for a coroot-lattice vector μ and root-lattice vector λ.
    pub fn pair(&self, mu: &[i64], lambda: &[i64]) -> i64 {
        bilinear(&self.pairing, mu, lambda)
    }

    /// `<α̌, λ>`.
    pub fn pairing(&self, coroot_of: usize, at: &[i64]) -> i64 {
        self.pair(&self.coroots[coroot_of], at)
    }

    /// `r_α.λ = λ - <α̌,λ> α`.
    pub fn reflect(&self, alpha: usize, lambda: &[i64]) -> Vec<i64> {
        let p = self.pairing(alpha, lambda);
        lambda
            .iter()
            .zip(&self.roots[alpha])
            .map(|(x, a)| x - p * a)
            .collect()
    }

    /// `r_α.μ = μ - <μ,α> α̌`.
    pub fn reflect_coroot(&self, alpha: usize, mu: &[i64]) -> Vec<i64> {
        let p = self.pair(mu, &self.roots[alpha]);
        mu.iter()
            .zip(&self.coroots[alpha])
            .map(|(x, a)| x - p * a)
            .collect()
    }

    /// Index of `r_α.β`.
    pub fn reflect_root(&self, alpha: usize, beta: usize) -> usize {
        self.index[&self.reflect(alpha, &self.roots[beta])]
    }

    /// `r_α ⊥ r_β`: distinct commuting reflections.
    pub fn perpendicular(&self, alpha: usize, beta: usize) -> bool {
        self.pairing(alpha, &self.roots[beta]) == 0
    }

    pub fn reflection(&self, alpha: usize) -> WeylElement {
        let l = self.rank();
        let mut root = IMat::identity(l, l);
        let mut coroot = IMat::identity(l, l);
        for j in 0..l {
            let mut e = vec![0; l];
            e[j] = 1;
            let img = self.reflect(alpha, &e);
            let cimg = self.reflect_coroot(alpha, &e);
            for i in 0..l {
                root[(i, j)] = img[i];
                coroot[(i, j)] = cimg[i];
            }
        }
        WeylElement { root, coroot }
    }

    pub fn simple_reflections(&self) -> Vec<WeylElement> {
        self.basis.iter().map(|&a| self.reflection(a)).collect()
    }

    /// Product `r_{w_1} r_{w_2} ⋯` of the reflections named by `word`.
    pub fn coxeter_evaluate(&self, word: &[usize]) -> Result<WeylElement> {
        let mut acc = WeylElement::identity(self.rank());
        for &a in word {
            self.check_root(a)?;
            acc = acc.mul(&self.reflection(a));
        }
        Ok(acc)
    }

    /// Index of the root `v.α`.
    pub fn act_on_root(&self, v: &WeylElement, alpha: usize) -> usize {
        self.index[&v.act(&self.roots[alpha])]
    }

    /// Symmetric edge multiplicities `<α̌,β><β̌,α>` over the basis.
    pub fn dynkin_adjacency(&self) -> IMat {
        let l = self.rank();
        IMat::from_fn(l, l, |i, j| {
            if i == j {
                0
            } else {
                self.cartan[(i, j)] * self.cartan[(j, i)]
            }
        })
    }

    /// Basis roots `i`, `j` joined by a simple edge.
    pub fn simply_adjacent(&self, i: usize, j: usize) -> bool {
        i != j && self.cartan[(i, j)] == -1 && self.cartan[(j, i)] == -1
    }

    /// The set `<Δ̌_x, Δ_y>`, with coroots classified by their length in the
    /// coroot system.
    pub fn pairing_values(&self, x: LengthClass, y: LengthClass) -> BTreeSet<i64> {
        let mut out = BTreeSet::new();
        for a in 0..self.len() {
            if self.coroot_length_class(a) != x {
                continue;
            }
            for b in 0..self.len() {
                if self.lengths[b] == y {
                    out.insert(self.pairing(a, &self.roots[b]));
                }
            }
        }
        out
    }

    /// Normalized 𝒱-invariant symmetric form on the root lattice, as a Gram
    /// matrix over the basis. Its values generate ℤ and it is positive
    /// definite.
    pub fn invariant_form(&self) -> IMat {
        normalized_form(&self.rs_type.cartan_matrix())
    }

    /// Normalized invariant form on the coroot lattice over its basis.
    pub fn coroot_invariant_form(&self) -> IMat {
        if self.rs_type.family() == Family::BC {
            // both lattices are ℤ^ℓ with the same basis e_i - e_{i+1}, e_ℓ
            return self.invariant_form();
        }
        normalized_form(&self.rs_type.cartan_matrix().transpose())
    }

    /// The 𝒱-equivariant embedding `ℒ → ℒ̌` sending short roots to their
    /// coroots and long roots to `k_Δ` times their coroots, as a matrix on
    /// lattice coordinates. Its image is spanned by the short-root coroots.
    pub fn lattice_inclusion(&self) -> Result<IMat> {
        let k = self.rs_type.k_delta()?;
        if !self.rs_type.is_reduced() {
            return Err(Error::Domain("lattice inclusion needs a reduced type".into()));
        }
        let l = self.rank();
        let mut m = IMat::zeros(l, l);
        for (j, &b) in self.basis.iter().enumerate() {
            let scale = if self.lengths[b] == LengthClass::Long { k } else { 1 };
            for i in 0..l {
                m[(i, j)] = scale * self.coroots[b][i];
            }
        }
        Ok(m)
    }

    /// `ℒ / ℒ_eff` with `ℒ_eff = <v.λ - λ>`, and the image of every root.
    pub fn l_eff_quotient(&self) -> LEffQuotient {
        let l = self.rank();
        let big: Vec<Vec<i64>> = (0..l)
            .map(|i| {
                let mut e = vec![0; l];
                e[i] = 1;
                e
            })
            .collect();
        let mut small = Vec::new();
        for &s in &self.basis {
            for e in &big {
                let img = self.reflect(s, e);
                small.push(img.iter().zip(e).map(|(a, b)| a - b).collect());
            }
        }
        let quotient = SublatticeQuotient::new(l, &big, &small);
        let root_images = self
            .roots
            .iter()
            .map(|r| quotient.project(r).expect("roots lie in the root lattice"))
            .collect();
        LEffQuotient {
            group: quotient.group().clone(),
            root_images,
        }
    }

    pub fn to_json(&self) -> RootSystemJson {
        RootSystemJson {
            schema: 1,
            family: self.rs_type.family(),
            rank: self.rank(),
            roots: self.roots.clone(),
            coroots: self.coroots.clone(),
            basis: self.basis.clone(),
            lengths: self.lengths.clone(),
        }
    }
}

#[derive(Debug, Clone)]
pub struct LEffQuotient {
    pub group: FpAbelianGroup,
    pub root_images: Vec<Vec<i64>>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RootSystemJson {
    pub schema: u32,
    #[serde(rename = "type")]
    pub family: Family,
    pub rank: usize,
    pub roots: Vec<Vec<i64>>,
    pub coroots: Vec<Vec<i64>>,
    pub basis: Vec<usize>,
    pub lengths: Vec<LengthClass>,
}

pub(crate) fn bilinear(m: &IMat, x: &[i64], y: &[i64]) -> i64 {
    let mut s = 0;
    for i in 0..m.nrows() {
        if x[i] == 0 {
            continue;
        }
        for j in 0..m.ncols() {
            s += x[i] * m[(i, j)] * y[j];
        }
    }
    s
}

/// Symmetrize a Cartan matrix and divide by the gcd of the Gram entries.
fn normalized_form(cartan: &IMat) -> IMat {
    let l = cartan.nrows();
    // squared lengths, propagated along the Dynkin tree from 12
    let mut sq: Vec<Option<i64>> = vec![None; l];
    sq[0] = Some(12);
    let mut changed = true;
    while changed {
        changed = false;
        for i in 0..l {
            for j in 0..l {
                if i == j || cartan[(i, j)] == 0 {
                    continue;
                }
                if let (Some(li), None) = (sq[i], sq[j]) {
                    // C_ij L_i = C_ji L_j
                    sq[j] = Some(cartan[(i, j)] * li / cartan[(j, i)]);
                    changed = true;
                }
            }
        }
    }
    let sq: Vec<i64> = sq.into_iter().map(|x| x.expect("connected diagram")).collect();
    let gram = IMat::from_fn(l, l, |i, j| cartan[(i, j)] * sq[i] / 2);
    let g = gram.iter().fold(0i64, |acc, &x| acc.gcd(&x));
    gram.map(|x| x / g)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rs(f: Family, l: usize) -> FiniteRootSystem {
        FiniteRootSystem::from_family(f, l).unwrap()
    }

    #[test]
    fn classical_root_counts() {
        let expect = [
            (Family::A, 1, 2),
            (Family::A, 2, 6),
            (Family::A, 4, 20),
            (Family::B, 2, 8),
            (Family::B, 3, 18),
            (Family::C, 3, 18),
            (Family::D, 4, 24),
            (Family::D, 5, 40),
            (Family::E, 6, 72),
            (Family::E, 7, 126),
            (Family::E, 8, 240),
            (Family::F, 4, 48),
            (Family::G, 2, 12),
            (Family::BC, 1, 4),
            (Family::BC, 2, 12),
            (Family::BC, 3, 24),
        ];
        for (f, l, n) in expect {
            assert_eq!(rs(f, l).len(), n, "{f}{l}");
        }
    }

    #[test]
    fn rank_constraints() {
        assert!(RootSystemType::new(Family::C, 2).is_err());
        assert!(RootSystemType::new(Family::D, 3).is_err());
        assert!(RootSystemType::new(Family::E, 5).is_err());
        assert!(RootSystemType::new(Family::G, 3).is_err());
        assert!(RootSystemType::new(Family::A, 0).is_err());
        let err = RootSystemType::new(Family::F, 5).unwrap_err();
        assert!(err.to_string().contains("F requires rank 4"));
        assert_eq!("BC3".parse::<RootSystemType>().unwrap().rank(), 3);
        assert_eq!("e 8".parse::<RootSystemType>().unwrap().family(), Family::E);
    }

    #[test]
    fn coroot_axioms() {
        for t in RootSystemType::all_up_to_rank(6) {
            let r = FiniteRootSystem::build(t);
            for a in 0..r.len() {
                assert_eq!(r.pairing(a, r.root(a)), 2, "{t}");
                let minus: Vec<i64> = r.root(a).iter().map(|x| -x).collect();
                assert_eq!(r.reflect(a, r.root(a)), minus);
                assert_eq!(r.root(r.negate(a)), &minus[..]);
                for b in 0..r.len() {
                    let rb = r.reflect_root(a, b);
                    assert_eq!(r.reflect_coroot(a, r.coroot(b)), r.coroot(rb), "{t}");
                }
            }
        }
    }

    #[test]
    fn bc_has_doubled_short_roots() {
        let r = rs(Family::BC, 3);
        for i in 0..r.len() {
            match r.length_class(i) {
                LengthClass::ExtraLong => {
                    let half: Vec<i64> = r.root(i).iter().map(|x| x / 2).collect();
                    let h = r.index_of(&half).unwrap();
                    assert_eq!(r.length_class(h), LengthClass::Short);
                }
                LengthClass::Short => {
                    let d: Vec<i64> = r.root(i).iter().map(|x| x * 2).collect();
                    assert!(r.index_of(&d).is_some());
                }
                LengthClass::Long => {}
            }
        }
        assert_eq!(r.reduced_roots().len(), 18);
    }

    #[test]
    fn k_delta_values() {
        let t = |f, l| RootSystemType::new(f, l).unwrap();
        assert_eq!(t(Family::G, 2).k_delta().unwrap(), 3);
        assert_eq!(t(Family::B, 3).k_delta().unwrap(), 2);
        assert_eq!(t(Family::F, 4).k_delta().unwrap(), 2);
        assert!(t(Family::A, 2).k_delta().is_err());
        assert!(t(Family::A, 1).k_delta().is_err());
    }

    #[test]
    fn reflect_coroot_b2() {
        let r = rs(Family::B, 2);
        let alpha = r.basis()[1]; // short
        let beta = r.basis()[0]; // long
        assert_eq!(r.length_class(alpha), LengthClass::Short);
        let expect: Vec<i64> = r
            .coroot(beta)
            .iter()
            .zip(r.coroot(alpha))
            .map(|(a, b)| a + b)
            .collect();
        assert_eq!(r.reflect_coroot(alpha, r.coroot(beta)), expect);
        let a = r.coroot(alpha).to_vec();
        assert_eq!(r.reflect_coroot(alpha, &a), a.iter().map(|x| -x).collect::<Vec<_>>());
    }

    #[test]
    fn invariant_form_values() {
        let b2 = rs(Family::B, 2);
        let f = b2.invariant_form();
        // basis[1] short, basis[0] long
        assert_eq!(f[(1, 1)], 1);
        assert_eq!(f[(1, 0)], -1);
        for t in RootSystemType::all_up_to_rank(6) {
            let r = FiniteRootSystem::build(t);
            let f = r.invariant_form();
            let g = f.iter().fold(0i64, |acc, &x| acc.gcd(&x));
            assert_eq!(g, 1, "{t}");
            for v in r.simple_reflections() {
                let m = v.matrix();
                assert_eq!(m.transpose() * &f * m, f, "{t}");
            }
            for a in 0..r.len() {
                for b in 0..r.len() {
                    if r.perpendicular(a, b) {
                        assert_eq!(bilinear(&f, r.root(a), r.root(b)), 0);
                    }
                }
            }
        }
    }

    #[test]
    fn a2_invariant_form_against_gcd_oracle() {
        // gcd over all |Δ|² values of the unnormalized form with (α|α) = 2
        let r = rs(Family::A, 2);
        let raw = r.rs_type().cartan_matrix();
        let mut g = 0i64;
        for a in r.roots() {
            for b in r.roots() {
                g = g.gcd(&bilinear(&raw, a, b));
            }
        }
        assert_eq!(g, 1);
        assert_eq!(r.invariant_form()[(0, 0)], 2 / g);
    }

    #[test]
    fn pairing_table() {
        use LengthClass::{Long as L, Short as S};
        let set = |v: &[i64]| v.iter().copied().collect::<BTreeSet<i64>>();
        // rows: sh/sh, sh/lg, lg/sh, lg/lg
        let table: [(&str, [&[i64]; 4]); 7] = [
            ("A1", [&[-2, 2], &[], &[], &[]]),
            ("B2", [&[-1, 1], &[-2, 0, 2], &[-2, 0, 2], &[-2, 2]]),
            ("B3", [&[-1, 0, 1], &[-2, -1, 0, 1, 2], &[-2, 0, 2], &[-2, 0, 2]]),
            ("C3", [&[-1, 0, 1], &[-2, 0, 2], &[-2, -1, 0, 1, 2], &[-2, 0, 2]]),
            ("F4", [&[-1, 0, 1], &[-2, -1, 0, 1, 2], &[-2, -1, 0, 1, 2], &[-2, 0, 2]]),
            // no long root is perpendicular to another long root (same for short)
            ("G2", [&[-1, 0, 1], &[-2, -1, 1, 2], &[-2, -1, 1, 2], &[-3, 0, 3]]),
            ("D4", [&[-2, -1, 0, 1, 2], &[], &[], &[]]),
        ];
        for (t, rows) in table {
            let r = FiniteRootSystem::build(t.parse().unwrap());
            let got = [
                r.pairing_values(S, S),
                r.pairing_values(S, L),
                r.pairing_values(L, S),
                r.pairing_values(L, L),
            ];
            for (g, w) in got.iter().zip(rows) {
                assert_eq!(*g, set(w), "{t}");
            }
        }
    }

    #[test]
    fn coxeter_words() {
        let r = rs(Family::A, 2);
        let (a, b) = (r.basis()[0], r.basis()[1]);
        assert!(r.coxeter_evaluate(&[]).unwrap().is_identity());
        assert!(r.coxeter_evaluate(&[a, a]).unwrap().is_identity());
        assert_eq!(
            r.coxeter_evaluate(&[a, b, a]).unwrap(),
            r.coxeter_evaluate(&[b, a, b]).unwrap()
        );
        assert!(r.coxeter_evaluate(&[99]).is_err());
        let v = r.coxeter_evaluate(&[a, b]).unwrap();
        assert!(v.mul(&v.inverse()).is_identity());
    }

    #[test]
    fn dynkin_edges() {
        let g2 = rs(Family::G, 2);
        assert_eq!(g2.dynkin_adjacency()[(0, 1)], 3);
        let d4 = rs(Family::D, 4);
        let adj = d4.dynkin_adjacency();
        let degree: Vec<i64> = (0..4).map(|i| (0..4).map(|j| adj[(i, j)]).sum()).collect();
        assert_eq!(degree, vec![1, 3, 1, 1]);
        assert!(d4.simply_adjacent(0, 1));
        assert!(!rs(Family::B, 2).simply_adjacent(0, 1));
    }

    #[test]
    fn conjugation_identity_small_types() {
        for t in RootSystemType::all_up_to_rank(4) {
            let r = FiniteRootSystem::build(t);
            for a in 0..r.len() {
                let ra = r.reflection(a);
                for b in 0..r.len() {
                    let lhs = ra.mul(&r.reflection(b)).mul(&ra);
                    assert_eq!(lhs, r.reflection(r.reflect_root(a, b)), "{t}");
                }
            }
        }
    }
}
