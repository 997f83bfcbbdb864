//! Words over the reflections and the word problem for the presentation by
//! conjugation.

use std::fmt;
use std::str::FromStr;

use rand::Rng;
use serde::{Deserialize, Serialize};

use super::orbit::{uab_of_word, OrbitClass};
use super::{WElementJson, WeylGroup};
use crate::error::{Error, Result};
use crate::extended::ExtRootSystem;
use crate::reflection::{conj_reflect, ReflectionLabel};

/// A letter `r_(g, α)` as given by the user, before validation.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct WordLetter {
    pub g: Vec<i64>,
    pub alpha: usize,
}

/// Shorthand `ALPHA:G1,G2,...`, e.g. `3:1,0`.
impl FromStr for WordLetter {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::Input(format!("expected `alpha:g1,g2,...`, got `{s}`"));
        let (a, g) = s.trim().split_once(':').ok_or_else(bad)?;
        let alpha = a.trim().parse().map_err(|_| bad())?;
        let g = if g.trim().is_empty() {
            Vec::new()
        } else {
            g.split(',')
                .map(|x| x.trim().parse::<i64>().map_err(|_| bad()))
                .collect::<Result<_>>()?
        };
        Ok(WordLetter { g, alpha })
    }
}

impl fmt::Display for WordLetter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let g: Vec<String> = self.g.iter().map(i64::to_string).collect();
        write!(f, "{}:{}", self.alpha, g.join(","))
    }
}

impl From<&ReflectionLabel> for WordLetter {
    fn from(t: &ReflectionLabel) -> Self {
        WordLetter {
            g: t.g.clone(),
            alpha: t.alpha,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Word(pub Vec<WordLetter>);

impl Word {
    /// Whitespace or `;` separated shorthand letters.
    pub fn parse_shorthand(s: &str) -> Result<Self> {
        s.split(|c: char| c.is_whitespace() || c == ';')
            .filter(|p| !p.is_empty())
            .map(str::parse)
            .collect::<Result<Vec<_>>>()
            .map(Word)
    }

    /// Check every letter against the system and canonicalize.
    pub fn labels(&self, ers: &ExtRootSystem) -> Result<Vec<ReflectionLabel>> {
        self.0
            .iter()
            .map(|l| {
                if !ers.membership(&l.g, l.alpha)? {
                    return Err(Error::NotInSystem {
                        g: l.g.clone(),
                        root: l.alpha,
                    });
                }
                ReflectionLabel::new(ers.delta(), l.g.clone(), l.alpha)
            })
            .collect()
    }

    pub fn from_labels(labels: &[ReflectionLabel]) -> Self {
        Word(labels.iter().map(WordLetter::from).collect())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Layer {
    V,
    K,
    Z,
    Uab,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DecisionWitness {
    /// the word evaluated in `𝒲`
    pub element: WElementJson,
    /// orbit classes occurring an odd number of times
    pub uab: Vec<OrbitClass>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Decision {
    pub trivial: bool,
    pub failing_layer: Option<Layer>,
    pub witness: Option<DecisionWitness>,
}

fn require_tame(ers: &ExtRootSystem) -> Result<()> {
    let report = ers.check_twist()?;
    if !report.tame {
        return Err(Error::Domain(format!(
            "the word problem is solved for tame systems; {}",
            report.note.unwrap_or_else(|| "the given split is not a twist decomposition".into())
        )));
    }
    Ok(())
}

/// A word is trivial in `𝒰` iff it is trivial in `𝒲` and in `𝒰^ab`.
pub fn decide_word(ers: &ExtRootSystem, word: &[ReflectionLabel]) -> Result<Decision> {
    require_tame(ers)?;
    let w = WeylGroup::of(ers);
    let x = w.evaluate(word);
    let uab = uab_of_word(ers, word)?;
    let zero = |m: &crate::roots::IMat| m.iter().all(|v| *v == 0);
    let layer = if !x.v.is_identity() {
        Some(Layer::V)
    } else if !zero(&x.k) {
        Some(Layer::K)
    } else if !zero(&x.z) {
        Some(Layer::Z)
    } else if !uab.is_empty() {
        Some(Layer::Uab)
    } else {
        None
    };
    Ok(Decision {
        trivial: layer.is_none(),
        failing_layer: layer,
        witness: layer.map(|_| DecisionWitness {
            element: x.to_json(),
            uab: uab.into_iter().collect(),
        }),
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct NaiveConditions {
    pub c1: bool,
    pub c2: bool,
    pub c3: bool,
}

impl NaiveConditions {
    pub fn all(&self) -> bool {
        self.c1 && self.c2 && self.c3
    }
}

/// The three conditions: `𝒱`-image trivial, the product of the
/// `t^𝒲 · r_(0,ᾱ)^𝒲 = (0, t^𝒦, 1)` trivial, and `𝒰^ab` parity zero.
pub fn naive_conditions(ers: &ExtRootSystem, word: &[ReflectionLabel]) -> Result<NaiveConditions> {
    require_tame(ers)?;
    let w = WeylGroup::of(ers);
    let c1 = w.evaluate(word).v.is_identity();
    let kw = word.iter().fold(w.identity(), |acc, t| {
        let g = w.generator(t);
        let dot = w.generator(&ReflectionLabel {
            g: vec![0; ers.n()],
            alpha: t.alpha,
        });
        w.mul(&acc, &w.mul(&g, &dot))
    });
    Ok(NaiveConditions {
        c1,
        c2: kw.is_identity(),
        c3: uab_of_word(ers, word)?.is_empty(),
    })
}

fn random_label<R: Rng + ?Sized>(ers: &ExtRootSystem, rng: &mut R, spread: i64) -> ReflectionLabel {
    let (g, a) = ers.sample_root(rng, spread);
    ReflectionLabel::new(ers.delta(), g, a).expect("sampled roots are valid")
}

/// A random word of the given length.
pub fn random_word<R: Rng + ?Sized>(ers: &ExtRootSystem, rng: &mut R, len: usize, spread: i64) -> Vec<ReflectionLabel> {
    (0..len).map(|_| random_label(ers, rng, spread)).collect()
}

/// A product of `count` conjugated defining relators `u·R·u⁻¹`, with `R`
/// either `t t` or `t s t (t.s)`.
pub fn random_relator_product<R: Rng + ?Sized>(
    ers: &ExtRootSystem,
    rng: &mut R,
    count: usize,
    conj_len: usize,
    spread: i64,
) -> Vec<ReflectionLabel> {
    let mut out = Vec::new();
    for _ in 0..count {
        let len = rng.gen_range(0..=conj_len);
        let u = random_word(ers, rng, len, spread);
        let t = random_label(ers, rng, spread);
        let rel = if rng.gen_bool(0.25) {
            vec![t.clone(), t]
        } else {
            let s = random_label(ers, rng, spread);
            let ts = conj_reflect(ers.delta(), &t, &s);
            vec![t.clone(), s, t, ts]
        };
        out.extend(u.iter().cloned());
        out.extend(rel);
        out.extend(u.into_iter().rev());
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::roots::RootSystemType;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn full(t: &str, n: usize) -> ExtRootSystem {
        ExtRootSystem::full(t.parse::<RootSystemType>().unwrap(), n)
    }

    #[test]
    fn shorthand() {
        let w = Word::parse_shorthand("0:1,0; 2:0,-1  1:3,3").unwrap();
        assert_eq!(w.0.len(), 3);
        assert_eq!(w.0[1], WordLetter { g: vec![0, -1], alpha: 2 });
        assert_eq!(w.0[1].to_string(), "2:0,-1");
        assert!(Word::parse_shorthand("x:1").is_err());
    }

    #[test]
    fn relators_are_trivial() {
        let e = full("B2", 2);
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for _ in 0..50 {
            let w = random_relator_product(&e, &mut rng, 2, 2, 2);
            let d = decide_word(&e, &w).unwrap();
            assert!(d.trivial, "{:?}", d.failing_layer);
            assert!(d.witness.is_none());
        }
    }

    #[test]
    fn a1_translation_word() {
        let e = full("A1", 1);
        let a = e.delta().basis()[0];
        let t0 = ReflectionLabel::new(e.delta(), vec![0], a).unwrap();
        let t1 = ReflectionLabel::new(e.delta(), vec![1], a).unwrap();
        let w = [t0.clone(), t1.clone(), t0.clone(), t1.clone()];
        let d = decide_word(&e, &w).unwrap();
        assert!(!d.trivial);
        assert_eq!(d.failing_layer, Some(Layer::K));
        let single = naive_conditions(&e, std::slice::from_ref(&t0)).unwrap();
        assert!(!single.c1);
        assert!(naive_conditions(&e, &[]).unwrap().all());
    }

    #[test]
    fn naive_conditions_accept_a_nontrivial_word() {
        // the unconjugated product of the t^𝒦 cancels while the 𝒲 value is
        // a translation by 2a + 2b
        let e = full("A1", 2);
        let a = e.delta().basis()[0];
        let w = Word::parse_shorthand(&format!("{a}:1,0 {a}:-1,0 {a}:0,1 {a}:0,-1"))
            .unwrap()
            .labels(&e)
            .unwrap();
        assert!(naive_conditions(&e, &w).unwrap().all());
        let d = decide_word(&e, &w).unwrap();
        assert_eq!(d.failing_layer, Some(Layer::K));
    }

    #[test]
    fn untame_and_unknown_letters() {
        let e = ExtRootSystem::twisted("B2".parse().unwrap(), 2, 1).unwrap();
        let bad = e.with_split(&[1]).unwrap();
        assert!(decide_word(&bad, &[]).is_err());
        let lg = (0..e.delta().len())
            .find(|&i| e.delta().length_class(i) == crate::roots::LengthClass::Long)
            .unwrap();
        let w = Word(vec![WordLetter { g: vec![1, 0], alpha: lg }]);
        assert!(matches!(w.labels(&e), Err(Error::NotInSystem { .. })));
    }
}
