//! Corpus specifications and their deterministic expansions.
//!
//! Three spec forms: `exhaustive:n` (all `2^{2^n}` tables, `n <= 4`),
//! `random:n:count:seed` (seeded tables, one substream per index), and
//! `families:n_max` (the structured generators at a fixed ladder of sizes).
//! Iteration order is part of the contract: reports and regression floors
//! depend on it.

use rand::Rng;

use crate::error::{Error, Result};
use crate::families::{generate, FamilyKind, FamilySpec};
use crate::function::BooleanFunction;
use crate::rng::substream;

/// One corpus member: a human-readable label plus the table itself.
#[derive(Clone, Debug)]
pub struct CorpusFunction {
    pub label: String,
    pub f: BooleanFunction,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum CorpusSpec {
    Exhaustive { n: u32 },
    Random { n: u32, count: u64, seed: u64 },
    Families { n_max: u32 },
}

impl CorpusSpec {
    pub fn parse(s: &str) -> Result<Self> {
        let parts: Vec<&str> = s.split(':').collect();
        let bad = |msg: &str| Error::Parse(format!("corpus spec {s:?}: {msg}"));
        match parts.as_slice() {
            ["exhaustive", n] => Ok(Self::Exhaustive {
                n: n.parse().map_err(|_| bad("bad dimension token"))?,
            }),
            ["random", n, count, seed] => Ok(Self::Random {
                n: n.parse().map_err(|_| bad("bad dimension token"))?,
                count: count.parse().map_err(|_| bad("bad count token"))?,
                seed: seed.parse().map_err(|_| bad("bad seed token"))?,
            }),
            ["families", n_max] => Ok(Self::Families {
                n_max: n_max.parse().map_err(|_| bad("bad n_max token"))?,
            }),
            _ => Err(bad(
                "expected exhaustive:n, random:n:count:seed, or families:n_max",
            )),
        }
    }

    /// Canonical key, used to look up regression floors.
    pub fn key(&self) -> String {
        match self {
            Self::Exhaustive { n } => format!("exhaustive:{n}"),
            Self::Random { n, count, seed } => format!("random:{n}:{count}:{seed}"),
            Self::Families { n_max } => format!("families:{n_max}"),
        }
    }

    pub fn build(&self) -> Result<Vec<CorpusFunction>> {
        match *self {
            Self::Exhaustive { n } => {
                if n == 0 || n > 4 {
                    return Err(Error::Budget(format!(
                        "exhaustive corpus needs 1 <= n <= 4 (2^2^{n} tables)"
                    )));
                }
                let points = 1u32 << n;
                Ok((0u64..1u64 << points)
                    .map(|table| {
                        let f = BooleanFunction::from_fn(n, |x| table >> x & 1 == 1);
                        CorpusFunction {
                            label: f.to_tt_string(),
                            f,
                        }
                    })
                    .collect())
            }
            Self::Random { n, count, seed } => {
                if n == 0 || n > crate::function::MAX_DIMENSION {
                    return Err(Error::Config(format!("dimension {n} out of range")));
                }
                if count == 0 {
                    return Err(Error::Config("random corpus needs count >= 1".into()));
                }
                if count.saturating_mul(1 << n) > 1 << 34 {
                    return Err(Error::Budget(format!(
                        "random corpus of {count} tables at n = {n} is out of budget"
                    )));
                }
                Ok((0..count)
                    .map(|idx| {
                        let mut rng = substream(seed, idx);
                        let f = BooleanFunction::from_fn(n, |_| rng.random::<bool>());
                        CorpusFunction {
                            label: f.to_tt_string(),
                            f,
                        }
                    })
                    .collect())
            }
            Self::Families { n_max } => families_corpus(n_max),
        }
    }
}

impl std::fmt::Display for CorpusSpec {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(&self.key())
    }
}

fn push(
    out: &mut Vec<CorpusFunction>,
    kind: FamilyKind,
    n: u32,
) -> Result<()> {
    let spec = FamilySpec::new(kind);
    let f = generate(&spec, n)?;
    out.push(CorpusFunction {
        label: format!("{spec},n={n}"),
        f,
    });
    Ok(())
}

/// The fixed family ladder up to `n_max` (which must be at least 4):
/// constants, dictators, parities, majorities, small subcubes, every tribes
/// shape that fits, and two biased random tables. The biased tables keep a
/// weak-influence regime in the corpus, where junta extraction genuinely
/// discards coordinates.
fn families_corpus(n_max: u32) -> Result<Vec<CorpusFunction>> {
    if n_max < 4 {
        return Err(Error::Config(format!(
            "families corpus needs n_max >= 4, got {n_max}"
        )));
    }
    let n_max = n_max.min(crate::function::MAX_DIMENSION);
    let mut out = Vec::new();
    push(&mut out, FamilyKind::Constant { value: false }, 3)?;
    push(&mut out, FamilyKind::Constant { value: true }, 3)?;
    for n in [1, 3, 5.min(n_max)] {
        push(&mut out, FamilyKind::Dictator { i: 0 }, n)?;
    }
    for n in 2..=n_max.min(8) {
        push(&mut out, FamilyKind::Parity { coords: None }, n)?;
    }
    let mut n = 3;
    while n <= n_max.min(13) {
        push(&mut out, FamilyKind::Majority, n)?;
        n += 2;
    }
    for k in 2..=3u32 {
        for n in [k, (k + 3).min(n_max)] {
            push(&mut out, FamilyKind::AndK { k }, n)?;
            push(&mut out, FamilyKind::OrK { k }, n)?;
        }
    }
    for w in 2..=4u32 {
        for m in 2..=n_max / w {
            push(&mut out, FamilyKind::Tribes { w, m }, w * m)?;
        }
    }
    let n_rand = n_max.min(10);
    push(&mut out, FamilyKind::Random { seed: 101, bias: 0.5 }, n_rand)?;
    push(&mut out, FamilyKind::Random { seed: 102, bias: 0.05 }, n_rand)?;
    push(&mut out, FamilyKind::Random { seed: 103, bias: 0.9 }, n_rand)?;
    Ok(out)
}
