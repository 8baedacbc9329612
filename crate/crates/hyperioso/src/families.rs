//! Generators for the structured functions used as test corpus and
//! tightness witnesses: constants, dictators, subcubes (AND/OR), parities,
//! majority, tribes, and seeded random tables.

use rand::Rng;

use crate::error::{Error, Result};
use crate::function::{full_set, BooleanFunction, CoordSet};
use crate::geometry::sensitivity_profile;
use crate::rng::substream;

/// Which family to generate, with its parameters.
#[derive(Clone, Debug, PartialEq)]
pub enum FamilyKind {
    Constant { value: bool },
    /// `f(x) = x_i`.
    Dictator { i: u32 },
    /// AND of the first `k` coordinates.
    AndK { k: u32 },
    /// OR of the first `k` coordinates.
    OrK { k: u32 },
    /// XOR over a coordinate set; `None` means all coordinates.
    Parity { coords: Option<CoordSet> },
    /// Strict majority of the bits; requires odd `n`.
    Majority,
    /// OR over `m` consecutive blocks of width `w` of the AND of each
    /// block; requires `n = w * m`.
    Tribes { w: u32, m: u32 },
    /// I.i.d. biased bits, reproducible by seed.
    Random { seed: u64, bias: f64 },
}

/// A parsed family description, as written on the command line:
/// `family=tribes,w=3,m=4`, `family=majority`, `family=random,seed=7,bias=0.5`.
#[derive(Clone, Debug, PartialEq)]
pub struct FamilySpec {
    pub kind: FamilyKind,
}

impl FamilySpec {
    pub fn new(kind: FamilyKind) -> Self {
        Self { kind }
    }
}

impl std::fmt::Display for FamilySpec {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match &self.kind {
            FamilyKind::Constant { value } => write!(f, "family=constant,v={}", *value as u8),
            FamilyKind::Dictator { i } => write!(f, "family=dictator,i={i}"),
            FamilyKind::AndK { k } => write!(f, "family=and_k,k={k}"),
            FamilyKind::OrK { k } => write!(f, "family=or_k,k={k}"),
            FamilyKind::Parity { coords: None } => write!(f, "family=parity"),
            FamilyKind::Parity { coords: Some(c) } => {
                let list: Vec<String> =
                    crate::function::coords_of(*c).iter().map(u32::to_string).collect();
                write!(f, "family=parity,coords={}", list.join("+"))
            }
            FamilyKind::Majority => write!(f, "family=majority"),
            FamilyKind::Tribes { w, m } => write!(f, "family=tribes,w={w},m={m}"),
            FamilyKind::Random { seed, bias } => {
                write!(f, "family=random,seed={seed},bias={bias}")
            }
        }
    }
}

/// Builds the truth table of a family member at dimension `n`.
pub fn generate(spec: &FamilySpec, n: u32) -> Result<BooleanFunction> {
    if n == 0 || n > crate::function::MAX_DIMENSION {
        return Err(Error::Config(format!("dimension {n} out of range")));
    }
    match &spec.kind {
        FamilyKind::Constant { value } => Ok(BooleanFunction::constant(n, *value)),
        FamilyKind::Dictator { i } => {
            if *i >= n {
                return Err(Error::Config(format!(
                    "dictator coordinate {i} out of range for n = {n}"
                )));
            }
            let bit = 1u32 << i;
            Ok(BooleanFunction::from_fn(n, move |x| x & bit != 0))
        }
        FamilyKind::AndK { k } => {
            if *k > n || *k == 0 {
                return Err(Error::Config(format!("and_k needs 1 <= k <= n, got k = {k}")));
            }
            let mask = full_set(*k);
            Ok(BooleanFunction::from_fn(n, move |x| x & mask == mask))
        }
        FamilyKind::OrK { k } => {
            if *k > n || *k == 0 {
                return Err(Error::Config(format!("or_k needs 1 <= k <= n, got k = {k}")));
            }
            let mask = full_set(*k);
            Ok(BooleanFunction::from_fn(n, move |x| x & mask != 0))
        }
        FamilyKind::Parity { coords } => {
            let set = coords.unwrap_or_else(|| full_set(n));
            if set & !full_set(n) != 0 {
                return Err(Error::Config(
                    "parity coordinate set exceeds the dimension".into(),
                ));
            }
            Ok(BooleanFunction::from_fn(n, move |x| {
                (x & set).count_ones() % 2 == 1
            }))
        }
        FamilyKind::Majority => {
            if n % 2 == 0 {
                return Err(Error::Config(format!("majority requires odd n, got {n}")));
            }
            Ok(BooleanFunction::from_fn(n, move |x| {
                2 * x.count_ones() > n
            }))
        }
        FamilyKind::Tribes { w, m } => {
            if *w == 0 || *m == 0 || w * m != n {
                return Err(Error::Config(format!(
                    "tribes needs n = w * m, got n = {n}, w = {w}, m = {m}"
                )));
            }
            let w = *w;
            let m = *m;
            Ok(BooleanFunction::from_fn(n, move |x| {
                (0..m).any(|b| {
                    let block = (x >> (b * w)) & full_set(w);
                    block == full_set(w)
                })
            }))
        }
        FamilyKind::Random { seed, bias } => {
            if !(0.0..=1.0).contains(bias) {
                return Err(Error::Config(format!("bias {bias} outside [0, 1]")));
            }
            let mut rng = substream(*seed, 0);
            if *bias == 0.5 {
                Ok(BooleanFunction::from_fn(n, move |_| rng.random::<bool>()))
            } else {
                let bias = *bias;
                Ok(BooleanFunction::from_fn(n, move |_| {
                    rng.random::<f64>() < bias
                }))
            }
        }
    }
}

/// Exact `E[s^p]` of the tribes function with block width `w` and `m`
/// blocks, by full enumeration of the `2^{wm}` points.
pub fn tribes_moment(w: u32, m: u32, p: f64) -> Result<f64> {
    let f = generate(&FamilySpec::new(FamilyKind::Tribes { w, m }), w * m)?;
    if !(0.0 < p && p <= 1.0) {
        return Err(Error::Config(format!(
            "moment exponent must lie in (0, 1], got {p}"
        )));
    }
    Ok(sensitivity_profile(&f).moment(p))
}

/// Block width making the generated tribes function as balanced as
/// possible at dimension `n`: among widths dividing `n`, picks the one
/// whose mean `1 - (1 - 2^{-w})^{n/w}` is nearest 1/2 (ties to the wider
/// block).
pub fn tribes_width_for(n: u32) -> Result<u32> {
    if n == 0 {
        return Err(Error::Config("tribes needs n >= 1".into()));
    }
    let mut best = (f64::INFINITY, 1u32);
    for w in 1..=n {
        if n % w != 0 {
            continue;
        }
        let mean = 1.0 - (1.0 - 0.5f64.powi(w as i32)).powi((n / w) as i32);
        let gap = (mean - 0.5).abs();
        if gap < best.0 || (gap == best.0 && w > best.1) {
            best = (gap, w);
        }
    }
    Ok(best.1)
}
