//! Exact truth-table representations of functions on the hypercube.
//!
//! Points of `{0,1}^n` are encoded as `u32` masks: bit `i` of the mask is
//! coordinate `i` (coordinates are 0-based throughout, so the LSB is the
//! first coordinate). The same encoding indexes subsets `S ⊆ [n]` in Fourier
//! space. One fixed convention everywhere avoids transposition bugs.

use crate::error::{Error, Result};

/// Largest supported dimension. A spectrum at `n = 24` occupies 128 MiB of
/// doubles, which is the desk-scale memory bound this crate targets.
pub const MAX_DIMENSION: u32 = 24;

/// Coordinate sets are bitmasks over the `n` coordinates.
pub type CoordSet = u32;

/// All-coordinates mask for dimension `n`.
#[inline]
pub fn full_set(n: u32) -> CoordSet {
    ((1u64 << n) - 1) as CoordSet
}

/// Sorted list of coordinates in a set.
pub fn coords_of(set: CoordSet) -> Vec<u32> {
    (0..32).filter(|i| set >> i & 1 == 1).collect()
}

fn check_dimension(n: u32) -> Result<()> {
    if n > MAX_DIMENSION {
        return Err(Error::Config(format!(
            "dimension {n} exceeds the cap of {MAX_DIMENSION}"
        )));
    }
    Ok(())
}

fn word_count(n: u32) -> usize {
    if n >= 6 {
        1usize << (n - 6)
    } else {
        1
    }
}

/// A Boolean function `f: {0,1}^n -> {0,1}` stored as an exact bit table.
///
/// Bit `x` of the table (packed little-endian into `u64` words) holds `f(x)`.
/// Dimension 0 (a single-point domain) is allowed internally so that total
/// restrictions stay first-class; user-facing parsers require `1 <= n`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct BooleanFunction {
    n: u32,
    words: Vec<u64>,
}

impl std::fmt::Debug for BooleanFunction {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "BooleanFunction({})", self.to_tt_string())
    }
}

impl BooleanFunction {
    /// Builds a function from packed table words. High bits beyond `2^n`
    /// must be zero.
    pub fn from_words(n: u32, words: Vec<u64>) -> Result<Self> {
        check_dimension(n)?;
        if words.len() != word_count(n) {
            return Err(Error::Config(format!(
                "table has {} words, dimension {n} needs {}",
                words.len(),
                word_count(n)
            )));
        }
        if n < 6 && words[0] >> (1u64 << n) != 0 {
            return Err(Error::Config(format!(
                "table bits set beyond 2^{n} points"
            )));
        }
        Ok(Self { n, words })
    }

    /// Builds a function by evaluating a predicate at every point.
    pub fn from_fn(n: u32, mut f: impl FnMut(u32) -> bool) -> Self {
        check_dimension(n).expect("dimension within cap");
        let mut words = vec![0u64; word_count(n)];
        for x in 0..(1u64 << n) {
            if f(x as u32) {
                words[(x >> 6) as usize] |= 1u64 << (x & 63);
            }
        }
        Self { n, words }
    }

    pub fn constant(n: u32, value: bool) -> Self {
        Self::from_fn(n, |_| value)
    }

    #[inline]
    pub fn n(&self) -> u32 {
        self.n
    }

    /// Number of points, `2^n`.
    #[inline]
    pub fn len(&self) -> usize {
        1usize << self.n
    }

    #[inline]
    pub fn is_empty(&self) -> bool {
        false
    }

    #[inline]
    pub fn words(&self) -> &[u64] {
        &self.words
    }

    /// `f(x)` as a bit.
    #[inline]
    pub fn get(&self, x: u32) -> bool {
        debug_assert!((x as usize) < self.len());
        self.words[(x >> 6) as usize] >> (x & 63) & 1 == 1
    }

    /// `f(x)` as 0 or 1.
    #[inline]
    pub fn value(&self, x: u32) -> u64 {
        self.words[(x >> 6) as usize] >> (x & 63) & 1
    }

    /// Number of points where `f = 1`.
    pub fn ones_count(&self) -> u64 {
        self.words.iter().map(|w| w.count_ones() as u64).sum()
    }

    /// `E[f]`, exactly a dyadic rational.
    pub fn mean(&self) -> f64 {
        self.ones_count() as f64 / self.len() as f64
    }

    /// `var(f) = E[f^2] - E[f]^2`; for a 0/1 table this is `mu(1 - mu)`.
    pub fn variance(&self) -> f64 {
        let mu = self.mean();
        mu * (1.0 - mu)
    }

    /// `E[fg]` for two Boolean functions on the same cube.
    pub fn inner_product(&self, other: &Self) -> Result<f64> {
        if self.n != other.n {
            return Err(Error::Dimension {
                expected: self.n,
                actual: other.n,
            });
        }
        let and: u64 = self
            .words
            .iter()
            .zip(&other.words)
            .map(|(a, b)| (a & b).count_ones() as u64)
            .sum();
        Ok(and as f64 / self.len() as f64)
    }

    /// `||f||_p = E[|f|^p]^{1/p}`; for a 0/1 table this is `mu^{1/p}`.
    pub fn lp_norm(&self, p: f64) -> Result<f64> {
        if !(p >= 1.0) {
            return Err(Error::Config(format!("lp_norm requires p >= 1, got {p}")));
        }
        Ok(self.mean().powf(1.0 / p))
    }

    /// Number of points where the two functions disagree.
    pub fn hamming_distance(&self, other: &Self) -> Result<u64> {
        if self.n != other.n {
            return Err(Error::Dimension {
                expected: self.n,
                actual: other.n,
            });
        }
        Ok(self
            .words
            .iter()
            .zip(&other.words)
            .map(|(a, b)| (a ^ b).count_ones() as u64)
            .sum())
    }

    /// `Pr[f != g]`.
    pub fn disagreement(&self, other: &Self) -> Result<f64> {
        Ok(self.hamming_distance(other)? as f64 / self.len() as f64)
    }

    /// Re-embeds the function in a larger cube; the added top coordinates
    /// are irrelevant.
    pub fn embed(&self, n: u32) -> Result<Self> {
        check_dimension(n)?;
        if n < self.n {
            return Err(Error::Config(format!(
                "cannot embed an n = {} function into n = {n}",
                self.n
            )));
        }
        let mask = full_set(self.n);
        Ok(Self::from_fn(n, |x| self.get(x & mask)))
    }

    pub fn to_real(&self) -> RealPointFunction {
        let values = (0..self.len()).map(|x| self.value(x as u32) as f64).collect();
        RealPointFunction {
            n: self.n,
            values,
        }
    }

    /// Serializes as `tt:<n>:<hex>`: one lowercase hex digit per 4 points,
    /// little-endian by point index (digit `j` bit `k` is point `4j + k`).
    pub fn to_tt_string(&self) -> String {
        let digits = self.len().div_ceil(4);
        let mut out = format!("tt:{}:", self.n);
        for j in 0..digits {
            let mut nibble = 0u8;
            for k in 0..4 {
                let x = 4 * j + k;
                if x < self.len() && self.get(x as u32) {
                    nibble |= 1 << k;
                }
            }
            out.push(char::from_digit(nibble as u32, 16).unwrap());
        }
        out
    }

    /// Parses the `tt:<n>:<hex>` form. Requires `1 <= n <= 24`.
    pub fn parse_tt(s: &str) -> Result<Self> {
        let rest = s
            .strip_prefix("tt:")
            .ok_or_else(|| Error::Parse(format!("expected tt:<n>:<hex>, got {s:?}")))?;
        let (n_str, hex) = rest
            .split_once(':')
            .ok_or_else(|| Error::Parse(format!("missing hex part in {s:?}")))?;
        let n: u32 = n_str
            .parse()
            .map_err(|_| Error::Parse(format!("bad dimension token {n_str:?}")))?;
        if n == 0 {
            return Err(Error::Parse("dimension must be at least 1".into()));
        }
        check_dimension(n).map_err(|e| Error::Parse(e.to_string()))?;
        let points = 1usize << n;
        let digits = points.div_ceil(4);
        if hex.len() != digits {
            return Err(Error::Parse(format!(
                "expected {digits} hex digits for n = {n}, got {}",
                hex.len()
            )));
        }
        let mut words = vec![0u64; word_count(n)];
        for (j, c) in hex.chars().enumerate() {
            let nibble = c.to_digit(16).ok_or_else(|| {
                Error::Parse(format!("bad hex digit {c:?} in truth table"))
            })?;
            if c.is_uppercase() {
                return Err(Error::Parse(format!("hex digit {c:?} must be lowercase")));
            }
            for k in 0..4 {
                let x = 4 * j + k;
                if nibble >> k & 1 == 1 {
                    if x >= points {
                        return Err(Error::Parse(format!(
                            "truth table bit {x} beyond 2^{n} points"
                        )));
                    }
                    words[x >> 6] |= 1u64 << (x & 63);
                }
            }
        }
        Ok(Self { n, words })
    }
}

/// A real-valued function on the hypercube, 2^n doubles indexed by point mask.
///
/// These arise as images of Boolean functions under noise and truncation
/// operators, and as derivatives.
#[derive(Clone, Debug, PartialEq)]
pub struct RealPointFunction {
    n: u32,
    values: Vec<f64>,
}

impl RealPointFunction {
    pub fn new(n: u32, values: Vec<f64>) -> Result<Self> {
        check_dimension(n)?;
        if values.len() != 1usize << n {
            return Err(Error::Config(format!(
                "value table has {} entries, dimension {n} needs {}",
                values.len(),
                1usize << n
            )));
        }
        Ok(Self { n, values })
    }

    pub fn constant(n: u32, value: f64) -> Self {
        Self {
            n,
            values: vec![value; 1usize << n],
        }
    }

    #[inline]
    pub fn n(&self) -> u32 {
        self.n
    }

    #[inline]
    pub fn len(&self) -> usize {
        self.values.len()
    }

    #[inline]
    pub fn is_empty(&self) -> bool {
        false
    }

    #[inline]
    pub fn get(&self, x: u32) -> f64 {
        self.values[x as usize]
    }

    #[inline]
    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn mean(&self) -> f64 {
        self.values.iter().sum::<f64>() / self.len() as f64
    }

    pub fn variance(&self) -> f64 {
        let mu = self.mean();
        self.values.iter().map(|v| (v - mu) * (v - mu)).sum::<f64>() / self.len() as f64
    }

    pub fn inner_product(&self, other: &Self) -> Result<f64> {
        if self.n != other.n {
            return Err(Error::Dimension {
                expected: self.n,
                actual: other.n,
            });
        }
        Ok(self
            .values
            .iter()
            .zip(&other.values)
            .map(|(a, b)| a * b)
            .sum::<f64>()
            / self.len() as f64)
    }

    /// `||f||_p = E[|f|^p]^{1/p}` for `p >= 1`. Fractional exponents go
    /// through `powf`, so callers comparing norms should allow a relative
    /// tolerance of about 1e-9.
    pub fn lp_norm(&self, p: f64) -> Result<f64> {
        if !(p >= 1.0) {
            return Err(Error::Config(format!("lp_norm requires p >= 1, got {p}")));
        }
        let mean_pow = self
            .values
            .iter()
            .map(|v| v.abs().powf(p))
            .sum::<f64>()
            / self.len() as f64;
        Ok(mean_pow.powf(1.0 / p))
    }

    /// Rounds back to a Boolean table, checking every value is within `tol`
    /// of 0 or 1.
    pub fn round_to_boolean(&self, tol: f64) -> Result<BooleanFunction> {
        let mut words = vec![0u64; word_count(self.n)];
        for (x, &v) in self.values.iter().enumerate() {
            if (v - 1.0).abs() <= tol {
                words[x >> 6] |= 1u64 << (x & 63);
            } else if v.abs() > tol {
                return Err(Error::Config(format!(
                    "value {v} at point {x} is not Boolean"
                )));
            }
        }
        BooleanFunction::from_words(self.n, words)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn maj3() -> BooleanFunction {
        BooleanFunction::from_fn(3, |x| x.count_ones() >= 2)
    }

    #[test]
    fn tt_roundtrip_of_known_tables() {
        // Dictator on one coordinate: f(0) = 0, f(1) = 1.
        let dict = BooleanFunction::from_fn(1, |x| x & 1 == 1);
        assert_eq!(dict.to_tt_string(), "tt:1:2");
        assert_eq!(BooleanFunction::parse_tt("tt:1:2").unwrap(), dict);

        // Maj3 is 1 on points 3, 5, 6, 7.
        assert_eq!(maj3().to_tt_string(), "tt:3:8e");
        assert_eq!(BooleanFunction::parse_tt("tt:3:8e").unwrap(), maj3());
    }

    #[test]
    fn parse_rejects_bad_tokens() {
        assert!(matches!(
            BooleanFunction::parse_tt("tt:3:8"),
            Err(Error::Parse(_))
        ));
        assert!(matches!(
            BooleanFunction::parse_tt("tt:0:1"),
            Err(Error::Parse(_))
        ));
        assert!(matches!(
            BooleanFunction::parse_tt("tt:2:G"),
            Err(Error::Parse(_))
        ));
        assert!(matches!(
            BooleanFunction::parse_tt("tt:1:8"),
            Err(Error::Parse(_))
        ));
        assert!(matches!(
            BooleanFunction::parse_tt("tt:25:00"),
            Err(Error::Parse(_))
        ));
    }

    #[test]
    fn means_and_variances() {
        assert_eq!(BooleanFunction::constant(4, true).mean(), 1.0);
        assert_eq!(BooleanFunction::constant(4, true).variance(), 0.0);
        // Maj3: 4 of 8 points are 1.
        assert_eq!(maj3().mean(), 0.5);
        assert_eq!(maj3().variance(), 0.25);
        // AND_2 by enumeration of 4 points.
        let and2 = BooleanFunction::from_fn(2, |x| x == 3);
        assert_eq!(and2.mean(), 0.25);
        assert_eq!(and2.variance(), 3.0 / 16.0);
    }

    #[test]
    fn inner_product_checks_dimensions() {
        let f = BooleanFunction::constant(2, true);
        let g = BooleanFunction::constant(3, true);
        assert!(matches!(
            f.inner_product(&g),
            Err(Error::Dimension { expected: 2, actual: 3 })
        ));
    }

    #[test]
    fn embed_keeps_relevant_coordinates() {
        let dict = BooleanFunction::from_fn(1, |x| x & 1 == 1);
        let big = dict.embed(5).unwrap();
        for x in 0..32u32 {
            assert_eq!(big.get(x), x & 1 == 1);
        }
        assert_eq!(big.mean(), 0.5);
    }

    #[test]
    fn real_function_norms() {
        let g = RealPointFunction::new(2, vec![1.0, -1.0, 1.0, -1.0]).unwrap();
        assert_eq!(g.mean(), 0.0);
        assert_eq!(g.variance(), 1.0);
        assert_eq!(g.lp_norm(2.0).unwrap(), 1.0);
        assert!(g.lp_norm(0.5).is_err());
    }
}
