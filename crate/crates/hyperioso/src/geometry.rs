//! Sensitivity, gradient, influences, and boundary measures, including the
//! two-colored robust variants.
//!
//! Per-direction sensitivity is computed by shifted XOR passes over the bit
//! table (word-parallel), not per-point loops; this is the hot path for
//! exhaustive suites.

use crate::error::{Error, Result};
use crate::fourier::wht_forward;
use crate::function::{BooleanFunction, CoordSet, RealPointFunction};

/// Bits `b` of a word with `(b & d) == 0`, for `d` a power of two below 64.
fn interleave_mask(d: u32) -> u64 {
    let mut m = (1u64 << d) - 1;
    let mut span = 2 * d;
    while span < 64 {
        m |= m << span;
        span *= 2;
    }
    m
}

/// Bitmap over points: bit `x` set iff `f(x) != f(x ^ e_i)`.
pub fn direction_diff(f: &BooleanFunction, i: u32) -> Vec<u64> {
    assert!(i < f.n(), "direction out of range");
    let words = f.words();
    if i < 6 {
        let d = 1u32 << i;
        let m = interleave_mask(d);
        words
            .iter()
            .map(|&w| {
                let swapped = ((w >> d) & m) | ((w & m) << d);
                w ^ swapped
            })
            .collect()
    } else {
        let stride = 1usize << (i - 6);
        (0..words.len())
            .map(|j| words[j] ^ words[j ^ stride])
            .collect()
    }
}

/// `d_i f(z) = f(x_i = 0, rest = z) - f(x_i = 1, rest = z)`.
///
/// Values lie in `{-1, 0, 1}`, the function is constant in coordinate `i`,
/// and `E[d_i f] = 2 f_hat({i})` exactly.
pub fn derivative(f: &BooleanFunction, i: u32) -> Result<RealPointFunction> {
    if i >= f.n() {
        return Err(Error::Config(format!(
            "coordinate {i} out of range for n = {}",
            f.n()
        )));
    }
    let e = 1u32 << i;
    let values = (0..f.len() as u32)
        .map(|z| f.value(z & !e) as f64 - f.value(z | e) as f64)
        .collect();
    RealPointFunction::new(f.n(), values)
}

/// Number of coordinates whose flip at `x` changes `f`.
pub fn sensitivity(f: &BooleanFunction, x: u32) -> u32 {
    let fx = f.get(x);
    (0..f.n()).filter(|&i| f.get(x ^ (1 << i)) != fx).count() as u32
}

/// Per-point sensitivities plus their integer histogram.
#[derive(Clone, Debug)]
pub struct SensitivityProfile {
    n: u32,
    per_point: Vec<u8>,
    histogram: Vec<u64>,
}

impl SensitivityProfile {
    #[inline]
    pub fn n(&self) -> u32 {
        self.n
    }

    #[inline]
    pub fn at(&self, x: u32) -> u32 {
        self.per_point[x as usize] as u32
    }

    /// Bucket `s` holds the number of points with sensitivity `s`.
    pub fn histogram(&self) -> &[u64] {
        &self.histogram
    }

    /// `E[s_f(x)^p]` from the histogram: one `powf` per bucket.
    pub fn moment(&self, p: f64) -> f64 {
        let total = self.per_point.len() as f64;
        self.histogram
            .iter()
            .enumerate()
            .skip(1)
            .map(|(s, &count)| count as f64 * (s as f64).powf(p))
            .sum::<f64>()
            / total
    }

    /// `E[s_f]`, exact (integer numerator).
    pub fn expectation(&self) -> f64 {
        self.slot_sum() as f64 / self.per_point.len() as f64
    }

    /// `sum_x s_f(x)`: twice the number of sensitive edges.
    pub fn slot_sum(&self) -> u64 {
        self.histogram
            .iter()
            .enumerate()
            .map(|(s, &count)| s as u64 * count)
            .sum()
    }

    /// `Pr[s_f(x) > 0]`.
    pub fn vertex_boundary(&self) -> f64 {
        1.0 - self.histogram[0] as f64 / self.per_point.len() as f64
    }
}

/// Computes all per-point sensitivities with one XOR pass per direction.
pub fn sensitivity_profile(f: &BooleanFunction) -> SensitivityProfile {
    let mut per_point = vec![0u8; f.len()];
    for i in 0..f.n() {
        let diff = direction_diff(f, i);
        for (j, mut w) in diff.into_iter().enumerate() {
            let base = j * 64;
            while w != 0 {
                let b = w.trailing_zeros() as usize;
                per_point[base + b] += 1;
                w &= w - 1;
            }
        }
    }
    let mut histogram = vec![0u64; f.n() as usize + 1];
    for &s in &per_point {
        histogram[s as usize] += 1;
    }
    SensitivityProfile {
        n: f.n(),
        per_point,
        histogram,
    }
}

/// `E[s_f(x)^p]` for `p` in `[1/2, 1]`. At `p = 1/2` this equals
/// `E[||grad f(x)||_2]` since the gradient entries lie in `{-1, 0, 1}`.
pub fn talagrand_boundary(f: &BooleanFunction, p: f64) -> Result<f64> {
    if !(0.5..=1.0).contains(&p) {
        return Err(Error::Config(format!(
            "moment exponent must lie in [1/2, 1], got {p}"
        )));
    }
    Ok(sensitivity_profile(f).moment(p))
}

/// `I_i[f] = Pr_x[f(x) != f(x ^ e_i)]`.
pub fn influence(f: &BooleanFunction, i: u32) -> Result<f64> {
    if i >= f.n() {
        return Err(Error::Config(format!(
            "coordinate {i} out of range for n = {}",
            f.n()
        )));
    }
    let ones: u64 = direction_diff(f, i).iter().map(|w| w.count_ones() as u64).sum();
    Ok(ones as f64 / f.len() as f64)
}

pub fn influence_vector(f: &BooleanFunction) -> Vec<f64> {
    (0..f.n()).map(|i| influence(f, i).unwrap()).collect()
}

/// `sum_i I_i[f] = E[s_f]`.
pub fn total_influence(f: &BooleanFunction) -> f64 {
    influence_vector(f).iter().sum()
}

/// `M[f] = sum_i I_i[f]^2`.
pub fn influence_sq_sum(f: &BooleanFunction) -> f64 {
    influence_vector(f).iter().map(|v| v * v).sum()
}

/// `|E_f| / 2^n = E[s_f] / 2`, the undirected sensitive-edge density.
pub fn edge_boundary_measure(f: &BooleanFunction) -> f64 {
    let slot_sum: u64 = (0..f.n())
        .map(|i| {
            direction_diff(f, i)
                .iter()
                .map(|w| w.count_ones() as u64)
                .sum::<u64>()
        })
        .sum();
    // Each sensitive edge is flagged at both endpoints.
    (slot_sum / 2) as f64 / f.len() as f64
}

/// `Pr_x[s_f(x) > 0]`.
pub fn vertex_boundary_measure(f: &BooleanFunction) -> f64 {
    let mut acc = vec![0u64; f.words().len()];
    for i in 0..f.n() {
        for (a, d) in acc.iter_mut().zip(direction_diff(f, i)) {
            *a |= d;
        }
    }
    let boundary: u64 = acc.iter().map(|w| w.count_ones() as u64).sum();
    boundary as f64 / f.len() as f64
}

/// `E[(sum_i |d_i g(x)|^p)^{1/p}]` for a real-valued table, with the
/// derivative taken pointwise as in the Boolean case.
pub fn gradient_lp_mean(g: &RealPointFunction, p: f64) -> Result<f64> {
    if !(p >= 1.0) {
        return Err(Error::Config(format!(
            "gradient norm exponent must be >= 1, got {p}"
        )));
    }
    let n = g.n();
    let mut acc = 0.0;
    for x in 0..g.len() as u32 {
        let mut norm_p = 0.0;
        for i in 0..n {
            let e = 1u32 << i;
            let d = g.get(x & !e) - g.get(x | e);
            norm_p += if p == 2.0 {
                d * d
            } else if p == 1.0 {
                d.abs()
            } else {
                d.abs().powf(p)
            };
        }
        acc += norm_p.powf(1.0 / p);
    }
    Ok(acc / g.len() as f64)
}

/// A red/blue assignment to all `n * 2^{n-1}` hypercube edges.
///
/// The edge `{x, x ^ e_i}` is keyed by its canonical lower endpoint (the one
/// with `x_i = 0`); bit 1 means red. Edges are ordered by direction `i`, then
/// by the canonical endpoint ascending.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EdgeColoring {
    n: u32,
    bits: Vec<u64>,
}

/// Drop bit `i` from a mask, compacting the higher bits down.
#[inline]
fn drop_bit(x: u32, i: u32) -> u32 {
    ((x >> (i + 1)) << i) | (x & ((1 << i) - 1))
}

impl EdgeColoring {
    pub fn edge_count(n: u32) -> usize {
        if n == 0 {
            0
        } else {
            n as usize * (1usize << (n - 1))
        }
    }

    fn bit_words(n: u32) -> usize {
        Self::edge_count(n).div_ceil(64).max(1)
    }

    pub fn all_blue(n: u32) -> Self {
        Self {
            n,
            bits: vec![0u64; Self::bit_words(n)],
        }
    }

    pub fn all_red(n: u32) -> Self {
        let mut col = Self::all_blue(n);
        for e in 0..Self::edge_count(n) {
            col.bits[e / 64] |= 1u64 << (e % 64);
        }
        col
    }

    /// Colors each edge from a predicate on `(canonical endpoint, direction)`.
    pub fn from_fn(n: u32, red: impl Fn(u32, u32) -> bool) -> Self {
        let mut col = Self::all_blue(n);
        for i in 0..n {
            for xc in 0..(1u32 << n) {
                if xc & (1 << i) != 0 {
                    continue;
                }
                if red(xc, i) {
                    let e = col.edge_index(xc, i);
                    col.bits[e / 64] |= 1u64 << (e % 64);
                }
            }
        }
        col
    }

    /// A uniformly random coloring.
    pub fn random(n: u32, rng: &mut impl rand::Rng) -> Self {
        let mut col = Self::all_blue(n);
        for e in 0..Self::edge_count(n) {
            if rng.random::<bool>() {
                col.bits[e / 64] |= 1u64 << (e % 64);
            }
        }
        col
    }

    #[inline]
    pub fn n(&self) -> u32 {
        self.n
    }

    fn edge_index(&self, x: u32, i: u32) -> usize {
        let xc = x & !(1 << i);
        i as usize * (1usize << (self.n - 1)) + drop_bit(xc, i) as usize
    }

    /// Color of the edge `{x, x ^ e_i}`; either endpoint may be queried.
    #[inline]
    pub fn is_red(&self, x: u32, i: u32) -> bool {
        let e = self.edge_index(x, i);
        self.bits[e / 64] >> (e % 64) & 1 == 1
    }

    /// Serializes as `col:<n>:<hex>`, same nibble packing as truth tables.
    pub fn to_col_string(&self) -> String {
        let edges = Self::edge_count(self.n);
        let mut out = format!("col:{}:", self.n);
        for j in 0..edges.div_ceil(4) {
            let mut nibble = 0u8;
            for k in 0..4 {
                let e = 4 * j + k;
                if e < edges && self.bits[e / 64] >> (e % 64) & 1 == 1 {
                    nibble |= 1 << k;
                }
            }
            out.push(char::from_digit(nibble as u32, 16).unwrap());
        }
        out
    }

    pub fn parse_col(s: &str) -> Result<Self> {
        let rest = s
            .strip_prefix("col:")
            .ok_or_else(|| Error::Parse(format!("expected col:<n>:<hex>, got {s:?}")))?;
        let (n_str, hex) = rest
            .split_once(':')
            .ok_or_else(|| Error::Parse(format!("missing hex part in {s:?}")))?;
        let n: u32 = n_str
            .parse()
            .map_err(|_| Error::Parse(format!("bad dimension token {n_str:?}")))?;
        if n == 0 || n > crate::function::MAX_DIMENSION {
            return Err(Error::Parse(format!("coloring dimension {n} out of range")));
        }
        let edges = Self::edge_count(n);
        if hex.len() != edges.div_ceil(4) {
            return Err(Error::Parse(format!(
                "expected {} hex digits for n = {n}, got {}",
                edges.div_ceil(4),
                hex.len()
            )));
        }
        let mut col = Self::all_blue(n);
        for (j, c) in hex.chars().enumerate() {
            let nibble = c
                .to_digit(16)
                .ok_or_else(|| Error::Parse(format!("bad hex digit {c:?} in coloring")))?;
            for k in 0..4 {
                let e = 4 * j + k;
                if nibble >> k & 1 == 1 {
                    if e >= edges {
                        return Err(Error::Parse(format!("coloring bit {e} out of range")));
                    }
                    col.bits[e / 64] |= 1u64 << (e % 64);
                }
            }
        }
        Ok(col)
    }
}

/// Red and blue sensitivities at a point: `s_red(x)` counts red sensitive
/// edges at `x` when `f(x) = 1` (else 0); `s_blue(x)` counts blue sensitive
/// edges when `f(x) = 0` (else 0).
pub fn colored_sensitivities(
    f: &BooleanFunction,
    col: &EdgeColoring,
    x: u32,
) -> Result<(u32, u32)> {
    if f.n() != col.n() {
        return Err(Error::Dimension {
            expected: f.n(),
            actual: col.n(),
        });
    }
    let fx = f.get(x);
    let mut red = 0;
    let mut blue = 0;
    for i in 0..f.n() {
        if f.get(x ^ (1 << i)) == fx {
            continue;
        }
        if col.is_red(x, i) {
            red += 1;
        } else {
            blue += 1;
        }
    }
    Ok(if fx { (red, 0) } else { (0, blue) })
}

/// `E[sqrt(s_red)] + E[sqrt(s_blue)]`.
pub fn talagrand_colored(f: &BooleanFunction, col: &EdgeColoring) -> Result<f64> {
    if f.n() != col.n() {
        return Err(Error::Dimension {
            expected: f.n(),
            actual: col.n(),
        });
    }
    let diffs: Vec<Vec<u64>> = (0..f.n()).map(|i| direction_diff(f, i)).collect();
    let mut acc_red = 0.0;
    let mut acc_blue = 0.0;
    for x in 0..f.len() as u32 {
        let fx = f.get(x);
        let mut count = 0u32;
        for (i, diff) in diffs.iter().enumerate() {
            if diff[(x >> 6) as usize] >> (x & 63) & 1 == 0 {
                continue;
            }
            if col.is_red(x, i as u32) == fx {
                count += 1;
            }
        }
        if fx {
            acc_red += (count as f64).sqrt();
        } else {
            acc_blue += (count as f64).sqrt();
        }
    }
    Ok((acc_red + acc_blue) / f.len() as f64)
}

/// `W_{=1}[f]`, directly off the singleton coefficients.
pub fn level_one_weight(f: &BooleanFunction) -> f64 {
    let spectrum = wht_forward(f);
    (0..f.n()).map(|i| spectrum.coeff(1 << i).powi(2)).sum()
}

/// Coordinates outside a set, as a mask.
pub fn complement(set: CoordSet, n: u32) -> CoordSet {
    !set & crate::function::full_set(n)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rng::substream;
    use proptest::prelude::*;
    use rand::Rng;

    fn maj3() -> BooleanFunction {
        BooleanFunction::from_fn(3, |x| x.count_ones() >= 2)
    }

    fn and2() -> BooleanFunction {
        BooleanFunction::from_fn(2, |x| x == 3)
    }

    fn parity(n: u32) -> BooleanFunction {
        BooleanFunction::from_fn(n, |x| x.count_ones() % 2 == 1)
    }

    fn random_function(n: u32, seed: u64) -> BooleanFunction {
        let mut rng = substream(seed, 0);
        BooleanFunction::from_fn(n, |_| rng.random::<bool>())
    }

    #[test]
    fn derivative_of_dictator() {
        let dict = BooleanFunction::from_fn(1, |x| x & 1 == 1);
        let d = derivative(&dict, 0).unwrap();
        assert_eq!(d.values(), &[-1.0, -1.0]);
        assert_eq!(d.mean(), -1.0); // = 2 * (-1/2)

        let dict2 = BooleanFunction::from_fn(2, |x| x & 1 == 1);
        let d2 = derivative(&dict2, 1).unwrap();
        assert!(d2.values().iter().all(|&v| v == 0.0));

        assert!(derivative(&dict, 1).is_err());
    }

    #[test]
    fn derivative_of_maj3_by_enumeration() {
        let d = derivative(&maj3(), 0).unwrap();
        // Nonzero exactly on the 4 points with x2 != x3 (bits 1 and 2 differ).
        for z in 0..8u32 {
            let expect_nonzero = (z >> 1 & 1) != (z >> 2 & 1);
            assert_eq!(d.get(z) != 0.0, expect_nonzero, "z = {z}");
        }
        assert_eq!(d.mean(), -0.5);
    }

    #[test]
    fn derivative_mean_is_twice_singleton_coefficient() {
        for seed in 0..20 {
            let f = random_function(6, seed);
            let s = wht_forward(&f);
            for i in 0..6 {
                let d = derivative(&f, i).unwrap();
                assert_eq!(d.mean(), 2.0 * s.coeff(1 << i));
            }
        }
    }

    #[test]
    fn pointwise_sensitivities() {
        for x in 0..4u32 {
            assert_eq!(sensitivity(&parity(2), x), 2);
        }
        assert_eq!(sensitivity(&maj3(), 0b111), 0);
        assert_eq!(sensitivity(&maj3(), 0b011), 2);
        assert_eq!(sensitivity(&and2(), 0b11), 2);
        assert_eq!(sensitivity(&and2(), 0b01), 1);
        assert_eq!(sensitivity(&and2(), 0b00), 0);
    }

    #[test]
    fn profile_matches_pointwise_and_counts_edge_slots() {
        for seed in 0..10 {
            let f = random_function(7, seed);
            let profile = sensitivity_profile(&f);
            let mut slot_sum = 0u64;
            for x in 0..f.len() as u32 {
                assert_eq!(profile.at(x), sensitivity(&f, x));
                slot_sum += sensitivity(&f, x) as u64;
            }
            assert_eq!(profile.slot_sum(), slot_sum);
            assert_eq!(slot_sum % 2, 0);
        }
    }

    #[test]
    fn talagrand_boundary_values() {
        let dict = BooleanFunction::from_fn(1, |x| x & 1 == 1);
        assert_eq!(talagrand_boundary(&dict, 0.5).unwrap(), 1.0);
        // Maj3: 6 points with s = 2, 2 with s = 0.
        let expect = 6.0 * 2f64.sqrt() / 8.0;
        assert!((talagrand_boundary(&maj3(), 0.5).unwrap() - expect).abs() < 1e-15);
        assert!((expect - 1.06066).abs() < 1e-4);
        // AND_2 by enumeration of 4 points.
        let expect = (2.0 + 2f64.sqrt()) / 4.0;
        assert!((talagrand_boundary(&and2(), 0.5).unwrap() - expect).abs() < 1e-15);
        assert!(talagrand_boundary(&maj3(), 0.3).is_err());
        assert!(talagrand_boundary(&maj3(), 1.2).is_err());
    }

    #[test]
    fn influences_and_concentration() {
        let dict = BooleanFunction::from_fn(3, |x| x & 1 == 1);
        assert_eq!(influence_vector(&dict), vec![1.0, 0.0, 0.0]);
        assert_eq!(influence_sq_sum(&dict), 1.0);

        assert_eq!(influence_vector(&maj3()), vec![0.5, 0.5, 0.5]);
        assert_eq!(total_influence(&maj3()), 1.5);
        assert_eq!(influence_sq_sum(&maj3()), 0.75);

        assert_eq!(influence_vector(&and2()), vec![0.5, 0.5]);
        assert_eq!(influence_sq_sum(&and2()), 0.5);
    }

    #[test]
    fn boundary_measures() {
        // Maj3: 6 sensitive edges over 8 points; 6 boundary vertices of 8.
        assert_eq!(edge_boundary_measure(&maj3()), 0.75);
        assert_eq!(vertex_boundary_measure(&maj3()), 0.75);

        let c = BooleanFunction::constant(4, true);
        assert_eq!(edge_boundary_measure(&c), 0.0);
        assert_eq!(vertex_boundary_measure(&c), 0.0);

        // Parity on n = 2: all 4 edges sensitive, every point on the boundary,
        // so |E_f| / 2^n = 1 = E[s_f] / 2.
        assert_eq!(edge_boundary_measure(&parity(2)), 1.0);
        assert_eq!(vertex_boundary_measure(&parity(2)), 1.0);
        assert_eq!(total_influence(&parity(2)), 2.0);
    }

    #[test]
    fn colored_sensitivity_definition() {
        let dict = BooleanFunction::from_fn(1, |x| x & 1 == 1);
        let red = EdgeColoring::all_red(1);
        let blue = EdgeColoring::all_blue(1);
        assert_eq!(colored_sensitivities(&dict, &red, 1).unwrap(), (1, 0));
        assert_eq!(colored_sensitivities(&dict, &blue, 0).unwrap(), (0, 1));

        // Red = edges in direction 0. At x = 0b011 (f = 1, sensitive
        // directions {0, 1}) only the direction-0 edge is red.
        let col = EdgeColoring::from_fn(3, |_, i| i == 0);
        assert_eq!(colored_sensitivities(&maj3(), &col, 0b011).unwrap(), (1, 0));

        let wrong = EdgeColoring::all_red(2);
        assert!(colored_sensitivities(&maj3(), &wrong, 0).is_err());
    }

    #[test]
    fn talagrand_colored_values() {
        let c = BooleanFunction::constant(3, false);
        assert_eq!(talagrand_colored(&c, &EdgeColoring::all_red(3)).unwrap(), 0.0);

        // Dictator all-red: half the points have f = 1 with one red edge.
        let dict = BooleanFunction::from_fn(1, |x| x & 1 == 1);
        assert_eq!(talagrand_colored(&dict, &EdgeColoring::all_red(1)).unwrap(), 0.5);

        // Maj3 all-red by enumeration: boundary f = 1 points contribute sqrt(2).
        let expect = 3.0 * 2f64.sqrt() / 8.0;
        let got = talagrand_colored(&maj3(), &EdgeColoring::all_red(3)).unwrap();
        assert!((got - expect).abs() < 1e-15);
        assert!(got >= 0.5 * (3.0f64 / 16.0).sqrt());
    }

    #[test]
    fn coloring_roundtrip_and_endpoint_resolution() {
        let mut rng = substream(5, 0);
        let col = EdgeColoring::random(4, &mut rng);
        let s = col.to_col_string();
        assert_eq!(EdgeColoring::parse_col(&s).unwrap(), col);
        for x in 0..16u32 {
            for i in 0..4 {
                assert_eq!(col.is_red(x, i), col.is_red(x ^ (1 << i), i));
            }
        }
    }

    #[test]
    fn gradient_mean_matches_profile_for_boolean_inputs() {
        for seed in 0..5 {
            let f = random_function(6, seed);
            let g = f.to_real();
            let via_gradient = gradient_lp_mean(&g, 2.0).unwrap();
            let via_profile = talagrand_boundary(&f, 0.5).unwrap();
            assert!((via_gradient - via_profile).abs() < 1e-12);
            let l1 = gradient_lp_mean(&g, 1.0).unwrap();
            assert!((l1 - total_influence(&f)).abs() < 1e-12);
        }
    }

    proptest! {
        #[test]
        fn level_one_lower_bound_holds(seed in 0u64..500) {
            // E[sqrt(s_f)] >= 2 sqrt(W1), with the exact constant 2.
            let f = random_function(5, seed);
            let lhs = talagrand_boundary(&f, 0.5).unwrap();
            let rhs = 2.0 * level_one_weight(&f).sqrt();
            prop_assert!(lhs >= rhs - 1e-12);
        }

        #[test]
        fn poincare_holds(seed in 0u64..500) {
            let f = random_function(5, seed);
            prop_assert!(edge_boundary_measure(&f) >= f.variance() - 1e-12);
        }

        #[test]
        fn colored_sensitivities_are_dominated(seed in 0u64..200) {
            let f = random_function(4, seed);
            let mut rng = substream(seed, 1);
            let col = EdgeColoring::random(4, &mut rng);
            for x in 0..16u32 {
                let (r, b) = colored_sensitivities(&f, &col, x).unwrap();
                prop_assert!(r + b <= sensitivity(&f, x));
            }
        }

        #[test]
        fn total_influence_equals_mean_sensitivity(seed in 0u64..200) {
            let f = random_function(5, seed);
            let profile = sensitivity_profile(&f);
            prop_assert!((total_influence(&f) - profile.expectation()).abs() < 1e-12);
            prop_assert!(
                (edge_boundary_measure(&f) - 0.5 * profile.expectation()).abs() < 1e-12
            );
        }
    }
}
