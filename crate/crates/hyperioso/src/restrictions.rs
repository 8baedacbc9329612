//! Restriction construction, random-restriction sampling, and the exact
//! closed form for the expected level-1 weight of a random restriction.

use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::fourier::wht_forward;
use crate::function::{full_set, BooleanFunction, CoordSet};
use crate::geometry::sensitivity;
use crate::rng::substream;
use crate::spectral::{level_weights, noisy_influences};

/// A partial assignment: coordinates in `fixed` are pinned to the bits of
/// `assignment`; the rest stay alive. The restricted function lives on the
/// alive coordinates, re-indexed densely in increasing original order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Restriction {
    n: u32,
    fixed: CoordSet,
    assignment: u32,
}

#[derive(Serialize, Deserialize)]
struct RestrictionJson {
    fixed: Vec<u32>,
    z: String,
}

impl Restriction {
    /// `assignment` must be supported on `fixed`.
    pub fn new(n: u32, fixed: CoordSet, assignment: u32) -> Result<Self> {
        if fixed & !full_set(n) != 0 {
            return Err(Error::Restriction(format!(
                "fixed set {fixed:#b} has coordinates beyond n = {n}"
            )));
        }
        if assignment & !fixed != 0 {
            return Err(Error::Restriction(
                "assignment sets bits outside the fixed coordinate set".into(),
            ));
        }
        Ok(Self {
            n,
            fixed,
            assignment,
        })
    }

    pub fn identity(n: u32) -> Self {
        Self {
            n,
            fixed: 0,
            assignment: 0,
        }
    }

    #[inline]
    pub fn n(&self) -> u32 {
        self.n
    }

    #[inline]
    pub fn fixed(&self) -> CoordSet {
        self.fixed
    }

    #[inline]
    pub fn assignment(&self) -> u32 {
        self.assignment
    }

    #[inline]
    pub fn alive(&self) -> CoordSet {
        !self.fixed & full_set(self.n)
    }

    /// Dimension of the restricted function.
    pub fn restricted_n(&self) -> u32 {
        self.n - self.fixed.count_ones()
    }

    /// The index map: restricted coordinate `j` is original coordinate
    /// `alive_coords()[j]`.
    pub fn alive_coords(&self) -> Vec<u32> {
        crate::function::coords_of(self.alive())
    }

    /// Spreads a point of the restricted cube onto the original cube,
    /// filling fixed coordinates from the assignment.
    pub fn lift_point(&self, y: u32) -> u32 {
        let mut x = self.assignment;
        let mut bit = 0;
        for i in 0..self.n {
            if self.fixed >> i & 1 == 0 {
                x |= (y >> bit & 1) << i;
                bit += 1;
            }
        }
        x
    }

    /// Merges an inner restriction (expressed on this restriction's alive
    /// coordinates) into a single restriction on the original cube.
    pub fn compose(&self, inner: &Restriction) -> Result<Restriction> {
        if inner.n() != self.restricted_n() {
            return Err(Error::Dimension {
                expected: self.restricted_n(),
                actual: inner.n(),
            });
        }
        let map = self.alive_coords();
        let mut fixed = self.fixed;
        let mut assignment = self.assignment;
        for (j, &orig) in map.iter().enumerate() {
            if inner.fixed >> j & 1 == 1 {
                fixed |= 1 << orig;
                assignment |= (inner.assignment >> j & 1) << orig;
            }
        }
        Restriction::new(self.n, fixed, assignment)
    }

    /// JSON form `{"fixed": [coords], "z": "<bits>"}`; `z` character `j`
    /// is the value assigned to `fixed[j]`.
    pub fn to_json(&self) -> String {
        let fixed = crate::function::coords_of(self.fixed);
        let z: String = fixed
            .iter()
            .map(|&i| if self.assignment >> i & 1 == 1 { '1' } else { '0' })
            .collect();
        serde_json::to_string(&RestrictionJson { fixed, z }).expect("plain struct")
    }

    pub fn from_json(n: u32, s: &str) -> Result<Self> {
        let parsed: RestrictionJson =
            serde_json::from_str(s).map_err(|e| Error::Parse(e.to_string()))?;
        if parsed.z.len() != parsed.fixed.len() {
            return Err(Error::Restriction(format!(
                "assignment string has {} bits for {} fixed coordinates",
                parsed.z.len(),
                parsed.fixed.len()
            )));
        }
        let mut fixed = 0u32;
        let mut assignment = 0u32;
        for (i, c) in parsed.fixed.iter().zip(parsed.z.chars()) {
            if *i >= n {
                return Err(Error::Restriction(format!(
                    "fixed coordinate {i} beyond n = {n}"
                )));
            }
            fixed |= 1 << i;
            match c {
                '1' => assignment |= 1 << i,
                '0' => {}
                other => {
                    return Err(Error::Parse(format!(
                        "assignment bit must be 0 or 1, got {other:?}"
                    )))
                }
            }
        }
        Restriction::new(n, fixed, assignment)
    }
}

/// `f` restricted according to `(fixed, z)`, as a function on the alive
/// coordinates.
pub fn restrict(f: &BooleanFunction, r: &Restriction) -> Result<BooleanFunction> {
    if r.n() != f.n() {
        return Err(Error::Dimension {
            expected: f.n(),
            actual: r.n(),
        });
    }
    let m = r.restricted_n();
    Ok(BooleanFunction::from_fn(m, |y| f.get(r.lift_point(y))))
}

/// A random restriction: each coordinate stays alive independently with
/// probability `p_alive`; fixed coordinates get uniform values. Deterministic
/// given the seed (stream 0).
pub fn sample_restriction(n: u32, p_alive: f64, seed: u64) -> Result<Restriction> {
    if !(0.0..=1.0).contains(&p_alive) {
        return Err(Error::Config(format!(
            "alive probability {p_alive} outside [0, 1]"
        )));
    }
    let mut rng = substream(seed, 0);
    Ok(sample_restriction_with(n, p_alive, &mut rng))
}

/// As [`sample_restriction`], drawing from a caller-provided generator.
pub fn sample_restriction_with(n: u32, p_alive: f64, rng: &mut impl Rng) -> Restriction {
    let mut fixed = 0u32;
    let mut assignment = 0u32;
    for i in 0..n {
        if rng.random::<f64>() >= p_alive {
            fixed |= 1 << i;
            if rng.random::<bool>() {
                assignment |= 1 << i;
            }
        }
    }
    Restriction {
        n,
        fixed,
        assignment,
    }
}

/// Closed-form `E[W_{=1}[f restricted]]` under alive-probability `1/d`:
/// `sum_T f_hat(T)^2 |T| (1/d) (1 - 1/d)^{|T| - 1}`.
pub fn expected_level1_exact(f: &BooleanFunction, d: u32) -> Result<f64> {
    if d < 1 {
        return Err(Error::Config("restriction parameter d must be >= 1".into()));
    }
    let w = level_weights(f);
    let p = 1.0 / d as f64;
    Ok((1..=f.n())
        .map(|t| w.at(t) * t as f64 * p * (1.0 - p).powi(t as i32 - 1))
        .sum())
}

/// The same expectation through a second algebraic route, via noisy
/// influences: `sum_i I_i^{(sqrt(1 - 1/d))}[f] / (4 d (1 - 1/d))`.
/// Requires `d >= 2`.
pub fn expected_level1_via_influences(f: &BooleanFunction, d: u32) -> Result<f64> {
    if d < 2 {
        return Err(Error::Config(
            "influence route needs d >= 2 (no noise at d = 1)".into(),
        ));
    }
    let q = 1.0 - 1.0 / d as f64;
    let total: f64 = noisy_influences(f, q.sqrt())?.iter().sum();
    Ok(total / (4.0 * d as f64 * q))
}

/// Brute-force oracle: enumerates every alive set with its product
/// probability and every assignment to the fixed coordinates. Feasible for
/// small `n` only.
pub fn expected_level1_enumeration(f: &BooleanFunction, d: u32) -> Result<f64> {
    let n = f.n();
    if n > 12 {
        return Err(Error::Budget(format!(
            "restriction enumeration over 3^{n} cases is out of budget"
        )));
    }
    let p_alive = 1.0 / d as f64;
    let mut acc = 0.0;
    for alive in 0..(1u32 << n) {
        let fixed = !alive & full_set(n);
        let k = alive.count_ones();
        let prob = p_alive.powi(k as i32) * (1.0 - p_alive).powi((n - k) as i32);
        if prob == 0.0 {
            continue;
        }
        let fixed_coords = crate::function::coords_of(fixed);
        let mut z_sum = 0.0;
        let assignments = 1u32 << fixed_coords.len();
        for zb in 0..assignments {
            let mut assignment = 0u32;
            for (j, &i) in fixed_coords.iter().enumerate() {
                assignment |= (zb >> j & 1) << i;
            }
            let r = Restriction::new(n, fixed, assignment)?;
            let g = restrict(f, &r)?;
            let w1: f64 = if g.n() == 0 {
                0.0
            } else {
                let s = wht_forward(&g);
                (0..g.n()).map(|i| s.coeff(1 << i).powi(2)).sum()
            };
            z_sum += w1;
        }
        acc += prob * z_sum / assignments as f64;
    }
    Ok(acc)
}

/// Monte-Carlo estimate of the same expectation; sample `i` draws from
/// substream `i` of the seed, so the estimate is reproducible and
/// independent of evaluation order. Returns `(estimate, standard error)`.
pub fn expected_level1_mc(
    f: &BooleanFunction,
    d: u32,
    samples: u64,
    seed: u64,
) -> Result<(f64, f64)> {
    if samples < 1 {
        return Err(Error::Config("need at least one sample".into()));
    }
    if d < 1 {
        return Err(Error::Config("restriction parameter d must be >= 1".into()));
    }
    let p_alive = 1.0 / d as f64;
    let mut sum = 0.0;
    let mut sum_sq = 0.0;
    for idx in 0..samples {
        let mut rng = substream(seed, idx);
        let r = sample_restriction_with(f.n(), p_alive, &mut rng);
        let g = restrict(f, &r)?;
        let w1: f64 = if g.n() == 0 {
            0.0
        } else {
            let s = wht_forward(&g);
            (0..g.n()).map(|i| s.coeff(1 << i).powi(2)).sum()
        };
        sum += w1;
        sum_sq += w1 * w1;
    }
    let mean = sum / samples as f64;
    let var = (sum_sq / samples as f64 - mean * mean).max(0.0);
    let stderr = (var / samples as f64).sqrt();
    Ok((mean, stderr))
}

/// `E_J[s of (f restricted outside J, evaluated at x)]` where each
/// coordinate joins `J` independently with probability `1/d`: enumerated
/// exactly over all alive sets. Equals `s_f(x) / d` identically, which is
/// the gradient-contraction step behind the level-`d` lower bounds.
pub fn restricted_sensitivity_mean(f: &BooleanFunction, x: u32, d: u32) -> Result<f64> {
    let n = f.n();
    if n > 12 {
        return Err(Error::Budget(format!(
            "sensitivity enumeration over 2^{n} alive sets is out of budget"
        )));
    }
    let p_alive = 1.0 / d as f64;
    let mut acc = 0.0;
    for alive in 0..(1u32 << n) {
        let k = alive.count_ones();
        let prob = p_alive.powi(k as i32) * (1.0 - p_alive).powi((n - k) as i32);
        if prob == 0.0 {
            continue;
        }
        // Fix everything outside `alive` to x's own bits; count alive
        // coordinates still sensitive at the surviving point.
        let fx = f.get(x);
        let mut s = 0u32;
        for i in 0..n {
            if alive >> i & 1 == 1 && f.get(x ^ (1 << i)) != fx {
                s += 1;
            }
        }
        acc += prob * s as f64;
    }
    Ok(acc)
}

/// Convenience wrapper asserting the contraction identity at one point.
pub fn gradient_contraction_gap(f: &BooleanFunction, x: u32, d: u32) -> Result<f64> {
    let lhs = restricted_sensitivity_mean(f, x, d)?;
    let rhs = sensitivity(f, x) as f64 / d as f64;
    Ok((lhs - rhs).abs())
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;
    use rand::Rng;

    fn parity(n: u32) -> BooleanFunction {
        BooleanFunction::from_fn(n, |x| x.count_ones() % 2 == 1)
    }

    fn and2() -> BooleanFunction {
        BooleanFunction::from_fn(2, |x| x == 3)
    }

    fn maj3() -> BooleanFunction {
        BooleanFunction::from_fn(3, |x| x.count_ones() >= 2)
    }

    fn random_function(n: u32, seed: u64) -> BooleanFunction {
        let mut rng = substream(seed, 0);
        BooleanFunction::from_fn(n, |_| rng.random::<bool>())
    }

    #[test]
    fn restrict_known_tables() {
        // Identity restriction.
        let f = random_function(4, 1);
        assert_eq!(restrict(&f, &Restriction::identity(4)).unwrap(), f);

        // Parity with coordinate 1 pinned to 0 is the 1-bit parity x_0.
        let r = Restriction::new(2, 0b10, 0).unwrap();
        let g = restrict(&parity(2), &r).unwrap();
        assert_eq!(g.n(), 1);
        assert_eq!((g.value(0), g.value(1)), (0, 1));

        // AND_2: pinning coordinate 1 to 1 leaves the dictator x_0, to 0 the
        // constant 0.
        let g = restrict(&and2(), &Restriction::new(2, 0b10, 0b10).unwrap()).unwrap();
        assert_eq!((g.value(0), g.value(1)), (0, 1));
        let g = restrict(&and2(), &Restriction::new(2, 0b10, 0).unwrap()).unwrap();
        assert_eq!((g.value(0), g.value(1)), (0, 0));
    }

    #[test]
    fn restriction_validation_and_json() {
        assert!(Restriction::new(2, 0b01, 0b10).is_err());
        assert!(Restriction::new(2, 0b100, 0).is_err());

        let r = Restriction::new(4, 0b1010, 0b1000).unwrap();
        let json = r.to_json();
        assert_eq!(json, r#"{"fixed":[1,3],"z":"01"}"#);
        assert_eq!(Restriction::from_json(4, &json).unwrap(), r);
        assert_eq!(r.alive_coords(), vec![0, 2]);
        assert_eq!(r.restricted_n(), 2);
    }

    #[test]
    fn sampling_extremes_and_determinism() {
        let r = sample_restriction(6, 1.0, 5).unwrap();
        assert_eq!(r.fixed(), 0);
        let r = sample_restriction(6, 0.0, 5).unwrap();
        assert_eq!(r.fixed(), full_set(6));
        assert_eq!(
            sample_restriction(6, 0.3, 9).unwrap(),
            sample_restriction(6, 0.3, 9).unwrap()
        );
    }

    #[test]
    fn alive_counts_follow_binomial_statistics() {
        // n = 20, p_alive = 1/4, 1e5 samples: mean within 4 binomial sigma.
        let n = 20u32;
        let samples = 100_000u64;
        let mut total = 0u64;
        for idx in 0..samples {
            let mut rng = substream(77, idx);
            let r = sample_restriction_with(n, 0.25, &mut rng);
            total += r.alive().count_ones() as u64;
        }
        let mean = total as f64 / samples as f64;
        let sigma = (20.0 * 0.25 * 0.75 / samples as f64).sqrt();
        assert!((mean - 5.0).abs() <= 4.0 * sigma, "mean {mean}");
    }

    #[test]
    fn expected_level1_on_known_functions() {
        // Parity n = 2, d = 2: enumeration gives (1/4)(0 + 1/4 + 1/4 + 0).
        let exact = expected_level1_exact(&parity(2), 2).unwrap();
        assert!((exact - 0.125).abs() < 1e-15);

        // Dictator, d = 1: everything alive almost surely, so W1 = 1/4.
        let dict = BooleanFunction::from_fn(1, |x| x & 1 == 1);
        assert!((expected_level1_exact(&dict, 1).unwrap() - 0.25).abs() < 1e-15);
    }

    #[test]
    fn expected_level1_routes_agree() {
        for (f, name) in [
            (maj3(), "maj3"),
            (parity(3), "parity"),
            (random_function(4, 8), "random4"),
        ] {
            for d in [2u32, 3] {
                let exact = expected_level1_exact(&f, d).unwrap();
                let enumerated = expected_level1_enumeration(&f, d).unwrap();
                let via_infl = expected_level1_via_influences(&f, d).unwrap();
                assert!(
                    (exact - enumerated).abs() < 1e-12,
                    "{name} d = {d}: {exact} vs {enumerated}"
                );
                assert!(
                    (exact - via_infl).abs() < 1e-12,
                    "{name} d = {d}: {exact} vs {via_infl}"
                );
            }
        }
    }

    #[test]
    fn expected_level1_monte_carlo_is_consistent() {
        let (est, stderr) = expected_level1_mc(&parity(2), 2, 20_000, 42).unwrap();
        assert!((est - 0.125).abs() <= 4.0 * stderr.max(1e-9), "{est} +- {stderr}");

        let c = BooleanFunction::constant(3, true);
        let (est, _) = expected_level1_mc(&c, 2, 100, 1).unwrap();
        assert_eq!(est, 0.0);

        let exact = expected_level1_exact(&maj3(), 2).unwrap();
        let (est, stderr) = expected_level1_mc(&maj3(), 2, 20_000, 7).unwrap();
        assert!((est - exact).abs() <= 4.0 * stderr, "{est} vs {exact}");
    }

    #[test]
    fn contraction_identity_pointwise() {
        for f in [maj3(), parity(3), random_function(3, 12)] {
            for d in [2u32, 3] {
                for x in 0..8u32 {
                    assert!(gradient_contraction_gap(&f, x, d).unwrap() < 1e-12);
                }
            }
        }
    }

    proptest! {
        #[test]
        fn composition_matches_single_restriction(
            seed in 0u64..200,
            outer_fixed in 0u32..16,
            inner_bits in 0u32..256,
        ) {
            let f = random_function(4, seed);
            let mut rng = substream(seed, 3);
            let outer_assign = outer_fixed & rng.random::<u32>();
            let outer = Restriction::new(4, outer_fixed, outer_assign).unwrap();
            let m = outer.restricted_n();
            let inner_fixed = inner_bits & full_set(m);
            let inner_assign = inner_fixed & (inner_bits >> 4) & full_set(m);
            let inner = Restriction::new(m, inner_fixed, inner_assign).unwrap();

            let two_step = restrict(&restrict(&f, &outer).unwrap(), &inner).unwrap();
            let merged = outer.compose(&inner).unwrap();
            let one_step = restrict(&f, &merged).unwrap();
            prop_assert_eq!(two_step, one_step);
        }
    }
}
