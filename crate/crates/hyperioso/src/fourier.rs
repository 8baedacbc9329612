//! The Walsh-Hadamard transform connecting point space and Fourier space.
//!
//! Coefficients are indexed by subset mask `S`; the character is
//! `chi_S(x) = (-1)^{|S & x|}`. The forward transform of a Boolean table
//! runs over integers (an unnormalized in-place butterfly, `O(n 2^n)`) and
//! divides by `2^n` only at the end, so every coefficient is an exact dyadic
//! rational `k / 2^n` and Parseval holds exactly.

use crate::error::Result;
use crate::function::{BooleanFunction, RealPointFunction};

/// In-place unnormalized butterfly: replaces `v[S]` with
/// `sum_x (-1)^{|S & x|} v[x]`. Self-inverse up to a factor of `2^n`.
fn butterfly<T>(v: &mut [T])
where
    T: Copy + std::ops::Add<Output = T> + std::ops::Sub<Output = T>,
{
    let len = v.len();
    let mut h = 1;
    while h < len {
        for chunk in v.chunks_exact_mut(2 * h) {
            let (lo, hi) = chunk.split_at_mut(h);
            for i in 0..h {
                let a = lo[i];
                let b = hi[i];
                lo[i] = a + b;
                hi[i] = a - b;
            }
        }
        h *= 2;
    }
}

/// Unnormalized integer transform of a Boolean table:
/// `y[S] = sum_x f(x) (-1)^{|S & x|}`, so `f_hat(S) = y[S] / 2^n`.
pub fn integer_transform(f: &BooleanFunction) -> Vec<i64> {
    let mut v: Vec<i64> = (0..f.len()).map(|x| f.value(x as u32) as i64).collect();
    butterfly(&mut v);
    v
}

/// The full Fourier spectrum of a function: `2^n` reals indexed by subset mask.
#[derive(Clone, Debug, PartialEq)]
pub struct FourierSpectrum {
    n: u32,
    coeffs: Vec<f64>,
}

impl FourierSpectrum {
    pub fn new(n: u32, coeffs: Vec<f64>) -> Result<Self> {
        // Reuse the point-function validation; same shape.
        let rp = RealPointFunction::new(n, coeffs)?;
        Ok(Self {
            n,
            coeffs: rp.values().to_vec(),
        })
    }

    #[inline]
    pub fn n(&self) -> u32 {
        self.n
    }

    #[inline]
    pub fn coeff(&self, s: u32) -> f64 {
        self.coeffs[s as usize]
    }

    #[inline]
    pub fn coeffs(&self) -> &[f64] {
        &self.coeffs
    }

    pub fn coeffs_mut(&mut self) -> &mut [f64] {
        &mut self.coeffs
    }

    /// `sum_S f_hat(S)^2 = E[f^2]` (Parseval).
    pub fn total_weight(&self) -> f64 {
        self.coeffs.iter().map(|c| c * c).sum()
    }

    /// Spectra serialize as a plain JSON array of doubles.
    pub fn to_json(&self) -> String {
        serde_json::to_string(&self.coeffs).expect("plain float array")
    }
}

/// Forward transform of a Boolean table on the exact integer path.
pub fn wht_forward(f: &BooleanFunction) -> FourierSpectrum {
    let ints = integer_transform(f);
    let scale = 1.0 / f.len() as f64;
    FourierSpectrum {
        n: f.n(),
        coeffs: ints.iter().map(|&y| y as f64 * scale).collect(),
    }
}

/// Forward transform of a real-valued table.
pub fn wht_forward_real(f: &RealPointFunction) -> FourierSpectrum {
    let mut v = f.values().to_vec();
    butterfly(&mut v);
    let scale = 1.0 / f.len() as f64;
    for c in &mut v {
        *c *= scale;
    }
    FourierSpectrum { n: f.n(), coeffs: v }
}

/// Inverse transform: `values(x) = sum_S f_hat(S) (-1)^{|S & x|}`.
///
/// Round-trips of Boolean inputs are bit-exact: all intermediate values are
/// dyadic rationals with numerators below 2^53 for every `n` within the cap.
pub fn wht_inverse(s: &FourierSpectrum) -> RealPointFunction {
    let mut v = s.coeffs.clone();
    butterfly(&mut v);
    RealPointFunction::new(s.n, v).expect("same shape as input spectrum")
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    /// Direct `O(4^n)` summation oracle, independent of the butterfly.
    fn direct_coefficient(f: &BooleanFunction, s: u32) -> f64 {
        let mut acc = 0i64;
        for x in 0..f.len() as u32 {
            let sign = if (s & x).count_ones() % 2 == 0 { 1 } else { -1 };
            acc += sign * f.value(x) as i64;
        }
        acc as f64 / f.len() as f64
    }

    fn maj3() -> BooleanFunction {
        BooleanFunction::from_fn(3, |x| x.count_ones() >= 2)
    }

    #[test]
    fn constant_zero_has_zero_spectrum() {
        let s = wht_forward(&BooleanFunction::constant(3, false));
        assert!(s.coeffs().iter().all(|&c| c == 0.0));
    }

    #[test]
    fn dictator_spectrum_by_direct_summation() {
        // Oracle: sum over the 2 points.
        let dict = BooleanFunction::from_fn(1, |x| x & 1 == 1);
        let s = wht_forward(&dict);
        assert_eq!(direct_coefficient(&dict, 0), 0.5);
        assert_eq!(direct_coefficient(&dict, 1), -0.5);
        assert_eq!(s.coeff(0), 0.5);
        assert_eq!(s.coeff(1), -0.5);
    }

    #[test]
    fn maj3_spectrum_matches_direct_summation() {
        let f = maj3();
        let s = wht_forward(&f);
        for mask in 0..8u32 {
            assert_eq!(s.coeff(mask), direct_coefficient(&f, mask));
        }
        // Values fixed by the oracle.
        assert_eq!(s.coeff(0), 0.5);
        for i in 0..3 {
            assert_eq!(s.coeff(1 << i), -0.25);
        }
        assert_eq!(s.coeff(0b011), 0.0);
        assert_eq!(s.coeff(0b101), 0.0);
        assert_eq!(s.coeff(0b110), 0.0);
        assert_eq!(s.coeff(0b111), 0.25);
        // Level weights forced by Parseval: 1/4, 3/16, 0, 1/16.
        let w1: f64 = (0..3).map(|i| s.coeff(1 << i).powi(2)).sum();
        assert_eq!(s.coeff(0).powi(2), 0.25);
        assert_eq!(w1, 3.0 / 16.0);
        assert_eq!(s.coeff(0b111).powi(2), 1.0 / 16.0);
    }

    #[test]
    fn parseval_is_exact_on_the_integer_path() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for n in 1..=10u32 {
            for _ in 0..20 {
                let f = BooleanFunction::from_fn(n, |_| rng.random::<bool>());
                // Integer identity: sum_S y_S^2 = 2^n * |f|.
                let ints = integer_transform(&f);
                let lhs: i64 = ints.iter().map(|y| y * y).sum();
                assert_eq!(lhs, (1i64 << n) * f.ones_count() as i64);
                // And in doubles, exactly.
                let s = wht_forward(&f);
                assert_eq!(s.total_weight(), f.mean());
                assert_eq!(s.coeff(0), f.mean());
            }
        }
    }

    #[test]
    fn inverse_of_point_mass_is_constant() {
        let mut coeffs = vec![0.0; 8];
        coeffs[0] = 1.0;
        let s = FourierSpectrum::new(3, coeffs).unwrap();
        let g = wht_inverse(&s);
        assert!(g.values().iter().all(|&v| v == 1.0));
    }

    #[test]
    fn roundtrip_is_bit_exact() {
        let mut rng = ChaCha8Rng::seed_from_u64(99);
        for n in 1..=10u32 {
            let f = BooleanFunction::from_fn(n, |_| rng.random::<bool>());
            let back = wht_inverse(&wht_forward(&f));
            for x in 0..f.len() as u32 {
                assert_eq!(back.get(x), f.value(x) as f64);
            }
            assert_eq!(back.round_to_boolean(0.0).unwrap(), f);
        }
    }

    #[test]
    fn spectrum_json_is_a_float_array() {
        let s = wht_forward(&BooleanFunction::from_fn(1, |x| x & 1 == 1));
        assert_eq!(s.to_json(), "[0.5,-0.5]");
    }
}
