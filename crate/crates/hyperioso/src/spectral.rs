//! Level weights, degree truncation, noise operators, noisy influences,
//! noise stability, and hypercontractivity checks.

use crate::error::{Error, Result};
use crate::fourier::{integer_transform, wht_forward, wht_inverse, FourierSpectrum};
use crate::function::{BooleanFunction, CoordSet, RealPointFunction};

/// Fourier mass per level: `w[d] = W_{=d}[f] = sum_{|S| = d} f_hat(S)^2`.
#[derive(Clone, Debug, PartialEq)]
pub struct LevelWeights {
    n: u32,
    w: Vec<f64>,
}

impl LevelWeights {
    #[inline]
    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn weights(&self) -> &[f64] {
        &self.w
    }

    /// `W_{=d}`; zero above the dimension.
    pub fn at(&self, d: u32) -> f64 {
        self.w.get(d as usize).copied().unwrap_or(0.0)
    }

    /// `W_{~d} = sum_{d <= j < 2d} W_{=j}`.
    pub fn approx(&self, d: u32) -> f64 {
        (d..2 * d).map(|j| self.at(j)).sum()
    }

    /// `W_{>= d}`; accepts `d > n` and returns 0 there.
    pub fn above(&self, d: u32) -> f64 {
        if d as usize >= self.w.len() {
            return 0.0;
        }
        self.w[d as usize..].iter().sum()
    }

    /// `W_{<= d}`.
    pub fn up_to(&self, d: u32) -> f64 {
        self.w[..=((d as usize).min(self.w.len() - 1))].iter().sum()
    }

    /// `sum_d W_{=d} = E[f^2]` (Parseval).
    pub fn total(&self) -> f64 {
        self.w.iter().sum()
    }
}

/// Level weights of a Boolean function on the exact integer path: each
/// bucket is an integer divided by `4^n`, so Parseval holds exactly.
pub fn level_weights(f: &BooleanFunction) -> LevelWeights {
    let ints = integer_transform(f);
    let mut numerators = vec![0u64; f.n() as usize + 1];
    for (s, &y) in ints.iter().enumerate() {
        numerators[(s as u32).count_ones() as usize] += (y * y) as u64;
    }
    let scale = 1.0 / (f.len() as f64 * f.len() as f64);
    LevelWeights {
        n: f.n(),
        w: numerators.iter().map(|&k| k as f64 * scale).collect(),
    }
}

/// Level weights of an arbitrary spectrum.
pub fn level_weights_of(s: &FourierSpectrum) -> LevelWeights {
    let mut w = vec![0.0; s.n() as usize + 1];
    for (mask, &c) in s.coeffs().iter().enumerate() {
        w[(mask as u32).count_ones() as usize] += c * c;
    }
    LevelWeights { n: s.n(), w }
}

pub fn weight_at(f: &BooleanFunction, d: u32) -> f64 {
    level_weights(f).at(d)
}

pub fn weight_approx(f: &BooleanFunction, d: u32) -> f64 {
    level_weights(f).approx(d)
}

pub fn weight_above(f: &BooleanFunction, d: u32) -> f64 {
    level_weights(f).above(d)
}

/// `f^{<= d} = sum_{|S| <= d} f_hat(S) chi_S`, evaluated back in point space.
pub fn truncate(f: &BooleanFunction, d: u32) -> RealPointFunction {
    let mut s = wht_forward(f);
    truncate_spectrum_in_place(&mut s, d);
    wht_inverse(&s)
}

fn truncate_spectrum_in_place(s: &mut FourierSpectrum, d: u32) {
    for (mask, c) in s.coeffs_mut().iter_mut().enumerate() {
        if (mask as u32).count_ones() > d {
            *c = 0.0;
        }
    }
}

/// Per-coordinate retention parameters for a product noise operator: the
/// multiplier of `f_hat(S)` is `prod_{i in S} rho_i`.
#[derive(Clone, Debug, PartialEq)]
pub struct NoiseVector {
    rho: Vec<f64>,
}

impl NoiseVector {
    pub fn new(rho: Vec<f64>) -> Result<Self> {
        for &r in &rho {
            if !(0.0..=1.0).contains(&r) {
                return Err(Error::Config(format!(
                    "noise retention parameter {r} outside [0, 1]"
                )));
            }
        }
        Ok(Self { rho })
    }

    pub fn uniform(n: u32, rho: f64) -> Result<Self> {
        Self::new(vec![rho; n as usize])
    }

    /// Two-block operator: retention `rho_in` on coordinates of `set`,
    /// `rho_out` outside it.
    pub fn two_block(n: u32, set: CoordSet, rho_in: f64, rho_out: f64) -> Result<Self> {
        Self::new(
            (0..n)
                .map(|i| if set >> i & 1 == 1 { rho_in } else { rho_out })
                .collect(),
        )
    }

    #[inline]
    pub fn n(&self) -> u32 {
        self.rho.len() as u32
    }

    pub fn rho(&self) -> &[f64] {
        &self.rho
    }

    /// `prod_{i in S} rho_i`, the Fourier multiplier on subset `S`.
    pub fn multiplier(&self, s: CoordSet) -> f64 {
        let mut m = 1.0;
        let mut rest = s;
        while rest != 0 {
            let i = rest.trailing_zeros();
            m *= self.rho[i as usize];
            rest &= rest - 1;
        }
        m
    }
}

/// Applies the product noise operator to a spectrum in place.
pub fn apply_noise_spectrum(s: &mut FourierSpectrum, rho: &NoiseVector) -> Result<()> {
    if s.n() != rho.n() {
        return Err(Error::Dimension {
            expected: s.n(),
            actual: rho.n(),
        });
    }
    for (mask, c) in s.coeffs_mut().iter_mut().enumerate() {
        *c *= rho.multiplier(mask as u32);
    }
    Ok(())
}

/// `T f` for a per-coordinate noise vector, implemented in Fourier space.
pub fn noise_operator(f: &BooleanFunction, rho: &NoiseVector) -> Result<RealPointFunction> {
    let mut s = wht_forward(f);
    apply_noise_spectrum(&mut s, rho)?;
    Ok(wht_inverse(&s))
}

/// `T_rho f` with one scalar retention parameter.
pub fn noise_operator_scalar(f: &BooleanFunction, rho: f64) -> Result<RealPointFunction> {
    noise_operator(f, &NoiseVector::uniform(f.n(), rho)?)
}

/// Product noise applied to a real-valued table.
pub fn noise_operator_real(
    g: &RealPointFunction,
    rho: &NoiseVector,
) -> Result<RealPointFunction> {
    let mut s = crate::fourier::wht_forward_real(g);
    apply_noise_spectrum(&mut s, rho)?;
    Ok(wht_inverse(&s))
}

/// `Stab_{1-eps}(f) = <f, T_{1-eps} f> = sum_S (1-eps)^{|S|} f_hat(S)^2`.
///
/// For 0/1-valued `f` this is not `1 - Pr[f(x) != f(y)]` over correlated
/// pairs; that disagreement probability is [`noise_mismatch`]. Both are
/// exposed, and the noise-stability bound checks use the mismatch.
pub fn noise_stability(f: &BooleanFunction, eps: f64) -> Result<f64> {
    if !(0.0..=1.0).contains(&eps) {
        return Err(Error::Config(format!("noise rate {eps} outside [0, 1]")));
    }
    let w = level_weights(f);
    Ok((0..=f.n())
        .map(|d| (1.0 - eps).powi(d as i32) * w.at(d))
        .sum())
}

/// `Pr[f(x) != f(y)]` over `(1-eps)`-correlated pairs:
/// `2 sum_k (1 - (1-eps)^k) W_{=k}[f]`.
pub fn noise_mismatch(f: &BooleanFunction, eps: f64) -> Result<f64> {
    if !(0.0..=1.0).contains(&eps) {
        return Err(Error::Config(format!("noise rate {eps} outside [0, 1]")));
    }
    let w = level_weights(f);
    Ok((1..=f.n())
        .map(|d| 2.0 * (1.0 - (1.0 - eps).powi(d as i32)) * w.at(d))
        .sum())
}

/// `I_i^{(rho)}[f] = I_i[T_rho f] = E[(T_rho f(x) - T_rho f(x + e_i))^2]
/// = 4 sum_{S contains i} rho^{2|S|} f_hat(S)^2`.
///
/// The factor 4 is inherited from the `{-1, 0, 1}`-valued derivative of a
/// 0/1-valued function, so `I_i^{(1)}[f] = I_i[f]` exactly. (The convention
/// summing bare squared coefficients over `S` containing `i` is that value
/// divided by 4.)
pub fn noisy_influence(f: &BooleanFunction, i: u32, rho: f64) -> Result<f64> {
    if i >= f.n() {
        return Err(Error::Config(format!(
            "coordinate {i} out of range for n = {}",
            f.n()
        )));
    }
    Ok(noisy_influences(f, rho)?[i as usize])
}

/// All `n` noisy influences in one spectrum scan.
pub fn noisy_influences(f: &BooleanFunction, rho: f64) -> Result<Vec<f64>> {
    if !(0.0..=1.0).contains(&rho) {
        return Err(Error::Config(format!("noise rate {rho} outside [0, 1]")));
    }
    let s = wht_forward(f);
    let rho_sq = rho * rho;
    let mut powers = vec![0.0; f.n() as usize + 1];
    powers[0] = 1.0;
    for d in 1..powers.len() {
        powers[d] = powers[d - 1] * rho_sq;
    }
    let mut acc = vec![0.0f64; f.n() as usize];
    for (mask, &c) in s.coeffs().iter().enumerate() {
        if c == 0.0 {
            continue;
        }
        let weight = 4.0 * powers[(mask as u32).count_ones() as usize] * c * c;
        let mut rest = mask as u32;
        while rest != 0 {
            let i = rest.trailing_zeros();
            acc[i as usize] += weight;
            rest &= rest - 1;
        }
    }
    Ok(acc)
}

/// `(||f^{<= d}||_4, sqrt(3)^d ||f^{<= d}||_2)`. The degree-`d`
/// hypercontractive inequality says the first never exceeds the second.
pub fn hypercontractivity_gap(f: &BooleanFunction, d: u32) -> (f64, f64) {
    // lhs in point space, rhs off the spectrum: two independent routes.
    let truncated = truncate(f, d);
    let lhs = truncated.lp_norm(4.0).expect("p = 4");
    let w = level_weights(f);
    let l2 = w.up_to(d).sqrt();
    let rhs = 3f64.sqrt().powi(d as i32) * l2;
    (lhs, rhs)
}

/// Dyadic-band partition of the Fourier mass lying outside a coordinate set.
///
/// Band `k` (1-based) collects `|S & complement|` in `[2^{k-1}, 2^k)`; the
/// half-open bands partition, so `w_bands` + `eps_bands` sum exactly to the
/// mass on subsets not contained in `set`. `w_bands` covers `|S| <= d`,
/// `eps_bands` covers `|S| > d`.
#[derive(Clone, Debug, PartialEq)]
pub struct ProofWeights {
    pub w_bands: Vec<f64>,
    pub eps_bands: Vec<f64>,
}

impl ProofWeights {
    pub fn outside_mass(&self) -> f64 {
        self.w_bands.iter().sum::<f64>() + self.eps_bands.iter().sum::<f64>()
    }

    pub fn w_sum(&self) -> f64 {
        self.w_bands.iter().sum()
    }
}

/// Number of half-open dyadic bands needed to cover `[1, top]`.
pub fn band_count(top: u32) -> usize {
    if top == 0 {
        0
    } else {
        top.ilog2() as usize + 1
    }
}

/// Exact band partition `W_{k,d}` / `eps_{l,d}` of the spectrum of `f`
/// relative to the set `j_set`, with degree threshold `d`.
pub fn proof_weights(f: &BooleanFunction, j_set: CoordSet, d: u32) -> ProofWeights {
    proof_weights_of(&wht_forward(f), j_set, d)
}

pub fn proof_weights_of(s: &FourierSpectrum, j_set: CoordSet, d: u32) -> ProofWeights {
    let n = s.n();
    let outside = crate::geometry::complement(j_set, n);
    let mut w_bands = vec![0.0; band_count(d.min(n))];
    let mut eps_bands = vec![0.0; band_count(n)];
    for (mask, &c) in s.coeffs().iter().enumerate() {
        if c == 0.0 {
            continue;
        }
        let mask = mask as u32;
        let t = (mask & outside).count_ones();
        if t == 0 {
            continue;
        }
        let band = t.ilog2() as usize; // band index k-1 covers [2^{k-1}, 2^k)
        if mask.count_ones() <= d {
            w_bands[band] += c * c;
        } else {
            eps_bands[band] += c * c;
        }
    }
    ProofWeights { w_bands, eps_bands }
}
