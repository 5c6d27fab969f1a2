//! Closed-form distributions for the classical weights the block weight reduces to.
//!
//! Each function checks that the space really has the required shape and returns
//! `counts[r]` for `r = 0..=n·M_w`, the same layout as
//! [`WeightDistribution::counts`](super::WeightDistribution::counts).

use num_bigint::BigUint;
use num_traits::{One, Zero};

use crate::blockspace::BlockSpace;
use crate::error::{Error, Result};
use crate::poset::IdealIndex;

fn require_hamming(space: &BlockSpace) -> Result<()> {
    if space.max_weight() == 1 {
        Ok(())
    } else {
        Err(Error::precondition(
            "this formula needs the Hamming weight (M_w = 1)",
        ))
    }
}

fn require_unit(space: &BlockSpace) -> Result<()> {
    if space.label_map().is_unit() {
        Ok(())
    } else {
        Err(Error::precondition(
            "this formula needs every block of size 1",
        ))
    }
}

fn require_index(space: &BlockSpace, idx: &IdealIndex) -> Result<()> {
    if idx.n() == space.n() {
        Ok(())
    } else {
        Err(Error::domain("ideal index was built for a different poset"))
    }
}

/// `(P, π)`-weight distribution:
/// `|A_r| = Σ_j Σ_{I ∈ 𝓘_j^r} ∏_{i ∈ Max I} (m^{k_i} - 1) · m^{Σ_{i ∈ I \ Max I} k_i}`.
pub fn ppi_counts(space: &BlockSpace, idx: &IdealIndex) -> Result<Vec<BigUint>> {
    require_hamming(space)?;
    require_index(space, idx)?;
    let m = BigUint::from(space.modulus());
    let pi = space.label_map();
    let mut counts = vec![BigUint::zero(); space.n() + 1];
    counts[0] = BigUint::one();
    for ((i, _), ideals) in idx.groups() {
        for ideal in ideals {
            let at_maxima = ideal.maximals().iter().fold(BigUint::one(), |acc, l| {
                acc * (m.pow(pi.size(l) as u32) - 1u32)
            });
            counts[i] += at_maxima * m.pow(pi.sum_sizes(ideal.non_maximals()) as u32);
        }
    }
    Ok(counts)
}

/// π-weight distribution on an antichain: the coefficients of `∏_i (1 + (m^{k_i} - 1) z)`.
/// With equal blocks this is `C(n, r) (m^k - 1)^r`.
pub fn pi_counts(space: &BlockSpace) -> Result<Vec<BigUint>> {
    require_hamming(space)?;
    if space.poset().maximal_elements().len() != space.n() {
        return Err(Error::precondition(
            "the π-weight formula needs an antichain",
        ));
    }
    let m = BigUint::from(space.modulus());
    let mut counts = vec![BigUint::zero(); space.n() + 1];
    counts[0] = BigUint::one();
    for (done, &k) in space.label_map().block_sizes().iter().enumerate() {
        let nonzero = m.pow(k as u32) - 1u32;
        for r in (1..=done + 1).rev() {
            let shifted = &counts[r - 1] * &nonzero;
            counts[r] += shifted;
        }
    }
    Ok(counts)
}

/// `P`-weight distribution for unit blocks: `|A_r| = Σ_j |𝓘_j^r| (q - 1)^j q^{r - j}`.
pub fn p_counts(space: &BlockSpace, idx: &IdealIndex) -> Result<Vec<BigUint>> {
    require_hamming(space)?;
    require_unit(space)?;
    require_index(space, idx)?;
    let q = BigUint::from(space.modulus());
    let mut counts = vec![BigUint::zero(); space.n() + 1];
    counts[0] = BigUint::one();
    for ((i, j), ideals) in idx.groups() {
        let per_ideal = (&q - 1u32).pow(j as u32) * q.pow((i - j) as u32);
        counts[i] += per_ideal * BigUint::from(ideals.len());
    }
    Ok(counts)
}

/// `(P, w)`-weight distribution on a chain with unit blocks:
/// `|A_r| = |D_r|` for `r <= M_w` and `|A_{t M_w + s}| = q^t |D_s|` for `1 <= s <= M_w`.
pub fn pw_chain_counts(space: &BlockSpace) -> Result<Vec<BigUint>> {
    require_unit(space)?;
    if !space.poset().is_chain() {
        return Err(Error::precondition("this formula needs a chain"));
    }
    let w = space.weight_function();
    let mw = w.max_weight();
    let q = BigUint::from(space.modulus());
    let mut counts = vec![BigUint::one()];
    for r in 1..=space.max_total_weight() {
        let t = (r - 1) / mw;
        let s = r - t * mw;
        counts.push(q.pow(t) * BigUint::from(w.class_size(s)));
    }
    Ok(counts)
}

/// Number of top-weight vectors (`r = n·M_w`) when every block has size `k` and the poset
/// has `t` maximal elements: `(m^k - (m - |D_{M_w}|)^k)^t · m^{k(n - t)}`.
pub fn top_weight_count(space: &BlockSpace) -> Result<BigUint> {
    let k = space
        .label_map()
        .uniform_size()
        .ok_or_else(|| Error::precondition("the top-weight formula needs equal block sizes"))?
        as u32;
    let w = space.weight_function();
    let m = u64::from(space.modulus());
    let below_top = m - w.class_size(w.max_weight());
    let t = space.poset().maximal_elements().len() as u32;
    let n = space.n() as u32;
    let mb = BigUint::from(m);
    let per_maximal = mb.pow(k) - BigUint::from(below_top).pow(k);
    Ok(per_maximal.pow(t) * mb.pow(k * (n - t)))
}
