//! Seeded generators for randomized suites.

use num_bigint::BigInt;
use num_rational::BigRational;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::Result;
use crate::field::Field;
use crate::groebner::IdealGens;
use crate::polyring::{Monomial, Polynomial, RingRef, VariableSet};
use crate::scroll::BarredMatrix;

pub const DEFAULT_SEED: u64 = 0x5eed_2008;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// A valid simple barred matrix with `2..=max_blocks` big blocks of widths
/// `1..=max_width`. Each block's lower-right corner is shared with the
/// upper-left corner of a later block with probability one half.
pub fn simple_barred_matrix(rng: &mut impl Rng, max_blocks: usize, max_width: usize) -> Result<BarredMatrix> {
    let r = rng.gen_range(2..=max_blocks.max(2));
    let widths: Vec<usize> = (0..r).map(|_| rng.gen_range(1..=max_width.max(1))).collect();
    // shared_from[i'] = i when block i' starts at block i's last entry
    let mut shared_from: Vec<Option<usize>> = vec![None; r];
    for i in 0..r - 1 {
        if rng.gen_bool(0.5) {
            let free: Vec<usize> = (i + 1..r).filter(|&k| shared_from[k].is_none()).collect();
            if let Some(&k) = free.choose(rng) {
                shared_from[k] = Some(i);
            }
        }
    }
    let mut next = 0usize;
    let mut blocks: Vec<Vec<usize>> = Vec::with_capacity(r);
    for (k, &c) in widths.iter().enumerate() {
        let mut entries = Vec::with_capacity(c + 1);
        match shared_from[k] {
            Some(i) => entries.push(*blocks[i].last().expect("earlier block")),
            None => {
                entries.push(next);
                next += 1;
            }
        }
        for _ in 0..c {
            entries.push(next);
            next += 1;
        }
        blocks.push(entries);
    }
    BarredMatrix::simple(VariableSet::indexed("X", next)?, blocks)
}

/// Up to `terms` terms of degree at most `max_degree`, with integer
/// coefficients in `-bound..=bound`.
pub fn polynomial<F: Field>(
    rng: &mut impl Rng,
    ring: &RingRef<F>,
    terms: usize,
    max_degree: u32,
    bound: i64,
) -> Result<Polynomial<F>> {
    let n = ring.nvars();
    let mut out = Vec::with_capacity(terms);
    for _ in 0..terms {
        let mut exps = vec![0u32; n];
        let deg = rng.gen_range(0..=max_degree);
        for _ in 0..deg {
            exps[rng.gen_range(0..n)] += 1;
        }
        let c = BigRational::from_integer(BigInt::from(rng.gen_range(-bound..=bound)));
        out.push((ring.field().from_rational(&c)?, Monomial::new(&exps)?));
    }
    Polynomial::from_terms(ring, out)
}

/// `Σ c_i g_i` with random cofactors `c_i`.
pub fn combination<F: Field>(rng: &mut impl Rng, ideal: &IdealGens<F>, max_degree: u32) -> Result<Polynomial<F>> {
    let ring = ideal.ring();
    let mut f = Polynomial::from_terms(ring, vec![])?;
    for g in ideal.gens() {
        if rng.gen_bool(0.5) {
            let c = polynomial(rng, ring, 3, max_degree, 5)?;
            f = f.try_add(&c.try_mul(g)?)?;
        }
    }
    Ok(f)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn random_matrices_are_valid_and_reproducible() {
        let mut a = rng(7);
        let mut b = rng(7);
        for _ in 0..200 {
            let m = simple_barred_matrix(&mut a, 4, 3).unwrap();
            assert!(m.validate().passed(), "{m}");
            assert_eq!(m, simple_barred_matrix(&mut b, 4, 3).unwrap());
        }
    }

    #[test]
    fn sharing_occurs() {
        let mut g = rng(1);
        let shared = (0..100)
            .map(|_| simple_barred_matrix(&mut g, 4, 3).unwrap())
            .filter(|m| m.ring().nvars() < m.widths().iter().map(|c| c + 1).sum())
            .count();
        assert!(shared > 10);
    }
}
