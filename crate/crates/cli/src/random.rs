//! Seeded random data for identity and invariance checks.

use rand::Rng;
use rand_chacha::ChaCha8Rng;
use tririgid_core::exactalg::{rat, Rational};
use tririgid_core::trinomial::{validate, TrinomialDatum};

pub use rand::SeedableRng;

pub type SweepRng = ChaCha8Rng;

pub fn rng(seed: u64) -> SweepRng {
    ChaCha8Rng::seed_from_u64(seed)
}

fn entry<R: Rng>(rng: &mut R) -> Rational {
    rat(rng.gen_range(-9..=9))
}

/// A `2 x cols` matrix with entries in `[-9, 9]` and pairwise independent
/// columns, by rejection.
pub fn random_matrix<R: Rng>(rng: &mut R, cols: usize) -> [Vec<Rational>; 2] {
    loop {
        let rows = [
            (0..cols).map(|_| entry(rng)).collect::<Vec<_>>(),
            (0..cols).map(|_| entry(rng)).collect::<Vec<_>>(),
        ];
        let independent = (0..cols)
            .all(|i| (i + 1..cols).all(|j| &rows[0][i] * &rows[1][j] != &rows[0][j] * &rows[1][i]));
        if independent {
            return rows;
        }
    }
}

/// Distinct constants in `[-9, 9]`.
pub fn random_constants<R: Rng>(rng: &mut R, count: usize) -> Vec<Rational> {
    let mut out: Vec<Rational> = Vec::with_capacity(count);
    while out.len() < count {
        let a = entry(rng);
        if !out.contains(&a) {
            out.push(a);
        }
    }
    out
}

#[derive(Clone, Copy, Debug)]
pub struct DatumBounds {
    pub max_r: usize,
    pub max_n: usize,
    pub max_l: u32,
    pub max_m: usize,
}

/// A valid datum of either type with `2 <= r <= max_r`.
pub fn random_datum<R: Rng>(rng: &mut R, b: DatumBounds) -> TrinomialDatum {
    let type2 = rng.gen_bool(0.5);
    let r = rng.gen_range(2..=b.max_r.max(2));
    let m = rng.gen_range(0..=b.max_m);
    let tuples = if type2 { r + 1 } else { r };
    let exponents: Vec<Vec<u32>> = (0..tuples)
        .map(|_| {
            let n = rng.gen_range(1..=b.max_n.max(1));
            (0..n).map(|_| rng.gen_range(1..=b.max_l.max(1))).collect()
        })
        .collect();
    let d = if type2 {
        TrinomialDatum::type2(m, exponents, random_matrix(rng, r + 1))
    } else {
        TrinomialDatum::type1(m, exponents, random_constants(rng, r))
    };
    debug_assert!(validate(&d).is_valid());
    d
}

/// A random Type 2 surface with `r = 3` (the shape of case a).
pub fn random_r3_surface<R: Rng>(rng: &mut R) -> TrinomialDatum {
    let exponents = (0..4).map(|_| vec![rng.gen_range(2..=7)]).collect();
    TrinomialDatum::type2(0, exponents, random_matrix(rng, 4))
}
