use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::ArcPresentation;
use crate::error::{invalid, Result};

/// Rejection sampler: shuffle the multiset `{1, 1, 2, 2, ..., n, n}`, pair up
/// consecutive entries as chords, and keep the first draw that is a valid
/// single-component presentation. Deterministic in `(n, seed)`.
pub fn random_presentation(n: usize, seed: u64) -> Result<ArcPresentation> {
    if n < 2 {
        return Err(invalid(format!(
            "random presentation needs n >= 2, got {n}"
        )));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut slots: Vec<usize> = (1..=n).flat_map(|l| [l, l]).collect();
    loop {
        slots.shuffle(&mut rng);
        let ap = ArcPresentation {
            chords: slots.chunks(2).map(|c| (c[0], c[1])).collect(),
        };
        if ap.is_valid() {
            return Ok(ap);
        }
    }
}

/// `count` presentations with chord counts drawn uniformly from
/// `nmin..=nmax`, each paired with the seed that regenerates it through
/// [`random_presentation`]. Deterministic in `seed`.
pub fn random_batch(
    count: usize,
    nmin: usize,
    nmax: usize,
    seed: u64,
) -> Result<Vec<(u64, ArcPresentation)>> {
    if nmin < 2 || nmin > nmax {
        return Err(invalid(format!("bad chord range {nmin}..={nmax}")));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count)
        .map(|_| {
            let n = rng.gen_range(nmin..=nmax);
            let s: u64 = rng.gen();
            Ok((s, random_presentation(n, s)?))
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn deterministic_and_valid() {
        for s in 0..20 {
            assert!(random_presentation(3, s).unwrap().is_valid());
        }
        assert_eq!(
            random_presentation(9, 7).unwrap(),
            random_presentation(9, 7).unwrap()
        );
        assert!(random_presentation(8, 42).unwrap().validate().is_ok());
        assert_eq!(random_presentation(2, 1).unwrap().n(), 2);
        assert!(random_presentation(1, 1).is_err());
    }

    #[test]
    fn batches_regenerate_from_their_seeds() {
        let batch = random_batch(30, 3, 12, 42).unwrap();
        assert_eq!(batch, random_batch(30, 3, 12, 42).unwrap());
        for (s, ap) in &batch {
            assert!((3..=12).contains(&ap.n()));
            assert_eq!(&random_presentation(ap.n(), *s).unwrap(), ap);
        }
        assert!(random_batch(1, 5, 4, 0).is_err());
    }
}
