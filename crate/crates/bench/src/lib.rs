//! Fixtures shared by the benchmarks.

use balpair_core::corpus::{self, CorpusEntry, Shape};
use balpair_core::exactlin::{FieldSpec, Matrix};
use balpair_core::Complex;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub fn random_matrix(p: u32, rows: usize, cols: usize, seed: u64) -> Matrix {
    let field = FieldSpec::new(p).expect("prime");
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let data: Vec<i64> = (0..rows * cols).map(|_| rng.gen_range(0..p as i64)).collect();
    Matrix::from_flat(field, rows, cols, &data).expect("sized")
}

/// The Gorenstein Nakayama entry, the largest algebra in the shipped corpus.
pub fn nakayama(p: u32) -> CorpusEntry {
    let alg = corpus::gorenstein_nakayama(p).expect("builtin algebra");
    corpus::entry("gorenstein-nakayama", &alg, 7, Shape::default()).expect("corpus entry")
}

/// The complex in `e` with the most summands in total.
pub fn largest_complex(e: &CorpusEntry) -> &Complex {
    e.complexes.iter().max_by_key(|c| c.terms().iter().map(|t| t.total_dim()).sum::<usize>()).expect("nonempty corpus")
}
