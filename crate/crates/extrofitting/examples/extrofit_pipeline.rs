//! The full enrichment pipeline on a synthetic vocabulary: plant synonym
//! classes among random vectors, extrofit, and watch the mean synonym
//! cosine rise while the dimension stays put.
//!
//! ```sh
//! cargo run --example extrofit_pipeline
//! ```

use extrofitting::{
    build_classes, cosine, extrofit, EmbeddingMatrix, ExtrofitConfig, Result, SynonymGraph,
    Vocabulary,
};
use ndarray::Array2;
use rand::prelude::*;
use rand_chacha::ChaCha8Rng;

fn main() -> Result<()> {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let n_words = 200;
    let dim = 16;
    let n_classes = 20;
    let class_size = 5;

    // Random vectors; synonyms start out no closer than anything else.
    let words: Vec<String> = (0..n_words).map(|i| format!("word{i:03}")).collect();
    let vocab = Vocabulary::new(words)?;
    let data = Array2::from_shape_fn((n_words, dim), |_| rng.gen_range(-1.0..1.0));
    let matrix = EmbeddingMatrix::new(vocab, data)?;

    // Plant synonym classes: word000..word004 are synonyms, and so on.
    let mut graph = SynonymGraph::new();
    let mut pairs = Vec::new();
    for class in 0..n_classes {
        let base = class * class_size;
        for i in base..base + class_size {
            for j in (i + 1)..base + class_size {
                graph.add_edge(&format!("word{i:03}"), &format!("word{j:03}"));
                pairs.push((i, j));
            }
        }
    }
    let classes = build_classes(&graph, matrix.vocab())?;
    println!(
        "vocabulary: {} words, {} synonym classes ({} non-singleton)",
        matrix.len(),
        classes.n_classes(),
        classes.n_nonsingleton_classes()
    );

    let mean_cosine = |m: &EmbeddingMatrix| {
        pairs.iter().map(|&(i, j)| cosine(m.row(i), m.row(j))).sum::<f64>() / pairs.len() as f64
    };
    println!("mean synonym cosine before: {:+.4}", mean_cosine(&matrix));

    let enriched = extrofit(&matrix, &classes, &ExtrofitConfig::default())?;
    println!("mean synonym cosine after:  {:+.4}", mean_cosine(&enriched.matrix));
    println!(
        "dimension: {} -> {} (expanded by {}, projected back)",
        matrix.dim(),
        enriched.matrix.dim(),
        enriched.model.in_dim - matrix.dim()
    );
    println!(
        "top-5 discriminant eigenvalues: {:?}",
        enriched.model.eigenvalues[..5]
            .iter()
            .map(|e| (e * 100.0).round() / 100.0)
            .collect::<Vec<_>>()
    );
    Ok(())
}
