//! Enrich pretrained word embeddings with semantic-lexicon knowledge.
//!
//! The main entry point is [`extrofit`]: expand every word vector with its
//! representative value (the mean of its components), average that value
//! across synonym classes so synonyms share it, then project the expanded
//! space back to the original dimension with linear discriminant analysis,
//! using the synonym classes as labels. [`retrofit`] provides the classic
//! iterative-averaging baseline, and the [`eval`] module scores either
//! result on word-similarity benchmarks.
//!
//! ```
//! use extrofitting::{
//!     build_classes, extrofit, load_lexicon, load_text_embeddings,
//!     ExtrofitConfig, LexiconOptions, LoadOptions,
//! };
//!
//! # fn main() -> extrofitting::Result<()> {
//! let vectors = "\
//! adore 0.9 0.1 0.2\nlove 0.1 0.9 0.3\nworship 0.2 0.2 0.9\n\
//! table -0.4 0.5 0.1\nchair 0.6 -0.5 0.2\nstone 0.3 0.4 -0.8\n";
//! let loaded = load_text_embeddings(vectors.as_bytes(), &LoadOptions::default())?;
//!
//! let lexicon = load_lexicon(
//!     "adore love worship\n".as_bytes(),
//!     loaded.matrix.vocab(),
//!     &LexiconOptions::default(),
//! )?;
//! let classes = build_classes(&lexicon.graph, loaded.matrix.vocab())?;
//!
//! let enriched = extrofit(&loaded.matrix, &classes, &ExtrofitConfig::default())?;
//! assert_eq!(enriched.matrix.dim(), 3);
//! assert_eq!(enriched.matrix.len(), 6);
//! # Ok(())
//! # }
//! ```
//!
//! See the `examples/` directory for one runnable program per capability and
//! the `extrofitting` binary for the scriptable pipeline.

pub mod cli;
pub mod embedding;
pub mod error;
pub mod eval;
pub mod extrofit;
pub mod lda;
pub mod lexicon;
pub mod manifest;
pub mod retrofit;

pub use embedding::{
    load_text_embeddings, open_text, save_text_embeddings, DuplicatePolicy, EmbeddingMatrix,
    LoadOptions, Precision, TextLoad, Vocabulary,
};
pub use error::{Error, Result};
pub use eval::{
    cosine, evaluate, load_dataset, nearest_neighbors, spearman, DatasetFormat, DatasetLoad,
    DatasetOptions, EvalReport, Neighbors, SimilarityDataset,
};
pub use extrofit::{expand, extrofit, representative, transfer, ExpandedEmbedding, ExtrofitConfig, Extrofitted};
pub use lda::{
    accumulate_scatter, eigen_residuals, fisher_objective, lda_fit, lda_transform, LdaModel,
    ScatterPair, Weighting,
};
pub use lexicon::{
    build_classes, load_lexicon, LexiconLoad, LexiconOptions, SynonymClasses, SynonymGraph,
};
pub use manifest::{sha256_file, RunManifest};
pub use retrofit::{descent_energy, retrofit, retrofit_objective, BetaMode, RetrofitConfig};
