//! Extrofitting: enrich word vectors by expanding them with a representative
//! value, equalizing that value across synonym classes, then projecting the
//! expanded space back down with LDA using the classes as labels.
//!
//! The three steps compose as `expand -> transfer -> lda`, and the default
//! configuration (one expanded dimension, output dimension equal to the
//! input dimension) reproduces the enrichment-in-place behavior: the
//! projection consumes the expanded dimension again.

use ndarray::{s, Array2, ArrayView1};

use crate::embedding::{EmbeddingMatrix, Vocabulary};
use crate::error::{Error, Result};
use crate::lda::{accumulate_scatter, lda_fit, lda_transform, LdaModel, Weighting};
use crate::lexicon::SynonymClasses;

/// Configuration for [`extrofit`].
#[derive(Debug, Clone)]
pub struct ExtrofitConfig {
    /// Number of expanded dimensions k (>= 1).
    pub n_expand: usize,
    /// Output dimension; defaults to the input dimension when `None`.
    pub out_dim: Option<usize>,
    /// Shrinkage for the within-class metric.
    pub shrinkage: f64,
    /// Between-class scatter weighting.
    pub weighting: Weighting,
}

impl Default for ExtrofitConfig {
    fn default() -> Self {
        Self {
            n_expand: 1,
            out_dim: None,
            shrinkage: 1e-4,
            weighting: Weighting::ClassSize,
        }
    }
}

/// Arithmetic mean of a vector's components: the representative value that
/// fills expanded dimensions.
pub fn representative(v: ArrayView1<f64>) -> f64 {
    v.sum() / v.len() as f64
}

/// An embedding matrix whose last `n_expanded` columns are representative
/// values appended by [`expand`]. Constructed only by this module, so
/// [`transfer`] always knows which columns are the expanded ones.
#[derive(Debug, Clone)]
pub struct ExpandedEmbedding {
    matrix: EmbeddingMatrix,
    n_expanded: usize,
}

impl ExpandedEmbedding {
    pub fn matrix(&self) -> &EmbeddingMatrix {
        &self.matrix
    }

    /// Dimension before expansion.
    pub fn base_dim(&self) -> usize {
        self.matrix.dim() - self.n_expanded
    }

    pub fn n_expanded(&self) -> usize {
        self.n_expanded
    }

    pub fn into_matrix(self) -> EmbeddingMatrix {
        self.matrix
    }
}

/// Appends `k` columns to every row, each filled with the row's
/// representative value.
pub fn expand(m: &EmbeddingMatrix, k: usize) -> ExpandedEmbedding {
    assert!(k >= 1, "must expand by at least one dimension");
    let (n, d) = (m.len(), m.dim());
    let mut data = Array2::<f64>::zeros((n, d + k));
    data.slice_mut(s![.., ..d]).assign(&m.data());
    for (i, row) in m.data().rows().into_iter().enumerate() {
        let r = representative(row);
        for c in d..d + k {
            data[[i, c]] = r;
        }
    }
    let matrix = EmbeddingMatrix::new(m.vocab().clone(), data)
        .expect("expansion preserves vocabulary and finiteness");
    ExpandedEmbedding { matrix, n_expanded: k }
}

/// Replaces each expanded value with the mean representative value of the
/// row's synonym class, so all members of a class share it exactly.
/// Singleton classes keep their original representative value.
pub fn transfer(m: ExpandedEmbedding, classes: &SynonymClasses) -> Result<ExpandedEmbedding> {
    if classes.vocab_len() != m.matrix.len() {
        return Err(Error::PartitionMismatch(format!(
            "classes cover {} tokens but the matrix has {}",
            classes.vocab_len(),
            m.matrix.len()
        )));
    }
    let d = m.base_dim();
    let k = m.n_expanded;
    let (vocab, mut data) = m.matrix.into_parts();
    for class in 0..classes.n_classes() {
        let members = classes.members_of(class);
        if members.len() < 2 {
            continue;
        }
        // Pre-transfer representative values all sit in the first expanded
        // column; members are in ascending row order, so the sum (and the
        // result) is deterministic.
        let sum: f64 = members.iter().map(|&row| data[[row, d]]).sum();
        let mean = sum / members.len() as f64;
        for &row in members {
            for c in d..d + k {
                data[[row, c]] = mean;
            }
        }
    }
    let matrix = EmbeddingMatrix::new(vocab, data)
        .expect("transfer preserves shape and finiteness");
    Ok(ExpandedEmbedding { matrix, n_expanded: k })
}

/// Result of the full pipeline: the enriched matrix plus the fitted
/// projection for inspection.
#[derive(Debug)]
pub struct Extrofitted {
    pub matrix: EmbeddingMatrix,
    pub model: LdaModel,
}

/// Runs expand -> transfer -> LDA and projects the whole vocabulary.
pub fn extrofit(
    m: &EmbeddingMatrix,
    classes: &SynonymClasses,
    cfg: &ExtrofitConfig,
) -> Result<Extrofitted> {
    if cfg.n_expand < 1 {
        return Err(Error::BadDimension("n_expand must be at least 1".into()));
    }
    if classes.n_classes() < 2 || classes.n_nonsingleton_classes() == 0 {
        return Err(Error::DegenerateLexicon);
    }
    let d = m.dim();
    let out_dim = cfg.out_dim.unwrap_or(d);
    if out_dim < 1 || out_dim > d + cfg.n_expand {
        return Err(Error::BadDimension(format!(
            "out_dim {out_dim} not in 1..={}",
            d + cfg.n_expand
        )));
    }
    if out_dim > classes.n_classes() - 1 {
        return Err(Error::BadDimension(format!(
            "out_dim {out_dim} exceeds n_classes - 1 = {}",
            classes.n_classes() - 1
        )));
    }

    let expanded = expand(m, cfg.n_expand);
    let transferred = transfer(expanded, classes)?;
    let scatter = accumulate_scatter(
        transferred.matrix().data(),
        classes.labels(),
        classes.n_classes(),
        cfg.weighting,
    )?;
    let model = lda_fit(&scatter, out_dim, cfg.shrinkage)?;
    let projected = lda_transform(&model, transferred.matrix().data())?;
    let matrix = EmbeddingMatrix::new(vocab_of(transferred), projected)?;
    Ok(Extrofitted { matrix, model })
}

fn vocab_of(m: ExpandedEmbedding) -> Vocabulary {
    m.into_matrix().into_parts().0
}
