//! Word-similarity evaluation: dataset loading, Spearman rank correlation
//! with out-of-vocabulary skipping, and nearest-neighbor inspection.

use std::io::BufRead;

use ndarray::ArrayView1;

use crate::embedding::EmbeddingMatrix;
use crate::error::{Error, Result};

/// Known benchmark layouts plus a generic 3-column TSV fallback.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DatasetFormat {
    /// `w1 w2 score`, whitespace-separated, scores 0..50.
    Men3k,
    /// Tab- or comma-separated with an optional header, scores 0..10.
    Ws353,
    /// Tab-separated with a header naming a `SimLex999` column, scores 0..10.
    Simlex999,
    /// `w1 w2 score`, whitespace-separated, scores 0..4.
    Rg65,
    /// `w1<TAB>w2<TAB>score`, no header, no range check.
    Generic,
}

impl DatasetFormat {
    pub fn tag(&self) -> &'static str {
        match self {
            Self::Men3k => "men3k",
            Self::Ws353 => "ws353",
            Self::Simlex999 => "simlex999",
            Self::Rg65 => "rg65",
            Self::Generic => "generic",
        }
    }

    fn score_range(&self) -> Option<(f64, f64)> {
        match self {
            Self::Men3k => Some((0.0, 50.0)),
            Self::Ws353 | Self::Simlex999 => Some((0.0, 10.0)),
            Self::Rg65 => Some((0.0, 4.0)),
            Self::Generic => None,
        }
    }
}

impl std::str::FromStr for DatasetFormat {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        match s {
            "men3k" => Ok(Self::Men3k),
            "ws353" => Ok(Self::Ws353),
            "simlex999" => Ok(Self::Simlex999),
            "rg65" => Ok(Self::Rg65),
            "generic" => Ok(Self::Generic),
            other => Err(format!(
                "unknown dataset tag {other:?} (expected men3k, ws353, simlex999, rg65 or generic)"
            )),
        }
    }
}

/// Word pairs with human similarity judgements.
#[derive(Debug, Clone)]
pub struct SimilarityDataset {
    pub name: String,
    pub pairs: Vec<(String, String, f64)>,
}

impl SimilarityDataset {
    /// Appends another portion of the same benchmark (train/dev and test
    /// splits are evaluated together).
    pub fn extend(&mut self, other: SimilarityDataset) {
        self.pairs.extend(other.pairs);
    }
}

#[derive(Debug, Clone, Copy, Default)]
pub struct DatasetOptions {
    pub lowercase: bool,
}

/// A parsed dataset plus soft-validation counters.
#[derive(Debug)]
pub struct DatasetLoad {
    pub dataset: SimilarityDataset,
    /// Pairs whose score fell outside the format's documented range
    /// (kept, but worth reporting).
    pub range_warnings: usize,
}

/// Parses one dataset stream in the given format.
pub fn load_dataset<R: BufRead>(
    mut reader: R,
    format: DatasetFormat,
    options: &DatasetOptions,
) -> Result<DatasetLoad> {
    let mut pairs = Vec::new();
    let mut range_warnings = 0usize;
    let mut simlex_cols: Option<(usize, usize, usize)> = None;
    let range = format.score_range();

    let mut line = String::new();
    let mut line_no = 0usize;
    loop {
        line.clear();
        if reader.read_line(&mut line)? == 0 {
            break;
        }
        line_no += 1;
        let trimmed = line.trim_end_matches(['\n', '\r']);
        if trimmed.is_empty() {
            continue;
        }

        let parsed = match format {
            DatasetFormat::Men3k | DatasetFormat::Rg65 => {
                let fields: Vec<&str> = trimmed.split_ascii_whitespace().collect();
                if fields.len() != 3 {
                    return Err(Error::WrongColumnCount {
                        line: line_no,
                        expected: 3,
                        found: fields.len(),
                    });
                }
                Some((fields[0], fields[1], parse_score(fields[2], line_no)?))
            }
            DatasetFormat::Ws353 => {
                let fields: Vec<&str> = if trimmed.contains('\t') {
                    trimmed.split('\t').collect()
                } else {
                    trimmed.split(',').collect()
                };
                if fields.len() != 3 {
                    return Err(Error::WrongColumnCount {
                        line: line_no,
                        expected: 3,
                        found: fields.len(),
                    });
                }
                match fields[2].trim().parse::<f64>() {
                    Ok(score) if score.is_finite() => {
                        Some((fields[0].trim(), fields[1].trim(), score))
                    }
                    _ if line_no == 1 => None, // optional header
                    _ => {
                        return Err(Error::UnparseableLine {
                            line: line_no,
                            reason: format!("score column {:?} is not a number", fields[2]),
                        })
                    }
                }
            }
            DatasetFormat::Simlex999 => {
                let fields: Vec<&str> = trimmed.split('\t').collect();
                match simlex_cols {
                    None => {
                        let lower: Vec<String> =
                            fields.iter().map(|f| f.trim().to_lowercase()).collect();
                        let score = lower
                            .iter()
                            .position(|f| f == "simlex999")
                            .ok_or_else(|| Error::UnparseableLine {
                                line: line_no,
                                reason: "header does not declare a SimLex999 column".into(),
                            })?;
                        let w1 = lower.iter().position(|f| f == "word1").unwrap_or(0);
                        let w2 = lower.iter().position(|f| f == "word2").unwrap_or(1);
                        simlex_cols = Some((w1, w2, score));
                        None
                    }
                    Some((w1, w2, score)) => {
                        let need = w1.max(w2).max(score) + 1;
                        if fields.len() < need {
                            return Err(Error::WrongColumnCount {
                                line: line_no,
                                expected: need,
                                found: fields.len(),
                            });
                        }
                        Some((fields[w1], fields[w2], parse_score(fields[score], line_no)?))
                    }
                }
            }
            DatasetFormat::Generic => {
                let fields: Vec<&str> = trimmed.split('\t').collect();
                if fields.len() != 3 {
                    return Err(Error::WrongColumnCount {
                        line: line_no,
                        expected: 3,
                        found: fields.len(),
                    });
                }
                Some((fields[0], fields[1], parse_score(fields[2], line_no)?))
            }
        };

        if let Some((a, b, score)) = parsed {
            if let Some((lo, hi)) = range {
                if score < lo || score > hi {
                    range_warnings += 1;
                }
            }
            let (mut a, mut b) = (a.to_string(), b.to_string());
            if options.lowercase {
                a = a.to_lowercase();
                b = b.to_lowercase();
            }
            pairs.push((a, b, score));
        }
    }

    if pairs.is_empty() {
        return Err(Error::EmptyInput);
    }
    Ok(DatasetLoad {
        dataset: SimilarityDataset { name: format.tag().to_string(), pairs },
        range_warnings,
    })
}

fn parse_score(text: &str, line_no: usize) -> Result<f64> {
    let v: f64 = text.trim().parse().map_err(|_| Error::UnparseableNumber {
        line: line_no,
        text: text.to_string(),
    })?;
    if !v.is_finite() {
        return Err(Error::UnparseableNumber { line: line_no, text: text.to_string() });
    }
    Ok(v)
}

/// Average ranks (1-based, ties share the mean of their positions).
fn average_ranks(values: &[f64]) -> Vec<f64> {
    let n = values.len();
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&a, &b| values[a].total_cmp(&values[b]));
    let mut ranks = vec![0.0; n];
    let mut i = 0;
    while i < n {
        let mut j = i;
        while j + 1 < n && values[order[j + 1]] == values[order[i]] {
            j += 1;
        }
        let rank = (i + j) as f64 / 2.0 + 1.0;
        for &idx in &order[i..=j] {
            ranks[idx] = rank;
        }
        i = j + 1;
    }
    ranks
}

/// Spearman rank correlation: Pearson correlation of average-rank vectors.
pub fn spearman(xs: &[f64], ys: &[f64]) -> Result<f64> {
    if xs.len() != ys.len() {
        return Err(Error::LengthMismatch { left: xs.len(), right: ys.len() });
    }
    if xs.len() < 2 {
        return Err(Error::DegenerateInput(format!(
            "need at least 2 observations, got {}",
            xs.len()
        )));
    }
    let rx = average_ranks(xs);
    let ry = average_ranks(ys);
    let n = rx.len() as f64;
    let mean = (n + 1.0) / 2.0;
    let mut cov = 0.0;
    let mut var_x = 0.0;
    let mut var_y = 0.0;
    for (a, b) in rx.iter().zip(ry.iter()) {
        let (da, db) = (a - mean, b - mean);
        cov += da * db;
        var_x += da * da;
        var_y += db * db;
    }
    if var_x == 0.0 || var_y == 0.0 {
        return Err(Error::DegenerateInput("constant list has no rank ordering".into()));
    }
    Ok(cov / (var_x * var_y).sqrt())
}

/// Cosine similarity; zero whenever either vector has zero norm.
pub fn cosine(a: ArrayView1<f64>, b: ArrayView1<f64>) -> f64 {
    let mut dot = 0.0;
    let mut na = 0.0;
    let mut nb = 0.0;
    for (x, y) in a.iter().zip(b.iter()) {
        dot += x * y;
        na += x * x;
        nb += y * y;
    }
    if na == 0.0 || nb == 0.0 {
        return 0.0;
    }
    dot / (na.sqrt() * nb.sqrt())
}

/// Evaluation result for one dataset.
#[derive(Debug, Clone)]
pub struct EvalReport {
    pub dataset: String,
    pub spearman: f64,
    pub n_scored: usize,
    pub n_skipped_oov: usize,
}

/// Scores every pair whose words are both in vocabulary with cosine
/// similarity and correlates against the human judgements.
pub fn evaluate(m: &EmbeddingMatrix, dataset: &SimilarityDataset) -> Result<EvalReport> {
    let mut model_scores = Vec::with_capacity(dataset.pairs.len());
    let mut human_scores = Vec::with_capacity(dataset.pairs.len());
    let mut skipped = 0usize;
    for (a, b, human) in &dataset.pairs {
        match (m.lookup(a), m.lookup(b)) {
            (Some(va), Some(vb)) => {
                model_scores.push(cosine(va, vb));
                human_scores.push(*human);
            }
            _ => skipped += 1,
        }
    }
    if model_scores.len() < 2 {
        return Err(Error::DegenerateInput(format!(
            "only {} of {} pairs are scorable",
            model_scores.len(),
            dataset.pairs.len()
        )));
    }
    let rho = spearman(&model_scores, &human_scores)?;
    Ok(EvalReport {
        dataset: dataset.name.clone(),
        spearman: rho,
        n_scored: model_scores.len(),
        n_skipped_oov: skipped,
    })
}

/// Top-k neighbor list of a cue word.
#[derive(Debug, Clone)]
pub struct Neighbors {
    /// `(token, cosine)` pairs, descending score, ties broken by vocabulary
    /// order, never containing the cue itself.
    pub items: Vec<(String, f64)>,
    /// Vocabulary rows excluded because their vector has zero norm.
    pub zero_norm_excluded: usize,
}

/// Finds the `k` nearest words to `token` by cosine similarity.
pub fn nearest_neighbors(m: &EmbeddingMatrix, token: &str, k: usize) -> Result<Neighbors> {
    assert!(k >= 1, "k must be at least 1");
    let cue_row = m
        .vocab()
        .position(token)
        .ok_or_else(|| Error::UnknownToken(token.to_string()))?;
    let cue = m.row(cue_row);
    let mut zero_norm_excluded = 0usize;
    let mut scored: Vec<(f64, usize)> = Vec::with_capacity(m.len().saturating_sub(1));
    for row in 0..m.len() {
        if row == cue_row {
            continue;
        }
        let v = m.row(row);
        if v.iter().all(|&x| x == 0.0) {
            zero_norm_excluded += 1;
            continue;
        }
        scored.push((cosine(cue, v), row));
    }
    scored.sort_unstable_by(|a, b| b.0.total_cmp(&a.0).then(a.1.cmp(&b.1)));
    scored.truncate(k);
    Ok(Neighbors {
        items: scored
            .into_iter()
            .map(|(score, row)| (m.vocab().token(row).to_string(), score))
            .collect(),
        zero_norm_excluded,
    })
}
