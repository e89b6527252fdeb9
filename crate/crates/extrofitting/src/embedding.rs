//! Word-embedding matrices and the whitespace-separated text formats used by
//! GloVe, Word2Vec and Fasttext exports.
//!
//! The text format is one `token v_1 ... v_D` line per word. An optional
//! first line holding exactly two integers (`N D`, the Word2Vec header) is
//! detected and skipped, so both headerless GloVe files and Word2Vec text
//! exports load without a format flag.

use std::collections::HashMap;
use std::fs::File;
use std::io::{BufRead, BufReader, Write};
use std::path::Path;

use flate2::read::MultiGzDecoder;
use ndarray::{Array2, ArrayView1, ArrayView2};

use crate::error::{Error, Result};

/// Ordered set of unique tokens with O(1) token -> row lookup.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Vocabulary {
    words: Vec<String>,
    index: HashMap<String, usize>,
}

impl Vocabulary {
    /// Builds a vocabulary from unique tokens. Tokens must be non-empty and
    /// free of internal whitespace so they survive the text format.
    pub fn new(words: Vec<String>) -> Result<Self> {
        let mut index = HashMap::with_capacity(words.len());
        for (i, w) in words.iter().enumerate() {
            if w.is_empty() || w.chars().any(char::is_whitespace) {
                return Err(Error::UnparseableLine {
                    line: i + 1,
                    reason: format!("token {w:?} is empty or contains whitespace"),
                });
            }
            if index.insert(w.clone(), i).is_some() {
                return Err(Error::DuplicateToken(w.clone()));
            }
        }
        Ok(Self { words, index })
    }

    pub fn len(&self) -> usize {
        self.words.len()
    }

    pub fn is_empty(&self) -> bool {
        self.words.is_empty()
    }

    /// Row position of a token, if present.
    pub fn position(&self, token: &str) -> Option<usize> {
        self.index.get(token).copied()
    }

    /// Token at a row position.
    pub fn token(&self, row: usize) -> &str {
        &self.words[row]
    }

    pub fn iter(&self) -> impl Iterator<Item = &str> {
        self.words.iter().map(String::as_str)
    }
}

/// Dense row-major matrix of word vectors indexed by a [`Vocabulary`].
///
/// Immutable once constructed; enrichment operations return new matrices.
#[derive(Debug, Clone, PartialEq)]
pub struct EmbeddingMatrix {
    vocab: Vocabulary,
    data: Array2<f64>,
}

impl EmbeddingMatrix {
    /// Pairs a vocabulary with its vector rows, validating the shape and
    /// that every entry is finite.
    pub fn new(vocab: Vocabulary, data: Array2<f64>) -> Result<Self> {
        if data.nrows() != vocab.len() {
            return Err(Error::ShapeMismatch(format!(
                "{} vocabulary tokens but {} matrix rows",
                vocab.len(),
                data.nrows()
            )));
        }
        if vocab.is_empty() || data.ncols() == 0 {
            return Err(Error::EmptyInput);
        }
        if !data.iter().all(|v| v.is_finite()) {
            return Err(Error::BadDimension("matrix contains NaN or Inf".into()));
        }
        Ok(Self { vocab, data })
    }

    pub fn vocab(&self) -> &Vocabulary {
        &self.vocab
    }

    pub fn data(&self) -> ArrayView2<'_, f64> {
        self.data.view()
    }

    /// Number of words.
    pub fn len(&self) -> usize {
        self.vocab.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vocab.is_empty()
    }

    /// Vector dimension D.
    pub fn dim(&self) -> usize {
        self.data.ncols()
    }

    /// Row vector for a token, or `None` when out of vocabulary.
    pub fn lookup(&self, token: &str) -> Option<ArrayView1<'_, f64>> {
        self.vocab.position(token).map(|i| self.data.row(i))
    }

    pub fn row(&self, row: usize) -> ArrayView1<'_, f64> {
        self.data.row(row)
    }

    /// Splits back into parts, e.g. to rebuild with transformed rows.
    pub fn into_parts(self) -> (Vocabulary, Array2<f64>) {
        (self.vocab, self.data)
    }
}

/// What to do when the same token appears twice (common after lowercasing
/// real pretrained files).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum DuplicatePolicy {
    /// Keep the first occurrence and count the rest.
    #[default]
    KeepFirst,
    /// Fail with [`Error::DuplicateToken`].
    Error,
}

#[derive(Debug, Clone, Copy, Default)]
pub struct LoadOptions {
    /// Lowercase tokens before duplicate resolution.
    pub lowercase: bool,
    pub on_duplicate: DuplicatePolicy,
}

/// A loaded matrix plus counters for lines that had to be dropped.
#[derive(Debug)]
pub struct TextLoad {
    pub matrix: EmbeddingMatrix,
    /// Later occurrences of an already-seen token (keep-first policy).
    pub duplicates_dropped: usize,
    /// Lines whose token part still contained whitespace after peeling off
    /// the trailing D value fields.
    pub malformed_dropped: usize,
}

/// Reads embeddings from whitespace-separated text.
///
/// The dimension D is inferred from the first content line; every later line
/// must split into a token plus exactly D values. Tokens are taken as
/// everything before the last D fields.
pub fn load_text_embeddings<R: BufRead>(mut reader: R, options: &LoadOptions) -> Result<TextLoad> {
    let mut words: Vec<String> = Vec::new();
    let mut values: Vec<f64> = Vec::new();
    let mut index: HashMap<String, usize> = HashMap::new();
    let mut dim: Option<usize> = None;
    let mut duplicates_dropped = 0usize;
    let mut malformed_dropped = 0usize;

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

        if dim.is_none() && line_no == 1 && is_word2vec_header(trimmed) {
            continue;
        }

        let fields: Vec<&str> = trimmed.split_ascii_whitespace().collect();
        let d = match dim {
            Some(d) => d,
            None => {
                if fields.len() < 2 {
                    return Err(Error::InconsistentDimension {
                        line: line_no,
                        expected: 2,
                        found: fields.len(),
                    });
                }
                let d = fields.len() - 1;
                dim = Some(d);
                d
            }
        };
        if fields.len() < d + 1 {
            return Err(Error::InconsistentDimension {
                line: line_no,
                expected: d + 1,
                found: fields.len(),
            });
        }

        let token_fields = &fields[..fields.len() - d];
        if token_fields.len() != 1 {
            // A token with internal whitespace cannot round-trip through the
            // format; drop the line rather than reject the whole file.
            malformed_dropped += 1;
            continue;
        }
        let mut token = token_fields[0].to_string();
        if options.lowercase {
            token = token.to_lowercase();
        }

        let mut row = Vec::with_capacity(d);
        for f in &fields[fields.len() - d..] {
            let v: f64 = f.parse().map_err(|_| Error::UnparseableNumber {
                line: line_no,
                text: (*f).to_string(),
            })?;
            if !v.is_finite() {
                return Err(Error::UnparseableNumber {
                    line: line_no,
                    text: (*f).to_string(),
                });
            }
            row.push(v);
        }

        if index.contains_key(&token) {
            match options.on_duplicate {
                DuplicatePolicy::KeepFirst => {
                    duplicates_dropped += 1;
                    continue;
                }
                DuplicatePolicy::Error => return Err(Error::DuplicateToken(token)),
            }
        }
        index.insert(token.clone(), words.len());
        words.push(token);
        values.extend_from_slice(&row);
    }

    let d = dim.ok_or(Error::EmptyInput)?;
    if words.is_empty() {
        return Err(Error::EmptyInput);
    }
    let data = Array2::from_shape_vec((words.len(), d), values)
        .expect("row count and dimension are consistent by construction");
    Ok(TextLoad {
        matrix: EmbeddingMatrix { vocab: Vocabulary { words, index }, data },
        duplicates_dropped,
        malformed_dropped,
    })
}

/// A first line of exactly two integer tokens is a Word2Vec `N D` header.
fn is_word2vec_header(line: &str) -> bool {
    let fields: Vec<&str> = line.split_ascii_whitespace().collect();
    fields.len() == 2 && fields.iter().all(|f| f.parse::<u64>().is_ok())
}

/// Output precision for [`save_text_embeddings`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Precision {
    /// Fixed-point with this many decimals (>= 1).
    Fixed(u32),
    /// Shortest representation that round-trips exactly.
    Full,
}

impl Default for Precision {
    fn default() -> Self {
        Precision::Fixed(6)
    }
}

/// Writes `token v_1 ... v_D` lines in vocabulary order, no header.
pub fn save_text_embeddings<W: Write>(
    m: &EmbeddingMatrix,
    writer: W,
    precision: Precision,
) -> Result<()> {
    if let Precision::Fixed(p) = precision {
        assert!(p >= 1, "precision must be at least 1 decimal place");
    }
    let mut w = std::io::BufWriter::new(writer);
    let mut buf = String::new();
    for (i, token) in m.vocab.iter().enumerate() {
        buf.clear();
        buf.push_str(token);
        for v in m.data.row(i) {
            buf.push(' ');
            match precision {
                Precision::Fixed(p) => {
                    use std::fmt::Write as _;
                    write!(buf, "{v:.*}", p as usize).expect("writing to String cannot fail");
                }
                Precision::Full => {
                    use std::fmt::Write as _;
                    write!(buf, "{v}").expect("writing to String cannot fail");
                }
            }
        }
        buf.push('\n');
        w.write_all(buf.as_bytes())?;
    }
    w.flush()?;
    Ok(())
}

/// Opens a text file for buffered reading, transparently decompressing when
/// the name ends in `.gz`.
pub fn open_text(path: &Path) -> std::io::Result<Box<dyn BufRead>> {
    let file = File::open(path)?;
    if path.extension().is_some_and(|e| e == "gz") {
        Ok(Box::new(BufReader::new(MultiGzDecoder::new(file))))
    } else {
        Ok(Box::new(BufReader::new(file)))
    }
}
