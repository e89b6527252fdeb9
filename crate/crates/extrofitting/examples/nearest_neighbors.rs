//! Nearest-neighbor inspection: the qualitative view of what enrichment
//! does to a word's neighborhood, before and after extrofitting.
//!
//! ```sh
//! cargo run --example nearest_neighbors
//! ```

use extrofitting::{
    build_classes, extrofit, load_lexicon, load_text_embeddings, nearest_neighbors,
    EmbeddingMatrix, ExtrofitConfig, LexiconOptions, LoadOptions, Result,
};

fn print_neighbors(m: &EmbeddingMatrix, cue: &str, k: usize) -> Result<()> {
    let neighbors = nearest_neighbors(m, cue, k)?;
    let list = neighbors
        .items
        .iter()
        .map(|(t, s)| format!("{t}({s:.4})"))
        .collect::<Vec<_>>()
        .join(", ");
    println!("  {cue}: {list}");
    Ok(())
}

fn main() -> Result<()> {
    let vectors = "\
love 0.90 0.10 0.20 0.10\nadore 0.10 0.90 0.10 0.20\nhate -0.80 0.20 0.10 0.10\n\
like 0.60 0.30 0.30 0.20\nstone 0.00 0.10 -0.90 0.40\nmoon 0.10 0.00 -0.80 -0.50\n\
car 0.20 -0.70 0.40 -0.50\ntruck 0.30 -0.60 0.50 -0.40\n";
    let matrix = load_text_embeddings(vectors.as_bytes(), &LoadOptions::default())?.matrix;

    println!("before enrichment:");
    print_neighbors(&matrix, "love", 3)?;
    print_neighbors(&matrix, "car", 3)?;

    let lexicon = "love adore like\ncar truck\n";
    let loaded = load_lexicon(lexicon.as_bytes(), matrix.vocab(), &LexiconOptions::default())?;
    let classes = build_classes(&loaded.graph, matrix.vocab())?;
    let enriched = extrofit(&matrix, &classes, &ExtrofitConfig::default())?;

    println!("after extrofitting with [love adore like] and [car truck]:");
    print_neighbors(&enriched.matrix, "love", 3)?;
    print_neighbors(&enriched.matrix, "car", 3)?;
    Ok(())
}
