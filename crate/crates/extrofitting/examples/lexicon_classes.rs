//! Parsing a semantic lexicon against a vocabulary and building the synonym
//! classes used as LDA labels: connected components plus singletons.
//!
//! ```sh
//! cargo run --example lexicon_classes
//! ```

use extrofitting::{
    build_classes, load_lexicon, load_text_embeddings, LexiconOptions, LoadOptions, Result,
};

fn main() -> Result<()> {
    let vectors = "\
adore 1 0\nlove 0 1\nworship 1 1\ncherish 2 1\n\
car 3 0\nautomobile 0 3\nmoon 2 2\nstone 1 2\n";
    let matrix = load_text_embeddings(vectors.as_bytes(), &LoadOptions::default())?.matrix;

    // Lexicon lines as distributed with the retrofitting tool: a headword
    // followed by its synonyms.
    // `venerate` is out of vocabulary, so its edge is dropped; `love cherish`
    // chains the first two lines into one component.
    let lexicon = "\
adore love worship venerate\nlove cherish\ncar automobile\nmoon\n";
    let loaded = load_lexicon(
        lexicon.as_bytes(),
        matrix.vocab(),
        &LexiconOptions::default(),
    )?;
    println!(
        "edges kept: {}, dropped out-of-vocabulary: {}",
        loaded.graph.edge_count(),
        loaded.edges_dropped_oov
    );

    let classes = build_classes(&loaded.graph, matrix.vocab())?;
    println!(
        "classes: {} total, {} non-singleton, {} words extrofittable",
        classes.n_classes(),
        classes.n_nonsingleton_classes(),
        classes.n_words_in_nonsingleton_classes()
    );
    for word in ["adore", "car", "moon"] {
        println!("class of {word:<10} -> {:?}", classes.class_members(matrix.vocab(), word)?);
    }
    Ok(())
}
