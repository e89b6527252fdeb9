//! The two steps before the projection, shown on numbers small enough to
//! check by hand: expansion fills new columns with each row's mean, and
//! transfer replaces those values with their synonym-class average.
//!
//! ```sh
//! cargo run --example expand_transfer
//! ```

use extrofitting::{
    build_classes, expand, load_text_embeddings, representative, transfer, LoadOptions, Result,
    SynonymGraph,
};

fn main() -> Result<()> {
    let matrix = load_text_embeddings(
        "a 1.0 2.0 3.0\nb 4.0 4.0 4.0\nc 7.0 8.0 9.0\n".as_bytes(),
        &LoadOptions::default(),
    )?
    .matrix;

    for row in 0..matrix.len() {
        println!(
            "representative({}) = mean{:?} = {}",
            matrix.vocab().token(row),
            matrix.row(row).to_vec(),
            representative(matrix.row(row))
        );
    }

    let expanded = expand(&matrix, 1);
    println!("\nexpanded by one column:");
    for row in 0..matrix.len() {
        println!("  {} {:?}", matrix.vocab().token(row), expanded.matrix().row(row).to_vec());
    }

    // a and b are synonyms: their representative values 2 and 4 average to 3.
    let mut graph = SynonymGraph::new();
    graph.add_edge("a", "b");
    let classes = build_classes(&graph, matrix.vocab())?;
    let transferred = transfer(expanded, &classes)?;
    println!("\nafter transfer (a, b share one value; singleton c keeps its own):");
    for row in 0..matrix.len() {
        println!("  {} {:?}", matrix.vocab().token(row), transferred.matrix().row(row).to_vec());
    }
    Ok(())
}
