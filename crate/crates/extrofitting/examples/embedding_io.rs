//! Loading and saving the whitespace-separated embedding text formats:
//! headerless GloVe style, the two-integer Word2Vec header, duplicate
//! handling, and fixed-point round trips.
//!
//! ```sh
//! cargo run --example embedding_io
//! ```

use extrofitting::{
    load_text_embeddings, save_text_embeddings, DuplicatePolicy, LoadOptions, Precision, Result,
};

fn main() -> Result<()> {
    // GloVe style: no header, dimension inferred from the first line.
    let glove_style = "the 0.418 0.24968 -0.41242\nof 0.70853 0.57088 -0.4716\n";
    let loaded = load_text_embeddings(glove_style.as_bytes(), &LoadOptions::default())?;
    println!(
        "headerless: {} words x {} dims, the[0] = {}",
        loaded.matrix.len(),
        loaded.matrix.dim(),
        loaded.matrix.lookup("the").unwrap()[0]
    );

    // Word2Vec text export: the `N D` first line is detected and skipped.
    let w2v_style = "2 3\nking 0.1 0.2 0.3\nqueen 0.4 0.5 0.6\n";
    let loaded = load_text_embeddings(w2v_style.as_bytes(), &LoadOptions::default())?;
    println!("with header: {} words x {} dims", loaded.matrix.len(), loaded.matrix.dim());

    // Lowercasing merges case variants; the first occurrence wins.
    let options = LoadOptions { lowercase: true, on_duplicate: DuplicatePolicy::KeepFirst };
    let cased = "Paris 1.0 2.0\nparis 9.0 9.0\nLondon 3.0 4.0\n";
    let loaded = load_text_embeddings(cased.as_bytes(), &options)?;
    println!(
        "lowercased: kept {} words, dropped {} duplicates, paris = {:?}",
        loaded.matrix.len(),
        loaded.duplicates_dropped,
        loaded.matrix.lookup("paris").unwrap().to_vec()
    );

    // Round trip at six decimals, then at full precision.
    let mut six = Vec::new();
    save_text_embeddings(&loaded.matrix, &mut six, Precision::Fixed(6))?;
    print!("{}", String::from_utf8_lossy(&six));
    let reloaded = load_text_embeddings(&six[..], &LoadOptions::default())?.matrix;
    println!("six-decimal reload matches to 1e-6: {}", {
        let mut ok = true;
        for (a, b) in reloaded.data().iter().zip(loaded.matrix.data().iter()) {
            ok &= (a - b).abs() <= 5e-7;
        }
        ok
    });

    let mut full = Vec::new();
    save_text_embeddings(&loaded.matrix, &mut full, Precision::Full)?;
    let exact = load_text_embeddings(&full[..], &LoadOptions::default())?.matrix;
    println!("full-precision reload is bit-exact: {}", exact == loaded.matrix);
    Ok(())
}
