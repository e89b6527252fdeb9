//! Word-similarity evaluation: parse a benchmark-style dataset, score each
//! pair with cosine similarity, skip out-of-vocabulary pairs, and report
//! Spearman's rank correlation against the human judgements.
//!
//! ```sh
//! cargo run --example word_similarity
//! ```

use extrofitting::{
    evaluate, load_dataset, load_text_embeddings, spearman, DatasetFormat, DatasetOptions,
    LoadOptions, Result,
};

fn main() -> Result<()> {
    let vectors = "\
tiger 0.9 0.1 0.1\ncat 0.8 0.3 0.2\ndog 0.7 0.4 0.1\n\
car 0.1 0.9 0.2\njourney 0.2 0.7 0.6\nvoyage 0.1 0.8 0.5\n";
    let matrix = load_text_embeddings(vectors.as_bytes(), &LoadOptions::default())?.matrix;

    // Generic 3-column TSV; `unicorn` is out of vocabulary and gets skipped.
    let dataset_text = "\
tiger\tcat\t7.35\ntiger\tdog\t4.5\njourney\tvoyage\t9.29\n\
car\tjourney\t5.9\ncat\tcar\t1.0\ntiger\tunicorn\t6.0\n";
    let loaded = load_dataset(
        dataset_text.as_bytes(),
        DatasetFormat::Generic,
        &DatasetOptions::default(),
    )?;
    let report = evaluate(&matrix, &loaded.dataset)?;
    println!(
        "{}: spearman {:+.4} over {} pairs ({} skipped as OOV)",
        report.dataset, report.spearman, report.n_scored, report.n_skipped_oov
    );

    // The statistic itself, with average-rank tie handling.
    let rho = spearman(&[1.0, 2.0, 2.0, 4.0], &[1.0, 3.0, 2.0, 4.0])?;
    println!("spearman([1,2,2,4], [1,3,2,4]) = {rho:.4} (ties take average ranks)");

    // Invariant under any strictly increasing rescoring.
    let xs = [0.1, 0.5, 0.3, 0.9];
    let ys = [10.0f64, 30.0, 25.0, 80.0];
    let stretched: Vec<f64> = ys.iter().map(|v| v * v * v).collect();
    println!(
        "rank correlation survives monotone transforms: {:.4} == {:.4}",
        spearman(&xs, &ys)?,
        spearman(&xs, &stretched)?
    );
    Ok(())
}
