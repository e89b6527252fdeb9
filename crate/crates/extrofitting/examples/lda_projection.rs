//! Linear discriminant analysis on labeled 2-D points: accumulate scatter
//! matrices, fit the discriminant direction, and compare the Fisher
//! objective at the fitted direction against random ones.
//!
//! ```sh
//! cargo run --example lda_projection
//! ```

use extrofitting::{
    accumulate_scatter, eigen_residuals, fisher_objective, lda_fit, lda_transform, Result,
    Weighting,
};
use ndarray::{array, Array2};
use rand::prelude::*;
use rand_chacha::ChaCha8Rng;

fn main() -> Result<()> {
    // Two classes separated along the first axis; the second axis is noise.
    let data = array![
        [0.0, 0.0],
        [0.0, 1.0],
        [0.2, 0.5],
        [4.0, 0.0],
        [4.0, 1.0],
        [3.8, 0.5],
    ];
    let labels = [0usize, 0, 0, 1, 1, 1];
    let scatter = accumulate_scatter(data.view(), &labels, 2, Weighting::ClassSize)?;
    println!("S_W:\n{:.3}", scatter.s_w);
    println!("S_B:\n{:.3}", scatter.s_b);

    let model = lda_fit(&scatter, 1, 0.0)?;
    let u = model.transform.column(0);
    println!(
        "discriminant direction: ({:+.4}, {:+.4}), eigenvalue {:.2}",
        u[0], u[1], model.eigenvalues[0]
    );
    println!("max eigen residual: {:.2e}", {
        let rs = eigen_residuals(&model, &scatter);
        rs.iter().cloned().fold(0.0, f64::max)
    });

    let projected = lda_transform(&model, data.view())?;
    println!("projected classes: {:?} | {:?}",
        projected.column(0).to_vec()[..3].iter().map(|v| (v * 100.0).round() / 100.0).collect::<Vec<_>>(),
        projected.column(0).to_vec()[3..].iter().map(|v| (v * 100.0).round() / 100.0).collect::<Vec<_>>());

    // The fitted direction maximizes the Fisher determinant ratio.
    let j_fit = fisher_objective(&scatter, model.transform.view(), 0.0)?;
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    let j_best_random = (0..1000)
        .filter_map(|_| {
            let dir = Array2::from_shape_fn((2, 1), |_| rng.gen_range(-1.0..1.0));
            fisher_objective(&scatter, dir.view(), 0.0).ok()
        })
        .fold(f64::MIN, f64::max);
    println!("J(fitted) = {j_fit:.2} vs best of 1000 random directions = {j_best_random:.2}");
    Ok(())
}
