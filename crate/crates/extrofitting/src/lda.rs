//! Scatter-matrix accumulation and regularized linear discriminant analysis
//! for very many classes.
//!
//! The within-class scatter is the sum of per-class spreads around the class
//! means; the between-class scatter spreads class means around the grand
//! mean, either weighted by class size (the convention of common LDA
//! implementations, the default here) or unweighted. Singleton classes
//! contribute nothing to the within-class scatter but do enter the
//! between-class scatter, which is what lets a full vocabulary with mostly
//! singleton labels be projected.
//!
//! The fit solves the symmetric-definite generalized eigenproblem
//! `S_B u = e S_W' u` by Cholesky whitening: factor `S_W' = L L^T`, run a
//! symmetric eigensolve on `L^-1 S_B L^-T`, and back-substitute the
//! eigenvectors. `S_W'` is the shrunk within-class scatter
//! `(1-l) S_W + l (tr(S_W)/F) I`; if that still fails Cholesky the ridge is
//! escalated by decades until it factors.

use nalgebra::{DMatrix, DVector, SymmetricEigen};
use ndarray::{s, Array1, Array2, ArrayView2};

use crate::error::{Error, Result};

/// Between-class scatter weighting.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Weighting {
    /// `sum_c N_c (mu_c - mu)(mu_c - mu)^T`
    #[default]
    ClassSize,
    /// `sum_c (mu_c - mu)(mu_c - mu)^T`
    Unweighted,
}

impl std::str::FromStr for Weighting {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        match s {
            "class-size" => Ok(Self::ClassSize),
            "unweighted" => Ok(Self::Unweighted),
            other => Err(format!("unknown weighting {other:?} (expected class-size or unweighted)")),
        }
    }
}

/// Accumulated scatter matrices for one labeled data set.
#[derive(Debug, Clone)]
pub struct ScatterPair {
    /// Between-class scatter, F x F symmetric PSD.
    pub s_b: Array2<f64>,
    /// Within-class scatter, F x F symmetric PSD.
    pub s_w: Array2<f64>,
    /// Grand mean of the rows.
    pub grand_mean: Array1<f64>,
    pub n_samples: usize,
    pub n_classes: usize,
}

/// Rows per block when reducing outer-product sums through matrix products.
const CHUNK: usize = 1024;

/// Accumulates within- and between-class scatter in one streaming pass
/// structure (sizes and sums first, then blocked outer-product reduction in
/// fixed row order). Never materializes per-class copies of the data.
pub fn accumulate_scatter(
    data: ArrayView2<f64>,
    labels: &[usize],
    n_classes: usize,
    weighting: Weighting,
) -> Result<ScatterPair> {
    let (n, f) = data.dim();
    if labels.len() != n {
        return Err(Error::ShapeMismatch(format!(
            "{n} rows but {} labels",
            labels.len()
        )));
    }
    if n < 2 || f < 1 {
        return Err(Error::DegenerateInput(format!(
            "need at least 2 samples and 1 feature, got {n} x {f}"
        )));
    }
    if n_classes < 2 {
        return Err(Error::DegenerateInput(format!(
            "need at least 2 classes, got {n_classes}"
        )));
    }
    for &label in labels {
        if label >= n_classes {
            return Err(Error::LabelOutOfRange { label, n_classes });
        }
    }

    let mut class_size = vec![0usize; n_classes];
    let mut first_member = vec![usize::MAX; n_classes];
    for (row, &c) in labels.iter().enumerate() {
        if class_size[c] == 0 {
            first_member[c] = row;
        }
        class_size[c] += 1;
    }

    let mut grand_mean = Array1::<f64>::zeros(f);
    for row in data.rows() {
        grand_mean += &row;
    }
    grand_mean /= n as f64;

    // Means are only needed for classes with two or more members; singleton
    // class means are the rows themselves.
    let mut multi_slot = vec![usize::MAX; n_classes];
    let mut n_multi = 0usize;
    for (c, &size) in class_size.iter().enumerate() {
        if size > 1 {
            multi_slot[c] = n_multi;
            n_multi += 1;
        }
    }
    let mut multi_means = Array2::<f64>::zeros((n_multi, f));
    for (row, &c) in labels.iter().enumerate() {
        let slot = multi_slot[c];
        if slot != usize::MAX {
            let mut acc = multi_means.row_mut(slot);
            acc += &data.row(row);
        }
    }
    for (c, &slot) in multi_slot.iter().enumerate() {
        if slot != usize::MAX {
            let mut acc = multi_means.row_mut(slot);
            acc /= class_size[c] as f64;
        }
    }

    // S_W over rows of multi-member classes, reduced in fixed chunk order.
    let mut s_w = Array2::<f64>::zeros((f, f));
    let mut buf = Array2::<f64>::zeros((CHUNK, f));
    let mut filled = 0usize;
    for (row, &c) in labels.iter().enumerate() {
        let slot = multi_slot[c];
        if slot == usize::MAX {
            continue;
        }
        let mut dst = buf.row_mut(filled);
        dst.assign(&data.row(row));
        dst -= &multi_means.row(slot);
        filled += 1;
        if filled == CHUNK {
            accumulate_gram(&mut s_w, buf.view());
            filled = 0;
        }
    }
    if filled > 0 {
        accumulate_gram(&mut s_w, buf.slice(s![..filled, ..]));
    }

    // S_B over all classes in id order, scaled by sqrt of the class weight.
    let mut s_b = Array2::<f64>::zeros((f, f));
    filled = 0;
    for c in 0..n_classes {
        if class_size[c] == 0 {
            continue;
        }
        let weight = match weighting {
            Weighting::ClassSize => class_size[c] as f64,
            Weighting::Unweighted => 1.0,
        };
        let scale = weight.sqrt();
        let mut dst = buf.row_mut(filled);
        let slot = multi_slot[c];
        if slot == usize::MAX {
            dst.assign(&data.row(first_member[c]));
        } else {
            dst.assign(&multi_means.row(slot));
        }
        dst -= &grand_mean;
        dst *= scale;
        filled += 1;
        if filled == CHUNK {
            accumulate_gram(&mut s_b, buf.view());
            filled = 0;
        }
    }
    if filled > 0 {
        accumulate_gram(&mut s_b, buf.slice(s![..filled, ..]));
    }

    symmetrize(&mut s_w);
    symmetrize(&mut s_b);

    Ok(ScatterPair { s_b, s_w, grand_mean, n_samples: n, n_classes })
}

/// `acc += block^T block`
fn accumulate_gram(acc: &mut Array2<f64>, block: ArrayView2<f64>) {
    ndarray::linalg::general_mat_mul(1.0, &block.t(), &block, 1.0, acc);
}

fn symmetrize(m: &mut Array2<f64>) {
    let n = m.nrows();
    for i in 0..n {
        for j in (i + 1)..n {
            let v = 0.5 * (m[[i, j]] + m[[j, i]]);
            m[[i, j]] = v;
            m[[j, i]] = v;
        }
    }
}

/// Fitted LDA projection.
#[derive(Debug, Clone)]
pub struct LdaModel {
    /// F x q matrix whose columns are generalized eigenvectors, descending
    /// eigenvalue order, each with its largest-magnitude entry positive.
    pub transform: Array2<f64>,
    /// Generalized eigenvalues, descending, clamped at zero.
    pub eigenvalues: Vec<f64>,
    /// Shrinkage used to form the within-class metric.
    pub shrinkage: f64,
    /// Extra ridge that had to be added before Cholesky succeeded (usually 0).
    pub ridge: f64,
    pub in_dim: usize,
    pub out_dim: usize,
}

/// `(1-shrinkage) S_W + shrinkage (tr(S_W)/F) I`, plus an optional ridge.
pub fn shrunk_within(scatter: &ScatterPair, shrinkage: f64, ridge: f64) -> Array2<f64> {
    let f = scatter.s_w.nrows();
    let target = scatter.s_w.diag().sum() / f as f64;
    let mut out = scatter.s_w.mapv(|v| (1.0 - shrinkage) * v);
    for i in 0..f {
        out[[i, i]] += shrinkage * target + ridge;
    }
    out
}

/// Fits the top `out_dim` discriminant directions.
pub fn lda_fit(scatter: &ScatterPair, out_dim: usize, shrinkage: f64) -> Result<LdaModel> {
    let f = scatter.s_w.nrows();
    let max_dim = f.min(scatter.n_classes - 1);
    if out_dim < 1 || out_dim > max_dim {
        return Err(Error::BadDimension(format!(
            "out_dim {out_dim} not in 1..={max_dim} (F = {f}, classes = {})",
            scatter.n_classes
        )));
    }
    if !(0.0..=1.0).contains(&shrinkage) {
        return Err(Error::BadDimension(format!(
            "shrinkage {shrinkage} outside [0, 1]"
        )));
    }

    let trace = scatter.s_w.diag().sum();
    // trace(S_W) = 0 is legal (e.g. every class a singleton or internally
    // identical); fall back to a unit ridge scale so escalation can work.
    let ridge_unit = if trace > 0.0 { trace / f as f64 } else { 1.0 };
    let base = shrunk_within(scatter, shrinkage, 0.0);
    let base_na = DMatrix::from_row_iterator(f, f, base.iter().copied());

    let mut ridge = 0.0f64;
    let chol = loop {
        let mut candidate = base_na.clone();
        for i in 0..f {
            candidate[(i, i)] += ridge;
        }
        match nalgebra::Cholesky::new(candidate) {
            Some(c) => break c,
            None => {
                ridge = if ridge == 0.0 { 1e-8 * ridge_unit } else { ridge * 10.0 };
                if ridge > 1e-2 * ridge_unit {
                    return Err(Error::RankDeficient { ridge });
                }
            }
        }
    };

    let l = chol.l();
    let s_b_na = DMatrix::from_row_iterator(f, f, scatter.s_b.iter().copied());
    // M = L^-1 S_B L^-T, via two triangular solves (S_B is symmetric).
    let y = l
        .solve_lower_triangular(&s_b_na)
        .expect("Cholesky factor has positive diagonal");
    let mut m = l
        .solve_lower_triangular(&y.transpose())
        .expect("Cholesky factor has positive diagonal");
    m = 0.5 * (&m + m.transpose());

    let eig = SymmetricEigen::new(m);
    let mut order: Vec<usize> = (0..f).collect();
    order.sort_by(|&a, &b| {
        eig.eigenvalues[b]
            .total_cmp(&eig.eigenvalues[a])
            .then(a.cmp(&b))
    });

    let mut transform = Array2::<f64>::zeros((f, out_dim));
    let mut eigenvalues = Vec::with_capacity(out_dim);
    for (col, &idx) in order.iter().take(out_dim).enumerate() {
        eigenvalues.push(eig.eigenvalues[idx].max(0.0));
        let v = DVector::from_column_slice(eig.eigenvectors.column(idx).as_slice());
        let u = l
            .tr_solve_lower_triangular(&v)
            .expect("Cholesky factor has positive diagonal");
        // Sign convention: the largest-magnitude entry is positive.
        let mut pivot = 0usize;
        for i in 1..f {
            if u[i].abs() > u[pivot].abs() {
                pivot = i;
            }
        }
        let flip = if u[pivot] < 0.0 { -1.0 } else { 1.0 };
        for i in 0..f {
            transform[[i, col]] = flip * u[i];
        }
    }

    Ok(LdaModel {
        transform,
        eigenvalues,
        shrinkage,
        ridge,
        in_dim: f,
        out_dim,
    })
}

/// Projects rows: returns `data . U` (one output row per input row, the
/// row-vector form of `y = U^T x`).
pub fn lda_transform(model: &LdaModel, data: ArrayView2<f64>) -> Result<Array2<f64>> {
    if data.ncols() != model.in_dim {
        return Err(Error::BadDimension(format!(
            "data has {} columns, model expects {}",
            data.ncols(),
            model.in_dim
        )));
    }
    Ok(data.dot(&model.transform))
}

/// Fisher determinant-ratio objective `|U^T S_B U| / |U^T S_W' U|` for an
/// arbitrary set of directions, with the same shrinkage convention as the fit.
pub fn fisher_objective(
    scatter: &ScatterPair,
    directions: ArrayView2<f64>,
    shrinkage: f64,
) -> Result<f64> {
    let f = scatter.s_w.nrows();
    if directions.nrows() != f || directions.ncols() < 1 || directions.ncols() > f {
        return Err(Error::BadDimension(format!(
            "directions must be {f} x q with 1 <= q <= {f}, got {} x {}",
            directions.nrows(),
            directions.ncols()
        )));
    }
    let s_wp = shrunk_within(scatter, shrinkage, 0.0);
    let num = directions.t().dot(&scatter.s_b).dot(&directions);
    let den = directions.t().dot(&s_wp).dot(&directions);
    let q = directions.ncols();
    let det = |a: &Array2<f64>| {
        DMatrix::from_row_iterator(q, q, a.iter().copied()).determinant()
    };
    let den_det = det(&den);
    if !den_det.is_finite() || den_det.abs() < f64::MIN_POSITIVE {
        return Err(Error::SingularDenominator);
    }
    Ok(det(&num) / den_det)
}

/// Relative residuals `|S_B u - e S_W'' u| / |S_B u|` per fitted column,
/// where `S_W''` includes the ridge the fit actually used.
pub fn eigen_residuals(model: &LdaModel, scatter: &ScatterPair) -> Vec<f64> {
    let s_wpp = shrunk_within(scatter, model.shrinkage, model.ridge);
    let bu = scatter.s_b.dot(&model.transform);
    let wu = s_wpp.dot(&model.transform);
    (0..model.out_dim)
        .map(|c| {
            let num: f64 = (0..model.in_dim)
                .map(|i| {
                    let r = bu[[i, c]] - model.eigenvalues[c] * wu[[i, c]];
                    r * r
                })
                .sum::<f64>()
                .sqrt();
            let den: f64 = bu.column(c).iter().map(|v| v * v).sum::<f64>().sqrt();
            if den > 0.0 {
                num / den
            } else {
                num
            }
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;
    use ndarray::{array, Array1};
    use rand::prelude::*;
    use rand_chacha::ChaCha8Rng;

    /// Definition-following oracle: per-class loops, no reductions shared
    /// with the implementation.
    fn naive_scatter(
        data: &Array2<f64>,
        labels: &[usize],
        n_classes: usize,
        weighting: Weighting,
    ) -> (Array2<f64>, Array2<f64>, Array1<f64>) {
        let (n, f) = data.dim();
        let mut mu = Array1::<f64>::zeros(f);
        for row in data.rows() {
            mu += &row;
        }
        mu /= n as f64;
        let mut s_w = Array2::<f64>::zeros((f, f));
        let mut s_b = Array2::<f64>::zeros((f, f));
        for c in 0..n_classes {
            let members: Vec<usize> =
                (0..n).filter(|&r| labels[r] == c).collect();
            if members.is_empty() {
                continue;
            }
            let mut mean_c = Array1::<f64>::zeros(f);
            for &r in &members {
                mean_c += &data.row(r);
            }
            mean_c /= members.len() as f64;
            for &r in &members {
                let d = &data.row(r) - &mean_c;
                for i in 0..f {
                    for j in 0..f {
                        s_w[[i, j]] += d[i] * d[j];
                    }
                }
            }
            let dm = &mean_c - &mu;
            let w = match weighting {
                Weighting::ClassSize => members.len() as f64,
                Weighting::Unweighted => 1.0,
            };
            for i in 0..f {
                for j in 0..f {
                    s_b[[i, j]] += w * dm[i] * dm[j];
                }
            }
        }
        (s_b, s_w, mu)
    }

    fn random_fixture(
        rng: &mut ChaCha8Rng,
        n: usize,
        f: usize,
        n_classes: usize,
    ) -> (Array2<f64>, Vec<usize>) {
        let data = Array2::from_shape_fn((n, f), |_| rng.gen_range(-2.0..2.0));
        // Every class appears at least once.
        let mut labels: Vec<usize> = (0..n).map(|i| i % n_classes).collect();
        labels.shuffle(rng);
        (data, labels)
    }

    #[test]
    fn hand_computed_one_dimensional_scatter() {
        let data = array![[0.0], [2.0], [4.0], [6.0]];
        let labels = [0usize, 0, 1, 1];
        let sp = accumulate_scatter(data.view(), &labels, 2, Weighting::ClassSize).unwrap();
        assert_abs_diff_eq!(sp.s_w[[0, 0]], 4.0, epsilon = 1e-12);
        assert_abs_diff_eq!(sp.s_b[[0, 0]], 16.0, epsilon = 1e-12);
        assert_abs_diff_eq!(sp.grand_mean[0], 3.0, epsilon = 1e-12);

        let sp = accumulate_scatter(data.view(), &labels, 2, Weighting::Unweighted).unwrap();
        assert_abs_diff_eq!(sp.s_b[[0, 0]], 8.0, epsilon = 1e-12);
    }

    #[test]
    fn identical_rows_give_zero_scatter() {
        let data = array![[1.0, 2.0], [1.0, 2.0], [1.0, 2.0], [1.0, 2.0]];
        let labels = [0usize, 0, 1, 1];
        let sp = accumulate_scatter(data.view(), &labels, 2, Weighting::ClassSize).unwrap();
        assert!(sp.s_w.iter().all(|v| v.abs() < 1e-14));
        assert!(sp.s_b.iter().all(|v| v.abs() < 1e-14));
    }

    #[test]
    fn matches_definition_oracle() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for &(n, f, k) in &[(20usize, 3usize, 4usize), (57, 8, 9), (2100, 5, 40)] {
            for weighting in [Weighting::ClassSize, Weighting::Unweighted] {
                let (data, labels) = random_fixture(&mut rng, n, f, k);
                let sp = accumulate_scatter(data.view(), &labels, k, weighting).unwrap();
                let (s_b, s_w, mu) = naive_scatter(&data, &labels, k, weighting);
                let scale = sp.s_w.iter().map(|v| v.abs()).fold(0.0, f64::max).max(1.0);
                for i in 0..f {
                    assert_abs_diff_eq!(sp.grand_mean[i], mu[i], epsilon = 1e-10);
                    for j in 0..f {
                        assert_abs_diff_eq!(sp.s_w[[i, j]], s_w[[i, j]], epsilon = 1e-9 * scale);
                        assert_abs_diff_eq!(sp.s_b[[i, j]], s_b[[i, j]], epsilon = 1e-9 * scale);
                    }
                }
            }
        }
    }

    #[test]
    fn weighted_decomposition_equals_total_scatter() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for &(n, f, k) in &[(40usize, 6usize, 5usize), (200, 20, 17)] {
            let (data, labels) = random_fixture(&mut rng, n, f, k);
            let sp = accumulate_scatter(data.view(), &labels, k, Weighting::ClassSize).unwrap();
            // Independent total-scatter route.
            let mut mu = Array1::<f64>::zeros(f);
            for row in data.rows() {
                mu += &row;
            }
            mu /= n as f64;
            let mut total = Array2::<f64>::zeros((f, f));
            for row in data.rows() {
                let d = &row - &mu;
                for i in 0..f {
                    for j in 0..f {
                        total[[i, j]] += d[i] * d[j];
                    }
                }
            }
            let norm = total.iter().map(|v| v.abs()).fold(0.0, f64::max);
            for i in 0..f {
                for j in 0..f {
                    let got = sp.s_b[[i, j]] + sp.s_w[[i, j]];
                    assert!(
                        (got - total[[i, j]]).abs() <= 1e-8 * norm,
                        "decomposition off at ({i},{j}): {got} vs {}",
                        total[[i, j]]
                    );
                }
            }
        }
    }

    #[test]
    fn permutation_invariance() {
        let mut rng = ChaCha8Rng::seed_from_u64(13);
        let (data, labels) = random_fixture(&mut rng, 150, 7, 12);
        let sp = accumulate_scatter(data.view(), &labels, 12, Weighting::ClassSize).unwrap();

        let mut perm: Vec<usize> = (0..150).collect();
        perm.shuffle(&mut rng);
        let data_p = Array2::from_shape_fn((150, 7), |(i, j)| data[[perm[i], j]]);
        let labels_p: Vec<usize> = perm.iter().map(|&i| labels[i]).collect();
        let sp_p = accumulate_scatter(data_p.view(), &labels_p, 12, Weighting::ClassSize).unwrap();

        let norm = sp.s_w.iter().map(|v| v.abs()).fold(0.0, f64::max);
        for i in 0..7 {
            for j in 0..7 {
                assert!((sp.s_w[[i, j]] - sp_p.s_w[[i, j]]).abs() <= 1e-10 * norm);
                assert!((sp.s_b[[i, j]] - sp_p.s_b[[i, j]]).abs() <= 1e-10 * norm);
            }
        }
    }

    #[test]
    fn scatter_input_validation() {
        let data = array![[1.0], [2.0]];
        assert!(matches!(
            accumulate_scatter(data.view(), &[0, 5], 2, Weighting::ClassSize),
            Err(Error::LabelOutOfRange { label: 5, .. })
        ));
        assert!(matches!(
            accumulate_scatter(data.view(), &[0, 0], 1, Weighting::ClassSize),
            Err(Error::DegenerateInput(_))
        ));
        let one = array![[1.0]];
        assert!(matches!(
            accumulate_scatter(one.view(), &[0], 2, Weighting::ClassSize),
            Err(Error::DegenerateInput(_))
        ));
    }

    /// Brute-force 1-degree sweep of the Fisher ratio over unit directions.
    fn grid_best_direction(sp: &ScatterPair) -> (f64, f64) {
        let mut best = (f64::MIN, 0.0);
        for deg in 0..180 {
            let theta = (deg as f64).to_radians();
            let w = array![[theta.cos()], [theta.sin()]];
            let num = w.t().dot(&sp.s_b).dot(&w)[[0, 0]];
            let den = w.t().dot(&sp.s_w).dot(&w)[[0, 0]] + 1e-12;
            let j = num / den;
            if j > best.0 {
                best = (j, theta);
            }
        }
        (best.1, best.0)
    }

    #[test]
    fn recovers_separable_direction_within_one_degree() {
        let data = array![[0.0, 0.0], [0.0, 1.0], [4.0, 0.0], [4.0, 1.0]];
        let labels = [0usize, 0, 1, 1];
        let sp = accumulate_scatter(data.view(), &labels, 2, Weighting::ClassSize).unwrap();
        let model = lda_fit(&sp, 1, 0.0).unwrap();

        let u = model.transform.column(0);
        let fitted_angle = u[1].atan2(u[0]).rem_euclid(std::f64::consts::PI);
        let (grid_angle, _) = grid_best_direction(&sp);
        let diff = (fitted_angle - grid_angle).abs();
        let diff = diff.min(std::f64::consts::PI - diff);
        assert!(diff.to_degrees() <= 1.0, "fitted {fitted_angle} vs grid {grid_angle}");
        // Sign convention: dominant component positive.
        assert!(u[0] > 0.0);
        assert!(u[1].abs() < 1e-6 * u[0].abs());
    }

    #[test]
    fn separated_gaussians_dominate_and_beat_random_directions() {
        let mut rng = ChaCha8Rng::seed_from_u64(17);
        let n = 400;
        let mut data = Array2::<f64>::zeros((n, 3));
        let mut labels = vec![0usize; n];
        for i in 0..n {
            let class = i % 2;
            labels[i] = class;
            let shift = if class == 0 { -5.0 } else { 5.0 };
            data[[i, 0]] = shift + rng.gen_range(-1.0..1.0);
            data[[i, 1]] = rng.gen_range(-1.0..1.0);
            data[[i, 2]] = rng.gen_range(-1.0..1.0);
        }
        let sp = accumulate_scatter(data.view(), &labels, 2, Weighting::ClassSize).unwrap();
        let model = lda_fit(&sp, 1, 1e-4).unwrap();
        assert!(model.eigenvalues[0] > 10.0, "top eigenvalue {}", model.eigenvalues[0]);

        let j_fit = fisher_objective(&sp, model.transform.view(), 1e-4).unwrap();
        for _ in 0..1000 {
            let v = Array2::from_shape_fn((3, 1), |_| rng.gen_range(-1.0..1.0));
            if v.iter().all(|x: &f64| x.abs() < 1e-9) {
                continue;
            }
            let j = fisher_objective(&sp, v.view(), 1e-4).unwrap();
            assert!(j <= j_fit * (1.0 + 1e-9), "random direction beat the fit: {j} > {j_fit}");
        }
    }

    #[test]
    fn zero_between_scatter_gives_zero_eigenvalues_and_metric_orthonormality() {
        // Class means coincide: S_B = 0.
        let data = array![
            [1.0, 0.0],
            [-1.0, 0.0],
            [0.0, 2.0],
            [0.0, -2.0]
        ];
        let labels = [0usize, 0, 1, 1];
        let sp = accumulate_scatter(data.view(), &labels, 2, Weighting::ClassSize).unwrap();
        assert!(sp.s_b.iter().all(|v| v.abs() < 1e-12));
        let model = lda_fit(&sp, 1, 1e-4).unwrap();
        assert!(model.eigenvalues[0].abs() < 1e-10);
        let s_wpp = shrunk_within(&sp, model.shrinkage, model.ridge);
        let gram = model.transform.t().dot(&s_wpp).dot(&model.transform);
        assert_abs_diff_eq!(gram[[0, 0]], 1.0, epsilon = 1e-8);
    }

    #[test]
    fn eigen_residuals_within_bound_on_random_fits() {
        let mut rng = ChaCha8Rng::seed_from_u64(23);
        for &(n, f, k, q) in &[(60usize, 4usize, 8usize, 3usize), (200, 10, 30, 10), (90, 6, 7, 6)] {
            let (data, labels) = random_fixture(&mut rng, n, f, k);
            let sp = accumulate_scatter(data.view(), &labels, k, Weighting::ClassSize).unwrap();
            let model = lda_fit(&sp, q, 1e-4).unwrap();
            for (c, r) in eigen_residuals(&model, &sp).iter().enumerate() {
                assert!(*r <= 1e-6, "column {c} residual {r}");
            }
            // Eigenvalues descending and non-negative.
            for w in model.eigenvalues.windows(2) {
                assert!(w[0] >= w[1]);
            }
            assert!(model.eigenvalues.iter().all(|&e| e >= 0.0));
        }
    }

    #[test]
    fn eigenvalue_product_matches_determinant_ratio() {
        let mut rng = ChaCha8Rng::seed_from_u64(29);
        for &f in &[2usize, 5, 10] {
            let k = f + 3; // ensure q = min(F, k - 1) = F
            let (data, labels) = random_fixture(&mut rng, 30 * f, f, k);
            let sp = accumulate_scatter(data.view(), &labels, k, Weighting::ClassSize).unwrap();
            let model = lda_fit(&sp, f, 0.0).unwrap();
            assert_eq!(model.ridge, 0.0);
            let product: f64 = model.eigenvalues.iter().product();
            let det = |a: &Array2<f64>| {
                DMatrix::from_row_iterator(f, f, a.iter().copied()).determinant()
            };
            let expected = det(&sp.s_b) / det(&sp.s_w);
            assert!(
                (product - expected).abs() <= 1e-6 * expected.abs().max(1e-30),
                "F={f}: product {product} vs det ratio {expected}"
            );
        }
    }

    #[test]
    fn fit_is_bitwise_deterministic() {
        let mut rng = ChaCha8Rng::seed_from_u64(31);
        let (data, labels) = random_fixture(&mut rng, 80, 5, 9);
        let sp1 = accumulate_scatter(data.view(), &labels, 9, Weighting::ClassSize).unwrap();
        let sp2 = accumulate_scatter(data.view(), &labels, 9, Weighting::ClassSize).unwrap();
        let m1 = lda_fit(&sp1, 4, 1e-4).unwrap();
        let m2 = lda_fit(&sp2, 4, 1e-4).unwrap();
        assert_eq!(m1.transform, m2.transform);
        assert_eq!(m1.eigenvalues, m2.eigenvalues);
    }

    #[test]
    fn fit_dimension_validation() {
        let data = array![[0.0], [1.0], [2.0], [3.0]];
        let labels = [0usize, 0, 1, 1];
        let sp = accumulate_scatter(data.view(), &labels, 2, Weighting::ClassSize).unwrap();
        assert!(matches!(lda_fit(&sp, 0, 0.0), Err(Error::BadDimension(_))));
        assert!(matches!(lda_fit(&sp, 2, 0.0), Err(Error::BadDimension(_))));
        assert!(matches!(lda_fit(&sp, 1, 1.5), Err(Error::BadDimension(_))));
    }

    #[test]
    fn rank_deficient_when_ridge_cannot_rescue() {
        // Hand-built invalid within-scatter with a strongly negative mode.
        let sp = ScatterPair {
            s_b: array![[1.0, 0.0], [0.0, 1.0]],
            s_w: array![[1.0, 0.0], [0.0, -5.0]],
            grand_mean: array![0.0, 0.0],
            n_samples: 4,
            n_classes: 3,
        };
        assert!(matches!(lda_fit(&sp, 1, 0.0), Err(Error::RankDeficient { .. })));
    }

    #[test]
    fn zero_within_scatter_falls_back_to_unit_ridge() {
        // Singletons plus one identical pair: S_W is exactly zero.
        let data = array![[1.0, 0.0], [1.0, 0.0], [0.0, 3.0], [2.0, -1.0]];
        let labels = [0usize, 0, 1, 2];
        let sp = accumulate_scatter(data.view(), &labels, 3, Weighting::ClassSize).unwrap();
        assert!(sp.s_w.iter().all(|v| *v == 0.0));
        let model = lda_fit(&sp, 2, 1e-4).unwrap();
        assert!(model.ridge > 0.0);
        assert!(model.eigenvalues[0].is_finite());
    }

    #[test]
    fn transform_selects_coordinates_for_identity_model() {
        let model = LdaModel {
            transform: array![[1.0, 0.0], [0.0, 1.0], [0.0, 0.0]],
            eigenvalues: vec![1.0, 1.0],
            shrinkage: 0.0,
            ridge: 0.0,
            in_dim: 3,
            out_dim: 2,
        };
        let data = array![[5.0, 6.0, 7.0]];
        let out = lda_transform(&model, data.view()).unwrap();
        assert_eq!(out, array![[5.0, 6.0]]);
        let bad = array![[1.0, 2.0]];
        assert!(matches!(
            lda_transform(&model, bad.view()),
            Err(Error::BadDimension(_))
        ));
    }

    #[test]
    fn single_row_transform_is_componentwise_projection() {
        let mut rng = ChaCha8Rng::seed_from_u64(37);
        let (data, labels) = random_fixture(&mut rng, 40, 4, 6);
        let sp = accumulate_scatter(data.view(), &labels, 6, Weighting::ClassSize).unwrap();
        let model = lda_fit(&sp, 3, 1e-4).unwrap();
        let x = data.slice(s![..1, ..]);
        let y = lda_transform(&model, x).unwrap();
        for c in 0..3 {
            let expected: f64 = (0..4).map(|i| x[[0, i]] * model.transform[[i, c]]).sum();
            assert_abs_diff_eq!(y[[0, c]], expected, epsilon = 1e-12);
        }
    }

    #[test]
    fn projection_ranks_top_direction_first_for_class_separation() {
        let mut rng = ChaCha8Rng::seed_from_u64(41);
        let n = 300;
        let mut data = Array2::<f64>::zeros((n, 4));
        let mut labels = vec![0usize; n];
        for i in 0..n {
            let class = i % 3;
            labels[i] = class;
            data[[i, 0]] = 3.0 * class as f64 + rng.gen_range(-0.5..0.5);
            data[[i, 1]] = 0.8 * class as f64 + rng.gen_range(-0.5..0.5);
            for j in 2..4 {
                data[[i, j]] = rng.gen_range(-0.5..0.5);
            }
        }
        let sp = accumulate_scatter(data.view(), &labels, 3, Weighting::ClassSize).unwrap();
        let model = lda_fit(&sp, 2, 1e-4).unwrap();
        let projected = lda_transform(&model, data.view()).unwrap();
        let sp2 = accumulate_scatter(projected.view(), &labels, 3, Weighting::ClassSize).unwrap();
        // Between-class separation concentrates in the first projected axis.
        assert!(sp2.s_b[[0, 0]] > sp2.s_b[[1, 1]]);
    }

    #[test]
    fn fisher_objective_hand_value_and_scale_invariance() {
        let sp = ScatterPair {
            s_b: array![[16.0]],
            s_w: array![[4.0]],
            grand_mean: array![3.0],
            n_samples: 4,
            n_classes: 2,
        };
        let dir = array![[1.0]];
        let j = fisher_objective(&sp, dir.view(), 1e-4).unwrap();
        assert_abs_diff_eq!(j, 4.0, epsilon = 1e-12);
        // Scaling directions by c != 0 leaves J unchanged.
        let scaled = array![[-7.5]];
        let j2 = fisher_objective(&sp, scaled.view(), 1e-4).unwrap();
        assert_abs_diff_eq!(j, j2, epsilon = 1e-12);
    }

    #[test]
    fn fisher_objective_singular_denominator() {
        let sp = ScatterPair {
            s_b: array![[1.0, 0.0], [0.0, 1.0]],
            s_w: array![[0.0, 0.0], [0.0, 0.0]],
            grand_mean: array![0.0, 0.0],
            n_samples: 4,
            n_classes: 3,
        };
        let dir = array![[1.0], [0.0]];
        assert!(matches!(
            fisher_objective(&sp, dir.view(), 0.0),
            Err(Error::SingularDenominator)
        ));
    }
}
