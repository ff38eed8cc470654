use biquat::equations::Momentum;
use biquat::rarita_schwinger::rs_symbol;
use biquat::Frame;
use nalgebra::DMatrix;

/// Nullity of a dense real matrix from its singular values.
pub fn nullity(rows: &[Vec<f64>], cols: usize) -> usize {
    let m = DMatrix::from_fn(rows.len(), cols, |r, c| rows[r][c]);
    let sv = m.singular_values();
    let top = sv.iter().copied().fold(0.0, f64::max);
    let rank = sv.iter().filter(|&&s| s > 1e-9 * top.max(1.0)).count();
    cols - rank
}

/// `(after constraints, full solution)` real dimensions of the free plane-wave system.
pub fn dense_counts(p: &Momentum<f64>, f: &Frame<f64>) -> (usize, usize) {
    let (eqs, alg, dif) = rs_symbol(p, f).expect("on shell");
    let cons: Vec<Vec<f64>> = alg.iter().chain(dif.iter()).cloned().collect();
    let all: Vec<Vec<f64>> = cons.iter().chain(eqs.iter()).cloned().collect();
    (nullity(&cons, 32), nullity(&all, 32))
}

pub fn momenta() -> Vec<Momentum<f64>> {
    vec![
        Momentum::new(1.0, [0.0, 0.0, 0.0], 1.0),
        Momentum::new(1.25, [0.75, 0.0, 0.0], 1.0),
        Momentum::new(2.0, [1.0, 1.0, 1.0], 1.0),
        Momentum::new(3.0, [2.0, 2.0, 0.0], 1.0),
    ]
}
