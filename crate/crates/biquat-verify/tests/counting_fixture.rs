mod common;

use biquat::frame::make_frame;
use biquat::Frame;
use biquat_verify::suites::rs::ORACLE_SOLUTION_DIM;

#[test]
fn dense_solution_dimension_matches_fixture() {
    let s = 0.5f64.sqrt();
    let frames = [Frame::standard(), make_frame([s, s, 0.0], [0.0, 0.0, 1.0]).unwrap()];
    for f in &frames {
        for p in common::momenta() {
            let (after, sol) = common::dense_counts(&p, f);
            assert_eq!(after, 16, "{p:?}");
            assert_eq!(sol, ORACLE_SOLUTION_DIM, "{p:?}");
        }
    }
}

#[test]
fn nullity_of_small_matrices() {
    assert_eq!(common::nullity(&[vec![1.0, 2.0], vec![2.0, 4.0]], 2), 1);
    assert_eq!(common::nullity(&[vec![1.0, 0.0, 0.0]], 3), 2);
}
