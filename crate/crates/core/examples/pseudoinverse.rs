//! Compact SVD and Moore-Penrose pseudoinverse of a rank-deficient complex matrix.

use framekit::matrix::{pinv, svd};
use framekit::{Matrix, Tolerance, C64};

fn main() -> framekit::Result<()> {
    let i = C64::new(0.0, 1.0);
    let one = C64::new(1.0, 0.0);
    // third row is the sum of the first two, so the rank is 2
    let m = Matrix::from_rows(&[
        vec![one, i, one * 2.0],
        vec![i, one, -i],
        vec![one + i, one + i, one * 2.0 - i],
    ])?;
    let tol = Tolerance::default();

    let f = svd(&m, &tol)?;
    println!("rank {}", f.rank);
    println!("singular values {:?}", f.singular_values);

    let mp = pinv(&m, &tol)?;
    let am = &m * &mp;
    let ma = &mp * &m;
    println!("|M M+ M - M|     = {:.2e}", (&am * &m).max_abs_diff(&m));
    println!("|M+ M M+ - M+|   = {:.2e}", (&ma * &mp).max_abs_diff(&mp));
    println!("|(M M+)* - M M+| = {:.2e}", am.hermitian_defect());
    println!("|(M+ M)* - M+ M| = {:.2e}", ma.hermitian_defect());
    Ok(())
}
