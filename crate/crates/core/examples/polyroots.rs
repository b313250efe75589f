//! Polynomial roots and the spectral equations they solve.

use frv_varma::polyroots::{find_roots, Polynomial};
use frv_varma::solver::build_vma1_equation;
use frv_varma::Complex64;

fn main() -> frv_varma::Result<()> {
    let p = Polynomial::from_real(&[-6.0, 11.0, -6.0, 1.0]);
    println!("roots of (x-1)(x-2)(x-3): {:?}", find_roots(&p)?);

    let z = Complex64::new(1.1, 1e-8);
    let quartic = build_vma1_equation(z, 0.25, 1.0, 0.3);
    for root in find_roots(&quartic)? {
        println!("VMA(1) quartic root {root:.8}  residual {:.1e}", quartic.eval(root).norm());
    }
    Ok(())
}
