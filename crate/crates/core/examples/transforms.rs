//! Closed-form M-transforms, the Green's function and the inverse law.

use frv_varma::transforms::m_transform_inverse_law;
use frv_varma::{Complex64, MTransform};

fn main() -> frv_varma::Result<()> {
    let z = Complex64::new(1.2, 0.3);
    let handles = [
        ("identity", MTransform::identity(1.0)),
        ("vma1", MTransform::vma1(1.0, 0.3)),
        ("var1", MTransform::var1(1.0, 0.5)),
        ("varma11", MTransform::varma11(1.0, 0.3, 0.2)),
    ];
    for (name, h) in handles {
        let m = h.eval(z)?;
        let g = h.green(z)?;
        let inv = m_transform_inverse_law(h.clone());
        let back = m_transform_inverse_law(inv.clone()).eval(z)?;
        println!(
            "{name:<8} M = {m:.6}  G = {g:.6}  M_inv = {:.6}  |involution error| = {:.1e}",
            inv.eval(z)?,
            (back - m).norm()
        );
    }
    Ok(())
}
