//! Verifies the shipped reproducing kernels and shows the reconstruction of the
//! order-4 kernel under different boundary conditions.

use rkhs_kse::kernels::{candidate_order4, reconstruct_kernel, verify_kernel, KernelFamily, PointCondition};

fn main() -> rkhs_kse::Result<()> {
    for family in [KernelFamily::order1(), KernelFamily::order2(), KernelFamily::order4()] {
        println!("order {} ({:?}):", family.order(), family.source());
        println!("{}", verify_kernel(family));
    }

    println!("candidate closed form of the order-4 kernel:");
    println!("{}", verify_kernel(&candidate_order4()));

    let dirichlet = reconstruct_kernel(4, &[PointCondition::value_at(0.0), PointCondition::value_at(1.0)])?;
    let shipped = KernelFamily::order4();
    println!("{:>6} {:>6} {:>18} {:>18}", "x", "y", "h(0)=h(1)=0", "+ h'(0)=0");
    for (x, y) in [(0.25, 0.25), (0.25, 0.75), (0.5, 0.5), (0.9, 0.1)] {
        println!("{x:>6} {y:>6} {:>18.12} {:>18.12}", dirichlet.value(x, y), shipped.value(x, y));
    }
    Ok(())
}
