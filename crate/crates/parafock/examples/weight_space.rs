//! Matrix elements of one generator, then a whole weight space.
//!
//! Run with `cargo run --example weight_space`.

use parafock::action::{act, GeneratorKind};
use parafock::partition::WeightVector;
use parafock::tableau::Ssyt;
use parafock::{Int, IntBasisContext};

fn main() -> parafock::Result<()> {
    // Matrix elements of X_1 on ω_[2,3;4] at order p = 2.
    let a: Ssyt = "2,3;4".parse()?;
    let table = act::<Int>(GeneratorKind::X, 1, &a, 2)?;
    println!("{}", GeneratorKind::X.label(1));
    for (b, c) in table.entries() {
        println!("  {c} * [{b}]");
    }

    // Inspect the whole target weight space.
    let ctx = IntBasisContext::new(2, &WeightVector::new(vec![1, 1, 1, 1]))?;
    assert_eq!(ctx.dim(), 6);
    println!("U at weight {} =\n{}", ctx.weight(), ctx.matrix());
    Ok(())
}
