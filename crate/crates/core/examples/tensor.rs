use penrose::charlib::{exterior_power, tensor};
use penrose::flagspace::{BundleSum, FlagSpace};
use penrose::rootsys::Weight;

fn sum(space: &FlagSpace, labels: &[[i64; 3]]) -> penrose::Result<BundleSum> {
    let ws: Vec<Weight> = labels
        .iter()
        .map(|c| Weight::new(c.to_vec()))
        .collect::<penrose::Result<_>>()?;
    BundleSum::from_labels(space, &ws)
}

fn main() -> penrose::Result<()> {
    let g = FlagSpace::g(3)?;
    let cotangent = sum(&g, &[[1, 0, 1], [-2, 1, 0]])?;
    let twist = sum(&g, &[[-1, 1, 1]])?;
    println!(
        "({cotangent}) ⊗ ({twist}) = {}",
        tensor(&g, &cotangent, &twist)?
    );
    for p in 0..=3 {
        println!(
            "Λ^{p}({cotangent}) = {}",
            exterior_power(&g, &cotangent, p)?
        );
    }

    let m = FlagSpace::m(3)?;
    let one_forms = sum(&m, &[[1, 0, 1], [-2, 1, 0]])?;
    let two_forms = exterior_power(&m, &one_forms, 2)?;
    println!(
        "on CP_3, Λ^2 of the one-forms: {two_forms} (rank {})",
        two_forms.rank()?
    );
    Ok(())
}
