use penrose::flagspace::{Bundle, FlagSpace};
use penrose::relforms::{pullback, relative_forms, tangent_series};
use penrose::rootsys::Weight;

fn main() -> penrose::Result<()> {
    for n in 2..=4 {
        println!("n = {n}");
        for p in 0..=n {
            let forms = relative_forms(n, p)?;
            println!("  Λ^{p}: {forms} (rank {})", forms.rank()?);
        }
    }

    let f = FlagSpace::f(3)?;
    for (i, grade) in tangent_series(&f)?.iter().enumerate() {
        println!("tangent bundle of F, grade {i}: {grade}");
        for b in grade.bundles() {
            println!("    pulls back to {}", pullback(&b)?);
        }
    }
    let b = Bundle::new(f, Weight::new(vec![1, 0, 1])?)?;
    println!("pullback of {b}: {}", pullback(&b)?);
    Ok(())
}
