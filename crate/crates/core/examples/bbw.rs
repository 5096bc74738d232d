use penrose::bbw::{cohomology, direct_images};
use penrose::flagspace::{Bundle, FlagSpace};
use penrose::rootsys::Weight;

fn main() -> penrose::Result<()> {
    let f = FlagSpace::f(3)?;
    for c in [[0, 0, 0], [1, 0, 1], [-2, 3, 0], [2, -1, 0], [-1, 1, 1]] {
        let b = Bundle::new(f.clone(), Weight::new(c.to_vec())?)?;
        let h = cohomology(&b)?;
        if h.vanishes() {
            println!("{b}: all cohomology vanishes");
        }
        for e in h.entries() {
            println!("{b}: H^{} = {} of dimension {}", e.degree, e.weight, e.dim);
        }
    }

    // Direct images along the fibration from the full flags to CP_3.
    let g = FlagSpace::g(3)?;
    let m = FlagSpace::m(3)?;
    for c in [[-2, 1, 0], [-3, 2, 1], [1, 0, 1]] {
        let b = Bundle::new(g.clone(), Weight::new(c.to_vec())?)?;
        match direct_images(&g, &m, &b)? {
            Some((q, img)) => println!("{b} pushes down in degree {q} to {img}"),
            None => println!("{b} has no direct images"),
        }
    }
    Ok(())
}
