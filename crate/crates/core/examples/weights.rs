use penrose::rootsys::{from_epsilon, rho, simple_reflect, to_epsilon, weyl_dim, Weight};

fn main() -> penrose::Result<()> {
    let w = Weight::new(vec![1, 0, 1])?;
    let e = to_epsilon(&w);
    println!("({w}) has epsilon sequence {:?}", e.entries());
    println!("back again: {}", from_epsilon(&e)?);
    println!("rho for n = 3: {}", rho(3)?);
    for i in 1..=3 {
        println!("s{i}({w}) = {}", simple_reflect(&w, i)?);
    }
    for c in [[0, 0, 0], [1, 0, 0], [1, 0, 1], [0, 2, 0], [2, 0, 2]] {
        let w = Weight::new(c.to_vec())?;
        println!("dim of the sl(4) module {w}: {}", weyl_dim(&w)?);
    }
    Ok(())
}
