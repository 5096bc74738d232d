use penrose::render::{conjugate_label, name_for_label, NameTable};
use penrose::rootsys::Weight;

fn main() -> penrose::Result<()> {
    let table = NameTable::standard();
    println!("{} table entries", table.len());
    for (label, shape) in table.entries() {
        println!("  {label:>10}  {}", shape.unicode());
    }
    for c in [[3, 1, 1], [-2, 2, 2], [2, 0, 2], [-4, 2, 0], [0, 1, 2]] {
        let w = Weight::new(c.to_vec())?;
        let name = name_for_label(&table, &w);
        let bar = conjugate_label(&w)?;
        println!(
            "{w}: {} ({:?}), conjugate {bar}",
            name.shape.unicode(),
            name.source
        );
    }
    Ok(())
}
