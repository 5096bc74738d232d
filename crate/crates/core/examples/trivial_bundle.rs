use penrose::penrose::{e1_page, transform, GradedInput};
use penrose::render::{emit_complex, emit_page, Format};

fn main() -> penrose::Result<()> {
    for n in [2, 3] {
        let input = GradedInput::trivial(n)?;
        print!("{}", emit_page(&e1_page(&input)?, Format::Text)?);
        if let Some(c) = transform(&input)?.complex() {
            println!();
            print!("{}", emit_complex(c, Format::Text)?);
        }
        println!();
    }
    Ok(())
}
