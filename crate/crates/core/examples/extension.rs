use penrose::penrose::{transform, GradedInput};
use penrose::render::{emit_transform, Format};

fn main() -> penrose::Result<()> {
    let t = transform(&GradedInput::extension_v()?)?;
    print!("{}", emit_transform(&t, Format::Text)?);
    Ok(())
}
