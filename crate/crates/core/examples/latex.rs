use penrose::penrose::{transform, GradedInput};
use penrose::render::{emit_transform, Format};

fn main() -> penrose::Result<()> {
    let t = transform(&GradedInput::tangent(3)?)?;
    print!("{}", emit_transform(&t, Format::Latex)?);
    Ok(())
}
