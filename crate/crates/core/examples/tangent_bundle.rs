use penrose::penrose::{transform, transform_uncancelled, GradedInput};
use penrose::render::{emit_complex, Format};

fn main() -> penrose::Result<()> {
    let input = GradedInput::tangent(3)?;
    let raw = transform_uncancelled(&input)?;
    let done = transform(&input)?;
    if let (Some(raw), Some(done)) = (raw.complex(), done.complex()) {
        println!("before cancellation, ranks {:?}", raw.column_ranks()?);
        print!("{}", emit_complex(raw, Format::Text)?);
        println!();
        println!("after cancellation, ranks {:?}", done.column_ranks()?);
        print!("{}", emit_complex(done, Format::Text)?);
    }
    Ok(())
}
