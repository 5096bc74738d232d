use penrose::penrose::{transform, GradedInput};
use penrose::render::{complex_from_json, complex_to_json};

fn main() -> penrose::Result<()> {
    let t = transform(&GradedInput::trivial(2)?)?;
    if let Some(c) = t.complex() {
        let doc = complex_to_json(c)?;
        println!("{}", serde_json::to_string_pretty(&doc).unwrap_or_default());
        let back = complex_from_json(&doc)?;
        println!("round trip equal: {}", &back == c);
    }
    Ok(())
}
