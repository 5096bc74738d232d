use penrose::cli::{embedded_corpus, verify};

fn main() -> penrose::Result<()> {
    let corpus = embedded_corpus()?;
    let report = verify(&corpus, std::env::args().nth(1).as_deref());
    print!("{}", report.render());
    Ok(())
}
