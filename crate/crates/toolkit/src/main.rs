use std::io::{BufWriter, Write};

fn main() {
    let mut out = BufWriter::new(std::io::stdout());
    let code = functigraph::cli::run(std::env::args_os(), &mut std::io::stdin(), &mut out, &mut std::io::stderr());
    let _ = out.flush();
    std::process::exit(code);
}
