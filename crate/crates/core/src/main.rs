use std::io::Write;

use clap::Parser;

use divfree::cli::{run, Cli};

fn main() {
    // usage errors must not collide with the NOT-FREE exit code
    let cli = Cli::try_parse().unwrap_or_else(|e| {
        let code = if e.use_stderr() { 1 } else { 0 };
        let _ = e.print();
        std::process::exit(code);
    });
    if let Some(n) = cli.threads {
        if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(n).build_global() {
            eprintln!("error: {e}");
            std::process::exit(1);
        }
    }
    match run(&cli) {
        Ok(out) => {
            // a closed pipe downstream is not an error here
            let _ = std::io::stdout().write_all(out.render(cli.json).as_bytes());
            std::process::exit(out.code());
        }
        Err(e) => {
            eprintln!("error: {e:#}");
            std::process::exit(1);
        }
    }
}
