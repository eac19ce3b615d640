use std::io::{self, Write};

fn main() {
    let mut err = io::stderr();
    if let Err(e) = qinv_cli::configure_threads() {
        let _ = writeln!(err, "error: {e}");
        std::process::exit(2);
    }
    let stdout = io::stdout();
    let mut out = stdout.lock();
    let code = qinv_cli::run(std::env::args_os(), &mut out, &mut err);
    let _ = out.flush();
    std::process::exit(code);
}
