use std::io::{self, IsTerminal};

fn main() {
    let no_color = std::env::var_os("NO_COLOR").is_some_and(|v| !v.is_empty());
    let stdout = io::stdout();
    let color = stdout.is_terminal() && !no_color;
    let (mut out, mut err) = (stdout.lock(), io::stderr().lock());
    let code = updown::cli::run(
        std::env::args_os(),
        &mut updown::cli::Io {
            out: &mut out,
            err: &mut err,
            color,
        },
    );
    std::process::exit(code);
}
