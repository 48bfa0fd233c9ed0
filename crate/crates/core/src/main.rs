use std::io::Write;

fn main() {
    let (code, text) = khz::cli::run(std::env::args_os());
    let res = if code == 0 {
        std::io::stdout().write_all(text.as_bytes())
    } else {
        std::io::stderr().write_all(text.as_bytes())
    };
    if res.is_err() {
        std::process::exit(1);
    }
    std::process::exit(code);
}
