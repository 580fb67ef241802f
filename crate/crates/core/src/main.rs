use std::process::ExitCode;

fn main() -> ExitCode {
    let (code, text) = plinth::io::run_command(std::env::args_os());
    if code == plinth::io::cli::EXIT_INPUT {
        eprint!("{text}");
    } else {
        print!("{text}");
    }
    ExitCode::from(code as u8)
}
