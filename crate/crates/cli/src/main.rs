use std::io::Write;

fn main() {
    let (code, stdout, stderr) = eqprop_cli::run_from_args(std::env::args_os());
    print!("{stdout}");
    eprint!("{stderr}");
    std::io::stdout().flush().ok();
    std::process::exit(code);
}
