fn main() {
    let stdout = std::io::stdout();
    let stderr = std::io::stderr();
    let code = sdrep_cli::app::run(std::env::args_os(), &mut stdout.lock(), &mut stderr.lock());
    std::process::exit(code);
}
