fn main() {
    let argv: Vec<String> = std::env::args().skip(1).collect();
    let mut out = std::io::stdout().lock();
    let mut err = std::io::stderr().lock();
    let code = catopt::cli::run(&argv, &mut out, &mut err);
    std::process::exit(code);
}
