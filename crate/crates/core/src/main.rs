fn main() {
    let code = divisible_sets::cli::run(std::env::args_os());
    std::process::exit(code);
}
