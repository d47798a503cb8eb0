fn main() {
    std::process::exit(revsym::cli::run(std::env::args_os()));
}
