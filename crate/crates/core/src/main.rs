fn main() {
    std::process::exit(convex_trunc::cli::run(std::env::args_os()));
}
