fn main() {
    std::process::exit(spin_rmatrix::cli::run(std::env::args_os()));
}
