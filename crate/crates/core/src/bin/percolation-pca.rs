fn main() {
    std::process::exit(percolation_pca::cli::run(std::env::args_os()));
}
