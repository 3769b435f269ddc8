fn main() {
    std::process::exit(centroid_lattice::cli::main_with_args(std::env::args_os()));
}
