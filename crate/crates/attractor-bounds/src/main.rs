fn main() {
    std::process::exit(attractor_bounds::cli::main());
}
