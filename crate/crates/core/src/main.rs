fn main() {
    std::process::exit(taxosim::cli::main());
}
