fn main() {
    std::process::exit(cryocool::cli::main());
}
