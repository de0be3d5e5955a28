fn main() {
    std::process::exit(cocompact::cli::main());
}
