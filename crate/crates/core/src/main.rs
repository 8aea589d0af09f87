fn main() {
    std::process::exit(singloc::cli::main());
}
