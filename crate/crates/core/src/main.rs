fn main() {
    std::process::exit(nilbound::cli::main());
}
