fn main() {
    std::process::exit(parkstat::cli::main());
}
