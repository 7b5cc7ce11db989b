fn main() {
    std::process::exit(vla::cli::run());
}
