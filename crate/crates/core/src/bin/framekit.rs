fn main() {
    std::process::exit(framekit::cli::main_with_env());
}
