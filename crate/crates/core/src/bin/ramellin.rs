fn main() {
    std::process::exit(ramellin::cli::main_with_env());
}
