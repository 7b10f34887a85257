fn main() {
    std::process::exit(padic_degrees::cli::run());
}
