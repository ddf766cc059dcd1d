fn main() {
    std::process::exit(spherecal_cli::run());
}
