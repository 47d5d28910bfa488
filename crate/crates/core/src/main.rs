fn main() {
    std::process::exit(noma_ris::cli::run());
}
