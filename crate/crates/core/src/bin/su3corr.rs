fn main() {
    std::process::exit(su3corr::cli::run(std::env::args()));
}
