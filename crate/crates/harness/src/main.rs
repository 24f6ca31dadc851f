fn main() {
    std::process::exit(biclique_harness::cli::run(std::env::args_os()));
}
