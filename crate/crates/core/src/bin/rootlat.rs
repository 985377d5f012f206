fn main() {
    std::process::exit(rootlat::cli::run(std::env::args_os()));
}
