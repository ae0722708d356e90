fn main() {
    std::process::exit(tropix::cli::run(std::env::args_os()));
}
