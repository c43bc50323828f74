fn main() {
    std::process::exit(koenigs_cli::run(std::env::args_os()));
}
