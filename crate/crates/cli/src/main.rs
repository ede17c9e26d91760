fn main() {
    std::process::exit(blockdesign_cli::run(std::env::args_os()));
}
