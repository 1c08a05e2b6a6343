fn main() {
    std::process::exit(richfan_cli::run(std::env::args_os()));
}
