fn main() {
    std::process::exit(gaugehull::cli::main_with(std::env::args_os()));
}
