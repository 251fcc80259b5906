fn main() {
    std::process::exit(kanter_cli::main_with_args(std::env::args_os()).code());
}
