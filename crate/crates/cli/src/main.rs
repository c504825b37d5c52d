fn main() {
    std::process::exit(hcmono_cli::main_with_args(std::env::args_os()));
}
