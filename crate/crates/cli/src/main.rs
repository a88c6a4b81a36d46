fn main() {
    std::process::exit(padic_interp_cli::run(std::env::args_os()));
}
