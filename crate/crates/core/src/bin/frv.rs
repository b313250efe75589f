fn main() {
    std::process::exit(frv_varma::report::cli::main_with_args(std::env::args_os()));
}
