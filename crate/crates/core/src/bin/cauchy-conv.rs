fn main() {
    std::process::exit(cauchy_conv::cli::run(std::env::args_os()));
}
