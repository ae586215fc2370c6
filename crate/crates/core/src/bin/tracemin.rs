fn main() {
    std::process::exit(tracemin::cli::main_with_args(std::env::args_os()));
}
