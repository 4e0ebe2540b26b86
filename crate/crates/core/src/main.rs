fn main() {
    std::process::exit(clarkkit::cli::dispatch(std::env::args_os()));
}
