//! Binary entry point; all behavior lives in [`opkit::cli`].

fn main() {
    std::process::exit(opkit::cli::main_with_args(std::env::args_os()));
}
