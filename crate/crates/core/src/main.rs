fn main() {
    std::process::exit(levy_prohorov::cli::run(std::env::args_os()));
}
