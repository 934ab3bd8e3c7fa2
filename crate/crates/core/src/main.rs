fn main() {
    env_logger::init();
    std::process::exit(dpcy::cli::main_with_args(std::env::args_os()));
}
